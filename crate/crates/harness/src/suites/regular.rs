use u21_core::fields::Coef;
use u21_core::group::KTag;
use u21_core::induction::spin::{frobenius_intertwiner, SPIN_CAP};
use u21_core::linalg::{Mat, Span};
use u21_core::weights::catalog::{principal_series, regular_characters, weight_s};
use u21_core::weights::lattice::{composition_chain, is_nonsplit, minimal_submodules};
use u21_core::weights::WeightKind;
use u21_core::{Error, Result};

use super::weight_names;
use crate::checks::{Check, Ctx, Outcome};

fn t_k(tag: KTag) -> u32 {
    match tag {
        KTag::K0 => 3,
        KTag::K1 => 1,
    }
}

pub fn plan(tags: &[KTag], ctx: &Ctx, out: &mut Vec<Check>) {
    for &tag in tags {
        for name in weight_names(tag, ctx, "regular", out) {
            if !(name == "trivial" || name == "st" || name.starts_with("sub") || name.starts_with("quot")) {
                continue;
            }
            let w = name.clone();
            out.push(Check::new(format!("regular/{tag}/{name}/span of K f[1]"), "a basis of Kf_1", 8, move |ctx: &Ctx| {
                k_span(ctx, tag, &w)
            }));
        }
        if tag != KTag::K1 || ctx.tower.f() != 1 {
            continue;
        }
        let gs = ctx.gamma(tag);
        for chi in regular_characters(&gs) {
            out.push(Check::new(
                format!("regular/{tag}/{chi}/principal-series"),
                "finite principal series of length 2",
                9,
                move |ctx: &Ctx| principal_series_check(ctx, tag, chi),
            ));
            out.push(Check::new(
                format!("regular/{tag}/{chi}/hecke-image"),
                "reducibility of supersingular quotient: the case K=K_1 and q=p",
                9,
                move |ctx: &Ctx| hecke_image_check(ctx, tag, chi),
            ));
        }
    }
}

fn k_span(ctx: &Ctx, tag: KTag, name: &str) -> Result<Outcome> {
    let ind = ctx.induction(ctx.weight(tag, name)?)?;
    let want = 1 + (ctx.tower.q() as usize).pow(t_k(tag));
    let span = ind.spin_k(&ind.f_basis(1)?, SPIN_CAP)?;
    let tr = ind.f1_translates()?;
    let disjoint = tr.iter().enumerate().all(|(a, fa)| {
        let sa = ind.support(fa);
        tr[a + 1..].iter().all(|fb| sa.is_disjoint(&ind.support(fb)))
    });
    let mut m0 = vec![Coef::ZERO; span.dim()];
    m0[0] = Coef::ONE;
    let chi = span.module.eigen_character(&m0)?;
    let chi_s = ctx.tower.char_s(ind.sigma().chi_of()?);
    let ps = principal_series(ind.sigma().gamma(), chi);
    let x = frobenius_intertwiner(&ps, &span.module, &m0)?;
    let rank = x.rank(ind.lam());
    let same_fp = span.module.fingerprint() == ps.fingerprint();
    Ok(Outcome {
        expected: format!("dim {want}, {want} disjoint translates, ≅ Ind χ^s = Ind {chi_s} via a rank {want} map"),
        observed: format!(
            "dim {}, {} translates (disjoint: {disjoint}), 𝔹-character {chi}, intertwiner rank {rank}, fingerprints match: {same_fp}",
            span.dim(),
            tr.len()
        ),
        pass: span.dim() == want && tr.len() == want && disjoint && chi == chi_s && rank == want && same_fp,
    })
}

fn principal_series_check(ctx: &Ctx, tag: KTag, chi: u21_core::fields::Character) -> Result<Outcome> {
    let gs = ctx.gamma(tag);
    let ps = principal_series(&gs, chi);
    let chain = composition_chain(&ps)?;
    let chars: Vec<String> = chain.iter().map(|w| w.chi_of().map(|c| c.to_string()).unwrap_or("?".into())).collect();
    let mins = minimal_submodules(&ps)?;
    let nonsplit = mins.len() == 1 && is_nonsplit(&ps, &mins[0]);
    let chi_s = ctx.tower.char_s(chi);
    let ok = chain.len() == 2 && chain[0].chi_of().ok() == Some(chi_s) && chain[1].chi_of().ok() == Some(chi) && nonsplit;
    Ok(Outcome {
        expected: format!("socle with character {chi_s}, head with character {chi}, non-split"),
        observed: format!("factors with characters [{}], non-split: {nonsplit}", chars.join(", ")),
        pass: ok,
    })
}

/// In `ind σ` for the head `σ` of `Ind χ`: `T[Id, σ]` lies in `⟨K f₁⟩`,
/// spans the unique minimal submodule, which is `≅ σ`, with quotient `≅ σ^s`.
fn hecke_image_check(ctx: &Ctx, tag: KTag, chi: u21_core::fields::Character) -> Result<Outcome> {
    let gs = ctx.gamma(tag);
    let chain = composition_chain(&principal_series(&gs, chi))?;
    let sigma = chain.last().ok_or(Error::InconclusiveLattice)?.clone();
    let ind = ctx.induction(sigma.clone())?;
    let lam = ind.lam().clone();
    let span = ind.spin_k(&ind.f_basis(1)?, SPIN_CAP)?;
    let id = ind.group().identity();
    let mut cols = Vec::new();
    for i in 0..ind.dim() {
        let mut e = vec![Coef::ZERO; ind.dim()];
        e[i] = Coef::ONE;
        match span.express(&ind, &ind.op_t(&ind.generator(&id, &e)?)?)? {
            Some(c) => cols.push(c),
            None => {
                return Ok(Outcome::holds("T[Id, σ] ⊂ ⟨K f[1]⟩", Some(format!("T[Id, e_{i}] lies outside ⟨K f[1]⟩"))));
            }
        }
    }
    let x = Mat::from_cols(span.dim(), &cols);
    let image = Span::from_vectors(&lam, span.dim(), &cols);
    let embeds = x.rank(&lam) == ind.dim() && sigma.intertwines(&span.module, &x);
    let mins = minimal_submodules(&span.module)?;
    let unique = mins.len() == 1 && mins[0] == image;
    let quotient = span.module.quotient(&image, WeightKind::Derived("quotient".into()));
    let quotient_is_s = quotient.fingerprint() == weight_s(&sigma)?.fingerprint();
    Ok(Outcome {
        expected: "T[Id, σ] ⊂ ⟨K f[1]⟩ is ≅ σ, the unique minimal submodule, with quotient ≅ σ^s".into(),
        observed: format!(
            "image dim {} in span dim {}, embeds σ: {embeds}, unique minimal: {unique}, quotient ≅ σ^s: {quotient_is_s}",
            image.dim(),
            span.dim()
        ),
        pass: embeds && unique && quotient_is_s && image.dim() < span.dim(),
    })
}
