//! Concrete weights: characters, principal series, Steinberg and the
//! constituents of length-two principal series.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::lattice::composition_chain;
use super::{Part, Weight, WeightKind};
use crate::error::{Error, Result};
use crate::fields::{Character, Coef, Res};
use crate::group::gamma::{GammaElem, GammaGroup};
use crate::group::KTag;
use crate::linalg::{Mat, Span};

pub fn trivial(gs: &GammaGroup) -> Weight {
    Weight::from_action(gs, 1, WeightKind::Trivial, |_| Mat::identity(1))
}

/// `(k₁, k₂)` with `χ = ψ^{k₁}(det A) ψ^{k₂}(s)` on `Γ_{K₁}`, or `k₂ = 0` and
/// `χ = ψ^{k₁}∘det` on `Γ_{K₀}`; `None` if `χ` does not extend to `Γ_K`.
pub fn one_dim_exponents(gs: &GammaGroup, chi: Character) -> Option<(u32, u32)> {
    let t = gs.tower();
    let q = t.q();
    if chi.a_exp % (q - 1) != 0 {
        return None;
    }
    let k1 = ((q + 1) - (chi.a_exp / (q - 1)) % (q + 1)) % (q + 1);
    match gs.tag() {
        KTag::K0 => (k1 == chi.b_exp).then_some((k1, 0)),
        KTag::K1 => Some((k1, chi.b_exp)),
    }
}

fn det3(gs: &GammaGroup, g: &GammaElem) -> Res {
    let r = gs.tower().res();
    let m = |i, j| g.get(i, j);
    let minor = |a: usize, b: usize, c: usize, d: usize| r.sub(r.mul(m(1, a), m(2, b)), r.mul(m(1, c), m(2, d)));
    let t0 = r.mul(m(0, 0), minor(1, 2, 2, 1));
    let t1 = r.mul(m(0, 1), minor(0, 2, 2, 0));
    let t2 = r.mul(m(0, 2), minor(0, 1, 1, 0));
    r.add(r.sub(t0, t1), t2)
}

/// The one-dimensional weight with torus character `χ`.
pub fn character(gs: &GammaGroup, chi: Character) -> Result<Weight> {
    let (k1, k2) = one_dim_exponents(gs, chi).ok_or(Error::NotApplicable("character does not extend to Γ_K"))?;
    let t = gs.tower().clone();
    let tag = gs.tag();
    let kind = if chi.is_trivial() { WeightKind::Trivial } else { WeightKind::Character(chi) };
    let gs2 = gs.clone();
    Ok(Weight::from_action(gs, 1, kind, move |g| {
        let r = t.res();
        let (d, s) = match tag {
            KTag::K0 => (det3(&gs2, g), Res::ONE),
            KTag::K1 => (r.sub(r.mul(g.get(0, 0), g.get(2, 2)), r.mul(g.get(0, 2), g.get(2, 0))), g.get(1, 1)),
        };
        let v = t.coef().mul(t.psi_pow(d, k1 as i64), t.psi_pow(s, k2 as i64));
        Mat::scalar(1, v)
    }))
}

/// The one-dimensional weights whose character factors through `det`.
pub fn det_twist(gs: &GammaGroup, k: i64) -> Weight {
    character(gs, gs.tower().det_character(k)).expect("det characters extend")
}

/// `Ind_𝔹^{Γ_K} χ` on the basis of functions supported on `𝔹`, `𝔹w₀u`.
pub fn principal_series(gs: &GammaGroup, chi: Character) -> Weight {
    let n = 1 + gs.unipotent_params().len();
    let t = gs.tower().clone();
    let w0 = gs.w0();
    let reps: Vec<GammaElem> = core::iter::once(gs.identity())
        .chain(gs.unipotent_params().iter().map(|u| gs.mul(&w0, &gs.unipotent(u))))
        .collect();
    let gs2 = gs.clone();
    Weight::from_action(gs, n, WeightKind::PrincipalSeries(chi), move |h| {
        let mut m = Mat::zeros(n, n);
        for (l, g) in reps.iter().enumerate() {
            let w = gs2.bruhat(&gs2.mul(g, h));
            let lp = match &w.u2 {
                None => 0,
                Some(u2) => 1 + gs2.unipotent_index(u2).unwrap(),
            };
            m.set(l, lp, t.eval_char(chi, w.torus.a, w.torus.b));
        }
        m
    })
}

/// The constant function in the principal series basis.
pub fn constant_vector(ps: &Weight) -> Vec<Coef> {
    vec![Coef::ONE; ps.dim()]
}

/// `Ind_𝔹^{Γ_K} 1 / 1`.
pub fn steinberg(gs: &GammaGroup) -> Weight {
    let ps = principal_series(gs, Character::TRIVIAL);
    let f = ps.lam();
    let line = Span::from_vectors(f, ps.dim(), &[constant_vector(&ps)]);
    ps.quotient(&line, WeightKind::Steinberg)
}

pub fn steinberg_twist(gs: &GammaGroup, eta: Character) -> Result<Weight> {
    let e = character(gs, eta)?;
    Ok(steinberg(gs).twist(&e, WeightKind::SteinbergTwist(eta)))
}

/// The socle (`Sub`) or head (`Quotient`) of a length-two principal series;
/// only the regime `K = K₁`, `q = p`, `χ` regular.
pub fn ps_part(gs: &GammaGroup, chi: Character, part: Part) -> Result<Weight> {
    let t = gs.tower();
    if gs.tag() != KTag::K1 || t.f() != 1 || !t.is_regular(chi) {
        return Err(Error::NotApplicable("length-two principal series needs K1, q = p and regular χ"));
    }
    let chain = composition_chain(&principal_series(gs, chi))?;
    if chain.len() != 2 {
        return Err(Error::InconclusiveLattice);
    }
    let idx = match part {
        Part::Sub => 0,
        Part::Quotient => 1,
    };
    Ok(chain[idx].clone().with_kind(WeightKind::PsPart(chi, part)))
}

/// `σ^s`: for regular `χ_σ`, the constituent of `Ind_𝔹 χ_σ` whose invariant
/// line carries `χ_σ^s`; `σ` itself otherwise.
pub fn weight_s(sigma: &Weight) -> Result<Weight> {
    let t = sigma.tower();
    let chi = sigma.chi_of()?;
    if !t.is_regular(chi) {
        return Ok(sigma.clone());
    }
    let target = t.char_s(chi);
    let chain = composition_chain(&principal_series(sigma.gamma(), chi))?;
    if chain.len() < 2 {
        return Err(Error::NotApplicable("principal series is irreducible"));
    }
    chain
        .into_iter()
        .find(|w| w.chi_of().ok() == Some(target))
        .ok_or(Error::NotApplicable("no constituent with character χ^s"))
}

/// Named weights exercised by the checks.
pub fn catalog(gs: &GammaGroup, with_regular: bool) -> Result<Vec<(String, Weight)>> {
    let t = gs.tower();
    let q = t.q() as i64;
    let mut out = vec![(String::from("trivial"), trivial(gs)), (String::from("st"), steinberg(gs))];
    for k in 1..=q {
        out.push((format!("det^{k}"), det_twist(gs, k)));
    }
    out.push((String::from("st⊗det"), steinberg_twist(gs, t.det_character(1))?));
    if gs.tag() == KTag::K1 {
        let eta = t.character(-(q - 1), 0);
        out.push((format!("{eta}"), character(gs, eta)?));
    }
    if with_regular && gs.tag() == KTag::K1 && t.f() == 1 {
        for chi in regular_characters(gs).into_iter().take(2) {
            out.push((format!("sub[{chi}]"), ps_part(gs, chi, Part::Sub)?));
            out.push((format!("quot[{chi}]"), ps_part(gs, chi, Part::Quotient)?));
        }
    }
    Ok(out)
}

/// Regular torus characters in exponent order.
pub fn regular_characters(gs: &GammaGroup) -> Vec<Character> {
    let t = gs.tower();
    t.characters_of_torus().into_iter().filter(|&c| t.is_regular(c)).collect()
}
