use rand::Rng;
use u21_core::fields::Coef;
use u21_core::group::gamma::lift;
use u21_core::group::KTag;
use u21_core::induction::iwahori::Op;
use u21_core::induction::{InducedFn, Induction};
use u21_core::{Error, Result};

use super::{combo, minus_one, ones, weight_names};
use crate::checks::{Check, Ctx, Outcome};

/// Whether every lift of a generator of `Γ_K` fixes `f`; with
/// `I_{1,K}`-invariance this is `K`-invariance.
fn fixed_by_k(ind: &Induction, f: &InducedFn) -> Result<bool> {
    let gs = ind.sigma().gamma().clone();
    for g in ind.sigma().generator_elements() {
        if !ind.equal(&ind.g_act(&lift(ind.group(), &gs, &g), f)?, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn plan(tags: &[KTag], ctx: &Ctx, out: &mut Vec<Check>) {
    for &tag in tags {
        let id = format!("section3/{tag}/change-of-weight");
        out.push(Check::new(id.clone(), "change of weight", 0, move |ctx: &Ctx| {
            let ind = ctx.induction(ctx.weight(tag, "trivial")?)?;
            let mut rng = ctx.rng(&id);
            let m1 = minus_one(&ind);
            for _ in 0..4 {
                let terms: Vec<(i32, Coef)> =
                    (1..=3).map(|n| (-n, Coef::from_code(rng.gen_range(0..ind.lam().order())))).collect();
                let v = combo(&ind, &terms);
                let got = ind.apply_vec(Op::SK, &v)?;
                if got != v.scale(&ind, m1) {
                    return Ok(Outcome::compare(format!("S_K f = -f for f = {v}"), format!("S_K f = {got}")));
                }
            }
            Ok(Outcome::holds("S_K f = -f on ⟨f[-1], f[-2], f[-3]⟩ in ind 1", None))
        }));
        out.push(Check::new(
            format!("section3/{tag}/steinberg-invariants"),
            "basis from the trivial weight to steinberg weight",
            0,
            move |ctx: &Ctx| {
                let ind = ctx.induction(ctx.weight(tag, "st")?)?;
                let f1 = ind.f_basis(1)?;
                let sum = ind.add(&f1, &ind.f_basis(-1)?)?;
                let (inv_sum, inv_f1) = (fixed_by_k(&ind, &sum)?, fixed_by_k(&ind, &f1)?);
                let ok = ind.is_i1_invariant(&sum)? && inv_sum && !inv_f1;
                Ok(Outcome {
                    expected: "f[1] + f[-1] is K-invariant in ind st, f[1] is not".into(),
                    observed: format!("K fixes f[1] + f[-1]: {inv_sum}; K fixes f[1]: {inv_f1}"),
                    pass: ok,
                })
            },
        ));
        for name in weight_names(tag, ctx, "section3", out) {
            let w = name.clone();
            out.push(Check::new(
                format!("section3/{tag}/{name}/torus-character"),
                "vanishing of L(σ, σ′)",
                0,
                move |ctx: &Ctx| torus_character(ctx, tag, &w),
            ));
            if name.starts_with("sub") || name.starts_with("quot") {
                let w = name.clone();
                out.push(Check::new(format!("section3/{tag}/{name}/L(σ,σ^s)"), "vanishing of L(σ, σ^s)", 0, move |ctx: &Ctx| {
                    let ind = ctx.induction(ctx.weight(tag, &w)?)?;
                    let s0 = ind.apply_basis(Op::SK, 0)?;
                    let pos = combo(&ind, &ones(&[1, 2]));
                    let spos = ind.apply_vec(Op::SK, &pos)?;
                    Ok(Outcome {
                        expected: "S_K f[0] = 0 and S_K(f[1] + f[2]) ≠ 0".into(),
                        observed: format!("S_K f[0] = {s0}, S_K(f[1] + f[2]) = {spos}"),
                        pass: s0.is_zero() && !spos.is_zero(),
                    })
                }));
            }
        }
    }
}

/// `I_K` acts on `f_k` through `χ_σ` for `k ≤ 0` and through `χ_σ^s` for
/// `k > 0`; the eigenvalues come from `σ(t)` and `σ(w₀tw₀)` on `v₀`.
fn torus_character(ctx: &Ctx, tag: KTag, name: &str) -> Result<Outcome> {
    let ind = ctx.induction(ctx.weight(tag, name)?)?;
    let gs = ind.sigma().gamma().clone();
    let lam = ind.lam().clone();
    let v0 = ind.v0().to_vec();
    let p = v0.iter().position(|c| !c.is_zero()).ok_or(Error::DegenerateWeight)?;
    let w0 = gs.w0();
    for t in [gs.torus_gen_a(), gs.torus_gen_b()] {
        let ts = gs.mul(&gs.mul(&w0, &t), &gs.inv(&w0));
        let chi = lam.div(ind.sigma().apply(&t, &v0)[p], v0[p]).ok_or(Error::DegenerateWeight)?;
        let chi_s = lam.div(ind.sigma().apply(&ts, &v0)[p], v0[p]).ok_or(Error::DegenerateWeight)?;
        let lifted = lift(ind.group(), &gs, &t);
        for k in [-1, 0, 1] {
            let f = ind.f_basis(k)?;
            let c = if k > 0 { chi_s } else { chi };
            if !ind.equal(&ind.g_act(&lifted, &f)?, &ind.scale(&f, c))? {
                return Ok(Outcome::holds("torus acts on f[k] by χ (k ≤ 0) or χ^s (k > 0)", Some(format!("f[{k}]"))));
            }
        }
    }
    Ok(Outcome::holds("torus acts on f[k] by χ (k ≤ 0) or χ^s (k > 0)", None))
}
