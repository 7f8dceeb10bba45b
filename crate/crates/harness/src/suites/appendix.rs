use u21_core::fields::{Coef, Res};
use u21_core::group::gamma::GammaElem;
use u21_core::group::KTag;
use u21_core::induction::iwahori::{IwahoriVec, Op};
use u21_core::induction::Induction;
use u21_core::{Error, Result};

use super::{minus_one, weight_names};
use crate::checks::{Check, Ctx, Outcome};

/// `χ_σ(h(t))` read off the action of `σ` on `v₀`.
fn chi_at_h(ind: &Induction, t: Res) -> Result<Coef> {
    let tw = ind.sigma().tower();
    let r = tw.res();
    let tb = tw.conj(t);
    let mid = r.neg(r.div(tb, t).ok_or(Error::InversionOfZero)?);
    let z = Res::ZERO;
    let h = GammaElem([t, z, z, z, mid, z, z, z, r.inv(tb).ok_or(Error::InversionOfZero)?]);
    let v0 = ind.v0();
    let w = ind.sigma().apply(&h, v0);
    let p = v0.iter().position(|c| !c.is_zero()).ok_or(Error::DegenerateWeight)?;
    ind.lam().div(w[p], v0[p]).ok_or(Error::DegenerateWeight)
}

/// `Σ χ_σ(h(t))` over the nonidentity pairs `(x, t)` of `k_E²` with
/// `x x̄ + t + t̄ = 0`, `x = 0` unless `e = 3`, enumerated directly.
pub(crate) fn character_sum_oracle(ind: &Induction, e: u32) -> Result<Coef> {
    let tw = ind.sigma().tower().clone();
    let r = tw.res();
    let lam = ind.lam();
    let mut acc = Coef::ZERO;
    for x in r.elements() {
        if e != 3 && !x.is_zero() {
            continue;
        }
        for t in r.elements() {
            if (x.is_zero() && t.is_zero()) || !r.add(tw.norm(x), tw.trace(t)).is_zero() {
                continue;
            }
            acc = lam.add(acc, chi_at_h(ind, t)?);
        }
    }
    Ok(acc)
}

/// `d₀`: `−χ_σ(h(𝔱))` for twists of the Steinberg weight, otherwise `0`.
fn d0_oracle(ind: &Induction, name: &str) -> Result<Coef> {
    if name.starts_with("st") {
        Ok(ind.lam().neg(chi_at_h(ind, ind.sigma().tower().trace_zero_unit())?))
    } else {
        Ok(Coef::ZERO)
    }
}

fn expect_all(ind: &Induction, op: Op, cases: &[(i32, IwahoriVec)], claim: String) -> Result<Outcome> {
    for (n, want) in cases {
        let got = ind.apply_basis(op, *n)?;
        if &got != want {
            return Ok(Outcome::compare(format!("{op:?} f[{n}] = {want}"), format!("{op:?} f[{n}] = {got}")));
        }
    }
    Ok(Outcome::holds(&claim, None))
}

const LABEL: &str = "the image of I_1 under S_K and S_-";

pub fn plan(tags: &[KTag], ctx: &Ctx, out: &mut Vec<Check>) {
    for &tag in tags {
        for name in weight_names(tag, ctx, "appendix", out) {
            let base = format!("appendix/{tag}/{name}");
            let w = name.clone();
            out.push(Check::new(format!("{base}/S_K f[n]"), LABEL, 5, move |ctx: &Ctx| {
                let ind = ctx.induction(ctx.weight(tag, &w)?)?;
                let cases: Vec<_> = (1..=4).map(|n| (n, IwahoriVec::basis(-n))).collect();
                expect_all(&ind, Op::SK, &cases, "S_K f[n] = f[-n] for n = 1..4".into())
            }));
            let w = name.clone();
            out.push(Check::new(format!("{base}/S_- f[n]"), LABEL, 5, move |ctx: &Ctx| {
                let ind = ctx.induction(ctx.weight(tag, &w)?)?;
                let cm = character_sum_oracle(&ind, 4 - ind.constants_nmt().2)?;
                let cases: Vec<_> = (1..=4).map(|n| (n, IwahoriVec::basis(n).scale(&ind, cm))).collect();
                expect_all(&ind, Op::SMinus, &cases, format!("S_- f[n] = {cm}·f[n] for n = 1..4"))
            }));
            let w = name.clone();
            out.push(Check::new(format!("{base}/S_- f[-n]"), LABEL, 5, move |ctx: &Ctx| {
                let ind = ctx.induction(ctx.weight(tag, &w)?)?;
                let cases: Vec<_> = (0..=3).map(|n| (-n, IwahoriVec::basis(n + 1))).collect();
                expect_all(&ind, Op::SMinus, &cases, "S_- f[-n] = f[n+1] for n = 0..3".into())
            }));
            let w = name.clone();
            out.push(Check::new(format!("{base}/S_K f[-n]"), LABEL, 5, move |ctx: &Ctx| {
                let ind = ctx.induction(ctx.weight(tag, &w)?)?;
                let d0 = d0_oracle(&ind, &w)?;
                let dn = character_sum_oracle(&ind, ind.constants_nmt().2)?;
                let cases: Vec<_> = (0..=3)
                    .map(|n| (-n, IwahoriVec::basis(-n).scale(&ind, if n == 0 { d0 } else { dn })))
                    .collect();
                expect_all(&ind, Op::SK, &cases, format!("S_K f[0] = {d0}·f[0], S_K f[-n] = {dn}·f[-n]"))
            }));
            let w = name.clone();
            out.push(Check::new(format!("{base}/constants"), "equation determines d_0", 5, move |ctx: &Ctx| {
                constants_check(ctx, tag, &w)
            }));
            let w = name.clone();
            let id = format!("{base}/invariance");
            out.push(Check::new(id.clone(), "S_K and S_- preserve I_1", 6, move |ctx: &Ctx| {
                let ind = ctx.induction(ctx.weight(tag, &w)?)?;
                let mut rng = ctx.rng(&id);
                for n in [-2, -1, 0, 1, 2] {
                    for op in [Op::SK, Op::SMinus] {
                        if !ind.output_is_i1_invariant(&mut rng, op, &IwahoriVec::basis(n), 2)? {
                            return Ok(Outcome::holds("outputs are I_1-invariant", Some(format!("{op:?} f[{n}]"))));
                        }
                    }
                }
                Ok(Outcome::holds("S_K f[n] and S_- f[n] are I_1-invariant for |n| ≤ 2", None))
            }));
            let w = name.clone();
            let id = format!("{base}/twisting");
            out.push(Check::new(id.clone(), "S_K and S_- preserve I_1", 6, move |ctx: &Ctx| {
                twisting_check(ctx, tag, &w, &id)
            }));
        }
    }
}

fn constants_check(ctx: &Ctx, tag: KTag, name: &str) -> Result<Outcome> {
    let ind = ctx.induction(ctx.weight(tag, name)?)?;
    let tk = ind.constants_nmt().2;
    let cm = character_sum_oracle(&ind, 4 - tk)?;
    let dn = character_sum_oracle(&ind, tk)?;
    let d0 = d0_oracle(&ind, name)?;
    let mut want = vec![cm, dn, d0, d0];
    let got = vec![ind.c_minus_closed_form()?, ind.d_closed_form()?, ind.d0_closed_form()?, ind.d0_in_weight()?];
    let m1 = minus_one(&ind);
    if name == "trivial" {
        // |L^×| ≡ −1 mod p
        want[0] = m1;
        want[1] = m1;
    }
    if ind.sigma().tower().is_regular(ind.sigma().chi_of()?) && ind.sigma().tower().q() == 3 && tag == KTag::K1 {
        want[0] = Coef::ZERO;
    }
    let show = |v: &[Coef]| format!("c_- = {}, d_n = {}, d_0 = {}, d_0 in σ = {}", v[0], v[1], v[2], v[3]);
    Ok(Outcome::compare(show(&want), show(&got)))
}

fn twisting_check(ctx: &Ctx, tag: KTag, name: &str, id: &str) -> Result<Outcome> {
    let ind = ctx.induction(ctx.weight(tag, name)?)?;
    let g = ind.group().clone();
    let mut rng = ctx.rng(id);
    let mut hs = ind.h1_generators();
    for _ in 0..2 {
        hs.push(g.random_torus(&mut rng, false, 3));
    }
    let bk = ind.beta_k().clone();
    let bk_inv = g.inv(&bk);
    for (i, h) in hs.iter().enumerate() {
        let hs_ = g.mul_all(&[&bk, h, &bk_inv]);
        for n in [-1, 1, 2] {
            let v = IwahoriVec::basis(n);
            for m in 0..=2 {
                let y = ind.random_point(&mut rng, m);
                let lhs = ind.apply_at(Op::SK, &v, Some(h), &y)?;
                if lhs != ind.apply_at(Op::SK, &v, None, &g.mul(&y, &hs_))? {
                    return Ok(Outcome::holds("S_K(hv) = h^s S_K(v)", Some(format!("torus element {i}, f[{n}]"))));
                }
            }
        }
    }
    Ok(Outcome::holds("S_K(hv) = h^s S_K(v) for H_1 generators and sampled torus elements", None))
}
