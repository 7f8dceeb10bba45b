use u21_core::fields::Coef;
use u21_core::group::KTag;
use u21_core::induction::iwahori::{IwahoriVec, Op};

use super::{combo, weight_names};
use crate::checks::{Check, Ctx, Outcome};
use crate::suites::appendix::character_sum_oracle;

pub fn plan(tags: &[KTag], ctx: &Ctx, out: &mut Vec<Check>) {
    for &tag in tags {
        for name in weight_names(tag, ctx, "hecke", out) {
            let base = format!("hecke/{tag}/{name}");
            let w = name.clone();
            out.push(Check::new(format!("{base}/T f[0]"), "hecke operator formula", 4, move |ctx: &Ctx| {
                let ind = ctx.induction(ctx.weight(tag, &w)?)?;
                let got = ind.apply_basis(Op::T, 0)?;
                let lambda = got.get(1);
                let want = combo(&ind, &[(-1, Coef::ONE), (1, lambda)]);
                Ok(Outcome {
                    expected: format!("f[-1] + λ·f[1] (λ = {lambda})"),
                    observed: got.to_string(),
                    pass: got == want,
                })
            }));
            let w = name.clone();
            out.push(Check::new(format!("{base}/T f[n]"), "hecke operator formula", 4, move |ctx: &Ctx| {
                let ind = ctx.induction(ctx.weight(tag, &w)?)?;
                // c = 0 for dim σ > 1, c = c_−(χ_σ) for characters
                let c = if ind.dim() > 1 {
                    Coef::ZERO
                } else {
                    character_sum_oracle(&ind, 4 - ind.constants_nmt().2)?
                };
                for n in [-3i32, -2, -1, 1, 2, 3] {
                    let want = combo(&ind, &[(n, c), (n + n.signum(), Coef::ONE)]);
                    let got = ind.apply_basis(Op::T, n)?;
                    if got != want {
                        return Ok(Outcome {
                            expected: format!("T f[{n}] = {want}"),
                            observed: format!("T f[{n}] = {got}"),
                            pass: false,
                        });
                    }
                }
                Ok(Outcome::holds(&format!("T f[n] = {c}·f[n] + f[n±1] for 1 ≤ |n| ≤ 3"), None))
            }));
            let w = name.clone();
            out.push(Check::new(format!("{base}/explicit"), "explicit form for T", 4, move |ctx: &Ctx| {
                let ind = ctx.induction(ctx.weight(tag, &w)?)?;
                for n in [0, 1] {
                    let f = ind.f_basis(n)?;
                    let tv = ind.apply_basis(Op::T, n)?;
                    if !ind.equal(&ind.op_t(&f)?, &ind.to_explicit(&tv)?)? {
                        return Ok(Outcome::holds("generator sums agree", Some(format!("T f[{n}] differs"))));
                    }
                }
                Ok(Outcome::holds("generator sums agree with the basis expansion for n = 0, 1", None))
            }));
            let w = name.clone();
            out.push(Check::new(format!("{base}/T_sigma"), "normalized hecke operator", 4, move |ctx: &Ctx| {
                let sigma = ctx.weight(tag, &w)?;
                let t = sigma.tower().clone();
                let shift = sigma.dim() == 1 && t.det_exponent(sigma.chi_of()?).is_some();
                let ind = ctx.induction(sigma)?;
                for n in [-1, 0, 1] {
                    let mut want = ind.apply_basis(Op::T, n)?;
                    if shift {
                        want = want.add(&ind, &IwahoriVec::basis(n));
                    }
                    let got = ind.apply_basis(Op::TSigma, n)?;
                    if got != want {
                        return Ok(Outcome::compare(format!("T_σ f[{n}] = {want}"), format!("T_σ f[{n}] = {got}")));
                    }
                }
                let what = if shift { "T + 1" } else { "T" };
                Ok(Outcome::holds(&format!("T_σ = {what}"), None))
            }));
        }
    }
}

