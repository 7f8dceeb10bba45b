use u21_core::group::KTag;
use u21_core::induction::iwahori::Op;
use u21_core::induction::Induction;
use u21_core::Result;

use super::{combo, ones};
use crate::checks::{Check, Ctx, Outcome};

const LABEL: &str = "reducibility of supersingular quotient";

/// `Op(Σ f_n)` on the basis, with the explicit generator sum compared when
/// the input is small.
fn apply_both(ind: &Induction, op: Op, input: &[i32]) -> Result<(String, String, bool)> {
    let v = combo(ind, &ones(input));
    let got = ind.apply_vec(op, &v)?;
    let f = ind.to_explicit(&v)?;
    let explicit = match op {
        Op::T => ind.op_t(&f)?,
        Op::TSigma => ind.op_t_sigma(&f)?,
        Op::SK => ind.op_sk(&f)?,
        Op::SMinus => ind.op_sminus(&f)?,
    };
    let agree = ind.equal(&explicit, &ind.to_explicit(&got)?)?;
    Ok((v.to_string(), got.to_string(), agree))
}

pub fn plan(tags: &[KTag], out: &mut Vec<Check>) {
    for &tag in tags {
        out.push(Check::new(format!("degenerate/{tag}/S_-(f[0] + f[1])"), LABEL, 7, move |ctx: &Ctx| {
            let ind = ctx.induction(ctx.weight(tag, "trivial")?)?;
            let (_, got, agree) = apply_both(&ind, Op::SMinus, &[0, 1])?;
            Ok(Outcome {
                expected: "S_-(f[0] + f[1]) = 0 in ind 1".into(),
                observed: format!("{got} (generator sum agrees: {agree})"),
                pass: got == "0" && agree,
            })
        }));
        out.push(Check::new(format!("degenerate/{tag}/T(f[0] + f[1])"), LABEL, 7, move |ctx: &Ctx| {
            let ind = ctx.induction(ctx.weight(tag, "st")?)?;
            let want = combo(&ind, &ones(&[-1, 2])).to_string();
            let (_, got, agree) = apply_both(&ind, Op::T, &[0, 1])?;
            Ok(Outcome {
                expected: format!("T(f[0] + f[1]) = {want} in ind st"),
                observed: format!("{got} (generator sum agrees: {agree})"),
                pass: got == want && agree,
            })
        }));
        out.push(Check::new(format!("degenerate/{tag}/(T+1)f[0]"), LABEL, 7, move |ctx: &Ctx| {
            let ind = ctx.induction(ctx.weight(tag, "trivial")?)?;
            let want = combo(&ind, &ones(&[-1, 0, 1])).to_string();
            let (_, got, agree) = apply_both(&ind, Op::TSigma, &[0])?;
            Ok(Outcome {
                expected: format!("(T+1) f[0] = {want}, so -f[-1] ≡ f[0] + f[1] mod (T+1)"),
                observed: format!("{got} (generator sum agrees: {agree})"),
                pass: got == want && agree,
            })
        }));
    }
}
