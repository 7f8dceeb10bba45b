//! The checks of each suite. Criterion `0` marks supplementary checks
//! outside the numbered acceptance list.

mod appendix;
mod degenerate;
mod hecke;
mod notation;
mod properties;
mod regular;
mod section3;

use u21_core::fields::Coef;
use u21_core::group::KTag;
use u21_core::induction::iwahori::IwahoriVec;
use u21_core::induction::Induction;

use crate::checks::{Check, Ctx};
use crate::config::Suite;

/// The checks of `suite` for the given tags, in report order. Weight names
/// come from the catalog at `ctx`; a catalog failure becomes one
/// indeterminate check.
pub fn plan(suite: Suite, tags: &[KTag], ctx: &Ctx) -> Vec<Check> {
    let mut out = Vec::new();
    for s in suite.expand() {
        match s {
            Suite::Notation => notation::plan(tags, &mut out),
            Suite::Hecke => hecke::plan(tags, ctx, &mut out),
            Suite::Appendix => appendix::plan(tags, ctx, &mut out),
            Suite::Section3 => section3::plan(tags, ctx, &mut out),
            Suite::Degenerate => degenerate::plan(tags, &mut out),
            Suite::Regular => regular::plan(tags, ctx, &mut out),
            Suite::All => unreachable!("expanded"),
        }
    }
    out
}

/// Names of catalog weights at `tag`, or a check reporting why there are none.
fn weight_names(tag: KTag, ctx: &Ctx, suite: &str, out: &mut Vec<Check>) -> Vec<String> {
    match ctx.weights(tag) {
        Ok(ws) => ws.into_iter().map(|(n, _)| n).collect(),
        Err(e) => {
            out.push(Check::new(format!("{suite}/{tag}/catalog"), "weights", 0, move |_: &Ctx| Err(e.clone())));
            Vec::new()
        }
    }
}

/// `Σ c f_n` from `(n, c)` pairs.
fn combo(ind: &Induction, terms: &[(i32, Coef)]) -> IwahoriVec {
    let mut v = IwahoriVec::zero();
    for &(n, c) in terms {
        v = v.add(ind, &IwahoriVec::basis(n).scale(ind, c));
    }
    v
}

fn ones(terms: &[i32]) -> Vec<(i32, Coef)> {
    terms.iter().map(|&n| (n, Coef::ONE)).collect()
}

fn minus_one(ind: &Induction) -> Coef {
    ind.lam().neg(Coef::ONE)
}
