use rand::Rng;
use u21_core::group::cosets::{coset_reps, Side};
use u21_core::group::exchange::{exchange, exchange2, exchange2_permutes, exchange_permutes, useful_identity};
use u21_core::group::{iwahori_constants, KTag};
use u21_core::Result;

use super::properties;
use crate::checks::{Check, Ctx, Outcome};

const PAIRS: usize = 200;

/// `(n_K, m_K, t_K)` as tabulated for the two maximal compact subgroups.
fn table(tag: KTag) -> (i32, i32, u32) {
    match tag {
        KTag::K0 => (0, 1, 3),
        KTag::K1 => (-1, 2, 1),
    }
}

pub fn plan(tags: &[KTag], out: &mut Vec<Check>) {
    out.push(Check::new("notation/useful-identity", "useful identity", 1, useful_identity_check));
    for &tag in tags {
        out.push(Check::new(format!("notation/{tag}/iwahori-constants"), "iwahori constants", 2, move |ctx: &Ctx| {
            let (n, m, t) = iwahori_constants(&ctx.group(), tag)?;
            let fmt = |(n, m, t): (i32, i32, u32)| format!("(n, m, t) = ({n}, {m}, {t})");
            Ok(Outcome::compare(fmt(table(tag)), fmt((n, m, t))))
        }));
        out.push(Check::new(format!("notation/{tag}/layer-sizes"), "iwahori constants", 2, move |ctx: &Ctx| {
            let g = ctx.group();
            let (nk, mk, tk) = table(tag);
            let q = ctx.tower.q() as usize;
            let upper = coset_reps(&g, Side::N, nk, nk + 1).len();
            let lower = coset_reps(&g, Side::NPrime, mk, mk + 1).len();
            Ok(Outcome::compare(
                format!("{} and {}", q.pow(tk), q.pow(4 - tk)),
                format!("{upper} and {lower}"),
            ))
        }));
        let id = format!("notation/{tag}/exchange");
        out.push(Check::new(id.clone(), "exchange lemma", 3, move |ctx: &Ctx| exchange_check(ctx, tag, &id)));
        let id = format!("notation/{tag}/exchange-bijection");
        out.push(Check::new(id.clone(), "refinement of exchange lemma", 3, move |ctx: &Ctx| {
            bijection_check(ctx, tag, &id)
        }));
    }
    properties::plan(tags, out);
}

fn useful_identity_check(ctx: &Ctx) -> Result<Outcome> {
    let g = ctx.group();
    let mut rng = ctx.rng("notation/useful-identity");
    let mut seen = 0;
    while seen < PAIRS {
        let k = rng.gen_range(-2..=2);
        let (x, y) = g.random_xy(&mut rng, k, 4);
        if y.is_zero() {
            continue;
        }
        let (a, h, c) = useful_identity(&g, &x, &y)?;
        let lhs = g.mul(&g.beta(), &g.n(&x, &y)?);
        if !g.eq_to(&lhs, &g.mul_all(&[&a, &h, &c]), ctx.prec - 4)? {
            return Ok(Outcome::holds("β·n(x,y) factors on 200 pairs", Some(format!("mismatch on pair {seen}"))));
        }
        seen += 1;
    }
    Ok(Outcome::holds("β·n(x,y) factors on 200 pairs", None))
}

fn exchange_check(ctx: &Ctx, tag: KTag, id: &str) -> Result<Outcome> {
    let g = ctx.group();
    let (nk, mk, _) = table(tag);
    let mut rng = ctx.rng(id);
    let claim = "u′u = u₁hu′₁ and uu′ = u′₁hu₁ on 200 pairs";
    for i in 0..PAIRS {
        let up = g.random_nprime(&mut rng, mk, 4);
        let u = g.random_n(&mut rng, nk, 4);
        let (u1, h, u1p) = exchange(&g, tag, &up, &u)?;
        if !g.eq_to(&g.mul(&up, &u), &g.mul_all(&[&u1, &h, &u1p]), ctx.prec - 4)? {
            return Ok(Outcome::holds(claim, Some(format!("u′u differs on pair {i}"))));
        }
        let (v1p, h2, v1) = exchange2(&g, tag, &u, &up)?;
        if !g.eq_to(&g.mul(&u, &up), &g.mul_all(&[&v1p, &h2, &v1]), ctx.prec - 4)? {
            return Ok(Outcome::holds(claim, Some(format!("uu′ differs on pair {i}"))));
        }
    }
    Ok(Outcome::holds(claim, None))
}

fn bijection_check(ctx: &Ctx, tag: KTag, id: &str) -> Result<Outcome> {
    let g = ctx.group();
    let (nk, mk, _) = table(tag);
    let mut rng = ctx.rng(id);
    let claim = "u ↦ u₁ and u′ ↦ u′₁ permute the sampled quotients";
    for _ in 0..3 {
        let up = g.random_nprime(&mut rng, mk, 3);
        for (l, n, m) in [(0, 1, 1), (0, 1, 2), (0, 2, 2), (1, 2, 3)] {
            if !exchange_permutes(&g, tag, &up, l, n, m)? {
                return Ok(Outcome::holds(claim, Some(format!("N-side quotient ({l}, {n}, {m})"))));
            }
        }
        let u = g.random_n(&mut rng, nk, 3);
        for (l, m) in [(1, 2), (1, 3), (2, 4)] {
            if !exchange2_permutes(&g, tag, &u, l, m)? {
                return Ok(Outcome::holds(claim, Some(format!("N′-side quotient ({l}, {m})"))));
            }
        }
    }
    Ok(Outcome::holds(claim, None))
}
