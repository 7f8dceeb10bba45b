//! Fixed-seed randomized batteries over the arithmetic layers.

use rand::Rng;
use u21_core::fields::{Coef, Res};
use u21_core::group::gamma::reduce_to_gamma;
use u21_core::group::{Group, KTag, Subgroup};
use u21_core::induction::iwahori::{IwahoriVec, Op};
use u21_core::weights::catalog::steinberg;
use u21_core::Result;

use crate::checks::{Check, Ctx, Outcome};

const CASES: usize = 100;

fn first_failure(fails: impl IntoIterator<Item = (bool, String)>) -> Option<String> {
    fails.into_iter().find(|(ok, _)| !ok).map(|(_, why)| why)
}

pub fn plan(tags: &[KTag], out: &mut Vec<Check>) {
    out.push(Check::new("notation/properties/fields", "property battery", 10, fields));
    out.push(Check::new("notation/properties/laurent", "property battery", 10, laurent));
    for &tag in tags {
        let id = format!("notation/properties/{tag}/homomorphisms");
        out.push(Check::new(id.clone(), "property battery", 10, move |ctx: &Ctx| homomorphisms(ctx, tag, &id)));
        let id = format!("notation/properties/{tag}/normalization");
        out.push(Check::new(id.clone(), "property battery", 10, move |ctx: &Ctx| normalization(ctx, tag, &id)));
        out.push(Check::new(format!("notation/properties/{tag}/precision"), "property battery", 10, move |ctx: &Ctx| {
            precision(ctx, tag)
        }));
    }
}

fn fields(ctx: &Ctx) -> Result<Outcome> {
    let t = &ctx.tower;
    let r = t.res();
    let f = t.coef();
    let mut rng = ctx.rng("notation/properties/fields");
    let mut checks = Vec::new();
    for i in 0..CASES {
        let [a, b, c] = [0; 3].map(|_| Res::from_code(rng.gen_range(0..r.order())));
        checks.push((r.add(a, b) == r.add(b, a), format!("residue addition commutes, case {i}")));
        checks.push((r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)), format!("residue product associates, case {i}")));
        checks.push((r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)), format!("distributivity, case {i}")));
        checks.push((a.is_zero() || r.mul(a, r.inv(a).unwrap_or(Res::ZERO)) == Res::ONE, format!("inverse, case {i}")));
        checks.push((t.conj(t.conj(a)) == a, format!("conjugation is an involution, case {i}")));
        checks.push((t.conj(r.mul(a, b)) == r.mul(t.conj(a), t.conj(b)), format!("conjugation is multiplicative, case {i}")));
        checks.push((t.is_base(t.norm(a)) && t.is_base(t.trace(a)), format!("norm and trace land in k_F, case {i}")));
        let [x, y] = [0; 2].map(|_| Coef::from_code(rng.gen_range(0..f.order())));
        checks.push((f.sub(f.add(x, y), y) == x, format!("coefficient subtraction, case {i}")));
        checks.push((y.is_zero() || f.div(f.mul(x, y), y) == Some(x), format!("coefficient division, case {i}")));
    }
    Ok(Outcome::holds("field axioms on 100 random cases", first_failure(checks)))
}

fn laurent(ctx: &Ctx) -> Result<Outcome> {
    let l = ctx.group().lf().clone();
    let mut rng = ctx.rng("notation/properties/laurent");
    let k = ctx.prec / 2;
    let mut checks = Vec::new();
    for i in 0..CASES {
        let a = l.random(&mut rng, -2, 6);
        let b = l.random(&mut rng, 0, 6);
        let c = l.random_unit(&mut rng, 6);
        checks.push((l.eq_to(&l.mul(&a, &b), &l.mul(&b, &a), k)?, format!("commutativity, case {i}")));
        let lhs = l.mul(&a, &l.add(&b, &c));
        checks.push((l.eq_to(&lhs, &l.add(&l.mul(&a, &b), &l.mul(&a, &c)), k)?, format!("distributivity, case {i}")));
        checks.push((l.eq_to(&l.mul(&c, &l.inv(&c)?), &l.one(), k)?, format!("unit inverse, case {i}")));
        let conj = l.conj(&l.mul(&a, &c));
        checks.push((l.eq_to(&conj, &l.mul(&l.conj(&a), &l.conj(&c)), k)?, format!("conjugation, case {i}")));
    }
    Ok(Outcome::holds("Laurent ring axioms on 100 random cases", first_failure(checks)))
}

fn homomorphisms(ctx: &Ctx, tag: KTag, id: &str) -> Result<Outcome> {
    let g = ctx.group();
    let gs = ctx.gamma(tag);
    let mut rng = ctx.rng(id);
    let mut checks = Vec::new();
    for i in 0..CASES / 4 {
        let a = g.random_k(&mut rng, tag, 3);
        let b = g.mul(&g.random_i1(&mut rng, tag, 3), &g.alpha_pow(rng.gen_range(-2..=2)));
        let ab = g.mul(&a, &b);
        checks.push((g.eq_to(&g.mul(&ab, &g.inv(&ab)), &g.identity(), ctx.prec / 2)?, format!("inverse, case {i}")));
        checks.push((g.member(&ab, Subgroup::G)?, format!("products stay unitary, case {i}")));
        let c = g.random_k(&mut rng, tag, 3);
        let lhs = reduce_to_gamma(&g, tag, &g.mul(&a, &c))?;
        let rhs = gs.mul(&reduce_to_gamma(&g, tag, &a)?, &reduce_to_gamma(&g, tag, &c)?);
        checks.push((lhs == rhs, format!("reduction is multiplicative, case {i}")));
    }
    let els = gs.elements();
    let pairs: Vec<_> = (0..CASES)
        .map(|_| (els[rng.gen_range(0..els.len())], els[rng.gen_range(0..els.len())]))
        .collect();
    for (name, w) in ctx.weights(tag)? {
        checks.push((w.is_homomorphism_on(&pairs), format!("weight {name} is not a homomorphism")));
    }
    let ind = ctx.induction(steinberg(&gs))?;
    let f = ind.generator(&g.alpha_pow(1), ind.v0())?;
    for i in 0..4 {
        let a = g.random_k(&mut rng, tag, 2);
        let b = g.mul(&g.random_k(&mut rng, tag, 2), &g.alpha_pow(-1));
        let two = ind.g_act(&a, &ind.g_act(&b, &f)?)?;
        checks.push((ind.equal(&two, &ind.g_act(&g.mul(&a, &b), &f)?)?, format!("G-action on ind, case {i}")));
    }
    Ok(Outcome::holds("group, reduction, weight and induced actions are homomorphisms", first_failure(checks)))
}

fn normalization(ctx: &Ctx, tag: KTag, id: &str) -> Result<Outcome> {
    let g = ctx.group();
    let ind = ctx.induction(steinberg(&ctx.gamma(tag)))?;
    let lam = ind.lam().clone();
    let mut rng = ctx.rng(id);
    let mut checks = Vec::new();
    for case in 0..8 {
        let mut gens = Vec::new();
        for _ in 0..5 {
            let base = g.mul(&g.random_k(&mut rng, tag, 2), &g.alpha_pow(rng.gen_range(-1..=1)));
            let v: Vec<Coef> = (0..ind.dim()).map(|_| Coef::from_code(rng.gen_range(0..lam.order()))).collect();
            // the same coset under another representative
            let k = g.random_k(&mut rng, tag, 2);
            let w = ind.sigma_of(&g.inv(&k))?.apply(&lam, &v);
            gens.push((g.mul(&base, &k), w));
            gens.push((base, v));
        }
        let f = ind.from_generators(gens.iter().map(|(a, b)| (a, b)))?;
        let again = ind.from_generators(f.generators())?;
        checks.push((ind.equal(&f, &again)? && f.len() == again.len(), format!("idempotence, case {case}")));
        let mut shuffled = gens.clone();
        shuffled.reverse();
        shuffled.rotate_left(rng.gen_range(0..gens.len()));
        let h = ind.from_generators(shuffled.iter().map(|(a, b)| (a, b)))?;
        checks.push((ind.equal(&f, &h)?, format!("order independence, case {case}")));
    }
    Ok(Outcome::holds("normalization is idempotent and order-free", first_failure(checks)))
}

fn precision(ctx: &Ctx, tag: KTag) -> Result<Outcome> {
    let hi_ctx = Ctx { prec: 2 * ctx.prec, ..ctx.clone() };
    let mut checks = Vec::new();
    for name in ["trivial", "st"] {
        let lo = ctx.induction(ctx.weight(tag, name)?)?;
        let hi = hi_ctx.induction(hi_ctx.weight(tag, name)?)?;
        for n in -2..=2 {
            for op in [Op::T, Op::SK, Op::SMinus] {
                let v = IwahoriVec::basis(n);
                let same = lo.apply_vec(op, &v)? == hi.apply_vec(op, &v)?;
                checks.push((same, format!("{name}: {op:?} f[{n}] differs between N and 2N")));
            }
        }
    }
    let (gl, gh): (Group, Group) = (ctx.group(), hi_ctx.group());
    let mut r1 = ctx.rng("precision");
    let mut r2 = ctx.rng("precision");
    for i in 0..20 {
        let a = gl.mul(&gl.random_k(&mut r1, tag, 4), &gl.alpha_pow(2));
        let b = gh.mul(&gh.random_k(&mut r2, tag, 4), &gh.alpha_pow(2));
        checks.push((gh.eq_to(&gl.inv(&a), &gh.inv(&b), ctx.prec - 4)?, format!("inverse differs, case {i}")));
    }
    Ok(Outcome::holds("certified values agree between N and 2N", first_failure(checks)))
}
