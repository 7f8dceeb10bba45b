use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use u21_core::fields::{build_tower, Coef, FieldTower, Res};
use u21_core::group::gamma::{reduce_to_gamma, GammaGroup};
use u21_core::group::{Group, KTag, Subgroup};
use u21_core::induction::iwahori::{IwahoriVec, Op};
use u21_core::induction::Induction;
use u21_core::laurent::{LocalField, DEFAULT_PRECISION};
use u21_core::weights::catalog::{catalog, steinberg};

fn tower() -> FieldTower {
    build_tower(3, 1).unwrap()
}

fn res(code: u32) -> Res {
    Res::from_code(code % 9)
}

fn tag_of(b: bool) -> KTag {
    if b {
        KTag::K1
    } else {
        KTag::K0
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residue_field_axioms(a in 0u32..9, b in 0u32..9, c in 0u32..9) {
        let t = tower();
        let r = t.res();
        let (a, b, c) = (res(a), res(b), res(c));
        prop_assert_eq!(r.add(a, b), r.add(b, a));
        prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.add(a, r.neg(a)), Res::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(r.mul(a, r.inv(a).unwrap()), Res::ONE);
        }
        prop_assert_eq!(t.conj(t.conj(a)), a);
        prop_assert_eq!(t.conj(r.mul(a, b)), r.mul(t.conj(a), t.conj(b)));
    }

    #[test]
    fn coefficient_field_axioms(a in 0u32..64, b in 0u32..64) {
        let t = tower();
        let f = t.coef();
        let n = f.order();
        let (a, b) = (Coef::from_code(a % n), Coef::from_code(b % n));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !b.is_zero() {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
    }

    #[test]
    fn laurent_ring_axioms(seed in any::<u64>()) {
        let l = LocalField::new(tower(), DEFAULT_PRECISION);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = l.random(&mut rng, -2, 6);
        let b = l.random(&mut rng, 0, 6);
        let c = l.random_unit(&mut rng, 6);
        let k = 8;
        prop_assert!(l.eq_to(&l.mul(&a, &b), &l.mul(&b, &a), k).unwrap());
        prop_assert!(l.eq_to(&l.mul(&a, &l.add(&b, &c)), &l.add(&l.mul(&a, &b), &l.mul(&a, &c)), k).unwrap());
        prop_assert!(l.eq_to(&l.mul(&c, &l.inv(&c).unwrap()), &l.one(), k).unwrap());
        prop_assert!(l.eq_to(&l.conj(&l.mul(&a, &c)), &l.mul(&l.conj(&a), &l.conj(&c)), k).unwrap());
    }

    #[test]
    fn group_products_stay_unitary(seed in any::<u64>(), k1 in any::<bool>()) {
        let g = Group::new(LocalField::new(tower(), DEFAULT_PRECISION));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tag = tag_of(k1);
        let a = g.random_k(&mut rng, tag, 3);
        let b = g.mul(&g.random_i1(&mut rng, tag, 3), &g.alpha_pow(rng.gen_range(-2..=2)));
        let ab = g.mul(&a, &b);
        prop_assert!(g.eq_to(&g.mul(&ab, &g.inv(&ab)), &g.identity(), 8).unwrap());
        prop_assert!(g.member(&g.mul(&a, &g.inv(&a)), Subgroup::K(tag)).unwrap());
    }

    #[test]
    fn reduction_is_a_homomorphism(seed in any::<u64>(), k1 in any::<bool>()) {
        let g = Group::new(LocalField::new(tower(), DEFAULT_PRECISION));
        let tag = tag_of(k1);
        let gs = GammaGroup::new(tower(), tag);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = g.random_k(&mut rng, tag, 3);
        let b = g.random_k(&mut rng, tag, 3);
        let lhs = reduce_to_gamma(&g, tag, &g.mul(&a, &b)).unwrap();
        let rhs = gs.mul(&reduce_to_gamma(&g, tag, &a).unwrap(), &reduce_to_gamma(&g, tag, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weight_action_is_a_homomorphism(i in 0usize..24192, j in 0usize..24192, k1 in any::<bool>()) {
        let gs = GammaGroup::new(tower(), tag_of(k1));
        let els = gs.elements();
        let pair = (els[i % els.len()], els[j % els.len()]);
        for (_, w) in catalog(&gs, false).unwrap() {
            prop_assert!(w.is_homomorphism_on(&[pair]));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn normalization_is_idempotent_and_order_free(seed in any::<u64>(), k1 in any::<bool>()) {
        let tag = tag_of(k1);
        let gs = GammaGroup::new(tower(), tag);
        let g = Group::new(LocalField::new(tower(), DEFAULT_PRECISION));
        let ind = Induction::new(g.clone(), steinberg(&gs)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lam = ind.lam().clone();
        let mut gens = Vec::new();
        for _ in 0..6 {
            let base = g.alpha_pow(rng.gen_range(-1..=1));
            let k = g.random_k(&mut rng, tag, 2);
            let v: Vec<Coef> = (0..ind.dim()).map(|_| Coef::from_code(rng.gen_range(0..lam.order()))).collect();
            gens.push((g.mul(&k, &base), v.clone()));
            // the same coset under another representative
            let k2 = g.random_k(&mut rng, tag, 2);
            let moved = g.mul(&gens.last().unwrap().0, &k2);
            let w = ind.sigma_of(&g.inv(&k2)).unwrap().apply(&lam, &v);
            gens.push((moved, w));
        }
        let f = ind.from_generators(gens.iter().map(|(a, b)| (a, b))).unwrap();
        let again = ind.from_generators(f.generators()).unwrap();
        prop_assert!(ind.equal(&f, &again).unwrap());
        prop_assert_eq!(f.len(), again.len());
        let mut shuffled = gens.clone();
        shuffled.reverse();
        shuffled.rotate_left(rng.gen_range(0..gens.len()));
        let h = ind.from_generators(shuffled.iter().map(|(a, b)| (a, b))).unwrap();
        prop_assert!(ind.equal(&f, &h).unwrap());
    }
}

#[test]
fn precision_soundness() {
    let t = tower();
    for tag in KTag::ALL {
        let gs = GammaGroup::new(t.clone(), tag);
        let w = steinberg(&gs);
        let lo = Induction::new(Group::new(LocalField::new(t.clone(), DEFAULT_PRECISION)), w.clone()).unwrap();
        let hi = Induction::new(Group::new(LocalField::new(t.clone(), 2 * DEFAULT_PRECISION)), w).unwrap();
        for n in -2..=2 {
            for op in [Op::T, Op::SK, Op::SMinus] {
                assert_eq!(lo.apply_vec(op, &IwahoriVec::basis(n)).unwrap(), hi.apply_vec(op, &IwahoriVec::basis(n)).unwrap());
            }
        }
        let (gl, gh) = (lo.group(), hi.group());
        let mut r1 = ChaCha8Rng::seed_from_u64(9);
        let mut r2 = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let a = gl.mul(&gl.random_k(&mut r1, tag, 4), &gl.alpha_pow(2));
            let b = gh.mul(&gh.random_k(&mut r2, tag, 4), &gh.alpha_pow(2));
            assert!(gh.eq_to(&gl.inv(&a), &gh.inv(&b), DEFAULT_PRECISION - 4).unwrap());
        }
    }
}
