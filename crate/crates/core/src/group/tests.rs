use super::*;
use crate::fields::build_tower;
use crate::laurent::DEFAULT_PRECISION;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn grp() -> Group {
    Group::new(LocalField::new(build_tower(3, 1).unwrap(), DEFAULT_PRECISION))
}

#[test]
fn printed_matrices() {
    let g = grp();
    let l = g.lf();
    let n = g.n(&l.zero(), &l.trace_zero_unit()).unwrap();
    assert_eq!(n.get(0, 2), &l.trace_zero_unit());
    assert_eq!(g.mul(&n, &g.inv(&n)), g.identity());
    assert_eq!(g.mul(&g.alpha_pow(1), &g.alpha_pow(-1)), g.identity());
    assert_eq!(g.mul(&g.beta(), &g.beta()), g.identity());
    let bp = g.beta_prime();
    assert_eq!(g.mul(&bp, &bp), g.identity());
    assert_eq!(g.n(&l.one(), &l.zero()).unwrap_err(), Error::RelationViolated);
    assert_eq!(g.h(&l.zero()).unwrap_err(), Error::InversionOfZero);
}

#[test]
fn unitarity_of_generators() {
    let g = grp();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for tag in KTag::ALL {
        for _ in 0..20 {
            let k = g.random_k(&mut rng, tag, 3);
            assert!(g.member(&k, Subgroup::G).unwrap());
            assert!(g.member(&k, Subgroup::K(tag)).unwrap());
            assert!(g.eq_to(&g.mul(&k, &g.inv(&k)), &g.identity(), DEFAULT_PRECISION - 4).unwrap());
        }
    }
}

#[test]
fn memberships() {
    let g = grp();
    let l = g.lf();
    let tz = l.trace_zero_unit();
    let n0 = g.n(&l.zero(), &tz).unwrap();
    assert!(g.member(&n0, Subgroup::N(0)).unwrap());
    assert!(!g.member(&n0, Subgroup::N(1)).unwrap());
    let a = g.alpha_pow(1);
    assert!(!g.member(&a, Subgroup::K(KTag::K0)).unwrap());
    assert!(!g.member(&a, Subgroup::K(KTag::K1)).unwrap());
    assert!(g.member(&g.beta_prime(), Subgroup::K(KTag::K1)).unwrap());
    assert!(g.member(&g.beta(), Subgroup::K(KTag::K0)).unwrap());
    assert!(!g.member(&g.beta(), Subgroup::K(KTag::K1)).unwrap());
}

#[test]
fn closure_of_subgroups() {
    let g = grp();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for tag in KTag::ALL {
        let (nk, mk, _) = iwahori_constants_static(tag);
        for _ in 0..20 {
            let a = g.random_i1(&mut rng, tag, 3);
            let b = g.random_i1(&mut rng, tag, 3);
            for sg in [Subgroup::ProPIwahori(tag), Subgroup::Iwahori(tag), Subgroup::K(tag)] {
                assert!(g.member(&g.mul(&a, &b), sg).unwrap());
                assert!(g.member(&g.inv(&a), sg).unwrap());
            }
            let u = g.random_n(&mut rng, nk + 1, 3);
            let v = g.random_n(&mut rng, nk + 1, 3);
            assert!(g.member(&g.mul(&u, &g.inv(&v)), Subgroup::N(nk + 1)).unwrap());
            let u = g.random_nprime(&mut rng, mk, 3);
            let v = g.random_nprime(&mut rng, mk, 3);
            assert!(g.member(&g.mul(&u, &g.inv(&v)), Subgroup::NPrime(mk)).unwrap());
            let h = g.random_torus(&mut rng, true, 3);
            let h2 = g.random_torus(&mut rng, true, 3);
            assert!(g.member(&g.mul(&h, &h2), Subgroup::H1).unwrap());
        }
    }
}

#[test]
fn iwahori_constants_by_scan() {
    let g = grp();
    assert_eq!(iwahori_constants(&g, KTag::K0).unwrap(), (0, 1, 3));
    assert_eq!(iwahori_constants(&g, KTag::K1).unwrap(), (-1, 2, 1));
    for tag in KTag::ALL {
        let (nk, mk, tk) = iwahori_constants(&g, tag).unwrap();
        let n_layer = cosets::coset_reps(&g, cosets::Side::N, nk, nk + 1).len();
        let np_layer = cosets::coset_reps(&g, cosets::Side::NPrime, mk, mk + 1).len();
        assert_eq!(n_layer, 3usize.pow(tk));
        assert_eq!(np_layer, 3usize.pow(4 - tk));
    }
}

#[test]
fn beta_k_inverts_alpha() {
    let g = grp();
    for tag in KTag::ALL {
        let b = g.beta_k(tag);
        let c = g.mul_all(&[&b, &g.alpha_pow(1), &b]);
        assert_eq!(c, g.alpha_pow(-1));
    }
}
