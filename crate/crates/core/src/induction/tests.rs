use super::constants::*;
use super::iwahori::*;
use super::spin::*;
use super::*;
use crate::fields::build_tower;
use crate::group::gamma::GammaGroup;
use crate::group::lattice::iwahori_orbit;
use crate::laurent::{LocalField, DEFAULT_PRECISION};
use crate::weights::catalog::*;
use alloc::string::String;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn weights(tag: KTag) -> Vec<(String, Weight)> {
    catalog(&GammaGroup::new(build_tower(3, 1).unwrap(), tag), true).unwrap()
}

fn make(w: Weight) -> Induction {
    let grp = Group::new(LocalField::new(w.tower().clone(), DEFAULT_PRECISION));
    Induction::new(grp, w).unwrap()
}

fn ind(tag: KTag, which: &str) -> Induction {
    make(weights(tag).into_iter().find(|(n, _)| n == which).unwrap().1)
}

fn vec_of(ind: &Induction, terms: &[(i32, Coef)]) -> IwahoriVec {
    let mut v = IwahoriVec::zero();
    for &(n, c) in terms {
        v = v.add(ind, &IwahoriVec::basis(n).scale(ind, c));
    }
    v
}

#[test]
fn action_on_generators() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for tag in KTag::ALL {
        let i = ind(tag, "st");
        let g = i.group().clone();
        let v = i.v0().to_vec();
        let f = i.generator(&g.alpha_pow(1), &v).unwrap();
        assert!(i.equal(&i.g_act(&g.identity(), &f).unwrap(), &f).unwrap());
        let k = g.random_k(&mut rng, tag, 3);
        let lhs = i.g_act(&k, &i.generator(&g.identity(), &v).unwrap()).unwrap();
        let rhs = i.generator(&g.identity(), &i.sigma_of(&k).unwrap().apply(i.lam(), &v)).unwrap();
        assert!(i.equal(&lhs, &rhs).unwrap());
        let a = g.random_k(&mut rng, tag, 2);
        let b = g.mul(&g.random_k(&mut rng, tag, 2), &g.alpha_pow(-1));
        let two = i.g_act(&a, &i.g_act(&b, &f).unwrap()).unwrap();
        assert!(i.equal(&two, &i.g_act(&g.mul(&a, &b), &f).unwrap()).unwrap());
    }
}

#[test]
fn basis_functions() {
    let k1 = ind(KTag::K1, "trivial");
    assert_eq!(k1.f_basis(1).unwrap().len(), 27);
    assert_eq!(k1.basis_size(1).unwrap(), 27);
    assert_eq!(k1.f_basis(0).unwrap().len(), 1);
    for tag in KTag::ALL {
        let i = ind(tag, "st");
        for n in [-1, 0, 1] {
            let f = i.f_basis(n).unwrap();
            assert_eq!(f.len(), i.basis_size(n).unwrap());
            assert!(i.is_i1_invariant(&f).unwrap(), "{tag} {n}");
        }
        assert_eq!(i.f_basis(9).unwrap_err(), Error::PrecisionBudgetExceeded { n: 9, n_max: DEFAULT_N_MAX });
    }
}

#[test]
fn point_route_matches_explicit_route() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for tag in KTag::ALL {
        for w in ["trivial", "det^1", "st"] {
            let i = ind(tag, w);
            let pts: Vec<GElem> = (0..3).flat_map(|m| [m; 4]).map(|m| i.random_point(&mut rng, m)).collect();
            for n in [-1, 0, 1] {
                let f = i.f_basis(n).unwrap();
                let v = IwahoriVec::basis(n);
                assert!(i.agrees_at(&f, &v, &pts).unwrap());
                let tv = i.apply_vec(Op::T, &v).unwrap();
                assert!(i.equal(&i.op_t(&f).unwrap(), &i.to_explicit(&tv).unwrap()).unwrap(), "{tag} {w} {n}");
            }
            let f1 = i.f_basis(1).unwrap();
            let sk = i.apply_basis(Op::SK, 1).unwrap();
            assert!(i.equal(&i.op_sk(&f1).unwrap(), &i.to_explicit(&sk).unwrap()).unwrap());
            let f0 = i.f_basis(0).unwrap();
            let sm = i.apply_basis(Op::SMinus, 0).unwrap();
            assert!(i.equal(&i.op_sminus(&f0).unwrap(), &i.to_explicit(&sm).unwrap()).unwrap());
        }
    }
}

#[test]
fn operator_preconditions() {
    let i = ind(KTag::K0, "trivial");
    let g = i.group();
    let f = i.generator(&g.alpha_pow(2), i.v0()).unwrap();
    assert_eq!(i.op_sk(&f).unwrap_err(), Error::InvarianceViolated("N′_{m_K}"));
    assert!(i.op_sminus(&i.zero()).unwrap().is_zero());
    assert!(i.op_t(&i.zero()).unwrap().is_zero());
}

#[test]
fn hecke_operator_on_basis() {
    for tag in KTag::ALL {
        for (name, w) in weights(tag) {
            let i = make(w);
            let lam = i.lambda().unwrap();
            assert_eq!(i.apply_basis(Op::T, 0).unwrap(), vec_of(&i, &[(-1, Coef::ONE), (1, lam)]));
            let c = i.c_operator().unwrap();
            for n in [-3i32, -2, -1, 1, 2, 3] {
                let next = n + n.signum();
                assert_eq!(i.apply_basis(Op::T, n).unwrap(), vec_of(&i, &[(n, c), (next, Coef::ONE)]), "{tag} {name} {n}");
            }
            if i.dim() > 1 {
                assert_eq!(c, Coef::ZERO);
            } else {
                // the coefficient carries χ_σ(h(𝔱)) relative to c_−
                let t = i.sigma().tower();
                let twist = t.eval_char_h(i.sigma().chi_of().unwrap(), t.trace_zero_unit());
                assert_eq!(c, i.lam().mul(twist, i.c_minus_closed_form().unwrap()), "{tag} {name}");
            }
        }
    }
}

#[test]
fn averaging_operators_on_basis() {
    for tag in KTag::ALL {
        for (name, w) in weights(tag) {
            let i = make(w);
            let cm = i.c_minus_closed_form().unwrap();
            let dn = i.d_closed_form().unwrap();
            for n in 1..=3 {
                assert_eq!(i.apply_basis(Op::SK, n).unwrap(), IwahoriVec::basis(-n), "{tag} {name}");
                assert_eq!(i.apply_basis(Op::SMinus, n).unwrap(), IwahoriVec::basis(n).scale(&i, cm));
                assert_eq!(i.apply_basis(Op::SK, -n).unwrap(), IwahoriVec::basis(-n).scale(&i, dn));
            }
            for n in 0..=2 {
                assert_eq!(i.apply_basis(Op::SMinus, -n).unwrap(), IwahoriVec::basis(n + 1));
            }
            let d0 = i.d0_closed_form().unwrap();
            assert_eq!(i.apply_basis(Op::SK, 0).unwrap(), IwahoriVec::basis(0).scale(&i, d0), "{tag} {name}");
            assert_eq!(i.d0_in_weight().unwrap(), d0);
        }
    }
}

#[test]
fn constant_values() {
    let m1 = ind(KTag::K0, "trivial").lam().neg(Coef::ONE);
    for tag in KTag::ALL {
        let triv = ind(tag, "trivial").constants(3).unwrap();
        assert_eq!(triv.lambda, Coef::ONE);
        assert_eq!(triv.c_minus, m1);
        assert_eq!(triv.d[&0], Coef::ZERO);
        assert!((1..=3).all(|n| triv.d[&n] == m1));
        let st = ind(tag, "st").constants(2).unwrap();
        assert_eq!((st.lambda, st.c, st.d[&0]), (Coef::ZERO, Coef::ZERO, m1));
        assert!(matches!(ind(tag, "det^1").constants(1), Err(Error::CrossCheckFailed(_))));
    }
    let g = GammaGroup::new(build_tower(3, 1).unwrap(), KTag::K1);
    for chi in regular_characters(&g) {
        assert_eq!(character_sum(g.tower(), chi, 3), Coef::ZERO);
    }
}

#[test]
fn normalized_operator() {
    let st = ind(KTag::K1, "st");
    let triv = ind(KTag::K1, "trivial");
    let f = triv.f_basis(1).unwrap();
    assert!(!st.t_sigma_shift().unwrap());
    assert!(triv.t_sigma_shift().unwrap());
    let lhs = triv.op_t_sigma(&f).unwrap();
    assert!(triv.equal(&lhs, &triv.add(&triv.op_t(&f).unwrap(), &f).unwrap()).unwrap());
    let g = st.f_basis(-1).unwrap();
    assert!(st.equal(&st.op_t_sigma(&g).unwrap(), &st.op_t(&g).unwrap()).unwrap());
    let eta = ind(KTag::K1, "χ(6,0)");
    assert!(!eta.t_sigma_shift().unwrap());
}

#[test]
fn hecke_operator_is_equivariant_and_supported() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for tag in KTag::ALL {
        let i = ind(tag, "st");
        let g = i.group().clone();
        let f = i.generator(&g.identity(), &i.v0().to_vec()).unwrap();
        let tf = i.op_t(&f).unwrap();
        for (h, _) in tf.generators() {
            let inside = [1, -1].iter().any(|&n| iwahori_orbit(&g, tag, h, n).unwrap().is_some());
            assert!(inside);
        }
        for _ in 0..2 {
            let x = g.mul(&g.random_k(&mut rng, tag, 2), &g.alpha_pow(1));
            let lhs = i.op_t(&i.g_act(&x, &f).unwrap()).unwrap();
            assert!(i.equal(&lhs, &i.g_act(&x, &tf).unwrap()).unwrap());
        }
    }
}

#[test]
fn averaging_preserves_invariants_and_twists() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for tag in KTag::ALL {
        let i = ind(tag, "st");
        let g = i.group().clone();
        for n in [-1, 1, 2] {
            let v = IwahoriVec::basis(n);
            for op in [Op::SK, Op::SMinus] {
                assert!(i.output_is_i1_invariant(&mut rng, op, &v, 3).unwrap());
            }
            for h in i.h1_generators() {
                let hs = g.mul_all(&[i.beta_k(), &h, i.beta_k()]);
                for m in 0..=2 {
                    let y = i.random_point(&mut rng, m);
                    let lhs = i.apply_at(Op::SK, &v, Some(&h), &y).unwrap();
                    assert_eq!(lhs, i.apply_at(Op::SK, &v, None, &g.mul(&y, &hs)).unwrap());
                }
            }
        }
    }
}

#[test]
fn spot_checks_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let i = ind(KTag::K1, "trivial");
    for op in [Op::T, Op::SK, Op::SMinus, Op::TSigma] {
        let v = vec_of(&i, &[(0, Coef::ONE), (1, Coef::ONE)]);
        let out = i.apply_vec(op, &v).unwrap();
        assert!(i.spot_check(&mut rng, op, &v, &out, 2).unwrap());
        let wrong = out.add(&i, &IwahoriVec::basis(2));
        assert!(!i.spot_check(&mut rng, op, &v, &wrong, 2).unwrap());
    }
}

#[test]
fn spin_of_f0_and_f1() {
    let triv = ind(KTag::K1, "trivial");
    assert_eq!(triv.spin_k(&triv.f_basis(0).unwrap(), SPIN_CAP).unwrap().basis.len(), 1);
    let k0 = ind(KTag::K0, "trivial");
    assert_eq!(k0.spin_k(&k0.f_basis(1).unwrap(), SPIN_CAP).unwrap().basis.len(), 28);
    assert!(matches!(k0.spin_k(&k0.f_basis(1).unwrap(), 10), Err(Error::ClosureBudgetExceeded { cap: 10 })));
}

#[test]
fn spin_of_f1_in_the_regular_case() {
    for (name, w) in weights(KTag::K1).into_iter().filter(|(n, _)| n.starts_with("quot") || n.starts_with("sub")) {
        let i = make(w);
        let t = i.sigma().tower().clone();
        let span = i.spin_k(&i.f_basis(1).unwrap(), SPIN_CAP).unwrap();
        assert_eq!(span.basis.len(), 1 + 3, "{name}");
        let tr = i.f1_translates().unwrap();
        for (a, fa) in tr.iter().enumerate() {
            for fb in &tr[a + 1..] {
                assert!(i.support(fa).is_disjoint(&i.support(fb)));
            }
        }
        let mut m0 = alloc::vec![Coef::ZERO; 4];
        m0[0] = Coef::ONE;
        let chi = span.module.eigen_character(&m0).unwrap();
        assert_eq!(chi, t.char_s(i.sigma().chi_of().unwrap()));
        let ps = principal_series(i.sigma().gamma(), chi);
        let x = frobenius_intertwiner(&ps, &span.module, &m0).unwrap();
        assert_eq!(x.rank(i.lam()), 4);
        assert_eq!(span.module.fingerprint(), ps.fingerprint());
    }
}
