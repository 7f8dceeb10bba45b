use super::catalog::*;
use super::lattice::*;
use super::*;
use crate::fields::build_tower;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gs(tag: KTag) -> GammaGroup {
    GammaGroup::new(build_tower(3, 1).unwrap(), tag)
}

fn random_pairs(g: &GammaGroup, n: usize, seed: u64) -> Vec<(GammaElem, GammaElem)> {
    let els = g.elements();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| (els[rng.gen_range(0..els.len())], els[rng.gen_range(0..els.len())])).collect()
}

#[test]
fn dimensions() {
    let g1 = gs(KTag::K1);
    let g0 = gs(KTag::K0);
    let t = g1.tower();
    let chi = regular_characters(&g1)[0];
    assert_eq!(principal_series(&g1, chi).dim(), 4);
    assert_eq!(principal_series(&g0, chi).dim(), 28);
    assert_eq!(steinberg(&g0).dim(), 27);
    assert_eq!(steinberg(&g1).dim(), 3);
    assert!(t.characters_of_torus().iter().all(|&c| principal_series(&g1, c).dim() == 4));
}

#[test]
fn homomorphisms() {
    for tag in KTag::ALL {
        let g = gs(tag);
        let pairs = random_pairs(&g, 30, 1);
        let chi = regular_characters(&g)[3];
        for w in [trivial(&g), steinberg(&g), principal_series(&g, chi), det_twist(&g, 1)] {
            assert!(w.is_homomorphism_on(&pairs), "{:?}", w.kind());
        }
    }
    let g = gs(KTag::K1);
    let eta = g.tower().character(2, 1);
    assert!(character(&g, eta).unwrap().is_homomorphism_on(&random_pairs(&g, 30, 2)));
}

#[test]
fn invariants_and_j() {
    for tag in KTag::ALL {
        let g = gs(tag);
        let st = steinberg(&g);
        assert_eq!(st.u_invariants().dim(), 1);
        assert_eq!(st.chi_of().unwrap(), Character::TRIVIAL);
        let j = st.j_map().unwrap();
        let f = st.lam();
        assert_eq!(j.rank(f), 1);
        let v0 = st.v0().unwrap();
        assert_eq!(j.apply(f, &v0), v0);
        let triv = trivial(&g);
        assert_eq!(triv.j_map().unwrap(), Mat::identity(1));
        let chi = regular_characters(&g)[0];
        assert_eq!(principal_series(&g, chi).u_invariants().dim(), 2);
        assert_eq!(principal_series(&g, chi).j_map().unwrap_err(), Error::DegenerateWeight);
    }
}

#[test]
fn spin_examples() {
    let g = gs(KTag::K0);
    let ps = principal_series(&g, Character::TRIVIAL);
    assert_eq!(ps.spin(&[constant_vector(&ps)]).dim(), 1);
    let all: Vec<Vec<Coef>> = Span::full(ps.dim()).basis().to_vec();
    assert_eq!(ps.spin(&all).dim(), ps.dim());
    assert!(is_irreducible(&steinberg(&g)).unwrap());
}

#[test]
fn length_two_regime() {
    let g = gs(KTag::K1);
    let t = g.tower();
    for chi in regular_characters(&g) {
        let ps = principal_series(&g, chi);
        let chain = composition_chain(&ps).unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!(chain[0].dim() + chain[1].dim(), 4);
        assert_eq!(chain[0].chi_of().unwrap(), t.char_s(chi));
        assert_eq!(chain[1].chi_of().unwrap(), chi);
        let mins = minimal_submodules(&ps).unwrap();
        assert!(is_nonsplit(&ps, &mins[0]));
        let sigma = ps_part(&g, chi, Part::Quotient).unwrap();
        let ss = weight_s(&sigma).unwrap();
        assert_eq!(ss.chi_of().unwrap(), t.char_s(sigma.chi_of().unwrap()));
        assert_eq!(ss.fingerprint(), ps_part(&g, chi, Part::Sub).unwrap().fingerprint());
    }
    assert!(ps_part(&gs(KTag::K0), regular_characters(&g)[0], Part::Sub).is_err());
}

#[test]
fn one_dimensional_characters() {
    for tag in KTag::ALL {
        let g = gs(tag);
        for k in 0..4 {
            let w = det_twist(&g, k);
            assert_eq!(w.chi_of().unwrap(), g.tower().det_character(k));
            assert!(!g.tower().is_regular(w.chi_of().unwrap()));
        }
    }
}

#[test]
fn invariants_agree_with_kernel_rank() {
    let g = gs(KTag::K1);
    for (_, w) in catalog(&g, true).unwrap() {
        let f = w.lam();
        let id = Mat::identity(w.dim());
        let n = g.unipotent_params().len();
        let ker = Mat::vstack(&(0..n).map(|i| w.act_unipotent_index(i).sub(f, &id)).collect::<Vec<_>>());
        assert_eq!(w.dim() - ker.rank(f), w.u_invariants().dim());
        assert_eq!(w.u_invariants().dim(), 1);
        assert!(is_irreducible(&w).unwrap());
    }
}
