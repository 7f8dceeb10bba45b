//! The finite reductive quotient `Γ_K = K/K¹`, its Borel `𝔹` and unipotent
//! radical `𝕌`, and lifts back to `K`.
//!
//! Both quotients are realised as 3×3 matrices over `k_E` preserving the
//! antidiagonal form; for `K₁` the image sits in the block pattern
//! `[[a,0,b],[0,s,0],[c,0,d]]`.

use alloc::vec::Vec;
use core::array;

use super::cosets::{l_elements, LElem, LSize};
use super::{GElem, Group, KTag, Subgroup};
use crate::error::{Error, Result};
use crate::fields::{FieldTower, Res};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GammaElem(pub [Res; 9]);

impl GammaElem {
    pub fn get(&self, i: usize, j: usize) -> Res {
        self.0[3 * i + j]
    }
}

/// The torus element `diag(a, b, ā⁻¹)` by its residues.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TorusPart {
    pub a: Res,
    pub b: Res,
}

/// `γ = u₁ · diag(a, b, ā⁻¹) · (w₀ u₂)`, the last factor absent on `𝔹`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Bruhat {
    pub u1: LElem,
    pub torus: TorusPart,
    pub u2: Option<LElem>,
}

/// `Γ_K` for a fixed tower.
#[derive(Clone, Debug)]
pub struct GammaGroup {
    tower: FieldTower,
    tag: KTag,
    unip: Vec<LElem>,
}

impl GammaGroup {
    pub fn new(tower: FieldTower, tag: KTag) -> Self {
        let size = match tag {
            KTag::K0 => LSize::Cube,
            KTag::K1 => LSize::Linear,
        };
        let unip = l_elements(&tower, size);
        GammaGroup { tower, tag, unip }
    }
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }
    pub fn tag(&self) -> KTag {
        self.tag
    }

    pub fn identity(&self) -> GammaElem {
        self.diag(Res::ONE, Res::ONE, Res::ONE)
    }

    fn diag(&self, a: Res, b: Res, c: Res) -> GammaElem {
        let z = Res::ZERO;
        GammaElem([a, z, z, z, b, z, z, z, c])
    }

    pub fn w0(&self) -> GammaElem {
        let (z, o) = (Res::ZERO, Res::ONE);
        GammaElem([z, z, o, z, o, z, o, z, z])
    }

    pub fn torus(&self, t: TorusPart) -> GammaElem {
        let r = self.tower.res();
        self.diag(t.a, t.b, self.tower.conj(r.inv(t.a).expect("torus entries are units")))
    }

    /// Generator `diag(g, 1, ḡ⁻¹)` of the `a`-factor of the torus.
    pub fn torus_gen_a(&self) -> GammaElem {
        self.torus(TorusPart { a: self.tower.torus_gen_a(), b: Res::ONE })
    }
    /// Generator `diag(1, ζ, 1)` of the norm-one factor.
    pub fn torus_gen_b(&self) -> GammaElem {
        self.torus(TorusPart { a: Res::ONE, b: self.tower.torus_gen_b() })
    }

    /// The elements of `𝕌`, sorted; `K₀`: `(x,t) ∈ L_{q³}`, `K₁`: `(0,c) ∈ L_q`.
    pub fn unipotent_params(&self) -> &[LElem] {
        &self.unip
    }

    pub fn unipotent_index(&self, u: &LElem) -> Option<usize> {
        self.unip.binary_search(u).ok()
    }

    /// The matrix of the unipotent element with parameters `u`.
    pub fn unipotent(&self, u: &LElem) -> GammaElem {
        let r = self.tower.res();
        let (z, o) = (Res::ZERO, Res::ONE);
        GammaElem([o, u.x, u.t, z, o, r.neg(self.tower.conj(u.x)), z, z, o])
    }

    pub fn mul(&self, a: &GammaElem, b: &GammaElem) -> GammaElem {
        let r = self.tower.res();
        GammaElem(array::from_fn(|idx| {
            let (i, j) = (idx / 3, idx % 3);
            r.sum((0..3).map(|l| r.mul(a.get(i, l), b.get(l, j))))
        }))
    }

    /// Inverse via `β ḡᵀ β`.
    pub fn inv(&self, g: &GammaElem) -> GammaElem {
        GammaElem(array::from_fn(|idx| self.tower.conj(g.get(2 - idx % 3, 2 - idx / 3))))
    }

    pub fn is_unitary(&self, g: &GammaElem) -> bool {
        self.mul(g, &self.inv(g)) == self.identity()
    }

    pub fn is_identity(&self, g: &GammaElem) -> bool {
        *g == self.identity()
    }

    pub fn in_borel(&self, g: &GammaElem) -> bool {
        g.get(1, 0).is_zero() && g.get(2, 0).is_zero() && g.get(2, 1).is_zero()
    }

    pub fn in_unipotent(&self, g: &GammaElem) -> bool {
        self.in_borel(g) && (0..3).all(|i| g.get(i, i) == Res::ONE)
    }

    /// Whether `g` has the shape of an element of `Γ_K` for this tag.
    pub fn in_group(&self, g: &GammaElem) -> bool {
        let shape = match self.tag {
            KTag::K0 => true,
            KTag::K1 => [(0, 1), (1, 0), (1, 2), (2, 1)].iter().all(|&(i, j)| g.get(i, j).is_zero()),
        };
        shape && self.is_unitary(g)
    }

    /// Bruhat decomposition `γ = u₁ t` or `γ = u₁ t w₀ u₂`.
    pub fn bruhat(&self, g: &GammaElem) -> Bruhat {
        if self.in_borel(g) {
            return self.split_borel(g, None);
        }
        let w0 = self.w0();
        for u2 in &self.unip {
            let m = self.mul(&self.mul(g, &self.inv(&self.unipotent(u2))), &w0);
            if self.in_borel(&m) {
                return self.split_borel(&m, Some(*u2));
            }
        }
        unreachable!("Γ_K is the union of its two Bruhat cells")
    }

    fn split_borel(&self, b: &GammaElem, u2: Option<LElem>) -> Bruhat {
        let r = self.tower.res();
        let (a, mid) = (b.get(0, 0), b.get(1, 1));
        let minv = r.inv(mid).expect("unit diagonal");
        // u₁ = b · diag⁻¹; its first row is (1, b₁₂/b₂₂, b₁₃·ā)
        let u1 = LElem { x: r.mul(b.get(0, 1), minv), t: r.mul(b.get(0, 2), self.tower.conj(a)) };
        Bruhat { u1, torus: TorusPart { a, b: mid }, u2 }
    }

    pub fn from_bruhat(&self, w: &Bruhat) -> GammaElem {
        let mut g = self.mul(&self.unipotent(&w.u1), &self.torus(w.torus));
        if let Some(u2) = &w.u2 {
            g = self.mul(&self.mul(&g, &self.w0()), &self.unipotent(u2));
        }
        g
    }

    /// All elements, Borel cell first.
    pub fn elements(&self) -> Vec<GammaElem> {
        let t = &self.tower;
        let a_all: Vec<Res> = t.res().elements().filter(|x| !x.is_zero()).collect();
        let b_all: Vec<Res> = t.norm_one_elements().collect();
        let mut borel = Vec::new();
        for u in &self.unip {
            for &a in &a_all {
                for &b in &b_all {
                    borel.push(self.mul(&self.unipotent(u), &self.torus(TorusPart { a, b })));
                }
            }
        }
        let mut out = borel.clone();
        for b in &borel {
            let bw = self.mul(b, &self.w0());
            for u in &self.unip {
                out.push(self.mul(&bw, &self.unipotent(u)));
            }
        }
        out
    }

    /// `|Γ_K|` from the Bruhat decomposition.
    pub fn order(&self) -> usize {
        let t = &self.tower;
        let torus = (t.order_a() * t.order_b()) as usize;
        torus * self.unip.len() * (1 + self.unip.len())
    }
}

/// Reduction `K → Γ_K`.
pub fn reduce_to_gamma(grp: &Group, tag: KTag, g: &GElem) -> Result<GammaElem> {
    if !grp.member(g, Subgroup::K(tag))? {
        return Err(Error::MembershipViolated("K"));
    }
    let l = grp.lf();
    let res = |i: usize, j: usize, shift: i32| l.residue(&l.shift(g.get(i, j), shift));
    let z = Res::ZERO;
    Ok(match tag {
        KTag::K0 => {
            let mut e = [z; 9];
            for (idx, v) in e.iter_mut().enumerate() {
                *v = res(idx / 3, idx % 3, 0)?;
            }
            GammaElem(e)
        }
        KTag::K1 => GammaElem([res(0, 0, 0)?, z, res(0, 2, 1)?, z, res(1, 1, 0)?, z, res(2, 0, -1)?, z, res(2, 2, 0)?]),
    })
}

/// Lift of a unipotent parameter to `K`: constants for `K₀`, `n(0, c t⁻¹)` for `K₁`.
pub fn lift_unipotent(grp: &Group, tag: KTag, u: &LElem) -> GElem {
    let l = grp.lf();
    let r = match tag {
        KTag::K0 => grp.n(&l.constant(u.x), &l.constant(u.t)),
        KTag::K1 => grp.n(&l.zero(), &l.monomial(u.t, -1)),
    };
    r.expect("lifted parameters satisfy the relation")
}

pub fn lift_torus(grp: &Group, t: TorusPart) -> GElem {
    let l = grp.lf();
    grp.torus(&l.constant(t.a), &l.constant(t.b)).expect("unit")
}

/// A lift of `γ` to `K`, built from its Bruhat word with `w₀ ↦ β_K`.
pub fn lift(grp: &Group, gs: &GammaGroup, g: &GammaElem) -> GElem {
    let w = gs.bruhat(g);
    let tag = gs.tag();
    let mut out = grp.mul(&lift_unipotent(grp, tag, &w.u1), &lift_torus(grp, w.torus));
    if let Some(u2) = &w.u2 {
        out = grp.mul_all(&[&out, &grp.beta_k(tag), &lift_unipotent(grp, tag, u2)]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::build_tower;
    use crate::laurent::{LocalField, DEFAULT_PRECISION};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(tag: KTag) -> (Group, GammaGroup) {
        let t = build_tower(3, 1).unwrap();
        (Group::new(LocalField::new(t.clone(), DEFAULT_PRECISION)), GammaGroup::new(t, tag))
    }

    #[test]
    fn orders() {
        let (_, g0) = setup(KTag::K0);
        let (_, g1) = setup(KTag::K1);
        assert_eq!(g0.order(), 24192);
        assert_eq!(g1.order(), 384);
        let els = g1.elements();
        assert_eq!(els.len(), 384);
        assert!(els.iter().all(|e| g1.in_group(e)));
        let mut sorted = els.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 384);
    }

    #[test]
    fn bruhat_roundtrip() {
        for tag in KTag::ALL {
            let (_, gs) = setup(tag);
            let els = gs.elements();
            for e in els.iter().step_by(7) {
                assert_eq!(gs.from_bruhat(&gs.bruhat(e)), *e);
            }
        }
    }

    #[test]
    fn reduction_is_a_homomorphism_with_pro_p_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for tag in KTag::ALL {
            let (grp, gs) = setup(tag);
            for _ in 0..40 {
                let a = grp.random_k(&mut rng, tag, 3);
                let b = grp.random_k(&mut rng, tag, 3);
                let ra = reduce_to_gamma(&grp, tag, &a).unwrap();
                let rb = reduce_to_gamma(&grp, tag, &b).unwrap();
                let rab = reduce_to_gamma(&grp, tag, &grp.mul(&a, &b)).unwrap();
                assert_eq!(gs.mul(&ra, &rb), rab);
                assert!(gs.in_group(&ra));
            }
            for _ in 0..20 {
                let k = grp.random_k(&mut rng, tag, 3);
                let g = reduce_to_gamma(&grp, tag, &k).unwrap();
                let back = lift(&grp, &gs, &g);
                let d = grp.mul(&grp.inv(&back), &k);
                assert!(grp.member(&d, Subgroup::KOne(tag)).unwrap());
                // kernel elements are unipotent modulo 𝔭
                assert!((0..3).all(|i| grp.lf().residue(d.get(i, i)).unwrap() == Res::ONE));
            }
        }
    }

    #[test]
    fn beta_k_reduces_to_w0() {
        for tag in KTag::ALL {
            let (grp, gs) = setup(tag);
            assert_eq!(reduce_to_gamma(&grp, tag, &grp.beta_k(tag)).unwrap(), gs.w0());
        }
    }
}
