//! The finite groups `L_{q³}`, `L_q` and coset representatives for the
//! filtrations `N_a/N_b`, `N′_a/N′_b`.

use alloc::vec;
use alloc::vec::Vec;

use super::{GElem, Group};
use crate::fields::{FieldTower, Res};
use crate::laurent::Series;

/// `(x, t)` with `x x̄ + t + t̄ = 0`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LElem {
    pub x: Res,
    pub t: Res,
}

impl LElem {
    pub const IDENTITY: LElem = LElem { x: Res::ZERO, t: Res::ZERO };

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

/// Which of the two finite groups.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LSize {
    /// `L_{q³}`: all pairs.
    Cube,
    /// `L_q`: pairs with `x = 0`.
    Linear,
}

impl LSize {
    /// The group of order `q^e` (`e ∈ {1, 3}`).
    pub fn of_exponent(e: u32) -> LSize {
        if e == 3 {
            LSize::Cube
        } else {
            LSize::Linear
        }
    }
}

pub fn l_relation_holds(tower: &FieldTower, e: &LElem) -> bool {
    let r = tower.res();
    r.add(tower.norm(e.x), tower.trace(e.t)).is_zero()
}

/// `(x,t)·(x′,t′) = (x+x′, t+t′−x′x̄)`.
pub fn l_mul(tower: &FieldTower, a: &LElem, b: &LElem) -> LElem {
    let r = tower.res();
    LElem { x: r.add(a.x, b.x), t: r.sub(r.add(a.t, b.t), r.mul(b.x, tower.conj(a.x))) }
}

/// Every element in lexicographic order of encodings.
pub fn l_elements(tower: &FieldTower, size: LSize) -> Vec<LElem> {
    let r = tower.res();
    let half = r.inv(r.from_int(2)).unwrap();
    let tz = tower.trace_zero_unit();
    let base: Vec<Res> = tower.base_elements().collect();
    let xs: Vec<Res> = match size {
        LSize::Cube => r.elements().collect(),
        LSize::Linear => vec![Res::ZERO],
    };
    let mut out = Vec::with_capacity(xs.len() * base.len());
    for &x in &xs {
        let t0 = r.neg(r.mul(half, tower.norm(x)));
        for &c in &base {
            out.push(LElem { x, t: r.add(t0, r.mul(tz, c)) });
        }
    }
    out.sort();
    out
}

/// `L^× = L ∖ {(0,0)}`.
pub fn l_nonidentity(tower: &FieldTower, size: LSize) -> Vec<LElem> {
    l_elements(tower, size).into_iter().filter(|e| !e.is_identity()).collect()
}

/// Which unipotent radical.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    N,
    NPrime,
}

/// The parameters `(x, y)` of the representatives of `N_a/N_b`:
/// `x = Σ x_j t^j` over `⌈a/2⌉ ≤ j < ⌈b/2⌉` and
/// `y = −x x̄/2 + Σ z_k t^k` over `a ≤ k < b` with `z_k` trace zero.
pub fn coset_params(grp: &Group, a: i32, b: i32) -> Vec<(Series, Series)> {
    let l = grp.lf();
    let tower = l.tower();
    let r = tower.res();
    let ceil2 = |k: i32| k.div_euclid(2) + k.rem_euclid(2);
    let (xa, xb) = (ceil2(a), ceil2(b));
    let nx = (xb - xa).max(0) as usize;
    let nz = (b - a).max(0) as usize;
    let elems: Vec<Res> = r.elements().collect();
    let tz = tower.trace_zero_unit();
    let zs: Vec<Res> = tower.base_elements().map(|c| r.mul(tz, c)).collect();
    let mut zs_sorted = zs.clone();
    zs_sorted.sort();

    let mut xs: Vec<Vec<Res>> = vec![Vec::new()];
    for _ in 0..nx {
        xs = xs.into_iter().flat_map(|p| elems.iter().map(move |&c| [p.as_slice(), &[c]].concat())).collect();
    }
    let mut zvecs: Vec<Vec<Res>> = vec![Vec::new()];
    for _ in 0..nz {
        zvecs = zvecs
            .into_iter()
            .flat_map(|p| zs_sorted.iter().map(move |&c| [p.as_slice(), &[c]].concat()))
            .collect();
    }
    let mut out = Vec::with_capacity(xs.len() * zvecs.len());
    for xc in &xs {
        let x = l.from_coeffs(xa, xc.clone(), crate::laurent::EXACT);
        let y0 = l.neg(&l.half(&l.mul(&x, &l.conj(&x))));
        for zc in &zvecs {
            let z = l.from_coeffs(a, zc.clone(), crate::laurent::EXACT);
            out.push((x.clone(), l.add(&y0, &z)));
        }
    }
    out
}

/// Representatives of `N_a/N_b` (or `N′_a/N′_b`), deterministic order.
pub fn coset_reps(grp: &Group, side: Side, a: i32, b: i32) -> Vec<GElem> {
    coset_params(grp, a, b)
        .into_iter()
        .map(|(x, y)| match side {
            Side::N => grp.n(&x, &y),
            Side::NPrime => grp.nprime(&x, &y),
        })
        .collect::<crate::Result<Vec<_>>>()
        .expect("representatives satisfy the defining relation")
}

/// The image of `n(x,y) ∈ N_k` in the layer group `N_k/N_{k+1}`, as an element
/// of `L_{q³}` (even `k`) or `L_q` (odd `k`).
pub fn layer_image(grp: &Group, x: &Series, y: &Series, k: i32) -> crate::Result<LElem> {
    let yk = y.coeff(k)?;
    if k.rem_euclid(2) == 0 {
        Ok(LElem { x: x.coeff(k / 2)?, t: yk })
    } else {
        let _ = grp;
        Ok(LElem { x: Res::ZERO, t: yk })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::build_tower;
    use crate::group::Subgroup;
    use crate::laurent::{LocalField, DEFAULT_PRECISION};

    fn grp() -> Group {
        Group::new(LocalField::new(build_tower(3, 1).unwrap(), DEFAULT_PRECISION))
    }

    #[test]
    fn l_orders() {
        let t = build_tower(3, 1).unwrap();
        let cube = l_elements(&t, LSize::Cube);
        assert_eq!(cube.len(), 27);
        assert_eq!(l_elements(&t, LSize::Linear).len(), 3);
        assert!(cube.iter().all(|e| l_relation_holds(&t, e)));
        for a in &cube {
            for b in &cube {
                assert!(l_relation_holds(&t, &l_mul(&t, a, b)));
            }
        }
        // every non-identity element has t ≠ 0
        assert!(l_nonidentity(&t, LSize::Cube).iter().all(|e| !e.t.is_zero()));
    }

    #[test]
    fn layer_counts() {
        let g = grp();
        assert_eq!(coset_reps(&g, Side::N, 0, 1).len(), 27);
        assert_eq!(coset_reps(&g, Side::N, -1, 0).len(), 3);
        assert_eq!(coset_reps(&g, Side::NPrime, 1, 2).len(), 3);
        assert_eq!(coset_reps(&g, Side::NPrime, 2, 3).len(), 27);
        assert_eq!(coset_reps(&g, Side::N, 0, 2).len(), 81);
    }

    #[test]
    fn reps_are_disjoint() {
        let g = grp();
        for (side, a, b) in [(Side::N, 0, 2), (Side::N, -1, 1), (Side::NPrime, 1, 3)] {
            let reps = coset_reps(&g, side, a, b);
            let sub = match side {
                Side::N => Subgroup::N(b),
                Side::NPrime => Subgroup::NPrime(b),
            };
            for i in 0..reps.len() {
                for j in 0..i {
                    let d = g.mul(&g.inv(&reps[i]), &reps[j]);
                    assert!(!g.member(&d, sub).unwrap(), "{side:?} {a} {b}: {i} ~ {j}");
                }
            }
        }
    }
}
