//! Lattices in `E³` and the cosets `G/K` they parametrise.
//!
//! `K = G ∩ Stab(M)` with `M = diag(t^a)·𝔬_E³`, so `gK ↦ gM` is injective and
//! the lower Hermite normal form of `g·diag(t^a)` is a canonical key for `gK`.

use alloc::vec::Vec;

use super::{GElem, Group, KTag, Subgroup};
use crate::error::{Error, Result};
use crate::laurent::{LocalField, Series};

/// Canonical key of a coset `gK`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CosetKey {
    exps: [i32; 3],
    low: [(i32, Vec<u32>); 3],
}

impl CosetKey {
    /// Exponents of the diagonal of the normal form.
    pub fn exps(&self) -> [i32; 3] {
        self.exps
    }
}

/// Lower Hermite normal form: diagonal `t^{e_i}`, entry `(i,j)` (`i > j`)
/// an exact Laurent polynomial with exponents below `e_i`.
#[derive(Clone, Debug)]
pub struct LowerHnf {
    pub exps: [i32; 3],
    /// Entries `(1,0)`, `(2,0)`, `(2,1)`.
    pub low: [Series; 3],
}

fn col_axpy(l: &LocalField, m: &mut [[Series; 3]; 3], dst: usize, c: &Series, src: usize) {
    for row in m.iter_mut() {
        let v = l.sub(&row[dst], &l.mul(c, &row[src]));
        row[dst] = v;
    }
}

/// Lower Hermite normal form of the lattice spanned by the columns of `a`.
pub fn lower_hnf(l: &LocalField, a: &GElem) -> Result<LowerHnf> {
    let mut m: [[Series; 3]; 3] = core::array::from_fn(|i| core::array::from_fn(|j| a.get(i, j).clone()));
    for r in 0..3 {
        // pivot: minimal valuation in row r among columns r..3
        let mut best: Option<(usize, i32)> = None;
        for c in r..3 {
            if let Some(v) = m[r][c].valuation() {
                if best.map_or(true, |(_, bv)| v < bv) {
                    best = Some((c, v));
                }
            }
        }
        let (pc, _) = best.ok_or(Error::IndeterminateMembership)?;
        if pc != r {
            for row in m.iter_mut() {
                row.swap(pc, r);
            }
        }
        let pinv = l.inv(&m[r][r])?;
        for c in r + 1..3 {
            if !m[r][c].is_zero() {
                let q = l.mul(&m[r][c], &pinv);
                col_axpy(l, &mut m, c, &q, r);
            }
            if !m[r][c].is_zero() && m[r][c].valuation().is_some() {
                return Err(Error::InsufficientPrecision);
            }
        }
    }
    let mut exps = [0i32; 3];
    for i in 0..3 {
        let e = m[i][i].valuation().ok_or(Error::IndeterminateMembership)?;
        exps[i] = e;
        // scale column i so that the diagonal is exactly t^e
        let u = l.div(&l.t_pow(e), &m[i][i])?;
        for row in m.iter_mut() {
            let v = l.mul(&row[i], &u);
            row[i] = v;
        }
        m[i][i] = l.t_pow(e);
    }
    // reduce below-diagonal entries modulo t^{e_i}
    for i in 1..3 {
        for j in 0..i {
            let (_, high) = l.split_at(&m[i][j], exps[i])?;
            if !high.is_zero() {
                let c = l.shift(&high, -exps[i]);
                col_axpy(l, &mut m, j, &c, i);
            }
        }
    }
    let mut low: [Series; 3] = [l.zero(), l.zero(), l.zero()];
    for (slot, (i, j)) in [(1usize, 0usize), (2, 0), (2, 1)].into_iter().enumerate() {
        let (lo, _) = l.split_at(&m[i][j], exps[i])?;
        low[slot] = lo;
    }
    Ok(LowerHnf { exps, low })
}

fn lattice_basis(grp: &Group, tag: KTag, g: &GElem) -> GElem {
    let l = grp.lf();
    let a = tag.lattice_exponents();
    grp.mul(g, &grp.diag(l.t_pow(a[0]), l.t_pow(a[1]), l.t_pow(a[2])))
}

/// The key of `gK`; `g K = g′ K` iff the keys agree.
pub fn coset_key(grp: &Group, tag: KTag, g: &GElem) -> Result<CosetKey> {
    let h = lower_hnf(grp.lf(), &lattice_basis(grp, tag, g))?;
    let enc = |s: &Series| (s.valuation().unwrap_or(0), s.coeffs().iter().map(|c| c.code()).collect());
    Ok(CosetKey { exps: h.exps, low: [enc(&h.low[0]), enc(&h.low[1]), enc(&h.low[2])] })
}

/// For `y ∈ K α^{-n} I_{1,K}`, returns `k ∈ K` and `i ∈ I_{1,K}` with
/// `y = k α^{-n} i`; `None` when `y` lies outside that double coset.
pub fn iwahori_orbit(grp: &Group, tag: KTag, y: &GElem, n: i32) -> Result<Option<(GElem, GElem)>> {
    if n == 0 {
        return Ok(if grp.member(y, Subgroup::K(tag))? { Some((y.clone(), grp.identity())) } else { None });
    }
    let (nk, mk, _) = super::iwahori_constants_static(tag);
    let l = grp.lf();
    let a = tag.lattice_exponents();
    let m = n.abs();
    let p = grp.reversal();
    let yinv_d = lattice_basis(grp, tag, &grp.inv(y));
    // n < 0 is the mirror image under the reversal `P`
    let (basis, expect) = if n > 0 {
        (yinv_d, [a[0] - m, a[1], a[2] + m])
    } else {
        (grp.mul_all(&[&p, &yinv_d, &p]), [a[2] - m, a[1], a[0] + m])
    };
    let h = lower_hnf(l, &basis)?;
    if h.exps != expect {
        return Ok(None);
    }
    let x = l.shift(&h.low[0], -expect[0]);
    let z_low = l.shift(&h.low[1], -expect[0]);
    let r = l.neg(&l.add(&l.mul(&x, &l.conj(&x)), &l.add(&z_low, &l.conj(&z_low))));
    if !l.in_ideal(&r, expect[2] - expect[0])? {
        return Ok(None);
    }
    let z = l.add(&z_low, &l.half(&r));
    let i = if n > 0 {
        let i = grp.nprime(&x, &z)?;
        if !grp.member(&i, Subgroup::NPrime(mk))? {
            return Ok(None);
        }
        i
    } else {
        let i = grp.n(&l.neg(&l.conj(&x)), &z)?;
        if !grp.member(&i, Subgroup::N(nk))? {
            return Ok(None);
        }
        i
    };
    let k = grp.mul_all(&[y, &i, &grp.alpha_pow(n)]);
    if !grp.member(&k, Subgroup::K(tag))? {
        return Ok(None);
    }
    Ok(Some((k, grp.inv(&i))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::build_tower;
    use crate::laurent::DEFAULT_PRECISION;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn grp() -> Group {
        Group::new(LocalField::new(build_tower(3, 1).unwrap(), DEFAULT_PRECISION))
    }

    #[test]
    fn k_is_the_lattice_stabiliser() {
        let g = grp();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for tag in KTag::ALL {
            let base = coset_key(&g, tag, &g.identity()).unwrap();
            for _ in 0..30 {
                let k = g.random_k(&mut rng, tag, 3);
                assert_eq!(coset_key(&g, tag, &k).unwrap(), base);
                let x = g.random_k(&mut rng, tag, 3);
                let xa = g.mul(&x, &g.alpha_pow(1));
                assert_eq!(coset_key(&g, tag, &g.mul(&xa, &k)).unwrap(), coset_key(&g, tag, &xa).unwrap());
            }
            assert_ne!(coset_key(&g, tag, &g.alpha_pow(1)).unwrap(), base);
        }
    }

    #[test]
    fn orbit_recovers_decomposition() {
        let g = grp();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for tag in KTag::ALL {
            for n in [-3, -2, -1, 0, 1, 2, 3] {
                for _ in 0..8 {
                    let k = g.random_k(&mut rng, tag, 2);
                    let i = g.random_i1(&mut rng, tag, 2);
                    let y = g.mul_all(&[&k, &g.alpha_pow(-n), &i]);
                    let (k2, i2) = iwahori_orbit(&g, tag, &y, n).unwrap().expect("in support");
                    assert!(g.member(&i2, Subgroup::ProPIwahori(tag)).unwrap());
                    let back = g.mul_all(&[&k2, &g.alpha_pow(-n), &i2]);
                    assert!(g.eq_to(&back, &y, 4).unwrap());
                    for m in [n - 1, n + 1] {
                        assert!(iwahori_orbit(&g, tag, &y, m).unwrap().is_none(), "{tag} {n} {m}");
                    }
                }
            }
        }
    }
}
