//! Factorisations moving unipotent elements past each other.

use alloc::vec;
use alloc::vec::Vec;

use super::cosets::{coset_reps, Side};
use super::{GElem, Group, KTag, Subgroup};
use crate::error::{Error, Result};
use crate::laurent::Series;

/// `β·n(x,y) = n(ȳ⁻¹x, y⁻¹) · h(ȳ⁻¹) · n′(−ȳ⁻¹x̄, y⁻¹)` for `y ≠ 0`.
pub fn useful_identity(grp: &Group, x: &Series, y: &Series) -> Result<(GElem, GElem, GElem)> {
    let l = grp.lf();
    let yi = l.inv(y)?;
    let ybi = l.conj(&yi);
    let a = grp.n(&l.mul(&ybi, x), &yi)?;
    let h = grp.h(&ybi)?;
    let c = grp.nprime(&l.neg(&l.mul(&ybi, &l.conj(x))), &yi)?;
    Ok((a, h, c))
}

/// Parameters `(x, y)` of `n(x,y)`; `None` if `g` is not of that shape.
pub fn n_params(g: &GElem) -> (Series, Series) {
    (g.get(0, 1).clone(), g.get(0, 2).clone())
}

/// Parameters `(x, y)` of `n′(x,y)`.
pub fn nprime_params(g: &GElem) -> (Series, Series) {
    (g.get(1, 0).clone(), g.get(2, 0).clone())
}

/// Splits an upper-times-lower product `m = u h u′` off its last column.
fn split_udl(grp: &Group, m: &GElem) -> Result<(GElem, GElem, GElem)> {
    let l = grp.lf();
    let d3 = l.inv(m.get(2, 2))?;
    let y = l.mul(m.get(0, 2), &d3);
    let x = l.neg(&l.conj(&l.mul(m.get(1, 2), &d3)));
    let u = grp.n(&x, &y)?;
    let rest = grp.mul(&grp.inv(&u), m);
    Ok((u, diag_of(grp, &rest), rest))
}

fn diag_of(grp: &Group, g: &GElem) -> GElem {
    grp.diag(g.get(0, 0).clone(), g.get(1, 1).clone(), g.get(2, 2).clone())
}

/// `u′u = u₁ h u′₁` with `u₁ ∈ N_{n_K}`, `h ∈ H₁`, `u′₁ ∈ N′_{m_K}`.
///
/// `u₁ = n(x₂, y₂)` comes from the closed form
/// `x₂ = (x₁ − conj(y₁x))(1 + x x₁ + conj(y y₁))⁻¹`, `y₂ = y₁(1 + conj(x x₁) + y y₁)⁻¹`
/// where `u′ = n′(x,y)`, `u = n(x₁,y₁)`; it is cross-checked against the
/// factorisation read off the last column of `u′u`.
pub fn exchange(grp: &Group, tag: KTag, uprime: &GElem, u: &GElem) -> Result<(GElem, GElem, GElem)> {
    let (nk, mk, _) = super::iwahori_constants_static(tag);
    grp.require(uprime, Subgroup::NPrime(mk), "N′_{m_K}")?;
    grp.require(u, Subgroup::N(nk), "N_{n_K}")?;
    let l = grp.lf();
    let (x, y) = nprime_params(uprime);
    let (x1, y1) = n_params(u);
    let one = l.one();
    let den_x = l.add(&l.add(&one, &l.mul(&x, &x1)), &l.conj(&l.mul(&y, &y1)));
    let den_y = l.add(&l.add(&one, &l.conj(&l.mul(&x, &x1))), &l.mul(&y, &y1));
    let x2 = l.div(&l.sub(&x1, &l.conj(&l.mul(&y1, &x))), &den_x)?;
    let y2 = l.div(&y1, &den_y)?;
    let m = grp.mul(uprime, u);
    let (u1, h, rest) = split_udl(grp, &m)?;
    let prec = m.prec().min(l.precision()) - 4;
    if !(l.eq_to(&x2, u1.get(0, 1), prec)? && l.eq_to(&y2, u1.get(0, 2), prec)?) {
        return Err(Error::CrossCheckFailed("exchange lemma closed form".into()));
    }
    let u1prime = grp.mul(&grp.inv(&h), &rest);
    grp.require(&u1, Subgroup::N(nk), "N_{n_K}")?;
    grp.require(&h, Subgroup::H1, "H_1")?;
    grp.require(&u1prime, Subgroup::NPrime(mk), "N′_{m_K}")?;
    Ok((u1, h, u1prime))
}

/// `u u′ = u′₁ h u₁`, the mirror of [`exchange`], read off the first column.
pub fn exchange2(grp: &Group, tag: KTag, u: &GElem, uprime: &GElem) -> Result<(GElem, GElem, GElem)> {
    let (nk, mk, _) = super::iwahori_constants_static(tag);
    grp.require(u, Subgroup::N(nk), "N_{n_K}")?;
    grp.require(uprime, Subgroup::NPrime(mk), "N′_{m_K}")?;
    let l = grp.lf();
    let m = grp.mul(u, uprime);
    let d1 = l.inv(m.get(0, 0))?;
    let x = l.mul(m.get(1, 0), &d1);
    let y = l.mul(m.get(2, 0), &d1);
    let u1prime = grp.nprime(&x, &y)?;
    let rest = grp.mul(&grp.inv(&u1prime), &m);
    let h = diag_of(grp, &rest);
    let u1 = grp.mul(&grp.inv(&h), &rest);
    grp.require(&u1prime, Subgroup::NPrime(mk), "N′_{m_K}")?;
    grp.require(&h, Subgroup::H1, "H_1")?;
    grp.require(&u1, Subgroup::N(nk), "N_{n_K}")?;
    Ok((u1prime, h, u1))
}

/// The index of the coset of `g` among `reps` of `N_a/N_b` (or `N′_a/N′_b`).
pub fn coset_index(grp: &Group, side: Side, reps: &[GElem], g: &GElem, b: i32) -> Result<Option<usize>> {
    let sg = match side {
        Side::N => Subgroup::N(b),
        Side::NPrime => Subgroup::NPrime(b),
    };
    for (i, r) in reps.iter().enumerate() {
        if grp.member(&grp.mul(&grp.inv(r), g), sg)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// For fixed `u′ ∈ N′_{m_K}`, whether `u ↦ u₁` (from `u′u = u₁hu′₁`) permutes
/// `N_{n_K+l} ∖ N_{n_K+n} / N_{n_K+m}`.
pub fn exchange_permutes(grp: &Group, tag: KTag, uprime: &GElem, l: i32, n: i32, m: i32) -> Result<bool> {
    let (nk, _, _) = super::iwahori_constants_static(tag);
    let reps: Vec<GElem> = coset_reps(grp, Side::N, nk + l, nk + m)
        .into_iter()
        .map(|u| Ok((grp.member(&u, Subgroup::N(nk + n))?, u)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(inner, _)| !inner)
        .map(|(_, u)| u)
        .collect();
    let mut hit = vec![false; reps.len()];
    for u in &reps {
        let (u1, _, _) = exchange(grp, tag, uprime, u)?;
        match coset_index(grp, Side::N, &reps, &u1, nk + m)? {
            Some(i) if !hit[i] => hit[i] = true,
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// For fixed `u ∈ N_{n_K}`, whether `u′ ↦ u′₁` (from `uu′ = u′₁hu₁`) permutes
/// `N′_{m_K+l} / N′_{m_K+m}`.
pub fn exchange2_permutes(grp: &Group, tag: KTag, u: &GElem, l: i32, m: i32) -> Result<bool> {
    let (_, mk, _) = super::iwahori_constants_static(tag);
    let reps = coset_reps(grp, Side::NPrime, mk + l, mk + m);
    let mut hit = vec![false; reps.len()];
    for up in &reps {
        let (u1p, _, _) = exchange2(grp, tag, u, up)?;
        match coset_index(grp, Side::NPrime, &reps, &u1p, mk + m)? {
            Some(i) if !hit[i] => hit[i] = true,
            _ => return Ok(false),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::build_tower;
    use crate::laurent::{LocalField, DEFAULT_PRECISION};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn grp() -> Group {
        Group::new(LocalField::new(build_tower(3, 1).unwrap(), DEFAULT_PRECISION))
    }

    #[test]
    fn useful_identity_reassembles() {
        let g = grp();
        let l = g.lf();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let tz = l.trace_zero_unit();
        let mut cases = alloc::vec![(l.zero(), tz)];
        for _ in 0..30 {
            let (x, y) = g.random_xy(&mut rng, -3, 4);
            if !y.is_zero() {
                cases.push((x, y));
            }
        }
        for (x, y) in cases {
            let (a, h, c) = useful_identity(&g, &x, &y).unwrap();
            let lhs = g.mul(&g.beta(), &g.n(&x, &y).unwrap());
            assert!(g.eq_to(&lhs, &g.mul_all(&[&a, &h, &c]), DEFAULT_PRECISION - 8).unwrap());
        }
        assert_eq!(useful_identity(&g, &l.one(), &l.zero()).unwrap_err(), Error::InversionOfZero);
    }

    #[test]
    fn exchange_permutes_quotients() {
        let g = grp();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for tag in KTag::ALL {
            let (nk, mk, _) = super::super::iwahori_constants_static(tag);
            let up = g.random_nprime(&mut rng, mk, 3);
            let u = g.random_n(&mut rng, nk, 3);
            assert!(exchange_permutes(&g, tag, &up, 0, 2, 2).unwrap());
            assert!(exchange_permutes(&g, tag, &up, 0, 1, 2).unwrap());
            assert!(exchange2_permutes(&g, tag, &u, 1, 3).unwrap());
        }
    }

    #[test]
    fn exchange_roundtrips() {
        let g = grp();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for tag in KTag::ALL {
            let (nk, mk, _) = super::super::iwahori_constants_static(tag);
            for _ in 0..20 {
                let up = g.random_nprime(&mut rng, mk, 3);
                let u = g.random_n(&mut rng, nk, 3);
                let (u1, h, u1p) = exchange(&g, tag, &up, &u).unwrap();
                let p = DEFAULT_PRECISION - 8;
                assert!(g.eq_to(&g.mul(&up, &u), &g.mul_all(&[&u1, &h, &u1p]), p).unwrap());
                let (v1p, h2, v1) = exchange2(&g, tag, &u, &up).unwrap();
                assert!(g.eq_to(&g.mul(&u, &up), &g.mul_all(&[&v1p, &h2, &v1]), p).unwrap());
            }
            let id = g.identity();
            let u = g.random_n(&mut rng, nk, 3);
            let (u1, h, u1p) = exchange(&g, tag, &id, &u).unwrap();
            assert_eq!((u1, h, u1p), (u.clone(), id.clone(), id.clone()));
        }
    }
}
