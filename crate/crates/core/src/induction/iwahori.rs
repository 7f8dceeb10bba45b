//! `I_{1,K}`-invariants as coefficient vectors on the basis `f_n`.
//!
//! `f_n` is supported on `K α^{-n} I_{1,K}` with `f_n(kα^{-n}i) = σ(k) w_n`.
//! Operators are evaluated pointwise and read back on the window of double
//! cosets the output can reach.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::{InducedFn, Induction};
use crate::error::{Error, Result};
use crate::fields::Coef;
use crate::group::cosets::{coset_reps, Side};
use crate::group::lattice::iwahori_orbit;
use crate::group::GElem;

/// `Σ c_n f_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IwahoriVec {
    coeffs: BTreeMap<i32, Coef>,
}

impl IwahoriVec {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn basis(n: i32) -> Self {
        let mut v = Self::zero();
        v.coeffs.insert(n, Coef::ONE);
        v
    }
    pub fn get(&self, n: i32) -> Coef {
        self.coeffs.get(&n).copied().unwrap_or(Coef::ZERO)
    }
    pub fn set(&mut self, n: i32, c: Coef) {
        if c.is_zero() {
            self.coeffs.remove(&n);
        } else {
            self.coeffs.insert(n, c);
        }
    }
    pub fn iter(&self) -> impl Iterator<Item = (i32, Coef)> + '_ {
        self.coeffs.iter().map(|(&n, &c)| (n, c))
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Largest `|n|` with nonzero coefficient.
    pub fn reach(&self) -> i32 {
        self.coeffs.keys().map(|n| n.abs()).max().unwrap_or(0)
    }
    pub fn add(&self, ind: &Induction, other: &Self) -> Self {
        let lam = ind.lam();
        let mut out = self.clone();
        for (n, c) in other.iter() {
            out.set(n, lam.add(out.get(n), c));
        }
        out
    }
    pub fn scale(&self, ind: &Induction, c: Coef) -> Self {
        let lam = ind.lam();
        let mut out = Self::zero();
        for (n, d) in self.iter() {
            out.set(n, lam.mul(c, d));
        }
        out
    }
    pub fn sub(&self, ind: &Induction, other: &Self) -> Self {
        self.add(ind, &other.scale(ind, ind.lam().neg(Coef::ONE)))
    }
}

impl core::fmt::Display for IwahoriVec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (n, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c == Coef::ONE {
                write!(f, "f[{n}]")?;
            } else {
                write!(f, "{c}·f[{n}]")?;
            }
        }
        Ok(())
    }
}

/// Operators on `I_{1,K}`-invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    T,
    TSigma,
    SK,
    SMinus,
}

impl Induction {
    /// `f_n(y)`.
    pub fn f_value(&self, n: i32, y: &GElem) -> Result<Vec<Coef>> {
        match iwahori_orbit(&self.grp, self.tag, y, n)? {
            None => Ok(vec![Coef::ZERO; self.dim()]),
            Some((k, _)) => Ok(self.sigma_of(&k)?.apply(self.lam(), &self.basis_value(n)?)),
        }
    }

    /// `(Σ c_n f_n)(y)`.
    pub fn eval_vec(&self, v: &IwahoriVec, y: &GElem) -> Result<Vec<Coef>> {
        let lam = self.lam();
        let mut out = vec![Coef::ZERO; self.dim()];
        for (n, c) in v.iter() {
            if n.abs() > self.n_max + 1 {
                return Err(Error::PrecisionBudgetExceeded { n, n_max: self.n_max });
            }
            for (a, b) in out.iter_mut().zip(self.f_value(n, y)?) {
                *a = lam.add(*a, lam.mul(c, b));
            }
        }
        Ok(out)
    }

    /// `(Op(r·F))(y)` with `(r·F)(x) = F(xr)`; `r = 1` when `None`.
    pub fn apply_at(&self, op: Op, v: &IwahoriVec, right: Option<&GElem>, y: &GElem) -> Result<Vec<Coef>> {
        let g = &self.grp;
        let lam = self.lam();
        let at = |x: GElem| -> Result<Vec<Coef>> {
            match right {
                None => self.eval_vec(v, &x),
                Some(r) => self.eval_vec(v, &g.mul(&x, r)),
            }
        };
        let mut out = vec![Coef::ZERO; self.dim()];
        let mut acc = |w: Vec<Coef>| {
            for (a, b) in out.iter_mut().zip(w) {
                *a = lam.add(*a, b);
            }
        };
        match op {
            Op::T | Op::TSigma => {
                for (hinv, phi) in &self.phi_terms {
                    let val = at(g.mul(hinv, y))?;
                    acc(phi.apply(lam, &val));
                }
                if op == Op::TSigma && self.t_sigma_shift()? {
                    acc(at(y.clone())?);
                }
            }
            Op::SK => {
                for u in coset_reps(g, Side::N, self.nk, self.nk + 1) {
                    acc(at(g.mul_all(&[y, &u, &self.beta_k]))?);
                }
            }
            Op::SMinus => {
                let ainv = g.alpha_pow(-1);
                for u in coset_reps(g, Side::NPrime, self.mk, self.mk + 1) {
                    acc(at(g.mul_all(&[y, &u, &self.beta_k, &ainv]))?);
                }
            }
        }
        Ok(out)
    }

    /// `c` with `w = c·w_m`, or `NotInSpan(m)`.
    fn coefficient_at(&self, m: i32, w: &[Coef]) -> Result<Coef> {
        let lam = self.lam();
        let base = self.basis_value(m)?;
        let piv = base.iter().position(|c| !c.is_zero()).ok_or(Error::DegenerateWeight)?;
        let c = lam.div(w[piv], base[piv]).expect("nonzero pivot");
        if w.iter().zip(&base).all(|(&a, &b)| a == lam.mul(c, b)) {
            Ok(c)
        } else {
            Err(Error::NotInSpan(m))
        }
    }

    /// `Op(v)` on the basis, read off at `α^{-m}` for `|m| ≤ reach + 2`.
    /// The input is bounded by `n_max`; the output may reach one step further.
    pub fn apply_vec(&self, op: Op, v: &IwahoriVec) -> Result<IwahoriVec> {
        if v.reach() > self.n_max {
            return Err(Error::PrecisionBudgetExceeded { n: v.reach(), n_max: self.n_max });
        }
        let reach = v.reach() + 2;
        let mut out = IwahoriVec::zero();
        for m in -reach..=reach {
            let w = self.apply_at(op, v, None, &self.grp.alpha_pow(-m))?;
            out.set(m, self.coefficient_at(m, &w)?);
        }
        Ok(out)
    }

    /// `Op(f_n)`.
    pub fn apply_basis(&self, op: Op, n: i32) -> Result<IwahoriVec> {
        self.apply_vec(op, &IwahoriVec::basis(n))
    }

    /// `k α^{-m} k′` for random `k, k′ ∈ K`; these meet every double coset.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R, m: i32) -> GElem {
        let g = &self.grp;
        let k = g.random_k(rng, self.tag, 3);
        let k2 = g.random_k(rng, self.tag, 3);
        g.mul_all(&[&k, &g.alpha_pow(-m), &k2])
    }

    /// Compares `Op(v)` with `expected` at `count` random points per `m`
    /// in the window.
    pub fn spot_check<R: Rng + ?Sized>(&self, rng: &mut R, op: Op, v: &IwahoriVec, expected: &IwahoriVec, count: usize) -> Result<bool> {
        let reach = v.reach().max(expected.reach()) + 1;
        for m in 0..=reach {
            for _ in 0..count {
                let y = self.random_point(rng, m);
                if self.apply_at(op, v, None, &y)? != self.eval_vec(expected, &y)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `Op(v)(y i) = Op(v)(y)` for random `y` and `i ∈ I_{1,K}`.
    pub fn output_is_i1_invariant<R: Rng + ?Sized>(&self, rng: &mut R, op: Op, v: &IwahoriVec, count: usize) -> Result<bool> {
        let reach = v.reach() + 1;
        for m in 0..=reach {
            for _ in 0..count {
                let y = self.random_point(rng, m);
                let i = self.grp.random_i1(rng, self.tag, 3);
                if self.apply_at(op, v, None, &self.grp.mul(&y, &i))? != self.apply_at(op, v, None, &y)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The explicit sum of generators for `v`.
    pub fn to_explicit(&self, v: &IwahoriVec) -> Result<InducedFn> {
        let mut out = self.zero();
        for (n, c) in v.iter() {
            out = self.add(&out, &self.scale(&self.f_basis(n)?, c))?;
        }
        Ok(out)
    }

    /// Agreement of an explicit function with `v` at the given points.
    pub fn agrees_at(&self, f: &InducedFn, v: &IwahoriVec, points: &[GElem]) -> Result<bool> {
        for y in points {
            if self.eval(f, y)? != self.eval_vec(v, y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
