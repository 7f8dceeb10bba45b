//! Truncated Laurent series over `k_E`, the scalars of `E = k_E((t))`.
//!
//! A [`Series`] is known modulo `t^prec`; `prec == EXACT` marks a finite
//! Laurent polynomial known exactly. Arithmetic propagates worst-case
//! precision, so every coefficient a value reports is certified.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{max, min};
use core::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fields::{FieldTower, Res};

/// Absolute precision of an exactly known series.
pub const EXACT: i32 = i32::MAX;

/// Default number of coefficient places carried by inverses.
pub const DEFAULT_PRECISION: i32 = 16;

fn sat_add(a: i32, b: i32) -> i32 {
    if a == EXACT || b == EXACT {
        EXACT
    } else {
        (a as i64 + b as i64).clamp(i32::MIN as i64 + 1, EXACT as i64 - 1) as i32
    }
}

/// `Σ coeffs[i] t^(val+i) + O(t^prec)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    val: i32,
    coeffs: Vec<Res>,
    prec: i32,
}

impl Series {
    /// Valuation of the leading term, `None` for (certified-to-`prec`) zero.
    pub fn valuation(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }
    pub fn prec(&self) -> i32 {
        self.prec
    }
    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }
    /// True when no nonzero coefficient is known (the zero of its precision).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn coeffs(&self) -> &[Res] {
        &self.coeffs
    }
    /// Coefficient of `t^k`; errors when `k` is beyond the known precision.
    pub fn coeff(&self, k: i32) -> Result<Res> {
        if k >= self.prec {
            return Err(Error::IndeterminateMembership);
        }
        if self.coeffs.is_empty() || k < self.val {
            return Ok(Res::ZERO);
        }
        Ok(self.coeffs.get((k - self.val) as usize).copied().unwrap_or(Res::ZERO))
    }

    /// Effective valuation used for precision bookkeeping (`prec` for zero).
    fn eff_val(&self) -> i32 {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            self.val
        }
    }

    fn normalize(mut self) -> Self {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.val = self.prec;
            }
            Some(i) => {
                self.coeffs.drain(..i);
                self.val += i as i32;
                if self.prec != EXACT {
                    let keep = (self.prec as i64 - self.val as i64).max(0) as usize;
                    self.coeffs.truncate(keep);
                }
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
                if self.coeffs.is_empty() {
                    self.val = self.prec;
                }
            }
        }
        self
    }

    /// Reduces the precision to `min(prec, p)`.
    pub fn with_prec(&self, p: i32) -> Series {
        Series { val: self.val, coeffs: self.coeffs.clone(), prec: min(self.prec, p) }.normalize()
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let e = self.val + i as i32;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·t")?,
                _ => write!(f, "{c}·t^{e}")?,
            }
        }
        if self.prec != EXACT {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "O(t^{})", self.prec)?;
        } else if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Arithmetic context: the residue tower plus the working precision used
/// when inverting non-monomial units.
#[derive(Clone, Debug)]
pub struct LocalField {
    tower: FieldTower,
    prec: i32,
}

impl LocalField {
    pub fn new(tower: FieldTower, prec: i32) -> Self {
        LocalField { tower, prec }
    }
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }
    pub fn precision(&self) -> i32 {
        self.prec
    }
    pub fn with_precision(&self, prec: i32) -> Self {
        LocalField { tower: self.tower.clone(), prec }
    }

    pub fn zero(&self) -> Series {
        Series { val: EXACT, coeffs: Vec::new(), prec: EXACT }
    }
    /// Zero known only modulo `t^prec`.
    pub fn zero_mod(&self, prec: i32) -> Series {
        Series { val: prec, coeffs: Vec::new(), prec }
    }
    pub fn one(&self) -> Series {
        self.constant(Res::ONE)
    }
    pub fn constant(&self, c: Res) -> Series {
        self.monomial(c, 0)
    }
    /// `c · t^k`, exact.
    pub fn monomial(&self, c: Res, k: i32) -> Series {
        Series { val: k, coeffs: vec![c], prec: EXACT }.normalize()
    }
    pub fn t_pow(&self, k: i32) -> Series {
        self.monomial(Res::ONE, k)
    }
    pub fn from_int(&self, n: i64) -> Series {
        self.constant(self.tower.res().from_int(n))
    }
    /// `Σ coeffs[i] t^(val+i) + O(t^prec)`.
    pub fn from_coeffs(&self, val: i32, coeffs: Vec<Res>, prec: i32) -> Series {
        Series { val, coeffs, prec }.normalize()
    }

    pub fn add(&self, a: &Series, b: &Series) -> Series {
        let prec = min(a.prec, b.prec);
        if a.is_zero() {
            return b.with_prec(prec);
        }
        if b.is_zero() {
            return a.with_prec(prec);
        }
        let r = self.tower.res();
        let lo = min(a.val, b.val);
        let hi_a = a.val as i64 + a.coeffs.len() as i64;
        let hi_b = b.val as i64 + b.coeffs.len() as i64;
        let hi = min(max(hi_a, hi_b), prec as i64);
        let len = (hi - lo as i64).max(0) as usize;
        let mut coeffs = vec![Res::ZERO; len];
        for (i, &c) in a.coeffs.iter().enumerate() {
            let k = (a.val - lo) as usize + i;
            if k < len {
                coeffs[k] = c;
            }
        }
        for (i, &c) in b.coeffs.iter().enumerate() {
            let k = (b.val - lo) as usize + i;
            if k < len {
                coeffs[k] = r.add(coeffs[k], c);
            }
        }
        Series { val: lo, coeffs, prec }.normalize()
    }

    pub fn neg(&self, a: &Series) -> Series {
        let r = self.tower.res();
        Series { val: a.val, coeffs: a.coeffs.iter().map(|&c| r.neg(c)).collect(), prec: a.prec }
    }

    pub fn sub(&self, a: &Series, b: &Series) -> Series {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Series, b: &Series) -> Series {
        let prec = min(sat_add(a.eff_val(), b.prec), sat_add(b.eff_val(), a.prec));
        if a.is_zero() || b.is_zero() {
            return self.zero_mod(prec);
        }
        let r = self.tower.res();
        let val = a.val + b.val;
        let full = a.coeffs.len() + b.coeffs.len() - 1;
        let len = if prec == EXACT { full } else { min(full as i64, (prec as i64 - val as i64).max(0)) as usize };
        let mut coeffs = vec![Res::ZERO; len];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if i >= len || x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = r.add(coeffs[i + j], r.mul(x, y));
            }
        }
        Series { val, coeffs, prec }.normalize()
    }

    /// Multiplies by the residue constant `c`.
    pub fn scale(&self, a: &Series, c: Res) -> Series {
        if c.is_zero() {
            return self.zero_mod(a.prec);
        }
        let r = self.tower.res();
        Series { val: a.val, coeffs: a.coeffs.iter().map(|&x| r.mul(x, c)).collect(), prec: a.prec }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, a: &Series, k: i32) -> Series {
        Series { val: sat_add(a.val, k), coeffs: a.coeffs.clone(), prec: sat_add(a.prec, k) }
    }

    /// Inverse; a unit part with more than one term is inverted to the
    /// working precision (or the input's relative precision, if smaller).
    pub fn inv(&self, a: &Series) -> Result<Series> {
        if a.is_zero() {
            return Err(Error::InversionOfZero);
        }
        let r = self.tower.res();
        let c0inv = r.inv(a.coeffs[0]).unwrap();
        if a.is_exact() && a.coeffs.len() == 1 {
            return Ok(self.monomial(c0inv, -a.val));
        }
        let rel = if a.is_exact() { self.prec } else { min(a.prec - a.val, self.prec) };
        if rel <= 0 {
            return Err(Error::InsufficientPrecision);
        }
        let n = rel as usize;
        let mut b = vec![Res::ZERO; n];
        b[0] = c0inv;
        for k in 1..n {
            let mut s = Res::ZERO;
            for i in 1..=min(k, a.coeffs.len() - 1) {
                s = r.add(s, r.mul(a.coeffs[i], b[k - i]));
            }
            b[k] = r.neg(r.mul(c0inv, s));
        }
        Ok(Series { val: -a.val, coeffs: b, prec: -a.val + rel }.normalize())
    }

    pub fn div(&self, a: &Series, b: &Series) -> Result<Series> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Galois conjugation, coefficientwise Frobenius (`t` is fixed).
    pub fn conj(&self, a: &Series) -> Series {
        Series { val: a.val, coeffs: a.coeffs.iter().map(|&c| self.tower.conj(c)).collect(), prec: a.prec }
    }

    /// Division by 2 (p is odd).
    pub fn half(&self, a: &Series) -> Series {
        let r = self.tower.res();
        self.scale(a, r.inv(r.from_int(2)).unwrap())
    }

    pub fn valuation(&self, a: &Series) -> Option<i32> {
        a.valuation()
    }

    /// Decides `a ∈ 𝔭^k`, failing when precision cannot certify the answer.
    pub fn in_ideal(&self, a: &Series, k: i32) -> Result<bool> {
        match a.valuation() {
            Some(v) => Ok(v >= k),
            None if a.prec >= k => Ok(true),
            None => Err(Error::IndeterminateMembership),
        }
    }

    /// True if `a − b` is zero to at least precision `k`.
    pub fn eq_to(&self, a: &Series, b: &Series, k: i32) -> Result<bool> {
        let d = self.sub(a, b);
        match d.valuation() {
            Some(v) if v < k => Ok(false),
            _ if d.prec >= k => Ok(true),
            _ => Err(Error::IndeterminateMembership),
        }
    }

    /// Residue of an integral element.
    pub fn residue(&self, a: &Series) -> Result<Res> {
        if !self.in_ideal(a, 0)? {
            return Err(Error::MembershipViolated("𝔬_E"));
        }
        a.coeff(0)
    }

    /// Splits `a` into the part below `t^k` (exact) and the rest.
    pub fn split_at(&self, a: &Series, k: i32) -> Result<(Series, Series)> {
        if a.prec < k {
            return Err(Error::IndeterminateMembership);
        }
        if a.is_zero() || a.val >= k {
            return Ok((self.zero(), a.clone()));
        }
        let cut = (k - a.val) as usize;
        let low_coeffs: Vec<Res> = a.coeffs.iter().take(cut).copied().collect();
        let high_coeffs: Vec<Res> = a.coeffs.iter().skip(cut).copied().collect();
        let low = Series { val: a.val, coeffs: low_coeffs, prec: EXACT }.normalize();
        let high = Series { val: k, coeffs: high_coeffs, prec: a.prec }.normalize();
        Ok((low, high))
    }

    /// A random series `Σ_{i<len} c_i t^(val+i)`, exact.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, val: i32, len: usize) -> Series {
        let order = self.tower.res().order();
        let coeffs = (0..len).map(|_| Res::from_code(rng.gen_range(0..order))).collect();
        self.from_coeffs(val, coeffs, EXACT)
    }

    /// A random unit `c_0 + c_1 t + …` with `c_0 ≠ 0`.
    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R, len: usize) -> Series {
        let order = self.tower.res().order();
        let mut coeffs: Vec<Res> = (0..len.max(1)).map(|_| Res::from_code(rng.gen_range(0..order))).collect();
        coeffs[0] = Res::from_code(rng.gen_range(1..order));
        self.from_coeffs(0, coeffs, EXACT)
    }

    /// A random trace-zero series, `𝔱 · (random series over k_F)`.
    pub fn random_trace_zero<R: Rng + ?Sized>(&self, rng: &mut R, val: i32, len: usize) -> Series {
        let base: Vec<Res> = self.tower.base_elements().collect();
        let tz = self.tower.trace_zero_unit();
        let r = self.tower.res();
        let coeffs = (0..len).map(|_| r.mul(tz, base[rng.gen_range(0..base.len())])).collect();
        self.from_coeffs(val, coeffs, EXACT)
    }

    /// The constant series `𝔱`.
    pub fn trace_zero_unit(&self) -> Series {
        self.constant(self.tower.trace_zero_unit())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::build_tower;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lf() -> LocalField {
        LocalField::new(build_tower(3, 1).unwrap(), DEFAULT_PRECISION)
    }

    #[test]
    fn valuations() {
        let k = lf();
        assert_eq!(k.t_pow(2).valuation(), Some(2));
        assert_eq!(k.one().valuation(), Some(0));
        let z = k.zero_mod(4);
        assert_eq!(z.valuation(), None);
        assert_eq!(k.in_ideal(&z, 6), Err(Error::IndeterminateMembership));
        assert_eq!(k.in_ideal(&z, 3), Ok(true));
    }

    #[test]
    fn inverse_times_self_is_one() {
        let k = lf();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let u = k.random_unit(&mut rng, 5);
            let a = k.shift(&u, 1);
            let prod = k.mul(&k.inv(&a).unwrap(), &a);
            assert!(k.eq_to(&prod, &k.one(), DEFAULT_PRECISION - 2).unwrap());
        }
        assert_eq!(k.inv(&k.zero()), Err(Error::InversionOfZero));
    }

    #[test]
    fn monomial_inverse_is_exact() {
        let k = lf();
        let a = k.monomial(Res::from_code(2), -3);
        let b = k.inv(&a).unwrap();
        assert!(b.is_exact());
        assert_eq!(k.mul(&a, &b), k.one());
    }

    #[test]
    fn trace_zero_unit_properties() {
        let k = lf();
        let t = k.trace_zero_unit();
        assert!(k.add(&t, &k.conj(&t)).is_zero());
        assert_eq!(t.valuation(), Some(0));
        assert_eq!(k.mul(&t, &t), k.from_int(-1));
    }

    #[test]
    fn precision_rules() {
        let k = lf();
        let a = k.from_coeffs(0, vec![Res::ONE, Res::ONE], 5);
        let b = k.from_coeffs(2, vec![Res::ONE], 7);
        assert_eq!(k.add(&a, &b).prec(), 5);
        // val_a + prec_b = 7, val_b + prec_a = 7
        assert_eq!(k.mul(&a, &b).prec(), 7);
        let (lo, hi) = k.split_at(&a, 1).unwrap();
        assert_eq!(lo, k.one());
        assert_eq!(hi.valuation(), Some(1));
        assert!(k.split_at(&a, 6).is_err());
    }
}
