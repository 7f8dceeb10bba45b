//! The residue fields `k_F ⊂ k_E` and the coefficient field `Λ`.
//!
//! Elements are stored as integers whose base-`p` digits are the coefficients
//! of a polynomial modulo a primitive polynomial, so the zero element is `0`
//! and addition is digitwise. Multiplication goes through discrete-log tables.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::marker::PhantomData;

use crate::error::{Error, Result};

/// Largest field order for which full tables are built.
pub const MAX_FIELD_ORDER: u32 = 1024;

pub trait FieldTag: Copy + Clone + Eq + Ord + core::hash::Hash + fmt::Debug + Default {
    const NAME: &'static str;
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ResidueTag;
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct CoefTag;

impl FieldTag for ResidueTag {
    const NAME: &'static str = "k_E";
}
impl FieldTag for CoefTag {
    const NAME: &'static str = "Λ";
}

/// An element of a finite field, tagged by the field it lives in.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elt<T>(u32, PhantomData<T>);

impl<T> Elt<T> {
    pub const ZERO: Self = Elt(0, PhantomData);
    pub const ONE: Self = Elt(1, PhantomData);

    pub const fn from_code(code: u32) -> Self {
        Elt(code, PhantomData)
    }
    pub const fn code(self) -> u32 {
        self.0
    }
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl<T: FieldTag> fmt::Debug for Elt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", T::NAME, self.0)
    }
}

impl<T: FieldTag> fmt::Display for Elt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Residue-field element (`k_E`, with `k_F` the Frobenius-fixed subfield).
pub type Res = Elt<ResidueTag>;
/// Coefficient-field element (`Λ`), where representation values live.
pub type Coef = Elt<CoefTag>;

/// `GF(p^degree)` with full addition and log/antilog tables.
#[derive(Clone, Debug)]
pub struct GaloisField<T> {
    p: u32,
    degree: u32,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u32>,
    neg: Vec<u32>,
    _tag: PhantomData<T>,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn digits(mut code: u32, p: u32, n: u32) -> Vec<u32> {
    let mut out = vec![0; n as usize];
    for d in out.iter_mut() {
        *d = code % p;
        code /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

impl<T: FieldTag> GaloisField<T> {
    /// Builds `GF(p^degree)` from the first primitive polynomial in
    /// lexicographic order of its coefficient encoding.
    pub fn new(p: u32, degree: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        let order64 = (p as u64).pow(degree);
        if order64 > MAX_FIELD_ORDER as u64 {
            return Err(Error::TowerTooLarge { order: order64 });
        }
        let order = order64 as u32;
        let n = degree as usize;
        let mult_order = order - 1;
        // Lower coefficients of a monic modulus x^n + c_{n-1} x^{n-1} + ... + c_0.
        let mut found = None;
        for enc in 0..order {
            let c = digits(enc, p, degree);
            if c[0] == 0 {
                continue;
            }
            let mut table = vec![0u32; mult_order as usize];
            let mut cur = vec![0u32; n];
            cur[0] = 1;
            let mut ok = true;
            for k in 0..mult_order {
                let code = undigits(&cur, p);
                if k > 0 && code == 1 {
                    ok = false;
                    break;
                }
                table[k as usize] = code;
                // cur <- cur * x mod modulus
                let top = cur[n - 1];
                for i in (1..n).rev() {
                    cur[i] = cur[i - 1];
                }
                cur[0] = 0;
                for i in 0..n {
                    cur[i] = (cur[i] + p - (top * c[i]) % p) % p;
                }
            }
            if ok && undigits(&cur, p) == 1 {
                found = Some(table);
                break;
            }
        }
        let exp = found.expect("every finite field has a primitive polynomial");
        let mut log = vec![u32::MAX; order as usize];
        for (k, &code) in exp.iter().enumerate() {
            log[code as usize] = k as u32;
        }
        let mut add = vec![0u32; (order * order) as usize];
        let mut neg = vec![0u32; order as usize];
        for a in 0..order {
            let da = digits(a, p, degree);
            let na: Vec<u32> = da.iter().map(|&d| (p - d) % p).collect();
            neg[a as usize] = undigits(&na, p);
            for b in 0..order {
                let db = digits(b, p, degree);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * order + b) as usize] = undigits(&s, p);
            }
        }
        Ok(GaloisField { p, degree, order, exp, log, add, neg, _tag: PhantomData })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn order(&self) -> u32 {
        self.order
    }

    #[inline]
    pub fn add(&self, a: Elt<T>, b: Elt<T>) -> Elt<T> {
        Elt::from_code(self.add[(a.0 * self.order + b.0) as usize])
    }
    #[inline]
    pub fn neg(&self, a: Elt<T>) -> Elt<T> {
        Elt::from_code(self.neg[a.0 as usize])
    }
    #[inline]
    pub fn sub(&self, a: Elt<T>, b: Elt<T>) -> Elt<T> {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: Elt<T>, b: Elt<T>) -> Elt<T> {
        if a.0 == 0 || b.0 == 0 {
            return Elt::ZERO;
        }
        let m = self.order - 1;
        let k = (self.log[a.0 as usize] + self.log[b.0 as usize]) % m;
        Elt::from_code(self.exp[k as usize])
    }
    pub fn inv(&self, a: Elt<T>) -> Option<Elt<T>> {
        if a.0 == 0 {
            return None;
        }
        let m = self.order - 1;
        let k = (m - self.log[a.0 as usize]) % m;
        Some(Elt::from_code(self.exp[k as usize]))
    }
    pub fn div(&self, a: Elt<T>, b: Elt<T>) -> Option<Elt<T>> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }
    /// `a^e` for a signed exponent; `0^0 = 1`, negative powers of zero are `None`.
    pub fn pow(&self, a: Elt<T>, e: i64) -> Option<Elt<T>> {
        if a.0 == 0 {
            return match e {
                0 => Some(Elt::ONE),
                e if e > 0 => Some(Elt::ZERO),
                _ => None,
            };
        }
        let m = (self.order - 1) as i64;
        let k = (self.log[a.0 as usize] as i64 * e).rem_euclid(m);
        Some(Elt::from_code(self.exp[k as usize]))
    }
    /// Image of an integer under `Z → GF(p)`.
    pub fn from_int(&self, n: i64) -> Elt<T> {
        Elt::from_code(n.rem_euclid(self.p as i64) as u32)
    }
    pub fn primitive(&self) -> Elt<T> {
        Elt::from_code(self.exp[1 % self.exp.len()])
    }
    /// Discrete logarithm to the base [`Self::primitive`].
    pub fn log(&self, a: Elt<T>) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }
    pub fn exp(&self, k: i64) -> Elt<T> {
        let m = (self.order - 1) as i64;
        Elt::from_code(self.exp[k.rem_euclid(m) as usize])
    }
    pub fn elements(&self) -> impl Iterator<Item = Elt<T>> + '_ {
        (0..self.order).map(Elt::from_code)
    }
    pub fn sum<I: IntoIterator<Item = Elt<T>>>(&self, it: I) -> Elt<T> {
        it.into_iter().fold(Elt::ZERO, |acc, x| self.add(acc, x))
    }
}

/// A multiplicative character of the finite torus `H₀/H₁ ≅ k_E^× × U(1)`.
///
/// The torus element `diag(a, b, ā⁻¹)` (`b` of norm one) is sent to
/// `ψ(a)^a_exp · ψ(b)^b_exp`, with `ψ: k_E^× → Λ^×` the embedding fixed by
/// the tower. `a_exp` is taken modulo `q²−1` and `b_exp` modulo `q+1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Character {
    pub a_exp: u32,
    pub b_exp: u32,
}

impl Character {
    pub const TRIVIAL: Character = Character { a_exp: 0, b_exp: 0 };

    pub fn is_trivial(&self) -> bool {
        *self == Self::TRIVIAL
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ({},{})", self.a_exp, self.b_exp)
    }
}

/// The tower `k_F ⊂ k_E` together with the coefficient field `Λ`.
#[derive(Clone, Debug)]
pub struct FieldTower {
    p: u32,
    f: u32,
    q: u32,
    m: u32,
    res: GaloisField<ResidueTag>,
    coef: GaloisField<CoefTag>,
    frob: Vec<u32>,
    trace_zero: Res,
    psi_step: u32,
}

impl FieldTower {
    /// Builds the tower for residue cardinality `q = p^f`, choosing the
    /// smallest `m` with `(q²−1) | (p^m−1)`.
    pub fn new(p: u32, f: u32) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if f == 0 {
            return Err(Error::NotApplicable("f must be positive"));
        }
        let q = (p as u64).pow(f);
        let q2m1 = q * q - 1;
        let mut m = 1u32;
        while ((p as u64).pow(m) - 1) % q2m1 != 0 {
            m += 1;
        }
        let res = GaloisField::<ResidueTag>::new(p, 2 * f)?;
        let coef = GaloisField::<CoefTag>::new(p, m)?;
        let q = q as u32;
        let frob: Vec<u32> = res.elements().map(|x| res.pow(x, q as i64).unwrap().code()).collect();
        let trace_zero = res
            .elements()
            .find(|&x| !x.is_zero() && res.add(x, Elt::from_code(frob[x.code() as usize])).is_zero())
            .expect("trace-zero units exist for odd q");
        let psi_step = ((p as u64).pow(m) - 1) as u32 / (q * q - 1);
        Ok(FieldTower { p, f, q, m, res, coef, frob, trace_zero, psi_step })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn f(&self) -> u32 {
        self.f
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Degree of `Λ` over the prime field.
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn res(&self) -> &GaloisField<ResidueTag> {
        &self.res
    }
    pub fn coef(&self) -> &GaloisField<CoefTag> {
        &self.coef
    }

    /// The residual Galois conjugation `x ↦ x^q`.
    #[inline]
    pub fn conj(&self, a: Res) -> Res {
        Elt::from_code(self.frob[a.code() as usize])
    }
    pub fn is_base(&self, a: Res) -> bool {
        self.conj(a) == a
    }
    pub fn norm(&self, a: Res) -> Res {
        self.res.mul(a, self.conj(a))
    }
    pub fn trace(&self, a: Res) -> Res {
        self.res.add(a, self.conj(a))
    }
    /// The fixed nonzero trace-zero element `𝔱`.
    pub fn trace_zero_unit(&self) -> Res {
        self.trace_zero
    }
    pub fn base_elements(&self) -> impl Iterator<Item = Res> + '_ {
        self.res.elements().filter(|&x| self.is_base(x))
    }
    pub fn norm_one_elements(&self) -> impl Iterator<Item = Res> + '_ {
        self.res.elements().filter(|&x| self.norm(x) == Res::ONE)
    }
    /// A generator of `k_E^×`.
    pub fn torus_gen_a(&self) -> Res {
        self.res.primitive()
    }
    /// A generator of the norm-one subgroup of `k_E^×`.
    pub fn torus_gen_b(&self) -> Res {
        self.res.exp(self.q as i64 - 1)
    }
    pub fn order_a(&self) -> u32 {
        self.q * self.q - 1
    }
    pub fn order_b(&self) -> u32 {
        self.q + 1
    }

    /// `ψ(a)^e` for `a ∈ k_E^×`.
    pub fn psi_pow(&self, a: Res, e: i64) -> Coef {
        let l = self.res.log(a).expect("ψ is only defined on units") as i64;
        self.coef.exp(l * e * self.psi_step as i64)
    }

    /// Evaluates `χ` on the torus class with residues `(a, b)`.
    pub fn eval_char(&self, chi: Character, a: Res, b: Res) -> Coef {
        self.coef.mul(self.psi_pow(a, chi.a_exp as i64), self.psi_pow(b, chi.b_exp as i64))
    }

    /// `χ(h(t))` for `h(t) = diag(t, −t̄t⁻¹, t̄⁻¹)`.
    pub fn eval_char_h(&self, chi: Character, t: Res) -> Coef {
        let r = &self.res;
        let mid = r.neg(r.div(self.conj(t), t).expect("t is a unit"));
        self.eval_char(chi, t, mid)
    }

    pub fn character(&self, a_exp: i64, b_exp: i64) -> Character {
        Character {
            a_exp: a_exp.rem_euclid(self.order_a() as i64) as u32,
            b_exp: b_exp.rem_euclid(self.order_b() as i64) as u32,
        }
    }

    /// All characters of `H₀/H₁`, ordered by exponent pair.
    pub fn characters_of_torus(&self) -> Vec<Character> {
        let mut out = Vec::with_capacity((self.order_a() * self.order_b()) as usize);
        for a in 0..self.order_a() {
            for b in 0..self.order_b() {
                out.push(Character { a_exp: a, b_exp: b });
            }
        }
        out
    }

    /// `χ^s`: conjugating `diag(a, b, ā⁻¹)` by `β_K` gives `diag(ā⁻¹, b, a)`,
    /// so the `a`-exponent is multiplied by `−q`.
    pub fn char_s(&self, chi: Character) -> Character {
        self.character(-(self.q as i64) * chi.a_exp as i64, chi.b_exp as i64)
    }

    pub fn is_regular(&self, chi: Character) -> bool {
        self.char_s(chi) != chi
    }

    pub fn char_mul(&self, a: Character, b: Character) -> Character {
        self.character(a.a_exp as i64 + b.a_exp as i64, a.b_exp as i64 + b.b_exp as i64)
    }

    /// `η ∘ det` for `η = ψ^k` on the norm-one group: `det diag(a,b,ā⁻¹) = a^{1−q} b`.
    pub fn det_character(&self, k: i64) -> Character {
        self.character(k * (1 - self.q as i64), k)
    }

    /// Returns `k` with `χ = ψ^k ∘ det`, if `χ` factors through the determinant.
    pub fn det_exponent(&self, chi: Character) -> Option<u32> {
        let k = chi.b_exp as i64;
        (self.det_character(k) == chi).then_some(k as u32)
    }
}

/// Builds the tower for `q = p^f`; see [`FieldTower::new`].
pub fn build_tower(p: u32, f: u32) -> Result<FieldTower> {
    FieldTower::new(p, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_at_three() {
        let t = build_tower(3, 1).unwrap();
        assert_eq!((t.q(), t.res().order(), t.m()), (3, 9, 2));
        // minimal m by a direct divisibility scan
        let m = (1..).find(|&m| (3u64.pow(m) - 1) % 8 == 0).unwrap();
        assert_eq!(m, t.m());
        let base: Vec<_> = t.base_elements().collect();
        assert_eq!(base.len(), 3);
        for x in base {
            assert_eq!(t.res().pow(x, 3).unwrap(), x);
        }
    }

    #[test]
    fn even_prime_rejected() {
        assert_eq!(build_tower(2, 1).unwrap_err(), Error::InvalidPrime(2));
        assert!(build_tower(9, 1).is_err());
    }

    #[test]
    fn trace_zero_squares_to_minus_one_at_three() {
        let t = build_tower(3, 1).unwrap();
        let r = t.res();
        // brute force: all nonzero solutions of x + x^3 = 0 in k_E
        let sols: Vec<Res> = r
            .elements()
            .filter(|&x| !x.is_zero() && r.add(x, r.pow(x, 3).unwrap()).is_zero())
            .collect();
        assert_eq!(sols.len(), 2);
        let tz = t.trace_zero_unit();
        assert!(sols.contains(&tz));
        assert_eq!(r.mul(tz, tz), r.from_int(-1));
        assert_eq!(t.conj(tz), r.neg(tz));
    }

    #[test]
    fn conj_fixes_exactly_base_field() {
        for (p, f) in [(3, 1), (5, 1), (3, 2)] {
            let t = build_tower(p, f).unwrap();
            let fixed = t.res().elements().filter(|&x| t.conj(x) == x).count() as u32;
            assert_eq!(fixed, t.q());
            for x in t.res().elements() {
                assert_eq!(t.conj(t.conj(x)), x);
            }
        }
    }

    #[test]
    fn character_list_closed_under_s_and_product() {
        let t = build_tower(3, 1).unwrap();
        let chars = t.characters_of_torus();
        assert_eq!(chars.len(), 32);
        assert!(chars.contains(&Character::TRIVIAL));
        for &c in &chars {
            assert!(chars.contains(&t.char_s(c)));
            assert_eq!(t.char_s(t.char_s(c)), c);
            assert_eq!(t.eval_char(c, Res::ONE, Res::ONE), Coef::ONE);
        }
        assert!(!t.is_regular(Character::TRIVIAL));
        assert!(chars.iter().any(|&c| t.is_regular(c)));
        for k in 0..4 {
            assert!(!t.is_regular(t.det_character(k)));
        }
    }

    #[test]
    fn characters_are_multiplicative() {
        let t = build_tower(3, 1).unwrap();
        let r = t.res();
        let c = t.coef();
        let ones: Vec<Res> = t.norm_one_elements().collect();
        assert_eq!(ones.len(), 4);
        for chi in t.characters_of_torus() {
            for a in r.elements().filter(|x| !x.is_zero()) {
                for &b in &ones {
                    let lhs = t.eval_char(chi, r.mul(a, t.torus_gen_a()), r.mul(b, t.torus_gen_b()));
                    let rhs = c.mul(
                        t.eval_char(chi, a, b),
                        t.eval_char(chi, t.torus_gen_a(), t.torus_gen_b()),
                    );
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
