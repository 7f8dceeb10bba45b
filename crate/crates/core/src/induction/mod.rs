//! Compact induction `ind_K^G σ`, the Hecke operator `T` and the averaging
//! operators `S_K`, `S_−`.
//!
//! Functions satisfy `F(kg) = σ(k)F(g)` and `G` acts by `(g·F)(x) = F(xg)`.
//! Two representations are used: explicit finite sums of generators
//! [`InducedFn`], and coefficient vectors on the basis `f_n` of
//! `I_{1,K}`-invariants ([`iwahori::IwahoriVec`]) whose operators are computed by
//! evaluating at points.

pub mod constants;
pub mod iwahori;
pub mod spin;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fields::Coef;
use crate::group::cosets::{coset_reps, Side};
use crate::group::gamma::reduce_to_gamma;
use crate::group::lattice::{coset_key, CosetKey};
use crate::group::{iwahori_constants_static, GElem, Group, KTag, Subgroup};
use crate::linalg::{Lambda, Mat};
use crate::weights::Weight;

/// Default bound on `|n|` for basis functions.
pub const DEFAULT_N_MAX: i32 = 5;

/// A finite sum of generators `[g, v]`, one per coset `gK`.
#[derive(Clone, Debug, Default)]
pub struct InducedFn {
    terms: BTreeMap<CosetKey, (GElem, Vec<Coef>)>,
}

impl InducedFn {
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn generators(&self) -> impl Iterator<Item = (&GElem, &Vec<Coef>)> {
        self.terms.values().map(|(g, v)| (g, v))
    }
    pub fn keys(&self) -> impl Iterator<Item = &CosetKey> {
        self.terms.keys()
    }
}

/// `ind_K^G σ` for fixed `K` and `σ`, with cached structure data.
#[derive(Clone, Debug)]
pub struct Induction {
    grp: Group,
    tag: KTag,
    sigma: Weight,
    nk: i32,
    mk: i32,
    tk: u32,
    beta_k: GElem,
    v0: Vec<Coef>,
    j: Mat,
    /// `T[Id, v] = Σ [h, A_h v]`.
    t_terms: Vec<(GElem, Mat)>,
    /// `(h⁻¹, φ(h))` over the same `h`, with `(TF)(y) = Σ φ(h) F(h⁻¹y)`.
    phi_terms: Vec<(GElem, Mat)>,
    n_max: i32,
}

impl Induction {
    pub fn new(grp: Group, sigma: Weight) -> Result<Self> {
        let tag = sigma.tag();
        let (nk, mk, tk) = iwahori_constants_static(tag);
        let v0 = sigma.v0()?;
        let j = sigma.j_map()?;
        let beta_k = grp.beta_k(tag);
        let mut me = Induction { grp, tag, sigma, nk, mk, tk, beta_k, v0, j, t_terms: Vec::new(), phi_terms: Vec::new(), n_max: DEFAULT_N_MAX };
        me.t_terms = me.build_t_terms()?;
        me.phi_terms = me.build_phi_terms()?;
        Ok(me)
    }

    pub fn with_n_max(mut self, n_max: i32) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn group(&self) -> &Group {
        &self.grp
    }
    pub fn tag(&self) -> KTag {
        self.tag
    }
    pub fn sigma(&self) -> &Weight {
        &self.sigma
    }
    pub fn lam(&self) -> &Lambda {
        self.sigma.lam()
    }
    pub fn constants_nmt(&self) -> (i32, i32, u32) {
        (self.nk, self.mk, self.tk)
    }
    pub fn beta_k(&self) -> &GElem {
        &self.beta_k
    }
    pub fn v0(&self) -> &[Coef] {
        &self.v0
    }
    pub fn j(&self) -> &Mat {
        &self.j
    }
    pub fn n_max(&self) -> i32 {
        self.n_max
    }
    pub fn dim(&self) -> usize {
        self.sigma.dim()
    }

    /// `σ(k)` for `k ∈ K`.
    pub fn sigma_of(&self, k: &GElem) -> Result<Mat> {
        Ok(self.sigma.act(&reduce_to_gamma(&self.grp, self.tag, k)?))
    }

    fn build_t_terms(&self) -> Result<Vec<(GElem, Mat)>> {
        let g = &self.grp;
        let f = self.lam();
        let ainv = g.alpha_pow(-1);
        let mut out = Vec::new();
        for u in coset_reps(g, Side::N, self.nk, self.nk + 2) {
            let a = self.j.mul(f, &self.sigma_of(&g.inv(&u))?);
            out.push((g.mul(&u, &ainv), a));
        }
        let jb = self.j.mul(f, &self.sigma_of(&self.beta_k)?);
        for u in coset_reps(g, Side::N, self.nk + 1, self.nk + 2) {
            out.push((g.mul_all(&[&self.beta_k, &u, &ainv]), jb.clone()));
        }
        Ok(out)
    }

    /// `φ(kα⁻¹) = σ(kβ_K) j σ(β_K)`, from `α⁻¹ = β_K α β_K` and `φ(α) = j`.
    fn build_phi_terms(&self) -> Result<Vec<(GElem, Mat)>> {
        let g = &self.grp;
        let f = self.lam();
        let a = g.alpha_pow(1);
        let sb = self.sigma_of(&self.beta_k)?;
        let jsb = self.j.mul(f, &sb);
        let mut out = Vec::new();
        for (h, _) in &self.t_terms {
            let k = g.mul(h, &a);
            let phi = self.sigma_of(&g.mul(&k, &self.beta_k))?.mul(f, &jsb);
            out.push((g.inv(h), phi));
        }
        Ok(out)
    }

    pub fn phi_terms(&self) -> &[(GElem, Mat)] {
        &self.phi_terms
    }

    /// The terms `(h, A_h)` of `T[Id, v] = Σ [h, A_h v]`.
    pub fn t_terms(&self) -> &[(GElem, Mat)] {
        &self.t_terms
    }

    pub fn zero(&self) -> InducedFn {
        InducedFn::default()
    }

    /// Adds `[g, v]`, merging with a generator of the same coset via
    /// `[g₀k, v] = [g₀, σ(k)v]`.
    pub fn add_generator(&self, f: &mut InducedFn, g: &GElem, v: &[Coef]) -> Result<()> {
        if v.iter().all(|c| c.is_zero()) {
            return Ok(());
        }
        let key = coset_key(&self.grp, self.tag, g)?;
        let lam = self.lam();
        match f.terms.get_mut(&key) {
            None => {
                f.terms.insert(key, (g.clone(), v.to_vec()));
            }
            Some((g0, v0)) => {
                let k = self.grp.mul(&self.grp.inv(g0), g);
                let w = self.sigma_of(&k)?.apply(lam, v);
                for (a, b) in v0.iter_mut().zip(&w) {
                    *a = lam.add(*a, *b);
                }
                if v0.iter().all(|c| c.is_zero()) {
                    f.terms.remove(&key);
                }
            }
        }
        Ok(())
    }

    pub fn generator(&self, g: &GElem, v: &[Coef]) -> Result<InducedFn> {
        let mut f = self.zero();
        self.add_generator(&mut f, g, v)?;
        Ok(f)
    }

    pub fn from_generators<'a, I: IntoIterator<Item = (&'a GElem, &'a Vec<Coef>)>>(&self, gens: I) -> Result<InducedFn> {
        let mut f = self.zero();
        for (g, v) in gens {
            self.add_generator(&mut f, g, v)?;
        }
        Ok(f)
    }

    pub fn add(&self, a: &InducedFn, b: &InducedFn) -> Result<InducedFn> {
        let mut out = a.clone();
        for (g, v) in b.generators() {
            self.add_generator(&mut out, g, v)?;
        }
        Ok(out)
    }

    pub fn scale(&self, a: &InducedFn, c: Coef) -> InducedFn {
        let lam = self.lam();
        if c.is_zero() {
            return self.zero();
        }
        let mut out = a.clone();
        for (_, v) in out.terms.values_mut() {
            for x in v.iter_mut() {
                *x = lam.mul(*x, c);
            }
        }
        out
    }

    pub fn sub(&self, a: &InducedFn, b: &InducedFn) -> Result<InducedFn> {
        let minus = self.lam().neg(Coef::ONE);
        self.add(a, &self.scale(b, minus))
    }

    pub fn equal(&self, a: &InducedFn, b: &InducedFn) -> Result<bool> {
        Ok(self.sub(a, b)?.is_zero())
    }

    /// `g·F`, i.e. `[g₀, v] ↦ [g g₀, v]`.
    pub fn g_act(&self, g: &GElem, f: &InducedFn) -> Result<InducedFn> {
        let mut out = self.zero();
        for (g0, v) in f.generators() {
            self.add_generator(&mut out, &self.grp.mul(g, g0), v)?;
        }
        Ok(out)
    }

    /// `F(y)`: the generator of the coset `y⁻¹K` contributes `σ(y g₀)v₀`.
    pub fn eval(&self, f: &InducedFn, y: &GElem) -> Result<Vec<Coef>> {
        let key = coset_key(&self.grp, self.tag, &self.grp.inv(y))?;
        match f.terms.get(&key) {
            None => Ok(alloc::vec![Coef::ZERO; self.dim()]),
            Some((g0, v0)) => Ok(self.sigma_of(&self.grp.mul(y, g0))?.apply(self.lam(), v0)),
        }
    }

    /// `T F = Σ_{[g,v]} g·T[Id, v]`.
    pub fn op_t(&self, f: &InducedFn) -> Result<InducedFn> {
        let lam = self.lam();
        let mut out = self.zero();
        for (g, v) in f.generators() {
            for (h, a) in &self.t_terms {
                self.add_generator(&mut out, &self.grp.mul(g, h), &a.apply(lam, v))?;
            }
        }
        Ok(out)
    }

    /// Whether `T_σ = T + 1` (one-dimensional `σ` whose character factors
    /// through `det`) rather than `T`.
    pub fn t_sigma_shift(&self) -> Result<bool> {
        let chi = self.sigma.chi_of()?;
        Ok(self.sigma.dim() == 1 && self.sigma.tower().det_exponent(chi).is_some())
    }

    pub fn op_t_sigma(&self, f: &InducedFn) -> Result<InducedFn> {
        let t = self.op_t(f)?;
        if self.t_sigma_shift()? {
            self.add(&t, f)
        } else {
            Ok(t)
        }
    }

    /// `S_K F = Σ_{u ∈ N_{n_K}/N_{n_K+1}} uβ_K·F`; needs `N′_{m_K}`-invariant input.
    pub fn op_sk(&self, f: &InducedFn) -> Result<InducedFn> {
        if !self.is_invariant_under(f, Side::NPrime, self.mk)? {
            return Err(Error::InvarianceViolated("N′_{m_K}"));
        }
        let mut out = self.zero();
        for u in coset_reps(&self.grp, Side::N, self.nk, self.nk + 1) {
            let t = self.g_act(&self.grp.mul(&u, &self.beta_k), f)?;
            out = self.add(&out, &t)?;
        }
        Ok(out)
    }

    /// `S_− F = Σ_{u′ ∈ N′_{m_K}/N′_{m_K+1}} u′β_Kα⁻¹·F`; needs `N_{n_K}`-invariant input.
    pub fn op_sminus(&self, f: &InducedFn) -> Result<InducedFn> {
        if !self.is_invariant_under(f, Side::N, self.nk)? {
            return Err(Error::InvarianceViolated("N_{n_K}"));
        }
        let g = &self.grp;
        let mut out = self.zero();
        for u in coset_reps(g, Side::NPrime, self.mk, self.mk + 1) {
            let t = self.g_act(&g.mul_all(&[&u, &self.beta_k, &g.alpha_pow(-1)]), f)?;
            out = self.add(&out, &t)?;
        }
        Ok(out)
    }

    /// Invariance under the probe elements of `N_a` (or `N′_a`): every
    /// monomial parameter down to depth `a + 8`.
    pub fn is_invariant_under(&self, f: &InducedFn, side: Side, a: i32) -> Result<bool> {
        for u in unipotent_probes(&self.grp, side, a, a + 8)? {
            if !self.equal(&self.g_act(&u, f)?, f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Invariance under `N_{n_K}`, `N′_{m_K}` and generators of `H₁`.
    pub fn is_i1_invariant(&self, f: &InducedFn) -> Result<bool> {
        if !self.is_invariant_under(f, Side::N, self.nk)? || !self.is_invariant_under(f, Side::NPrime, self.mk)? {
            return Ok(false);
        }
        for h in self.h1_generators() {
            if !self.equal(&self.g_act(&h, f)?, f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Elements `diag(1 + ct, 1, (1 + c̄t)⁻¹)` of `H₁`.
    pub fn h1_generators(&self) -> Vec<GElem> {
        let l = self.grp.lf();
        let t = l.tower();
        let mut out = Vec::new();
        for c in t.res().elements().filter(|c| !c.is_zero()).take(2) {
            let a = l.add(&l.one(), &l.monomial(c, 1));
            out.push(self.grp.torus(&a, &l.one()).expect("unit"));
        }
        out
    }

    /// `w_n = σ(β_K)v₀` for `n > 0` and `v₀` otherwise: the value of `f_n` at `α^{-n}`.
    pub fn basis_value(&self, n: i32) -> Result<Vec<Coef>> {
        if n > 0 {
            Ok(self.sigma_of(&self.beta_k)?.apply(self.lam(), &self.v0))
        } else {
            Ok(self.v0.clone())
        }
    }

    /// The smallest `b` with `α^{-n} N′_b α^n ⊂ K` (`n > 0`), or
    /// `α^{-n} N_b α^n ⊂ K` (`n < 0`), found by probing.
    pub fn contraction_cutoff(&self, n: i32) -> Result<i32> {
        let g = &self.grp;
        let l = g.lf();
        let (side, start) = if n > 0 { (Side::NPrime, self.mk) } else { (Side::N, self.nk) };
        let an = g.alpha_pow(n);
        let amn = g.alpha_pow(-n);
        for b in start..start + 4 * n.abs() + 4 {
            let xv = b.div_euclid(2) + b.rem_euclid(2);
            let mut ok = true;
            let x = l.monomial(crate::fields::Res::ONE, xv);
            let probes = [
                (l.zero(), l.shift(&l.trace_zero_unit(), b)),
                (x.clone(), l.neg(&l.half(&l.mul(&x, &l.conj(&x))))),
            ];
            for (x, y) in probes {
                let u = if side == Side::N { g.n(&x, &y)? } else { g.nprime(&x, &y)? };
                if !g.member(&g.mul_all(&[&amn, &u, &an]), Subgroup::K(self.tag))? {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(b);
            }
        }
        Err(Error::NotApplicable("no contraction cutoff found"))
    }

    /// Number of generators of the explicit `f_n`.
    pub fn basis_size(&self, n: i32) -> Result<usize> {
        if n == 0 {
            return Ok(1);
        }
        let b = self.contraction_cutoff(n)?;
        let a = if n > 0 { self.mk } else { self.nk };
        let q = self.grp.lf().tower().q() as usize;
        let ceil2 = |k: i32| k.div_euclid(2) + k.rem_euclid(2);
        Ok(q.pow((2 * (ceil2(b) - ceil2(a)) + (b - a)) as u32))
    }

    /// `f_n` as an explicit sum `Σ_i [iα^n, w_n]`, `i` over `N′_{m_K}/N′_b`
    /// (`n > 0`) or `N_{n_K}/N_b` (`n < 0`).
    pub fn f_basis(&self, n: i32) -> Result<InducedFn> {
        if n.abs() > self.n_max {
            return Err(Error::PrecisionBudgetExceeded { n, n_max: self.n_max });
        }
        let w = self.basis_value(n)?;
        let g = &self.grp;
        let an = g.alpha_pow(n);
        if n == 0 {
            return self.generator(&an, &w);
        }
        let b = self.contraction_cutoff(n)?;
        let reps = if n > 0 { coset_reps(g, Side::NPrime, self.mk, b) } else { coset_reps(g, Side::N, self.nk, b) };
        let mut f = self.zero();
        for i in reps {
            self.add_generator(&mut f, &g.mul(&i, &an), &w)?;
        }
        Ok(f)
    }
}

/// `n(c t^⌈k/2⌉, ·)` and `n(0, 𝔱c t^k)` for `a ≤ k < b` and all residues `c`;
/// these generate `N_a` topologically once `b` is large.
pub fn unipotent_probes(grp: &Group, side: Side, a: i32, b: i32) -> Result<Vec<GElem>> {
    let l = grp.lf();
    let t = l.tower();
    let mut out = Vec::new();
    for k in a..b {
        let xv = k.div_euclid(2) + k.rem_euclid(2);
        let mut params = Vec::new();
        if xv * 2 == k || k == a {
            for c in t.res().elements().filter(|c| !c.is_zero()) {
                let x = l.monomial(c, xv);
                params.push((x.clone(), l.neg(&l.half(&l.mul(&x, &l.conj(&x))))));
            }
        }
        for c in t.base_elements().filter(|c| !c.is_zero()) {
            params.push((l.zero(), l.monomial(t.res().mul(c, t.trace_zero_unit()), k)));
        }
        for (x, y) in params {
            out.push(match side {
                Side::N => grp.n(&x, &y)?,
                Side::NPrime => grp.nprime(&x, &y)?,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
