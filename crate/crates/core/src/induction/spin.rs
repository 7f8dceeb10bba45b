//! The `K`-span of an `I_{1,K}`-invariant function as a `Γ_K`-module.
//!
//! Functions are compared through coordinates on a growing list of cosets:
//! each coset `gK` gets a fixed representative `g*`, and `[g, v]` contributes
//! `σ(g*⁻¹g)v` in the slot of `gK`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{InducedFn, Induction};
use crate::error::{Error, Result};
use crate::fields::Coef;
use crate::group::gamma::{lift, GammaElem};
use crate::group::lattice::{coset_key, CosetKey};
use crate::group::GElem;
use crate::linalg::{Lambda, Mat};
use crate::weights::{Weight, WeightKind};

/// Default cap on the dimension of a spin.
pub const SPIN_CAP: usize = 128;

/// `⟨K·f⟩` with its `Γ_K`-action.
#[derive(Clone, Debug)]
pub struct KSpan {
    /// Spanning translates, the first being `f`.
    pub basis: Vec<InducedFn>,
    /// The action on `basis`.
    pub module: Weight,
    /// `basis[i] = elements[i]·f`.
    pub elements: Vec<GElem>,
    coords: Coords,
    ech: Echelon,
}

impl KSpan {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `f` on `basis`, or `None` when `f` is outside the span.
    pub fn express(&self, ind: &Induction, f: &InducedFn) -> Result<Option<Vec<Coef>>> {
        let v = ind.coords_of(&mut self.coords.clone(), f)?;
        Ok(self.ech.express(ind.lam(), v, self.dim()))
    }
}

#[derive(Clone, Debug, Default)]
struct Coords {
    slots: BTreeMap<CosetKey, (GElem, usize)>,
    len: usize,
}

#[derive(Clone, Debug)]
struct Echelon {
    /// `(pivot, reduced vector, expression on the basis)`
    rows: Vec<(usize, Vec<Coef>, Vec<Coef>)>,
}

impl Induction {
    fn coords_of(&self, c: &mut Coords, f: &InducedFn) -> Result<Vec<Coef>> {
        let d = self.dim();
        let lam = self.lam();
        let mut entries = Vec::new();
        for (g, v) in f.generators() {
            let key = coset_key(&self.grp, self.tag, g)?;
            let (g0, off) = match c.slots.get(&key) {
                Some((g0, off)) => (g0.clone(), *off),
                None => {
                    let off = c.len;
                    c.slots.insert(key, (g.clone(), off));
                    c.len += d;
                    (g.clone(), off)
                }
            };
            let w = self.sigma_of(&self.grp.mul(&self.grp.inv(&g0), g))?.apply(lam, v);
            entries.push((off, w));
        }
        let mut out = vec![Coef::ZERO; c.len];
        for (off, w) in entries {
            out[off..off + d].copy_from_slice(&w);
        }
        Ok(out)
    }

    /// `⟨K·f⟩`, closed under lifts of generators of `Γ_K`. `f` must be
    /// fixed by `K¹` (true for `I_{1,K}`-invariant `f`).
    pub fn spin_k(&self, f: &InducedFn, cap: usize) -> Result<KSpan> {
        let gs = self.sigma.gamma().clone();
        let lam = self.lam().clone();
        let gens: Vec<GElem> = self.sigma.generator_elements().iter().map(|g| lift(&self.grp, &gs, g)).collect();
        let mut coords = Coords::default();
        let mut ech = Echelon { rows: Vec::new() };
        let mut basis: Vec<InducedFn> = Vec::new();
        let mut elems: Vec<GElem> = Vec::new();
        let mut queue = vec![(self.grp.identity(), f.clone())];
        while let Some((g, h)) = queue.pop() {
            let v = self.coords_of(&mut coords, &h)?;
            if ech.insert(&lam, v, basis.len()) {
                if basis.len() + 1 > cap {
                    return Err(Error::ClosureBudgetExceeded { cap });
                }
                for k in &gens {
                    queue.push((self.grp.mul(k, &g), self.g_act(k, &h)?));
                }
                basis.push(h);
                elems.push(g);
            }
        }
        let n = basis.len();
        let err = core::cell::RefCell::new(None);
        let module = Weight::from_action(&gs, n, WeightKind::Derived(String::from("K-span")), |gamma: &GammaElem| {
            let k = lift(&self.grp, &gs, gamma);
            let mut m = Mat::zeros(n, n);
            for (j, b) in basis.iter().enumerate() {
                let r = self.g_act(&k, b).and_then(|t| self.coords_of(&mut coords.clone(), &t));
                match r.ok().and_then(|v| ech.express(&lam, v, n)) {
                    Some(col) => {
                        for (i, c) in col.into_iter().enumerate() {
                            m.set(i, j, c);
                        }
                    }
                    None => *err.borrow_mut() = Some(Error::CrossCheckFailed(String::from("K-span is not closed"))),
                }
            }
            m
        });
        if let Some(e) = err.into_inner() {
            return Err(e);
        }
        Ok(KSpan { basis, module, elements: elems, coords, ech })
    }

    /// The coset keys in the support of `f`.
    pub fn support(&self, f: &InducedFn) -> BTreeSet<CosetKey> {
        f.keys().cloned().collect()
    }

    /// `{f₁} ∪ {uβ_K·f₁ : u ∈ N_{n_K}/N_{n_K+1}}`.
    pub fn f1_translates(&self) -> Result<Vec<InducedFn>> {
        let f1 = self.f_basis(1)?;
        let mut out = vec![f1.clone()];
        for u in crate::group::cosets::coset_reps(&self.grp, crate::group::cosets::Side::N, self.nk, self.nk + 1) {
            out.push(self.g_act(&self.grp.mul(&u, &self.beta_k), &f1)?);
        }
        Ok(out)
    }
}

/// `X e_ℓ = ρ_M(g_ℓ⁻¹)m₀`: the map `Ind_𝔹 χ → M` attached by Frobenius
/// reciprocity to a `𝔹`-eigenvector `m₀` of character `χ`. The principal
/// series basis is indexed by `g₀ = 1` and `g_ℓ = w₀u_ℓ`.
pub fn frobenius_intertwiner(ps: &Weight, m: &Weight, m0: &[Coef]) -> Result<Mat> {
    let gs = ps.gamma();
    let f = ps.lam();
    let w0 = gs.w0();
    let reps: Vec<GammaElem> = core::iter::once(gs.identity())
        .chain(gs.unipotent_params().iter().map(|u| gs.mul(&w0, &gs.unipotent(u))))
        .collect();
    if reps.len() != ps.dim() {
        return Err(Error::NotApplicable("not a principal series basis"));
    }
    let cols: Vec<Vec<Coef>> = reps.iter().map(|g| m.act(&gs.inv(g)).apply(f, m0)).collect();
    let x = Mat::from_cols(m.dim(), &cols);
    if !ps.intertwines(m, &x) {
        return Err(Error::CrossCheckFailed(String::from("Frobenius map is not equivariant")));
    }
    Ok(x)
}

impl Echelon {
    fn reduce(&self, lam: &Lambda, mut v: Vec<Coef>, n: usize) -> (Vec<Coef>, Vec<Coef>) {
        let mut expr = vec![Coef::ZERO; n];
        for (p, row, e) in &self.rows {
            let c = v.get(*p).copied().unwrap_or(Coef::ZERO);
            if c.is_zero() {
                continue;
            }
            if v.len() < row.len() {
                v.resize(row.len(), Coef::ZERO);
            }
            for (a, b) in v.iter_mut().zip(row) {
                *a = lam.sub(*a, lam.mul(c, *b));
            }
            for (a, b) in expr.iter_mut().zip(e) {
                *a = lam.add(*a, lam.mul(c, *b));
            }
        }
        (v, expr)
    }

    /// Adds `v` (the coordinates of basis element `idx`) when independent.
    fn insert(&mut self, lam: &Lambda, v: Vec<Coef>, idx: usize) -> bool {
        let n = idx + 1;
        let (r, expr) = self.reduce(lam, v, n);
        let Some(p) = r.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = lam.inv(r[p]).expect("nonzero");
        let row: Vec<Coef> = r.iter().map(|&c| lam.mul(c, inv)).collect();
        // row = inv·(b_idx − Σ expr_i b_i)
        let mut e: Vec<Coef> = expr.iter().map(|&c| lam.neg(lam.mul(c, inv))).collect();
        e[idx] = inv;
        for (_, _, old) in self.rows.iter_mut() {
            old.resize(n, Coef::ZERO);
        }
        self.rows.push((p, row, e));
        true
    }

    /// Coordinates of `v` on the basis, or `None` outside the span.
    fn express(&self, lam: &Lambda, v: Vec<Coef>, n: usize) -> Option<Vec<Coef>> {
        let (r, expr) = self.reduce(lam, v, n);
        r.iter().all(|c| c.is_zero()).then_some(expr)
    }
}
