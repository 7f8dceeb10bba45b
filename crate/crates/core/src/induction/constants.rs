//! The structure constants `λ`, `c`, `c_−`, `d_n`, `d₀`, each computed twice.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::iwahori::{IwahoriVec, Op};
use super::Induction;
use crate::error::{Error, Result};
use crate::fields::{Character, Coef, FieldTower};
use crate::group::cosets::{coset_reps, l_nonidentity, LSize, Side};
use crate::weights::catalog::{one_dim_exponents, steinberg_twist};
use crate::weights::Weight;

/// `Σ_{(x,t) ∈ L^×} χ(h(t))` over `L_{q^e}`.
pub fn character_sum(tower: &FieldTower, chi: Character, e: u32) -> Coef {
    let c = tower.coef();
    c.sum(l_nonidentity(tower, LSize::of_exponent(e)).iter().map(|l| tower.eval_char_h(chi, l.t)))
}

/// Whether `σ` is `st ⊗ η` for a one-dimensional `η`, by fingerprint.
pub fn is_steinberg_twist(sigma: &Weight) -> Result<bool> {
    let gs = sigma.gamma();
    let fp = sigma.fingerprint();
    for eta in sigma.tower().characters_of_torus() {
        if one_dim_exponents(gs, eta).is_none() {
            continue;
        }
        let st = steinberg_twist(gs, eta)?;
        if st.dim() == sigma.dim() && st.fingerprint() == fp {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeConstants {
    pub lambda: Coef,
    pub c: Coef,
    pub c_minus: Coef,
    /// `d_n` for `0 ≤ n ≤` the requested bound.
    pub d: BTreeMap<i32, Coef>,
}

fn mismatch(what: &str, a: Coef, b: Coef) -> Error {
    Error::CrossCheckFailed(format!("{what}: closed form {a}, operator {b}"))
}

impl Induction {
    /// The coefficient of `f_m` in `Op(f_n)`.
    pub fn coefficient(&self, op: Op, n: i32, m: i32) -> Result<Coef> {
        Ok(self.apply_basis(op, n)?.get(m))
    }

    /// `λ`: the `f₁`-coefficient of `T f₀`.
    pub fn lambda(&self) -> Result<Coef> {
        self.coefficient(Op::T, 0, 1)
    }

    /// `c`: the `f₁`-coefficient of `T f₁`.
    pub fn c_operator(&self) -> Result<Coef> {
        self.coefficient(Op::T, 1, 1)
    }

    /// `0` when `dim σ > 1`, `Σ_{L^×_{q^{4−t_K}}} χ_σ(h(t))` for characters.
    pub fn c_closed_form(&self) -> Result<Coef> {
        if self.dim() > 1 {
            return Ok(Coef::ZERO);
        }
        self.c_minus_closed_form()
    }

    pub fn c_minus_closed_form(&self) -> Result<Coef> {
        Ok(character_sum(self.sigma.tower(), self.sigma.chi_of()?, 4 - self.tk))
    }

    /// `d_n` for `n ≥ 1`.
    pub fn d_closed_form(&self) -> Result<Coef> {
        Ok(character_sum(self.sigma.tower(), self.sigma.chi_of()?, self.tk))
    }

    /// `−χ_σ(h(𝔱))` for twists of the Steinberg weight, `0` otherwise.
    pub fn d0_closed_form(&self) -> Result<Coef> {
        if !is_steinberg_twist(&self.sigma)? {
            return Ok(Coef::ZERO);
        }
        let t = self.sigma.tower();
        Ok(t.coef().neg(t.eval_char_h(self.sigma.chi_of()?, t.trace_zero_unit())))
    }

    /// `d₀` from `Σ_{u ∈ N_{n_K}/N_{n_K+1}} σ(uβ_K)v₀ = d₀v₀` inside `σ`.
    pub fn d0_in_weight(&self) -> Result<Coef> {
        let lam = self.lam();
        let mut acc: Vec<Coef> = alloc::vec![Coef::ZERO; self.dim()];
        for u in coset_reps(&self.grp, Side::N, self.nk, self.nk + 1) {
            let w = self.sigma_of(&self.grp.mul(&u, &self.beta_k))?.apply(lam, &self.v0);
            for (a, b) in acc.iter_mut().zip(w) {
                *a = lam.add(*a, b);
            }
        }
        let p = self.v0.iter().position(|c| !c.is_zero()).ok_or(Error::DegenerateWeight)?;
        let d = lam.div(acc[p], self.v0[p]).expect("nonzero");
        if acc.iter().zip(&self.v0).any(|(&a, &b)| a != lam.mul(d, b)) {
            return Err(Error::NotInSpan(0));
        }
        Ok(d)
    }

    /// All constants; `d_n` for `0 ≤ n ≤ n_top`. Every closed form is checked
    /// against its operator value.
    pub fn constants(&self, n_top: i32) -> Result<HeckeConstants> {
        let lambda = self.lambda()?;
        let t0 = self.apply_basis(Op::T, 0)?;
        let mut expect0 = IwahoriVec::basis(-1);
        expect0.set(1, lambda);
        if t0 != expect0 {
            return Err(Error::CrossCheckFailed(format!("T f[0] = {t0}")));
        }
        let c = self.c_operator()?;
        let c_cf = self.c_closed_form()?;
        if c != c_cf {
            return Err(mismatch("c", c_cf, c));
        }
        let c_minus = self.c_minus_closed_form()?;
        let c_minus_op = self.coefficient(Op::SMinus, 1, 1)?;
        if c_minus != c_minus_op {
            return Err(mismatch("c_-", c_minus, c_minus_op));
        }
        let mut d = BTreeMap::new();
        let d0 = self.d0_closed_form()?;
        for other in [self.d0_in_weight()?, self.coefficient(Op::SK, 0, 0)?] {
            if other != d0 {
                return Err(mismatch("d_0", d0, other));
            }
        }
        d.insert(0, d0);
        let dn = self.d_closed_form()?;
        for n in 1..=n_top {
            let op = self.coefficient(Op::SK, -n, -n)?;
            if op != dn {
                return Err(mismatch("d_n", dn, op));
            }
            d.insert(n, dn);
        }
        Ok(HeckeConstants { lambda, c, c_minus, d })
    }
}
