//! Submodule lattices by spinning `𝕌`-invariant lines.
//!
//! A nonzero submodule has nonzero `𝕌`-invariants (`𝕌` is a `p`-group), so
//! every minimal submodule is the spin of some invariant line.

use alloc::vec;
use alloc::vec::Vec;

use super::{Fingerprint, Weight, WeightKind};
use crate::error::{Error, Result};
use crate::fields::Coef;
use crate::linalg::{Lambda, Mat, Span};

/// Largest number of projective points enumerated.
pub const MAX_LINES: usize = 1 << 14;

/// One representative per line of `s` (first nonzero coordinate one).
pub fn lines(f: &Lambda, s: &Span) -> Result<Vec<Vec<Coef>>> {
    let d = s.dim();
    let ord = f.order() as usize;
    let count: usize = (0..d).map(|i| ord.pow(i as u32)).sum();
    if count > MAX_LINES {
        return Err(Error::ClosureBudgetExceeded { cap: MAX_LINES });
    }
    let mut out = Vec::with_capacity(count);
    for lead in 0..d {
        let rest = d - lead - 1;
        for idx in 0..ord.pow(rest as u32) {
            let mut coeffs = vec![Coef::ZERO; d];
            coeffs[lead] = Coef::ONE;
            let mut k = idx;
            for c in coeffs.iter_mut().skip(lead + 1) {
                *c = Coef::from_code((k % ord) as u32);
                k /= ord;
            }
            let mut v = vec![Coef::ZERO; s.ambient()];
            for (c, b) in coeffs.iter().zip(s.basis()) {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.add(*x, f.mul(*c, y));
                }
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// Distinct spins of the `𝕌`-invariant lines.
pub fn invariant_spins(sigma: &Weight) -> Result<Vec<Span>> {
    let f = sigma.lam();
    let mut out: Vec<Span> = Vec::new();
    for v in lines(f, &sigma.u_invariants())? {
        let s = sigma.spin(&[v]);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Every invariant line generates the whole space.
pub fn is_irreducible(sigma: &Weight) -> Result<bool> {
    if sigma.dim() == 0 {
        return Ok(false);
    }
    Ok(invariant_spins(sigma)?.iter().all(|s| s.dim() == sigma.dim()))
}

/// Minimal nonzero submodules.
pub fn minimal_submodules(sigma: &Weight) -> Result<Vec<Span>> {
    let f = sigma.lam();
    let spins = invariant_spins(sigma)?;
    Ok(spins
        .iter()
        .filter(|s| !spins.iter().any(|t| t.dim() < s.dim() && t.is_subspace_of(f, s)))
        .cloned()
        .collect())
}

/// Composition factors bottom-up, when the socle series is a chain.
pub fn composition_chain(sigma: &Weight) -> Result<Vec<Weight>> {
    let mut out = Vec::new();
    let mut cur = sigma.clone();
    loop {
        if is_irreducible(&cur)? {
            out.push(cur);
            return Ok(out);
        }
        let mins = minimal_submodules(&cur)?;
        if mins.len() != 1 {
            return Err(Error::InconclusiveLattice);
        }
        let w = &mins[0];
        out.push(cur.restrict(w, WeightKind::Derived("socle".into())));
        cur = cur.quotient(w, WeightKind::Derived("quotient".into()));
    }
}

/// `(dimension, fingerprint)` of each factor of the chain.
pub fn socle_series(sigma: &Weight) -> Result<Vec<(usize, Fingerprint)>> {
    Ok(composition_chain(sigma)?.iter().map(|w| (w.dim(), w.fingerprint())).collect())
}

/// True when no equivariant retraction `σ → s` exists, i.e. the submodule
/// `s` has no complement.
pub fn is_nonsplit(sigma: &Weight, s: &Span) -> bool {
    let f = sigma.lam();
    let sub = sigma.restrict(s, WeightKind::Derived("sub".into()));
    let incl = Mat::from_cols(sigma.dim(), s.basis());
    let homs = sigma.hom_space(&sub);
    let k = s.dim();
    // solve Σ c_i (H_i · incl) = I_k
    let cols: Vec<Vec<Coef>> = homs
        .iter()
        .map(|h| {
            let m = h.mul(f, &incl);
            (0..k * k).map(|idx| m.get(idx / k, idx % k)).collect()
        })
        .collect();
    let target: Vec<Coef> = (0..k * k).map(|idx| if idx / k == idx % k { Coef::ONE } else { Coef::ZERO }).collect();
    if cols.is_empty() {
        return true;
    }
    Mat::from_cols(k * k, &cols).solve(f, &target).is_none()
}
