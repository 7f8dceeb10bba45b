//! `G = U(2,1)(E/F)` for the antidiagonal hermitian form, its maximal
//! compact subgroups and their Iwahori filtrations.

pub mod cosets;
pub mod exchange;
pub mod gamma;
pub mod lattice;

use alloc::vec::Vec;
use core::array;
use core::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fields::Res;
use crate::laurent::{LocalField, Series};

/// Which maximal compact subgroup.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum KTag {
    K0,
    K1,
}

impl KTag {
    pub const ALL: [KTag; 2] = [KTag::K0, KTag::K1];

    /// Lower bounds on entry valuations defining `K` inside `G`.
    pub fn min_valuations(self) -> [[i32; 3]; 3] {
        match self {
            KTag::K0 => [[0; 3]; 3],
            KTag::K1 => [[0, 0, -1], [1, 0, 0], [1, 1, 0]],
        }
    }

    /// `a` with `K = G ∩ Stab(diag(t^a)·𝔬_E³)`.
    pub fn lattice_exponents(self) -> [i32; 3] {
        match self {
            KTag::K0 => [0, 0, 0],
            KTag::K1 => [0, 1, 1],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            KTag::K0 => "K0",
            KTag::K1 => "K1",
        }
    }
}

impl fmt::Display for KTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Subgroups with a membership test.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Subgroup {
    G,
    K(KTag),
    /// The pro-p kernel `K¹` of reduction to `Γ_K`.
    KOne(KTag),
    Iwahori(KTag),
    ProPIwahori(KTag),
    /// `N_k`: `n(x,y)` with `y ∈ 𝔭^k`.
    N(i32),
    NPrime(i32),
    H0,
    H1,
}

/// A 3×3 matrix over `E`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GElem {
    e: [Series; 9],
}

impl GElem {
    pub fn from_entries(e: [Series; 9]) -> Self {
        GElem { e }
    }
    /// Entry in row `i`, column `j` (0-based).
    pub fn get(&self, i: usize, j: usize) -> &Series {
        &self.e[3 * i + j]
    }
    pub fn entries(&self) -> &[Series; 9] {
        &self.e
    }
    /// Smallest absolute precision among the entries.
    pub fn prec(&self) -> i32 {
        self.e.iter().map(Series::prec).min().unwrap()
    }
}

impl fmt::Debug for GElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..3 {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}, {}, {}", self.e[3 * i], self.e[3 * i + 1], self.e[3 * i + 2])?;
        }
        f.write_str("]")
    }
}

/// Arithmetic context for `G`.
#[derive(Clone, Debug)]
pub struct Group {
    lf: LocalField,
}

impl Group {
    pub fn new(lf: LocalField) -> Self {
        Group { lf }
    }
    pub fn lf(&self) -> &LocalField {
        &self.lf
    }

    fn build(&self, rows: [[Series; 3]; 3]) -> GElem {
        let [r0, r1, r2] = rows;
        let [a, b, c] = r0;
        let [d, e, f] = r1;
        let [g, h, i] = r2;
        GElem { e: [a, b, c, d, e, f, g, h, i] }
    }

    pub fn identity(&self) -> GElem {
        self.diag(self.lf.one(), self.lf.one(), self.lf.one())
    }

    pub fn diag(&self, a: Series, b: Series, c: Series) -> GElem {
        let z = || self.lf.zero();
        self.build([[a, z(), z()], [z(), b, z()], [z(), z(), c]])
    }

    /// Checks `x x̄ + y + ȳ = 0` to the precision of the inputs.
    pub fn relation_holds(&self, x: &Series, y: &Series) -> bool {
        let k = &self.lf;
        let r = k.add(&k.mul(x, &k.conj(x)), &k.add(y, &k.conj(y)));
        r.is_zero()
    }

    /// `n(x,y) = [[1,x,y],[0,1,−x̄],[0,0,1]]`.
    pub fn n(&self, x: &Series, y: &Series) -> Result<GElem> {
        if !self.relation_holds(x, y) {
            return Err(Error::RelationViolated);
        }
        let k = &self.lf;
        let (z, o) = (|| k.zero(), || k.one());
        Ok(self.build([[o(), x.clone(), y.clone()], [z(), o(), k.neg(&k.conj(x))], [z(), z(), o()]]))
    }

    /// `n′(x,y) = [[1,0,0],[x,1,0],[y,−x̄,1]]`.
    pub fn nprime(&self, x: &Series, y: &Series) -> Result<GElem> {
        if !self.relation_holds(x, y) {
            return Err(Error::RelationViolated);
        }
        let k = &self.lf;
        let (z, o) = (|| k.zero(), || k.one());
        Ok(self.build([[o(), z(), z()], [x.clone(), o(), z()], [y.clone(), k.neg(&k.conj(x)), o()]]))
    }

    /// `h(x) = diag(x, −x̄x⁻¹, x̄⁻¹)`.
    pub fn h(&self, x: &Series) -> Result<GElem> {
        let k = &self.lf;
        let xi = k.inv(x)?;
        let xb = k.conj(x);
        Ok(self.diag(x.clone(), k.neg(&k.mul(&xb, &xi)), k.conj(&xi)))
    }

    /// `diag(a, b, ā⁻¹)` with `b b̄ = 1`.
    pub fn torus(&self, a: &Series, b: &Series) -> Result<GElem> {
        let k = &self.lf;
        Ok(self.diag(a.clone(), b.clone(), k.conj(&k.inv(a)?)))
    }

    /// `α^k` with `α = diag(t⁻¹, 1, t)`.
    pub fn alpha_pow(&self, k: i32) -> GElem {
        let l = &self.lf;
        self.diag(l.t_pow(-k), l.one(), l.t_pow(k))
    }

    pub fn beta(&self) -> GElem {
        let k = &self.lf;
        let (z, o) = (|| k.zero(), || k.one());
        self.build([[z(), z(), o()], [z(), o(), z()], [o(), z(), z()]])
    }

    /// `β′ = βα⁻¹`.
    pub fn beta_prime(&self) -> GElem {
        self.mul(&self.beta(), &self.alpha_pow(-1))
    }

    /// The element of `K ∩ {β, β′}`.
    pub fn beta_k(&self, tag: KTag) -> GElem {
        match tag {
            KTag::K0 => self.beta(),
            KTag::K1 => self.beta_prime(),
        }
    }

    /// The reversal permutation matrix (equal to `β`).
    pub fn reversal(&self) -> GElem {
        self.beta()
    }

    pub fn mul(&self, a: &GElem, b: &GElem) -> GElem {
        let k = &self.lf;
        GElem {
            e: array::from_fn(|idx| {
                let (i, j) = (idx / 3, idx % 3);
                let mut s = k.mul(a.get(i, 0), b.get(0, j));
                for l in 1..3 {
                    s = k.add(&s, &k.mul(a.get(i, l), b.get(l, j)));
                }
                s
            }),
        }
    }

    pub fn mul_all(&self, factors: &[&GElem]) -> GElem {
        let mut acc = factors[0].clone();
        for f in &factors[1..] {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// `g⁻¹ = β ḡᵀ β`, valid for `g ∈ G`.
    pub fn inv(&self, g: &GElem) -> GElem {
        let k = &self.lf;
        GElem { e: array::from_fn(|idx| k.conj(g.get(2 - idx % 3, 2 - idx / 3))) }
    }

    /// Entrywise conjugate.
    pub fn conj(&self, g: &GElem) -> GElem {
        GElem { e: array::from_fn(|idx| self.lf.conj(&g.e[idx])) }
    }

    pub fn transpose(&self, g: &GElem) -> GElem {
        GElem { e: array::from_fn(|idx| g.get(idx % 3, idx / 3).clone()) }
    }

    /// `gᵀ β ḡ − β`.
    pub fn unitarity_defect(&self, g: &GElem) -> GElem {
        let gb = self.mul_all(&[&self.transpose(g), &self.beta(), &self.conj(g)]);
        self.sub(&gb, &self.beta())
    }

    pub fn sub(&self, a: &GElem, b: &GElem) -> GElem {
        GElem { e: array::from_fn(|idx| self.lf.sub(&a.e[idx], &b.e[idx])) }
    }

    /// True when `a − b` vanishes modulo `t^prec` entrywise.
    pub fn eq_to(&self, a: &GElem, b: &GElem, prec: i32) -> Result<bool> {
        for idx in 0..9 {
            if !self.lf.eq_to(&a.e[idx], &b.e[idx], prec)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Entry valuations meet the bounds `lo` (entrywise `≥`).
    fn entries_at_least(&self, g: &GElem, lo: &[[i32; 3]; 3]) -> Result<bool> {
        for i in 0..3 {
            for j in 0..3 {
                if !self.lf.in_ideal(g.get(i, j), lo[i][j])? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn residue_is(&self, s: &Series, c: Res) -> Result<bool> {
        Ok(self.lf.residue(s)? == c)
    }

    pub fn member(&self, g: &GElem, sg: Subgroup) -> Result<bool> {
        match sg {
            Subgroup::G => {
                let d = self.unitarity_defect(g);
                let p = g.prec().min(self.lf.precision());
                for s in d.entries() {
                    if let Some(v) = s.valuation() {
                        if v < p - 4 {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
            Subgroup::K(tag) => self.entries_at_least(g, &tag.min_valuations()),
            Subgroup::KOne(tag) | Subgroup::Iwahori(tag) | Subgroup::ProPIwahori(tag) => {
                if !self.member(g, Subgroup::K(tag))? {
                    return Ok(false);
                }
                let gamma = gamma::reduce_to_gamma(self, tag, g)?;
                let gs = gamma::GammaGroup::new(self.lf.tower().clone(), tag);
                Ok(match sg {
                    Subgroup::KOne(_) => gs.is_identity(&gamma),
                    Subgroup::Iwahori(_) => gs.in_borel(&gamma),
                    _ => gs.in_unipotent(&gamma),
                })
            }
            Subgroup::N(k) | Subgroup::NPrime(k) => {
                let upper = matches!(sg, Subgroup::N(_));
                let (xi, yi, zi) = if upper { ((0, 1), (0, 2), (1, 2)) } else { ((1, 0), (2, 0), (2, 1)) };
                let l = &self.lf;
                for i in 0..3 {
                    for j in 0..3 {
                        let s = g.get(i, j);
                        let ok = if i == j {
                            l.eq_to(s, &l.one(), g.prec())?
                        } else if (i, j) == xi || (i, j) == yi || (i, j) == zi {
                            true
                        } else {
                            l.in_ideal(s, s.prec())?
                        };
                        if !ok {
                            return Ok(false);
                        }
                    }
                }
                let (x, y) = (g.get(xi.0, xi.1), g.get(yi.0, yi.1));
                let xb = l.neg(&l.conj(x));
                Ok(l.eq_to(g.get(zi.0, zi.1), &xb, g.prec())? && l.in_ideal(y, k)?)
            }
            Subgroup::H0 | Subgroup::H1 => {
                let l = &self.lf;
                for i in 0..3 {
                    for j in 0..3 {
                        if i != j && !l.in_ideal(g.get(i, j), g.prec())? {
                            return Ok(false);
                        }
                    }
                }
                let units = (0..3).all(|i| g.get(i, i).valuation() == Some(0));
                if !units {
                    return Ok(false);
                }
                if sg == Subgroup::H0 {
                    return Ok(true);
                }
                Ok(self.residue_is(g.get(0, 0), Res::ONE)? && self.residue_is(g.get(1, 1), Res::ONE)?)
            }
        }
    }

    /// Convenience: membership, treating indeterminate as an error.
    pub fn require(&self, g: &GElem, sg: Subgroup, what: &'static str) -> Result<()> {
        if self.member(g, sg)? {
            Ok(())
        } else {
            Err(Error::MembershipViolated(what))
        }
    }

    /// A random `n(x,y) ∈ N_k` with `len` coefficients per parameter.
    pub fn random_n<R: Rng + ?Sized>(&self, rng: &mut R, k: i32, len: usize) -> GElem {
        let (x, y) = self.random_xy(rng, k, len);
        self.n(&x, &y).expect("relation holds by construction")
    }

    pub fn random_nprime<R: Rng + ?Sized>(&self, rng: &mut R, k: i32, len: usize) -> GElem {
        let (x, y) = self.random_xy(rng, k, len);
        self.nprime(&x, &y).expect("relation holds by construction")
    }

    /// A random pair `(x, y)` with `x x̄ + y + ȳ = 0` and `y ∈ 𝔭^k`.
    pub fn random_xy<R: Rng + ?Sized>(&self, rng: &mut R, k: i32, len: usize) -> (Series, Series) {
        let l = &self.lf;
        let x = l.random(rng, k.div_euclid(2) + k.rem_euclid(2), len);
        let y0 = l.neg(&l.half(&l.mul(&x, &l.conj(&x))));
        let y = l.add(&y0, &l.random_trace_zero(rng, k, len));
        (x, y)
    }

    /// A random element of `H₀` (or `H₁` when `pro_p`).
    pub fn random_torus<R: Rng + ?Sized>(&self, rng: &mut R, pro_p: bool, len: usize) -> GElem {
        let l = &self.lf;
        let t = l.tower();
        let mut a = l.random_unit(rng, len);
        let norm_one: Vec<Res> = t.norm_one_elements().collect();
        let mut b = l.constant(norm_one[rng.gen_range(0..norm_one.len())]);
        if pro_p {
            let c = l.inv(&l.constant(l.residue(&a).unwrap())).unwrap();
            a = l.mul(&a, &c);
            b = l.one();
        }
        self.torus(&a, &b).unwrap()
    }

    /// A random element of `K` as a word in unipotent, torus and `β_K` factors.
    pub fn random_k<R: Rng + ?Sized>(&self, rng: &mut R, tag: KTag, len: usize) -> GElem {
        let (nk, mk, _) = iwahori_constants_static(tag);
        let u1 = self.random_n(rng, nk, len);
        let h = self.random_torus(rng, false, len);
        let u2 = self.random_nprime(rng, mk, len);
        let u3 = self.random_n(rng, nk, len);
        let b = self.beta_k(tag);
        if rng.gen_bool(0.5) {
            self.mul_all(&[&u1, &h, &b, &u3, &u2])
        } else {
            self.mul_all(&[&u1, &h, &u2])
        }
    }

    /// A random element of the pro-p Iwahori `I_{1,K} = N′ H₁ N`.
    pub fn random_i1<R: Rng + ?Sized>(&self, rng: &mut R, tag: KTag, len: usize) -> GElem {
        let (nk, mk, _) = iwahori_constants_static(tag);
        let u = self.random_nprime(rng, mk, len);
        let h = self.random_torus(rng, true, len);
        let v = self.random_n(rng, nk, len);
        self.mul_all(&[&u, &h, &v])
    }
}

/// `(n_K, m_K, t_K)` as tabulated; [`iwahori_constants`] recomputes them.
pub(crate) fn iwahori_constants_static(tag: KTag) -> (i32, i32, u32) {
    match tag {
        KTag::K0 => (0, 1, 3),
        KTag::K1 => (-1, 2, 1),
    }
}

/// `(n_K, m_K, t_K)`: the smallest `k` with `N_k ⊂ I_{1,K}` probed on sample
/// elements of exact valuation, likewise for `N′`, and `t_K` from the size of
/// the first layer.
pub fn iwahori_constants(grp: &Group, tag: KTag) -> Result<(i32, i32, u32)> {
    let scan = |upper: bool| -> Result<i32> {
        for k in -6..=6 {
            if probe_layer(grp, tag, upper, k)? {
                return Ok(k);
            }
        }
        Err(Error::NotApplicable("no layer of the unipotent filtration lies in I_1"))
    };
    let nk = scan(true)?;
    let mk = scan(false)?;
    let reps = cosets::coset_reps(grp, cosets::Side::N, nk, nk + 1);
    let q = grp.lf().tower().q() as usize;
    let mut tk = 0;
    let mut size = 1;
    while size < reps.len() {
        size *= q;
        tk += 1;
    }
    if size != reps.len() {
        return Err(Error::CrossCheckFailed("layer size is not a power of q".into()));
    }
    Ok((nk, mk, tk))
}

/// Whether every probe element of `N_k` (or `N′_k`) lies in `I_{1,K}`.
fn probe_layer(grp: &Group, tag: KTag, upper: bool, k: i32) -> Result<bool> {
    let l = grp.lf();
    let t = l.tower();
    let tz = l.shift(&l.trace_zero_unit(), k);
    let xv = k.div_euclid(2) + k.rem_euclid(2);
    let mut probes = Vec::new();
    probes.push((l.zero(), tz));
    for c in t.res().elements().filter(|c| !c.is_zero()) {
        let x = l.monomial(c, xv);
        let y = l.neg(&l.half(&l.mul(&x, &l.conj(&x))));
        probes.push((x, y));
    }
    for (x, y) in probes {
        let g = if upper { grp.n(&x, &y)? } else { grp.nprime(&x, &y)? };
        if !grp.member(&g, Subgroup::ProPIwahori(tag))? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
