//! Representations of `Γ_K` over `Λ`.
//!
//! A [`Weight`] stores the matrices of every element of `𝕌`, of the powers of
//! the two torus generators and of `w₀`; any other element acts through its
//! Bruhat word.

pub mod catalog;
pub mod lattice;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fields::{Character, Coef, FieldTower};
use crate::group::gamma::{GammaElem, GammaGroup, TorusPart};
use crate::group::KTag;
use crate::linalg::{Lambda, Mat, Span};

/// Which half of a length-two principal series.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Part {
    Sub,
    Quotient,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WeightKind {
    Trivial,
    /// A one-dimensional weight with the given torus character.
    Character(Character),
    PrincipalSeries(Character),
    Steinberg,
    /// `st ⊗ η`, `η` one-dimensional with the given torus character.
    SteinbergTwist(Character),
    PsPart(Character, Part),
    /// Anything built by restriction, quotient or spinning.
    Derived(String),
}

#[derive(Clone, Debug)]
pub struct Weight {
    gs: GammaGroup,
    dim: usize,
    unip: Vec<Mat>,
    ta_pows: Vec<Mat>,
    tb_pows: Vec<Mat>,
    w0: Mat,
    kind: WeightKind,
}

/// A Γ_K-equivariant linear map.
#[derive(Clone, Debug)]
pub struct WeightMap {
    pub matrix: Mat,
}

fn powers(f: &Lambda, g: &Mat, n: u32) -> Vec<Mat> {
    let mut out = Vec::with_capacity(n as usize);
    let mut acc = Mat::identity(g.rows());
    for _ in 0..n {
        out.push(acc.clone());
        acc = acc.mul(f, g);
    }
    out
}

impl Weight {
    /// Builds a weight from an action map, sampled on the generators.
    pub fn from_action<F: Fn(&GammaElem) -> Mat>(gs: &GammaGroup, dim: usize, kind: WeightKind, act: F) -> Weight {
        let f = gs.tower().coef();
        let unip = gs.unipotent_params().iter().map(|u| act(&gs.unipotent(u))).collect();
        let ta = act(&gs.torus_gen_a());
        let tb = act(&gs.torus_gen_b());
        let t = gs.tower();
        Weight {
            gs: gs.clone(),
            dim,
            unip,
            ta_pows: powers(f, &ta, t.order_a()),
            tb_pows: powers(f, &tb, t.order_b()),
            w0: act(&gs.w0()),
            kind,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn kind(&self) -> &WeightKind {
        &self.kind
    }
    pub fn with_kind(mut self, kind: WeightKind) -> Weight {
        self.kind = kind;
        self
    }
    pub fn gamma(&self) -> &GammaGroup {
        &self.gs
    }
    pub fn tag(&self) -> KTag {
        self.gs.tag()
    }
    pub fn tower(&self) -> &FieldTower {
        self.gs.tower()
    }
    pub fn lam(&self) -> &Lambda {
        self.gs.tower().coef()
    }

    /// Matrix of the torus element `diag(a, b, ā⁻¹)`.
    pub fn act_torus(&self, t: TorusPart) -> Mat {
        let tw = self.tower();
        let r = tw.res();
        let i = r.log(t.a).expect("unit") as usize;
        let j = (r.log(t.b).expect("unit") / (tw.q() - 1)) as usize;
        self.ta_pows[i % self.ta_pows.len()].mul(self.lam(), &self.tb_pows[j % self.tb_pows.len()])
    }

    pub fn act_unipotent_index(&self, i: usize) -> &Mat {
        &self.unip[i]
    }

    pub fn act_w0(&self) -> &Mat {
        &self.w0
    }

    pub fn act(&self, g: &GammaElem) -> Mat {
        let w = self.gs.bruhat(g);
        let f = self.lam();
        let u1 = self.gs.unipotent_index(&w.u1).expect("unipotent parameter");
        let mut m = self.unip[u1].mul(f, &self.act_torus(w.torus));
        if let Some(u2) = &w.u2 {
            let i2 = self.gs.unipotent_index(u2).expect("unipotent parameter");
            m = m.mul(f, &self.w0).mul(f, &self.unip[i2]);
        }
        m
    }

    pub fn apply(&self, g: &GammaElem, v: &[Coef]) -> Vec<Coef> {
        self.act(g).apply(self.lam(), v)
    }

    /// Matrices whose span generates the action: `𝕌`, torus generators, `w₀`.
    pub fn generators(&self) -> Vec<&Mat> {
        let mut g: Vec<&Mat> = self.unip.iter().collect();
        if self.ta_pows.len() > 1 {
            g.push(&self.ta_pows[1]);
        }
        if self.tb_pows.len() > 1 {
            g.push(&self.tb_pows[1]);
        }
        g.push(&self.w0);
        g
    }

    /// The same generators as elements of `Γ_K`.
    pub fn generator_elements(&self) -> Vec<GammaElem> {
        let gs = &self.gs;
        let mut g: Vec<GammaElem> = gs.unipotent_params().iter().map(|u| gs.unipotent(u)).collect();
        g.push(gs.torus_gen_a());
        g.push(gs.torus_gen_b());
        g.push(gs.w0());
        g
    }

    /// `σ^{𝕌}`.
    pub fn u_invariants(&self) -> Span {
        let f = self.lam();
        let id = Mat::identity(self.dim);
        let blocks: Vec<Mat> = self.unip.iter().map(|m| m.sub(f, &id)).collect();
        let stacked = Mat::vstack(&blocks);
        Span::from_vectors(f, self.dim, &stacked.nullspace(f))
    }

    /// The span of `(ū − 1)σ` over the opposite unipotent `𝕌̄ = w₀𝕌w₀`;
    /// `σ_{𝕌̄}` is the quotient by it.
    pub fn coinvariant_kernel(&self) -> Span {
        let f = self.lam();
        let id = Mat::identity(self.dim);
        let mut vs = Vec::new();
        for u in &self.unip {
            let ubar = self.w0.mul(f, u).mul(f, &self.w0).sub(f, &id);
            for j in 0..self.dim {
                vs.push(ubar.col(j));
            }
        }
        Span::from_vectors(f, self.dim, &vs)
    }

    /// The spanning vector `v₀` of `σ^{𝕌}`.
    pub fn v0(&self) -> Result<Vec<Coef>> {
        let inv = self.u_invariants();
        if inv.dim() != 1 {
            return Err(Error::DegenerateWeight);
        }
        Ok(inv.basis()[0].clone())
    }

    /// `j_σ = v₀ ℓᵀ` with `ℓ` vanishing on the coinvariant kernel, `ℓ(v₀) = 1`.
    pub fn j_map(&self) -> Result<Mat> {
        let f = self.lam();
        let v0 = self.v0()?;
        let ker = self.coinvariant_kernel();
        if ker.dim() + 1 != self.dim {
            return Err(Error::DegenerateWeight);
        }
        // ℓ solves ℓ·k = 0 for kernel vectors k and ℓ·v₀ = 1
        let mut rows: Vec<Vec<Coef>> = ker.basis().to_vec();
        rows.push(v0.clone());
        let a = Mat::from_rows(&rows);
        let mut rhs = vec![Coef::ZERO; rows.len()];
        *rhs.last_mut().unwrap() = Coef::ONE;
        let ell = a.solve(f, &rhs).ok_or(Error::DegenerateWeight)?;
        Ok(Mat::from_cols(self.dim, &[v0]).mul(f, &Mat::from_rows(&[ell])))
    }

    /// Torus character on `σ^{𝕌}`.
    pub fn chi_of(&self) -> Result<Character> {
        self.eigen_character(&self.v0()?)
    }

    /// The torus character of an eigenvector `v0`.
    pub fn eigen_character(&self, v0: &[Coef]) -> Result<Character> {
        let f = self.lam();
        let t = self.tower();
        let eigen = |m: &Mat| -> Result<Coef> {
            let w = m.apply(f, v0);
            let p = v0.iter().position(|c| !c.is_zero()).ok_or(Error::DegenerateWeight)?;
            let c = f.div(w[p], v0[p]).unwrap();
            let cv: Vec<Coef> = v0.iter().map(|&x| f.mul(x, c)).collect();
            if cv != w {
                return Err(Error::DegenerateWeight);
            }
            Ok(c)
        };
        let ca = eigen(&self.ta_pows[1 % self.ta_pows.len()])?;
        let cb = eigen(&self.tb_pows[1 % self.tb_pows.len()])?;
        let a_exp = (0..t.order_a()).find(|&e| t.psi_pow(t.torus_gen_a(), e as i64) == ca);
        let b_exp = (0..t.order_b()).find(|&e| t.psi_pow(t.torus_gen_b(), e as i64) == cb);
        match (a_exp, b_exp) {
            (Some(a), Some(b)) => Ok(t.character(a as i64, b as i64)),
            _ => Err(Error::DegenerateWeight),
        }
    }

    /// Smallest stable subspace containing `seeds`.
    pub fn spin(&self, seeds: &[Vec<Coef>]) -> Span {
        let f = self.lam();
        let mut span = Span::new(self.dim);
        let mut queue: Vec<Vec<Coef>> = Vec::new();
        for s in seeds {
            if span.insert(f, s) {
                queue.push(s.clone());
            }
        }
        let gens = self.generators();
        while let Some(v) = queue.pop() {
            for g in &gens {
                let w = g.apply(f, &v);
                if span.insert(f, &w) {
                    queue.push(w);
                }
            }
        }
        span
    }

    pub fn is_stable(&self, s: &Span) -> bool {
        let f = self.lam();
        let gens = self.generators();
        s.basis().iter().all(|v| gens.iter().all(|g| s.contains(f, &g.apply(f, v))))
    }

    /// The subrepresentation on a stable subspace, in its echelon basis.
    pub fn restrict(&self, s: &Span, kind: WeightKind) -> Weight {
        let f = self.lam();
        let basis = s.basis().to_vec();
        let conv = |m: &Mat| -> Mat {
            let cols: Vec<Vec<Coef>> =
                basis.iter().map(|b| s.coords(f, &m.apply(f, b)).expect("subspace is stable")).collect();
            Mat::from_cols(basis.len(), &cols)
        };
        self.map_matrices(basis.len(), kind, conv)
    }

    /// The quotient by a stable subspace; coordinates are the non-pivot entries.
    pub fn quotient(&self, s: &Span, kind: WeightKind) -> Weight {
        let f = self.lam();
        let free: Vec<usize> = (0..self.dim).filter(|i| !s.pivots().contains(i)).collect();
        let conv = |m: &Mat| -> Mat {
            let cols: Vec<Vec<Coef>> = free
                .iter()
                .map(|&j| {
                    let r = s.reduce(f, &m.col(j));
                    free.iter().map(|&i| r[i]).collect()
                })
                .collect();
            Mat::from_cols(free.len(), &cols)
        };
        self.map_matrices(free.len(), kind, conv)
    }

    /// Projection `σ → σ/s` in the coordinates used by [`Weight::quotient`].
    pub fn quotient_projection(&self, s: &Span) -> Mat {
        let f = self.lam();
        let free: Vec<usize> = (0..self.dim).filter(|i| !s.pivots().contains(i)).collect();
        let cols: Vec<Vec<Coef>> = (0..self.dim)
            .map(|j| {
                let mut e = vec![Coef::ZERO; self.dim];
                e[j] = Coef::ONE;
                let r = s.reduce(f, &e);
                free.iter().map(|&i| r[i]).collect()
            })
            .collect();
        Mat::from_cols(free.len(), &cols)
    }

    fn map_matrices<F: Fn(&Mat) -> Mat>(&self, dim: usize, kind: WeightKind, conv: F) -> Weight {
        Weight {
            gs: self.gs.clone(),
            dim,
            unip: self.unip.iter().map(&conv).collect(),
            ta_pows: self.ta_pows.iter().map(&conv).collect(),
            tb_pows: self.tb_pows.iter().map(&conv).collect(),
            w0: conv(&self.w0),
            kind,
        }
    }

    /// `σ ⊗ η` for a one-dimensional `η`.
    pub fn twist(&self, eta: &Weight, kind: WeightKind) -> Weight {
        assert_eq!(eta.dim, 1);
        let f = self.lam();
        let s = |a: &Mat, b: &Mat| a.scale(f, b.get(0, 0));
        Weight {
            gs: self.gs.clone(),
            dim: self.dim,
            unip: self.unip.iter().zip(&eta.unip).map(|(a, b)| s(a, b)).collect(),
            ta_pows: self.ta_pows.iter().zip(&eta.ta_pows).map(|(a, b)| s(a, b)).collect(),
            tb_pows: self.tb_pows.iter().zip(&eta.tb_pows).map(|(a, b)| s(a, b)).collect(),
            w0: s(&self.w0, &eta.w0),
            kind,
        }
    }

    /// Checks `ρ(a)ρ(b) = ρ(ab)` on the given pairs.
    pub fn is_homomorphism_on(&self, pairs: &[(GammaElem, GammaElem)]) -> bool {
        let f = self.lam();
        pairs.iter().all(|(a, b)| self.act(a).mul(f, &self.act(b)) == self.act(&self.gs.mul(a, b)))
    }

    /// Whether `x` intertwines `self → other` on all generators.
    pub fn intertwines(&self, other: &Weight, x: &Mat) -> bool {
        let f = self.lam();
        self.generator_elements().iter().all(|g| x.mul(f, &self.act(g)) == other.act(g).mul(f, x))
    }

    /// Basis of `Hom_Γ(self, other)` by solving the linear system on generators.
    pub fn hom_space(&self, other: &Weight) -> Vec<Mat> {
        let f = self.lam();
        let (n, m) = (self.dim, other.dim);
        let unknowns = n * m;
        let mut acc = Span::new(unknowns);
        // equations for X (m×n, entry (i,j) ↦ i*n + j): X A − B X = 0
        for g in self.generator_elements() {
            let a = self.act(&g);
            let b = other.act(&g);
            for i in 0..m {
                for j in 0..n {
                    let mut row = vec![Coef::ZERO; unknowns];
                    for k in 0..n {
                        let v = &mut row[i * n + k];
                        *v = f.add(*v, a.get(k, j));
                    }
                    for k in 0..m {
                        let v = &mut row[k * n + j];
                        *v = f.sub(*v, b.get(i, k));
                    }
                    acc.insert(f, &row);
                }
            }
        }
        let eqs = Mat::from_rows(acc.basis());
        let sols = if acc.dim() == 0 {
            Span::full(unknowns).basis().to_vec()
        } else {
            eqs.nullspace(f)
        };
        sols.into_iter()
            .map(|v| Mat::from_rows(&(0..m).map(|i| v[i * n..(i + 1) * n].to_vec()).collect::<Vec<_>>()))
            .collect()
    }

    /// `(dim, χ_σ, traces on fixed elements)`; equal for isomorphic weights.
    pub fn fingerprint(&self) -> Fingerprint {
        let f = self.lam();
        let traces = fingerprint_elements(&self.gs).iter().map(|g| self.act(g).trace(f)).collect();
        Fingerprint { dim: self.dim, chi: self.chi_of().ok(), traces }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fingerprint {
    pub dim: usize,
    pub chi: Option<Character>,
    pub traces: Vec<Coef>,
}

/// A fixed list of elements: torus powers, `w₀` and `w₀u`, `t·w₀·u`.
pub fn fingerprint_elements(gs: &GammaGroup) -> Vec<GammaElem> {
    let ta = gs.torus_gen_a();
    let tb = gs.torus_gen_b();
    let w0 = gs.w0();
    let mut out = vec![gs.identity(), ta, tb, gs.mul(&ta, &tb), gs.mul(&ta, &ta), w0, gs.mul(&ta, &w0)];
    for u in gs.unipotent_params().iter().take(9) {
        let ue = gs.unipotent(u);
        out.push(ue);
        out.push(gs.mul(&w0, &ue));
        out.push(gs.mul(&gs.mul(&tb, &w0), &ue));
    }
    out
}

#[cfg(test)]
mod tests;
