//! Dense linear algebra over the coefficient field.

use alloc::vec;
use alloc::vec::Vec;

use crate::fields::{CoefTag, Coef, GaloisField};

pub type Lambda = GaloisField<CoefTag>;

/// Row-major matrix over `Λ`. Vectors are columns; `M · v` is the action.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Coef>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Coef::ZERO; rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Coef::ONE);
        }
        m
    }
    pub fn scalar(n: usize, c: Coef) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }
    pub fn from_rows(rows: &[Vec<Coef>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Mat { rows: rows.len(), cols, data }
    }
    pub fn from_cols(n: usize, cols: &[Vec<Coef>]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Coef {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Coef) {
        self.data[i * self.cols + j] = x;
    }
    pub fn row(&self, i: usize) -> &[Coef] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<Coef> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }
    pub fn trace(&self, f: &Lambda) -> Coef {
        f.sum((0..self.rows.min(self.cols)).map(|i| self.get(i, i)))
    }

    pub fn mul(&self, f: &Lambda, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        out
    }
    pub fn apply(&self, f: &Lambda, v: &[Coef]) -> Vec<Coef> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| f.sum(self.row(i).iter().zip(v).map(|(&a, &b)| f.mul(a, b))))
            .collect()
    }
    pub fn add(&self, f: &Lambda, other: &Mat) -> Mat {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }
    pub fn sub(&self, f: &Lambda, other: &Mat) -> Mat {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }
    pub fn scale(&self, f: &Lambda, c: Coef) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, c)).collect() }
    }
    pub fn pow(&self, f: &Lambda, mut e: u64) -> Mat {
        let mut base = self.clone();
        let mut acc = Mat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }
    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[Mat]) -> Mat {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        Mat { rows, cols, data }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self, f: &Lambda) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).unwrap();
            for j in c..self.cols {
                let x = self.get(r, j);
                self.set(r, j, f.mul(x, inv));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let x = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &Lambda) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column with that
    /// coordinate set to one.
    pub fn nullspace(&self, f: &Lambda) -> Vec<Vec<Coef>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Coef::ZERO; self.cols];
            v[free] = Coef::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            out.push(v);
        }
        out
    }

    /// Some `x` with `M x = b`, if one exists.
    pub fn solve(&self, f: &Lambda, b: &[Coef]) -> Option<Vec<Coef>> {
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Coef::ZERO; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

/// A subspace of `Λ^n` kept as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    n: usize,
    rows: Vec<Vec<Coef>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(n: usize) -> Self {
        Span { n, rows: Vec::new(), pivots: Vec::new() }
    }
    pub fn full(n: usize) -> Self {
        let mut s = Span::new(n);
        for i in 0..n {
            let mut e = vec![Coef::ZERO; n];
            e[i] = Coef::ONE;
            s.rows.push(e);
            s.pivots.push(i);
        }
        s
    }
    pub fn from_vectors(f: &Lambda, n: usize, vs: &[Vec<Coef>]) -> Self {
        let mut s = Span::new(n);
        for v in vs {
            s.insert(f, v);
        }
        s
    }
    pub fn ambient(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn basis(&self) -> &[Vec<Coef>] {
        &self.rows
    }

    /// Pivot columns of the echelon basis.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` reduced against the echelon basis; zero exactly on the span.
    pub fn reduce(&self, f: &Lambda, v: &[Coef]) -> Vec<Coef> {
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = w[pc];
            if !c.is_zero() {
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        w
    }

    pub fn contains(&self, f: &Lambda, v: &[Coef]) -> bool {
        self.reduce(f, v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, f: &Lambda, v: &[Coef]) -> bool {
        let w = self.reduce(f, v);
        let Some(pc) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(w[pc]).unwrap();
        let w: Vec<Coef> = w.iter().map(|&x| f.mul(x, inv)).collect();
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if !c.is_zero() {
                for (x, &y) in row.iter_mut().zip(&w) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let pos = self.pivots.iter().position(|&p| p > pc).unwrap_or(self.pivots.len());
        self.rows.insert(pos, w);
        self.pivots.insert(pos, pc);
        true
    }

    pub fn is_subspace_of(&self, f: &Lambda, other: &Span) -> bool {
        self.rows.iter().all(|r| other.contains(f, r))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coords(&self, f: &Lambda, v: &[Coef]) -> Option<Vec<Coef>> {
        let c: Vec<Coef> = self.pivots.iter().map(|&p| v[p]).collect();
        let mut recon = vec![Coef::ZERO; self.n];
        for (ci, row) in c.iter().zip(&self.rows) {
            for (x, &y) in recon.iter_mut().zip(row) {
                *x = f.add(*x, f.mul(*ci, y));
            }
        }
        (recon == v).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam() -> Lambda {
        GaloisField::new(3, 2).unwrap()
    }

    #[test]
    fn nullspace_and_solve() {
        let f = lam();
        let e = |c| Coef::from_code(c);
        let m = Mat::from_rows(&[vec![e(1), e(2), e(0)], vec![e(2), e(1), e(0)]]);
        let ns = m.nullspace(&f);
        for v in &ns {
            assert!(m.apply(&f, v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(ns.len() + m.rank(&f), 3);
        let b = m.apply(&f, &[e(1), e(1), e(1)]);
        let x = m.solve(&f, &b).unwrap();
        assert_eq!(m.apply(&f, &x), b);
    }

    #[test]
    fn span_insert_and_coords() {
        let f = lam();
        let e = |c| Coef::from_code(c);
        let mut s = Span::new(3);
        assert!(s.insert(&f, &[e(1), e(2), e(0)]));
        assert!(!s.insert(&f, &[e(2), e(1), e(0)]));
        assert!(s.insert(&f, &[e(0), e(0), e(5)]));
        assert_eq!(s.dim(), 2);
        let v = [e(2), e(1), e(7)];
        let c = s.coords(&f, &v).unwrap();
        assert_eq!(c.len(), 2);
        assert!(s.coords(&f, &[e(0), e(1), e(0)]).is_none());
    }
}
