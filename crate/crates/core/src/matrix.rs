//! Dense exact matrices and the reduced-echelon engine.
//!
//! Every basis this crate ever exposes is read off a reduced row echelon
//! form, which is unique for a given row space. That is the whole
//! determinism story: no algorithmic choice downstream can leak into
//! results.


use crate::error::{Error, Result};
use crate::field::Scalar;

/// Row-major dense matrix over an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(rows * cols, data.len());
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<S>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [S] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[S]) {
        assert_eq!(v.len(), self.rows);
        for (i, x) in v.iter().enumerate() {
            self[(i, j)] = x.clone();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix<S> {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            let mut acc: Vec<S::Acc> = dst.iter().map(S::acc_new).collect();
            let mut used = 0usize;
            let mut budget = usize::MAX;
            for k in 0..self.cols {
                let f = &self[(i, k)];
                if !f.is_zero() {
                    if budget == usize::MAX {
                        budget = f.acc_budget();
                    }
                    S::acc_axpy(&mut acc, f, rhs.row(k));
                    used += 1;
                    if used >= budget {
                        for a in acc.iter_mut() {
                            S::acc_flush(a);
                        }
                        used = 0;
                    }
                }
            }
            for (d, a) in dst.iter_mut().zip(acc) {
                *d = S::acc_done(a);
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        let mut acc: Vec<S::Acc> = (0..self.rows).map(|_| S::acc_new(&S::zero())).collect();
        let mut used = 0usize;
        let mut budget = usize::MAX;
        for (j, x) in v.iter().enumerate() {
            if !x.is_zero() {
                if budget == usize::MAX {
                    budget = x.acc_budget();
                }
                let col: Vec<S> = (0..self.rows).map(|i| self[(i, j)].clone()).collect();
                S::acc_axpy(&mut acc, x, &col);
                used += 1;
                if used >= budget {
                    for a in acc.iter_mut() {
                        S::acc_flush(a);
                    }
                    used = 0;
                }
            }
        }
        acc.into_iter().map(S::acc_done).collect()
    }

    pub fn add(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| {
                let mut x = a.clone();
                x.add_assign(b);
                x
            })
            .collect();
        Matrix::new(self.rows, self.cols, data)
    }

    pub fn sub(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| a.sub(b))
            .collect();
        Matrix::new(self.rows, self.cols, data)
    }

    /// Horizontal stack `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Matrix::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                out[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, rhs: &Matrix<S>) -> Matrix<S> {
        let mut out = Matrix::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out[(self.rows + i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }
}

impl<S: Scalar> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<S: Scalar> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

// ---------------------------------------------------------------------------
// Echelon engine
// ---------------------------------------------------------------------------

/// Incrementally built reduced row echelon basis of a subspace.
///
/// Rows are kept fully reduced (each pivot column is zero in every other
/// row) and sorted by pivot, so `rows()` is the canonical basis of the row
/// space no matter the insertion order.
#[derive(Debug, Clone)]
pub struct Echelon<S: Scalar> {
    dim: usize,
    rows: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Echelon<S> {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    /// Reduce `v` against the basis without inserting it.
    pub fn reduce(&self, v: &mut Vec<S>) {
        assert_eq!(v.len(), self.dim);
        let mut acc: Vec<S::Acc> = v.iter().map(S::acc_new).collect();
        let budget = v
            .iter()
            .chain(self.rows.iter().flatten())
            .find(|x| !x.is_zero())
            .map(|x| x.acc_budget())
            .unwrap_or(usize::MAX);
        let mut used = 0usize;
        for (r, &p) in self.rows.iter().zip(self.pivots.iter()) {
            S::acc_flush(&mut acc[p]);
            let c = S::acc_done(acc[p].clone());
            if c.is_zero() {
                continue;
            }
            let f = c.neg();
            S::acc_axpy(&mut acc, &f, r);
            acc[p] = S::acc_new(&S::zero());
            used += 1;
            if used >= budget {
                for a in acc.iter_mut() {
                    S::acc_flush(a);
                }
                used = 0;
            }
        }
        for (dst, a) in v.iter_mut().zip(acc) {
            *dst = S::acc_done(a);
        }
    }

    /// Insert a vector. Returns the pivot column if it enlarged the space.
    pub fn insert(&mut self, mut v: Vec<S>) -> Option<usize> {
        self.reduce(&mut v);
        let piv = v.iter().position(|x| !x.is_zero())?;
        // normalize
        let inv = v[piv].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.times(&inv);
            }
        }
        // back-eliminate the new pivot from existing rows
        for r in self.rows.iter_mut() {
            let c = r[piv].clone();
            if !c.is_zero() {
                let f = c.neg();
                let mut acc: Vec<S::Acc> = r.iter().map(S::acc_new).collect();
                S::acc_axpy(&mut acc, &f, &v);
                for (dst, a) in r.iter_mut().zip(acc) {
                    *dst = S::acc_done(a);
                }
                r[piv] = S::zero();
            }
        }
        // keep rows sorted by pivot
        let at = self.pivots.partition_point(|&p| p < piv);
        self.pivots.insert(at, piv);
        self.rows.insert(at, v);
        Some(piv)
    }

    /// Membership test for the row space.
    pub fn contains(&self, v: &[S]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the row basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        // reduced rows: coefficient of row t is v[pivot_t] after no other row
        // can contribute at that pivot
        let mut w = v.to_vec();
        let coords: Vec<S> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        self.reduce(&mut w);
        if w.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    /// Columns not containing a pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut piv = vec![false; self.dim];
        for &p in &self.pivots {
            piv[p] = true;
        }
        (0..self.dim).filter(|&j| !piv[j]).collect()
    }
}

// ---------------------------------------------------------------------------
// Derived operations
// ---------------------------------------------------------------------------

/// Reduced row echelon form, pivot columns, and rank.
pub fn rref<S: Scalar>(a: &Matrix<S>) -> (Matrix<S>, Vec<usize>, usize) {
    let mut ech = Echelon::new(a.cols());
    for i in 0..a.rows() {
        ech.insert(a.row(i).to_vec());
    }
    let rank = ech.rank();
    let pivots = ech.pivots().to_vec();
    let mut data = Vec::with_capacity(a.rows() * a.cols());
    for r in ech.rows() {
        data.extend(r.iter().cloned());
    }
    data.resize(a.rows() * a.cols(), S::zero());
    (Matrix::new(a.rows(), a.cols(), data), pivots, rank)
}

pub fn rank<S: Scalar>(a: &Matrix<S>) -> usize {
    let mut ech = Echelon::new(a.cols());
    for i in 0..a.rows() {
        ech.insert(a.row(i).to_vec());
    }
    ech.rank()
}

/// Basis of the null space, as columns. Canonical: derived from the RREF.
pub fn kernel_basis<S: Scalar>(a: &Matrix<S>) -> Matrix<S> {
    let mut ech = Echelon::new(a.cols());
    for i in 0..a.rows() {
        ech.insert(a.row(i).to_vec());
    }
    kernel_from_echelon(&ech)
}

/// Kernel read off a reduced echelon basis of the row space.
pub fn kernel_from_echelon<S: Scalar>(ech: &Echelon<S>) -> Matrix<S> {
    let n = ech.dim();
    let free = ech.free_columns();
    let mut out = Matrix::zeros(n, free.len());
    for (c, &j) in free.iter().enumerate() {
        out[(j, c)] = S::one();
        for (t, &p) in ech.pivots().iter().enumerate() {
            let coeff = ech.rows()[t][j].clone();
            if !coeff.is_zero() {
                out[(p, c)] = coeff.neg();
            }
        }
    }
    out
}

/// Solve `A x = b` exactly; `None` when inconsistent.
///
/// Solutions are kernel vectors of `[A | -b]` with a unit last coordinate.
pub fn solve<S: Scalar>(a: &Matrix<S>, b: &[S]) -> Option<Vec<S>> {
    assert_eq!(a.rows(), b.len());
    let mut aug = Matrix::zeros(a.rows(), a.cols() + 1);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols())] = b[i].neg();
    }
    let ker = kernel_basis(&aug);
    for c in 0..ker.cols() {
        let last = ker[(a.cols(), c)].clone();
        if let Some(inv) = last.inv() {
            let mut sol = Vec::with_capacity(a.cols());
            for j in 0..a.cols() {
                sol.push(ker[(j, c)].times(&inv));
            }
            return Some(sol);
        }
    }
    None
}

/// Greedy standard-basis completion of an independent set of columns.
///
/// Returns indices `j` whose unit vectors extend the column space of `s` to
/// the whole ambient space, chosen greedily in increasing order.
pub fn quotient_basis<S: Scalar>(s: &Matrix<S>, ambient_dim: usize) -> Result<Vec<usize>> {
    assert_eq!(s.rows(), ambient_dim);
    let mut ech = Echelon::new(ambient_dim);
    for c in 0..s.cols() {
        let col = s.col(c);
        if ech.insert(col).is_none() {
            return Err(Error::contract("dependent columns in quotient_basis input"));
        }
    }
    Ok(ech.free_columns())
}
