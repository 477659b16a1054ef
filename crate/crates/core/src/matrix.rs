//! Exact dense matrices with division-controlled elimination.
//!
//! Over Q every working row is renormalized to a primitive integer vector
//! after each elimination step, which keeps intermediate numerators and
//! denominators from compounding; over GF(p) plain scaled elimination is
//! used. Kernels, ranks, linear solves and Krylov minimal polynomials are
//! all built on the same reduction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{Integer, One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElem>,
}

impl Mat {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElem,
    ) -> Mat {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<FieldElem>>) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension("ragged rows".into()));
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch(
                        field.to_string(),
                        e.field().to_string(),
                    ));
                }
                entries.push(e);
            }
        }
        Ok(Mat {
            field,
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn from_integers(field: FieldSpec, rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Mat::from_fn(field, r, c, |i, j| field.integer(rows[i][j]))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldSpec, cols: &[Vec<FieldElem>]) -> Mat {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        Mat::from_fn(field, r, c, |i, j| cols[j][i].clone())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        debug_assert_eq!(v.field(), self.field);
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn row_vec(&self, i: usize) -> Vec<FieldElem> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn scale(&self, c: &FieldElem) -> Mat {
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| self.at(i, j) * c)
    }

    /// Row-major flattening, matching the vec() convention used by the
    /// Sylvester and centralizer solvers.
    pub fn flatten(&self) -> Vec<FieldElem> {
        self.entries.clone()
    }

    pub fn from_flat(field: FieldSpec, rows: usize, cols: usize, entries: Vec<FieldElem>) -> Mat {
        assert_eq!(entries.len(), rows * cols);
        Mat {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        Mat::from_fn(self.field, r1 - r0, c1 - c0, |i, j| {
            self.at(r0 + i, c0 + j).clone()
        })
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.at(i, j).clone());
            }
        }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.field, other.field);
        Mat::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        Mat::from_fn(self.field, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        })
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    let e = self.at(i, j);
                    if !e.is_zero() && !v[j].is_zero() {
                        acc = &acc + &(e * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// p(M) by Horner's rule; M must be square.
    pub fn apply_poly(&self, p: &Poly) -> Mat {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Mat::zeros(self.field, n, n);
        for c in p.coeffs().iter().rev() {
            acc = &acc * self;
            for i in 0..n {
                acc.set(i, i, &acc.at(i, i).clone() + c);
            }
        }
        acc
    }
}

pub fn commutator(a: &Mat, b: &Mat) -> Mat {
    &(a * b) - &(b * a)
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape");
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.at(i, j) + rhs.at(i, j)
        })
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape");
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.at(i, j) - rhs.at(i, j)
        })
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| -self.at(i, j))
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        assert_eq!(self.field, rhs.field, "matrix product field");
        let mut out = Mat::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).clone();
                    out.set(i, j, &cur + &(a * b));
                }
            }
        }
        out
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Reduced row echelon form with unit pivots.
pub struct Rref {
    pub mat: Mat,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Rescales a rational row to a primitive integer vector. Bounds coefficient
/// growth during elimination; a no-op over GF(p).
fn normalize_row(field: FieldSpec, row: &mut [FieldElem]) {
    if field != FieldSpec::Rationals {
        return;
    }
    let mut l = BigInt::one();
    for e in row.iter() {
        l = l.lcm(e.rat().unwrap().denom());
    }
    let mut g = BigInt::zero();
    let mut ints = Vec::with_capacity(row.len());
    for e in row.iter() {
        let r = e.rat().unwrap();
        let n = r.numer() * (&l / r.denom());
        g = g.gcd(&n);
        ints.push(n);
    }
    if g.is_zero() {
        return;
    }
    for (e, n) in row.iter_mut().zip(ints) {
        *e = FieldElem::Rat(num::rational::BigRational::from(n / &g));
    }
}

pub fn rref(m: &Mat) -> Rref {
    let field = m.field;
    let mut rows: Vec<Vec<FieldElem>> = (0..m.rows).map(|i| m.row_vec(i)).collect();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for col in 0..m.cols {
        let Some(pivot_row) = (r..m.rows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot_row);
        normalize_row(field, &mut rows[r]);
        let pivot = rows[r][col].clone();
        for i in 0..m.rows {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            // row_i <- pivot * row_i - row_i[col] * row_r, then renormalize
            let factor = rows[i][col].clone();
            for j in 0..m.cols {
                let a = &rows[i][j] * &pivot;
                let b = &rows[r][j] * &factor;
                rows[i][j] = &a - &b;
            }
            normalize_row(field, &mut rows[i]);
        }
        pivots.push(col);
        r += 1;
        if r == m.rows {
            break;
        }
    }
    // unit pivots
    for (k, &col) in pivots.iter().enumerate() {
        let inv = rows[k][col].inv().expect("pivot nonzero");
        for j in 0..m.cols {
            rows[k][j] = &rows[k][j] * &inv;
        }
    }
    Rref {
        mat: Mat::from_rows(field, rows).expect("consistent rows"),
        pivots,
    }
}

pub fn rank(m: &Mat) -> usize {
    rref(m).rank()
}

/// Basis of the right null space.
pub fn kernel(m: &Mat) -> Vec<Vec<FieldElem>> {
    let red = rref(m);
    let field = m.field;
    let pivot_set: Vec<usize> = red.pivots.clone();
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); m.cols];
        v[free] = field.one();
        for (k, &pc) in pivot_set.iter().enumerate() {
            v[pc] = -red.mat.at(k, free);
        }
        basis.push(v);
    }
    basis
}

/// Particular solution of A X = B (any number of right-hand columns), or
/// None when the system is inconsistent. Free variables are set to zero.
pub fn solve(a: &Mat, b: &Mat) -> Result<Option<Mat>> {
    if a.rows != b.rows {
        return Err(Error::Dimension(format!(
            "solve: {}x{} vs {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let aug = a.hstack(b);
    let red = rref(&aug);
    // any pivot in the b-columns marks inconsistency
    if red.pivots.iter().any(|&c| c >= a.cols) {
        return Ok(None);
    }
    let mut x = Mat::zeros(a.field, a.cols, b.cols);
    for (k, &pc) in red.pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(pc, j, red.mat.at(k, a.cols + j).clone());
        }
    }
    Ok(Some(x))
}

/// Unique solution of A X = B; errors when A does not have full column rank
/// or when the system is inconsistent.
pub fn solve_unique(a: &Mat, b: &Mat) -> Result<Mat> {
    let red_rank = rank(a);
    if red_rank != a.cols {
        return Err(Error::LinearSolve(format!(
            "coefficient matrix has rank {red_rank} < {} columns",
            a.cols
        )));
    }
    match solve(a, b)? {
        Some(x) => Ok(x),
        None => Err(Error::LinearSolve("inconsistent system".into())),
    }
}

pub fn invert(m: &Mat) -> Option<Mat> {
    if !m.is_square() {
        return None;
    }
    let id = Mat::identity(m.field, m.rows);
    match solve(m, &id) {
        Ok(Some(x)) => {
            if rank(m) == m.rows {
                Some(x)
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Minimal polynomial by Krylov iteration: the lcm over standard-basis seeds
/// of the least linear relation among v, Mv, M^2 v, ...
pub fn minpoly(m: &Mat) -> Poly {
    assert!(m.is_square(), "minimal polynomial of a non-square matrix");
    let field = m.field;
    let n = m.rows;
    let mut result = Poly::one(field);
    // accumulated Krylov vectors across seeds, for seed skipping
    let mut seen = EchelonAccumulator::new(field, n);
    for seed in 0..n {
        let mut e = vec![field.zero(); n];
        e[seed] = field.one();
        if !seen.insert_probe(&e) {
            continue;
        }
        let local = local_minpoly(m, e, &mut seen);
        result = result.lcm(&local).expect("same field");
        if result.degree() == Some(n) {
            break;
        }
    }
    result
}

fn local_minpoly(m: &Mat, v: Vec<FieldElem>, seen: &mut EchelonAccumulator) -> Poly {
    let field = m.field;
    let n = v.len();
    // rows: (reduced vector with unit pivot, history over Krylov iterates)
    let mut rows: Vec<(Vec<FieldElem>, Vec<FieldElem>, usize)> = Vec::new();
    let mut iterate = v;
    for k in 0..=n {
        let mut vec_part = iterate.clone();
        let mut hist = vec![field.zero(); k + 1];
        hist[k] = field.one();
        for (rv, rh, pivot) in &rows {
            let factor = vec_part[*pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..n {
                let s = &rv[j] * &factor;
                vec_part[j] = &vec_part[j] - &s;
            }
            for j in 0..rh.len() {
                let s = &rh[j] * &factor;
                hist[j] = &hist[j] - &s;
            }
        }
        if let Some(pivot) = vec_part.iter().position(|e| !e.is_zero()) {
            let inv = vec_part[pivot].inv().expect("nonzero");
            for e in vec_part.iter_mut() {
                *e = &*e * &inv;
            }
            for e in hist.iter_mut() {
                *e = &*e * &inv;
            }
            seen.insert_probe(&vec_part);
            rows.push((vec_part, hist, pivot));
            iterate = m.mul_vec(&iterate);
        } else {
            // hist encodes sum hist[j] * M^j v = 0 with hist[k] = 1
            return Poly::from_coeffs(field, hist).expect("same field");
        }
    }
    unreachable!("a relation appears after at most dim iterations");
}

/// Incremental echelon basis used for membership tests.
struct EchelonAccumulator {
    field: FieldSpec,
    n: usize,
    rows: Vec<(Vec<FieldElem>, usize)>,
}

impl EchelonAccumulator {
    fn new(field: FieldSpec, n: usize) -> Self {
        EchelonAccumulator {
            field,
            n,
            rows: Vec::new(),
        }
    }

    /// Reduces v against the basis; inserts the residue and returns true if
    /// v was independent.
    fn insert_probe(&mut self, v: &[FieldElem]) -> bool {
        let mut v = v.to_vec();
        for (row, pivot) in &self.rows {
            let factor = v[*pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..self.n {
                let s = &row[j] * &factor;
                v[j] = &v[j] - &s;
            }
        }
        match v.iter().position(|e| !e.is_zero()) {
            None => false,
            Some(pivot) => {
                let inv = v[pivot].inv().expect("nonzero");
                for e in v.iter_mut() {
                    *e = &*e * &inv;
                }
                let _ = self.field;
                self.rows.push((v, pivot));
                true
            }
        }
    }
}

/// Dimension of the span of a list of vectors.
pub fn span_dim(field: FieldSpec, vectors: &[Vec<FieldElem>]) -> usize {
    let mut acc = EchelonAccumulator::new(field, vectors.first().map_or(0, |v| v.len()));
    let mut dim = 0;
    for v in vectors {
        if acc.insert_probe(v) {
            dim += 1;
        }
    }
    dim
}

/// Whether two lists of vectors span the same subspace.
pub fn same_span(field: FieldSpec, a: &[Vec<FieldElem>], b: &[Vec<FieldElem>]) -> bool {
    let da = span_dim(field, a);
    let db = span_dim(field, b);
    if da != db {
        return false;
    }
    let mut all: Vec<Vec<FieldElem>> = a.to_vec();
    all.extend(b.iter().cloned());
    span_dim(field, &all) == da
}
