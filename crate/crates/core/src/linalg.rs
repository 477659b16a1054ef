//! Companion matrices, the Pascal-type intertwiner between shifted companion
//! actions, exact Sylvester solves, and block-triangular clearing.

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::matrix::{kernel, minpoly, solve_unique, Mat};
use crate::poly::Poly;

/// Sizes of the diagonal blocks of a block decomposition; offsets follow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockShape {
    sizes: Vec<usize>,
}

impl BlockShape {
    pub fn new(sizes: Vec<usize>) -> Result<BlockShape> {
        if sizes.iter().any(|&s| s == 0) {
            return Err(Error::InvalidInput("zero block size".into()));
        }
        Ok(BlockShape { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn offset(&self, i: usize) -> usize {
        self.sizes[..i].iter().sum()
    }

    pub fn block(&self, m: &Mat, i: usize, j: usize) -> Mat {
        let (r0, c0) = (self.offset(i), self.offset(j));
        m.submatrix(r0, r0 + self.sizes[i], c0, c0 + self.sizes[j])
    }

    pub fn set_block(&self, m: &mut Mat, i: usize, j: usize, block: &Mat) {
        assert_eq!(block.rows(), self.sizes[i]);
        assert_eq!(block.cols(), self.sizes[j]);
        m.set_block(self.offset(i), self.offset(j), block);
    }

    /// All blocks strictly below the diagonal vanish.
    pub fn is_block_upper(&self, m: &Mat) -> bool {
        if m.rows() != self.total() || m.cols() != self.total() {
            return false;
        }
        for i in 1..self.len() {
            for j in 0..i {
                if !self.block(m, i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Embeds a block at position (i, j) into an otherwise zero matrix.
    pub fn embed(&self, i: usize, j: usize, block: &Mat) -> Mat {
        let mut m = Mat::zeros(block.field(), self.total(), self.total());
        self.set_block(&mut m, i, j, block);
        m
    }
}

/// Companion matrix of a monic polynomial of degree >= 1: subdiagonal ones
/// and the negated coefficients in the last column.
pub fn companion(f: &Poly) -> Result<Mat> {
    f.require_monic()?;
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::InvalidInput("companion matrix needs degree >= 1".into())),
    };
    let field = f.field();
    let mut m = Mat::zeros(field, n, n);
    for i in 0..n {
        if i + 1 < n {
            m.set(i + 1, i, field.one());
        }
        m.set(i, n - 1, -&f.coeff(i));
    }
    Ok(m)
}

/// The dn x dr intertwiner S(gamma, f, n, r): entry (i, j) is the
/// coefficient of X^(i-1) in (X + gamma)^(j-1) f(X)^(n-r), for a monic f of
/// degree d and n >= r >= 1. For n = r this is the unit upper triangular
/// Pascal matrix in gamma.
pub fn pascal_intertwiner(gamma: &FieldElem, f: &Poly, n: u32, r: u32) -> Result<Mat> {
    f.require_monic()?;
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::InvalidInput("intertwiner needs deg f >= 1".into())),
    };
    if r < 1 || n < r {
        return Err(Error::Dimension(format!("need n >= r >= 1, got n={n}, r={r}")));
    }
    if f.field() != gamma.field() {
        return Err(Error::FieldMismatch(
            f.field().to_string(),
            gamma.field().to_string(),
        ));
    }
    let field = f.field();
    let rows = d * n as usize;
    let cols = d * r as usize;
    let x_plus_gamma = Poly::from_coeffs(field, vec![gamma.clone(), field.one()])?;
    let mut column_poly = f.pow(n - r);
    let mut m = Mat::zeros(field, rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            m.set(i, j, column_poly.coeff(i));
        }
        if j + 1 < cols {
            column_poly = &column_poly * &x_plus_gamma;
        }
    }
    Ok(m)
}

/// Checks the intertwining identity
/// S(-gamma,f,n,r) (C_{f(X+gamma)^r} + gamma I) = C_{f(X)^n} S(-gamma,f,n,r)
/// by exact arithmetic.
pub fn verify_gam_identity(gamma: &FieldElem, f: &Poly, n: u32, r: u32) -> Result<bool> {
    let s = pascal_intertwiner(&(-gamma), f, n, r)?;
    let shifted = f.shift(gamma)?;
    let c_right = companion(&shifted.pow(r))?;
    let c_left = companion(&f.pow(n))?;
    let gamma_id = Mat::identity(f.field(), c_right.rows()).scale(gamma);
    let lhs = &s * &(&c_right + &gamma_id);
    let rhs = &c_left * &s;
    Ok(lhs == rhs)
}

/// Unique solution Z of A Z - Z B = -U when gcd(mu_A, mu_B) = 1.
///
/// The equation is flattened to an (mn)-dimensional linear system for the
/// operator Y -> AY - YB, which is invertible exactly when the minimal
/// polynomials are coprime.
pub fn sylvester_solve(a: &Mat, b: &Mat, u: &Mat) -> Result<Mat> {
    if !a.is_square() || !b.is_square() {
        return Err(Error::Dimension("sylvester: A and B must be square".into()));
    }
    let (m, n) = (a.rows(), b.rows());
    if u.rows() != m || u.cols() != n {
        return Err(Error::Dimension(format!(
            "sylvester: U must be {m}x{n}, got {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    let mu_a = minpoly(a);
    let mu_b = minpoly(b);
    if mu_a.gcd(&mu_b)?.degree() != Some(0) {
        return Err(Error::NotCoprime);
    }
    let op = sylvester_operator(a, b);
    let rhs = Mat::from_flat(u.field(), m * n, 1, (-u).flatten());
    let z = solve_unique(&op, &rhs)?;
    Ok(Mat::from_flat(u.field(), m, n, z.flatten()))
}

/// The matrix of Y -> AY - YB on row-major flattened m x n matrices.
pub fn sylvester_operator(a: &Mat, b: &Mat) -> Mat {
    let (m, n) = (a.rows(), b.rows());
    let field = a.field();
    let mut op = Mat::zeros(field, m * n, m * n);
    for i in 0..m {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..m {
                let cur = op.at(row, k * n + j).clone();
                op.set(row, k * n + j, &cur + a.at(i, k));
            }
            for l in 0..n {
                let cur = op.at(row, i * n + l).clone();
                op.set(row, i * n + l, &cur - b.at(l, j));
            }
        }
    }
    op
}

/// Clears every off-diagonal block whose pair of diagonal blocks has coprime
/// minimal polynomials, by conjugations with unit-diagonal block matrices.
///
/// Returns (P, B) with B = P^{-1} M P, P block upper triangular with
/// identity diagonal blocks. Row blocks are processed bottom-up and each row
/// left-to-right, so blocks cleared earlier stay cleared.
pub fn block_clear(m: &Mat, shape: &BlockShape) -> Result<(Mat, Mat)> {
    if !shape.is_block_upper(m) {
        return Err(Error::InvalidInput(
            "block_clear: matrix is not block upper triangular for the given shape".into(),
        ));
    }
    let field = m.field();
    let k = shape.len();
    let diag_minpolys: Vec<Poly> = (0..k).map(|i| minpoly(&shape.block(m, i, i))).collect();
    let mut current = m.clone();
    let mut p = Mat::identity(field, shape.total());
    for i in (0..k.saturating_sub(1)).rev() {
        for j in i + 1..k {
            let coprime = diag_minpolys[i].gcd(&diag_minpolys[j])?.degree() == Some(0);
            if !coprime {
                continue;
            }
            let u = shape.block(&current, i, j);
            if u.is_zero() {
                continue;
            }
            let z = sylvester_solve(
                &shape.block(&current, i, i),
                &shape.block(&current, j, j),
                &u,
            )?;
            let mut q = Mat::identity(field, shape.total());
            shape.set_block(&mut q, i, j, &z);
            let mut q_inv = Mat::identity(field, shape.total());
            shape.set_block(&mut q_inv, i, j, &(-&z));
            current = &(&q_inv * &current) * &q;
            p = &p * &q;
        }
    }
    // every coprime pair must now have a zero block
    for i in 0..k {
        for j in i + 1..k {
            if diag_minpolys[i].gcd(&diag_minpolys[j])?.degree() == Some(0)
                && !shape.block(&current, i, j).is_zero()
            {
                return Err(Error::Inconsistent(format!(
                    "block ({i}, {j}) failed to clear"
                )));
            }
        }
    }
    Ok((p, current))
}

/// Common right kernel of a family of matrices with equal column counts.
pub fn common_kernel(
    field: crate::field::FieldSpec,
    mats: &[&Mat],
    cols: usize,
) -> Vec<Vec<FieldElem>> {
    if mats.is_empty() {
        return (0..cols)
            .map(|j| {
                let mut v = vec![field.zero(); cols];
                v[j] = field.one();
                v
            })
            .collect();
    }
    let mut stacked = mats[0].clone();
    for m in &mats[1..] {
        stacked = stacked.vstack(m);
    }
    kernel(&stacked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::matrix::rank;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn companion_of_x_is_zero() {
        let f = Poly::from_integers(q(), &[0, 1]);
        assert_eq!(companion(&f).unwrap(), Mat::zeros(q(), 1, 1));
    }

    #[test]
    fn companion_of_x2_plus_1() {
        let f = Poly::from_integers(q(), &[1, 0, 1]);
        assert_eq!(
            companion(&f).unwrap(),
            Mat::from_integers(q(), &[&[0, -1], &[1, 0]])
        );
    }

    #[test]
    fn companion_requires_monic() {
        let f = Poly::from_integers(q(), &[1, 2]);
        assert!(companion(&f).is_err());
    }

    #[test]
    fn companion_minpoly_roundtrip() {
        // Krylov minimal polynomial recovers the defining polynomial.
        let polys: [&[i64]; 5] = [
            &[3, -2, 1],
            &[1, 1, 1, 1],
            &[-1, 0, 0, 0, 1],
            &[2, 0, 1, 0, 0, 1],
            &[1, 2, 3, 4, 5, 6, 1],
        ];
        for cs in polys {
            let f = Poly::from_integers(q(), cs);
            assert!(f.is_monic());
            assert_eq!(minpoly(&companion(&f).unwrap()), f);
        }
    }

    #[test]
    fn companion_rank_drop() {
        // rank C_f = deg f - 1 exactly when f(0) = 0
        let f = Poly::from_integers(q(), &[0, 2, 1, 1]);
        assert_eq!(rank(&companion(&f).unwrap()), 2);
        let g = Poly::from_integers(q(), &[5, 2, 1, 1]);
        assert_eq!(rank(&companion(&g).unwrap()), 3);
    }

    #[test]
    fn pascal_matrix_display() {
        // S(1, linear f, 3, 3) is the unit Pascal matrix in gamma = 1.
        let f = Poly::from_integers(q(), &[7, 1]);
        let s = pascal_intertwiner(&q().one(), &f, 3, 3).unwrap();
        assert_eq!(
            s,
            Mat::from_integers(q(), &[&[1, 1, 1], &[0, 1, 2], &[0, 0, 1]])
        );
    }

    #[test]
    fn pascal_gamma_zero_is_identity() {
        let f = Poly::from_integers(q(), &[1, 2, 1]);
        let s = pascal_intertwiner(&q().zero(), &f, 2, 2).unwrap();
        assert_eq!(s, Mat::identity(q(), 4));
    }

    #[test]
    fn pascal_column_example() {
        // S(-1, X, 2, 1) lists the coefficients of X^(2-1) = X.
        let f = Poly::from_integers(q(), &[0, 1]);
        let s = pascal_intertwiner(&q().integer(-1), &f, 2, 1).unwrap();
        assert_eq!(s, Mat::from_integers(q(), &[&[0], &[1]]));
    }

    #[test]
    fn pascal_rejects_bad_shape() {
        let f = Poly::from_integers(q(), &[0, 1]);
        assert!(pascal_intertwiner(&q().one(), &f, 1, 2).is_err());
    }

    #[test]
    fn gam_identity_hand_case() {
        // gamma=1, f=X, n=2, r=1: S = (0,1)^T, both sides vanish.
        let f = Poly::from_integers(q(), &[0, 1]);
        assert!(verify_gam_identity(&q().one(), &f, 2, 1).unwrap());
    }

    #[test]
    fn gam_identity_gamma_zero() {
        let f = Poly::from_integers(q(), &[1, 0, 1]);
        assert!(verify_gam_identity(&q().zero(), &f, 3, 3).unwrap());
    }

    #[test]
    fn gam_identity_sweep() {
        let fs = [
            Poly::from_integers(q(), &[0, 1]),
            Poly::from_integers(q(), &[1, 1]),
            Poly::from_integers(q(), &[1, 0, 1]),
        ];
        for f in &fs {
            for g in -2..=2i64 {
                for n in 1..=3u32 {
                    for r in 1..=n {
                        assert!(
                            verify_gam_identity(&q().integer(g), f, n, r).unwrap(),
                            "failed for f={f}, gamma={g}, n={n}, r={r}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn sylvester_scalar_case() {
        // A=[0], B=[1], U=[u]: -z = -u.
        let a = Mat::zeros(q(), 1, 1);
        let b = Mat::identity(q(), 1);
        let u = Mat::from_integers(q(), &[&[7]]);
        let z = sylvester_solve(&a, &b, &u).unwrap();
        assert_eq!(z, u);
    }

    #[test]
    fn sylvester_zero_rhs() {
        let a = Mat::from_integers(q(), &[&[0, 1], &[-1, 0]]);
        let b = Mat::from_integers(q(), &[&[2]]);
        let u = Mat::zeros(q(), 2, 1);
        assert_eq!(sylvester_solve(&a, &b, &u).unwrap(), u);
    }

    #[test]
    fn sylvester_random_residuals() {
        // coprime pair: residual vanishes exactly and the operator kernel is trivial
        let a = companion(&Poly::from_integers(q(), &[1, 0, 1])).unwrap();
        let b = companion(&Poly::from_integers(q(), &[-2, 0, 0, 1])).unwrap();
        let u = Mat::from_integers(q(), &[&[1, -3, 2], &[0, 4, 5]]);
        let z = sylvester_solve(&a, &b, &u).unwrap();
        let residual = &(&(&a * &z) - &(&z * &b)) + &u;
        assert!(residual.is_zero());
        assert!(kernel(&sylvester_operator(&a, &b)).is_empty());
    }

    #[test]
    fn sylvester_rejects_common_factor() {
        let a = Mat::zeros(q(), 1, 1);
        let b = Mat::zeros(q(), 1, 1);
        let u = Mat::from_integers(q(), &[&[1]]);
        assert!(matches!(sylvester_solve(&a, &b, &u), Err(Error::NotCoprime)));
    }

    #[test]
    fn block_clear_diagonal_input() {
        let shape = BlockShape::new(vec![1, 1]).unwrap();
        let m = Mat::from_integers(q(), &[&[1, 0], &[0, 2]]);
        let (p, b) = block_clear(&m, &shape).unwrap();
        assert_eq!(p, Mat::identity(q(), 2));
        assert_eq!(b, m);
    }

    #[test]
    fn block_clear_two_blocks() {
        let shape = BlockShape::new(vec![1, 1]).unwrap();
        let m = Mat::from_integers(q(), &[&[1, 5], &[0, 2]]);
        let (p, b) = block_clear(&m, &shape).unwrap();
        assert_eq!(b, Mat::from_integers(q(), &[&[1, 0], &[0, 2]]));
        let p_inv = crate::matrix::invert(&p).unwrap();
        assert_eq!(&(&p_inv * &m) * &p, b);
    }

    #[test]
    fn block_clear_equal_blocks_untouched() {
        let shape = BlockShape::new(vec![1, 1]).unwrap();
        let m = Mat::from_integers(q(), &[&[3, 5], &[0, 3]]);
        let (p, b) = block_clear(&m, &shape).unwrap();
        assert_eq!(p, Mat::identity(q(), 2));
        assert_eq!(b, m);
    }

    #[test]
    fn block_clear_rejects_lower_junk() {
        let shape = BlockShape::new(vec![1, 1]).unwrap();
        let m = Mat::from_integers(q(), &[&[1, 0], &[4, 2]]);
        assert!(block_clear(&m, &shape).is_err());
    }

    #[test]
    fn block_clear_three_blocks_mixed() {
        // blocks with minpolys X-1, X-1, X-2: only pairs (0,2) and (1,2) clear
        let shape = BlockShape::new(vec![1, 1, 1]).unwrap();
        let m = Mat::from_integers(q(), &[&[1, 4, 7], &[0, 1, 9], &[0, 0, 2]]);
        let (p, b) = block_clear(&m, &shape).unwrap();
        let p_inv = crate::matrix::invert(&p).unwrap();
        assert_eq!(&(&p_inv * &m) * &p, b);
        assert!(b.at(0, 2).is_zero());
        assert!(b.at(1, 2).is_zero());
        assert_eq!(b.at(0, 1), &q().integer(4));
    }

    #[test]
    fn pascal_unit_triangular_invertible() {
        for g in -2..=2i64 {
            for n in 1..=3u32 {
                let f = Poly::from_integers(q(), &[2, 1, 0, 1]);
                let s = pascal_intertwiner(&q().integer(g), &f, n, n).unwrap();
                assert!(crate::matrix::invert(&s).is_some());
            }
        }
    }
}
