//! Construction of the canonical family of linked representations.
//!
//! From a monic irreducible p1, a length m >= 2 and a weakly decreasing
//! exponent tuple s, the module data (A, E, T) is assembled in the power
//! basis of F[X]/(p_i^{s_i}): A is block diagonal with companion blocks
//! C_i = C_{p_i^{s_i}} where p_i = p1(X + i - 1), E shifts each block by
//! (i-1)I, and T carries the injective intertwiners B_i on the first block
//! superdiagonal. A full representation attaches to each basis vector of the
//! abelian ideal, of integer weight j, the operator g^j(E) T^j.

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::linalg::{companion, pascal_intertwiner, BlockShape};
use crate::matrix::{commutator, minpoly, rank, Mat};
use crate::poly::Poly;

/// Presentation of the algebra `<x> ⋉ a`: one ad-x eigenvalue per basis
/// vector of `a`, and optionally a distinguished vector expected to have
/// eigenvalue 1 after normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub field: FieldSpec,
    pub eigenvalues: Vec<FieldElem>,
    pub v_index: Option<usize>,
}

impl AlgebraSpec {
    pub fn new(
        field: FieldSpec,
        eigenvalues: Vec<FieldElem>,
        v_index: Option<usize>,
    ) -> Result<AlgebraSpec> {
        for e in &eigenvalues {
            if e.field() != field {
                return Err(Error::FieldMismatch(
                    field.to_string(),
                    e.field().to_string(),
                ));
            }
        }
        if let Some(v) = v_index {
            match eigenvalues.get(v) {
                None => {
                    return Err(Error::InvalidInput(format!(
                        "v_index {v} out of range (dim a = {})",
                        eigenvalues.len()
                    )))
                }
                Some(e) if e.is_zero() => {
                    return Err(Error::InvalidInput(
                        "the distinguished vector must have nonzero eigenvalue".into(),
                    ))
                }
                _ => {}
            }
        }
        Ok(AlgebraSpec {
            field,
            eigenvalues,
            v_index,
        })
    }

    pub fn dim_a(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Indices of basis vectors with eigenvalue zero (the center beyond x).
    pub fn zero_weight_indices(&self) -> Vec<usize> {
        (0..self.dim_a())
            .filter(|&i| self.eigenvalues[i].is_zero())
            .collect()
    }

    /// Indices spanning the nilpotent radical: nonzero eigenvalue.
    pub fn nilpotent_indices(&self) -> Vec<usize> {
        (0..self.dim_a())
            .filter(|&i| !self.eigenvalues[i].is_zero())
            .collect()
    }

    /// Rescales x so the distinguished vector gets eigenvalue 1; returns the
    /// rescaled presentation and the original eigenvalue.
    pub fn rescaled_to_unit_v(&self) -> Result<(AlgebraSpec, FieldElem)> {
        let v = self.v_index.ok_or_else(|| {
            Error::InvalidInput("no distinguished vector to normalize".into())
        })?;
        let gamma = self.eigenvalues[v].clone();
        let gamma_inv = gamma.inv()?;
        let eigenvalues = self.eigenvalues.iter().map(|e| e * &gamma_inv).collect();
        Ok((
            AlgebraSpec {
                field: self.field,
                eigenvalues,
                v_index: self.v_index,
            },
            gamma,
        ))
    }
}

/// A finite dimensional representation of `<x> ⋉ a`: one matrix for x and
/// one per basis vector of `a`, all of the same square size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub algebra: AlgebraSpec,
    pub dim: usize,
    pub mat_x: Mat,
    pub mat_a: Vec<Mat>,
}

impl Representation {
    pub fn new(algebra: AlgebraSpec, mat_x: Mat, mat_a: Vec<Mat>) -> Result<Representation> {
        let dim = mat_x.rows();
        let field = algebra.field;
        if !mat_x.is_square() || mat_x.field() != field {
            return Err(Error::Dimension("x matrix must be square over the algebra field".into()));
        }
        if mat_a.len() != algebra.dim_a() {
            return Err(Error::Dimension(format!(
                "expected {} matrices for a, got {}",
                algebra.dim_a(),
                mat_a.len()
            )));
        }
        for m in &mat_a {
            if m.rows() != dim || m.cols() != dim || m.field() != field {
                return Err(Error::Dimension("all generator matrices must agree in size and field".into()));
            }
        }
        Ok(Representation {
            algebra,
            dim,
            mat_x,
            mat_a,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field
    }

    /// Conjugates every generator matrix: M -> P^{-1} M P.
    pub fn conjugated(&self, p: &Mat) -> Result<Representation> {
        let p_inv = crate::matrix::invert(p)
            .ok_or_else(|| Error::InvalidInput("conjugating matrix is singular".into()))?;
        let conj = |m: &Mat| &(&p_inv * m) * p;
        Representation::new(
            self.algebra.clone(),
            conj(&self.mat_x),
            self.mat_a.iter().map(conj).collect(),
        )
    }
}

/// The canonical invariant tuple of a linked representation: the base
/// polynomial p1, the nilpotency length m, the exponents s_1 >= ... >= s_m,
/// and for each integer weight j the polynomial attached to every basis
/// vector of that weight, with the distinguished vector carrying 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkedInvariants {
    pub field: FieldSpec,
    pub p1: Poly,
    pub m: usize,
    pub s: Vec<u32>,
    /// gmaps[j] lists (basis index, polynomial of degree < d*s_{j+1}),
    /// sorted by basis index, covering exactly the weight-j basis vectors.
    pub gmaps: Vec<Vec<(usize, Poly)>>,
    pub v_index: usize,
}

impl LinkedInvariants {
    pub fn degree(&self) -> usize {
        self.p1.degree().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.degree() * self.s.iter().map(|&x| x as usize).sum::<usize>()
    }

    /// Structural validation against an algebra presentation.
    pub fn validate(&self, alg: &AlgebraSpec) -> Result<()> {
        if self.field != alg.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                alg.field.to_string(),
            ));
        }
        self.p1.require_monic()?;
        self.p1.require_irreducible()?;
        if self.m < 2 {
            return Err(Error::InvalidInput("m must be at least 2".into()));
        }
        if self.s.len() != self.m {
            return Err(Error::InvalidInput(format!(
                "expected {} exponents, got {}",
                self.m,
                self.s.len()
            )));
        }
        if self.s.iter().any(|&x| x == 0) {
            return Err(Error::InvalidInput("every exponent must be >= 1".into()));
        }
        if self.s.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput("s must be weakly decreasing".into()));
        }
        if self.gmaps.len() != self.m {
            return Err(Error::InvalidInput(format!(
                "expected {} weight classes in gmaps, got {}",
                self.m,
                self.gmaps.len()
            )));
        }
        if alg.v_index != Some(self.v_index) {
            return Err(Error::InvalidInput(
                "the algebra's distinguished vector must match v_index".into(),
            ));
        }
        let d = self.degree();
        let mut seen = vec![false; alg.dim_a()];
        for (j, entries) in self.gmaps.iter().enumerate() {
            // weight j carries polynomials of degree < d * s_{j+1} (1-based s)
            let bound = d * self.s[j] as usize;
            let mut last: Option<usize> = None;
            for (idx, g) in entries {
                if *idx >= alg.dim_a() {
                    return Err(Error::InvalidInput(format!(
                        "gmaps index {idx} out of range"
                    )));
                }
                if seen[*idx] {
                    return Err(Error::InvalidInput(format!(
                        "basis vector {idx} appears twice in gmaps"
                    )));
                }
                seen[*idx] = true;
                if let Some(prev) = last {
                    if prev >= *idx {
                        return Err(Error::InvalidInput(
                            "gmaps entries must be sorted by basis index".into(),
                        ));
                    }
                }
                last = Some(*idx);
                if g.field() != self.field {
                    return Err(Error::FieldMismatch(
                        self.field.to_string(),
                        g.field().to_string(),
                    ));
                }
                if g.degree().map_or(false, |deg| deg >= bound) {
                    return Err(Error::InvalidInput(format!(
                        "polynomial for basis vector {idx} must have degree < {bound}"
                    )));
                }
                if alg.eigenvalues[*idx] != self.field.integer(j as i64) {
                    return Err(Error::InvalidInput(format!(
                        "basis vector {idx} listed at weight {j} but its eigenvalue differs"
                    )));
                }
                if *idx == self.v_index {
                    if j != 1 {
                        return Err(Error::InvalidInput(
                            "the distinguished vector must sit at weight 1".into(),
                        ));
                    }
                    if !(g.degree() == Some(0) && g.coeff(0).is_one()) {
                        return Err(Error::InvalidInput(
                            "the distinguished vector must carry the constant polynomial 1".into(),
                        ));
                    }
                }
            }
        }
        // coverage: every basis vector of integer weight < m appears exactly once
        for (idx, seen_it) in seen.iter().enumerate() {
            let lambda = &alg.eigenvalues[idx];
            let is_small_integer = (0..self.m)
                .any(|j| *lambda == self.field.integer(j as i64));
            if is_small_integer && !seen_it {
                return Err(Error::InvalidInput(format!(
                    "basis vector {idx} has integer weight below m but no polynomial"
                )));
            }
            if !is_small_integer && *seen_it {
                return Err(Error::InvalidInput(format!(
                    "basis vector {idx} has weight outside 0..m and cannot carry a polynomial"
                )));
            }
        }
        if !seen.get(self.v_index).copied().unwrap_or(false) {
            return Err(Error::InvalidInput(
                "the distinguished vector is missing from gmaps".into(),
            ));
        }
        Ok(())
    }
}

/// The matrices (A, E, T) of one module together with their block shape.
#[derive(Debug, Clone)]
pub struct ModuleData {
    pub field: FieldSpec,
    pub p1: Poly,
    pub d: usize,
    pub m: usize,
    pub s: Vec<u32>,
    pub polys: Vec<Poly>,
    pub shape: BlockShape,
    pub a: Mat,
    pub e: Mat,
    pub t: Mat,
    pub warnings: Vec<String>,
}

impl ModuleData {
    pub fn total_dim(&self) -> usize {
        self.shape.total()
    }

    pub fn t_power(&self, j: usize) -> Mat {
        let mut acc = Mat::identity(self.field, self.total_dim());
        for _ in 0..j {
            acc = &acc * &self.t;
        }
        acc
    }
}

/// Hypothesis check for characteristic p: p must be at least m and p1 must
/// have a free shift orbit. Returns a description of the violation, if any.
pub fn charp_violation(field: FieldSpec, p1: &Poly, m: usize) -> Option<String> {
    let p = field.characteristic();
    if p == 0 {
        return None;
    }
    if (p as usize) < m {
        return Some(format!(
            "characteristic {p} is smaller than the nilpotency length {m}"
        ));
    }
    if !p1.shift_stabilizer_trivial() {
        return Some(format!(
            "base polynomial {p1} is invariant under X -> X + 1, so its shift orbit collapses"
        ));
    }
    None
}

/// Builds the module data from (p1, m, s).
///
/// Verifies the superdiagonal intertwining relation B_i (C_i + I) = C_{i-1} B_i
/// before returning. In characteristic p a violated classification
/// hypothesis is recorded as a warning: the construction itself is valid
/// over any field.
pub fn build_module_data(p1: &Poly, m: usize, s: &[u32]) -> Result<ModuleData> {
    p1.require_monic()?;
    p1.require_irreducible()?;
    if m < 2 {
        return Err(Error::InvalidInput("m must be at least 2".into()));
    }
    if s.len() != m {
        return Err(Error::InvalidInput(format!(
            "expected {m} exponents, got {}",
            s.len()
        )));
    }
    if s.iter().any(|&x| x == 0) {
        return Err(Error::InvalidInput("every exponent must be >= 1".into()));
    }
    if s.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput("s must be weakly decreasing".into()));
    }
    let field = p1.field();
    let d = p1.degree().unwrap();
    let mut warnings = Vec::new();
    if let Some(v) = charp_violation(field, p1, m) {
        warnings.push(format!(
            "classification hypothesis fails over {field}: {v}"
        ));
    }

    let polys: Vec<Poly> = (0..m)
        .map(|i| p1.shift(&field.integer(i as i64)))
        .collect::<Result<_>>()?;
    let shape = BlockShape::new(s.iter().map(|&si| d * si as usize).collect())?;
    let total = shape.total();

    let mut a = Mat::zeros(field, total, total);
    let mut e = Mat::zeros(field, total, total);
    for i in 0..m {
        let ci = companion(&polys[i].pow(s[i]))?;
        shape.set_block(&mut a, i, i, &ci);
        let mut ei = ci;
        let shift = field.integer(i as i64);
        for k in 0..shape.sizes()[i] {
            let cur = ei.at(k, k).clone();
            ei.set(k, k, &cur + &shift);
        }
        shape.set_block(&mut e, i, i, &ei);
    }

    let mut t = Mat::zeros(field, total, total);
    for i in 1..m {
        // block (i-1, i): S(-1, p_{i-1}, s_{i-1}, s_i)
        let b = pascal_intertwiner(&field.integer(-1), &polys[i - 1], s[i - 1], s[i])?;
        if rank(&b) != shape.sizes()[i] {
            return Err(Error::Inconsistent(format!(
                "superdiagonal block {i} is not injective"
            )));
        }
        let ci = shape.block(&a, i, i);
        let ci_prev = shape.block(&a, i - 1, i - 1);
        let lhs = &b * &(&ci + &Mat::identity(field, ci.rows()));
        let rhs = &ci_prev * &b;
        if lhs != rhs {
            return Err(Error::Inconsistent(format!(
                "intertwining relation fails at block {i}"
            )));
        }
        shape.set_block(&mut t, i - 1, i, &b);
    }

    Ok(ModuleData {
        field,
        p1: p1.clone(),
        d,
        m,
        s: s.to_vec(),
        polys,
        shape,
        a,
        e,
        t,
        warnings,
    })
}

/// Builds the representation attached to an invariant tuple: x acts as A,
/// a weight-j basis vector u acts as g^j_u(E) T^j, and vectors of weight
/// outside 0..m act as zero.
pub fn build_representation(inv: &LinkedInvariants, alg: &AlgebraSpec) -> Result<Representation> {
    inv.validate(alg)?;
    if alg.eigenvalues[inv.v_index] != alg.field.one() {
        return Err(Error::InvalidInput(
            "the distinguished vector must have eigenvalue 1; rescale x first \
             (see AlgebraSpec::rescaled_to_unit_v)"
                .into(),
        ));
    }
    let data = build_module_data(&inv.p1, inv.m, &inv.s)?;
    let total = data.total_dim();
    let mut mat_a: Vec<Mat> = vec![Mat::zeros(alg.field, total, total); alg.dim_a()];
    for (j, entries) in inv.gmaps.iter().enumerate() {
        let tj = data.t_power(j);
        for (idx, g) in entries {
            mat_a[*idx] = &data.e.apply_poly(g) * &tj;
        }
    }
    Representation::new(alg.clone(), data.a.clone(), mat_a)
}

/// One violated defining relation of a representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomViolation {
    /// [x, a_i] != lambda_i a_i
    Weight { index: usize },
    /// [a_i, a_j] != 0
    Commutator { i: usize, j: usize },
}

impl std::fmt::Display for HomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HomViolation::Weight { index } => {
                write!(f, "[x, a_{index}] differs from eigenvalue * a_{index}")
            }
            HomViolation::Commutator { i, j } => write!(f, "[a_{i}, a_{j}] is nonzero"),
        }
    }
}

/// Checks the defining relations of `<x> ⋉ a` on a representation; the
/// returned list is empty exactly when the matrices form a representation.
pub fn verify_homomorphism(rep: &Representation) -> Vec<HomViolation> {
    let mut violations = Vec::new();
    for (i, m) in rep.mat_a.iter().enumerate() {
        let bracket = commutator(&rep.mat_x, m);
        if bracket != m.scale(&rep.algebra.eigenvalues[i]) {
            violations.push(HomViolation::Weight { index: i });
        }
    }
    for i in 0..rep.mat_a.len() {
        for j in i + 1..rep.mat_a.len() {
            if !commutator(&rep.mat_a[i], &rep.mat_a[j]).is_zero() {
                violations.push(HomViolation::Commutator { i, j });
            }
        }
    }
    violations
}

/// The characteristic-p fixture on which classification must fail: over
/// GF(p) the polynomial f = X^p - X - 1 is irreducible and invariant under
/// X -> X + 1; with S = S(-1, f, 1, 1),
/// M = [[C_f, C_f], [0, C_f]] and N = [[0, S], [0, 0]] satisfy [M, N] = N
/// and minpoly(M) = f^2, so x fails to act semisimply.
pub fn build_counterexample_charp(p: u64) -> Result<Representation> {
    let field = FieldSpec::prime_field(p)?;
    let mut coeffs = vec![field.integer(-1), field.integer(-1)];
    coeffs.resize(p as usize, field.zero());
    coeffs.push(field.one());
    let f = Poly::from_coeffs(field, coeffs)?;
    f.require_irreducible()?;
    debug_assert!(!f.shift_stabilizer_trivial());

    let c = companion(&f)?;
    let s = pascal_intertwiner(&field.integer(-1), &f, 1, 1)?;
    let n = p as usize;
    let mut m_mat = Mat::zeros(field, 2 * n, 2 * n);
    m_mat.set_block(0, 0, &c);
    m_mat.set_block(0, n, &c);
    m_mat.set_block(n, n, &c);
    let mut n_mat = Mat::zeros(field, 2 * n, 2 * n);
    n_mat.set_block(0, n, &s);

    if commutator(&m_mat, &n_mat) != n_mat {
        return Err(Error::Inconsistent("[M, N] != N on the fixture".into()));
    }
    if minpoly(&m_mat) != f.pow(2) {
        return Err(Error::Inconsistent(
            "minimal polynomial of M is not f^2".into(),
        ));
    }

    let alg = AlgebraSpec::new(field, vec![field.one()], Some(0))?;
    Representation::new(alg, m_mat, vec![n_mat])
}
