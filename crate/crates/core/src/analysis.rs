//! Analysis of arbitrary representations of `<x> ⋉ a`: admissibility, the
//! nilpotency series and its factors, uniseriality of factor actions, the
//! randomized search for a uniserializing element, and the linked verdict.
//!
//! The nilpotency series is computed as iterated common kernels of the
//! nilpotent part: the bottom term is the joint kernel of all weight-nonzero
//! generators, and the construction recurses on the quotient. Quotients are
//! realized concretely by extending the filtration basis with standard basis
//! vectors and inducing the action on the complement coordinates; every
//! invariant reported downstream depends only on similarity classes, so the
//! complement choice is immaterial.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::construction::Representation;
use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::linalg::{common_kernel, BlockShape};
use crate::matrix::{commutator, invert, minpoly, rank, Mat};
use crate::poly::Poly;

/// Parameters for the randomized searches; a fixed seed makes every verdict
/// reproducible.
#[derive(Debug, Clone, Copy)]
pub struct SearchParams {
    pub trials: u32,
    pub seed: u64,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            trials: 20,
            seed: 0,
        }
    }
}

impl SearchParams {
    pub fn with_seed(seed: u64) -> Self {
        SearchParams {
            seed,
            ..SearchParams::default()
        }
    }

    pub fn rng(&self) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(self.seed)
    }
}

/// Coordinates of an element y = c_x * x + sum c_i * a_i with every a_i of
/// weight zero; c_x is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YCoords {
    pub x_coeff: FieldElem,
    pub a0: Vec<(usize, FieldElem)>,
}

impl YCoords {
    pub fn x_only(field: FieldSpec) -> YCoords {
        YCoords {
            x_coeff: field.one(),
            a0: Vec::new(),
        }
    }

    pub fn matrix(&self, rep: &Representation) -> Mat {
        let mut m = rep.mat_x.scale(&self.x_coeff);
        for (idx, c) in &self.a0 {
            m = &m + &rep.mat_a[*idx].scale(c);
        }
        m
    }

    /// ad-y eigenvalue of the basis vector `idx`: the zero-weight summands
    /// commute with everything, so only the x part contributes.
    pub fn eigenvalue(&self, rep: &Representation, idx: usize) -> FieldElem {
        &self.x_coeff * &rep.algebra.eigenvalues[idx]
    }

    pub fn scaled(&self, c: &FieldElem) -> YCoords {
        YCoords {
            x_coeff: &self.x_coeff * c,
            a0: self.a0.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }
}

/// The filtration 0 ⊂ U^(1) ⊂ ... ⊂ U^(m) = U together with an adapted basis.
#[derive(Debug, Clone)]
pub struct NilpotencySeries {
    pub length: usize,
    /// Cumulative dimensions of the filtration steps.
    pub filtration_dims: Vec<usize>,
    pub factor_dims: Vec<usize>,
    /// Columns of `adapted` refine the filtration: the first
    /// filtration_dims[i] columns span U^(i+1).
    pub adapted: Mat,
    pub adapted_inv: Mat,
    pub shape: BlockShape,
}

impl NilpotencySeries {
    /// Basis of the i-th filtration subspace (1-based level).
    pub fn filtration_basis(&self, level: usize) -> Mat {
        let dim = self.filtration_dims[level - 1];
        self.adapted.submatrix(0, self.adapted.rows(), 0, dim)
    }

    /// Conjugate of a generator matrix into the adapted basis; block upper
    /// triangular for every element of the algebra.
    pub fn induced(&self, m: &Mat) -> Mat {
        &(&self.adapted_inv * m) * &self.adapted
    }

    /// Induced action on the i-th nilpotency factor (1-based).
    pub fn factor_action(&self, m: &Mat, level: usize) -> Mat {
        self.shape.block(&self.induced(m), level - 1, level - 1)
    }
}

/// The induced map of a generator from factor `level` to factor `level - 1`.
#[derive(Debug, Clone)]
pub struct LevelMap {
    pub level: usize,
    pub v_index: usize,
    pub matrix: Mat,
}

impl LevelMap {
    pub fn is_injective(&self) -> bool {
        rank(&self.matrix) == self.matrix.cols()
    }
}

/// A representation is admissible when every weight-nonzero generator acts
/// nilpotently.
pub fn check_admissible(rep: &Representation) -> bool {
    rep.algebra.nilpotent_indices().iter().all(|&i| {
        let mp = minpoly(&rep.mat_a[i]);
        mp.coeffs()[..mp.coeffs().len().saturating_sub(1)]
            .iter()
            .all(|c| c.is_zero())
    })
}

pub fn nilpotency_series(rep: &Representation) -> Result<NilpotencySeries> {
    if !check_admissible(rep) {
        return Err(Error::NotAdmissible(
            "a weight-nonzero generator acts non-nilpotently".into(),
        ));
    }
    let field = rep.field();
    let t = rep.dim;
    if t == 0 {
        return Err(Error::InvalidInput("zero-dimensional module".into()));
    }
    let nil = rep.algebra.nilpotent_indices();

    // Quotient state: generator matrices on the current quotient and the
    // lift of the quotient basis back to the original coordinates.
    let mut gens: Vec<Mat> = nil.iter().map(|&i| rep.mat_a[i].clone()).collect();
    let mut all_gens: Vec<Mat> = std::iter::once(rep.mat_x.clone())
        .chain(rep.mat_a.iter().cloned())
        .collect();
    let mut lift = Mat::identity(field, t);
    let mut adapted_cols: Vec<Vec<FieldElem>> = Vec::new();
    let mut factor_dims = Vec::new();

    loop {
        let tq = lift.cols();
        let refs: Vec<&Mat> = gens.iter().collect();
        let ker = common_kernel(field, &refs, tq);
        if ker.is_empty() {
            return Err(Error::NotAdmissible(
                "the weight-nonzero part has trivial common kernel on a nonzero quotient".into(),
            ));
        }
        for v in &ker {
            adapted_cols.push(lift.mul_vec(v));
        }
        factor_dims.push(ker.len());
        if ker.len() == tq {
            break;
        }
        // complement: standard quotient coordinates extending the kernel
        let kmat = Mat::from_columns(field, &ker);
        let mut cols: Vec<Vec<FieldElem>> = ker.clone();
        let mut chosen = Vec::new();
        for j in 0..tq {
            let mut e = vec![field.zero(); tq];
            e[j] = field.one();
            let candidate: Vec<Vec<FieldElem>> =
                cols.iter().cloned().chain(std::iter::once(e.clone())).collect();
            if crate::matrix::span_dim(field, &candidate) > cols.len() {
                cols.push(e);
                chosen.push(j);
            }
        }
        let p = Mat::from_columns(field, &cols);
        let p_inv = invert(&p).ok_or_else(|| {
            Error::Inconsistent("kernel basis failed to extend to a basis".into())
        })?;
        let k = kmat.cols();
        // induced generator action on the quotient: lower-right block of
        // P^{-1} G P; the lower-left block vanishes because the kernel is
        // invariant under the whole algebra.
        let mut new_gens = Vec::with_capacity(gens.len());
        for g in &gens {
            let conj = &(&p_inv * g) * &p;
            if !conj.submatrix(k, tq, 0, k).is_zero() {
                return Err(Error::Inconsistent(
                    "common kernel is not invariant; the input is not a representation".into(),
                ));
            }
            new_gens.push(conj.submatrix(k, tq, k, tq));
        }
        // check invariance for every generator, including x and weight zero
        let mut new_all = Vec::with_capacity(all_gens.len());
        for g in &all_gens {
            let conj = &(&p_inv * g) * &p;
            if !conj.submatrix(k, tq, 0, k).is_zero() {
                return Err(Error::Inconsistent(
                    "filtration step is not invariant; the input is not a representation".into(),
                ));
            }
            new_all.push(conj.submatrix(k, tq, k, tq));
        }
        gens = new_gens;
        all_gens = new_all;
        let lift_cols: Vec<Vec<FieldElem>> = (k..tq).map(|j| p.col_vec(j)).collect();
        let complement = Mat::from_columns(field, &lift_cols);
        lift = &lift * &complement;
    }

    let adapted = Mat::from_columns(field, &adapted_cols);
    let adapted_inv = invert(&adapted)
        .ok_or_else(|| Error::Inconsistent("adapted basis is singular".into()))?;
    let shape = BlockShape::new(factor_dims.clone())?;
    let mut filtration_dims = Vec::with_capacity(factor_dims.len());
    let mut acc = 0;
    for d in &factor_dims {
        acc += d;
        filtration_dims.push(acc);
    }
    let series = NilpotencySeries {
        length: factor_dims.len(),
        filtration_dims,
        factor_dims,
        adapted,
        adapted_inv,
        shape,
    };
    // the adapted basis must put every generator in block upper form
    for g in std::iter::once(&rep.mat_x).chain(rep.mat_a.iter()) {
        if !series.shape.is_block_upper(&series.induced(g)) {
            return Err(Error::Inconsistent(
                "induced generator is not block upper triangular".into(),
            ));
        }
    }
    Ok(series)
}

/// Induced map of the basis vector `v_index` from factor `level` to factor
/// `level - 1`, for 2 <= level <= length.
pub fn level_map(
    rep: &Representation,
    series: &NilpotencySeries,
    v_index: usize,
    level: usize,
) -> Result<LevelMap> {
    if level < 2 || level > series.length {
        return Err(Error::InvalidInput(format!(
            "level {level} out of range 2..={}",
            series.length
        )));
    }
    if v_index >= rep.algebra.dim_a() {
        return Err(Error::InvalidInput(format!("no basis vector {v_index}")));
    }
    let induced = series.induced(&rep.mat_a[v_index]);
    Ok(LevelMap {
        level,
        v_index,
        matrix: series.shape.block(&induced, level - 2, level - 1),
    })
}

/// Uniseriality of the F[X]-module defined by a square matrix: the module is
/// uniserial exactly when the matrix is cyclic (minimal polynomial of full
/// degree) with prime-power minimal polynomial; returns that decomposition.
pub fn uniserial_fx(m: &Mat) -> Result<Option<(Poly, u32)>> {
    if !m.is_square() {
        return Err(Error::Dimension("uniserial_fx needs a square matrix".into()));
    }
    if m.rows() == 0 {
        return Err(Error::InvalidInput("zero-dimensional module".into()));
    }
    let mp = minpoly(m);
    if mp.degree() != Some(m.rows()) {
        return Ok(None);
    }
    mp.prime_power_decompose()
}

/// Searches for y in `<x> + a_0` making every nilpotency factor a uniserial
/// F[y]-module.
///
/// When the zero-weight part vanishes the answer is deterministic: y = x.
/// Otherwise (over Q only) y = x is tried first and then normal combinations
/// x + sum c_i a_i with nonzero integer coefficients drawn from a window
/// that widens with each trial; all but finitely many choices succeed
/// whenever any does.
pub fn find_uniserializing_element(
    rep: &Representation,
    series: &NilpotencySeries,
    params: &SearchParams,
) -> Result<Option<YCoords>> {
    let field = rep.field();
    let a0 = rep.algebra.zero_weight_indices();
    let factor_ok = |y: &YCoords| -> Result<bool> {
        let my = y.matrix(rep);
        for level in 1..=series.length {
            if uniserial_fx(&series.factor_action(&my, level))?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    if a0.is_empty() {
        let y = YCoords::x_only(field);
        return if factor_ok(&y)? { Ok(Some(y)) } else { Ok(None) };
    }
    if field != FieldSpec::Rationals {
        return Err(Error::UniserializerUnsupported(format!(
            "over the finite field {field} with a nonzero zero-weight part, a single \
             uniserializing element need not exist; classification is restricted to \
             infinite base fields in this situation"
        )));
    }
    let x_only = YCoords::x_only(field);
    if factor_ok(&x_only)? {
        return Ok(Some(x_only));
    }
    let mut rng = params.rng();
    for trial in 0..params.trials {
        let bound = 2 + trial as i64;
        let coeffs: Vec<(usize, FieldElem)> = a0
            .iter()
            .map(|&i| {
                // normal sample: every coefficient nonzero
                let mut c = 0i64;
                while c == 0 {
                    c = rng.gen_range(-bound..=bound);
                }
                (i, field.integer(c))
            })
            .collect();
        let y = YCoords {
            x_coeff: field.one(),
            a0: coeffs,
        };
        if factor_ok(&y)? {
            return Ok(Some(y));
        }
    }
    Ok(None)
}

/// Confidence of a linked verdict: negative answers obtained by exhausting
/// randomized trials are one-sided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Confidence {
    Exact,
    ProbabilisticNegative,
}

/// Outcome of the linked test.
#[derive(Debug, Clone)]
pub struct LinkedVerdict {
    pub admissible: bool,
    pub length: Option<usize>,
    pub filtration_dims: Vec<usize>,
    /// per-factor uniserial invariants via the chosen y, when one was found
    pub factors: Vec<Option<(Poly, u32)>>,
    pub linked: bool,
    pub y: Option<YCoords>,
    pub confidence: Confidence,
}

/// Decides whether a representation is linked: admissible with every
/// nilpotency factor uniserial over the abelian quotient algebra.
///
/// Uniseriality of each factor is certified through a single element y: a
/// factor chain for F[y] is a fortiori a chain for the full quotient
/// algebra. The induced zero-weight actions are checked to commute with the
/// induced x on each factor.
pub fn is_linked(rep: &Representation, params: &SearchParams) -> Result<LinkedVerdict> {
    if !check_admissible(rep) {
        return Ok(LinkedVerdict {
            admissible: false,
            length: None,
            filtration_dims: Vec::new(),
            factors: Vec::new(),
            linked: false,
            y: None,
            confidence: Confidence::Exact,
        });
    }
    let series = nilpotency_series(rep)?;
    // sanity: the induced abelian actions commute on every factor
    for level in 1..=series.length {
        let fx = series.factor_action(&rep.mat_x, level);
        for &i in &rep.algebra.zero_weight_indices() {
            let fa = series.factor_action(&rep.mat_a[i], level);
            if !commutator(&fx, &fa).is_zero() {
                return Err(Error::Inconsistent(
                    "induced factor actions do not commute".into(),
                ));
            }
        }
    }
    let y = find_uniserializing_element(rep, &series, params)?;
    let mut factors = vec![None; series.length];
    let linked = match &y {
        Some(y) => {
            let my = y.matrix(rep);
            for level in 1..=series.length {
                factors[level - 1] = uniserial_fx(&series.factor_action(&my, level))?;
            }
            factors.iter().all(|f| f.is_some())
        }
        None => false,
    };
    let exhausted_random_search = y.is_none()
        && rep.field() == FieldSpec::Rationals
        && !rep.algebra.zero_weight_indices().is_empty();
    Ok(LinkedVerdict {
        admissible: true,
        length: Some(series.length),
        filtration_dims: series.filtration_dims.clone(),
        factors,
        linked,
        y,
        confidence: if exhausted_random_search {
            Confidence::ProbabilisticNegative
        } else {
            Confidence::Exact
        },
    })
}

/// The set of ad-y eigenvalues whose weight spaces act nonzero.
pub fn weight_support(rep: &Representation, y: &YCoords) -> Vec<FieldElem> {
    let mut support: Vec<FieldElem> = Vec::new();
    for i in 0..rep.algebra.dim_a() {
        if rep.mat_a[i].is_zero() {
            continue;
        }
        let delta = y.eigenvalue(rep, i);
        if !support.contains(&delta) {
            support.push(delta);
        }
    }
    support
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{
        build_representation, AlgebraSpec, LinkedInvariants, Representation,
    };

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn poly_x() -> Poly {
        Poly::from_integers(q(), &[0, 1])
    }

    fn smallest_rep() -> Representation {
        let alg = AlgebraSpec::new(q(), vec![q().one()], Some(0)).unwrap();
        let inv = LinkedInvariants {
            field: q(),
            p1: poly_x(),
            m: 2,
            s: vec![1, 1],
            gmaps: vec![vec![], vec![(0, Poly::one(q()))]],
            v_index: 0,
        };
        build_representation(&inv, &alg).unwrap()
    }

    /// x = diag(1,1,0), v = E13 + E23: admissible, indecomposable, not
    /// linked (the first factor is 2-dimensional with scalar action).
    fn kernel_example() -> Representation {
        let alg = AlgebraSpec::new(q(), vec![q().one()], Some(0)).unwrap();
        let x = Mat::from_integers(q(), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        let v = Mat::from_integers(q(), &[&[0, 0, 1], &[0, 0, 1], &[0, 0, 0]]);
        Representation::new(alg, x, vec![v]).unwrap()
    }

    #[test]
    fn admissibility_examples() {
        assert!(check_admissible(&smallest_rep()));
        let alg = AlgebraSpec::new(q(), vec![q().one()], Some(0)).unwrap();
        let bad = Representation::new(
            alg.clone(),
            Mat::zeros(q(), 2, 2),
            vec![Mat::identity(q(), 2)],
        )
        .unwrap();
        assert!(!check_admissible(&bad));
        // all eigenvalues zero: vacuously admissible
        let trivial_alg = AlgebraSpec::new(q(), vec![q().zero()], None).unwrap();
        let trivial = Representation::new(
            trivial_alg,
            Mat::zeros(q(), 2, 2),
            vec![Mat::identity(q(), 2)],
        )
        .unwrap();
        assert!(check_admissible(&trivial));
    }

    #[test]
    fn series_of_smallest_rep() {
        let rep = smallest_rep();
        let series = nilpotency_series(&rep).unwrap();
        assert_eq!(series.length, 2);
        assert_eq!(series.filtration_dims, vec![1, 2]);
    }

    #[test]
    fn series_with_trivial_nilpotent_part() {
        let alg = AlgebraSpec::new(q(), vec![q().zero()], None).unwrap();
        let rep = Representation::new(
            alg,
            Mat::from_integers(q(), &[&[1, 1], &[0, 1]]),
            vec![Mat::zeros(q(), 2, 2)],
        )
        .unwrap();
        let series = nilpotency_series(&rep).unwrap();
        assert_eq!(series.length, 1);
        assert_eq!(series.filtration_dims, vec![2]);
    }

    #[test]
    fn series_of_kernel_example() {
        let series = nilpotency_series(&kernel_example()).unwrap();
        assert_eq!(series.length, 2);
        assert_eq!(series.filtration_dims, vec![2, 3]);
    }

    #[test]
    fn level_maps_of_construction() {
        let rep = smallest_rep();
        let series = nilpotency_series(&rep).unwrap();
        let lm = level_map(&rep, &series, 0, 2).unwrap();
        assert!(lm.is_injective());
        assert!(level_map(&rep, &series, 0, 3).is_err());
        // s = [2,1]: the level map equals the injective 2x1 intertwiner
        let alg = AlgebraSpec::new(q(), vec![q().one()], Some(0)).unwrap();
        let inv = LinkedInvariants {
            field: q(),
            p1: poly_x(),
            m: 2,
            s: vec![2, 1],
            gmaps: vec![vec![], vec![(0, Poly::one(q()))]],
            v_index: 0,
        };
        let rep = build_representation(&inv, &alg).unwrap();
        let series = nilpotency_series(&rep).unwrap();
        let lm = level_map(&rep, &series, 0, 2).unwrap();
        assert_eq!(lm.matrix, Mat::from_integers(q(), &[&[0], &[1]]));
    }

    #[test]
    fn zero_action_level_map() {
        let alg = AlgebraSpec::new(q(), vec![q().one(), q().one()], Some(0)).unwrap();
        let inv = LinkedInvariants {
            field: q(),
            p1: poly_x(),
            m: 2,
            s: vec![1, 1],
            gmaps: vec![
                vec![],
                vec![(0, Poly::one(q())), (1, Poly::zero(q()))],
            ],
            v_index: 0,
        };
        let rep = build_representation(&inv, &alg).unwrap();
        let series = nilpotency_series(&rep).unwrap();
        let lm = level_map(&rep, &series, 1, 2).unwrap();
        assert!(lm.matrix.is_zero());
    }

    #[test]
    fn uniserial_fx_examples() {
        // companion of an irreducible polynomial
        let c = crate::linalg::companion(&Poly::from_integers(q(), &[1, 0, 1])).unwrap();
        let (p, s) = uniserial_fx(&c).unwrap().unwrap();
        assert_eq!(p, Poly::from_integers(q(), &[1, 0, 1]));
        assert_eq!(s, 1);
        // non-cyclic
        assert!(uniserial_fx(&Mat::zeros(q(), 2, 2)).unwrap().is_none());
        // nilpotent Jordan block
        let n = Mat::from_integers(q(), &[&[0, 1], &[0, 0]]);
        let (p, s) = uniserial_fx(&n).unwrap().unwrap();
        assert_eq!(p, poly_x());
        assert_eq!(s, 2);
    }

    #[test]
    fn uniserializer_with_trivial_zero_weight_part() {
        let rep = smallest_rep();
        let series = nilpotency_series(&rep).unwrap();
        let y = find_uniserializing_element(&rep, &series, &SearchParams::default())
            .unwrap()
            .unwrap();
        assert_eq!(y, YCoords::x_only(q()));
    }

    #[test]
    fn uniserializer_needs_combination() {
        // x scalar, one zero-weight vector acting nilpotently: x alone is
        // not cyclic, x + c*a is for any c != 0.
        let alg = AlgebraSpec::new(q(), vec![q().zero()], None).unwrap();
        let rep = Representation::new(
            alg,
            Mat::identity(q(), 2),
            vec![Mat::from_integers(q(), &[&[0, 1], &[0, 0]])],
        )
        .unwrap();
        let series = nilpotency_series(&rep).unwrap();
        let y = find_uniserializing_element(&rep, &series, &SearchParams::default())
            .unwrap()
            .unwrap();
        assert!(!y.a0.is_empty());
        let my = y.matrix(&rep);
        let (p, s) = uniserial_fx(&series.factor_action(&my, 1)).unwrap().unwrap();
        assert_eq!(p, Poly::from_integers(q(), &[-1, 1]));
        assert_eq!(s, 2);
    }

    #[test]
    fn uniserializer_impossible() {
        // x and a0 both act diagonally with a repeated joint eigenvalue pair:
        // no linear combination is cyclic.
        let alg = AlgebraSpec::new(q(), vec![q().zero()], None).unwrap();
        let rep = Representation::new(
            alg,
            Mat::from_integers(q(), &[&[1, 0], &[0, 1]]),
            vec![Mat::from_integers(q(), &[&[2, 0], &[0, 2]])],
        )
        .unwrap();
        let series = nilpotency_series(&rep).unwrap();
        let y =
            find_uniserializing_element(&rep, &series, &SearchParams::default()).unwrap();
        assert!(y.is_none());
    }

    #[test]
    fn uniserializer_rejected_over_finite_field_with_center() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let alg = AlgebraSpec::new(f5, vec![f5.zero()], None).unwrap();
        let rep = Representation::new(
            alg,
            Mat::identity(f5, 2),
            vec![Mat::from_integers(f5, &[&[0, 1], &[0, 0]])],
        )
        .unwrap();
        let series = nilpotency_series(&rep).unwrap();
        assert!(matches!(
            find_uniserializing_element(&rep, &series, &SearchParams::default()),
            Err(Error::UniserializerUnsupported(_))
        ));
    }

    #[test]
    fn linked_verdicts() {
        let verdict = is_linked(&smallest_rep(), &SearchParams::default()).unwrap();
        assert!(verdict.linked);
        assert_eq!(verdict.length, Some(2));
        assert_eq!(verdict.confidence, Confidence::Exact);

        let verdict = is_linked(&kernel_example(), &SearchParams::default()).unwrap();
        assert!(verdict.admissible);
        assert!(!verdict.linked);
        assert_eq!(verdict.confidence, Confidence::Exact);

        // irreducible one-dimensional module: linked of length 1
        let alg = AlgebraSpec::new(q(), vec![q().one()], Some(0)).unwrap();
        let rep = Representation::new(
            alg,
            Mat::from_integers(q(), &[&[3]]),
            vec![Mat::zeros(q(), 1, 1)],
        )
        .unwrap();
        let verdict = is_linked(&rep, &SearchParams::default()).unwrap();
        assert!(verdict.linked);
        assert_eq!(verdict.length, Some(1));
    }

    #[test]
    fn linked_is_conjugation_invariant() {
        let rep = smallest_rep();
        let p = Mat::from_integers(q(), &[&[1, 2], &[1, 3]]);
        let conj = rep.conjugated(&p).unwrap();
        let v1 = is_linked(&rep, &SearchParams::default()).unwrap();
        let v2 = is_linked(&conj, &SearchParams::default()).unwrap();
        assert_eq!(v1.linked, v2.linked);
        assert_eq!(v1.length, v2.length);
        assert_eq!(v1.factors, v2.factors);
    }

    #[test]
    fn weight_support_examples() {
        let rep = smallest_rep();
        let y = YCoords::x_only(q());
        assert_eq!(weight_support(&rep, &y), vec![q().one()]);

        // add a zero-weight vector acting as a nonzero scalar
        let alg = AlgebraSpec::new(q(), vec![q().one(), q().zero()], Some(0)).unwrap();
        let inv = LinkedInvariants {
            field: q(),
            p1: poly_x(),
            m: 2,
            s: vec![1, 1],
            gmaps: vec![
                vec![(1, Poly::from_integers(q(), &[3]))],
                vec![(0, Poly::one(q()))],
            ],
            v_index: 0,
        };
        let rep = build_representation(&inv, &alg).unwrap();
        let support = weight_support(&rep, &y);
        assert!(support.contains(&q().zero()));
        assert!(support.contains(&q().one()));
        assert_eq!(support.len(), 2);
    }
}
