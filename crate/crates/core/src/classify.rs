//! Classification of linked representations into canonical invariant tuples.
//!
//! The pipeline brings a linked representation of nilpotency length m >= 2 to
//! the canonical form: the chosen y acts as the block diagonal of companion
//! matrices, the distinguished weight-1 vector acts as the canonical
//! superdiagonal intertwiner, and every other basis vector of integer weight
//! j acts as T^j g(E) for a unique polynomial g of bounded degree. The tuple
//! (m, p1, s, g-maps) together with the exact basis change is returned.
//!
//! Stages, each verified exactly before moving on:
//!  1. nilpotency series and a uniserializing element y; per-factor
//!     invariants (p_i, s_i);
//!  2. a distinguished eigenvector v with injective level-2 map; y is
//!     rescaled so v has weight 1; injectivity at every level is checked;
//!  3. the shift chain p_i = p1(X + i - 1) and monotonicity of s; in
//!     characteristic p the classification hypothesis (p at least m, free
//!     shift orbit) is enforced;
//!  4. per-factor Krylov bases make y act by companion blocks;
//!  5. block clearing turns y into the exact canonical block diagonal;
//!  6. the superdiagonal blocks of v are matched to the canonical
//!     intertwiners by a block-diagonal polynomial conjugation;
//!  7. every remaining generator is solved for its weight polynomial.
//!
//! The final basis change C satisfies: C * M(z) * C^{-1} is bit-identical to
//! the matrices rebuilt from the extracted invariants, for every generator z
//! (with y substituted for x).

use rand::Rng;

use crate::analysis::{
    find_uniserializing_element, level_map, nilpotency_series, uniserial_fx, NilpotencySeries,
    SearchParams, YCoords,
};
use crate::construction::{
    build_module_data, build_representation, charp_violation, verify_homomorphism, AlgebraSpec,
    LinkedInvariants, ModuleData, Representation,
};
use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::linalg::{block_clear, sylvester_operator};
use crate::matrix::{commutator, invert, kernel, rank, solve_unique, Mat};
use crate::poly::Poly;

/// Result of a successful classification.
#[derive(Debug, Clone)]
pub struct ClassificationResult {
    pub invariants: LinkedInvariants,
    /// Algebra presentation with ad-y eigenvalues (x rescaled by 1/gamma)
    /// and the recovered distinguished vector.
    pub algebra: AlgebraSpec,
    /// Conjugating every input matrix M by `basis_change` (as C M C^{-1}),
    /// with y substituted for x, reproduces the canonical matrices exactly.
    pub basis_change: Mat,
    /// The normalized uniserializing element, in (x, zero-weight) coordinates.
    pub y: YCoords,
    /// Eigenvalue of the distinguished vector before normalization.
    pub gamma: FieldElem,
    pub diagnostics: Vec<String>,
}

pub fn classify_linked(
    rep: &Representation,
    params: &SearchParams,
) -> Result<ClassificationResult> {
    let violations = verify_homomorphism(rep);
    if !violations.is_empty() {
        return Err(Error::Inconsistent(format!(
            "the matrices do not define a representation: {}",
            violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        )));
    }
    if rep.field() != FieldSpec::Rationals && !rep.algebra.zero_weight_indices().is_empty() {
        return Err(Error::UniserializerUnsupported(format!(
            "classification over {} requires a trivial zero-weight part",
            rep.field()
        )));
    }
    let series = nilpotency_series(rep)?;
    let y0 = match find_uniserializing_element(rep, &series, params)? {
        Some(y) => y,
        None => {
            return Err(Error::NotLinked(
                "no uniserializing element found within the trial budget".into(),
            ))
        }
    };
    if series.length == 1 {
        let action = series.factor_action(&y0.matrix(rep), 1);
        let detail = match uniserial_fx(&action)? {
            Some((p, s)) => format!("({p})^{s}"),
            None => "factor is not uniserial".into(),
        };
        return Err(Error::LengthOne(detail));
    }

    // candidate distinguished vectors: the declared one, or the first basis
    // vector per nonzero eigenvalue whose level-2 map is injective
    let candidates: Vec<(FieldElem, usize)> = match rep.algebra.v_index {
        Some(v) => {
            let gamma = y0.eigenvalue(rep, v);
            if gamma.is_zero() {
                return Err(Error::InvalidInput(
                    "the distinguished vector has weight zero".into(),
                ));
            }
            if !level_map(rep, &series, v, 2)?.is_injective() {
                return Err(Error::NotLinked(format!(
                    "the distinguished vector {v} has a non-injective level-2 map"
                )));
            }
            vec![(gamma, v)]
        }
        None => {
            let mut cands: Vec<(FieldElem, usize)> = Vec::new();
            for idx in rep.algebra.nilpotent_indices() {
                let gamma = y0.eigenvalue(rep, idx);
                if cands.iter().any(|(g, _)| *g == gamma) {
                    continue;
                }
                if level_map(rep, &series, idx, 2)?.is_injective() {
                    cands.push((gamma, idx));
                }
            }
            if cands.is_empty() {
                return Err(Error::NotLinked(
                    "no weight vector with injective level-2 map among the basis vectors".into(),
                ));
            }
            cands
        }
    };

    let explicit_v = rep.algebra.v_index.is_some();
    let mut successes: Vec<ClassificationResult> = Vec::new();
    let mut failures: Vec<(FieldElem, Error)> = Vec::new();
    for (gamma, v_idx) in candidates {
        match classify_with_candidate(rep, &series, &y0, &gamma, v_idx, params) {
            Ok(result) => successes.push(result),
            Err(e) => failures.push((gamma, e)),
        }
    }
    match successes.len() {
        1 => Ok(successes.pop().unwrap()),
        0 => {
            if explicit_v || failures.len() == 1 {
                Err(failures.pop().unwrap().1)
            } else if let Some(pos) = failures
                .iter()
                .position(|(_, e)| matches!(e, Error::CharPUnsupported(_)))
            {
                Err(failures.swap_remove(pos).1)
            } else {
                Err(Error::NotLinked(format!(
                    "no normalization candidate completed: {}",
                    failures
                        .iter()
                        .map(|(g, e)| format!("gamma={g}: {e}"))
                        .collect::<Vec<_>>()
                        .join(" | ")
                )))
            }
        }
        _ => Err(Error::AmbiguousNormalization(format!(
            "several eigenvalues admit a full classification: {}",
            successes
                .iter()
                .map(|r| r.gamma.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ))),
    }
}

fn classify_with_candidate(
    rep: &Representation,
    series: &NilpotencySeries,
    y0: &YCoords,
    gamma: &FieldElem,
    v_idx: usize,
    params: &SearchParams,
) -> Result<ClassificationResult> {
    let field = rep.field();
    let m = series.length;
    let mut diagnostics = Vec::new();

    // stage 2: normalize y so the candidate has weight 1
    let y1 = y0.scaled(&gamma.inv()?);
    let my = y1.matrix(rep);
    diagnostics.push(format!("normalized eigenvalue gamma = {gamma}"));

    for level in 2..=m {
        if !level_map(rep, series, v_idx, level)?.is_injective() {
            return Err(Error::NotLinked(format!(
                "level-{level} map of the distinguished vector is not injective"
            )));
        }
    }

    // stage 1 invariants with respect to the normalized y
    let mut ps: Vec<Poly> = Vec::with_capacity(m);
    let mut s: Vec<u32> = Vec::with_capacity(m);
    for level in 1..=m {
        match uniserial_fx(&series.factor_action(&my, level))? {
            Some((p, e)) => {
                ps.push(p);
                s.push(e);
            }
            None => {
                return Err(Error::NotLinked(format!(
                    "factor {level} is not uniserial via the normalized element"
                )))
            }
        }
    }
    let p1 = ps[0].clone();
    let d = p1.degree().unwrap_or(0);

    // stage 3: shift chain, monotone exponents, characteristic hypothesis
    for (i, pi) in ps.iter().enumerate() {
        let expected = p1.shift(&field.integer(i as i64))?;
        if *pi != expected {
            return Err(Error::NotLinked(format!(
                "factor polynomial {} is {pi}, expected the shift {expected}",
                i + 1
            )));
        }
    }
    if s.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotLinked(format!(
            "factor exponents {s:?} are not weakly decreasing"
        )));
    }
    if let Some(violation) = charp_violation(field, &p1, m) {
        return Err(Error::CharPUnsupported(violation));
    }
    for i in 0..m {
        for j in i + 1..m {
            if ps[i] == ps[j] {
                return Err(Error::Inconsistent(format!(
                    "factor polynomials {} and {} coincide",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    diagnostics.push(format!("invariants p1 = {p1}, s = {s:?}"));

    let data = build_module_data(&p1, m, &s)?;
    let shape = data.shape.clone();

    // stage 4: per-factor Krylov bases so y acts by companion blocks
    let induced_y = series.induced(&my);
    let mut rng = params.rng();
    let mut basis = series.adapted.clone();
    for i in 0..m {
        let block = shape.block(&induced_y, i, i);
        let krylov = cyclic_krylov_basis(&block, &mut rng)?;
        let old_cols = basis.submatrix(0, basis.rows(), shape.offset(i), shape.offset(i) + shape.sizes()[i]);
        let new_cols = &old_cols * &krylov;
        basis.set_block(0, shape.offset(i), &new_cols);
    }
    let basis_inv = invert(&basis)
        .ok_or_else(|| Error::Inconsistent("Krylov refinement produced a singular basis".into()))?;
    let y_tri = &(&basis_inv * &my) * &basis;
    for i in 0..m {
        if shape.block(&y_tri, i, i) != shape.block(&data.a, i, i) {
            return Err(Error::Inconsistent(format!(
                "Krylov basis failed to produce the companion block {i}"
            )));
        }
    }

    // stage 5: clear the strictly upper blocks of y
    let (p_clear, y_cleared) = block_clear(&y_tri, &shape)?;
    if y_cleared != data.a {
        return Err(Error::Inconsistent(
            "block clearing did not reach the canonical form of y".into(),
        ));
    }
    let r_basis = &basis * &p_clear;
    let r_inv = invert(&r_basis)
        .ok_or_else(|| Error::Inconsistent("cleared basis is singular".into()))?;

    // stage 6: match the superdiagonal blocks of v to the canonical ones
    let v_mat = &(&r_inv * &rep.mat_a[v_idx]) * &r_basis;
    for i in 0..m {
        for j in 0..m {
            if j == i + 1 {
                continue;
            }
            if !shape.block(&v_mat, i, j).is_zero() {
                return Err(Error::Inconsistent(format!(
                    "distinguished vector has support at block ({i}, {j})"
                )));
            }
        }
    }
    // solve L_i = B_i q_i(C_i), then chain g_1 = 1, g_{i+1} = g_i(X+1) q_{i+1}
    let mut gs: Vec<Poly> = vec![Poly::one(field)];
    for i in 1..m {
        let l_block = shape.block(&v_mat, i - 1, i);
        let b_block = shape.block(&data.t, i - 1, i);
        if rank(&l_block) != shape.sizes()[i] {
            return Err(Error::Inconsistent(format!(
                "superdiagonal block {i} of the distinguished vector is not injective"
            )));
        }
        let ci = shape.block(&data.a, i, i);
        let ci_plus = &ci + &Mat::identity(field, ci.rows());
        let ci_prev = shape.block(&data.a, i - 1, i - 1);
        if &l_block * &ci_plus != &ci_prev * &l_block {
            return Err(Error::Inconsistent(format!(
                "superdiagonal block {i} does not intertwine the companion blocks"
            )));
        }
        let n_coeff = shape.sizes()[i];
        let mut columns: Vec<Vec<FieldElem>> = Vec::with_capacity(n_coeff);
        let mut power = Mat::identity(field, n_coeff);
        for _ in 0..n_coeff {
            columns.push((&b_block * &power).flatten());
            power = &power * &ci;
        }
        let coeff_mat = Mat::from_columns(field, &columns);
        let rhs = Mat::from_flat(field, l_block.rows() * l_block.cols(), 1, l_block.flatten());
        let q_coeffs = solve_unique(&coeff_mat, &rhs).map_err(|e| {
            Error::Inconsistent(format!(
                "superdiagonal block {i} is not a polynomial multiple of the canonical one: {e}"
            ))
        })?;
        let q_poly = Poly::from_coeffs(field, q_coeffs.flatten())?;
        let modulus = data.polys[i].pow(s[i]);
        let h = gs[i - 1].shift(&field.one())?.rem(&modulus)?;
        let gi = (&h * &q_poly).rem(&modulus)?;
        if gi.gcd(&data.polys[i])?.degree() != Some(0) {
            return Err(Error::Inconsistent(format!(
                "conjugating polynomial at block {i} is not invertible"
            )));
        }
        gs.push(gi);
    }
    let mut p6 = Mat::zeros(field, shape.total(), shape.total());
    let mut p6_inv = Mat::zeros(field, shape.total(), shape.total());
    for i in 0..m {
        let ci = shape.block(&data.a, i, i);
        let modulus = data.polys[i].pow(s[i]);
        let gi_inv = gs[i].inverse_mod(&modulus)?;
        shape.set_block(&mut p6, i, i, &ci.apply_poly(&gs[i]));
        shape.set_block(&mut p6_inv, i, i, &ci.apply_poly(&gi_inv));
    }
    let basis_change = &p6 * &r_inv;
    let basis_change_inv = &r_basis * &p6_inv;
    debug_assert_eq!(
        &basis_change * &basis_change_inv,
        Mat::identity(field, shape.total())
    );
    let conj = |mat: &Mat| -> Mat { &(&basis_change * mat) * &basis_change_inv };
    if conj(&my) != data.a {
        return Err(Error::Inconsistent(
            "polynomial conjugation moved the canonical form of y".into(),
        ));
    }
    if conj(&rep.mat_a[v_idx]) != data.t {
        return Err(Error::Inconsistent(
            "the distinguished vector did not reach the canonical intertwiner".into(),
        ));
    }
    diagnostics.push("canonical forms of y and v reached exactly".into());

    // stage 7: solve the weight polynomial of every basis vector
    let gamma_inv = gamma.inv()?;
    let mut gmaps: Vec<Vec<(usize, Poly)>> = vec![Vec::new(); m];
    let mut eigenvalues = Vec::with_capacity(rep.algebra.dim_a());
    for idx in 0..rep.algebra.dim_a() {
        let delta = &rep.algebra.eigenvalues[idx] * &gamma_inv;
        eigenvalues.push(delta.clone());
        let action = conj(&rep.mat_a[idx]);
        match delta.integer_in_range(m) {
            Some(j) => {
                let tj = data.t_power(j);
                let bound = d * s[j] as usize;
                let mut columns: Vec<Vec<FieldElem>> = Vec::with_capacity(bound);
                let mut power = Mat::identity(field, shape.total());
                for _ in 0..bound {
                    columns.push((&tj * &power).flatten());
                    power = &power * &data.e;
                }
                let coeff_mat = Mat::from_columns(field, &columns);
                let rhs = Mat::from_flat(
                    field,
                    shape.total() * shape.total(),
                    1,
                    action.flatten(),
                );
                let g_coeffs = solve_unique(&coeff_mat, &rhs).map_err(|e| {
                    Error::Inconsistent(format!(
                        "basis vector {idx} does not act as a weight-{j} canonical operator: {e}"
                    ))
                })?;
                gmaps[j].push((idx, Poly::from_coeffs(field, g_coeffs.flatten())?));
            }
            None => {
                if !action.is_zero() {
                    return Err(Error::Inconsistent(format!(
                        "basis vector {idx} has weight {delta} outside 0..{m} but acts nonzero"
                    )));
                }
            }
        }
    }
    match gmaps[1].iter().find(|(idx, _)| *idx == v_idx) {
        Some((_, g)) if g.degree() == Some(0) && g.coeff(0).is_one() => {}
        _ => {
            return Err(Error::Inconsistent(
                "the distinguished vector did not recover the constant polynomial 1".into(),
            ))
        }
    }

    let invariants = LinkedInvariants {
        field,
        p1,
        m,
        s,
        gmaps,
        v_index: v_idx,
    };
    let algebra = AlgebraSpec::new(field, eigenvalues, Some(v_idx))?;
    invariants.validate(&algebra)?;

    // round trip: the rebuilt canonical matrices must be bit-identical
    let rebuilt = build_representation(&invariants, &algebra)?;
    if rebuilt.mat_x != conj(&my) {
        return Err(Error::Inconsistent(
            "rebuilt canonical action of y differs".into(),
        ));
    }
    for idx in 0..rep.algebra.dim_a() {
        if rebuilt.mat_a[idx] != conj(&rep.mat_a[idx]) {
            return Err(Error::Inconsistent(format!(
                "rebuilt canonical action of basis vector {idx} differs"
            )));
        }
    }
    diagnostics.push("rebuild from extracted invariants is bit-identical".into());

    Ok(ClassificationResult {
        invariants,
        algebra,
        basis_change,
        y: y1,
        gamma: gamma.clone(),
        diagnostics,
    })
}

/// Krylov basis of a cyclic matrix: columns w, Mw, ..., M^{n-1}w for a
/// cyclic vector w. Standard basis vectors are tried first, then random
/// small-integer vectors.
fn cyclic_krylov_basis(m: &Mat, rng: &mut impl Rng) -> Result<Mat> {
    let n = m.rows();
    let field = m.field();
    let try_vector = |w: Vec<FieldElem>| -> Option<Mat> {
        let mut cols = Vec::with_capacity(n);
        let mut cur = w;
        for _ in 0..n {
            cols.push(cur.clone());
            cur = m.mul_vec(&cur);
        }
        let k = Mat::from_columns(field, &cols);
        if rank(&k) == n {
            Some(k)
        } else {
            None
        }
    };
    for seed in 0..n {
        let mut w = vec![field.zero(); n];
        w[seed] = field.one();
        if let Some(k) = try_vector(w) {
            return Ok(k);
        }
    }
    for trial in 0..100u32 {
        let bound = 2 + (trial / 10) as i64;
        let w: Vec<FieldElem> = (0..n)
            .map(|_| field.integer(rng.gen_range(-bound..=bound)))
            .collect();
        if let Some(k) = try_vector(w) {
            return Ok(k);
        }
    }
    Err(Error::Inconsistent(
        "no cyclic vector found for a factor action certified as cyclic".into(),
    ))
}

/// The j-eigenspace of ad A inside the centralizer of T, as a list of basis
/// matrices. Solved exactly: per-block Sylvester kernels describe the ad-A
/// eigenspace, and commutation with T cuts it down.
pub fn centralizer_eigenspace(data: &ModuleData, j: i64) -> Result<Vec<Mat>> {
    if let Some(v) = charp_violation(data.field, &data.p1, data.m) {
        return Err(Error::CharPUnsupported(v));
    }
    let field = data.field;
    let shape = &data.shape;
    let m = data.m;
    let jf = field.integer(j);

    // blockwise kernel of C_k Z - Z (C_l + jI) = 0
    struct BlockSolution {
        k: usize,
        l: usize,
        mats: Vec<Mat>,
    }
    let mut blocks: Vec<BlockSolution> = Vec::new();
    for k in 0..m {
        let mu_k = data.polys[k].pow(data.s[k]);
        for l in 0..m {
            // minimal polynomial of C_l + jI is mu_l(X - j)
            let mu_l_shift = data.polys[l].pow(data.s[l]).shift(&(-&jf))?;
            if mu_k.gcd(&mu_l_shift)?.degree() == Some(0) {
                continue;
            }
            let ck = shape.block(&data.a, k, k);
            let cl = shape.block(&data.a, l, l);
            let cl_j = &cl + &Mat::identity(field, cl.rows()).scale(&jf);
            let op = sylvester_operator(&ck, &cl_j);
            let mats: Vec<Mat> = kernel(&op)
                .into_iter()
                .map(|v| Mat::from_flat(field, ck.rows(), cl.rows(), v))
                .collect();
            if !mats.is_empty() {
                blocks.push(BlockSolution { k, l, mats });
            }
        }
    }
    let mut param_mats: Vec<Mat> = Vec::new();
    for b in &blocks {
        for z in &b.mats {
            param_mats.push(shape.embed(b.k, b.l, z));
        }
    }
    if param_mats.is_empty() {
        return Ok(Vec::new());
    }
    // impose [T, H] = 0 on the parameter space
    let t_total = shape.total();
    let columns: Vec<Vec<FieldElem>> = param_mats
        .iter()
        .map(|h| commutator(&data.t, h).flatten())
        .collect();
    let constraint = Mat::from_columns(field, &columns);
    let combos = kernel(&constraint);
    let mut result = Vec::with_capacity(combos.len());
    for combo in combos {
        let mut h = Mat::zeros(field, t_total, t_total);
        for (c, pm) in combo.iter().zip(&param_mats) {
            if !c.is_zero() {
                h = &h + &pm.scale(c);
            }
        }
        // verify the defining equations exactly
        if !commutator(&data.t, &h).is_zero() {
            return Err(Error::Inconsistent("centralizer candidate misses T".into()));
        }
        if commutator(&data.a, &h) != h.scale(&jf) {
            return Err(Error::Inconsistent(
                "centralizer candidate misses the ad-A eigenvalue".into(),
            ));
        }
        result.push(h);
    }
    Ok(result)
}

/// Eigenspaces for j = 0..m-1, each verified to coincide with the span of
/// {T^j E^k : k < d s_1}.
pub fn centralizer_eigenspaces(data: &ModuleData) -> Result<Vec<Vec<Mat>>> {
    let field = data.field;
    let bound = data.d * data.s[0] as usize;
    let mut spaces = Vec::with_capacity(data.m);
    for j in 0..data.m {
        let space = centralizer_eigenspace(data, j as i64)?;
        let tj = data.t_power(j);
        let mut expected: Vec<Vec<FieldElem>> = Vec::with_capacity(bound);
        let mut power = Mat::identity(field, data.total_dim());
        for _ in 0..bound {
            expected.push((&tj * &power).flatten());
            power = &power * &data.e;
        }
        let got: Vec<Vec<FieldElem>> = space.iter().map(|h| h.flatten()).collect();
        if !crate::matrix::same_span(field, &expected, &got) {
            return Err(Error::Inconsistent(format!(
                "eigenspace {j} does not match the graded piece"
            )));
        }
        spaces.push(space);
    }
    Ok(spaces)
}

/// Equivalence test through classification: two representations over the
/// same algebra presentation are equivalent exactly when their invariant
/// tuples coincide; on success the conjugating witness is returned and
/// validated on every generator.
pub fn decide_equivalence(
    rep1: &Representation,
    rep2: &Representation,
    params: &SearchParams,
) -> Result<(bool, Option<Mat>)> {
    if rep1.algebra != rep2.algebra {
        return Err(Error::InvalidInput(
            "equivalence requires the same algebra presentation".into(),
        ));
    }
    let r1 = classify_linked(rep1, params)?;
    let r2 = classify_linked(rep2, params)?;
    if r1.invariants != r2.invariants || r1.y != r2.y || r1.gamma != r2.gamma {
        return Ok((false, None));
    }
    let c2_inv = invert(&r2.basis_change)
        .ok_or_else(|| Error::Inconsistent("singular basis change".into()))?;
    let witness = &c2_inv * &r1.basis_change;
    // validate: witness * M1(z) = M2(z) * witness for every generator
    let check = |m1: &Mat, m2: &Mat| -> bool { &witness * m1 == m2 * &witness };
    if !check(&rep1.mat_x, &rep2.mat_x)
        || !rep1
            .mat_a
            .iter()
            .zip(&rep2.mat_a)
            .all(|(m1, m2)| check(m1, m2))
    {
        return Ok((false, None));
    }
    Ok((true, Some(witness)))
}

/// Whether the classified module is uniserial: all exponents equal 1.
pub fn is_uniserial_linked(result: &ClassificationResult) -> bool {
    result.invariants.s.iter().all(|&e| e == 1)
}

/// Specialization report for faithful uniserial modules over a degree-1 base
/// polynomial X - alpha: the module is determined by (m, alpha, beta_j).
#[derive(Debug, Clone)]
pub struct SinnoReport {
    pub applicable: bool,
    pub reason: Option<String>,
    pub m: Option<usize>,
    pub alpha: Option<FieldElem>,
    /// (weight, beta) pairs for the weights that act; beta_1 = 1.
    pub betas: Vec<(usize, FieldElem)>,
    pub violations: Vec<String>,
}

pub fn sinno_report(result: &ClassificationResult, rep: &Representation) -> SinnoReport {
    let mut violations = Vec::new();
    let m = result.invariants.m;
    let d = result.invariants.degree();

    // faithfulness: the generators are linearly independent operators
    let field = rep.field();
    let mut columns: Vec<Vec<FieldElem>> = vec![rep.mat_x.flatten()];
    for a in &rep.mat_a {
        columns.push(a.flatten());
    }
    let faithful = crate::matrix::span_dim(field, &columns) == 1 + rep.mat_a.len();

    // necessary conditions for faithfulness on the normalized weights
    let mut multiplicity = vec![0usize; m];
    for (idx, delta) in result.algebra.eigenvalues.iter().enumerate() {
        match delta.integer_in_range(m) {
            Some(j) => multiplicity[j] += 1,
            None => violations.push(format!(
                "basis vector {idx} has weight {delta} outside 0..{m}; no faithful module exists"
            )),
        }
    }
    for (j, &mult) in multiplicity.iter().enumerate() {
        let bound = d * result.invariants.s[j] as usize;
        if mult > bound {
            violations.push(format!(
                "weight {j} has multiplicity {mult} exceeding the bound {bound}"
            ));
        }
    }

    if !faithful {
        return SinnoReport {
            applicable: false,
            reason: Some("not faithful".into()),
            m: None,
            alpha: None,
            betas: Vec::new(),
            violations,
        };
    }
    if !is_uniserial_linked(result) {
        return SinnoReport {
            applicable: false,
            reason: Some("not uniserial".into()),
            m: None,
            alpha: None,
            betas: Vec::new(),
            violations,
        };
    }
    if d != 1 {
        return SinnoReport {
            applicable: false,
            reason: Some("base polynomial has degree greater than 1".into()),
            m: None,
            alpha: None,
            betas: Vec::new(),
            violations,
        };
    }
    // uniserial with d = 1: every acting weight must have multiplicity 1
    let mut betas = Vec::new();
    for (j, entries) in result.invariants.gmaps.iter().enumerate() {
        if entries.len() > 1 {
            violations.push(format!(
                "weight {j} has multiplicity {} but must have multiplicity 1",
                entries.len()
            ));
        }
        if let Some((_, g)) = entries.first() {
            betas.push((j, g.coeff(0)));
        }
    }
    if !violations.is_empty() {
        return SinnoReport {
            applicable: false,
            reason: Some("weight multiplicity conditions fail".into()),
            m: None,
            alpha: None,
            betas: Vec::new(),
            violations,
        };
    }
    let alpha = -&result.invariants.p1.coeff(0);
    SinnoReport {
        applicable: true,
        reason: None,
        m: Some(m),
        alpha: Some(alpha),
        betas,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn poly_x() -> Poly {
        Poly::from_integers(q(), &[0, 1])
    }

    fn simple_invariants() -> (LinkedInvariants, AlgebraSpec) {
        let alg = AlgebraSpec::new(q(), vec![q().one()], Some(0)).unwrap();
        let inv = LinkedInvariants {
            field: q(),
            p1: poly_x(),
            m: 2,
            s: vec![1, 1],
            gmaps: vec![vec![], vec![(0, Poly::one(q()))]],
            v_index: 0,
        };
        (inv, alg)
    }

    #[test]
    fn classify_smallest_round_trip() {
        let (inv, alg) = simple_invariants();
        let rep = build_representation(&inv, &alg).unwrap();
        let result = classify_linked(&rep, &SearchParams::default()).unwrap();
        assert_eq!(result.invariants, inv);
        assert_eq!(result.gamma, q().one());
        assert_eq!(result.algebra, alg);
    }

    #[test]
    fn classify_after_conjugation() {
        let (inv, alg) = simple_invariants();
        let rep = build_representation(&inv, &alg).unwrap();
        let p = Mat::from_integers(q(), &[&[2, 1], &[3, 2]]);
        let conj = rep.conjugated(&p).unwrap();
        let result = classify_linked(&conj, &SearchParams::default()).unwrap();
        assert_eq!(result.invariants, inv);
        // canonical-form exactness on the conjugated input
        let c = &result.basis_change;
        let c_inv = invert(c).unwrap();
        let rebuilt = build_representation(&result.invariants, &result.algebra).unwrap();
        assert_eq!(&(c * &conj.mat_x) * &c_inv, rebuilt.mat_x);
        assert_eq!(&(c * &conj.mat_a[0]) * &c_inv, rebuilt.mat_a[0]);
    }

    #[test]
    fn classify_richer_tuple() {
        let alg = AlgebraSpec::new(
            q(),
            vec![q().one(), q().zero(), q().integer(2), q().integer(7)],
            Some(0),
        )
        .unwrap();
        let inv = LinkedInvariants {
            field: q(),
            p1: Poly::from_integers(q(), &[1, 1]),
            m: 3,
            s: vec![2, 2, 1],
            gmaps: vec![
                vec![(1, Poly::from_integers(q(), &[2, -1]))],
                vec![(0, Poly::one(q()))],
                vec![(2, Poly::from_integers(q(), &[3]))],
            ],
            v_index: 0,
        };
        let rep = build_representation(&inv, &alg).unwrap();
        let result = classify_linked(&rep, &SearchParams::default()).unwrap();
        assert_eq!(result.invariants, inv);
        assert_eq!(result.algebra, alg);
    }

    #[test]
    fn classify_rejects_charp_fixture() {
        for p in [2u64, 3] {
            let rep = crate::construction::build_counterexample_charp(p).unwrap();
            let err = classify_linked(&rep, &SearchParams::default()).unwrap_err();
            assert!(
                matches!(err, Error::CharPUnsupported(_)),
                "expected the characteristic-p rejection, got {err}"
            );
        }
    }

    #[test]
    fn classify_rejects_length_one() {
        let alg = AlgebraSpec::new(q(), vec![q().one()], Some(0)).unwrap();
        let rep = Representation::new(
            alg,
            Mat::from_integers(q(), &[&[2]]),
            vec![Mat::zeros(q(), 1, 1)],
        )
        .unwrap();
        let err = classify_linked(&rep, &SearchParams::default()).unwrap_err();
        assert!(matches!(err, Error::LengthOne(_)));
    }

    #[test]
    fn classify_rejects_non_representation() {
        let alg = AlgebraSpec::new(q(), vec![q().one()], Some(0)).unwrap();
        let rep = Representation::new(
            alg,
            Mat::zeros(q(), 2, 2),
            vec![Mat::from_integers(q(), &[&[0, 1], &[1, 0]])],
        )
        .unwrap();
        let err = classify_linked(&rep, &SearchParams::default()).unwrap_err();
        assert!(matches!(err, Error::Inconsistent(_)));
    }

    #[test]
    fn centralizer_dimensions() {
        let data = build_module_data(&poly_x(), 3, &[2, 1, 1]).unwrap();
        let spaces = centralizer_eigenspaces(&data).unwrap();
        let dims: Vec<usize> = spaces.iter().map(|s| s.len()).collect();
        assert_eq!(dims, vec![2, 1, 1]);
        // outside 0..m the eigenspace is trivial
        assert!(centralizer_eigenspace(&data, -1).unwrap().is_empty());
        assert!(centralizer_eigenspace(&data, 3).unwrap().is_empty());
    }

    #[test]
    fn equivalence_of_conjugates() {
        let (inv, alg) = simple_invariants();
        let rep = build_representation(&inv, &alg).unwrap();
        let p = Mat::from_integers(q(), &[&[1, 1], &[1, 2]]);
        let conj = rep.conjugated(&p).unwrap();
        let (eq, witness) = decide_equivalence(&rep, &conj, &SearchParams::default()).unwrap();
        assert!(eq);
        let w = witness.unwrap();
        assert_eq!(&w * &rep.mat_x, &conj.mat_x * &w);
        assert_eq!(&w * &rep.mat_a[0], &conj.mat_a[0] * &w);
        // self-equivalence gives an identity-conjugacy witness
        let (eq, witness) = decide_equivalence(&rep, &rep, &SearchParams::default()).unwrap();
        assert!(eq);
        assert_eq!(witness.unwrap(), Mat::identity(q(), 2));
    }

    #[test]
    fn inequivalence_of_modified_gmap() {
        let alg = AlgebraSpec::new(q(), vec![q().one(), q().zero()], Some(0)).unwrap();
        let make = |c: i64| {
            let inv = LinkedInvariants {
                field: q(),
                p1: poly_x(),
                m: 2,
                s: vec![1, 1],
                gmaps: vec![
                    vec![(1, Poly::from_integers(q(), &[c]))],
                    vec![(0, Poly::one(q()))],
                ],
                v_index: 0,
            };
            build_representation(&inv, &alg).unwrap()
        };
        let (eq, witness) =
            decide_equivalence(&make(1), &make(2), &SearchParams::default()).unwrap();
        assert!(!eq);
        assert!(witness.is_none());
    }

    #[test]
    fn sinno_applicable_case() {
        // d = 1, m = 3, alpha = 0, one vector per weight 0, 1, 2
        let alg = AlgebraSpec::new(
            q(),
            vec![q().one(), q().zero(), q().integer(2)],
            Some(0),
        )
        .unwrap();
        let inv = LinkedInvariants {
            field: q(),
            p1: poly_x(),
            m: 3,
            s: vec![1, 1, 1],
            gmaps: vec![
                vec![(1, Poly::from_integers(q(), &[4]))],
                vec![(0, Poly::one(q()))],
                vec![(2, Poly::from_integers(q(), &[-2]))],
            ],
            v_index: 0,
        };
        let rep = build_representation(&inv, &alg).unwrap();
        let result = classify_linked(&rep, &SearchParams::default()).unwrap();
        let report = sinno_report(&result, &rep);
        assert!(report.applicable, "violations: {:?}", report.violations);
        assert_eq!(report.m, Some(3));
        assert_eq!(report.alpha, Some(q().zero()));
        assert_eq!(
            report.betas,
            vec![
                (0, q().integer(4)),
                (1, q().one()),
                (2, q().integer(-2))
            ]
        );
    }

    #[test]
    fn sinno_not_faithful() {
        let alg = AlgebraSpec::new(q(), vec![q().one(), q().integer(7)], Some(0)).unwrap();
        let inv = LinkedInvariants {
            field: q(),
            p1: poly_x(),
            m: 2,
            s: vec![1, 1],
            gmaps: vec![vec![], vec![(0, Poly::one(q()))]],
            v_index: 0,
        };
        let rep = build_representation(&inv, &alg).unwrap();
        let result = classify_linked(&rep, &SearchParams::default()).unwrap();
        let report = sinno_report(&result, &rep);
        assert!(!report.applicable);
        assert_eq!(report.reason.as_deref(), Some("not faithful"));
    }

    #[test]
    fn sinno_multiplicity_violation() {
        // two vectors of weight 1 acting faithfully on a uniserial module
        let alg =
            AlgebraSpec::new(q(), vec![q().one(), q().one()], Some(0)).unwrap();
        let inv = LinkedInvariants {
            field: q(),
            p1: poly_x(),
            m: 2,
            s: vec![1, 1],
            gmaps: vec![
                vec![],
                vec![(0, Poly::one(q())), (1, Poly::from_integers(q(), &[2]))],
            ],
            v_index: 0,
        };
        let rep = build_representation(&inv, &alg).unwrap();
        let result = classify_linked(&rep, &SearchParams::default()).unwrap();
        let report = sinno_report(&result, &rep);
        assert!(!report.applicable);
        assert!(!report.violations.is_empty());
    }

    #[test]
    fn uniseriality_from_invariants() {
        let (inv, alg) = simple_invariants();
        let rep = build_representation(&inv, &alg).unwrap();
        let result = classify_linked(&rep, &SearchParams::default()).unwrap();
        assert!(is_uniserial_linked(&result));

        let alg2 = AlgebraSpec::new(q(), vec![q().one()], Some(0)).unwrap();
        let inv2 = LinkedInvariants {
            field: q(),
            p1: poly_x(),
            m: 2,
            s: vec![2, 1],
            gmaps: vec![vec![], vec![(0, Poly::one(q()))]],
            v_index: 0,
        };
        let rep2 = build_representation(&inv2, &alg2).unwrap();
        let result2 = classify_linked(&rep2, &SearchParams::default()).unwrap();
        assert!(!is_uniserial_linked(&result2));
    }
}
