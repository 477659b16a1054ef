//! Randomized fixture generators shared by the test suites: certified
//! irreducible polynomials of small degree, random invariant tuples with
//! extra weight vectors, and random invertible integer matrices.

use rand::Rng;

use crate::construction::{AlgebraSpec, LinkedInvariants};
use crate::field::{FieldElem, FieldSpec};
use crate::matrix::{rank, Mat};
use crate::poly::{Irreducibility, Poly};

/// A certified irreducible monic polynomial of degree 1 or 2 with small
/// coefficients.
pub fn irreducible_monic(field: FieldSpec, degree: usize, rng: &mut impl Rng) -> Poly {
    assert!((1..=2).contains(&degree), "fixture degrees are 1 or 2");
    loop {
        let coeffs: Vec<FieldElem> = (0..degree)
            .map(|_| field.integer(rng.gen_range(-4..=4)))
            .chain(std::iter::once(field.one()))
            .collect();
        let f = Poly::from_coeffs(field, coeffs).expect("same field");
        if matches!(f.irreducibility(), Ok(Irreducibility::Irreducible)) {
            return f;
        }
    }
}

/// Options for `random_invariants`.
#[derive(Debug, Clone, Copy)]
pub struct TupleOptions {
    pub max_degree: usize,
    pub max_length: usize,
    pub max_exponent: u32,
    pub max_extra_per_weight: usize,
}

impl Default for TupleOptions {
    fn default() -> Self {
        TupleOptions {
            max_degree: 2,
            max_length: 4,
            max_exponent: 3,
            max_extra_per_weight: 2,
        }
    }
}

/// A random invariant tuple together with a matching algebra presentation.
///
/// The distinguished vector always sits first with the constant polynomial 1
/// at weight 1; extra vectors get random polynomials within their degree
/// bound. Extra weight-1 vectors receive polynomials divisible by the
/// second factor polynomial so the distinguished vector stays the canonical
/// choice even without an explicit v_index.
pub fn random_invariants(
    field: FieldSpec,
    opts: &TupleOptions,
    rng: &mut impl Rng,
) -> (LinkedInvariants, AlgebraSpec) {
    let d = rng.gen_range(1..=opts.max_degree);
    let p1 = irreducible_monic(field, d, rng);
    let m = rng.gen_range(2..=opts.max_length);
    let mut s: Vec<u32> = (0..m)
        .map(|_| rng.gen_range(1..=opts.max_exponent))
        .collect();
    s.sort_unstable_by(|a, b| b.cmp(a));

    let mut eigenvalues = vec![field.one()];
    let v_index = 0usize;
    let mut entries_per_weight: Vec<Vec<(usize, Poly)>> = vec![Vec::new(); m];
    entries_per_weight[1].push((v_index, Poly::one(field)));
    let p2 = p1.shift(&field.one()).expect("same field");
    for j in 0..m {
        let extras = rng.gen_range(0..=opts.max_extra_per_weight);
        for _ in 0..extras {
            let idx = eigenvalues.len();
            eigenvalues.push(field.integer(j as i64));
            let bound = d * s[j] as usize;
            let mut g = random_poly_below(field, bound, rng);
            if j == 1 {
                // keep the declared vector the unique invertible choice
                g = (&g * &p2).rem(&p1.shift(&field.one()).unwrap().pow(s[1])).unwrap();
            }
            entries_per_weight[j].push((idx, g));
        }
    }
    // occasionally a vector of weight outside the window, acting as zero
    if rng.gen_bool(0.3) {
        eigenvalues.push(field.integer(m as i64 + 3));
    }
    for entries in &mut entries_per_weight {
        entries.sort_by_key(|(idx, _)| *idx);
    }
    let inv = LinkedInvariants {
        field,
        p1,
        m,
        s,
        gmaps: entries_per_weight,
        v_index,
    };
    let alg = AlgebraSpec::new(field, eigenvalues, Some(v_index)).expect("valid algebra");
    inv.validate(&alg).expect("fixture tuple is valid");
    (inv, alg)
}

fn random_poly_below(field: FieldSpec, bound: usize, rng: &mut impl Rng) -> Poly {
    let coeffs: Vec<FieldElem> = (0..bound)
        .map(|_| field.integer(rng.gen_range(-3..=3)))
        .collect();
    Poly::from_coeffs(field, coeffs).expect("same field")
}

/// Random invertible matrix with integer entries in [-bound, bound].
pub fn random_invertible(field: FieldSpec, n: usize, bound: i64, rng: &mut impl Rng) -> Mat {
    loop {
        let m = Mat::from_fn(field, n, n, |_, _| field.integer(rng.gen_range(-bound..=bound)));
        if rank(&m) == n {
            return m;
        }
    }
}
