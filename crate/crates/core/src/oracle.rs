//! Brute-force ground truth over small finite fields: full submodule
//! lattices by exhaustive closure, uniseriality as a chain condition,
//! maximal-chain counting, and intertwiner search. Everything here is
//! independent of the classification pipeline it cross-checks.

use rand::Rng;

use crate::analysis::SearchParams;
use crate::construction::Representation;
use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::matrix::{kernel, rank, Mat};

const ENUMERATION_BOUND: u64 = 1_000_000;
const INTERTWINER_ENUMERATION_BOUND: u64 = 100_000;
const RATIONAL_TRIALS: u32 = 50;

/// All submodules of a representation over GF(p), as canonical echelon bases
/// (rows), sorted by dimension.
#[derive(Debug, Clone)]
pub struct SubmoduleLattice {
    pub p: u64,
    pub dim: usize,
    /// Row-reduced canonical bases, deduplicated; includes 0 and the full
    /// space. Each submodule is a set of rows over GF(p).
    pub submodules: Vec<Vec<Vec<u64>>>,
}

impl SubmoduleLattice {
    pub fn dims(&self) -> Vec<usize> {
        self.submodules.iter().map(|b| b.len()).collect()
    }

    fn contains(&self, inner: usize, outer: usize) -> bool {
        subspace_contains(self.p, &self.submodules[outer], &self.submodules[inner])
    }
}

/// GF(p) row reduction to the canonical reduced echelon basis.
fn echelon_reduce(p: u64, rows: &mut Vec<Vec<u64>>) {
    let mut out: Vec<Vec<u64>> = Vec::new();
    'next: for row in rows.drain(..) {
        let mut v = row;
        loop {
            let Some(pivot) = v.iter().position(|&e| e != 0) else {
                continue 'next;
            };
            match out.iter().find(|r| r.iter().position(|&e| e != 0) == Some(pivot)) {
                Some(r) => {
                    let factor = mul_mod(v[pivot], inv_mod(r[pivot], p), p);
                    for (vi, ri) in v.iter_mut().zip(r.iter()) {
                        *vi = sub_mod(*vi, mul_mod(factor, *ri, p), p);
                    }
                }
                None => {
                    let inv = inv_mod(v[pivot], p);
                    for e in v.iter_mut() {
                        *e = mul_mod(*e, inv, p);
                    }
                    out.push(v);
                    continue 'next;
                }
            }
        }
    }
    // back-substitute and sort by pivot for a canonical form
    out.sort_by_key(|r| r.iter().position(|&e| e != 0).unwrap());
    for i in 0..out.len() {
        for j in 0..out.len() {
            if i == j {
                continue;
            }
            let pivot = out[j].iter().position(|&e| e != 0).unwrap();
            let factor = out[i][pivot];
            if factor != 0 {
                let rj = out[j].clone();
                for (vi, ri) in out[i].iter_mut().zip(rj.iter()) {
                    *vi = sub_mod(*vi, mul_mod(factor, *ri, p), p);
                }
            }
        }
    }
    *rows = out;
}

fn subspace_contains(p: u64, outer: &[Vec<u64>], inner: &[Vec<u64>]) -> bool {
    inner.iter().all(|row| {
        let mut v = row.clone();
        for r in outer {
            let pivot = r.iter().position(|&e| e != 0).unwrap();
            let factor = v[pivot];
            if factor != 0 {
                for (vi, ri) in v.iter_mut().zip(r.iter()) {
                    *vi = sub_mod(*vi, mul_mod(factor, *ri, p), p);
                }
            }
        }
        v.iter().all(|&e| e == 0)
    })
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b) % p
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn to_gf_rows(m: &Mat) -> Vec<Vec<u64>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| match m.at(i, j) {
                    FieldElem::Mod { val, .. } => *val,
                    FieldElem::Rat(_) => unreachable!("finite-field matrix expected"),
                })
                .collect()
        })
        .collect()
}

fn mat_vec_gf(rows: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    rows.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u64, |acc, (&a, &b)| add_mod(acc, mul_mod(a, b, p), p))
        })
        .collect()
}

/// Enumerates every submodule: the cyclic submodule of each nonzero vector
/// is computed by closing under all generators, and the resulting set is
/// closed under pairwise sums. Complete because every submodule is a sum of
/// cyclic ones.
pub fn enumerate_submodules(rep: &Representation) -> Result<SubmoduleLattice> {
    let p = match rep.field() {
        FieldSpec::PrimeField(p) => p,
        FieldSpec::Rationals => {
            return Err(Error::InvalidInput(
                "submodule enumeration requires a finite field".into(),
            ))
        }
    };
    let t = rep.dim;
    let count = (0..t)
        .try_fold(1u64, |acc, _| acc.checked_mul(p))
        .unwrap_or(u64::MAX);
    if count > ENUMERATION_BOUND {
        return Err(Error::BoundExceeded(format!(
            "{p}^{t} vectors exceed the enumeration bound {ENUMERATION_BOUND}"
        )));
    }
    let gens: Vec<Vec<Vec<u64>>> = std::iter::once(&rep.mat_x)
        .chain(rep.mat_a.iter())
        .map(to_gf_rows)
        .collect();

    let mut found: std::collections::BTreeSet<Vec<Vec<u64>>> = std::collections::BTreeSet::new();
    found.insert(Vec::new()); // zero module
    let mut full: Vec<Vec<u64>> = (0..t)
        .map(|i| {
            let mut e = vec![0u64; t];
            e[i] = 1;
            e
        })
        .collect();
    echelon_reduce(p, &mut full);
    found.insert(full);

    // cyclic submodules from every nonzero seed
    let mut seed = vec![0u64; t];
    loop {
        // odometer
        let mut k = 0;
        while k < t {
            seed[k] += 1;
            if seed[k] < p {
                break;
            }
            seed[k] = 0;
            k += 1;
        }
        if k == t {
            break;
        }
        let mut basis: Vec<Vec<u64>> = vec![seed.clone()];
        echelon_reduce(p, &mut basis);
        let mut queue: Vec<Vec<u64>> = basis.clone();
        while let Some(v) = queue.pop() {
            for g in &gens {
                let image = mat_vec_gf(g, &v, p);
                let mut candidate = basis.clone();
                candidate.push(image.clone());
                echelon_reduce(p, &mut candidate);
                if candidate.len() > basis.len() {
                    basis = candidate;
                    queue.push(image);
                }
            }
        }
        found.insert(basis);
    }

    // close under sums
    loop {
        let snapshot: Vec<Vec<Vec<u64>>> = found.iter().cloned().collect();
        let before = found.len();
        for i in 0..snapshot.len() {
            for j in i + 1..snapshot.len() {
                let mut rows = snapshot[i].clone();
                rows.extend(snapshot[j].iter().cloned());
                echelon_reduce(p, &mut rows);
                found.insert(rows);
            }
        }
        if found.len() == before {
            break;
        }
    }

    let mut submodules: Vec<Vec<Vec<u64>>> = found.into_iter().collect();
    submodules.sort_by_key(|b| b.len());
    let lattice = SubmoduleLattice { p, dim: t, submodules };

    // closure sanity: applying any generator to any submodule stays inside
    for basis in &lattice.submodules {
        for g in &gens {
            for row in basis {
                let image = mat_vec_gf(g, row, p);
                let mut candidate = basis.clone();
                candidate.push(image);
                echelon_reduce(p, &mut candidate);
                if candidate.len() > basis.len() {
                    return Err(Error::Inconsistent(
                        "enumerated submodule is not closed under the action".into(),
                    ));
                }
            }
        }
    }
    Ok(lattice)
}

/// A module is uniserial exactly when its submodules form a chain.
pub fn is_uniserial_bruteforce(lattice: &SubmoduleLattice) -> bool {
    let n = lattice.submodules.len();
    for i in 0..n {
        for j in i + 1..n {
            if !lattice.contains(i, j) && !lattice.contains(j, i) {
                return false;
            }
        }
    }
    true
}

/// Number of maximal chains from 0 to the full module in the inclusion
/// order; 1 characterizes a unique composition series.
pub fn composition_series_count(lattice: &SubmoduleLattice) -> u64 {
    let n = lattice.submodules.len();
    // covers[j] lists the indices i with submodule_i covered by submodule_j
    let mut paths = vec![0u64; n];
    for j in 0..n {
        if lattice.submodules[j].is_empty() {
            paths[j] = 1;
            continue;
        }
        for i in 0..n {
            if lattice.submodules[i].len() >= lattice.submodules[j].len() || !lattice.contains(i, j)
            {
                continue;
            }
            // i < j strictly; covered when nothing sits strictly between
            let covered = (0..n).all(|k| {
                k == i
                    || k == j
                    || !(lattice.submodules[k].len() > lattice.submodules[i].len()
                        && lattice.submodules[k].len() < lattice.submodules[j].len()
                        && lattice.contains(i, k)
                        && lattice.contains(k, j))
            });
            if covered {
                paths[j] += paths[i];
            }
        }
    }
    let full = (0..n)
        .max_by_key(|&i| lattice.submodules[i].len())
        .expect("lattice contains the full module");
    paths[full]
}

/// Result of an intertwiner search; `exhaustive` marks verdicts obtained by
/// complete enumeration of the solution space.
#[derive(Debug, Clone)]
pub struct IntertwinerSearch {
    pub witness: Option<Mat>,
    pub exhaustive: bool,
}

/// Searches for an invertible P with P M1(z) = M2(z) P for every generator
/// z. The solution space of the linear constraints is computed exactly; over
/// GF(p) it is enumerated completely when small enough (otherwise sampled),
/// over Q random small-integer combinations are tried. A returned witness is
/// always valid; a `None` with `exhaustive: false` is one-sided.
pub fn intertwiner_exists(
    rep1: &Representation,
    rep2: &Representation,
    params: &SearchParams,
) -> Result<IntertwinerSearch> {
    if rep1.algebra != rep2.algebra {
        return Err(Error::InvalidInput(
            "intertwiner search requires the same algebra presentation".into(),
        ));
    }
    if rep1.dim != rep2.dim {
        return Ok(IntertwinerSearch {
            witness: None,
            exhaustive: true,
        });
    }
    let field = rep1.field();
    let t = rep1.dim;
    // constraints: P M1(z) - M2(z) P = 0, stacked over all generators
    let gens: Vec<(&Mat, &Mat)> = std::iter::once((&rep1.mat_x, &rep2.mat_x))
        .chain(rep1.mat_a.iter().zip(rep2.mat_a.iter()))
        .collect();
    let mut stacked: Option<Mat> = None;
    for (m1, m2) in &gens {
        // row-major flattening of P: operator P -> P M1 - M2 P
        let mut op = Mat::zeros(field, t * t, t * t);
        for i in 0..t {
            for j in 0..t {
                let row = i * t + j;
                for k in 0..t {
                    // (P M1)_{ij} = sum_k P_{ik} (M1)_{kj}
                    let cur = op.at(row, i * t + k).clone();
                    op.set(row, i * t + k, &cur + m1.at(k, j));
                    // (M2 P)_{ij} = sum_k (M2)_{ik} P_{kj}
                    let cur = op.at(row, k * t + j).clone();
                    op.set(row, k * t + j, &cur - m2.at(i, k));
                }
            }
        }
        stacked = Some(match stacked {
            None => op,
            Some(s) => s.vstack(&op),
        });
    }
    let solution_basis = kernel(&stacked.expect("at least one generator"));
    let dim_sol = solution_basis.len();
    if dim_sol == 0 {
        return Ok(IntertwinerSearch {
            witness: None,
            exhaustive: true,
        });
    }
    let basis_mats: Vec<Mat> = solution_basis
        .into_iter()
        .map(|v| Mat::from_flat(field, t, t, v))
        .collect();
    let validate = |p_mat: &Mat| -> bool {
        rank(p_mat) == t && gens.iter().all(|(m1, m2)| (p_mat * *m1) == (*m2 * p_mat))
    };

    match field {
        FieldSpec::PrimeField(p) => {
            let combos = (0..dim_sol)
                .try_fold(1u64, |acc, _| acc.checked_mul(p))
                .unwrap_or(u64::MAX);
            if combos <= INTERTWINER_ENUMERATION_BOUND {
                let mut coeffs = vec![0u64; dim_sol];
                loop {
                    let mut k = 0;
                    while k < dim_sol {
                        coeffs[k] += 1;
                        if coeffs[k] < p {
                            break;
                        }
                        coeffs[k] = 0;
                        k += 1;
                    }
                    if k == dim_sol {
                        break;
                    }
                    let mut cand = Mat::zeros(field, t, t);
                    for (c, b) in coeffs.iter().zip(&basis_mats) {
                        if *c != 0 {
                            cand = &cand + &b.scale(&field.integer(*c as i64));
                        }
                    }
                    if validate(&cand) {
                        return Ok(IntertwinerSearch {
                            witness: Some(cand),
                            exhaustive: true,
                        });
                    }
                }
                Ok(IntertwinerSearch {
                    witness: None,
                    exhaustive: true,
                })
            } else {
                let mut rng = params.rng();
                for _ in 0..INTERTWINER_ENUMERATION_BOUND {
                    let mut cand = Mat::zeros(field, t, t);
                    for b in &basis_mats {
                        let c = rng.gen_range(0..p);
                        if c != 0 {
                            cand = &cand + &b.scale(&field.integer(c as i64));
                        }
                    }
                    if validate(&cand) {
                        return Ok(IntertwinerSearch {
                            witness: Some(cand),
                            exhaustive: true,
                        });
                    }
                }
                Ok(IntertwinerSearch {
                    witness: None,
                    exhaustive: false,
                })
            }
        }
        FieldSpec::Rationals => {
            let mut rng = params.rng();
            for trial in 0..RATIONAL_TRIALS {
                let bound = 1 + (trial / 10) as i64;
                let mut cand = Mat::zeros(field, t, t);
                for b in &basis_mats {
                    let c = rng.gen_range(-bound..=bound);
                    if c != 0 {
                        cand = &cand + &b.scale(&field.integer(c));
                    }
                }
                if validate(&cand) {
                    return Ok(IntertwinerSearch {
                        witness: Some(cand),
                        exhaustive: true,
                    });
                }
            }
            Ok(IntertwinerSearch {
                witness: None,
                exhaustive: false,
            })
        }
    }
}
