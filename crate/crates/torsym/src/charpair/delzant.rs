//! Characteristic pairs of rational simple polytopes given by inequalities
//! `<normal, x> <= offset`, with exact vertex enumeration over the rationals.
//!
//! For a Delzant polytope the outward normals at each vertex form a lattice
//! basis, so the resulting pair validates; the construction fails with a
//! domain error otherwise.

use super::{pair_from_aligned, CharacteristicPair, PairError};
use crate::complex::SimplicialComplex;
use crate::lattice::{Int, IntVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DelzantError {
    #[error("polytope is not simple: {0}")]
    NotSimpleError(String),
    #[error("polytope is unbounded")]
    UnboundedError,
    #[error("facet {0} is redundant")]
    RedundantFacetError(String),
    #[error("normal of facet {0} is not primitive")]
    NotPrimitive(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Pair(#[from] PairError),
}

/// One inequality `<normal, x> <= offset`, the normal pointing out of the
/// polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: IntVector,
    pub offset: BigRational,
}

impl Halfspace {
    pub fn new(normal: IntVector, offset: BigRational) -> Self {
        Halfspace { normal, offset }
    }

    pub fn from_i64s(normal: &[i64], offset: i64) -> Self {
        Halfspace {
            normal: IntVector::from_i64s(normal),
            offset: BigRational::from_integer(BigInt::from(offset)),
        }
    }

    fn evaluate(&self, point: &[BigRational]) -> BigRational {
        self.normal
            .iter()
            .zip(point)
            .map(|(a, x)| BigRational::from_integer(a.clone()) * x)
            .sum()
    }
}

/// Builds the characteristic pair of the polytope cut out by `halfspaces`:
/// the dual complex from vertex-facet incidences and `lambda` equal to the
/// outward normals. Facets are named `F1..Fm` in input order.
pub fn delzant_pair(halfspaces: &[Halfspace]) -> Result<CharacteristicPair, DelzantError> {
    let m = halfspaces.len();
    let n = match halfspaces.first() {
        Some(h) => h.normal.len(),
        None => return Err(DelzantError::BadInput("no inequalities".into())),
    };
    if n == 0 {
        return Err(DelzantError::BadInput("ambient dimension zero".into()));
    }
    if m < n + 1 {
        return Err(DelzantError::BadInput(format!(
            "{} inequalities cannot bound a {}-dimensional polytope",
            m, n
        )));
    }
    for (i, h) in halfspaces.iter().enumerate() {
        if h.normal.len() != n {
            return Err(DelzantError::BadInput(format!(
                "normal {} has length {}, expected {}",
                i + 1,
                h.normal.len(),
                n
            )));
        }
        if !h.normal.is_primitive() {
            return Err(DelzantError::NotPrimitive(facet_name(i)));
        }
        for (j, other) in halfspaces.iter().enumerate().take(i) {
            if other == h {
                return Err(DelzantError::RedundantFacetError(format!(
                    "{} duplicates {}",
                    facet_name(i),
                    facet_name(j)
                )));
            }
        }
    }

    // Vertex candidates: solutions of n active inequalities that satisfy the
    // rest. A simple polytope has exactly n facets through each vertex.
    let mut vertices: Vec<(Vec<BigRational>, Vec<usize>)> = Vec::new();
    let mut subset = vec![0usize; n];
    enumerate_subsets(m, n, &mut subset, 0, 0, &mut |chosen| {
        if let Some(point) = solve_square(halfspaces, chosen) {
            let feasible = halfspaces
                .iter()
                .all(|h| h.evaluate(&point) <= h.offset);
            if feasible && !vertices.iter().any(|(p, _)| *p == point) {
                let active: Vec<usize> = halfspaces
                    .iter()
                    .enumerate()
                    .filter(|(_, h)| h.evaluate(&point) == h.offset)
                    .map(|(i, _)| i)
                    .collect();
                vertices.push((point, active));
            }
        }
    });

    if let Some((point, active)) = vertices.iter().find(|(_, active)| active.len() > n) {
        let names: Vec<String> = active.iter().map(|&i| facet_name(i)).collect();
        return Err(DelzantError::NotSimpleError(format!(
            "{} facets {{{}}} meet at {}",
            active.len(),
            names.join(", "),
            format_point(point)
        )));
    }

    let normals: Vec<IntVector> = halfspaces.iter().map(|h| h.normal.clone()).collect();
    if vertices.is_empty() {
        return if recession_cone_is_trivial(&normals, n) {
            Err(DelzantError::NotSimpleError(
                "no vertices; the feasible set is empty or degenerate".into(),
            ))
        } else {
            Err(DelzantError::UnboundedError)
        };
    }
    if !recession_cone_is_trivial(&normals, n) {
        return Err(DelzantError::UnboundedError);
    }
    for i in 0..m {
        if !vertices.iter().any(|(_, active)| active.contains(&i)) {
            return Err(DelzantError::RedundantFacetError(facet_name(i)));
        }
    }

    let facet_names: Vec<String> = (0..m).map(facet_name).collect();
    let maximal: Vec<Vec<String>> = vertices
        .iter()
        .map(|(_, active)| active.iter().map(|&i| facet_name(i)).collect())
        .collect();
    let complex = SimplicialComplex::new(facet_names, maximal).map_err(PairError::from)?;
    let lambda: Vec<IntVector> = complex
        .vertices()
        .iter()
        .map(|name| {
            let idx: usize = name[1..].parse::<usize>().expect("generated name") - 1;
            normals[idx].clone()
        })
        .collect();
    let pair = pair_from_aligned(n, complex, lambda);
    let report = pair.validate();
    if !report.is_valid() {
        return Err(PairError::InvalidPairError(format!(
            "polytope is simple but not Delzant: {}",
            report.lines().join("; ")
        ))
        .into());
    }
    Ok(pair)
}

fn facet_name(i: usize) -> String {
    format!("F{}", i + 1)
}

fn format_point(p: &[BigRational]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn enumerate_subsets(
    m: usize,
    n: usize,
    subset: &mut Vec<usize>,
    depth: usize,
    start: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if depth == n {
        visit(subset);
        return;
    }
    for i in start..m {
        subset[depth] = i;
        enumerate_subsets(m, n, subset, depth + 1, i + 1, visit);
    }
}

/// Unique solution of the n x n system `<normal_i, x> = offset_i`, if any.
fn solve_square(halfspaces: &[Halfspace], chosen: &[usize]) -> Option<Vec<BigRational>> {
    let n = chosen.len();
    let mut aug: Vec<Vec<BigRational>> = chosen
        .iter()
        .map(|&i| {
            let h = &halfspaces[i];
            let mut row: Vec<BigRational> = h
                .normal
                .iter()
                .map(|a| BigRational::from_integer(a.clone()))
                .collect();
            row.push(h.offset.clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let p = aug[col][col].clone();
        for x in aug[col].iter_mut() {
            *x /= p.clone();
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                let pivot_row = aug[col].clone();
                for (entry, p) in aug[r].iter_mut().zip(&pivot_row) {
                    *entry -= factor.clone() * p;
                }
            }
        }
    }
    Some(aug.iter().map(|row| row[n].clone()).collect())
}

/// True iff `{d : <normal_i, d> <= 0 for all i} = {0}`, by Fourier-Motzkin
/// projection onto each coordinate.
fn recession_cone_is_trivial(normals: &[IntVector], n: usize) -> bool {
    (0..n).all(|keep| {
        let mut rows: Vec<Vec<Int>> = normals
            .iter()
            .map(|v| v.entries().to_vec())
            .collect();
        for drop in (0..n).rev() {
            if drop == keep {
                continue;
            }
            rows = eliminate(rows, drop);
            rows = dedup_scaled(rows);
        }
        // rows now constrain d_keep alone
        let mut upper = false; // some c > 0: d <= 0
        let mut lower = false; // some c < 0: d >= 0
        for row in &rows {
            let c = &row[keep];
            if c.is_positive() {
                upper = true;
            } else if c.is_negative() {
                lower = true;
            }
        }
        upper && lower
    })
}

/// Fourier-Motzkin step for the homogeneous system `rows * d <= 0`,
/// eliminating coordinate `drop` (coefficients stay integral).
fn eliminate(rows: Vec<Vec<Int>>, drop: usize) -> Vec<Vec<Int>> {
    let mut kept: Vec<Vec<Int>> = Vec::new();
    let mut pos: Vec<Vec<Int>> = Vec::new();
    let mut neg: Vec<Vec<Int>> = Vec::new();
    for row in rows {
        if row[drop].is_zero() {
            kept.push(row);
        } else if row[drop].is_positive() {
            pos.push(row);
        } else {
            neg.push(row);
        }
    }
    for p in &pos {
        for q in &neg {
            // coefficient of `drop` cancels; both weights positive
            let a = p[drop].clone();
            let b = -q[drop].clone();
            let combined: Vec<Int> = p
                .iter()
                .zip(q)
                .map(|(x, y)| &b * x + &a * y)
                .collect();
            if combined.iter().any(|v| !v.is_zero()) {
                kept.push(combined);
            }
        }
    }
    kept
}

/// Removes duplicate rows up to positive scaling.
fn dedup_scaled(rows: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    let mut out: Vec<Vec<Int>> = Vec::new();
    for row in rows {
        let v = IntVector::new(row.clone());
        let content = v.content();
        let reduced: Vec<Int> = if content.is_zero() {
            continue;
        } else {
            row.iter().map(|x| x / &content).collect()
        };
        if !out.contains(&reduced) {
            out.push(reduced);
        }
    }
    out
}

/// Report of the outward-normal sign check: for pairs built by
/// [`delzant_pair`] no two facets may have duals related by `-1` without
/// being equal. A violation indicates a bug or a non-Delzant input.
#[derive(Debug, Clone)]
pub struct SignTheoremReport {
    pub violations: Vec<SignViolation>,
    pub checked_pairs: usize,
}

#[derive(Debug, Clone)]
pub struct SignViolation {
    pub facet_a: String,
    pub facet_b: String,
    pub representative_a: IntVector,
    pub representative_b: IntVector,
}

impl SignTheoremReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the outward-normal omniorientation: any two facets whose duals
/// agree up to sign must agree exactly.
pub fn check_delzant_sign_theorem(
    pair: &CharacteristicPair,
) -> Result<SignTheoremReport, PairError> {
    let model = pair.cohomology_model()?;
    let m = pair.facet_count();
    let mut violations = Vec::new();
    let mut checked = 0;
    for i in 0..m {
        let neg = model.presentation.canonical_neg(&model.pd[i]);
        for j in i + 1..m {
            checked += 1;
            if model.pd[j] == neg && model.pd[j] != model.pd[i] {
                violations.push(SignViolation {
                    facet_a: pair.facets()[i].clone(),
                    facet_b: pair.facets()[j].clone(),
                    representative_a: model.pd[i].clone(),
                    representative_b: model.pd[j].clone(),
                });
            }
        }
    }
    Ok(SignTheoremReport {
        violations,
        checked_pairs: checked,
    })
}
