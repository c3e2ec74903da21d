//! Equivariant blow-up and blow-down at the pair level: stellar subdivision
//! of the complex at a face plus the exceptional column `-sum lambda`.

use super::{classify_class, pairs_equal_unordered, sort_by_facet_order, ClassCase, SymmetryError};
use crate::charpair::{CharacteristicPair, PairError};
use crate::complex::SimplicialComplex;
use crate::lattice::IntVector;
use std::collections::BTreeMap;

/// Stellar blow-up at an arbitrary face of size >= 2: faces containing the
/// center are subdivided through a fresh exceptional facet `E` (first unused
/// of `E`, `E2`, `E3`, ...) with `lambda(E) = -sum_{F in face} lambda(F)`.
/// Returns the new pair and the exceptional label.
pub fn stellar_blowup(
    pair: &CharacteristicPair,
    face: &[String],
) -> Result<(CharacteristicPair, String), SymmetryError> {
    let label = fresh_exceptional_label(pair);
    let blown = stellar_blowup_labeled(pair, face, &label)?;
    Ok((blown, label))
}

/// Blow-up of a whole facet class; requires the class to be of blow-up type
/// (the class is a face). Checks the classes after subdivision: proper
/// transforms keep their partition and the exceptional facet is a singleton.
pub fn blowup_class(
    pair: &CharacteristicPair,
    class: &[String],
) -> Result<(CharacteristicPair, String), SymmetryError> {
    let face = match classify_class(pair, class)? {
        ClassCase::Case2 { face } => face,
        ClassCase::Case1 { .. } => {
            return Err(SymmetryError::CaseMismatchError(format!(
                "class {{{}}} is not a face; split it off instead",
                class.join(", ")
            )))
        }
    };
    let before = pair.facet_classes()?;
    let (blown, label) = stellar_blowup(pair, &face)?;
    let after = blown.facet_classes()?;
    let exceptional_class = after
        .class_of(&label)
        .expect("exceptional facet has a class");
    if exceptional_class.size() != 1 {
        return Err(SymmetryError::TheoryViolation(format!(
            "exceptional facet {} shares its dual with {{{}}}",
            label,
            exceptional_class.facets.join(", ")
        )));
    }
    let old_blocks: Vec<Vec<String>> = before.blocks();
    let new_blocks: Vec<Vec<String>> = after
        .blocks()
        .into_iter()
        .filter(|b| !b.contains(&label))
        .collect();
    if old_blocks != new_blocks {
        return Err(SymmetryError::TheoryViolation(
            "blow-up changed the class partition of the proper transforms".into(),
        ));
    }
    Ok((blown, label))
}

pub(crate) fn fresh_exceptional_label(pair: &CharacteristicPair) -> String {
    let mut counter = 1usize;
    loop {
        let candidate = if counter == 1 {
            "E".to_string()
        } else {
            format!("E{}", counter)
        };
        if pair.complex().position_of(&candidate).is_none() {
            return candidate;
        }
        counter += 1;
    }
}

pub(crate) fn stellar_blowup_labeled(
    pair: &CharacteristicPair,
    face: &[String],
    label: &str,
) -> Result<CharacteristicPair, SymmetryError> {
    if face.len() < 2 {
        return Err(SymmetryError::CaseMismatchError(format!(
            "blow-up center {{{}}} must have at least two facets",
            face.join(", ")
        )));
    }
    if !pair.complex().is_face(face)? {
        return Err(SymmetryError::Pair(PairError::NotAFaceError(
            face.join(", "),
        )));
    }
    if pair.complex().position_of(label).is_some() {
        return Err(SymmetryError::TheoryViolation(format!(
            "exceptional label {} already present",
            label
        )));
    }
    let mut center = face.to_vec();
    sort_by_facet_order(pair, &mut center)?;

    let mut vertices: Vec<String> = pair.facets().to_vec();
    vertices.push(label.to_string());
    let mut maximal: Vec<Vec<String>> = Vec::new();
    for tau in pair.complex().maximal_faces() {
        if center.iter().all(|f| tau.contains(f)) {
            for dropped in &center {
                let mut replaced: Vec<String> =
                    tau.iter().filter(|f| *f != dropped).cloned().collect();
                replaced.push(label.to_string());
                maximal.push(replaced);
            }
        } else {
            maximal.push(tau);
        }
    }
    let complex = SimplicialComplex::new(vertices, maximal).map_err(SymmetryError::Complex)?;

    let mut exceptional = IntVector::zeros(pair.rank());
    for f in &center {
        exceptional = exceptional.add(pair.lambda_of(f)?);
    }
    let mut lambda: BTreeMap<String, IntVector> = pair.lambda_map();
    lambda.insert(label.to_string(), exceptional.neg());

    let blown = CharacteristicPair::new(pair.rank(), complex, lambda)?;
    let report = blown.validate();
    if !report.is_valid() {
        return Err(SymmetryError::TheoryViolation(format!(
            "blow-up at {{{}}} produced an invalid pair: {}",
            center.join(", "),
            report.lines().join("; ")
        )));
    }
    Ok(blown)
}

/// Inverse of the stellar blow-up: finds the center `sigma` with
/// `lambda(E) = -sum lambda(sigma)` whose re-subdivision reproduces the pair
/// exactly, and removes `E`. A pair can admit several valid centers (two
/// sphere-bundle directions can share an exceptional facet); candidates are
/// searched largest first, in facet order within a size, so undoing a
/// blow-up recovers its center.
pub fn blowdown(
    pair: &CharacteristicPair,
    exceptional: &str,
) -> Result<CharacteristicPair, SymmetryError> {
    let e_lambda = pair.lambda_of(exceptional)?.clone();
    let link = pair.complex().link_of_vertex(exceptional)?;
    let link_vertices: Vec<String> = link.vertices().to_vec();

    for size in (2..=pair.rank()).rev() {
        for combo in combinations(&link_vertices, size) {
            let mut sum = IntVector::zeros(pair.rank());
            for f in &combo {
                sum = sum.add(pair.lambda_of(f)?);
            }
            if sum.neg() != e_lambda {
                continue;
            }
            if let Some(candidate) = try_blowdown_center(pair, exceptional, &combo)? {
                return Ok(candidate);
            }
        }
    }
    Err(SymmetryError::NotExceptionalError(exceptional.to_string()))
}

/// Builds the blow-down along `center` and verifies it by re-subdividing.
fn try_blowdown_center(
    pair: &CharacteristicPair,
    exceptional: &str,
    center: &[String],
) -> Result<Option<CharacteristicPair>, SymmetryError> {
    let vertices: Vec<String> = pair
        .facets()
        .iter()
        .filter(|f| f.as_str() != exceptional)
        .cloned()
        .collect();
    let mut maximal: Vec<Vec<String>> = Vec::new();
    for tau in pair.complex().maximal_faces() {
        if tau.iter().any(|f| f == exceptional) {
            let mut merged: Vec<String> =
                tau.iter().filter(|f| f.as_str() != exceptional).cloned().collect();
            for c in center {
                if !merged.contains(c) {
                    merged.push(c.clone());
                }
            }
            maximal.push(merged);
        } else {
            maximal.push(tau);
        }
    }
    let complex = match SimplicialComplex::new(vertices, maximal) {
        Ok(c) => c,
        Err(_) => return Ok(None),
    };
    let mut lambda = pair.lambda_map();
    lambda.remove(exceptional);
    let candidate = match CharacteristicPair::new(pair.rank(), complex, lambda) {
        Ok(p) => p,
        Err(_) => return Ok(None),
    };
    if !candidate.is_valid() {
        return Ok(None);
    }
    match stellar_blowup_labeled(&candidate, center, exceptional) {
        Ok(reblown) if pairs_equal_unordered(&reblown, pair) => Ok(Some(candidate)),
        _ => Ok(None),
    }
}

/// k-subsets in position order.
fn combinations(items: &[String], k: usize) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    combine(items, k, 0, &mut stack, &mut out);
    out
}

fn combine(
    items: &[String],
    k: usize,
    start: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<String>>,
) {
    if stack.len() == k {
        out.push(stack.iter().map(|&i| items[i].clone()).collect());
        return;
    }
    for i in start..items.len() {
        stack.push(i);
        combine(items, k, i + 1, stack, out);
        stack.pop();
    }
}
