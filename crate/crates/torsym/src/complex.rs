//! Combinatorics of the simplicial complex dual to a simple polytope: face
//! queries, vertex links, joins with simplex boundaries, and isomorphism
//! search by backtracking.
//!
//! Vertices carry stable string identifiers and an explicit order (the facet
//! order of the pair they belong to); every operation preserves that order on
//! surviving vertices. Faces are stored through their maximal elements only.

use itertools::Itertools;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("unknown vertex {0:?}")]
    UnknownVertexError(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("label {0:?} collides with an existing vertex")]
    LabelCollisionError(String),
    #[error("join requires k >= 2, got {0}")]
    JoinTooSmall(usize),
}

/// A pure simplicial complex given by its maximal faces.
///
/// The complex of a point (rank 0) is `{ {} }`: no vertices, one empty
/// maximal face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    index: BTreeMap<String, usize>,
    /// Sorted position sets, deduplicated, in lexicographic order.
    maximal: Vec<Vec<usize>>,
}

/// A bijection between the vertex sets of two complexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexBijection {
    map: BTreeMap<String, String>,
}

impl VertexBijection {
    pub fn new(map: BTreeMap<String, String>) -> Self {
        VertexBijection { map }
    }

    pub fn identity<'a>(names: impl Iterator<Item = &'a String>) -> Self {
        VertexBijection {
            map: names.map(|n| (n.clone(), n.clone())).collect(),
        }
    }

    pub fn apply(&self, v: &str) -> &str {
        &self.map[v]
    }

    pub fn get(&self, v: &str) -> Option<&String> {
        self.map.get(v)
    }

    pub fn mapping(&self) -> &BTreeMap<String, String> {
        &self.map
    }

    pub fn inverse(&self) -> VertexBijection {
        VertexBijection {
            map: self.map.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }

    /// `self` after `first`: x -> self(first(x)).
    pub fn compose_after(&self, first: &VertexBijection) -> VertexBijection {
        VertexBijection {
            map: first
                .map
                .iter()
                .map(|(a, b)| (a.clone(), self.map[b].clone()))
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(a, b)| a == b)
    }
}

impl fmt::Display for VertexBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .map
            .iter()
            .map(|(a, b)| format!("{} -> {}", a, b))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Structured validation outcome; empty issue list means valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexReport {
    pub issues: Vec<ComplexIssue>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexIssue {
    /// Maximal face of the wrong cardinality for the requested rank.
    NotPure { face: Vec<String>, expected: usize },
    /// One maximal face contained in another.
    Sperner { contained: Vec<String>, container: Vec<String> },
    /// A ridge lying in more than two maximal faces.
    Ridge { ridge: Vec<String>, count: usize },
    /// A declared vertex absent from every maximal face.
    UncoveredVertex { vertex: String },
    /// No maximal faces at all (the void complex).
    Void,
}

impl ComplexReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ComplexIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexIssue::NotPure { face, expected } => write!(
                f,
                "maximal face {{{}}} does not have the expected {} vertices",
                face.join(", "),
                expected
            ),
            ComplexIssue::Sperner { contained, container } => write!(
                f,
                "maximal face {{{}}} is contained in {{{}}}",
                contained.join(", "),
                container.join(", ")
            ),
            ComplexIssue::Ridge { ridge, count } => write!(
                f,
                "ridge {{{}}} lies in {} maximal faces",
                ridge.join(", "),
                count
            ),
            ComplexIssue::UncoveredVertex { vertex } => {
                write!(f, "vertex {} lies in no maximal face", vertex)
            }
            ComplexIssue::Void => write!(f, "complex has no maximal faces"),
        }
    }
}

impl SimplicialComplex {
    pub fn new(
        vertices: Vec<String>,
        maximal_faces: Vec<Vec<String>>,
    ) -> Result<Self, ComplexError> {
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(ComplexError::DuplicateVertex(v.clone()));
            }
        }
        let mut maximal: Vec<Vec<usize>> = Vec::new();
        for face in maximal_faces {
            let mut pos = Vec::with_capacity(face.len());
            for v in &face {
                match index.get(v) {
                    Some(&i) => pos.push(i),
                    None => return Err(ComplexError::UnknownVertexError(v.clone())),
                }
            }
            pos.sort_unstable();
            pos.dedup();
            maximal.push(pos);
        }
        maximal.sort();
        maximal.dedup();
        Ok(SimplicialComplex {
            vertices,
            index,
            maximal,
        })
    }

    /// The complex of a point: one empty maximal face.
    pub fn point() -> Self {
        SimplicialComplex {
            vertices: Vec::new(),
            index: BTreeMap::new(),
            maximal: vec![Vec::new()],
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn position_of(&self, v: &str) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn maximal_face_count(&self) -> usize {
        self.maximal.len()
    }

    pub fn maximal_faces(&self) -> Vec<Vec<String>> {
        self.maximal
            .iter()
            .map(|face| face.iter().map(|&i| self.vertices[i].clone()).collect())
            .collect()
    }

    pub(crate) fn maximal_positions(&self) -> &[Vec<usize>] {
        &self.maximal
    }

    /// Validity at rank `n`: purity at dimension n-1, Sperner condition,
    /// every ridge in at most two maximal faces, every vertex covered.
    pub fn validate(&self, n: usize) -> ComplexReport {
        let mut issues = Vec::new();
        if self.maximal.is_empty() {
            issues.push(ComplexIssue::Void);
        }
        for face in &self.maximal {
            if face.len() != n {
                issues.push(ComplexIssue::NotPure {
                    face: self.names(face),
                    expected: n,
                });
            }
        }
        for (a, b) in self.maximal.iter().tuple_combinations() {
            if is_subset(a, b) {
                issues.push(ComplexIssue::Sperner {
                    contained: self.names(a),
                    container: self.names(b),
                });
            } else if is_subset(b, a) {
                issues.push(ComplexIssue::Sperner {
                    contained: self.names(b),
                    container: self.names(a),
                });
            }
        }
        let mut ridge_count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for face in &self.maximal {
            if face.is_empty() {
                continue;
            }
            for skip in 0..face.len() {
                let ridge: Vec<usize> = face
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                *ridge_count.entry(ridge).or_insert(0) += 1;
            }
        }
        for (ridge, count) in ridge_count {
            if count > 2 {
                issues.push(ComplexIssue::Ridge {
                    ridge: self.names(&ridge),
                    count,
                });
            }
        }
        let covered: BTreeSet<usize> = self.maximal.iter().flatten().copied().collect();
        for (i, v) in self.vertices.iter().enumerate() {
            if !covered.contains(&i) {
                issues.push(ComplexIssue::UncoveredVertex { vertex: v.clone() });
            }
        }
        ComplexReport { issues }
    }

    fn names(&self, positions: &[usize]) -> Vec<String> {
        positions.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// True iff `sigma` is contained in some maximal face.
    pub fn is_face(&self, sigma: &[String]) -> Result<bool, ComplexError> {
        let mut pos = Vec::with_capacity(sigma.len());
        for v in sigma {
            match self.index.get(v) {
                Some(&i) => pos.push(i),
                None => return Err(ComplexError::UnknownVertexError(v.clone())),
            }
        }
        pos.sort_unstable();
        pos.dedup();
        Ok(self.maximal.iter().any(|face| is_subset(&pos, face)))
    }

    /// The link of `v`: vertices adjacent to `v`, maximal faces
    /// `tau - {v}` for maximal `tau` containing `v`. Vertex order inherited.
    pub fn link_of_vertex(&self, v: &str) -> Result<SimplicialComplex, ComplexError> {
        let vi = self
            .position_of(v)
            .ok_or_else(|| ComplexError::UnknownVertexError(v.to_string()))?;
        let star: Vec<Vec<usize>> = self
            .maximal
            .iter()
            .filter(|face| face.contains(&vi))
            .map(|face| face.iter().copied().filter(|&w| w != vi).collect())
            .collect();
        let kept: BTreeSet<usize> = star.iter().flatten().copied().collect();
        let vertices: Vec<String> = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| kept.contains(i))
            .map(|(_, name)| name.clone())
            .collect();
        let faces: Vec<Vec<String>> = star
            .iter()
            .map(|face| face.iter().map(|&i| self.vertices[i].clone()).collect())
            .collect();
        SimplicialComplex::new(vertices, faces)
    }

    /// The join `boundary(simplex on labels) * self`; `k = labels.len() >= 2`
    /// fresh vertices come first in the resulting order.
    pub fn join_with_simplex_boundary(
        &self,
        labels: &[String],
    ) -> Result<SimplicialComplex, ComplexError> {
        if labels.len() < 2 {
            return Err(ComplexError::JoinTooSmall(labels.len()));
        }
        let mut seen = BTreeSet::new();
        for l in labels {
            if self.index.contains_key(l) || !seen.insert(l.clone()) {
                return Err(ComplexError::LabelCollisionError(l.clone()));
            }
        }
        let mut vertices: Vec<String> = labels.to_vec();
        vertices.extend(self.vertices.iter().cloned());
        let mut faces = Vec::new();
        for skip in 0..labels.len() {
            let part: Vec<String> = labels
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, l)| l.clone())
                .collect();
            for tau in &self.maximal {
                let mut face = part.clone();
                face.extend(tau.iter().map(|&i| self.vertices[i].clone()));
                faces.push(face);
            }
        }
        SimplicialComplex::new(vertices, faces)
    }

    /// All vertex bijections onto `other` carrying maximal faces onto maximal
    /// faces, in deterministic order. Empty iff the complexes are not
    /// isomorphic.
    pub fn isomorphisms(&self, other: &SimplicialComplex) -> Vec<VertexBijection> {
        if self.vertices.len() != other.vertices.len()
            || self.maximal.len() != other.maximal.len()
        {
            return Vec::new();
        }
        let sizes_a: Vec<usize> = self.maximal.iter().map(Vec::len).sorted().collect();
        let sizes_b: Vec<usize> = other.maximal.iter().map(Vec::len).sorted().collect();
        if sizes_a != sizes_b {
            return Vec::new();
        }
        if self.vertices.is_empty() {
            // the point complex maps to itself in exactly one way
            return vec![VertexBijection::new(BTreeMap::new())];
        }

        let inv_a = Invariants::of(self);
        let inv_b = Invariants::of(other);
        let n = self.vertices.len();
        let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(n);
        for i in 0..n {
            let c: Vec<usize> = (0..n).filter(|&j| inv_a.key(i) == inv_b.key(j)).collect();
            if c.is_empty() {
                return Vec::new();
            }
            candidates.push(c);
        }

        let mut out = Vec::new();
        let mut assignment = vec![usize::MAX; n];
        let mut used = vec![false; n];
        backtrack(
            self,
            other,
            &inv_a,
            &inv_b,
            &candidates,
            0,
            &mut assignment,
            &mut used,
            &mut out,
        );
        out
    }
}

struct Invariants {
    degree: Vec<usize>,
    face_count: Vec<usize>,
    adjacent: Vec<BTreeSet<usize>>,
}

impl Invariants {
    fn of(k: &SimplicialComplex) -> Invariants {
        let n = k.vertices.len();
        let mut adjacent = vec![BTreeSet::new(); n];
        let mut face_count = vec![0usize; n];
        for face in &k.maximal {
            for &v in face {
                face_count[v] += 1;
            }
            for (&a, &b) in face.iter().tuple_combinations() {
                adjacent[a].insert(b);
                adjacent[b].insert(a);
            }
        }
        let degree = adjacent.iter().map(BTreeSet::len).collect();
        Invariants {
            degree,
            face_count,
            adjacent,
        }
    }

    fn key(&self, v: usize) -> (usize, usize) {
        (self.degree[v], self.face_count[v])
    }
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    inv_a: &Invariants,
    inv_b: &Invariants,
    candidates: &[Vec<usize>],
    depth: usize,
    assignment: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<VertexBijection>,
) {
    let n = a.vertices.len();
    if depth == n {
        if faces_match(a, b, assignment) {
            let map = assignment
                .iter()
                .enumerate()
                .map(|(i, &j)| (a.vertices[i].clone(), b.vertices[j].clone()))
                .collect();
            out.push(VertexBijection::new(map));
        }
        return;
    }
    'next: for &cand in &candidates[depth] {
        if used[cand] {
            continue;
        }
        // adjacency with already-assigned vertices must be preserved
        for (prev, &image) in assignment.iter().enumerate().take(depth) {
            let adj_a = inv_a.adjacent[depth].contains(&prev);
            let adj_b = inv_b.adjacent[cand].contains(&image);
            if adj_a != adj_b {
                continue 'next;
            }
        }
        assignment[depth] = cand;
        used[cand] = true;
        backtrack(a, b, inv_a, inv_b, candidates, depth + 1, assignment, used, out);
        used[cand] = false;
        assignment[depth] = usize::MAX;
    }
}

fn faces_match(a: &SimplicialComplex, b: &SimplicialComplex, assignment: &[usize]) -> bool {
    a.maximal.iter().all(|face| {
        let image: Vec<usize> = face.iter().map(|&v| assignment[v]).sorted().collect();
        b.maximal.binary_search(&image).is_ok()
    })
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    pub(crate) fn triangle() -> SimplicialComplex {
        SimplicialComplex::new(
            names(&["F1", "F2", "F3"]),
            vec![names(&["F1", "F2"]), names(&["F1", "F3"]), names(&["F2", "F3"])],
        )
        .unwrap()
    }

    fn four_cycle() -> SimplicialComplex {
        SimplicialComplex::new(
            names(&["F1", "F2", "F3", "F4"]),
            vec![
                names(&["F1", "F2"]),
                names(&["F2", "F3"]),
                names(&["F3", "F4"]),
                names(&["F4", "F1"]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(triangle().validate(2).is_valid());
        assert!(four_cycle().validate(2).is_valid());

        let not_pure = SimplicialComplex::new(
            names(&["F1", "F2", "F3"]),
            vec![names(&["F1", "F2"]), names(&["F3"])],
        )
        .unwrap();
        let report = not_pure.validate(2);
        assert!(!report.is_valid());
        assert!(report
            .issues
            .iter()
            .any(|i| matches!(i, ComplexIssue::NotPure { .. })));
    }

    #[test]
    fn validate_ridge_overcrowding() {
        let k = SimplicialComplex::new(
            names(&["A", "B", "C", "D"]),
            vec![names(&["A", "B"]), names(&["A", "C"]), names(&["A", "D"])],
        )
        .unwrap();
        let report = k.validate(2);
        assert!(report
            .issues
            .iter()
            .any(|i| matches!(i, ComplexIssue::Ridge { count: 3, .. })));
    }

    #[test]
    fn face_queries() {
        let t = triangle();
        assert!(t.is_face(&names(&["F1", "F2"])).unwrap());
        assert!(!t.is_face(&names(&["F1", "F2", "F3"])).unwrap());
        assert!(t.is_face(&[]).unwrap());
        let c = four_cycle();
        assert!(!c.is_face(&names(&["F1", "F3"])).unwrap());
        assert!(matches!(
            c.is_face(&names(&["F9"])),
            Err(ComplexError::UnknownVertexError(_))
        ));
    }

    #[test]
    fn link_examples() {
        let t = triangle();
        let link = t.link_of_vertex("F1").unwrap();
        assert_eq!(link.vertices(), &["F2".to_string(), "F3".to_string()]);
        assert_eq!(link.maximal_faces(), vec![vec!["F2"], vec!["F3"]]);
        assert!(link.validate(1).is_valid());

        let c = four_cycle();
        let link = c.link_of_vertex("F1").unwrap();
        assert_eq!(link.maximal_faces(), vec![vec!["F2"], vec!["F4"]]);
    }

    #[test]
    fn join_examples() {
        // point * boundary of 2-simplex = triangle
        let joined = SimplicialComplex::point()
            .join_with_simplex_boundary(&names(&["F1", "F2", "F3"]))
            .unwrap();
        assert_eq!(joined, triangle());

        // two-point complex joined with two fresh points = 4-cycle
        let two_points = SimplicialComplex::new(
            names(&["F1", "F2"]),
            vec![names(&["F1"]), names(&["F2"])],
        )
        .unwrap();
        let joined = two_points
            .join_with_simplex_boundary(&names(&["G1", "G2"]))
            .unwrap();
        assert_eq!(joined.vertex_count(), 4);
        assert_eq!(joined.maximal_face_count(), 4);
        assert!(joined.validate(2).is_valid());
        assert_eq!(joined.isomorphisms(&four_cycle()).len(), 8);

        assert!(matches!(
            four_cycle().join_with_simplex_boundary(&names(&["F1", "X"])),
            Err(ComplexError::LabelCollisionError(_))
        ));
    }

    #[test]
    fn join_then_link_recovers_join_of_smaller_boundary() {
        let t = triangle();
        let joined = t.join_with_simplex_boundary(&names(&["X", "Y", "Z"])).unwrap();
        let link = joined.link_of_vertex("X").unwrap();
        let expected = t.join_with_simplex_boundary(&names(&["Y", "Z"])).unwrap();
        assert!(!link.isomorphisms(&expected).is_empty());
    }

    #[test]
    fn isomorphism_counts() {
        assert_eq!(triangle().isomorphisms(&triangle()).len(), 6);
        let c = four_cycle();
        assert_eq!(c.isomorphisms(&c).len(), 8);
        assert!(triangle().isomorphisms(&c).is_empty());
    }

    #[test]
    fn isomorphisms_form_a_group() {
        let c = four_cycle();
        let autos = c.isomorphisms(&c);
        for f in &autos {
            assert!(autos.contains(&f.inverse()));
            for g in &autos {
                assert!(autos.contains(&f.compose_after(g)));
            }
        }
    }

    #[test]
    fn prism_link() {
        // boundary of triangle joined with two fresh points: dual of a prism
        let prism = triangle()
            .join_with_simplex_boundary(&names(&["B1", "B2"]))
            .unwrap();
        assert!(prism.validate(3).is_valid());
        let link = prism.link_of_vertex("B1").unwrap();
        assert_eq!(link, triangle());
    }

    #[test]
    fn links_of_valid_complexes_are_valid() {
        let prism = triangle()
            .join_with_simplex_boundary(&names(&["B1", "B2"]))
            .unwrap();
        for (k, n) in [(triangle(), 2usize), (four_cycle(), 2), (prism, 3)] {
            assert!(k.validate(n).is_valid());
            for v in k.vertices() {
                let link = k.link_of_vertex(v).unwrap();
                assert!(link.validate(n - 1).is_valid(), "link at {} invalid", v);
            }
        }
    }

    #[test]
    fn isomorphism_order_is_deterministic() {
        let c = four_cycle();
        assert_eq!(c.isomorphisms(&c), c.isomorphisms(&c));
    }

    #[test]
    fn point_complex() {
        let p = SimplicialComplex::point();
        assert!(p.validate(0).is_valid());
        assert_eq!(p.isomorphisms(&p).len(), 1);
    }
}
