//! Characteristic pairs `(K, lambda)` and the operations the symmetry
//! analysis is built from: validation, the additive degree-2 cohomology
//! model, omniorientation normalization, the partition of facets by
//! Poincare dual, face restrictions, and pair isomorphism.

mod delzant;

pub use delzant::{
    check_delzant_sign_theorem, delzant_pair, DelzantError, Halfspace, SignTheoremReport,
};

use crate::complex::{ComplexError, ComplexIssue, SimplicialComplex, VertexBijection};
use crate::lattice::{
    cokernel_presentation, inverse_unimodular, is_part_of_basis, quotient_by_primitive,
    AbelianGroupPresentation, IntMatrix, IntVector, LatticeError,
};
use num_traits::Signed;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PairError {
    #[error("invalid characteristic pair: {0}")]
    InvalidPairError(String),
    #[error("facet {0} has Poincare dual zero; the pair cannot be normalized")]
    ZeroDualError(String),
    #[error("pair is not normalized: duals of {0} and {1} differ exactly by sign")]
    NotNormalizedError(String, String),
    #[error("{{{0}}} is not a face")]
    NotAFaceError(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatchError(usize, usize),
    #[error("unknown facet {0}")]
    UnknownFacet(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A simplicial complex on the facet set together with `lambda` values in
/// `Z^n`, one per facet, aligned with the complex's vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicPair {
    n: usize,
    complex: SimplicialComplex,
    lambda: Vec<IntVector>,
}

/// Validation outcome for a pair; empty issue list means valid.
#[derive(Debug, Clone)]
pub struct PairReport {
    pub complex_issues: Vec<ComplexIssue>,
    pub lambda_issues: Vec<String>,
    /// Maximal faces whose lambda columns are not part of a lattice basis.
    pub singular_faces: Vec<Vec<String>>,
}

impl PairReport {
    pub fn is_valid(&self) -> bool {
        self.complex_issues.is_empty()
            && self.lambda_issues.is_empty()
            && self.singular_faces.is_empty()
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for issue in &self.complex_issues {
            out.push(format!("complex: {}", issue));
        }
        for issue in &self.lambda_issues {
            out.push(format!("lambda: {}", issue));
        }
        for face in &self.singular_faces {
            out.push(format!(
                "nonsingularity fails at face {{{}}}",
                face.join(", ")
            ));
        }
        out
    }
}

/// Free abelian presentation of `H^2` with the Poincare dual of each facet as
/// a canonical coset representative (coordinates indexed by facets).
#[derive(Debug, Clone)]
pub struct CohomologyModel {
    pub presentation: AbelianGroupPresentation,
    /// Canonical representative of `PD(F_i)`, aligned with the facet order.
    pub pd: Vec<IntVector>,
}

impl CohomologyModel {
    pub fn free_rank(&self) -> usize {
        self.presentation.free_rank()
    }
}

/// Sign per facet; applying the signs to the lambda columns preserves
/// validity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmniOrientationSigns {
    signs: Vec<i8>,
    facets: Vec<String>,
}

impl OmniOrientationSigns {
    pub fn identity(facets: Vec<String>) -> Self {
        OmniOrientationSigns {
            signs: vec![1; facets.len()],
            facets,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }

    pub fn sign_of(&self, facet: &str) -> Option<i8> {
        self.facets
            .iter()
            .position(|f| f == facet)
            .map(|i| self.signs[i])
    }

    pub fn flipped_facets(&self) -> Vec<String> {
        self.facets
            .iter()
            .zip(&self.signs)
            .filter(|(_, &s)| s == -1)
            .map(|(f, _)| f.clone())
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&String, i8)> {
        self.facets.iter().zip(self.signs.iter().copied())
    }
}

/// One class of facets sharing a Poincare dual, labeled by the canonical
/// representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetClass {
    pub facets: Vec<String>,
    pub representative: IntVector,
}

impl FacetClass {
    pub fn size(&self) -> usize {
        self.facets.len()
    }
}

/// Disjoint classes covering the facet set, ordered by first facet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetClassPartition {
    pub classes: Vec<FacetClass>,
}

impl FacetClassPartition {
    pub fn class_of(&self, facet: &str) -> Option<&FacetClass> {
        self.classes
            .iter()
            .find(|c| c.facets.iter().any(|f| f == facet))
    }

    /// Facet sets only, for Weyl-partition comparisons.
    pub fn blocks(&self) -> Vec<Vec<String>> {
        self.classes.iter().map(|c| c.facets.clone()).collect()
    }
}

/// Witness of a pair isomorphism: `g * lambda(F) = lambda'(f F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairIsomorphism {
    pub f: VertexBijection,
    pub g: IntMatrix,
}

/// Whether lambda columns are compared exactly or up to a per-facet sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignMode {
    Exact,
    UpToSign,
}

impl CharacteristicPair {
    pub fn new(
        n: usize,
        complex: SimplicialComplex,
        lambda: BTreeMap<String, IntVector>,
    ) -> Result<Self, PairError> {
        let mut aligned = Vec::with_capacity(complex.vertex_count());
        for v in complex.vertices() {
            let vec = lambda
                .get(v)
                .ok_or_else(|| PairError::UnknownFacet(v.clone()))?;
            if vec.len() != n {
                return Err(PairError::InvalidPairError(format!(
                    "lambda({}) has length {}, expected {}",
                    v,
                    vec.len(),
                    n
                )));
            }
            aligned.push(vec.clone());
        }
        if lambda.len() != complex.vertex_count() {
            let stray = lambda
                .keys()
                .find(|k| complex.position_of(k).is_none())
                .cloned()
                .unwrap_or_default();
            return Err(PairError::UnknownFacet(stray));
        }
        Ok(CharacteristicPair {
            n,
            complex,
            lambda: aligned,
        })
    }

    /// The rank-0 pair of a point.
    pub fn point() -> Self {
        CharacteristicPair {
            n: 0,
            complex: SimplicialComplex::point(),
            lambda: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn facets(&self) -> &[String] {
        self.complex.vertices()
    }

    pub fn facet_count(&self) -> usize {
        self.complex.vertex_count()
    }

    pub fn lambda_at(&self, i: usize) -> &IntVector {
        &self.lambda[i]
    }

    pub fn lambda_of(&self, facet: &str) -> Result<&IntVector, PairError> {
        let i = self
            .complex
            .position_of(facet)
            .ok_or_else(|| PairError::UnknownFacet(facet.to_string()))?;
        Ok(&self.lambda[i])
    }

    pub fn lambda_map(&self) -> BTreeMap<String, IntVector> {
        self.facets()
            .iter()
            .cloned()
            .zip(self.lambda.iter().cloned())
            .collect()
    }

    /// Positions (facet order) of the given facet names.
    pub fn positions_of(&self, facets: &[String]) -> Result<Vec<usize>, PairError> {
        facets
            .iter()
            .map(|f| {
                self.complex
                    .position_of(f)
                    .ok_or_else(|| PairError::UnknownFacet(f.clone()))
            })
            .collect()
    }

    /// The characteristic matrix: columns are the lambda values in facet
    /// order.
    pub fn characteristic_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.lambda.clone(), self.n)
    }

    /// Complex validity at rank `n` plus nonsingularity at every maximal
    /// face.
    pub fn validate(&self) -> PairReport {
        let complex_report = self.complex.validate(self.n);
        let mut lambda_issues = Vec::new();
        let mut singular_faces = Vec::new();
        for face in self.complex.maximal_positions() {
            if face.len() != self.n {
                continue; // already reported as a purity issue
            }
            let cols: Vec<IntVector> = face.iter().map(|&i| self.lambda[i].clone()).collect();
            match is_part_of_basis(&cols, self.n) {
                Ok(true) => {}
                Ok(false) => {
                    singular_faces.push(face.iter().map(|&i| self.facets()[i].clone()).collect())
                }
                Err(e) => lambda_issues.push(e.to_string()),
            }
        }
        PairReport {
            complex_issues: complex_report.issues,
            lambda_issues,
            singular_faces,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub(crate) fn require_valid(&self) -> Result<(), PairError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(PairError::InvalidPairError(report.lines().join("; ")))
        }
    }

    /// Presentation of `H^2` by the relation matrix whose row `j` is
    /// `(<v_j, lambda(F_i)>)_i` for the standard dual basis, with the
    /// canonical form of each facet generator.
    pub fn cohomology_model(&self) -> Result<CohomologyModel, PairError> {
        self.require_valid()?;
        let relations = self.characteristic_matrix();
        let presentation = cokernel_presentation(&relations);
        let pd = (0..self.facet_count())
            .map(|i| presentation.canonical_generator(i))
            .collect();
        Ok(CohomologyModel { presentation, pd })
    }

    /// Negates lambda columns so that facets whose duals agree up to sign
    /// agree exactly. The choice is deterministic: within each merged class
    /// the coset whose representative has a positive first nonzero
    /// coordinate wins (lexicographically smaller representative on the rare
    /// ties), and classes already sharing a single coset are left alone.
    /// A second application is therefore the identity.
    pub fn normalize_omniorientation(
        &self,
    ) -> Result<(CharacteristicPair, OmniOrientationSigns), PairError> {
        let model = self.cohomology_model()?;
        for (i, pd) in model.pd.iter().enumerate() {
            if pd.is_zero() {
                return Err(PairError::ZeroDualError(self.facets()[i].clone()));
            }
        }
        let m = self.facet_count();
        let mut signs = vec![1i8; m];
        let mut class_of_rep: BTreeMap<IntVector, usize> = BTreeMap::new();
        let mut united: Vec<Vec<usize>> = Vec::new();
        for i in 0..m {
            let rep = &model.pd[i];
            let neg = model.presentation.canonical_neg(rep);
            let id = match class_of_rep.get(rep).or_else(|| class_of_rep.get(&neg)) {
                Some(&id) => id,
                None => {
                    united.push(Vec::new());
                    let id = united.len() - 1;
                    class_of_rep.insert(rep.clone(), id);
                    class_of_rep.insert(neg, id);
                    id
                }
            };
            united[id].push(i);
        }
        for members in &united {
            let mut cosets: Vec<&IntVector> = Vec::new();
            for &i in members {
                if !cosets.contains(&&model.pd[i]) {
                    cosets.push(&model.pd[i]);
                }
            }
            if cosets.len() < 2 {
                continue;
            }
            let preferred = preferred_coset(cosets[0], cosets[1]);
            for &i in members {
                if &model.pd[i] != preferred {
                    signs[i] = -1;
                }
            }
        }
        let lambda: Vec<IntVector> = self
            .lambda
            .iter()
            .zip(&signs)
            .map(|(v, &s)| if s == -1 { v.neg() } else { v.clone() })
            .collect();
        let normalized = CharacteristicPair {
            n: self.n,
            complex: self.complex.clone(),
            lambda,
        };
        debug_assert!(normalized.is_valid());
        Ok((
            normalized,
            OmniOrientationSigns {
                signs,
                facets: self.facets().to_vec(),
            },
        ))
    }

    /// Partition of the facets by exact equality of Poincare duals.
    /// Requires a normalized pair.
    pub fn facet_classes(&self) -> Result<FacetClassPartition, PairError> {
        let model = self.cohomology_model()?;
        let m = self.facet_count();
        for i in 0..m {
            let neg = model.presentation.canonical_neg(&model.pd[i]);
            for j in i + 1..m {
                if model.pd[j] != model.pd[i] && model.pd[j] == neg {
                    return Err(PairError::NotNormalizedError(
                        self.facets()[i].clone(),
                        self.facets()[j].clone(),
                    ));
                }
            }
        }
        let mut classes: Vec<FacetClass> = Vec::new();
        for i in 0..m {
            match classes.iter_mut().find(|c| c.representative == model.pd[i]) {
                Some(c) => c.facets.push(self.facets()[i].clone()),
                None => classes.push(FacetClass {
                    facets: vec![self.facets()[i].clone()],
                    representative: model.pd[i].clone(),
                }),
            }
        }
        Ok(FacetClassPartition { classes })
    }

    /// For every maximal face and class, the face must contain all or all
    /// but one of the class members. Holds for every valid pair; a reported
    /// violation indicates a bug, not a bad input.
    pub fn check_vertex_class_bound(&self) -> Result<VertexClassBoundReport, PairError> {
        let partition = self.facet_classes()?;
        let mut violations = Vec::new();
        for face in self.complex.maximal_positions() {
            let face_names: Vec<&String> = face.iter().map(|&i| &self.facets()[i]).collect();
            for class in &partition.classes {
                let inside = class
                    .facets
                    .iter()
                    .filter(|f| face_names.contains(f))
                    .count();
                if inside + 1 < class.size() {
                    violations.push(VertexClassViolation {
                        vertex_face: face_names.iter().map(|s| (*s).clone()).collect(),
                        class: class.facets.clone(),
                        intersection: inside,
                    });
                }
            }
        }
        Ok(VertexClassBoundReport { violations })
    }

    /// Restriction to the facet submanifold over `f`: the link of `f` with
    /// lambda pushed through the quotient by `lambda(f)`.
    pub fn restrict_to_facet(&self, facet: &str) -> Result<CharacteristicPair, PairError> {
        Ok(self.restrict_to_facet_with_projection(facet)?.0)
    }

    pub fn restrict_to_facet_with_projection(
        &self,
        facet: &str,
    ) -> Result<(CharacteristicPair, IntMatrix), PairError> {
        let v = self.lambda_of(facet)?.clone();
        let q = quotient_by_primitive(&v)?;
        let link = self.complex.link_of_vertex(facet)?;
        let lambda: Vec<IntVector> = link
            .vertices()
            .iter()
            .map(|w| {
                let i = self.complex.position_of(w).expect("link vertex exists");
                q.mul_vec(&self.lambda[i])
            })
            .collect();
        let pair = CharacteristicPair {
            n: self.n - 1,
            complex: link,
            lambda,
        };
        let report = pair.validate();
        if !report.is_valid() {
            return Err(PairError::InvalidPairError(format!(
                "restriction to {} is invalid: {}",
                facet,
                report.lines().join("; ")
            )));
        }
        Ok((pair, q))
    }

    /// Iterated facet restriction over the members of `sigma` in facet
    /// order; rank drops by `|sigma|`.
    pub fn restrict_to_face(&self, sigma: &[String]) -> Result<CharacteristicPair, PairError> {
        Ok(self.restrict_to_face_with_projection(sigma)?.0)
    }

    pub fn restrict_to_face_with_projection(
        &self,
        sigma: &[String],
    ) -> Result<(CharacteristicPair, IntMatrix), PairError> {
        if !self.complex.is_face(sigma)? {
            return Err(PairError::NotAFaceError(sigma.join(", ")));
        }
        let mut order: Vec<usize> = self.positions_of(sigma)?;
        order.sort_unstable();
        order.dedup();
        let mut pair = self.clone();
        let mut projection = IntMatrix::identity(self.n);
        for &pos in &order {
            let name = self.facets()[pos].clone();
            let (next, q) = pair.restrict_to_facet_with_projection(&name)?;
            projection = q.mul(&projection);
            pair = next;
        }
        Ok((pair, projection))
    }

    /// Searches for a complex isomorphism `f` and `g` in `GL(n, Z)` with
    /// `g lambda(F) = lambda'(f F)` for all facets (up to a per-facet sign in
    /// [`SignMode::UpToSign`]). `g` is solved on one maximal face and
    /// verified globally; the first witness in the deterministic isomorphism
    /// order is returned.
    pub fn isomorphism_to(
        &self,
        other: &CharacteristicPair,
        mode: SignMode,
    ) -> Result<Option<PairIsomorphism>, PairError> {
        if self.n != other.n {
            return Err(PairError::RankMismatchError(self.n, other.n));
        }
        self.require_valid()?;
        other.require_valid()?;
        if self.n == 0 {
            let isos = self.complex.isomorphisms(&other.complex);
            return Ok(isos.into_iter().next().map(|f| PairIsomorphism {
                f,
                g: IntMatrix::identity(0),
            }));
        }
        let base_face = match self.complex.maximal_positions().first() {
            Some(face) if face.len() == self.n => face.clone(),
            _ => return Ok(None),
        };
        let m_cols: Vec<IntVector> = base_face.iter().map(|&i| self.lambda[i].clone()).collect();
        let m = IntMatrix::from_columns(m_cols, self.n);
        let m_inv = inverse_unimodular(&m);
        for f in self.complex.isomorphisms(&other.complex) {
            let image_cols: Vec<IntVector> = base_face
                .iter()
                .map(|&i| {
                    let target = f.apply(&self.facets()[i]);
                    other.lambda_of(target).expect("image facet exists").clone()
                })
                .collect();
            for signs in sign_patterns(self.n, mode) {
                let signed: Vec<IntVector> = image_cols
                    .iter()
                    .zip(&signs)
                    .map(|(c, &s)| if s { c.clone() } else { c.neg() })
                    .collect();
                let g = IntMatrix::from_columns(signed, self.n).mul(&m_inv);
                if verify_isomorphism(self, other, &f, &g, mode) {
                    return Ok(Some(PairIsomorphism { f, g }));
                }
            }
        }
        Ok(None)
    }
}

/// The exact-comparison sign patterns: just all-positive for `Exact`, every
/// combination for `UpToSign`.
fn sign_patterns(n: usize, mode: SignMode) -> Vec<Vec<bool>> {
    match mode {
        SignMode::Exact => vec![vec![true; n]],
        SignMode::UpToSign => (0..(1usize << n))
            .map(|mask| (0..n).map(|i| mask & (1 << i) == 0).collect())
            .collect(),
    }
}

fn verify_isomorphism(
    a: &CharacteristicPair,
    b: &CharacteristicPair,
    f: &VertexBijection,
    g: &IntMatrix,
    mode: SignMode,
) -> bool {
    if !g.is_unimodular() {
        return false;
    }
    a.facets().iter().enumerate().all(|(i, name)| {
        let image = g.mul_vec(&a.lambda[i]);
        let target = b.lambda_of(f.apply(name)).expect("image facet exists");
        match mode {
            SignMode::Exact => &image == target,
            SignMode::UpToSign => &image == target || image == target.neg(),
        }
    })
}

/// Of the two cosets of a merged class, the preferred one: positive first
/// nonzero coordinate, lexicographically smaller representative on ties.
fn preferred_coset<'a>(u: &'a IntVector, w: &'a IntVector) -> &'a IntVector {
    let u_positive = leading_positive(u);
    let w_positive = leading_positive(w);
    match (u_positive, w_positive) {
        (true, false) => u,
        (false, true) => w,
        _ => {
            if u <= w {
                u
            } else {
                w
            }
        }
    }
}

fn leading_positive(v: &IntVector) -> bool {
    v.leading_index()
        .map(|i| v.entry(i).is_positive())
        .unwrap_or(false)
}

#[derive(Debug, Clone)]
pub struct VertexClassViolation {
    pub vertex_face: Vec<String>,
    pub class: Vec<String>,
    pub intersection: usize,
}

impl fmt::Display for VertexClassViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "vertex {{{}}} meets class {{{}}} in only {} facets",
            self.vertex_face.join(", "),
            self.class.join(", "),
            self.intersection
        )
    }
}

#[derive(Debug, Clone)]
pub struct VertexClassBoundReport {
    pub violations: Vec<VertexClassViolation>,
}

impl VertexClassBoundReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Builds a pair from flat data; convenient for catalogs and tests.
pub fn pair_from_parts(
    n: usize,
    facets: &[&str],
    maximal_faces: &[&[&str]],
    lambdas: &[(&str, &[i64])],
) -> Result<CharacteristicPair, PairError> {
    let complex = SimplicialComplex::new(
        facets.iter().map(|s| s.to_string()).collect(),
        maximal_faces
            .iter()
            .map(|f| f.iter().map(|s| s.to_string()).collect())
            .collect(),
    )?;
    let lambda: BTreeMap<String, IntVector> = lambdas
        .iter()
        .map(|(name, entries)| (name.to_string(), IntVector::from_i64s(entries)))
        .collect();
    CharacteristicPair::new(n, complex, lambda)
}

/// Internal constructor for modules that already hold aligned data.
pub(crate) fn pair_from_aligned(
    n: usize,
    complex: SimplicialComplex,
    lambda: Vec<IntVector>,
) -> CharacteristicPair {
    debug_assert_eq!(complex.vertex_count(), lambda.len());
    debug_assert!(lambda.iter().all(|v| v.len() == n));
    CharacteristicPair { n, complex, lambda }
}
