//! The symmetry analysis of a characteristic pair: the maximal compact
//! connected group type extending the torus action, the inductive
//! construction behind it (sphere-bundle split-offs and equivariant
//! blow-ups), the lifted automorphism group of the pair, Weyl-partition
//! admissibility, and admissible triples.

mod blowup;
mod tree;
mod triple;

pub use blowup::{blowdown, blowup_class, stellar_blowup};
pub use tree::{build_construction_tree, ConstructionTree, TreeStep};
pub use triple::{extract_admissible_triple, AdmissibleTriple};

use crate::charpair::{CharacteristicPair, PairError, SignMode};
use crate::complex::{ComplexError, VertexBijection};
use crate::lattice::{int, inverse_unimodular, IntMatrix, IntVector};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SymmetryError {
    #[error("class {{{0}}} is a singleton")]
    SingletonClassError(String),
    #[error(
        "dichotomy violation for class {{{0}}}: neither the class nor all of its \
         co-one subsets are faces"
    )]
    DichotomyViolation(String),
    #[error("case mismatch: {0}")]
    CaseMismatchError(String),
    #[error("permutation does not preserve the facet classes: {0}")]
    NotClassPreservingError(String),
    #[error("facet {0} is not exceptional: no blow-down center found")]
    NotExceptionalError(String),
    #[error("not a partition of the facet set: {0}")]
    NotAPartitionError(String),
    #[error("partition is not admissible: block {{{0}}} crosses facet classes")]
    NotAdmissibleError(String),
    #[error("theory violation (this indicates a bug or an input outside the theory): {0}")]
    TheoryViolation(String),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Isomorphism type of the maximal compact connected symmetry group
/// extending the torus: a product of special unitary factors and a residual
/// torus, presented through its covering group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryGroupType {
    /// Sizes `k` of the `SU(k)` factors, descending, each `>= 2`.
    su_sizes: Vec<usize>,
    torus_rank: usize,
}

impl SymmetryGroupType {
    pub fn new(mut su_sizes: Vec<usize>, torus_rank: usize) -> Self {
        assert!(su_sizes.iter().all(|&k| k >= 2));
        su_sizes.sort_unstable_by(|a, b| b.cmp(a));
        SymmetryGroupType {
            su_sizes,
            torus_rank,
        }
    }

    pub fn su_sizes(&self) -> &[usize] {
        &self.su_sizes
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    /// Rank of a maximal torus: `sum (k - 1) + torus_rank`.
    pub fn total_rank(&self) -> usize {
        self.su_sizes.iter().map(|k| k - 1).sum::<usize>() + self.torus_rank
    }

    /// Canonical string, e.g. `SU(3)`, `SU(2) x SU(2)`, `SU(2) x T^1`,
    /// `T^3`.
    pub fn canonical_string(&self) -> String {
        let mut parts: Vec<String> = self
            .su_sizes
            .iter()
            .map(|k| format!("SU({})", k))
            .collect();
        if self.torus_rank > 0 || parts.is_empty() {
            parts.push(format!("T^{}", self.torus_rank));
        }
        parts.join(" x ")
    }
}

impl fmt::Display for SymmetryGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

/// The symmetry group type straight from the facet classes: one `SU(k)` per
/// class of size `k >= 2` and the torus filling up the rank.
pub fn maximal_group_type(pair: &CharacteristicPair) -> Result<SymmetryGroupType, SymmetryError> {
    let classes = pair.facet_classes()?;
    let su_sizes: Vec<usize> = classes
        .classes
        .iter()
        .map(|c| c.size())
        .filter(|&k| k >= 2)
        .collect();
    let used: usize = su_sizes.iter().map(|k| k - 1).sum();
    if used > pair.rank() {
        return Err(SymmetryError::TheoryViolation(format!(
            "class sizes consume rank {} > {}",
            used,
            pair.rank()
        )));
    }
    Ok(SymmetryGroupType::new(su_sizes, pair.rank() - used))
}

/// Case split of the inductive construction for one class of size >= 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassCase {
    /// The class is not a face but every co-one subset is: the pair splits
    /// as a sphere bundle. Carries the deterministic choice of the facet
    /// left out of the intersection.
    Case1 { chosen_facet: String },
    /// The class is a face: blow up along it first.
    Case2 { face: Vec<String> },
}

/// Decides between the sphere-bundle case and the blow-up case for a facet
/// set of size >= 2 (a class or any block contained in one).
pub fn classify_class(
    pair: &CharacteristicPair,
    class: &[String],
) -> Result<ClassCase, SymmetryError> {
    if class.len() < 2 {
        return Err(SymmetryError::SingletonClassError(class.join(", ")));
    }
    let mut ordered = class.to_vec();
    sort_by_facet_order(pair, &mut ordered)?;
    if pair.complex().is_face(&ordered)? {
        return Ok(ClassCase::Case2 { face: ordered });
    }
    for skip in &ordered {
        let co_one: Vec<String> = ordered.iter().filter(|f| *f != skip).cloned().collect();
        if !pair.complex().is_face(&co_one)? {
            return Err(SymmetryError::DichotomyViolation(ordered.join(", ")));
        }
    }
    Ok(ClassCase::Case1 {
        chosen_facet: ordered[0].clone(),
    })
}

/// Sphere-bundle decomposition data for a Case-1 class: the reduced pair
/// over the intersection of all class facets but the chosen one, and the
/// image `mu` of the summed lambda values in the reduced lattice.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub class: Vec<String>,
    pub chosen_facet: String,
    pub reduced: CharacteristicPair,
    pub mu: IntVector,
    /// The quotient projection from the parent lattice onto the reduced one.
    pub projection: IntMatrix,
}

impl Decomposition {
    pub fn class_size(&self) -> usize {
        self.class.len()
    }
}

/// Splits off the sphere-bundle factor of a Case-1 class.
///
/// Asserted along the way: the reduced pair lives on exactly the non-class
/// facets, the parent complex is the join of a simplex boundary on the class
/// with the reduced complex, and the first `k - 1` coordinates of
/// `sum lambda(F)` vanish in the lambda basis of a maximal face containing
/// the restriction facets.
pub fn decompose_case1(
    pair: &CharacteristicPair,
    class: &[String],
) -> Result<Decomposition, SymmetryError> {
    pair.require_valid()?;
    let chosen = match classify_class(pair, class)? {
        ClassCase::Case1 { chosen_facet } => chosen_facet,
        ClassCase::Case2 { face } => {
            return Err(SymmetryError::CaseMismatchError(format!(
                "class {{{}}} is a face; blow it up instead",
                face.join(", ")
            )))
        }
    };
    let mut ordered = class.to_vec();
    sort_by_facet_order(pair, &mut ordered)?;
    let sigma_rest: Vec<String> = ordered.iter().filter(|f| **f != chosen).cloned().collect();

    let (reduced, projection) = pair.restrict_to_face_with_projection(&sigma_rest)?;

    // the reduced facet set must be exactly the complement of the class
    let expected: BTreeSet<&String> = pair
        .facets()
        .iter()
        .filter(|f| !ordered.contains(f))
        .collect();
    let got: BTreeSet<&String> = reduced.facets().iter().collect();
    if expected != got {
        return Err(SymmetryError::TheoryViolation(format!(
            "reduced pair facets {{{}}} differ from the class complement",
            reduced
                .facets().to_vec()
                .join(", ")
        )));
    }

    // join reconstruction at the complex level
    let join = reduced
        .complex()
        .join_with_simplex_boundary(&ordered)
        .map_err(SymmetryError::Complex)?;
    if pair.complex().isomorphisms(&join).is_empty() {
        return Err(SymmetryError::TheoryViolation(format!(
            "complex is not the join of a simplex boundary on {{{}}} with the reduced complex",
            ordered.join(", ")
        )));
    }

    // mu and the vanishing of the adapted leading coordinates of the sum.
    // The adapted basis is the lambda basis of a maximal face containing the
    // restriction face, ordered with the restriction facets first; in that
    // basis the relations force the chosen facet's column to be -1 on the
    // class rows, so the class sum vanishes there.
    let mut sum = IntVector::zeros(pair.rank());
    for f in &ordered {
        sum = sum.add(pair.lambda_of(f)?);
    }
    let adapted = vertex_adapted_basis(pair, &sigma_rest)?;
    let in_adapted = inverse_unimodular(&adapted).mul_vec(&sum);
    if (0..sigma_rest.len()).any(|i| !in_adapted.entry(i).is_zero()) {
        return Err(SymmetryError::TheoryViolation(format!(
            "sum of class lambdas {} does not vanish in the first {} adapted coordinates",
            sum,
            sigma_rest.len()
        )));
    }
    let mu = projection.mul_vec(&sum);

    Ok(Decomposition {
        class: ordered,
        chosen_facet: chosen,
        reduced,
        mu,
        projection,
    })
}

/// The lambda basis of the first maximal face containing `lead`, with the
/// `lead` columns first. The columns of a maximal face of a valid pair are a
/// lattice basis, so the result is unimodular.
pub(crate) fn vertex_adapted_basis(
    pair: &CharacteristicPair,
    lead: &[String],
) -> Result<IntMatrix, SymmetryError> {
    let lead_positions: Vec<usize> = pair.positions_of(lead)?;
    let face = pair
        .complex()
        .maximal_positions()
        .iter()
        .find(|face| lead_positions.iter().all(|p| face.contains(p)))
        .ok_or_else(|| SymmetryError::Pair(PairError::NotAFaceError(lead.join(", "))))?;
    let mut order = lead_positions.clone();
    order.extend(face.iter().copied().filter(|p| !lead_positions.contains(p)));
    let cols: Vec<IntVector> = order.iter().map(|&p| pair.lambda_at(p).clone()).collect();
    Ok(IntMatrix::from_columns(cols, pair.rank()))
}

/// Rebuilds a pair from a decomposition: the join complex with the block
/// lambda (`e_j` on the non-chosen class facets, `(-1, .., -1) ++ mu` on the
/// chosen one, `0 ++ lambda_N` on the rest). Isomorphic to the decomposed
/// pair.
pub fn join_reconstruct(d: &Decomposition) -> Result<CharacteristicPair, SymmetryError> {
    let k = d.class.len();
    let r = d.reduced.rank();
    let n = r + k - 1;
    let complex = d
        .reduced
        .complex()
        .join_with_simplex_boundary(&d.class)
        .map_err(SymmetryError::Complex)?;
    let mut lambda: BTreeMap<String, IntVector> = BTreeMap::new();
    let mut j = 0;
    for f in &d.class {
        if *f == d.chosen_facet {
            let mut entries = vec![int(-1); k - 1];
            entries.extend(d.mu.entries().iter().cloned());
            lambda.insert(f.clone(), IntVector::new(entries));
        } else {
            let mut entries = vec![int(0); n];
            entries[j] = int(1);
            lambda.insert(f.clone(), IntVector::new(entries));
            j += 1;
        }
    }
    for f in d.reduced.facets() {
        let mut entries = vec![int(0); k - 1];
        entries.extend(d.reduced.lambda_of(f)?.entries().iter().cloned());
        lambda.insert(f.clone(), IntVector::new(entries));
    }
    CharacteristicPair::new(n, complex, lambda).map_err(SymmetryError::Pair)
}

/// A pair automorphism `(f, g)` with `g lambda(F) = lambda(f F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAutomorphism {
    pub f: VertexBijection,
    pub g: IntMatrix,
}

impl PairAutomorphism {
    pub fn identity(pair: &CharacteristicPair) -> Self {
        PairAutomorphism {
            f: VertexBijection::identity(pair.facets().iter()),
            g: IntMatrix::identity(pair.rank()),
        }
    }

    /// `self` after `first`.
    pub fn compose_after(&self, first: &PairAutomorphism) -> PairAutomorphism {
        PairAutomorphism {
            f: self.f.compose_after(&first.f),
            g: self.g.mul(&first.g),
        }
    }

    pub fn inverse(&self) -> PairAutomorphism {
        PairAutomorphism {
            f: self.f.inverse(),
            g: inverse_unimodular(&self.g),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.f.is_identity() && self.g.is_identity()
    }
}

/// The unique lift of a class-preserving facet permutation to a pair
/// automorphism. The pair must be normalized; the permutation must preserve
/// every facet class setwise.
pub fn phi(
    pair: &CharacteristicPair,
    perm: &VertexBijection,
) -> Result<PairAutomorphism, SymmetryError> {
    let classes = pair.facet_classes()?;
    for facet in pair.facets() {
        let image = perm
            .get(facet)
            .ok_or_else(|| SymmetryError::NotClassPreservingError(format!(
                "facet {} is missing from the permutation",
                facet
            )))?;
        let class = classes.class_of(facet).expect("facet has a class");
        if !class.facets.iter().any(|f| f == image) {
            return Err(SymmetryError::NotClassPreservingError(format!(
                "{} -> {} leaves its class",
                facet, image
            )));
        }
    }
    // on a normalized pair a class-preserving permutation is automatically
    // a complex automorphism; failure indicates a bug, not an input
    for face in pair.complex().maximal_faces() {
        let image: Vec<String> = face.iter().map(|f| perm.apply(f).to_string()).collect();
        if !pair.complex().is_face(&image)? {
            return Err(SymmetryError::TheoryViolation(format!(
                "class-preserving permutation does not map face {{{}}} to a face",
                face.join(", ")
            )));
        }
    }
    match solve_automorphism(pair, perm)? {
        Some(g) => Ok(PairAutomorphism {
            f: perm.clone(),
            g,
        }),
        None => Err(SymmetryError::TheoryViolation(format!(
            "no lattice automorphism realizes the class-preserving permutation {}",
            perm
        ))),
    }
}

/// Solves `g` on one maximal face and verifies it on every facet; `None`
/// when the permutation does not lift.
fn solve_automorphism(
    pair: &CharacteristicPair,
    f: &VertexBijection,
) -> Result<Option<IntMatrix>, SymmetryError> {
    let n = pair.rank();
    if n == 0 {
        return Ok(Some(IntMatrix::identity(0)));
    }
    let base = match pair.complex().maximal_positions().first() {
        Some(face) if face.len() == n => face.clone(),
        _ => {
            return Err(SymmetryError::Pair(PairError::InvalidPairError(
                "no maximal face of full rank".into(),
            )))
        }
    };
    let cols: Vec<IntVector> = base.iter().map(|&i| pair.lambda_at(i).clone()).collect();
    let m = IntMatrix::from_columns(cols, n);
    let image_cols: Vec<IntVector> = base
        .iter()
        .map(|&i| {
            let name = &pair.facets()[i];
            pair.lambda_of(f.apply(name)).cloned()
        })
        .collect::<Result<_, _>>()?;
    let g = IntMatrix::from_columns(image_cols, n).mul(&inverse_unimodular(&m));
    if !g.is_unimodular() {
        return Ok(None);
    }
    for (i, name) in pair.facets().iter().enumerate() {
        let image = g.mul_vec(pair.lambda_at(i));
        if &image != pair.lambda_of(f.apply(name))? {
            return Ok(None);
        }
    }
    Ok(Some(g))
}

/// The full automorphism group of the pair by brute force over complex
/// automorphisms, each lifted where possible. Closed under composition.
pub fn aut_char_pair(pair: &CharacteristicPair) -> Result<Vec<PairAutomorphism>, SymmetryError> {
    pair.require_valid()?;
    let mut out = Vec::new();
    for f in pair.complex().isomorphisms(pair.complex()) {
        if let Some(g) = solve_automorphism(pair, &f)? {
            out.push(PairAutomorphism { f, g });
        }
    }
    Ok(out)
}

/// True iff every block of size >= 2 is contained in one facet class, so the
/// product of block symmetric groups embeds into the maximal Weyl group.
pub fn weyl_partition_admissible(
    pair: &CharacteristicPair,
    partition: &[Vec<String>],
) -> Result<bool, SymmetryError> {
    check_partition(pair, partition)?;
    let classes = pair.facet_classes()?;
    'blocks: for block in partition {
        if block.len() < 2 {
            continue;
        }
        for class in &classes.classes {
            if block.iter().all(|f| class.facets.contains(f)) {
                continue 'blocks;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Every facet exactly once, no strangers.
pub(crate) fn check_partition(
    pair: &CharacteristicPair,
    partition: &[Vec<String>],
) -> Result<(), SymmetryError> {
    let mut seen: BTreeSet<&String> = BTreeSet::new();
    for block in partition {
        for f in block {
            if pair.complex().position_of(f).is_none() {
                return Err(SymmetryError::NotAPartitionError(format!(
                    "unknown facet {}",
                    f
                )));
            }
            if !seen.insert(f) {
                return Err(SymmetryError::NotAPartitionError(format!(
                    "facet {} appears twice",
                    f
                )));
            }
        }
    }
    if seen.len() != pair.facet_count() {
        let missing: Vec<&str> = pair
            .facets()
            .iter()
            .filter(|f| !seen.contains(f))
            .map(String::as_str)
            .collect();
        return Err(SymmetryError::NotAPartitionError(format!(
            "facets not covered: {}",
            missing.join(", ")
        )));
    }
    Ok(())
}

/// Sorts facet names by their position in the pair's facet order.
pub(crate) fn sort_by_facet_order(
    pair: &CharacteristicPair,
    names: &mut [String],
) -> Result<(), SymmetryError> {
    let positions: BTreeMap<String, usize> = names
        .iter()
        .map(|f| {
            pair.complex()
                .position_of(f)
                .map(|p| (f.clone(), p))
                .ok_or_else(|| SymmetryError::Pair(PairError::UnknownFacet(f.clone())))
        })
        .collect::<Result<_, _>>()?;
    names.sort_by_key(|f| positions[f]);
    Ok(())
}

/// The image of `phi` over all class-preserving permutations: the
/// permutations themselves enumerated as products over the classes.
pub fn class_preserving_permutations(
    pair: &CharacteristicPair,
) -> Result<Vec<VertexBijection>, SymmetryError> {
    let classes = pair.facet_classes()?;
    let mut perms: Vec<BTreeMap<String, String>> = vec![BTreeMap::new()];
    for class in &classes.classes {
        let arrangements = permutations_of(&class.facets);
        let mut next = Vec::with_capacity(perms.len() * arrangements.len());
        for base in &perms {
            for arr in &arrangements {
                let mut map = base.clone();
                for (a, b) in class.facets.iter().zip(arr) {
                    map.insert(a.clone(), b.clone());
                }
                next.push(map);
            }
        }
        perms = next;
    }
    Ok(perms.into_iter().map(VertexBijection::new).collect())
}

fn permutations_of(items: &[String]) -> Vec<Vec<String>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, first) in items.iter().enumerate() {
        let rest: Vec<String> = items
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, s)| s.clone())
            .collect();
        for mut tail in permutations_of(&rest) {
            let mut perm = vec![first.clone()];
            perm.append(&mut tail);
            out.push(perm);
        }
    }
    out
}

/// Equality of pairs as unordered data: same facet set, same maximal faces,
/// same lambda values. Facet order is presentation only.
pub fn pairs_equal_unordered(a: &CharacteristicPair, b: &CharacteristicPair) -> bool {
    if a.rank() != b.rank() {
        return false;
    }
    let fa: BTreeSet<&String> = a.facets().iter().collect();
    let fb: BTreeSet<&String> = b.facets().iter().collect();
    if fa != fb {
        return false;
    }
    let faces = |p: &CharacteristicPair| -> BTreeSet<Vec<String>> {
        p.complex()
            .maximal_faces()
            .into_iter()
            .map(|mut f| {
                f.sort();
                f
            })
            .collect()
    };
    if faces(a) != faces(b) {
        return false;
    }
    a.facets()
        .iter()
        .all(|f| a.lambda_of(f).ok() == b.lambda_of(f).ok())
}

/// Convenience wrapper around [`CharacteristicPair::isomorphism_to`] used by
/// the tests and the tree replay.
pub fn pair_isomorphic(
    a: &CharacteristicPair,
    b: &CharacteristicPair,
    mode: SignMode,
) -> Result<bool, SymmetryError> {
    Ok(a.isomorphism_to(b, mode)?.is_some())
}
