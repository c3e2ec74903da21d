//! Catalog of named example pairs: complex projective spaces, products of
//! simplices, Hirzebruch surfaces, generalized Bott pairs over the cube,
//! polygons from outward normals, and the vertex-cut 3-simplex `p5`.
//!
//! Every family sits behind [`CatalogFamily`] and is looked up by name at
//! runtime, so the CLI and tests share one registry. Every entry that a
//! family returns is a valid pair; parameter combinations that would produce
//! an invalid pair are rejected instead.

use crate::charpair::{pair_from_parts, CharacteristicPair, PairError};
use crate::complex::SimplicialComplex;
use crate::lattice::{int, Int, IntVector};
use num_traits::One;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog family {0:?}")]
    UnknownCatalogError(String),
    #[error("bad parameters for {family}: {message}")]
    BadParameters { family: &'static str, message: String },
    #[error("parameters produce an invalid pair: {0}")]
    Invalid(String),
    #[error(transparent)]
    Pair(#[from] PairError),
}

/// A named generator of valid characteristic pairs.
pub trait CatalogFamily: Sync {
    fn name(&self) -> &'static str;
    /// One-line parameter summary for help output.
    fn usage(&self) -> &'static str;
    fn build(&self, params: &[String]) -> Result<CharacteristicPair, CatalogError>;
}

/// The registry, in stable listing order.
pub fn families() -> &'static [&'static dyn CatalogFamily] {
    static FAMILIES: [&dyn CatalogFamily; 6] = [
        &CpFamily,
        &ProductFamily,
        &HirzebruchFamily,
        &BottFamily,
        &PolygonFamily,
        &P5Family,
    ];
    &FAMILIES
}

pub fn lookup(name: &str) -> Option<&'static dyn CatalogFamily> {
    families().iter().copied().find(|f| f.name() == name)
}

/// Builds `name params...`, the single entry point used by the CLI.
pub fn build(name: &str, params: &[String]) -> Result<CharacteristicPair, CatalogError> {
    match lookup(name) {
        Some(family) => family.build(params),
        None => Err(CatalogError::UnknownCatalogError(name.to_string())),
    }
}

fn bad(family: &'static str, message: impl Into<String>) -> CatalogError {
    CatalogError::BadParameters {
        family,
        message: message.into(),
    }
}

fn parse_usize(family: &'static str, s: &str) -> Result<usize, CatalogError> {
    s.parse()
        .map_err(|_| bad(family, format!("expected a nonnegative integer, got {:?}", s)))
}

fn parse_i64(family: &'static str, s: &str) -> Result<i64, CatalogError> {
    s.parse()
        .map_err(|_| bad(family, format!("expected an integer, got {:?}", s)))
}

fn parse_int_list(family: &'static str, s: &str) -> Result<Vec<i64>, CatalogError> {
    s.split(',')
        .map(|part| parse_i64(family, part.trim()))
        .collect()
}

struct CpFamily;

impl CatalogFamily for CpFamily {
    fn name(&self) -> &'static str {
        "cp"
    }

    fn usage(&self) -> &'static str {
        "cp N            complex projective space of complex dimension N >= 1"
    }

    fn build(&self, params: &[String]) -> Result<CharacteristicPair, CatalogError> {
        if params.len() != 1 {
            return Err(bad("cp", "expected one parameter N"));
        }
        let n = parse_usize("cp", &params[0])?;
        if n == 0 {
            return Err(bad("cp", "N must be at least 1"));
        }
        Ok(cp(n))
    }
}

/// The pair of `CP^n`: the boundary of the n-simplex with
/// `lambda = e_1, ..., e_n, (-1, ..., -1)`.
pub fn cp(n: usize) -> CharacteristicPair {
    assert!(n >= 1);
    let facets: Vec<String> = (1..=n + 1).map(|i| format!("F{}", i)).collect();
    let maximal: Vec<Vec<String>> = (0..n + 1)
        .map(|skip| {
            facets
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, f)| f.clone())
                .collect()
        })
        .collect();
    let complex = SimplicialComplex::new(facets.clone(), maximal).expect("simplex boundary");
    let mut lambda = BTreeMap::new();
    for (i, f) in facets.iter().enumerate() {
        let v = if i < n {
            IntVector::new((0..n).map(|j| if j == i { Int::one() } else { int(0) }).collect())
        } else {
            IntVector::new(vec![int(-1); n])
        };
        lambda.insert(f.clone(), v);
    }
    CharacteristicPair::new(n, complex, lambda).expect("cp pair is valid")
}

struct ProductFamily;

impl CatalogFamily for ProductFamily {
    fn name(&self) -> &'static str {
        "product"
    }

    fn usage(&self) -> &'static str {
        "product N1 N2 ...   product of projective spaces CP^N1 x CP^N2 x ..."
    }

    fn build(&self, params: &[String]) -> Result<CharacteristicPair, CatalogError> {
        if params.is_empty() {
            return Err(bad("product", "expected at least one dimension"));
        }
        if params.len() > 26 {
            return Err(bad("product", "at most 26 factors supported"));
        }
        let dims: Vec<usize> = params
            .iter()
            .map(|p| parse_usize("product", p))
            .collect::<Result<_, _>>()?;
        if dims.contains(&0) {
            return Err(bad("product", "factor dimensions must be at least 1"));
        }
        Ok(product(&dims))
    }
}

/// The pair of `CP^{n_1} x ... x CP^{n_k}`: the join of simplex boundaries
/// with block-diagonal lambda. Factor `t` uses facet labels `A1..`, `B1..`,
/// and so on.
pub fn product(dims: &[usize]) -> CharacteristicPair {
    assert!(!dims.is_empty() && dims.len() <= 26);
    let n: usize = dims.iter().sum();
    let mut facets: Vec<String> = Vec::new();
    let mut lambda: BTreeMap<String, IntVector> = BTreeMap::new();
    let mut factor_facets: Vec<Vec<String>> = Vec::new();
    let mut offset = 0;
    for (t, &d) in dims.iter().enumerate() {
        let letter = (b'A' + t as u8) as char;
        let names: Vec<String> = (1..=d + 1).map(|i| format!("{}{}", letter, i)).collect();
        for (i, name) in names.iter().enumerate() {
            let mut entries = vec![int(0); n];
            if i < d {
                entries[offset + i] = Int::one();
            } else {
                for e in entries.iter_mut().skip(offset).take(d) {
                    *e = int(-1);
                }
            }
            lambda.insert(name.clone(), IntVector::new(entries));
        }
        facets.extend(names.iter().cloned());
        factor_facets.push(names);
        offset += d;
    }
    // maximal faces: drop one facet from every factor
    let mut maximal: Vec<Vec<String>> = vec![Vec::new()];
    for names in &factor_facets {
        let mut next = Vec::new();
        for base in &maximal {
            for skip in 0..names.len() {
                let mut face = base.clone();
                face.extend(
                    names
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != skip)
                        .map(|(_, f)| f.clone()),
                );
                next.push(face);
            }
        }
        maximal = next;
    }
    let complex = SimplicialComplex::new(facets, maximal).expect("join of simplex boundaries");
    CharacteristicPair::new(n, complex, lambda).expect("product pair is valid")
}

struct HirzebruchFamily;

impl CatalogFamily for HirzebruchFamily {
    fn name(&self) -> &'static str {
        "hirzebruch"
    }

    fn usage(&self) -> &'static str {
        "hirzebruch A    Hirzebruch surface with twist A (A = 0 is CP^1 x CP^1)"
    }

    fn build(&self, params: &[String]) -> Result<CharacteristicPair, CatalogError> {
        if params.len() != 1 {
            return Err(bad("hirzebruch", "expected one integer parameter A"));
        }
        Ok(hirzebruch(parse_i64("hirzebruch", &params[0])?))
    }
}

/// The Hirzebruch pair: a 4-cycle with
/// `lambda = (1,0), (0,1), (-1,a), (0,-1)`.
pub fn hirzebruch(a: i64) -> CharacteristicPair {
    pair_from_parts(
        2,
        &["F1", "F2", "F3", "F4"],
        &[&["F1", "F2"], &["F2", "F3"], &["F3", "F4"], &["F4", "F1"]],
        &[
            ("F1", &[1, 0]),
            ("F2", &[0, 1]),
            ("F3", &[-1, a]),
            ("F4", &[0, -1]),
        ],
    )
    .expect("hirzebruch pair is valid")
}

struct BottFamily;

impl CatalogFamily for BottFamily {
    fn name(&self) -> &'static str {
        "bott"
    }

    fn usage(&self) -> &'static str {
        "bott N ROW1 .. ROWN   pair over the N-cube; lambda(F_i) = e_i and lambda(G_j) = column j \
         of the given N x N matrix (rows comma-separated). Upper-triangular matrices with -1 \
         diagonal are the classical Bott towers and are always valid; general matrices are \
         checked."
    }

    fn build(&self, params: &[String]) -> Result<CharacteristicPair, CatalogError> {
        if params.len() < 2 {
            return Err(bad("bott", "expected N followed by N matrix rows"));
        }
        let n = parse_usize("bott", &params[0])?;
        if n == 0 {
            return Err(bad("bott", "N must be at least 1"));
        }
        if params.len() != n + 1 {
            return Err(bad("bott", format!("expected {} matrix rows, got {}", n, params.len() - 1)));
        }
        let mut rows = Vec::with_capacity(n);
        for row in &params[1..] {
            let entries = parse_int_list("bott", row)?;
            if entries.len() != n {
                return Err(bad("bott", format!("each row needs {} entries", n)));
            }
            rows.push(entries);
        }
        bott(n, &rows)
    }
}

/// Pair over the n-cube: `lambda(F_i) = e_i`, `lambda(G_j)` = column `j` of
/// `matrix`. Validity of the 2^n vertices is verified.
pub fn bott(n: usize, matrix: &[Vec<i64>]) -> Result<CharacteristicPair, CatalogError> {
    assert_eq!(matrix.len(), n);
    let f_names: Vec<String> = (1..=n).map(|i| format!("F{}", i)).collect();
    let g_names: Vec<String> = (1..=n).map(|i| format!("G{}", i)).collect();
    let mut facets = f_names.clone();
    facets.extend(g_names.iter().cloned());
    let mut maximal = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let face: Vec<String> = (0..n)
            .map(|i| {
                if mask & (1 << i) == 0 {
                    f_names[i].clone()
                } else {
                    g_names[i].clone()
                }
            })
            .collect();
        maximal.push(face);
    }
    let mut lambda: BTreeMap<String, IntVector> = BTreeMap::new();
    for (i, f) in f_names.iter().enumerate() {
        let mut entries = vec![int(0); n];
        entries[i] = Int::one();
        lambda.insert(f.clone(), IntVector::new(entries));
    }
    for (j, g) in g_names.iter().enumerate() {
        let entries: Vec<Int> = (0..n).map(|i| int(matrix[i][j])).collect();
        lambda.insert(g.clone(), IntVector::new(entries));
    }
    let complex = SimplicialComplex::new(facets, maximal).expect("cube complex");
    let pair = CharacteristicPair::new(n, complex, lambda)?;
    let report = pair.validate();
    if !report.is_valid() {
        return Err(CatalogError::Invalid(report.lines().join("; ")));
    }
    Ok(pair)
}

struct PolygonFamily;

impl CatalogFamily for PolygonFamily {
    fn name(&self) -> &'static str {
        "polygon"
    }

    fn usage(&self) -> &'static str {
        "polygon X1,Y1 X2,Y2 ...   rank-2 pair from outward normals in cyclic order"
    }

    fn build(&self, params: &[String]) -> Result<CharacteristicPair, CatalogError> {
        if params.len() < 3 {
            return Err(bad("polygon", "expected at least three normals"));
        }
        let mut normals = Vec::with_capacity(params.len());
        for p in params {
            let entries = parse_int_list("polygon", p)?;
            if entries.len() != 2 {
                return Err(bad("polygon", format!("normal {:?} must have two entries", p)));
            }
            normals.push([entries[0], entries[1]]);
        }
        polygon(&normals)
    }
}

/// Rank-2 pair of a polygon given by outward edge normals in cyclic order:
/// the m-cycle with `lambda` the normals. Adjacent normals must form a
/// lattice basis.
pub fn polygon(normals: &[[i64; 2]]) -> Result<CharacteristicPair, CatalogError> {
    let m = normals.len();
    assert!(m >= 3);
    let facets: Vec<String> = (1..=m).map(|i| format!("F{}", i)).collect();
    let maximal: Vec<Vec<String>> = (0..m)
        .map(|i| vec![facets[i].clone(), facets[(i + 1) % m].clone()])
        .collect();
    let complex = SimplicialComplex::new(facets.clone(), maximal).expect("cycle complex");
    let lambda: BTreeMap<String, IntVector> = facets
        .iter()
        .zip(normals)
        .map(|(f, nm)| (f.clone(), IntVector::from_i64s(nm)))
        .collect();
    let pair = CharacteristicPair::new(2, complex, lambda)?;
    let report = pair.validate();
    if !report.is_valid() {
        return Err(CatalogError::Invalid(report.lines().join("; ")));
    }
    Ok(pair)
}

struct P5Family;

impl CatalogFamily for P5Family {
    fn name(&self) -> &'static str {
        "p5"
    }

    fn usage(&self) -> &'static str {
        "p5              vertex-cut 3-simplex pair with classes {F1,F2}, {F3}, {F4,E}"
    }

    fn build(&self, params: &[String]) -> Result<CharacteristicPair, CatalogError> {
        if !params.is_empty() {
            return Err(bad("p5", "takes no parameters"));
        }
        Ok(p5())
    }
}

/// The vertex-cut boundary 3-simplex on `{F1..F4, E}`: the simplex vertex
/// dual to `{F1,F2,F3}` is replaced by the exceptional facet `E`.
pub fn p5() -> CharacteristicPair {
    pair_from_parts(
        3,
        &["F1", "F2", "F3", "F4", "E"],
        &[
            &["F1", "F2", "F4"],
            &["F1", "F3", "F4"],
            &["F2", "F3", "F4"],
            &["E", "F1", "F2"],
            &["E", "F1", "F3"],
            &["E", "F2", "F3"],
        ],
        &[
            ("F1", &[1, 0, 0]),
            ("F2", &[0, 1, 0]),
            ("F3", &[-1, -1, 0]),
            ("F4", &[0, 0, -1]),
            ("E", &[1, 1, 1]),
        ],
    )
    .expect("p5 pair is valid")
}
