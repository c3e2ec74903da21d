//! Finitely generated abelian groups presented as `Z^m / rowspan(R)`.

use super::{Int, IntMatrix, IntVector};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Presentation of `Z^m` modulo the row lattice of `relation_matrix`, with a
/// canonical coset representative for every integer vector of length `m`.
///
/// The relation lattice is kept as a reduced echelon basis whose pivots are
/// the *rightmost* nonzero entries, in strictly decreasing pivot columns.
/// Reduction therefore eliminates late coordinates first, so canonical
/// representatives are expressed in terms of the earliest generators. Two
/// vectors have equal canonical forms iff they differ by an integer
/// combination of relations.
#[derive(Debug, Clone)]
pub struct AbelianGroupPresentation {
    generator_count: usize,
    relation_matrix: IntMatrix,
    free_rank: usize,
    /// Echelon basis rows together with their pivot columns.
    echelon: Vec<(usize, IntVector)>,
}

impl AbelianGroupPresentation {
    pub fn new(relation_matrix: IntMatrix) -> Self {
        let m = relation_matrix.cols();
        let echelon = echelonize(&relation_matrix);
        let free_rank = m - echelon.len();
        AbelianGroupPresentation {
            generator_count: m,
            relation_matrix,
            free_rank,
            echelon,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relation_matrix(&self) -> &IntMatrix {
        &self.relation_matrix
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn rank_of_relations(&self) -> usize {
        self.echelon.len()
    }

    /// True iff the quotient group is free (all pivots 1).
    pub fn is_torsion_free(&self) -> bool {
        self.echelon
            .iter()
            .all(|(j, row)| row.entry(*j).abs().is_one())
    }

    /// Canonical representative of the coset of `v`.
    pub fn canonical(&self, v: &IntVector) -> IntVector {
        assert_eq!(v.len(), self.generator_count, "vector length mismatch");
        let mut w = v.clone();
        for (j, row) in &self.echelon {
            let q = w.entry(*j).div_floor(row.entry(*j));
            if !q.is_zero() {
                w = w.sub(&row.scaled(&q));
            }
        }
        w
    }

    /// Canonical representative of the generator `e_i`.
    pub fn canonical_generator(&self, i: usize) -> IntVector {
        let mut entries = vec![Int::zero(); self.generator_count];
        entries[i] = Int::from(1);
        self.canonical(&IntVector::new(entries))
    }

    /// Canonical representative of the negated coset of an already-canonical
    /// vector.
    pub fn canonical_neg(&self, v: &IntVector) -> IntVector {
        self.canonical(&v.neg())
    }

    pub fn same_coset(&self, a: &IntVector, b: &IntVector) -> bool {
        self.canonical(a) == self.canonical(b)
    }
}

/// Reduced echelon basis of the row lattice, pivots at rightmost nonzero
/// entries, pivot columns strictly decreasing, pivots positive, entries above
/// a pivot reduced into `[0, pivot)`.
fn echelonize(r: &IntMatrix) -> Vec<(usize, IntVector)> {
    let mut work: Vec<IntVector> = (0..r.rows())
        .map(|i| r.row(i))
        .filter(|row| !row.is_zero())
        .collect();
    let mut echelon: Vec<(usize, IntVector)> = Vec::new();

    let cols = r.cols();
    for j in (0..cols).rev() {
        // Rows whose trailing coordinate is j; gcd-eliminate among them.
        loop {
            let mut hot: Vec<usize> = work
                .iter()
                .enumerate()
                .filter(|(_, row)| row.trailing_index() == Some(j))
                .map(|(i, _)| i)
                .collect();
            if hot.is_empty() {
                break;
            }
            if hot.len() == 1 {
                let mut row = work.remove(hot[0]);
                if row.entry(j).is_negative() {
                    row = row.neg();
                }
                echelon.push((j, row));
                break;
            }
            // Reduce all hot rows by the one with the smallest |entry_j|.
            hot.sort_by(|&a, &b| {
                work[a]
                    .entry(j)
                    .abs()
                    .cmp(&work[b].entry(j).abs())
                    .then(a.cmp(&b))
            });
            let base = hot[0];
            let base_row = work[base].clone();
            for &i in &hot[1..] {
                let q = rounded_quotient(work[i].entry(j), base_row.entry(j));
                work[i] = work[i].sub(&base_row.scaled(&q));
            }
            work.retain(|row| !row.is_zero());
        }
    }

    // Canonicality of `canonical` only needs descending pivots with positive
    // pivot values; inter-row reduction of the stored basis is not required.
    echelon
}

fn rounded_quotient(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}
