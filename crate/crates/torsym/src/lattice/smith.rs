//! Smith normal form over `Z` with unimodular transforms and their inverses.

use super::{Int, IntMatrix};
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal with a
/// divisibility chain `d_1 | d_2 | ...`, all entries nonnegative.
///
/// The inverses are tracked during the reduction so callers never invert a
/// matrix after the fact.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Number of nonzero diagonal entries = rank of the source matrix.
    pub fn rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        (0..n).take_while(|&i| !self.d.at(i, i).is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<Int> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.at(i, i).clone()).collect()
    }
}

struct Work {
    d: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row_i -= q * row_t, keeping U, U^-1 in sync.
    fn row_sub(&mut self, i: usize, t: usize, q: &Int) {
        let neg = -q;
        self.d.add_row_multiple(i, t, &neg);
        self.u.add_row_multiple(i, t, &neg);
        self.u_inv.add_col_multiple(t, i, q);
    }

    /// col_j -= q * col_t, keeping V, V^-1 in sync.
    fn col_sub(&mut self, j: usize, t: usize, q: &Int) {
        let neg = -q;
        self.d.add_col_multiple(j, t, &neg);
        self.v.add_col_multiple(j, t, &neg);
        self.v_inv.add_row_multiple(t, j, q);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Deterministic Smith normal form. Pivot choice: smallest nonzero absolute
/// value in the active submatrix, ties by lowest (row, col).
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = Work {
        d: a.clone(),
        u: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        u_inv: IntMatrix::identity(rows),
        v_inv: IntMatrix::identity(cols),
    };

    let mut t = 0;
    while t < rows && t < cols {
        match pivot(&w.d, t) {
            None => break,
            Some((pi, pj)) => {
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
            }
        }

        // Clear the pivot cross; remainders shrink strictly, so this loop
        // terminates.
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !w.d.at(i, t).is_zero() {
                    let q = rounded_quotient(w.d.at(i, t), w.d.at(t, t));
                    w.row_sub(i, t, &q);
                    if !w.d.at(i, t).is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.d.at(t, j).is_zero() {
                    let q = rounded_quotient(w.d.at(t, j), w.d.at(t, t));
                    w.col_sub(j, t, &q);
                    if !w.d.at(t, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
            // A nonzero remainder is strictly smaller than the old pivot;
            // promote the smallest entry of the cross and go again.
            if let Some((pi, pj)) = pivot(&w.d, t) {
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
            }
        }

        // Divisibility: fold any offending row into the pivot row and redo.
        let offender = (t + 1..rows)
            .find(|&i| (t + 1..cols).any(|j| !w.d.at(i, j).mod_floor(w.d.at(t, t)).is_zero()));
        if let Some(i) = offender {
            let one = Int::from(1);
            w.row_sub(t, i, &-&one);
            continue;
        }

        if w.d.at(t, t).is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }

    debug_assert_eq!(w.u.mul(a).mul(&w.v), w.d);
    debug_assert!(w.u.mul(&w.u_inv).is_identity());
    debug_assert!(w.v.mul(&w.v_inv).is_identity());
    SmithDecomposition {
        u: w.u,
        d: w.d,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
    }
}

/// Entry of minimal |value| in the submatrix at (t, t), lowest (row, col) on
/// ties. None when the submatrix is zero.
fn pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(Int, usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let v = d.at(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            match &best {
                Some((b, _, _)) if *b <= a => {}
                _ => best = Some((a, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Quotient with remainder of minimal absolute value.
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
