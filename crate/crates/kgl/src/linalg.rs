//! Exact integer linear algebra: sparse fraction-free row reduction for
//! rank/rank-profile computations, and a small dense determinant.
//!
//! No floating point anywhere; coefficients are arbitrary-precision
//! integers kept primitive (content 1) after every combination step.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A sparse row: strictly increasing column indices with nonzero entries.
pub(crate) type SparseRow = Vec<(usize, BigInt)>;

/// Divides out the content (gcd of the entries) and normalizes the sign of
/// the leading entry to be positive.
fn make_primitive(row: &mut SparseRow) {
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, c) in row.iter() {
        g = g.gcd(c);
    }
    let negate = row[0].1.is_negative();
    for (_, c) in row.iter_mut() {
        *c = &*c / &g;
        if negate {
            *c = -&*c;
        }
    }
}

/// `a * ca + b * cb`, merging sorted sparse rows and dropping zeros.
fn combine(a: &SparseRow, ca: &BigInt, b: &SparseRow, cb: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some((ca_col, av)), Some((cb_col, bv))) => match ca_col.cmp(cb_col) {
                std::cmp::Ordering::Less => {
                    i += 1;
                    (*ca_col, av * ca)
                }
                std::cmp::Ordering::Greater => {
                    j += 1;
                    (*cb_col, bv * cb)
                }
                std::cmp::Ordering::Equal => {
                    let v = av * ca + bv * cb;
                    i += 1;
                    j += 1;
                    (*ca_col, v)
                }
            },
            (Some((col, av)), None) => {
                i += 1;
                (*col, av * ca)
            }
            (None, Some((col, bv))) => {
                j += 1;
                (*col, bv * cb)
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

/// Incremental row-echelon basis with leftmost-column pivoting.  Because
/// pivots are chosen leftmost, the number of pivots among the first `t`
/// columns equals the rank of the corresponding column submatrix.
#[derive(Default)]
pub(crate) struct RowEchelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl RowEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `row` against the current pivots and installs the remainder
    /// if nonzero.  Returns `true` when the row added a new pivot.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        make_primitive(&mut row);
        while let Some(&(lead, _)) = row.first() {
            let Some(pivot) = self.pivots.get(&lead) else {
                make_primitive(&mut row);
                self.pivots.insert(lead, row);
                return true;
            };
            // Fraction-free elimination of the leading entry, then strip
            // the content to keep coefficients small.
            let rv = row[0].1.clone();
            let pv = pivot[0].1.clone();
            let g = rv.gcd(&pv);
            row = combine(&row, &(&pv / &g), pivot, &(-&rv / &g));
            make_primitive(&mut row);
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Number of pivot columns strictly below `limit`.
    pub fn rank_below(&self, limit: usize) -> usize {
        self.pivots.range(..limit).count()
    }
}

/// Determinant of a small dense integer matrix by expansion along the
/// first column (ranks here never exceed 6).
pub(crate) fn det_small(mat: &[Vec<i128>]) -> i128 {
    let n = mat.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return mat[0][0];
    }
    let mut det = 0i128;
    for r in 0..n {
        if mat[r][0] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = mat
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != r)
            .map(|(_, row)| row[1..].to_vec())
            .collect();
        let sign = if r % 2 == 0 { 1 } else { -1 };
        det += sign * mat[r][0] * det_small(&minor);
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, BigInt::from(v))).collect()
    }

    #[test]
    fn rank_of_simple_matrices() {
        let mut ech = RowEchelon::new();
        assert!(ech.insert(row(&[(0, 1), (1, 2)])));
        assert!(ech.insert(row(&[(1, 1)])));
        // Dependent on the first two.
        assert!(!ech.insert(row(&[(0, 2), (1, 5)])));
        assert_eq!(ech.rank(), 2);
    }

    #[test]
    fn rank_profile_prefix_property() {
        // Rows: (1,1,0), (1,1,1), (0,0,1): rank 2; the first-2-column
        // submatrix has rank 1, so exactly one pivot lies below column 2.
        let mut ech = RowEchelon::new();
        ech.insert(row(&[(0, 1), (1, 1)]));
        ech.insert(row(&[(0, 1), (1, 1), (2, 1)]));
        ech.insert(row(&[(2, 1)]));
        assert_eq!(ech.rank(), 2);
        assert_eq!(ech.rank_below(2), 1);
    }

    #[test]
    fn fraction_free_reduction_stays_exact() {
        // Rows constructed so naive elimination would produce fractions.
        let mut ech = RowEchelon::new();
        ech.insert(row(&[(0, 6), (1, 4), (2, 2)]));
        ech.insert(row(&[(0, 4), (1, 4), (2, 4)]));
        ech.insert(row(&[(0, 2), (1, 0), (2, -2)]));
        // Third row = first - second (up to content): rank 2.
        assert_eq!(ech.rank(), 2);
    }

    #[test]
    fn det_small_values() {
        assert_eq!(det_small(&[vec![3]]), 3);
        assert_eq!(det_small(&[vec![1, 2], vec![3, 4]]), -2);
        let id3: Vec<Vec<i128>> = (0..3)
            .map(|i| (0..3).map(|j| i128::from(i == j)).collect())
            .collect();
        assert_eq!(det_small(&id3), 1);
        // Unimodular triangular-ish with signs.
        assert_eq!(
            det_small(&[vec![-1, 0, 0], vec![-1, -1, 0], vec![1, 1, 1]]),
            1
        );
    }
}
