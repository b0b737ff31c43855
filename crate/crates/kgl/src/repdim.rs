//! Dimensions of the simple modules `H^0(Fl, O(a,b))`.
//!
//! A nondecreasing integer sequence `c` of length `n` names an irreducible
//! `GL_n`-representation (the sequence is reversed into a dominant weight;
//! dimensions only depend on successive differences, so no basis convention
//! leaks into results).  [`weyl_dim`] evaluates the Weyl product formula
//! exactly; [`gt_dim`] counts Gelfand-Tsetlin patterns and serves as an
//! independent oracle for it.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::domain::WeightPair;
use crate::{Error, Result};

fn check_nondecreasing(c: &[i64]) -> Result<()> {
    if c.is_empty() {
        return Err(Error::RankZero);
    }
    for (i, w) in c.windows(2).enumerate() {
        if w[0] > w[1] {
            // 1-based position of the offending entry.
            return Err(Error::NotDominant { position: i + 2 });
        }
    }
    Ok(())
}

/// Weyl dimension formula: `∏_{1<=i<j<=n} (c_j - c_i + j - i) / (j - i)`,
/// evaluated as an exact integer (numerator and denominator are accumulated
/// separately and divided once).
pub fn weyl_dim(c: &[i64]) -> Result<BigUint> {
    check_nondecreasing(c)?;
    let n = c.len();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..n {
        for j in (i + 1)..n {
            let f = (c[j] as i128 - c[i] as i128) + (j - i) as i128;
            num *= BigUint::from(f as u128);
            den *= BigUint::from((j - i) as u64);
        }
    }
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "Weyl product must divide exactly");
    Ok(q)
}

/// Counts Gelfand-Tsetlin patterns whose top row is `c` reversed into
/// nonincreasing order.  Shift-invariant by construction (rows are
/// normalized before memo lookup).
pub fn gt_dim(c: &[i64]) -> Result<BigUint> {
    check_nondecreasing(c)?;
    let mut top: Vec<i64> = c.iter().rev().copied().collect();
    normalize(&mut top);
    let mut memo: HashMap<Vec<i64>, BigUint> = HashMap::new();
    Ok(count_patterns(&top, &mut memo))
}

/// Subtracts the smallest entry (the last one of a nonincreasing row);
/// pattern counts are invariant under this shift.
fn normalize(row: &mut [i64]) {
    let base = *row.last().expect("nonempty row");
    for v in row.iter_mut() {
        *v -= base;
    }
}

fn count_patterns(row: &[i64], memo: &mut HashMap<Vec<i64>, BigUint>) -> BigUint {
    if row.len() <= 1 {
        return BigUint::one();
    }
    if let Some(v) = memo.get(row) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    let mut next = vec![0i64; row.len() - 1];
    interlace(row, &mut next, 0, &mut total, memo);
    memo.insert(row.to_vec(), total.clone());
    total
}

/// Enumerates all rows interlacing `row`: `row[i] >= next[i] >= row[i+1]`.
fn interlace(
    row: &[i64],
    next: &mut Vec<i64>,
    pos: usize,
    total: &mut BigUint,
    memo: &mut HashMap<Vec<i64>, BigUint>,
) {
    if pos == next.len() {
        let mut sub = next.clone();
        normalize(&mut sub);
        *total += count_patterns(&sub, memo);
        return;
    }
    for v in row[pos + 1]..=row[pos] {
        next[pos] = v;
        interlace(row, next, pos + 1, total, memo);
    }
}

/// Dimension of the simple module named by `(a, b)`:
/// `weyl_dim(a) * weyl_dim(b)`.  Both halves must be nondecreasing.
pub fn dim_pair(w: &WeightPair) -> Result<BigUint> {
    Ok(weyl_dim(w.a())? * weyl_dim(w.b())?)
}
