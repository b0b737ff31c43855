//! Picard-group arithmetic on `KGL_n` and the divisor of the leading-minor
//! monomials.
//!
//! The divisor class group is generated by the boundary components
//! `Z_0..Z_{n-1}`, `Y_0..Y_{n-1}` subject to the single relation
//! `Σ (n-i) Z_i = Σ (n-i) Y_i` (the two sides are the determinant bundle up
//! to trivial twists).  Normal forms eliminate the `Y_{n-1}` coefficient,
//! whose relation coefficient is 1, leaving the free basis
//! `Z_0..Z_{n-1}, Y_0..Y_{n-2}`.

use serde::Serialize;

use crate::domain::{DivisorExpr, LineBundleClass};
use crate::{Error, Result};

fn checked_i64(v: i128, context: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow { context })
}

/// Divisor of the monomial `∏_{i=1}^n (d_i / d_{i-1})^{a_{n-i+1}}` in the
/// leading principal minors `d_i` (with `d_0 = 1`):
///
/// `zZ_i = -Σ_{j>i} a_j`, `zY_i = Σ_{j<=n-i} a_j`,
/// `zDelta_i = a_{n-i+1} - a_{n-i}`.
pub fn divisor_of_monomial(a: &[i64]) -> Result<DivisorExpr> {
    let n = a.len();
    if n == 0 {
        return Err(Error::RankZero);
    }
    let mut z = vec![0i64; n];
    let mut y = vec![0i64; n];
    let mut delta = vec![0i64; n - 1];
    for i in 0..n {
        // The sums run over 1-based weight positions j in [i+1, n] and
        // [1, n-i]; as 0-based slices these are a[i..] and a[..n-i].
        let suffix: i128 = a[i..].iter().map(|&v| v as i128).sum();
        let prefix: i128 = a[..(n - i)].iter().map(|&v| v as i128).sum();
        z[i] = checked_i64(-suffix, "divisor coefficient zZ")?;
        y[i] = checked_i64(prefix, "divisor coefficient zY")?;
    }
    for i in 1..n {
        delta[i - 1] = checked_i64(
            a[n - i] as i128 - a[n - i - 1] as i128,
            "divisor coefficient zDelta",
        )?;
    }
    DivisorExpr::new(z, y, delta)
}

/// A divisor class in normal form on the free basis
/// `Z_0..Z_{n-1}, Y_0..Y_{n-2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PicClass {
    n: usize,
    /// Coefficients of `Z_0..Z_{n-1}`.
    z: Vec<i64>,
    /// Coefficients of `Y_0..Y_{n-2}`.
    y: Vec<i64>,
}

impl PicClass {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn z(&self) -> &[i64] {
        &self.z
    }

    pub fn y(&self) -> &[i64] {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.z.iter().all(|&c| c == 0) && self.y.iter().all(|&c| c == 0)
    }
}

/// Normal form of the class of `class` in the divisor class group: the
/// determinant twists `(e, d)` are forgotten (their underlying bundles are
/// trivial), then the `Y_{n-1}` coefficient is eliminated along the
/// relation `Σ (n-i) Z_i - Σ (n-i) Y_i = 0`.
pub fn pic_normal_form(class: &LineBundleClass) -> Result<PicClass> {
    let n = class.n();
    let c = class.l()[n - 1] as i128;
    let mut z = vec![0i64; n];
    let mut y = vec![0i64; n - 1];
    for i in 0..n {
        let rel = (n - i) as i128;
        z[i] = checked_i64(class.m()[i] as i128 + c * rel, "Picard normal form Z")?;
        if i < n - 1 {
            y[i] = checked_i64(class.l()[i] as i128 - c * rel, "Picard normal form Y")?;
        }
    }
    Ok(PicClass { n, z, y })
}

/// Whether two classes of the same rank are equal in the Picard group.
pub fn pic_equal(c1: &LineBundleClass, c2: &LineBundleClass) -> Result<bool> {
    if c1.n() != c2.n() {
        return Err(Error::LengthMismatch {
            context: format!("comparing classes of rank {} and {}", c1.n(), c2.n()),
        });
    }
    Ok(pic_normal_form(c1)? == pic_normal_form(c2)?)
}

/// The class whose principality is the single Picard relation:
/// `m_i = n - i`, `l_i = -(n - i)` (the divisor of the full determinant
/// monomial, all `Δ` coefficients vanishing).
pub fn relation_class(n: usize) -> Result<LineBundleClass> {
    if n == 0 {
        return Err(Error::RankZero);
    }
    let m: Vec<i64> = (0..n).map(|i| (n - i) as i64).collect();
    let l: Vec<i64> = m.iter().map(|&v| -v).collect();
    LineBundleClass::new(m, l, 0, 0)
}

/// The Picard class of `Δ_i`, the closure of the vanishing locus of the
/// leading `i x i` minor (`1 <= i <= n-1`).  No independent generator is
/// introduced: the divisor of the step monomial `a = (0^{n-i}, 1^i)` is
/// principal and its `Δ` part is exactly `Δ_i`, so the class is the
/// negated normal form of the `Z`/`Y` part.
pub fn delta_class(n: usize, i: usize) -> Result<PicClass> {
    if n == 0 {
        return Err(Error::RankZero);
    }
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let mut a = vec![0i64; n];
    for v in a[(n - i)..].iter_mut() {
        *v = 1;
    }
    let dv = divisor_of_monomial(&a)?;
    debug_assert!(dv
        .delta
        .iter()
        .enumerate()
        .all(|(k, &c)| c == i64::from(k + 1 == i)));
    let negated = LineBundleClass::new(
        dv.z.iter().map(|&c| -c).collect(),
        dv.y.iter().map(|&c| -c).collect(),
        0,
        0,
    )?;
    pic_normal_form(&negated)
}

/// The dualizing class `ω = ⊗_{i=0}^{n-1} (M_i ⊗ L_i)^{i(i-n)-1}`, i.e.
/// `m_i = l_i = i(i-n) - 1`.
///
/// The product starts at `i = 0`: at rank 1 this gives `-Z_0 - Y_0`, the
/// canonical class of the projective line, and at rank 2 it matches the
/// canonical class of the blow-up model (P^4 blown up at a point and along
/// a quadric surface).
pub fn dualizing_class(n: usize) -> Result<LineBundleClass> {
    if n == 0 {
        return Err(Error::RankZero);
    }
    let coeffs: Vec<i64> = (0..n)
        .map(|i| {
            let i = i as i128;
            checked_i64(i * (i - n as i128) - 1, "dualizing class exponent")
        })
        .collect::<Result<_>>()?;
    LineBundleClass::new(coeffs.clone(), coeffs, 0, 0)
}
