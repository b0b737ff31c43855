//! Independent brute-force dimensions of `H^0(KGL_n, L)` for `n <= 2`,
//! computed on the explicit blow-up model with exact integer linear
//! algebra.  This is the ground truth the decomposition engine is tested
//! against; it never touches the weight enumeration or the dimension
//! formulas.
//!
//! Rank 1: the compactification is a projective line and the dimension is
//! `max(0, m_0 + l_0 + 1)`.
//!
//! Rank 2: the compactification is `P^4 = Proj k[x00, x11, x12, x21, x22]`
//! blown up at the point `(1:0:0:0:0)` and along the quadric surface
//! `{x00 = 0, q = 0}`, `q = x11 x22 - x12 x21`.  Under the pullback
//! identifications `{x00 = 0} -> Z_0 + Z_1` and `{q = 0} -> Y_1 + 2 Y_0 +
//! Z_1` (the quadric cone has multiplicity 2 at its vertex, 1 along the
//! surface), a section of `O(Σ m_i Z_i + Σ l_i Y_i)` is a rational form
//! `F / (x00^a q^b)`; clearing poles with large enough `a`, `b` turns the
//! section space into the space of degree-`d` forms `F` (`d = a + 2b`)
//! subject to four vanishing conditions:
//!
//! (i)   `x00^{max(0, a - m_0)}` divides `F`;
//! (ii)  `F` lies in the ideal power `(x00, q)^{max(0, a + b - m_1)}`
//!       (the ordinary power: the center is a smooth complete
//!       intersection, so symbolic and ordinary powers agree);
//! (iii) every monomial of `F` has degree at least `max(0, 2b - l_0)` in
//!       the four matrix variables (vanishing order at the blown-up
//!       point);
//! (iv)  `q^{max(0, b - l_1)}` divides `F`.
//!
//! The dimension of the intersection of those subspaces is computed by
//! exact rank computation: spanning rows of the ideal-power subspace are
//! reduced with fraction-free integer elimination, with the columns of
//! monomials violating (i)/(iii) ordered first, so that one elimination
//! yields both the subspace rank and the rank of its projection onto the
//! violating coordinates.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};

use crate::linalg::{RowEchelon, SparseRow};

/// `dim H^0` at rank 1: degree-`(m_0 + l_0)` forms on the projective line.
pub fn oracle_dim_n1(m0: i64, l0: i64) -> BigUint {
    let deg = m0 as i128 + l0 as i128 + 1;
    if deg <= 0 {
        BigUint::ZERO
    } else {
        BigUint::from(deg as u128)
    }
}

/// `dim H^0` at rank 2 with the minimal pole-clearing exponents.
pub fn oracle_dim_n2(m0: i64, m1: i64, l0: i64, l1: i64) -> BigUint {
    oracle_dim_n2_padded(m0, m1, l0, l1, 0, 0)
}

/// Exponents of degree-`deg` monomials in the five coordinates, ordered
/// `[x00, x11, x12, x21, x22]`.
fn monomials(deg: i64) -> Vec<[u16; 5]> {
    let mut out = Vec::new();
    let deg = deg as u16;
    for e0 in 0..=deg {
        for e1 in 0..=(deg - e0) {
            for e2 in 0..=(deg - e0 - e1) {
                for e3 in 0..=(deg - e0 - e1 - e2) {
                    let e4 = deg - e0 - e1 - e2 - e3;
                    out.push([e0, e1, e2, e3, e4]);
                }
            }
        }
    }
    out
}

/// The degree-`degree` graded piece of `k[x00, x11, x12, x21, x22]`, with
/// its columns ordered so that the monomials violating the divisibility /
/// vanishing-order conditions come first.
struct MonomialSpace {
    degree: i64,
    /// All degree-`degree` exponent vectors, bad block first.
    monomials: Vec<[u16; 5]>,
    /// Column index of each monomial.
    col_of: HashMap<[u16; 5], usize>,
    /// Size of the leading bad block.
    bad_count: usize,
}

impl MonomialSpace {
    /// `min_x00`: condition (i) on the x00-exponent; `min_matrix_deg`:
    /// condition (iii) on the degree in the four matrix variables.
    fn new(degree: i64, min_x00: i64, min_matrix_deg: i64) -> MonomialSpace {
        let is_good = |m: &[u16; 5]| -> bool {
            (m[0] as i64) >= min_x00 && (degree - m[0] as i64) >= min_matrix_deg
        };
        let mut monomials = monomials(degree);
        debug_assert_eq!(monomials.len() as i64, binomial(degree + 4, 4) as i64);
        monomials.sort_by_key(|m| (is_good(m), *m));
        let bad_count = monomials.iter().take_while(|m| !is_good(m)).count();
        let col_of = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        MonomialSpace {
            degree,
            monomials,
            col_of,
            bad_count,
        }
    }

    fn dim(&self) -> usize {
        self.monomials.len()
    }
}

fn binomial(n: i64, k: i64) -> i128 {
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// As [`oracle_dim_n2`], but with the pole-clearing exponents `a`, `b`
/// padded beyond their minimum.  The result must not depend on the
/// padding; the choice-independence test exercises exactly that.
pub fn oracle_dim_n2_padded(
    m0: i64,
    m1: i64,
    l0: i64,
    l1: i64,
    extra_a: i64,
    extra_b: i64,
) -> BigUint {
    // Minimal exponents clearing every pole, then the requested padding.
    let b = 0i64.max(l1).max((l0 + 1).div_euclid(2)) + extra_b;
    let a = 0i64.max(m0).max(m1 - b) + extra_a;
    let d = a + 2 * b;

    let c_x00 = 0i64.max(a - m0); // (i)
    let ideal_pow = 0i64.max(a + b - m1); // (ii)
    let c_point = 0i64.max(2 * b - l0); // (iii)
    let q_pow = 0i64.max(b - l1); // (iv)

    // Factor out the forced q-power: F = q^{q_pow} G.  The quotient ring
    // by (x00, q) is graded both by the x00-degree and by the total degree
    // in the matrix variables, so all four conditions descend to G.
    let deg = d - 2 * q_pow;
    if deg < 0 {
        return BigUint::ZERO;
    }
    let t = 0i64.max(ideal_pow - q_pow);
    let c_point = 0i64.max(c_point - 2 * q_pow);

    // Ambient monomial space, columns ordered bad-first.
    let space = MonomialSpace::new(deg, c_x00, c_point);

    // Spanning rows of the degree-`deg` part of (x00, q)^t: the generators
    // x00^{t-beta} q^beta times all complementary monomials.
    let mut ech = RowEchelon::new();
    let mut rank = 0usize;
    for beta in 0..=t {
        let alpha = t - beta;
        let rest = space.degree - alpha - 2 * beta;
        if rest < 0 {
            continue;
        }
        for m in monomials(rest) {
            let mut row: SparseRow = Vec::with_capacity(beta as usize + 1);
            for u in 0..=beta {
                // q^beta = sum_u (-1)^u C(beta, u) (x11 x22)^{beta-u} (x12 x21)^u
                let exps = [
                    m[0] + alpha as u16,
                    m[1] + (beta - u) as u16,
                    m[2] + u as u16,
                    m[3] + u as u16,
                    m[4] + (beta - u) as u16,
                ];
                let mut coeff = BigInt::from(binomial(beta, u));
                if u % 2 == 1 {
                    coeff = -coeff;
                }
                row.push((space.col_of[&exps], coeff));
            }
            row.sort_by_key(|&(c, _)| c);
            if ech.insert(row) {
                rank += 1;
            }
        }
    }
    debug_assert_eq!(rank, ech.rank());
    debug_assert!(rank <= space.dim());

    // dim(W ∩ good) = dim W - dim(projection of W onto the bad columns),
    // and leftmost pivoting makes the latter the pivot count in the bad
    // block.
    BigUint::from((rank - ech.rank_below(space.bad_count)) as u64)
}
