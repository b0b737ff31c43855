//! Domain types, index conventions and validation shared by all modules.
//!
//! Boundary-divisor data is 0-based (`m_i`, `l_i`, `Z_i`, `Y_i` with `i` in
//! `[0, n-1]`); weight coordinates are 1-based (`a_i`, `b_i` with `i` in
//! `[1, n]`).  Serialized CLI payloads restate this in an `indexing` field.
//!
//! All types here are immutable values: safe to share and send across
//! threads.  Canonical JSON: sequences as arrays, sets as sorted arrays,
//! dimensions as (arbitrary-precision) JSON numbers.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::{Error, Result};

/// Serde adapter keeping `BigUint` dimensions as plain JSON numbers of
/// unbounded size (requires serde_json's arbitrary-precision numbers).
pub(crate) mod bigdim {
    use num_bigint::BigUint;
    use serde::ser::Error as _;
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        let n: serde_json::Number = v.to_string().parse().map_err(S::Error::custom)?;
        n.serialize(s)
    }
}

// ---------------------------------------------------------------------------
// LineBundleClass
// ---------------------------------------------------------------------------

/// Exponent vector `(m, l, e, d)` naming the linearized line bundle
/// `⊗ M_i^{m_i} ⊗ L_i^{l_i} ⊗ (det E)^e ⊗ (det F)^d` on `KGL_n`, where
/// `M_i = O(Z_i)` and `L_i = O(Y_i)` are the boundary-divisor bundles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLineBundleClass")]
pub struct LineBundleClass {
    n: usize,
    m: Vec<i64>,
    l: Vec<i64>,
    e: i64,
    d: i64,
}

#[derive(Deserialize)]
struct RawLineBundleClass {
    #[allow(dead_code)]
    #[serde(default)]
    n: usize,
    m: Vec<i64>,
    l: Vec<i64>,
    #[serde(default)]
    e: i64,
    #[serde(default)]
    d: i64,
}

impl TryFrom<RawLineBundleClass> for LineBundleClass {
    type Error = Error;
    fn try_from(raw: RawLineBundleClass) -> Result<Self> {
        LineBundleClass::new(raw.m, raw.l, raw.e, raw.d)
    }
}

impl LineBundleClass {
    /// Builds a class from the exponent sequences; `n` is their common
    /// length.  Rejects empty or length-mismatched input.
    pub fn new(m: Vec<i64>, l: Vec<i64>, e: i64, d: i64) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::RankZero);
        }
        if m.len() != l.len() {
            return Err(Error::LengthMismatch {
                context: format!("len(m) = {} but len(l) = {}", m.len(), l.len()),
            });
        }
        Ok(Self {
            n: m.len(),
            m,
            l,
            e,
            d,
        })
    }

    /// The structure sheaf (all exponents zero).
    pub fn trivial(n: usize) -> Result<Self> {
        Self::new(vec![0; n], vec![0; n], 0, 0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> &[i64] {
        &self.m
    }

    pub fn l(&self) -> &[i64] {
        &self.l
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// `m_i` extended by the boundary convention `m_n = 0`.
    pub fn m_ext(&self, i: usize) -> i64 {
        if i == self.n {
            0
        } else {
            self.m[i]
        }
    }

    /// `l_i` extended by the boundary convention `l_n = 0`.
    pub fn l_ext(&self, i: usize) -> i64 {
        if i == self.n {
            0
        } else {
            self.l[i]
        }
    }
}

// ---------------------------------------------------------------------------
// OrbitSpec
// ---------------------------------------------------------------------------

/// Subset pair `(I, J)` of `[0, n-1]` naming the orbit closure cut out by
/// the `Z_i` (`i` in `I`) and `Y_j` (`j` in `J`).  The closure is nonempty
/// iff `min(I) + min(J) >= n` under the convention `min(∅) = n`; that is
/// checked by [`validate_orbit`], not by the constructor, so that invalid
/// user input can be diagnosed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawOrbitSpec")]
pub struct OrbitSpec {
    n: usize,
    #[serde(rename = "I")]
    set_i: BTreeSet<usize>,
    #[serde(rename = "J")]
    set_j: BTreeSet<usize>,
}

#[derive(Deserialize)]
struct RawOrbitSpec {
    n: usize,
    #[serde(rename = "I", default)]
    set_i: BTreeSet<usize>,
    #[serde(rename = "J", default)]
    set_j: BTreeSet<usize>,
}

impl TryFrom<RawOrbitSpec> for OrbitSpec {
    type Error = Error;
    fn try_from(raw: RawOrbitSpec) -> Result<Self> {
        OrbitSpec::new(raw.n, raw.set_i, raw.set_j)
    }
}

impl OrbitSpec {
    pub fn new(
        n: usize,
        set_i: impl IntoIterator<Item = usize>,
        set_j: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::RankZero);
        }
        let set_i: BTreeSet<usize> = set_i.into_iter().collect();
        let set_j: BTreeSet<usize> = set_j.into_iter().collect();
        for &idx in set_i.iter().chain(set_j.iter()) {
            if idx >= n {
                return Err(Error::IndexOutOfRange { index: idx, n });
            }
        }
        Ok(Self { n, set_i, set_j })
    }

    /// `I = J = ∅`: the whole compactification.
    pub fn ambient(n: usize) -> Result<Self> {
        Self::new(n, [], [])
    }

    /// The closed orbit `O_{r,s}` with `r + s = n`, i.e. `I = [s, n-1]`,
    /// `J = [r, n-1]`.
    pub fn closed(n: usize, r: usize, s: usize) -> Result<Self> {
        if r + s != n || r > n {
            return Err(Error::BadOrbitSplit { r, s, n });
        }
        Self::new(n, s..n, r..n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set_i(&self) -> &BTreeSet<usize> {
        &self.set_i
    }

    pub fn set_j(&self) -> &BTreeSet<usize> {
        &self.set_j
    }

    /// `min(I)` under the convention `min(∅) = n`.
    pub fn i_min(&self) -> usize {
        self.set_i.first().copied().unwrap_or(self.n)
    }

    /// `min(J)` under the convention `min(∅) = n`.
    pub fn j_min(&self) -> usize {
        self.set_j.first().copied().unwrap_or(self.n)
    }
}

/// Succeeds iff the orbit closure named by `spec` is nonempty, i.e.
/// `min(I) + min(J) >= n` with `min(∅) = n`.
pub fn validate_orbit(spec: &OrbitSpec) -> Result<()> {
    let min_sum = spec.i_min() + spec.j_min();
    if min_sum >= spec.n {
        Ok(())
    } else {
        Err(Error::EmptyOrbitIntersection { n: spec.n, min_sum })
    }
}

// ---------------------------------------------------------------------------
// WeightPair
// ---------------------------------------------------------------------------

/// A pair `(a, b)` in `Z^n x Z^n` naming the flag line bundle `O(a, b)`
/// and thereby (for nondecreasing `a`, `b`) a simple `G`-module.
///
/// The derive order makes `Ord` lexicographic on `a`, then `b` — the
/// canonical ordering used in all serialized weight lists.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWeightPair")]
pub struct WeightPair {
    a: Vec<i64>,
    b: Vec<i64>,
}

#[derive(Deserialize)]
struct RawWeightPair {
    a: Vec<i64>,
    b: Vec<i64>,
}

impl TryFrom<RawWeightPair> for WeightPair {
    type Error = Error;
    fn try_from(raw: RawWeightPair) -> Result<Self> {
        WeightPair::new(raw.a, raw.b)
    }
}

impl WeightPair {
    pub fn new(a: Vec<i64>, b: Vec<i64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::RankZero);
        }
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                context: format!("len(a) = {} but len(b) = {}", a.len(), b.len()),
            });
        }
        Ok(Self { a, b })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }
}

// ---------------------------------------------------------------------------
// Decomposition
// ---------------------------------------------------------------------------

/// One summand of a decomposition: a weight pair with its exact dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionEntry {
    pub weight: WeightPair,
    pub dim: BigUint,
}

impl Serialize for DecompositionEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DecompositionEntry", 3)?;
        s.serialize_field("a", self.weight.a())?;
        s.serialize_field("b", self.weight.b())?;
        s.serialize_field("dim", &BigDim(&self.dim))?;
        s.end()
    }
}

struct BigDim<'a>(&'a BigUint);

impl Serialize for BigDim<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        bigdim::serialize(self.0, serializer)
    }
}

/// A finite list of pairwise-distinct weight pairs with exact dimensions
/// and their total.  The total is always recomputed from the entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    weights: Vec<DecompositionEntry>,
    #[serde(with = "bigdim")]
    total: BigUint,
}

impl Decomposition {
    /// Assembles a decomposition; the total is the sum of the entry
    /// dimensions.  Entries must already be in canonical order and
    /// pairwise distinct (the enumeration guarantees both).
    pub fn from_entries(entries: Vec<(WeightPair, BigUint)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        let total = entries.iter().map(|(_, d)| d).sum();
        Decomposition {
            weights: entries
                .into_iter()
                .map(|(weight, dim)| DecompositionEntry { weight, dim })
                .collect(),
            total,
        }
    }

    pub fn entries(&self) -> &[DecompositionEntry] {
        &self.weights
    }

    pub fn total_dim(&self) -> &BigUint {
        &self.total
    }

    pub fn is_zero(&self) -> bool {
        self.total.is_zero()
    }
}

// ---------------------------------------------------------------------------
// DivisorExpr
// ---------------------------------------------------------------------------

/// A divisor expression `Σ zZ_i Z_i + Σ zY_i Y_i + Σ zDelta_i Δ_i`, where
/// `Δ_i` is the closure of the vanishing locus of the leading `i x i`
/// minor.  `zZ`, `zY` have length `n`; `zDelta` has length `n - 1` and is
/// indexed by `i` in `[1, n-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDivisorExpr")]
pub struct DivisorExpr {
    #[serde(rename = "zZ")]
    pub z: Vec<i64>,
    #[serde(rename = "zY")]
    pub y: Vec<i64>,
    #[serde(rename = "zDelta")]
    pub delta: Vec<i64>,
}

#[derive(Deserialize)]
struct RawDivisorExpr {
    #[serde(rename = "zZ")]
    z: Vec<i64>,
    #[serde(rename = "zY")]
    y: Vec<i64>,
    #[serde(rename = "zDelta")]
    delta: Vec<i64>,
}

impl TryFrom<RawDivisorExpr> for DivisorExpr {
    type Error = Error;
    fn try_from(raw: RawDivisorExpr) -> Result<Self> {
        DivisorExpr::new(raw.z, raw.y, raw.delta)
    }
}

impl DivisorExpr {
    pub fn new(z: Vec<i64>, y: Vec<i64>, delta: Vec<i64>) -> Result<Self> {
        if z.is_empty() {
            return Err(Error::RankZero);
        }
        if z.len() != y.len() || delta.len() + 1 != z.len() {
            return Err(Error::LengthMismatch {
                context: format!(
                    "len(zZ) = {}, len(zY) = {}, len(zDelta) = {} (want n, n, n-1)",
                    z.len(),
                    y.len(),
                    delta.len()
                ),
            });
        }
        Ok(Self { z, y, delta })
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn is_zero(&self) -> bool {
        self.z.iter().all(|&c| c == 0)
            && self.y.iter().all(|&c| c == 0)
            && self.delta.iter().all(|&c| c == 0)
    }

    /// Componentwise sum; both operands must have the same rank.
    pub fn add(&self, other: &DivisorExpr) -> Result<DivisorExpr> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch {
                context: format!("adding divisors of rank {} and {}", self.n(), other.n()),
            });
        }
        let comb = |xs: &[i64], ys: &[i64]| -> Result<Vec<i64>> {
            xs.iter()
                .zip(ys)
                .map(|(&x, &y)| {
                    x.checked_add(y).ok_or(Error::Overflow {
                        context: "divisor addition",
                    })
                })
                .collect()
        };
        DivisorExpr::new(
            comb(&self.z, &other.z)?,
            comb(&self.y, &other.y)?,
            comb(&self.delta, &other.delta)?,
        )
    }
}
