use thiserror::Error;

/// Crate-wide error type.  Variants are named after the condition they
/// signal; every fallible public operation returns [`Result`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Sequence lengths disagree with each other or with the stated rank.
    #[error("length mismatch: {context}")]
    LengthMismatch { context: String },

    /// The rank `n` must be at least 1.
    #[error("rank n must be at least 1")]
    RankZero,

    /// A subset entry lies outside `[0, n-1]`.
    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    /// `min(I) + min(J) < n`: the orbit closure is empty and every
    /// downstream query on it is invalid.
    #[error("orbit intersection is empty: min(I) + min(J) = {min_sum} < n = {n}")]
    EmptyOrbitIntersection { n: usize, min_sum: usize },

    /// Interval propagation could not bound a weight coordinate.  Valid
    /// inputs always yield a bounded box; this guards inconsistent ones.
    #[error("weight set is unbounded: coordinate a_{coordinate} has no finite {side} bound")]
    UnboundedWeightSet {
        coordinate: usize,
        side: &'static str,
    },

    /// A weight sequence fed to a dimension formula is not nondecreasing.
    #[error("sequence is not nondecreasing at position {position} (1-based)")]
    NotDominant { position: usize },

    /// The exponent pair fails the monotonicity/equality hypothesis of the
    /// inclusion comparison.
    #[error("inclusion hypothesis violated: {reason}")]
    InclusionHypothesisViolated { reason: String },

    /// `r + s` must equal `n` when naming a closed orbit.
    #[error("invalid closed-orbit split: r = {r}, s = {s}, n = {n}")]
    BadOrbitSplit { r: usize, s: usize, n: usize },

    /// Combinatorial-explosion guard for fan construction and related ops.
    #[error("rank n = {n} exceeds the supported maximum {max} for this operation")]
    RankTooLarge { n: usize, max: usize },

    /// Cartier data failed the per-cone/face agreement check.
    #[error("inconsistent Cartier data: {detail}")]
    InconsistentCartierData { detail: String },

    /// The toric divisor-coefficient rule disagrees with the divisor
    /// formula; carries a concrete counterexample.
    #[error("toric/divisor coefficient rule mismatch: {detail}")]
    ConsistencyFailure { detail: String },

    /// Checked integer arithmetic overflowed `i64`/`i128` range.
    #[error("integer overflow in {context}")]
    Overflow { context: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
