//! Enumeration of the finite weight set `A_IJ(L)` attached to a line bundle
//! class and a nonempty orbit closure, plus the closed-orbit weight formula.
//!
//! Membership of a pair `(a, b)` is defined by four conditions (everything
//! below is stated in shifted coordinates `s_i = a_i - e`):
//!
//! 1. `s` is nondecreasing;
//! 2. suffix sums `s_{i+1} + ... + s_n <= m_i` for all divisor indices
//!    `i` in `[n - min(J), n-1]`, with equality forced for `i` in `I`;
//! 3. prefix sums `s_1 + ... + s_{n-i} >= -l_i` for all `i` in
//!    `[n - min(I), n-1]`, with equality forced for `i` in `J`;
//! 4. `b` is determined by `a_i - e = -b_{n-i+1} + d`.
//!
//! Ranges with lower bound above the upper bound impose nothing.  The
//! enumerator runs a depth-first search over `s_1 <= s_2 <= ... <= s_n`
//! with running prefix sums, inside a per-coordinate box obtained by
//! interval propagation over the inequality system.  `b` is always derived
//! from `a`, never enumerated independently.

use crate::domain::{validate_orbit, LineBundleClass, OrbitSpec, WeightPair};
use crate::{Error, Result};

/// One-sided (or two-sided when `exact`) bound on a running sum.
#[derive(Debug, Clone, Copy)]
struct SumBound {
    value: i128,
    exact: bool,
}

/// The chain-structured inequality system in shifted coordinates.
#[derive(Debug)]
struct ConstraintSystem {
    n: usize,
    /// `suffix[i]`: `s_{i+1} + ... + s_n <= value` (equality if `exact`),
    /// for divisor index `i` in `[0, n-1]`.
    suffix: Vec<Option<SumBound>>,
    /// `prefix[k]`: `s_1 + ... + s_k >= value` (equality if `exact`),
    /// for cut position `k` in `[1, n]` (slot 0 unused).
    prefix: Vec<Option<SumBound>>,
}

impl ConstraintSystem {
    // `i` is the divisor index, used for the bound value, the equality
    // set and the constrained slot alike.
    #[allow(clippy::needless_range_loop)]
    fn build(class: &LineBundleClass, spec: &OrbitSpec) -> Self {
        let n = class.n();
        let mut suffix = vec![None; n];
        let mut prefix = vec![None; n + 1];
        let j1 = spec.j_min();
        for i in (n - j1)..n {
            suffix[i] = Some(SumBound {
                value: class.m()[i] as i128,
                exact: spec.set_i().contains(&i),
            });
        }
        let i1 = spec.i_min();
        for i in (n - i1)..n {
            let k = n - i;
            prefix[k] = Some(SumBound {
                value: -(class.l()[i] as i128),
                exact: spec.set_j().contains(&i),
            });
        }
        ConstraintSystem { n, suffix, prefix }
    }

    /// Checks every sum constraint exactly against the prefix-sum table
    /// `pre` (`pre[k] = s_1 + ... + s_k`, `pre[0] = 0`).
    fn check_sums(&self, pre: &[i128]) -> bool {
        let n = self.n;
        for (i, bound) in self.suffix.iter().enumerate() {
            if let Some(b) = bound {
                let t = pre[n] - pre[i];
                if t > b.value || (b.exact && t != b.value) {
                    return false;
                }
            }
        }
        for (k, bound) in self.prefix.iter().enumerate().skip(1) {
            if let Some(b) = bound {
                if pre[k] < b.value || (b.exact && pre[k] != b.value) {
                    return false;
                }
            }
        }
        true
    }
}

/// Decides whether `(a, b)` satisfies all four membership conditions for
/// `(class, spec)`.  Fails if the orbit is empty or lengths mismatch.
pub fn satisfies_conditions(
    class: &LineBundleClass,
    spec: &OrbitSpec,
    w: &WeightPair,
) -> Result<bool> {
    validate_orbit(spec)?;
    let n = class.n();
    if spec.n() != n || w.n() != n {
        return Err(Error::LengthMismatch {
            context: format!(
                "class has n = {}, orbit has n = {}, weight has n = {}",
                n,
                spec.n(),
                w.n()
            ),
        });
    }
    // (1) a nondecreasing
    if w.a().windows(2).any(|p| p[0] > p[1]) {
        return Ok(false);
    }
    // (4) b determined by a
    let (e, d) = (class.e() as i128, class.d() as i128);
    for i in 1..=n {
        if w.a()[i - 1] as i128 - e != -(w.b()[n - i] as i128) + d {
            return Ok(false);
        }
    }
    // (2) and (3) via prefix sums of s = a - e
    let mut pre = vec![0i128; n + 1];
    for i in 1..=n {
        pre[i] = pre[i - 1] + (w.a()[i - 1] as i128 - e);
    }
    Ok(ConstraintSystem::build(class, spec).check_sums(&pre))
}

/// Tightens an optional upper bound; returns true on change.
fn tighten_hi(slot: &mut Option<i128>, cand: i128) -> bool {
    match slot {
        Some(v) if *v <= cand => false,
        _ => {
            *slot = Some(cand);
            true
        }
    }
}

fn tighten_lo(slot: &mut Option<i128>, cand: i128) -> bool {
    match slot {
        Some(v) if *v >= cand => false,
        _ => {
            *slot = Some(cand);
            true
        }
    }
}

/// Sum of the finite entries of `vals` over `range`, plus how many are
/// still unbounded.
fn partial_sum(vals: &[Option<i128>], range: impl Iterator<Item = usize>) -> (i128, usize) {
    let mut sum = 0i128;
    let mut missing = 0usize;
    for k in range {
        match vals[k] {
            Some(v) => sum += v,
            None => missing += 1,
        }
    }
    (sum, missing)
}

const MAX_PROPAGATION_ROUNDS: usize = 64;

/// Interval propagation over the constraint system.  Returns the 1-based
/// per-coordinate box `(lo, hi)`, `None` when the intervals cross (the
/// system is infeasible and the weight set empty), or
/// [`Error::UnboundedWeightSet`] if some coordinate cannot be bounded.
///
/// Bounds move monotonically, so as long as no interval crosses the
/// process terminates; a crossing is detected immediately (before the
/// crossed bounds could feed back and diverge).
#[allow(clippy::type_complexity)]
fn propagate_box(sys: &ConstraintSystem) -> Result<Option<(Vec<i128>, Vec<i128>)>> {
    let n = sys.n;
    let mut lo: Vec<Option<i128>> = vec![None; n + 1];
    let mut hi: Vec<Option<i128>> = vec![None; n + 1];

    for _ in 0..MAX_PROPAGATION_ROUNDS {
        let mut changed = false;

        // Monotonicity chain s_k <= s_{k+1}.
        for k in (1..n).rev() {
            if let Some(h) = hi[k + 1] {
                changed |= tighten_hi(&mut hi[k], h);
            }
        }
        for k in 2..=n {
            if let Some(l) = lo[k - 1] {
                changed |= tighten_lo(&mut lo[k], l);
            }
        }

        // Suffix constraints: s_{i+1} + ... + s_n <= v (>= v when exact).
        for (i, bound) in sys.suffix.iter().enumerate() {
            let Some(b) = bound else { continue };
            let (lo_sum, lo_missing) = partial_sum(&lo, (i + 1)..=n);
            let (hi_sum, hi_missing) = partial_sum(&hi, (i + 1)..=n);
            for t in (i + 1)..=n {
                let others_missing = lo_missing - usize::from(lo[t].is_none());
                if others_missing == 0 {
                    let cand = b.value - (lo_sum - lo[t].unwrap_or(0));
                    changed |= tighten_hi(&mut hi[t], cand);
                }
                if b.exact {
                    let others_missing = hi_missing - usize::from(hi[t].is_none());
                    if others_missing == 0 {
                        let cand = b.value - (hi_sum - hi[t].unwrap_or(0));
                        changed |= tighten_lo(&mut lo[t], cand);
                    }
                }
            }
        }

        // Prefix constraints: s_1 + ... + s_k >= v (<= v when exact).
        for (k, bound) in sys.prefix.iter().enumerate().skip(1) {
            let Some(b) = bound else { continue };
            let (hi_sum, hi_missing) = partial_sum(&hi, 1..=k);
            let (lo_sum, lo_missing) = partial_sum(&lo, 1..=k);
            for t in 1..=k {
                let others_missing = hi_missing - usize::from(hi[t].is_none());
                if others_missing == 0 {
                    let cand = b.value - (hi_sum - hi[t].unwrap_or(0));
                    changed |= tighten_lo(&mut lo[t], cand);
                }
                if b.exact {
                    let others_missing = lo_missing - usize::from(lo[t].is_none());
                    if others_missing == 0 {
                        let cand = b.value - (lo_sum - lo[t].unwrap_or(0));
                        changed |= tighten_hi(&mut hi[t], cand);
                    }
                }
            }
        }

        for k in 1..=n {
            if let (Some(l), Some(h)) = (lo[k], hi[k]) {
                if l > h {
                    return Ok(None);
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut lo_out = vec![0i128; n + 1];
    let mut hi_out = vec![0i128; n + 1];
    for k in 1..=n {
        lo_out[k] = lo[k].ok_or(Error::UnboundedWeightSet {
            coordinate: k,
            side: "lower",
        })?;
        hi_out[k] = hi[k].ok_or(Error::UnboundedWeightSet {
            coordinate: k,
            side: "upper",
        })?;
    }
    Ok(Some((lo_out, hi_out)))
}

struct Enumerator<'a> {
    sys: &'a ConstraintSystem,
    lo: Vec<i128>,
    hi: Vec<i128>,
    /// `hi_tail[k] = hi_k + ... + hi_n` (index `n + 1` holds 0).
    hi_tail: Vec<i128>,
    s: Vec<i128>,
    pre: Vec<i128>,
    found: Vec<Vec<i128>>,
}

impl Enumerator<'_> {
    /// Minimum achievable `s_j + ... + s_n` given every future coordinate
    /// is at least `floor` (monotonicity) and at least its box low.
    fn min_tail(&self, j: usize, floor: i128) -> i128 {
        (j..=self.sys.n).map(|t| self.lo[t].max(floor)).sum()
    }

    fn dfs(&mut self, k: usize) {
        let n = self.sys.n;
        let start = if k == 1 {
            self.lo[1]
        } else {
            self.lo[k].max(self.s[k - 1])
        };
        'candidates: for v in start..=self.hi[k] {
            self.s[k] = v;
            self.pre[k] = self.pre[k - 1] + v;

            // Prefix bound at this cut: too small -> a larger v may fix it;
            // overshooting an equality only gets worse.
            if let Some(b) = self.sys.prefix[k] {
                if self.pre[k] < b.value {
                    continue;
                }
                if b.exact && self.pre[k] > b.value {
                    break;
                }
            }

            if k == n {
                if self.sys.check_sums(&self.pre) {
                    self.found.push(self.s[1..=n].to_vec());
                }
                continue;
            }

            // Feasibility window for the remaining sum F = s_{k+1}+...+s_n.
            let fmin_reachable = self.min_tail(k + 1, v);
            let fmax_reachable = self.hi_tail[k + 1];
            let mut f_hi = i128::MAX;
            let mut f_lo = i128::MIN;
            for (i, bound) in self.sys.suffix.iter().enumerate() {
                let Some(b) = bound else { continue };
                if i >= k {
                    // Entirely in the future: compare against reachable range.
                    let tmin = self.min_tail(i + 1, v);
                    if tmin > b.value {
                        break 'candidates; // grows with v
                    }
                    if b.exact {
                        let tmax: i128 = ((i + 1)..=n).map(|t| self.hi[t]).sum();
                        if tmax < b.value {
                            break 'candidates; // v-independent
                        }
                    }
                } else {
                    // Straddles the cut: T_i = F + (pre[k] - pre[i]).
                    f_hi = f_hi.min(b.value - self.pre[k] + self.pre[i]);
                    if b.exact {
                        f_lo = f_lo.max(b.value - self.pre[k] + self.pre[i]);
                    }
                }
            }
            if fmin_reachable > f_hi {
                break; // min grows and the cap shrinks as v increases
            }
            if fmax_reachable < f_lo {
                continue; // the requirement relaxes as v increases
            }

            // Future prefix cuts.
            for t in (k + 1)..=n {
                if let Some(b) = self.sys.prefix[t] {
                    let max_pre = self.pre[k] + ((k + 1)..=t).map(|j| self.hi[j]).sum::<i128>();
                    if max_pre < b.value {
                        continue 'candidates;
                    }
                    if b.exact {
                        let min_pre =
                            self.pre[k] + ((k + 1)..=t).map(|j| self.lo[j].max(v)).sum::<i128>();
                        if min_pre > b.value {
                            break 'candidates;
                        }
                    }
                }
            }

            self.dfs(k + 1);
        }
    }
}

/// Enumerates `A_IJ(L)` exactly, in lexicographic order on `a`.
///
/// The search box always comes out bounded for a nonempty orbit closure;
/// [`Error::UnboundedWeightSet`] guards against inconsistent inputs rather
/// than looping.
pub fn enumerate_weights(class: &LineBundleClass, spec: &OrbitSpec) -> Result<Vec<WeightPair>> {
    validate_orbit(spec)?;
    if class.n() != spec.n() {
        return Err(Error::LengthMismatch {
            context: format!("class has n = {}, orbit has n = {}", class.n(), spec.n()),
        });
    }
    let n = class.n();
    let sys = ConstraintSystem::build(class, spec);
    let Some((lo, hi)) = propagate_box(&sys)? else {
        return Ok(Vec::new());
    };

    let mut hi_tail = vec![0i128; n + 2];
    for k in (1..=n).rev() {
        hi_tail[k] = hi_tail[k + 1] + hi[k];
    }

    let mut en = Enumerator {
        sys: &sys,
        lo,
        hi,
        hi_tail,
        s: vec![0; n + 1],
        pre: vec![0; n + 1],
        found: Vec::new(),
    };
    en.dfs(1);

    let (e, d) = (class.e() as i128, class.d() as i128);
    let mut out = Vec::with_capacity(en.found.len());
    for s in en.found {
        let a = s
            .iter()
            .map(|&v| {
                i64::try_from(v + e).map_err(|_| Error::Overflow {
                    context: "weight coordinate a",
                })
            })
            .collect::<Result<Vec<i64>>>()?;
        let b = s
            .iter()
            .rev()
            .map(|&v| {
                i64::try_from(d - v).map_err(|_| Error::Overflow {
                    context: "weight coordinate b",
                })
            })
            .collect::<Result<Vec<i64>>>()?;
        out.push(WeightPair::new(a, b)?);
    }
    Ok(out)
}

/// The weight of the restriction of `class` to the closed orbit `O_{r,s}`:
/// `a_i - e = l_{n-i+1} - l_{n-i}` for `i` in `[1, s]` and
/// `a_i - e = m_{i-1} - m_i` for `i` in `[s+1, n]`, with `m_n = l_n = 0`;
/// `b` is determined by `a_i - e = -b_{n-i+1} + d`.
///
/// The resulting `a` need not be nondecreasing: when it is not, the
/// restricted bundle has no sections and the corresponding weight set is
/// empty.
pub fn closed_orbit_weight(class: &LineBundleClass, r: usize, s: usize) -> Result<WeightPair> {
    let n = class.n();
    if r + s != n || r > n {
        return Err(Error::BadOrbitSplit { r, s, n });
    }
    let (e, d) = (class.e() as i128, class.d() as i128);
    let mut a = vec![0i64; n];
    for i in 1..=n {
        let diff = if i <= s {
            class.l_ext(n - i + 1) as i128 - class.l_ext(n - i) as i128
        } else {
            class.m_ext(i - 1) as i128 - class.m_ext(i) as i128
        };
        a[i - 1] = i64::try_from(diff + e).map_err(|_| Error::Overflow {
            context: "closed-orbit weight a",
        })?;
    }
    let mut b = vec![0i64; n];
    for i in 1..=n {
        let s_i = a[i - 1] as i128 - e;
        b[n - i] = i64::try_from(d - s_i).map_err(|_| Error::Overflow {
            context: "closed-orbit weight b",
        })?;
    }
    WeightPair::new(a, b)
}
