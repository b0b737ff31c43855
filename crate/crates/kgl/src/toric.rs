//! The toric closure `KT` of a maximal torus inside `KGL_n`: its fan,
//! restriction of boundary classes, support functions and nef/ampleness.
//!
//! The fan lives in `Z^n`.  Its rays are `±Σ_{i∈I} e_i` for nonempty
//! `I ⊆ [1, n]` (so `2(2^n - 1)` in total) and its maximal cones are
//!
//! `σ(α, ℓ) = { x : x_{α(1)} <= ... <= x_{α(ℓ)} <= 0 <= x_{α(ℓ+1)} <= ... <= x_{α(n)} }`
//!
//! over permutations `α` of `[1, n]` and splits `ℓ ∈ [0, n]`, giving
//! `n!(n+1)` smooth cones.  A boundary class restricts by the coefficient
//! rule: ray `-e_I` carries `m_{n-|I|}` and ray `+e_I` carries `l_{n-|I|}`
//! (each maximal cone's chart is a permuted boundary chart whose local
//! equations are coordinate characters with exponent one); the rule is
//! cross-checked at runtime against the divisor formula by
//! [`verify_toric_consistency`].
//!
//! Sign convention, pinned by the rank-1 degree test: the support function
//! satisfies `<m_σ, v_ρ> = -a_ρ` on the rays of `σ`; a divisor is nef iff
//! `<m_σ, v_ρ> >= -a_ρ` for every maximal cone `σ` and every ray `ρ`, and
//! ample iff the inequality is strict whenever `ρ` is not a face of `σ`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::divisors::{divisor_of_monomial, dualizing_class};
use crate::domain::LineBundleClass;
use crate::linalg::det_small;
use crate::weights::closed_orbit_weight;
use crate::{Error, Result};

/// Combinatorial-explosion guard: `2^n - 1` ray supports and `n!(n+1)`
/// cones stay trivially small up to here.
pub const MAX_FAN_RANK: usize = 6;

fn check_rank(n: usize, max: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::RankZero);
    }
    if n > max {
        return Err(Error::RankTooLarge { n, max });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Fan data
// ---------------------------------------------------------------------------

/// A one-dimensional cone `sign * Σ_{i∈support} e_i` (support 1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ray {
    pub sign: i8,
    pub support: Vec<usize>,
    pub vector: Vec<i64>,
}

impl Ray {
    fn new(n: usize, sign: i8, mask: u32) -> Ray {
        let support: Vec<usize> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| i + 1)
            .collect();
        let mut vector = vec![0i64; n];
        for &i in &support {
            vector[i - 1] = sign as i64;
        }
        Ray {
            sign,
            support,
            vector,
        }
    }
}

/// A maximal cone `σ(α, ℓ)`, carrying its permutation, split and the
/// indices of its `n` extremal rays in the fan's ray list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxCone {
    /// The permutation `α` as the sequence `α(1), ..., α(n)` (1-based).
    pub perm: Vec<usize>,
    /// The split `ℓ`: coordinates `α(1..ℓ)` are nonpositive on the cone.
    pub split: usize,
    /// Extremal rays: `-e_{α[1..k]}` for `k <= ℓ`, `+e_{α[k..n]}` for
    /// `k > ℓ`.
    pub rays: Vec<usize>,
}

/// The complete smooth fan of the toric closure.
#[derive(Debug, Clone, Serialize)]
pub struct Fan {
    pub n: usize,
    pub rays: Vec<Ray>,
    pub cones: Vec<MaxCone>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: &mut Vec<usize>, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining.is_empty() {
            out.push(current.clone());
            return;
        }
        for i in 0..remaining.len() {
            let v = remaining.remove(i);
            current.push(v);
            rec(remaining, current, out);
            current.pop();
            remaining.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut (1..=n).collect(), &mut Vec::new(), &mut out);
    out
}

fn mask_of(indices: &[usize]) -> u32 {
    indices.iter().fold(0u32, |m, &i| m | (1 << (i - 1)))
}

/// Index of ray `(sign, mask)` in the canonical ray list: all negative
/// rays by increasing support mask, then all positive ones.
fn ray_index(n: usize, sign: i8, mask: u32) -> usize {
    let block = (1usize << n) - 1;
    let offset = (mask as usize) - 1;
    if sign < 0 {
        offset
    } else {
        block + offset
    }
}

/// Builds the full fan for rank `n` (`1 <= n <= 6`).
pub fn build_fan(n: usize) -> Result<Fan> {
    check_rank(n, MAX_FAN_RANK)?;
    let mut rays = Vec::with_capacity(2 * ((1 << n) - 1));
    for sign in [-1i8, 1] {
        for mask in 1..(1u32 << n) {
            rays.push(Ray::new(n, sign, mask));
        }
    }

    let mut cones = Vec::with_capacity(permutations(n).len() * (n + 1));
    for perm in permutations(n) {
        for split in 0..=n {
            let mut cone_rays = Vec::with_capacity(n);
            for k in 1..=split {
                cone_rays.push(ray_index(n, -1, mask_of(&perm[..k])));
            }
            for k in (split + 1)..=(n) {
                cone_rays.push(ray_index(n, 1, mask_of(&perm[(k - 1)..])));
            }
            cones.push(MaxCone {
                perm: perm.clone(),
                split,
                rays: cone_rays,
            });
        }
    }
    debug_assert_eq!(cones.len(), (1..=n).product::<usize>() * (n + 1));
    Ok(Fan { n, rays, cones })
}

impl Fan {
    /// Point membership in a maximal cone, straight from the defining
    /// chain of inequalities.
    pub fn cone_contains(&self, cone: &MaxCone, x: &[i64]) -> bool {
        let coord = |k: usize| x[cone.perm[k - 1] - 1];
        for k in 1..cone.split {
            if coord(k) > coord(k + 1) {
                return false;
            }
        }
        if cone.split >= 1 && coord(cone.split) > 0 {
            return false;
        }
        if cone.split < self.n && coord(cone.split + 1) < 0 {
            return false;
        }
        for k in (cone.split + 1)..self.n {
            if coord(k) > coord(k + 1) {
                return false;
            }
        }
        true
    }

    /// Determinant of the matrix of extremal rays of a cone; `±1` on every
    /// cone of this fan (smoothness).
    pub fn cone_determinant(&self, cone: &MaxCone) -> i64 {
        let mat: Vec<Vec<i128>> = cone
            .rays
            .iter()
            .map(|&r| self.rays[r].vector.iter().map(|&v| v as i128).collect())
            .collect();
        det_small(&mat) as i64
    }
}

// ---------------------------------------------------------------------------
// Toric divisors and support functions
// ---------------------------------------------------------------------------

/// An integer coefficient for every ray, stored by support mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricDivisor {
    n: usize,
    neg: Vec<i64>,
    pos: Vec<i64>,
}

impl ToricDivisor {
    pub fn zero(n: usize) -> Result<ToricDivisor> {
        check_rank(n, MAX_FAN_RANK)?;
        let len = (1 << n) - 1;
        Ok(ToricDivisor {
            n,
            neg: vec![0; len],
            pos: vec![0; len],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficient(&self, sign: i8, mask: u32) -> i64 {
        let idx = (mask as usize) - 1;
        if sign < 0 {
            self.neg[idx]
        } else {
            self.pos[idx]
        }
    }

    fn coefficient_by_ray(&self, n: usize, ray_idx: usize) -> i64 {
        let block = (1usize << n) - 1;
        if ray_idx < block {
            self.neg[ray_idx]
        } else {
            self.pos[ray_idx - block]
        }
    }
}

impl Serialize for ToricDivisor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            sign: i8,
            support: Vec<usize>,
            coeff: i64,
        }
        let mut entries = Vec::new();
        for (sign, coeffs) in [(-1i8, &self.neg), (1, &self.pos)] {
            for (idx, &coeff) in coeffs.iter().enumerate() {
                let ray = Ray::new(self.n, sign, (idx + 1) as u32);
                entries.push(Entry {
                    sign,
                    support: ray.support,
                    coeff,
                });
            }
        }
        let mut s = serializer.serialize_struct("ToricDivisor", 2)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("coefficients", &entries)?;
        s.end()
    }
}

/// Restriction of a boundary class to the toric closure: coefficient
/// `m_{n-|I|}` on ray `-e_I` and `l_{n-|I|}` on ray `+e_I`; the `(e, d)`
/// twists have trivial underlying bundles and contribute nothing.
pub fn restrict_to_toric(class: &LineBundleClass) -> Result<ToricDivisor> {
    let n = class.n();
    let mut d = ToricDivisor::zero(n)?;
    for mask in 1..(1u32 << n) {
        let size = mask.count_ones() as usize;
        d.neg[(mask as usize) - 1] = class.m()[n - size];
        d.pos[(mask as usize) - 1] = class.l()[n - size];
    }
    Ok(d)
}

/// The piecewise-linear data of a divisor: one linear functional per
/// maximal cone, satisfying `<m_σ, v_ρ> = -a_ρ` on the cone's rays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportFunction {
    /// Indexed like `Fan::cones`.
    pub cone_linears: Vec<Vec<i64>>,
}

/// Solves for the per-cone linear functionals and checks that every fan
/// ray lying in a cone pairs consistently (so adjacent cones agree on
/// shared faces).
pub fn support_function(fan: &Fan, d: &ToricDivisor) -> Result<SupportFunction> {
    if fan.n != d.n() {
        return Err(Error::LengthMismatch {
            context: format!("fan has n = {}, divisor has n = {}", fan.n, d.n()),
        });
    }
    let n = fan.n;
    let mut cone_linears = Vec::with_capacity(fan.cones.len());
    for cone in &fan.cones {
        // The nested supports make the ray matrix triangular along the
        // permutation: successive differences solve it exactly.
        let mut m = vec![0i64; n];
        let mut prev = 0i64;
        for k in 1..=cone.split {
            // <m, -e_{α[1..k]}> = -a  =>  m_{α(1)} + ... + m_{α(k)} = a
            let a = d.coefficient(-1, mask_of(&cone.perm[..k]));
            m[cone.perm[k - 1] - 1] = a - prev;
            prev = a;
        }
        prev = 0;
        for k in ((cone.split + 1)..=n).rev() {
            // <m, +e_{α[k..n]}> = -a  =>  m_{α(k)} + ... + m_{α(n)} = -a
            let a = d.coefficient(1, mask_of(&cone.perm[(k - 1)..]));
            m[cone.perm[k - 1] - 1] = -a - prev;
            prev = -a;
        }
        cone_linears.push(m);
    }

    // Face agreement: every fan ray inside a cone must pair to exactly its
    // negated coefficient under that cone's functional.
    for (ci, cone) in fan.cones.iter().enumerate() {
        let m = &cone_linears[ci];
        for (ri, ray) in fan.rays.iter().enumerate() {
            if fan.cone_contains(cone, &ray.vector) {
                let pairing: i64 = m.iter().zip(&ray.vector).map(|(x, y)| x * y).sum();
                let expected = -d.coefficient_by_ray(n, ri);
                if pairing != expected {
                    return Err(Error::InconsistentCartierData {
                        detail: format!(
                            "cone {ci} (perm {:?}, split {}), ray {:?}: pairing {pairing} != {expected}",
                            cone.perm, cone.split, ray.vector
                        ),
                    });
                }
            }
        }
    }
    Ok(SupportFunction { cone_linears })
}

fn convexity_scan(fan: &Fan, d: &ToricDivisor, strict: bool) -> Result<bool> {
    let sf = support_function(fan, d)?;
    for (ci, cone) in fan.cones.iter().enumerate() {
        let m = &sf.cone_linears[ci];
        for (ri, ray) in fan.rays.iter().enumerate() {
            if fan.cone_contains(cone, &ray.vector) {
                continue;
            }
            let pairing: i64 = m.iter().zip(&ray.vector).map(|(x, y)| x * y).sum();
            let floor = -d.coefficient_by_ray(fan.n, ri);
            if pairing < floor || (strict && pairing == floor) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Nef test: the support function is convex, i.e. each cone's functional
/// dominates the ray values everywhere.
pub fn is_nef(fan: &Fan, d: &ToricDivisor) -> Result<bool> {
    convexity_scan(fan, d, false)
}

/// Ampleness test: strict convexity across every non-face ray.
pub fn is_ample(fan: &Fan, d: &ToricDivisor) -> Result<bool> {
    convexity_scan(fan, d, true)
}

// ---------------------------------------------------------------------------
// Consistency of the coefficient rule with the divisor formula
// ---------------------------------------------------------------------------

/// Cross-checks the divisor-coefficient rule of [`restrict_to_toric`]
/// against the divisor-of-monomial formula: for random integer vectors
/// `a`, the principal toric divisor of the character `Σ a_{n-i+1} e_i^*`
/// must place `zZ_{n-k}` on the prefix ray `-e_{[1,k]}` and `zY_{k-1}` on
/// the suffix ray `+e_{[k,n]}`.
pub fn verify_toric_consistency(n: usize, samples: usize) -> Result<()> {
    verify_toric_consistency_seeded(n, samples, 0x4b474c, false)
}

/// Seeded variant; `corrupt` perturbs one rule coefficient to demonstrate
/// that the check actually fails on a wrong rule (fault injection for the
/// self-test).
pub fn verify_toric_consistency_seeded(
    n: usize,
    samples: usize,
    seed: u64,
    corrupt: bool,
) -> Result<()> {
    check_rank(n, 5)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64));
    for sample in 0..samples {
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
        let expected = divisor_of_monomial(&a)?;
        // Character of the monomial: u_i = a_{n-i+1} (1-based).
        let u: Vec<i64> = a.iter().rev().copied().collect();
        for k in 1..=n {
            // Prefix ray -e_{[1,k]} lies on Z_{n-k} with multiplicity 1.
            let pairing: i64 = -u[..k].iter().sum::<i64>();
            let mut rule = expected.z[n - k];
            if corrupt && sample == 0 && k == 1 {
                rule += 1;
            }
            if pairing != rule {
                return Err(Error::ConsistencyFailure {
                    detail: format!(
                        "a = {a:?}: ray -e_[1,{k}] pairs to {pairing}, rule gives zZ_{} = {rule}",
                        n - k
                    ),
                });
            }
            // Suffix ray +e_{[k,n]} lies on Y_{k-1} with multiplicity 1.
            let pairing: i64 = u[(k - 1)..].iter().sum::<i64>();
            let rule = expected.y[k - 1];
            if pairing != rule {
                return Err(Error::ConsistencyFailure {
                    detail: format!(
                        "a = {a:?}: ray +e_[{k},{n}] pairs to {pairing}, rule gives zY_{} = {rule}",
                        k - 1
                    ),
                });
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Non-ampleness report
// ---------------------------------------------------------------------------

/// Outcome of the non-ampleness check for a nondecreasing weight `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotAmpleReport {
    /// The bundle built from `a` is not ample (tested on the toric
    /// closure, where ampleness would be inherited).
    pub l_not_ample: bool,
    /// Neither is its twist by `ω^{-1}(-Σ(Z_i + Y_i))`.
    pub twisted_not_ample: bool,
    /// Every closed orbit still carries nonzero sections of the bundle.
    pub all_closed_orbit_sections_nonzero: bool,
}

/// The bundle `O(Σ m_i Z_i + Σ l_i Y_i)` with `m_i = Σ_{j>i} a_j` and
/// `l_i = -Σ_{j<=n-i} a_j` — the class of the monomial divisor with the
/// `Δ` part stripped.
pub fn bundle_from_monomial(a: &[i64]) -> Result<LineBundleClass> {
    let dv = divisor_of_monomial(a)?;
    LineBundleClass::new(
        dv.z.iter().map(|&c| -c).collect(),
        dv.y.iter().map(|&c| -c).collect(),
        0,
        0,
    )
}

/// The twist `ω^{-1}(-Σ(Z_i + Y_i)) ⊗ L`, exponentwise.
fn anti_canonical_twist(class: &LineBundleClass) -> Result<LineBundleClass> {
    let omega = dualizing_class(class.n())?;
    let m: Vec<i64> = class
        .m()
        .iter()
        .zip(omega.m())
        .map(|(&mi, &wi)| mi - wi - 1)
        .collect();
    let l: Vec<i64> = class
        .l()
        .iter()
        .zip(omega.l())
        .map(|(&li, &wi)| li - wi - 1)
        .collect();
    LineBundleClass::new(m, l, class.e(), class.d())
}

/// For a nondecreasing `a`, builds the associated bundle and reports that
/// neither it nor its anti-canonical twist is ample while every closed
/// orbit keeps nonzero sections.
pub fn check_not_ample(a: &[i64]) -> Result<NotAmpleReport> {
    let n = a.len();
    check_rank(n, MAX_FAN_RANK)?;
    if let Some(pos) = a.windows(2).position(|w| w[0] > w[1]) {
        return Err(Error::NotDominant { position: pos + 2 });
    }
    let class = bundle_from_monomial(a)?;
    let fan = build_fan(n)?;
    let l_not_ample = !is_ample(&fan, &restrict_to_toric(&class)?)?;
    let twisted = anti_canonical_twist(&class)?;
    let twisted_not_ample = !is_ample(&fan, &restrict_to_toric(&twisted)?)?;
    let mut all_nonzero = true;
    for r in 0..=n {
        let w = closed_orbit_weight(&class, r, n - r)?;
        if w.a().windows(2).any(|p| p[0] > p[1]) {
            all_nonzero = false;
        }
    }
    Ok(NotAmpleReport {
        l_not_ample,
        twisted_not_ample,
        all_closed_orbit_sections_nonzero: all_nonzero,
    })
}
