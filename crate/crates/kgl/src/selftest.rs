//! The acceptance grid: every cross-validation criterion the artifact must
//! pass, runnable both from the CLI (`kgl selftest`) and from the
//! integration test suite.
//!
//! Each criterion compares two independent computation routes (engine vs
//! brute-force oracle, product formula vs pattern count, coefficient rule
//! vs divisor formula, ...) with exact integer equality — there are no
//! tolerances anywhere.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::decomp::{decompose, inclusion_report, restriction_report};
use crate::divisors::{dualizing_class, pic_equal, pic_normal_form, relation_class};
use crate::domain::{LineBundleClass, OrbitSpec};
use crate::oracle::{oracle_dim_n1, oracle_dim_n2};
use crate::repdim::{gt_dim, weyl_dim};
use crate::toric::{build_fan, check_not_ample, verify_toric_consistency_seeded};
use crate::weights::{closed_orbit_weight, enumerate_weights};

/// Tuning knobs for the grid sizes; the defaults are the acceptance-scale
/// values.
#[derive(Debug, Clone)]
pub struct SelftestConfig {
    /// The rank-2 oracle grid runs over `[-radius, radius+1]^4`.
    pub grid_radius: i64,
    /// Sample count for the randomized restriction/inclusion criteria.
    pub random_samples: usize,
    /// Sample count per rank for the toric consistency criterion.
    pub toric_samples: usize,
    /// Fault injection: flip one coefficient inside the toric consistency
    /// check so that criterion 8 must fail.
    pub corrupt_toric: bool,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            grid_radius: 2,
            random_samples: 200,
            toric_samples: 100,
            corrupt_toric: false,
        }
    }
}

/// Result of one criterion: how many cases ran and the first failure, if
/// any.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

impl CriterionOutcome {
    fn new(id: usize, name: &'static str, cases: usize, failure: Option<String>) -> Self {
        CriterionOutcome {
            id,
            name,
            passed: failure.is_none(),
            cases,
            detail: failure.unwrap_or_default(),
        }
    }

    pub fn render(&self) -> String {
        if self.passed {
            format!(
                "criterion {:02} {:<36} PASS  ({} cases)",
                self.id, self.name, self.cases
            )
        } else {
            format!(
                "criterion {:02} {:<36} FAIL  {}",
                self.id, self.name, self.detail
            )
        }
    }
}

fn ambient(n: usize) -> OrbitSpec {
    OrbitSpec::ambient(n).expect("n >= 1")
}

/// Criterion 1: on the rank-2 exponent grid, the decomposition total must
/// equal the blow-up model oracle exactly.
pub fn criterion_01_oracle_grid_n2(radius: i64) -> CriterionOutcome {
    let range: Vec<i64> = (-radius..=radius + 1).collect();
    let mut grid = Vec::new();
    for &m0 in &range {
        for &m1 in &range {
            for &l0 in &range {
                for &l1 in &range {
                    grid.push((m0, m1, l0, l1));
                }
            }
        }
    }
    let failure = grid.par_iter().find_map_first(|&(m0, m1, l0, l1)| {
        let class = LineBundleClass::new(vec![m0, m1], vec![l0, l1], 0, 0).unwrap();
        let total = match decompose(&class, &ambient(2)) {
            Ok(d) => d.total_dim().clone(),
            Err(e) => return Some(format!("decompose({m0},{m1},{l0},{l1}) failed: {e}")),
        };
        let expected = oracle_dim_n2(m0, m1, l0, l1);
        (total != expected).then(|| {
            format!("(m,l) = ({m0},{m1},{l0},{l1}): decompose = {total}, oracle = {expected}")
        })
    });
    CriterionOutcome::new(1, "oracle grid n=2", grid.len(), failure)
}

/// Criterion 2: the rank-1 totals match `max(0, m_0 + l_0 + 1)`.
pub fn criterion_02_oracle_grid_n1() -> CriterionOutcome {
    let mut cases = 0;
    let mut failure = None;
    'outer: for m0 in -5..=5 {
        for l0 in -5..=5 {
            cases += 1;
            let class = LineBundleClass::new(vec![m0], vec![l0], 0, 0).unwrap();
            let total = decompose(&class, &ambient(1)).unwrap().total_dim().clone();
            let expected = oracle_dim_n1(m0, l0);
            if total != expected {
                failure = Some(format!(
                    "(m0,l0) = ({m0},{l0}): decompose = {total}, oracle = {expected}"
                ));
                break 'outer;
            }
        }
    }
    CriterionOutcome::new(2, "oracle grid n=1", cases, failure)
}

/// Criterion 3: pullbacks of the hyperplane class have the dimensions of
/// degree-k forms on P^4.
pub fn criterion_03_hyperplane_powers() -> CriterionOutcome {
    let expected = [1u64, 5, 15, 35, 70];
    let mut failure = None;
    for (k, &want) in expected.iter().enumerate() {
        let k = k as i64;
        let class = LineBundleClass::new(vec![k, k], vec![0, 0], 0, 0).unwrap();
        let total = decompose(&class, &ambient(2)).unwrap().total_dim().clone();
        if total != BigUint::from(want) {
            failure = Some(format!("k = {k}: total = {total}, want {want}"));
            break;
        }
    }
    CriterionOutcome::new(
        3,
        "hyperplane pullback spot checks",
        expected.len(),
        failure,
    )
}

/// Criterion 4: Weyl product formula equals Gelfand-Tsetlin counting on
/// the full box `[0,4]^n`, `n <= 4`.
pub fn criterion_04_weyl_gt() -> CriterionOutcome {
    let mut cases = 0;
    let mut failure = None;
    'outer: for n in 1..=4usize {
        let mut c = vec![0i64; n];
        loop {
            if c.windows(2).all(|w| w[0] <= w[1]) {
                cases += 1;
                let w = weyl_dim(&c).unwrap();
                let g = gt_dim(&c).unwrap();
                if w != g {
                    failure = Some(format!("c = {c:?}: weyl = {w}, gt = {g}"));
                    break 'outer;
                }
            }
            let mut k = 0;
            while k < n {
                c[k] += 1;
                if c[k] <= 4 {
                    break;
                }
                c[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    CriterionOutcome::new(4, "Weyl/GT equivalence", cases, failure)
}

/// Criterion 5: closed-orbit weight sets are singletons (or empty) and
/// agree with the closed-orbit weight formula.
pub fn criterion_05_closed_orbit_singleton(radius: i64) -> CriterionOutcome {
    let range: Vec<i64> = (-radius..=radius + 1).collect();
    let mut cases = 0;
    let mut failure = None;
    'outer: for &m0 in &range {
        for &m1 in &range {
            for &l0 in &range {
                for &l1 in &range {
                    let class = LineBundleClass::new(vec![m0, m1], vec![l0, l1], 0, 0).unwrap();
                    for r in 0..=2usize {
                        let s = 2 - r;
                        cases += 1;
                        let spec = OrbitSpec::closed(2, r, s).unwrap();
                        let ws = enumerate_weights(&class, &spec).unwrap();
                        if ws.len() > 1 {
                            failure = Some(format!(
                                "(m,l) = ({m0},{m1},{l0},{l1}), r = {r}: {} weights",
                                ws.len()
                            ));
                            break 'outer;
                        }
                        if let Some(w) = ws.first() {
                            let cow = closed_orbit_weight(&class, r, s).unwrap();
                            if *w != cow {
                                failure = Some(format!(
                                    "(m,l) = ({m0},{m1},{l0},{l1}), r = {r}: element {w:?} != formula {cow:?}"
                                ));
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
    }
    CriterionOutcome::new(5, "closed-orbit singleton property", cases, failure)
}

fn random_class(rng: &mut ChaCha8Rng, n: usize) -> LineBundleClass {
    let m: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
    let l: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
    LineBundleClass::new(m, l, rng.gen_range(-1..=1), rng.gen_range(-1..=1)).unwrap()
}

/// A uniformly chosen nonempty orbit: pick a split `r + s = n`, then
/// subsets `I ⊆ [s, n-1]`, `J ⊆ [r, n-1]`, which always satisfy the
/// nonemptiness constraint.
fn random_valid_spec(rng: &mut ChaCha8Rng, n: usize) -> OrbitSpec {
    let r = rng.gen_range(0..=n);
    let s = n - r;
    let set_i: Vec<usize> = (s..n).filter(|_| rng.gen_bool(0.5)).collect();
    let set_j: Vec<usize> = (r..n).filter(|_| rng.gen_bool(0.5)).collect();
    OrbitSpec::new(n, set_i, set_j).unwrap()
}

/// Criterion 6: restriction accounting — kernel + image exhausts the
/// ambient total, image + extra exhausts the orbit total, and the common
/// set sits inside both weight sets.
pub fn criterion_06_restriction_accounting(samples: usize) -> CriterionOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc6);
    let mut failure = None;
    for k in 0..samples {
        let n = rng.gen_range(1..=4usize);
        let class = random_class(&mut rng, n);
        let spec = random_valid_spec(&mut rng, n);
        let rep = restriction_report(&class, &spec).unwrap();
        let ambient_total = decompose(&class, &ambient(n)).unwrap().total_dim().clone();
        let orbit_total = decompose(&class, &spec).unwrap().total_dim().clone();
        let ok = &rep.kernel_dim + &rep.image_dim == ambient_total
            && &rep.image_dim + &rep.ambient_extra_dim == orbit_total
            && {
                let amb: std::collections::BTreeSet<_> = enumerate_weights(&class, &ambient(n))
                    .unwrap()
                    .into_iter()
                    .collect();
                let orb: std::collections::BTreeSet<_> = enumerate_weights(&class, &spec)
                    .unwrap()
                    .into_iter()
                    .collect();
                rep.common
                    .iter()
                    .all(|w| amb.contains(w) && orb.contains(w))
            };
        if !ok {
            failure = Some(format!("sample {k}: class {class:?}, spec {spec:?}"));
            break;
        }
    }
    CriterionOutcome::new(6, "restriction accounting", samples, failure)
}

/// Criterion 7: inclusion monotonicity — smaller exponents give a weight
/// subset and a smaller (or equal) total.
pub fn criterion_07_inclusion_monotonicity(samples: usize) -> CriterionOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc7);
    let mut failure = None;
    for k in 0..samples {
        let n = rng.gen_range(1..=4usize);
        let sup = random_class(&mut rng, n);
        let spec = random_valid_spec(&mut rng, n);
        let m: Vec<i64> = (0..n)
            .map(|i| {
                let delta = if spec.set_i().contains(&i) {
                    0
                } else {
                    rng.gen_range(0..=2)
                };
                sup.m()[i] - delta
            })
            .collect();
        let l: Vec<i64> = (0..n)
            .map(|i| {
                let delta = if spec.set_j().contains(&i) {
                    0
                } else {
                    rng.gen_range(0..=2)
                };
                sup.l()[i] - delta
            })
            .collect();
        let sub = LineBundleClass::new(m, l, sup.e(), sup.d()).unwrap();
        let rep = inclusion_report(&sub, &sup, &spec).unwrap();
        let sub_total = decompose(&sub, &spec).unwrap().total_dim().clone();
        let sup_total = decompose(&sup, &spec).unwrap().total_dim().clone();
        if !rep.subset_ok || sub_total > sup_total {
            failure = Some(format!(
                "sample {k}: L' {sub:?} vs L {sup:?}, spec {spec:?}"
            ));
            break;
        }
    }
    CriterionOutcome::new(7, "inclusion monotonicity", samples, failure)
}

/// Criterion 8: the toric coefficient rule agrees with the divisor
/// formula for ranks 1..5.
pub fn criterion_08_toric_consistency(samples: usize, corrupt: bool) -> CriterionOutcome {
    let mut failure = None;
    let mut cases = 0;
    for n in 1..=5usize {
        cases += samples;
        if let Err(e) = verify_toric_consistency_seeded(n, samples, 0x4b474c, corrupt) {
            failure = Some(format!("n = {n}: {e}"));
            break;
        }
    }
    CriterionOutcome::new(8, "toric/divisor consistency", cases, failure)
}

/// Criterion 9: for every nondecreasing `a` in `[-2,2]^n`, `n = 2, 3`,
/// the associated bundle and its anti-canonical twist are not ample while
/// every closed orbit keeps nonzero sections.
pub fn criterion_09_non_ampleness() -> CriterionOutcome {
    let mut cases = 0;
    let mut failure = None;
    'outer: for n in 2..=3usize {
        let mut a = vec![-2i64; n];
        loop {
            if a.windows(2).all(|w| w[0] <= w[1]) {
                cases += 1;
                let rep = check_not_ample(&a).unwrap();
                if !(rep.l_not_ample
                    && rep.twisted_not_ample
                    && rep.all_closed_orbit_sections_nonzero)
                {
                    failure = Some(format!("a = {a:?}: {rep:?}"));
                    break 'outer;
                }
            }
            let mut k = 0;
            while k < n {
                a[k] += 1;
                if a[k] <= 2 {
                    break;
                }
                a[k] = -2;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    CriterionOutcome::new(9, "non-ampleness", cases, failure)
}

/// Criterion 10: fan sanity — ray/cone counts, unimodularity and
/// completeness on random samples.
pub fn criterion_10_fan_sanity() -> CriterionOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xca);
    let mut cases = 0;
    let mut failure = None;
    'outer: for n in 1..=4usize {
        let fan = build_fan(n).unwrap();
        let want_rays = 2 * ((1usize << n) - 1);
        let want_cones = (1..=n).product::<usize>() * (n + 1);
        if fan.rays.len() != want_rays || fan.cones.len() != want_cones {
            failure = Some(format!(
                "n = {n}: {} rays / {} cones, want {want_rays} / {want_cones}",
                fan.rays.len(),
                fan.cones.len()
            ));
            break;
        }
        for cone in &fan.cones {
            if fan.cone_determinant(cone).abs() != 1 {
                failure = Some(format!("n = {n}: non-unimodular cone {cone:?}"));
                break 'outer;
            }
        }
        for _ in 0..1000 {
            cases += 1;
            let x: Vec<i64> = (0..n).map(|_| rng.gen_range(-50..=50)).collect();
            let hits = fan
                .cones
                .iter()
                .filter(|c| fan.cone_contains(c, &x))
                .count();
            if hits == 0 {
                failure = Some(format!("n = {n}: uncovered vector {x:?}"));
                break 'outer;
            }
            let distinct_nonzero =
                x.iter().all(|&v| v != 0) && (0..n).all(|i| (0..i).all(|j| x[i] != x[j]));
            if distinct_nonzero && hits != 1 {
                failure = Some(format!("n = {n}: vector {x:?} lies in {hits} cones"));
                break 'outer;
            }
        }
    }
    CriterionOutcome::new(10, "fan sanity", cases, failure)
}

/// Criterion 11: Picard arithmetic — the relation class is principal, the
/// two determinant twists agree, and the rank-2 dualizing class has the
/// expected normal form.
pub fn criterion_11_picard() -> CriterionOutcome {
    let mut failure = None;
    for n in 1..=5usize {
        if !pic_normal_form(&relation_class(n).unwrap())
            .unwrap()
            .is_zero()
        {
            failure = Some(format!("relation class at n = {n} is not principal"));
            break;
        }
    }
    if failure.is_none() {
        for n in 1..=4usize {
            let coeff: Vec<i64> = (0..n).map(|i| (n - i) as i64).collect();
            let zero = vec![0i64; n];
            let det_e = LineBundleClass::new(coeff.clone(), zero.clone(), -1, 0).unwrap();
            let det_f = LineBundleClass::new(zero, coeff, 0, -1).unwrap();
            if !pic_equal(&det_e, &det_f).unwrap() {
                failure = Some(format!("determinant twists differ at n = {n}"));
                break;
            }
        }
    }
    if failure.is_none() {
        let nf = pic_normal_form(&dualizing_class(2).unwrap()).unwrap();
        if nf.z() != [-5, -4] || nf.y() != [3] {
            failure = Some(format!(
                "dualizing class normal form is {:?} | {:?}, want [-5,-4] | [3]",
                nf.z(),
                nf.y()
            ));
        }
    }
    CriterionOutcome::new(11, "Picard relation and dualizing class", 10, failure)
}

/// Runs every criterion with the given configuration.
pub fn run_all(cfg: &SelftestConfig) -> Vec<CriterionOutcome> {
    vec![
        criterion_01_oracle_grid_n2(cfg.grid_radius),
        criterion_02_oracle_grid_n1(),
        criterion_03_hyperplane_powers(),
        criterion_04_weyl_gt(),
        criterion_05_closed_orbit_singleton(cfg.grid_radius),
        criterion_06_restriction_accounting(cfg.random_samples),
        criterion_07_inclusion_monotonicity(cfg.random_samples),
        criterion_08_toric_consistency(cfg.toric_samples, cfg.corrupt_toric),
        criterion_09_non_ampleness(),
        criterion_10_fan_sanity(),
        criterion_11_picard(),
    ]
}
