//! Property-based invariants: enumeration soundness against a box scan,
//! covariance/monotonicity of the weight sets, linearity of the divisor
//! formula, Picard-relation invariance, and canonical JSON round-trips.

use proptest::prelude::*;
use std::collections::BTreeSet;

use kgl::divisors::{divisor_of_monomial, pic_equal, relation_class};
use kgl::repdim::weyl_dim;
use kgl::weights::{enumerate_weights, satisfies_conditions};
use kgl::{validate_orbit, LineBundleClass, OrbitSpec, WeightPair};

fn exponents(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, n)
}

/// Subsets of [0, n-1] encoded as bitmasks.
fn subset(n: usize) -> impl Strategy<Value = Vec<usize>> {
    (0u32..(1 << n)).prop_map(move |mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
}

fn class_and_orbit(n: usize) -> impl Strategy<Value = (LineBundleClass, OrbitSpec)> {
    (
        exponents(n),
        exponents(n),
        -2i64..=2,
        -2i64..=2,
        subset(n),
        subset(n),
    )
        .prop_filter_map("orbit must be nonempty", move |(m, l, e, d, si, sj)| {
            let class = LineBundleClass::new(m, l, e, d).ok()?;
            let spec = OrbitSpec::new(n, si, sj).ok()?;
            validate_orbit(&spec).ok()?;
            Some((class, spec))
        })
}

/// Independent of the enumerator: scan the full box `[e-B, e+B]^n`,
/// `B = 1 + Σ max(|m_i|, |l_i|)`, against the membership test.
fn box_scan(class: &LineBundleClass, spec: &OrbitSpec) -> Vec<WeightPair> {
    let n = class.n();
    let bound: i64 = 1
        + (0..n)
            .map(|i| class.m()[i].abs().max(class.l()[i].abs()))
            .sum::<i64>();
    let (e, d) = (class.e(), class.d());
    let mut out = Vec::new();
    let mut a = vec![e - bound; n];
    loop {
        if a.windows(2).all(|w| w[0] <= w[1]) {
            let b: Vec<i64> = a.iter().rev().map(|&ai| d - (ai - e)).collect();
            let w = WeightPair::new(a.clone(), b).unwrap();
            if satisfies_conditions(class, spec, &w).unwrap() {
                out.push(w);
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            a[k - 1] += 1;
            if a[k - 1] <= e + bound {
                break;
            }
            a[k - 1] = e - bound;
            k -= 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_matches_box_scan((class, spec) in (1usize..=3).prop_flat_map(class_and_orbit)) {
        let fast = enumerate_weights(&class, &spec).unwrap();
        let slow = box_scan(&class, &spec);
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct((class, spec) in (1usize..=4).prop_flat_map(class_and_orbit)) {
        let ws = enumerate_weights(&class, &spec).unwrap();
        prop_assert!(ws.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn twist_covariance((class, spec) in (1usize..=3).prop_flat_map(class_and_orbit), c in -3i64..=3) {
        let shifted = LineBundleClass::new(
            class.m().to_vec(), class.l().to_vec(), class.e() + c, class.d(),
        ).unwrap();
        let base = enumerate_weights(&class, &spec).unwrap();
        let moved = enumerate_weights(&shifted, &spec).unwrap();
        prop_assert_eq!(base.len(), moved.len());
        for (u, v) in base.iter().zip(&moved) {
            let bumped: Vec<i64> = u.a().iter().map(|x| x + c).collect();
            prop_assert_eq!(v.a(), bumped.as_slice());
            prop_assert_eq!(v.b(), u.b());
        }
        // Dually, shifting d moves every b and leaves a fixed.
        let shifted = LineBundleClass::new(
            class.m().to_vec(), class.l().to_vec(), class.e(), class.d() + c,
        ).unwrap();
        let moved = enumerate_weights(&shifted, &spec).unwrap();
        prop_assert_eq!(base.len(), moved.len());
        for (u, v) in base.iter().zip(&moved) {
            let bumped: Vec<i64> = u.b().iter().map(|x| x + c).collect();
            prop_assert_eq!(v.b(), bumped.as_slice());
            prop_assert_eq!(v.a(), u.a());
        }
    }

    #[test]
    fn monotone_inclusion((class, spec) in (1usize..=3).prop_flat_map(class_and_orbit),
                          deltas in prop::collection::vec(0i64..=2, 3)) {
        let n = class.n();
        let m: Vec<i64> = (0..n)
            .map(|i| class.m()[i] - if spec.set_i().contains(&i) { 0 } else { deltas[i % deltas.len()] })
            .collect();
        let l: Vec<i64> = (0..n)
            .map(|i| class.l()[i] - if spec.set_j().contains(&i) { 0 } else { deltas[(i + 1) % deltas.len()] })
            .collect();
        let smaller = LineBundleClass::new(m, l, class.e(), class.d()).unwrap();
        let small: BTreeSet<WeightPair> = enumerate_weights(&smaller, &spec).unwrap().into_iter().collect();
        let large: BTreeSet<WeightPair> = enumerate_weights(&class, &spec).unwrap().into_iter().collect();
        prop_assert!(small.is_subset(&large));
    }

    #[test]
    fn weyl_shift_and_reversal(c in prop::collection::vec(-4i64..=4, 1..=5), k in -5i64..=5) {
        let mut sorted = c;
        sorted.sort_unstable();
        let dim = weyl_dim(&sorted).unwrap();
        let shifted: Vec<i64> = sorted.iter().map(|v| v + k).collect();
        prop_assert_eq!(weyl_dim(&shifted).unwrap(), dim.clone());
        let dual: Vec<i64> = sorted.iter().rev().map(|v| -v).collect();
        prop_assert_eq!(weyl_dim(&dual).unwrap(), dim);
    }

    #[test]
    fn divisor_formula_is_linear(a in prop::collection::vec(-6i64..=6, 1..=5),
                                 b in prop::collection::vec(-6i64..=6, 1..=5)) {
        prop_assume!(a.len() == b.len());
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let lhs = divisor_of_monomial(&sum).unwrap();
        let rhs = divisor_of_monomial(&a).unwrap().add(&divisor_of_monomial(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pic_equal_mod_relation(m in prop::collection::vec(-4i64..=4, 2..=5),
                              l_shift in prop::collection::vec(-4i64..=4, 2..=5),
                              k in -3i64..=3) {
        prop_assume!(m.len() == l_shift.len());
        let n = m.len();
        let class = LineBundleClass::new(m, l_shift, 0, 0).unwrap();
        let rel = relation_class(n).unwrap();
        let shifted = LineBundleClass::new(
            class.m().iter().zip(rel.m()).map(|(a, b)| a + k * b).collect(),
            class.l().iter().zip(rel.l()).map(|(a, b)| a + k * b).collect(),
            0, 0,
        ).unwrap();
        prop_assert!(pic_equal(&class, &shifted).unwrap());
    }

    #[test]
    fn canonical_json_roundtrip((class, spec) in (1usize..=4).prop_flat_map(class_and_orbit)) {
        let json = serde_json::to_string(&class).unwrap();
        let back: LineBundleClass = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, class);
        let json = serde_json::to_string(&spec).unwrap();
        let back: OrbitSpec = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, spec);
    }
}
