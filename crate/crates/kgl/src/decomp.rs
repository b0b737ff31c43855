//! The decomposition of a section space into simple summands and the
//! bookkeeping reports for restriction and inclusion maps.
//!
//! Both maps are diagonal with respect to the canonical decomposition, so
//! sets of weight pairs (never matrices or bases) capture them faithfully.
//! An empty weight set is a legitimate zero-dimensional outcome, not an
//! error.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::domain::{bigdim, Decomposition, LineBundleClass, OrbitSpec, WeightPair};
use crate::repdim::dim_pair;
use crate::weights::enumerate_weights;
use crate::{Error, Result};

/// Decomposes `H^0` of the restriction of `class` to the orbit closure:
/// every weight pair of `A_IJ(L)` paired with its exact dimension.
pub fn decompose(class: &LineBundleClass, spec: &OrbitSpec) -> Result<Decomposition> {
    let ws = enumerate_weights(class, spec)?;
    let mut entries = Vec::with_capacity(ws.len());
    for w in ws {
        let dim = dim_pair(&w)?;
        entries.push((w, dim));
    }
    Ok(Decomposition::from_entries(entries))
}

fn dim_sum<'a>(ws: impl Iterator<Item = &'a WeightPair>) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for w in ws {
        total += dim_pair(w)?;
    }
    Ok(total)
}

/// How a section space of the ambient variety restricts to an orbit
/// closure: the restriction map is the projection onto the summands
/// common to both weight sets, followed by the inclusion into the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    /// `A(L) ∩ A_IJ(L)`, in canonical order.
    pub common: Vec<WeightPair>,
    /// Total dimension of the summands killed by restriction.
    #[serde(with = "bigdim")]
    pub kernel_dim: BigUint,
    /// Total dimension of the image.
    #[serde(with = "bigdim")]
    pub image_dim: BigUint,
    /// Total dimension of the orbit summands not hit by restriction.
    #[serde(with = "bigdim")]
    pub ambient_extra_dim: BigUint,
}

pub fn restriction_report(class: &LineBundleClass, spec: &OrbitSpec) -> Result<RestrictionReport> {
    let ambient: BTreeSet<WeightPair> = enumerate_weights(class, &OrbitSpec::ambient(class.n())?)?
        .into_iter()
        .collect();
    let orbit: BTreeSet<WeightPair> = enumerate_weights(class, spec)?.into_iter().collect();

    let common: Vec<WeightPair> = ambient.intersection(&orbit).cloned().collect();
    let kernel_dim = dim_sum(ambient.difference(&orbit))?;
    let image_dim = dim_sum(common.iter())?;
    let ambient_extra_dim = dim_sum(orbit.difference(&ambient))?;
    Ok(RestrictionReport {
        common,
        kernel_dim,
        image_dim,
        ambient_extra_dim,
    })
}

/// The effect of multiplying by the canonical boundary sections: for
/// `L' <= L` (componentwise, with equality on `I` and `J`), the section
/// space of `L'` embeds into that of `L` and the weight set grows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionReport {
    /// Whether `A_IJ(L') ⊆ A_IJ(L)` (always true under the hypothesis;
    /// verified, not assumed).
    pub subset_ok: bool,
    /// `A_IJ(L) \ A_IJ(L')`, in canonical order.
    pub new_weights: Vec<WeightPair>,
    /// Total dimension gained.
    #[serde(with = "bigdim")]
    pub dim_increase: BigUint,
}

/// Compares `sub = L'` against `sup = L` over the orbit closure `spec`.
/// Fails with [`Error::InclusionHypothesisViolated`] unless both classes
/// share `(n, e, d)`, `m'_i <= m_i` with equality on `I`, and
/// `l'_i <= l_i` with equality on `J`.
pub fn inclusion_report(
    sub: &LineBundleClass,
    sup: &LineBundleClass,
    spec: &OrbitSpec,
) -> Result<InclusionReport> {
    if sub.n() != sup.n() || sub.n() != spec.n() {
        return Err(Error::LengthMismatch {
            context: format!(
                "ranks disagree: L' has n = {}, L has n = {}, orbit has n = {}",
                sub.n(),
                sup.n(),
                spec.n()
            ),
        });
    }
    if sub.e() != sup.e() || sub.d() != sup.d() {
        return Err(Error::InclusionHypothesisViolated {
            reason: format!(
                "determinant twists differ: (e', d') = ({}, {}) vs (e, d) = ({}, {})",
                sub.e(),
                sub.d(),
                sup.e(),
                sup.d()
            ),
        });
    }
    for i in 0..sub.n() {
        if sub.m()[i] > sup.m()[i] {
            return Err(Error::InclusionHypothesisViolated {
                reason: format!("m'_{i} = {} > m_{i} = {}", sub.m()[i], sup.m()[i]),
            });
        }
        if spec.set_i().contains(&i) && sub.m()[i] != sup.m()[i] {
            return Err(Error::InclusionHypothesisViolated {
                reason: format!(
                    "i = {i} lies in I but m'_{i} = {} != m_{i} = {}",
                    sub.m()[i],
                    sup.m()[i]
                ),
            });
        }
        if sub.l()[i] > sup.l()[i] {
            return Err(Error::InclusionHypothesisViolated {
                reason: format!("l'_{i} = {} > l_{i} = {}", sub.l()[i], sup.l()[i]),
            });
        }
        if spec.set_j().contains(&i) && sub.l()[i] != sup.l()[i] {
            return Err(Error::InclusionHypothesisViolated {
                reason: format!(
                    "i = {i} lies in J but l'_{i} = {} != l_{i} = {}",
                    sub.l()[i],
                    sup.l()[i]
                ),
            });
        }
    }

    let small: BTreeSet<WeightPair> = enumerate_weights(sub, spec)?.into_iter().collect();
    let large: BTreeSet<WeightPair> = enumerate_weights(sup, spec)?.into_iter().collect();
    let subset_ok = small.is_subset(&large);
    let new_weights: Vec<WeightPair> = large.difference(&small).cloned().collect();
    let dim_increase = dim_sum(new_weights.iter())?;
    Ok(InclusionReport {
        subset_ok,
        new_weights,
        dim_increase,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(m: &[i64], l: &[i64]) -> LineBundleClass {
        LineBundleClass::new(m.to_vec(), l.to_vec(), 0, 0).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn decompose_totals() {
        // Degree-2 forms on P^4 pulled back: C(6, 4) = 15.
        let d = decompose(&class(&[2, 2], &[0, 0]), &OrbitSpec::ambient(2).unwrap()).unwrap();
        assert_eq!(d.total_dim(), &big(15));

        let d = decompose(&class(&[0, 0], &[0, 0]), &OrbitSpec::ambient(2).unwrap()).unwrap();
        assert_eq!(d.total_dim(), &big(1));

        let l1 = LineBundleClass::new(vec![2], vec![1], 0, 0).unwrap();
        let d = decompose(&l1, &OrbitSpec::ambient(1).unwrap()).unwrap();
        assert_eq!(d.total_dim(), &big(4));

        let spec = OrbitSpec::new(2, [1], [1]).unwrap();
        let d = decompose(&class(&[1, 1], &[0, 0]), &spec).unwrap();
        assert_eq!(d.entries().len(), 1);
        assert_eq!(d.entries()[0].weight.a(), &[0, 1]);
        assert_eq!(d.entries()[0].dim, big(4));
        assert_eq!(d.total_dim(), &big(4));
    }

    #[test]
    fn decompose_empty_weight_set_is_zero_not_error() {
        let spec = OrbitSpec::closed(2, 1, 1).unwrap();
        let d = decompose(&class(&[0, -1], &[0, 0]), &spec).unwrap();
        assert!(d.is_zero());
        assert!(d.entries().is_empty());
    }

    #[test]
    fn restriction_examples() {
        let spec = OrbitSpec::new(2, [1], [1]).unwrap();
        let r = restriction_report(&class(&[1, 1], &[0, 0]), &spec).unwrap();
        assert_eq!(r.common.len(), 1);
        assert_eq!(r.common[0].a(), &[0, 1]);
        assert_eq!(r.kernel_dim, big(1));
        assert_eq!(r.image_dim, big(4));
        assert_eq!(r.ambient_extra_dim, big(0));

        // Constants restrict isomorphically.
        let r = restriction_report(&class(&[0, 0], &[0, 0]), &spec).unwrap();
        assert_eq!(r.common.len(), 1);
        assert_eq!(r.kernel_dim, big(0));
        assert_eq!(r.image_dim, big(1));
        assert_eq!(r.ambient_extra_dim, big(0));

        // Rank 1 with J = {0}: the equality pins a = 0.
        let l = LineBundleClass::new(vec![1], vec![0], 0, 0).unwrap();
        let spec = OrbitSpec::new(1, [], [0]).unwrap();
        let r = restriction_report(&l, &spec).unwrap();
        assert_eq!(r.common.len(), 1);
        assert_eq!(r.common[0].a(), &[0]);
        assert_eq!(r.kernel_dim, big(1));
        assert_eq!(r.image_dim, big(1));
        assert_eq!(r.ambient_extra_dim, big(0));
    }

    #[test]
    fn restriction_dimension_accounting() {
        // kernel + image = ambient total; image + extra = orbit total.
        let cases = [
            (class(&[1, 2], &[0, 1]), OrbitSpec::new(2, [1], []).unwrap()),
            (class(&[2, 1], &[1, 1]), OrbitSpec::new(2, [], [1]).unwrap()),
            (class(&[1, 1], &[1, 0]), OrbitSpec::closed(2, 2, 0).unwrap()),
        ];
        for (l, spec) in cases {
            let r = restriction_report(&l, &spec).unwrap();
            let ambient = decompose(&l, &OrbitSpec::ambient(2).unwrap()).unwrap();
            let orbit = decompose(&l, &spec).unwrap();
            assert_eq!(&r.kernel_dim + &r.image_dim, ambient.total_dim().clone());
            assert_eq!(
                &r.image_dim + &r.ambient_extra_dim,
                orbit.total_dim().clone()
            );
        }
    }

    #[test]
    fn inclusion_examples() {
        let spec = OrbitSpec::new(2, [1], [1]).unwrap();
        // Both singletons coincide: the equalities pin the weight.
        let rep =
            inclusion_report(&class(&[1, 1], &[0, 0]), &class(&[2, 1], &[0, 0]), &spec).unwrap();
        assert!(rep.subset_ok);
        assert!(rep.new_weights.is_empty());
        assert_eq!(rep.dim_increase, big(0));

        // Identity case.
        let l = class(&[1, 1], &[0, 0]);
        let rep = inclusion_report(&l, &l, &spec).unwrap();
        assert!(rep.subset_ok);
        assert_eq!(rep.dim_increase, big(0));

        // Trivial into (1,1): one new weight of dimension 4.
        let ambient = OrbitSpec::ambient(2).unwrap();
        let rep =
            inclusion_report(&class(&[0, 0], &[0, 0]), &class(&[1, 1], &[0, 0]), &ambient).unwrap();
        assert!(rep.subset_ok);
        assert_eq!(rep.new_weights.len(), 1);
        assert_eq!(rep.new_weights[0].a(), &[0, 1]);
        assert_eq!(rep.dim_increase, big(4));
    }

    #[test]
    fn inclusion_hypothesis_checked() {
        let ambient = OrbitSpec::ambient(2).unwrap();
        // m' > m is rejected.
        assert!(matches!(
            inclusion_report(&class(&[2, 0], &[0, 0]), &class(&[1, 0], &[0, 0]), &ambient),
            Err(Error::InclusionHypothesisViolated { .. })
        ));
        // Equality on I is required.
        let spec = OrbitSpec::new(2, [1], [1]).unwrap();
        assert!(matches!(
            inclusion_report(&class(&[1, 0], &[0, 0]), &class(&[1, 1], &[0, 0]), &spec),
            Err(Error::InclusionHypothesisViolated { .. })
        ));
        // Twists must agree.
        let twisted = LineBundleClass::new(vec![1, 1], vec![0, 0], 1, 0).unwrap();
        assert!(matches!(
            inclusion_report(&class(&[1, 1], &[0, 0]), &twisted, &ambient),
            Err(Error::InclusionHypothesisViolated { .. })
        ));
    }

    #[test]
    fn closed_orbit_total_matches_weight_formula() {
        use crate::repdim::dim_pair;
        use crate::weights::closed_orbit_weight;
        for (m, l) in [([1, 1], [0, 0]), ([0, -1], [0, 0]), ([2, 0], [1, -1])] {
            let class = class(&m, &l);
            for r in 0..=2usize {
                let s = 2 - r;
                let spec = OrbitSpec::closed(2, r, s).unwrap();
                let total = decompose(&class, &spec).unwrap().total_dim().clone();
                let w = closed_orbit_weight(&class, r, s).unwrap();
                let expected = if w.a().windows(2).all(|p| p[0] <= p[1]) {
                    dim_pair(&w).unwrap()
                } else {
                    BigUint::zero()
                };
                assert_eq!(total, expected, "m = {m:?}, l = {l:?}, r = {r}");
            }
        }
    }
}
