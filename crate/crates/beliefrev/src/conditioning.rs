//! Single-event conditioning rules.
//!
//! Data-conditioning transfers each mass `m(X)` to `X ∩ B` (unnormalized
//! Dempster rule); its normalized form divides by `pl(B)`. Source-conditioning
//! keeps the masses of subsets of `B` and rescales by `bel(B)` (geometric
//! rule). On Bayesian inputs both normalized rules reduce to Bayes' rule.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::frame::SubsetMask;
use crate::mass::MassFunction;
use crate::weight::Weight;

/// Unnormalized Dempster conditioning: `m*(A) = Σ { m(X) : X ∩ B = A }`.
///
/// Mass may accumulate on the empty set; plausibility is unchanged at every
/// `L ⊆ B`.
pub fn condition_unnormalized<T: Weight>(
    m: &MassFunction<T>,
    event: SubsetMask,
) -> Result<MassFunction<T>> {
    m.frame().check_mask(event)?;
    if event.is_empty() {
        return Err(Error::EmptySet {
            context: "conditioning",
        });
    }
    let mut transferred: BTreeMap<SubsetMask, T> = BTreeMap::new();
    for (set, mass) in m.focal() {
        let entry = transferred
            .entry(set.intersect(event))
            .or_insert_with(T::zero);
        *entry += mass.clone();
    }
    MassFunction::subnormal(m.frame().clone(), transferred)
}

/// Dempster's rule of conditioning: data-conditioning followed by
/// normalization. Fails when `pl(B) = 0`.
pub fn condition_dempster<T: Weight>(
    m: &MassFunction<T>,
    event: SubsetMask,
) -> Result<MassFunction<T>> {
    let conditioned = condition_unnormalized(m, event)?;
    if m.pl(event).is_negligible() {
        return Err(Error::ZeroPlausibility {
            event: m.frame().render_mask(event),
        });
    }
    conditioned.normalize()
}

/// Geometric rule of conditioning: `m(A||B) = m(A) / bel(B)` for nonempty
/// `A ⊆ B`, zero elsewhere. Any mass on `∅` is discarded, matching the
/// bel-ratio definition which never references it. Fails when `bel(B) = 0`.
pub fn condition_geometric<T: Weight>(
    m: &MassFunction<T>,
    event: SubsetMask,
) -> Result<MassFunction<T>> {
    m.frame().check_mask(event)?;
    if event.is_empty() {
        return Err(Error::EmptySet {
            context: "conditioning",
        });
    }
    let belief_of_event = m.bel(event);
    if belief_of_event.is_negligible() {
        return Err(Error::ZeroBelief {
            event: m.frame().render_mask(event),
        });
    }
    let entries: Vec<(SubsetMask, T)> = m
        .focal()
        .filter(|(set, _)| !set.is_empty() && set.is_subset_of(event))
        .map(|(set, mass)| (set, mass.clone() / belief_of_event.clone()))
        .collect();
    MassFunction::new(m.frame().clone(), entries)
}
