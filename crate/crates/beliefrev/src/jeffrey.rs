//! Jeffrey's probability rule and its two belief-function generalizations.
//!
//! Both rules revise `m1` by an update `m2` given on the subalgebra generated
//! by a partition. Each update mass `m2(B)` is spread over the class of sets
//! whose upper approximation is `B`, proportionally to `m1` (Jeffrey-geometric)
//! or to Dempster-conditioned `m1` (Jeffrey-Dempster):
//!
//! ```text
//! geometric:  m3(A) = m1(A)      / Σ_{X: B(X)=B(A)} m1(X)      · m2(B(A))
//! Dempster:   m3(A) = m1(A|B(A)) / Σ_{X: B(X)=B(A)} m1(X|B(A)) · m2(B(A))
//! ```
//!
//! When a class sum is zero the closed forms have no mass to shape. The
//! strict policy zeroes the whole class, so `m2(B)` leaks and the output
//! is flagged subnormal; the least-commitment policy parks the orphaned
//! `m2(B)` on `B` itself, which keeps the success constraint intact.

use std::collections::BTreeMap;

use crate::conditioning::condition_unnormalized;
use crate::error::{Error, Result};
use crate::frame::{Partition, SubsetMask};
use crate::mass::MassFunction;
use crate::weight::Weight;

/// What to do with an update mass whose target class carries no prior mass.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FallbackPolicy {
    /// The literal closed form: the class stays at zero and the update mass
    /// is dropped. Output flagged subnormal when that happens.
    Strict,
    /// The orphaned update mass is reassigned to the subalgebra element
    /// itself, the least-committed set that carries it.
    LeastCommitment,
}

impl std::str::FromStr for FallbackPolicy {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "strict" => Ok(FallbackPolicy::Strict),
            "least-commitment" => Ok(FallbackPolicy::LeastCommitment),
            other => Err(Error::UnknownRule {
                name: other.to_string(),
            }),
        }
    }
}

/// Why an update mass could not be distributed over its class.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrphanReason {
    /// No focal set of the (conditioned) prior has this upper approximation.
    NoFocalInClass,
    /// The prior gives the subalgebra element zero plausibility, so the
    /// Dempster conditional is undefined on it.
    ZeroPlausibility,
}

/// An update mass `m2(B)` hit by the zero-denominator fallback.
#[derive(Clone, Debug)]
pub struct OrphanedMass<T: Weight> {
    pub set: SubsetMask,
    pub mass: T,
    pub reason: OrphanReason,
    /// True under least commitment (mass kept on `set`), false under the
    /// strict policy (mass dropped).
    pub reassigned: bool,
}

/// Output of a Jeffrey revision: the revised mass function plus a report of
/// any update masses that met the fallback.
#[derive(Clone, Debug)]
pub struct Revision<T: Weight> {
    pub mass: MassFunction<T>,
    pub orphaned: Vec<OrphanedMass<T>>,
}

impl<T: Weight> Revision<T> {
    pub fn into_mass(self) -> MassFunction<T> {
        self.mass
    }
}

pub(crate) fn validate_revision_inputs<T: Weight>(
    m1: &MassFunction<T>,
    partition: &Partition,
    m2: &MassFunction<T>,
) -> Result<()> {
    if m1.frame() != m2.frame() || m1.frame().n() != partition.n() {
        return Err(Error::FrameMismatch);
    }
    if !m1.is_normal() || !m2.is_normal() {
        return Err(Error::SubnormalInput);
    }
    for (set, _) in m2.focal() {
        if !set.is_empty() && !partition.is_subalgebra_element(set) {
            return Err(Error::NotOnSubalgebra {
                set: m2.frame().render_mask(set),
            });
        }
    }
    Ok(())
}

/// Numerator masses grouped by the upper approximation of their focal set.
fn group_by_upper<T: Weight>(
    m: &MassFunction<T>,
    partition: &Partition,
) -> BTreeMap<SubsetMask, Vec<(SubsetMask, T)>> {
    let mut groups: BTreeMap<SubsetMask, Vec<(SubsetMask, T)>> = BTreeMap::new();
    for (set, mass) in m.focal() {
        if set.is_empty() {
            continue;
        }
        groups
            .entry(partition.upper_approximation(set))
            .or_default()
            .push((set, mass.clone()));
    }
    groups
}

fn distribute<T: Weight>(
    m2: &MassFunction<T>,
    numerators: impl Fn(SubsetMask) -> Result<Vec<(SubsetMask, T)>>,
    orphan_reason: impl Fn(SubsetMask) -> OrphanReason,
    policy: FallbackPolicy,
    frame: &crate::frame::Frame,
) -> Result<Revision<T>> {
    let mut entries: BTreeMap<SubsetMask, T> = BTreeMap::new();
    let mut orphaned = Vec::new();
    for (b, update) in m2.focal() {
        if b.is_empty() {
            // Conflict mass belongs to no class and passes through.
            *entries.entry(SubsetMask::EMPTY).or_insert_with(T::zero) += update.clone();
            continue;
        }
        let class_masses = numerators(b)?;
        let mut class_sum = T::zero();
        for (_, mass) in &class_masses {
            class_sum += mass.clone();
        }
        if class_sum.is_negligible() {
            let reassigned = policy == FallbackPolicy::LeastCommitment;
            if reassigned {
                *entries.entry(b).or_insert_with(T::zero) += update.clone();
            }
            orphaned.push(OrphanedMass {
                set: b,
                mass: update.clone(),
                reason: orphan_reason(b),
                reassigned,
            });
            continue;
        }
        for (set, mass) in class_masses {
            *entries.entry(set).or_insert_with(T::zero) +=
                mass / class_sum.clone() * update.clone();
        }
    }
    let mass = MassFunction::subnormal(frame.clone(), entries)?;
    Ok(Revision { mass, orphaned })
}

/// The Jeffrey-geometric rule of conditioning.
///
/// With `m2` degenerate on an atom `B` this reduces to the geometric rule of
/// conditioning on `B`.
pub fn jeffrey_geometric<T: Weight>(
    m1: &MassFunction<T>,
    partition: &Partition,
    m2: &MassFunction<T>,
    policy: FallbackPolicy,
) -> Result<Revision<T>> {
    validate_revision_inputs(m1, partition, m2)?;
    let groups = group_by_upper(m1, partition);
    distribute(
        m2,
        |b| Ok(groups.get(&b).cloned().unwrap_or_default()),
        |_| OrphanReason::NoFocalInClass,
        policy,
        m1.frame(),
    )
}

/// The Jeffrey-Dempster rule of conditioning.
///
/// Numerators are the data-conditioned masses `m1(· ∩ B)`; the ratio is
/// unchanged by the `pl1(B)` normalizer, so the unnormalized conditioning is
/// used and a zero-plausibility `B` falls into the zero-class-sum fallback.
pub fn jeffrey_dempster<T: Weight>(
    m1: &MassFunction<T>,
    partition: &Partition,
    m2: &MassFunction<T>,
    policy: FallbackPolicy,
) -> Result<Revision<T>> {
    validate_revision_inputs(m1, partition, m2)?;
    distribute(
        m2,
        |b| {
            let conditioned = condition_unnormalized(m1, b)?;
            let mut members = Vec::new();
            for (set, mass) in conditioned.focal() {
                if !set.is_empty() && partition.upper_approximation(set) == b {
                    members.push((set, mass.clone()));
                }
            }
            Ok(members)
        },
        |b| {
            if m1.pl(b).is_negligible() {
                OrphanReason::ZeroPlausibility
            } else {
                OrphanReason::NoFocalInClass
            }
        },
        policy,
        m1.frame(),
    )
}

/// Jeffrey's rule for probabilities: `P3(A) = Σ_B P1(A|B) · P2(B)`, with
/// `P1(A|B) = 0` when `P1(B) = 0` (such update weight is dropped and the
/// output flagged subnormal, mirroring the strict fallback).
pub fn jeffrey_probability<T: Weight>(
    p1: &MassFunction<T>,
    partition: &Partition,
    p2: &[T],
) -> Result<MassFunction<T>> {
    if p1.frame().n() != partition.n() {
        return Err(Error::FrameMismatch);
    }
    if !p1.is_bayesian() || !p1.is_normal() {
        return Err(Error::NotBayesian);
    }
    if p2.len() != partition.atom_count() {
        return Err(Error::InvalidPartition {
            reason: format!(
                "{} atom probabilities given for {} atoms",
                p2.len(),
                partition.atom_count()
            ),
        });
    }
    let mut total = T::zero();
    for (atom, probability) in partition.atoms().iter().zip(p2) {
        if *probability < T::zero() {
            return Err(Error::NegativeMass {
                set: p1.frame().render_mask(*atom),
                value: probability.render(),
            });
        }
        total += probability.clone();
    }
    if !crate::weight::within_tol(&total, &num::traits::One::one(), &T::default_tolerance()) {
        return Err(Error::ProbabilitySum {
            total: total.render(),
        });
    }

    let mut entries: BTreeMap<SubsetMask, T> = BTreeMap::new();
    for (atom, update) in partition.atoms().iter().zip(p2) {
        if update.is_zero() {
            continue;
        }
        let prior_atom = p1.bel(*atom);
        if prior_atom.is_negligible() {
            continue;
        }
        for element in atom.elements() {
            let point = SubsetMask::singleton(element);
            let prior = p1.mass(point);
            if prior.is_zero() {
                continue;
            }
            *entries.entry(point).or_insert_with(T::zero) +=
                prior / prior_atom.clone() * update.clone();
        }
    }
    MassFunction::subnormal(p1.frame().clone(), entries)
}

/// Class sums of `m` on the subalgebra: `m_proj(B) = Σ { m(A) : B(A) = B }`,
/// with `m(∅)` carried over unchanged.
pub fn project_to_subalgebra<T: Weight>(
    m: &MassFunction<T>,
    partition: &Partition,
) -> Result<MassFunction<T>> {
    if m.frame().n() != partition.n() {
        return Err(Error::FrameMismatch);
    }
    let mut entries: BTreeMap<SubsetMask, T> = BTreeMap::new();
    for (set, mass) in m.focal() {
        let target = if set.is_empty() {
            SubsetMask::EMPTY
        } else {
            partition.upper_approximation(set)
        };
        *entries.entry(target).or_insert_with(T::zero) += mass.clone();
    }
    MassFunction::subnormal(m.frame().clone(), entries)
}

/// Reads the per-atom probabilities out of a Bayesian-on-the-subalgebra mass
/// function, i.e. one whose focal sets are atoms of the partition.
pub fn atom_probabilities<T: Weight>(
    m: &MassFunction<T>,
    partition: &Partition,
) -> Result<Vec<T>> {
    let mut probabilities = vec![T::zero(); partition.atom_count()];
    for (set, mass) in m.focal() {
        match partition.atoms().iter().position(|atom| *atom == set) {
            Some(i) => probabilities[i] = mass.clone(),
            None => return Err(Error::NotBayesian),
        }
    }
    Ok(probabilities)
}
