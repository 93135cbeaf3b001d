//! Executable checkers for the constraints that define the revision rules:
//! the success constraint C1, the within-class ratio families C2F/C3F and
//! C2R/C3R, the probability requirements R1/R2, and the conditional-invariance
//! property of the combination-based proposal.
//!
//! All ratio constraints are checked cross-multiplied, so zero denominators
//! need no side conditions. Quantifiers are enumerated exhaustively up to
//! frames of [`EXHAUSTIVE_LIMIT`] elements and sampled with a fixed seed above
//! that.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alternatives::combine_dempster;
use crate::conditioning::{condition_dempster, condition_unnormalized};
use crate::error::{Error, Result};
use crate::frame::{Partition, SubsetMask};
use crate::mass::{MassFunction, SetFunction};
use crate::weight::Weight;

/// Largest frame on which quantifiers are enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 6;

const SAMPLE_SEED: u64 = 0xbe11ef;
const SAMPLED_CLASSES: usize = 128;
const SAMPLED_MEMBERS: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConstraintId {
    C1,
    C2fC3f,
    C2rC3r,
    R1R2,
    ShaferInvariance,
}

impl std::fmt::Display for ConstraintId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ConstraintId::C1 => "C1",
            ConstraintId::C2fC3f => "C2F/C3F",
            ConstraintId::C2rC3r => "C2R/C3R",
            ConstraintId::R1R2 => "R1/R2",
            ConstraintId::ShaferInvariance => "shafer-invariance",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for ConstraintId {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text.to_ascii_uppercase().as_str() {
            "C1" => Ok(ConstraintId::C1),
            "C2F" | "C3F" | "C2F/C3F" => Ok(ConstraintId::C2fC3f),
            "C2R" | "C3R" | "C2R/C3R" => Ok(ConstraintId::C2rC3r),
            "R1" | "R2" | "R1/R2" => Ok(ConstraintId::R1R2),
            "SHAFER" | "SHAFER-INVARIANCE" => Ok(ConstraintId::ShaferInvariance),
            _ => Err(Error::UnknownRule {
                name: text.to_string(),
            }),
        }
    }
}

/// One violated quantifier instance: the pair of sets involved, the scope
/// (atom or subalgebra element) and both sides of the failed equality.
#[derive(Clone, Debug)]
pub struct Witness<T: Weight> {
    pub x: SubsetMask,
    pub y: Option<SubsetMask>,
    pub scope: Option<SubsetMask>,
    pub lhs: T,
    pub rhs: T,
}

#[derive(Clone, Debug)]
pub struct ConstraintReport<T: Weight> {
    pub id: ConstraintId,
    pub pass: bool,
    pub max_violation: T,
    /// Number of quantifier instances evaluated.
    pub checked: usize,
    /// Violations, worst first, truncated to [`MAX_WITNESSES`].
    pub witnesses: Vec<Witness<T>>,
}

pub const MAX_WITNESSES: usize = 16;

struct ReportBuilder<T: Weight> {
    id: ConstraintId,
    tolerance: T,
    max_violation: T,
    checked: usize,
    witnesses: Vec<(T, Witness<T>)>,
}

impl<T: Weight> ReportBuilder<T> {
    fn new(id: ConstraintId, tolerance: &T) -> Self {
        ReportBuilder {
            id,
            tolerance: tolerance.clone(),
            max_violation: T::zero(),
            checked: 0,
            witnesses: Vec::new(),
        }
    }

    fn record(&mut self, lhs: T, rhs: T, x: SubsetMask, y: Option<SubsetMask>, scope: Option<SubsetMask>) {
        self.checked += 1;
        let residual = (lhs.clone() - rhs.clone()).abs();
        if residual > self.max_violation {
            self.max_violation = residual.clone();
        }
        if residual > self.tolerance {
            self.witnesses.push((residual, Witness { x, y, scope, lhs, rhs }));
        }
    }

    fn finish(mut self) -> ConstraintReport<T> {
        self.witnesses.sort_by(|a, b| {
            b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal)
        });
        self.witnesses.truncate(MAX_WITNESSES);
        ConstraintReport {
            id: self.id,
            pass: self.max_violation <= self.tolerance,
            max_violation: self.max_violation,
            checked: self.checked,
            witnesses: self.witnesses.into_iter().map(|(_, w)| w).collect(),
        }
    }
}

/// C1 on belief values: `bel3(X) = bel2(X)` for every subalgebra element `X`.
///
/// Takes the revised belief as a [`SetFunction`] so the outputs of rival
/// rules, which need not be belief functions, can be checked too.
pub fn check_c1_values<T: Weight>(
    bel3: &SetFunction<T>,
    m2: &MassFunction<T>,
    partition: &Partition,
    tolerance: &T,
) -> Result<ConstraintReport<T>> {
    if bel3.frame() != m2.frame() || bel3.frame().n() != partition.n() {
        return Err(Error::FrameMismatch);
    }
    let mut builder = ReportBuilder::new(ConstraintId::C1, tolerance);
    for element in partition.subalgebra_elements() {
        let lhs = bel3.value(element).clone();
        let rhs = m2.bel(element);
        builder.record(lhs, rhs, element, None, None);
    }
    Ok(builder.finish())
}

/// C1 for a revised mass function.
pub fn check_c1<T: Weight>(
    m3: &MassFunction<T>,
    m2: &MassFunction<T>,
    partition: &Partition,
    tolerance: &T,
) -> Result<ConstraintReport<T>> {
    check_c1_values(&m3.belief(), m2, partition, tolerance)
}

/// The class members to quantify over for a subalgebra element.
fn class_members<R: Rng>(
    partition: &Partition,
    upper: SubsetMask,
    rng: &mut R,
) -> Result<Vec<SubsetMask>> {
    if partition.n() <= EXHAUSTIVE_LIMIT {
        return partition.class_of(upper);
    }
    let atoms: Vec<SubsetMask> = partition
        .atoms()
        .iter()
        .copied()
        .filter(|a| a.is_subset_of(upper))
        .collect();
    let mut members = Vec::with_capacity(SAMPLED_MEMBERS + 1);
    members.push(upper);
    for _ in 0..SAMPLED_MEMBERS {
        let mut member = SubsetMask::EMPTY;
        for atom in &atoms {
            // A nonempty random subset of each atom keeps the approximation.
            let within = atom.card();
            let pick = rng.random_range(1..(1u32 << within));
            let mut part = SubsetMask::EMPTY;
            for (i, element) in atom.elements().enumerate() {
                if pick & (1 << i) != 0 {
                    part = part.union(SubsetMask::singleton(element));
                }
            }
            member = member.union(part);
        }
        members.push(member);
    }
    members.sort();
    members.dedup();
    Ok(members)
}

fn subalgebra_scopes<R: Rng>(partition: &Partition, rng: &mut R) -> Vec<SubsetMask> {
    let mut scopes: Vec<SubsetMask> = partition
        .subalgebra_elements()
        .into_iter()
        .filter(|b| !b.is_empty())
        .collect();
    if partition.n() > EXHAUSTIVE_LIMIT && scopes.len() > SAMPLED_CLASSES {
        for i in 0..SAMPLED_CLASSES {
            let j = rng.random_range(i..scopes.len());
            scopes.swap(i, j);
        }
        scopes.truncate(SAMPLED_CLASSES);
    }
    scopes
}

/// Index-set sum `Σ { masses(Z) : Z ⊆ set, B(Z) = upper }`.
fn restricted_sum<T: Weight>(
    entries: &[(SubsetMask, T)],
    set: SubsetMask,
) -> T {
    let mut sum = T::zero();
    for (focal, mass) in entries {
        if focal.is_subset_of(set) {
            sum += mass.clone();
        }
    }
    sum
}

fn class_ratio_check<T: Weight>(
    id: ConstraintId,
    numerators_for: impl Fn(SubsetMask) -> Result<Vec<(SubsetMask, T)>>,
    m3: &MassFunction<T>,
    partition: &Partition,
    tolerance: &T,
) -> Result<ConstraintReport<T>> {
    let mut builder = ReportBuilder::new(id, tolerance);
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    for scope in subalgebra_scopes(partition, &mut rng) {
        let members = class_members(partition, scope, &mut rng)?;
        let conditioned = numerators_for(scope)?;
        let revised: Vec<(SubsetMask, T)> = m3
            .focal()
            .filter(|(set, _)| !set.is_empty() && partition.upper_approximation(*set) == scope)
            .map(|(set, mass)| (set, mass.clone()))
            .collect();
        let s1: Vec<T> = members
            .iter()
            .map(|x| restricted_sum(&conditioned, *x))
            .collect();
        let s3: Vec<T> = members
            .iter()
            .map(|x| restricted_sum(&revised, *x))
            .collect();
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                let lhs = s3[i].clone() * s1[j].clone();
                let rhs = s3[j].clone() * s1[i].clone();
                builder.record(lhs, rhs, members[i], Some(members[j]), Some(scope));
            }
        }
    }
    Ok(builder.finish())
}

/// C2F/C3F: within every class, the revised masses summed over the class
/// index sets stand in the same ratios as geometrically conditioned `m1`.
pub fn check_c2f_c3f<T: Weight>(
    m1: &MassFunction<T>,
    m3: &MassFunction<T>,
    partition: &Partition,
    tolerance: &T,
) -> Result<ConstraintReport<T>> {
    if m1.frame() != m3.frame() || m1.frame().n() != partition.n() {
        return Err(Error::FrameMismatch);
    }
    class_ratio_check(
        ConstraintId::C2fC3f,
        |scope| {
            let belief = m1.bel(scope);
            if belief.is_negligible() {
                return Ok(Vec::new());
            }
            Ok(m1
                .focal()
                .filter(|(set, _)| {
                    !set.is_empty() && partition.upper_approximation(*set) == scope
                })
                .map(|(set, mass)| (set, mass.clone() / belief.clone()))
                .collect())
        },
        m3,
        partition,
        tolerance,
    )
}

/// C2R/C3R: the same ratio family with Dempster-conditioned `m1`.
pub fn check_c2r_c3r<T: Weight>(
    m1: &MassFunction<T>,
    m3: &MassFunction<T>,
    partition: &Partition,
    tolerance: &T,
) -> Result<ConstraintReport<T>> {
    if m1.frame() != m3.frame() || m1.frame().n() != partition.n() {
        return Err(Error::FrameMismatch);
    }
    class_ratio_check(
        ConstraintId::C2rC3r,
        |scope| {
            let plausibility = m1.pl(scope);
            if plausibility.is_negligible() {
                return Ok(Vec::new());
            }
            let conditioned = condition_unnormalized(m1, scope)?;
            Ok(conditioned
                .focal()
                .filter(|(set, _)| {
                    !set.is_empty() && partition.upper_approximation(*set) == scope
                })
                .map(|(set, mass)| (set, mass.clone() / plausibility.clone()))
                .collect())
        },
        m3,
        partition,
        tolerance,
    )
}

/// R1 and R2 for Bayesian inputs: the revision adopts the update on the
/// subalgebra and preserves within-atom probability ratios, with
/// `P1(Y) = 0` forcing `P3(Y) = 0`.
pub fn check_r1_r2<T: Weight>(
    p1: &MassFunction<T>,
    p3: &MassFunction<T>,
    partition: &Partition,
    atom_update: &[T],
    tolerance: &T,
) -> Result<ConstraintReport<T>> {
    if p1.frame() != p3.frame() || p1.frame().n() != partition.n() {
        return Err(Error::FrameMismatch);
    }
    if !p1.is_bayesian() || !p3.is_bayesian() {
        return Err(Error::NotBayesian);
    }
    if atom_update.len() != partition.atom_count() {
        return Err(Error::InvalidPartition {
            reason: format!(
                "{} atom probabilities given for {} atoms",
                atom_update.len(),
                partition.atom_count()
            ),
        });
    }
    let mut builder = ReportBuilder::new(ConstraintId::R1R2, tolerance);

    // R1: P3 = P2 on the subalgebra.
    for element in partition.subalgebra_elements() {
        let lhs = p3.bel(element);
        let mut rhs = T::zero();
        for (atom, update) in partition.atoms().iter().zip(atom_update) {
            if atom.is_subset_of(element) {
                rhs += update.clone();
            }
        }
        builder.record(lhs, rhs, element, None, None);
    }

    // R2: within-atom cross ratios plus the zero-preservation clause.
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    for atom in partition.atoms() {
        let subsets: Vec<SubsetMask> = if partition.n() <= EXHAUSTIVE_LIMIT {
            atom.subsets().filter(|s| !s.is_empty()).collect()
        } else {
            let mut picked: Vec<SubsetMask> = (0..SAMPLED_MEMBERS)
                .map(|_| {
                    let pick = rng.random_range(1..(1u32 << atom.card()));
                    let mut part = SubsetMask::EMPTY;
                    for (i, element) in atom.elements().enumerate() {
                        if pick & (1 << i) != 0 {
                            part = part.union(SubsetMask::singleton(element));
                        }
                    }
                    part
                })
                .collect();
            picked.push(*atom);
            picked.sort();
            picked.dedup();
            picked
        };
        let prior: Vec<T> = subsets.iter().map(|x| p1.bel(*x)).collect();
        let revised: Vec<T> = subsets.iter().map(|x| p3.bel(*x)).collect();
        for i in 0..subsets.len() {
            if prior[i] <= *tolerance && revised[i].abs() > *tolerance {
                builder.record(revised[i].clone(), T::zero(), subsets[i], None, Some(*atom));
            } else {
                builder.checked += 1;
            }
            for j in (i + 1)..subsets.len() {
                let lhs = revised[i].clone() * prior[j].clone();
                let rhs = revised[j].clone() * prior[i].clone();
                builder.record(lhs, rhs, subsets[i], Some(subsets[j]), Some(*atom));
            }
        }
    }
    Ok(builder.finish())
}

/// The conditional-invariance property of combination-based revision: for
/// every atom `B` and `A ⊆ B`, conditioning the combination `m1 ⊕ m2` on `B`
/// gives the same belief as conditioning `m1` alone. Atoms on which either
/// conditioning is undefined are skipped.
///
/// The identity is only claimed for updates living on the subalgebra, so a
/// focal set of `m2` that is not a union of atoms is an input error rather
/// than a failed check.
pub fn check_shafer_property<T: Weight>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
    partition: &Partition,
    tolerance: &T,
) -> Result<ConstraintReport<T>> {
    crate::jeffrey::validate_revision_inputs(m1, partition, m2)?;
    let combined = combine_dempster(m1, m2, false)?;
    let mut builder = ReportBuilder::new(ConstraintId::ShaferInvariance, tolerance);
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    for atom in partition.atoms() {
        if m1.pl(*atom).is_negligible() || combined.pl(*atom).is_negligible() {
            continue;
        }
        let conditioned_combined = condition_dempster(&combined, *atom)?;
        let conditioned_prior = condition_dempster(m1, *atom)?;
        let subsets: Vec<SubsetMask> = if partition.n() <= EXHAUSTIVE_LIMIT {
            atom.subsets().filter(|s| !s.is_empty()).collect()
        } else {
            (0..SAMPLED_MEMBERS * 2)
                .map(|_| {
                    let pick = rng.random_range(1..(1u32 << atom.card()));
                    let mut part = SubsetMask::EMPTY;
                    for (i, element) in atom.elements().enumerate() {
                        if pick & (1 << i) != 0 {
                            part = part.union(SubsetMask::singleton(element));
                        }
                    }
                    part
                })
                .collect()
        };
        for subset in subsets {
            let lhs = conditioned_combined.bel(subset);
            let rhs = conditioned_prior.bel(subset);
            builder.record(lhs, rhs, subset, None, Some(*atom));
        }
    }
    Ok(builder.finish())
}
