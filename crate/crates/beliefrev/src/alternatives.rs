//! Rival generalizations of Jeffrey's rule: Dempster's rule of combination
//! and the revision proposals built on it, plus a seeded search for success-
//! constraint violations.
//!
//! The Dubois-Prade and Ichihashi-Tanaka rules are returned as plain set
//! functions with a companion Möbius report, because nothing guarantees their
//! outputs are belief functions. The `p1(B)` normalizer in those formulas is
//! read as the plausibility `pl1(B)`, the Dempster-conditioning normalizer;
//! with a degenerate update this makes variant 1 collapse to Dempster
//! conditioning as intended.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::conditioning::condition_dempster;
use crate::constraints::{check_c1_values, ConstraintReport};
use crate::error::{Error, Result};
use crate::frame::{Frame, Partition, SubsetMask};
use crate::generate;
use crate::jeffrey::{
    jeffrey_dempster, jeffrey_geometric, validate_revision_inputs, FallbackPolicy,
};
use crate::mass::{MassFunction, SetFunction};
use crate::weight::Weight;

/// Dempster's rule of combination: `m12(A) = Σ_{X∩Y=A} m1(X)·m2(Y)`.
///
/// The normalized variant divides by `1 - m12(∅)` and zeroes the empty set,
/// failing on total conflict.
pub fn combine_dempster<T: Weight>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
    normalized: bool,
) -> Result<MassFunction<T>> {
    if m1.frame() != m2.frame() {
        return Err(Error::FrameMismatch);
    }
    if !m1.is_normal() || !m2.is_normal() {
        return Err(Error::SubnormalInput);
    }
    let mut products: BTreeMap<SubsetMask, T> = BTreeMap::new();
    for (x, mass_x) in m1.focal() {
        for (y, mass_y) in m2.focal() {
            *products.entry(x.intersect(y)).or_insert_with(T::zero) +=
                mass_x.clone() * mass_y.clone();
        }
    }
    if normalized {
        let conflict = products
            .remove(&SubsetMask::EMPTY)
            .unwrap_or_else(T::zero);
        let scale = T::one() - conflict;
        if scale.is_negligible() {
            return Err(Error::TotalConflict);
        }
        for mass in products.values_mut() {
            *mass = mass.clone() / scale.clone();
        }
    }
    MassFunction::subnormal(m1.frame().clone(), products)
}

/// Shafer's proposal: revise by combining with the update, `m1 ⊕ m2`.
///
/// Satisfies the conditional-invariance property checked by
/// [`crate::constraints::check_shafer_property`] but fails the success
/// constraint C1 in general.
pub fn shafer_revision<T: Weight>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
) -> Result<MassFunction<T>> {
    combine_dempster(m1, m2, true)
}

/// The Dubois-Prade revision: `bel3(A) = Σ_B bel1(A|B) / pl1(B) · m2(B)`.
///
/// Follows the displayed formula literally, so the Dempster conditional is
/// divided by `pl1(B)` a second time; the variant-1 Ichihashi-Tanaka rule is
/// the same sum without the extra division.
pub fn dubois_prade_revision<T: Weight>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
    partition: &Partition,
) -> Result<SetFunction<T>> {
    validate_revision_inputs(m1, partition, m2)?;
    let mut values = SetFunction::zeroes(m1.frame().clone());
    for (b, update) in m2.focal() {
        let plausibility = m1.pl(b);
        if b.is_empty() || plausibility.is_negligible() {
            return Err(Error::ZeroPlausibility {
                event: m1.frame().render_mask(b),
            });
        }
        let conditional = condition_dempster(m1, b)?.belief();
        for (set, value) in conditional.iter() {
            *values.value_mut(set) +=
                value.clone() / plausibility.clone() * update.clone();
        }
    }
    Ok(values)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IchihashiVariant {
    One,
    Two,
    Three,
}

impl IchihashiVariant {
    pub fn number(self) -> u8 {
        match self {
            IchihashiVariant::One => 1,
            IchihashiVariant::Two => 2,
            IchihashiVariant::Three => 3,
        }
    }
}

/// The three Ichihashi-Tanaka revisions, `bel3(A) = Σ_B f(A,B) · m2(B)` with
///
/// ```text
/// f1(A,B) = (bel1(A ∪ ¬B) - bel1(¬B)) / pl1(B)
/// f2(A,B) = bel1(A ∩ B) / bel1(B)
/// f3(A,B) = (bel1(A) - bel1(A ∩ ¬B)) / pl1(B)
/// ```
pub fn ichihashi_tanaka<T: Weight>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
    partition: &Partition,
    variant: IchihashiVariant,
) -> Result<SetFunction<T>> {
    validate_revision_inputs(m1, partition, m2)?;
    let n = m1.frame().n();
    let belief = m1.belief();
    let mut values = SetFunction::zeroes(m1.frame().clone());
    for (b, update) in m2.focal() {
        let not_b = b.complement(n);
        let denominator = match variant {
            IchihashiVariant::Two => m1.bel(b),
            _ => m1.pl(b),
        };
        if denominator.is_negligible() {
            return Err(Error::ZeroDenominator {
                variant: variant.number(),
                set: m1.frame().render_mask(b),
                denominator: match variant {
                    IchihashiVariant::Two => "bel1",
                    _ => "pl1",
                },
            });
        }
        for set in (0..m1.frame().lattice_size()).map(|i| SubsetMask::from_bits(i as u32)) {
            let factor = match variant {
                IchihashiVariant::One => {
                    belief.value(set.union(not_b)).clone() - belief.value(not_b).clone()
                }
                IchihashiVariant::Two => belief.value(set.intersect(b)).clone(),
                IchihashiVariant::Three => {
                    belief.value(set).clone() - belief.value(set.intersect(not_b)).clone()
                }
            };
            *values.value_mut(set) += factor / denominator.clone() * update.clone();
        }
    }
    Ok(values)
}

/// The revision rules that can be compared against the success constraint.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RuleKind {
    JeffreyGeometric,
    JeffreyDempster,
    Shafer,
    DuboisPrade,
    Ichihashi1,
    Ichihashi2,
    Ichihashi3,
}

impl RuleKind {
    pub const ALL: [RuleKind; 7] = [
        RuleKind::JeffreyGeometric,
        RuleKind::JeffreyDempster,
        RuleKind::Shafer,
        RuleKind::DuboisPrade,
        RuleKind::Ichihashi1,
        RuleKind::Ichihashi2,
        RuleKind::Ichihashi3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleKind::JeffreyGeometric => "jeffrey-geometric",
            RuleKind::JeffreyDempster => "jeffrey-dempster",
            RuleKind::Shafer => "shafer",
            RuleKind::DuboisPrade => "dubois-prade",
            RuleKind::Ichihashi1 => "it1",
            RuleKind::Ichihashi2 => "it2",
            RuleKind::Ichihashi3 => "it3",
        }
    }
}

impl std::fmt::Display for RuleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for RuleKind {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        RuleKind::ALL
            .iter()
            .copied()
            .find(|rule| rule.name() == text)
            .ok_or_else(|| Error::UnknownRule {
                name: text.to_string(),
            })
    }
}

/// Runs a rule and returns the revised belief function.
///
/// The Jeffrey rules run under least commitment here so their success
/// constraint holds unconditionally; rival rules return their raw values.
pub fn rule_belief<T: Weight>(
    rule: RuleKind,
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
    partition: &Partition,
) -> Result<SetFunction<T>> {
    match rule {
        RuleKind::JeffreyGeometric => {
            Ok(jeffrey_geometric(m1, partition, m2, FallbackPolicy::LeastCommitment)?
                .mass
                .belief())
        }
        RuleKind::JeffreyDempster => {
            Ok(jeffrey_dempster(m1, partition, m2, FallbackPolicy::LeastCommitment)?
                .mass
                .belief())
        }
        RuleKind::Shafer => Ok(shafer_revision(m1, m2)?.belief()),
        RuleKind::DuboisPrade => dubois_prade_revision(m1, m2, partition),
        RuleKind::Ichihashi1 => ichihashi_tanaka(m1, m2, partition, IchihashiVariant::One),
        RuleKind::Ichihashi2 => ichihashi_tanaka(m1, m2, partition, IchihashiVariant::Two),
        RuleKind::Ichihashi3 => ichihashi_tanaka(m1, m2, partition, IchihashiVariant::Three),
    }
}

/// A random instance on which a rule violated C1.
#[derive(Clone, Debug)]
pub struct C1Violation<T: Weight> {
    pub trial: u64,
    pub frame: Frame,
    pub partition: Partition,
    pub m1: MassFunction<T>,
    pub m2: MassFunction<T>,
    pub report: ConstraintReport<T>,
}

/// Searches seeded random instances for a C1 violation of the named rule.
///
/// Trials cycle deterministically through every partition of the frame while
/// the masses stay seeded, so small frames are covered structurally.
/// Instances on which the rule's preconditions fail are skipped but still
/// consume budget. Returns the first violation, or `None` when the budget is
/// exhausted.
pub fn find_c1_violation<T: Weight>(
    rule: RuleKind,
    seed: u64,
    trials: u64,
    n: usize,
) -> Result<Option<C1Violation<T>>> {
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let frame = Frame::of_size(n)?;
    let partitions = generate::all_partitions(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tolerance = T::default_tolerance();
    for trial in 0..trials {
        let partition = &partitions[(trial % partitions.len() as u64) as usize];
        let m1: MassFunction<T> = generate::random_mass(&mut rng, &frame, 3, false);
        let m2: MassFunction<T> = generate::random_subalgebra_mass(&mut rng, &frame, partition, 2);
        let bel3 = match rule_belief(rule, &m1, &m2, partition) {
            Ok(values) => values,
            Err(_) => continue,
        };
        let report = check_c1_values(&bel3, &m2, partition, &tolerance)?;
        if !report.pass {
            return Ok(Some(C1Violation {
                trial,
                frame: frame.clone(),
                partition: partition.clone(),
                m1,
                m2,
                report,
            }));
        }
    }
    Ok(None)
}
