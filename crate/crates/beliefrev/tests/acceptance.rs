//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Every suite runs at least 1000 seeded random instances at desk scale
//! (frames of up to 6 elements). Exact-arithmetic criteria use rationals,
//! so equality assertions carry no tolerance at all; the solver-backed
//! characterization criterion runs in floating arithmetic at 1e-9.

mod common;

use common::{
    brute_bel, brute_pl, class_sums_positive, class_sums_positive_exact,
    solve_revision_constraints, supported_prior, Route,
};

use beliefrev::alternatives::{find_c1_violation, RuleKind};
use beliefrev::conditioning::{
    condition_dempster, condition_geometric, condition_unnormalized,
};
use beliefrev::constraints::{check_r1_r2, check_shafer_property};
use beliefrev::frame::Partition;
use beliefrev::generate::{
    all_partitions, random_atom_probabilities, random_bayesian, random_mass, random_model,
    random_partition, random_subalgebra_mass,
};
use beliefrev::jeffrey::{
    atom_probabilities, jeffrey_dempster, jeffrey_geometric, jeffrey_probability,
    project_to_subalgebra, FallbackPolicy,
};
use beliefrev::mass::mass_from_belief;
use beliefrev::{Frame, MassFunction, SubsetMask, Weight};

use num::rational::BigRational;
use num::traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = BigRational;

fn q(numer: i64, denom: i64) -> Q {
    Q::from_ratio(numer, denom)
}

fn report(number: u32, description: &str, pass: bool) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("[acceptance] criterion {number}: {verdict} - {description}");
    assert!(pass, "criterion {number} failed: {description}");
}

const INSTANCES: usize = 1000;

struct InstanceStream {
    rng: ChaCha8Rng,
}

impl InstanceStream {
    fn new(seed: u64) -> Self {
        InstanceStream {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A random (frame, partition, m1, m2) with m1 supported on the class of
    /// every focal element of m2 (positive class sums for both routes).
    fn supported<T: beliefrev::Weight>(
        &mut self,
        max_n: usize,
    ) -> (Frame, Partition, MassFunction<T>, MassFunction<T>) {
        let n = self.rng.random_range(2..=max_n);
        let frame = Frame::of_size(n).unwrap();
        let partition = random_partition(&mut self.rng, n).unwrap();
        let focal_m2 = self.rng.random_range(1..=3);
        let m2: MassFunction<T> =
            random_subalgebra_mass(&mut self.rng, &frame, &partition, focal_m2);
        let extra = self.rng.random_range(0..=3);
        let m1 = supported_prior(&mut self.rng, &frame, &partition, &m2, extra);
        (frame, partition, m1, m2)
    }
}

/// Criterion 1: the success constraint. Projecting either rule's output onto
/// the subalgebra returns m2 exactly, in exact arithmetic, whenever every
/// update mass has a positive class sum; strict-policy outputs that lost mass
/// still satisfy the identity on every element with a positive class sum.
#[test]
fn criterion_1_c1_success_rule() {
    let mut stream = InstanceStream::new(101);
    let mut checked = 0;
    while checked < INSTANCES {
        let (_, partition, m1, m2) = stream.supported::<Q>(6);
        for rule in [jeffrey_geometric, jeffrey_dempster] {
            let revision = rule(&m1, &partition, &m2, FallbackPolicy::Strict).unwrap();
            assert!(revision.orphaned.is_empty());
            assert_eq!(project_to_subalgebra(&revision.mass, &partition).unwrap(), m2);
        }
        checked += 1;
    }

    // Unsupported instances: the identity still holds on every element whose
    // class sum is positive, and the lost mass is flagged.
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut subnormal_seen = 0;
    for _ in 0..INSTANCES {
        let n = rng.random_range(2..=6);
        let frame = Frame::of_size(n).unwrap();
        let partition = random_partition(&mut rng, n).unwrap();
        let focal_m1 = rng.random_range(1..=3);
        let m1: MassFunction<Q> = random_mass(&mut rng, &frame, focal_m1, false);
        let focal_m2 = rng.random_range(1..=3);
        let m2: MassFunction<Q> =
            random_subalgebra_mass(&mut rng, &frame, &partition, focal_m2);
        type JeffreyRule = fn(
            &MassFunction<Q>,
            &Partition,
            &MassFunction<Q>,
            FallbackPolicy,
        ) -> beliefrev::Result<beliefrev::jeffrey::Revision<Q>>;
        for (rule, route) in [
            (jeffrey_geometric as JeffreyRule, Route::Geometric),
            (jeffrey_dempster as JeffreyRule, Route::Dempster),
        ] {
            let revision = rule(&m1, &partition, &m2, FallbackPolicy::Strict).unwrap();
            let projected = project_to_subalgebra(&revision.mass, &partition).unwrap();
            let orphans: Vec<SubsetMask> =
                revision.orphaned.iter().map(|o| o.set).collect();
            if !orphans.is_empty() {
                subnormal_seen += 1;
                assert!(!revision.mass.is_normal() || m2.focal().count() == orphans.len());
            }
            for (b, mass) in m2.focal() {
                if orphans.contains(&b) {
                    assert_eq!(projected.mass(b), Q::zero());
                } else {
                    assert_eq!(projected.mass(b), mass.clone());
                }
            }
            assert_eq!(
                orphans.is_empty(),
                class_sums_positive_exact(&m1, &partition, &m2, route)
            );
        }
    }
    assert!(subnormal_seen > 0, "fallback path never exercised");
    report(
        1,
        "project_to_subalgebra(m3) = m2 exactly on positive class sums (both rules)",
        true,
    );
}

/// Criterion 2: constraint characterization. Solving C1 + C3F (resp. C1 +
/// C3R) as a linear system over the class masses reproduces the closed-form
/// rules to 1e-9 on frames of up to 4 elements.
#[test]
fn criterion_2_constraint_characterization() {
    let mut stream = InstanceStream::new(202);
    let mut max_gap = 0.0f64;
    let mut checked = 0;
    while checked < INSTANCES {
        let (_, partition, m1, m2) = stream.supported::<f64>(4);
        if !class_sums_positive(&m1, &partition, &m2, Route::Geometric)
            || !class_sums_positive(&m1, &partition, &m2, Route::Dempster)
        {
            continue;
        }
        type JeffreyRuleF = fn(
            &MassFunction<f64>,
            &Partition,
            &MassFunction<f64>,
            FallbackPolicy,
        ) -> beliefrev::Result<beliefrev::jeffrey::Revision<f64>>;
        for (route, rule) in [
            (Route::Geometric, jeffrey_geometric as JeffreyRuleF),
            (Route::Dempster, jeffrey_dempster as JeffreyRuleF),
        ] {
            let solved = solve_revision_constraints(&m1, &partition, &m2, route)
                .expect("positive class sums give a unique solution");
            let revision = rule(&m1, &partition, &m2, FallbackPolicy::Strict).unwrap();
            let closed = revision.mass;
            let mut solved_total = 0.0;
            for (set, mass) in &solved {
                max_gap = max_gap.max((mass - closed.mass(*set)).abs());
                solved_total += mass;
            }
            for (set, mass) in closed.focal() {
                if set.is_empty() {
                    continue;
                }
                let from_solver = solved
                    .iter()
                    .find(|(s, _)| *s == set)
                    .map(|(_, v)| *v)
                    .unwrap_or(0.0);
                max_gap = max_gap.max((from_solver - mass).abs());
            }
            assert!((solved_total - 1.0).abs() < 1e-9);
        }
        checked += 1;
    }
    report(
        2,
        &format!("constraint-system solutions match both closed forms (max gap {max_gap:.2e} <= 1e-9)"),
        max_gap <= 1e-9,
    );
}

/// Criterion 3: degenerate recovery. An update concentrated on one atom
/// reproduces the single-event rules exactly.
#[test]
fn criterion_3_degenerate_recovery() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut geometric_checked = 0;
    let mut dempster_checked = 0;
    while geometric_checked < INSTANCES || dempster_checked < INSTANCES {
        let n = rng.random_range(2..=6);
        let frame = Frame::of_size(n).unwrap();
        let partition = random_partition(&mut rng, n).unwrap();
        let focal_m1 = rng.random_range(1..=4);
        let m1: MassFunction<Q> = random_mass(&mut rng, &frame, focal_m1, false);
        let atom = partition.atoms()[rng.random_range(0..partition.atom_count())];
        let degenerate: MassFunction<Q> =
            MassFunction::new(frame.clone(), vec![(atom, q(1, 1))]).unwrap();

        if !m1.bel(atom).is_zero() && geometric_checked < INSTANCES {
            let revision =
                jeffrey_geometric(&m1, &partition, &degenerate, FallbackPolicy::Strict)
                    .unwrap();
            assert_eq!(revision.mass, condition_geometric(&m1, atom).unwrap());
            geometric_checked += 1;
        }
        if !m1.pl(atom).is_zero() && dempster_checked < INSTANCES {
            let revision =
                jeffrey_dempster(&m1, &partition, &degenerate, FallbackPolicy::Strict)
                    .unwrap();
            assert_eq!(revision.mass, condition_dempster(&m1, atom).unwrap());
            dempster_checked += 1;
        }
    }
    report(
        3,
        "degenerate m2 reproduces geometric / Dempster conditioning exactly",
        true,
    );
}

/// Criterion 4: Bayesian collapse. On Bayesian inputs both rules equal
/// Jeffrey's probability rule, which passes R1/R2; a degenerate update is
/// Bayes' rule.
#[test]
fn criterion_4_bayesian_collapse() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for _ in 0..INSTANCES {
        let n = rng.random_range(2..=6);
        let frame = Frame::of_size(n).unwrap();
        let partition = random_partition(&mut rng, n).unwrap();
        let p1: MassFunction<Q> = random_bayesian(&mut rng, &frame);
        let update: Vec<Q> = random_atom_probabilities(&mut rng, &partition);
        let m2: MassFunction<Q> = MassFunction::new(
            frame.clone(),
            partition.atoms().iter().copied().zip(update.iter().cloned()),
        )
        .unwrap();

        let expected = jeffrey_probability(&p1, &partition, &update).unwrap();
        assert!(expected.is_normal());
        let geometric =
            jeffrey_geometric(&p1, &partition, &m2, FallbackPolicy::Strict).unwrap();
        let dempster =
            jeffrey_dempster(&p1, &partition, &m2, FallbackPolicy::Strict).unwrap();
        assert_eq!(geometric.mass, expected);
        assert_eq!(dempster.mass, expected);
        assert_eq!(atom_probabilities(&m2, &partition).unwrap(), update);

        let r1r2 = check_r1_r2(&p1, &expected, &partition, &update, &Q::zero()).unwrap();
        assert!(r1r2.pass, "{r1r2:?}");

        // Degenerate update: Bayes' rule.
        let pick = rng.random_range(0..partition.atom_count());
        let degenerate: Vec<Q> = (0..partition.atom_count())
            .map(|i| if i == pick { q(1, 1) } else { Q::zero() })
            .collect();
        let bayes = jeffrey_probability(&p1, &partition, &degenerate).unwrap();
        let atom = partition.atoms()[pick];
        assert_eq!(bayes, condition_dempster(&p1, atom).unwrap());
        assert_eq!(bayes, condition_geometric(&p1, atom).unwrap());
    }
    report(
        4,
        "Bayesian collapse to Jeffrey's probability rule (R1/R2 pass, degenerate = Bayes)",
        true,
    );
}

/// Criterion 5: the worked 4-element regression instance, exact.
#[test]
fn criterion_5_worked_instance_regression() {
    let frame = Frame::new(["a", "b", "c", "d"]).unwrap();
    let part = |labels: &[&str]| frame.subset(labels).unwrap();
    let m1: MassFunction<Q> = MassFunction::new(
        frame.clone(),
        vec![
            (part(&["a"]), q(3, 10)),
            (part(&["a", "b"]), q(2, 10)),
            (part(&["b", "c"]), q(3, 10)),
            (part(&["c", "d"]), q(2, 10)),
        ],
    )
    .unwrap();
    let partition = Partition::new(4, vec![part(&["a", "b"]), part(&["c", "d"])]).unwrap();
    let m2: MassFunction<Q> = MassFunction::new(
        frame.clone(),
        vec![
            (part(&["a", "b"]), q(5, 10)),
            (part(&["c", "d"]), q(3, 10)),
            (frame.full_mask(), q(2, 10)),
        ],
    )
    .unwrap();

    let geometric = jeffrey_geometric(&m1, &partition, &m2, FallbackPolicy::Strict)
        .unwrap()
        .mass;
    let expected_geometric: MassFunction<Q> = MassFunction::new(
        frame.clone(),
        vec![
            (part(&["a"]), q(3, 10)),
            (part(&["a", "b"]), q(2, 10)),
            (part(&["b", "c"]), q(2, 10)),
            (part(&["c", "d"]), q(3, 10)),
        ],
    )
    .unwrap();
    assert_eq!(geometric, expected_geometric);

    let dempster = jeffrey_dempster(&m1, &partition, &m2, FallbackPolicy::Strict)
        .unwrap()
        .mass;
    let expected_dempster: MassFunction<Q> = MassFunction::new(
        frame.clone(),
        vec![
            (part(&["a"]), q(1875, 10000)),
            (part(&["b"]), q(1875, 10000)),
            (part(&["a", "b"]), q(125, 1000)),
            (part(&["b", "c"]), q(2, 10)),
            (part(&["c"]), q(18, 100)),
            (part(&["c", "d"]), q(12, 100)),
        ],
    )
    .unwrap();
    assert_eq!(dempster, expected_dempster);

    // The same values fall out of the constraint-system solver.
    let m1_float: MassFunction<f64> =
        MassFunction::new(frame.clone(), m1.focal().map(|(s, v)| (s, v.to_f64()))).unwrap();
    let m2_float: MassFunction<f64> =
        MassFunction::new(frame.clone(), m2.focal().map(|(s, v)| (s, v.to_f64()))).unwrap();
    for (route, frozen) in [
        (Route::Geometric, &expected_geometric),
        (Route::Dempster, &expected_dempster),
    ] {
        let solved = solve_revision_constraints(&m1_float, &partition, &m2_float, route).unwrap();
        assert_eq!(solved.len(), frozen.focal_count());
        for (set, mass) in solved {
            assert!((mass - frozen.mass(set).to_f64()).abs() <= 1e-9);
        }
    }

    report(5, "worked instance matches the frozen regression values exactly", true);
}

/// Criterion 6: the provability semantics is a faithful oracle. Beliefs equal
/// provability probabilities pointwise; both conditioning squares commute;
/// plausibility inside the observation is invariant. All exact.
#[test]
fn criterion_6_provability_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for _ in 0..INSTANCES {
        let n = rng.random_range(2..=5);
        let frame = Frame::of_size(n).unwrap();
        let hypothesis_count = rng.random_range(1..=6);
        let model = random_model::<Q, _>(&mut rng, &frame, hypothesis_count, true);
        let bba = model.induced_bba();
        let belief = bba.belief();

        for (set, value) in belief.iter() {
            assert_eq!(model.provability_probability(set).unwrap(), *value);
        }

        let observed = SubsetMask::from_bits(rng.random_range(1..frame.lattice_size() as u32));

        // Data-conditioning square.
        let conditioned_model = model.data_condition(observed).unwrap();
        assert_eq!(
            conditioned_model.induced_bba(),
            condition_unnormalized(&bba, observed).unwrap()
        );

        // Plausibility invariance inside the observation.
        let conditioned_bba = conditioned_model.induced_bba();
        for inside in observed.subsets() {
            assert_eq!(conditioned_bba.pl(inside), bba.pl(inside));
        }

        // Source-conditioning square, where defined.
        if bba.bel(observed).is_zero() {
            assert!(model.source_condition(observed).is_err());
        } else {
            let values = model.source_condition(observed).unwrap();
            let geometric = condition_geometric(&bba, observed).unwrap().belief();
            assert_eq!(values, geometric);
        }

        // Probabilistic collapse: both conditionings meet Bayes' rule.
        if model.is_probabilistic_collapse() && !bba.pl(observed).is_zero() {
            let bba_clean = bba.normalize().unwrap();
            if !bba_clean.bel(observed).is_zero() {
                assert_eq!(
                    condition_dempster(&bba_clean, observed).unwrap(),
                    condition_geometric(&bba_clean, observed).unwrap()
                );
            }
        }
    }
    report(
        6,
        "provability semantics: bel = P(provable), both conditioning squares commute, pl invariant",
        true,
    );
}

/// Criterion 7: rival separation. The combination proposal always satisfies
/// its conditional-invariance property, every rival rule violates C1 within
/// the trial budget, and neither Jeffrey rule ever does.
#[test]
fn criterion_7_rival_rule_separation() {
    // Conditional invariance of the combination, exact.
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut checked = 0;
    while checked < INSTANCES {
        let n = rng.random_range(2..=5);
        let frame = Frame::of_size(n).unwrap();
        let partition = random_partition(&mut rng, n).unwrap();
        let focal_m1 = rng.random_range(1..=4);
        let m1: MassFunction<Q> = random_mass(&mut rng, &frame, focal_m1, false);
        let focal_m2 = rng.random_range(1..=3);
        let m2: MassFunction<Q> =
            random_subalgebra_mass(&mut rng, &frame, &partition, focal_m2);
        let invariance = check_shafer_property(&m1, &m2, &partition, &Q::zero()).unwrap();
        assert!(invariance.pass, "{invariance:?}");
        checked += 1;
    }

    // Every rival violates C1 within 1000 seeded trials on a 4-element frame.
    for rule in [
        RuleKind::Shafer,
        RuleKind::DuboisPrade,
        RuleKind::Ichihashi1,
        RuleKind::Ichihashi2,
        RuleKind::Ichihashi3,
    ] {
        let witness = find_c1_violation::<f64>(rule, 7007, 1000, 4).unwrap();
        assert!(witness.is_some(), "{rule} produced no C1 violation in 1000 trials");
    }

    // The Jeffrey rules never do: the trial budget covers every partition of
    // every frame size up to 4, many times over.
    for rule in [RuleKind::JeffreyGeometric, RuleKind::JeffreyDempster] {
        for n in 1..=4 {
            let budget = 200 * all_partitions(n).unwrap().len() as u64;
            let witness = find_c1_violation::<f64>(rule, 7007, budget, n).unwrap();
            assert!(witness.is_none(), "{rule} violated C1 at n = {n}");
        }
    }
    report(
        7,
        "combination invariance holds; every rival violates C1; neither Jeffrey rule does",
        true,
    );
}

/// Criterion 8: transform soundness. Möbius inversion of bel returns the
/// mass function, and pl agrees with direct enumeration, exactly.
#[test]
fn criterion_8_transform_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    for _ in 0..INSTANCES {
        let n = rng.random_range(1..=6);
        let frame = Frame::of_size(n).unwrap();
        let include_empty = rng.random_range(0..4) == 0;
        let focal = rng.random_range(1..=frame.lattice_size().min(8));
        let m: MassFunction<Q> = random_mass(&mut rng, &frame, focal, include_empty);
        let belief = m.belief();
        let plausibility = m.plausibility();
        for (set, value) in belief.iter() {
            assert_eq!(*value, brute_bel(&m, set));
            assert_eq!(*plausibility.value(set), brute_pl(&m, set));
            // pl(A) = bel(Ω) - bel(¬A)
            let complement = set.complement(n);
            assert_eq!(
                *plausibility.value(set),
                belief.value(frame.full_mask()).clone() - belief.value(complement).clone()
            );
        }
        assert_eq!(mass_from_belief(&belief).unwrap(), m);
    }
    report(
        8,
        "mass/belief Mobius roundtrip and pl identity hold exactly",
        true,
    );
}
