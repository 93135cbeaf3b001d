//! Seeded random instances for property tests and the violation search.
//!
//! Masses are built from small integer weights, so the same draw is exact in
//! both arithmetic modes and identical across platforms (ChaCha-based
//! generators are stable for a fixed seed).

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::Result;
use crate::frame::{Frame, Partition, SubsetMask};
use crate::mass::MassFunction;
use crate::provability::{Hypothesis, HypothesisModel};
use crate::weight::Weight;

const MAX_WEIGHT: i64 = 9;

fn weighted_masses<T: Weight, R: Rng>(rng: &mut R, sets: Vec<SubsetMask>) -> Vec<(SubsetMask, T)> {
    let weights: Vec<i64> = (0..sets.len()).map(|_| rng.random_range(1..=MAX_WEIGHT)).collect();
    let total: i64 = weights.iter().sum();
    sets.into_iter()
        .zip(weights)
        .map(|(set, weight)| (set, T::from_ratio(weight, total)))
        .collect()
}

/// A mass function with `focal_count` distinct random focal sets (nonempty,
/// plus optionally the empty set as an extra conflict carrier).
pub fn random_mass<T: Weight, R: Rng>(
    rng: &mut R,
    frame: &Frame,
    focal_count: usize,
    include_empty: bool,
) -> MassFunction<T> {
    let lattice = frame.lattice_size() as u32;
    let count = focal_count.clamp(1, lattice as usize - 1);
    let mut sets: BTreeSet<u32> = BTreeSet::new();
    while sets.len() < count {
        sets.insert(rng.random_range(1..lattice));
    }
    let mut sets: Vec<SubsetMask> = sets.into_iter().map(SubsetMask::from_bits).collect();
    if include_empty {
        sets.push(SubsetMask::EMPTY);
    }
    let entries = weighted_masses(rng, sets);
    MassFunction::new(frame.clone(), entries).expect("generated masses sum to 1")
}

/// A mass function whose focal sets are distinct random unions of atoms.
pub fn random_subalgebra_mass<T: Weight, R: Rng>(
    rng: &mut R,
    frame: &Frame,
    partition: &Partition,
    focal_count: usize,
) -> MassFunction<T> {
    let selectors = (1u32 << partition.atom_count()) - 1;
    let count = focal_count.clamp(1, selectors as usize);
    let mut picked: BTreeSet<u32> = BTreeSet::new();
    while picked.len() < count {
        picked.insert(rng.random_range(1..=selectors));
    }
    let sets: Vec<SubsetMask> = picked
        .into_iter()
        .map(|selector| {
            partition
                .atoms()
                .iter()
                .enumerate()
                .filter(|(i, _)| selector & (1 << i) != 0)
                .fold(SubsetMask::EMPTY, |acc, (_, atom)| acc.union(*atom))
        })
        .collect();
    let entries = weighted_masses(rng, sets);
    MassFunction::new(frame.clone(), entries).expect("generated masses sum to 1")
}

/// A Bayesian mass function with positive mass on every singleton.
pub fn random_bayesian<T: Weight, R: Rng>(rng: &mut R, frame: &Frame) -> MassFunction<T> {
    let sets: Vec<SubsetMask> = (0..frame.n()).map(SubsetMask::singleton).collect();
    let entries = weighted_masses(rng, sets);
    MassFunction::new(frame.clone(), entries).expect("generated masses sum to 1")
}

/// Positive atom probabilities summing to 1.
pub fn random_atom_probabilities<T: Weight, R: Rng>(rng: &mut R, partition: &Partition) -> Vec<T> {
    let weights: Vec<i64> = (0..partition.atom_count())
        .map(|_| rng.random_range(1..=MAX_WEIGHT))
        .collect();
    let total: i64 = weights.iter().sum();
    weights
        .into_iter()
        .map(|weight| T::from_ratio(weight, total))
        .collect()
}

/// A random partition built from a random block assignment.
pub fn random_partition<R: Rng>(rng: &mut R, n: usize) -> Result<Partition> {
    let blocks = rng.random_range(1..=n);
    let mut atoms = vec![SubsetMask::EMPTY; blocks];
    for element in 0..n {
        let block = rng.random_range(0..blocks);
        atoms[block] = atoms[block].union(SubsetMask::singleton(element));
    }
    atoms.retain(|atom| !atom.is_empty());
    Partition::new(n, atoms)
}

/// Every partition of an `n`-element frame, enumerated through restricted
/// growth strings. Bell(6) = 203, so this stays tiny at desk scale.
pub fn all_partitions(n: usize) -> Result<Vec<Partition>> {
    fn grow(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let max_block = prefix.iter().copied().max().map_or(0, |m| m + 1);
        for block in 0..=max_block {
            prefix.push(block);
            grow(prefix, n, out);
            prefix.pop();
        }
    }
    let mut assignments = Vec::new();
    grow(&mut vec![0], n, &mut assignments);
    assignments
        .into_iter()
        .map(|assignment| {
            let blocks = assignment.iter().copied().max().unwrap() + 1;
            let mut atoms = vec![SubsetMask::EMPTY; blocks];
            for (element, block) in assignment.into_iter().enumerate() {
                atoms[block] = atoms[block].union(SubsetMask::singleton(element));
            }
            Partition::new(n, atoms)
        })
        .collect()
}

/// A random hypothesis model; images may be empty when `allow_bottom` is set.
pub fn random_model<T: Weight, R: Rng>(
    rng: &mut R,
    frame: &Frame,
    hypothesis_count: usize,
    allow_bottom: bool,
) -> HypothesisModel<T> {
    let lattice = frame.lattice_size() as u32;
    let low = if allow_bottom { 0 } else { 1 };
    let weights: Vec<i64> = (0..hypothesis_count)
        .map(|_| rng.random_range(1..=MAX_WEIGHT))
        .collect();
    let total: i64 = weights.iter().sum();
    let hypotheses = weights
        .into_iter()
        .enumerate()
        .map(|(i, weight)| Hypothesis {
            label: format!("H{}", i + 1),
            probability: T::from_ratio(weight, total),
            image: SubsetMask::from_bits(rng.random_range(low..lattice)),
        })
        .collect();
    HypothesisModel::new(frame.clone(), hypotheses).expect("generated probabilities sum to 1")
}

/// A complete revision instance: frame, partition, prior and update.
#[derive(Clone, Debug)]
pub struct RevisionInstance<T: Weight> {
    pub frame: Frame,
    pub partition: Partition,
    pub m1: MassFunction<T>,
    pub m2: MassFunction<T>,
}

pub fn random_instance<T: Weight, R: Rng>(
    rng: &mut R,
    n: usize,
    focal_m1: usize,
    focal_m2: usize,
) -> Result<RevisionInstance<T>> {
    let frame = Frame::of_size(n)?;
    let partition = random_partition(rng, n)?;
    let m1 = random_mass(rng, &frame, focal_m1, false);
    let m2 = random_subalgebra_mass(rng, &frame, &partition, focal_m2);
    Ok(RevisionInstance {
        frame,
        partition,
        m1,
        m2,
    })
}
