//! Basic belief assignments and the evidential functions derived from them.
//!
//! A [`MassFunction`] stores a sparse map from focal sets to masses. Masses
//! are nonnegative; mass on the empty set is allowed (unnormalized belief
//! functions), and `bel` never counts it:
//!
//! ```text
//! bel(A) = Σ { m(X) : ∅ ≠ X ⊆ A }        pl(A) = bel(Ω) - bel(¬A)
//! ```
//!
//! Dense `2^n` arrays ([`SetFunction`]) are used for lattice-global results;
//! conversion happens at operation boundaries.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::frame::{Frame, SubsetMask};
use crate::transform::{mobius_subsets, zeta_subsets};
use crate::weight::{within_tol, Weight};

/// Whether the masses sum to 1 or have leaked below it.
///
/// Subnormal mass functions arise only from the strict zero-denominator
/// fallback of the Jeffrey rules; regular constructors reject them.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Normalization {
    Normal,
    Subnormal,
}

/// A basic belief assignment over a frame.
#[derive(Clone, Debug, PartialEq)]
pub struct MassFunction<T: Weight> {
    frame: Frame,
    masses: BTreeMap<SubsetMask, T>,
    status: Normalization,
}

impl<T: Weight> MassFunction<T> {
    /// Builds a normal mass function: masses nonnegative, sum 1 within the
    /// default tolerance. Zero entries are dropped; duplicate sets are an error.
    pub fn new<I>(frame: Frame, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SubsetMask, T)>,
    {
        Self::with_tolerance(frame, entries, &T::default_tolerance())
    }

    pub fn with_tolerance<I>(frame: Frame, entries: I, tolerance: &T) -> Result<Self>
    where
        I: IntoIterator<Item = (SubsetMask, T)>,
    {
        let (masses, total) = Self::collect(&frame, entries)?;
        if !within_tol(&total, &T::one(), tolerance) {
            return Err(Error::MassSum {
                total: total.render(),
            });
        }
        Ok(MassFunction {
            frame,
            masses,
            status: Normalization::Normal,
        })
    }

    /// Builds a mass function whose total may fall below 1; the status flag
    /// records whether it did.
    pub fn subnormal<I>(frame: Frame, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SubsetMask, T)>,
    {
        let tolerance = T::default_tolerance();
        let (masses, total) = Self::collect(&frame, entries)?;
        if total > T::one() + tolerance.clone() {
            return Err(Error::MassExceedsOne {
                total: total.render(),
            });
        }
        let status = if within_tol(&total, &T::one(), &tolerance) {
            Normalization::Normal
        } else {
            Normalization::Subnormal
        };
        Ok(MassFunction {
            frame,
            masses,
            status,
        })
    }

    fn collect<I>(frame: &Frame, entries: I) -> Result<(BTreeMap<SubsetMask, T>, T)>
    where
        I: IntoIterator<Item = (SubsetMask, T)>,
    {
        let mut masses = BTreeMap::new();
        let mut total = T::zero();
        for (set, mass) in entries {
            frame.check_mask(set)?;
            if mass < T::zero() {
                return Err(Error::NegativeMass {
                    set: frame.render_mask(set),
                    value: mass.render(),
                });
            }
            if mass.is_zero() {
                continue;
            }
            total += mass.clone();
            if masses.insert(set, mass).is_some() {
                return Err(Error::DuplicateFocalSet {
                    set: frame.render_mask(set),
                });
            }
        }
        Ok((masses, total))
    }

    /// The vacuous belief state: all mass on the whole frame.
    pub fn vacuous(frame: Frame) -> Self {
        let full = frame.full_mask();
        MassFunction {
            frame,
            masses: BTreeMap::from([(full, T::one())]),
            status: Normalization::Normal,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn status(&self) -> Normalization {
        self.status
    }

    pub fn is_normal(&self) -> bool {
        self.status == Normalization::Normal
    }

    pub fn mass(&self, set: SubsetMask) -> T {
        self.masses.get(&set).cloned().unwrap_or_else(T::zero)
    }

    /// Focal sets with their masses, in canonical mask order.
    pub fn focal(&self) -> impl Iterator<Item = (SubsetMask, &T)> {
        self.masses.iter().map(|(set, mass)| (*set, mass))
    }

    pub fn focal_count(&self) -> usize {
        self.masses.len()
    }

    pub fn total(&self) -> T {
        let mut sum = T::zero();
        for mass in self.masses.values() {
            sum += mass.clone();
        }
        sum
    }

    /// Sparse belief at a single set: `Σ m(X)` over nonempty `X ⊆ set`.
    pub fn bel(&self, set: SubsetMask) -> T {
        let mut sum = T::zero();
        for (focal, mass) in &self.masses {
            if !focal.is_empty() && focal.is_subset_of(set) {
                sum += mass.clone();
            }
        }
        sum
    }

    /// Sparse plausibility at a single set: `Σ m(X)` over `X` meeting `set`.
    pub fn pl(&self, set: SubsetMask) -> T {
        let mut sum = T::zero();
        for (focal, mass) in &self.masses {
            if focal.intersects(set) {
                sum += mass.clone();
            }
        }
        sum
    }

    /// The belief function over the whole lattice, via the fast zeta transform.
    pub fn belief(&self) -> SetFunction<T> {
        let mut values = vec![T::zero(); self.frame.lattice_size()];
        for (set, mass) in &self.masses {
            if !set.is_empty() {
                values[set.index()] = mass.clone();
            }
        }
        zeta_subsets(&mut values);
        SetFunction {
            frame: self.frame.clone(),
            values,
        }
    }

    /// The plausibility function, through `pl(A) = bel(Ω) - bel(¬A)`.
    pub fn plausibility(&self) -> SetFunction<T> {
        let belief = self.belief();
        let n = self.frame.n();
        let top = belief.values[self.frame.full_mask().index()].clone();
        let values = (0..self.frame.lattice_size())
            .map(|i| {
                let complement = SubsetMask::from_bits(i as u32).complement(n);
                top.clone() - belief.values[complement.index()].clone()
            })
            .collect();
        SetFunction {
            frame: self.frame.clone(),
            values,
        }
    }

    /// Conditions away the mass on `∅`: `m'(A) = m(A) / (1 - m(∅))`.
    pub fn normalize(&self) -> Result<Self> {
        let conflict = self.mass(SubsetMask::EMPTY);
        let scale = T::one() - conflict;
        if scale.is_negligible() {
            return Err(Error::TotalConflict);
        }
        let masses: BTreeMap<SubsetMask, T> = self
            .masses
            .iter()
            .filter(|(set, _)| !set.is_empty())
            .map(|(set, mass)| (*set, mass.clone() / scale.clone()))
            .collect();
        Ok(MassFunction {
            frame: self.frame.clone(),
            masses,
            status: self.status,
        })
    }

    /// True iff every focal set carrying positive mass is a singleton.
    pub fn is_bayesian(&self) -> bool {
        self.masses.keys().all(|set| set.card() == 1)
    }
}

/// A dense real-valued function over the subset lattice.
///
/// Holds `bel`, `pl`, and the outputs of rival revision rules, which need not
/// be belief functions at all.
#[derive(Clone, Debug, PartialEq)]
pub struct SetFunction<T: Weight> {
    frame: Frame,
    values: Vec<T>,
}

impl<T: Weight> SetFunction<T> {
    pub fn new(frame: Frame, values: Vec<T>) -> Result<Self> {
        if values.len() != frame.lattice_size() {
            return Err(Error::FrameMismatch);
        }
        Ok(SetFunction { frame, values })
    }

    pub fn zeroes(frame: Frame) -> Self {
        let values = vec![T::zero(); frame.lattice_size()];
        SetFunction { frame, values }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn value(&self, set: SubsetMask) -> &T {
        &self.values[set.index()]
    }

    pub fn value_mut(&mut self, set: SubsetMask) -> &mut T {
        &mut self.values[set.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (SubsetMask, &T)> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (SubsetMask::from_bits(i as u32), v))
    }

    /// Möbius coefficients of the function (inverse of summing over subsets).
    pub fn mobius(&self) -> Vec<T> {
        let mut coefficients = self.values.clone();
        mobius_subsets(&mut coefficients);
        coefficients
    }
}

/// Result of checking whether a set function is a belief function.
#[derive(Clone, Debug)]
pub struct MobiusReport<T: Weight> {
    /// Zero at `∅`, nonnegative Möbius masses, total not above 1.
    pub is_belief_function: bool,
    /// Möbius coefficients that came out negative, worst first.
    pub negatives: Vec<(SubsetMask, T)>,
    /// Value at the empty set (must be 0 for a belief function).
    pub empty_value: T,
    /// `1 - f(Ω)`, the mass a unit-total reconstruction must park on `∅`.
    pub empty_mass: T,
}

/// Möbius inversion of a belief function back to its mass function.
///
/// The reconstruction is completed to total mass 1 by placing `1 - b(Ω)`
/// on the empty set. Negative reconstructed masses beyond tolerance mean the
/// input was not a belief function and are reported with the offending subset.
pub fn mass_from_belief<T: Weight>(belief: &SetFunction<T>) -> Result<MassFunction<T>> {
    let tolerance = T::default_tolerance();
    let empty = belief.values[0].clone();
    if empty.abs() > tolerance {
        return Err(Error::NonzeroAtEmpty {
            value: empty.render(),
        });
    }
    let coefficients = belief.mobius();
    let mut entries: Vec<(SubsetMask, T)> = Vec::new();
    for (i, mass) in coefficients.into_iter().enumerate().skip(1) {
        if mass < T::zero() {
            if mass.abs() > tolerance {
                return Err(Error::NotABeliefFunction {
                    set: belief.frame.render_mask(SubsetMask::from_bits(i as u32)),
                    value: mass.render(),
                });
            }
            continue;
        }
        entries.push((SubsetMask::from_bits(i as u32), mass));
    }
    let top = belief.values[belief.frame.full_mask().index()].clone();
    let leftover = T::one() - top;
    if leftover < T::zero() {
        if leftover.abs() > tolerance {
            return Err(Error::NotABeliefFunction {
                set: belief.frame.render_mask(belief.frame.full_mask()),
                value: leftover.render(),
            });
        }
    } else {
        entries.push((SubsetMask::EMPTY, leftover));
    }
    MassFunction::new(belief.frame.clone(), entries)
}

/// Checks Möbius nonnegativity of a set function without failing: rival
/// revision rules return set functions that may or may not be belief functions.
pub fn mobius_nonnegativity<T: Weight>(function: &SetFunction<T>, tolerance: &T) -> MobiusReport<T> {
    let empty_value = function.values[0].clone();
    let mut negatives: Vec<(SubsetMask, T)> = function
        .mobius()
        .into_iter()
        .enumerate()
        .skip(1)
        .filter(|(_, mass)| mass < &T::zero() && mass.abs() > *tolerance)
        .map(|(i, mass)| (SubsetMask::from_bits(i as u32), mass))
        .collect();
    negatives.sort_by(|a, b| b.1.abs().partial_cmp(&a.1.abs()).unwrap_or(std::cmp::Ordering::Equal));
    let top = function.values[function.frame.full_mask().index()].clone();
    let empty_mass = T::one() - top;
    let is_belief_function =
        negatives.is_empty() && empty_value.abs() <= *tolerance && empty_mass >= -tolerance.clone();
    MobiusReport {
        is_belief_function,
        negatives,
        empty_value,
        empty_mass,
    }
}
