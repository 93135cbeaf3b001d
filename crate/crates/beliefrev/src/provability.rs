//! The probability-of-provability model: a probability over hypotheses, each
//! mapped to the strongest proposition it proves.
//!
//! `P(⊢L)` is the probability that a randomly drawn hypothesis proves `L`
//! without proving `¬L`, i.e. has a nonempty image inside `L`. It equals the
//! belief function of the induced mass assignment, which makes this model an
//! independent semantic backend for the conditioning rules: data-conditioning
//! intersects every image with the observed proposition, source-conditioning
//! restricts attention to the hypotheses proving it.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::frame::{Frame, SubsetMask};
use crate::mass::{MassFunction, SetFunction};
use crate::weight::{within_tol, Weight};

#[derive(Clone, Debug, PartialEq)]
pub struct Hypothesis<T: Weight> {
    pub label: String,
    pub probability: T,
    /// The conjunction of everything the hypothesis proves. May be empty for
    /// hypotheses equivalent to the contradiction.
    pub image: SubsetMask,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisModel<T: Weight> {
    frame: Frame,
    hypotheses: Vec<Hypothesis<T>>,
}

impl<T: Weight> HypothesisModel<T> {
    pub fn new(frame: Frame, hypotheses: Vec<Hypothesis<T>>) -> Result<Self> {
        let mut total = T::zero();
        for (i, hypothesis) in hypotheses.iter().enumerate() {
            frame.check_mask(hypothesis.image)?;
            if hypothesis.probability < T::zero() {
                return Err(Error::NegativeMass {
                    set: hypothesis.label.clone(),
                    value: hypothesis.probability.render(),
                });
            }
            if hypotheses[..i].iter().any(|h| h.label == hypothesis.label) {
                return Err(Error::DuplicateHypothesis {
                    label: hypothesis.label.clone(),
                });
            }
            total += hypothesis.probability.clone();
        }
        if !within_tol(&total, &T::one(), &T::default_tolerance()) {
            return Err(Error::ProbabilitySum {
                total: total.render(),
            });
        }
        Ok(HypothesisModel { frame, hypotheses })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn hypotheses(&self) -> &[Hypothesis<T>] {
        &self.hypotheses
    }

    /// The induced basic belief assignment: `m(L) = Σ { p(H) : M(H) = L }`.
    pub fn induced_bba(&self) -> MassFunction<T> {
        let mut masses: BTreeMap<SubsetMask, T> = BTreeMap::new();
        for hypothesis in &self.hypotheses {
            if hypothesis.probability.is_zero() {
                continue;
            }
            *masses.entry(hypothesis.image).or_insert_with(T::zero) +=
                hypothesis.probability.clone();
        }
        MassFunction::new(self.frame.clone(), masses)
            .expect("hypothesis probabilities sum to 1")
    }

    /// `P(⊢L)`: probability of drawing a hypothesis with `∅ ≠ M(H) ⊆ L`.
    pub fn provability_probability(&self, proposition: SubsetMask) -> Result<T> {
        self.frame.check_mask(proposition)?;
        let mut sum = T::zero();
        for hypothesis in &self.hypotheses {
            if !hypothesis.image.is_empty() && hypothesis.image.is_subset_of(proposition) {
                sum += hypothesis.probability.clone();
            }
        }
        Ok(sum)
    }

    /// Data-conditioning: every image is intersected with the observation.
    pub fn data_condition(&self, observed: SubsetMask) -> Result<Self> {
        self.frame.check_mask(observed)?;
        if observed.is_empty() {
            return Err(Error::EmptySet {
                context: "data-conditioning",
            });
        }
        let hypotheses = self
            .hypotheses
            .iter()
            .map(|h| Hypothesis {
                label: h.label.clone(),
                probability: h.probability.clone(),
                image: h.image.intersect(observed),
            })
            .collect();
        Ok(HypothesisModel {
            frame: self.frame.clone(),
            hypotheses,
        })
    }

    /// Source-conditioning: `L ↦ bel(L ∩ L*) / bel(L*)`, the probability of
    /// proving `L` among the hypotheses proving `L*`.
    pub fn source_condition(&self, observed: SubsetMask) -> Result<SetFunction<T>> {
        self.frame.check_mask(observed)?;
        let belief = self.induced_bba().belief();
        let denominator = belief.value(observed).clone();
        if denominator.is_negligible() {
            return Err(Error::ZeroBelief {
                event: self.frame.render_mask(observed),
            });
        }
        let values = (0..self.frame.lattice_size())
            .map(|i| {
                let set = SubsetMask::from_bits(i as u32);
                belief.value(set.intersect(observed)).clone() / denominator.clone()
            })
            .collect();
        SetFunction::new(self.frame.clone(), values)
    }

    /// True when every positive-probability hypothesis proves an atom or the
    /// contradiction; the induced beliefs then form a probability model.
    pub fn is_probabilistic_collapse(&self) -> bool {
        self.hypotheses
            .iter()
            .filter(|h| !h.probability.is_zero())
            .all(|h| h.image.is_empty() || h.image.card() == 1)
    }
}
