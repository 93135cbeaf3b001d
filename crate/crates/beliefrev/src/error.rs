use thiserror::Error;

/// Errors raised by frame construction, mass validation and the conditioning rules.
///
/// Sets inside error messages are rendered with the frame labels of the value
/// that raised them, e.g. `{a,b}`.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("frame must have at least one element")]
    EmptyFrame,
    #[error("frame has {n} elements, the supported maximum is {max}")]
    FrameTooLarge { n: usize, max: usize },
    #[error("duplicate frame label `{label}`")]
    DuplicateLabel { label: String },
    #[error("invalid frame label `{label}`: labels must be nonempty and comma-free")]
    InvalidLabel { label: String },
    #[error("unknown element `{label}`")]
    UnknownLabel { label: String },
    #[error("subset mask {bits:#x} uses bits outside a frame of {n} elements")]
    MaskOutOfRange { bits: u32, n: usize },
    #[error("values are defined over different frames")]
    FrameMismatch,

    #[error("invalid partition: {reason}")]
    InvalidPartition { reason: String },
    #[error("{context} requires a nonempty set")]
    EmptySet { context: &'static str },

    #[error("duplicate focal set {set}")]
    DuplicateFocalSet { set: String },
    #[error("negative mass {value} on {set}")]
    NegativeMass { set: String, value: String },
    #[error("masses sum to {total}, expected 1")]
    MassSum { total: String },
    #[error("masses sum to {total}, which exceeds 1")]
    MassExceedsOne { total: String },
    #[error("operation requires a normal mass function, got a subnormal one")]
    SubnormalInput,
    #[error("operation requires a Bayesian mass function (all focal sets singletons)")]
    NotBayesian,

    #[error("total conflict: all mass sits on the empty set")]
    TotalConflict,
    #[error("conditioning event {event} has zero plausibility")]
    ZeroPlausibility { event: String },
    #[error("conditioning event {event} has zero belief")]
    ZeroBelief { event: String },
    #[error("zero denominator {denominator} at {set} in Ichihashi-Tanaka variant {variant}")]
    ZeroDenominator {
        variant: u8,
        set: String,
        denominator: &'static str,
    },
    #[error("focal set {set} is not a union of partition atoms")]
    NotOnSubalgebra { set: String },
    #[error("not a belief function: reconstructed mass {value} on {set} is negative")]
    NotABeliefFunction { set: String, value: String },
    #[error("set function value {value} at the empty set, expected 0")]
    NonzeroAtEmpty { value: String },

    #[error("hypothesis probabilities sum to {total}, expected 1")]
    ProbabilitySum { total: String },
    #[error("duplicate hypothesis label `{label}`")]
    DuplicateHypothesis { label: String },

    #[error("unknown rule `{name}`")]
    UnknownRule { name: String },
    #[error("trial budget must be at least 1")]
    ZeroTrials,
    #[error("cannot parse `{text}` as a number: {reason}")]
    NumberParse { text: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
