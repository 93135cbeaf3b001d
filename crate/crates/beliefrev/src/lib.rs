//! Belief-function revision over finite frames.
//!
//! The crate implements basic belief assignments with their `bel`/`pl`
//! evidential functions, the single-event conditioning rules (unnormalized
//! and normalized Dempster, geometric), the Jeffrey-geometric and
//! Jeffrey-Dempster revision rules with executable checkers for the
//! constraints that characterize them, the rival generalizations they are
//! compared against, and the probability-of-provability semantics that backs
//! the conditioning rules.
//!
//! Everything is generic over the [`weight::Weight`] scalar: `f64` for
//! floating arithmetic, [`num::BigRational`] for exact arithmetic.
//!
//! ```
//! use beliefrev::{Frame, MassFunction, Partition};
//! use beliefrev::jeffrey::{jeffrey_geometric, FallbackPolicy};
//!
//! let frame = Frame::new(["a", "b", "c", "d"])?;
//! let m1 = MassFunction::new(frame.clone(), vec![
//!     (frame.subset(&["a"])?, 0.3),
//!     (frame.subset(&["a", "b"])?, 0.2),
//!     (frame.subset(&["b", "c"])?, 0.3),
//!     (frame.subset(&["c", "d"])?, 0.2),
//! ])?;
//! let partition = Partition::new(4, vec![
//!     frame.subset(&["a", "b"])?,
//!     frame.subset(&["c", "d"])?,
//! ])?;
//! let m2 = MassFunction::new(frame.clone(), vec![
//!     (frame.subset(&["a", "b"])?, 0.5),
//!     (frame.subset(&["c", "d"])?, 0.3),
//!     (frame.full_mask(), 0.2),
//! ])?;
//!
//! // Update masses spread over the sets sharing their upper approximation,
//! // proportionally to the prior.
//! let revised = jeffrey_geometric(&m1, &partition, &m2, FallbackPolicy::Strict)?;
//! assert_eq!(revised.mass.mass(frame.subset(&["b", "c"])?), 0.2);
//! # Ok::<(), beliefrev::Error>(())
//! ```

pub mod alternatives;
pub mod conditioning;
pub mod constraints;
mod error;
pub mod frame;
pub mod generate;
pub mod jeffrey;
pub mod mass;
pub mod provability;
pub mod transform;
pub mod weight;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use frame::{coarsest_subalgebra, ClassCache, Frame, Partition, SubsetMask};
pub use mass::{mass_from_belief, mobius_nonnegativity, MassFunction, MobiusReport, Normalization, SetFunction};
pub use weight::Weight;
