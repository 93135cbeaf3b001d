//! Shared fixtures for unit tests: the worked 4-element instance used across
//! the conditioning and revision modules.

use crate::frame::{Frame, Partition};
use crate::mass::MassFunction;
use crate::weight::Weight;

pub(crate) fn worked_frame() -> Frame {
    Frame::new(["a", "b", "c", "d"]).unwrap()
}

/// {a}:0.3, {a,b}:0.2, {b,c}:0.3, {c,d}:0.2.
pub(crate) fn worked_mass<T: Weight>() -> MassFunction<T> {
    let frame = worked_frame();
    MassFunction::new(
        frame.clone(),
        vec![
            (frame.subset(&["a"]).unwrap(), T::from_ratio(3, 10)),
            (frame.subset(&["a", "b"]).unwrap(), T::from_ratio(2, 10)),
            (frame.subset(&["b", "c"]).unwrap(), T::from_ratio(3, 10)),
            (frame.subset(&["c", "d"]).unwrap(), T::from_ratio(2, 10)),
        ],
    )
    .unwrap()
}

/// Atoms {a,b}, {c,d}.
pub(crate) fn worked_partition() -> Partition {
    let frame = worked_frame();
    Partition::new(
        frame.n(),
        vec![
            frame.subset(&["a", "b"]).unwrap(),
            frame.subset(&["c", "d"]).unwrap(),
        ],
    )
    .unwrap()
}

/// m2 on the subalgebra: {a,b}:0.5, {c,d}:0.3, Ω:0.2.
pub(crate) fn worked_update<T: Weight>() -> MassFunction<T> {
    let frame = worked_frame();
    MassFunction::new(
        frame.clone(),
        vec![
            (frame.subset(&["a", "b"]).unwrap(), T::from_ratio(5, 10)),
            (frame.subset(&["c", "d"]).unwrap(), T::from_ratio(3, 10)),
            (frame.full_mask(), T::from_ratio(2, 10)),
        ],
    )
    .unwrap()
}
