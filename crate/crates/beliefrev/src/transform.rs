//! In-place zeta and Möbius transforms over the subset lattice.
//!
//! For a dense array `v` indexed by bitmask, the zeta transform replaces
//! `v[A]` with the sum of `v[X]` over all `X ⊆ A`; the Möbius transform is
//! its inverse. Both run in `O(2^n · n)` additions.

use crate::weight::Weight;

pub fn zeta_subsets<T: Weight>(values: &mut [T]) {
    let size = values.len();
    assert!(size.is_power_of_two(), "lattice arrays have 2^n entries");
    let mut bit = 1;
    while bit < size {
        for mask in 0..size {
            if mask & bit != 0 {
                let low = values[mask ^ bit].clone();
                values[mask] += low;
            }
        }
        bit <<= 1;
    }
}

pub fn mobius_subsets<T: Weight>(values: &mut [T]) {
    let size = values.len();
    assert!(size.is_power_of_two(), "lattice arrays have 2^n entries");
    let mut bit = 1;
    while bit < size {
        for mask in 0..size {
            if mask & bit != 0 {
                let low = values[mask ^ bit].clone();
                values[mask] -= low;
            }
        }
        bit <<= 1;
    }
}
