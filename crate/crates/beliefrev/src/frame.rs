//! Frames of discernment, subset bitmasks, partitions and the rough-set
//! upper approximation.
//!
//! A [`Frame`] is an ordered list of world labels; a subset of the frame is a
//! [`SubsetMask`] holding one bit per element. A [`Partition`] fixes the atoms
//! of a Boolean subalgebra of the power set; [`Partition::upper_approximation`]
//! maps a set to the smallest subalgebra element containing it, and
//! [`Partition::class_of`] enumerates the sets sharing that approximation.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};

/// A subset of some frame, stored as a bitmask in label order.
///
/// Masks are plain values; range validation against a frame happens in
/// [`Frame`] and [`Partition`] constructors and operations.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn from_bits(bits: u32) -> Self {
        SubsetMask(bits)
    }

    pub fn singleton(element: usize) -> Self {
        SubsetMask(1 << element)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 32);
        SubsetMask(if n == 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Index into a dense array over the subset lattice.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn card(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, element: usize) -> bool {
        self.0 & (1 << element) != 0
    }

    pub fn union(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersect(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & other.0)
    }

    pub fn minus(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> SubsetMask {
        SubsetMask(!self.0 & SubsetMask::full(n).0)
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: SubsetMask) -> bool {
        self.0 & other.0 != 0
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All submasks of `self` in increasing bit order (carry-rippler walk),
    /// including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = SubsetMask> {
        let set = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let current = next?;
            next = {
                let following = current.wrapping_sub(set) & set;
                if following == 0 {
                    None
                } else {
                    Some(following)
                }
            };
            Some(SubsetMask(current))
        })
    }
}

/// A finite frame of discernment: ordered, pairwise-distinct world labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    labels: Vec<String>,
}

impl Frame {
    /// Largest supported frame. Dense lattice arrays have `2^n` entries, so
    /// the cap keeps every transform within desk-scale memory.
    pub const MAX_ELEMENTS: usize = 24;

    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if labels.len() > Self::MAX_ELEMENTS {
            return Err(Error::FrameTooLarge {
                n: labels.len(),
                max: Self::MAX_ELEMENTS,
            });
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.contains(',') {
                return Err(Error::InvalidLabel { label: label.clone() });
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel { label: label.clone() });
            }
        }
        Ok(Frame { labels })
    }

    /// Frame `a, b, c, ...` of the given size, handy for generators and tests.
    pub fn of_size(n: usize) -> Result<Self> {
        Frame::new((0..n).map(|i| ((b'a' + (i % 26) as u8) as char).to_string()))
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Number of subsets, `2^n`.
    pub fn lattice_size(&self) -> usize {
        1 << self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, element: usize) -> &str {
        &self.labels[element]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.n())
    }

    pub fn check_mask(&self, mask: SubsetMask) -> Result<()> {
        if mask.is_subset_of(self.full_mask()) {
            Ok(())
        } else {
            Err(Error::MaskOutOfRange {
                bits: mask.bits(),
                n: self.n(),
            })
        }
    }

    /// Builds the mask for a list of element labels.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<SubsetMask> {
        let mut mask = SubsetMask::EMPTY;
        for label in labels {
            let i = self
                .index_of(label.as_ref())
                .ok_or_else(|| Error::UnknownLabel {
                    label: label.as_ref().to_string(),
                })?;
            mask = mask.union(SubsetMask::singleton(i));
        }
        Ok(mask)
    }

    pub fn mask_labels(&self, mask: SubsetMask) -> Vec<&str> {
        mask.elements().map(|i| self.label(i)).collect()
    }

    pub fn render_mask(&self, mask: SubsetMask) -> String {
        format!("{{{}}}", self.mask_labels(mask).join(","))
    }
}

/// The atoms of a Boolean subalgebra: nonempty, pairwise disjoint sets
/// covering the frame. Atoms are kept sorted by mask value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    atoms: Vec<SubsetMask>,
}

impl Partition {
    pub fn new(n: usize, mut atoms: Vec<SubsetMask>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyFrame);
        }
        if n > Frame::MAX_ELEMENTS {
            return Err(Error::FrameTooLarge {
                n,
                max: Frame::MAX_ELEMENTS,
            });
        }
        let full = SubsetMask::full(n);
        let mut seen = SubsetMask::EMPTY;
        for atom in &atoms {
            if atom.is_empty() {
                return Err(Error::InvalidPartition {
                    reason: "atoms must be nonempty".to_string(),
                });
            }
            if !atom.is_subset_of(full) {
                return Err(Error::MaskOutOfRange { bits: atom.bits(), n });
            }
            if seen.intersects(*atom) {
                return Err(Error::InvalidPartition {
                    reason: "atoms overlap".to_string(),
                });
            }
            seen = seen.union(*atom);
        }
        if seen != full {
            return Err(Error::InvalidPartition {
                reason: "atoms do not cover the frame".to_string(),
            });
        }
        atoms.sort();
        Ok(Partition { n, atoms })
    }

    /// The one-atom partition `{Ω}`.
    pub fn trivial(n: usize) -> Result<Self> {
        Partition::new(n, vec![SubsetMask::full(n)])
    }

    /// The all-singletons partition, whose subalgebra is the full power set.
    pub fn discrete(n: usize) -> Result<Self> {
        Partition::new(n, (0..n).map(SubsetMask::singleton).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn atoms(&self) -> &[SubsetMask] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// Smallest subalgebra element containing `set`: the union of all atoms
    /// meeting it (rough-set upper approximation). Total; maps `∅` to `∅`.
    pub fn upper_approximation(&self, set: SubsetMask) -> SubsetMask {
        let mut upper = SubsetMask::EMPTY;
        for atom in &self.atoms {
            if atom.intersects(set) {
                upper = upper.union(*atom);
            }
        }
        upper
    }

    /// True when `set` is a union of atoms (an element of the subalgebra).
    pub fn is_subalgebra_element(&self, set: SubsetMask) -> bool {
        self.upper_approximation(set) == set
    }

    /// All nonempty sets sharing `set`'s upper approximation, in mask order.
    ///
    /// These are exactly the subsets of `B(set)` that meet every atom inside
    /// it, so the class has `Π (2^|Bi| - 1)` members over those atoms.
    pub fn class_of(&self, set: SubsetMask) -> Result<Vec<SubsetMask>> {
        if set.is_empty() {
            return Err(Error::EmptySet { context: "class_of" });
        }
        let upper = self.upper_approximation(set);
        let mut class = vec![SubsetMask::EMPTY];
        for atom in self.atoms.iter().filter(|a| a.is_subset_of(upper)) {
            let mut extended = Vec::with_capacity(class.len() * ((1usize << atom.card()) - 1));
            for part in atom.subsets().filter(|s| !s.is_empty()) {
                extended.extend(class.iter().map(|base| base.union(part)));
            }
            class = extended;
        }
        class.sort();
        Ok(class)
    }

    /// The `2^k` unions of atoms, sorted by mask value.
    pub fn subalgebra_elements(&self) -> Vec<SubsetMask> {
        let k = self.atoms.len();
        let mut elements: Vec<SubsetMask> = (0u32..(1 << k))
            .map(|selector| {
                self.atoms
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| selector & (1 << i) != 0)
                    .fold(SubsetMask::EMPTY, |acc, (_, atom)| acc.union(*atom))
            })
            .collect();
        elements.sort();
        elements
    }
}

/// Coarsest partition whose subalgebra contains every given set: elements are
/// grouped by which of the input sets they belong to.
pub fn coarsest_subalgebra(n: usize, sets: &[SubsetMask]) -> Result<Partition> {
    if n == 0 {
        return Err(Error::EmptyFrame);
    }
    let full = SubsetMask::full(n);
    for set in sets {
        if !set.is_subset_of(full) {
            return Err(Error::MaskOutOfRange { bits: set.bits(), n });
        }
    }
    let mut groups: HashMap<Vec<bool>, SubsetMask> = HashMap::new();
    for element in 0..n {
        let signature: Vec<bool> = sets.iter().map(|s| s.contains(element)).collect();
        let atom = groups.entry(signature).or_insert(SubsetMask::EMPTY);
        *atom = atom.union(SubsetMask::singleton(element));
    }
    Partition::new(n, groups.into_values().collect())
}

/// Lazy per-partition cache of [`Partition::class_of`] results, keyed by the
/// upper approximation. Read-only after first use; safe for concurrent readers.
pub struct ClassCache<'p> {
    partition: &'p Partition,
    classes: RwLock<HashMap<SubsetMask, Arc<Vec<SubsetMask>>>>,
}

impl<'p> ClassCache<'p> {
    pub fn new(partition: &'p Partition) -> Self {
        ClassCache {
            partition,
            classes: RwLock::new(HashMap::new()),
        }
    }

    pub fn partition(&self) -> &Partition {
        self.partition
    }

    pub fn class(&self, set: SubsetMask) -> Result<Arc<Vec<SubsetMask>>> {
        if set.is_empty() {
            return Err(Error::EmptySet { context: "class_of" });
        }
        let upper = self.partition.upper_approximation(set);
        if let Some(hit) = self.classes.read().unwrap().get(&upper) {
            return Ok(Arc::clone(hit));
        }
        let class = Arc::new(self.partition.class_of(upper)?);
        let mut write = self.classes.write().unwrap();
        Ok(Arc::clone(write.entry(upper).or_insert(class)))
    }
}
