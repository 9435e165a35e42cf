//! Subsets of a finite universe as fixed-width bit vectors.
//!
//! A [`SubsetMask`] is a subset of `{0, .., n-1}` for a declared width `n`.
//! Masks double as points of the poset `(2^S, ⊆)`: the numeric value of the
//! bit pattern indexes the point, and `⊆` is the partial order.

use std::cmp::Ordering;
use std::fmt;

use smallvec::{smallvec, SmallVec};

const BLOCK_BITS: usize = 64;

/// A subset of a universe `{0, .., width-1}`, stored as a bit vector.
///
/// All binary operations require equal widths; mixing widths is a caller bug
/// and panics. Boundary APIs that accept external data validate widths first
/// and return [`crate::Error::WidthMismatch`](crate::Error).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    width: usize,
    blocks: SmallVec<[u64; 1]>,
}

fn block_count(width: usize) -> usize {
    width.div_ceil(BLOCK_BITS)
}

impl SubsetMask {
    /// The empty subset of a `width`-element universe.
    pub fn empty(width: usize) -> Self {
        SubsetMask {
            width,
            blocks: smallvec![0; block_count(width)],
        }
    }

    /// The full universe `{0, .., width-1}`.
    pub fn full(width: usize) -> Self {
        let mut mask = Self::empty(width);
        for (i, block) in mask.blocks.iter_mut().enumerate() {
            let bits_here = (width - i * BLOCK_BITS).min(BLOCK_BITS);
            *block = if bits_here == BLOCK_BITS {
                u64::MAX
            } else {
                (1u64 << bits_here) - 1
            };
        }
        mask
    }

    /// The singleton `{element}`. Panics if `element >= width`.
    pub fn singleton(width: usize, element: usize) -> Self {
        let mut mask = Self::empty(width);
        mask.insert(element);
        mask
    }

    /// Builds a subset from element indices. Panics on out-of-range elements.
    pub fn from_elements<I: IntoIterator<Item = usize>>(width: usize, elements: I) -> Self {
        let mut mask = Self::empty(width);
        for e in elements {
            mask.insert(e);
        }
        mask
    }

    /// Interprets `index` as a bit pattern over a `width`-bit universe.
    ///
    /// Inverse of [`SubsetMask::index`]; requires `width <= 63`.
    pub fn from_index(width: usize, index: usize) -> Self {
        assert!(width <= 63, "from_index requires width <= 63");
        assert!(index < (1usize << width), "index out of range for width");
        SubsetMask {
            width,
            blocks: smallvec![index as u64; 1.max(block_count(width))],
        }
    }

    /// The numeric value of the bit pattern; requires `width <= 63`.
    ///
    /// Used to identify a subset with a vertex of a graph on `2^width` nodes.
    pub fn index(&self) -> usize {
        assert!(self.width <= 63, "index requires width <= 63");
        if self.blocks.is_empty() {
            0
        } else {
            self.blocks[0] as usize
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of elements in the subset.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.width
    }

    /// Membership test; total (out-of-range elements are never members).
    pub fn contains(&self, element: usize) -> bool {
        element < self.width && self.blocks[element / BLOCK_BITS] & (1 << (element % BLOCK_BITS)) != 0
    }

    /// Adds an element. Panics if `element >= width`.
    pub fn insert(&mut self, element: usize) {
        assert!(
            element < self.width,
            "element {element} out of range for width {}",
            self.width
        );
        self.blocks[element / BLOCK_BITS] |= 1 << (element % BLOCK_BITS);
    }

    pub fn remove(&mut self, element: usize) {
        if element < self.width {
            self.blocks[element / BLOCK_BITS] &= !(1 << (element % BLOCK_BITS));
        }
    }

    fn assert_same_width(&self, other: &Self) {
        assert_eq!(
            self.width, other.width,
            "mask width mismatch: {} vs {}",
            self.width, other.width
        );
    }

    pub fn union(&self, other: &Self) -> Self {
        self.assert_same_width(other);
        self.zip_blocks(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.assert_same_width(other);
        self.zip_blocks(other, |a, b| a & b)
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &Self) -> Self {
        self.assert_same_width(other);
        self.zip_blocks(other, |a, b| a & !b)
    }

    /// Complement within the declared universe.
    pub fn complement(&self) -> Self {
        self.zip_blocks(&Self::full(self.width), |a, b| !a & b)
    }

    fn zip_blocks(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        SubsetMask {
            width: self.width,
            blocks: self
                .blocks
                .iter()
                .zip(other.blocks.iter())
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.assert_same_width(other);
        self.blocks
            .iter()
            .zip(other.blocks.iter())
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint_from(&self, other: &Self) -> bool {
        self.assert_same_width(other);
        self.blocks
            .iter()
            .zip(other.blocks.iter())
            .all(|(&a, &b)| a & b == 0)
    }

    /// Smallest element, if any.
    pub fn min_element(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Iterates over elements in ascending order.
    pub fn iter(&self) -> Elements<'_> {
        Elements {
            mask: self,
            block: 0,
            bits: self.blocks.first().copied().unwrap_or(0),
        }
    }
}

/// Ascending numeric order of the bit pattern (masks of different widths
/// order by width first). This is the canonical member order of families.
impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width
            .cmp(&other.width)
            .then_with(|| self.blocks.iter().rev().cmp(other.blocks.iter().rev()))
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders as `{0,2,5}` with 0-based element indices.
impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Iterator over the elements of a [`SubsetMask`].
pub struct Elements<'a> {
    mask: &'a SubsetMask,
    block: usize,
    bits: u64,
}

impl Iterator for Elements<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.bits == 0 {
            self.block += 1;
            if self.block >= self.mask.blocks.len() {
                return None;
            }
            self.bits = self.mask.blocks[self.block];
        }
        let low = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(self.block * BLOCK_BITS + low)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra_matches_definitions() {
        let a = SubsetMask::from_elements(8, [0, 1, 2, 3]);
        let b = SubsetMask::from_elements(8, [3, 4]);
        assert_eq!(a.union(&b), SubsetMask::from_elements(8, [0, 1, 2, 3, 4]));
        assert_eq!(a.intersection(&b), SubsetMask::singleton(8, 3));
        assert_eq!(a.difference(&b), SubsetMask::from_elements(8, [0, 1, 2]));
        assert_eq!(
            a.complement(),
            SubsetMask::from_elements(8, [4, 5, 6, 7])
        );
        assert!(SubsetMask::singleton(8, 3).is_subset_of(&a));
        assert!(!a.is_subset_of(&b));
    }

    #[test]
    fn wide_masks_cross_block_boundaries() {
        let mut m = SubsetMask::empty(130);
        m.insert(0);
        m.insert(63);
        m.insert(64);
        m.insert(129);
        assert_eq!(m.len(), 4);
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(m.complement().len(), 126);
        assert!(m.is_subset_of(&SubsetMask::full(130)));
    }

    #[test]
    fn canonical_order_is_numeric() {
        let a = SubsetMask::from_index(5, 7);
        let b = SubsetMask::from_index(5, 14);
        assert!(a < b);
        let lo = SubsetMask::singleton(130, 3);
        let hi = SubsetMask::singleton(130, 100);
        assert!(lo < hi);
    }

    #[test]
    fn index_round_trip() {
        for v in 0..32 {
            assert_eq!(SubsetMask::from_index(5, v).index(), v);
        }
    }

    #[test]
    fn display_lists_elements() {
        assert_eq!(SubsetMask::from_elements(6, [1, 3]).to_string(), "{1,3}");
        assert_eq!(SubsetMask::empty(6).to_string(), "{}");
    }
}
