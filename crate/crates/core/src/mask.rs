use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, BitXor, Sub};

/// Largest ground set a [`SubsetMask`] can index.
pub const MAX_ELEMENTS: usize = 62;

/// A subset of a ground set, stored as a bit mask over element positions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(pub u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// The mask with positions `0..n` set.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        SubsetMask((1u64 << n) - 1)
    }

    #[inline]
    pub fn singleton(i: usize) -> Self {
        SubsetMask(1u64 << i)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        SubsetMask(self.0 | 1u64 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        SubsetMask(self.0 & !(1u64 << i))
    }

    #[inline]
    pub fn is_subset(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_proper_subset(self, other: SubsetMask) -> bool {
        self.is_subset(other) && self != other
    }

    #[inline]
    pub fn intersects(self, other: SubsetMask) -> bool {
        self.0 & other.0 != 0
    }

    /// Position of the lowest set bit.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Positions of set bits in increasing order.
    pub fn iter(self) -> Positions {
        Positions(self.0)
    }

    /// All submasks of `self`, including `self` and the empty set, in decreasing order.
    pub fn submasks(self) -> Submasks {
        Submasks {
            whole: self.0,
            next: Some(self.0),
        }
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl BitOr for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn bitor(self, rhs: Self) -> Self {
        SubsetMask(self.0 | rhs.0)
    }
}

impl BitOrAssign for SubsetMask {
    #[inline]
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn bitand(self, rhs: Self) -> Self {
        SubsetMask(self.0 & rhs.0)
    }
}

impl BitAndAssign for SubsetMask {
    #[inline]
    fn bitand_assign(&mut self, rhs: Self) {
        self.0 &= rhs.0;
    }
}

impl BitXor for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn bitxor(self, rhs: Self) -> Self {
        SubsetMask(self.0 ^ rhs.0)
    }
}

/// Set difference.
impl Sub for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        SubsetMask(self.0 & !rhs.0)
    }
}

impl FromIterator<usize> for SubsetMask {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(SubsetMask::EMPTY, SubsetMask::with)
    }
}

pub struct Positions(u64);

impl Iterator for Positions {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Positions {}

pub struct Submasks {
    whole: u64,
    next: Option<u64>,
}

impl Iterator for Submasks {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & self.whole)
        };
        Some(SubsetMask(cur))
    }
}

/// Spreads the low `mask.len()` bits of `compact` onto the positions of `mask`.
#[inline]
pub fn deposit(compact: u64, mask: SubsetMask) -> SubsetMask {
    let mut out = 0u64;
    let mut m = mask.0;
    let mut k = 0;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if compact >> k & 1 == 1 {
            out |= low;
        }
        m ^= low;
        k += 1;
    }
    SubsetMask(out)
}

/// Inverse of [`deposit`]: gathers the bits of `x` at the positions of `mask`.
#[inline]
pub fn extract(x: SubsetMask, mask: SubsetMask) -> u64 {
    let mut out = 0u64;
    for (k, i) in mask.iter().enumerate() {
        if x.contains(i) {
            out |= 1 << k;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submasks_cover_power_set() {
        let m = SubsetMask(0b1011);
        let subs: Vec<_> = m.submasks().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset(m)));
        assert_eq!(subs[0], m);
        assert_eq!(*subs.last().unwrap(), SubsetMask::EMPTY);
    }

    #[test]
    fn deposit_extract_inverse() {
        let mask = SubsetMask(0b1101_0010);
        for c in 0..16u64 {
            let d = deposit(c, mask);
            assert!(d.is_subset(mask));
            assert_eq!(extract(d, mask), c);
        }
    }

    #[test]
    fn positions_in_order() {
        let v: Vec<_> = SubsetMask(0b10_0101).iter().collect();
        assert_eq!(v, vec![0, 2, 5]);
        assert_eq!(SubsetMask::full(62).len(), 62);
    }
}
