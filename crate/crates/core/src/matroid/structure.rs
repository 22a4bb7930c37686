use std::collections::{BTreeMap, HashSet};

use super::Matroid;
use crate::error::{Error, Result};
use crate::mask::SubsetMask;

/// Most flats a single enumeration may produce.
pub const FLAT_ENUMERATION_LIMIT: usize = 1 << 22;

/// Connected flats of the loopless matroid obtained by deleting `stripped_loops`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectedFlats {
    pub stripped_loops: SubsetMask,
    pub flats: Vec<SubsetMask>,
}

impl ConnectedFlats {
    /// Each flat paired with whether it has at least two elements.
    pub fn flagged(&self) -> impl Iterator<Item = (SubsetMask, bool)> + '_ {
        self.flats.iter().map(|&f| (f, f.len() >= 2))
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.flats.iter().copied().filter(|f| f.len() >= 2)
    }
}

impl Matroid {
    /// Partition of the ground set by membership pattern in the cyclic flats.
    pub fn clonal_classes(&self) -> Vec<SubsetMask> {
        let mut classes: BTreeMap<Vec<bool>, SubsetMask> = BTreeMap::new();
        for e in self.full().iter() {
            let pattern: Vec<bool> = self.zee.iter().map(|z| z.set.contains(e)).collect();
            let c = classes.entry(pattern).or_default();
            *c = c.with(e);
        }
        let mut out: Vec<SubsetMask> = classes.into_values().collect();
        out.sort_by_key(|c| c.first());
        out
    }

    /// Connected components, ordered by least element.
    pub fn components(&self) -> Vec<SubsetMask> {
        let oracle = self.oracle();
        components_by_rank(self.full(), |x| oracle.rank(x))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// All nonempty flats `F` of `M \ L` (`L` the loops) with `M|F` connected.
    ///
    /// Connected flats with two or more elements are cyclic, so candidates come
    /// from the lattice of cyclic flats; the rest are single-element flats.
    pub fn connected_flats(&self) -> ConnectedFlats {
        let loops = self.loops();
        let mut flats = Vec::new();
        for e in (self.full() - loops).iter() {
            if self.closure(SubsetMask::singleton(e)) == loops.with(e) {
                flats.push(SubsetMask::singleton(e));
            }
        }
        for z in &self.zee {
            let f = z.set - loops;
            if f.len() >= 2 && components_by_rank(f, |x| self.rank(x)).len() == 1 {
                flats.push(f);
            }
        }
        flats.sort_by_key(|f| (f.len(), f.0));
        ConnectedFlats {
            stripped_loops: loops,
            flats,
        }
    }

    /// All flats of rank `k`, in increasing mask order.
    pub fn flats_of_rank(&self, k: usize) -> Result<Vec<SubsetMask>> {
        let oracle = self.oracle();
        let full = self.full();
        let closure = |x: SubsetMask| -> SubsetMask {
            let r = oracle.rank(x);
            (full - x)
                .iter()
                .filter(|&e| oracle.rank(x.with(e)) == r)
                .fold(x, SubsetMask::with)
        };
        let mut level: Vec<SubsetMask> = vec![closure(SubsetMask::EMPTY)];
        for _ in 0..k.min(self.rank_total) {
            let mut next: HashSet<SubsetMask> = HashSet::new();
            for &f in &level {
                for e in (full - f).iter() {
                    next.insert(closure(f.with(e)));
                }
                if next.len() > FLAT_ENUMERATION_LIMIT {
                    return Err(Error::BudgetExceeded {
                        what: "flat enumeration",
                        size: next.len(),
                        limit: FLAT_ENUMERATION_LIMIT,
                    });
                }
            }
            level = next.into_iter().collect();
        }
        if k > self.rank_total {
            return Ok(vec![]);
        }
        level.sort_unstable();
        Ok(level)
    }

    /// Flats of rank `r(M) - 1`; empty when `r(M) = 0`.
    pub fn hyperplanes(&self) -> Result<Vec<SubsetMask>> {
        match self.rank_total {
            0 => Ok(vec![]),
            r => self.flats_of_rank(r - 1),
        }
    }
}

/// Components of the matroid on `within` with rank function `rank`.
///
/// Uses the fundamental-circuit graph of a greedy basis: two elements share a
/// component exactly when they are joined in that graph.
pub(crate) fn components_by_rank(
    within: SubsetMask,
    rank: impl Fn(SubsetMask) -> usize,
) -> Vec<SubsetMask> {
    let mut basis = SubsetMask::EMPTY;
    for e in within.iter() {
        if rank(basis.with(e)) > basis.len() {
            basis = basis.with(e);
        }
    }
    let mut parent: Vec<usize> = (0..64).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let size = basis.len();
    for x in (within - basis).iter() {
        for b in basis.iter() {
            if rank(basis.without(b).with(x)) == size {
                let (rx, rb) = (find(&mut parent, x), find(&mut parent, b));
                parent[rx] = rb;
            }
        }
    }
    let mut groups: BTreeMap<usize, SubsetMask> = BTreeMap::new();
    for e in within.iter() {
        let root = find(&mut parent, e);
        let g = groups.entry(root).or_default();
        *g = g.with(e);
    }
    let mut out: Vec<SubsetMask> = groups.into_values().collect();
    out.sort_by_key(|c| c.first());
    out
}
