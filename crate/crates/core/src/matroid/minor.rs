use std::sync::Arc;

use rayon::prelude::*;

use super::{CyclicFlat, GroundSet, Matroid};
use crate::error::{check_budget, Result};
use crate::mask::{extract, SubsetMask};

/// Most clone blocks a cyclic-flat scan will enumerate unions of.
pub const BLOCK_SCAN_LIMIT: usize = 24;

/// Rank access for hot loops: a dense table when affordable, the formula otherwise.
pub(crate) enum RankOracle<'a> {
    Table(Arc<[u8]>),
    Formula(&'a Matroid),
}

impl RankOracle<'_> {
    #[inline]
    pub fn rank(&self, x: SubsetMask) -> usize {
        match self {
            RankOracle::Table(t) => t[x.0 as usize] as usize,
            RankOracle::Formula(m) => m.rank_uncached(x),
        }
    }
}

impl Matroid {
    pub(crate) fn oracle(&self) -> RankOracle<'_> {
        if self.len() <= 20 || self.cache.dense.get().is_some() {
            RankOracle::Table(self.rank_table().expect("within dense limit"))
        } else {
            RankOracle::Formula(self)
        }
    }

    /// `M \ x`.
    pub fn delete(&self, x: SubsetMask) -> Result<Matroid> {
        self.restrict(self.full() - x)
    }

    /// `M | keep`.
    pub fn restrict(&self, keep: SubsetMask) -> Result<Matroid> {
        if keep == self.full() {
            return Ok(self.clone());
        }
        let blocks = self.blocks_within(keep);
        let oracle = self.oracle();
        let zee = scan_cyclic_flats(keep, &blocks, |u| oracle.rank(u))?;
        Ok(self.minor_from(keep, zee))
    }

    /// `M / x`.
    pub fn contract(&self, x: SubsetMask) -> Result<Matroid> {
        if x.is_empty() {
            return Ok(self.clone());
        }
        let keep = self.full() - x;
        let blocks = self.blocks_within(keep);
        let oracle = self.oracle();
        let rx = oracle.rank(x);
        let zee = scan_cyclic_flats(keep, &blocks, |u| oracle.rank(u | x) - rx)?;
        Ok(self.minor_from(keep, zee))
    }

    fn blocks_within(&self, keep: SubsetMask) -> Vec<SubsetMask> {
        self.clonal_classes()
            .into_iter()
            .map(|c| c & keep)
            .filter(|c| !c.is_empty())
            .collect()
    }

    fn minor_from(&self, keep: SubsetMask, zee: Vec<CyclicFlat>) -> Matroid {
        let ground = self.ground.sub_ground(keep);
        let zee = zee
            .into_iter()
            .map(|z| CyclicFlat {
                set: SubsetMask(extract(z.set, keep)),
                rank: z.rank,
            })
            .collect();
        Matroid::from_trusted(ground, zee)
    }

    /// Builds the matroid with the given rank function by scanning for cyclic flats.
    ///
    /// `blocks` must partition the ground set into sets of mutual clones of the
    /// target matroid; singletons are always safe.
    pub fn from_rank_fn<F>(ground: GroundSet, blocks: &[SubsetMask], rank: F) -> Result<Matroid>
    where
        F: Fn(SubsetMask) -> usize + Sync,
    {
        let zee = scan_cyclic_flats(ground.full(), blocks, rank)?;
        Matroid::new(ground, zee)
    }
}

/// Finds every cyclic flat of the matroid on `keep` with rank function `rank`.
///
/// Clones lie in the same cyclic flats, so only unions of `blocks` are candidates and
/// one representative per block decides flatness and cyclicity.
pub(crate) fn scan_cyclic_flats<F>(
    keep: SubsetMask,
    blocks: &[SubsetMask],
    rank: F,
) -> Result<Vec<CyclicFlat>>
where
    F: Fn(SubsetMask) -> usize + Sync,
{
    check_budget("cyclic-flat block scan", blocks.len(), BLOCK_SCAN_LIMIT)?;
    debug_assert_eq!(blocks.iter().fold(SubsetMask::EMPTY, |a, &b| a | b), keep);
    let b = blocks.len();
    let reps: Vec<usize> = blocks.iter().map(|bl| bl.first().unwrap()).collect();
    let block_masks: Vec<SubsetMask> = blocks.to_vec();
    let union_of = |c: u64| -> SubsetMask {
        SubsetMask(c)
            .iter()
            .fold(SubsetMask::EMPTY, |acc, k| acc | block_masks[k])
    };
    let zee: Vec<CyclicFlat> = (0..1usize << b)
        .into_par_iter()
        .with_min_len(256)
        .filter_map(|c| {
            let c = c as u64;
            let u = union_of(c);
            let ru = rank(u);
            for (k, &r) in reps.iter().enumerate().take(b) {
                if c >> k & 1 == 1 {
                    if rank(u.without(r)) != ru {
                        return None;
                    }
                } else if rank(u.with(r)) == ru {
                    return None;
                }
            }
            Some(CyclicFlat { set: u, rank: ru })
        })
        .collect();
    Ok(zee)
}
