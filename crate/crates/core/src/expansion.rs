//! The t-expansion `M^t`, its inverse, and matroid union.
//!
//! `M^t` replaces every element `e` by a block `S_e` of `t` mutual clones. Its
//! cyclic flats are the sets `S_A` for cyclic flats `A` of `M`, with rank
//! `t * r(A)`. The first element of `S_e` keeps the label `e`; the others are
//! labelled `e#1`, ..., `e#(t-1)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{check_budget, Error, Result};
use crate::mask::{extract, SubsetMask, MAX_ELEMENTS};
use crate::matroid::{CyclicFlat, GroundSet, Matroid};

/// Largest ground set for which [`matroid_union`] evaluates the union rank formula.
pub const UNION_LIMIT: usize = 22;

/// Label of the `i`-th element of the block of `base`.
pub fn expanded_label(base: &str, i: usize) -> String {
    if i == 0 {
        base.to_string()
    } else {
        format!("{base}#{i}")
    }
}

/// The block structure `e -> S_e` linking `M` to `M^t`.
#[derive(Debug, Clone)]
pub struct ExpansionMap {
    t: usize,
    base: Arc<GroundSet>,
    expanded: Arc<GroundSet>,
    blocks: Vec<SubsetMask>,
    inverse: Vec<usize>,
}

impl ExpansionMap {
    pub fn new(base: &GroundSet, t: usize) -> Result<ExpansionMap> {
        if t == 0 {
            return Err(Error::Malformed("expansion factor must be positive".into()));
        }
        check_budget("t-expansion ground set", t * base.len(), MAX_ELEMENTS)?;
        let labels = base
            .labels()
            .iter()
            .flat_map(|e| (0..t).map(move |i| expanded_label(e, i)));
        let expanded = GroundSet::new(labels)?;
        let blocks = (0..base.len())
            .map(|e| SubsetMask(((1u64 << t) - 1) << (e * t)))
            .collect();
        let inverse = (0..base.len() * t).map(|p| p / t).collect();
        Ok(ExpansionMap {
            t,
            base: Arc::new(base.clone()),
            expanded: Arc::new(expanded),
            blocks,
            inverse,
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn base(&self) -> &GroundSet {
        &self.base
    }

    pub fn expanded(&self) -> &GroundSet {
        &self.expanded
    }

    /// `S_e` for the base element at position `e`.
    pub fn block(&self, e: usize) -> SubsetMask {
        self.blocks[e]
    }

    /// Base element whose block contains expanded position `p`.
    pub fn base_of(&self, p: usize) -> usize {
        self.inverse[p]
    }

    /// `S_X`, the union of the blocks of the elements of `x`.
    pub fn blocks(&self, x: SubsetMask) -> SubsetMask {
        x.iter()
            .fold(SubsetMask::EMPTY, |acc, e| acc | self.blocks[e])
    }

    /// `theta(X)`: base elements whose whole block lies in `x`.
    pub fn theta(&self, x: SubsetMask) -> SubsetMask {
        (0..self.blocks.len())
            .filter(|&e| self.blocks[e].is_subset(x))
            .collect()
    }

    /// Base elements whose block meets `x`.
    pub fn shadow(&self, x: SubsetMask) -> SubsetMask {
        x.iter().map(|p| self.inverse[p]).collect()
    }

    /// `{"t":2,"blocks":{"1":["1","1#1"],...}}`
    pub fn to_json(&self) -> Value {
        let blocks: serde_json::Map<String, Value> = (0..self.base.len())
            .map(|e| {
                (
                    self.base.label(e).to_string(),
                    json!(self.expanded.labels_of(self.blocks[e])),
                )
            })
            .collect();
        json!({ "t": self.t, "blocks": blocks })
    }
}

/// A list of subsets `(A_1, ..., A_k)`, read as the transversal presentation of the
/// union of the rank-1 matroids with non-loop sets `A_i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Presentation {
    pub sets: Vec<SubsetMask>,
}

impl Presentation {
    /// Parses `"1,2,3|4,5,6"`.
    pub fn parse(ground: &GroundSet, text: &str) -> Result<Presentation> {
        let sets = text
            .split('|')
            .filter(|s| !s.trim().is_empty())
            .map(|s| ground.parse_set(s))
            .collect::<Result<_>>()?;
        Ok(Presentation { sets })
    }
}

/// The t-expansion of `m`, with its block map.
pub fn expand(m: &Matroid, t: usize) -> Result<(Matroid, ExpansionMap)> {
    let map = ExpansionMap::new(m.ground(), t)?;
    let zee = m
        .cyclic_flats()
        .iter()
        .map(|z| CyclicFlat {
            set: map.blocks(z.set),
            rank: t * z.rank,
        })
        .collect();
    let expanded = Matroid::new(map.expanded().clone(), zee)?;
    Ok((expanded, map))
}

/// Recovers `N` with `N^t` isomorphic to `m`, choosing the first `|C|/t` elements of
/// every clonal class `C` as representatives.
pub fn deflate(m: &Matroid, t: usize) -> Result<Matroid> {
    if t == 0 {
        return Err(Error::Malformed("expansion factor must be positive".into()));
    }
    let mut reps = SubsetMask::EMPTY;
    for class in m.clonal_classes() {
        if class.len() % t != 0 {
            return Err(Error::NotATExpansion(format!(
                "clonal class {:?} has size {}, not divisible by {t}",
                m.labels_of(class),
                class.len()
            )));
        }
        reps |= class.iter().take(class.len() / t).collect();
    }
    let mut zee = Vec::with_capacity(m.cyclic_flats().len());
    for z in m.cyclic_flats() {
        if z.rank % t != 0 {
            return Err(Error::NotATExpansion(format!(
                "cyclic flat {:?} has rank {}, not divisible by {t}",
                m.labels_of(z.set),
                z.rank
            )));
        }
        zee.push(CyclicFlat {
            set: SubsetMask(extract(z.set & reps, reps)),
            rank: z.rank / t,
        });
    }
    let ground = GroundSet::new(m.labels_of(reps))?;
    Matroid::new(ground, zee).map_err(|e| Error::NotATExpansion(e.to_string()))
}

/// `M_1 v M_2 v ... v M_k` on a common ground set.
///
/// The union rank `min { sum_i r_i(Y) + |X - Y| : Y subset of X }` is computed for
/// every `X` by the recurrence `h(X) = min(g(X), min_x h(X - x) + 1)`.
pub fn matroid_union(parts: &[Matroid]) -> Result<Matroid> {
    let first = parts
        .first()
        .ok_or_else(|| Error::Malformed("matroid union of no matroids".into()))?;
    if parts
        .iter()
        .any(|p| p.ground().labels() != first.ground().labels())
    {
        return Err(Error::GroundMismatch);
    }
    let n = first.len();
    check_budget("matroid union ground set", n, UNION_LIMIT)?;
    let tables = parts
        .iter()
        .map(Matroid::rank_table)
        .collect::<Result<Vec<_>>>()?;
    let size = 1usize << n;
    let mut h: Vec<u16> = (0..size)
        .map(|x| tables.iter().map(|t| t[x] as u16).sum())
        .collect();
    for x in 1..size {
        let mut best = h[x];
        let mut rest = x;
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            best = best.min(h[x ^ low] + 1);
            rest ^= low;
        }
        h[x] = best;
    }
    let blocks = common_clone_blocks(parts);
    Matroid::from_rank_fn(first.ground().clone(), &blocks, |x| {
        h[x.0 as usize] as usize
    })
}

/// Coarsest partition refining the clonal classes of every part.
fn common_clone_blocks(parts: &[Matroid]) -> Vec<SubsetMask> {
    let class_of: Vec<Vec<usize>> = parts
        .iter()
        .map(|p| {
            let mut idx = vec![0; p.len()];
            for (k, c) in p.clonal_classes().iter().enumerate() {
                for e in c.iter() {
                    idx[e] = k;
                }
            }
            idx
        })
        .collect();
    let mut groups: BTreeMap<Vec<usize>, SubsetMask> = BTreeMap::new();
    for e in parts[0].full().iter() {
        let key: Vec<usize> = class_of.iter().map(|c| c[e]).collect();
        let g = groups.entry(key).or_default();
        *g = g.with(e);
    }
    let mut out: Vec<SubsetMask> = groups.into_values().collect();
    out.sort_by_key(|b| b.first());
    out
}

/// Builds `M^t` as the union of the matroids `M_{i,j}` obtained from each part `M_i`
/// by adding the elements of `S_e - e` parallel to `e` (or as loops when `e` is a
/// loop of `M_i`), taking `t` copies of each.
pub fn expand_via_union(m: &Matroid, parts: &[Matroid], t: usize) -> Result<Matroid> {
    let joined = matroid_union(parts)?;
    if !joined.equals(m) {
        return Err(Error::DecompositionMismatch);
    }
    let map = ExpansionMap::new(m.ground(), t)?;
    check_budget(
        "matroid union ground set",
        map.expanded().len(),
        UNION_LIMIT,
    )?;
    let block_list: Vec<SubsetMask> = (0..m.len()).map(|e| map.block(e)).collect();
    let mut lifted = Vec::with_capacity(parts.len() * t);
    for part in parts {
        let part = align(part, m)?;
        let extended = Matroid::from_rank_fn(map.expanded().clone(), &block_list, |x| {
            part.rank(map.shadow(x))
        })?;
        for _ in 0..t {
            lifted.push(extended.clone());
        }
    }
    matroid_union(&lifted)
}

/// `part` re-expressed with `m`'s element order.
fn align(part: &Matroid, m: &Matroid) -> Result<Matroid> {
    if part.ground().labels() == m.ground().labels() {
        return Ok(part.clone());
    }
    if !part.ground().same_elements(m.ground()) {
        return Err(Error::GroundMismatch);
    }
    let zee = part
        .cyclic_flats()
        .iter()
        .map(|z| CyclicFlat {
            set: m
                .ground()
                .mask_of(&part.labels_of(z.set))
                .expect("same elements"),
            rank: z.rank,
        })
        .collect();
    Matroid::new(m.ground().clone(), zee)
}

/// `t` copies of `S_{A_i}` for every set `A_i` of `p`, in order.
pub fn expand_presentation(p: &Presentation, map: &ExpansionMap) -> Presentation {
    Presentation {
        sets: p
            .sets
            .iter()
            .flat_map(|&a| std::iter::repeat_n(map.blocks(a), map.t()))
            .collect(),
    }
}
