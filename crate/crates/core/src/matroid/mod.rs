//! Matroids represented by their lattice of cyclic flats.
//!
//! A [`Matroid`] stores the full lattice of cyclic flats together with their ranks.
//! Every other quantity is derived from the rank formula
//!
//! ```text
//! r(X) = min { r(A) + |X - A| : A a cyclic flat }
//! ```
//!
//! which is evaluated lazily and memoized.

mod ground;
mod json;
mod minor;
pub(crate) mod structure;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;

use crate::error::{check_budget, AxiomViolation, Error, Result};
use crate::mask::SubsetMask;

pub use ground::GroundSet;
pub use json::{CyclicFlatJson, MatroidJson};
pub use structure::ConnectedFlats;

/// Ground sets up to this size get a dense rank table on first use.
const AUTO_DENSE: usize = 16;
/// Largest ground set for which a dense rank table may be requested.
pub const DENSE_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicFlat {
    pub set: SubsetMask,
    pub rank: usize,
}

#[derive(Default)]
struct RankCache {
    dense: OnceLock<Arc<[u8]>>,
    memo: RwLock<HashMap<u64, u8>>,
}

impl Clone for RankCache {
    fn clone(&self) -> Self {
        let dense = OnceLock::new();
        if let Some(t) = self.dense.get() {
            let _ = dense.set(Arc::clone(t));
        }
        RankCache {
            dense,
            memo: RwLock::default(),
        }
    }
}

/// A matroid given by its ground set and its full lattice of cyclic flats.
#[derive(Clone)]
pub struct Matroid {
    ground: Arc<GroundSet>,
    zee: Vec<CyclicFlat>,
    rank_total: usize,
    coloops: SubsetMask,
    cache: RankCache,
}

impl std::fmt::Debug for Matroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let flats: Vec<_> = self
            .zee
            .iter()
            .map(|z| (self.ground.labels_of(z.set), z.rank))
            .collect();
        f.debug_struct("Matroid")
            .field("elements", &self.ground.labels())
            .field("cyclic_flats", &flats)
            .finish()
    }
}

/// Checks the cyclic-flat axioms (Z0)-(Z3) and builds the matroid they determine.
pub fn validate_axioms(zee: Vec<CyclicFlat>, ground: GroundSet) -> Result<Matroid> {
    Matroid::new(ground, zee)
}

/// Order-theoretic join and meet tables for a family of sets.
pub(crate) struct LatticeTables {
    pub bottom: usize,
    pub top: usize,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
}

/// Verifies that `sets` is a lattice under inclusion and returns its join/meet tables.
pub(crate) fn lattice_tables(
    sets: &[SubsetMask],
    labels: impl Fn(SubsetMask) -> Vec<String>,
) -> Result<LatticeTables, AxiomViolation> {
    let m = sets.len();
    let bottom = (0..m)
        .find(|&i| sets.iter().all(|&s| sets[i].is_subset(s)))
        .ok_or_else(|| AxiomViolation::z0("no least set", vec![]))?;
    let top = (0..m)
        .find(|&i| sets.iter().all(|&s| s.is_subset(sets[i])))
        .ok_or_else(|| AxiomViolation::z0("no greatest set", vec![]))?;
    let mut join = vec![vec![0; m]; m];
    let mut meet = vec![vec![0; m]; m];
    for i in 0..m {
        for j in i..m {
            let (a, b) = (sets[i], sets[j]);
            let upper: Vec<usize> = (0..m).filter(|&k| (a | b).is_subset(sets[k])).collect();
            let lower: Vec<usize> = (0..m).filter(|&k| sets[k].is_subset(a & b)).collect();
            let least = upper
                .iter()
                .copied()
                .find(|&k| upper.iter().all(|&u| sets[k].is_subset(sets[u])))
                .ok_or_else(|| {
                    AxiomViolation::z0(
                        "pair without a least upper bound",
                        vec![labels(a), labels(b)],
                    )
                })?;
            let greatest = lower
                .iter()
                .copied()
                .find(|&k| lower.iter().all(|&l| sets[l].is_subset(sets[k])))
                .ok_or_else(|| {
                    AxiomViolation::z0(
                        "pair without a greatest lower bound",
                        vec![labels(a), labels(b)],
                    )
                })?;
            join[i][j] = least;
            join[j][i] = least;
            meet[i][j] = greatest;
            meet[j][i] = greatest;
        }
    }
    Ok(LatticeTables {
        bottom,
        top,
        join,
        meet,
    })
}

impl Matroid {
    /// Validates `zee` as the complete lattice of cyclic flats of a matroid on `ground`.
    pub fn new(ground: GroundSet, zee: Vec<CyclicFlat>) -> Result<Matroid> {
        let full = ground.full();
        if zee.is_empty() {
            return Err(Error::Malformed("empty family of cyclic flats".into()));
        }
        for z in &zee {
            if !z.set.is_subset(full) {
                return Err(Error::Malformed(
                    "cyclic flat outside the ground set".into(),
                ));
            }
        }
        for (i, a) in zee.iter().enumerate() {
            if zee[..i].iter().any(|b| b.set == a.set) {
                return Err(Error::Malformed(format!(
                    "cyclic flat {:?} listed twice",
                    ground.labels_of(a.set)
                )));
            }
        }
        let labels = |s: SubsetMask| ground.labels_of(s);
        let sets: Vec<SubsetMask> = zee.iter().map(|z| z.set).collect();
        let lat = lattice_tables(&sets, labels)?;

        let bottom = zee[lat.bottom];
        if bottom.rank != 0 {
            return Err(AxiomViolation::Z1 {
                set: labels(bottom.set),
                rank: bottom.rank,
            }
            .into());
        }
        for x in &zee {
            for y in &zee {
                if x.set.is_proper_subset(y.set) {
                    let rank_gap = y.rank as i64 - x.rank as i64;
                    let size_gap = (y.set - x.set).len();
                    if !(0 < rank_gap && rank_gap < size_gap as i64) {
                        return Err(AxiomViolation::Z2 {
                            lower: labels(x.set),
                            upper: labels(y.set),
                            rank_gap,
                            size_gap,
                        }
                        .into());
                    }
                }
            }
        }
        for i in 0..zee.len() {
            for j in i + 1..zee.len() {
                let (x, y) = (zee[i], zee[j]);
                if x.set.is_subset(y.set) || y.set.is_subset(x.set) {
                    continue;
                }
                let jn = zee[lat.join[i][j]];
                let mt = zee[lat.meet[i][j]];
                let lhs = (jn.rank + mt.rank + ((x.set & y.set) - mt.set).len()) as i64;
                let rhs = (x.rank + y.rank) as i64;
                if lhs > rhs {
                    return Err(AxiomViolation::Z3 {
                        x: labels(x.set),
                        y: labels(y.set),
                        lhs,
                        rhs,
                    }
                    .into());
                }
            }
        }
        let top = zee[lat.top];
        Ok(Matroid::assemble(Arc::new(ground), zee, top))
    }

    fn assemble(ground: Arc<GroundSet>, mut zee: Vec<CyclicFlat>, top: CyclicFlat) -> Matroid {
        let coloops = ground.full() - top.set;
        let rank_total = top.rank + coloops.len();
        zee.sort_by(|a, b| {
            a.set.len().cmp(&b.set.len()).then_with(|| {
                let la = a.set.iter().map(|i| ground.label(i));
                let lb = b.set.iter().map(|i| ground.label(i));
                la.cmp(lb)
            })
        });
        Matroid {
            ground,
            zee,
            rank_total,
            coloops,
            cache: RankCache::default(),
        }
    }

    /// The uniform matroid `U_{r,n}` on labels `"1".."n"`.
    pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
        if r > n {
            return Err(Error::Malformed(format!(
                "U_{{{r},{n}}}: rank exceeds size"
            )));
        }
        let ground = GroundSet::numbered(n)?;
        Ok(Self::uniform_on(ground, r))
    }

    pub(crate) fn uniform_on(ground: GroundSet, r: usize) -> Matroid {
        let n = ground.len();
        let full = ground.full();
        let zee = if r == 0 {
            vec![CyclicFlat { set: full, rank: 0 }]
        } else if r == n {
            vec![CyclicFlat {
                set: SubsetMask::EMPTY,
                rank: 0,
            }]
        } else {
            vec![
                CyclicFlat {
                    set: SubsetMask::EMPTY,
                    rank: 0,
                },
                CyclicFlat { set: full, rank: r },
            ]
        };
        Matroid::new(ground, zee).expect("uniform matroids satisfy the axioms")
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn full(&self) -> SubsetMask {
        self.ground.full()
    }

    /// The cyclic flats in canonical order: by size, then by label list.
    pub fn cyclic_flats(&self) -> &[CyclicFlat] {
        &self.zee
    }

    pub fn rank_total(&self) -> usize {
        self.rank_total
    }

    pub fn coloops(&self) -> SubsetMask {
        self.coloops
    }

    /// The least cyclic flat, which is the set of loops.
    pub fn loops(&self) -> SubsetMask {
        self.zee[0].set
    }

    pub fn labels_of(&self, set: SubsetMask) -> Vec<String> {
        self.ground.labels_of(set)
    }

    fn rank_formula(&self, x: SubsetMask) -> usize {
        self.zee
            .iter()
            .map(|z| z.rank + (x - z.set).len())
            .min()
            .expect("nonempty lattice")
    }

    /// Rank of `x`, evaluated as the minimum of `r(A) + |x - A|` over cyclic flats `A`.
    pub fn rank(&self, x: SubsetMask) -> usize {
        debug_assert!(x.is_subset(self.full()));
        if let Some(t) = self.cache.dense.get() {
            return t[x.0 as usize] as usize;
        }
        if self.len() <= AUTO_DENSE {
            return self.dense_table()[x.0 as usize] as usize;
        }
        if let Some(&r) = self.cache.memo.read().unwrap().get(&x.0) {
            return r as usize;
        }
        let r = self.rank_formula(x);
        self.cache.memo.write().unwrap().insert(x.0, r as u8);
        r
    }

    fn dense_table(&self) -> &Arc<[u8]> {
        self.cache.dense.get_or_init(|| {
            let n = self.len();
            (0..1usize << n)
                .into_par_iter()
                .with_min_len(1 << 12)
                .map(|x| self.rank_formula(SubsetMask(x as u64)) as u8)
                .collect::<Vec<u8>>()
                .into()
        })
    }

    /// Ranks of all `2^n` subsets indexed by mask. Available for `n <= 24`.
    pub fn rank_table(&self) -> Result<Arc<[u8]>> {
        check_budget("dense rank table", self.len(), DENSE_LIMIT)?;
        Ok(Arc::clone(self.dense_table()))
    }

    /// Rank evaluated without consulting or filling the memo.
    pub fn rank_uncached(&self, x: SubsetMask) -> usize {
        self.rank_formula(x)
    }

    pub fn closure(&self, x: SubsetMask) -> SubsetMask {
        let r = self.rank(x);
        (self.full() - x)
            .iter()
            .filter(|&e| self.rank(x.with(e)) == r)
            .fold(x, SubsetMask::with)
    }

    pub fn is_flat(&self, x: SubsetMask) -> bool {
        let r = self.rank(x);
        (self.full() - x).iter().all(|e| self.rank(x.with(e)) > r)
    }

    /// True iff `x` is a union of circuits, i.e. `M|x` has no coloops.
    pub fn is_cyclic(&self, x: SubsetMask) -> bool {
        let r = self.rank(x);
        x.iter().all(|e| self.rank(x.without(e)) == r)
    }

    pub fn is_independent(&self, x: SubsetMask) -> bool {
        self.rank(x) == x.len()
    }

    /// Connectivity function `r(X) + r(E - X) - r(M)`.
    pub fn lambda(&self, x: SubsetMask) -> usize {
        self.rank(x) + self.rank(self.full() - x) - self.rank_total
    }

    /// The dual matroid: cyclic flats are complements, with corank-formula ranks.
    pub fn dual(&self) -> Matroid {
        let full = self.full();
        let zee = self
            .zee
            .iter()
            .map(|z| {
                let set = full - z.set;
                CyclicFlat {
                    set,
                    rank: set.len() + z.rank - self.rank_total,
                }
            })
            .collect();
        Matroid::new((*self.ground).clone(), zee).expect("dual of a valid matroid")
    }

    /// Same ground set and identical cyclic flats with identical ranks.
    pub fn equals(&self, other: &Matroid) -> bool {
        if !self.ground.same_elements(&other.ground) || self.zee.len() != other.zee.len() {
            return false;
        }
        let mut mine: Vec<(u64, usize)> = self.zee.iter().map(|z| (z.set.0, z.rank)).collect();
        let mut theirs: Vec<(u64, usize)> = other
            .zee
            .iter()
            .map(|z| {
                let set = self
                    .ground
                    .translate(&other.ground, z.set)
                    .expect("same elements");
                (set.0, z.rank)
            })
            .collect();
        mine.sort_unstable();
        theirs.sort_unstable();
        mine == theirs
    }

    /// The same matroid with element `i` renamed to `labels[i]`.
    pub fn with_labels<S: Into<String>>(&self, labels: Vec<S>) -> Result<Matroid> {
        let ground = GroundSet::new(labels)?;
        if ground.len() != self.len() {
            return Err(Error::Malformed(
                "relabelling changes the ground set size".into(),
            ));
        }
        Matroid::new(ground, self.zee.clone())
    }

    /// Builds a matroid from trusted parts; debug builds re-validate.
    pub(crate) fn from_trusted(ground: GroundSet, zee: Vec<CyclicFlat>) -> Matroid {
        if cfg!(debug_assertions) {
            return Matroid::new(ground, zee).expect("trusted cyclic flats are valid");
        }
        let top = *zee.iter().max_by_key(|z| z.set.len()).expect("nonempty");
        Matroid::assemble(Arc::new(ground), zee, top)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn set(m: &Matroid, s: &str) -> SubsetMask {
        m.ground().parse_set(s).unwrap()
    }

    #[test]
    fn single_coloop_is_valid() {
        let g = GroundSet::new(["a"]).unwrap();
        let m = validate_axioms(
            vec![CyclicFlat {
                set: SubsetMask::EMPTY,
                rank: 0,
            }],
            g,
        )
        .unwrap();
        assert_eq!(m.rank_total(), 1);
        assert_eq!(m.coloops(), SubsetMask(1));
    }

    #[test]
    fn z2_boundary_rejected() {
        let g = GroundSet::new(["1", "2"]).unwrap();
        let err = validate_axioms(
            vec![
                CyclicFlat {
                    set: SubsetMask::EMPTY,
                    rank: 0,
                },
                CyclicFlat {
                    set: SubsetMask(0b11),
                    rank: 2,
                },
            ],
            g,
        )
        .unwrap_err();
        assert!(
            matches!(err, Error::Axiom(AxiomViolation::Z2 { .. })),
            "{err}"
        );
    }

    #[test]
    fn z0_z1_z3_rejections() {
        let g = GroundSet::numbered(4).unwrap();
        // two incomparable sets, no bottom
        let err = validate_axioms(
            vec![
                CyclicFlat {
                    set: SubsetMask(0b0011),
                    rank: 1,
                },
                CyclicFlat {
                    set: SubsetMask(0b1100),
                    rank: 1,
                },
            ],
            g.clone(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Axiom(AxiomViolation::Z0 { .. })));

        let err = validate_axioms(
            vec![CyclicFlat {
                set: SubsetMask(0b1),
                rank: 1,
            }],
            g.clone(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Axiom(AxiomViolation::Z1 { .. })));

        // two parallel pairs of rank 1 whose join has rank 2 would be fine;
        // demanding rank 3 of the join with rank-1 atoms breaks (Z3)
        let g6 = GroundSet::numbered(6).unwrap();
        let err = validate_axioms(
            vec![
                CyclicFlat {
                    set: SubsetMask::EMPTY,
                    rank: 0,
                },
                CyclicFlat {
                    set: SubsetMask(0b000011),
                    rank: 1,
                },
                CyclicFlat {
                    set: SubsetMask(0b001100),
                    rank: 1,
                },
                CyclicFlat {
                    set: SubsetMask(0b111111),
                    rank: 3,
                },
            ],
            g6,
        )
        .unwrap_err();
        assert!(
            matches!(err, Error::Axiom(AxiomViolation::Z3 { .. })),
            "{err}"
        );
    }

    #[test]
    fn figure_one_ranks() {
        let m = catalog::fig1_m();
        let n = catalog::fig1_n();
        assert_eq!(m.rank(SubsetMask::EMPTY), 0);
        assert_eq!(m.rank(set(&m, "1,2,3")), 2);
        assert_eq!(n.rank(set(&n, "4,5,6")), 3);
        assert_eq!(m.lambda(set(&m, "1,2,3")), 1);
        assert_eq!(n.lambda(set(&n, "1,2,3")), 2);
        assert_eq!(m.lambda(SubsetMask::EMPTY), 0);
        assert!(!m.equals(&n));
    }

    #[test]
    fn closure_and_cyclic() {
        let m = catalog::fig1_m();
        let n = catalog::fig1_n();
        assert_eq!(m.closure(set(&m, "1,2")), set(&m, "1,2,3"));
        assert_eq!(m.closure(SubsetMask::EMPTY), SubsetMask::EMPTY);
        assert_eq!(n.closure(set(&n, "2,3")), set(&n, "1,2,3"));
        assert!(m.is_cyclic(set(&m, "1,2,3")));
        assert!(!m.is_cyclic(set(&m, "1,2")));
        assert!(m.is_cyclic(SubsetMask::EMPTY));
    }

    #[test]
    fn duals() {
        let u = Matroid::uniform(2, 4).unwrap();
        assert!(u.dual().equals(&u));
        let m = catalog::fig1_m();
        let d = m.dual();
        let mut got: Vec<(Vec<String>, usize)> = d
            .cyclic_flats()
            .iter()
            .map(|z| (d.labels_of(z.set), z.rank))
            .collect();
        got.sort();
        let mut want = vec![
            (vec![], 0),
            (vec!["1".into(), "2".into(), "3".into()], 2),
            (vec!["4".into(), "5".into(), "6".into()], 2),
            (["1", "2", "3", "4", "5", "6"].map(String::from).to_vec(), 3),
        ];
        want.sort();
        assert_eq!(got, want);
        let coloop = Matroid::uniform(1, 1).unwrap();
        let loop_ = coloop.dual();
        assert_eq!(loop_.cyclic_flats().len(), 1);
        assert_eq!(loop_.cyclic_flats()[0].set, SubsetMask(1));
        assert_eq!(loop_.rank_total(), 0);
        for (_, m) in catalog::all() {
            assert!(m.dual().dual().equals(&m));
        }
    }

    #[test]
    fn uniform_edge_cases() {
        let u = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u.rank(u.ground().parse_set("1,2,3").unwrap()), 2);
        let loops = Matroid::uniform(0, 3).unwrap();
        assert_eq!(loops.loops(), loops.full());
        let free = Matroid::uniform(3, 3).unwrap();
        assert_eq!(free.coloops(), free.full());
        assert!(Matroid::uniform(3, 2).is_err());
    }

    #[test]
    fn cache_matches_fresh_evaluation() {
        let m = crate::expansion::expand(&catalog::fig2_n(), 2).unwrap().0;
        assert!(m.len() > AUTO_DENSE);
        for x in (0u64..1 << 18).step_by(97) {
            let x = SubsetMask(x);
            assert_eq!(m.rank(x), m.rank_uncached(x));
            assert_eq!(m.rank(x), m.rank_uncached(x));
        }
        let table = m.rank_table().unwrap();
        for x in (0u64..1 << 18).step_by(101) {
            assert_eq!(table[x as usize] as usize, m.rank_uncached(SubsetMask(x)));
        }
    }
}
