use serde_json::{json, Value};

use crate::error::{check_budget, Error, Result};
use crate::expansion::ExpansionMap;
use crate::mask::SubsetMask;
use crate::matroid::structure::components_by_rank;
use crate::matroid::{GroundSet, Matroid};

/// Largest ground set for [`positroid_search`].
pub const SEARCH_LIMIT: usize = 9;

/// A linear order on the ground set, as a sequence of element positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearOrder {
    seq: Vec<usize>,
}

impl LinearOrder {
    pub fn new(seq: Vec<usize>, n: usize) -> Result<LinearOrder> {
        let mut seen = SubsetMask::EMPTY;
        for &e in &seq {
            if e >= n || seen.contains(e) {
                return Err(Error::Malformed(
                    "order is not a permutation of the ground set".into(),
                ));
            }
            seen = seen.with(e);
        }
        if seq.len() != n {
            return Err(Error::Malformed("order misses ground elements".into()));
        }
        Ok(LinearOrder { seq })
    }

    pub fn identity(n: usize) -> LinearOrder {
        LinearOrder {
            seq: (0..n).collect(),
        }
    }

    /// Parses a comma-separated list of labels.
    pub fn parse(ground: &GroundSet, text: &str) -> Result<LinearOrder> {
        let seq = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|l| {
                ground
                    .position(l)
                    .ok_or_else(|| Error::UnknownLabel(l.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        LinearOrder::new(seq, ground.len())
    }

    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    pub fn labels(&self, ground: &GroundSet) -> Vec<String> {
        self.seq
            .iter()
            .map(|&e| ground.label(e).to_string())
            .collect()
    }

    pub fn rotated(&self, k: usize) -> LinearOrder {
        let mut seq = self.seq.clone();
        if !seq.is_empty() {
            let k = k % seq.len();
            seq.rotate_left(k);
        }
        LinearOrder { seq }
    }

    pub fn reversed(&self) -> LinearOrder {
        LinearOrder {
            seq: self.seq.iter().rev().copied().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositroidVerdict {
    /// A connected flat `F` and a component `K` of `M/F` that no arc avoiding `F` contains.
    pub violation: Option<(SubsetMask, SubsetMask)>,
}

impl PositroidVerdict {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }

    pub fn to_json(&self, m: &Matroid) -> Value {
        match self.violation {
            None => json!({ "positroid_order": true }),
            Some((f, k)) => json!({
                "positroid_order": false,
                "flat": m.labels_of(f),
                "component": m.labels_of(k),
            }),
        }
    }
}

/// Pairs `(F, K)`: `F` a proper connected flat with `|F| >= 2` and `K` a component
/// of `M/F` with `|K| >= 2`.
fn interval_constraints(m: &Matroid) -> Result<Vec<(SubsetMask, SubsetMask)>> {
    if !m.loops().is_empty() {
        return Err(Error::HasLoops(m.labels_of(m.loops())));
    }
    let full = m.full();
    let mut out = Vec::new();
    for f in m.connected_flats().nontrivial() {
        if f == full {
            continue;
        }
        let rf = m.rank(f);
        for k in components_by_rank(full - f, |x| m.rank(x | f) - rf) {
            if k.len() >= 2 {
                out.push((f, k));
            }
        }
    }
    Ok(out)
}

/// Whether `k` lies in one maximal run of the cyclic order avoiding `f`.
fn within_one_arc(order: &[usize], f: SubsetMask, k: SubsetMask) -> bool {
    let n = order.len();
    let Some(start) = order.iter().position(|&e| f.contains(e)) else {
        return true;
    };
    let mut arc = 0;
    let mut seen_arc = None;
    for i in 1..=n {
        let e = order[(start + i) % n];
        if f.contains(e) {
            arc += 1;
        } else if k.contains(e) {
            match seen_arc {
                None => seen_arc = Some(arc),
                Some(a) if a != arc => return false,
                _ => {}
            }
        }
    }
    true
}

fn first_violation(
    constraints: &[(SubsetMask, SubsetMask)],
    order: &[usize],
) -> Option<(SubsetMask, SubsetMask)> {
    constraints
        .iter()
        .copied()
        .find(|&(f, k)| !within_one_arc(order, f, k))
}

/// Checks the cyclic interval property of `order` for a loopless matroid.
pub fn is_positroid_order(m: &Matroid, order: &LinearOrder) -> Result<PositroidVerdict> {
    if order.seq.len() != m.len() {
        return Err(Error::Malformed(
            "order length differs from the ground set".into(),
        ));
    }
    let constraints = interval_constraints(m)?;
    Ok(PositroidVerdict {
        violation: first_violation(&constraints, &order.seq),
    })
}

/// A positroid order, found by trying one order per class under rotation and reversal.
pub fn positroid_search(m: &Matroid) -> Result<Option<LinearOrder>> {
    let n = m.len();
    check_budget("positroid search ground set", n, SEARCH_LIMIT)?;
    let constraints = interval_constraints(m)?;
    if n <= 2 {
        return Ok(Some(LinearOrder::identity(n)));
    }
    // element 0 first; the rest permuted with the second entry below the last
    let mut rest: Vec<usize> = (1..n).collect();
    loop {
        if rest[0] < rest[rest.len() - 1] {
            let mut seq = Vec::with_capacity(n);
            seq.push(0);
            seq.extend_from_slice(&rest);
            if first_violation(&constraints, &seq).is_none() {
                return Ok(Some(LinearOrder { seq }));
            }
        }
        if !next_permutation(&mut rest) {
            return Ok(None);
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Replaces each element of a positroid order of `M` by its block `e, e#1, ...`.
pub fn expansion_positroid_order(
    m: &Matroid,
    order: &LinearOrder,
    map: &ExpansionMap,
) -> Result<LinearOrder> {
    if !is_positroid_order(m, order)?.holds() {
        return Err(Error::InputOrderNotPositroid(
            order.labels(m.ground()).join(","),
        ));
    }
    let seq = order
        .seq
        .iter()
        .flat_map(|&e| map.block(e).iter())
        .collect();
    Ok(LinearOrder { seq })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::expansion::{deflate, expand};
    use crate::random;

    fn order(m: &Matroid, text: &str) -> LinearOrder {
        LinearOrder::parse(m.ground(), text).unwrap()
    }

    #[test]
    fn figure_one_orders() {
        let m = catalog::fig1_m();
        assert!(is_positroid_order(&m, &order(&m, "1,2,3,4,5,6"))
            .unwrap()
            .holds());
        let n = catalog::fig1_n();
        // {1,4,5} is a connected flat and {2,3,6} is parallel in the contraction,
        // but 6 is cut off from 2,3 by the positions of 4 and 5
        let (f, k) = is_positroid_order(&n, &order(&n, "1,2,3,4,5,6"))
            .unwrap()
            .violation
            .unwrap();
        assert_eq!(
            (n.labels_of(f), n.labels_of(k)),
            (
                vec!["1".to_string(), "4".into(), "5".into()],
                vec!["2".to_string(), "3".into(), "6".into()]
            )
        );
        assert!(is_positroid_order(&n, &order(&n, "2,3,1,4,5,6"))
            .unwrap()
            .holds());
        let v = is_positroid_order(&n, &order(&n, "1,4,2,5,3,6")).unwrap();
        let (f, k) = v.violation.unwrap();
        assert_eq!(n.labels_of(f), vec!["1", "2", "3"]);
        assert_eq!(n.labels_of(k), vec!["4", "5", "6"]);
    }

    #[test]
    fn loops_rejected() {
        let m = Matroid::uniform(0, 2).unwrap();
        assert!(matches!(
            is_positroid_order(&m, &LinearOrder::identity(2)),
            Err(Error::HasLoops(_))
        ));
        assert!(matches!(positroid_search(&m), Err(Error::HasLoops(_))));
    }

    #[test]
    fn crossing_parallel_pairs() {
        // two parallel classes {1,2} and {3,4}: interleaving them breaks the property
        let m = catalog::by_name("U1,2").unwrap();
        let sum = crate::Matroid::new(
            GroundSet::numbered(4).unwrap(),
            vec![
                crate::CyclicFlat {
                    set: SubsetMask::EMPTY,
                    rank: 0,
                },
                crate::CyclicFlat {
                    set: SubsetMask(0b0011),
                    rank: 1,
                },
                crate::CyclicFlat {
                    set: SubsetMask(0b1100),
                    rank: 1,
                },
                crate::CyclicFlat {
                    set: SubsetMask(0b1111),
                    rank: 2,
                },
            ],
        )
        .unwrap();
        assert_eq!(m.len(), 2);
        assert!(is_positroid_order(&sum, &order(&sum, "1,2,3,4"))
            .unwrap()
            .holds());
        assert!(!is_positroid_order(&sum, &order(&sum, "1,3,2,4"))
            .unwrap()
            .holds());
    }

    #[test]
    fn searches() {
        for (name, m) in catalog::all() {
            let found = positroid_search(&m).unwrap();
            if let Some(o) = &found {
                assert!(is_positroid_order(&m, o).unwrap().holds(), "{name}");
            }
            if name == "fig1_M" {
                assert!(found.is_some());
            }
        }
        let u = Matroid::uniform(3, 6).unwrap();
        assert_eq!(
            positroid_search(&u).unwrap(),
            Some(LinearOrder::identity(6))
        );
        assert!(matches!(
            positroid_search(&Matroid::uniform(2, 10).unwrap()),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn invariant_under_rotation_and_reversal() {
        use rand::seq::SliceRandom;
        let mut rng = random::rng(47);
        for _ in 0..40 {
            let m = random::random_matroid(&mut rng, 7);
            if !m.loops().is_empty() {
                continue;
            }
            let mut seq: Vec<usize> = (0..m.len()).collect();
            seq.shuffle(&mut rng);
            let o = LinearOrder::new(seq, m.len()).unwrap();
            let base = is_positroid_order(&m, &o).unwrap().holds();
            for k in 0..m.len() {
                assert_eq!(is_positroid_order(&m, &o.rotated(k)).unwrap().holds(), base);
                assert_eq!(
                    is_positroid_order(&m, &o.rotated(k).reversed())
                        .unwrap()
                        .holds(),
                    base
                );
            }
        }
    }

    #[test]
    fn search_agrees_with_all_orders() {
        let mut rng = random::rng(53);
        let mut checked = 0;
        while checked < 25 {
            let m = random::random_matroid(&mut rng, 6);
            if !m.loops().is_empty() {
                continue;
            }
            checked += 1;
            let mut seq: Vec<usize> = (0..m.len()).collect();
            let mut any = false;
            loop {
                any |= is_positroid_order(&m, &LinearOrder::new(seq.clone(), m.len()).unwrap())
                    .unwrap()
                    .holds();
                if !next_permutation(&mut seq) {
                    break;
                }
            }
            assert_eq!(positroid_search(&m).unwrap().is_some(), any);
        }
    }

    #[test]
    fn expansion_orders() {
        let m = catalog::fig1_m();
        let o = order(&m, "1,2,3,4,5,6");
        let (m2, map) = expand(&m, 2).unwrap();
        let o2 = expansion_positroid_order(&m, &o, &map).unwrap();
        assert_eq!(o2.sequence().len(), 12);
        assert_eq!(o2.labels(m2.ground())[..3], ["1", "1#1", "2"]);
        assert!(is_positroid_order(&m2, &o2).unwrap().holds());
        let (_, map1) = expand(&m, 1).unwrap();
        assert_eq!(expansion_positroid_order(&m, &o, &map1).unwrap(), o);

        let g = catalog::fig2_m();
        let (g2, map) = expand(&g, 2).unwrap();
        let og = expansion_positroid_order(&g, &LinearOrder::identity(9), &map).unwrap();
        assert!(is_positroid_order(&g2, &og).unwrap().holds());

        let n = catalog::fig1_n();
        let bad = order(&n, "1,4,2,5,3,6");
        let (_, mapn) = expand(&n, 2).unwrap();
        assert!(matches!(
            expansion_positroid_order(&n, &bad, &mapn),
            Err(Error::InputOrderNotPositroid(_))
        ));
    }

    #[test]
    fn positroid_iff_expansion_positroid() {
        let mut rng = random::rng(59);
        let mut checked = 0;
        while checked < 15 {
            let m = random::random_matroid(&mut rng, 4);
            if !m.loops().is_empty() {
                continue;
            }
            checked += 1;
            let (m2, map) = expand(&m, 2).unwrap();
            let base = positroid_search(&m).unwrap();
            if let Some(o) = &base {
                let o2 = expansion_positroid_order(&m, o, &map).unwrap();
                assert!(is_positroid_order(&m2, &o2).unwrap().holds());
            }
            // converse on the deflated matroid, which is isomorphic to m
            let d = deflate(&m2, 2).unwrap();
            assert_eq!(positroid_search(&m2).unwrap().is_some(), base.is_some());
            assert_eq!(positroid_search(&d).unwrap().is_some(), base.is_some());
        }
    }
}
