use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{check_budget, Result};
use crate::mask::SubsetMask;
use crate::matroid::Matroid;

/// Largest ground set on which a tangle can be verified.
pub const TANGLE_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TangleMembers {
    Explicit(Vec<SubsetMask>),
    /// `{X : r(X) < c}`
    RankBelow(usize),
    /// `{X : |X| <= s}`
    SizeAtMost(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tangle {
    pub order: usize,
    pub members: TangleMembers,
}

impl Tangle {
    pub fn new(order: usize, members: TangleMembers) -> Tangle {
        Tangle { order, members }
    }

    pub fn to_json(&self, m: &Matroid) -> Value {
        let members = match &self.members {
            TangleMembers::Explicit(sets) => {
                json!({ "explicit": sets.iter().map(|s| m.labels_of(*s)).collect::<Vec<_>>() })
            }
            TangleMembers::RankBelow(c) => json!({ "rank_below": c }),
            TangleMembers::SizeAtMost(s) => json!({ "size_at_most": s }),
        };
        json!({ "order": self.order, "members": members })
    }
}

/// `{X : r(X) < c}`, to be paired with an order when verified.
pub fn rank_bounded_family(c: usize) -> TangleMembers {
    TangleMembers::RankBelow(c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TangleViolation {
    /// A member with `lambda >= k - 1`.
    T1 { member: SubsetMask },
    /// A set with `lambda < k - 1` such that neither it nor its complement is a member.
    T2 { set: SubsetMask },
    /// Three members whose union is `E`.
    T3 {
        x: SubsetMask,
        y: SubsetMask,
        z: SubsetMask,
    },
    /// `E - e` is a member.
    T4 { element: usize },
}

impl fmt::Display for TangleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangleViolation::T1 { member } => {
                write!(f, "(T1) member {member:?} is not a small separation")
            }
            TangleViolation::T2 { set } => {
                write!(f, "(T2) neither {set:?} nor its complement is a member")
            }
            TangleViolation::T3 { x, y, z } => {
                write!(f, "(T3) members {x:?}, {y:?}, {z:?} cover the ground set")
            }
            TangleViolation::T4 { element } => {
                write!(f, "(T4) the complement of element {element} is a member")
            }
        }
    }
}

impl TangleViolation {
    pub fn axiom(&self) -> &'static str {
        match self {
            TangleViolation::T1 { .. } => "T1",
            TangleViolation::T2 { .. } => "T2",
            TangleViolation::T3 { .. } => "T3",
            TangleViolation::T4 { .. } => "T4",
        }
    }

    pub fn to_json(&self, m: &Matroid) -> Value {
        let sets: Vec<Vec<String>> = match self {
            TangleViolation::T1 { member } => vec![m.labels_of(*member)],
            TangleViolation::T2 { set } => vec![m.labels_of(*set)],
            TangleViolation::T3 { x, y, z } => {
                vec![m.labels_of(*x), m.labels_of(*y), m.labels_of(*z)]
            }
            TangleViolation::T4 { element } => vec![vec![m.ground().label(*element).to_string()]],
        };
        json!({ "axiom": self.axiom(), "sets": sets })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleReport {
    pub violation: Option<TangleViolation>,
    /// Whether every `X` with `r(X) < k - 1` is a member.
    pub contains_low_rank_sets: bool,
}

impl TangleReport {
    pub fn is_tangle(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the four tangle axioms for `tangle` in `m`.
pub fn verify_tangle(m: &Matroid, tangle: &Tangle) -> Result<TangleReport> {
    let n = m.len();
    check_budget("tangle ground set", n, TANGLE_LIMIT)?;
    let k = tangle.order;
    let table = m.rank_table()?;
    let r = m.rank_total();
    let size = 1usize << n;
    let full = size - 1;
    let lam = |x: usize| table[x] as usize + table[full ^ x] as usize - r;

    let member: Vec<bool> = match &tangle.members {
        TangleMembers::Explicit(sets) => {
            let mut v = vec![false; size];
            for s in sets {
                if let Some(slot) = v.get_mut(s.0 as usize) {
                    *slot = true;
                }
            }
            v
        }
        TangleMembers::RankBelow(c) => (0..size)
            .into_par_iter()
            .map(|x| (table[x] as usize) < *c)
            .collect(),
        TangleMembers::SizeAtMost(s) => (0..size)
            .into_par_iter()
            .map(|x| x.count_ones() as usize <= *s)
            .collect(),
    };
    let contains_low_rank_sets = (0..size)
        .into_par_iter()
        .all(|x| (table[x] as usize) + 1 >= k || member[x]);
    let report = |v| {
        Ok(TangleReport {
            violation: v,
            contains_low_rank_sets,
        })
    };

    if let TangleMembers::Explicit(sets) = &tangle.members {
        if let Some(s) = sets.iter().find(|s| s.0 as usize >= size) {
            return report(Some(TangleViolation::T1 { member: *s }));
        }
    }
    if let Some(x) = (0..size)
        .into_par_iter()
        .find_first(|&x| member[x] && lam(x) + 1 >= k)
    {
        return report(Some(TangleViolation::T1 {
            member: SubsetMask(x as u64),
        }));
    }
    if let Some(x) = (0..size)
        .into_par_iter()
        .find_first(|&x| lam(x) + 1 < k && !member[x] && !member[full ^ x])
    {
        return report(Some(TangleViolation::T2 {
            set: SubsetMask(x as u64),
        }));
    }
    if let Some(e) = (0..n).find(|&e| member[full ^ (1 << e)]) {
        return report(Some(TangleViolation::T4 { element: e }));
    }

    // below[S]: some member contains S
    let mut below = member.clone();
    for i in 0..n {
        let bit = 1 << i;
        for s in 0..size {
            if s & bit == 0 && below[s | bit] {
                below[s] = true;
            }
        }
    }
    // three members cover E iff three maximal members do
    let maximal: Vec<usize> = (0..size)
        .into_par_iter()
        .filter(|&x| member[x] && (0..n).all(|i| x >> i & 1 == 1 || !below[x | 1 << i]))
        .collect();
    let pair = maximal.par_iter().enumerate().find_map_first(|(i, &x)| {
        maximal[i..]
            .iter()
            .find(|&&y| below[full & !(x | y)])
            .map(|&y| (x, y))
    });
    if let Some((x, y)) = pair {
        let rest = full & !(x | y);
        let z = (0..size)
            .find(|&z| member[z] && z & rest == rest)
            .expect("down-closure records a containing member");
        return report(Some(TangleViolation::T3 {
            x: SubsetMask(x as u64),
            y: SubsetMask(y as u64),
            z: SubsetMask(z as u64),
        }));
    }
    report(None)
}
