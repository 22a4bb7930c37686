//! Small named matroids used as worked examples and regression anchors.

use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::matroid::{CyclicFlat, GroundSet, Matroid};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub matroid: Matroid,
    pub provenance: &'static str,
}

/// Rank-3 matroid on `1..=n` whose proper nonempty cyclic flats are the given 3-point lines.
fn rank_three_lines(n: usize, lines: &[&str]) -> Matroid {
    let ground = GroundSet::numbered(n).expect("small ground set");
    let mut zee = vec![CyclicFlat {
        set: SubsetMask::EMPTY,
        rank: 0,
    }];
    for l in lines {
        zee.push(CyclicFlat {
            set: ground.parse_set(l).expect("catalog labels"),
            rank: 2,
        });
    }
    zee.push(CyclicFlat {
        set: ground.full(),
        rank: 3,
    });
    Matroid::new(ground, zee).expect("catalog matroids are valid")
}

/// Two disjoint 3-point lines in rank 3.
pub fn fig1_m() -> Matroid {
    rank_three_lines(6, &["1,2,3", "4,5,6"])
}

/// Lines `{1,2,3}` and `{1,4,5}` meeting at 1, plus a free point 6.
pub fn fig1_n() -> Matroid {
    rank_three_lines(6, &["1,2,3", "1,4,5"])
}

/// Three disjoint 3-point lines in rank 3.
pub fn fig2_m() -> Matroid {
    rank_three_lines(9, &["1,2,3", "4,5,6", "7,8,9"])
}

/// Lines `{2,3,4}`, `{4,5,6}`, `{7,8,9}` with a free point 1.
pub fn fig2_n() -> Matroid {
    rank_three_lines(9, &["2,3,4", "4,5,6", "7,8,9"])
}

/// Same matroid as [`fig1_n`]: two lines through 1 and a free point.
pub fn fig3_m() -> Matroid {
    rank_three_lines(6, &["1,2,3", "1,4,5"])
}

/// Two lines through 1 and two free points.
pub fn fig3_n() -> Matroid {
    rank_three_lines(7, &["1,2,3", "1,4,5"])
}

pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "fig1_M",
            matroid: fig1_m(),
            provenance: "Figure 1, M: two disjoint three-point lines",
        },
        CatalogEntry {
            name: "fig1_N",
            matroid: fig1_n(),
            provenance: "Figure 1, N: two three-point lines sharing a point",
        },
        CatalogEntry {
            name: "fig2_M",
            matroid: fig2_m(),
            provenance: "Figure 2, M: three disjoint three-point lines",
        },
        CatalogEntry {
            name: "fig2_N",
            matroid: fig2_n(),
            provenance: "Figure 2, N: lines {2,3,4}, {4,5,6}, {7,8,9}",
        },
        CatalogEntry {
            name: "fig3_M",
            matroid: fig3_m(),
            provenance: "Figure 3, M: lines {1,2,3}, {1,4,5} on six points",
        },
        CatalogEntry {
            name: "fig3_N",
            matroid: fig3_n(),
            provenance: "Figure 3, N: lines {1,2,3}, {1,4,5} on seven points",
        },
    ]
}

pub fn all() -> Vec<(&'static str, Matroid)> {
    entries().into_iter().map(|e| (e.name, e.matroid)).collect()
}

/// Looks up a catalog name; also accepts uniform matroids written `U2,4` or `U_{2,4}`.
pub fn by_name(name: &str) -> Result<Matroid> {
    if let Some(e) = entries()
        .into_iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
    {
        return Ok(e.matroid);
    }
    if let Some(rest) = name.strip_prefix('U') {
        let inner = rest
            .trim_start_matches('_')
            .trim_start_matches('{')
            .trim_end_matches('}');
        if let Some((r, n)) = inner.split_once(',') {
            if let (Ok(r), Ok(n)) = (r.trim().parse(), n.trim().parse()) {
                return Matroid::uniform(r, n);
            }
        }
    }
    Err(Error::Malformed(format!(
        "unknown catalog matroid {name:?}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        assert!(by_name("fig1_M").unwrap().equals(&fig1_m()));
        assert!(by_name("fig2_n").unwrap().equals(&fig2_n()));
        assert_eq!(by_name("U_{2,4}").unwrap().rank_total(), 2);
        assert_eq!(by_name("U3,5").unwrap().len(), 5);
        assert!(by_name("fig9_Q").is_err());
    }

    #[test]
    fn figure_three_m_is_figure_one_n() {
        assert!(fig3_m().equals(&fig1_n()));
        assert_eq!(fig3_n().len(), 7);
        assert_eq!(fig3_n().rank_total(), 3);
    }
}
