use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// The lattice of cyclic flats with labels forgotten, each node decorated by
/// `(size, rank)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    deco: Vec<(usize, usize)>,
    leq: Vec<Vec<bool>>,
}

impl Configuration {
    pub fn len(&self) -> usize {
        self.deco.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deco.is_empty()
    }

    pub fn deco(&self, node: usize) -> (usize, usize) {
        self.deco[node]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// Pairs `(a, b)` with `b` covering `a`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && self.leq[a][b]
                    && !(0..n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b])
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Length of the longest chain from the bottom to each node.
    fn heights(&self) -> Vec<usize> {
        // nodes come in order of increasing size, which extends the partial order
        let mut h = vec![0; self.len()];
        for (a, b) in self.covers() {
            h[b] = h[b].max(h[a] + 1);
        }
        h
    }

    fn signatures(&self) -> Vec<(usize, usize, usize, usize, usize)> {
        let covers = self.covers();
        let heights = self.heights();
        (0..self.len())
            .map(|v| {
                let up = covers.iter().filter(|c| c.0 == v).count();
                let down = covers.iter().filter(|c| c.1 == v).count();
                (self.deco[v].0, self.deco[v].1, heights[v], up, down)
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let nodes: Vec<Value> = self
            .deco
            .iter()
            .enumerate()
            .map(|(id, (s, k))| json!({"id": id, "size": s, "rank": k}))
            .collect();
        let covers: Vec<Value> = self
            .covers()
            .into_iter()
            .map(|(a, b)| json!([a, b]))
            .collect();
        json!({ "nodes": nodes, "covers": covers })
    }
}

/// Configuration of a coloop-free matroid.
pub fn configuration(m: &Matroid) -> Result<Configuration> {
    if !m.coloops().is_empty() {
        return Err(Error::HasColoops(m.labels_of(m.coloops())));
    }
    let zee = m.cyclic_flats();
    let deco = zee.iter().map(|z| (z.set.len(), z.rank)).collect();
    let leq = zee
        .iter()
        .map(|a| zee.iter().map(|b| a.set.is_subset(b.set)).collect())
        .collect();
    Ok(Configuration { deco, leq })
}

/// An order isomorphism `a -> b` preserving decorations, if one exists.
pub fn config_isomorphic(a: &Configuration, b: &Configuration) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let sa = a.signatures();
    let sb = b.signatures();
    let mut ka = sa.clone();
    let mut kb = sb.clone();
    ka.sort();
    kb.sort();
    if ka != kb {
        return None;
    }
    let mut map = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    if extend(a, b, &sa, &sb, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    a: &Configuration,
    b: &Configuration,
    sa: &[(usize, usize, usize, usize, usize)],
    sb: &[(usize, usize, usize, usize, usize)],
    v: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if v == a.len() {
        return true;
    }
    for w in 0..b.len() {
        if used[w] || sa[v] != sb[w] {
            continue;
        }
        let consistent =
            (0..v).all(|u| a.leq(u, v) == b.leq(map[u], w) && a.leq(v, u) == b.leq(w, map[u]));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(a, b, sa, sb, v + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    false
}
