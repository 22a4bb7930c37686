use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::expansion::ExpansionMap;
use crate::mask::SubsetMask;
use crate::matroid::{GroundSet, Matroid};

/// A cubic tree with ground elements injected into its leaves.
///
/// Vertices are `0..vertex_count`; `leaf_of[e]` is the leaf carrying the element at
/// ground position `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchDecomposition {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    leaf_of: Vec<usize>,
}

/// A rooted binary tree over ground positions, the usual way decompositions are built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Leaf(usize),
    Node(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub fn node(a: Shape, b: Shape) -> Shape {
        Shape::Node(Box::new(a), Box::new(b))
    }

    /// Right comb `(l_1, (l_2, (... , l_k)))` over the elements of a nonempty set.
    pub fn caterpillar(set: SubsetMask) -> Shape {
        let elems: Vec<usize> = set.iter().collect();
        assert!(!elems.is_empty(), "caterpillar over an empty set");
        let mut shape = Shape::Leaf(*elems.last().unwrap());
        for &e in elems.iter().rev().skip(1) {
            shape = Shape::node(Shape::Leaf(e), shape);
        }
        shape
    }

    pub fn elements(&self) -> SubsetMask {
        match self {
            Shape::Leaf(e) => SubsetMask::singleton(*e),
            Shape::Node(a, b) => a.elements() | b.elements(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DecompositionJson {
    vertices: Vec<usize>,
    edges: Vec<[usize; 2]>,
    leaf_labels: BTreeMap<String, usize>,
}

impl BranchDecomposition {
    /// Checks the tree shape for a ground set of size `n`, then removes unlabelled
    /// leaves and suppresses the resulting degree-2 vertices.
    pub fn new(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        leaf_of: Vec<usize>,
    ) -> Result<Self> {
        let bad = |why: &str| Err(Error::MalformedTree(why.to_string()));
        let n = leaf_of.len();
        if edges
            .iter()
            .any(|&(a, b)| a >= vertex_count || b >= vertex_count || a == b)
        {
            return bad("edge endpoint out of range or loop edge");
        }
        if leaf_of.iter().any(|&v| v >= vertex_count) {
            return bad("leaf label points outside the vertex list");
        }
        let mut seen = vec![false; vertex_count];
        for &v in &leaf_of {
            if std::mem::replace(&mut seen[v], true) {
                return bad("two elements share a leaf");
            }
        }
        if n == 0 {
            return Ok(BranchDecomposition {
                vertex_count: 0,
                edges: vec![],
                leaf_of,
            });
        }
        if vertex_count == 0 || edges.len() + 1 != vertex_count {
            return bad("edge count does not match a tree");
        }
        let adj = adjacency(vertex_count, &edges);
        let mut reached = vec![false; vertex_count];
        let mut queue = VecDeque::from([0]);
        reached[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !std::mem::replace(&mut reached[w], true) {
                    queue.push_back(w);
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return bad("graph is not connected");
        }
        if vertex_count > 1 {
            if adj.iter().any(|a| a.len() != 1 && a.len() != 3) {
                return bad("a vertex has degree other than 1 or 3");
            }
            if leaf_of.iter().any(|&v| adj[v].len() != 1) {
                return bad("an element labels a non-leaf vertex");
            }
        }
        Ok(normalize(vertex_count, &edges, &leaf_of))
    }

    pub fn from_shape(shape: &Shape, n: usize) -> Result<Self> {
        if shape.elements() != SubsetMask::full(n) {
            return Err(Error::MalformedTree(
                "shape does not cover the ground set once".into(),
            ));
        }
        let mut edges = Vec::new();
        let mut leaf_of = vec![usize::MAX; n];
        let mut count = 0;
        match shape {
            Shape::Leaf(e) => {
                leaf_of[*e] = 0;
                count = 1;
            }
            Shape::Node(a, b) => {
                let ra = build(a, &mut count, &mut edges, &mut leaf_of);
                let rb = build(b, &mut count, &mut edges, &mut leaf_of);
                edges.push((ra, rb));
            }
        }
        BranchDecomposition::new(count, edges, leaf_of)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn leaf_of(&self, e: usize) -> usize {
        self.leaf_of[e]
    }

    pub fn element_count(&self) -> usize {
        self.leaf_of.len()
    }

    /// For every edge, the elements on the side of its second endpoint.
    pub fn displayed_sets(&self) -> Vec<SubsetMask> {
        if self.edges.is_empty() {
            return vec![];
        }
        let adj = adjacency(self.vertex_count, &self.edges);
        let mut label = vec![SubsetMask::EMPTY; self.vertex_count];
        for (e, &v) in self.leaf_of.iter().enumerate() {
            label[v] = label[v].with(e);
        }
        // iterative post-order from vertex 0
        let mut parent = vec![usize::MAX; self.vertex_count];
        let mut order = Vec::with_capacity(self.vertex_count);
        let mut stack = vec![0];
        parent[0] = 0;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &adj[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        let mut below = label.clone();
        for &v in order.iter().rev() {
            if v != 0 {
                let p = parent[v];
                below[p] = below[p] | below[v];
            }
        }
        self.edges
            .iter()
            .map(|&(a, b)| {
                if parent[b] == a {
                    below[b]
                } else {
                    self.full() - below[a]
                }
            })
            .collect()
    }

    fn full(&self) -> SubsetMask {
        SubsetMask::full(self.leaf_of.len())
    }

    pub fn to_json(&self, ground: &GroundSet) -> Value {
        let j = DecompositionJson {
            vertices: (0..self.vertex_count).collect(),
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
            leaf_labels: self
                .leaf_of
                .iter()
                .enumerate()
                .map(|(e, &v)| (ground.label(e).to_string(), v))
                .collect(),
        };
        serde_json::to_value(j).expect("plain data serializes")
    }

    pub fn from_json(value: Value, ground: &GroundSet) -> Result<Self> {
        let j: DecompositionJson = serde_json::from_value(value)?;
        let ids: BTreeMap<usize, usize> = j
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        if ids.len() != j.vertices.len() {
            return Err(Error::MalformedTree("duplicate vertex id".into()));
        }
        let id = |v: usize| {
            ids.get(&v)
                .copied()
                .ok_or_else(|| Error::MalformedTree(format!("unknown vertex {v}")))
        };
        let edges = j
            .edges
            .iter()
            .map(|[a, b]| Ok((id(*a)?, id(*b)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut leaf_of = vec![usize::MAX; ground.len()];
        for (label, v) in &j.leaf_labels {
            let e = ground
                .position(label)
                .ok_or_else(|| Error::UnknownLabel(label.clone()))?;
            leaf_of[e] = id(*v)?;
        }
        if let Some(e) = leaf_of.iter().position(|&v| v == usize::MAX) {
            return Err(Error::MalformedTree(format!(
                "element {} has no leaf",
                ground.label(e)
            )));
        }
        BranchDecomposition::new(j.vertices.len(), edges, leaf_of)
    }
}

fn build(
    shape: &Shape,
    count: &mut usize,
    edges: &mut Vec<(usize, usize)>,
    leaf_of: &mut [usize],
) -> usize {
    let v = *count;
    *count += 1;
    match shape {
        Shape::Leaf(e) => leaf_of[*e] = v,
        Shape::Node(a, b) => {
            let ra = build(a, count, edges, leaf_of);
            let rb = build(b, count, edges, leaf_of);
            edges.push((v, ra));
            edges.push((v, rb));
        }
    }
    v
}

fn adjacency(vertex_count: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); vertex_count];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

fn normalize(
    vertex_count: usize,
    edges: &[(usize, usize)],
    leaf_of: &[usize],
) -> BranchDecomposition {
    let mut adj: Vec<Vec<usize>> = adjacency(vertex_count, edges);
    let mut labelled = vec![false; vertex_count];
    for &v in leaf_of {
        labelled[v] = true;
    }
    let mut alive = vec![true; vertex_count];
    let mut queue: VecDeque<usize> = (0..vertex_count).collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v] || labelled[v] {
            continue;
        }
        match adj[v].len() {
            1 => {
                let w = adj[v][0];
                alive[v] = false;
                adj[v].clear();
                adj[w].retain(|&x| x != v);
                queue.push_back(w);
            }
            2 => {
                let (a, b) = (adj[v][0], adj[v][1]);
                alive[v] = false;
                adj[v].clear();
                for (x, y) in [(a, b), (b, a)] {
                    for slot in adj[x].iter_mut() {
                        if *slot == v {
                            *slot = y;
                        }
                    }
                }
                queue.push_back(a);
                queue.push_back(b);
            }
            _ => {}
        }
    }
    let mut new_id = vec![usize::MAX; vertex_count];
    let mut count = 0;
    for v in 0..vertex_count {
        if alive[v] {
            new_id[v] = count;
            count += 1;
        }
    }
    let mut new_edges = Vec::new();
    for v in 0..vertex_count {
        for &w in &adj[v] {
            if alive[v] && v < w {
                new_edges.push((new_id[v], new_id[w]));
            }
        }
    }
    new_edges.sort();
    BranchDecomposition {
        vertex_count: count,
        edges: new_edges,
        leaf_of: leaf_of.iter().map(|&v| new_id[v]).collect(),
    }
}

/// Maximum of `lambda(X) + 1` over displayed sets `X`; `|E|` when `|E| <= 1`.
pub fn decomposition_width(m: &Matroid, t: &BranchDecomposition) -> Result<usize> {
    if t.element_count() != m.len() {
        return Err(Error::MalformedTree(format!(
            "tree has {} labelled leaves, matroid has {} elements",
            t.element_count(),
            m.len()
        )));
    }
    if m.len() <= 1 {
        return Ok(m.len());
    }
    Ok(t.displayed_sets()
        .into_iter()
        .map(|x| m.lambda(x) + 1)
        .max()
        .unwrap_or(0))
}

/// Replaces the leaf of each base element `a` by a caterpillar on `S_a`
/// rooted at that leaf.
pub fn expand_decomposition(t: &BranchDecomposition, map: &ExpansionMap) -> BranchDecomposition {
    let k = map.t();
    if t.element_count() == 1 {
        // the lone leaf has no parent edge, so the block forms the whole tree
        return BranchDecomposition::from_shape(&Shape::caterpillar(map.block(0)), k)
            .expect("caterpillar on a full block is valid");
    }
    let mut edges = t.edges.clone();
    let mut count = t.vertex_count;
    let mut leaf_of = vec![usize::MAX; map.expanded().len()];
    for a in 0..t.element_count() {
        let block: Vec<usize> = map.block(a).iter().collect();
        let mut current = t.leaf_of[a];
        if k == 1 {
            leaf_of[block[0]] = current;
            continue;
        }
        for (i, &s) in block.iter().enumerate() {
            let leaf = count;
            count += 1;
            edges.push((current, leaf));
            leaf_of[s] = leaf;
            // the last two elements hang off the same vertex
            if i + 2 < k {
                edges.push((current, count));
                current = count;
                count += 1;
            }
        }
    }
    BranchDecomposition::new(count, edges, leaf_of).expect("expansion of a valid tree is valid")
}
