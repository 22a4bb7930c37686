use rayon::prelude::*;

use super::decomposition::{BranchDecomposition, Shape};
use crate::error::{check_budget, Result};
use crate::matroid::Matroid;

/// Largest ground set handled by [`branch_width_exact`].
pub const EXACT_LIMIT: usize = 18;

/// Branch-width by dynamic programming over subsets, with an optimal decomposition.
///
/// `g(X)` is the least width of a rooted subtree whose leaves are `X`, counting the
/// edge above its root: `g(X) = max(lambda(X)+1, min over splits {A, X-A} of
/// max(g(A), g(X-A)))`. Masks are processed in layers of equal size.
pub fn branch_width_exact(m: &Matroid) -> Result<(usize, BranchDecomposition)> {
    let n = m.len();
    check_budget("exact branch-width ground set", n, EXACT_LIMIT)?;
    if n <= 1 {
        let t = if n == 0 {
            BranchDecomposition::new(0, vec![], vec![])?
        } else {
            BranchDecomposition::from_shape(&Shape::Leaf(0), 1)?
        };
        return Ok((n, t));
    }
    let table = m.rank_table()?;
    let full = (1u32 << n) - 1;
    let r = m.rank_total() as u8;
    let lam = |x: u32| table[x as usize] + table[(full ^ x) as usize] - r;

    let size = 1usize << n;
    let mut g = vec![0u8; size];
    let mut choice = vec![0u32; size];
    let mut layers: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for x in 1..size as u32 {
        layers[x.count_ones() as usize].push(x);
    }
    for &x in &layers[1] {
        g[x as usize] = lam(x) + 1;
    }
    for layer in &layers[2..n] {
        let results: Vec<(u8, u32)> = layer
            .par_iter()
            .map(|&x| {
                let floor = lam(x) + 1;
                let (best, a) = best_split(x, &g, floor);
                (best.max(floor), a)
            })
            .collect();
        for (&x, (v, a)) in layer.iter().zip(results) {
            g[x as usize] = v;
            choice[x as usize] = a;
        }
    }
    let (width, root) = best_split(full, &g, 0);
    let shape = Shape::node(rebuild(root, &choice), rebuild(full ^ root, &choice));
    let t = BranchDecomposition::from_shape(&shape, n)?;
    Ok((width as usize, t))
}

/// Least `max(g(A), g(X-A))` over splits with the lowest element of `x` in `A`,
/// stopping early once `floor` is reached. Ties go to the smallest `A`.
fn best_split(x: u32, g: &[u8], floor: u8) -> (u8, u32) {
    let low = x & x.wrapping_neg();
    let rest = x ^ low;
    let mut best = (u8::MAX, 0);
    // ascending enumeration of submasks of `rest`, excluding `rest` itself
    let mut sub = 0u32;
    while sub != rest {
        let a = low | sub;
        let v = g[a as usize].max(g[(x ^ a) as usize]);
        if v < best.0 {
            best = (v, a);
            if v <= floor {
                break;
            }
        }
        sub = (sub | !rest).wrapping_add(1) & rest;
    }
    best
}

fn rebuild(x: u32, choice: &[u32]) -> Shape {
    if x.count_ones() == 1 {
        return Shape::Leaf(x.trailing_zeros() as usize);
    }
    let a = choice[x as usize];
    Shape::node(rebuild(a, choice), rebuild(x ^ a, choice))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branchwidth::decomposition_width;
    use crate::catalog;
    use crate::random;

    /// Every cubic tree with leaves `0..n`, built by inserting each new leaf on
    /// every edge of every smaller tree.
    fn all_trees(n: usize) -> Vec<BranchDecomposition> {
        // (vertex count, edges, leaf_of)
        type Raw = (usize, Vec<(usize, usize)>, Vec<usize>);
        let mut trees: Vec<Raw> = vec![(2, vec![(0, 1)], vec![0, 1])];
        for _ in 2..n {
            let mut next = Vec::new();
            for (count, edges, leaves) in &trees {
                for i in 0..edges.len() {
                    let (a, b) = edges[i];
                    let mid = *count;
                    let leaf = count + 1;
                    let mut e = edges.clone();
                    e[i] = (a, mid);
                    e.push((mid, b));
                    e.push((mid, leaf));
                    let mut l = leaves.clone();
                    l.push(leaf);
                    next.push((count + 2, e, l));
                }
            }
            trees = next;
        }
        trees
            .into_iter()
            .map(|(c, e, l)| BranchDecomposition::new(c, e, l).unwrap())
            .collect()
    }

    #[test]
    fn tree_counts() {
        // (2n-5)!! labelled cubic trees
        assert_eq!(all_trees(4).len(), 3);
        assert_eq!(all_trees(5).len(), 15);
        assert_eq!(all_trees(6).len(), 105);
    }

    #[test]
    fn matches_exhaustive_tree_search() {
        let mut rng = random::rng(23);
        let trees: Vec<Vec<BranchDecomposition>> = (0..=6)
            .map(|n| if n >= 2 { all_trees(n) } else { vec![] })
            .collect();
        for _ in 0..60 {
            let m = random::random_matroid(&mut rng, 6);
            let (bw, t) = branch_width_exact(&m).unwrap();
            assert_eq!(decomposition_width(&m, &t).unwrap(), bw);
            if m.len() >= 2 {
                let best = trees[m.len()]
                    .iter()
                    .map(|t| decomposition_width(&m, t).unwrap())
                    .min()
                    .unwrap();
                assert_eq!(bw, best);
            }
        }
    }

    #[test]
    fn figure_two() {
        assert_eq!(branch_width_exact(&catalog::fig2_m()).unwrap().0, 3);
        assert_eq!(branch_width_exact(&catalog::fig2_n()).unwrap().0, 4);
    }

    #[test]
    fn tiny_and_dual() {
        assert_eq!(
            branch_width_exact(&Matroid::uniform(0, 0).unwrap())
                .unwrap()
                .0,
            0
        );
        assert_eq!(
            branch_width_exact(&Matroid::uniform(1, 1).unwrap())
                .unwrap()
                .0,
            1
        );
        assert_eq!(
            branch_width_exact(&Matroid::uniform(0, 4).unwrap())
                .unwrap()
                .0,
            1
        );
        let mut rng = random::rng(29);
        for _ in 0..25 {
            let m = random::random_matroid(&mut rng, 9);
            assert_eq!(
                branch_width_exact(&m).unwrap().0,
                branch_width_exact(&m.dual()).unwrap().0
            );
            assert!(branch_width_exact(&m).unwrap().0 <= m.rank_total() + 1);
        }
    }
}
