//! Branch-width: decompositions and their widths, exact search, tangles,
//! and certificates combining the two bounds.

mod certificate;
mod decomposition;
mod exact;
mod tangle;

pub use certificate::{branch_width_certified, WidthCertificate};
pub use decomposition::{decomposition_width, expand_decomposition, BranchDecomposition, Shape};
pub use exact::{branch_width_exact, EXACT_LIMIT};
pub use tangle::{
    rank_bounded_family, verify_tangle, Tangle, TangleMembers, TangleReport, TangleViolation,
    TANGLE_LIMIT,
};

use crate::connectivity::flats_cover;
use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::matroid::{GroundSet, Matroid};

/// Three proper flats covering all but at most two elements.
pub fn three_flats_cover_plus_two(m: &Matroid) -> Result<Option<[SubsetMask; 3]>> {
    Ok(flats_cover(m, 3, 2)?.map(|f| [f[0], f[1], f[2]]))
}

/// Three proper flats whose union is the ground set.
pub fn three_flats_cover(m: &Matroid) -> Result<Option<[SubsetMask; 3]>> {
    Ok(flats_cover(m, 3, 0)?.map(|f| [f[0], f[1], f[2]]))
}

/// A tree with a vertex whose removal leaves three subtrees, each a caterpillar on
/// one of the given nonempty parts.
pub fn three_branch_tree(n: usize, parts: [SubsetMask; 3]) -> Result<BranchDecomposition> {
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::MalformedTree("empty branch".into()));
    }
    let shape = Shape::node(
        Shape::caterpillar(parts[0]),
        Shape::node(Shape::caterpillar(parts[1]), Shape::caterpillar(parts[2])),
    );
    BranchDecomposition::from_shape(&shape, n)
}

/// The nine-leaf decomposition grouping `{1,2,3}`, `{4,5,6}`, `{7,8,9}` into three
/// branches around a central vertex, each branch splitting off one element and then
/// the remaining pair.
pub fn figure_two_tree(ground: &GroundSet) -> Result<BranchDecomposition> {
    let branch = |a: &str, b: &str, c: &str| -> Result<Shape> {
        let pos = |l: &str| {
            ground
                .position(l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        Ok(Shape::node(
            Shape::Leaf(pos(a)?),
            Shape::node(Shape::Leaf(pos(b)?), Shape::Leaf(pos(c)?)),
        ))
    };
    let shape = Shape::node(
        branch("1", "2", "3")?,
        Shape::node(branch("4", "5", "6")?, branch("7", "8", "9")?),
    );
    BranchDecomposition::from_shape(&shape, ground.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::random;

    #[test]
    fn flat_triples() {
        assert!(three_flats_cover(&catalog::fig2_m()).unwrap().is_some());
        assert!(three_flats_cover_plus_two(&catalog::fig2_n())
            .unwrap()
            .is_some());
        // no triple of hyperplanes reaches both 1 and the pair 5,6 or 2,3
        assert!(three_flats_cover(&catalog::fig2_n()).unwrap().is_none());
        assert!(three_flats_cover(&Matroid::uniform(3, 4).unwrap())
            .unwrap()
            .is_some());
        assert!(three_flats_cover(&Matroid::uniform(3, 7).unwrap())
            .unwrap()
            .is_none());
    }

    #[test]
    fn three_flats_decide_width_at_most_rank() {
        let mut rng = random::rng(37);
        for _ in 0..80 {
            let m = random::random_matroid(&mut rng, 8);
            if m.rank_total() < 2 {
                continue;
            }
            let bw = branch_width_exact(&m).unwrap().0;
            let covered = three_flats_cover(&m).unwrap().is_some();
            assert_eq!(covered, bw <= m.rank_total(), "{}", m.to_json_string());
        }
    }

    #[test]
    fn rank_one_with_a_coloop_has_width_one_but_no_cover() {
        // one coloop and one loop: every edge displays a set with lambda 0
        let m = Matroid::from_json_str(
            r#"{"elements":["1","2"],"cyclic_flats":[{"set":["2"],"rank":0}]}"#,
        )
        .unwrap();
        assert_eq!(m.rank_total(), 1);
        assert_eq!(branch_width_exact(&m).unwrap().0, 1);
        assert!(three_flats_cover(&m).unwrap().is_none());
    }
}
