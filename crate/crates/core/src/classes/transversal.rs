use crate::error::Result;
use crate::expansion::{matroid_union, Presentation};
use crate::mask::SubsetMask;
use crate::matroid::{CyclicFlat, GroundSet, Matroid};

/// The rank-1 matroid on `ground` whose non-loop elements are `a`.
pub fn rank_one(ground: &GroundSet, a: SubsetMask) -> Matroid {
    let full = ground.full();
    let a = a & full;
    let zee = match a.len() {
        0 => vec![CyclicFlat { set: full, rank: 0 }],
        1 => vec![CyclicFlat {
            set: full - a,
            rank: 0,
        }],
        _ => vec![
            CyclicFlat {
                set: full - a,
                rank: 0,
            },
            CyclicFlat { set: full, rank: 1 },
        ],
    };
    Matroid::new(ground.clone(), zee).expect("rank-1 lattices are valid")
}

/// The transversal matroid presented by `p`: the union of the rank-1 matroids
/// with non-loop sets `A_i`.
pub fn presentation_matroid(p: &Presentation, ground: &GroundSet) -> Result<Matroid> {
    if p.sets.is_empty() {
        return Ok(rank_one(ground, SubsetMask::EMPTY));
    }
    let parts: Vec<Matroid> = p.sets.iter().map(|&a| rank_one(ground, a)).collect();
    matroid_union(&parts)
}

pub fn verify_presentation(m: &Matroid, p: &Presentation) -> Result<bool> {
    Ok(presentation_matroid(p, m.ground())?.equals(m))
}
