mod common;

use common::{all_subsets, isomorphic_by_classes};
use cyflat_core::catalog;
use cyflat_core::expansion::{deflate, expand};
use cyflat_core::invariants::{config_isomorphic, configuration};
use cyflat_core::random::{random_matroid, random_subset, rng};
use cyflat_core::{Matroid, SubsetMask};

fn small_cases() -> Vec<(String, Matroid, usize)> {
    let mut out = Vec::new();
    for (name, m) in catalog::all() {
        for t in 1..=3 {
            if t * m.len() <= 18 {
                out.push((format!("{name}^{t}"), m.clone(), t));
            }
        }
    }
    out
}

#[test]
fn rank_scales_on_blocks() {
    let mut r = rng(7);
    for (name, m, t) in small_cases() {
        let (mt, map) = expand(&m, t).unwrap();
        for _ in 0..200 {
            let x = random_subset(&mut r, &m);
            assert_eq!(mt.rank(map.blocks(x)), t * m.rank(x), "{name}");
        }
    }
}

#[test]
fn duality_commutes() {
    for (name, m, t) in small_cases() {
        let a = expand(&m.dual(), t).unwrap().0;
        let b = expand(&m, t).unwrap().0.dual();
        assert!(a.equals(&b), "{name}");
    }
}

#[test]
fn minors_commute_on_blocks() {
    let mut r = rng(8);
    for (name, m, t) in small_cases() {
        let (mt, map) = expand(&m, t).unwrap();
        for _ in 0..10 {
            let x = random_subset(&mut r, &m);
            let sx = map.blocks(x);
            let keep = m.full() - x;
            // restriction to S_X is the expansion of M|X; the ground orders agree
            let lhs = mt.restrict(sx).unwrap();
            let rhs = expand(&m.restrict(x).unwrap(), t).unwrap().0;
            assert!(lhs.equals(&rhs), "{name} restrict");
            let lhs = mt.contract(sx).unwrap();
            let rhs = expand(&m.contract(x).unwrap(), t).unwrap().0;
            assert!(lhs.equals(&rhs), "{name} contract");
            let lhs = mt.delete(map.blocks(keep)).unwrap();
            assert!(lhs.equals(&expand(&m.delete(keep).unwrap(), t).unwrap().0));
        }
    }
}

#[test]
fn flats_and_cyclic_sets_transfer() {
    for (name, m, t) in small_cases() {
        if m.len() > 7 {
            continue;
        }
        let (mt, map) = expand(&m, t).unwrap();
        for x in all_subsets(&m) {
            let sx = map.blocks(x);
            assert_eq!(m.is_flat(x), mt.is_flat(sx), "{name}");
            assert_eq!(m.is_cyclic(x), mt.is_cyclic(sx), "{name}");
            if m.is_flat(x) && t >= 2 {
                // adding fewer than t outside elements keeps a flat
                for a in all_subsets(&mt).take(1 << 12) {
                    if a.len() < t && !a.intersects(sx) {
                        assert!(mt.is_flat(sx | a), "{name}");
                    }
                }
            }
        }
    }
}

#[test]
fn theta_of_a_flat() {
    let mut r = rng(9);
    for _ in 0..20 {
        let m = random_matroid(&mut r, 5);
        let t = 2;
        let (mt, map) = expand(&m, t).unwrap();
        for x in all_subsets(&mt) {
            if !mt.is_flat(x) {
                continue;
            }
            let th = map.theta(x);
            assert!(m.is_flat(th));
            let rest = x - map.blocks(th);
            let rx = mt.rank(x);
            for e in rest.iter() {
                assert_eq!(mt.rank(x.without(e)), rx - 1, "coloop of the restriction");
            }
        }
    }
}

#[test]
fn connectivity_transfers() {
    let mut r = rng(10);
    for _ in 0..30 {
        let m = random_matroid(&mut r, 6);
        for t in 2..=3 {
            let (mt, map) = expand(&m, t).unwrap();
            // a single element is connected but its t clones are loops or coloops
            if m.len() >= 2 {
                assert_eq!(
                    m.is_connected(),
                    mt.is_connected(),
                    "{}",
                    m.to_json_string()
                );
            } else {
                assert!(!mt.is_connected());
            }
            if m.loops().is_empty() {
                let mut lifted: Vec<SubsetMask> = m
                    .connected_flats()
                    .nontrivial()
                    .map(|f| map.blocks(f))
                    .collect();
                lifted.sort();
                let mut direct: Vec<SubsetMask> = mt.connected_flats().nontrivial().collect();
                direct.sort();
                assert_eq!(lifted, direct);
            }
        }
    }
}

#[test]
fn clonal_classes_are_blocks_of_classes() {
    for (name, m, t) in small_cases() {
        let (mt, map) = expand(&m, t).unwrap();
        let mut lifted: Vec<SubsetMask> = m
            .clonal_classes()
            .into_iter()
            .map(|c| map.blocks(c))
            .collect();
        lifted.sort();
        let mut direct = mt.clonal_classes();
        direct.sort();
        assert_eq!(lifted, direct, "{name}");
    }
}

#[test]
fn configurations_transfer() {
    let pairs = [
        (catalog::fig1_m(), catalog::fig1_n()),
        (catalog::fig2_m(), catalog::fig2_n()),
    ];
    for (a, b) in pairs {
        for t in 1..=2 {
            let ca = configuration(&expand(&a, t).unwrap().0).unwrap();
            let cb = configuration(&expand(&b, t).unwrap().0).unwrap();
            assert!(config_isomorphic(&ca, &cb).is_some());
        }
    }
    // reverse direction through deflate
    let (a2, b2) = (
        expand(&catalog::fig1_m(), 2).unwrap().0,
        expand(&catalog::fig1_n(), 2).unwrap().0,
    );
    let (da, db) = (deflate(&a2, 2).unwrap(), deflate(&b2, 2).unwrap());
    assert!(
        config_isomorphic(&configuration(&da).unwrap(), &configuration(&db).unwrap()).is_some()
    );
    // configurations that differ stay different
    let u = expand(&Matroid::uniform(2, 4).unwrap(), 2).unwrap().0;
    let f = expand(&catalog::fig1_m(), 2).unwrap().0;
    assert!(config_isomorphic(&configuration(&u).unwrap(), &configuration(&f).unwrap()).is_none());
}

#[test]
fn deflate_inverts_expand() {
    for (name, m, t) in small_cases() {
        let (mt, _) = expand(&m, t).unwrap();
        let d = deflate(&mt, t).unwrap();
        assert!(isomorphic_by_classes(&d, &m), "{name}");
    }
    let mut r = rng(12);
    for _ in 0..30 {
        let m = random_matroid(&mut r, 6);
        for t in 2..=3 {
            let d = deflate(&expand(&m, t).unwrap().0, t).unwrap();
            assert!(isomorphic_by_classes(&d, &m));
        }
    }
}

#[test]
fn expansion_composes() {
    for (name, m) in catalog::all() {
        if 4 * m.len() > 36 {
            continue;
        }
        let once = expand(&m, 2).unwrap().0;
        let renamed = once
            .with_labels(
                once.ground()
                    .labels()
                    .iter()
                    .map(|l| l.replace('#', "_"))
                    .collect(),
            )
            .unwrap();
        let twice = expand(&renamed, 2).unwrap().0;
        let four = expand(&m, 4).unwrap().0;
        assert_eq!(twice.len(), four.len());
        // both deflate back to M, and their configurations agree
        assert!(
            isomorphic_by_classes(&deflate(&twice, 4).unwrap(), &m),
            "{name}"
        );
        assert!(
            isomorphic_by_classes(&deflate(&four, 4).unwrap(), &m),
            "{name}"
        );
        let c2 = twice
            .clonal_classes()
            .iter()
            .map(|c| c.len())
            .collect::<Vec<_>>();
        let c4 = four
            .clonal_classes()
            .iter()
            .map(|c| c.len())
            .collect::<Vec<_>>();
        assert_eq!(c2, c4, "{name}");
        // and the explicit block-of-blocks relabelling is an equality
        let relabelled = twice
            .with_labels(
                twice
                    .ground()
                    .labels()
                    .iter()
                    .map(|l| {
                        let (outer, inner) = l
                            .split_once('#')
                            .map_or((l.as_str(), 0), |(a, b)| (a, b.parse().unwrap()));
                        let (base, mid) = outer
                            .split_once('_')
                            .map_or((outer, 0), |(a, b)| (a, b.parse::<usize>().unwrap()));
                        let copy = mid + 2 * inner;
                        if copy == 0 {
                            base.to_string()
                        } else {
                            format!("{base}#{copy}")
                        }
                    })
                    .collect(),
            )
            .unwrap();
        assert!(relabelled.equals(&four), "{name}");
    }
}
