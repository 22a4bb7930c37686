mod common;

use common::all_subsets;
use cyflat_core::catalog;
use cyflat_core::random::{random_matroid, random_subset, rng};
use cyflat_core::{Matroid, SubsetMask};
use proptest::prelude::*;

fn is_cyclic_brute(m: &Matroid, a: SubsetMask) -> bool {
    a.iter().all(|x| m.rank(a.without(x)) == m.rank(a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_is_unit_increasing_and_submodular(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_matroid(&mut r, 8);
        for _ in 0..40 {
            let x = random_subset(&mut r, &m);
            let y = random_subset(&mut r, &m);
            let rx = m.rank(x);
            prop_assert!(rx <= x.len().min(m.rank_total()));
            for e in (m.full() - x).iter() {
                let re = m.rank(x.with(e));
                prop_assert!(rx <= re && re <= rx + 1);
            }
            prop_assert!(m.rank(x | y) + m.rank(x & y) <= rx + m.rank(y));
        }
    }

    #[test]
    fn rank_is_minimum_over_cyclic_sets_and_superfamilies(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_matroid(&mut r, 8);
        let cyclic: Vec<SubsetMask> = all_subsets(&m).filter(|&a| is_cyclic_brute(&m, a)).collect();
        // a superfamily of the cyclic flats: cyclic flats plus some random sets
        let mut family: Vec<SubsetMask> = m.cyclic_flats().iter().map(|z| z.set).collect();
        for _ in 0..5 {
            family.push(random_subset(&mut r, &m));
        }
        for x in all_subsets(&m) {
            let via_cyclic = cyclic
                .iter()
                .filter(|a| a.is_subset(x))
                .map(|&a| m.rank(a) + (x - a).len())
                .min()
                .unwrap();
            let via_family = family
                .iter()
                .map(|&a| m.rank(a) + (x - a).len())
                .min()
                .unwrap();
            prop_assert_eq!(m.rank(x), via_cyclic);
            prop_assert_eq!(m.rank(x), via_family);
        }
    }

    #[test]
    fn cyclic_flats_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_matroid(&mut r, 10);
        let found: Vec<SubsetMask> = all_subsets(&m)
            .filter(|&x| m.is_cyclic(x) && m.closure(x) == x)
            .collect();
        let mut listed: Vec<SubsetMask> = m.cyclic_flats().iter().map(|z| z.set).collect();
        listed.sort();
        prop_assert_eq!(found, listed);
    }

    #[test]
    fn clones_stay_clones_in_minors(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_matroid(&mut r, 7);
        let x = random_subset(&mut r, &m);
        for class in m.clonal_classes() {
            let pair: Vec<usize> = (class - x).iter().take(2).collect();
            if pair.len() < 2 {
                continue;
            }
            for minor in [m.delete(x).unwrap(), m.contract(x).unwrap()] {
                let keep = m.full() - x;
                let a = keep.iter().position(|e| e == pair[0]).unwrap();
                let b = keep.iter().position(|e| e == pair[1]).unwrap();
                prop_assert!(minor
                    .clonal_classes()
                    .iter()
                    .any(|c| c.contains(a) && c.contains(b)));
            }
        }
    }
}

#[test]
fn lambda_is_symmetric_and_dual_invariant() {
    for (name, m) in catalog::all() {
        let d = m.dual();
        for x in all_subsets(&m) {
            let l = m.lambda(x);
            assert_eq!(l, m.lambda(m.full() - x), "{name}");
            assert_eq!(l, d.lambda(x), "{name}");
            assert!(l <= m.rank_total());
        }
        assert!(d.dual().equals(&m), "{name}");
    }
}

#[test]
fn closure_is_a_closure_operator() {
    let mut r = rng(2);
    for _ in 0..30 {
        let m = random_matroid(&mut r, 8);
        let x = random_subset(&mut r, &m);
        let y = random_subset(&mut r, &m) | x;
        let cx = m.closure(x);
        assert!(x.is_subset(cx));
        assert_eq!(m.closure(cx), cx);
        assert!(cx.is_subset(m.closure(y)));
        assert!(m.is_flat(cx));
    }
}

#[test]
fn minors_match_rank_formulas() {
    let mut r = rng(4);
    for _ in 0..30 {
        let m = random_matroid(&mut r, 8);
        let x = random_subset(&mut r, &m);
        let keep = m.full() - x;
        let del = m.delete(x).unwrap();
        let con = m.contract(x).unwrap();
        for y in all_subsets(&del) {
            let lifted = cyflat_core::mask::deposit(y.0, keep);
            assert_eq!(del.rank(y), m.rank(lifted));
            assert_eq!(con.rank(y), m.rank(lifted | x) - m.rank(x));
        }
    }
    let m = catalog::fig1_m();
    assert!(m.delete(SubsetMask::EMPTY).unwrap().equals(&m));
}

#[test]
fn worked_examples() {
    let m = catalog::fig1_m();
    let n = catalog::fig1_n();
    let g = m.ground();
    let s = |t: &str| g.parse_set(t).unwrap();
    assert_eq!(m.rank(SubsetMask::EMPTY), 0);
    assert_eq!(m.rank(s("1,2,3")), 2);
    assert_eq!(n.rank(s("4,5,6")), 3);
    assert_eq!(m.closure(s("1,2")), s("1,2,3"));
    assert_eq!(m.closure(SubsetMask::EMPTY), SubsetMask::EMPTY);
    assert_eq!(n.closure(s("2,3")), s("1,2,3"));
    assert!(m.is_cyclic(s("1,2,3")));
    assert!(!m.is_cyclic(s("1,2")));
    assert!(m.is_cyclic(SubsetMask::EMPTY));
    assert_eq!(m.lambda(s("1,2,3")), 1);
    assert_eq!(n.lambda(s("1,2,3")), 2);
    assert!(m.is_connected());
    assert!(!m.equals(&n));
    assert_eq!(m.clonal_classes(), vec![s("1,2,3"), s("4,5,6")]);
    assert_eq!(n.clonal_classes(), vec![s("1"), s("2,3"), s("4,5"), s("6")]);
    let flats = n.connected_flats();
    assert!(flats.flats.contains(&s("1,2,3")) && flats.flats.contains(&s("1,4,5")));
    let dual = m.dual();
    let decos: Vec<(Vec<String>, usize)> = dual
        .cyclic_flats()
        .iter()
        .map(|z| (dual.labels_of(z.set), z.rank))
        .collect();
    assert_eq!(
        decos.iter().map(|d| d.1).collect::<Vec<_>>(),
        vec![0, 2, 2, 3]
    );
    assert_eq!(decos[1].0, vec!["1", "2", "3"]);
    let u24 = Matroid::uniform(2, 4).unwrap();
    assert!(u24.dual().equals(&u24));
    assert_eq!(u24.rank(SubsetMask(0b0111)), 2);
}
