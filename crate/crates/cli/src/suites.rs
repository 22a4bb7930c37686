//! Verification suites, one per group of acceptance checks.

use cyflat_core::branchwidth::{
    branch_width_certified, branch_width_exact, decomposition_width, expand_decomposition,
    figure_two_tree, rank_bounded_family, three_branch_tree, three_flats_cover,
    three_flats_cover_plus_two, BranchDecomposition, Tangle,
};
use cyflat_core::catalog;
use cyflat_core::classes::{
    expansion_positroid_order, is_positroid_order, positroid_search, presentation_matroid,
    rank_one, verify_presentation,
};
use cyflat_core::connectivity::{
    is_vertical_separation, tutte_connectivity, two_flats_cover_plus_one, vertical_connectivity,
    ConnValue,
};
use cyflat_core::expansion::{
    deflate, expand, expand_presentation, expand_via_union, matroid_union, Presentation,
};
use cyflat_core::invariants::{config_isomorphic, configuration, tutte_polynomial};
use cyflat_core::random::{random_matroid, random_presentation, random_subset, rng};
use cyflat_core::{Error, Matroid, SubsetMask};
use serde_json::{json, Value};

use crate::report::{Check, Recorder, VerificationReport};

pub const SUITES: [&str; 8] = [
    "figures",
    "tau",
    "kappa",
    "bw",
    "expansion-lemmas",
    "classes",
    "equivalences",
    "oracles",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    /// Exact branch-width only on ground sets of at most this size.
    Exact(usize),
    /// Branch-width by certificates only.
    Certify,
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub seed: u64,
    pub trials: usize,
    pub budget: Budget,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            trials: 200,
            budget: Budget::Exact(10),
        }
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Option<VerificationReport> {
    let report = match name {
        "figures" => figures(),
        "tau" => tau(),
        "kappa" => kappa(),
        "bw" => bw(opts),
        "expansion-lemmas" => expansion_lemmas(opts),
        "classes" => classes(),
        "equivalences" => equivalences(opts),
        "oracles" => oracles(opts),
        _ => return None,
    };
    Some(report)
}

fn conn(v: ConnValue) -> Value {
    match v {
        ConnValue::Finite(k) => json!(k),
        ConnValue::Infinite => json!("infinite"),
    }
}

fn named(name: &str, t: usize) -> Value {
    json!({ "matroid": name, "t": t })
}

fn expanded(name: &str, t: usize) -> (Matroid, cyflat_core::expansion::ExpansionMap) {
    let m = catalog::by_name(name).expect("catalog name");
    expand(&m, t).expect("catalog expansions fit")
}

fn record_conn<F>(
    rec: &mut Recorder,
    criterion: u8,
    what: &str,
    name: &str,
    t: usize,
    expected: Value,
    f: F,
) where
    F: Fn(&Matroid) -> cyflat_core::Result<cyflat_core::connectivity::ConnectivityResult>,
{
    let (m, _) = expanded(name, t);
    let label = if t == 1 {
        format!("{what}({name})")
    } else {
        format!("{what}({name}^{t})")
    };
    match f(&m) {
        Ok(r) => rec.push(Check::new(
            criterion,
            label,
            named(name, t),
            expected,
            conn(r.value),
        )),
        Err(e) => rec.error(criterion, label, named(name, t), e),
    }
}

fn exact_width(rec: &mut Recorder, criterion: u8, name: &str, expected: usize) {
    let m = catalog::by_name(name).expect("catalog name");
    match branch_width_exact(&m) {
        Ok((w, _)) => rec.push(Check::new(
            criterion,
            format!("bw({name}) exact"),
            named(name, 1),
            json!(expected),
            json!(w),
        )),
        Err(e) => rec.error(criterion, format!("bw({name}) exact"), named(name, 1), e),
    }
}

fn figures() -> VerificationReport {
    let mut rec = Recorder::new("figures");
    for (name, v) in [("fig1_M", 2), ("fig1_N", 3)] {
        record_conn(&mut rec, 1, "tau", name, 1, json!(v), tutte_connectivity);
    }
    for (name, v) in [("fig1_M", 2), ("fig1_N", 3), ("fig3_M", 3), ("fig3_N", 3)] {
        record_conn(
            &mut rec,
            1,
            "kappa",
            name,
            1,
            json!(v),
            vertical_connectivity,
        );
    }
    exact_width(&mut rec, 1, "fig2_M", 3);
    exact_width(&mut rec, 1, "fig2_N", 4);
    for (a, b) in [("fig1_M", "fig1_N"), ("fig2_M", "fig2_N")] {
        let ma = catalog::by_name(a).unwrap();
        let mb = catalog::by_name(b).unwrap();
        let input = json!({ "matroids": [a, b] });
        match (configuration(&ma), configuration(&mb)) {
            (Ok(ca), Ok(cb)) => rec.push(Check::new(
                1,
                format!("config_isomorphic({a}, {b})"),
                input,
                json!(true),
                json!(config_isomorphic(&ca, &cb).is_some()),
            )),
            (Err(e), _) | (_, Err(e)) => rec.error(1, "configuration", input, e),
        }
    }
    let input = json!({ "matroids": ["fig1_M", "fig1_N"] });
    match (
        tutte_polynomial(&catalog::fig1_m()),
        tutte_polynomial(&catalog::fig1_n()),
    ) {
        (Ok(a), Ok(b)) => rec.push(Check::judged(
            1,
            "tutte(fig1_M) = tutte(fig1_N)",
            input,
            json!(a.to_string()),
            json!(b.to_string()),
            a == b,
        )),
        (Err(e), _) | (_, Err(e)) => rec.error(1, "tutte", input, e),
    }
    rec.finish()
}

fn tau() -> VerificationReport {
    let mut rec = Recorder::new("tau");
    for t in 1..=3 {
        record_conn(
            &mut rec,
            2,
            "tau",
            "fig1_M",
            t,
            json!(t + 1),
            tutte_connectivity,
        );
        record_conn(
            &mut rec,
            2,
            "tau",
            "fig1_N",
            t,
            json!(2 * t + 1),
            tutte_connectivity,
        );
        let gap = (|| -> cyflat_core::Result<Value> {
            let n = tutte_connectivity(&expanded("fig1_N", t).0)?.value;
            let m = tutte_connectivity(&expanded("fig1_M", t).0)?.value;
            Ok(match (n, m) {
                (ConnValue::Finite(a), ConnValue::Finite(b)) => json!(a as i64 - b as i64),
                _ => json!("infinite"),
            })
        })();
        let input = json!({ "matroids": ["fig1_N", "fig1_M"], "t": t });
        match gap {
            Ok(g) => rec.push(Check::new(
                2,
                format!("tau gap at t={t}"),
                input,
                json!(t),
                g,
            )),
            Err(e) => rec.error(2, format!("tau gap at t={t}"), input, e),
        }
    }
    rec.finish()
}

fn kappa() -> VerificationReport {
    let mut rec = Recorder::new("kappa");
    for t in 1..=3 {
        record_conn(
            &mut rec,
            3,
            "kappa",
            "fig1_M",
            t,
            json!(t + 1),
            vertical_connectivity,
        );
        record_conn(
            &mut rec,
            3,
            "kappa",
            "fig1_N",
            t,
            json!(2 * t + 1),
            vertical_connectivity,
        );
    }
    record_conn(
        &mut rec,
        3,
        "kappa",
        "fig3_N",
        2,
        json!(6),
        vertical_connectivity,
    );
    let (n2, _) = expanded("fig3_N", 2);
    rec.push(Check::new(
        3,
        "r(fig3_N^2)",
        named("fig3_N", 2),
        json!(6),
        json!(n2.rank_total()),
    ));

    let (m2, _) = expanded("fig3_M", 2);
    let x = m2
        .ground()
        .parse_set("1,1#1,2,2#1,3,3#1,6")
        .expect("labels");
    rec.push(Check::new(
        3,
        "vertical 5-separation of fig3_M^2",
        json!({ "matroid": "fig3_M", "t": 2, "set": m2.labels_of(x) }),
        json!({ "separation": true, "r": 5, "r_complement": 5, "lambda": 4 }),
        json!({
            "separation": is_vertical_separation(&m2, x, 5),
            "r": m2.rank(x),
            "r_complement": m2.rank(m2.full() - x),
            "lambda": m2.lambda(x),
        }),
    ));
    match (vertical_connectivity(&m2), vertical_connectivity(&n2)) {
        (Ok(a), Ok(b)) => rec.push(Check::judged(
            3,
            "kappa(fig3_M^2) differs from kappa(fig3_N^2)",
            json!({ "matroids": ["fig3_M", "fig3_N"], "t": 2 }),
            json!({ "kappa(fig3_N^2)": conn(b.value), "kappa(fig3_M^2)": "at most 5" }),
            json!({ "kappa(fig3_N^2)": conn(b.value), "kappa(fig3_M^2)": conn(a.value) }),
            a.value != b.value && a.finite().is_some_and(|k| k <= 5),
        )),
        (Err(e), _) | (_, Err(e)) => rec.error(3, "kappa(fig3_M^2)", named("fig3_M", 2), e),
    }

    for t in 1..=2 {
        let gap = (|| -> cyflat_core::Result<i64> {
            let n = vertical_connectivity(&expanded("fig1_N", 2 * t).0)?
                .finite()
                .unwrap_or(0);
            let m = vertical_connectivity(&expanded("fig1_M", 2 * t).0)?
                .finite()
                .unwrap_or(0);
            Ok(n as i64 - m as i64)
        })();
        let input = json!({ "matroids": ["fig1_N", "fig1_M"], "t": 2 * t });
        match gap {
            Ok(g) => rec.push(Check::new(
                3,
                format!("kappa gap at t={}", 2 * t),
                input,
                json!(2 * t),
                json!(g),
            )),
            Err(e) => rec.error(3, format!("kappa gap at t={}", 2 * t), input, e),
        }
    }
    rec.finish()
}

/// The decomposition of `fig2_N^2` from the gap construction: one branch on
/// `S_{2,3,4}` and one copy of 1, one on `S_{5,6}` and the other copy of 1,
/// one on `S_{7,8,9}`.
pub fn figure_two_n_gap_tree(n2: &Matroid) -> cyflat_core::Result<BranchDecomposition> {
    let g = n2.ground();
    let parts = [
        g.parse_set("2,2#1,3,3#1,4,4#1,1")?,
        g.parse_set("5,5#1,6,6#1,1#1")?,
        g.parse_set("7,7#1,8,8#1,9,9#1")?,
    ];
    three_branch_tree(n2.len(), parts)
}

fn certified(
    rec: &mut Recorder,
    name: &str,
    m: &Matroid,
    upper: cyflat_core::Result<BranchDecomposition>,
    tangle: Tangle,
    expected: usize,
) {
    let input = json!({
        "matroid": name,
        "t": 2,
        "tangle": tangle.to_json(m),
    });
    let label = format!("bw({name}^2) certified");
    match upper.and_then(|u| branch_width_certified(m, &u, &tangle)) {
        Ok(c) => rec.push(Check::new(
            4,
            label,
            input,
            json!({ "width": expected, "order": expected, "exact": true }),
            json!({ "width": c.width, "order": c.order, "exact": c.exact }),
        )),
        Err(e) => rec.error(4, label, input, e),
    }
}

fn bw(opts: &SuiteOptions) -> VerificationReport {
    let mut rec = Recorder::new("bw");
    let exact_limit = match opts.budget {
        Budget::Exact(n) => n,
        Budget::Certify => 0,
    };
    for (name, v) in [("fig2_M", 3), ("fig2_N", 4)] {
        if exact_limit >= 9 {
            exact_width(&mut rec, 4, name, v);
        }
    }
    let m = catalog::fig2_m();
    let order3 = Tangle::new(3, cyflat_core::branchwidth::TangleMembers::SizeAtMost(1));
    match figure_two_tree(m.ground()).and_then(|t| branch_width_certified(&m, &t, &order3)) {
        Ok(c) => rec.push(Check::new(
            4,
            "bw(fig2_M) certified",
            named("fig2_M", 1),
            json!({ "width": 3, "exact": true }),
            json!({ "width": c.width, "exact": c.exact }),
        )),
        Err(e) => rec.error(4, "bw(fig2_M) certified", named("fig2_M", 1), e),
    }

    let (m2, map) = expanded("fig2_M", 2);
    let upper = figure_two_tree(m.ground()).map(|t| expand_decomposition(&t, &map));
    certified(
        &mut rec,
        "fig2_M",
        &m2,
        upper,
        Tangle::new(5, rank_bounded_family(4)),
        5,
    );

    let (n2, _) = expanded("fig2_N", 2);
    certified(
        &mut rec,
        "fig2_N",
        &n2,
        figure_two_n_gap_tree(&n2),
        Tangle::new(6, rank_bounded_family(5)),
        6,
    );
    rec.push(Check::judged(
        4,
        "bw(fig2_N^2) below t(bw(fig2_N)-1)+1 and r+1",
        named("fig2_N", 2),
        json!({ "upper_bound": 7, "r_plus_one": n2.rank_total() + 1 }),
        json!(6),
        6 < 7 && 6 < n2.rank_total() + 1,
    ));

    if exact_limit >= 18 {
        for (name, mt, v) in [("fig2_M", &m2, 5), ("fig2_N", &n2, 6)] {
            match branch_width_exact(mt) {
                Ok((w, _)) => rec.push(Check::new(
                    4,
                    format!("bw({name}^2) exact"),
                    named(name, 2),
                    json!(v),
                    json!(w),
                )),
                Err(e) => rec.error(4, format!("bw({name}^2) exact"), named(name, 2), e),
            }
        }
    }
    rec.finish()
}

/// Catalog matroids with `t in 1..=3`, `t * n <= 62`.
fn lemma_cases() -> Vec<(&'static str, Matroid, usize)> {
    let mut out = Vec::new();
    for (name, m) in catalog::all() {
        for t in 1..=3 {
            if t * m.len() <= 62 {
                out.push((name, m.clone(), t));
            }
        }
    }
    out
}

/// Relabels `e_i#j` (an element of the double 2-expansion after renaming the
/// inner `#` to `_`) to `e#(2i+j)`, the matching label of the 4-expansion.
fn block_of_blocks_label(label: &str) -> String {
    let (head, j) = match label.rsplit_once('#') {
        Some((h, j)) => (h, j.parse::<usize>().unwrap_or(0)),
        None => (label, 0),
    };
    let (base, i) = match head.rsplit_once('_') {
        Some((b, i)) => (b, i.parse::<usize>().unwrap_or(0)),
        None => (head, 0),
    };
    cyflat_core::expansion::expanded_label(base, 2 * i + j)
}

/// Renames a deflation of an expansion of `m` onto `m`: elements descending from
/// the clonal class `C` of `m` are matched, in ground order, with the elements of `C`.
fn relabel_deflated(d: &Matroid, m: &Matroid) -> Option<Matroid> {
    let base = |l: &str| l.split(['#', '_']).next().unwrap_or(l).to_string();
    let mut labels: Vec<Option<String>> = vec![None; d.len()];
    for class in m.clonal_classes() {
        let names = m.labels_of(class);
        let from: Vec<usize> = (0..d.len())
            .filter(|&i| names.contains(&base(d.ground().label(i))))
            .collect();
        if from.len() != names.len() {
            return None;
        }
        for (i, name) in from.into_iter().zip(names) {
            labels[i] = Some(name);
        }
    }
    let labels: Option<Vec<String>> = labels.into_iter().collect();
    d.with_labels(labels?).ok()
}

fn composition(m: &Matroid) -> cyflat_core::Result<(bool, bool)> {
    let (m2, _) = expand(m, 2)?;
    let renamed: Vec<String> = m2
        .ground()
        .labels()
        .iter()
        .map(|l| l.replace('#', "_"))
        .collect();
    let (m22, _) = expand(&m2.with_labels(renamed)?, 2)?;
    let (m4, _) = expand(m, 4)?;
    let relabelled: Vec<String> = m22
        .ground()
        .labels()
        .iter()
        .map(|l| block_of_blocks_label(l))
        .collect();
    let explicit = m22.with_labels(relabelled)?.equals(&m4);
    let round_trip = relabel_deflated(&deflate(&m22, 4)?, m).is_some_and(|d| d.equals(m))
        && relabel_deflated(&deflate(&m4, 4)?, m).is_some_and(|d| d.equals(m));
    Ok((explicit, round_trip))
}

fn expansion_lemmas(opts: &SuiteOptions) -> VerificationReport {
    let mut rec = Recorder::new("expansion-lemmas");
    let mut r = rng(opts.seed);
    for (name, m, t) in lemma_cases() {
        let input = named(name, t);
        let (mt, map) = match expand(&m, t) {
            Ok(x) => x,
            Err(e) => {
                rec.error(5, format!("expand({name},{t})"), input, e);
                continue;
            }
        };

        let mut bad = Vec::new();
        for _ in 0..200 {
            let x = random_subset(&mut r, &m);
            if mt.rank(map.blocks(x)) != t * m.rank(x) {
                bad.push(m.labels_of(x));
            }
        }
        rec.push(Check::new(
            5,
            format!("rank scaling on {name}^{t}"),
            json!({ "matroid": name, "t": t, "seed": opts.seed, "subsets": 200 }),
            json!([]),
            json!(bad),
        ));

        let dual = expand(&m.dual(), t).map(|(d, _)| d.equals(&mt.dual()));
        match dual {
            Ok(ok) => rec.push(Check::new(
                5,
                format!("dual commutation on {name}^{t}"),
                input.clone(),
                json!(true),
                json!(ok),
            )),
            Err(e) => rec.error(
                5,
                format!("dual commutation on {name}^{t}"),
                input.clone(),
                e,
            ),
        }

        let mut bad = Vec::new();
        for _ in 0..50 {
            let x = random_subset(&mut r, &m);
            let sx = map.blocks(x);
            let ok = (|| -> cyflat_core::Result<bool> {
                let del = expand(&m.delete(x)?, t)?.0.equals(&mt.delete(sx)?);
                let con = expand(&m.contract(x)?, t)?.0.equals(&mt.contract(sx)?);
                Ok(del && con)
            })();
            if !matches!(ok, Ok(true)) {
                bad.push(m.labels_of(x));
            }
        }
        rec.push(Check::new(
            5,
            format!("minor commutation on {name}^{t}"),
            json!({ "matroid": name, "t": t, "seed": opts.seed, "subsets": 50 }),
            json!([]),
            json!(bad),
        ));

        let mut bad = Vec::new();
        for x in (0..1u64 << m.len()).map(SubsetMask) {
            let sx = map.blocks(x);
            if m.is_flat(x) != mt.is_flat(sx) || m.is_cyclic(x) != mt.is_cyclic(sx) {
                bad.push(m.labels_of(x));
            }
        }
        rec.push(Check::new(
            5,
            format!("flat and cyclic transfer on {name}^{t}"),
            input.clone(),
            json!([]),
            json!(bad),
        ));
    }

    for (name, m) in catalog::all() {
        let input = json!({ "matroid": name, "t": [2, 2, 4] });
        match composition(&m) {
            Ok((explicit, round_trip)) => rec.push(Check::new(
                5,
                format!("composition on {name}"),
                input,
                json!({ "relabelled_equal": true, "deflate_round_trip": true }),
                json!({ "relabelled_equal": explicit, "deflate_round_trip": round_trip }),
            )),
            Err(e) => rec.error(5, format!("composition on {name}"), input, e),
        }
    }

    let m = catalog::fig1_m();
    let g = m.ground();
    let parts: Vec<Matroid> = ["1,2,3,4,5,6", "1,2,3", "4,5,6"]
        .iter()
        .map(|s| rank_one(g, g.parse_set(s).expect("labels")))
        .collect();
    let input =
        json!({ "matroid": "fig1_M", "t": 2, "rank_one_parts": ["1,2,3,4,5,6", "1,2,3", "4,5,6"] });
    let via_union = expand_via_union(&m, &parts, 2).map(|u| u.equals(&expand(&m, 2).unwrap().0));
    match via_union {
        Ok(ok) => rec.push(Check::new(
            6,
            "expand_via_union(fig1_M, 2) = expand(fig1_M, 2)",
            input,
            json!(true),
            json!(ok),
        )),
        Err(e) => rec.error(6, "expand_via_union(fig1_M, 2)", input, e),
    }
    let two = &parts[1..];
    let input = json!({ "matroid": "fig1_M", "t": 2, "rank_one_parts": ["1,2,3", "4,5,6"] });
    let rank = matroid_union(two).map(|u| u.rank_total()).unwrap_or(0);
    let observed = match expand_via_union(&m, two, 2) {
        Err(Error::DecompositionMismatch) => {
            json!({ "union_rank": rank, "error": "DecompositionMismatch" })
        }
        Err(e) => json!({ "union_rank": rank, "error": e.to_string() }),
        Ok(_) => json!({ "union_rank": rank, "error": null }),
    };
    rec.push(Check::new(
        6,
        "two rank-1 parts on 123 and 456 do not present fig1_M",
        input,
        json!({ "union_rank": 2, "error": "DecompositionMismatch" }),
        observed,
    ));
    rec.finish()
}

fn classes() -> VerificationReport {
    let mut rec = Recorder::new("classes");
    for name in ["fig1_M", "fig1_N", "fig2_M"] {
        let m = catalog::by_name(name).unwrap();
        for t in 2..=3 {
            if m.len() * t > 18 {
                continue;
            }
            let label = format!("positroid order on {name}^{t}");
            let res = (|| -> cyflat_core::Result<Option<(Vec<String>, bool)>> {
                let Some(order) = positroid_search(&m)? else {
                    return Ok(None);
                };
                let (mt, map) = expand(&m, t)?;
                let lifted = expansion_positroid_order(&m, &order, &map)?;
                let ok = is_positroid_order(&mt, &lifted)?.holds();
                Ok(Some((order.labels(m.ground()), ok)))
            })();
            match res {
                Ok(Some((base, ok))) => rec.push(Check::new(
                    7,
                    label,
                    json!({ "matroid": name, "t": t, "base_order": base }),
                    json!(true),
                    json!(ok),
                )),
                Ok(None) => rec.push(Check::new(
                    7,
                    label,
                    named(name, t),
                    json!(true),
                    json!("no positroid order of the base matroid"),
                )),
                Err(e) => rec.error(7, label, named(name, t), e),
            }
        }
    }
    for (name, text) in [
        ("fig1_M", "1,2,3,4,5,6|1,2,3|4,5,6"),
        ("fig2_M", "1,2,3,4,5,6|4,5,6,7,8,9|1,2,3,7,8,9"),
    ] {
        let m = catalog::by_name(name).unwrap();
        for t in 2..=3 {
            if m.len() * t > 22 {
                continue;
            }
            let input = json!({ "matroid": name, "t": t, "presentation": text });
            let res = (|| -> cyflat_core::Result<(bool, bool)> {
                let p = Presentation::parse(m.ground(), text)?;
                let base = verify_presentation(&m, &p)?;
                let (mt, map) = expand(&m, t)?;
                let lifted = expand_presentation(&p, &map);
                Ok((base, verify_presentation(&mt, &lifted)?))
            })();
            match res {
                Ok((base, lifted)) => rec.push(Check::new(
                    7,
                    format!("presentation of {name}^{t}"),
                    input,
                    json!({ "base": true, "expanded": true }),
                    json!({ "base": base, "expanded": lifted }),
                )),
                Err(e) => rec.error(7, format!("presentation of {name}^{t}"), input, e),
            }
        }
    }
    rec.finish()
}

fn sample(seed: u64, trials: usize, max_n: usize) -> Vec<Matroid> {
    let mut r = rng(seed);
    (0..trials).map(|_| random_matroid(&mut r, max_n)).collect()
}

fn counterexample_check(
    rec: &mut Recorder,
    criterion: u8,
    name: &str,
    params: Value,
    instances: usize,
    bad: Vec<Value>,
) {
    rec.instances(instances.saturating_sub(1));
    rec.push(Check::new(
        criterion,
        name,
        json!({ "params": params, "counterexamples": bad }),
        json!(0),
        json!(bad.len()),
    ));
}

fn equivalences(opts: &SuiteOptions) -> VerificationReport {
    let mut rec = Recorder::new("equivalences");

    let mut bad = Vec::new();
    let mut covered = 0;
    for m in sample(opts.seed, opts.trials, 6) {
        let res = (|| -> cyflat_core::Result<Vec<usize>> {
            let cover = two_flats_cover_plus_one(&m)?.is_some();
            covered += cover as usize;
            let mut wrong = Vec::new();
            for t in 2..=3 {
                let (mt, _) = expand(&m, t)?;
                let k = vertical_connectivity(&mt)?.finite().unwrap_or(usize::MAX);
                if cover != (k < mt.rank_total()) {
                    wrong.push(t);
                }
            }
            Ok(wrong)
        })();
        match res {
            Ok(w) if w.is_empty() => {}
            Ok(w) => bad.push(json!({ "matroid": m.to_json(), "t": w })),
            Err(e) => bad.push(json!({ "matroid": m.to_json(), "error": e.to_string() })),
        }
    }
    counterexample_check(
        &mut rec,
        8,
        "two flats cover all but one iff kappa(M^t) < r(M^t), t in {2,3}",
        json!({ "seed": opts.seed, "trials": opts.trials, "max_n": 6, "covered": covered }),
        opts.trials,
        bad,
    );

    let mut bad = Vec::new();
    let mut covered = 0;
    for m in sample(opts.seed.wrapping_add(1), opts.trials, 5) {
        let res = (|| -> cyflat_core::Result<bool> {
            let cover = three_flats_cover_plus_two(&m)?.is_some();
            covered += cover as usize;
            let (mt, _) = expand(&m, 3)?;
            let (w, _) = branch_width_exact(&mt)?;
            Ok(cover == (w <= mt.rank_total()))
        })();
        match res {
            Ok(true) => {}
            Ok(false) => bad.push(json!({ "matroid": m.to_json(), "t": 3 })),
            Err(e) => bad.push(json!({ "matroid": m.to_json(), "error": e.to_string() })),
        }
    }
    counterexample_check(
        &mut rec,
        8,
        "three flats cover all but two iff bw(M^3) <= r(M^3)",
        json!({ "seed": opts.seed.wrapping_add(1), "trials": opts.trials, "max_n": 5, "covered": covered }),
        opts.trials,
        bad,
    );

    let mut bad = Vec::new();
    let mut skipped = 0;
    let mut covered = 0;
    let mut r = rng(opts.seed.wrapping_add(2));
    let mut checked = 0;
    while checked < opts.trials {
        let m = random_matroid(&mut r, 8);
        if m.rank_total() < 2 {
            skipped += 1;
            continue;
        }
        checked += 1;
        let res = (|| -> cyflat_core::Result<bool> {
            let cover = three_flats_cover(&m)?.is_some();
            covered += cover as usize;
            let (w, _) = branch_width_exact(&m)?;
            Ok(cover == (w <= m.rank_total()))
        })();
        match res {
            Ok(true) => {}
            Ok(false) => bad.push(json!({ "matroid": m.to_json() })),
            Err(e) => bad.push(json!({ "matroid": m.to_json(), "error": e.to_string() })),
        }
    }
    counterexample_check(
        &mut rec,
        8,
        "bw(M) <= r(M) iff three proper flats cover E, r(M) >= 2",
        json!({
            "seed": opts.seed.wrapping_add(2),
            "trials": opts.trials,
            "max_n": 8,
            "discarded_rank_below_two": skipped,
            "covered": covered,
        }),
        opts.trials,
        bad,
    );
    rec.finish()
}

/// Every cubic tree whose leaves are labelled by `0..n`, built by inserting
/// leaf `k` on each edge of every tree on `0..k`.
pub fn all_cubic_trees(n: usize) -> Vec<BranchDecomposition> {
    if n < 2 {
        return vec![
            BranchDecomposition::new(n, Vec::new(), (0..n).collect()).expect("trivial tree")
        ];
    }
    // (vertex count, edges, leaf_of)
    type Raw = (usize, Vec<(usize, usize)>, Vec<usize>);
    let mut trees: Vec<Raw> = vec![(2, vec![(0, 1)], vec![0, 1])];
    for k in 2..n {
        let mut next = Vec::new();
        for (count, edges, leaf_of) in &trees {
            for i in 0..edges.len() {
                let (u, v) = edges[i];
                let (w, leaf) = (*count, count + 1);
                let mut e = edges.clone();
                e[i] = (u, w);
                e.push((w, v));
                e.push((w, leaf));
                let mut l = leaf_of.clone();
                l.push(leaf);
                debug_assert_eq!(l.len(), k + 1);
                next.push((count + 2, e, l));
            }
        }
        trees = next;
    }
    trees
        .into_iter()
        .map(|(c, e, l)| BranchDecomposition::new(c, e, l).expect("inserted trees are cubic"))
        .collect()
}

/// Maximum matching between the elements of `x` and the sets of `p`.
pub fn matching_rank(p: &Presentation, x: SubsetMask) -> usize {
    fn augment(e: usize, p: &Presentation, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for (i, s) in p.sets.iter().enumerate() {
            if s.contains(e) && !seen[i] {
                seen[i] = true;
                if owner[i].is_none_or(|o| augment(o, p, seen, owner)) {
                    owner[i] = Some(e);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; p.sets.len()];
    x.iter()
        .filter(|&e| augment(e, p, &mut vec![false; p.sets.len()], &mut owner))
        .count()
}

/// `min (r(C) + |X - C|)` over all cyclic sets `C`, cyclic sets found from `rank`.
fn cyclic_minimum<F: Fn(SubsetMask) -> usize>(n: usize, rank: &F, x: SubsetMask) -> usize {
    (0..1u64 << n)
        .map(SubsetMask)
        .filter(|&c| c.iter().all(|e| rank(c.without(e)) == rank(c)))
        .map(|c| rank(c) + (x - c).len())
        .min()
        .expect("the empty set is cyclic")
}

fn oracles(opts: &SuiteOptions) -> VerificationReport {
    let mut rec = Recorder::new("oracles");
    let trees: Vec<Vec<BranchDecomposition>> = (0..=6).map(all_cubic_trees).collect();
    let mut bad = Vec::new();
    let mut count = 0;
    for (name, m) in catalog::all() {
        for s in (0..1u64 << m.len()).map(SubsetMask) {
            if s.len() > 6 {
                continue;
            }
            count += 1;
            let res = (|| -> cyflat_core::Result<(usize, usize)> {
                let restricted = m.restrict(s)?;
                let (dp, tree) = branch_width_exact(&restricted)?;
                let mut best = usize::MAX;
                for t in &trees[s.len()] {
                    best = best.min(decomposition_width(&restricted, t)?);
                }
                if decomposition_width(&restricted, &tree)? != dp {
                    return Ok((dp, usize::MAX));
                }
                Ok((dp, best))
            })();
            match res {
                Ok((a, b)) if a == b => {}
                Ok((a, b)) => bad.push(json!({ "matroid": name, "restriction": m.labels_of(s), "dp": a, "trees": b })),
                Err(e) => bad.push(json!({ "matroid": name, "restriction": m.labels_of(s), "error": e.to_string() })),
            }
        }
    }
    counterexample_check(
        &mut rec,
        9,
        "exact branch-width equals the minimum over all cubic trees",
        json!({ "catalog_restrictions_up_to": 6 }),
        count,
        bad,
    );

    let mut bad = Vec::new();
    let mut count = 0;
    for (name, m) in catalog::all() {
        if m.len() > 8 {
            continue;
        }
        let rank = |x: SubsetMask| m.rank_uncached(x);
        for x in (0..1u64 << m.len()).map(SubsetMask) {
            count += 1;
            if m.rank(x) != cyclic_minimum(m.len(), &rank, x) {
                bad.push(json!({ "matroid": name, "set": m.labels_of(x) }));
            }
        }
    }
    let mut r = rng(opts.seed.wrapping_add(3));
    let mut generated = 0;
    for _ in 0..opts.trials.min(60) {
        let n = 1 + (generated % 8);
        generated += 1;
        let p = random_presentation(&mut r, n);
        let ground = cyflat_core::GroundSet::numbered(n).expect("small");
        let Ok(m) = presentation_matroid(&p, &ground) else {
            bad.push(json!({ "presentation": p.sets.iter().map(|s| s.0).collect::<Vec<_>>(), "error": "union failed" }));
            continue;
        };
        let d = m.dual();
        let full = m.full();
        let oracle = |x: SubsetMask| matching_rank(&p, x);
        let dual_oracle = |x: SubsetMask| x.len() + oracle(full - x) - oracle(full);
        for x in (0..1u64 << n).map(SubsetMask) {
            count += 2;
            let primal = [m.rank(x), oracle(x), cyclic_minimum(n, &oracle, x)];
            let dual = [
                d.rank(x),
                dual_oracle(x),
                cyclic_minimum(n, &dual_oracle, x),
            ];
            if primal.iter().any(|&v| v != primal[0]) || dual.iter().any(|&v| v != dual[0]) {
                bad.push(json!({
                    "presentation": p.sets.iter().map(|s| m.labels_of(*s)).collect::<Vec<_>>(),
                    "set": m.labels_of(x),
                    "primal": primal,
                    "dual": dual,
                }));
            }
        }
    }
    counterexample_check(
        &mut rec,
        9,
        "rank from cyclic flats equals matching rank and the cyclic-set minimum",
        json!({ "catalog_up_to": 8, "seed": opts.seed.wrapping_add(3), "presentations": generated }),
        count,
        bad,
    );
    rec.finish()
}
