use std::path::Path;

use cyflat_core::branchwidth::{
    branch_width_certified, branch_width_exact, decomposition_width, expand_decomposition,
    verify_tangle, BranchDecomposition, Tangle, TangleMembers, EXACT_LIMIT,
};
use cyflat_core::catalog;
use cyflat_core::classes::{
    expansion_positroid_order, is_positroid_order, positroid_search, verify_presentation,
    LinearOrder,
};
use cyflat_core::connectivity::{
    flats_cover, kappa_scaling_check, tutte_connectivity, vertical_connectivity, ConnValue,
    ScalingCheck,
};
use cyflat_core::expansion::{deflate, expand, matroid_union, Presentation};
use cyflat_core::invariants::{config_isomorphic, configuration, tutte_polynomial};
use cyflat_core::random::{random_subset, rng};
use cyflat_core::{Error, Matroid, SubsetMask};
use serde_json::{json, Value};

use crate::args::{Cli, Command, ConfigAction, Source, TangleAction};
use crate::report::{Check, Recorder, VerificationReport};
use crate::suites::{run_suite, Budget, SuiteOptions, SUITES};

pub enum Outcome {
    /// Exit 0.
    Done(Value),
    /// A check came out negative; exit 2.
    Failed(Value),
}

pub enum CliError {
    Usage(String),
    Compute(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

pub fn execute(cli: &Cli) -> CliResult<Outcome> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.global.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))?;
    pool.install(|| dispatch(cli))
}

fn parse_budget(text: Option<&str>) -> CliResult<Option<Budget>> {
    let Some(text) = text else { return Ok(None) };
    if text == "certify" {
        return Ok(Some(Budget::Certify));
    }
    text.strip_prefix("exact:")
        .and_then(|n| n.parse().ok())
        .map(|n| Some(Budget::Exact(n)))
        .ok_or_else(|| CliError::Usage(format!("budget {text:?} is not exact:<n> or certify")))
}

/// A catalog name or a path to a matroid JSON file.
fn load(name_or_path: &str) -> CliResult<Matroid> {
    let path = Path::new(name_or_path);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {name_or_path}: {e}")))?;
        return Ok(Matroid::from_json_str(&text)?);
    }
    catalog::by_name(name_or_path)
        .map_err(|_| CliError::Usage(format!("{name_or_path:?} is neither a file nor a catalog matroid")))
}

fn source(cli: &Cli, s: &Source) -> CliResult<Matroid> {
    if let Some(name_or_path) = &s.matroid {
        return load(name_or_path);
    }
    if let Some(path) = &cli.global.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        return Ok(Matroid::from_json_str(&text)?);
    }
    if let Some(name) = &cli.global.catalog {
        return load(name);
    }
    Err(CliError::Usage(
        "no matroid given: pass a catalog name or file, --input or --catalog".into(),
    ))
}

/// `rank-lt:<c>:<k>` or `size-le:<s>:<k>`.
fn parse_tangle(text: &str) -> CliResult<Tangle> {
    let bad = || {
        CliError::Usage(format!(
            "tangle {text:?} is not rank-lt:<c>:<k> or size-le:<s>:<k>"
        ))
    };
    let mut parts = text.split(':');
    let kind = parts.next().ok_or_else(bad)?;
    let a: usize = parts.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
    let k: usize = parts.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    let members = match kind {
        "rank-lt" => TangleMembers::RankBelow(a),
        "size-le" => TangleMembers::SizeAtMost(a),
        _ => return Err(bad()),
    };
    Ok(Tangle::new(k, members))
}

fn conn(v: ConnValue) -> Value {
    match v {
        ConnValue::Finite(k) => json!(k),
        ConnValue::Infinite => json!("infinite"),
    }
}

fn verdict(ok: bool, v: Value) -> Outcome {
    if ok {
        Outcome::Done(v)
    } else {
        Outcome::Failed(v)
    }
}

fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    let budget = parse_budget(cli.global.budget.as_deref())?;
    let done = |v: Value| Ok(Outcome::Done(v));
    match &cli.command {
        Command::Validate(s) => match source(cli, s) {
            Ok(m) => done(json!({
                "valid": true,
                "elements": m.len(),
                "rank": m.rank_total(),
                "cyclic_flats": m.cyclic_flats().len(),
            })),
            Err(CliError::Compute(Error::Axiom(v))) => Ok(Outcome::Failed(json!({
                "valid": false,
                "violation": v.to_string(),
            }))),
            Err(e) => Err(e),
        },
        Command::Rank { source: s, set } => {
            let m = source(cli, s)?;
            let x = m.ground().parse_set(set)?;
            done(json!({
                "set": m.labels_of(x),
                "rank": m.rank(x),
                "closure": m.labels_of(m.closure(x)),
            }))
        }
        Command::Tutte(s) => {
            let m = source(cli, s)?;
            let p = tutte_polynomial(&m)?;
            let mut v = p.to_json();
            v["polynomial"] = json!(p.to_string());
            done(v)
        }
        Command::Config {
            action: Some(ConfigAction::Compare { a, b }),
            ..
        } => {
            let (ma, mb) = (load(a)?, load(b)?);
            let iso = config_isomorphic(&configuration(&ma)?, &configuration(&mb)?);
            done(json!({ "isomorphic": iso.is_some(), "mapping": iso }))
        }
        Command::Config {
            action: None,
            source: s,
        } => {
            let m = source(cli, s)?;
            done(configuration(&m)?.to_json())
        }
        Command::Expand { source: s, t } => {
            let m = source(cli, s)?;
            let (mt, map) = expand(&m, *t)?;
            done(json!({ "matroid": mt.to_json(), "map": map.to_json() }))
        }
        Command::Deflate { source: s, t } => {
            let m = source(cli, s)?;
            done(json!(deflate(&m, *t)?.to_json()))
        }
        Command::Union { parts } => {
            let ms = parts
                .iter()
                .map(|p| load(p))
                .collect::<CliResult<Vec<_>>>()?;
            done(json!(matroid_union(&ms)?.to_json()))
        }
        Command::Tau(s) => {
            let m = source(cli, s)?;
            done(tutte_connectivity(&m)?.to_json(&m))
        }
        Command::Kappa(s) => {
            let m = source(cli, s)?;
            done(vertical_connectivity(&m)?.to_json(&m))
        }
        Command::FlatsCover {
            source: s,
            count,
            slack,
        } => {
            let m = source(cli, s)?;
            let found = flats_cover(&m, *count, *slack)?;
            done(json!({
                "covers": found.is_some(),
                "flats": found.map(|fs| fs.iter().map(|f| m.labels_of(*f)).collect::<Vec<_>>()),
            }))
        }
        Command::Bw {
            source: s,
            exact: _,
            certify,
            upper,
            lower,
        } => {
            let m = source(cli, s)?;
            if *certify {
                let (upper, lower) = (
                    upper.as_ref().expect("clap requires"),
                    lower.as_ref().expect("clap requires"),
                );
                let text = std::fs::read_to_string(upper).map_err(|e| {
                    CliError::Usage(format!("cannot read {}: {e}", upper.display()))
                })?;
                let value: Value = serde_json::from_str(&text).map_err(Error::from)?;
                let tree = BranchDecomposition::from_json(value, m.ground())?;
                let cert = branch_width_certified(&m, &tree, &parse_tangle(lower)?)?;
                let mut v = cert.to_json(&m);
                v["value"] = if cert.exact {
                    json!(cert.width)
                } else {
                    Value::Null
                };
                return done(v);
            }
            let limit = match budget.unwrap_or(Budget::Exact(EXACT_LIMIT)) {
                Budget::Exact(n) => n.min(EXACT_LIMIT),
                Budget::Certify => {
                    return Err(CliError::Usage(
                        "exact branch-width is disabled by --budget certify; use --certify".into(),
                    ))
                }
            };
            if m.len() > limit {
                return Err(Error::BudgetExceeded {
                    what: "exact branch-width",
                    size: m.len(),
                    limit,
                }
                .into());
            }
            let (w, tree) = branch_width_exact(&m)?;
            done(json!({ "value": w, "decomposition": tree.to_json(m.ground()) }))
        }
        Command::Tangle {
            action: TangleAction::Verify { source: s, tangle },
        } => {
            let m = source(cli, s)?;
            let tangle = parse_tangle(tangle)?;
            let report = verify_tangle(&m, &tangle)?;
            Ok(verdict(
                report.is_tangle(),
                json!({
                    "tangle": report.is_tangle(),
                    "order": tangle.order,
                    "violation": report.violation.as_ref().map(|v| v.to_json(&m)),
                    "contains_low_rank_sets": report.contains_low_rank_sets,
                }),
            ))
        }
        Command::PositroidCheck { source: s, order } => {
            let m = source(cli, s)?;
            let order = LinearOrder::parse(m.ground(), order)?;
            let v = is_positroid_order(&m, &order)?;
            Ok(verdict(v.holds(), v.to_json(&m)))
        }
        Command::PositroidSearch(s) => {
            let m = source(cli, s)?;
            let found = positroid_search(&m)?;
            done(json!({ "order": found.map(|o| o.labels(m.ground())) }))
        }
        Command::PresentationVerify { source: s, sets } => {
            let m = source(cli, s)?;
            let p = Presentation::parse(m.ground(), sets)?;
            let ok = verify_presentation(&m, &p)?;
            Ok(verdict(ok, json!({ "verified": ok })))
        }
        Command::Verify {
            suite: Some(name), ..
        } => {
            if !SUITES.contains(&name.as_str()) {
                return Err(CliError::Usage(format!(
                    "unknown suite {name:?}; expected one of {}",
                    SUITES.join(", ")
                )));
            }
            let opts = SuiteOptions {
                seed: cli.global.seed,
                trials: cli.global.trials,
                budget: budget.unwrap_or(SuiteOptions::default().budget),
            };
            let report = run_suite(name, &opts).expect("known suite");
            Ok(verdict(report.pass(), report.to_json()))
        }
        Command::Verify {
            suite: None,
            theorem,
            matroid,
            t,
        } => {
            let theorem = theorem.as_deref().expect("clap requires suite or theorem");
            let m = source(
                cli,
                &Source {
                    matroid: matroid.clone(),
                },
            )?;
            let label = matroid
                .clone()
                .or_else(|| cli.global.catalog.clone())
                .unwrap_or_else(|| "input".into());
            let report = verify_theorem(theorem, &m, &label, *t, cli.global.seed, budget)?;
            Ok(verdict(report.pass(), report.to_json()))
        }
    }
}

fn scaling_check(name: &str, c: &ScalingCheck, input: Value) -> Check {
    match c {
        ScalingCheck::Applied { expected, observed } => {
            Check::new(0, name, input, conn(*expected), conn(*observed))
        }
        ScalingCheck::Skipped { reason, observed } => Check::judged(
            0,
            name,
            input,
            json!({ "skipped": reason }),
            conn(*observed),
            true,
        ),
    }
}

fn verify_theorem(
    theorem: &str,
    m: &Matroid,
    label: &str,
    t: usize,
    seed: u64,
    budget: Option<Budget>,
) -> CliResult<VerificationReport> {
    let mut rec = Recorder::new(format!("theorem:{theorem}"));
    let input = json!({ "matroid": label, "t": t, "seed": seed, "json": m.to_json() });
    match theorem {
        "tau-scaling" => {
            let r = kappa_scaling_check(m, t)?;
            rec.push(scaling_check("tau(M^t) = t(tau(M)-1)+1", &r.tau, input));
        }
        "kappa-scaling" => {
            let r = kappa_scaling_check(m, t)?;
            rec.push(scaling_check("kappa(M^t) = t(kappa(M)-1)+1", &r.kappa, input));
        }
        "rank-scaling" => {
            let (mt, map) = expand(m, t)?;
            let sets: Vec<SubsetMask> = if m.len() <= 12 {
                (0..1u64 << m.len()).map(SubsetMask).collect()
            } else {
                let mut r = rng(seed);
                (0..200).map(|_| random_subset(&mut r, m)).collect()
            };
            let bad: Vec<_> = sets
                .iter()
                .filter(|&&x| mt.rank(map.blocks(x)) != t * m.rank(x))
                .map(|&x| m.labels_of(x))
                .collect();
            rec.push(Check::new(0, "r(S_X) = t r(X)", input, json!([]), json!(bad)));
        }
        "bw-scaling" => {
            let (w, tree) = branch_width_exact(m)?;
            let (mt, map) = expand(m, t)?;
            let lifted = decomposition_width(&mt, &expand_decomposition(&tree, &map))?;
            let bound = if w == 0 { 0 } else { t * (w - 1) + 1 };
            if m.len() >= 2 {
                rec.push(Check::new(0, "width of the expanded optimal tree", input.clone(), json!(bound), json!(lifted)));
            }
            let limit = match budget {
                Some(Budget::Exact(n)) => n.min(EXACT_LIMIT),
                Some(Budget::Certify) => 0,
                None => 12,
            };
            if mt.len() <= limit {
                let (wt, _) = branch_width_exact(&mt)?;
                rec.push(Check::judged(
                    0,
                    "bw(M^t) <= t(bw(M)-1)+1",
                    input,
                    json!({ "at_most": bound }),
                    json!(wt),
                    wt <= bound.max(lifted),
                ));
            }
        }
        "positroid-closure" => match positroid_search(m)? {
            None => rec.push(Check::new(0, "base matroid has a positroid order", input, json!(true), json!(false))),
            Some(order) => {
                let (mt, map) = expand(m, t)?;
                let lifted = expansion_positroid_order(m, &order, &map)?;
                let ok = is_positroid_order(&mt, &lifted)?.holds();
                rec.push(Check::new(0, "block-concatenated order is a positroid order", input, json!(true), json!(ok)));
            }
        },
        other => {
            return Err(CliError::Usage(format!(
                "unknown theorem {other:?}; expected tau-scaling, kappa-scaling, rank-scaling, bw-scaling or positroid-closure"
            )))
        }
    }
    Ok(rec.finish())
}
