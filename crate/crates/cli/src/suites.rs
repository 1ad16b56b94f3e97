//! The `verify` suites. Each returns summary lines, a JSON report and a verdict.

use minuscule_core::rootsys::Family;
use minuscule_core::theorems::catalog::{classify_exceptional, compare_with_fixture, load_fixture};
use minuscule_core::theorems::invariance::quiver_invariance;
use minuscule_core::theorems::lemmas::lemma_oracles;
use minuscule_core::theorems::oracle::oracle_equivalence;
use minuscule_core::theorems::verify::{
    context, d8_non_simple_instance, sweep, InstanceReport, OrderingSelection,
};
use minuscule_core::{CosetContext, Root, SystemType};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{CliError, CliResult, RunConfig, Suite};

pub const DEFAULT_MAX_RANK: usize = 7;
const INVARIANCE_PAIRS: usize = 100;
const INVARIANCE_SEED: u64 = 0x5eed_0009;

#[derive(Debug, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub passed: bool,
    pub summary: Vec<String>,
    pub report: Value,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Systems and nodes a sweep visits for `--type` and `--max-rank`.
fn sweep_contexts(cfg: &RunConfig) -> CliResult<Vec<CosetContext>> {
    let max = cfg.max_rank.unwrap_or(DEFAULT_MAX_RANK);
    let family_only = cfg
        .system
        .as_deref()
        .filter(|s| !s.chars().any(|c| c.is_ascii_digit()));
    let mut targets: Vec<(SystemType, usize)> = Vec::new();
    if cfg.system.is_some() && (family_only.is_none() || cfg.rank.is_some()) {
        let t = cfg.system_type()?;
        let nodes = match cfg.node {
            Some(r) => vec![r],
            None => default_nodes(t),
        };
        targets.extend(nodes.into_iter().map(|r| (t, r)));
    } else {
        let families: Vec<char> = match family_only {
            None => vec!['A', 'D', 'E'],
            Some(f) => vec![f.chars().next().unwrap_or(' ').to_ascii_uppercase()],
        };
        for f in families {
            let types: Vec<SystemType> = match f {
                'A' => (1..=max).map(SystemType::a).collect::<Result<_, _>>()?,
                'D' => (4..=max.max(3))
                    .map(SystemType::d)
                    .collect::<Result<_, _>>()?,
                'E' => vec![SystemType::e(6)?, SystemType::e(7)?],
                _ => {
                    return Err(CliError::Usage(format!(
                        "unknown family in --type {}",
                        cfg.system.as_deref().unwrap_or("")
                    )))
                }
            };
            for t in types {
                targets.extend(default_nodes(t).into_iter().map(|r| (t, r)));
            }
        }
    }
    Ok(targets
        .into_iter()
        .map(|(t, r)| context(t, r))
        .collect::<Result<_, _>>()?)
}

fn default_nodes(t: SystemType) -> Vec<usize> {
    let n = t.rank();
    match t.family() {
        Family::A => (1..=n).collect(),
        Family::D => vec![1, n - 1, n],
        Family::E => t.minuscule_nodes().to_vec(),
    }
}

/// Instances whose hypotheses hold: exceptional types need a smooth
/// decomposition.
fn in_scope(r: &InstanceReport) -> bool {
    r.instance.family != "E" || r.smooth
}

fn sweeps(cfg: &RunConfig) -> CliResult<Vec<(String, Vec<InstanceReport>)>> {
    sweep_contexts(cfg)?
        .iter()
        .map(|c| {
            let label = format!("{} node {}", c.sys.system_type(), c.excluded_node);
            Ok((label, sweep(c, &OrderingSelection::All)?))
        })
        .collect()
}

fn count(reports: &[&InstanceReport], f: impl Fn(&InstanceReport) -> bool) -> usize {
    reports.iter().filter(|r| f(r)).count()
}

fn weyl_equality(cfg: &RunConfig) -> CliResult<SuiteOutcome> {
    let mut passed = true;
    let mut summary = Vec::new();
    let mut all = Vec::new();
    for (label, reports) in sweeps(cfg)? {
        let every: Vec<&InstanceReport> = reports.iter().collect();
        let smooth: Vec<&InstanceReport> = reports.iter().filter(|r| r.smooth).collect();
        let scope: Vec<&InstanceReport> = reports.iter().filter(|r| in_scope(r)).collect();
        let need_generation = reports.first().is_some_and(|r| r.instance.family != "D");
        let ok = scope
            .iter()
            .all(|r| r.weyl_equality && (!need_generation || r.simple_generated));
        passed &= ok;
        summary.push(format!(
            "{label}: {} instances, equality {}/{}, simple generation {}/{}; smooth only: equality {}/{}, simple generation {}/{}{}",
            every.len(),
            count(&every, |r| r.weyl_equality),
            every.len(),
            count(&every, |r| r.simple_generated),
            every.len(),
            count(&smooth, |r| r.weyl_equality),
            smooth.len(),
            count(&smooth, |r| r.simple_generated),
            smooth.len(),
            if ok { "" } else { "  FAILED" }
        ));
        all.extend(reports);
    }
    Ok(SuiteOutcome {
        suite: "weyl-equality".into(),
        passed,
        summary,
        report: to_value(&all),
    })
}

fn root_inequality(cfg: &RunConfig) -> CliResult<SuiteOutcome> {
    let mut passed = true;
    let mut summary = Vec::new();
    let mut all = Vec::new();
    for (label, reports) in sweeps(cfg)? {
        let scope: Vec<&InstanceReport> = reports.iter().filter(|r| in_scope(r)).collect();
        let holds = count(&scope, |r| r.root_inequality.holds);
        let iff = count(&scope, |r| r.root_inequality.equality_iff_m1);
        let ok = holds == scope.len() && iff == scope.len();
        passed &= ok;
        summary.push(format!(
            "{label}: {} instances in scope, inequality {holds}/{}, zero difference iff one factor {iff}/{}{}",
            scope.len(),
            scope.len(),
            scope.len(),
            if ok { "" } else { "  FAILED" }
        ));
        all.extend(reports.into_iter().map(|r| {
            json!({
                "instance": r.instance,
                "m": r.m,
                "smooth": r.smooth,
                "root_inequality": r.root_inequality,
            })
        }));
    }
    Ok(SuiteOutcome {
        suite: "root-inequality".into(),
        passed,
        summary,
        report: Value::Array(all),
    })
}

fn remark_d8() -> CliResult<SuiteOutcome> {
    let (report, eq) = d8_non_simple_instance()?;
    let beta = Root::new(vec![0, 0, 0, 1, 1, 1, 1, 0]);
    let contains = eq.at_w1x1.contains(&beta);
    let passed = report.weyl_equality && !report.simple_generated && contains;
    let summary = vec![
        format!(
            "D8 node 8: {} with first factor {}",
            report.instance.word, report.factors[0]
        ),
        format!(
            "weyl_equality={} simple_generated={} contains {beta}={contains}",
            report.weyl_equality, report.simple_generated
        ),
    ];
    Ok(SuiteOutcome {
        suite: "remark-d8".into(),
        passed,
        summary,
        report: json!({ "instance": report, "contains_beta": contains }),
    })
}

fn catalog(which: &str) -> CliResult<SuiteOutcome> {
    let fx = load_fixture()?;
    let (ctx, fixture) = match which {
        "E6" => (context(SystemType::e(6)?, 1)?, fx.e6),
        _ => (context(SystemType::e(7)?, 7)?, fx.e7),
    };
    let cat = classify_exceptional(&ctx)?;
    let check = compare_with_fixture(&ctx.sys, &cat, &fixture)?;
    let mut summary = vec![format!(
        "{which} node {}: {} standard-smooth elements (catalog lists {}), {} decompositions and {} fiber profiles checked",
        ctx.excluded_node,
        check.found_standard_smooth.len(),
        check.expected_standard_smooth.len(),
        check.decompositions_checked,
        check.fibers_checked
    )];
    summary.extend(
        check
            .problems
            .iter()
            .chain(&check.fiber_mismatches)
            .map(|p| format!("mismatch: {p}")),
    );
    Ok(SuiteOutcome {
        suite: format!("catalog-{}", which.to_lowercase()),
        passed: check.passed(),
        summary,
        report: to_value(&check),
    })
}

fn lemmas(cfg: &RunConfig) -> CliResult<SuiteOutcome> {
    let max = cfg.max_rank.unwrap_or(DEFAULT_MAX_RANK);
    let reports = lemma_oracles(max, max)?;
    let summary = reports
        .iter()
        .map(|r| {
            format!(
                "{}: {} checked, {} violations",
                r.name,
                r.checked,
                r.violations.len()
            )
        })
        .collect();
    Ok(SuiteOutcome {
        suite: "lemmas".into(),
        passed: reports.iter().all(|r| r.passed()),
        summary,
        report: to_value(&reports),
    })
}

fn oracle() -> CliResult<SuiteOutcome> {
    let reports = ["A3", "A4", "D4"]
        .iter()
        .map(|t| Ok(oracle_equivalence(t.parse()?)?))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(SuiteOutcome {
        suite: "oracle".into(),
        passed: reports.iter().all(|r| r.passed()),
        summary: reports
            .iter()
            .map(|r| {
                format!(
                    "{}: |W| = {}, {} instances, {} mismatches",
                    r.system,
                    r.group_order,
                    r.instances,
                    r.mismatches.len()
                )
            })
            .collect(),
        report: to_value(&reports),
    })
}

fn invariance() -> CliResult<SuiteOutcome> {
    let reports = ["A4", "D4", "E6"]
        .iter()
        .map(|t| {
            Ok(quiver_invariance(
                t.parse()?,
                INVARIANCE_PAIRS,
                INVARIANCE_SEED,
            )?)
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(SuiteOutcome {
        suite: "quiver-invariance".into(),
        passed: reports.iter().all(|r| r.passed()),
        summary: reports
            .iter()
            .map(|r| {
                format!(
                    "{}: {} pairs, {} with a changed word, {} failures",
                    r.system,
                    r.pairs,
                    r.nontrivial,
                    r.failures.len()
                )
            })
            .collect(),
        report: to_value(&reports),
    })
}

pub fn run(cfg: &RunConfig) -> CliResult<Vec<SuiteOutcome>> {
    let suite = cfg
        .suite
        .ok_or_else(|| CliError::Usage("--suite is required".into()))?;
    let one = |s: Suite| -> CliResult<SuiteOutcome> {
        match s {
            Suite::WeylEquality => weyl_equality(cfg),
            Suite::RootInequality => root_inequality(cfg),
            Suite::RemarkD8 => remark_d8(),
            Suite::CatalogE6 => catalog("E6"),
            Suite::CatalogE7 => catalog("E7"),
            Suite::Lemmas => lemmas(cfg),
            Suite::Oracle => oracle(),
            Suite::QuiverInvariance => invariance(),
            Suite::All => unreachable!("expanded below"),
        }
    };
    match suite {
        Suite::All => [
            Suite::WeylEquality,
            Suite::RootInequality,
            Suite::RemarkD8,
            Suite::CatalogE6,
            Suite::CatalogE7,
            Suite::Lemmas,
            Suite::Oracle,
            Suite::QuiverInvariance,
        ]
        .into_iter()
        .map(one)
        .collect(),
        s => Ok(vec![one(s)?]),
    }
}
