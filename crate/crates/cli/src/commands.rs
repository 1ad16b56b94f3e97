use std::fmt::Write as _;
use std::sync::Arc;

use minuscule_core::quiver::{
    all_peak_orders, construction_one, fiber_profile, ordering_label, PeakOrdering,
};
use minuscule_core::theorems::catalog::{classify_exceptional, Catalog};
use minuscule_core::theorems::verify::{analyze, context, full_support_elements};
use minuscule_core::{CosetContext, Quiver, RootSystem, SystemType, Word};
use serde::Serialize;
use serde_json::json;

use crate::config::{CliError, CliResult, Format, RunConfig};
use crate::suites;

/// What a command produced: the rendered document and whether every check
/// it ran passed.
pub struct Output {
    pub body: String,
    pub passed: bool,
}

fn ok(body: String) -> Output {
    Output { body, passed: true }
}

fn json_body<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("output serializes");
    s.push('\n');
    s
}

fn show_word(w: &Word) -> String {
    if w.is_empty() {
        "e".into()
    } else {
        w.to_string()
    }
}

fn format_or(cfg: &RunConfig, default: Format, allowed: &[Format]) -> CliResult<Format> {
    let f = cfg.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(
            format!("--format {f:?} is not available for this command").to_lowercase(),
        ))
    }
}

#[derive(Serialize)]
struct Listed {
    word: Word,
    length: usize,
    peaks: usize,
    full_support: bool,
}

pub fn enumerate(cfg: &RunConfig) -> CliResult<Output> {
    let format = format_or(cfg, Format::Text, &[Format::Text, Format::Json])?;
    let ctx = context(cfg.system_type()?, cfg.node()?)?;
    let full = ctx.sys.all_nodes();
    let mut rows: Vec<Listed> = if cfg.all.unwrap_or(false) {
        ctx.enumerate_minuscule()
            .into_iter()
            .map(|m| {
                let word = ctx.standard_word(&m.element)?;
                Ok(Listed {
                    length: m.element.length(),
                    full_support: m.element.support(&ctx.sys) == full,
                    peaks: Quiver::build(&ctx.sys, &word)?.peaks().len(),
                    word,
                })
            })
            .collect::<CliResult<_>>()?
    } else {
        full_support_elements(&ctx)?
            .into_iter()
            .map(|(w, word)| {
                Ok(Listed {
                    length: w.length(),
                    full_support: true,
                    peaks: Quiver::build(&ctx.sys, &word)?.peaks().len(),
                    word,
                })
            })
            .collect::<CliResult<_>>()?
    };
    rows.sort_by(|a, b| (a.length, a.word.letters()).cmp(&(b.length, b.word.letters())));
    let body = match format {
        Format::Json => json_body(&json!({
            "type": ctx.sys.system_type().to_string(),
            "node": ctx.excluded_node,
            "elements": rows,
        })),
        _ => {
            let mut s = format!(
                "# {} node {}: {} elements\n# length peaks word\n",
                ctx.sys.system_type(),
                ctx.excluded_node,
                rows.len()
            );
            for r in &rows {
                let _ = writeln!(s, "{:>3} {:>2} {}", r.length, r.peaks, show_word(&r.word));
            }
            s
        }
    };
    Ok(ok(body))
}

/// Validates the word against `--node` when one is given.
fn checked_word(cfg: &RunConfig, sys: &Arc<RootSystem>) -> CliResult<(Word, Option<CosetContext>)> {
    let word = cfg.word()?;
    let ctx = match cfg.node {
        Some(r) => {
            let ctx = CosetContext::new(sys.clone(), r)?;
            ctx.minuscule_from_word(&word)?;
            Some(ctx)
        }
        None => None,
    };
    Ok((word, ctx))
}

pub fn quiver(cfg: &RunConfig) -> CliResult<Output> {
    let format = format_or(cfg, Format::Dot, &[Format::Text, Format::Json, Format::Dot])?;
    let sys = Arc::new(RootSystem::new(cfg.system_type()?)?);
    let (word, _) = checked_word(cfg, &sys)?;
    let q = Quiver::build(&sys, &word)?;
    let body = match format {
        Format::Dot => q.to_dot(),
        Format::Json => json_body(&q.view()),
        Format::Text => {
            let mut s = format!("word: {}\n", show_word(&word));
            let colors: Vec<String> = q
                .colors()
                .iter()
                .enumerate()
                .map(|(i, c)| format!("v{}:{c}", i + 1))
                .collect();
            let _ = writeln!(s, "colors: {}", colors.join(" "));
            let arrows: Vec<String> = q
                .arrows()
                .iter()
                .map(|(i, j)| format!("v{i}->v{j}"))
                .collect();
            let _ = writeln!(s, "arrows: {}", arrows.join(" "));
            let peaks: Vec<String> = q.peaks().iter().map(|p| format!("v{p}")).collect();
            let _ = writeln!(s, "peaks: {}", peaks.join(" "));
            s
        }
    };
    Ok(ok(body))
}

pub fn decompose(cfg: &RunConfig) -> CliResult<Output> {
    let format = format_or(cfg, Format::Text, &[Format::Text, Format::Json])?;
    let sys = Arc::new(RootSystem::new(cfg.system_type()?)?);
    let (word, ctx) = checked_word(cfg, &sys)?;
    if word.is_empty() {
        return Err(CliError::Usage("cannot decompose the empty word".into()));
    }
    let q = Quiver::build(&sys, &word)?;
    let ordering = cfg.ordering.as_deref().unwrap_or("standard");
    let orders = if ordering.eq_ignore_ascii_case("all") {
        all_peak_orders(&q)
    } else {
        vec![ordering.parse::<PeakOrdering>()?.resolve(&q)?]
    };
    let mut docs = Vec::new();
    let mut text = String::new();
    for order in &orders {
        let d = construction_one(&sys, &q, order)?;
        let fibers = fiber_profile(&sys, &d)?;
        let label: Vec<String> = ordering_label(&q, order)
            .iter()
            .map(|p| p.to_string())
            .collect();
        let analysis = ctx.as_ref().map(|c| analyze(c, &q, &d)).transpose()?;
        let factors: Vec<String> = d.factor_words.iter().map(|f| f.to_string()).collect();
        let _ = writeln!(text, "ordering {} (peaks {:?})", label.join(","), order);
        let _ = writeln!(
            text,
            "  factors: {}",
            factors
                .iter()
                .map(|f| format!("({f})"))
                .collect::<Vec<_>>()
                .join(" ")
        );
        let _ = writeln!(text, "  good: {}  smooth: {}", d.good, d.smooth);
        let fiber_text: Vec<String> = fibers
            .iter()
            .map(|f| format!("({}, {})", f.length, f.support_type))
            .collect();
        let _ = writeln!(text, "  fibers: {}", fiber_text.join(" "));
        if let Some(a) = &analysis {
            let _ = writeln!(
                text,
                "  weyl_equality: {}  simple_generated: {}  root inequality holds: {} (alpha_{}: {} vs {})",
                a.weyl_equality,
                a.simple_generated,
                a.root_inequality.holds,
                a.root_inequality.alpha,
                a.root_inequality.w1_inv_alpha,
                a.root_inequality.w_inv_alpha
            );
        }
        docs.push(json!({
            "ordering": label.join(","),
            "factors": factors,
            "good": d.good,
            "smooth": d.smooth,
            "fibers": fibers,
            "analysis": analysis,
        }));
    }
    let body = match format {
        Format::Json => json_body(&json!({ "word": word.to_string(), "decompositions": docs })),
        _ => format!("word: {word}\n{text}"),
    };
    Ok(ok(body))
}

pub fn verify(cfg: &RunConfig) -> CliResult<Output> {
    let format = format_or(cfg, Format::Text, &[Format::Text, Format::Json])?;
    let outcomes = suites::run(cfg)?;
    let passed = outcomes.iter().all(|o| o.passed);
    let body = match format {
        Format::Json => json_body(&json!({ "passed": passed, "suites": outcomes })),
        _ => {
            let mut s = String::new();
            for o in &outcomes {
                let _ = writeln!(s, "{}: {}", o.suite, if o.passed { "PASS" } else { "FAIL" });
                for line in &o.summary {
                    let _ = writeln!(s, "  {line}");
                }
            }
            s
        }
    };
    Ok(Output { body, passed })
}

fn catalog_text(cat: &Catalog) -> String {
    let mut s = format!(
        "# {} node {}: {} full-support elements\n# length peaks standard-smooth smooth-orderings word\n",
        cat.system,
        cat.node,
        cat.entries.len()
    );
    for e in &cat.entries {
        let smooth: Vec<String> = e
            .decompositions
            .iter()
            .filter(|d| d.smooth)
            .map(|d| {
                d.ordering
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        let _ = writeln!(
            s,
            "{:>3} {} {:<5} [{}] {}",
            e.length,
            e.peaks,
            e.standard_smooth,
            smooth.join(" "),
            e.word
        );
    }
    s
}

pub fn catalog(cfg: &RunConfig) -> CliResult<Output> {
    let format = format_or(cfg, Format::Text, &[Format::Text, Format::Json])?;
    let targets: Vec<(SystemType, usize)> = match &cfg.system {
        None => vec![(SystemType::e(6)?, 1), (SystemType::e(7)?, 7)],
        Some(_) => {
            let t = cfg.system_type()?;
            let default = if t.rank() == 7 { 7 } else { 1 };
            vec![(t, cfg.node.unwrap_or(default))]
        }
    };
    let catalogs = targets
        .into_iter()
        .map(|(t, r)| Ok(classify_exceptional(&context(t, r)?)?))
        .collect::<CliResult<Vec<_>>>()?;
    let body = match format {
        Format::Json => json_body(&catalogs),
        _ => catalogs
            .iter()
            .map(catalog_text)
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok(ok(body))
}
