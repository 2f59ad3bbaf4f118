//! Human-readable and JSON rendering of verdicts, traces and search
//! reports. Everything here is deterministic byte for byte; wall-clock
//! notes never enter these strings.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use ctd_core::derive::Trace;
use ctd_core::ideality::IdealFun;
use ctd_core::model::Prop;
use ctd_core::search::{
    CandidateOrigin, FoundViolation, SearchKind, SearchMode, SearchReport, ViolationKind,
};
use ctd_core::verdict::{Verdict, Witness};

use crate::model_file::context_key;

pub fn prop_value(prop: &Prop) -> Value {
    Value::Array(
        prop.labels()
            .into_iter()
            .map(|l| Value::String(l.into()))
            .collect(),
    )
}

pub fn witness_value(witness: &Witness) -> Value {
    let mut map = Map::new();
    for (name, prop) in witness.bindings() {
        map.insert((*name).into(), prop_value(prop));
    }
    Value::Object(map)
}

pub fn verdict_value(name: &str, verdict: &Verdict) -> Value {
    json!({
        "condition": name,
        "holds": verdict.holds(),
        "witness": verdict.witness().map(witness_value),
    })
}

/// `name: holds` or `name: violated  [X={..}, Y={..}]`.
pub fn verdict_line(name: &str, verdict: &Verdict) -> String {
    match verdict.witness() {
        None => format!("{}: holds", name),
        Some(w) => format!("{}: violated  [{}]", name, w),
    }
}

pub fn trace_value(trace: &Trace) -> Value {
    let steps: Vec<Value> = trace
        .steps()
        .iter()
        .enumerate()
        .map(|(i, step)| {
            let mut bindings = Map::new();
            for (name, prop) in &step.bindings {
                bindings.insert((*name).into(), prop_value(prop));
            }
            json!({
                "index": i + 1,
                "context": prop_value(&step.fact.context),
                "member": prop_value(&step.fact.obligatory),
                "rule": step.rule.name(),
                "from": step.premises.first().map(|p| p + 1),
                "bindings": bindings,
            })
        })
        .collect();
    Value::Array(steps)
}

pub fn ideal_fun_value(f: &IdealFun) -> Value {
    let universe = f.universe();
    let mut map = Map::new();
    for ctx in universe.contexts() {
        let labels: Vec<Value> = (0..universe.world_count())
            .filter(|&i| f.get(ctx) & (1 << i) != 0)
            .map(|i| Value::String(universe.label(i).into()))
            .collect();
        map.insert(context_key(universe, ctx), Value::Array(labels));
    }
    Value::Object(map)
}

pub fn ideal_fun_lines(f: &IdealFun) -> String {
    let universe = f.universe();
    let mut out = String::new();
    for ctx in universe.contexts() {
        let _ = writeln!(
            out,
            "  F({}) = {}",
            universe.render_mask(ctx),
            universe.render_mask(f.get(ctx))
        );
    }
    out
}

fn origin_value(origin: &CandidateOrigin) -> Value {
    match origin {
        CandidateOrigin::Ranking(perm) => json!({ "ranking": perm }),
        CandidateOrigin::Enumerated(i) => json!({ "enumerated": i }),
        CandidateOrigin::Sampled(i) => json!({ "sampled": i }),
        CandidateOrigin::Pair { a, b } => json!({ "pair": { "a": a, "b": b } }),
    }
}

fn origin_text(origin: &CandidateOrigin) -> String {
    match origin {
        CandidateOrigin::Ranking(perm) => {
            let order: Vec<String> = perm.iter().map(|w| w.to_string()).collect();
            format!("ranking {}", order.join("<"))
        }
        CandidateOrigin::Enumerated(i) => format!("candidate #{}", i),
        CandidateOrigin::Sampled(i) => format!("sample #{}", i),
        CandidateOrigin::Pair { a, b } => format!("pair (a={:#x}, b={:#x})", a, b),
    }
}

fn violation_kind_text(kind: &ViolationKind) -> String {
    match kind {
        ViolationKind::Condition(c) => c.to_string(),
        ViolationKind::MissingConclusion => "missing conclusion".into(),
    }
}

fn violation_kind_value(kind: &ViolationKind) -> Value {
    match kind {
        ViolationKind::Condition(c) => Value::String(c.code().into()),
        ViolationKind::MissingConclusion => Value::String("missing-conclusion".into()),
    }
}

fn violation_value(v: &FoundViolation) -> Value {
    json!({
        "origin": origin_value(&v.origin),
        "f": v.f.as_ref().map(ideal_fun_value),
        "violates": violation_kind_value(&v.kind),
        "witness": witness_value(&v.witness),
    })
}

fn mode_value(mode: &SearchMode) -> Value {
    match mode {
        SearchMode::Exhaustive => Value::String("exhaustive".into()),
        SearchMode::Sampled { samples, seed } => {
            json!({ "sampled": { "samples": samples, "seed": seed } })
        }
    }
}

fn kind_text(kind: &SearchKind) -> String {
    match kind {
        SearchKind::Theorem2 => "theorem2".into(),
        SearchKind::Theorem3 => "theorem3".into(),
        SearchKind::FiveAbc(c) => format!("5abc ({})", c),
        SearchKind::Conflict => "conflict".into(),
        SearchKind::Counterexample(t) => format!("counterexample {}", t),
    }
}

fn kind_value(kind: &SearchKind) -> Value {
    match kind {
        SearchKind::Theorem2 => json!("theorem2"),
        SearchKind::Theorem3 => json!("theorem3"),
        SearchKind::FiveAbc(c) => json!({ "5abc": c.code() }),
        SearchKind::Conflict => json!("conflict"),
        SearchKind::Counterexample(t) => json!({ "counterexample": t.code() }),
    }
}

/// The machine-readable mirror of a report. The elapsed-time note is
/// deliberately excluded so reports stay byte-identical across runs.
pub fn report_value(report: &SearchReport) -> Value {
    json!({
        "kind": kind_value(&report.kind),
        "n": report.n,
        "mode": mode_value(&report.mode),
        "constraints": report.constraints.iter().map(|a| a.code()).collect::<Vec<_>>(),
        "candidates_examined": report.candidates_examined,
        "candidates_checked": report.candidates_checked,
        "violations": report.violations.iter().map(violation_value).collect::<Vec<_>>(),
        "pairs": report.pairs.map(|p| json!({ "ordered": p.ordered, "unordered": p.unordered })),
        "smallest_witnessing_size": report.smallest_witnessing_size,
    })
}

pub fn report_text(report: &SearchReport) -> String {
    let mut out = String::new();
    let mode = match report.mode {
        SearchMode::Exhaustive => "exhaustive".to_string(),
        SearchMode::Sampled { samples, seed } => {
            format!("sampled ({} candidates, seed {})", samples, seed)
        }
    };
    let _ = writeln!(out, "search: {}  n={}  {}", kind_text(&report.kind), report.n, mode);
    if !report.constraints.is_empty() {
        let names: Vec<&str> = report.constraints.iter().map(|a| a.code()).collect();
        let _ = writeln!(out, "constraints: {}", names.join(", "));
    }
    if let Some(pairs) = report.pairs {
        let _ = writeln!(
            out,
            "generic pairs: {} ordered ({} unordered)",
            pairs.ordered, pairs.unordered
        );
    } else {
        let _ = writeln!(out, "candidates examined: {}", report.candidates_examined);
        let _ = writeln!(out, "candidates checked: {}", report.candidates_checked);
    }
    match &report.kind {
        SearchKind::Counterexample(_) => {
            if let Some(hit) = report.violations.first() {
                let _ = writeln!(out, "counterexample: {}", origin_text(&hit.origin));
                if let Some(f) = &hit.f {
                    out.push_str(&ideal_fun_lines(f));
                }
                let _ = writeln!(
                    out,
                    "violates {}  [{}]",
                    violation_kind_text(&hit.kind),
                    hit.witness
                );
            } else {
                let _ = writeln!(out, "no counterexample at this size");
                if let Some(m) = report.smallest_witnessing_size {
                    let _ = writeln!(out, "smallest size admitting one: {}", m);
                }
            }
        }
        _ => {
            let _ = writeln!(out, "violations: {}", report.violations.len());
            for v in &report.violations {
                let _ = writeln!(
                    out,
                    "  {}: violates {}  [{}]",
                    origin_text(&v.origin),
                    violation_kind_text(&v.kind),
                    v.witness
                );
                if let Some(f) = &v.f {
                    out.push_str(&ideal_fun_lines(f));
                }
            }
        }
    }
    out
}

/// Pretty-print a top-level JSON object with a trailing newline.
pub fn print_json(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    text.push('\n');
    text
}
