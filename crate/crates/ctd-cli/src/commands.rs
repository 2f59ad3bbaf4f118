//! Command implementations.
//!
//! Each command returns its stdout text plus a process exit code, so the
//! binary (and the tests) can treat output deterministically. The exit
//! contract is uniform: 0 when all checks hold / the query is true / the
//! search is clean (or the miner found its counterexample); 1 for a
//! violation, a false query, or a fruitless mine; 2 for usage, parse or
//! validation problems. Wall-clock notes go to stderr only.

use std::fs;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use serde_json::json;

use ctd_core::derive::{close, replay_theorem1, DeriveError, ObFact, RuleSet};
use ctd_core::ideality::{check_axiom, holds_conditional, Axiom};
use ctd_core::model::{extension, parse_formula, Prop, WorldSet};
use ctd_core::obstruct::{check_condition, Condition, ObFun};
use ctd_core::search::{
    candidate_space, find_counterexample, sub_space_size, verify_5abc_range, verify_conflict,
    verify_theorem2_range, verify_theorem3_range, CexTarget, SearchError, SearchKind, SearchMode,
    SearchReport,
};
use ctd_core::ideality::Construction;
use ctd_core::verdict::Verdict;

use crate::fixtures;
use crate::model_file::LoadedModel;
use crate::report::{
    print_json, prop_value, report_text, report_value, trace_value, verdict_line, verdict_value,
};

/// Usage, parse or validation failure: printed to stderr, exit 2.
#[derive(Debug)]
pub struct Failure(pub String);

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        Failure(e.to_string())
    }
}

pub type CmdResult = Result<(String, i32), Failure>;

/// Global flags shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub json: bool,
    pub seed: u64,
    pub threads: usize,
}

fn load_model(path: &Path) -> Result<LoadedModel, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure(format!("{}: {}", path.display(), e)))?;
    LoadedModel::from_json(&text).map_err(|e| Failure(format!("{}: {}", path.display(), e)))
}

/// One item of a `--conditions` selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CheckItem {
    Axiom(Axiom),
    Condition(Condition),
}

impl CheckItem {
    fn name(self) -> String {
        match self {
            CheckItem::Axiom(a) => a.code().to_string(),
            CheckItem::Condition(c) => c.to_string(),
        }
    }

    fn code(self) -> &'static str {
        match self {
            CheckItem::Axiom(a) => a.code(),
            CheckItem::Condition(c) => c.code(),
        }
    }
}

/// Canonical order: the F axioms, then 5(a)–(e).
fn all_items() -> Vec<CheckItem> {
    Axiom::ALL
        .into_iter()
        .map(CheckItem::Axiom)
        .chain(Condition::ALL.into_iter().map(CheckItem::Condition))
        .collect()
}

fn parse_selection(spec: &str) -> Result<Vec<CheckItem>, Failure> {
    let mut wanted = Vec::new();
    for token in spec.split(',') {
        let token = token.trim();
        let item = Axiom::from_code(token)
            .map(CheckItem::Axiom)
            .or_else(|| Condition::from_code(token).map(CheckItem::Condition))
            .ok_or_else(|| {
                Failure(format!(
                    "unknown condition '{}' (expected sub, referee, I-d, I-e, 5a, 5b, 5c, 5d or 5e)",
                    token
                ))
            })?;
        if !wanted.contains(&item) {
            wanted.push(item);
        }
    }
    Ok(all_items().into_iter().filter(|i| wanted.contains(i)).collect())
}

fn run_item(item: CheckItem, model: &LoadedModel, ob: &ObFun, nonempty_only: bool) -> Verdict {
    match item {
        CheckItem::Axiom(a) => check_axiom(model.ideal().expect("validated"), a),
        CheckItem::Condition(c) => check_condition(ob, c, nonempty_only),
    }
}

pub fn cmd_check(
    ctx: Ctx,
    file: &Path,
    conditions: Option<&str>,
    include_empty_context: bool,
    dump: Option<&Path>,
) -> CmdResult {
    let model = load_model(file)?;
    if let Some(path) = dump {
        fs::write(path, model.canonical_json())
            .map_err(|e| Failure(format!("{}: {}", path.display(), e)))?;
    }
    let selection = match conditions {
        Some(spec) => parse_selection(spec)?,
        None => {
            let mut items = all_items();
            if model.ideal().is_none() {
                items.retain(|i| matches!(i, CheckItem::Condition(_)));
            }
            items
        }
    };
    if model.ideal().is_none() {
        if let Some(bad) = selection.iter().find(|i| matches!(i, CheckItem::Axiom(_))) {
            return Err(Failure(format!(
                "condition '{}' needs an ideality function; this model declares 'ob' directly",
                bad.name()
            )));
        }
    }
    let ob = model.ob();
    let nonempty_only = !include_empty_context;
    let results: Vec<(CheckItem, Verdict)> = selection
        .into_iter()
        .map(|item| (item, run_item(item, &model, &ob, nonempty_only)))
        .collect();
    let violated = results.iter().filter(|(_, v)| !v.holds()).count();
    let exit = if violated == 0 { 0 } else { 1 };

    if ctx.json {
        let verdicts: Vec<serde_json::Value> = results
            .iter()
            .map(|(item, v)| verdict_value(item.code(), v))
            .collect();
        let value = json!({
            "command": "check",
            "construction": model.construction().map(|c| c.code()),
            "verdicts": verdicts,
            "all_hold": violated == 0,
        });
        return Ok((print_json(&value), exit));
    }
    let mut out = String::new();
    for (item, verdict) in &results {
        out.push_str(&verdict_line(&item.name(), verdict));
        out.push('\n');
    }
    if violated == 0 {
        out.push_str("result: all hold\n");
    } else {
        out.push_str(&format!("result: {} violated\n", violated));
    }
    Ok((out, exit))
}

/// A formula slice of the query string: byte offset plus text.
type Segment<'q> = (usize, &'q str);

/// Split `O(<formula>|<formula>)` at the first top-level `|`. Returns
/// the consequent and condition texts with their byte offsets into the
/// query string.
fn split_conditional(query: &str) -> Result<(Segment<'_>, Segment<'_>), Failure> {
    let bad = |why: &str| Failure(format!("query: expected 'O(<formula>|<formula>)': {}", why));
    let trimmed = query.trim_start();
    let start = query.len() - trimmed.len();
    if !trimmed.starts_with("O(") {
        return Err(bad("must start with 'O('"));
    }
    let body_start = start + 2;
    let mut depth = 1u32;
    let mut separator = None;
    let mut close = None;
    for (i, ch) in query[body_start..].char_indices() {
        let at = body_start + i;
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    close = Some(at);
                    break;
                }
            }
            '|' if depth == 1 && separator.is_none() => separator = Some(at),
            _ => {}
        }
    }
    let close = close.ok_or_else(|| bad("missing closing ')'"))?;
    if !query[close + 1..].trim().is_empty() {
        return Err(bad("trailing input after ')'"));
    }
    let separator = separator.ok_or_else(|| bad("missing top-level '|' separator"))?;
    Ok((
        (body_start, &query[body_start..separator]),
        (separator + 1, &query[separator + 1..close]),
    ))
}

fn formula_prop(model: &LoadedModel, offset: usize, text: &str) -> Result<Prop, Failure> {
    let formula = parse_formula(text).map_err(|mut e| {
        e.offset += offset;
        Failure(format!("query: {}", e))
    })?;
    extension(&formula, &model.valuation).map_err(|e| Failure(format!("query: {}", e)))
}

fn eval_query(model: &LoadedModel, ob: &ObFun, query: &str) -> Result<(Prop, Prop, bool), Failure> {
    let ((b_off, b_text), (a_off, a_text)) = split_conditional(query)?;
    let consequent = formula_prop(model, b_off, b_text)?;
    let context = formula_prop(model, a_off, a_text)?;
    let holds = holds_conditional(ob, &context, &consequent)
        .expect("query propositions share the model universe");
    Ok((consequent, context, holds))
}

pub fn cmd_query(ctx: Ctx, file: &Path, query: &str) -> CmdResult {
    let model = load_model(file)?;
    let ob = model.ob();
    let (consequent, context, holds) = eval_query(&model, &ob, query)?;
    let exit = if holds { 0 } else { 1 };
    if ctx.json {
        let value = json!({
            "command": "query",
            "query": query,
            "consequent": prop_value(&consequent),
            "context": prop_value(&context),
            "construction": model.construction().map(|c| c.code()),
            "holds": holds,
        });
        return Ok((print_json(&value), exit));
    }
    let mut out = String::new();
    out.push_str(&format!("query: {}\n", query.trim()));
    out.push_str(&format!("consequent = {}\n", consequent));
    out.push_str(&format!("context = {}\n", context));
    if let Some(c) = model.construction() {
        out.push_str(&format!("construction: {}\n", c));
    }
    out.push_str(&format!("result: {}\n", holds));
    Ok((out, exit))
}

fn parse_world_indices(universe: &Arc<WorldSet>, text: &str) -> Result<Prop, Failure> {
    let mut indices = Vec::new();
    if !text.trim().is_empty() {
        for part in text.split(',') {
            let index: usize = part
                .trim()
                .parse()
                .map_err(|_| Failure(format!("'{}' is not a world index", part.trim())))?;
            indices.push(index);
        }
    }
    universe
        .prop_from_worlds(&indices)
        .map_err(|e| Failure(e.to_string()))
}

pub fn cmd_derive(
    ctx: Ctx,
    file: Option<&Path>,
    n: Option<usize>,
    a_text: &str,
    b_text: &str,
    closure: bool,
) -> CmdResult {
    let (universe, a, b) = match (file, n) {
        (Some(path), None) => {
            let model = load_model(path)?;
            let a = formula_prop(&model, 0, a_text).map_err(|e| Failure(format!("--a: {}", e.0)))?;
            let b = formula_prop(&model, 0, b_text).map_err(|e| Failure(format!("--b: {}", e.0)))?;
            (Arc::clone(&model.universe), a, b)
        }
        (None, Some(n)) => {
            let universe =
                Arc::new(WorldSet::indexed(n).map_err(|e| Failure(format!("--n: {}", e)))?);
            let a = parse_world_indices(&universe, a_text)
                .map_err(|e| Failure(format!("--a: {}", e.0)))?;
            let b = parse_world_indices(&universe, b_text)
                .map_err(|e| Failure(format!("--b: {}", e.0)))?;
            (universe, a, b)
        }
        _ => return Err(Failure("give exactly one of --file or --n".into())),
    };

    match replay_theorem1(&a, &b) {
        Ok(trace) => {
            let closure_facts = if closure {
                let seed = ObFact::new(universe.full(), a.clone());
                let closed = close(&universe, &[seed], RuleSet::all())
                    .map_err(|e| Failure(e.to_string()))?;
                Some(closed.len())
            } else {
                None
            };
            if ctx.json {
                let value = json!({
                    "command": "derive",
                    "generic": true,
                    "a": prop_value(&a),
                    "b": prop_value(&b),
                    "trace": trace_value(&trace),
                    "closure_facts": closure_facts,
                });
                return Ok((print_json(&value), 0));
            }
            let mut out = String::new();
            out.push_str(&format!("A = {}\n", a));
            out.push_str(&format!("B = {}\n", b));
            out.push_str(&trace.render());
            if let Some(count) = closure_facts {
                out.push_str(&format!("closure: {} facts\n", count));
            }
            Ok((out, 0))
        }
        Err(DeriveError::NotGeneric { region }) => {
            if ctx.json {
                let value = json!({
                    "command": "derive",
                    "generic": false,
                    "a": prop_value(&a),
                    "b": prop_value(&b),
                    "empty_region": region,
                });
                return Ok((print_json(&value), 1));
            }
            Ok((
                format!("not mutually generic: region {} is empty\n", region),
                1,
            ))
        }
        Err(e) => Err(Failure(e.to_string())),
    }
}

/// Split `0..total` into the context's worker count and merge the
/// partial reports in order. Candidates are derived from their index, so
/// the merged report is identical for every thread count.
fn run_partitioned<F>(threads: usize, total: u64, run: F) -> Result<SearchReport, SearchError>
where
    F: Fn(u64, u64) -> Result<SearchReport, SearchError> + Sync,
{
    let workers = threads.clamp(1, 64) as u64;
    if workers <= 1 || total < 2 {
        return run(0, total);
    }
    let chunk = total.div_ceil(workers);
    let partials = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for i in 0..workers {
            let lo = i * chunk;
            if lo >= total {
                break;
            }
            let hi = (lo + chunk).min(total);
            let run = &run;
            handles.push(scope.spawn(move || run(lo, hi)));
        }
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect::<Vec<_>>()
    });
    let mut merged: Option<SearchReport> = None;
    for partial in partials {
        let partial = partial?;
        merged = Some(match merged {
            None => partial,
            Some(acc) => acc.merge(partial),
        });
    }
    Ok(merged.expect("at least one partition"))
}

pub fn cmd_search(
    ctx: Ctx,
    kind: &str,
    target: Option<&str>,
    n: usize,
    exhaustive: bool,
    samples: Option<u64>,
    construction: Option<&str>,
) -> CmdResult {
    let reject_target = || -> Result<(), Failure> {
        match target {
            Some(t) => Err(Failure(format!("unexpected argument '{}' for '{}'", t, kind))),
            None => Ok(()),
        }
    };
    let sampled_mode = || SearchMode::Sampled {
        samples: samples.unwrap_or(100_000),
        seed: ctx.seed,
    };
    let started = Instant::now();
    let (mut report, found_is_success) = match kind {
        "theorem2" | "theorem3" => {
            reject_target()?;
            if construction.is_some() {
                return Err(Failure("--construction only applies to '5abc'".into()));
            }
            let mode = if exhaustive { SearchMode::Exhaustive } else { sampled_mode() };
            let run = |lo, hi| {
                if kind == "theorem2" {
                    verify_theorem2_range(n, mode, lo..hi)
                } else {
                    verify_theorem3_range(n, mode, lo..hi)
                }
            };
            run(0, 0)?; // parameter guards, before sizing the partitions
            let total = candidate_space(n, mode)?;
            let report = run_partitioned(ctx.threads, total, run)?;
            (report, false)
        }
        "5abc" => {
            reject_target()?;
            if samples.is_some() {
                return Err(Failure("'5abc' runs exhaustively; --samples is not supported".into()));
            }
            let code = construction
                .ok_or_else(|| Failure("'5abc' needs --construction sup|cap".into()))?;
            let construction = Construction::from_code(code).ok_or_else(|| {
                Failure(format!("'{}' is not a construction (expected 'sup' or 'cap')", code))
            })?;
            verify_5abc_range(n, construction, 0..0)?;
            let total = sub_space_size(n)?;
            let report = run_partitioned(ctx.threads, total, |lo, hi| {
                verify_5abc_range(n, construction, lo..hi)
            })?;
            (report, false)
        }
        "conflict" => {
            reject_target()?;
            (verify_conflict(n)?, false)
        }
        "counterexample" => {
            let code = target.ok_or_else(|| {
                Failure("counterexample needs a target: 5d-under-cap | 5e-under-sup".into())
            })?;
            let target = CexTarget::from_code(code).ok_or_else(|| {
                Failure(format!(
                    "'{}' is not a counterexample target (expected '5d-under-cap' or '5e-under-sup')",
                    code
                ))
            })?;
            (find_counterexample(target, n)?, true)
        }
        other => {
            return Err(Failure(format!(
                "unknown search kind '{}' (expected theorem2, theorem3, 5abc, conflict or counterexample)",
                other
            )))
        }
    };
    report.elapsed = Some(started.elapsed());
    eprintln!("# elapsed: {:?}", started.elapsed());

    let exit = if found_is_success {
        if report.violations.is_empty() { 1 } else { 0 }
    } else if report.clean() {
        0
    } else {
        1
    };
    debug_assert!(matches!(report.kind, SearchKind::Counterexample(_)) == found_is_success);
    if ctx.json {
        let value = json!({ "command": "search", "report": report_value(&report) });
        return Ok((print_json(&value), exit));
    }
    Ok((report_text(&report), exit))
}

pub fn cmd_demo(ctx: Ctx, which: &str, dump: Option<&Path>) -> CmdResult {
    match which {
        "pd" => {
            let model = fixtures::prisoners_dilemma();
            if let Some(path) = dump {
                fs::write(path, model.canonical_json())
                    .map_err(|e| Failure(format!("{}: {}", path.display(), e)))?;
            }
            let ob = model.ob();
            let results: Vec<(CheckItem, Verdict)> = all_items()
                .into_iter()
                .map(|item| (item, run_item(item, &model, &ob, true)))
                .collect();
            let queries = ["O(~C_me | D_other)", "O(T | T)", "O(F | T)"];
            let evaluated: Vec<(&str, bool)> = queries
                .iter()
                .map(|q| {
                    let (_, _, holds) = eval_query(&model, &ob, q).expect("demo queries parse");
                    (*q, holds)
                })
                .collect();
            if ctx.json {
                let verdicts: Vec<serde_json::Value> = results
                    .iter()
                    .map(|(item, v)| verdict_value(item.code(), v))
                    .collect();
                let queries: Vec<serde_json::Value> = evaluated
                    .iter()
                    .map(|(q, holds)| json!({ "query": q, "holds": holds }))
                    .collect();
                let value = json!({
                    "command": "demo",
                    "demo": "pd",
                    "construction": "sup",
                    "verdicts": verdicts,
                    "queries": queries,
                });
                return Ok((print_json(&value), 0));
            }
            let mut out = String::new();
            out.push_str("Prisoners' Dilemma: worlds CC, CD, DC, DD (C cooperate, D defect; first letter mine)\n");
            out.push_str("my prison terms: CC=1, CD=3, DC=0, DD=2; F = smallest term in context; construction sup\n");
            for (item, verdict) in &results {
                out.push_str(&verdict_line(&item.name(), verdict));
                out.push('\n');
            }
            for (q, holds) in &evaluated {
                out.push_str(&format!("{} = {}\n", q, holds));
            }
            Ok((out, 0))
        }
        "conflict" => {
            let universe = Arc::new(WorldSet::indexed(4).expect("4 worlds fit"));
            let a = universe.prop(0b1100).expect("in range");
            let b = universe.prop(0b1010).expect("in range");
            let trace = replay_theorem1(&a, &b).expect("the canonical pair is generic");
            let seed = ObFact::new(universe.full(), a.clone());
            let closed = close(&universe, &[seed], RuleSet::all()).expect("4 worlds fit");
            if ctx.json {
                let value = json!({
                    "command": "demo",
                    "demo": "conflict",
                    "a": prop_value(&a),
                    "b": prop_value(&b),
                    "trace": trace_value(&trace),
                    "closure_facts": closed.len(),
                });
                return Ok((print_json(&value), 0));
            }
            let mut out = String::new();
            out.push_str("conflict demo: one obligation plus 5(b)/5(d)/5(e) forces a contrary-to-duty conclusion\n");
            out.push_str(&format!("A = {}, B = {} over W = {}\n", a, b, universe.full()));
            out.push_str(&trace.render());
            out.push_str(&format!(
                "closure of the single seed under all three rules: {} facts\n",
                closed.len()
            ));
            Ok((out, 0))
        }
        other => Err(Failure(format!(
            "unknown demo '{}' (expected 'pd' or 'conflict')",
            other
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_parses_in_canonical_order() {
        let items = parse_selection("5e,sub,5a").unwrap();
        assert_eq!(
            items,
            vec![
                CheckItem::Axiom(Axiom::Sub),
                CheckItem::Condition(Condition::FiveA),
                CheckItem::Condition(Condition::FiveE),
            ]
        );
        assert!(parse_selection("5a,bogus").is_err());
    }

    #[test]
    fn conditional_splitting() {
        let ((_, b), (_, a)) = split_conditional("O(~C_me | D_other)").unwrap();
        assert_eq!(b.trim(), "~C_me");
        assert_eq!(a.trim(), "D_other");
        // Parenthesized disjunction stays on the consequent side.
        let ((_, b), (_, a)) = split_conditional("O((A|B) | C)").unwrap();
        assert_eq!(b.trim(), "(A|B)");
        assert_eq!(a.trim(), "C");
        assert!(split_conditional("O(A)").is_err());
        assert!(split_conditional("Q(A|B)").is_err());
        assert!(split_conditional("O(A|B) x").is_err());
        assert!(split_conditional("O(A|B").is_err());
    }
}
