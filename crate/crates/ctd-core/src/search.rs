//! Exhaustive and sampled sweeps over ideality functions: verification
//! suites for the two rescue theorems and the 5(a)–(c) base facts, the
//! conflict-universality check, and counterexample miners.
//!
//! The search space is the sub-respecting functions `F` (those with
//! `F(X) ⊆ X` everywhere); it has exactly `2^(Σ_X |X|)` elements —
//! 4096 at three worlds, `2^32` at four — and is enumerated in canonical
//! order: contexts ordered by bitmask, per-context choices ordered by
//! bitmask. Other axioms are applied as filters. Sampled sweeps draw each
//! candidate independently from `(seed, index)`, so reports are identical
//! however the index range is partitioned across workers.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;
use core::time::Duration;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::derive::{close, ObFact, RuleSet};
use crate::ideality::{check_axiom, ob_cap, ob_sup, Axiom, Construction, IdealFun};
use crate::model::{ModelError, WorldSet};
use crate::obstruct::{check_5a, check_5b, check_5c, check_5d, check_5e, Condition};
use crate::verdict::Witness;

/// What a search run verifies or mines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchKind {
    /// (sub) + (I-d) makes 5(d) hold under (sup).
    Theorem2,
    /// (sub) + (I-e) makes 5(e) hold under (cap).
    Theorem3,
    /// (sub) + (referee) makes 5(a)–(c) hold under either construction.
    FiveAbc(Construction),
    /// Every mutually generic pair derives the contrary-to-duty
    /// conclusion from the closure rules.
    Conflict,
    /// Mine an F whose constructed table violates the named condition.
    Counterexample(CexTarget),
}

impl fmt::Display for SearchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchKind::Theorem2 => write!(f, "theorem2"),
            SearchKind::Theorem3 => write!(f, "theorem3"),
            SearchKind::FiveAbc(c) => write!(f, "5abc/{}", c),
            SearchKind::Conflict => write!(f, "conflict"),
            SearchKind::Counterexample(t) => write!(f, "counterexample {}", t),
        }
    }
}

/// The two negative facts worth mining for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CexTarget {
    /// 5(d) under (cap): the widened context may contain non-ideal worlds.
    FiveDUnderCap,
    /// 5(e) under (sup): obligations need not persist into subcontexts.
    FiveEUnderSup,
}

impl CexTarget {
    pub const ALL: [CexTarget; 2] = [CexTarget::FiveDUnderCap, CexTarget::FiveEUnderSup];

    pub fn code(self) -> &'static str {
        match self {
            CexTarget::FiveDUnderCap => "5d-under-cap",
            CexTarget::FiveEUnderSup => "5e-under-sup",
        }
    }

    pub fn from_code(code: &str) -> Option<CexTarget> {
        CexTarget::ALL.into_iter().find(|t| t.code() == code)
    }

    /// The condition checked and the construction it is checked under.
    pub fn condition(self) -> (Condition, Construction) {
        match self {
            CexTarget::FiveDUnderCap => (Condition::FiveD, Construction::Cap),
            CexTarget::FiveEUnderSup => (Condition::FiveE, Construction::Sup),
        }
    }
}

impl fmt::Display for CexTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

/// Exhaustive scan of the sub-respecting space, or seeded uniform
/// sampling from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchMode::Exhaustive => write!(f, "exhaustive"),
            SearchMode::Sampled { samples, seed } => {
                write!(f, "sampled({} candidates, seed {})", samples, seed)
            }
        }
    }
}

/// Where a candidate came from; the derived order is the canonical scan
/// order (rankings first, then enumerated/sampled indices).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum CandidateOrigin {
    /// Argmin of a strict ranking, listed best world first.
    Ranking(Vec<u8>),
    /// Index into the canonical enumeration of the sub-respecting space.
    Enumerated(u64),
    /// Index of a sampled candidate.
    Sampled(u64),
    /// A mutually generic pair, by masks.
    Pair { a: u16, b: u16 },
}

/// What a violation violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    Condition(Condition),
    /// The closure missed the contrary-to-duty conclusion.
    MissingConclusion,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::Condition(c) => write!(f, "{}", c),
            ViolationKind::MissingConclusion => write!(f, "missing conclusion"),
        }
    }
}

/// A violation found by a sweep, with everything needed to re-validate
/// it through the independent condition checkers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundViolation {
    pub origin: CandidateOrigin,
    pub f: Option<IdealFun>,
    pub kind: ViolationKind,
    pub witness: Witness,
}

/// Generic-pair counts for conflict sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairStats {
    pub ordered: u64,
    pub unordered: u64,
}

/// Outcome of a search run. Reports merge associatively across range
/// partitions; `elapsed` is left for the caller to fill since this crate
/// has no clock.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub kind: SearchKind,
    pub n: usize,
    pub mode: SearchMode,
    pub constraints: Vec<Axiom>,
    pub candidates_examined: u64,
    pub candidates_checked: u64,
    pub violations: Vec<FoundViolation>,
    pub pairs: Option<PairStats>,
    pub smallest_witnessing_size: Option<usize>,
    pub elapsed: Option<Duration>,
}

impl SearchReport {
    fn new(kind: SearchKind, n: usize, mode: SearchMode, constraints: Vec<Axiom>) -> Self {
        SearchReport {
            kind,
            n,
            mode,
            constraints,
            candidates_examined: 0,
            candidates_checked: 0,
            violations: Vec::new(),
            pairs: None,
            smallest_witnessing_size: None,
            elapsed: None,
        }
    }

    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// Merge a partition's report into this one. Counts add, violations
    /// interleave back into canonical scan order, pair stats add.
    pub fn merge(mut self, other: SearchReport) -> SearchReport {
        assert_eq!(self.kind, other.kind, "reports from different searches");
        assert_eq!(self.n, other.n, "reports from different universes");
        assert_eq!(self.mode, other.mode, "reports from different modes");
        self.candidates_examined += other.candidates_examined;
        self.candidates_checked += other.candidates_checked;
        self.violations.extend(other.violations);
        self.violations.sort_by(|a, b| a.origin.cmp(&b.origin));
        self.pairs = match (self.pairs, other.pairs) {
            (Some(a), Some(b)) => Some(PairStats {
                ordered: a.ordered + b.ordered,
                unordered: a.unordered + b.unordered,
            }),
            (a, b) => a.or(b),
        };
        self.smallest_witnessing_size = match (
            self.smallest_witnessing_size,
            other.smallest_witnessing_size,
        ) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.elapsed = None;
        self
    }
}

/// Errors from guards on search parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    SizeGuard {
        what: &'static str,
        n: usize,
        max: usize,
    },
    /// Sampled runs at four worlds must draw at least this many.
    TooFewSamples { required: u64, requested: u64 },
    Model(ModelError),
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::SizeGuard { what, n, max } => {
                write!(f, "{} supports at most {} worlds, {} requested", what, max, n)
            }
            SearchError::TooFewSamples { required, requested } => write!(
                f,
                "sampled runs at this size need at least {} candidates, {} requested",
                required, requested
            ),
            SearchError::Model(e) => write!(f, "{}", e),
        }
    }
}

impl core::error::Error for SearchError {}

impl From<ModelError> for SearchError {
    fn from(e: ModelError) -> Self {
        SearchError::Model(e)
    }
}

/// Place the low bits of `bits` into the set positions of `mask`.
fn spread(bits: u64, mask: u16) -> u16 {
    let mut out = 0u16;
    let mut remaining = mask;
    let mut src = bits;
    while remaining != 0 {
        let low = remaining & remaining.wrapping_neg();
        if src & 1 != 0 {
            out |= low;
        }
        src >>= 1;
        remaining ^= low;
    }
    out
}

/// Size of the sub-respecting space over `n` worlds: `2^(n·2^(n-1))`.
/// Only defined up to four worlds (the exponent reaches 64 at five).
pub fn sub_space_size(n: usize) -> Result<u64, SearchError> {
    if n == 0 || n > 4 {
        return Err(SearchError::SizeGuard {
            what: "the sub-respecting enumeration",
            n,
            max: 4,
        });
    }
    Ok(1u64 << (n * (1 << (n - 1))))
}

/// The `index`-th sub-respecting function in canonical order: contexts
/// ordered by bitmask (context `∅` most significant), per-context
/// choices ordered by bitmask.
pub fn enumerated_candidate(universe: &Arc<WorldSet>, index: u64) -> IdealFun {
    let contexts = universe.context_count();
    let mut table = vec![0u16; contexts];
    let mut rem = index;
    for ctx in (0..contexts).rev() {
        let mask = ctx as u16;
        let radix = 1u64 << mask.count_ones();
        table[ctx] = spread(rem % radix, mask);
        rem /= radix;
    }
    IdealFun::from_table(universe, table).expect("decoded table is in range")
}

/// Uniform sub-respecting sample, deterministic in `(seed, index)`.
pub fn sample_ideal_fun_sub(universe: &Arc<WorldSet>, seed: u64, index: u64) -> IdealFun {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let table = universe
        .contexts()
        .map(|ctx| spread(rng.next_u64(), ctx))
        .collect();
    IdealFun::from_table(universe, table).expect("sampled table is in range")
}

/// Uniform unrestricted sample (`F(X)` anywhere in `P(W)`), deterministic
/// in `(seed, index)`.
pub fn sample_ideal_fun_free(universe: &Arc<WorldSet>, seed: u64, index: u64) -> IdealFun {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let full = universe.full_mask();
    let table = universe
        .contexts()
        .map(|_| (rng.next_u64() as u16) & full)
        .collect();
    IdealFun::from_table(universe, table).expect("sampled table is in range")
}

/// Enumerates every sub-respecting `F` exactly once in canonical order,
/// skipping candidates that fail the filter axioms.
pub struct FEnumerator {
    universe: Arc<WorldSet>,
    filters: Vec<Axiom>,
    cursor: u64,
    total: u64,
}

impl FEnumerator {
    pub fn new(universe: &Arc<WorldSet>, filters: &[Axiom]) -> Result<Self, SearchError> {
        let total = sub_space_size(universe.world_count())?;
        Ok(FEnumerator {
            universe: Arc::clone(universe),
            filters: filters.to_vec(),
            cursor: 0,
            total,
        })
    }

    /// Candidate count before filtering.
    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Iterator for FEnumerator {
    type Item = (u64, IdealFun);

    fn next(&mut self) -> Option<Self::Item> {
        while self.cursor < self.total {
            let index = self.cursor;
            self.cursor += 1;
            let f = enumerated_candidate(&self.universe, index);
            if self.filters.iter().all(|&a| check_axiom(&f, a).holds()) {
                return Some((index, f));
            }
        }
        None
    }
}

/// Number of candidate indices a sweep of this mode scans.
pub fn candidate_space(n: usize, mode: SearchMode) -> Result<u64, SearchError> {
    match mode {
        SearchMode::Exhaustive => sub_space_size(n),
        SearchMode::Sampled { samples, .. } => Ok(samples),
    }
}

const MIN_SAMPLES_AT_FOUR: u64 = 100_000;

fn guard_sweep(what: &'static str, n: usize, mode: SearchMode) -> Result<(), SearchError> {
    match mode {
        SearchMode::Exhaustive => {
            if n == 0 || n > 3 {
                return Err(SearchError::SizeGuard { what, n, max: 3 });
            }
        }
        SearchMode::Sampled { samples, .. } => {
            if n == 0 || n > 4 {
                return Err(SearchError::SizeGuard { what, n, max: 4 });
            }
            if n == 4 && samples < MIN_SAMPLES_AT_FOUR {
                return Err(SearchError::TooFewSamples {
                    required: MIN_SAMPLES_AT_FOUR,
                    requested: samples,
                });
            }
        }
    }
    Ok(())
}

/// Scan `range` of the candidate space, filter by the non-sub axioms,
/// and run `check` on survivors.
fn sweep_range<C>(
    kind: SearchKind,
    n: usize,
    mode: SearchMode,
    constraints: Vec<Axiom>,
    range: Range<u64>,
    check: C,
) -> Result<SearchReport, SearchError>
where
    C: Fn(&IdealFun) -> Option<(ViolationKind, Witness)>,
{
    let universe = Arc::new(WorldSet::indexed(n)?);
    let mut report = SearchReport::new(kind, n, mode, constraints);
    let filters: Vec<Axiom> = report
        .constraints
        .iter()
        .copied()
        .filter(|&a| a != Axiom::Sub)
        .collect();
    for index in range {
        let (origin, f) = match mode {
            SearchMode::Exhaustive => (
                CandidateOrigin::Enumerated(index),
                enumerated_candidate(&universe, index),
            ),
            SearchMode::Sampled { seed, .. } => (
                CandidateOrigin::Sampled(index),
                sample_ideal_fun_sub(&universe, seed, index),
            ),
        };
        report.candidates_examined += 1;
        if !filters.iter().all(|&a| check_axiom(&f, a).holds()) {
            continue;
        }
        report.candidates_checked += 1;
        if let Some((kind, witness)) = check(&f) {
            report.violations.push(FoundViolation {
                origin,
                f: Some(f),
                kind,
                witness,
            });
        }
    }
    Ok(report)
}

fn theorem2_check(f: &IdealFun) -> Option<(ViolationKind, Witness)> {
    check_5d(&ob_sup(f))
        .witness()
        .map(|w| (ViolationKind::Condition(Condition::FiveD), w.clone()))
}

fn theorem3_check(f: &IdealFun) -> Option<(ViolationKind, Witness)> {
    check_5e(&ob_cap(f))
        .witness()
        .map(|w| (ViolationKind::Condition(Condition::FiveE), w.clone()))
}

fn five_abc_check(construction: Construction) -> impl Fn(&IdealFun) -> Option<(ViolationKind, Witness)> {
    move |f: &IdealFun| {
        let ob = construction.apply(f);
        for condition in [Condition::FiveA, Condition::FiveB, Condition::FiveC] {
            let verdict = match condition {
                Condition::FiveA => check_5a(&ob, true),
                Condition::FiveB => check_5b(&ob),
                _ => check_5c(&ob),
            };
            if let Some(w) = verdict.witness() {
                return Some((ViolationKind::Condition(condition), w.clone()));
            }
        }
        None
    }
}

/// Every sub-respecting `F` satisfying (I-d) yields an `ob_sup` passing
/// 5(d); any violation refutes that. Zero violations expected.
pub fn verify_theorem2(n: usize, mode: SearchMode) -> Result<SearchReport, SearchError> {
    verify_theorem2_range(n, mode, 0..candidate_space(n, mode)?)
}

/// Partition of [`verify_theorem2`] over a candidate index range.
pub fn verify_theorem2_range(
    n: usize,
    mode: SearchMode,
    range: Range<u64>,
) -> Result<SearchReport, SearchError> {
    guard_sweep("theorem2 verification", n, mode)?;
    sweep_range(
        SearchKind::Theorem2,
        n,
        mode,
        vec![Axiom::Sub, Axiom::Id],
        range,
        theorem2_check,
    )
}

/// Every sub-respecting `F` satisfying (I-e) yields an `ob_cap` passing
/// 5(e). Zero violations expected.
pub fn verify_theorem3(n: usize, mode: SearchMode) -> Result<SearchReport, SearchError> {
    verify_theorem3_range(n, mode, 0..candidate_space(n, mode)?)
}

/// Partition of [`verify_theorem3`] over a candidate index range.
pub fn verify_theorem3_range(
    n: usize,
    mode: SearchMode,
    range: Range<u64>,
) -> Result<SearchReport, SearchError> {
    guard_sweep("theorem3 verification", n, mode)?;
    sweep_range(
        SearchKind::Theorem3,
        n,
        mode,
        vec![Axiom::Sub, Axiom::Ie],
        range,
        theorem3_check,
    )
}

/// Every sub-respecting `F` satisfying (referee) yields tables passing
/// 5(a) (nonempty contexts), 5(b) and 5(c) under the given construction.
/// Exhaustive only. Zero violations expected.
pub fn verify_5abc(n: usize, construction: Construction) -> Result<SearchReport, SearchError> {
    let total = candidate_space(n, SearchMode::Exhaustive)?;
    verify_5abc_range(n, construction, 0..total)
}

/// Partition of [`verify_5abc`] over a candidate index range.
pub fn verify_5abc_range(
    n: usize,
    construction: Construction,
    range: Range<u64>,
) -> Result<SearchReport, SearchError> {
    guard_sweep("5(a)-(c) verification", n, SearchMode::Exhaustive)?;
    sweep_range(
        SearchKind::FiveAbc(construction),
        n,
        SearchMode::Exhaustive,
        vec![Axiom::Sub, Axiom::Referee],
        range,
        five_abc_check(construction),
    )
}

fn generic_masks(a: u16, b: u16, full: u16) -> bool {
    a & b != 0 && a & !b != 0 && b & !a != 0 && full & !(a | b) != 0
}

/// For every mutually generic ordered pair `(A, B)`, the closure of
/// `{(W, A)}` under all three rules contains `(W∖A, B)`. Exhaustive over
/// pairs; vacuous below four worlds.
pub fn verify_conflict(n: usize) -> Result<SearchReport, SearchError> {
    if n == 0 || n > 5 {
        return Err(SearchError::SizeGuard {
            what: "conflict verification",
            n,
            max: 5,
        });
    }
    let universe = Arc::new(WorldSet::indexed(n)?);
    let full = universe.full_mask();
    let mut report = SearchReport::new(
        SearchKind::Conflict,
        n,
        SearchMode::Exhaustive,
        Vec::new(),
    );
    let mut ordered = 0u64;
    for a in universe.contexts() {
        // A pair exists only when both A and its complement have two members.
        if a.count_ones() < 2 || (full & !a).count_ones() < 2 {
            continue;
        }
        let a_prop = universe.prop(a).expect("in range");
        let seed = ObFact::new(universe.full(), a_prop.clone());
        let closure = close(&universe, &[seed], RuleSet::all()).expect("within closure guard");
        for b in universe.contexts() {
            if !generic_masks(a, b, full) {
                continue;
            }
            ordered += 1;
            if !closure.contains_masks(full & !a, b) {
                let b_prop = universe.prop(b).expect("in range");
                report.violations.push(FoundViolation {
                    origin: CandidateOrigin::Pair { a, b },
                    f: None,
                    kind: ViolationKind::MissingConclusion,
                    witness: Witness::new(vec![("A", a_prop.clone()), ("B", b_prop)]),
                });
            }
        }
    }
    report.candidates_examined = ordered;
    report.candidates_checked = ordered;
    report.pairs = Some(PairStats {
        ordered,
        unordered: ordered / 2,
    });
    Ok(report)
}

/// Strict total orders on `n` worlds (best world first), lexicographic.
fn lex_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut perm: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![perm.clone()];
    loop {
        // Classic next-permutation.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
        out.push(perm.clone());
    }
}

const MINER_AXIOMS: [Axiom; 4] = [Axiom::Sub, Axiom::Referee, Axiom::Id, Axiom::Ie];

fn mine_at(
    universe: &Arc<WorldSet>,
    target: CexTarget,
    report: Option<&mut SearchReport>,
) -> Option<FoundViolation> {
    let (condition, construction) = target.condition();
    let check = |f: &IdealFun| -> Option<Witness> {
        let ob = construction.apply(f);
        let verdict = match condition {
            Condition::FiveD => check_5d(&ob),
            _ => check_5e(&ob),
        };
        verdict.witness().cloned()
    };
    let mut examined = 0u64;
    let mut checked = 0u64;
    let mut found = None;

    // Ranking-induced functions satisfy all four axioms, so try them first.
    'search: {
        for perm in lex_permutations(universe.world_count()) {
            let ranking: Vec<usize> = perm.iter().map(|&w| w as usize).collect();
            let f = IdealFun::from_ranking(universe, &ranking).expect("valid permutation");
            examined += 1;
            debug_assert!(MINER_AXIOMS.iter().all(|&a| check_axiom(&f, a).holds()));
            checked += 1;
            if let Some(witness) = check(&f) {
                found = Some(FoundViolation {
                    origin: CandidateOrigin::Ranking(perm),
                    f: Some(f),
                    kind: ViolationKind::Condition(condition),
                    witness,
                });
                break 'search;
            }
        }
        let enumerator =
            FEnumerator::new(universe, &MINER_AXIOMS).expect("miner sizes fit the enumerator");
        let mut scanned = 0u64;
        for (index, f) in enumerator {
            // Count every enumerated index up to the accepted one.
            examined += index + 1 - scanned;
            scanned = index + 1;
            checked += 1;
            if let Some(witness) = check(&f) {
                found = Some(FoundViolation {
                    origin: CandidateOrigin::Enumerated(index),
                    f: Some(f),
                    kind: ViolationKind::Condition(condition),
                    witness,
                });
                break 'search;
            }
        }
        examined += sub_space_size(universe.world_count()).expect("guarded") - scanned;
    }
    if let Some(report) = report {
        report.candidates_examined = examined;
        report.candidates_checked = checked;
    }
    found
}

/// Mine an `F` satisfying (sub), (referee), (I-d) and (I-e) whose
/// constructed table violates the target condition. Ranking-induced
/// candidates are tried first, then the canonical enumeration; the first
/// hit is returned. When the requested size has none, the report names
/// the smallest size (up to three) that does.
pub fn find_counterexample(target: CexTarget, n: usize) -> Result<SearchReport, SearchError> {
    if n == 0 || n > 3 {
        return Err(SearchError::SizeGuard {
            what: "counterexample mining",
            n,
            max: 3,
        });
    }
    let universe = Arc::new(WorldSet::indexed(n)?);
    let mut report = SearchReport::new(
        SearchKind::Counterexample(target),
        n,
        SearchMode::Exhaustive,
        MINER_AXIOMS.to_vec(),
    );
    if let Some(violation) = mine_at(&universe, target, Some(&mut report)) {
        report.violations.push(violation);
    } else {
        for m in 1..=3 {
            let smaller = Arc::new(WorldSet::indexed(m)?);
            if mine_at(&smaller, target, None).is_some() {
                report.smallest_witnessing_size = Some(m);
                break;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideality::{check_id, check_ie, check_referee, check_sub};
    use crate::obstruct::condition_holds_at;
    use std::collections::HashSet;

    #[test]
    fn spread_enumerates_subsets_in_order() {
        let all: Vec<u16> = (0..4).map(|d| spread(d, 0b101)).collect();
        assert_eq!(all, vec![0b000, 0b001, 0b100, 0b101]);
    }

    #[test]
    fn sub_space_sizes() {
        assert_eq!(sub_space_size(1).unwrap(), 2);
        assert_eq!(sub_space_size(2).unwrap(), 16);
        assert_eq!(sub_space_size(3).unwrap(), 4096);
        assert_eq!(sub_space_size(4).unwrap(), 1u64 << 32);
        assert!(sub_space_size(5).is_err());
    }

    #[test]
    fn enumerator_is_complete_and_duplicate_free() {
        for n in 1..=3 {
            let universe = Arc::new(WorldSet::indexed(n).unwrap());
            let enumerator = FEnumerator::new(&universe, &[]).unwrap();
            let expected = sub_space_size(n).unwrap();
            let mut seen = HashSet::new();
            let mut count = 0u64;
            for (index, f) in enumerator {
                assert_eq!(index, count);
                assert!(check_sub(&f).holds(), "enumerated candidates respect sub");
                assert!(seen.insert(f.table().to_vec()), "duplicate at {index}");
                count += 1;
            }
            assert_eq!(count, expected);
        }
    }

    #[test]
    fn enumerator_filters_apply() {
        let universe = Arc::new(WorldSet::indexed(2).unwrap());
        let total = FEnumerator::new(&universe, &[Axiom::Referee]).unwrap().count();
        // F({0})={0}, F({1})={1} forced; F({0,1}) nonempty: 3 choices.
        assert_eq!(total, 3);
    }

    #[test]
    fn theorem2_exhaustive_at_three_worlds_is_clean() {
        let report = verify_theorem2(3, SearchMode::Exhaustive).unwrap();
        assert_eq!(report.candidates_examined, 4096);
        assert!(report.clean());
        // Oracle for the filter count: direct scan.
        let universe = Arc::new(WorldSet::indexed(3).unwrap());
        let passing = (0..4096u64)
            .filter(|&i| check_id(&enumerated_candidate(&universe, i)).holds())
            .count() as u64;
        assert_eq!(report.candidates_checked, passing);
    }

    #[test]
    fn theorem2_trivial_at_one_world() {
        let report = verify_theorem2(1, SearchMode::Exhaustive).unwrap();
        assert_eq!(report.candidates_examined, 2);
        assert!(report.clean());
    }

    #[test]
    fn theorem3_exhaustive_at_three_worlds_is_clean() {
        let report = verify_theorem3(3, SearchMode::Exhaustive).unwrap();
        assert_eq!(report.candidates_examined, 4096);
        assert!(report.clean());
        let universe = Arc::new(WorldSet::indexed(3).unwrap());
        let passing = (0..4096u64)
            .filter(|&i| check_ie(&enumerated_candidate(&universe, i)).holds())
            .count() as u64;
        assert_eq!(report.candidates_checked, passing);
    }

    #[test]
    fn sampled_sweeps_at_four_worlds_are_clean_and_deterministic() {
        let mode = SearchMode::Sampled { samples: 100_000, seed: 0 };
        let t2 = verify_theorem2(4, mode).unwrap();
        assert!(t2.clean());
        assert_eq!(t2.candidates_examined, 100_000);
        let t3 = verify_theorem3(4, mode).unwrap();
        assert!(t3.clean());
        // Same seed, same report.
        assert_eq!(verify_theorem2(4, mode).unwrap(), t2);
    }

    #[test]
    fn sweep_reports_merge_across_partitions() {
        let mode = SearchMode::Exhaustive;
        let whole = verify_theorem2(3, mode).unwrap();
        let left = verify_theorem2_range(3, mode, 0..1000).unwrap();
        let right = verify_theorem2_range(3, mode, 1000..4096).unwrap();
        assert_eq!(left.merge(right), whole);
    }

    #[test]
    fn five_abc_clean_under_both_constructions() {
        for construction in Construction::ALL {
            let report = verify_5abc(3, construction).unwrap();
            assert_eq!(report.candidates_examined, 4096);
            // (referee) leaves 1·1·1·3·3·3·7 = 189 candidates.
            assert_eq!(report.candidates_checked, 189);
            assert!(report.clean());
            let tiny = verify_5abc(1, construction).unwrap();
            assert!(tiny.clean());
        }
    }

    #[test]
    fn sweep_guards() {
        assert!(matches!(
            verify_theorem2(5, SearchMode::Exhaustive),
            Err(SearchError::SizeGuard { .. })
        ));
        assert!(matches!(
            verify_theorem2(4, SearchMode::Exhaustive),
            Err(SearchError::SizeGuard { .. })
        ));
        assert!(matches!(
            verify_theorem2(4, SearchMode::Sampled { samples: 10, seed: 0 }),
            Err(SearchError::TooFewSamples { .. })
        ));
        assert!(matches!(
            verify_conflict(6),
            Err(SearchError::SizeGuard { .. })
        ));
        assert!(matches!(
            find_counterexample(CexTarget::FiveDUnderCap, 4),
            Err(SearchError::SizeGuard { .. })
        ));
    }

    #[test]
    fn conflict_is_vacuous_below_four_worlds() {
        let report = verify_conflict(3).unwrap();
        assert_eq!(report.pairs, Some(PairStats { ordered: 0, unordered: 0 }));
        assert!(report.clean());
    }

    #[test]
    fn conflict_holds_at_four_and_five_worlds() {
        // Oracle: ordered generic pairs are the surjections of worlds
        // onto the four regions: 4!·S(n,4).
        let report4 = verify_conflict(4).unwrap();
        assert_eq!(report4.pairs, Some(PairStats { ordered: 24, unordered: 12 }));
        assert!(report4.clean());
        let report5 = verify_conflict(5).unwrap();
        assert_eq!(report5.pairs, Some(PairStats { ordered: 240, unordered: 120 }));
        assert!(report5.clean());
    }

    #[test]
    fn lex_permutations_are_lexicographic() {
        let perms = lex_permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms[0], vec![0, 1, 2]);
        assert_eq!(perms[5], vec![2, 1, 0]);
        let mut sorted = perms.clone();
        sorted.sort();
        assert_eq!(perms, sorted);
    }

    #[test]
    fn miner_finds_5d_failure_under_cap() {
        let report = find_counterexample(CexTarget::FiveDUnderCap, 3).unwrap();
        assert_eq!(report.violations.len(), 1);
        let hit = &report.violations[0];
        // The identity ranking is the first candidate and already fails.
        assert_eq!(hit.origin, CandidateOrigin::Ranking(vec![0, 1, 2]));
        let f = hit.f.as_ref().unwrap();
        for axiom in MINER_AXIOMS {
            assert!(check_axiom(f, axiom).holds(), "{axiom}");
        }
        // Lex-least witness: X=∅, Y=∅, Z={0,1}.
        let masks: Vec<u16> = ["X", "Y", "Z"]
            .iter()
            .map(|name| hit.witness.get(name).unwrap().mask())
            .collect();
        assert_eq!(masks, vec![0b000, 0b000, 0b011]);
        // Re-validate through the independent checker.
        let ob = ob_cap(f);
        assert_eq!(condition_holds_at(&ob, Condition::FiveD, &hit.witness), Some(false));
    }

    #[test]
    fn miner_finds_5e_failure_under_sup() {
        let report = find_counterexample(CexTarget::FiveEUnderSup, 3).unwrap();
        assert_eq!(report.violations.len(), 1);
        let hit = &report.violations[0];
        assert_eq!(hit.origin, CandidateOrigin::Ranking(vec![0, 1, 2]));
        let f = hit.f.as_ref().unwrap();
        let masks: Vec<u16> = ["X", "Y", "Z"]
            .iter()
            .map(|name| hit.witness.get(name).unwrap().mask())
            .collect();
        assert_eq!(masks, vec![0b111, 0b110, 0b101]);
        let ob = ob_sup(f);
        assert_eq!(condition_holds_at(&ob, Condition::FiveE, &hit.witness), Some(false));
    }

    #[test]
    fn miner_reports_smallest_witnessing_size_on_a_miss() {
        // No 5(e)-under-(sup) counterexample exists over two worlds.
        let report = find_counterexample(CexTarget::FiveEUnderSup, 2).unwrap();
        assert!(report.clean());
        assert_eq!(report.smallest_witnessing_size, Some(3));
        // 5(d) under (cap) already fails at two worlds.
        let report = find_counterexample(CexTarget::FiveDUnderCap, 2).unwrap();
        assert!(!report.clean());
        let report1 = find_counterexample(CexTarget::FiveDUnderCap, 1).unwrap();
        assert!(report1.clean());
        assert_eq!(report1.smallest_witnessing_size, Some(2));
    }

    #[test]
    fn samplers_are_deterministic_and_in_range() {
        let universe = Arc::new(WorldSet::indexed(4).unwrap());
        for index in 0..200 {
            let a = sample_ideal_fun_sub(&universe, 7, index);
            let b = sample_ideal_fun_sub(&universe, 7, index);
            assert_eq!(a, b);
            assert!(check_sub(&a).holds());
            let c = sample_ideal_fun_free(&universe, 7, index);
            assert_eq!(c, sample_ideal_fun_free(&universe, 7, index));
        }
        assert_ne!(
            sample_ideal_fun_sub(&universe, 7, 0),
            sample_ideal_fun_sub(&universe, 8, 0)
        );
    }

    #[test]
    fn ranking_functions_satisfy_all_four_axioms() {
        for n in 1..=4 {
            let universe = Arc::new(WorldSet::indexed(n).unwrap());
            for perm in lex_permutations(n) {
                let ranking: Vec<usize> = perm.iter().map(|&w| w as usize).collect();
                let f = IdealFun::from_ranking(&universe, &ranking).unwrap();
                assert!(check_sub(&f).holds());
                assert!(check_referee(&f).holds());
                assert!(check_id(&f).holds());
                assert!(check_ie(&f).holds());
            }
        }
    }
}
