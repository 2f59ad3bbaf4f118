//! Forward closure over obligation facts, with derivation traces.
//!
//! Facts have the shape `ob(X) ∋ Y`. Three inference rules, the
//! reconstructed conditions 5(b)/5(d)/5(e) read left to right:
//!
//! * `R-b`: from `(X, Y)`, for any `Z` with `Z∩X = Y∩X`, derive `(X, Z)`;
//! * `R-d`: from `(X, Y)` with `Y ⊆ X`, for any `Z ⊇ X`, derive
//!   `(Z, (Z∖X)∪Y)`;
//! * `R-e`: from `(X, Z)`, for any `Y ⊆ X` with `Y∩Z ≠ ∅`, derive
//!   `(Y, Z)`.
//!
//! [`close`] computes the least fixpoint of the selected rules
//! breadth-first, so every derived fact carries a minimal-length trace;
//! ties are broken lexicographically on (context, set) bitmasks, which
//! makes traces canonical. [`replay_theorem1`] builds the six-step chain
//! deriving, from `ob(W) ∋ ⟦A⟧` alone, the contrary-to-duty conclusion
//! `ob(⟦¬A⟧) ∋ ⟦B⟧` for any mutually generic `A`, `B`.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::model::{mutually_generic, Prop, WorldSet};
use crate::obstruct::{subsets_of, ObFun};
use crate::verdict::{Verdict, Witness};

/// Closure lives in `P(W) × P(W)`, so cap it harder than the global
/// 16-world limit: at 12 worlds the fact space is 4^12 ≈ 16.7M.
pub const MAX_CLOSURE_WORLDS: usize = 12;

/// An obligation fact: `obligatory ∈ ob(context)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObFact {
    pub context: Prop,
    pub obligatory: Prop,
}

impl ObFact {
    pub fn new(context: Prop, obligatory: Prop) -> Self {
        assert!(
            context.same_universe(&obligatory),
            "fact parts built over different universes"
        );
        ObFact {
            context,
            obligatory,
        }
    }
}

impl fmt::Display for ObFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ob({}) ∋ {}", self.context, self.obligatory)
    }
}

/// How a trace step was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Seed,
    RB,
    RD,
    RE,
    /// Two formula routes to one extension; the fact is unchanged.
    SetIdentity,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Seed => "seed",
            Rule::RB => "R-b",
            Rule::RD => "R-d",
            Rule::RE => "R-e",
            Rule::SetIdentity => "set-identity",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Which inference rules a closure may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleSet {
    pub b: bool,
    pub d: bool,
    pub e: bool,
}

impl RuleSet {
    pub fn all() -> Self {
        RuleSet {
            b: true,
            d: true,
            e: true,
        }
    }

    pub fn none() -> Self {
        RuleSet {
            b: false,
            d: false,
            e: false,
        }
    }

    pub fn only_b() -> Self {
        RuleSet {
            b: true,
            ..RuleSet::none()
        }
    }
}

/// One step of a derivation trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub fact: ObFact,
    pub rule: Rule,
    /// Indices of premise steps within the trace (always 0 or 1 here).
    pub premises: Vec<usize>,
    /// Instantiation of the rule's set variables.
    pub bindings: Vec<(&'static str, Prop)>,
}

/// Errors from closure and replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeriveError {
    UniverseMismatch,
    /// The pair is not mutually generic; names the first empty region.
    NotGeneric { region: &'static str },
    TooManyWorlds { worlds: usize, max: usize },
}

impl fmt::Display for DeriveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeriveError::UniverseMismatch => write!(f, "universe mismatch"),
            DeriveError::NotGeneric { region } => write!(
                f,
                "propositions are not mutually generic: region {} is empty",
                region
            ),
            DeriveError::TooManyWorlds { worlds, max } => {
                write!(f, "{} worlds exceed the closure limit of {}", worlds, max)
            }
        }
    }
}

impl core::error::Error for DeriveError {}

/// A trace is invalid when a step's premises do not precede it or do not
/// reproduce its fact under its rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceError {
    pub step: usize,
    pub reason: &'static str,
}

impl fmt::Display for TraceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid trace at step {}: {}", self.step + 1, self.reason)
    }
}

impl core::error::Error for TraceError {}

/// An ordered derivation record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    steps: Vec<TraceStep>,
}

impl Trace {
    pub fn new(steps: Vec<TraceStep>) -> Self {
        Trace { steps }
    }

    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last_fact(&self) -> Option<&ObFact> {
        self.steps.last().map(|s| &s.fact)
    }

    pub fn rules(&self) -> Vec<Rule> {
        self.steps.iter().map(|s| s.rule).collect()
    }

    /// Check the trace invariants: premises precede their step, and each
    /// step's rule applied to its premise reproduces its fact.
    pub fn validate(&self) -> Result<(), TraceError> {
        for (i, step) in self.steps.iter().enumerate() {
            let fail = |reason| Err(TraceError { step: i, reason });
            if step.premises.iter().any(|&p| p >= i) {
                return fail("premise does not precede the step");
            }
            let premise = step.premises.first().map(|&p| &self.steps[p].fact);
            let (fc, fm) = (step.fact.context.mask(), step.fact.obligatory.mask());
            match (step.rule, premise) {
                (Rule::Seed, None) => {}
                (Rule::Seed, Some(_)) => return fail("seed steps take no premise"),
                (_, None) => return fail("rule steps take one premise"),
                (Rule::RB, Some(p)) => {
                    let (x, y) = (p.context.mask(), p.obligatory.mask());
                    if fc != x || fm & x != y & x {
                        return fail("R-b: derived set differs inside the context");
                    }
                }
                (Rule::RD, Some(p)) => {
                    let (x, y) = (p.context.mask(), p.obligatory.mask());
                    if y & !x != 0 || x & !fc != 0 || fm != (fc & !x) | y {
                        return fail("R-d: derived fact is not (Z, (Z∖X)∪Y) with Y⊆X⊆Z");
                    }
                }
                (Rule::RE, Some(p)) => {
                    let (x, z) = (p.context.mask(), p.obligatory.mask());
                    if fm != z || fc & !x != 0 || fc & z == 0 {
                        return fail("R-e: derived context is not a subset meeting the set");
                    }
                }
                (Rule::SetIdentity, Some(p)) => {
                    if fc != p.context.mask() || fm != p.obligatory.mask() {
                        return fail("set-identity must preserve the fact extensionally");
                    }
                }
            }
        }
        Ok(())
    }

    /// One line per step:
    /// `#k: ob(<context>) ∋ <set>  [rule; from #i; instantiation]`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            let _ = write!(out, "#{}: {}  [{}", i + 1, step.fact, step.rule);
            if let Some(&p) = step.premises.first() {
                let _ = write!(out, "; from #{}", p + 1);
            }
            if !step.bindings.is_empty() {
                let _ = write!(out, "; ");
                for (j, (name, prop)) in step.bindings.iter().enumerate() {
                    if j > 0 {
                        let _ = write!(out, ", ");
                    }
                    let _ = write!(out, "{}={}", name, prop);
                }
            }
            let _ = writeln!(out, "]");
        }
        out
    }
}

const UNSEEN: u32 = u32::MAX;
const PENDING: u32 = u32::MAX - 1;

#[derive(Debug, Clone, Copy)]
struct ClosureEntry {
    context: u16,
    member: u16,
    rule: Rule,
    premise: u32,
}

/// The least fixpoint of a rule set over seed facts, with enough
/// bookkeeping to extract a canonical minimal trace for every fact.
#[derive(Debug, Clone)]
pub struct Closure {
    universe: Arc<WorldSet>,
    entries: Vec<ClosureEntry>,
    index: Vec<u32>,
}

impl Closure {
    pub fn universe(&self) -> &Arc<WorldSet> {
        &self.universe
    }

    /// Number of distinct facts derived (seeds included).
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn fact_id(&self, context: u16, member: u16) -> usize {
        ((context as usize) << self.universe.world_count()) | member as usize
    }

    pub fn contains_masks(&self, context: u16, member: u16) -> bool {
        let slot = self.index[self.fact_id(context, member)];
        slot != UNSEEN && slot != PENDING
    }

    pub fn contains(&self, fact: &ObFact) -> bool {
        assert!(
            **fact.context.universe() == *self.universe,
            "fact built over a different universe"
        );
        self.contains_masks(fact.context.mask(), fact.obligatory.mask())
    }

    /// All facts in derivation order (seeds first, then by level).
    pub fn facts(&self) -> impl Iterator<Item = ObFact> + '_ {
        self.entries.iter().map(|e| ObFact {
            context: self.universe.prop(e.context).expect("in range"),
            obligatory: self.universe.prop(e.member).expect("in range"),
        })
    }

    /// The canonical minimal-length trace deriving `fact`, if present.
    pub fn trace_of(&self, fact: &ObFact) -> Option<Trace> {
        if !self.contains(fact) {
            return None;
        }
        let mut chain = Vec::new();
        let mut at = self.index[self.fact_id(fact.context.mask(), fact.obligatory.mask())];
        loop {
            let entry = self.entries[at as usize];
            chain.push(entry);
            if entry.premise == UNSEEN {
                break;
            }
            at = entry.premise;
        }
        chain.reverse();
        let prop = |mask: u16| self.universe.prop(mask).expect("in range");
        let steps = chain
            .iter()
            .enumerate()
            .map(|(i, entry)| {
                let fact = ObFact {
                    context: prop(entry.context),
                    obligatory: prop(entry.member),
                };
                let (premises, bindings) = if i == 0 {
                    (Vec::new(), Vec::new())
                } else {
                    let prev = &chain[i - 1];
                    let bindings = match entry.rule {
                        Rule::RB => vec![
                            ("X", prop(prev.context)),
                            ("Y", prop(prev.member)),
                            ("Z", prop(entry.member)),
                        ],
                        Rule::RD => vec![
                            ("X", prop(prev.context)),
                            ("Y", prop(prev.member)),
                            ("Z", prop(entry.context)),
                        ],
                        Rule::RE => vec![
                            ("X", prop(prev.context)),
                            ("Z", prop(prev.member)),
                            ("Y", prop(entry.context)),
                        ],
                        Rule::Seed | Rule::SetIdentity => Vec::new(),
                    };
                    (vec![i - 1], bindings)
                };
                TraceStep {
                    fact,
                    rule: entry.rule,
                    premises,
                    bindings,
                }
            })
            .collect();
        Some(Trace::new(steps))
    }
}

/// Breadth-first least fixpoint of `rules` over `seeds`.
///
/// Facts are discovered level by level; within a level the frontier is
/// expanded in lexicographic (context, set) order, rules in the order
/// R-b, R-d, R-e, instantiations ascending, and the first derivation of
/// a fact is kept. Fails above [`MAX_CLOSURE_WORLDS`] worlds.
pub fn close(
    universe: &Arc<WorldSet>,
    seeds: &[ObFact],
    rules: RuleSet,
) -> Result<Closure, DeriveError> {
    let n = universe.world_count();
    if n > MAX_CLOSURE_WORLDS {
        return Err(DeriveError::TooManyWorlds {
            worlds: n,
            max: MAX_CLOSURE_WORLDS,
        });
    }
    for seed in seeds {
        if **seed.context.universe() != **universe {
            return Err(DeriveError::UniverseMismatch);
        }
    }
    let full = universe.full_mask();
    let mut closure = Closure {
        universe: Arc::clone(universe),
        entries: Vec::new(),
        index: vec![UNSEEN; 1usize << (2 * n)],
    };

    let mut level: Vec<(u16, u16)> = seeds
        .iter()
        .map(|f| (f.context.mask(), f.obligatory.mask()))
        .collect();
    level.sort_unstable();
    level.dedup();
    for &(x, y) in &level {
        let id = closure.fact_id(x, y);
        closure.index[id] = closure.entries.len() as u32;
        closure.entries.push(ClosureEntry {
            context: x,
            member: y,
            rule: Rule::Seed,
            premise: UNSEEN,
        });
    }

    let mut level_start = 0usize;
    while level_start < closure.entries.len() {
        let level_end = closure.entries.len();
        // (fact, rule, premise) staged in first-discovery order.
        let mut found: Vec<((u16, u16), Rule, u32)> = Vec::new();
        for premise_idx in level_start..level_end {
            let entry = closure.entries[premise_idx];
            let (x, y) = (entry.context, entry.member);
            let mut stage = |fact: (u16, u16), rule: Rule, closure: &mut Closure| {
                let id = closure.fact_id(fact.0, fact.1);
                if closure.index[id] == UNSEEN {
                    closure.index[id] = PENDING;
                    found.push((fact, rule, premise_idx as u32));
                }
            };
            if rules.b {
                let base = y & x;
                for extra in subsets_of(full & !x) {
                    stage((x, base | extra), Rule::RB, &mut closure);
                }
            }
            if rules.d && y & !x == 0 {
                for extra in subsets_of(full & !x) {
                    let z = x | extra;
                    stage((z, extra | y), Rule::RD, &mut closure);
                }
            }
            if rules.e {
                for sub in subsets_of(x) {
                    if sub & y != 0 {
                        stage((sub, y), Rule::RE, &mut closure);
                    }
                }
            }
        }
        found.sort_unstable_by_key(|&(fact, _, _)| fact);
        for (fact, rule, premise) in found {
            let id = closure.fact_id(fact.0, fact.1);
            closure.index[id] = closure.entries.len() as u32;
            closure.entries.push(ClosureEntry {
                context: fact.0,
                member: fact.1,
                rule,
                premise,
            });
        }
        level_start = level_end;
    }
    Ok(closure)
}

/// Replay the conflict derivation for a mutually generic pair: from the
/// single hypothesis `ob(W) ∋ ⟦A⟧`, six annotated steps reach
/// `ob(⟦¬A⟧) ∋ ⟦B⟧`:
///
/// ```text
/// (W, A)  —R-e→  (A∪¬B, A)  —R-d→  (W, A∪¬(A∪¬B))  =  (W, A∪B)
///         —R-e→  (¬A, A∪B)  —R-b→  (¬A, B)
/// ```
///
/// The middle equality is a set identity, recorded as its own step and
/// verified extensionally. Fails if the pair is not mutually generic,
/// naming the first empty region.
pub fn replay_theorem1(a: &Prop, b: &Prop) -> Result<Trace, DeriveError> {
    let generic = mutually_generic(a, b).map_err(|_| DeriveError::UniverseMismatch)?;
    if let Some(witness) = generic.witness() {
        let (region, _) = witness.bindings()[0];
        return Err(DeriveError::NotGeneric { region });
    }
    let universe = a.universe();
    let top = universe.full();
    let a_or_not_b = a.union(&b.complement());
    let widened = top.minus(&a_or_not_b).union(a); // (W ∖ (A∪¬B)) ∪ A
    let a_or_b = a.union(b);
    debug_assert_eq!(widened, a_or_b, "the set identity behind the middle step");
    let not_a = a.complement();

    let fact = |c: &Prop, m: &Prop| ObFact::new(c.clone(), m.clone());
    let steps = vec![
        TraceStep {
            fact: fact(&top, a),
            rule: Rule::Seed,
            premises: vec![],
            bindings: vec![],
        },
        TraceStep {
            fact: fact(&a_or_not_b, a),
            rule: Rule::RE,
            premises: vec![0],
            bindings: vec![("X", top.clone()), ("Z", a.clone()), ("Y", a_or_not_b.clone())],
        },
        TraceStep {
            fact: fact(&top, &widened),
            rule: Rule::RD,
            premises: vec![1],
            bindings: vec![("X", a_or_not_b.clone()), ("Y", a.clone()), ("Z", top.clone())],
        },
        TraceStep {
            fact: fact(&top, &a_or_b),
            rule: Rule::SetIdentity,
            premises: vec![2],
            bindings: vec![],
        },
        TraceStep {
            fact: fact(&not_a, &a_or_b),
            rule: Rule::RE,
            premises: vec![3],
            bindings: vec![("X", top.clone()), ("Z", a_or_b.clone()), ("Y", not_a.clone())],
        },
        TraceStep {
            fact: fact(&not_a, b),
            rule: Rule::RB,
            premises: vec![4],
            bindings: vec![("X", not_a.clone()), ("Y", a_or_b.clone()), ("Z", b.clone())],
        },
    ];
    let trace = Trace::new(steps);
    debug_assert_eq!(trace.validate(), Ok(()));
    Ok(trace)
}

/// Whether every fact of the trace is present in an explicit obligation
/// table; the first missing fact becomes the witness.
pub fn check_against_table(trace: &Trace, ob: &ObFun) -> Verdict {
    for step in trace.steps() {
        assert!(
            **step.fact.context.universe() == **ob.universe(),
            "trace built over a different universe"
        );
        let (x, y) = (step.fact.context.mask(), step.fact.obligatory.mask());
        if !ob.contains(x, y) {
            return Verdict::fail(Witness::new(vec![
                ("X", step.fact.context.clone()),
                ("Y", step.fact.obligatory.clone()),
            ]));
        }
    }
    Verdict::pass()
}
