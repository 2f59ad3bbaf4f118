//! Ideality functions, their axioms, the two constructions of obligation
//! functions, derived preference orders, and the conditional operator.
//!
//! An [`IdealFun`] `F : P(W) -> P(W)` picks the ideal worlds of each
//! context. Both constructions assume (sub) `F(X) ⊆ X` and (referee)
//! `X ≠ ∅ ⟹ F(X) ≠ ∅`, checked separately rather than enforced at
//! construction:
//!
//! * (sup): `ob(X) = { Y : Y ⊇ F(X) }` — any sufficiently unrestrictive
//!   proposition is obligatory; each family is a principal filter.
//! * (cap): `ob(X) = { Y : Y∩X = F(X) }` — essentially one obligatory
//!   proposition per context, free choice outside it.
//!
//! The two relaxation axioms:
//!
//! * (I-d): `F(X∩Y) ⊇ F(X)∩Y` — standards can only be relaxed, not
//!   strengthened, in a more restricted context;
//! * (I-e): `F(X∩Y) = F(X)∩Y` whenever `F(X)∩Y ≠ ∅` — standards are
//!   relaxed only when absolutely necessary.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::model::{ModelError, Prop, WorldSet};
use crate::obstruct::ObFun;
use crate::verdict::{Verdict, Witness};

/// Which construction turns an ideality function into an obligation
/// function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    Sup,
    Cap,
}

impl Construction {
    pub const ALL: [Construction; 2] = [Construction::Sup, Construction::Cap];

    pub fn code(self) -> &'static str {
        match self {
            Construction::Sup => "sup",
            Construction::Cap => "cap",
        }
    }

    pub fn from_code(code: &str) -> Option<Construction> {
        Construction::ALL.into_iter().find(|c| c.code() == code)
    }

    /// Materialize the obligation table for `f` under this construction.
    pub fn apply(self, f: &IdealFun) -> ObFun {
        match self {
            Construction::Sup => ob_sup(f),
            Construction::Cap => ob_cap(f),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

/// The four ideality axioms, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    Sub,
    Referee,
    /// (I-d)
    Id,
    /// (I-e)
    Ie,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [Axiom::Sub, Axiom::Referee, Axiom::Id, Axiom::Ie];

    pub fn code(self) -> &'static str {
        match self {
            Axiom::Sub => "sub",
            Axiom::Referee => "referee",
            Axiom::Id => "I-d",
            Axiom::Ie => "I-e",
        }
    }

    pub fn from_code(code: &str) -> Option<Axiom> {
        Axiom::ALL.into_iter().find(|a| a.code() == code)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

/// An ideality function: a total table from context masks to the mask of
/// that context's ideal worlds.
#[derive(Debug, Clone)]
pub struct IdealFun {
    universe: Arc<WorldSet>,
    table: Vec<u16>,
}

impl IdealFun {
    /// `F(X) = ∅` everywhere.
    pub fn new_empty(universe: &Arc<WorldSet>) -> Self {
        IdealFun {
            universe: Arc::clone(universe),
            table: vec![0; universe.context_count()],
        }
    }

    /// `F(X) = X` everywhere.
    pub fn identity(universe: &Arc<WorldSet>) -> Self {
        IdealFun {
            universe: Arc::clone(universe),
            table: universe.contexts().collect(),
        }
    }

    /// Build from an explicit table indexed by context mask. The table
    /// must be total; (sub) is not enforced here.
    pub fn from_table(universe: &Arc<WorldSet>, table: Vec<u16>) -> Result<Self, ModelError> {
        if table.len() != universe.context_count() {
            return Err(ModelError::MaskOutOfRange {
                mask: table.len() as u16,
                worlds: universe.world_count(),
            });
        }
        for &value in &table {
            if u32::from(value) >= (1u32 << universe.world_count()) {
                return Err(ModelError::MaskOutOfRange {
                    mask: value,
                    worlds: universe.world_count(),
                });
            }
        }
        Ok(IdealFun {
            universe: Arc::clone(universe),
            table,
        })
    }

    /// Argmin of a strict total order: `ranking` lists world indices from
    /// most to least ideal, and `F(X)` is the singleton best world of
    /// each nonempty context.
    pub fn from_ranking(universe: &Arc<WorldSet>, ranking: &[usize]) -> Result<Self, ModelError> {
        let n = universe.world_count();
        if ranking.len() != n {
            return Err(ModelError::WorldOutOfRange {
                index: ranking.len(),
                worlds: n,
            });
        }
        let mut seen = vec![false; n];
        for &w in ranking {
            if w >= n {
                return Err(ModelError::WorldOutOfRange { index: w, worlds: n });
            }
            if seen[w] {
                return Err(ModelError::DuplicateLabel(universe.label(w).into()));
            }
            seen[w] = true;
        }
        let table = universe
            .contexts()
            .map(|x| {
                ranking
                    .iter()
                    .find(|&&w| x & (1 << w) != 0)
                    .map_or(0, |&w| 1 << w)
            })
            .collect();
        Ok(IdealFun {
            universe: Arc::clone(universe),
            table,
        })
    }

    /// Argmin of a numeric score per world (lower is better), ties
    /// included: `F(X)` is every world of `X` attaining the minimum.
    pub fn from_scores(universe: &Arc<WorldSet>, scores: &[f64]) -> Result<Self, ModelError> {
        let n = universe.world_count();
        if scores.len() != n {
            return Err(ModelError::WorldOutOfRange {
                index: scores.len(),
                worlds: n,
            });
        }
        let table = universe
            .contexts()
            .map(|x| {
                let best = (0..n)
                    .filter(|&w| x & (1 << w) != 0)
                    .map(|w| scores[w])
                    .fold(f64::INFINITY, f64::min);
                (0..n)
                    .filter(|&w| x & (1 << w) != 0 && scores[w] == best)
                    .fold(0u16, |m, w| m | (1 << w))
            })
            .collect();
        Ok(IdealFun {
            universe: Arc::clone(universe),
            table,
        })
    }

    pub fn universe(&self) -> &Arc<WorldSet> {
        &self.universe
    }

    pub fn world_count(&self) -> usize {
        self.universe.world_count()
    }

    /// `F(X)` as a raw mask.
    pub fn get(&self, context: u16) -> u16 {
        self.table[context as usize]
    }

    pub fn set(&mut self, context: u16, value: u16) {
        assert!(
            u32::from(value) < (1u32 << self.universe.world_count()),
            "value out of range"
        );
        self.table[context as usize] = value;
    }

    /// `F(X)` as a proposition.
    pub fn value(&self, context: u16) -> Prop {
        self.universe
            .prop(self.table[context as usize])
            .expect("table mask within universe")
    }

    pub fn table(&self) -> &[u16] {
        &self.table
    }

    fn prop(&self, mask: u16) -> Prop {
        self.universe.prop(mask).expect("mask within universe")
    }
}

impl PartialEq for IdealFun {
    fn eq(&self, other: &Self) -> bool {
        *self.universe == *other.universe && self.table == other.table
    }
}

impl Eq for IdealFun {}

/// (sub): `F(X) ⊆ X` for every context. Witness: the least violating `X`.
pub fn check_sub(f: &IdealFun) -> Verdict {
    for x in f.universe.contexts() {
        if f.get(x) & !x != 0 {
            return Verdict::fail(Witness::new(vec![("X", f.prop(x))]));
        }
    }
    Verdict::pass()
}

/// (referee): `X ≠ ∅ ⟹ F(X) ≠ ∅`.
pub fn check_referee(f: &IdealFun) -> Verdict {
    for x in f.universe.contexts() {
        if x != 0 && f.get(x) == 0 {
            return Verdict::fail(Witness::new(vec![("X", f.prop(x))]));
        }
    }
    Verdict::pass()
}

/// (I-d): `F(X∩Y) ⊇ F(X)∩Y` for all `X, Y`. Witness: the least violating
/// pair `(X, Y)`.
pub fn check_id(f: &IdealFun) -> Verdict {
    for x in f.universe.contexts() {
        let fx = f.get(x);
        for y in f.universe.contexts() {
            if fx & y & !f.get(x & y) != 0 {
                return Verdict::fail(Witness::new(vec![("X", f.prop(x)), ("Y", f.prop(y))]));
            }
        }
    }
    Verdict::pass()
}

/// (I-e): `F(X∩Y) = F(X)∩Y` whenever `F(X)∩Y ≠ ∅`.
pub fn check_ie(f: &IdealFun) -> Verdict {
    for x in f.universe.contexts() {
        let fx = f.get(x);
        for y in f.universe.contexts() {
            if fx & y != 0 && f.get(x & y) != fx & y {
                return Verdict::fail(Witness::new(vec![("X", f.prop(x)), ("Y", f.prop(y))]));
            }
        }
    }
    Verdict::pass()
}

/// Check a single axiom.
pub fn check_axiom(f: &IdealFun, axiom: Axiom) -> Verdict {
    match axiom {
        Axiom::Sub => check_sub(f),
        Axiom::Referee => check_referee(f),
        Axiom::Id => check_id(f),
        Axiom::Ie => check_ie(f),
    }
}

/// (sup): `ob(X) = { Y : Y ⊇ F(X) }`, materialized as an explicit table.
pub fn ob_sup(f: &IdealFun) -> ObFun {
    let mut ob = ObFun::new_empty(&f.universe);
    for x in f.universe.contexts() {
        let fx = f.get(x);
        let family = ob.family_mut(x);
        for y in f.universe.contexts() {
            if y & fx == fx {
                family.insert(y);
            }
        }
    }
    ob
}

/// (cap): `ob(X) = { Y : Y∩X = F(X) }`, materialized as an explicit
/// table. Empty families arise exactly where `F(X) ⊄ X`.
pub fn ob_cap(f: &IdealFun) -> ObFun {
    let mut ob = ObFun::new_empty(&f.universe);
    for x in f.universe.contexts() {
        let fx = f.get(x);
        let family = ob.family_mut(x);
        for y in f.universe.contexts() {
            if y & x == fx {
                family.insert(y);
            }
        }
    }
    ob
}

/// The conditional `O(B|A)`: whether `⟦B⟧ ∈ ob(⟦A⟧)`. Independent of any
/// actual world by construction.
pub fn holds_conditional(ob: &ObFun, a: &Prop, b: &Prop) -> Result<bool, ModelError> {
    if !(a.same_universe(b) && **a.universe() == **ob.universe()) {
        return Err(ModelError::UniverseMismatch);
    }
    Ok(ob.contains(a.mask(), b.mask()))
}

/// Which reading of the localized preference order to use.
///
/// The displayed definition of the localized order quantifies a context
/// `X ⊆ Y` but mentions only `F(Y)` in the body, leaving `X` unused; read
/// literally it degenerates to `a ∈ F(Y) → b ∈ F(Y)`. The corrected
/// reading substitutes `F(X)` for `F(Y)` in the body, making the
/// quantifier meaningful and recovering the global order at `Y = W`. Both
/// are implemented; [`Reading::Corrected`] is the default choice
/// elsewhere in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    Corrected,
    Literal,
}

/// A preference relation `a ≤ b` on worlds, stored as one row of
/// successor bits per world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefRelation {
    universe: Arc<WorldSet>,
    rows: Vec<u16>,
}

impl PrefRelation {
    pub fn universe(&self) -> &Arc<WorldSet> {
        &self.universe
    }

    /// Whether `a ≤ b`.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.rows[a] & (1 << b) != 0
    }

    /// All pairs `(a, b)` with `a ≤ b`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.universe.world_count();
        (0..n).flat_map(move |a| (0..n).filter(move |&b| self.le(a, b)).map(move |b| (a, b)))
    }

    pub fn is_reflexive(&self) -> bool {
        self.rows.iter().enumerate().all(|(a, row)| row & (1 << a) != 0)
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.universe.world_count();
        (0..n).all(|a| (0..n).all(|b| !self.le(a, b) || self.rows[b] & !self.rows[a] == 0))
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    /// Whether the relation relates each world only to itself.
    pub fn is_equality(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(a, &row)| row == 1 << a)
    }

    /// Whether every pair is related.
    pub fn is_total(&self) -> bool {
        let full = self.universe.full_mask();
        self.rows.iter().all(|&row| row == full)
    }
}

/// Row `a` of the order: all `b` such that every admissible context that
/// makes `a` ideal also makes `b` ideal.
fn rows_from_contexts<I: Iterator<Item = u16> + Clone>(
    f: &IdealFun,
    contexts: I,
) -> Vec<u16> {
    let n = f.universe.world_count();
    let full = f.universe.full_mask();
    (0..n)
        .map(|a| {
            contexts
                .clone()
                .filter(|&x| f.get(x) & (1 << a) != 0)
                .fold(full, |acc, x| acc & f.get(x))
        })
        .collect()
}

/// Global preference order induced by `F`:
/// `a ≤ b ⟺ (∀X)(a ∈ F(X) → b ∈ F(X))`.
pub fn preference_global(f: &IdealFun) -> PrefRelation {
    PrefRelation {
        universe: Arc::clone(&f.universe),
        rows: rows_from_contexts(f, f.universe.contexts()),
    }
}

/// Preference order localized to the context `within`.
///
/// Corrected reading: `a ≤ b ⟺ (∀X ⊆ within)(a ∈ F(X) → b ∈ F(X))`.
/// Literal reading: the quantified context is ignored and the body tests
/// `F(within)` itself — see [`Reading`].
pub fn preference_local(f: &IdealFun, within: &Prop, reading: Reading) -> PrefRelation {
    assert!(
        **within.universe() == *f.universe,
        "context built over a different universe"
    );
    let y = within.mask();
    let rows = match reading {
        Reading::Corrected => rows_from_contexts(f, crate::obstruct::subsets_of(y)),
        Reading::Literal => {
            let n = f.universe.world_count();
            let full = f.universe.full_mask();
            let fy = f.get(y);
            (0..n)
                .map(|a| if fy & (1 << a) != 0 { fy } else { full })
                .collect()
        }
    };
    PrefRelation {
        universe: Arc::clone(&f.universe),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstruct::{check_5a, check_5b, check_5c};

    fn universe(n: usize) -> Arc<WorldSet> {
        Arc::new(WorldSet::indexed(n).unwrap())
    }

    fn argmin_f(w: &Arc<WorldSet>) -> IdealFun {
        let ranking: Vec<usize> = (0..w.world_count()).collect();
        IdealFun::from_ranking(w, &ranking).unwrap()
    }

    #[test]
    fn sub_holds_for_argmin_fails_for_constant_full() {
        let w = universe(3);
        assert!(check_sub(&argmin_f(&w)).holds());
        let constant = IdealFun::from_table(&w, vec![0b111; 8]).unwrap();
        let v = check_sub(&constant);
        assert!(!v.holds());
        assert_eq!(v.witness().unwrap().get("X").unwrap().mask(), 0);
    }

    #[test]
    fn sub_rejects_nonempty_value_at_empty_context() {
        let w = universe(2);
        let mut f = IdealFun::new_empty(&w);
        f.set(0, 0b01);
        let v = check_sub(&f);
        assert!(!v.holds());
        assert_eq!(v.witness().unwrap().get("X").unwrap().mask(), 0);
    }

    #[test]
    fn referee_examples() {
        let w = universe(2);
        assert!(check_referee(&argmin_f(&w)).holds());
        assert!(check_referee(&IdealFun::identity(&w)).holds());
        let mut f = IdealFun::identity(&w);
        f.set(0b01, 0);
        let v = check_referee(&f);
        assert!(!v.holds());
        assert_eq!(v.witness().unwrap().get("X").unwrap().mask(), 0b01);
    }

    #[test]
    fn relaxation_axiom_id() {
        let w = universe(3);
        assert!(check_id(&argmin_f(&w)).holds());
        assert!(check_id(&IdealFun::identity(&w)).holds());
        // Strengthening the standard inside {0,1} violates (I-d) at
        // X=W, Y={0,1}: F(W)∩Y = {0} but F({0,1}) = {1}.
        let mut f = argmin_f(&w);
        f.set(0b011, 0b010);
        let v = check_id(&f);
        assert!(!v.holds());
        let wit = v.witness().unwrap();
        assert_eq!(wit.get("X").unwrap().mask(), 0b111);
        assert_eq!(wit.get("Y").unwrap().mask(), 0b011);
    }

    #[test]
    fn relaxation_axiom_ie() {
        let w3 = universe(3);
        assert!(check_ie(&argmin_f(&w3)).holds());
        assert!(check_ie(&IdealFun::identity(&w3)).holds());
        // F(W)={0,1}, F({0})={0}, F({1})=∅: at X=W, Y={1} the guard
        // F(X)∩Y = {1} ≠ ∅ holds but F(X∩Y) = ∅.
        let w = universe(2);
        let f = IdealFun::from_table(&w, vec![0b00, 0b01, 0b00, 0b11]).unwrap();
        let v = check_ie(&f);
        assert!(!v.holds());
        let wit = v.witness().unwrap();
        assert_eq!(wit.get("X").unwrap().mask(), 0b11);
        assert_eq!(wit.get("Y").unwrap().mask(), 0b10);
    }

    #[test]
    fn sup_families_are_supersets_of_the_ideal() {
        let w = universe(2);
        let mut f = IdealFun::new_empty(&w);
        f.set(0b11, 0b01);
        let ob = ob_sup(&f);
        assert_eq!(ob.family(0b11).iter().collect::<Vec<_>>(), vec![0b01, 0b11]);
        // F(X)=∅ makes everything obligatory, including ∅.
        assert_eq!(ob.family(0b01).len(), 4);
        assert!(ob.contains(0b01, 0));
    }

    #[test]
    fn sup_family_size_counts_supersets() {
        let w = universe(4);
        let f = argmin_f(&w);
        let ob = ob_sup(&f);
        for x in w.contexts() {
            let expected = 1usize << (4 - f.get(x).count_ones());
            assert_eq!(ob.family(x).len(), expected);
        }
    }

    #[test]
    fn cap_families_fix_the_trace_inside_the_context() {
        let w = universe(2);
        let mut f = IdealFun::new_empty(&w);
        f.set(0b11, 0b01);
        assert_eq!(ob_cap(&f).family(0b11).iter().collect::<Vec<_>>(), vec![0b01]);

        let w3 = universe(3);
        let mut f3 = IdealFun::new_empty(&w3);
        f3.set(0b011, 0b001);
        // Enumerating all 8 subsets: Y∩{0,1}={0} keeps {0} and {0,2}.
        assert_eq!(
            ob_cap(&f3).family(0b011).iter().collect::<Vec<_>>(),
            vec![0b001, 0b101]
        );
    }

    #[test]
    fn cap_family_size_is_free_choice_outside_context() {
        let w = universe(3);
        let f = argmin_f(&w);
        let ob = ob_cap(&f);
        for x in w.contexts() {
            let expected = 1usize << (3 - x.count_ones());
            assert_eq!(ob.family(x).len(), expected, "context {x:03b}");
        }
    }

    #[test]
    fn cap_members_agree_inside_the_context() {
        let w = universe(3);
        let ob = ob_cap(&argmin_f(&w));
        for x in w.contexts() {
            let fam = ob.family(x);
            for y in fam.iter() {
                for z in fam.iter() {
                    assert_eq!(y & x, z & x);
                }
            }
        }
    }

    #[test]
    fn empty_ideal_set_equivalence_for_both_constructions() {
        // ∅ ∈ ob(X) ⟺ F(X) = ∅, for arbitrary tables.
        let w = universe(3);
        for seed in 0..32u16 {
            let table: Vec<u16> = w.contexts().map(|x| (x.wrapping_mul(7).wrapping_add(seed)) & 0b111).collect();
            let f = IdealFun::from_table(&w, table).unwrap();
            for construction in Construction::ALL {
                let ob = construction.apply(&f);
                for x in w.contexts() {
                    assert_eq!(ob.contains(x, 0), f.get(x) == 0);
                }
            }
        }
    }

    #[test]
    fn first_three_conditions_hold_for_both_constructions_of_argmin() {
        let w = universe(3);
        let f = argmin_f(&w);
        for construction in Construction::ALL {
            let ob = construction.apply(&f);
            assert!(check_5a(&ob, true).holds());
            assert!(check_5b(&ob).holds());
            assert!(check_5c(&ob).holds());
        }
    }

    #[test]
    fn conditional_operator() {
        let w = universe(3);
        let f = argmin_f(&w);
        let sup = ob_sup(&f);
        let cap = ob_cap(&f);
        let top = w.full();
        // Under (sup), anything containing F(W)={0} is obligatory at ⊤.
        assert!(holds_conditional(&sup, &top, &w.prop(0b101).unwrap()).unwrap());
        assert!(!holds_conditional(&sup, &top, &w.prop(0b110).unwrap()).unwrap());
        // O(⊤|⊤) holds under (sup); under (cap) it needs F(W) = W.
        assert!(holds_conditional(&sup, &top, &top).unwrap());
        assert!(!holds_conditional(&cap, &top, &top).unwrap());
        // O(⊥|⊤) fails whenever F(W) ≠ ∅.
        assert!(!holds_conditional(&sup, &top, &w.empty()).unwrap());
        assert!(!holds_conditional(&cap, &top, &w.empty()).unwrap());
        // Universe mismatch is an error.
        let other = universe(2);
        assert!(holds_conditional(&sup, &other.full(), &other.empty()).is_err());
    }

    #[test]
    fn global_preference_of_argmin_is_equality() {
        let w = universe(3);
        let rel = preference_global(&argmin_f(&w));
        assert!(rel.is_preorder());
        // For a ≠ b the context {a} has a ideal and b not.
        assert!(rel.is_equality());
    }

    #[test]
    fn global_preference_of_identity_is_equality() {
        let w = universe(3);
        let rel = preference_global(&IdealFun::identity(&w));
        assert!(rel.is_equality());
    }

    #[test]
    fn global_preference_is_reflexive_for_any_table() {
        let w = universe(3);
        for seed in 0..16u16 {
            let table: Vec<u16> = w.contexts().map(|x| (x.wrapping_add(seed).wrapping_mul(5)) & 0b111).collect();
            let f = IdealFun::from_table(&w, table).unwrap();
            assert!(preference_global(&f).is_preorder());
        }
    }

    #[test]
    fn local_preference_readings() {
        let w = universe(3);
        let f = argmin_f(&w);
        // Empty context: total under both readings (F(∅) = ∅).
        for reading in [Reading::Corrected, Reading::Literal] {
            assert!(preference_local(&f, &w.empty(), reading).is_total());
        }
        // Full context, corrected reading: the global order.
        assert_eq!(
            preference_local(&f, &w.full(), Reading::Corrected),
            preference_global(&f)
        );
        // Literal reading collapses to a test of F(within) alone.
        let within = w.prop(0b110).unwrap();
        let rel = preference_local(&f, &within, Reading::Literal);
        let fy = f.get(0b110);
        for a in 0..3 {
            for b in 0..3 {
                let expected = fy & (1 << a) == 0 || fy & (1 << b) != 0;
                assert_eq!(rel.le(a, b), expected);
            }
        }
    }

    #[test]
    fn ranking_rejects_bad_permutations() {
        let w = universe(3);
        assert!(IdealFun::from_ranking(&w, &[0, 1]).is_err());
        assert!(IdealFun::from_ranking(&w, &[0, 1, 1]).is_err());
        assert!(IdealFun::from_ranking(&w, &[0, 1, 3]).is_err());
    }

    #[test]
    fn scores_keep_ties() {
        let w = Arc::new(WorldSet::new(vec!["a".into(), "b".into(), "c".into()]).unwrap());
        let f = IdealFun::from_scores(&w, &[1.0, 1.0, 2.0]).unwrap();
        assert_eq!(f.get(0b111), 0b011);
        assert_eq!(f.get(0b110), 0b010);
        assert_eq!(f.get(0b100), 0b100);
        assert_eq!(f.get(0), 0);
        assert!(check_sub(&f).holds());
        assert!(check_referee(&f).holds());
    }
}
