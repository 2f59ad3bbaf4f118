//! Explicit obligation functions and the condition predicates 5(a)–(e).
//!
//! An [`ObFun`] is a total table `P(W) -> P(P(W))`: for each context, the
//! family of propositions obligatory in it. The five conditions are
//! checked by exhaustive bitmask enumeration; a failing check returns the
//! lexicographically least violating tuple (by bitmask, in quantifier
//! order) as a self-validating witness.
//!
//! The condition statements, universally quantified over all contexts and
//! sets:
//!
//! * 5(a): `∅ ∉ ob(X)` (optionally only for `X ≠ ∅`);
//! * 5(b): `Y∩X = Z∩X` implies `Y ∈ ob(X) ⇔ Z ∈ ob(X)`;
//! * 5(c): `Y ∈ ob(X)` and `Z ∈ ob(X)` imply `Y∩Z ∈ ob(X)`;
//! * 5(d): `Y ⊆ X ⊆ Z` and `Y ∈ ob(X)` imply `(Z∖X)∪Y ∈ ob(Z)`;
//! * 5(e): `Y ⊆ X`, `Z ∈ ob(X)` and `Y∩Z ≠ ∅` imply `Z ∈ ob(Y)`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::model::{Prop, WorldSet};
use crate::verdict::{Verdict, Witness};

/// A set of propositions over one universe: a `2^n`-bit set indexed by
/// proposition mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySet {
    members: u32,
    words: Vec<u64>,
}

impl FamilySet {
    /// Empty family over an `n`-world universe.
    pub fn empty(worlds: usize) -> Self {
        let members = 1u32 << worlds;
        FamilySet {
            members,
            words: vec![0; (members as usize).div_ceil(64)],
        }
    }

    /// Family containing every subset of the universe.
    pub fn full(worlds: usize) -> Self {
        let mut fam = FamilySet::empty(worlds);
        for m in 0..fam.members {
            fam.insert(m as u16);
        }
        fam
    }

    pub fn contains(&self, member: u16) -> bool {
        let i = member as usize;
        debug_assert!((member as u32) < self.members);
        self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn insert(&mut self, member: u16) {
        let i = member as usize;
        assert!((member as u32) < self.members, "member out of range");
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn remove(&mut self, member: u16) {
        let i = member as usize;
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Member masks in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u16> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut bits = word;
            core::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros();
                    bits &= bits - 1;
                    Some((wi as u32 * 64 + b) as u16)
                }
            })
        })
    }
}

/// An obligation function: for every context `X ⊆ W`, the family `ob(X)`
/// of obligatory propositions. Members need not be subsets of their
/// context — 5(b) deliberately permits members exceeding it.
#[derive(Debug, Clone)]
pub struct ObFun {
    universe: Arc<WorldSet>,
    families: Vec<FamilySet>,
}

impl ObFun {
    /// All families empty.
    pub fn new_empty(universe: &Arc<WorldSet>) -> Self {
        let n = universe.world_count();
        ObFun {
            universe: Arc::clone(universe),
            families: vec![FamilySet::empty(n); 1 << n],
        }
    }

    /// Every family is the whole powerset.
    pub fn new_full(universe: &Arc<WorldSet>) -> Self {
        let n = universe.world_count();
        ObFun {
            universe: Arc::clone(universe),
            families: vec![FamilySet::full(n); 1 << n],
        }
    }

    pub fn universe(&self) -> &Arc<WorldSet> {
        &self.universe
    }

    pub fn world_count(&self) -> usize {
        self.universe.world_count()
    }

    pub fn family(&self, context: u16) -> &FamilySet {
        &self.families[context as usize]
    }

    pub fn family_mut(&mut self, context: u16) -> &mut FamilySet {
        &mut self.families[context as usize]
    }

    pub fn insert(&mut self, context: u16, member: u16) {
        self.families[context as usize].insert(member);
    }

    pub fn contains(&self, context: u16, member: u16) -> bool {
        self.families[context as usize].contains(member)
    }

    fn prop(&self, mask: u16) -> Prop {
        self.universe.prop(mask).expect("mask within universe")
    }
}

impl PartialEq for ObFun {
    fn eq(&self, other: &Self) -> bool {
        *self.universe == *other.universe && self.families == other.families
    }
}

impl Eq for ObFun {}

/// The five checkable conditions, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Condition {
    FiveA,
    FiveB,
    FiveC,
    FiveD,
    FiveE,
}

impl Condition {
    pub const ALL: [Condition; 5] = [
        Condition::FiveA,
        Condition::FiveB,
        Condition::FiveC,
        Condition::FiveD,
        Condition::FiveE,
    ];

    /// Short code used on the command line: `5a` ... `5e`.
    pub fn code(self) -> &'static str {
        match self {
            Condition::FiveA => "5a",
            Condition::FiveB => "5b",
            Condition::FiveC => "5c",
            Condition::FiveD => "5d",
            Condition::FiveE => "5e",
        }
    }

    pub fn from_code(code: &str) -> Option<Condition> {
        Condition::ALL.into_iter().find(|c| c.code() == code)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::FiveA => write!(f, "5(a)"),
            Condition::FiveB => write!(f, "5(b)"),
            Condition::FiveC => write!(f, "5(c)"),
            Condition::FiveD => write!(f, "5(d)"),
            Condition::FiveE => write!(f, "5(e)"),
        }
    }
}

/// 5(a): the empty proposition is never obligatory. With `nonempty_only`
/// (the usual reading) the impossible context `X = ∅` is exempt.
pub fn check_5a(ob: &ObFun, nonempty_only: bool) -> Verdict {
    for x in ob.universe.contexts() {
        if nonempty_only && x == 0 {
            continue;
        }
        if ob.contains(x, 0) {
            return Verdict::fail(Witness::new(vec![("X", ob.prop(x))]));
        }
    }
    Verdict::pass()
}

/// 5(b): membership in `ob(X)` depends only on the intersection with `X`.
pub fn check_5b(ob: &ObFun) -> Verdict {
    for x in ob.universe.contexts() {
        for y in ob.universe.contexts() {
            for z in ob.universe.contexts() {
                if y & x == z & x && ob.contains(x, y) != ob.contains(x, z) {
                    return Verdict::fail(Witness::new(vec![
                        ("X", ob.prop(x)),
                        ("Y", ob.prop(y)),
                        ("Z", ob.prop(z)),
                    ]));
                }
            }
        }
    }
    Verdict::pass()
}

/// 5(c): each family is closed under pairwise intersection.
pub fn check_5c(ob: &ObFun) -> Verdict {
    for x in ob.universe.contexts() {
        let family = ob.family(x);
        for y in family.iter() {
            for z in family.iter() {
                if !family.contains(y & z) {
                    return Verdict::fail(Witness::new(vec![
                        ("X", ob.prop(x)),
                        ("Y", ob.prop(y)),
                        ("Z", ob.prop(z)),
                    ]));
                }
            }
        }
    }
    Verdict::pass()
}

/// Ascending subsets of `mask`, including `0` and `mask` itself.
pub(crate) fn subsets_of(mask: u16) -> impl Iterator<Item = u16> + Clone {
    let mut next = Some(0u16);
    core::iter::from_fn(move || {
        let current = next?;
        next = if current == mask {
            None
        } else {
            Some(current.wrapping_sub(mask) & mask)
        };
        Some(current)
    })
}

/// 5(d): an obligation inside a context persists, padded with the new
/// worlds, when the context widens: `Y⊆X⊆Z` and `Y ∈ ob(X)` imply
/// `(Z∖X)∪Y ∈ ob(Z)`.
pub fn check_5d(ob: &ObFun) -> Verdict {
    let full = ob.universe.full_mask();
    for x in ob.universe.contexts() {
        for y in subsets_of(x) {
            if !ob.contains(x, y) {
                continue;
            }
            let outside = full & !x;
            for extra in subsets_of(outside) {
                let z = x | extra;
                if !ob.contains(z, (z & !x) | y) {
                    return Verdict::fail(Witness::new(vec![
                        ("X", ob.prop(x)),
                        ("Y", ob.prop(y)),
                        ("Z", ob.prop(z)),
                    ]));
                }
            }
        }
    }
    Verdict::pass()
}

/// 5(e): an obligation persists into any subcontext it intersects:
/// `Y⊆X`, `Z ∈ ob(X)` and `Y∩Z ≠ ∅` imply `Z ∈ ob(Y)`.
pub fn check_5e(ob: &ObFun) -> Verdict {
    for x in ob.universe.contexts() {
        for y in subsets_of(x) {
            for z in ob.family(x).iter() {
                if y & z != 0 && !ob.contains(y, z) {
                    return Verdict::fail(Witness::new(vec![
                        ("X", ob.prop(x)),
                        ("Y", ob.prop(y)),
                        ("Z", ob.prop(z)),
                    ]));
                }
            }
        }
    }
    Verdict::pass()
}

/// Run the selected conditions in canonical order 5(a), ..., 5(e).
/// Duplicates in the selection are ignored.
pub fn check_all(
    ob: &ObFun,
    selection: &[Condition],
    nonempty_only: bool,
) -> Vec<(Condition, Verdict)> {
    Condition::ALL
        .into_iter()
        .filter(|c| selection.contains(c))
        .map(|c| (c, check_condition(ob, c, nonempty_only)))
        .collect()
}

/// Check a single condition.
pub fn check_condition(ob: &ObFun, condition: Condition, nonempty_only: bool) -> Verdict {
    match condition {
        Condition::FiveA => check_5a(ob, nonempty_only),
        Condition::FiveB => check_5b(ob),
        Condition::FiveC => check_5c(ob),
        Condition::FiveD => check_5d(ob),
        Condition::FiveE => check_5e(ob),
    }
}

/// Plugin slot for user-supplied pointwise conditions over
/// `(X, ob(X))` — e.g. variants of (c*) whose published text is not
/// fixed here. The first context where the predicate fails becomes the
/// witness.
pub fn check_custom<P>(ob: &ObFun, predicate: P) -> Verdict
where
    P: Fn(&Prop, &FamilySet) -> bool,
{
    for x in ob.universe.contexts() {
        if !predicate(&ob.prop(x), ob.family(x)) {
            return Verdict::fail(Witness::new(vec![("X", ob.prop(x))]));
        }
    }
    Verdict::pass()
}

/// Evaluate one instance of a condition at the tuple a witness binds.
///
/// Returns `None` when the witness lacks a required binding or is built
/// over a different universe. A witness produced by a failing check
/// always evaluates to `Some(false)`.
pub fn condition_holds_at(ob: &ObFun, condition: Condition, witness: &Witness) -> Option<bool> {
    let get = |name: &str| -> Option<u16> {
        let p = witness.get(name)?;
        if Arc::ptr_eq(p.universe(), &ob.universe) || **p.universe() == *ob.universe {
            Some(p.mask())
        } else {
            None
        }
    };
    let x = get("X")?;
    match condition {
        Condition::FiveA => Some(!ob.contains(x, 0)),
        Condition::FiveB => {
            let (y, z) = (get("Y")?, get("Z")?);
            Some(y & x != z & x || ob.contains(x, y) == ob.contains(x, z))
        }
        Condition::FiveC => {
            let (y, z) = (get("Y")?, get("Z")?);
            Some(!(ob.contains(x, y) && ob.contains(x, z)) || ob.contains(x, y & z))
        }
        Condition::FiveD => {
            let (y, z) = (get("Y")?, get("Z")?);
            let applies = y & !x == 0 && x & !z == 0 && ob.contains(x, y);
            Some(!applies || ob.contains(z, (z & !x) | y))
        }
        Condition::FiveE => {
            let (y, z) = (get("Y")?, get("Z")?);
            let applies = y & !x == 0 && ob.contains(x, z) && y & z != 0;
            Some(!applies || ob.contains(y, z))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideality::{ob_cap, ob_sup, IdealFun};
    use crate::model::WorldSet;

    fn universe(n: usize) -> Arc<WorldSet> {
        Arc::new(WorldSet::indexed(n).unwrap())
    }

    /// F = argmin of the strict ranking 0 < 1 < ... over each context.
    fn argmin_f(w: &Arc<WorldSet>) -> IdealFun {
        let ranking: Vec<usize> = (0..w.world_count()).collect();
        IdealFun::from_ranking(w, &ranking).unwrap()
    }

    fn masks(witness: &Witness, names: &[&str]) -> Vec<u16> {
        names.iter().map(|n| witness.get(n).unwrap().mask()).collect()
    }

    #[test]
    fn subsets_ascend() {
        let got: Vec<u16> = subsets_of(0b101).collect();
        assert_eq!(got, vec![0b000, 0b001, 0b100, 0b101]);
        assert_eq!(subsets_of(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn family_set_basics() {
        let mut fam = FamilySet::empty(3);
        assert!(fam.is_empty());
        fam.insert(0b101);
        fam.insert(0b001);
        assert_eq!(fam.iter().collect::<Vec<_>>(), vec![0b001, 0b101]);
        assert_eq!(fam.len(), 2);
        assert!(fam.contains(0b101) && !fam.contains(0b100));
        assert_eq!(FamilySet::full(3).len(), 8);
    }

    #[test]
    fn five_a_flags_only_the_impossible_context_for_sup_of_argmin() {
        let w = universe(3);
        let ob = ob_sup(&argmin_f(&w));
        assert!(check_5a(&ob, true).holds());
        // F(∅) = ∅ puts ∅ ∈ ob(∅): the corner case of the impossible context.
        let v = check_5a(&ob, false);
        assert!(!v.holds());
        assert_eq!(masks(v.witness().unwrap(), &["X"]), vec![0]);
    }

    #[test]
    fn five_a_on_empty_and_full_tables() {
        let w = universe(2);
        assert!(check_5a(&ObFun::new_empty(&w), false).holds());
        let mut ob = ObFun::new_empty(&w);
        ob.insert(0b11, 0);
        let v = check_5a(&ob, true);
        assert!(!v.holds());
        assert_eq!(masks(v.witness().unwrap(), &["X"]), vec![0b11]);
    }

    #[test]
    fn five_b_holds_for_sup_of_argmin() {
        let w = universe(3);
        assert!(check_5b(&ob_sup(&argmin_f(&w))).holds());
        assert!(check_5b(&ob_cap(&argmin_f(&w))).holds());
    }

    #[test]
    fn five_b_violation_witness_is_lex_least() {
        let w = universe(2);
        let mut ob = ObFun::new_empty(&w);
        // ob({0}) = {{0}}; {0,1} has the same intersection with {0} but is absent.
        ob.insert(0b01, 0b01);
        let v = check_5b(&ob);
        assert!(!v.holds());
        assert_eq!(masks(v.witness().unwrap(), &["X", "Y", "Z"]), vec![0b01, 0b01, 0b11]);
        assert_eq!(condition_holds_at(&ob, Condition::FiveB, v.witness().unwrap()), Some(false));
    }

    #[test]
    fn five_b_holds_on_full_table() {
        let w = universe(2);
        assert!(check_5b(&ObFun::new_full(&w)).holds());
    }

    #[test]
    fn five_c_holds_for_cap_and_principal_filters() {
        let w = universe(3);
        assert!(check_5c(&ob_cap(&argmin_f(&w))).holds());
        // A principal filter is intersection-closed.
        assert!(check_5c(&ob_sup(&argmin_f(&w))).holds());
    }

    #[test]
    fn five_c_violation() {
        let w = universe(2);
        let mut ob = ObFun::new_empty(&w);
        ob.insert(0b11, 0b01);
        ob.insert(0b11, 0b10);
        let v = check_5c(&ob);
        assert!(!v.holds());
        assert_eq!(masks(v.witness().unwrap(), &["X", "Y", "Z"]), vec![0b11, 0b01, 0b10]);
        assert_eq!(condition_holds_at(&ob, Condition::FiveC, v.witness().unwrap()), Some(false));
    }

    #[test]
    fn five_d_holds_for_sup_of_argmin_and_full_table() {
        let w = universe(3);
        assert!(check_5d(&ob_sup(&argmin_f(&w))).holds());
        assert!(check_5d(&ObFun::new_full(&w)).holds());
    }

    #[test]
    fn five_d_fails_for_cap_of_argmin() {
        let w = universe(3);
        let ob = ob_cap(&argmin_f(&w));
        let v = check_5d(&ob);
        assert!(!v.holds());
        // Lex-least violating triple: X=∅, Y=∅ (∅ ∈ ob(∅) since F(∅)=∅),
        // Z={0,1} where Z ∉ ob(Z) because F(Z)={0} ≠ Z.
        assert_eq!(masks(v.witness().unwrap(), &["X", "Y", "Z"]), vec![0b000, 0b000, 0b011]);
        assert_eq!(condition_holds_at(&ob, Condition::FiveD, v.witness().unwrap()), Some(false));
    }

    #[test]
    fn five_e_holds_for_cap_of_argmin() {
        let w = universe(3);
        assert!(check_5e(&ob_cap(&argmin_f(&w))).holds());
        assert!(check_5e(&ObFun::new_empty(&w)).holds());
    }

    #[test]
    fn five_e_fails_for_sup_of_argmin() {
        let w = universe(3);
        let ob = ob_sup(&argmin_f(&w));
        let v = check_5e(&ob);
        assert!(!v.holds());
        // X=W, Y={1,2}, Z={0,2}: Z ⊇ F(W)={0}, Y∩Z={2} ≠ ∅, but Z ⊉ F(Y)={1}.
        assert_eq!(masks(v.witness().unwrap(), &["X", "Y", "Z"]), vec![0b111, 0b110, 0b101]);
        assert_eq!(condition_holds_at(&ob, Condition::FiveE, v.witness().unwrap()), Some(false));
    }

    #[test]
    fn check_all_runs_in_canonical_order() {
        let w = universe(2);
        let ob = ObFun::new_empty(&w);
        let results = check_all(
            &ob,
            &[Condition::FiveE, Condition::FiveA, Condition::FiveE],
            true,
        );
        let names: Vec<_> = results.iter().map(|(c, _)| *c).collect();
        assert_eq!(names, vec![Condition::FiveA, Condition::FiveE]);
        assert!(results.iter().all(|(_, v)| v.holds()));
    }

    #[test]
    fn empty_table_passes_everything() {
        let w = universe(3);
        let ob = ObFun::new_empty(&w);
        for c in Condition::ALL {
            assert!(check_condition(&ob, c, true).holds(), "{c}");
        }
    }

    #[test]
    fn custom_condition_slot() {
        let w = universe(2);
        let mut ob = ObFun::new_empty(&w);
        ob.insert(0b01, 0b11);
        // Every obligatory proposition must intersect its context.
        let v = check_custom(&ob, |x, family| {
            family.iter().all(|y| y & x.mask() != 0 || x.mask() == 0)
        });
        assert!(v.holds());
        ob.insert(0b01, 0b10);
        let v = check_custom(&ob, |x, family| {
            family.iter().all(|y| y & x.mask() != 0 || x.mask() == 0)
        });
        assert!(!v.holds());
        assert_eq!(v.witness().unwrap().get("X").unwrap().mask(), 0b01);
    }

    #[test]
    fn condition_codes_round_trip() {
        for c in Condition::ALL {
            assert_eq!(Condition::from_code(c.code()), Some(c));
        }
        assert_eq!(Condition::from_code("5f"), None);
    }
}
