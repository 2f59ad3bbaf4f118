//! Finite universes of worlds, propositions as subsets, and the
//! mutual-genericity test.
//!
//! A universe holds at most 16 labelled worlds, so a proposition is a
//! `u16` bitmask and a family of propositions fits in a `2^n`-bit set.

mod formula;

pub use formula::{extension, parse_formula, EvalError, Formula, ParseError};

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::verdict::{Verdict, Witness};

/// Hard cap on universe size: keeps every proposition a `u16` mask and
/// every family of propositions a `2^16`-bit set.
pub const MAX_WORLDS: usize = 16;

/// Errors from universe, proposition and valuation construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    /// A universe needs at least one world.
    EmptyUniverse,
    /// More than [`MAX_WORLDS`] worlds requested.
    TooManyWorlds(usize),
    /// World labels must be unique.
    DuplicateLabel(String),
    /// A label is empty or contains a reserved character.
    BadLabel(String),
    /// Operands were built over different universes.
    UniverseMismatch,
    /// A bitmask addresses worlds outside the universe.
    MaskOutOfRange { mask: u16, worlds: usize },
    /// A world index is outside the universe.
    WorldOutOfRange { index: usize, worlds: usize },
    /// No world carries this label.
    UnknownLabel(String),
    /// Atom names must be identifiers other than `T` and `F`.
    BadAtomName(String),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::EmptyUniverse => write!(f, "universe must contain at least one world"),
            ModelError::TooManyWorlds(n) => {
                write!(f, "{} worlds requested, at most {} supported", n, MAX_WORLDS)
            }
            ModelError::DuplicateLabel(l) => write!(f, "duplicate world label '{}'", l),
            ModelError::BadLabel(l) => write!(
                f,
                "bad world label '{}': labels are nonempty and contain no whitespace, ',', '{{' or '}}'",
                l
            ),
            ModelError::UniverseMismatch => write!(f, "universe mismatch"),
            ModelError::MaskOutOfRange { mask, worlds } => {
                write!(f, "mask {:#x} out of range for a {}-world universe", mask, worlds)
            }
            ModelError::WorldOutOfRange { index, worlds } => {
                write!(f, "world index {} out of range for a {}-world universe", index, worlds)
            }
            ModelError::UnknownLabel(l) => write!(f, "unknown world label '{}'", l),
            ModelError::BadAtomName(n) => write!(
                f,
                "bad atom name '{}': atoms are identifiers and must not be 'T' or 'F'",
                n
            ),
        }
    }
}

impl core::error::Error for ModelError {}

/// A finite universe of labelled worlds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorldSet {
    labels: Vec<String>,
}

fn label_ok(label: &str) -> bool {
    !label.is_empty()
        && label
            .chars()
            .all(|c| !c.is_whitespace() && c != ',' && c != '{' && c != '}')
}

impl WorldSet {
    /// Build a universe from distinct world labels (1 to 16 of them).
    pub fn new(labels: Vec<String>) -> Result<Self, ModelError> {
        if labels.is_empty() {
            return Err(ModelError::EmptyUniverse);
        }
        if labels.len() > MAX_WORLDS {
            return Err(ModelError::TooManyWorlds(labels.len()));
        }
        for (i, label) in labels.iter().enumerate() {
            if !label_ok(label) {
                return Err(ModelError::BadLabel(label.clone()));
            }
            if labels[..i].contains(label) {
                return Err(ModelError::DuplicateLabel(label.clone()));
            }
        }
        Ok(WorldSet { labels })
    }

    /// Universe with worlds labelled by their indices `"0"`, `"1"`, ...
    pub fn indexed(n: usize) -> Result<Self, ModelError> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        WorldSet::new(labels)
    }

    /// Number of worlds.
    pub fn world_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of contexts, `2^n`.
    pub fn context_count(&self) -> usize {
        1usize << self.labels.len()
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Mask with every world set.
    pub fn full_mask(&self) -> u16 {
        (((1u32) << self.labels.len()) - 1) as u16
    }

    /// All context masks in ascending order.
    pub fn contexts(&self) -> impl Iterator<Item = u16> + Clone {
        (0..(1u32 << self.labels.len())).map(|m| m as u16)
    }

    /// Render a bare mask as `{a,b}` using this universe's labels.
    pub fn render_mask(&self, mask: u16) -> String {
        let mut out = String::from("{");
        let mut first = true;
        for i in 0..self.labels.len() {
            if mask & (1 << i) != 0 {
                if !first {
                    out.push(',');
                }
                out.push_str(&self.labels[i]);
                first = false;
            }
        }
        out.push('}');
        out
    }

    /// Proposition from a raw bitmask.
    pub fn prop(self: &Arc<Self>, mask: u16) -> Result<Prop, ModelError> {
        if u32::from(mask) >= (1u32 << self.labels.len()) {
            return Err(ModelError::MaskOutOfRange {
                mask,
                worlds: self.labels.len(),
            });
        }
        Ok(Prop {
            universe: Arc::clone(self),
            mask,
        })
    }

    /// Proposition from world indices.
    pub fn prop_from_worlds(self: &Arc<Self>, indices: &[usize]) -> Result<Prop, ModelError> {
        let mut mask = 0u16;
        for &i in indices {
            if i >= self.labels.len() {
                return Err(ModelError::WorldOutOfRange {
                    index: i,
                    worlds: self.labels.len(),
                });
            }
            mask |= 1 << i;
        }
        self.prop(mask)
    }

    /// Proposition from world labels.
    pub fn prop_from_labels(self: &Arc<Self>, labels: &[&str]) -> Result<Prop, ModelError> {
        let mut mask = 0u16;
        for label in labels {
            match self.index_of(label) {
                Some(i) => mask |= 1 << i,
                None => return Err(ModelError::UnknownLabel((*label).to_string())),
            }
        }
        self.prop(mask)
    }

    /// The empty proposition.
    pub fn empty(self: &Arc<Self>) -> Prop {
        Prop {
            universe: Arc::clone(self),
            mask: 0,
        }
    }

    /// The full proposition (all worlds).
    pub fn full(self: &Arc<Self>) -> Prop {
        Prop {
            universe: Arc::clone(self),
            mask: self.full_mask(),
        }
    }
}

/// A proposition: a subset of the worlds of one universe.
///
/// Equality is extensional — two propositions over equal universes with
/// equal member sets are equal.
#[derive(Debug, Clone)]
pub struct Prop {
    universe: Arc<WorldSet>,
    mask: u16,
}

impl Prop {
    pub fn universe(&self) -> &Arc<WorldSet> {
        &self.universe
    }

    pub fn mask(&self) -> u16 {
        self.mask
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn member_count(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn contains(&self, world: usize) -> bool {
        world < self.universe.world_count() && self.mask & (1 << world) != 0
    }

    pub fn same_universe(&self, other: &Prop) -> bool {
        Arc::ptr_eq(&self.universe, &other.universe) || *self.universe == *other.universe
    }

    fn check_universe(&self, other: &Prop) {
        assert!(
            self.same_universe(other),
            "propositions built over different universes"
        );
    }

    pub fn complement(&self) -> Prop {
        Prop {
            universe: Arc::clone(&self.universe),
            mask: !self.mask & self.universe.full_mask(),
        }
    }

    pub fn union(&self, other: &Prop) -> Prop {
        self.check_universe(other);
        Prop {
            universe: Arc::clone(&self.universe),
            mask: self.mask | other.mask,
        }
    }

    pub fn intersect(&self, other: &Prop) -> Prop {
        self.check_universe(other);
        Prop {
            universe: Arc::clone(&self.universe),
            mask: self.mask & other.mask,
        }
    }

    pub fn minus(&self, other: &Prop) -> Prop {
        self.check_universe(other);
        Prop {
            universe: Arc::clone(&self.universe),
            mask: self.mask & !other.mask,
        }
    }

    pub fn is_subset_of(&self, other: &Prop) -> bool {
        self.check_universe(other);
        self.mask & !other.mask == 0
    }

    /// World indices in ascending order.
    pub fn worlds(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe.world_count()).filter(move |i| self.mask & (1 << i) != 0)
    }

    /// World labels in index order.
    pub fn labels(&self) -> Vec<&str> {
        self.worlds().map(|i| self.universe.label(i)).collect()
    }
}

impl PartialEq for Prop {
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask && self.same_universe(other)
    }
}

impl Eq for Prop {}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.universe.render_mask(self.mask))
    }
}

/// Whether `name` may be used as an atom: an ASCII identifier other than
/// the constants `T` and `F`.
pub fn is_valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    let head_ok = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    head_ok
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "T"
        && name != "F"
}

/// Assignment of propositions to atom names, all over one universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    universe: Arc<WorldSet>,
    bindings: BTreeMap<String, u16>,
}

impl Valuation {
    pub fn new(universe: &Arc<WorldSet>) -> Self {
        Valuation {
            universe: Arc::clone(universe),
            bindings: BTreeMap::new(),
        }
    }

    pub fn universe(&self) -> &Arc<WorldSet> {
        &self.universe
    }

    /// Bind `name` to `prop`; replaces any previous binding.
    pub fn insert(&mut self, name: &str, prop: &Prop) -> Result<(), ModelError> {
        if !is_valid_atom_name(name) {
            return Err(ModelError::BadAtomName(name.to_string()));
        }
        if !(Arc::ptr_eq(&self.universe, prop.universe()) || *self.universe == **prop.universe()) {
            return Err(ModelError::UniverseMismatch);
        }
        self.bindings.insert(name.to_string(), prop.mask());
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<Prop> {
        self.bindings.get(name).map(|&mask| Prop {
            universe: Arc::clone(&self.universe),
            mask,
        })
    }

    /// Bound atoms in name order.
    pub fn atoms(&self) -> impl Iterator<Item = (&str, Prop)> + '_ {
        self.bindings.iter().map(|(name, &mask)| {
            (
                name.as_str(),
                Prop {
                    universe: Arc::clone(&self.universe),
                    mask,
                },
            )
        })
    }
}

/// The four boolean regions of a pair of propositions, in canonical order.
pub const GENERIC_REGIONS: [&str; 4] = ["X∩Y", "X∖Y", "Y∖X", "W∖(X∪Y)"];

/// Two propositions are mutually generic (in general position) when all
/// four regions `X∩Y`, `X∖Y`, `Y∖X`, `W∖(X∪Y)` are nonempty.
///
/// On failure the witness binds every empty region (to the empty
/// proposition), in canonical region order.
pub fn mutually_generic(x: &Prop, y: &Prop) -> Result<Verdict, ModelError> {
    if !x.same_universe(y) {
        return Err(ModelError::UniverseMismatch);
    }
    let regions = [
        x.intersect(y),
        x.minus(y),
        y.minus(x),
        x.union(y).complement(),
    ];
    let empty: Vec<(&'static str, Prop)> = GENERIC_REGIONS
        .iter()
        .zip(regions)
        .filter(|(_, r)| r.is_empty())
        .map(|(name, r)| (*name, r))
        .collect();
    if empty.is_empty() {
        Ok(Verdict::pass())
    } else {
        Ok(Verdict::fail(Witness::new(empty)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn universe(n: usize) -> Arc<WorldSet> {
        Arc::new(WorldSet::indexed(n).unwrap())
    }

    #[test]
    fn world_set_validation() {
        assert_eq!(WorldSet::new(Vec::new()), Err(ModelError::EmptyUniverse));
        assert_eq!(
            WorldSet::indexed(17),
            Err(ModelError::TooManyWorlds(17))
        );
        let dup = WorldSet::new(vec!["a".into(), "a".into()]);
        assert_eq!(dup, Err(ModelError::DuplicateLabel("a".into())));
        let bad = WorldSet::new(vec!["a,b".into()]);
        assert_eq!(bad, Err(ModelError::BadLabel("a,b".into())));
        let ok = WorldSet::new(vec!["CC".into(), "CD".into()]).unwrap();
        assert_eq!(ok.world_count(), 2);
        assert_eq!(ok.full_mask(), 0b11);
        assert_eq!(WorldSet::indexed(16).unwrap().full_mask(), 0xffff);
    }

    #[test]
    fn prop_construction_and_ops() {
        let w = universe(4);
        let a = w.prop_from_worlds(&[2, 3]).unwrap();
        let b = w.prop_from_worlds(&[1, 3]).unwrap();
        assert_eq!(a.mask(), 0b1100);
        assert_eq!(a.intersect(&b).mask(), 0b1000);
        assert_eq!(a.union(&b).mask(), 0b1110);
        assert_eq!(a.minus(&b).mask(), 0b0100);
        assert_eq!(a.complement().mask(), 0b0011);
        assert!(a.intersect(&b).is_subset_of(&a));
        assert!(w.prop(0b10000).is_err());
        assert_eq!(alloc::format!("{}", a), "{2,3}");
        assert_eq!(alloc::format!("{}", w.empty()), "{}");
    }

    #[test]
    fn prop_equality_is_extensional() {
        let w1 = universe(3);
        let w2 = universe(3);
        // Distinct allocations of an equal universe compare equal.
        assert_eq!(w1.prop(0b101).unwrap(), w2.prop(0b101).unwrap());
        assert_ne!(w1.prop(0b101).unwrap(), w1.prop(0b001).unwrap());
    }

    #[test]
    fn generic_pair_holds() {
        let w = universe(4);
        let x = w.prop_from_worlds(&[2, 3]).unwrap();
        let y = w.prop_from_worlds(&[1, 3]).unwrap();
        let v = mutually_generic(&x, &y).unwrap();
        assert!(v.holds());
        // Symmetric in X and Y.
        assert!(mutually_generic(&y, &x).unwrap().holds());
    }

    #[test]
    fn identical_sets_fail_on_both_differences() {
        let w = universe(2);
        let x = w.prop_from_worlds(&[1]).unwrap();
        let v = mutually_generic(&x, &x.clone()).unwrap();
        assert!(!v.holds());
        let names: Vec<_> = v.witness().unwrap().names().collect();
        assert_eq!(names, vec!["X∖Y", "Y∖X"]);
    }

    #[test]
    fn covering_union_fails_on_joint_complement() {
        let w = universe(3);
        let x = w.prop_from_worlds(&[0, 1]).unwrap();
        let y = w.prop_from_worlds(&[1, 2]).unwrap();
        let v = mutually_generic(&x, &y).unwrap();
        assert!(!v.holds());
        let names: Vec<_> = v.witness().unwrap().names().collect();
        assert_eq!(names, vec!["W∖(X∪Y)"]);
    }

    #[test]
    fn genericity_needs_at_least_four_worlds() {
        // Pigeonhole: four disjoint nonempty regions need four worlds.
        for n in 1..=3 {
            let w = universe(n);
            for xm in w.contexts() {
                for ym in w.contexts() {
                    let x = w.prop(xm).unwrap();
                    let y = w.prop(ym).unwrap();
                    assert!(!mutually_generic(&x, &y).unwrap().holds());
                }
            }
        }
    }

    #[test]
    fn genericity_rejects_universe_mismatch() {
        let w3 = universe(3);
        let w4 = universe(4);
        let x = w3.prop(0b1).unwrap();
        let y = w4.prop(0b1).unwrap();
        assert_eq!(mutually_generic(&x, &y), Err(ModelError::UniverseMismatch));
    }

    #[test]
    fn valuation_binds_and_rejects() {
        let w = universe(2);
        let other = universe(3);
        let mut v = Valuation::new(&w);
        v.insert("A", &w.prop(0b01).unwrap()).unwrap();
        assert_eq!(v.get("A").unwrap().mask(), 0b01);
        assert_eq!(v.get("B"), None);
        assert_eq!(
            v.insert("T", &w.prop(0).unwrap()),
            Err(ModelError::BadAtomName("T".into()))
        );
        assert_eq!(
            v.insert("1up", &w.prop(0).unwrap()),
            Err(ModelError::BadAtomName("1up".into()))
        );
        assert_eq!(
            v.insert("A", &other.prop(0).unwrap()),
            Err(ModelError::UniverseMismatch)
        );
    }
}
