//! Finite-model checking for contrary-to-duty obligation semantics.
//!
//! Everything operates on explicit tables over a universe of at most 16
//! worlds, so propositions are bitmasks, families of propositions are
//! bitsets over the powerset, and all condition checks are exhaustive
//! sweeps. The crate is `no_std` (with `alloc`); IO, file formats and the
//! command-line front end live in the companion `ctd-cli` crate.
//!
//! The pieces:
//!
//! * [`model`] — universes, propositions, a small propositional language
//!   with a parser, and the mutual-genericity test.
//! * [`obstruct`] — obligation functions `ob : P(W) -> P(P(W))` and the
//!   Carmo–Jones conditions 5(a)–(e) as checkable predicates.
//! * [`ideality`] — ideality functions `F : P(W) -> P(W)`, their axioms,
//!   the (sup)/(cap) constructions of `ob` from `F`, derived preference
//!   orders, and the conditional operator `O(B|A)`.
//! * [`derive`] — a forward-closure engine over obligation facts using
//!   5(b)/5(d)/5(e) as inference rules, with derivation traces, and the
//!   replay of the conflict derivation they license.
//! * [`search`] — exhaustive and sampled sweeps over ideality functions:
//!   theorem verification suites and counterexample miners.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod derive;
pub mod ideality;
pub mod model;
pub mod obstruct;
pub mod search;
pub mod verdict;

pub use ideality::{Construction, IdealFun, PrefRelation};
pub use model::{Formula, Prop, Valuation, WorldSet};
pub use obstruct::{Condition, ObFun};
pub use verdict::{Verdict, Witness};
