//! Check outcomes: a verdict either holds or carries a witness
//! instantiating the violated condition's quantifiers.

use alloc::vec::Vec;
use core::fmt;

use crate::model::Prop;

/// Named instantiation of a condition's quantified variables.
///
/// Names are fixed per condition (`"X"`, `"Y"`, `"Z"` for the obligation
/// conditions; region names for genericity failures), so a witness can be
/// substituted back into the condition it violated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    bindings: Vec<(&'static str, Prop)>,
}

impl Witness {
    pub fn new(bindings: Vec<(&'static str, Prop)>) -> Self {
        Witness { bindings }
    }

    /// The bound proposition for `name`, if present.
    pub fn get(&self, name: &str) -> Option<&Prop> {
        self.bindings
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, p)| p)
    }

    pub fn bindings(&self) -> &[(&'static str, Prop)] {
        &self.bindings
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.bindings.iter().map(|(n, _)| *n)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, prop)) in self.bindings.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}={}", name, prop)?;
        }
        Ok(())
    }
}

/// Result of a condition check: holds, or fails with a witness.
///
/// A witness is present exactly when the verdict does not hold; the
/// constructors enforce this.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    witness: Option<Witness>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { witness: None }
    }

    pub fn fail(witness: Witness) -> Self {
        Verdict {
            witness: Some(witness),
        }
    }

    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "holds"),
            Some(w) => write!(f, "violated: {}", w),
        }
    }
}
