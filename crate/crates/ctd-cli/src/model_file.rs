//! The model file format: JSON carrying a universe, a valuation, and one
//! of an ideality table, a score table, or an explicit obligation table.
//!
//! Context keys are the context's world labels sorted lexicographically
//! and joined with commas; the empty string denotes the empty context.
//! Keys must be canonical on input. An `F` or `ob` map may omit only the
//! empty context (it defaults to `∅` / the empty family); every nonempty
//! context must be listed explicitly.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use ctd_core::ideality::{Construction, IdealFun};
use ctd_core::model::{Valuation, WorldSet};
use ctd_core::obstruct::ObFun;

/// A model-file problem, with enough location to fix it. Always exit
/// code 2 territory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadError(pub String);

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for LoadError {}

fn err<T>(message: String) -> Result<T, LoadError> {
    Err(LoadError(message))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    worlds: Vec<String>,
    #[serde(default)]
    valuation: BTreeMap<String, Vec<String>>,
    #[serde(default, rename = "F")]
    f: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default)]
    scores: Option<BTreeMap<String, f64>>,
    #[serde(default)]
    ob: Option<BTreeMap<String, Vec<Vec<String>>>>,
    #[serde(default)]
    options: Option<RawOptions>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    #[serde(default)]
    construction: Option<String>,
}

/// Where the obligation table comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum ObSource {
    /// An explicit ideality table plus a construction.
    FTable {
        f: IdealFun,
        construction: Construction,
    },
    /// Numeric scores (lower is better); `F` is the tie-inclusive argmin
    /// within each context.
    Scores {
        scores: Vec<f64>,
        f: IdealFun,
        construction: Construction,
    },
    /// An explicit obligation table.
    Explicit(ObFun),
}

/// A validated model: universe, valuation, and an obligation source.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedModel {
    pub universe: Arc<WorldSet>,
    pub valuation: Valuation,
    pub source: ObSource,
}

/// Canonical file key for a context mask.
pub fn context_key(universe: &WorldSet, mask: u16) -> String {
    let mut labels: Vec<&str> = (0..universe.world_count())
        .filter(|&i| mask & (1 << i) != 0)
        .map(|i| universe.label(i))
        .collect();
    labels.sort_unstable();
    labels.join(",")
}

fn parse_context_key(universe: &WorldSet, key: &str) -> Result<u16, LoadError> {
    if key.is_empty() {
        return Ok(0);
    }
    let mut mask = 0u16;
    for label in key.split(',') {
        match universe.index_of(label) {
            Some(i) => {
                if mask & (1 << i) != 0 {
                    return err(format!("context key '{}': duplicate label '{}'", key, label));
                }
                mask |= 1 << i;
            }
            None => return err(format!("context key '{}': unknown world label '{}'", key, label)),
        }
    }
    let canonical = context_key(universe, mask);
    if canonical != key {
        return err(format!(
            "context key '{}' is not canonical (expected '{}')",
            key, canonical
        ));
    }
    Ok(mask)
}

fn member_mask(
    universe: &WorldSet,
    labels: &[String],
    location: &str,
) -> Result<u16, LoadError> {
    let mut mask = 0u16;
    for label in labels {
        match universe.index_of(label) {
            Some(i) => {
                if mask & (1 << i) != 0 {
                    return err(format!("{}: duplicate world label '{}'", location, label));
                }
                mask |= 1 << i;
            }
            None => return err(format!("{}: unknown world label '{}'", location, label)),
        }
    }
    Ok(mask)
}

fn parse_construction(options: &Option<RawOptions>) -> Result<Option<Construction>, LoadError> {
    match options.as_ref().and_then(|o| o.construction.as_deref()) {
        None => Ok(None),
        Some(code) => match Construction::from_code(code) {
            Some(c) => Ok(Some(c)),
            None => err(format!(
                "options.construction: '{}' is not a construction (expected 'sup' or 'cap')",
                code
            )),
        },
    }
}

impl LoadedModel {
    /// Parse and validate a model file.
    pub fn from_json(text: &str) -> Result<Self, LoadError> {
        let raw: RawModel = serde_json::from_str(text)
            .map_err(|e| LoadError(format!("invalid model file: {}", e)))?;
        let universe = Arc::new(
            WorldSet::new(raw.worlds).map_err(|e| LoadError(format!("worlds: {}", e)))?,
        );

        let mut valuation = Valuation::new(&universe);
        for (atom, labels) in &raw.valuation {
            let location = format!("valuation['{}']", atom);
            let mask = member_mask(&universe, labels, &location)?;
            let prop = universe.prop(mask).expect("mask in range");
            valuation
                .insert(atom, &prop)
                .map_err(|e| LoadError(format!("{}: {}", location, e)))?;
        }

        let construction = parse_construction(&raw.options)?;
        let sources = usize::from(raw.f.is_some())
            + usize::from(raw.scores.is_some())
            + usize::from(raw.ob.is_some());
        if sources != 1 {
            return err(format!(
                "exactly one of 'F', 'scores' or 'ob' must be given ({} found)",
                sources
            ));
        }

        let source = if let Some(table) = &raw.f {
            let construction = construction
                .ok_or_else(|| LoadError("options.construction: required with 'F'".into()))?;
            let mut f = IdealFun::new_empty(&universe);
            let mut seen = vec![false; universe.context_count()];
            for (key, labels) in table {
                let ctx = parse_context_key(&universe, key)?;
                let location = format!("F['{}']", key);
                f.set(ctx, member_mask(&universe, labels, &location)?);
                seen[ctx as usize] = true;
            }
            for ctx in universe.contexts() {
                if ctx != 0 && !seen[ctx as usize] {
                    return err(format!(
                        "F: missing context key '{}' (all nonempty contexts must be explicit)",
                        context_key(&universe, ctx)
                    ));
                }
            }
            ObSource::FTable { f, construction }
        } else if let Some(table) = &raw.scores {
            let construction = construction
                .ok_or_else(|| LoadError("options.construction: required with 'scores'".into()))?;
            for label in table.keys() {
                if universe.index_of(label).is_none() {
                    return err(format!("scores['{}']: unknown world label", label));
                }
            }
            let scores = universe
                .labels()
                .iter()
                .map(|label| {
                    table.get(label).copied().ok_or_else(|| {
                        LoadError(format!("scores: missing score for world '{}'", label))
                    })
                })
                .collect::<Result<Vec<f64>, _>>()?;
            if let Some(bad) = scores.iter().find(|s| !s.is_finite()) {
                return err(format!("scores: non-finite score {}", bad));
            }
            let f = IdealFun::from_scores(&universe, &scores)
                .map_err(|e| LoadError(format!("scores: {}", e)))?;
            ObSource::Scores {
                scores,
                f,
                construction,
            }
        } else {
            if construction.is_some() {
                return err(
                    "options.construction: not allowed with an explicit 'ob' table".into(),
                );
            }
            let table = raw.ob.as_ref().expect("counted above");
            let mut ob = ObFun::new_empty(&universe);
            let mut seen = vec![false; universe.context_count()];
            for (key, families) in table {
                let ctx = parse_context_key(&universe, key)?;
                seen[ctx as usize] = true;
                for (i, labels) in families.iter().enumerate() {
                    let location = format!("ob['{}'][{}]", key, i);
                    let mask = member_mask(&universe, labels, &location)?;
                    if ob.contains(ctx, mask) {
                        return err(format!("{}: duplicate family member", location));
                    }
                    ob.insert(ctx, mask);
                }
            }
            for ctx in universe.contexts() {
                if ctx != 0 && !seen[ctx as usize] {
                    return err(format!(
                        "ob: missing context key '{}' (all nonempty contexts must be explicit)",
                        context_key(&universe, ctx)
                    ));
                }
            }
            ObSource::Explicit(ob)
        };

        Ok(LoadedModel {
            universe,
            valuation,
            source,
        })
    }

    /// The ideality function, when the model declares one.
    pub fn ideal(&self) -> Option<&IdealFun> {
        match &self.source {
            ObSource::FTable { f, .. } | ObSource::Scores { f, .. } => Some(f),
            ObSource::Explicit(_) => None,
        }
    }

    pub fn construction(&self) -> Option<Construction> {
        match &self.source {
            ObSource::FTable { construction, .. } | ObSource::Scores { construction, .. } => {
                Some(*construction)
            }
            ObSource::Explicit(_) => None,
        }
    }

    /// Materialize the obligation table (constructing from `F` if needed).
    pub fn ob(&self) -> ObFun {
        match &self.source {
            ObSource::FTable { f, construction } | ObSource::Scores { f, construction, .. } => {
                construction.apply(f)
            }
            ObSource::Explicit(ob) => ob.clone(),
        }
    }

    fn labels_value(&self, mask: u16) -> Value {
        Value::Array(
            (0..self.universe.world_count())
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| Value::String(self.universe.label(i).into()))
                .collect(),
        )
    }

    /// Canonical serialization: sorted object keys, canonical context
    /// keys (all contexts explicit), member lists in world-index order.
    pub fn canonical_json(&self) -> String {
        let mut root = Map::new();
        root.insert(
            "worlds".into(),
            Value::Array(
                self.universe
                    .labels()
                    .iter()
                    .map(|l| Value::String(l.clone()))
                    .collect(),
            ),
        );
        let mut valuation = Map::new();
        for (atom, prop) in self.valuation.atoms() {
            valuation.insert(atom.into(), self.labels_value(prop.mask()));
        }
        root.insert("valuation".into(), Value::Object(valuation));
        match &self.source {
            ObSource::FTable { f, construction } => {
                let mut table = Map::new();
                for ctx in self.universe.contexts() {
                    table.insert(
                        context_key(&self.universe, ctx),
                        self.labels_value(f.get(ctx)),
                    );
                }
                root.insert("F".into(), Value::Object(table));
                root.insert("options".into(), json!({ "construction": construction.code() }));
            }
            ObSource::Scores {
                scores,
                construction,
                ..
            } => {
                let mut table = Map::new();
                for (i, score) in scores.iter().enumerate() {
                    table.insert(self.universe.label(i).into(), json!(score));
                }
                root.insert("scores".into(), Value::Object(table));
                root.insert("options".into(), json!({ "construction": construction.code() }));
            }
            ObSource::Explicit(ob) => {
                let mut table = Map::new();
                for ctx in self.universe.contexts() {
                    let members: Vec<Value> = ob
                        .family(ctx)
                        .iter()
                        .map(|m| self.labels_value(m))
                        .collect();
                    table.insert(context_key(&self.universe, ctx), Value::Array(members));
                }
                root.insert("ob".into(), Value::Object(table));
            }
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(root))
            .expect("serialization cannot fail");
        text.push('\n');
        text
    }
}
