//! Bundled demo models.

use crate::model_file::LoadedModel;

/// The Prisoners' Dilemma as a scored model. Worlds are named by my
/// choice then the other prisoner's (C cooperate, D defect); scores are
/// my prison terms under the classical payoffs — fixture data chosen
/// here, not taken from anywhere. Ideal worlds of a context are those
/// with the smallest term, so `F` rewards my defection.
pub const PRISONERS_DILEMMA: &str = r#"{
    "worlds": ["CC", "CD", "DC", "DD"],
    "valuation": {
        "C_me":    ["CC", "CD"],
        "D_me":    ["DC", "DD"],
        "C_other": ["CC", "DC"],
        "D_other": ["CD", "DD"],
        "Same":    ["CC", "DD"]
    },
    "scores": {"CC": 1, "CD": 3, "DC": 0, "DD": 2},
    "options": {"construction": "sup"}
}"#;

pub fn prisoners_dilemma() -> LoadedModel {
    LoadedModel::from_json(PRISONERS_DILEMMA).expect("bundled fixture is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use ctd_core::ideality::Construction;

    #[test]
    fn fixture_loads() {
        let model = prisoners_dilemma();
        assert_eq!(model.universe.world_count(), 4);
        assert_eq!(model.construction(), Some(Construction::Sup));
        let f = model.ideal().unwrap();
        // Defecting against a defector is the best available world.
        let d_other = model.valuation.get("D_other").unwrap();
        assert_eq!(f.get(d_other.mask()), 0b1000); // {DD}
        assert_eq!(f.get(model.universe.full_mask()), 0b0100); // {DC}
    }

    #[test]
    fn fixture_round_trips() {
        let model = prisoners_dilemma();
        let reloaded = LoadedModel::from_json(&model.canonical_json()).unwrap();
        assert_eq!(reloaded, model);
    }
}
