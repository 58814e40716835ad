//! JSON model files: a group (table or permutation generators), a Galois
//! quotient, the action and character tables, and optional place data.

use serde::{Deserialize, Serialize};

use crate::cohomology::PlaceModel;
use crate::error::{Error, Result};
use crate::gamma::{make_gamma_group, GammaGroup};
use crate::group::{build_group, build_group_from_generators, FiniteGroup, PermutationGroup};
use crate::perm::Perm;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutation_generators: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlaceSpec {
    pub label: String,
    pub q: u64,
    pub decomposition: Vec<usize>,
    pub inertia: Vec<usize>,
    pub tame_generator: usize,
    pub frobenius: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelSpec {
    pub group: GroupSpec,
    pub gamma: GroupSpec,
    /// Per Gamma element: automorphism of the group as an element permutation.
    pub action: Vec<Vec<usize>>,
    /// Per Gamma element: unit mod the group exponent.
    pub chi: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tame: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub places: Vec<PlaceSpec>,
}

/// A loaded model: the Gamma-group, the permutation realization when the
/// group came from generators, and the modeled places.
#[derive(Debug, Clone)]
pub struct Model {
    pub gg: GammaGroup,
    pub group_perms: Option<PermutationGroup>,
    pub places: Vec<PlaceModel>,
}

fn build_from_spec(spec: &GroupSpec) -> Result<(FiniteGroup, Option<PermutationGroup>)> {
    match (&spec.table, &spec.permutation_generators) {
        (Some(table), None) => Ok((build_group(table)?, None)),
        (None, Some(gens)) => {
            let degree = spec.degree.ok_or_else(|| {
                Error::Invalid("permutation_generators requires a degree".into())
            })?;
            let perms: Vec<Perm> = gens
                .iter()
                .map(|text| Perm::parse_cycles(text, degree))
                .collect::<Result<_>>()?;
            let pg = build_group_from_generators(&perms)?;
            Ok((pg.group.clone(), Some(pg)))
        }
        _ => Err(Error::Invalid(
            "group spec needs exactly one of \"table\" or \"permutation_generators\"".into(),
        )),
    }
}

pub fn model_from_spec(spec: &ModelSpec) -> Result<Model> {
    let (group, group_perms) = build_from_spec(&spec.group)?;
    let (gamma, _) = build_from_spec(&spec.gamma)?;
    let mut gg = make_gamma_group(&group, &gamma, &spec.action, &spec.chi)?;
    gg.set_tame(spec.tame.unwrap_or(true));
    let places = spec
        .places
        .iter()
        .map(|p| {
            PlaceModel::new(
                &gamma,
                &p.label,
                p.q,
                p.decomposition.clone(),
                p.inertia.clone(),
                p.tame_generator,
                p.frobenius,
            )
        })
        .collect::<Result<_>>()?;
    Ok(Model {
        gg,
        group_perms,
        places,
    })
}

pub fn parse_model(text: &str) -> Result<Model> {
    let spec: ModelSpec =
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("model JSON: {e}")))?;
    model_from_spec(&spec)
}

pub fn load_model(path: &std::path::Path) -> Result<Model> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("reading {}: {e}", path.display())))?;
    parse_model(&text)
}

/// Serialize a model back out in table form (used when emitting twisted
/// models). The permutation realization is not preserved.
pub fn spec_from_model(model: &Model) -> ModelSpec {
    let group = model.gg.group();
    let gamma = model.gg.gamma();
    let table = |g: &FiniteGroup| -> Vec<Vec<usize>> {
        (0..g.order())
            .map(|a| (0..g.order()).map(|b| g.mul(a, b)).collect())
            .collect()
    };
    ModelSpec {
        group: GroupSpec {
            table: Some(table(group)),
            permutation_generators: None,
            degree: None,
        },
        gamma: GroupSpec {
            table: Some(table(gamma)),
            permutation_generators: None,
            degree: None,
        },
        action: model.gg.act_tables().to_vec(),
        chi: model.gg.chi().to_vec(),
        tame: Some(model.gg.tame()),
        places: model
            .places
            .iter()
            .map(|p| PlaceSpec {
                label: p.label.clone(),
                q: p.q,
                decomposition: p.decomposition.members().to_vec(),
                inertia: p.inertia.members().to_vec(),
                tame_generator: p.tame_generator,
                frobenius: p.frobenius,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MU3: &str = r#"{
        "group": {"table": [[0,1,2],[1,2,0],[2,0,1]]},
        "gamma": {"table": [[0,1],[1,0]]},
        "action": [[0,1,2],[0,2,1]],
        "chi": [1,2],
        "places": [
            {"label": "v5", "q": 5, "decomposition": [0,1], "inertia": [0],
             "tame_generator": 0, "frobenius": 1}
        ]
    }"#;

    #[test]
    fn parse_mu3() {
        let model = parse_model(MU3).unwrap();
        assert_eq!(model.gg.group().order(), 3);
        assert_eq!(model.gg.gamma().order(), 2);
        assert_eq!(model.places.len(), 1);
        assert!(model.group_perms.is_none());
    }

    #[test]
    fn parse_permutation_form() {
        let text = r#"{
            "group": {"permutation_generators": ["(12)(34)", "(123)"], "degree": 4},
            "gamma": {"table": [[0]]},
            "action": [[0,1,2,3,4,5,6,7,8,9,10,11]],
            "chi": [1]
        }"#;
        let model = parse_model(text).unwrap();
        assert_eq!(model.gg.group().order(), 12);
        assert!(model.group_perms.is_some());
    }

    #[test]
    fn round_trip_through_spec() {
        let model = parse_model(MU3).unwrap();
        let spec = spec_from_model(&model);
        let text = serde_json::to_string(&spec).unwrap();
        let again = parse_model(&text).unwrap();
        assert_eq!(again.gg, model.gg);
        assert_eq!(again.places, model.places);
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(parse_model("{").is_err());
        let bad_action = r#"{
            "group": {"table": [[0,1],[1,0]]},
            "gamma": {"table": [[0]]},
            "action": [[1,0,2]],
            "chi": [1]
        }"#;
        assert!(parse_model(bad_action).is_err());
        let missing_degree = r#"{
            "group": {"permutation_generators": ["(12)"]},
            "gamma": {"table": [[0]]},
            "action": [[0,1]],
            "chi": [1]
        }"#;
        assert!(parse_model(missing_degree).is_err());
    }
}
