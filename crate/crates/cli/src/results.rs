//! Result files and their payloads.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sphtrop::colored_fans::{ColoredConeReport, FanReport};
use sphtrop::fan_builder::{irrelevant_monomials, GammaTorus, HatFan, ToricFan};
use sphtrop::qpoly::QVector;
use sphtrop::spherical::{ClosureReport, SphericalTrop};

use crate::json::{matrix_json, vec_json, ComplexJson, ConeJson, VecJson};
use crate::problem::{ColoredConeJson, FanJson};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultFile {
    pub operation: String,
    /// `"ok"` or `"error"`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorJson>,
    #[serde(default)]
    pub warnings: Vec<String>,
    pub payload: serde_json::Value,
    /// For each payload field: `"input"` when it echoes the problem file,
    /// `"computed"` otherwise.
    pub provenance: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorJson {
    pub kind: String,
    pub message: String,
}

impl ResultFile {
    pub fn ok<P: Serialize>(operation: &str, payload: &P, input: &[&str], warnings: Vec<String>) -> Self {
        let payload = serde_json::to_value(payload).expect("payloads serialize");
        let provenance = payload
            .as_object()
            .map(|o| {
                o.keys()
                    .map(|k| {
                        let tag = if input.contains(&k.as_str()) { "input" } else { "computed" };
                        (k.clone(), tag.to_string())
                    })
                    .collect()
            })
            .unwrap_or_default();
        ResultFile {
            operation: operation.into(),
            status: "ok".into(),
            error: None,
            warnings,
            payload,
            provenance,
        }
    }

    pub fn error(operation: &str, kind: &str, message: String) -> Self {
        ResultFile {
            operation: operation.into(),
            status: "error".into(),
            error: Some(ErrorJson {
                kind: kind.into(),
                message,
            }),
            warnings: vec![],
            payload: serde_json::Value::Null,
            provenance: BTreeMap::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeReportJson {
    pub generated: bool,
    pub meets_valuation_cone: bool,
    pub strictly_convex: bool,
    pub colors_nonzero: bool,
    pub valid: bool,
}

impl From<&ColoredConeReport> for ConeReportJson {
    fn from(r: &ColoredConeReport) -> Self {
        ConeReportJson {
            generated: r.generated,
            meets_valuation_cone: r.meets_valuation_cone,
            strictly_convex: r.strictly_convex,
            colors_nonzero: r.colors_nonzero,
            valid: r.is_valid(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverlapJson {
    pub first: usize,
    pub second: usize,
    /// A point of `relint σ₁ ∩ relint σ₂ ∩ 𝒱`.
    pub witness: VecJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidatePayload {
    pub fan: FanJson,
    pub valid: bool,
    pub strictly_convex: bool,
    pub polyhedral: bool,
    /// Two maximal cones whose relative interiors meet, when not polyhedral.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polyhedrality_witness: Option<(usize, usize)>,
    pub cones: Vec<ConeReportJson>,
    pub color_conflicts: Vec<(usize, usize)>,
    pub overlaps: Vec<OverlapJson>,
}

impl ValidatePayload {
    pub fn new(fan: FanJson, report: &FanReport, strictly_convex: bool, witness: Option<(usize, usize)>) -> Self {
        ValidatePayload {
            fan,
            valid: report.is_valid(),
            strictly_convex,
            polyhedral: witness.is_none(),
            polyhedrality_witness: witness,
            cones: report.cones.iter().map(ConeReportJson::from).collect(),
            color_conflicts: report.color_conflicts.clone(),
            overlaps: report
                .overlaps
                .iter()
                .map(|(i, j, w)| OverlapJson {
                    first: *i,
                    second: *j,
                    witness: vec_json(w),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProvenanceJson {
    pub colored_cone: usize,
    /// Basis names of the coordinate rays in `𝔞`.
    pub a: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricConeJson {
    pub id: usize,
    /// Indices into `rays`.
    pub rays: Vec<usize>,
    pub maximal: bool,
    pub provenance: Vec<ProvenanceJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdColoredConeJson {
    pub id: usize,
    pub rays: Vec<VecJson>,
    pub colors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricFanJson {
    pub dim: usize,
    pub basis: Vec<String>,
    pub rays: Vec<VecJson>,
    pub cones: Vec<ToricConeJson>,
    pub colored_cones: Vec<IdColoredConeJson>,
}

impl ToricFanJson {
    pub fn new(z: &ToricFan) -> Self {
        let names = z.layout().basis_names();
        let maximal: Vec<&sphtrop::qpoly::Cone> = z.maximal_cones().iter().collect();
        ToricFanJson {
            dim: z.ambient_dim(),
            basis: names.clone(),
            rays: z.rays().iter().map(vec_json).collect(),
            cones: z
                .cones()
                .iter()
                .enumerate()
                .map(|(id, c)| ToricConeJson {
                    id,
                    rays: z.ray_indices(c),
                    maximal: maximal.contains(&c),
                    provenance: z
                        .provenance(id)
                        .iter()
                        .map(|p| ProvenanceJson {
                            colored_cone: p.colored_cone,
                            a: p.a.iter().map(|&x| names[x].clone()).collect(),
                        })
                        .collect(),
                })
                .collect(),
            colored_cones: z
                .colored_cones()
                .iter()
                .enumerate()
                .map(|(id, c)| {
                    let ColoredConeJson { rays, colors } = crate::problem::colored_cone_json(c);
                    IdColoredConeJson { id, rays, colors }
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HatFanJson {
    pub dim: usize,
    pub variables: Vec<String>,
    pub uncolored_rays: Vec<VecJson>,
    /// Each maximal cone as the indices of the coordinate rays spanning it.
    pub maximal_cones: Vec<Vec<usize>>,
    /// For each maximal cone, the index of the maximal cone of `Σ_Z` below it.
    pub sources: Vec<usize>,
    pub p_star: Vec<VecJson>,
    /// Exponent rows of `Γ` over `variables`.
    pub gamma: Vec<VecJson>,
    /// One squarefree monomial per maximal cone.
    pub irrelevant_monomials: Vec<Vec<u32>>,
}

impl HatFanJson {
    pub fn new(hat: &HatFan, gamma: &GammaTorus) -> Self {
        let d = hat.ambient_dim();
        HatFanJson {
            dim: d,
            variables: hat.variable_names(),
            uncolored_rays: hat.uncolored_rays().iter().map(vec_json).collect(),
            maximal_cones: hat
                .maximal_cones()
                .iter()
                .map(|c| (0..d).filter(|&x| c.rays().contains(&QVector::unit(d, x))).collect())
                .collect(),
            sources: hat.sources().to_vec(),
            p_star: matrix_json(hat.p_star()),
            gamma: gamma.rows.iter().map(vec_json).collect(),
            irrelevant_monomials: irrelevant_monomials(hat),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildZPayload {
    pub family: String,
    pub z: ToricFanJson,
    pub hat: HatFanJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationConePayload {
    pub cone: ConeJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TropPayload {
    /// The prevariety in `N_ℚ`.
    pub toric: ComplexJson,
    /// Its image under `ψ` in `𝒩_ℚ`.
    pub complex: ComplexJson,
    /// Its image under `π_*`, with lift data.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image: Option<ComplexJson>,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceJson {
    pub colored_cone: usize,
    pub sigma: ConeJson,
    pub colors: Vec<String>,
    /// Representatives modulo `span σ`.
    pub complex: ComplexJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContributionJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple_embedding: Option<usize>,
    pub toric_cone: usize,
    pub colored_cone: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosurePayload {
    pub mode: String,
    pub pieces: Vec<PieceJson>,
    pub contributions: Vec<ContributionJson>,
    pub certified: bool,
}

impl ClosurePayload {
    pub fn new(mode: &str, t: &SphericalTrop) -> Self {
        ClosurePayload {
            mode: mode.into(),
            pieces: t
                .pieces
                .iter()
                .map(|(&id, c)| PieceJson {
                    colored_cone: id,
                    sigma: ConeJson::from_cone(&t.colored[id].sigma),
                    colors: t.colored[id].colors.iter().cloned().collect(),
                    complex: ComplexJson::from_complex(c),
                })
                .collect(),
            contributions: t
                .contributions
                .iter()
                .map(|c| ContributionJson {
                    simple_embedding: c.simple_embedding,
                    toric_cone: c.toric_cone,
                    colored_cone: c.colored_cone,
                })
                .collect(),
            certified: t.certified,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PushedPieceJson {
    pub target: usize,
    pub complex: ComplexJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PushPayload {
    pub source: ClosurePayload,
    pub pieces: Vec<PushedPieceJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitJson {
    pub colored_cone: usize,
    pub trop_of_closure: ComplexJson,
    pub closure_of_trop: ComplexJson,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckPayload {
    pub mode: String,
    pub equal: bool,
    pub certified: bool,
    pub orbits: Vec<OrbitJson>,
}

impl CheckPayload {
    pub fn new(mode: &str, r: &ClosureReport) -> Self {
        CheckPayload {
            mode: mode.into(),
            equal: r.equal,
            certified: r.certified,
            orbits: r
                .orbits
                .iter()
                .map(|o| OrbitJson {
                    colored_cone: o.colored_cone,
                    trop_of_closure: ComplexJson::from_complex(&o.trop_of_closure),
                    closure_of_trop: ComplexJson::from_complex(&o.closure_of_trop),
                    equal: o.equal,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderPayload {
    pub object: String,
    pub svg: String,
}
