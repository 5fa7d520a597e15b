//! Problem files: the descriptor of `G/H`, an optional colored fan, the
//! generators of a subvariety, lift data and pushforward maps.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sphtrop::colored_fans::{Color, ColoredCone, ColoredFan, Palette};
use sphtrop::fan_builder::{lift_colored_fan, LatticeLayout, LiftData};
use sphtrop::qpoly::{Cone, LinearMap, QVector};
use sphtrop::spherical::{valuation_cone, SpaceDescriptor};
use sphtrop::trop_engine::{Term, TropicalPolynomial};

use crate::json::{to_linear_map, to_qvector, ConeJson, VecJson, Q};
use crate::CliError;

pub const VERSION: u32 = 1;

fn version() -> u32 {
    VERSION
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Problem {
    #[serde(default = "version")]
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descriptor: Option<DescriptorJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<FanJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subvariety: Vec<PolynomialJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift: Option<LiftJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub push: Option<PushJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operation: Option<String>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub exact_one_variant: bool,
    /// `"global"` or `"per-cone"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// What `render` draws.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
}

/// `Z₀ = (ℂ^{s₁}∖0) × ⋯ × (ℂ^{s_r}∖0) × (ℂ*)^m` with the generators of the
/// ideal of `G/H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorJson {
    pub s: Vec<usize>,
    #[serde(default)]
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    #[serde(default)]
    pub generators: Vec<PolynomialJson>,
}

/// A polynomial as text (`"x1*y1 + x2*y2 - 1"`) or as a term list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolynomialJson {
    Text(String),
    Terms(Vec<TermJson>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub exponent: Vec<i64>,
    /// Valuation of the coefficient; 0 for constants.
    #[serde(default = "zero")]
    pub valuation: Q,
}

fn zero() -> Q {
    Q(sphtrop::qpoly::rat(0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColorJson {
    pub id: String,
    pub rho: VecJson,
    #[serde(default = "one")]
    pub rank: usize,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoredConeJson {
    pub rays: Vec<VecJson>,
    #[serde(default)]
    pub colors: Vec<String>,
}

/// A colored fan. Without `colors` the palette is the standard one of the
/// descriptor; without `valuation_cone` it is computed from the descriptor
/// (or taken to be the whole space when there is none).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<ColorJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuation_cone: Option<ConeJson>,
    pub cones: Vec<ColoredConeJson>,
}

impl FanJson {
    pub fn from_fan(f: &ColoredFan) -> Self {
        FanJson {
            dim: Some(f.dim()),
            colors: Some(
                f.palette()
                    .colors()
                    .iter()
                    .map(|c| ColorJson {
                        id: c.id.clone(),
                        rho: crate::json::vec_json(&c.rho),
                        rank: c.rank,
                    })
                    .collect(),
            ),
            valuation_cone: Some(ConeJson::from_cone(f.valuation_cone())),
            cones: f.maximal_cones().iter().map(colored_cone_json).collect(),
        }
    }
}

pub fn colored_cone_json(c: &ColoredCone) -> ColoredConeJson {
    ColoredConeJson {
        rays: c.sigma.rays().iter().map(crate::json::vec_json).collect(),
        colors: c.colors.iter().cloned().collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColorPairJson {
    /// Color of the fan being lifted.
    pub bold: String,
    /// Matching color of the descriptor's palette.
    pub color: String,
}

/// `π_*: 𝒩_ℚ → 𝓝_ℚ`, the color identification, and optionally a colored
/// fan over `𝓝` to lift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftJson {
    pub pi_star: Vec<VecJson>,
    #[serde(default)]
    pub colors: Vec<ColorPairJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<FanJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PushJson {
    pub maps: Vec<OrbitMapJson>,
}

/// Sends the piece on colored cone `orbit` to colored cone `target` of the
/// image through `matrix`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitMapJson {
    pub orbit: usize,
    pub target: usize,
    pub matrix: Vec<VecJson>,
}

impl Problem {
    pub fn parse(text: &str) -> Result<Problem, CliError> {
        let p: Problem = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
        if p.version != VERSION {
            return Err(CliError::Schema(format!("unsupported version {}, expected {VERSION}", p.version)));
        }
        Ok(p)
    }

    pub fn descriptor(&self) -> Result<SpaceDescriptor, CliError> {
        let d = self
            .descriptor
            .as_ref()
            .ok_or_else(|| CliError::Schema("this operation needs a `descriptor` block".into()))?;
        let layout = LatticeLayout::new(d.s.clone(), d.m)?;
        let vars = d.variables.clone().unwrap_or_else(|| layout.variable_names());
        let gens = polynomials(&d.generators, &vars)?;
        Ok(SpaceDescriptor::with_variables(layout, vars, gens)?)
    }

    /// The generators of `Y`, in the descriptor's variables.
    pub fn subvariety(&self, d: &SpaceDescriptor) -> Result<Vec<TropicalPolynomial>, CliError> {
        polynomials(&self.subvariety, d.variables())
    }

    pub fn lift(&self, d: &SpaceDescriptor) -> Result<Option<LiftData>, CliError> {
        let Some(l) = &self.lift else {
            return Ok(None);
        };
        Ok(Some(LiftData {
            pi_star: to_linear_map(d.layout().small_dim(), &l.pi_star)?,
            colors: l.colors.iter().map(|c| (c.bold.clone(), c.color.clone())).collect(),
        }))
    }

    /// The colored fan of the problem: the `fan` block, or the lift of
    /// `lift.fan` when only that is given.
    pub fn fan(&self) -> Result<ColoredFan, CliError> {
        let d = self.descriptor.as_ref().map(|_| self.descriptor()).transpose()?;
        if let Some(f) = &self.fan {
            return build_fan(f, d.as_ref());
        }
        if let (Some(l), Some(d)) = (&self.lift, &d) {
            if let Some(bold) = &l.fan {
                let lift = self.lift(d)?.expect("lift block present");
                let vc = valuation_cone(d)?;
                let bold_vc = vc.linear_image(&lift.pi_star)?;
                let bold_dim = lift.pi_star.codomain_dim();
                let bold_palette = match &bold.colors {
                    Some(cs) => palette(bold_dim, cs)?,
                    None => Palette::new(bold_dim, vec![])?,
                };
                let bold_fan = assemble(bold, bold_palette, bold_vc)?;
                return Ok(lift_colored_fan(&bold_fan, &lift, d.layout(), &d.palette())?);
            }
        }
        Err(CliError::Schema("this operation needs a `fan` block (or `lift.fan`)".into()))
    }

    pub fn orbit_maps(&self, domain: usize) -> Result<BTreeMap<usize, (usize, LinearMap)>, CliError> {
        let p = self
            .push
            .as_ref()
            .ok_or_else(|| CliError::Schema("`push` needs a `push` block".into()))?;
        let mut out = BTreeMap::new();
        for m in &p.maps {
            let map = to_linear_map(domain, &m.matrix)?;
            if out.insert(m.orbit, (m.target, map)).is_some() {
                return Err(CliError::Schema(format!("orbit {} is mapped twice", m.orbit)));
            }
        }
        Ok(out)
    }
}

fn polynomials(ps: &[PolynomialJson], vars: &[String]) -> Result<Vec<TropicalPolynomial>, CliError> {
    ps.iter()
        .map(|p| match p {
            PolynomialJson::Text(s) => Ok(TropicalPolynomial::parse(s, vars)?),
            PolynomialJson::Terms(ts) => {
                let terms = ts
                    .iter()
                    .map(|t| {
                        if t.exponent.len() != vars.len() {
                            return Err(CliError::Schema(format!(
                                "exponent {:?} has length {}, expected {}",
                                t.exponent,
                                t.exponent.len(),
                                vars.len()
                            )));
                        }
                        Ok(Term::new(t.exponent.clone(), t.valuation.0.clone()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(TropicalPolynomial::new(vars.len(), terms)?)
            }
        })
        .collect()
}

fn palette(dim: usize, cs: &[ColorJson]) -> Result<Palette, CliError> {
    let colors = cs
        .iter()
        .map(|c| {
            if c.rho.len() != dim {
                return Err(CliError::Schema(format!("color `{}` has ρ of length {}, expected {dim}", c.id, c.rho.len())));
            }
            Ok(Color {
                id: c.id.clone(),
                rho: to_qvector(&c.rho),
                rank: c.rank,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Palette::new(dim, colors)?)
}

fn build_fan(f: &FanJson, d: Option<&SpaceDescriptor>) -> Result<ColoredFan, CliError> {
    let dim = match (f.dim, d) {
        (Some(k), _) => k,
        (None, Some(d)) => d.layout().small_dim(),
        (None, None) => f
            .colors
            .as_ref()
            .and_then(|cs| cs.first().map(|c| c.rho.len()))
            .or_else(|| f.valuation_cone.as_ref().map(|c| c.dim))
            .or_else(|| f.cones.iter().flat_map(|c| c.rays.first()).map(Vec::len).next())
            .ok_or_else(|| CliError::Schema("cannot infer the fan's dimension; give `dim`".into()))?,
    };
    let pal = match (&f.colors, d) {
        (Some(cs), _) => palette(dim, cs)?,
        (None, Some(d)) => d.palette(),
        (None, None) => Palette::new(dim, vec![])?,
    };
    let vc = match (&f.valuation_cone, d) {
        (Some(c), _) => c.to_cone()?,
        (None, Some(d)) => valuation_cone(d)?,
        (None, None) => Cone::full(dim),
    };
    assemble(f, pal, vc)
}

fn assemble(f: &FanJson, pal: Palette, vc: Cone) -> Result<ColoredFan, CliError> {
    let dim = pal.dim();
    let cones = f
        .cones
        .iter()
        .map(|c| {
            let rays: Vec<QVector> = c
                .rays
                .iter()
                .map(|r| {
                    if r.len() == dim {
                        Ok(to_qvector(r))
                    } else {
                        Err(CliError::Schema(format!("ray {r:?} has length {}, expected {dim}", r.len())))
                    }
                })
                .collect::<Result<_, _>>()?;
            Ok(ColoredCone::new(Cone::from_generators(dim, &rays, &[])?, c.colors.iter().cloned()))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(ColoredFan::new(pal, vc, cones)?)
}
