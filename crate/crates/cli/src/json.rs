//! Exact JSON forms of the kernel types. Rationals travel as `"p/q"`
//! strings (integers may also be given as JSON numbers on input) and `∞` as
//! `"inf"`.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sphtrop::qpoly::{parse_rational, ExtRational, HalfSpace, LinearMap, PolyhedralComplex, Polyhedron, QVector, Rational};
use sphtrop::qpoly::Cone;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

struct QVisitor;

impl Visitor<'_> for QVisitor {
    type Value = Q;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational as \"p/q\" or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
        parse_rational(v).map(Q).ok_or_else(|| E::custom(format!("`{v}` is not a rational")))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
        Ok(Q(Rational::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
        Ok(Q(Rational::from_integer(v.into())))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        d.deserialize_any(QVisitor)
    }
}

/// A rational or `"inf"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtQ(pub ExtRational);

impl Serialize for ExtQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            ExtRational::Finite(x) => s.serialize_str(&x.to_string()),
            ExtRational::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<ExtQ, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = ExtQ;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational, an integer or \"inf\"")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtQ, E> {
                if v == "inf" {
                    Ok(ExtQ(ExtRational::Infinity))
                } else {
                    QVisitor.visit_str(v).map(|q| ExtQ(ExtRational::Finite(q.0)))
                }
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtQ, E> {
                Ok(ExtQ(ExtRational::Finite(Rational::from_integer(v.into()))))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtQ, E> {
                Ok(ExtQ(ExtRational::Finite(Rational::from_integer(v.into()))))
            }
        }
        d.deserialize_any(V)
    }
}

pub type VecJson = Vec<Q>;

pub fn vec_json(v: &QVector) -> VecJson {
    v.iter().cloned().map(Q).collect()
}

pub fn to_qvector(v: &[Q]) -> QVector {
    v.iter().map(|q| q.0.clone()).collect()
}

fn check_len(dim: usize, vs: &[VecJson], what: &str) -> Result<Vec<QVector>, CliError> {
    vs.iter()
        .map(|v| {
            if v.len() == dim {
                Ok(to_qvector(v))
            } else {
                Err(CliError::Schema(format!("{what} {v:?} has length {}, expected {dim}", v.len())))
            }
        })
        .collect()
}

pub fn matrix_json(m: &LinearMap) -> Vec<VecJson> {
    m.rows().iter().map(vec_json).collect()
}

pub fn to_linear_map(domain: usize, rows: &[VecJson]) -> Result<LinearMap, CliError> {
    let rows = check_len(domain, rows, "matrix row")?;
    Ok(LinearMap::from_rows(domain, rows)?)
}

/// A cone by generators (`rays`, `lineality`) or by inequalities
/// (`facets`: `⟨u, x⟩ ≥ 0`, `equations`: `⟨u, x⟩ = 0`). Output carries both.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeJson {
    pub dim: usize,
    #[serde(default)]
    pub rays: Vec<VecJson>,
    #[serde(default)]
    pub lineality: Vec<VecJson>,
    #[serde(default)]
    pub facets: Vec<VecJson>,
    #[serde(default)]
    pub equations: Vec<VecJson>,
}

impl ConeJson {
    pub fn from_cone(c: &Cone) -> Self {
        ConeJson {
            dim: c.ambient_dim(),
            rays: c.rays().iter().map(vec_json).collect(),
            lineality: c.lineality().iter().map(vec_json).collect(),
            facets: c.facets().iter().map(vec_json).collect(),
            equations: c.equations().iter().map(vec_json).collect(),
        }
    }

    pub fn to_cone(&self) -> Result<Cone, CliError> {
        let rays = check_len(self.dim, &self.rays, "ray")?;
        let lin = check_len(self.dim, &self.lineality, "lineality vector")?;
        let facets = check_len(self.dim, &self.facets, "facet normal")?;
        let eqs = check_len(self.dim, &self.equations, "equation normal")?;
        if rays.is_empty() && lin.is_empty() && !(facets.is_empty() && eqs.is_empty()) {
            Ok(Cone::from_inequalities(self.dim, &facets, &eqs)?)
        } else {
            Ok(Cone::from_generators(self.dim, &rays, &lin)?)
        }
    }
}

/// `⟨normal, x⟩ ≥ rhs`, or `=` among equations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfSpaceJson {
    pub normal: VecJson,
    pub rhs: Q,
}

impl HalfSpaceJson {
    fn from_halfspace(h: &HalfSpace) -> Self {
        HalfSpaceJson {
            normal: vec_json(&h.normal),
            rhs: Q(h.rhs.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyhedronJson {
    pub dim: usize,
    #[serde(default)]
    pub empty: bool,
    #[serde(default)]
    pub vertices: Vec<VecJson>,
    #[serde(default)]
    pub rays: Vec<VecJson>,
    #[serde(default)]
    pub lineality: Vec<VecJson>,
    #[serde(default)]
    pub inequalities: Vec<HalfSpaceJson>,
    #[serde(default)]
    pub equations: Vec<HalfSpaceJson>,
}

impl PolyhedronJson {
    pub fn from_polyhedron(p: &Polyhedron) -> Self {
        PolyhedronJson {
            dim: p.ambient_dim(),
            empty: p.is_empty(),
            vertices: p.vertices().iter().map(vec_json).collect(),
            rays: p.rays().iter().map(vec_json).collect(),
            lineality: p.lineality().iter().map(vec_json).collect(),
            inequalities: p.inequalities().iter().map(HalfSpaceJson::from_halfspace).collect(),
            equations: p.equations().iter().map(HalfSpaceJson::from_halfspace).collect(),
        }
    }

    pub fn to_polyhedron(&self) -> Result<Polyhedron, CliError> {
        if self.empty {
            return Ok(Polyhedron::empty(self.dim));
        }
        if !self.vertices.is_empty() {
            let points = check_len(self.dim, &self.vertices, "vertex")?;
            let rays = check_len(self.dim, &self.rays, "ray")?;
            let lin = check_len(self.dim, &self.lineality, "lineality vector")?;
            return Ok(Polyhedron::from_generators(self.dim, &points, &rays, &lin)?);
        }
        let conv = |hs: &[HalfSpaceJson]| -> Result<Vec<HalfSpace>, CliError> {
            hs.iter()
                .map(|h| {
                    let n = check_len(self.dim, std::slice::from_ref(&h.normal), "normal")?;
                    Ok(HalfSpace::new(n.into_iter().next().unwrap(), h.rhs.0.clone()))
                })
                .collect()
        };
        Ok(Polyhedron::from_constraints(self.dim, &conv(&self.inequalities)?, &conv(&self.equations)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub dim: usize,
    pub cells: Vec<PolyhedronJson>,
}

impl ComplexJson {
    pub fn from_complex(c: &PolyhedralComplex) -> Self {
        ComplexJson {
            dim: c.ambient_dim(),
            cells: c.cells().iter().map(PolyhedronJson::from_polyhedron).collect(),
        }
    }

    pub fn to_complex(&self) -> Result<PolyhedralComplex, CliError> {
        let cells = self.cells.iter().map(PolyhedronJson::to_polyhedron).collect::<Result<Vec<_>, _>>()?;
        Ok(PolyhedralComplex::new(self.dim, cells)?)
    }
}
