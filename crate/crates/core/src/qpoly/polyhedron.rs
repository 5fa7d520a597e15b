use std::fmt;

use num_traits::{One, Signed, Zero};

use super::cone::Cone;
use super::linalg::LinearMap;
use super::scalar::Rational;
use super::vector::QVector;
use crate::error::{Error, Result};

/// `⟨normal, x⟩ ≥ rhs` (or `=` when used as an equation).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    pub normal: QVector,
    pub rhs: Rational,
}

impl HalfSpace {
    pub fn new(normal: QVector, rhs: Rational) -> Self {
        HalfSpace { normal, rhs }
    }
}

/// A convex polyhedron in `ℚⁿ`, possibly empty.
///
/// Stored as its homogenization `cl{(x, t) : t > 0, x/t ∈ P}` in `ℚⁿ⁺¹`
/// with the homogenizing coordinate last, so set equality is equality of
/// canonical cones. All empty polyhedra of a given dimension are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polyhedron {
    dim: usize,
    hom: Cone,
}

impl Polyhedron {
    fn hom_vector(v: &QVector, t: Rational) -> QVector {
        let mut h = v.clone();
        h.push(t);
        h
    }

    fn from_hom(dim: usize, hom: Cone) -> Self {
        let nonempty = hom.rays().iter().any(|r| r[dim].is_positive());
        if nonempty {
            Polyhedron { dim, hom }
        } else {
            Polyhedron::empty(dim)
        }
    }

    pub fn empty(dim: usize) -> Self {
        Polyhedron {
            dim,
            hom: Cone::origin(dim + 1),
        }
    }

    pub fn full(dim: usize) -> Self {
        let lin: Vec<QVector> = (0..dim).map(|i| QVector::unit(dim + 1, i)).collect();
        let hom = Cone::from_generators(dim + 1, &[QVector::unit(dim + 1, dim)], &lin)
            .expect("dimensions agree");
        Polyhedron { dim, hom }
    }

    /// `{x : ⟨a, x⟩ ≥ b for each inequality, ⟨a, x⟩ = b for each equation}`.
    pub fn from_constraints(dim: usize, inequalities: &[HalfSpace], equations: &[HalfSpace]) -> Result<Self> {
        let lift = |h: &HalfSpace| -> Result<QVector> {
            if h.normal.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: h.normal.dim(),
                });
            }
            Ok(Self::hom_vector(&h.normal, -h.rhs.clone()))
        };
        let mut ineqs: Vec<QVector> = inequalities.iter().map(lift).collect::<Result<_>>()?;
        ineqs.push(QVector::unit(dim + 1, dim));
        let eqs: Vec<QVector> = equations.iter().map(lift).collect::<Result<_>>()?;
        Ok(Self::from_hom(dim, Cone::from_inequalities(dim + 1, &ineqs, &eqs)?))
    }

    /// `conv(points) + cone(rays) + span(lineality)`; empty without points.
    pub fn from_generators(dim: usize, points: &[QVector], rays: &[QVector], lineality: &[QVector]) -> Result<Self> {
        if points.is_empty() {
            return Ok(Polyhedron::empty(dim));
        }
        let mut gens: Vec<QVector> = Vec::with_capacity(points.len() + rays.len());
        for p in points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            gens.push(Self::hom_vector(p, Rational::one()));
        }
        for r in rays {
            gens.push(Self::hom_vector(r, Rational::zero()));
        }
        let lin: Vec<QVector> = lineality
            .iter()
            .map(|l| Self::hom_vector(l, Rational::zero()))
            .collect();
        Ok(Self::from_hom(dim, Cone::from_generators(dim + 1, &gens, &lin)?))
    }

    pub fn from_cone(c: &Cone) -> Self {
        Self::from_generators(c.ambient_dim(), &[QVector::zeros(c.ambient_dim())], c.rays(), c.lineality())
            .expect("dimensions agree")
    }

    pub fn point(p: QVector) -> Self {
        let dim = p.dim();
        Self::from_generators(dim, &[p], &[], &[]).expect("dimensions agree")
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.hom.is_origin()
    }

    pub fn homogenization(&self) -> &Cone {
        &self.hom
    }

    /// Affine dimension; `-1` for the empty set.
    pub fn dim(&self) -> isize {
        if self.is_empty() {
            -1
        } else {
            self.hom.dim() as isize - 1
        }
    }

    fn dehomogenize(&self, r: &QVector) -> QVector {
        r.coords()[..self.dim].iter().cloned().collect()
    }

    /// Minimal points of the V-representation. When the lineality space is
    /// nontrivial these are canonical representatives modulo it.
    pub fn vertices(&self) -> Vec<QVector> {
        self.hom
            .rays()
            .iter()
            .filter(|r| r[self.dim].is_positive())
            .map(|r| {
                let t = r[self.dim].clone();
                self.dehomogenize(&r.scale(&(Rational::one() / t)))
            })
            .collect()
    }

    pub fn rays(&self) -> Vec<QVector> {
        self.hom
            .rays()
            .iter()
            .filter(|r| r[self.dim].is_zero())
            .map(|r| self.dehomogenize(r))
            .collect()
    }

    pub fn lineality(&self) -> Vec<QVector> {
        self.hom.lineality().iter().map(|l| self.dehomogenize(l)).collect()
    }

    /// Irredundant inequalities (the face at infinity is omitted).
    pub fn inequalities(&self) -> Vec<HalfSpace> {
        self.hom
            .facets()
            .iter()
            .filter(|f| {
                self.hom
                    .rays()
                    .iter()
                    .any(|r| r[self.dim].is_positive() && f.dot(r).is_zero())
            })
            .map(|f| HalfSpace::new(self.dehomogenize(f), -f[self.dim].clone()))
            .collect()
    }

    pub fn equations(&self) -> Vec<HalfSpace> {
        self.hom
            .equations()
            .iter()
            .map(|e| HalfSpace::new(self.dehomogenize(e), -e[self.dim].clone()))
            .collect()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays().is_empty() && self.hom.lineality().is_empty()
    }

    pub fn contains(&self, x: &QVector) -> Result<bool> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        if self.is_empty() {
            return Ok(false);
        }
        self.hom.contains(&Self::hom_vector(x, Rational::one()))
    }

    pub fn relint_contains(&self, x: &QVector) -> Result<bool> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        if self.is_empty() {
            return Ok(false);
        }
        let h = Self::hom_vector(x, Rational::one());
        let eqs_ok = self.hom.equations().iter().all(|e| e.dot(&h).is_zero());
        Ok(eqs_ok && self.inequalities().iter().all(|hs| hs.normal.dot(x) > hs.rhs))
    }

    /// A point in the relative interior, `None` when empty.
    pub fn relint_point(&self) -> Option<QVector> {
        if self.is_empty() {
            return None;
        }
        let s = self.hom.relint_point();
        let t = s[self.dim].clone();
        Some(self.dehomogenize(&s.scale(&(Rational::one() / t))))
    }

    fn check(&self, other: &Polyhedron) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn contains_polyhedron(&self, other: &Polyhedron) -> Result<bool> {
        self.check(other)?;
        if other.is_empty() {
            return Ok(true);
        }
        if self.is_empty() {
            return Ok(false);
        }
        self.hom.contains_cone(&other.hom)
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron> {
        self.check(other)?;
        if self.is_empty() || other.is_empty() {
            return Ok(Polyhedron::empty(self.dim));
        }
        let mut ineqs: Vec<QVector> = self.hom.facets().iter().chain(other.hom.facets()).cloned().collect();
        ineqs.push(QVector::unit(self.dim + 1, self.dim));
        let eqs: Vec<QVector> = self.hom.equations().iter().chain(other.hom.equations()).cloned().collect();
        Ok(Self::from_hom(self.dim, Cone::from_inequalities(self.dim + 1, &ineqs, &eqs)?))
    }

    /// Intersection with additional constraints.
    pub fn constrain(&self, inequalities: &[HalfSpace], equations: &[HalfSpace]) -> Result<Polyhedron> {
        let other = Polyhedron::from_constraints(self.dim, inequalities, equations)?;
        self.intersect(&other)
    }

    /// `{d : ⟨a, d⟩ ≥ 0}` over the inequalities, for nonempty input.
    pub fn recession_cone(&self) -> Result<Cone> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        Cone::from_generators(self.dim, &self.rays(), &self.lineality())
    }

    pub fn linear_image(&self, map: &LinearMap) -> Result<Polyhedron> {
        if map.domain_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: map.domain_dim(),
                found: self.dim,
            });
        }
        let out = map.codomain_dim();
        if self.is_empty() {
            return Ok(Polyhedron::empty(out));
        }
        let apply = |vs: Vec<QVector>| -> Result<Vec<QVector>> { vs.iter().map(|v| map.apply(v)).collect() };
        Polyhedron::from_generators(out, &apply(self.vertices())?, &apply(self.rays())?, &apply(self.lineality())?)
    }

    /// `{x : map(x) ∈ self}`.
    pub fn preimage(&self, map: &LinearMap) -> Result<Polyhedron> {
        if map.codomain_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: map.codomain_dim(),
                found: self.dim,
            });
        }
        let n = map.domain_dim();
        if self.is_empty() {
            return Ok(Polyhedron::empty(n));
        }
        let pull = |hs: Vec<HalfSpace>| -> Result<Vec<HalfSpace>> {
            hs.into_iter()
                .map(|h| Ok(HalfSpace::new(map.pullback(&h.normal)?, h.rhs)))
                .collect()
        };
        Polyhedron::from_constraints(n, &pull(self.inequalities())?, &pull(self.equations())?)
    }

    /// Whether the polyhedron is a cone, i.e. equals its recession cone.
    pub fn is_cone(&self) -> bool {
        !self.is_empty() && self.vertices().iter().all(QVector::is_zero)
    }

    /// The recession cone when `self` is itself a cone.
    pub fn as_cone(&self) -> Option<Cone> {
        if self.is_cone() {
            self.recession_cone().ok()
        } else {
            None
        }
    }
}

impl fmt::Debug for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "Polyhedron[dim {}; empty]", self.dim);
        }
        write!(f, "Polyhedron[dim {}; vertices", self.dim)?;
        for v in self.vertices() {
            write!(f, " {v}")?;
        }
        let rays = self.rays();
        if !rays.is_empty() {
            f.write_str("; rays")?;
            for r in rays {
                write!(f, " {r}")?;
            }
        }
        let lin = self.lineality();
        if !lin.is_empty() {
            f.write_str("; lineality")?;
            for l in lin {
                write!(f, " {l}")?;
            }
        }
        f.write_str("]")
    }
}
