use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use super::dd;
use super::linalg::{EchelonBasis, LinearMap};
use super::vector::QVector;
use crate::error::{Error, Result};

/// A closed convex polyhedral cone in `ℚⁿ`, held in both representations.
///
/// * V-representation: `lineality + cone(rays)`.
/// * H-representation: `{x : ⟨f, x⟩ ≥ 0 ∀ f ∈ facets, ⟨e, x⟩ = 0 ∀ e ∈ equations}`.
///
/// Both are canonical: the lineality and equation bases are reduced echelon
/// bases rescaled to primitive integers, rays are reduced modulo the
/// lineality space (zero in its pivot coordinates), facets modulo the
/// equation space, and both lists are primitive integer vectors in sorted
/// order. Two cones are equal as sets iff they compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    dim: usize,
    lineality: Vec<QVector>,
    rays: Vec<QVector>,
    equations: Vec<QVector>,
    facets: Vec<QVector>,
}

fn check_dims(dim: usize, vs: &[QVector]) -> Result<()> {
    match vs.iter().find(|v| v.dim() != dim) {
        Some(v) => Err(Error::DimensionMismatch {
            expected: dim,
            found: v.dim(),
        }),
        None => Ok(()),
    }
}

fn canonical_list(basis: &EchelonBasis, vs: &[QVector]) -> Vec<QVector> {
    let set: BTreeSet<QVector> = vs
        .iter()
        .map(|v| basis.reduce(v))
        .filter(|v| !v.is_zero())
        .map(|v| v.primitive())
        .collect();
    set.into_iter().collect()
}

impl Cone {
    /// `lineality + cone(generators)`.
    pub fn from_generators(dim: usize, generators: &[QVector], lineality: &[QVector]) -> Result<Self> {
        check_dims(dim, generators)?;
        check_dims(dim, lineality)?;
        let dual = dd::generators(dim, generators, lineality);
        let primal = dd::generators(dim, &dual.rays, &dual.lineality);
        Ok(Self::assemble(dim, primal, dual))
    }

    /// `{x : ⟨f, x⟩ ≥ 0 ∀ f ∈ inequalities, ⟨e, x⟩ = 0 ∀ e ∈ equations}`.
    pub fn from_inequalities(dim: usize, inequalities: &[QVector], equations: &[QVector]) -> Result<Self> {
        check_dims(dim, inequalities)?;
        check_dims(dim, equations)?;
        let primal = dd::generators(dim, inequalities, equations);
        let dual = dd::generators(dim, &primal.rays, &primal.lineality);
        Ok(Self::assemble(dim, primal, dual))
    }

    fn assemble(dim: usize, primal: dd::DdOutput, dual: dd::DdOutput) -> Self {
        let lin = EchelonBasis::new(dim, &primal.lineality);
        let eqs = EchelonBasis::new(dim, &dual.lineality);
        Cone {
            dim,
            rays: canonical_list(&lin, &primal.rays),
            lineality: lin.primitive_rows(),
            facets: canonical_list(&eqs, &dual.rays),
            equations: eqs.primitive_rows(),
        }
    }

    pub fn from_int_generators(dim: usize, generators: &[&[i64]]) -> Result<Self> {
        let gens: Vec<QVector> = generators.iter().map(|g| QVector::from_ints(g)).collect();
        Self::from_generators(dim, &gens, &[])
    }

    /// The cone `{0}`.
    pub fn origin(dim: usize) -> Self {
        Cone {
            dim,
            lineality: Vec::new(),
            rays: Vec::new(),
            equations: (0..dim).map(|i| QVector::unit(dim, i)).collect(),
            facets: Vec::new(),
        }
    }

    /// All of `ℚⁿ`.
    pub fn full(dim: usize) -> Self {
        Cone {
            dim,
            lineality: (0..dim).map(|i| QVector::unit(dim, i)).collect(),
            rays: Vec::new(),
            equations: Vec::new(),
            facets: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[QVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[QVector] {
        &self.lineality
    }

    pub fn facets(&self) -> &[QVector] {
        &self.facets
    }

    pub fn equations(&self) -> &[QVector] {
        &self.equations
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_origin(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn span(&self) -> EchelonBasis {
        let gens: Vec<QVector> = self.rays.iter().chain(&self.lineality).cloned().collect();
        EchelonBasis::new(self.dim, &gens)
    }

    fn check_vector(&self, v: &QVector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(())
    }

    fn check_cone(&self, other: &Cone) -> Result<()> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn contains(&self, v: &QVector) -> Result<bool> {
        self.check_vector(v)?;
        Ok(self.equations.iter().all(|e| e.dot(v).is_zero())
            && self.facets.iter().all(|f| !f.dot(v).is_negative()))
    }

    /// `v` lies in the span and strictly satisfies every facet inequality.
    pub fn relint_contains(&self, v: &QVector) -> Result<bool> {
        self.check_vector(v)?;
        Ok(self.equations.iter().all(|e| e.dot(v).is_zero())
            && self.facets.iter().all(|f| f.dot(v).is_positive()))
    }

    /// A point of the relative interior: the sum of the rays.
    pub fn relint_point(&self) -> QVector {
        self.rays
            .iter()
            .fold(QVector::zeros(self.dim), |acc, r| acc.add(r))
    }

    pub fn contains_cone(&self, other: &Cone) -> Result<bool> {
        self.check_cone(other)?;
        for r in &other.rays {
            if !self.contains(r)? {
                return Ok(false);
            }
        }
        for l in &other.lineality {
            if !self.contains(l)? || !self.contains(&l.neg())? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        self.check_cone(other)?;
        let ineqs: Vec<QVector> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<QVector> = self.equations.iter().chain(&other.equations).cloned().collect();
        Cone::from_inequalities(self.dim, &ineqs, &eqs)
    }

    /// `relint(self) ∩ relint(other) ≠ ∅`.
    ///
    /// If the relative interiors meet, they meet exactly in the relative
    /// interior of the intersection, so testing one relative interior point
    /// of the intersection decides it.
    pub fn relints_meet(&self, other: &Cone) -> Result<bool> {
        let both = self.intersect(other)?;
        let p = both.relint_point();
        Ok(self.relint_contains(&p)? && other.relint_contains(&p)?)
    }

    /// `relint(self) ∩ other ≠ ∅`.
    ///
    /// A relative interior point of `self ∩ other` lies in the relative
    /// interior of the smallest face of `self` containing the intersection,
    /// which is `self` itself iff the relative interior is hit.
    pub fn relint_meets(&self, other: &Cone) -> Result<bool> {
        let both = self.intersect(other)?;
        self.relint_contains(&both.relint_point())
    }

    /// `{u : ⟨u, v⟩ ≥ 0 ∀ v ∈ self}`. With canonical representations this
    /// exchanges the two descriptions.
    pub fn dual(&self) -> Cone {
        Cone {
            dim: self.dim,
            lineality: self.equations.clone(),
            rays: self.facets.clone(),
            equations: self.lineality.clone(),
            facets: self.rays.clone(),
        }
    }

    /// `self ∩ u⊥` for a supporting functional `u ∈ self^∨`.
    pub fn face_of(&self, u: &QVector) -> Result<Cone> {
        self.check_vector(u)?;
        let mut eqs = self.equations.clone();
        eqs.push(u.clone());
        Cone::from_inequalities(self.dim, &self.facets, &eqs)
    }

    /// Every face, including `{lineality}` and the cone itself, ordered by
    /// dimension and then canonically.
    pub fn faces(&self) -> Vec<Cone> {
        let all: BTreeSet<usize> = (0..self.rays.len()).collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut stack = vec![all.clone()];
        seen.insert(all);
        while let Some(face) = stack.pop() {
            for f in &self.facets {
                if face.iter().all(|&i| f.dot(&self.rays[i]).is_zero()) {
                    continue;
                }
                let sub: BTreeSet<usize> = face
                    .iter()
                    .copied()
                    .filter(|&i| f.dot(&self.rays[i]).is_zero())
                    .collect();
                if seen.insert(sub.clone()) {
                    stack.push(sub);
                }
            }
        }
        let mut faces: Vec<Cone> = seen
            .into_iter()
            .map(|idx| {
                let gens: Vec<QVector> = idx.into_iter().map(|i| self.rays[i].clone()).collect();
                Cone::from_generators(self.dim, &gens, &self.lineality)
                    .expect("face generators share the ambient dimension")
            })
            .collect();
        faces.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        faces.dedup();
        faces
    }

    pub fn is_face_of(&self, other: &Cone) -> Result<bool> {
        self.check_cone(other)?;
        if !other.contains_cone(self)? {
            return Ok(false);
        }
        // The smallest face of `other` containing `self` is cut out by the
        // facets vanishing on a relative interior point of `self`.
        let p = self.relint_point();
        let mut eqs = other.equations.clone();
        eqs.extend(other.facets.iter().filter(|f| f.dot(&p).is_zero()).cloned());
        let smallest = Cone::from_inequalities(self.dim, &other.facets, &eqs)?;
        Ok(&smallest == self)
    }

    pub fn linear_image(&self, map: &LinearMap) -> Result<Cone> {
        if map.domain_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: map.domain_dim(),
                found: self.dim,
            });
        }
        let gens: Vec<QVector> = self.rays.iter().map(|r| map.apply(r)).collect::<Result<_>>()?;
        let lin: Vec<QVector> = self.lineality.iter().map(|l| map.apply(l)).collect::<Result<_>>()?;
        Cone::from_generators(map.codomain_dim(), &gens, &lin)
    }

    /// `{x : map(x) ∈ self}`.
    pub fn preimage(&self, map: &LinearMap) -> Result<Cone> {
        if map.codomain_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: map.codomain_dim(),
                found: self.dim,
            });
        }
        let ineqs: Vec<QVector> = self.facets.iter().map(|f| map.pullback(f)).collect::<Result<_>>()?;
        let eqs: Vec<QVector> = self.equations.iter().map(|e| map.pullback(e)).collect::<Result<_>>()?;
        Cone::from_inequalities(map.domain_dim(), &ineqs, &eqs)
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone[dim {}; rays", self.dim)?;
        for r in &self.rays {
            write!(f, " {r}")?;
        }
        if !self.lineality.is_empty() {
            f.write_str("; lineality")?;
            for l in &self.lineality {
                write!(f, " {l}")?;
            }
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(gens: &[&[i64]]) -> Cone {
        let dim = gens[0].len();
        Cone::from_int_generators(dim, gens).unwrap()
    }

    #[test]
    fn quadrant_is_self_dual() {
        let q = cone(&[&[1, 0], &[0, 1]]);
        assert_eq!(q.dual(), q);
    }

    #[test]
    fn dual_of_origin_is_everything() {
        assert_eq!(Cone::origin(2).dual(), Cone::full(2));
        let z = Cone::from_generators(2, &[], &[]).unwrap();
        assert_eq!(z, Cone::origin(2));
    }

    #[test]
    fn dual_of_skew_cone() {
        // facets of cone((1,0),(1,1)) by brute force over generator pairs:
        // the normal of each generator rotated inward.
        let c = cone(&[&[1, 0], &[1, 1]]);
        assert_eq!(c.dual(), cone(&[&[0, 1], &[1, -1]]));
        assert_eq!(c.dual().dual(), c);
    }

    #[test]
    fn redundant_generators_dropped() {
        let c = cone(&[&[1, 0], &[2, 1], &[0, 1], &[3, 3]]);
        assert_eq!(c.rays(), &[QVector::from_ints(&[0, 1]), QVector::from_ints(&[1, 0])]);
    }

    #[test]
    fn quadrant_faces() {
        let q = cone(&[&[1, 0], &[0, 1]]);
        let f = q.faces();
        assert_eq!(f.len(), 4);
        assert_eq!(f[0], Cone::origin(2));
        assert_eq!(f[3], q);
    }

    #[test]
    fn ray_and_origin_faces() {
        let r = cone(&[&[1, 1]]);
        assert_eq!(r.faces().len(), 2);
        assert_eq!(Cone::origin(3).faces(), vec![Cone::origin(3)]);
    }

    #[test]
    fn intersections() {
        let q = cone(&[&[1, 0], &[0, 1]]);
        assert_eq!(q.intersect(&q).unwrap(), q);
        let a = cone(&[&[1, 0]]);
        let b = cone(&[&[0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), Cone::origin(2));
        assert!(matches!(
            q.intersect(&Cone::origin(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn relative_interior() {
        let q = cone(&[&[1, 0], &[0, 1]]);
        assert!(q.relint_contains(&QVector::from_ints(&[1, 1])).unwrap());
        assert!(!q.relint_contains(&QVector::from_ints(&[1, 0])).unwrap());
        let ray = cone(&[&[1, 1]]);
        assert!(ray.relint_contains(&QVector::from_ints(&[1, 1])).unwrap());
        assert!(Cone::origin(2).relint_contains(&QVector::zeros(2)).unwrap());
    }

    #[test]
    fn images() {
        let q = cone(&[&[1, 0], &[0, 1]]);
        assert_eq!(q.linear_image(&LinearMap::identity(2)).unwrap(), q);
        let proj = LinearMap::from_int_rows(2, &[&[1, 0]]).unwrap();
        assert_eq!(q.linear_image(&proj).unwrap(), cone(&[&[1]]));
        let diag = LinearMap::from_int_rows(1, &[&[1], &[1]]).unwrap();
        assert_eq!(cone(&[&[1]]).linear_image(&diag).unwrap(), cone(&[&[1, 1]]));
    }

    #[test]
    fn half_space_has_lineality() {
        let h = Cone::from_inequalities(2, &[QVector::from_ints(&[-1, -1])], &[]).unwrap();
        assert_eq!(h.lineality().len(), 1);
        assert_eq!(h.rays().len(), 1);
        assert!(!h.is_strictly_convex());
        assert!(h.contains(&QVector::from_ints(&[-2, 1])).unwrap());
        assert!(!h.contains(&QVector::from_ints(&[1, 0])).unwrap());
        assert_eq!(h.dual(), cone(&[&[-1, -1]]));
    }

    #[test]
    fn face_test() {
        let q = cone(&[&[1, 0], &[0, 1]]);
        assert!(cone(&[&[1, 0]]).is_face_of(&q).unwrap());
        assert!(!cone(&[&[1, 1]]).is_face_of(&q).unwrap());
        assert!(Cone::origin(2).is_face_of(&q).unwrap());
        assert!(q.is_face_of(&q).unwrap());
    }
}
