use std::collections::BTreeSet;

use rayon::prelude::*;

use super::linalg::LinearMap;
use super::polyhedron::{HalfSpace, Polyhedron};
use super::vector::QVector;
use crate::error::{Error, Result};

/// A finite union of polyhedra, kept as its inclusion-maximal cells in
/// canonical order.
///
/// Cells produced by the tropical routines meet in common faces; the type
/// itself only relies on the union, so images under linear maps (which may
/// overlap) are stored the same way.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyhedralComplex {
    dim: usize,
    cells: Vec<Polyhedron>,
}

impl PolyhedralComplex {
    /// Drops empty cells and cells contained in another cell.
    pub fn new(dim: usize, cells: Vec<Polyhedron>) -> Result<Self> {
        if let Some(c) = cells.iter().find(|c| c.ambient_dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: c.ambient_dim(),
            });
        }
        let set: BTreeSet<Polyhedron> = cells.into_iter().filter(|c| !c.is_empty()).collect();
        let mut sorted: Vec<Polyhedron> = set.into_iter().collect();
        sorted.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| a.cmp(b)));
        let mut kept: Vec<Polyhedron> = Vec::with_capacity(sorted.len());
        for c in sorted {
            let mut redundant = false;
            for k in &kept {
                if k.contains_polyhedron(&c)? {
                    redundant = true;
                    break;
                }
            }
            if !redundant {
                kept.push(c);
            }
        }
        kept.sort();
        Ok(PolyhedralComplex { dim, cells: kept })
    }

    pub fn empty(dim: usize) -> Self {
        PolyhedralComplex { dim, cells: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        PolyhedralComplex {
            dim,
            cells: vec![Polyhedron::full(dim)],
        }
    }

    pub fn from_polyhedron(p: Polyhedron) -> Self {
        let dim = p.ambient_dim();
        PolyhedralComplex::new(dim, vec![p]).expect("dimensions agree")
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[Polyhedron] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Largest cell dimension, `-1` when empty.
    pub fn dim(&self) -> isize {
        self.cells.iter().map(Polyhedron::dim).max().unwrap_or(-1)
    }

    fn check(&self, other: &PolyhedralComplex) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &PolyhedralComplex) -> Result<PolyhedralComplex> {
        self.check(other)?;
        let cells = self.cells.iter().chain(&other.cells).cloned().collect();
        PolyhedralComplex::new(self.dim, cells)
    }

    /// Cells `P ∩ Q` over all pairs.
    pub fn intersect(&self, other: &PolyhedralComplex) -> Result<PolyhedralComplex> {
        self.check(other)?;
        let cells: Vec<Polyhedron> = self
            .cells
            .par_iter()
            .map(|p| {
                other
                    .cells
                    .iter()
                    .map(|q| p.intersect(q))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        PolyhedralComplex::new(self.dim, cells)
    }

    /// Intersection of every cell with one polyhedron.
    pub fn restrict(&self, p: &Polyhedron) -> Result<PolyhedralComplex> {
        let cells = self.cells.iter().map(|c| c.intersect(p)).collect::<Result<_>>()?;
        PolyhedralComplex::new(self.dim, cells)
    }

    pub fn contains_point(&self, x: &QVector) -> Result<bool> {
        for c in &self.cells {
            if c.contains(x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn linear_image(&self, map: &LinearMap) -> Result<PolyhedralComplex> {
        let cells = self
            .cells
            .par_iter()
            .map(|c| c.linear_image(map))
            .collect::<Result<_>>()?;
        PolyhedralComplex::new(map.codomain_dim(), cells)
    }

    pub fn preimage(&self, map: &LinearMap) -> Result<PolyhedralComplex> {
        let cells = self
            .cells
            .par_iter()
            .map(|c| c.preimage(map))
            .collect::<Result<_>>()?;
        PolyhedralComplex::new(map.domain_dim(), cells)
    }

    /// Whether the support of `self` lies in the support of `other`.
    pub fn support_subset(&self, other: &PolyhedralComplex) -> Result<bool> {
        self.check(other)?;
        for c in &self.cells {
            if !covered(c, &other.cells)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn support_eq(&self, other: &PolyhedralComplex) -> Result<bool> {
        Ok(self.support_subset(other)? && other.support_subset(self)?)
    }

    /// The support as a single polyhedron, when it is convex.
    pub fn convex_support(&self) -> Result<Option<Polyhedron>> {
        if self.cells.is_empty() {
            return Ok(Some(Polyhedron::empty(self.dim)));
        }
        let mut points = Vec::new();
        let mut rays = Vec::new();
        let mut lin = Vec::new();
        for c in &self.cells {
            points.extend(c.vertices());
            rays.extend(c.rays());
            lin.extend(c.lineality());
        }
        let hull = Polyhedron::from_generators(self.dim, &points, &rays, &lin)?;
        if covered(&hull, &self.cells)? {
            Ok(Some(hull))
        } else {
            Ok(None)
        }
    }
}

/// `p ⊆ ⋃ qs`, decided exactly.
///
/// Only pieces `q` with `dim(p ∩ q) = dim p` matter, since the others are
/// nowhere dense in `p` and the union is closed. One such `q` is removed by
/// splitting the closure of `p ∖ q` along the facets of `q`; every piece of
/// full dimension must then be covered by the remaining candidates.
pub fn covered(p: &Polyhedron, qs: &[Polyhedron]) -> Result<bool> {
    if p.is_empty() {
        return Ok(true);
    }
    let d = p.dim();
    let mut candidates = Vec::new();
    for q in qs {
        if p.intersect(q)?.dim() == d {
            candidates.push(q.clone());
        }
    }
    covered_by_candidates(p, &candidates)
}

fn covered_by_candidates(p: &Polyhedron, candidates: &[Polyhedron]) -> Result<bool> {
    let d = p.dim();
    let Some((q, rest)) = candidates.split_first() else {
        return Ok(false);
    };
    if q.contains_polyhedron(p)? {
        return Ok(true);
    }
    let facets = q.inequalities();
    let mut prefix: Vec<HalfSpace> = Vec::new();
    for h in &facets {
        let flipped = HalfSpace::new(h.normal.neg(), -h.rhs.clone());
        let mut ineqs = prefix.clone();
        ineqs.push(flipped);
        let piece = p.constrain(&ineqs, &[])?;
        if piece.dim() == d && piece.constrain(&[], std::slice::from_ref(h))?.dim() < d {
            let mut sub = Vec::new();
            for r in rest {
                if piece.intersect(r)?.dim() == d {
                    sub.push(r.clone());
                }
            }
            if !covered_by_candidates(&piece, &sub)? {
                return Ok(false);
            }
        }
        prefix.push(h.clone());
    }
    Ok(true)
}

/// Maximal cells of the intersection of the supports: all intersections of
/// one cell from each input. An empty list yields nothing to intersect and is
/// rejected.
pub fn common_refinement(complexes: &[PolyhedralComplex]) -> Result<PolyhedralComplex> {
    let (first, rest) = complexes
        .split_first()
        .ok_or_else(|| Error::EmptyInput("common_refinement needs at least one complex".into()))?;
    rest.iter().try_fold(first.clone(), |acc, c| acc.intersect(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::scalar::rat;

    fn hs(a: &[i64], b: i64) -> HalfSpace {
        HalfSpace::new(QVector::from_ints(a), rat(b))
    }

    fn line(a: &[i64], b: i64) -> Polyhedron {
        Polyhedron::from_constraints(a.len(), &[], &[hs(a, b)]).unwrap()
    }

    #[test]
    fn transverse_lines_meet_in_a_point() {
        let x = PolyhedralComplex::from_polyhedron(line(&[1, 0], 0));
        let y = PolyhedralComplex::from_polyhedron(line(&[0, 1], 0));
        let r = common_refinement(&[x, y]).unwrap();
        assert_eq!(r.cells(), &[Polyhedron::point(QVector::from_ints(&[0, 0]))]);
    }

    #[test]
    fn refinement_with_full_space_is_identity() {
        let x = PolyhedralComplex::from_polyhedron(line(&[1, -1], 0));
        let r = common_refinement(&[x.clone(), PolyhedralComplex::full(2)]).unwrap();
        assert_eq!(r, x);
        assert_eq!(common_refinement(&[x.clone(), x.clone()]).unwrap(), x);
    }

    #[test]
    fn coverage_by_two_half_planes() {
        let left = Polyhedron::from_constraints(2, &[hs(&[-1, 0], 0)], &[]).unwrap();
        let right = Polyhedron::from_constraints(2, &[hs(&[1, 0], 0)], &[]).unwrap();
        let halves = PolyhedralComplex::new(2, vec![left.clone(), right]).unwrap();
        assert!(PolyhedralComplex::full(2).support_subset(&halves).unwrap());
        let only_left = PolyhedralComplex::from_polyhedron(left);
        assert!(!PolyhedralComplex::full(2).support_subset(&only_left).unwrap());
        assert!(halves.convex_support().unwrap().is_some());
    }

    #[test]
    fn lower_dimensional_cell_on_a_facet() {
        let square = Polyhedron::from_constraints(2, &[hs(&[1, 0], 0), hs(&[0, 1], 0), hs(&[-1, 0], -1), hs(&[0, -1], -1)], &[])
            .unwrap();
        let edge = Polyhedron::from_constraints(2, &[hs(&[1, 0], 0), hs(&[-1, 0], -1)], &[hs(&[0, 1], 0)]).unwrap();
        assert!(covered(&edge, std::slice::from_ref(&square)).unwrap());
        let c = PolyhedralComplex::new(2, vec![square.clone(), edge]).unwrap();
        assert_eq!(c.cells(), &[square]);
    }

    #[test]
    fn cross_is_not_convex() {
        let c = PolyhedralComplex::new(2, vec![line(&[1, 0], 0), line(&[0, 1], 0)]).unwrap();
        assert!(c.convex_support().unwrap().is_none());
    }
}
