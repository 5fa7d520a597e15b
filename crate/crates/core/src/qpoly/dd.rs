//! Double description: extreme rays and lineality of `{x : ⟨a, x⟩ ≥ 0}`.
//!
//! Constraints are inserted one at a time. While the current cone still has
//! lineality not orthogonal to the new constraint, one lineality direction is
//! spent (projected out of everything else and turned into a ray). Otherwise
//! rays are split by sign and every adjacent (+, −) pair contributes a new ray
//! on the hyperplane. Adjacency uses the combinatorial test on zero sets.

use num_traits::{Signed, Zero};

use super::scalar::Rational;
use super::vector::QVector;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn with_capacity(n: usize) -> Self {
        ZeroSet(vec![0; n.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &ZeroSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: QVector,
    zeros: ZeroSet,
}

/// Output of the conversion: extreme rays modulo the lineality space (not yet
/// canonicalized) and a basis of the lineality space.
#[derive(Clone, Debug)]
pub(crate) struct DdOutput {
    pub rays: Vec<QVector>,
    pub lineality: Vec<QVector>,
}

/// Generators of `{x ∈ ℚ^dim : ⟨a, x⟩ ≥ 0 ∀ a ∈ ineqs, ⟨e, x⟩ = 0 ∀ e ∈ eqs}`.
pub(crate) fn generators(dim: usize, ineqs: &[QVector], eqs: &[QVector]) -> DdOutput {
    let mut rows: Vec<QVector> = Vec::with_capacity(2 * eqs.len() + ineqs.len());
    for e in eqs {
        rows.push(e.clone());
        rows.push(e.neg());
    }
    rows.extend(ineqs.iter().cloned());
    rows.retain(|r| !r.is_zero());

    let total = rows.len();
    let mut lineality: Vec<QVector> = (0..dim).map(|i| QVector::unit(dim, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in rows.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l0 = lineality.swap_remove(pos);
            let mut s = a.dot(&l0);
            if s.is_negative() {
                l0 = l0.neg();
                s = -s;
            }
            for l in lineality.iter_mut() {
                let c = a.dot(l);
                if !c.is_zero() {
                    *l = l.add_scaled(&(-c / &s), &l0);
                }
            }
            for r in rays.iter_mut() {
                let c = a.dot(&r.v);
                if !c.is_zero() {
                    r.v = r.v.add_scaled(&(-c / &s), &l0);
                }
                r.zeros.insert(k);
            }
            let mut zeros = ZeroSet::with_capacity(total);
            for j in 0..k {
                zeros.insert(j);
            }
            rays.push(Ray { v: l0, zeros });
            continue;
        }

        let vals: Vec<Rational> = rays.iter().map(|r| a.dot(&r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.insert(k);
                }
            }
            continue;
        }

        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.intersect(&rays[n].zeros);
                let adjacent = rays.iter().enumerate().all(|(i, r)| {
                    i == p || i == n || !common.is_subset(&r.zeros)
                });
                if !adjacent {
                    continue;
                }
                // vals[p] > 0 > vals[n]: combine so the new ray lies on a = 0.
                let v = rays[p]
                    .v
                    .scale(&-vals[n].clone())
                    .add_scaled(&vals[p], &rays[n].v);
                let mut zeros = common;
                zeros.insert(k);
                fresh.push(Ray { v: v.primitive(), zeros });
            }
        }

        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (mut r, v) in rays.into_iter().zip(vals) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                r.zeros.insert(k);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }

    DdOutput {
        rays: rays.into_iter().map(|r| r.v).filter(|v| !v.is_zero()).collect(),
        lineality,
    }
}
