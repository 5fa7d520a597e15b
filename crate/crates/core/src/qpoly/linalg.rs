//! Exact Gaussian elimination and rational linear maps.

use num_traits::{One, Zero};

use super::scalar::Rational;
use super::vector::QVector;
use crate::error::{Error, Result};

/// A basis of a linear subspace in reduced row echelon form.
///
/// Each row has a pivot coordinate equal to one, and every other row is zero
/// in that coordinate. Two subspaces are equal iff their echelon bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<QVector>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(dim: usize, vectors: &[QVector]) -> Self {
        let mut rows: Vec<QVector> = vectors.iter().filter(|v| !v.is_zero()).cloned().collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..dim {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = Rational::one() / &rows[r][col];
            rows[r] = rows[r].scale(&inv);
            for i in 0..rows.len() {
                if i != r && !rows[i][col].is_zero() {
                    let k = -rows[i][col].clone();
                    rows[i] = rows[i].add_scaled(&k, &rows[r]);
                }
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        EchelonBasis { dim, rows, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Representative of `v` modulo the subspace with zeros in every pivot
    /// coordinate.
    pub fn reduce(&self, v: &QVector) -> QVector {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let k = -out[p].clone();
                out = out.add_scaled(&k, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &QVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Basis of the orthogonal complement `{x : ⟨row, x⟩ = 0 for all rows}`.
    pub fn orthogonal_complement(&self) -> Vec<QVector> {
        let free: Vec<usize> = (0..self.dim).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = QVector::unit(self.dim, f);
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    x[p] = -row[f].clone();
                }
                x
            })
            .collect()
    }

    /// The linear map `v ↦ reduce(v)`, a projection onto the coordinate
    /// subspace spanned by the non-pivot coordinates along this subspace.
    pub fn reduction_map(&self) -> LinearMap {
        let cols: Vec<QVector> = (0..self.dim)
            .map(|j| self.reduce(&QVector::unit(self.dim, j)))
            .collect();
        LinearMap::from_columns(self.dim, &cols)
    }

    /// Basis rows rescaled to primitive integer vectors.
    pub fn primitive_rows(&self) -> Vec<QVector> {
        self.rows.iter().map(QVector::primitive).collect()
    }
}

pub fn rank(dim: usize, vectors: &[QVector]) -> usize {
    EchelonBasis::new(dim, vectors).rank()
}

/// Basis of `{x : ⟨r, x⟩ = 0 for every r}`.
pub fn nullspace(dim: usize, rows: &[QVector]) -> Vec<QVector> {
    EchelonBasis::new(dim, rows).orthogonal_complement()
}

/// A `codomain × domain` rational matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    domain: usize,
    codomain: usize,
    rows: Vec<QVector>,
}

impl LinearMap {
    pub fn from_rows(domain: usize, rows: Vec<QVector>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.dim() != domain) {
            return Err(Error::DimensionMismatch {
                expected: domain,
                found: r.dim(),
            });
        }
        Ok(LinearMap {
            domain,
            codomain: rows.len(),
            rows,
        })
    }

    pub fn from_int_rows(domain: usize, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(domain, rows.iter().map(|r| QVector::from_ints(r)).collect())
    }

    pub fn from_columns(codomain: usize, cols: &[QVector]) -> Self {
        let rows = (0..codomain)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        LinearMap {
            domain: cols.len(),
            codomain,
            rows,
        }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap {
            domain: n,
            codomain: n,
            rows: (0..n).map(|i| QVector::unit(n, i)).collect(),
        }
    }

    pub fn domain_dim(&self) -> usize {
        self.domain
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> QVector {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn apply(&self, v: &QVector) -> Result<QVector> {
        if v.dim() != self.domain {
            return Err(Error::DimensionMismatch {
                expected: self.domain,
                found: v.dim(),
            });
        }
        Ok(self.rows.iter().map(|r| r.dot(v)).collect())
    }

    /// `uᵀ · M`, the pullback of a linear functional on the codomain.
    pub fn pullback(&self, u: &QVector) -> Result<QVector> {
        if u.dim() != self.codomain {
            return Err(Error::DimensionMismatch {
                expected: self.codomain,
                found: u.dim(),
            });
        }
        let mut out = QVector::zeros(self.domain);
        for (coef, row) in u.iter().zip(&self.rows) {
            if !coef.is_zero() {
                out = out.add_scaled(coef, row);
            }
        }
        Ok(out)
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        if inner.codomain != self.domain {
            return Err(Error::DimensionMismatch {
                expected: self.domain,
                found: inner.codomain,
            });
        }
        let cols: Vec<QVector> = (0..inner.domain)
            .map(|j| self.apply(&inner.column(j)))
            .collect::<Result<_>>()?;
        Ok(LinearMap::from_columns(self.codomain, &cols))
    }

    pub fn rank(&self) -> usize {
        rank(self.domain, &self.rows)
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<LinearMap> {
        if self.domain != self.codomain {
            return None;
        }
        let n = self.domain;
        let aug: Vec<QVector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&QVector::unit(n, i)))
            .collect();
        let ech = EchelonBasis::new(2 * n, &aug);
        if ech.rank() < n || ech.pivots()[..n] != (0..n).collect::<Vec<_>>()[..] {
            return None;
        }
        let rows = ech.rows()[..n]
            .iter()
            .map(|r| r.coords()[n..].iter().cloned().collect())
            .collect();
        Some(LinearMap {
            domain: n,
            codomain: n,
            rows,
        })
    }

    /// Restriction to the coordinate subspace spanned by the given domain
    /// coordinates.
    pub fn restrict_columns(&self, cols: &[usize]) -> LinearMap {
        let columns: Vec<QVector> = cols.iter().map(|&j| self.column(j)).collect();
        LinearMap::from_columns(self.codomain, &columns)
    }
}
