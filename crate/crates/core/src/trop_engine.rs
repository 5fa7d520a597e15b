//! Tropical polynomials (min-plus), hypersurfaces, prevarieties and extended
//! closures in toric partial compactifications.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qpoly::complex::common_refinement;
use crate::qpoly::{parse_rational, Cone, ExtRational, HalfSpace, Polyhedron, PolyhedralComplex, QVector, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub exponent: Vec<i64>,
    pub valuation: Rational,
}

impl Term {
    pub fn new(exponent: Vec<i64>, valuation: Rational) -> Self {
        Term { exponent, valuation }
    }

    fn exponent_vector(&self) -> QVector {
        QVector::from_ints(&self.exponent)
    }

    /// `val + ⟨e, w⟩`.
    pub fn evaluate(&self, w: &QVector) -> Rational {
        self.valuation.clone() + self.exponent_vector().dot(w)
    }
}

/// A min-plus polynomial `min_p (val_p + ⟨e_p, w⟩)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalPolynomial {
    nvars: usize,
    terms: Vec<Term>,
}

impl TropicalPolynomial {
    /// Duplicate exponents keep the smallest valuation.
    pub fn new(nvars: usize, terms: Vec<Term>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyInput("a tropical polynomial needs at least one term".into()));
        }
        let mut merged: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
        for t in terms {
            if t.exponent.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: t.exponent.len(),
                });
            }
            merged
                .entry(t.exponent)
                .and_modify(|v| {
                    if t.valuation < *v {
                        *v = t.valuation.clone();
                    }
                })
                .or_insert(t.valuation);
        }
        Ok(TropicalPolynomial {
            nvars,
            terms: merged.into_iter().map(|(e, v)| Term::new(e, v)).collect(),
        })
    }

    /// Tropicalization of a Laurent polynomial with rational coefficients
    /// under the trivial valuation, e.g. `S11*S22 - S12*S21 - 1`.
    /// Like monomials are collected first, so cancelling terms disappear.
    pub fn parse(input: &str, variables: &[String]) -> Result<Self> {
        let terms = parse_polynomial(input, variables)?;
        if terms.is_empty() {
            return Err(Error::EmptyInput(format!("`{input}` is the zero polynomial")));
        }
        Self::new(
            variables.len(),
            terms.into_keys().map(|e| Term::new(e, Rational::zero())).collect(),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn evaluate(&self, w: &QVector) -> Rational {
        self.terms
            .iter()
            .map(|t| t.evaluate(w))
            .min()
            .expect("at least one term")
    }

    /// Whether the minimum at `w` is attained at least twice.
    pub fn min_attained_twice(&self, w: &QVector) -> bool {
        let vals: Vec<Rational> = self.terms.iter().map(|t| t.evaluate(w)).collect();
        let min = vals.iter().min().expect("at least one term");
        vals.iter().filter(|v| *v == min).count() >= 2
    }
}

impl fmt::Display for TropicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("min(")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{} + <{:?}, w>", t.valuation, t.exponent)?;
        }
        f.write_str(")")
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.char_indices().peekable(),
            src,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        self.chars.next_if(|&(_, x)| x == c).is_some()
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.chars.peek().map_or(self.src.len(), |&(i, _)| i);
        let mut end = start;
        while let Some((i, c)) = self.chars.next_if(|&(_, c)| f(c)) {
            end = i + c.len_utf8();
        }
        &self.src[start..end]
    }
}

fn parse_polynomial(input: &str, variables: &[String]) -> Result<BTreeMap<Vec<i64>, Rational>> {
    let err = |msg: String| Error::Parse(format!("{msg} in `{input}`"));
    let mut lx = Lexer::new(input);
    let mut out: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    let mut first = true;
    loop {
        let mut sign = Rational::one();
        if lx.eat('-') {
            sign = -sign;
        } else if !lx.eat('+') && !first {
            return Err(err(format!("expected `+` or `-`, found {:?}", lx.peek())));
        }
        first = false;
        let mut coef = sign;
        let mut exp = vec![0i64; variables.len()];
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = lx.take_while(|c| c.is_ascii_digit() || c == '/');
                    let q = parse_rational(num).ok_or_else(|| err(format!("bad number `{num}`")))?;
                    coef *= q;
                }
                Some(c) if c.is_alphabetic() || c == '_' => {
                    let name = lx.take_while(|c| c.is_alphanumeric() || c == '_');
                    let idx = variables
                        .iter()
                        .position(|v| v == name)
                        .ok_or_else(|| err(format!("unknown variable `{name}`")))?;
                    let mut power = 1i64;
                    if lx.eat('^') {
                        let neg = lx.eat('-');
                        let digits = lx.take_while(|c| c.is_ascii_digit());
                        power = digits.parse().map_err(|_| err(format!("bad exponent `{digits}`")))?;
                        if neg {
                            power = -power;
                        }
                    }
                    exp[idx] += power;
                }
                other => return Err(err(format!("unexpected {other:?}"))),
            }
            if !lx.eat('*') {
                break;
            }
        }
        let entry = out.entry(exp.clone()).or_insert_with(Rational::zero);
        *entry += coef;
        if entry.is_zero() {
            out.remove(&exp);
        }
        if lx.peek().is_none() {
            break;
        }
    }
    Ok(out)
}

/// `{w : val_p + ⟨e_p, w⟩ = val_q + ⟨e_q, w⟩ ≤ val_l + ⟨e_l, w⟩ ∀ l}`.
fn pair_cell(f: &TropicalPolynomial, p: usize, q: usize) -> Result<Polyhedron> {
    let tp = &f.terms[p];
    let ep = tp.exponent_vector();
    let eq_normal = ep.sub(&f.terms[q].exponent_vector());
    let equation = HalfSpace::new(eq_normal, f.terms[q].valuation.clone() - &tp.valuation);
    let ineqs: Vec<HalfSpace> = f
        .terms
        .iter()
        .enumerate()
        .filter(|&(l, _)| l != p && l != q)
        .map(|(_, tl)| HalfSpace::new(tl.exponent_vector().sub(&ep), tp.valuation.clone() - &tl.valuation))
        .collect();
    Polyhedron::from_constraints(f.nvars, &ineqs, &[equation])
}

pub fn hypersurface(f: &TropicalPolynomial) -> Result<PolyhedralComplex> {
    let n = f.terms.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).collect();
    let cells = pairs
        .par_iter()
        .map(|&(p, q)| pair_cell(f, p, q))
        .collect::<Result<Vec<_>>>()?;
    PolyhedralComplex::new(f.nvars, cells)
}

/// Intersection of the hypersurfaces; all of `ℚⁿ` for an empty list.
pub fn prevariety(nvars: usize, fs: &[TropicalPolynomial]) -> Result<PolyhedralComplex> {
    if let Some(f) = fs.iter().find(|f| f.nvars != nvars) {
        return Err(Error::DimensionMismatch {
            expected: nvars,
            found: f.nvars,
        });
    }
    if fs.is_empty() {
        return Ok(PolyhedralComplex::full(nvars));
    }
    let hs = fs.par_iter().map(hypersurface).collect::<Result<Vec<_>>>()?;
    common_refinement(&hs)
}

/// A point of the orbit of cone `cone_id`: a representative reduced modulo
/// the span of the cone (zeros in the pivot coordinates of its echelon
/// basis).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedPoint {
    pub cone_id: usize,
    pub representative: QVector,
}

impl ExtendedPoint {
    pub fn new(cones: &[Cone], cone_id: usize, v: &QVector) -> Result<Self> {
        let cone = cones
            .get(cone_id)
            .ok_or_else(|| Error::NotAFace(format!("no cone with id {cone_id}")))?;
        if v.dim() != cone.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: cone.ambient_dim(),
                found: v.dim(),
            });
        }
        Ok(ExtendedPoint {
            cone_id,
            representative: cone.span().reduce(v),
        })
    }
}

/// `μ(m)`: `⟨rep, m⟩` on `σ⊥`, `∞` on `σ∨ ∖ σ⊥`.
pub fn evaluate(cones: &[Cone], mu: &ExtendedPoint, m: &QVector) -> Result<ExtRational> {
    let cone = cones
        .get(mu.cone_id)
        .ok_or_else(|| Error::NotAFace(format!("no cone with id {}", mu.cone_id)))?;
    if !cone.dual().contains(m)? {
        return Err(Error::NotInDualCone);
    }
    let orthogonal = cone.rays().iter().chain(cone.lineality()).all(|r| r.dot(m).is_zero());
    Ok(if orthogonal {
        ExtRational::Finite(mu.representative.dot(m))
    } else {
        ExtRational::Infinity
    })
}

/// Pieces of an extended complex, keyed by cone id; each piece holds
/// representatives modulo the span of its cone.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtendedComplex {
    pub pieces: BTreeMap<usize, PolyhedralComplex>,
}

impl ExtendedComplex {
    pub fn piece(&self, cone_id: usize) -> Option<&PolyhedralComplex> {
        self.pieces.get(&cone_id)
    }
}

/// For each cone `σ` and cell `P` with `relint(σ) ∩ rec(P) ≠ ∅`, the image of
/// `P` in `N_ℚ / span(σ)`.
pub fn extended_closure(c: &PolyhedralComplex, cones: &[Cone]) -> Result<ExtendedComplex> {
    if let Some(k) = cones.iter().find(|k| k.ambient_dim() != c.ambient_dim()) {
        return Err(Error::DimensionMismatch {
            expected: c.ambient_dim(),
            found: k.ambient_dim(),
        });
    }
    let recessions: Vec<Cone> = c.cells().iter().map(Polyhedron::recession_cone).collect::<Result<_>>()?;
    let pieces: Vec<(usize, PolyhedralComplex)> = cones
        .par_iter()
        .enumerate()
        .map(|(id, sigma)| {
            let reduce = sigma.span().reduction_map();
            let mut cells = Vec::new();
            for (cell, rec) in c.cells().iter().zip(&recessions) {
                if sigma.relint_meets(rec)? {
                    cells.push(cell.linear_image(&reduce)?);
                }
            }
            Ok((id, PolyhedralComplex::new(c.ambient_dim(), cells)?))
        })
        .collect::<Result<_>>()?;
    Ok(ExtendedComplex {
        pieces: pieces.into_iter().filter(|(_, p)| !p.is_empty()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::rat;

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parser_collects_and_cancels() {
        let v = names(&["x", "y"]);
        let f = TropicalPolynomial::parse("x + y - x + 2*y^2 + 1/2", &v).unwrap();
        let exps: Vec<_> = f.terms().iter().map(|t| t.exponent.clone()).collect();
        assert_eq!(exps, vec![vec![0, 0], vec![0, 1], vec![0, 2]]);
        assert!(matches!(TropicalPolynomial::parse("x - x", &v), Err(Error::EmptyInput(_))));
        assert!(matches!(TropicalPolynomial::parse("x + z", &v), Err(Error::Parse(_))));
        let inv = TropicalPolynomial::parse("x^-1*y", &v).unwrap();
        assert_eq!(inv.terms()[0].exponent, vec![-1, 1]);
    }

    #[test]
    fn tropical_line_has_three_rays() {
        let v = names(&["x", "y"]);
        let f = TropicalPolynomial::parse("x + y + 1", &v).unwrap();
        let h = hypersurface(&f).unwrap();
        assert_eq!(h.cells().len(), 3);
        let mut dirs: Vec<QVector> = h.cells().iter().flat_map(|c| c.rays()).collect();
        dirs.sort();
        assert_eq!(
            dirs,
            vec![QVector::from_ints(&[-1, -1]), QVector::from_ints(&[0, 1]), QVector::from_ints(&[1, 0])]
        );
        for c in h.cells() {
            assert_eq!(c.vertices(), vec![QVector::from_ints(&[0, 0])]);
        }
    }

    #[test]
    fn binomial_gives_bisector() {
        let v = names(&["x", "y"]);
        let h = hypersurface(&TropicalPolynomial::parse("x + y", &v).unwrap()).unwrap();
        let diag = Polyhedron::from_constraints(2, &[], &[HalfSpace::new(QVector::from_ints(&[1, -1]), rat(0))]).unwrap();
        assert_eq!(h.cells(), &[diag]);
        let mono = hypersurface(&TropicalPolynomial::parse("3*x", &v).unwrap()).unwrap();
        assert!(mono.is_empty());
    }

    #[test]
    fn evaluation_on_orbits() {
        let cones = vec![Cone::origin(2), Cone::from_int_generators(2, &[&[1, 0]]).unwrap()];
        let mu = ExtendedPoint::new(&cones, 1, &QVector::from_ints(&[5, 3])).unwrap();
        assert_eq!(mu.representative, QVector::from_ints(&[0, 3]));
        assert_eq!(evaluate(&cones, &mu, &QVector::from_ints(&[0, 1])).unwrap(), ExtRational::Finite(rat(3)));
        assert_eq!(evaluate(&cones, &mu, &QVector::from_ints(&[1, 0])).unwrap(), ExtRational::Infinity);
        assert!(matches!(evaluate(&cones, &mu, &QVector::from_ints(&[-1, 0])), Err(Error::NotInDualCone)));
        let dense = ExtendedPoint::new(&cones, 0, &QVector::from_ints(&[5, 3])).unwrap();
        assert_eq!(evaluate(&cones, &dense, &QVector::from_ints(&[1, 1])).unwrap(), ExtRational::Finite(rat(8)));
    }
}
