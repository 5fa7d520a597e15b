//! Spherical tropicalization: `ψ`, valuation cones, tropicalizations of
//! subvarieties, `ψ̄` on boundary orbits and closures in embeddings.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::colored_fans::{is_polyhedral, ColoredCone, ColoredFan, Palette};
use crate::error::{Error, Result};
use crate::fan_builder::{build_fan_z, AFamily, LatticeLayout, ToricFan};
use crate::qpoly::{Cone, ExtRational, HalfSpace, LinearMap, PolyhedralComplex, QVector, Rational};
use crate::trop_engine::{evaluate, extended_closure, prevariety, ExtendedPoint, TropicalPolynomial};

pub use crate::fan_builder::LiftData;

/// Combinatorial data of `G/H`: the layout `(r, s, m)` and generators of the
/// ideal `𝔭` in the variables `S_ij`, `T_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceDescriptor {
    layout: LatticeLayout,
    variables: Vec<String>,
    generators: Vec<TropicalPolynomial>,
}

impl SpaceDescriptor {
    pub fn new(layout: LatticeLayout, generators: Vec<TropicalPolynomial>) -> Result<Self> {
        let variables = layout.variable_names();
        Self::with_variables(layout, variables, generators)
    }

    pub fn with_variables(layout: LatticeLayout, variables: Vec<String>, generators: Vec<TropicalPolynomial>) -> Result<Self> {
        if variables.len() != layout.big_dim() {
            return Err(Error::LayoutMismatch(format!(
                "{} variable names for {} coordinates",
                variables.len(),
                layout.big_dim()
            )));
        }
        check_layout(&layout, &generators)?;
        Ok(SpaceDescriptor {
            layout,
            variables,
            generators,
        })
    }

    /// Generators given as polynomial strings in the default variables.
    pub fn parse(s: Vec<usize>, m: usize, generators: &[&str]) -> Result<Self> {
        let layout = LatticeLayout::new(s, m)?;
        let vars = layout.variable_names();
        let gens = generators
            .iter()
            .map(|g| TropicalPolynomial::parse(g, &vars))
            .collect::<Result<_>>()?;
        Self::new(layout, gens)
    }

    pub fn layout(&self) -> &LatticeLayout {
        &self.layout
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn generators(&self) -> &[TropicalPolynomial] {
        &self.generators
    }

    /// Parses polynomials in this descriptor's variables.
    pub fn parse_polynomials(&self, polys: &[&str]) -> Result<Vec<TropicalPolynomial>> {
        polys.iter().map(|p| TropicalPolynomial::parse(p, &self.variables)).collect()
    }

    /// Colors `D_i` with `ρ(D_i) = v_i` and rank `s_i`.
    pub fn palette(&self) -> Palette {
        Palette::standard(self.layout.small_dim(), self.layout.s()).expect("layout ranks are positive")
    }
}

fn check_layout(layout: &LatticeLayout, gens: &[TropicalPolynomial]) -> Result<()> {
    match gens.iter().find(|g| g.nvars() != layout.big_dim()) {
        Some(g) => Err(Error::LayoutMismatch(format!(
            "polynomial in {} variables, layout has {}",
            g.nvars(),
            layout.big_dim()
        ))),
        None => Ok(()),
    }
}

/// `ψ(a, b) = (min_j a_1j, …, min_j a_rj, b_1, …, b_m)`.
pub fn psi(layout: &LatticeLayout, point: &[ExtRational]) -> Result<QVector> {
    if point.len() != layout.big_dim() {
        return Err(Error::DimensionMismatch {
            expected: layout.big_dim(),
            found: point.len(),
        });
    }
    let mut out = Vec::with_capacity(layout.small_dim());
    for i in 0..layout.r() {
        let min = layout
            .block(i)
            .map(|x| point[x].clone())
            .fold(ExtRational::Infinity, ExtRational::min);
        match min {
            ExtRational::Finite(q) => out.push(q),
            ExtRational::Infinity => {
                return Err(Error::DomainViolation(format!("block {} is entirely infinite", i + 1)));
            }
        }
    }
    for k in 0..layout.m() {
        match &point[layout.w(k)] {
            ExtRational::Finite(q) => out.push(q.clone()),
            ExtRational::Infinity => {
                return Err(Error::DomainViolation(format!("unit coordinate w{} is infinite", k + 1)));
            }
        }
    }
    Ok(QVector::new(out))
}

/// All `ω` with `ω(i) ∈ allowed[i]`; a block with no allowed index is
/// recorded as `None`.
fn choices(allowed: &[Vec<usize>]) -> Vec<Vec<Option<usize>>> {
    allowed.iter().fold(vec![Vec::new()], |acc, opts| {
        let opts: Vec<Option<usize>> = if opts.is_empty() {
            vec![None]
        } else {
            opts.iter().copied().map(Some).collect()
        };
        acc.into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(*o);
                    p
                })
            })
            .collect()
    })
}

/// The index set `Ω`, as coordinates `v_iω(i)`.
pub fn omega(layout: &LatticeLayout) -> Vec<Vec<usize>> {
    let all: Vec<Vec<usize>> = (0..layout.r()).map(|i| layout.block(i).collect()).collect();
    choices(&all)
        .into_iter()
        .map(|w| w.into_iter().map(|x| x.expect("blocks are nonempty")).collect())
        .collect()
}

/// Group-wise minimum over `allowed` coordinates, pushed through the linear
/// projections of its linearity regions. Blocks without allowed coordinates
/// map to zero.
fn min_projection(layout: &LatticeLayout, allowed: &[Vec<usize>], c: &PolyhedralComplex) -> Result<PolyhedralComplex> {
    let big = layout.big_dim();
    let small = layout.small_dim();
    let omegas = choices(allowed);
    let regions: Vec<(LinearMap, Vec<HalfSpace>)> = omegas
        .iter()
        .map(|w| {
            let mut rows = Vec::with_capacity(small);
            let mut ineqs = Vec::new();
            for (i, choice) in w.iter().enumerate() {
                match choice {
                    Some(x) => {
                        rows.push(QVector::unit(big, *x));
                        for &y in &allowed[i] {
                            if y != *x {
                                ineqs.push(HalfSpace::new(QVector::unit(big, y).sub(&QVector::unit(big, *x)), Rational::zero()));
                            }
                        }
                    }
                    None => rows.push(QVector::zeros(big)),
                }
            }
            for k in 0..layout.m() {
                rows.push(QVector::unit(big, layout.w(k)));
            }
            (LinearMap::from_rows(big, rows).expect("rows have the big dimension"), ineqs)
        })
        .collect();
    let images = c
        .cells()
        .par_iter()
        .map(|cell| {
            let mut out = Vec::new();
            for (map, ineqs) in &regions {
                let region = cell.constrain(ineqs, &[])?;
                if !region.is_empty() {
                    out.push(region.linear_image(map)?);
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    PolyhedralComplex::new(small, images.into_iter().flatten().collect())
}

/// `ψ` applied to a complex of finite points of `N_ℚ`.
pub fn psi_complex(layout: &LatticeLayout, c: &PolyhedralComplex) -> Result<PolyhedralComplex> {
    if c.ambient_dim() != layout.big_dim() {
        return Err(Error::DimensionMismatch {
            expected: layout.big_dim(),
            found: c.ambient_dim(),
        });
    }
    let allowed: Vec<Vec<usize>> = (0..layout.r()).map(|i| layout.block(i).collect()).collect();
    min_projection(layout, &allowed, c)
}

/// `𝒱 = trop(𝔭) ∩ inc(𝒩_ℚ)`, pulled back to `𝒩_ℚ`.
pub fn valuation_cone(d: &SpaceDescriptor) -> Result<Cone> {
    let trop = prevariety(d.layout.big_dim(), &d.generators)?;
    let pulled = trop.preimage(&d.layout.inc())?;
    if pulled.is_empty() {
        return Err(Error::EmptyTropicalization);
    }
    let hull = pulled.convex_support()?.ok_or(Error::NonConvexUnion)?;
    hull.as_cone().ok_or(Error::NotConic)
}

/// A tropicalization together with whether it is certified to be exact
/// (at most one generator, so the prevariety is the tropical variety).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tropicalization {
    pub complex: PolyhedralComplex,
    pub certified: bool,
}

fn all_generators(d: &SpaceDescriptor, y: &[TropicalPolynomial]) -> Result<Vec<TropicalPolynomial>> {
    check_layout(&d.layout, y)?;
    Ok(d.generators.iter().chain(y).cloned().collect())
}

/// `trop_𝕋` of `V(𝔭 + ⟨y⟩)` as a prevariety in `N_ℚ`.
pub fn toric_tropicalization(d: &SpaceDescriptor, y: &[TropicalPolynomial]) -> Result<Tropicalization> {
    let gens = all_generators(d, y)?;
    Ok(Tropicalization {
        complex: prevariety(d.layout.big_dim(), &gens)?,
        certified: gens.len() <= 1,
    })
}

/// `trop_G(Y) = ψ(trop_𝕋(Y))`.
pub fn trop_subvariety(d: &SpaceDescriptor, y: &[TropicalPolynomial]) -> Result<Tropicalization> {
    let t = toric_tropicalization(d, y)?;
    Ok(Tropicalization {
        complex: psi_complex(&d.layout, &t.complex)?,
        certified: t.certified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedTropicalization {
    /// `ψ`-image in `𝒩_ℚ`.
    pub psi_image: PolyhedralComplex,
    /// Image under `π_*` in `𝓝_ℚ`.
    pub image: PolyhedralComplex,
    pub certified: bool,
}

/// `(trop(π) ∘ ψ)(trop_𝕋(π⁻¹(𝒀)))`, where `d` describes the lifted space
/// and `y` generates `π⁻¹(𝒀)` in its coordinates.
pub fn trop_subvariety_lifted(d: &SpaceDescriptor, lift: &LiftData, y: &[TropicalPolynomial]) -> Result<LiftedTropicalization> {
    let t = trop_subvariety(d, y)?;
    Ok(LiftedTropicalization {
        image: t.complex.linear_image(&lift.pi_star)?,
        psi_image: t.complex,
        certified: t.certified,
    })
}

/// A point of the orbit of a colored cone: a functional on `σ⊥`, stored as
/// a representative modulo `span(σ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedGValuation {
    /// Index into [`ColoredFan::all_cones`].
    pub colored_cone: usize,
    pub finite: QVector,
}

/// How `ψ̄` acts on the orbit of a toric cone.
#[derive(Clone, Debug)]
struct PsiBarData {
    colored_cone: usize,
    allowed: Vec<Vec<usize>>,
    reduce: LinearMap,
}

fn psi_bar_data(z: &ToricFan, cone_id: usize) -> Result<PsiBarData> {
    let prov = z.provenance(cone_id).first().ok_or(Error::ProvenanceMissing(cone_id))?;
    let layout = z.layout();
    let allowed = (0..layout.r())
        .map(|i| layout.block(i).filter(|x| !prov.a.contains(x)).collect())
        .collect();
    let sigma = &z.colored_cones()[prov.colored_cone].sigma;
    Ok(PsiBarData {
        colored_cone: prov.colored_cone,
        allowed,
        reduce: sigma.span().reduction_map(),
    })
}

/// `ψ̄(μ)`: coordinates in `𝔞` count as `∞`, blocks that are entirely
/// infinite contribute zero (they pair with characters that vanish on
/// `σ⊥`), and the result is reduced modulo `span(σ)`.
pub fn psi_bar(z: &ToricFan, mu: &ExtendedPoint) -> Result<ExtendedGValuation> {
    let data = psi_bar_data(z, mu.cone_id)?;
    let layout = z.layout();
    let x = &mu.representative;
    let mut y = QVector::zeros(layout.small_dim());
    for (i, opts) in data.allowed.iter().enumerate() {
        if let Some(min) = opts.iter().map(|&c| x[c].clone()).min() {
            y[i] = min;
        }
    }
    for k in 0..layout.m() {
        y[layout.r() + k] = x[layout.w(k)].clone();
    }
    Ok(ExtendedGValuation {
        colored_cone: data.colored_cone,
        finite: data.reduce.apply(&y)?,
    })
}

/// `ψ̄` on a piece of the orbit of toric cone `cone_id`.
pub fn psi_bar_complex(z: &ToricFan, cone_id: usize, piece: &PolyhedralComplex) -> Result<(usize, PolyhedralComplex)> {
    let data = psi_bar_data(z, cone_id)?;
    let image = min_projection(z.layout(), &data.allowed, piece)?;
    Ok((data.colored_cone, image.linear_image(&data.reduce)?))
}

/// Value of an extended `G`-valuation on the character `m ∈ σ∨`.
pub fn evaluate_g(colored: &[ColoredCone], nu: &ExtendedGValuation, m: &QVector) -> Result<ExtRational> {
    let sigma = &colored
        .get(nu.colored_cone)
        .ok_or_else(|| Error::NotAFace(format!("no colored cone with id {}", nu.colored_cone)))?
        .sigma;
    if !sigma.dual().contains(m)? {
        return Err(Error::NotInDualCone);
    }
    let orthogonal = sigma.rays().iter().chain(sigma.lineality()).all(|r| r.dot(m).is_zero());
    Ok(if orthogonal {
        ExtRational::Finite(nu.finite.dot(m))
    } else {
        ExtRational::Infinity
    })
}

/// `min_{ω ∈ Ω} μ(f_{1ω(1)}^{a_1} ⋯ g^b)`, over those `ω` whose character
/// lies in the dual of the toric cone.
pub fn omega_min(z: &ToricFan, mu: &ExtendedPoint, m: &QVector) -> Result<ExtRational> {
    let layout = z.layout();
    let mut best = ExtRational::Infinity;
    for w in omega(layout) {
        let mut mw = QVector::zeros(layout.big_dim());
        for (i, &x) in w.iter().enumerate() {
            mw[x] = m[i].clone();
        }
        for k in 0..layout.m() {
            mw[layout.w(k)] = m[layout.r() + k].clone();
        }
        match evaluate(z.cones(), mu, &mw) {
            Ok(v) => best = best.min(v),
            Err(Error::NotInDualCone) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(best)
}

/// Comparison of `ψ̄(μ)` with the `Ω`-minimum on sample characters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OmegaReport {
    pub checked: usize,
    /// `(m, ψ̄(μ)(m), Ω-minimum)` for each disagreement.
    pub deviations: Vec<(QVector, ExtRational, ExtRational)>,
}

/// Checks characters `m ∈ σ∨` with nonnegative color exponents; others are
/// skipped, since the `Ω`-formula is only used in that regime.
pub fn check_omega_formula(z: &ToricFan, mu: &ExtendedPoint, characters: &[QVector]) -> Result<OmegaReport> {
    let nu = psi_bar(z, mu)?;
    let r = z.layout().r();
    let mut report = OmegaReport::default();
    for m in characters {
        if m.iter().take(r).any(Signed::is_negative) {
            continue;
        }
        let lhs = match evaluate_g(z.colored_cones(), &nu, m) {
            Ok(v) => v,
            Err(Error::NotInDualCone) => continue,
            Err(e) => return Err(e),
        };
        let rhs = omega_min(z, mu, m)?;
        report.checked += 1;
        if lhs != rhs {
            report.deviations.push((m.clone(), lhs, rhs));
        }
    }
    Ok(report)
}

/// How `trop_closure` treats the embedding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ClosureMode {
    /// One fan `Σ_Z` for the whole embedding; needs a polyhedral fan.
    #[default]
    Global,
    /// Each maximal colored cone as a simple embedding, glued along shared
    /// colored faces.
    PerCone,
}

/// A toric orbit piece and the colored cone it maps to under `ψ̄`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Contribution {
    /// Maximal colored cone of the simple embedding (per-cone mode only).
    pub simple_embedding: Option<usize>,
    pub toric_cone: usize,
    pub colored_cone: usize,
}

/// Pieces of `trop_G(X)`-valued sets, keyed by colored cone id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalTrop {
    pub colored: Vec<ColoredCone>,
    pub pieces: BTreeMap<usize, PolyhedralComplex>,
    pub contributions: Vec<Contribution>,
    pub certified: bool,
}

impl SphericalTrop {
    /// A set living only on the open orbit.
    pub fn dense(complex: PolyhedralComplex, certified: bool) -> Self {
        let dim = complex.ambient_dim();
        let mut pieces = BTreeMap::new();
        if !complex.is_empty() {
            pieces.insert(0, complex);
        }
        SphericalTrop {
            colored: vec![ColoredCone::trivial(dim)],
            pieces,
            contributions: Vec::new(),
            certified,
        }
    }

    pub fn piece(&self, colored_cone: usize) -> Option<&PolyhedralComplex> {
        self.pieces.get(&colored_cone)
    }

    fn add(&mut self, id: usize, c: PolyhedralComplex) -> Result<()> {
        if c.is_empty() {
            return Ok(());
        }
        let merged = match self.pieces.remove(&id) {
            Some(old) => old.union(&c)?,
            None => c,
        };
        self.pieces.insert(id, merged);
        Ok(())
    }
}

fn closure_over(z: &ToricFan, trop: &PolyhedralComplex) -> Result<Vec<(usize, usize, PolyhedralComplex)>> {
    let ext = extended_closure(trop, z.cones())?;
    ext.pieces
        .par_iter()
        .map(|(&tid, piece)| {
            let (cid, image) = psi_bar_complex(z, tid, piece)?;
            Ok((tid, cid, image))
        })
        .collect()
}

/// `trop_G(Ȳ) = ψ̄(trop_𝕋(Ȳ))` in the embedding given by `fan`.
pub fn trop_closure(d: &SpaceDescriptor, fan: &ColoredFan, y: &[TropicalPolynomial], mode: ClosureMode) -> Result<SphericalTrop> {
    check_fan_layout(d, fan)?;
    let t = toric_tropicalization(d, y)?;
    let colored = fan.all_cones();
    let mut out = SphericalTrop {
        colored: colored.clone(),
        pieces: BTreeMap::new(),
        contributions: Vec::new(),
        certified: t.certified,
    };
    match mode {
        ClosureMode::Global => {
            let z = build_fan_z(fan, AFamily::AtLeastOne)?;
            for (tid, cid, image) in closure_over(&z, &t.complex)? {
                out.contributions.push(Contribution {
                    simple_embedding: None,
                    toric_cone: tid,
                    colored_cone: cid,
                });
                out.add(cid, image)?;
            }
        }
        ClosureMode::PerCone => {
            for k in 0..fan.maximal_cones().len() {
                let sub = fan.simple_subfan(k);
                let z = build_fan_z(&sub, AFamily::AtLeastOne)?;
                for (tid, local, image) in closure_over(&z, &t.complex)? {
                    let cid = colored
                        .iter()
                        .position(|c| *c == z.colored_cones()[local])
                        .expect("faces of a member are cones of the fan");
                    out.contributions.push(Contribution {
                        simple_embedding: Some(k),
                        toric_cone: tid,
                        colored_cone: cid,
                    });
                    out.add(cid, image)?;
                }
            }
        }
    }
    out.contributions.sort();
    Ok(out)
}

fn check_fan_layout(d: &SpaceDescriptor, fan: &ColoredFan) -> Result<()> {
    if LatticeLayout::from_palette(fan.palette())? != d.layout {
        return Err(Error::LayoutMismatch("fan palette does not match the descriptor".into()));
    }
    Ok(())
}

/// The closure of a set of valuations of `G/H` inside `trop_G(X)`: for each
/// colored cone `σ` and cell `P` with `relint(σ) ∩ rec(P) ≠ ∅`, the image of
/// `P` modulo `span(σ)`.
pub fn closure_in_embedding(fan: &ColoredFan, c: &PolyhedralComplex) -> Result<BTreeMap<usize, PolyhedralComplex>> {
    let recessions: Vec<Cone> = c.cells().iter().map(|p| p.recession_cone()).collect::<Result<_>>()?;
    let mut out = BTreeMap::new();
    for (id, cc) in fan.all_cones().iter().enumerate() {
        let reduce = cc.sigma.span().reduction_map();
        let mut cells = Vec::new();
        for (cell, rec) in c.cells().iter().zip(&recessions) {
            if cc.sigma.relint_meets(rec)? {
                cells.push(cell.linear_image(&reduce)?);
            }
        }
        let piece = PolyhedralComplex::new(c.ambient_dim(), cells)?;
        if !piece.is_empty() {
            out.insert(id, piece);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitComparison {
    pub colored_cone: usize,
    /// Closure of `trop_G(Y)` on this orbit.
    pub closure_of_trop: PolyhedralComplex,
    /// `trop_G(Ȳ)` on this orbit.
    pub trop_of_closure: PolyhedralComplex,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub orbits: Vec<OrbitComparison>,
    pub equal: bool,
    pub certified: bool,
}

/// Compares `trop_G(Ȳ)` (closure in `Z`, then `ψ̄`) with the closure of
/// `trop_G(Y)` (`ψ`, then closure in `trop_G(X)`), orbit by orbit.
pub fn check_closure_commutes(d: &SpaceDescriptor, fan: &ColoredFan, y: &[TropicalPolynomial], mode: ClosureMode) -> Result<ClosureReport> {
    let lhs = trop_closure(d, fan, y, mode)?;
    let dense = trop_subvariety(d, y)?;
    let rhs = closure_in_embedding(fan, &dense.complex)?;
    let dim = d.layout.small_dim();
    let mut orbits = Vec::new();
    for id in 0..lhs.colored.len() {
        let a = lhs.pieces.get(&id).cloned().unwrap_or_else(|| PolyhedralComplex::empty(dim));
        let b = rhs.get(&id).cloned().unwrap_or_else(|| PolyhedralComplex::empty(dim));
        if a.is_empty() && b.is_empty() {
            continue;
        }
        let equal = a.support_eq(&b)?;
        orbits.push(OrbitComparison {
            colored_cone: id,
            trop_of_closure: a,
            closure_of_trop: b,
            equal,
        });
    }
    Ok(ClosureReport {
        equal: orbits.iter().all(|o| o.equal),
        orbits,
        certified: lhs.certified && dense.certified,
    })
}

/// Whether global mode is available for this fan.
pub fn supports_global_mode(fan: &ColoredFan) -> Result<bool> {
    is_polyhedral(fan)
}

/// Piecewise pushforward: the piece on orbit `id` is mapped by `maps[id]`
/// into the target orbit it names.
pub fn push_tropicalization(maps: &BTreeMap<usize, (usize, LinearMap)>, t: &SphericalTrop) -> Result<BTreeMap<usize, PolyhedralComplex>> {
    let mut out: BTreeMap<usize, PolyhedralComplex> = BTreeMap::new();
    for (&id, piece) in &t.pieces {
        if piece.is_empty() {
            continue;
        }
        let (target, map) = maps.get(&id).ok_or(Error::UnmappedOrbit(id))?;
        let image = piece.linear_image(map)?;
        let merged = match out.remove(target) {
            Some(old) => old.union(&image)?,
            None => image,
        };
        out.insert(*target, merged);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{rat, Polyhedron};

    fn fin(xs: &[i64]) -> Vec<ExtRational> {
        xs.iter().map(|&x| ExtRational::Finite(rat(x))).collect()
    }

    #[test]
    fn psi_takes_block_minima() {
        let l = LatticeLayout::new(vec![2], 0).unwrap();
        assert_eq!(psi(&l, &fin(&[1, 0])).unwrap(), QVector::from_ints(&[0]));
        assert_eq!(
            psi(&l, &[ExtRational::Infinity, ExtRational::Finite(rat(2))]).unwrap(),
            QVector::from_ints(&[2])
        );
        assert!(matches!(
            psi(&l, &[ExtRational::Infinity, ExtRational::Infinity]),
            Err(Error::DomainViolation(_))
        ));
        let ones = LatticeLayout::new(vec![1, 1], 1).unwrap();
        assert_eq!(psi(&ones, &fin(&[3, -4, 5])).unwrap(), QVector::from_ints(&[3, -4, 5]));
    }

    #[test]
    fn punctured_plane_lines() {
        let d = SpaceDescriptor::parse(vec![2], 0, &[]).unwrap();
        assert_eq!(valuation_cone(&d).unwrap(), Cone::full(1));
        let y = d.parse_polynomials(&["S12 + S11 + 1"]).unwrap();
        let left = Polyhedron::from_constraints(1, &[HalfSpace::new(QVector::from_ints(&[-1]), rat(0))], &[]).unwrap();
        assert_eq!(trop_subvariety(&d, &y).unwrap().complex.cells(), &[left]);
        let y = d.parse_polynomials(&["S12 + S11"]).unwrap();
        assert_eq!(trop_subvariety(&d, &y).unwrap().complex, PolyhedralComplex::full(1));
    }

    #[test]
    fn omega_has_product_size() {
        let l = LatticeLayout::new(vec![2, 3], 1).unwrap();
        assert_eq!(omega(&l).len(), 6);
    }
}
