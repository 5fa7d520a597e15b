//! Toric data of a spherical embedding: the lattice inclusion `𝒩 ↪ N`, the
//! fan `Σ_Z`, the cover fan `Σ_Ẑ`, the torus `Γ` and lifted colored fans.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::colored_fans::{polyhedrality_witness, validate_colored_fan, ColoredCone, ColoredFan, Palette};
use crate::error::{Error, Result};
use crate::qpoly::{Cone, LinearMap, QVector};

/// Coordinates of `N ≅ ℤ^{s₁+⋯+s_r+m}`: blocks `v_i1 … v_is_i` followed by
/// `w_1 … w_m`. The small lattice `𝒩` has basis `v_1 … v_r, w_1 … w_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeLayout {
    s: Vec<usize>,
    m: usize,
    offsets: Vec<usize>,
}

impl LatticeLayout {
    pub fn new(s: Vec<usize>, m: usize) -> Result<Self> {
        if s.contains(&0) {
            return Err(Error::LayoutMismatch("every block needs s_i ≥ 1".into()));
        }
        let mut offsets = Vec::with_capacity(s.len());
        let mut acc = 0;
        for &si in &s {
            offsets.push(acc);
            acc += si;
        }
        Ok(LatticeLayout { s, m, offsets })
    }

    /// The layout whose blocks are the colors of a palette with
    /// `ρ(D_i) = v_i`.
    pub fn from_palette(palette: &Palette) -> Result<Self> {
        let r = palette.colors().len();
        if palette.dim() < r {
            return Err(Error::LayoutMismatch(format!("{r} colors in a lattice of rank {}", palette.dim())));
        }
        for (i, c) in palette.colors().iter().enumerate() {
            if c.rho != QVector::unit(palette.dim(), i) {
                return Err(Error::LayoutMismatch(format!(
                    "color `{}` must have ρ equal to basis vector v{}",
                    c.id,
                    i + 1
                )));
            }
        }
        Self::new(palette.colors().iter().map(|c| c.rank).collect(), palette.dim() - r)
    }

    pub fn r(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `dim 𝒩 = r + m`.
    pub fn small_dim(&self) -> usize {
        self.r() + self.m
    }

    /// `dim N = s₁ + ⋯ + s_r + m`.
    pub fn big_dim(&self) -> usize {
        self.block_len() + self.m
    }

    /// Number of `v_ij` coordinates.
    pub fn block_len(&self) -> usize {
        self.s.iter().sum()
    }

    /// Coordinate of `v_ij` (0-based `i`, `j`).
    pub fn v(&self, i: usize, j: usize) -> usize {
        self.offsets[i] + j
    }

    /// Coordinate of `w_k` (0-based).
    pub fn w(&self, k: usize) -> usize {
        self.block_len() + k
    }

    pub fn block(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.s[i]
    }

    /// `(i, j)` for a `v_ij` coordinate.
    pub fn group_of(&self, idx: usize) -> Option<(usize, usize)> {
        (0..self.r()).find(|&i| self.block(i).contains(&idx)).map(|i| (i, idx - self.offsets[i]))
    }

    fn label(prefix: &str, parts: &[usize], wide: bool) -> String {
        let sep = if wide { "_" } else { "" };
        let body: Vec<String> = parts.iter().map(|p| (p + 1).to_string()).collect();
        format!("{prefix}{}", body.join(sep))
    }

    fn wide(&self) -> bool {
        self.r() > 9 || self.s.iter().any(|&s| s > 9)
    }

    /// Coordinate ring variables `S_ij`, `T_k` in coordinate order.
    pub fn variable_names(&self) -> Vec<String> {
        let wide = self.wide();
        let mut out = Vec::with_capacity(self.big_dim());
        for i in 0..self.r() {
            for j in 0..self.s[i] {
                out.push(Self::label("S", &[i, j], wide));
            }
        }
        for k in 0..self.m {
            out.push(Self::label("T", &[k], false));
        }
        out
    }

    /// Basis names `v_ij`, `w_k` of `N` in coordinate order.
    pub fn basis_names(&self) -> Vec<String> {
        let wide = self.wide();
        let mut out = Vec::with_capacity(self.big_dim());
        for i in 0..self.r() {
            for j in 0..self.s[i] {
                out.push(Self::label("v", &[i, j], wide));
            }
        }
        for k in 0..self.m {
            out.push(Self::label("w", &[k], false));
        }
        out
    }

    /// `inc: 𝒩 → N`, `v_i ↦ Σ_j v_ij`, `w_k ↦ w_k`.
    pub fn inc(&self) -> LinearMap {
        let n = self.small_dim();
        let mut rows = Vec::with_capacity(self.big_dim());
        for i in 0..self.r() {
            for _ in 0..self.s[i] {
                rows.push(QVector::unit(n, i));
            }
        }
        for k in 0..self.m {
            rows.push(QVector::unit(n, self.r() + k));
        }
        LinearMap::from_rows(n, rows).expect("rows have the small dimension")
    }

    pub fn unit(&self, idx: usize) -> QVector {
        QVector::unit(self.big_dim(), idx)
    }
}

/// Which subsets `𝔞 ⊆ {v_ij}` are admissible.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum AFamily {
    /// Each uncolored block misses at least one `v_ij`.
    #[default]
    AtLeastOne,
    /// Each uncolored block misses exactly one `v_ij`; colored blocks are
    /// unconstrained.
    ExactlyOne,
}

impl AFamily {
    fn allows(self, block_size: usize, chosen: usize, colored: bool) -> bool {
        if colored {
            return true;
        }
        match self {
            AFamily::AtLeastOne => chosen < block_size,
            AFamily::ExactlyOne => chosen + 1 == block_size,
        }
    }
}

pub fn is_admissible(layout: &LatticeLayout, colored: &BTreeSet<usize>, family: AFamily, a: &BTreeSet<usize>) -> bool {
    if a.iter().any(|&x| x >= layout.block_len()) {
        return false;
    }
    (0..layout.r()).all(|i| {
        let chosen = layout.block(i).filter(|x| a.contains(x)).count();
        family.allows(layout.s[i], chosen, colored.contains(&i))
    })
}

/// Admissible and not contained in a larger admissible subset.
pub fn is_maximal_admissible(layout: &LatticeLayout, colored: &BTreeSet<usize>, family: AFamily, a: &BTreeSet<usize>) -> bool {
    is_admissible(layout, colored, family, a)
        && (0..layout.block_len()).filter(|x| !a.contains(x)).all(|x| {
            let mut b = a.clone();
            b.insert(x);
            !is_admissible(layout, colored, family, &b)
        })
}

/// Lazy enumeration of `𝔄(𝔉)` as sets of `v_ij` coordinates, in mixed-radix
/// order over per-block masks.
pub struct AStream {
    choices: Vec<Vec<Vec<usize>>>,
    counter: Vec<usize>,
    done: bool,
}

impl Iterator for AStream {
    type Item = BTreeSet<usize>;

    fn next(&mut self) -> Option<BTreeSet<usize>> {
        if self.done {
            return None;
        }
        let out: BTreeSet<usize> = self
            .counter
            .iter()
            .zip(&self.choices)
            .flat_map(|(&c, ch)| ch[c].iter().copied())
            .collect();
        let mut k = 0;
        loop {
            if k == self.counter.len() {
                self.done = true;
                break;
            }
            self.counter[k] += 1;
            if self.counter[k] < self.choices[k].len() {
                break;
            }
            self.counter[k] = 0;
            k += 1;
        }
        Some(out)
    }
}

/// `colored` holds block indices `i` with `D_i ∈ 𝔉`.
pub fn enumerate_a(layout: &LatticeLayout, colored: &BTreeSet<usize>, family: AFamily) -> AStream {
    let choices: Vec<Vec<Vec<usize>>> = (0..layout.r())
        .map(|i| {
            let si = layout.s[i];
            (0u64..1 << si)
                .filter(|mask| family.allows(si, mask.count_ones() as usize, colored.contains(&i)))
                .map(|mask| (0..si).filter(|j| mask >> j & 1 == 1).map(|j| layout.v(i, j)).collect())
                .collect()
        })
        .collect();
    let done = choices.iter().any(Vec::is_empty);
    AStream {
        counter: vec![0; choices.len()],
        choices,
        done,
    }
}

fn colored_blocks(cc: &ColoredCone, palette: &Palette) -> Result<BTreeSet<usize>> {
    cc.colors.iter().map(|id| palette.index_of(id)).collect()
}

/// `σ_𝔞 = cone(𝔞 ∪ inc(σ(1)))`.
pub fn build_sigma_a(cc: &ColoredCone, a: &BTreeSet<usize>, layout: &LatticeLayout, palette: &Palette) -> Result<Cone> {
    let colored = colored_blocks(cc, palette)?;
    if !is_admissible(layout, &colored, AFamily::AtLeastOne, a) {
        return Err(Error::InvalidAFamily(format!("{a:?} for colors {:?}", cc.colors)));
    }
    let inc = layout.inc();
    let mut gens: Vec<QVector> = a.iter().map(|&x| layout.unit(x)).collect();
    for u in cc.uncolored_rays(palette)? {
        gens.push(inc.apply(&u)?);
    }
    Cone::from_generators(layout.big_dim(), &gens, &[])
}

/// A colored cone and admissible subset producing a toric cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Provenance {
    /// Index into [`ColoredFan::all_cones`].
    pub colored_cone: usize,
    pub a: BTreeSet<usize>,
}

/// The fan `Σ_Z` in `N_ℚ` with every cone listed (id 0 is the origin).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricFan {
    layout: LatticeLayout,
    rays: Vec<QVector>,
    maximal: Vec<Cone>,
    cones: Vec<Cone>,
    provenance: Vec<Vec<Provenance>>,
    colored: Vec<ColoredCone>,
}

impl ToricFan {
    pub fn layout(&self) -> &LatticeLayout {
        &self.layout
    }

    pub fn ambient_dim(&self) -> usize {
        self.layout.big_dim()
    }

    /// Primitive ray generators, sorted.
    pub fn rays(&self) -> &[QVector] {
        &self.rays
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal
    }

    /// All cones, by dimension and then canonically.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone_id(&self, c: &Cone) -> Option<usize> {
        self.cones.iter().position(|x| x == c)
    }

    pub fn provenance(&self, cone_id: usize) -> &[Provenance] {
        &self.provenance[cone_id]
    }

    /// The colored cones referred to by provenance records.
    pub fn colored_cones(&self) -> &[ColoredCone] {
        &self.colored
    }

    /// Ray indices of a cone.
    pub fn ray_indices(&self, c: &Cone) -> Vec<usize> {
        c.rays()
            .iter()
            .map(|r| self.rays.iter().position(|x| x == r).expect("cone rays are fan rays"))
            .collect()
    }
}

/// Every pairwise intersection of the given cones is a face of each.
pub fn check_fan_axioms(cones: &[Cone]) -> Result<()> {
    for (i, a) in cones.iter().enumerate() {
        if !a.is_strictly_convex() {
            return Err(Error::FanAxiomViolation(format!("cone {i} has lineality")));
        }
        for (j, b) in cones.iter().enumerate().skip(i + 1) {
            let meet = a.intersect(b)?;
            if !meet.is_face_of(a)? || !meet.is_face_of(b)? {
                return Err(Error::FanAxiomViolation(format!(
                    "cones {i} and {j} meet in {meet:?}, not a common face"
                )));
            }
        }
    }
    Ok(())
}

fn check_buildable(fan: &ColoredFan) -> Result<()> {
    if !fan.is_strictly_convex()? {
        return Err(Error::NotStrictlyConvex("the builder needs strictly convex colored cones".into()));
    }
    let report = validate_colored_fan(fan)?;
    if !report.is_valid() {
        return Err(Error::InvalidColoredFan(format!("{report:?}")));
    }
    if let Some((i, j)) = polyhedrality_witness(fan)? {
        return Err(Error::NonPolyhedralFan(i, j));
    }
    Ok(())
}

fn provenance_of(tau: &Cone, colored: &[ColoredCone], layout: &LatticeLayout, palette: &Palette) -> Result<Vec<Provenance>> {
    let inc = layout.inc();
    let units: BTreeSet<usize> = tau
        .rays()
        .iter()
        .filter_map(|r| (0..layout.block_len()).find(|&x| *r == layout.unit(x)))
        .collect();
    let mut out = Vec::new();
    for (id, cc) in colored.iter().enumerate() {
        let mut a = units.clone();
        for u in cc.uncolored_rays(palette)? {
            let image = inc.apply(&u)?;
            a.retain(|&x| layout.unit(x) != image);
        }
        let blocks = colored_blocks(cc, palette)?;
        if is_admissible(layout, &blocks, AFamily::AtLeastOne, &a) && build_sigma_a(cc, &a, layout, palette)? == *tau {
            out.push(Provenance { colored_cone: id, a });
        }
    }
    Ok(out)
}

/// `Σ_Z` of a strictly convex, valid, polyhedral colored fan whose palette
/// has `ρ(D_i) = v_i`.
pub fn build_fan_z(fan: &ColoredFan, family: AFamily) -> Result<ToricFan> {
    check_buildable(fan)?;
    let palette = fan.palette();
    let layout = LatticeLayout::from_palette(palette)?;
    let mut jobs = Vec::new();
    for cc in fan.maximal_cones() {
        let blocks = colored_blocks(cc, palette)?;
        for a in enumerate_a(&layout, &blocks, family) {
            if is_maximal_admissible(&layout, &blocks, family, &a) {
                jobs.push((cc, a));
            }
        }
    }
    let built: BTreeSet<Cone> = jobs
        .par_iter()
        .map(|(cc, a)| build_sigma_a(cc, a, &layout, palette))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .collect();
    let built: Vec<Cone> = built.into_iter().collect();
    let mut maximal = Vec::new();
    for (i, c) in built.iter().enumerate() {
        let mut contained = false;
        for (j, d) in built.iter().enumerate() {
            if i != j && d.contains_cone(c)? {
                contained = true;
                break;
            }
        }
        if !contained {
            maximal.push(c.clone());
        }
    }
    check_fan_axioms(&maximal)?;

    let all: BTreeSet<Cone> = maximal.iter().flat_map(Cone::faces).collect();
    let mut cones: Vec<Cone> = all.into_iter().collect();
    cones.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
    let rays: BTreeSet<QVector> = cones.iter().filter(|c| c.dim() == 1).map(|c| c.rays()[0].clone()).collect();

    let colored = fan.all_cones();
    let provenance: Vec<Vec<Provenance>> = cones
        .par_iter()
        .map(|c| provenance_of(c, &colored, &layout, palette))
        .collect::<Result<_>>()?;
    if let Some(id) = provenance.iter().position(Vec::is_empty) {
        return Err(Error::ProvenanceMissing(id));
    }
    Ok(ToricFan {
        layout,
        rays: rays.into_iter().collect(),
        maximal,
        cones,
        provenance,
        colored,
    })
}

/// The cover fan `Σ_Ẑ` in `N̂ = N ⊕ ℚⁿ` together with `p_*: N̂ → N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatFan {
    layout: LatticeLayout,
    uncolored_rays: Vec<QVector>,
    maximal: Vec<Cone>,
    sources: Vec<usize>,
    p_star: LinearMap,
}

impl HatFan {
    pub fn layout(&self) -> &LatticeLayout {
        &self.layout
    }

    /// `n`, the number of uncolored rays of `Σ`.
    pub fn n(&self) -> usize {
        self.uncolored_rays.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.layout.big_dim() + self.n()
    }

    /// `u_1, …, u_n` in `𝒩`.
    pub fn uncolored_rays(&self) -> &[QVector] {
        &self.uncolored_rays
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal
    }

    /// For each hat cone, the index of the maximal `Σ_Z` cone it covers.
    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn p_star(&self) -> &LinearMap {
        &self.p_star
    }

    /// `S_ij`, `T_k`, `E_ℓ`.
    pub fn variable_names(&self) -> Vec<String> {
        let mut names = self.layout.variable_names();
        names.extend((0..self.n()).map(|l| format!("E{}", l + 1)));
        names
    }
}

/// Exponent matrix of `Γ ≅ (ℂ*)ⁿ`: row `ℓ` is `(−inc(u_ℓ), e_ℓ)` over the
/// coordinates `S_ij`, `T_k`, `E_ℓ'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTorus {
    pub rows: Vec<QVector>,
}

fn uncolored_rays_of(fan: &ColoredFan) -> Vec<QVector> {
    let set: BTreeSet<QVector> = fan
        .all_cones()
        .iter()
        .filter(|c| c.sigma.dim() == 1 && c.colors.is_empty())
        .map(|c| c.sigma.rays()[0].clone())
        .collect();
    set.into_iter().collect()
}

pub fn build_fan_zhat(fan: &ColoredFan, family: AFamily) -> Result<(ToricFan, HatFan, GammaTorus)> {
    let z = build_fan_z(fan, family)?;
    let layout = z.layout.clone();
    let palette = fan.palette();
    let us = uncolored_rays_of(fan);
    let n = us.len();
    let big = layout.big_dim();
    let inc = layout.inc();
    let embed = |v: &QVector| -> QVector { v.concat(&QVector::zeros(n)) };
    let e = |l: usize| -> QVector { QVector::unit(big + n, big + l) };

    let mut maximal = Vec::new();
    let mut sources = Vec::new();
    for (mi, c) in z.maximal.iter().enumerate() {
        let id = z.cone_id(c).expect("maximal cones are listed");
        let prov = &z.provenance[id][0];
        let cc = &z.colored[prov.colored_cone];
        let mut gens: Vec<QVector> = prov.a.iter().map(|&x| embed(&layout.unit(x))).collect();
        for u in cc.uncolored_rays(palette)? {
            let l = us.iter().position(|x| *x == u).expect("uncolored rays are rays of the fan");
            gens.push(e(l));
        }
        maximal.push(Cone::from_generators(big + n, &gens, &[])?);
        sources.push(mi);
    }

    let mut cols: Vec<QVector> = (0..big).map(|x| layout.unit(x)).collect();
    for u in &us {
        cols.push(inc.apply(u)?);
    }
    let p_star = LinearMap::from_columns(big, &cols);

    let rows = us
        .iter()
        .enumerate()
        .map(|(l, u)| Ok(inc.apply(u)?.neg().concat(&QVector::unit(n, l))))
        .collect::<Result<Vec<_>>>()?;
    let hat = HatFan {
        layout,
        uncolored_rays: us,
        maximal,
        sources,
        p_star,
    };
    Ok((z, hat, GammaTorus { rows }))
}

/// One squarefree exponent vector per maximal hat cone: the product of the
/// variables whose basis ray is not in the cone.
pub fn irrelevant_monomials(hat: &HatFan) -> Vec<Vec<u32>> {
    let d = hat.ambient_dim();
    hat.maximal
        .iter()
        .map(|c| {
            (0..d)
                .map(|x| u32::from(!c.contains(&QVector::unit(d, x)).expect("dimensions agree")))
                .collect()
        })
        .collect()
}

/// `π_*: 𝒩_ℚ → 𝓝_ℚ` and the identification of colors `𝑫 ↦ D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftData {
    pub pi_star: LinearMap,
    /// Pairs (color of the lifted-to fan, color of `𝒩`).
    pub colors: Vec<(String, String)>,
}

/// Rebuilds a colored fan over `𝓝` as a colored fan over `𝒩`.
///
/// Uncolored rays lift through the inverse of `π_*` restricted to the
/// `w`-coordinates; a colored ray `ρ(𝑫)` becomes `ρ(D)`. The valuation cone
/// is `π_*⁻¹(𝓥)`.
pub fn lift_colored_fan(bold: &ColoredFan, lift: &LiftData, layout: &LatticeLayout, palette: &Palette) -> Result<ColoredFan> {
    let small = layout.small_dim();
    if lift.pi_star.domain_dim() != small || palette.dim() != small {
        return Err(Error::DimensionMismatch {
            expected: small,
            found: lift.pi_star.domain_dim(),
        });
    }
    if lift.pi_star.codomain_dim() != bold.dim() {
        return Err(Error::DimensionMismatch {
            expected: bold.dim(),
            found: lift.pi_star.codomain_dim(),
        });
    }
    let w_cols: Vec<usize> = (layout.r()..small).collect();
    let inverse = lift
        .pi_star
        .restrict_columns(&w_cols)
        .inverse()
        .ok_or(Error::LiftNotInvertible)?;
    let ident: BTreeMap<&str, &str> = lift.colors.iter().map(|(b, c)| (b.as_str(), c.as_str())).collect();
    let lift_ray = |r: &QVector| -> Result<QVector> {
        let x = inverse.apply(r)?;
        let mut out = QVector::zeros(small);
        for (k, c) in x.into_coords().into_iter().enumerate() {
            out[layout.r() + k] = c;
        }
        Ok(out)
    };

    let mut cones = Vec::new();
    for cc in bold.maximal_cones() {
        if !cc.sigma.is_strictly_convex() {
            return Err(Error::NotStrictlyConvex("lifted fans must be strictly convex".into()));
        }
        let mut colored_dirs: BTreeMap<QVector, &str> = BTreeMap::new();
        for id in &cc.colors {
            colored_dirs.insert(bold.palette().rho(id)?.primitive(), id.as_str());
        }
        let mut gens = Vec::new();
        let mut colors = BTreeSet::new();
        for r in cc.sigma.rays() {
            match colored_dirs.get(r) {
                Some(id) => {
                    let target = ident
                        .get(id)
                        .ok_or_else(|| Error::ColorMismatch(format!("color `{id}` has no identification")))?;
                    gens.push(palette.rho(target)?.clone());
                    colors.insert(target.to_string());
                }
                None => gens.push(lift_ray(r)?),
            }
        }
        cones.push(ColoredCone {
            sigma: Cone::from_generators(small, &gens, &[])?,
            colors,
        });
    }
    let valuation = bold.valuation_cone().preimage(&lift.pi_star)?;
    ColoredFan::new(palette.clone(), valuation, cones)
}
