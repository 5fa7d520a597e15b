//! Palettes, colored cones and colored fans.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::qpoly::{Cone, QVector};

/// A color `D` with its valuation `ρ(D)` and the rank `s` of its module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color {
    pub id: String,
    pub rho: QVector,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Palette {
    dim: usize,
    colors: Vec<Color>,
}

impl Palette {
    pub fn new(dim: usize, colors: Vec<Color>) -> Result<Self> {
        let mut ids = BTreeSet::new();
        for c in &colors {
            if c.rho.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.rho.dim(),
                });
            }
            if c.rank == 0 {
                return Err(Error::LayoutMismatch(format!("color `{}` has rank 0", c.id)));
            }
            if !ids.insert(c.id.clone()) {
                return Err(Error::LayoutMismatch(format!("duplicate color id `{}`", c.id)));
            }
        }
        Ok(Palette { dim, colors })
    }

    /// Colors `D1, …, Dr` with `ρ(Di)` the `i`-th basis vector of `ℚ^dim`.
    pub fn standard(dim: usize, ranks: &[usize]) -> Result<Self> {
        let colors = ranks
            .iter()
            .enumerate()
            .map(|(i, &rank)| Color {
                id: format!("D{}", i + 1),
                rho: QVector::unit(dim, i),
                rank,
            })
            .collect();
        Palette::new(dim, colors)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.colors
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| Error::UnknownColor(id.to_string()))
    }

    pub fn get(&self, id: &str) -> Result<&Color> {
        Ok(&self.colors[self.index_of(id)?])
    }

    pub fn rho(&self, id: &str) -> Result<&QVector> {
        Ok(&self.get(id)?.rho)
    }
}

/// The valuation cone `𝒱`, possibly with lineality.
pub type ValuationCone = Cone;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredCone {
    pub sigma: Cone,
    pub colors: BTreeSet<String>,
}

impl ColoredCone {
    pub fn new(sigma: Cone, colors: impl IntoIterator<Item = impl Into<String>>) -> Self {
        ColoredCone {
            sigma,
            colors: colors.into_iter().map(Into::into).collect(),
        }
    }

    pub fn uncolored(sigma: Cone) -> Self {
        ColoredCone {
            sigma,
            colors: BTreeSet::new(),
        }
    }

    pub fn trivial(dim: usize) -> Self {
        Self::uncolored(Cone::origin(dim))
    }

    /// Rays of `σ` that are not spanned by `ρ(D)` for a color `D ∈ 𝔉`.
    pub fn uncolored_rays(&self, palette: &Palette) -> Result<Vec<QVector>> {
        let mut colored = BTreeSet::new();
        for id in &self.colors {
            colored.insert(palette.rho(id)?.primitive());
        }
        Ok(self
            .sigma
            .rays()
            .iter()
            .filter(|r| !colored.contains(*r))
            .cloned()
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredConeReport {
    /// `σ = cone(ρ(𝔉) ∪ (σ ∩ 𝒱))`.
    pub generated: bool,
    /// `relint(σ) ∩ 𝒱 ≠ ∅`.
    pub meets_valuation_cone: bool,
    pub strictly_convex: bool,
    /// `0 ∉ ρ(𝔉)`.
    pub colors_nonzero: bool,
}

impl ColoredConeReport {
    pub fn is_valid(&self) -> bool {
        self.generated && self.meets_valuation_cone
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.strictly_convex && self.colors_nonzero
    }
}

pub fn validate_colored_cone(cc: &ColoredCone, valuation: &ValuationCone, palette: &Palette) -> Result<ColoredConeReport> {
    let dim = cc.sigma.ambient_dim();
    if valuation.ambient_dim() != dim || palette.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: if valuation.ambient_dim() != dim { valuation.ambient_dim() } else { palette.dim() },
        });
    }
    let mut gens = Vec::new();
    let mut colors_nonzero = true;
    for id in &cc.colors {
        let rho = palette.rho(id)?;
        colors_nonzero &= !rho.is_zero();
        gens.push(rho.clone());
    }
    let inside = cc.sigma.intersect(valuation)?;
    gens.extend(inside.rays().iter().cloned());
    let generated_cone = Cone::from_generators(dim, &gens, inside.lineality())?;
    Ok(ColoredConeReport {
        generated: generated_cone == cc.sigma,
        meets_valuation_cone: cc.sigma.relint_meets(valuation)?,
        strictly_convex: cc.sigma.is_strictly_convex(),
        colors_nonzero,
    })
}

/// `(τ, 𝔉 ∩ ρ⁻¹(τ))`.
pub fn colored_face(cc: &ColoredCone, tau: &Cone, palette: &Palette) -> Result<ColoredCone> {
    if !tau.is_face_of(&cc.sigma)? {
        return Err(Error::NotAFace(format!("{tau:?} is not a face of {:?}", cc.sigma)));
    }
    let mut colors = BTreeSet::new();
    for id in &cc.colors {
        if tau.contains(palette.rho(id)?)? {
            colors.insert(id.clone());
        }
    }
    Ok(ColoredCone {
        sigma: tau.clone(),
        colors,
    })
}

/// A colored fan, stored by its maximal colored cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredFan {
    palette: Palette,
    valuation: ValuationCone,
    cones: Vec<ColoredCone>,
}

impl ColoredFan {
    /// Duplicates and colored faces of other members are dropped.
    pub fn new(palette: Palette, valuation: ValuationCone, cones: Vec<ColoredCone>) -> Result<Self> {
        let dim = palette.dim();
        if valuation.ambient_dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: valuation.ambient_dim(),
            });
        }
        for c in &cones {
            if c.sigma.ambient_dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.sigma.ambient_dim(),
                });
            }
            for id in &c.colors {
                palette.index_of(id)?;
            }
        }
        let unique: BTreeSet<ColoredCone> = cones.into_iter().collect();
        let unique: Vec<ColoredCone> = unique.into_iter().collect();
        let mut maximal = Vec::new();
        for (i, c) in unique.iter().enumerate() {
            let mut is_face = false;
            for (j, d) in unique.iter().enumerate() {
                if i != j && c.sigma != d.sigma && c.sigma.is_face_of(&d.sigma)? && colored_face(d, &c.sigma, &palette)? == *c {
                    is_face = true;
                    break;
                }
            }
            if !is_face {
                maximal.push(c.clone());
            }
        }
        if maximal.is_empty() {
            maximal.push(ColoredCone::trivial(dim));
        }
        Ok(ColoredFan {
            palette,
            valuation,
            cones: maximal,
        })
    }

    pub fn dim(&self) -> usize {
        self.palette.dim()
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    pub fn valuation_cone(&self) -> &ValuationCone {
        &self.valuation
    }

    pub fn maximal_cones(&self) -> &[ColoredCone] {
        &self.cones
    }

    /// Every colored face of every member, ordered by dimension and then
    /// canonically. The index in this list is the colored cone id.
    pub fn all_cones(&self) -> Vec<ColoredCone> {
        let mut set = BTreeSet::new();
        for c in &self.cones {
            for tau in c.sigma.faces() {
                set.insert(colored_face(c, &tau, &self.palette).expect("faces of members are faces"));
            }
        }
        let mut out: Vec<ColoredCone> = set.into_iter().collect();
        out.sort_by(|a, b| a.sigma.dim().cmp(&b.sigma.dim()).then_with(|| a.cmp(b)));
        out
    }

    /// The simple fan generated by one member.
    pub fn simple_subfan(&self, maximal_index: usize) -> ColoredFan {
        ColoredFan {
            palette: self.palette.clone(),
            valuation: self.valuation.clone(),
            cones: vec![self.cones[maximal_index].clone()],
        }
    }

    pub fn is_strictly_convex(&self) -> Result<bool> {
        for c in &self.cones {
            if !c.sigma.is_strictly_convex() {
                return Ok(false);
            }
            for id in &c.colors {
                if self.palette.rho(id)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanReport {
    /// One report per maximal colored cone.
    pub cones: Vec<ColoredConeReport>,
    /// Ids (into [`ColoredFan::all_cones`]) of colored cones on the same
    /// cone with different color sets.
    pub color_conflicts: Vec<(usize, usize)>,
    /// Pairs of colored cones whose relative interiors share a point of
    /// `𝒱`, with such a point.
    pub overlaps: Vec<(usize, usize, QVector)>,
}

impl FanReport {
    pub fn is_valid(&self) -> bool {
        self.cones.iter().all(ColoredConeReport::is_valid) && self.color_conflicts.is_empty() && self.overlaps.is_empty()
    }
}

pub fn validate_colored_fan(fan: &ColoredFan) -> Result<FanReport> {
    let cones = fan
        .cones
        .iter()
        .map(|c| validate_colored_cone(c, &fan.valuation, &fan.palette))
        .collect::<Result<Vec<_>>>()?;
    let all = fan.all_cones();
    let mut by_sigma: BTreeMap<&Cone, usize> = BTreeMap::new();
    let mut color_conflicts = Vec::new();
    for (i, c) in all.iter().enumerate() {
        if let Some(&j) = by_sigma.get(&c.sigma) {
            color_conflicts.push((j, i));
        } else {
            by_sigma.insert(&c.sigma, i);
        }
    }
    let mut overlaps = Vec::new();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let (a, b) = (&all[i].sigma, &all[j].sigma);
            if a == b || !a.relints_meet(b)? {
                continue;
            }
            let meet = a.intersect(b)?;
            if meet.relint_meets(&fan.valuation)? {
                overlaps.push((i, j, meet.intersect(&fan.valuation)?.relint_point()));
            }
        }
    }
    Ok(FanReport {
        cones,
        color_conflicts,
        overlaps,
    })
}

/// First pair of distinct cones (ids into [`ColoredFan::all_cones`]) whose
/// relative interiors meet anywhere in `𝒩_ℚ`.
pub fn polyhedrality_witness(fan: &ColoredFan) -> Result<Option<(usize, usize)>> {
    let all = fan.all_cones();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let (a, b) = (&all[i].sigma, &all[j].sigma);
            if a != b && a.relints_meet(b)? {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

pub fn is_polyhedral(fan: &ColoredFan) -> Result<bool> {
    Ok(polyhedrality_witness(fan)?.is_none())
}
