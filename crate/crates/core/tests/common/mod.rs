#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sphtrop::colored_fans::{ColoredCone, ColoredFan, Palette};
use sphtrop::fan_builder::{LatticeLayout, LiftData};
use sphtrop::qpoly::{rat, Cone, HalfSpace, LinearMap, Polyhedron, QVector};
use sphtrop::spherical::SpaceDescriptor;
use sphtrop::trop_engine::TropicalPolynomial;

pub fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| s.to_string()).collect()
}

pub fn hs(a: &[i64], b: i64) -> HalfSpace {
    HalfSpace::new(QVector::from_ints(a), rat(b))
}

pub fn cone(dim: usize, gens: &[&[i64]]) -> Cone {
    Cone::from_int_generators(dim, gens).unwrap()
}

pub fn halfspace_cone(normal: &[i64]) -> Cone {
    Cone::from_inequalities(normal.len(), &[QVector::from_ints(normal)], &[]).unwrap()
}

/// `SL₃/SL₂` with coordinates `(x₃, x₂, x₁, y₁, y₂, y₃)`.
pub fn sl3() -> SpaceDescriptor {
    let layout = LatticeLayout::new(vec![3, 3], 0).unwrap();
    let vars = names(&["x3", "x2", "x1", "y1", "y2", "y3"]);
    let g = TropicalPolynomial::parse("x1*y1 + x2*y2 + x3*y3 - 1", &vars).unwrap();
    SpaceDescriptor::with_variables(layout, vars, vec![g]).unwrap()
}

/// `ℂ² ∖ 0` with `f₁₁ = y`, `f₁₂ = x`.
pub fn punctured() -> SpaceDescriptor {
    let layout = LatticeLayout::new(vec![2], 0).unwrap();
    SpaceDescriptor::with_variables(layout, names(&["y", "x"]), vec![]).unwrap()
}

pub fn punctured_poly(p: &str) -> Vec<TropicalPolynomial> {
    vec![TropicalPolynomial::parse(p, &names(&["y", "x"])).unwrap()]
}

pub fn sl2() -> SpaceDescriptor {
    SpaceDescriptor::parse(vec![4], 0, &["S11*S14 - S12*S13 - 1"]).unwrap()
}

/// The lifted space of `ℙ¹×ℙ¹∖Δ`, with the coordinate names of the example:
/// `f₁₁ = S₂₁`, `f₁₂ = S₁₁`, `f₂₁ = S₂₂`, `f₂₂ = S₁₂`.
pub fn p1p1_lifted() -> (SpaceDescriptor, Vec<String>) {
    let layout = LatticeLayout::new(vec![2, 2], 1).unwrap();
    let vars = names(&["S21", "S11", "S22", "S12", "T"]);
    (SpaceDescriptor::with_variables(layout, vars.clone(), vec![]).unwrap(), vars)
}

pub fn p1p1_lift() -> LiftData {
    LiftData {
        pi_star: LinearMap::from_int_rows(3, &[&[-1, -1, 1]]).unwrap(),
        colors: vec![],
    }
}

pub fn punctured_fan(ray: i64) -> ColoredFan {
    let palette = Palette::standard(1, &[2]).unwrap();
    ColoredFan::new(palette, Cone::full(1), vec![ColoredCone::uncolored(cone(1, &[&[ray]]))]).unwrap()
}

pub fn bl0_fan() -> ColoredFan {
    punctured_fan(1)
}

pub fn p2_minus_origin_fan() -> ColoredFan {
    punctured_fan(-1)
}

pub fn redblue_fan() -> ColoredFan {
    let palette = Palette::standard(2, &[3, 3]).unwrap();
    let v = halfspace_cone(&[-1, -1]);
    let red = ColoredCone::new(cone(2, &[&[1, 0], &[-2, 1]]), ["D1"]);
    let blue = ColoredCone::new(cone(2, &[&[0, 1], &[1, -2]]), ["D2"]);
    ColoredFan::new(palette, v, vec![red, blue]).unwrap()
}

pub fn left_ray() -> Polyhedron {
    Polyhedron::from_constraints(1, &[hs(&[-1], 0)], &[]).unwrap()
}

pub fn random_vector(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> QVector {
    QVector::from_ints(&(0..dim).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>())
}

pub fn random_cone(rng: &mut ChaCha8Rng, max_dim: usize, max_gens: usize) -> Cone {
    let dim = rng.gen_range(1..=max_dim);
    let k = rng.gen_range(0..=max_gens);
    let gens: Vec<QVector> = (0..k).map(|_| random_vector(rng, dim, 3)).collect();
    Cone::from_generators(dim, &gens, &[]).unwrap()
}

/// A random strictly convex, polyhedral colored fan with `𝒱 = 𝒩_ℚ`,
/// `dim 𝒩 ≤ 3`, `r ≤ 2`, `s_i ≤ 3`.
///
/// Cones are orthants spanned by signed coordinate vectors; in rank two the
/// positive quadrant may be split along the diagonal. The ray `v_i` carries
/// the color `D_i` in every cone containing it, or in none.
pub fn random_colored_fan(rng: &mut ChaCha8Rng) -> ColoredFan {
    let dim = rng.gen_range(1..=3);
    let r = rng.gen_range(0..=dim.min(2));
    let ranks: Vec<usize> = (0..r).map(|_| rng.gen_range(1..=3)).collect();
    let palette = Palette::standard(dim, &ranks).unwrap();
    let colored_rays: BTreeSet<usize> = (0..r).filter(|_| rng.gen_bool(0.5)).collect();
    let split = dim == 2 && rng.gen_bool(0.5);

    let mut cones = Vec::new();
    let count = rng.gen_range(1..=3);
    for _ in 0..count {
        let mut gens = Vec::new();
        for i in 0..dim {
            match rng.gen_range(0..3) {
                0 => {}
                1 => gens.push(QVector::unit(dim, i)),
                _ => gens.push(QVector::unit(dim, i).neg()),
            }
        }
        let positive_quadrant = split && gens.len() == 2 && gens.iter().all(|g| g.iter().all(|x| *x >= rat(0)));
        let pieces: Vec<Vec<QVector>> = if positive_quadrant {
            let diag = QVector::from_ints(&[1, 1]);
            vec![vec![gens[0].clone(), diag.clone()], vec![diag, gens[1].clone()]]
        } else {
            vec![gens]
        };
        for g in pieces {
            let sigma = Cone::from_generators(dim, &g, &[]).unwrap();
            let colors: Vec<String> = colored_rays
                .iter()
                .filter(|&&i| sigma.rays().contains(&QVector::unit(dim, i)))
                .map(|i| format!("D{}", i + 1))
                .collect();
            cones.push(ColoredCone::new(sigma, colors));
        }
    }
    ColoredFan::new(palette, Cone::full(dim), cones).unwrap()
}
