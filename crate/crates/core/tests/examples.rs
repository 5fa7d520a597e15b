mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use sphtrop::colored_fans::{colored_face, is_polyhedral, validate_colored_cone, validate_colored_fan, ColoredCone, ColoredFan, Palette};
use sphtrop::fan_builder::{
    build_fan_z, build_fan_zhat, build_sigma_a, enumerate_a, irrelevant_monomials, lift_colored_fan, AFamily, LatticeLayout,
    LiftData,
};
use sphtrop::qpoly::{common_refinement, rat, Cone, ExtRational, LinearMap, PolyhedralComplex, Polyhedron, QVector};
use sphtrop::spherical::{
    check_closure_commutes, psi, psi_bar, push_tropicalization, trop_closure, trop_subvariety, trop_subvariety_lifted,
    valuation_cone, ClosureMode, SphericalTrop,
};
use sphtrop::trop_engine::{evaluate, extended_closure, hypersurface, prevariety, ExtendedPoint, TropicalPolynomial};
use sphtrop::Error;

fn v(x: &[i64]) -> QVector {
    QVector::from_ints(x)
}

fn fin(x: i64) -> ExtRational {
    ExtRational::Finite(rat(x))
}

fn poly(dim: usize, ineqs: &[(&[i64], i64)], eqs: &[(&[i64], i64)]) -> Polyhedron {
    let i: Vec<_> = ineqs.iter().map(|(a, b)| hs(a, *b)).collect();
    let e: Vec<_> = eqs.iter().map(|(a, b)| hs(a, *b)).collect();
    Polyhedron::from_constraints(dim, &i, &e).unwrap()
}

fn ray_complex(dim: usize, gens: &[&[i64]]) -> PolyhedralComplex {
    PolyhedralComplex::new(
        dim,
        gens.iter()
            .map(|g| Polyhedron::from_cone(&cone(dim, &[g])))
            .collect(),
    )
    .unwrap()
}

fn xy(p: &str) -> TropicalPolynomial {
    TropicalPolynomial::parse(p, &names(&["x", "y"])).unwrap()
}

mod qpoly {
    use super::*;

    #[test]
    fn duals() {
        let quadrant = cone(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(quadrant.dual(), quadrant);
        assert_eq!(Cone::origin(2).dual(), Cone::full(2));
        assert_eq!(cone(2, &[&[1, 0], &[1, 1]]).dual(), cone(2, &[&[0, 1], &[1, -1]]));
    }

    #[test]
    fn face_counts() {
        assert_eq!(cone(2, &[&[1, 0], &[0, 1]]).faces().len(), 4);
        assert_eq!(cone(2, &[&[1, 1]]).faces(), vec![Cone::origin(2), cone(2, &[&[1, 1]])]);
        assert_eq!(Cone::origin(3).faces().len(), 1);
    }

    #[test]
    fn intersections() {
        let quadrant = cone(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(quadrant.intersect(&quadrant).unwrap(), quadrant);
        assert_eq!(cone(2, &[&[1, 0]]).intersect(&cone(2, &[&[0, 1]])).unwrap(), Cone::origin(2));
        let p = poly(1, &[(&[1], 1)], &[]).intersect(&poly(1, &[(&[-1], 0)], &[])).unwrap();
        assert!(p.is_empty());
        assert_eq!(p, Polyhedron::empty(1));
    }

    #[test]
    fn relative_interiors() {
        let quadrant = cone(2, &[&[1, 0], &[0, 1]]);
        assert!(quadrant.relint_contains(&v(&[1, 1])).unwrap());
        assert!(!quadrant.relint_contains(&v(&[1, 0])).unwrap());
        assert!(cone(2, &[&[1, 1]]).relint_contains(&v(&[1, 1])).unwrap());
    }

    #[test]
    fn images() {
        let quadrant = cone(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(quadrant.linear_image(&LinearMap::identity(2)).unwrap(), quadrant);
        let proj = LinearMap::from_int_rows(2, &[&[1, 0]]).unwrap();
        assert_eq!(quadrant.linear_image(&proj).unwrap(), cone(1, &[&[1]]));
        let diag = LinearMap::from_int_rows(1, &[&[1], &[1]]).unwrap();
        assert_eq!(cone(1, &[&[1]]).linear_image(&diag).unwrap(), cone(2, &[&[1, 1]]));
    }

    #[test]
    fn recession_cones() {
        let square = poly(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[-1, 0], -1), (&[0, -1], -1)], &[]);
        assert_eq!(square.recession_cone().unwrap(), Cone::origin(2));
        assert_eq!(poly(1, &[(&[1], 1)], &[]).recession_cone().unwrap(), cone(1, &[&[1]]));
        assert_eq!(
            poly(2, &[(&[1, 1], 3)], &[]).recession_cone().unwrap(),
            halfspace_cone(&[1, 1])
        );
        assert_eq!(Polyhedron::empty(2).recession_cone(), Err(Error::EmptyPolyhedron));
    }

    #[test]
    fn refinements() {
        let line = PolyhedralComplex::from_polyhedron(poly(2, &[], &[(&[1, -1], 0)]));
        assert_eq!(common_refinement(&[line.clone(), PolyhedralComplex::full(2)]).unwrap(), line);
        assert_eq!(common_refinement(&[line.clone(), line.clone()]).unwrap(), line);
        let other = PolyhedralComplex::from_polyhedron(poly(2, &[], &[(&[1, 1], 2)]));
        let meet = common_refinement(&[line, other]).unwrap();
        assert_eq!(meet, PolyhedralComplex::from_polyhedron(Polyhedron::point(v(&[1, 1]))));
    }
}

mod colored_fans {
    use super::*;

    fn sl3_palette() -> Palette {
        Palette::standard(2, &[3, 3]).unwrap()
    }

    #[test]
    fn color_outside_the_valuation_cone() {
        let vc = halfspace_cone(&[-1, -1]);
        let sigma = cone(2, &[&[1, 0], &[-2, 1]]);
        let with = ColoredCone::new(sigma.clone(), ["D1"]);
        assert!(validate_colored_cone(&with, &vc, &sl3_palette()).unwrap().is_valid());
        let without = ColoredCone::uncolored(sigma);
        let report = validate_colored_cone(&without, &vc, &sl3_palette()).unwrap();
        assert!(!report.generated);
        assert!(!report.is_valid());
        let trivial = ColoredCone::trivial(2);
        let report = validate_colored_cone(&trivial, &vc, &sl3_palette()).unwrap();
        assert!(report.is_valid() && report.is_strictly_convex());
    }

    #[test]
    fn unknown_color() {
        let cc = ColoredCone::new(cone(2, &[&[1, 0]]), ["D9"]);
        assert!(matches!(
            validate_colored_cone(&cc, &Cone::full(2), &sl3_palette()),
            Err(Error::UnknownColor(_))
        ));
    }

    #[test]
    fn faces_of_the_red_cone() {
        let red = ColoredCone::new(cone(2, &[&[1, 0], &[-2, 1]]), ["D1"]);
        let p = sl3_palette();
        assert_eq!(colored_face(&red, &Cone::origin(2), &p).unwrap(), ColoredCone::trivial(2));
        assert_eq!(colored_face(&red, &red.sigma, &p).unwrap(), red);
        let tau = cone(2, &[&[1, 0]]);
        assert_eq!(colored_face(&red, &tau, &p).unwrap(), ColoredCone::new(tau, ["D1"]));
        assert!(matches!(colored_face(&red, &cone(2, &[&[1, 1]]), &p), Err(Error::NotAFace(_))));
    }

    #[test]
    fn fan_validation() {
        assert!(validate_colored_fan(&redblue_fan()).unwrap().is_valid());

        let p = sl3_palette();
        let vc = halfspace_cone(&[-1, -1]);
        let red = ColoredCone::new(cone(2, &[&[1, 0], &[-2, 1]]), ["D1"]);
        let twice = ColoredFan::new(p.clone(), vc.clone(), vec![red.clone(), red.clone()]).unwrap();
        assert_eq!(twice.maximal_cones().len(), 1);
        assert!(validate_colored_fan(&twice).unwrap().is_valid());

        let a = ColoredCone::uncolored(cone(2, &[&[-1, 0], &[-1, -1]]));
        let b = ColoredCone::uncolored(cone(2, &[&[-1, -1], &[0, -1]]));
        let c = ColoredCone::uncolored(cone(2, &[&[-2, -1], &[-1, -2]]));
        let bad = ColoredFan::new(p, vc.clone(), vec![a, b, c]).unwrap();
        let report = validate_colored_fan(&bad).unwrap();
        assert!(!report.is_valid());
        let (_, _, witness) = &report.overlaps[0];
        assert!(vc.contains(witness).unwrap());
    }

    #[test]
    fn polyhedrality() {
        assert!(!is_polyhedral(&redblue_fan()).unwrap());
        let red = ColoredCone::new(cone(2, &[&[1, 0], &[-2, 1]]), ["D1"]);
        let alone = ColoredFan::new(sl3_palette(), halfspace_cone(&[-1, -1]), vec![red]).unwrap();
        assert!(is_polyhedral(&alone).unwrap());
        assert!(is_polyhedral(&bl0_fan()).unwrap());
    }

    #[test]
    fn valuation_cone_of_the_sl3_descriptor_validates_both_cones() {
        let vc = valuation_cone(&sl3()).unwrap();
        let p = sl3_palette();
        let red = ColoredCone::new(cone(2, &[&[1, 0], &[-2, 1]]), ["D1"]);
        let blue = ColoredCone::new(cone(2, &[&[0, 1], &[1, -2]]), ["D2"]);
        assert!(validate_colored_cone(&red, &vc, &p).unwrap().is_valid());
        assert!(validate_colored_cone(&blue, &vc, &p).unwrap().is_valid());
        let fan = ColoredFan::new(p, vc, vec![red, blue]).unwrap();
        assert!(!is_polyhedral(&fan).unwrap());
    }
}

mod fan_builder {
    use super::*;

    fn a_sets(layout: &LatticeLayout, colored: &[usize]) -> BTreeSet<BTreeSet<usize>> {
        let c: BTreeSet<usize> = colored.iter().copied().collect();
        enumerate_a(layout, &c, AFamily::AtLeastOne).collect()
    }

    #[test]
    fn admissible_sets() {
        let l = LatticeLayout::new(vec![2], 0).unwrap();
        let want: BTreeSet<BTreeSet<usize>> = [BTreeSet::new(), [0].into(), [1].into()].into();
        assert_eq!(a_sets(&l, &[]), want);
        assert_eq!(a_sets(&l, &[0]).len(), 4);
        assert!(a_sets(&l, &[0]).contains(&[0, 1].into()));
        let l0 = LatticeLayout::new(vec![], 2).unwrap();
        assert_eq!(a_sets(&l0, &[]), [BTreeSet::new()].into());
    }

    #[test]
    fn sigma_a() {
        let l = LatticeLayout::new(vec![2], 0).unwrap();
        let p = Palette::standard(1, &[2]).unwrap();
        let up = ColoredCone::uncolored(cone(1, &[&[1]]));
        assert_eq!(build_sigma_a(&up, &[0].into(), &l, &p).unwrap(), cone(2, &[&[1, 0], &[1, 1]]));
        assert_eq!(build_sigma_a(&ColoredCone::trivial(1), &[1].into(), &l, &p).unwrap(), cone(2, &[&[0, 1]]));
        let down = ColoredCone::uncolored(cone(1, &[&[-1]]));
        assert_eq!(build_sigma_a(&down, &[0].into(), &l, &p).unwrap(), cone(2, &[&[1, 0], &[-1, -1]]));
        assert!(matches!(build_sigma_a(&up, &[0, 1].into(), &l, &p), Err(Error::InvalidAFamily(_))));
    }

    #[test]
    fn trivial_fan_gives_z0() {
        let fan = ColoredFan::new(Palette::standard(1, &[2]).unwrap(), Cone::full(1), vec![]).unwrap();
        let z = build_fan_z(&fan, AFamily::AtLeastOne).unwrap();
        let got: BTreeSet<Cone> = z.maximal_cones().iter().cloned().collect();
        assert_eq!(got, [cone(2, &[&[1, 0]]), cone(2, &[&[0, 1]])].into());
    }

    #[test]
    fn hat_fans() {
        let (_, hat, gamma) = build_fan_zhat(&bl0_fan(), AFamily::AtLeastOne).unwrap();
        assert_eq!(hat.n(), 1);
        assert_eq!(hat.p_star().apply(&v(&[0, 0, 1])).unwrap(), v(&[1, 1]));
        assert_eq!(gamma.rows, vec![v(&[-1, -1, 1])]);

        let fan = ColoredFan::new(Palette::standard(1, &[2]).unwrap(), Cone::full(1), vec![]).unwrap();
        let (z, hat, gamma) = build_fan_zhat(&fan, AFamily::AtLeastOne).unwrap();
        assert_eq!(hat.n(), 0);
        assert!(gamma.rows.is_empty());
        assert_eq!(hat.maximal_cones(), z.maximal_cones());
    }

    #[test]
    fn irrelevant_ideal() {
        let fan = ColoredFan::new(Palette::standard(1, &[2]).unwrap(), Cone::full(1), vec![]).unwrap();
        let (_, hat, _) = build_fan_zhat(&fan, AFamily::AtLeastOne).unwrap();
        let got: BTreeSet<Vec<u32>> = irrelevant_monomials(&hat).into_iter().collect();
        assert_eq!(got, [vec![0, 1], vec![1, 0]].into());

        let (_, hat, _) = build_fan_zhat(&bl0_fan(), AFamily::AtLeastOne).unwrap();
        let got: BTreeSet<Vec<u32>> = irrelevant_monomials(&hat).into_iter().collect();
        assert_eq!(got, [vec![0, 1, 0], vec![1, 0, 0]].into());

        let empty = LatticeLayout::new(vec![], 2).unwrap();
        let fan = ColoredFan::new(Palette::new(2, vec![]).unwrap(), Cone::full(2), vec![]).unwrap();
        let (_, hat, _) = build_fan_zhat(&fan, AFamily::AtLeastOne).unwrap();
        assert_eq!(hat.layout(), &empty);
        assert_eq!(irrelevant_monomials(&hat), vec![vec![1, 1]]);
    }

    #[test]
    fn lifting() {
        let layout = LatticeLayout::new(vec![2, 2], 1).unwrap();
        let palette = Palette::standard(3, &[2, 2]).unwrap();
        let bold_palette = Palette::new(1, vec![]).unwrap();
        let lift = p1p1_lift();

        let trivial = ColoredFan::new(bold_palette.clone(), cone(1, &[&[1]]), vec![]).unwrap();
        let lifted = lift_colored_fan(&trivial, &lift, &layout, &palette).unwrap();
        assert_eq!(lifted.maximal_cones(), &[ColoredCone::trivial(3)]);

        let ray = ColoredFan::new(bold_palette, cone(1, &[&[1]]), vec![ColoredCone::uncolored(cone(1, &[&[1]]))]).unwrap();
        let lifted = lift_colored_fan(&ray, &lift, &layout, &palette).unwrap();
        assert_eq!(lifted.maximal_cones(), &[ColoredCone::uncolored(cone(3, &[&[0, 0, 1]]))]);
        assert_eq!(lifted.valuation_cone(), &halfspace_cone(&[-1, -1, 1]));
    }

    #[test]
    fn lifting_colors() {
        let layout = LatticeLayout::new(vec![1], 1).unwrap();
        let palette = Palette::standard(2, &[1]).unwrap();
        let bold_palette = Palette::new(
            1,
            vec![sphtrop::colored_fans::Color { id: "B1".into(), rho: v(&[1]), rank: 1 }],
        )
        .unwrap();
        let bold = ColoredFan::new(bold_palette, Cone::full(1), vec![ColoredCone::new(cone(1, &[&[1]]), ["B1"])]).unwrap();
        let lift = LiftData {
            pi_star: LinearMap::from_int_rows(2, &[&[1, 1]]).unwrap(),
            colors: vec![("B1".into(), "D1".into())],
        };
        let lifted = lift_colored_fan(&bold, &lift, &layout, &palette).unwrap();
        assert_eq!(lifted.maximal_cones(), &[ColoredCone::new(cone(2, &[&[1, 0]]), ["D1"])]);

        let missing = LiftData { colors: vec![], ..lift.clone() };
        assert!(matches!(lift_colored_fan(&bold, &missing, &layout, &palette), Err(Error::ColorMismatch(_))));
        let singular = LiftData { pi_star: LinearMap::from_int_rows(2, &[&[1, 0]]).unwrap(), ..lift };
        assert_eq!(lift_colored_fan(&bold, &singular, &layout, &palette).unwrap_err(), Error::LiftNotInvertible);
    }
}

mod trop_engine {
    use super::*;

    #[test]
    fn tropical_line() {
        let line = hypersurface(&xy("x + y + 1")).unwrap();
        assert_eq!(line, ray_complex(2, &[&[1, 0], &[0, 1], &[-1, -1]]));
        let bisector = hypersurface(&xy("x + y")).unwrap();
        assert_eq!(bisector, PolyhedralComplex::from_polyhedron(poly(2, &[], &[(&[1, -1], 0)])));
        assert!(hypersurface(&xy("x*y")).unwrap().is_empty());
    }

    #[test]
    fn determinant_hypersurface() {
        let vars = names(&["a11", "a22", "a12", "a21", "b"]);
        let f = TropicalPolynomial::parse("a11*a22 - a12*a21 - b", &vars).unwrap();
        let h = hypersurface(&f).unwrap();
        assert_eq!(h.cells().len(), 3);
        for w in [[0, 0, 0, 0, 0], [1, 1, 0, 2, 2], [0, 0, 5, 5, 0]] {
            assert_eq!(h.contains_point(&v(&w)).unwrap(), f.min_attained_twice(&v(&w)), "{w:?}");
        }
    }

    #[test]
    fn prevarieties() {
        let f = xy("x + y + 1");
        assert_eq!(prevariety(2, &[f.clone()]).unwrap(), hypersurface(&f).unwrap());
        assert_eq!(prevariety(2, &[f.clone(), f.clone()]).unwrap(), hypersurface(&f).unwrap());
        assert_eq!(prevariety(2, &[]).unwrap(), PolyhedralComplex::full(2));
        let g = xy("x - 1");
        let both = prevariety(2, &[f, g]).unwrap();
        assert_eq!(both, PolyhedralComplex::from_polyhedron(poly(2, &[(&[0, 1], 0)], &[(&[1, 0], 0)])));
    }

    #[test]
    fn extended_closures() {
        let z = build_fan_z(&bl0_fan(), AFamily::AtLeastOne).unwrap();
        let segment = PolyhedralComplex::from_polyhedron(poly(2, &[(&[1, 0], 0), (&[-1, 0], -1)], &[(&[1, -1], 0)]));
        let closed = extended_closure(&segment, z.cones()).unwrap();
        assert_eq!(closed.pieces.keys().copied().collect::<Vec<_>>(), vec![0]);

        let diag = PolyhedralComplex::from_polyhedron(poly(2, &[], &[(&[1, -1], 0)]));
        let closed = extended_closure(&diag, z.cones()).unwrap();
        assert_eq!(closed.pieces[&0], diag);
        let d = z.cone_id(&cone(2, &[&[1, 1]])).unwrap();
        let boundary: Vec<usize> = closed.pieces.keys().copied().filter(|&k| k != 0).collect();
        assert_eq!(boundary, vec![d]);
        assert_eq!(
            closed.pieces[&d],
            PolyhedralComplex::from_polyhedron(Polyhedron::point(QVector::zeros(2)))
        );
    }

    #[test]
    fn tropical_line_in_the_plane_fan() {
        let p2 = [cone(2, &[&[1, 0], &[0, 1]]), cone(2, &[&[0, 1], &[-1, -1]]), cone(2, &[&[-1, -1], &[1, 0]])];
        let mut cones: BTreeSet<Cone> = BTreeSet::new();
        for c in &p2 {
            cones.extend(c.faces());
        }
        let mut cones: Vec<Cone> = cones.into_iter().collect();
        cones.sort_by_key(|c| c.dim());
        let closed = extended_closure(&hypersurface(&xy("x + y + 1")).unwrap(), &cones).unwrap();
        let rays: Vec<usize> = closed.pieces.keys().copied().filter(|&k| cones[k].dim() == 1).collect();
        assert_eq!(rays.len(), 3);
        for k in rays {
            assert_eq!(closed.pieces[&k].cells().len(), 1);
            assert_eq!(closed.pieces[&k].dim(), 0);
        }
        assert!(closed.pieces.keys().all(|&k| cones[k].dim() < 2));
    }

    #[test]
    fn evaluation() {
        let cones = vec![Cone::origin(2), cone(2, &[&[1, 0]])];
        let p0 = ExtendedPoint::new(&cones, 0, &v(&[2, 5])).unwrap();
        assert_eq!(evaluate(&cones, &p0, &v(&[1, -1])).unwrap(), fin(-3));
        let p1 = ExtendedPoint::new(&cones, 1, &v(&[7, 3])).unwrap();
        assert_eq!(p1, ExtendedPoint::new(&cones, 1, &v(&[0, 3])).unwrap());
        assert_eq!(evaluate(&cones, &p1, &v(&[1, 0])).unwrap(), ExtRational::Infinity);
        assert_eq!(evaluate(&cones, &p1, &v(&[0, 1])).unwrap(), fin(3));
        assert_eq!(evaluate(&cones, &p1, &v(&[-1, 0])), Err(Error::NotInDualCone));
    }
}

mod spherical {
    use super::*;

    #[test]
    fn psi_points() {
        let l = LatticeLayout::new(vec![2], 0).unwrap();
        assert_eq!(psi(&l, &[fin(1), fin(0)]).unwrap(), v(&[0]));
        assert_eq!(psi(&l, &[ExtRational::Infinity, fin(2)]).unwrap(), v(&[2]));
        assert!(matches!(
            psi(&l, &[ExtRational::Infinity, ExtRational::Infinity]),
            Err(Error::DomainViolation(_))
        ));
        let ones = LatticeLayout::new(vec![1, 1], 1).unwrap();
        assert_eq!(psi(&ones, &[fin(3), fin(-4), fin(5)]).unwrap(), v(&[3, -4, 5]));
        assert!(matches!(psi(&ones, &[fin(3), fin(-4), ExtRational::Infinity]), Err(Error::DomainViolation(_))));
    }

    #[test]
    fn trop_of_g_mod_h_is_the_valuation_cone() {
        for d in [sl3(), sl2(), punctured()] {
            let t = trop_subvariety(&d, &[]).unwrap();
            let vc = valuation_cone(&d).unwrap();
            assert!(t.complex.support_eq(&PolyhedralComplex::from_polyhedron(Polyhedron::from_cone(&vc))).unwrap());
            assert!(t.certified);
        }
    }

    #[test]
    fn sl2_trop() {
        let t = trop_subvariety(&sl2(), &[]).unwrap();
        assert_eq!(t.complex, ray_complex(1, &[&[-1]]));
    }

    #[test]
    fn lifted_identity() {
        let d = punctured();
        let lift = LiftData { pi_star: LinearMap::identity(1), colors: vec![] };
        let y = punctured_poly("x + y + 1");
        let lifted = trop_subvariety_lifted(&d, &lift, &y).unwrap();
        assert_eq!(lifted.image, trop_subvariety(&d, &y).unwrap().complex);
    }

    #[test]
    fn lifted_refined() {
        let (d, vars) = p1p1_lifted();
        let y: Vec<_> = ["S11*S22 - S12*S21 - T", "S21 - S22"]
            .iter()
            .map(|p| TropicalPolynomial::parse(p, &vars).unwrap())
            .collect();
        let out = trop_subvariety_lifted(&d, &p1p1_lift(), &y).unwrap();
        assert!(!out.certified);
        assert_eq!(out.image, ray_complex(1, &[&[1]]));
    }

    #[test]
    fn psi_bar_on_bl0() {
        let z = build_fan_z(&bl0_fan(), AFamily::AtLeastOne).unwrap();
        let colored = z.colored_cones();
        let sigma = colored.iter().position(|c| c.sigma == cone(1, &[&[1]])).unwrap();
        let mu = ExtendedPoint::new(z.cones(), 0, &v(&[4, -1])).unwrap();
        let nu = psi_bar(&z, &mu).unwrap();
        assert_eq!((nu.colored_cone, nu.finite.clone()), (0, v(&[-1])));
        for c in [cone(2, &[&[1, 1]]), cone(2, &[&[1, 0], &[1, 1]]), cone(2, &[&[0, 1]])] {
            let id = z.cone_id(&c).unwrap();
            let mu = ExtendedPoint::new(z.cones(), id, &v(&[2, 9])).unwrap();
            let nu = psi_bar(&z, &mu).unwrap();
            let want = if c.dim() == 1 && c.rays()[0] == v(&[0, 1]) { 0 } else { sigma };
            assert_eq!(nu.colored_cone, want, "{c:?}");
        }
    }

    #[test]
    fn closure_of_the_line() {
        let t = trop_closure(&punctured(), &bl0_fan(), &punctured_poly("x + y + 1"), ClosureMode::Global).unwrap();
        assert_eq!(t.pieces.keys().copied().collect::<Vec<_>>(), vec![0]);
        assert_eq!(t.pieces[&0], PolyhedralComplex::from_polyhedron(left_ray()));
        let report = check_closure_commutes(&punctured(), &bl0_fan(), &punctured_poly("x + y + 1"), ClosureMode::Global).unwrap();
        assert!(report.equal);
    }

    #[test]
    fn closure_of_a_point() {
        let y = punctured_poly("x + 1");
        let y2 = vec![y[0].clone(), punctured_poly("y + 1")[0].clone()];
        let report = check_closure_commutes(&punctured(), &bl0_fan(), &y2, ClosureMode::Global).unwrap();
        assert!(report.equal);
        assert_eq!(report.orbits.len(), 1);
    }

    #[test]
    fn per_cone_mode_agrees_with_global() {
        for y in [vec![], punctured_poly("x + y"), punctured_poly("x + y + 1")] {
            let g = trop_closure(&punctured(), &bl0_fan(), &y, ClosureMode::Global).unwrap();
            let p = trop_closure(&punctured(), &bl0_fan(), &y, ClosureMode::PerCone).unwrap();
            assert_eq!(g.pieces, p.pieces);
        }
    }

    #[test]
    fn global_mode_rejects_non_polyhedral_fans() {
        let fan = ColoredFan::new(
            Palette::standard(2, &[3, 3]).unwrap(),
            halfspace_cone(&[-1, -1]),
            redblue_fan().maximal_cones().to_vec(),
        )
        .unwrap();
        assert!(matches!(
            trop_closure(&sl3(), &fan, &[], ClosureMode::Global),
            Err(Error::NonPolyhedralFan(..))
        ));
        let t = trop_closure(&sl3(), &fan, &[], ClosureMode::PerCone).unwrap();
        assert_eq!(t.pieces[&0], PolyhedralComplex::from_polyhedron(Polyhedron::from_cone(&halfspace_cone(&[-1, -1]))));
    }

    #[test]
    fn pushing_forward() {
        let (d, vars) = p1p1_lifted();
        let y = vec![TropicalPolynomial::parse("S11*S22 - S12*S21 - T", &vars).unwrap()];
        let t = trop_subvariety(&d, &y).unwrap();
        let dense = SphericalTrop::dense(t.complex.clone(), t.certified);
        let id: BTreeMap<usize, (usize, LinearMap)> = [(0, (0, LinearMap::identity(3)))].into();
        assert_eq!(push_tropicalization(&id, &dense).unwrap()[&0], t.complex);
        let pi: BTreeMap<usize, (usize, LinearMap)> = [(0, (0, p1p1_lift().pi_star))].into();
        assert_eq!(push_tropicalization(&pi, &dense).unwrap()[&0], ray_complex(1, &[&[1]]));
        let collapse: BTreeMap<usize, (usize, LinearMap)> = [(0, (0, LinearMap::from_int_rows(3, &[]).unwrap()))].into();
        let point = push_tropicalization(&collapse, &dense).unwrap();
        assert_eq!(point[&0], PolyhedralComplex::from_polyhedron(Polyhedron::point(QVector::zeros(0))));
        assert_eq!(push_tropicalization(&BTreeMap::new(), &dense), Err(Error::UnmappedOrbit(0)));
    }
}
