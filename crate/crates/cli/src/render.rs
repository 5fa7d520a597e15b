//! SVG figures of one- and two-dimensional fans and complexes. Geometry is
//! clipped exactly to a box and only then converted to floating point.

use num_traits::ToPrimitive;
use sphtrop::colored_fans::{ColoredFan, Palette};
use sphtrop::fan_builder::ToricFan;
use sphtrop::qpoly::{rat, Cone, HalfSpace, PolyhedralComplex, Polyhedron, QVector, Rational};

use crate::CliError;

const SIZE: f64 = 400.0;
const RADIUS: f64 = 170.0;
const COLOR_CYCLE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

enum Item {
    Region { cell: Polyhedron, fill: &'static str },
    Edge { cell: Polyhedron, stroke: &'static str, width: f64 },
    Ray { dir: QVector, dashed: bool, label: Option<String> },
    Dot { at: QVector },
    Glyph { at: QVector, color: &'static str, label: String },
}

/// A figure under construction.
pub struct Scene {
    dim: usize,
    title: String,
    axes: bool,
    items: Vec<Item>,
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

impl Scene {
    pub fn new(dim: usize, title: impl Into<String>) -> Result<Self, CliError> {
        if !(1..=2).contains(&dim) {
            return Err(CliError::Render(format!("only dimensions 1 and 2 can be drawn, not {dim}")));
        }
        Ok(Scene {
            dim,
            title: title.into(),
            axes: false,
            items: vec![],
        })
    }

    pub fn with_axes(mut self) -> Self {
        self.axes = true;
        self
    }

    fn check(&self, d: usize) -> Result<(), CliError> {
        if d == self.dim {
            Ok(())
        } else {
            Err(CliError::Render(format!("object of dimension {d} in a {}-dimensional figure", self.dim)))
        }
    }

    /// A shaded cone with its rays.
    pub fn cone(&mut self, c: &Cone, fill: &'static str) -> Result<(), CliError> {
        self.check(c.ambient_dim())?;
        if c.dim() == self.dim {
            self.items.push(Item::Region {
                cell: Polyhedron::from_cone(c),
                fill,
            });
        }
        Ok(())
    }

    pub fn ray(&mut self, dir: &QVector, label: Option<String>) -> Result<(), CliError> {
        self.check(dir.dim())?;
        self.items.push(Item::Ray {
            dir: dir.clone(),
            dashed: false,
            label,
        });
        Ok(())
    }

    pub fn boundary_ray(&mut self, dir: &QVector) -> Result<(), CliError> {
        self.check(dir.dim())?;
        self.items.push(Item::Ray {
            dir: dir.clone(),
            dashed: true,
            label: None,
        });
        Ok(())
    }

    pub fn glyph(&mut self, at: &QVector, index: usize, label: String) -> Result<(), CliError> {
        self.check(at.dim())?;
        self.items.push(Item::Glyph {
            at: at.clone(),
            color: COLOR_CYCLE[index % COLOR_CYCLE.len()],
            label,
        });
        Ok(())
    }

    /// Every cell of a complex, by dimension: filled, stroked or dotted.
    pub fn complex(&mut self, c: &PolyhedralComplex) -> Result<(), CliError> {
        self.check(c.ambient_dim())?;
        for cell in c.cells() {
            match (cell.dim(), self.dim) {
                (2, 2) => self.items.push(Item::Region {
                    cell: cell.clone(),
                    fill: "#c8c8c8",
                }),
                (0, _) => self.items.push(Item::Dot {
                    at: cell.vertices()[0].clone(),
                }),
                _ => self.items.push(Item::Edge {
                    cell: cell.clone(),
                    stroke: "#000000",
                    width: 2.5,
                }),
            }
        }
        Ok(())
    }

    /// Half-width of the drawn box: everything finite fits with a margin.
    fn extent(&self) -> Rational {
        let mut m = rat(1);
        let mut see = |v: &QVector| {
            for x in v.iter() {
                let a = if *x < rat(0) { -x.clone() } else { x.clone() };
                if a > m {
                    m = a;
                }
            }
        };
        for it in &self.items {
            match it {
                Item::Region { cell, .. } | Item::Edge { cell, .. } => cell.vertices().iter().for_each(&mut see),
                Item::Dot { at } | Item::Glyph { at, .. } => see(at),
                Item::Ray { dir, .. } => see(&dir.primitive()),
            }
        }
        m * Rational::new(3.into(), 2.into())
    }

    fn clip(&self, p: &Polyhedron, b: &Rational) -> Result<Vec<QVector>, CliError> {
        let mut box_ineqs = Vec::new();
        for i in 0..self.dim {
            box_ineqs.push(HalfSpace::new(QVector::unit(self.dim, i), -b.clone()));
            box_ineqs.push(HalfSpace::new(QVector::unit(self.dim, i).neg(), -b.clone()));
        }
        Ok(p.constrain(&box_ineqs, &[])?.vertices())
    }

    fn px(&self, v: &QVector, b: &Rational) -> (f64, f64) {
        let s = RADIUS / to_f64(b);
        let x = SIZE / 2.0 + to_f64(&v[0]) * s;
        let y = if self.dim == 2 { SIZE / 2.0 - to_f64(&v[1]) * s } else { SIZE / 2.0 };
        (x, y)
    }

    /// Endpoint of a ray on the box boundary.
    fn ray_end(&self, dir: &QVector, b: &Rational) -> QVector {
        let mut m = rat(0);
        for x in dir.iter() {
            let a = if *x < rat(0) { -x.clone() } else { x.clone() };
            if a > m {
                m = a;
            }
        }
        dir.scale(&(b.clone() / m))
    }

    pub fn to_svg(&self) -> Result<String, CliError> {
        let b = self.extent();
        let mut out = String::new();
        let w = |out: &mut String, s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        w(
            &mut out,
            format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"),
        );
        w(&mut out, format!("<title>{}</title>", escape(&self.title)));
        w(&mut out, format!("<rect x=\"0\" y=\"0\" width=\"{SIZE}\" height=\"{SIZE}\" fill=\"#ffffff\"/>"));
        let c = SIZE / 2.0;
        if self.axes || self.dim == 1 {
            let dash = if self.dim == 1 { "" } else { " stroke-dasharray=\"2,4\"" };
            w(
                &mut out,
                format!("<line x1=\"{:.2}\" y1=\"{c:.2}\" x2=\"{:.2}\" y2=\"{c:.2}\" stroke=\"#888888\"{dash}/>", c - RADIUS, c + RADIUS),
            );
            if self.dim == 2 {
                w(
                    &mut out,
                    format!("<line x1=\"{c:.2}\" y1=\"{:.2}\" x2=\"{c:.2}\" y2=\"{:.2}\" stroke=\"#888888\"{dash}/>", c - RADIUS, c + RADIUS),
                );
            }
        }
        // Regions first, then edges and rays, then points on top.
        for it in &self.items {
            if let Item::Region { cell, fill } = it {
                if self.dim == 1 {
                    let vs = self.clip(cell, &b)?;
                    if let (Some(p), Some(q)) = (vs.first(), vs.last()) {
                        let ((x1, _), (x2, _)) = (self.px(p, &b), self.px(q, &b));
                        w(
                            &mut out,
                            format!("<line x1=\"{x1:.2}\" y1=\"{c:.2}\" x2=\"{x2:.2}\" y2=\"{c:.2}\" stroke=\"{fill}\" stroke-width=\"12\"/>"),
                        );
                    }
                    continue;
                }
                let mut pts: Vec<(f64, f64)> = self.clip(cell, &b)?.iter().map(|v| self.px(v, &b)).collect();
                let n = pts.len() as f64;
                let (cx, cy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x / n, b + y / n));
                pts.sort_by(|p, q| {
                    let ap = (p.1 - cy).atan2(p.0 - cx);
                    let aq = (q.1 - cy).atan2(q.0 - cx);
                    ap.total_cmp(&aq)
                });
                let list: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
                w(&mut out, format!("<polygon points=\"{}\" fill=\"{fill}\" stroke=\"none\"/>", list.join(" ")));
            }
        }
        for it in &self.items {
            match it {
                Item::Edge { cell, stroke, width } => {
                    let vs = self.clip(cell, &b)?;
                    if let (Some(p), Some(q)) = (vs.first(), vs.last()) {
                        let ((x1, y1), (x2, y2)) = (self.px(p, &b), self.px(q, &b));
                        w(
                            &mut out,
                            format!("<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{stroke}\" stroke-width=\"{width}\"/>"),
                        );
                    }
                }
                Item::Ray { dir, dashed, label } => {
                    let end = self.ray_end(dir, &b);
                    let (x2, y2) = self.px(&end, &b);
                    let dash = if *dashed { " stroke-dasharray=\"6,4\"" } else { "" };
                    w(
                        &mut out,
                        format!("<line x1=\"{c:.2}\" y1=\"{c:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"#000000\" stroke-width=\"2\"{dash}/>"),
                    );
                    if let Some(l) = label {
                        let (dx, dy) = ((x2 - c) * 0.06, (y2 - c) * 0.06);
                        w(
                            &mut out,
                            format!(
                                "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\">{}</text>",
                                x2 + dx,
                                y2 + dy + 4.0,
                                escape(l)
                            ),
                        );
                    }
                }
                _ => {}
            }
        }
        w(&mut out, format!("<circle cx=\"{c:.2}\" cy=\"{c:.2}\" r=\"3\" fill=\"#000000\"/>"));
        for it in &self.items {
            match it {
                Item::Dot { at } => {
                    let (x, y) = self.px(at, &b);
                    w(&mut out, format!("<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"#000000\"/>"));
                }
                Item::Glyph { at, color, label } => {
                    let (x, y) = self.px(at, &b);
                    w(&mut out, format!("<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3.5\" fill=\"{color}\"/>"));
                    w(
                        &mut out,
                        format!("<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"7\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>"),
                    );
                    w(
                        &mut out,
                        format!(
                            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" fill=\"{color}\">{}</text>",
                            x + 9.0,
                            y - 9.0,
                            escape(label)
                        ),
                    );
                }
                _ => {}
            }
        }
        w(&mut out, "</svg>".into());
        Ok(out)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn show(v: &QVector) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn valuation_cone_items(scene: &mut Scene, v: &Cone) -> Result<(), CliError> {
    scene.cone(v, "#e6e6e6")?;
    if !v.is_full_dimensional() || v.dim() < scene.dim {
        return Ok(());
    }
    // Boundary rays of 𝒱: the rays of its facets.
    for f in v.facets() {
        let facet = v.face_of(f)?;
        for r in facet.rays() {
            scene.boundary_ray(r)?;
        }
        for l in facet.lineality() {
            scene.boundary_ray(l)?;
            scene.boundary_ray(&l.neg())?;
        }
    }
    Ok(())
}

fn palette_items(scene: &mut Scene, palette: &Palette) -> Result<(), CliError> {
    for (i, c) in palette.colors().iter().enumerate() {
        scene.glyph(&c.rho, i, c.id.clone())?;
    }
    Ok(())
}

/// The valuation cone, shaded, and the palette as ring glyphs.
pub fn render_valuation_cone(v: &Cone, palette: &Palette) -> Result<String, CliError> {
    let mut scene = Scene::new(v.ambient_dim(), "valuation cone and palette")?.with_axes();
    valuation_cone_items(&mut scene, v)?;
    palette_items(&mut scene, palette)?;
    scene.to_svg()
}

/// A colored fan over the valuation cone; colors as ring glyphs.
pub fn render_colored_fan(fan: &ColoredFan) -> Result<String, CliError> {
    let mut scene = Scene::new(fan.dim(), "colored fan")?.with_axes();
    valuation_cone_items(&mut scene, fan.valuation_cone())?;
    for cc in fan.maximal_cones() {
        scene.cone(&cc.sigma, "#b4b4b4")?;
    }
    let mut rays: Vec<QVector> = fan.all_cones().iter().filter(|c| c.sigma.dim() == 1).map(|c| c.sigma.rays()[0].clone()).collect();
    rays.sort();
    rays.dedup();
    for r in &rays {
        scene.ray(r, None)?;
    }
    palette_items(&mut scene, fan.palette())?;
    scene.to_svg()
}

/// `Σ_Z` with coordinate rays labelled by their basis names.
pub fn render_toric_fan(z: &ToricFan) -> Result<String, CliError> {
    let mut scene = Scene::new(z.ambient_dim(), "toric fan")?;
    for c in z.maximal_cones() {
        scene.cone(c, "#c8c8c8")?;
    }
    let names = z.layout().basis_names();
    let d = z.ambient_dim();
    for r in z.rays() {
        let label = (0..d).find(|&i| *r == QVector::unit(d, i)).map(|i| names[i].clone()).unwrap_or_else(|| show(r));
        scene.ray(r, Some(label))?;
    }
    scene.to_svg()
}

pub fn render_complex(c: &PolyhedralComplex, title: &str) -> Result<String, CliError> {
    let mut scene = Scene::new(c.ambient_dim(), title)?.with_axes();
    scene.complex(c)?;
    scene.to_svg()
}
