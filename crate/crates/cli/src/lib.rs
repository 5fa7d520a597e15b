//! Batch front end for `sphtrop`: JSON problem files in, JSON results and SVG
//! figures out.
//!
//! Exit codes: 0 on success, 2 when the mathematics says no (for instance a
//! non-polyhedral fan handed to `build-z`), 1 for unreadable or malformed
//! input.

pub mod json;
pub mod problem;
pub mod render;
pub mod results;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sphtrop::colored_fans::{is_polyhedral, polyhedrality_witness, validate_colored_fan, ColoredFan};
use sphtrop::fan_builder::{build_fan_z, build_fan_zhat, AFamily};
use sphtrop::qpoly::PolyhedralComplex;
use sphtrop::spherical::{
    check_closure_commutes, push_tropicalization, toric_tropicalization, trop_closure, trop_subvariety, trop_subvariety_lifted,
    valuation_cone, ClosureMode, SpaceDescriptor, SphericalTrop,
};
use sphtrop::trop_engine::TropicalPolynomial;
use thiserror::Error;

use json::{ComplexJson, ConeJson};
use problem::{FanJson, Problem};
use results::{
    BuildZPayload, CheckPayload, ClosurePayload, HatFanJson, PushPayload, PushedPieceJson, RenderPayload, ResultFile, ToricFanJson,
    TropPayload, ValidatePayload, ValuationConePayload,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("i/o: {0}")]
    Io(String),
    #[error("schema: {0}")]
    Schema(String),
    #[error("render: {0}")]
    Render(String),
    #[error(transparent)]
    Domain(#[from] sphtrop::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Schema(_) | CliError::Domain(sphtrop::Error::Parse(_)) => 1,
            CliError::Render(_) | CliError::Domain(_) => 2,
        }
    }

    fn kind(&self) -> String {
        match self {
            CliError::Io(_) => "Io".into(),
            CliError::Schema(_) => "Schema".into(),
            CliError::Render(_) => "Render".into(),
            CliError::Domain(e) => format!("{e:?}").split(['(', ' ', '{']).next().unwrap_or("Domain").to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "sphtrop", version, about = "Spherical tropicalization through toric embeddings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the colored fan axioms and polyhedrality.
    ValidateFan(Opts),
    /// Build the toric fan Σ_Z, the cover fan and the torus Γ.
    BuildZ(Opts),
    /// Compute the valuation cone of the descriptor.
    ValuationCone(Opts),
    /// Tropicalize the subvariety (or G/H itself).
    Trop(Opts),
    /// Tropicalize the closure of the subvariety in the embedding.
    TropClosure(Opts),
    /// Push the tropicalized closure forward along per-orbit linear maps.
    Push(Opts),
    /// Compare the tropicalized closure with the closure of the tropicalization.
    CheckClosure(Opts),
    /// Draw a one- or two-dimensional object as SVG.
    Render(Opts),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::ValidateFan(_) => "validate-fan",
            Command::BuildZ(_) => "build-z",
            Command::ValuationCone(_) => "valuation-cone",
            Command::Trop(_) => "trop",
            Command::TropClosure(_) => "trop-closure",
            Command::Push(_) => "push",
            Command::CheckClosure(_) => "check-closure",
            Command::Render(_) => "render",
        }
    }

    pub fn opts(&self) -> &Opts {
        match self {
            Command::ValidateFan(o)
            | Command::BuildZ(o)
            | Command::ValuationCone(o)
            | Command::Trop(o)
            | Command::TropClosure(o)
            | Command::Push(o)
            | Command::CheckClosure(o)
            | Command::Render(o) => o,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// Problem file.
    pub input: PathBuf,
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; `svg` only for `render`, which defaults to it.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Use the "exactly one" family of subsets when building Σ_Z.
    #[arg(long)]
    pub exact_one_variant: bool,
    /// Build one Σ_Z for the whole fan (requires a polyhedral fan).
    #[arg(long, conflicts_with = "per_cone")]
    pub global: bool,
    /// Treat each maximal colored cone as its own simple embedding.
    #[arg(long)]
    pub per_cone: bool,
    /// Summary on standard error.
    #[arg(long)]
    pub verbose: bool,
    /// What `render` draws: fan, valuation-cone, z, trop or toric-trop.
    #[arg(long)]
    pub object: Option<String>,
}

/// What an invocation produced.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
    pub log: Vec<String>,
}

const PREVARIETY_WARNING: &str =
    "prevariety-only: with more than one generator the result is the tropical prevariety of the generators, which may be larger than the tropical variety";

/// Runs one subcommand on already-read problem text.
pub fn run_text(command: &Command, text: &str) -> Outcome {
    let op = command.name();
    let opts = command.opts();
    match Problem::parse(text).and_then(|p| dispatch(command, &p)) {
        Ok((out, code, log)) => Outcome { output: out, code, log },
        Err(e) => {
            let code = e.exit_code();
            let output = if code == 2 && opts.format != Some(Format::Svg) {
                to_json(&ResultFile::error(op, &e.kind(), e.to_string()))
            } else {
                String::new()
            };
            Outcome {
                output,
                code,
                log: vec![format!("{op}: {e}")],
            }
        }
    }
}

/// Reads the problem file and runs.
pub fn run(command: &Command) -> Outcome {
    let opts = command.opts();
    match std::fs::read_to_string(&opts.input) {
        Ok(text) => run_text(command, &text),
        Err(e) => Outcome {
            output: String::new(),
            code: 1,
            log: vec![format!("{}: i/o: {}: {e}", command.name(), opts.input.display())],
        },
    }
}

pub fn to_json<T: serde::Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("results serialize");
    s.push('\n');
    s
}

fn family(opts: &Opts, p: &Problem) -> AFamily {
    if opts.exact_one_variant || p.options.exact_one_variant {
        AFamily::ExactlyOne
    } else {
        AFamily::AtLeastOne
    }
}

fn mode(opts: &Opts, p: &Problem, fan: &ColoredFan) -> Result<(ClosureMode, &'static str), CliError> {
    if opts.global {
        return Ok((ClosureMode::Global, "global"));
    }
    if opts.per_cone {
        return Ok((ClosureMode::PerCone, "per-cone"));
    }
    match p.options.mode.as_deref() {
        Some("global") => Ok((ClosureMode::Global, "global")),
        Some("per-cone") => Ok((ClosureMode::PerCone, "per-cone")),
        Some(other) => Err(CliError::Schema(format!("unknown mode `{other}`; use `global` or `per-cone`"))),
        None if is_polyhedral(fan)? => Ok((ClosureMode::Global, "global")),
        None => Ok((ClosureMode::PerCone, "per-cone")),
    }
}

fn warnings(certified: bool) -> Vec<String> {
    if certified {
        vec![]
    } else {
        vec![PREVARIETY_WARNING.into()]
    }
}

fn descriptor_and_y(p: &Problem) -> Result<(SpaceDescriptor, Vec<TropicalPolynomial>), CliError> {
    let d = p.descriptor()?;
    let y = p.subvariety(&d)?;
    Ok((d, y))
}

fn closure(p: &Problem, opts: &Opts) -> Result<(SphericalTrop, &'static str), CliError> {
    let (d, y) = descriptor_and_y(p)?;
    let fan = p.fan()?;
    let (m, name) = mode(opts, p, &fan)?;
    Ok((trop_closure(&d, &fan, &y, m)?, name))
}

type Dispatched = (String, i32, Vec<String>);

fn ok<P: serde::Serialize>(op: &str, payload: &P, input: &[&str], warns: Vec<String>) -> Dispatched {
    let log = warns.iter().map(|w| format!("{op}: warning: {w}")).collect();
    (to_json(&ResultFile::ok(op, payload, input, warns)), 0, log)
}

fn dispatch(command: &Command, p: &Problem) -> Result<Dispatched, CliError> {
    let op = command.name();
    let opts = command.opts();
    if let Some(declared) = &p.operation {
        if declared != op {
            return Err(CliError::Schema(format!("problem file is for `{declared}`, not `{op}`")));
        }
    }
    if opts.format == Some(Format::Svg) && !matches!(command, Command::Render(_)) {
        return Err(CliError::Schema("`--format svg` is only available for `render`".into()));
    }
    let mut out = match command {
        Command::ValidateFan(_) => {
            let fan = p.fan()?;
            let report = validate_colored_fan(&fan)?;
            let payload = ValidatePayload::new(FanJson::from_fan(&fan), &report, fan.is_strictly_convex()?, polyhedrality_witness(&fan)?);
            if payload.valid {
                ok(op, &payload, &["fan"], vec![])
            } else {
                let mut r = ResultFile::ok(op, &payload, &["fan"], vec![]);
                r.status = "error".into();
                r.error = Some(results::ErrorJson {
                    kind: "InvalidColoredFan".into(),
                    message: "the colored fan violates the fan axioms".into(),
                });
                (to_json(&r), 2, vec![format!("{op}: the colored fan is not valid")])
            }
        }
        Command::BuildZ(_) => {
            let fan = p.fan()?;
            let fam = family(opts, p);
            let (z, hat, gamma) = build_fan_zhat(&fan, fam)?;
            let payload = BuildZPayload {
                family: if fam == AFamily::ExactlyOne { "exactly-one" } else { "at-least-one" }.into(),
                z: ToricFanJson::new(&z),
                hat: HatFanJson::new(&hat, &gamma),
            };
            ok(op, &payload, &[], vec![])
        }
        Command::ValuationCone(_) => {
            let d = p.descriptor()?;
            let payload = ValuationConePayload {
                cone: ConeJson::from_cone(&valuation_cone(&d)?),
            };
            ok(op, &payload, &[], warnings(d.generators().len() <= 1))
        }
        Command::Trop(_) => {
            let (d, y) = descriptor_and_y(p)?;
            let toric = toric_tropicalization(&d, &y)?;
            let (complex, image, certified) = match p.lift(&d)? {
                Some(lift) => {
                    let l = trop_subvariety_lifted(&d, &lift, &y)?;
                    (l.psi_image, Some(ComplexJson::from_complex(&l.image)), l.certified)
                }
                None => {
                    let t = trop_subvariety(&d, &y)?;
                    (t.complex, None, t.certified)
                }
            };
            let payload = TropPayload {
                toric: ComplexJson::from_complex(&toric.complex),
                complex: ComplexJson::from_complex(&complex),
                image,
                certified,
            };
            ok(op, &payload, &[], warnings(certified))
        }
        Command::TropClosure(_) => {
            let (t, name) = closure(p, opts)?;
            ok(op, &ClosurePayload::new(name, &t), &["mode"], warnings(t.certified))
        }
        Command::Push(_) => {
            let (t, name) = closure(p, opts)?;
            let maps = p.orbit_maps(p.descriptor()?.layout().small_dim())?;
            let pushed = push_tropicalization(&maps, &t)?;
            let payload = PushPayload {
                source: ClosurePayload::new(name, &t),
                pieces: pushed
                    .iter()
                    .map(|(&target, c)| PushedPieceJson {
                        target,
                        complex: ComplexJson::from_complex(c),
                    })
                    .collect(),
            };
            ok(op, &payload, &[], warnings(t.certified))
        }
        Command::CheckClosure(_) => {
            let (d, y) = descriptor_and_y(p)?;
            let fan = p.fan()?;
            let (m, name) = mode(opts, p, &fan)?;
            let report = check_closure_commutes(&d, &fan, &y, m)?;
            let log = if report.equal { vec![] } else { vec![format!("{op}: the two sides differ")] };
            let (text, code, mut l) = ok(op, &CheckPayload::new(name, &report), &["mode"], warnings(report.certified));
            l.extend(log);
            (text, code, l)
        }
        Command::Render(_) => render(p, opts)?,
    };
    if opts.verbose {
        out.2.insert(0, format!("{op}: done, exit {}", out.1));
    }
    Ok(out)
}

fn render(p: &Problem, opts: &Opts) -> Result<Dispatched, CliError> {
    let has_fan = p.fan.is_some() || p.lift.as_ref().is_some_and(|l| l.fan.is_some());
    let object = opts
        .object
        .clone()
        .or_else(|| p.options.object.clone())
        .unwrap_or_else(|| {
            if has_fan {
                "fan".into()
            } else if !p.subvariety.is_empty() {
                "trop".into()
            } else {
                "valuation-cone".into()
            }
        });
    let svg = match object.as_str() {
        "fan" => render::render_colored_fan(&p.fan()?)?,
        "z" => {
            let z = build_fan_z(&p.fan()?, family(opts, p))?;
            render::render_toric_fan(&z)?
        }
        "valuation-cone" => {
            let d = p.descriptor()?;
            let v = match &p.fan {
                Some(f) if f.valuation_cone.is_some() => p.fan()?.valuation_cone().clone(),
                _ => valuation_cone(&d)?,
            };
            render::render_valuation_cone(&v, &d.palette())?
        }
        "trop" => {
            let (d, y) = descriptor_and_y(p)?;
            render::render_complex(&trop_subvariety(&d, &y)?.complex, "tropicalization")?
        }
        "toric-trop" => {
            let (d, y) = descriptor_and_y(p)?;
            let c: PolyhedralComplex = toric_tropicalization(&d, &y)?.complex;
            render::render_complex(&c, "toric tropicalization")?
        }
        other => {
            return Err(CliError::Schema(format!(
                "unknown object `{other}`; use fan, valuation-cone, z, trop or toric-trop"
            )))
        }
    };
    if opts.format == Some(Format::Json) {
        Ok(ok("render", &RenderPayload { object, svg }, &[], vec![]))
    } else {
        Ok((svg, 0, vec![]))
    }
}
