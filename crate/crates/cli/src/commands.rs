//! Command-line surface. Every command produces one serializable report;
//! `main` prints it as JSON or as a table and maps the outcome to an exit code.

use std::f64::consts::PI;

use clap::{Args, Parser, Subcommand, ValueEnum};
use regge_core::leibon::{solve_holonomy, volume_routes};
use regge_core::oracle::{klein_vertices, schlafli_residual, volume_numeric, KleinTetra, SchlafliReport};
use regge_core::sample::SampleBox;
use regge_core::scissors::{decompose_along, regge, regge_orbit, verify_scissors, Firepole, LPiece, ReggeTransform};
use regge_core::tetra::{classify, TetAngles, TetraClass, TetraKind};
use regge_core::Error;
use serde::Serialize;

use crate::report::{table, Quantity};
use crate::suite::{run_suite, SuiteConfig};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_VERIFICATION: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

/// Accuracy claimed for volumes computed from the closed formulas.
pub const VOLUME_TOL: f64 = 1e-10;

const ANGLE_NAMES: [&str; 6] = ["A", "B", "C", "A'", "B'", "C'"];

#[derive(Debug, Parser)]
#[command(name = "regge", version, about = "Hyperbolic tetrahedron volumes and Regge scissors congruences")]
pub struct Cli {
    /// Read and print angles in degrees instead of radians.
    #[arg(long, global = true)]
    pub degrees: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct AngleArgs {
    /// Dihedral angles A B C A' B' C' (A, A′ opposite; likewise B, C).
    #[arg(value_names = ANGLE_NAMES, num_args = 6, allow_hyphen_values = true, required_unless_present = "equiangular")]
    pub angles: Vec<String>,

    /// Use the same angle on all six edges.
    #[arg(long, conflicts_with = "angles", allow_hyphen_values = true)]
    pub equiangular: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    A,
    B,
    C,
}

impl From<Which> for ReggeTransform {
    fn from(w: Which) -> Self {
        match w {
            Which::A => ReggeTransform::A,
            Which::B => ReggeTransform::B,
            Which::C => ReggeTransform::C,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FirepoleArg {
    Aa,
    Bb,
    Cc,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Volume, classification and holonomy diagnostics.
    Volume(AngleArgs),
    /// The sixteen signed pieces of 2T.
    Decompose {
        #[command(flatten)]
        angles: AngleArgs,
        #[arg(long, value_enum, default_value_t = FirepoleArg::Aa)]
        firepole: FirepoleArg,
    },
    /// Apply a Regge symmetry.
    Regge {
        #[command(flatten)]
        angles: AngleArgs,
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Regge orbit up to relabeling, with volumes.
    Orbit {
        #[command(flatten)]
        angles: AngleArgs,
        #[arg(long, default_value_t = 64)]
        max_size: usize,
    },
    /// Scissors-congruence certificate for 2T and 2R(T).
    Verify {
        #[command(flatten)]
        angles: AngleArgs,
        #[arg(long, value_enum, default_value_t = Which::B)]
        which: Which,
    },
    /// Klein-model quadrature volume and Schläfli residuals.
    Oracle {
        #[command(flatten)]
        angles: AngleArgs,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 1e-5)]
        step: f64,
    },
    /// The full acceptance battery on seeded random tetrahedra.
    Suite(SuiteArgs),
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, env = "REGGE_SUITE_SEED", default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 25)]
    pub oracle_count: usize,
    /// Center of the sampling box (radians).
    #[arg(long, default_value_t = SampleBox::default().center)]
    pub box_center: f64,
    #[arg(long, default_value_t = SampleBox::default().half_width)]
    pub box_half_width: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub quadrature_tol: f64,
    #[arg(long, default_value_t = 1e-5)]
    pub schlafli_step: f64,
}

/// A finished command: the report and the exit code it earned.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: u8,
    pub report: serde_json::Value,
    /// Pretty JSON with struct fields in declaration order.
    pub json: String,
    /// Human-readable lines for stderr.
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn new<T: Serialize>(code: u8, report: &T) -> Outcome {
        Outcome {
            code,
            report: serde_json::to_value(report).unwrap_or(serde_json::Value::Null),
            json: serde_json::to_string_pretty(report).unwrap_or_default(),
            diagnostics: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", self.json),
            Format::Table => table(&self.report),
        }
    }
}

#[derive(Debug, Serialize)]
struct ErrorReport {
    error: String,
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    classification: Option<TetraClass>,
}

fn error_outcome(e: &Error) -> Outcome {
    let (kind, code, classification) = match e {
        Error::Domain(_) => ("domain", EXIT_INPUT, None),
        Error::WrongClass { found, .. } => ("classification", EXIT_INPUT, Some((**found).clone())),
        Error::NoConvergence { .. } => ("no_convergence", EXIT_NUMERICAL, None),
        Error::Degenerate(_) => ("degenerate", EXIT_NUMERICAL, None),
        Error::NonRealAngle { .. } => ("non_real_angle", EXIT_NUMERICAL, None),
        Error::Numerical(_) => ("numerical", EXIT_NUMERICAL, None),
    };
    let mut out = Outcome::new(
        code,
        &ErrorReport {
            error: e.to_string(),
            kind,
            classification,
        },
    );
    out.diagnostics.push(format!("error: {e}"));
    out
}

fn input_error(message: String) -> Outcome {
    let mut out = Outcome::new(
        EXIT_INPUT,
        &ErrorReport {
            error: message.clone(),
            kind: "input",
            classification: None,
        },
    );
    out.diagnostics.push(format!("error: {message}"));
    out
}

/// Parses the six angles, naming the offending field on failure.
pub fn parse_angles(args: &AngleArgs, degrees: bool) -> Result<TetAngles, String> {
    let raw: Vec<(&str, &str)> = match &args.equiangular {
        Some(v) => ANGLE_NAMES.iter().map(|&n| (n, v.as_str())).collect(),
        None => ANGLE_NAMES.iter().copied().zip(args.angles.iter().map(String::as_str)).collect(),
    };
    if raw.len() != 6 {
        return Err(format!("expected 6 angles, got {}", raw.len()));
    }
    let mut v = [0.0; 6];
    for (k, (field, text)) in raw.iter().enumerate() {
        let x: f64 = text
            .trim()
            .parse()
            .map_err(|_| format!("angle {field}: cannot parse {text:?} as a number"))?;
        let x = if degrees { x.to_radians() } else { x };
        if !(x > 0.0 && x < PI) {
            return Err(format!("angle {field} = {text} is not in (0, π) {}", if degrees { "after conversion" } else { "radians" }));
        }
        v[k] = x;
    }
    Ok(TetAngles::from_array(v))
}

/// Angles for output, in the unit the user asked for.
#[derive(Debug, Clone, Copy, Serialize)]
struct AngleOut {
    unit: &'static str,
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "B")]
    b: f64,
    #[serde(rename = "C")]
    c: f64,
    #[serde(rename = "A'")]
    a_prime: f64,
    #[serde(rename = "B'")]
    b_prime: f64,
    #[serde(rename = "C'")]
    c_prime: f64,
}

fn angles_out(t: &TetAngles, degrees: bool) -> AngleOut {
    let f = |x: f64| if degrees { x.to_degrees() } else { x };
    AngleOut {
        unit: if degrees { "degrees" } else { "radians" },
        a: f(t.a),
        b: f(t.b),
        c: f(t.c),
        a_prime: f(t.a_prime),
        b_prime: f(t.b_prime),
        c_prime: f(t.c_prime),
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let deg = cli.degrees;
    let angles = |a: &AngleArgs| parse_angles(a, deg);
    let result = match &cli.command {
        Command::Volume(a) => angles(a).map(|t| volume_cmd(&t, deg)),
        Command::Decompose { angles: a, firepole } => angles(a).map(|t| decompose_cmd(&t, *firepole, deg)),
        Command::Regge { angles: a, which } => angles(a).map(|t| regge_cmd(&t, (*which).into(), deg)),
        Command::Orbit { angles: a, max_size } => angles(a).map(|t| orbit_cmd(&t, *max_size, deg)),
        Command::Verify { angles: a, which } => angles(a).map(|t| verify_cmd(&t, (*which).into())),
        Command::Oracle { angles: a, tol, step } => angles(a).map(|t| oracle_cmd(&t, *tol, *step)),
        Command::Suite(s) => Ok(suite_cmd(s)),
    };
    result.unwrap_or_else(input_error)
}

#[derive(Debug, Serialize)]
struct HolonomyOut {
    arg_z_minus: f64,
    arg_z_plus: f64,
    projection_distance: Quantity,
    vanishing_coefficients: Quantity,
    polynomial_residual: Quantity,
    experimental: bool,
}

#[derive(Debug, Serialize)]
struct VolumeOut {
    angles: AngleOut,
    classification: TetraClass,
    volume: Quantity,
    octahedron_volume: f64,
    dual_octahedron_volume: f64,
    u_volume: f64,
    route_disagreement: Quantity,
    holonomy: HolonomyOut,
}

fn volume_cmd(t: &TetAngles, deg: bool) -> Outcome {
    let class = classify(t);
    if !matches!(class.kind, TetraKind::Finite | TetraKind::Ideal) {
        return error_outcome(&Error::WrongClass {
            expected: "finite or ideal",
            found: Box::new(class),
        });
    }
    let (routes, roots) = match (volume_routes(t), solve_holonomy(t)) {
        (Ok(r), Ok(h)) => (r, h),
        (Err(e), _) | (_, Err(e)) => return error_outcome(&e),
    };
    let out = VolumeOut {
        angles: angles_out(t, deg),
        classification: class,
        volume: Quantity::new(routes.greg_minus, VOLUME_TOL),
        octahedron_volume: routes.octahedron,
        dual_octahedron_volume: routes.dual_octahedron,
        u_volume: routes.u,
        route_disagreement: Quantity::new(routes.max_disagreement(), 1e-9),
        holonomy: HolonomyOut {
            arg_z_minus: roots.arg_minus,
            arg_z_plus: roots.arg_plus,
            projection_distance: Quantity::new(roots.projection_distance, 1e-9),
            vanishing_coefficients: Quantity::new(
                roots.vanishing_coeffs.iter().fold(0.0, |m: f64, c| m.max(c.norm())),
                1e-12,
            ),
            polynomial_residual: Quantity::new(roots.residual(roots.z_minus).max(roots.residual(roots.z_plus)), 1e-10),
            experimental: roots.is_experimental(),
        },
    };
    let code = if out.route_disagreement.value < out.route_disagreement.tolerance {
        EXIT_PASS
    } else {
        EXIT_VERIFICATION
    };
    Outcome::new(code, &out)
}

#[derive(Debug, Serialize)]
struct DecomposeOut {
    angles: AngleOut,
    firepole: Firepole,
    pieces: Vec<LPiece>,
    sum_of_pieces: Quantity,
    twice_volume: f64,
    null_pieces: usize,
}

fn decompose_cmd(t: &TetAngles, firepole: FirepoleArg, deg: bool) -> Outcome {
    let fp = match firepole {
        FirepoleArg::Aa => Firepole::AA,
        FirepoleArg::Bb => Firepole::BB,
        FirepoleArg::Cc => Firepole::CC,
    };
    let d = match decompose_along(t, fp) {
        Ok(d) => d,
        Err(e) => return error_outcome(&e),
    };
    let v = match regge_core::leibon::volume(t) {
        Ok(v) => v,
        Err(e) => return error_outcome(&e),
    };
    let out = DecomposeOut {
        angles: angles_out(t, deg),
        firepole: fp,
        pieces: d.pieces.to_vec(),
        sum_of_pieces: Quantity::new(d.total_volume(), 1e-10),
        twice_volume: 2.0 * v,
        null_pieces: d.null_pieces(),
    };
    let code = if (out.sum_of_pieces.value - out.twice_volume).abs() < 1e-10 {
        EXIT_PASS
    } else {
        EXIT_VERIFICATION
    };
    Outcome::new(code, &out)
}

#[derive(Debug, Serialize)]
struct ReggeOut {
    which: ReggeTransform,
    s_value: f64,
    input: AngleOut,
    output: AngleOut,
    input_class: TetraKind,
    output_class: TetraKind,
}

fn regge_cmd(t: &TetAngles, which: ReggeTransform, deg: bool) -> Outcome {
    let image = regge(t, which);
    let s = which.s_value(t);
    Outcome::new(
        EXIT_PASS,
        &ReggeOut {
            which,
            s_value: if deg { s.to_degrees() } else { s },
            input: angles_out(t, deg),
            output: angles_out(&image, deg),
            input_class: classify(t).kind,
            output_class: classify(&image).kind,
        },
    )
}

#[derive(Debug, Serialize)]
struct OrbitMemberOut {
    word: String,
    angles: AngleOut,
    class: TetraKind,
    volume: Option<f64>,
}

#[derive(Debug, Serialize)]
struct OrbitOut {
    size: usize,
    truncated: bool,
    volume_spread: Quantity,
    members: Vec<OrbitMemberOut>,
}

fn orbit_cmd(t: &TetAngles, max_size: usize, deg: bool) -> Outcome {
    let orbit = match regge_orbit(t, max_size) {
        Ok(o) => o,
        Err(e) => return error_outcome(&e),
    };
    let out = OrbitOut {
        size: orbit.members.len(),
        truncated: orbit.truncated,
        volume_spread: Quantity::new(orbit.volume_spread(), 1e-9),
        members: orbit
            .members
            .iter()
            .map(|m| OrbitMemberOut {
                word: if m.word.is_empty() { "id".into() } else { m.word.clone() },
                angles: angles_out(&m.angles, deg),
                class: m.class,
                volume: m.volume,
            })
            .collect(),
    };
    let code = if out.volume_spread.value < out.volume_spread.tolerance {
        EXIT_PASS
    } else {
        EXIT_VERIFICATION
    };
    Outcome::new(code, &out)
}

fn verify_cmd(t: &TetAngles, which: ReggeTransform) -> Outcome {
    match verify_scissors(t, which) {
        Ok(r) => Outcome::new(if r.pass { EXIT_PASS } else { EXIT_VERIFICATION }, &r),
        Err(e) => error_outcome(&e),
    }
}

#[derive(Debug, Serialize)]
struct OracleOut {
    realization: KleinTetra,
    round_trip_error: Quantity,
    quadrature_volume: Quantity,
    triangles: usize,
    formula_volume: f64,
    formula_gap: Quantity,
    schlafli: SchlafliReport,
    schlafli_max_relative: Quantity,
    pass: bool,
}

fn oracle_cmd(t: &TetAngles, tol: f64, step: f64) -> Outcome {
    let run = || -> regge_core::Result<OracleOut> {
        let kt = klein_vertices(t)?;
        let numeric = volume_numeric(&kt, tol)?;
        let formula = regge_core::leibon::volume(t)?;
        let schlafli = schlafli_residual(t, step)?;
        let gap = Quantity::new((numeric.value - formula).abs(), 1e-5);
        let rel = Quantity::new(schlafli.max_relative(), 1e-3);
        Ok(OracleOut {
            round_trip_error: Quantity::new(kt.round_trip_error(), 1e-8),
            realization: kt,
            quadrature_volume: Quantity::new(numeric.value, tol),
            triangles: numeric.triangles,
            formula_volume: formula,
            pass: gap.value < gap.tolerance && rel.value < rel.tolerance,
            formula_gap: gap,
            schlafli,
            schlafli_max_relative: rel,
        })
    };
    match run() {
        Ok(out) => Outcome::new(if out.pass { EXIT_PASS } else { EXIT_VERIFICATION }, &out),
        Err(e) => error_outcome(&e),
    }
}

fn suite_cmd(s: &SuiteArgs) -> Outcome {
    let bounds = SampleBox {
        center: s.box_center,
        half_width: s.box_half_width,
    };
    if let Err(e) = bounds.validate() {
        return error_outcome(&e);
    }
    if s.count == 0 {
        return input_error("--count must be at least 1".into());
    }
    if s.quadrature_tol.is_nan() || s.quadrature_tol <= 0.0 {
        return input_error("--quadrature-tol must be positive".into());
    }
    let cfg = SuiteConfig {
        seed: s.seed,
        count: s.count,
        oracle_count: s.oracle_count,
        bounds,
        quadrature_tol: s.quadrature_tol,
        schlafli_step: s.schlafli_step,
    };
    let report = run_suite(&cfg);
    let mut out = Outcome::new(if report.pass { EXIT_PASS } else { EXIT_VERIFICATION }, &report);
    for c in &report.criteria {
        out.diagnostics.push(c.summary_line());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        let mut full = vec!["regge"];
        full.extend_from_slice(args);
        Cli::try_parse_from(full).unwrap()
    }

    #[test]
    fn parse_errors_name_the_field() {
        let c = cli(&["volume", "1.1", "1.1", "x", "1.1", "1.1", "1.1"]);
        let out = run(&c);
        assert_eq!(out.code, EXIT_INPUT);
        assert!(out.json.contains("angle C"), "{}", out.json);
        let c = cli(&["volume", "1.1", "1.1", "1.1", "1.1", "4", "1.1"]);
        let out = run(&c);
        assert_eq!(out.code, EXIT_INPUT);
        assert!(out.json.contains("angle B'"));
    }

    #[test]
    fn hyperideal_volume_exits_one() {
        let out = run(&cli(&["volume", "--equiangular", "1.0"]));
        assert_eq!(out.code, EXIT_INPUT);
        assert!(out.json.contains("hyperideal"), "{}", out.json);
    }

    #[test]
    fn degrees_convert_on_ingest() {
        let out = run(&cli(&["--degrees", "volume", "--equiangular", "68.75493541569878"]));
        assert_eq!(out.code, EXIT_PASS);
        let v = out.report["volume"]["value"].as_f64().unwrap();
        assert!((v - 0.046_712_861_991_968).abs() < 1e-10);
    }

    #[test]
    fn verify_fixed_point() {
        let out = run(&cli(&["verify", "--which", "a", "1.0", "1.2", "1.2", "0.9", "1.2", "1.2"]));
        assert_eq!(out.code, EXIT_PASS);
        assert_eq!(out.report["volume_gap"].as_f64(), Some(0.0));
        assert_eq!(out.report["multiset_gap"].as_f64(), Some(0.0));
    }

    #[test]
    fn every_command_runs() {
        let t = ["1.15", "1.2", "1.1", "1.18", "1.12", "1.16"];
        let with = |cmd: &[&str]| {
            let mut v = cmd.to_vec();
            v.extend_from_slice(&t);
            run(&cli(&v))
        };
        assert_eq!(with(&["decompose"]).code, EXIT_PASS);
        assert_eq!(with(&["decompose", "--firepole", "cc"]).code, EXIT_PASS);
        assert_eq!(with(&["regge", "--which", "c"]).code, EXIT_PASS);
        assert_eq!(with(&["orbit"]).code, EXIT_PASS);
        assert_eq!(with(&["oracle"]).code, EXIT_PASS);
        let table = with(&["verify"]).render(Format::Table);
        assert!(table.contains("pass: true"), "{table}");
    }
}
