//! Command-line front end: every computation of the library as one
//! machine-readable JSON record per invocation (or CSV with `--csv`).
//!
//! Exit codes: 0 success, 1 selftest tolerance failure, 2 parse/usage
//! error, 3 domain error (such as a point with `Im <= 0`).

mod config;
mod emit;
mod literals;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use emit::{csv, real, Json};
use torus_thurston::curves::kappa_sup;
use torus_thurston::finsler::{
    norm_delta_p, path_length, PathSegment, PiecewisePath, QuadratureConfig,
};
use torus_thurston::halfplane::{
    geodesic_arc_param, geodesic_through, BoundaryPoint, HalfPlanePoint, HyperbolicGeodesic,
    TangentVector,
};
use torus_thurston::selftest::{run_all, SelftestConfig};
use torus_thurston::shapes::{
    backward_ball_boundary, ellipse_foci, forward_ball_boundary, unit_circle_delta,
    unit_circle_delta_p, Polyline2D,
};
use torus_thurston::thurston::{
    delta, delta_oracle, delta_p, extremal_slopes, InterpolationParam, OracleConfig,
};

#[derive(Parser)]
#[command(
    name = "torus-thurston",
    version,
    about = "Thurston's asymmetric metric on the Teichmueller space of the torus",
    after_help = "Complex literals follow <real><sign><real>i (e.g. 0+1i, 1.5-2e-3i); \
                  'i' alone is the unit. Settings may also come from a TOML file named \
                  by TORUS_THURSTON_CONFIG with keys tol, grid_size, seed."
)]
struct Cli {
    /// Refinement tolerance for supremum searches.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Grid size of the compactified supremum search.
    #[arg(long, global = true)]
    grid_size: Option<usize>,
    /// Seed for randomized commands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Emit two-column CSV (for polyline output) instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
    /// Record wall-clock time in meta; off by default so identical inputs
    /// give byte-identical output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Fwd,
    Bwd,
}

#[derive(Subcommand)]
enum Command {
    /// Weak distance delta_p(z1, z2); --oracle adds the brute-force check.
    #[command(allow_negative_numbers = true)]
    Dist {
        #[arg(allow_hyphen_values = true)]
        z1: String,
        #[arg(allow_hyphen_values = true)]
        z2: String,
        #[arg(long, default_value_t = 0.0)]
        p: f64,
        #[arg(long)]
        oracle: bool,
    },
    /// Extremal slopes x_plus, x_minus (geodesic endpoints at infinity).
    #[command(allow_negative_numbers = true)]
    Slopes { #[arg(allow_hyphen_values = true)]
        z1: String, z2: String },
    /// Sample the geodesic arc from z1 to z2.
    #[command(allow_negative_numbers = true)]
    Geodesic {
        #[arg(allow_hyphen_values = true)]
        z1: String,
        #[arg(allow_hyphen_values = true)]
        z2: String,
        #[arg(long, default_value_t = 64)]
        n: usize,
    },
    /// Weak norm of the tangent vector v at z.
    #[command(allow_negative_numbers = true)]
    Norm {
        #[arg(allow_hyphen_values = true)]
        z: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
        #[arg(long, default_value_t = 0.0)]
        p: f64,
    },
    /// Unit tangent circle at z: parabola at p = 0, ellipse with foci for p > 0.
    #[command(allow_negative_numbers = true)]
    Circle {
        #[arg(allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 0.0)]
        p: f64,
        #[arg(long, default_value_t = 256)]
        n: usize,
    },
    /// Forward or backward metric sphere of radius r about z.
    #[command(allow_negative_numbers = true)]
    Ball {
        #[arg(allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Direction::Fwd)]
        direction: Direction,
    },
    /// Curve supremum kappa over classes with denominator <= q_max.
    #[command(allow_negative_numbers = true)]
    Kappa {
        #[arg(allow_hyphen_values = true)]
        z1: String,
        #[arg(allow_hyphen_values = true)]
        z2: String,
        #[arg(long, default_value_t = 10_000)]
        q_max: u64,
    },
    /// Length of a piecewise path read from a JSON file.
    #[command(allow_negative_numbers = true)]
    Length {
        path_file: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        p: f64,
    },
    /// Run the seeded invariant suite; exits 1 if any check fails.
    #[command(allow_negative_numbers = true)]
    Selftest {
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
}

enum CliError {
    Parse(String),
    Domain(String),
}

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

fn domain_err(msg: impl std::fmt::Display) -> CliError {
    CliError::Domain(msg.to_string())
}

fn main() {
    let cli = Cli::parse();
    let code = match execute(cli) {
        Ok(code) => code,
        Err(CliError::Parse(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            3
        }
    };
    std::process::exit(code);
}

fn point(text: &str) -> Result<HalfPlanePoint, CliError> {
    let (re, im) = literals::parse_complex(text).map_err(parse_err)?;
    HalfPlanePoint::new(re, im).map_err(domain_err)
}

fn param(p: f64) -> Result<InterpolationParam, CliError> {
    InterpolationParam::new(p).map_err(domain_err)
}

fn boundary_json(b: BoundaryPoint) -> Json {
    match b {
        BoundaryPoint::Finite(x) => Json::Real(x),
        BoundaryPoint::Infinity => Json::str("inf"),
    }
}

fn point_json(z: &HalfPlanePoint) -> Json {
    Json::pair(z.re(), z.im())
}

fn polyline_json(line: &Polyline2D) -> Json {
    Json::Object(vec![
        ("closed", Json::Bool(line.closed)),
        (
            "points",
            Json::Array(line.points.iter().map(|&(u, v)| Json::pair(u, v)).collect()),
        ),
    ])
}

fn polyline_csv(header: &str, points: &[(f64, f64)]) -> String {
    let rows: Vec<Vec<String>> = points.iter().map(|&(u, v)| vec![real(u), real(v)]).collect();
    csv(header, &rows)
}

fn scalar_csv(pairs: &[(&str, String)]) -> String {
    let rows: Vec<Vec<String>> = pairs
        .iter()
        .map(|(k, v)| vec![k.to_string(), v.clone()])
        .collect();
    csv("key,value", &rows)
}

struct Output {
    inputs: Json,
    result: Json,
    cs#[arg(allow_hyphen_values = true)]
        v: String,
    exit: i32,
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    let started = Instant::now();
    let settings = config::resolve(cli.tol, cli.grid_size, cli.seed).map_err(CliError::Parse)?;
    let oracle_cfg = OracleConfig {
        grid_size: settings.grid_size,
        refine_tol: settings.tol,
    };

    let command_name = match &cli.command {
        Command::Dist { .. } => "dist",
        Command::Slopes { .. } => "slopes",
        Command::Geodesic { .. } => "geodesic",
        Command::Norm { .. } => "norm",
        Command::Circle { .. } => "circle",
        Command::Ball { .. } => "ball",
        Command::Kappa { .. } => "kappa",
        Command::Length { .. } => "length",
        Command::Selftest { .. } => "selftest",
    };

    let out = run_command(&cli.command, &settings, &oracle_cfg)?;

    if cli.csv {
        print!("{}", out.csv);
    } else {
        let wall = if cli.timing {
            Json::Real(started.elapsed().as_secs_f64() * 1e3)
        } else {
            Json::Null
        };
        let meta = Json::Object(vec![
            (
                "tolerances",
                Json::Object(vec![
                    ("refine_tol", Json::Real(settings.tol)),
                    ("on_geodesic", Json::Real(1e-9)),
                    ("path_continuity", Json::Real(1e-9)),
                    ("sphere_membership", Json::Real(1e-9)),
                ]),
            ),
            (
                "oracle",
                Json::Object(vec![
                    ("grid_size", Json::Int(settings.grid_size as i128)),
                    ("refine_tol", Json::Real(settings.tol)),
                ]),
            ),
            ("wall_time_ms", wall),
        ]);
        let record = Json::Object(vec![
            ("command", Json::str(command_name)),
            ("inputs", out.inputs),
            ("result", out.result),
            ("meta", meta),
        ]);
        println!("{}", record.render());
    }
    Ok(out.exit)
}

fn run_command(
    command: &Command,
    settings: &config::Settings,
    oracle_cfg: &OracleConfig,
) -> Result<Output, CliError> {
    match command {
        Command::Dist { z1, z2, p, oracle } => {
            let z1 = point(z1)?;
            let z2 = point(z2)?;
            let pp = param(*p)?;
            let value = delta_p(pp, &z1, &z2);
            let inputs = Json::Object(vec![
                ("z1", point_json(&z1)),
                ("z2", point_json(&z2)),
                ("p", Json::Real(*p)),
                ("oracle", Json::Bool(*oracle)),
            ]);
            let mut fields = vec![("value", Json::Real(value))];
            let mut csv_rows = vec![("value", real(value))];
            if *oracle {
                if z1 == z2 {
                    return Err(domain_err("oracle needs distinct points"));
                }
                let sup = delta_oracle(&z1, &z2, oracle_cfg).map_err(domain_err)?;
                // The Busemann term of delta_p does not depend on x, so the
                // oracle supremum transfers by adding it.
                let oracle_value = 0.5 * pp.get() * (z1.im() / z2.im()).ln() + sup.value;
                let discrepancy = (value - oracle_value).abs();
                fields.push((
                    "oracle",
                    Json::Object(vec![
                        ("value", Json::Real(oracle_value)),
                        ("argmax", boundary_json(sup.argmax)),
                        ("attained", Json::Bool(sup.attained)),
                        ("discrepancy", Json::Real(discrepancy)),
                    ]),
                ));
                csv_rows.push(("oracle_value", real(oracle_value)));
                csv_rows.push(("discrepancy", real(discrepancy)));
            }
            Ok(Output {
                inputs,
                result: Json::Object(fields),
                csv: scalar_csv(&csv_rows),
                exit: 0,
            })
        }

        Command::Slopes { z1, z2 } => {
            let z1 = point(z1)?;
            let z2 = point(z2)?;
            let (x_plus, x_minus) = extremal_slopes(&z1, &z2).map_err(domain_err)?;
            let fmt = |b: BoundaryPoint| match b {
                BoundaryPoint::Finite(x) => real(x),
                BoundaryPoint::Infinity => "inf".to_string(),
            };
            Ok(Output {
                inputs: Json::Object(vec![("z1", point_json(&z1)), ("z2", point_json(&z2))]),
                result: Json::Object(vec![
                    ("x_plus", boundary_json(x_plus)),
                    ("x_minus", boundary_json(x_minus)),
                ]),
                csv: scalar_csv(&[("x_plus", fmt(x_plus)), ("x_minus", fmt(x_minus))]),
                exit: 0,
            })
        }

        Command::Geodesic { z1, z2, n } => {
            let z1 = point(z1)?;
            let z2 = point(z2)?;
            if *n < 2 {
                return Err(domain_err("need at least two samples"));
            }
            let g = geodesic_through(&z1, &z2).map_err(domain_err)?;
            let (x_plus, x_minus) = g.endpoints();
            let shape = match g {
                HyperbolicGeodesic::Semicircle { center, radius, .. } => Json::Object(vec![
                    ("kind", Json::str("semicircle")),
                    ("center", Json::Real(center)),
                    ("radius", Json::Real(radius)),
                ]),
                HyperbolicGeodesic::Vertical { x, .. } => {
                    Json::Object(vec![("kind", Json::str("vertical")), ("x", Json::Real(x))])
                }
            };
            let mut samples = Vec::with_capacity(*n);
            for j in 0..*n {
                let t = j as f64 / (*n - 1) as f64;
                let z = geodesic_arc_param(&g, &z1, &z2, t).map_err(domain_err)?;
                samples.push((z.re(), z.im()));
            }
            Ok(Output {
                inputs: Json::Object(vec![
                    ("z1", point_json(&z1)),
                    ("z2", point_json(&z2)),
                    ("n", Json::Int(*n as i128)),
                ]),
                result: Json::Object(vec![
                    ("shape", shape),
                    ("x_plus", boundary_json(x_plus)),
                    ("x_minus", boundary_json(x_minus)),
                    (
                        "samples",
                        Json::Array(samples.iter().map(|&(u, v)| Json::pair(u, v)).collect()),
                    ),
                ]),
                csv: polyline_csv("re,im", &samples),
                exit: 0,
            })
        }

        Command::Norm { z, v, p } => {
            let z = point(z)?;
            let (v_re, v_im) = literals::parse_complex(v).map_err(parse_err)?;
            let tv = TangentVector::new(z, v_re, v_im).map_err(domain_err)?;
            let pp = param(*p)?;
            let value = norm_delta_p(pp, &tv);
            Ok(Output {
                inputs: Json::Object(vec![
                    ("z", point_json(&z)),
                    ("v", Json::pair(v_re, v_im)),
                    ("p", Json::Real(*p)),
                ]),
                result: Json::Object(vec![("value", Json::Real(value))]),
                csv: scalar_csv(&[("value", real(value))]),
                exit: 0,
            })
        }

        Command::Circle { z, p, n } => {
            let z = point(z)?;
            let pp = param(*p)?;
            if *n < 3 {
                return Err(domain_err("need at least three samples"));
            }
            let (kind, line, foci) = if pp.get() == 0.0 {
                ("parabola", unit_circle_delta(&z, *n), None)
            } else {
                let line = unit_circle_delta_p(pp, &z, *n).map_err(domain_err)?;
                let foci = ellipse_foci(pp, &z).map_err(domain_err)?;
                ("ellipse", line, Some(foci))
            };
            let mut fields = vec![
                ("kind", Json::str(kind)),
                ("polyline", polyline_json(&line)),
            ];
            if let Some((f1, f2)) = foci {
                fields.push((
                    "foci",
                    Json::Array(vec![Json::pair(f1.0, f1.1), Json::pair(f2.0, f2.1)]),
                ));
            }
            Ok(Output {
                inputs: Json::Object(vec![
                    ("z", point_json(&z)),
                    ("p", Json::Real(*p)),
                    ("n", Json::Int(*n as i128)),
                ]),
                result: Json::Object(fields),
                csv: polyline_csv("u,v", &line.points),
                exit: 0,
            })
        }

        Command::Ball { z, r, n, direction } => {
            let z = point(z)?;
            if !(r.is_finite() && *r > 0.0) {
                return Err(domain_err(format!("radius must be positive, got {r}")));
            }
            if *n < 3 {
                return Err(domain_err("need at least three samples"));
            }
            let (dir_name, line) = match direction {
                Direction::Fwd => ("fwd", forward_ball_boundary(&z, *r, *n)),
                Direction::Bwd => (
                    "bwd",
                    backward_ball_boundary(&z, *r, *n).map_err(domain_err)?,
                ),
            };
            Ok(Output {
                inputs: Json::Object(vec![
                    ("z", point_json(&z)),
                    ("r", Json::Real(*r)),
                    ("n", Json::Int(*n as i128)),
                    ("direction", Json::str(dir_name)),
                ]),
                result: Json::Object(vec![
                    ("direction", Json::str(dir_name)),
                    ("polyline", polyline_json(&line)),
                ]),
                csv: polyline_csv("u,v", &line.points),
                exit: 0,
            })
        }

        Command::Kappa { z1, z2, q_max } => {
            let z1 = point(z1)?;
            let z2 = point(z2)?;
            if *q_max < 1 {
                return Err(domain_err("q_max must be at least 1"));
            }
            let (value, best) = kappa_sup(&z1, &z2, *q_max).map_err(domain_err)?;
            let exact = delta(&z1, &z2);
            let gap = exact - value;
            Ok(Output {
                inputs: Json::Object(vec![
                    ("z1", point_json(&z1)),
                    ("z2", point_json(&z2)),
                    ("q_max", Json::Int(*q_max as i128)),
                ]),
                result: Json::Object(vec![
                    ("value", Json::Real(value)),
                    (
                        "best",
                        Json::Object(vec![
                            ("p", Json::Int(best.p() as i128)),
                            ("q", Json::Int(best.q() as i128)),
                        ]),
                    ),
                    ("delta", Json::Real(exact)),
                    ("gap", Json::Real(gap)),
                ]),
                csv: scalar_csv(&[
                    ("value", real(value)),
                    ("best_p", best.p().to_string()),
                    ("best_q", best.q().to_string()),
                    ("delta", real(exact)),
                    ("gap", real(gap)),
                ]),
                exit: 0,
            })
        }

        Command::Length { path_file, p } => {
            let pp = param(*p)?;
            let path = load_path(path_file)?;
            let value =
                path_length(pp, &path, &QuadratureConfig::default()).map_err(domain_err)?;
            Ok(Output {
                inputs: Json::Object(vec![
                    ("path_file", Json::str(path_file.display().to_string())),
                    ("p", Json::Real(*p)),
                    ("segments", Json::Int(path.segments().len() as i128)),
                ]),
                result: Json::Object(vec![("value", Json::Real(value))]),
                csv: scalar_csv(&[("value", real(value))]),
                exit: 0,
            })
        }

        Command::Selftest { samples } => {
            let cfg = SelftestConfig {
                seed: settings.seed,
                samples: *samples,
                oracle: *oracle_cfg,
            };
            let outcomes = run_all(&cfg);
            let passed = outcomes.iter().all(|c| c.passed);
            let failed = outcomes.iter().filter(|c| !c.passed).count();
            let checks: Vec<Json> = outcomes
                .iter()
                .map(|c| {
                    Json::Object(vec![
                        ("name", Json::str(c.name)),
                        ("samples", Json::Int(c.samples as i128)),
                        ("worst", Json::Real(c.worst)),
                        ("tolerance", Json::Real(c.tolerance)),
                        ("passed", Json::Bool(c.passed)),
                    ])
                })
                .collect();
            let rows: Vec<Vec<String>> = outcomes
                .iter()
                .map(|c| {
                    vec![
                        c.name.to_string(),
                        c.samples.to_string(),
                        real(c.worst),
                        real(c.tolerance),
                        c.passed.to_string(),
                    ]
                })
                .collect();
            Ok(Output {
                inputs: Json::Object(vec![
                    ("seed", Json::Int(settings.seed as i128)),
                    ("samples", Json::Int(*samples as i128)),
                ]),
                result: Json::Object(vec![
                    ("passed", Json::Bool(passed)),
                    ("failed", Json::Int(failed as i128)),
                    ("checks", Json::Array(checks)),
                ]),
                csv: csv("name,samples,worst,tolerance,passed", &rows),
                exit: if passed { 0 } else { 1 },
            })
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PathFile {
    segments: Vec<SegmentSpec>,
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum SegmentSpec {
    Polyline { vertices: Vec<[f64; 2]> },
    Geodesic { from: [f64; 2], to: [f64; 2] },
}

fn load_path(path_file: &PathBuf) -> Result<PiecewisePath, CliError> {
    let text = std::fs::read_to_string(path_file)
        .map_err(|e| parse_err(format!("cannot read {}: {e}", path_file.display())))?;
    let spec: PathFile = serde_json::from_str(&text)
        .map_err(|e| parse_err(format!("bad path file {}: {e}", path_file.display())))?;
    if spec.segments.is_empty() {
        return Err(parse_err("path file has no segments"));
    }
    let mut segments = Vec::with_capacity(spec.segments.len());
    for seg in &spec.segments {
        match seg {
            SegmentSpec::Polyline { vertices } => {
                if vertices.len() < 2 {
                    return Err(parse_err("polyline segment needs at least two vertices"));
                }
                let mut points = Vec::with_capacity(vertices.len());
                for &[re, im] in vertices {
                    points.push(HalfPlanePoint::new(re, im).map_err(domain_err)?);
                }
                segments.push(PathSegment::Polyline(points));
            }
            SegmentSpec::Geodesic { from, to } => {
                let from = HalfPlanePoint::new(from[0], from[1]).map_err(domain_err)?;
                let to = HalfPlanePoint::new(to[0], to[1]).map_err(domain_err)?;
                segments.push(PathSegment::arc_between(from, to).map_err(domain_err)?);
            }
        }
    }
    PiecewisePath::new(segments).map_err(domain_err)
}
