//! Command-line surface: parse a JSON scenario instance, dispatch the
//! requested expectation, and emit polygons as JSON, CSV, or SVG.

mod instance;
mod render;

use clap::{Parser, Subcommand};
use instance::{parse_instance, Instance};
use render::{render_sets, BBox, Format};
use setexp::error::Error;
use setexp::geometry::{vec2, Cone2, ConvexSet2};
use setexp::risk_depth::{
    self, depth_with, flag_outliers, make_portfolio, DepthParams, Provenance, SampleOfSets,
};
use setexp::set_expectation::{
    example62, lift_expectation, sublinear, superlinear_min_lower, superlinear_reduced_max,
    zonoid_region,
};
use setexp::{NonlinearSpec, RepresentingFamily};
use std::io::Read;

#[derive(Parser)]
#[command(
    name = "setexp",
    about = "Linear and nonlinear set-valued expectations of random convex sets in the plane",
    version
)]
struct Cli {
    /// Instance JSON file; stdin when omitted
    #[arg(short, long, global = true)]
    input: Option<std::path::PathBuf>,
    /// Direction-grid size for dual reconstructions
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Seed for Monte Carlo paths
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Numeric tolerance for membership tests
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Output format: json, csv or svg
    #[arg(long, global = true, default_value = "json")]
    format: Format,
    /// SVG clipping window as x0,y0,x1,y1
    #[arg(long, global = true)]
    bbox: Option<BBox>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Selection expectation of a named random set
    Expect { set: String },
    /// Minimal sublinear expectation of a named random set
    Sublinear { set: String },
    /// Reduced maximal superlinear expectation of a named random set
    Superlinear { set: String },
    /// Minimal superlinear extension via boundary selections
    SuperlinearMin {
        set: String,
        #[arg(long, default_value_t = 400)]
        resolution: usize,
    },
    /// Zonoid-trimmed region of a named random vector
    Zonoid {
        vector: String,
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Lift expectation of a named random scalar
    Lift { scalar: String },
    /// Depth of a named shape with respect to a named random set
    Depth {
        shape: String,
        set: String,
        #[arg(long, default_value_t = 1e-3)]
        lambda_tol: f64,
    },
    /// Acceptability and risk set of a portfolio built from a named vector
    Risk {
        vector: String,
        #[arg(long, default_value = "consumption")]
        mode: String,
    },
    /// Two-scenario wedge benchmark: reduced maximal translate and minimal extension
    Example62 {
        #[arg(long, default_value = "1,-1", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 2.0)]
        pi: f64,
        #[arg(long = "pi-prime", default_value_t = 2.0)]
        pi_prime: f64,
        #[arg(long, default_value_t = 0.7)]
        alpha: f64,
        #[arg(long, default_value_t = 400)]
        resolution: usize,
    },
    /// Leave-one-out depth outliers in the instance sample
    FlagOutliers {
        #[arg(long, default_value_t = 0.1)]
        threshold: f64,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Validation(_) | Error::Domain(_) => 2,
                Error::Capacity(_) => 3,
            }
        }
    });
}

fn read_instance(cli: &Cli) -> Result<Instance, Error> {
    let text = match &cli.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Validation(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    parse_instance(&text)
}

fn spec_for(inst: &Instance, cone: Cone2, grid: usize) -> Result<NonlinearSpec, Error> {
    NonlinearSpec::new(inst.family.clone(), cone, grid)
}

fn emit(cli: &Cli, grid: usize, sets: &[(&str, &ConvexSet2)]) -> Result<i32, Error> {
    print!("{}", render_sets(sets, cli.format, grid, cli.bbox)?);
    Ok(0)
}

/// Exit code 4 marks an empty result where the operation guarantees a
/// non-empty value on valid input.
fn emit_nonempty(cli: &Cli, grid: usize, name: &str, set: &ConvexSet2) -> Result<i32, Error> {
    let code = if set.is_empty() {
        eprintln!("error: {name} produced an empty set where a non-empty one is guaranteed");
        4
    } else {
        0
    };
    print!("{}", render_sets(&[(name, set)], cli.format, grid, cli.bbox)?);
    Ok(code)
}

fn run(cli: &Cli) -> Result<i32, Error> {
    // the benchmark command is self-contained and reads no instance
    if let Command::Example62 {
        a,
        pi,
        pi_prime,
        alpha,
        resolution,
    } = &cli.command
    {
        let parts: Vec<f64> = a
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| Error::Validation(format!("bad --a: {e}")))?;
        if parts.len() != 2 {
            return Err(Error::Validation("--a must be two numbers x,y".into()));
        }
        let (tilde, under) =
            example62(vec2(parts[0], parts[1]), *pi, *pi_prime, *alpha, *resolution)?;
        return emit(
            cli,
            cli.grid.unwrap_or(3600),
            &[("reduced-maximal", &tilde), ("minimal-extension", &under)],
        );
    }
    let inst = read_instance(cli)?;
    let grid = cli.grid.unwrap_or(inst.grid_size);
    let seed = cli.seed.unwrap_or(inst.seed);
    match &cli.command {
        Command::Expect { set } => {
            let x = inst.set(set)?;
            let e = x.selection_expectation();
            emit_nonempty(cli, grid, "expectation", &e)
        }
        Command::Sublinear { set } => {
            let x = inst.set(set)?;
            let spec = spec_for(&inst, *x.cone(), grid)?;
            let e = sublinear(x, &spec)?;
            if e.is_whole_plane() {
                eprintln!("note: every support direction is unbounded; the expectation is the whole plane");
            }
            emit(cli, grid, &[("sublinear", &e)])
        }
        Command::Superlinear { set } => {
            let x = inst.set(set)?;
            let spec = spec_for(&inst, *x.cone(), grid)?;
            let u = superlinear_reduced_max(x, &spec)?;
            if u.is_empty() {
                eprintln!("note: the superlinear expectation is empty");
            }
            emit(cli, grid, &[("superlinear", &u)])
        }
        Command::SuperlinearMin { set, resolution } => {
            let x = inst.set(set)?;
            let spec = spec_for(&inst, *x.cone(), grid)?;
            let u = superlinear_min_lower(x, &spec, *resolution)?;
            if u.is_empty() {
                eprintln!("note: the minimal extension is empty");
            }
            emit(cli, grid, &[("superlinear-min", &u)])
        }
        Command::Zonoid { vector, alpha } => {
            let xi = inst.vector(vector)?;
            let alpha = alpha.unwrap_or(match &inst.family {
                RepresentingFamily::Avar { alpha } => *alpha,
                _ => 0.5,
            });
            let z = zonoid_region(xi, alpha)?;
            emit_nonempty(cli, grid, "zonoid", &z)
        }
        Command::Lift { scalar } => {
            let beta = inst.scalar(scalar)?;
            let z = lift_expectation(beta)?;
            emit_nonempty(cli, grid, "lift", &z)
        }
        Command::Depth {
            shape,
            set,
            lambda_tol,
        } => {
            let f = inst.shape(shape)?;
            let x = inst.set(set)?;
            let params = DepthParams {
                grid_size: grid.min(720),
                seed,
                ..DepthParams::default()
            };
            let d = depth_with(f, x, *lambda_tol, params)?;
            println!("{{\"depth\": {d}}}");
            Ok(0)
        }
        Command::Risk { vector, mode } => {
            let xi = inst.vector(vector)?;
            let provenance = match mode.as_str() {
                "consumption" | "consumption_only" => Provenance::ConsumptionOnly,
                "exchange" | "full_exchange" => Provenance::FullExchange,
                "cone" | "cone_exchange" => {
                    let k = inst.exchange_cone.ok_or_else(|| {
                        Error::Validation(
                            "cone exchange needs an \"exchange_cone\" in the instance".into(),
                        )
                    })?;
                    Provenance::ConeExchange(k)
                }
                other => {
                    return Err(Error::Validation(format!(
                        "unknown risk mode \"{other}\" (expected consumption, exchange or cone)"
                    )))
                }
            };
            let p = make_portfolio(xi, provenance)?;
            let spec = spec_for(&inst, *p.set().cone(), grid)?;
            // 0 is in U(X) exactly when it is in the reflected risk set
            let r = risk_depth::risk_set(&p, &spec)?;
            let accepted = r.contains_point(vec2(0.0, 0.0), cli.tol);
            if cli.format == Format::Json {
                let mut obj = serde_json::Map::new();
                obj.insert("acceptable".into(), serde_json::Value::Bool(accepted));
                obj.insert(
                    "risk".into(),
                    serde_json::to_value(instance::SetRepr::from_set(&r)).unwrap(),
                );
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::Value::Object(obj)).unwrap()
                );
                Ok(0)
            } else {
                eprintln!("acceptable: {accepted}");
                emit(cli, grid, &[("risk", &r)])
            }
        }
        Command::Example62 { .. } => unreachable!("handled before the instance is read"),
        Command::FlagOutliers { threshold } => {
            let sample = SampleOfSets::new(inst.sample.clone())?;
            let cone = *sample.observations()[0].recession();
            let spec = spec_for(&inst, cone, grid.min(720))?;
            let flagged = flag_outliers(&sample, &spec, *threshold)?;
            println!("{}", serde_json::to_string(&flagged).unwrap());
            Ok(0)
        }
    }
}
