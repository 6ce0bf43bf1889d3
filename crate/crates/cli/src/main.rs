//! Command-line front end: type checks, enumeration, degeneration reports,
//! the closure battery, the Bertini/obstruction family, and the exact map
//! engine. Exit codes: 0 = computed (even when the mathematical answer is
//! negative), 2 = parse error, 3 = precondition violation, 4 = overflow.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num::rational::BigRational;
use serde_json::json;

use cremona_core::degeneration;
use cremona_core::enumeration;
use cremona_core::error::Error;
use cremona_core::halphen;
use cremona_core::lattice::{
    characteristic_matrix, dual_type, hudson_test, parse_type_literal, HomaloidalType,
    HudsonOutcome, IntegerMatrix, LatticeVector,
};
use cremona_core::maps::{
    self, compose, find_linear_contracted, is_contracted, is_inverse_pair, jacobian,
    multiplicity_at, primitive_part, substitute_t, HPoly, MapTriple, ProjPoint,
};

#[derive(Parser)]
#[command(
    name = "cremona",
    version,
    about = "Exact computations with plane Cremona types"
)]
struct Cli {
    /// Worker threads for enumeration and searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct JsonFlag {
    /// Emit machine-readable JSON instead of human output.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Properness, duals and characteristic matrices of homaloidal types.
    #[command(subcommand)]
    Type(TypeCmd),
    /// Enumerate homaloidal types of one degree.
    Enum {
        degree: i64,
        /// Keep only the Hudson-proper types.
        #[arg(long)]
        proper_only: bool,
        /// Cache directory (default ./.cremona-cache).
        #[arg(long)]
        cache: Option<PathBuf>,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Degeneration criteria.
    #[command(subcommand)]
    Degen(DegenCmd),
    /// Closure battery: per-degree +1 status, chains, equality pattern.
    Theorem1 {
        #[arg(long, default_value_t = 16)]
        max_degree: i64,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// The Bertini matrix family and its obstruction search.
    #[command(subcommand)]
    Halphen(HalphenCmd),
    /// Exact operations on rational maps of the plane.
    #[command(subcommand)]
    Map(MapCmd),
}

#[derive(Subcommand)]
enum TypeCmd {
    /// Hudson's test: proper or improper.
    Check {
        literal: String,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Homaloidal type of the inverse map.
    Dual {
        literal: String,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Characteristic matrix over the support of the type.
    Matrix {
        literal: String,
        #[command(flatten)]
        json: JsonFlag,
    },
}

#[derive(Subcommand)]
enum DegenCmd {
    /// Pair/quintic/collinear offsets, +1 status and reachable degrees.
    Analyze {
        literal: String,
        #[arg(long, default_value_t = 4)]
        horizon: i64,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Whether every proper type of the degree satisfies the +1 criterion.
    PlusOne {
        degree: i64,
        #[command(flatten)]
        json: JsonFlag,
    },
}

#[derive(Subcommand)]
enum HalphenCmd {
    /// The type (36a^2+1; 12a^2+6a, (12a^2)^7, 12a^2-6a).
    Lambda {
        a: i64,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// The matrix of (nu B)^(2a), checked against its closed form.
    Matrix {
        a: i64,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Exhaustive search for degeneration bookkeeping solutions (JSON).
    Obstruct { a: i64, k: i64 },
}

#[derive(Subcommand)]
enum MapCmd {
    /// Formal degree, common factor and reduced degree.
    Degree {
        map: String,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Determinant of the partial-derivative matrix, canonicalized.
    Jacobian {
        map: String,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Unreduced substitution f(g).
    Compose {
        f: String,
        g: String,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Whether g(f) is the identity triple [xh : yh : zh].
    InverseCheck {
        f: String,
        g: String,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Base-point multiplicity of a reduced map at a constant point.
    Mult {
        map: String,
        point: String,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Check one contraction, or search linear contracted factors.
    Contracted {
        map: String,
        /// Candidate contracted polynomial.
        #[arg(long)]
        factor: Option<String>,
        /// Target point for the candidate.
        #[arg(long)]
        target: Option<String>,
        /// Box size for the linear-factor search.
        #[arg(long, default_value_t = 20)]
        search_bound: i64,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Strip the common factor of the three components.
    Reduce {
        map: String,
        /// Evaluate the family parameter before reducing.
        #[arg(long, allow_hyphen_values = true)]
        at_t: Option<String>,
        #[command(flatten)]
        json: JsonFlag,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_) => 2,
        Error::Overflow => 4,
        _ => 3,
    }
}

fn parse_type(literal: &str) -> Result<HomaloidalType, Error> {
    HomaloidalType::from_str(literal)
}

/// Inline literal or `@path` reading the literal from a file.
fn read_input(arg: &str) -> Result<String, Error> {
    if let Some(path) = arg.strip_prefix('@') {
        fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))
            .map(|s| s.trim().to_string())
    } else {
        Ok(arg.to_string())
    }
}

fn parse_map(arg: &str) -> Result<MapTriple, Error> {
    read_input(arg)?.parse()
}

fn parse_point(arg: &str) -> Result<ProjPoint, Error> {
    read_input(arg)?.parse()
}

fn parse_rational(arg: &str) -> Result<BigRational, Error> {
    let poly = maps::parse_poly(arg)?;
    poly.as_constant()
        .ok_or_else(|| Error::Parse(format!("expected a rational constant, got {arg:?}")))
}

fn matrix_json(m: &IntegerMatrix) -> serde_json::Value {
    json!({ "dim": m.dim(), "rows": m.rows() })
}

fn vector_json(v: &LatticeVector) -> serde_json::Value {
    json!({ "degree": v.degree(), "mults": v.mults() })
}

fn run_type(cmd: TypeCmd) -> Result<(), Error> {
    match cmd {
        TypeCmd::Check { literal, json } => {
            let (degree, mults) = parse_type_literal(&literal)?;
            // Negative multiplicities are improper on sight; the raw vector
            // itself is the witness.
            if mults.iter().any(|&m| m < 0) {
                if json.json {
                    let out = json!({
                        "degree": degree,
                        "mults": mults,
                        "proper": false,
                        "witness": { "degree": degree, "mults": mults },
                    });
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                } else {
                    println!("improper");
                }
                return Ok(());
            }
            let t = HomaloidalType::new(degree, mults)?;
            let outcome = hudson_test(&t)?;
            if json.json {
                let (proper, witness) = match &outcome {
                    HudsonOutcome::Proper(_) => (true, serde_json::Value::Null),
                    HudsonOutcome::Improper(w) => (false, vector_json(w)),
                };
                let out = json!({
                    "degree": t.degree(),
                    "mults": t.mults(),
                    "proper": proper,
                    "witness": witness,
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                match outcome {
                    HudsonOutcome::Proper(_) => println!("proper"),
                    HudsonOutcome::Improper(_) => println!("improper"),
                }
            }
            Ok(())
        }
        TypeCmd::Dual { literal, json } => {
            let t = parse_type(&literal)?;
            let dual = dual_type(&t)?;
            if json.json {
                println!("{}", serde_json::to_string_pretty(&dual).unwrap());
            } else {
                println!("{dual}");
            }
            Ok(())
        }
        TypeCmd::Matrix { literal, json } => {
            let t = parse_type(&literal)?;
            let m = characteristic_matrix(&t)?;
            if json.json {
                let out = json!({ "type": t, "matrix": matrix_json(&m) });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                print!("{m}");
            }
            Ok(())
        }
    }
}

fn run_enum(
    degree: i64,
    proper_only: bool,
    cache: Option<PathBuf>,
    json: bool,
) -> Result<(), Error> {
    let dir = cache.unwrap_or_else(|| PathBuf::from("./.cremona-cache"));
    let types = if proper_only {
        enumeration::enumerate_proper_cached(degree, &dir)?
    } else {
        enumeration::enumerate_noether_cached(degree, &dir)?
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&types).unwrap());
    } else {
        for t in &types {
            println!("{t}");
        }
    }
    Ok(())
}

fn run_degen(cmd: DegenCmd) -> Result<(), Error> {
    match cmd {
        DegenCmd::Analyze {
            literal,
            horizon,
            json,
        } => {
            let t = parse_type(&literal)?;
            let report = degeneration::analyze(&t, horizon)?;
            if json.json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!("type              {}", report.r#type);
                println!("pair offsets      {:?}", report.pair_offsets);
                println!("quintic offsets   {:?}", report.quintic_offsets);
                println!(
                    "collinear offsets {:?} (special position only)",
                    report.collinear_offsets
                );
                println!("plus-one          {}", report.plus_one);
                match report.min_general_offset {
                    Some(k) => println!("min offset        {k}"),
                    None => println!("min offset        none"),
                }
                println!(
                    "reachable         {:?} (horizon {horizon})",
                    report.reachable
                );
            }
            Ok(())
        }
        DegenCmd::PlusOne { degree, json } => {
            let (holds, failing) = degeneration::degree_plus_one_holds(degree)?;
            if json.json {
                let out = json!({ "degree": degree, "holds": holds, "failing": failing });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else if holds {
                println!("degree {degree}: every proper type satisfies the +1 criterion");
            } else {
                println!("degree {degree}: {} failing type(s)", failing.len());
                for t in failing {
                    println!("  {t}");
                }
            }
            Ok(())
        }
    }
}

fn run_theorem1(max_degree: i64, json: bool) -> Result<(), Error> {
    let battery = degeneration::closure_battery(max_degree)?;
    let pattern_ok = battery
        .rows
        .iter()
        .all(|r| r.closure_equality == (r.degree <= 8 || r.degree == 10 || r.degree == 12));
    if json {
        let out = json!({
            "battery": battery,
            "expected_pattern_matches": pattern_ok,
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
        return Ok(());
    }
    for row in &battery.rows {
        let plus = if row.plus_one_holds {
            "+1 holds".to_string()
        } else {
            format!("+1 fails ({} types)", row.failing.len())
        };
        let eq = if row.closure_equality {
            "closure equality"
        } else {
            "no closure equality"
        };
        println!("degree {:>2}: {plus}; {eq}", row.degree);
    }
    println!(
        "chain 8 -> 10:  {}",
        if battery.chain_8_to_10 {
            "verified"
        } else {
            "FAILED"
        }
    );
    println!(
        "chain 10 -> 12: {}",
        if battery.chain_10_to_12 {
            "verified"
        } else {
            "FAILED"
        }
    );
    println!(
        "closure equality exactly for d <= 8 and d in {{10, 12}}: {}",
        if pattern_ok { "verified" } else { "FAILED" }
    );
    Ok(())
}

fn run_halphen(cmd: HalphenCmd) -> Result<(), Error> {
    match cmd {
        HalphenCmd::Lambda { a, json } => {
            let t = halphen::lambda_a(a)?;
            let dual = dual_type(&t)?;
            let self_dual = dual == t;
            if json.json {
                let out = json!({ "a": a, "type": t, "proper": true, "self_dual": self_dual });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("{t}");
                println!(
                    "proper: yes; self-dual: {}",
                    if self_dual { "yes" } else { "no" }
                );
            }
            Ok(())
        }
        HalphenCmd::Matrix { a, json } => {
            let m = halphen::nu_b_power(a)?;
            let closed = halphen::nu_b_closed_form(a)?;
            let agree = m == closed;
            if json.json {
                let out =
                    json!({ "a": a, "matrix": matrix_json(&m), "closed_form_matches": agree });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                print!("{m}");
                println!("closed form matches: {}", if agree { "yes" } else { "no" });
            }
            Ok(())
        }
        HalphenCmd::Obstruct { a, k } => {
            let report = halphen::obstruction_candidates(a, k)?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(())
        }
    }
}

fn run_map(cmd: MapCmd) -> Result<(), Error> {
    match cmd {
        MapCmd::Degree { map, json } => {
            let f = parse_map(&map)?;
            let (reduced, factor) = primitive_part(&f);
            if json.json {
                let out = json!({
                    "formal_degree": f.degree(),
                    "common_factor": factor.to_string(),
                    "common_factor_degree": factor.degree(),
                    "reduced_degree": reduced.degree(),
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else if factor.degree() == 0 {
                println!("degree {}", f.degree());
            } else {
                println!(
                    "formal degree {}; common factor {} (degree {}); reduced degree {}",
                    f.degree(),
                    factor,
                    factor.degree(),
                    reduced.degree()
                );
            }
            Ok(())
        }
        MapCmd::Jacobian { map, json } => {
            let f = parse_map(&map)?;
            let j = jacobian(&f);
            if json.json {
                let out = json!({ "jacobian": j.to_string(), "degree": j.degree() });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("{j}");
            }
            Ok(())
        }
        MapCmd::Compose { f, g, json } => {
            let f = parse_map(&f)?;
            let g = parse_map(&g)?;
            let c = compose(&f, &g);
            if json.json {
                let out = json!({ "map": c.to_string(), "degree": c.degree() });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("{c}");
            }
            Ok(())
        }
        MapCmd::InverseCheck { f, g, json } => {
            let f = parse_map(&f)?;
            let g = parse_map(&g)?;
            let ok = is_inverse_pair(&f, &g);
            if json.json {
                println!("{}", json!({ "inverse_pair": ok }));
            } else {
                println!("{ok}");
            }
            Ok(())
        }
        MapCmd::Mult { map, point, json } => {
            let f = parse_map(&map)?;
            let (f, _) = primitive_part(&f);
            let p = parse_point(&point)?;
            let m = multiplicity_at(&f, &p)?;
            if json.json {
                println!("{}", json!({ "multiplicity": m }));
            } else {
                println!("{m}");
            }
            Ok(())
        }
        MapCmd::Contracted {
            map,
            factor,
            target,
            search_bound,
            json,
        } => {
            let f = parse_map(&map)?;
            match (factor, target) {
                (Some(h), Some(q)) => {
                    let h: HPoly = read_input(&h)?.parse()?;
                    let q = parse_point(&q)?;
                    let ok = is_contracted(&f, &h, &q);
                    if json.json {
                        println!("{}", json!({ "contracted": ok }));
                    } else {
                        println!("{ok}");
                    }
                    Ok(())
                }
                (None, None) => {
                    let found = find_linear_contracted(&f, search_bound)?;
                    if json.json {
                        let list: Vec<_> = found
                            .iter()
                            .map(|(h, q)| {
                                json!({ "factor": h.to_string(), "target": q.to_string() })
                            })
                            .collect();
                        println!("{}", serde_json::to_string_pretty(&list).unwrap());
                    } else {
                        for (h, q) in found {
                            println!("{h} -> {q}");
                        }
                    }
                    Ok(())
                }
                _ => Err(Error::Parse("--factor and --target go together".into())),
            }
        }
        MapCmd::Reduce { map, at_t, json } => {
            let mut f = parse_map(&map)?;
            if let Some(t0) = at_t {
                f = substitute_t(&f, &parse_rational(&t0)?)?;
            }
            let (reduced, factor) = primitive_part(&f);
            if json.json {
                let out = json!({
                    "map": reduced.to_string(),
                    "degree": reduced.degree(),
                    "common_factor": factor.to_string(),
                    "common_factor_degree": factor.degree(),
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("{reduced}");
                if factor.degree() > 0 {
                    println!("common factor: {factor}");
                }
            }
            Ok(())
        }
    }
}

fn dispatch(command: Command) -> Result<(), Error> {
    match command {
        Command::Type(cmd) => run_type(cmd),
        Command::Enum {
            degree,
            proper_only,
            cache,
            json,
        } => run_enum(degree, proper_only, cache, json.json),
        Command::Degen(cmd) => run_degen(cmd),
        Command::Theorem1 { max_degree, json } => run_theorem1(max_degree, json.json),
        Command::Halphen(cmd) => run_halphen(cmd),
        Command::Map(cmd) => run_map(cmd),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.threads {
        None => dispatch(cli.command),
        Some(n) => {
            let pool = match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(pool) => pool,
                Err(e) => {
                    eprintln!("error: cannot build thread pool: {e}");
                    return ExitCode::from(4);
                }
            };
            pool.install(|| dispatch(cli.command))
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
