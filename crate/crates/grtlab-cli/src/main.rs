//! Command-line front end: parse Lie expressions, run the projectors and
//! residuals, build Drinfeld-Kohno algebras, execute the verification
//! suites, and emit text or JSON reports.
//!
//! Exit codes: 0 when all requested checks pass, 1 on a check failure
//! (the first counterexample is printed), 2 on usage errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use grtlab::dk::{self, PresentedLieAlgebra};
use grtlab::fivecycle;
use grtlab::grt;
use grtlab::lyndon::witt_dimension;
use grtlab::parse::{format_series, parse_series};
use grtlab::report::{series_to_json, LabReport};
use grtlab::series::{Alphabet, LieSeries};
use grtlab::suites;

#[derive(Parser)]
#[command(name = "grtlab", version, about = "Exact hexagon/pentagon calculus and symmetrization labs")]
struct Cli {
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the exhaustive sweeps (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SeriesArgs {
    /// Lie expression, e.g. "[x,[x,y]] - [y,[y,x]]"
    expr: String,
    /// Truncation order
    #[arg(long, default_value_t = 6)]
    max_degree: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and normalize Lie expressions
    Lie {
        #[command(subcommand)]
        command: LieCommand,
    },
    /// Apply a projector to an expression over {x,y}
    Project {
        #[arg(value_enum)]
        kind: ProjectKind,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// Evaluate an equation residual; exit 0 iff it vanishes
    Residual {
        #[arg(value_enum)]
        kind: ResidualKind,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// Ihara bracket {f,g} = [f,g] + D_f(g) - D_g(f)
    Ihara {
        f: String,
        g: String,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Drinfeld-Kohno algebras
    Dk {
        #[command(subcommand)]
        command: DkCommand,
    },
    /// Finite-group and torsor verification labs
    Lab {
        #[command(subcommand)]
        command: LabCommand,
    },
    /// The five-cycle over prime fields and the Bloch-Wigner numerics
    Fivecycle {
        #[command(subcommand)]
        command: FiveCommand,
    },
}

#[derive(Subcommand)]
enum LieCommand {
    /// Normalize an expression into the Lyndon basis
    Eval {
        expr: String,
        /// Comma-separated generator names
        #[arg(long, default_value = "x,y")]
        alphabet: String,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum ProjectKind {
    Hexagon,
    Antihexagon,
    Skew,
}

#[derive(Copy, Clone, ValueEnum)]
enum ResidualKind {
    Hexagon,
    Eq3,
    Pentagon,
}

#[derive(Subcommand)]
enum DkCommand {
    /// Per-degree dimensions of t_n, checked against the semidirect count
    Dims {
        #[arg(long, short = 'n', default_value_t = 4)]
        strands: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
}

#[derive(Subcommand)]
enum LabCommand {
    /// Group-based propositions
    Group {
        /// prop1 | prop-bh (z3hexagon) | prop-gh (nary) | prop-1d | prop-2d
        /// | prop-3d | skew-parity
        proposition: String,
        #[arg(long, default_value = "Z5")]
        group: String,
        #[arg(long, default_value = "S3")]
        target: String,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        #[arg(long, default_value_t = 3)]
        modulus: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Torsor-based propositions
    Torsor {
        /// torsor-gamma | torsor-diff | gamma-diff | iota
        proposition: String,
        /// Group spec the torsor is built from
        #[arg(long, default_value = "Z6")]
        torsor: String,
        /// JSON file with {"labels": [...], "table": [...]} overriding --torsor
        #[arg(long)]
        torsor_json: Option<std::path::PathBuf>,
        #[arg(long, default_value = "S3")]
        target: String,
        #[arg(long, default_value_t = 3)]
        modulus: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum FiveCommand {
    /// Exhaustive f^5 = id, closure, iterate formulas and orbit census
    Fp {
        #[arg(long, default_value_t = 7)]
        prime: u64,
    },
    /// Bloch-Wigner five-term residual sweep
    Bw {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        #[arg(long, default_value_t = 1e-3)]
        margin: f64,
    },
}

struct Outcome {
    text: String,
    json: serde_json::Value,
    passed: bool,
}

fn series_outcome(series: &LieSeries, passed: bool) -> Outcome {
    Outcome {
        text: format_series(series),
        json: json!({
            "series": series_to_json(series),
            "passed": passed,
        }),
        passed,
    }
}

fn lab_outcome(report: LabReport) -> Outcome {
    let passed = report.passed();
    let mut text = format!(
        "proposition {} seed {} points_checked {}\n",
        report.proposition,
        report.seed,
        report.points_checked()
    );
    for s in &report.sweeps {
        text.push_str(&format!(
            "  {} on {} (arity {}): {} points, {}\n",
            s.construction,
            s.group,
            s.arity,
            s.points_checked,
            if s.violations.is_empty() {
                "ok".to_string()
            } else {
                format!("FAILED: {}", s.violations[0])
            }
        ));
    }
    text.push_str(if passed { "PASS" } else { "FAIL" });
    Outcome {
        text,
        json: serde_json::to_value(&report).expect("report serializes"),
        passed,
    }
}

fn parse_xy(expr: &str, max_degree: usize) -> anyhow::Result<LieSeries> {
    Ok(parse_series(expr, &Alphabet::xy(), max_degree)?)
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Lie { command } => match command {
            LieCommand::Eval {
                expr,
                alphabet,
                max_degree,
            } => {
                let names: Vec<String> =
                    alphabet.split(',').map(|s| s.trim().to_string()).collect();
                let alphabet = Alphabet::new(names);
                let series = parse_series(&expr, &alphabet, max_degree)?;
                Ok(series_outcome(&series, true))
            }
        },
        Command::Project { kind, series } => {
            let phi = parse_xy(&series.expr, series.max_degree)?;
            let projected = match kind {
                ProjectKind::Hexagon => grt::hexagon_project(&phi)?,
                ProjectKind::Antihexagon => grt::antihexagon_project(&phi)?,
                ProjectKind::Skew => grt::skew_symmetrize(&phi)?,
            };
            Ok(series_outcome(&projected, true))
        }
        Command::Residual { kind, series } => {
            let phi = parse_xy(&series.expr, series.max_degree)?;
            match kind {
                ResidualKind::Hexagon => {
                    let r = grt::hexagon_residual(&phi)?;
                    Ok(series_outcome(&r, r.is_zero()))
                }
                ResidualKind::Eq3 => {
                    // the mass-shell residual raises the degree by one
                    let lifted = phi.retruncated(series.max_degree + 1);
                    let r = grt::eq3_residual(&lifted)?;
                    Ok(series_outcome(&r, r.is_zero()))
                }
                ResidualKind::Pentagon => {
                    let t4 = PresentedLieAlgebra::drinfeld_kohno(4, series.max_degree)?;
                    let r = dk::pentagon_residual(&t4, &phi)?;
                    let passed = r.is_zero();
                    Ok(Outcome {
                        text: t4.render(&r),
                        json: json!({
                            "residual": t4.render(&r),
                            "passed": passed,
                        }),
                        passed,
                    })
                }
            }
        }
        Command::Ihara { f, g, max_degree } => {
            let f = parse_xy(&f, max_degree)?;
            let g = parse_xy(&g, max_degree)?;
            let bracket = grt::ihara_bracket(&f, &g)?;
            Ok(series_outcome(&bracket, true))
        }
        Command::Dk { command } => match command {
            DkCommand::Dims {
                strands,
                max_degree,
            } => {
                let algebra = PresentedLieAlgebra::drinfeld_kohno(strands, max_degree)?;
                let dims = algebra.dimensions();
                // independent semidirect count: t_n = t_{n-1} x| F_{n-1}
                let mut expected: Vec<usize> = (1..=max_degree)
                    .map(|d| if d == 1 { 1 } else { 0 })
                    .collect();
                for k in 3..=strands {
                    for d in 1..=max_degree {
                        expected[d - 1] += witt_dimension((k - 1) as u64, d as u64) as usize;
                    }
                }
                let passed = dims == expected;
                let text = format!(
                    "t_{strands} dimensions by degree: {dims:?}\nsemidirect count:           {expected:?}\n{}",
                    if passed { "PASS" } else { "FAIL" }
                );
                Ok(Outcome {
                    text,
                    json: json!({
                        "strands": strands,
                        "max_degree": max_degree,
                        "dimensions": dims,
                        "semidirect_count": expected,
                        "passed": passed,
                    }),
                    passed,
                })
            }
        },
        Command::Lab { command } => match command {
            LabCommand::Group {
                proposition,
                group,
                target,
                arity,
                modulus,
                seed,
                count,
                max_degree,
            } => {
                let report = match proposition.as_str() {
                    "prop1" | "projectors" => suites::projector_suite(seed, count, max_degree),
                    "prop-bh" | "z3hexagon" => {
                        suites::z3_hexagon_suite(&group, &target, seed, 3)?
                    }
                    "prop-gh" | "nary" => {
                        let mut report = suites::nary_hexagon_suite(&group, &target, arity, seed)?;
                        let cycles = suites::cycle_suite(&group, arity.max(2))?;
                        let coeffs = suites::coefficient_suite(&group, arity, seed, 10)?;
                        report.sweeps.extend(cycles.sweeps);
                        report.sweeps.extend(coeffs.sweeps);
                        report
                    }
                    "prop-1d" => suites::diff_1d_suite(modulus, arity, seed)?,
                    "prop-2d" => suites::diff_2d_suite(modulus, seed)?,
                    "prop-3d" => suites::diff_3d_suite(seed)?,
                    "skew-parity" => suites::skew_parity_suite(&group, seed)?,
                    other => anyhow::bail!("unknown group proposition `{other}`"),
                };
                Ok(lab_outcome(report))
            }
            LabCommand::Torsor {
                proposition,
                torsor,
                torsor_json,
                target,
                modulus,
                seed,
            } => {
                let json_text = match &torsor_json {
                    Some(path) => Some(std::fs::read_to_string(path)?),
                    None => None,
                };
                let table = suites::resolve_torsor(&torsor, json_text.as_deref())?;
                let report = match proposition.as_str() {
                    "torsor-gamma" => suites::torsor_gamma_suite(&table, &target, seed)?,
                    "torsor-diff" => suites::torsor_diff_suite(&table, modulus, seed)?,
                    "gamma-diff" => suites::gamma_diff_suite(&table, seed)?,
                    "iota" => suites::iota_suite(&table)?,
                    other => anyhow::bail!("unknown torsor proposition `{other}`"),
                };
                Ok(lab_outcome(report))
            }
        },
        Command::Fivecycle { command } => match command {
            FiveCommand::Fp { prime } => {
                let report = fivecycle::fp_cycle(prime)?;
                let text = format!(
                    "p = {}: {} points, orbit census {:?}, fixed points {} (equation roots {})\nPASS",
                    report.prime,
                    report.domain_size,
                    report.orbit_census,
                    report.fixed_points,
                    report.fixed_point_equation_roots,
                );
                Ok(Outcome {
                    text,
                    json: serde_json::to_value(&report)?,
                    passed: true,
                })
            }
            FiveCommand::Bw {
                samples,
                seed,
                tolerance,
                margin,
            } => {
                let sweep = fivecycle::five_term_sweep(samples, seed, margin);
                let passed = sweep.max_residual() < tolerance;
                // anchor point: the conjectural maximum of D on the unit circle
                let anchor = fivecycle::bloch_wigner(Complex64::from_polar(
                    1.0,
                    std::f64::consts::PI / 3.0,
                ))?;
                let text = format!(
                    "{} samples (seed {}, margin {:.1e}): five-term max {:.3e}, D+ max {:.3e}, D- max {:.3e}\nD(e^(i pi/3)) = {:.15}\n{}",
                    sweep.samples,
                    sweep.seed,
                    sweep.margin,
                    sweep.max_five_term_residual,
                    sweep.max_d_plus_residual,
                    sweep.max_d_minus_residual,
                    anchor,
                    if passed { "PASS" } else { "FAIL" }
                );
                Ok(Outcome {
                    text,
                    json: json!({
                        "sweep": serde_json::to_value(&sweep)?,
                        "tolerance": tolerance,
                        "bloch_wigner_at_sixth_root": format!("{anchor:.15}"),
                        "passed": passed,
                    }),
                    passed,
                })
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let format = cli.format;
    match run(cli) {
        Ok(outcome) => {
            match format {
                Format::Text => println!("{}", outcome.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&outcome.json).expect("valid json")
                ),
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
