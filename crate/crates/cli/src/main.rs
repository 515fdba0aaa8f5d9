//! `symdeg`: Hessian ranks, dual dimensions and degeneracy-locus bounds from
//! the command line.
//!
//! Every command prints a short human-readable answer, or with
//! `--format json` a report wrapped as `{"schema": 1, "command", "result"}`.
//! Exit codes: 0 success, 2 bad input, 3 failed internal check.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use symdeg_core::bounds::{
    corollary_threshold, main_bound, replay_main_theorem, sym_stratum_dim, BoundReport,
};
use symdeg_core::dual::{dual_dimension, rank_relation_check};
use symdeg_core::linalg::Minor;
use symdeg_core::quadric::{
    lh_projective_dim, lh_quadric_dim, nonsurjectivity_certificate, quadric_betti,
    torsion_certificate, BettiVector, QuadricFiberData,
};
use symdeg_core::sample::SampleConfig;
use symdeg_core::{build_hessian, infer_vars, parse_poly, Error, HessianForm, MultiPoly, PointQ};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "symdeg", version)]
#[command(about = "Exact Hessian ranks, dual varieties and symmetric degeneracy bounds")]
struct Cli {
    /// Comma-separated variable names (default: inferred, e.g. x0..xN)
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Option<Vec<String>>,

    /// Seed for randomized pre-screens
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Number of random points tried by pre-screens
    #[arg(long, global = true, default_value_t = 3)]
    sample_budget: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A polynomial given inline, or `@path` to read it from a file.
#[derive(clap::Args)]
struct PolyInput {
    /// Homogeneous polynomial, e.g. "x0^3 + x1^3 - 2*x0*x1*x2", or @FILE
    #[arg(value_name = "POLY", allow_hyphen_values = true)]
    poly: String,
}

#[derive(Subcommand)]
enum Command {
    /// Print the symbolic Hessian matrix
    Hessian {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Rank of the Hessian at a point
    RankAt {
        #[command(flatten)]
        input: PolyInput,
        /// Point as comma-separated rationals, e.g. 0,1,-1/2,0
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Group points by the rank of the Hessian
    Stratify {
        #[command(flatten)]
        input: PolyInput,
        /// File with one point per line; `#` starts a comment
        #[arg(long)]
        points: PathBuf,
    },
    /// Generic rank of the Hessian, certified by a nonvanishing minor
    GenericRank {
        #[command(flatten)]
        input: PolyInput,
        /// Generic rank on the hypersurface instead of the ambient space
        #[arg(long)]
        on_hypersurface: bool,
    },
    /// Dimension of the dual variety of the hypersurface
    DualDim {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Check rank Q = rank A + 2 at a smooth point of the hypersurface
    CheckRankRelation {
        #[command(flatten)]
        input: PolyInput,
        /// Smooth point of the hypersurface
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Betti numbers of a smooth quadric of rank r
    QuadBetti { r: usize },
    /// Homology rank of a quadric or projective bundle over a base
    LhDim {
        /// Betti numbers of the base, b_0..b_2d
        #[arg(long, value_delimiter = ',', required = true)]
        betti: Vec<u64>,
        /// Quadric bundle with fibers of rank R
        #[arg(long, conflicts_with = "projective", required_unless_present = "projective")]
        quadric: Option<usize>,
        /// P^M-bundle
        #[arg(long)]
        projective: Option<usize>,
        /// Homological degree
        k: usize,
    },
    /// Dimension count showing j* is not onto for even r
    Nonsurj {
        #[command(flatten)]
        args: BundleArgs,
    },
    /// Z/2 torsion certificate for odd r
    Torsion {
        #[command(flatten)]
        args: BundleArgs,
    },
    /// Dimension bounds for constant-rank loci
    Bounds {
        #[command(subcommand)]
        command: BoundsCommand,
    },
}

#[derive(clap::Args)]
struct BundleArgs {
    /// Betti numbers of the base, b_0..b_2d (default: 0,...,0,1)
    #[arg(long, value_delimiter = ',')]
    betti: Option<Vec<u64>>,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    d: usize,
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// Replay the dimension argument for given N, r, d
    Replay {
        #[arg(value_name = "N")]
        big_n: usize,
        r: usize,
        d: usize,
        /// Betti numbers of the base (default: 0,...,0,1)
        #[arg(long, value_delimiter = ',')]
        betti: Option<Vec<u64>>,
    },
    /// Largest dimension N - r of a constant-rank locus
    Main {
        #[arg(value_name = "N")]
        big_n: usize,
        r: usize,
    },
    /// Dimension threshold forcing rank <= r somewhere
    Corollary {
        #[arg(value_name = "N")]
        big_n: usize,
        r: usize,
    },
    /// Dimension of the projectivized rank <= r locus of symmetric N x N matrices
    StratumDim {
        #[arg(value_name = "N")]
        big_n: usize,
        r: usize,
    },
}

/// Failure of a command, mapped to an exit code.
enum Failure {
    User(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::User(e.to_string())
        }
    }
}

type Outcome = Result<Report, Failure>;

struct Report {
    command: &'static str,
    result: Value,
    text: String,
}

struct Ctx {
    vars: Option<Vec<String>>,
    cfg: SampleConfig,
}

impl Ctx {
    fn poly(&self, input: &PolyInput) -> Result<(MultiPoly, Vec<String>), Failure> {
        let text = match input.poly.strip_prefix('@') {
            Some(path) => fs::read_to_string(path)
                .map_err(|e| Failure::User(format!("cannot read {path}: {e}")))?,
            None => input.poly.clone(),
        };
        let vars = self.vars.clone().unwrap_or_else(|| infer_vars(&text));
        let f = parse_poly(&text, &vars)?;
        Ok((f, vars))
    }

    fn hessian(&self, input: &PolyInput) -> Result<(HessianForm, Vec<String>), Failure> {
        let (f, vars) = self.poly(input)?;
        let h = build_hessian(&f)?;
        if let Some(w) = h.reducedness_warning(self.cfg) {
            eprintln!("warning: {w}");
        }
        Ok((h, vars))
    }
}

fn point(text: &str, n: usize) -> Result<PointQ, Failure> {
    let p = PointQ::parse(text)?;
    if p.len() != n {
        return Err(Error::Dimension { expected: n, got: p.len() }.into());
    }
    Ok(p)
}

fn betti_or_default(b: Option<Vec<u64>>, d: usize) -> Result<BettiVector, Failure> {
    match b {
        Some(v) => Ok(BettiVector::new(v)?),
        None => Ok(BettiVector::top_only(d)),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Result<Value, Failure> {
    serde_json::to_value(x).map_err(|e| Failure::Internal(e.to_string()))
}

fn minor_json(m: &Minor, vars: &[String]) -> Value {
    json!({
        "rows": m.rows,
        "cols": m.cols,
        "det": m.det.to_string_with(vars),
    })
}

fn minor_text(m: &Minor, vars: &[String]) -> String {
    format!("rows {:?} cols {:?}, det = {}", m.rows, m.cols, m.det.to_string_with(vars))
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx {
        vars: cli.vars,
        cfg: SampleConfig {
            seed: cli.seed,
            budget: cli.sample_budget,
        },
    };
    match cli.command {
        Command::Hessian { input } => {
            let (h, vars) = ctx.hessian(&input)?;
            let rows: Vec<Vec<String>> = h
                .matrix()
                .to_rows()
                .iter()
                .map(|row| row.iter().map(|p| p.to_string_with(&vars)).collect())
                .collect();
            let width = rows.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
            let text = rows
                .iter()
                .map(|row| {
                    let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
                    format!("[ {} ]", cells.join("  "))
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report {
                command: "hessian",
                result: json!({ "vars": vars, "degree": h.degree(), "matrix": rows }),
                text,
            })
        }
        Command::RankAt { input, point: p } => {
            let (h, _) = ctx.hessian(&input)?;
            let p = point(&p, h.num_vars())?;
            let rank = h.rank_at(&p)?;
            Ok(Report {
                command: "rank-at",
                result: json!({ "point": to_value(&p)?, "rank": rank }),
                text: rank.to_string(),
            })
        }
        Command::Stratify { input, points } => {
            let (h, _) = ctx.hessian(&input)?;
            let body = fs::read_to_string(&points)
                .map_err(|e| Failure::User(format!("cannot read {}: {e}", points.display())))?;
            let mut pts = Vec::new();
            for (i, line) in body.lines().enumerate() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let p = point(line, h.num_vars())
                    .map_err(|e| match e {
                        Failure::User(m) => Failure::User(format!("line {}: {m}", i + 1)),
                        other => other,
                    })?;
                pts.push(p);
            }
            let strata = h.stratify(&pts)?;
            let text = strata
                .ranks
                .iter()
                .map(|(r, ps)| {
                    let ps: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                    format!("rank {r}: {}", ps.join(" "))
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report {
                command: "stratify",
                result: to_value(&strata)?,
                text,
            })
        }
        Command::GenericRank { input, on_hypersurface } => {
            let (h, vars) = ctx.hessian(&input)?;
            if on_hypersurface {
                let g = h.generic_rank_on_hypersurface(ctx.cfg)?;
                let text = format!(
                    "{}\ncertificate: {}\nambient rank {}, {} larger minors divisible by f",
                    g.rank,
                    minor_text(&g.certificate, &vars),
                    g.ambient_rank,
                    g.larger_minors_checked
                );
                Ok(Report {
                    command: "generic-rank",
                    result: json!({
                        "on_hypersurface": true,
                        "rank": g.rank,
                        "ambient_rank": g.ambient_rank,
                        "certificate": minor_json(&g.certificate, &vars),
                        "larger_minors_checked": g.larger_minors_checked,
                    }),
                    text,
                })
            } else {
                let g = h.generic_rank_ambient(ctx.cfg);
                let cert = match &g.certificate {
                    Some(m) => minor_text(m, &vars),
                    None => "none (Hessian vanishes identically)".into(),
                };
                let text = format!(
                    "{}\ncertificate: {cert}\n{} larger minors vanish identically",
                    g.rank, g.larger_minors_checked
                );
                Ok(Report {
                    command: "generic-rank",
                    result: json!({
                        "on_hypersurface": false,
                        "rank": g.rank,
                        "screened": g.screened,
                        "certificate": g.certificate.as_ref().map(|m| minor_json(m, &vars)),
                        "larger_minors_checked": g.larger_minors_checked,
                    }),
                    text,
                })
            }
        }
        Command::DualDim { input } => {
            let (f, _) = ctx.poly(&input)?;
            let dim = dual_dimension(&f, ctx.cfg)?;
            Ok(Report {
                command: "dual-dim",
                result: json!({ "dual_dimension": dim, "hessian_rank_on_hypersurface": dim + 2 }),
                text: dim.to_string(),
            })
        }
        Command::CheckRankRelation { input, point: p } => {
            let (f, _) = ctx.poly(&input)?;
            let p = point(&p, f.num_vars())?;
            let rep = rank_relation_check(&f, &p)?;
            if !rep.holds {
                return Err(Failure::Internal(format!(
                    "rank Q = {} but rank A = {} at {p}",
                    rep.rank_q, rep.rank_a
                )));
            }
            Ok(Report {
                command: "check-rank-relation",
                text: format!("rank Q = {} = rank A + 2 = {} + 2", rep.rank_q, rep.rank_a),
                result: to_value(&rep)?,
            })
        }
        Command::QuadBetti { r } => {
            let data = QuadricFiberData::new(r)?;
            let betti: Vec<usize> = (0..=data.dim()).map(|i| quadric_betti(r, i)).collect();
            let cells: Vec<String> = betti.iter().map(|b| b.to_string()).collect();
            let labels: Vec<String> =
                data.basis_labels.iter().map(|b| format!("{} (deg {})", b.label, b.degree)).collect();
            Ok(Report {
                command: "quad-betti",
                text: format!(
                    "[{}]\nbasis: {}\nrelations: {}",
                    cells.join(","),
                    labels.join(", "),
                    data.relations.join("; ")
                ),
                result: json!({ "r": r, "betti": betti, "fiber": to_value(&data)? }),
            })
        }
        Command::LhDim { betti, quadric, projective, k } => {
            let b = BettiVector::new(betti)?;
            let (kind, fiber, dim) = match (quadric, projective) {
                (Some(r), _) => ("quadric", r, lh_quadric_dim(&b, r, k)),
                (None, Some(m)) => ("projective", m, lh_projective_dim(&b, m, k)),
                (None, None) => return Err(Failure::User("give --quadric or --projective".into())),
            };
            Ok(Report {
                command: "lh-dim",
                result: json!({ "betti": to_value(&b)?, "bundle": kind, "fiber": fiber, "k": k, "dim": dim }),
                text: dim.to_string(),
            })
        }
        Command::Nonsurj { args } => {
            let b = betti_or_default(args.betti, args.d)?;
            let c = nonsurjectivity_certificate(&b, args.r, args.d)?;
            if !c.surjection_impossible {
                return Err(Failure::Internal(format!(
                    "dimension gap {} does not rule out surjectivity",
                    c.gap
                )));
            }
            Ok(Report {
                command: "nonsurj",
                text: format!(
                    "dim H_{}(P(V)) = {} < dim H_{}(Q) = {}: j* is not onto (gap {})",
                    c.source_degree,
                    c.dim_source,
                    c.source_degree - 2,
                    c.dim_target,
                    c.gap
                ),
                result: to_value(&c)?,
            })
        }
        Command::Torsion { args } => {
            let b = betti_or_default(args.betti, args.d)?;
            let c = torsion_certificate(&b, args.r, args.d)?;
            if !c.holds() {
                return Err(Failure::Internal("torsion certificate does not check".into()));
            }
            Ok(Report {
                command: "torsion",
                text: format!(
                    "fiber cokernel: {}\nelement of order {}\n{}",
                    c.fiber.cokernel, c.element_order, c.statement
                ),
                result: to_value(&c)?,
            })
        }
        Command::Bounds { command } => bounds(command),
    }
}

fn bounds(cmd: BoundsCommand) -> Outcome {
    match cmd {
        BoundsCommand::Replay { big_n, r, d, betti } => {
            let b = betti_or_default(betti, d)?;
            let rep: BoundReport = replay_main_theorem(big_n, r, d, &b)?;
            rep.revalidate().map_err(|e| Failure::Internal(e.to_string()))?;
            let mut lines: Vec<String> = rep
                .steps
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let mark = if s.ok { "ok" } else { "FAILS" };
                    format!("step {}: {} [{mark}]", i + 1, s.statement)
                })
                .collect();
            lines.push(rep.verdict.clone());
            Ok(Report {
                command: "bounds replay",
                result: to_value(&rep)?,
                text: lines.join("\n"),
            })
        }
        BoundsCommand::Main { big_n, r } => {
            let bound = main_bound(big_n, r)?;
            Ok(Report {
                command: "bounds main",
                result: json!({ "N": big_n, "r": r, "max_dim": bound }),
                text: bound.to_string(),
            })
        }
        BoundsCommand::Corollary { big_n, r } => {
            let c = corollary_threshold(big_n, r)?;
            if !c.holds {
                return Err(Failure::Internal("telescoped sum differs from threshold".into()));
            }
            Ok(Report {
                command: "bounds corollary",
                text: c.threshold.to_string(),
                result: to_value(&c)?,
            })
        }
        BoundsCommand::StratumDim { big_n, r } => {
            let dim = sym_stratum_dim(big_n, r)?;
            Ok(Report {
                command: "bounds stratum-dim",
                result: json!({ "N": big_n, "r": r, "dim": dim }),
                text: dim.to_string(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            match format {
                Format::Text => println!("{}", report.text),
                Format::Json => {
                    let envelope = json!({
                        "schema": SCHEMA,
                        "command": report.command,
                        "result": report.result,
                    });
                    println!("{}", serde_json::to_string_pretty(&envelope).expect("JSON value"));
                }
            }
            ExitCode::SUCCESS
        }
        Err(Failure::User(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
