use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use extcrystal::checks::{run_checks, CheckMatrix};
use extcrystal::reports::{
    self, bounds_rows, format_bounds, format_graph, format_region, format_table, Expected, Format,
};
use extcrystal::{
    bounds_general::box_points, max_table, sharp_n, verify_n, CrystalGraph, E2Context, Error, HighestWeight,
    LatticePoint, Reducibility, SVariant,
};

#[derive(Parser)]
#[command(
    name = "extcrystal",
    version,
    about = "Weights, crystal graphs and reduction bounds for affine type A"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximal weights over a range of lattice points.
    Table(TableArgs),
    /// Enumerate the crystal graph up to a degree.
    Graph(GraphArgs),
    /// Sharp reduction bounds per defect, cross-checked on an enumerated graph.
    Bounds(BoundsArgs),
    /// Lattice region of non-reducing weights for one defect.
    Region(RegionArgs),
    /// Run the invariant suites over a matrix of highest weights.
    Check(CheckArgs),
}

#[derive(Args)]
struct WeightArgs {
    /// Number of residues.
    #[arg(long)]
    e: usize,
    /// Coefficients a_0,…,a_{e-1} of the highest weight.
    #[arg(long, value_delimiter = ',', required = true)]
    weight: Vec<i64>,
}

impl WeightArgs {
    fn highest_weight(&self) -> Result<HighestWeight, Failure> {
        if self.weight.len() != self.e {
            return Err(Failure::usage(format!(
                "--weight has {} entries but --e is {}",
                self.weight.len(),
                self.e
            )));
        }
        HighestWeight::new(self.weight.clone()).map_err(Failure::from)
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, default_value = "text")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    weight: WeightArgs,
    /// Range `lo..hi` of `m` (two residues only).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range, conflicts_with = "m_box")]
    m_range: Option<(i64, i64)>,
    /// Range `lo..hi` applied to every lattice coordinate.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    m_box: Option<(i64, i64)>,
    #[arg(long, default_value = "corrected")]
    s_variant: SVariant,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    weight: WeightArgs,
    #[arg(long)]
    max_degree: i64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    weight: WeightArgs,
    #[arg(long, value_delimiter = ',', required = true)]
    defects: Vec<i64>,
    /// Expected N(d) per defect; disagreements are flagged.
    #[arg(long, value_delimiter = ',')]
    expected: Option<Vec<i64>>,
    /// Expected N′(d) per defect (two residues); disagreements are flagged.
    #[arg(long, value_delimiter = ',')]
    expected_n_prime: Option<Vec<i64>>,
    /// `negative` (some θ_i ≤ -d) or `both-sides` (all |θ_i| ≥ d, two residues only).
    #[arg(long, default_value = "negative")]
    criterion: Reducibility,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct RegionArgs {
    #[command(flatten)]
    weight: WeightArgs,
    #[arg(long)]
    defect: i64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Residue counts to include.
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    es: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    max_level: i64,
    #[arg(long, default_value_t = 20)]
    max_degree: i64,
    #[arg(long, default_value_t = 6)]
    max_defect: i64,
    #[arg(long, default_value_t = 20)]
    m_radius: i64,
    /// Closed form for `s` used by the two-residue suite.
    #[arg(long, default_value = "corrected")]
    s_variant: SVariant,
    /// Run with no weights at all.
    #[arg(long)]
    empty: bool,
    #[arg(long, default_value = "text")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected `lo..hi`, got `{s}`"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad lower bound `{lo}`: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad upper bound `{hi}`: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: String) -> Self {
        Failure { code: 2, message }
    }

    fn verification(message: String) -> Self {
        Failure { code: 1, message }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::InvalidRank(_)
            | Error::InvalidWeight { .. }
            | Error::LevelMismatch { .. }
            | Error::Unsupported(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure {
            code: 1,
            message: format!("i/o error: {err}"),
        }
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_table(args: &TableArgs) -> Result<(), Failure> {
    let lambda = args.weight.highest_weight()?;
    let ell = lambda.e() - 1;
    let (rows, mismatches) = match (args.m_range, args.m_box) {
        (Some((lo, hi)), _) => {
            let ctx = E2Context::from_weight(&lambda)
                .map_err(|_| Failure::usage("--m-range needs two residues; use --m-box".into()))?;
            let rows = ctx.enumerate_max(lo, hi, args.s_variant);
            let points: Vec<LatticePoint> = (lo..=hi).map(|m| LatticePoint(vec![m])).collect();
            let oracle = max_table(&lambda, &points)?;
            let mismatches: Vec<String> = rows
                .iter()
                .zip(&oracle)
                .filter(|(a, b)| a != b)
                .map(|(a, b)| {
                    format!(
                        "closed form disagrees with membership oracle at m={}: content {} (defect {}) vs {} (defect {})",
                        a.m, a.content, a.defect, b.content, b.defect
                    )
                })
                .collect();
            (rows, mismatches)
        }
        (None, Some((lo, hi))) => {
            let points = box_points(&vec![(lo, hi); ell]);
            (max_table(&lambda, &points)?, Vec::new())
        }
        (None, None) => return Err(Failure::usage("one of --m-range or --m-box is required".into())),
    };
    emit(&args.out.output, &format_table(&lambda, &rows, args.out.format))?;
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::verification(mismatches.join("\n")))
    }
}

fn cmd_graph(args: &GraphArgs) -> Result<(), Failure> {
    let lambda = args.weight.highest_weight()?;
    if args.max_degree < 0 {
        return Err(Failure::usage("--max-degree must be nonnegative".into()));
    }
    let graph = CrystalGraph::enumerate(&lambda, args.max_degree)?;
    emit(&args.out.output, &format_graph(&graph, args.out.format))
}

fn cmd_bounds(args: &BoundsArgs) -> Result<(), Failure> {
    let lambda = args.weight.highest_weight()?;
    if args.defects.iter().any(|&d| d < 0) {
        return Err(Failure::usage("defects must be nonnegative".into()));
    }
    for (flag, values) in [
        ("--expected", &args.expected),
        ("--expected-n-prime", &args.expected_n_prime),
    ] {
        if let Some(values) = values {
            if values.len() != args.defects.len() {
                return Err(Failure::usage(format!(
                    "{flag} has {} entries but --defects has {}",
                    values.len(),
                    args.defects.len()
                )));
            }
        }
    }
    let expected = Expected {
        n: args.expected.as_deref(),
        n_prime: args.expected_n_prime.as_deref(),
    };
    let rows = bounds_rows(&lambda, &args.defects, expected, args.criterion)?;
    emit(&args.out.output, &format_bounds(&lambda, &rows, args.out.format))?;

    // Brute-force certification of the lattice bound on an enumerated graph.
    let mut problems = Vec::new();
    let bounds = args
        .defects
        .iter()
        .map(|&d| sharp_n(&lambda, d))
        .collect::<Result<Vec<_>, _>>()?;
    let depth = bounds.iter().map(|b| b.n - 1).max().unwrap_or(0).max(0);
    let graph = CrystalGraph::enumerate(&lambda, depth)?;
    for b in &bounds {
        let report = verify_n(&graph, b.d, b.n)?;
        if !report.passed {
            problems.push(format!("verification failed: {}", reports::to_json(&report).trim_end()));
        }
    }
    for r in &rows {
        if let (Some(n_prime), true) = (r.n_prime, args.criterion == Reducibility::NegativeComponent) {
            if n_prime < r.n {
                problems.push(format!("N'({}) = {n_prime} is below N({}) = {}", r.d, r.d, r.n));
            }
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Failure::verification(problems.join("\n")))
    }
}

fn cmd_region(args: &RegionArgs) -> Result<(), Failure> {
    let lambda = args.weight.highest_weight()?;
    if args.defect < 1 {
        return Err(Failure::usage("--defect must be at least 1".into()));
    }
    emit(&args.output, &format_region(&lambda, args.defect)?)
}

fn cmd_check(args: &CheckArgs) -> Result<(), Failure> {
    if args.es.iter().any(|&e| e < 2) {
        return Err(Failure::usage("every entry of --es must be at least 2".into()));
    }
    let matrix = CheckMatrix {
        es: if args.empty { Vec::new() } else { args.es.clone() },
        max_level: args.max_level,
        max_degree: args.max_degree,
        max_defect: args.max_defect,
        m_radius: args.m_radius,
        s_variant: args.s_variant,
    };
    let report = run_checks(&matrix)?;
    let text = match args.format {
        Format::Json => reports::to_json(&report),
        _ => {
            let mut out = String::new();
            for suite in &report.suites {
                out.push_str(&format!(
                    "{} {}: {} checks, {} skipped, {} failures\n",
                    if suite.passed { "PASS" } else { "FAIL" },
                    suite.name,
                    suite.checks,
                    suite.skipped,
                    suite.failures.len()
                ));
                for f in &suite.failures {
                    out.push_str(&format!("  witness {f}\n"));
                }
            }
            out.push_str(if report.passed {
                "all suites passed\n"
            } else {
                "verification failed\n"
            });
            out
        }
    };
    emit(&args.output, &text)?;
    if report.passed {
        Ok(())
    } else {
        Err(Failure::verification("invariant suites reported failures".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Table(a) => cmd_table(a),
        Command::Graph(a) => cmd_graph(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Region(a) => cmd_region(a),
        Command::Check(a) => cmd_check(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
