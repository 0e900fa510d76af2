use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use stbc_hrqf::io::{load_code, load_ordering, ordering_to_json, parse_ordering};
use stbc_hrqf::{
    brute_force, catalog, fsd_exponent, optimize, verify, ComplexityTree, Error, HrqfMatrix, LinearStbc, SearchResult,
    DEFAULT_BRUTE_MAX_K, DEFAULT_VERIFY_TOL, DEFAULT_ZERO_TOL,
};

#[derive(Parser)]
#[command(
    name = "hrqf",
    version,
    about = "HRQF analysis and fast-sphere-decoding complexity of linear STBCs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the builtin codes.
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// HRQF matrix, zero pattern and complexity of one ordering.
    Analyze(CodeArgs),
    /// Best ordering via the fast search.
    Optimize(CodeArgs),
    /// Best ordering via exhaustive search over all permutations.
    Brute {
        #[command(flatten)]
        code: CodeArgs,
        /// Largest K accepted.
        #[arg(long, default_value_t = DEFAULT_BRUTE_MAX_K)]
        max_k: usize,
    },
    /// Check the predicted R structure on random channels.
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Receive antennas.
        #[arg(long)]
        nr: usize,
        #[arg(long)]
        seed: u64,
        /// Bound on structural residuals relative to ||R||_F.
        #[arg(long, default_value_t = DEFAULT_VERIFY_TOL)]
        tol: f64,
    },
}

#[derive(Args)]
struct CodeArgs {
    /// Builtin code name or path to a JSON code file.
    #[arg(long)]
    code: String,
    /// Ordering as a JSON file or an inline JSON array of 0-based indices.
    #[arg(long)]
    ordering: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Invalid(Error),
    VerifyFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::VerifyFailed) => ExitCode::from(2),
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Catalog { format } => catalog_cmd(format),
        Command::Analyze(args) => {
            let code = load(&args)?;
            analyze(&code, args.format);
        }
        Command::Optimize(args) => {
            let code = load(&args)?;
            let res = optimize(&HrqfMatrix::from_code(&code))?;
            print_search(&code, &res, args.format);
        }
        Command::Brute { code: args, max_k } => {
            let code = load(&args)?;
            let res = brute_force(&HrqfMatrix::from_code(&code), max_k)?;
            print_search(&code, &res, args.format);
        }
        Command::Verify {
            code: args,
            trials,
            nr,
            seed,
            tol,
        } => {
            let code = load(&args)?;
            let report = verify(&code, trials, nr, seed, tol)?;
            match args.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
                Format::Text => {
                    println!("code: {} (K = {}), nr = {nr}, seed = {seed}", code.name(), code.k());
                    println!("predicted exponent: {}", report.predicted_exponent);
                    println!("matches: {}/{}", report.matches, report.trials);
                    println!(
                        "max structural residual: {:e} (tol {tol:e})",
                        report.max_structural_residual
                    );
                    println!("warnings: {}", report.warnings.len());
                    for w in &report.warnings {
                        println!("  {}", serde_json::to_string(w).expect("warning serializes"));
                    }
                    println!("result: {}", if report.passed(tol) { "pass" } else { "FAIL" });
                }
            }
            if !report.passed(tol) {
                return Err(Failure::VerifyFailed);
            }
        }
    }
    Ok(())
}

fn load(args: &CodeArgs) -> Result<LinearStbc, Error> {
    let code = if catalog::BUILTIN_NAMES.contains(&args.code.as_str()) || !Path::new(&args.code).exists() {
        catalog::builtin(&args.code)?
    } else {
        load_code(&args.code)?
    };
    let Some(spec) = &args.ordering else {
        return Ok(code);
    };
    let ord = if spec.trim_start().starts_with('[') {
        parse_ordering(spec)?
    } else {
        load_ordering(spec)?
    };
    if ord.len() != code.k() {
        return Err(Error::InvalidPermutation(format!(
            "ordering has length {}, code '{}' has K = {}",
            ord.len(),
            code.name(),
            code.k()
        )));
    }
    code.reorder(&ord)
}

fn catalog_cmd(format: Format) {
    let codes: Vec<LinearStbc> = catalog::BUILTIN_NAMES
        .iter()
        .map(|n| catalog::builtin(n).expect("builtin code"))
        .collect();
    match format {
        Format::Json => {
            let list: Vec<Value> = codes
                .iter()
                .map(|c| json!({"name": c.name(), "nt": c.nt(), "K": c.k(), "labels": c.labels()}))
                .collect();
            println!("{}", serde_json::to_string_pretty(&list).expect("json"));
        }
        Format::Text => {
            for c in &codes {
                println!(
                    "{:<9} nt = {}, K = {:>2}: {}",
                    c.name(),
                    c.nt(),
                    c.k(),
                    c.labels().join(" ")
                );
            }
        }
    }
}

/// Integers print without a fraction; everything else with six decimals.
fn fmt_entry(v: f64) -> String {
    if (v - v.round()).abs() < 1e-9 {
        format!("{}", v.round() as i64)
    } else {
        format!("{v:.6}")
    }
}

fn matrix_grid(m: &HrqfMatrix) -> String {
    let k = m.k();
    let cells: Vec<Vec<String>> = (0..k)
        .map(|i| (0..k).map(|j| fmt_entry(m.get(i, j))).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|row| row.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn render_tree(tree: &ComplexityTree, labels: &[String]) -> String {
    tree.render(&|p| labels[p].clone())
}

fn analyze(code: &LinearStbc, format: Format) {
    let m = HrqfMatrix::from_code(code);
    let pattern = m.zero_pattern(DEFAULT_ZERO_TOL);
    let (exp, tree) = fsd_exponent(&pattern).expect("codes have K >= 1");
    match format {
        Format::Json => {
            let rows: Vec<Vec<f64>> = (0..m.k()).map(|i| (0..m.k()).map(|j| m.get(i, j)).collect()).collect();
            let out = json!({
                "code": code.name(),
                "K": code.k(),
                "labels": code.labels(),
                "hrqf_matrix": rows,
                "zero_pattern": pattern.to_grid().lines().collect::<Vec<_>>(),
                "exponent": exp,
                "tree": tree,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        Format::Text => {
            println!("code: {} (nt = {}, K = {})", code.name(), code.nt(), code.k());
            println!("ordering: {}", code.labels().join(" "));
            println!("\nHRQF matrix:\n{}", matrix_grid(&m));
            println!("\nzero pattern (t = nonzero):\n{}", pattern.to_grid().trim_end());
            println!("\nexponent: {exp}");
            print!("\ntree:\n{}", render_tree(&tree, code.labels()));
        }
    }
}

fn print_search(code: &LinearStbc, res: &SearchResult, format: Format) {
    let best = res.best_ordering.apply(code.labels());
    match format {
        Format::Json => {
            let out = json!({
                "code": code.name(),
                "K": code.k(),
                "best_exponent": res.best_exponent,
                "best_ordering": res.best_ordering,
                "best_labels": best,
                "tree": res.tree,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        Format::Text => {
            println!("code: {} (nt = {}, K = {})", code.name(), code.nt(), code.k());
            println!("best exponent: {}", res.best_exponent);
            println!("best ordering: {}", best.join(" "));
            println!("permutation: {}", ordering_to_json(&res.best_ordering));
            print!("\ntree:\n{}", render_tree(&res.tree, &best));
        }
    }
}
