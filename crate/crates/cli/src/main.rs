use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use affine_classes::classcount::{Characteristic, Family};
use affine_classes::oracle::{self, OracleTarget, DEFAULT_CAP};
use affine_classes::verify::{
    bound_grid_cases, constant_cases, run_suite, CaseResult, Grid, GridParams, Suite, SuiteReport,
    VerifyOptions,
};
use affine_classes_cli::{
    exit, exit_code, table, write_records, Config, Format, Method, TableRequest, UsageError,
    CAP_ENV,
};
use anyhow::Context;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "affcc",
    version,
    about = "Conjugacy-class counts of affine classical groups"
)]
struct Cli {
    /// TOML file with defaults for `order`, `cap` and `grid`
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate k(G) for one family
    Table {
        #[arg(long)]
        family: Family,
        /// Field size; omit together with --symbolic-q
        #[arg(
            long,
            required_unless_present = "symbolic_q",
            conflicts_with = "symbolic_q"
        )]
        q: Option<u64>,
        /// Keep q as a symbol
        #[arg(long)]
        symbolic_q: bool,
        /// Characteristic for symbolic tables (odd or even)
        #[arg(long = "char")]
        characteristic: Option<Characteristic>,
        #[arg(long)]
        n_max: Option<usize>,
        /// Comma-separated: closed-form, recursion, orbit-assembly, oracle
        #[arg(long, value_delimiter = ',', default_value = "closed-form")]
        method: Vec<Method>,
        #[arg(long, default_value = "csv")]
        format: Format,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = CAP_ENV)]
        cap: Option<u128>,
    },
    /// Run verification suites
    Verify {
        /// identities, cross-method, oracle, golden-values, bounds or all
        #[arg(long, default_value = "all")]
        suite: String,
        /// small or full
        #[arg(long)]
        grid: Option<Grid>,
        #[arg(long)]
        json: bool,
        #[arg(long, env = CAP_ENV)]
        cap: Option<u128>,
    },
    /// Check the upper bounds on a grid of (q, n)
    Bounds {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,7,8,9")]
        q_set: Vec<u64>,
        #[arg(long, default_value_t = 25)]
        n_max: usize,
        /// Also certify the numeric constants
        #[arg(long)]
        constants: bool,
        #[arg(long)]
        json: bool,
    },
    /// Count classes of one explicitly enumerated group
    Oracle {
        /// gl, sl, gu, su, sp, o-plus, o-minus, o, or any of these prefixed by `a`
        #[arg(long)]
        family: OracleTarget,
        #[arg(long)]
        q: u64,
        /// Dimension of the natural module
        #[arg(long)]
        n: usize,
        #[arg(long, env = CAP_ENV)]
        cap: Option<u128>,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE
            } else {
                exit::SUCCESS
            });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .filter_map(|c| c.downcast_ref::<io::Error>())
        .any(|io| io.kind() == io::ErrorKind::BrokenPipe)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let cap = |flag: Option<u128>| flag.or(config.cap).unwrap_or(DEFAULT_CAP);
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Table {
            family,
            q,
            symbolic_q,
            characteristic,
            n_max,
            method,
            format,
            out: out_path,
            cap: cap_flag,
        } => {
            let req = TableRequest {
                family,
                q: if symbolic_q { None } else { q },
                characteristic,
                n_max: n_max.or(config.order).unwrap_or(10),
                methods: method,
                cap: cap(cap_flag),
            };
            let records = table(&req)?;
            match out_path {
                Some(path) => {
                    let file = File::create(&path)
                        .with_context(|| format!("creating {}", path.display()))?;
                    let mut w = BufWriter::new(file);
                    write_records(&records, format, &mut w)?;
                    w.flush()?;
                }
                None => write_records(&records, format, &mut out)?,
            }
            let mismatch = records.iter().any(|r| r.status == "mismatch");
            Ok(if mismatch {
                exit::FAILURE
            } else {
                exit::SUCCESS
            })
        }
        Command::Verify {
            suite,
            grid,
            json,
            cap: cap_flag,
        } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite
                    .parse::<Suite>()
                    .map_err(|_| UsageError(format!("unknown suite `{suite}`")))?]
            };
            let grid = match grid {
                Some(g) => g,
                None => config.grid.as_deref().unwrap_or("small").parse()?,
            };
            let options = VerifyOptions {
                grid,
                cap: cap(cap_flag),
                ..VerifyOptions::default()
            };
            let reports = suites
                .into_iter()
                .map(|s| run_suite(s, &options))
                .collect::<Result<Vec<SuiteReport>, _>>()?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
            } else {
                for r in &reports {
                    print_cases(
                        &mut out,
                        &format!("{} ({} grid)", r.suite, r.grid),
                        &r.cases,
                    )?;
                }
            }
            Ok(if reports.iter().all(SuiteReport::passed) {
                exit::SUCCESS
            } else {
                exit::FAILURE
            })
        }
        Command::Bounds {
            q_set,
            n_max,
            constants,
            json,
        } => {
            let params = GridParams {
                q_set,
                n_max,
                ..GridParams::of(Grid::Full)
            };
            let mut cases = bound_grid_cases(&params)?;
            if constants {
                cases.extend(constant_cases()?);
            }
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&cases)?)?;
            } else {
                print_cases(&mut out, "bounds", &cases)?;
            }
            Ok(if cases.iter().all(|c| c.passed) {
                exit::SUCCESS
            } else {
                exit::FAILURE
            })
        }
        Command::Oracle {
            family,
            q,
            n,
            cap: cap_flag,
            json,
        } => {
            let run = oracle::run(family, n, q, cap(cap_flag))?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&run)?)?;
                return Ok(exit::SUCCESS);
            }
            writeln!(out, "{}({n},{q})", run.target)?;
            writeln!(out, "field: {}", run.field)?;
            writeln!(out, "form: {}", run.form)?;
            writeln!(out, "order: {}", run.order)?;
            writeln!(out, "k = {}", run.k)?;
            writeln!(out, "class sizes:")?;
            for (size, cent) in run
                .classes
                .sizes
                .iter()
                .zip(&run.classes.centralizer_orders)
            {
                writeln!(out, "  {size} (centralizer {cent})")?;
            }
            if let Some(sums) = &run.orbit_sums {
                writeln!(out, "orbit counts o(C) over classes of the linear part:")?;
                for c in &sums.classes {
                    writeln!(
                        out,
                        "  class size {}, dim [g,V] = {}, o = {}",
                        c.class_size, c.commutator_dim, c.o
                    )?;
                }
                writeln!(out, "sum of o(C) = {}", sums.total)?;
            }
            Ok(exit::SUCCESS)
        }
    }
}

fn print_cases(out: &mut dyn Write, title: &str, cases: &[CaseResult]) -> io::Result<()> {
    let failed = cases.iter().filter(|c| !c.passed).count();
    writeln!(
        out,
        "== {title}: {}/{} passed",
        cases.len() - failed,
        cases.len()
    )?;
    for c in cases {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            writeln!(out, "{tag} {}", c.name)?;
        } else {
            writeln!(out, "{tag} {} :: {}", c.name, c.detail)?;
        }
    }
    Ok(())
}
