//! Command-line front end: thresholds, chi P^n, extremal sequences and the
//! verification sweeps.
//!
//! Exit codes: 0 when everything checked passes, 1 when a mathematical check
//! fails, 2 for usage or configuration errors.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use steenrod_chi::fp::Prime;
use steenrod_chi::operations::chi_pn_dual;
use steenrod_chi::relations::l_of_n;
use steenrod_chi::report::Suite;
use steenrod_chi::sequences::{build_r_table, construct_m};
use steenrod_chi::suite::{default_max_degree, run_suites, IntRange, SweepConfig};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "steenrod-chi",
    version,
    about = "Exact computations with chi on mod-p Steenrod reduced powers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate l(n) = max{ j : p j - alpha(j) < (p-1) n }.
    Lofn {
        #[command(flatten)]
        common: Common,
        /// Inclusive degree range, e.g. 1..8.
        #[arg(long, allow_hyphen_values = true)]
        degrees: IntRange,
    },
    /// Print all pairings <chi P^n, xi^R> over degree-n monomials.
    Chi {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: u64,
    },
    /// Run certificate suites over a parameter sweep.
    Verify(VerifyArgs),
    /// Print the right-lexicographically maximal degree-n sequence M.
    Mseq {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: u64,
    },
    /// Print the table of sequences R_{n,j}, one per weight l(n)+1..n.
    Rtable {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: u64,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, short, default_value = "2", value_parser = parse_prime)]
    prime: Prime,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated: bm, kernel, vn, davis, straffin, milnor, mseq,
    /// rtable, toeplitz, binom, monotone, all.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Sweep degrees 0..=N (default depends on the prime).
    #[arg(long, conflicts_with = "degrees")]
    max_degree: Option<u64>,
    /// Sweep exactly this inclusive degree range.
    #[arg(long, allow_hyphen_values = true)]
    degrees: Option<IntRange>,
    /// r range for the Davis and Straffin suites.
    #[arg(long = "r", allow_hyphen_values = true)]
    r: Option<IntRange>,
    /// b range for the Straffin suite.
    #[arg(long = "b", allow_hyphen_values = true)]
    b: Option<IntRange>,
    /// l range for the Toeplitz suite.
    #[arg(long = "l", allow_hyphen_values = true)]
    l: Option<IntRange>,
    /// m range for the Toeplitz suite.
    #[arg(long = "m", allow_hyphen_values = true)]
    m: Option<IntRange>,
    /// Check l(n+1) >= l(n) for all n below this bound.
    #[arg(long)]
    monotone_max: Option<u64>,
    /// Worker threads.
    #[arg(long, short, env = "STEENROD_CHI_JOBS", default_value_t = default_jobs())]
    jobs: usize,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn parse_prime(s: &str) -> Result<Prime, String> {
    let p: u32 = s.parse().map_err(|e| format!("{e}"))?;
    Prime::new(p).map_err(|e| e.to_string())
}

enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(EXIT_FAILED),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Lofn { common, degrees } => {
            if degrees.start < 0 {
                return Err(format!("degrees must be nonnegative, got {degrees}"));
            }
            let p = common.prime;
            let rows: Vec<(u64, i64)> = (degrees.start as u64..=degrees.end as u64)
                .map(|n| (n, l_of_n(n, p)))
                .collect();
            let body = match common.format {
                Format::Json => to_json(&json!({
                    "prime": p.get(),
                    "rows": rows.iter().map(|&(n, l)| json!({"n": n, "l": l})).collect::<Vec<_>>(),
                })),
                Format::Csv => {
                    let mut s = String::from("n,l\n");
                    for (n, l) in &rows {
                        s.push_str(&format!("{n},{l}\n"));
                    }
                    s
                }
                Format::Text => rows.iter().map(|(n, l)| format!("{n} {l}\n")).collect(),
            };
            emit(&common, &body)?;
            Ok(Outcome::Ok)
        }
        Command::Chi { common, degree } => {
            let chi = chi_pn_dual(degree, common.prime);
            let zeros = chi.zero_pairings();
            if !zeros.is_empty() {
                let at: Vec<String> = zeros.iter().map(|s| s.to_string()).collect();
                eprintln!(
                    "check failed: <chi P^{degree}, xi^R> vanishes for R in {}",
                    at.join(", ")
                );
                return Ok(Outcome::Failed);
            }
            let body = match common.format {
                Format::Json => to_json(&chi),
                Format::Csv => {
                    let mut s = String::from("monomial,sequence,value\n");
                    for (r, v) in chi.iter() {
                        s.push_str(&format!("{},\"{}\",{}\n", r.to_monomial_string(), r, v));
                    }
                    s
                }
                Format::Text => chi
                    .iter()
                    .map(|(r, v)| {
                        format!(
                            "{:<16} {:<12} {}\n",
                            r.to_monomial_string(),
                            r.to_string(),
                            v
                        )
                    })
                    .collect(),
            };
            emit(&common, &body)?;
            Ok(Outcome::Ok)
        }
        Command::Mseq { common, degree } => {
            let p = common.prime;
            let m = construct_m(degree, p);
            let record = json!({
                "prime": p.get(),
                "degree": degree,
                "sequence": m.seq.to_string(),
                "monomial": m.seq.to_monomial_string(),
                "weight": m.weight(),
                "l": l_of_n(degree, p),
            });
            let body = match common.format {
                Format::Json => to_json(&record),
                Format::Csv => format!(
                    "degree,sequence,monomial,weight\n{},\"{}\",{},{}\n",
                    degree,
                    m.seq,
                    m.seq.to_monomial_string(),
                    m.weight()
                ),
                Format::Text => format!(
                    "{}  {}  degree={} weight={}\n",
                    m.seq,
                    m.seq.to_monomial_string(),
                    degree,
                    m.weight()
                ),
            };
            emit(&common, &body)?;
            Ok(Outcome::Ok)
        }
        Command::Rtable { common, degree } => {
            let p = common.prime;
            let table = build_r_table(degree, p);
            let rows: Vec<Value> = table
                .entries
                .iter()
                .map(|(&w, s)| {
                    json!({
                        "weight": w,
                        "offset": degree - w,
                        "sequence": s.to_string(),
                        "monomial": s.to_monomial_string(),
                        "degree": s.degree(p),
                    })
                })
                .collect();
            let body = match common.format {
                Format::Json => to_json(&json!({
                    "prime": p.get(),
                    "degree": degree,
                    "l": l_of_n(degree, p),
                    "entries": rows,
                })),
                Format::Csv => {
                    let mut s = String::from("weight,offset,sequence,monomial,degree\n");
                    for (&w, r) in &table.entries {
                        s.push_str(&format!(
                            "{},{},\"{}\",{},{}\n",
                            w,
                            degree - w,
                            r,
                            r.to_monomial_string(),
                            r.degree(p)
                        ));
                    }
                    s
                }
                Format::Text => table
                    .entries
                    .iter()
                    .map(|(&w, r)| {
                        format!(
                            "j={:<4} {:<16} {:<16} degree={} weight={}\n",
                            w,
                            r.to_string(),
                            r.to_monomial_string(),
                            r.degree(p),
                            w
                        )
                    })
                    .collect(),
            };
            emit(&common, &body)?;
            Ok(Outcome::Ok)
        }
        Command::Verify(args) => verify(args),
    }
}

fn verify(args: VerifyArgs) -> Result<Outcome, String> {
    let p = args.common.prime;
    let suites: Vec<Suite> = Suite::parse_list(&args.suite).map_err(|e| e.to_string())?;

    let mut config = SweepConfig::defaults(p);
    config.degrees = match (args.degrees, args.max_degree) {
        (Some(r), _) => r,
        (None, Some(n)) => IntRange::new(0, n as i64).map_err(|e| e.to_string())?,
        (None, None) => {
            IntRange::new(0, default_max_degree(p) as i64).map_err(|e| e.to_string())?
        }
    };
    if let Some(r) = args.r {
        config.davis_r = r;
        config.straffin_r = r;
    }
    if let Some(b) = args.b {
        config.straffin_b = b;
    }
    if let Some(l) = args.l {
        config.toeplitz_l = l;
    }
    if let Some(m) = args.m {
        config.toeplitz_m = m;
    }
    if let Some(n) = args.monotone_max {
        config.monotone_max = n;
    }
    if args.jobs == 0 {
        return Err("--jobs must be at least 1".into());
    }

    let report = run_suites(&config, &suites, args.jobs).map_err(|e| e.to_string())?;
    let body = match args.common.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    emit(&args.common, &body)?;
    for c in report.failures() {
        eprintln!(
            "FAIL {} p={} {}{}",
            c.suite,
            c.prime,
            c.degree.map(|d| format!("n={d} ")).unwrap_or_default(),
            c.params_string()
        );
        if let Some(w) = &c.witness {
            eprintln!("  witness: {w}");
        }
    }
    Ok(if report.passed() {
        Outcome::Ok
    } else {
        Outcome::Failed
    })
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn emit(common: &Common, body: &str) -> Result<(), String> {
    match &common.out {
        Some(path) => {
            fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    }
}
