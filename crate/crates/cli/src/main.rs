//! `moments`: tables, expansions and the verification suite from the command line.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 for
//! usage or bounds errors.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use moments_core::bell::{self, StirlingTable, YPolynomial};
use moments_core::coefficients::{coefficient_table, RecurrenceMemo};
use moments_core::diffalg::{self, DiffPolynomial};
use moments_core::exponents::Exponents;
use moments_core::partition::{enumerate_constrained, enumerate_partitions};
use moments_core::poly::{check_main_theorem, EqualityReport, RationalPolynomial};
use moments_core::verify::{run_suite, Status, VerifyConfig, VerifyReport};
use moments_core::{Cap, Partition};

#[derive(Parser)]
#[command(
    name = "moments",
    version,
    about = "Exact generalized Faà di Bruno coefficients and modified Bell polynomials"
)]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for the random polynomial triples.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest partition weight any command may enumerate.
    #[arg(long, global = true, default_value_t = Cap::DEFAULT)]
    cap: u32,
    /// Write output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// List the partitions of N, or of N + R·S with at least R parts above S.
    Partitions {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, default_value_t = 0)]
        s: u32,
    },
    /// Coefficient table C_{λ,r}^{(s)} for fixed n and s.
    Coeff {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        /// Recompute every entry by the recurrence and fail on any difference.
        #[arg(long)]
        verify: bool,
    },
    /// n-th derivative of (f∘φ)·(g∘φ^(s)) as a symbolic expansion.
    Expand {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        /// Compare with repeated symbolic differentiation and fail on any difference.
        #[arg(long)]
        verify: bool,
    },
    /// Modified partial Bell polynomial, or the complete one when --k is omitted.
    Bell {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 0)]
        r: u32,
        #[arg(long, default_value_t = 0)]
        s: u32,
    },
    /// Modified Stirling numbers S~(n,k,r) for all 0 <= r <= k <= n <= N_MAX.
    Stirling {
        #[arg(long)]
        n_max: u32,
    },
    /// Compare both sides on concrete polynomials given as "c0,c1,..." (p/q allowed).
    Check {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
    },
    /// Run every identity check up to the given bounds.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: u32,
        #[arg(long, default_value_t = 2)]
        max_s: u32,
        /// Number of random polynomial triples.
        #[arg(long, default_value_t = 200)]
        triples: usize,
    },
}

/// A usage or bounds error; exits with status 2.
struct Failure(String);

impl From<moments_core::Error> for Failure {
    fn from(e: moments_core::Error) -> Self {
        Failure(e.to_string())
    }
}

/// Rendered output plus whether a verification step failed.
struct Output {
    text: String,
    failed: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, failed: None }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out.text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            match out.failed {
                Some(msg) => {
                    eprintln!("verification failed: {msg}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    if cli.cap == 0 {
        return Err(Failure("--cap must be positive".to_string()));
    }
    let cap = Cap::new(cli.cap);
    let fmt = |default| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Partitions { n, r, s } => {
            let list = match r {
                Some(r) => enumerate_constrained(*n, *r, *s, cap)?,
                None => enumerate_partitions(*n, cap)?,
            };
            Ok(Output::ok(render_partitions(&list, fmt(Format::Pretty))))
        }
        Command::Coeff { n, s, verify } => {
            let table = coefficient_table(*n, *s, cap)?;
            let text = match fmt(Format::Pretty) {
                Format::Json => with_newline(table.to_json()),
                Format::Csv => table.to_csv(),
                Format::Latex => table.to_latex(),
                Format::Pretty => table.to_pretty(),
            };
            let mut out = Output::ok(text);
            if *verify {
                let bad = table.cross_check(&RecurrenceMemo::new(*s), Default::default());
                if let Some(m) = bad.first() {
                    out.failed = Some(format!(
                        "{} of {} entries differ; first r={} {}: closed form {}, recurrence {}",
                        bad.len(),
                        table.len(),
                        m.r,
                        m.partition,
                        m.closed_form,
                        m.recurrence
                    ));
                }
            }
            Ok(out)
        }
        Command::Expand { n, s, verify } => {
            let expansion = diffalg::formula_expansion(*n, *s, cap)?;
            let mut out = Output::ok(render_diff(&expansion, fmt(Format::Pretty)));
            if *verify {
                let oracle = diffalg::nth_derivative_expansion(*n, *s, cap)?;
                let diff = oracle.difference(&expansion);
                if !diff.is_empty() {
                    out.failed = Some(format!(
                        "{} monomials differ: {}",
                        diff.len(),
                        diff.to_pretty()
                    ));
                }
            }
            Ok(out)
        }
        Command::Bell { n, k, r, s } => {
            let p = match k {
                Some(k) => bell::modified_partial_bell(*n, *k, *r, *s, cap)?,
                None => bell::modified_complete_bell(*n, *s, cap)?,
            };
            Ok(Output::ok(render_bell(&p, fmt(Format::Pretty))))
        }
        Command::Stirling { n_max } => {
            let table = StirlingTable::build(*n_max, cap)?;
            let text = match fmt(Format::Csv) {
                Format::Json => with_newline(table.to_json()),
                Format::Csv => table.to_csv(),
                Format::Latex => table.to_latex(),
                Format::Pretty => table.to_pretty(),
            };
            Ok(Output::ok(text))
        }
        Command::Check { f, g, phi, n, s } => {
            let f = RationalPolynomial::parse(f)?;
            let g = RationalPolynomial::parse(g)?;
            let phi = RationalPolynomial::parse(phi)?;
            let report = check_main_theorem(&f, &g, &phi, *n, *s, cap)?;
            let mut out = Output::ok(render_check(&report, fmt(Format::Json)));
            if !report.equal {
                out.failed = Some("the two sides differ".to_string());
            }
            Ok(out)
        }
        Command::Verify {
            max_n,
            max_s,
            triples,
        } => {
            let weight = u64::from(*max_n) + u64::from(*max_n) * u64::from(*max_s);
            cap.check(weight)?;
            let config = VerifyConfig {
                triples: *triples,
                cap,
                ..VerifyConfig::new(*max_n, *max_s, cli.seed)
            };
            let report = run_suite(&config);
            let mut out = Output::ok(render_report(&report, fmt(Format::Json)));
            if !report.passed {
                let names: Vec<&str> = report.failures().map(|r| r.name.as_str()).collect();
                out.failed = Some(names.join("; "));
            }
            Ok(out)
        }
    }
}

fn with_newline(mut s: String) -> String {
    s.push('\n');
    s
}

fn render_partitions(list: &[Partition], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            out = with_newline(serde_json::to_string_pretty(list).expect("partitions serialize"))
        }
        Format::Csv => {
            out.push_str("parts\n");
            for p in list {
                let parts: Vec<String> = p.parts().iter().map(u32::to_string).collect();
                let _ = writeln!(out, "{}", parts.join(" "));
            }
        }
        Format::Latex => {
            for p in list {
                let parts: Vec<String> = p.parts().iter().map(u32::to_string).collect();
                let body = if p.is_empty() {
                    "\\emptyset".to_string()
                } else {
                    format!("({})", parts.join(","))
                };
                let _ = writeln!(out, "${body}$ \\\\");
            }
        }
        Format::Pretty => {
            for p in list {
                let _ = writeln!(out, "{p}");
            }
        }
    }
    out
}

fn exponents_field(e: &Exponents) -> String {
    e.iter()
        .map(|(i, p)| format!("{i}^{p}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_diff(p: &DiffPolynomial, format: Format) -> String {
    match format {
        Format::Json => with_newline(p.to_json()),
        Format::Latex => with_newline(p.to_latex()),
        Format::Pretty => with_newline(p.to_pretty()),
        Format::Csv => {
            let mut out = String::from("f,g,y,z,coeff\n");
            for (m, c) in p.iter() {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    m.f,
                    m.g,
                    exponents_field(&m.y),
                    exponents_field(&m.z),
                    c
                );
            }
            out
        }
    }
}

fn render_bell(p: &YPolynomial, format: Format) -> String {
    match format {
        Format::Json => with_newline(p.to_json()),
        Format::Latex => with_newline(p.to_latex()),
        Format::Pretty => with_newline(p.to_pretty()),
        Format::Csv => {
            let mut out = String::from("y,coeff\n");
            for (e, c) in p.iter() {
                let _ = writeln!(out, "{},{}", exponents_field(e), c);
            }
            out
        }
    }
}

fn render_check(report: &EqualityReport, format: Format) -> String {
    match format {
        Format::Json => with_newline(report.to_json()),
        Format::Pretty => {
            let mut out = String::new();
            let _ = writeln!(out, "equal: {}", report.equal);
            let _ = writeln!(out, "lhs: {}", report.lhs);
            let _ = writeln!(out, "rhs: {}", report.rhs);
            if let Some(d) = &report.difference {
                let _ = writeln!(out, "difference: {d}");
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("degree,lhs,rhs\n");
            let top = report
                .lhs
                .degree()
                .max(report.rhs.degree())
                .map_or(0, |d| d + 1);
            for k in 0..top {
                let _ = writeln!(out, "{k},{},{}", report.lhs.coeff(k), report.rhs.coeff(k));
            }
            out
        }
        Format::Latex => {
            let rel = if report.equal { "=" } else { "\\neq" };
            let tex = |p: &RationalPolynomial| p.to_string().replace('·', " ");
            format!("\\[ {} {rel} {} \\]\n", tex(&report.lhs), tex(&report.rhs))
        }
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Informational => "informational",
    }
}

fn render_report(report: &VerifyReport, format: Format) -> String {
    match format {
        Format::Json => with_newline(report.to_json()),
        Format::Pretty => {
            let mut out = String::new();
            for r in &report.identities {
                let _ = writeln!(
                    out,
                    "{:<13} {} ({} instances, {} mismatches)",
                    status_word(r.status),
                    r.name,
                    r.instances,
                    r.mismatches
                );
                if let Some(d) = &r.detail {
                    let _ = writeln!(out, "              {d}");
                }
            }
            let _ = writeln!(
                out,
                "{}",
                if report.passed {
                    "all identities hold"
                } else {
                    "FAILED"
                }
            );
            out
        }
        Format::Csv => {
            let mut out = String::from("name,status,instances,mismatches\n");
            for r in &report.identities {
                let _ = writeln!(
                    out,
                    "\"{}\",{},{},{}",
                    r.name.replace('"', "\"\""),
                    status_word(r.status),
                    r.instances,
                    r.mismatches
                );
            }
            out
        }
        Format::Latex => {
            let mut out = String::from("\\begin{tabular}{lrrr}\nidentity & status & instances & mismatches \\\\\n\\hline\n");
            for r in &report.identities {
                let _ = writeln!(
                    out,
                    "\\verb|{}| & {} & {} & {} \\\\",
                    r.name,
                    status_word(r.status),
                    r.instances,
                    r.mismatches
                );
            }
            out.push_str("\\end{tabular}\n");
            out
        }
    }
}
