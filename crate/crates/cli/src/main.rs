//! Command-line front end: star-products, transvectants, quantization,
//! conjugation, and the named verification suites.
//!
//! Exit codes: 0 on success, 1 on a verified mathematical violation or
//! domain error (e.g. an odd-parity pushforward), 2 on usage, parse, or
//! normalization errors.

use std::process::ExitCode;
use std::sync::OnceLock;

use clap::{Parser, Subcommand};

use exostar::verify::ALL_SUITES;
use exostar::{
    expr, phi_pullback, phi_pushforward, render_pdo, render_phase, render_qpoly, run_suite,
    star_product, transvectant, Bounds, OutputFormat, ProductKind, SuiteName,
};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "exostar",
    version,
    about = "Exact Moyal and exotic star-product calculus on Laurent phase-space symbols"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Star-product of two symbols.
    Product {
        /// Which product: moyal or exotic.
        #[arg(long)]
        kind: String,
        /// Drop hbar-degrees above this order from the (exact) result.
        #[arg(long)]
        max_order: Option<i64>,
        #[arg(long, default_value = "text")]
        format: String,
        lhs: String,
        rhs: String,
    },
    /// Transvectant J_k at integer weights (m, n) of two q-polynomials.
    Transvectant {
        #[arg(short = 'k')]
        order: i64,
        #[arg(short = 'm', allow_hyphen_values = true)]
        weight_m: i64,
        #[arg(short = 'n', allow_hyphen_values = true)]
        weight_n: i64,
        #[arg(long, default_value = "text")]
        format: String,
        f: String,
        g: String,
    },
    /// Quantize a symbol into a formal pseudodifferential operator.
    Quantize {
        /// Representation: weyl or exotic.
        #[arg(long)]
        rep: String,
        #[arg(long, default_value = "text")]
        format: String,
        expr: String,
    },
    /// Apply the conjugating symplectomorphism to a symbol.
    Conjugate {
        /// pullback maps p^m q^n to 2^-m p^(2m-n) q^n; pushforward inverts it.
        #[arg(long)]
        direction: String,
        #[arg(long, default_value = "text")]
        format: String,
        expr: String,
    },
    /// Run a named verification suite.
    #[command(after_help = verify_suites_help())]
    Verify {
        #[arg(long)]
        suite: String,
        /// Momentum-exponent bound of the case grid.
        #[arg(long)]
        max_p: Option<i64>,
        /// Degree bound in q of the case grid.
        #[arg(long)]
        max_q: Option<u32>,
        /// Bound on bidifferential / transvectant orders.
        #[arg(long)]
        max_k: Option<u32>,
        /// Bound on the differential order of cobounding candidates.
        #[arg(long = "max-K")]
        max_cochain_order: Option<u32>,
        /// Seed for the deterministic case generator.
        #[arg(long)]
        seed: Option<u64>,
        /// Report format: text or json.
        #[arg(long, default_value = "text")]
        format: String,
    },
}

fn verify_suites_help() -> &'static str {
    static HELP: OnceLock<String> = OnceLock::new();
    HELP.get_or_init(|| {
        let mut s = String::from("Suites:\n");
        for suite in ALL_SUITES {
            s.push_str(&format!("  {:14} {}\n", suite.as_str(), suite.describe()));
        }
        s
    })
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse()
}

fn read_phase_or_exit(src: &str) -> Result<exostar::PhaseFn, ExitCode> {
    expr::read_phase(src).map_err(|msg| usage_error(&format!("in '{src}': {msg}")))
}

fn run() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Product { kind, max_order, format, lhs, rhs } => {
            let kind: ProductKind = match kind.parse() {
                Ok(k) => k,
                Err(msg) => return usage_error(&msg),
            };
            let format = match parse_format(&format) {
                Ok(f) => f,
                Err(msg) => return usage_error(&msg),
            };
            let f = match read_phase_or_exit(&lhs) {
                Ok(f) => f,
                Err(code) => return code,
            };
            let g = match read_phase_or_exit(&rhs) {
                Ok(g) => g,
                Err(code) => return code,
            };
            println!("{}", render_phase(&star_product(&f, &g, kind, max_order), format));
            ExitCode::SUCCESS
        }
        Cmd::Transvectant { order, weight_m, weight_n, format, f, g } => {
            let format = match parse_format(&format) {
                Ok(f) => f,
                Err(msg) => return usage_error(&msg),
            };
            let order = match u32::try_from(order) {
                Ok(k) => k,
                Err(_) => return usage_error(&format!("k must be a non-negative integer, got {order}")),
            };
            let fp = match read_phase_or_exit(&f) {
                Ok(v) => v,
                Err(code) => return code,
            };
            let gp = match read_phase_or_exit(&g) {
                Ok(v) => v,
                Err(code) => return code,
            };
            let (fq, gq) = match (fp.as_qpoly(), gp.as_qpoly()) {
                (Some(fq), Some(gq)) => (fq, gq),
                _ => {
                    return usage_error(
                        "transvectant arguments must be polynomials in q (no p dependence)",
                    )
                }
            };
            println!(
                "{}",
                render_qpoly(&transvectant(&fq, &gq, weight_m, weight_n, order), format)
            );
            ExitCode::SUCCESS
        }
        Cmd::Quantize { rep, format, expr: src } => {
            let format = match parse_format(&format) {
                Ok(f) => f,
                Err(msg) => return usage_error(&msg),
            };
            let f = match read_phase_or_exit(&src) {
                Ok(f) => f,
                Err(code) => return code,
            };
            let op = match rep.as_str() {
                "weyl" => exostar::weyl_quantize(&f),
                "exotic" => exostar::exotic_quantize(&f),
                other => {
                    return usage_error(&format!(
                        "unknown representation '{other}' (expected weyl or exotic)"
                    ))
                }
            };
            println!("{}", render_pdo(&op, format));
            ExitCode::SUCCESS
        }
        Cmd::Conjugate { direction, format, expr: src } => {
            let format = match parse_format(&format) {
                Ok(f) => f,
                Err(msg) => return usage_error(&msg),
            };
            let f = match read_phase_or_exit(&src) {
                Ok(f) => f,
                Err(code) => return code,
            };
            match direction.as_str() {
                "pullback" => {
                    println!("{}", render_phase(&phi_pullback(&f), format));
                    ExitCode::SUCCESS
                }
                "pushforward" => match phi_pushforward(&f) {
                    Ok(g) => {
                        println!("{}", render_phase(&g, format));
                        ExitCode::SUCCESS
                    }
                    Err(parity) => {
                        eprintln!("error: {parity}");
                        ExitCode::from(EXIT_VIOLATION)
                    }
                },
                other => usage_error(&format!(
                    "unknown direction '{other}' (expected pullback or pushforward)"
                )),
            }
        }
        Cmd::Verify { suite, max_p, max_q, max_k, max_cochain_order, seed, format } => {
            let suite: SuiteName = match suite.parse() {
                Ok(s) => s,
                Err(msg) => return usage_error(&msg),
            };
            let format = match parse_format(&format) {
                Ok(OutputFormat::Latex) => {
                    return usage_error("verify reports support --format text or json only")
                }
                Ok(f) => f,
                Err(msg) => return usage_error(&msg),
            };
            let mut bounds: Bounds = suite.default_bounds();
            if let Some(v) = max_p {
                bounds.max_p = v;
            }
            if let Some(v) = max_q {
                bounds.max_q = v;
            }
            if let Some(v) = max_k {
                bounds.max_k = v;
            }
            if let Some(v) = max_cochain_order {
                bounds.max_cochain_order = v;
            }
            if let Some(v) = seed {
                bounds.seed = v;
            }
            let report = run_suite(suite, &bounds);
            let rendered = report.render(format);
            if matches!(format, OutputFormat::Json) {
                println!("{rendered}");
            } else {
                print!("{rendered}");
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VIOLATION)
            }
        }
    }
}

fn main() -> ExitCode {
    run()
}
