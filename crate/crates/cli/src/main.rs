mod commands;
mod config;
mod error;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use zl_core::{ComplexPoint, TailPolicy};

use commands::{StieltjesMethod, SumMode};
use config::{RunConfig, Suite, DEFAULT_MAX_M, DEFAULT_MAX_N, DEFAULT_PREC, DEFAULT_TOL};
use error::CliError;
use output::{write_output, Format};

/// Riemann zeta, Stieltjes constants and the Laguerre expansion of the
/// fractional part, in arbitrary precision.
#[derive(Parser, Debug)]
#[command(name = "zl", version)]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = "ZL_DEFAULT_PREC", default_value_t = DEFAULT_PREC)]
    prec: u32,
    /// Target absolute tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Output format (each command has its own default).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Stieltjes constants γ_0..γ_N (CSV n,gamma,bracket,method).
    Stieltjes {
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = StieltjesMethod::Em)]
        method: StieltjesMethod,
        /// Integration cutoff X for the integral method.
        #[arg(long, default_value_t = 4096)]
        cutoff: u64,
    },
    /// Coefficient grid ℓₙ⁽ᵐ⁾ (CSV m,n,ell_nm,bracket), or Parseval partial sums.
    Coeffs {
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_M)]
        max_m: usize,
        /// Emit Σ_{n≤N} C(n+m,m)(ℓₙ⁽ᵐ⁾)² for N = 0..max-n instead.
        #[arg(long)]
        parseval: bool,
        /// Order for --parseval.
        #[arg(long, default_value_t = 0)]
        m: usize,
    },
    /// Laguerre function 𝓛ₙ⁽ᵐ⁾(x), or the Gram matrix in ℋₘ.
    Laguerre {
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
        #[arg(long)]
        gram: bool,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
    /// ζ⁽ᵐ⁾(s) from the rational series (JSON).
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        re: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        im: f64,
        #[arg(long, default_value_t = 0)]
        m: usize,
    },
    /// Reference values by independent methods (JSON with value and bracket).
    Oracle {
        #[command(subcommand)]
        what: OracleCmd,
    },
    /// Partial sums of the Laguerre expansion of {x}, or the non-uniformity probe.
    Fracpart {
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        terms: usize,
        #[arg(long, value_enum, default_value_t = SumMode::Direct)]
        sum: SumMode,
        /// Abel parameter for --sum abel.
        #[arg(long, default_value_t = 0.99)]
        r: f64,
        /// Emit CSV N,sup_err_near_int,sup_err_far for N = 10, 100, ..., max-terms.
        #[arg(long)]
        probe: bool,
        #[arg(long, default_value_t = 1000)]
        max_terms: usize,
    },
    /// ‖{·}‖₍ₘ₎² in closed form and by quadrature for m = 0..max-m.
    Norm {
        #[arg(long, default_value_t = DEFAULT_MAX_M)]
        max_m: usize,
    },
    /// Run the identity suites; exit status 0 iff every identity holds.
    Verify {
        /// Suites to run (repeatable); all by default.
        #[arg(long = "suite", value_enum)]
        suites: Vec<Suite>,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_M)]
        max_m: usize,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// ζ by Euler-Maclaurin, or ζ⁽ᵈ⁾ from Cauchy's formula.
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        re: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        im: f64,
        #[arg(long, default_value_t = 0)]
        deriv: usize,
    },
    /// ‖{·}‖₍ₘ₎² from ζ⁽ᵏ⁾(0) and γ_k.
    Norm {
        #[arg(long, default_value_t = 0)]
        m: usize,
    },
    /// ∫₁^∞ {x}^P logᴶx / x^{s+1} dx, exact on [1, X] plus a bounded tail.
    Integral {
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[arg(long, default_value_t = 0)]
        logdeg: usize,
        #[arg(long, default_value_t = 4096)]
        cutoff: u64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
        s_re: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        s_im: f64,
        /// Tail policy: halfmean or crude.
        #[arg(long, default_value = "halfmean")]
        tail: String,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let base = RunConfig {
        precision_bits: cli.prec,
        tolerance: cli.tol,
        ..RunConfig::default()
    };
    let ctx = base.context()?;
    let out = match cli.cmd {
        Cmd::Stieltjes { max_n, method, cutoff } => commands::stieltjes(max_n, method, cutoff, &ctx)?,
        Cmd::Coeffs {
            max_n,
            max_m,
            parseval,
            m,
        } => {
            if parseval {
                commands::parseval(m, max_n, &ctx)?
            } else {
                commands::coeffs(max_n, max_m, &ctx)?
            }
        }
        Cmd::Laguerre { n, m, x, gram, max_n } => {
            if gram {
                commands::laguerre_gram(max_n, m, &ctx)?
            } else {
                let x = x.ok_or_else(|| CliError::Usage("laguerre needs --x or --gram".into()))?;
                commands::laguerre_value(n, m, x, &ctx)?
            }
        }
        Cmd::Zeta { re, im, m } => commands::zeta(re, im, m, &ctx)?,
        Cmd::Oracle { what } => match what {
            OracleCmd::Zeta { re, im, deriv } => commands::oracle_zeta(re, im, deriv, &ctx)?,
            OracleCmd::Norm { m } => commands::oracle_norm(m, &ctx)?,
            OracleCmd::Integral {
                power,
                logdeg,
                cutoff,
                s_re,
                s_im,
                tail,
            } => {
                let policy: TailPolicy = tail.parse()?;
                let s = ComplexPoint::new(s_re, s_im)?;
                commands::oracle_integral(power, logdeg, cutoff, s, policy, &ctx)?
            }
        },
        Cmd::Fracpart {
            x,
            m,
            terms,
            sum,
            r,
            probe,
            max_terms,
        } => {
            if probe {
                commands::fracpart_probe(max_terms, &ctx)?
            } else {
                let x = x.ok_or_else(|| CliError::Usage("fracpart needs --x or --probe".into()))?;
                commands::fracpart(x, m, terms, sum, r, &ctx)?
            }
        }
        Cmd::Norm { max_m } => commands::norms(max_m, &ctx)?,
        Cmd::Verify { suites, max_n, max_m } => {
            let cfg = RunConfig {
                max_n,
                max_m,
                output_format: cli.format.unwrap_or(Format::Csv),
                suites: if suites.is_empty() {
                    Suite::ALL.into_iter().collect()
                } else {
                    suites.into_iter().collect()
                },
                ..base
            };
            let (items, report) = verify::run_verify(&cfg)?;
            write_output(&report.render(Some(cfg.output_format)), cli.out.as_deref())?;
            let failed = items.iter().filter(|i| !i.passed()).count();
            if failed > 0 {
                return Err(CliError::VerifyFailed {
                    failed,
                    total: items.len(),
                });
            }
            return Ok(());
        }
    };
    write_output(&out.render(cli.format), cli.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("zl: {e}");
            ExitCode::FAILURE
        }
    }
}
