use std::collections::BTreeSet;

use zl_core::PrecisionContext;

use crate::error::CliError;
use crate::output::Format;

pub const DEFAULT_PREC: u32 = 192;
pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_N: usize = 64;
pub const DEFAULT_MAX_M: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    Parseval,
    Orthogonality,
    Egf,
    Norms,
    Reflection,
    DualStieltjes,
    SeriesVsOracle,
    Fracpart,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Parseval,
        Suite::Orthogonality,
        Suite::Egf,
        Suite::Norms,
        Suite::Reflection,
        Suite::DualStieltjes,
        Suite::SeriesVsOracle,
        Suite::Fracpart,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Parseval => "parseval",
            Suite::Orthogonality => "orthogonality",
            Suite::Egf => "egf",
            Suite::Norms => "norms",
            Suite::Reflection => "reflection",
            Suite::DualStieltjes => "dual_stieltjes",
            Suite::SeriesVsOracle => "series_vs_oracle",
            Suite::Fracpart => "fracpart",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub tolerance: f64,
    pub max_n: usize,
    pub max_m: usize,
    pub output_format: Format,
    pub suites: BTreeSet<Suite>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            precision_bits: DEFAULT_PREC,
            tolerance: DEFAULT_TOL,
            max_n: DEFAULT_MAX_N,
            max_m: DEFAULT_MAX_M,
            output_format: Format::Csv,
            suites: Suite::ALL.into_iter().collect(),
        }
    }
}

impl RunConfig {
    /// Rejects precision/tolerance pairs the arithmetic cannot honour.
    pub fn context(&self) -> Result<PrecisionContext, CliError> {
        Ok(PrecisionContext::new(self.precision_bits, self.tolerance)?)
    }
}
