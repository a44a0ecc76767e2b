//! Riemann ζ and its derivatives from a rational series in (1-s)/s whose
//! coefficients come from the Stieltjes constants, the Laguerre expansion of
//! the fractional part, and brute-force oracles to check both.

pub mod coefficients;
pub mod error;
pub mod fracexpand;
pub mod laguerre;
pub mod numkernel;
pub mod oracle;
pub mod stieltjes;
pub mod zeta;

pub use coefficients::{CoefficientTable, TailModel};
pub use error::{Error, Result};
pub use fracexpand::{ExpansionState, Summation};
pub use laguerre::{HilbertSpaceTag, LaguerreParams};
pub use numkernel::{make_context, Bracketed, ComplexPoint, PrecisionContext};
pub use oracle::{FracIntegralSpec, TailPolicy};
pub use stieltjes::StieltjesTable;
pub use zeta::{Path, SeriesResult, ZetaValue};
