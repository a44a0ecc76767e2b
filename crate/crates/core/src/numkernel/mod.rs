//! Arithmetic substrate shared by every other module.
//!
//! All multiprecision work runs on MPFR floats (through `rug`) at the
//! precision carried by a [`PrecisionContext`]. Exact combinatorial data
//! (factorials, binomials, Bernoulli numbers) lives in [`combinatorics`].

pub mod combinatorics;
pub mod gamma;

use rug::{Complex, Float};

use crate::error::{Error, Result};

pub use combinatorics::{bernoulli, bernoulli_table, CombinatoricsCache};
pub use gamma::log_gamma;

/// Working-precision configuration for one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionContext {
    precision_bits: u32,
    default_tolerance: f64,
}

impl PrecisionContext {
    pub const MIN_BITS: u32 = 64;

    pub fn new(precision_bits: u32, tolerance: f64) -> Result<Self> {
        if precision_bits < Self::MIN_BITS {
            return Err(Error::PrecisionTooLow {
                bits: precision_bits,
            });
        }
        if !(tolerance > 0.0) || !tolerance.is_finite() {
            return Err(Error::InvalidTolerance { tol: tolerance });
        }
        let floor = tolerance_floor(precision_bits);
        if tolerance < floor {
            return Err(Error::ToleranceTooFine {
                tol: tolerance,
                bits: precision_bits,
                floor,
            });
        }
        Ok(Self {
            precision_bits,
            default_tolerance: tolerance,
        })
    }

    pub fn bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn tolerance(&self) -> f64 {
        self.default_tolerance
    }

    /// Same tolerance, `extra` more mantissa bits. Used for internal
    /// elevation around cancellation-prone sums.
    pub fn elevated(&self, extra: u32) -> Self {
        Self {
            precision_bits: self.precision_bits + extra,
            default_tolerance: self.default_tolerance,
        }
    }

    /// Same precision, different target tolerance (clamped to the floor).
    pub fn with_tolerance(&self, tol: f64) -> Self {
        Self {
            precision_bits: self.precision_bits,
            default_tolerance: tol.max(tolerance_floor(self.precision_bits)),
        }
    }

    /// Significant decimal digits carried by the mantissa.
    pub fn digits(&self) -> usize {
        (f64::from(self.precision_bits) * std::f64::consts::LOG10_2).ceil() as usize
    }

    /// Unit roundoff 2^(1-bits) as an f64 (flushes to 0 for very long mantissas).
    pub fn epsilon(&self) -> f64 {
        pow2(1 - self.precision_bits as i32)
    }

    pub fn zero(&self) -> Float {
        Float::new(self.precision_bits)
    }

    pub fn real<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.precision_bits, v)
    }

    pub fn complex<T>(&self, v: T) -> Complex
    where
        Complex: rug::Assign<T>,
    {
        Complex::with_val(self.precision_bits, v)
    }
}

/// Validating constructor mirroring [`PrecisionContext::new`].
pub fn make_context(precision_bits: u32, tolerance: f64) -> Result<PrecisionContext> {
    PrecisionContext::new(precision_bits, tolerance)
}

fn tolerance_floor(bits: u32) -> f64 {
    pow2(8 - bits as i32)
}

pub(crate) fn pow2(e: i32) -> f64 {
    if e < -1074 {
        0.0
    } else {
        2f64.powi(e)
    }
}

/// A value together with an absolute error bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Bracketed<T> {
    pub value: T,
    pub bracket: f64,
}

impl<T> Bracketed<T> {
    pub fn new(value: T, bracket: f64) -> Self {
        Self { value, bracket }
    }
}

/// A complex argument s = σ + i t with finite components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    pub re: f64,
    pub im: f64,
}

impl ComplexPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::NonFinite { re, im });
        }
        Ok(Self { re, im })
    }

    pub fn real(re: f64) -> Result<Self> {
        Self::new(re, 0.0)
    }

    pub fn sigma(&self) -> f64 {
        self.re
    }

    pub fn t(&self) -> f64 {
        self.im
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn to_complex(&self, bits: u32) -> Complex {
        Complex::with_val(bits, (self.re, self.im))
    }

    /// |(1 - s)/s|, the contraction ratio of the rational series.
    pub fn series_ratio(&self) -> f64 {
        let num = (1.0 - self.re).hypot(self.im);
        num / self.abs()
    }

    pub fn is_nonpositive_integer(&self) -> bool {
        self.im == 0.0 && self.re <= 0.0 && self.re.fract() == 0.0
    }
}

impl std::fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.im < 0.0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Natural log of |x| for an MPFR float, safe far outside the f64 exponent
/// range. Returns -inf for zero.
pub fn ln_abs(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (mantissa, exp) = x.to_f64_exp();
    mantissa.abs().ln() + f64::from(exp) * std::f64::consts::LN_2
}

pub fn ln_abs_complex(z: &Complex) -> f64 {
    let a = ln_abs(z.real());
    let b = ln_abs(z.imag());
    let hi = a.max(b);
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + 0.5 * (1.0 + (2.0 * (a.min(b) - hi)).exp()).ln()
}

/// |z| as f64 (may be 0 or inf outside the f64 range).
pub fn abs_f64(z: &Complex) -> f64 {
    ln_abs_complex(z).exp()
}

/// ln Γ(x) for real x > 0 in double precision. Planning heuristics only.
pub fn ln_gamma_f64(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut shift = 0.0;
    let mut y = x;
    while y < 12.0 {
        shift += y.ln();
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    (y - 0.5) * y.ln() - y + 0.5 * (2.0 * std::f64::consts::PI).ln() + series - shift
}

/// ln C(n, k) in double precision.
pub fn ln_binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_gamma_f64(n as f64 + 1.0) - ln_gamma_f64(k as f64 + 1.0) - ln_gamma_f64((n - k) as f64 + 1.0)
}

/// ln sup_x |B̃_n(x)| for the periodic Bernoulli function B̃_n.
pub fn ln_sup_bernoulli(n: usize) -> f64 {
    if n <= 1 {
        return 0.5f64.ln();
    }
    // |B̃_n| ≤ 2 n! ζ(n) / (2π)^n ≤ 2 n! ζ(2) / (2π)^n
    let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
    (2.0 * zeta2).ln() + ln_gamma_f64(n as f64 + 1.0)
        - n as f64 * (2.0 * std::f64::consts::PI).ln()
}

/// ln ∫_X^∞ x^{-σ} log^l x dx for σ > 1, given ln X.
pub fn ln_power_integral(sigma: f64, l: usize, lnx: f64) -> f64 {
    // X^{1-σ} Σ_j l!/(l-j)! log^{l-j} X / (σ-1)^{j+1}
    let s1 = sigma - 1.0;
    let mut acc = f64::NEG_INFINITY;
    for j in 0..=l {
        let t = ln_gamma_f64(l as f64 + 1.0) - ln_gamma_f64((l - j) as f64 + 1.0)
            + if l > j { (l - j) as f64 * lnx.ln() } else { 0.0 }
            - (j as f64 + 1.0) * s1.ln();
        acc = log_add(acc, t);
    }
    acc + (1.0 - sigma) * lnx
}

/// ln(e^a + e^b).
pub fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let hi = a.max(b);
    hi + (1.0 + (a.min(b) - hi).exp()).ln()
}

/// Decimal rendering with a fixed count of significant digits.
pub fn format_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits.max(2)))
}

pub fn format_f64(x: f64) -> String {
    format!("{x:.6e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_examples() {
        assert!(make_context(128, 1e-20).is_ok());
        assert!(matches!(
            make_context(32, 1e-6),
            Err(Error::PrecisionTooLow { bits: 32 })
        ));
        assert!(make_context(256, 1e-60).is_ok());
    }

    #[test]
    fn tolerance_cannot_outrun_mantissa() {
        assert!(matches!(
            make_context(64, 1e-40),
            Err(Error::ToleranceTooFine { .. })
        ));
        assert!(make_context(64, 1e-15).is_ok());
        assert!(make_context(128, 0.0).is_err());
        assert!(make_context(128, f64::NAN).is_err());
    }

    #[test]
    fn complex_point_rejects_non_finite() {
        assert!(ComplexPoint::new(f64::INFINITY, 0.0).is_err());
        assert!(ComplexPoint::new(0.5, f64::NAN).is_err());
        let s = ComplexPoint::new(2.0, 0.0).unwrap();
        assert!((s.series_ratio() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ln_abs_handles_huge_exponents() {
        let x = Float::with_val(64, Float::u_pow_u(10, 2000));
        assert!((ln_abs(&x) - 2000.0 * 10f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn f64_lgamma_matches_factorials() {
        assert!((ln_gamma_f64(5.0) - 24f64.ln()).abs() < 1e-12);
        assert!((ln_gamma_f64(0.5) - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-12);
        assert!((ln_binomial_f64(10, 3) - 120f64.ln()).abs() < 1e-11);
    }
}
