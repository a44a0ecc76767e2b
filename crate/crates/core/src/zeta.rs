//! ζ(s) and its derivatives from the rational series
//!
//! ```text
//!     S_m(s) = Σ_{k≤m} (-s)^k/k! ζ⁽ᵏ⁾(s)
//!            = (s/(s-1))^{m+1} + Σ_n C(n+m,m) ℓₙ⁽ᵐ⁾ ((1-s)/s)ⁿ ,   Re s > 1/2,
//! ```
//!
//! with the Laurent expansion at s = 1 near the pole and the functional
//! equation ζ(s) = χ(s) ζ(1-s) for Re s < 1/2.

use rug::float::Constant;
use rug::{Complex, Float, Integer};

use crate::coefficients::CoefficientTable;
use crate::error::{Error, Result};
use crate::numkernel::gamma::log_gamma_mp;
use crate::numkernel::{
    abs_f64, ln_abs, ln_binomial_f64, ln_gamma_f64, log_add, pow2, ComplexPoint,
    PrecisionContext,
};
use crate::stieltjes::{build_table, StieltjesTable};

/// Below this distance from s = 1 the Laurent expansion replaces the series.
pub const LAURENT_RADIUS: f64 = 1e-6;

/// Outcome of a truncated series evaluation.
#[derive(Debug, Clone)]
pub struct SeriesResult {
    pub value: Complex,
    pub terms_used: usize,
    /// Truncation error estimate (geometric envelope of the last term).
    pub tail_bound: f64,
    /// |(1-s)/s|.
    pub ratio: f64,
    /// Error inherited from the coefficients summed so far.
    pub coeff_error: f64,
}

impl SeriesResult {
    pub fn error_bound(&self) -> f64 {
        self.tail_bound + self.coeff_error
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Path {
    Series,
    Laurent,
    Reflection,
}

impl std::fmt::Display for Path {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Path::Series => "series",
            Path::Laurent => "laurent",
            Path::Reflection => "reflection",
        })
    }
}

/// A value of ζ⁽ᵐ⁾ with the path taken and its error budget.
#[derive(Debug, Clone)]
pub struct ZetaValue {
    pub value: Complex,
    pub terms_used: usize,
    pub tail_bound: f64,
    /// Total error bound: truncation, coefficients and rounding.
    pub bracket: f64,
    pub path: Path,
}

fn series_domain(s: ComplexPoint) -> Result<f64> {
    let ratio = s.series_ratio();
    if !(s.re > 0.5) || !(ratio < 1.0) {
        return Err(Error::Divergence { ratio });
    }
    Ok(ratio)
}

/// Σ_{n≤N} C(n+m,m) ℓₙ⁽ᵐ⁾ wⁿ with w = (1-s)/s, truncated by the geometric
/// envelope rule. At s = 1 this is ℓ₀⁽ᵐ⁾.
pub fn regular_part(
    s: ComplexPoint,
    m: usize,
    table: &CoefficientTable,
    tol: f64,
    ctx: &PrecisionContext,
) -> Result<SeriesResult> {
    regular_part_mp(s, &s.to_complex(ctx.bits() + 64), m, table, tol, ctx)
}

/// `s` carries the f64 view used for estimates, `sc` the exact point.
fn regular_part_mp(
    s: ComplexPoint,
    sc: &Complex,
    m: usize,
    table: &CoefficientTable,
    tol: f64,
    ctx: &PrecisionContext,
) -> Result<SeriesResult> {
    let ratio = series_domain(s)?;
    let row = table.row(m)?;
    let lnb = table.row_ln_brackets(m);
    let prec = ctx.bits() + 16 + (row.len() as f64).log2().ceil() as u32;
    let sc = Complex::with_val(prec, sc);
    let w = Complex::with_val(prec, 1u32 - &sc) / &sc;
    let lnr = ratio.ln();
    let geo = if ratio > 0.0 { (ratio / (1.0 - ratio)).ln() } else { f64::NEG_INFINITY };

    let mut acc = Complex::new(prec);
    let mut pw = Complex::with_val(prec, 1);
    let mut binom = Integer::from(1); // C(n+m, m)
    let mut coeff_err = f64::NEG_INFINITY;
    let mut prev_term = f64::NEG_INFINITY;
    let mut best = f64::INFINITY;
    for (n, l) in row.iter().enumerate() {
        if n > 0 {
            pw *= &w;
            binom *= (n + m) as u32;
            binom /= n as u32;
        }
        let lc = ln_binomial_f64(n + m, m);
        acc += Complex::with_val(prec, &pw * l) * &binom;
        coeff_err = log_add(coeff_err, lc + lnb[n] + n as f64 * lnr);
        if ratio == 0.0 {
            return Ok(finish(acc, n, 0.0, ratio, coeff_err, ctx));
        }
        // |term_n|, guarded against an accidentally small coefficient by the
        // previous term carried one step further
        let term = lc + ln_abs(l) + n as f64 * lnr;
        let env = term.max(prev_term + lnr);
        prev_term = env;
        let grow = (ln_binomial_f64(n + m + 1, m) - lc).max(0.0);
        let tail = (env + geo + grow).exp();
        best = best.min(tail);
        if n > 0 && tail < tol {
            return Ok(finish(acc, n, tail, ratio, coeff_err, ctx));
        }
    }
    Err(Error::GridExhausted {
        terms: row.len(),
        achieved: best,
        requested: tol,
    })
}

fn finish(acc: Complex, n: usize, tail: f64, ratio: f64, coeff_err: f64, ctx: &PrecisionContext) -> SeriesResult {
    let round = ((n + 2) as f64).ln() * 2.0 - (acc.prec().0 as f64) * std::f64::consts::LN_2;
    let out_round = (abs_f64(&acc) * pow2(1 - ctx.bits() as i32)).ln();
    SeriesResult {
        value: Complex::with_val(ctx.bits(), acc),
        terms_used: n + 1,
        tail_bound: tail,
        ratio,
        coeff_error: [coeff_err, round, out_round].into_iter().fold(f64::NEG_INFINITY, log_add).exp(),
    }
}

/// S_m(s) by the rational series; N grows until the envelope bound on the
/// remainder is below `tol`.
pub fn s_m(
    s: ComplexPoint,
    m: usize,
    table: &CoefficientTable,
    tol: f64,
    ctx: &PrecisionContext,
) -> Result<SeriesResult> {
    s_m_mp(s, &s.to_complex(ctx.bits() + 64), m, table, tol, ctx)
}

fn s_m_mp(
    s: ComplexPoint,
    sc: &Complex,
    m: usize,
    table: &CoefficientTable,
    tol: f64,
    ctx: &PrecisionContext,
) -> Result<SeriesResult> {
    series_domain(s)?;
    if s.re == 1.0 && s.im == 0.0 {
        return Err(Error::Pole { at: "s = 1".into() });
    }
    let mut r = regular_part_mp(s, sc, m, table, tol, ctx)?;
    let prec = r.value.prec().0 + 16;
    let sc = Complex::with_val(prec, sc);
    let q = Complex::with_val(prec, &sc / Complex::with_val(prec, &sc - 1u32));
    let mut p = Complex::with_val(prec, 1);
    for _ in 0..=m {
        p *= &q;
    }
    r.coeff_error += abs_f64(&p) * pow2(-(ctx.bits() as i32));
    r.value = Complex::with_val(ctx.bits(), &r.value + &p);
    Ok(r)
}

/// ζ⁽ᵐ⁾(s) = m! (S_m(s) - S_{m-1}(s)) / (-s)^m on the series domain, or from
/// the Laurent expansion when |s - 1| < LAURENT_RADIUS.
pub fn zeta_derivative(
    s: ComplexPoint,
    m: usize,
    table: &CoefficientTable,
    tol: f64,
    ctx: &PrecisionContext,
) -> Result<ZetaValue> {
    zeta_derivative_mp(s, &s.to_complex(ctx.bits() + 64), m, table, tol, ctx)
}

fn zeta_derivative_mp(
    s: ComplexPoint,
    sc: &Complex,
    m: usize,
    table: &CoefficientTable,
    tol: f64,
    ctx: &PrecisionContext,
) -> Result<ZetaValue> {
    series_domain(s)?;
    if (s.re - 1.0).hypot(s.im) < LAURENT_RADIUS {
        return laurent_derivative(s, m, table.source(), ctx);
    }
    let a = s_m_mp(s, sc, m, table, tol, ctx)?;
    let prec = ctx.bits() + 16;
    let mut diff = Complex::with_val(prec, &a.value);
    let mut tail = a.tail_bound;
    let mut err = a.coeff_error;
    let mut terms = a.terms_used;
    if m > 0 {
        let b = s_m_mp(s, sc, m - 1, table, tol, ctx)?;
        diff -= &b.value;
        tail += b.tail_bound;
        err += b.coeff_error;
        terms = terms.max(b.terms_used);
    }
    let neg_s = Complex::with_val(prec, -sc);
    let mut den = Complex::with_val(prec, 1);
    for _ in 0..m {
        den *= &neg_s;
    }
    let mut fact = Integer::from(1);
    for k in 2..=m {
        fact *= k as u32;
    }
    let value = diff * &fact / den;
    let amp = (ln_gamma_f64(m as f64 + 1.0) - m as f64 * s.abs().ln()).exp();
    let bracket = amp * (tail + err) + abs_f64(&value) * pow2(1 - ctx.bits() as i32);
    Ok(ZetaValue {
        value: Complex::with_val(ctx.bits(), value),
        terms_used: terms,
        tail_bound: amp * tail,
        bracket,
        path: Path::Series,
    })
}

/// ζ⁽ᵐ⁾(s) = (-1)^m m!/(s-1)^{m+1} + Σ_{n≥m} (-1)ⁿ γₙ/(n-m)! (s-1)^{n-m}.
pub fn laurent_derivative(
    s: ComplexPoint,
    m: usize,
    table: &StieltjesTable,
    ctx: &PrecisionContext,
) -> Result<ZetaValue> {
    let delta_abs = (s.re - 1.0).hypot(s.im);
    if delta_abs == 0.0 {
        return Err(Error::Pole { at: "s = 1".into() });
    }
    let prec = ctx.bits() + 32 + ((m + 1) as f64 * (1.0 / delta_abs).log2()).ceil() as u32;
    let sc = s.to_complex(prec);
    let delta = Complex::with_val(prec, &sc - 1u32);
    let mut fact = Integer::from(1);
    for k in 2..=m {
        fact *= k as u32;
    }
    let mut pole = Complex::with_val(prec, delta.recip_ref());
    let inv = pole.clone();
    for _ in 0..m {
        pole *= &inv;
    }
    let mut acc = pole * &fact;
    if m % 2 == 1 {
        acc = -acc;
    }
    let target = (ctx.tolerance() / 4.0).ln();
    let ln_d = delta_abs.ln();
    let mut pw = Complex::with_val(prec, 1);
    let mut used = 0;
    let mut err = f64::NEG_INFINITY;
    let mut n = m;
    loop {
        if n > table.max_index() {
            return Err(Error::TableTooShort {
                needed: n,
                available: table.len(),
            });
        }
        let g = table.gamma(n)?;
        let mut t = Complex::with_val(prec, &pw * g) / Integer::from(Integer::factorial((n - m) as u32));
        if n % 2 == 1 {
            t = -t;
        }
        acc += t;
        err = log_add(
            err,
            table.bracket(n).ln() - ln_gamma_f64((n - m) as f64 + 1.0) + (n - m) as f64 * ln_d,
        );
        used += 1;
        pw *= &delta;
        n += 1;
        // |γ_n| ≤ 4 (n-1)!/π^n; the remaining terms shrink by |δ| n/π < 1/2
        let next = 4f64.ln() + ln_gamma_f64(n as f64) - n as f64 * std::f64::consts::PI.ln()
            - ln_gamma_f64((n - m) as f64 + 1.0)
            + (n - m) as f64 * ln_d;
        if next + std::f64::consts::LN_2 < target && delta_abs * n as f64 / std::f64::consts::PI < 0.5 {
            let tail = (next + std::f64::consts::LN_2).exp();
            let bracket = tail + err.exp() + abs_f64(&acc) * pow2(1 - ctx.bits() as i32);
            return Ok(ZetaValue {
                value: Complex::with_val(ctx.bits(), acc),
                terms_used: used,
                tail_bound: tail,
                bracket,
                path: Path::Laurent,
            });
        }
    }
}

/// χ(s) = π^{s-1/2} Γ((1-s)/2) / Γ(s/2).
pub fn chi(s: ComplexPoint, ctx: &PrecisionContext) -> Result<Complex> {
    chi_mp(&s.to_complex(ctx.bits() + 32), ctx)
}

fn chi_mp(sc: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.bits() + 32;
    let is_int = sc.imag().is_zero() && sc.real().is_integer();
    if is_int {
        let v = sc.real().to_f64();
        if (v <= 0.0 && v % 2.0 == 0.0) || (v >= 1.0 && v % 2.0 == 1.0) {
            return Err(Error::Pole {
                at: format!("chi({v})"),
            });
        }
    }
    let inner = ctx.elevated(32);
    let a = Complex::with_val(prec, 1u32 - sc) / 2u32;
    let b = Complex::with_val(prec, sc / 2u32);
    let la = log_gamma_mp(&a, &inner)?;
    let lb = log_gamma_mp(&b, &inner)?;
    let half = Float::with_val(prec, 0.5);
    let lpi = Float::with_val(prec, Constant::Pi).ln();
    let e = Complex::with_val(prec, sc - &half) * lpi + la - lb;
    Ok(Complex::with_val(ctx.bits(), e.exp()))
}

/// ζ(s) for Re s < 1/2 as χ(s) ζ(1-s), the latter from the series.
pub fn zeta_reflected(
    s: ComplexPoint,
    table: &CoefficientTable,
    tol: f64,
    ctx: &PrecisionContext,
) -> Result<ZetaValue> {
    if !(s.re < 0.5) {
        return Err(Error::Domain(format!("reflection requires Re s < 1/2, got {s}")));
    }
    if s.im == 0.0 && s.re.fract() == 0.0 {
        if s.re == 0.0 {
            return Ok(exact_value(-0.5, ctx));
        }
        if (s.re as i64) % 2 == 0 {
            return Ok(exact_value(0.0, ctx));
        }
    }
    let sc = s.to_complex(ctx.bits() + 64);
    let x = chi_mp(&sc, ctx)?;
    let ax = abs_f64(&x);
    let t = ComplexPoint::new(1.0 - s.re, -s.im)?;
    let tc = Complex::with_val(ctx.bits() + 64, 1u32 - &sc);
    let z = zeta_derivative_mp(t, &tc, 0, table, tol / ax.max(1.0), ctx)?;
    let value = Complex::with_val(ctx.bits(), &x * &z.value);
    let bracket = ax * z.bracket * (1.0 + 4.0 * ctx.epsilon()) + abs_f64(&value) * 4.0 * ctx.epsilon();
    Ok(ZetaValue {
        value,
        terms_used: z.terms_used,
        tail_bound: ax * z.tail_bound,
        bracket,
        path: Path::Reflection,
    })
}

fn exact_value(v: f64, ctx: &PrecisionContext) -> ZetaValue {
    ZetaValue {
        value: Complex::with_val(ctx.bits(), (v, 0)),
        terms_used: 0,
        tail_bound: 0.0,
        bracket: 0.0,
        path: Path::Reflection,
    }
}

/// ‖{·}‖₍ₘ₎ (|s|/√(2σ-1))^{m+1}, an a priori bound on the whole series part.
pub fn cauchy_schwarz_bound(s: ComplexPoint, m: usize, norm: f64) -> f64 {
    norm * (s.abs() / (2.0 * s.re - 1.0).sqrt()).powi(m as i32 + 1)
}

/// Depth N after which Σ_{n>N} √C(n+m,m) rⁿ ≤ tol. Since
/// |ℓₙ⁽ᵐ⁾| √C(n+m,m) ≤ ‖{·}‖₍ₘ₎ ≤ 1, this N always suffices.
pub fn plan_depth(s: ComplexPoint, m: usize, tol: f64) -> Result<usize> {
    let r = series_domain(s)?;
    if r == 0.0 {
        return Ok(1);
    }
    let lnr = r.ln();
    let target = tol.ln();
    let mut n = 1usize;
    loop {
        let t = 0.5 * ln_binomial_f64(n + 1 + m, m) + (n + 1) as f64 * lnr;
        // ratio of consecutive terms from n+1 on, decreasing in n
        let q = 0.5 * (((n + 2 + m) as f64) / ((n + 2) as f64)).ln() + lnr;
        if q < 0.0 && t - (-q.exp()).ln_1p() <= target {
            return Ok(n);
        }
        n += if n < 1024 { 1 } else { n / 64 };
        if n > 50_000_000 {
            return Err(Error::Divergence { ratio: r });
        }
    }
}

/// ζ⁽ᵐ⁾(s) anywhere off the critical line and the poles: series for
/// Re s > 1/2 (Laurent near s = 1), reflection for Re s < 1/2 (m = 0 only).
pub fn evaluate(s: ComplexPoint, m: usize, tol: f64, ctx: &PrecisionContext) -> Result<ZetaValue> {
    if s.re < 0.5 {
        if m > 0 {
            return Err(Error::Domain(
                "derivatives are only available on Re s > 1/2".into(),
            ));
        }
        let t = ComplexPoint::new(1.0 - s.re, -s.im)?;
        let x = if s.im == 0.0 && s.re.fract() == 0.0 {
            1.0
        } else {
            abs_f64(&chi(s, ctx)?)
        };
        let table = table_for(t, 0, tol / x.max(1.0), ctx)?;
        return zeta_reflected(s, &table, tol, ctx);
    }
    let r = series_domain(s)?;
    if (s.re - 1.0).hypot(s.im) < LAURENT_RADIUS {
        let st = build_table(m + 24, &ctx.with_tolerance(tol / 16.0))?;
        return laurent_derivative(s, m, &st, &ctx.with_tolerance(tol));
    }
    let _ = r;
    let table = table_for(s, m, tol, ctx)?;
    let z = zeta_derivative(s, m, &table, tol_for_series(s, m, tol), ctx)?;
    Ok(z)
}

/// Series tolerance so the extracted derivative lands within `tol`.
fn tol_for_series(s: ComplexPoint, m: usize, tol: f64) -> f64 {
    let amp = (ln_gamma_f64(m as f64 + 1.0) - m as f64 * s.abs().ln()).exp();
    tol / (4.0 * amp.max(1.0))
}

/// A coefficient grid deep and accurate enough for ζ⁽ᵐ⁾ at s within `tol`.
pub fn table_for(s: ComplexPoint, m: usize, tol: f64, ctx: &PrecisionContext) -> Result<CoefficientTable> {
    let r = series_domain(s)?;
    let series_tol = tol_for_series(s, m, tol);
    let depth = plan_depth(s, m, series_tol / 2.0)?;
    // coefficient errors are summed with weights C(n+m,m) rⁿ
    let weight: f64 = ln_weight_sum(m, r, depth).exp();
    let grid_tol = (series_tol / (4.0 * weight)).max(pow2(16 - ctx.bits() as i32));
    CoefficientTable::plan(m, depth, &ctx.with_tolerance(grid_tol))
}

fn ln_weight_sum(m: usize, r: f64, depth: usize) -> f64 {
    // Σ_n C(n+m,m) rⁿ ≤ (1-r)^{-m-1}
    let full = -((m + 1) as f64) * (1.0 - r).ln();
    full.min(((depth + 1) as f64).ln() + ln_binomial_f64(depth + m, m))
}
