//! Stieltjes constants γ_n, the Laurent coefficients of ζ at s = 1:
//!
//! ```text
//!     ζ(s) = 1/(s-1) + Σ_n (-1)^n γ_n (s-1)^n / n!
//! ```
//!
//! Two independent routes are provided. Euler-Maclaurin summation of
//! log^n x / x (single index, or all indices at once through the power
//! series of ζ(1+z) - 1/z), and the fractional-part integral
//!
//! ```text
//!     γ_n = ∫₁^∞ {x} (n log^{n-1} x - log^n x) / x² dx ,   n ≥ 1.
//! ```

use rug::ops::Pow;
use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::numkernel::{
    bernoulli_table, ln_abs, ln_gamma_f64, ln_power_integral, log_add, Bracketed,
    PrecisionContext,
};
use crate::oracle::fracint::{FracIntegrand, FracIntegrator, TailPolicy};

/// Largest index accepted by [`stieltjes_em`].
pub const EM_MAX_INDEX: usize = 256;
/// Largest index accepted by [`build_table`] and [`stieltjes_em_batch`].
pub const TABLE_MAX_INDEX: usize = 4096;
/// Indices 1..=INTEGRAL_REACH are cross-checked by [`build_table`].
pub const INTEGRAL_REACH: usize = 16;
/// Cutoff used for the integral side of the certification.
pub const CERT_CUTOFF: u64 = 4096;

const LN2: f64 = std::f64::consts::LN_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    EulerMaclaurin,
    FracpartIntegral,
    CrossCertified,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::EulerMaclaurin => "euler_maclaurin",
            Method::FracpartIntegral => "fracpart_integral",
            Method::CrossCertified => "cross_certified",
        })
    }
}

/// γ_0..γ_N with absolute error brackets.
///
/// Alongside γ_n the table keeps γ_n/n! and the natural log of its bracket;
/// for large n those are far below the f64 range and are what the
/// coefficient grid consumes.
#[derive(Debug, Clone)]
pub struct StieltjesTable {
    values: Vec<Float>,
    brackets: Vec<f64>,
    scaled: Vec<Float>,
    scaled_ln_brackets: Vec<f64>,
    method: Method,
    certified_through: Option<usize>,
}

impl StieltjesTable {
    /// Assembles a table from γ_n values and absolute brackets.
    pub fn from_values(values: Vec<Float>, brackets: Vec<f64>, method: Method) -> Self {
        assert_eq!(values.len(), brackets.len());
        let mut scaled = Vec::with_capacity(values.len());
        let mut lnb = Vec::with_capacity(values.len());
        let mut fact = Integer::from(1);
        for (n, (v, b)) in values.iter().zip(&brackets).enumerate() {
            if n > 0 {
                fact *= n as u32;
            }
            scaled.push(Float::with_val(v.prec(), v / &fact));
            lnb.push(b.ln() - ln_gamma_f64(n as f64 + 1.0));
        }
        Self {
            values,
            brackets,
            scaled,
            scaled_ln_brackets: lnb,
            method,
            certified_through: None,
        }
    }

    /// Highest index N (the table holds N + 1 entries).
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn gamma(&self, n: usize) -> Result<&Float> {
        self.values.get(n).ok_or(Error::TableTooShort {
            needed: n,
            available: self.values.len(),
        })
    }

    pub fn bracket(&self, n: usize) -> f64 {
        self.brackets[n]
    }

    pub fn values(&self) -> &[Float] {
        &self.values
    }

    pub fn brackets(&self) -> &[f64] {
        &self.brackets
    }

    /// γ_n / n!.
    pub fn scaled(&self, n: usize) -> Result<&Float> {
        self.scaled.get(n).ok_or(Error::TableTooShort {
            needed: n,
            available: self.scaled.len(),
        })
    }

    /// ln of the absolute bracket on γ_n / n!.
    pub fn scaled_ln_bracket(&self, n: usize) -> f64 {
        self.scaled_ln_brackets[n]
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Indices 1..=n were confirmed by the integral method.
    pub fn certified_through(&self) -> Option<usize> {
        self.certified_through
    }

    /// Precision of the stored values.
    pub fn precision(&self) -> u32 {
        self.values.first().map_or(64, |v| v.prec())
    }

    /// Requires the table to reach index `n`.
    pub fn require(&self, n: usize) -> Result<()> {
        if n < self.values.len() {
            Ok(())
        } else {
            Err(Error::TableTooShort {
                needed: n,
                available: self.values.len(),
            })
        }
    }
}

/// γ_n by Euler-Maclaurin summation of f(x) = log^n x / x:
///
/// ```text
///     γ_n = Σ_{k<X} f(k) - log^{n+1} X/(n+1) + f(X)/2
///           - Σ_{j≤J} B_{2j}/(2j)! f^{(2j-1)}(X) + R_J
/// ```
///
/// with |R_J| ≤ 2ζ(2J)/(2π)^{2J} ∫_X^∞ |f^{(2J)}|. X doubles and J grows
/// until the bracket is within the context tolerance.
pub fn stieltjes_em(n: usize, ctx: &PrecisionContext) -> Result<Bracketed<Float>> {
    if n > EM_MAX_INDEX {
        return Err(Error::OutOfRange {
            index: n,
            reason: format!("single-index Euler-Maclaurin limited to n <= {EM_MAX_INDEX}"),
        });
    }
    let tol = ctx.tolerance();
    let ln_target = (tol / 4.0).ln();
    let mut best = f64::INFINITY;
    let mut x: u64 = 16;
    while x <= 1 << 16 {
        let lnx = (x as f64).ln();
        let j_cap = ((std::f64::consts::PI * x as f64) as usize).clamp(2, 400);
        // c[i] : f^{(q)}(x) = x^{-1-q} Σ_i c[i] log^{n-i} x
        let mut c = vec![Integer::from(1)];
        let mut chosen = None;
        for q in 0..2 * j_cap {
            c = derivative_step(&c, n, q);
            if (q + 1) % 2 == 0 {
                let j = q.div_ceil(2);
                let ln_b = em_single_remainder_ln(&c, n, q + 1, lnx);
                best = best.min(ln_b.exp());
                if ln_b < ln_target {
                    chosen = Some(j);
                    break;
                }
            }
        }
        if let Some(j) = chosen {
            return em_single_evaluate(n, x, j, ctx);
        }
        x *= 2;
    }
    Err(Error::PrecisionInsufficient {
        what: format!("Euler-Maclaurin for gamma_{n}"),
        achieved: best,
        target: tol,
    })
}

/// One differentiation of x^{-1-q} Σ_i c_i log^{n-i} x.
fn derivative_step(c: &[Integer], n: usize, q: usize) -> Vec<Integer> {
    let len = (c.len() + 1).min(n + 1);
    let mut out = vec![Integer::new(); len];
    for (i, ci) in c.iter().enumerate() {
        out[i] -= Integer::from(ci * (q as u64 + 1));
        if i < n {
            out[i + 1] += Integer::from(ci * (n - i) as u64);
        }
    }
    out
}

/// ln of 2ζ(2J)/(2π)^{2J} ∫_X^∞ |f^{(2J)}|, given the coefficients of f^{(2J)}.
fn em_single_remainder_ln(c: &[Integer], n: usize, order: usize, lnx: f64) -> f64 {
    let mut acc = f64::NEG_INFINITY;
    for (i, ci) in c.iter().enumerate() {
        if *ci == 0 {
            continue;
        }
        let lc = ln_abs(&Float::with_val(64, ci));
        acc = log_add(acc, lc + ln_power_integral(1.0 + order as f64, n - i, lnx));
    }
    let zeta = std::f64::consts::PI.powi(2) / 6.0;
    (2.0 * zeta).ln() - order as f64 * (2.0 * std::f64::consts::PI).ln() + acc
}

fn em_single_evaluate(n: usize, x: u64, j: usize, ctx: &PrecisionContext) -> Result<Bracketed<Float>> {
    let lnx = (x as f64).ln();
    // partial sum and log^{n+1} X/(n+1) are ~ log^{n+1} X; γ_n may be much smaller
    let mag_bits = (n as f64 + 1.0) * (lnx + 1.0).log2() + (x as f64).log2();
    let w = ctx.bits() + 2 * n as u32 + 32 + mag_bits.ceil() as u32;

    let mut sum = Float::new(w);
    for k in 2..x {
        let l = Float::with_val(w, k).ln();
        let mut t = l.pow(n as u32);
        t /= k;
        sum += t;
    }
    if n == 0 {
        sum += 1u32;
    }
    let lx = Float::with_val(w, x).ln();
    let lpow = Float::with_val(w, (&lx).pow(n as u32));
    let mut total = sum;
    total -= Float::with_val(w, &lpow * &lx) / (n as u32 + 1);
    total += Float::with_val(w, &lpow / x) / 2u32;

    let bern = bernoulli_table(j + 1);
    let xinv = Float::with_val(w, x).recip();
    let mut c = vec![Integer::from(1)];
    let mut fact = Integer::from(1);
    let mut xp = Float::with_val(w, &xinv);
    for q in 0..2 * j {
        c = derivative_step(&c, n, q);
        xp *= &xinv;
        fact *= (q + 1) as u32;
        if q % 2 == 0 {
            // c now describes f^{(q+1)}, q + 1 = 2i - 1
            let i = (q + 2) / 2;
            // Σ_i c_i log^{n-i} X; the list may stop short of log^0
            let mut val = Float::new(w);
            for ci in &c {
                val *= &lx;
                val += ci;
            }
            let shift = n + 1 - c.len();
            if shift > 0 {
                val *= Float::with_val(w, (&lx).pow(shift as u32));
            }
            let fd = val * &xp;
            let bf = Float::with_val(w, &bern[i]) / Float::with_val(w, Integer::from(&fact * (q as u32 + 2)));
            total -= fd * bf;
        }
    }
    let ln_rem = em_single_remainder_ln(&c, n, 2 * j, lnx);
    let rounding = (mag_bits + (x as f64).log2() + 4.0 - w as f64) * LN2;
    let value = Float::with_val(ctx.bits(), &total);
    let out_round = ln_abs(&value) - ctx.bits() as f64 * LN2;
    let bracket = log_add(log_add(ln_rem, rounding), out_round).exp();
    Ok(Bracketed::new(value, bracket))
}

/// γ_n from the fractional-part integral on [1, X] (exact) plus a tail.
///
/// `cutoff` must be an integer ≥ 10.
pub fn stieltjes_integral(
    n: usize,
    ctx: &PrecisionContext,
    cutoff: f64,
    policy: TailPolicy,
) -> Result<Bracketed<Float>> {
    if n == 0 {
        return Err(Error::Domain(
            "the integral representation covers n >= 1; gamma_0 comes from ell_0".into(),
        ));
    }
    let x = validate_cutoff(cutoff)?;
    let mut v = stieltjes_integral_range(n, n, ctx, x, policy)?;
    Ok(v.pop().unwrap())
}

/// γ_lo..=γ_hi by the integral method, sharing one moment pass.
pub fn stieltjes_integral_range(
    lo: usize,
    hi: usize,
    ctx: &PrecisionContext,
    cutoff: u64,
    policy: TailPolicy,
) -> Result<Vec<Bracketed<Float>>> {
    if lo == 0 || hi < lo {
        return Err(Error::Domain("integral range must satisfy 1 <= lo <= hi".into()));
    }
    let e = ctx.complex(2);
    let fi = FracIntegrator::new(&e, 1, hi, cutoff, policy, ctx)?;
    let mut out = Vec::with_capacity(hi - lo + 1);
    for n in lo..=hi {
        let mut f = FracIntegrand::new(e.clone());
        f.add_term(1, n - 1, n as u32);
        f.add_term(1, n, -1);
        let r = fi.integrate(&f)?;
        out.push(Bracketed::new(r.value.real().clone(), r.bracket));
    }
    Ok(out)
}

pub(crate) fn validate_cutoff(cutoff: f64) -> Result<u64> {
    if !cutoff.is_finite() || cutoff.fract() != 0.0 || !(10.0..=1e12).contains(&cutoff) {
        return Err(Error::BadCutoff(cutoff.to_string()));
    }
    Ok(cutoff as u64)
}

/// Accuracy request for [`stieltjes_em_batch`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchTarget {
    /// Absolute error allowed on every γ_k (0 disables).
    pub abs_tol: f64,
    /// Relative accuracy, in bits, wanted on γ_k/k! (0 disables).
    pub rel_bits: u32,
}

impl BatchTarget {
    pub fn absolute(tol: f64) -> Self {
        Self {
            abs_tol: tol,
            rel_bits: 0,
        }
    }

    pub fn relative(bits: u32) -> Self {
        Self {
            abs_tol: 0.0,
            rel_bits: bits,
        }
    }

    /// ln of the admissible error on a_k = (-1)^k γ_k/k!, given |a_k| (ln).
    fn ln_req(&self, k: usize, ln_a: f64) -> f64 {
        let abs = if self.abs_tol > 0.0 {
            self.abs_tol.ln() - ln_gamma_f64(k as f64 + 1.0)
        } else {
            f64::NEG_INFINITY
        };
        let rel = if self.rel_bits > 0 {
            ln_a - self.rel_bits as f64 * LN2
        } else {
            f64::NEG_INFINITY
        };
        abs.max(rel)
    }
}

/// Rough trend of ln|γ_k/k!| used only to plan the batch parameters.
pub(crate) fn trend_ln_scaled(k: usize) -> f64 {
    if k < 3 {
        0.0
    } else {
        let k = k as f64;
        -0.69 * k * k.ln()
    }
}

/// ln of the Cauchy estimate for [z^k] of the Euler-Maclaurin remainder of
/// ζ(1+z) with n < N summed and J correction terms.
fn em_batch_bound_ln(k: usize, n: u64, j: usize) -> f64 {
    let jj = 2.0 * j as f64 + 2.0;
    let lnn = (n as f64).ln();
    let two_pi = (2.0 * std::f64::consts::PI).ln();
    // |B_{2J+2}|/(2J+2)! ≤ 2ζ(2J+2)/(2π)^{2J+2} ≤ 2.2/(2π)^{2J+2}
    let base = 2.2f64.ln() - jj * two_pi;
    let grid = 240;
    let mut best = f64::INFINITY;
    for t in 1..grid {
        let rho = jj * t as f64 / grid as f64;
        // Backlund: |R| ≤ |s+2J+1|/(σ+2J+1) · |B_{2J+2}|/(2J+2)! · |(s)_{2J+1}| · N^{-σ-2J-1}
        let v = ((jj + rho) / (jj - rho)).ln() + base + ln_gamma_f64(jj + rho)
            - ln_gamma_f64(1.0 + rho)
            + (rho - jj) * lnn
            - k as f64 * rho.ln();
        best = best.min(v);
    }
    best
}

fn plan_batch(k_max: usize, target: &BatchTarget) -> (u64, usize) {
    let req: Vec<f64> = (0..=k_max)
        .map(|k| target.ln_req(k, trend_ln_scaled(k)) - 8f64.ln())
        .collect();
    let ok = |n: u64, j: usize| (0..=k_max).all(|k| em_batch_bound_ln(k, n, j) <= req[k]);
    let mut n = 16u64;
    loop {
        let j_cap = ((std::f64::consts::PI * n as f64) as usize).min(1500);
        if ok(n, j_cap) || n >= 1 << 15 {
            // smallest admissible J by bisection
            let (mut lo, mut hi) = (1usize, j_cap);
            while lo < hi {
                let mid = (lo + hi) / 2;
                if ok(n, mid) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            return (n, hi);
        }
        n *= 2;
    }
}

/// γ_0..γ_K at once from the Taylor coefficients of h(z) = ζ(1+z) - 1/z,
///
/// ```text
///     h(z) = Σ_{n<N} n^{-1-z} + (N^{-z} - 1)/z + N^{-1-z}/2
///            + Σ_{j≤J} B_{2j}/(2j)! (1+z)_{2j-1} N^{-2j-z} + R(z),
/// ```
///
/// expanded as power series in z. [z^k]R is bounded by a Cauchy estimate of
/// the Backlund remainder bound over a circle |z| = ρ < 2J + 2.
pub fn stieltjes_em_batch(
    k_max: usize,
    target: BatchTarget,
    ctx: &PrecisionContext,
) -> Result<StieltjesTable> {
    if k_max > TABLE_MAX_INDEX {
        return Err(Error::OutOfRange {
            index: k_max,
            reason: format!("tables limited to N <= {TABLE_MAX_INDEX}"),
        });
    }
    if !(target.abs_tol > 0.0) && target.rel_bits == 0 {
        return Err(Error::InvalidTolerance {
            tol: target.abs_tol,
        });
    }
    let (n_cut, j) = plan_batch(k_max, &target);
    let lnn = (n_cut as f64).ln();
    // summands of [z^k] are of size ≲ log^{k+1} N/(k+1)! + log^k N/k!
    let ln_scale: Vec<f64> = (0..=k_max)
        .map(|k| {
            log_add(
                (k as f64 + 1.0) * lnn.ln() - ln_gamma_f64(k as f64 + 2.0),
                k as f64 * lnn.ln() - ln_gamma_f64(k as f64 + 1.0),
            ) + 1.0
        })
        .collect();
    let ops = ((n_cut as usize + 2 * j + 2 * k_max) as f64).log2();
    let mut extra = 0u32;
    for attempt in 0..3 {
        let deficit = (0..=k_max)
            .map(|k| ln_scale[k] - target.ln_req(k, trend_ln_scaled(k)))
            .fold(0.0f64, f64::max)
            / LN2;
        let w = ctx.bits().max(target.rel_bits) + 32 + deficit.ceil() as u32 + ops.ceil() as u32 + extra;
        let (coef, ln_round) = em_batch_coefficients(k_max, n_cut, j, w, &ln_scale);
        // a posteriori: compare against the computed magnitudes
        let mut worst = 0.0f64;
        let mut ln_err = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max {
            let e = log_add(em_batch_bound_ln(k, n_cut, j), ln_round[k]);
            let env = (k..=(k + 2).min(k_max))
                .map(|i| ln_abs(&coef[i]))
                .fold(f64::NEG_INFINITY, f64::max);
            let req = target.ln_req(k, env);
            worst = worst.max((ln_round[k] - req) / LN2);
            ln_err.push(e);
        }
        if worst > 0.0 && attempt < 2 {
            extra += worst.ceil() as u32 + 16;
            continue;
        }
        return Ok(assemble(k_max, coef, ln_err, ctx, target));
    }
    unreachable!()
}

fn assemble(
    k_max: usize,
    coef: Vec<Float>,
    ln_err: Vec<f64>,
    ctx: &PrecisionContext,
    target: BatchTarget,
) -> StieltjesTable {
    let keep = ctx.bits().max(target.rel_bits + 64);
    let mut values = Vec::with_capacity(k_max + 1);
    let mut brackets = Vec::with_capacity(k_max + 1);
    let mut scaled = Vec::with_capacity(k_max + 1);
    let mut lnb = Vec::with_capacity(k_max + 1);
    let mut fact = Integer::from(1);
    for (k, a) in coef.into_iter().enumerate() {
        if k > 0 {
            fact *= k as u32;
        }
        let mut s = Float::with_val(keep, &a);
        if k % 2 == 1 {
            s = -s;
        }
        let g = Float::with_val(keep, &s * &fact);
        let lf = ln_gamma_f64(k as f64 + 1.0);
        let round_g = ln_abs(&g) - keep as f64 * LN2;
        let round_s = ln_abs(&s) - keep as f64 * LN2;
        brackets.push(log_add(ln_err[k] + lf, round_g).exp());
        lnb.push(log_add(ln_err[k], round_s));
        values.push(g);
        scaled.push(s);
    }
    StieltjesTable {
        values,
        brackets,
        scaled,
        scaled_ln_brackets: lnb,
        method: Method::EulerMaclaurin,
        certified_through: None,
    }
}

/// Taylor coefficients [z^k] h(z), k ≤ K, at working precision `w`, with
/// ln of a rounding-error estimate per coefficient.
fn em_batch_coefficients(
    k_max: usize,
    n_cut: u64,
    j: usize,
    w: u32,
    ln_scale: &[f64],
) -> (Vec<Float>, Vec<f64>) {
    let mut acc = vec![Float::new(w); k_max + 1];
    let mut t = Float::new(w);
    for n in 1..n_cut {
        let negl = -Float::with_val(w, n).ln();
        rug::Assign::assign(&mut t, 1);
        t /= n;
        for (k, a) in acc.iter_mut().enumerate() {
            *a += &t;
            t *= &negl;
            t /= (k + 1) as u32;
        }
    }
    // e_k = (-log N)^k / k!, k ≤ K + 1
    let negl = -Float::with_val(w, n_cut).ln();
    let mut e = Vec::with_capacity(k_max + 2);
    let mut cur = Float::with_val(w, 1);
    for k in 0..=k_max + 1 {
        e.push(cur.clone());
        cur *= &negl;
        cur /= (k + 1) as u32;
    }
    for k in 0..=k_max {
        acc[k] += &e[k + 1];
        acc[k] += Float::with_val(w, &e[k] / n_cut) / 2u32;
    }

    // Σ_j B_{2j}/(2j)! N^{-2j} (1+z)_{2j-1}, truncated at degree K
    let bern = bernoulli_table(j + 1);
    let mut poch = vec![Float::new(w); k_max + 1];
    rug::Assign::assign(&mut poch[0], 1);
    if k_max >= 1 {
        rug::Assign::assign(&mut poch[1], 1);
    }
    let mut corr = vec![Float::new(w); k_max + 1];
    let mut corr_ln = vec![f64::NEG_INFINITY; k_max + 1];
    let n2 = Float::with_val(w, n_cut).square().recip();
    let mut scale = Float::with_val(w, 1);
    let mut fact = Integer::from(1);
    for jj in 1..=j {
        if jj > 1 {
            mul_linear(&mut poch, (2 * jj - 2) as u32);
            mul_linear(&mut poch, (2 * jj - 1) as u32);
        }
        scale *= &n2;
        fact *= ((2 * jj - 1) * (2 * jj)) as u64;
        let c = Float::with_val(w, &bern[jj]) / &fact * &scale;
        let lc = ln_abs(&c);
        for (k, p) in poch.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            corr[k] += Float::with_val(w, p * &c);
            corr_ln[k] = log_add(corr_ln[k], lc + ln_abs(p));
        }
    }
    let mut ln_round = ln_scale.to_vec();
    let e_ln: Vec<f64> = e.iter().map(ln_abs).collect();
    for k in 0..=k_max {
        let mut s = Float::new(w);
        let mut sl = f64::NEG_INFINITY;
        for i in 0..=k {
            if corr[k - i].is_zero() {
                continue;
            }
            s += Float::with_val(w, &e[i] * &corr[k - i]);
            sl = log_add(sl, e_ln[i] + corr_ln[k - i]);
        }
        acc[k] += s;
        ln_round[k] = log_add(ln_round[k], sl);
    }
    let ops = ((n_cut as usize + 2 * j + 2 * k_max) as f64).ln();
    for r in ln_round.iter_mut() {
        *r += ops - w as f64 * LN2 + 1.0;
    }
    (acc, ln_round)
}

/// poly ← poly · (c + z), truncated to its current length.
fn mul_linear(poly: &mut [Float], c: u32) {
    for k in (0..poly.len()).rev() {
        poly[k] *= c;
        if k > 0 {
            let prev = poly[k - 1].clone();
            poly[k] += prev;
        }
    }
}

/// Cross-certified table γ_0..γ_N.
///
/// Values come from the batch Euler-Maclaurin route with absolute brackets
/// below the context tolerance; indices 1..=min(N, INTEGRAL_REACH) are
/// confirmed by the integral method.
pub fn build_table(n: usize, ctx: &PrecisionContext) -> Result<StieltjesTable> {
    let tol = ctx.tolerance();
    let mut table = stieltjes_em_batch(n, BatchTarget::absolute(tol / 8.0), ctx)?;
    for k in 0..=n {
        if !(table.brackets[k] <= tol) {
            return Err(Error::PrecisionInsufficient {
                what: format!("gamma_{k} bracket"),
                achieved: table.brackets[k],
                target: tol,
            });
        }
    }
    cross_certify(&mut table, ctx)?;
    Ok(table)
}

/// Confirms indices 1..=min(N, INTEGRAL_REACH) with the integral method and
/// marks the table cross-certified.
pub fn cross_certify(table: &mut StieltjesTable, ctx: &PrecisionContext) -> Result<()> {
    let reach = table.max_index().min(INTEGRAL_REACH);
    if reach >= 1 {
        let check = stieltjes_integral_range(1, reach, ctx, CERT_CUTOFF, TailPolicy::HalfMean)?;
        certify(table, 1, &check)?;
        table.certified_through = Some(reach);
    }
    table.method = Method::CrossCertified;
    Ok(())
}

/// Fails with the first index where table and `other` disagree beyond
/// their summed brackets. `other[i]` corresponds to index `first + i`.
pub fn certify(table: &StieltjesTable, first: usize, other: &[Bracketed<Float>]) -> Result<()> {
    for (i, o) in other.iter().enumerate() {
        let n = first + i;
        let diff = Float::with_val(table.precision(), &table.values[n] - &o.value)
            .abs()
            .to_f64();
        let allowed = table.brackets[n] + o.bracket;
        if !(diff <= allowed) {
            return Err(Error::Certification { n, diff, allowed });
        }
    }
    Ok(())
}
