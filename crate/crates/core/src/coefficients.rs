//! Fourier-Laguerre coefficients ℓₙ⁽ᵐ⁾ of the fractional part in ℋₘ.
//!
//! ```text
//!     ℓ₀⁽ᵐ⁾ = -1 + Σ_{j≤m} γ_j/j!
//!     ℓₙ⁽ᵐ⁾ = Σ_{k≤n} C(n,k) (-1)^{n-k} ℓ₀⁽ᵐ⁺ᵏ⁾        (binomial transform)
//! ```
//!
//! The grid is built from the centred column D_q = -Σ_{j>q} γ_j/j!. Since
//! Σ_j γ_j/j! = 1/2, ℓ₀⁽q⁾ = -1/2 + D_q, and for n ≥ 1 the constant drops
//! out of the transform:
//!
//! ```text
//!     ℓₙ⁽ᵐ⁾ = Σ_k C(n,k) (-1)^{n-k} D_{m+k} .
//! ```
//!
//! D_q decays like γ_q/q!, so the sum can be truncated long before k = n and
//! the cancellation is limited to max_k C(n,k)|D_{m+k}| instead of 2ⁿ.

use std::sync::Arc;

use rug::{Complex, Float, Integer};

use crate::error::{Error, Result};
use crate::numkernel::{abs_f64, ln_abs, ln_binomial_f64, log_add, Bracketed, PrecisionContext};
use crate::oracle::fracint::{FracIntegrand, FracIntegrator, TailPolicy};
use crate::stieltjes::{
    cross_certify, stieltjes_em_batch, trend_ln_scaled, BatchTarget, StieltjesTable, TABLE_MAX_INDEX,
};

const LN2: f64 = std::f64::consts::LN_2;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Grid entries with n + m up to this bound are re-derived from the direct
/// double sum during [`CoefficientTable::build`].
pub const DIRECT_CHECK_MAX: usize = 24;

/// ℓ₀⁽ᵐ⁾ = -1 + Σ_{k≤m} γ_k/k!.
pub fn ell0(m: usize, table: &StieltjesTable, ctx: &PrecisionContext) -> Result<Float> {
    table.require(m)?;
    let prec = ctx.bits() + 16;
    let mut acc = Float::with_val(prec, -1);
    for k in 0..=m {
        acc += table.scaled(k)?;
    }
    Ok(Float::with_val(ctx.bits(), acc))
}

/// ℓₙ = Σ_{k=1}^n C(n-1,k-1) (-1)^{n-k} γ_k/k!, evaluated at bits + 2n.
pub fn ell(n: usize, table: &StieltjesTable, ctx: &PrecisionContext) -> Result<Float> {
    if n == 0 {
        return ell0(0, table, ctx);
    }
    table.require(n)?;
    let prec = ctx.bits() + 2 * n as u32 + 16;
    let mut acc = Float::new(prec);
    for k in 1..=n {
        let c = Integer::from(Integer::binomial_u((n - 1) as u32, (k - 1) as u32));
        let t = Float::with_val(prec, table.scaled(k)? * &c);
        if (n - k).is_multiple_of(2) {
            acc += t;
        } else {
            acc -= t;
        }
    }
    Ok(Float::with_val(ctx.bits(), acc))
}

/// ℓₙ⁽ᵐ⁾ = -δₙ₀ + Σ_{k≤n} C(n,k) (-1)^{n-k} Σ_{j≤m+k} γ_j/j!, evaluated at
/// bits + 2(n+m).
pub fn ell_nm(n: usize, m: usize, table: &StieltjesTable, ctx: &PrecisionContext) -> Result<Float> {
    table.require(n + m)?;
    let prec = ctx.bits() + 2 * (n + m) as u32 + 16;
    let mut prefix = Float::new(prec);
    for j in 0..m {
        prefix += table.scaled(j)?;
    }
    let mut acc = Float::with_val(prec, if n == 0 { -1 } else { 0 });
    for k in 0..=n {
        prefix += table.scaled(m + k)?;
        let c = Integer::from(Integer::binomial_u(n as u32, k as u32));
        let t = Float::with_val(prec, &prefix * &c);
        if (n - k).is_multiple_of(2) {
            acc += t;
        } else {
            acc -= t;
        }
    }
    Ok(Float::with_val(ctx.bits(), acc))
}

fn transform(seq: &[Float], alternating: bool) -> Vec<Float> {
    let out_prec = seq.iter().map(|x| x.prec()).max().unwrap_or(64);
    let prec = out_prec + 2 * seq.len() as u32 + 16;
    let mut out = Vec::with_capacity(seq.len());
    for n in 0..seq.len() {
        let mut acc = Float::new(prec);
        for (k, a) in seq.iter().enumerate().take(n + 1) {
            let c = Integer::from(Integer::binomial_u(n as u32, k as u32));
            let t = Float::with_val(prec, a * &c);
            if alternating && (n - k) % 2 == 1 {
                acc -= t;
            } else {
                acc += t;
            }
        }
        out.push(Float::with_val(out_prec, acc));
    }
    out
}

/// 𝔅: aₙ ↦ Σ_{k≤n} C(n,k) (-1)^{n-k} a_k.
pub fn binomial_transform(seq: &[Float]) -> Vec<Float> {
    transform(seq, true)
}

/// 𝔅⁻¹: bₙ ↦ Σ_{k≤n} C(n,k) b_k.
pub fn inverse_binomial_transform(seq: &[Float]) -> Vec<Float> {
    transform(seq, false)
}

/// Which bound covers Σ_{j>K} |γ_j|/j! beyond the end of the Stieltjes table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailModel {
    /// |γ_j| ≤ (3 + (-1)^j)(j-1)!/π^j.
    Rigorous,
    /// Extrapolation of the last table entries along a k log k decay law.
    Empirical,
}

impl std::fmt::Display for TailModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TailModel::Rigorous => "rigorous",
            TailModel::Empirical => "empirical",
        })
    }
}

#[derive(Debug, Clone, Copy)]
enum Model {
    Rigorous,
    /// ln|γ_q/q!| ≤ a - c (q ln q - K ln K) for q > K.
    Empirical { a: f64, c: f64 },
}

impl Model {
    /// ln of a bound on Σ_{j>q} |γ_j|/j!, valid for q ≥ K.
    fn env(&self, q: usize, kt: usize) -> f64 {
        let q1 = (q + 1) as f64;
        match *self {
            Model::Rigorous => 4f64.ln() - q1.ln() - q1 * LN_PI - (1.0 - 1.0 / std::f64::consts::PI).ln(),
            Model::Empirical { a, c } => {
                let k = kt as f64;
                let r = -c * (q1.ln() + 1.0);
                a - c * (q1 * q1.ln() - k * k.ln()) - (-r.exp()).ln_1p()
            }
        }
    }

    /// ln of the per-step decay factor of the envelope at q.
    fn step(&self, q: usize) -> f64 {
        match *self {
            Model::Rigorous => -LN_PI,
            Model::Empirical { c, .. } => -c * ((q + 1) as f64).ln(),
        }
    }
}

/// The centred column D_q for q < K, with f64 log-magnitude shadows.
struct Column {
    kt: usize,
    d: Vec<Float>,
    ln_abs_d: Vec<f64>,
    /// ln Σ_{q<j≤K} |a_j| (no tail).
    ln_env_in: Vec<f64>,
    /// ln of table and rounding error in D_q (no tail).
    ln_err_in: Vec<f64>,
    empirical: Option<Model>,
}

impl Column {
    fn new(table: &StieltjesTable) -> Result<Self> {
        let kt = table.max_index();
        let tp = table.precision();
        let mut d = vec![Float::new(tp); kt + 1];
        let mut ln_abs_d = vec![f64::NEG_INFINITY; kt + 1];
        let mut ln_env_in = vec![f64::NEG_INFINITY; kt + 1];
        let mut ln_err_in = vec![f64::NEG_INFINITY; kt + 1];
        let mut acc = Float::new(tp);
        let mut env = f64::NEG_INFINITY;
        let mut err = f64::NEG_INFINITY;
        let ops = ((kt + 1) as f64).ln();
        for q in (0..kt).rev() {
            let a = table.scaled(q + 1)?;
            acc -= a;
            env = log_add(env, ln_abs(a));
            err = log_add(err, table.scaled_ln_bracket(q + 1));
            d[q] = acc.clone();
            ln_abs_d[q] = ln_abs(&acc);
            ln_env_in[q] = env;
            ln_err_in[q] = log_add(err, env + ops - tp as f64 * LN2);
        }
        let empirical = if kt >= 64 {
            let window = |lo: usize, hi: usize| {
                (lo..=hi)
                    .map(|j| ln_abs(table.scaled(j).unwrap()))
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            let far = window(kt - 63, kt - 48);
            let near = window(kt - 15, kt);
            let phi = |k: f64| k * k.ln();
            let c = (far - near) / (phi((kt - 8) as f64) - phi((kt - 56) as f64));
            (c > 0.0).then_some(Model::Empirical {
                a: near + 4f64.ln(),
                c: 0.75 * c,
            })
        } else {
            None
        };
        Ok(Self {
            kt,
            d,
            ln_abs_d,
            ln_env_in,
            ln_err_in,
            empirical,
        })
    }
}

/// ℓₙ⁽ᵐ⁾ for 0 ≤ m ≤ M, 0 ≤ n ≤ N with absolute error brackets.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    max_m: usize,
    max_n: usize,
    /// grid[m][n]
    grid: Vec<Vec<Float>>,
    ln_brackets: Vec<Vec<f64>>,
    ell0_column: Vec<Float>,
    source: Arc<StieltjesTable>,
    tail_model: TailModel,
    target: f64,
}

impl CoefficientTable {
    /// Grid from a given Stieltjes table, aiming at an absolute error of
    /// tolerance/1024 per entry. Brackets are reported as achieved; with a
    /// table of only absolute accuracy they grow quickly with n.
    pub fn build(
        max_m: usize,
        max_n: usize,
        source: Arc<StieltjesTable>,
        ctx: &PrecisionContext,
    ) -> Result<Self> {
        Self::build_with_target(max_m, max_n, source, ctx.tolerance() / 1024.0, ctx)
    }

    pub fn build_with_target(
        max_m: usize,
        max_n: usize,
        source: Arc<StieltjesTable>,
        target: f64,
        ctx: &PrecisionContext,
    ) -> Result<Self> {
        source.require(max_m + 1)?;
        let col = Column::new(&source)?;
        let kt = col.kt;

        // Prefer the rigorous tail whenever it can meet the target.
        let rigorous_ok =
            max_n as f64 * LN2 + Model::Rigorous.env(kt, kt) <= target.ln() - 2.0;
        let (model, tail_model) = match (rigorous_ok, col.empirical) {
            (true, _) | (false, None) => (Model::Rigorous, TailModel::Rigorous),
            (false, Some(e)) => (e, TailModel::Empirical),
        };

        let ln_int: Vec<f64> = (0..=max_n + 1).map(|i| (i as f64).ln()).collect();
        let mut grid = Vec::with_capacity(max_m + 1);
        let mut ln_brackets = Vec::with_capacity(max_m + 1);
        for m in 0..=max_m {
            let mut row = Vec::with_capacity(max_n + 1);
            let mut row_b = Vec::with_capacity(max_n + 1);
            let e0 = ell0_bracketed(m, &source, ctx)?;
            row.push(e0.value);
            row_b.push(e0.bracket.ln());
            for n in 1..=max_n {
                let (v, b) = entry(n, m, &col, model, target, &ln_int, ctx.bits());
                row.push(v);
                row_b.push(b);
            }
            grid.push(row);
            ln_brackets.push(row_b);
        }

        let col_len = (max_m + max_n).min(kt);
        let prec = ctx.bits() + 16;
        let mut ell0_column = Vec::with_capacity(col_len + 1);
        let mut acc = Float::with_val(prec, -1);
        for q in 0..=col_len {
            acc += source.scaled(q)?;
            ell0_column.push(Float::with_val(ctx.bits(), &acc));
        }

        let table = Self {
            max_m,
            max_n,
            grid,
            ln_brackets,
            ell0_column,
            source,
            tail_model,
            target,
        };
        table.check_direct(DIRECT_CHECK_MAX, ctx)?;
        Ok(table)
    }

    /// Builds its own Stieltjes table, sized so every entry meets the
    /// context tolerance.
    pub fn plan(max_m: usize, max_n: usize, ctx: &PrecisionContext) -> Result<Self> {
        let target = ctx.tolerance();
        let (mut kt, mut rel_bits) = plan_source(max_m, max_n, target, ctx);
        for attempt in 0..2 {
            let mut st = stieltjes_em_batch(kt, BatchTarget::relative(rel_bits), ctx)?;
            cross_certify(&mut st, ctx)?;
            let table = Self::build_with_target(max_m, max_n, Arc::new(st), target / 4.0, ctx)?;
            let worst = table.max_ln_bracket();
            if worst <= target.ln() {
                return Ok(table);
            }
            if attempt == 1 {
                return Err(Error::PrecisionInsufficient {
                    what: format!("coefficient grid M = {max_m}, N = {max_n}"),
                    achieved: worst.exp(),
                    target,
                });
            }
            rel_bits += ((worst - target.ln()) / LN2).ceil() as u32 + 32;
            kt = (kt + kt / 4).min(TABLE_MAX_INDEX);
        }
        unreachable!()
    }

    pub fn max_m(&self) -> usize {
        self.max_m
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn get(&self, n: usize, m: usize) -> Result<&Float> {
        self.check(n, m)?;
        Ok(&self.grid[m][n])
    }

    pub fn bracket(&self, n: usize, m: usize) -> f64 {
        self.ln_brackets[m][n].exp()
    }

    pub fn ln_bracket(&self, n: usize, m: usize) -> f64 {
        self.ln_brackets[m][n]
    }

    pub fn row(&self, m: usize) -> Result<&[Float]> {
        self.check(0, m)?;
        Ok(&self.grid[m])
    }

    pub fn row_ln_brackets(&self, m: usize) -> &[f64] {
        &self.ln_brackets[m]
    }

    /// ℓ₀⁽q⁾ for q ≤ min(M + N, table length - 1).
    pub fn ell0_column(&self) -> &[Float] {
        &self.ell0_column
    }

    pub fn source(&self) -> &Arc<StieltjesTable> {
        &self.source
    }

    pub fn tail_model(&self) -> TailModel {
        self.tail_model
    }

    /// Absolute accuracy the grid was built for.
    pub fn target(&self) -> f64 {
        self.target
    }

    pub fn max_ln_bracket(&self) -> f64 {
        self.ln_brackets
            .iter()
            .flatten()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    fn check(&self, n: usize, m: usize) -> Result<()> {
        if m > self.max_m {
            return Err(Error::OutOfRange {
                index: m,
                reason: format!("grid order limited to m <= {}", self.max_m),
            });
        }
        if n > self.max_n {
            return Err(Error::TableTooShort {
                needed: n,
                available: self.max_n + 1,
            });
        }
        Ok(())
    }

    /// Compares grid entries with n + m ≤ `upto` against the direct
    /// double sum [`ell_nm`]. Returns the largest difference seen.
    pub fn check_direct(&self, upto: usize, ctx: &PrecisionContext) -> Result<f64> {
        let mut worst = 0.0f64;
        for m in 0..=self.max_m {
            for n in 0..=self.max_n {
                if n + m > upto || n + m > self.source.max_index() {
                    continue;
                }
                let direct = ell_nm(n, m, &self.source, ctx)?;
                let diff = Float::with_val(ctx.bits(), &direct - &self.grid[m][n])
                    .abs()
                    .to_f64();
                let allowed = self.bracket(n, m)
                    + direct_bracket(n, m, &self.source)
                    + 4.0 * direct.to_f64().abs().max(1.0) * ctx.epsilon();
                if !(diff <= allowed) {
                    return Err(Error::Certification { n, diff, allowed });
                }
                worst = worst.max(diff);
            }
        }
        Ok(worst)
    }
}

/// Propagated table error of the direct sum: Σ_k C(n,k) Σ_{j≤m+k} err_j.
fn direct_bracket(n: usize, m: usize, table: &StieltjesTable) -> f64 {
    let mut prefix = f64::NEG_INFINITY;
    for j in 0..m {
        prefix = log_add(prefix, table.scaled_ln_bracket(j));
    }
    let mut acc = f64::NEG_INFINITY;
    for k in 0..=n {
        prefix = log_add(prefix, table.scaled_ln_bracket(m + k));
        acc = log_add(acc, ln_binomial_f64(n, k) + prefix);
    }
    acc.exp()
}

fn ell0_bracketed(m: usize, table: &StieltjesTable, ctx: &PrecisionContext) -> Result<Bracketed<Float>> {
    let v = ell0(m, table, ctx)?;
    let mut err = f64::NEG_INFINITY;
    for j in 0..=m {
        err = log_add(err, table.scaled_ln_bracket(j));
    }
    let round = (m as f64 + 2.0).ln() - (ctx.bits() as f64 - 1.0) * LN2;
    Ok(Bracketed::new(v, log_add(err, round).exp()))
}

/// One grid entry n ≥ 1 from the centred column. Returns the value and the
/// natural log of its bracket.
fn entry(
    n: usize,
    m: usize,
    col: &Column,
    model: Model,
    target: f64,
    ln_int: &[f64],
    out_bits: u32,
) -> (Float, f64) {
    let kt = col.kt;
    let tail_kt = model.env(kt, kt);
    let ln_cut = target.ln() - 20.0 - ((n + 2) as f64).ln();
    // k ranges over in-table indices q = m + k < K
    let k_in = if m < kt { n.min(kt - m - 1) } else { 0 };
    let in_table = m < kt;

    let mut lc = 0.0f64; // ln C(n, k)
    let mut k_last = 0usize;
    let mut ln_peak = f64::NEG_INFINITY;
    let mut lt = Vec::with_capacity(k_in + 1);
    if in_table {
        for k in 0..=k_in {
            if k > 0 {
                lc += ln_int[n - k + 1] - ln_int[k];
            }
            let q = m + k;
            let env = log_add(col.ln_env_in[q], tail_kt);
            let t = lc + env;
            lt.push((lc, t));
            if t > ln_cut {
                k_last = k;
            }
        }
    }
    // errors of the summed terms, and the skipped in-table terms
    let mut err = f64::NEG_INFINITY;
    let mut skipped = f64::NEG_INFINITY;
    for (k, &(lc, t)) in lt.iter().enumerate() {
        let q = m + k;
        if k <= k_last {
            err = log_add(err, lc + log_add(col.ln_err_in[q], tail_kt));
            ln_peak = ln_peak.max(lc + col.ln_abs_d[q]);
        } else {
            skipped = log_add(skipped, t);
        }
    }
    // terms with q = m + k ≥ K: D_q is not tabulated and is taken as 0
    let k_out = if in_table { k_in + 1 } else { 0 };
    let mut beyond = f64::NEG_INFINITY;
    if k_out <= n {
        let mut lc = ln_binomial_f64(n, k_out);
        for k in k_out..=n {
            if k > k_out {
                lc += ln_int[n - k + 1] - ln_int[k];
            }
            let t = lc + model.env(m + k, kt);
            beyond = log_add(beyond, t);
            let ratio = ln_int[n - k].max(f64::NEG_INFINITY) - ln_int[k + 1] + model.step(m + k + 1);
            if k < n && ratio < -LN2 && t < beyond - 40.0 {
                // geometric from here on with ratio below 1/2
                beyond += LN2;
                break;
            }
        }
    }

    let bits_needed = ((ln_peak - target.ln()) / LN2).ceil().max(0.0) as u32 + 24;
    let prec = bits_needed.max(out_bits + 16);
    let mut acc = Float::new(prec);
    if in_table {
        let mut c = Float::with_val(prec, 1);
        for k in 0..=k_last {
            let t = Float::with_val(prec, &c * &col.d[m + k]);
            if (n - k).is_multiple_of(2) {
                acc += t;
            } else {
                acc -= t;
            }
            c *= (n - k) as u32;
            c /= (k + 1) as u32;
        }
    }
    let round = ln_peak + 2.0 * ((k_last + 2) as f64).ln() + 2.0 - prec as f64 * LN2;
    let value = Float::with_val(out_bits, &acc);
    let out_round = ln_abs(&value) - (out_bits as f64 - 1.0) * LN2;
    let bracket = [err, skipped, beyond, round, out_round]
        .into_iter()
        .fold(f64::NEG_INFINITY, log_add);
    (value, bracket)
}

/// Table length and relative accuracy needed for an M × N grid at absolute
/// accuracy `target`, from the trend of |γ_k/k!|.
fn plan_source(max_m: usize, max_n: usize, target: f64, ctx: &PrecisionContext) -> (usize, u32) {
    let ln_cut = target.ln() - 30.0;
    let mut k_last = 0;
    let mut peak = f64::NEG_INFINITY;
    for k in 0..=max_n.min(TABLE_MAX_INDEX) {
        let t = ln_binomial_f64(max_n, k) + trend_ln_scaled(k);
        peak = peak.max(t);
        if ln_binomial_f64(max_n, k) + trend_ln_scaled(max_m + k) > ln_cut {
            k_last = k;
        }
    }
    let kt1 = max_m + k_last + 2;
    // rigorous tail: N ln 2 + ln(4/(Kπ^K)) ≤ ln target
    let kr = ((max_n as f64 * LN2 - target.ln() + 4.0) / LN_PI).ceil() as usize;
    let kt = if kr <= (2 * kt1).max(512) {
        kt1.max(kr)
    } else {
        // the empirical model must outpace C(N, k) growth at the table end
        let mut k = kt1.max(64 + max_m);
        while 0.5 * ((k as f64).ln() + 1.0) < (((max_n + 1) as f64) / k as f64).ln() + 0.5 {
            k += 16;
        }
        k
    };
    let kt = kt.max(max_m + 2).min(TABLE_MAX_INDEX);
    let rel = ((peak - target.ln()) / LN2).ceil().max(0.0) as u32 + 48;
    (kt, rel.max(ctx.bits()))
}

/// |Σ_{n≤K} ℓₙ⁽ᵐ⁾ zⁿ/n! - e^{-z} Σ_{n≤K} ℓ₀⁽ᵐ⁺ⁿ⁾ zⁿ/n!|.
pub fn egf_check(
    m: usize,
    z: &Complex,
    k: usize,
    grid: &CoefficientTable,
    ctx: &PrecisionContext,
) -> Result<f64> {
    let r = abs_f64(z);
    if !(r < 1.0) {
        return Err(Error::Domain(format!("|z| = {r} must be below 1")));
    }
    grid.check(k, m)?;
    let col = grid.ell0_column();
    if col.len() <= m + k {
        return Err(Error::TableTooShort {
            needed: m + k,
            available: col.len(),
        });
    }
    let prec = ctx.bits() + 32;
    let mut f = Complex::new(prec);
    let mut g = Complex::new(prec);
    let mut pw = Complex::with_val(prec, 1);
    for n in 0..=k {
        if n > 0 {
            pw *= z;
            pw /= n as u32;
        }
        f += Complex::with_val(prec, &pw * &grid.grid[m][n]);
        g += Complex::with_val(prec, &pw * &col[m + n]);
    }
    let e = Complex::with_val(prec, -z).exp();
    g *= e;
    Ok(abs_f64(&Complex::with_val(prec, &f - &g)))
}

/// Running sums Σ_{n≤j} C(n+m,m) (ℓₙ⁽ᵐ⁾)² for j = 0..=N.
pub fn parseval_partial(m: usize, n: usize, grid: &CoefficientTable, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    grid.check(n, m)?;
    let prec = ctx.bits() + 16;
    let mut acc = Float::new(prec);
    let mut out = Vec::with_capacity(n + 1);
    let mut c = Integer::from(1);
    for j in 0..=n {
        if j > 0 {
            c *= (j + m) as u32;
            c /= j as u32;
        }
        let sq = Float::with_val(prec, grid.grid[m][j].square_ref());
        acc += sq * &c;
        out.push(Float::with_val(ctx.bits(), &acc));
    }
    Ok(out)
}

/// ℓ₀ = -∫₁^∞ {x}/x² dx = γ₀ - 1 by exact interval integration.
pub fn ell0_integral(cutoff: u64, policy: TailPolicy, ctx: &PrecisionContext) -> Result<Bracketed<Float>> {
    let prec = ctx.bits() + 16;
    let e = Complex::with_val(prec, 2);
    let integ = FracIntegrator::new(&e, 1, 0, cutoff, policy, ctx)?;
    let mut f = FracIntegrand::new(e);
    f.add_term(1, 0, -1);
    let r = integ.integrate(&f)?;
    Ok(Bracketed::new(Float::with_val(ctx.bits(), r.value.real()), r.bracket))
}
