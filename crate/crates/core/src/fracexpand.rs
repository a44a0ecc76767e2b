//! The Laguerre expansion of the fractional part,
//!
//! ```text
//!     Σₙ (-1)^{n-1} ℓₙ⁽ᵐ⁾ 𝓛ₙ⁽ᵐ⁾(x) = {x}  (x ∉ ℕ),   1/2  (x ∈ ℕ, x ≥ 2),
//! ```
//!
//! in ℋₘ-norm and pointwise but not uniformly; plus summation experiments
//! on the conditionally convergent Σ ℓₙ = ζ(1/2) + 1.

use rug::{Float, Integer};

use crate::coefficients::{parseval_partial, CoefficientTable};
use crate::error::{Error, Result};
use crate::laguerre::{inner_product, row_at_log, FnHandle, LaguerreParams, StructuredFn};
use crate::numkernel::{ln_abs, log_add, pow2, Bracketed, PrecisionContext};

/// A truncation of the expansion at order m and depth N.
#[derive(Debug, Clone)]
pub struct ExpansionState<'a> {
    pub m: usize,
    pub n: usize,
    table: &'a CoefficientTable,
    /// ‖{·}‖₍ₘ₎² - Σ_{n≤N} C(n+m,m) (ℓₙ⁽ᵐ⁾)².
    pub l2_error_sq: Bracketed<Float>,
}

impl<'a> ExpansionState<'a> {
    /// `norm_closed` is ‖{·}‖₍ₘ₎² (see [`crate::oracle::hm_norm_closed`]).
    pub fn new(
        table: &'a CoefficientTable,
        m: usize,
        n: usize,
        norm_closed: &Bracketed<Float>,
        ctx: &PrecisionContext,
    ) -> Result<Self> {
        let l2_error_sq = l2_error(table, m, n, norm_closed, ctx)?;
        Ok(Self {
            m,
            n,
            table,
            l2_error_sq,
        })
    }

    pub fn table(&self) -> &CoefficientTable {
        self.table
    }

    /// The expansion coefficients cₙ = (-1)^{n-1} ℓₙ⁽ᵐ⁾ for n ≤ N.
    pub fn coefficients(&self) -> Result<Vec<Float>> {
        signed_row(self.table, self.m, self.n)
    }
}

fn signed_row(table: &CoefficientTable, m: usize, n: usize) -> Result<Vec<Float>> {
    let row = table.row(m)?;
    if n >= row.len() {
        return Err(Error::TableTooShort {
            needed: n,
            available: row.len(),
        });
    }
    Ok(row[..=n]
        .iter()
        .enumerate()
        .map(|(k, l)| if k % 2 == 0 { -l.clone() } else { l.clone() })
        .collect())
}

fn check_x(x: &Float) -> Result<()> {
    if x.is_nan() || *x <= 1 {
        return Err(Error::Domain(format!(
            "the expansion lives on x > 1, got {}",
            x.to_f64()
        )));
    }
    Ok(())
}

/// {x} with {n} = 0 at integers.
pub fn frac(x: &Float) -> Float {
    Float::with_val(x.prec(), x - Float::with_val(x.prec(), x.floor_ref()))
}

/// Pointwise limit of the expansion: {x}, or 1/2 at integers ≥ 2.
pub fn pointwise_target(x: &Float) -> Float {
    if x.is_integer() {
        Float::with_val(x.prec(), 0.5)
    } else {
        frac(x)
    }
}

/// How the terms cₙ 𝓛ₙ(x) are combined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Summation {
    Direct,
    /// Weights rⁿ.
    Abel(f64),
    /// (C,1): weights 1 - n/(N+1).
    Cesaro,
}

/// T_N(x) = Σ_{n≤N} (-1)^{n-1} ℓₙ⁽ᵐ⁾ 𝓛ₙ⁽ᵐ⁾(x).
pub fn partial_sum(x: &Float, state: &ExpansionState, ctx: &PrecisionContext) -> Result<Float> {
    summed(x, state, Summation::Direct, ctx)
}

pub fn summed(x: &Float, state: &ExpansionState, how: Summation, ctx: &PrecisionContext) -> Result<Float> {
    check_x(x)?;
    if let Summation::Abel(r) = how {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::Domain(format!("Abel parameter must lie in [0, 1], got {r}")));
        }
    }
    let c = state.coefficients()?;
    let prec = ctx.bits() + 16;
    let u = Float::with_val(prec, x.ln_ref());
    let l = row_at_log(state.n, state.m, &u, prec);
    let mut acc = Float::new(prec);
    let mut w = Float::with_val(prec, 1);
    for (k, (ck, lk)) in c.iter().zip(&l).enumerate() {
        let t = Float::with_val(prec, ck * lk);
        match how {
            Summation::Direct => acc += t,
            Summation::Abel(r) => {
                acc += Float::with_val(prec, &t * &w);
                w *= r;
            }
            Summation::Cesaro => {
                acc += t * (state.n + 1 - k) as u32 / (state.n + 1) as u32;
            }
        }
    }
    Ok(Float::with_val(ctx.bits(), acc))
}

/// T_0(x), ..., T_N(x) in one pass.
pub fn running_partial_sums(
    x: &Float,
    m: usize,
    n: usize,
    table: &CoefficientTable,
    ctx: &PrecisionContext,
) -> Result<Vec<Float>> {
    check_x(x)?;
    let c = signed_row(table, m, n)?;
    let prec = ctx.bits() + 16;
    let u = Float::with_val(prec, x.ln_ref());
    let l = row_at_log(n, m, &u, prec);
    let mut acc = Float::new(prec);
    Ok(c.iter()
        .zip(&l)
        .map(|(ck, lk)| {
            acc += Float::with_val(prec, ck * lk);
            Float::with_val(ctx.bits(), &acc)
        })
        .collect())
}

/// ‖{·}‖₍ₘ₎² minus the Parseval partial sum. A value below zero by more than
/// the combined brackets means the coefficient table is wrong.
pub fn l2_error(
    table: &CoefficientTable,
    m: usize,
    n: usize,
    norm_closed: &Bracketed<Float>,
    ctx: &PrecisionContext,
) -> Result<Bracketed<Float>> {
    let p = parseval_partial(m, n, table, ctx)?;
    let value = Float::with_val(ctx.bits(), &norm_closed.value - &p[n]);
    // d(Σ C ℓ²) ≤ 2 Σ C |ℓ| δℓ
    let row = table.row(m)?;
    let lnb = table.row_ln_brackets(m);
    let mut ln_err = f64::NEG_INFINITY;
    let mut c = Integer::from(1);
    for j in 0..=n {
        if j > 0 {
            c *= (j + m) as u32;
            c /= j as u32;
        }
        let lc = Float::with_val(64, &c).ln().to_f64();
        ln_err = log_add(ln_err, std::f64::consts::LN_2 + lc + ln_abs(&row[j]) + lnb[j]);
    }
    let bracket = norm_closed.bracket + ln_err.exp() + 4.0 * pow2(-(ctx.bits() as i32)) * (n + 1) as f64;
    if value < -bracket {
        return Err(Error::NegativeL2Error {
            value: value.to_f64(),
            slack: bracket,
        });
    }
    Ok(Bracketed::new(value, bracket))
}

/// ‖{·} - T_N‖₍ₘ₎² by quadrature, expanded bilinearly into ⟨{·},{·}⟩,
/// ⟨{·},𝓛ₖ⟩ and ⟨𝓛ⱼ,𝓛ₖ⟩ which are integrated directly. Meant for small N.
pub fn l2_error_direct(
    table: &CoefficientTable,
    m: usize,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<Bracketed<Float>> {
    let c = signed_row(table, m, n)?;
    let prec = ctx.bits() + 16;
    let inner = ctx.with_tolerance(ctx.tolerance() / (4.0 * ((n + 1) * (n + 2)) as f64));
    let fr = FnHandle::Structured(StructuredFn::frac(1, prec));
    let lag: Vec<FnHandle> = (0..=n)
        .map(|k| FnHandle::Structured(StructuredFn::laguerre(LaguerreParams::new(k, m), prec)))
        .collect();
    let ff = inner_product(&fr, &fr, m, &inner)?;
    let mut acc = Float::with_val(prec, &ff.value);
    let mut bracket = ff.bracket;
    for j in 0..=n {
        let fl = inner_product(&fr, &lag[j], m, &inner)?;
        acc -= Float::with_val(prec, &fl.value * &c[j]) * 2u32;
        bracket += 2.0 * fl.bracket * c[j].to_f64().abs();
        for k in 0..=n {
            if k < j {
                continue;
            }
            let g = inner_product(&lag[j], &lag[k], m, &inner)?;
            let w = if j == k { 1u32 } else { 2u32 };
            acc += Float::with_val(prec, &g.value * &c[j]) * &c[k] * w;
            bracket += w as f64 * g.bracket * (c[j].to_f64() * c[k].to_f64()).abs();
        }
    }
    Ok(Bracketed::new(Float::with_val(ctx.bits(), acc), bracket))
}

/// Empirical slack for the running min/max of T_N(e) over N ∈ [N₀, 2N₀]
/// around e - 2, N₀ ≥ 250.
pub const SANDWICH_BAND: f64 = 0.05;

/// One row of [`nonuniformity_probe`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeRow {
    pub n: usize,
    /// sup |T_N - {x}| over grid points within 10⁻³ of an integer.
    pub sup_err_near_int: f64,
    /// sup |T_N - {x}| over grid points at distance ≥ 0.3 from the integers.
    pub sup_err_far: f64,
}

/// The probe grid on (1, 20]: x = k ± 10⁻³, k ± 10⁻⁴ around each integer and
/// k + {0.3, 0.4, 0.5, 0.6, 0.7} between them.
pub fn probe_grid(prec: u32) -> (Vec<Float>, Vec<Float>) {
    let mut near = Vec::new();
    let mut far = Vec::new();
    for k in 1..=20u32 {
        for d in [1e-3, 1e-4] {
            if k > 1 {
                near.push(Float::with_val(prec, k) - d);
            }
            if k < 20 {
                near.push(Float::with_val(prec, k) + d);
            }
        }
        if k < 20 {
            for f in [3u32, 4, 5, 6, 7] {
                far.push(Float::with_val(prec, k) + Float::with_val(prec, f) / 10u32);
            }
        }
    }
    (near, far)
}

/// sup-errors of T_N against {x} on the probe grid for each N (m = 0). The
/// near-integer column does not decay: the limit jumps at every integer.
pub fn nonuniformity_probe(
    n_list: &[usize],
    table: &CoefficientTable,
    ctx: &PrecisionContext,
) -> Result<Vec<ProbeRow>> {
    let (near, far) = probe_grid(ctx.bits());
    probe_on(n_list, &near, &far, table, ctx)
}

/// [`nonuniformity_probe`] on caller-chosen point sets.
pub fn probe_on(
    n_list: &[usize],
    near: &[Float],
    far: &[Float],
    table: &CoefficientTable,
    ctx: &PrecisionContext,
) -> Result<Vec<ProbeRow>> {
    let n_max = n_list.iter().copied().max().unwrap_or(0);
    let sup = |pts: &[Float]| -> Result<Vec<f64>> {
        let mut out = vec![0.0f64; n_list.len()];
        for x in pts {
            let sums = running_partial_sums(x, 0, n_max, table, ctx)?;
            let f = frac(x);
            for (o, &n) in out.iter_mut().zip(n_list) {
                let e = Float::with_val(ctx.bits(), &sums[n] - &f).abs().to_f64();
                *o = o.max(e);
            }
        }
        Ok(out)
    };
    let a = sup(near)?;
    let b = sup(far)?;
    Ok(n_list
        .iter()
        .enumerate()
        .map(|(i, &n)| ProbeRow {
            n,
            sup_err_near_int: a[i],
            sup_err_far: b[i],
        })
        .collect())
}

/// A(r) = Σ ℓₙ rⁿ with its bracket.
#[derive(Debug, Clone)]
pub struct AbelRow {
    pub r: f64,
    pub value: Bracketed<Float>,
    pub terms: usize,
}

/// Abel sums of Σ ℓₙ (m = 0). |ℓₙ| ≤ ‖{·}‖₍₀₎ < 0.52 bounds the tail by
/// 0.52 r^{N+1}/(1-r).
pub fn abel_sum_ell(r_list: &[f64], table: &CoefficientTable, ctx: &PrecisionContext) -> Result<Vec<AbelRow>> {
    let row = table.row(0)?;
    let lnb = table.row_ln_brackets(0);
    let prec = ctx.bits() + 16;
    let target = ctx.tolerance() / 2.0;
    r_list
        .iter()
        .map(|&r| {
            if !(0.0..1.0).contains(&r) {
                return Err(Error::Domain(format!("Abel parameter must lie in [0, 1), got {r}")));
            }
            let mut acc = Float::new(prec);
            let mut w = Float::with_val(prec, 1);
            let mut ln_err = f64::NEG_INFINITY;
            let mut best = f64::INFINITY;
            for (n, l) in row.iter().enumerate() {
                acc += Float::with_val(prec, l * &w);
                ln_err = log_add(ln_err, lnb[n] + n as f64 * r.ln());
                let tail = if r == 0.0 { 0.0 } else { 0.52 * r.powi(n as i32 + 1) / (1.0 - r) };
                best = best.min(tail);
                if tail <= target {
                    let bracket = tail + ln_err.exp() + pow2(-(ctx.bits() as i32)) * (n + 1) as f64;
                    return Ok(AbelRow {
                        r,
                        value: Bracketed::new(Float::with_val(ctx.bits(), acc), bracket),
                        terms: n + 1,
                    });
                }
                w *= r;
            }
            Err(Error::GridExhausted {
                terms: row.len(),
                achieved: best,
                requested: target,
            })
        })
        .collect()
}

/// (C,1) mean of the partial sums of Σ_{n≤N} ℓₙ.
pub fn cesaro_sum_ell(n: usize, table: &CoefficientTable, ctx: &PrecisionContext) -> Result<Float> {
    let row = table.row(0)?;
    if n >= row.len() {
        return Err(Error::TableTooShort {
            needed: n,
            available: row.len(),
        });
    }
    let prec = ctx.bits() + 16;
    let mut partial = Float::new(prec);
    let mut mean = Float::new(prec);
    for l in &row[..=n] {
        partial += l;
        mean += &partial;
    }
    Ok(Float::with_val(ctx.bits(), mean / (n + 1) as u32))
}
