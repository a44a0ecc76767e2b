//! The basis 𝓛ₙ⁽ᵐ⁾(x) = Lₙ⁽ᵐ⁾(log x) on (1, ∞) and the inner products of
//! ℋₘ, the L² space with weight logᵐx / (m! x²).

use std::sync::Arc;

use rug::{Complex, Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numkernel::{
    abs_f64, ln_gamma_f64, ln_power_integral, pow2, Bracketed, ComplexPoint, PrecisionContext,
};
use crate::oracle::fracint::{FracIntegrand, FracIntegrator, TailPolicy, MAX_FRAC_POWER};
use crate::zeta::SeriesResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LaguerreParams {
    pub n: usize,
    pub m: usize,
}

impl LaguerreParams {
    pub fn new(n: usize, m: usize) -> Self {
        Self { n, m }
    }
}

/// Identifies ℋₘ. The weight logᵐx/(m! x²) has unit mass on (1, ∞).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HilbertSpaceTag {
    pub m: usize,
}

impl HilbertSpaceTag {
    pub fn new(m: usize) -> Self {
        Self { m }
    }

    pub fn weight(&self, x: f64) -> f64 {
        if x <= 1.0 {
            return 0.0;
        }
        (self.m as f64 * x.ln().ln() - ln_gamma_f64(self.m as f64 + 1.0)).exp() / (x * x)
    }
}

fn check_domain(x: &Float) -> Result<()> {
    if x.is_nan() || *x <= 1 {
        return Err(Error::Domain(format!(
            "Laguerre functions are evaluated on x > 1, got {}",
            x.to_f64()
        )));
    }
    Ok(())
}

/// 𝓛₀⁽ᵐ⁾..𝓛_N⁽ᵐ⁾ at u = log x by the three-term recurrence.
pub fn row_at_log(n_max: usize, m: usize, u: &Float, prec: u32) -> Vec<Float> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(Float::with_val(prec, 1));
    if n_max == 0 {
        return out;
    }
    out.push(Float::with_val(prec, (m + 1) as u32) - u);
    for n in 1..n_max {
        // (n+1) L_{n+1} = (2n+1+m-u) L_n - (n+m) L_{n-1}
        let a = Float::with_val(prec, (2 * n + 1 + m) as u32) - u;
        let mut next = a * &out[n];
        next -= Float::with_val(prec, &out[n - 1] * (n + m) as u32);
        next /= (n + 1) as u32;
        out.push(next);
    }
    out
}

/// 𝓛ₙ⁽ᵐ⁾(x) by upward recurrence.
pub fn eval_recurrence(p: LaguerreParams, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    check_domain(x)?;
    let prec = ctx.bits() + 16;
    let u = Float::with_val(prec, x.ln_ref());
    let row = row_at_log(p.n, p.m, &u, prec);
    Ok(Float::with_val(ctx.bits(), &row[p.n]))
}

/// Coefficients of 𝓛ₙ⁽ᵐ⁾ as a polynomial in log x:
/// c_k = C(n+m, n-k) (-1)^k / k!.
pub fn explicit_coefficients(n: usize, m: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut fact = Integer::from(1);
    for k in 0..=n {
        if k > 0 {
            fact *= k as u32;
        }
        let c = Integer::from(Integer::binomial_u((n + m) as u32, (n - k) as u32));
        let mut r = Rational::from((c, fact.clone()));
        if k % 2 == 1 {
            r = -r;
        }
        out.push(r);
    }
    out
}

/// 𝓛ₙ⁽ᵐ⁾(x) from the explicit sum. Cancels badly for large n·log x; kept
/// as a cross-check of the recurrence.
pub fn eval_explicit(p: LaguerreParams, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    check_domain(x)?;
    let prec = ctx.bits() + 16 + 2 * p.n as u32;
    let u = Float::with_val(prec, x.ln_ref());
    let mut acc = Float::new(prec);
    for c in explicit_coefficients(p.n, p.m).iter().rev() {
        acc *= &u;
        acc += c;
    }
    Ok(Float::with_val(ctx.bits(), acc))
}

/// Partial sum Σ_{n≤N} 𝓛ₙ⁽ᵐ⁾(x) ((s-1)/s)ⁿ of the generating function of
/// s^{m+1} x^{1-s}. `tail_bound` carries the exact residual against the
/// closed form.
pub fn partial_sum_check(
    m: usize,
    x: &Float,
    s: ComplexPoint,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<SeriesResult> {
    check_domain(x)?;
    if s.abs() == 0.0 {
        return Err(Error::Pole { at: "s = 0".into() });
    }
    let ratio = s.series_ratio();
    if !(ratio < 1.0) {
        return Err(Error::Divergence { ratio });
    }
    let prec = ctx.bits() + 16;
    let sc = s.to_complex(prec);
    let w = Complex::with_val(prec, &sc - 1u32) / &sc;
    let u = Float::with_val(prec, x.ln_ref());
    let row = row_at_log(n, m, &u, prec);
    let mut acc = Complex::new(prec);
    let mut pw = Complex::with_val(prec, 1);
    for l in &row {
        acc += Complex::with_val(prec, &pw * l);
        pw *= &w;
    }
    // s^{m+1} x^{1-s} = s^{m+1} exp((1-s) log x)
    let mut target = Complex::with_val(prec, 1);
    for _ in 0..=m {
        target *= &sc;
    }
    let e = Complex::with_val(prec, 1u32 - &sc) * &u;
    target *= e.exp();
    let residual = crate::numkernel::abs_f64(&Complex::with_val(prec, &acc - &target));
    Ok(SeriesResult {
        value: Complex::with_val(ctx.bits(), acc),
        terms_used: n + 1,
        tail_bound: residual,
        ratio,
        coeff_error: 0.0,
    })
}

/// f(x) = {x}^p · P(log x) · x^{-decay}.
#[derive(Debug, Clone)]
pub struct StructuredFn {
    pub log_poly: Vec<Float>,
    pub frac_power: usize,
    pub decay: f64,
}

impl StructuredFn {
    pub fn log_poly(poly: Vec<Float>) -> Self {
        Self {
            log_poly: poly,
            frac_power: 0,
            decay: 0.0,
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::log_poly(vec![Float::with_val(prec, 1)])
    }

    /// {x}^p.
    pub fn frac(p: usize, prec: u32) -> Self {
        Self {
            log_poly: vec![Float::with_val(prec, 1)],
            frac_power: p,
            decay: 0.0,
        }
    }

    pub fn laguerre(p: LaguerreParams, prec: u32) -> Self {
        let poly = explicit_coefficients(p.n, p.m)
            .iter()
            .map(|c| Float::with_val(prec, c))
            .collect();
        Self::log_poly(poly)
    }

    pub fn times(&self, other: &StructuredFn) -> StructuredFn {
        let prec = self
            .log_poly
            .iter()
            .chain(&other.log_poly)
            .map(|c| c.prec())
            .max()
            .unwrap_or(64);
        let mut poly = vec![Float::new(prec); self.log_poly.len() + other.log_poly.len() - 1];
        for (i, a) in self.log_poly.iter().enumerate() {
            for (j, b) in other.log_poly.iter().enumerate() {
                poly[i + j] += Float::with_val(prec, a * b);
            }
        }
        StructuredFn {
            log_poly: poly,
            frac_power: self.frac_power + other.frac_power,
            decay: self.decay + other.decay,
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let u = x.ln();
        let p = self.log_poly.iter().rev().fold(0.0, |acc, c| acc * u + c.to_f64());
        p * x.fract().powi(self.frac_power as i32) * x.powf(-self.decay)
    }
}

/// A bounded function known only through point evaluation.
#[derive(Clone)]
pub struct OpaqueFn {
    pub f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// sup |f| on (1, ∞).
    pub sup: f64,
    /// Set when f may jump or kink at integers.
    pub breaks_at_integers: bool,
}

impl std::fmt::Debug for OpaqueFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OpaqueFn")
            .field("sup", &self.sup)
            .field("breaks_at_integers", &self.breaks_at_integers)
            .finish()
    }
}

/// Integrand handle for [`inner_product`]. Structured handles integrate in
/// closed form; opaque ones fall back to adaptive quadrature.
#[derive(Debug, Clone)]
pub enum FnHandle {
    Structured(StructuredFn),
    Opaque(OpaqueFn),
}

impl FnHandle {
    fn eval_f64(&self, x: f64) -> f64 {
        match self {
            FnHandle::Structured(s) => s.eval_f64(x),
            FnHandle::Opaque(o) => (o.f)(x),
        }
    }

    fn sup(&self) -> Option<f64> {
        match self {
            FnHandle::Opaque(o) => Some(o.sup),
            FnHandle::Structured(_) => None,
        }
    }

    fn breaks(&self) -> bool {
        match self {
            FnHandle::Opaque(o) => o.breaks_at_integers,
            FnHandle::Structured(s) => s.frac_power > 0,
        }
    }
}

/// ⟨f, g⟩₍ₘ₎ = (1/m!) ∫₁^∞ f g logᵐx / x² dx with an absolute bracket at
/// most the context tolerance.
pub fn inner_product(
    f: &FnHandle,
    g: &FnHandle,
    m: usize,
    ctx: &PrecisionContext,
) -> Result<Bracketed<Float>> {
    match (f, g) {
        (FnHandle::Structured(a), FnHandle::Structured(b)) => structured_inner(a, b, m, ctx),
        _ => opaque_inner(f, g, m, ctx),
    }
}

fn structured_inner(
    a: &StructuredFn,
    b: &StructuredFn,
    m: usize,
    ctx: &PrecisionContext,
) -> Result<Bracketed<Float>> {
    let prod = a.times(b);
    let e = 2.0 + prod.decay;
    if !(e > 1.0) {
        return Err(Error::Divergent(format!("integrand decays like x^-{e}")));
    }
    if prod.frac_power > MAX_FRAC_POWER {
        return Err(Error::Domain(format!(
            "combined fractional-part power {} exceeds {MAX_FRAC_POWER}",
            prod.frac_power
        )));
    }
    // the log polynomial alternates in sign; carry guard bits through the
    // cancellation so only the final rounding matters
    let wctx = ctx.elevated(32 + 2 * (prod.log_poly.len() + m) as u32);
    let prec = wctx.bits();
    let mut fact = Integer::from(1);
    for k in 2..=m {
        fact *= k as u32;
    }
    let mut poly = vec![Float::new(prec); m];
    for c in &prod.log_poly {
        poly.push(Float::with_val(prec, c / &fact));
    }
    let exponent = Complex::with_val(prec, (e, 0));
    let mut integrand = FracIntegrand::new(exponent.clone());
    integrand.add_poly(prod.frac_power, &poly);
    let tol = ctx.tolerance() / 2.0;
    let mut cutoff = 256u64;
    loop {
        let integ = FracIntegrator::new(
            &exponent,
            prod.frac_power,
            poly.len() - 1,
            cutoff,
            TailPolicy::HalfMean,
            &wctx,
        )?;
        let mut r = integ.integrate(&integrand)?;
        r.bracket += abs_f64(&r.value) * pow2(-(ctx.bits() as i32));
        if r.bracket <= tol || prod.frac_power == 0 || cutoff >= 1 << 20 {
            if !(r.bracket <= ctx.tolerance()) {
                return Err(Error::PrecisionInsufficient {
                    what: "inner product".into(),
                    achieved: r.bracket,
                    target: ctx.tolerance(),
                });
            }
            return Ok(Bracketed::new(Float::with_val(ctx.bits(), r.value.real()), r.bracket));
        }
        cutoff *= 4;
    }
}

fn opaque_inner(
    f: &FnHandle,
    g: &FnHandle,
    m: usize,
    ctx: &PrecisionContext,
) -> Result<Bracketed<Float>> {
    // Only the tail needs a bound; a structured factor contributes its
    // polynomial growth, which the weight envelope cannot absorb.
    let (sup, extra_deg) = match (f.sup(), g.sup()) {
        (Some(a), Some(b)) => (a * b, 0),
        (Some(a), None) | (None, Some(a)) => {
            let s = match (f, g) {
                (FnHandle::Structured(s), _) | (_, FnHandle::Structured(s)) => s,
                _ => unreachable!(),
            };
            let c: f64 = s.log_poly.iter().map(|c| c.to_f64().abs()).sum();
            (a * c, s.log_poly.len() - 1)
        }
        (None, None) => unreachable!(),
    };
    if !sup.is_finite() {
        return Err(Error::Divergent("opaque integrand without a finite bound".into()));
    }
    let tol = ctx.tolerance();
    let lnm = ln_gamma_f64(m as f64 + 1.0);
    let breaks = f.breaks() || g.breaks();
    let cap: u64 = if breaks { 1 << 16 } else { 1 << 40 };
    // tail over [X, ∞): sup · ∫ max(1, log^d) log^m x / (m! x²)
    let tail = |x: u64| -> f64 {
        let lx = (x as f64).ln();
        sup * (ln_power_integral(2.0, m + extra_deg, lx) - lnm).exp()
    };
    let mut x = 16u64;
    while tail(x) > tol / 2.0 && x < cap {
        x *= 2;
    }
    let h = |t: f64| -> f64 {
        let w = HilbertSpaceTag::new(m).weight(t);
        f.eval_f64(t) * g.eval_f64(t) * w
    };
    let mut value = 0.0;
    let mut err = 0.0;
    let piece_tol = tol / 4.0 / (x as f64);
    if breaks {
        for k in 1..x {
            let r = quadrature::integrate(h, k as f64, (k + 1) as f64, piece_tol);
            value += r.integral;
            err += r.error_estimate;
        }
    } else {
        let mut a = 1.0f64;
        while a < x as f64 {
            let b = (2.0 * a).min(x as f64);
            let r = quadrature::integrate(h, a, b, tol / 128.0);
            value += r.integral;
            err += r.error_estimate;
            a = b;
        }
    }
    let bracket = err + tail(x) + value.abs() * f64::EPSILON * 4.0;
    if !(bracket <= tol) {
        return Err(Error::PrecisionInsufficient {
            what: "inner product (adaptive quadrature)".into(),
            achieved: bracket,
            target: tol,
        });
    }
    Ok(Bracketed::new(Float::with_val(ctx.bits(), value), bracket))
}

/// Gram matrix ⟨𝓛ₙ⁽ᵐ⁾, 𝓛ₖ⁽ᵐ⁾⟩₍ₘ₎ for n, k ≤ N.
pub fn gram(n_max: usize, m: usize, ctx: &PrecisionContext) -> Result<Vec<Vec<Bracketed<Float>>>> {
    // products of the explicit forms cancel by up to C(2n+2m, n)² before
    // integration, so the coefficients are rounded with matching guard bits
    let prec = ctx.bits() + 32 + 4 * (n_max + m) as u32;
    let basis: Vec<FnHandle> = (0..=n_max)
        .map(|n| FnHandle::Structured(StructuredFn::laguerre(LaguerreParams::new(n, m), prec)))
        .collect();
    let mut out: Vec<Vec<Bracketed<Float>>> = vec![Vec::with_capacity(n_max + 1); n_max + 1];
    for i in 0..=n_max {
        for j in 0..=n_max {
            let v = if j < i {
                out[j][i].clone()
            } else {
                inner_product(&basis[i], &basis[j], m, ctx)?
            };
            out[i].push(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rug::float::Constant;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(128, 1e-30).unwrap()
    }

    fn e_pow(k: u32, prec: u32) -> Float {
        Float::with_val(prec, k).exp()
    }

    fn diff(a: &Float, b: &Float) -> f64 {
        Float::with_val(a.prec().max(b.prec()), a - b).abs().to_f64()
    }

    #[test]
    fn low_degree_values() {
        let c = ctx();
        let x = Float::with_val(128, 7.2);
        assert_eq!(eval_recurrence(LaguerreParams::new(0, 3), &x, &c).unwrap(), 1);
        let e = e_pow(1, 128);
        let v = eval_recurrence(LaguerreParams::new(1, 0), &e, &c).unwrap();
        assert!(v.to_f64().abs() < 1e-35);
        let v = eval_recurrence(LaguerreParams::new(2, 0), &e, &c).unwrap();
        assert!((v.to_f64() + 0.5).abs() < 1e-35);
        let v = eval_explicit(LaguerreParams::new(1, 2), &e, &c).unwrap();
        assert!((v.to_f64() - 2.0).abs() < 1e-35);
        let five = Float::with_val(128, 5);
        assert_eq!(eval_explicit(LaguerreParams::new(0, 0), &five, &c).unwrap(), 1);
    }

    #[test]
    fn explicit_matches_recurrence_at_e_squared() {
        let c = ctx();
        let x = e_pow(2, 128);
        let p = LaguerreParams::new(3, 0);
        let a = eval_recurrence(p, &x, &c).unwrap();
        let b = eval_explicit(p, &x, &c).unwrap();
        assert!(diff(&a, &b) < 1e-20);
        // L_3(2) = 1 - 3·2 + 3·4/2 - 8/6 = -1/3
        assert!((a.to_f64() + 1.0 / 3.0).abs() < 1e-30);
    }

    #[test]
    fn domain_is_enforced() {
        let c = ctx();
        for x in [1.0, 0.5, -2.0] {
            let x = Float::with_val(128, x);
            assert!(matches!(
                eval_recurrence(LaguerreParams::new(2, 1), &x, &c),
                Err(Error::Domain(_))
            ));
            assert!(eval_explicit(LaguerreParams::new(2, 1), &x, &c).is_err());
        }
    }

    #[test]
    fn generating_function() {
        let c = ctx();
        let four = Float::with_val(128, 4);
        let s = ComplexPoint::real(2.0).unwrap();
        let r = partial_sum_check(0, &four, s, 200, &c).unwrap();
        assert!((r.value.real().to_f64() - 0.5).abs() < 1e-20);
        assert!(r.tail_bound < 1e-20);

        let one = ComplexPoint::real(1.0).unwrap();
        let r = partial_sum_check(0, &four, one, 0, &c).unwrap();
        assert_eq!(*r.value.real(), 1);

        let e = e_pow(1, 128);
        let s = ComplexPoint::real(1.5).unwrap();
        let r = partial_sum_check(1, &e, s, 200, &c).unwrap();
        assert!(r.tail_bound < 1e-10, "{}", r.tail_bound);
    }

    #[test]
    fn generating_function_residual_decays_geometrically() {
        let c = ctx();
        let x = Float::with_val(128, 3);
        let s = ComplexPoint::new(1.5, 1.0).unwrap();
        let mut prev = f64::INFINITY;
        for n in [20, 40, 80, 160] {
            let r = partial_sum_check(2, &x, s, n, &c).unwrap();
            assert!(r.tail_bound < prev);
            prev = r.tail_bound;
        }
        assert!(prev < 1e-12);
    }

    #[test]
    fn generating_function_refuses_outside_disc() {
        let x = Float::with_val(128, 3);
        for s in [ComplexPoint::new(0.5, 2.0).unwrap(), ComplexPoint::real(0.2).unwrap()] {
            assert!(matches!(
                partial_sum_check(0, &x, s, 10, &ctx()),
                Err(Error::Divergence { .. })
            ));
        }
    }

    #[test]
    fn gram_is_diagonal_binomial() {
        let c = PrecisionContext::new(128, 1e-25).unwrap();
        for m in 0..=3 {
            let g = gram(12, m, &c).unwrap();
            for n in 0..=12 {
                for k in 0..=12 {
                    let expect = if n == k {
                        Integer::from(Integer::binomial_u((n + m) as u32, m as u32)).to_f64()
                    } else {
                        0.0
                    };
                    let d = (g[n][k].value.to_f64() - expect).abs();
                    assert!(d <= g[n][k].bracket + 1e-25 * expect.max(1.0), "m={m} n={n} k={k}: {d:e}");
                }
            }
        }
    }

    #[test]
    fn normalized_weight_and_fractional_part() {
        let c = PrecisionContext::new(128, 1e-20).unwrap();
        let one = FnHandle::Structured(StructuredFn::one(160));
        for m in 0..4 {
            let r = inner_product(&one, &one, m, &c).unwrap();
            assert!((r.value.to_f64() - 1.0).abs() < 1e-20);
        }
        let frac = FnHandle::Structured(StructuredFn::frac(1, 160));
        let l0 = FnHandle::Structured(StructuredFn::laguerre(LaguerreParams::new(0, 0), 160));
        let r = inner_product(&frac, &l0, 0, &c).unwrap();
        let expect = 1.0 - Float::with_val(128, Constant::Euler).to_f64();
        assert!((r.value.to_f64() - expect).abs() < 1e-15);
        assert!(r.bracket <= 1e-20);
    }

    #[test]
    fn opaque_fallback_agrees_with_closed_form() {
        let c = PrecisionContext::new(128, 1e-9).unwrap();
        let frac = FnHandle::Opaque(OpaqueFn {
            f: Arc::new(|x: f64| x.fract()),
            sup: 1.0,
            breaks_at_integers: true,
        });
        let one = FnHandle::Structured(StructuredFn::one(128));
        // Needs a loose tolerance: the weight tail decays only like 1/X.
        let loose = PrecisionContext::new(128, 1e-4).unwrap();
        let r = inner_product(&frac, &one, 0, &loose).unwrap();
        let expect = 1.0 - Float::with_val(128, Constant::Euler).to_f64();
        assert!((r.value.to_f64() - expect).abs() <= r.bracket);
        let smooth = FnHandle::Opaque(OpaqueFn {
            f: Arc::new(|x: f64| (-x).exp()),
            sup: 1.0,
            breaks_at_integers: false,
        });
        // E_2(2) = e^{-2} - 2 E_1(2)
        let r = inner_product(&smooth, &smooth, 0, &c).unwrap();
        assert!((r.value.to_f64() - 0.037_534_261_820_49).abs() <= r.bracket + 1e-12);
    }

    #[test]
    fn non_integrable_rejected() {
        let grow = FnHandle::Structured(StructuredFn {
            log_poly: vec![Float::with_val(64, 1)],
            frac_power: 0,
            decay: -1.5,
        });
        assert!(matches!(
            inner_product(&grow, &grow, 0, &ctx()),
            Err(Error::Divergent(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn recurrence_agrees_with_explicit(n in 0usize..=30, m in 0usize..=5, lx in 0.001f64..6.9) {
            let c = ctx();
            let x = Float::with_val(128, lx).exp();
            let p = LaguerreParams::new(n, m);
            let a = eval_recurrence(p, &x, &c).unwrap();
            let b = eval_explicit(p, &x, &c).unwrap();
            let scale = a.to_f64().abs().max(1.0);
            prop_assert!(diff(&a, &b) <= scale * 2f64.powi(-128 + 16));
        }

        #[test]
        fn cumulative_sum_raises_order(n in 0usize..=25, m in 0usize..=4, lx in 0.01f64..8.0) {
            let u = Float::with_val(160, lx);
            let row = row_at_log(n, m, &u, 160);
            let up = row_at_log(n, m + 1, &u, 160);
            let sum = row.iter().fold(Float::new(160), |a, b| a + b);
            let scale = up[n].to_f64().abs().max(1.0);
            prop_assert!(diff(&sum, &up[n]) < 1e-35 * scale);
        }

        #[test]
        fn derivative_identity(n in 0usize..=10, m in 0usize..=3, x0 in 1.2f64..50.0) {
            // d/dx [𝓛ₙ⁽ᵐ⁾(x)/x] = -𝓛ₙ⁽ᵐ⁺¹⁾(x)/x², checked by central differences
            let prec = 256;
            let c = PrecisionContext::new(prec, 1e-60).unwrap();
            let x = Float::with_val(prec, x0);
            let p = LaguerreParams::new(n, m);
            let g = |t: &Float| eval_recurrence(p, t, &c).unwrap() / t;
            let rhs = -eval_recurrence(LaguerreParams::new(n, m + 1), &x, &c).unwrap()
                / Float::with_val(prec, x.square_ref());
            let mut prev = f64::INFINITY;
            let mut h = Float::with_val(prec, 1e-3);
            for _ in 0..4 {
                let xp = Float::with_val(prec, &x + &h);
                let xm = Float::with_val(prec, &x - &h);
                let fd = (g(&xp) - g(&xm)) / Float::with_val(prec, &h * 2u32);
                let e = diff(&fd, &rhs);
                prop_assert!(e < prev || e < 1e-40);
                prev = e;
                h /= 2u32;
            }
            prop_assert!(prev < 1e-7 * rhs.to_f64().abs().max(1.0));
        }
    }
}
