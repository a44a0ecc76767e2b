//! Exact integration of fractional-part integrands
//!
//! ```text
//!     ∫₁^∞ Σ_p {x}^p · P_p(log x) · x^{-e} dx ,   Re e > 1
//! ```
//!
//! On [k, k+1) the fractional part is x - k, so every piece has a closed-form
//! antiderivative x^a · Q(log x). Summing over k telescopes into a handful
//! of moment sums Σ_k k^{c-e} log^l k, evaluated once per (e, cutoff).
//! Beyond the cutoff X the integrand is handled by a tail policy.

use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numkernel::{
    bernoulli_table, ln_abs_complex, ln_gamma_f64, ln_power_integral, ln_sup_bernoulli, log_add,
    pow2, Bracketed, PrecisionContext,
};

/// Largest power of {x} accepted.
pub const MAX_FRAC_POWER: usize = 4;

/// Highest Euler-Maclaurin order tried for the halfmean tail.
const MAX_TAIL_ORDER: usize = 160;

/// How the integral over [X, ∞) is accounted for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TailPolicy {
    /// {x}^p replaced by 1/2 with bracket 1/2·∫|g|. Rigorous, loose.
    Crude,
    /// {x}^p expanded into its mean plus periodic Bernoulli functions; the
    /// Bernoulli parts are integrated by parts and the residual bounded.
    #[default]
    HalfMean,
}

impl std::str::FromStr for TailPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "crude" | "bracket_crude" => Ok(Self::Crude),
            "halfmean" | "bracket_halfmean" => Ok(Self::HalfMean),
            other => Err(Error::Domain(format!("unknown tail policy '{other}'"))),
        }
    }
}

/// Σ_p {x}^p · P_p(log x) · x^{-e}.
#[derive(Debug, Clone)]
pub struct FracIntegrand {
    exponent: Complex,
    /// parts[p][i]: coefficient of {x}^p log^i x.
    parts: Vec<Vec<Complex>>,
}

impl FracIntegrand {
    pub fn new(exponent: Complex) -> Self {
        Self {
            exponent,
            parts: Vec::new(),
        }
    }

    pub fn exponent(&self) -> &Complex {
        &self.exponent
    }

    pub fn frac_power(&self) -> usize {
        self.parts.len().saturating_sub(1)
    }

    pub fn log_degree(&self) -> usize {
        self.parts
            .iter()
            .map(|v| v.len().saturating_sub(1))
            .max()
            .unwrap_or(0)
    }

    fn slot(&mut self, p: usize, i: usize, prec: u32) -> &mut Complex {
        if self.parts.len() <= p {
            self.parts.resize_with(p + 1, Vec::new);
        }
        let row = &mut self.parts[p];
        if row.len() <= i {
            row.resize_with(i + 1, || Complex::new(prec));
        }
        &mut row[i]
    }

    /// Adds `coef · {x}^p · log^i x`.
    pub fn add_term<T>(&mut self, p: usize, i: usize, coef: T) -> &mut Self
    where
        Complex: rug::Assign<T>,
    {
        let prec = self.exponent.prec().0;
        let c = Complex::with_val(prec, coef);
        *self.slot(p, i, prec) += c;
        self
    }

    /// Adds `{x}^p · Σ_i poly[i] log^i x`.
    pub fn add_poly(&mut self, p: usize, poly: &[Float]) -> &mut Self {
        for (i, c) in poly.iter().enumerate() {
            self.add_term(p, i, c);
        }
        self
    }

    pub fn add_complex_poly(&mut self, p: usize, poly: &[Complex]) -> &mut Self {
        for (i, c) in poly.iter().enumerate() {
            self.add_term(p, i, c);
        }
        self
    }
}

/// Integrates one or more integrands sharing an exponent and cutoff.
///
/// The moment sums over k = 2..X-1 are computed on construction; each call
/// to [`FracIntegrator::integrate`] is then O(degree²).
pub struct FracIntegrator {
    exponent: Complex,
    cutoff: u64,
    policy: TailPolicy,
    max_p: usize,
    max_l: usize,
    work: u32,
    out: u32,
    floor: f64,
    ln_x: Float,
    /// moments[c - 1][l] = Σ_{k=2}^{X-1} k^{c-e} log^l k.
    moments: Vec<Vec<Complex>>,
}

impl FracIntegrator {
    pub fn new(
        exponent: &Complex,
        max_frac_power: usize,
        max_log_degree: usize,
        cutoff: u64,
        policy: TailPolicy,
        ctx: &PrecisionContext,
    ) -> Result<Self> {
        let re_e = exponent.real().to_f64();
        if !(re_e > 1.0) {
            return Err(Error::Divergent(format!(
                "Re exponent = {re_e} must exceed 1"
            )));
        }
        if cutoff < 2 {
            return Err(Error::BadCutoff(cutoff.to_string()));
        }
        if max_frac_power > MAX_FRAC_POWER {
            return Err(Error::Domain(format!(
                "power of the fractional part limited to {MAX_FRAC_POWER}"
            )));
        }
        let max_l = max_log_degree + 1;
        let xf = cutoff as f64;
        let lnx = xf.ln();
        // Size of the largest intermediate relative to an O(1) result.
        let mut mag = ln_gamma_f64(max_l as f64 + 1.0) / std::f64::consts::LN_2
            + (max_frac_power as f64 - re_e + 1.0).max(0.0) * xf.log2()
            + max_l as f64 * (lnx + 1.0).log2()
            + 2.0 * xf.log2()
            + 8.0;
        for q in 0..=max_frac_power {
            let a = Complex::with_val(64, (q as f64 + 1.0 - re_e, -exponent.imag().to_f64()));
            let a_abs = crate::numkernel::abs_f64(&a);
            if a_abs > 0.0 && a_abs < 1.0 {
                mag += (max_l as f64 + 1.0) * (1.0 / a_abs).log2();
            }
        }
        let out = ctx.bits();
        let work = out + 24 + mag.max(0.0).ceil() as u32;
        let ln_x = Float::with_val(work, cutoff).ln();
        let moments = if max_frac_power >= 1 && cutoff > 2 {
            compute_moments(exponent, max_frac_power, max_l, cutoff, work)
        } else {
            Vec::new()
        };
        Ok(Self {
            exponent: Complex::with_val(work, exponent),
            cutoff,
            policy,
            max_p: max_frac_power,
            max_l,
            work,
            out,
            floor: pow2(-(out as i32 + 16)),
            ln_x,
            moments,
        })
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn integrate(&self, f: &FracIntegrand) -> Result<Bracketed<Complex>> {
        let w = self.work;
        let diff = Complex::with_val(64, &self.exponent - &f.exponent);
        if !diff.is_zero() {
            return Err(Error::Domain("integrand exponent differs from integrator".into()));
        }
        if f.frac_power() > self.max_p || f.log_degree() + 1 > self.max_l {
            return Err(Error::Domain(format!(
                "integrand (power {}, degree {}) exceeds integrator capacity (power {}, degree {})",
                f.frac_power(),
                f.log_degree(),
                self.max_p,
                self.max_l - 1
            )));
        }
        let e = &self.exponent;
        let mut value = Complex::new(w);
        let mut bracket = self.floor;
        for (p, poly) in f.parts.iter().enumerate() {
            if poly.iter().all(|c| c.is_zero()) {
                continue;
            }
            let poly: Vec<Complex> = poly.iter().map(|c| Complex::with_val(w, c)).collect();
            if p == 0 {
                // ∫₁^∞ log^i x · x^{-e} dx = i! / (e-1)^{i+1}
                let em1 = Complex::with_val(w, e - 1u32);
                let inv = Complex::with_val(w, em1.recip_ref());
                let mut pw = inv.clone();
                let mut fact = Float::with_val(w, 1);
                for (i, c) in poly.iter().enumerate() {
                    if i > 0 {
                        fact *= i as u32;
                        pw *= &inv;
                    }
                    value += Complex::with_val(w, c * &pw) * &fact;
                }
                continue;
            }
            value += self.interior(p, &poly);
            let (v, b) = self.tail(p, &poly)?;
            value += v;
            bracket += b;
        }
        // final rounding to the caller's precision
        bracket += crate::numkernel::abs_f64(&value) * pow2(-(self.out as i32));
        Ok(Bracketed::new(Complex::with_val(self.out, value), bracket))
    }

    /// ∫₁^X {x}^p P(log x) x^{-e} dx, exact up to rounding.
    fn interior(&self, p: usize, poly: &[Complex]) -> Complex {
        let w = self.work;
        let x = self.cutoff;
        let mut total = Complex::new(w);
        for q in 0..=p {
            let d = p - q;
            let binom = Integer::from(Integer::binomial_u(p as u32, q as u32));
            // antiderivative of log^i x · x^{a-1}, a = q + 1 - e
            let a = Complex::with_val(w, (q + 1) as u32 - &self.exponent);
            let anti = antiderivative(poly, &a, w);
            let ax = Complex::with_val(w, xpow(x, &a, &self.ln_x, w) * eval_poly(&anti, &self.ln_x, w));
            // (-(X-1))^d A(X) - (-1)^d A(1)
            let mut wx = Integer::from(x - 1).pow(d as u32);
            if d % 2 == 1 {
                wx = -wx;
            }
            let mut part = Complex::with_val(w, &ax * &wx);
            let a1 = anti.first().cloned().unwrap_or_else(|| Complex::new(w));
            if d % 2 == 1 {
                part += a1;
            } else {
                part -= a1;
            }
            // Σ_k [(-(k-1))^d - (-k)^d] A(k) = Σ_{r<d} (-1)^r C(d,r) Σ_k k^{a+r} Q(log k)
            if x > 2 {
                for r in 0..d {
                    let c = q + 1 + r;
                    let mom = &self.moments[c - 1];
                    let mut s = Complex::new(w);
                    for (l, ql) in anti.iter().enumerate() {
                        s += Complex::with_val(w, ql * &mom[l]);
                    }
                    let mut coef = Integer::from(Integer::binomial_u(d as u32, r as u32));
                    if r % 2 == 1 {
                        coef = -coef;
                    }
                    part += s * coef;
                }
            }
            total += part * binom;
        }
        total
    }

    /// Contribution and bracket of ∫_X^∞ {x}^p g(x) dx with g = P(log x) x^{-e}.
    fn tail(&self, p: usize, poly: &[Complex]) -> Result<(Complex, f64)> {
        let w = self.work;
        let e = &self.exponent;
        let a = Complex::with_val(w, 1u32 - e);
        let anti = antiderivative(poly, &a, w);
        // ∫_X^∞ g = -A(X)
        let g_int = -Complex::with_val(
            w,
            xpow(self.cutoff, &a, &self.ln_x, w) * eval_poly(&anti, &self.ln_x, w),
        );
        let abs_int = abs_integral_bound(poly, e.real().to_f64(), 0, self.cutoff);
        match self.policy {
            TailPolicy::Crude => Ok((g_int / 2u32, 0.5 * abs_int)),
            TailPolicy::HalfMean => {
                // t^p = 1/(p+1) + Σ_{r=1}^p C(p+1,r)/(p+1) B_r(t)
                let mut value = Complex::with_val(w, &g_int / (p as u32 + 1));
                let mut bracket = 0.0;
                let derivs = self.tail_derivatives(poly);
                for r in 1..=p {
                    let beta = Rational::from((
                        Integer::from(Integer::binomial_u(p as u32 + 1, r as u32)),
                        p as u32 + 1,
                    ));
                    let (t, b) = self.bernoulli_tail(r, &derivs);
                    value += t * Float::with_val(w, &beta);
                    bracket += beta.to_f64().abs() * b;
                }
                Ok((value, bracket))
            }
        }
    }

    /// g^{(i)}(X) for i < MAX_TAIL_ORDER together with the coefficient tables
    /// R_i, where g^{(i)}(x) = x^{-e-i} R_i(log x).
    fn tail_derivatives(&self, poly: &[Complex]) -> Vec<(Complex, Vec<Complex>)> {
        let w = self.work;
        let mut out = Vec::with_capacity(MAX_TAIL_ORDER + 1);
        let mut r: Vec<Complex> = poly.to_vec();
        let xe = xpow(self.cutoff, &Complex::with_val(w, -&self.exponent), &self.ln_x, w);
        let xinv = Float::with_val(w, self.cutoff).recip();
        let mut xfac = xe;
        for i in 0..=MAX_TAIL_ORDER {
            let val = Complex::with_val(w, &xfac * eval_poly(&r, &self.ln_x, w));
            out.push((val, r.clone()));
            // R_{i+1} = R_i' - (e + i) R_i
            let ei = Complex::with_val(w, &self.exponent + i as u32);
            let mut next: Vec<Complex> = r.iter().map(|c| -Complex::with_val(w, c * &ei)).collect();
            for l in 1..r.len() {
                next[l - 1] += Complex::with_val(w, &r[l] * l as u32);
            }
            r = next;
            xfac *= &xinv;
        }
        out
    }

    /// ∫_X^∞ B̃_r(x) g(x) dx by repeated integration by parts, truncated at the
    /// order that minimises the residual bound.
    fn bernoulli_tail(&self, r: usize, derivs: &[(Complex, Vec<Complex>)]) -> (Complex, f64) {
        let w = self.work;
        let re_e = self.exponent.real().to_f64();
        // residual after Q terms: r!/(r+Q)! · sup|B̃_{r+Q}| · ∫_X^∞ |g^{(Q)}|
        let mut best_q = 1;
        let mut best_ln = f64::INFINITY;
        for q in 1..=MAX_TAIL_ORDER {
            let ln_int = ln_abs_integral_bound(&derivs[q].1, re_e + q as f64, self.cutoff);
            let ln_b = ln_gamma_f64(r as f64 + 1.0) - ln_gamma_f64((r + q) as f64 + 1.0)
                + ln_sup_bernoulli(r + q)
                + ln_int;
            if ln_b < best_ln {
                best_ln = ln_b;
                best_q = q;
            }
        }
        let bern = bernoulli_table((r + best_q + 2) / 2 + 1);
        let mut value = Complex::new(w);
        // r!/(r+1+i)!
        let mut ratio = Rational::from(1);
        for (i, (gi, _)) in derivs.iter().enumerate().take(best_q) {
            ratio /= (r + 1 + i) as u32;
            let idx = r + 1 + i;
            if idx % 2 == 1 {
                continue;
            }
            let b = Float::with_val(w, &bern[idx / 2]);
            let c = Float::with_val(w, &ratio) * b;
            let term = Complex::with_val(w, gi * &c);
            if i % 2 == 0 {
                value -= term;
            } else {
                value += term;
            }
        }
        (value, best_ln.exp())
    }
}

fn compute_moments(e: &Complex, max_p: usize, max_l: usize, x: u64, w: u32) -> Vec<Vec<Complex>> {
    let rows = max_p;
    let real = e.imag().is_zero();
    let e_int = if real && e.real().is_integer() {
        e.real().to_i32_saturating()
    } else {
        None
    };
    if real {
        let mut sums = vec![vec![Float::new(w); max_l + 1]; rows];
        let one_minus_e = Float::with_val(w, 1u32 - e.real());
        let mut lp = Float::new(w);
        for k in 2..x {
            let l = Float::with_val(w, k).ln();
            // k^{1-e}
            let mut base = match e_int {
                Some(n) => Float::with_val(w, k).pow(1 - n),
                None => Float::with_val(w, &one_minus_e * &l).exp(),
            };
            for row in sums.iter_mut() {
                lp.assign_from(&base);
                for (li, s) in row.iter_mut().enumerate() {
                    if li > 0 {
                        lp *= &l;
                    }
                    *s += &lp;
                }
                base *= k;
            }
        }
        sums.into_iter()
            .map(|row| row.into_iter().map(|v| Complex::with_val(w, v)).collect())
            .collect()
    } else {
        let mut sums = vec![vec![Complex::new(w); max_l + 1]; rows];
        let one_minus_e = Complex::with_val(w, 1u32 - e);
        let mut lp = Complex::new(w);
        for k in 2..x {
            let l = Float::with_val(w, k).ln();
            let mut base = Complex::with_val(w, &one_minus_e * &l).exp();
            for row in sums.iter_mut() {
                lp.assign_from(&base);
                for (li, s) in row.iter_mut().enumerate() {
                    if li > 0 {
                        lp *= &l;
                    }
                    *s += &lp;
                }
                base *= k;
            }
        }
        sums
    }
}

trait AssignFrom<T> {
    fn assign_from(&mut self, src: &T);
}

impl AssignFrom<Float> for Float {
    fn assign_from(&mut self, src: &Float) {
        rug::Assign::assign(self, src);
    }
}

impl AssignFrom<Complex> for Complex {
    fn assign_from(&mut self, src: &Complex) {
        rug::Assign::assign(self, src);
    }
}

/// Coefficients Q with d/dx [x^a Q(log x)] = P(log x) x^{a-1}.
/// For a = 0 the factor x^a is 1 and Q is the plain log-antiderivative.
pub(crate) fn antiderivative(poly: &[Complex], a: &Complex, w: u32) -> Vec<Complex> {
    let n = poly.len();
    let mut q = vec![Complex::new(w); n + 1];
    if a.is_zero() {
        for (i, c) in poly.iter().enumerate() {
            q[i + 1] = Complex::with_val(w, c / (i as u32 + 1));
        }
        return q;
    }
    let inv = Complex::with_val(w, a.recip_ref());
    for (i, c) in poly.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // (-1)^j i!/(i-j)! / a^{j+1}
        let mut t = Complex::with_val(w, c * &inv);
        for j in 0..=i {
            if j > 0 {
                t *= &inv;
                t *= (i - j + 1) as u32;
                t = -t;
            }
            q[i - j] += &t;
        }
    }
    q.truncate(n.max(1));
    q
}

pub(crate) fn eval_poly(poly: &[Complex], x: &Float, w: u32) -> Complex {
    let mut acc = Complex::new(w);
    for c in poly.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

/// x^a for integer x with log x supplied.
pub(crate) fn xpow(x: u64, a: &Complex, ln_x: &Float, w: u32) -> Complex {
    if a.imag().is_zero() && a.real().is_integer() {
        if let Some(n) = a.real().to_i32_saturating() {
            return Complex::with_val(w, Float::with_val(w, x).pow(n));
        }
    }
    Complex::with_val(w, a * ln_x).exp()
}

/// ln of an upper bound for ∫_X^∞ x^{-σ} |R(log x)| dx, σ > 1.
fn ln_abs_integral_bound(r: &[Complex], sigma: f64, x: u64) -> f64 {
    let lnx = (x as f64).ln();
    let mut acc = f64::NEG_INFINITY;
    for (l, c) in r.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let t = ln_abs_complex(c) + ln_power_integral(sigma, l, lnx);
        acc = log_add(acc, t);
    }
    acc
}

fn abs_integral_bound(poly: &[Complex], sigma: f64, shift: usize, x: u64) -> f64 {
    ln_abs_integral_bound(poly, sigma + shift as f64, x).exp()
}
