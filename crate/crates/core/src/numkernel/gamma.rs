use rug::float::Constant;
use rug::{Complex, Float};

use super::combinatorics::bernoulli_table;
use super::{ComplexPoint, PrecisionContext};
use crate::error::{Error, Result};

/// Principal-branch log Γ(z) (analytic continuation from the positive real
/// axis, cut along the negative reals).
///
/// Stirling series at w = z + S with Re w large enough that the optimal
/// truncation error drops below 2^-(bits+16); the shift is undone with a
/// sum of principal logarithms.
pub fn log_gamma(z: &ComplexPoint, ctx: &PrecisionContext) -> Result<Complex> {
    log_gamma_mp(&z.to_complex(ctx.bits()), ctx)
}

pub fn log_gamma_mp(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let re = z.real().to_f64();
    if z.imag().is_zero() && z.real() <= &0 && z.real().is_integer() {
        return Err(Error::Pole {
            at: format!("Gamma({re})"),
        });
    }
    let prec = ctx.bits() + 16;
    let target_ln = -(f64::from(prec)) * std::f64::consts::LN_2;

    // e^{-2π|w|} ≈ 2^-prec at the optimal truncation point.
    let radius = (f64::from(prec) * std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI)).max(8.0) + 2.0;
    let im = z.imag().to_f64();
    let need_re = (radius * radius - im * im).max(0.0).sqrt().max(radius * 0.25);
    let shift = if re >= need_re {
        0
    } else {
        (need_re - re).ceil() as u32
    };

    let mut w = Complex::with_val(prec, z);
    w += shift;
    let w_abs_ln = super::ln_abs_complex(&w);

    // Pick the number of correction terms from the size of the terms.
    let bern = bernoulli_table(((prec as usize) / 2).max(16));
    let mut terms = 0usize;
    for j in 1..bern.len() {
        let b = super::ln_abs(&Float::with_val(64, &bern[j]));
        let mag = b - ((2 * j) as f64 * (2 * j - 1) as f64).ln() - (2 * j - 1) as f64 * w_abs_ln;
        terms = j;
        // Remainder is at most twice the first omitted term for Re w > 0.
        if mag + 1.0 < target_ln {
            break;
        }
    }

    let half = Float::with_val(prec, 0.5);
    let ln_w = Complex::with_val(prec, w.ln_ref());
    let mut acc = Complex::with_val(prec, &w - &half) * &ln_w;
    acc -= &w;
    let ln_2pi = Float::with_val(prec, Constant::Pi) * 2u32;
    acc += ln_2pi.ln() * &half;

    let w_inv = Complex::with_val(prec, w.recip_ref());
    let w_inv2 = Complex::with_val(prec, w_inv.square_ref());
    let mut pow = w_inv; // w^{-(2j-1)}
    for (j, b) in bern.iter().enumerate().take(terms).skip(1) {
        let coef = Float::with_val(prec, b) / ((2 * j) as u64 * (2 * j - 1) as u64);
        acc += Complex::with_val(prec, &pow * &coef);
        pow *= &w_inv2;
    }

    if shift > 0 {
        let mut re_part = Float::with_val(prec, 0);
        let mut im_part = Float::with_val(prec, 0);
        for k in 0..shift {
            let mut f = Complex::with_val(prec, z);
            f += k;
            let a = Float::with_val(prec, f.abs_ref());
            re_part += a.ln();
            im_part += Float::with_val(prec, f.arg_ref());
        }
        let correction = Complex::with_val(prec, (re_part, im_part));
        acc -= correction;
    }
    Ok(Complex::with_val(ctx.bits(), acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(128, 1e-30).unwrap()
    }

    fn close(a: &Complex, re: &Float, im: f64, tol: f64) -> bool {
        let dr = Float::with_val(128, a.real() - re).abs().to_f64();
        let di = (a.imag().to_f64() - im).abs();
        dr < tol && di < tol
    }

    #[test]
    fn integer_and_half_integer_values() {
        let c = ctx();
        let one = log_gamma(&ComplexPoint::real(1.0).unwrap(), &c).unwrap();
        assert!(close(&one, &Float::new(128), 0.0, 1e-30));
        let half = log_gamma(&ComplexPoint::real(0.5).unwrap(), &c).unwrap();
        let expect = Float::with_val(128, Constant::Pi).ln() / 2u32;
        assert!(close(&half, &expect, 0.0, 1e-30));
        let five = log_gamma(&ComplexPoint::real(5.0).unwrap(), &c).unwrap();
        let expect = Float::with_val(128, 24).ln();
        assert!(close(&five, &expect, 0.0, 1e-30));
    }

    #[test]
    fn poles_rejected() {
        for x in [0.0, -1.0, -7.0] {
            assert!(matches!(
                log_gamma(&ComplexPoint::real(x).unwrap(), &ctx()),
                Err(Error::Pole { .. })
            ));
        }
    }

    #[test]
    fn matches_mpfr_on_positive_reals() {
        let c = ctx();
        for x in [0.1, 1.7, 3.25, 12.5, 90.0] {
            let ours = log_gamma(&ComplexPoint::real(x).unwrap(), &c).unwrap();
            let reference = Float::with_val(160, x).ln_gamma();
            let d = Float::with_val(128, ours.real() - &reference).abs().to_f64();
            assert!(d < 1e-32, "x = {x}: {d:e}");
        }
    }

    #[test]
    fn recurrence_in_complex_plane() {
        // log Γ(z+1) = log Γ(z) + log z for Re z > 0 (no branch crossing).
        let c = ctx();
        let z = ComplexPoint::new(0.3, 4.2).unwrap().to_complex(128);
        let zp = Complex::with_val(128, &z + 1u32);
        let a = log_gamma_mp(&z, &c).unwrap();
        let b = log_gamma_mp(&zp, &c).unwrap();
        let lz = Complex::with_val(128, z.ln_ref());
        let d = Complex::with_val(128, &b - &a) - lz;
        assert!(super::super::abs_f64(&d) < 1e-30);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn reflection_formula(re in -6.0f64..6.0, im in -8.0f64..8.0) {
            prop_assume!((re - re.round()).abs() > 0.05 || im.abs() > 0.05);
            let c = ctx();
            let prec = 128;
            let z = ComplexPoint::new(re, im).unwrap().to_complex(prec);
            let zr = Complex::with_val(prec, 1u32 - &z);
            let a = log_gamma_mp(&z, &c).unwrap();
            let b = log_gamma_mp(&zr, &c).unwrap();
            let e = Complex::with_val(prec, &a + &b).exp();
            let pi = Float::with_val(prec, Constant::Pi);
            let pz = Complex::with_val(prec, &z * &pi);
            let s = Complex::with_val(prec, pz.sin_ref()) / pi;
            let one = Complex::with_val(prec, &e * &s) - 1u32;
            prop_assert!(super::super::abs_f64(&one) < 1e-25);
        }
    }
}
