//! End-to-end identity checks. Every item reports a residual and the bound
//! it must stay under.

use rug::float::Constant;
use rug::{Complex, Float, Integer};
use zl_core::coefficients::{egf_check, parseval_partial, CoefficientTable};
use zl_core::fracexpand::{self, l2_error, l2_error_direct};
use zl_core::laguerre::{self, inner_product, FnHandle, LaguerreParams, StructuredFn};
use zl_core::numkernel::abs_f64;
use zl_core::oracle::{self, TailPolicy};
use zl_core::stieltjes::{self, BatchTarget, CERT_CUTOFF};
use zl_core::{zeta, ComplexPoint, PrecisionContext};

use crate::config::{RunConfig, Suite};
use crate::output::{f64_text, Output, Table};

#[derive(Debug, Clone)]
pub struct Item {
    pub suite: Suite,
    pub identity: String,
    pub residual: f64,
    pub bound: f64,
    /// Set when the computation itself failed.
    pub error: Option<String>,
}

impl Item {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.residual <= self.bound
    }
}

struct Sink<'a> {
    suite: Suite,
    items: &'a mut Vec<Item>,
}

impl Sink<'_> {
    fn check(&mut self, identity: impl Into<String>, residual: f64, bound: f64) {
        self.items.push(Item {
            suite: self.suite,
            identity: identity.into(),
            residual,
            bound,
            error: None,
        });
    }

    fn fail(&mut self, identity: impl Into<String>, e: impl std::fmt::Display) {
        self.items.push(Item {
            suite: self.suite,
            identity: identity.into(),
            residual: f64::NAN,
            bound: 0.0,
            error: Some(e.to_string()),
        });
    }
}

type R<T> = zl_core::Result<T>;

fn fdist(a: &Float, b: &Float) -> f64 {
    Float::with_val(a.prec().max(b.prec()), a - b).abs().to_f64()
}

fn cdist(a: &Complex, b: &Complex) -> f64 {
    abs_f64(&Complex::with_val(a.prec().0.max(b.prec().0), a - b))
}

fn pt(re: f64, im: f64) -> ComplexPoint {
    ComplexPoint::new(re, im).expect("finite sample point")
}

pub fn run_verify(cfg: &RunConfig) -> Result<(Vec<Item>, Output), crate::error::CliError> {
    let ctx = cfg.context()?;
    let mut items = Vec::new();
    // suites run in name order
    let mut suites: Vec<Suite> = cfg.suites.iter().copied().collect();
    suites.sort_by_key(|s| s.name());
    for suite in suites {
        let mut sink = Sink {
            suite,
            items: &mut items,
        };
        let r = match suite {
            Suite::Parseval => parseval(cfg, &ctx, &mut sink),
            Suite::Orthogonality => orthogonality(cfg, &ctx, &mut sink),
            Suite::Egf => egf(cfg, &ctx, &mut sink),
            Suite::Norms => norms(cfg, &ctx, &mut sink),
            Suite::Reflection => reflection(&ctx, &mut sink),
            Suite::DualStieltjes => dual_stieltjes(cfg, &ctx, &mut sink),
            Suite::SeriesVsOracle => series_vs_oracle(&ctx, &mut sink),
            Suite::Fracpart => fracpart(cfg, &ctx, &mut sink),
        };
        if let Err(e) = r {
            sink.fail(format!("{} setup", suite.name()), e);
        }
    }
    let mut t = Table::new(&["suite", "identity", "residual", "bound", "status"]);
    for it in &items {
        let residual = match &it.error {
            Some(e) => format!("error: {e}"),
            None => f64_text(it.residual),
        };
        t.push(vec![
            it.suite.name().into(),
            it.identity.clone().into(),
            residual.into(),
            f64_text(it.bound).into(),
            if it.passed() { "pass" } else { "fail" }.into(),
        ]);
    }
    Ok((items, Output::csv(t)))
}

fn parseval(cfg: &RunConfig, ctx: &PrecisionContext, out: &mut Sink) -> R<()> {
    let table = CoefficientTable::plan(cfg.max_m, cfg.max_n, ctx)?;
    for m in 0..=cfg.max_m {
        let sums = parseval_partial(m, cfg.max_n, &table, ctx)?;
        let drop = sums
            .windows(2)
            .map(|w| Float::with_val(ctx.bits(), &w[0] - &w[1]).to_f64().max(0.0))
            .fold(0.0, f64::max);
        out.check(format!("m={m} partial sums non-decreasing"), drop, 0.0);
        let norm = oracle::hm_norm_closed(m, ctx)?;
        match l2_error(&table, m, cfg.max_n, &norm, ctx) {
            Ok(e) => out.check(
                format!("m={m} N={} partial sum <= norm^2", cfg.max_n),
                (-e.value.to_f64()).max(0.0),
                e.bracket,
            ),
            Err(e) => out.fail(format!("m={m} N={} partial sum <= norm^2", cfg.max_n), e),
        }
    }
    // the m = 0 norm reduces to log 2π - γ - 1
    let norm = oracle::hm_norm_closed(0, ctx)?;
    let p = ctx.bits() + 16;
    let anchor = Float::with_val(p, Constant::Pi) * 2u32;
    let anchor = anchor.ln() - Float::with_val(p, Constant::Euler) - 1u32;
    out.check("m=0 norm^2 = log(2pi) - gamma - 1", fdist(&norm.value, &anchor), norm.bracket + ctx.epsilon());
    Ok(())
}

fn orthogonality(cfg: &RunConfig, ctx: &PrecisionContext, out: &mut Sink) -> R<()> {
    let n_max = cfg.max_n.min(12);
    for m in 0..=cfg.max_m.min(3) {
        let g = laguerre::gram(n_max, m, ctx)?;
        let mut worst = 0.0f64;
        let mut bound = 0.0f64;
        for (n, row) in g.iter().enumerate() {
            for (k, e) in row.iter().enumerate() {
                let expect = if n == k {
                    Float::with_val(ctx.bits(), Integer::from(Integer::binomial_u((n + m) as u32, m as u32)))
                } else {
                    Float::new(ctx.bits())
                };
                worst = worst.max(fdist(&e.value, &expect));
                bound = bound.max(e.bracket);
            }
        }
        out.check(format!("m={m} gram n,k<={n_max} = diag C(n+m,m)"), worst, bound);
    }
    Ok(())
}

fn egf(cfg: &RunConfig, ctx: &PrecisionContext, out: &mut Sink) -> R<()> {
    let k = 30;
    let mm = cfg.max_m.min(3);
    let table = CoefficientTable::plan(mm, k, ctx)?;
    let zs = [(0.3, 0.0), (-0.3, 0.0), (0.0, 0.5)];
    for m in 0..=mm {
        for &(a, b) in &zs {
            let z = Complex::with_val(ctx.bits(), (a, b));
            let r = egf_check(m, &z, k, &table, ctx)?;
            out.check(format!("m={m} z={a}{:+}i K={k}", b), r, ctx.tolerance());
        }
    }
    Ok(())
}

fn norms(cfg: &RunConfig, ctx: &PrecisionContext, out: &mut Sink) -> R<()> {
    let fr = FnHandle::Structured(StructuredFn::frac(1, ctx.bits() + 16));
    for m in 0..=cfg.max_m {
        let c = oracle::hm_norm_closed(m, ctx)?;
        let q = inner_product(&fr, &fr, m, ctx)?;
        out.check(
            format!("m={m} closed form = quadrature"),
            fdist(&c.value, &q.value),
            c.bracket + q.bracket,
        );
    }
    Ok(())
}

fn reflection(ctx: &PrecisionContext, out: &mut Sink) -> R<()> {
    let one = Complex::with_val(ctx.bits(), 1);
    // points where 1 - s is exact in binary
    for s in [pt(0.25, 5.0), pt(-1.5, 2.0), pt(2.5, -7.0), pt(0.125, 30.0)] {
        let a = zeta::chi(s, ctx)?;
        let b = zeta::chi(pt(1.0 - s.re, -s.im), ctx)?;
        let p = Complex::with_val(ctx.bits(), &a * &b);
        out.check(format!("chi(s)chi(1-s) = 1 at s={s}"), cdist(&p, &one), ctx.tolerance());
    }
    for t in [1.0, 14.134725, 50.0] {
        let x = zeta::chi(pt(0.5, t), ctx)?;
        let a = Float::with_val(ctx.bits(), x.abs_ref()) - 1u32;
        out.check(format!("|chi(1/2+{t}i)| = 1"), a.abs().to_f64(), ctx.tolerance());
    }
    for s in [pt(0.0, 0.0), pt(-1.0, 0.0), pt(0.3, 5.0)] {
        let z = zeta::evaluate(s, 0, ctx.tolerance(), ctx)?;
        let o = oracle::zeta_em(s, ctx)?;
        out.check(
            format!("zeta_reflected = zeta_em at s={s}"),
            cdist(&z.value, &o.value),
            z.bracket + o.bracket,
        );
    }
    Ok(())
}

fn dual_stieltjes(cfg: &RunConfig, ctx: &PrecisionContext, out: &mut Sink) -> R<()> {
    let n_max = cfg.max_n.clamp(1, 10);
    let c = ctx.with_tolerance(ctx.tolerance().max(1e-10));
    let em = stieltjes::stieltjes_em_batch(n_max, BatchTarget::absolute(c.tolerance()), &c)?;
    let it = stieltjes::stieltjes_integral_range(1, n_max, &c, CERT_CUTOFF, TailPolicy::HalfMean)?;
    for n in 1..=n_max {
        let b = &it[n - 1];
        out.check(
            format!("gamma_{n} euler-maclaurin = integral"),
            fdist(em.gamma(n)?, &b.value),
            em.bracket(n) + b.bracket,
        );
    }
    Ok(())
}

fn series_vs_oracle(ctx: &PrecisionContext, out: &mut Sink) -> R<()> {
    for s in [pt(2.0, 0.0), pt(1.5, 0.0), pt(1.5, 5.0), pt(3.0, -2.0)] {
        let z = zeta::evaluate(s, 0, ctx.tolerance(), ctx)?;
        let o = oracle::zeta_em(s, ctx)?;
        out.check(
            format!("zeta series = euler-maclaurin at s={s}"),
            cdist(&z.value, &o.value),
            z.bracket + o.bracket,
        );
    }
    for (s, m) in [(pt(2.0, 0.0), 1), (pt(1.5, 2.0), 2)] {
        let c = ctx.with_tolerance(ctx.tolerance().max(1e-10));
        let z = zeta::evaluate(s, m, c.tolerance(), &c)?;
        let o = oracle::cauchy_derivative(s, m, None, None, &c)?;
        out.check(
            format!("zeta^({m}) series = cauchy circle at s={s}"),
            cdist(&z.value, &o.value),
            z.bracket + o.bracket,
        );
    }
    Ok(())
}

fn fracpart(cfg: &RunConfig, ctx: &PrecisionContext, out: &mut Sink) -> R<()> {
    let mm = cfg.max_m.min(3);
    let c = ctx.with_tolerance(ctx.tolerance().max(1e-12));
    let table = CoefficientTable::plan(mm, 10, &c)?;
    let fr = FnHandle::Structured(StructuredFn::frac(1, c.bits() + 16));
    for m in 0..=mm {
        for n in 0..=8usize {
            let lg = FnHandle::Structured(StructuredFn::laguerre(LaguerreParams::new(n, m), c.bits() + 16));
            let ip = inner_product(&fr, &lg, m, &c)?;
            let binom = Integer::from(Integer::binomial_u((n + m) as u32, m as u32));
            let lhs = Float::with_val(c.bits(), &ip.value / &binom);
            let l = table.get(n, m)?;
            let rhs = if n % 2 == 1 {
                l.clone()
            } else {
                Float::with_val(c.bits(), -l)
            };
            out.check(
                format!("m={m} n={n} <frac, L_n>/C(n+m,m) = (-1)^(n-1) ell_n"),
                fdist(&lhs, &rhs),
                ip.bracket / binom.to_f64() + table.bracket(n, m),
            );
        }
    }
    let norm = oracle::hm_norm_closed(0, &c)?;
    for n in [0usize, 3, 6, 10] {
        let a = l2_error(&table, 0, n, &norm, &c)?;
        let b = l2_error_direct(&table, 0, n, &c)?;
        out.check(
            format!("N={n} l2 error: parseval = quadrature"),
            fdist(&a.value, &b.value),
            a.bracket + b.bracket,
        );
    }
    let deep = CoefficientTable::plan(0, 100, &c)?;
    let rows = fracexpand::nonuniformity_probe(&[10, 100], &deep, &c)?;
    out.check(
        "probe: 0.2 / sup near-int error at N=100 (floor persists)",
        0.2 / rows[1].sup_err_near_int,
        1.0,
    );
    out.check(
        "probe: far-from-integer sup error N=100 / N=10",
        rows[1].sup_err_far / rows[0].sup_err_far,
        1.0,
    );
    Ok(())
}
