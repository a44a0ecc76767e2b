use rug::{Complex, Float};
use serde_json::{Map, Value};
use zl_core::coefficients::{parseval_partial, CoefficientTable};
use zl_core::fracexpand::{self, ExpansionState, Summation};
use zl_core::laguerre::{self, FnHandle, LaguerreParams, StructuredFn};
use zl_core::numkernel::format_float;
use zl_core::oracle::{self, FracIntegralSpec, TailPolicy};
use zl_core::stieltjes::{self, BatchTarget};
use zl_core::{zeta, ComplexPoint, PrecisionContext};

use crate::error::CliError;
use crate::output::{f64_text, Cell, NumFmt, Output, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum StieltjesMethod {
    Em,
    Integral,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SumMode {
    Direct,
    Abel,
    Cesaro,
}

fn complex_cells(z: &Complex, nf: NumFmt) -> (Cell, Cell) {
    (nf.mp(z.real()), nf.mp(z.imag()))
}

pub fn stieltjes(
    max_n: usize,
    method: StieltjesMethod,
    cutoff: u64,
    ctx: &PrecisionContext,
) -> Result<Output, CliError> {
    let nf = NumFmt::new(ctx.bits());
    let mut t = Table::new(&["n", "gamma", "bracket", "method"]);
    let em = match method {
        StieltjesMethod::Em | StieltjesMethod::Both => {
            Some(stieltjes::stieltjes_em_batch(max_n, BatchTarget::absolute(ctx.tolerance()), ctx)?)
        }
        StieltjesMethod::Integral => None,
    };
    let integral = match method {
        StieltjesMethod::Integral | StieltjesMethod::Both => {
            let g0 = zl_core::coefficients::ell0_integral(cutoff, TailPolicy::HalfMean, ctx)?;
            let mut v = vec![zl_core::Bracketed::new(
                Float::with_val(ctx.bits(), &g0.value + 1u32),
                g0.bracket,
            )];
            if max_n >= 1 {
                v.extend(stieltjes::stieltjes_integral_range(1, max_n, ctx, cutoff, TailPolicy::HalfMean)?);
            }
            Some(v)
        }
        StieltjesMethod::Em => None,
    };
    for n in 0..=max_n {
        if let Some(e) = &em {
            t.push(vec![n.into(), nf.mp(e.gamma(n)?), nf.f(e.bracket(n)), "em".into()]);
        }
        if let Some(i) = &integral {
            t.push(vec![n.into(), nf.mp(&i[n].value), nf.f(i[n].bracket), "integral".into()]);
        }
    }
    Ok(Output::csv(t))
}

pub fn coeffs(max_n: usize, max_m: usize, ctx: &PrecisionContext) -> Result<Output, CliError> {
    let nf = NumFmt::new(ctx.bits());
    let table = CoefficientTable::plan(max_m, max_n, ctx)?;
    let mut t = Table::new(&["m", "n", "ell_nm", "bracket"]);
    let mut grid = Map::new();
    for m in 0..=max_m {
        let row = table.row(m)?;
        let mut inner = Map::new();
        for (n, v) in row.iter().enumerate() {
            let b = table.bracket(n, m);
            t.push(vec![m.into(), n.into(), nf.mp(v), nf.f(b)]);
            let mut e = Map::new();
            e.insert("ell_nm".into(), Value::from(format_float(v, nf.digits)));
            e.insert("bracket".into(), Value::from(f64_text(b)));
            inner.insert(n.to_string(), Value::Object(e));
        }
        grid.insert(m.to_string(), Value::Object(inner));
    }
    let mut root = Map::new();
    root.insert("tail_model".into(), Value::from(table.tail_model().to_string()));
    root.insert("grid".into(), Value::Object(grid));
    let mut out = Output::csv(t);
    out.json = Some(Value::Object(root));
    Ok(out)
}

pub fn parseval(m: usize, max_n: usize, ctx: &PrecisionContext) -> Result<Output, CliError> {
    let nf = NumFmt::new(ctx.bits());
    let table = CoefficientTable::plan(m, max_n, ctx)?;
    let sums = parseval_partial(m, max_n, &table, ctx)?;
    let mut t = Table::new(&["n", "partial_sum"]);
    for (n, s) in sums.iter().enumerate() {
        t.push(vec![n.into(), nf.mp(s)]);
    }
    Ok(Output::csv(t))
}

pub fn laguerre_value(n: usize, m: usize, x: f64, ctx: &PrecisionContext) -> Result<Output, CliError> {
    let nf = NumFmt::new(ctx.bits());
    let xf = Float::with_val(ctx.bits(), x);
    let v = laguerre::eval_recurrence(LaguerreParams::new(n, m), &xf, ctx)?;
    Ok(Output::json(Table::record(
        &["n", "m", "x", "value"],
        vec![n.into(), m.into(), nf.mp(&xf), nf.mp(&v)],
    )))
}

pub fn laguerre_gram(max_n: usize, m: usize, ctx: &PrecisionContext) -> Result<Output, CliError> {
    let nf = NumFmt::new(ctx.bits());
    let g = laguerre::gram(max_n, m, ctx)?;
    let mut t = Table::new(&["n", "k", "value", "bracket"]);
    for (n, row) in g.iter().enumerate() {
        for (k, e) in row.iter().enumerate() {
            t.push(vec![n.into(), k.into(), nf.mp(&e.value), nf.f(e.bracket)]);
        }
    }
    Ok(Output::csv(t))
}

pub fn zeta(re: f64, im: f64, m: usize, ctx: &PrecisionContext) -> Result<Output, CliError> {
    let nf = NumFmt::new(ctx.bits());
    let s = ComplexPoint::new(re, im)?;
    let z = zeta::evaluate(s, m, ctx.tolerance(), ctx)?;
    let (vr, vi) = complex_cells(&z.value, nf);
    Ok(Output::json(Table::record(
        &["value_re", "value_im", "terms_used", "tail_bound", "bracket", "path"],
        vec![
            vr,
            vi,
            z.terms_used.into(),
            nf.f(z.tail_bound),
            nf.f(z.bracket),
            z.path.to_string().into(),
        ],
    )))
}

pub fn oracle_zeta(re: f64, im: f64, deriv: usize, ctx: &PrecisionContext) -> Result<Output, CliError> {
    let nf = NumFmt::new(ctx.bits());
    let s = ComplexPoint::new(re, im)?;
    let v = if deriv == 0 {
        oracle::zeta_em(s, ctx)?
    } else {
        oracle::cauchy_derivative(s, deriv, None, None, ctx)?
    };
    let (vr, vi) = complex_cells(&v.value, nf);
    let method = if deriv == 0 { "euler_maclaurin" } else { "cauchy_circle" };
    Ok(Output::json(Table::record(
        &["value", "value_im", "bracket", "method"],
        vec![vr, vi, nf.f(v.bracket), method.into()],
    )))
}

pub fn oracle_norm(m: usize, ctx: &PrecisionContext) -> Result<Output, CliError> {
    let nf = NumFmt::new(ctx.bits());
    let v = oracle::hm_norm_closed(m, ctx)?;
    Ok(Output::json(Table::record(
        &["m", "value", "bracket"],
        vec![m.into(), nf.mp(&v.value), nf.f(v.bracket)],
    )))
}

/// ∫₁^∞ {x}^P logᴶx / x^{s+1} dx.
pub fn oracle_integral(
    power: usize,
    logdeg: usize,
    cutoff: u64,
    s: ComplexPoint,
    policy: TailPolicy,
    ctx: &PrecisionContext,
) -> Result<Output, CliError> {
    let nf = NumFmt::new(ctx.bits());
    let spec = FracIntegralSpec::mellin(power, logdeg, s, cutoff).with_policy(policy);
    let v = oracle::frac_integral(&spec, ctx)?;
    let (vr, vi) = complex_cells(&v.value, nf);
    Ok(Output::json(Table::record(
        &["value", "value_im", "bracket"],
        vec![vr, vi, nf.f(v.bracket)],
    )))
}

pub fn norms(max_m: usize, ctx: &PrecisionContext) -> Result<Output, CliError> {
    let nf = NumFmt::new(ctx.bits());
    let mut t = Table::new(&[
        "m",
        "closed_form",
        "closed_bracket",
        "quadrature",
        "quadrature_bracket",
        "difference",
    ]);
    let fr = FnHandle::Structured(StructuredFn::frac(1, ctx.bits() + 16));
    for m in 0..=max_m {
        let c = oracle::hm_norm_closed(m, ctx)?;
        let q = laguerre::inner_product(&fr, &fr, m, ctx)?;
        let d = Float::with_val(ctx.bits(), &c.value - &q.value).abs();
        t.push(vec![
            m.into(),
            nf.mp(&c.value),
            nf.f(c.bracket),
            nf.mp(&q.value),
            nf.f(q.bracket),
            nf.f(d.to_f64()),
        ]);
    }
    Ok(Output::csv(t))
}

pub fn fracpart(
    x: f64,
    m: usize,
    terms: usize,
    sum: SumMode,
    r: f64,
    ctx: &PrecisionContext,
) -> Result<Output, CliError> {
    let nf = NumFmt::new(ctx.bits());
    let xf = Float::with_val(ctx.bits(), x);
    let table = CoefficientTable::plan(m, terms, ctx)?;
    let norm = oracle::hm_norm_closed(m, ctx)?;
    let st = ExpansionState::new(&table, m, terms, &norm, ctx)?;
    let how = match sum {
        SumMode::Direct => Summation::Direct,
        SumMode::Abel => Summation::Abel(r),
        SumMode::Cesaro => Summation::Cesaro,
    };
    let v = fracexpand::summed(&xf, &st, how, ctx)?;
    let target = fracexpand::pointwise_target(&xf);
    let err = Float::with_val(ctx.bits(), &v - &target).abs();
    let sum_name = match sum {
        SumMode::Direct => "direct",
        SumMode::Abel => "abel",
        SumMode::Cesaro => "cesaro",
    };
    Ok(Output::json(Table::record(
        &["x", "m", "terms", "sum", "value", "target", "error", "l2_error_sq"],
        vec![
            nf.mp(&xf),
            m.into(),
            terms.into(),
            sum_name.into(),
            nf.mp(&v),
            nf.mp(&target),
            nf.f(err.to_f64()),
            nf.mp(&st.l2_error_sq.value),
        ],
    )))
}

/// N = 10, 100, ... below `max_terms`, then `max_terms` itself.
pub fn probe_levels(max_terms: usize) -> Vec<usize> {
    let mut v = Vec::new();
    let mut n = 10;
    while n < max_terms {
        v.push(n);
        n *= 10;
    }
    v.push(max_terms.max(1));
    v
}

pub fn fracpart_probe(max_terms: usize, ctx: &PrecisionContext) -> Result<Output, CliError> {
    let table = CoefficientTable::plan(0, max_terms, &ctx.with_tolerance(ctx.tolerance().max(1e-15)))?;
    let rows = fracexpand::nonuniformity_probe(&probe_levels(max_terms), &table, ctx)?;
    let nf = NumFmt::new(ctx.bits());
    let mut t = Table::new(&["N", "sup_err_near_int", "sup_err_far"]);
    for r in rows {
        t.push(vec![r.n.into(), nf.f(r.sup_err_near_int), nf.f(r.sup_err_far)]);
    }
    Ok(Output::csv(t))
}
