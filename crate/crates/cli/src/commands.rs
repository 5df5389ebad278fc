use std::fmt::Write as _;

use clap::ValueEnum;
use frac_core::extension::{harnack_ratio, marchaud_via_extension, stationary_solve, ExtensionField};
use frac_core::fraclap::{
    fraclap_hypersingular, fraclap_multiplier_1d, fraclap_pv, spherical_mean_identity, sum_identity_1d, MultiplierInput,
};
use frac_core::funcspace::{parse_spec, CatalogFunction, Function1D, FunctionND, Grid1D};
use frac_core::grunwald::{gl_derivative, semigroup_check};
use frac_core::marchaud::{
    classical_derivative_rep, marchaud, marchaud_general, product_rule_defect, rl_derivative, scaling_check,
};
use frac_core::quadrature::EvalResult;
use frac_core::special::{c_fraclap, chi, FracOrder, Route, Side};
use frac_core::suite::{run_criterion_with, CriterionReport, SuiteOptions};
use frac_core::weyl::{weyl_marchaud, TrigPoly, WeylRoute};
use frac_core::IdentityCheck;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::*;
use crate::config::resolve;
use crate::output::{num, to_json};
use crate::CliError;

fn side(s: SideArg) -> Side {
    match s {
        SideArg::Plus => Side::Plus,
        SideArg::Minus => Side::Minus,
    }
}

fn required<T: Copy>(v: Option<T>, flag: &str, op: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {op}")))
}

fn parse_point(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("cannot parse coordinate `{p}`"))))
        .collect()
}

fn parse_points(text: &str) -> Result<Vec<Vec<f64>>, CliError> {
    text.split(';').map(parse_point).collect()
}

fn scalar(point: &[f64]) -> Result<f64, CliError> {
    match point {
        [x] => Ok(*x),
        _ => Err(CliError::Usage(format!("expected a scalar point, got {} coordinates", point.len()))),
    }
}

fn function_1d(spec: &str) -> Result<Function1D, CliError> {
    Ok(parse_spec(spec)?.into_1d()?)
}

fn function_nd(spec: &str) -> Result<FunctionND, CliError> {
    Ok(match parse_spec(spec)? {
        CatalogFunction::OneD(f) => FunctionND::from_1d(&f),
        nd => nd.into_nd(),
    })
}

pub fn eval(args: &EvalArgs) -> Result<String, CliError> {
    let cfg = resolve(&args.quad)?;
    let op_name = args.op.to_possible_value().expect("no skipped variants").get_name().to_string();
    let point = parse_point(&args.x)?;
    let mut params = serde_json::Map::new();
    let need_fn = || args.function.as_deref().ok_or_else(|| CliError::Usage(format!("--function is required for {op_name}")));
    let result: EvalResult = match args.op {
        Op::Marchaud | Op::MarchaudGeneral | Op::Rl | Op::ClassicalRep | Op::Gl => {
            let spec = need_fn()?;
            let f = function_1d(spec)?;
            let x = scalar(&point)?;
            params.insert("function".into(), json!(spec));
            params.insert("x".into(), json!(x));
            if args.op == Op::ClassicalRep {
                classical_derivative_rep(&f, x, &cfg)?
            } else {
                let alpha = required(args.alpha, "alpha", &op_name)?;
                params.insert("alpha".into(), json!(alpha));
                match args.op {
                    Op::Marchaud => {
                        params.insert("side".into(), json!(side_name(args.side)));
                        marchaud(&f, FracOrder::single(alpha, side(args.side))?, x, &cfg)?
                    }
                    Op::MarchaudGeneral => {
                        params.insert("l".into(), json!(args.l));
                        params.insert("side".into(), json!(side_name(args.side)));
                        marchaud_general(&f, FracOrder::new(alpha, args.l, side(args.side))?, x, &cfg)?
                    }
                    Op::Rl => {
                        params.insert("a".into(), args.a.map_or(Value::Null, |a| json!(a)));
                        rl_derivative(&f, args.a, alpha, x, &cfg)?
                    }
                    _ => {
                        params.insert("side".into(), json!(side_name(args.side)));
                        params.insert("h_seq".into(), json!(args.h_seq));
                        gl_derivative(&f, alpha, side(args.side), x, &args.h_seq)?
                    }
                }
            }
        }
        Op::Weyl => {
            let text = args.trig.as_deref().ok_or_else(|| CliError::Usage("--trig is required for weyl".into()))?;
            let p = TrigPoly::parse(text)?;
            let alpha = required(args.alpha, "alpha", &op_name)?;
            let x = scalar(&point)?;
            let route = match args.route {
                WeylRouteArg::ByParts => WeylRoute::ByParts,
                WeylRouteArg::KernelDerivative => WeylRoute::KernelDerivative,
            };
            params.insert("trig".into(), json!(text));
            params.insert("alpha".into(), json!(alpha));
            params.insert("x".into(), json!(x));
            params.insert("route".into(), json!(args.route.to_possible_value().expect("no skipped variants").get_name()));
            weyl_marchaud(&p, alpha, x, route, cfg.rel_tol)?
        }
        Op::Fraclap | Op::FraclapHyper => {
            let spec = need_fn()?;
            let f = function_nd(spec)?;
            if let Some(n) = args.n {
                if n != f.dim() {
                    return Err(CliError::Usage(format!("--n {n} does not match `{spec}`, which lives in {} dimensions", f.dim())));
                }
            }
            params.insert("function".into(), json!(spec));
            params.insert("x".into(), json!(point));
            if args.op == Op::Fraclap {
                let s = required(args.s, "s", &op_name)?;
                params.insert("s".into(), json!(s));
                fraclap_pv(&f, s, &point, &cfg)?
            } else {
                let alpha = required(args.alpha, "alpha", &op_name)?;
                params.insert("alpha".into(), json!(alpha));
                params.insert("l".into(), json!(args.l));
                fraclap_hypersingular(&f, alpha, args.l, &point, &cfg)?
            }
        }
        Op::FraclapMultiplier => {
            let s = required(args.s, "s", &op_name)?;
            let x = scalar(&point)?;
            params.insert("s".into(), json!(s));
            params.insert("x".into(), json!(x));
            match (&args.trig, &args.function) {
                (Some(text), None) => {
                    params.insert("trig".into(), json!(text));
                    fraclap_multiplier_1d(MultiplierInput::Trig(&TrigPoly::parse(text)?), s, x)?
                }
                (None, Some(spec)) => {
                    params.insert("function".into(), json!(spec));
                    fraclap_multiplier_1d(MultiplierInput::Decaying(&function_1d(spec)?), s, x)?
                }
                _ => return Err(CliError::Usage("fraclap-multiplier takes exactly one of --trig, --function".into())),
            }
        }
    };
    let out = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "op": op_name,
        "params": params,
        "value": result.value,
        "err_estimate": result.err_estimate,
        "diagnostics": result.diagnostics,
    });
    Ok(to_json(&out) + "\n")
}

fn side_name(s: SideArg) -> &'static str {
    match s {
        SideArg::Plus => "plus",
        SideArg::Minus => "minus",
    }
}

const IDENTITY_HEADER: &str = "name,params,lhs,rhs,residual,pass\n";

fn identity_row(out: &mut String, name: &str, params: &str, c: &IdentityCheck, tol: f64) {
    let pass = c.residual <= tol;
    // Catalog specs contain commas, so the params field is always quoted.
    let params = params.replace('"', "\"\"");
    writeln!(out, "{name},\"{params}\",{},{},{},{pass}", num(c.lhs), num(c.rhs), num(c.residual)).expect("write to String");
}

pub fn identity(args: &IdentityArgs) -> Result<(String, bool), CliError> {
    let cfg = resolve(&args.quad)?;
    let points = parse_points(&args.x)?;
    let alpha = args.alpha;
    let mut out = String::from(IDENTITY_HEADER);
    let mut all_pass = true;
    for point in &points {
        let coords = point.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        let (name, params, check, default_tol) = match args.name {
            IdentityName::Sum1d => {
                let f = function_1d(&args.function)?;
                let c = sum_identity_1d(&f, alpha, scalar(point)?, &cfg)?;
                ("sum1d", format!("function={};alpha={alpha};x={coords}", args.function), c, 1e-5)
            }
            IdentityName::Sphere => {
                let f = function_nd(&args.function)?;
                let c = spherical_mean_identity(&f, alpha, point, args.two_sided, args.nodes, &cfg)?;
                let variant = if args.two_sided { "two-sided" } else { "one-sided" };
                ("sphere", format!("function={};alpha={alpha};{variant};nodes={};x={coords}", args.function, args.nodes), c, 1e-4)
            }
            IdentityName::Scaling => {
                let f = function_1d(&args.function)?;
                let lam = required(args.lambda, "lambda", "scaling")?;
                let c = scaling_check(&f, alpha, lam, scalar(point)?, args.l, &cfg)?;
                ("scaling", format!("function={};alpha={alpha};lambda={lam};l={};x={coords}", args.function, args.l), c, 1e-7)
            }
            IdentityName::Semigroup => {
                let f = function_1d(&args.function)?;
                let beta = required(args.beta, "beta", "semigroup")?;
                let c = semigroup_check(&f, alpha, beta, args.h, scalar(point)?, args.k_max)?;
                (
                    "semigroup",
                    format!("function={};alpha={alpha};beta={beta};h={};k_max={};x={coords}", args.function, args.h, args.k_max),
                    c,
                    1e-8,
                )
            }
            IdentityName::Product => {
                let f = function_1d(&args.function)?;
                let other = args.other.as_deref().ok_or_else(|| CliError::Usage("--other is required for product".into()))?;
                let g = function_1d(other)?;
                let p = product_rule_defect(&f, &g, alpha, scalar(point)?, &cfg)?;
                let c = IdentityCheck { lhs: p.lhs, rhs: p.sum_rule - p.defect, residual: p.residual, err_estimate: p.err_estimate };
                ("product", format!("function={};other={other};alpha={alpha};x={coords}", args.function), c, 1e-7)
            }
        };
        let tol = args.tol.unwrap_or(default_tol);
        all_pass &= check.residual <= tol;
        identity_row(&mut out, name, &params, &check, tol);
    }
    Ok((out, all_pass))
}

pub fn constants(args: &ConstantsArgs) -> Result<String, CliError> {
    let alphas: Vec<f64> = if args.alpha.is_empty() { (1..10).map(|i| 0.1 * i as f64).collect() } else { args.alpha.clone() };
    let mut out = String::from("name,alpha,index,closed_form,integral,rel_discrepancy\n");
    let mut row = |name: &str, a: f64, idx: u32, closed: f64, integral: f64| {
        let rel = (closed - integral).abs() / closed.abs();
        writeln!(out, "{name},{a},{idx},{},{},{}", num(closed), num(integral), num(rel)).expect("write to String");
    };
    for &l in &args.l {
        for &a in &alphas {
            if a >= l as f64 {
                continue;
            }
            row("chi", a, l, chi(a, l, Route::ClosedForm)?, chi(a, l, Route::Integral)?);
        }
    }
    for &n in &args.n {
        for &a in &alphas {
            if !(a > 0.0 && a < 1.0) {
                continue;
            }
            row("c_fraclap", a, n, c_fraclap(a, n, Route::ClosedForm)?, c_fraclap(a, n, Route::Integral)?);
        }
    }
    Ok(out)
}

pub fn extension(args: &ExtensionArgs) -> Result<String, CliError> {
    let cfg = resolve(&args.quad)?;
    let phi = function_1d(&args.datum)?;
    let field = ExtensionField::new(phi.clone(), args.s, cfg.clone())?;
    let mut out = String::from("t,quantity,x,value,err_estimate\n");
    for &t in &args.t {
        for &x in &args.x_seq {
            let u = field.eval(x, t)?;
            writeln!(out, "{t},field,{x},{},", num(u)).expect("write to String");
        }
        let limit = marchaud_via_extension(&phi, args.s, t, &args.x_seq, &cfg)?;
        writeln!(out, "{t},boundary_limit,0,{},{}", num(limit.value), num(limit.err_estimate)).expect("write to String");
        let direct = marchaud(&phi, FracOrder::single(args.s, Side::Plus)?, t, &cfg)?;
        writeln!(out, "{t},marchaud,0,{},{}", num(direct.value), num(direct.err_estimate)).expect("write to String");
    }
    Ok(out)
}

pub fn harnack(args: &HarnackArgs) -> Result<String, CliError> {
    let [a, b] = args.interval[..] else {
        return Err(CliError::Usage("--interval takes two numbers".into()));
    };
    if args.steps == 0 {
        return Err(CliError::Usage("--steps must be positive".into()));
    }
    let ext = function_1d(&args.exterior)?;
    let grid = Grid1D::new(a, (b - a) / args.steps as f64, args.steps + 1)?;
    let sol = stationary_solve((a, b), &ext, args.s, grid, args.k_max.unwrap_or(16 * args.steps))?;
    let mut out = String::new();
    if args.table != HarnackTable::Ratios {
        out.push_str("t,phi\n");
        for (t, v) in sol.grid().points().iter().zip(&sol.values) {
            writeln!(out, "{},{}", num(*t), num(*v)).expect("write to String");
        }
    }
    if args.table == HarnackTable::Both {
        out.push('\n');
    }
    if args.table != HarnackTable::Profile {
        out.push_str("t0,delta,left_lo,left_hi,right_lo,right_hi,sup_left,inf_right,ratio,violated\n");
        for &d in &args.delta {
            let r = harnack_ratio(&sol, args.t0, d)?;
            let t0 = args.t0;
            writeln!(
                out,
                "{t0},{d},{},{},{},{},{},{},{},{}",
                num(t0 - 0.75 * d),
                num(t0 - 0.25 * d),
                num(t0 + 0.75 * d),
                num(t0 + d),
                num(r.sup_left),
                num(r.inf_right),
                num(r.ratio),
                r.violated
            )
            .expect("write to String");
        }
    }
    Ok(out)
}

fn render_report(r: &CriterionReport, verbose: bool) -> String {
    let mut out = r.summary_line() + "\n";
    for note in &r.notes {
        writeln!(out, "      {note}").expect("write to String");
    }
    for row in r.rows.iter().filter(|row| verbose || !row.passed) {
        writeln!(
            out,
            "      {} {}: value={} reference={} residual={} tol={}",
            if row.passed { "ok  " } else { "FAIL" },
            row.label,
            num(row.value),
            num(row.reference),
            num(row.residual),
            num(row.tolerance)
        )
        .expect("write to String");
    }
    out
}

pub fn suite(args: &SuiteArgs) -> Result<(String, bool), CliError> {
    let ids: Vec<usize> = if args.only.is_empty() { (1..=10).collect() } else { args.only.clone() };
    if let Some(bad) = ids.iter().find(|&&i| !(1..=10).contains(&i)) {
        return Err(CliError::Usage(format!("no criterion {bad}; choose from 1-10")));
    }
    let opts = SuiteOptions { quick: args.quick, seed: args.seed };
    // Checks run in parallel; reports are collected in criterion order.
    let reports: Vec<CriterionReport> = ids.par_iter().map(|&id| run_criterion_with(id, &opts)).collect();
    let passed = reports.iter().all(|r| r.passed);
    let out = if args.json {
        to_json(&reports) + "\n"
    } else {
        let mut s: String = reports.iter().map(|r| render_report(r, args.verbose)).collect();
        let n_pass = reports.iter().filter(|r| r.passed).count();
        writeln!(s, "{n_pass}/{} criteria passed", reports.len()).expect("write to String");
        s
    };
    Ok((out, passed))
}
