//! Marchaud derivatives, their higher-order and directional variants, the
//! integral representations of classical derivatives, and the
//! Riemann–Liouville integral and derivative used to cross-check them.
//!
//! All one-sided operators take differences as written: the `Plus` side
//! looks at the history `f(x - t)`, the `Minus` side at `f(x + t)`.

use crate::error::{FracError, Result};
use crate::funcspace::{Far, Function1D, FunctionND};
use crate::quadrature::{finite_interval, singular_improper, EvalResult, QuadConfig, Tail};
use crate::special::{chi, gamma, gen_binomial, FracOrder, Route, Side};
use crate::IdentityCheck;

/// Tail model of `Σ_k (-1)^k C(l,k) f(x - k t)` given the far behaviour of
/// `f` on the history side and the value `f(x)`.
pub(crate) fn difference_tail(far: Far, fx: f64) -> Result<Tail> {
    match far {
        Far::Limit(c) => Ok(Tail::Limit(fx - c)),
        Far::Periodic { mean, period } => Ok(Tail::Periodic { mean: fx - mean, period }),
        Far::Unbounded => Err(FracError::Precondition(
            "function is unbounded on the history side; the difference integral diverges".into(),
        )),
    }
}

/// Signed coefficients `(-1)^k C(l,k)`, `k = 0..=l`.
pub(crate) fn difference_weights(l: u32) -> Vec<f64> {
    (0..=l)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * gen_binomial(l as f64, k as u64)
        })
        .collect()
}

fn config_for(cfg: &QuadConfig, vanish: f64, tail: Tail) -> QuadConfig {
    let mut c = cfg.clone();
    c.vanish_order = vanish;
    c.tail = tail;
    c
}

/// `D^α_± f(x) = α/Γ(1-α) ∫₀^∞ (f(x) - f(x ∓ t)) t^{-1-α} dt` for `0 < α < 1`.
///
/// The vanish order and tail model are taken from the function's metadata;
/// `cfg` supplies the cutoffs and tolerance.
pub fn marchaud(f: &Function1D, order: FracOrder, x: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    let alpha = order.alpha;
    if order.l != 1 || alpha >= 1.0 {
        return Err(FracError::Domain(format!(
            "marchaud needs l = 1 and alpha in (0,1), got l = {}, alpha = {alpha}",
            order.l
        )));
    }
    let dir = order.side.dir();
    let fx = f.eval(x);
    let c = config_for(cfg, f.vanish_order(1), difference_tail(f.far(order.side), fx)?);
    let r = singular_improper(|t| fx - f.eval(x - dir * t), alpha, &c)?;
    Ok(r.scaled(alpha / gamma(1.0 - alpha)?))
}

/// `D^α_± f(x) = (1/χ(α,l)) ∫₀^∞ Δ^l_{±τ} f(x) τ^{-1-α} dτ` for `0 < α < l`.
pub fn marchaud_general(f: &Function1D, order: FracOrder, x: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    let (alpha, l) = (order.alpha, order.l);
    let dir = order.side.dir();
    let w = difference_weights(l);
    let fx = f.eval(x);
    let c = config_for(cfg, f.vanish_order(l), difference_tail(f.far(order.side), fx)?);
    let r = singular_improper(
        |t| {
            let mut s = fx;
            for (k, wk) in w.iter().enumerate().skip(1) {
                s += wk * f.eval(x - dir * k as f64 * t);
            }
            s
        },
        alpha,
        &c,
    )?;
    Ok(r.scaled(1.0 / chi(alpha, l, Route::ClosedForm)?))
}

/// Directional derivative `D^α_{±,ξ} f(x)` on ℝⁿ along the unit vector `xi`.
pub fn marchaud_directional(
    f: &FunctionND,
    order: FracOrder,
    xi: &[f64],
    x: &[f64],
    cfg: &QuadConfig,
) -> Result<EvalResult> {
    let r = directional_difference_integral(f, order.alpha, order.l, order.side, xi, x, cfg)?;
    Ok(r.scaled(1.0 / chi(order.alpha, order.l, Route::ClosedForm)?))
}

/// `∫₀^∞ Δ^l_{±τξ} f(x) τ^{-1-α} dτ` without normalization.
pub(crate) fn directional_difference_integral(
    f: &FunctionND,
    alpha: f64,
    l: u32,
    side: Side,
    xi: &[f64],
    x: &[f64],
    cfg: &QuadConfig,
) -> Result<EvalResult> {
    let n = f.dim();
    if xi.len() != n || x.len() != n {
        return Err(FracError::Domain(format!(
            "dimension mismatch: function on ℝ^{n}, direction of length {}, point of length {}",
            xi.len(),
            x.len()
        )));
    }
    let norm = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(FracError::Domain(format!("direction must be a unit vector, |xi| = {norm}")));
    }
    let dir = side.dir();
    let far = if n == 1 {
        // history lies along -dir·ξ
        if dir * xi[0] > 0.0 {
            f.far(Side::Plus)
        } else {
            f.far(Side::Minus)
        }
    } else {
        f.far(Side::Plus)
    };
    let fx = f.eval(x);
    let vanish = if f.is_smooth() { l as f64 } else { 1.0 };
    let c = config_for(cfg, vanish, difference_tail(far, fx)?);
    let w = difference_weights(l);
    singular_improper(
        |t| {
            let mut y = [0.0; 3];
            let mut s = fx;
            for (k, wk) in w.iter().enumerate().skip(1) {
                let step = dir * k as f64 * t;
                for i in 0..n {
                    y[i] = x[i] - step * xi[i];
                }
                s += wk * f.eval(&y[..n]);
            }
            s
        },
        alpha,
        &c,
    )
}

/// `f'(x) = (1/(2 ln 2)) ∫₀^∞ (f(x) - 2f(x-s) + f(x-2s)) s^{-2} ds`.
///
/// Restricted to smooth functions, for which the second difference vanishes
/// quadratically.
pub fn classical_derivative_rep(f: &Function1D, x: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    if !f.is_smooth() {
        return Err(FracError::Precondition(format!(
            "`{}` is not declared smooth; the integral representation needs f'' near x",
            f.name()
        )));
    }
    marchaud_general(f, FracOrder::new(1.0, 2, Side::Plus)?, x, cfg)
}

/// `∂²f/∂x_i²` via `(1/χ(2,3)) ∫₀^∞ Δ³_{τ e_i} f(x) τ^{-3} dτ`.
pub fn directional_second_derivative_rep(f: &FunctionND, i: usize, x: &[f64], cfg: &QuadConfig) -> Result<EvalResult> {
    let n = f.dim();
    if i >= n {
        return Err(FracError::Domain(format!("axis {i} out of range for ℝ^{n}")));
    }
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    marchaud_directional(f, FracOrder::new(2.0, 3, Side::Plus)?, &e, x, cfg)
}

/// `Δf(x)` as the sum of the per-axis third-difference integrals.
pub fn laplacian_rep(f: &FunctionND, x: &[f64], cfg: &QuadConfig) -> Result<EvalResult> {
    let mut acc = EvalResult::exact(0.0);
    for i in 0..f.dim() {
        acc = acc.plus(directional_second_derivative_rep(f, i, x, cfg)?);
    }
    Ok(acc)
}

/// Components of the fractional product rule at one point.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct ProductRule {
    /// `D^α(fg)(x)`
    pub lhs: f64,
    /// `D^α f(x)·g(x) + f(x)·D^α g(x)`
    pub sum_rule: f64,
    /// `α/Γ(1-α) ∫ (f(x)-f(x-t))(g(x)-g(x-t)) t^{-1-α} dt`
    pub defect: f64,
    /// `|lhs - sum_rule + defect|`
    pub residual: f64,
    pub err_estimate: f64,
}

/// Plus-side product rule `D^α(fg) = g·D^α f + f·D^α g - defect`.
pub fn product_rule_defect(f: &Function1D, g: &Function1D, alpha: f64, x: f64, cfg: &QuadConfig) -> Result<ProductRule> {
    let order = FracOrder::single(alpha, Side::Plus)?;
    if alpha >= 1.0 {
        return Err(FracError::Domain(format!("alpha must lie in (0,1), got {alpha}")));
    }
    let fg = f.product(g);
    let lhs = marchaud(&fg, order, x, cfg)?;
    let df = marchaud(f, order, x, cfg)?;
    let dg = marchaud(g, order, x, cfg)?;
    let (fx, gx) = (f.eval(x), g.eval(x));
    let sum_rule = df.value * gx + fx * dg.value;

    let tail_f = difference_tail(f.far(Side::Plus), fx)?;
    let tail_g = difference_tail(g.far(Side::Plus), gx)?;
    let tail = match (tail_f, tail_g) {
        (Tail::Limit(a), Tail::Limit(b)) => Tail::Limit(a * b),
        _ => Tail::Settled,
    };
    let vanish = f.vanish_order(1) + g.vanish_order(1);
    let c = config_for(cfg, vanish, tail);
    let defect = singular_improper(|t| (fx - f.eval(x - t)) * (gx - g.eval(x - t)), alpha, &c)?
        .scaled(alpha / gamma(1.0 - alpha)?);
    let err = lhs.err_estimate + df.err_estimate * gx.abs() + dg.err_estimate * fx.abs() + defect.err_estimate;
    Ok(ProductRule {
        lhs: lhs.value,
        sum_rule,
        defect: defect.value,
        residual: (lhs.value - sum_rule + defect.value).abs(),
        err_estimate: err,
    })
}

/// Scaling law `D^α[f(λ·)](x) = λ^α (D^α f)(λx)` with difference order `l`.
pub fn scaling_check(f: &Function1D, alpha: f64, lam: f64, x: f64, l: u32, cfg: &QuadConfig) -> Result<IdentityCheck> {
    if !(lam > 0.0) {
        return Err(FracError::Domain(format!("scaling factor must be positive, got {lam}")));
    }
    let order = FracOrder::new(alpha, l, Side::Plus)?;
    let lhs = marchaud_general(&f.dilate(lam), order, x, cfg)?;
    let rhs = marchaud_general(f, order, lam * x, cfg)?.scaled(lam.powf(alpha));
    Ok(IdentityCheck::new(lhs.value, rhs.value, lhs.err_estimate + rhs.err_estimate))
}

/// `I^α_a f(x) = (1/Γ(α)) ∫₀^{x-a} t^{α-1} f(x-t) dt`; `a = None` means −∞.
pub fn rl_integral(f: &Function1D, a: Option<f64>, alpha: f64, x: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    if !(alpha > 0.0) {
        return Err(FracError::Domain(format!("integration order must be positive, got {alpha}")));
    }
    let g = gamma(alpha)?;
    match a {
        Some(a) => {
            if !(x > a) {
                return Err(FracError::Domain(format!("need x > a, got x = {x}, a = {a}")));
            }
            let r = finite_interval(|t: f64| t.powf(alpha - 1.0) * f.eval(x - t), 0.0, x - a, cfg.rel_tol)?;
            Ok(r.scaled(1.0 / g))
        }
        None => {
            let tail = match f.far(Side::Plus) {
                Far::Limit(c) => Tail::Limit(c),
                Far::Periodic { mean, period } => Tail::Periodic { mean, period },
                Far::Unbounded => {
                    return Err(FracError::Precondition("f is unbounded towards −∞".into()));
                }
            };
            let c = config_for(cfg, 0.0, tail);
            let r = singular_improper(|t| f.eval(x - t), -alpha, &c)?;
            Ok(r.scaled(1.0 / g))
        }
    }
}

/// `𝒟^α_a f(x) = d/dx I^{1-α}_a f(x)` for `0 < α < 1`, the outer derivative by
/// a five-point central stencil with step `rel_tol^{1/5}`.
pub fn rl_derivative(f: &Function1D, a: Option<f64>, alpha: f64, x: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(FracError::Domain(format!("alpha must lie in (0,1), got {alpha}")));
    }
    let mut h = cfg.rel_tol.powf(0.2);
    if let Some(a) = a {
        if !(x > a) {
            return Err(FracError::Domain(format!("need x > a, got x = {x}, a = {a}")));
        }
        h = h.min(0.25 * (x - a));
    }
    let mut vals = [EvalResult::default(); 4];
    for (slot, m) in vals.iter_mut().zip([-2.0, -1.0, 1.0, 2.0]) {
        *slot = rl_integral(f, a, 1.0 - alpha, x + m * h, cfg)?;
    }
    let [fm2, fm1, fp1, fp2] = vals.map(|r| r.value);
    let d5 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    let d3 = (fp1 - fm1) / (2.0 * h);
    let propagated = (vals[0].err_estimate + 8.0 * vals[1].err_estimate + 8.0 * vals[2].err_estimate + vals[3].err_estimate) / (12.0 * h);
    let nodes = vals.iter().map(|r| r.diagnostics.node_count).sum();
    let mut out = EvalResult {
        value: d5,
        err_estimate: propagated + h * h * (d5 - d3).abs(),
        diagnostics: vals[0].diagnostics,
    };
    out.diagnostics.node_count = nodes;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::{catalog, constant, exp_lambda, gaussian, gaussian_nd, constant_nd};
    use std::f64::consts::PI;

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    fn plus(alpha: f64) -> FracOrder {
        FracOrder::single(alpha, Side::Plus).unwrap()
    }

    // Reference value of D^{1/2}_+ exp(-x²/2) at x = 1/2, from a 30-digit
    // quadrature.
    const V_STAR: f64 = 0.205_846_929_971_409_979_409;

    #[test]
    fn marchaud_examples() {
        let r = marchaud(&exp_lambda(2.0).unwrap(), plus(0.5), 0.0, &cfg()).unwrap();
        assert!((r.value - 2f64.sqrt()).abs() < 1e-9, "{r:?}");
        let r = marchaud(&constant(7.0), plus(0.3), 1.0, &cfg()).unwrap();
        assert_eq!(r.value, 0.0);
        let r = marchaud(&gaussian(0.0, 1.0).unwrap(), plus(0.5), 0.5, &cfg()).unwrap();
        assert!((r.value - V_STAR).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn minus_side_mirrors_plus() {
        let g = gaussian(0.0, 1.0).unwrap();
        let m = marchaud(&g, FracOrder::single(0.5, Side::Minus).unwrap(), -0.5, &cfg()).unwrap();
        assert!((m.value - V_STAR).abs() < 1e-9);
    }

    #[test]
    fn unbounded_history_is_rejected() {
        let e = exp_lambda(1.0).unwrap();
        let r = marchaud(&e, FracOrder::single(0.5, Side::Minus).unwrap(), 0.0, &cfg());
        assert!(matches!(r, Err(FracError::Precondition(_))));
    }

    #[test]
    fn general_examples() {
        let g = gaussian(0.0, 1.0).unwrap();
        let a = marchaud_general(&g, FracOrder::new(0.5, 2, Side::Plus).unwrap(), 0.3, &cfg()).unwrap();
        let b = marchaud(&g, plus(0.5), 0.3, &cfg()).unwrap();
        assert!((a.value - b.value).abs() < 1e-7);
        let e = exp_lambda(1.0).unwrap();
        let r = marchaud_general(&e, FracOrder::new(1.5, 2, Side::Plus).unwrap(), 0.0, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-8, "{r:?}");
        let r = marchaud_general(&constant(2.0), FracOrder::new(1.7, 3, Side::Minus).unwrap(), 0.4, &cfg()).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn directional_examples() {
        let g2 = gaussian_nd(2).unwrap();
        let one = marchaud(&gaussian(0.0, 1.0).unwrap(), plus(0.5), 0.3, &cfg()).unwrap();
        let r = marchaud_directional(&g2, plus(0.5), &[1.0, 0.0], &[0.3, 0.0], &cfg()).unwrap();
        assert!((r.value - one.value).abs() < 1e-9);
        let c = constant_nd(2, 4.0).unwrap();
        let r = marchaud_directional(&c, plus(0.5), &[0.6, 0.8], &[0.3, 1.0], &cfg()).unwrap();
        assert_eq!(r.value, 0.0);
        let base = marchaud_directional(&g2, plus(0.5), &[1.0, 0.0], &[0.0, 0.0], &cfg()).unwrap();
        for th in [0.3, 1.1, 2.5, 4.0] {
            let xi = [f64::cos(th), f64::sin(th)];
            let r = marchaud_directional(&g2, plus(0.5), &xi, &[0.0, 0.0], &cfg()).unwrap();
            assert!((r.value - base.value).abs() < 1e-9);
        }
        assert!(marchaud_directional(&g2, plus(0.5), &[1.0, 1.0], &[0.0, 0.0], &cfg()).is_err());
    }

    #[test]
    fn classical_examples() {
        let s = catalog("trig_poly", &[0.0, 1.0]).unwrap().into_1d().unwrap();
        let r = classical_derivative_rep(&s, 0.0, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-7, "{r:?}");
        let r = classical_derivative_rep(&constant(3.0), 1.2, &cfg()).unwrap();
        assert_eq!(r.value, 0.0);
        let g = gaussian(0.0, 1.0).unwrap();
        let r = classical_derivative_rep(&g, 1.0, &cfg()).unwrap();
        assert!((r.value + (-0.5f64).exp()).abs() < 1e-7, "{r:?}");
    }

    #[test]
    fn laplacian_examples() {
        let g2 = gaussian_nd(2).unwrap();
        let r = laplacian_rep(&g2, &[0.0, 0.0], &cfg()).unwrap();
        assert!((r.value + 2.0).abs() < 1e-6, "{r:?}");
        let r = laplacian_rep(&g2, &[1.0, 0.0], &cfg()).unwrap();
        assert!((r.value + (-0.5f64).exp()).abs() < 1e-6, "{r:?}");
        let r = laplacian_rep(&constant_nd(3, 1.5).unwrap(), &[0.1, 0.2, 0.3], &cfg()).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn product_rule_examples() {
        let g = gaussian(0.0, 1.0).unwrap();
        let p = product_rule_defect(&g, &g, 0.5, 0.7, &cfg()).unwrap();
        assert!(p.residual <= 1e-7, "{p:?}");
        let p = product_rule_defect(&constant(3.0), &g, 0.5, -0.4, &cfg()).unwrap();
        assert_eq!(p.defect, 0.0);
        let d = marchaud(&g, plus(0.5), -0.4, &cfg()).unwrap();
        assert!((p.lhs - 3.0 * d.value).abs() < 1e-9);
    }

    #[test]
    fn scaling_examples() {
        let g = gaussian(0.0, 1.0).unwrap();
        for l in [1, 2] {
            let c = scaling_check(&g, 0.5, 2.0, 1.0, l, &cfg()).unwrap();
            assert!(c.residual <= 1e-7, "l = {l}: {c:?}");
            let c = scaling_check(&g, 0.5, 1.0, 1.0, l, &cfg()).unwrap();
            assert_eq!(c.residual, 0.0);
        }
        let e = exp_lambda(1.0).unwrap();
        let c = scaling_check(&e, 0.5, 3.0, 0.0, 1, &cfg()).unwrap();
        assert!((c.lhs - 3f64.sqrt()).abs() < 1e-8 && (c.rhs - 3f64.sqrt()).abs() < 1e-8, "{c:?}");
    }

    #[test]
    fn rl_examples() {
        let one = constant(1.0);
        for (beta, x) in [(0.3, 0.7), (1.0, 2.0), (1.7, 1.3)] {
            let r = rl_integral(&one, Some(0.0), beta, x, &cfg()).unwrap();
            let want = x.powf(beta) / gamma(beta + 1.0).unwrap();
            assert!((r.value - want).abs() < 1e-9 * want, "beta = {beta}: {r:?}");
        }
        let r = rl_derivative(&one, Some(0.0), 0.5, 1.0, &cfg()).unwrap();
        assert!((r.value - 1.0 / PI.sqrt()).abs() < 1e-7, "{r:?}");
        assert!(rl_integral(&one, Some(1.0), 0.5, 1.0, &cfg()).is_err());
        assert!(rl_integral(&one, None, 0.5, 1.0, &cfg()).is_err());
    }

    #[test]
    fn rl_power_rule() {
        // 𝒟^{1/2}_0 of I^1_0(1) = x·1_{x>0} is x^{1/2}/Γ(3/2).
        let ramp = Function1D::new("ramp", crate::funcspace::GrowthClass::BoundedHolder(1.0), |x| x.max(0.0));
        let r = rl_derivative(&ramp, Some(0.0), 0.5, 1.0, &cfg()).unwrap();
        assert!((r.value - 1.0 / gamma(1.5).unwrap()).abs() < 1e-7, "{r:?}");
    }

    #[test]
    fn rl_semigroup() {
        let g = gaussian(0.0, 1.0).unwrap();
        let inner_cfg = cfg();
        let gi = g.clone();
        let inner = Function1D::new("I^0.4 g", crate::funcspace::GrowthClass::BoundedHolder(1.0), move |y| {
            if y <= 0.0 {
                0.0
            } else {
                rl_integral(&gi, Some(0.0), 0.4, y, &inner_cfg).unwrap().value
            }
        });
        let lhs = rl_integral(&inner, Some(0.0), 0.3, 1.0, &cfg()).unwrap();
        let rhs = rl_integral(&g, Some(0.0), 0.7, 1.0, &cfg()).unwrap();
        assert!((lhs.value - rhs.value).abs() < 1e-7, "{lhs:?} vs {rhs:?}");
    }

    #[test]
    fn rl_matches_marchaud_on_the_line() {
        let g = gaussian(0.0, 1.0).unwrap();
        let r = rl_derivative(&g, None, 0.5, 0.5, &cfg()).unwrap();
        assert!((r.value - V_STAR).abs() < 1e-6, "{r:?}");
    }
}
