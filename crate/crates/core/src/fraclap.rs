//! The fractional Laplacian `(-Δ)^s` in its principal-value, Fourier
//! multiplier and hypersingular forms, and the identities tying it to
//! Marchaud derivatives.
//!
//! Every ℝⁿ integral is done in polar form: a radial singular integral per
//! direction, then a fixed quadrature over the unit sphere. Directions are
//! evaluated in parallel and reduced in node order.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;

use crate::error::{FracError, Result};
use crate::funcspace::{Far, Function1D, FunctionND};
use crate::marchaud::{directional_difference_integral, marchaud, marchaud_directional};
use crate::quadrature::{finite_interval, gauss_legendre, singular_improper, Diagnostics, EvalResult, QuadConfig, Tail};
use crate::special::{a_coefficient, beta_n, c_fraclap, chi, gamma, sphere_area, FracOrder, Route, Side};
use crate::weyl::TrigPoly;
use crate::IdentityCheck;

/// Default number of directions on the circle; the sphere uses a product
/// rule with about `DEFAULT_SPHERE_NODES` points.
pub const DEFAULT_CIRCLE_NODES: usize = 64;
pub const DEFAULT_SPHERE_NODES: usize = 512;

/// Quadrature on the unit sphere `S^{n-1}`: `(direction, weight)` pairs whose
/// weights add up to the sphere area.
///
/// `n = 1`: the two points ±1. `n = 2`: `m` equispaced angles, offset by
/// `rotation`. `n = 3`: Gauss–Legendre in `cos θ` times a trapezoid in `φ`,
/// with at least `m` points.
pub fn sphere_rule(n: usize, m: usize, rotation: f64) -> Result<Vec<(Vec<f64>, f64)>> {
    match n {
        1 => Ok(vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)]),
        2 => {
            if m < 4 {
                return Err(FracError::Domain("need at least 4 circle nodes".into()));
            }
            let w = 2.0 * PI / m as f64;
            Ok((0..m)
                .map(|j| {
                    let th = rotation + 2.0 * PI * j as f64 / m as f64;
                    (vec![th.cos(), th.sin()], w)
                })
                .collect())
        }
        3 => {
            let mz = ((m as f64 / 2.0).sqrt().ceil() as usize).max(4);
            let mp = 2 * mz;
            let (z, wz) = gauss_legendre(mz);
            let mut out = Vec::with_capacity(mz * mp);
            for (zi, wi) in z.iter().zip(&wz) {
                let r = (1.0 - zi * zi).sqrt();
                for j in 0..mp {
                    let ph = rotation + 2.0 * PI * j as f64 / mp as f64;
                    out.push((vec![r * ph.cos(), r * ph.sin(), *zi], wi * 2.0 * PI / mp as f64));
                }
            }
            Ok(out)
        }
        _ => Err(FracError::Domain(format!("sphere quadrature supports n = 1, 2, 3, got {n}"))),
    }
}

fn default_nodes(n: usize) -> usize {
    if n == 3 {
        DEFAULT_SPHERE_NODES
    } else {
        DEFAULT_CIRCLE_NODES
    }
}

/// Weighted sum over the sphere of a per-direction result.
fn sphere_sum(rule: &[(Vec<f64>, f64)], per_dir: impl Fn(&[f64]) -> Result<EvalResult> + Sync) -> Result<EvalResult> {
    let parts: Vec<Result<EvalResult>> = rule.par_iter().map(|(xi, _)| per_dir(xi)).collect();
    let mut acc = EvalResult::exact(0.0);
    for (r, (_, w)) in parts.into_iter().zip(rule) {
        acc = acc.plus(r?.scaled(*w));
    }
    Ok(acc)
}

fn check_point(f: &FunctionND, x: &[f64]) -> Result<()> {
    if x.len() != f.dim() {
        return Err(FracError::Domain(format!(
            "point has {} coordinates, function lives on ℝ^{}",
            x.len(),
            f.dim()
        )));
    }
    Ok(())
}

/// Tail model for `2f(x) - f(x+tξ) - f(x-tξ)`.
fn symmetric_tail(f: &FunctionND, fx: f64) -> Result<Tail> {
    match (f.far(Side::Plus), f.far(Side::Minus)) {
        (Far::Limit(a), Far::Limit(b)) => Ok(Tail::Limit(2.0 * fx - a - b)),
        (Far::Periodic { mean: a, period: p }, Far::Periodic { mean: b, period: q }) if p == q => {
            Ok(Tail::Periodic { mean: 2.0 * fx - a - b, period: p })
        }
        _ => Err(FracError::Precondition(format!(
            "`{}` has no usable behaviour at infinity for the fractional Laplacian",
            f.name()
        ))),
    }
}

/// `(-Δ)^s f(x) = c(s,n)/2 ∫_{ℝⁿ} (2f(x) - f(x+z) - f(x-z)) |z|^{-n-2s} dz`.
pub fn fraclap_pv(f: &FunctionND, s: f64, x: &[f64], cfg: &QuadConfig) -> Result<EvalResult> {
    fraclap_pv_with(f, s, x, default_nodes(f.dim()), 0.0, cfg)
}

/// [`fraclap_pv`] with an explicit sphere resolution and rotation.
pub fn fraclap_pv_with(
    f: &FunctionND,
    s: f64,
    x: &[f64],
    nodes: usize,
    rotation: f64,
    cfg: &QuadConfig,
) -> Result<EvalResult> {
    check_point(f, x)?;
    let n = f.dim();
    let c = c_fraclap(s, n as u32, Route::ClosedForm)?;
    let fx = f.eval(x);
    let mut radial = cfg.clone();
    radial.vanish_order = if f.is_smooth() { 2.0 } else { 1.0 };
    radial.tail = symmetric_tail(f, fx)?;
    let rule = sphere_rule(n, nodes, rotation)?;
    let total = sphere_sum(&rule, |xi| {
        singular_improper(
            |t| {
                let mut p = [0.0; 3];
                let mut m = [0.0; 3];
                for i in 0..n {
                    p[i] = x[i] + t * xi[i];
                    m[i] = x[i] - t * xi[i];
                }
                2.0 * fx - f.eval(&p[..n]) - f.eval(&m[..n])
            },
            2.0 * s,
            &radial,
        )
    })?;
    Ok(total.scaled(0.5 * c))
}

/// Input to the Fourier-multiplier route.
#[derive(Clone, Copy, Debug)]
pub enum MultiplierInput<'a> {
    Trig(&'a TrigPoly),
    /// A rapidly decaying function with a decay profile.
    Decaying(&'a Function1D),
}

/// `ℱ^{-1}(|ξ|^{2s} ℱf)(x)` in one dimension, `s ≥ 0`.
///
/// Exact for trigonometric polynomials. For decaying functions it is
/// `(1/π) ∫₀^∞ ξ^{2s} F(ξ) dξ` with `F(ξ) = ∫₀^∞ (f(x-u) + f(x+u)) cos(ξu) du`,
/// both integrals done numerically.
pub fn fraclap_multiplier_1d(f: MultiplierInput<'_>, s: f64, x: f64) -> Result<EvalResult> {
    if !(s >= 0.0) {
        return Err(FracError::Domain(format!("s must be non-negative, got {s}")));
    }
    match f {
        MultiplierInput::Trig(p) => Ok(EvalResult::exact(
            p.terms()
                .iter()
                .map(|&(k, a, b)| {
                    let kf = k as f64;
                    kf.powf(2.0 * s) * (a * (kf * x).cos() + b * (kf * x).sin())
                })
                .sum(),
        )),
        MultiplierInput::Decaying(g) => multiplier_quadrature(g, s, x),
    }
}

fn multiplier_quadrature(g: &Function1D, s: f64, x: f64) -> Result<EvalResult> {
    let (lo, hi) = g.decay_interval(1e-18).ok_or_else(|| {
        FracError::Precondition(format!("`{}` has no decay profile for the Fourier route", g.name()))
    })?;
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(FracError::Precondition(format!("`{}` does not decay on both sides", g.name())));
    }
    let reach = (x - lo).max(hi - x).max(1.0);
    let pieces = |xi: f64| ((xi * reach / PI).ceil() as usize).clamp(8, 4096);
    let transform = |xi: f64| -> Result<EvalResult> {
        crate::quadrature::smooth_interval(
            |u| (g.eval(x - u) + g.eval(x + u)) * (xi * u).cos(),
            0.0,
            reach,
            pieces(xi),
            1e-13,
        )
    };
    let f0 = transform(0.0)?.value.abs().max(f64::MIN_POSITIVE);
    // frequency cutoff: first doubling where the weighted transform is negligible
    let mut xi_max = 4.0;
    loop {
        let v = transform(xi_max)?.value.abs() * xi_max.powf(2.0 * s);
        let v2 = transform(0.75 * xi_max)?.value.abs() * (0.75 * xi_max).powf(2.0 * s);
        if v.max(v2) < 1e-13 * f0 {
            break;
        }
        xi_max *= 2.0;
        if xi_max > 4096.0 {
            return Err(FracError::NonConvergence { err: v, tol: 1e-13 * f0 });
        }
    }
    let cell = std::cell::Cell::new(0.0f64);
    let outer = finite_interval(
        |xi| match transform(xi) {
            Ok(r) => {
                cell.set(cell.get().max(r.err_estimate * xi.powf(2.0 * s)));
                xi.powf(2.0 * s) * r.value
            }
            Err(_) => f64::NAN,
        },
        0.0,
        xi_max,
        1e-12,
    )?;
    let inner_err = cell.get() * xi_max;
    if !outer.value.is_finite() {
        return Err(FracError::NonFinite(outer.value));
    }
    Ok(EvalResult {
        value: outer.value / PI,
        err_estimate: (outer.err_estimate + inner_err) / PI,
        diagnostics: Diagnostics { eps_used: 0.0, t_max_used: xi_max, node_count: outer.diagnostics.node_count },
    })
}

/// `(-Δ)^{α/2} f(x) = -sin(απ/2)/(β_n(α) A_l(α)) ∫_{ℝⁿ} Δ^l_y f(x) |y|^{-n-α} dy`
/// with `Δ^l_y f(x) = Σ_k (-1)^k C(l,k) f(x - ky)`.
///
/// Integer α below `l` makes `A_l(α)` vanish and is rejected.
pub fn fraclap_hypersingular(f: &FunctionND, alpha: f64, l: u32, x: &[f64], cfg: &QuadConfig) -> Result<EvalResult> {
    check_point(f, x)?;
    if !(alpha > 0.0 && alpha < 2.0) || alpha >= l as f64 {
        return Err(FracError::Domain(format!("need 0 < alpha < 2 and alpha < l (alpha = {alpha}, l = {l})")));
    }
    let a = a_coefficient(l, alpha);
    if a.abs() < 1e-13 {
        return Err(FracError::Degenerate { alpha, l });
    }
    let n = f.dim();
    let rule = sphere_rule(n, default_nodes(n), 0.0)?;
    let total = sphere_sum(&rule, |xi| directional_difference_integral(f, alpha, l, Side::Plus, xi, x, cfg))?;
    let k = -(alpha * FRAC_PI_2).sin() / (beta_n(alpha, n as u32)? * a);
    Ok(total.scaled(k))
}

/// `D^α_+ f(x) + D^α_- f(x)` against `α/(c(α/2,1) Γ(1-α)) (-d²/dx²)^{α/2} f(x)`.
pub fn sum_identity_1d(f: &Function1D, alpha: f64, x: f64, cfg: &QuadConfig) -> Result<IdentityCheck> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(FracError::Domain(format!("alpha = {alpha} outside (0, 1)")));
    }
    let plus = marchaud(f, FracOrder::single(alpha, Side::Plus)?, x, cfg)?;
    let minus = marchaud(f, FracOrder::single(alpha, Side::Minus)?, x, cfg)?;
    let lap = fraclap_pv(&FunctionND::from_1d(f), 0.5 * alpha, &[x], cfg)?;
    let k = alpha / (c_fraclap(0.5 * alpha, 1, Route::ClosedForm)? * gamma(1.0 - alpha)?);
    let lhs = plus.plus(minus);
    Ok(IdentityCheck::new(lhs.value, k * lap.value, lhs.err_estimate + k * lap.err_estimate))
}

/// Sphere average of directional Marchaud derivatives against the
/// fractional Laplacian.
///
/// One-sided: `∫_{S^{n-1}} D^α_ξ f(x) dξ = α/Γ(1-α) · β_n(α)/sin(απ/2) · (-Δ)^{α/2} f(x)`.
/// Two-sided: `∫_{S^{n-1}} (D^α_{+,ξ} + D^α_{-,ξ}) f(x) dξ = 2/(C_{α,1} c(α/2,n)) · (-Δ)^{α/2} f(x)`
/// with `C_{α,1} = Γ(1-α)/α`.
pub fn spherical_mean_identity(
    f: &FunctionND,
    alpha: f64,
    x: &[f64],
    two_sided: bool,
    nodes: usize,
    cfg: &QuadConfig,
) -> Result<IdentityCheck> {
    check_point(f, x)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(FracError::Domain(format!("alpha = {alpha} outside (0, 1)")));
    }
    let n = f.dim();
    if n == 2 && nodes < 64 {
        return Err(FracError::Domain(format!("need at least 64 circle nodes, got {nodes}")));
    }
    let rule = sphere_rule(n, nodes, 0.0)?;
    let plus = FracOrder::single(alpha, Side::Plus)?;
    let minus = FracOrder::single(alpha, Side::Minus)?;
    let lhs = sphere_sum(&rule, |xi| {
        let d = marchaud_directional(f, plus, xi, x, cfg)?;
        if two_sided {
            Ok(d.plus(marchaud_directional(f, minus, xi, x, cfg)?))
        } else {
            Ok(d)
        }
    })?;
    let lap = fraclap_pv_with(f, 0.5 * alpha, x, nodes, 0.0, cfg)?;
    let k = if two_sided {
        2.0 / (chi(alpha, 1, Route::ClosedForm)? * c_fraclap(0.5 * alpha, n as u32, Route::ClosedForm)?)
    } else {
        alpha / gamma(1.0 - alpha)? * beta_n(alpha, n as u32)? / (alpha * FRAC_PI_2).sin()
    };
    Ok(IdentityCheck::new(lhs.value, k * lap.value, lhs.err_estimate + k * lap.err_estimate))
}

/// Sphere area used by the rules, exposed for callers normalizing averages.
pub fn sphere_measure(n: usize) -> f64 {
    sphere_area(n as u32)
}
