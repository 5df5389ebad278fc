//! Extension of a boundary datum `φ(t)` to the half space `x > 0` by the
//! degenerate parabolic problem
//!
//! ```text
//! ∂_t U = ((1-2s)/x) ∂_x U + ∂²_x U,   U(0,t) = φ(t),   U(x,t) → 0 as x → ∞,
//! ```
//!
//! realized by the kernel `P_s(x,τ) = x^{2s} e^{-x²/(4τ)} τ^{-1-s} / (4^s Γ(s))`
//! acting on the history: `U(x,t) = ∫₀^∞ P_s(x,τ) φ(t-τ) dτ`. The kernel has
//! unit mass, so `U - φ` is a Marchaud-type integral damped near `τ = 0`, and
//! `x^{-2s}(U(x,t) - φ(t)) → -Γ(1-s)/(s·4^s Γ(s)) · D^s_+ φ(t)` as `x → 0⁺`.
//!
//! The module also builds non-negative functions that are stationary
//! (`D^s φ = 0`) on an interval and measures their Harnack ratios.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{FracError, Result};
use crate::extrapolate::richardson;
use crate::funcspace::{Far, Function1D, GrowthClass, Grid1D};
use crate::grunwald::gl_weights;
use crate::quadrature::{singular_improper, Diagnostics, EvalResult, QuadConfig, Tail};
use crate::special::{c_extension, gamma, Side};

/// Default boundary-approach sequence for [`marchaud_via_extension`].
pub const DEFAULT_X_SEQUENCE: [f64; 5] = [0.2, 0.1, 0.05, 0.025, 0.0125];

fn check_s(s: f64) -> Result<()> {
    if s > 0.0 && s < 1.0 {
        Ok(())
    } else {
        Err(FracError::Domain(format!("s = {s} outside (0, 1)")))
    }
}

/// `∫_T^∞ (e^{-a/τ} - 1) τ^{-1-s} dτ`: beyond `T` the quadrature tail model
/// integrates the undamped limit, and this restores the damping.
fn damping_tail_correction(a: f64, s: f64, t_max: f64) -> f64 {
    let q = -a / t_max;
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 1..60 {
        term *= q / k as f64;
        let add = term / (s + k as f64);
        sum += add;
        if add.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum * t_max.powf(-s)
}

/// `∫₀^∞ e^{-x²/(4τ)} (φ(t-τ) - φ(t)) τ^{-1-s} dτ`.
///
/// The exponential factor makes the integrand negligible below `τ ≈ x²/400`,
/// so the lower cutoff sits there and no cancellation guard is needed.
fn damped_difference(phi: &Function1D, s: f64, x: f64, t: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    let ft = phi.eval(t);
    let tail = match phi.far(Side::Plus) {
        Far::Limit(c) => Tail::Limit(c - ft),
        Far::Periodic { mean, period } => Tail::Periodic { mean: mean - ft, period },
        Far::Unbounded => {
            return Err(FracError::Precondition(format!("`{}` is unbounded on its history", phi.name())))
        }
    };
    let a = 0.25 * x * x;
    let mut c = cfg.clone();
    c.eps = (1e-3 * a).min(cfg.eps);
    c.t_max = cfg.t_max.max(100.0 * a);
    c.guard_cancellation = false;
    c.vanish_order = phi.vanish_order(1).max(s + 0.5);
    c.tail = tail;
    let r = singular_improper(|tau| (-a / tau).exp() * (phi.eval(t - tau) - ft), s, &c)?;
    let correction = match tail {
        Tail::Limit(lim) => lim * damping_tail_correction(a, s, r.diagnostics.t_max_used),
        _ => 0.0,
    };
    Ok(EvalResult { value: r.value + correction, ..r })
}

/// `∫₀^∞ P_s(x,τ) dτ`, which should be 1.
pub fn kernel_mass(s: f64, x: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    check_s(s)?;
    if !(x > 0.0) {
        return Err(FracError::Domain(format!("x must be positive, got {x}")));
    }
    let a = 0.25 * x * x;
    let mut c = cfg.clone();
    c.eps = (1e-3 * a).min(cfg.eps);
    c.t_max = cfg.t_max.max(100.0 * a);
    c.guard_cancellation = false;
    c.vanish_order = s + 1.0;
    c.tail = Tail::Limit(1.0);
    let r = singular_improper(|tau| (-a / tau).exp(), s, &c)?;
    let correction = damping_tail_correction(a, s, r.diagnostics.t_max_used);
    let norm = x.powf(2.0 * s) / c_extension(s)?;
    Ok(EvalResult { value: r.value + correction, ..r }.scaled(norm))
}

/// `U(x,t) = ∫₀^∞ P_s(x,τ) φ(t-τ) dτ`, computed as `φ(t)` plus the damped
/// difference integral.
pub fn extend(phi: &Function1D, s: f64, x: f64, t: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    check_s(s)?;
    if !(x > 0.0) {
        return Err(FracError::Domain(format!("x must be positive, got {x}")));
    }
    let d = damped_difference(phi, s, x, t, cfg)?;
    let norm = x.powf(2.0 * s) / c_extension(s)?;
    let mut out = d.scaled(norm);
    out.value += phi.eval(t);
    Ok(out)
}

/// The extension of one datum at a fixed order.
#[derive(Clone)]
pub struct ExtensionField {
    pub s: f64,
    pub phi: Function1D,
    pub cfg: QuadConfig,
}

/// Finite-difference check of the extension PDE at one point.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PdeResidual {
    /// `|∂_t U - ((1-2s)/x) ∂_x U - ∂²_x U|`
    pub residual: f64,
    /// `max |U|` over the stencil
    pub scale: f64,
}

impl ExtensionField {
    pub fn new(phi: Function1D, s: f64, cfg: QuadConfig) -> Result<Self> {
        check_s(s)?;
        Ok(Self { s, phi, cfg })
    }

    pub fn eval(&self, x: f64, t: f64) -> Result<f64> {
        Ok(extend(&self.phi, self.s, x, t, &self.cfg)?.value)
    }

    /// Central differences with step `h` in both variables; needs `x ≥ 10h`.
    pub fn pde_residual(&self, x: f64, t: f64, h: f64) -> Result<PdeResidual> {
        if !(h > 0.0) || x < 10.0 * h {
            return Err(FracError::Stencil(format!("need h > 0 and x ≥ 10h (x = {x}, h = {h})")));
        }
        let pts = [(x, t), (x + h, t), (x - h, t), (x, t + h), (x, t - h)];
        let v: Vec<f64> = pts.par_iter().map(|&(a, b)| self.eval(a, b)).collect::<Result<_>>()?;
        let (u, up, um, tp, tm) = (v[0], v[1], v[2], v[3], v[4]);
        let ut = (tp - tm) / (2.0 * h);
        let ux = (up - um) / (2.0 * h);
        let uxx = (up - 2.0 * u + um) / (h * h);
        let residual = (ut - (1.0 - 2.0 * self.s) / x * ux - uxx).abs();
        let scale = v.iter().fold(0.0f64, |m, w| m.max(w.abs()));
        Ok(PdeResidual { residual, scale })
    }
}

/// `D^s_+ φ(t)` as the boundary limit `-(s/Γ(1-s)) · c_s · lim_{x→0⁺} x^{-2s}(U(x,t) - φ(t))`,
/// `c_s = 4^s Γ(s)`, extrapolated along `x_sequence` (geometric, decreasing).
///
/// The error expansion in `x` has exponents `2-2s, 2, 4-2s, 4, …`.
pub fn marchaud_via_extension(phi: &Function1D, s: f64, t: f64, x_sequence: &[f64], cfg: &QuadConfig) -> Result<EvalResult> {
    check_s(s)?;
    if x_sequence.len() < 2 || x_sequence.iter().any(|&x| !(x > 0.0)) {
        return Err(FracError::Domain("need at least two positive x values".into()));
    }
    let ratio = x_sequence[0] / x_sequence[1];
    for w in x_sequence.windows(2) {
        if !(ratio > 1.0) || ((w[0] / w[1]) / ratio - 1.0).abs() > 1e-9 {
            return Err(FracError::Domain("x values must form a decreasing geometric sequence".into()));
        }
    }
    let k = -s / gamma(1.0 - s)?;
    let parts: Vec<EvalResult> =
        x_sequence.par_iter().map(|&x| damped_difference(phi, s, x, t, cfg)).collect::<Result<_>>()?;
    // x^{-2s}(U - φ)·c_s is exactly the damped integral
    let values: Vec<f64> = parts.iter().map(|p| k * p.value).collect();
    let quad_err = parts.iter().map(|p| k.abs() * p.err_estimate).fold(0.0, f64::max);
    let exps = [2.0 - 2.0 * s, 2.0, 4.0 - 2.0 * s, 4.0];
    let ex = richardson(&values, ratio, &exps[..(x_sequence.len() - 1).min(4)])?;
    Ok(EvalResult {
        value: ex.value,
        err_estimate: ex.err_estimate + quad_err,
        diagnostics: Diagnostics {
            eps_used: *x_sequence.last().expect("non-empty"),
            t_max_used: parts[0].diagnostics.t_max_used,
            node_count: parts.iter().map(|p| p.diagnostics.node_count).sum(),
        },
    })
}

/// Result of applying the half derivative twice.
#[derive(Clone, Debug, Serialize)]
pub struct HalfComposition {
    pub value: f64,
    /// `φ'(t)`
    pub oracle: f64,
    pub residual: f64,
    pub grid_step: f64,
    /// Set when the interpolated intermediate looks under-resolved.
    pub warning: Option<String>,
}

/// Degree-5 Lagrange interpolation on a uniform table.
struct Table {
    start: f64,
    step: f64,
    values: Vec<f64>,
}

impl Table {
    fn eval_degree(&self, x: f64, points: usize) -> f64 {
        let n = self.values.len();
        let u = (x - self.start) / self.step;
        let first = (u.floor() as isize - (points as isize / 2 - 1)).clamp(0, (n - points) as isize) as usize;
        let mut sum = 0.0;
        for i in 0..points {
            let mut w = 1.0;
            let ui = (first + i) as f64;
            for j in 0..points {
                if j != i {
                    let uj = (first + j) as f64;
                    w *= (u - uj) / (ui - uj);
                }
            }
            sum += w * self.values[first + i];
        }
        sum
    }

    fn eval(&self, x: f64) -> f64 {
        if x < self.start {
            return 0.0;
        }
        self.eval_degree(x, 6)
    }
}

/// `D^{1/2}(D^{1/2} φ)(t)` through the extension, against `φ'(t)`.
///
/// The inner half derivative is tabulated with step `h` on the history of
/// `t` down to where `φ` has settled, then interpolated with degree-5
/// Lagrange polynomials for the outer application. Beyond the table the
/// inner result is taken as 0, which holds once `φ` has settled to a limit.
pub fn half_composition(phi: &Function1D, t: f64, h: f64, cfg: &QuadConfig) -> Result<HalfComposition> {
    let oracle = phi.analytic_derivative(t).ok_or_else(|| {
        FracError::Precondition(format!("`{}` has no analytic derivative to compare against", phi.name()))
    })?;
    if !matches!(phi.far(Side::Plus), Far::Limit(_)) {
        return Err(FracError::Precondition(format!("`{}` must settle on its history", phi.name())));
    }
    if !(h > 0.0) {
        return Err(FracError::Domain(format!("grid step must be positive, got {h}")));
    }
    let lo = phi.decay_interval(1e-16).map_or(t - 40.0, |(lo, _)| lo);
    let start = lo.min(t - 1.0) - 6.0 * h;
    let count = ((t - start) / h).ceil() as usize + 4;
    let start = t + 3.0 * h - (count - 1) as f64 * h;
    let xs = DEFAULT_X_SEQUENCE;
    let values: Vec<f64> = (0..count)
        .into_par_iter()
        .map(|i| marchaud_via_extension(phi, 0.5, start + i as f64 * h, &xs, cfg).map(|r| r.value))
        .collect::<Result<_>>()?;
    let table = std::sync::Arc::new(Table { start, step: h, values });
    // compare degree 5 and degree 3 half a step behind t
    let probe = t - 0.5 * h;
    let gap = (table.eval_degree(probe, 6) - table.eval_degree(probe, 4)).abs();
    let warning = (gap > 1e-4).then(|| format!("interpolation of the half derivative is coarse: {gap:.2e}"));
    let tab = table.clone();
    let inner = Function1D::new("half-derivative table", GrowthClass::BoundedHolder(1.0), move |x| tab.eval(x))
        .with_far(Far::Limit(0.0), Far::Limit(0.0))
        .with_smooth(true);
    let outer = marchaud_via_extension(&inner, 0.5, t, &xs, cfg)?;
    Ok(HalfComposition {
        value: outer.value,
        oracle,
        residual: (outer.value - oracle).abs(),
        grid_step: h,
        warning,
    })
}

/// Non-negative `φ` with the Grünwald–Letnikov discretization of `D^s_+ φ`
/// equal to zero at every node of `grid`, and `φ = exterior` elsewhere.
#[derive(Clone, Debug, Serialize)]
pub struct StationarySolution {
    pub s: f64,
    pub start: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

impl StationarySolution {
    pub fn grid(&self) -> Grid1D {
        Grid1D { start: self.start, step: self.step, count: self.values.len() }
    }
}

/// Solve `Σ_{k=0}^{K} w_k φ(t_i - kh) - L·Σ_{k≤K} w_k = 0` for the interior
/// nodes `t_i ∈ J`, with `w_k = (-1)^k C(s,k)` and `L` the far limit of the
/// exterior data on the history side.
///
/// The system is lower triangular with a positive diagonal and non-positive
/// off-diagonal weights, so forward substitution yields a non-negative
/// solution for non-negative data.
pub fn stationary_solve(
    interval: (f64, f64),
    exterior: &Function1D,
    s: f64,
    grid: Grid1D,
    k_max: usize,
) -> Result<StationarySolution> {
    check_s(s)?;
    let (a, b) = interval;
    let slack = 1e-9 * grid.step;
    if !(a < b) || grid.start < a - slack || grid.end() > b + slack {
        return Err(FracError::Domain(format!(
            "grid [{}, {}] must lie inside J = [{a}, {b}]",
            grid.start,
            grid.end()
        )));
    }
    let far = match exterior.far(Side::Plus) {
        Far::Limit(c) => c,
        _ => {
            return Err(FracError::Precondition(format!(
                "exterior `{}` needs a limit on its history",
                exterior.name()
            )))
        }
    };
    let h = grid.step;
    let w = gl_weights(s, k_max);
    let wsum: f64 = w.iter().sum();
    let mut phi = vec![0.0; grid.count];
    for i in 0..grid.count {
        let ti = grid.point(i);
        let mut acc = -far * wsum;
        for (k, wk) in w.iter().enumerate().skip(1) {
            let v = if k <= i {
                phi[i - k]
            } else {
                let p = ti - k as f64 * h;
                let v = exterior.eval(p);
                if v < 0.0 {
                    return Err(FracError::Negative { index: i, value: v });
                }
                v
            };
            acc += wk * v;
        }
        // w_0 = 1
        let v = -acc;
        if !v.is_finite() {
            return Err(FracError::Singular(format!("non-finite value at node {i}")));
        }
        if v < -1e-12 {
            return Err(FracError::Negative { index: i, value: v });
        }
        phi[i] = v.max(0.0);
    }
    Ok(StationarySolution { s, start: grid.start, step: h, values: phi })
}

/// Harnack windows: `sup` over `[t₀ - 3δ/4, t₀ - δ/4]` divided by `inf` over
/// `[t₀ + 3δ/4, t₀ + δ]`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct HarnackRatio {
    pub ratio: f64,
    pub sup_left: f64,
    pub inf_right: f64,
    pub left_nodes: usize,
    pub right_nodes: usize,
    /// `inf = 0` with a positive `sup`.
    pub violated: bool,
}

pub fn harnack_ratio(phi: &StationarySolution, t0: f64, delta: f64) -> Result<HarnackRatio> {
    if !(delta > 0.0) {
        return Err(FracError::Domain(format!("delta must be positive, got {delta}")));
    }
    let grid = phi.grid();
    let tol = 1e-9 * grid.step;
    if t0 - delta < grid.start - tol || t0 + delta > grid.end() + tol {
        return Err(FracError::Domain(format!(
            "[t0 - δ, t0 + δ] = [{}, {}] leaves the grid",
            t0 - delta,
            t0 + delta
        )));
    }
    let window = |lo: f64, hi: f64| -> Vec<f64> {
        (0..grid.count)
            .filter(|&i| {
                let p = grid.point(i);
                p >= lo - tol && p <= hi + tol
            })
            .map(|i| phi.values[i])
            .collect()
    };
    let left = window(t0 - 0.75 * delta, t0 - 0.25 * delta);
    let right = window(t0 + 0.75 * delta, t0 + delta);
    if left.is_empty() || right.is_empty() {
        return Err(FracError::EmptyWindow(format!("grid step {} too coarse for δ = {delta}", grid.step)));
    }
    let sup = left.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let inf = right.iter().cloned().fold(f64::INFINITY, f64::min);
    let (ratio, violated) = if sup == 0.0 {
        (0.0, false)
    } else if inf == 0.0 {
        (f64::INFINITY, true)
    } else {
        (sup / inf, false)
    };
    Ok(HarnackRatio { ratio, sup_left: sup, inf_right: inf, left_nodes: left.len(), right_nodes: right.len(), violated })
}
