//! Singular improper integrals of the form `∫₀^∞ g(t) t^{-1-α} dt`.
//!
//! The engine splits the half line into three pieces:
//!
//! | piece      | range        | treatment                                         |
//! |------------|--------------|---------------------------------------------------|
//! | head       | `(0, ε]`     | model `t^γ·(cubic in t)` integrated exactly       |
//! | body       | `[ε, T]`     | adaptive Gauss–Kronrod 21 in `u = ln t`           |
//! | tail       | `[T, ∞)`     | analytic, driven by the declared [`Tail`] model   |
//!
//! Panel results are always summed in ascending order of their left endpoint,
//! so results do not depend on refinement history.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{FracError, Result};

/// Behaviour of the integrand numerator `g(t)` beyond the upper cutoff.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tail {
    /// `g` is essentially constant past `T`; the value `g(T)` is used.
    Settled,
    /// `g(t) → c` as `t → ∞`.
    Limit(f64),
    /// `g` is periodic with the given period and mean past `T`.
    Periodic { mean: f64, period: f64 },
}

/// Cutoffs and tolerances for [`singular_improper`].
#[derive(Clone, Debug, PartialEq)]
pub struct QuadConfig {
    /// Lower cutoff ε; the head `(0, ε]` is integrated from a power model.
    pub eps: f64,
    /// Upper truncation T.
    pub t_max: f64,
    /// Relative tolerance for the body integral.
    pub rel_tol: f64,
    /// Maximum bisection depth of a single panel.
    pub max_subdiv: usize,
    /// Hard cap on the number of live panels.
    pub max_panels: usize,
    /// Known rate γ with `g(t) = O(t^γ)` at 0.
    pub vanish_order: f64,
    /// `g` is a difference of O(1) values, so its roundoff does not shrink
    /// with `t`; the effective ε is raised accordingly.
    pub guard_cancellation: bool,
    /// Model for `g` past the upper cutoff.
    pub tail: Tail,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            eps: 1e-8,
            t_max: 1e4,
            rel_tol: 1e-10,
            max_subdiv: 60,
            max_panels: 50_000,
            vanish_order: 1.0,
            guard_cancellation: true,
            tail: Tail::Settled,
        }
    }
}

impl QuadConfig {
    pub fn with_vanish_order(mut self, gamma: f64) -> Self {
        self.vanish_order = gamma;
        self
    }

    pub fn with_tail(mut self, tail: Tail) -> Self {
        self.tail = tail;
        self
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    pub eps_used: f64,
    pub t_max_used: f64,
    pub node_count: usize,
}

/// A value together with an estimate of its numerical error.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub err_estimate: f64,
    pub diagnostics: Diagnostics,
}

impl EvalResult {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            err_estimate: 0.0,
            diagnostics: Diagnostics::default(),
        }
    }

    /// `k · self`, propagating the error estimate.
    pub fn scaled(self, k: f64) -> Self {
        Self {
            value: self.value * k,
            err_estimate: self.err_estimate * k.abs(),
            diagnostics: self.diagnostics,
        }
    }

    /// Sum of two results; diagnostics are merged.
    pub fn plus(self, other: EvalResult) -> Self {
        Self {
            value: self.value + other.value,
            err_estimate: self.err_estimate + other.err_estimate,
            diagnostics: Diagnostics {
                eps_used: self.diagnostics.eps_used.max(other.diagnostics.eps_used),
                t_max_used: self.diagnostics.t_max_used.max(other.diagnostics.t_max_used),
                node_count: self.diagnostics.node_count + other.diagnostics.node_count,
            },
        }
    }
}

// Gauss–Kronrod 21-point abscissae and weights (QUADPACK tables).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    abs: f64,
    depth: usize,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn check(x: f64, y: f64) -> Result<f64> {
    if y.is_finite() {
        Ok(y)
    } else {
        Err(FracError::NonFinite(x))
    }
}

/// One Gauss–Kronrod 21 panel: (value, error estimate, ∫|f|).
fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = check(center, f(center))?;
    let mut res_g = 0.0;
    let mut res_k = fc * WGK[10];
    let mut res_abs = fc.abs() * WGK[10];
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let x1 = center - dx;
        let x2 = center + dx;
        let f1 = check(x1, f(x1))?;
        let f2 = check(x2, f(x2))?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && floor > err {
        err = floor;
    }
    Ok((value, err, res_abs))
}

/// Outcome of a globally adaptive integration.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Adaptive {
    pub value: f64,
    pub err: f64,
    pub evals: usize,
    pub tol: f64,
}

impl Adaptive {
    pub fn converged(&self) -> bool {
        self.err <= self.tol
    }
}

/// Globally adaptive GK21 over the partition given by `breaks`.
///
/// Refinement stops when the summed error estimate drops below
/// `max(abs_tol, rel_tol · max(|I|, 1e-3·∫|f|))` (and never below the roundoff
/// floor of the rule), when the panel cap is hit, or
/// when every remaining panel is at maximum depth or at its roundoff floor.
pub(crate) fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    breaks: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_depth: usize,
    max_panels: usize,
) -> Result<Adaptive> {
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new();
    let mut evals = 0usize;
    let (mut total, mut total_err, mut total_abs) = (0.0, 0.0, 0.0);
    for w in breaks.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let (value, err, abs) = gk21(f, w[0], w[1])?;
        evals += 21;
        total += value;
        total_err += err;
        total_abs += abs;
        heap.push(Panel { a: w[0], b: w[1], value, err, abs, depth: 0 });
    }
    // The roundoff floor of the GK21 estimates is 50ε∫|f|; never ask for less.
    let tolerance = |total: f64, abs: f64| {
        abs_tol
            .max(rel_tol * total.abs().max(1e-3 * abs))
            .max(100.0 * f64::EPSILON * abs)
    };
    while total_err > tolerance(total, total_abs) && heap.len() + frozen.len() < max_panels {
        let Some(p) = heap.pop() else { break };
        if p.depth >= max_depth || p.err <= 100.0 * f64::EPSILON * p.abs {
            frozen.push(p);
            continue;
        }
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            frozen.push(p);
            continue;
        }
        let (v1, e1, a1) = gk21(f, p.a, mid)?;
        let (v2, e2, a2) = gk21(f, mid, p.b)?;
        evals += 42;
        total += v1 + v2 - p.value;
        total_err += e1 + e2 - p.err;
        total_abs += a1 + a2 - p.abs;
        heap.push(Panel { a: p.a, b: mid, value: v1, err: e1, abs: a1, depth: p.depth + 1 });
        heap.push(Panel { a: mid, b: p.b, value: v2, err: e2, abs: a2, depth: p.depth + 1 });
    }
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(frozen);
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let (mut value, mut err, mut abs) = (0.0, 0.0, 0.0);
    for p in &panels {
        value += p.value;
        err += p.err;
        abs += p.abs;
    }
    Ok(Adaptive { value, err, evals, tol: tolerance(value, abs) })
}

/// `∫₀^ε g(t) t^{-1-α} dt` from the model `g(t) = t^γ (c₀ + c₁t + c₂t² + c₃t³)`
/// fitted through `g(jε)`, `j = 1..4`. The error estimate compares against
/// the three-term fit.
fn head_integral<G: Fn(f64) -> f64>(g: &G, eps: f64, gamma: f64, alpha: f64) -> Result<(f64, f64)> {
    let mut r = [0.0; 4];
    for (j, slot) in r.iter_mut().enumerate() {
        let t = (j + 1) as f64 * eps;
        *slot = check(t, g(t))? / t.powf(gamma);
    }
    let fit = |m: usize| -> f64 {
        // Solve the Vandermonde system Σ_i c̃_i j^i = r_j on nodes 1..m.
        let mut a = [[0.0; 5]; 4];
        for j in 0..m {
            for i in 0..m {
                a[j][i] = ((j + 1) as f64).powi(i as i32);
            }
            a[j][m] = r[j];
        }
        for col in 0..m {
            let piv = a[col][col];
            for row in 0..m {
                if row != col {
                    let k = a[row][col] / piv;
                    for c in col..=m {
                        a[row][c] -= k * a[col][c];
                    }
                }
            }
        }
        (0..m).map(|i| a[i][m] / a[i][i] / (gamma + i as f64 - alpha)).sum()
    };
    let scale = eps.powf(gamma - alpha);
    let h4 = scale * fit(4);
    let h3 = scale * fit(3);
    Ok((h4, (h4 - h3).abs()))
}

/// `lim_{ε→0⁺} ∫_ε^∞ g(t) t^{-1-α} dt`.
///
/// `alpha` may be negative (integrable power weights such as the
/// Riemann–Liouville kernel). The head model uses `cfg.vanish_order`, which
/// must exceed `alpha`.
pub fn singular_improper<G: Fn(f64) -> f64>(g: G, alpha: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    let gamma = cfg.vanish_order;
    if !(cfg.eps > 0.0 && cfg.eps < cfg.t_max) {
        return Err(FracError::Precondition(format!(
            "cutoffs must satisfy 0 < eps < t_max (eps = {}, t_max = {})",
            cfg.eps, cfg.t_max
        )));
    }
    if !(cfg.rel_tol > 0.0) {
        return Err(FracError::Precondition("rel_tol must be positive".into()));
    }
    if gamma <= alpha {
        return Err(FracError::Precondition(format!(
            "vanish order {gamma} must exceed alpha = {alpha} for convergence at 0"
        )));
    }
    let rel_tol = cfg.rel_tol.max(1e-15);
    let t_max = cfg.t_max;
    // A difference g of O(1) values carries roundoff of order ε_mach, which
    // the weight amplifies to ε_mach·ε^{-α}/α. Raise ε until that is well
    // below tolerance; the polynomial head model keeps the cost of doing so
    // small.
    let mut eps = cfg.eps;
    if cfg.guard_cancellation && alpha > 0.0 {
        let safe = (20.0 * f64::EPSILON / (alpha * rel_tol)).powf(1.0 / alpha);
        eps = eps.max(safe.min(1e-2));
    }
    if eps >= t_max {
        return Err(FracError::Precondition(format!("effective cutoff {eps} exceeds t_max = {t_max}")));
    }
    let mut nodes = 0usize;

    let (head, head_err) = head_integral(&g, eps, gamma, alpha)?;
    nodes += 4;

    // Body [ε, T] in u = ln t.
    let (u0, u1) = (eps.ln(), t_max.ln());
    let mut breaks = vec![u0];
    let mut u = u0.floor() + 1.0;
    while u < u1 {
        breaks.push(u);
        u += 1.0;
    }
    breaks.push(u1);
    let body_fn = |u: f64| {
        let t = u.exp();
        g(t) * (-alpha * u).exp()
    };
    // A cancelling difference cannot be resolved below its own roundoff,
    // ε_mach·|g|·ε^{-α}/α, however small the integral itself is.
    let noise_floor = if cfg.guard_cancellation && alpha > 0.0 {
        let scale = (0..=16)
            .map(|i| g(eps * (t_max / eps).powf(i as f64 / 16.0)).abs())
            .filter(|v| v.is_finite())
            .fold(0.0f64, f64::max);
        nodes += 17;
        50.0 * f64::EPSILON * scale * eps.powf(-alpha) / alpha
    } else {
        0.0
    };
    let body = adaptive(&body_fn, &breaks, rel_tol, noise_floor, cfg.max_subdiv, cfg.max_panels)?;
    nodes += body.evals;

    // Tail [T, ∞).
    let power_tail = |c: f64| -> Result<f64> {
        if c == 0.0 {
            Ok(0.0)
        } else if alpha > 0.0 {
            Ok(c * t_max.powf(-alpha) / alpha)
        } else {
            Err(FracError::Precondition(format!(
                "integrand tends to {c} at infinity but the weight t^(-1-alpha) with alpha = {alpha} is not integrable"
            )))
        }
    };
    let (tail, tail_err) = match cfg.tail {
        Tail::Settled => {
            let gt = check(t_max, g(t_max))?;
            let gh = check(0.5 * t_max, g(0.5 * t_max))?;
            nodes += 2;
            let v = power_tail(gt)?;
            let e = if alpha > 0.0 {
                (gt - gh).abs() * t_max.powf(-alpha) / alpha
            } else {
                gt.abs().max(gh.abs()) * t_max.powf(-alpha)
            };
            (v, e)
        }
        Tail::Limit(lim) => {
            let gt = check(t_max, g(t_max))?;
            nodes += 1;
            let v = power_tail(lim)?;
            let e = if alpha > 0.0 {
                2.0 * (gt - lim).abs() * t_max.powf(-alpha) / alpha
            } else {
                (gt - lim).abs() * t_max.powf(-alpha)
            };
            (v, e)
        }
        Tail::Periodic { mean, period } => {
            if !(period > 0.0) {
                return Err(FracError::Precondition("tail period must be positive".into()));
            }
            if mean != 0.0 && alpha <= 0.0 {
                power_tail(mean)?;
            }
            // Average the truncation point over one period: the oscillatory
            // remainder then drops from O(T^{-1-α}) to O(T^{-2-α}).
            let w = |t: f64| g(t) * t.powf(-1.0 - alpha) * (t_max + period - t) / period;
            let nb = 8;
            let wb: Vec<f64> = (0..=nb).map(|i| t_max + period * i as f64 / nb as f64).collect();
            let piece = adaptive(&w, &wb, rel_tol, 0.0, cfg.max_subdiv, cfg.max_panels)?;
            nodes += piece.evals;
            let t2 = t_max + period;
            let mean_part = if mean == 0.0 {
                0.0
            } else if (alpha - 1.0).abs() < 1e-12 {
                mean * (t2 / t_max).ln() / period
            } else {
                mean * (t2.powf(1.0 - alpha) - t_max.powf(1.0 - alpha)) / (alpha * (1.0 - alpha) * period)
            };
            let mut sup = 0.0f64;
            for i in 0..16 {
                let t = t_max + period * i as f64 / 16.0;
                sup = sup.max((g(t) - mean).abs());
            }
            nodes += 16;
            let e = piece.err + 2.0 * (1.0 + alpha.abs()) * period * sup * t_max.powf(-2.0 - alpha);
            (piece.value + mean_part, e)
        }
    };

    let value = head + body.value + tail;
    let err_estimate = head_err + body.err + tail_err;
    if !body.converged() && body.err > 10.0 * body.tol {
        return Err(FracError::NonConvergence { err: body.err, tol: body.tol });
    }
    Ok(EvalResult {
        value,
        err_estimate,
        diagnostics: Diagnostics { eps_used: eps, t_max_used: t_max, node_count: nodes },
    })
}

// Width of the tanh-sinh parameter range: the map saturates well before |v| = 6.
const TS_RANGE: f64 = 6.0;

/// `∫_a^b g(t) dt` for `g` continuous on `(a, b)` with at most integrable
/// endpoint singularities.
///
/// A tanh-sinh change of variables clusters nodes at both endpoints; the
/// transformed integrand is then integrated adaptively. Nodes that round onto
/// an endpoint are skipped, so `g` is never evaluated at `a` or `b`.
pub fn finite_interval<G: Fn(f64) -> f64>(g: G, a: f64, b: f64, rel_tol: f64) -> Result<EvalResult> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(FracError::Domain("finite_interval needs finite endpoints".into()));
    }
    if a == b {
        return Ok(EvalResult::exact(0.0));
    }
    if b < a {
        return finite_interval(g, b, a, rel_tol).map(|r| r.scaled(-1.0));
    }
    let len = b - a;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mapped = |v: f64| {
        let z = half_pi * v.sinh();
        // t - a = len / (1 + e^{-2z}),  b - t = len / (1 + e^{2z})
        let t = if v < 0.0 {
            a + len / (1.0 + (-2.0 * z).exp())
        } else {
            b - len / (1.0 + (2.0 * z).exp())
        };
        if t <= a || t >= b {
            return 0.0;
        }
        let e = (-2.0 * z.abs()).exp();
        let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
        let jac = 0.5 * len * half_pi * v.cosh() * sech2;
        if jac == 0.0 {
            0.0
        } else {
            g(t) * jac
        }
    };
    let breaks: Vec<f64> = (0..=12).map(|i| -TS_RANGE + i as f64).collect();
    let r = adaptive(&mapped, &breaks, rel_tol.max(1e-15), 0.0, 60, 20_000)?;
    if !r.converged() && r.err > 10.0 * r.tol {
        return Err(FracError::NonConvergence { err: r.err, tol: r.tol });
    }
    Ok(EvalResult {
        value: r.value,
        err_estimate: r.err,
        diagnostics: Diagnostics { eps_used: 0.0, t_max_used: b, node_count: r.evals },
    })
}

/// Plain adaptive GK21 on `[a, b]` split into `pieces` initial panels.
/// Intended for smooth (possibly oscillatory) integrands.
pub fn smooth_interval<G: Fn(f64) -> f64>(g: G, a: f64, b: f64, pieces: usize, rel_tol: f64) -> Result<EvalResult> {
    let n = pieces.max(1);
    let breaks: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
    let r = adaptive(&g, &breaks, rel_tol.max(1e-15), 0.0, 60, 50_000)?;
    if !r.converged() && r.err > 10.0 * r.tol {
        return Err(FracError::NonConvergence { err: r.err, tol: r.tol });
    }
    Ok(EvalResult {
        value: r.value,
        err_estimate: r.err,
        diagnostics: Diagnostics { eps_used: 0.0, t_max_used: b, node_count: r.evals },
    })
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn one_sided_constant() {
        let r = singular_improper(|t: f64| -(-t).exp_m1(), 0.5, &QuadConfig::default().with_tail(Tail::Limit(1.0))).unwrap();
        assert!(rel(r.value, 2.0 * PI.sqrt()) < 1e-10, "{r:?}");
        assert!(r.err_estimate < 1e-8);
    }

    #[test]
    fn second_order_constant() {
        let cfg = QuadConfig::default().with_vanish_order(2.0).with_tail(Tail::Limit(1.0));
        let r = singular_improper(|t: f64| (-t).exp_m1().powi(2), 1.0, &cfg).unwrap();
        assert!(rel(r.value, 2.0 * 2f64.ln()) < 1e-10, "{r:?}");
    }

    #[test]
    fn zero_integrand() {
        let r = singular_improper(|_| 0.0, 0.7, &QuadConfig::default()).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.err_estimate, 0.0);
    }

    #[test]
    fn vanish_order_must_exceed_alpha() {
        let cfg = QuadConfig::default().with_vanish_order(0.5);
        assert!(matches!(
            singular_improper(|t| t, 0.6, &cfg),
            Err(FracError::Precondition(_))
        ));
    }

    #[test]
    fn periodic_tail() {
        // ∫₀^∞ (1 - cos t) t^{-1-α} dt = Γ(1-α) cos(πα/2)/α, which is √(2π) at α = 1/2.
        let cfg = QuadConfig::default()
            .with_vanish_order(2.0)
            .with_tail(Tail::Periodic { mean: 1.0, period: 2.0 * PI });
        let r = singular_improper(|t: f64| 1.0 - t.cos(), 0.5, &cfg).unwrap();
        assert!(rel(r.value, (2.0 * PI).sqrt()) < 1e-9, "{r:?}");
    }

    #[test]
    fn negative_exponent_weight() {
        // ∫₀^∞ t^{-1/2} e^{-t} dt = √π
        let cfg = QuadConfig::default().with_vanish_order(0.0).with_tail(Tail::Limit(0.0));
        let r = singular_improper(|t: f64| (-t).exp(), -0.5, &cfg).unwrap();
        assert!(rel(r.value, PI.sqrt()) < 1e-10, "{r:?}");
    }

    #[test]
    fn finite_examples() {
        let r = finite_interval(f64::cos, 0.0, PI / 2.0, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let r = finite_interval(|t: f64| t.powf(-0.5), 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10, "{r:?}");
        let r = finite_interval(f64::ln, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value + 1.0).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in [1usize, 2, 5, 16, 40] {
            let (x, w) = gauss_legendre(n);
            let sw: f64 = w.iter().sum();
            assert!((sw - 2.0).abs() < 1e-13, "n = {n}");
            let deg = 2 * n - 1;
            let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32 - 1)).sum();
            let exact = if (deg - 1) % 2 == 0 { 2.0 / deg as f64 } else { 0.0 };
            assert!((s - exact).abs() < 1e-13, "n = {n}");
        }
    }
}
