//! Periodic (Weyl) fractional calculus on zero-mean `2π`-periodic functions.
//!
//! The kernels `ψ^α_±(t) = Σ_{k≠0} e^{ikt}/(±ik)^α = 2 Σ_{k≥1} cos(kt ∓ απ/2)/k^α`
//! carry the Weyl integral `I^α_+ f = (1/2π) ∫₀^{2π} f(x-t) ψ^α_+(t) dt`, and the
//! derivative is `D^α_+ f = D(I^{1-α}_+ f)`, i.e. multiplication of `c_k` by
//! `(ik)^α`.
//!
//! The kernel also has the closed form `ψ^α_+(t) = (2π)^α/Γ(α) · ζ(1-α, t/2π)`
//! (Hurwitz zeta), which is how it is evaluated inside quadratures.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{FracError, Result};
use crate::funcspace::{trig_poly, Function1D};
use crate::quadrature::{finite_interval, smooth_interval, Diagnostics, EvalResult};
use crate::special::{gamma, hurwitz_zeta, Side};

const TWO_PI: f64 = 2.0 * PI;

/// Zero-mean trigonometric polynomial `Σ_k a_k cos(kx) + b_k sin(kx)`, `k ≥ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPoly {
    /// `(k, a_k, b_k)` with distinct `k ≥ 1`, ascending.
    terms: Vec<(u32, f64, f64)>,
}

impl TrigPoly {
    pub fn new(terms: &[(u32, f64, f64)]) -> Result<Self> {
        let mut t: Vec<(u32, f64, f64)> = Vec::with_capacity(terms.len());
        for &(k, a, b) in terms {
            if k == 0 {
                return Err(FracError::Precondition("a constant term breaks the zero mean".into()));
            }
            if !(a.is_finite() && b.is_finite()) {
                return Err(FracError::NonFinite(if a.is_finite() { b } else { a }));
            }
            match t.iter_mut().find(|e| e.0 == k) {
                Some(e) => {
                    e.1 += a;
                    e.2 += b;
                }
                None => t.push((k, a, b)),
            }
        }
        t.sort_by_key(|e| e.0);
        Ok(Self { terms: t })
    }

    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    /// Parse `"k:a,k:a:b,…"` (cosine coefficient, optional sine coefficient).
    pub fn parse(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let parts: Vec<&str> = item.split(':').collect();
            let bad = || FracError::Domain(format!("cannot parse trig term `{item}`; expected k:a or k:a:b"));
            if parts.len() < 2 || parts.len() > 3 {
                return Err(bad());
            }
            let k: u32 = parts[0].trim().parse().map_err(|_| bad())?;
            let a: f64 = parts[1].trim().parse().map_err(|_| bad())?;
            let b: f64 = match parts.get(2) {
                Some(p) => p.trim().parse().map_err(|_| bad())?,
                None => 0.0,
            };
            terms.push((k, a, b));
        }
        Self::new(&terms)
    }

    /// Trapezoidal Fourier coefficients of `f` at `4·k_max` nodes.
    ///
    /// Fails when the sampled mean is not negligible.
    pub fn project(f: &Function1D, k_max: u32) -> Result<Self> {
        if k_max == 0 {
            return Err(FracError::Domain("k_max must be at least 1".into()));
        }
        let n = 4 * k_max as usize;
        let xs: Vec<f64> = (0..n).map(|j| TWO_PI * j as f64 / n as f64).collect();
        let vs: Vec<f64> = xs.iter().map(|&x| f.eval(x)).collect();
        let scale = vs.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
        let mean = vs.iter().sum::<f64>() / n as f64;
        if mean.abs() > 1e-10 * scale {
            return Err(FracError::Precondition(format!("`{}` has mean {mean:.3e}, not zero", f.name())));
        }
        let mut terms = Vec::with_capacity(k_max as usize);
        for k in 1..=k_max {
            let kf = k as f64;
            let (mut a, mut b) = (0.0, 0.0);
            for (x, v) in xs.iter().zip(&vs) {
                a += v * (kf * x).cos();
                b += v * (kf * x).sin();
            }
            terms.push((k, 2.0 * a / n as f64, 2.0 * b / n as f64));
        }
        Self::new(&terms)
    }

    pub fn terms(&self) -> &[(u32, f64, f64)] {
        &self.terms
    }

    pub fn max_frequency(&self) -> u32 {
        self.terms.last().map_or(0, |t| t.0)
    }

    /// Complex coefficient `c_k` for `k ≠ 0` (`c_{-k} = conj(c_k)`).
    pub fn coefficient(&self, k: i64) -> Complex64 {
        let Some(&(_, a, b)) = self.terms.iter().find(|t| t.0 as i64 == k.abs()) else {
            return Complex64::new(0.0, 0.0);
        };
        let c = Complex64::new(0.5 * a, -0.5 * b);
        if k > 0 {
            c
        } else {
            c.conj()
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.phased(x, |_| 1.0, 0.0)
    }

    /// `m`-th classical derivative.
    pub fn derivative(&self, m: u32, x: f64) -> f64 {
        self.phased(x, |k| k.powi(m as i32), m as f64 * FRAC_PI_2)
    }

    /// `Σ w(k) (a_k cos(kx + φ) + b_k sin(kx + φ))`; the phase may depend on k
    /// only through the shared `phase`.
    fn phased(&self, x: f64, weight: impl Fn(f64) -> f64, phase: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(k, a, b)| {
                let kf = k as f64;
                let arg = kf * x + phase;
                weight(kf) * (a * arg.cos() + b * arg.sin())
            })
            .sum()
    }

    pub fn add(&self, other: &TrigPoly) -> TrigPoly {
        let mut all = self.terms.clone();
        all.extend_from_slice(&other.terms);
        TrigPoly::new(&all).expect("sum of valid polynomials")
    }

    pub fn scale(&self, c: f64) -> TrigPoly {
        TrigPoly { terms: self.terms.iter().map(|&(k, a, b)| (k, c * a, c * b)).collect() }
    }

    /// The catalog function with the same expansion.
    pub fn to_function(&self) -> Function1D {
        if self.terms.is_empty() {
            return crate::funcspace::constant(0.0);
        }
        trig_poly(&self.terms).expect("frequencies are non-zero")
    }
}

fn check_alpha(alpha: f64, hi: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= hi {
        Ok(())
    } else {
        Err(FracError::Domain(format!("alpha = {alpha} outside (0, {hi}]")))
    }
}

/// `t` reduced into `(0, 2π)`, or an error on the lattice `2πℤ`.
fn reduce(t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(FracError::NonFinite(t));
    }
    let r = t.rem_euclid(TWO_PI);
    if r < 1e-12 || TWO_PI - r < 1e-12 {
        return Err(FracError::Singular(format!("ψ is singular at t = {t} ∈ 2πℤ")));
    }
    Ok(r)
}

/// Raw partial sum `2 Σ_{k=1}^{K} cos(kt ∓ απ/2)/k^α`.
pub fn weyl_kernel_partial(alpha: f64, side: Side, t: f64, k_max: usize) -> f64 {
    let phase = side.dir() * alpha * FRAC_PI_2;
    let mut s = 0.0;
    for k in 1..=k_max {
        let kf = k as f64;
        s += (kf * t - phase).cos() / kf.powf(alpha);
    }
    2.0 * s
}

/// `Σ_{k≥n} a_k z^k` by three rounds of summation by parts; `a` must supply
/// at least `n + 4` entries.
fn sbp_tail(a: impl Fn(usize) -> f64, n: usize, theta: f64) -> Complex64 {
    let z = Complex64::from_polar(1.0, theta);
    let one = Complex64::new(1.0, 0.0);
    let q = one / (one - z);
    // Δ^m a at index n+m, m = 0..=3
    let d0 = |k: usize| a(k);
    let d1 = |k: usize| a(k) - a(k - 1);
    let d2 = |k: usize| d1(k) - d1(k - 1);
    let d3 = |k: usize| d2(k) - d2(k - 1);
    let zn = Complex64::from_polar(1.0, theta * n as f64);
    zn * (q * d0(n) + z * q * q * d1(n + 1) + z * z * q * q * q * d2(n + 2) + z * z * z * q * q * q * q * d3(n + 3))
}

/// `ψ^α_±(t)` from `K` terms of the cosine series plus a summation-by-parts
/// tail.
pub fn weyl_kernel(alpha: f64, side: Side, t: f64, k_max: usize) -> Result<f64> {
    check_alpha(alpha, 1.0)?;
    if k_max == 0 {
        return Err(FracError::Domain("need at least one term".into()));
    }
    let r = reduce(t)?;
    let head = weyl_kernel_partial(alpha, side, r, k_max);
    let phase = side.dir() * alpha * FRAC_PI_2;
    let tail = sbp_tail(|k| (k as f64).powf(-alpha), k_max + 1, r);
    Ok(head + 2.0 * (Complex64::from_polar(1.0, -phase) * tail).re)
}

/// `ψ^α_±(t)` through the Hurwitz zeta function.
pub fn weyl_kernel_closed(alpha: f64, side: Side, t: f64) -> Result<f64> {
    check_alpha(alpha, 1.0)?;
    let r = reduce(side.dir() * t)?;
    Ok(TWO_PI.powf(alpha) / gamma(alpha)? * hurwitz_zeta(1.0 - alpha, r / TWO_PI)?)
}

/// `I^α_+ f(x) = Σ_{k≠0} c_k (ik)^{-α} e^{ikx}`, any `α ≥ 0`.
pub fn weyl_integral(f: &TrigPoly, alpha: f64, x: f64) -> f64 {
    f.terms
        .iter()
        .map(|&(k, a, b)| {
            let kf = k as f64;
            let arg = kf * x - alpha * FRAC_PI_2;
            kf.powf(-alpha) * (a * arg.cos() + b * arg.sin())
        })
        .sum()
}

/// `I^α_+ f(x)` as the kernel convolution `(1/2π) ∫₀^{2π} f(x-t) ψ^α_+(t) dt`.
pub fn weyl_integral_kernel(f: &TrigPoly, alpha: f64, x: f64, rel_tol: f64) -> Result<EvalResult> {
    check_alpha(alpha, 1.0)?;
    let norm = TWO_PI.powf(alpha) / gamma(alpha)?;
    let r = finite_interval(
        |t| f.eval(x - t) * norm * hurwitz_zeta(1.0 - alpha, t / TWO_PI).unwrap_or(f64::NAN),
        0.0,
        TWO_PI,
        rel_tol,
    )?;
    Ok(r.scaled(1.0 / TWO_PI))
}

/// `D^α_+ f(x) = Σ_{k≠0} c_k (ik)^α e^{ikx}` with the principal branch.
pub fn weyl_derivative_spectral(f: &TrigPoly, alpha: f64, x: f64) -> f64 {
    weyl_integral(f, -alpha, x)
}

/// Route for [`weyl_marchaud`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WeylRoute {
    /// One integration by parts: `(1/2π) ∫₀^{2π} f'(x-t) ψ^{1-α}_+(t) dt`.
    #[default]
    ByParts,
    /// The difference form against the kernel derivative, which sums to
    /// `-α/Γ(1-α) · 2π Σ_{j≥0} (t + 2πj)^{-1-α}`.
    KernelDerivative,
}

/// Weyl–Marchaud derivative
/// `(1/2π) ∫₀^{2π} (f(x-t) - f(x)) (d/dt)ψ^{1-α}_+(t) dt`, `0 < α < 1`.
pub fn weyl_marchaud(f: &TrigPoly, alpha: f64, x: f64, route: WeylRoute, rel_tol: f64) -> Result<EvalResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(FracError::Domain(format!("alpha = {alpha} outside (0, 1)")));
    }
    if f.terms.is_empty() {
        return Ok(EvalResult::exact(0.0));
    }
    match route {
        WeylRoute::ByParts => {
            let beta = 1.0 - alpha;
            let norm = TWO_PI.powf(beta) / gamma(beta)?;
            let r = finite_interval(
                |t| f.derivative(1, x - t) * norm * hurwitz_zeta(alpha, t / TWO_PI).unwrap_or(f64::NAN),
                0.0,
                TWO_PI,
                rel_tol,
            )?;
            Ok(r.scaled(1.0 / TWO_PI))
        }
        WeylRoute::KernelDerivative => kernel_derivative_route(f, alpha, x, rel_tol),
    }
}

/// Splits `Σ_j (t+2πj)^{-1-α}` into `t^{-1-α}` plus a smooth remainder; the
/// singular part is integrated from a Taylor expansion of the difference
/// near `t = 0`.
fn kernel_derivative_route(f: &TrigPoly, alpha: f64, x: f64, rel_tol: f64) -> Result<EvalResult> {
    let kmax = f.max_frequency() as f64;
    let delta = (0.5 / kmax).min(0.1);
    // ∫₀^δ (f(x) - f(x-t)) t^{-1-α} dt, termwise in the Taylor series
    let mut head = 0.0;
    let mut fact = 1.0;
    for m in 1..=40u32 {
        fact *= m as f64;
        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
        let term = sign * f.derivative(m, x) / fact * delta.powf(m as f64 - alpha) / (m as f64 - alpha);
        head += term;
        if term.abs() < 1e-18 * head.abs().max(1e-300) && m > 4 {
            break;
        }
    }
    let diff = |t: f64| f.eval(x) - f.eval(x - t);
    let body = smooth_interval(|t| diff(t) * t.powf(-1.0 - alpha), delta, TWO_PI, 16, rel_tol)?;
    let c = TWO_PI.powf(-1.0 - alpha);
    let smooth = smooth_interval(
        |t| diff(t) * c * hurwitz_zeta(1.0 + alpha, 1.0 + t / TWO_PI).unwrap_or(f64::NAN),
        0.0,
        TWO_PI,
        16,
        rel_tol,
    )?;
    let k = alpha / gamma(1.0 - alpha)?;
    let value = k * (head + body.value + smooth.value);
    Ok(EvalResult {
        value,
        err_estimate: k * (body.err_estimate + smooth.err_estimate) + 1e-15 * value.abs(),
        diagnostics: Diagnostics {
            eps_used: delta,
            t_max_used: TWO_PI,
            node_count: body.diagnostics.node_count + smooth.diagnostics.node_count,
        },
    })
}

/// [`weyl_marchaud`] for a periodic function, projected onto frequencies
/// up to `k_max` first.
pub fn weyl_marchaud_function(f: &Function1D, alpha: f64, x: f64, k_max: u32, route: WeylRoute) -> Result<EvalResult> {
    let p = TrigPoly::project(f, k_max)?;
    weyl_marchaud(&p, alpha, x, route, 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marchaud::marchaud;
    use crate::quadrature::QuadConfig;
    use crate::special::FracOrder;
    use proptest::prelude::*;

    fn cos1() -> TrigPoly {
        TrigPoly::new(&[(1, 1.0, 0.0)]).unwrap()
    }

    #[test]
    fn kernel_routes_agree() {
        // 30-digit reference for ψ^{1/2}_+(1)
        let want = 1.20190216013890496854;
        let a = weyl_kernel(0.5, Side::Plus, 1.0, 1000).unwrap();
        let b = weyl_kernel_closed(0.5, Side::Plus, 1.0).unwrap();
        assert!((a - want).abs() < 1e-12, "{a}");
        assert!((b - want).abs() < 1e-13, "{b}");
        for &(al, t) in &[(0.25, 0.3), (0.75, 5.9), (0.9, 2.0), (1.0, 1.0)] {
            for side in [Side::Plus, Side::Minus] {
                let a = weyl_kernel(al, side, t, 4000).unwrap();
                let b = weyl_kernel_closed(al, side, t).unwrap();
                assert!((a - b).abs() < 1e-10, "{al} {t} {side:?}: {a} vs {b}");
            }
        }
        // α = 1: 2Σ sin(kt)/k = π - t
        assert!((weyl_kernel_closed(1.0, Side::Plus, 1.0).unwrap() - (PI - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn kernel_reflection() {
        let p = weyl_kernel_partial(0.5, Side::Plus, -1.0, 100_000);
        let m = weyl_kernel_partial(0.5, Side::Minus, 1.0, 100_000);
        assert!((p - m).abs() < 1e-9);
    }

    #[test]
    fn kernel_at_pi_for_unit_order() {
        assert!(weyl_kernel_partial(1.0, Side::Plus, PI, 1000).abs() < 1e-12);
        assert!(weyl_kernel(1.0, Side::Plus, PI, 1000).unwrap().abs() < 1e-12);
    }

    #[test]
    fn kernel_lattice_is_an_error() {
        assert!(matches!(weyl_kernel(0.5, Side::Plus, TWO_PI, 10), Err(FracError::Singular(_))));
        assert!(weyl_kernel_closed(0.5, Side::Plus, 0.0).is_err());
    }

    #[test]
    fn partial_sums_converge_at_rate_alpha() {
        let t = FRAC_PI_2;
        let exact = weyl_kernel_closed(0.5, Side::Plus, t).unwrap();
        // envelope over a few consecutive K, so the phase of the oscillation does not matter
        let env = |k: usize| {
            (0..8)
                .map(|j| (weyl_kernel_partial(0.5, Side::Plus, t, k + j) - exact).abs())
                .fold(0.0f64, f64::max)
        };
        let rate = (env(1000) / env(16_000)).ln() / 16f64.ln();
        assert!((rate - 0.5).abs() < 0.05, "rate {rate}");
    }

    #[test]
    fn integral_examples() {
        let v = weyl_integral(&cos1(), 0.5, 0.0);
        assert!((v - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((weyl_integral(&cos1(), 1.0, FRAC_PI_2) - 1.0).abs() < 1e-15);
        assert_eq!(weyl_integral(&TrigPoly::zero(), 0.5, 1.0), 0.0);
        let k = weyl_integral_kernel(&cos1(), 0.5, 0.0, 1e-12).unwrap();
        assert!((k.value - 0.5f64.sqrt()).abs() < 1e-10, "{k:?}");
    }

    #[test]
    fn derivative_examples() {
        let c2 = TrigPoly::new(&[(2, 1.0, 0.0)]).unwrap();
        assert!((weyl_derivative_spectral(&c2, 0.5, 0.0) - 1.0).abs() < 1e-15);
        assert!((weyl_derivative_spectral(&cos1(), 1.0, 0.7) + 0.7f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn marchaud_examples() {
        for route in [WeylRoute::ByParts, WeylRoute::KernelDerivative] {
            let r = weyl_marchaud(&cos1(), 0.5, 0.0, route, 1e-12).unwrap();
            assert!((r.value - 0.5f64.sqrt()).abs() < 1e-9, "{route:?}: {r:?}");
            assert_eq!(weyl_marchaud(&TrigPoly::zero(), 0.5, 0.0, route, 1e-12).unwrap().value, 0.0);
        }
    }

    #[test]
    fn coincides_with_line_marchaud() {
        let p = TrigPoly::new(&[(3, 1.0, 0.0), (1, 0.0, 0.5)]).unwrap();
        let w = weyl_marchaud(&p, 0.25, 1.0, WeylRoute::ByParts, 1e-12).unwrap();
        let order = FracOrder::single(0.25, Side::Plus).unwrap();
        let line = marchaud(&p.to_function(), order, 1.0, &QuadConfig::default()).unwrap();
        assert!((w.value - line.value).abs() < 1e-5, "{} vs {}", w.value, line.value);
        let s = weyl_derivative_spectral(&p, 0.25, 1.0);
        assert!((w.value - s).abs() < 1e-8);
    }

    #[test]
    fn projection_recovers_coefficients() {
        let p = TrigPoly::new(&[(1, 0.3, -0.2), (4, 0.0, 1.5)]).unwrap();
        let q = TrigPoly::project(&p.to_function(), 8).unwrap();
        for k in 1..=8 {
            assert!((p.coefficient(k) - q.coefficient(k)).norm() < 1e-14);
        }
        assert!(TrigPoly::project(&crate::funcspace::constant(1.0), 4).is_err());
    }

    #[test]
    fn parse_terms() {
        let p = TrigPoly::parse("1:1.0, 3:0.5:-2").unwrap();
        assert_eq!(p.terms(), &[(1, 1.0, 0.0), (3, 0.5, -2.0)]);
        assert!(TrigPoly::parse("0:1").is_err());
        assert!(TrigPoly::parse("x").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = TrigPoly> {
        prop::collection::vec((1u32..=8, -1.0f64..1.0, -1.0f64..1.0), 1..5)
            .prop_map(|t| TrigPoly::new(&t).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn derivative_inverts_integral(p in arb_poly(), alpha in 0.05f64..0.95, x in -3.0f64..3.0) {
            let back = weyl_derivative_spectral(&TrigPoly::new(&p.terms.iter().map(|&(k, a, b)| {
                // I^α applied coefficientwise
                let kf = k as f64;
                let (s, c) = (alpha * FRAC_PI_2).sin_cos();
                let w = kf.powf(-alpha);
                (k, w * (a * c - b * s), w * (a * s + b * c))
            }).collect::<Vec<_>>()).unwrap(), alpha, x);
            prop_assert!((back - p.eval(x)).abs() < 1e-12);
        }

        #[test]
        fn spectral_and_kernel_integrals_agree(p in arb_poly(), alpha in prop::sample::select(vec![0.25, 0.5, 0.75]), x in 0.0f64..6.0) {
            let k = weyl_integral_kernel(&p, alpha, x, 1e-12).unwrap();
            prop_assert!((k.value - weyl_integral(&p, alpha, x)).abs() < 1e-6);
        }

        #[test]
        fn zero_mean_preserved(p in arb_poly(), alpha in 0.1f64..0.9) {
            let n = 64;
            let (mut mi, mut md) = (0.0, 0.0);
            for j in 0..n {
                let x = TWO_PI * j as f64 / n as f64;
                mi += weyl_integral(&p, alpha, x);
                md += weyl_derivative_spectral(&p, alpha, x);
            }
            prop_assert!(mi.abs() / (n as f64) < 1e-13 && md.abs() / (n as f64) < 1e-13);
        }

        #[test]
        fn marchaud_is_linear(p in arb_poly(), q in arb_poly(), c in -2.0f64..2.0) {
            let x = 0.4;
            let lhs = weyl_marchaud(&p.add(&q.scale(c)), 0.5, x, WeylRoute::ByParts, 1e-12).unwrap().value;
            let rhs = weyl_marchaud(&p, 0.5, x, WeylRoute::ByParts, 1e-12).unwrap().value
                + c * weyl_marchaud(&q, 0.5, x, WeylRoute::ByParts, 1e-12).unwrap().value;
            prop_assert!((lhs - rhs).abs() < 1e-10 * (1.0 + lhs.abs()));
        }
    }
}
