//! Grünwald–Letnikov fractional differences `Δ^α_h f(x) = Σ_k (-1)^k C(α,k) f(x - kh)`
//! and the derivative `lim_{h→0⁺} Δ^α_h f / h^α`.
//!
//! The infinite sum is truncated at `K` terms. The part of the tail carried by
//! the far limit `L` of `f` is added back exactly, using `Σ_k (-1)^k C(α,k) = 0`;
//! what remains is bounded by the tail weight mass times the deviation of
//! `f` from `L` beyond the truncation point.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{FracError, Result};
use crate::extrapolate::richardson;
use crate::funcspace::{Far, Function1D};
use crate::quadrature::{Diagnostics, EvalResult};
use crate::special::{gamma, Side};
use crate::IdentityCheck;

/// Hard ceiling on the number of terms in a single difference.
pub const MAX_TERMS: usize = 20_000_000;

/// `w_k = (-1)^k C(α,k)` for `k = 0..=k_max`, by the recurrence
/// `w_k = w_{k-1}(k-1-α)/k`.
pub fn gl_weights(alpha: f64, k_max: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(k_max + 1);
    w.push(1.0);
    for k in 1..=k_max {
        let prev = w[k - 1];
        w.push(prev * (k as f64 - 1.0 - alpha) / k as f64);
    }
    w
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GlDifference {
    /// Partial sum plus the far-limit tail correction.
    pub value: f64,
    pub partial_sum: f64,
    pub tail_correction: f64,
    /// Bound on the neglected remainder.
    pub tail_bound: f64,
    pub terms: usize,
}

fn far_value(f: &Function1D, side: Side) -> Result<f64> {
    match f.far(side) {
        Far::Limit(c) => Ok(c),
        Far::Periodic { mean, .. } => Ok(mean),
        Far::Unbounded => Err(FracError::Precondition(format!(
            "`{}` is unbounded on the history side",
            f.name()
        ))),
    }
}

/// `Σ_{k>K} |w_k|`.
fn tail_mass(alpha: f64, k_max: usize, partial_weight_sum: f64) -> f64 {
    if alpha == alpha.round() && alpha as usize <= k_max {
        0.0
    } else if alpha < 1.0 {
        // all w_k (k ≥ 1) are negative and sum to -1
        partial_weight_sum.abs()
    } else {
        let k = k_max as f64;
        1.5 * k.powf(-alpha) / (alpha * gamma(-alpha).map(f64::abs).unwrap_or(1.0))
    }
}

/// Sup of `|f - L|` over the history beyond term `k_max`, from the decay
/// profile when available, otherwise from samples.
fn history_deviation(f: &Function1D, side: Side, h: f64, x: f64, k_max: usize, far: f64) -> f64 {
    let start = x - side.dir() * (k_max as f64 + 1.0) * h;
    if let Some(profile) = decay_profile(f, side) {
        let mut tol = 1e-16;
        while tol < 1.0 {
            if profile(tol, start) {
                return tol;
            }
            tol *= 10.0;
        }
    }
    let mut sup = 0.0f64;
    for i in 0..64 {
        let k = (k_max as f64 + 1.0) * (4f64).powf(i as f64 / 63.0);
        sup = sup.max((f.eval(x - side.dir() * k * h) - far).abs());
    }
    sup
}

/// `(tol, p) ↦ whether every point beyond p on the history side is within tol
/// of the far limit`.
fn decay_profile(f: &Function1D, side: Side) -> Option<impl Fn(f64, f64) -> bool + '_> {
    f.decay_interval(0.5)?;
    Some(move |tol: f64, p: f64| {
        let (lo, hi) = f.decay_interval(tol).expect("profile present");
        match side {
            Side::Plus => p <= lo,
            Side::Minus => p >= hi,
        }
    })
}

/// Plus-side difference `Δ^α_h f(x)` truncated after `k_max` terms.
pub fn gl_difference(f: &Function1D, alpha: f64, h: f64, x: f64, k_max: usize) -> Result<GlDifference> {
    gl_difference_sided(f, alpha, Side::Plus, h, x, k_max, f64::INFINITY)
}

/// `Δ^α_{±h} f(x)`; fails when the tail bound exceeds `tail_tol`.
pub fn gl_difference_sided(
    f: &Function1D,
    alpha: f64,
    side: Side,
    h: f64,
    x: f64,
    k_max: usize,
    tail_tol: f64,
) -> Result<GlDifference> {
    if !(alpha >= 0.0) || !(h > 0.0) {
        return Err(FracError::Domain(format!("need alpha ≥ 0 and h > 0 (alpha = {alpha}, h = {h})")));
    }
    if k_max > MAX_TERMS {
        return Err(FracError::Truncation(format!("{k_max} terms exceeds the ceiling {MAX_TERMS}")));
    }
    let far = far_value(f, side)?;
    let w = gl_weights(alpha, k_max);
    let dir = side.dir();
    let (mut sum, mut wsum) = (0.0, 0.0);
    for (k, wk) in w.iter().enumerate() {
        sum += wk * f.eval(x - dir * k as f64 * h);
        wsum += wk;
    }
    let correction = if alpha == 0.0 { 0.0 } else { -far * wsum };
    let mass = if alpha == 0.0 { 0.0 } else { tail_mass(alpha, k_max, wsum) };
    let bound = if mass == 0.0 {
        0.0
    } else {
        mass * history_deviation(f, side, h, x, k_max, far)
    };
    if bound > tail_tol {
        return Err(FracError::Truncation(format!(
            "tail bound {bound:.3e} with K = {k_max} exceeds tolerance {tail_tol:.3e}"
        )));
    }
    Ok(GlDifference {
        value: sum + correction,
        partial_sum: sum,
        tail_correction: correction,
        tail_bound: bound,
        terms: k_max + 1,
    })
}

/// Smallest convenient `K` for which the tail bound of `Δ^α_{±h} f(x)` is
/// below `tail_tol`.
pub fn choose_truncation(f: &Function1D, alpha: f64, side: Side, h: f64, x: f64, tail_tol: f64) -> Result<usize> {
    let far = far_value(f, side)?;
    if let Some((lo, hi)) = f.decay_interval(tail_tol.min(0.5)) {
        let reach = match side {
            Side::Plus => x - lo,
            Side::Minus => hi - x,
        };
        let k = (reach.max(0.0) / h).ceil() + 1.0;
        if k.is_finite() && k <= MAX_TERMS as f64 {
            return Ok((k as usize).max(16));
        }
    }
    // No decay profile: rely on the k^{-α} decay of the tail mass.
    let mut dev = 0.0f64;
    for i in 0..64 {
        dev = dev.max((f.eval(x - side.dir() * h * (1.0 + i as f64 * 10.0)) - far).abs());
    }
    if dev == 0.0 {
        return Ok(16);
    }
    let g = gamma(1.0 - alpha.fract().max(1e-3)).unwrap_or(1.0).abs();
    let k = (dev / (tail_tol * g * alpha)).powf(1.0 / alpha).ceil();
    if !(k <= MAX_TERMS as f64) {
        return Err(FracError::Truncation(format!(
            "reaching tail tolerance {tail_tol:.1e} needs about {k:.1e} terms"
        )));
    }
    Ok((k as usize).max(16))
}

/// `lim_{h→0⁺} Δ^α_{±h} f(x)/h^α`, Richardson-extrapolated over `h_sequence`
/// (geometric, decreasing) with integer error exponents up to 4.
pub fn gl_derivative(f: &Function1D, alpha: f64, side: Side, x: f64, h_sequence: &[f64]) -> Result<EvalResult> {
    if h_sequence.len() < 2 {
        return Err(FracError::Domain("need at least two step sizes".into()));
    }
    if h_sequence.iter().any(|&h| !(h > 0.0)) {
        return Err(FracError::Domain("step sizes must be positive".into()));
    }
    let ratio = h_sequence[0] / h_sequence[1];
    if !(ratio > 1.0) {
        return Err(FracError::Domain("step sizes must decrease".into()));
    }
    for w in h_sequence.windows(2) {
        if ((w[0] / w[1]) / ratio - 1.0).abs() > 1e-9 {
            return Err(FracError::Domain("step sizes must form a geometric sequence".into()));
        }
    }
    let scale = f.eval(x).abs().max(1.0);
    let mut values = Vec::with_capacity(h_sequence.len());
    let mut tail_err = 0.0f64;
    let mut terms = 0usize;
    for &h in h_sequence {
        let ha = h.powf(alpha);
        let tol = 1e-14 * scale * ha;
        let k = choose_truncation(f, alpha, side, h, x, tol)?;
        let d = gl_difference_sided(f, alpha, side, h, x, k, f64::INFINITY)?;
        terms += d.terms;
        tail_err = tail_err.max(d.tail_bound / ha);
        values.push(d.value / ha);
    }
    let orders: Vec<f64> = (1..=4).map(f64::from).collect();
    let ex = richardson(&values, ratio, &orders)?;
    Ok(EvalResult {
        value: ex.value,
        err_estimate: ex.err_estimate + tail_err,
        diagnostics: Diagnostics {
            eps_used: *h_sequence.last().expect("non-empty"),
            t_max_used: h_sequence[0],
            node_count: terms,
        },
    })
}

/// `Δ^α_h(Δ^β_h f)(x)` versus `Δ^{α+β}_h f(x)`, both truncated at `K`
/// terms; the composition uses the Cauchy product of the two weight
/// sequences.
pub fn semigroup_check(f: &Function1D, alpha: f64, beta: f64, h: f64, x: f64, k_max: usize) -> Result<IdentityCheck> {
    if !(alpha >= 0.0 && beta >= 0.0 && h > 0.0) {
        return Err(FracError::Domain("need alpha, beta ≥ 0 and h > 0".into()));
    }
    let wa = gl_weights(alpha, k_max);
    let wb = gl_weights(beta, k_max);
    let wab = gl_weights(alpha + beta, k_max);
    let samples: Vec<f64> = (0..=k_max).map(|m| f.eval(x - m as f64 * h)).collect();
    let mut lhs = 0.0;
    for m in 0..=k_max {
        let mut c = 0.0;
        for j in 0..=m {
            c += wa[j] * wb[m - j];
        }
        lhs += c * samples[m];
    }
    let rhs: f64 = wab.iter().zip(&samples).map(|(w, v)| w * v).sum();
    let err = 4.0 * f64::EPSILON * samples.iter().map(|v| v.abs()).sum::<f64>();
    Ok(IdentityCheck::new(lhs, rhs, err))
}

/// Application of `Δ^α_h` to the character `e^{iξx}`, compared with both
/// sign conventions of the symbol.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SymbolCheck {
    /// `(Δ^α_h cos(ξ·)(0), Δ^α_h sin(ξ·)(0))`, i.e. real and imaginary parts
    /// of `Δ^α_h e^{iξ·}(0)`.
    pub difference: (f64, f64),
    /// `(1 - e^{-iξh})^α`, the symbol for `ℱf(ξ) = ∫ f(x) e^{-iξx} dx`.
    pub symbol: (f64, f64),
    /// `(1 - e^{+iξh})^α`, the symbol for the opposite convention.
    pub symbol_conjugate: (f64, f64),
    pub residual: f64,
    pub residual_conjugate: f64,
}

/// Residual of `Δ^α_h e^{iξ·} = (1 - e^{-iξh})^α e^{iξ·}` with `K` terms and a
/// two-term summation-by-parts tail.
pub fn fourier_symbol_check(alpha: f64, h: f64, xi: f64, k_max: usize) -> Result<SymbolCheck> {
    if !(alpha > 0.0 && h > 0.0) {
        return Err(FracError::Domain("need alpha > 0 and h > 0".into()));
    }
    let theta = xi * h;
    let w = gl_weights(alpha, k_max + 2);
    let (mut re, mut im, mut wsum) = (0.0, 0.0, 0.0);
    for (k, wk) in w.iter().take(k_max + 1).enumerate() {
        let arg = xi * (0.0 - k as f64 * h);
        re += wk * arg.cos();
        im += wk * arg.sin();
        wsum += wk;
    }
    let z = Complex64::from_polar(1.0, -theta);
    let one_minus_z = Complex64::new(1.0, 0.0) - z;
    let tail = if one_minus_z.norm() < 1e-300 || (1.0 - theta.cos()).abs() < 1e-30 && theta.sin() == 0.0 {
        // ξh ∈ 2πℤ: the tail of Σ w_k is exactly -Σ_{k≤K} w_k.
        Complex64::new(-wsum, 0.0)
    } else {
        let n = k_max + 1;
        let zn = Complex64::from_polar(1.0, -theta * n as f64);
        let zn1 = Complex64::from_polar(1.0, -theta * (n + 1) as f64);
        zn * w[n] / one_minus_z + zn1 * (w[n + 1] - w[n]) / (one_minus_z * one_minus_z)
    };
    let lhs = Complex64::new(re, im) + tail;
    let symbol = one_minus_z.powf(alpha);
    let conj = (Complex64::new(1.0, 0.0) - z.conj()).powf(alpha);
    let symbol = if one_minus_z.norm() == 0.0 { Complex64::new(0.0, 0.0) } else { symbol };
    let conj = if one_minus_z.norm() == 0.0 { Complex64::new(0.0, 0.0) } else { conj };
    Ok(SymbolCheck {
        difference: (lhs.re, lhs.im),
        symbol: (symbol.re, symbol.im),
        symbol_conjugate: (conj.re, conj.im),
        residual: (lhs - symbol).norm(),
        residual_conjugate: (lhs - conj).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::{constant, exp_lambda, gaussian};
    use proptest::prelude::*;

    const V_STAR: f64 = 0.205_846_929_971_409_979_409;

    #[test]
    fn weights_alternate_below_zero() {
        for alpha in [0.1, 0.5, 0.9] {
            let w = gl_weights(alpha, 10_000);
            assert!(w[1..].iter().all(|&v| v <= 0.0), "alpha = {alpha}");
        }
    }

    #[test]
    fn constant_difference_vanishes() {
        // Partial weight sums decay like K^{-α}/Γ(1-α); check against a long sum.
        let w = gl_weights(0.5, 1_000_000);
        let s: f64 = w.iter().sum();
        let predicted = 1e6f64.powf(-0.5) / gamma(0.5).unwrap();
        assert!((s - predicted).abs() < 1e-2 * predicted, "{s} vs {predicted}");
        let d = gl_difference(&constant(3.0), 0.5, 0.1, 0.4, 100).unwrap();
        assert!(d.value.abs() <= d.tail_bound + 1e-15, "{d:?}");
    }

    #[test]
    fn exponential_resummation() {
        let h = 0.01;
        let k = choose_truncation(&exp_lambda(1.0).unwrap(), 0.5, Side::Plus, h, 0.0, 1e-15).unwrap();
        let d = gl_difference(&exp_lambda(1.0).unwrap(), 0.5, h, 0.0, k).unwrap();
        let want = (1.0 - (-h).exp()).powf(0.5);
        assert!((d.value - want).abs() <= d.tail_bound + 1e-14, "{d:?} vs {want}");
    }

    #[test]
    fn integer_order_is_first_difference() {
        let g = gaussian(0.0, 1.0).unwrap();
        let d = gl_difference(&g, 1.0, 0.3, 0.2, 50).unwrap();
        assert_eq!(d.value, g.eval(0.2) - g.eval(-0.1));
        assert_eq!(d.tail_bound, 0.0);
    }

    #[test]
    fn truncation_error_is_reported() {
        let g = gaussian(0.0, 1.0).unwrap();
        let r = gl_difference_sided(&g, 0.5, Side::Plus, 0.01, 0.0, 10, 1e-12);
        assert!(matches!(r, Err(FracError::Truncation(_))));
    }

    fn hs(h0: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| h0 / 2f64.powi(i as i32)).collect()
    }

    #[test]
    fn derivative_examples() {
        let r = gl_derivative(&exp_lambda(1.0).unwrap(), 0.5, Side::Plus, 0.0, &hs(0.1, 6)).unwrap();
        assert!((r.value - 1.0).abs() < 1e-8, "{r:?}");
        let r = gl_derivative(&constant(2.0), 0.5, Side::Plus, 0.0, &hs(0.1, 4)).unwrap();
        assert!(r.value.abs() < 1e-12);
        let r = gl_derivative(&gaussian(0.0, 1.0).unwrap(), 0.5, Side::Plus, 0.5, &hs(0.1, 7)).unwrap();
        assert!((r.value - V_STAR).abs() < 1e-5, "{r:?}");
    }

    #[test]
    fn semigroup_examples() {
        let g = gaussian(0.0, 1.0).unwrap();
        let c = semigroup_check(&g, 0.3, 0.4, 0.1, 0.0, 2000).unwrap();
        assert!(c.residual <= 1e-8, "{c:?}");
        let c = semigroup_check(&g, 0.3, 0.0, 0.1, 0.0, 500).unwrap();
        assert_eq!(c.residual, 0.0);
        let c = semigroup_check(&g, 0.5, 0.5, 0.1, 0.2, 500).unwrap();
        assert!((c.lhs - (g.eval(0.2) - g.eval(0.1))).abs() <= 1e-8);
    }

    #[test]
    fn symbol_examples() {
        let s = fourier_symbol_check(1.0, 0.5, 1.0, 10).unwrap();
        assert!(s.residual < 1e-15, "{s:?}");
        let s = fourier_symbol_check(0.5, 0.1, 2.0, 100_000).unwrap();
        assert!(s.residual <= 1e-9, "{s:?}");
        assert!(s.residual_conjugate > 1e-3);
        let s = fourier_symbol_check(0.5, 0.1, 0.0, 1000).unwrap();
        assert_eq!(s.residual, 0.0);
        assert_eq!(s.difference, (0.0, 0.0));
    }

    proptest! {
        #[test]
        fn difference_scaling(lam in 0.3f64..3.0, x in -1.0f64..1.0, h in 0.01f64..0.2) {
            let g = gaussian(0.2, 0.9).unwrap();
            let a = gl_difference(&g.dilate(lam), 0.4, h, x, 400).unwrap();
            let b = gl_difference(&g, 0.4, lam * h, lam * x, 400).unwrap();
            prop_assert!((a.partial_sum - b.partial_sum).abs() < 1e-13);
        }
    }
}
