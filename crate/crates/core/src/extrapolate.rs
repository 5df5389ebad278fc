//! Richardson extrapolation with arbitrary (possibly non-integer) error
//! exponents.

use crate::error::{FracError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Extrapolated {
    pub value: f64,
    pub err_estimate: f64,
    /// `table[i][j]`: row `i` (step `h₀/ratioⁱ`), `j` eliminated error terms.
    pub table: Vec<Vec<f64>>,
}

/// Extrapolate `values[i] = A(h₀/ratioⁱ)` to `h → 0`, assuming
/// `A(h) = A + Σ_j c_j h^{p_j}` with `p_j = exponents[j]` in ascending order.
///
/// Fails when successive diagonal estimates grow instead of settling.
pub fn richardson(values: &[f64], ratio: f64, exponents: &[f64]) -> Result<Extrapolated> {
    let n = values.len();
    if n == 0 {
        return Err(FracError::Extrapolation("no values".into()));
    }
    if !(ratio > 1.0) {
        return Err(FracError::Extrapolation(format!("step ratio must exceed 1, got {ratio}")));
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(FracError::Extrapolation(format!("non-finite input value {bad}")));
    }
    let m = exponents.len();
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![values[i]];
        for j in 1..=i.min(m) {
            let factor = ratio.powf(exponents[j - 1]) - 1.0;
            let prev = &table[i - 1];
            row.push(row[j - 1] + (row[j - 1] - prev[j - 1]) / factor);
        }
        table.push(row);
    }
    let best = |i: usize| *table[i].last().expect("rows are non-empty");
    let value = best(n - 1);
    let last = &table[n - 1];
    let err_estimate = if last.len() >= 2 {
        (last[last.len() - 1] - last[last.len() - 2]).abs()
    } else if n >= 2 {
        (values[n - 1] - values[n - 2]).abs()
    } else {
        f64::INFINITY
    };
    if n >= 3 {
        let scale = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let floor = 1e-10 * scale + f64::MIN_POSITIVE;
        let first = (best(1) - best(0)).abs();
        let final_step = (best(n - 1) - best(n - 2)).abs();
        if final_step > floor && final_step > 2.0 * first {
            return Err(FracError::Extrapolation(format!(
                "successive estimates grow from {first:.3e} to {final_step:.3e}"
            )));
        }
    }
    Ok(Extrapolated { value, err_estimate, table })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn removes_polynomial_error() {
        let f = |h: f64| 2.0 + 3.0 * h - h * h + 0.5 * h.powi(3);
        let vals: Vec<f64> = (0..5).map(|i| f(0.1 / 2f64.powi(i))).collect();
        let r = richardson(&vals, 2.0, &[1.0, 2.0, 3.0]).unwrap();
        assert!((r.value - 2.0).abs() < 1e-13, "{r:?}");
    }

    #[test]
    fn non_integer_exponents() {
        let f = |x: f64| 1.0 + x.powf(1.3) + 2.0 * x * x;
        let vals: Vec<f64> = (0..5).map(|i| f(0.2 / 2f64.powi(i))).collect();
        let r = richardson(&vals, 2.0, &[1.3, 2.0]).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn divergent_sequence_is_an_error() {
        let vals = [1.0, 2.0, 4.0, 8.0, 16.0];
        assert!(richardson(&vals, 2.0, &[1.0, 2.0]).is_err());
    }
}
