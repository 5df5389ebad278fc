//! Test functions with declared analytic properties, and uniform grids.
//!
//! Every operator is generic over an evaluator. A [`Function1D`] additionally
//! records its growth class, its behaviour at ±∞ (which fixes the tail model
//! of the singular integrals) and, where one is known, an exact oracle for
//! its derivatives.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, FracError, Result};
use crate::quadrature::smooth_interval;
use crate::special::Side;

pub type Eval1 = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type EvalN = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
/// Exact fractional derivative `(α, side, x) ↦ D^α_± f(x)`, when known.
pub type FracOracle = Arc<dyn Fn(f64, Side, f64) -> Option<f64> + Send + Sync>;
pub type DecayFn = Arc<dyn Fn(f64) -> (f64, f64) + Send + Sync>;

/// Regularity and growth class.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GrowthClass {
    Schwartz,
    /// Bounded with the given Hölder exponent in `(0, 1]`.
    BoundedHolder(f64),
    /// Unbounded on one side, growing at most like `e^{rate·|x|}` there.
    SubAlphaGrowth(f64),
    /// 2π-periodic with zero mean.
    PeriodicZeroMean,
}

/// Behaviour of a function as its argument runs off to ±∞.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Far {
    Limit(f64),
    Periodic { mean: f64, period: f64 },
    Unbounded,
}

impl Far {
    fn combine(self, other: Far, op: impl Fn(f64, f64) -> f64) -> Far {
        match (self, other) {
            (Far::Limit(a), Far::Limit(b)) => Far::Limit(op(a, b)),
            _ => Far::Unbounded,
        }
    }
}

/// A scalar function on ℝ with metadata.
#[derive(Clone)]
pub struct Function1D {
    name: String,
    eval: Eval1,
    growth: GrowthClass,
    smooth: bool,
    far_left: Far,
    far_right: Far,
    /// `tol ↦ (lo, hi)` such that outside `[lo, hi]` the function is within
    /// `tol` of its far limits.
    decay: Option<DecayFn>,
    frac: Option<FracOracle>,
    d1: Option<Eval1>,
    d2: Option<Eval1>,
    /// Whether the function satisfies the growth hypothesis of the
    /// Riemann–Liouville agreement (bounded with integrable-tail differences).
    rl_growth_ok: bool,
}

impl fmt::Debug for Function1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Function1D")
            .field("name", &self.name)
            .field("growth", &self.growth)
            .field("far_left", &self.far_left)
            .field("far_right", &self.far_right)
            .finish_non_exhaustive()
    }
}

impl Function1D {
    /// A bare function. Far behaviour defaults to `Unbounded`, which makes the
    /// half-line operators refuse it until [`Function1D::with_far`] is set.
    pub fn new(name: impl Into<String>, growth: GrowthClass, eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
            growth,
            smooth: false,
            far_left: Far::Unbounded,
            far_right: Far::Unbounded,
            decay: None,
            frac: None,
            d1: None,
            d2: None,
            rl_growth_ok: false,
        }
    }

    pub fn with_far(mut self, left: Far, right: Far) -> Self {
        self.far_left = left;
        self.far_right = right;
        self.rl_growth_ok = matches!(left, Far::Limit(c) if c == 0.0) && self.growth != GrowthClass::PeriodicZeroMean;
        self
    }

    pub fn with_smooth(mut self, smooth: bool) -> Self {
        self.smooth = smooth;
        self
    }

    /// Symmetric decay profile: within `tol` of the far limits outside
    /// `center ± radius(tol)`.
    pub fn with_decay(self, center: f64, radius: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.with_decay_interval(move |tol| {
            let r = radius(tol);
            (center - r, center + r)
        })
    }

    pub fn with_decay_interval(mut self, interval: impl Fn(f64) -> (f64, f64) + Send + Sync + 'static) -> Self {
        self.decay = Some(Arc::new(interval));
        self
    }

    pub fn with_frac_oracle(mut self, oracle: impl Fn(f64, Side, f64) -> Option<f64> + Send + Sync + 'static) -> Self {
        self.frac = Some(Arc::new(oracle));
        self
    }

    pub fn with_derivatives(
        mut self,
        d1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d2: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.d1 = Some(Arc::new(d1));
        self.d2 = Some(Arc::new(d2));
        self
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn growth(&self) -> GrowthClass {
        self.growth
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    /// Far behaviour on the history side of `side` (left for `Plus`).
    pub fn far(&self, side: Side) -> Far {
        match side {
            Side::Plus => self.far_left,
            Side::Minus => self.far_right,
        }
    }

    pub fn analytic_frac_derivative(&self, alpha: f64, side: Side, x: f64) -> Option<f64> {
        self.frac.as_ref().and_then(|o| o(alpha, side, x))
    }

    pub fn analytic_derivative(&self, x: f64) -> Option<f64> {
        self.d1.as_ref().map(|d| d(x))
    }

    pub fn analytic_second_derivative(&self, x: f64) -> Option<f64> {
        self.d2.as_ref().map(|d| d(x))
    }

    /// Bounded with integrable-tail differences on the left, the condition
    /// under which the Riemann–Liouville derivative from −∞ is compared.
    pub fn rl_growth_ok(&self) -> bool {
        self.rl_growth_ok
    }

    /// Exponent γ with `|f(x) - f(x - t)| = O(t^γ)` for `l`-th differences.
    pub fn vanish_order(&self, l: u32) -> f64 {
        if self.smooth {
            l as f64
        } else {
            match self.growth {
                GrowthClass::BoundedHolder(g) => g,
                _ => 1.0,
            }
        }
    }

    /// Interval `[lo, hi]` outside of which `f` is within `tol` of its far
    /// limits, for functions with a known decay profile.
    pub fn decay_interval(&self, tol: f64) -> Option<(f64, f64)> {
        self.decay.as_ref().map(|d| d(tol))
    }

    /// `x ↦ f(λx)`.
    pub fn dilate(&self, lam: f64) -> Function1D {
        assert!(lam > 0.0, "dilation factor must be positive");
        let inner = self.clone();
        let mut out = Function1D::new(format!("{}∘(×{lam})", self.name), self.growth, {
            let e = self.eval.clone();
            move |x| e(lam * x)
        });
        out.smooth = self.smooth;
        out.far_left = self.far_left;
        out.far_right = self.far_right;
        out.rl_growth_ok = self.rl_growth_ok;
        if matches!(self.growth, GrowthClass::PeriodicZeroMean) && lam != lam.round() {
            out.growth = GrowthClass::BoundedHolder(1.0);
        }
        out.far_left = scale_period(self.far_left, lam);
        out.far_right = scale_period(self.far_right, lam);
        if let Some(d) = self.decay.clone() {
            out.decay = Some(Arc::new(move |tol| {
                let (lo, hi) = d(tol);
                (lo / lam, hi / lam)
            }));
        }
        if inner.frac.is_some() {
            let f = inner.clone();
            out.frac = Some(Arc::new(move |a, side, x| {
                f.analytic_frac_derivative(a, side, lam * x).map(|v| lam.powf(a) * v)
            }));
        }
        if let (Some(d1), Some(d2)) = (self.d1.clone(), self.d2.clone()) {
            out.d1 = Some(Arc::new(move |x| lam * d1(lam * x)));
            out.d2 = Some(Arc::new(move |x| lam * lam * d2(lam * x)));
        }
        out
    }

    /// `x ↦ f(x - a)`.
    pub fn shift(&self, a: f64) -> Function1D {
        let mut out = self.clone();
        out.name = format!("{}(·-{a})", self.name);
        let e = self.eval.clone();
        out.eval = Arc::new(move |x| e(x - a));
        if let Some(d) = self.decay.clone() {
            out.decay = Some(Arc::new(move |tol| {
                let (lo, hi) = d(tol);
                (lo + a, hi + a)
            }));
        }
        if let Some(o) = self.frac.clone() {
            out.frac = Some(Arc::new(move |al, side, x| o(al, side, x - a)));
        }
        if let (Some(d1), Some(d2)) = (self.d1.clone(), self.d2.clone()) {
            out.d1 = Some(Arc::new(move |x| d1(x - a)));
            out.d2 = Some(Arc::new(move |x| d2(x - a)));
        }
        out
    }

    /// Pointwise product `f·g`.
    pub fn product(&self, other: &Function1D) -> Function1D {
        let growth = match (self.growth, other.growth) {
            (GrowthClass::Schwartz, _) | (_, GrowthClass::Schwartz) => GrowthClass::Schwartz,
            (a, _) => a,
        };
        let (e1, e2) = (self.eval.clone(), other.eval.clone());
        let mut out = Function1D::new(format!("{}·{}", self.name, other.name), growth, move |x| e1(x) * e2(x));
        out.smooth = self.smooth && other.smooth;
        let prod = |a: Far, b: Far| match (a, b) {
            (Far::Limit(x), _) if x == 0.0 && b != Far::Unbounded => Far::Limit(0.0),
            (_, Far::Limit(y)) if y == 0.0 && a != Far::Unbounded => Far::Limit(0.0),
            _ => a.combine(b, |x, y| x * y),
        };
        out.far_left = prod(self.far_left, other.far_left);
        out.far_right = prod(self.far_right, other.far_right);
        out.rl_growth_ok = matches!(out.far_left, Far::Limit(c) if c == 0.0);
        // A bounded factor times a decaying one decays at least as fast.
        out.decay = match (self.decay.clone(), other.decay.clone()) {
            (Some(d), None) | (None, Some(d)) => Some(d),
            (Some(d1), Some(d2)) => Some(Arc::new(move |tol| {
                let (a, b) = d1(tol);
                let (c, d) = d2(tol);
                (a.max(c), b.min(d))
            })),
            (None, None) => None,
        };
        if let (Some(a1), Some(a2), Some(b1), Some(b2)) = (self.d1.clone(), self.d2.clone(), other.d1.clone(), other.d2.clone()) {
            let (f, g) = (self.eval.clone(), other.eval.clone());
            let (f2, g2) = (self.eval.clone(), other.eval.clone());
            let a1c = a1.clone();
            let b1c = b1.clone();
            out.d1 = Some(Arc::new(move |x| a1(x) * g(x) + f(x) * b1(x)));
            out.d2 = Some(Arc::new(move |x| a2(x) * g2(x) + 2.0 * a1c(x) * b1c(x) + f2(x) * b2(x)));
        }
        out
    }
}

fn scale_period(far: Far, lam: f64) -> Far {
    match far {
        Far::Periodic { mean, period } => Far::Periodic { mean, period: period / lam },
        other => other,
    }
}

/// A scalar function on ℝⁿ (n ≤ 3 in the catalog).
#[derive(Clone)]
pub struct FunctionND {
    name: String,
    n: usize,
    eval: EvalN,
    growth: GrowthClass,
    /// Behaviour along every ray as the radius grows (left/right for n = 1).
    far_left: Far,
    far_right: Far,
    smooth: bool,
    decay_radius: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
    laplacian: Option<EvalN>,
}

impl fmt::Debug for FunctionND {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionND")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("growth", &self.growth)
            .finish_non_exhaustive()
    }
}

impl FunctionND {
    pub fn new(
        name: impl Into<String>,
        n: usize,
        growth: GrowthClass,
        far: Far,
        eval: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            n,
            eval: Arc::new(eval),
            growth,
            far_left: far,
            far_right: far,
            smooth: true,
            decay_radius: None,
            laplacian: None,
        }
    }

    pub fn with_laplacian(mut self, lap: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        self.laplacian = Some(Arc::new(lap));
        self
    }

    pub fn with_decay_radius(mut self, r: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.decay_radius = Some(Arc::new(r));
        self
    }

    /// Lift a one-dimensional function to `n = 1`.
    pub fn from_1d(f: &Function1D) -> Self {
        let e = f.eval.clone();
        let mut out = Self::new(f.name.clone(), 1, f.growth, f.far_left, move |x: &[f64]| e(x[0]));
        out.far_right = f.far_right;
        out.smooth = f.smooth;
        if let Some(d2) = f.d2.clone() {
            out.laplacian = Some(Arc::new(move |x: &[f64]| d2(x[0])));
        }
        if let Some(d) = f.decay.clone() {
            out.decay_radius = Some(Arc::new(move |tol| {
                let (lo, hi) = d(tol);
                lo.abs().max(hi.abs())
            }));
        }
        out
    }

    #[inline]
    pub fn eval(&self, x: &[f64]) -> f64 {
        (self.eval)(x)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn growth(&self) -> GrowthClass {
        self.growth
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    /// Far behaviour along `-e` for n = 1 (`Plus`) or `+e` (`Minus`); along
    /// every ray for n ≥ 2.
    pub fn far(&self, side: Side) -> Far {
        match side {
            Side::Plus => self.far_left,
            Side::Minus => self.far_right,
        }
    }

    pub fn analytic_laplacian(&self, x: &[f64]) -> Option<f64> {
        self.laplacian.as_ref().map(|l| l(x))
    }

    /// Radius about the origin outside which `f` is within `tol` of its far
    /// value.
    pub fn decay_radius(&self, tol: f64) -> Option<f64> {
        self.decay_radius.as_ref().map(|r| r(tol))
    }
}

/// Result of a catalog lookup.
#[derive(Clone, Debug)]
pub enum CatalogFunction {
    OneD(Function1D),
    ND(FunctionND),
}

impl CatalogFunction {
    pub fn into_1d(self) -> Result<Function1D> {
        match self {
            CatalogFunction::OneD(f) => Ok(f),
            CatalogFunction::ND(f) => Err(invalid(&f.name, "expected a one-dimensional function")),
        }
    }

    pub fn into_nd(self) -> FunctionND {
        match self {
            CatalogFunction::OneD(f) => FunctionND::from_1d(&f),
            CatalogFunction::ND(f) => f,
        }
    }
}

/// Names accepted by [`catalog`].
pub const CATALOG_NAMES: [&str; 10] = [
    "exp_lambda",
    "constant",
    "gaussian",
    "cos_k",
    "sin_k",
    "bump",
    "trig_poly",
    "gaussian_nd",
    "constant_nd",
    "zero",
];

fn need(name: &str, params: &[f64], count: usize) -> Result<()> {
    if params.len() != count {
        return Err(invalid(name, format!("expected {count} parameter(s), got {}", params.len())));
    }
    if params.iter().any(|p| !p.is_finite()) {
        return Err(invalid(name, "parameters must be finite"));
    }
    Ok(())
}

fn positive_int(name: &str, v: f64) -> Result<u32> {
    if v >= 1.0 && v == v.round() && v <= 1e6 {
        Ok(v as u32)
    } else {
        Err(invalid(name, format!("expected a positive integer, got {v}")))
    }
}

/// Look up a catalog member by name.
///
/// | name          | params                 | function                                   |
/// |---------------|------------------------|--------------------------------------------|
/// | `exp_lambda`  | `λ ≥ 0`                | `e^{λx}`                                   |
/// | `constant`    | `c`                    | `c`                                        |
/// | `zero`        |                        | `0`                                        |
/// | `gaussian`    | `center, width`        | `exp(-(x-center)²/(2 width²))`             |
/// | `cos_k`       | `k ≥ 1` integer        | `cos(kx)`                                  |
/// | `sin_k`       | `k ≥ 1` integer        | `sin(kx)`                                  |
/// | `bump`        | `a < b`                | smooth bump on `(a, b)` with peak 1        |
/// | `trig_poly`   | `a1, b1, a2, b2, …`    | `Σ a_k cos(kx) + b_k sin(kx)`              |
/// | `gaussian_nd` | `n ∈ {1,2,3}`          | `exp(-|x|²/2)` on ℝⁿ                       |
/// | `constant_nd` | `n, c`                 | `c` on ℝⁿ                                  |
pub fn catalog(name: &str, params: &[f64]) -> Result<CatalogFunction> {
    let f = match name {
        "exp_lambda" => {
            need(name, params, 1)?;
            exp_lambda(params[0])?
        }
        "constant" => {
            need(name, params, 1)?;
            constant(params[0])
        }
        "zero" => {
            need(name, params, 0)?;
            constant(0.0)
        }
        "gaussian" => {
            need(name, params, 2)?;
            gaussian(params[0], params[1])?
        }
        "cos_k" => {
            need(name, params, 1)?;
            let k = positive_int(name, params[0])?;
            trig_poly(&[(k, 1.0, 0.0)])?.named(format!("cos_k:{k}"))
        }
        "sin_k" => {
            need(name, params, 1)?;
            let k = positive_int(name, params[0])?;
            trig_poly(&[(k, 0.0, 1.0)])?.named(format!("sin_k:{k}"))
        }
        "bump" => {
            need(name, params, 2)?;
            bump(params[0], params[1])?
        }
        "trig_poly" => {
            if params.is_empty() || params.len() % 2 != 0 {
                return Err(invalid(name, "expected pairs a1,b1,a2,b2,…"));
            }
            let terms: Vec<(u32, f64, f64)> = params
                .chunks(2)
                .enumerate()
                .map(|(i, c)| (i as u32 + 1, c[0], c[1]))
                .collect();
            trig_poly(&terms)?
        }
        "gaussian_nd" => {
            need(name, params, 1)?;
            let n = positive_int(name, params[0])?;
            return Ok(CatalogFunction::ND(gaussian_nd(n as usize)?));
        }
        "constant_nd" => {
            need(name, params, 2)?;
            let n = positive_int(name, params[0])?;
            return Ok(CatalogFunction::ND(constant_nd(n as usize, params[1])?));
        }
        other => return Err(FracError::UnknownFunction(other.to_string())),
    };
    spot_check(&f)?;
    Ok(CatalogFunction::OneD(f))
}

/// Parse `name:p1,p2,…` and look it up.
pub fn parse_spec(spec: &str) -> Result<CatalogFunction> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let params = if rest.trim().is_empty() {
        Vec::new()
    } else {
        rest.split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| invalid(name, format!("cannot parse `{p}`"))))
            .collect::<Result<Vec<_>>>()?
    };
    catalog(name, &params)
}

impl Function1D {
    fn named(mut self, name: String) -> Self {
        self.name = name;
        self
    }
}

/// Construction-time checks of the declared growth class.
fn spot_check(f: &Function1D) -> Result<()> {
    match f.growth {
        GrowthClass::PeriodicZeroMean => {
            let r = smooth_interval(|x| f.eval(x), 0.0, 2.0 * PI, 16, 1e-13)?;
            if r.value.abs() > 1e-10 {
                return Err(invalid(&f.name, format!("mean over a period is {:e}, not zero", r.value)));
            }
        }
        GrowthClass::Schwartz => {
            let weighted = |x: f64| f.eval(x).abs() * (1.0 + x * x).powi(4);
            let mut max = 0.0f64;
            for i in -100..=100 {
                let w = weighted(0.5 * i as f64);
                if !w.is_finite() {
                    return Err(invalid(&f.name, format!("non-finite value at x = {}", 0.5 * i as f64)));
                }
                max = max.max(w);
            }
            let edge = weighted(-50.0).max(weighted(50.0));
            if edge > 1e-3 * max {
                return Err(invalid(&f.name, "does not decay fast enough on |x| ≤ 50"));
            }
        }
        _ => {}
    }
    Ok(())
}

/// `e^{λx}` with `λ ≥ 0`.
pub fn exp_lambda(lam: f64) -> Result<Function1D> {
    if !(lam >= 0.0) {
        return Err(invalid("exp_lambda", format!("λ must be non-negative, got {lam}")));
    }
    if lam == 0.0 {
        return Ok(constant(1.0).named("exp_lambda:0".into()));
    }
    Ok(Function1D::new(format!("exp_lambda:{lam}"), GrowthClass::SubAlphaGrowth(lam), move |x| (lam * x).exp())
        .with_smooth(true)
        .with_far(Far::Limit(0.0), Far::Unbounded)
        .with_decay_interval(move |tol: f64| (tol.min(0.5).ln() / lam, f64::INFINITY))
        .with_frac_oracle(move |a, side, x| match side {
            Side::Plus => Some(lam.powf(a) * (lam * x).exp()),
            Side::Minus => None,
        })
        .with_derivatives(move |x| lam * (lam * x).exp(), move |x| lam * lam * (lam * x).exp()))
}

pub fn constant(c: f64) -> Function1D {
    let mut f = Function1D::new(format!("constant:{c}"), GrowthClass::BoundedHolder(1.0), move |_| c)
        .with_smooth(true)
        .with_decay_interval(|_| (0.0, 0.0))
        .with_far(Far::Limit(c), Far::Limit(c))
        .with_frac_oracle(|_, _, _| Some(0.0))
        .with_derivatives(|_| 0.0, |_| 0.0);
    f.rl_growth_ok = c == 0.0;
    f
}

/// `exp(-(x-center)²/(2 width²))`.
pub fn gaussian(center: f64, width: f64) -> Result<Function1D> {
    if !(width > 0.0) {
        return Err(invalid("gaussian", format!("width must be positive, got {width}")));
    }
    let w2 = width * width;
    Ok(Function1D::new(format!("gaussian:{center},{width}"), GrowthClass::Schwartz, move |x| {
        let y = x - center;
        (-0.5 * y * y / w2).exp()
    })
    .with_smooth(true)
    .with_far(Far::Limit(0.0), Far::Limit(0.0))
    .with_decay(center, move |tol: f64| width * (2.0 * (1.0 / tol.min(0.5)).ln()).sqrt())
    .with_derivatives(
        move |x| {
            let y = x - center;
            -y / w2 * (-0.5 * y * y / w2).exp()
        },
        move |x| {
            let y = x - center;
            (y * y / w2 - 1.0) / w2 * (-0.5 * y * y / w2).exp()
        },
    ))
}

/// Smooth bump supported on `(a, b)` with peak value 1 at the midpoint.
pub fn bump(a: f64, b: f64) -> Result<Function1D> {
    if !(a < b) {
        return Err(invalid("bump", format!("need a < b, got ({a}, {b})")));
    }
    let (c, r) = (0.5 * (a + b), 0.5 * (b - a));
    let value = move |x: f64| {
        let y = (x - c) / r;
        let q = 1.0 - y * y;
        if q <= 0.0 {
            0.0
        } else {
            (1.0 - 1.0 / q).exp()
        }
    };
    // With q = 1 - y²: f' = f·(-2y/q²)/r and f'' = f·[(2y/q²)² - (2 + 6y²)/q³]/r².
    let d1 = move |x: f64| {
        let y = (x - c) / r;
        let q = 1.0 - y * y;
        if q <= 0.0 {
            0.0
        } else {
            value(x) * (-2.0 * y / (q * q)) / r
        }
    };
    let d2 = move |x: f64| {
        let y = (x - c) / r;
        let q = 1.0 - y * y;
        if q <= 0.0 {
            0.0
        } else {
            let p = 2.0 * y / (q * q);
            value(x) * (p * p - (2.0 + 6.0 * y * y) / (q * q * q)) / (r * r)
        }
    };
    Ok(Function1D::new(format!("bump:{a},{b}"), GrowthClass::Schwartz, value)
        .with_smooth(true)
        .with_far(Far::Limit(0.0), Far::Limit(0.0))
        .with_decay(c, move |_| r)
        .with_derivatives(d1, d2))
}

/// `Σ a_k cos(kx) + b_k sin(kx)` from `(k, a_k, b_k)` triples.
pub fn trig_poly(terms: &[(u32, f64, f64)]) -> Result<Function1D> {
    if terms.iter().any(|t| t.0 == 0) {
        return Err(invalid("trig_poly", "frequency 0 would break the zero mean"));
    }
    let t: Arc<[(u32, f64, f64)]> = terms.into();
    let name = format!(
        "trig_poly:{}",
        terms.iter().map(|(_, a, b)| format!("{a},{b}")).collect::<Vec<_>>().join(",")
    );
    let phase_sum = |t: Arc<[(u32, f64, f64)]>, power: fn(f64) -> f64, phase: fn(f64) -> f64| {
        move |x: f64| {
            t.iter()
                .map(|&(k, a, b)| {
                    let k = k as f64;
                    let arg = k * x + phase(k);
                    power(k) * (a * arg.cos() + b * arg.sin())
                })
                .sum::<f64>()
        }
    };
    let value = phase_sum(t.clone(), |_| 1.0, |_| 0.0);
    let d1 = phase_sum(t.clone(), |k| k, |_| FRAC_PI_2);
    let d2 = phase_sum(t.clone(), |k| k * k, |_| PI);
    let to = t.clone();
    Ok(Function1D::new(name, GrowthClass::PeriodicZeroMean, value)
        .with_smooth(true)
        .with_far(
            Far::Periodic { mean: 0.0, period: 2.0 * PI },
            Far::Periodic { mean: 0.0, period: 2.0 * PI },
        )
        .with_frac_oracle(move |alpha, side, x| {
            // D^α_± e^{ikx} = (±ik)^α e^{ikx}: a phase shift of ±απ/2.
            let shift = side.dir() * alpha * FRAC_PI_2;
            Some(
                to.iter()
                    .map(|&(k, a, b)| {
                        let kf = k as f64;
                        let arg = kf * x + shift;
                        kf.powf(alpha) * (a * arg.cos() + b * arg.sin())
                    })
                    .sum(),
            )
        })
        .with_derivatives(d1, d2))
}

/// `exp(-|x|²/2)` on ℝⁿ.
pub fn gaussian_nd(n: usize) -> Result<FunctionND> {
    if !(1..=3).contains(&n) {
        return Err(invalid("gaussian_nd", format!("n must be 1, 2 or 3, got {n}")));
    }
    let nf = n as f64;
    Ok(FunctionND::new(format!("gaussian_nd:{n}"), n, GrowthClass::Schwartz, Far::Limit(0.0), |x: &[f64]| {
        (-0.5 * x.iter().map(|v| v * v).sum::<f64>()).exp()
    })
    .with_laplacian(move |x: &[f64]| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        (r2 - nf) * (-0.5 * r2).exp()
    })
    .with_decay_radius(|tol: f64| (2.0 * (1.0 / tol.min(0.5)).ln()).sqrt()))
}

pub fn constant_nd(n: usize, c: f64) -> Result<FunctionND> {
    if !(1..=3).contains(&n) {
        return Err(invalid("constant_nd", format!("n must be 1, 2 or 3, got {n}")));
    }
    Ok(
        FunctionND::new(format!("constant_nd:{n},{c}"), n, GrowthClass::BoundedHolder(1.0), Far::Limit(c), move |_| c)
            .with_laplacian(|_| 0.0)
            .with_decay_radius(|_| 0.0),
    )
}

/// Uniform grid `start + i·step`, `i = 0..count`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    pub start: f64,
    pub step: f64,
    pub count: usize,
}

impl Grid1D {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !(step > 0.0) || count < 2 {
            return Err(FracError::Domain(format!(
                "grid needs step > 0 and count ≥ 2 (step = {step}, count = {count})"
            )));
        }
        Ok(Self { start, step, count })
    }

    #[inline]
    pub fn point(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.point(i)).collect()
    }

    pub fn end(&self) -> f64 {
        self.point(self.count - 1)
    }
}

pub fn sample(f: &Function1D, grid: &Grid1D) -> Vec<f64> {
    (0..grid.count).map(|i| f.eval(grid.point(i))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn one(name: &str, p: &[f64]) -> Function1D {
        catalog(name, p).unwrap().into_1d().unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(one("constant", &[5.0]).analytic_frac_derivative(0.3, Side::Plus, 1.7), Some(0.0));
        assert_eq!(one("exp_lambda", &[1.0]).analytic_frac_derivative(0.5, Side::Plus, 0.0), Some(1.0));
        let c = one("cos_k", &[2.0]);
        let v = c.analytic_frac_derivative(0.5, Side::Plus, 0.0).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cos_zero_mean() {
        let c = one("cos_k", &[2.0]);
        let r = smooth_interval(|x| c.eval(x), 0.0, 2.0 * PI, 8, 1e-13).unwrap();
        assert!(r.value.abs() < 1e-12);
    }

    #[test]
    fn unknown_and_invalid() {
        assert!(matches!(catalog("nope", &[]), Err(FracError::UnknownFunction(_))));
        assert!(matches!(catalog("exp_lambda", &[-1.0]), Err(FracError::InvalidParams { .. })));
        assert!(matches!(catalog("gaussian", &[0.0, 50.0]), Err(FracError::InvalidParams { .. })));
        assert!(catalog("cos_k", &[1.5]).is_err());
        assert!(catalog("bump", &[1.0, 0.0]).is_err());
    }

    #[test]
    fn sample_examples() {
        let ones = sample(&constant(1.0), &Grid1D::new(-3.0, 0.7, 5).unwrap());
        assert!(ones.iter().all(|&v| v == 1.0));
        let c = sample(&one("cos_k", &[1.0]), &Grid1D::new(0.0, FRAC_PI_2, 4).unwrap());
        for (got, want) in c.iter().zip([1.0, 0.0, -1.0, 0.0]) {
            assert!((got - want).abs() < 1e-15);
        }
        let g = sample(&one("gaussian", &[0.0, 1.0]), &Grid1D::new(-1.0, 1.0, 3).unwrap());
        let e = (-0.5f64).exp();
        assert_eq!(g, vec![e, 1.0, e]);
    }

    #[test]
    fn grid_validation() {
        assert!(Grid1D::new(0.0, 0.0, 4).is_err());
        assert!(Grid1D::new(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn parse_specs() {
        let f = parse_spec("gaussian:0,1").unwrap().into_1d().unwrap();
        assert_eq!(f.eval(0.0), 1.0);
        let t = parse_spec("trig_poly:1,0,0,0.5").unwrap().into_1d().unwrap();
        assert!((t.eval(0.3) - (0.3f64.cos() + 0.5 * 0.6f64.sin())).abs() < 1e-15);
        assert_eq!(parse_spec("gaussian_nd:2").unwrap().into_nd().dim(), 2);
    }

    #[test]
    fn bump_is_smooth_and_normalized() {
        let b = one("bump", &[-1.0, 1.0]);
        assert_eq!(b.eval(0.0), 1.0);
        assert_eq!(b.eval(1.0), 0.0);
        assert_eq!(b.eval(-1.5), 0.0);
    }

    proptest! {
        #[test]
        fn derivative_oracles_match_differences(x in -3.0f64..3.0, which in 0usize..4) {
            let f = match which {
                0 => one("gaussian", &[0.3, 0.8]),
                1 => one("bump", &[-2.0, 3.0]),
                2 => one("trig_poly", &[1.0, -0.5, 0.25, 0.75]),
                _ => one("exp_lambda", &[0.7]),
            };
            let h = 1e-4;
            let fd1 = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
            let fd2 = (f.eval(x + h) - 2.0 * f.eval(x) + f.eval(x - h)) / (h * h);
            prop_assert!((fd1 - f.analytic_derivative(x).unwrap()).abs() < 1e-6);
            prop_assert!((fd2 - f.analytic_second_derivative(x).unwrap()).abs() < 1e-4);
        }

        #[test]
        fn dilation_and_shift_consistent(x in -3.0f64..3.0, lam in 0.2f64..4.0, a in -2.0f64..2.0) {
            let g = one("gaussian", &[0.0, 1.0]);
            prop_assert_eq!(g.dilate(lam).eval(x), g.eval(lam * x));
            prop_assert_eq!(g.shift(a).eval(x), g.eval(x - a));
        }
    }
}
