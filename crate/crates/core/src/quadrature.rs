//! Adaptive open-panel quadrature.
//!
//! The base rule is the 7-point Gauss / 15-point Kronrod embedded pair. No
//! node of either rule sits on a panel edge, so the integrand is never sampled
//! at the interval endpoints and integrable endpoint singularities (`log u`,
//! `1/sqrt(u)`) are handled by bisection alone. The panel with the largest
//! error estimate is split until the summed estimate drops below the requested
//! absolute tolerance.
//!
//! Error estimates are heuristic: they come from the Gauss/Kronrod difference
//! rescaled the way QUADPACK does it, not from a rigorous bound.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::summation::CompensatedSum;

/// Kronrod abscissae on [-1, 1], descending; the last entry is the center.
/// Odd indices are shared with the 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for XGK[1], XGK[3], XGK[5] and the center.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const EVALS_PER_PANEL: usize = 15;

/// Tolerance and budget for one adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub max_evals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_subdivisions: 10_000,
            max_evals: 1_000_000,
        }
    }
}

impl QuadConfig {
    pub fn new(abs_tol: f64, max_subdivisions: usize, max_evals: usize) -> Result<Self, QuadError> {
        let cfg = Self {
            abs_tol,
            max_subdivisions,
            max_evals,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), QuadError> {
        if !(self.abs_tol > 0.0) || !self.abs_tol.is_finite() {
            return Err(QuadError::InvalidConfig("abs_tol must be a positive finite number"));
        }
        if self.max_subdivisions == 0 {
            return Err(QuadError::InvalidConfig("max_subdivisions must be at least 1"));
        }
        if self.max_evals == 0 {
            return Err(QuadError::InvalidConfig("max_evals must be at least 1"));
        }
        Ok(())
    }

    /// Same budget, different tolerance.
    pub fn with_abs_tol(self, abs_tol: f64) -> Self {
        Self { abs_tol, ..self }
    }
}

/// Outcome of an integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub error_est: f64,
    pub n_evals: usize,
    pub converged: bool,
}

/// Which budget ran out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetLimit {
    Evaluations,
    Subdivisions,
    /// The worst panel is too narrow to bisect in floating point.
    PanelTooNarrow,
}

impl fmt::Display for BudgetLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BudgetLimit::Evaluations => f.write_str("max_evals reached"),
            BudgetLimit::Subdivisions => f.write_str("max_subdivisions reached"),
            BudgetLimit::PanelTooNarrow => f.write_str("panel too narrow to bisect"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("invalid interval ({a}, {b}): need finite a < b")]
    InvalidInterval { a: f64, b: f64 },
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("integration budget exhausted ({limit}); best value {} with error estimate {}", .best.value, .best.error_est)]
    BudgetExhausted { best: QuadResult, limit: BudgetLimit },
    #[error("integrand returned {value} at interior point x = {x}")]
    NonFiniteSample { x: f64, value: f64 },
}

impl QuadError {
    /// Best available estimate, when the failure still produced one.
    pub fn best(&self) -> Option<&QuadResult> {
        match self {
            QuadError::BudgetExhausted { best, .. } => Some(best),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

// Max-heap on error; ties broken by position so the split order is
// reproducible.
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl Panel {
    fn can_split(&self) -> bool {
        let scale = self.a.abs().max(self.b.abs()).max(f64::MIN_POSITIVE);
        self.b - self.a > 1e3 * f64::EPSILON * scale
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn sample<F: FnMut(f64) -> f64>(f: &mut F, x: f64) -> Result<f64, QuadError> {
    let value = f(x);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(QuadError::NonFiniteSample { x, value })
    }
}

fn kronrod15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Panel, QuadError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = sample(f, center)?;
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    let mut res_k = f_center * WGK[7];
    let mut res_g = f_center * WG[3];
    let mut res_abs = res_k.abs();

    for j in 0..7 {
        let dx = half * XGK[j];
        let lo = sample(f, center - dx)?;
        let hi = sample(f, center + dx)?;
        fv1[j] = lo;
        fv2[j] = hi;
        res_k += WGK[j] * (lo + hi);
        res_abs += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (lo + hi);
        }
    }

    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = (res_k - res_g) * half;
    Ok(Panel {
        a,
        b,
        value: res_k * half,
        error: rescale_error(err, res_abs * half.abs(), res_asc * half.abs()),
    })
}

fn totals(panels: &BinaryHeap<Panel>) -> (f64, f64) {
    let mut sorted: Vec<&Panel> = panels.iter().collect();
    sorted.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: CompensatedSum = sorted.iter().map(|p| p.value).collect();
    let error: CompensatedSum = sorted.iter().map(|p| p.error).collect();
    (value.value(), error.value())
}

/// Integrates `f` over the open interval `(a, b)`.
///
/// `f` is only ever called at points strictly inside `(a, b)`. A non-finite
/// sample aborts the integration.
pub fn integrate<F>(mut f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult, QuadError>
where
    F: FnMut(f64) -> f64,
{
    cfg.validate()?;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(QuadError::InvalidInterval { a, b });
    }

    let mut panels = BinaryHeap::new();
    let first = kronrod15(&mut f, a, b)?;
    let mut n_evals = EVALS_PER_PANEL;
    let mut running_err = first.error;
    panels.push(first);

    let exhausted = |panels: &BinaryHeap<Panel>, n_evals: usize, limit: BudgetLimit| {
        let (value, error_est) = totals(panels);
        QuadError::BudgetExhausted {
            best: QuadResult {
                value,
                error_est,
                n_evals,
                converged: false,
            },
            limit,
        }
    };

    loop {
        if n_evals > cfg.max_evals {
            return Err(exhausted(&panels, n_evals, BudgetLimit::Evaluations));
        }
        if running_err <= cfg.abs_tol {
            // The running total drifts; confirm with a fresh ordered sum.
            let (value, error_est) = totals(&panels);
            if error_est <= cfg.abs_tol {
                return Ok(QuadResult {
                    value,
                    error_est,
                    n_evals,
                    converged: true,
                });
            }
            running_err = error_est;
        }
        if panels.len() >= cfg.max_subdivisions {
            return Err(exhausted(&panels, n_evals, BudgetLimit::Subdivisions));
        }
        if n_evals + 2 * EVALS_PER_PANEL > cfg.max_evals {
            return Err(exhausted(&panels, n_evals, BudgetLimit::Evaluations));
        }

        let worst = panels.pop().expect("at least one panel");
        if !worst.can_split() {
            panels.push(worst);
            return Err(exhausted(&panels, n_evals, BudgetLimit::PanelTooNarrow));
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = kronrod15(&mut f, worst.a, mid)?;
        let right = kronrod15(&mut f, mid, worst.b)?;
        n_evals += 2 * EVALS_PER_PANEL;
        running_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
}

/// A strictly monotone change of variables from the reference interval
/// `(0, 1)` onto `(a, b)`.
pub trait Substitution {
    /// Returns `(x(s), dx/ds)`.
    fn map(&self, s: f64, a: f64, b: f64) -> (f64, f64);
}

/// `x = a + (b - a) s`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Identity;

/// `x = a + (b - a) s^2`; tames `1/sqrt(x - a)` behavior at the lower end.
#[derive(Debug, Clone, Copy, Default)]
pub struct SquareAtLower;

/// `x = b - (b - a) (1 - s)^2`; the mirror image of [`SquareAtLower`].
#[derive(Debug, Clone, Copy, Default)]
pub struct SquareAtUpper;

impl Substitution for Identity {
    fn map(&self, s: f64, a: f64, b: f64) -> (f64, f64) {
        (a + (b - a) * s, b - a)
    }
}

impl Substitution for SquareAtLower {
    fn map(&self, s: f64, a: f64, b: f64) -> (f64, f64) {
        (a + (b - a) * s * s, 2.0 * (b - a) * s)
    }
}

impl Substitution for SquareAtUpper {
    fn map(&self, s: f64, a: f64, b: f64) -> (f64, f64) {
        let r = 1.0 - s;
        (b - (b - a) * r * r, 2.0 * (b - a) * r)
    }
}

/// Integrates `f` over `(a, b)` after pulling it back through `sub`.
///
/// A mapped point that rounds onto an endpoint is reported as a non-finite
/// sample instead of being passed to `f`.
pub fn integrate_with_transform<F, S>(
    mut f: F,
    a: f64,
    b: f64,
    sub: &S,
    cfg: &QuadConfig,
) -> Result<QuadResult, QuadError>
where
    F: FnMut(f64) -> f64,
    S: Substitution + ?Sized,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(QuadError::InvalidInterval { a, b });
    }
    integrate(
        |s| {
            let (x, jac) = sub.map(s, a, b);
            if x > a && x < b {
                f(x) * jac
            } else {
                f64::NAN
            }
        },
        0.0,
        1.0,
        cfg,
    )
}
