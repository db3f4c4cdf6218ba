//! Checks for differentiating `g` under the integral sign, and for the
//! continuity of `g` at `t = 0` and `t = 1`.
//!
//! The integrability and existence hypotheses are only checked as finiteness
//! on sample grids. Statements holding almost everywhere cannot be checked
//! by sampling.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parametric::{dfdt_raw, f_raw, g_numeric, gprime_raw, DomainError, ParamT};
use crate::quadrature::{integrate, QuadConfig, QuadError};

/// Allowed excess of `|∂f/∂t|` over `1/(2t)`.
pub const DOMINATION_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LeibnizError {
    #[error("finite-difference stencil [{lo}, {hi}] leaves (0, 1)")]
    Step { lo: f64, hi: f64 },
    #[error("invalid grid request: {0}")]
    Grid(&'static str),
    #[error("invalid parameter sequence: {0}")]
    Sequence(&'static str),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// Result of sweeping the bound `|∂f/∂t (x, t)| ≤ 1/(2t)` over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DominationReport {
    pub delta: f64,
    pub grid: Vec<(f64, f64)>,
    /// `max (|∂f/∂t| - 1/(2t))` over the grid.
    pub max_violation: f64,
    /// `max |∂f/∂t| · 2t`; the bound says this never exceeds 1.
    pub max_scaled: f64,
    /// `max |2t |∂f/∂t(atan √t, t)| - 1|` over the t-grid, where the AM–GM
    /// bound is attained.
    pub equality_gap: f64,
    /// `f` and `∂f/∂t` were finite (and `0 ≤ f ≤ π`) at every grid point.
    pub all_finite: bool,
    pub pass: bool,
}

/// Endpoint-dense abscissae in `(0, π/2)`: a uniform grid bent by a cubic
/// toward both ends.
pub fn endpoint_dense_angles(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let v = (i + 1) as f64 / (n + 1) as f64;
            let w = if v < 0.5 {
                4.0 * v * v * v
            } else {
                let r = 1.0 - v;
                1.0 - 4.0 * r * r * r
            };
            FRAC_PI_2 * w
        })
        .collect()
}

/// Sweeps the domination bound over `nx × nt` points with `t ∈ (delta, 1)`.
pub fn check_domination(delta: f64, nx: usize, nt: usize) -> Result<DominationReport, LeibnizError> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(LeibnizError::Grid("delta must lie in (0, 1)"));
    }
    if nx < 2 || nt < 2 {
        return Err(LeibnizError::Grid("nx and nt must be at least 2"));
    }

    let xs = endpoint_dense_angles(nx);
    let ts: Vec<f64> = (0..nt)
        .map(|j| delta + (1.0 - delta) * (j + 1) as f64 / (nt + 1) as f64)
        .collect();

    let mut grid = Vec::with_capacity(nx * nt);
    let mut max_violation = f64::NEG_INFINITY;
    let mut max_scaled = 0.0_f64;
    let mut all_finite = true;

    for &t in &ts {
        for &x in &xs {
            let d = dfdt_raw(x, t);
            let f_ok = matches!(f_raw(x, t), Ok(v) if (0.0..=std::f64::consts::PI).contains(&v));
            if !d.is_finite() || !f_ok {
                all_finite = false;
            }
            max_violation = max_violation.max(d.abs() - 0.5 / t);
            max_scaled = max_scaled.max(d.abs() * 2.0 * t);
            grid.push((x, t));
        }
    }

    let mut equality_gap = 0.0_f64;
    for &t in &ts {
        let x_eq = t.sqrt().atan();
        let scaled = dfdt_raw(x_eq, t).abs() * 2.0 * t;
        equality_gap = equality_gap.max((scaled - 1.0).abs());
        max_violation = max_violation.max(dfdt_raw(x_eq, t).abs() - 0.5 / t);
        max_scaled = max_scaled.max(scaled);
    }

    Ok(DominationReport {
        delta,
        grid,
        max_violation,
        max_scaled,
        equality_gap,
        all_finite,
        pass: all_finite && max_violation <= DOMINATION_SLACK,
    })
}

/// Three estimates of `g'(t)` that must agree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeibnizCheck {
    pub t: f64,
    pub h: f64,
    /// `(g(t + h) - g(t - h)) / 2h` with `g` by quadrature.
    pub fd_value: f64,
    /// `∫_0^{π/2} ∂f/∂t (x, t) dx` by quadrature.
    pub quad_of_dfdt: f64,
    pub closed_form: f64,
    pub max_pairwise_gap: f64,
    pub tol: f64,
    pub n_evals: usize,
    pub pass: bool,
}

/// Compares the derivative of `g` with the integral of the derivative and
/// with the closed form.
///
/// The two `g` evaluations behind the central difference use an absolute
/// tolerance of at most `0.1 · tol · h`, so that quadrature noise divided by
/// `2h` stays below the agreement tolerance.
pub fn check_leibniz(t: f64, h: f64, cfg: &QuadConfig, tol: f64) -> Result<LeibnizCheck, LeibnizError> {
    if !(h > 0.0) || !(t - h > 0.0 && t + h < 1.0) {
        return Err(LeibnizError::Step { lo: t - h, hi: t + h });
    }
    let fd_cfg = cfg.with_abs_tol(cfg.abs_tol.min(0.1 * tol * h));
    let g_plus = g_numeric(ParamT::new(t + h)?, &fd_cfg)?;
    let g_minus = g_numeric(ParamT::new(t - h)?, &fd_cfg)?;
    let fd_value = (g_plus.value - g_minus.value) / (2.0 * h);

    let quad = integrate(|x| dfdt_raw(x, t), 0.0, FRAC_PI_2, cfg)?;
    let closed_form = gprime_raw(t);

    let max_pairwise_gap = (fd_value - quad.value)
        .abs()
        .max((fd_value - closed_form).abs())
        .max((quad.value - closed_form).abs());

    Ok(LeibnizCheck {
        t,
        h,
        fd_value,
        quad_of_dfdt: quad.value,
        closed_form,
        max_pairwise_gap,
        tol,
        n_evals: g_plus.n_evals + g_minus.n_evals + quad.n_evals,
        pass: max_pairwise_gap <= tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Endpoint {
    Zero,
    One,
}

impl Endpoint {
    pub fn value(self) -> f64 {
        match self {
            Endpoint::Zero => 0.0,
            Endpoint::One => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityCheck {
    pub end: Endpoint,
    /// `g` at the endpoint, by quadrature.
    pub limit: f64,
    /// `g(t_n)` for each point of the sequence.
    pub values: Vec<f64>,
    /// `|g(t_n) - g(end)|` for each point of the sequence.
    pub gaps: Vec<f64>,
    pub tol: f64,
    pub n_evals: usize,
    pub pass: bool,
}

/// Checks that `g(t_n)` approaches `g(end)` along a sequence moving
/// monotonically toward `end`.
///
/// Passes when the last gap is within `tol` and no earlier gap is smaller.
pub fn check_endpoint_continuity(
    end: Endpoint,
    t_sequence: &[f64],
    cfg: &QuadConfig,
    tol: f64,
) -> Result<ContinuityCheck, LeibnizError> {
    if t_sequence.is_empty() {
        return Err(LeibnizError::Sequence("empty"));
    }
    if t_sequence.iter().any(|&t| !(t > 0.0 && t < 1.0)) {
        return Err(LeibnizError::Sequence("points must lie inside (0, 1)"));
    }
    let target = end.value();
    if t_sequence
        .windows(2)
        .any(|w| (w[1] - target).abs() >= (w[0] - target).abs())
    {
        return Err(LeibnizError::Sequence("points must approach the endpoint strictly"));
    }

    let limit = g_numeric(ParamT::new(target)?, cfg)?;
    let mut n_evals = limit.n_evals;
    let mut values = Vec::with_capacity(t_sequence.len());
    for &t in t_sequence {
        let g = g_numeric(ParamT::new(t)?, cfg)?;
        n_evals += g.n_evals;
        values.push(g.value);
    }
    let gaps: Vec<f64> = values.iter().map(|v| (v - limit.value).abs()).collect();

    let last = *gaps.last().expect("non-empty");
    let trending = gaps.iter().all(|&g| g >= last);
    Ok(ContinuityCheck {
        end,
        limit: limit.value,
        tol,
        n_evals,
        pass: last <= tol && trending,
        values,
        gaps,
    })
}
