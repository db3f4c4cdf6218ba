//! The parametric integrand `f(x, t) = arccos((t - tan²x) / (t + tan²x))`,
//! its integral `g(t)` over `x ∈ (0, π/2)`, and the closed forms that go with
//! it.
//!
//! Every rational expression in `tan x` is evaluated over `cos²x` and `sin²x`
//! instead, so nothing overflows as `x → π/2`.

use std::f64::consts::{FRAC_PI_2, PI};

use thiserror::Error;

use crate::quadrature::{integrate, QuadConfig, QuadError, QuadResult};

/// `g(0) = π²/2`.
pub const G_AT_ZERO: f64 = PI * PI / 2.0;
/// `g(1) = π²/4`.
pub const G_AT_ONE: f64 = PI * PI / 4.0;

/// Half-width of the band around `t = 1` where `g'` switches to its series.
pub const GPRIME_SERIES_BAND: f64 = 1e-4;

/// Rounding slop tolerated on an `arccos` argument before clamping.
const ARCCOS_SLOP: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum DomainError {
    #[error("parameter t = {0} outside [0, 1]")]
    ParamOutOfRange(f64),
    #[error("angle x = {0} outside (0, π/2)")]
    AngleOutOfRange(f64),
    #[error("t = {t} outside the allowed range {range}")]
    Restricted { t: f64, range: &'static str },
    #[error("arccos argument {0} lies beyond rounding slop of [-1, 1]")]
    ArccosArgument(f64),
}

/// Parameter `t ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ParamT(f64);

impl ParamT {
    pub fn new(t: f64) -> Result<Self, DomainError> {
        if (0.0..=1.0).contains(&t) {
            Ok(Self(t))
        } else {
            Err(DomainError::ParamOutOfRange(t))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for ParamT {
    type Error = DomainError;
    fn try_from(t: f64) -> Result<Self, Self::Error> {
        Self::new(t)
    }
}

/// Angle `x ∈ (0, π/2)`, open at both ends.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AngleX(f64);

impl AngleX {
    pub fn new(x: f64) -> Result<Self, DomainError> {
        if x > 0.0 && x < FRAC_PI_2 {
            Ok(Self(x))
        } else {
            Err(DomainError::AngleOutOfRange(x))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for AngleX {
    type Error = DomainError;
    fn try_from(x: f64) -> Result<Self, Self::Error> {
        Self::new(x)
    }
}

fn arccos_clamped(arg: f64) -> Result<f64, DomainError> {
    if arg.abs() <= 1.0 {
        Ok(arg.acos())
    } else if arg.abs() - 1.0 <= ARCCOS_SLOP {
        Ok(arg.clamp(-1.0, 1.0).acos())
    } else {
        Err(DomainError::ArccosArgument(arg))
    }
}

/// `f` on raw floats. Callers guarantee the domain.
pub(crate) fn f_raw(x: f64, t: f64) -> Result<f64, DomainError> {
    let (s, c) = x.sin_cos();
    let tc2 = t * c * c;
    let s2 = s * s;
    arccos_clamped((tc2 - s2) / (tc2 + s2))
}

/// `∂f/∂t` on raw floats. Callers guarantee the domain.
pub(crate) fn dfdt_raw(x: f64, t: f64) -> f64 {
    let (s, c) = x.sin_cos();
    -(s * c) / (t.sqrt() * (t * c * c + s * s))
}

/// `f(x, t)`, a value in `[0, π]`.
pub fn eval_f(x: AngleX, t: ParamT) -> Result<f64, DomainError> {
    f_raw(x.get(), t.get())
}

/// `∂f/∂t (x, t)` for `t ∈ (0, 1]`.
///
/// `t = 1` is admitted as the one-sided derivative; the formula is finite
/// there.
pub fn eval_dfdt(x: AngleX, t: f64) -> Result<f64, DomainError> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(DomainError::Restricted { t, range: "(0, 1]" });
    }
    Ok(dfdt_raw(x.get(), t))
}

/// `g(t)` by quadrature of `f(·, t)` over `(0, π/2)`.
pub fn g_numeric(t: ParamT, cfg: &QuadConfig) -> Result<QuadResult, QuadError> {
    let t = t.get();
    integrate(|x| f_raw(x, t).unwrap_or(f64::NAN), 0.0, FRAC_PI_2, cfg)
}

pub(crate) fn gprime_raw(t: f64) -> f64 {
    let u = 1.0 - t;
    // log t / (1 - t) = -(1 + u/2 + u²/3 + u³/4 + ...), u = 1 - t
    let log_ratio = if u.abs() < GPRIME_SERIES_BAND {
        -(1.0 + u * (0.5 + u * (1.0 / 3.0 + u * 0.25)))
    } else {
        t.ln() / u
    };
    log_ratio / (2.0 * t.sqrt())
}

/// The closed form `g'(t) = log t / (2 √t (1 - t))` on `(0, 1]`, with the
/// removable singularity at `t = 1` filled in (`g'(1) = -1/2`).
pub fn gprime_closed(t: f64) -> Result<f64, DomainError> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(DomainError::Restricted { t, range: "(0, 1]" });
    }
    Ok(gprime_raw(t))
}

/// Antiderivative in `x` of `∂f/∂t`:
/// `log((t - 1) cos 2x + t + 1) / (2 √t (t - 1))`, finite on the closed
/// interval `x ∈ [0, π/2]`.
pub fn inner_antiderivative(x: f64, t: f64) -> Result<f64, DomainError> {
    if !(t > 0.0 && t < 1.0) {
        return Err(DomainError::Restricted { t, range: "(0, 1)" });
    }
    if !(0.0..=FRAC_PI_2).contains(&x) {
        return Err(DomainError::AngleOutOfRange(x));
    }
    let arg = (t - 1.0) * (2.0 * x).cos() + t + 1.0;
    Ok(arg.ln() / (2.0 * t.sqrt() * (t - 1.0)))
}

/// `∫_0^1 u^{2n} log u du` by quadrature. The exact value is `-1/(2n+1)²`.
pub fn log_moment_integral(n: u32, cfg: &QuadConfig) -> Result<QuadResult, QuadError> {
    let p = 2 * n as i32;
    integrate(|u| u.powi(p) * u.ln(), 0.0, 1.0, cfg)
}

/// `-1/(2n+1)²`.
pub fn log_moment_exact(n: u32) -> f64 {
    let k = 2.0 * n as f64 + 1.0;
    -1.0 / (k * k)
}
