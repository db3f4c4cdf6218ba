//! Numerical verification of `Σ 1/n² = π²/6` through the parametric integral
//! `g(t) = ∫_0^{π/2} arccos((t - tan²x)/(t + tan²x)) dx`.
//!
//! The argument runs: `g(0) = π²/2` and `g(1) = π²/4`; differentiating under
//! the integral sign gives `g'(t) = log t / (2√t(1 - t))`; the fundamental
//! theorem of calculus turns `g(1) - g(0)` into `∫_0^1 g'`, which after
//! `t = u²` and a geometric-series expansion equals `-2 Σ 1/(2n+1)²`.
//! Each link is checked numerically and collected into a [`ProofReport`].
//!
//! Modules, bottom-up:
//! - [`quadrature`]: adaptive open-panel Gauss–Kronrod integration.
//! - [`parametric`]: `f`, `∂f/∂t`, `g`, `g'` and the moment integrals.
//! - [`leibniz`]: hypotheses and conclusion of differentiating under the
//!   integral sign, and continuity of `g` at the endpoints.
//! - [`series`]: partial sums with guaranteed tail enclosures.
//! - [`pipeline`] / [`report`]: the named proof steps and their report.
//! - [`cli`]: the `basel-verify` command-line front end.

pub mod cli;
pub mod leibniz;
pub mod parametric;
pub mod pipeline;
pub mod quadrature;
pub mod report;
pub mod series;
pub mod summation;

pub use parametric::{AngleX, DomainError, ParamT};
pub use pipeline::{run_all, run_step, PipelineError, ProofReport, StepReport, STEP_IDS};
pub use quadrature::{integrate, integrate_with_transform, QuadConfig, QuadError, QuadResult};
pub use report::{serialize_report, ReportFormat};
pub use series::Enclosure;
