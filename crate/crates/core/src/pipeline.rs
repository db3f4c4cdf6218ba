//! The proof as an ordered list of independently runnable, named steps.
//!
//! Tolerances derive from the configured `abs_tol`:
//! - regular quadrature steps pass at `abs_tol`;
//! - steps that integrate through an endpoint singularity, and the three-way
//!   derivative check, pass at `100 · abs_tol`;
//! - every quadrature inside a step runs at `abs_tol / 100`.
//!
//! Domination, continuity and series steps carry their own fixed thresholds.

use std::f64::consts::PI;
use std::thread;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::leibniz::{self, check_domination, check_endpoint_continuity, check_leibniz, Endpoint};
use crate::parametric::{
    g_numeric, gprime_raw, log_moment_exact, log_moment_integral, ParamT, G_AT_ONE, G_AT_ZERO,
};
use crate::quadrature::{integrate, integrate_with_transform, QuadConfig, QuadError, QuadResult, SquareAtLower};
use crate::series::{self, Enclosure};
use crate::summation::CompensatedSum;

/// Step identifiers in proof order.
pub const STEP_IDS: [&str; 12] = [
    "g0",
    "g1",
    "lemma-gprime",
    "domination",
    "continuity-0",
    "continuity-1",
    "ftc",
    "substitution",
    "interchange",
    "moments",
    "series-odd",
    "basel",
];

pub const LEIBNIZ_T_GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
pub const LEIBNIZ_H: f64 = 1e-5;
pub const DOMINATION_DELTA: f64 = 0.01;
pub const DOMINATION_GRID: usize = 200;
pub const CONTINUITY_TOL: f64 = 1e-3;
pub const CONTINUITY_ZERO_SEQ: [f64; 5] = [1e-2, 1e-4, 1e-6, 1e-8, 1e-10];
pub const CONTINUITY_ONE_SEQ: [f64; 5] = [0.9, 0.99, 0.9999, 0.999_999, 0.999_999_99];
pub const INTERCHANGE_N: u32 = 50;
pub const MOMENT_MAX_N: u32 = 20;
pub const SERIES_TERMS: u64 = 1_000_000;

/// How error estimates should be read; copied into every report.
pub const ERROR_MODEL: &str = "quadrature error estimates are heuristic (Gauss-Kronrod embedded-rule \
difference), not rigorous bounds; series enclosures are guaranteed up to 1e-15 relative rounding slop; \
integrability and existence hypotheses are checked only as finiteness on sample grids";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error("unknown step '{0}'")]
    UnknownStep(String),
}

mod nullable_f64 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

/// One proof step. Non-finite reals serialize as `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepReport {
    pub step_id: String,
    pub description: String,
    #[serde(with = "nullable_f64")]
    pub computed: f64,
    #[serde(with = "nullable_f64")]
    pub expected: f64,
    #[serde(with = "nullable_f64")]
    pub abs_err: f64,
    #[serde(with = "nullable_f64")]
    pub tol: f64,
    pub pass: bool,
    /// Every quadrature behind the step converged and its side conditions held.
    pub converged: bool,
    pub n_evals: usize,
    pub notes: String,
}

impl StepReport {
    #[allow(clippy::too_many_arguments)]
    fn new(
        step_id: &str,
        description: &str,
        computed: f64,
        expected: f64,
        tol: f64,
        converged: bool,
        n_evals: usize,
        notes: String,
    ) -> Self {
        let abs_err = (computed - expected).abs();
        Self {
            step_id: step_id.to_owned(),
            description: description.to_owned(),
            computed,
            expected,
            abs_err,
            tol,
            // NaN compares false, so a failed computation never passes.
            pass: converged && abs_err <= tol,
            converged,
            n_evals,
            notes,
        }
    }
}

/// Parameters the run used, echoed into the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub quad: QuadConfig,
    pub step_quadrature_abs_tol: f64,
    pub leibniz_t_grid: Vec<f64>,
    pub leibniz_h: f64,
    pub domination_delta: f64,
    pub domination_grid: (usize, usize),
    pub continuity_zero_sequence: Vec<f64>,
    pub continuity_one_sequence: Vec<f64>,
    pub interchange_n: u32,
    pub moment_max_n: u32,
    pub series_terms: u64,
}

impl ConfigEcho {
    pub fn new(cfg: &QuadConfig) -> Self {
        Self {
            quad: *cfg,
            step_quadrature_abs_tol: inner_cfg(cfg).abs_tol,
            leibniz_t_grid: LEIBNIZ_T_GRID.to_vec(),
            leibniz_h: LEIBNIZ_H,
            domination_delta: DOMINATION_DELTA,
            domination_grid: (DOMINATION_GRID, DOMINATION_GRID),
            continuity_zero_sequence: CONTINUITY_ZERO_SEQ.to_vec(),
            continuity_one_sequence: CONTINUITY_ONE_SEQ.to_vec(),
            interchange_n: INTERCHANGE_N,
            moment_max_n: MOMENT_MAX_N,
            series_terms: SERIES_TERMS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofReport {
    pub steps: Vec<StepReport>,
    pub all_pass: bool,
    pub config: ConfigEcho,
    pub error_model: String,
    pub timestamp: String,
    pub version: String,
}

impl ProofReport {
    pub fn from_steps(steps: Vec<StepReport>, cfg: &QuadConfig) -> Self {
        Self {
            all_pass: steps.iter().all(|s| s.pass),
            steps,
            config: ConfigEcho::new(cfg),
            error_model: ERROR_MODEL.to_owned(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            version: env!("CARGO_PKG_VERSION").to_owned(),
        }
    }
}

fn regular_tol(cfg: &QuadConfig) -> f64 {
    cfg.abs_tol
}

fn singular_tol(cfg: &QuadConfig) -> f64 {
    100.0 * cfg.abs_tol
}

fn inner_cfg(cfg: &QuadConfig) -> QuadConfig {
    cfg.with_abs_tol(cfg.abs_tol / 100.0)
}

/// Flattens a quadrature outcome into (value, converged, evals, note).
struct Leg {
    value: f64,
    ok: bool,
    n_evals: usize,
    note: Option<String>,
}

impl From<Result<QuadResult, QuadError>> for Leg {
    fn from(r: Result<QuadResult, QuadError>) -> Self {
        match r {
            Ok(q) => Leg {
                value: q.value,
                ok: q.converged,
                n_evals: q.n_evals,
                note: None,
            },
            Err(e) => {
                let (value, n_evals) = e.best().map_or((f64::NAN, 0), |b| (b.value, b.n_evals));
                Leg {
                    value,
                    ok: false,
                    n_evals,
                    note: Some(e.to_string()),
                }
            }
        }
    }
}

fn join_notes<'a>(base: String, extra: impl IntoIterator<Item = &'a Option<String>>) -> String {
    let mut out = base;
    for note in extra.into_iter().flatten() {
        out.push_str("; ");
        out.push_str(note);
    }
    out
}

fn g_leg(t: f64, cfg: &QuadConfig) -> Leg {
    let t = ParamT::new(t).expect("fixed step parameters lie in [0, 1]");
    g_numeric(t, cfg).into()
}

fn step_g_endpoint(id: &str, t: f64, expected: f64, description: &str, cfg: &QuadConfig) -> StepReport {
    let leg = g_leg(t, &inner_cfg(cfg));
    StepReport::new(
        id,
        description,
        leg.value,
        expected,
        regular_tol(cfg),
        leg.ok,
        leg.n_evals,
        join_notes(format!("quadrature of f(x, {t}) over (0, pi/2)"), [&leg.note]),
    )
}

fn step_lemma(cfg: &QuadConfig) -> StepReport {
    let tol = singular_tol(cfg);
    let qcfg = inner_cfg(cfg);
    let mut worst: Option<leibniz::LeibnizCheck> = None;
    let mut n_evals = 0;
    let mut ok = true;
    let mut errors = Vec::new();
    for &t in &LEIBNIZ_T_GRID {
        match check_leibniz(t, LEIBNIZ_H, &qcfg, tol) {
            Ok(c) => {
                n_evals += c.n_evals;
                if worst.is_none_or(|w| c.max_pairwise_gap > w.max_pairwise_gap) {
                    worst = Some(c);
                }
            }
            Err(e) => {
                ok = false;
                errors.push(Some(format!("t = {t}: {e}")));
            }
        }
    }
    let (gap, base) = match (&worst, ok) {
        (Some(w), true) => (
            w.max_pairwise_gap,
            format!(
                "worst at t = {}: central difference {:e}, integral of df/dt {:e}, closed form {:e}",
                w.t, w.fd_value, w.quad_of_dfdt, w.closed_form
            ),
        ),
        _ => (f64::NAN, "three-way derivative check failed".to_owned()),
    };
    StepReport::new(
        "lemma-gprime",
        "g'(t) = log t/(2 sqrt(t)(1-t)): finite difference of g, integral of df/dt and closed form agree",
        gap,
        0.0,
        tol,
        ok,
        n_evals,
        join_notes(base, &errors),
    )
}

fn step_domination() -> StepReport {
    let r = check_domination(DOMINATION_DELTA, DOMINATION_GRID, DOMINATION_GRID)
        .expect("fixed domination grid is valid");
    StepReport::new(
        "domination",
        "|df/dt| <= 1/(2t) with equality at t = tan^2 x (AM-GM)",
        r.max_scaled,
        1.0,
        leibniz::DOMINATION_SLACK,
        r.pass && r.all_finite,
        0,
        format!(
            "computed = max |df/dt| 2t over {} points plus equality points; max(|df/dt| - 1/(2t)) = {:e}; \
             equality gap {:e}; f and df/dt finite on grid: {} (finiteness only, not a.e.)",
            r.grid.len(),
            r.max_violation,
            r.equality_gap,
            r.all_finite
        ),
    )
}

fn step_continuity(end: Endpoint, cfg: &QuadConfig) -> StepReport {
    let (id, seq, expected, description): (_, &[f64], _, _) = match end {
        Endpoint::Zero => (
            "continuity-0",
            &CONTINUITY_ZERO_SEQ,
            G_AT_ZERO,
            "g(t_n) -> g(0) = pi^2/2 as t_n -> 0",
        ),
        Endpoint::One => (
            "continuity-1",
            &CONTINUITY_ONE_SEQ,
            G_AT_ONE,
            "g(t_n) -> g(1) = pi^2/4 as t_n -> 1",
        ),
    };
    let tol = CONTINUITY_TOL.max(cfg.abs_tol);
    let t_last = *seq.last().expect("non-empty sequence");
    match check_endpoint_continuity(end, seq, &inner_cfg(cfg), tol) {
        Ok(c) => {
            let g_last = *c.values.last().expect("non-empty sequence");
            let gaps: Vec<String> = c.gaps.iter().map(|g| format!("{g:.3e}")).collect();
            StepReport::new(
                id,
                description,
                g_last,
                expected,
                tol,
                c.pass,
                c.n_evals,
                format!("computed = g({t_last}); gaps |g(t_n) - g(end)| = [{}]", gaps.join(", ")),
            )
        }
        Err(e) => StepReport::new(id, description, f64::NAN, expected, tol, false, 0, e.to_string()),
    }
}

fn step_ftc(cfg: &QuadConfig) -> StepReport {
    let qcfg = inner_cfg(cfg);
    let rhs: Leg = integrate_with_transform(gprime_raw, 0.0, 1.0, &SquareAtLower, &qcfg).into();
    let g0 = g_leg(0.0, &qcfg);
    let g1 = g_leg(1.0, &qcfg);
    StepReport::new(
        "ftc",
        "g(1) - g(0) = integral of g' over (0, 1)",
        rhs.value,
        g1.value - g0.value,
        singular_tol(cfg),
        rhs.ok && g0.ok && g1.ok,
        rhs.n_evals + g0.n_evals + g1.n_evals,
        join_notes(
            "computed via t = u^2; expected = g(1) - g(0), both by quadrature".to_owned(),
            [&rhs.note, &g0.note, &g1.note],
        ),
    )
}

fn step_substitution(cfg: &QuadConfig) -> StepReport {
    let qcfg = inner_cfg(cfg);
    let direct: Leg = integrate(gprime_raw, 0.0, 1.0, &qcfg).into();
    let substituted: Leg = integrate(|u: f64| u.ln() / (1.0 - u * u), 0.0, 1.0, &qcfg).into();
    StepReport::new(
        "substitution",
        "1/2 integral of log t/(sqrt(t)(1-t)) dt = 2 integral of log u/(1-u^2) du",
        direct.value,
        2.0 * substituted.value,
        singular_tol(cfg),
        direct.ok && substituted.ok,
        direct.n_evals + substituted.n_evals,
        join_notes(
            "both sides integrated directly over (0, 1)".to_owned(),
            [&direct.note, &substituted.note],
        ),
    )
}

/// `Σ_{k=0}^{n} u^{2k}`, by Horner.
fn truncated_geometric(u: f64, n: u32) -> f64 {
    let u2 = u * u;
    (0..=n).fold(0.0, |acc, _| acc * u2 + 1.0)
}

/// Both sides of swapping a finite sum with the integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterchangeSides {
    /// `Σ_{n=0}^{N} ∫_0^1 u^{2n} log u du`
    pub sum_of_integrals: f64,
    /// `∫_0^1 log u · Σ_{n=0}^{N} u^{2n} du`
    pub integral_of_sum: f64,
    pub n_evals: usize,
}

pub fn interchange_sides(n_max: u32, cfg: &QuadConfig) -> Result<InterchangeSides, QuadError> {
    let mut sum = CompensatedSum::new();
    let mut n_evals = 0;
    for n in 0..=n_max {
        let r = log_moment_integral(n, cfg)?;
        sum += r.value;
        n_evals += r.n_evals;
    }
    let kernel = integrate(|u: f64| u.ln() * truncated_geometric(u, n_max), 0.0, 1.0, cfg)?;
    Ok(InterchangeSides {
        sum_of_integrals: sum.value(),
        integral_of_sum: kernel.value,
        n_evals: n_evals + kernel.n_evals,
    })
}

fn step_interchange(cfg: &QuadConfig) -> StepReport {
    let (computed, expected, ok, n_evals, note) = match interchange_sides(INTERCHANGE_N, &inner_cfg(cfg)) {
        Ok(s) => (s.sum_of_integrals, s.integral_of_sum, true, s.n_evals, None),
        Err(e) => (f64::NAN, f64::NAN, false, e.best().map_or(0, |b| b.n_evals), Some(e.to_string())),
    };
    StepReport::new(
        "interchange",
        "sum of integrals of u^(2n) log u equals integral of log u times the summed kernel (n = 0..50)",
        computed,
        expected,
        regular_tol(cfg),
        ok,
        n_evals,
        join_notes(
            format!(
                "kernel = sum_{{k=0}}^{INTERCHANGE_N} u^(2k) = (1 - u^{})/(1 - u^2)",
                2 * INTERCHANGE_N + 2
            ),
            [&note],
        ),
    )
}

fn step_moments(cfg: &QuadConfig) -> StepReport {
    let qcfg = inner_cfg(cfg);
    let mut worst = (0, f64::NAN, log_moment_exact(0));
    let mut worst_err = -1.0;
    let mut n_evals = 0;
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 0..=MOMENT_MAX_N {
        let leg: Leg = log_moment_integral(n, &qcfg).into();
        let exact = log_moment_exact(n);
        let err = (leg.value - exact).abs();
        n_evals += leg.n_evals;
        ok &= leg.ok;
        if leg.note.is_some() {
            notes.push(leg.note);
        }
        if !(err <= worst_err) {
            worst_err = err;
            worst = (n, leg.value, exact);
        }
    }
    StepReport::new(
        "moments",
        "integral of u^(2n) log u over (0, 1) = -1/(2n+1)^2 for n = 0..20",
        worst.1,
        worst.2,
        regular_tol(cfg),
        ok,
        n_evals,
        join_notes(format!("worst case n = {}", worst.0), &notes),
    )
}

fn enclosure_step(id: &str, description: &str, enc: Option<Enclosure>, expected: f64) -> StepReport {
    match enc {
        Some(e) => StepReport::new(
            id,
            description,
            e.midpoint(),
            expected,
            0.5 * e.width(),
            true,
            0,
            format!("enclosure {e} from {SERIES_TERMS} terms; computed = midpoint, tol = half-width"),
        ),
        None => StepReport::new(
            id,
            description,
            f64::NAN,
            expected,
            0.0,
            false,
            0,
            "odd-square and 3/4 full-series enclosures do not overlap".to_owned(),
        ),
    }
}

fn run_known(id: &str, cfg: &QuadConfig) -> StepReport {
    match id {
        "g0" => step_g_endpoint("g0", 0.0, G_AT_ZERO, "g(0) = pi^2/2", cfg),
        "g1" => step_g_endpoint("g1", 1.0, G_AT_ONE, "g(1) = pi^2/4", cfg),
        "lemma-gprime" => step_lemma(cfg),
        "domination" => step_domination(),
        "continuity-0" => step_continuity(Endpoint::Zero, cfg),
        "continuity-1" => step_continuity(Endpoint::One, cfg),
        "ftc" => step_ftc(cfg),
        "substitution" => step_substitution(cfg),
        "interchange" => step_interchange(cfg),
        "moments" => step_moments(cfg),
        "series-odd" => enclosure_step(
            "series-odd",
            "sum of 1/(2n+1)^2 = pi^2/8",
            Some(series::sum_odd_reciprocal_squares(SERIES_TERMS)),
            PI * PI / 8.0,
        ),
        "basel" => enclosure_step(
            "basel",
            "sum of 1/n^2 = pi^2/6 via sum of 1/(2n+1)^2 = 3/4 sum of 1/n^2",
            series::basel_via_odd_relation(SERIES_TERMS),
            PI * PI / 6.0,
        ),
        _ => unreachable!("step ids are validated before dispatch"),
    }
}

/// Runs one registered step.
pub fn run_step(step_id: &str, cfg: &QuadConfig) -> Result<StepReport, PipelineError> {
    if !STEP_IDS.contains(&step_id) {
        return Err(PipelineError::UnknownStep(step_id.to_owned()));
    }
    Ok(run_known(step_id, cfg))
}

/// Runs the given steps concurrently and reports them in the order given.
pub fn run_steps(step_ids: &[&str], cfg: &QuadConfig) -> Result<ProofReport, PipelineError> {
    if let Some(bad) = step_ids.iter().find(|id| !STEP_IDS.contains(id)) {
        return Err(PipelineError::UnknownStep((*bad).to_owned()));
    }
    let steps = thread::scope(|scope| {
        let handles: Vec<_> = step_ids
            .iter()
            .map(|id| scope.spawn(move || run_known(id, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("proof step panicked"))
            .collect()
    });
    Ok(ProofReport::from_steps(steps, cfg))
}

/// Runs every step in proof order.
pub fn run_all(cfg: &QuadConfig) -> ProofReport {
    run_steps(&STEP_IDS, cfg).expect("registered ids are known")
}
