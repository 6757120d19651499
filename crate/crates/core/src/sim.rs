//! Truncated-Laurent spectral time integration with fixed-step RK4.
//!
//! A state is the complex mode vector on `[-N, N]`; every right-hand-side
//! evaluation truncates convolution overflow back to the cutoff and records
//! the discarded energy fraction. The third-derivative mode weights grow
//! geometrically in `|n|` for `|q| != 1`, far stiffer than the classical
//! `n^3`; runs that violate the computed step-size advisory are refused
//! unless explicitly overridden. No reality constraint is imposed: the
//! scaling operator with real `q != 1` does not preserve real-valuedness on
//! the circle, so the state lives in complex mode space.

use num::complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::euler::{classical_rhs, kdv_rhs, linear_pipeline, EquationTag, EquationVariant};
use crate::laurent::LaurentField;
use crate::qfield::{Mode, QParam, Scalar};

/// Linear stability interval of classic RK4 on the negative real axis,
/// used as the advisory margin against the largest linear mode weight.
pub const RK4_STABILITY_MARGIN: f64 = 2.785;

/// How convolution overflow beyond the cutoff is handled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DealiasPolicy {
    /// Drop modes outside `[-N, N]`, recording the discarded fraction.
    Truncate,
}

impl DealiasPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            DealiasPolicy::Truncate => "truncate",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "truncate" => Ok(DealiasPolicy::Truncate),
            other => Err(Error::Parse(format!("unknown dealias policy {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SimConfig {
    pub variant: EquationVariant,
    pub q: Complex64,
    /// Mode cutoff N; the state carries modes `-N ..= N`.
    pub mode_cutoff: usize,
    pub dt: f64,
    pub t_end: f64,
    pub dealias: DealiasPolicy,
    /// Sample every this many steps (the last step is always sampled).
    pub output_every: usize,
    pub override_stability: bool,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.mode_cutoff < 1 {
            return Err(Error::Precondition("mode cutoff must be at least 1".into()));
        }
        if !self.dt.is_finite() || self.dt <= 0.0 {
            return Err(Error::Precondition("dt must be positive".into()));
        }
        if self.t_end < 0.0 {
            return Err(Error::Precondition("t_end must be nonnegative".into()));
        }
        if self.output_every == 0 {
            return Err(Error::Precondition(
                "output cadence must be positive".into(),
            ));
        }
        if self.variant.c.mode() != Mode::Float {
            return Err(Error::WrongMode {
                expected: "float",
                context: "simulation constant c",
            });
        }
        if !self.variant.tag.is_classical() {
            // q-variants need a valid deformation parameter
            QParam::new(Scalar::from_complex(self.q))?;
        }
        Ok(())
    }

    fn q_param(&self) -> Result<Option<QParam>> {
        if self.variant.tag.is_classical() {
            Ok(None)
        } else {
            Ok(Some(QParam::new(Scalar::from_complex(self.q))?))
        }
    }
}

/// State of one run: mode vector, model time, step count, and the overflow
/// fraction of the most recent right-hand-side evaluations.
#[derive(Clone, Debug)]
pub struct SimState {
    /// Modes `-N ..= N`, index `i` holding mode `i - N`.
    pub modes: Vec<Complex64>,
    pub t: f64,
    pub step: u64,
    pub tail_fraction: f64,
}

impl SimState {
    pub fn from_field(field: &LaurentField, cutoff: usize) -> Result<Self> {
        let n = cutoff as i64;
        if let (Some(lo), Some(hi)) = (field.support_min(), field.support_max()) {
            if lo < -n || hi > n {
                return Err(Error::Precondition(format!(
                    "initial support [{lo}, {hi}] exceeds the cutoff {cutoff}"
                )));
            }
        }
        let mut modes = vec![Complex64::new(0.0, 0.0); 2 * cutoff + 1];
        for (k, c) in field.iter() {
            modes[(k + n) as usize] = c.to_complex();
        }
        Ok(SimState {
            modes,
            t: 0.0,
            step: 0,
            tail_fraction: 0.0,
        })
    }

    pub fn cutoff(&self) -> usize {
        (self.modes.len() - 1) / 2
    }

    pub fn to_field(&self) -> LaurentField {
        let n = self.cutoff() as i64;
        let mut pairs = Vec::new();
        for (i, c) in self.modes.iter().enumerate() {
            if c.re != 0.0 || c.im != 0.0 {
                pairs.push((i as i64 - n, Scalar::from_complex(*c)));
            }
        }
        LaurentField::from_pairs(Mode::Float, &pairs)
    }

    pub fn coeff(&self, mode: i64) -> Complex64 {
        let n = self.cutoff() as i64;
        if mode < -n || mode > n {
            Complex64::new(0.0, 0.0)
        } else {
            self.modes[(mode + n) as usize]
        }
    }

    pub fn is_finite(&self) -> bool {
        self.modes
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Mode-norm, zero mode, residue mode, and the current tail fraction.
    pub fn diagnostics(&self) -> Diagnostics {
        let mode_norm: f64 = self.modes.iter().map(|c| c.norm_sqr()).sum();
        Diagnostics {
            mode_norm,
            u0: self.coeff(0),
            residue: self.coeff(-1),
            tail_fraction: self.tail_fraction,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Diagnostics {
    pub mode_norm: f64,
    pub u0: Complex64,
    pub residue: Complex64,
    pub tail_fraction: f64,
}

/// Evaluates the configured right-hand side on a mode vector, truncating to
/// the cutoff and measuring the discarded energy fraction.
fn rhs_truncated(
    modes: &[Complex64],
    cutoff: usize,
    config: &SimConfig,
    q: &Option<QParam>,
) -> Result<(Vec<Complex64>, f64)> {
    let n = cutoff as i64;
    let mut pairs = Vec::new();
    for (i, c) in modes.iter().enumerate() {
        if c.re != 0.0 || c.im != 0.0 {
            pairs.push((i as i64 - n, Scalar::from_complex(*c)));
        }
    }
    let field = LaurentField::from_pairs(Mode::Float, &pairs);
    let rhs = match q {
        Some(q) => kdv_rhs(&field, &config.variant, q)?,
        None => match config.variant.tag {
            EquationTag::ClassicalKdv => classical_rhs(&field, &config.variant.c),
            EquationTag::ClassicalBurgers => classical_rhs(&field, &Scalar::zero(Mode::Float)),
            _ => unreachable!("non-classical variants carry a q parameter"),
        },
    };
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * cutoff + 1];
    let mut kept = 0.0f64;
    let mut dropped = 0.0f64;
    for (k, c) in rhs.iter() {
        let v = c.to_complex();
        if k < -n || k > n {
            dropped += v.norm_sqr();
        } else {
            kept += v.norm_sqr();
            out[(k + n) as usize] = v;
        }
    }
    let total = kept + dropped;
    let tail = if total > 0.0 { dropped / total } else { 0.0 };
    Ok((out, tail))
}

/// One classic four-stage step. Modes outside the cutoff are truncated per
/// the dealias policy at every stage evaluation; the step's tail fraction is
/// the worst stage's.
pub fn step_rk4(state: &SimState, config: &SimConfig) -> Result<SimState> {
    let q = config.q_param()?;
    step_rk4_inner(state, config, &q)
}

fn step_rk4_inner(state: &SimState, config: &SimConfig, q: &Option<QParam>) -> Result<SimState> {
    let cutoff = state.cutoff();
    let h = config.dt;
    let len = state.modes.len();
    let add_scaled = |base: &[Complex64], k: &[Complex64], s: f64| -> Vec<Complex64> {
        (0..len).map(|i| base[i] + k[i] * s).collect()
    };
    let (k1, t1) = rhs_truncated(&state.modes, cutoff, config, q)?;
    let (k2, t2) = rhs_truncated(&add_scaled(&state.modes, &k1, h / 2.0), cutoff, config, q)?;
    let (k3, t3) = rhs_truncated(&add_scaled(&state.modes, &k2, h / 2.0), cutoff, config, q)?;
    let (k4, t4) = rhs_truncated(&add_scaled(&state.modes, &k3, h), cutoff, config, q)?;
    let mut modes = Vec::with_capacity(len);
    for i in 0..len {
        modes.push(state.modes[i] + (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0));
    }
    let next = SimState {
        modes,
        t: state.t + h,
        step: state.step + 1,
        tail_fraction: t1.max(t2).max(t3).max(t4),
    };
    if !next.is_finite() {
        return Err(Error::NonFinite {
            step: next.step,
            t: next.t,
        });
    }
    Ok(next)
}

/// Largest linear mode weight `|c| max_n |L z^n|` over the resolved modes;
/// the advisory step bound is the RK4 margin divided by this.
pub fn max_linear_weight(config: &SimConfig) -> Result<f64> {
    let n = config.mode_cutoff as i64;
    let cmag = config.variant.c.magnitude();
    match config.variant.tag {
        EquationTag::ClassicalBurgers => Ok(0.0),
        EquationTag::ClassicalKdv => {
            let mut w = 0.0f64;
            for k in -n..=n {
                w = w.max((k * (k - 1) * (k - 2)).unsigned_abs() as f64);
            }
            Ok(cmag * w)
        }
        _ => {
            let q = QParam::new(Scalar::from_complex(config.q))?;
            let pipeline = linear_pipeline(config.variant.tag, &q).expect("q-variant");
            let mut w = 0.0f64;
            for k in -n..=n {
                let out = pipeline.apply(&LaurentField::basis(k, Mode::Float), &q)?;
                w = w.max(out.max_magnitude());
            }
            Ok(cmag * w)
        }
    }
}

/// Advisory maximum step size for the configured linear operator;
/// infinite when the linear part vanishes.
pub fn stability_dt_max(config: &SimConfig) -> Result<f64> {
    let w = max_linear_weight(config)?;
    Ok(if w == 0.0 {
        f64::INFINITY
    } else {
        RK4_STABILITY_MARGIN / w
    })
}

/// One sampled state with diagnostics.
#[derive(Clone, Debug)]
pub struct Sample {
    pub t: f64,
    pub step: u64,
    pub modes: Vec<Complex64>,
    pub diagnostics: Diagnostics,
}

/// Full run output: sampled trajectory plus termination metadata.
#[derive(Clone, Debug)]
pub struct RunRecord {
    pub samples: Vec<Sample>,
    pub diverged: bool,
    pub steps_taken: u64,
    pub stability_dt_max: f64,
}

/// Runs the configured integration from the initial field. Deterministic:
/// identical config and initial state produce identical output bytes.
///
/// A non-finite state terminates the run early with the partial record
/// flagged diverged. Configs violating the stability advisory are refused
/// unless `override_stability` is set.
pub fn run(config: &SimConfig, initial: &LaurentField) -> Result<RunRecord> {
    config.validate()?;
    let dt_max = stability_dt_max(config)?;
    if config.dt > dt_max && !config.override_stability {
        return Err(Error::StabilityAdvisory {
            dt: config.dt,
            dt_max,
        });
    }
    let q = config.q_param()?;
    let mut state = SimState::from_field(initial, config.mode_cutoff)?;
    let total_steps = (config.t_end / config.dt).round() as u64;
    let sample_of = |state: &SimState| Sample {
        t: state.t,
        step: state.step,
        modes: state.modes.clone(),
        diagnostics: state.diagnostics(),
    };
    let mut samples = vec![sample_of(&state)];
    let mut diverged = false;
    while state.step < total_steps {
        match step_rk4_inner(&state, config, &q) {
            Ok(next) => state = next,
            Err(Error::NonFinite { .. }) => {
                diverged = true;
                break;
            }
            Err(e) => return Err(e),
        }
        if state.step % config.output_every as u64 == 0 || state.step == total_steps {
            samples.push(sample_of(&state));
        }
    }
    if diverged && samples.last().map(|s| s.step) != Some(state.step) {
        // keep the last finite state in the partial record
        samples.push(sample_of(&state));
    }
    Ok(RunRecord {
        samples,
        diverged,
        steps_taken: state.step,
        stability_dt_max: dt_max,
    })
}

/// Mode trajectory CSV: `t,n,re,im` per resolved mode per sample.
pub fn modes_csv(record: &RunRecord) -> String {
    let mut out = String::from("t,n,re,im\n");
    for sample in &record.samples {
        let n = (sample.modes.len() as i64 - 1) / 2;
        for (i, c) in sample.modes.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                sample.t,
                i as i64 - n,
                c.re,
                c.im
            ));
        }
    }
    out
}

/// Diagnostics CSV:
/// `t,mode_norm,u0_re,u0_im,residue_re,residue_im,tail_fraction`.
pub fn diagnostics_csv(record: &RunRecord) -> String {
    let mut out = String::from("t,mode_norm,u0_re,u0_im,residue_re,residue_im,tail_fraction\n");
    for s in &record.samples {
        let d = &s.diagnostics;
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            s.t, d.mode_norm, d.u0.re, d.u0.im, d.residue.re, d.residue.im, d.tail_fraction
        ));
    }
    out
}

/// Run manifest embedding the full configuration for reproducibility, plus
/// arbitrary extra entries (measured tolerances, notes).
pub fn manifest_json(
    config: &SimConfig,
    initial: &LaurentField,
    record: &RunRecord,
    extras: &[(&str, Value)],
) -> Value {
    let mut manifest = json!({
        "config": {
            "variant": config.variant.tag.name(),
            "c": [config.variant.c.to_complex().re, config.variant.c.to_complex().im],
            "q": [config.q.re, config.q.im],
            "mode_cutoff": config.mode_cutoff,
            "dt": config.dt,
            "t_end": config.t_end,
            "dealias": config.dealias.name(),
            "output_every": config.output_every,
            "override_stability": config.override_stability,
        },
        "initial": initial.to_json(),
        "stability_dt_max": record.stability_dt_max,
        "steps_taken": record.steps_taken,
        "diverged": record.diverged,
        "samples": record.samples.len(),
    });
    for (key, value) in extras {
        manifest[*key] = value.clone();
    }
    manifest
}

/// Parses a config file value (the JSON mirror of [`SimConfig`]) together
/// with its initial field.
pub fn config_from_json(value: &Value) -> Result<(SimConfig, LaurentField)> {
    let get = |key: &str| {
        value
            .get(key)
            .ok_or_else(|| Error::Parse(format!("config missing {key:?}")))
    };
    let tag = EquationTag::parse(
        get("variant")?
            .as_str()
            .ok_or_else(|| Error::Parse("variant must be a string".into()))?,
    )?;
    let c = parse_complex(get("c")?)?;
    let q = parse_complex(get("q")?)?;
    let mode_cutoff = get("mode_cutoff")?
        .as_u64()
        .ok_or_else(|| Error::Parse("mode_cutoff must be a positive integer".into()))?
        as usize;
    let dt = get("dt")?
        .as_f64()
        .ok_or_else(|| Error::Parse("dt must be a number".into()))?;
    let t_end = get("t_end")?
        .as_f64()
        .ok_or_else(|| Error::Parse("t_end must be a number".into()))?;
    let dealias = match value.get("dealias") {
        Some(v) => DealiasPolicy::parse(
            v.as_str()
                .ok_or_else(|| Error::Parse("dealias must be a string".into()))?,
        )?,
        None => DealiasPolicy::Truncate,
    };
    let output_every = match value.get("output_every") {
        Some(v) => v
            .as_u64()
            .ok_or_else(|| Error::Parse("output_every must be a positive integer".into()))?
            as usize,
        None => 1,
    };
    let override_stability = value
        .get("override_stability")
        .and_then(Value::as_bool)
        .unwrap_or(false);
    let initial = LaurentField::from_json(get("initial")?)?;
    if initial.mode() != Mode::Float && !initial.is_zero() {
        return Err(Error::WrongMode {
            expected: "float",
            context: "simulation initial condition",
        });
    }
    let config = SimConfig {
        variant: EquationVariant::new(tag, Scalar::from_complex(c)),
        q,
        mode_cutoff,
        dt,
        t_end,
        dealias,
        output_every,
        override_stability,
    };
    Ok((config, initial))
}

fn parse_complex(value: &Value) -> Result<Complex64> {
    if let Some(x) = value.as_f64() {
        return Ok(Complex64::new(x, 0.0));
    }
    if let Some(arr) = value.as_array() {
        if arr.len() == 2 {
            if let (Some(re), Some(im)) = (arr[0].as_f64(), arr[1].as_f64()) {
                return Ok(Complex64::new(re, im));
            }
        }
    }
    Err(Error::Parse(format!(
        "expected a number or [re, im] pair, got {value}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_mode(a: f64) -> LaurentField {
        LaurentField::from_pairs(Mode::Float, &[(1, Scalar::from_f64(a))])
    }

    fn burgers_config(dt: f64, t_end: f64) -> SimConfig {
        SimConfig {
            variant: EquationVariant::new(EquationTag::ClassicalBurgers, Scalar::from_f64(0.0)),
            q: Complex64::new(2.0, 0.0),
            mode_cutoff: 2,
            dt,
            t_end,
            dealias: DealiasPolicy::Truncate,
            output_every: 1,
            override_stability: false,
        }
    }

    #[test]
    fn zero_rhs_only_advances_time() {
        let config = burgers_config(0.25, 1.0);
        let state = SimState::from_field(&LaurentField::zero(Mode::Float), 2).unwrap();
        let next = step_rk4(&state, &config).unwrap();
        assert_eq!(next.t, 0.25);
        assert_eq!(next.step, 1);
        assert!(next.modes.iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn burgers_single_mode_matches_hand_stepped_stages() {
        // u = a z stays in mode 1: da/dt = -3 a^2
        let a0 = 0.3f64;
        let h = 0.01f64;
        let config = burgers_config(h, h);
        let state = SimState::from_field(&single_mode(a0), 2).unwrap();
        let next = step_rk4(&state, &config).unwrap();
        let f = |a: f64| -3.0 * a * a;
        let k1 = f(a0);
        let k2 = f(a0 + h / 2.0 * k1);
        let k3 = f(a0 + h / 2.0 * k2);
        let k4 = f(a0 + h * k3);
        let want = a0 + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        let got = next.coeff(1);
        assert!((got.re - want).abs() < 1e-15, "{} vs {want}", got.re);
        assert_eq!(got.im, 0.0);
    }

    #[test]
    fn one_step_discrepancy_shrinks_at_fifth_order() {
        let a0 = 0.4f64;
        let dt = 0.02f64;
        let value_after = |h: f64, steps: u64| {
            let config = burgers_config(h, h * steps as f64);
            let mut state = SimState::from_field(&single_mode(a0), 2).unwrap();
            for _ in 0..steps {
                state = step_rk4(&state, &config).unwrap();
            }
            state.coeff(1).re
        };
        let d1 = (value_after(dt, 1) - value_after(dt / 2.0, 2)).abs();
        let d2 = (value_after(dt / 2.0, 1) - value_after(dt / 4.0, 2)).abs();
        let ratio = d1 / d2;
        assert!(
            (ratio - 32.0).abs() < 32.0 * 0.3,
            "local order ratio {ratio}"
        );
    }

    #[test]
    fn runs_are_deterministic_and_sampled() {
        let mut config = burgers_config(0.01, 0.05);
        config.output_every = 2;
        let initial = single_mode(0.25);
        let a = run(&config, &initial).unwrap();
        let b = run(&config, &initial).unwrap();
        assert_eq!(modes_csv(&a), modes_csv(&b));
        assert_eq!(diagnostics_csv(&a), diagnostics_csv(&b));
        assert!(!a.diverged);
        assert_eq!(a.steps_taken, 5);
        // samples at steps 0, 2, 4, 5
        assert_eq!(a.samples.len(), 4);
    }

    #[test]
    fn t_end_zero_returns_only_the_initial_state() {
        let config = burgers_config(0.01, 0.0);
        let record = run(&config, &single_mode(0.5)).unwrap();
        assert_eq!(record.samples.len(), 1);
        assert_eq!(record.steps_taken, 0);
    }

    #[test]
    fn stability_advisory_refuses_oversized_steps() {
        let mut config = burgers_config(1.0, 2.0);
        config.variant = EquationVariant::new(EquationTag::ClassicalKdv, Scalar::from_f64(1.0));
        config.mode_cutoff = 8;
        // max weight |n(n-1)(n-2)| at n = -8 is 720; advisory well below 1.0
        let dt_max = stability_dt_max(&config).unwrap();
        assert!(dt_max < 1.0);
        match run(&config, &single_mode(0.1)) {
            Err(Error::StabilityAdvisory { dt_max: m, .. }) => {
                assert!((m - dt_max).abs() < 1e-12)
            }
            other => panic!("expected stability refusal, got {other:?}"),
        }
        config.override_stability = true;
        // refused no longer, though it may well diverge
        let _ = run(&config, &single_mode(0.1));
    }

    #[test]
    fn divergence_is_flagged_with_a_partial_record() {
        let mut config = burgers_config(1e3, 4e3);
        config.override_stability = true;
        let record = run(&config, &single_mode(1.0)).unwrap();
        assert!(record.diverged);
        assert!(record.steps_taken < 4);
        assert!(!record.samples.is_empty());
    }

    #[test]
    fn truncation_tail_is_recorded() {
        // u = 0.5 z^2 with cutoff 2: uu' pushes energy to mode 3, truncated
        let config = SimConfig {
            variant: EquationVariant::new(EquationTag::ClassicalBurgers, Scalar::from_f64(0.0)),
            q: Complex64::new(2.0, 0.0),
            mode_cutoff: 2,
            dt: 1e-3,
            t_end: 1e-3,
            dealias: DealiasPolicy::Truncate,
            output_every: 1,
            override_stability: false,
        };
        let initial = LaurentField::from_pairs(Mode::Float, &[(2, Scalar::from_f64(0.5))]);
        let record = run(&config, &initial).unwrap();
        let last = record.samples.last().unwrap();
        assert!(last.diagnostics.tail_fraction > 0.0);
    }

    #[test]
    fn classical_rhs_residue_identity() {
        // residue of -3uu' - cu''' equals -3 residue(uu'): the third
        // derivative cannot produce a z^-1 mode from z^2
        let u = LaurentField::from_pairs(
            Mode::Float,
            &[
                (-2, Scalar::from_f64(0.7)),
                (1, Scalar::from_f64(1.2)),
                (2, Scalar::from_f64(-0.4)),
            ],
        );
        let c = Scalar::from_f64(2.5);
        let lhs = classical_rhs(&u, &c).residue_integral().to_complex();
        let rhs = u.mul(&u.ddz_apply()).residue_integral().to_complex() * -3.0;
        assert!((lhs - rhs).norm() < 1e-15);
    }

    #[test]
    fn config_json_round_trip() {
        let value = json!({
            "variant": "qkdv-psi0",
            "c": 0.1,
            "q": [1.000001, 0.0],
            "mode_cutoff": 8,
            "dt": 1e-3,
            "t_end": 0.02,
            "dealias": "truncate",
            "output_every": 5,
            "initial": {"modes": [[1, 0.2, 0.0], [-1, 0.2, 0.0]]},
        });
        let (config, initial) = config_from_json(&value).unwrap();
        assert_eq!(config.variant.tag, EquationTag::QKdvPsi0);
        assert_eq!(config.mode_cutoff, 8);
        assert_eq!(initial.support_len(), 2);
        config.validate().unwrap();
        let record = run(&config, &initial).unwrap();
        let manifest = manifest_json(&config, &initial, &record, &[("note", json!("x"))]);
        assert_eq!(manifest["config"]["variant"], "qkdv-psi0");
        assert_eq!(manifest["note"], "x");
        assert_eq!(manifest["diverged"], false);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut config = burgers_config(0.01, 0.1);
        config.mode_cutoff = 0;
        assert!(config.validate().is_err());
        let mut config = burgers_config(-0.01, 0.1);
        config.mode_cutoff = 4;
        assert!(config.validate().is_err());
        let mut config = burgers_config(0.01, 0.1);
        config.variant = EquationVariant::new(EquationTag::QKdvPsi0, Scalar::from_f64(1.0));
        config.q = Complex64::new(1.0, 0.0);
        assert!(config.validate().is_err());
    }
}
