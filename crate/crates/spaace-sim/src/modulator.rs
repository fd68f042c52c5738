//! SPAACE and SPAACE-M set-point modulation.
//!
//! The modulator is a causal per-sample transformation: at every controller
//! sampling instant it receives the scheduled reference `x_ref` and the
//! measured output `x`, and returns the reference actually issued to the
//! plant. Histories are appended only after the output has been computed, so
//! every step works from strictly prior samples plus the current inputs.
//!
//! The memory window holds the loop tracking errors of the previous steps,
//! i.e. the differences between the reference that was issued and the
//! measurement. For passthrough steps this equals `x_ref - x`.

use std::collections::VecDeque;

use crate::params::{ControllerParams, Mode};

/// Tracking error `x_ref - x`.
pub fn tracking_error(x_ref: f64, x: f64) -> f64 {
    x_ref - x
}

/// Predicted error `x_ref - x_pred`.
pub fn predicted_error(x_ref: f64, x_pred: f64) -> f64 {
    x_ref - x_pred
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModulatorError {
    #[error("non-monotonic call order: t={got} after t={prev}")]
    NonMonotonicTime { prev: f64, got: f64 },
}

/// Bounded history state of one modulator instance.
///
/// `x_history` keeps the last `max(n, j) + 1` measurements and `e_history`
/// the last `j + 1` issued-reference tracking errors, most recent last.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ModulatorState {
    x_history: VecDeque<f64>,
    e_history: VecDeque<f64>,
    last_t: Option<f64>,
}

impl ModulatorState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Clears the histories. Idempotent.
    pub fn reset(&mut self) {
        self.x_history.clear();
        self.e_history.clear();
        self.last_t = None;
    }

    /// True once the measurement history holds a sample `n` controller steps
    /// older than the newest, which is what the predictor needs.
    pub fn initialized(&self, params: &ControllerParams) -> bool {
        self.x_history.len() > params.n as usize
    }

    pub fn x_history(&self) -> impl Iterator<Item = f64> + '_ {
        self.x_history.iter().copied()
    }

    pub fn e_history(&self) -> impl Iterator<Item = f64> + '_ {
        self.e_history.iter().copied()
    }

    /// Rate of change over the prediction horizon,
    /// `(x(t_k) - x(t_k - T_pred)) / T_pred`, taking the newest history
    /// entry as `x(t_k)`. `None` until initialized.
    pub fn rate_of_change(&self, params: &ControllerParams) -> Option<f64> {
        let len = self.x_history.len();
        let n = params.n as usize;
        if len < n + 1 {
            return None;
        }
        let newest = self.x_history[len - 1];
        let old = self.x_history[len - 1 - n];
        Some((newest - old) / params.t_pred())
    }

    /// Linear extrapolation `x_now + r(t_k) * T_pred`, which collapses to
    /// `2 x(t_k) - x(t_k - T_pred)` when `x_now` is the newest history entry.
    pub fn predict(&self, params: &ControllerParams, x_now: f64) -> Option<f64> {
        self.rate_of_change(params)
            .map(|r| x_now + r * params.t_pred())
    }

    /// Memory term over the error window. With `strict_eq7` the window sum of
    /// the last `j + 1` errors is divided by `j`; otherwise the plain mean of
    /// the last `j` errors is used. Returns 0 while the window is not full.
    pub fn past_error_average(&self, params: &ControllerParams) -> f64 {
        let j = params.j as usize;
        let len = self.e_history.len();
        if len < j + 1 {
            return 0.0;
        }
        if params.strict_eq7 {
            let sum: f64 = self.e_history.iter().skip(len - (j + 1)).sum();
            sum / j as f64
        } else {
            let sum: f64 = self.e_history.iter().skip(len - j).sum();
            sum / j as f64
        }
    }

    fn push(&mut self, params: &ControllerParams, x: f64, e_issued: f64) {
        let cap_x = params.n.max(params.j) as usize + 1;
        let cap_e = params.j as usize + 1;
        self.x_history.push_back(x);
        while self.x_history.len() > cap_x {
            self.x_history.pop_front();
        }
        self.e_history.push_back(e_issued);
        while self.e_history.len() > cap_e {
            self.e_history.pop_front();
        }
    }
}

/// Advances the modulator by one controller sampling instant and returns the
/// issued reference.
///
/// Calls must be strictly monotone in `t` and spaced by the sampling period;
/// the state is updated in every mode, including `Base`.
pub fn modulate_step(
    state: &mut ModulatorState,
    params: &ControllerParams,
    t: f64,
    x_ref: f64,
    x: f64,
) -> Result<f64, ModulatorError> {
    if let Some(prev) = state.last_t {
        if t <= prev {
            return Err(ModulatorError::NonMonotonicTime { prev, got: t });
        }
    }

    let e = tracking_error(x_ref, x);
    let n = params.n as usize;
    let prediction_ready = state.x_history.len() >= n;

    let out = if params.mode != Mode::Base && prediction_ready && e.abs() > params.epsilon {
        let x_old = state.x_history[state.x_history.len() - n];
        let x_pred = 2.0 * x - x_old;
        let e_pred = predicted_error(x_ref, x_pred);
        let mut out = x_ref + params.m1 * e_pred;
        if params.mode == Mode::SpaaceM {
            out += params.m2 * state.past_error_average(params);
        }
        out.clamp(params.sat_min, params.sat_max)
    } else {
        x_ref
    };

    state.push(params, x, out - x);
    state.last_t = Some(t);
    Ok(out)
}
