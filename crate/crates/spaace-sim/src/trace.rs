//! Sampled time series produced by simulation runs.

/// One fine-grid sample: the scheduled reference, the modulated reference
/// actually issued to the plant, and the measured output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    /// Time, seconds, from the start of the run.
    pub t: f64,
    /// Unmodified (scheduled) reference.
    pub x_ref: f64,
    /// Issued reference after modulation and zero-order hold.
    pub x_ref_mod: f64,
    /// Measured output.
    pub x: f64,
}

/// Uniformly sampled trace at the plant step `dt`, with the controller
/// period `t_sample` recorded alongside so consumers can recover the
/// zero-order-hold structure.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub samples: Vec<Sample>,
    pub dt: f64,
    pub t_sample: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TraceError {
    #[error("trace must contain at least one sample")]
    Empty,
    #[error("sample times must be non-negative and strictly increasing (index {index})")]
    NonMonotonicTime { index: usize },
    #[error("sample spacing at index {index} deviates from dt by more than 1e-12 relative")]
    NonUniformSpacing { index: usize },
    #[error("t_sample must be a positive integer multiple of dt")]
    BadControllerPeriod,
}

impl Trace {
    /// Builds a trace and checks the uniform-spacing and timing invariants.
    pub fn new(samples: Vec<Sample>, dt: f64, t_sample: f64) -> Result<Trace, TraceError> {
        if samples.is_empty() {
            return Err(TraceError::Empty);
        }
        if samples[0].t < 0.0 {
            return Err(TraceError::NonMonotonicTime { index: 0 });
        }
        for i in 1..samples.len() {
            if samples[i].t <= samples[i - 1].t {
                return Err(TraceError::NonMonotonicTime { index: i });
            }
            let gap = samples[i].t - samples[i - 1].t;
            if (gap - dt).abs() > 1e-12 * dt.max(1.0) {
                return Err(TraceError::NonUniformSpacing { index: i });
            }
        }
        let ratio = t_sample / dt;
        if !(ratio >= 1.0) || (ratio - ratio.round()).abs() > 1e-9 {
            return Err(TraceError::BadControllerPeriod);
        }
        Ok(Trace {
            samples,
            dt,
            t_sample,
        })
    }

    /// Number of plant steps per controller period.
    pub fn steps_per_sample(&self) -> usize {
        (self.t_sample / self.dt).round() as usize
    }

    /// Iterator over `(t, x)` pairs with `t >= t0`.
    pub fn measured_from(&self, t0: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.samples
            .iter()
            .filter(move |s| s.t >= t0 - 1e-15)
            .map(|s| (s.t, s.x))
    }

    /// Measured value at the sample closest to `t`.
    pub fn measured_at(&self, t: f64) -> Option<f64> {
        let idx = (t / self.dt).round() as isize;
        if idx < 0 {
            return None;
        }
        self.samples.get(idx as usize).map(|s| s.x)
    }
}
