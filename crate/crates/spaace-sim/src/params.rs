//! Controller configuration shared by the modulator, scenario runner, and
//! co-simulation server.
//!
//! All times are seconds and all signals per-unit. The CLI accepts `ms`/`us`
//! suffixes and converts before anything reaches this module.

use std::fmt;

/// Set-point modulation mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Pass the reference through unmodified.
    Base,
    /// Linear-prediction modulation (single gain `m1`).
    Spaace,
    /// Prediction plus memory-term modulation (`m1` and `m2`).
    SpaaceM,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Mode> {
        match s.to_ascii_lowercase().as_str() {
            "base" => Some(Mode::Base),
            "spaace" => Some(Mode::Spaace),
            "spaace_m" | "spaace-m" | "spaacem" => Some(Mode::SpaaceM),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Base => "base",
            Mode::Spaace => "spaace",
            Mode::SpaaceM => "spaace_m",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Modulator constants. `t_pred` is never stored; it is always derived as
/// `n * t_sample` so the two can not drift apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControllerParams {
    pub mode: Mode,
    /// Gain on the predicted error (the single gain of plain SPAACE).
    pub m1: f64,
    /// Gain on the memory term (SPAACE-M only).
    pub m2: f64,
    /// Prediction horizon as a multiple of the sampling period.
    pub n: u32,
    /// Observer/controller sampling period, seconds.
    pub t_sample: f64,
    /// Activation threshold on |e|, per-unit.
    pub epsilon: f64,
    /// Memory window parameter.
    pub j: u32,
    /// Literal memory normalisation (window sum over `j`) when true;
    /// plain mean of the `j` past errors when false.
    pub strict_eq7: bool,
    /// Saturation bounds applied to the modulated reference.
    pub sat_min: f64,
    pub sat_max: f64,
}

impl Default for ControllerParams {
    fn default() -> Self {
        ControllerParams {
            mode: Mode::SpaaceM,
            m1: -0.3,
            m2: -1.0,
            n: 4,
            t_sample: 0.2e-3,
            epsilon: 0.05,
            j: 2,
            strict_eq7: true,
            sat_min: -1.5,
            sat_max: 1.5,
        }
    }
}

/// A single violated invariant, reported by [`ControllerParams::validate`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamViolation {
    #[error("t_sample must be positive")]
    TSampleNotPositive,
    #[error("n must be ≥ 1")]
    NTooSmall,
    #[error("j must be ≥ 1")]
    JTooSmall,
    #[error("epsilon must be non-negative")]
    EpsilonNegative,
    #[error("m1 must be finite")]
    M1NotFinite,
    #[error("m2 must be finite")]
    M2NotFinite,
    #[error("saturation bounds must satisfy sat_min < sat_max")]
    SaturationInverted,
}

impl ControllerParams {
    /// Prediction horizon `n * t_sample`, seconds.
    pub fn t_pred(&self) -> f64 {
        self.n as f64 * self.t_sample
    }

    /// Checks every invariant and returns the full list of violations.
    /// Valid parameters come back as `Ok(())`.
    pub fn validate(&self) -> Result<(), Vec<ParamViolation>> {
        let mut errs = Vec::new();
        if !(self.t_sample > 0.0) {
            errs.push(ParamViolation::TSampleNotPositive);
        }
        if self.n < 1 {
            errs.push(ParamViolation::NTooSmall);
        }
        if self.j < 1 {
            errs.push(ParamViolation::JTooSmall);
        }
        if !(self.epsilon >= 0.0) {
            errs.push(ParamViolation::EpsilonNegative);
        }
        if !self.m1.is_finite() {
            errs.push(ParamViolation::M1NotFinite);
        }
        if !self.m2.is_finite() {
            errs.push(ParamViolation::M2NotFinite);
        }
        if !(self.sat_min < self.sat_max) {
            errs.push(ParamViolation::SaturationInverted);
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(errs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_params() -> ControllerParams {
        ControllerParams {
            mode: Mode::SpaaceM,
            m1: -0.3,
            m2: -1.0,
            n: 4,
            t_sample: 0.0002,
            epsilon: 0.05,
            j: 2,
            ..ControllerParams::default()
        }
    }

    #[test]
    fn paper_constants_validate() {
        assert!(paper_params().validate().is_ok());
    }

    #[test]
    fn t_pred_is_exact_multiple() {
        let p = paper_params();
        assert_eq!(p.t_pred(), 4.0 * 0.0002);
    }

    #[test]
    fn zero_t_sample_rejected() {
        let p = ControllerParams {
            t_sample: 0.0,
            ..paper_params()
        };
        let errs = p.validate().unwrap_err();
        assert!(errs.contains(&ParamViolation::TSampleNotPositive));
        assert_eq!(errs[0].to_string(), "t_sample must be positive");
    }

    #[test]
    fn zero_n_rejected() {
        let p = ControllerParams {
            n: 0,
            ..paper_params()
        };
        let errs = p.validate().unwrap_err();
        assert!(errs.contains(&ParamViolation::NTooSmall));
        assert_eq!(ParamViolation::NTooSmall.to_string(), "n must be ≥ 1");
    }

    #[test]
    fn multiple_violations_all_reported() {
        let p = ControllerParams {
            t_sample: -1.0,
            n: 0,
            j: 0,
            epsilon: -0.1,
            ..paper_params()
        };
        let errs = p.validate().unwrap_err();
        assert_eq!(errs.len(), 4);
    }

    #[test]
    fn validate_is_pure() {
        let p = paper_params();
        let a = p.validate();
        let b = p.validate();
        assert_eq!(a.is_ok(), b.is_ok());
    }

    #[test]
    fn mode_parsing() {
        assert_eq!(Mode::parse("base"), Some(Mode::Base));
        assert_eq!(Mode::parse("SPAACE"), Some(Mode::Spaace));
        assert_eq!(Mode::parse("spaace_m"), Some(Mode::SpaaceM));
        assert_eq!(Mode::parse("spaace-m"), Some(Mode::SpaaceM));
        assert_eq!(Mode::parse("pid"), None);
    }
}
