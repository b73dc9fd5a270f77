use crate::arith::Rational;
use crate::error::{Error, Result};

/// Parameters that the asymptotic statements leave free. Every field is an
/// input; measured constants are reported by the suites, never stored here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub beta: Rational,
    pub eta: Rational,
    pub epsilon: Rational,
    /// Lower end `T` of the doubling window used by the h-dimension.
    pub window_start: u32,
    /// Largest difference searched by the bounding-box routines; `None`
    /// means `max(A)`.
    pub diff_bound: Option<i64>,
    pub trials: u64,
    pub seed: u64,
    pub cap: u64,
    /// Node/subset budget for exhaustive searches.
    pub budget: u64,
    pub retry_limit: u32,
    /// Largest modulus examined by the reduced-set check.
    pub vmax: i64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            beta: Rational::new(3, 2),
            eta: Rational::new(1, 2),
            epsilon: Rational::from_integer(1),
            window_start: 1,
            diff_bound: None,
            trials: 200,
            seed: 0x5eed,
            cap: crate::DEFAULT_CAP,
            budget: 2_000_000,
            retry_limit: 64,
            vmax: 8,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let one = Rational::from_integer(1);
        let zero = Rational::from_integer(0);
        let bad = |m: &str| Err(Error::Precondition(m.into()));
        if self.beta <= one {
            return bad("beta must exceed 1");
        }
        if self.eta <= zero || self.eta >= one {
            return bad("eta must lie in (0, 1)");
        }
        if self.epsilon <= zero {
            return bad("epsilon must be positive");
        }
        if self.window_start == 0 {
            return bad("T must be at least 1");
        }
        if self.diff_bound.is_some_and(|b| b < 1) {
            return bad("diff_bound must be positive");
        }
        if self.retry_limit == 0 {
            return bad("retry_limit must be positive");
        }
        if self.vmax < 1 {
            return bad("vmax must be positive");
        }
        Ok(())
    }

    /// Dimensions examined by the stability checks: `d <= 1 + beta`,
    /// clipped to the two dimensions with an exact bounding-box search.
    pub fn dims(&self) -> Vec<usize> {
        let top = (Rational::from_integer(1) + self.beta).floor().to_integer();
        (1..=top.clamp(1, 2) as usize).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        let c = ExperimentConfig::default();
        c.validate().unwrap();
        assert_eq!(c.dims(), vec![1, 2]);
    }

    #[test]
    fn rejects_out_of_range() {
        let c = ExperimentConfig {
            beta: Rational::from_integer(1),
            ..Default::default()
        };
        assert!(c.validate().is_err());
        let c = ExperimentConfig {
            eta: Rational::from_integer(1),
            ..Default::default()
        };
        assert!(c.validate().is_err());
        let c = ExperimentConfig {
            window_start: 0,
            ..Default::default()
        };
        assert!(c.validate().is_err());
    }
}
