//! Run configuration: rank, coefficient mode, size bounds and output format.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::Mode;

/// Size limits shared by every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest total degree (`|β|`, Koszul strand degree).
    pub degree: usize,
    /// Largest `n` for exhaustive searches over `W` and subsets of `Δ^+`.
    pub enumeration: usize,
    /// Largest tensor power used to evaluate matrix coefficients.
    pub tensor_length: usize,
    /// Radius `B` of the weight box `[-B, B]^n`; `None` means `n + 2`.
    pub weight_box: Option<i64>,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { degree: 6, enumeration: 5, tensor_length: 4, weight_box: None }
    }
}

impl Bounds {
    pub fn weight_box(&self, n: usize) -> i64 {
        self.weight_box.unwrap_or(n as i64 + 2)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

/// Everything a command needs besides its own arguments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: usize,
    /// Order `m` of `ζ`; `None` for generic `q`.
    pub zeta_order: Option<u32>,
    pub bounds: Bounds,
    pub format: OutputFormat,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(n: usize) -> Self {
        RunConfig { n, zeta_order: None, bounds: Bounds::default(), format: OutputFormat::default(), seed: 0 }
    }

    pub fn with_zeta_order(mut self, m: u32) -> Self {
        self.zeta_order = Some(m);
        self
    }

    pub fn mode(&self) -> Result<Mode> {
        match self.zeta_order {
            None => Ok(Mode::Generic),
            Some(m) => Mode::root_of_unity(m),
        }
    }

    /// Rejects `n < 2` and, at a root of unity, `ℓ < n`.
    pub fn validate(&self) -> Result<Mode> {
        if self.n < 2 {
            return Err(Error::InvalidInput(format!("n must be at least 2, got {}", self.n)));
        }
        let mode = self.mode()?;
        check_ell(&mode, self.n)?;
        Ok(mode)
    }
}

/// `ℓ ≥ n` at a root of unity; always fine for generic `q`.
pub fn check_ell(mode: &Mode, n: usize) -> Result<()> {
    match mode.ell() {
        Some(ell) if (ell as usize) < n => Err(Error::EllBelowRank { ell, n }),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(RunConfig::new(3).validate().unwrap().is_generic());
        assert_eq!(RunConfig::new(3).with_zeta_order(7).validate().unwrap().ell(), Some(7));
        assert_eq!(
            RunConfig::new(4).with_zeta_order(6).validate().unwrap_err(),
            Error::EllBelowRank { ell: 3, n: 4 }
        );
        assert!(RunConfig::new(1).validate().is_err());
        assert_eq!(Bounds::default().weight_box(3), 5);
    }

    #[test]
    fn json_round_trip() {
        let c = RunConfig::new(3).with_zeta_order(9);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&s).unwrap(), c);
    }
}
