use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Time stepping of tracked points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum LoewnerScheme {
    /// `w ← w + 2dt/w − dU`.
    #[default]
    Euler,
    /// Exact flow with the driving frozen over the step: `w ← √(w² + 4dt) − dU`.
    Slit,
}

/// Update of the irrep vector carried by the group factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum GroupScheme {
    /// `v ← v + σ Σ dθᵃ Tᵃ v`; mean-preserving.
    ItoLinear,
    /// Linear increment plus the quadratic-variation drift `½σ² Q v dt`.
    #[default]
    ItoDrift,
    /// `v ← exp(σ Σ dθᵃ Tᵃ) v`.
    Exponential,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    #[serde(default = "default_kappa")]
    pub kappa: f64,
    #[serde(default)]
    pub tau: f64,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(rename = "T", alias = "t_max", default = "default_t")]
    pub t_max: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_checkpoints")]
    pub checkpoints: usize,
    #[serde(default)]
    pub loewner: LoewnerScheme,
    #[serde(default)]
    pub group: GroupScheme,
}

fn default_kappa() -> f64 {
    3.0
}
fn default_dt() -> f64 {
    1e-3
}
fn default_t() -> f64 {
    0.5
}
fn default_samples() -> usize {
    10_000
}
fn default_checkpoints() -> usize {
    5
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            kappa: default_kappa(),
            tau: 0.0,
            dt: default_dt(),
            t_max: default_t(),
            seed: 0,
            samples: default_samples(),
            checkpoints: default_checkpoints(),
            loewner: LoewnerScheme::default(),
            group: GroupScheme::default(),
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if !self.kappa.is_finite() || self.kappa < 0.0 {
            return bad(format!("kappa must be finite and >= 0, got {}", self.kappa));
        }
        if !self.tau.is_finite() {
            return bad("tau must be finite".into());
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return bad(format!("dt must be > 0, got {}", self.dt));
        }
        if !(self.t_max > 0.0) || !self.t_max.is_finite() {
            return bad(format!("T must be > 0, got {}", self.t_max));
        }
        if self.dt > self.t_max {
            return bad(format!("dt = {} exceeds T = {}", self.dt, self.t_max));
        }
        if self.samples < 1 {
            return bad("samples must be >= 1".into());
        }
        if self.checkpoints < 1 {
            return bad("checkpoints must be >= 1".into());
        }
        Ok(())
    }

    pub fn from_toml(s: &str) -> Result<Self> {
        let c: Self = toml::from_str(s).map_err(|e| Error::Parse {
            field: "config".into(),
            message: e.to_string(),
        })?;
        c.validate()?;
        Ok(c)
    }

    pub fn steps(&self) -> usize {
        (self.t_max / self.dt).round().max(1.0) as usize
    }

    /// Step indices (1-based counts) of the uniform checkpoints.
    pub fn checkpoint_steps(&self) -> Vec<usize> {
        let n = self.steps();
        (1..=self.checkpoints)
            .map(|i| ((i as f64) * n as f64 / self.checkpoints as f64).round() as usize)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip() {
        let c = SimConfig::from_toml("kappa = 3.0\ndt = 1e-3\nT = 0.5\nseed = 7\nsamples = 100\ngroup = \"exponential\"\n").unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.group, GroupScheme::Exponential);
        assert_eq!(c.steps(), 500);
        assert_eq!(c.checkpoint_steps(), vec![100, 200, 300, 400, 500]);
        assert!(SimConfig::from_toml("dt = 1.0\nT = 0.5\n").is_err());
        assert!(SimConfig::from_toml("bogus = 1\n").is_err());
    }
}
