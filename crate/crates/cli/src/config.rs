//! Run configuration: a JSON document whose every field can be overridden
//! by a command-line flag.

use std::path::{Path, PathBuf};

use icr_dmt_core::sim::{Scheme, SweepConfig, ThetaSampling, DEFAULT_EVENT_FLOOR};
use icr_dmt_core::{ChannelExponents, MultiplexingGains};
use serde::{Deserialize, Serialize};

use crate::presets::Preset;
use crate::{CliError, Result};

pub const DEFAULT_TRIALS: u64 = 100_000;
pub const DEFAULT_SNR_GRID: &str = "30:80:10";
pub const DEFAULT_R_STEP: f64 = 0.01;
pub const DEFAULT_ORACLE_SAMPLES: usize = 1000;
pub const DEFAULT_ORACLE_STEP: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampling {
    #[default]
    Fading,
    Direct,
}

impl From<Sampling> for ThetaSampling {
    fn from(s: Sampling) -> Self {
        match s {
            Sampling::Fading => ThetaSampling::FromFading,
            Sampling::Direct => ThetaSampling::Direct,
        }
    }
}

/// Every knob any command reads. Absent fields fall back to defaults, or
/// are reported as missing by the command that needs them.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub scheme: Option<String>,
    pub preset: Option<String>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub r1: Option<f64>,
    pub r2: Option<f64>,
    pub r_step: Option<f64>,
    /// Either a list of dB values or a `start:stop:step` string.
    pub snr_grid_db: Option<SnrGrid>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub sampling: Option<Sampling>,
    pub event_floor: Option<u64>,
    pub samples: Option<usize>,
    pub step: Option<f64>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SnrGrid {
    List(Vec<f64>),
    Range(String),
}

impl SnrGrid {
    pub fn values(&self) -> Result<Vec<f64>> {
        match self {
            SnrGrid::List(v) => Ok(v.clone()),
            SnrGrid::Range(s) => parse_snr_grid(s),
        }
    }
}

/// Parses `start:stop:step` (inclusive) or a comma-separated list.
pub fn parse_snr_grid(s: &str) -> Result<Vec<f64>> {
    let bad = || CliError::Config(format!("bad SNR grid '{s}', want start:stop:step or a,b,c"));
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
    if s.contains(':') {
        let parts: Vec<f64> = s.split(':').map(num).collect::<Result<_>>()?;
        let [start, stop, step] = parts[..] else {
            return Err(bad());
        };
        if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
            return Err(bad());
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        Ok((0..=n)
            .map(|k| ((start + k as f64 * step) * 1e9).round() / 1e9)
            .collect())
    } else {
        s.split(',').map(num).collect()
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// `self` with every field set in `flags` replaced.
    pub fn overlay(self, flags: RunConfig) -> RunConfig {
        RunConfig {
            scheme: flags.scheme.or(self.scheme),
            preset: flags.preset.or(self.preset),
            alpha: flags.alpha.or(self.alpha),
            beta: flags.beta.or(self.beta),
            gamma: flags.gamma.or(self.gamma),
            r1: flags.r1.or(self.r1),
            r2: flags.r2.or(self.r2),
            r_step: flags.r_step.or(self.r_step),
            snr_grid_db: flags.snr_grid_db.or(self.snr_grid_db),
            trials: flags.trials.or(self.trials),
            seed: flags.seed.or(self.seed),
            sampling: flags.sampling.or(self.sampling),
            event_floor: flags.event_floor.or(self.event_floor),
            samples: flags.samples.or(self.samples),
            step: flags.step.or(self.step),
            threads: flags.threads.or(self.threads),
            out: flags.out.or(self.out),
        }
    }

    pub fn preset(&self) -> Result<Option<Preset>> {
        self.preset.as_deref().map(str::parse).transpose()
    }

    /// Exponents from the preset, if any, with explicit fields on top.
    pub fn exponents(&self) -> Result<ChannelExponents> {
        let base = self.preset()?.map(|p| p.exponents());
        let pick = |v: Option<f64>, from_preset: Option<f64>, name: &str| {
            v.or(from_preset)
                .ok_or_else(|| CliError::Config(format!("{name} is required (or give a preset)")))
        };
        Ok(ChannelExponents::new(
            pick(self.alpha, base.map(|e| e.alpha), "alpha")?,
            pick(self.beta, base.map(|e| e.beta), "beta")?,
            pick(self.gamma, base.map(|e| e.gamma), "gamma")?,
        )?)
    }

    pub fn gains(&self) -> Result<MultiplexingGains> {
        let need = |v: Option<f64>, name: &str| v.ok_or_else(|| CliError::Config(format!("{name} is required")));
        Ok(MultiplexingGains::new(need(self.r1, "r1")?, need(self.r2, "r2")?)?)
    }

    pub fn scheme(&self) -> Result<Scheme> {
        let s = self.scheme.as_deref().ok_or_else(|| CliError::Config("scheme is required".into()))?;
        Ok(s.parse()?)
    }

    pub fn r_step(&self) -> Result<f64> {
        let s = self.r_step.unwrap_or(DEFAULT_R_STEP);
        if !(s > 0.0 && s <= 1.0) {
            return Err(CliError::Config(format!("r_step must lie in (0, 1], got {s}")));
        }
        Ok(s)
    }

    pub fn event_floor(&self) -> u64 {
        self.event_floor.unwrap_or(DEFAULT_EVENT_FLOOR)
    }

    /// The simulator configuration, fully validated.
    pub fn sweep_config(&self) -> Result<SweepConfig> {
        let grid = match &self.snr_grid_db {
            Some(g) => g.values()?,
            None => parse_snr_grid(DEFAULT_SNR_GRID)?,
        };
        let cfg = SweepConfig {
            scheme: self.scheme()?,
            exponents: self.exponents()?,
            gains: self.gains()?,
            snr_grid_db: grid,
            trials_per_point: self.trials.unwrap_or(DEFAULT_TRIALS),
            master_seed: self.seed.unwrap_or(0),
            sampling: self.sampling.unwrap_or_default().into(),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_snr_grid("30:80:10").unwrap(), [30.0, 40.0, 50.0, 60.0, 70.0, 80.0]);
        assert_eq!(parse_snr_grid("0.1:0.3:0.1").unwrap(), [0.1, 0.2, 0.3]);
        assert_eq!(parse_snr_grid("5, 10,20").unwrap(), [5.0, 10.0, 20.0]);
        assert!(parse_snr_grid("30:80").is_err());
        assert!(parse_snr_grid("30:80:0").is_err());
        assert!(parse_snr_grid("a,b").is_err());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = serde_json::from_str::<RunConfig>(r#"{"alpha": 1, "alhpa": 2}"#);
        assert!(err.is_err());
        let ok: RunConfig = serde_json::from_str(r#"{"snr_grid_db": "10:30:10", "sampling": "direct"}"#).unwrap();
        assert_eq!(ok.snr_grid_db.unwrap().values().unwrap(), [10.0, 20.0, 30.0]);
        let ok: RunConfig = serde_json::from_str(r#"{"snr_grid_db": [10, 20]}"#).unwrap();
        assert_eq!(ok.snr_grid_db, Some(SnrGrid::List(vec![10.0, 20.0])));
    }

    #[test]
    fn flags_win() {
        let file = RunConfig {
            alpha: Some(1.0),
            beta: Some(2.0),
            seed: Some(3),
            ..Default::default()
        };
        let flags = RunConfig {
            alpha: Some(0.5),
            ..Default::default()
        };
        let c = file.overlay(flags);
        assert_eq!((c.alpha, c.beta, c.seed), (Some(0.5), Some(2.0), Some(3)));
    }

    #[test]
    fn preset_exponents_can_be_overridden() {
        let c = RunConfig {
            preset: Some("fig3d".into()),
            gamma: Some(0.5),
            ..Default::default()
        };
        let e = c.exponents().unwrap();
        assert_eq!((e.alpha, e.beta, e.gamma), (2.0, 3.0, 0.5));
        assert!(RunConfig::default().exponents().is_err());
    }
}
