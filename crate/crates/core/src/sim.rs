//! Monte Carlo outage estimation and diversity-slope fitting.
//!
//! Trials at one SNR point are cut into fixed-size batches. Batch `b` at SNR
//! `snr_db` draws from a ChaCha8 generator keyed by
//! `(master_seed, snr_db, b)`, so a count depends only on that triple and
//! batches can be evaluated in any order, on any number of workers, and
//! merged by addition.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::formulas;
use crate::model::{
    draw_fading, fading_to_exponents, sample_exponents_direct, ChannelExponents, DiversityValue,
    ExponentDraw, MultiplexingGains, SnrPoint,
};
use crate::rates::{cf_outage, df_outage, fd_af_outage, hd_af_outage, TargetRates};

/// Trials per batch.
pub const BATCH_TRIALS: u64 = 50_000;
/// Minimum outage events for a point to enter the slope fit.
pub const DEFAULT_EVENT_FLOOR: u64 = 20;
/// Smallest accepted trial count per point.
pub const MIN_TRIALS: u64 = 1_000;
/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Cf,
    Df,
    FdAf,
    HdAf,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::Cf, Scheme::Df, Scheme::FdAf, Scheme::HdAf];

    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Cf => "cf",
            Scheme::Df => "df",
            Scheme::FdAf => "af-fd",
            Scheme::HdAf => "af-hd",
        }
    }

    pub fn is_af(self) -> bool {
        matches!(self, Scheme::FdAf | Scheme::HdAf)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "cf" => Ok(Scheme::Cf),
            "df" => Ok(Scheme::Df),
            "af-fd" | "fd-af" => Ok(Scheme::FdAf),
            "af-hd" | "hd-af" => Ok(Scheme::HdAf),
            _ => Err(invalid("scheme", alloc::format!("unknown scheme '{s}'"))),
        }
    }
}

/// Closed-form DMT of a scheme.
pub fn closed_form(scheme: Scheme, g: MultiplexingGains, e: ChannelExponents) -> Result<DiversityValue> {
    Ok(match scheme {
        Scheme::Cf => formulas::cf_dmt(g, e).value,
        Scheme::Df => formulas::df_dmt(g, e).value,
        Scheme::FdAf => formulas::af_fd_dmt(g, e)?.value,
        Scheme::HdAf => formulas::af_hd_dmt(g, e)?.value,
    })
}

/// How the AF schemes obtain their exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThetaSampling {
    /// Transform genuine `CN(0, 1)` coefficient draws.
    #[default]
    FromFading,
    /// Sample `|h|^2 ~ Exp(1)` and transform that.
    Direct,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub scheme: Scheme,
    pub exponents: ChannelExponents,
    pub gains: MultiplexingGains,
    pub snr_grid_db: Vec<f64>,
    pub trials_per_point: u64,
    pub master_seed: u64,
    pub sampling: ThetaSampling,
}

/// A contiguous slice of the trials at one SNR point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Batch {
    pub index: u64,
    pub trials: u64,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.snr_grid_db.len() < 3 {
            return Err(invalid("snr_grid_db", "needs at least 3 points"));
        }
        if self.snr_grid_db.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(invalid("snr_grid_db", "must be strictly increasing"));
        }
        for &db in &self.snr_grid_db {
            SnrPoint::from_db(db)?;
        }
        if self.trials_per_point < MIN_TRIALS {
            return Err(invalid(
                "trials_per_point",
                alloc::format!("must be at least {MIN_TRIALS}"),
            ));
        }
        if self.scheme.is_af() && self.exponents.gamma != 1.0 {
            return Err(Error::GammaUnsupported {
                gamma: self.exponents.gamma,
            });
        }
        Ok(())
    }

    pub fn batches(&self) -> impl Iterator<Item = Batch> {
        let total = self.trials_per_point;
        (0..total.div_ceil(BATCH_TRIALS)).map(move |index| Batch {
            index,
            trials: BATCH_TRIALS.min(total - index * BATCH_TRIALS),
        })
    }
}

/// Generator for one batch, keyed by `(master_seed, snr_db, batch_index)`.
pub fn batch_rng(master_seed: u64, snr_db: f64, batch_index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&master_seed.to_le_bytes());
    key[8..16].copy_from_slice(&snr_db.to_bits().to_le_bytes());
    key[16..24].copy_from_slice(&batch_index.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

fn draw_exponents(rng: &mut ChaCha8Rng, snr: SnrPoint, sampling: ThetaSampling) -> ExponentDraw {
    match sampling {
        ThetaSampling::FromFading => fading_to_exponents(&draw_fading(rng), snr),
        ThetaSampling::Direct => sample_exponents_direct(rng, snr),
    }
}

/// Counts outage events in one batch. The configuration must be valid.
pub fn count_batch(cfg: &SweepConfig, snr_db: f64, batch: Batch) -> Result<u64> {
    let snr = SnrPoint::from_db(snr_db)?;
    let (e, g) = (cfg.exponents, cfg.gains);
    let t = TargetRates::new(g, snr);
    let mut rng = batch_rng(cfg.master_seed, snr_db, batch.index);
    let mut events = 0u64;
    match cfg.scheme {
        Scheme::Cf => {
            for _ in 0..batch.trials {
                events += cf_outage(&draw_fading(&mut rng), snr, e, t).in_outage as u64;
            }
        }
        Scheme::Df => {
            for _ in 0..batch.trials {
                events += df_outage(&draw_fading(&mut rng), snr, e, t).in_outage as u64;
            }
        }
        Scheme::FdAf => {
            for _ in 0..batch.trials {
                let x_b = draw_exponents(&mut rng, snr, cfg.sampling);
                let x_b1 = draw_exponents(&mut rng, snr, cfg.sampling);
                events += fd_af_outage(&x_b, &x_b1, e, g)?.in_outage as u64;
            }
        }
        Scheme::HdAf => {
            for _ in 0..batch.trials {
                let x = draw_exponents(&mut rng, snr, cfg.sampling);
                events += hd_af_outage(&x, e, g)?.in_outage as u64;
            }
        }
    }
    Ok(events)
}

/// Estimated outage probability at one SNR point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutagePoint {
    pub snr_db: f64,
    pub p_hat: f64,
    pub events: u64,
    pub trials: u64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl OutagePoint {
    /// Point with a 95% Wilson score interval.
    pub fn new(snr_db: f64, events: u64, trials: u64) -> Self {
        assert!(trials > 0 && events <= trials, "{events} events in {trials} trials");
        let n = trials as f64;
        let p_hat = events as f64 / n;
        let z2 = Z95 * Z95;
        let denom = 1.0 + z2 / n;
        let center = (p_hat + z2 / (2.0 * n)) / denom;
        let half = Z95 / denom * libm::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n));
        Self {
            snr_db,
            p_hat,
            events,
            trials,
            ci_low: (center - half).max(0.0).min(p_hat),
            ci_high: (center + half).min(1.0).max(p_hat),
        }
    }
}

/// Runs every batch of one SNR point in order.
pub fn estimate_outage(cfg: &SweepConfig, snr_db: f64) -> Result<OutagePoint> {
    cfg.validate()?;
    let mut events = 0;
    for batch in cfg.batches() {
        events += count_batch(cfg, snr_db, batch)?;
    }
    Ok(OutagePoint::new(snr_db, events, cfg.trials_per_point))
}

/// Estimates every grid point, reporting each as it completes.
pub fn run_sweep(
    cfg: &SweepConfig,
    mut on_point: impl FnMut(&OutagePoint),
) -> Result<Vec<OutagePoint>> {
    cfg.validate()?;
    let mut out = Vec::with_capacity(cfg.snr_grid_db.len());
    for &db in &cfg.snr_grid_db {
        let pt = estimate_outage(cfg, db)?;
        on_point(&pt);
        out.push(pt);
    }
    Ok(out)
}

/// Slope of `-log10(p_hat)` against `log10(rho)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeEstimate {
    pub d_hat: f64,
    pub stderr: f64,
    pub points_used: usize,
}

/// Weighted least-squares diversity fit.
///
/// Points with fewer than `event_floor` events, or with every trial in
/// outage, are skipped. Each remaining point is weighted by the inverse of
/// the delta-method variance of `log10(p_hat)`,
/// `(1 - p) / (events * ln(10)^2)`.
pub fn estimate_diversity(points: &[OutagePoint], event_floor: u64) -> Result<SlopeEstimate> {
    let ln10_sq = core::f64::consts::LN_10 * core::f64::consts::LN_10;
    let usable: Vec<(f64, f64, f64)> = points
        .iter()
        .filter(|p| p.events >= event_floor.max(1) && p.p_hat < 1.0)
        .map(|p| {
            let var = (1.0 - p.p_hat) / (p.events as f64 * ln10_sq);
            (p.snr_db / 10.0, -libm::log10(p.p_hat), 1.0 / var)
        })
        .collect();
    let distinct = usable.windows(2).any(|w| w[0].0 != w[1].0);
    if usable.len() < 2 || !distinct {
        return Err(Error::InsufficientData {
            usable: usable.len(),
            event_floor,
        });
    }
    let sw: f64 = usable.iter().map(|u| u.2).sum();
    let xm = usable.iter().map(|u| u.2 * u.0).sum::<f64>() / sw;
    let ym = usable.iter().map(|u| u.2 * u.1).sum::<f64>() / sw;
    let sxx: f64 = usable.iter().map(|u| u.2 * (u.0 - xm) * (u.0 - xm)).sum();
    let sxy: f64 = usable.iter().map(|u| u.2 * (u.0 - xm) * (u.1 - ym)).sum();
    Ok(SlopeEstimate {
        d_hat: sxy / sxx,
        stderr: libm::sqrt(1.0 / sxx),
        points_used: usable.len(),
    })
}
