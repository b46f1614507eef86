//! Work splitting over a rayon pool. Results are gathered in input order
//! and merged by exact integer addition, so output never depends on the
//! number of workers.

use icr_dmt_core::oracle::{check_step, compare_tuple, random_tuple, Comparison, Family};
use icr_dmt_core::sim::{count_batch, OutagePoint, SweepConfig};
use icr_dmt_core::{ChannelExponents, MultiplexingGains};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::Result;

pub fn estimate_outage(pool: &ThreadPool, cfg: &SweepConfig, snr_db: f64) -> Result<OutagePoint> {
    cfg.validate()?;
    let batches: Vec<_> = cfg.batches().collect();
    let counts = pool.install(|| {
        batches
            .par_iter()
            .map(|&b| count_batch(cfg, snr_db, b))
            .collect::<std::result::Result<Vec<u64>, _>>()
    })?;
    Ok(OutagePoint::new(snr_db, counts.iter().sum(), cfg.trials_per_point))
}

pub fn run_sweep(
    pool: &ThreadPool,
    cfg: &SweepConfig,
    mut on_point: impl FnMut(&OutagePoint),
) -> Result<Vec<OutagePoint>> {
    cfg.validate()?;
    let mut out = Vec::with_capacity(cfg.snr_grid_db.len());
    for &db in &cfg.snr_grid_db {
        let p = estimate_outage(pool, cfg, db)?;
        on_point(&p);
        out.push(p);
    }
    Ok(out)
}

/// One comparison row together with the tuple it was made at.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyRow {
    pub sample: usize,
    pub gains: MultiplexingGains,
    pub exponents: ChannelExponents,
    pub comparison: Comparison,
}

/// The first `samples` tuples of the seeded stream. Each tuple is compared
/// as drawn for the cut-set, CF and DF families, and again with `gamma`
/// set to 1 for the AF families.
pub fn verify_samples(pool: &ThreadPool, samples: usize, step: f64, seed: u64) -> Result<Vec<VerifyRow>> {
    check_step(step)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tuples: Vec<_> = (0..samples).map(|_| random_tuple(&mut rng, false)).collect();
    let per_sample = pool.install(|| {
        tuples
            .par_iter()
            .enumerate()
            .map(|(i, &(g, e))| verify_one(i, g, e, step))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(per_sample.into_iter().flatten().collect())
}

fn verify_one(sample: usize, g: MultiplexingGains, e: ChannelExponents, step: f64) -> Result<Vec<VerifyRow>> {
    let row = |e, comparison| VerifyRow {
        sample,
        gains: g,
        exponents: e,
        comparison,
    };
    let is_af = |c: &Comparison| matches!(c.family, Family::AfFd | Family::AfHd);
    let mut rows: Vec<_> = compare_tuple(g, e, step)?
        .into_iter()
        .filter(|c| !is_af(c))
        .map(|c| row(e, c))
        .collect();
    let unit = ChannelExponents::new(e.alpha, e.beta, 1.0)?;
    rows.extend(
        compare_tuple(g, unit, step)?
            .into_iter()
            .filter(is_af)
            .map(|c| row(unit, c)),
    );
    Ok(rows)
}
