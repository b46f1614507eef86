//! Side-by-side comparison of closed forms and lattice minima.

use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::error::Result;
use crate::formulas;
use crate::model::{ChannelExponents, MultiplexingGains};

use super::{
    build_cf_program, build_cutset_program, build_df_programs, build_fd_af_programs,
    build_hd_af_programs, solve_grid, ExponentProgram, Pair,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Cutset,
    Cf,
    Df,
    AfFd,
    AfHd,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Cutset => "cutset",
            Family::Cf => "cf",
            Family::Df => "df",
            Family::AfFd => "af_fd",
            Family::AfHd => "af_hd",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One closed-form value next to the lattice minimum of its program.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub family: Family,
    pub label: &'static str,
    pub closed_form: f64,
    /// `None` when the program has no feasible lattice point.
    pub oracle: Option<f64>,
    /// Number of program variables.
    pub dim: usize,
    /// `(dim + 1) * step`.
    pub tolerance: f64,
}

impl Comparison {
    pub fn deviation(&self) -> f64 {
        match self.oracle {
            Some(v) => (v - self.closed_form).abs(),
            None => f64::INFINITY,
        }
    }

    pub fn passes(&self) -> bool {
        self.deviation() <= self.tolerance
    }
}

/// A solved program: its dimension and lattice minimum.
#[derive(Clone, Copy)]
struct Solved {
    dim: usize,
    value: Option<f64>,
}

fn solve(prog: &ExponentProgram, step: f64) -> Result<Solved> {
    Ok(Solved {
        dim: prog.dim(),
        value: solve_grid(prog, step)?.min_value,
    })
}

struct Collector {
    step: f64,
    out: Vec<Comparison>,
}

impl Collector {
    /// Records `closed_form` against the smallest minimum among `parts`.
    fn push(&mut self, family: Family, label: &'static str, closed_form: Option<f64>, parts: &[Solved]) {
        let dim = parts.iter().map(|s| s.dim).max().unwrap_or(0);
        let oracle = parts
            .iter()
            .filter_map(|s| s.value)
            .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.min(v))));
        self.out.push(Comparison {
            family,
            label,
            closed_form: closed_form.unwrap_or(f64::NAN),
            oracle,
            dim,
            tolerance: (dim as f64 + 1.0) * self.step,
        });
    }
}

/// Compares every closed-form component applicable to `(g, e)` with its
/// program. The AF families are included only when `gamma = 1`.
pub fn compare_tuple(
    g: MultiplexingGains,
    e: ChannelExponents,
    step: f64,
) -> Result<Vec<Comparison>> {
    let mut c = Collector {
        step,
        out: Vec::new(),
    };

    let cut = formulas::cutset_dmt(g, e);
    for (k, label) in [(1u8, "d1+"), (2, "d2+"), (3, "d3+"), (4, "d4+")] {
        let s = solve(&build_cutset_program(k, g, e)?, step)?;
        c.push(Family::Cutset, label, cut.component(label), &[s]);
    }

    let cf = formulas::cf_dmt(g, e);
    for (k, label) in [(1u8, "d1,CF"), (2, "d2,CF"), (3, "d3,CF")] {
        let s = solve(&build_cf_program(k, g, e)?, step)?;
        c.push(Family::Cf, label, cf.component(label), &[s]);
    }

    let dc = formulas::df_components(g, e);
    let df = build_df_programs(g, e);
    c.push(Family::Df, "relay", Some(dc.relay), &[solve(&df.relay, step)?]);
    c.push(Family::Df, "ic", Some(dc.ic), &[solve(&df.ic, step)?]);
    c.push(Family::Df, "coop", Some(dc.coop), &[solve(&df.coop, step)?]);

    if e.gamma == 1.0 {
        let fd = formulas::af_fd_dmt(g, e)?;
        let mut parts = Vec::new();
        for (pair, (li, ld)) in Pair::BOTH
            .into_iter()
            .zip([("interference1", "desired1"), ("interference2", "desired2")])
        {
            let progs = build_fd_af_programs(pair, g, e)?;
            let si = solve(&progs.interference, step)?;
            let sd = solve(&progs.desired, step)?;
            c.push(Family::AfFd, li, fd.component(li), &[si]);
            c.push(Family::AfFd, ld, fd.component(ld), &[sd]);
            parts.extend([si, sd]);
        }
        c.push(Family::AfFd, "af_fd", Some(fd.d()), &parts);

        let hd = formulas::af_hd_dmt(g, e)?;
        let one = build_hd_af_programs(Pair::One, g, e)?;
        let two = build_hd_af_programs(Pair::Two, g, e)?;
        let single1 = solve(&one.single, step)?;
        let single2 = solve(&two.single, step)?;
        let joint1 = solve(&one.joint, step)?;
        let joint2 = solve(&two.joint, step)?;
        c.push(Family::AfHd, "single1", hd.component("single1"), &[single1]);
        c.push(Family::AfHd, "single2", hd.component("single2"), &[single2]);
        c.push(Family::AfHd, "joint", hd.component("joint"), &[joint1]);
        c.push(Family::AfHd, "joint@Rx2", hd.component("joint"), &[joint2]);
        c.push(Family::AfHd, "af_hd", Some(hd.d()), &[single1, single2, joint1, joint2]);
    }
    Ok(c.out)
}

/// Draws a verification tuple: `alpha` in `[0, 3]`, `beta` in `[0, 4]`,
/// `gamma` in `[0, 2]` (or exactly 1 when `unit_gamma`), gains in `[0, 1]`.
pub fn random_tuple<R: Rng + ?Sized>(
    rng: &mut R,
    unit_gamma: bool,
) -> (MultiplexingGains, ChannelExponents) {
    let alpha = rng.random_range(0.0..=3.0);
    let beta = rng.random_range(0.0..=4.0);
    let gamma = if unit_gamma {
        1.0
    } else {
        rng.random_range(0.0..=2.0)
    };
    let r1 = rng.random_range(0.0..=1.0);
    let r2 = rng.random_range(0.0..=1.0);
    (
        MultiplexingGains { r1, r2 },
        ChannelExponents { alpha, beta, gamma },
    )
}
