//! Lattice solver for SNR-exponent programs.
//!
//! An exponent program asks for the smallest `sum(theta)` over the region of
//! `theta`-space where a scheme is in outage. That minimum is the diversity
//! gain, so solving the programs numerically gives a check on every closed
//! form in [`crate::formulas`] that does not share any code with it.
//!
//! The outage region is a union of events. Each event is an intersection of
//! constraints of the form `f(theta) <= r` with `f` non-increasing in every
//! coordinate, which makes each event (and the union) upward closed: raising
//! any exponent (weakening a link) never leaves the outage region. The solver
//! relies on this to prune the lattice.

mod builders;
mod verify;

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{invalid, Error, Result};

pub use builders::{
    build_cf_program, build_cutset_program, build_df_programs, build_fd_af_programs,
    build_hd_af_programs, DfPrograms, FdAfPrograms, HdAfPrograms, Pair,
};
pub use verify::{compare_tuple, random_tuple, Comparison, Family};

/// Largest number of variables [`solve_grid`] accepts.
pub const MAX_DIM: usize = 5;
/// Cap used when a program does not set its own.
pub const DEFAULT_THETA_MAX: f64 = 6.0;

/// Upward-closed outage event over a `theta` vector.
pub type Event = Box<dyn Fn(&[f64]) -> bool + Send + Sync>;

/// `min sum(theta[objective])` subject to `theta` lying in the outage region.
pub struct ExponentProgram {
    var_names: Vec<&'static str>,
    objective: Vec<bool>,
    events: Vec<Event>,
    theta_max: f64,
}

impl fmt::Debug for ExponentProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExponentProgram")
            .field("var_names", &self.var_names)
            .field("objective", &self.objective)
            .field("events", &self.events.len())
            .field("theta_max", &self.theta_max)
            .finish()
    }
}

impl ExponentProgram {
    /// Program over `var_names` with every variable in the objective and no
    /// events yet (an empty outage region).
    pub fn new(var_names: &[&'static str]) -> Self {
        Self {
            var_names: var_names.to_vec(),
            objective: vec![true; var_names.len()],
            events: Vec::new(),
            theta_max: DEFAULT_THETA_MAX,
        }
    }

    /// Adds an event to the outage region (the region is the union of all events).
    pub fn event(mut self, ev: impl Fn(&[f64]) -> bool + Send + Sync + 'static) -> Self {
        self.events.push(Box::new(ev));
        self
    }

    pub fn theta_max(mut self, theta_max: f64) -> Result<Self> {
        if !(theta_max.is_finite() && theta_max > 0.0) {
            return Err(invalid("theta_max", "must be positive and finite"));
        }
        self.theta_max = theta_max;
        Ok(self)
    }

    /// Restricts the objective to the named variables. Variables left out are
    /// free and held at `theta_max` by the solver.
    pub fn objective(mut self, names: &[&str]) -> Result<Self> {
        let mut mask = vec![false; self.var_names.len()];
        for name in names {
            let i = self
                .var_names
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| invalid("objective", "names a variable the program does not have"))?;
            mask[i] = true;
        }
        self.objective = mask;
        Ok(self)
    }

    pub fn var_names(&self) -> &[&'static str] {
        &self.var_names
    }

    pub fn dim(&self) -> usize {
        self.var_names.len()
    }

    pub fn get_theta_max(&self) -> f64 {
        self.theta_max
    }

    pub fn in_outage(&self, theta: &[f64]) -> bool {
        self.events.iter().any(|ev| ev(theta))
    }
}

/// Result of a lattice search.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Minimal objective, `None` when no lattice point is in outage (the
    /// scheme then has unbounded diversity within the box).
    pub min_value: Option<f64>,
    /// Minimizing lattice point, empty when infeasible.
    pub argmin: Vec<f64>,
    pub grid_step: f64,
}

impl OracleResult {
    pub fn value_of(&self, name: &str, program: &ExponentProgram) -> Option<f64> {
        let i = program.var_names.iter().position(|v| *v == name)?;
        self.argmin.get(i).copied()
    }
}

/// Rejects lattice steps outside `(0, 0.1]`.
pub fn check_step(step: f64) -> Result<()> {
    if !(step > 0.0 && step <= 0.1) {
        return Err(Error::StepInvalid { step });
    }
    Ok(())
}

fn check_args(p: &ExponentProgram, step: f64) -> Result<()> {
    check_step(step)?;
    if p.dim() > MAX_DIM {
        return Err(Error::DimensionTooLarge {
            dim: p.dim(),
            max: MAX_DIM,
        });
    }
    Ok(())
}

struct Lattice {
    step: f64,
    theta_max: f64,
    top: usize,
}

impl Lattice {
    fn new(step: f64, theta_max: f64) -> Self {
        let top = libm::ceil(theta_max / step - 1e-9) as usize;
        Self {
            step,
            theta_max,
            top,
        }
    }

    fn value(&self, i: usize) -> f64 {
        (i as f64 * self.step).min(self.theta_max)
    }

    fn fill(&self, idx: &[usize], out: &mut [f64]) {
        for (o, &i) in out.iter_mut().zip(idx) {
            *o = self.value(i);
        }
    }
}

struct Search<'a> {
    event: &'a (dyn Fn(&[f64]) -> bool + Send + Sync),
    lat: &'a Lattice,
    free: &'a [usize],
    idx: Vec<usize>,
    buf: Vec<f64>,
    best: Option<(usize, Vec<usize>)>,
}

impl Search<'_> {
    fn feasible(&mut self) -> bool {
        self.lat.fill(&self.idx, &mut self.buf);
        (self.event)(&self.buf)
    }

    /// Smallest index of `var` that keeps the current point in outage.
    fn min_index(&mut self, var: usize) -> Option<usize> {
        let saved = self.idx[var];
        self.idx[var] = self.lat.top;
        if !self.feasible() {
            self.idx[var] = saved;
            return None;
        }
        let (mut lo, mut hi) = (0, self.lat.top);
        while lo < hi {
            let mid = (lo + hi) / 2;
            self.idx[var] = mid;
            if self.feasible() {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        self.idx[var] = saved;
        Some(hi)
    }

    /// Last variable: one probe at the largest index that would still beat
    /// the incumbent, then bisection below it.
    fn leaf(&mut self, var: usize, prefix: usize) {
        let cap = match &self.best {
            Some((b, _)) if *b <= prefix => return,
            Some((b, _)) => (b - prefix - 1).min(self.lat.top),
            None => self.lat.top,
        };
        self.idx[var] = cap;
        if self.feasible() {
            let (mut lo, mut hi) = (0, cap);
            while lo < hi {
                let mid = (lo + hi) / 2;
                self.idx[var] = mid;
                if self.feasible() {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            self.idx[var] = hi;
            self.best = Some((prefix + hi, self.idx.clone()));
        }
        self.idx[var] = self.lat.top;
    }

    // Variables free[level..] sit at the top of the lattice on entry and exit.
    fn dfs(&mut self, level: usize, prefix: usize) {
        if level + 1 == self.free.len() {
            self.leaf(self.free[level], prefix);
            return;
        }
        let n_rest = self.free.len() - level;
        let mut lbs = Vec::with_capacity(n_rest);
        for k in 0..n_rest {
            match self.min_index(self.free[level + k]) {
                Some(m) => lbs.push(m),
                None => return,
            }
        }
        let rest_lb: usize = lbs.iter().sum();
        if matches!(&self.best, Some((b, _)) if prefix + rest_lb >= *b) {
            return;
        }
        let var = self.free[level];
        let others_lb = rest_lb - lbs[0];
        for i in lbs[0]..=self.lat.top {
            if matches!(&self.best, Some((b, _)) if prefix + i + others_lb >= *b) {
                break;
            }
            self.idx[var] = i;
            self.dfs(level + 1, prefix + i);
        }
        self.idx[var] = self.lat.top;
    }
}

fn finish(
    p: &ExponentProgram,
    lat: &Lattice,
    best: Option<(usize, Vec<usize>)>,
) -> OracleResult {
    match best {
        None => OracleResult {
            min_value: None,
            argmin: Vec::new(),
            grid_step: lat.step,
        },
        Some((_, idx)) => {
            let mut argmin = vec![0.0; p.dim()];
            lat.fill(&idx, &mut argmin);
            let min_value = argmin
                .iter()
                .zip(&p.objective)
                .filter(|(_, &o)| o)
                .map(|(v, _)| *v)
                .sum();
            OracleResult {
                min_value: Some(min_value),
                argmin,
                grid_step: lat.step,
            }
        }
    }
}

/// Minimizes the program over the lattice `{0, step, ..., theta_max}^n`.
///
/// The result equals the minimum over every lattice point (see
/// [`solve_exhaustive`]) for upward-closed events. Each event is searched
/// depth-first in variable order; per-coordinate minima found by bisection
/// bound the remaining objective and cut every branch that cannot improve on
/// the incumbent. Ties keep the first point found, so the argmin is
/// deterministic and prefers small values of the leading variables.
pub fn solve_grid(p: &ExponentProgram, step: f64) -> Result<OracleResult> {
    check_args(p, step)?;
    let lat = Lattice::new(step, p.theta_max);
    let free: Vec<usize> = (0..p.dim()).filter(|&i| p.objective[i]).collect();
    let mut best: Option<(usize, Vec<usize>)> = None;
    for event in &p.events {
        let mut s = Search {
            event: event.as_ref(),
            lat: &lat,
            free: &free,
            idx: vec![lat.top; p.dim()],
            buf: vec![0.0; p.dim()],
            best: None,
        };
        if free.is_empty() {
            if s.feasible() {
                s.best = Some((0, s.idx.clone()));
            }
        } else {
            s.dfs(0, 0);
        }
        if let Some(found) = s.best {
            if best.as_ref().is_none_or(|b| found.0 < b.0) {
                best = Some(found);
            }
        }
    }
    Ok(finish(p, &lat, best))
}

/// Visits every lattice point. Only practical for small programs; kept as a
/// reference for [`solve_grid`].
pub fn solve_exhaustive(p: &ExponentProgram, step: f64) -> Result<OracleResult> {
    check_args(p, step)?;
    let lat = Lattice::new(step, p.theta_max);
    let n = p.dim();
    let mut idx = vec![0usize; n];
    for (i, o) in p.objective.iter().enumerate() {
        if !o {
            idx[i] = lat.top;
        }
    }
    let mut buf = vec![0.0; n];
    let mut best: Option<(usize, Vec<usize>)> = None;
    loop {
        lat.fill(&idx, &mut buf);
        if p.in_outage(&buf) {
            let sum: usize = (0..n).filter(|&i| p.objective[i]).map(|i| idx[i]).sum();
            if best.as_ref().is_none_or(|b| sum < b.0) {
                best = Some((sum, idx.clone()));
            }
        }
        // odometer over the objective variables, last variable fastest
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(finish(p, &lat, best));
            }
            k -= 1;
            if !p.objective[k] {
                continue;
            }
            if idx[k] < lat.top {
                idx[k] += 1;
                break;
            }
            idx[k] = 0;
        }
    }
}
