//! CSV writers and the plain-text `dmt eval` report.
//!
//! Numbers are written through [`num`]: rounded to 12 significant digits
//! and printed with Rust's shortest round-trip formatting, which never uses
//! locale separators or exponent notation.

use std::fmt::Write as _;
use std::io::Write;

use icr_dmt_core::formulas::{self, DmtBreakdown, OptimalityReport};
use icr_dmt_core::sim::{OutagePoint, SlopeEstimate, SweepConfig};
use icr_dmt_core::{ChannelExponents, MultiplexingGains};

use crate::parallel::VerifyRow;
use crate::Result;

/// Slope checks pass within this distance of the closed form.
pub const SLOPE_TOLERANCE: f64 = 0.15;

pub const OUTAGE_HEADER: [&str; 12] = [
    "scheme", "alpha", "beta", "gamma", "r1", "r2", "snr_db", "trials", "events", "p_hat", "ci_low",
    "ci_high",
];
pub const SWEEP_HEADER: [&str; 6] = ["r", "d_cutset", "d_cf", "d_df", "d_af_fd", "d_af_hd"];
pub const VERIFY_HEADER: [&str; 13] = [
    "sample",
    "alpha",
    "beta",
    "gamma",
    "r1",
    "r2",
    "family",
    "label",
    "closed_form",
    "oracle",
    "deviation",
    "tolerance",
    "pass",
];
pub const SLOPE_HEADER: [&str; 12] = [
    "scheme",
    "alpha",
    "beta",
    "gamma",
    "r1",
    "r2",
    "d_hat",
    "stderr",
    "points_used",
    "d_closed_form",
    "deviation",
    "pass",
];

pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    // avoid "-0"
    (rounded + 0.0).to_string()
}

pub fn write_outage<W: Write>(w: W, cfg: &SweepConfig, points: &[OutagePoint]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(OUTAGE_HEADER)?;
    let (e, g) = (cfg.exponents, cfg.gains);
    for p in points {
        out.write_record([
            cfg.scheme.to_string(),
            num(e.alpha),
            num(e.beta),
            num(e.gamma),
            num(g.r1),
            num(g.r2),
            num(p.snr_db),
            p.trials.to_string(),
            p.events.to_string(),
            num(p.p_hat),
            num(p.ci_low),
            num(p.ci_high),
        ])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// One row of a symmetric-gain sweep. The AF entries are `None` unless
/// `gamma = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub r: f64,
    pub cutset: f64,
    pub cf: f64,
    pub df: f64,
    pub af_fd: Option<f64>,
    pub af_hd: Option<f64>,
}

/// `r = 0, step, 2 step, ...` up to 1 inclusive.
pub fn r_grid(step: f64) -> Vec<f64> {
    let n = (1.0 / step + 1e-9).floor() as usize;
    (0..=n).map(|k| (k as f64 * step * 1e9).round() / 1e9).collect()
}

pub fn dmt_sweep(e: ChannelExponents, r_step: f64) -> Vec<SweepRow> {
    r_grid(r_step)
        .into_iter()
        .map(|r| {
            let g = MultiplexingGains::symmetric(r).expect("grid values lie in [0, 1]");
            SweepRow {
                r,
                cutset: formulas::cutset_dmt(g, e).d(),
                cf: formulas::cf_dmt(g, e).d(),
                df: formulas::df_dmt(g, e).d(),
                af_fd: formulas::af_fd_dmt(g, e).ok().map(|b| b.d()),
                af_hd: formulas::af_hd_dmt(g, e).ok().map(|b| b.d()),
            }
        })
        .collect()
}

pub fn write_sweep<W: Write>(w: W, rows: &[SweepRow]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(SWEEP_HEADER)?;
    let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
    for r in rows {
        out.write_record([
            num(r.r),
            num(r.cutset),
            num(r.cf),
            num(r.df),
            opt(r.af_fd),
            opt(r.af_hd),
        ])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_verify<W: Write>(w: W, rows: &[VerifyRow]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(VERIFY_HEADER)?;
    for row in rows {
        let c = &row.comparison;
        let (e, g) = (row.exponents, row.gains);
        out.write_record([
            row.sample.to_string(),
            num(e.alpha),
            num(e.beta),
            num(e.gamma),
            num(g.r1),
            num(g.r2),
            c.family.to_string(),
            c.label.to_string(),
            num(c.closed_form),
            c.oracle.map(num).unwrap_or_default(),
            num(c.deviation()),
            num(c.tolerance),
            c.passes().to_string(),
        ])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Fitted slope next to the closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeSummary {
    pub estimate: SlopeEstimate,
    pub closed_form: f64,
}

impl SlopeSummary {
    pub fn deviation(&self) -> f64 {
        (self.estimate.d_hat - self.closed_form).abs()
    }

    pub fn passes(&self) -> bool {
        self.deviation() <= SLOPE_TOLERANCE
    }
}

pub fn write_slope<W: Write>(w: W, cfg: &SweepConfig, s: &SlopeSummary) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(SLOPE_HEADER)?;
    let (e, g) = (cfg.exponents, cfg.gains);
    out.write_record([
        cfg.scheme.to_string(),
        num(e.alpha),
        num(e.beta),
        num(e.gamma),
        num(g.r1),
        num(g.r2),
        num(s.estimate.d_hat),
        num(s.estimate.stderr),
        s.estimate.points_used.to_string(),
        num(s.closed_form),
        num(s.deviation()),
        if s.passes() { "pass" } else { "fail" }.to_string(),
    ])?;
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

fn breakdown_line(out: &mut String, name: &str, b: &DmtBreakdown) {
    let parts: Vec<_> = b
        .components
        .iter()
        .map(|c| format!("{}={}", c.label, num(c.value)))
        .collect();
    writeln!(out, "{name:<8}{:<8}{}", num(b.d()), parts.join(" ")).unwrap();
}

fn optimality_line(out: &mut String, name: &str, r: &OptimalityReport) {
    if r.holds {
        writeln!(out, "{name:<12}yes").unwrap();
    } else {
        writeln!(out, "{name:<12}no ({})", r.violated.join(", ")).unwrap();
    }
}

/// Human-readable breakdown of every scheme at one operating point.
pub fn eval_report(g: MultiplexingGains, e: ChannelExponents) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "alpha={} beta={} gamma={} r1={} r2={}\n",
        num(e.alpha),
        num(e.beta),
        num(e.gamma),
        num(g.r1),
        num(g.r2)
    )
    .unwrap();
    writeln!(s, "{:<8}{:<8}components", "scheme", "d").unwrap();
    breakdown_line(&mut s, "cutset", &formulas::cutset_dmt(g, e));
    breakdown_line(&mut s, "cf", &formulas::cf_dmt(g, e));
    breakdown_line(&mut s, "df", &formulas::df_dmt(g, e));
    for (name, b) in [("af-fd", formulas::af_fd_dmt(g, e)), ("af-hd", formulas::af_hd_dmt(g, e))] {
        match b {
            Ok(b) => breakdown_line(&mut s, name, &b),
            Err(err) => writeln!(s, "{name:<8}-       {err}").unwrap(),
        }
    }
    let dc = formulas::df_components(g, e);
    writeln!(
        s,
        "\ndf terms    relay={} ic={} coop={}",
        num(dc.relay),
        num(dc.ic),
        num(dc.coop)
    )
    .unwrap();
    writeln!(s, "ic bound    {}", num(formulas::ic_dmt(g, e).value())).unwrap();
    writeln!(s, "cf penalty  {}\n", num(formulas::cf_compression_penalty(e))).unwrap();
    optimality_line(&mut s, "cf optimal", &formulas::cf_optimality_holds(g, e));
    optimality_line(&mut s, "df optimal", &formulas::df_optimality_holds(g, e));
    s
}
