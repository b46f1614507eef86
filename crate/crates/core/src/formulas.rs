//! Closed-form DMT curves.
//!
//! Every function here is a pure function of the exponents and the
//! multiplexing gains, built from sums and minima of positive parts of affine
//! terms. The [`crate::oracle`] module re-derives each of them independently.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{pos_part as p, ChannelExponents, DiversityValue, MultiplexingGains};

/// One term inside the outer minimum of a DMT expression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Component {
    pub label: &'static str,
    pub value: f64,
}

/// A DMT value together with the terms it is the minimum of.
#[derive(Debug, Clone, PartialEq)]
pub struct DmtBreakdown {
    pub value: DiversityValue,
    pub components: Vec<Component>,
}

impl DmtBreakdown {
    fn from_components(components: Vec<Component>) -> Self {
        let d = components
            .iter()
            .map(|c| c.value)
            .fold(f64::INFINITY, f64::min);
        Self {
            value: DiversityValue::new(d),
            components,
        }
    }

    pub fn d(&self) -> f64 {
        self.value.value()
    }

    pub fn component(&self, label: &str) -> Option<f64> {
        self.components
            .iter()
            .find(|c| c.label == label)
            .map(|c| c.value)
    }
}

fn comps<const N: usize>(items: [(&'static str, f64); N]) -> Vec<Component> {
    items
        .into_iter()
        .map(|(label, value)| Component { label, value })
        .collect()
}

/// Sufficient-condition check for DMT optimality of an inner bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalityReport {
    pub holds: bool,
    pub violated: Vec<&'static str>,
}

impl OptimalityReport {
    fn from_checks(checks: &[(&'static str, bool)]) -> Self {
        let violated: Vec<_> = checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(id, _)| *id)
            .collect();
        Self {
            holds: violated.is_empty(),
            violated,
        }
    }
}

/// CF: the relay-destination links dominate both the source-relay and the
/// interference-limited links, `beta >= max(gamma + 1, gamma + alpha)`.
pub const CF_RELAY_LINK_DOMINANCE: &str = "cf.relay-link-dominance";
/// CF: joint decoding at the destinations does not limit the individual rates.
pub const CF_JOINT_DECODING_SLACK: &str = "cf.joint-decoding-slack";
/// DF: the relay can decode both messages, `r1 + r2 <= gamma`.
pub const DF_RELAY_SUM_RATE: &str = "df.relay-sum-rate";
/// DF: joint decoding at the relay does not limit the individual rates.
pub const DF_RELAY_JOINT_DECODING: &str = "df.relay-joint-decoding";
/// DF: with the relay in outage, joint decoding at the destinations is slack.
pub const DF_IC_JOINT_DECODING: &str = "df.ic-joint-decoding";
/// DF: with the relay decoding, joint decoding at the destinations is slack.
pub const DF_COOP_JOINT_DECODING: &str = "df.coop-joint-decoding";

/// Cut-set outer bound: minimum of the four single-pair cuts.
pub fn cutset_dmt(g: MultiplexingGains, e: ChannelExponents) -> DmtBreakdown {
    let MultiplexingGains { r1, r2 } = g;
    DmtBreakdown::from_components(comps([
        ("d1+", p(1.0 - r1) + p(e.gamma - r1)),
        ("d2+", p(1.0 - r1) + p(e.beta - r1)),
        ("d3+", p(1.0 - r2) + p(e.gamma - r2)),
        ("d4+", p(1.0 - r2) + p(e.beta - r2)),
    ]))
}

/// Exponent of the relay compression noise lost at the destinations.
///
/// Strong interference (`alpha > 1`) makes the interfering signal the
/// dominant term the relay has to describe.
pub fn cf_compression_penalty(e: ChannelExponents) -> f64 {
    if e.alpha > 1.0 {
        p(e.gamma + e.alpha - e.beta)
    } else {
        p(e.gamma + 1.0 - e.beta)
    }
}

/// Compress-and-forward inner bound.
pub fn cf_dmt(g: MultiplexingGains, e: ChannelExponents) -> DmtBreakdown {
    let MultiplexingGains { r1, r2 } = g;
    let s = r1 + r2;
    // gamma - penalty, written without cancellation
    let useful = e.gamma.min(e.beta - e.alpha.max(1.0));
    DmtBreakdown::from_components(comps([
        ("d1,CF", p(1.0 - r1) + p(useful - r1)),
        ("d2,CF", p(1.0 - r2) + p(useful - r2)),
        ("d3,CF", p(1.0 - s) + p(e.alpha - s) + p(useful - s)),
    ]))
}

pub fn cf_optimality_holds(g: MultiplexingGains, e: ChannelExponents) -> OptimalityReport {
    let MultiplexingGains { r1, r2 } = g;
    let s = r1 + r2;
    let dominance = e.beta >= (e.gamma + 1.0).max(e.gamma + e.alpha);
    let lhs = (p(1.0 - r1) + p(e.gamma - r1)).min(p(1.0 - r2) + p(e.gamma - r2));
    let rhs = p(1.0 - s) + p(e.alpha - s) + p(e.gamma - s);
    OptimalityReport::from_checks(&[
        (CF_RELAY_LINK_DOMINANCE, dominance),
        (CF_JOINT_DECODING_SLACK, lhs <= rhs),
    ])
}

/// Optimal DMT under the CF optimality conditions (evaluated regardless of
/// whether they hold).
pub fn cf_optimal_dmt(g: MultiplexingGains, e: ChannelExponents) -> DiversityValue {
    let MultiplexingGains { r1, r2 } = g;
    DiversityValue::new((p(1.0 - r1) + p(e.gamma - r1)).min(p(1.0 - r2) + p(e.gamma - r2)))
}

pub fn cf_max_diversity(e: ChannelExponents) -> DiversityValue {
    let slack = if e.alpha > 1.0 {
        p(e.beta - e.alpha)
    } else {
        p(e.beta - 1.0)
    };
    DiversityValue::new(1.0 + e.gamma.min(slack))
}

/// Cut-set DMT upper bound of a single relay channel.
///
/// The relay-destination term carries a positive part, as in the ICR cut-set
/// bound it descends from.
pub fn relay_dmt_upper(r: f64, beta: f64, gamma: f64) -> DiversityValue {
    DiversityValue::new((p(1.0 - r) + p(gamma - r)).min(p(1.0 - r) + p(beta - r)))
}

/// DMT of the interference channel without relay, both messages jointly
/// decoded at each receiver.
pub fn ic_dmt(g: MultiplexingGains, e: ChannelExponents) -> DiversityValue {
    let MultiplexingGains { r1, r2 } = g;
    let s = r1 + r2;
    DiversityValue::new(
        p(1.0 - r1)
            .min(p(1.0 - r2))
            .min(p(1.0 - s) + p(e.alpha - s)),
    )
}

/// The three outage exponents the DF scheme is assembled from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DfComponents {
    /// Relay fails to decode both messages.
    pub relay: f64,
    /// Destinations fail with a silent relay.
    pub ic: f64,
    /// Destinations fail although the relay forwards.
    pub coop: f64,
}

pub fn df_components(g: MultiplexingGains, e: ChannelExponents) -> DfComponents {
    let MultiplexingGains { r1, r2 } = g;
    let s = r1 + r2;
    DfComponents {
        relay: p(e.gamma - r1).min(p(e.gamma - r2)).min(2.0 * p(e.gamma - s)),
        ic: ic_dmt(g, e).value(),
        coop: (p(1.0 - r1) + p(e.beta - r1))
            .min(p(1.0 - r2) + p(e.beta - r2))
            .min(p(1.0 - s) + p(e.alpha - s) + p(e.beta - s)),
    }
}

/// Decode-and-forward inner bound.
///
/// Once `r1 + r2 >= gamma` the relay is in outage with probability one and
/// the channel falls back to the interference channel.
pub fn df_dmt(g: MultiplexingGains, e: ChannelExponents) -> DmtBreakdown {
    let c = df_components(g, e);
    if g.sum() < e.gamma {
        DmtBreakdown::from_components(comps([("ic+relay", c.ic + c.relay), ("coop", c.coop)]))
    } else {
        DmtBreakdown::from_components(comps([("ic", c.ic)]))
    }
}

pub fn df_optimality_holds(g: MultiplexingGains, e: ChannelExponents) -> OptimalityReport {
    let MultiplexingGains { r1, r2 } = g;
    let s = r1 + r2;
    let joint_ic = p(1.0 - s) + p(e.alpha - s);
    OptimalityReport::from_checks(&[
        (DF_RELAY_SUM_RATE, s <= e.gamma),
        (
            DF_RELAY_JOINT_DECODING,
            p(e.gamma - r1).max(p(e.gamma - r2)) <= 2.0 * p(e.gamma - s),
        ),
        (DF_IC_JOINT_DECODING, (1.0 - r1).max(1.0 - r2) <= joint_ic),
        (
            DF_COOP_JOINT_DECODING,
            ((1.0 - r1) + p(e.beta - r1)).max((1.0 - r2) + p(e.beta - r2))
                <= joint_ic + p(e.beta - s),
        ),
    ])
}

pub fn df_optimal_dmt(g: MultiplexingGains, e: ChannelExponents) -> DiversityValue {
    let MultiplexingGains { r1, r2 } = g;
    DiversityValue::new(
        (p(1.0 - r1) + p(e.gamma - r1))
            .min(p(1.0 - r2) + p(e.gamma - r2))
            .min(p(1.0 - r1) + p(e.beta - r1))
            .min(p(1.0 - r2) + p(e.beta - r2)),
    )
}

pub fn df_max_diversity(e: ChannelExponents) -> DiversityValue {
    DiversityValue::new((e.gamma + 1.0).min(e.beta + 1.0))
}

fn require_unit_gamma(e: ChannelExponents) -> Result<()> {
    if e.gamma == 1.0 {
        Ok(())
    } else {
        Err(Error::GammaUnsupported { gamma: e.gamma })
    }
}

/// Full-duplex AF: exponent of the outage for decoding the desired message
/// from two consecutive blocks once interference is removed.
pub fn af_fd_desired(r: f64, beta: f64) -> f64 {
    if beta < 1.0 {
        p(1.0 - r)
    } else if beta < 2.0 {
        p(2.0 - beta - r) + p(beta - 1.0 - r)
    } else {
        p(1.0 - r)
    }
}

/// Full-duplex AF: exponent of the outage for pre-decoding the interference.
pub fn af_fd_interference(r: f64, alpha: f64, beta: f64) -> f64 {
    p(alpha - beta.max(1.0) - r)
}

/// Full-duplex amplify-and-forward inner bound (requires `gamma = 1`).
pub fn af_fd_dmt(g: MultiplexingGains, e: ChannelExponents) -> Result<DmtBreakdown> {
    require_unit_gamma(e)?;
    let MultiplexingGains { r1, r2 } = g;
    Ok(DmtBreakdown::from_components(comps([
        ("desired1", af_fd_desired(r1, e.beta)),
        ("desired2", af_fd_desired(r2, e.beta)),
        ("interference1", af_fd_interference(r1, e.alpha, e.beta)),
        ("interference2", af_fd_interference(r2, e.alpha, e.beta)),
    ])))
}

/// Half-duplex AF: exponent of the single-message error event at one receiver.
pub fn af_hd_single(r: f64, beta: f64) -> f64 {
    if beta <= 1.0 {
        p(1.0 - r) + p(beta - 2.0 * r)
    } else {
        let tail = p(1.0 - 2.0 * r);
        (2.0 * tail).max(tail + p((3.0 - beta) / 2.0 - r))
    }
}

/// Half-duplex AF: exponent of the joint (both messages wrong) error event.
pub fn af_hd_joint(g: MultiplexingGains, e: ChannelExponents) -> f64 {
    let s = g.sum();
    if e.beta <= 1.0 {
        p(1.0 - s) + p(e.alpha - s) + p(e.beta - 2.0 * s)
    } else {
        p((3.0 - e.beta) / 2.0 - s) + p((2.0 * e.alpha + 1.0 - e.beta) / 2.0 - s) + p(1.0 - 2.0 * s)
    }
}

/// Half-duplex amplify-and-forward inner bound with joint decoding
/// (requires `gamma = 1`).
pub fn af_hd_dmt(g: MultiplexingGains, e: ChannelExponents) -> Result<DmtBreakdown> {
    require_unit_gamma(e)?;
    Ok(DmtBreakdown::from_components(comps([
        ("single1", af_hd_single(g.r1, e.beta)),
        ("single2", af_hd_single(g.r2, e.beta)),
        ("joint", af_hd_joint(g, e)),
    ])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(alpha: f64, beta: f64, gamma: f64) -> ChannelExponents {
        ChannelExponents::new(alpha, beta, gamma).unwrap()
    }

    fn gains(r1: f64, r2: f64) -> MultiplexingGains {
        MultiplexingGains::new(r1, r2).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn cutset_examples() {
        for alpha in [0.0, 0.5, 2.0, 3.0] {
            assert!(close(cutset_dmt(gains(0.0, 0.0), ex(alpha, 1.0, 1.0)).d(), 2.0));
        }
        assert!(close(cutset_dmt(gains(1.0, 1.0), ex(0.7, 1.0, 0.3)).d(), 0.0));
        let b = cutset_dmt(gains(0.5, 0.2), ex(1.0, 3.0, 1.0));
        assert!(close(b.d(), 1.0));
        assert_eq!(b.components.len(), 4);
        assert!(close(b.component("d1+").unwrap(), 1.0));
    }

    #[test]
    fn cf_examples() {
        let e = ex(2.0, 3.0, 1.0);
        assert!(close(cf_dmt(gains(0.0, 0.0), e).d(), 2.0));
        assert!(close(cf_dmt(gains(0.5, 0.5), e).d(), 1.0));
        assert!(close(cf_dmt(gains(1.0, 1.0), e).d(), 0.0));
    }

    #[test]
    fn cf_branch_boundary_is_value_neutral() {
        // alpha = 1 sits on the boundary; both penalty forms coincide there.
        for beta in [0.0, 0.5, 1.5, 2.0, 3.0] {
            for gamma in [0.2, 1.0, 1.7] {
                let e = ex(1.0, beta, gamma);
                assert_eq!(
                    cf_compression_penalty(e),
                    p(gamma + 1.0 - beta),
                    "beta={beta} gamma={gamma}"
                );
                assert_eq!(p(gamma + e.alpha - beta), p(gamma + 1.0 - beta));
            }
        }
    }

    #[test]
    fn cf_optimality_examples() {
        assert!(cf_optimality_holds(gains(0.2, 0.2), ex(2.0, 3.0, 1.0)).holds);
        let r = cf_optimality_holds(gains(0.3, 0.7), ex(2.0, 2.5, 1.0));
        assert!(!r.holds);
        assert_eq!(r.violated, [CF_RELAY_LINK_DOMINANCE]);
        let r = cf_optimality_holds(gains(0.45, 0.45), ex(0.5, 3.0, 1.0));
        assert!(!r.holds);
        assert_eq!(r.violated, [CF_JOINT_DECODING_SLACK]);
    }

    #[test]
    fn cf_optimal_and_max_examples() {
        assert!(close(cf_optimal_dmt(gains(0.0, 0.0), ex(1.0, 1.0, 1.0)).value(), 2.0));
        assert!(close(cf_optimal_dmt(gains(1.0, 1.0), ex(1.0, 1.0, 1.0)).value(), 0.0));
        assert!(close(cf_optimal_dmt(gains(0.5, 1.0), ex(1.0, 1.0, 1.5)).value(), 0.5));
        assert!(close(cf_max_diversity(ex(0.5, 2.0, 1.0)).value(), 2.0));
        assert!(close(cf_max_diversity(ex(1.0, 1.5, 1.0)).value(), 1.5));
        assert!(close(cf_max_diversity(ex(2.0, 3.0, 1.0)).value(), 2.0));
    }

    #[test]
    fn relay_upper_examples() {
        assert!(close(relay_dmt_upper(0.0, 1.0, 1.0).value(), 2.0));
        assert!(close(relay_dmt_upper(1.0, 0.4, 0.9).value(), 0.0));
        assert!(close(relay_dmt_upper(0.5, 2.0, 1.0).value(), 1.0));
        // beta below r: the positive part keeps the bound non-negative.
        assert!(close(relay_dmt_upper(0.6, 0.1, 1.0).value(), 0.4));
    }

    #[test]
    fn ic_examples() {
        assert!(close(ic_dmt(gains(0.0, 0.0), ex(2.0, 1.0, 1.0)).value(), 1.0));
        assert!(close(ic_dmt(gains(0.0, 0.0), ex(3.5, 1.0, 1.0)).value(), 1.0));
        assert!(close(ic_dmt(gains(1.0, 1.0), ex(2.0, 1.0, 1.0)).value(), 0.0));
        assert!(close(ic_dmt(gains(0.4, 0.4), ex(1.8, 1.0, 1.0)).value(), 0.6));
    }

    #[test]
    fn df_examples() {
        let c = df_components(gains(0.0, 0.0), ex(2.0, 1.0, 1.0));
        assert!(close(c.relay, 1.0));
        assert!(close(c.coop, 2.0));
        let c = df_components(gains(0.45, 0.45), ex(1.0, 1.0, 1.0));
        assert!(close(c.relay, 0.2));

        assert!(close(df_dmt(gains(0.4, 0.4), ex(1.8, 1.0, 1.0)).d(), 1.0));
        assert!(close(df_dmt(gains(0.0, 0.0), ex(2.0, 1.0, 1.0)).d(), 2.0));
        let b = df_dmt(gains(0.3, 0.3), ex(1.0, 1.0, 0.5));
        assert!(close(b.d(), 0.7));
        assert_eq!(b.components.len(), 1);
        assert_eq!(b.components[0].label, "ic");
    }

    #[test]
    fn df_optimality_examples() {
        assert!(df_optimality_holds(gains(0.2, 0.2), ex(2.0, 1.0, 1.0)).holds);
        assert!(!df_optimality_holds(gains(0.4, 0.4), ex(2.0, 1.0, 1.0)).holds);
        let r = df_optimality_holds(gains(0.3, 0.3), ex(2.0, 1.0, 0.4));
        assert!(r.violated.contains(&DF_RELAY_SUM_RATE));
    }

    #[test]
    fn df_optimal_and_max_examples() {
        assert!(close(df_optimal_dmt(gains(0.0, 0.0), ex(1.0, 1.0, 1.0)).value(), 2.0));
        let third = 1.0 / 3.0;
        assert!(close(df_optimal_dmt(gains(third, third), ex(1.0, 1.0, 1.0)).value(), 4.0 / 3.0));
        assert!(close(
            df_optimal_dmt(gains(third, third), ex(1.0, 1.0, 1.0)).value(),
            cutset_dmt(gains(third, third), ex(1.0, 1.0, 1.0)).d()
        ));
        assert!(close(df_optimal_dmt(gains(0.5, 0.0), ex(1.0, 2.0, 1.0)).value(), 1.0));
        assert!(close(df_max_diversity(ex(0.0, 1.0, 1.0)).value(), 2.0));
        assert!(close(df_max_diversity(ex(0.0, 0.2, 1.0)).value(), 1.2));
        assert!(close(df_max_diversity(ex(0.0, 3.0, 0.5)).value(), 1.5));
    }

    #[test]
    fn af_fd_examples() {
        assert!(close(af_fd_dmt(gains(0.0, 0.0), ex(2.0, 1.0, 1.0)).unwrap().d(), 1.0));
        for r in [0.0, 0.3, 1.0] {
            assert!(close(af_fd_dmt(gains(r, r), ex(1.0, 0.5, 1.0)).unwrap().d(), 0.0));
        }
        assert!(close(af_fd_dmt(gains(0.0, 0.0), ex(3.0, 2.0, 1.0)).unwrap().d(), 1.0));
        assert_eq!(
            af_fd_dmt(gains(0.0, 0.0), ex(3.0, 2.0, 0.9)),
            Err(Error::GammaUnsupported { gamma: 0.9 })
        );
    }

    #[test]
    fn af_hd_examples() {
        let e = ex(2.0, 1.0, 1.0);
        for k in 0..=100 {
            let r = k as f64 / 100.0;
            let d = af_hd_dmt(gains(r, r), e).unwrap().d();
            assert!(close(d, p(1.0 - r) + p(1.0 - 2.0 * r)), "r={r}");
        }
        assert!(close(af_hd_dmt(gains(0.0, 0.0), e).unwrap().d(), 2.0));
        assert!(close(af_hd_dmt(gains(0.4, 0.4), e).unwrap().d(), 0.8));
        assert!(close(af_hd_dmt(gains(0.0, 0.0), ex(2.0, 2.0, 1.0)).unwrap().d(), 2.0));
        assert!(close(af_hd_dmt(gains(0.45, 0.45), e).unwrap().d(), 0.65));
        assert!(af_hd_dmt(gains(0.0, 0.0), ex(2.0, 2.0, 2.0)).is_err());
    }

    #[test]
    fn af_branches_meet_at_boundaries() {
        for k in 0..=100 {
            let r = k as f64 / 100.0;
            let eps = 1e-12;
            assert!((af_fd_desired(r, 1.0) - af_fd_desired(r, 1.0 - eps)).abs() < 1e-9);
            assert!((af_fd_desired(r, 2.0) - af_fd_desired(r, 2.0 - eps)).abs() < 1e-9);
            assert!((af_hd_single(r, 1.0) - af_hd_single(r, 1.0 + eps)).abs() < 1e-9);
        }
    }
}
