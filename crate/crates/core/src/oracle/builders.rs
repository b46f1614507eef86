//! Exponent programs for each scheme, written directly from the outage events
//! of the underlying rate regions.
//!
//! A finite-SNR condition `log(1 + sum_i rho^{a_i - theta_i}) < r log(rho)`
//! becomes `max_i (a_i - theta_i)^+ <= r` at exponential order.

use crate::error::{invalid, Result};
use crate::model::{pos_part as p, ChannelExponents, MultiplexingGains};

use super::ExponentProgram;

/// Which transmitter/receiver pair a per-pair program refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pair {
    One,
    Two,
}

impl Pair {
    pub const BOTH: [Pair; 2] = [Pair::One, Pair::Two];

    /// Own and other multiplexing gain as seen from this pair.
    fn gains(self, g: MultiplexingGains) -> (f64, f64) {
        match self {
            Pair::One => (g.r1, g.r2),
            Pair::Two => (g.r2, g.r1),
        }
    }
}

fn box_cap(e: ChannelExponents) -> f64 {
    e.max_exponent().max(1.0) + 1.0
}

fn capped(prog: ExponentProgram, e: ChannelExponents) -> ExponentProgram {
    prog.theta_max(box_cap(e))
        .expect("cap is positive and finite")
}

fn max2(a: f64, b: f64) -> f64 {
    p(a.max(b))
}

fn max3(a: f64, b: f64, c: f64) -> f64 {
    p(a.max(b).max(c))
}

/// Cut-set component `k` in `1..=4`: `(1, gamma)` and `(1, beta)` cuts of
/// pair 1, then the same for pair 2.
pub fn build_cutset_program(
    k: u8,
    g: MultiplexingGains,
    e: ChannelExponents,
) -> Result<ExponentProgram> {
    let (names, r, a): ([&'static str; 2], f64, f64) = match k {
        1 => (["theta11", "theta13"], g.r1, e.gamma),
        2 => (["theta11", "theta31"], g.r1, e.beta),
        3 => (["theta22", "theta23"], g.r2, e.gamma),
        4 => (["theta22", "theta32"], g.r2, e.beta),
        _ => return Err(invalid("k", "cut-set component must be 1..=4")),
    };
    let prog =
        ExponentProgram::new(&names).event(move |t| p(1.0 - t[0]) <= r && p(a - t[1]) <= r);
    Ok(capped(prog, e))
}

/// Exponent of the CF compression noise seen through the relay link.
fn cf_noise(e: ChannelExponents, t31: f64, t32: f64) -> f64 {
    let lead = e.gamma - e.beta;
    p(lead + e.alpha + t31)
        .max(p(lead + 1.0 + t31))
        .max(p(lead + e.alpha + t32))
        .max(p(lead + 1.0 + t32))
}

/// CF component `k` in `1..=3`: individual-rate outage at receiver 1 and 2,
/// then the sum-rate outage.
///
/// The relay-destination exponents `theta31, theta32` are leading variables
/// so that ties resolve toward their smallest values.
pub fn build_cf_program(
    k: u8,
    g: MultiplexingGains,
    e: ChannelExponents,
) -> Result<ExponentProgram> {
    let (gamma, alpha) = (e.gamma, e.alpha);
    let s = g.sum();
    let prog = match k {
        1 | 2 => {
            let (names, r) = if k == 1 {
                (["theta31", "theta32", "theta11", "theta13"], g.r1)
            } else {
                (["theta31", "theta32", "theta22", "theta23"], g.r2)
            };
            ExponentProgram::new(&names).event(move |t| {
                p(1.0 - t[2]) <= r && p(gamma - t[3] - cf_noise(e, t[0], t[1])) <= r
            })
        }
        3 => ExponentProgram::new(&["theta31", "theta32", "theta11", "theta21", "theta13"])
            .event(move |t| {
                max3(
                    1.0 - t[2],
                    alpha - t[3],
                    gamma - t[4] - cf_noise(e, t[0], t[1]),
                ) <= s
            }),
        _ => return Err(invalid("k", "CF component must be 1..=3")),
    };
    Ok(capped(prog, e))
}

/// The three DF programs.
#[derive(Debug)]
pub struct DfPrograms {
    /// Relay fails to decode the message pair.
    pub relay: ExponentProgram,
    /// Destinations fail while the relay is silent.
    pub ic: ExponentProgram,
    /// Destinations fail while the relay forwards.
    pub coop: ExponentProgram,
}

/// DF programs. The destination programs carry the sum-rate event of
/// receiver 1 only; receiver 2's is its mirror image and has the same value.
pub fn build_df_programs(g: MultiplexingGains, e: ChannelExponents) -> DfPrograms {
    let MultiplexingGains { r1, r2 } = g;
    let s = g.sum();
    let ChannelExponents { alpha, beta, gamma } = e;

    let relay = ExponentProgram::new(&["theta13", "theta23"])
        .event(move |t| p(gamma - t[0]) <= r1)
        .event(move |t| p(gamma - t[1]) <= r2)
        .event(move |t| max2(gamma - t[0], gamma - t[1]) <= s);

    let ic = ExponentProgram::new(&["theta11", "theta22", "theta21"])
        .event(move |t| p(1.0 - t[0]) <= r1)
        .event(move |t| p(1.0 - t[1]) <= r2)
        .event(move |t| max2(1.0 - t[0], alpha - t[2]) <= s);

    let coop = ExponentProgram::new(&["theta11", "theta31", "theta22", "theta32", "theta21"])
        .event(move |t| max2(1.0 - t[0], beta - t[1]) <= r1)
        .event(move |t| max2(1.0 - t[2], beta - t[3]) <= r2)
        .event(move |t| max3(1.0 - t[0], alpha - t[4], beta - t[1]) <= s);

    DfPrograms {
        relay: capped(relay, e),
        ic: capped(ic, e),
        coop: capped(coop, e),
    }
}

fn require_unit_gamma(e: ChannelExponents) -> Result<()> {
    if e.gamma == 1.0 {
        Ok(())
    } else {
        Err(crate::Error::GammaUnsupported { gamma: e.gamma })
    }
}

/// Full-duplex AF programs of one pair.
#[derive(Debug)]
pub struct FdAfPrograms {
    /// Pre-decoding the interfering message fails.
    pub interference: ExponentProgram,
    /// Decoding the desired message from two blocks fails. Fading in the two
    /// blocks enters through separate variables.
    pub desired: ExponentProgram,
}

pub fn build_fd_af_programs(
    pair: Pair,
    g: MultiplexingGains,
    e: ChannelExponents,
) -> Result<FdAfPrograms> {
    require_unit_gamma(e)?;
    let (r, _) = pair.gains(g);
    let ChannelExponents { alpha, beta, .. } = e;
    let relay_gain = beta.max(1.0);
    let norm = 1.0f64.max(beta).max(2.0 * beta - 2.0);
    let (cross, desired): (&'static str, [&'static str; 5]) = match pair {
        Pair::One => (
            "theta12",
            ["theta11_b", "theta11_b1", "theta13", "theta31_b", "theta31_b1"],
        ),
        Pair::Two => (
            "theta21",
            ["theta22_b", "theta22_b1", "theta23", "theta32_b", "theta32_b1"],
        ),
    };
    let interference =
        ExponentProgram::new(&[cross]).event(move |t| p(alpha - t[0] - relay_gain) <= r);
    let desired = ExponentProgram::new(&desired).event(move |t| {
        max2(
            2.0 - norm - t[0] - t[1],
            2.0 * beta - 1.0 - norm - t[2] - t[3] - t[4],
        ) <= r
    });
    Ok(FdAfPrograms {
        interference: capped(interference, e),
        desired: capped(desired, e),
    })
}

/// Half-duplex AF programs of one pair, in units of a double-symbol (target
/// exponents are doubled).
#[derive(Debug)]
pub struct HdAfPrograms {
    /// The desired message alone is decoded wrongly.
    pub single: ExponentProgram,
    /// Both messages are decoded wrongly.
    pub joint: ExponentProgram,
}

pub fn build_hd_af_programs(
    pair: Pair,
    g: MultiplexingGains,
    e: ChannelExponents,
) -> Result<HdAfPrograms> {
    require_unit_gamma(e)?;
    let (r, _) = pair.gains(g);
    let s = g.sum();
    let ChannelExponents { alpha, beta, .. } = e;
    let (single_names, joint_names): ([&'static str; 3], [&'static str; 4]) = match pair {
        Pair::One => (
            ["theta11", "theta31", "theta13"],
            ["theta11", "theta21", "theta31", "theta13"],
        ),
        Pair::Two => (
            ["theta22", "theta32", "theta23"],
            ["theta22", "theta12", "theta32", "theta23"],
        ),
    };
    let (single, joint) = if beta <= 1.0 {
        (
            ExponentProgram::new(&single_names)
                .event(move |t| max2(beta - t[1] - t[2], 2.0 - 2.0 * t[0]) <= 2.0 * r),
            ExponentProgram::new(&joint_names).event(move |t| {
                max3(2.0 - 2.0 * t[0], 2.0 * alpha - 2.0 * t[1], beta - t[2] - t[3]) <= 2.0 * s
            }),
        )
    } else {
        (
            ExponentProgram::new(&single_names).event(move |t| {
                max2(1.0 - t[0], 1.0 - t[1] - t[2]) <= 2.0 * r
                    && max2(1.0 - t[1] - t[2], 3.0 - beta - 2.0 * t[0]) <= 2.0 * r
            }),
            ExponentProgram::new(&joint_names).event(move |t| {
                max3(
                    3.0 - beta - 2.0 * t[0],
                    2.0 * alpha + 1.0 - beta - 2.0 * t[1],
                    1.0 - t[2] - t[3],
                ) <= 2.0 * s
            }),
        )
    };
    Ok(HdAfPrograms {
        single: capped(single, e),
        joint: capped(joint, e),
    })
}
