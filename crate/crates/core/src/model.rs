//! Channel model primitives shared by every scheme.

use core::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::error::{invalid, Result};

/// Exponent assigned to a coefficient whose squared magnitude is zero or
/// underflows. Every outage constraint saturates long before this value.
pub const THETA_CAP: f64 = 50.0;

/// `(x)^+ = max(x, 0)`.
#[inline]
pub fn pos_part(x: f64) -> f64 {
    debug_assert!(!x.is_nan(), "pos_part of NaN");
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// SNR scaling exponents of the cross, relay-destination and source-relay
/// links. The direct links scale as `rho^1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelExponents {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl ChannelExponents {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if !v.is_finite() || v < 0.0 {
                return Err(invalid(name, alloc::format!("{v} is not a finite non-negative exponent")));
            }
        }
        Ok(Self { alpha, beta, gamma })
    }

    /// Largest exponent in play, never below the direct-link exponent 1.
    pub fn max_exponent(&self) -> f64 {
        self.alpha.max(self.beta).max(self.gamma).max(1.0)
    }
}

impl fmt::Display for ChannelExponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha={} beta={} gamma={}", self.alpha, self.beta, self.gamma)
    }
}

/// Target multiplexing gains of the two pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplexingGains {
    pub r1: f64,
    pub r2: f64,
}

impl MultiplexingGains {
    pub fn new(r1: f64, r2: f64) -> Result<Self> {
        for (name, v) in [("r1", r1), ("r2", r2)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(invalid(name, alloc::format!("{v} outside [0, 1]")));
            }
        }
        Ok(Self { r1, r2 })
    }

    /// Equal gains `r1 = r2 = r`.
    pub fn symmetric(r: f64) -> Result<Self> {
        Self::new(r, r)
    }

    pub fn swapped(self) -> Self {
        Self {
            r1: self.r2,
            r2: self.r1,
        }
    }

    pub fn sum(&self) -> f64 {
        self.r1 + self.r2
    }

    pub fn is_zero(&self) -> bool {
        self.r1 == 0.0 && self.r2 == 0.0
    }
}

/// Linear direct-link SNR, strictly above one so that `ln(rho) > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrPoint {
    rho: f64,
}

impl SnrPoint {
    pub fn new(rho: f64) -> Result<Self> {
        if !rho.is_finite() || rho <= 1.0 {
            return Err(invalid("rho", alloc::format!("{rho} must be finite and > 1")));
        }
        Ok(Self { rho })
    }

    pub fn from_db(db: f64) -> Result<Self> {
        Self::new(libm::pow(10.0, db / 10.0))
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn ln_rho(&self) -> f64 {
        libm::log(self.rho)
    }

    pub fn log2_rho(&self) -> f64 {
        libm::log2(self.rho)
    }

    /// `rho^exponent`.
    pub fn pow(&self, exponent: f64) -> f64 {
        libm::exp(exponent * self.ln_rho())
    }
}

/// One realization of the eight normalized channel coefficients.
///
/// `hkl` is the gain from node `k` to node `l`; nodes 1 and 2 are the
/// sources (as transmitters) or destinations (as receivers), node 3 the relay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingDraw {
    pub h11: Complex64,
    pub h12: Complex64,
    pub h13: Complex64,
    pub h21: Complex64,
    pub h22: Complex64,
    pub h23: Complex64,
    pub h31: Complex64,
    pub h32: Complex64,
}

impl FadingDraw {
    /// All coefficients equal to `h`.
    pub fn uniform(h: Complex64) -> Self {
        Self {
            h11: h,
            h12: h,
            h13: h,
            h21: h,
            h22: h,
            h23: h,
            h31: h,
            h32: h,
        }
    }

    /// The same channel seen with the pair labels exchanged.
    pub fn mirrored(&self) -> Self {
        Self {
            h11: self.h22,
            h12: self.h21,
            h13: self.h23,
            h21: self.h12,
            h22: self.h11,
            h23: self.h13,
            h31: self.h32,
            h32: self.h31,
        }
    }
}

/// SNR exponents `theta_kl` defined by `|h_kl|^2 = rho^(-theta_kl)`, clamped to
/// `[0, THETA_CAP]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ExponentDraw {
    pub theta11: f64,
    pub theta12: f64,
    pub theta13: f64,
    pub theta21: f64,
    pub theta22: f64,
    pub theta23: f64,
    pub theta31: f64,
    pub theta32: f64,
}

impl ExponentDraw {
    /// Builds a draw, clamping every entry into `[0, THETA_CAP]`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        theta11: f64,
        theta12: f64,
        theta13: f64,
        theta21: f64,
        theta22: f64,
        theta23: f64,
        theta31: f64,
        theta32: f64,
    ) -> Self {
        let c = |t: f64| if t.is_nan() { THETA_CAP } else { t.clamp(0.0, THETA_CAP) };
        Self {
            theta11: c(theta11),
            theta12: c(theta12),
            theta13: c(theta13),
            theta21: c(theta21),
            theta22: c(theta22),
            theta23: c(theta23),
            theta31: c(theta31),
            theta32: c(theta32),
        }
    }

    /// The same exponents with the pair labels exchanged.
    pub fn mirrored(&self) -> Self {
        Self {
            theta11: self.theta22,
            theta12: self.theta21,
            theta13: self.theta23,
            theta21: self.theta12,
            theta22: self.theta11,
            theta23: self.theta13,
            theta31: self.theta32,
            theta32: self.theta31,
        }
    }
}

/// A diversity gain, always non-negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DiversityValue(f64);

impl DiversityValue {
    pub fn new(d: f64) -> Self {
        debug_assert!(d >= 0.0, "negative diversity {d}");
        Self(pos_part(d))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for DiversityValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

fn cn01<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

/// Draws eight i.i.d. `CN(0, 1)` coefficients.
pub fn draw_fading<R: Rng + ?Sized>(rng: &mut R) -> FadingDraw {
    FadingDraw {
        h11: cn01(rng),
        h12: cn01(rng),
        h13: cn01(rng),
        h21: cn01(rng),
        h22: cn01(rng),
        h23: cn01(rng),
        h31: cn01(rng),
        h32: cn01(rng),
    }
}

/// `theta = max(0, -ln|h|^2 / ln rho)`; zero gains map to [`THETA_CAP`].
pub fn gain_to_exponent(gain_sq: f64, snr: SnrPoint) -> f64 {
    if !(gain_sq > 0.0) {
        return THETA_CAP;
    }
    let theta = -libm::log(gain_sq) / snr.ln_rho();
    if theta.is_finite() {
        theta.clamp(0.0, THETA_CAP)
    } else {
        THETA_CAP
    }
}

pub fn fading_to_exponents(draw: &FadingDraw, snr: SnrPoint) -> ExponentDraw {
    let t = |h: Complex64| gain_to_exponent(h.norm_sqr(), snr);
    ExponentDraw {
        theta11: t(draw.h11),
        theta12: t(draw.h12),
        theta13: t(draw.h13),
        theta21: t(draw.h21),
        theta22: t(draw.h22),
        theta23: t(draw.h23),
        theta31: t(draw.h31),
        theta32: t(draw.h32),
    }
}

/// Samples the exponents directly from their induced law: `|h|^2 ~ Exp(1)`.
///
/// Statistically identical to [`fading_to_exponents`] applied to
/// [`draw_fading`], but never touches complex samples.
pub fn sample_exponents_direct<R: Rng + ?Sized>(rng: &mut R, snr: SnrPoint) -> ExponentDraw {
    let mut t = || {
        let g: f64 = Exp1.sample(rng);
        gain_to_exponent(g, snr)
    };
    ExponentDraw {
        theta11: t(),
        theta12: t(),
        theta13: t(),
        theta21: t(),
        theta22: t(),
        theta23: t(),
        theta31: t(),
        theta32: t(),
    }
}
