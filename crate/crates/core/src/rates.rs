//! Per-realization outage verdicts.
//!
//! CF and DF are judged with the exact finite-SNR mutual-information
//! expressions of their rate regions, evaluated in the log domain so that
//! `rho` up to `1e8` and exponents up to the clamp never overflow. Exponent
//! versions of the same tests (each log-sum replaced by its dominant
//! exponent) are provided for comparison. AF schemes exist only at exponent
//! level.
//!
//! Every test is of the form "outage iff target rate > bound", so a zero
//! target rate is never in outage.

use core::f64::consts::LN_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{
    gain_to_exponent, pos_part as p, ChannelExponents, ExponentDraw, FadingDraw,
    MultiplexingGains, SnrPoint,
};

/// Target rates in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetRates {
    pub rate1: f64,
    pub rate2: f64,
}

impl TargetRates {
    /// `R_k = r_k log2(rho)`.
    pub fn new(g: MultiplexingGains, snr: SnrPoint) -> Self {
        let l = snr.log2_rho();
        Self {
            rate1: g.r1 * l,
            rate2: g.r2 * l,
        }
    }

    pub fn swapped(self) -> Self {
        Self {
            rate1: self.rate2,
            rate2: self.rate1,
        }
    }

    fn ln1(&self) -> f64 {
        self.rate1 * LN_2
    }

    fn ln2(&self) -> f64 {
        self.rate2 * LN_2
    }

    fn ln_sum(&self) -> f64 {
        (self.rate1 + self.rate2) * LN_2
    }
}

/// Outcome for one realization. `binding` names the first constraint found
/// violated and is set exactly when `in_outage` is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutageVerdict {
    pub in_outage: bool,
    pub binding: Option<&'static str>,
}

impl OutageVerdict {
    pub const CLEAR: Self = Self {
        in_outage: false,
        binding: None,
    };

    pub fn outage(binding: &'static str) -> Self {
        Self {
            in_outage: true,
            binding: Some(binding),
        }
    }

    fn first(checks: &[(&'static str, bool)]) -> Self {
        checks
            .iter()
            .find(|(_, violated)| *violated)
            .map_or(Self::CLEAR, |(id, _)| Self::outage(id))
    }
}

/// `ln(sum_i exp(x_i))`, tolerating `-inf` entries.
fn ln_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + libm::log(xs.iter().map(|x| libm::exp(x - m)).sum::<f64>())
}

/// `ln(rho^a |h|^2)`.
fn ln_term(snr: SnrPoint, a: f64, h: Complex64) -> f64 {
    a * snr.ln_rho() + libm::log(h.norm_sqr())
}

/// `ln(1 + sum of terms)` given the terms' logs.
fn ln_one_plus(terms: &[f64]) -> f64 {
    let mut xs = [0.0; 8];
    xs[1..=terms.len()].copy_from_slice(terms);
    ln_sum_exp(&xs[..=terms.len()])
}

/// Variance of the CF quantization noise, kept as its exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompressionNoise {
    ln_n_q: f64,
}

impl CompressionNoise {
    /// Noise with exponential order `exponent` at `snr`.
    pub fn from_exponent(exponent: f64, snr: SnrPoint) -> Self {
        Self {
            ln_n_q: exponent * snr.ln_rho(),
        }
    }

    /// `N_Q` itself. May be `inf` for extreme exponents; use [`Self::ln_n_q`].
    pub fn n_q(&self) -> f64 {
        libm::exp(self.ln_n_q)
    }

    pub fn ln_n_q(&self) -> f64 {
        self.ln_n_q
    }

    /// `ln(1 + N_Q)`.
    fn ln_one_plus(&self) -> f64 {
        ln_one_plus(&[self.ln_n_q])
    }
}

/// Exponent of `N_Q`: the largest of `gamma + {alpha, 1} - beta + theta3k`.
pub fn nq_exponent(theta31: f64, theta32: f64, e: ChannelExponents) -> f64 {
    let lead = e.gamma - e.beta + e.alpha.max(1.0);
    lead + theta31.max(theta32)
}

/// Quantization noise the CF relay picks from its knowledge of the
/// relay-destination exponents.
pub fn nq_compress(x: &ExponentDraw, snr: SnrPoint, e: ChannelExponents) -> CompressionNoise {
    CompressionNoise::from_exponent(nq_exponent(x.theta31, x.theta32, e), snr)
}

/// CF bounds at receiver 1: individual rate, then sum rate. Natural logs.
fn cf_bounds_rx1(
    d: &FadingDraw,
    snr: SnrPoint,
    e: ChannelExponents,
    nq: CompressionNoise,
) -> (f64, f64) {
    let ln_q = nq.ln_one_plus();
    let direct = ln_term(snr, 1.0, d.h11);
    let relay1 = ln_term(snr, e.gamma, d.h13) - ln_q;
    let individual = ln_one_plus(&[direct, relay1]);

    let cross = ln_term(snr, e.alpha, d.h21);
    let relay2 = ln_term(snr, e.gamma, d.h23) - ln_q;
    // |rho^((g+a)/2) h13 h21* - rho^((g+1)/2) h23 h11*|^2, with rho^((g+1)/2) factored out
    let inner = Complex64::new(snr.pow((e.alpha - 1.0) / 2.0), 0.0) * d.h13 * d.h21.conj()
        - d.h23 * d.h11.conj();
    let det = ln_term(snr, e.gamma + 1.0, inner) - ln_q;
    let sum = ln_one_plus(&[direct, cross, relay1, relay2, det]);
    (individual, sum)
}

/// Compress-and-forward verdict at finite SNR with `N_Q` from
/// [`nq_compress`].
pub fn cf_outage(
    d: &FadingDraw,
    snr: SnrPoint,
    e: ChannelExponents,
    t: TargetRates,
) -> OutageVerdict {
    let t31 = gain_to_exponent(d.h31.norm_sqr(), snr);
    let t32 = gain_to_exponent(d.h32.norm_sqr(), snr);
    let nq = CompressionNoise::from_exponent(nq_exponent(t31, t32, e), snr);
    cf_outage_with_noise(d, snr, e, t, nq)
}

/// [`cf_outage`] with an explicit quantization noise.
pub fn cf_outage_with_noise(
    d: &FadingDraw,
    snr: SnrPoint,
    e: ChannelExponents,
    t: TargetRates,
    nq: CompressionNoise,
) -> OutageVerdict {
    let (i1, s1) = cf_bounds_rx1(d, snr, e, nq);
    let (i2, s2) = cf_bounds_rx1(&d.mirrored(), snr, e, nq);
    OutageVerdict::first(&[
        ("R1", t.ln1() > i1),
        ("R2", t.ln2() > i2),
        ("R1+R2@Rx1", t.ln_sum() > s1),
        ("R1+R2@Rx2", t.ln_sum() > s2),
    ])
}

/// Exponent-level CF verdict.
pub fn cf_outage_exponent(
    x: &ExponentDraw,
    e: ChannelExponents,
    g: MultiplexingGains,
) -> OutageVerdict {
    let q = p(nq_exponent(x.theta31, x.theta32, e));
    let rx1 = |x: &ExponentDraw| {
        let relay1 = e.gamma - x.theta13 - q;
        let individual = p((1.0 - x.theta11).max(relay1));
        let det = (e.gamma + e.alpha - x.theta13 - x.theta21)
            .max(e.gamma + 1.0 - x.theta23 - x.theta11)
            - q;
        let sum = p((1.0 - x.theta11)
            .max(e.alpha - x.theta21)
            .max(relay1)
            .max(e.gamma - x.theta23 - q)
            .max(det));
        (individual, sum)
    };
    let (i1, s1) = rx1(x);
    let (i2, s2) = rx1(&x.mirrored());
    let s = g.sum();
    OutageVerdict::first(&[
        ("R1", g.r1 > i1),
        ("R2", g.r2 > i2),
        ("R1+R2@Rx1", s > s1),
        ("R1+R2@Rx2", s > s2),
    ])
}

/// Decode-and-forward verdict at finite SNR.
///
/// The relay first tries to decode both messages. If it fails it stays
/// silent and the destinations see the plain interference channel;
/// otherwise they see the cooperative region.
pub fn df_outage(
    d: &FadingDraw,
    snr: SnrPoint,
    e: ChannelExponents,
    t: TargetRates,
) -> OutageVerdict {
    let h13 = ln_term(snr, e.gamma, d.h13);
    let h23 = ln_term(snr, e.gamma, d.h23);
    let relay_fails = t.ln1() > ln_one_plus(&[h13])
        || t.ln2() > ln_one_plus(&[h23])
        || t.ln_sum() > ln_one_plus(&[h13, h23]);

    let d11 = ln_term(snr, 1.0, d.h11);
    let d22 = ln_term(snr, 1.0, d.h22);
    let c21 = ln_term(snr, e.alpha, d.h21);
    let c12 = ln_term(snr, e.alpha, d.h12);
    if relay_fails {
        OutageVerdict::first(&[
            ("ic:R1", t.ln1() > ln_one_plus(&[d11])),
            ("ic:R2", t.ln2() > ln_one_plus(&[d22])),
            ("ic:R1+R2@Rx1", t.ln_sum() > ln_one_plus(&[d11, c21])),
            ("ic:R1+R2@Rx2", t.ln_sum() > ln_one_plus(&[d22, c12])),
        ])
    } else {
        let r31 = ln_term(snr, e.beta, d.h31);
        let r32 = ln_term(snr, e.beta, d.h32);
        OutageVerdict::first(&[
            ("coop:R1", t.ln1() > ln_one_plus(&[d11, r31])),
            ("coop:R2", t.ln2() > ln_one_plus(&[d22, r32])),
            ("coop:R1+R2@Rx1", t.ln_sum() > ln_one_plus(&[d11, c21, r31])),
            ("coop:R1+R2@Rx2", t.ln_sum() > ln_one_plus(&[d22, c12, r32])),
        ])
    }
}

/// Exponent-level DF verdict.
pub fn df_outage_exponent(
    x: &ExponentDraw,
    e: ChannelExponents,
    g: MultiplexingGains,
) -> OutageVerdict {
    let MultiplexingGains { r1, r2 } = g;
    let s = g.sum();
    let ChannelExponents { alpha, beta, gamma } = e;
    let m2 = |a: f64, b: f64| p(a.max(b));
    let m3 = |a: f64, b: f64, c: f64| p(a.max(b).max(c));
    let relay_fails = r1 > p(gamma - x.theta13)
        || r2 > p(gamma - x.theta23)
        || s > m2(gamma - x.theta13, gamma - x.theta23);
    if relay_fails {
        OutageVerdict::first(&[
            ("ic:R1", r1 > p(1.0 - x.theta11)),
            ("ic:R2", r2 > p(1.0 - x.theta22)),
            ("ic:R1+R2@Rx1", s > m2(1.0 - x.theta11, alpha - x.theta21)),
            ("ic:R1+R2@Rx2", s > m2(1.0 - x.theta22, alpha - x.theta12)),
        ])
    } else {
        OutageVerdict::first(&[
            ("coop:R1", r1 > m2(1.0 - x.theta11, beta - x.theta31)),
            ("coop:R2", r2 > m2(1.0 - x.theta22, beta - x.theta32)),
            (
                "coop:R1+R2@Rx1",
                s > m3(1.0 - x.theta11, alpha - x.theta21, beta - x.theta31),
            ),
            (
                "coop:R1+R2@Rx2",
                s > m3(1.0 - x.theta22, alpha - x.theta12, beta - x.theta32),
            ),
        ])
    }
}

fn require_unit_gamma(e: ChannelExponents) -> Result<()> {
    if e.gamma == 1.0 {
        Ok(())
    } else {
        Err(Error::GammaUnsupported { gamma: e.gamma })
    }
}

/// Full-duplex AF verdict for pair 1 only, from the draws of blocks `b` and
/// `b + 1`. The relay coefficient is taken from block `b`.
pub fn fd_af_pair1_outage(
    x_b: &ExponentDraw,
    x_b1: &ExponentDraw,
    e: ChannelExponents,
    r1: f64,
) -> Result<OutageVerdict> {
    require_unit_gamma(e)?;
    let ChannelExponents { alpha, beta, .. } = e;
    let norm = 1.0f64.max(beta).max(2.0 * beta - 2.0);
    let interference = p(alpha - x_b.theta12 - beta.max(1.0));
    let desired = p((2.0 - norm - x_b.theta11 - x_b1.theta11)
        .max(2.0 * beta - 1.0 - norm - x_b.theta13 - x_b.theta31 - x_b1.theta31));
    Ok(if r1 > interference {
        OutageVerdict::outage("interference1")
    } else if r1 > desired {
        OutageVerdict::outage("desired1")
    } else {
        OutageVerdict::CLEAR
    })
}

/// Full-duplex AF verdict: outage when either pair is in outage.
pub fn fd_af_outage(
    x_b: &ExponentDraw,
    x_b1: &ExponentDraw,
    e: ChannelExponents,
    g: MultiplexingGains,
) -> Result<OutageVerdict> {
    let one = fd_af_pair1_outage(x_b, x_b1, e, g.r1)?;
    if one.in_outage {
        return Ok(one);
    }
    let two = fd_af_pair1_outage(&x_b.mirrored(), &x_b1.mirrored(), e, g.r2)?;
    Ok(match two.binding {
        Some("interference1") => OutageVerdict::outage("interference2"),
        Some(_) => OutageVerdict::outage("desired2"),
        None => OutageVerdict::CLEAR,
    })
}

/// Half-duplex AF verdict for pair 1: the single-message event or the joint
/// event fires. Target exponents are per double-symbol, hence doubled.
pub fn hd_af_pair1_outage(
    x: &ExponentDraw,
    e: ChannelExponents,
    g: MultiplexingGains,
) -> Result<OutageVerdict> {
    require_unit_gamma(e)?;
    let ChannelExponents { alpha, beta, .. } = e;
    let (two_r, two_s) = (2.0 * g.r1, 2.0 * g.sum());
    let relay_path = 1.0 - x.theta31 - x.theta13;
    let (single, joint) = if beta <= 1.0 {
        (
            two_r > p((beta - x.theta31 - x.theta13).max(2.0 - 2.0 * x.theta11)),
            two_s
                > p((2.0 - 2.0 * x.theta11)
                    .max(2.0 * alpha - 2.0 * x.theta21)
                    .max(beta - x.theta31 - x.theta13)),
        )
    } else {
        (
            two_r > p((1.0 - x.theta11).max(relay_path))
                && two_r > p(relay_path.max(3.0 - beta - 2.0 * x.theta11)),
            two_s
                > p((3.0 - beta - 2.0 * x.theta11)
                    .max(2.0 * alpha + 1.0 - beta - 2.0 * x.theta21)
                    .max(relay_path)),
        )
    };
    Ok(OutageVerdict::first(&[("single1", single), ("joint1", joint)]))
}

/// Half-duplex AF verdict: outage when either pair is in outage.
pub fn hd_af_outage(
    x: &ExponentDraw,
    e: ChannelExponents,
    g: MultiplexingGains,
) -> Result<OutageVerdict> {
    let one = hd_af_pair1_outage(x, e, g)?;
    if one.in_outage {
        return Ok(one);
    }
    let two = hd_af_pair1_outage(&x.mirrored(), e, g.swapped())?;
    Ok(match two.binding {
        Some("single1") => OutageVerdict::outage("single2"),
        Some(_) => OutageVerdict::outage("joint2"),
        None => OutageVerdict::CLEAR,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{draw_fading, fading_to_exponents};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ex(alpha: f64, beta: f64, gamma: f64) -> ChannelExponents {
        ChannelExponents::new(alpha, beta, gamma).unwrap()
    }

    fn gains(r1: f64, r2: f64) -> MultiplexingGains {
        MultiplexingGains::new(r1, r2).unwrap()
    }

    fn snr(rho: f64) -> SnrPoint {
        SnrPoint::new(rho).unwrap()
    }

    #[test]
    fn nq_examples() {
        let zero = ExponentDraw::default();
        for rho in [10.0, 1e3, 1e8] {
            let n = nq_compress(&zero, snr(rho), ex(2.0, 3.0, 1.0));
            assert!((n.n_q() - 1.0).abs() < 1e-12);
        }
        let n = nq_compress(&zero, snr(100.0), ex(1.0, 1.0, 1.0));
        assert!((n.n_q() - 100.0).abs() < 1e-9);
        let x = ExponentDraw::new(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.7, 0.7);
        let mut last = f64::INFINITY;
        for beta in [1.0, 5.0, 20.0, 80.0] {
            let n = nq_compress(&x, snr(100.0), ex(1.0, beta, 1.0)).n_q();
            assert!(n >= 0.0 && n < last);
            last = n;
        }
        assert!(last < 1e-100);
        // huge exponents stay finite in the log domain
        let x = ExponentDraw::new(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 50.0, 50.0);
        let n = nq_compress(&x, snr(1e8), ex(1.0, 0.0, 1.0));
        assert!(n.ln_n_q().is_finite());
    }

    #[test]
    fn cf_examples() {
        let big = FadingDraw::uniform(Complex64::new(1e3, 0.0));
        let e = ex(2.0, 3.0, 1.0);
        let s = snr(1e4);
        assert_eq!(cf_outage(&big, s, e, TargetRates::new(gains(0.0, 0.0), s)), OutageVerdict::CLEAR);

        let mut d = FadingDraw::uniform(Complex64::new(1.0, 0.0));
        d.h13 = Complex64::new(0.0, 0.0);
        d.h23 = Complex64::new(0.0, 0.0);
        // rho^r1 > 1 + rho |h11|^2 with |h11|^2 = 1 needs r1 slightly above 1
        let t = TargetRates {
            rate1: libm::log2(2.0 * 1e4 + 5.0),
            rate2: 0.0,
        };
        let v = cf_outage(&d, s, e, t);
        assert!(v.in_outage);
        assert_eq!(v.binding, Some("R1"));
    }

    #[test]
    fn df_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let e = ex(1.0, 1.0, 1.0);
        let s = snr(1e3);
        for _ in 0..2000 {
            let d = draw_fading(&mut rng);
            assert!(!df_outage(&d, s, e, TargetRates::new(gains(0.0, 0.0), s)).in_outage);
        }
        // a dead relay input forces the IC branch
        let mut d = draw_fading(&mut rng);
        d.h13 = Complex64::new(0.0, 0.0);
        d.h23 = Complex64::new(0.0, 0.0);
        d.h11 = Complex64::new(1e-3, 0.0);
        let v = df_outage(&d, s, e, TargetRates::new(gains(0.3, 0.3), s));
        assert_eq!(v.binding, Some("ic:R1"));
    }

    #[test]
    fn df_branch_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let e = ex(1.2, 0.8, 1.0);
        let s = snr(1e4);
        let t = TargetRates::new(gains(0.3, 0.2), s);
        for _ in 0..5000 {
            let mut d = draw_fading(&mut rng);
            let v = df_outage(&d, s, e, t);
            if let Some(b) = v.binding {
                assert!(b.starts_with("ic:") || b.starts_with("coop:"));
            }
            d.h13 = Complex64::new(0.0, 0.0);
            d.h23 = Complex64::new(0.0, 0.0);
            let v = df_outage(&d, s, e, t);
            assert!(v.binding.is_none_or(|b| b.starts_with("ic:")));
        }
    }

    #[test]
    fn fd_af_examples() {
        let zero = ExponentDraw::default();
        let v = fd_af_outage(&zero, &zero, ex(2.0, 1.0, 1.0), gains(0.5, 0.5)).unwrap();
        assert!(!v.in_outage);
        let mut x = zero;
        x.theta12 = 2.0;
        let v = fd_af_outage(&x, &zero, ex(2.0, 1.0, 1.0), gains(0.01, 0.0)).unwrap();
        assert_eq!(v.binding, Some("interference1"));
        assert!(fd_af_outage(&zero, &zero, ex(2.0, 1.0, 0.9), gains(0.1, 0.1)).is_err());
    }

    #[test]
    fn hd_af_examples() {
        let zero = ExponentDraw::default();
        let e = ex(2.0, 1.0, 1.0);
        assert!(!hd_af_outage(&zero, e, gains(0.4, 0.4)).unwrap().in_outage);
        let mut x = zero;
        x.theta11 = 1.0;
        x.theta31 = 0.4;
        x.theta13 = 0.6;
        let v = hd_af_outage(&x, e, gains(0.3, 0.0)).unwrap();
        assert_eq!(v.binding, Some("single1"));
        assert!(hd_af_outage(&zero, ex(2.0, 1.0, 2.0), gains(0.1, 0.1)).is_err());
    }

    fn random_exponents(rng: &mut ChaCha8Rng) -> ExponentDraw {
        let mut t = || rng.random_range(0.0..3.0);
        ExponentDraw::new(t(), t(), t(), t(), t(), t(), t(), t())
    }

    #[test]
    fn zero_rate_never_in_outage() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let g = gains(0.0, 0.0);
        for _ in 0..2000 {
            let e = ex(rng.random_range(0.0..3.0), rng.random_range(0.0..4.0), 1.0);
            let s = snr(libm::pow(10.0, rng.random_range(0.5..8.0)));
            let d = draw_fading(&mut rng);
            let t = TargetRates::new(g, s);
            let x = random_exponents(&mut rng);
            assert!(!cf_outage(&d, s, e, t).in_outage);
            assert!(!df_outage(&d, s, e, t).in_outage);
            assert!(!cf_outage_exponent(&x, e, g).in_outage);
            assert!(!df_outage_exponent(&x, e, g).in_outage);
            assert!(!fd_af_outage(&x, &x, e, g).unwrap().in_outage);
            assert!(!hd_af_outage(&x, e, g).unwrap().in_outage);
        }
    }

    // Lowering one exponent of an in-the-clear draw must keep it clear.
    #[test]
    fn exponent_verdicts_monotone_in_channel_quality() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..20_000 {
            let e = ex(rng.random_range(0.0..3.0), rng.random_range(0.0..4.0), 1.0);
            let g = gains(rng.random_range(0.0..1.0), rng.random_range(0.0..1.0));
            let x = random_exponents(&mut rng);
            let y = random_exponents(&mut rng);
            let mut better = x;
            let field = rng.random_range(0..8);
            let slots = [
                &mut better.theta11,
                &mut better.theta12,
                &mut better.theta13,
                &mut better.theta21,
                &mut better.theta22,
                &mut better.theta23,
                &mut better.theta31,
                &mut better.theta32,
            ];
            let v = slots.into_iter().nth(field).unwrap();
            *v *= rng.random_range(0.0..1.0);
            let checks = [
                (cf_outage_exponent(&x, e, g), cf_outage_exponent(&better, e, g)),
                (df_outage_exponent(&x, e, g), df_outage_exponent(&better, e, g)),
                (fd_af_outage(&x, &y, e, g).unwrap(), fd_af_outage(&better, &y, e, g).unwrap()),
                (hd_af_outage(&x, e, g).unwrap(), hd_af_outage(&better, e, g).unwrap()),
            ];
            for (before, after) in checks {
                assert!(before.in_outage || !after.in_outage);
            }
        }
    }

    #[test]
    fn df_monotone_in_gain_magnitudes() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let s = snr(1e3);
        for _ in 0..20_000 {
            let e = ex(rng.random_range(0.0..3.0), rng.random_range(0.0..4.0), rng.random_range(0.0..2.0));
            let t = TargetRates::new(gains(rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)), s);
            let d = draw_fading(&mut rng);
            let mut better = d;
            let c = 1.0 + rng.random_range(0.0..3.0);
            match rng.random_range(0..8) {
                0 => better.h11 *= c,
                1 => better.h12 *= c,
                2 => better.h13 *= c,
                3 => better.h21 *= c,
                4 => better.h22 *= c,
                5 => better.h23 *= c,
                6 => better.h31 *= c,
                _ => better.h32 *= c,
            }
            let before = df_outage(&d, s, e, t);
            let after = df_outage(&better, s, e, t);
            assert!(before.in_outage || !after.in_outage);
        }
    }

    #[test]
    fn cf_region_shrinks_as_noise_grows() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let s = snr(1e4);
        for _ in 0..20_000 {
            let e = ex(rng.random_range(0.0..3.0), rng.random_range(0.0..4.0), rng.random_range(0.0..2.0));
            let t = TargetRates::new(gains(rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)), s);
            let d = draw_fading(&mut rng);
            let q = rng.random_range(-2.0..4.0);
            let low = CompressionNoise::from_exponent(q, s);
            let high = CompressionNoise::from_exponent(q + rng.random_range(0.0..2.0), s);
            let a = cf_outage_with_noise(&d, s, e, t, low);
            let b = cf_outage_with_noise(&d, s, e, t, high);
            assert!(!a.in_outage || b.in_outage);
        }
    }

    // The CF sum-rate bound is a log-determinant: strengthening one
    // coefficient can lower it when the off-diagonal product dominates.
    #[test]
    fn cf_sum_bound_is_not_monotone_in_a_single_gain() {
        let s = snr(10.0);
        let e = ex(1.0, 1.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let mut d = FadingDraw::uniform(one);
        d.h21 = Complex64::new(10.0, 0.0);
        let q = CompressionNoise::from_exponent(f64::NEG_INFINITY, s);
        let (_, before) = cf_bounds_rx1(&d, s, e, q);
        d.h11 = Complex64::new(1.1, 0.0);
        let (_, after) = cf_bounds_rx1(&d, s, e, q);
        assert!(after < before);
    }

    fn disagreement(scheme: &str, e: ChannelExponents, g: MultiplexingGains, n: u32) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let s = snr(1e6);
        let t = TargetRates::new(g, s);
        let mut bad = 0u32;
        for _ in 0..n {
            let d = draw_fading(&mut rng);
            let x = fading_to_exponents(&d, s);
            let (exact, approx) = match scheme {
                "cf" => (cf_outage(&d, s, e, t), cf_outage_exponent(&x, e, g)),
                _ => (df_outage(&d, s, e, t), df_outage_exponent(&x, e, g)),
            };
            bad += (exact.in_outage != approx.in_outage) as u32;
        }
        f64::from(bad) / f64::from(n)
    }

    #[test]
    fn exponent_and_finite_verdicts_mostly_agree() {
        let rate = disagreement("cf", ex(2.0, 3.0, 1.0), gains(0.5, 0.5), 100_000);
        assert!(rate < 0.02, "cf {rate}");
        let rate = disagreement("df", ex(1.0, 1.0, 1.0), gains(0.45, 0.45), 100_000);
        assert!(rate < 0.02, "df {rate}");
    }
}
