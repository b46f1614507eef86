//! Diversity-multiplexing tradeoff (DMT) toolkit for the symmetric slow-fading
//! interference channel with a relay.
//!
//! Two transmitter/receiver pairs share a channel with one relay. Link gains
//! scale with the direct-link SNR `rho` as `rho^1` (direct), `rho^alpha`
//! (cross), `rho^beta` (relay to destination) and `rho^gamma` (source to
//! relay). The crate provides:
//!
//! * [`model`]: channel exponents, multiplexing gains, Rayleigh fading draws
//!   and the fading-to-exponent transform;
//! * [`formulas`]: closed-form DMT curves for the cut-set outer bound and the
//!   compress-, decode- and amplify-and-forward inner bounds;
//! * [`oracle`]: an independent lattice solver for the exponent programs the
//!   closed forms are derived from;
//! * [`rates`]: per-realization outage verdicts for each relaying scheme;
//! * [`sim`]: counter-based Monte Carlo outage estimation and slope fitting.
//!
//! The crate is `no_std` (with `alloc`) unless the `std` feature is enabled.
#![cfg_attr(not(feature = "std"), no_std)]
#![deny(missing_debug_implementations, rust_2018_idioms)]
// negated float comparisons are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
pub mod formulas;
pub mod model;
pub mod oracle;
pub mod rates;
pub mod sim;

pub use error::{Error, Result};
pub use model::{
    pos_part, ChannelExponents, DiversityValue, ExponentDraw, FadingDraw, MultiplexingGains,
    SnrPoint,
};
