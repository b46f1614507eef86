//! Named exponent triples for the published figure panels. Every panel
//! uses `r1 = r2 = r`.

use std::fmt;
use std::str::FromStr;

use icr_dmt_core::ChannelExponents;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Fig2a,
    Fig2b,
    Fig2c,
    Fig3a,
    Fig3b,
    Fig3c,
    Fig3d,
    Fig4a,
    Fig4b,
    Fig4c,
    Fig4d,
}

impl Preset {
    pub const ALL: [Preset; 11] = [
        Preset::Fig2a,
        Preset::Fig2b,
        Preset::Fig2c,
        Preset::Fig3a,
        Preset::Fig3b,
        Preset::Fig3c,
        Preset::Fig3d,
        Preset::Fig4a,
        Preset::Fig4b,
        Preset::Fig4c,
        Preset::Fig4d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2a => "fig2a",
            Preset::Fig2b => "fig2b",
            Preset::Fig2c => "fig2c",
            Preset::Fig3a => "fig3a",
            Preset::Fig3b => "fig3b",
            Preset::Fig3c => "fig3c",
            Preset::Fig3d => "fig3d",
            Preset::Fig4a => "fig4a",
            Preset::Fig4b => "fig4b",
            Preset::Fig4c => "fig4c",
            Preset::Fig4d => "fig4d",
        }
    }

    /// `(alpha, beta, gamma)` of the panel.
    pub fn triple(self) -> (f64, f64, f64) {
        match self {
            // interference strength at beta = 1
            Preset::Fig2a => (0.5, 1.0, 1.0),
            Preset::Fig2b => (1.0, 1.0, 1.0),
            Preset::Fig2c => (2.0, 1.0, 1.0),
            // relay links under very strong interference
            Preset::Fig3a => (2.0, 0.2, 1.0),
            Preset::Fig3b => (2.0, 1.0, 1.0),
            Preset::Fig3c => (2.0, 2.0, 1.0),
            Preset::Fig3d => (2.0, 3.0, 1.0),
            // relay links under weak interference; 4d stands for beta >= 3
            Preset::Fig4a => (0.5, 0.5, 1.0),
            Preset::Fig4b => (0.5, 1.0, 1.0),
            Preset::Fig4c => (0.5, 1.5, 1.0),
            Preset::Fig4d => (0.5, 3.0, 1.0),
        }
    }

    pub fn exponents(self) -> ChannelExponents {
        let (a, b, c) = self.triple();
        ChannelExponents::new(a, b, c).expect("preset exponents are valid")
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let s = s.to_ascii_lowercase();
        Preset::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| {
            let names: Vec<_> = Preset::ALL.iter().map(|p| p.name()).collect();
            CliError::Config(format!("unknown preset '{s}', expected one of {}", names.join(", ")))
        })
    }
}
