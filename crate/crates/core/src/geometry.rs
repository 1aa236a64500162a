//! The three-segment guide, its filling media, and mode indices.
//!
//! Regions `z < 0` and `z > L` share an `a x b` cross section filled with
//! `(eps_r, mu_r)`; the section `0 < z < L` is `s x d` filled with
//! `(eps_r_inner, mu_r_inner)`. All quantities are SI.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vacuum constants. `eps_0` is derived from `mu_0` and `c` so that
/// `c = 1/sqrt(eps_0 mu_0)` holds to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub c: f64,
    pub eps_0: f64,
    pub mu_0: f64,
}

impl PhysicalConstants {
    pub const SI: PhysicalConstants = {
        let c = 299_792_458.0;
        let mu_0 = 1.256_637_062_12e-6;
        PhysicalConstants {
            c,
            eps_0: 1.0 / (mu_0 * c * c),
            mu_0,
        }
    };
}

/// A lossless, dispersionless filling medium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Medium {
    pub eps_r: f64,
    pub mu_r: f64,
}

impl Medium {
    pub const VACUUM: Medium = Medium {
        eps_r: 1.0,
        mu_r: 1.0,
    };

    pub fn new(eps_r: f64, mu_r: f64) -> Self {
        Self { eps_r, mu_r }
    }

    /// Phase speed `u = c / sqrt(eps_r mu_r)`.
    pub fn speed(&self) -> f64 {
        PhysicalConstants::SI.c / (self.eps_r * self.mu_r).sqrt()
    }

    /// `eps_r mu_r omega^2 / c^2`, the squared medium wavenumber.
    pub fn wavenumber_sq(&self, omega: f64) -> f64 {
        let c = PhysicalConstants::SI.c;
        self.eps_r * self.mu_r * omega * omega / (c * c)
    }

    pub fn permittivity(&self) -> f64 {
        PhysicalConstants::SI.eps_0 * self.eps_r
    }

    pub fn permeability(&self) -> f64 {
        PhysicalConstants::SI.mu_0 * self.mu_r
    }
}

/// Rectangular cross section `[0, width] x [0, height]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossSection {
    pub width: f64,
    pub height: f64,
}

impl CrossSection {
    pub fn new(width: f64, height: f64) -> Self {
        Self { width, height }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        (0.0..=self.width).contains(&x) && (0.0..=self.height).contains(&y)
    }

    pub fn area(&self) -> f64 {
        self.width * self.height
    }
}

/// The discontinuous guide: outer `a x b`, inner `s x d` of length `L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GuideGeometry {
    #[serde(rename = "a_m")]
    pub a: f64,
    #[serde(rename = "b_m")]
    pub b: f64,
    #[serde(rename = "s_m")]
    pub s: f64,
    #[serde(rename = "d_m")]
    pub d: f64,
    #[serde(rename = "length_m")]
    pub length: f64,
    pub eps_r: f64,
    pub mu_r: f64,
    pub eps_r_inner: f64,
    pub mu_r_inner: f64,
}

impl GuideGeometry {
    pub fn outer_section(&self) -> CrossSection {
        CrossSection::new(self.a, self.b)
    }

    pub fn inner_section(&self) -> CrossSection {
        CrossSection::new(self.s, self.d)
    }

    pub fn outer_medium(&self) -> Medium {
        Medium::new(self.eps_r, self.mu_r)
    }

    pub fn inner_medium(&self) -> Medium {
        Medium::new(self.eps_r_inner, self.mu_r_inner)
    }

    pub fn validate(&self) -> Result<()> {
        validate_geometry(self)
    }
}

/// Checks every precondition on the guide.
///
/// `a = s` is accepted (the matched-width TE10 configuration needs it).
pub fn validate_geometry(g: &GuideGeometry) -> Result<()> {
    let positive = [
        (g.a, "a"),
        (g.b, "b"),
        (g.s, "s"),
        (g.d, "d"),
        (g.length, "length"),
        (g.eps_r, "eps_r"),
        (g.mu_r, "mu_r"),
        (g.eps_r_inner, "eps_r_inner"),
        (g.mu_r_inner, "mu_r_inner"),
    ];
    for (value, name) in positive {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::NonPositive(name));
        }
    }
    if g.a < g.b {
        return Err(Error::DimensionOrder("outer guide needs a >= b"));
    }
    if g.s < g.d {
        return Err(Error::DimensionOrder("inner guide needs s >= d"));
    }
    if g.s > g.a {
        return Err(Error::NonNesting("s exceeds a"));
    }
    if g.d > g.b {
        return Err(Error::NonNesting("d exceeds b"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    #[serde(rename = "TE")]
    Te,
    #[serde(rename = "TM")]
    Tm,
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polarization::Te => f.write_str("TE"),
            Polarization::Tm => f.write_str("TM"),
        }
    }
}

/// `TE_mn` or `TM_mn`. `m` counts half-waves along x, `n` along y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeIndex {
    pub polarization: Polarization,
    pub m: u32,
    pub n: u32,
}

impl ModeIndex {
    pub const fn te(m: u32, n: u32) -> Self {
        Self {
            polarization: Polarization::Te,
            m,
            n,
        }
    }

    pub const fn tm(m: u32, n: u32) -> Self {
        Self {
            polarization: Polarization::Tm,
            m,
            n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        validate_mode(self)
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.polarization, self.m, self.n)
    }
}

pub fn validate_mode(idx: &ModeIndex) -> Result<()> {
    match idx.polarization {
        Polarization::Te if idx.m == 0 && idx.n == 0 => Err(Error::InvalidTeIndex),
        Polarization::Tm if idx.m == 0 || idx.n == 0 => {
            Err(Error::InvalidTmIndex { m: idx.m, n: idx.n })
        }
        _ => Ok(()),
    }
}
