//! Eigenmodes of a rectangular guide: dispersion, fields and spinor form.

mod field;
mod spinor;

pub use field::{eval_te_field, eval_tm_field, Direction, FieldSample, ModeField, Partial};
pub use spinor::{
    alpha, beta, dirac_residual, pack_spinor, unpack_spinor, Derivatives, Spinor6, TAU,
};

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{CrossSection, Medium, ModeIndex};

/// Radicands within this fraction of `eps_r mu_r omega^2 / c^2` count as cutoff.
pub const CUTOFF_REL_TOL: f64 = 1e-12;

/// Axial wavenumber of a mode at a given frequency.
///
/// `Evanescent(kappa)` stands for `h = i kappa`, so `exp(i h z) = exp(-kappa z)`
/// decays towards `+z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxialWavenumber {
    Propagating(f64),
    Evanescent(f64),
}

impl AxialWavenumber {
    /// `h` for a propagating mode, `i kappa` for an evanescent one.
    pub fn as_complex(&self) -> Complex64 {
        match *self {
            AxialWavenumber::Propagating(h) => Complex64::new(h, 0.0),
            AxialWavenumber::Evanescent(kappa) => Complex64::new(0.0, kappa),
        }
    }

    pub fn is_propagating(&self) -> bool {
        matches!(self, AxialWavenumber::Propagating(_))
    }

    /// `h` or `kappa`, whichever applies.
    pub fn magnitude(&self) -> f64 {
        match *self {
            AxialWavenumber::Propagating(v) | AxialWavenumber::Evanescent(v) => v,
        }
    }

    /// Signed `h^2` (negative in the evanescent case).
    pub fn squared(&self) -> f64 {
        match *self {
            AxialWavenumber::Propagating(h) => h * h,
            AxialWavenumber::Evanescent(k) => -k * k,
        }
    }
}

/// `k_perp^2 = (m pi / width)^2 + (n pi / height)^2`.
pub fn cutoff_wavenumber_sq(idx: &ModeIndex, section: &CrossSection) -> f64 {
    let kx = f64::from(idx.m) * PI / section.width;
    let ky = f64::from(idx.n) * PI / section.height;
    kx * kx + ky * ky
}

/// Axial wavenumber with the default cutoff tolerance.
pub fn axial_wavenumber(
    omega: f64,
    idx: &ModeIndex,
    section: &CrossSection,
    medium: &Medium,
) -> Result<AxialWavenumber> {
    axial_wavenumber_with_tol(omega, idx, section, medium, CUTOFF_REL_TOL)
}

pub fn axial_wavenumber_with_tol(
    omega: f64,
    idx: &ModeIndex,
    section: &CrossSection,
    medium: &Medium,
    rel_tol: f64,
) -> Result<AxialWavenumber> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::NonPositive("omega"));
    }
    idx.validate()?;
    let k_sq = medium.wavenumber_sq(omega);
    let radicand = k_sq - cutoff_wavenumber_sq(idx, section);
    if radicand.abs() <= rel_tol * k_sq {
        return Err(Error::AtCutoff {
            relative: radicand / k_sq,
        });
    }
    Ok(if radicand > 0.0 {
        AxialWavenumber::Propagating(radicand.sqrt())
    } else {
        AxialWavenumber::Evanescent((-radicand).sqrt())
    })
}

/// Angular frequency at which `idx` stops propagating in `medium`.
pub fn cutoff_frequency(idx: &ModeIndex, section: &CrossSection, medium: &Medium) -> f64 {
    cutoff_wavenumber_sq(idx, section).sqrt() * medium.speed()
}

/// One line of a mode survey.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeStatus {
    pub index: ModeIndex,
    pub cutoff_omega: f64,
    /// `None` when `omega` sits on the cutoff.
    pub axial: Option<AxialWavenumber>,
}

/// Every valid TE and TM mode with `m, n <= cap`, sorted by cutoff.
pub fn survey(
    section: &CrossSection,
    medium: &Medium,
    omega: f64,
    cap: u32,
) -> Result<Vec<ModeStatus>> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::NonPositive("omega"));
    }
    let mut out = Vec::new();
    for m in 0..=cap {
        for n in 0..=cap {
            for index in [ModeIndex::te(m, n), ModeIndex::tm(m, n)] {
                if index.validate().is_err() {
                    continue;
                }
                let axial = match axial_wavenumber(omega, &index, section, medium) {
                    Ok(ax) => Some(ax),
                    Err(Error::AtCutoff { .. }) => None,
                    Err(e) => return Err(e),
                };
                let cutoff_omega = cutoff_frequency(&index, section, medium);
                out.push(ModeStatus {
                    index,
                    cutoff_omega,
                    axial,
                });
            }
        }
    }
    out.sort_by(|a, b| a.cutoff_omega.total_cmp(&b.cutoff_omega));
    Ok(out)
}
