use std::f64::consts::PI;

use num_complex::Complex64;

use super::{cutoff_wavenumber_sq, AxialWavenumber};
use crate::error::{Error, Result};
use crate::geometry::{CrossSection, Medium, ModeIndex, Polarization};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Propagation sense along the guide axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Six complex field components at one point: `e = (Ex, Ey, Ez)`, `h = (Hx, Hy, Hz)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldSample {
    pub e: [Complex64; 3],
    pub h: [Complex64; 3],
}

impl FieldSample {
    pub const ZERO: FieldSample = FieldSample {
        e: [Complex64::new(0.0, 0.0); 3],
        h: [Complex64::new(0.0, 0.0); 3],
    };

    fn scaled_difference(&self, other: &FieldSample, scale: f64) -> FieldSample {
        let mut out = FieldSample::ZERO;
        for k in 0..3 {
            out.e[k] = (self.e[k] - other.e[k]) * scale;
            out.h[k] = (self.h[k] - other.h[k]) * scale;
        }
        out
    }
}

/// Coordinate of a partial derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partial {
    T,
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Trig {
    Cos,
    Sin,
}

impl Trig {
    fn eval(self, arg: f64) -> f64 {
        match self {
            Trig::Cos => arg.cos(),
            Trig::Sin => arg.sin(),
        }
    }

    fn eval_derivative(self, k: f64, arg: f64) -> f64 {
        match self {
            Trig::Cos => -k * arg.sin(),
            Trig::Sin => k * arg.cos(),
        }
    }
}

/// One field component `coef * X(kx x) * Y(ky y)`.
#[derive(Debug, Clone, Copy)]
struct Term {
    coef: Complex64,
    x: Trig,
    y: Trig,
}

impl Term {
    const ZERO: Term = Term {
        coef: Complex64::new(0.0, 0.0),
        x: Trig::Cos,
        y: Trig::Cos,
    };
}

/// A single guided mode with fixed amplitude, frequency and direction.
///
/// Every component is separable, `coef * trig(kx x) * trig(ky y) * exp(i(h z - w t))`,
/// so values and first derivatives are exact.
#[derive(Debug, Clone)]
pub struct ModeField {
    idx: ModeIndex,
    section: CrossSection,
    medium: Medium,
    omega: f64,
    kx: f64,
    ky: f64,
    h: Complex64,
    terms: [Term; 6],
}

impl ModeField {
    /// Builds a mode. `amplitude` is `H0` for TE and `E0` for TM.
    pub fn new(
        idx: ModeIndex,
        section: CrossSection,
        medium: Medium,
        amplitude: Complex64,
        omega: f64,
        axial: AxialWavenumber,
        direction: Direction,
    ) -> Result<Self> {
        idx.validate()?;
        let kx = f64::from(idx.m) * PI / section.width;
        let ky = f64::from(idx.n) * PI / section.height;
        let k2 = cutoff_wavenumber_sq(&idx, &section);
        let h = match direction {
            Direction::Forward => axial.as_complex(),
            Direction::Backward => -axial.as_complex(),
        };
        let (cs, sc) = ((Trig::Cos, Trig::Sin), (Trig::Sin, Trig::Cos));
        let term = |coef: Complex64, (x, y): (Trig, Trig)| Term { coef, x, y };

        let terms = match idx.polarization {
            Polarization::Te => {
                let wm = omega * medium.permeability() / k2;
                [
                    term(-I * wm * ky * amplitude, cs),
                    term(I * wm * kx * amplitude, sc),
                    Term::ZERO,
                    term(-I * h / k2 * kx * amplitude, sc),
                    term(-I * h / k2 * ky * amplitude, cs),
                    term(amplitude, (Trig::Cos, Trig::Cos)),
                ]
            }
            Polarization::Tm => {
                let we = omega * medium.permittivity() / k2;
                [
                    term(I * h / k2 * kx * amplitude, cs),
                    term(I * h / k2 * ky * amplitude, sc),
                    term(amplitude, (Trig::Sin, Trig::Sin)),
                    term(-I * we * ky * amplitude, sc),
                    term(I * we * kx * amplitude, cs),
                    Term::ZERO,
                ]
            }
        };
        Ok(Self {
            idx,
            section,
            medium,
            omega,
            kx,
            ky,
            h,
            terms,
        })
    }

    pub fn index(&self) -> ModeIndex {
        self.idx
    }

    pub fn section(&self) -> CrossSection {
        self.section
    }

    pub fn medium(&self) -> Medium {
        self.medium
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Signed complex axial wavenumber (negated for backward waves).
    pub fn axial(&self) -> Complex64 {
        self.h
    }

    /// Fields at `(x, y, z, t)`; the point must lie in the cross section.
    pub fn sample(&self, x: f64, y: f64, z: f64, t: f64) -> Result<FieldSample> {
        if !self.section.contains(x, y) {
            return Err(Error::OutOfCrossSection {
                x,
                y,
                width: self.section.width,
                height: self.section.height,
            });
        }
        Ok(self.sample_unchecked(x, y, z, t))
    }

    /// Fields at any point, continuing the closed form outside the walls.
    pub fn sample_unchecked(&self, x: f64, y: f64, z: f64, t: f64) -> FieldSample {
        self.evaluate(x, y, z, t, None)
    }

    /// Exact first partial derivative of all six components.
    pub fn partial(&self, wrt: Partial, x: f64, y: f64, z: f64, t: f64) -> FieldSample {
        self.evaluate(x, y, z, t, Some(wrt))
    }

    /// Central-difference estimate of a partial derivative with step `delta`.
    pub fn partial_fd(
        &self,
        wrt: Partial,
        x: f64,
        y: f64,
        z: f64,
        t: f64,
        delta: f64,
    ) -> FieldSample {
        let (plus, minus) = match wrt {
            Partial::X => (
                self.sample_unchecked(x + delta, y, z, t),
                self.sample_unchecked(x - delta, y, z, t),
            ),
            Partial::Y => (
                self.sample_unchecked(x, y + delta, z, t),
                self.sample_unchecked(x, y - delta, z, t),
            ),
            Partial::Z => (
                self.sample_unchecked(x, y, z + delta, t),
                self.sample_unchecked(x, y, z - delta, t),
            ),
            Partial::T => (
                self.sample_unchecked(x, y, z, t + delta),
                self.sample_unchecked(x, y, z, t - delta),
            ),
        };
        plus.scaled_difference(&minus, 0.5 / delta)
    }

    fn evaluate(&self, x: f64, y: f64, z: f64, t: f64, wrt: Option<Partial>) -> FieldSample {
        let phase = (I * (self.h * z - self.omega * t)).exp();
        let (ax, ay) = (self.kx * x, self.ky * y);
        let mut out = FieldSample::ZERO;
        for (k, term) in self.terms.iter().enumerate() {
            let value = match wrt {
                None => term.coef * term.x.eval(ax) * term.y.eval(ay) * phase,
                Some(Partial::X) => {
                    term.coef * term.x.eval_derivative(self.kx, ax) * term.y.eval(ay) * phase
                }
                Some(Partial::Y) => {
                    term.coef * term.x.eval(ax) * term.y.eval_derivative(self.ky, ay) * phase
                }
                Some(Partial::Z) => {
                    term.coef * term.x.eval(ax) * term.y.eval(ay) * I * self.h * phase
                }
                Some(Partial::T) => {
                    term.coef * term.x.eval(ax) * term.y.eval(ay) * (-I * self.omega) * phase
                }
            };
            if k < 3 {
                out.e[k] = value;
            } else {
                out.h[k - 3] = value;
            }
        }
        out
    }
}

/// TE field components at a point.
#[allow(clippy::too_many_arguments)]
pub fn eval_te_field(
    idx: ModeIndex,
    section: CrossSection,
    medium: Medium,
    h0: Complex64,
    omega: f64,
    axial: AxialWavenumber,
    direction: Direction,
    (x, y, z, t): (f64, f64, f64, f64),
) -> Result<FieldSample> {
    if idx.polarization != Polarization::Te {
        return Err(Error::PolarizationMismatch {
            incident: Polarization::Te,
            inner: idx.polarization,
        });
    }
    ModeField::new(idx, section, medium, h0, omega, axial, direction)?.sample(x, y, z, t)
}

/// TM field components at a point.
#[allow(clippy::too_many_arguments)]
pub fn eval_tm_field(
    idx: ModeIndex,
    section: CrossSection,
    medium: Medium,
    e0: Complex64,
    omega: f64,
    axial: AxialWavenumber,
    direction: Direction,
    (x, y, z, t): (f64, f64, f64, f64),
) -> Result<FieldSample> {
    if idx.polarization != Polarization::Tm {
        return Err(Error::PolarizationMismatch {
            incident: Polarization::Tm,
            inner: idx.polarization,
        });
    }
    ModeField::new(idx, section, medium, e0, omega, axial, direction)?.sample(x, y, z, t)
}
