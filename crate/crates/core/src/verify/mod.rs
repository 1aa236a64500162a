//! Numerical cross-checks: Gauss-Legendre quadrature, TE/TM spinor
//! orthogonality, and orthonormality/completeness of the transverse bases.

mod quadrature;

pub use quadrature::{quad2d, QuadratureRule, DEFAULT_ORDER};

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::geometry::{CrossSection, Medium, ModeIndex, Polarization};
use crate::modes::{axial_wavenumber, pack_spinor, Direction, ModeField};

/// Separable transverse basis functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisFamily {
    /// `cos(m pi x / a) sin(n pi y / b)`
    G1,
    /// `sin(m pi x / a) cos(n pi y / b)`
    G2,
    /// `cos(m pi x / a) cos(n pi y / b)`
    G3,
    /// `sin(m pi x / a) sin(n pi y / b)`
    G4,
}

impl BasisFamily {
    pub const ALL: [BasisFamily; 4] = [Self::G1, Self::G2, Self::G3, Self::G4];

    fn factors(self) -> (Trig, Trig) {
        match self {
            Self::G1 => (Trig::Cos, Trig::Sin),
            Self::G2 => (Trig::Sin, Trig::Cos),
            Self::G3 => (Trig::Cos, Trig::Cos),
            Self::G4 => (Trig::Sin, Trig::Sin),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisFunctionId {
    pub family: BasisFamily,
    pub m: u32,
    pub n: u32,
}

impl BasisFunctionId {
    pub const fn new(family: BasisFamily, m: u32, n: u32) -> Self {
        Self { family, m, n }
    }

    pub fn eval(&self, x: f64, y: f64, a: f64, b: f64) -> f64 {
        let (fx, fy) = self.family.factors();
        fx.eval(f64::from(self.m) * PI * x / a) * fy.eval(f64::from(self.n) * PI * y / b)
    }
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
}

/// Integration domain for [`basis_orthonormality`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Domain {
    /// `[0, a] x [0, b]`; same-family nonzero indices give `(ab/4) delta delta`.
    #[default]
    Physical,
    /// `[-a, a] x [-b, b]`; same-family nonzero indices give `ab delta delta`
    /// and distinct families are orthogonal.
    Extended,
}

/// Quadrature estimate of `int int g_i g_j` over the chosen domain.
pub fn basis_orthonormality(
    i: BasisFunctionId,
    j: BasisFunctionId,
    a: f64,
    b: f64,
    domain: Domain,
    rule: &QuadratureRule,
) -> f64 {
    let (x0, y0) = match domain {
        Domain::Physical => (0.0, 0.0),
        Domain::Extended => (-a, -b),
    };
    rule.integrate(x0, a, |x| {
        rule.integrate(y0, b, |y| i.eval(x, y, a, b) * j.eval(x, y, a, b))
    })
}

/// Expected value of [`basis_orthonormality`] for nonzero indices.
pub fn expected_orthonormality(
    i: BasisFunctionId,
    j: BasisFunctionId,
    a: f64,
    b: f64,
    domain: Domain,
) -> f64 {
    if i != j {
        // distinct families only vanish on the extended domain; on the
        // physical one the caller compares against the separable closed form
        return 0.0;
    }
    match domain {
        Domain::Physical => a * b / 4.0,
        Domain::Extended => a * b,
    }
}

/// `|int int psi_TE^dagger psi_TM| / (|psi_TE| |psi_TM|)` over the cross
/// section at `z = t = 0`, both modes with unit amplitude.
pub fn te_tm_orthogonality(
    te: ModeIndex,
    tm: ModeIndex,
    section: CrossSection,
    medium: Medium,
    omega: f64,
    rule: &QuadratureRule,
) -> Result<f64> {
    let field = |idx: ModeIndex, expect: Polarization| -> Result<ModeField> {
        if idx.polarization != expect {
            return Err(crate::Error::PolarizationMismatch {
                incident: expect,
                inner: idx.polarization,
            });
        }
        let axial = axial_wavenumber(omega, &idx, &section, &medium)?;
        let one = Complex64::new(1.0, 0.0);
        ModeField::new(idx, section, medium, one, omega, axial, Direction::Forward)
    };
    let fe = field(te, Polarization::Te)?;
    let fm = field(tm, Polarization::Tm)?;

    let mut cross = Complex64::default();
    let mut norm_e = 0.0;
    let mut norm_m = 0.0;
    for (xi, wx) in rule.nodes().iter().zip(rule.weights()) {
        let x = 0.5 * section.width * (xi + 1.0);
        for (yi, wy) in rule.nodes().iter().zip(rule.weights()) {
            let y = 0.5 * section.height * (yi + 1.0);
            let w = wx * wy * 0.25 * section.area();
            let pe = pack_spinor(&fe.sample_unchecked(x, y, 0.0, 0.0), &medium);
            let pm = pack_spinor(&fm.sample_unchecked(x, y, 0.0, 0.0), &medium);
            cross += pe.inner(&pm) * w;
            norm_e += pe.norm().powi(2) * w;
            norm_m += pm.norm().powi(2) * w;
        }
    }
    Ok(cross.norm() / (norm_e * norm_m).sqrt())
}

/// Which one-dimensional kernel [`completeness_residual`] sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletenessFamily {
    /// `sum_m sin(m pi x/a) sin(m pi x'/a) -> (a/2) delta(x - x')`
    Sin,
    /// `sum_m cos(m pi x/a) cos(m pi x'/a) -> (a delta(x - x') - 1) / 2`
    Cos,
}

/// `|sum_{m=1}^{cap} f_m(x) <f_m, phi> - limit|` with the projections taken by
/// composite quadrature on `[0, a]`.
pub fn completeness_residual<F>(
    family: CompletenessFamily,
    cap: u32,
    phi: F,
    x: f64,
    a: f64,
    rule: &QuadratureRule,
) -> f64
where
    F: Fn(f64) -> f64,
{
    let panels = (cap as usize).div_ceil(4).max(8);
    let basis = |m: u32, t: f64| {
        let arg = f64::from(m) * PI * t / a;
        match family {
            CompletenessFamily::Sin => arg.sin(),
            CompletenessFamily::Cos => arg.cos(),
        }
    };
    let mut sum = 0.0;
    for m in 1..=cap {
        let proj: f64 = rule.integrate_composite(0.0, a, panels, |t| basis(m, t) * phi(t));
        sum += basis(m, x) * proj;
    }
    let limit = match family {
        CompletenessFamily::Sin => 0.5 * a * phi(x),
        CompletenessFamily::Cos => {
            let total: f64 = rule.integrate_composite(0.0, a, panels, &phi);
            0.5 * (a * phi(x) - total)
        }
    };
    (sum - limit).abs()
}
