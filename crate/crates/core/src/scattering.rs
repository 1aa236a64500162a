//! Reflection and transmission of a single guided mode through the
//! undersized section `0 < z < L`.
//!
//! After projection onto one inner mode the junction conditions reduce to
//! four scalar equations in the primed amplitudes,
//!
//! ```text
//! A1 + A2                     = B1 + B2
//! h (A1 - A2)                 = h' (B1 - B2)
//! C e^{ihL}                   = B1 e^{ih'L} + B2 e^{-ih'L}
//! h C e^{ihL}                 = h' (B1 e^{ih'L} - B2 e^{-ih'L})
//! ```
//!
//! with `h' = i kappa` below the inner cutoff.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use crate::coupling::{
    gamma_coupling, lambda_coupling, te_constraint_with_tol, tm_constraint_with_tol,
    ConstraintCheck, CouplingFactors, CONSTRAINT_REL_TOL,
};
use crate::error::{Error, Result};
use crate::geometry::{GuideGeometry, ModeIndex, Polarization};
use crate::modes::{axial_wavenumber_with_tol, AxialWavenumber, FieldSample, CUTOFF_REL_TOL};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Amplitudes of the incident (`a1`), reflected (`a2`), interior forward and
/// backward (`b1`, `b2`) and transmitted (`c`) waves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringCoefficients {
    pub a1: Complex64,
    pub a2: Complex64,
    pub b1: Complex64,
    pub b2: Complex64,
    pub c: Complex64,
}

impl ScatteringCoefficients {
    fn scaled(&self, k: Complex64) -> Self {
        Self {
            a1: self.a1 * k,
            a2: self.a2 * k,
            b1: self.b1 * k,
            b2: self.b2 * k,
            c: self.c * k,
        }
    }

    pub fn as_array(&self) -> [Complex64; 5] {
        [self.a1, self.a2, self.b1, self.b2, self.c]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Propagating,
    Evanescent,
}

impl Regime {
    pub fn of(h_inner: &AxialWavenumber) -> Self {
        match h_inner {
            AxialWavenumber::Propagating(_) => Regime::Propagating,
            AxialWavenumber::Evanescent(_) => Regime::Evanescent,
        }
    }
}

/// Transmissivity and reflectivity; `transmission + reflection == 1.0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionResult {
    pub transmission: f64,
    pub reflection: f64,
    pub regime: Regime,
}

/// `e^z - 1` for `z` on the real or imaginary axis, without cancellation.
fn expm1_complex(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    let half = (0.5 * y).sin();
    let cos_m1 = -2.0 * half * half;
    let em1 = x.exp_m1();
    Complex64::new(em1 * y.cos() + cos_m1, (em1 + 1.0) * y.sin())
}

fn check_inputs(h: f64, length: f64) -> Result<()> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::NonPositive("h"));
    }
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::NonPositive("length"));
    }
    Ok(())
}

/// Closed-form amplitudes for incident amplitude `a1`.
///
/// Numerator and denominator are multiplied through by `g = e^{ih'L}`
/// (`|g| <= 1`), so nothing grows like `e^{kappa L}`:
///
/// ```text
/// den = (h + h')^2 - (h - h')^2 g^2
/// C   =  4 h h' e^{-ihL} g / den
/// A2  = -(h^2 - h'^2)(g^2 - 1) / den
/// B1  =  2 h (h + h') / den
/// B2  = -2 h (h - h') g^2 / den
/// ```
pub fn closed_form_coefficients(
    h: f64,
    h_inner: AxialWavenumber,
    length: f64,
    a1: Complex64,
) -> Result<ScatteringCoefficients> {
    check_inputs(h, length)?;
    let hp = h_inner.as_complex();
    let hc = Complex64::new(h, 0.0);
    let g = (I * hp * length).exp();
    let g2 = g * g;
    let g2m1 = expm1_complex(2.0 * I * hp * length);
    let sum = hc + hp;
    let diff = hc - hp;
    let den = sum * sum - diff * diff * g2;
    let den_norm = den.norm();
    if den_norm.is_nan() || den_norm < 1e-300 {
        return Err(Error::SingularDenominator);
    }
    let unit = ScatteringCoefficients {
        a1: ONE,
        a2: -(hc * hc - hp * hp) * g2m1 / den,
        b1: 2.0 * hc * sum / den,
        b2: -2.0 * hc * diff * g2 / den,
        c: 4.0 * hc * hp * (-I * h * length).exp() * g / den,
    };
    Ok(unit.scaled(a1))
}

/// Direct 4x4 solve of the matching equations (LU with partial pivoting).
///
/// Unknowns are `(A2, B1, B2 e^{-ih'L}, C e^{ihL})`; carrying the backward
/// interior wave at its `z = L` amplitude keeps every matrix entry bounded in
/// the evanescent regime.
pub fn solve_matching_system(
    h: f64,
    h_inner: AxialWavenumber,
    length: f64,
    a1: Complex64,
) -> Result<ScatteringCoefficients> {
    check_inputs(h, length)?;
    let hp = h_inner.as_complex();
    let hc = Complex64::new(h, 0.0);
    let g = (I * hp * length).exp();
    let zero = Complex64::new(0.0, 0.0);
    #[rustfmt::skip]
    let m = Matrix4::new(
        ONE,  -ONE,     -g,      zero,
        -hc,  -hp,      hp * g,  zero,
        zero, -g,       -ONE,    ONE,
        zero, -hp * g,  hp,      hc,
    );
    let rhs = Vector4::new(-ONE, -hc, zero, zero);
    let x = m.lu().solve(&rhs).ok_or(Error::SingularSystem)?;
    if x.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::SingularSystem);
    }
    let unit = ScatteringCoefficients {
        a1: ONE,
        a2: x[0],
        b1: x[1],
        b2: x[2] * g,
        c: x[3] * (-I * h * length).exp(),
    };
    Ok(unit.scaled(a1))
}

/// `T = |C|^2 / |A1|^2`, `R = |A2|^2 / |A1|^2` for a single interior mode.
///
/// Both come from one denominator; the smaller is divided out and the larger
/// is its complement, so `T + R` is exactly `1.0` in floating point.
pub fn transmission_reflection(
    h: f64,
    h_inner: AxialWavenumber,
    length: f64,
) -> TransmissionResult {
    let h2 = h * h;
    let (trans_num, refl_num) = match h_inner {
        AxialWavenumber::Propagating(hp) => {
            let hp2 = hp * hp;
            let s = (hp * length).sin();
            let mismatch = h2 - hp2;
            (4.0 * h2 * hp2, mismatch * mismatch * s * s)
        }
        AxialWavenumber::Evanescent(kappa) => {
            // sinh^2(x) = e^{2x} (1 - e^{-2x})^2 / 4; both terms carry e^{-2x}.
            let x = kappa * length;
            let k2 = kappa * kappa;
            let decay = (-2.0 * x).exp();
            let shape = 0.5 * (-2.0 * x).exp_m1();
            let sum = h2 + k2;
            (4.0 * h2 * k2 * decay, sum * sum * shape * shape)
        }
    };
    let den = trans_num + refl_num;
    let (transmission, reflection) = if trans_num <= refl_num {
        let t = trans_num / den;
        (t, 1.0 - t)
    } else {
        let r = refl_num / den;
        (1.0 - r, r)
    };
    TransmissionResult {
        transmission,
        reflection,
        regime: Regime::of(&h_inner),
    }
}

/// Controls for [`scatter_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterOptions {
    /// Proceed when the matching constraint fails; results are then flagged.
    pub allow_constraint_violation: bool,
    pub constraint_rel_tol: f64,
    pub cutoff_rel_tol: f64,
}

impl Default for ScatterOptions {
    fn default() -> Self {
        Self {
            allow_constraint_violation: false,
            constraint_rel_tol: CONSTRAINT_REL_TOL,
            cutoff_rel_tol: CUTOFF_REL_TOL,
        }
    }
}

/// Everything [`scatter`] computes for one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterOutcome {
    pub transmission: TransmissionResult,
    /// Physical amplitudes for unit incident amplitude.
    pub coefficients: ScatteringCoefficients,
    /// Coupling-scaled amplitudes: `A' = Gamma A`, `C' = Gamma C`, and
    /// `B' = Lambda B` for TM (`B' = B` for TE).
    pub primed: ScatteringCoefficients,
    pub coupling: CouplingFactors,
    pub h_outer: f64,
    pub h_inner: AxialWavenumber,
    pub constraint: ConstraintCheck,
}

impl ScatterOutcome {
    /// False when the matching constraint was overridden.
    pub fn within_validity(&self) -> bool {
        self.constraint.satisfied
    }
}

pub fn scatter(
    incident: &ModeIndex,
    inner: &ModeIndex,
    g: &GuideGeometry,
    omega: f64,
) -> Result<ScatterOutcome> {
    scatter_with(incident, inner, g, omega, &ScatterOptions::default())
}

/// Full pipeline: wavenumbers, constraint, coupling factors, `T`/`R` and amplitudes.
pub fn scatter_with(
    incident: &ModeIndex,
    inner: &ModeIndex,
    g: &GuideGeometry,
    omega: f64,
    opts: &ScatterOptions,
) -> Result<ScatterOutcome> {
    g.validate()?;
    incident.validate()?;
    inner.validate()?;
    if incident.polarization != inner.polarization {
        return Err(Error::PolarizationMismatch {
            incident: incident.polarization,
            inner: inner.polarization,
        });
    }
    let outer_axial = axial_wavenumber_with_tol(
        omega,
        incident,
        &g.outer_section(),
        &g.outer_medium(),
        opts.cutoff_rel_tol,
    );
    let h = match outer_axial {
        Ok(AxialWavenumber::Propagating(h)) => h,
        Ok(AxialWavenumber::Evanescent(_)) | Err(Error::AtCutoff { .. }) => {
            return Err(Error::IncidentCutOff)
        }
        Err(e) => return Err(e),
    };
    let h_inner = axial_wavenumber_with_tol(
        omega,
        inner,
        &g.inner_section(),
        &g.inner_medium(),
        opts.cutoff_rel_tol,
    )?;

    let constraint = match incident.polarization {
        Polarization::Te => te_constraint_with_tol(incident, inner, g, opts.constraint_rel_tol),
        Polarization::Tm => tm_constraint_with_tol(incident, inner, g, opts.constraint_rel_tol),
    };
    if !constraint.satisfied && !opts.allow_constraint_violation {
        return Err(Error::ConstraintViolated {
            residual: constraint.residual,
        });
    }

    let gamma = gamma_coupling(incident, inner, g);
    let lambda = match incident.polarization {
        Polarization::Te => None,
        Polarization::Tm => Some(lambda_coupling(
            incident,
            inner,
            g,
            AxialWavenumber::Propagating(h),
            h_inner,
        )?),
    };

    // Ratios to A1' from the normalized system, then back to physical amplitudes.
    let ratios = closed_form_coefficients(h, h_inner, g.length, ONE)?;
    let gamma_c = Complex64::new(gamma, 0.0);
    let interior_scale = lambda.map_or(ONE, |l| ONE / l);
    let coefficients = ScatteringCoefficients {
        a1: ONE,
        a2: ratios.a2,
        b1: ratios.b1 * gamma_c * interior_scale,
        b2: ratios.b2 * gamma_c * interior_scale,
        c: ratios.c,
    };
    let primed = ScatteringCoefficients {
        a1: gamma_c,
        a2: ratios.a2 * gamma_c,
        b1: ratios.b1 * gamma_c,
        b2: ratios.b2 * gamma_c,
        c: ratios.c * gamma_c,
    };

    Ok(ScatterOutcome {
        transmission: transmission_reflection(h, h_inner, g.length),
        coefficients,
        primed,
        coupling: CouplingFactors { gamma, lambda },
        h_outer: h,
        h_inner,
        constraint,
    })
}

/// Time-averaged axial power density `Re(Ex Hy* - Ey Hx*) / 2`.
pub fn poynting_z(f: &FieldSample) -> f64 {
    0.5 * (f.e[0] * f.h[1].conj() - f.e[1] * f.h[0].conj()).re
}
