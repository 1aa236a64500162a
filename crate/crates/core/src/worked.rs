//! Closed-form transmissivities for the two reference configurations.
//!
//! * `TE10 -> TE10` with `a = s`, `mu_r = eps_r' = mu_r' = 1`, `eps_r > 1`.
//! * `TM11 -> TM11` with `a = 2s`, `b = 2d`, `eps_r' = mu_r' = 1`.
//!
//! These are written directly in terms of `omega`, `c` and the guide sizes
//! and serve as an independent route to the generic [`crate::scattering::scatter`].

use std::f64::consts::PI;

use crate::geometry::{GuideGeometry, PhysicalConstants};

/// Matched-width TE10 guide: only the outer filling differs.
pub fn te10_geometry(eps_r: f64, a: f64, b: f64, length: f64) -> GuideGeometry {
    GuideGeometry {
        a,
        b,
        s: a,
        d: b,
        length,
        eps_r,
        mu_r: 1.0,
        eps_r_inner: 1.0,
        mu_r_inner: 1.0,
    }
}

/// Half-size TM11 guide with a vacuum-filled inner section.
pub fn tm11_geometry(eps_r: f64, mu_r: f64, a: f64, b: f64, length: f64) -> GuideGeometry {
    GuideGeometry {
        a,
        b,
        s: a / 2.0,
        d: b / 2.0,
        length,
        eps_r,
        mu_r,
        eps_r_inner: 1.0,
        mu_r_inner: 1.0,
    }
}

/// TE10 transmissivity; propagating form above `omega = c pi / a`,
/// evanescent form below it. `None` outside the incident passband or at the
/// inner cutoff.
pub fn te10_transmission(eps_r: f64, a: f64, length: f64, omega: f64) -> Option<f64> {
    let c = PhysicalConstants::SI.c;
    let w2 = omega * omega;
    let cut = c * c * PI * PI / (a * a);
    let outer = eps_r * w2 - cut;
    if outer <= 0.0 {
        return None;
    }
    let mismatch = (eps_r - 1.0).powi(2) * w2 * w2;
    let t = if w2 > cut {
        let inner = w2 - cut;
        let s = (length * (w2 / (c * c) - PI * PI / (a * a)).sqrt()).sin();
        4.0 * outer * inner / (mismatch * s * s + 4.0 * outer * inner)
    } else if w2 < cut {
        let inner = cut - w2;
        let s = (length * (PI * PI / (a * a) - w2 / (c * c)).sqrt()).sinh();
        4.0 * outer * inner / (mismatch * s * s + 4.0 * outer * inner)
    } else {
        return None;
    };
    Some(t)
}

/// The product `4 (eps mu w^2 - c^2 pi^2/a^2 - c^2 pi^2/b^2)(w^2 - 4 c^2 pi^2/a^2 - 4 c^2 pi^2/b^2)`
/// appearing in the TM11 transmissivity (negative below the inner cutoff).
pub fn tm11_product(eps_r: f64, mu_r: f64, a: f64, b: f64, omega: f64) -> f64 {
    let c2 = PhysicalConstants::SI.c.powi(2);
    let w2 = omega * omega;
    let tx = c2 * PI * PI / (a * a);
    let ty = c2 * PI * PI / (b * b);
    4.0 * (eps_r * mu_r * w2 - tx - ty) * (w2 - 4.0 * tx - 4.0 * ty)
}

/// TM11 transmissivity through the half-size section. `None` outside the
/// incident passband or at the inner cutoff.
pub fn tm11_transmission(
    eps_r: f64,
    mu_r: f64,
    a: f64,
    b: f64,
    length: f64,
    omega: f64,
) -> Option<f64> {
    let c = PhysicalConstants::SI.c;
    let w2 = omega * omega;
    let inv = 1.0 / (a * a) + 1.0 / (b * b);
    if eps_r * mu_r * w2 / (c * c) <= PI * PI * inv {
        return None;
    }
    let product = tm11_product(eps_r, mu_r, a, b, omega);
    let bracket = w2 * (eps_r * mu_r - 1.0) + 3.0 * c * c * PI * PI * inv;
    let inner = w2 / (c * c) - 4.0 * PI * PI * inv;
    let t = if inner > 0.0 {
        let s = (length * inner.sqrt()).sin();
        product / (bracket * bracket * s * s + product)
    } else if inner < 0.0 {
        let s = (length * (-inner).sqrt()).sinh();
        -product / (bracket * bracket * s * s - product)
    } else {
        return None;
    };
    Some(t)
}
