//! Cross-section overlap integrals and the mode-matching coupling factors.
//!
//! Projecting the junction continuity conditions onto a single inner mode
//! `(p, q)` reduces each field component to a product of 1-D overlaps
//! `int_0^s X(m pi x / a) X(p pi x / s) dx` along both axes. Under the
//! matching constraints all components give the same factor `Gamma_mnpq`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{GuideGeometry, ModeIndex};
use crate::modes::{cutoff_wavenumber_sq, AxialWavenumber};

/// Relative threshold on `|p a - m s|` below which the matched limit is used.
pub const DEGENERATE_REL_TOL: f64 = 1e-9;

/// Default relative tolerance for the matching constraints.
pub const CONSTRAINT_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigPair {
    CosCos,
    SinSin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OverlapKind {
    pub pair: TrigPair,
    pub axis: Axis,
}

impl OverlapKind {
    pub const fn new(pair: TrigPair, axis: Axis) -> Self {
        Self { pair, axis }
    }
}

/// `int_0^inner_len T(outer_index pi t / outer_len) T(inner_index pi t / inner_len) dt`
/// where `T` is `cos` or `sin` according to `kind`.
pub fn overlap_1d(
    kind: OverlapKind,
    outer_index: u32,
    outer_len: f64,
    inner_index: u32,
    inner_len: f64,
) -> f64 {
    overlap_1d_with_tol(
        kind,
        outer_index,
        outer_len,
        inner_index,
        inner_len,
        DEGENERATE_REL_TOL,
    )
}

pub fn overlap_1d_with_tol(
    kind: OverlapKind,
    outer_index: u32,
    outer_len: f64,
    inner_index: u32,
    inner_len: f64,
    tol: f64,
) -> f64 {
    let (m, a) = (f64::from(outer_index), outer_len);
    let (p, s) = (f64::from(inner_index), inner_len);
    if kind.pair == TrigPair::SinSin && (outer_index == 0 || inner_index == 0) {
        return 0.0;
    }
    // The two wavenumbers m pi / a and p pi / s coincide when p a = m s.
    let delta = p * a - m * s;
    let scale = a * m.max(p).max(1.0);
    if delta.abs() < tol * scale {
        return if outer_index == 0 && inner_index == 0 {
            s
        } else {
            0.5 * s
        };
    }
    // sin(m pi s / a) = (-1)^(p+1) sin(pi delta / a); writing the closed form
    // through delta keeps it accurate next to the matched case.
    let common = (PI * delta / a).sin() / (PI * (p * a + m * s) * delta);
    match kind.pair {
        TrigPair::CosCos => m * a * s * s * common,
        TrigPair::SinSin => p * a * a * s * common,
    }
}

/// `int_0^len cos^2(k pi t / len) dt`: `len` for `k = 0`, else `len / 2`.
fn cos_norm(index: u32, len: f64) -> f64 {
    if index == 0 {
        len
    } else {
        0.5 * len
    }
}

/// Coupling factor `Gamma_mnpq` between outer mode `(m, n)` and inner mode `(p, q)`.
///
/// Computed as the normalized projection of the `cos cos` profile,
/// `[I_x / N_p] [I_y / N_q]`. For all indices `>= 1` this is
/// `4 m n a b s d (-1)^(p+q) sin(m s pi / a) sin(n d pi / b) / (pi^2 (p^2 a^2 - m^2 s^2)(q^2 b^2 - n^2 d^2))`;
/// zero indices take the `cos(0) = 1` normalization, so matched `TE_m0` gives 1.
pub fn gamma_coupling(outer: &ModeIndex, inner: &ModeIndex, g: &GuideGeometry) -> f64 {
    gamma_coupling_with_tol(outer, inner, g, DEGENERATE_REL_TOL)
}

pub fn gamma_coupling_with_tol(
    outer: &ModeIndex,
    inner: &ModeIndex,
    g: &GuideGeometry,
    tol: f64,
) -> f64 {
    let ix = overlap_1d_with_tol(
        OverlapKind::new(TrigPair::CosCos, Axis::X),
        outer.m,
        g.a,
        inner.m,
        g.s,
        tol,
    );
    let iy = overlap_1d_with_tol(
        OverlapKind::new(TrigPair::CosCos, Axis::Y),
        outer.n,
        g.b,
        inner.n,
        g.d,
        tol,
    );
    (ix / cos_norm(inner.m, g.s)) * (iy / cos_norm(inner.n, g.d))
}

/// `Lambda_mnpq = k_perp,mn^2 h'_pq / (k_perp,pq^2 h_mn)`, with `h' = i kappa`
/// when the inner mode is evanescent.
pub fn lambda_coupling(
    outer: &ModeIndex,
    inner: &ModeIndex,
    g: &GuideGeometry,
    h_outer: AxialWavenumber,
    h_inner: AxialWavenumber,
) -> Result<Complex64> {
    let AxialWavenumber::Propagating(h) = h_outer else {
        return Err(Error::IncidentEvanescent);
    };
    let k_outer = cutoff_wavenumber_sq(outer, &g.outer_section());
    let k_inner = cutoff_wavenumber_sq(inner, &g.inner_section());
    Ok(h_inner.as_complex() * (k_outer / (k_inner * h)))
}

/// Gamma, and Lambda for TM matching.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingFactors {
    pub gamma: f64,
    pub lambda: Option<Complex64>,
}

/// Outcome of a matching-constraint check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintCheck {
    pub satisfied: bool,
    pub residual: f64,
}

impl ConstraintCheck {
    fn from_residual(residual: f64, rel_tol: f64) -> Self {
        Self {
            satisfied: residual < rel_tol,
            residual,
        }
    }
}

/// TE condition `k_perp,mn^2 mu'_r = k_perp,pq^2 mu_r`.
pub fn te_constraint(outer: &ModeIndex, inner: &ModeIndex, g: &GuideGeometry) -> ConstraintCheck {
    te_constraint_with_tol(outer, inner, g, CONSTRAINT_REL_TOL)
}

pub fn te_constraint_with_tol(
    outer: &ModeIndex,
    inner: &ModeIndex,
    g: &GuideGeometry,
    rel_tol: f64,
) -> ConstraintCheck {
    let lhs = cutoff_wavenumber_sq(outer, &g.outer_section()) * g.mu_r_inner;
    let rhs = cutoff_wavenumber_sq(inner, &g.inner_section()) * g.mu_r;
    ConstraintCheck::from_residual((lhs - rhs).abs() / lhs, rel_tol)
}

/// TM condition `m b s q = n a d p`.
pub fn tm_constraint(outer: &ModeIndex, inner: &ModeIndex, g: &GuideGeometry) -> ConstraintCheck {
    tm_constraint_with_tol(outer, inner, g, CONSTRAINT_REL_TOL)
}

pub fn tm_constraint_with_tol(
    outer: &ModeIndex,
    inner: &ModeIndex,
    g: &GuideGeometry,
    rel_tol: f64,
) -> ConstraintCheck {
    let (m, n) = (f64::from(outer.m), f64::from(outer.n));
    let (p, q) = (f64::from(inner.m), f64::from(inner.n));
    let lhs = m * g.b * g.s * q;
    let rhs = n * g.a * g.d * p;
    ConstraintCheck::from_residual((lhs - rhs).abs() / lhs, rel_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::QuadratureRule;

    const CC_X: OverlapKind = OverlapKind::new(TrigPair::CosCos, Axis::X);
    const SS_X: OverlapKind = OverlapKind::new(TrigPair::SinSin, Axis::X);

    fn geometry(a: f64, b: f64, s: f64, d: f64) -> GuideGeometry {
        GuideGeometry {
            a,
            b,
            s,
            d,
            length: 1.0,
            eps_r: 1.0,
            mu_r: 1.0,
            eps_r_inner: 1.0,
            mu_r_inner: 1.0,
        }
    }

    fn quadrature_overlap(kind: OverlapKind, m: u32, a: f64, p: u32, s: f64) -> f64 {
        let rule = QuadratureRule::gauss_legendre(64);
        let trig = |arg: f64| match kind.pair {
            TrigPair::CosCos => arg.cos(),
            TrigPair::SinSin => arg.sin(),
        };
        rule.integrate(0.0, s, |x| {
            trig(f64::from(m) * PI * x / a) * trig(f64::from(p) * PI * x / s)
        })
    }

    #[test]
    fn matched_and_constant_overlaps() {
        assert!((overlap_1d(CC_X, 1, 1.0, 1, 1.0) - 0.5).abs() < 1e-15);
        assert_eq!(overlap_1d(CC_X, 0, 0.7, 0, 0.7), 0.7);
        assert_eq!(overlap_1d(SS_X, 0, 0.7, 0, 0.7), 0.0);
    }

    #[test]
    fn mismatched_overlap_example() {
        // int_0^1 cos(pi x / 2) cos(pi x) dx = 2 / (3 pi), checked by quadrature
        let oracle = quadrature_overlap(CC_X, 1, 2.0, 1, 1.0);
        assert!((oracle - 2.0 / (3.0 * PI)).abs() < 1e-14);
        assert!((overlap_1d(CC_X, 1, 2.0, 1, 1.0) - oracle).abs() < 1e-14);
    }

    #[test]
    fn overlaps_match_quadrature() {
        for ratio in [0.3, 0.5, std::f64::consts::FRAC_1_SQRT_2, 1.0] {
            let (a, s) = (1.3, 1.3 * ratio);
            for kind in [CC_X, SS_X] {
                for m in 0..=4 {
                    for p in 0..=4 {
                        let v = overlap_1d(kind, m, a, p, s);
                        let q = quadrature_overlap(kind, m, a, p, s);
                        assert!((v - q).abs() < 1e-10, "{kind:?} m={m} p={p} s/a={ratio}");
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_boundary_is_continuous() {
        // p a = m s at m = 2, p = 1, s = a / 2
        let (a, m, p) = (1.0, 2, 1);
        let limit = overlap_1d(CC_X, m, a, p, 0.5);
        for sign in [-1.0, 1.0] {
            let s = 0.5 * (1.0 + sign * 1e-7);
            for kind in [CC_X, SS_X] {
                let v = overlap_1d(kind, m, a, p, s);
                assert!(((v - limit) / limit).abs() < 1e-5);
            }
        }
    }

    /// Literal transcription of the printed coupling factor, valid away from
    /// the degenerate denominators.
    fn gamma_printed(m: f64, n: f64, p: f64, q: f64, g: &GuideGeometry) -> f64 {
        let (a, b, s, d) = (g.a, g.b, g.s, g.d);
        let sign = if (p + q) as i64 % 2 == 0 { 1.0 } else { -1.0 };
        4.0 * m * n * a * b * s * d * sign
            / (PI * PI * (p * p * a * a - m * m * s * s) * (q * q * b * b - n * n * d * d))
            * (m * s * PI / a).sin()
            * (n * d * PI / b).sin()
    }

    #[test]
    fn gamma_reduces_to_printed_formula() {
        let g = geometry(2.0, 1.1, 1.3, 0.45);
        for m in 1..=3 {
            for n in 1..=3 {
                for p in 1..=3 {
                    for q in 1..=3 {
                        let v = gamma_coupling(&ModeIndex::tm(m, n), &ModeIndex::tm(p, q), &g);
                        let e = gamma_printed(m.into(), n.into(), p.into(), q.into(), &g);
                        assert!((v - e).abs() < 1e-12 * e.abs().max(1e-3), "{m}{n}{p}{q}");
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_examples() {
        let g = geometry(1.0, 0.5, 1.0, 0.5);
        assert_eq!(
            gamma_coupling(&ModeIndex::tm(1, 1), &ModeIndex::tm(1, 1), &g),
            1.0
        );
        assert_eq!(
            gamma_coupling(&ModeIndex::te(1, 0), &ModeIndex::te(1, 0), &g),
            1.0
        );
        assert_eq!(
            gamma_coupling(&ModeIndex::te(2, 3), &ModeIndex::te(2, 3), &g),
            1.0
        );

        // a = 2s, b = 2d: 16 / (9 pi^2), oracle is the 2-D projection
        let g = geometry(2.0, 1.0, 1.0, 0.5);
        let rule = QuadratureRule::default();
        let projected: f64 = crate::verify::quad2d(g.s, g.d, &rule, |x, y| {
            (PI * x / g.a).cos()
                * (PI * y / g.b).cos()
                * (PI * x / g.s).cos()
                * (PI * y / g.d).cos()
        }) / (g.s * g.d / 4.0);
        assert!((projected - 16.0 / (9.0 * PI * PI)).abs() < 1e-14);
        let v = gamma_coupling(&ModeIndex::tm(1, 1), &ModeIndex::tm(1, 1), &g);
        assert!((v - projected).abs() < 1e-14);

        // sin(m s pi / a) = 0 with p a != m s: m = 2, s = a / 2, p = 2
        let g = geometry(2.0, 1.0, 1.0, 1.0);
        let v = gamma_coupling(&ModeIndex::te(2, 1), &ModeIndex::te(2, 1), &g);
        assert!(v.abs() < 1e-15);
    }

    #[test]
    fn tm_transverse_projection_agrees_with_gamma_under_constraint() {
        // Project Ex of TM_mn onto Ex of TM_pq; with m b s q = n a d p the
        // ratio of profile prefactors collapses onto Lambda and Gamma.
        let g = geometry(2.0, 1.2, 1.0, 0.6);
        let rule = QuadratureRule::default();
        let (m, n, p, q) = (1.0, 1.0, 1.0, 1.0);
        assert!(tm_constraint(&ModeIndex::tm(1, 1), &ModeIndex::tm(1, 1), &g).satisfied);
        let ex_overlap: f64 = crate::verify::quad2d(g.s, g.d, &rule, |x, y| {
            (m * PI * x / g.a).cos()
                * (n * PI * y / g.b).sin()
                * (p * PI * x / g.s).cos()
                * (q * PI * y / g.d).sin()
        }) / (g.s * g.d / 4.0);
        let x_eq = ex_overlap * (m * g.s) / (p * g.a);
        let gamma = gamma_coupling(&ModeIndex::tm(1, 1), &ModeIndex::tm(1, 1), &g);
        assert!((x_eq - gamma).abs() < 1e-13);
    }

    #[test]
    fn lambda_examples() {
        let g = geometry(1.0, 0.5, 1.0, 0.5);
        let (outer, inner) = (ModeIndex::tm(1, 1), ModeIndex::tm(1, 1));
        let l = lambda_coupling(
            &outer,
            &inner,
            &g,
            AxialWavenumber::Propagating(3.0),
            AxialWavenumber::Propagating(3.0),
        )
        .unwrap();
        assert!((l - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let l = lambda_coupling(
            &outer,
            &inner,
            &g,
            AxialWavenumber::Propagating(3.0),
            AxialWavenumber::Evanescent(3.0),
        )
        .unwrap();
        assert!((l - Complex64::new(0.0, 1.0)).norm() < 1e-15);

        // k_outer^2 = 2 pi^2 (a = b = 1), k_inner^2 = pi^2 (s = d = sqrt 2)
        let g = GuideGeometry {
            s: 2f64.sqrt(),
            d: 2f64.sqrt(),
            ..geometry(1.0, 1.0, 1.0, 1.0)
        };
        let l = lambda_coupling(
            &outer,
            &inner,
            &g,
            AxialWavenumber::Propagating(2.0),
            AxialWavenumber::Propagating(2.0),
        )
        .unwrap();
        assert!((l - Complex64::new(2.0, 0.0)).norm() < 1e-14);

        let err = lambda_coupling(
            &outer,
            &inner,
            &g,
            AxialWavenumber::Evanescent(1.0),
            AxialWavenumber::Propagating(1.0),
        );
        assert_eq!(err, Err(Error::IncidentEvanescent));
    }

    #[test]
    fn te_constraint_examples() {
        let g = geometry(1.0, 0.5, 1.0, 0.5);
        let c = te_constraint(&ModeIndex::te(1, 0), &ModeIndex::te(1, 0), &g);
        assert!(c.satisfied);
        assert_eq!(c.residual, 0.0);

        let g = geometry(2.0, 1.0, 1.0, 0.5);
        assert!(!te_constraint(&ModeIndex::te(1, 0), &ModeIndex::te(1, 0), &g).satisfied);
        // (2 pi / s)^2 = (4 pi / a)^2 != (pi / a)^2
        let c = te_constraint(&ModeIndex::te(1, 0), &ModeIndex::te(2, 0), &g);
        assert!(!c.satisfied);
        assert!((c.residual - 15.0).abs() < 1e-12);
    }

    #[test]
    fn te_constraint_grid_of_width_ratios() {
        // TE_m0 -> TE_p0 with equal permeabilities holds iff p / s = m / a.
        for k in 1..=4u32 {
            let s = 1.0 / f64::from(k);
            let g = geometry(1.0, 0.5, s, 0.25);
            for m in 1..=8u32 {
                for p in 1..=4u32 {
                    let c = te_constraint(&ModeIndex::te(m, 0), &ModeIndex::te(p, 0), &g);
                    assert_eq!(c.satisfied, m == p * k, "k={k} m={m} p={p}");
                }
            }
        }
    }

    #[test]
    fn tm_constraint_examples() {
        let g = geometry(2.0, 1.0, 1.0, 0.5);
        assert!(tm_constraint(&ModeIndex::tm(1, 1), &ModeIndex::tm(1, 1), &g).satisfied);
        assert!(!tm_constraint(&ModeIndex::tm(1, 1), &ModeIndex::tm(1, 2), &g).satisfied);
        let g = geometry(3.0, 1.5, 2.0, 1.0);
        for k in 1..=3 {
            assert!(tm_constraint(&ModeIndex::tm(k, k), &ModeIndex::tm(k, k), &g).satisfied);
        }
    }
}
