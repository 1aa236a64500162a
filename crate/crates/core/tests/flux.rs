//! Transmissivity recovered from the axial Poynting flux of the scattered
//! fields, integrated over the cross section by quadrature.

use std::f64::consts::PI;

use num_complex::Complex64;
use waveguide_tunneling::geometry::{GuideGeometry, ModeIndex, PhysicalConstants};
use waveguide_tunneling::modes::{Direction, FieldSample, ModeField};
use waveguide_tunneling::scattering::{poynting_z, scatter, ScatterOutcome};
use waveguide_tunneling::verify::{quad2d, QuadratureRule};
use waveguide_tunneling::worked::{te10_geometry, tm11_geometry};

const C: f64 = PhysicalConstants::SI.c;

fn outer_mode(
    out: &ScatterOutcome,
    idx: ModeIndex,
    g: &GuideGeometry,
    omega: f64,
    amp: Complex64,
    dir: Direction,
) -> ModeField {
    let axial = waveguide_tunneling::modes::AxialWavenumber::Propagating(out.h_outer);
    ModeField::new(
        idx,
        g.outer_section(),
        g.outer_medium(),
        amp,
        omega,
        axial,
        dir,
    )
    .unwrap()
}

fn flux(fields: &[&ModeField], width: f64, height: f64, z: f64) -> f64 {
    let rule = QuadratureRule::default();
    quad2d(width, height, &rule, |x, y| {
        let mut total = FieldSample::ZERO;
        for f in fields {
            let s = f.sample_unchecked(x, y, z, 0.0);
            for k in 0..3 {
                total.e[k] += s.e[k];
                total.h[k] += s.h[k];
            }
        }
        poynting_z(&total)
    })
}

fn cases() -> Vec<(ModeIndex, ModeIndex, GuideGeometry, f64)> {
    let a = 0.02;
    let te_cut = C * PI / a;
    let (ta, tb): (f64, f64) = (0.04, 0.02);
    let tm_cut = 2.0 * C * PI * (1.0 / (ta * ta) + 1.0 / (tb * tb)).sqrt();
    let half = GuideGeometry {
        a: 0.03,
        b: 0.012,
        s: 0.015,
        d: 0.012,
        length: 0.007,
        eps_r: 2.0,
        mu_r: 1.0,
        eps_r_inner: 1.0,
        mu_r_inner: 1.0,
    };
    let half_cut = C * PI / 0.015;
    let mut out = Vec::new();
    for f in [0.8, 1.3, 2.1] {
        out.push((
            ModeIndex::te(1, 0),
            ModeIndex::te(1, 0),
            te10_geometry(2.4, a, 0.01, 0.006),
            f * te_cut,
        ));
        out.push((
            ModeIndex::tm(1, 1),
            ModeIndex::tm(1, 1),
            tm11_geometry(3.0, 1.2, ta, tb, 0.005),
            f * tm_cut,
        ));
        out.push((ModeIndex::te(2, 0), ModeIndex::te(1, 0), half, f * half_cut));
    }
    out
}

#[test]
fn reflected_plus_transmitted_flux_equals_incident() {
    for (inc, inner, g, omega) in cases() {
        let out = scatter(&inc, &inner, &g, omega).unwrap();
        let co = out.coefficients;
        let incident = outer_mode(&out, inc, &g, omega, co.a1, Direction::Forward);
        let reflected = outer_mode(&out, inc, &g, omega, co.a2, Direction::Backward);
        let transmitted = outer_mode(&out, inc, &g, omega, co.c, Direction::Forward);
        let p_in = flux(&[&incident], g.a, g.b, 0.0);
        let p_ref = -flux(&[&reflected], g.a, g.b, 0.0);
        let p_tr = flux(&[&transmitted], g.a, g.b, g.length);
        assert!(p_in > 0.0);
        let (t, r) = (p_tr / p_in, p_ref / p_in);
        let tr = out.transmission;
        assert!(
            (t - tr.transmission).abs() < 1e-10,
            "{inc} {omega}: {t} vs {}",
            tr.transmission
        );
        assert!((r - tr.reflection).abs() < 1e-10);
        assert!((t + r - 1.0).abs() < 1e-10);
    }
}

#[test]
fn interior_flux_carries_the_transmitted_power() {
    // With a = s and equal permeabilities the single-mode match is exact, so
    // the power crossing the interior section equals the transmitted power,
    // including when the interior mode is evanescent.
    let a = 0.02;
    let g = te10_geometry(2.4, a, 0.01, 0.006);
    let idx = ModeIndex::te(1, 0);
    for f in [0.7, 0.95, 1.4] {
        let omega = f * C * PI / a;
        let out = scatter(&idx, &idx, &g, omega).unwrap();
        let co = out.coefficients;
        let make = |amp, dir| {
            ModeField::new(
                idx,
                g.inner_section(),
                g.inner_medium(),
                amp,
                omega,
                out.h_inner,
                dir,
            )
            .unwrap()
        };
        let forward = make(co.b1, Direction::Forward);
        let backward = make(co.b2, Direction::Backward);
        let incident = outer_mode(&out, idx, &g, omega, co.a1, Direction::Forward);
        let p_in = flux(&[&incident], g.a, g.b, 0.0);
        for z in [0.0, 0.3 * g.length, g.length] {
            let p = flux(&[&forward, &backward], g.s, g.d, z) / p_in;
            let t = out.transmission.transmission;
            assert!(
                ((p - t) / t).abs() < 1e-9,
                "omega factor {f}, z {z}: {p} vs {t}"
            );
        }
    }
}
