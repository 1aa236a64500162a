//! Six-component spinor packing of `(E, H)` and the first-order
//! Dirac-like form of the source-free Maxwell equations in a uniform medium,
//! `i beta^rho d_rho psi = 0` with `x^0 = u t`.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use super::field::{FieldSample, ModeField, Partial};
use crate::geometry::Medium;

const Z: Complex64 = Complex64::new(0.0, 0.0);
const IM: Complex64 = Complex64::new(0.0, 1.0);
const NEG_IM: Complex64 = Complex64::new(0.0, -1.0);

/// Spin-1 matrices, `(tau_i)_jk = -i eps_ijk`.
pub const TAU: [[[Complex64; 3]; 3]; 3] = [
    [[Z, Z, Z], [Z, Z, NEG_IM], [Z, IM, Z]],
    [[Z, Z, IM], [Z, Z, Z], [NEG_IM, Z, Z]],
    [[Z, NEG_IM, Z], [IM, Z, Z], [Z, Z, Z]],
];

pub type Matrix6 = [[Complex64; 6]; 6];

/// `beta^0 = diag(I, -I)`, `beta^i = [[0, tau_i], [-tau_i, 0]]` for `rho = 1, 2, 3`.
pub fn beta(rho: usize) -> Matrix6 {
    let mut out = [[Z; 6]; 6];
    if rho == 0 {
        for k in 0..3 {
            out[k][k] = Complex64::new(1.0, 0.0);
            out[k + 3][k + 3] = Complex64::new(-1.0, 0.0);
        }
        return out;
    }
    let tau = &TAU[rho - 1];
    for r in 0..3 {
        for c in 0..3 {
            out[r][c + 3] = tau[r][c];
            out[r + 3][c] = -tau[r][c];
        }
    }
    out
}

/// `alpha_i = beta^0 beta^i = [[0, tau_i], [tau_i, 0]]`, `i = 1, 2, 3`.
pub fn alpha(i: usize) -> Matrix6 {
    matmul(&beta(0), &beta(i))
}

fn matmul(a: &Matrix6, b: &Matrix6) -> Matrix6 {
    let mut out = [[Z; 6]; 6];
    for r in 0..6 {
        for c in 0..6 {
            out[r][c] = (0..6).map(|k| a[r][k] * b[k][c]).sum();
        }
    }
    out
}

fn matvec(a: &Matrix6, v: &[Complex64; 6]) -> [Complex64; 6] {
    let mut out = [Z; 6];
    for (o, row) in out.iter_mut().zip(a) {
        *o = row.iter().zip(v).map(|(x, y)| x * y).sum();
    }
    out
}

/// `psi = (sqrt(eps) E, i sqrt(mu) H) / sqrt(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spinor6(pub [Complex64; 6]);

impl Spinor6 {
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `psi^dagger phi`.
    pub fn inner(&self, other: &Spinor6) -> Complex64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }
}

pub fn pack_spinor(f: &FieldSample, medium: &Medium) -> Spinor6 {
    let se = medium.permittivity().sqrt() / SQRT_2;
    let sh = IM * (medium.permeability().sqrt() / SQRT_2);
    let mut psi = [Z; 6];
    for k in 0..3 {
        psi[k] = f.e[k] * se;
        psi[k + 3] = f.h[k] * sh;
    }
    Spinor6(psi)
}

pub fn unpack_spinor(psi: &Spinor6, medium: &Medium) -> FieldSample {
    let se = SQRT_2 / medium.permittivity().sqrt();
    let sh = NEG_IM * (SQRT_2 / medium.permeability().sqrt());
    let mut f = FieldSample::ZERO;
    for k in 0..3 {
        f.e[k] = psi.0[k] * se;
        f.h[k] = psi.0[k + 3] * sh;
    }
    f
}

/// How `d_rho psi` is obtained in [`dirac_residual`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Derivatives {
    /// Differentiate the closed-form components.
    Analytic,
    /// Central differences with the given spatial step (the `x^0 = u t` step matches).
    FiniteDifference { spacing: f64 },
}

impl Derivatives {
    /// Finite differences with `1e-4 * min(width, height)`.
    pub fn default_fd(field: &ModeField) -> Self {
        let s = field.section();
        Derivatives::FiniteDifference {
            spacing: 1e-4 * s.width.min(s.height),
        }
    }
}

const X_FRACTIONS: [f64; 4] = [0.13, 0.37, 0.61, 0.87];
const Y_FRACTIONS: [f64; 3] = [0.17, 0.44, 0.71];

/// Largest normalized residual `|beta^rho d_rho psi| / (|psi| omega / u)` over a
/// fixed set of interior points.
pub fn dirac_residual(field: &ModeField, derivatives: Derivatives) -> f64 {
    let medium = field.medium();
    let section = field.section();
    let u = medium.speed();
    let scale = field.omega() / u;
    let betas = [beta(0), beta(1), beta(2), beta(3)];

    let mut worst = 0.0_f64;
    for &fx in &X_FRACTIONS {
        for &fy in &Y_FRACTIONS {
            for &(fz, ft) in &[(0.0, 0.0), (0.29, 0.4)] {
                let (x, y) = (fx * section.width, fy * section.height);
                let z = fz * section.width;
                let t = ft / field.omega();
                let partials = [Partial::T, Partial::X, Partial::Y, Partial::Z].map(|wrt| {
                    let d = match derivatives {
                        Derivatives::Analytic => field.partial(wrt, x, y, z, t),
                        Derivatives::FiniteDifference { spacing } => {
                            let step = if wrt == Partial::T {
                                spacing / u
                            } else {
                                spacing
                            };
                            field.partial_fd(wrt, x, y, z, t, step)
                        }
                    };
                    pack_spinor(&d, &medium)
                });
                let mut total = [Z; 6];
                for (rho, d) in partials.iter().enumerate() {
                    let factor = if rho == 0 { 1.0 / u } else { 1.0 };
                    let term = matvec(&betas[rho], &d.0);
                    for (acc, v) in total.iter_mut().zip(term) {
                        *acc += v * factor;
                    }
                }
                let psi = pack_spinor(&field.sample_unchecked(x, y, z, t), &medium);
                let r = Spinor6(total).norm() / (psi.norm() * scale);
                worst = worst.max(r);
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{CrossSection, ModeIndex, PhysicalConstants};
    use crate::modes::{axial_wavenumber, cutoff_wavenumber_sq, Direction};

    fn close(a: &Matrix6, b: &Matrix6) -> bool {
        a.iter()
            .flatten()
            .zip(b.iter().flatten())
            .all(|(x, y)| (x - y).norm() < 1e-15)
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn spin_one_commutators() {
        // [tau_1, tau_2] = i tau_3 and cyclic
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            for r in 0..3 {
                for c in 0..3 {
                    let ab: Complex64 = (0..3).map(|q| TAU[i][r][q] * TAU[j][q][c]).sum();
                    let ba: Complex64 = (0..3).map(|q| TAU[j][r][q] * TAU[i][q][c]).sum();
                    assert!((ab - ba - IM * TAU[k][r][c]).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn alpha_block_structure() {
        for i in 1..=3 {
            let a = alpha(i);
            let mut expected = [[Z; 6]; 6];
            for r in 0..3 {
                for c in 0..3 {
                    expected[r][c + 3] = TAU[i - 1][r][c];
                    expected[r + 3][c] = TAU[i - 1][r][c];
                }
            }
            assert!(close(&a, &expected));
        }
    }

    #[test]
    fn packing_examples() {
        let medium = Medium::VACUUM;
        assert_eq!(pack_spinor(&FieldSample::ZERO, &medium), Spinor6::default());
        let mut f = FieldSample::ZERO;
        f.e[0] = Complex64::new(1.0, 0.0);
        let psi = pack_spinor(&f, &medium);
        let expected = PhysicalConstants::SI.eps_0.sqrt() / SQRT_2;
        assert!((psi.0[0] - expected).norm() < 1e-15 * expected);
        assert!(psi.0[1..].iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn unpack_inverts_pack() {
        let medium = Medium::new(3.1, 1.7);
        let mut f = FieldSample::ZERO;
        for k in 0..3 {
            f.e[k] = Complex64::new(k as f64 + 0.5, -1.25 * k as f64);
            f.h[k] = Complex64::new(-0.01 * k as f64, 0.003);
        }
        let back = unpack_spinor(&pack_spinor(&f, &medium), &medium);
        for k in 0..3 {
            assert!((back.e[k] - f.e[k]).norm() <= 1e-15 * f.e[k].norm().max(1.0));
            assert!((back.h[k] - f.h[k]).norm() <= 1e-15 * f.h[k].norm().max(1e-3));
        }
    }

    fn field(idx: ModeIndex, scale: f64) -> ModeField {
        let section = CrossSection::new(0.02, 0.01);
        let medium = Medium::new(2.5, 1.2);
        let k2 = cutoff_wavenumber_sq(&idx, &section);
        let omega = scale * (k2 / (medium.eps_r * medium.mu_r)).sqrt() * PhysicalConstants::SI.c;
        let axial = axial_wavenumber(omega, &idx, &section, &medium).unwrap();
        ModeField::new(
            idx,
            section,
            medium,
            Complex64::new(1.0, 0.0),
            omega,
            axial,
            Direction::Forward,
        )
        .unwrap()
    }

    #[test]
    fn analytic_residual_vanishes() {
        assert!(dirac_residual(&field(ModeIndex::te(1, 0), 1.5), Derivatives::Analytic) < 1e-12);
        assert!(dirac_residual(&field(ModeIndex::tm(1, 1), 1.5), Derivatives::Analytic) < 1e-12);
    }

    #[test]
    fn finite_difference_residual_is_second_order() {
        let f = field(ModeIndex::te(1, 1), 1.3);
        let delta = 1e-3 * 0.01;
        let coarse = dirac_residual(&f, Derivatives::FiniteDifference { spacing: delta });
        let fine = dirac_residual(
            &f,
            Derivatives::FiniteDifference {
                spacing: delta / 2.0,
            },
        );
        let ratio = coarse / fine;
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
        assert!(dirac_residual(&f, Derivatives::default_fd(&f)) < 1e-6);
    }
}
