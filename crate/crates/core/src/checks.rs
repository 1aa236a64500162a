//! Self-check suites behind `wgtunnel check`.
//!
//! Each suite compares two independent routes to the same quantity and
//! reports the worst residual against its tolerance. Failures are report
//! content, not errors.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coupling::{overlap_1d, Axis, OverlapKind, TrigPair};
use crate::error::Error;
use crate::exec::Execution;
use crate::geometry::{CrossSection, Medium, ModeIndex, PhysicalConstants};
use crate::modes::{
    axial_wavenumber, cutoff_wavenumber_sq, dirac_residual, AxialWavenumber, Derivatives,
    Direction, ModeField,
};
use crate::scattering::{closed_form_coefficients, solve_matching_system, transmission_reflection};
use crate::verify::{
    basis_orthonormality, completeness_residual, expected_orthonormality, te_tm_orthogonality,
    BasisFamily, BasisFunctionId, CompletenessFamily, Domain, QuadratureRule, DEFAULT_ORDER,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CheckLevel {
    #[default]
    Fast,
    Full,
}

impl FromStr for CheckLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "fast" => Ok(CheckLevel::Fast),
            "full" => Ok(CheckLevel::Full),
            other => Err(Error::config(
                "level",
                format!("expected fast or full, got {other:?}"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    pub level: CheckLevel,
    /// Gauss-Legendre points per axis for every quadrature-based suite.
    pub quadrature_order: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            level: CheckLevel::Fast,
            quadrature_order: DEFAULT_ORDER,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl SuiteReport {
    fn from_residuals(name: &'static str, tolerance: f64, residuals: &[f64]) -> Self {
        // NaN counts as the worst possible residual
        let worst =
            residuals.iter().fold(
                0.0_f64,
                |w, &r| if r.is_nan() { f64::INFINITY } else { w.max(r) },
            );
        let passed = !residuals.is_empty() && worst <= tolerance;
        Self {
            name,
            cases: residuals.len(),
            worst,
            tolerance,
            passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CheckReport {
    pub suites: Vec<SuiteReport>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(
                f,
                "{} {:<30} cases={:<6} worst={:.3e} tol={:e}",
                if s.passed { "PASS" } else { "FAIL" },
                s.name,
                s.cases,
                s.worst,
                s.tolerance
            )?;
        }
        Ok(())
    }
}

pub fn run_checks(cfg: &CheckConfig, exec: Execution) -> CheckReport {
    let rule = QuadratureRule::gauss_legendre(cfg.quadrature_order.max(1));
    let full = cfg.level == CheckLevel::Full;
    let draws = random_draws(cfg.seed, if full { 1000 } else { 200 });

    let suites = vec![
        overlap_vs_quadrature(&rule, if full { 6 } else { 4 }),
        overlap_degenerate_limit(),
        closed_form_vs_solve(&draws, exec, false),
        closed_form_vs_solve(&draws, exec, true),
        conservation(&draws, exec),
        te_tm_orthogonality_suite(&rule, if full { 3 } else { 2 }, exec),
        dirac_suite(3, exec),
        orthonormality_suite(&rule, if full { 4 } else { 2 }),
        completeness_suite(&rule),
        evanescent_asymptotics(),
        resonance_suite(),
    ];
    CheckReport { suites }
}

/// Length ratios `s / a` used by the overlap suites.
pub const OVERLAP_RATIOS: [f64; 4] = [0.3, 0.5, FRAC_1_SQRT_2, 1.0];

fn overlap_vs_quadrature(rule: &QuadratureRule, max_index: u32) -> SuiteReport {
    let a = 1.0;
    let mut res = Vec::new();
    for ratio in OVERLAP_RATIOS {
        let s = ratio * a;
        for (pair, f) in [
            (TrigPair::CosCos, f64::cos as fn(f64) -> f64),
            (TrigPair::SinSin, f64::sin),
        ] {
            for m in 0..=max_index {
                for p in 0..=max_index {
                    let kind = OverlapKind::new(pair, Axis::X);
                    let closed = overlap_1d(kind, m, a, p, s);
                    let (km, kp) = (f64::from(m) * PI / a, f64::from(p) * PI / s);
                    let quad: f64 = rule.integrate(0.0, s, |x| f(km * x) * f(kp * x));
                    res.push((closed - quad).abs());
                }
            }
        }
    }
    SuiteReport::from_residuals("overlap_vs_quadrature", 1e-10, &res)
}

/// Relative offset of `|p a - m s| / a` at which the overlap is compared with
/// its matched value.
pub const DEGENERATE_BRACKET: f64 = 1e-7;

fn overlap_degenerate_limit() -> SuiteReport {
    let a = 1.0;
    let mut res = Vec::new();
    for m in 1..=4u32 {
        for p in 1..=m {
            let matched = f64::from(p) * a / f64::from(m);
            for sign in [-1.0, 1.0] {
                let s = (f64::from(p) * a + sign * DEGENERATE_BRACKET * a) / f64::from(m);
                for pair in [TrigPair::CosCos, TrigPair::SinSin] {
                    let v = overlap_1d(OverlapKind::new(pair, Axis::X), m, a, p, s);
                    let limit = 0.5 * matched;
                    res.push(((v - limit) / limit).abs());
                }
            }
        }
    }
    SuiteReport::from_residuals("overlap_degenerate_limit", 1e-5, &res)
}

/// One `(h, h', L)` sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Draw {
    pub h: f64,
    pub h_inner: AxialWavenumber,
    pub length: f64,
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

/// `h` and `h'` or `kappa` log-uniform in `(0.1, 10)`, `L` uniform in
/// `(0.01, 10)`; half of the draws are evanescent.
pub fn random_draws(seed: u64, count: usize) -> Vec<Draw> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let h = log_uniform(&mut rng, 0.1, 10.0);
            let k = log_uniform(&mut rng, 0.1, 10.0);
            let length = rng.gen_range(0.01..10.0);
            let h_inner = if rng.gen_bool(0.5) {
                AxialWavenumber::Propagating(k)
            } else {
                AxialWavenumber::Evanescent(k)
            };
            Draw { h, h_inner, length }
        })
        .collect()
}

/// `kappa L` above which amplitudes are compared by log-magnitude.
pub const DEEP_BARRIER: f64 = 30.0;

fn is_deep(d: &Draw) -> bool {
    matches!(d.h_inner, AxialWavenumber::Evanescent(k) if k * d.length > DEEP_BARRIER)
}

fn closed_form_vs_solve(draws: &[Draw], exec: Execution, deep: bool) -> SuiteReport {
    let one = Complex64::new(1.0, 0.0);
    let picked: Vec<Draw> = draws
        .iter()
        .copied()
        .filter(|d| is_deep(d) == deep)
        .collect();
    let res = exec.map(&picked, |d| {
        let (Ok(x), Ok(y)) = (
            closed_form_coefficients(d.h, d.h_inner, d.length, one),
            solve_matching_system(d.h, d.h_inner, d.length, one),
        ) else {
            return f64::INFINITY;
        };
        x.as_array()
            .iter()
            .zip(y.as_array())
            .map(|(u, v)| {
                if deep {
                    (u.norm().ln() - v.norm().ln()).abs()
                } else {
                    (u - v).norm() / v.norm()
                }
            })
            .fold(0.0, f64::max)
    });
    if deep {
        SuiteReport::from_residuals("closed_form_deep_barrier", 1e-8, &res)
    } else {
        SuiteReport::from_residuals("closed_form_vs_linear_solve", 1e-10, &res)
    }
}

fn conservation(draws: &[Draw], exec: Execution) -> SuiteReport {
    let one = Complex64::new(1.0, 0.0);
    let picked: Vec<Draw> = draws
        .iter()
        .copied()
        .filter(|d| d.h_inner.is_propagating())
        .collect();
    let res = exec.map(&picked, |d| {
        let tr = transmission_reflection(d.h, d.h_inner, d.length);
        if tr.transmission + tr.reflection != 1.0 {
            return f64::INFINITY;
        }
        match closed_form_coefficients(d.h, d.h_inner, d.length, one) {
            Ok(c) => (c.a2.norm_sqr() + c.c.norm_sqr() - 1.0).abs(),
            Err(_) => f64::INFINITY,
        }
    });
    SuiteReport::from_residuals("conservation", 1e-12, &res)
}

fn test_section() -> (CrossSection, Medium) {
    (CrossSection::new(0.023, 0.01), Medium::new(2.1, 1.3))
}

/// Frequency at `factor` times the cutoff of the higher of two modes.
fn above_cutoff(modes: &[ModeIndex], section: &CrossSection, medium: &Medium, factor: f64) -> f64 {
    let k2 = modes
        .iter()
        .map(|m| cutoff_wavenumber_sq(m, section))
        .fold(0.0, f64::max);
    factor * (k2 / (medium.eps_r * medium.mu_r)).sqrt() * PhysicalConstants::SI.c
}

fn all_modes(max_index: u32) -> Vec<ModeIndex> {
    let mut out = Vec::new();
    for m in 0..=max_index {
        for n in 0..=max_index {
            if m + n > 0 {
                out.push(ModeIndex::te(m, n));
            }
            if m > 0 && n > 0 {
                out.push(ModeIndex::tm(m, n));
            }
        }
    }
    out
}

fn te_tm_orthogonality_suite(
    rule: &QuadratureRule,
    max_index: u32,
    exec: Execution,
) -> SuiteReport {
    let (section, medium) = test_section();
    let modes = all_modes(max_index);
    let mut cases = Vec::new();
    for te in modes
        .iter()
        .filter(|m| m.polarization == crate::geometry::Polarization::Te)
    {
        for tm in modes
            .iter()
            .filter(|m| m.polarization == crate::geometry::Polarization::Tm)
        {
            for factor in [1.1, 1.7, 3.2] {
                cases.push((
                    *te,
                    *tm,
                    above_cutoff(&[*te, *tm], &section, &medium, factor),
                ));
            }
        }
    }
    let res = exec.map(&cases, |&(te, tm, omega)| {
        te_tm_orthogonality(te, tm, section, medium, omega, rule).unwrap_or(f64::INFINITY)
    });
    SuiteReport::from_residuals("te_tm_orthogonality", 1e-10, &res)
}

fn dirac_suite(max_index: u32, exec: Execution) -> SuiteReport {
    let (section, medium) = test_section();
    let mut cases = Vec::new();
    for idx in all_modes(max_index) {
        // one propagating and one evanescent frequency per mode
        for factor in [1.6, 0.7] {
            cases.push((idx, above_cutoff(&[idx], &section, &medium, factor)));
        }
    }
    let res = exec.map(&cases, |&(idx, omega)| {
        let one = Complex64::new(1.0, 0.0);
        axial_wavenumber(omega, &idx, &section, &medium)
            .and_then(|ax| ModeField::new(idx, section, medium, one, omega, ax, Direction::Forward))
            .map_or(f64::INFINITY, |f| dirac_residual(&f, Derivatives::Analytic))
    });
    SuiteReport::from_residuals("dirac_residual", 1e-12, &res)
}

fn orthonormality_suite(rule: &QuadratureRule, max_index: u32) -> SuiteReport {
    let (a, b) = (1.0, 0.6);
    let mut res = Vec::new();
    for family in BasisFamily::ALL {
        for m in 1..=max_index {
            for n in 1..=max_index {
                for p in 1..=max_index {
                    for q in 1..=max_index {
                        let i = BasisFunctionId::new(family, m, n);
                        let j = BasisFunctionId::new(family, p, q);
                        let got = basis_orthonormality(i, j, a, b, Domain::Physical, rule);
                        let want = expected_orthonormality(i, j, a, b, Domain::Physical);
                        res.push((got - want).abs());
                    }
                }
            }
        }
    }
    SuiteReport::from_residuals("basis_orthonormality", 1e-10, &res)
}

/// Index caps at which completeness residuals must not grow.
pub const COMPLETENESS_CAPS: [u32; 4] = [16, 32, 64, 128];

/// Residuals below this are treated as converged when checking monotonicity.
pub const COMPLETENESS_FLOOR: f64 = 1e-13;

/// Worst growth factor `r(M_{k+1}) / r(M_k)` above the floor, and the residuals.
pub fn completeness_growth(family: CompletenessFamily, rule: &QuadratureRule) -> (f64, [f64; 4]) {
    let a = 1.0;
    let sigma = a / 30.0;
    let phi = |t: f64| (-0.5 * ((t - 0.5 * a) / sigma).powi(2)).exp();
    let r = COMPLETENESS_CAPS.map(|m| completeness_residual(family, m, phi, 0.48 * a, a, rule));
    let growth = r
        .windows(2)
        .map(|w| {
            if w[1] < COMPLETENESS_FLOOR {
                0.0
            } else {
                w[1] / w[0]
            }
        })
        .fold(0.0, f64::max);
    (growth, r)
}

fn completeness_suite(rule: &QuadratureRule) -> SuiteReport {
    let res =
        [CompletenessFamily::Sin, CompletenessFamily::Cos].map(|f| completeness_growth(f, rule).0);
    SuiteReport::from_residuals("completeness_monotone", 1.05, &res)
}

fn evanescent_asymptotics() -> SuiteReport {
    let mut res = Vec::new();
    for (h, kappa) in [(1.0, 1.0), (0.3, 2.0), (4.0, 0.5)] {
        for kl in [10.0, 25.0, 60.0, 150.0, 199.0] {
            let length = kl / kappa;
            let step = 0.5 / kappa;
            let t0 = transmission_reflection(h, AxialWavenumber::Evanescent(kappa), length);
            let t1 = transmission_reflection(h, AxialWavenumber::Evanescent(kappa), length + step);
            let ratio = t1.transmission / t0.transmission;
            let want = (-2.0 * kappa * step).exp();
            let ok = t1.transmission > 0.0 && t1.transmission.is_finite();
            res.push(if ok {
                ((ratio - want) / want).abs()
            } else {
                f64::INFINITY
            });
        }
    }
    SuiteReport::from_residuals("evanescent_asymptotics", 1e-6, &res)
}

fn resonance_suite() -> SuiteReport {
    let mut res = Vec::new();
    for (h, hp) in [(1.0, 2.0), (3.0, 0.4), (0.2, 7.0)] {
        for k in 1..=5 {
            let length = f64::from(k) * PI / hp;
            let t = transmission_reflection(h, AxialWavenumber::Propagating(hp), length);
            res.push((1.0 - t.transmission).abs());
        }
    }
    SuiteReport::from_residuals("resonant_transmission", 1e-12, &res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_level_passes() {
        let report = run_checks(&CheckConfig::default(), Execution::Auto);
        assert!(report.all_passed(), "\n{report}");
        assert!(report.suites.len() >= 6);
    }

    #[test]
    fn low_order_quadrature_fails_overlap_suite() {
        let rule = QuadratureRule::gauss_legendre(16);
        let low = overlap_vs_quadrature(&rule, 6);
        assert!(!low.passed, "{low:?}");
        assert!(overlap_vs_quadrature(&QuadratureRule::default(), 6).passed);
    }

    #[test]
    fn draws_are_reproducible_and_mixed() {
        let a = random_draws(7, 300);
        assert_eq!(a, random_draws(7, 300));
        assert!(a.iter().any(is_deep));
        assert!(a.iter().any(|d| d.h_inner.is_propagating()));
    }

    #[test]
    fn level_parses() {
        assert_eq!("full".parse::<CheckLevel>(), Ok(CheckLevel::Full));
        assert!("slow".parse::<CheckLevel>().is_err());
    }
}
