//! Frequency sweeps driven by a JSON job file, with CSV output.
//!
//! ```json
//! {
//!   "geometry": {"a_m": 0.02, "b_m": 0.01, "s_m": 0.02, "d_m": 0.01, "length_m": 0.005,
//!                "eps_r": 2.0, "mu_r": 1.0, "eps_r_inner": 1.0, "mu_r_inner": 1.0},
//!   "incident": {"polarization": "TE", "m": 1, "n": 0},
//!   "inner": {"polarization": "TE", "m": 1, "n": 0},
//!   "omega_min_rad_per_s": 5e10,
//!   "omega_max_rad_per_s": 1e11,
//!   "points": 200,
//!   "grid": "linear"
//! }
//! ```

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coupling::{gamma_coupling, te_constraint, tm_constraint};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geometry::{GuideGeometry, ModeIndex, Polarization};
use crate::modes::AxialWavenumber;
use crate::scattering::{scatter_with, ScatterOptions};

/// CSV header, in column order.
pub const COLUMNS: [&str; 9] = [
    "omega",
    "regime",
    "h_outer",
    "h_inner",
    "kappa",
    "T",
    "R",
    "gamma",
    "lambda_mag",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grid {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepJob {
    pub geometry: GuideGeometry,
    pub incident: ModeIndex,
    pub inner: ModeIndex,
    pub omega_min_rad_per_s: f64,
    pub omega_max_rad_per_s: f64,
    pub points: usize,
    #[serde(default)]
    pub grid: Grid,
    #[serde(default)]
    pub allow_constraint_violation: bool,
}

fn geometry_field(name: &str) -> String {
    let json = match name {
        "a" | "b" | "s" | "d" | "length" => format!("{name}_m"),
        other => other.to_string(),
    };
    format!("geometry.{json}")
}

impl SweepJob {
    /// Parses and validates a job document.
    pub fn from_json(text: &str) -> Result<Self> {
        let job: SweepJob = serde_json::from_str(text).map_err(|e| Error::config("job", e))?;
        job.validate()?;
        Ok(job)
    }

    pub fn from_reader(mut r: impl Read) -> Result<Self> {
        let mut text = String::new();
        r.read_to_string(&mut text)
            .map_err(|e| Error::config("job", e))?;
        Self::from_json(&text)
    }

    /// Field-level checks; every failure is [`Error::ConfigInvalid`].
    pub fn validate(&self) -> Result<()> {
        self.geometry.validate().map_err(|e| match e {
            Error::NonPositive(name) => Error::config(geometry_field(name), &e),
            other => Error::config("geometry", other),
        })?;
        self.incident
            .validate()
            .map_err(|e| Error::config("incident", e))?;
        self.inner
            .validate()
            .map_err(|e| Error::config("inner", e))?;
        if self.incident.polarization != self.inner.polarization {
            let e = Error::PolarizationMismatch {
                incident: self.incident.polarization,
                inner: self.inner.polarization,
            };
            return Err(Error::config("inner", e));
        }
        let (lo, hi) = (self.omega_min_rad_per_s, self.omega_max_rad_per_s);
        if !(lo.is_finite() && lo > 0.0) {
            return Err(Error::config(
                "omega_min_rad_per_s",
                "must be finite and positive",
            ));
        }
        if !(hi.is_finite() && hi > lo) {
            return Err(Error::config(
                "omega_max_rad_per_s",
                "must be finite and above omega_min_rad_per_s",
            ));
        }
        if self.points < 2 {
            return Err(Error::config(
                "points",
                "at least 2 grid points are required",
            ));
        }
        if !self.allow_constraint_violation {
            let check = match self.incident.polarization {
                Polarization::Te => te_constraint(&self.incident, &self.inner, &self.geometry),
                Polarization::Tm => tm_constraint(&self.incident, &self.inner, &self.geometry),
            };
            if !check.satisfied {
                let e = Error::ConstraintViolated {
                    residual: check.residual,
                };
                return Err(Error::config("inner", e));
            }
        }
        Ok(())
    }

    /// Grid frequencies; both endpoints are hit exactly.
    pub fn frequencies(&self) -> Vec<f64> {
        let (lo, hi) = (self.omega_min_rad_per_s, self.omega_max_rad_per_s);
        let last = self.points - 1;
        (0..self.points)
            .map(|i| {
                if i == 0 {
                    return lo;
                }
                if i == last {
                    return hi;
                }
                let f = i as f64 / last as f64;
                match self.grid {
                    Grid::Linear => lo + (hi - lo) * f,
                    Grid::Log => (lo.ln() + (hi.ln() - lo.ln()) * f).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowRegime {
    Propagating,
    Evanescent,
    /// Inner mode exactly at cutoff; no `T`/`R`.
    AtCutoff,
    /// Incident mode does not propagate in the outer guide.
    Skipped,
}

impl RowRegime {
    pub fn as_str(self) -> &'static str {
        match self {
            RowRegime::Propagating => "propagating",
            RowRegime::Evanescent => "evanescent",
            RowRegime::AtCutoff => "at_cutoff",
            RowRegime::Skipped => "skipped",
        }
    }
}

impl fmt::Display for RowRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RowRegime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "propagating" => RowRegime::Propagating,
            "evanescent" => RowRegime::Evanescent,
            "at_cutoff" => RowRegime::AtCutoff,
            "skipped" => RowRegime::Skipped,
            other => return Err(Error::config("regime", format!("unknown value {other:?}"))),
        })
    }
}

/// One grid frequency. Fields that do not apply are `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub omega: f64,
    pub regime: RowRegime,
    pub h_outer: Option<f64>,
    pub h_inner: Option<f64>,
    pub kappa: Option<f64>,
    pub transmission: Option<f64>,
    pub reflection: Option<f64>,
    pub gamma: Option<f64>,
    pub lambda_mag: Option<f64>,
}

impl SweepRow {
    fn empty(omega: f64, regime: RowRegime) -> Self {
        Self {
            omega,
            regime,
            h_outer: None,
            h_inner: None,
            kappa: None,
            transmission: None,
            reflection: None,
            gamma: None,
            lambda_mag: None,
        }
    }

    fn check(&self) -> Result<()> {
        let (Some(t), Some(r)) = (self.transmission, self.reflection) else {
            return Ok(());
        };
        let bad = |detail: String| {
            Err(Error::InvariantViolated {
                omega: self.omega,
                detail,
            })
        };
        if !(0.0..=1.0).contains(&t) || !(0.0..=1.0).contains(&r) {
            return bad(format!("T = {t:?}, R = {r:?} outside [0, 1]"));
        }
        if t + r != 1.0 {
            return bad(format!("T + R = {:?}", t + r));
        }
        Ok(())
    }
}

/// Evaluates one grid frequency of an already validated job.
pub fn sweep_row(job: &SweepJob, omega: f64) -> Result<SweepRow> {
    let opts = ScatterOptions {
        allow_constraint_violation: job.allow_constraint_violation,
        ..ScatterOptions::default()
    };
    let g = &job.geometry;
    let row = match scatter_with(&job.incident, &job.inner, g, omega, &opts) {
        Ok(out) => {
            let t = out.transmission;
            let (regime, h_inner, kappa) = match out.h_inner {
                AxialWavenumber::Propagating(h) => (RowRegime::Propagating, Some(h), None),
                AxialWavenumber::Evanescent(k) => (RowRegime::Evanescent, None, Some(k)),
            };
            SweepRow {
                omega,
                regime,
                h_outer: Some(out.h_outer),
                h_inner,
                kappa,
                transmission: Some(t.transmission),
                reflection: Some(t.reflection),
                gamma: Some(out.coupling.gamma),
                lambda_mag: out.coupling.lambda.map(|l| l.norm()),
            }
        }
        Err(Error::IncidentCutOff) => SweepRow::empty(omega, RowRegime::Skipped),
        Err(Error::AtCutoff { .. }) => {
            let h_outer = crate::modes::axial_wavenumber(
                omega,
                &job.incident,
                &g.outer_section(),
                &g.outer_medium(),
            )?;
            SweepRow {
                h_outer: Some(h_outer.magnitude()),
                gamma: Some(gamma_coupling(&job.incident, &job.inner, g)),
                ..SweepRow::empty(omega, RowRegime::AtCutoff)
            }
        }
        Err(e) => return Err(e),
    };
    row.check()?;
    Ok(row)
}

/// One row per grid frequency, in grid order regardless of `exec`.
pub fn run_sweep(job: &SweepJob, exec: Execution) -> Result<Vec<SweepRow>> {
    job.validate()?;
    let omegas = job.frequencies();
    exec.map(&omegas, |&w| sweep_row(job, w))
        .into_iter()
        .collect()
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:?}")).unwrap_or_default()
}

fn csv_err(e: csv::Error) -> Error {
    Error::config("csv", e)
}

pub fn write_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            format!("{:?}", r.omega),
            r.regime.to_string(),
            fmt_opt(r.h_outer),
            fmt_opt(r.h_inner),
            fmt_opt(r.kappa),
            fmt_opt(r.transmission),
            fmt_opt(r.reflection),
            fmt_opt(r.gamma),
            fmt_opt(r.lambda_mag),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::config("csv", e))?;
    Ok(())
}

pub fn to_csv_string(rows: &[SweepRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows)?;
    String::from_utf8(buf).map_err(|e| Error::config("csv", e))
}

/// Reads a table produced by [`write_csv`].
pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers().map_err(csv_err)?;
    if header.iter().ne(COLUMNS) {
        return Err(Error::config(
            "csv",
            format!("unexpected header {header:?}"),
        ));
    }
    let num = |s: &str, col: &str| -> Result<f64> {
        s.parse()
            .map_err(|e| Error::config(col, format!("{s:?}: {e}")))
    };
    let opt = |s: &str, col: &str| -> Result<Option<f64>> {
        if s.is_empty() {
            Ok(None)
        } else {
            num(s, col).map(Some)
        }
    };
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(csv_err)?;
        let f = |i: usize| rec.get(i).unwrap_or("");
        rows.push(SweepRow {
            omega: num(f(0), "omega")?,
            regime: f(1).parse()?,
            h_outer: opt(f(2), "h_outer")?,
            h_inner: opt(f(3), "h_inner")?,
            kappa: opt(f(4), "kappa")?,
            transmission: opt(f(5), "T")?,
            reflection: opt(f(6), "R")?,
            gamma: opt(f(7), "gamma")?,
            lambda_mag: opt(f(8), "lambda_mag")?,
        });
    }
    Ok(rows)
}
