//! Detuning sweeps: grid construction, per-point evaluation in three modes,
//! row serialization to CSV/JSON, sweep summaries, and atomic file output.
//!
//! A failed point does not abort a sweep: its row carries the error message
//! and serializes as NaN columns (CSV) or null fields plus an `error` key
//! (JSON), so neighbouring points survive an isolated singular detuning.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::optics::{
    chiral_index, effective_chi_m, figure_of_merit, nonchiral_index, permittivity,
};
use crate::params::SchemeParams;
use crate::response::{exact_point, weak_point};
use crate::{Error, C64};

/// Which linearization produces a row, and which index its `n` column holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Linearization around the exact steady state; full bianisotropic index.
    Exact,
    /// Ground-state-clamped coherence response; full bianisotropic index.
    Weak,
    /// Exact response data, but the cross-couplings folded into an effective
    /// permeability instead of being treated as chirality.
    Nonchiral,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "weak" => Ok(Mode::Weak),
            "nonchiral" => Ok(Mode::Nonchiral),
            other => Err(Error::SweepSpec(format!(
                "unknown mode {other:?} (expected exact, weak or nonchiral)"
            ))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Weak => "weak",
            Mode::Nonchiral => "nonchiral",
        })
    }
}

/// A detuning sweep request. Detunings are in units of the fast decay rate.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub delta_min: f64,
    pub delta_max: f64,
    pub num_points: usize,
    pub mode: Mode,
    pub params: SchemeParams,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.delta_min.is_finite() && self.delta_max.is_finite()) {
            return Err(Error::SweepSpec("detuning bounds must be finite".into()));
        }
        if !(self.delta_min < self.delta_max) {
            return Err(Error::SweepSpec(format!(
                "empty detuning interval [{}, {}]",
                self.delta_min, self.delta_max
            )));
        }
        if self.num_points < 2 {
            return Err(Error::SweepSpec(format!(
                "need at least 2 grid points, got {}",
                self.num_points
            )));
        }
        self.params.validate()
    }
}

/// Uniform grid over `[min, max]` with both endpoints included. The points
/// are computed as `min + (i·span)/(n−1)` so that doubling the resolution
/// (`n → 2n−1`) reproduces the coarse points bit-for-bit, and a symmetric
/// interval with an odd count contains 0 exactly.
pub fn grid(min: f64, max: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let span = max - min;
    let mut g: Vec<f64> = (0..n)
        .map(|i| min + (i as f64 * span) / (n - 1) as f64)
        .collect();
    g[n - 1] = max;
    g
}

/// Everything one output row holds besides the detuning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowData {
    pub chi_e: C64,
    pub chi_m: C64,
    pub xi_eh: C64,
    pub xi_he: C64,
    pub epsilon: C64,
    pub mu: C64,
    pub n: C64,
    pub fom: f64,
}

/// One sweep row: either full data or the error message of a failed point.
#[derive(Debug, Clone)]
pub struct SpectrumRow {
    pub delta: f64,
    pub result: Result<RowData, String>,
}

/// Evaluate one detuning in the given mode. In [`Mode::Nonchiral`] the
/// `chi_m` and `mu` columns hold the effective values (cross-coupling folded
/// in) so that `mu = 1 + chi_m` stays true row-wise, while the `xi` columns
/// still report the raw cross-couplings that were folded.
pub fn evaluate_point(p: &SchemeParams, delta: f64, mode: Mode) -> Result<RowData, Error> {
    let one = C64::new(1.0, 0.0);
    let (c, chi_m_col, n) = match mode {
        Mode::Exact => {
            let c = exact_point(p, delta)?.coeffs;
            (c, c.chi_m, chiral_index(&c))
        }
        Mode::Weak => {
            let c = weak_point(p, delta)?.coeffs;
            (c, c.chi_m, chiral_index(&c))
        }
        Mode::Nonchiral => {
            let c = exact_point(p, delta)?.coeffs;
            (c, effective_chi_m(&c), nonchiral_index(&c))
        }
    };
    Ok(RowData {
        chi_e: c.chi_e,
        chi_m: chi_m_col,
        xi_eh: c.xi_eh,
        xi_he: c.xi_he,
        epsilon: permittivity(&c),
        mu: one + chi_m_col,
        n,
        fom: figure_of_merit(n),
    })
}

/// Run the sweep serially over the grid. Per-point failures are captured in
/// the row; only an invalid spec aborts the whole run.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SpectrumRow>, Error> {
    spec.validate()?;
    let pn = spec.params.nondimensionalize()?;
    Ok(grid(spec.delta_min, spec.delta_max, spec.num_points)
        .into_iter()
        .map(|delta| SpectrumRow {
            delta,
            result: evaluate_point(&pn, delta, spec.mode).map_err(|e| e.to_string()),
        })
        .collect())
}

/// Sweep extrema, each with the detuning where it occurs (first occurrence
/// wins on ties).
#[derive(Debug, Clone, Copy)]
pub struct Summary {
    /// Smallest Im n — negative means net gain somewhere in the window.
    pub min_im_n: (f64, f64),
    /// Largest |Re n|.
    pub max_abs_re_n: (f64, f64),
    /// Largest figure of merit over the refracting rows (|Re n − 1| > 0.01);
    /// `None` when no row refracts.
    pub max_fom_refracting: Option<(f64, f64)>,
}

pub fn summarize(rows: &[SpectrumRow]) -> Result<Summary, Error> {
    if rows.is_empty() {
        return Err(Error::Summary("no rows to summarize".into()));
    }
    let mut data = Vec::with_capacity(rows.len());
    for row in rows {
        match &row.result {
            Ok(d) => data.push((row.delta, d)),
            Err(msg) => {
                return Err(Error::Summary(format!(
                    "failed point at delta = {}: {msg}",
                    row.delta
                )))
            }
        }
    }
    let mut min_im_n = (f64::INFINITY, f64::NAN);
    let mut max_abs_re_n = (f64::NEG_INFINITY, f64::NAN);
    let mut max_fom: Option<(f64, f64)> = None;
    for (delta, d) in data {
        if d.n.im < min_im_n.0 {
            min_im_n = (d.n.im, delta);
        }
        if d.n.re.abs() > max_abs_re_n.0 {
            max_abs_re_n = (d.n.re.abs(), delta);
        }
        if (d.n.re - 1.0).abs() > 0.01 && max_fom.is_none_or(|(f, _)| d.fom > f) {
            max_fom = Some((d.fom, delta));
        }
    }
    Ok(Summary {
        min_im_n,
        max_abs_re_n,
        max_fom_refracting: max_fom,
    })
}

/// Column names shared by the CSV header and the JSON row objects.
const COLUMNS: [&str; 16] = [
    "delta", "re_chi_e", "im_chi_e", "re_chi_m", "im_chi_m", "re_xi_eh", "im_xi_eh", "re_xi_he",
    "im_xi_he", "re_eps", "im_eps", "re_mu", "im_mu", "re_n", "im_n", "fom",
];

pub const CSV_HEADER: &str = "delta,re_chi_e,im_chi_e,re_chi_m,im_chi_m,re_xi_eh,im_xi_eh,\
re_xi_he,im_xi_he,re_eps,im_eps,re_mu,im_mu,re_n,im_n,fom";

/// The fifteen value columns of a row, in header order.
fn row_values(d: &RowData) -> [f64; 15] {
    [
        d.chi_e.re,
        d.chi_e.im,
        d.chi_m.re,
        d.chi_m.im,
        d.xi_eh.re,
        d.xi_eh.im,
        d.xi_he.re,
        d.xi_he.im,
        d.epsilon.re,
        d.epsilon.im,
        d.mu.re,
        d.mu.im,
        d.n.re,
        d.n.im,
        d.fom,
    ]
}

pub fn rows_to_csv(rows: &[SpectrumRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        write!(out, "{}", row.delta).unwrap();
        match &row.result {
            Ok(d) => {
                for v in row_values(d) {
                    write!(out, ",{v}").unwrap();
                }
            }
            Err(_) => {
                for _ in 0..15 {
                    out.push_str(",NaN");
                }
            }
        }
        out.push('\n');
    }
    out
}

fn json_number(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else if v.is_infinite() {
        json!(if v > 0.0 { "inf" } else { "-inf" })
    } else {
        Value::Null
    }
}

pub fn row_to_json(row: &SpectrumRow) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("delta".into(), json!(row.delta));
    match &row.result {
        Ok(d) => {
            for (key, v) in COLUMNS[1..].iter().zip(row_values(d)) {
                obj.insert((*key).into(), json_number(v));
            }
        }
        Err(msg) => {
            for key in &COLUMNS[1..] {
                obj.insert((*key).into(), Value::Null);
            }
            obj.insert("error".into(), json!(msg));
        }
    }
    Value::Object(obj)
}

pub fn rows_to_json(rows: &[SpectrumRow]) -> String {
    let arr = Value::Array(rows.iter().map(row_to_json).collect());
    let mut s = serde_json::to_string_pretty(&arr).expect("static value serializes");
    s.push('\n');
    s
}

/// Write via a temporary file in the destination directory and rename into
/// place, so readers never observe a partially written file.
pub fn write_output_atomic(path: &Path, content: &str) -> Result<(), Error> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(content.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}
