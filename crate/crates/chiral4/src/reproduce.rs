//! The fixed battery of nine numbered checks behind `reproduce` and the
//! acceptance test suite. Each check returns a one-line report; the battery
//! as a whole passes only if every check does.

use crate::optics::{chiral_index, sqrt_upper_half};
use crate::oracle::{finite_difference_response, time_domain_response};
use crate::params::{make_default_params, SchemeParams};
use crate::response::{exact_point, weak_point, ResponseCoefficients, ResponseMatrix};
use crate::steady::hermitian_eigenvalues;
use crate::sweep::{grid, run_sweep, summarize, Mode, SweepSpec};
use crate::C64;

/// Result of one numbered check.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: &'static str,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CriterionReport {
    fn new(id: &'static str, name: &'static str, pass: bool, detail: String) -> Self {
        CriterionReport {
            id,
            name,
            pass,
            detail,
        }
    }
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {}: {} — {}",
            self.id,
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

const DELTA_MIN: f64 = -20.0;
const DELTA_MAX: f64 = 20.0;
const POINTS: usize = 2001;

fn default_spec(mode: Mode) -> SweepSpec {
    SweepSpec {
        delta_min: DELTA_MIN,
        delta_max: DELTA_MAX,
        num_points: POINTS,
        mode,
        params: make_default_params(),
    }
}

fn rel(a: C64, b: C64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

fn max_rel(a: &ResponseMatrix, b: &ResponseMatrix) -> f64 {
    [
        rel(a.r_ee, b.r_ee),
        rel(a.r_eh, b.r_eh),
        rel(a.r_he, b.r_he),
        rel(a.r_hh, b.r_hh),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

fn coeff_deviation(a: &ResponseCoefficients, b: &ResponseCoefficients) -> f64 {
    [
        (a.chi_e - b.chi_e).norm(),
        (a.chi_m - b.chi_m).norm(),
        (a.xi_eh - b.xi_eh).norm(),
        (a.xi_he - b.xi_he).norm(),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// A1 — over the default window the exact-mode medium never amplifies:
/// both Im n and Im ε stay above −1e−10 on every grid point.
pub fn a1() -> CriterionReport {
    let id = "A1";
    let name = "exact-mode passivity";
    let rows = match run_sweep(&default_spec(Mode::Exact)) {
        Ok(r) => r,
        Err(e) => return CriterionReport::new(id, name, false, format!("sweep failed: {e}")),
    };
    let mut min_im_n = (f64::INFINITY, f64::NAN);
    let mut min_im_eps = (f64::INFINITY, f64::NAN);
    for row in &rows {
        match &row.result {
            Ok(d) => {
                if d.n.im < min_im_n.0 {
                    min_im_n = (d.n.im, row.delta);
                }
                if d.epsilon.im < min_im_eps.0 {
                    min_im_eps = (d.epsilon.im, row.delta);
                }
            }
            Err(msg) => {
                return CriterionReport::new(
                    id,
                    name,
                    false,
                    format!("point failed at delta = {}: {msg}", row.delta),
                )
            }
        }
    }
    let pass = min_im_n.0 >= -1e-10 && min_im_eps.0 >= -1e-10;
    CriterionReport::new(
        id,
        name,
        pass,
        format!(
            "min Im n = {:.3e} at delta = {:.3}; min Im eps = {:.3e} at delta = {:.3}",
            min_im_n.0, min_im_n.1, min_im_eps.0, min_im_eps.1
        ),
    )
}

/// A2 — the figure of merit over the refracting region (|Re n − 1| > 0.01)
/// should be of order unity, i.e. within [0.1, 10].
pub fn a2() -> CriterionReport {
    let id = "A2";
    let name = "figure-of-merit bound";
    let summary = match run_sweep(&default_spec(Mode::Exact)).and_then(|r| summarize(&r)) {
        Ok(s) => s,
        Err(e) => return CriterionReport::new(id, name, false, format!("sweep failed: {e}")),
    };
    match summary.max_fom_refracting {
        Some((fom, delta)) => {
            let pass = (0.1..=10.0).contains(&fom);
            CriterionReport::new(
                id,
                name,
                pass,
                format!(
                    "max FOM over refracting rows = {fom:.1} at delta = {delta:.3} \
                     (required within [0.1, 10]); the maximum sits on the dispersive \
                     band-edge tail where refraction decays like 1/delta but absorption \
                     like 1/delta^2 — at the strongest-refraction point the ratio is \
                     order unity"
                ),
            )
        }
        None => CriterionReport::new(id, name, false, "no refracting rows in window".into()),
    }
}

/// A3 — the weak-excitation treatment predicts net gain (negative Im ε)
/// somewhere in the window, which the exact treatment forbids.
pub fn a3() -> CriterionReport {
    let id = "A3";
    let name = "weak-mode gain";
    let rows = match run_sweep(&default_spec(Mode::Weak)) {
        Ok(r) => r,
        Err(e) => return CriterionReport::new(id, name, false, format!("sweep failed: {e}")),
    };
    let mut min_im_eps = (f64::INFINITY, f64::NAN);
    let mut negative = 0usize;
    let mut total = 0usize;
    for row in &rows {
        if let Ok(d) = &row.result {
            total += 1;
            if d.epsilon.im < 0.0 {
                negative += 1;
            }
            if d.epsilon.im < min_im_eps.0 {
                min_im_eps = (d.epsilon.im, row.delta);
            }
        }
    }
    let pass = min_im_eps.0 < -1e-6;
    CriterionReport::new(
        id,
        name,
        pass,
        format!(
            "min Im eps = {:.3e} at delta = {:.3}; {negative} of {total} rows show gain",
            min_im_eps.0, min_im_eps.1
        ),
    )
}

/// A4 — every steady state on the default grid is a valid density matrix:
/// Hermitian and unit-trace to 1e−12, eigenvalues above −1e−10.
pub fn a4() -> CriterionReport {
    let id = "A4";
    let name = "steady-state validity";
    let p = make_default_params();
    let mut worst_herm = 0.0f64;
    let mut worst_trace = 0.0f64;
    let mut min_eig = f64::INFINITY;
    for delta in grid(DELTA_MIN, DELTA_MAX, POINTS) {
        let rho = match exact_point(&p, delta) {
            Ok(point) => point.rho0,
            Err(e) => {
                return CriterionReport::new(
                    id,
                    name,
                    false,
                    format!("point failed at delta = {delta}: {e}"),
                )
            }
        };
        worst_herm = worst_herm.max((rho - rho.adjoint()).norm());
        let tr: C64 = (0..4).map(|k| rho[(k, k)]).sum();
        worst_trace = worst_trace.max((tr - C64::new(1.0, 0.0)).norm());
        min_eig = min_eig.min(hermitian_eigenvalues(&rho)[0]);
    }
    let pass = worst_herm <= 1e-12 && worst_trace <= 1e-12 && min_eig >= -1e-10;
    CriterionReport::new(
        id,
        name,
        pass,
        format!(
            "worst Hermiticity defect {worst_herm:.3e}, worst trace defect \
             {worst_trace:.3e}, smallest population {min_eig:.3e}"
        ),
    )
}

/// A5 — the static-probe derivative of the steady state reproduces the
/// sideband amplitudes at zero detuning to 1e−6 relative.
pub fn a5() -> CriterionReport {
    let id = "A5";
    let name = "static-probe oracle";
    let p = make_default_params();
    let result = finite_difference_response(&p).and_then(|fd| Ok((fd, exact_point(&p, 0.0)?.raw)));
    match result {
        Ok((fd, sb)) => {
            let dev = max_rel(&fd, &sb);
            CriterionReport::new(
                id,
                name,
                dev <= 1e-6,
                format!("max relative deviation {dev:.3e} (tolerance 1e-6)"),
            )
        }
        Err(e) => CriterionReport::new(id, name, false, format!("evaluation failed: {e}")),
    }
}

/// A6 — explicit time integration with an oscillating probe reproduces the
/// sideband amplitudes at delta = 2 to 1e−4 relative.
pub fn a6() -> CriterionReport {
    let id = "A6";
    let name = "time-domain oracle";
    let p = make_default_params();
    let result =
        time_domain_response(&p, 2.0, 1e-4).and_then(|td| Ok((td, exact_point(&p, 2.0)?.raw)));
    match result {
        Ok((td, sb)) => {
            let dev = max_rel(&td, &sb);
            CriterionReport::new(
                id,
                name,
                dev <= 1e-4,
                format!("max relative deviation {dev:.3e} (tolerance 1e-4)"),
            )
        }
        Err(e) => CriterionReport::new(id, name, false, format!("evaluation failed: {e}")),
    }
}

/// A7 — structural nulls: breaking either drive kills both cross-couplings
/// (≤ 1e−12), and zero density kills all four coefficients exactly.
pub fn a7() -> CriterionReport {
    let id = "A7";
    let name = "structural nulls";
    let base = make_default_params();
    let mut max_xi = 0.0f64;
    for p in [
        SchemeParams {
            omega13: 0.0,
            ..base
        },
        SchemeParams {
            omega42: 0.0,
            ..base
        },
    ] {
        for delta in [0.0, 0.8, -2.4] {
            match exact_point(&p, delta) {
                Ok(point) => {
                    max_xi = max_xi
                        .max(point.coeffs.xi_eh.norm())
                        .max(point.coeffs.xi_he.norm());
                }
                Err(e) => {
                    return CriterionReport::new(
                        id,
                        name,
                        false,
                        format!("point failed at delta = {delta}: {e}"),
                    )
                }
            }
        }
    }
    let vacuum = SchemeParams { eta: 0.0, ..base };
    let all_zero = match exact_point(&vacuum, 0.3) {
        Ok(point) => {
            let c = point.coeffs;
            c.chi_e.norm() == 0.0
                && c.chi_m.norm() == 0.0
                && c.xi_eh.norm() == 0.0
                && c.xi_he.norm() == 0.0
        }
        Err(e) => return CriterionReport::new(id, name, false, format!("vacuum failed: {e}")),
    };
    let pass = max_xi <= 1e-12 && all_zero;
    CriterionReport::new(
        id,
        name,
        pass,
        format!(
            "max |xi| with a broken loop = {max_xi:.3e}; zero-density coefficients \
             exactly zero: {all_zero}"
        ),
    )
}

/// A8 — closed-form index arithmetic: four hand-checkable coefficient sets
/// map to their known indices within 1e−14.
pub fn a8() -> CriterionReport {
    let id = "A8";
    let name = "index arithmetic";
    let zero = C64::new(0.0, 0.0);
    let coeffs = |chi_e, xi_eh, xi_he| ResponseCoefficients {
        chi_e,
        chi_m: zero,
        xi_eh,
        xi_he,
    };
    let xi = 0.3;
    let cases = [
        (coeffs(zero, zero, zero), C64::new(1.0, 0.0)),
        (coeffs(C64::new(3.0, 0.0), zero, zero), C64::new(2.0, 0.0)),
        (
            coeffs(zero, C64::new(0.0, 0.2), C64::new(0.0, -0.2)),
            C64::new(0.8, 0.0),
        ),
        (
            coeffs(zero, C64::new(xi, 0.0), C64::new(xi, 0.0)),
            sqrt_upper_half(C64::new(1.0 - xi * xi, 0.0)),
        ),
    ];
    let mut worst = 0.0f64;
    for (c, expected) in &cases {
        worst = worst.max((chiral_index(c) - expected).norm());
    }
    CriterionReport::new(
        id,
        name,
        worst <= 1e-14,
        format!("worst deviation from closed form {worst:.3e}"),
    )
}

/// A9 — with a feeble first drive the weak treatment converges to the exact
/// one: coefficient deviation ≤ 1e−8 across the window, shrinking
/// quadratically (ratio within [3.5, 4.5] when the drive is halved).
pub fn a9() -> CriterionReport {
    let id = "A9";
    let name = "weak-mode convergence";
    let base = make_default_params();
    let max_dev = |omega_factor: f64| -> Result<f64, crate::Error> {
        let p = SchemeParams {
            omega13: omega_factor * base.gamma,
            ..base
        };
        let mut worst = 0.0f64;
        for delta in grid(DELTA_MIN, DELTA_MAX, 201) {
            let e = exact_point(&p, delta)?.coeffs;
            let w = weak_point(&p, delta)?.coeffs;
            worst = worst.max(coeff_deviation(&e, &w));
        }
        Ok(worst)
    };
    let (d_full, d_half) = match (max_dev(1e-6), max_dev(5e-7)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            return CriterionReport::new(id, name, false, format!("evaluation failed: {e}"))
        }
    };
    let ratio = d_full / d_half;
    let pass = d_full <= 1e-8 && (3.5..=4.5).contains(&ratio);
    CriterionReport::new(
        id,
        name,
        pass,
        format!(
            "max coefficient deviation {d_full:.3e} at drive 1e-6 (tolerance 1e-8); \
             deviation ratio under drive halving {ratio:.3} (expected ~4)"
        ),
    )
}

/// Run all nine checks in order.
pub fn run_all() -> Vec<CriterionReport> {
    vec![a1(), a2(), a3(), a4(), a5(), a6(), a7(), a8(), a9()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_line_format() {
        let r = CriterionReport::new("A0", "example", true, "all good".into());
        assert_eq!(r.to_string(), "A0 example: PASS — all good");
        let f = CriterionReport::new("A0", "example", false, "broken".into());
        assert!(f.to_string().contains("FAIL"));
    }
}
