//! Steady-state solver for the probe-free generator, density-matrix
//! validation, and a reference time integrator used to cross-check the
//! algebraic solution.

use crate::liouvillian::{assemble_liouvillian, build_dissipators, build_hamiltonian};
use crate::params::SchemeParams;
use crate::{max_abs, slot, unvec4, vec4, Error, C64, M16, M4, V16};

/// Solve `L vec(x) = 0, Tr x = 1` by replacing the first row of the
/// generator with the trace functional, without assuming the fixed point is
/// a density matrix. Used directly by oracles that perturb the generator
/// non-Hermitianly; checked against the unmodified generator
/// (residual ≤ 1e−10).
pub(crate) fn trace_normalized_fixed_point(l: &M16) -> Result<M4, Error> {
    let mut a = *l;
    let mut b = V16::zeros();
    for c in 0..16 {
        a[(0, c)] = C64::new(0.0, 0.0);
    }
    for k in 0..4 {
        a[(0, slot(k, k))] = C64::new(1.0, 0.0);
    }
    b[0] = C64::new(1.0, 0.0);

    let x = a
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::SteadyState("trace-replaced system is singular".into()))?;

    let residual = max_abs(&(l * x));
    // NaN-safe: non-finite residuals must also fail
    if !(residual <= 1e-10) {
        return Err(Error::SteadyState(format!(
            "stationarity residual {residual:.3e} exceeds 1e-10"
        )));
    }
    Ok(unvec4(&x))
}

/// Solve `L vec(ρ) = 0, Tr ρ = 1` for the stationary density matrix. The
/// raw fixed point is symmetrized, re-checked against the generator
/// (residual ≤ 1e−10) and validated as a density matrix.
pub fn solve_steady_state(l: &M16) -> Result<M4, Error> {
    let raw = trace_normalized_fixed_point(l)?;
    let rho = (raw + raw.adjoint()) * C64::new(0.5, 0.0);

    let residual = max_abs(&(l * vec4(&rho)));
    if !(residual <= 1e-10) {
        return Err(Error::SteadyState(format!(
            "stationarity residual {residual:.3e} exceeds 1e-10 after symmetrization"
        )));
    }
    validate_density_matrix(&rho)?;
    Ok(rho)
}

/// Assemble the generator for `p` at detuning `delta` and solve for its
/// steady state. Parameters are nondimensionalized first.
pub fn steady_state_at(p: &SchemeParams, delta: f64) -> Result<M4, Error> {
    let pn = p.nondimensionalize()?;
    let h = build_hamiltonian(&pn)?;
    let d = build_dissipators(&pn)?;
    solve_steady_state(&assemble_liouvillian(&h, &d, delta))
}

/// Eigenvalues of a Hermitian 4×4 matrix, ascending. The input is
/// symmetrized before factorization so roundoff-level defects are harmless.
pub fn hermitian_eigenvalues(m: &M4) -> [f64; 4] {
    let sym = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let mut evs: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
    evs.sort_by(f64::total_cmp);
    [evs[0], evs[1], evs[2], evs[3]]
}

/// Check Hermiticity (≤ 1e−12), unit trace (≤ 1e−12) and positivity
/// (eigenvalues ≥ −1e−10).
pub fn validate_density_matrix(rho: &M4) -> Result<(), Error> {
    let herm = (rho - rho.adjoint()).norm();
    if !(herm <= 1e-12) {
        return Err(Error::SteadyState(format!(
            "Hermiticity defect {herm:.3e} exceeds 1e-12"
        )));
    }
    let tr: C64 = (0..4).map(|k| rho[(k, k)]).sum();
    let tr_defect = (tr - C64::new(1.0, 0.0)).norm();
    if !(tr_defect <= 1e-12) {
        return Err(Error::SteadyState(format!(
            "trace defect {tr_defect:.3e} exceeds 1e-12"
        )));
    }
    let evs = hermitian_eigenvalues(rho);
    if !(evs[0] >= -1e-10) {
        return Err(Error::SteadyState(format!(
            "negative population {:.3e} below -1e-10",
            evs[0]
        )));
    }
    Ok(())
}

/// Verify that the generator has exactly one stationary direction: exactly
/// one singular value below 1e−8 times the largest.
pub fn check_unique_steady_state(l: &M16) -> Result<(), Error> {
    let dm = nalgebra::DMatrix::<C64>::from_fn(16, 16, |r, c| l[(r, c)]);
    let svals = dm.svd(false, false).singular_values;
    let max = svals.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return Err(Error::DegenerateSteadyState(
            "generator is identically zero".into(),
        ));
    }
    let small = svals.iter().filter(|s| **s < 1e-8 * max).count();
    match small {
        1 => Ok(()),
        0 => Err(Error::SteadyState(
            "generator has no stationary direction".into(),
        )),
        n => Err(Error::DegenerateSteadyState(format!(
            "{n} singular values below 1e-8 of the largest"
        ))),
    }
}

/// Fixed-step RK4 integration of `d vec(ρ)/dt = L vec(ρ)` from `rho0` to
/// `t_max`. The step is shrunk so the horizon is hit exactly. Requires
/// `dt · ‖L‖_F < 0.1`; a trace drift beyond 1e−6 at any step is an error.
pub fn time_evolve(l: &M16, rho0: &M4, t_max: f64, dt: f64) -> Result<M4, Error> {
    if !(t_max >= 0.0 && dt > 0.0 && t_max.is_finite() && dt.is_finite()) {
        return Err(Error::Integration(format!(
            "invalid horizon/step (t_max = {t_max}, dt = {dt})"
        )));
    }
    if dt * l.norm() >= 0.1 {
        return Err(Error::Integration(format!(
            "step too large: dt * |L| = {:.3e} >= 0.1",
            dt * l.norm()
        )));
    }
    if t_max == 0.0 {
        return Ok(*rho0);
    }
    let steps = (t_max / dt).ceil() as usize;
    let h = t_max / steps as f64;
    let hc = C64::new(h, 0.0);
    let half = C64::new(0.5, 0.0);
    let sixth = C64::new(1.0 / 6.0, 0.0);
    let two = C64::new(2.0, 0.0);

    let trace = |v: &V16| -> C64 { (0..4).map(|k| v[slot(k, k)]).sum() };
    let mut v = vec4(rho0);
    let tr0 = trace(&v);
    for _ in 0..steps {
        let k1 = l * v;
        let k2 = l * (v + k1 * (hc * half));
        let k3 = l * (v + k2 * (hc * half));
        let k4 = l * (v + k3 * hc);
        v += (k1 + k2 * two + k3 * two + k4) * (hc * sixth);
        let drift = (trace(&v) - tr0).norm();
        if !(drift <= 1e-6) {
            return Err(Error::Integration(format!(
                "trace drift {drift:.3e} exceeds 1e-6"
            )));
        }
    }
    Ok(unvec4(&v))
}
