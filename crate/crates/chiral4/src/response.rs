//! First-order sideband response to the electric and magnetic probe fields,
//! in two flavours: the exact linearization around the full steady state, and
//! the weak-excitation approximation that freezes all population in the
//! ground state and solves the coherence sector alone.
//!
//! Conventions. The probe enters in the rotating frame as a static
//! perturbation, so the co-rotating first-order correction `x` solves
//! `L(δ) x = −V vec(ρ₀)` with `V` the probe commutator superoperator. `x` is
//! made unique by requiring it orthogonal to the stationary direction, which
//! is the minimum-norm (pseudoinverse) solution. Four complex readouts form
//! the response matrix: the 4–3 coherence and the 2–1 coherence of `x` under
//! each of the two probes, normalized per unit probe amplitude.

use crate::liouvillian::{
    assemble_liouvillian, build_dissipators, build_hamiltonian, build_probe_superops, ProbeSuperops,
};
use crate::params::SchemeParams;
use crate::steady::solve_steady_state;
use crate::{max_abs, slot, unvec4, vec4, Error, C64, M16, M4, V16};

type M17 = nalgebra::SMatrix<C64, 17, 17>;
type V17 = nalgebra::SVector<C64, 17>;
type M12 = nalgebra::SMatrix<C64, 12, 12>;
type V12 = nalgebra::SVector<C64, 12>;

/// Slot of the electric readout coherence ρ₄₃ (row 4, column 3, 1-based).
const SLOT_E: usize = slot(3, 2);
/// Slot of the magnetic readout coherence ρ₂₁ (row 2, column 1, 1-based).
const SLOT_H: usize = slot(1, 0);

/// Population slots of the vectorized density matrix.
const POPS: [usize; 4] = [slot(0, 0), slot(1, 1), slot(2, 2), slot(3, 3)];
/// Coherence slots, ascending.
const COHS: [usize; 12] = [1, 2, 3, 4, 6, 7, 8, 9, 11, 12, 13, 14];

/// Raw sideband amplitudes per unit probe amplitude. First index: readout
/// transition (e = 4–3, h = 2–1); second index: which probe was applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseMatrix {
    pub r_ee: C64,
    pub r_eh: C64,
    pub r_he: C64,
    pub r_hh: C64,
}

/// Constitutive coefficients of the bianisotropic medium: electric and
/// magnetic susceptibilities and the two magnetoelectric cross-couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseCoefficients {
    pub chi_e: C64,
    pub chi_m: C64,
    pub xi_eh: C64,
    pub xi_he: C64,
}

/// One fully evaluated detuning point: reference state, raw sideband
/// amplitudes, and scaled constitutive coefficients.
#[derive(Debug, Clone, Copy)]
pub struct PointResponse {
    pub rho0: M4,
    pub raw: ResponseMatrix,
    pub coeffs: ResponseCoefficients,
}

/// Solve `L x = b` with `x` orthogonal to `anchor` via the bordered square
/// system `[[L, anchor], [anchorᴴ, 0]]`. For a trace-preserving `L` with
/// one-dimensional null space spanned by `anchor` and a traceless `b`, the
/// border multiplier vanishes and `x` is the pseudoinverse solution. A
/// residual above 1e−9 on the unbordered equation reports a singular
/// sideband at this detuning.
pub(crate) fn constrained_solve(l: &M16, anchor: &V16, b: &V16, delta: f64) -> Result<V16, Error> {
    let mut m = M17::zeros();
    for r in 0..16 {
        for c in 0..16 {
            m[(r, c)] = l[(r, c)];
        }
        m[(r, 16)] = anchor[r];
        m[(16, r)] = anchor[r].conj();
    }
    let mut rhs = V17::zeros();
    for r in 0..16 {
        rhs[r] = b[r];
    }
    let sol = m
        .lu()
        .solve(&rhs)
        .ok_or(Error::SingularSideband { delta })?;
    let x = V16::from_fn(|r, _| sol[r]);
    // NaN-safe: a non-finite residual must also be rejected
    if !(max_abs(&(l * x - b)) <= 1e-9) {
        return Err(Error::SingularSideband { delta });
    }
    Ok(x)
}

/// First-order sideband amplitudes around the exact steady state `rho0` of
/// the generator `l_delta`.
pub fn sideband_response(
    l_delta: &M16,
    probes: &ProbeSuperops,
    rho0: &M4,
    delta: f64,
) -> Result<ResponseMatrix, Error> {
    let v0 = vec4(rho0);
    let x_e = constrained_solve(l_delta, &v0, &(-(probes.v_e * v0)), delta)?;
    let x_h = constrained_solve(l_delta, &v0, &(-(probes.v_h * v0)), delta)?;
    Ok(ResponseMatrix {
        r_ee: x_e[SLOT_E],
        r_he: x_e[SLOT_H],
        r_eh: x_h[SLOT_E],
        r_hh: x_h[SLOT_H],
    })
}

/// Extract the 12×12 coherence block of a generator.
fn coherence_block(l: &M16) -> M12 {
    M12::from_fn(|r, c| l[(COHS[r], COHS[c])])
}

fn coherence_restrict(v: &V16) -> V12 {
    V12::from_fn(|r, _| v[COHS[r]])
}

/// Weak-excitation reference state: all population clamped in the ground
/// state, plus the drive-induced coherences obtained by solving the
/// coherence sector against that population. Not a physical density matrix
/// outside the weak-drive regime — the linearization keeps it anyway.
pub fn weak_reference_state(l: &M16, delta: f64) -> Result<M4, Error> {
    let lcc = coherence_block(l);
    let lu = lcc.lu();
    // source: the ground-population column of the population→coherence block
    let src = V12::from_fn(|r, _| -l[(COHS[r], POPS[0])]);
    let s0 = lu
        .solve(&src)
        .ok_or(Error::SingularCoherenceSystem { delta })?;
    let res = (lcc * s0 - src)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if !(res <= 1e-9) {
        return Err(Error::SingularCoherenceSystem { delta });
    }
    let mut rho = M4::zeros();
    rho[(0, 0)] = C64::new(1.0, 0.0);
    let mut v = vec4(&rho);
    for (k, &s) in COHS.iter().enumerate() {
        v[s] = s0[k];
    }
    Ok(unvec4(&v))
}

/// Sideband amplitudes in the weak-excitation approximation: populations are
/// frozen and only the 12 coherences respond to the probe.
pub fn weak_excitation_response(p: &SchemeParams, delta: f64) -> Result<ResponseMatrix, Error> {
    let pn = p.nondimensionalize()?;
    let l = assemble_liouvillian(&build_hamiltonian(&pn)?, &build_dissipators(&pn)?, delta);
    let probes = build_probe_superops();
    let rho_ref = weak_reference_state(&l, delta)?;
    let lcc = coherence_block(&l);
    let lu = lcc.lu();

    let solve = |v_probe: &M16| -> Result<V12, Error> {
        let b = coherence_restrict(&(-(v_probe * vec4(&rho_ref))));
        let x = lu
            .solve(&b)
            .ok_or(Error::SingularCoherenceSystem { delta })?;
        let residual = (lcc * x - b).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if !(residual <= 1e-9) {
            return Err(Error::SingularCoherenceSystem { delta });
        }
        Ok(x)
    };

    let x_e = solve(&probes.v_e)?;
    let x_h = solve(&probes.v_h)?;
    let pos_e = COHS.iter().position(|&s| s == SLOT_E).unwrap();
    let pos_h = COHS.iter().position(|&s| s == SLOT_H).unwrap();
    Ok(ResponseMatrix {
        r_ee: x_e[pos_e],
        r_he: x_e[pos_h],
        r_eh: x_h[pos_e],
        r_hh: x_h[pos_h],
    })
}

/// Scale raw sideband amplitudes into constitutive coefficients. The density
/// prefactor η multiplies everything; each magnetic coupling contributes one
/// factor of the impedance ratio κ.
pub fn constitutive_coefficients(r: &ResponseMatrix, p: &SchemeParams) -> ResponseCoefficients {
    let eta = C64::new(p.eta, 0.0);
    let kappa = C64::new(p.kappa, 0.0);
    ResponseCoefficients {
        chi_e: eta * r.r_ee,
        chi_m: eta * kappa * kappa * r.r_hh,
        xi_eh: eta * kappa * r.r_eh,
        xi_he: eta * kappa * r.r_he,
    }
}

/// Full exact-mode evaluation at one detuning.
pub fn exact_point(p: &SchemeParams, delta: f64) -> Result<PointResponse, Error> {
    let pn = p.nondimensionalize()?;
    let l = assemble_liouvillian(&build_hamiltonian(&pn)?, &build_dissipators(&pn)?, delta);
    let rho0 = solve_steady_state(&l)?;
    let raw = sideband_response(&l, &build_probe_superops(), &rho0, delta)?;
    Ok(PointResponse {
        rho0,
        raw,
        coeffs: constitutive_coefficients(&raw, &pn),
    })
}

/// Full weak-excitation evaluation at one detuning.
pub fn weak_point(p: &SchemeParams, delta: f64) -> Result<PointResponse, Error> {
    let pn = p.nondimensionalize()?;
    let l = assemble_liouvillian(&build_hamiltonian(&pn)?, &build_dissipators(&pn)?, delta);
    let rho0 = weak_reference_state(&l, delta)?;
    let raw = weak_excitation_response(&pn, delta)?;
    Ok(PointResponse {
        rho0,
        raw,
        coeffs: constitutive_coefficients(&raw, &pn),
    })
}
