//! Assembly of the rotating-frame Hamiltonian, the Lindblad dissipators, the
//! 16×16 generator acting on vectorized density matrices, and the probe
//! coupling superoperators.
//!
//! Levels are indexed 0..4 for |1⟩..|4⟩. The frame co-rotates with the two
//! resonant drives and with the common probe sideband, so the probe-free
//! generator is static at every detuning: the detuning enters only as the
//! diagonal frame-shift Hamiltonian −δ(|2⟩⟨2| + |4⟩⟨4|), which leaves
//! populations untouched and shifts the eight inter-block coherences by ±iδ.

use crate::params::SchemeParams;
use crate::{Error, C64, M16, M4};

/// Kronecker product for the column-major vectorization convention:
/// `vec(A ρ B) = kron(Bᵀ, A) · vec(ρ)`.
fn kron(x: &M4, y: &M4) -> M16 {
    let mut out = M16::zeros();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    out[(4 * i + k, 4 * j + l)] = x[(i, j)] * y[(k, l)];
                }
            }
        }
    }
    out
}

/// Superoperator of ρ ↦ −i [x, ρ].
pub fn commutator_superop(x: &M4) -> M16 {
    let id = M4::identity();
    (kron(&id, x) - kron(&x.transpose(), &id)) * C64::new(0.0, -1.0)
}

/// Superoperator of the dissipator ρ ↦ r (AρA† − ½{A†A, ρ}).
fn dissipator_superop(a: &M4, rate: f64) -> M16 {
    let id = M4::identity();
    let ada = a.adjoint() * a;
    let sandwich = kron(&a.conjugate(), a);
    let anticomm = (kron(&id, &ada) + kron(&ada.transpose(), &id)) * C64::new(0.5, 0.0);
    (sandwich - anticomm) * C64::new(rate, 0.0)
}

/// Drive Hamiltonian in the rotating frame: −(Ω₁₃/2) on the 1–3 coupling and
/// −(Ω₄₂/2) on the 4–2 coupling, zero diagonal (detuning terms are added by
/// [`assemble_liouvillian`]).
pub fn build_hamiltonian(p: &SchemeParams) -> Result<M4, Error> {
    p.validate()?;
    let mut h = M4::zeros();
    let c13 = C64::new(-p.omega13 / 2.0, 0.0);
    let c42 = C64::new(-p.omega42 / 2.0, 0.0);
    h[(0, 2)] = c13;
    h[(2, 0)] = c13;
    h[(3, 1)] = c42;
    h[(1, 3)] = c42;
    Ok(h)
}

/// The three decay channels, all terminating in |1⟩:
/// |1⟩⟨3| and |1⟩⟨4| at rate `gamma`, |1⟩⟨2| at rate `gamma2`.
pub fn build_dissipators(p: &SchemeParams) -> Result<Vec<(M4, f64)>, Error> {
    for rate in [p.gamma, p.gamma2] {
        if !rate.is_finite() || rate < 0.0 {
            return Err(Error::InvalidParams(format!("negative decay rate {rate}")));
        }
    }
    let mut channels = Vec::with_capacity(3);
    for (upper, rate) in [(2, p.gamma), (3, p.gamma), (1, p.gamma2)] {
        let mut a = M4::zeros();
        a[(0, upper)] = C64::new(1.0, 0.0);
        channels.push((a, rate));
    }
    Ok(channels)
}

/// Full generator at probe detuning `delta` (units of gamma):
/// `L[ρ] = −i[H + H_δ, ρ] + Σ r (AρA† − ½{A†A, ρ})` with
/// `H_δ = −δ(|2⟩⟨2| + |4⟩⟨4|)`.
pub fn assemble_liouvillian(h: &M4, dissipators: &[(M4, f64)], delta: f64) -> M16 {
    let mut h_total = *h;
    h_total[(1, 1)] += C64::new(-delta, 0.0);
    h_total[(3, 3)] += C64::new(-delta, 0.0);
    let mut l = commutator_superop(&h_total);
    for (a, rate) in dissipators {
        l += dissipator_superop(a, *rate);
    }
    l
}

/// Positive-frequency (co-rotating) electric probe coupling at unit Rabi
/// amplitude: −(1/2)|4⟩⟨3|, the raising operator of the 3–4 transition.
pub fn probe_raising_e() -> M4 {
    let mut x = M4::zeros();
    x[(3, 2)] = C64::new(-0.5, 0.0);
    x
}

/// Positive-frequency magnetic probe coupling at unit Rabi amplitude:
/// −(1/2)|2⟩⟨1|, the raising operator of the 1–2 transition.
pub fn probe_raising_h() -> M4 {
    let mut x = M4::zeros();
    x[(1, 0)] = C64::new(-0.5, 0.0);
    x
}

/// Commutator superoperators of the two probe couplings. The orientation of
/// the electric operator is the one for which the co-rotating readout
/// coherences are ρ₄₃ and ρ₂₁ and the drives-off magnetic response is
/// absorptive (Im > 0) at zero detuning.
pub struct ProbeSuperops {
    pub v_e: M16,
    pub v_h: M16,
}

pub fn build_probe_superops() -> ProbeSuperops {
    ProbeSuperops {
        v_e: commutator_superop(&probe_raising_e()),
        v_h: commutator_superop(&probe_raising_h()),
    }
}

/// Left action of the vectorized identity: row vector t with
/// `t · vec(ρ) = Tr ρ`. Used by trace-preservation checks.
pub fn trace_row() -> crate::V16 {
    let mut t = crate::V16::zeros();
    for k in 0..4 {
        t[crate::slot(k, k)] = C64::new(1.0, 0.0);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::make_default_params;
    use crate::{slot, unvec4, vec4};
    use proptest::prelude::*;

    fn nondim_defaults() -> SchemeParams {
        make_default_params().nondimensionalize().unwrap()
    }

    /// Max |(vec I)† L| over columns — zero iff L is trace-preserving.
    fn trace_defect(l: &M16) -> f64 {
        let t = trace_row();
        (0..16)
            .map(|c| (0..16).map(|r| t[r].conj() * l[(r, c)]).sum::<C64>().norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn hamiltonian_zero_drives_is_zero() {
        let p = SchemeParams {
            omega13: 0.0,
            omega42: 0.0,
            ..nondim_defaults()
        };
        assert_eq!(build_hamiltonian(&p).unwrap(), M4::zeros());
    }

    #[test]
    fn hamiltonian_default_couplings() {
        let h = build_hamiltonian(&nondim_defaults()).unwrap();
        assert_eq!(h[(0, 2)], C64::new(-0.5, 0.0));
        assert_eq!(h[(3, 1)], C64::new(-0.005, 0.0));
        // Hermitian, zero diagonal, no other couplings
        assert_eq!((h - h.adjoint()).norm(), 0.0);
        for i in 0..4 {
            assert_eq!(h[(i, i)], C64::new(0.0, 0.0));
        }
        assert_eq!(h[(0, 1)], C64::new(0.0, 0.0));
        assert_eq!(h[(2, 3)], C64::new(0.0, 0.0));
    }

    #[test]
    fn dissipators_have_documented_rates_and_shape() {
        let chans = build_dissipators(&nondim_defaults()).unwrap();
        assert_eq!(chans.len(), 3);
        let rates: Vec<f64> = chans.iter().map(|(_, r)| *r).collect();
        assert_eq!(rates, vec![1.0, 1.0, 1.0 / (137.0 * 137.0)]);
        for (a, _) in &chans {
            let nonzero: Vec<C64> = a.iter().copied().filter(|z| z.norm() != 0.0).collect();
            assert_eq!(nonzero, vec![C64::new(1.0, 0.0)]);
            // every channel lands in the ground state
            assert_eq!(a.row(0).iter().map(|z| z.norm()).sum::<f64>(), 1.0);
        }
        let zero_rate = SchemeParams {
            gamma2: 0.0,
            ..nondim_defaults()
        };
        assert_eq!(build_dissipators(&zero_rate).unwrap().len(), 3);
        assert!(build_dissipators(&SchemeParams {
            gamma2: -1.0,
            ..nondim_defaults()
        })
        .is_err());
    }

    #[test]
    fn single_decay_channel_action() {
        // H = 0, one channel |1⟩⟨3| at rate 1: L vec(|3⟩⟨3|) = vec(|1⟩⟨1| − |3⟩⟨3|)
        let mut a = M4::zeros();
        a[(0, 2)] = C64::new(1.0, 0.0);
        let l = assemble_liouvillian(&M4::zeros(), &[(a, 1.0)], 0.0);
        let mut rho = M4::zeros();
        rho[(2, 2)] = C64::new(1.0, 0.0);
        let out = unvec4(&(l * vec4(&rho)));
        let mut expected = M4::zeros();
        expected[(0, 0)] = C64::new(1.0, 0.0);
        expected[(2, 2)] = C64::new(-1.0, 0.0);
        assert!((out - expected).norm() < 1e-15);
    }

    #[test]
    fn generator_is_trace_preserving_at_all_detunings() {
        let p = nondim_defaults();
        let h = build_hamiltonian(&p).unwrap();
        let d = build_dissipators(&p).unwrap();
        for delta in [0.0, 0.3, -2.0, 17.5] {
            let l = assemble_liouvillian(&h, &d, delta);
            assert!(trace_defect(&l) < 1e-12, "delta = {delta}");
        }
    }

    #[test]
    fn detuning_enters_only_on_coherence_diagonal() {
        let p = nondim_defaults();
        let h = build_hamiltonian(&p).unwrap();
        let d = build_dissipators(&p).unwrap();
        let delta = 0.7;
        let diff = assemble_liouvillian(&h, &d, delta) - assemble_liouvillian(&h, &d, 0.0);
        // off-diagonal of the difference vanishes
        for r in 0..16 {
            for c in 0..16 {
                if r != c {
                    assert_eq!(diff[(r, c)].norm(), 0.0);
                }
            }
        }
        // +iδ on the coherences with a level-{2,4} row index and a
        // level-{1,3} column index, −iδ on their mirrors, 0 elsewhere
        for i in 0..4 {
            for j in 0..4 {
                let s = slot(i, j);
                let shifted_i = i == 1 || i == 3;
                let shifted_j = j == 1 || j == 3;
                let expect = match (shifted_i, shifted_j) {
                    (true, false) => C64::new(0.0, delta),
                    (false, true) => C64::new(0.0, -delta),
                    _ => C64::new(0.0, 0.0),
                };
                assert!((diff[(s, s)] - expect).norm() < 1e-15, "slot ({i},{j})");
            }
        }
    }

    #[test]
    fn generator_spectrum_is_contractive() {
        let p = nondim_defaults();
        let h = build_hamiltonian(&p).unwrap();
        let d = build_dissipators(&p).unwrap();
        for delta in [0.0, 1.3, -6.0] {
            let l = assemble_liouvillian(&h, &d, delta);
            let dm = nalgebra::DMatrix::<C64>::from_fn(16, 16, |r, c| l[(r, c)]);
            let eigs = dm.eigenvalues().expect("eigenvalue iteration converged");
            for ev in eigs.iter() {
                assert!(ev.re <= 1e-10, "delta = {delta}, eigenvalue {ev:?}");
            }
        }
    }

    #[test]
    fn probe_superops_structure() {
        let probes = build_probe_superops();
        // commutators are trace-annihilating
        let t = trace_row();
        for v in [&probes.v_e, &probes.v_h] {
            for c in 0..16 {
                let dot: C64 = (0..16).map(|r| t[r].conj() * v[(r, c)]).sum();
                assert!(dot.norm() < 1e-15);
            }
        }
        // acting on vec(|4⟩⟨4|) produces support only on the 3–4 coherence pair
        let mut p44 = M4::zeros();
        p44[(3, 3)] = C64::new(1.0, 0.0);
        let out = unvec4(&(probes.v_e * vec4(&p44)));
        for i in 0..4 {
            for j in 0..4 {
                let on_pair = (i == 3 && j == 2) || (i == 2 && j == 3);
                if !on_pair {
                    assert_eq!(out[(i, j)].norm(), 0.0, "({i},{j})");
                }
            }
        }
        assert!(out[(3, 2)].norm() > 0.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// Trace preservation holds across the parameter space, not only at
        /// the defaults.
        #[test]
        fn trace_preservation_random_params(
            om13 in 0.0..5.0f64,
            om42 in 0.0..5.0f64,
            g2 in 0.0..1.0f64,
            delta in -30.0..30.0f64,
        ) {
            let p = SchemeParams { omega13: om13, omega42: om42, gamma2: g2, ..nondim_defaults() };
            let l = assemble_liouvillian(
                &build_hamiltonian(&p).unwrap(),
                &build_dissipators(&p).unwrap(),
                delta,
            );
            prop_assert!(trace_defect(&l) < 1e-10);
        }

        /// The generator maps Hermitian matrices to Hermitian matrices:
        /// L vec(ρ†) is the adjoint-vector of L vec(ρ).
        #[test]
        fn hermiticity_preservation_random_state(
            re in proptest::array::uniform16(-1.0..1.0f64),
            im in proptest::array::uniform16(-1.0..1.0f64),
            delta in -5.0..5.0f64,
        ) {
            let p = nondim_defaults();
            let l = assemble_liouvillian(
                &build_hamiltonian(&p).unwrap(),
                &build_dissipators(&p).unwrap(),
                delta,
            );
            let m = M4::from_fn(|i, j| C64::new(re[4 * i + j], im[4 * i + j]));
            let lhs = unvec4(&(l * vec4(&m.adjoint())));
            let rhs = unvec4(&(l * vec4(&m)));
            prop_assert!((lhs - rhs.adjoint()).norm() < 1e-10 * (1.0 + m.norm()));
        }
    }
}
