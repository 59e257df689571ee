//! Mapping from constitutive coefficients to refractive indices.
//!
//! Two indices are computed from the same coefficients: the full one for a
//! reciprocal bianisotropic medium, where the symmetric part of the
//! cross-coupling enters under the square root and the antisymmetric part
//! shifts the index directly, and a reduced one that folds the magnetic
//! cross-response into an effective permeability and ignores the electric
//! cross-response — the approximation whose validity the sweep comparisons
//! probe.

use crate::response::ResponseCoefficients;
use crate::C64;

/// Principal square root folded into the closed upper half-plane
/// (`Im ≥ 0`), the passive branch for a wave travelling in +z.
pub fn sqrt_upper_half(z: C64) -> C64 {
    let w = z.sqrt();
    if w.im < 0.0 {
        -w
    } else {
        w
    }
}

/// Relative permittivity `1 + χ_e`.
pub fn permittivity(c: &ResponseCoefficients) -> C64 {
    C64::new(1.0, 0.0) + c.chi_e
}

/// Relative permeability `1 + χ_m`.
pub fn permeability(c: &ResponseCoefficients) -> C64 {
    C64::new(1.0, 0.0) + c.chi_m
}

/// Refractive index of the bianisotropic medium:
/// `n = sqrt(εμ − ξ_s²) + i ξ_a` with `ξ_s = (ξ_EH + ξ_HE)/2` and
/// `ξ_a = (ξ_EH − ξ_HE)/2`.
pub fn chiral_index(c: &ResponseCoefficients) -> C64 {
    let half = C64::new(0.5, 0.0);
    let xs = (c.xi_eh + c.xi_he) * half;
    let xa = (c.xi_eh - c.xi_he) * half;
    sqrt_upper_half(permittivity(c) * permeability(c) - xs * xs) + C64::new(0.0, 1.0) * xa
}

/// Effective magnetic susceptibility of the reduced treatment: the magnetic
/// response to the probe's magnetic field plus its cross-response to the
/// electric field, `χ_m + ξ_HE`.
pub fn effective_chi_m(c: &ResponseCoefficients) -> C64 {
    c.chi_m + c.xi_he
}

/// Reduced (non-chiral) index `sqrt(ε (1 + χ_m + ξ_HE))`: the
/// cross-couplings are not treated as chirality but absorbed into an
/// effective permeability.
pub fn nonchiral_index(c: &ResponseCoefficients) -> C64 {
    sqrt_upper_half(permittivity(c) * (C64::new(1.0, 0.0) + effective_chi_m(c)))
}

/// Refraction-to-absorption ratio `|Re n| / |Im n|`; a lossless index maps
/// to +∞.
pub fn figure_of_merit(n: C64) -> f64 {
    if n.im == 0.0 {
        f64::INFINITY
    } else {
        (n.re / n.im).abs()
    }
}

/// Optical summary of one detuning point.
#[derive(Debug, Clone, Copy)]
pub struct OpticalPoint {
    pub epsilon: C64,
    pub mu: C64,
    pub n_chiral: C64,
    pub n_nonchiral: C64,
    /// Figure of merit of the chiral index.
    pub fom: f64,
}

pub fn optical_point(c: &ResponseCoefficients) -> OpticalPoint {
    let n_chiral = chiral_index(c);
    OpticalPoint {
        epsilon: permittivity(c),
        mu: permeability(c),
        n_chiral,
        n_nonchiral: nonchiral_index(c),
        fom: figure_of_merit(n_chiral),
    }
}
