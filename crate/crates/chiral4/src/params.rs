//! Physical parameter set and unit conventions.
//!
//! Internally everything runs in natural units (vacuum impedance absorbed,
//! susceptibilities dimensionless) and all rates are expressed as multiples
//! of the optical decay rate `gamma` after [`SchemeParams::nondimensionalize`].

use crate::Error;

/// All rates, couplings, and medium-strength constants of the four-level
/// scheme.
///
/// `gamma` is the decay rate of the upper electric levels |3⟩ and |4⟩,
/// `gamma2` the decay rate of the magnetic upper level |2⟩. `omega13` and
/// `omega42` are the Rabi frequencies of the two resonant drives. `eta` is
/// the dimensionless medium strength (density–dipole prefactor) multiplying
/// all responses, and `kappa` the ratio of magnetic to electric probe
/// coupling. `wavelength` documents the probe wavelength of the `eta`
/// mapping; it does not enter the dimensionless computation.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SchemeParams {
    pub gamma: f64,
    pub gamma2: f64,
    pub omega13: f64,
    pub omega42: f64,
    pub eta: f64,
    pub kappa: f64,
    pub wavelength: f64,
}

/// Default parameter set: gamma = 1e7 s⁻¹, gamma2 = gamma/137², drives at
/// omega13 = gamma and omega42 = 1e-2 gamma, eta = 1, kappa = 1/137,
/// wavelength 600 nm.
pub fn make_default_params() -> SchemeParams {
    let gamma = 1e7;
    SchemeParams {
        gamma,
        gamma2: gamma / (137.0 * 137.0),
        omega13: gamma,
        omega42: 1e-2 * gamma,
        eta: 1.0,
        kappa: 1.0 / 137.0,
        wavelength: 600e-9,
    }
}

impl SchemeParams {
    /// Validity: positive `gamma`, non-negative rates and couplings,
    /// `kappa` in [0, 1], everything finite.
    pub fn validate(&self) -> Result<(), Error> {
        let fields = [
            ("gamma", self.gamma),
            ("gamma2", self.gamma2),
            ("omega13", self.omega13),
            ("omega42", self.omega42),
            ("eta", self.eta),
            ("kappa", self.kappa),
            ("wavelength", self.wavelength),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::InvalidParams(format!("{name} is not finite")));
            }
        }
        if self.gamma <= 0.0 {
            return Err(Error::InvalidParams("gamma must be > 0".into()));
        }
        if self.gamma2 < 0.0 {
            return Err(Error::InvalidParams("gamma2 must be >= 0".into()));
        }
        if self.omega13 < 0.0 || self.omega42 < 0.0 {
            return Err(Error::InvalidParams("Rabi frequencies must be >= 0".into()));
        }
        if self.eta < 0.0 {
            return Err(Error::InvalidParams("eta must be >= 0".into()));
        }
        if !(0.0..=1.0).contains(&self.kappa) {
            return Err(Error::InvalidParams("kappa must lie in [0, 1]".into()));
        }
        if self.wavelength <= 0.0 {
            return Err(Error::InvalidParams("wavelength must be > 0".into()));
        }
        Ok(())
    }

    /// Express all rates and Rabi frequencies in units of `gamma`
    /// (`gamma` becomes exactly 1). Idempotent.
    pub fn nondimensionalize(&self) -> Result<SchemeParams, Error> {
        self.validate()?;
        Ok(SchemeParams {
            gamma: 1.0,
            gamma2: self.gamma2 / self.gamma,
            omega13: self.omega13 / self.gamma,
            omega42: self.omega42 / self.gamma,
            eta: self.eta,
            kappa: self.kappa,
            wavelength: self.wavelength,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_documented_values() {
        let p = make_default_params();
        assert_eq!(p.gamma, 1e7);
        let ratio = p.gamma2 / p.gamma;
        assert!((ratio - 1.0 / (137.0 * 137.0)).abs() < 1e-18);
        assert!((ratio - 5.3279e-5).abs() < 1e-9);
        assert_eq!(p.omega42 / p.omega13, 1e-2);
        assert_eq!(p.eta, 1.0);
        assert_eq!(p.kappa, 1.0 / 137.0);
        assert_eq!(p.wavelength, 600e-9);
        p.validate().unwrap();
    }

    #[test]
    fn nondimensionalize_scales_by_gamma() {
        let p = make_default_params().nondimensionalize().unwrap();
        assert_eq!(p.gamma, 1.0);
        assert_eq!(p.omega13, 1.0);
        assert_eq!(p.omega42, 0.01);
        assert_eq!(p.gamma2, 1.0 / (137.0 * 137.0));
    }

    #[test]
    fn nondimensionalize_is_idempotent() {
        let once = make_default_params().nondimensionalize().unwrap();
        let twice = once.nondimensionalize().unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn zero_gamma_is_rejected() {
        let p = SchemeParams {
            gamma: 0.0,
            ..make_default_params()
        };
        assert!(p.nondimensionalize().is_err());
    }

    #[test]
    fn out_of_range_values_are_rejected() {
        let base = make_default_params();
        for bad in [
            SchemeParams { eta: -1.0, ..base },
            SchemeParams { kappa: 1.5, ..base },
            SchemeParams {
                kappa: -0.1,
                ..base
            },
            SchemeParams {
                omega13: -1.0,
                ..base
            },
            SchemeParams {
                gamma2: -1.0,
                ..base
            },
            SchemeParams {
                gamma: f64::NAN,
                ..base
            },
            SchemeParams {
                wavelength: 0.0,
                ..base
            },
        ] {
            assert!(bad.validate().is_err());
        }
    }
}
