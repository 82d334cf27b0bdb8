//! Dimensionless parameter groups and the unit conventions shared by the
//! whole crate.
//!
//! Natural units c = hbar = k_B = 1 with the cavity proper length L as the
//! length unit. Every exported quantity is dimensionless; restoration
//! factors are stated on the field that carries them:
//!
//! * wavenumbers carry 1/L, Rindler frequencies c/L,
//! * energies carry hbar*c/L,
//! * temperatures are exported as kT*L/(hbar*c).

use crate::error::{Error, Result};

/// Default ratio for the "N/(2 pi) much greater than c^2/(a L)" condition.
pub const DEFAULT_REGIME_R1: f64 = 2.0;
/// Default ratio for the "c^2/(a L) much greater than 1" condition.
pub const DEFAULT_REGIME_R2: f64 = 5.0;

/// The dimensionless parameter set of a single accelerated detector.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalConfig {
    /// a*L/c^2: proper acceleration times cavity proper length.
    pub accel_group: f64,
    /// Cavity eigenmode index N selected by the detector.
    pub mode_index: u32,
    /// Lambda*L: infra-red cutoff in units of the inverse cavity length.
    pub cutoff_scaled: f64,
    /// Detection efficiency eta in (0, 1].
    pub efficiency: f64,
    /// h/L: periodic box length for the discrete mode sum. `None` selects
    /// the continuum normalisation.
    pub box_length_scaled: Option<f64>,
}

impl PhysicalConfig {
    pub fn new(accel_group: f64, mode_index: u32) -> Self {
        Self {
            accel_group,
            mode_index,
            cutoff_scaled: 1.0,
            efficiency: 1.0,
            box_length_scaled: None,
        }
    }

    /// c^2/(a L), the inverse of the acceleration group.
    pub fn inv_accel(&self) -> f64 {
        1.0 / self.accel_group
    }
}

/// Validity of the asymptotic regime used by the closed-form estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegimeFlags {
    pub asymptotic_valid: bool,
}

/// Checks all invariants and returns the config unchanged.
pub fn validate(config: PhysicalConfig) -> Result<PhysicalConfig> {
    if !(config.accel_group > 0.0) || !config.accel_group.is_finite() {
        return Err(Error::Param {
            field: "accel_group",
            message: "must be positive",
        });
    }
    if config.mode_index < 1 {
        return Err(Error::Param {
            field: "mode_index",
            message: "must be at least 1",
        });
    }
    if !(config.cutoff_scaled > 0.0) || !config.cutoff_scaled.is_finite() {
        return Err(Error::Param {
            field: "cutoff_scaled",
            message: "must be positive",
        });
    }
    if !(config.efficiency > 0.0 && config.efficiency <= 1.0) {
        return Err(Error::Param {
            field: "efficiency",
            message: "must lie in (0,1]",
        });
    }
    if let Some(h) = config.box_length_scaled {
        if !(h >= 1.0) || !h.is_finite() {
            return Err(Error::Param {
                field: "box_length_scaled",
                message: "must be at least 1",
            });
        }
    }
    Ok(config)
}

/// Asymptotic-regime test: N/(2 pi) >= r1 * c^2/(aL) and c^2/(aL) >= r2.
pub fn regime(config: &PhysicalConfig, r1: f64, r2: f64) -> RegimeFlags {
    debug_assert!(r1 >= 1.0 && r2 >= 1.0);
    let x = config.inv_accel();
    let n_over_2pi = f64::from(config.mode_index) / std::f64::consts::TAU;
    RegimeFlags {
        asymptotic_valid: n_over_2pi >= r1 * x && x >= r2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3_config() -> PhysicalConfig {
        PhysicalConfig {
            accel_group: 0.01,
            mode_index: 800,
            cutoff_scaled: 1.0,
            efficiency: 1.0,
            box_length_scaled: None,
        }
    }

    #[test]
    fn accepts_reference_config() {
        assert!(validate(fig3_config()).is_ok());
    }

    #[test]
    fn rejects_zero_acceleration() {
        let mut c = fig3_config();
        c.accel_group = 0.0;
        let err = validate(c).unwrap_err();
        assert!(err.to_string().contains("accel_group must be positive"));
    }

    #[test]
    fn rejects_out_of_range_efficiency() {
        let mut c = fig3_config();
        c.efficiency = 1.5;
        let err = validate(c).unwrap_err();
        assert!(err.to_string().contains("efficiency must lie in (0,1]"));
    }

    #[test]
    fn rejects_small_box() {
        let mut c = fig3_config();
        c.box_length_scaled = Some(0.5);
        assert!(validate(c).is_err());
    }

    #[test]
    fn validate_is_idempotent() {
        let c = fig3_config();
        let once = validate(c.clone()).unwrap();
        let twice = validate(once.clone()).unwrap();
        assert_eq!(once, twice);
        assert_eq!(once, c);
    }

    #[test]
    fn regime_examples() {
        // c^2/aL = 50, N = 800: N/2pi ~ 127.3 >= 100 and 50 >= 5
        let c = PhysicalConfig::new(0.02, 800);
        assert!(regime(&c, 2.0, 5.0).asymptotic_valid);
        // c^2/aL = 0.5 fails the second condition
        let c = PhysicalConfig::new(2.0, 800);
        assert!(!regime(&c, 2.0, 5.0).asymptotic_valid);
        // N = 1, c^2/aL = 10 fails the first condition
        let c = PhysicalConfig::new(0.1, 1);
        assert!(!regime(&c, 2.0, 5.0).asymptotic_valid);
    }
}
