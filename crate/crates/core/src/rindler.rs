//! Rindler coordinate maps, the conformal plane-wave modes of the two
//! wedges, and the thermal squeezing spectrum of the Minkowski vacuum.
//!
//! Region I covers x > c|t|, region II covers x < -c|t|. The wedge step
//! functions are enforced structurally through the region tag; mode
//! evaluation never checks coordinates numerically.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{ln_one_minus_exp_neg, log_sum_exp};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    I,
    II,
}

impl Region {
    pub fn mirrored(self) -> Region {
        match self {
            Region::I => Region::II,
            Region::II => Region::I,
        }
    }
}

/// A point in conformal wedge coordinates. `xi` in units of L, `tau` in
/// units of L/c. For region II the fields hold the primed coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RindlerPoint {
    pub region: Region,
    pub xi: f64,
    pub tau: f64,
}

/// Wedge coordinates -> Minkowski (ct, x). `accel` is aL/c^2.
pub fn rindler_to_minkowski(p: &RindlerPoint, accel: f64) -> (f64, f64) {
    debug_assert!(accel > 0.0);
    let scale = (accel * p.xi).exp() / accel;
    let ct = scale * (accel * p.tau).sinh();
    let x = scale * (accel * p.tau).cosh();
    match p.region {
        Region::I => (ct, x),
        Region::II => (ct, -x),
    }
}

/// Minkowski (ct, x) -> wedge coordinates; error if |x| <= c|t|.
///
/// Uses the factored light-cone products (x-ct)(x+ct) so the round trip
/// stays accurate when x and ct nearly cancel.
pub fn minkowski_to_rindler(ct: f64, x: f64, accel: f64) -> Result<RindlerPoint> {
    debug_assert!(accel > 0.0);
    let (region, u, v) = if x > 0.0 {
        (Region::I, x - ct, x + ct)
    } else {
        (Region::II, -x - ct, -x + ct)
    };
    if !(u > 0.0 && v > 0.0) {
        return Err(Error::OutsideWedges);
    }
    let xi = 0.5 / accel * (accel * accel * u * v).ln();
    let tau = 0.5 / accel * (v / u).ln();
    Ok(RindlerPoint { region, xi, tau })
}

/// Continuum-normalised Rindler mode value w_k at a wedge point.
///
/// Region I: e^{i(k xi - |k| c tau)} / sqrt(4 pi |k|); region II carries
/// the opposite sign on the spatial phase. k > 0 is right-moving in both
/// regions.
pub fn rindler_mode_value(k: f64, p: &RindlerPoint) -> Result<Complex64> {
    if k == 0.0 {
        return Err(Error::ZeroWavenumber);
    }
    let amp = 1.0 / (4.0 * std::f64::consts::PI * k.abs()).sqrt();
    let phase = match p.region {
        Region::I => k * p.xi - k.abs() * p.tau,
        Region::II => -k * p.xi - k.abs() * p.tau,
    };
    Ok(amp * Complex64::new(0.0, phase).exp())
}

/// Per-wavenumber squeezing parameters and thermal occupations relating the
/// Minkowski vacuum to paired region-I/II excitations.
///
/// Occupations are held as log <n_k>; at the parameter scales of interest
/// the linear values underflow long before the logs lose meaning.
#[derive(Debug, Clone)]
pub struct ThermalSpectrum {
    /// Ascending wavenumber grid, units 1/L, all > 0.
    pub wavenumbers: Vec<f64>,
    /// r_k = arctanh(e^{-pi k c^2/a}) per node.
    pub squeeze: Vec<f64>,
    /// log <n_k> = log sinh^2 r_k per node.
    pub log_occupation: Vec<f64>,
    /// 2 pi c^2/(a L): thermal exponent per unit wavenumber.
    pub beta: f64,
}

/// Evaluates the squeezing spectrum of the vacuum on a wavenumber grid.
/// `accel_group` is aL/c^2; grid nodes are in units of 1/L.
pub fn thermal_spectrum(wavenumbers: &[f64], accel_group: f64) -> ThermalSpectrum {
    debug_assert!(accel_group > 0.0);
    let beta = std::f64::consts::TAU / accel_group;
    let mut squeeze = Vec::with_capacity(wavenumbers.len());
    let mut log_occupation = Vec::with_capacity(wavenumbers.len());
    for &k in wavenumbers {
        debug_assert!(k > 0.0);
        let y = beta * k; // 2 pi k c^2 / a
        squeeze.push(squeeze_parameter(y));
        log_occupation.push(log_occupation_of(y));
    }
    ThermalSpectrum {
        wavenumbers: wavenumbers.to_vec(),
        squeeze,
        log_occupation,
        beta,
    }
}

/// r = arctanh(e^{-y/2}) evaluated as (ln(1+e^{-y/2}) - ln(1-e^{-y/2}))/2.
fn squeeze_parameter(y: f64) -> f64 {
    let half = 0.5 * y;
    if half > 745.0 {
        // e^{-half} underflows; arctanh(z) ~ z
        return (-half).exp();
    }
    0.5 * ((-half).exp().ln_1p() - ln_one_minus_exp_neg(half))
}

/// log <n> = -y - ln(1 - e^{-y}) for thermal exponent y = 2 pi k c^2/a.
fn log_occupation_of(y: f64) -> f64 {
    if y == f64::INFINITY {
        return f64::NEG_INFINITY;
    }
    -y - ln_one_minus_exp_neg(y)
}

impl ThermalSpectrum {
    /// log(1 + <n_k>) at node i; identically log <n_k> + beta*k.
    pub fn log_occupation_plus_one(&self, i: usize) -> f64 {
        self.log_occupation[i] + self.beta * self.wavenumbers[i]
    }

    /// log of sum_k weight * <n_k> * extra_k, all in log domain.
    pub fn fold(&self, log_terms: &[f64]) -> f64 {
        log_sum_exp(log_terms)
    }
}
