//! Single-detector observables for the vacuum input state: mean particle
//! number, photo-count statistics, characteristic function, temperature
//! estimator and the click density.
//!
//! Everything downstream of the spectra flows through log <d'd>. At the
//! parameter scales of the entanglement sweeps the mean is e^{-10^4} or
//! smaller, so any linear-domain intermediate would be identically zero.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mode::{DetectorMode, OverlapSpectrum};
use crate::params::{regime, PhysicalConfig, DEFAULT_REGIME_R1, DEFAULT_REGIME_R2};
use crate::rindler::ThermalSpectrum;

/// Mean particle number seen in the detected mode.
#[derive(Debug, Clone, Copy)]
pub struct NumberResult {
    /// log <d'd>; authoritative.
    pub log_mean: f64,
    /// exp(log_mean); may underflow to zero.
    pub mean: f64,
    /// log of the closed-form estimate
    /// -(2 pi c^2/(aL)) (N - pi c^2/(aL)), present when the asymptotic
    /// regime holds at the default ratios.
    pub log_mean_asymptotic: Option<f64>,
}

/// Closed-form log of the asymptotic mean number.
pub fn asymptotic_log_mean(config: &PhysicalConfig) -> f64 {
    let x = config.inv_accel();
    let beta = std::f64::consts::TAU * x;
    -beta * (f64::from(config.mode_index) - std::f64::consts::PI * x)
}

/// Folds the thermal occupation against the overlap spectrum:
/// log <d'd> = logsumexp_k [ log w_k + log <n_k> + log |f_k|^2 ].
pub fn mean_number(
    overlap: &OverlapSpectrum,
    thermal: &ThermalSpectrum,
) -> Result<NumberResult> {
    if !overlap.same_grid(&thermal.wavenumbers) {
        return Err(Error::GridMismatch);
    }
    let log_mean = overlap.log_fold(|i| thermal.log_occupation[i]);
    let flags = regime(&overlap.config, DEFAULT_REGIME_R1, DEFAULT_REGIME_R2);
    Ok(NumberResult {
        log_mean,
        mean: log_mean.exp(),
        log_mean_asymptotic: flags
            .asymptotic_valid
            .then(|| asymptotic_log_mean(&overlap.config)),
    })
}

/// Thermal photo-count distribution P(n) = m^n/(1+m)^{1+n} with
/// m = eta <d'd>, evaluated in log domain.
#[derive(Debug, Clone)]
pub struct PhotoCountDistribution {
    /// P(n) for n = 0..=n_max (linear; small entries may underflow).
    pub probs: Vec<f64>,
    /// log P(n) for the same n.
    pub log_probs: Vec<f64>,
    /// 1 - sum P(n) = (m/(1+m))^{n_max+1}.
    pub tail_mass: f64,
    pub log_tail_mass: f64,
    /// m = eta <d'd>.
    pub effective_mean: f64,
    pub log_effective_mean: f64,
}

pub fn photocount(number: &NumberResult, efficiency: f64, n_max: usize) -> PhotoCountDistribution {
    assert!(
        efficiency > 0.0 && efficiency <= 1.0,
        "efficiency out of (0,1]"
    );
    assert!(n_max >= 1);
    let log_m = efficiency.ln() + number.log_mean;
    let m = log_m.exp();
    // log(1+m) without assuming m is representable
    let log_1p_m = if log_m > 700.0 {
        log_m + (-log_m).exp().ln_1p()
    } else {
        m.ln_1p()
    };
    let log_q = log_m - log_1p_m; // log of the geometric ratio m/(1+m)
    let mut probs = Vec::with_capacity(n_max + 1);
    let mut log_probs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        // the n = 0 term carries no log_m factor (0 * -inf is nan)
        let lp = if n == 0 {
            -log_1p_m
        } else {
            n as f64 * log_m - (n as f64 + 1.0) * log_1p_m
        };
        log_probs.push(lp);
        probs.push(lp.exp());
    }
    let log_tail = (n_max as f64 + 1.0) * log_q;
    PhotoCountDistribution {
        probs,
        log_probs,
        tail_mass: log_tail.exp(),
        log_tail_mass: log_tail,
        effective_mean: m,
        log_effective_mean: log_m,
    }
}

impl PhotoCountDistribution {
    /// Mean of the full distribution: truncated sum plus the analytic tail
    /// sum_{n > n_max} n q^n (1-q) = q^{n_max+1} ((n_max+1) - n_max q)/(1-q).
    pub fn mean_with_tail(&self) -> f64 {
        let partial: f64 = self
            .probs
            .iter()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .sum();
        let q = self.effective_mean / (1.0 + self.effective_mean);
        let nm = self.probs.len() as f64 - 1.0;
        let tail = if q > 0.0 {
            q.powf(nm + 1.0) * ((nm + 1.0) - nm * q) / (1.0 - q)
        } else {
            0.0
        };
        partial + tail
    }
}

/// Characteristic function Z(lambda) = 1/(1 - (e^{i lambda} - 1) <d'd>).
pub fn characteristic_fn(number: &NumberResult, lambda: f64) -> Complex64 {
    let m = number.mean;
    let phase = Complex64::new(0.0, lambda).exp() - Complex64::new(1.0, 0.0);
    Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - phase * m)
}

/// P(n) recovered by Fourier inversion of Z on a trapezoid grid over
/// [0, 2 pi); self-test companion to [`photocount`], not a production path.
pub fn invert_characteristic(number: &NumberResult, n: usize, nodes: usize) -> f64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let lambda = std::f64::consts::TAU * j as f64 / nodes as f64;
        let z = characteristic_fn(number, lambda);
        sum += z * Complex64::new(0.0, -lambda * n as f64).exp();
    }
    (sum / nodes as f64).re
}

/// Temperature estimator and its closed-form comparators, all exported as
/// kT L/(hbar c).
#[derive(Debug, Clone, Copy)]
pub struct TemperatureResult {
    /// Mean Rindler energy of one excitation, sum_k w_k |f_k|^2 * k,
    /// in units hbar c/L.
    pub mean_energy: f64,
    /// mean_energy / log(1 + 1/<d'd>).
    pub kt_est: f64,
    /// a L/(2 pi c^2): the acceleration temperature scale.
    pub kt_unruh: f64,
    /// kt_unruh / (1 - pi c^2/(a L N)).
    pub kt_approx: f64,
}

pub fn temperature(
    overlap: &OverlapSpectrum,
    number: &NumberResult,
    config: &PhysicalConfig,
) -> TemperatureResult {
    // Rindler dispersion omega_k = |k| c on the renormalised spectrum
    let mean_energy: f64 = overlap
        .weights
        .iter()
        .zip(&overlap.coefficients)
        .zip(&overlap.wavenumbers)
        .map(|((w, f), k)| w * f.norm_sqr() * k)
        .sum();
    // log(1 + 1/<n>) from log <n> without leaving the log domain
    let l = number.log_mean;
    let denom = if l < 0.0 {
        -l + l.exp().ln_1p()
    } else {
        (-l).exp().ln_1p()
    };
    let kt_unruh = config.accel_group / std::f64::consts::TAU;
    let x = config.inv_accel();
    let kt_approx = kt_unruh / (1.0 - std::f64::consts::PI * x / f64::from(config.mode_index));
    TemperatureResult {
        mean_energy,
        kt_est: mean_energy / denom,
        kt_unruh,
        kt_approx,
    }
}

/// Click density of the generalised absorption model at (xi, tau = 0):
/// |psi_D(xi,0)|^2 <d'd>, carried in log domain.
#[derive(Debug, Clone, Copy)]
pub struct ClickDensity {
    pub log_density: f64,
}

impl ClickDensity {
    pub fn density(&self) -> f64 {
        self.log_density.exp()
    }
}

pub fn glauber_click_density(
    mode: &DetectorMode,
    number: &NumberResult,
    xi: f64,
) -> ClickDensity {
    ClickDensity {
        log_density: mode.log_envelope_abs2(xi) + number.log_mean,
    }
}
