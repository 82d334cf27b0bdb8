//! Correlations between two identical, counter-accelerating detectors that
//! probe mirrored modes in the two wedges: cross moment, number-product
//! correlator, the quadrature-variance entanglement witness, and the
//! log-scale entanglement estimator.

use crate::error::{Error, Result};
use crate::mode::OverlapSpectrum;
use crate::numerics::{log_diff_exp, log_sum_exp};
use crate::params::{regime, DEFAULT_REGIME_R1, DEFAULT_REGIME_R2};
use crate::rindler::{Region, ThermalSpectrum};
use crate::statistics::mean_number;

/// log-domain value of Re <d_I d_II> together with its sign. For mirrored
/// Gaussian modes the cross moment is real and positive.
#[derive(Debug, Clone, Copy)]
pub struct CrossMoment {
    pub log_abs: f64,
    pub sign: f64,
}

/// Second moments of the detector pair, all log-domain.
#[derive(Debug, Clone, Copy)]
pub struct TwoDetectorMoments {
    pub log_n_i: f64,
    pub log_n_ii: f64,
    /// log Re <d_I d_II> (positive for mirrored modes).
    pub log_cross: f64,
    /// Expanded witness (1 + <n_I> + <n_II> - 2 Re cross)^2; rounds to 1
    /// when the deviation underflows, in which case `log_estimator_arg`
    /// carries the information.
    pub duan_lhs: f64,
    /// log |<n_I> - Re cross| = log(cross - n) for the vacuum pair.
    pub log_estimator_arg: f64,
    /// Asymptotic-regime flag of the underlying config.
    pub regime_valid: bool,
}

/// Cross moment of mirrored spectra:
/// logsumexp_k [ log w_k + (log <n_k> + log(1+<n_k>))/2 + log f_k^2 ].
pub fn cross_moment(
    overlap_i: &OverlapSpectrum,
    overlap_ii: &OverlapSpectrum,
    thermal: &ThermalSpectrum,
) -> Result<CrossMoment> {
    if overlap_i.region != Region::I {
        return Err(Error::RegionMismatch {
            expected: Region::I,
            got: overlap_i.region,
        });
    }
    if overlap_ii.region != Region::II {
        return Err(Error::RegionMismatch {
            expected: Region::II,
            got: overlap_ii.region,
        });
    }
    if !overlap_i.same_grid(&overlap_ii.wavenumbers) || !overlap_i.same_grid(&thermal.wavenumbers)
    {
        return Err(Error::GridMismatch);
    }
    // (psi_I, w_I) (psi_II, w_II) = f_k^2 node-wise; log |f_I f_II| from the
    // stored log |f|^2 of both spectra keeps the fold symmetric in the pair
    let terms: Vec<f64> = (0..overlap_i.wavenumbers.len())
        .map(|i| {
            overlap_i.weights[i].ln()
                + 0.5 * (thermal.log_occupation[i] + thermal.log_occupation_plus_one(i))
                + 0.5 * (overlap_i.log_abs2[i] + overlap_ii.log_abs2[i])
        })
        .collect();
    Ok(CrossMoment {
        log_abs: log_sum_exp(&terms),
        sign: 1.0,
    })
}

/// Assembles the full moment set of the mirrored vacuum pair.
pub fn two_detector_moments(
    overlap_i: &OverlapSpectrum,
    overlap_ii: &OverlapSpectrum,
    thermal: &ThermalSpectrum,
) -> Result<TwoDetectorMoments> {
    let n_i = mean_number(overlap_i, thermal)?;
    let n_ii = mean_number(overlap_ii, thermal)?;
    let cross = cross_moment(overlap_i, overlap_ii, thermal)?;
    // sqrt(n(1+n)) > n node-wise, so the cross moment strictly dominates
    let log_estimator_arg = log_diff_exp(cross.log_abs, n_i.log_mean);
    let duan_lhs = duan_from_logs(n_i.log_mean, n_ii.log_mean, cross.log_abs);
    let flags = regime(&overlap_i.config, DEFAULT_REGIME_R1, DEFAULT_REGIME_R2);
    Ok(TwoDetectorMoments {
        log_n_i: n_i.log_mean,
        log_n_ii: n_ii.log_mean,
        log_cross: cross.log_abs,
        duan_lhs,
        log_estimator_arg,
        regime_valid: flags.asymptotic_valid,
    })
}

fn duan_from_logs(log_n_i: f64, log_n_ii: f64, log_cross: f64) -> f64 {
    // (1 + n_I + n_II - 2 cross)^2 with the deviation evaluated in log
    // domain first; when 2(cross - n) underflows the witness is 1 to
    // machine precision and the deviation is reported separately
    let log_sum_n = log_sum_exp(&[log_n_i, log_n_ii]);
    if log_cross >= log_sum_n - std::f64::consts::LN_2 {
        // usual vacuum ordering: 2 cross >= n_I + n_II
        let log_dev = log_diff_exp(log_cross + std::f64::consts::LN_2, log_sum_n);
        let d = log_dev.exp();
        (1.0 - d) * (1.0 - d)
    } else {
        let log_dev = log_diff_exp(log_sum_n, log_cross + std::f64::consts::LN_2);
        let d = log_dev.exp();
        (1.0 + d) * (1.0 + d)
    }
}

/// Number-product correlator <n_I n_II> = <n_I><n_II> + |<d_I d_II>|^2,
/// returned as the two log addends and their log-sum.
#[derive(Debug, Clone, Copy)]
pub struct NumberProduct {
    pub log_mean_product: f64,
    pub log_cross_squared: f64,
    pub log_total: f64,
}

pub fn number_product(moments: &TwoDetectorMoments) -> NumberProduct {
    let log_mean_product = moments.log_n_i + moments.log_n_ii;
    let log_cross_squared = 2.0 * moments.log_cross;
    NumberProduct {
        log_mean_product,
        log_cross_squared,
        log_total: log_sum_exp(&[log_mean_product, log_cross_squared]),
    }
}

/// Witness value with its log-domain deviation 2(cross - n); the state is
/// entangled iff the witness is below one, i.e. iff the deviation is
/// positive.
#[derive(Debug, Clone, Copy)]
pub struct DuanWitness {
    pub lhs: f64,
    /// log(cross - n) for the symmetric pair.
    pub log_deviation: f64,
}

pub fn duan_witness(moments: &TwoDetectorMoments) -> DuanWitness {
    DuanWitness {
        lhs: moments.duan_lhs,
        log_deviation: moments.log_estimator_arg,
    }
}

/// Entanglement estimator log|<d_I' d_I> - Re <d_I d_II>| + C, evaluated
/// wholly in log domain.
pub fn entanglement_estimator(moments: &TwoDetectorMoments, c: f64) -> f64 {
    moments.log_estimator_arg + c
}

/// Closed-form estimator shape -(pi c^2/aL)(N - pi c^2/(2 aL)) valid in the
/// asymptotic regime (additive constant dropped).
pub fn estimator_asymptotic(mode_index: u32, accel_group: f64) -> f64 {
    let x = 1.0 / accel_group;
    -std::f64::consts::PI * x * (f64::from(mode_index) - std::f64::consts::PI * x / 2.0)
}
