//! Perturbative matter-field interaction: second-order response integrals
//! of a monopole detector dragged along the accelerated worldline, the
//! vacuum-fluctuation term, and the factorised click probability.
//!
//! The double time integrals are reduced to nested cumulative sums over a
//! uniform grid (the integrand separates in the two times once the phases
//! are factored), so each kernel costs O(n) in the sample count.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mode::OverlapSpectrum;
use crate::numerics::{composite_gauss_legendre, cumulative_trapezoid};

/// Minimum admissible sampling density for the spectral time series.
pub const MIN_SAMPLES_PER_PERIOD: f64 = 16.0;

/// Discrete energy levels of the detector's internal monopole moment.
#[derive(Debug, Clone)]
pub struct MonopoleSpec {
    /// (E - E_0)/hbar per excited level, ascending, units c/L.
    pub gaps: Vec<f64>,
    /// |<E| m(0) |E_0>|^2 per level, dimensionless.
    pub matrix_elems: Vec<f64>,
    /// Coupling mu; probabilities scale with mu^2.
    pub coupling: f64,
}

impl MonopoleSpec {
    pub fn new(gaps: Vec<f64>, matrix_elems: Vec<f64>, coupling: f64) -> Result<Self> {
        if gaps.is_empty() {
            return Err(Error::Monopole("needs at least one level"));
        }
        if gaps.len() != matrix_elems.len() {
            return Err(Error::Monopole("gaps and matrix elements differ in length"));
        }
        if gaps.iter().any(|&g| !(g > 0.0)) {
            return Err(Error::Monopole("gaps must be positive"));
        }
        if gaps.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Monopole("gaps must be strictly ascending"));
        }
        if matrix_elems.iter().any(|&m| !(m >= 0.0)) {
            return Err(Error::Monopole("matrix elements must be non-negative"));
        }
        if !(coupling > 0.0) {
            return Err(Error::Monopole("coupling must be positive"));
        }
        Ok(Self {
            gaps,
            matrix_elems,
            coupling,
        })
    }

    /// Two-level monopole resonant with the mode's central frequency and
    /// unit matrix element; mu = 1e-3 keeps second order self-consistent.
    pub fn resonant_two_level(spectrum: &OverlapSpectrum) -> Self {
        Self {
            gaps: vec![spectrum.central_wavenumber],
            matrix_elems: vec![1.0],
            coupling: 1e-3,
        }
    }
}

/// Measurement window along the detector worldline.
#[derive(Debug, Clone, Copy)]
pub struct WindowSpec {
    /// Window start tau_0 (units L/c).
    pub tau0: f64,
    /// Duration T > 0.
    pub duration: f64,
    /// Detector position xi_0 (units L).
    pub xi0: f64,
}

impl WindowSpec {
    pub fn new(tau0: f64, duration: f64, xi0: f64) -> Self {
        assert!(duration > 0.0, "window duration must be positive");
        Self {
            tau0,
            duration,
            xi0,
        }
    }
}

/// Second moments of the field state in the detected mode.
#[derive(Debug, Clone, Copy)]
pub struct StateMoments {
    /// log <d'd>.
    pub log_number: f64,
    /// <d^2>.
    pub d_squared: Complex64,
}

impl StateMoments {
    pub fn vacuum(log_mean: f64) -> Self {
        Self {
            log_number: log_mean,
            d_squared: Complex64::new(0.0, 0.0),
        }
    }

    pub fn one_particle() -> Self {
        Self {
            log_number: 0.0,
            d_squared: Complex64::new(0.0, 0.0),
        }
    }

    pub fn coherent(gamma: Complex64) -> Self {
        Self {
            log_number: gamma.norm_sqr().ln(),
            d_squared: gamma * gamma,
        }
    }

    pub fn number(&self) -> f64 {
        self.log_number.exp()
    }
}

/// The mode evaluated along the worldline, uniformly sampled.
#[derive(Debug, Clone)]
pub struct ModeTimeSeries {
    /// Absolute time of the first sample.
    pub start: f64,
    pub dt: f64,
    pub values: Vec<Complex64>,
    /// Central frequency of the underlying spectrum (rate checks).
    pub central_frequency: f64,
}

impl ModeTimeSeries {
    pub fn duration(&self) -> f64 {
        self.dt * (self.values.len() - 1) as f64
    }
}

// Spectrum nodes this far (in log |f|^2) below the peak contribute nothing
// representable to the series and are skipped.
const SUPPORT_LOG_WINDOW: f64 = 600.0;

/// Samples psi_D(xi_0, tau) on the given uniform times via the spectral sum.
/// Errors when the sampling rate is below 16 points per optical period.
pub fn mode_time_series(
    spectrum: &OverlapSpectrum,
    xi0: f64,
    taus: &[f64],
) -> Result<ModeTimeSeries> {
    assert!(taus.len() >= 2, "need at least two samples");
    let dt = taus[1] - taus[0];
    assert!(dt > 0.0);
    for w in taus.windows(2) {
        assert!(
            ((w[1] - w[0]) - dt).abs() <= 1e-9 * dt,
            "time grid must be uniform"
        );
    }
    let period = std::f64::consts::TAU / spectrum.central_wavenumber;
    let rate = period / dt;
    if rate < MIN_SAMPLES_PER_PERIOD {
        return Err(Error::Undersampled {
            got: rate,
            need: MIN_SAMPLES_PER_PERIOD,
        });
    }
    let max_log = spectrum
        .log_abs2
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let kept: Vec<usize> = (0..spectrum.wavenumbers.len())
        .filter(|&i| spectrum.log_abs2[i] >= max_log - SUPPORT_LOG_WINDOW)
        .collect();
    let mut values = Vec::with_capacity(taus.len());
    for &tau in taus {
        let mut sum = Complex64::new(0.0, 0.0);
        for &i in &kept {
            let k = spectrum.wavenumbers[i];
            let amp = 1.0 / (4.0 * std::f64::consts::PI * k).sqrt();
            let phase = k * xi0 - k * tau;
            sum += spectrum.weights[i]
                * spectrum.coefficients[i]
                * amp
                * Complex64::new(0.0, phase).exp();
        }
        values.push(sum);
    }
    Ok(ModeTimeSeries {
        start: taus[0],
        dt,
        values,
        central_frequency: spectrum.central_wavenumber,
    })
}

/// Uniform sample times covering a window, resolving `max_frequency` with
/// 32 points per period.
pub fn window_times(window: &WindowSpec, max_frequency: f64) -> Vec<f64> {
    let dt_target = std::f64::consts::TAU / (32.0 * max_frequency);
    let n = (window.duration / dt_target).ceil() as usize + 1;
    let n = n.max(2);
    let dt = window.duration / (n - 1) as f64;
    (0..n).map(|j| window.tau0 + dt * j as f64).collect()
}

/// Triangle double integral
/// int_0^T d eta1 int_0^eta1 d eta2 g1(eta1) g2(eta2) with
/// g1 = e^{+i gap eta} psi^(c1), g2 = e^{-i gap eta} psi^(c2),
/// where ^(c) optionally conjugates the series.
fn triangle_integral(
    series: &ModeTimeSeries,
    gap: f64,
    conj_inner: bool,
    conj_outer: bool,
) -> Complex64 {
    let n = series.values.len();
    let dt = series.dt;
    let inner: Vec<Complex64> = (0..n)
        .map(|j| {
            let eta = dt * j as f64;
            let v = if conj_inner {
                series.values[j].conj()
            } else {
                series.values[j]
            };
            Complex64::new(0.0, -gap * eta).exp() * v
        })
        .collect();
    let cum = cumulative_trapezoid(&inner, dt);
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let eta = dt * j as f64;
        let v = if conj_outer {
            series.values[j].conj()
        } else {
            series.values[j]
        };
        let outer = Complex64::new(0.0, gap * eta).exp() * v;
        let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
        sum += w * outer * cum[j];
    }
    sum * dt
}

/// Resonant response kernel: the conjugated-product double integral plus its
/// complex conjugate. Analytically equals |int e^{i gap eta} psi d eta|^2.
pub fn rwa_response(series: &ModeTimeSeries, gap: f64) -> f64 {
    debug_assert!(gap > 0.0);
    2.0 * triangle_integral(series, gap, true, false).re
}

/// Magnitude of the non-conjugated (double-optical-frequency) double
/// integral, the leading term dropped by the rotating wave approximation.
pub fn counter_rotating(series: &ModeTimeSeries, gap: f64) -> f64 {
    triangle_integral(series, gap, false, false).norm()
}

/// Vacuum fluctuation contribution over finite wavenumber cutoffs:
/// int dk/(4 pi k) * 2(1 - cos((gap + k) T))/(gap + k)^2, plus its
/// conjugate (factor two). The time integral is the Fejer kernel, done
/// analytically; the k integral by panel quadrature resolving the cosine.
pub fn vacuum_term(gap: f64, window: &WindowSpec, k_min: f64, k_max: f64) -> Result<f64> {
    if !(k_min > 0.0 && k_max > k_min) {
        return Err(Error::InvalidCutoffs);
    }
    let t = window.duration;
    let range = k_max - k_min;
    let osc_panel = std::f64::consts::TAU / (6.0 * t);
    let panels = (range / osc_panel.min(range / 8.0)).ceil() as usize;
    let (nodes, weights) = composite_gauss_legendre(k_min, k_max, panels, 8);
    let mut sum = 0.0;
    for (&k, &w) in nodes.iter().zip(&weights) {
        let omega = gap + k;
        let fejer = 2.0 * (1.0 - (omega * t).cos()) / (omega * omega);
        sum += w * fejer / (4.0 * std::f64::consts::PI * k);
    }
    Ok(2.0 * sum)
}

/// Response breakdown per measurement window. Kernel-level fields carry no
/// coupling factor; `alpha` and the click probabilities fold in mu^2 and
/// the matrix elements.
#[derive(Debug, Clone, Copy)]
pub struct ResponseBreakdown {
    /// sum_E |m_E|^2 (conjugated double integral + c.c.).
    pub rwa_term: f64,
    /// sum_E |m_E|^2 |counter-rotating integral|.
    pub counter_term: f64,
    /// sum_E |m_E|^2 |anti-resonant conjugated-outer integral|.
    pub anti_term: f64,
    /// sum_E |m_E|^2 |doubly-conjugated integral|.
    pub conj_term: f64,
    /// sum_E |m_E|^2 * vacuum fluctuation term.
    pub vacuum_term: f64,
    /// mu^2 * rwa_term: the state-independent click factor.
    pub alpha: f64,
    /// alpha * <d'd>.
    pub click_factored: f64,
    /// ln(alpha) + log <d'd>; authoritative when the mean underflows.
    pub log_click_factored: f64,
    /// Full second-order probability with all normally-ordered terms and
    /// the vacuum contribution.
    pub click_full: f64,
    /// Triangle bound on |click_full - click_factored| assembled from the
    /// counter-type and vacuum terms.
    pub remainder_bound: f64,
    /// Largest probability encountered; must stay well below one.
    pub perturbativity: f64,
}

/// Full second-order click probability for a window, with the factorised
/// form alpha * <d'd> alongside the exact normally-ordered evaluation.
///
/// Errors when the probability exceeds the hard perturbative ceiling 0.1.
pub fn click_probability(
    monopole: &MonopoleSpec,
    window: &WindowSpec,
    spectrum: &OverlapSpectrum,
    state: &StateMoments,
) -> Result<ResponseBreakdown> {
    let k_support = spectrum.central_wavenumber + 30.0 / spectrum.sigma;
    let max_gap = *monopole.gaps.last().unwrap();
    let taus = window_times(window, max_gap + k_support);
    let series = mode_time_series(spectrum, window.xi0, &taus)?;

    let vac_k_min = spectrum.config.cutoff_scaled;
    let vac_k_max = 4.0 * spectrum.central_wavenumber;

    let n = state.number();
    let d2 = state.d_squared;

    let mut rwa_term = 0.0;
    let mut counter_term = 0.0;
    let mut anti_term = 0.0;
    let mut conj_term = 0.0;
    let mut vac_term = 0.0;
    let mut full = 0.0;
    for (&gap, &m2) in monopole.gaps.iter().zip(&monopole.matrix_elems) {
        let k_rwa = triangle_integral(&series, gap, true, false);
        let c_counter = triangle_integral(&series, gap, false, false);
        let c_anti = triangle_integral(&series, gap, false, true);
        let c_conj = triangle_integral(&series, gap, true, true);
        let f_vac = vacuum_term(gap, window, vac_k_min, vac_k_max)?;
        rwa_term += m2 * 2.0 * k_rwa.re;
        counter_term += m2 * c_counter.norm();
        anti_term += m2 * c_anti.norm();
        conj_term += m2 * c_conj.norm();
        vac_term += m2 * f_vac;
        // normally-ordered expansion: <d'd> picks up both mixed orderings,
        // <d^2> the plain product, <d'^2> the doubly conjugated one
        full += m2
            * (n * (2.0 * k_rwa.re + 2.0 * c_anti.re)
                + 2.0 * (d2 * c_counter).re
                + 2.0 * (d2.conj() * c_conj).re
                + f_vac);
    }
    let g = monopole.coupling * monopole.coupling;
    let alpha = g * rwa_term;
    let log_click_factored = alpha.ln() + state.log_number;
    let click_factored = g * rwa_term * n;
    let click_full = g * full;
    let remainder_bound =
        g * (2.0 * n * anti_term + 2.0 * d2.norm() * (counter_term + conj_term) + vac_term);
    let perturbativity = click_full.abs().max(click_factored);
    if perturbativity > 0.1 {
        return Err(Error::NonPerturbative {
            probability: perturbativity,
        });
    }
    Ok(ResponseBreakdown {
        rwa_term,
        counter_term,
        anti_term,
        conj_term,
        vacuum_term: vac_term,
        alpha,
        click_factored,
        log_click_factored,
        click_full,
        remainder_bound,
        perturbativity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mode::{build_mode, overlap_spectrum, GridSpec};
    use crate::params::{validate, PhysicalConfig};

    fn spectrum(n: u32, accel: f64) -> OverlapSpectrum {
        let cfg = validate(PhysicalConfig::new(accel, n)).unwrap();
        let mode = build_mode(&cfg);
        overlap_spectrum(&mode, &cfg, &GridSpec::auto(&cfg)).unwrap()
    }

    fn series_for(spec: &OverlapSpectrum, window: &WindowSpec, f_max: f64) -> ModeTimeSeries {
        let taus = window_times(window, f_max);
        mode_time_series(spec, window.xi0, &taus).unwrap()
    }

    fn zero_series(n: usize, dt: f64) -> ModeTimeSeries {
        ModeTimeSeries {
            start: 0.0,
            dt,
            values: vec![Complex64::new(0.0, 0.0); n],
            central_frequency: 1.0,
        }
    }

    #[test]
    fn series_envelope_has_packet_duration() {
        let spec = spectrum(800, 0.02);
        let s = spec.sigma;
        let window = WindowSpec::new(-2.0 * s, 4.0 * s, 0.0);
        let series = series_for(&spec, &window, spec.central_wavenumber);
        let mags: Vec<f64> = series.values.iter().map(|v| v.norm()).collect();
        let peak = mags.iter().cloned().fold(0.0, f64::max);
        let mid = mags[mags.len() / 2];
        assert!((mid - peak).abs() < 0.05 * peak, "peak should sit mid-window");
        assert!(mags[0] < 0.05 * peak && *mags.last().unwrap() < 0.05 * peak);
    }

    #[test]
    fn series_instantaneous_frequency_matches_mode() {
        let spec = spectrum(800, 0.02);
        let window = WindowSpec::new(-0.05, 0.1, 0.0);
        let series = series_for(&spec, &window, spec.central_wavenumber);
        let mid = series.values.len() / 2;
        let ratio = series.values[mid + 1] / series.values[mid];
        let rate = -ratio.arg() / series.dt;
        let expected = spec.central_wavenumber;
        assert!(
            (rate - expected).abs() / expected < 0.02,
            "rate {rate}, expected {expected}"
        );
    }

    #[test]
    fn series_parseval_reproduces_norm() {
        let spec = spectrum(400, 0.02);
        let s = spec.sigma;
        let window = WindowSpec::new(-4.0 * s, 8.0 * s, 0.0);
        let series = series_for(&spec, &window, spec.central_wavenumber);
        let sum: f64 = series.values.iter().map(|v| v.norm_sqr()).sum();
        let norm = 2.0 * spec.central_wavenumber * series.dt * sum;
        assert!((norm - 1.0).abs() < 1e-3, "norm {norm}");
    }

    #[test]
    fn undersampled_series_is_rejected() {
        let spec = spectrum(800, 0.02);
        let dt = std::f64::consts::TAU / spec.central_wavenumber / 8.0;
        let taus: Vec<f64> = (0..64).map(|j| dt * j as f64).collect();
        assert!(matches!(
            mode_time_series(&spec, 0.0, &taus),
            Err(Error::Undersampled { .. })
        ));
    }

    #[test]
    fn rwa_is_quadratic_in_short_resonant_windows() {
        // quasi-monochromatic regime: the packet looks like a single
        // frequency and the response grows as T^2
        let spec = spectrum(800, 0.02);
        let wc = spec.central_wavenumber;
        let period = std::f64::consts::TAU / wc;
        let mut scaled = Vec::new();
        for &periods in &[4.0, 8.0, 16.0] {
            let t = periods * period;
            let window = WindowSpec::new(-0.5 * t, t, 0.0);
            let series = series_for(&spec, &window, 2.0 * wc);
            let r = rwa_response(&series, wc);
            assert!(r > 0.0);
            scaled.push(r / (t * t));
        }
        for w in scaled.windows(2) {
            assert!(
                (w[1] / w[0] - 1.0).abs() < 0.01,
                "rwa/T^2 drifted: {scaled:?}"
            );
        }
    }

    #[test]
    fn rwa_suppressed_off_resonance() {
        let spec = spectrum(800, 0.02);
        let wc = spec.central_wavenumber;
        let period = std::f64::consts::TAU / wc;
        let t = 20.0 * period;
        let window = WindowSpec::new(-0.5 * t, t, 0.0);
        // sampling resolves the detuned phase as well
        let series = series_for(&spec, &window, 12.0 * wc);
        let resonant = rwa_response(&series, wc);
        let detuned = rwa_response(&series, 10.0 * wc);
        assert!(
            detuned.abs() * 1e3 <= resonant,
            "resonant {resonant:.3e}, detuned {detuned:.3e}"
        );
    }

    #[test]
    fn rwa_vanishes_for_null_field() {
        let series = zero_series(128, 0.01);
        assert_eq!(rwa_response(&series, 1.0), 0.0);
        assert_eq!(counter_rotating(&series, 1.0), 0.0);
    }

    #[test]
    fn counter_term_is_bounded_and_shrinks() {
        let spec = spectrum(800, 0.02);
        let wc = spec.central_wavenumber;
        let period = std::f64::consts::TAU / wc;
        let mut ratios = Vec::new();
        for &periods in &[10.0, 20.0, 40.0] {
            let t = periods * period;
            let window = WindowSpec::new(0.0, t, 0.0);
            let series = series_for(&spec, &window, 2.5 * wc);
            let ratio = counter_rotating(&series, wc) / rwa_response(&series, wc);
            assert!(
                ratio <= 5.0 / (wc * t),
                "T = {periods} periods: ratio {ratio:.3e} vs bound {:.3e}",
                5.0 / (wc * t)
            );
            ratios.push(ratio);
        }
        assert!(ratios[1] < ratios[0] && ratios[2] < ratios[1]);
    }

    #[test]
    fn vacuum_term_positive_and_sublinear_in_t() {
        let w1 = WindowSpec::new(0.0, 1.25, 0.0);
        let w2 = WindowSpec::new(0.0, 2.5, 0.0);
        let v1 = vacuum_term(800.0, &w1, 1.0, 3200.0).unwrap();
        let v2 = vacuum_term(800.0, &w2, 1.0, 3200.0).unwrap();
        assert!(v1 > 0.0 && v2 > 0.0);
        assert!(v2 < 2.0 * v1, "vacuum term must grow sublinearly");
        assert!(matches!(
            vacuum_term(800.0, &w1, 0.0, 10.0),
            Err(Error::InvalidCutoffs)
        ));
    }

    #[test]
    fn alpha_is_state_independent() {
        let spec = spectrum(200, 0.02);
        let monopole = MonopoleSpec::resonant_two_level(&spec);
        let period = std::f64::consts::TAU / spec.central_wavenumber;
        let window = WindowSpec::new(0.0, 30.0 * period, 0.0);
        let a = click_probability(&monopole, &window, &spec, &StateMoments::one_particle())
            .unwrap();
        let b = click_probability(
            &monopole,
            &window,
            &spec,
            &StateMoments::coherent(Complex64::new(0.5, 0.0)),
        )
        .unwrap();
        assert_eq!(a.alpha.to_bits(), b.alpha.to_bits());
    }

    #[test]
    fn click_probability_factorises_for_test_states() {
        let spec = spectrum(800, 0.02);
        let monopole = MonopoleSpec::resonant_two_level(&spec);
        let period = std::f64::consts::TAU / spec.central_wavenumber;
        let t = 200.0 * period;
        let window = WindowSpec::new(-0.5 * t, t, 0.0);

        // vacuum: only the vacuum fluctuation term survives
        let vac_state = StateMoments::vacuum(-2e5);
        let b = click_probability(&monopole, &window, &spec, &vac_state).unwrap();
        assert_eq!(b.click_factored, 0.0);
        assert!(b.log_click_factored < -1e5);
        let g = monopole.coupling * monopole.coupling;
        assert!(b.click_full <= g * b.vacuum_term * (1.0 + 1e-12));

        // one particle: ratio to alpha within the computed bound
        let b = click_probability(&monopole, &window, &spec, &StateMoments::one_particle())
            .unwrap();
        let rel_bound = b.remainder_bound / b.click_factored;
        assert!(rel_bound < 0.05, "bound should be small: {rel_bound:.3e}");
        assert!(
            (b.click_full / b.click_factored - 1.0).abs() <= rel_bound,
            "full {:.6e} vs factored {:.6e}",
            b.click_full,
            b.click_factored
        );

        // coherent state with <n> = 0.25, <d^2> = 0.25
        let b = click_probability(
            &monopole,
            &window,
            &spec,
            &StateMoments::coherent(Complex64::new(0.5, 0.0)),
        )
        .unwrap();
        let rel_bound = b.remainder_bound / b.click_factored;
        assert!(rel_bound < 0.05);
        assert!((b.click_full / b.click_factored - 1.0).abs() <= rel_bound);
    }

    #[test]
    fn per_shot_click_rate_saturates() {
        let spec = spectrum(800, 0.02);
        let monopole = MonopoleSpec::resonant_two_level(&spec);
        let s = spec.sigma;
        let one = StateMoments::one_particle();
        let shot = |t: f64| {
            let window = WindowSpec::new(0.0, t, 0.0);
            click_probability(&monopole, &window, &spec, &one)
                .unwrap()
                .click_factored
        };
        let p2 = shot(2.0 * s);
        let p4 = shot(4.0 * s);
        assert!(p4 >= p2);
        assert!((p4 - p2) / p2 <= 0.05, "increase {:.3e}", (p4 - p2) / p2);
    }

    #[test]
    fn strong_coupling_hits_perturbative_ceiling() {
        let spec = spectrum(800, 0.02);
        let mut monopole = MonopoleSpec::resonant_two_level(&spec);
        monopole.coupling = 50.0;
        let s = spec.sigma;
        let window = WindowSpec::new(-s, 2.0 * s, 0.0);
        assert!(matches!(
            click_probability(&monopole, &window, &spec, &StateMoments::one_particle()),
            Err(Error::NonPerturbative { .. })
        ));
    }

    #[test]
    fn monopole_validation() {
        assert!(MonopoleSpec::new(vec![], vec![], 1e-3).is_err());
        assert!(MonopoleSpec::new(vec![1.0, 0.5], vec![1.0, 1.0], 1e-3).is_err());
        assert!(MonopoleSpec::new(vec![-1.0], vec![1.0], 1e-3).is_err());
        assert!(MonopoleSpec::new(vec![1.0], vec![-1.0], 1e-3).is_err());
        assert!(MonopoleSpec::new(vec![1.0], vec![1.0], 0.0).is_err());
        assert!(MonopoleSpec::new(vec![1.0, 2.0], vec![1.0, 0.5], 1e-3).is_ok());
    }
}
