//! The localised Gaussian detector mode, its Klein-Gordon products, and the
//! wavenumber spectrum of overlaps with the region-I Rindler modes.
//!
//! Two independent routes exist for the overlap coefficients:
//!
//! 1. the closed form (Gaussian Fourier transform folded through the KG
//!    product), which is the production path, and
//! 2. [`kg_inner`], a spatial quadrature over sampled initial data, kept as
//!    an independently coded oracle for the test suites.
//!
//! The two share no helper code by design.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{composite_gauss_legendre, log_sum_exp};
use crate::params::PhysicalConfig;
use crate::rindler::Region;

/// Gaussian wave-packet descriptor for the mode the detector filters out.
///
/// At tau = 0 the initial data are
/// psi(xi) = norm_const * exp(-xi^2/sigma^2 + i N xi / sigma) with
/// d(psi)/d(c tau) = -i (N/sigma) psi.
#[derive(Debug, Clone)]
pub struct DetectorMode {
    /// Envelope width in units of L: sigma = (2 c^2/a) asinh(a L / 2 c^2).
    pub sigma: f64,
    /// Selected cavity eigenmode index N.
    pub mode_index: u32,
    /// Wedge the detector occupies.
    pub region: Region,
    /// Spatial center (fixed at 0; the detector sits at xi = 0).
    pub center_xi: f64,
    /// (N sqrt(2 pi))^{-1/2}.
    pub norm_const: f64,
}

/// Builds the detector mode of a validated config.
pub fn build_mode(config: &PhysicalConfig) -> DetectorMode {
    let a = config.accel_group;
    let sigma = (2.0 / a) * (0.5 * a).asinh();
    let n = f64::from(config.mode_index);
    DetectorMode {
        sigma,
        mode_index: config.mode_index,
        region: Region::I,
        center_xi: 0.0,
        norm_const: 1.0 / (n * (std::f64::consts::TAU).sqrt()).sqrt(),
    }
}

impl DetectorMode {
    /// Central wavenumber N/sigma (units 1/L); the central Rindler
    /// frequency is the same number times c.
    pub fn central_wavenumber(&self) -> f64 {
        f64::from(self.mode_index) / self.sigma
    }

    /// Mode value at (xi, tau = 0).
    pub fn value_at(&self, xi: f64) -> Complex64 {
        let u = xi - self.center_xi;
        let arg = -u * u / (self.sigma * self.sigma);
        let phase = self.central_wavenumber() * u;
        self.norm_const * arg.exp() * Complex64::new(0.0, phase).exp()
    }

    /// d/d(c tau) of the mode at (xi, 0): -i (N/sigma) psi.
    pub fn dtau_at(&self, xi: f64) -> Complex64 {
        Complex64::new(0.0, -self.central_wavenumber()) * self.value_at(xi)
    }

    /// log |psi(xi, 0)|^2.
    pub fn log_envelope_abs2(&self, xi: f64) -> f64 {
        let u = xi - self.center_xi;
        2.0 * self.norm_const.ln() - 2.0 * u * u / (self.sigma * self.sigma)
    }
}

/// Initial data of a field solution sampled on a uniform spatial grid at the
/// tau = 0 slice. `dt_values` holds the derivative with respect to c*tau.
#[derive(Debug, Clone)]
pub struct SampledSolution {
    pub values: Vec<Complex64>,
    pub dt_values: Vec<Complex64>,
}

/// Uniform spatial grid for [`kg_inner`].
#[derive(Debug, Clone, Copy)]
pub struct UniformGrid {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

impl UniformGrid {
    pub fn new(start: f64, end: f64, len: usize) -> Self {
        assert!(len >= 2 && end > start);
        Self {
            start,
            step: (end - start) / (len - 1) as f64,
            len,
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(move |i| self.start + self.step * i as f64)
    }
}

impl DetectorMode {
    pub fn sample(&self, grid: &UniformGrid) -> SampledSolution {
        let values: Vec<_> = grid.points().map(|xi| self.value_at(xi)).collect();
        let dt_values: Vec<_> = grid.points().map(|xi| self.dtau_at(xi)).collect();
        SampledSolution { values, dt_values }
    }
}

/// Samples a region-I Rindler mode (continuum normalisation) at tau = 0.
pub fn sample_rindler_mode(k: f64, grid: &UniformGrid) -> SampledSolution {
    let amp = 1.0 / (4.0 * std::f64::consts::PI * k.abs()).sqrt();
    let values: Vec<_> = grid
        .points()
        .map(|xi| amp * Complex64::new(0.0, k * xi).exp())
        .collect();
    let dt_values: Vec<_> = values
        .iter()
        .map(|v| Complex64::new(0.0, -k.abs()) * v)
        .collect();
    SampledSolution { values, dt_values }
}

fn kg_integrand(f: &SampledSolution, g: &SampledSolution, j: usize) -> Complex64 {
    Complex64::i() * (f.values[j].conj() * g.dt_values[j] - f.dt_values[j].conj() * g.values[j])
}

/// Klein-Gordon product i * integral dxi (f* d_ct g - (d_ct f*) g) on the
/// tau = 0 slice, by composite trapezoid.
///
/// Errors when the integrand has not decayed at the grid edges (relative
/// magnitude above 1e-14), which would silently truncate the product.
pub fn kg_inner(f: &SampledSolution, g: &SampledSolution, grid: &UniformGrid) -> Result<Complex64> {
    assert_eq!(f.values.len(), grid.len);
    assert_eq!(g.values.len(), grid.len);
    let n = grid.len;
    let mut max_abs = 0.0_f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let term = kg_integrand(f, g, j);
        max_abs = max_abs.max(term.norm());
        let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
        sum += w * term;
    }
    let edge = kg_integrand(f, g, 0).norm().max(kg_integrand(f, g, n - 1).norm());
    if max_abs > 0.0 && edge > 1e-14 * max_abs {
        return Err(Error::GridTooNarrow {
            edge_ratio: edge / max_abs,
        });
    }
    Ok(sum * grid.step)
}

/// Klein-Gordon product over one period of box-normalised data; rectangle
/// rule, no decay requirement. `grid.len` points cover [start, start + n*step).
pub fn kg_inner_periodic(f: &SampledSolution, g: &SampledSolution, grid: &UniformGrid) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..grid.len {
        sum += kg_integrand(f, g, j);
    }
    sum * grid.step
}

/// How the wavenumber grid of an [`OverlapSpectrum`] is laid out.
#[derive(Debug, Clone, Copy)]
pub enum GridSpec {
    /// Composite Gauss-Legendre panels of width ~1/sigma over
    /// [Lambda, k_max]. The folds against the thermal spectrum shift the
    /// dominant Gaussian towards the cutoff, so the panels stay uniformly
    /// fine over the whole range.
    Continuum { k_max: f64, nodes_per_panel: usize },
    /// Discrete k_n = 2 pi n / h with uniform weight 2 pi / h, n >= 1,
    /// restricted to (Lambda, k_max].
    Box { length: f64, k_max: f64 },
}

impl GridSpec {
    /// Default layout for a config: box when `box_length_scaled` is set,
    /// continuum otherwise; k_max = central + 12/sigma.
    pub fn auto(config: &PhysicalConfig) -> GridSpec {
        let mode = build_mode(config);
        let k_max = mode.central_wavenumber() + 12.0 / mode.sigma;
        match config.box_length_scaled {
            Some(length) => GridSpec::Box { length, k_max },
            None => GridSpec::Continuum {
                k_max,
                nodes_per_panel: 16,
            },
        }
    }

    fn k_max(&self) -> f64 {
        match *self {
            GridSpec::Continuum { k_max, .. } | GridSpec::Box { k_max, .. } => k_max,
        }
    }
}

/// Wavenumber grid with the mode's overlap coefficients (psi_D, w_{k,I}),
/// renormalised so the weighted coefficient mass above the cutoff is one.
#[derive(Debug, Clone)]
pub struct OverlapSpectrum {
    pub config: PhysicalConfig,
    pub region: Region,
    pub sigma: f64,
    pub central_wavenumber: f64,
    /// Ascending nodes, all > Lambda.
    pub wavenumbers: Vec<f64>,
    /// Quadrature weights (panel weights, or 2 pi/h for a box).
    pub weights: Vec<f64>,
    /// f_k after renormalisation; real and positive for a centered mode,
    /// stored as complex for the serialisation contract.
    pub coefficients: Vec<Complex64>,
    /// log |f_k|^2 after renormalisation.
    pub log_abs2: Vec<f64>,
    /// Weighted coefficient mass above the cutoff before renormalisation.
    pub raw_norm: f64,
}

/// Raw overlap (psi_D, w_{k,I}) of the centered Gaussian mode, closed form:
/// sigma (k + N/sigma) e^{-sigma^2 (k - N/sigma)^2 / 4}
///   / (2 sqrt(k) sqrt(N) (2 pi)^{1/4}).
pub fn overlap_coefficient(mode: &DetectorMode, k: f64) -> f64 {
    debug_assert!(k > 0.0);
    let wc = mode.central_wavenumber();
    let n = f64::from(mode.mode_index);
    let u = k - wc;
    mode.sigma * (k + wc) * (-mode.sigma * mode.sigma * u * u / 4.0).exp()
        / (2.0 * k.sqrt() * n.sqrt() * std::f64::consts::TAU.sqrt().sqrt())
}

/// log of the raw |f_k|^2; usable far into the Gaussian tails.
fn log_overlap_abs2(mode: &DetectorMode, k: f64) -> f64 {
    let wc = mode.central_wavenumber();
    let n = f64::from(mode.mode_index);
    let u = k - wc;
    2.0 * mode.sigma.ln() + 2.0 * (k + wc).ln() - mode.sigma * mode.sigma * u * u / 2.0
        - (4.0 * k).ln()
        - n.ln()
        - 0.5 * std::f64::consts::TAU.ln()
}

/// Builds the overlap spectrum of a mode over the given grid layout,
/// applying the infra-red cutoff projection: coefficients below
/// k = Lambda are dropped and the remainder renormalised to unit mass.
pub fn overlap_spectrum(
    mode: &DetectorMode,
    config: &PhysicalConfig,
    spec: &GridSpec,
) -> Result<OverlapSpectrum> {
    let lambda = config.cutoff_scaled;
    let wc = mode.central_wavenumber();
    let min_k_max = wc + 10.0 / mode.sigma;
    if spec.k_max() < min_k_max {
        return Err(Error::GridTooShort {
            got: spec.k_max(),
            min: min_k_max,
        });
    }
    if lambda >= spec.k_max() {
        // cutoff sits above the whole representable support
        return Err(Error::ModeBelowCutoff { norm: 0.0 });
    }
    let (wavenumbers, weights) = match *spec {
        GridSpec::Continuum {
            k_max,
            nodes_per_panel,
        } => {
            let panels = ((k_max - lambda) * mode.sigma).ceil().max(4.0) as usize;
            composite_gauss_legendre(lambda, k_max, panels, nodes_per_panel)
        }
        GridSpec::Box { length, k_max } => {
            let dk = std::f64::consts::TAU / length;
            let n0 = (lambda / dk).floor() as u64 + 1;
            let n1 = (k_max / dk).floor() as u64;
            let nodes: Vec<f64> = (n0..=n1).map(|n| n as f64 * dk).collect();
            let weights = vec![dk; nodes.len()];
            (nodes, weights)
        }
    };

    // raw weighted mass above the cutoff; linear domain is safe here
    // because the raw coefficients are O(1) near the peak
    let mut raw_norm = 0.0;
    let raw: Vec<f64> = wavenumbers
        .iter()
        .map(|&k| overlap_coefficient(mode, k))
        .collect();
    for (w, f) in weights.iter().zip(&raw) {
        raw_norm += w * f * f;
    }
    if raw_norm < 1e-6 {
        return Err(Error::ModeBelowCutoff { norm: raw_norm });
    }
    let scale = 1.0 / raw_norm.sqrt();
    let log_norm = raw_norm.ln();
    let coefficients: Vec<Complex64> = raw
        .iter()
        .map(|&f| Complex64::new(f * scale, 0.0))
        .collect();
    let log_abs2: Vec<f64> = wavenumbers
        .iter()
        .map(|&k| log_overlap_abs2(mode, k) - log_norm)
        .collect();

    Ok(OverlapSpectrum {
        config: config.clone(),
        region: mode.region,
        sigma: mode.sigma,
        central_wavenumber: wc,
        wavenumbers,
        weights,
        coefficients,
        log_abs2,
        raw_norm,
    })
}

impl OverlapSpectrum {
    /// Weighted sum of |f_k|^2 over the stored (renormalised) spectrum.
    pub fn coefficient_mass(&self) -> f64 {
        self.weights
            .iter()
            .zip(&self.coefficients)
            .map(|(w, f)| w * f.norm_sqr())
            .sum()
    }

    /// log(sum_k weight * |f_k|^2 * exp(extra_k)) with per-node log terms.
    pub fn log_fold(&self, extra: impl Fn(usize) -> f64) -> f64 {
        let terms: Vec<f64> = (0..self.wavenumbers.len())
            .map(|i| self.weights[i].ln() + self.log_abs2[i] + extra(i))
            .collect();
        log_sum_exp(&terms)
    }

    pub fn same_grid(&self, other_nodes: &[f64]) -> bool {
        self.wavenumbers.len() == other_nodes.len()
            && self
                .wavenumbers
                .iter()
                .zip(other_nodes)
                .all(|(a, b)| a == b)
    }
}

/// Spectral reconstruction sum_k weight f_k w_k(xi, tau) at a wedge point of
/// the spectrum's own region.
pub fn mode_value(spectrum: &OverlapSpectrum, xi: f64, tau: f64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..spectrum.wavenumbers.len() {
        let k = spectrum.wavenumbers[i];
        let amp = 1.0 / (4.0 * std::f64::consts::PI * k).sqrt();
        // region-I phase with k > 0; region II carries -xi in its own chart
        let phase = match spectrum.region {
            Region::I => k * xi - k * tau,
            Region::II => -k * xi - k * tau,
        };
        sum += spectrum.weights[i]
            * spectrum.coefficients[i]
            * amp
            * Complex64::new(0.0, phase).exp();
    }
    sum
}

/// d/d(c tau) of the reconstruction at (xi, tau).
pub fn mode_value_dtau(spectrum: &OverlapSpectrum, xi: f64, tau: f64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..spectrum.wavenumbers.len() {
        let k = spectrum.wavenumbers[i];
        let amp = 1.0 / (4.0 * std::f64::consts::PI * k).sqrt();
        let phase = match spectrum.region {
            Region::I => k * xi - k * tau,
            Region::II => -k * xi - k * tau,
        };
        sum += spectrum.weights[i]
            * spectrum.coefficients[i]
            * amp
            * Complex64::new(0.0, -k)
            * Complex64::new(0.0, phase).exp();
    }
    sum
}

/// Mirror image of a region-I spectrum under xi' = -xi: the region-II
/// detector mode has identical overlap coefficients node by node.
pub fn mirror_mode(spectrum: &OverlapSpectrum) -> OverlapSpectrum {
    let mut out = spectrum.clone();
    out.region = spectrum.region.mirrored();
    out
}
