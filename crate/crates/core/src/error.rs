use thiserror::Error;

/// Errors raised by the numerical pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{field} {message}")]
    Param {
        field: &'static str,
        message: &'static str,
    },
    #[error("point lies outside both Rindler wedges (|x| <= c|t|)")]
    OutsideWedges,
    #[error("Rindler mode undefined for k = 0")]
    ZeroWavenumber,
    #[error("spectra are defined on different wavenumber grids")]
    GridMismatch,
    #[error("expected a region-{expected:?} spectrum, got region {got:?}")]
    RegionMismatch {
        expected: crate::rindler::Region,
        got: crate::rindler::Region,
    },
    #[error("spatial grid does not cover the integrand support (edge/max = {edge_ratio:.3e})")]
    GridTooNarrow { edge_ratio: f64 },
    #[error("retained norm above the cutoff is {norm:.3e}; mode not representable above Lambda")]
    ModeBelowCutoff { norm: f64 },
    #[error("wavenumber grid must satisfy k_max >= central + 10/sigma (got {got:.6e} < {min:.6e})")]
    GridTooShort { got: f64, min: f64 },
    #[error("time series undersampled: {got:.3e} samples per optical period, need >= {need}")]
    Undersampled { got: f64, need: f64 },
    #[error("vacuum-term cutoffs must satisfy 0 < k_min < k_max")]
    InvalidCutoffs,
    #[error("click probability {probability:.3e} exceeds the perturbative ceiling 0.1")]
    NonPerturbative { probability: f64 },
    #[error("monopole spec invalid: {0}")]
    Monopole(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
