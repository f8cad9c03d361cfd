//! Numerics for anomalous dielectric relaxation.
//!
//! The crate covers the classical non-Debye relaxation families (Cole-Cole,
//! Davidson-Cole, Havriliak-Negami and its JWS mirror, stretched-exponential
//! KWW, a Kilbas-Saigo-type model with a power-law-in-time rate, and a
//! two-timescale "excess wing" law) across their four equivalent faces:
//!
//! * frequency domain: normalized complex susceptibility,
//! * time domain: relaxation function and response function,
//! * spectral domain: distributions of relaxation rates/times,
//! * operator form: fractional evolution equations and a constitutive solver.
//!
//! Module map:
//! * [`special_functions`] - Mittag-Leffler family, Kilbas-Saigo, extremal
//!   stable density, incomplete gamma; the evaluation workhorses.
//! * [`models`] - model parameter types, validation, and all closed-form or
//!   quadrature-backed model quantities.
//! * [`transforms`] - Laplace forward/inverse evaluation and the
//!   spectral-density machinery shared by the models.
//! * [`fracops`] - Grunwald-Letnikov style discrete fractional operators and
//!   the polarization evolution solver.
//! * [`fit`] - weighted least-squares fitting of measured spectra.
//! * [`cli`] - the command-line front end (the `direl` binary).

pub mod cli;
pub mod fit;
pub mod fracops;
pub mod models;
pub mod special_functions;
pub mod transforms;

pub use num_complex::Complex64;

/// Library-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Arguments outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An iterative evaluation hit its budget without reaching the requested
    /// accuracy; carries the best estimate so far.
    #[error("evaluation failure in {what}: best estimate {partial} +/- {err_est:e}")]
    EvaluationFailure {
        what: &'static str,
        partial: Complex64,
        err_est: f64,
    },
    /// The operation is not defined for this model family.
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),
    /// The requested spectral density degenerates to a point mass.
    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),
    /// Root multiplicity where simple roots are required.
    #[error("multiple root: {0}")]
    MultipleRoot(String),
    /// Malformed or insufficient input (grids, datasets, solver configs).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
