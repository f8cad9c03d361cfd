//! Model descriptors and every per-model quantity: susceptibility,
//! relaxation/response functions, displayed asymptotics, spectral densities,
//! Cole-Cole loci, URL exponents, and the excess-wing partial fractions.
//!
//! Conventions. All models are normalized: chi(0) = 1, Psi(0) = 1, and the
//! response integrates to 1. The loss sign follows chi(i omega) =
//! chi' - i chi''; [`ComplexSusceptibilityPoint`] stores chi'' positive.
//! Reference times are in the same unit as 1/omega.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::special_functions as sf;
use crate::transforms;
use crate::{Error, Result};

/// One relaxation model with its parameters.
///
/// The serialized form is tagged by `kind` (kebab-case variant name, with
/// the usual short aliases), e.g. `{"kind":"hn","alpha":0.8,"gamma":0.7,"tau":1.0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Model {
    /// Single exponential, chi = 1/(1 + i omega tau).
    Debye { tau: f64 },
    /// chi = 1/(1 + (i omega tau)^alpha), 0 < alpha <= 1.
    #[serde(alias = "cc")]
    ColeCole { alpha: f64, tau: f64 },
    /// chi = 1/(1 + i omega tau)^gamma, 0 < gamma <= 1.
    #[serde(alias = "dc")]
    DavidsonCole { gamma: f64, tau: f64 },
    /// chi = 1/(1 + (i omega tau)^alpha)^gamma on the extended range
    /// 0 < alpha <= 1, 0 < alpha gamma <= 1.
    #[serde(alias = "hn")]
    HavriliakNegami { alpha: f64, gamma: f64, tau: f64 },
    /// Mirror of Havriliak-Negami: chi = 1 - (i omega tau)^{alpha gamma} chi_HN,
    /// same parameter range.
    Jws { alpha: f64, gamma: f64, tau: f64 },
    /// Stretched exponential Psi = exp(-(t/tau)^gamma), 0 < gamma < 1.
    Kww { gamma: f64, tau: f64 },
    /// Power-law-rate relaxation solving a fractional equation whose decay is
    /// the Kilbas-Saigo function E_{alpha, gamma/alpha, gamma/alpha - 1} of
    /// -(t/tau)^gamma with gamma = alpha + beta; 0 < alpha <= 1 and
    /// -alpha < beta <= 1 - alpha.
    #[serde(alias = "ks")]
    KilbasSaigo { alpha: f64, beta: f64, tau: f64 },
    /// Two-scale law chi = (1 + (tau2 i omega)^alpha) /
    /// (1 + (tau2 i omega)^alpha + tau1 i omega), 0 < alpha < 1: a main peak
    /// at 1/tau1 with a high-frequency excess wing from the tau2 scale.
    #[serde(alias = "ew")]
    ExcessWing { alpha: f64, tau1: f64, tau2: f64 },
}

/// Model family without parameters, used by the fitting front end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Debye,
    #[serde(alias = "cc")]
    ColeCole,
    #[serde(alias = "dc")]
    DavidsonCole,
    #[serde(alias = "hn")]
    HavriliakNegami,
    Jws,
    Kww,
    #[serde(alias = "ks")]
    KilbasSaigo,
    #[serde(alias = "ew")]
    ExcessWing,
}

impl Model {
    pub fn kind(&self) -> ModelKind {
        match self {
            Model::Debye { .. } => ModelKind::Debye,
            Model::ColeCole { .. } => ModelKind::ColeCole,
            Model::DavidsonCole { .. } => ModelKind::DavidsonCole,
            Model::HavriliakNegami { .. } => ModelKind::HavriliakNegami,
            Model::Jws { .. } => ModelKind::Jws,
            Model::Kww { .. } => ModelKind::Kww,
            Model::KilbasSaigo { .. } => ModelKind::KilbasSaigo,
            Model::ExcessWing { .. } => ModelKind::ExcessWing,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind() {
            ModelKind::Debye => "debye",
            ModelKind::ColeCole => "cole-cole",
            ModelKind::DavidsonCole => "davidson-cole",
            ModelKind::HavriliakNegami => "havriliak-negami",
            ModelKind::Jws => "jws",
            ModelKind::Kww => "kww",
            ModelKind::KilbasSaigo => "kilbas-saigo",
            ModelKind::ExcessWing => "excess-wing",
        }
    }

    /// All violated admissibility constraints; empty means the model is ok.
    pub fn validate(&self) -> Vec<String> {
        fn time(bad: &mut Vec<String>, name: &str, v: f64) {
            if !(v.is_finite() && v > 0.0) {
                bad.push(format!("{name} must be a positive finite time, got {v}"));
            }
        }
        let mut bad = Vec::new();
        match *self {
            Model::Debye { tau } => time(&mut bad, "tau", tau),
            Model::ColeCole { alpha, tau } => {
                if !(alpha > 0.0 && alpha <= 1.0) {
                    bad.push(format!("alpha must lie in (0, 1], got {alpha}"));
                }
                time(&mut bad, "tau", tau);
            }
            Model::DavidsonCole { gamma, tau } => {
                if !(gamma > 0.0 && gamma <= 1.0) {
                    bad.push(format!("gamma must lie in (0, 1], got {gamma}"));
                }
                time(&mut bad, "tau", tau);
            }
            Model::HavriliakNegami { alpha, gamma, tau }
            | Model::Jws { alpha, gamma, tau } => {
                if !(alpha > 0.0 && alpha <= 1.0) {
                    bad.push(format!("alpha must lie in (0, 1], got {alpha}"));
                }
                if !(gamma > 0.0 && alpha * gamma <= 1.0) {
                    bad.push(format!(
                        "need 0 < alpha*gamma <= 1, got alpha*gamma = {}",
                        alpha * gamma
                    ));
                }
                time(&mut bad, "tau", tau);
            }
            Model::Kww { gamma, tau } => {
                if !(gamma > 0.0 && gamma < 1.0) {
                    bad.push(format!("gamma must lie in (0, 1), got {gamma}"));
                }
                time(&mut bad, "tau", tau);
            }
            Model::KilbasSaigo { alpha, beta, tau } => {
                if !(alpha > 0.0 && alpha <= 1.0) {
                    bad.push(format!("alpha must lie in (0, 1], got {alpha}"));
                }
                if !(beta > -alpha && beta <= 1.0 - alpha) {
                    bad.push(format!(
                        "need -alpha < beta <= 1 - alpha (monotone decay), got beta = {beta}"
                    ));
                }
                time(&mut bad, "tau", tau);
            }
            Model::ExcessWing { alpha, tau1, tau2 } => {
                if !(alpha > 0.0 && alpha < 1.0) {
                    bad.push(format!("alpha must lie in (0, 1), got {alpha}"));
                }
                time(&mut bad, "tau1", tau1);
                time(&mut bad, "tau2", tau2);
            }
        }
        bad
    }

    fn ensure_valid(&self) -> Result<()> {
        let bad = self.validate();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{} model: {}",
                self.kind_name(),
                bad.join("; ")
            )))
        }
    }
}

/// One sampled susceptibility point; the loss chi'' is stored positive,
/// chi(i omega) = chi_re - i chi_im.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexSusceptibilityPoint {
    pub omega: f64,
    pub chi_re: f64,
    pub chi_im: f64,
}

/// Universal-relaxation-law exponents: chi'' ~ omega^m below the loss peak
/// and chi'' ~ omega^(n-1) far above it. `fits_url` marks the families whose
/// (m, n) both fall in (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UrlExponents {
    pub m: f64,
    pub n: f64,
    pub fits_url: bool,
}

/// Which time function a spectral density represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectralKind {
    /// Density of Psi: Psi(t) = integral of e^(-r t) K(r) dr.
    Relaxation,
    /// Density of phi: K_phi(r) = r K_Psi(r).
    Response,
}

/// The abscissa a spectral density is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectralRepresentation {
    /// K(r) over decay rates r > 0.
    Frequency,
    /// H(tau) = K(1/tau)/tau^2 over relaxation times tau > 0.
    Time,
    /// L(u) = e^(-u) K(e^(-u)) over log-times u = -ln r.
    LogTime,
}

/// A sampled spectral density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralDensity {
    pub kind: SpectralKind,
    pub representation: SpectralRepresentation,
    /// (abscissa, density) pairs on the caller's grid.
    pub samples: Vec<(f64, f64)>,
}

/// Angle theta_alpha(r) entering the Havriliak-Negami and JWS spectral
/// densities; always in [0, alpha pi].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HnSpectralAngle {
    pub theta: f64,
}

/// Partial-fraction data of the excess-wing model at rational alpha = p/q:
/// the roots of Q(z) = 1 + tau2^alpha z^p + tau1 z^q and the residues of the
/// response (c_j) and relaxation (d_j) images.
#[derive(Debug, Clone, PartialEq)]
pub struct EwPartialFractions {
    pub p: u32,
    pub q: u32,
    pub roots: Vec<Complex64>,
    pub residues_response: Vec<Complex64>,
    pub residues_relaxation: Vec<Complex64>,
}

/// Which end of the time axis a displayed asymptotic expansion covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AsymptoticRegime {
    Short,
    Long,
}

// ---------------------------------------------------------------------------
// Susceptibility
// ---------------------------------------------------------------------------

/// (i omega tau)^e on the principal branch, with the phase written down
/// exactly instead of taken through powc.
fn i_omega_tau_pow(omega_tau: f64, e: f64) -> Complex64 {
    Complex64::from_polar(omega_tau.powf(e), e * FRAC_PI_2)
}

/// Normalized complex susceptibility chi(i omega) = chi' - i chi''.
///
/// Closed forms everywhere except Kww and KilbasSaigo, which have none and
/// are integrated as the Laplace transform of the response along a tilted
/// ray (the kernel e^(-i omega t) is undamped on the real axis); those two
/// paths target 1e-8 relative accuracy and propagate quadrature failures.
pub fn susceptibility(model: &Model, omega: f64) -> Result<Complex64> {
    model.ensure_valid()?;
    if !(omega.is_finite() && omega >= 0.0) {
        return Err(Error::Domain(format!(
            "susceptibility needs omega >= 0, got {omega}"
        )));
    }
    if omega == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let chi = match *model {
        Model::Debye { tau } => (Complex64::new(1.0, omega * tau)).inv(),
        Model::ColeCole { alpha, tau } => {
            (Complex64::new(1.0, 0.0) + i_omega_tau_pow(omega * tau, alpha)).inv()
        }
        Model::DavidsonCole { gamma, tau } => Complex64::new(1.0, omega * tau).powf(-gamma),
        Model::HavriliakNegami { alpha, gamma, tau } => {
            (Complex64::new(1.0, 0.0) + i_omega_tau_pow(omega * tau, alpha)).powf(-gamma)
        }
        Model::Jws { alpha, gamma, tau } => {
            let hn = (Complex64::new(1.0, 0.0) + i_omega_tau_pow(omega * tau, alpha)).powf(-gamma);
            Complex64::new(1.0, 0.0) - i_omega_tau_pow(omega * tau, alpha * gamma) * hn
        }
        Model::Kww { gamma, tau } => {
            susceptibility_by_ray(omega, tau, |t| {
                let x = (t / tau).powf(gamma);
                gamma / tau * (t / tau).powf(gamma - 1.0) * (-x).exp()
            })?
        }
        Model::KilbasSaigo { alpha, beta, tau } => {
            let g = alpha + beta;
            let (m, l) = (g / alpha, beta / alpha);
            let mut inner: Option<Error> = None;
            let chi = susceptibility_by_ray(omega, tau, |t| {
                let z = -(t / tau).powf(g);
                match sf::KilbasSaigoArgs::new(alpha, m, l, z)
                    .and_then(sf::kilbas_saigo_deriv)
                {
                    Ok(out) => g / tau * (t / tau).powf(g - 1.0) * out.value,
                    Err(e) => {
                        inner.get_or_insert(e);
                        Complex64::new(f64::NAN, f64::NAN)
                    }
                }
            });
            match (chi, inner) {
                (Err(_), Some(e)) => return Err(e),
                (chi, _) => chi?,
            }
        }
        Model::ExcessWing { alpha, tau1, tau2 } => {
            let wa = i_omega_tau_pow(omega * tau2, alpha);
            let one = Complex64::new(1.0, 0.0);
            (one + wa) / (one + wa + Complex64::new(0.0, omega * tau1))
        }
    };
    Ok(chi)
}

/// Laplace transform of a response function at s = i omega, taken along the
/// ray arg t = -pi/4 where both the kernel and the analytically continued
/// response decay.
fn susceptibility_by_ray<F: FnMut(Complex64) -> Complex64>(
    omega: f64,
    tau: f64,
    f: F,
) -> Result<Complex64> {
    transforms::forward_laplace_sector(f, Complex64::new(0.0, omega), FRAC_PI_4, tau)
}

/// [`susceptibility`] packaged with the positive-loss sign convention.
pub fn susceptibility_point(model: &Model, omega: f64) -> Result<ComplexSusceptibilityPoint> {
    let chi = susceptibility(model, omega)?;
    Ok(ComplexSusceptibilityPoint {
        omega,
        chi_re: chi.re,
        chi_im: -chi.im,
    })
}

/// (chi', chi'') pairs over an ascending frequency grid, ready for a
/// Cole-Cole plot (loss positive, upper half plane).
pub fn cole_cole_locus(model: &Model, omega_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    if omega_grid.is_empty() {
        return Err(Error::InvalidInput("empty frequency grid".into()));
    }
    if !omega_grid.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput(
            "frequency grid must be strictly ascending".into(),
        ));
    }
    omega_grid
        .iter()
        .map(|&w| susceptibility_point(model, w).map(|p| (p.chi_re, p.chi_im)))
        .collect()
}

// ---------------------------------------------------------------------------
// Time domain
// ---------------------------------------------------------------------------

/// Kilbas-Saigo model shape parameters: overall decay exponent gamma and the
/// (m, l) pair of the underlying special function.
fn ks_shape(alpha: f64, beta: f64) -> (f64, f64, f64) {
    let g = alpha + beta;
    (g, g / alpha, beta / alpha)
}

/// Relaxation function Psi(t): 1 at t = 0, completely monotone, -> 0.
pub fn relaxation(model: &Model, t: f64) -> Result<f64> {
    model.ensure_valid()?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::Domain(format!("relaxation needs t >= 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    let v = match *model {
        Model::Debye { tau } => (-t / tau).exp(),
        Model::ColeCole { alpha, tau } => {
            let z = Complex64::new(-(t / tau).powf(alpha), 0.0);
            sf::ml2(sf::Ml2Args::new(alpha, 1.0, z)?)?.value.re
        }
        Model::DavidsonCole { gamma, tau } => {
            sf::upper_incomplete_gamma(gamma, t / tau)? * sf::rgamma(gamma)
        }
        Model::HavriliakNegami { alpha, gamma, tau } => {
            let x = t / tau;
            let z = Complex64::new(-x.powf(alpha), 0.0);
            let e = sf::ml3(sf::Ml3Args::new(alpha, alpha * gamma + 1.0, gamma, z)?)?;
            1.0 - x.powf(alpha * gamma) * e.value.re
        }
        Model::Jws { alpha, gamma, tau } => {
            let z = Complex64::new(-(t / tau).powf(alpha), 0.0);
            sf::ml3(sf::Ml3Args::new(alpha, 1.0, gamma, z)?)?.value.re
        }
        Model::Kww { gamma, tau } => (-(t / tau).powf(gamma)).exp(),
        Model::KilbasSaigo { alpha, beta, tau } => {
            let (g, m, l) = ks_shape(alpha, beta);
            let z = Complex64::new(-(t / tau).powf(g), 0.0);
            sf::kilbas_saigo(sf::KilbasSaigoArgs::new(alpha, m, l, z)?)?.value.re
        }
        Model::ExcessWing { alpha, tau1, tau2 } => {
            ew_time_function(alpha, tau1, tau2, t, SpectralKind::Relaxation)?
        }
    };
    Ok(v)
}

/// Response function phi(t) = -dPsi/dt for t > 0.
///
/// For Jws this is the regular part of the response, which is all of it:
/// the delta term sometimes written at t = 0 carries zero weight here
/// because Psi is continuous at 0 with Psi(0+) = 1, so the regular part
/// alone integrates to 1.
pub fn response(model: &Model, t: f64) -> Result<f64> {
    model.ensure_valid()?;
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!("response needs t > 0, got {t}")));
    }
    let v = match *model {
        Model::Debye { tau } => (-t / tau).exp() / tau,
        Model::ColeCole { alpha, tau } => {
            let x = t / tau;
            let z = Complex64::new(-x.powf(alpha), 0.0);
            let e = sf::ml2(sf::Ml2Args::new(alpha, alpha, z)?)?;
            x.powf(alpha - 1.0) / tau * e.value.re
        }
        Model::DavidsonCole { gamma, tau } => {
            let x = t / tau;
            x.powf(gamma - 1.0) * (-x).exp() * sf::rgamma(gamma) / tau
        }
        Model::HavriliakNegami { alpha, gamma, tau } => {
            let x = t / tau;
            let z = Complex64::new(-x.powf(alpha), 0.0);
            let e = sf::ml3(sf::Ml3Args::new(alpha, alpha * gamma, gamma, z)?)?;
            x.powf(alpha * gamma - 1.0) / tau * e.value.re
        }
        Model::Jws { alpha, gamma, tau } => {
            let x = t / tau;
            let z = Complex64::new(-x.powf(alpha), 0.0);
            // E^gamma_{alpha,0} of a negative argument is negative, so the
            // regular part below is positive
            let e = sf::ml3(sf::Ml3Args::new(alpha, 0.0, gamma, z)?)?;
            -e.value.re / (x * tau)
        }
        Model::Kww { gamma, tau } => {
            let x = t / tau;
            gamma / tau * x.powf(gamma - 1.0) * (-x.powf(gamma)).exp()
        }
        Model::KilbasSaigo { alpha, beta, tau } => {
            let (g, m, l) = ks_shape(alpha, beta);
            let x = t / tau;
            let z = Complex64::new(-x.powf(g), 0.0);
            let e = sf::kilbas_saigo_deriv(sf::KilbasSaigoArgs::new(alpha, m, l, z)?)?;
            g / tau * x.powf(g - 1.0) * e.value.re
        }
        Model::ExcessWing { alpha, tau1, tau2 } => {
            ew_time_function(alpha, tau1, tau2, t, SpectralKind::Response)?
        }
    };
    Ok(v)
}

/// Leading displayed short/long-time expansion of Psi for the families that
/// have one (ColeCole, DavidsonCole, HavriliakNegami, Jws, Kww); the other
/// models are refused.
pub fn relaxation_asymptotic(model: &Model, t: f64, regime: AsymptoticRegime) -> Result<f64> {
    model.ensure_valid()?;
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!("asymptotics need t > 0, got {t}")));
    }
    use AsymptoticRegime::*;
    let v = match (*model, regime) {
        (Model::ColeCole { alpha, tau }, Short) => {
            1.0 - (t / tau).powf(alpha) * sf::rgamma(alpha + 1.0)
        }
        (Model::ColeCole { alpha, tau }, Long) => {
            (t / tau).powf(-alpha) * sf::rgamma(1.0 - alpha)
        }
        (Model::DavidsonCole { gamma, tau }, Short) => {
            1.0 - (t / tau).powf(gamma) * sf::rgamma(gamma + 1.0)
        }
        (Model::DavidsonCole { gamma, tau }, Long) => {
            let x = t / tau;
            x.powf(gamma - 1.0) * (-x).exp() * sf::rgamma(gamma)
        }
        (Model::HavriliakNegami { alpha, gamma, tau }, Short) => {
            1.0 - (t / tau).powf(alpha * gamma) * sf::rgamma(alpha * gamma + 1.0)
        }
        (Model::HavriliakNegami { alpha, gamma, tau }, Long) => {
            gamma * (t / tau).powf(-alpha) * sf::rgamma(1.0 - alpha)
        }
        (Model::Jws { alpha, gamma, tau }, Short) => {
            1.0 - gamma * (t / tau).powf(alpha) * sf::rgamma(alpha + 1.0)
        }
        (Model::Jws { alpha, gamma, tau }, Long) => {
            // the inverse-power tail of E^gamma_{alpha,1} carries coefficient
            // 1/Gamma(1 - alpha gamma); the extra factor gamma sometimes
            // quoted for this family belongs to the Havriliak-Negami tail
            (t / tau).powf(-alpha * gamma) * sf::rgamma(1.0 - alpha * gamma)
        }
        (Model::Kww { gamma, tau }, Short) => 1.0 - (t / tau).powf(gamma),
        (Model::Kww { gamma, tau }, Long) => (-(t / tau).powf(gamma)).exp(),
        (m, _) => {
            return Err(Error::UnsupportedModel(format!(
                "no displayed asymptotics for the {} model",
                m.kind_name()
            )))
        }
    };
    Ok(v)
}

/// Universal-relaxation-law exponent mapping. ColeCole, HavriliakNegami and
/// Jws fit the two-power-law pattern with both exponents in (0, 1); the
/// remaining families get their effective low/high-frequency loss slopes
/// with `fits_url` false (Debye-like m = 1 and/or an out-of-range n).
pub fn jonscher_exponents(model: &Model) -> Result<UrlExponents> {
    model.ensure_valid()?;
    let (m, n, fits) = match *model {
        Model::Debye { .. } => (1.0, 0.0, false),
        Model::ColeCole { alpha, .. } => (alpha, 1.0 - alpha, true),
        Model::DavidsonCole { gamma, .. } => (1.0, 1.0 - gamma, false),
        Model::HavriliakNegami { alpha, gamma, .. } => (alpha, 1.0 - alpha * gamma, true),
        Model::Jws { alpha, gamma, .. } => (alpha * gamma, 1.0 - alpha, true),
        Model::Kww { gamma, .. } => (1.0, 1.0 - gamma, false),
        Model::KilbasSaigo { alpha, beta, .. } => {
            let g = alpha + beta;
            (g, 1.0 - g, false)
        }
        Model::ExcessWing { alpha, .. } => (1.0, alpha, false),
    };
    // the boundary alpha = gamma = 1 collapses CC/HN/JWS onto Debye, where
    // the URL exponents leave (0, 1)
    let fits = fits && m > 0.0 && m < 1.0 && n > 0.0 && n < 1.0;
    Ok(UrlExponents { m, n, fits_url: fits })
}

// ---------------------------------------------------------------------------
// Spectral densities
// ---------------------------------------------------------------------------

/// theta_alpha(r) = arg(1 + (tau r)^alpha e^{i alpha pi}), the angle entering
/// the Havriliak-Negami and Jws rate densities; lies in [0, alpha pi].
pub fn hn_spectral_angle(alpha: f64, tau: f64, r: f64) -> Result<HnSpectralAngle> {
    if !(alpha > 0.0 && alpha <= 1.0 && tau > 0.0 && r >= 0.0) {
        return Err(Error::Domain(format!(
            "spectral angle needs 0 < alpha <= 1, tau > 0, r >= 0; \
             got alpha={alpha}, tau={tau}, r={r}"
        )));
    }
    let p = (tau * r).powf(alpha);
    let theta = (p * sf::sinpi(alpha)).atan2(1.0 + p * (PI * alpha).cos());
    Ok(HnSpectralAngle { theta })
}

/// Rate density K_Psi(r) by the model's closed form (r > 0 assumed checked).
fn rate_density(model: &Model, r: f64) -> Result<f64> {
    let v = match *model {
        Model::Debye { .. } => {
            return Err(Error::DegenerateSpectrum(
                "the single-exponential spectrum is a point mass at r = 1/tau".into(),
            ))
        }
        Model::ColeCole { alpha, tau } => {
            if alpha == 1.0 {
                return Err(Error::DegenerateSpectrum(
                    "alpha = 1 collapses the spectrum to a point mass".into(),
                ));
            }
            let p = (tau * r).powf(alpha);
            let b = p * p + 2.0 * p * (PI * alpha).cos() + 1.0;
            p * sf::sinpi(alpha) / (PI * r * b)
        }
        Model::DavidsonCole { gamma, tau } => {
            if gamma == 1.0 {
                return Err(Error::DegenerateSpectrum(
                    "gamma = 1 collapses the spectrum to a point mass".into(),
                ));
            }
            // all mass sits above the cut-off rate 1/tau
            if tau * r <= 1.0 {
                0.0
            } else {
                sf::sinpi(gamma) / (PI * r * (tau * r - 1.0).powf(gamma))
            }
        }
        Model::HavriliakNegami { alpha, gamma, tau } => {
            if alpha == 1.0 && gamma == 1.0 {
                return Err(Error::DegenerateSpectrum(
                    "alpha = gamma = 1 collapses the spectrum to a point mass".into(),
                ));
            }
            let theta = hn_spectral_angle(alpha, tau, r)?.theta;
            let p = (tau * r).powf(alpha);
            let b = p * p + 2.0 * p * (PI * alpha).cos() + 1.0;
            (gamma * theta).sin() / (PI * r * b.powf(0.5 * gamma))
        }
        Model::Jws { alpha, gamma, tau } => {
            if alpha == 1.0 && gamma == 1.0 {
                return Err(Error::DegenerateSpectrum(
                    "alpha = gamma = 1 collapses the spectrum to a point mass".into(),
                ));
            }
            let theta = hn_spectral_angle(alpha, tau, r)?.theta;
            let p = (tau * r).powf(alpha);
            let b = p * p + 2.0 * p * (PI * alpha).cos() + 1.0;
            p.powf(gamma) * (gamma * (alpha * PI - theta)).sin() / (PI * r * b.powf(0.5 * gamma))
        }
        Model::Kww { gamma, tau } => tau * sf::levy_extremal_density(gamma, tau * r)?,
        Model::KilbasSaigo { .. } => {
            return Err(Error::UnsupportedModel(
                "no closed-form spectral density for the kilbas-saigo model; \
                 invert its susceptibility numerically instead"
                    .into(),
            ))
        }
        Model::ExcessWing { alpha, tau1, tau2 } => {
            let p = tau2.powf(alpha) * r.powf(alpha);
            let u = 1.0 - tau1 * r;
            let d = u * u + 2.0 * u * p * (PI * alpha).cos() + p * p;
            tau1 * p * sf::sinpi(alpha) / (PI * d)
        }
    };
    Ok(v)
}

/// Spectral density value in the requested representation:
/// K over rates (x = r > 0), H over times (x = tau > 0, H(x) = K(1/x)/x^2),
/// or L over log-times (any real x, L(x) = e^(-x) K(e^(-x))).
///
/// Degenerate spectra (Debye; ColeCole at alpha = 1; DavidsonCole at
/// gamma = 1; HN/Jws at alpha = gamma = 1) are refused as point masses, and
/// the kilbas-saigo family has no closed form here.
pub fn spectral(
    model: &Model,
    kind: SpectralKind,
    representation: SpectralRepresentation,
    x: f64,
) -> Result<f64> {
    model.ensure_valid()?;
    if !x.is_finite() {
        return Err(Error::Domain(format!("spectral abscissa must be finite, got {x}")));
    }
    let (r, jac) = match representation {
        SpectralRepresentation::Frequency => {
            if x <= 0.0 {
                return Err(Error::Domain(format!("rate must be positive, got {x}")));
            }
            (x, 1.0)
        }
        SpectralRepresentation::Time => {
            if x <= 0.0 {
                return Err(Error::Domain(format!("time must be positive, got {x}")));
            }
            (1.0 / x, 1.0 / (x * x))
        }
        SpectralRepresentation::LogTime => {
            // e^(+-x) must stay inside f64 range or the jacobian turns to 0/inf.
            if x.abs() > 700.0 {
                return Err(Error::Domain(format!("log-time {x} is out of range")));
            }
            let r = (-x).exp();
            (r, r)
        }
    };
    let k = rate_density(model, r)?;
    let k = match kind {
        SpectralKind::Relaxation => k,
        SpectralKind::Response => r * k,
    };
    Ok(k * jac)
}

/// [`spectral`] over a whole grid, packaged with its labels.
pub fn spectral_samples(
    model: &Model,
    kind: SpectralKind,
    representation: SpectralRepresentation,
    grid: &[f64],
) -> Result<SpectralDensity> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("empty spectral grid".into()));
    }
    let samples = grid
        .iter()
        .map(|&x| spectral(model, kind, representation, x).map(|v| (x, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralDensity {
        kind,
        representation,
        samples,
    })
}

// ---------------------------------------------------------------------------
// Excess-wing partial fractions
// ---------------------------------------------------------------------------

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// alpha as p/q in lowest terms with q <= 64, if it is one to 1e-12.
fn small_rational(alpha: f64) -> Option<(u32, u32)> {
    for q in 1..=64u32 {
        let p = (alpha * q as f64).round();
        if p >= 1.0 && (alpha - p / q as f64).abs() <= 1e-12 {
            let p = p as u32;
            if p < q && gcd(p as u64, q as u64) == 1 {
                return Some((p, q));
            }
        }
    }
    None
}

/// All roots of the real polynomial sum_k coeffs[k] z^k by the Durand-Kerner
/// simultaneous iteration, then a few Newton polish steps.
fn all_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut v = Complex64::new(0.0, 0.0);
        for &c in monic.iter().rev() {
            v = v * z + c;
        }
        v
    };
    let radius = 1.0 + monic[..deg].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..deg)
        .map(|j| Complex64::from_polar(radius, 2.0 * PI * j as f64 / deg as f64 + 0.4))
        .collect();
    for _ in 0..300 {
        let mut worst = 0.0f64;
        for j in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for k in 0..deg {
                if k != j {
                    den *= z[j] - z[k];
                }
            }
            let step = eval(z[j]) / den;
            z[j] -= step;
            worst = worst.max(step.norm() / (1.0 + z[j].norm()));
        }
        if worst < 1e-14 {
            return Ok(z);
        }
    }
    Err(Error::EvaluationFailure {
        what: "polynomial root iteration did not settle",
        partial: Complex64::new(0.0, 0.0),
        err_est: f64::INFINITY,
    })
}

/// Roots and residues of the excess-wing susceptibility in the z = s^(1/q)
/// variable, for rational alpha = p/q (q <= 64). Downstream,
///
/// ```text
/// Psi(t) = sum_j d_j t^(1/q - 1) E_{1/q,1/q}(lambda_j t^(1/q))
/// ```
///
/// and the response is the same sum with c_j.
pub fn ew_partial_fractions(model: &Model) -> Result<EwPartialFractions> {
    model.ensure_valid()?;
    let Model::ExcessWing { alpha, tau1, tau2 } = *model else {
        return Err(Error::UnsupportedModel(format!(
            "partial fractions are an excess-wing construction, not {}",
            model.kind_name()
        )));
    };
    let Some((p, q)) = small_rational(alpha) else {
        return Err(Error::Domain(format!(
            "alpha = {alpha} is not p/q with q <= 64; partial fractions need rational alpha"
        )));
    };
    // Q(z) = 1 + tau2^alpha z^p + tau1 z^q
    let a = tau2.powf(alpha);
    let mut coeffs = vec![0.0; q as usize + 1];
    coeffs[0] = 1.0;
    coeffs[p as usize] += a;
    coeffs[q as usize] += tau1;
    let mut roots = all_roots(&coeffs)?;
    // Newton polish on the sparse form
    for z in roots.iter_mut() {
        for _ in 0..3 {
            let zp = z.powu(p - 1);
            let zq = z.powu(q - 1);
            let f = Complex64::new(1.0, 0.0) + a * zp * *z + tau1 * zq * *z;
            let df = p as f64 * a * zp + q as f64 * tau1 * zq;
            *z -= f / df;
        }
    }
    roots.sort_by(|x, y| (x.re, x.im).partial_cmp(&(y.re, y.im)).unwrap());
    let scale = roots.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if (roots[i] - roots[j]).norm() < 1e-6 * scale {
                return Err(Error::MultipleRoot(format!(
                    "roots {} and {} of the rate polynomial coincide",
                    roots[i], roots[j]
                )));
            }
        }
    }
    let mut residues_response = Vec::with_capacity(roots.len());
    let mut residues_relaxation = Vec::with_capacity(roots.len());
    for &z in &roots {
        let dq = p as f64 * a * z.powu(p - 1) + q as f64 * tau1 * z.powu(q - 1);
        residues_response.push((Complex64::new(1.0, 0.0) + a * z.powu(p)) / dq);
        residues_relaxation.push(tau1 / dq);
    }
    Ok(EwPartialFractions {
        p,
        q,
        roots,
        residues_response,
        residues_relaxation,
    })
}

/// Excess-wing time functions: partial fractions where alpha is a small
/// rational and the Mittag-Leffler arguments stay in clean f64 range,
/// otherwise the spectral integral of the closed-form rate density.
fn ew_time_function(
    alpha: f64,
    tau1: f64,
    tau2: f64,
    t: f64,
    kind: SpectralKind,
) -> Result<f64> {
    let model = Model::ExcessWing { alpha, tau1, tau2 };
    if let Ok(pf) = ew_partial_fractions(&model) {
        let q = pf.q as f64;
        let lam_max = pf.roots.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        // series noise for E_{1/q,1/q} grows like exp(|lambda|^q t)
        if lam_max.powf(q) * t <= 20.0 {
            let x = t.powf(1.0 / q);
            let res = match kind {
                SpectralKind::Relaxation => &pf.residues_relaxation,
                SpectralKind::Response => &pf.residues_response,
            };
            let mut sum = Complex64::new(0.0, 0.0);
            for (&lam, &r) in pf.roots.iter().zip(res) {
                let e = sf::ml2(sf::Ml2Args::new(1.0 / q, 1.0 / q, lam * x)?)?;
                sum += r * e.value;
            }
            return Ok(t.powf(1.0 / q - 1.0) * sum.re);
        }
    }
    transforms::spectral_reconstruct(
        |r| {
            let k = rate_density(&model, r).unwrap_or(f64::NAN);
            match kind {
                SpectralKind::Relaxation => k,
                SpectralKind::Response => r * k,
            }
        },
        t,
    )
}
