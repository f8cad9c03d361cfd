//! Laplace-domain machinery shared by the model evaluators and the test
//! oracles: forward transforms by adaptive quadrature, Bromwich inversion on
//! a parabolic contour, spectral densities read off the branch cut, and
//! reconstruction of time functions from those densities.
//!
//! Everything here works on images that are analytic off the negative real
//! axis and real-valued on the positive real axis, which is exactly the class
//! the relaxation models produce.

use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, LN_10, PI};

// G7/K15 nodes and weights (QUADPACK values).
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One G7/K15 panel on [a, b]: returns (kronrod value, |kronrod - gauss|).
fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        kron += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    (kron * h, (kron - gauss).norm() * h)
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    defect: f64,
    // set once the panel is too narrow for f64 to bisect further; its defect
    // then stays in the error estimate but stops driving refinement
    frozen: bool,
}

const MAX_PANELS: usize = 4096;

/// Globally adaptive G7/K15 quadrature of a complex-valued integrand over
/// [a, b]. The worst panel (largest Kronrod/Gauss defect) is bisected until
/// the summed defect drops below `abs_tol.max(rel_tol * |value|)`.
///
/// Returns (value, summed defect). Fails if the panel budget runs out first
/// or the integrand produces non-finite values.
pub fn integrate_complex<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<(Complex64, f64)> {
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(Error::Domain(format!(
            "quadrature interval [{a}, {b}] must be finite and ordered"
        )));
    }
    if a == b {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }

    // Seed with two panels: a single G7/K15 can report a deceptively small
    // defect on integrands with symmetric structure.
    let mid = 0.5 * (a + b);
    let mut panels = Vec::with_capacity(64);
    for (lo, hi) in [(a, mid), (mid, b)] {
        let (value, defect) = gk15(&mut f, lo, hi);
        panels.push(Panel { a: lo, b: hi, value, defect, frozen: false });
    }

    loop {
        let total: Complex64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.defect).sum();
        if !total.is_finite() || !err.is_finite() {
            return Err(Error::EvaluationFailure {
                what: "quadrature hit a non-finite integrand value",
                partial: total,
                err_est: f64::INFINITY,
            });
        }
        if err <= abs_tol.max(rel_tol * total.norm()) {
            return Ok((total, err));
        }

        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.frozen)
            .max_by(|x, y| x.1.defect.total_cmp(&y.1.defect))
            .map(|(i, _)| i);
        let Some(i) = worst else {
            // nothing left to bisect at f64 resolution
            return Err(Error::EvaluationFailure {
                what: "quadrature stalled at f64 resolution",
                partial: total,
                err_est: err,
            });
        };
        if panels.len() >= MAX_PANELS {
            return Err(Error::EvaluationFailure {
                what: "quadrature ran out of panels",
                partial: total,
                err_est: err,
            });
        }

        let (lo, hi) = (panels[i].a, panels[i].b);
        let m = 0.5 * (lo + hi);
        if m <= lo || m >= hi {
            panels[i].frozen = true;
            continue;
        }
        let (v1, d1) = gk15(&mut f, lo, m);
        let (v2, d2) = gk15(&mut f, m, hi);
        panels[i] = Panel { a: lo, b: m, value: v1, defect: d1, frozen: false };
        panels.push(Panel { a: m, b: hi, value: v2, defect: d2, frozen: false });
    }
}

/// Real-valued wrapper around [`integrate_complex`].
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<(f64, f64)> {
    integrate_complex(|x| Complex64::new(f(x), 0.0), a, b, rel_tol, abs_tol)
        .map(|(v, e)| (v.re, e))
}

// Outward march over (0, inf) in log space: one decade per segment, stop a
// direction once two consecutive segments contribute less than TAIL_STOP of
// the accumulated total.
const SEGMENT: f64 = LN_10;
const MAX_SEGMENTS: usize = 70;
const TAIL_STOP: f64 = 1e-12;

/// Integral of `g` over (0, inf), computed as decade segments in log space
/// marching outward from `anchor` (a scale where the integrand is expected
/// to be alive). The log substitution flattens endpoint power laws like
/// r^(alpha-1) into plain exponentials, so no special endpoint handling is
/// needed.
///
/// Returns (value, error estimate including a truncated-tail allowance).
pub fn integrate_semiline<F: FnMut(f64) -> Complex64>(
    mut g: F,
    anchor: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<(Complex64, f64)> {
    if !(anchor.is_finite() && anchor > 0.0) {
        return Err(Error::Domain(format!("semiline anchor {anchor} must be positive")));
    }
    let x0 = anchor.ln();
    let mut integrand = |x: f64| {
        let r = x.exp();
        g(r) * r
    };

    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0f64;
    for dir in [1.0f64, -1.0] {
        let mut quiet = 0u32;
        let mut j = 0usize;
        loop {
            if j >= MAX_SEGMENTS {
                return Err(Error::EvaluationFailure {
                    what: "semi-infinite quadrature tail did not settle",
                    partial: total,
                    err_est: f64::INFINITY,
                });
            }
            let (lo, hi) = if dir > 0.0 {
                (x0 + j as f64 * SEGMENT, x0 + (j + 1) as f64 * SEGMENT)
            } else {
                (x0 - (j + 1) as f64 * SEGMENT, x0 - j as f64 * SEGMENT)
            };
            // each segment gets a slice of whatever absolute budget the
            // running total implies
            let seg_abs = abs_tol.max(rel_tol * total.norm()) / 16.0;
            let (v, e) = match integrate_complex(&mut integrand, lo, hi, rel_tol, seg_abs) {
                Ok(ve) => ve,
                // a segment that exhausts its refinement budget still carries
                // an honest value and defect (integrand noise floors do this);
                // keep both and let the caller's accuracy gate arbitrate
                Err(Error::EvaluationFailure { partial, err_est, .. })
                    if err_est.is_finite() =>
                {
                    (partial, err_est)
                }
                Err(e) => return Err(e),
            };
            total += v;
            err += e;
            let floor = TAIL_STOP * total.norm().max(f64::MIN_POSITIVE) + abs_tol;
            if v.norm() <= floor {
                quiet += 1;
                if quiet >= 2 {
                    break;
                }
            } else {
                quiet = 0;
            }
            j += 1;
        }
        // allowance for the mass beyond the truncation point
        err += 4.0 * (TAIL_STOP * total.norm() + abs_tol);
    }
    Ok((total, err))
}

/// A Laplace image F(s): analytic off the cut along the negative real axis
/// and real-valued (hence conjugate-symmetric) on the right half plane. The
/// contour and cut-edge routines below rely on both properties.
pub struct LaplaceImage<'a> {
    f: Box<dyn Fn(Complex64) -> Complex64 + 'a>,
}

impl<'a> LaplaceImage<'a> {
    pub fn new(f: impl Fn(Complex64) -> Complex64 + 'a) -> Self {
        Self { f: Box::new(f) }
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        (self.f)(s)
    }
}

/// Forward transform: integral of e^(-s t) f(t) over t in (0, inf) for
/// Re(s) > 0. Relative accuracy target 1e-8; anything worse is reported as a
/// failure carrying the achieved estimate.
pub fn forward_laplace<F: FnMut(f64) -> f64>(mut f: F, s: Complex64) -> Result<Complex64> {
    if !(s.is_finite() && s.re > 0.0) {
        return Err(Error::Domain(format!(
            "forward transform needs Re(s) > 0, got s = {s}"
        )));
    }
    let anchor = (1.0 / s.norm()).clamp(1e-8, 1e8);
    let (v, e) = integrate_semiline(|t| (-s * t).exp() * f(t), anchor, 1e-9, 1e-14)?;
    if e > 1e-8 * v.norm() + 1e-12 {
        return Err(Error::EvaluationFailure {
            what: "forward transform quadrature fell short of target accuracy",
            partial: v,
            err_est: e,
        });
    }
    Ok(v)
}

/// Forward transform along a tilted ray: integral of e^(-s t) f(t) with t
/// running over t = u e^(-i theta), u in (0, inf). For integrands analytic
/// and bounded between the ray and the positive axis this equals the
/// ordinary transform, but a purely oscillatory kernel (s on the imaginary
/// axis) becomes exponentially damped once Re(s e^(-i theta)) > 0, which the
/// caller must arrange. `anchor` is a time scale where f is alive, as in
/// [`integrate_semiline`].
pub fn forward_laplace_sector<F: FnMut(Complex64) -> Complex64>(
    mut f: F,
    s: Complex64,
    theta: f64,
    anchor: f64,
) -> Result<Complex64> {
    let rot = Complex64::from_polar(1.0, -theta);
    let damp = (s * rot).re;
    if !(s.is_finite() && theta.abs() < FRAC_PI_2 && damp > 0.0) {
        return Err(Error::Domain(format!(
            "sector transform needs |theta| < pi/2 and Re(s e^(-i theta)) > 0; \
             got s = {s}, theta = {theta}"
        )));
    }
    // anchor where the damped kernel still has mass
    let anchor = anchor.min(1.0 / damp).clamp(1e-8, 1e8);
    // demanded tolerance matches the 1e-8 acceptance gate below; asking for
    // more runs special-function integrands into their own noise floor
    let (v, e) = integrate_semiline(
        |u| {
            let t = rot * u;
            (-s * t).exp() * f(t) * rot
        },
        anchor,
        1e-8,
        1e-13,
    )?;
    if e > 1e-8 * v.norm() + 1e-12 {
        return Err(Error::EvaluationFailure {
            what: "sector transform quadrature fell short of target accuracy",
            partial: v,
            err_est: e,
        });
    }
    Ok(v)
}

// Bromwich contour: the parabola s(u) = (mu/t)(1 + iu)^2 with trapezoid step
// h = 3/n, truncated at |u| = 3 where exp(Re s t) = exp(-8 mu) is far below
// f64 resolution. mu is shared across node counts so the 32/64/128 ladder
// measures pure discretization error; it starts at 2 pi and widens 1.8x per
// retry. The round-off floor is eps times the summed term magnitude (the
// "mass"), which parabola_value reports so acceptance can sit on it.
const CONTOUR_MU0: f64 = 2.0 * PI;

fn parabola_value(image: &LaplaceImage<'_>, t: f64, mu: f64, n: usize) -> (f64, f64) {
    let h = 3.0 / n as f64;
    // s t = mu (1 + iu)^2 exactly, so the exponential never sees t
    let mut acc = Complex64::new(0.0, 0.0);
    let mut mass = 0.0f64;
    for k in (1..=n).rev() {
        let u = k as f64 * h;
        let w = Complex64::new(1.0, u);
        let s = w * w * (mu / t);
        let term = (w * w * mu).exp() * image.eval(s) * w;
        acc += term;
        mass += term.norm();
    }
    // u = 0 node once; the k >= 1 nodes enter with their conjugates, which
    // for a real image is 2 Re(acc)
    let center = mu.exp() * image.eval(Complex64::new(mu / t, 0.0));
    let scale = mu * h / (PI * t);
    let value = ((acc + acc.conj() + center) * scale).re;
    (value, (2.0 * mass + center.norm()) * scale)
}

/// Inverse transform of a [`LaplaceImage`] at time t > 0, on a parabolic
/// contour wrapping the negative-axis cut. Node counts 32/64/128 at a shared
/// contour width provide the error estimate by doubling; images that refuse
/// to settle (singularities off the cut, growth on the contour) come back as
/// failures with the best estimate achieved.
pub fn invert_laplace(image: &LaplaceImage<'_>, t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!("inversion time {t} must be positive")));
    }
    let mut best_v = 0.0f64;
    let mut best_d = f64::INFINITY;
    for attempt in 0..3 {
        let mu = CONTOUR_MU0 * 1.8f64.powi(attempt);
        let (v32, _) = parabola_value(image, t, mu, 32);
        let (v64, mass) = parabola_value(image, t, mu, 64);
        // the mass term keeps small-valued inversions (e.g. e^(-10)) from
        // being failed for sitting on the contour's own round-off floor
        let accept = |d: f64, v: f64| d <= 1e-9 * v.abs() + 32.0 * f64::EPSILON * mass;
        let d1 = (v32 - v64).abs();
        if v64.is_finite() && mass.is_finite() && accept(d1, v64) {
            return Ok(v64);
        }
        let (v128, _) = parabola_value(image, t, mu, 128);
        let d2 = (v64 - v128).abs();
        if v128.is_finite() && mass.is_finite() && accept(d2, v128) {
            return Ok(v128);
        }
        if d2 < best_d {
            best_d = d2;
            best_v = v128;
        }
    }
    Err(Error::EvaluationFailure {
        what: "Bromwich contour did not converge",
        partial: Complex64::new(best_v, 0.0),
        err_est: best_d,
    })
}

/// Spectral density read off the cut: K(r) = -(1/pi) Im F(r e^(i pi)),
/// evaluated on the upper edge. The +0.0 imaginary part of the argument pins
/// arg(s) = +pi, so principal-branch powers inside the image land on the
/// correct side.
pub fn titchmarsh_spectral(image: &LaplaceImage<'_>, r: f64) -> Result<f64> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::Domain(format!("spectral rate {r} must be positive")));
    }
    let v = image.eval(Complex64::new(-r, 0.0));
    if !v.is_finite() {
        return Err(Error::Domain(format!(
            "Laplace image is not finite on the cut at r = {r}"
        )));
    }
    Ok(-v.im / PI)
}

/// Rebuild a time function from its spectral density: integral of
/// e^(-r t) K(r) over r in (0, inf). The outward decade march stops once a
/// whole decade contributes under 1e-12 of the accumulated value twice in a
/// row, which keeps the truncated tail below the 1e-6 contract with room to
/// spare.
pub fn spectral_reconstruct<F: FnMut(f64) -> f64>(mut k: F, t: f64) -> Result<f64> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::Domain(format!("reconstruction time {t} must be >= 0")));
    }
    let anchor = 1.0 / (t + 1.0);
    let (v, e) = integrate_semiline(
        |r| Complex64::new((-r * t).exp() * k(r), 0.0),
        anchor,
        1e-9,
        1e-14,
    )?;
    if e > 1e-7 * v.norm() + 1e-10 {
        return Err(Error::EvaluationFailure {
            what: "spectral reconstruction quadrature fell short of target accuracy",
            partial: v,
            err_est: e,
        });
    }
    Ok(v.re)
}
