//! Tests for the Laplace-domain machinery: forward quadrature, parabolic
//! contour inversion, cut-edge spectral densities, and reconstruction.
//! Frozen constants were produced by 50-digit arithmetic (series summation
//! for the Mittag-Leffler values, two independent inversion schemes for the
//! two-scale image) and are quoted to 17 significant digits.

use direl::special_functions as sf;
use direl::transforms::{
    forward_laplace, forward_laplace_sector, integrate_semiline, invert_laplace,
    spectral_reconstruct, titchmarsh_spectral, LaplaceImage,
};
use direl::{Complex64, Error};
use std::f64::consts::PI;

fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

fn crel(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm()
}

// Normalized Cole-Cole response function tau = 1: t^(a-1) E_{a,a}(-t^a).
fn cc_response(alpha: f64, t: f64) -> f64 {
    let z = Complex64::new(-t.powf(alpha), 0.0);
    t.powf(alpha - 1.0)
        * sf::ml2(sf::Ml2Args::new(alpha, alpha, z).unwrap())
            .unwrap()
            .value
            .re
}

#[test]
fn forward_transform_of_exponentials_is_rational() {
    // exp(-t) -> 1/(s+1)
    let v = forward_laplace(|t| (-t).exp(), Complex64::new(1.0, 0.0)).unwrap();
    assert!(crel(v, Complex64::new(0.5, 0.0)) < 1e-9);
    let s = Complex64::new(2.0, 3.0);
    let v = forward_laplace(|t| (-t).exp(), s).unwrap();
    assert!(crel(v, (s + 1.0).inv()) < 1e-9);
    // t exp(-t) -> 1/(s+1)^2
    let v = forward_laplace(|t| t * (-t).exp(), Complex64::new(1.0, 0.0)).unwrap();
    assert!(crel(v, Complex64::new(0.25, 0.0)) < 1e-9);
}

#[test]
fn forward_transform_handles_power_law_response() {
    // The Cole-Cole response integrates to 1/(1 + s^a) despite the t^(a-1)
    // blow-up at the origin; the log-space march absorbs the endpoint.
    for s in [0.5_f64, 2.0] {
        let v = forward_laplace(|t| cc_response(0.7, t), Complex64::new(s, 0.0)).unwrap();
        let want = (1.0 + s.powf(0.7)).recip();
        assert!(
            crel(v, Complex64::new(want, 0.0)) < 1e-7,
            "s = {s}: got {v}, want {want}"
        );
    }
}

#[test]
fn forward_transform_matches_substituted_stretched_exponential() {
    // Stretched-exponential response, exponent 1/2: the substitution u^2 = t
    // turns its transform into int_0^inf e^-u e^(-s u^2) du, summed at
    // 50 digits for s = 0.01 + i.
    let s = Complex64::new(0.01, 1.0);
    let f = |t: f64| 0.5 * t.powf(-0.5) * (-t.sqrt()).exp();
    let v = forward_laplace(f, s).unwrap();
    let want = Complex64::new(0.53505639908993714, -0.26851743928988161);
    assert!(crel(v, want) < 1e-7, "got {v}, want {want}");
}

#[test]
fn contour_inversion_matches_rational_and_ml_images() {
    // 1/(s+1) -> exp(-t), including values down at e^-10
    let image = LaplaceImage::new(|s| (s + 1.0).inv());
    for t in [0.1, 1.0, 5.0, 10.0] {
        assert!(rel(invert_laplace(&image, t).unwrap(), (-t).exp()) < 1e-9);
    }

    // 1/(1 + s^0.8) -> t^-0.2 E_{0.8,0.8}(-t^0.8); 50-digit series values
    let image = LaplaceImage::new(|s| (1.0 + s.powf(0.8)).inv());
    let rows = [
        (0.25, 0.74461887996148275),
        (1.0, 0.25574384475824187),
        (4.0, 0.029548448457962900),
    ];
    for (t, want) in rows {
        let got = invert_laplace(&image, t).unwrap();
        assert!(rel(got, want) < 1e-8, "t = {t}: got {got}, want {want}");
    }

    // s^-0.2/(1 + s^0.8) is the corresponding relaxation image; at t = 1 it
    // must come back as E_{0.8,1}(-1)
    let image = LaplaceImage::new(|s| s.powf(-0.2) / (1.0 + s.powf(0.8)));
    let got = invert_laplace(&image, 1.0).unwrap();
    assert!(rel(got, 0.38694857861897685) < 1e-8);
}

#[test]
fn cut_edge_density_matches_closed_forms() {
    // Cole-Cole relaxation image, alpha = 0.6: the density off the cut has
    // the closed form (1/pi) r^(a-1) sin(a pi) / (r^2a + 2 r^a cos(a pi) + 1)
    let alpha = 0.6;
    let image = LaplaceImage::new(move |s: Complex64| {
        s.powf(alpha - 1.0) / (1.0 + s.powf(alpha))
    });
    let rows = [
        (0.1, 0.83760855383064745),
        (1.0, 0.21905798622530324),
        (10.0, 0.0083760855383064745),
    ];
    for (r, want) in rows {
        let got = titchmarsh_spectral(&image, r).unwrap();
        assert!(rel(got, want) < 1e-10, "r = {r}: got {got}, want {want}");
        let closed = r.powf(alpha - 1.0) * (alpha * PI).sin()
            / (r.powf(2.0 * alpha) + 2.0 * r.powf(alpha) * (alpha * PI).cos() + 1.0)
            / PI;
        assert!(rel(closed, want) < 1e-14);
    }

    // Havriliak-Negami relaxation image (a = 0.8, g = 0.6): density
    // sin(g theta) / (pi r R^g), R^2 = r^2a + 2 r^a cos(a pi) + 1,
    // theta = atan2(r^a sin(a pi), 1 + r^a cos(a pi))
    let (a, g) = (0.8, 0.6);
    let image = LaplaceImage::new(move |s: Complex64| {
        (1.0 - (1.0 + s.powf(a)).powf(-g)) / s
    });
    let rows = [
        (0.3, 0.24054670427587082),
        (1.0, 0.29083458512625345),
        (3.0, 0.074190088445943479),
    ];
    for (r, want) in rows {
        let got = titchmarsh_spectral(&image, r).unwrap();
        assert!(rel(got, want) < 1e-10, "r = {r}: got {got}, want {want}");
        let ra = r.powf(a);
        let r2 = ra * ra + 2.0 * ra * (a * PI).cos() + 1.0;
        let theta = (ra * (a * PI).sin()).atan2(1.0 + ra * (a * PI).cos());
        let closed = (g * theta).sin() / (PI * r * r2.powf(0.5 * g));
        assert!(rel(closed, want) < 1e-14);
    }

    // a single relaxation time has no continuous density: zero off the pole,
    // and the pole itself is reported as a domain error
    let image = LaplaceImage::new(|s: Complex64| (s + 1.0).inv());
    assert!(titchmarsh_spectral(&image, 0.5).unwrap().abs() < 1e-15);
    assert!(titchmarsh_spectral(&image, 2.0).unwrap().abs() < 1e-15);
    assert!(matches!(
        titchmarsh_spectral(&image, 1.0),
        Err(Error::Domain(_))
    ));
}

#[test]
fn reconstruction_from_density_matches_time_functions() {
    // Cole-Cole alpha = 0.5: density against E_{0.5}(-sqrt(t))
    let k_cc = |r: f64| {
        r.powf(-0.5) * (0.5 * PI).sin()
            / (r + 2.0 * r.powf(0.5) * (0.5 * PI).cos() + 1.0)
            / PI
    };
    let got = spectral_reconstruct(k_cc, 1.0).unwrap();
    assert!(rel(got, 0.42758357615580700) < 1e-6);
    let got = spectral_reconstruct(k_cc, 10.0).unwrap();
    let want = sf::ml2(sf::Ml2Args::new(0.5, 1.0, Complex64::new(-10f64.sqrt(), 0.0)).unwrap())
        .unwrap()
        .value
        .re;
    assert!(rel(got, want) < 1e-6, "got {got}, want {want}");

    // Davidson-Cole g = 0.5 has a cut-off density, zero below r = 1; its
    // total mass is the t = 0 value of the relaxation function
    let k_dc = |r: f64| {
        if r <= 1.0 {
            0.0
        } else {
            (r - 1.0).powf(-0.5) / (PI * r)
        }
    };
    let got = spectral_reconstruct(k_dc, 0.0).unwrap();
    assert!((got - 1.0).abs() < 1e-6, "unit mass, got {got}");
}

#[test]
fn two_scale_image_time_function_agrees_by_two_routes() {
    // Relaxation image with two time scales, tau_fast^0.5 inside a Debye-like
    // envelope: F(s) = 2/(1 + sqrt(s) + 2s). Frozen values are from two
    // independent 50-digit inversion schemes that agreed to 2e-17.
    let image = LaplaceImage::new(|s: Complex64| 2.0 / (1.0 + s.sqrt() + 2.0 * s));
    let rows = [(0.5, 0.56197565783676277), (2.0, 0.24558438713693662)];
    for (t, want) in rows {
        let direct = invert_laplace(&image, t).unwrap();
        assert!(rel(direct, want) < 1e-8, "contour t = {t}: got {direct}");
        // second route: read the density off the cut, integrate it back
        let rebuilt =
            spectral_reconstruct(|r| titchmarsh_spectral(&image, r).unwrap(), t).unwrap();
        assert!(rel(rebuilt, want) < 1e-6, "density t = {t}: got {rebuilt}");
    }
}

#[test]
fn round_trip_through_images_and_inversion() {
    // For each pair (time function, closed-form image): the forward
    // quadrature must reproduce the image on the right half plane, and the
    // contour inversion must reproduce the time function. Done as two half
    // trips because the forward integral only converges for Re(s) > 0 while
    // the contour needs the image's continuation around the cut.
    let gamma09 = sf::gamma(0.9);
    let cases: [(&str, Box<dyn Fn(f64) -> f64>, Box<dyn Fn(Complex64) -> Complex64>); 3] = [
        (
            "debye",
            Box::new(|t: f64| (-t).exp()),
            Box::new(|s: Complex64| (s + 1.0).inv()),
        ),
        (
            "cole-cole 0.7",
            Box::new(|t: f64| cc_response(0.7, t)),
            Box::new(|s: Complex64| (1.0 + s.powf(0.7)).inv()),
        ),
        (
            "davidson-cole 0.9",
            Box::new(move |t: f64| t.powf(-0.1) * (-t).exp() / gamma09),
            Box::new(|s: Complex64| (s + 1.0).powf(-0.9)),
        ),
    ];
    for (name, f, image_fn) in &cases {
        for s in [Complex64::new(0.7, 0.0), Complex64::new(1.0, 2.0)] {
            let got = forward_laplace(|t| f(t), s).unwrap();
            let want = image_fn(s);
            assert!(crel(got, want) < 1e-7, "{name} forward at {s}: {got} vs {want}");
        }
        let image = LaplaceImage::new(|s| image_fn(s));
        for j in 0..10 {
            // ten log-spaced times across [0.1, 10]
            let t = 0.1 * 100f64.powf(j as f64 / 9.0);
            let got = invert_laplace(&image, t).unwrap();
            let want = f(t);
            assert!(
                rel(got, want) < 1e-6,
                "{name} inversion at t = {t}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn stieltjes_identity_links_density_and_transform() {
    // The image, its cut density, and the reconstructed time function are
    // one object seen three ways: F(s) = int K(r)/(s+r) dr, and the forward
    // transform of the reconstruction is F again.
    let alpha = 0.6;
    let closed = |s: Complex64| s.powf(alpha - 1.0) / (1.0 + s.powf(alpha));
    let k = |r: f64| {
        r.powf(alpha - 1.0) * (alpha * PI).sin()
            / (r.powf(2.0 * alpha) + 2.0 * r.powf(alpha) * (alpha * PI).cos() + 1.0)
            / PI
    };
    for s in [Complex64::new(0.5, 0.0), Complex64::new(1.0, 1.0)] {
        let (stieltjes, _) =
            integrate_semiline(|r| Complex64::new(k(r), 0.0) / (s + r), 1.0, 1e-9, 1e-14)
                .unwrap();
        assert!(
            crel(stieltjes, closed(s)) < 1e-8,
            "Stieltjes at {s}: {stieltjes} vs {}",
            closed(s)
        );
        let fwd = forward_laplace(|t| spectral_reconstruct(k, t).unwrap(), s).unwrap();
        assert!(
            crel(fwd, closed(s)) < 1e-6,
            "forward of reconstruction at {s}: {fwd} vs {}",
            closed(s)
        );
    }
}

#[test]
fn transform_domain_errors_are_reported() {
    // forward transform needs Re(s) > 0
    for s in [Complex64::new(-1.0, 0.0), Complex64::new(0.0, 1.0)] {
        assert!(matches!(
            forward_laplace(|t: f64| (-t).exp(), s),
            Err(Error::Domain(_))
        ));
    }
    let image = LaplaceImage::new(|s: Complex64| (s + 1.0).inv());
    assert!(matches!(invert_laplace(&image, 0.0), Err(Error::Domain(_))));
    assert!(matches!(invert_laplace(&image, -2.0), Err(Error::Domain(_))));
    assert!(matches!(
        titchmarsh_spectral(&image, 0.0),
        Err(Error::Domain(_))
    ));

    // e^-s inverts to a point mass at t = 1: there is no function value for
    // the node ladder to settle on, and that must surface as a failure
    let point_mass = LaplaceImage::new(|s: Complex64| (-s).exp());
    assert!(matches!(
        invert_laplace(&point_mass, 1.0),
        Err(Error::EvaluationFailure { .. })
    ));

    // a density with a divergent tail integral is reported, not truncated
    assert!(matches!(
        spectral_reconstruct(|r| 1.0 / (1.0 + r), 0.0),
        Err(Error::EvaluationFailure { .. })
    ));
}

// The tilted-ray transform must reproduce closed forms that the straight-ray
// version cannot reach (purely imaginary s), and agree with it where both
// converge.
#[test]
fn sector_transform_matches_closed_forms() {
    // e^-t against an undamped oscillatory kernel: image 1/(1 + s) at s = 2i
    let s = Complex64::new(0.0, 2.0);
    let got = forward_laplace_sector(|t: Complex64| (-t).exp(), s, PI / 4.0, 1.0).unwrap();
    assert!(crel(got, (s + 1.0).inv()) < 1e-9, "got {got}");

    // integrable endpoint power t^(-0.3): image Gamma(0.7) s^(0.7 - 1)
    let s = Complex64::new(0.0, 1.5);
    let got = forward_laplace_sector(|t: Complex64| t.powf(-0.3), s, PI / 4.0, 1.0).unwrap();
    let want = sf::gamma(0.7) * s.powf(-0.7);
    assert!(crel(got, want) < 1e-9, "got {got}, want {want}");

    // where Re(s) > 0 both routes converge to the same value
    let s = Complex64::new(2.0, 0.0);
    let straight = forward_laplace(|t: f64| 1.0 / (1.0 + t * t), s).unwrap();
    let tilted =
        forward_laplace_sector(|t: Complex64| (1.0 + t * t).inv(), s, PI / 4.0, 1.0).unwrap();
    assert!(crel(tilted, straight) < 1e-8, "tilted {tilted}, straight {straight}");

    // kernel must come out damped along the ray
    assert!(matches!(
        forward_laplace_sector(|t: Complex64| (-t).exp(), Complex64::new(-1.0, 0.0), PI / 4.0, 1.0),
        Err(Error::Domain(_))
    ));
}
