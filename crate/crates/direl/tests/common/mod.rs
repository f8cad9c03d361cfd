//! Shared helpers for the integration tests. The main item is a small
//! adaptive Gauss-Kronrod integrator used as an independent quadrature
//! oracle, so the tests never lean on the crate's own quadrature.

#![allow(dead_code)]

/// Abscissae of the 15-point Kronrod rule (positive half, descending).
/// The embedded 7-point Gauss rule sits at the odd indices and x = 0.
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
fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
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
    (kron * h, (kron - gauss).abs() * h)
}

/// Adaptive bisection on the Kronrod/Gauss defect; `tol` is an absolute
/// error budget for the whole interval.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> f64 {
    let mut stack = vec![(a, b, tol, 0u32)];
    let mut total = 0.0;
    while let Some((lo, hi, budget, depth)) = stack.pop() {
        let (v, e) = gk15(&mut f, lo, hi);
        if e <= budget || depth >= 48 {
            total += v;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, 0.5 * budget, depth + 1));
            stack.push((mid, hi, 0.5 * budget, depth + 1));
        }
    }
    total
}
