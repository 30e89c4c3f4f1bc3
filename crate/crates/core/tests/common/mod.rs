//! Reference values computed at 40 significant digits by
//! `tools/reference_values.py` (mpmath), plus small helpers.
#![allow(dead_code, clippy::excessive_precision, clippy::approx_constant)]

use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

/// `(z, erf z)`
pub const ERF: [((f64, f64), (f64, f64)); 7] = [
    ((1.0, 1.0), (1.3161512816979476449, 0.19045346923783468628)),
    ((0.3, -0.2), (0.34123748147213858588, -0.20852883788276887638)),
    ((2.5, 1.5), (1.0004844145745747249, 0.0034035003087279405083)),
    ((-1.7, 3.1), (72.462287014842629893, -113.01272637882815785)),
    ((4.0, -0.5), (1.0000000110175494548, 1.6289880119455547667e-8)),
    ((0.1, 6.0), (376864860316649.13312, 154014234098766.07098)),
    ((6.0, 0.01), (0.99999999999999997864, 2.611111106831387067e-18)),
];

/// `Gamma(1/2 + i)`
pub const GAMMA_HALF_PLUS_I: (f64, f64) = (0.30069461726065581622, -0.42496787943312381261);

/// `(x, sum_k (-i)^k/(k! (k + i x)))`
pub const SUM_LHS: [(f64, (f64, f64)); 3] = [
    (1.0, (-0.67406818956801968538, -1.3539889082399944099)),
    (-1.0, (0.29323163303590208123, 0.45083873516679191406)),
    (10.0, (-0.092611563972348755411, -0.061052387214716228172)),
];

/// `B(1)` by quadrature along the ray.
pub const BLEISTEIN_AT_ONE: (f64, f64) = (-0.27786716924252195587, -0.3163887669343690238);

/// `(alpha, lambda, L)` integrated along the unit-radius Hankel contour.
pub const L_HANKEL: [(f64, f64, (f64, f64)); 12] = [
    (0.5, 20.0, (-0.17275613472084886145, -0.17937679096218415319)),
    (0.5, 50.0, (0.074119452482900087422, 0.14370857398065486584)),
    (0.5, 100.0, (-0.0095708460777696236811, -0.11450583279728620764)),
    (2.0, 20.0, (-0.040105283577874119164, -0.25095976670306081072)),
    (2.0, 50.0, (-0.098065260378796833011, -0.12946545319566716276)),
    (2.0, 100.0, (0.051946903810819520901, 0.10264582408446400359)),
    (5.0, 20.0, (0.04569730705266210295, -0.10097175469323289489)),
    (5.0, 50.0, (-0.044432595393311063741, 0.054229627159066569467)),
    (5.0, 100.0, (-0.041132783503351182206, -0.027672540148943214453)),
    (std::f64::consts::E, 20.0, (0.0047256294228105204587, -0.17790336822876568455)),
    (std::f64::consts::E, 50.0, (0.0296577008272344353, 0.10882224593410028645)),
    (std::f64::consts::E, 100.0, (-0.021333840388208589859, 0.076874840318989337822)),
];

/// Taylor coefficients of `w(r)` about `r = 0`, by Lagrange inversion.
pub const W_SERIES: [(f64, f64); 9] = [
    (0.0, -1.0),
    (0.7071067811865475244, 0.7071067811865475244),
    (-1.0 / 3.0, 0.0),
    (0.019641855032959653456, -0.019641855032959653456),
    (0.0, -0.0037037037037037037037),
    (-0.0001636821252746637788, -0.0001636821252746637788),
    (0.000058788947677836566725, 0.0),
    (0.000018056996359665289883, -0.000018056996359665289883),
    (0.0, -4.8990789731530472271e-6),
];

pub fn pair(p: (f64, f64)) -> Complex64 {
    c(p.0, p.1)
}
