//! Closed-form resummation of the Fock expansion of `S(z)|n>` in position
//! space.
//!
//! Substituting Hermite-Gaussians for the basis kets in the normal-ordered
//! expansion and summing over `k` leaves a finite sum `R` over `j`; the
//! finite Hermite sums below turn `R` into a single Hermite polynomial.

use num_complex::Complex64;

use crate::params::{SqueezeParam, StructureFactors};
use crate::special::{hermite, log_factorial};

const MAX_SERIES_TERMS: usize = 400;

fn factorial(n: usize) -> f64 {
    log_factorial(n).exp()
}

/// Pochhammer symbol `(-n)_k`.
fn falling_pochhammer(n: usize, k: usize) -> f64 {
    (0..k).map(|i| -(n as f64) + i as f64).product()
}

/// `sum_k v^k/k! H_{2k+m}(x)`, summed until terms fall below `tol`
/// relative to the partial sum. Converges for `|v| < 1/4`.
pub fn hermite_shift_series(v: Complex64, m: usize, x: Complex64, tol: f64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    // v^k/k! times H_{2k+m} and H_{2k+m+1}; the raw polynomials overflow
    // long before slowly converging series settle
    let mut h0 = hermite(m, x);
    let mut h1 = hermite(m + 1, x);
    for k in 0..MAX_SERIES_TERMS {
        sum += h0;
        if k > 2 && h0.norm() <= tol * sum.norm() {
            break;
        }
        let order = (2 * k + m) as f64;
        let step = v / (k + 1) as f64;
        let h2 = 2.0 * x * h1 - 2.0 * (order + 1.0) * h0;
        let h3 = 2.0 * x * h2 - 2.0 * (order + 2.0) * h1;
        h0 = step * h2;
        h1 = step * h3;
    }
    sum
}

/// `(1+4v)^{-m/2-1/2} exp[4v x^2/(1+4v)] H_m(x (1+4v)^{-1/2})`.
pub fn hermite_shift_closed(v: Complex64, m: usize, x: Complex64) -> Complex64 {
    let s = (1.0 + 4.0 * v).sqrt();
    let scale = s.powi(-(m as i32) - 1);
    scale * (4.0 * v * x * x / (1.0 + 4.0 * v)).exp() * hermite(m, x / s)
}

/// `sum_{k<=n} (-n)_k/(2k)! v^k H_{2k}(x)`.
pub fn even_sum(n: usize, v: Complex64, x: Complex64) -> Complex64 {
    (0..=n)
        .map(|k| falling_pochhammer(n, k) / factorial(2 * k) * v.powi(k as i32) * hermite(2 * k, x))
        .sum()
}

/// `n!/(2n)! (-1-v)^n H_{2n}[x (1+1/v)^{-1/2}]`.
pub fn even_sum_closed(n: usize, v: Complex64, x: Complex64) -> Complex64 {
    let s = (1.0 + 1.0 / v).sqrt();
    factorial(n) / factorial(2 * n) * (-1.0 - v).powi(n as i32) * hermite(2 * n, x / s)
}

/// `sum_{k<=n} (-n)_k/(2k+1)! v^k H_{2k+1}(x)`.
pub fn odd_sum(n: usize, v: Complex64, x: Complex64) -> Complex64 {
    (0..=n)
        .map(|k| {
            falling_pochhammer(n, k) / factorial(2 * k + 1)
                * v.powi(k as i32)
                * hermite(2 * k + 1, x)
        })
        .sum()
}

/// `n!/(2n+1)! (-v)^n (1+1/v)^{n+1/2} H_{2n+1}[x (1+1/v)^{-1/2}]`.
pub fn odd_sum_closed(n: usize, v: Complex64, x: Complex64) -> Complex64 {
    let s = (1.0 + 1.0 / v).sqrt();
    factorial(n) / factorial(2 * n + 1)
        * (-v).powi(n as i32)
        * s.powi(2 * n as i32 + 1)
        * hermite(2 * n + 1, x / s)
}

/// The sum parameters `tau`, `y` and `1 - tau = cosh r (cosh r + e^{-i phi} sinh r)`.
fn r_parameters(sq: &SqueezeParam) -> (Complex64, Complex64, Complex64) {
    let sf = StructureFactors::new(sq);
    let ch = sq.r().cosh();
    let tau = -Complex64::from_polar(sq.r().sinh(), -sq.phi()) * sf.f1;
    let y = (ch / sf.f1).sqrt();
    (tau, y, ch * sf.f1.conj())
}

/// `R = sum_{j <= n/2} tau^j / ((n-2j)! j!) H_{n-2j}(x y)`.
pub fn r_sum(n: usize, sq: &SqueezeParam, x: f64) -> Complex64 {
    let (tau, y, _) = r_parameters(sq);
    let w = x * y;
    (0..=n / 2)
        .map(|j| tau.powi(j as i32) / (factorial(n - 2 * j) * factorial(j)) * hermite(n - 2 * j, w))
        .sum()
}

/// `R` after the even/odd closures: with `M = [n/2]`,
/// `(1-tau)^{n/2} H_n(x y (1-tau)^{-1/2}) / n!`. This form stays finite at
/// `tau = 0`, where the closures themselves are singular in `v = -1/tau`.
pub fn r_sum_closed(n: usize, sq: &SqueezeParam, x: f64) -> Complex64 {
    let (_, y, one_minus_tau) = r_parameters(sq);
    let s = one_minus_tau.sqrt();
    s.powi(n as i32) * hermite(n, x * y / s) / factorial(n)
}

/// `S(z)|n>` in position space assembled from `R`:
/// `e^{-x^2 F2/2} sqrt(n!) R / (pi^{1/4} F1^{1/2} [cosh r F1]^{n/2} 2^{n/2})`.
pub fn psi_squeezed_number_resummed(
    n: usize,
    sq: &SqueezeParam,
    x: f64,
    closed: bool,
) -> Complex64 {
    let sf = StructureFactors::new(sq);
    let r = if closed {
        r_sum_closed(n, sq, x)
    } else {
        r_sum(n, sq, x)
    };
    let ch_f1 = (sq.r().cosh() * sf.f1).sqrt();
    let norm = (0.5 * log_factorial(n)).exp() * std::f64::consts::PI.powf(-0.25)
        / 2f64.powf(n as f64 / 2.0);
    (-0.5 * x * x * sf.f2).exp() * norm * r / (sf.sqrt_f1() * ch_f1.powi(n as i32))
}
