//! Hermite polynomials, oscillator eigenfunctions, factorial logarithms and a
//! composite quadrature rule.
//!
//! Hermite polynomials follow the physicists' convention,
//! `H_0 = 1`, `H_1 = 2w`, `H_{k+1} = 2w H_k - 2k H_{k-1}`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `ln(pi) / 4`, the log of the eigenfunction normalization `pi^{1/4}`.
const LN_PI_QUARTER: f64 = 0.286_182_471_462_350_04;

/// Scale at which the eigenfunction recurrence renormalizes its state.
const RESCALE_THRESHOLD: f64 = 1e150;

/// Physicists' Hermite polynomial `H_n(w)` for complex `w` by upward recurrence.
pub fn hermite(n: usize, w: Complex64) -> Complex64 {
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return prev;
    }
    let two_w = 2.0 * w;
    let mut cur = two_w;
    for k in 1..n {
        let next = two_w * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_n(w) / sqrt(2^n n!)`, evaluated with the normalized recurrence so the
/// factorial never appears explicitly.
pub fn normalized_hermite(n: usize, w: Complex64) -> Complex64 {
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return prev;
    }
    let mut cur = std::f64::consts::SQRT_2 * w;
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * w * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn small_log_factorials() -> &'static [f64; 21] {
    static TABLE: OnceLock<[f64; 21]> = OnceLock::new();
    TABLE.get_or_init(|| {
        // k! is exactly representable for k <= 20.
        let mut table = [0.0; 21];
        let mut fact = 1.0_f64;
        for (k, slot) in table.iter_mut().enumerate().skip(1) {
            fact *= k as f64;
            *slot = fact.ln();
        }
        table
    })
}

/// `ln(n!)`.
///
/// Exact table below 21, Stirling series with terms through `n^-7` above;
/// relative error stays at the level of a few ulps.
pub fn log_factorial(n: usize) -> f64 {
    if n <= 20 {
        return small_log_factorials()[n];
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    x * x.ln() - x + 0.5 * (2.0 * PI * x).ln() + series
}

/// Oscillator eigenfunctions `psi_0(x), ..., psi_nmax(x)` in one pass.
///
/// The recurrence carries a separate logarithmic scale so that neither
/// `e^{-x^2/2}` nor `H_n(x)/sqrt(2^n n!)` overflows or underflows on its own.
pub fn eigenfunction_table(nmax: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(nmax + 1);
    let base_log = -0.5 * x * x - LN_PI_QUARTER;
    let mut log_scale = 0.0;
    let mut factor = base_log.exp();

    let mut prev = 0.0;
    let mut cur = 1.0;
    out.push(cur * factor);
    for k in 0..nmax {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_THRESHOLD {
            prev /= RESCALE_THRESHOLD;
            cur /= RESCALE_THRESHOLD;
            log_scale += RESCALE_THRESHOLD.ln();
            factor = (base_log + log_scale).exp();
        }
        out.push(cur * factor);
    }
    out
}

/// Harmonic-oscillator eigenfunction
/// `psi_n(x) = e^{-x^2/2} H_n(x) / (pi^{1/4} sqrt(2^n n!))`.
pub fn oscillator_eigenfunction(n: usize, x: f64) -> f64 {
    eigenfunction_table(n, x)[n]
}

/// A closed interval sampled at `points` equally spaced nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    lower: f64,
    upper: f64,
    points: usize,
}

impl QuadratureSpec {
    pub fn new(lower: f64, upper: f64, points: usize) -> Result<Self> {
        if !lower.is_finite() || !upper.is_finite() {
            return Err(Error::InvalidQuadrature(format!(
                "bounds must be finite, got [{lower}, {upper}]"
            )));
        }
        if lower >= upper {
            return Err(Error::InvalidQuadrature(format!(
                "lower bound {lower} must be below upper bound {upper}"
            )));
        }
        if points < 2 {
            return Err(Error::InvalidQuadrature(format!(
                "need at least 2 points, got {points}"
            )));
        }
        Ok(Self {
            lower,
            upper,
            points,
        })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn step(&self) -> f64 {
        (self.upper - self.lower) / (self.points - 1) as f64
    }

    /// Node `i` of the sampling.
    pub fn node(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            self.upper
        } else {
            self.lower + i as f64 * self.step()
        }
    }
}

impl Default for QuadratureSpec {
    /// `[-12, 12]` with 4001 nodes.
    fn default() -> Self {
        Self {
            lower: -12.0,
            upper: 12.0,
            points: 4001,
        }
    }
}

/// Composite trapezoidal rule over the nodes of `spec`.
///
/// For smooth integrands that decay to negligible values at both ends the
/// trapezoidal rule converges exponentially in the node count.
pub fn integrate<F>(f: F, spec: &QuadratureSpec) -> f64
where
    F: Fn(f64) -> f64,
{
    let n = spec.points;
    let interior: f64 = (1..n - 1).map(|i| f(spec.node(i))).sum();
    let ends = 0.5 * (f(spec.lower) + f(spec.upper));
    (interior + ends) * spec.step()
}
