//! Closed-form wave functions and probability densities of number,
//! displaced-number, squeezed and squeezed-number states, including their
//! exact harmonic time evolution.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::{DisplacementParam, EvolutionFactors, SqueezeParam, StructureFactors};
use crate::special::{normalized_hermite, oscillator_eigenfunction};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Rows of a density surface must integrate to one within this tolerance.
pub const ROW_NORMALIZATION_TOL: f64 = 1e-6;

/// The state `D(alpha) S(z) |n>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateSpec {
    pub n: usize,
    pub disp: DisplacementParam,
    pub sq: SqueezeParam,
}

impl StateSpec {
    pub fn new(n: usize, disp: DisplacementParam, sq: SqueezeParam) -> Self {
        Self { n, disp, sq }
    }

    /// Unsqueezed, undisplaced number state `|n>`.
    pub fn number(n: usize) -> Self {
        Self::new(n, DisplacementParam::origin(), SqueezeParam::none())
    }
}

fn pi_quarter_inv() -> f64 {
    PI.powf(-0.25)
}

/// Displacement prefactor `e^{-i x0 p0 / 2} e^{i p0 x}`.
fn displacement_phase(disp: &DisplacementParam, x: f64) -> Complex64 {
    Complex64::from_polar(1.0, disp.p0() * x - 0.5 * disp.x0() * disp.p0())
}

/// `D(alpha) psi_n`: the number state shifted to `(x0, p0)`.
pub fn psi_displaced_number(spec: &StateSpec, x: f64) -> Result<Complex64> {
    if !spec.sq.is_identity() {
        return Err(Error::SqueezeNotZero(spec.sq.r()));
    }
    let d = &spec.disp;
    Ok(displacement_phase(d, x) * oscillator_eigenfunction(spec.n, x - d.x0()))
}

/// `D(alpha) S(z) psi_0` written with `script_s` and `kappa`.
pub fn psi_squeezed(disp: &DisplacementParam, sq: &SqueezeParam, x: f64) -> Complex64 {
    let sf = StructureFactors::new(sq);
    let one_plus = 1.0 + 2.0 * I * sf.kappa;
    let width = 1.0 / (2.0 * sf.script_s * sf.script_s * one_plus) - I * sf.kappa;
    let dx = x - disp.x0();
    pi_quarter_inv() * displacement_phase(disp, x) / (sf.script_s * one_plus).sqrt()
        * (-dx * dx * width).exp()
}

/// `D(alpha) S(z) psi_n`.
///
/// Evaluated as `e^{-i x0 p0/2} f1^{-1/2} f3^{n/2} psi_n(u)
/// exp(i[p0 x - (x-x0)^2 Im(f2)/2])` with `u = (x - x0)/f4`. Because
/// `Re f2 = 1/f4^2` this is the same expression with the Gaussian folded into
/// the log-scaled eigenfunction.
pub fn psi_squeezed_number(spec: &StateSpec, x: f64) -> Complex64 {
    let sf = StructureFactors::new(&spec.sq);
    squeezed_number_with(spec.n, &spec.disp, &sf, x)
}

fn squeezed_number_with(
    n: usize,
    disp: &DisplacementParam,
    sf: &StructureFactors,
    x: f64,
) -> Complex64 {
    let dx = x - disp.x0();
    let u = dx / sf.f4;
    let phase = Complex64::from_polar(1.0, -0.5 * dx * dx * sf.f2.im);
    displacement_phase(disp, x) * phase * sf.sqrt_f3().powu(n as u32) / sf.sqrt_f1()
        * oscillator_eigenfunction(n, u)
}

/// Time-evolved displaced number state for `z = 0`,
/// `e^{-i(n+1/2)t} psi_n(X) exp[i (x - c(t)/2) p(t)]`.
pub fn displaced_number_evolved(spec: &StateSpec, x: f64, t: f64) -> Result<Complex64> {
    if !spec.sq.is_identity() {
        return Err(Error::SqueezeNotZero(spec.sq.r()));
    }
    let d = &spec.disp;
    let c = d.center(t);
    let p = d.momentum(t);
    let phase = Complex64::from_polar(1.0, -(spec.n as f64 + 0.5) * t + (x - 0.5 * c) * p);
    Ok(phase * oscillator_eigenfunction(spec.n, x - c))
}

/// The squeezed number state evolved to a fixed time `t`, with every
/// `x`-independent factor precomputed.
#[derive(Debug, Clone, Copy)]
pub struct EvolvedState {
    n: usize,
    sf: StructureFactors,
    ef: EvolutionFactors,
    /// `pi^{-1/4} [B f1]^{-1/2} (f3 A)^{n/2}`
    prefactor: Complex64,
    /// `1 / (f4 B A^{1/2})`
    hermite_scale: Complex64,
    quad: Complex64,
    linear: Complex64,
    constant: Complex64,
}

impl EvolvedState {
    pub fn new(spec: &StateSpec, t: f64) -> Result<Self> {
        Self::from_factors(spec.n, &spec.disp, StructureFactors::new(&spec.sq), t)
    }

    /// Builds the evolved state from explicitly supplied structure factors.
    pub fn from_factors(
        n: usize,
        disp: &DisplacementParam,
        sf: StructureFactors,
        t: f64,
    ) -> Result<Self> {
        let ef = EvolutionFactors::new(&sf, disp, t)?;
        let (sin, cos) = t.sin_cos();
        let b = ef.b_factor;
        let root_a = ef.a_factor.sqrt();

        let prefactor =
            pi_quarter_inv() / ef.sqrt_b_f1(&sf) * (sf.sqrt_f3() * root_a).powu(n as u32);
        let hermite_scale = 1.0 / (sf.f4 * b * root_a);

        let (x0, p0) = (disp.x0(), disp.p0());
        let quad = -0.5 * (sf.f2 * cos + I * sin) / b;
        let linear = (x0 * sf.f2 + I * p0) / b;
        let constant = -0.5 * x0 * x0 * sf.f2 * cos / b
            - 0.5 * p0 * p0 * (I * sin / b)
            - x0 * p0 * (sf.f2 * sin / b + 0.5 * I);

        Ok(Self {
            n,
            sf,
            ef,
            prefactor,
            hermite_scale,
            quad,
            linear,
            constant,
        })
    }

    pub fn factors(&self) -> (&StructureFactors, &EvolutionFactors) {
        (&self.sf, &self.ef)
    }

    /// `Psi(x, t)`.
    pub fn amplitude(&self, x: f64) -> Complex64 {
        let arg = self.ef.big_x(x) * self.hermite_scale;
        let exponent = self.quad * x * x + self.linear * x + self.constant;
        self.prefactor * normalized_hermite(self.n, arg) * exponent.exp()
    }

    /// `rho(x, t)` from the conjugate-pair Hermite product
    /// `[A A*]^{n/2} H_n(X/(f4 B* A*^{1/2})) H_n(X/(f4 B A^{1/2}))
    ///  exp(-X^2/(f4^2 B B*)) / (2^n n! [pi B B*]^{1/2} f4)`.
    pub fn density(&self, x: f64) -> f64 {
        let big_x = self.ef.big_x(x);
        let b = self.ef.b_factor;
        let bb = b.norm_sqr();
        let f4 = self.sf.f4;
        let root_a = self.ef.a_factor.sqrt();
        let w = big_x / (f4 * b * root_a);
        let w_conj = big_x / (f4 * b.conj() * root_a.conj());
        let pair = normalized_hermite(self.n, w_conj) * normalized_hermite(self.n, w);
        let magnitude = self.ef.a_factor.norm_sqr().powf(0.5 * self.n as f64);
        let envelope = (-big_x * big_x / (f4 * f4 * bb)).exp() / ((PI * bb).sqrt() * f4);
        magnitude * pair.re * envelope
    }

    /// The individually listed densities for `n = 0, 1, 2`.
    pub fn density_low_order(&self, x: f64) -> Option<f64> {
        let big_x = self.ef.big_x(x);
        let b = self.ef.b_factor;
        let a = self.ef.a_factor;
        let bb = b.norm_sqr();
        let f4_sq = self.sf.f4 * self.sf.f4;
        let ratio = big_x * big_x / (bb * f4_sq);
        let base = (-ratio).exp() / ((PI * bb).sqrt() * self.sf.f4);
        match self.n {
            0 => Some(base),
            1 => Some(2.0 * base * ratio),
            2 => {
                let left = 2.0 * big_x * big_x / (b.conj() * b.conj() * a.conj() * f4_sq) - 1.0;
                let right = 2.0 * big_x * big_x / (b * b * a * f4_sq) - 1.0;
                Some((a * a.conj()).re / 2.0 * base * (left * right).re)
            }
            _ => None,
        }
    }
}

/// `Psi(x, t) = T(t) D(alpha) S(z) psi_n`.
pub fn psi_squeezed_number_evolved(spec: &StateSpec, x: f64, t: f64) -> Result<Complex64> {
    Ok(EvolvedState::new(spec, t)?.amplitude(x))
}

/// `rho(x, t)` via the explicit density formula.
pub fn density(spec: &StateSpec, x: f64, t: f64) -> Result<f64> {
    Ok(EvolvedState::new(spec, t)?.density(x))
}

/// Sampling of position and time for density surfaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    x_min: f64,
    x_max: f64,
    nx: usize,
    t_min: f64,
    t_max: f64,
    nt: usize,
}

impl GridSpec {
    pub fn new(
        x_min: f64,
        x_max: f64,
        nx: usize,
        t_min: f64,
        t_max: f64,
        nt: usize,
    ) -> Result<Self> {
        for (name, v) in [
            ("x_min", x_min),
            ("x_max", x_max),
            ("t_min", t_min),
            ("t_max", t_max),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidGrid(format!(
                    "{name} must be finite, got {v}"
                )));
            }
        }
        if x_min >= x_max {
            return Err(Error::InvalidGrid(format!(
                "x_min {x_min} must be below x_max {x_max}"
            )));
        }
        if nx < 2 {
            return Err(Error::InvalidGrid(format!(
                "nx must be at least 2, got {nx}"
            )));
        }
        if t_min > t_max {
            return Err(Error::InvalidGrid(format!(
                "t_min {t_min} exceeds t_max {t_max}"
            )));
        }
        if nt < 1 {
            return Err(Error::InvalidGrid("nt must be at least 1".into()));
        }
        Ok(Self {
            x_min,
            x_max,
            nx,
            t_min,
            t_max,
            nt,
        })
    }

    /// `x` in `[-16, 16]` at 801 points, `t` in `[0, 2 pi]` at 129 points.
    pub fn figure_default() -> Self {
        Self {
            x_min: -16.0,
            x_max: 16.0,
            nx: 801,
            t_min: 0.0,
            t_max: 2.0 * PI,
            nt: 129,
        }
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn t_min(&self) -> f64 {
        self.t_min
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn nt(&self) -> usize {
        self.nt
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        if i + 1 == self.nx {
            self.x_max
        } else {
            self.x_min + i as f64 * self.dx()
        }
    }

    pub fn t(&self, j: usize) -> f64 {
        if self.nt == 1 {
            return self.t_min;
        }
        if j + 1 == self.nt {
            self.t_max
        } else {
            self.t_min + j as f64 * (self.t_max - self.t_min) / (self.nt - 1) as f64
        }
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.nx).map(|i| self.x(i)).collect()
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.nt).map(|j| self.t(j)).collect()
    }
}

/// Density sampled on a grid, stored row-major by time then position.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySurface {
    pub grid: GridSpec,
    pub values: Vec<f64>,
}

impl DensitySurface {
    pub fn row(&self, j: usize) -> &[f64] {
        let nx = self.grid.nx();
        &self.values[j * nx..(j + 1) * nx]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.grid.nx())
    }

    /// Trapezoidal integral of row `j` over the grid window.
    pub fn row_integral(&self, j: usize) -> f64 {
        trapezoid(self.row(j), self.grid.dx())
    }

    /// Mean and second central moment of row `j`.
    pub fn row_moments(&self, j: usize) -> (f64, f64) {
        let row = self.row(j);
        let xs = self.grid.positions();
        let mass = trapezoid(row, self.grid.dx());
        let weighted: Vec<f64> = row.iter().zip(&xs).map(|(r, x)| r * x).collect();
        let mean = trapezoid(&weighted, self.grid.dx()) / mass;
        let second: Vec<f64> = row
            .iter()
            .zip(&xs)
            .map(|(r, x)| r * (x - mean).powi(2))
            .collect();
        (mean, trapezoid(&second, self.grid.dx()) / mass)
    }

    /// Number of samples strictly greater than both neighbours in row `j`.
    pub fn strict_local_maxima(&self, j: usize) -> usize {
        count_strict_maxima(self.row(j))
    }
}

fn trapezoid(values: &[f64], h: f64) -> f64 {
    match values {
        [] | [_] => 0.0,
        [first, inner @ .., last] => (0.5 * (first + last) + inner.iter().sum::<f64>()) * h,
    }
}

fn count_strict_maxima(row: &[f64]) -> usize {
    row.windows(3)
        .filter(|w| w[1] > w[0] && w[1] > w[2])
        .count()
}

/// `rho(x, t)` over `grid`; each time row must integrate to one within
/// [`ROW_NORMALIZATION_TOL`] over the window.
///
/// Rows are evaluated in parallel on the ambient rayon pool; the output does
/// not depend on scheduling.
pub fn density_surface(spec: &StateSpec, grid: &GridSpec) -> Result<DensitySurface> {
    let xs = grid.positions();
    let rows: Vec<Vec<f64>> = (0..grid.nt())
        .into_par_iter()
        .map(|j| {
            let state = EvolvedState::new(spec, grid.t(j))?;
            Ok(xs.iter().map(|&x| state.density(x)).collect())
        })
        .collect::<Result<_>>()?;

    let surface = DensitySurface {
        grid: *grid,
        values: rows.concat(),
    };
    for j in 0..grid.nt() {
        let integral = surface.row_integral(j);
        if (integral - 1.0).abs() > ROW_NORMALIZATION_TOL {
            return Err(Error::RowNormalization { row: j, integral });
        }
    }
    Ok(surface)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{hermite, log_factorial};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2};

    fn spec(n: usize, x0: f64, p0: f64, r: f64, phi: f64) -> StateSpec {
        StateSpec::new(
            n,
            DisplacementParam::new(x0, p0).unwrap(),
            SqueezeParam::new(r, phi).unwrap(),
        )
    }

    /// The squeezed-number wave function written out literally with the complex Hermite polynomial.
    fn squeezed_number_literal(s: &StateSpec, x: f64) -> Complex64 {
        let sf = StructureFactors::new(&s.sq);
        let (x0, p0) = (s.disp.x0(), s.disp.p0());
        let n = s.n;
        let norm = (0.5 * (n as f64 * 2f64.ln() + log_factorial(n))).exp();
        Complex64::from_polar(1.0, -0.5 * x0 * p0) / (PI.powf(0.25) * sf.f1.sqrt())
            * (-(x - x0).powi(2) * sf.f2 / 2.0 + I * p0 * x).exp()
            * sf.sqrt_f3().powu(n as u32)
            / norm
            * hermite(n, Complex64::new((x - x0) / sf.f4, 0.0))
    }

    #[test]
    fn displaced_number_examples() {
        let g = spec(0, 0.0, 0.0, 0.0, 0.0);
        for &x in &[-1.0, 0.0, 0.7] {
            let v = psi_displaced_number(&g, x).unwrap();
            assert!((v - pi_quarter_inv() * (-x * x / 2.0).exp()).norm() < 1e-15);
        }
        assert!(
            psi_displaced_number(&spec(1, 2.0, 0.0, 0.0, 0.0), 2.0)
                .unwrap()
                .norm()
                < 1e-15
        );
        let v = psi_displaced_number(&spec(0, 8.0, 0.0, 0.0, 0.0), 8.0).unwrap();
        assert!((v - Complex64::from(pi_quarter_inv())).norm() < 1e-15);
        assert!(matches!(
            psi_displaced_number(&spec(0, 0.0, 0.0, 0.1, 0.0), 0.0),
            Err(Error::SqueezeNotZero(_))
        ));
    }

    #[test]
    fn squeezed_ground_state_examples() {
        let d0 = DisplacementParam::origin();
        for &x in &[-2.0, 0.0, 1.3] {
            let v = psi_squeezed(&d0, &SqueezeParam::none(), x);
            assert!((v - Complex64::from(oscillator_eigenfunction(0, x))).norm() < 1e-15);
        }

        // real z = ln s gives a Gaussian of width s (up to the x0 p0 phase).
        let d = DisplacementParam::new(1.5, -0.8).unwrap();
        for &log_s in &[0.3, LN_2] {
            let s = f64::exp(log_s);
            let sq = SqueezeParam::new(log_s, 0.0).unwrap();
            for &x in &[-2.0, 0.0, 1.1, 3.0] {
                let gaussian =
                    (PI.sqrt() * s).powf(-0.5) * (-(x - 1.5f64).powi(2) / (2.0 * s * s)).exp();
                let expect = Complex64::from_polar(gaussian, -0.8 * x + 0.6);
                let v = psi_squeezed(&d, &sq, x);
                assert!((v - expect).norm() < 1e-12, "x={x}");
            }
        }

        let d = DisplacementParam::new(8.0, 0.0).unwrap();
        let sq = SqueezeParam::new(LN_2, FRAC_PI_2).unwrap();
        let v = psi_squeezed(&d, &sq, 8.0);
        assert!((v.norm() - pi_quarter_inv() * 2.125f64.powf(-0.25)).abs() < 1e-14);
    }

    #[test]
    fn squeezed_number_reduces_to_squeezed_at_n_zero() {
        for (x0, p0, r, phi) in [
            (0.0, 0.0, 0.0, 0.0),
            (8.0, 0.0, LN_2, FRAC_PI_2),
            (-1.0, 2.0, 0.4, -2.2),
        ] {
            let s = spec(0, x0, p0, r, phi);
            for k in 0..40 {
                let x = -12.0 + 0.6 * k as f64;
                let a = psi_squeezed_number(&s, x);
                let b = psi_squeezed(&s.disp, &s.sq, x);
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn squeezed_number_matches_literal_form() {
        for n in 0..6 {
            for (x0, p0, r, phi) in [
                (0.0, 0.0, LN_2, 0.0),
                (8.0, 0.0, LN_2, FRAC_PI_2),
                (1.0, -2.0, 0.9, 2.0),
            ] {
                let s = spec(n, x0, p0, r, phi);
                for k in 0..25 {
                    let x = -10.0 + 0.8 * k as f64;
                    let a = psi_squeezed_number(&s, x);
                    let b = squeezed_number_literal(&s, x);
                    assert!((a - b).norm() < 1e-12, "n={n} x={x}");
                }
            }
        }
    }

    #[test]
    fn squeezed_number_examples() {
        assert!(psi_squeezed_number(&spec(1, 0.0, 0.0, LN_2, 0.0), 0.0).norm() < 1e-15);
        // f1 = f4 = 2, f3 = 1, H_2(0) = -2
        let v = psi_squeezed_number(&spec(2, 0.0, 0.0, LN_2, 0.0), 0.0);
        let expect = pi_quarter_inv() * 2f64.powf(-0.5) * (-2.0) / 8f64.sqrt();
        assert!((v - Complex64::from(expect)).norm() < 1e-15);
    }

    #[test]
    fn evolved_state_at_zero_time() {
        for n in 0..4 {
            let s = spec(n, 8.0, 0.0, LN_2, FRAC_PI_2);
            let st = EvolvedState::new(&s, 0.0).unwrap();
            for k in 0..=48 {
                let x = -12.0 + 0.5 * k as f64;
                assert!((st.amplitude(x) - psi_squeezed_number(&s, x)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn unsqueezed_evolution_matches_displaced_display() {
        for n in 0..4 {
            let s = spec(n, 3.0, -2.0, 0.0, 0.0);
            for &t in &[0.4, FRAC_PI_2, 2.9, 5.0] {
                for k in 0..=30 {
                    let x = -8.0 + 0.53 * k as f64;
                    let a = psi_squeezed_number_evolved(&s, x, t).unwrap();
                    let b = displaced_number_evolved(&s, x, t).unwrap();
                    assert!((a - b).norm() < 1e-10, "n={n} t={t} x={x}");
                }
            }
        }
    }

    #[test]
    fn density_forms_agree() {
        for n in 0..4 {
            for (x0, p0, r, phi) in [
                (8.0, 0.0, LN_2, 0.0),
                (8.0, 0.0, LN_2, PI),
                (0.0, 8.0, LN_2, 0.0),
                (1.0, 1.0, LN_2, FRAC_PI_2),
            ] {
                let s = spec(n, x0, p0, r, phi);
                for &t in &[0.0, FRAC_PI_4, FRAC_PI_2, 2.0, PI] {
                    let st = EvolvedState::new(&s, t).unwrap();
                    for k in 0..=64 {
                        let x = -16.0 + 0.5 * k as f64;
                        let rho = st.density(x);
                        assert!((rho - st.amplitude(x).norm_sqr()).abs() < 1e-10);
                        if let Some(low) = st.density_low_order(x) {
                            assert!((low - rho).abs() < 1e-10);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn density_examples() {
        let s1 = spec(1, 8.0, 0.0, LN_2, 0.0);
        let t = 0.9;
        assert!(density(&s1, s1.disp.center(t), t).unwrap() < 1e-30);

        let s2 = StateSpec::number(2);
        let rho = density(&s2, 0.0, 0.0).unwrap();
        assert!((rho - PI.powf(-0.5) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn shape_is_preserved_without_squeezing() {
        let s = spec(2, 4.0, 1.5, 0.0, 0.0);
        let c0 = s.disp.center(0.0);
        for &t in &[0.5, 1.7, 3.3] {
            let ct = s.disp.center(t);
            for k in 0..=40 {
                let x = -10.0 + 0.5 * k as f64;
                let now = density(&s, x, t).unwrap();
                let then = density(&s, x - ct + c0, 0.0).unwrap();
                assert!((now - then).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(1.0, 0.0, 10, 0.0, 1.0, 2).is_err());
        assert!(GridSpec::new(0.0, 1.0, 1, 0.0, 1.0, 2).is_err());
        assert!(GridSpec::new(0.0, 1.0, 10, 1.0, 0.0, 2).is_err());
        assert!(GridSpec::new(0.0, 1.0, 10, 0.0, 1.0, 0).is_err());
        let g = GridSpec::new(-1.0, 1.0, 3, 0.5, 0.5, 1).unwrap();
        assert_eq!(g.positions(), vec![-1.0, 0.0, 1.0]);
        assert_eq!(g.times(), vec![0.5]);
    }

    #[test]
    fn stationary_ground_state_surface() {
        let grid = GridSpec::new(-8.0, 8.0, 161, 0.0, 2.0 * PI, 9).unwrap();
        let surface = density_surface(&StateSpec::number(0), &grid).unwrap();
        let first = surface.row(0).to_vec();
        for row in surface.rows() {
            for (a, b) in row.iter().zip(&first) {
                assert!((a - b).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn surface_rejects_window_missing_the_packet() {
        let grid = GridSpec::new(-4.0, 4.0, 161, 0.0, 0.0, 1).unwrap();
        let err = density_surface(&spec(1, 8.0, 0.0, LN_2, 0.0), &grid).unwrap_err();
        assert!(matches!(err, Error::RowNormalization { row: 0, .. }));
    }

    #[test]
    fn hump_counts() {
        let grid = GridSpec::new(-16.0, 16.0, 801, 0.0, 2.0 * PI, 17).unwrap();
        for (n, humps) in [(1usize, 2usize), (2, 3)] {
            let s = spec(n, 8.0, 0.0, LN_2, FRAC_PI_2);
            let surface = density_surface(&s, &grid).unwrap();
            for j in 0..grid.nt() {
                assert_eq!(surface.strict_local_maxima(j), humps, "n={n} row {j}");
            }
        }
    }
}
