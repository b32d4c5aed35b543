//! Displacement and squeeze parameters and the factors derived from them.
//!
//! All quantities are in oscillator units (`hbar = m = omega = 1`).

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};

/// Below this `|B|` the evolved-state formulas divide by (numerically) zero.
pub const MIN_B_MODULUS: f64 = 1e-14;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Phase-space displacement `alpha = (x0 + i p0) / sqrt(2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisplacementParam {
    x0: f64,
    p0: f64,
    alpha: Complex64,
}

impl DisplacementParam {
    pub fn new(x0: f64, p0: f64) -> Result<Self> {
        ensure_finite("x0", x0)?;
        ensure_finite("p0", p0)?;
        Ok(Self {
            x0,
            p0,
            alpha: Complex64::new(x0 * FRAC_1_SQRT_2, p0 * FRAC_1_SQRT_2),
        })
    }

    /// No displacement.
    pub fn origin() -> Self {
        Self {
            x0: 0.0,
            p0: 0.0,
            alpha: Complex64::new(0.0, 0.0),
        }
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    /// `|alpha|^2 = (x0^2 + p0^2) / 2`.
    pub fn alpha_norm_sqr(&self) -> f64 {
        0.5 * (self.x0 * self.x0 + self.p0 * self.p0)
    }

    /// Classical position `x0 cos t + p0 sin t`.
    pub fn center(&self, t: f64) -> f64 {
        self.x0 * t.cos() + self.p0 * t.sin()
    }

    /// Classical momentum `p0 cos t - x0 sin t`.
    pub fn momentum(&self, t: f64) -> f64 {
        self.p0 * t.cos() - self.x0 * t.sin()
    }
}

/// Squeeze parameter `z = r e^{i phi}` with `r >= 0` and `phi` in `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParam {
    r: f64,
    phi: f64,
    z1: f64,
    z2: f64,
    s: f64,
}

impl SqueezeParam {
    /// Builds `z = r e^{i phi}`; `phi` is reduced into `(-pi, pi]`.
    ///
    /// A negative real `z` must be passed as `(|z|, pi)`.
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        ensure_finite("r", r)?;
        ensure_finite("phi", phi)?;
        if r < 0.0 {
            return Err(Error::NegativeSqueeze(r));
        }
        let phi = reduce_phase(phi);
        let (z1, z2) = if r == 0.0 {
            (0.0, 0.0)
        } else {
            (r * phi.cos(), r * phi.sin())
        };
        Ok(Self {
            r,
            phi,
            z1,
            z2,
            s: r.exp(),
        })
    }

    /// Identity squeeze `z = 0`.
    pub fn none() -> Self {
        Self {
            r: 0.0,
            phi: 0.0,
            z1: 0.0,
            z2: 0.0,
            s: 1.0,
        }
    }

    /// Canonicalizes a complex `z` into `(|z|, arg z)`.
    pub fn from_complex(z: Complex64) -> Result<Self> {
        ensure_finite("z.re", z.re)?;
        ensure_finite("z.im", z.im)?;
        if z.norm() == 0.0 {
            return Ok(Self::none());
        }
        Self::new(z.norm(), z.arg())
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn z1(&self) -> f64 {
        self.z1
    }

    pub fn z2(&self) -> f64 {
        self.z2
    }

    /// Width factor `s = e^r`.
    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.z1, self.z2)
    }

    pub fn is_identity(&self) -> bool {
        self.r == 0.0
    }
}

fn reduce_phase(phi: f64) -> f64 {
    let mut p = phi % (2.0 * PI);
    if p <= -PI {
        p += 2.0 * PI;
    } else if p > PI {
        p -= 2.0 * PI;
    }
    p
}

/// Structure factors of the squeezed number state wave function.
///
/// `script_s = cosh r + cos(phi) sinh r`, `kappa = z2 sinh r / (2 r script_s)`,
/// `f1 = script_s (1 + 2i kappa)`, `f2 = 1/(script_s^2 (1 + 2i kappa)) - 2i kappa`,
/// `f3 = (1 - 2i kappa)/(1 + 2i kappa)` (a pure phase) and
/// `f4 = script_s sqrt(1 + 4 kappa^2) = |f1|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructureFactors {
    pub script_s: f64,
    pub kappa: f64,
    pub f1: Complex64,
    pub f2: Complex64,
    pub f3: Complex64,
    pub f4: f64,
}

impl StructureFactors {
    pub fn new(sq: &SqueezeParam) -> Self {
        let (sinh, cosh) = (sq.r.sinh(), sq.r.cosh());
        let script_s = cosh + sq.phi.cos() * sinh;
        // z2 / r = sin(phi), so the r -> 0 limit needs no special case.
        let kappa = if sq.is_identity() {
            0.0
        } else {
            sq.phi.sin() * sinh / (2.0 * script_s)
        };
        let two_i_kappa = 2.0 * kappa * I;
        let f1 = script_s * (1.0 + two_i_kappa);
        let f2 = 1.0 / (script_s * script_s * (1.0 + two_i_kappa)) - two_i_kappa;
        let f3 = (1.0 - two_i_kappa) / (1.0 + two_i_kappa);
        let f4 = script_s * (1.0 + 4.0 * kappa * kappa).sqrt();

        let factors = Self {
            script_s,
            kappa,
            f1,
            f2,
            f3,
            f4,
        };
        debug_assert!(factors.invariant_defect() < 1e-10, "{factors:?}");
        factors
    }

    /// Largest violation among `|f3| = 1`, `f1* f1 = f4^2`,
    /// `f2 + f2* = 2 / f4^2` and `f4 = |f1|`.
    pub fn invariant_defect(&self) -> f64 {
        let f4_sq = self.f4 * self.f4;
        [
            (self.f3.norm() - 1.0).abs(),
            ((self.f1.conj() * self.f1).re - f4_sq).abs() / f4_sq,
            ((self.f2 + self.f2.conj()).re - 2.0 / f4_sq).abs() * f4_sq,
            (self.f1.norm() - self.f4).abs() / self.f4,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// Principal root `f1^{1/2}`; `f1` lies in the right half-plane.
    pub fn sqrt_f1(&self) -> Complex64 {
        self.f1.sqrt()
    }

    /// `f3^{1/2} = e^{-i arctan(2 kappa)}`.
    pub fn sqrt_f3(&self) -> Complex64 {
        Complex64::from_polar(1.0, -(2.0 * self.kappa).atan())
    }
}

/// Time-evolution factors `A`, `B` and the classical centre `c(t)`.
///
/// `B = cos t + i f2 sin t`, `A = 1 - 2i sin t / (f4^2 B)` (which equals
/// `B*/B`), and `X(t) = x - c(t)` with `c(t) = x0 cos t + p0 sin t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionFactors {
    pub a_factor: Complex64,
    pub b_factor: Complex64,
    /// Classical centre `c(t)`; `X(t) = x - x_shift`.
    pub x_shift: f64,
    pub t: f64,
}

impl EvolutionFactors {
    pub fn new(sf: &StructureFactors, d: &DisplacementParam, t: f64) -> Result<Self> {
        ensure_finite("t", t)?;
        let (sin, cos) = t.sin_cos();
        let b_factor = cos + I * sf.f2 * sin;
        if b_factor.norm() < MIN_B_MODULUS {
            return Err(Error::DegenerateEvolution {
                t,
                b_abs: b_factor.norm(),
            });
        }
        let a_factor = 1.0 - 2.0 * I * sin / (sf.f4 * sf.f4 * b_factor);
        Ok(Self {
            a_factor,
            b_factor,
            x_shift: d.center(t),
            t,
        })
    }

    /// `X(t) = x - c(t)`.
    pub fn big_x(&self, x: f64) -> f64 {
        x - self.x_shift
    }

    /// `[B f1]^{1/2}` continued in `t` from its value `f1^{1/2}` at `t = 0`.
    ///
    /// `e^{-it} B f1 = cosh r + e^{i(phi - 2t)} sinh r` stays in the right
    /// half-plane, so the principal root of that combination is continuous
    /// and the remaining `e^{it/2}` carries the winding.
    pub fn sqrt_b_f1(&self, sf: &StructureFactors) -> Complex64 {
        let half = Complex64::from_polar(1.0, 0.5 * self.t);
        let rotated = Complex64::from_polar(1.0, -self.t) * self.b_factor * sf.f1;
        half * rotated.sqrt()
    }
}
