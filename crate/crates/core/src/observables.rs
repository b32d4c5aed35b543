//! First and second moments of the evolving state and the position-momentum
//! uncertainty product.

use crate::analytic::StateSpec;
use crate::error::{Error, Result};
use crate::fock::{ladder_matrices, time_evolve, FockState};
use crate::params::{DisplacementParam, SqueezeParam};

/// Leakage above which [`moments_numeric`] refuses a state.
pub const MOMENT_LEAKAGE_LIMIT: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    pub mean_x: f64,
    pub mean_p: f64,
    pub var_x: f64,
    pub var_p: f64,
    pub t: f64,
}

impl MomentSet {
    pub fn uncertainty_product(&self) -> f64 {
        self.var_x * self.var_p
    }
}

/// `1 + 4 cosh^2 r sinh^2 r sin^2(2t - phi)`.
fn squeeze_excess(sq: &SqueezeParam, t: f64) -> f64 {
    let (ch, sh) = (sq.r().cosh(), sq.r().sinh());
    1.0 + 4.0 * (ch * sh).powi(2) * (2.0 * t - sq.phi()).sin().powi(2)
}

/// Moments from the transformation laws of `a` under displacement, squeeze
/// and free evolution.
pub fn moments_closed(spec: &StateSpec, t: f64) -> MomentSet {
    let half = spec.n as f64 + 0.5;
    let (ch, sh) = (spec.sq.r().cosh(), spec.sq.r().sinh());
    let base = ch * ch + sh * sh;
    let cross = 2.0 * ch * sh * (2.0 * t - spec.sq.phi()).cos();
    MomentSet {
        mean_x: spec.disp.center(t),
        mean_p: spec.disp.momentum(t),
        var_x: half * (base + cross),
        var_p: half * (base - cross),
        t,
    }
}

/// `dx^2 dp^2 = (n + 1/2)^2 [1 + 4 cosh^2 r sinh^2 r sin^2(2t - phi)]`.
pub fn uncertainty_product(n: usize, sq: &SqueezeParam, t: f64) -> f64 {
    (n as f64 + 0.5).powi(2) * squeeze_excess(sq, t)
}

/// The product normalized by `(n + 1/2)^2`, written with the width factor
/// `s = e^r`: `1 + (s^2 - 1/s^2)^2 sin^2(2t - phi) / 4`.
pub fn normalized_uncertainty_s_form(s: f64, phi: f64, t: f64) -> f64 {
    let gap = s * s - 1.0 / (s * s);
    1.0 + 0.25 * gap * gap * (2.0 * t - phi).sin().powi(2)
}

/// `<H> = (n + 1/2) + |alpha|^2` for `D(alpha)|n>`.
pub fn displaced_energy(n: usize, disp: &DisplacementParam) -> f64 {
    n as f64 + 0.5 + disp.alpha_norm_sqr()
}

/// Moments of `T(t)|state>` from the truncated `x` and `p` matrices.
pub fn moments_numeric(state: &FockState, t: f64) -> Result<MomentSet> {
    let leakage = state.leakage();
    if leakage.abs() > MOMENT_LEAKAGE_LIMIT {
        return Err(Error::LeakageTooLarge {
            leakage,
            limit: MOMENT_LEAKAGE_LIMIT,
        });
    }
    let evolved = time_evolve(state, t);
    let (a, _) = ladder_matrices(state.truncation())?;
    // <x> and <x^2> from a|psi>: x = (a + a^dag)/sqrt 2, p = (a - a^dag)/(i sqrt 2)
    let a_psi = a.apply(&evolved);
    let mean_a = evolved.inner(&a_psi);
    let a2 = evolved.inner(&a.apply(&a_psi));
    let number = a_psi.norm_sqr();

    let mean_x = std::f64::consts::SQRT_2 * mean_a.re;
    let mean_p = std::f64::consts::SQRT_2 * mean_a.im;
    let x2 = a2.re + number + 0.5;
    let p2 = -a2.re + number + 0.5;
    Ok(MomentSet {
        mean_x,
        mean_p,
        var_x: x2 - mean_x * mean_x,
        var_p: p2 - mean_p * mean_p,
        t,
    })
}
