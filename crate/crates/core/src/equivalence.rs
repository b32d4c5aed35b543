//! Cross-checks between the closed-form wave functions and the truncated
//! Fock-space construction.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::analytic::{EvolvedState, GridSpec, StateSpec};
use crate::error::{Error, Result};
use crate::fock::{displaced_squeezed_number, synthesize, time_evolve, FockState};
use crate::observables::moments_closed;
use crate::special::{integrate, QuadratureSpec};

/// Largest endpoint density [`check_normalization`] accepts.
pub const WINDOW_TAIL_LIMIT: f64 = 1e-10;

/// Outcome of one amplitude-wise comparison of the two formalisms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerificationReport {
    pub spec: StateSpec,
    pub t: f64,
    pub truncation: usize,
    pub max_abs_deviation: f64,
    pub at_x: f64,
    pub leakage: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// 1e-10 for `|alpha| <= 2`, otherwise 1e-8.
pub fn default_tolerance(spec: &StateSpec) -> f64 {
    if spec.disp.alpha().norm() <= 2.0 {
        1e-10
    } else {
        1e-8
    }
}

/// Builds `D(alpha) S(z)|n>` in the truncated basis, evolves it to `t`,
/// synthesizes it on the grid positions and compares complex amplitudes
/// against the closed form. No phase alignment is applied.
pub fn compare_formalisms(
    spec: &StateSpec,
    t: f64,
    truncation: usize,
    grid: &GridSpec,
) -> Result<VerificationReport> {
    let state = displaced_squeezed_number(spec, truncation)?;
    let closed = EvolvedState::new(spec, t)?;
    compare_state(spec, &state, t, grid, default_tolerance(spec), |x| {
        closed.amplitude(x)
    })
}

/// Compares an already built Fock state against an arbitrary closed-form
/// amplitude at time `t`.
pub fn compare_state<F>(
    spec: &StateSpec,
    state: &FockState,
    t: f64,
    grid: &GridSpec,
    tolerance: f64,
    closed: F,
) -> Result<VerificationReport>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let evolved = time_evolve(state, t);
    let xs = grid.positions();
    let deviations: Vec<f64> = xs
        .par_iter()
        .map(|&x| (synthesize(&evolved, x) - closed(x)).norm())
        .collect();

    let (mut worst, mut at_x) = (0.0, xs[0]);
    for (&x, &d) in xs.iter().zip(&deviations) {
        if d > worst || d.is_nan() {
            worst = d;
            at_x = x;
        }
    }
    Ok(VerificationReport {
        spec: *spec,
        t,
        truncation: state.truncation(),
        max_abs_deviation: worst,
        at_x,
        leakage: state.leakage(),
        tolerance,
        passed: worst <= tolerance,
    })
}

/// Runs [`compare_state`] for every spec and time, building each Fock
/// state once. Reports are ordered by spec, then time.
pub fn verify_sweep(
    specs: &[StateSpec],
    times: &[f64],
    truncation: usize,
    grid: &GridSpec,
    tolerance: Option<f64>,
) -> Result<Vec<VerificationReport>> {
    let per_spec: Vec<Vec<VerificationReport>> = specs
        .par_iter()
        .map(|spec| {
            let state = displaced_squeezed_number(spec, truncation)?;
            let tol = tolerance.unwrap_or_else(|| default_tolerance(spec));
            times
                .iter()
                .map(|&t| {
                    let closed = EvolvedState::new(spec, t)?;
                    compare_state(spec, &state, t, grid, tol, |x| closed.amplitude(x))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(per_spec.concat())
}

/// A window centred on the classical trajectory wide enough that the
/// density is below 1e-30 at its edges.
pub fn covering_quadrature(spec: &StateSpec, t: f64) -> QuadratureSpec {
    let m = moments_closed(spec, t);
    let half = spec.n as f64 + 0.5;
    let width = (m.var_x / half).sqrt();
    let reach = width * ((2.0 * half).sqrt() + 9.0);
    QuadratureSpec::new(m.mean_x - reach, m.mean_x + reach, 4001).expect("finite covering window")
}

fn check_window(state: &EvolvedState, quad: &QuadratureSpec) -> Result<()> {
    let tail = state.density(quad.lower()).max(state.density(quad.upper()));
    if tail > WINDOW_TAIL_LIMIT {
        return Err(Error::WindowTooSmall {
            tail,
            limit: WINDOW_TAIL_LIMIT,
        });
    }
    Ok(())
}

/// `|int rho(x, t) dx - 1|` over `quad`.
pub fn check_normalization(spec: &StateSpec, t: f64, quad: &QuadratureSpec) -> Result<f64> {
    let state = EvolvedState::new(spec, t)?;
    check_window(&state, quad)?;
    Ok((integrate(|x| state.density(x), quad) - 1.0).abs())
}

/// `max_t |<x>(t) - (x0 cos t + p0 sin t)|` with `<x>` integrated from the
/// closed-form density.
pub fn check_classical_motion(spec: &StateSpec, times: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &t in times {
        let state = EvolvedState::new(spec, t)?;
        let quad = covering_quadrature(spec, t);
        check_window(&state, &quad)?;
        let mean = integrate(|x| x * state.density(x), &quad);
        worst = worst.max((mean - spec.disp.center(t)).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{DisplacementParam, StructureFactors};
    use crate::presets::{figure, figures, verification_presets};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};

    fn line() -> GridSpec {
        GridSpec::new(-16.0, 16.0, 321, 0.0, 0.0, 1).unwrap()
    }

    fn wide() -> QuadratureSpec {
        QuadratureSpec::new(-32.0, 32.0, 8001).unwrap()
    }

    #[test]
    fn ground_state_is_trivial() {
        let r = compare_formalisms(&StateSpec::number(0), 0.0, 64, &line()).unwrap();
        assert!(r.max_abs_deviation <= 1e-12 && r.passed);
        assert_eq!(r.truncation, 64);
    }

    #[test]
    fn figure_presets_at_rest() {
        for p in figures() {
            for n in 0..=3 {
                let r = compare_formalisms(&p.spec(n), 0.0, 256, &line()).unwrap();
                assert!(
                    r.max_abs_deviation <= 1e-8,
                    "{} n={n}: {}",
                    p.name,
                    r.max_abs_deviation
                );
                assert!(r.passed);
            }
        }
    }

    #[test]
    fn evolved_figure_state() {
        let spec = figure(1).unwrap().spec(1);
        let r = compare_formalisms(&spec, FRAC_PI_2, 256, &line()).unwrap();
        assert!(r.max_abs_deviation <= 1e-7, "{}", r.max_abs_deviation);
    }

    #[test]
    fn small_displacements_meet_tight_tolerance() {
        for p in verification_presets()
            .iter()
            .filter(|p| p.disp.alpha().norm() <= 2.0)
        {
            for &t in &[0.0, FRAC_PI_4, 2.0] {
                let r = compare_formalisms(&p.spec(2), t, 128, &line()).unwrap();
                assert_eq!(r.tolerance, 1e-10);
                assert!(r.passed, "{} t={t}: {}", p.name, r.max_abs_deviation);
            }
        }
    }

    #[test]
    fn deviation_shrinks_with_truncation() {
        let spec = StateSpec::new(
            1,
            DisplacementParam::new(3.0, 1.0).unwrap(),
            crate::params::SqueezeParam::new(LN_2, 0.5).unwrap(),
        );
        let devs: Vec<f64> = [64, 128, 256]
            .iter()
            .map(|&n| {
                compare_formalisms(&spec, 0.4, n, &line())
                    .unwrap()
                    .max_abs_deviation
            })
            .collect();
        assert!(
            devs[1] <= devs[0] + 1e-12 && devs[2] <= devs[1] + 1e-12,
            "{devs:?}"
        );
    }

    #[test]
    fn comparator_sees_global_phase() {
        let spec = verification_presets()[4].spec(1);
        let state = displaced_squeezed_number(&spec, 128).unwrap();
        let closed = EvolvedState::new(&spec, 0.3).unwrap();
        let phase = Complex64::from_polar(1.0, PI / 7.0);
        let r = compare_state(&spec, &state, 0.3, &line(), 1e-7, |x| {
            phase * closed.amplitude(x)
        })
        .unwrap();
        assert!(!r.passed && r.max_abs_deviation > 0.1);
    }

    #[test]
    fn comparator_sees_conjugated_f2() {
        let spec = figure(3).unwrap().spec(1);
        let state = displaced_squeezed_number(&spec, 256).unwrap();
        let mut sf = StructureFactors::new(&spec.sq);
        sf.f2 = sf.f2.conj();
        let mutant = EvolvedState::from_factors(1, &spec.disp, sf, 0.0).unwrap();
        let r = compare_state(&spec, &state, 0.0, &line(), 1e-7, |x| mutant.amplitude(x)).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn normalization_examples() {
        assert!(
            check_normalization(&StateSpec::number(0), 0.0, &QuadratureSpec::default()).unwrap()
                <= 1e-12
        );
        for p in figures() {
            for n in [1, 2] {
                for &t in &[0.0, FRAC_PI_4, PI] {
                    let err = check_normalization(&p.spec(n), t, &wide()).unwrap();
                    assert!(err <= 1e-8, "{} n={n} t={t}: {err}", p.name);
                }
            }
        }
    }

    #[test]
    fn narrow_window_is_rejected() {
        let spec = figure(1).unwrap().spec(1);
        let err = check_normalization(&spec, 0.0, &QuadratureSpec::default()).unwrap_err();
        assert!(matches!(err, Error::WindowTooSmall { .. }));
    }

    #[test]
    fn classical_motion_examples() {
        let times: Vec<f64> = (0..9).map(|k| 2.0 * PI * k as f64 / 8.0).collect();
        let coherent = StateSpec::new(
            2,
            DisplacementParam::new(3.0, -1.0).unwrap(),
            crate::params::SqueezeParam::none(),
        );
        assert!(check_classical_motion(&coherent, &times).unwrap() <= 1e-8);
        for p in figures() {
            assert!(
                check_classical_motion(&p.spec(1), &times).unwrap() <= 1e-7,
                "{}",
                p.name
            );
        }
        let centred = StateSpec::new(
            3,
            DisplacementParam::origin(),
            crate::params::SqueezeParam::new(LN_2, 1.0).unwrap(),
        );
        assert!(check_classical_motion(&centred, &times).unwrap() <= 1e-12);
    }

    #[test]
    fn sweep_keeps_order() {
        let specs: Vec<StateSpec> = verification_presets()[4..]
            .iter()
            .map(|p| p.spec(0))
            .collect();
        let reports = verify_sweep(&specs, &[0.0, 1.0], 128, &line(), None).unwrap();
        assert_eq!(reports.len(), 4);
        assert_eq!(reports[1].t, 1.0);
        assert_eq!(reports[2].spec, specs[1]);
        assert!(reports.iter().all(|r| r.passed));
    }
}
