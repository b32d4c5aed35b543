//! Named parameter sets: the four reference figures and the verification
//! sweep built around them.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};

use crate::analytic::StateSpec;
use crate::error::{Error, Result};
use crate::params::{DisplacementParam, SqueezeParam};

/// A displacement and squeeze with a short name; `n` is chosen by the caller.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub disp: DisplacementParam,
    pub sq: SqueezeParam,
}

impl Preset {
    pub fn spec(&self, n: usize) -> StateSpec {
        StateSpec::new(n, self.disp, self.sq)
    }
}

/// Number-state index used by all four figures.
pub const FIGURE_N: usize = 1;

fn preset(name: &'static str, x0: f64, p0: f64, r: f64, phi: f64) -> Preset {
    Preset {
        name,
        disp: DisplacementParam::new(x0, p0).expect("finite preset displacement"),
        sq: SqueezeParam::new(r, phi).expect("valid preset squeeze"),
    }
}

/// Figure `k` in 1..=4: `(x0, p0, r, phi)` = (8, 0, ln 2, 0), (8, 0, ln 2, pi),
/// (8, 0, ln 2, pi/2), (0, 8, ln 2, 0).
pub fn figure(k: usize) -> Result<Preset> {
    match k {
        1 => Ok(preset("fig1", 8.0, 0.0, LN_2, 0.0)),
        2 => Ok(preset("fig2", 8.0, 0.0, LN_2, PI)),
        3 => Ok(preset("fig3", 8.0, 0.0, LN_2, FRAC_PI_2)),
        4 => Ok(preset("fig4", 0.0, 8.0, LN_2, 0.0)),
        _ => Err(Error::InvalidParameter(format!(
            "figure index must be 1-4, got {k}"
        ))),
    }
}

pub fn figures() -> Vec<Preset> {
    (1..=4)
        .map(|k| figure(k).expect("figure indices 1-4 exist"))
        .collect()
}

/// The figures plus two small displacements with generic squeeze phases.
pub fn verification_presets() -> Vec<Preset> {
    let mut out = figures();
    out.push(preset("x1", 1.0, 0.0, LN_2, FRAC_PI_4));
    out.push(preset("p1", 0.0, 1.0, LN_2, -FRAC_PI_2));
    out
}

/// Looks up a preset by name (`fig1`..`fig4`, `x1`, `p1`).
pub fn by_name(name: &str) -> Result<Preset> {
    verification_presets()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown preset '{name}'")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_parameters() {
        let f1 = figure(1).unwrap();
        assert_eq!(
            (f1.disp.x0(), f1.disp.p0(), f1.sq.r(), f1.sq.phi()),
            (8.0, 0.0, LN_2, 0.0)
        );
        assert_eq!(figure(2).unwrap().sq.phi(), PI);
        assert_eq!(figure(3).unwrap().sq.phi(), FRAC_PI_2);
        assert_eq!(figure(4).unwrap().disp.p0(), 8.0);
        assert!(figure(0).is_err());
        assert!(figure(5).is_err());
    }

    #[test]
    fn lookup() {
        assert_eq!(by_name("fig3").unwrap(), figure(3).unwrap());
        assert_eq!(by_name("p1").unwrap().disp.p0(), 1.0);
        assert!(by_name("fig9").is_err());
        assert_eq!(verification_presets().len(), 6);
        assert_eq!(figure(2).unwrap().spec(FIGURE_N).n, 1);
    }
}
