//! Displaced and squeezed number states of the quantum harmonic oscillator,
//! computed both from closed-form wave functions and from truncated
//! Fock-space operator algebra, with tools to check that the two agree.

pub mod analytic;
pub mod equivalence;
pub mod error;
pub mod fock;
pub mod observables;
pub mod params;
pub mod presets;
pub mod resum;
pub mod special;

pub use error::{Error, Result};
pub use num_complex::Complex64;
