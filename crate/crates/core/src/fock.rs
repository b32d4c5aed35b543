//! Truncated Fock-space algebra on the basis `{|0>, ..., |N>}`.
//!
//! Two routes to the displacement and squeeze operators live here: the
//! normal-ordered BCH products, assembled from closed-form matrix elements of
//! each factor, and a generic scaling-and-squaring matrix exponential of the
//! generator that serves as the independent oracle.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::analytic::StateSpec;
use crate::error::{Error, Result};
use crate::params::SqueezeParam;
use crate::special::{eigenfunction_table, log_factorial};

/// The exponential refuses generators whose 1-norm exceeds this.
pub const MAX_EXPONENTIAL_NORM: f64 = 1024.0;

/// Largest squeeze magnitude accepted by the BCH constructions.
pub const MAX_SQUEEZE_R: f64 = 3.0;

/// Largest `|alpha|` of a single BCH factor when a displacement is applied in
/// steps. Larger single factors lose accuracy to cancellation in the
/// product of the normal-ordered exponentials.
pub const DISPLACEMENT_STEP: f64 = 0.5;

/// Tail cut-off of the k-sum in [`squeezed_number_coeffs`], relative to the
/// largest coefficient.
const SERIES_TAIL_TOL: f64 = 1e-16;

const TAYLOR_DEGREE: usize = 16;
const SCALED_NORM: f64 = 0.5;

/// Coefficients `c_0, ..., c_N` of a state in the truncated basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    coeffs: Vec<Complex64>,
}

impl FockState {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidParameter(
                "a Fock state needs truncation N >= 1".into(),
            ));
        }
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::InvalidParameter(
                "Fock coefficients must be finite".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    /// `|n>` in a basis truncated at `truncation`.
    pub fn number(n: usize, truncation: usize) -> Result<Self> {
        if n > truncation {
            return Err(Error::TruncationGuard(format!(
                "number state {n} lies outside truncation {truncation}"
            )));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); truncation + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Self::new(coeffs)
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Probability weight missing from the truncated basis, `1 - sum |c_m|^2`.
    pub fn leakage(&self) -> f64 {
        1.0 - self.norm_sqr()
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &FockState) -> Complex64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    fn from_array(a: Array1<Complex64>) -> Self {
        Self { coeffs: a.to_vec() }
    }
}

/// A dense `(N+1) x (N+1)` operator on the truncated basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    entries: Array2<Complex64>,
}

impl FockOperator {
    pub fn from_entries(entries: Array2<Complex64>) -> Result<Self> {
        let (rows, cols) = entries.dim();
        if rows != cols || rows < 2 {
            return Err(Error::InvalidParameter(format!(
                "operator must be square with N >= 1, got {rows}x{cols}"
            )));
        }
        Ok(Self { entries })
    }

    pub fn identity(truncation: usize) -> Self {
        Self {
            entries: Array2::eye(truncation + 1),
        }
    }

    pub fn truncation(&self) -> usize {
        self.entries.nrows() - 1
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn get(&self, m: usize, k: usize) -> Complex64 {
        self.entries[[m, k]]
    }

    pub fn dot(&self, other: &FockOperator) -> FockOperator {
        Self {
            entries: self.entries.dot(&other.entries),
        }
    }

    pub fn apply(&self, state: &FockState) -> FockState {
        let v = Array1::from(state.coeffs.clone());
        FockState::from_array(self.entries.dot(&v))
    }

    pub fn adjoint(&self) -> FockOperator {
        Self {
            entries: self.entries.t().mapv(|c| c.conj()),
        }
    }

    pub fn scaled(&self, factor: Complex64) -> FockOperator {
        Self {
            entries: &self.entries * factor,
        }
    }

    pub fn plus(&self, other: &FockOperator) -> FockOperator {
        Self {
            entries: &self.entries + &other.entries,
        }
    }

    /// Column `k`, i.e. the image of `|k>`.
    pub fn column(&self, k: usize) -> FockState {
        FockState::from_array(self.entries.column(k).to_owned())
    }

    /// Largest `|entry|` difference on the leading `block x block` submatrix.
    pub fn max_abs_diff_block(&self, other: &FockOperator, block: usize) -> f64 {
        let b = block.min(self.entries.nrows()).min(other.entries.nrows());
        let mut worst: f64 = 0.0;
        for m in 0..b {
            for k in 0..b {
                worst = worst.max((self.entries[[m, k]] - other.entries[[m, k]]).norm());
            }
        }
        worst
    }

    /// `max |(U^dagger U - 1)_{mk}|` on the leading block.
    pub fn unitarity_defect(&self, block: usize) -> f64 {
        let gram = self.adjoint().dot(self);
        gram.max_abs_diff_block(&Self::identity(self.truncation()), block)
    }

    fn one_norm(&self) -> f64 {
        self.entries
            .columns()
            .into_iter()
            .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// Truncated annihilation and creation operators, `a|m> = sqrt(m)|m-1>`.
pub fn ladder_matrices(truncation: usize) -> Result<(FockOperator, FockOperator)> {
    if truncation < 1 {
        return Err(Error::InvalidParameter(
            "truncation must be at least 1".into(),
        ));
    }
    let mut a = Array2::zeros((truncation + 1, truncation + 1));
    for m in 1..=truncation {
        a[[m - 1, m]] = Complex64::new((m as f64).sqrt(), 0.0);
    }
    let a = FockOperator { entries: a };
    let a_dag = a.adjoint();
    Ok((a, a_dag))
}

/// `x = (a + a^dagger)/sqrt 2`.
pub fn position_operator(truncation: usize) -> Result<FockOperator> {
    let (a, ad) = ladder_matrices(truncation)?;
    Ok(a.plus(&ad).scaled(std::f64::consts::FRAC_1_SQRT_2.into()))
}

/// `p = (a - a^dagger)/(i sqrt 2)`.
pub fn momentum_operator(truncation: usize) -> Result<FockOperator> {
    let (a, ad) = ladder_matrices(truncation)?;
    let factor = Complex64::new(0.0, -std::f64::consts::FRAC_1_SQRT_2);
    Ok(a.plus(&ad.scaled((-1.0).into())).scaled(factor))
}

/// `exp(M)` by scaling and squaring around a degree-16 Taylor polynomial.
pub fn matrix_exponential(m: &FockOperator) -> Result<FockOperator> {
    if m.entries
        .iter()
        .any(|c| !c.re.is_finite() || !c.im.is_finite())
    {
        return Err(Error::InvalidParameter(
            "matrix exponential of non-finite entries".into(),
        ));
    }
    let norm = m.one_norm();
    if norm > MAX_EXPONENTIAL_NORM {
        return Err(Error::NormTooLarge {
            norm,
            limit: MAX_EXPONENTIAL_NORM,
        });
    }
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as u32
    } else {
        0
    };
    let scaled = &m.entries * Complex64::new(0.5f64.powi(squarings as i32), 0.0);

    let dim = m.entries.nrows();
    let eye: Array2<Complex64> = Array2::eye(dim);
    let mut result = eye.clone();
    for k in (1..=TAYLOR_DEGREE).rev() {
        result = &eye + &(scaled.dot(&result) / Complex64::new(k as f64, 0.0));
    }
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    Ok(FockOperator { entries: result })
}

/// `c^j e^{i*phase}` magnitudes built from logs; `c = 0` handled exactly.
fn power(c: Complex64, j: usize) -> (f64, f64) {
    if j == 0 {
        (0.0, 0.0)
    } else if c.norm() == 0.0 {
        (f64::NEG_INFINITY, 0.0)
    } else {
        (j as f64 * c.norm().ln(), j as f64 * c.arg())
    }
}

fn polar_from_log(log_mag: f64, phase: f64) -> Complex64 {
    if log_mag == f64::NEG_INFINITY {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::from_polar(log_mag.exp(), phase)
    }
}

/// `exp(c (a^dagger)^q)`: `<k + qj| . |k> = c^j/j! sqrt((k+qj)!/k!)`.
fn raising_exponential(c: Complex64, q: usize, truncation: usize) -> Array2<Complex64> {
    let dim = truncation + 1;
    let mut out = Array2::zeros((dim, dim));
    for k in 0..dim {
        for j in 0.. {
            let m = k + q * j;
            if m >= dim {
                break;
            }
            let (log_c, phase) = power(c, j);
            let log_mag = log_c - log_factorial(j) + 0.5 * (log_factorial(m) - log_factorial(k));
            out[[m, k]] = polar_from_log(log_mag, phase);
        }
    }
    out
}

/// `exp(c a^q)`, the transpose of [`raising_exponential`].
fn lowering_exponential(c: Complex64, q: usize, truncation: usize) -> Array2<Complex64> {
    raising_exponential(c, q, truncation).reversed_axes()
}

/// `e^{-|beta|^2/2} exp(beta a^dagger) exp(-beta* a)` as a single product.
fn displacement_factor(beta: Complex64, truncation: usize) -> Array2<Complex64> {
    let raise = raising_exponential(beta, 1, truncation);
    let lower = lowering_exponential(-beta.conj(), 1, truncation);
    let gauss = Complex64::new((-0.5 * beta.norm_sqr()).exp(), 0.0);
    raise.dot(&lower) * gauss
}

/// Number of factors `K` with `|alpha/K| <= DISPLACEMENT_STEP`.
fn displacement_steps(alpha: Complex64) -> usize {
    (alpha.norm() / DISPLACEMENT_STEP).ceil().max(1.0) as usize
}

fn check_displacement_guard(alpha: Complex64, truncation: usize) -> Result<()> {
    let limit = truncation as f64 / 8.0;
    if alpha.norm() > limit || alpha.norm().is_nan() {
        return Err(Error::TruncationGuard(format!(
            "|alpha| = {} exceeds N/8 = {limit}",
            alpha.norm()
        )));
    }
    Ok(())
}

/// `D(alpha) = e^{-|alpha|^2/2} exp(alpha a^dagger) exp(-alpha* a)`, taken as
/// the `K`-fold product of `D(alpha/K)` so that no single factor has
/// `|alpha/K| > DISPLACEMENT_STEP`.
///
/// Guarded to `|alpha| <= N/8`.
pub fn displacement_bch(alpha: Complex64, truncation: usize) -> Result<FockOperator> {
    if truncation < 1 {
        return Err(Error::InvalidParameter(
            "truncation must be at least 1".into(),
        ));
    }
    check_displacement_guard(alpha, truncation)?;
    let steps = displacement_steps(alpha);
    let step = displacement_factor(alpha / steps as f64, truncation);
    let mut out = step.clone();
    for _ in 1..steps {
        out = out.dot(&step);
    }
    Ok(FockOperator { entries: out })
}

/// Displacement generator `alpha a^dagger - alpha* a`.
pub fn displacement_generator(alpha: Complex64, truncation: usize) -> Result<FockOperator> {
    let (a, ad) = ladder_matrices(truncation)?;
    Ok(ad.scaled(alpha).plus(&a.scaled(-alpha.conj())))
}

/// Squeeze generator `(z a^dagger a^dagger - z* a a)/2`.
pub fn squeeze_generator(sq: &SqueezeParam, truncation: usize) -> Result<FockOperator> {
    let (a, ad) = ladder_matrices(truncation)?;
    let z = sq.z();
    Ok(ad
        .dot(&ad)
        .scaled(0.5 * z)
        .plus(&a.dot(&a).scaled(-0.5 * z.conj())))
}

/// Parameters of the normal-ordered squeeze expansion:
/// `d = e^{i phi} tanh(r)/2`, `tau = -e^{-i phi} sinh r (cosh r + e^{i phi} sinh r)`
/// and `y = (cosh r / f1)^{1/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BchFactors {
    pub d: Complex64,
    pub tau: Complex64,
    pub y: Complex64,
}

impl BchFactors {
    pub fn new(sq: &SqueezeParam) -> Self {
        let (sh, ch) = (sq.r().sinh(), sq.r().cosh());
        let eiphi = Complex64::from_polar(1.0, sq.phi());
        let f1 = ch + eiphi * sh;
        Self {
            d: 0.5 * eiphi * sq.r().tanh(),
            tau: -eiphi.conj() * sh * f1,
            y: (ch / f1).sqrt(),
        }
    }
}

fn check_squeeze_guard(sq: &SqueezeParam) -> Result<()> {
    if sq.r() > MAX_SQUEEZE_R {
        return Err(Error::TruncationGuard(format!(
            "squeeze r = {} exceeds {MAX_SQUEEZE_R}",
            sq.r()
        )));
    }
    Ok(())
}

/// `S(z) = exp(d a^dagger a^dagger) (cosh r)^{-(1/2 + a^dagger a)} exp(-d* a a)`.
pub fn squeeze_bch(sq: &SqueezeParam, truncation: usize) -> Result<FockOperator> {
    if truncation < 1 {
        return Err(Error::InvalidParameter(
            "truncation must be at least 1".into(),
        ));
    }
    check_squeeze_guard(sq)?;
    let d = BchFactors::new(sq).d;
    let raise = raising_exponential(d, 2, truncation);
    let lower = lowering_exponential(-d.conj(), 2, truncation);
    let ln_cosh = sq.r().cosh().ln();
    let middle = Array1::from_iter(
        (0..=truncation).map(|m| Complex64::new((-(m as f64 + 0.5) * ln_cosh).exp(), 0.0)),
    );
    // diag(middle) * lower, row-scaled in place
    let scaled = &lower * &middle.insert_axis(ndarray::Axis(1));
    Ok(FockOperator {
        entries: raise.dot(&scaled),
    })
}

/// `D(alpha)|n>` from the double sum over `j <= n` and `k`, each term built
/// in log-magnitude space.
pub fn displaced_number_coeffs(n: usize, alpha: Complex64, truncation: usize) -> Result<FockState> {
    if n > truncation / 2 {
        return Err(Error::TruncationGuard(format!(
            "n = {n} exceeds N/2 = {}",
            truncation / 2
        )));
    }
    check_displacement_guard(alpha, truncation)?;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); truncation + 1];
    let gauss_log = -0.5 * alpha.norm_sqr();
    let minus_conj = -alpha.conj();
    for j in 0..=n {
        let (log_j, phase_j) = power(minus_conj, j);
        let base =
            gauss_log + log_j - log_factorial(j) + 0.5 * log_factorial(n) - log_factorial(n - j);
        for k in 0..=(truncation + j - n) {
            let m = n - j + k;
            let (log_k, phase_k) = power(alpha, k);
            let log_mag = base + log_k - log_factorial(k) + 0.5 * log_factorial(m);
            coeffs[m] += polar_from_log(log_mag, phase_j + phase_k);
        }
    }
    FockState::new(coeffs)
}

/// `S(z)|n>` from the finite `j`-sum and truncated `k`-sum of the
/// normal-ordered expansion.
pub fn squeezed_number_coeffs(n: usize, sq: &SqueezeParam, truncation: usize) -> Result<FockState> {
    if n > truncation / 4 {
        return Err(Error::TruncationGuard(format!(
            "n = {n} exceeds N/4 = {}",
            truncation / 4
        )));
    }
    check_squeeze_guard(sq)?;
    if sq.is_identity() {
        return FockState::number(n, truncation);
    }
    let d = BchFactors::new(sq).d;
    let ln_cosh = sq.r().cosh().ln();
    let ln_d = d.norm().ln();
    let minus_conj = -d.conj();

    let mut coeffs = vec![Complex64::new(0.0, 0.0); truncation + 1];
    for j in 0..=n / 2 {
        let (log_j, phase_j) = power(minus_conj, j);
        let base =
            -(n as f64 + 0.5) * ln_cosh + 0.5 * log_factorial(n) + log_j + 2.0 * j as f64 * ln_cosh
                - log_factorial(n - 2 * j)
                - log_factorial(j);
        let mut largest = f64::NEG_INFINITY;
        for k in 0.. {
            let m = n - 2 * j + 2 * k;
            if m > truncation {
                break;
            }
            let log_mag = base + k as f64 * ln_d + 0.5 * log_factorial(m) - log_factorial(k);
            coeffs[m] += polar_from_log(log_mag, phase_j + k as f64 * d.arg());
            largest = largest.max(log_mag);

            // ratio test: successive terms shrink by |d| sqrt((m+1)(m+2))/(k+1)
            let ratio = d.norm() * (((m + 1) * (m + 2)) as f64).sqrt() / (k + 1) as f64;
            if ratio < 1.0 {
                let tail = log_mag + ratio.ln() - (1.0 - ratio).ln();
                if tail < largest + SERIES_TAIL_TOL.ln() {
                    break;
                }
            }
        }
    }
    FockState::new(coeffs)
}

/// Position-space amplitude `sum_m c_m psi_m(x)`.
pub fn synthesize(state: &FockState, x: f64) -> Complex64 {
    let table = eigenfunction_table(state.truncation(), x);
    state
        .coeffs
        .iter()
        .zip(&table)
        .map(|(c, psi)| c * psi)
        .sum()
}

/// `c_m -> e^{-i(m + 1/2) t} c_m`.
pub fn time_evolve(state: &FockState, t: f64) -> FockState {
    let coeffs = state
        .coeffs
        .iter()
        .enumerate()
        .map(|(m, c)| c * Complex64::from_polar(1.0, -(m as f64 + 0.5) * t))
        .collect();
    FockState { coeffs }
}

/// `D(alpha) S(z)|n>` by operator products: the BCH squeeze operator applied
/// to `|n>`, then `D(alpha) = D(alpha/K)^K` applied as `K` BCH factors with
/// `|alpha/K| <= DISPLACEMENT_STEP`.
pub fn displaced_squeezed_number(spec: &StateSpec, truncation: usize) -> Result<FockState> {
    if spec.n > truncation / 4 {
        return Err(Error::TruncationGuard(format!(
            "n = {} exceeds N/4 = {}",
            spec.n,
            truncation / 4
        )));
    }
    let alpha = spec.disp.alpha();
    check_displacement_guard(alpha, truncation)?;
    let mut state = squeeze_bch(&spec.sq, truncation)?.column(spec.n);
    if alpha.norm() > 0.0 {
        let steps = displacement_steps(alpha);
        let step = FockOperator {
            entries: displacement_factor(alpha / steps as f64, truncation),
        };
        for _ in 0..steps {
            state = step.apply(&state);
        }
    }
    Ok(state)
}

/// Truncation used when none is given: 128 for `|alpha| <= 2`, otherwise 256.
pub fn default_truncation(spec: &StateSpec) -> usize {
    if spec.disp.alpha().norm() <= 2.0 {
        128
    } else {
        256
    }
}
