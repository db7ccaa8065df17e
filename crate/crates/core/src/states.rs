//! State constructors: the GHZ-like vector, the Werner family, the
//! phase-family density and the single-qudit pure state built from phases.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phases::PhaseVector;
use crate::tensor::{system_dim, ComplexMatrix, DensityMatrix, MultiIndex, Tolerances, DEFAULT_MAX_DIM};

const UNIT_TOL: f64 = 1e-12;

/// Parameters of `W(s) = (1 - s) I / d^n + s |Psi><Psi|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerParams {
    d: usize,
    n: usize,
    s: f64,
}

impl WernerParams {
    pub fn new(d: usize, n: usize, s: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("local dimension d = {d} must be >= 2")));
        }
        if n < 2 {
            return Err(Error::InvalidParameter(format!("qudit count n = {n} must be >= 2")));
        }
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidParameter(format!("mixing weight s = {s} must lie in [0, 1]")));
        }
        Ok(Self { d, n, s })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> f64 {
        self.s
    }
}

/// Unit-modulus phases `zeta_0, ..., zeta_{d-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPhases(Vec<Complex64>);

impl FixedPhases {
    pub fn new(zeta: Vec<Complex64>) -> Result<Self> {
        check_unit(&zeta, "fixed phase")?;
        Ok(Self(zeta))
    }

    pub fn ones(d: usize) -> Self {
        Self(vec![Complex64::new(1.0, 0.0); d])
    }

    /// `zeta_r = exp(i theta_r)`.
    pub fn from_angles(angles: &[f64]) -> Self {
        Self(angles.iter().map(|&t| Complex64::from_polar(1.0, t)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }
}

fn check_unit(values: &[Complex64], what: &str) -> Result<()> {
    match values
        .iter()
        .enumerate()
        .find(|(_, z)| (z.norm() - 1.0).abs() > UNIT_TOL)
    {
        Some((r, z)) => Err(Error::ContractViolation(format!(
            "{what} {r} has modulus {} (expected 1)",
            z.norm()
        ))),
        None => Ok(()),
    }
}

fn check_shape(d: usize, n: usize, min_n: usize) -> Result<usize> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("local dimension d = {d} must be >= 2")));
    }
    if n < min_n {
        return Err(Error::InvalidParameter(format!("qudit count n = {n} must be >= {min_n}")));
    }
    system_dim(d, n, DEFAULT_MAX_DIM)
}

/// Linear index of `|j j ... j>`.
fn diagonal_index(j: usize, d: usize, n: usize) -> usize {
    MultiIndex::repeated(j, d, n)
        .expect("j < d by construction")
        .encode()
}

/// `|Psi> = d^{-1/2} sum_j |j ... j>`.
pub fn psi_ghz(d: usize, n: usize) -> Result<Vec<Complex64>> {
    let dim = check_shape(d, n, 1)?;
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut psi = vec![Complex64::new(0.0, 0.0); dim];
    for j in 0..d {
        psi[diagonal_index(j, d, n)] = amp;
    }
    Ok(psi)
}

pub fn werner(params: &WernerParams) -> Result<DensityMatrix> {
    let (d, n, s) = (params.d, params.n, params.s);
    let dim = check_shape(d, n, 2)?;
    let mut m = ComplexMatrix::identity(dim).scaled((1.0 - s) / dim as f64);
    let coherence = s / d as f64;
    for j in 0..d {
        let x = diagonal_index(j, d, n);
        for k in 0..d {
            m[(x, diagonal_index(k, d, n))] += coherence;
        }
    }
    DensityMatrix::from_hermitian(m, &Tolerances::default())
}

/// `d^{-n} (I + sum_{j != k} zeta_j conj(zeta_k) |j..j><k..k|)`.
///
/// Positivity is not checked here for `n >= 2`; the separable decomposition
/// is its certificate.
pub fn rho_phase_family(d: usize, n: usize, phases: &FixedPhases) -> Result<DensityMatrix> {
    let dim = check_shape(d, n, 1)?;
    if phases.len() != d {
        return Err(Error::InvalidParameter(format!(
            "{} fixed phases supplied for d = {d}",
            phases.len()
        )));
    }
    check_unit(phases.as_slice(), "fixed phase")?;
    let zeta = phases.as_slice();
    let scale = 1.0 / dim as f64;
    let mut m = ComplexMatrix::identity(dim).scaled(scale);
    for j in 0..d {
        for k in (0..d).filter(|&k| k != j) {
            m[(diagonal_index(j, d, n), diagonal_index(k, d, n))] = zeta[j] * zeta[k].conj() * scale;
        }
    }
    DensityMatrix::from_hermitian(m, &Tolerances::default())
}

/// `d^{-1/2} (z_0, ..., z_{d-1})` for unit-modulus entries.
pub fn pure_from_phases(z: &[Complex64]) -> Result<Vec<Complex64>> {
    if z.is_empty() {
        return Err(Error::InvalidParameter("empty phase vector".into()));
    }
    check_unit(z, "phase entry")?;
    let norm = 1.0 / (z.len() as f64).sqrt();
    Ok(z.iter().map(|x| x * norm).collect())
}

/// Single-qudit pure state whose projector is the `n = 1` phase-family
/// density.
pub fn rho1_pure(z: &PhaseVector) -> Result<Vec<Complex64>> {
    pure_from_phases(&z.amplitudes())
}
