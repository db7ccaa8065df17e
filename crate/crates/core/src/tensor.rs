//! Multi-index bookkeeping and dense complex matrices.
//!
//! Basis ordering is big-endian: the leftmost qudit is the most significant
//! base-`d` digit, so `|j...j>` sits at linear index `j * (d^n - 1) / (d - 1)`.

use std::fmt;
use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default cap on matrix rows and columns.
pub const DEFAULT_MAX_DIM: usize = 4096;

/// Density-matrix validation tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub hermitian: f64,
    pub trace: f64,
    pub psd: f64,
    pub eig: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-10,
            trace: 1e-10,
            psd: 1e-9,
            eig: 1e-10,
        }
    }
}

/// `d^n`, or `None` on overflow.
pub fn checked_dim(d: usize, n: usize) -> Option<usize> {
    d.checked_pow(u32::try_from(n).ok()?)
}

/// `d^n` checked against `max_dim`.
pub fn system_dim(d: usize, n: usize, max_dim: usize) -> Result<usize> {
    match checked_dim(d, n) {
        Some(dim) if dim <= max_dim => Ok(dim),
        other => Err(Error::Capacity {
            what: "matrix dimension",
            required: other.map_or_else(|| format!("{d}^{n}"), |v| v.to_string()),
            cap: max_dim as u64,
        }),
    }
}

/// An n-tuple of base-`d` digits addressing the computational product basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    digits: Vec<usize>,
    d: usize,
}

impl MultiIndex {
    pub fn new(digits: Vec<usize>, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidIndex("local dimension must be positive".into()));
        }
        if let Some((pos, &bad)) = digits.iter().enumerate().find(|(_, &x)| x >= d) {
            return Err(Error::InvalidIndex(format!(
                "digit {bad} at position {pos} is outside [0, {d})"
            )));
        }
        Ok(Self { digits, d })
    }

    /// The string `j j ... j` of length `n`.
    pub fn repeated(j: usize, d: usize, n: usize) -> Result<Self> {
        Self::new(vec![j; n], d)
    }

    pub fn decode(linear: usize, d: usize, n: usize) -> Result<Self> {
        let dim = checked_dim(d, n)
            .ok_or_else(|| Error::InvalidIndex(format!("{d}^{n} overflows")))?;
        if d == 0 || linear >= dim {
            return Err(Error::InvalidIndex(format!(
                "linear index {linear} is outside [0, {dim})"
            )));
        }
        let mut digits = vec![0; n];
        let mut rest = linear;
        for slot in digits.iter_mut().rev() {
            *slot = rest % d;
            rest /= d;
        }
        Ok(Self { digits, d })
    }

    pub fn encode(&self) -> usize {
        self.digits.iter().fold(0, |acc, &x| acc * self.d + x)
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.digits.len()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::InvalidParameter(format!(
                "{} entries do not form a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidParameter("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::from_vec(r, c, data)
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Column vector `v` as a `len x 1` matrix.
    pub fn column(v: &[Complex64]) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// Projector-style outer product `|v><v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        let dim = v.len();
        let mut m = Self::zeros(dim, dim);
        for (i, a) in v.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                m.data[i * dim + j] = a * b.conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::InvalidParameter(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// `self += factor * other`; shapes must agree.
    pub fn add_scaled(&mut self, factor: f64, other: &Self) -> Result<()> {
        self.check_same_shape(other)?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * factor;
        }
        Ok(())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn frobenius_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Largest entrywise modulus of `M - M^dagger` (square matrices only).
    pub fn hermitian_defect(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::ContractViolation(format!(
                "{}x{} matrix is not square",
                self.rows, self.cols
            )));
        }
        let mut worst = 0.0_f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        Ok(worst)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidParameter(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

/// Kronecker product with the default dimension cap.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    kron_with_cap(a, b, DEFAULT_MAX_DIM)
}

pub fn kron_with_cap(a: &ComplexMatrix, b: &ComplexMatrix, max_dim: usize) -> Result<ComplexMatrix> {
    let rows = a.rows.checked_mul(b.rows);
    let cols = a.cols.checked_mul(b.cols);
    let (rows, cols) = match (rows, cols) {
        (Some(r), Some(c)) if r <= max_dim && c <= max_dim => (r, c),
        _ => {
            return Err(Error::Capacity {
                what: "kronecker product",
                required: format!("{}x{}", a.rows as u128 * b.rows as u128, a.cols as u128 * b.cols as u128),
                cap: max_dim as u64,
            })
        }
    };
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ai in 0..a.rows {
        for aj in 0..a.cols {
            let x = a[(ai, aj)];
            for bi in 0..b.rows {
                let row = (ai * b.rows + bi) * cols + aj * b.cols;
                for bj in 0..b.cols {
                    out.data[row + bj] = x * b[(bi, bj)];
                }
            }
        }
    }
    Ok(out)
}

/// Kronecker product of vectors, `a ⊗ b`.
pub fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Checks all three density-matrix invariants (one eigensolve).
    pub fn new(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let rho = Self::from_hermitian(matrix, tol)?;
        rho.check_psd(tol)?;
        Ok(rho)
    }

    /// Checks Hermiticity and trace only; positivity is left to the caller.
    pub fn from_hermitian(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let defect = matrix.hermitian_defect()?;
        if defect > tol.hermitian {
            return Err(Error::ContractViolation(format!(
                "matrix is not Hermitian: max |M - M^dagger| = {defect:e}"
            )));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > tol.trace {
            return Err(Error::ContractViolation(format!(
                "trace {tr} differs from 1"
            )));
        }
        Ok(Self { matrix })
    }

    pub fn check_psd(&self, tol: &Tolerances) -> Result<f64> {
        let min = eig_min_hermitian(&self.matrix)?;
        if min < -tol.psd {
            return Err(Error::ContractViolation(format!(
                "matrix is not positive semidefinite: minimum eigenvalue {min:e}"
            )));
        }
        Ok(min)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }
}

/// Transposes the tensor factors listed in `subsystems`. An empty set is a
/// no-op.
pub fn partial_transpose(
    rho: &DensityMatrix,
    subsystems: &[usize],
    d: usize,
    n: usize,
) -> Result<ComplexMatrix> {
    let dim = checked_dim(d, n).ok_or_else(|| Error::InvalidParameter(format!("{d}^{n} overflows")))?;
    if rho.dim() != dim {
        return Err(Error::InvalidParameter(format!(
            "matrix dimension {} does not equal {d}^{n} = {dim}",
            rho.dim()
        )));
    }
    if let Some(&bad) = subsystems.iter().find(|&&r| r >= n) {
        return Err(Error::InvalidParameter(format!(
            "qudit position {bad} is outside [0, {n})"
        )));
    }
    let mut places: Vec<usize> = subsystems.iter().map(|&r| d.pow((n - 1 - r) as u32)).collect();
    places.sort_unstable();
    places.dedup();

    let src = rho.matrix();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for x in 0..dim {
        for y in 0..dim {
            let (mut xs, mut ys) = (x, y);
            for &p in &places {
                let (dx, dy) = ((x / p) % d, (y / p) % d);
                xs = xs - dx * p + dy * p;
                ys = ys - dy * p + dx * p;
            }
            out[(xs, ys)] = src[(x, y)];
        }
    }
    Ok(out)
}

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn eigenvalues_hermitian(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let defect = m.hermitian_defect()?;
    let tol = Tolerances::default().hermitian;
    if defect > tol {
        return Err(Error::ContractViolation(format!(
            "eigensolver input is not Hermitian: max |M - M^dagger| = {defect:e}"
        )));
    }
    let dim = m.rows();
    // Symmetrize so the solver sees an exactly Hermitian input.
    let h = DMatrix::from_fn(dim, dim, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut values: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

pub fn eig_min_hermitian(m: &ComplexMatrix) -> Result<f64> {
    Ok(eigenvalues_hermitian(m)?[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bell() -> DensityMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)];
        DensityMatrix::new(ComplexMatrix::outer(&psi), &Tolerances::default()).unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(MultiIndex::new(vec![1, 1], 2).unwrap().encode(), 3);
        assert_eq!(MultiIndex::new(vec![1, 2], 3).unwrap().encode(), 5);
        for (d, n) in [(2, 3), (5, 4), (7, 1)] {
            assert_eq!(MultiIndex::new(vec![0; n], d).unwrap().encode(), 0);
        }
    }

    #[test]
    fn digit_out_of_range() {
        assert!(matches!(MultiIndex::new(vec![0, 3], 3), Err(Error::InvalidIndex(_))));
        assert!(MultiIndex::decode(9, 3, 2).is_err());
    }

    #[test]
    fn encode_is_bijective() {
        for (d, n) in [(2, 12), (3, 7), (4, 6), (16, 3)] {
            let dim = checked_dim(d, n).unwrap();
            assert!(dim <= 4096);
            let mut seen = vec![false; dim];
            for (x, slot) in seen.iter_mut().enumerate() {
                let m = MultiIndex::decode(x, d, n).unwrap();
                assert_eq!(m.encode(), x);
                assert!(!*slot);
                *slot = true;
            }
        }
    }

    #[test]
    fn repeated_index_closed_form() {
        for (d, n) in [(2, 2), (3, 3), (5, 2)] {
            for j in 0..d {
                let idx = MultiIndex::repeated(j, d, n).unwrap().encode();
                assert_eq!(idx, j * (d.pow(n as u32) - 1) / (d - 1));
            }
        }
    }

    #[test]
    fn kron_identity_and_shape() {
        let i4 = kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2)).unwrap();
        assert_eq!(i4, ComplexMatrix::identity(4));
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(4, 5);
        let k = kron(&a, &b).unwrap();
        assert_eq!((k.rows(), k.cols()), (8, 15));
    }

    #[test]
    fn kron_capacity() {
        let a = ComplexMatrix::identity(65);
        assert!(matches!(kron(&a, &a), Err(Error::Capacity { .. })));
        assert!(kron_with_cap(&a, &a, 65 * 65).is_ok());
        let b = ComplexMatrix::identity(64);
        assert!(kron(&b, &b).is_ok());
    }

    #[test]
    fn kron_of_projectors_is_projector_of_product() {
        let psi = [c(0.6, 0.0), c(0.0, 0.8)];
        let phi = [c(0.5, 0.5), c(-0.5, 0.5)];
        let lhs = kron(&ComplexMatrix::outer(&psi), &ComplexMatrix::outer(&phi)).unwrap();
        let rhs = ComplexMatrix::outer(&kron_vec(&psi, &phi));
        assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-12);
    }

    #[test]
    fn partial_transpose_of_identity() {
        let m = ComplexMatrix::identity(8).scaled(1.0 / 8.0);
        let rho = DensityMatrix::new(m.clone(), &Tolerances::default()).unwrap();
        for set in [vec![0], vec![1, 2], vec![0, 1, 2]] {
            assert_eq!(partial_transpose(&rho, &set, 2, 3).unwrap(), m);
        }
    }

    #[test]
    fn partial_transpose_empty_set_is_noop() {
        let rho = bell();
        assert_eq!(&partial_transpose(&rho, &[], 2, 2).unwrap(), rho.matrix());
    }

    #[test]
    fn partial_transpose_bell_by_hand() {
        // PT over qudit 0 of |00>+|11> moves the 1/2 coherences to (01,10).
        let pt = partial_transpose(&bell(), &[0], 2, 2).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[
            &[0.5, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.5, 0.0],
            &[0.0, 0.5, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.5],
        ])
        .unwrap();
        assert!(pt.max_abs_diff(&expected).unwrap() < 1e-15);
        assert!((eig_min_hermitian(&pt).unwrap() + 0.5).abs() <= 1e-10);
    }

    #[test]
    fn partial_transpose_rejects_bad_positions() {
        assert!(partial_transpose(&bell(), &[2], 2, 2).is_err());
        assert!(partial_transpose(&bell(), &[0], 3, 2).is_err());
    }

    #[test]
    fn eig_examples() {
        assert!((eig_min_hermitian(&ComplexMatrix::identity(4)).unwrap() - 1.0).abs() <= 1e-10);
        let m = ComplexMatrix::diagonal(&[0.2, 0.8]);
        assert!((eig_min_hermitian(&m).unwrap() - 0.2).abs() <= 1e-10);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(eig_min_hermitian(&m), Err(Error::ContractViolation(_))));
    }

    #[test]
    fn density_matrix_rejects_bad_trace() {
        let m = ComplexMatrix::identity(2);
        assert!(DensityMatrix::new(m, &Tolerances::default()).is_err());
        let neg = ComplexMatrix::diagonal(&[1.5, -0.5]);
        assert!(DensityMatrix::new(neg, &Tolerances::default()).is_err());
    }

    fn complex_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), rows * cols).prop_map(move |v| {
            ComplexMatrix::from_vec(rows, cols, v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap()
        })
    }

    fn hermitian(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
        complex_matrix(dim, dim).prop_map(|m| {
            let mut h = m.clone();
            h.add_scaled(1.0, &m.adjoint()).unwrap();
            h.scaled(0.5)
        })
    }

    fn density(dim: usize) -> impl Strategy<Value = DensityMatrix> {
        complex_matrix(dim, dim).prop_map(|a| {
            let m = a.matmul(&a.adjoint()).unwrap();
            let tr = m.trace().re;
            DensityMatrix::new(m.scaled(1.0 / tr), &Tolerances::default()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn kron_is_associative(
            a in complex_matrix(2, 3),
            b in complex_matrix(3, 2),
            c in complex_matrix(2, 2),
        ) {
            let left = kron(&kron(&a, &b).unwrap(), &c).unwrap();
            let right = kron(&a, &kron(&b, &c).unwrap()).unwrap();
            prop_assert!(left.max_abs_diff(&right).unwrap() <= 1e-12);
        }

        #[test]
        fn kron_mixed_product(
            a in complex_matrix(2, 3),
            b in complex_matrix(2, 2),
            c in complex_matrix(3, 2),
            d in complex_matrix(2, 3),
        ) {
            let lhs = kron(&a, &b).unwrap().matmul(&kron(&c, &d).unwrap()).unwrap();
            let rhs = kron(&a.matmul(&c).unwrap(), &b.matmul(&d).unwrap()).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-12);
        }

        #[test]
        fn partial_transpose_involutive_and_trace_preserving(
            rho in density(8),
            mask in 0usize..8,
        ) {
            let set: Vec<usize> = (0..3).filter(|r| mask & (1 << r) != 0).collect();
            let once = partial_transpose(&rho, &set, 2, 3).unwrap();
            prop_assert_eq!(once.trace(), rho.matrix().trace());
            prop_assert!(once.hermitian_defect().unwrap() <= 1e-15);
            let tol = Tolerances { psd: f64::INFINITY, ..Tolerances::default() };
            let twice = partial_transpose(&DensityMatrix::new(once, &tol).unwrap(), &set, 2, 3).unwrap();
            prop_assert_eq!(&twice, rho.matrix());
        }

        #[test]
        fn rayleigh_bound(m in hermitian(6), probe in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 6)) {
            let x: Vec<Complex64> = probe.into_iter().map(|(a, b)| c(a, b)).collect();
            let norm: f64 = x.iter().map(|z| z.norm_sqr()).sum();
            prop_assume!(norm > 1e-6);
            let mx = m.matmul(&ComplexMatrix::column(&x)).unwrap();
            let quad: Complex64 = x.iter().zip(mx.as_slice()).map(|(a, b)| a.conj() * b).sum();
            let min = eig_min_hermitian(&m).unwrap();
            prop_assert!(min <= quad.re / norm + 1e-10);
        }
    }
}
