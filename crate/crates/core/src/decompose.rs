//! Explicit separable decompositions.
//!
//! The phase-family density on `n` qudits is the uniform mixture over the
//! 4^d phase vectors `z` of (phase-family density on `n - 1` qudits with
//! phases `zeta * z`) ⊗ (pure state built from `conj(z)`), the new qudit
//! being appended as the last tensor factor. Unrolling the recursion gives,
//! for every sequence `(m_1, ..., m_{n-1})`, one product term in which
//! qudit `t >= 1` carries `conj(z^(m_t))` and qudit 0 carries
//! `zeta * z^(m_1) * ... * z^(m_{n-1})`, all with weight `4^{-d(n-1)}`.
//!
//! Werner states at or below the threshold add the `d` projectors onto
//! `|j...j>` and, strictly below it, the computational-basis products that
//! make up the leftover maximally mixed part.

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::criteria::threshold;
use crate::error::{Error, Result};
use crate::exec::{map_indexed, Exec};
use crate::phases::{GaussInt, PhaseVector, MAX_PHASE_DIM};
use crate::rational::ExactRational;
use crate::states::{pure_from_phases, FixedPhases};
use crate::tensor::checked_dim;

/// Default cap on the number of flattened terms.
pub const DEFAULT_MAX_TERMS: usize = 1 << 20;

const NORM_TOL: f64 = 1e-12;
const WEIGHT_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub max_terms: usize,
    pub exec: Exec,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            max_terms: DEFAULT_MAX_TERMS,
            exec: Exec::default(),
        }
    }
}

/// Weighted product of pure local states, one length-`d` vector per qudit.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductTerm {
    pub weight: ExactRational,
    pub locals: Vec<Vec<Complex64>>,
}

/// What a certificate claims its mixture equals.
#[derive(Debug, Clone, PartialEq)]
pub enum TargetDescriptor {
    Werner { s: ExactRational },
    PhaseFamily { zeta: Vec<Complex64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparableCertificate {
    pub d: usize,
    pub n: usize,
    pub target: TargetDescriptor,
    pub terms: Vec<ProductTerm>,
}

impl SeparableCertificate {
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn weight_sum(&self) -> ExactRational {
        self.terms.iter().map(|t| &t.weight).sum()
    }

    /// Checks shape, nonnegative weights, unit-norm locals, the weight sum
    /// and the term cap.
    pub fn validate(&self, max_terms: usize) -> Result<()> {
        let fail = |invariant, term, detail: String| Err(Error::Validation { invariant, term, detail });
        if self.d < 2 || self.n < 1 {
            return fail("shape", None, format!("need d >= 2 and n >= 1, got d = {}, n = {}", self.d, self.n));
        }
        if self.terms.is_empty() {
            return fail("nonempty", None, "certificate has no terms".into());
        }
        if self.terms.len() > max_terms {
            return fail("term cap", None, format!("{} terms exceed the cap of {max_terms}", self.terms.len()));
        }
        for (i, term) in self.terms.iter().enumerate() {
            if term.locals.len() != self.n {
                return fail("shape", Some(i), format!("{} local states for n = {}", term.locals.len(), self.n));
            }
            if term.weight.is_negative() {
                return fail("weight nonnegative", Some(i), format!("weight {}", term.weight));
            }
            for (r, local) in term.locals.iter().enumerate() {
                if local.len() != self.d {
                    return fail("shape", Some(i), format!("local state {r} has length {} for d = {}", local.len(), self.d));
                }
                if local.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                    return fail("finite amplitudes", Some(i), format!("local state {r} has a non-finite amplitude"));
                }
                let norm = local.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if (norm - 1.0).abs() > NORM_TOL {
                    return fail("local norm", Some(i), format!("local state {r} has norm {norm}"));
                }
            }
        }
        let err = (self.weight_sum() - ExactRational::one()).abs().to_f64();
        if err > WEIGHT_SUM_TOL {
            return fail("weight sum", None, format!("weights sum to 1 {:+e}", err));
        }
        Ok(())
    }
}

fn term_count_for_rho_n(d: usize, n: usize) -> Option<usize> {
    let shift = d.checked_mul(2)?.checked_mul(n - 1)?;
    (shift < usize::BITS as usize).then(|| 1usize << shift)
}

fn capacity(required: String, cap: usize) -> Error {
    Error::Capacity {
        what: "certificate terms",
        required,
        cap: cap as u64,
    }
}

fn phase_family_count(d: usize, n: usize, cap: usize) -> Result<usize> {
    if n >= 2 && d > MAX_PHASE_DIM {
        return Err(capacity(format!("4^({d}*{}) terms", n - 1), cap));
    }
    match term_count_for_rho_n(d, n) {
        Some(c) if c <= cap => Ok(c),
        Some(c) => Err(capacity(c.to_string(), cap)),
        None => Err(capacity(format!("4^({d}*{})", n - 1), cap)),
    }
}

fn basis_vector(j: usize, d: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); d];
    v[j] = Complex64::new(1.0, 0.0);
    v
}

/// Local states of the flattened phase-family term with sequence index `idx`.
fn phase_family_locals(idx: usize, d: usize, n: usize, zeta: &[Complex64], ensemble: &[Vec<GaussInt>]) -> Vec<Vec<Complex64>> {
    let radix_bits = 2 * d;
    let mask = (1usize << radix_bits) - 1;
    let mut first = vec![GaussInt::ONE; d];
    let mut locals = Vec::with_capacity(n);
    locals.push(Vec::new());
    for t in 1..n {
        let m = (idx >> (radix_bits * (n - 1 - t))) & mask;
        let z = &ensemble[m];
        for r in 0..d {
            first[r] = first[r] * z[r];
        }
        let conj: Vec<Complex64> = z.iter().map(|x| x.conj().to_complex()).collect();
        locals.push(pure_from_phases(&conj).expect("units have modulus 1"));
    }
    let phases: Vec<Complex64> = first.iter().zip(zeta).map(|(z, p)| z.to_complex() * p).collect();
    locals[0] = pure_from_phases(&phases).expect("unit times unit-modulus phase");
    locals
}

fn phase_family_terms(d: usize, n: usize, zeta: &[Complex64], weight: &ExactRational, count: usize, exec: Exec) -> Vec<ProductTerm> {
    let ensemble: Vec<Vec<GaussInt>> = if n >= 2 {
        (0..1usize << (2 * d))
            .map(|m| PhaseVector::from_index(m, d).exact().collect())
            .collect()
    } else {
        Vec::new()
    };
    map_indexed(exec, count, |idx| ProductTerm {
        weight: weight.clone(),
        locals: phase_family_locals(idx, d, n, zeta, &ensemble),
    })
}

/// Flattened separable decomposition of the phase-family density on `n`
/// qudits: `4^(d(n-1))` equally weighted product terms.
pub fn decompose_rho_n(d: usize, n: usize, phases: &FixedPhases, config: &Config) -> Result<SeparableCertificate> {
    if d < 2 || n < 1 {
        return Err(Error::InvalidParameter(format!("need d >= 2 and n >= 1, got d = {d}, n = {n}")));
    }
    if phases.len() != d {
        return Err(Error::InvalidParameter(format!("{} fixed phases supplied for d = {d}", phases.len())));
    }
    let count = phase_family_count(d, n, config.max_terms)?;
    let weight = ExactRational::new(1, BigInt::from(count))?;
    Ok(SeparableCertificate {
        d,
        n,
        target: TargetDescriptor::PhaseFamily { zeta: phases.as_slice().to_vec() },
        terms: phase_family_terms(d, n, phases.as_slice(), &weight, count, config.exec),
    })
}

/// Separable decomposition of `W(s)` for `0 <= s <= 1/(1 + d^(n-1))`.
///
/// Terms come in three groups, each present only with positive weight:
/// the `d` projectors onto `|j...j>` (weight `s/d` each), the flattened
/// phase-family terms (total `s d^(n-1)`), and the `d^n` basis products
/// (total `1 - s/s*`).
pub fn decompose_werner(d: usize, n: usize, s: &ExactRational, config: &Config) -> Result<SeparableCertificate> {
    let star = threshold(d, n)?;
    if s.is_negative() {
        return Err(Error::InvalidParameter(format!("s = {s} is negative")));
    }
    if s > &star {
        return Err(Error::ThresholdExceeded {
            s: s.to_string(),
            bound: star.to_string(),
        });
    }

    let dim = checked_dim(d, n).ok_or_else(|| capacity(format!("{d}^{n}"), config.max_terms))?;
    let entangled_part = !s.is_zero();
    let noise_part = s < &star;

    let family_count = if entangled_part { phase_family_count(d, n, config.max_terms)? } else { 0 };
    let total = (if entangled_part { d + family_count } else { 0 })
        .checked_add(if noise_part { dim } else { 0 })
        .filter(|&t| t <= config.max_terms)
        .ok_or_else(|| capacity(format!("{} + {family_count} + {dim}", if entangled_part { d } else { 0 }), config.max_terms))?;

    let mut terms = Vec::with_capacity(total);
    if entangled_part {
        let diag_weight = s / &ExactRational::from_integer(d);
        for j in 0..d {
            terms.push(ProductTerm {
                weight: diag_weight.clone(),
                locals: vec![basis_vector(j, d); n],
            });
        }
        let d_pow = num_traits::pow(BigInt::from(d), n - 1);
        let family_weight = &(s * &ExactRational::from_integer(d_pow)) / &ExactRational::from_integer(family_count);
        let zeta = FixedPhases::ones(d);
        terms.extend(phase_family_terms(d, n, zeta.as_slice(), &family_weight, family_count, config.exec));
    }
    if noise_part {
        let leftover = ExactRational::one() - &(s / &star);
        let basis_weight = &leftover / &ExactRational::from_integer(dim);
        let basis = map_indexed(config.exec, dim, |x| {
            let mut locals = vec![Vec::new(); n];
            let mut rest = x;
            for slot in locals.iter_mut().rev() {
                *slot = basis_vector(rest % d, d);
                rest /= d;
            }
            ProductTerm { weight: basis_weight.clone(), locals }
        });
        terms.extend(basis);
    }

    Ok(SeparableCertificate {
        d,
        n,
        target: TargetDescriptor::Werner { s: s.clone() },
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phases::enumerate_phase_vectors;
    use crate::states::{rho_phase_family, werner, WernerParams};
    use crate::tensor::{kron_vec, ComplexMatrix};

    fn q(p: i64, r: i64) -> ExactRational {
        ExactRational::new(p, r).unwrap()
    }

    /// Direct reconstruction: sum of weight * |v><v| with v the tensor product.
    fn mixture(cert: &SeparableCertificate) -> ComplexMatrix {
        let dim = cert.d.pow(cert.n as u32);
        let mut m = ComplexMatrix::zeros(dim, dim);
        for t in &cert.terms {
            let v = t.locals.iter().skip(1).fold(t.locals[0].clone(), |acc, l| kron_vec(&acc, l));
            m.add_scaled(t.weight.to_f64(), &ComplexMatrix::outer(&v)).unwrap();
        }
        m
    }

    /// Literal recursion: rho^(t)(zeta) = avg_m rho^(t-1)(zeta * z^m) ⊗ psi(conj z^m).
    fn recursive_locals(t: usize, zeta: &[Complex64]) -> Vec<Vec<Vec<Complex64>>> {
        if t == 1 {
            return vec![vec![pure_from_phases(zeta).unwrap()]];
        }
        let mut out = Vec::new();
        for v in enumerate_phase_vectors(zeta.len()).unwrap() {
            let z = v.amplitudes();
            let inner: Vec<Complex64> = zeta.iter().zip(&z).map(|(a, b)| a * b).collect();
            let last = pure_from_phases(&z.iter().map(|x| x.conj()).collect::<Vec<_>>()).unwrap();
            for mut locals in recursive_locals(t - 1, &inner) {
                locals.push(last.clone());
                out.push(locals);
            }
        }
        out
    }

    #[test]
    fn base_case_single_term() {
        for d in 2..=4 {
            let cert = decompose_rho_n(d, 1, &FixedPhases::ones(d), &Config::default()).unwrap();
            assert_eq!(cert.term_count(), 1);
            assert_eq!(cert.terms[0].weight, ExactRational::one());
            let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
            assert_eq!(cert.terms[0].locals, vec![vec![amp; d]]);
        }
    }

    #[test]
    fn rho_n_counts_and_reconstruction() {
        for (d, n, count) in [(2, 2, 16), (2, 3, 256), (3, 2, 64)] {
            let zeta = FixedPhases::ones(d);
            let cert = decompose_rho_n(d, n, &zeta, &Config::default()).unwrap();
            assert_eq!(cert.term_count(), count);
            assert!(cert.terms.iter().all(|t| t.weight == q(1, count as i64)));
            cert.validate(DEFAULT_MAX_TERMS).unwrap();
            let target = rho_phase_family(d, n, &zeta).unwrap();
            assert!(mixture(&cert).max_abs_diff(target.matrix()).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn flattening_matches_literal_recursion() {
        let zeta = FixedPhases::from_angles(&[0.7, -2.1]);
        let (d, n) = (2, 3);
        let flat = decompose_rho_n(d, n, &zeta, &Config::default()).unwrap();
        let rec = recursive_locals(n, zeta.as_slice());
        assert_eq!(rec.len(), flat.term_count());
        let radix = 1usize << (2 * d);
        for (ri, locals) in rec.iter().enumerate() {
            // recursion order: m_{n-1} outermost; flat order: m_1 most significant
            let (m2, m1) = (ri / radix, ri % radix);
            let fi = m1 * radix + m2;
            for (a, b) in locals.iter().flatten().zip(flat.terms[fi].locals.iter().flatten()) {
                assert!((a - b).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn phase_general_reconstruction() {
        let angles = [[0.3, 1.1, -0.4], [2.9, -1.7, 0.05]];
        for a in angles {
            let zeta = FixedPhases::from_angles(&a);
            let cert = decompose_rho_n(3, 2, &zeta, &Config::default()).unwrap();
            let target = rho_phase_family(3, 2, &zeta).unwrap();
            assert!(mixture(&cert).max_abs_diff(target.matrix()).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn rho_n_capacity_error_names_count() {
        let cfg = Config { max_terms: 100, ..Config::default() };
        match decompose_rho_n(2, 3, &FixedPhases::ones(2), &cfg) {
            Err(Error::Capacity { required, cap, .. }) => {
                assert_eq!(required, "256");
                assert_eq!(cap, 100);
            }
            other => panic!("expected capacity error, got {other:?}"),
        }
        assert!(matches!(
            decompose_rho_n(9, 2, &FixedPhases::ones(9), &Config::default()),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn werner_at_threshold_groups() {
        let cert = decompose_werner(2, 2, &q(1, 3), &Config::default()).unwrap();
        assert_eq!(cert.term_count(), 18);
        let diag: ExactRational = cert.terms[..2].iter().map(|t| &t.weight).sum();
        let fam: ExactRational = cert.terms[2..].iter().map(|t| &t.weight).sum();
        assert_eq!(diag, q(1, 3));
        assert_eq!(fam, q(2, 3));
        assert_eq!(cert.weight_sum(), ExactRational::one());
    }

    #[test]
    fn werner_zero_is_basis_mixture() {
        let cert = decompose_werner(3, 2, &ExactRational::zero(), &Config::default()).unwrap();
        assert_eq!(cert.term_count(), 9);
        assert!(cert.terms.iter().all(|t| t.weight == q(1, 9)));
        let noise = ComplexMatrix::identity(9).scaled(1.0 / 9.0);
        assert!(mixture(&cert).max_abs_diff(&noise).unwrap() <= 1e-15);
    }

    #[test]
    fn werner_reconstruction() {
        for (d, n, s, count) in [(3, 2, q(1, 4), 3 + 64), (2, 3, q(1, 10), 2 + 256 + 8), (2, 2, q(1, 7), 2 + 16 + 4)] {
            let cert = decompose_werner(d, n, &s, &Config::default()).unwrap();
            assert_eq!(cert.term_count(), count);
            assert_eq!(cert.weight_sum(), ExactRational::one());
            cert.validate(DEFAULT_MAX_TERMS).unwrap();
            let w = werner(&WernerParams::new(d, n, s.to_f64()).unwrap()).unwrap();
            assert!(mixture(&cert).max_abs_diff(w.matrix()).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn werner_above_threshold_rejected() {
        match decompose_werner(2, 2, &q(1, 2), &Config::default()) {
            Err(Error::ThresholdExceeded { bound, .. }) => assert_eq!(bound, "1/3"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(decompose_werner(2, 2, &q(-1, 5), &Config::default()).is_err());
    }

    #[test]
    fn werner_term_cap() {
        let cfg = Config { max_terms: 17, ..Config::default() };
        assert!(matches!(decompose_werner(2, 2, &q(1, 3), &cfg), Err(Error::Capacity { .. })));
    }

    #[test]
    fn output_independent_of_execution_policy() {
        let seq = Config { exec: Exec::Sequential, ..Config::default() };
        let par = Config { exec: Exec::Parallel, ..Config::default() };
        let s = q(1, 20);
        assert_eq!(
            decompose_werner(3, 3, &s, &seq).unwrap(),
            decompose_werner(3, 3, &s, &par).unwrap()
        );
    }

    #[test]
    fn validate_catches_breaches() {
        let good = decompose_werner(2, 2, &q(1, 3), &Config::default()).unwrap();

        let mut bad = good.clone();
        bad.terms[3].locals[1][0] *= 0.9;
        assert!(matches!(bad.validate(DEFAULT_MAX_TERMS), Err(Error::Validation { invariant: "local norm", term: Some(3), .. })));

        let mut bad = good.clone();
        bad.terms[0].weight = &bad.terms[0].weight + &q(1, 1_000_000);
        assert!(matches!(bad.validate(DEFAULT_MAX_TERMS), Err(Error::Validation { invariant: "weight sum", .. })));

        let mut bad = good.clone();
        bad.terms[5].locals.pop();
        assert!(matches!(bad.validate(DEFAULT_MAX_TERMS), Err(Error::Validation { invariant: "shape", term: Some(5), .. })));

        assert!(good.validate(10).is_err());
    }
}
