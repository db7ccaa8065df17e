//! Certificate documents and the independent verifier.
//!
//! A document is UTF-8 JSON:
//!
//! ```text
//! {
//!   "format_version": "1",
//!   "d": 2,
//!   "n": 2,
//!   "target": {"family": "werner", "s": "1/3"},
//!   "term_count": 18,
//!   "terms": [
//!     {"weight": "1/6", "locals": [[[re, im], [re, im]], [[re, im], [re, im]]]},
//!     ...
//!   ]
//! }
//! ```
//!
//! Weights are exact rationals written as strings; amplitudes are `[re, im]`
//! pairs printed with 17 significant digits so that parsing and
//! re-serializing reproduces the document byte for byte. The document never
//! carries a density matrix; the verifier rebuilds the mixture itself.

use std::fmt;
use std::fmt::Write as _;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::decompose::{ProductTerm, SeparableCertificate, TargetDescriptor, DEFAULT_MAX_TERMS};
use crate::error::{Error, Result};
use crate::exec::{chunk_bounds, map_indexed, Exec};
use crate::rational::ExactRational;
use crate::tensor::{checked_dim, kron_vec, ComplexMatrix, DensityMatrix};

pub const FORMAT_VERSION: &str = "1";

/// Upper bound on the number of partial sums the verifier accumulates.
const MAX_CHUNKS: usize = 64;

fn number(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_pair(out: &mut String, z: &Complex64) {
    let _ = write!(out, "[{}, {}]", number(z.re), number(z.im));
}

fn write_vector(out: &mut String, v: &[Complex64]) {
    out.push('[');
    for (i, z) in v.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_pair(out, z);
    }
    out.push(']');
}

fn check_finite(cert: &SeparableCertificate) -> Result<()> {
    let bad = |z: &Complex64| !z.re.is_finite() || !z.im.is_finite();
    if let TargetDescriptor::PhaseFamily { zeta } = &cert.target {
        if zeta.iter().any(bad) {
            return Err(Error::Validation {
                invariant: "finite amplitudes",
                term: None,
                detail: "target phases are not finite".into(),
            });
        }
    }
    for (i, t) in cert.terms.iter().enumerate() {
        if t.locals.iter().flatten().any(bad) {
            return Err(Error::Validation {
                invariant: "finite amplitudes",
                term: Some(i),
                detail: "non-finite amplitude".into(),
            });
        }
    }
    Ok(())
}

/// Renders the certificate document.
pub fn serialize(cert: &SeparableCertificate) -> Result<String> {
    if cert.terms.is_empty() {
        return Err(Error::Validation {
            invariant: "nonempty",
            term: None,
            detail: "refusing to serialize a certificate with no terms".into(),
        });
    }
    check_finite(cert)?;

    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"format_version\": \"{FORMAT_VERSION}\",");
    let _ = writeln!(out, "  \"d\": {},", cert.d);
    let _ = writeln!(out, "  \"n\": {},", cert.n);
    match &cert.target {
        TargetDescriptor::Werner { s } => {
            let _ = writeln!(out, "  \"target\": {{\"family\": \"werner\", \"s\": \"{s}\"}},");
        }
        TargetDescriptor::PhaseFamily { zeta } => {
            out.push_str("  \"target\": {\"family\": \"phase_family\", \"zeta\": ");
            write_vector(&mut out, zeta);
            out.push_str("},\n");
        }
    }
    let _ = writeln!(out, "  \"term_count\": {},", cert.terms.len());
    out.push_str("  \"terms\": [\n");
    for (i, term) in cert.terms.iter().enumerate() {
        let _ = write!(out, "    {{\"weight\": \"{}\", \"locals\": [", term.weight);
        for (r, local) in term.locals.iter().enumerate() {
            if r > 0 {
                out.push_str(", ");
            }
            write_vector(&mut out, local);
        }
        out.push_str("]}");
        out.push_str(if i + 1 < cert.terms.len() { ",\n" } else { "\n" });
    }
    out.push_str("  ]\n}\n");
    Ok(out)
}

pub fn write_certificate<W: Write>(cert: &SeparableCertificate, mut writer: W) -> Result<()> {
    writer.write_all(serialize(cert)?.as_bytes())?;
    writer.flush()?;
    Ok(())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    format_version: String,
    d: usize,
    n: usize,
    target: RawTarget,
    term_count: usize,
    terms: Vec<RawTerm>,
}

#[derive(Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
enum RawTarget {
    Werner { s: String },
    PhaseFamily { zeta: Vec<[f64; 2]> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    weight: String,
    locals: Vec<Vec<[f64; 2]>>,
}

fn complexes(v: Vec<[f64; 2]>) -> Vec<Complex64> {
    v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()
}

/// Parses and validates a certificate document with the default term cap.
pub fn parse(doc: &[u8]) -> Result<SeparableCertificate> {
    parse_with_cap(doc, DEFAULT_MAX_TERMS)
}

pub fn parse_with_cap(doc: &[u8], max_terms: usize) -> Result<SeparableCertificate> {
    let raw: RawDocument = serde_json::from_slice(doc).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    if raw.format_version != FORMAT_VERSION {
        return Err(Error::Validation {
            invariant: "format version",
            term: None,
            detail: format!("unsupported format_version {:?}", raw.format_version),
        });
    }
    if raw.term_count != raw.terms.len() {
        return Err(Error::Validation {
            invariant: "term count",
            term: None,
            detail: format!("header says {} terms, document has {}", raw.term_count, raw.terms.len()),
        });
    }
    let target = match raw.target {
        RawTarget::Werner { s } => TargetDescriptor::Werner {
            s: s.parse().map_err(|_| Error::Validation {
                invariant: "target",
                term: None,
                detail: format!("mixing weight {s:?} is not a rational number"),
            })?,
        },
        RawTarget::PhaseFamily { zeta } => TargetDescriptor::PhaseFamily { zeta: complexes(zeta) },
    };
    let terms = raw
        .terms
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            let weight: ExactRational = t.weight.parse().map_err(|_| Error::Validation {
                invariant: "weight",
                term: Some(i),
                detail: format!("{:?} is not a rational number", t.weight),
            })?;
            Ok(ProductTerm {
                weight,
                locals: t.locals.into_iter().map(complexes).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let cert = SeparableCertificate {
        d: raw.d,
        n: raw.n,
        target,
        terms,
    };
    cert.validate(max_terms)?;
    Ok(cert)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyTolerances {
    pub weights: f64,
    pub norms: f64,
    pub residual: f64,
}

impl Default for VerifyTolerances {
    fn default() -> Self {
        Self {
            weights: 1e-12,
            norms: 1e-12,
            residual: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub weights_sum_err: f64,
    pub worst_local_norm_err: f64,
    pub reconstruction_residual_maxabs: f64,
    pub reconstruction_residual_frobenius: f64,
    pub term_count: usize,
    /// Terms with a negative weight; any such term fails the certificate.
    pub negative_weights: usize,
    pub tolerances: VerifyTolerances,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "terms:                      {}", self.term_count)?;
        writeln!(f, "weight sum error:           {:.3e} (tol {:.0e})", self.weights_sum_err, self.tolerances.weights)?;
        writeln!(f, "worst local norm error:     {:.3e} (tol {:.0e})", self.worst_local_norm_err, self.tolerances.norms)?;
        writeln!(f, "residual (max abs):         {:.3e} (tol {:.0e})", self.reconstruction_residual_maxabs, self.tolerances.residual)?;
        writeln!(f, "residual (Frobenius):       {:.3e}", self.reconstruction_residual_frobenius)?;
        if self.negative_weights > 0 {
            writeln!(f, "negative weights:           {}", self.negative_weights)?;
        }
        write!(f, "verdict:                    {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Rebuilds `sum_a p(a) ⊗_r |psi_r(a)><psi_r(a)|` and compares it with
/// `target`.
pub fn verify(cert: &SeparableCertificate, target: &DensityMatrix, tol: &VerifyTolerances) -> Result<VerificationReport> {
    verify_with(cert, target, tol, Exec::default())
}

pub fn verify_with(
    cert: &SeparableCertificate,
    target: &DensityMatrix,
    tol: &VerifyTolerances,
    exec: Exec,
) -> Result<VerificationReport> {
    let dim = checked_dim(cert.d, cert.n);
    if dim != Some(target.dim()) {
        return Err(Error::InvalidParameter(format!(
            "certificate for d = {}, n = {} does not match a {}-dimensional target",
            cert.d,
            cert.n,
            target.dim()
        )));
    }
    let dim = target.dim();
    for (i, t) in cert.terms.iter().enumerate() {
        if t.locals.len() != cert.n || t.locals.iter().any(|l| l.len() != cert.d) {
            return Err(Error::InvalidParameter(format!("term {i} does not have n = {} local states of length d = {}", cert.n, cert.d)));
        }
    }

    let weights_sum_err = (cert.weight_sum() - ExactRational::one()).abs().to_f64();
    let negative_weights = cert.terms.iter().filter(|t| t.weight.is_negative()).count();
    let worst_local_norm_err = cert
        .terms
        .iter()
        .flat_map(|t| &t.locals)
        .map(|l| (l.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() - 1.0).abs())
        .fold(0.0, f64::max);

    // Fixed chunking keeps the summation order independent of thread count.
    let chunks = chunk_bounds(cert.terms.len(), MAX_CHUNKS);
    let partials = map_indexed(exec, chunks.len(), |c| {
        let (start, end) = chunks[c];
        let mut acc = ComplexMatrix::zeros(dim, dim);
        let data = acc.as_mut_slice();
        for term in &cert.terms[start..end] {
            let w = term.weight.to_f64();
            let v = term.locals[1..].iter().fold(term.locals[0].clone(), |a, l| kron_vec(&a, l));
            for (i, vi) in v.iter().enumerate() {
                if vi.norm_sqr() == 0.0 {
                    continue;
                }
                let row = &mut data[i * dim..(i + 1) * dim];
                let wvi = vi * w;
                for (cell, vj) in row.iter_mut().zip(&v) {
                    *cell += wvi * vj.conj();
                }
            }
        }
        acc
    });
    let mut mixture = ComplexMatrix::zeros(dim, dim);
    for p in &partials {
        mixture.add_scaled(1.0, p)?;
    }

    let maxabs = mixture.max_abs_diff(target.matrix())?;
    let frob = mixture.frobenius_diff(target.matrix())?;
    let pass = weights_sum_err <= tol.weights
        && worst_local_norm_err <= tol.norms
        && maxabs <= tol.residual
        && negative_weights == 0;
    Ok(VerificationReport {
        weights_sum_err,
        worst_local_norm_err,
        reconstruction_residual_maxabs: maxabs,
        reconstruction_residual_frobenius: frob,
        term_count: cert.terms.len(),
        negative_weights,
        tolerances: *tol,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
    })
}
