//! Necessary conditions for full separability: the exact threshold, the
//! Cauchy-Schwarz element inequality and the partial-transpose spectrum.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exec::{map_indexed, Exec};
use crate::rational::ExactRational;
use crate::tensor::{checked_dim, eig_min_hermitian, partial_transpose, DensityMatrix, MultiIndex};

fn check_dn(d: usize, n: usize) -> Result<()> {
    if d < 2 || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "need d >= 2 and n >= 2, got d = {d}, n = {n}"
        )));
    }
    Ok(())
}

/// `1 / (1 + d^(n-1))`, exactly.
pub fn threshold(d: usize, n: usize) -> Result<ExactRational> {
    check_dn(d, n)?;
    let denom = BigInt::from(1) + num_traits::pow(BigInt::from(d), n - 1);
    ExactRational::new(1, denom)
}

/// Index strings `j, k` differing in every slot, and `u, v` taking the same
/// pair of values slot by slot in some order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexQuadruple {
    j: MultiIndex,
    k: MultiIndex,
    u: MultiIndex,
    v: MultiIndex,
}

impl IndexQuadruple {
    pub fn new(j: MultiIndex, k: MultiIndex, u: MultiIndex, v: MultiIndex) -> Result<Self> {
        let (d, n) = (j.d(), j.n());
        if [&k, &u, &v].iter().any(|m| m.d() != d || m.n() != n) {
            return Err(Error::InvalidParameter("quadruple indices have mismatched shapes".into()));
        }
        for r in 0..n {
            let (jr, kr, ur, vr) = (j.digits()[r], k.digits()[r], u.digits()[r], v.digits()[r]);
            if jr == kr {
                return Err(Error::InvalidParameter(format!(
                    "j and k agree at slot {r}; they must differ in every slot"
                )));
            }
            let swapped = (ur == jr && vr == kr) || (ur == kr && vr == jr);
            if !swapped {
                return Err(Error::InvalidParameter(format!(
                    "slot {r}: {{u, v}} = {{{ur}, {vr}}} is not {{j, k}} = {{{jr}, {kr}}}"
                )));
            }
        }
        Ok(Self { j, k, u, v })
    }

    fn from_digits(d: usize, j: Vec<usize>, k: Vec<usize>, u: Vec<usize>, v: Vec<usize>) -> Self {
        let mk = |x| MultiIndex::new(x, d).expect("digits below d");
        Self::new(mk(j), mk(k), mk(u), mk(v)).expect("valid by construction")
    }

    pub fn j(&self) -> &MultiIndex {
        &self.j
    }

    pub fn k(&self) -> &MultiIndex {
        &self.k
    }

    pub fn u(&self) -> &MultiIndex {
        &self.u
    }

    pub fn v(&self) -> &MultiIndex {
        &self.v
    }

    pub fn d(&self) -> usize {
        self.j.d()
    }

    pub fn n(&self) -> usize {
        self.j.n()
    }

    pub fn swap_jk(&self) -> Self {
        Self { j: self.k.clone(), k: self.j.clone(), ..self.clone() }
    }

    pub fn swap_uv(&self) -> Self {
        Self { u: self.v.clone(), v: self.u.clone(), ..self.clone() }
    }
}

impl fmt::Display for IndexQuadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "j={} k={} u={} v={}", self.j, self.k, self.u, self.v)
    }
}

/// `j = (0,1,...,1)`, `k = (1,0,...,0)`, `u = (0,...,0)`, `v = (1,...,1)`:
/// the quadruple whose margin vanishes exactly at the threshold.
pub fn witness_quadruple(d: usize, n: usize) -> Result<IndexQuadruple> {
    check_dn(d, n)?;
    let mut j = vec![1; n];
    j[0] = 0;
    let mut k = vec![0; n];
    k[0] = 1;
    Ok(IndexQuadruple::from_digits(d, j, k, vec![0; n], vec![1; n]))
}

/// `sqrt(rho_jj rho_kk) - |rho_uv|`. A negative value proves entanglement.
pub fn cauchy_schwarz_margin(rho: &DensityMatrix, q: &IndexQuadruple) -> Result<f64> {
    let dim = checked_dim(q.d(), q.n());
    if dim != Some(rho.dim()) {
        return Err(Error::InvalidParameter(format!(
            "quadruple over d = {}, n = {} does not fit a {}-dimensional state",
            q.d(),
            q.n(),
            rho.dim()
        )));
    }
    let (j, k) = (q.j.encode(), q.k.encode());
    let (u, v) = (q.u.encode(), q.v.encode());
    let jj = rho.entry(j, j).re.max(0.0);
    let kk = rho.entry(k, k).re.max(0.0);
    Ok((jj * kk).sqrt() - rho.entry(u, v).norm())
}

/// Which quadruples a scan visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanMode {
    /// `j, k` over two symbols `a < b` with every `u, v` swap pattern; enough
    /// for Werner states by permutation symmetry.
    #[default]
    Symmetric,
    /// Every `j`, every `k` differing from `j` in each slot, every swap
    /// pattern. Exponential; intended for validating the reduction.
    Full,
}

/// Quadruples in canonical enumeration order.
pub fn quadruples(d: usize, n: usize, mode: ScanMode) -> Result<Vec<IndexQuadruple>> {
    check_dn(d, n)?;
    let dim = checked_dim(d, n).ok_or_else(|| Error::InvalidParameter("d^n overflows".into()))?;
    let swaps = 1usize << n;
    let split = |j: &[usize], k: &[usize], mask: usize| -> (Vec<usize>, Vec<usize>) {
        (0..n)
            .map(|r| if mask >> r & 1 == 1 { (j[r], k[r]) } else { (k[r], j[r]) })
            .unzip()
    };
    let mut out = Vec::new();
    match mode {
        ScanMode::Symmetric => {
            for a in 0..d {
                for b in a + 1..d {
                    for jmask in 0..swaps {
                        let (j, k) = split(&vec![b; n], &vec![a; n], jmask);
                        for umask in 0..swaps {
                            let (u, v) = split(&j, &k, umask);
                            out.push(IndexQuadruple::from_digits(d, j.clone(), k.clone(), u, v));
                        }
                    }
                }
            }
        }
        ScanMode::Full => {
            for jx in 0..dim {
                let j = MultiIndex::decode(jx, d, n)?;
                for kx in 0..dim {
                    let k = MultiIndex::decode(kx, d, n)?;
                    if j.digits().iter().zip(k.digits()).any(|(a, b)| a == b) {
                        continue;
                    }
                    for umask in 0..swaps {
                        let (u, v) = split(j.digits(), k.digits(), umask);
                        out.push(IndexQuadruple::from_digits(
                            d,
                            j.digits().to_vec(),
                            k.digits().to_vec(),
                            u,
                            v,
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Smallest margin over a scan, with the first quadruple attaining it.
pub fn worst_cauchy_schwarz(
    rho: &DensityMatrix,
    d: usize,
    n: usize,
    mode: ScanMode,
) -> Result<(f64, IndexQuadruple)> {
    worst_cauchy_schwarz_with(rho, d, n, mode, Exec::default())
}

pub fn worst_cauchy_schwarz_with(
    rho: &DensityMatrix,
    d: usize,
    n: usize,
    mode: ScanMode,
    exec: Exec,
) -> Result<(f64, IndexQuadruple)> {
    let quads = quadruples(d, n, mode)?;
    let margins = map_indexed(exec, quads.len(), |i| cauchy_schwarz_margin(rho, &quads[i]));
    let mut best: Option<(f64, usize)> = None;
    for (i, m) in margins.into_iter().enumerate() {
        let m = m?;
        if best.is_none_or(|(b, _)| m < b) {
            best = Some((m, i));
        }
    }
    let (m, i) = best.expect("scan is never empty for d, n >= 2");
    Ok((m, quads[i].clone()))
}

fn is_repeated(m: &MultiIndex) -> bool {
    m.digits().windows(2).all(|w| w[0] == w[1])
}

/// Largest `s` at which the margin of `W(s)` at `q` stays nonnegative.
///
/// `W(s)` entries are affine in `s`, so the margin is nonnegative exactly
/// where the quadratic `rho_jj rho_kk - |rho_uv|^2` is.
fn max_s_for_quadruple(q: &IndexQuadruple) -> f64 {
    let d = q.d() as f64;
    let dim = (q.d() as f64).powi(q.n() as i32);
    let diag = |m: &MultiIndex| -> (f64, f64) {
        if is_repeated(m) {
            (1.0 / dim, 1.0 / d - 1.0 / dim)
        } else {
            (1.0 / dim, -1.0 / dim)
        }
    };
    let (a0, a1) = diag(&q.j);
    let (b0, b1) = diag(&q.k);
    let c1 = if is_repeated(&q.u) && is_repeated(&q.v) { 1.0 / d } else { 0.0 };

    let qc = a0 * b0;
    let qb = a0 * b1 + a1 * b0;
    let qa = a1 * b1 - c1 * c1;
    let roots: Vec<f64> = if qa == 0.0 {
        if qb == 0.0 { vec![] } else { vec![-qc / qb] }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            vec![]
        } else {
            let t = -0.5 * (qb + qb.signum() * disc.sqrt());
            let mut r = vec![t / qa];
            if t != 0.0 {
                r.push(qc / t);
            }
            r
        }
    };
    roots
        .into_iter()
        .filter(|&r| r > 0.0 && r <= 1.0)
        .fold(1.0, f64::min)
}

/// Largest `s` for which every Cauchy-Schwarz margin of `W(s)` in the scan is
/// nonnegative.
pub fn werner_necessary_max_s(d: usize, n: usize, mode: ScanMode) -> Result<f64> {
    let quads = quadruples(d, n, mode)?;
    let per = map_indexed(Exec::default(), quads.len(), |i| max_s_for_quadruple(&quads[i]));
    Ok(per.into_iter().fold(1.0, f64::min))
}

/// Minimum eigenvalue of the partial transpose over `cut`.
pub fn ppt_min_eig(rho: &DensityMatrix, cut: &[usize], d: usize, n: usize) -> Result<f64> {
    let mut set = cut.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.is_empty() || set.len() >= n || set.iter().any(|&r| r >= n) {
        return Err(Error::InvalidParameter(format!(
            "cut {cut:?} must be a nonempty proper subset of the {n} qudit positions"
        )));
    }
    eig_min_hermitian(&partial_transpose(rho, &set, d, n)?)
}
