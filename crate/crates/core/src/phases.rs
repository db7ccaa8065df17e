//! The 4^d ensemble of phase vectors with entries in {+1, -1, +i, -i}, kept
//! in exact Gaussian-integer arithmetic, and its moment identities.

use std::fmt;
use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::states::FixedPhases;

/// Largest local dimension for which the ensemble (4^d vectors) is enumerated.
pub const MAX_PHASE_DIM: usize = 8;

/// Gaussian integer `re + im*i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: Self = Self::new(0, 0);
    pub const ONE: Self = Self::new(1, 0);

    pub const fn new(re: i64, im: i64) -> Self {
        Self { re, im }
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn norm_sqr(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }
}

impl Add for GaussInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Mul for GaussInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl std::iter::Sum for GaussInt {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, im) => write!(f, "{im}i"),
            (re, im) if im < 0 => write!(f, "{re}-{}i", -im),
            (re, im) => write!(f, "{re}+{im}i"),
        }
    }
}

/// One of the four units, in canonical symbol order `+1, -1, +i, -i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unit {
    PlusOne,
    MinusOne,
    PlusI,
    MinusI,
}

impl Unit {
    pub const ALL: [Unit; 4] = [Unit::PlusOne, Unit::MinusOne, Unit::PlusI, Unit::MinusI];

    pub fn from_symbol(symbol: usize) -> Self {
        Self::ALL[symbol & 3]
    }

    pub fn value(self) -> GaussInt {
        match self {
            Unit::PlusOne => GaussInt::new(1, 0),
            Unit::MinusOne => GaussInt::new(-1, 0),
            Unit::PlusI => GaussInt::new(0, 1),
            Unit::MinusI => GaussInt::new(0, -1),
        }
    }
}

/// `w = (zeta_0 z_0, ..., zeta_{d-1} z_{d-1})`; `zeta` defaults to all ones.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseVector {
    units: Vec<Unit>,
    zeta: Option<FixedPhases>,
}

impl PhaseVector {
    pub fn new(units: Vec<Unit>) -> Self {
        Self { units, zeta: None }
    }

    /// The `index`-th vector of the canonical enumeration for length `d`.
    pub fn from_index(index: usize, d: usize) -> Self {
        let units = (0..d)
            .map(|r| Unit::from_symbol(index >> (2 * (d - 1 - r))))
            .collect();
        Self::new(units)
    }

    pub fn with_zeta(mut self, zeta: FixedPhases) -> Result<Self> {
        if zeta.len() != self.units.len() {
            return Err(Error::InvalidParameter(format!(
                "{} fixed phases for a length-{} phase vector",
                zeta.len(),
                self.units.len()
            )));
        }
        self.zeta = Some(zeta);
        Ok(self)
    }

    pub fn d(&self) -> usize {
        self.units.len()
    }

    pub fn units(&self) -> &[Unit] {
        &self.units
    }

    pub fn zeta(&self) -> Option<&FixedPhases> {
        self.zeta.as_ref()
    }

    /// Base entries `z_r` as exact Gaussian integers.
    pub fn exact(&self) -> impl Iterator<Item = GaussInt> + '_ {
        self.units.iter().map(|u| u.value())
    }

    /// Entries `zeta_r z_r` as floating-point complex numbers.
    pub fn amplitudes(&self) -> Vec<Complex64> {
        match &self.zeta {
            None => self.exact().map(GaussInt::to_complex).collect(),
            Some(zeta) => self
                .exact()
                .zip(zeta.as_slice())
                .map(|(z, p)| z.to_complex() * p)
                .collect(),
        }
    }
}

fn check_phase_dim(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidParameter("phase vectors need d >= 1".into()));
    }
    if d > MAX_PHASE_DIM {
        return Err(Error::Capacity {
            what: "phase-vector ensemble",
            required: format!("4^{d} vectors"),
            cap: 1 << (2 * MAX_PHASE_DIM),
        });
    }
    Ok(())
}

/// All `4^d` phase vectors in lexicographic order over the symbol order.
pub fn enumerate_phase_vectors(d: usize) -> Result<Vec<PhaseVector>> {
    check_phase_dim(d)?;
    Ok((0..1usize << (2 * d)).map(|m| PhaseVector::from_index(m, d)).collect())
}

/// Exact first, second and absolute-square sums over the ensemble, per slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSums {
    pub d: usize,
    pub count: i64,
    pub first: Vec<GaussInt>,
    pub second: Vec<GaussInt>,
    pub abs_square: Vec<i64>,
    /// `cross[r][s] = sum_m conj(z_r) z_s`.
    pub cross: Vec<Vec<GaussInt>>,
}

impl MomentSums {
    /// First and second moments vanish, `|z_r|^2` sums to `4^d` and every
    /// off-diagonal cross sum vanishes.
    pub fn identities_hold(&self) -> bool {
        self.first.iter().all(|&z| z == GaussInt::ZERO)
            && self.second.iter().all(|&z| z == GaussInt::ZERO)
            && self.abs_square.iter().all(|&a| a == self.count)
            && self.cross.iter().enumerate().all(|(r, row)| {
                row.iter()
                    .enumerate()
                    .all(|(s, &z)| r == s || z == GaussInt::ZERO)
            })
    }
}

pub fn moment_sums(d: usize) -> Result<MomentSums> {
    let vectors = enumerate_phase_vectors(d)?;
    let mut first = vec![GaussInt::ZERO; d];
    let mut second = vec![GaussInt::ZERO; d];
    let mut abs_square = vec![0i64; d];
    let mut cross = vec![vec![GaussInt::ZERO; d]; d];
    for v in &vectors {
        let z: Vec<GaussInt> = v.exact().collect();
        for r in 0..d {
            first[r] = first[r] + z[r];
            second[r] = second[r] + z[r] * z[r];
            abs_square[r] += z[r].norm_sqr();
            for s in 0..d {
                cross[r][s] = cross[r][s] + z[r].conj() * z[s];
            }
        }
    }
    Ok(MomentSums {
        d,
        count: vectors.len() as i64,
        first,
        second,
        abs_square,
        cross,
    })
}

/// Exact complex rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussRational {
    pub re: ExactRational,
    pub im: ExactRational,
}

impl GaussRational {
    pub fn from_integer(v: i64) -> Self {
        Self {
            re: ExactRational::from_integer(v),
            im: ExactRational::zero(),
        }
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + ({})i", self.re, self.im)
        }
    }
}

/// `4^{-d} sum_m z_j conj(z_k) conj(z_r) z_s` for `j != k`, `r != s`.
pub fn fourth_moment(d: usize, j: usize, k: usize, r: usize, s: usize) -> Result<GaussRational> {
    check_phase_dim(d)?;
    if [j, k, r, s].iter().any(|&x| x >= d) {
        return Err(Error::InvalidParameter(format!(
            "slot indices ({j},{k},{r},{s}) must lie in [0, {d})"
        )));
    }
    if j == k || r == s {
        return Err(Error::InvalidParameter(format!(
            "fourth moment requires j != k and r != s, got ({j},{k},{r},{s})"
        )));
    }
    let count = 1i64 << (2 * d);
    let sum: GaussInt = (0..count as usize)
        .map(|m| {
            let v = PhaseVector::from_index(m, d);
            let z = v.units();
            z[j].value() * z[k].value().conj() * z[r].value().conj() * z[s].value()
        })
        .sum();
    Ok(GaussRational {
        re: ExactRational::new(sum.re, count)?,
        im: ExactRational::new(sum.im, count)?,
    })
}
