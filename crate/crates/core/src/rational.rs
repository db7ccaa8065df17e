//! Exact rationals for the threshold, mixing weights and CLI input.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Reduced fraction with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, Error> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        Ok(Self(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    /// Exact value of a finite double.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Self)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Accepts `p/q`, integers and plain decimals (`0.25`, `-1.5e-3`), all
/// converted exactly.
impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let text = text.trim();
        let bad = || Error::InvalidParameter(format!("cannot parse {text:?} as a rational number"));
        if let Some((p, q)) = text.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            return Self::new(p, q).map_err(|_| bad());
        }

        let (mantissa, exponent) = match text.find(['e', 'E']) {
            Some(pos) => {
                let e: i64 = text[pos + 1..].parse().map_err(|_| bad())?;
                (&text[..pos], e)
            }
            None => (text, 0),
        };
        let (negative, unsigned) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = unsigned.split_once('.').unwrap_or((unsigned, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        if exponent.unsigned_abs() > 4096 {
            return Err(bad());
        }
        let digits: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
        let scale = exponent - frac_part.len() as i64;
        let ten = BigInt::from(10);
        let mut value = BigRational::from_integer(digits);
        if scale >= 0 {
            value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
        } else {
            value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
        }
        if negative {
            value = -value;
        }
        Ok(Self(value))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }

        impl<'a> $trait<&'a ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational(self.0.$method(&rhs.0))
            }
        }

        impl<'a> $trait<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl std::iter::Sum for ExactRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<'a> std::iter::Sum<&'a ExactRational> for ExactRational {
    fn sum<I: Iterator<Item = &'a ExactRational>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> ExactRational {
        ExactRational::new(p, r).unwrap()
    }

    #[test]
    fn reduces_and_prints() {
        assert_eq!(q(2, 6).to_string(), "1/3");
        assert_eq!(q(-4, -8).to_string(), "1/2");
        assert_eq!(q(3, -9).to_string(), "-1/3");
        assert_eq!(q(6, 3).to_string(), "2");
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!("1/3".parse::<ExactRational>().unwrap(), q(1, 3));
        assert_eq!("0.5".parse::<ExactRational>().unwrap(), q(1, 2));
        assert_eq!(".25".parse::<ExactRational>().unwrap(), q(1, 4));
        assert_eq!("-1.5e-3".parse::<ExactRational>().unwrap(), q(-3, 2000));
        assert_eq!("2E1".parse::<ExactRational>().unwrap(), q(20, 1));
        assert_eq!("0.3433333333333333".parse::<ExactRational>().unwrap(), q(3433333333333333, 10_000_000_000_000_000));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "1.2.3", "--1", "1e", ".", "0x10"] {
            assert!(bad.parse::<ExactRational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn exact_float_conversion() {
        let x = ExactRational::from_f64(0.1).unwrap();
        assert_ne!(x, q(1, 10));
        assert_eq!(x.to_f64(), 0.1);
    }
}
