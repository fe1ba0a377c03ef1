//! Exact coefficients: arbitrary-precision rationals or the field with two
//! elements.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field all coefficients live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "rational")]
    Rational,
    #[serde(rename = "mod2")]
    ModTwo,
}

impl Field {
    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::zero()),
            Field::ModTwo => Scalar::F2(false),
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::one()),
            Field::ModTwo => Scalar::F2(true),
        }
    }

    pub fn from_int(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::ModTwo => Scalar::F2(n.rem_euclid(2) == 1),
        }
    }

    /// `(-1)^exponent` in this field.
    pub fn sign(self, exponent: i64) -> Scalar {
        if exponent.rem_euclid(2) == 0 {
            self.one()
        } else {
            -self.one()
        }
    }

    /// Parses `"p/q"`, `"p"` or `"-p/q"`. Over the two-element field the
    /// denominator must be odd.
    pub fn parse(self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::Parse(format!("invalid coefficient {text:?}"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(text).map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        match self {
            Field::Rational => Ok(Scalar::Q(BigRational::new(num, den))),
            Field::ModTwo => {
                if den.is_even() {
                    return Err(Error::Parse(format!(
                        "coefficient {text:?} has an even denominator and does not reduce mod 2"
                    )));
                }
                Ok(Scalar::F2(num.is_odd()))
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Field::Rational => "rational",
            Field::ModTwo => "mod2",
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(Field::Rational),
            "mod2" => Ok(Field::ModTwo),
            other => Err(Error::Parse(format!("unknown field {other:?} (expected rational or mod2)"))),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An exact field element.
///
/// Arithmetic between elements of different fields is a logic error and
/// panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    F2(bool),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::F2(_) => Field::ModTwo,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::F2(b) => !*b,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::F2(b) => *b,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Q(q) if q.is_negative())
    }

    /// Reduces a rational with odd denominator to the two-element field.
    pub fn to_mod_two(&self) -> Result<Scalar> {
        match self {
            Scalar::F2(_) => Ok(self.clone()),
            Scalar::Q(q) => {
                if q.denom().is_even() {
                    Err(Error::Parse(format!("{q} does not reduce mod 2")))
                } else {
                    Ok(Scalar::F2(q.numer().is_odd()))
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::F2(b) => write!(f, "{}", u8::from(*b)),
        }
    }
}

fn mismatch() -> ! {
    panic!("arithmetic between scalars of different fields")
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::F2(a), Scalar::F2(b)) => Scalar::F2(a ^ b),
            _ => mismatch(),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => *a += b,
            (Scalar::F2(a), Scalar::F2(b)) => *a ^= *b,
            _ => mismatch(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::F2(a), Scalar::F2(b)) => Scalar::F2(a ^ b),
            _ => mismatch(),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::F2(a), Scalar::F2(b)) => Scalar::F2(*a && *b),
            _ => mismatch(),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            f2 => f2,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_two_one_plus_one_is_zero() {
        let one = Field::ModTwo.one();
        assert!((&one + &one).is_zero());
        assert_eq!(-one.clone(), one);
    }

    #[test]
    fn rational_parse_and_display() {
        let q = Field::Rational.parse("-6/4").unwrap();
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(Field::Rational.parse(" 7 ").unwrap().to_string(), "7");
        assert!(Field::Rational.parse("1/0").is_err());
        assert!(Field::Rational.parse("x").is_err());
    }

    #[test]
    fn mod_two_parse_rejects_even_denominator() {
        assert_eq!(Field::ModTwo.parse("3/5").unwrap(), Scalar::F2(true));
        assert_eq!(Field::ModTwo.parse("-4").unwrap(), Scalar::F2(false));
        assert!(Field::ModTwo.parse("1/2").is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(Field::Rational.sign(3), Field::Rational.from_int(-1));
        assert_eq!(Field::Rational.sign(-3), Field::Rational.from_int(-1));
        assert_eq!(Field::Rational.sign(-2), Field::Rational.one());
        assert_eq!(Field::ModTwo.sign(1), Field::ModTwo.one());
    }

    #[test]
    #[should_panic]
    fn mixed_fields_panic() {
        let _ = Field::Rational.one() + Field::ModTwo.one();
    }
}
