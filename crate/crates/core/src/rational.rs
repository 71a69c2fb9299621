//! Exact rationals and Gaussian rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::Error;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let t = s.trim();
    Rational::from_str(t).map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
}

/// Integer value of an integral rational.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// Exact square root of a nonnegative rational, if it is a square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = integer_sqrt(r.numer())?;
    let d = integer_sqrt(r.denom())?;
    Some(Rational::new(n, d))
}

fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    let s = n.sqrt();
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn serialize_rationals<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<String> = rs.iter().map(|r| r.to_string()).collect();
    v.serialize(s)
}

pub fn serialize_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// Element of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gq {
    pub re: Rational,
    pub im: Rational,
}

impl Gq {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gq { re, im }
    }

    pub fn zero() -> Self {
        Gq::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Gq::from_int(1)
    }

    pub fn i() -> Self {
        Gq::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Gq::new(rat(n), Rational::zero())
    }

    pub fn real(r: Rational) -> Self {
        Gq::new(r, Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gq::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Gq::new(&self.re / &n, -&self.im / &n))
    }

    /// Square root in Q(i), when one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Gq::zero());
        }
        if self.im.is_zero() {
            if let Some(s) = rational_sqrt(&self.re) {
                return Some(Gq::real(s));
            }
            return rational_sqrt(&-self.re.clone()).map(|s| Gq::new(Rational::zero(), s));
        }
        // (x + iy)^2 = a + ib  =>  x^2 = (a + |z|) / 2
        let modulus = rational_sqrt(&self.norm())?;
        let two = rat(2);
        let x = rational_sqrt(&((&self.re + &modulus) / &two))?;
        if x.is_zero() {
            return None;
        }
        let y = &self.im / (&two * &x);
        let root = Gq::new(x, y);
        if &root * &root == *self {
            Some(root)
        } else {
            None
        }
    }

    pub fn is_integral(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    /// Common denominator of both parts.
    pub fn denominator(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }
}

impl fmt::Display for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if self.im == -Rational::one() {
            "-i".to_string()
        } else {
            format!("{}i", self.im)
        };
        if self.re.is_zero() {
            write!(f, "{im}")
        } else if self.im.is_positive() {
            write!(f, "{}+{im}", self.re)
        } else {
            write!(f, "{}{im}", self.re)
        }
    }
}

impl FromStr for Gq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Gq::real(parse_rational(&t)?));
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(k, c)| (c == '+' || c == '-') && !body[..k].ends_with('/'))
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (parse_rational(&body[..k])?, &body[k..]),
            None => (Rational::zero(), body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other)?,
        };
        Ok(Gq::new(re, im))
    }
}

impl Add for &Gq {
    type Output = Gq;
    fn add(self, o: &Gq) -> Gq {
        Gq::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &Gq {
    type Output = Gq;
    fn sub(self, o: &Gq) -> Gq {
        Gq::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &Gq {
    type Output = Gq;
    fn mul(self, o: &Gq) -> Gq {
        Gq::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Div for &Gq {
    type Output = Gq;
    /// Panics on division by zero, like the rational division it wraps.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Gq) -> Gq {
        self * &o.inv().expect("division by zero in Q(i)")
    }
}

impl Neg for &Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Gq {
            type Output = Gq;
            fn $m(self, o: Gq) -> Gq {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        -&self
    }
}
