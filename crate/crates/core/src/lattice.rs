//! Divisor classes on P2 and P1xP1.
//!
//! Pic(P2) = Z with generator a line, Pic(P1xP1) = Z^2 with (1,0) the class of
//! a horizontal fiber {x = const} and (0,1) a vertical fiber {w = const}.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseSurface {
    P2,
    P1xP1,
}

impl BaseSurface {
    pub fn picard_rank(self) -> usize {
        match self {
            BaseSurface::P2 => 1,
            BaseSurface::P1xP1 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BaseSurface::P2 => "P2",
            BaseSurface::P1xP1 => "P1xP1",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "P2" => Ok(BaseSurface::P2),
            "P1xP1" => Ok(BaseSurface::P1xP1),
            other => Err(Error::Parse(format!("unknown base surface {other:?}, expected \"P2\" or \"P1xP1\""))),
        }
    }
}

impl fmt::Display for BaseSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivClass {
    pub coeffs: Vec<Rational>,
}

impl DivClass {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        DivClass { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        DivClass::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero(base: BaseSurface) -> Self {
        DivClass::new(vec![Rational::zero(); base.picard_rank()])
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        DivClass::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn check_rank(&self, base: BaseSurface) -> Result<()> {
        if self.rank() == base.picard_rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch { expected: base.picard_rank(), got: self.rank() })
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        assert_eq!(self.rank(), other.rank(), "divisor classes of different rank");
        DivClass::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect())
    }
}

impl Add for &DivClass {
    type Output = DivClass;
    fn add(self, o: &DivClass) -> DivClass {
        self.zip(o, |a, b| a + b)
    }
}

impl Sub for &DivClass {
    type Output = DivClass;
    fn sub(self, o: &DivClass) -> DivClass {
        self.zip(o, |a, b| a - b)
    }
}

impl Neg for &DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        DivClass::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for DivClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

pub fn intersect(base: BaseSurface, c1: &DivClass, c2: &DivClass) -> Result<Rational> {
    c1.check_rank(base)?;
    c2.check_rank(base)?;
    let k = &c1.coeffs;
    let l = &c2.coeffs;
    Ok(match base {
        BaseSurface::P2 => &k[0] * &l[0],
        BaseSurface::P1xP1 => &k[0] * &l[1] + &k[1] * &l[0],
    })
}

/// Ampleness of a Q-divisor; on these bases a class is ample iff every
/// coefficient is positive.
pub fn is_q_ample(base: BaseSurface, c: &DivClass) -> bool {
    c.rank() == base.picard_rank() && c.coeffs.iter().all(|x| x.is_positive())
}

pub fn canonical_class(base: BaseSurface) -> DivClass {
    match base {
        BaseSurface::P2 => DivClass::from_ints(&[-3]),
        BaseSurface::P1xP1 => DivClass::from_ints(&[-2, -2]),
    }
}

pub fn riemann_roch_chi(base: BaseSurface, c: &DivClass) -> Result<Rational> {
    c.check_rank(base)?;
    if !c.is_integral() {
        return Err(Error::Domain(format!("Euler characteristic of non-integral class {c}")));
    }
    let one = Rational::one();
    Ok(match base {
        BaseSurface::P2 => {
            let d = &c.coeffs[0];
            (d + &one) * (d + rat(2)) / rat(2)
        }
        BaseSurface::P1xP1 => (&c.coeffs[0] + &one) * (&c.coeffs[1] + &one),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn pp(a: i64, b: i64) -> DivClass {
        DivClass::from_ints(&[a, b])
    }

    #[test]
    fn pairing_examples() {
        let b = BaseSurface::P1xP1;
        assert_eq!(intersect(b, &pp(1, 1), &pp(1, 1)).unwrap(), rat(2));
        assert_eq!(intersect(b, &pp(3, 3), &pp(-2, -2)).unwrap(), rat(-12));
        let five = DivClass::from_ints(&[5]);
        assert_eq!(intersect(BaseSurface::P2, &five, &five).unwrap(), rat(25));
        assert_eq!(intersect(b, &canonical_class(b), &pp(1, 1)).unwrap(), rat(-4));
    }

    #[test]
    fn rank_mismatch_is_error() {
        let r = intersect(BaseSurface::P2, &pp(1, 1), &DivClass::from_ints(&[1]));
        assert_eq!(r, Err(Error::RankMismatch { expected: 1, got: 2 }));
    }

    #[test]
    fn ampleness() {
        assert!(is_q_ample(BaseSurface::P1xP1, &pp(1, 1)));
        assert!(!is_q_ample(BaseSurface::P1xP1, &pp(0, 1)));
        let c = DivClass::new(vec![ratio(15, 3) - rat(4)]);
        assert!(is_q_ample(BaseSurface::P2, &c));
        assert!(!is_q_ample(BaseSurface::P2, &DivClass::new(vec![ratio(-1, 7)])));
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(riemann_roch_chi(BaseSurface::P1xP1, &pp(0, 0)).unwrap(), rat(1));
        assert_eq!(riemann_roch_chi(BaseSurface::P2, &DivClass::from_ints(&[-5])).unwrap(), rat(6));
        assert_eq!(riemann_roch_chi(BaseSurface::P2, &DivClass::from_ints(&[-10])).unwrap(), rat(36));
        let half = DivClass::new(vec![ratio(1, 2), rat(0)]);
        assert!(matches!(riemann_roch_chi(BaseSurface::P1xP1, &half), Err(Error::Domain(_))));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..12).prop_map(|(n, d)| ratio(n, d))
    }

    fn class2() -> impl Strategy<Value = DivClass> {
        (small_rational(), small_rational()).prop_map(|(a, b)| DivClass::new(vec![a, b]))
    }

    proptest! {
        #[test]
        fn pairing_is_symmetric_and_bilinear(a in class2(), b in class2(), c in class2(), s in small_rational()) {
            let base = BaseSurface::P1xP1;
            let ab = intersect(base, &a, &b).unwrap();
            prop_assert_eq!(&ab, &intersect(base, &b, &a).unwrap());
            let lhs = intersect(base, &(&a.scale(&s) + &c), &b).unwrap();
            let rhs = &s * &ab + intersect(base, &c, &b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ample_cone_is_closed_under_sums(a in class2(), b in class2()) {
            let base = BaseSurface::P1xP1;
            if is_q_ample(base, &a) && is_q_ample(base, &b) {
                prop_assert!(is_q_ample(base, &(&a + &b)));
            }
        }

        #[test]
        fn serre_duality_symmetry(a in -30i64..30, b in -30i64..30) {
            let p = BaseSurface::P1xP1;
            prop_assert_eq!(
                riemann_roch_chi(p, &pp(a, b)).unwrap(),
                riemann_roch_chi(p, &pp(-2 - a, -2 - b)).unwrap()
            );
            let q = BaseSurface::P2;
            prop_assert_eq!(
                riemann_roch_chi(q, &DivClass::from_ints(&[a])).unwrap(),
                riemann_roch_chi(q, &DivClass::from_ints(&[-3 - a])).unwrap()
            );
        }
    }
}
