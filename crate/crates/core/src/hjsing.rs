//! Cyclic quotient singularities 1/m(1,q).
//!
//! For m/q = [b_1, ..., b_s] the exceptional chain E_1..E_s of the minimal
//! resolution carries the sequences
//!
//! ```text
//! beta_0 = m,   beta_1 = q,  beta_{i+1}  = b_i beta_i  - beta_{i-1}
//! alpha_0 = 0,  alpha_1 = 1, alpha_{i+1} = b_i alpha_i - alpha_{i-1}
//! gamma_0 = -1, gamma_1 = 0, gamma_{i+1} = b_i gamma_i - gamma_{i-1}
//! ```
//!
//! and the local coordinates u, v pull back with orders beta_l and alpha_l
//! along E_l.

use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{ratio, serialize_rationals, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SingularityType {
    pub m: u64,
    pub q: u64,
}

impl SingularityType {
    pub fn new(m: u64, q: u64) -> Result<Self> {
        if m < 2 || q == 0 || q >= m {
            return Err(Error::Domain(format!("1/{m}(1,{q}) needs 0 < q < m")));
        }
        if m.gcd(&q) != 1 {
            return Err(Error::Domain(format!("1/{m}(1,{q}) needs gcd(q, m) = 1")));
        }
        Ok(SingularityType { m, q })
    }

    /// q^{-1} mod m.
    pub fn q_inverse(&self) -> u64 {
        mod_inverse(self.q, self.m).expect("q is a unit mod m")
    }

    /// Representative with q <= q^{-1}; 1/m(1,q) and 1/m(1,q^{-1}) are the
    /// same germ with the axes swapped.
    pub fn canonical(&self) -> Self {
        SingularityType { m: self.m, q: self.q.min(self.q_inverse()) }
    }

    pub fn is_a_type(&self) -> bool {
        self.q == self.m - 1
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,{})", self.m, self.q)
    }
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionData {
    pub sing: SingularityType,
    pub b: Vec<i64>,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    pub gamma: Vec<i64>,
    #[serde(serialize_with = "serialize_rationals")]
    pub discrepancies: Vec<Rational>,
}

impl ResolutionData {
    /// Length s of the exceptional chain.
    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    fn check_index(&self, l: usize) -> Result<()> {
        if l == 0 || l > self.len() {
            Err(Error::IndexOutOfRange { index: l, len: self.len() })
        } else {
            Ok(())
        }
    }
}

pub fn hj_expand(m: i64, q: i64) -> Result<Vec<i64>> {
    if q <= 0 || q >= m {
        return Err(Error::Domain(format!("continued fraction of {m}/{q} needs 0 < q < m")));
    }
    if m.gcd(&q) != 1 {
        return Err(Error::Domain(format!("continued fraction of {m}/{q} needs gcd(q, m) = 1")));
    }
    let (mut p, mut r) = (m, q);
    let mut b = Vec::new();
    while r != 0 {
        let bi = Integer::div_ceil(&p, &r);
        b.push(bi);
        (p, r) = (r, bi * r - p);
    }
    Ok(b)
}

/// Evaluates b_1 - 1/(b_2 - 1/(... - 1/b_s)).
pub fn hj_evaluate(b: &[i64]) -> Option<Rational> {
    let mut acc: Option<Rational> = None;
    for &bi in b.iter().rev() {
        let v = match acc {
            None => ratio(bi, 1),
            Some(a) if a == ratio(0, 1) => return None,
            Some(a) => ratio(bi, 1) - a.recip(),
        };
        acc = Some(v);
    }
    acc
}

pub fn resolution_data(sing: SingularityType) -> ResolutionData {
    let m = sing.m as i64;
    let q = sing.q as i64;
    let b = hj_expand(m, q).expect("valid singularity type");
    let step = |init: (i64, i64)| {
        let mut seq = vec![init.0, init.1];
        for (i, bi) in b.iter().enumerate() {
            seq.push(bi * seq[i + 1] - seq[i]);
        }
        seq
    };
    let beta = step((m, q));
    let alpha = step((0, 1));
    let gamma = step((-1, 0));
    let discrepancies = (1..=b.len()).map(|i| ratio(beta[i] + alpha[i], m) - ratio(1, 1)).collect();
    ResolutionData { sing, b, alpha, beta, gamma, discrepancies }
}

/// Type of the singularity over a node u = v = 0 of branch curves with
/// multiplicities a_u, a_v in a degree-m cyclic cover: a_u q + a_v = 0 mod m.
pub fn sing_from_node(a_u: u64, a_v: u64, m: u64) -> Result<SingularityType> {
    if m < 2 || a_u == 0 || a_v == 0 || a_u >= m || a_v >= m {
        return Err(Error::Domain(format!("node multiplicities ({a_u},{a_v}) must lie in (0,{m})")));
    }
    let inv = mod_inverse(a_u, m)
        .ok_or_else(|| Error::Domain(format!("gcd({a_u}, {m}) != 1")))?;
    if m.gcd(&a_v) != 1 {
        return Err(Error::Domain(format!("gcd({a_v}, {m}) != 1")));
    }
    let q = ((m - a_v) % m) * inv % m;
    SingularityType::new(m, q)
}

/// Order along E_l of the pull-back of u^{c_u} v^{c_v} du^{du_power} dv^{dv_power}.
///
/// Each pulled-back differential du (resp. dv) is a sum of two terms, the
/// smaller of which vanishes to order beta_l - 1 (resp. alpha_l - 1).
pub fn term_vanishing_order(
    data: &ResolutionData,
    l: usize,
    c_u: i64,
    c_v: i64,
    du_power: i64,
    dv_power: i64,
) -> Result<i64> {
    data.check_index(l)?;
    if c_u < 0 || c_v < 0 || du_power < 0 || dv_power < 0 {
        return Err(Error::Domain("exponents must be nonnegative".into()));
    }
    let (b, a) = (data.beta[l], data.alpha[l]);
    Ok(c_u * b + c_v * a + du_power * (b - 1) + dv_power * (a - 1))
}

/// Order along E_l of one linear form through the node, transverse to both axes.
pub fn linear_factor_order(data: &ResolutionData, l: usize) -> Result<i64> {
    data.check_index(l)?;
    Ok(data.beta[l].min(data.alpha[l]))
}

/// Lower bound for the order along E_l of the pull-back of a degree-r
/// symmetric differential sum_k a_k du^{r-k} dv^k whose coefficients all
/// vanish along `extra_factors` further linear forms through the node.
///
/// Both axes are integral curves, so a_0 is divisible by v and a_r by u.
pub fn omega_vanishing_order(data: &ResolutionData, l: usize, r: i64, extra_factors: i64) -> Result<i64> {
    if r < 1 {
        return Err(Error::Domain(format!("symmetric power r = {r} must be positive")));
    }
    let mut best = i64::MAX;
    for k in 0..=r {
        let (c_u, c_v) = match k {
            0 => (0, 1),
            k if k == r => (1, 0),
            _ => (0, 0),
        };
        best = best.min(term_vanishing_order(data, l, c_u, c_v, r - k, k)?);
    }
    Ok(best + extra_factors * linear_factor_order(data, l)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateResult {
    Pass,
    Fail { index: usize },
}

impl CertificateResult {
    pub fn passed(&self) -> bool {
        matches!(self, CertificateResult::Pass)
    }
}

impl Serialize for CertificateResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CertificateResult::Pass => s.serialize_str("PASS"),
            CertificateResult::Fail { index } => s.serialize_str(&format!("FAIL at E_{index}")),
        }
    }
}

/// Does the pulled-back differential vanish along every exceptional curve?
pub fn vanishing_certificate(sing: SingularityType, r: i64) -> CertificateResult {
    vanishing_certificate_with_factors(sing, r, 0)
}

pub fn vanishing_certificate_with_factors(sing: SingularityType, r: i64, extra_factors: i64) -> CertificateResult {
    let data = resolution_data(sing);
    for l in 1..=data.len() {
        let order = omega_vanishing_order(&data, l, r.max(1), extra_factors).expect("index in range");
        if order <= 0 {
            return CertificateResult::Fail { index: l };
        }
    }
    CertificateResult::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn st(m: u64, q: u64) -> SingularityType {
        SingularityType::new(m, q).unwrap()
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(hj_expand(2, 1).unwrap(), vec![2]);
        assert_eq!(hj_expand(5, 2).unwrap(), vec![3, 2]);
        assert_eq!(hj_expand(7, 3).unwrap(), vec![3, 2, 2]);
        assert!(hj_expand(6, 2).is_err());
        assert!(hj_expand(5, 5).is_err());
        assert!(hj_expand(5, 0).is_err());
    }

    #[test]
    fn five_two() {
        let d = resolution_data(st(5, 2));
        assert_eq!(d.b, vec![3, 2]);
        assert_eq!(d.beta, vec![5, 2, 1, 0]);
        assert_eq!(d.alpha, vec![0, 1, 3, 5]);
        assert_eq!(d.gamma, vec![-1, 0, 1, 2]);
        assert_eq!(d.discrepancies, vec![ratio(-2, 5), ratio(-1, 5)]);
    }

    #[test]
    fn a1_and_seven_three() {
        let d = resolution_data(st(2, 1));
        assert_eq!((d.b.clone(), d.beta.clone(), d.alpha.clone()), (vec![2], vec![2, 1, 0], vec![0, 1, 2]));
        assert_eq!(d.discrepancies, vec![rat(0)]);
        let d = resolution_data(st(7, 3));
        assert_eq!(d.alpha[d.len()], 5);
        assert_eq!(d.discrepancies, vec![ratio(-3, 7), ratio(-2, 7), ratio(-1, 7)]);
    }

    #[test]
    fn node_types() {
        assert_eq!(sing_from_node(1, 1, 2).unwrap(), st(2, 1));
        assert_eq!(sing_from_node(1, 3, 7).unwrap(), st(7, 4));
        assert_eq!(sing_from_node(2, 1, 5).unwrap(), st(5, 2));
        assert!(sing_from_node(2, 1, 4).is_err());
        assert!(sing_from_node(1, 2, 4).is_err());
    }

    #[test]
    fn term_orders() {
        let a2 = resolution_data(st(3, 2));
        assert_eq!(term_vanishing_order(&a2, 1, 0, 1, 2, 0).unwrap(), 3);
        let a1 = resolution_data(st(2, 1));
        assert_eq!(term_vanishing_order(&a1, 1, 0, 0, 1, 1).unwrap(), 0);
        let d = resolution_data(st(5, 2));
        assert_eq!(term_vanishing_order(&d, 2, 0, 0, 1, 1).unwrap(), 2);
        assert_eq!(
            term_vanishing_order(&d, 3, 0, 0, 1, 1),
            Err(Error::IndexOutOfRange { index: 3, len: 2 })
        );
        assert!(term_vanishing_order(&d, 0, 0, 0, 1, 1).is_err());
    }

    #[test]
    fn certificates() {
        assert_eq!(vanishing_certificate(st(2, 1), 2), CertificateResult::Fail { index: 1 });
        assert_eq!(vanishing_certificate(st(3, 2), 2), CertificateResult::Pass);
        assert_eq!(vanishing_certificate(st(5, 2), 2), CertificateResult::Pass);
        assert_eq!(vanishing_certificate(st(5, 1), 2), CertificateResult::Fail { index: 1 });
        // one extra linear factor through the node rescues A_1
        assert_eq!(vanishing_certificate_with_factors(st(2, 1), 2, 1), CertificateResult::Pass);
    }

    #[test]
    fn a_series_chain_matches_monomial_model() {
        // For 1/m(1,m-1) the chart at E_i ∩ E_{i+1} is
        // u = u_i^{m-i} u_{i+1}^{m-i-1}, v = u_i^i u_{i+1}^{i+1}.
        for m in 2..40u64 {
            let d = resolution_data(st(m, m - 1));
            let mi = m as i64;
            for i in 1..d.len() {
                assert_eq!((d.beta[i], d.beta[i + 1]), (mi - i as i64, mi - i as i64 - 1));
                assert_eq!((d.alpha[i], d.alpha[i + 1]), (i as i64, i as i64 + 1));
            }
        }
    }

    #[test]
    fn canonical_representative_is_axis_symmetric() {
        let s = st(7, 4);
        assert_eq!(s.q_inverse(), 2);
        assert_eq!(s.canonical(), st(7, 2));
        assert_eq!(st(7, 2).canonical(), st(7, 2));
    }
}
