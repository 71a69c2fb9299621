//! Sparse multivariate polynomials with rational coefficients over a fixed
//! list of variables.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_traits::{One, Zero};

use crate::rational::{rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    /// sum_i c_i x_i.
    pub fn linear(nvars: usize, coeffs: &[(usize, i64)]) -> Self {
        coeffs
            .iter()
            .fold(Poly::zero(nvars), |acc, &(i, c)| acc.add(&Poly::var(nvars, i).scale(&rat(c))))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c * s);
        }
        p
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::constant(self.nvars, Rational::one()), |acc, _| acc.mul(self))
    }

    /// Degrees of the terms in the variables `vars`.
    pub fn degrees_in(&self, vars: &[usize]) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|e| vars.iter().map(|&i| e[i]).sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Coefficient of x_i^k, as a polynomial in the remaining variables.
    pub fn coefficient(&self, i: usize, k: u32) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut e = e.clone();
                e[i] = 0;
                p.add_term(e, c.clone());
            }
        }
        p
    }

    /// Replaces x_i by `value`.
    pub fn substitute(&self, i: usize, value: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[i];
            rest[i] = 0;
            let mut mono = Poly::zero(self.nvars);
            mono.add_term(rest, c.clone());
            out = out.add(&mono.mul(&value.pow(k)));
        }
        out
    }

    /// Is the linear form `l` a factor? Decided by solving l = 0 for its
    /// first variable and substituting.
    pub fn divisible_by_linear(&self, l: &Poly) -> bool {
        let Some((i, ci)) = (0..self.nvars).find_map(|i| {
            let mut e = vec![0; self.nvars];
            e[i] = 1;
            l.terms.get(&e).map(|c| (i, c.clone()))
        }) else {
            return false;
        };
        let mut rest = l.clone();
        let mut e = vec![0; self.nvars];
        e[i] = 1;
        rest.terms.remove(&e);
        let solved = rest.scale(&(-Rational::one() / ci));
        self.substitute(i, &solved).is_zero()
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = monomial(e, names);
            match (mag.is_one(), mono.is_empty()) {
                (true, false) => out.push_str(&mono),
                (_, true) => write!(out, "{mag}").expect("string"),
                (false, false) => write!(out, "{mag}*{mono}").expect("string"),
            }
        }
        out
    }

    /// Monomial string to coefficient string.
    pub fn coefficient_map(&self, names: &[String]) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let m = monomial(e, names);
                (if m.is_empty() { "1".into() } else { m }, c.to_string())
            })
            .collect()
    }
}

fn monomial(e: &[u32], names: &[String]) -> String {
    e.iter()
        .zip(names)
        .filter(|(k, _)| **k > 0)
        .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
        .collect::<Vec<_>>()
        .join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn expansion_and_rendering() {
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let p = x.add(&y).pow(2).sub(&y.pow(2));
        assert_eq!(p.render(&names()), "x^2 + 2*x*y");
        assert_eq!(p.degrees_in(&[0, 1, 2]), vec![2]);
        assert_eq!(Poly::zero(3).render(&names()), "0");
    }

    #[test]
    fn linear_factors() {
        let l = Poly::linear(3, &[(0, 4), (1, 2), (2, 1)]);
        let q = Poly::var(3, 0);
        assert!(l.mul(&q).divisible_by_linear(&l));
        assert!(!q.pow(3).divisible_by_linear(&l));
    }

    #[test]
    fn coefficient_extraction() {
        let x = Poly::var(3, 0);
        let z = Poly::var(3, 2);
        let p = z.mul(&x.pow(2)).add(&x);
        assert_eq!(p.coefficient(2, 1), x.pow(2));
        assert_eq!(p.coefficient(2, 0), x);
    }
}
