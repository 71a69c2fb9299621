//! Preimages of a rational curve in a compositum of cyclic covers, computed
//! from the valuations of the branch functions alone.
//!
//! Over C(t), adjoining f_i^{1/m_i} for all i gives an etale algebra of
//! dimension prod m_i that splits into |V|/|G| fields of degree |G|, where G is
//! the image of V = prod Z/m_i in (Q/Z)^P under k -> (sum_i k_i ord_p(f_i)/m_i)_p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Diagonal entries of a diagonalization U W V of an integer matrix.
pub fn diagonal_form(mut w: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = w.len();
    let cols = w.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !w[i][j].is_zero())
                .min_by(|&(a, b), &(c, d)| w[a][b].abs().cmp(&w[c][d].abs()));
            let Some((pi, pj)) = pivot else {
                return diag;
            };
            w.swap(t, pi);
            for row in w.iter_mut() {
                row.swap(t, pj);
            }
            let p = w[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = w[i][t].div_floor(&p);
                if !q.is_zero() {
                    #[allow(clippy::needless_range_loop)]
                    for j in t..cols {
                        let v = &w[t][j] * &q;
                        w[i][j] -= v;
                    }
                }
                clean &= w[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = w[t][j].div_floor(&p);
                if !q.is_zero() {
                    #[allow(clippy::needless_range_loop)]
                    for i in t..rows {
                        let v = &w[i][t] * &q;
                        w[i][j] -= v;
                    }
                }
                clean &= w[t][j].is_zero();
            }
            if clean {
                diag.push(p.abs());
                break;
            }
        }
    }
    diag
}

/// Order of the subgroup of (Q/Z)^P generated by (e_{p,i}/m_i)_p, 
/// where `exps[p][i]` is e_{p,i}.
pub fn image_order(ms: &[u64], exps: &[Vec<u64>]) -> u64 {
    if ms.is_empty() {
        return 1;
    }
    let big_m = ms.iter().fold(1u64, |acc, &m| acc.lcm(&m));
    let w: Vec<Vec<BigInt>> = ms
        .iter()
        .enumerate()
        .map(|(i, &m)| exps.iter().map(|e| BigInt::from(e[i] * (big_m / m) % big_m)).collect())
        .collect();
    if exps.is_empty() {
        return 1;
    }
    let bm = BigInt::from(big_m);
    diagonal_form(w)
        .iter()
        .map(|d| big_m / d.gcd(&bm).to_u64().expect("small"))
        .product()
}

/// Ramification index over p: order of the subgroup generated by e_{p,i}/m_i.
pub fn local_index(ms: &[u64], e: &[u64]) -> u64 {
    ms.iter().zip(e).fold(1u64, |acc, (&m, &x)| acc.lcm(&(m / m.gcd(&x))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KummerPreimage {
    pub components: u64,
    /// Degree of each component over the base curve.
    pub degree: u64,
    pub genus: i64,
}

/// Preimage of P^1 in the compositum of the covers w_i^{m_i} = f_i, given
/// the valuations of the f_i at the points where some valuation is nonzero.
/// None if Riemann-Hurwitz yields an odd Euler characteristic (impossible
/// for genuine valuation data, whose degrees vanish mod m_i).
pub fn kummer_preimage(ms: &[u64], exps: &[Vec<u64>]) -> Option<KummerPreimage> {
    let total: u64 = ms.iter().product();
    let degree = image_order(ms, exps);
    let mut chi2 = -2 * degree as i64;
    for e in exps {
        chi2 += (degree - degree / local_index(ms, e)) as i64;
    }
    if chi2 % 2 != 0 {
        return None;
    }
    Some(KummerPreimage { components: total / degree, degree, genus: chi2 / 2 + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn diagonalization_preserves_determinant() {
        let d = diagonal_form(big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        let det: BigInt = d.iter().product();
        assert_eq!(det, BigInt::from(144));
    }

    #[test]
    fn single_cover_of_the_line() {
        // w^3 = product of 15 simple zeros and a pole of order 15
        let exps: Vec<Vec<u64>> = vec![vec![2]; 15];
        let k = kummer_preimage(&[3], &exps).unwrap();
        assert_eq!((k.components, k.genus), (1, 13));
        // w^2 = t^2: splits
        let k = kummer_preimage(&[2], &[vec![2], vec![2]]).unwrap();
        assert_eq!((k.components, k.degree, k.genus), (2, 1, 0));
    }

    #[test]
    fn compositum_of_two_double_covers() {
        // w1^2 = t(t-1), w2^2 = (t-2)(t-3): one elliptic curve...
        let exps = vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]];
        let k = kummer_preimage(&[2, 2], &exps).unwrap();
        assert_eq!((k.components, k.degree, k.genus), (1, 4, 1));
        // ... but w1^2 = w2^2 = t(t-1) is two conics
        let exps = vec![vec![1, 1], vec![1, 1]];
        let k = kummer_preimage(&[2, 2], &exps).unwrap();
        assert_eq!((k.components, k.degree, k.genus), (2, 2, 0));
    }
}
