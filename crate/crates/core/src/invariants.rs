//! Numerical invariants of every floor of a tower.

use num_traits::Zero;
use serde::Serialize;

use crate::certify::{trace_curve, CurveRole};
use crate::error::{Error, Result};
use crate::lattice::{canonical_class, intersect, is_q_ample, riemann_roch_chi, BaseSurface, DivClass};
use crate::rational::{rat, ratio, serialize_opt_rational, serialize_rational, Rational};
use crate::tower::{normalization_bundle_classes, Tower};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelInvariants {
    pub level: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub chi: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub k2: Rational,
    /// K of this floor as the pull-back of a Q-class on the base.
    pub k_class: DivClass,
    pub k_ample: bool,
    /// Self-intersection of this level's branch divisor on the floor below.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub d_sq: Option<Rational>,
    #[serde(serialize_with = "serialize_opt_rational")]
    pub d_dot_k: Option<Rational>,
    /// Genus of a component of the preimage of this level's first branch
    /// curve on the floor below.
    pub branch_component_genus: Option<i64>,
}

fn top_self_intersection(base: BaseSurface) -> Rational {
    let k = canonical_class(base);
    intersect(base, &k, &k).expect("rank matches")
}

pub fn level_invariants(t: &Tower) -> Result<Vec<LevelInvariants>> {
    let base = t.base();
    let k0 = canonical_class(base);
    let mut out = vec![LevelInvariants {
        level: 0,
        chi: rat(1),
        k2: top_self_intersection(base),
        k_ample: is_q_ample(base, &k0),
        k_class: k0,
        d_sq: None,
        d_dot_k: None,
        branch_component_genus: None,
    }];
    let family = t.fiber_family();
    for k in 1..=t.n_levels() {
        let level = &t.levels()[k - 1];
        let m = level.m as i64;
        let prev = out.last().expect("nonempty").clone();
        let deg = rat(t.degree_at(k - 1) as i64);
        let d = level.branch_class(base);
        let d_sq = &deg * intersect(base, &d, &d)?;
        let d_dot_k = &deg * intersect(base, &d, &prev.k_class)?;

        let chi = if level.all_reduced() {
            rat(m) * &prev.chi + ratio((m - 1) * (2 * m - 1), 12 * m) * &d_sq + ratio(m - 1, 4) * &d_dot_k
        } else {
            let mut acc = Rational::zero();
            for mi in normalization_bundle_classes(level, t.bundle_class(k)) {
                let sq = intersect(base, &mi, &mi)?;
                let dk = intersect(base, &mi, &prev.k_class)?;
                acc += &prev.chi + &deg * (sq + dk) / rat(2);
            }
            acc
        };
        let k2 = rat(m) * &prev.k2 + ratio((m - 1) * (m - 1), m) * &d_sq + rat(2 * (m - 1)) * &d_dot_k;
        let k_class = t.canonical_class(k);

        if !chi.is_integer() {
            return Err(Error::Consistency(format!("chi of floor {k} is {chi}, not an integer")));
        }
        if t.gorenstein_up_to(k) && !k2.is_integer() {
            return Err(Error::Consistency(format!("K^2 of floor {k} is {k2}, not an integer")));
        }
        let via_class = rat(t.degree_at(k) as i64) * intersect(base, &k_class, &k_class)?;
        if via_class != k2 {
            return Err(Error::Consistency(format!("K^2 recursion {k2} differs from pull-back value {via_class}")));
        }

        let first = &level.curves[0].geom;
        let trace = trace_curve(t, first, k - 1, CurveRole::Branch { level: k })?;
        let genus = trace.genus;

        if let Some((fm, _)) = family {
            let fm = fm as i64;
            if d_sq != rat(2 * fm.pow(k as u32 + 1)) {
                return Err(Error::Consistency(format!("D_{k}^2 = {d_sq}, expected {}", 2 * fm.pow(k as u32 + 1))));
            }
            // fibers have square zero, so adjunction gives Gamma.K = 2g - 2 per component
            let mut expected_dk = Rational::zero();
            for c in &level.curves {
                let tr = trace_curve(t, &c.geom, k - 1, CurveRole::Branch { level: k })?;
                expected_dk += rat(tr.components as i64 * (2 * tr.genus - 2));
            }
            if d_dot_k != expected_dk {
                return Err(Error::Consistency(format!(
                    "D_{k}.K = {d_dot_k} but adjunction over traced components gives {expected_dk}"
                )));
            }
        }

        out.push(LevelInvariants {
            level: k,
            k_ample: is_q_ample(base, &k_class),
            chi,
            k2,
            k_class,
            d_sq: Some(d_sq),
            d_dot_k: Some(d_dot_k),
            branch_component_genus: Some(genus),
        });
    }
    Ok(out)
}

/// -(2k/3) m^k (m^2 - 1).
pub fn noether_gap_closed_form(m: u64, k: usize) -> Rational {
    let m = m as i64;
    ratio(-2 * k as i64, 3) * rat(m.pow(k as u32)) * rat(m * m - 1)
}

/// 2g - 2 = m^{k-1}((m-1)(k-1) - 2) for a level-k branch fiber inside X_{k-1}.
pub fn fiber_branch_genus_closed_form(m: u64, k: usize) -> Rational {
    let m = m as i64;
    let k = k as i64;
    rat(m.pow(k as u32 - 1) * ((m - 1) * (k - 1) - 2)) / rat(2) + rat(1)
}

/// K^2 - 8 chi of the top floor, checked against the closed form on every floor.
pub fn noether_gap(t: &Tower) -> Result<Rational> {
    let (m, _) = t
        .fiber_family()
        .ok_or_else(|| Error::Domain("closed form only applies to equal-degree fiber towers".into()))?;
    let inv = level_invariants(t)?;
    for li in &inv {
        let gap = &li.k2 - rat(8) * &li.chi;
        let closed = noether_gap_closed_form(m, li.level);
        if gap != closed {
            return Err(Error::Consistency(format!(
                "floor {}: K^2 - 8 chi = {gap}, closed form {closed}",
                li.level
            )));
        }
    }
    let top = inv.last().expect("nonempty");
    Ok(&top.k2 - rat(8) * &top.chi)
}

const PUSHFORWARD_LIMIT: u64 = 2_000_000;

/// chi(O_{X_n}) as sum over (i_1..i_n) of chi(base, -(M_1^(i_1) + ... + M_n^(i_n))).
pub fn chi_via_pushforward(t: &Tower) -> Result<Rational> {
    let base = t.base();
    if t.total_degree() > PUSHFORWARD_LIMIT {
        return Err(Error::Domain(format!("{} summands exceed the enumeration limit", t.total_degree())));
    }
    let per_level: Vec<Vec<DivClass>> = (1..=t.n_levels())
        .map(|k| normalization_bundle_classes(&t.levels()[k - 1], t.bundle_class(k)))
        .collect();
    let mut idx = vec![0usize; per_level.len()];
    let mut total = Rational::zero();
    loop {
        let sum = idx
            .iter()
            .zip(&per_level)
            .fold(DivClass::zero(base), |acc, (&i, classes)| &acc + &classes[i]);
        total += riemann_roch_chi(base, &-&sum)?;
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(total);
            }
            idx[pos] += 1;
            if idx[pos] < per_level[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Is (4g - 4)/(n - 2) < deg11?
pub fn forced_integrality_general(n: i64, g: i64, deg11: &Rational) -> Result<bool> {
    if n <= 2 {
        return Err(Error::Domain(format!("bound needs n > 2, got n = {n}")));
    }
    Ok(ratio(4 * g - 4, n - 2) < *deg11)
}

/// Is -deg + EdotC + 4g - 4 negative?
pub fn cuboid_inequality(deg: i64, g: i64, e_dot_c: i64) -> bool {
    -deg + e_dot_c + 4 * g - 4 < 0
}

/// Smallest E.C' compatible with a curve that is not forced to be integral.
pub fn cuboid_min_e_dot_c(deg: i64, g: i64) -> i64 {
    deg + 4 - 4 * g
}
