//! Hypothesis checks, curve tracing through the tower, and verdicts.

use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{intersect_curves, CurveGeom, Point};
use crate::hjsing::{vanishing_certificate_with_factors, CertificateResult, SingularityType};
use crate::kummer::kummer_preimage;
use crate::lattice::{is_q_ample, DivClass};
use crate::omega::IntegralFamily;
use crate::rational::{ratio, Rational};
use crate::tower::{CurveRef, Tower};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MarkedPoints {
    pub level: usize,
    pub exponent: u64,
    /// Points per component.
    pub count: u64,
}

/// A curve pushed part of the way up the tower: `components` isomorphic
/// components of the given genus, each of degree `degree_over_base_curve`
/// over the original curve, still carrying the branch points of later levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveTrace {
    pub genus: i64,
    pub components: u64,
    pub degree_over_base_curve: u64,
    pub marked: Vec<MarkedPoints>,
}

impl CurveTrace {
    pub fn rational(marked: Vec<MarkedPoints>) -> Self {
        CurveTrace { genus: 0, components: 1, degree_over_base_curve: 1, marked }
    }

    pub fn is_valid(&self) -> bool {
        self.genus >= 0 && self.components >= 1 && self.marked.iter().all(|m| m.count > 0 && m.exponent > 0)
    }
}

/// Restricts a degree-m cyclic cover to each component of `trace`, branched
/// at points with local equation w^m = t^e for e in `branch_data`.
///
/// With c = gcd(m, all e) each component splits into c covers of degree m/c;
/// an empty branch set splits into m copies.
pub fn cover_restriction(trace: &CurveTrace, m: u64, branch_data: &[u64]) -> Result<CurveTrace> {
    if m < 2 || branch_data.contains(&0) {
        return Err(Error::Domain("cover degree must be at least 2 and exponents positive".into()));
    }
    let c = branch_data.iter().fold(m, |acc, e| acc.gcd(e));
    let d = m / c;
    let mut chi2 = d as i64 * (2 * trace.genus - 2);
    for &e in branch_data {
        chi2 += (d - d.gcd(&(e / c))) as i64;
    }
    if chi2 % 2 != 0 {
        return Err(Error::Consistency(format!(
            "Riemann-Hurwitz gives odd 2g-2 = {chi2} for m = {m}, branch exponents {branch_data:?}"
        )));
    }
    let marked = trace
        .marked
        .iter()
        .map(|p| MarkedPoints { level: p.level, exponent: p.exponent, count: p.count * d })
        .collect();
    Ok(CurveTrace {
        genus: chi2 / 2 + 1,
        components: trace.components * c,
        degree_over_base_curve: trace.degree_over_base_curve * d,
        marked,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ManualFlag {
    /// The sequential rule does not apply; `detail` names the point.
    UnsupportedIncidence { detail: String },
    RouteDisagreement { sequential: (u64, i64), kummer: (u64, i64) },
    /// A curve through singular points has preimage components of genus at most 1.
    LowGenusThroughNodes,
}

impl ManualFlag {
    pub fn blocks_verdict(&self) -> bool {
        !matches!(self, ManualFlag::LowGenusThroughNodes)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CurveRole {
    Branch { level: usize },
    Generic { family: String },
    Special,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveClassification {
    pub geom: String,
    #[serde(skip)]
    pub curve: CurveGeom,
    pub role: CurveRole,
    pub components: u64,
    pub genus: i64,
    pub degree_over_base_curve: u64,
    pub passes_through_nodes: bool,
    pub unbranched_levels: Vec<usize>,
    pub manual: Vec<ManualFlag>,
}

impl CurveClassification {
    pub fn blocked(&self) -> bool {
        self.manual.iter().any(ManualFlag::blocks_verdict)
    }
}

struct LocalPoint {
    point: Point,
    exps: Vec<u64>,
    branches: Vec<CurveRef>,
}

fn local_points(t: &Tower, geom: &CurveGeom, upto: usize, own: Option<usize>) -> Result<Vec<LocalPoint>> {
    let mut pts: Vec<LocalPoint> = Vec::new();
    for (r, c) in t.branch_curves() {
        if r.level > upto || c.geom.same_curve(geom) {
            continue;
        }
        for (p, mult) in intersect_curves(geom, &c.geom)? {
            let k = match pts.iter().position(|q| q.point == p) {
                Some(k) => k,
                None => {
                    pts.push(LocalPoint { point: p, exps: vec![0; t.n_levels()], branches: vec![] });
                    pts.len() - 1
                }
            };
            pts[k].branches.push(r);
            if Some(r.level) != own {
                pts[k].exps[r.level - 1] += c.a * mult as u64;
            }
        }
    }
    Ok(pts)
}

/// Pushes `geom` through levels 1..=upto.
pub fn trace_curve(t: &Tower, geom: &CurveGeom, upto: usize, role: CurveRole) -> Result<CurveClassification> {
    let own = t.find_branch(geom).map(|r| r.level);
    let pts = local_points(t, geom, upto, own)?;
    let mut manual = Vec::new();
    let mut passes_through_nodes = false;
    for p in &pts {
        let total = p.branches.len() + usize::from(own.is_some());
        if total >= 3 {
            manual.push(ManualFlag::UnsupportedIncidence {
                detail: format!("{total} branch curves through {}", p.point),
            });
        }
        let levels: Vec<usize> = (1..=upto).filter(|&l| p.exps[l - 1] > 0).collect();
        if levels.len() > 1 {
            manual.push(ManualFlag::UnsupportedIncidence {
                detail: format!("branch curves of levels {levels:?} meet at {}", p.point),
            });
        }
        let other: Vec<&CurveRef> = p.branches.iter().filter(|r| Some(r.level) != own).collect();
        if other.len() == 2 && other[0].level == other[1].level {
            passes_through_nodes = true;
        }
    }

    let levels: Vec<usize> = (1..=upto).filter(|&l| Some(l) != own).collect();
    let ms: Vec<u64> = levels.iter().map(|&l| t.m(l)).collect();
    let exps: Vec<Vec<u64>> = pts
        .iter()
        .map(|p| levels.iter().map(|&l| p.exps[l - 1]).collect::<Vec<u64>>())
        .filter(|e| e.iter().any(|&x| x > 0))
        .collect();
    let kummer = kummer_preimage(&ms, &exps)
        .ok_or_else(|| Error::Consistency(format!("odd Euler characteristic tracing {geom}")))?;

    let sequential_ok = manual.is_empty();
    let mut unbranched_levels = Vec::new();
    let (components, genus, degree) = if sequential_ok {
        let mut marked: Vec<MarkedPoints> = Vec::new();
        for p in &pts {
            for &l in &levels {
                let e = p.exps[l - 1];
                if e == 0 {
                    continue;
                }
                match marked.iter_mut().find(|m| m.level == l && m.exponent == e) {
                    Some(m) => m.count += 1,
                    None => marked.push(MarkedPoints { level: l, exponent: e, count: 1 }),
                }
            }
        }
        marked.sort();
        let mut trace = CurveTrace::rational(marked);
        for &l in &levels {
            let (here, rest): (Vec<MarkedPoints>, Vec<MarkedPoints>) =
                trace.marked.iter().cloned().partition(|m| m.level == l);
            let branch: Vec<u64> =
                here.iter().flat_map(|m| std::iter::repeat_n(m.exponent, m.count as usize)).collect();
            if branch.is_empty() {
                unbranched_levels.push(l);
            }
            trace.marked = rest;
            trace = cover_restriction(&trace, t.m(l), &branch)?;
        }
        if (trace.components, trace.genus) != (kummer.components, kummer.genus) {
            manual.push(ManualFlag::RouteDisagreement {
                sequential: (trace.components, trace.genus),
                kummer: (kummer.components, kummer.genus),
            });
        }
        (trace.components, trace.genus, trace.degree_over_base_curve)
    } else {
        (kummer.components, kummer.genus, kummer.degree)
    };
    if passes_through_nodes && genus <= 1 {
        manual.push(ManualFlag::LowGenusThroughNodes);
    }
    Ok(CurveClassification {
        geom: geom.to_string(),
        curve: geom.clone(),
        role,
        components,
        genus,
        degree_over_base_curve: degree,
        passes_through_nodes,
        unbranched_levels,
        manual,
    })
}

/// Curves that must be traced: branch curves, a generic member of every
/// moving integral family, the family members through meeting points, and
/// the isolated integral curves.
pub fn curves_to_trace(t: &Tower) -> Vec<(CurveGeom, CurveRole)> {
    let mut out: Vec<(CurveGeom, CurveRole)> = Vec::new();
    let push = |g: CurveGeom, role: CurveRole, out: &mut Vec<(CurveGeom, CurveRole)>| {
        if !out.iter().any(|(h, _)| h.same_curve(&g)) {
            out.push((g, role));
        }
    };
    for (r, c) in t.branch_curves() {
        push(c.geom.clone(), CurveRole::Branch { level: r.level }, &mut out);
    }
    let omega = t.omega();
    for fam in &omega.integral_families {
        if let IntegralFamily::Curve(_) = fam {
            continue;
        }
        let mut k = 1i64;
        let generic = loop {
            let g = fam.member(k).expect("moving family");
            let avoids = t.find_branch(&g).is_none()
                && !t.meetings().iter().any(|m| g.contains(&m.point))
                && !t.incidences().iter().any(|i| g.contains(&i.point));
            if avoids {
                break g;
            }
            k += 1;
        };
        push(generic, CurveRole::Generic { family: fam.to_string() }, &mut out);
    }
    for m in t.meetings() {
        if let Point::Quadric(x, w) = &m.point {
            for g in [CurveGeom::FiberH(x.clone()), CurveGeom::FiberV(w.clone())] {
                if omega.is_integral(&g) && t.find_branch(&g).is_none() {
                    push(g, CurveRole::Special, &mut out);
                }
            }
        }
    }
    for g in omega.special_curves() {
        if t.find_branch(&g).is_none() {
            push(g, CurveRole::Special, &mut out);
        }
    }
    out
}

pub fn classify_preimages(t: &Tower) -> Result<Vec<CurveClassification>> {
    curves_to_trace(t)
        .into_iter()
        .map(|(g, role)| trace_curve(t, &g, t.n_levels(), role))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingWitness {
    pub level: usize,
    pub node: String,
    pub singularity: SingularityType,
    pub exceptional_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub multiplicity_ok: bool,
    pub multiplicity_witnesses: Vec<String>,
    pub snc_ok: bool,
    pub snc_witnesses: Vec<String>,
    pub ampleness_ok: bool,
    pub criterion_class: DivClass,
    pub vanishing_ok: bool,
    pub vanishing_witnesses: Vec<VanishingWitness>,
}

impl CheckReport {
    pub fn all_ok(&self) -> bool {
        self.multiplicity_ok && self.snc_ok && self.ampleness_ok && self.vanishing_ok
    }
}

/// sum_i (1/m_i) sum_j D_{i,j} - L.
pub fn criterion_class(t: &Tower) -> DivClass {
    let base = t.base();
    let sum = t
        .levels()
        .iter()
        .fold(DivClass::zero(base), |acc, l| &acc + &l.branch_class(base).scale(&ratio(1, l.m as i64)));
    &sum - &t.omega().l
}

pub fn check_hypotheses(t: &Tower) -> CheckReport {
    check_hypotheses_with_margin(t, &Rational::from_integer(0.into()))
}

/// As `check_hypotheses`, requiring the criterion class minus `margin` times
/// the hyperplane class (1,1) or O(1) to be ample.
pub fn check_hypotheses_with_margin(t: &Tower, margin: &Rational) -> CheckReport {
    let mut multiplicity_witnesses = Vec::new();
    for (li, level) in t.levels().iter().enumerate() {
        for c in &level.curves {
            if c.a == 0 || c.a >= level.m || c.a.gcd(&level.m) != 1 {
                multiplicity_witnesses.push(format!("level {}: {} has a = {}", li + 1, c.geom, c.a));
            }
        }
    }
    for m in t.meetings().iter().filter(|m| m.is_same_level()) {
        let (u, v) = (t.curve(m.branches[0]), t.curve(m.branches[1]));
        let level = m.branches[0].level;
        if (u.a + v.a) % t.m(level) == 0 && m.factor_count == 0 {
            multiplicity_witnesses.push(format!(
                "level {level}: {} (a={}) and {} (a={}) meet at {} with a + a' = 0 mod {}",
                u.geom,
                u.a,
                v.geom,
                v.a,
                m.point,
                t.m(level)
            ));
        }
    }

    let crit = criterion_class(t);
    let shift = DivClass::new(vec![Rational::one(); crit.rank()]).scale(margin);
    let ampleness_ok = is_q_ample(t.base(), &(&crit - &shift));

    let r = t.omega().r as i64;
    let mut vanishing_witnesses = Vec::new();
    for (m, sing) in t.same_level_nodes() {
        if let CertificateResult::Fail { index } =
            vanishing_certificate_with_factors(sing, r, m.factor_count as i64)
        {
            vanishing_witnesses.push(VanishingWitness {
                level: m.branches[0].level,
                node: m.point.to_string(),
                singularity: sing,
                exceptional_index: index,
            });
        }
    }

    CheckReport {
        multiplicity_ok: multiplicity_witnesses.is_empty(),
        multiplicity_witnesses,
        snc_ok: t.snc_ok(),
        snc_witnesses: t.snc_violations().to_vec(),
        ampleness_ok,
        criterion_class: crit,
        vanishing_ok: vanishing_witnesses.is_empty(),
        vanishing_witnesses,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    Inconclusive,
    GenusBoundOnly,
    QuasiHyperbolic,
    Hyperbolic,
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VerdictKind::Inconclusive => "INCONCLUSIVE",
            VerdictKind::GenusBoundOnly => "GENUS_BOUND_ONLY",
            VerdictKind::QuasiHyperbolic => "QUASI_HYPERBOLIC",
            VerdictKind::Hyperbolic => "HYPERBOLIC",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocusEntry {
    pub geom: String,
    pub components: u64,
    pub genus: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub exceptional_locus: Vec<LocusEntry>,
    pub checks: CheckReport,
    pub curves: Vec<CurveClassification>,
    pub criterion_class: DivClass,
    pub notes: Vec<String>,
}

pub fn verdict(t: &Tower) -> Result<Verdict> {
    verdict_with_margin(t, &Rational::from_integer(0.into()))
}

pub fn verdict_with_margin(t: &Tower, margin: &Rational) -> Result<Verdict> {
    let checks = check_hypotheses_with_margin(t, margin);
    let curves = classify_preimages(t)?;
    let exceptional_locus: Vec<LocusEntry> = curves
        .iter()
        .filter(|c| c.genus <= 1)
        .map(|c| LocusEntry { geom: c.geom.clone(), components: c.components, genus: c.genus })
        .collect();
    let mut notes = Vec::new();
    for c in &curves {
        for f in &c.manual {
            notes.push(format!("{}: manual review, {f:?}", c.geom));
        }
        if !c.unbranched_levels.is_empty() {
            notes.push(format!("{}: unbranched at levels {:?}", c.geom, c.unbranched_levels));
        }
    }
    let kind = if !checks.all_ok() || curves.iter().any(CurveClassification::blocked) {
        VerdictKind::Inconclusive
    } else if !t.omega().all_solutions_algebraic {
        VerdictKind::GenusBoundOnly
    } else if exceptional_locus.is_empty() {
        VerdictKind::Hyperbolic
    } else {
        VerdictKind::QuasiHyperbolic
    };
    Ok(Verdict { kind, exceptional_locus, criterion_class: checks.criterion_class.clone(), checks, curves, notes })
}
