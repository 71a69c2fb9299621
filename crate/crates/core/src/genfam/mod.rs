//! Explicit complete-intersection families built from towers of cyclic covers.
//!
//! Quadric families live on z0 z3 = z1 z2, the image of P1xP1 under
//! ([x:y],[w:z]) -> [xw : xz : yw : yz]. The form z0 - A z1 - B z2 + AB z3
//! restricts to (x - B y)(w - A z): the horizontal fiber x = B plus the
//! vertical fiber w = A.

pub mod poly;

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{CurveGeom, P1};
use crate::lattice::BaseSurface;
use crate::omega::{OmegaId, OmegaSpec};
use crate::rational::rat;
use crate::tower::{BranchCurve, LevelSpec, TowerSpec};
use poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyKind {
    #[serde(rename = "FAM_A")]
    FamA,
    #[serde(rename = "FAM_B")]
    FamB,
    #[serde(rename = "FAM_C")]
    FamC,
    #[serde(rename = "FAM_D")]
    FamD,
    #[serde(rename = "NOT_COVERED")]
    NotCovered,
}

impl FamilyKind {
    pub fn route(&self) -> &'static str {
        match self {
            FamilyKind::FamA => "quadric; double covers along fiber pairs meeting on x - w in {-1,0,1,2}, fiber covers of degree >= 3",
            FamilyKind::FamB => "P2; cyclic covers branched along tangent lines to a conic",
            FamilyKind::FamC => "quadric; double covers along fiber pairs meeting on x = w or x = -w, fiber covers of degree >= 3",
            FamilyKind::FamD => "quadric; fiber covers of degree >= 3",
            FamilyKind::NotCovered => "none",
        }
    }

    pub fn parse(s: &str) -> Result<FamilyKind> {
        match s.trim() {
            "FAM_A" => Ok(FamilyKind::FamA),
            "FAM_B" => Ok(FamilyKind::FamB),
            "FAM_C" => Ok(FamilyKind::FamC),
            "FAM_D" => Ok(FamilyKind::FamD),
            "NOT_COVERED" => Ok(FamilyKind::NotCovered),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::FamA => "FAM_A",
            FamilyKind::FamB => "FAM_B",
            FamilyKind::FamC => "FAM_C",
            FamilyKind::FamD => "FAM_D",
            FamilyKind::NotCovered => "NOT_COVERED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// Applicable families, weakest degree requirements first.
    pub kinds: Vec<FamilyKind>,
    pub note: Option<String>,
}

impl Classification {
    pub fn primary(&self) -> FamilyKind {
        self.kinds[0]
    }

    pub fn covers(&self, k: FamilyKind) -> bool {
        k != FamilyKind::NotCovered && self.kinds.contains(&k)
    }
}

pub fn classify_multidegree(degrees: &[u64]) -> Result<Classification> {
    if let Some(d) = degrees.iter().find(|&&d| d < 2) {
        return Err(Error::Domain(format!("degree {d} < 2")));
    }
    let n = degrees.len();
    let twos = degrees.iter().filter(|&&d| d == 2).count();
    let big = n - twos;
    let mut kinds = Vec::new();
    if twos == 0 && n >= 5 {
        kinds.push(FamilyKind::FamB);
    }
    if twos == 1 && n >= 4 {
        kinds.push(FamilyKind::FamD);
    }
    if twos >= 2 && big >= 1 && n >= 6 {
        kinds.push(FamilyKind::FamC);
    }
    if twos >= 2 && n >= 8 {
        kinds.push(FamilyKind::FamA);
    }
    let mut note = None;
    if kinds.is_empty() {
        kinds.push(FamilyKind::NotCovered);
        if n == 4 && twos == 0 && degrees.iter().all(|&d| d == degrees[0]) {
            note = Some(format!(
                "hyperbolic complete intersections of multidegree {degrees:?} in P6 are known by other methods"
            ));
        }
    }
    Ok(Classification { kinds, note })
}

/// Parameters of one branch equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum LevelParams {
    /// Product of a^2 x + a b y + b^2 z over points [a:b].
    TangentLines { points: Vec<(i64, i64)> },
    /// Product of z0 - A z1 - B z2 + AB z3 over pairs (A, B).
    Fibers { forms: Vec<(i64, i64)> },
    /// Pairs (a, a) and (-a, -a).
    OppositePair { a: i64 },
    /// Pairs (a, a) and (a - 1, a + 1).
    ShiftedPair { a: i64 },
}

impl LevelParams {
    pub fn forms(&self) -> Vec<(i64, i64)> {
        match self {
            LevelParams::TangentLines { points } => points.clone(),
            LevelParams::Fibers { forms } => forms.clone(),
            LevelParams::OppositePair { a } => vec![(*a, *a), (-a, -a)],
            LevelParams::ShiftedPair { a } => vec![(*a, *a), (a - 1, a + 1)],
        }
    }

    fn quadric_a(&self) -> Option<i64> {
        match self {
            LevelParams::OppositePair { a } | LevelParams::ShiftedPair { a } => Some(*a),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Construction {
    Family(FamilyKind),
    WeightedPlane,
    GeneralizedCuboid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSet {
    pub construction: Construction,
    pub degrees: Vec<u64>,
    /// Coordinate names followed by the deformation parameters.
    pub variables: Vec<String>,
    /// Weight of each coordinate; parameters have weight 0.
    pub weights: Vec<u64>,
    pub parameters: Vec<String>,
    pub equations: Vec<Poly>,
    /// Index of z0 z3 - z1 z2 among the equations.
    pub quadric: Option<usize>,
    /// Branch equations in order, with their equation index.
    pub levels: Vec<(usize, LevelParams)>,
    pub constraints: Vec<String>,
}

impl EquationSet {
    pub fn n_coords(&self) -> usize {
        self.weights.len()
    }

    pub fn ambient(&self) -> String {
        if self.weights.iter().all(|&w| w == 1) {
            format!("P{}", self.n_coords() - 1)
        } else {
            let w: Vec<String> = self.weights.iter().map(u64::to_string).collect();
            format!("P({})", w.join(","))
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.equations {
            out.push_str(&p.render(&self.variables));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let equations: Vec<Value> = self
            .equations
            .iter()
            .zip(&self.degrees)
            .map(|(p, d)| json!({"degree": d, "terms": p.coefficient_map(&self.variables)}))
            .collect();
        let levels: Vec<Value> = self
            .levels
            .iter()
            .map(|(k, l)| json!({"equation": k, "params": l}))
            .collect();
        json!({
            "construction": self.construction,
            "degrees": self.degrees,
            "ambient": {"name": self.ambient(), "weights": self.weights},
            "variables": self.variables[..self.n_coords()],
            "parameters": self.parameters,
            "equations": equations,
            "levels": levels,
            "constraints": self.constraints,
        })
    }
}

fn coord_names(prefix: &str, range: std::ops::Range<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

fn tangent_form(nv: usize, (a, b): (i64, i64)) -> Poly {
    Poly::linear(nv, &[(0, a * a), (1, a * b), (2, b * b)])
}

fn quadric_form(nv: usize, (a, b): (i64, i64)) -> Poly {
    Poly::linear(nv, &[(0, 1), (1, -a), (2, -b), (3, a * b)])
}

fn quadric(nv: usize) -> Poly {
    Poly::var(nv, 0).mul(&Poly::var(nv, 3)).sub(&Poly::var(nv, 1).mul(&Poly::var(nv, 2)))
}

fn product(forms: impl Iterator<Item = Poly>, nv: usize) -> Poly {
    forms.fold(Poly::constant(nv, rat(1)), |acc, f| acc.mul(&f))
}

struct Schedule {
    kind: FamilyKind,
    degrees: Vec<u64>,
    quadric: Option<usize>,
    levels: Vec<(usize, LevelParams)>,
    constraints: Vec<String>,
}

fn schedule(kind: FamilyKind, degrees: &[u64]) -> Schedule {
    let quadric = match kind {
        FamilyKind::FamB => None,
        _ => degrees.iter().position(|&d| d == 2),
    };
    let level_positions: Vec<usize> = (0..degrees.len()).filter(|&k| Some(k) != quadric).collect();
    let r = level_positions.iter().filter(|&&k| degrees[k] == 2).count() as i64;
    let mut levels = Vec::new();
    let mut constraints: Vec<String> = match kind {
        FamilyKind::FamB => {
            let mut next = 1;
            for &k in &level_positions {
                let points = (0..degrees[k]).map(|_| {
                    next += 1;
                    (next - 1, 1)
                });
                levels.push((k, LevelParams::TangentLines { points: points.collect() }));
            }
            vec!["points [a:b] pairwise distinct in P1".into()]
        }
        FamilyKind::FamD => {
            let mut next = 1;
            for &k in &level_positions {
                let forms = (0..degrees[k]).map(|_| {
                    next += 1;
                    (next - 1, next - 1)
                });
                levels.push((k, LevelParams::Fibers { forms: forms.collect() }));
            }
            vec!["A parameters pairwise distinct".into(), "B parameters pairwise distinct".into()]
        }
        FamilyKind::FamC | FamilyKind::FamA => {
            let four = kind == FamilyKind::FamA;
            let s_total: i64 = level_positions.iter().filter(|&&k| degrees[k] > 2).map(|&k| degrees[k] as i64).sum();
            let (first_b, step) = if four { (4 * r + 6, 4) } else { (r + 1, 1) };
            let mut bi = 0i64;
            let mut ai = 0i64;
            for &k in &level_positions {
                if degrees[k] == 2 {
                    ai += 1;
                    let p = if four { LevelParams::ShiftedPair { a: 4 * ai } } else { LevelParams::OppositePair { a: ai } };
                    levels.push((k, p));
                } else {
                    let forms = (0..degrees[k]).map(|_| {
                        let b = first_b + step * bi;
                        let c = first_b + step * (bi + s_total);
                        bi += 1;
                        (b, c)
                    });
                    levels.push((k, LevelParams::Fibers { forms: forms.collect() }));
                }
            }
            if four {
                vec![
                    "a_i pairwise distinct and a_i != a_j ± 1".into(),
                    "b, c pairwise distinct and not in {a_k, a_k ± 1}".into(),
                    "no fiber pair from different levels meets on x - w in {-1,0,1,2}".into(),
                ]
            } else {
                vec![
                    "a_i != ±a_j".into(),
                    "b, c pairwise distinct and != ±a_k".into(),
                    "no fiber pair from different levels meets on x = ±w".into(),
                ]
            }
        }
        FamilyKind::NotCovered => unreachable!("checked by caller"),
    };
    constraints.push("perturbation G_i not divisible by any branch form of its equation".into());
    Schedule { kind, degrees: degrees.to_vec(), quadric, levels, constraints }
}

fn emit(s: Schedule, perturbed: bool, construction: Construction) -> EquationSet {
    let plane = s.kind == FamilyKind::FamB;
    let (mut names, weights_len) = if plane {
        let mut v: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        v.extend(coord_names("w", 1..s.levels.len() + 1));
        (v, 3 + s.levels.len())
    } else {
        (coord_names("z", 0..4 + s.levels.len()), 4 + s.levels.len())
    };
    let parameters = if perturbed { coord_names("t", 1..s.levels.len() + 1) } else { vec![] };
    names.extend(parameters.iter().cloned());
    let nv = names.len();
    let mut equations = vec![Poly::zero(nv); s.degrees.len()];
    if let Some(q) = s.quadric {
        equations[q] = quadric(nv);
    }
    for (i, (k, level)) in s.levels.iter().enumerate() {
        let m = s.degrees[*k] as u32;
        let forms = level.forms();
        let branch = if plane {
            product(forms.iter().map(|&p| tangent_form(nv, p)), nv)
        } else {
            product(forms.iter().map(|&p| quadric_form(nv, p)), nv)
        };
        let w = Poly::var(nv, weights_len - s.levels.len() + i);
        let mut eq = branch.sub(&w.pow(m));
        if perturbed {
            let g = Poly::var(nv, 0).pow(m);
            eq = eq.add(&Poly::var(nv, weights_len + i).mul(&g));
        }
        equations[*k] = eq;
    }
    EquationSet {
        construction,
        degrees: s.degrees,
        variables: names,
        weights: vec![1; weights_len],
        parameters,
        equations,
        quadric: s.quadric,
        levels: s.levels,
        constraints: s.constraints,
    }
}

pub fn instantiate_family(kind: FamilyKind, degrees: &[u64]) -> Result<EquationSet> {
    let class = classify_multidegree(degrees)?;
    if !class.covers(kind) {
        return Err(Error::Domain(format!("{kind} does not apply to multidegree {degrees:?}")));
    }
    let eqs = emit(schedule(kind, degrees), true, Construction::Family(kind));
    let v = validate_family(&eqs);
    if !v.valid {
        return Err(Error::Consistency(format!("generated {kind} family violates {}", v.witnesses[0])));
    }
    Ok(eqs)
}

/// prod_{i=1}^{d} (i^2 x + i y + z) = w^m in P(1,1,1,d/m).
pub fn weighted_tangent_hypersurface(d: u64, m: u64) -> Result<EquationSet> {
    if m < 2 || !d.is_multiple_of(m) {
        return Err(Error::Domain(format!("degree {d} is not a multiple of {m}")));
    }
    let big_r = d / m;
    let names: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
    let points: Vec<(i64, i64)> = (1..=d as i64).map(|i| (i, 1)).collect();
    let branch = product(points.iter().map(|&p| tangent_form(4, p)), 4);
    let eq = branch.sub(&Poly::var(4, 3).pow(m as u32));
    Ok(EquationSet {
        construction: Construction::WeightedPlane,
        degrees: vec![d],
        variables: names,
        weights: vec![1, 1, 1, big_r],
        parameters: vec![],
        equations: vec![eq],
        quadric: None,
        levels: vec![(0, LevelParams::TangentLines { points })],
        constraints: vec!["points [a:b] pairwise distinct in P1".into()],
    })
}

/// The generalized cuboid model: n equations of degree m on the quadric in P^{n+3}.
pub fn generalized_cuboid_model(m: u64, n: usize) -> Result<EquationSet> {
    if m < 2 || n == 0 {
        return Err(Error::Domain("need m >= 2 and n >= 1".into()));
    }
    let mut degrees = vec![2];
    degrees.extend(std::iter::repeat_n(m, n));
    let mut s = schedule(FamilyKind::FamD, &degrees);
    s.constraints.pop();
    Ok(emit(s, false, Construction::GeneralizedCuboid))
}

/// Tower whose top floor is the t = 0 member of the family.
pub fn family_tower_spec(eqs: &EquationSet) -> Result<TowerSpec> {
    let omega = match eqs.construction {
        Construction::Family(FamilyKind::FamB) | Construction::WeightedPlane => OmegaId::TangentConic4,
        Construction::Family(FamilyKind::FamC) => OmegaId::FiberDiag44,
        Construction::Family(FamilyKind::FamA) => OmegaId::FiberDiag66,
        Construction::Family(FamilyKind::FamD) | Construction::GeneralizedCuboid => OmegaId::Fiber22,
        Construction::Family(FamilyKind::NotCovered) => return Err(Error::Domain("no tower".into())),
    };
    let omega = OmegaSpec::builtin(omega);
    let levels = eqs
        .levels
        .iter()
        .map(|(k, l)| {
            let curves = match l {
                LevelParams::TangentLines { points } => points
                    .iter()
                    .map(|&(a, b)| {
                        let p = P1::new(crate::rational::Gq::from_int(a), crate::rational::Gq::from_int(b))
                            .expect("nonzero point");
                        BranchCurve::reduced(CurveGeom::TangentLine(p))
                    })
                    .collect(),
                _ => l
                    .forms()
                    .iter()
                    .flat_map(|&(a, b)| {
                        [
                            BranchCurve::reduced(CurveGeom::FiberH(P1::int(b))),
                            BranchCurve::reduced(CurveGeom::FiberV(P1::int(a))),
                        ]
                    })
                    .collect(),
            };
            let m = match eqs.construction {
                Construction::WeightedPlane => eqs.degrees[*k] / eqs.weights[3],
                _ => eqs.degrees[*k],
            };
            LevelSpec::new(m, curves)
        })
        .collect();
    Ok(TowerSpec { base: omega.base, omega, levels })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub valid: bool,
    /// Violations in the order checked; the first one is the primary witness.
    pub witnesses: Vec<String>,
}

fn weighted_degrees(p: &Poly, weights: &[u64]) -> Vec<u64> {
    let mut d: Vec<u64> = p
        .terms()
        .map(|(e, _)| e.iter().zip(weights).map(|(&k, &w)| k as u64 * w).sum())
        .collect();
    d.sort_unstable();
    d.dedup();
    d
}

fn check_params(eqs: &EquationSet, w: &mut Vec<String>) {
    let kind = match eqs.construction {
        Construction::Family(k) => Some(k),
        _ => None,
    };
    let a_vals: Vec<(usize, i64)> =
        eqs.levels.iter().filter_map(|(k, l)| l.quadric_a().map(|a| (*k, a))).collect();
    for (i, &(k1, a1)) in a_vals.iter().enumerate() {
        for &(k2, a2) in &a_vals[i + 1..] {
            if a1 == a2 {
                w.push(format!("a = {a1} repeated in equations {k1} and {k2}"));
            }
            if kind == Some(FamilyKind::FamC) && a1 == -a2 {
                w.push(format!("a = {a1} in equation {k1} is minus a = {a2} in equation {k2}"));
            }
            if kind == Some(FamilyKind::FamA) && (a1 - a2).abs() == 1 {
                w.push(format!("a = {a1} in equation {k1} and a = {a2} in equation {k2} differ by 1"));
            }
        }
    }
    if kind == Some(FamilyKind::FamC) && a_vals.iter().any(|&(_, a)| a == 0) {
        w.push("a = 0 makes both forms of a double cover equal".into());
    }

    // b, c avoidance against the a's
    for (k, l) in &eqs.levels {
        let LevelParams::Fibers { forms } = l else { continue };
        if !matches!(kind, Some(FamilyKind::FamA) | Some(FamilyKind::FamC)) {
            continue;
        }
        for (j, &(b, c)) in forms.iter().enumerate() {
            for &(_, a) in &a_vals {
                let bad: Vec<i64> = if kind == Some(FamilyKind::FamA) { vec![a, a - 1, a + 1] } else { vec![a, -a] };
                for (name, v) in [("b", b), ("c", c)] {
                    if bad.contains(&v) {
                        w.push(format!("{name} = {v} (equation {k}, factor {}) is forbidden by a = {a}", j + 1));
                    }
                }
            }
        }
    }

    match eqs.construction {
        Construction::Family(FamilyKind::FamB) | Construction::WeightedPlane => {
            let pts: Vec<(usize, (i64, i64))> =
                eqs.levels.iter().flat_map(|(k, l)| l.forms().into_iter().map(move |p| (*k, p))).collect();
            for (i, &(k1, (a1, b1))) in pts.iter().enumerate() {
                if a1 == 0 && b1 == 0 {
                    w.push(format!("[0:0] in equation {k1}"));
                }
                for &(k2, (a2, b2)) in &pts[i + 1..] {
                    if a1 * b2 == a2 * b1 {
                        w.push(format!("[{a1}:{b1}] (equation {k1}) equals [{a2}:{b2}] (equation {k2})"));
                    }
                }
            }
        }
        _ => {
            // fibers: x = B, w = A
            let mut hs: Vec<(usize, i64)> = Vec::new();
            let mut vs: Vec<(usize, i64)> = Vec::new();
            for (k, l) in &eqs.levels {
                for (a, b) in l.forms() {
                    hs.push((*k, b));
                    vs.push((*k, a));
                }
            }
            for (label, list) in [("x", &hs), ("w", &vs)] {
                for (i, &(k1, v1)) in list.iter().enumerate() {
                    for &(k2, v2) in &list[i + 1..] {
                        if v1 == v2 {
                            w.push(format!("fiber {label} = {v1} appears in equations {k1} and {k2}"));
                        }
                    }
                }
            }
            let diag_offsets: Option<Vec<i64>> = match kind {
                Some(FamilyKind::FamA) => Some(vec![-1, 0, 1, 2]),
                Some(FamilyKind::FamC) => Some(vec![0]),
                _ => None,
            };
            if let Some(offsets) = diag_offsets {
                for &(k1, x) in &hs {
                    for &(k2, y) in &vs {
                        if k1 == k2 {
                            continue;
                        }
                        let on_diag = offsets.contains(&(x - y));
                        let on_anti = kind == Some(FamilyKind::FamC) && x + y == 0;
                        if on_diag || on_anti {
                            w.push(format!(
                                "fibers x = {x} (equation {k1}) and w = {y} (equation {k2}) meet on a factor curve"
                            ));
                        }
                    }
                }
            }
        }
    }
}

pub fn validate_family(eqs: &EquationSet) -> Validation {
    let mut w = Vec::new();
    check_params(eqs, &mut w);

    if eqs.equations.len() != eqs.degrees.len() {
        w.push(format!("{} equations for {} degrees", eqs.equations.len(), eqs.degrees.len()));
    }
    let mut weights = eqs.weights.clone();
    weights.resize(eqs.variables.len(), 0);
    for (k, (p, &d)) in eqs.equations.iter().zip(&eqs.degrees).enumerate() {
        let ds = weighted_degrees(p, &weights);
        if ds != vec![d] {
            w.push(format!("equation {k} has degrees {ds:?}, expected {d}"));
        }
    }
    let nv = eqs.variables.len();
    if let Some(q) = eqs.quadric {
        if eqs.equations.get(q) != Some(&quadric(nv)) {
            w.push(format!("equation {q} is not z0*z3 - z1*z2"));
        }
    }
    let plane = matches!(eqs.construction, Construction::Family(FamilyKind::FamB) | Construction::WeightedPlane);
    let nc = eqs.n_coords();
    for (i, (k, level)) in eqs.levels.iter().enumerate() {
        let Some(eq) = eqs.equations.get(*k) else { continue };
        let d = eqs.degrees[*k];
        let forms = level.forms();
        if forms.len() as u64 != d {
            w.push(format!("equation {k} has {} branch forms for degree {d}", forms.len()));
        }
        let linear: Vec<Poly> = forms
            .iter()
            .map(|&p| if plane { tangent_form(nv, p) } else { quadric_form(nv, p) })
            .collect();
        let branch = product(linear.iter().cloned(), nv);
        let wv = Poly::var(nv, nc - eqs.levels.len() + i);
        let w_exp = if eqs.construction == Construction::WeightedPlane { d / eqs.weights[3] } else { d };
        let mut expected = branch.sub(&wv.pow(w_exp as u32));
        if let Some(t) = eqs.parameters.get(i) {
            let ti = eqs.variables.iter().position(|v| v == t).expect("parameter variable");
            let g = eq.coefficient(ti, 1);
            if g.is_zero() {
                w.push(format!("equation {k} has no perturbation term"));
            }
            for (j, l) in linear.iter().enumerate() {
                if !g.is_zero() && g.divisible_by_linear(l) {
                    w.push(format!("perturbation of equation {k} is divisible by branch form {}", j + 1));
                }
            }
            expected = expected.add(&Poly::var(nv, ti).mul(&g));
        }
        if &expected != eq {
            w.push(format!("equation {k} does not match its parameters"));
        }
    }
    Validation { valid: w.is_empty(), witnesses: w }
}

pub fn base_of(eqs: &EquationSet) -> BaseSurface {
    match eqs.construction {
        Construction::Family(FamilyKind::FamB) | Construction::WeightedPlane => BaseSurface::P2,
        _ => BaseSurface::P1xP1,
    }
}
