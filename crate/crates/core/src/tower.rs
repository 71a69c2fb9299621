//! Towers X_n -> ... -> X_1 -> X_0 of cyclic covers branched along
//! omega-integral curves.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result, ValidationError};
use crate::geometry::{intersect_curves, CurveGeom, Point};
use crate::hjsing::{resolution_data, sing_from_node, SingularityType};
use crate::lattice::{canonical_class, intersect, BaseSurface, DivClass};
use crate::omega::OmegaSpec;
use crate::rational::{rat, ratio, serialize_rationals, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchCurve {
    pub geom: CurveGeom,
    pub a: u64,
}

impl BranchCurve {
    pub fn new(geom: CurveGeom, a: u64) -> Self {
        BranchCurve { geom, a }
    }

    pub fn reduced(geom: CurveGeom) -> Self {
        BranchCurve { geom, a: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSpec {
    pub m: u64,
    pub curves: Vec<BranchCurve>,
}

impl LevelSpec {
    pub fn new(m: u64, curves: Vec<BranchCurve>) -> Self {
        LevelSpec { m, curves }
    }

    /// Sum of the classes of the branch curves, ignoring multiplicities.
    pub fn branch_class(&self, base: BaseSurface) -> DivClass {
        self.curves.iter().fold(DivClass::zero(base), |acc, c| &acc + &c.geom.class())
    }

    /// Sum of a_j D_j.
    pub fn weighted_class(&self, base: BaseSurface) -> DivClass {
        self.curves
            .iter()
            .fold(DivClass::zero(base), |acc, c| &acc + &c.geom.class().scale(&rat(c.a as i64)))
    }

    /// M with m M = sum a_j D_j.
    pub fn bundle_class(&self, base: BaseSurface) -> DivClass {
        self.weighted_class(base).scale(&ratio(1, self.m as i64))
    }

    pub fn all_reduced(&self) -> bool {
        self.curves.iter().all(|c| c.a == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerSpec {
    pub base: BaseSurface,
    pub omega: OmegaSpec,
    pub levels: Vec<LevelSpec>,
}

/// Position of a branch curve: 1-based level, 0-based index within it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CurveRef {
    pub level: usize,
    pub index: usize,
}

/// A point where at least two branch curves meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Meeting {
    pub point: Point,
    pub branches: Vec<CurveRef>,
    /// Local intersection multiplicity of the first two branches.
    pub tangency: u32,
    /// Isolated integral curves of omega through the point that are not branch curves.
    pub on_curves: Vec<CurveGeom>,
    /// Factor curves of omega through the point, other than the branches themselves.
    pub factor_count: usize,
}

impl Meeting {
    pub fn is_same_level(&self) -> bool {
        self.branches.len() == 2 && self.branches[0].level == self.branches[1].level
    }
}

/// A branch curve meeting an isolated integral curve that is not itself branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub point: Point,
    pub branch: CurveRef,
    pub curve: CurveGeom,
    pub tangency: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NodeKind {
    SameLevel,
    CrossLevel,
    Incidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeRecord {
    pub kind: NodeKind,
    /// Levels of the two curves; 0 stands for a non-branch integral curve.
    pub level_pair: (usize, usize),
    pub count: u64,
    pub local_mults: (u64, u64),
    pub tangency: u32,
    pub on_curves: Vec<String>,
    /// Singularity type for same-level nodes.
    pub singularity: Option<SingularityType>,
}

#[derive(Clone, Debug)]
pub struct Tower {
    spec: TowerSpec,
    degrees: Vec<u64>,
    bundles: Vec<DivClass>,
    meetings: Vec<Meeting>,
    incidences: Vec<Incidence>,
    snc_violations: Vec<String>,
}

fn validate(spec: &TowerSpec) -> std::result::Result<Vec<DivClass>, ValidationError> {
    if spec.omega.base != spec.base {
        return Err(ValidationError::OmegaBase {
            omega: spec.omega.id.to_string(),
            omega_base: spec.omega.base.to_string(),
            base: spec.base.to_string(),
        });
    }
    if spec.levels.is_empty() {
        return Err(ValidationError::NoLevels);
    }
    let mut seen: Vec<(usize, usize, &CurveGeom)> = Vec::new();
    let mut bundles = Vec::new();
    for (li, level) in spec.levels.iter().enumerate() {
        if level.m < 2 {
            return Err(ValidationError::Degree { level: li, m: level.m });
        }
        if level.curves.is_empty() {
            return Err(ValidationError::EmptyLevel { level: li });
        }
        for (ci, c) in level.curves.iter().enumerate() {
            if c.geom.base() != spec.base {
                return Err(ValidationError::WrongBase {
                    level: li,
                    curve: ci,
                    geom: c.geom.to_string(),
                    base: spec.base.to_string(),
                });
            }
            if c.a == 0 || c.a >= level.m || c.a.gcd(&level.m) != 1 {
                return Err(ValidationError::Multiplicity { level: li, curve: ci, a: c.a, m: level.m });
            }
            if let Some(&(fl, fc, _)) = seen.iter().find(|(_, _, g)| g.same_curve(&c.geom)) {
                return Err(ValidationError::Duplicate {
                    level: li,
                    curve: ci,
                    geom: c.geom.to_string(),
                    first_level: fl,
                    first_curve: fc,
                });
            }
            seen.push((li, ci, &c.geom));
            if !spec.omega.is_integral(&c.geom) {
                return Err(ValidationError::NotIntegral {
                    level: li,
                    curve: ci,
                    geom: c.geom.to_string(),
                    omega: spec.omega.id.to_string(),
                });
            }
        }
        let bundle = level.bundle_class(spec.base);
        if !bundle.is_integral() {
            return Err(ValidationError::NonIntegralBundle {
                level: li,
                m: level.m,
                class: level.weighted_class(spec.base).to_string(),
            });
        }
        bundles.push(bundle);
    }
    Ok(bundles)
}

pub fn build_tower(spec: TowerSpec) -> Result<Tower> {
    let bundles = validate(&spec)?;
    let mut degrees = vec![1u64];
    for level in &spec.levels {
        let last = *degrees.last().expect("nonempty");
        degrees.push(last * level.m);
    }

    let refs: Vec<(CurveRef, &BranchCurve)> = spec
        .levels
        .iter()
        .enumerate()
        .flat_map(|(li, l)| {
            l.curves.iter().enumerate().map(move |(ci, c)| (CurveRef { level: li + 1, index: ci }, c))
        })
        .collect();

    let mut meetings: Vec<Meeting> = Vec::new();
    let mut at: HashMap<Point, usize> = HashMap::new();
    for (i, (r1, c1)) in refs.iter().enumerate() {
        for (r2, c2) in &refs[i + 1..] {
            for (p, mult) in intersect_curves(&c1.geom, &c2.geom)? {
                let k = *at.entry(p.clone()).or_insert_with(|| {
                    meetings.push(Meeting {
                        point: p.clone(),
                        branches: vec![],
                        tangency: mult,
                        on_curves: vec![],
                        factor_count: 0,
                    });
                    meetings.len() - 1
                });
                let m = &mut meetings[k];
                for r in [*r1, *r2] {
                    if !m.branches.contains(&r) {
                        m.branches.push(r);
                    }
                }
            }
        }
    }

    let is_branch = |g: &CurveGeom| refs.iter().any(|(_, c)| c.geom.same_curve(g));
    let specials: Vec<CurveGeom> =
        spec.omega.special_curves().into_iter().filter(|g| !is_branch(g)).collect();

    let mut snc_violations = Vec::new();
    for m in &mut meetings {
        m.on_curves = specials.iter().filter(|s| s.contains(&m.point)).cloned().collect();
        let branch_geoms: Vec<&CurveGeom> =
            m.branches.iter().map(|r| &spec.levels[r.level - 1].curves[r.index].geom).collect();
        m.factor_count = spec
            .omega
            .factor_curves
            .iter()
            .filter(|f| f.contains(&m.point) && !branch_geoms.iter().any(|g| g.same_curve(f)))
            .count();
        if m.branches.len() > 2 {
            let names: Vec<String> = branch_geoms.iter().map(|g| g.to_string()).collect();
            snc_violations.push(format!("{} branch curves meet at {}: {}", names.len(), m.point, names.join(", ")));
        } else if m.tangency > 1 {
            snc_violations.push(format!(
                "{} and {} are tangent at {} (multiplicity {})",
                branch_geoms[0], branch_geoms[1], m.point, m.tangency
            ));
        }
    }

    let mut incidences = Vec::new();
    for s in &specials {
        for (r, c) in &refs {
            for (p, mult) in intersect_curves(s, &c.geom)? {
                incidences.push(Incidence { point: p, branch: *r, curve: s.clone(), tangency: mult });
            }
        }
    }

    Ok(Tower { spec, degrees, bundles, meetings, incidences, snc_violations })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExceptionalBlock {
    pub singularity: SingularityType,
    /// Number of such singular points in the top floor.
    pub points: u64,
    /// Coefficients (alpha_k + beta_k)/m of E_1..E_s.
    #[serde(serialize_with = "serialize_rationals")]
    pub coefficients: Vec<Rational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelRamification {
    pub level: usize,
    pub m: u64,
    pub branch_class: DivClass,
    pub exceptional: Vec<ExceptionalBlock>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RamificationReport {
    pub levels: Vec<LevelRamification>,
    /// sum_i (1/m_i) sum_j D_{i,j}; pulls back to R + (weighted) E.
    pub aggregate_class: DivClass,
    /// Every exceptional coefficient equals 1, so the aggregate pulls back to R + E.
    pub reduces_to_r_plus_e: bool,
}

impl Tower {
    pub fn spec(&self) -> &TowerSpec {
        &self.spec
    }

    pub fn base(&self) -> BaseSurface {
        self.spec.base
    }

    pub fn omega(&self) -> &OmegaSpec {
        &self.spec.omega
    }

    pub fn levels(&self) -> &[LevelSpec] {
        &self.spec.levels
    }

    pub fn n_levels(&self) -> usize {
        self.spec.levels.len()
    }

    /// m_level, 1-based.
    pub fn m(&self, level: usize) -> u64 {
        self.spec.levels[level - 1].m
    }

    pub fn total_degree(&self) -> u64 {
        *self.degrees.last().expect("nonempty")
    }

    /// deg g_k for k = 0..=n.
    pub fn degree_at(&self, k: usize) -> u64 {
        self.degrees[k]
    }

    pub fn bundle_class(&self, level: usize) -> &DivClass {
        &self.bundles[level - 1]
    }

    pub fn curve(&self, r: CurveRef) -> &BranchCurve {
        &self.spec.levels[r.level - 1].curves[r.index]
    }

    pub fn branch_curves(&self) -> impl Iterator<Item = (CurveRef, &BranchCurve)> {
        self.spec.levels.iter().enumerate().flat_map(|(li, l)| {
            l.curves.iter().enumerate().map(move |(ci, c)| (CurveRef { level: li + 1, index: ci }, c))
        })
    }

    pub fn find_branch(&self, g: &CurveGeom) -> Option<CurveRef> {
        self.branch_curves().find(|(_, c)| c.geom.same_curve(g)).map(|(r, _)| r)
    }

    pub fn meetings(&self) -> &[Meeting] {
        &self.meetings
    }

    pub fn incidences(&self) -> &[Incidence] {
        &self.incidences
    }

    pub fn snc_violations(&self) -> &[String] {
        &self.snc_violations
    }

    pub fn snc_ok(&self) -> bool {
        self.snc_violations.is_empty()
    }

    /// Same-level nodes with their singularity types (axis order as declared).
    pub fn same_level_nodes(&self) -> impl Iterator<Item = (&Meeting, SingularityType)> {
        self.meetings.iter().filter(|m| m.is_same_level()).map(move |m| {
            let (u, v) = (self.curve(m.branches[0]), self.curve(m.branches[1]));
            let level = m.branches[0].level;
            let sing = sing_from_node(u.a, v.a, self.m(level)).expect("validated multiplicities");
            (m, sing)
        })
    }

    /// Number of points of the top floor over a same-level node at `level`.
    pub fn preimages_of_node(&self, level: usize) -> u64 {
        self.total_degree() / self.m(level)
    }

    pub fn node_inventory(&self) -> Result<Vec<NodeRecord>> {
        if !self.snc_ok() {
            return Err(Error::Snc(self.snc_violations.join("; ")));
        }
        type Key = (NodeKind, (usize, usize), (u64, u64), u32, Vec<String>, Option<SingularityType>);
        let mut groups: BTreeMap<Key, u64> = BTreeMap::new();
        for m in &self.meetings {
            let (r1, r2) = (m.branches[0], m.branches[1]);
            let (a1, a2) = (self.curve(r1).a, self.curve(r2).a);
            let same = r1.level == r2.level;
            let kind = if same { NodeKind::SameLevel } else { NodeKind::CrossLevel };
            let sing = if same {
                Some(sing_from_node(a1, a2, self.m(r1.level)).expect("validated").canonical())
            } else {
                None
            };
            let (lo, hi) = if r1.level <= r2.level { ((r1.level, a1), (r2.level, a2)) } else { ((r2.level, a2), (r1.level, a1)) };
            let mults = if same { (a1.min(a2), a1.max(a2)) } else { (lo.1, hi.1) };
            let on: Vec<String> = m.on_curves.iter().map(|c| c.to_string()).collect();
            *groups.entry((kind, (lo.0, hi.0), mults, m.tangency, on, sing)).or_default() += 1;
        }
        for inc in &self.incidences {
            let a = self.curve(inc.branch).a;
            let key = (NodeKind::Incidence, (0, inc.branch.level), (0, a), inc.tangency, vec![inc.curve.to_string()], None);
            *groups.entry(key).or_default() += 1;
        }
        Ok(groups
            .into_iter()
            .map(|((kind, level_pair, local_mults, tangency, on_curves, singularity), count)| NodeRecord {
                kind,
                level_pair,
                count,
                local_mults,
                tangency,
                on_curves,
                singularity,
            })
            .collect())
    }

    /// Singular points of the top floor by (canonical) type.
    pub fn singularity_inventory(&self) -> BTreeMap<SingularityType, u64> {
        let mut inv = BTreeMap::new();
        for (m, sing) in self.same_level_nodes() {
            *inv.entry(sing.canonical()).or_insert(0) += self.preimages_of_node(m.branches[0].level);
        }
        inv
    }

    /// Are all singularities of X_k Gorenstein (A-series)?
    pub fn gorenstein_up_to(&self, k: usize) -> bool {
        self.same_level_nodes().all(|(m, s)| m.branches[0].level > k || s.is_a_type())
    }

    pub fn ramification_decomposition(&self) -> RamificationReport {
        let base = self.base();
        let mut levels = Vec::new();
        let mut aggregate = DivClass::zero(base);
        let mut all_one = true;
        for (li, level) in self.spec.levels.iter().enumerate() {
            let mut blocks: BTreeMap<SingularityType, (u64, Vec<Rational>)> = BTreeMap::new();
            for (m, sing) in self.same_level_nodes().filter(|(m, _)| m.branches[0].level == li + 1) {
                let data = resolution_data(sing);
                let coeffs: Vec<Rational> = (1..=data.len())
                    .map(|k| ratio(data.alpha[k] + data.beta[k], level.m as i64))
                    .collect();
                all_one &= coeffs.iter().all(|c| c.is_one());
                let e = blocks.entry(sing).or_insert((0, coeffs));
                e.0 += self.preimages_of_node(m.branches[0].level);
            }
            let branch_class = level.branch_class(base);
            aggregate = &aggregate + &branch_class.scale(&ratio(1, level.m as i64));
            levels.push(LevelRamification {
                level: li + 1,
                m: level.m,
                branch_class,
                exceptional: blocks
                    .into_iter()
                    .map(|(singularity, (points, coefficients))| ExceptionalBlock { singularity, points, coefficients })
                    .collect(),
            });
        }
        RamificationReport { levels, aggregate_class: aggregate, reduces_to_r_plus_e: all_one }
    }

    /// g_k^* c1 . g_k^* c2 on X_k.
    pub fn pullback_intersection(&self, k: usize, c1: &DivClass, c2: &DivClass) -> Result<Rational> {
        Ok(intersect(self.base(), c1, c2)? * rat(self.degree_at(k) as i64))
    }

    /// K_{X_k} as the pull-back of a Q-class on the base.
    pub fn canonical_class(&self, k: usize) -> DivClass {
        let base = self.base();
        self.spec.levels[..k].iter().fold(canonical_class(base), |acc, l| {
            &acc + &l.branch_class(base).scale(&ratio(l.m as i64 - 1, l.m as i64))
        })
    }

    /// (m, n) if this is an equal-degree fiber tower: every level has degree m
    /// and consists of m horizontal and m vertical fibers with a = 1.
    pub fn fiber_family(&self) -> Option<(u64, usize)> {
        if self.base() != BaseSurface::P1xP1 {
            return None;
        }
        let m = self.spec.levels[0].m;
        let ok = self.spec.levels.iter().all(|l| {
            let h = l.curves.iter().filter(|c| matches!(c.geom, CurveGeom::FiberH(_))).count();
            let v = l.curves.iter().filter(|c| matches!(c.geom, CurveGeom::FiberV(_))).count();
            l.m == m && l.all_reduced() && h as u64 == m && v as u64 == m && h + v == l.curves.len()
        });
        ok.then_some((m, self.n_levels()))
    }
}

/// M^(i) = i M - sum_j floor(a_j i / m) D_j for i = 0..m-1.
pub fn normalization_bundle_classes(level: &LevelSpec, m_class: &DivClass) -> Vec<DivClass> {
    (0..level.m)
        .map(|i| {
            level.curves.iter().fold(m_class.scale(&rat(i as i64)), |acc, c| {
                let k = (c.a * i) / level.m;
                if k == 0 {
                    acc
                } else {
                    &acc - &c.geom.class().scale(&rat(k as i64))
                }
            })
        })
        .collect()
}
