use hypersurf::certify::*;
use hypersurf::genfam::{family_tower_spec, instantiate_family, FamilyKind};
use hypersurf::geometry::{CurveGeom, P1};
use hypersurf::kummer::kummer_preimage;
use hypersurf::lattice::DivClass;
use hypersurf::omega::OmegaId;
use hypersurf::presets::{cuboid_spec, fiber_tower_spec, generalized_cuboid_spec, tangent_lines_spec};
use hypersurf::rational::{rat, ratio};
use hypersurf::tower::build_tower;
use proptest::prelude::*;

/// 2g - 2 = m^{k-1}((m-1)(k-1) - 2), solved for g.
fn branch_genus_oracle(m: i64, k: u32) -> i64 {
    let two_g_minus_two = m.pow(k - 1) * ((m - 1) * (k as i64 - 1) - 2);
    two_g_minus_two / 2 + 1
}

#[test]
fn branch_component_genus_sweep() {
    for m in 2..=6u64 {
        for n in 1..=6usize {
            let t = build_tower(fiber_tower_spec(&vec![m; n], OmegaId::Fiber22)).unwrap();
            for k in 1..=n {
                let geom = t.levels()[k - 1].curves[0].geom.clone();
                let below = trace_curve(&t, &geom, k - 1, CurveRole::Branch { level: k }).unwrap();
                assert_eq!(below.components, 1, "m={m} n={n} k={k}");
                assert_eq!(below.genus, branch_genus_oracle(m as i64, k as u32), "m={m} n={n} k={k}");
                assert!(below.manual.is_empty());
            }
        }
    }
}

#[test]
fn cuboid_traces() {
    let t = build_tower(cuboid_spec()).unwrap();
    let curves = classify_preimages(&t).unwrap();
    let fibers: Vec<_> = curves.iter().filter(|c| matches!(c.role, CurveRole::Branch { .. })).collect();
    assert_eq!(fibers.len(), 12);
    assert!(fibers.iter().all(|c| c.genus == 1 && c.components == 1));
    for i in 0..4 {
        let c = trace_curve(&t, &CurveGeom::CuboidC(i), 3, CurveRole::Special).unwrap();
        assert_eq!((c.components, c.genus), (8, 0), "C_{i}");
    }
}

#[test]
fn conic_over_fifteen_lines() {
    let t = build_tower(tangent_lines_spec(15, 3).unwrap()).unwrap();
    let c = trace_curve(&t, &CurveGeom::Conic, 1, CurveRole::Special).unwrap();
    assert_eq!((c.components, c.genus), (1, 13));
}

#[test]
fn generalized_cuboid_m3_n3_fibers() {
    let t = build_tower(generalized_cuboid_spec(3, 3)).unwrap();
    let curves = classify_preimages(&t).unwrap();
    for c in curves.iter().filter(|c| matches!(c.role, CurveRole::Branch { .. })) {
        assert_eq!(c.genus, 10, "{}", c.geom);
    }
    let v = verdict(&t).unwrap();
    assert!(v.exceptional_locus.is_empty());
}

#[test]
fn check_reports() {
    let t = build_tower(cuboid_spec()).unwrap();
    let r = check_hypotheses(&t);
    assert_eq!(r.criterion_class, DivClass::from_ints(&[1, 1]));
    assert!(r.ampleness_ok && r.snc_ok);
    assert!(!r.vanishing_ok);
    // every node has a + a' = 2, the excluded 1/2(1,1) shape
    assert!(!r.multiplicity_ok);
    assert_eq!(r.multiplicity_witnesses.len(), 12);
    assert!(!r.vanishing_witnesses.is_empty());

    let r = check_hypotheses(&build_tower(generalized_cuboid_spec(3, 3)).unwrap());
    assert!(r.all_ok());

    let r = check_hypotheses(&build_tower(tangent_lines_spec(15, 3).unwrap()).unwrap());
    assert_eq!(r.criterion_class, DivClass::from_ints(&[1]));
    assert!(r.all_ok());
}

#[test]
fn verdict_sweep() {
    for m in 3..=5u64 {
        for n in 3..=5usize {
            let v = verdict(&build_tower(generalized_cuboid_spec(m, n)).unwrap()).unwrap();
            assert_eq!(v.kind, VerdictKind::Hyperbolic, "m={m} n={n}");
        }
    }
    let v = verdict(&build_tower(cuboid_spec()).unwrap()).unwrap();
    assert_eq!(v.kind, VerdictKind::Inconclusive);
    assert!(!v.checks.vanishing_ok);

    let v = verdict(&build_tower(tangent_lines_spec(15, 3).unwrap()).unwrap()).unwrap();
    assert_eq!(v.kind, VerdictKind::QuasiHyperbolic);
    let mut locus: Vec<_> = v.exceptional_locus.iter().map(|e| (e.geom.clone(), e.genus)).collect();
    locus.sort();
    let mut expected: Vec<_> = (1..=15).map(|i| (format!("LINE_TANGENT({i})"), 0)).collect();
    expected.sort();
    assert_eq!(locus, expected);
}

#[test]
fn small_line_counts_fail_ampleness() {
    // d = 12, m = 3: criterion class O(0) is not ample
    let v = verdict(&build_tower(tangent_lines_spec(12, 3).unwrap()).unwrap()).unwrap();
    assert_eq!(v.kind, VerdictKind::Inconclusive);
    assert!(!v.checks.ampleness_ok);
}

#[test]
fn fam_a_without_higher_levels_leaves_rational_diagonal_components() {
    let eqs = instantiate_family(FamilyKind::FamA, &[2; 8]).unwrap();
    let t = build_tower(family_tower_spec(&eqs).unwrap()).unwrap();
    let v = verdict(&t).unwrap();
    assert_eq!(v.kind, VerdictKind::QuasiHyperbolic);
    let diag = v.curves.iter().find(|c| c.curve == CurveGeom::Diagonal(hypersurf::Gq::one())).unwrap();
    assert_eq!(diag.genus, 0);
    assert_eq!(diag.components, 128);
    assert!(diag.manual.contains(&ManualFlag::LowGenusThroughNodes));
}

#[test]
fn non_algebraic_omega_caps_verdict() {
    let mut spec = generalized_cuboid_spec(3, 3);
    spec.omega.all_solutions_algebraic = false;
    let v = verdict(&build_tower(spec).unwrap()).unwrap();
    assert_eq!(v.kind, VerdictKind::GenusBoundOnly);
}

#[test]
fn restriction_examples() {
    let g0 = CurveTrace::rational(vec![]);
    let t = cover_restriction(&g0, 2, &[1, 1]).unwrap();
    assert_eq!((t.components, t.genus), (1, 0));
    let t = cover_restriction(&g0, 2, &[2, 2]).unwrap();
    assert_eq!((t.components, t.genus), (2, 0));
    let t = cover_restriction(&g0, 3, &[2; 15]).unwrap();
    assert_eq!((t.components, t.genus), (1, 13));
    assert!(cover_restriction(&g0, 2, &[1]).is_err());
}

#[test]
fn fiber_preimage_matches_direct_riemann_hurwitz() {
    // level-1 fiber of the cuboid: 2g-2 = 2(-2) + 2 at level 2, then 2(0) + 4 at level 3
    let t = build_tower(cuboid_spec()).unwrap();
    let c = trace_curve(&t, &CurveGeom::FiberH(P1::int(1)), 3, CurveRole::Branch { level: 1 }).unwrap();
    assert_eq!(c.genus, 1);
    assert_eq!(c.degree_over_base_curve, 4);
}

#[derive(Debug, Clone)]
struct Data {
    ms: Vec<u64>,
    /// (level, exponent) per point
    points: Vec<(usize, u64)>,
}

fn data() -> impl Strategy<Value = Data> {
    prop::collection::vec(2u64..7, 1..4).prop_flat_map(|ms| {
        let n = ms.len();
        let raw = prop::collection::vec((0..n, 1u64..7), 1..10);
        (Just(ms), raw).prop_map(|(ms, raw)| {
            let mut points: Vec<(usize, u64)> = raw.into_iter().map(|(l, e)| (l, 1 + (e - 1) % (ms[l] - 1).max(1))).collect();
            // make each level's divisor degree divisible by m
            for (l, &m) in ms.iter().enumerate() {
                let s: u64 = points.iter().filter(|p| p.0 == l).map(|p| p.1).sum();
                let r = s % m;
                if r != 0 {
                    points.push((l, m - r));
                }
            }
            Data { ms, points }
        })
    })
}

proptest! {
    #[test]
    fn sequential_and_kummer_routes_agree(d in data()) {
        let marked: Vec<MarkedPoints> =
            d.points.iter().map(|&(l, e)| MarkedPoints { level: l + 1, exponent: e, count: 1 }).collect();
        let mut trace = CurveTrace::rational(marked);
        for (l, &m) in d.ms.iter().enumerate() {
            let (here, rest): (Vec<MarkedPoints>, Vec<MarkedPoints>) =
                trace.marked.iter().cloned().partition(|p| p.level == l + 1);
            let branch: Vec<u64> =
                here.iter().flat_map(|p| std::iter::repeat_n(p.exponent, p.count as usize)).collect();
            trace.marked = rest;
            trace = cover_restriction(&trace, m, &branch).unwrap();
            prop_assert!(trace.is_valid());
        }
        let exps: Vec<Vec<u64>> = d
            .points
            .iter()
            .map(|&(l, e)| (0..d.ms.len()).map(|j| if j == l { e } else { 0 }).collect())
            .collect();
        let k = kummer_preimage(&d.ms, &exps).unwrap();
        prop_assert_eq!((trace.components, trace.genus), (k.components, k.genus));
    }

    #[test]
    fn verdict_is_monotone_in_margin(m in 2u64..5, n in 1usize..4, num in 0i64..8, den in 1i64..4) {
        let t = build_tower(generalized_cuboid_spec(m, n)).unwrap();
        let base = verdict(&t).unwrap().kind;
        let weaker = verdict_with_margin(&t, &ratio(num, den)).unwrap().kind;
        prop_assert!(weaker <= base);
        let weakest = verdict_with_margin(&t, &(ratio(num, den) + rat(1))).unwrap().kind;
        prop_assert!(weakest <= weaker);
    }
}

