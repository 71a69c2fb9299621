//! Constants of the surface of cuboids X_3, the triple double cover of
//! P1xP1 branched over the fibers at {±1}, {±i}, {0, inf}.

use serde::Serialize;

use crate::certify::{classify_preimages, trace_curve, CurveRole};
use crate::error::{Error, Result};
use crate::geometry::CurveGeom;
use crate::hjsing::SingularityType;
use crate::presets::cuboid_spec;
use crate::tower::{build_tower, Tower};

/// Elliptic curves of X_3 that are not preimages of fibers; counted by a
/// symmetry argument rather than traced.
pub const ELLIPTIC_ORBIT_CURVES: u64 = 48;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeMembership {
    pub level: usize,
    pub node: String,
    /// Indices i with the node on C_i.
    pub curves: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionEntry {
    pub curve: u8,
    /// |E_i|: singular points over nodes on C_i.
    pub on: u64,
    /// |E_i'|: the remaining singular points.
    pub off: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveInventory {
    /// Components of the preimages of C_0..C_3 (all rational).
    pub rational: u64,
    /// Preimages of the twelve branch fibers.
    pub elliptic_fibers: u64,
    /// Counted by symmetry, not computed here.
    pub elliptic_orbit: u64,
    pub total: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuboidReport {
    pub sing_count: u64,
    pub singularity: SingularityType,
    pub node_membership: Vec<NodeMembership>,
    pub partition: Vec<PartitionEntry>,
    /// Every singular point lies in exactly two of E_0'..E_3'.
    pub sum_e_prime_is_2e: bool,
    /// deg C <= 4g + this for curves avoiding forced integrality.
    pub degree_bound_constant: i64,
    /// Lower bound for C.E_i' on a rational curve.
    pub per_curve_bound: i64,
    pub min_e_intersection: i64,
    pub curve_inventory: CurveInventory,
}

pub fn cuboid_tower() -> Tower {
    build_tower(cuboid_spec()).expect("cuboid spec is valid")
}

pub fn cuboid_report() -> Result<CuboidReport> {
    let t = cuboid_tower();
    let inv = t.singularity_inventory();
    let (&singularity, &sing_count) = match inv.iter().collect::<Vec<_>>().as_slice() {
        [one] => *one,
        _ => return Err(Error::Consistency(format!("expected one singularity type, got {inv:?}"))),
    };

    let nodes: Vec<_> = t.same_level_nodes().map(|(m, _)| m).collect();
    let node_membership: Vec<NodeMembership> = nodes
        .iter()
        .map(|m| NodeMembership {
            level: m.branches[0].level,
            node: m.point.to_string(),
            curves: (0..4u8).filter(|&i| CurveGeom::CuboidC(i).contains(&m.point)).collect(),
        })
        .collect();

    // singular point (node k, sheet j) with j < preimages of node k
    let sheets: Vec<u64> = nodes.iter().map(|m| t.preimages_of_node(m.branches[0].level)).collect();
    let total: u64 = sheets.iter().sum();
    if total != sing_count {
        return Err(Error::Consistency(format!("{total} singular points over nodes, inventory says {sing_count}")));
    }
    let mut partition = Vec::new();
    let mut e_prime_multiplicity = vec![0u64; nodes.len()];
    for i in 0..4u8 {
        let mut on = 0;
        for (k, nm) in node_membership.iter().enumerate() {
            if nm.curves.contains(&i) {
                on += sheets[k];
            } else {
                e_prime_multiplicity[k] += 1;
            }
        }
        partition.push(PartitionEntry { curve: i, on, off: sing_count - on });
    }
    let sum_e_prime_is_2e = e_prime_multiplicity.iter().all(|&c| c == 2);

    // C.E_i' >= -r(2g - 2) for rational C; summing over i counts E with
    // the uniform multiplicity of the E_i' cover
    let r = t.omega().r as i64;
    let genus = 0i64;
    let per_curve_bound = -r * (2 * genus - 2);
    let coverage = e_prime_multiplicity[0] as i64;
    if e_prime_multiplicity.iter().any(|&c| c as i64 != coverage) {
        return Err(Error::Consistency("E_i' do not cover the singular points uniformly".into()));
    }
    let min_e_intersection = 4 * per_curve_bound / coverage;

    let mut rational = 0;
    for i in 0..4u8 {
        let c = trace_curve(&t, &CurveGeom::CuboidC(i), t.n_levels(), CurveRole::Special)?;
        if c.genus != 0 {
            return Err(Error::Consistency(format!("C_{i} preimage has genus {}", c.genus)));
        }
        rational += c.components;
    }
    let elliptic_fibers = classify_preimages(&t)?
        .iter()
        .filter(|c| matches!(c.role, CurveRole::Branch { .. }) && c.genus == 1)
        .map(|c| c.components)
        .sum();

    Ok(CuboidReport {
        sing_count,
        singularity,
        node_membership,
        partition,
        sum_e_prime_is_2e,
        degree_bound_constant: sing_count as i64 - 4,
        per_curve_bound,
        min_e_intersection,
        curve_inventory: CurveInventory {
            rational,
            elliptic_fibers,
            elliptic_orbit: ELLIPTIC_ORBIT_CURVES,
            total: rational + elliptic_fibers + ELLIPTIC_ORBIT_CURVES,
        },
    })
}
