//! Ready-made towers.

use crate::error::{Error, Result};
use crate::geometry::{CurveGeom, P1};
use crate::lattice::BaseSurface;
use crate::omega::{OmegaId, OmegaSpec};
use crate::rational::Gq;
use crate::tower::{BranchCurve, LevelSpec, TowerSpec};

fn fibers(h: &[P1], v: &[P1]) -> Vec<BranchCurve> {
    h.iter()
        .map(|p| BranchCurve::reduced(CurveGeom::FiberH(p.clone())))
        .chain(v.iter().map(|p| BranchCurve::reduced(CurveGeom::FiberV(p.clone()))))
        .collect()
}

/// The surface of cuboids: three double covers branched along the fibers
/// over {±1}, {±i} and {0, inf} in both rulings.
pub fn cuboid_spec() -> TowerSpec {
    let pts = |a: P1, b: P1| [a, b];
    let one = P1::int(1);
    let levels = [
        pts(one.clone(), P1::int(-1)),
        pts(P1::affine(Gq::i()), P1::affine(-Gq::i())),
        pts(P1::int(0), P1::infinity()),
    ]
    .into_iter()
    .map(|p| LevelSpec::new(2, fibers(&p, &p)))
    .collect();
    TowerSpec { base: BaseSurface::P1xP1, omega: OmegaSpec::builtin(OmegaId::Fiber22), levels }
}

/// n levels of degree m, level k branched along m horizontal and m vertical
/// fibers over the integers (k-1)m+1 ..= km.
pub fn generalized_cuboid_spec(m: u64, n: usize) -> TowerSpec {
    fiber_tower_spec(&vec![m; n], OmegaId::Fiber22)
}

/// Fiber tower with prescribed degrees, all multiplicities 1.
pub fn fiber_tower_spec(degrees: &[u64], omega: OmegaId) -> TowerSpec {
    let mut next = 1i64;
    let levels = degrees
        .iter()
        .map(|&m| {
            let pts: Vec<P1> = (next..next + m as i64).map(P1::int).collect();
            next += m as i64;
            LevelSpec::new(m, fibers(&pts, &pts))
        })
        .collect();
    TowerSpec { base: BaseSurface::P1xP1, omega: OmegaSpec::builtin(omega), levels }
}

/// One cyclic cover of degree m of P2 branched along d tangent lines to the
/// conic, L_[i:1] for i = 1..=d, all with multiplicity 1.
pub fn tangent_lines_spec(d: u64, m: u64) -> Result<TowerSpec> {
    if m < 2 || !d.is_multiple_of(m) {
        return Err(Error::Domain(format!("{d} tangent lines do not form a degree-{m} branch divisor")));
    }
    let curves = (1..=d as i64).map(|i| BranchCurve::reduced(CurveGeom::TangentLine(P1::int(i)))).collect();
    Ok(TowerSpec {
        base: BaseSurface::P2,
        omega: OmegaSpec::builtin(OmegaId::TangentConic4),
        levels: vec![LevelSpec::new(m, curves)],
    })
}
