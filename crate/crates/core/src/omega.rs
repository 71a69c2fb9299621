//! Built-in symmetric differentials omega in H^0(L ⊗ S^r Ω).

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{CurveGeom, P1};
use crate::lattice::{BaseSurface, DivClass};
use crate::rational::Gq;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaId {
    /// dx dw on P1xP1, L = (2,2).
    Fiber22,
    /// (x^2 - w^2) dx dw, L = (4,4).
    FiberDiag44,
    /// (x-w)(x-w+1)(x-w-1)(x-w-2) dx dw, L = (6,6).
    FiberDiag66,
    /// dx^2 - y dx dy + x dy^2 on P2, L = O(4).
    TangentConic4,
    /// The section vanishing on C_i, L = (3,3).
    Cuboid33(u8),
}

impl OmegaId {
    pub const ALL: [OmegaId; 8] = [
        OmegaId::Fiber22,
        OmegaId::FiberDiag44,
        OmegaId::FiberDiag66,
        OmegaId::TangentConic4,
        OmegaId::Cuboid33(0),
        OmegaId::Cuboid33(1),
        OmegaId::Cuboid33(2),
        OmegaId::Cuboid33(3),
    ];

    pub fn parse(s: &str) -> Result<OmegaId> {
        OmegaId::ALL
            .into_iter()
            .find(|id| id.to_string() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown omega id {s:?}")))
    }
}

impl fmt::Display for OmegaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaId::Fiber22 => f.write_str("FIBER_22"),
            OmegaId::FiberDiag44 => f.write_str("FIBER_DIAG_44"),
            OmegaId::FiberDiag66 => f.write_str("FIBER_DIAG_66"),
            OmegaId::TangentConic4 => f.write_str("TANGENT_CONIC_4"),
            OmegaId::Cuboid33(i) => write!(f, "CUBOID_33_{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum IntegralFamily {
    FibersH,
    FibersV,
    TangentLines,
    Curve(CurveGeom),
}

impl IntegralFamily {
    pub fn contains(&self, c: &CurveGeom) -> bool {
        match self {
            IntegralFamily::FibersH => matches!(c, CurveGeom::FiberH(_)),
            IntegralFamily::FibersV => matches!(c, CurveGeom::FiberV(_)),
            IntegralFamily::TangentLines => matches!(c, CurveGeom::TangentLine(_)),
            IntegralFamily::Curve(g) => g.same_curve(c),
        }
    }

    /// Member of a one-parameter family with parameter [k:1].
    pub fn member(&self, k: i64) -> Option<CurveGeom> {
        match self {
            IntegralFamily::FibersH => Some(CurveGeom::FiberH(P1::int(k))),
            IntegralFamily::FibersV => Some(CurveGeom::FiberV(P1::int(k))),
            IntegralFamily::TangentLines => Some(CurveGeom::TangentLine(P1::int(k))),
            IntegralFamily::Curve(_) => None,
        }
    }
}

impl fmt::Display for IntegralFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegralFamily::FibersH => f.write_str("FIBER_H(*)"),
            IntegralFamily::FibersV => f.write_str("FIBER_V(*)"),
            IntegralFamily::TangentLines => f.write_str("LINE_TANGENT(*)"),
            IntegralFamily::Curve(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSpec {
    pub id: OmegaId,
    pub base: BaseSurface,
    pub l: DivClass,
    pub r: u32,
    pub integral_families: Vec<IntegralFamily>,
    /// Curves along which every coefficient of omega vanishes.
    pub factor_curves: Vec<CurveGeom>,
    pub all_solutions_algebraic: bool,
}

impl OmegaSpec {
    pub fn builtin(id: OmegaId) -> OmegaSpec {
        let fibers = vec![IntegralFamily::FibersH, IntegralFamily::FibersV];
        let diag = |c: i64| CurveGeom::Diagonal(Gq::from_int(c));
        let (base, l, factor_curves, mut families) = match id {
            OmegaId::Fiber22 => (BaseSurface::P1xP1, [2, 2], vec![], fibers),
            OmegaId::FiberDiag44 => (
                BaseSurface::P1xP1,
                [4, 4],
                vec![diag(0), CurveGeom::AntiDiagonal(Gq::zero())],
                fibers,
            ),
            OmegaId::FiberDiag66 => {
                (BaseSurface::P1xP1, [6, 6], vec![diag(0), diag(-1), diag(1), diag(2)], fibers)
            }
            OmegaId::Cuboid33(i) => (BaseSurface::P1xP1, [3, 3], vec![CurveGeom::CuboidC(i)], fibers),
            OmegaId::TangentConic4 => {
                let spec = OmegaSpec {
                    id,
                    base: BaseSurface::P2,
                    l: DivClass::from_ints(&[4]),
                    r: 2,
                    integral_families: vec![IntegralFamily::TangentLines, IntegralFamily::Curve(CurveGeom::Conic)],
                    factor_curves: vec![],
                    all_solutions_algebraic: true,
                };
                return spec;
            }
        };
        families.extend(factor_curves.iter().cloned().map(IntegralFamily::Curve));
        OmegaSpec {
            id,
            base,
            l: DivClass::from_ints(&l),
            r: 2,
            integral_families: families,
            factor_curves,
            all_solutions_algebraic: true,
        }
    }

    pub fn is_integral(&self, c: &CurveGeom) -> bool {
        self.integral_families.iter().any(|f| f.contains(c))
    }

    /// Isolated integral curves (not members of a moving family).
    pub fn special_curves(&self) -> Vec<CurveGeom> {
        self.integral_families
            .iter()
            .filter_map(|f| match f {
                IntegralFamily::Curve(c) => Some(c.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn is_factor_curve(&self, c: &CurveGeom) -> bool {
        self.factor_curves.iter().any(|f| f.same_curve(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in OmegaId::ALL {
            assert_eq!(OmegaId::parse(&id.to_string()).unwrap(), id);
        }
        assert!(OmegaId::parse("FIBER_23").is_err());
    }

    #[test]
    fn builtins_live_on_their_base() {
        for id in OmegaId::ALL {
            let w = OmegaSpec::builtin(id);
            assert_eq!(w.l.rank(), w.base.picard_rank());
            for c in w.special_curves() {
                assert_eq!(c.base(), w.base);
                assert!(w.is_integral(&c));
            }
        }
    }

    #[test]
    fn integrality() {
        let w = OmegaSpec::builtin(OmegaId::FiberDiag66);
        assert!(w.is_integral(&CurveGeom::FiberH(P1::int(7))));
        assert!(w.is_integral(&CurveGeom::Diagonal(Gq::from_int(2))));
        assert!(!w.is_integral(&CurveGeom::Diagonal(Gq::from_int(3))));
        let c = OmegaSpec::builtin(OmegaId::Cuboid33(0));
        assert!(c.is_integral(&CurveGeom::AntiDiagonal(Gq::zero())));
        assert!(!c.is_integral(&CurveGeom::CuboidC(1)));
    }
}
