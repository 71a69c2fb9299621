//! Built-in curve geometries and their exact intersections.
//!
//! On P1xP1 a point is ([x:y], [w:z]); a scalar parameter v stands for [v:1]
//! and `inf` for [1:0]. On P2 the coordinates are [x:y:z], tangent lines to
//! the conic y^2 = 4xz are L_[t:u] = t^2 x + t u y + u^2 z.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{BaseSurface, DivClass};
use crate::rational::Gq;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1 {
    pub x: Gq,
    pub y: Gq,
}

impl P1 {
    pub fn new(x: Gq, y: Gq) -> Option<P1> {
        if y.is_zero() {
            if x.is_zero() {
                return None;
            }
            return Some(P1::infinity());
        }
        Some(P1 { x: &x / &y, y: Gq::one() })
    }

    pub fn affine(v: Gq) -> P1 {
        P1 { x: v, y: Gq::one() }
    }

    pub fn int(v: i64) -> P1 {
        P1::affine(Gq::from_int(v))
    }

    pub fn infinity() -> P1 {
        P1 { x: Gq::one(), y: Gq::zero() }
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// Affine value x/y, if finite.
    pub fn value(&self) -> Option<&Gq> {
        if self.is_infinity() {
            None
        } else {
            Some(&self.x)
        }
    }

    pub fn parse(s: &str) -> Result<P1> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(P1::infinity());
        }
        if let Some((a, b)) = t.split_once(':') {
            let a: Gq = a.parse()?;
            let b: Gq = b.parse()?;
            return P1::new(a, b).ok_or_else(|| Error::Parse(format!("[0:0] is not a point: {s:?}")));
        }
        Ok(P1::affine(t.parse()?))
    }
}

impl fmt::Display for P1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P2Point(pub [Gq; 3]);

impl P2Point {
    pub fn new(c: [Gq; 3]) -> Option<P2Point> {
        let lead = c.iter().find(|v| !v.is_zero())?.clone();
        Some(P2Point([&c[0] / &lead, &c[1] / &lead, &c[2] / &lead]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Quadric(P1, P1),
    Plane(P2Point),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Quadric(a, b) => write!(f, "({a}, {b})"),
            Point::Plane(P2Point([x, y, z])) => write!(f, "[{x}:{y}:{z}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveGeom {
    /// {[x:y] = p}, class (1,0).
    FiberH(P1),
    /// {[w:z] = p}, class (0,1).
    FiberV(P1),
    /// x - w = c.
    Diagonal(Gq),
    /// x + w = c.
    AntiDiagonal(Gq),
    /// C_0 = xz + yw, C_1 = yw - xz, C_2 = yz - xw, C_3 = xw + yz.
    CuboidC(u8),
    TangentLine(P1),
    /// y^2 = 4xz.
    Conic,
}

/// Bilinear form A xw + B xz + C yw + D yz.
pub type Bilinear = [Gq; 4];

enum Shape {
    H(P1),
    V(P1),
    Bilinear(Bilinear),
    Line([Gq; 3]),
    Conic,
}

fn g(n: i64) -> Gq {
    Gq::from_int(n)
}

impl CurveGeom {
    pub fn kind_name(&self) -> &'static str {
        match self {
            CurveGeom::FiberH(_) => "FIBER_H",
            CurveGeom::FiberV(_) => "FIBER_V",
            CurveGeom::Diagonal(_) => "DIAGONAL",
            CurveGeom::AntiDiagonal(_) => "ANTI_DIAGONAL",
            CurveGeom::CuboidC(_) => "CUBOID_C",
            CurveGeom::TangentLine(_) => "LINE_TANGENT",
            CurveGeom::Conic => "CONIC",
        }
    }

    /// Parameter as written in spec documents.
    pub fn param_string(&self) -> Option<String> {
        match self {
            CurveGeom::FiberH(p) | CurveGeom::FiberV(p) | CurveGeom::TangentLine(p) => Some(p.to_string()),
            CurveGeom::Diagonal(c) | CurveGeom::AntiDiagonal(c) => Some(c.to_string()),
            CurveGeom::CuboidC(i) => Some(i.to_string()),
            CurveGeom::Conic => None,
        }
    }

    pub fn from_parts(kind: &str, param: Option<&str>) -> Result<CurveGeom> {
        let need = || param.ok_or_else(|| Error::Parse(format!("{kind} needs a param")));
        let geom = match kind.trim() {
            "FIBER_H" => CurveGeom::FiberH(P1::parse(need()?)?),
            "FIBER_V" => CurveGeom::FiberV(P1::parse(need()?)?),
            "LINE_TANGENT" => CurveGeom::TangentLine(P1::parse(need()?)?),
            "DIAGONAL" => CurveGeom::Diagonal(need()?.parse()?),
            "ANTI_DIAGONAL" => CurveGeom::AntiDiagonal(need()?.parse()?),
            "CUBOID_C" => {
                let p = need()?;
                let i: u8 = p.trim().parse().map_err(|_| Error::Parse(format!("CUBOID_C index {p:?}")))?;
                if i > 3 {
                    return Err(Error::Parse(format!("CUBOID_C index {i} must be 0..=3")));
                }
                CurveGeom::CuboidC(i)
            }
            "CONIC" => {
                if param.is_some() {
                    return Err(Error::Parse("CONIC takes no param".into()));
                }
                CurveGeom::Conic
            }
            other => return Err(Error::Parse(format!("unknown curve geometry {other:?}"))),
        };
        Ok(geom)
    }

    pub fn base(&self) -> BaseSurface {
        match self {
            CurveGeom::TangentLine(_) | CurveGeom::Conic => BaseSurface::P2,
            _ => BaseSurface::P1xP1,
        }
    }

    pub fn class(&self) -> DivClass {
        match self {
            CurveGeom::FiberH(_) => DivClass::from_ints(&[1, 0]),
            CurveGeom::FiberV(_) => DivClass::from_ints(&[0, 1]),
            CurveGeom::Diagonal(_) | CurveGeom::AntiDiagonal(_) | CurveGeom::CuboidC(_) => {
                DivClass::from_ints(&[1, 1])
            }
            CurveGeom::TangentLine(_) => DivClass::from_ints(&[1]),
            CurveGeom::Conic => DivClass::from_ints(&[2]),
        }
    }

    /// Coefficients of the defining bilinear form, for (1,1) curves.
    pub fn bilinear(&self) -> Option<Bilinear> {
        let form = match self {
            CurveGeom::Diagonal(c) => [g(0), g(1), g(-1), -c],
            CurveGeom::AntiDiagonal(c) => [g(0), g(1), g(1), -c],
            CurveGeom::CuboidC(0) => [g(0), g(1), g(1), g(0)],
            CurveGeom::CuboidC(1) => [g(0), g(-1), g(1), g(0)],
            CurveGeom::CuboidC(2) => [g(-1), g(0), g(0), g(1)],
            CurveGeom::CuboidC(3) => [g(1), g(0), g(0), g(1)],
            _ => return None,
        };
        Some(form)
    }

    fn shape(&self) -> Shape {
        match self {
            CurveGeom::FiberH(p) => Shape::H(p.clone()),
            CurveGeom::FiberV(p) => Shape::V(p.clone()),
            CurveGeom::TangentLine(p) => {
                let (t, u) = (&p.x, &p.y);
                Shape::Line([t * t, t * u, u * u])
            }
            CurveGeom::Conic => Shape::Conic,
            other => Shape::Bilinear(other.bilinear().expect("bilinear curve")),
        }
    }

    /// Same curve as a point set, regardless of how it was described.
    pub fn same_curve(&self, other: &CurveGeom) -> bool {
        match (self.shape(), other.shape()) {
            (Shape::H(a), Shape::H(b)) | (Shape::V(a), Shape::V(b)) => a == b,
            (Shape::Bilinear(a), Shape::Bilinear(b)) => proportional(&a, &b),
            (Shape::Line(a), Shape::Line(b)) => proportional(&a, &b),
            (Shape::Conic, Shape::Conic) => true,
            _ => false,
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match (self.shape(), p) {
            (Shape::H(a), Point::Quadric(x, _)) => a == *x,
            (Shape::V(a), Point::Quadric(_, w)) => a == *w,
            (Shape::Bilinear(f), Point::Quadric(x, w)) => eval_bilinear(&f, x, w).is_zero(),
            (Shape::Line(l), Point::Plane(P2Point(c))) => {
                (&(&(&l[0] * &c[0]) + &(&l[1] * &c[1])) + &(&l[2] * &c[2])).is_zero()
            }
            (Shape::Conic, Point::Plane(P2Point([x, y, z]))) => {
                (&(y * y) - &(&g(4) * &(x * z))).is_zero()
            }
            _ => false,
        }
    }
}

impl fmt::Display for CurveGeom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param_string() {
            Some(p) => write!(f, "{}({p})", self.kind_name()),
            None => f.write_str(self.kind_name()),
        }
    }
}

fn proportional(a: &[Gq], b: &[Gq]) -> bool {
    let Some(k) = a.iter().position(|v| !v.is_zero()) else {
        return b.iter().all(Gq::is_zero);
    };
    if b[k].is_zero() {
        return false;
    }
    let s = &b[k] / &a[k];
    a.iter().zip(b).all(|(x, y)| &(x * &s) == y)
}

fn eval_bilinear(f: &Bilinear, p: &P1, q: &P1) -> Gq {
    let (x, y, w, z) = (&p.x, &p.y, &q.x, &q.y);
    let t0 = &(&f[0] * x) * w;
    let t1 = &(&f[1] * x) * z;
    let t2 = &(&f[2] * y) * w;
    let t3 = &(&f[3] * y) * z;
    &(&t0 + &t1) + &(&t2 + &t3)
}

/// Roots [x:y] of q0 x^2 + q1 xy + q2 y^2 with multiplicities.
fn binary_quadratic_roots(q0: &Gq, q1: &Gq, q2: &Gq) -> Result<Vec<(P1, u32)>> {
    if q0.is_zero() && q1.is_zero() && q2.is_zero() {
        return Err(Error::Domain("curves share a component".into()));
    }
    if q0.is_zero() {
        if q1.is_zero() {
            return Ok(vec![(P1::infinity(), 2)]);
        }
        let other = P1::new(-q2, q1.clone()).expect("nonzero");
        return Ok(vec![(P1::infinity(), 1), (other, 1)]);
    }
    let two = g(2);
    let disc = &(q1 * q1) - &(&g(4) * &(q0 * q2));
    let denom = &two * q0;
    if disc.is_zero() {
        return Ok(vec![(P1::affine(&(-q1) / &denom), 2)]);
    }
    let root = disc
        .sqrt()
        .ok_or_else(|| Error::Unsupported(format!("intersection points need sqrt({disc}) outside Q(i)")))?;
    let a = P1::affine(&(&(-q1) + &root) / &denom);
    let b = P1::affine(&(&(-q1) - &root) / &denom);
    Ok(vec![(a, 1), (b, 1)])
}

/// Points of C1 ∩ C2 with local intersection multiplicities.
pub fn intersect_curves(c1: &CurveGeom, c2: &CurveGeom) -> Result<Vec<(Point, u32)>> {
    if c1.base() != c2.base() {
        return Err(Error::Domain(format!("{c1} and {c2} live on different surfaces")));
    }
    if c1.same_curve(c2) {
        return Err(Error::Domain(format!("{c1} and {c2} are the same curve")));
    }
    use Shape::*;
    let pts = match (c1.shape(), c2.shape()) {
        (H(_), H(_)) | (V(_), V(_)) => vec![],
        (H(p), V(q)) => vec![(Point::Quadric(p, q), 1)],
        (V(q), H(p)) => vec![(Point::Quadric(p, q), 1)],
        (H(p), Bilinear(f)) | (Bilinear(f), H(p)) => {
            let w = -&(&(&f[1] * &p.x) + &(&f[3] * &p.y));
            let z = &(&f[0] * &p.x) + &(&f[2] * &p.y);
            vec![(Point::Quadric(p, P1::new(w, z).expect("nondegenerate form")), 1)]
        }
        (V(q), Bilinear(f)) | (Bilinear(f), V(q)) => {
            let x = -&(&(&f[2] * &q.x) + &(&f[3] * &q.y));
            let y = &(&f[0] * &q.x) + &(&f[1] * &q.y);
            vec![(Point::Quadric(P1::new(x, y).expect("nondegenerate form"), q), 1)]
        }
        (Bilinear(f), Bilinear(h)) => {
            // On f: [w:z] = [-(B x + D y) : (A x + C y)]; substitute into h.
            let (a1, b1, c1, d1) = (&f[0], &f[1], &f[2], &f[3]);
            let (a2, b2, c2, d2) = (&h[0], &h[1], &h[2], &h[3]);
            let q0 = &(&(-b1) * a2) + &(a1 * b2);
            let q1 = &(&(&(-b1) * c2) - &(d1 * a2)) + &(&(a1 * d2) + &(c1 * b2));
            let q2 = &(&(-d1) * c2) + &(c1 * d2);
            binary_quadratic_roots(&q0, &q1, &q2)?
                .into_iter()
                .map(|(p, mult)| {
                    let w = -&(&(b1 * &p.x) + &(d1 * &p.y));
                    let z = &(a1 * &p.x) + &(c1 * &p.y);
                    (Point::Quadric(p, P1::new(w, z).expect("nondegenerate form")), mult)
                })
                .collect()
        }
        (Line(a), Line(b)) => {
            let c = [
                &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
                &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
                &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
            ];
            vec![(Point::Plane(P2Point::new(c).expect("distinct lines")), 1)]
        }
        (Line(l), Conic) | (Conic, Line(l)) => {
            // conic point [r^2 : -2 s r : s^2]
            binary_quadratic_roots(&l[2], &(&g(-2) * &l[1]), &l[0])?
                .into_iter()
                .map(|(p, mult)| {
                    let (s, r) = (&p.x, &p.y);
                    let pt = P2Point::new([r * r, &(&g(-2) * s) * r, s * s]).expect("nonzero");
                    (Point::Plane(pt), mult)
                })
                .collect()
        }
        _ => unreachable!("base surfaces already matched"),
    };
    Ok(pts)
}
