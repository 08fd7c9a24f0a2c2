//! Immersed piecewise-linear closed curves on flat surfaces.
//!
//! A curve is stored as a list of plane vertices together with a holonomy
//! vector of the deck lattice: the curve is the projection of the
//! piecewise-linear path `v_0 -> ... -> v_{k-1} -> v_0 + w`. All incidence
//! computations happen in the universal cover over exact rationals; fiber
//! products are enumerated by translating one lift through a finite,
//! bounding-box-derived window of deck vectors.

use crate::flatgeom::{CoveringMap, FlatGeomError, FlatSurface, SurfaceSelfMap};
use crate::geom::{cross, dot, lerp, seg_cross, Box2, Pt, SegCross};
use crate::rat::{rat, Rat};
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("curve has a zero-length edge at index {0}")]
    ZeroEdge(usize),
    #[error("edge {0} exactly reverses its predecessor")]
    BacktrackingEdge(usize),
    #[error("holonomy is not a deck vector of the surface")]
    NotClosed,
    #[error("curve leaves the cylinder's height interval")]
    OutOfCylinder,
    #[error("curves live on different surfaces")]
    SurfaceMismatch,
    #[error("wrong surface for this operation")]
    WrongSurface,
    #[error("pair is not transverse: {0}")]
    NonTransverse(String),
    #[error(transparent)]
    Geometry(#[from] FlatGeomError),
}

/// Closed immersed PL curve with exact rational vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct PLCurve {
    pub surface: FlatSurface,
    vertices: Vec<Pt>,
    holonomy: Pt,
}

impl PLCurve {
    pub fn new(surface: FlatSurface, vertices: Vec<Pt>, holonomy: Pt) -> Result<Self, CurveError> {
        if vertices.is_empty() {
            return Err(CurveError::ZeroEdge(0));
        }
        if !holonomy.is_zero() && !surface.is_deck_vector(&holonomy) {
            return Err(CurveError::NotClosed);
        }
        if holonomy.is_zero() && vertices.len() < 3 {
            return Err(CurveError::ZeroEdge(0));
        }
        let curve = PLCurve { surface, vertices, holonomy };
        let k = curve.edge_count();
        for i in 0..k {
            let (a, b) = curve.edge(i);
            if a == b {
                return Err(CurveError::ZeroEdge(i));
            }
        }
        for i in 0..k {
            let d_prev = curve.edge_dir(i);
            let d_next = curve.edge_dir((i + 1) % k);
            if cross(&d_prev, &d_next).is_zero() && dot(&d_prev, &d_next).is_negative() {
                return Err(CurveError::BacktrackingEdge((i + 1) % k));
            }
        }
        if let Some((a, b)) = curve.surface.height_interval() {
            for v in &curve.vertices {
                if v.y < a || v.y > b {
                    return Err(CurveError::OutOfCylinder);
                }
            }
        }
        Ok(curve)
    }

    pub fn vertices(&self) -> &[Pt] {
        &self.vertices
    }

    pub fn holonomy(&self) -> &Pt {
        &self.holonomy
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len()
    }

    /// Edge `i` of the base lift (the closing edge lands on `v_0 + w`).
    pub fn edge(&self, i: usize) -> (Pt, Pt) {
        let k = self.vertices.len();
        let start = self.vertices[i].clone();
        let end = if i + 1 < k {
            self.vertices[i + 1].clone()
        } else {
            &self.vertices[0] + &self.holonomy
        };
        (start, end)
    }

    fn edge_dir(&self, i: usize) -> Pt {
        let (a, b) = self.edge(i);
        &b - &a
    }

    /// Plane point at `(edge, s)` on the base lift.
    pub fn point_at(&self, edge: usize, s: &Rat) -> Pt {
        let (a, b) = self.edge(edge);
        lerp(&a, &b, s)
    }

    /// Orientation reversal as an explicit transform.
    pub fn reversed(&self) -> PLCurve {
        let k = self.vertices.len();
        let mut verts = Vec::with_capacity(k);
        verts.push(&self.vertices[0] + &self.holonomy);
        for i in (1..k).rev() {
            verts.push(self.vertices[i].clone());
        }
        PLCurve::new(self.surface.clone(), verts, -&self.holonomy)
            .expect("reversal preserves validity")
    }

    pub fn translated(&self, v: &Pt) -> Result<PLCurve, CurveError> {
        let verts = self.vertices.iter().map(|p| p + v).collect();
        PLCurve::new(self.surface.clone(), verts, self.holonomy.clone())
    }

    /// Bounding box of the base lift (one period).
    pub fn base_bbox(&self) -> Box2 {
        let mut b = Box2::of_points(self.vertices.iter()).unwrap();
        b.include(&(&self.vertices[0] + &self.holonomy));
        b
    }

    /// True when the curve retraces the same image more than once, i.e. some
    /// proper fraction of the holonomy translates the lift onto itself. Such
    /// curves are valid geometry but are rejected as direct Floer inputs.
    pub fn is_multiply_traversed(&self) -> bool {
        let k = self.vertices.len();
        if self.holonomy.is_zero() {
            // A repeated closed loop: the vertex cycle is a repetition of a
            // proper sub-cycle.
            for m in 2..=k {
                if k % m != 0 {
                    continue;
                }
                let stride = k / m;
                if (0..k).all(|i| self.vertices[i] == self.vertices[(i + stride) % k]) {
                    return true;
                }
            }
            return false;
        }
        let mut divisors = Vec::new();
        for m in 2..=(k as i64) {
            let shift = Pt::new(&self.holonomy.x / rat(m), &self.holonomy.y / rat(m));
            if self.surface.is_deck_vector(&shift) {
                divisors.push(shift);
            }
        }
        'outer: for shift in divisors {
            // The shifted base path must reproduce edges of the lift.
            let lift = Lift::materialize(self, 0, 2);
            for i in 0..k {
                let (a, b) = self.edge(i);
                let (sa, sb) = (&a + &shift, &b + &shift);
                let found =
                    (0..lift.edge_count()).any(|g| lift.edge(g) == (sa.clone(), sb.clone()));
                if !found {
                    continue 'outer;
                }
            }
            return true;
        }
        false
    }
}

/// A finite disjoint union of curves on a common surface.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiCurve {
    pub surface: FlatSurface,
    pub components: Vec<PLCurve>,
}

impl MultiCurve {
    pub fn new(surface: FlatSurface, components: Vec<PLCurve>) -> Result<Self, CurveError> {
        for c in &components {
            if c.surface != surface {
                return Err(CurveError::SurfaceMismatch);
            }
        }
        Ok(MultiCurve { surface, components })
    }

    pub fn single(curve: PLCurve) -> Self {
        MultiCurve { surface: curve.surface.clone(), components: vec![curve] }
    }

    pub fn total_edges(&self) -> usize {
        self.components.iter().map(|c| c.edge_count()).sum()
    }
}

impl From<PLCurve> for MultiCurve {
    fn from(c: PLCurve) -> Self {
        MultiCurve::single(c)
    }
}

// ---------------------------------------------------------------------------
// Lifts to the universal cover
// ---------------------------------------------------------------------------

/// A materialized stretch of one lift: the base path replicated over a
/// contiguous range of holonomy periods (a single closed loop when the
/// holonomy vanishes).
#[derive(Clone, Debug)]
pub struct Lift {
    pub pts: Vec<Pt>,
    pub first_period: i64,
    pub period_edges: usize,
    pub closed: bool,
}

impl Lift {
    /// Materializes periods `lo..=hi` (ignored for closed curves).
    pub fn materialize(curve: &PLCurve, lo: i64, hi: i64) -> Lift {
        let k = curve.edge_count();
        if curve.holonomy().is_zero() {
            let mut pts: Vec<Pt> = curve.vertices().to_vec();
            pts.push(curve.vertices()[0].clone());
            return Lift { pts, first_period: 0, period_edges: k, closed: true };
        }
        assert!(lo <= hi);
        let mut pts = Vec::with_capacity(k * (hi - lo + 1) as usize + 1);
        for period in lo..=hi {
            let shift = curve.holonomy().scale(&rat(period));
            for v in curve.vertices() {
                pts.push(v + &shift);
            }
        }
        let closing =
            &(&curve.vertices()[0] + &curve.holonomy().scale(&rat(hi))) + curve.holonomy();
        pts.push(closing);
        Lift { pts, first_period: lo, period_edges: k, closed: false }
    }

    pub fn edge_count(&self) -> usize {
        self.pts.len() - 1
    }

    pub fn edge(&self, g: usize) -> (Pt, Pt) {
        (self.pts[g].clone(), self.pts[g + 1].clone())
    }

    pub fn bbox(&self) -> Box2 {
        Box2::of_points(self.pts.iter()).unwrap()
    }

    pub fn translated(&self, v: &Pt) -> Lift {
        Lift {
            pts: self.pts.iter().map(|p| p + v).collect(),
            first_period: self.first_period,
            period_edges: self.period_edges,
            closed: self.closed,
        }
    }

    /// Splits a global edge index into (edge index on the curve, period).
    pub fn curve_edge(&self, g: usize) -> (usize, i64) {
        let k = self.period_edges;
        let idx = g % k;
        let period = self.first_period + (g / k) as i64;
        (idx, period)
    }

    /// Global parameter of `(global edge, s)`, measured in edge units.
    pub fn global_param(&self, g: usize, s: &Rat) -> Rat {
        rat(g as i64) + s
    }
}

/// Exact interior crossing between two materialized paths.
#[derive(Clone, Debug)]
pub struct RawCrossing {
    pub ea: usize,
    pub sa: Rat,
    pub eb: usize,
    pub sb: Rat,
    pub point: Pt,
}

/// All strict interior crossings between `a` and `b`. Any vertex contact or
/// collinear overlap is a transversality failure.
pub fn crossings_between(a: &Lift, b: &Lift) -> Result<Vec<RawCrossing>, CurveError> {
    let mut out = Vec::new();
    let zero = rat(0);
    let one = rat(1);
    for ea in 0..a.edge_count() {
        let (a0, a1) = a.edge(ea);
        let ebox = Box2::of_points([&a0, &a1]).unwrap();
        for eb in 0..b.edge_count() {
            let (b0, b1) = b.edge(eb);
            let bbox = Box2::of_points([&b0, &b1]).unwrap();
            if !ebox.intersects(&bbox) {
                continue;
            }
            match seg_cross(&a0, &a1, &b0, &b1) {
                SegCross::Transverse { s, t, point } => {
                    let s_in = s > zero && s < one;
                    let t_in = t > zero && t < one;
                    let s_touch = s >= zero && s <= one;
                    let t_touch = t >= zero && t <= one;
                    if s_in && t_in {
                        out.push(RawCrossing { ea, sa: s, eb, sb: t, point });
                    } else if s_touch && t_touch {
                        return Err(CurveError::NonTransverse(format!(
                            "segments meet at a vertex near {point:?}"
                        )));
                    }
                }
                SegCross::ParallelOverlap => {
                    return Err(CurveError::NonTransverse(
                        "collinear segments overlap".to_string(),
                    ));
                }
                SegCross::ParallelDisjoint => {}
            }
        }
    }
    Ok(out)
}

/// Whether a path touches itself anywhere beyond the shared vertices of
/// consecutive edges.
fn path_self_contact(lift: &Lift) -> bool {
    let n = lift.edge_count();
    let zero = rat(0);
    let one = rat(1);
    for i in 0..n {
        let (a0, a1) = lift.edge(i);
        for j in (i + 1)..n {
            let (b0, b1) = lift.edge(j);
            let adjacent_fwd = j == i + 1;
            let adjacent_wrap = lift.closed && i == 0 && j == n - 1;
            match seg_cross(&a0, &a1, &b0, &b1) {
                SegCross::Transverse { s, t, .. } => {
                    let s_touch = s >= zero && s <= one;
                    let t_touch = t >= zero && t <= one;
                    if !(s_touch && t_touch) {
                        continue;
                    }
                    if adjacent_fwd && s == one && t == zero {
                        continue;
                    }
                    if adjacent_wrap && t == one && s == zero {
                        continue;
                    }
                    return true;
                }
                SegCross::ParallelOverlap => {
                    // Collinear continuation through the shared vertex is
                    // fine; genuine overlap is not. Backtracking was excluded
                    // at construction.
                    if adjacent_fwd {
                        let d0 = &a1 - &a0;
                        let d1 = &b1 - &b0;
                        if dot(&d0, &d1).is_positive() && a1 == b0 {
                            continue;
                        }
                    }
                    if adjacent_wrap {
                        let d0 = &a1 - &a0;
                        let d1 = &b1 - &b0;
                        if dot(&d0, &d1).is_positive() && b1 == a0 {
                            continue;
                        }
                    }
                    return true;
                }
                SegCross::ParallelDisjoint => {}
            }
        }
    }
    false
}

/// True when one lift of the curve to the universal cover (plane or strip)
/// is embedded. The base lift is tested against itself and against every
/// holonomy translate whose bounding box can reach it.
pub fn embedded_lift_check(curve: &PLCurve) -> bool {
    if curve.holonomy().is_zero() {
        return !path_self_contact(&Lift::materialize(curve, 0, 0));
    }
    let base = curve.base_bbox();
    let mut max_n: i64 = 1;
    for n in 1..=1024i64 {
        let shift = curve.holonomy().scale(&rat(n));
        if base.translate(&shift).intersects(&base) {
            max_n = n + 1;
        } else {
            break;
        }
    }
    let lift = Lift::materialize(curve, 0, max_n);
    !path_self_contact(&lift)
}

// ---------------------------------------------------------------------------
// Deck windows
// ---------------------------------------------------------------------------

fn box_contains(b: &Box2, p: &Pt) -> bool {
    p.x >= b.min.x && p.x <= b.max.x && p.y >= b.min.y && p.y <= b.max.y
}

/// All deck vectors generated by `gens` lying in `window`.
pub fn lattice_points_in_box(gens: &[Pt], window: &Box2) -> Vec<Pt> {
    let mut out = Vec::new();
    match gens.len() {
        1 => {
            let g = &gens[0];
            let (lo, hi) = if !g.x.is_zero() {
                let l = &window.min.x / &g.x;
                let h = &window.max.x / &g.x;
                if l <= h { (l, h) } else { (h, l) }
            } else {
                let l = &window.min.y / &g.y;
                let h = &window.max.y / &g.y;
                if l <= h { (l, h) } else { (h, l) }
            };
            let mut m = lo.ceil().to_integer();
            let top = hi.floor().to_integer();
            while m <= top {
                let lam = g.scale(&Rat::from_integer(m.clone()));
                if box_contains(window, &lam) {
                    out.push(lam);
                }
                m += 1;
            }
        }
        2 => {
            let det = cross(&gens[0], &gens[1]);
            assert!(!det.is_zero());
            let corners = [
                window.min.clone(),
                Pt::new(window.max.x.clone(), window.min.y.clone()),
                Pt::new(window.min.x.clone(), window.max.y.clone()),
                window.max.clone(),
            ];
            let mut m_lo = None;
            let mut m_hi = None;
            let mut n_lo = None;
            let mut n_hi = None;
            for c in &corners {
                let m = cross(c, &gens[1]) / &det;
                let n = cross(&gens[0], c) / &det;
                upd(&mut m_lo, &mut m_hi, m);
                upd(&mut n_lo, &mut n_hi, n);
            }
            let (m_lo, m_hi) =
                (m_lo.unwrap().floor().to_integer(), m_hi.unwrap().ceil().to_integer());
            let (n_lo, n_hi) =
                (n_lo.unwrap().floor().to_integer(), n_hi.unwrap().ceil().to_integer());
            let mut m = m_lo;
            while m <= m_hi {
                let mut n = n_lo.clone();
                while n <= n_hi {
                    let lam = &gens[0].scale(&Rat::from_integer(m.clone()))
                        + &gens[1].scale(&Rat::from_integer(n.clone()));
                    if box_contains(window, &lam) {
                        out.push(lam);
                    }
                    n += 1;
                }
                m += 1;
            }
        }
        _ => unreachable!("deck lattices have rank 1 or 2"),
    }
    out.sort();
    out
}

fn upd(lo: &mut Option<Rat>, hi: &mut Option<Rat>, v: Rat) {
    match lo {
        None => *lo = Some(v.clone()),
        Some(l) if v < *l => *lo = Some(v.clone()),
        _ => {}
    }
    match hi {
        None => *hi = Some(v),
        Some(h) if v > *h => *hi = Some(v),
        _ => {}
    }
}

/// Deck vectors whose translate of `b`'s box can meet `a`'s box, inflated by
/// one fundamental cell in each lattice direction.
pub fn overlap_window(surface: &FlatSurface, a: &Box2, b: &Box2) -> Vec<Pt> {
    let gens = surface.deck_generators();
    let mut dx = rat(0);
    let mut dy = rat(0);
    for g in &gens {
        dx += g.x.abs();
        dy += g.y.abs();
    }
    let window = Box2 { min: &a.min - &b.max, max: &a.max - &b.min }.inflate(&dx, &dy);
    lattice_points_in_box(&gens, &window)
}

// ---------------------------------------------------------------------------
// Fiber products
// ---------------------------------------------------------------------------

/// Position of a point on a multicurve: component, edge, parameter in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CurvePos {
    pub component: usize,
    pub edge: usize,
    pub s: Rat,
}

/// One point of the fiber product of two curves, recorded on the base lift
/// of the first curve. `deck` is the lattice vector with
/// `point = (second curve's base-lift point) + deck`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionPoint {
    pub curve1: CurvePos,
    pub curve2: CurvePos,
    pub point: Pt,
    pub deck: Pt,
}

/// Complete fiber product of two multicurves on a common surface, in
/// canonical order. Each pair of curve positions with a common image occurs
/// exactly once.
pub fn intersect(c1: &MultiCurve, c2: &MultiCurve) -> Result<Vec<IntersectionPoint>, CurveError> {
    if c1.surface != c2.surface {
        return Err(CurveError::SurfaceMismatch);
    }
    let mut out = Vec::new();
    for (i1, a) in c1.components.iter().enumerate() {
        let la = Lift::materialize(a, 0, 0);
        let abox = la.bbox();
        for (i2, b) in c2.components.iter().enumerate() {
            let lb = Lift::materialize(b, 0, 0);
            let bbox = lb.bbox();
            for lam in overlap_window(&c1.surface, &abox, &bbox) {
                let moved = lb.translated(&lam);
                for c in crossings_between(&la, &moved)? {
                    let (ea, _) = la.curve_edge(c.ea);
                    let (eb, _) = lb.curve_edge(c.eb);
                    out.push(IntersectionPoint {
                        curve1: CurvePos { component: i1, edge: ea, s: c.sa },
                        curve2: CurvePos { component: i2, edge: eb, s: c.sb },
                        point: c.point,
                        deck: lam.clone(),
                    });
                }
            }
        }
    }
    out.sort_by(|p, q| (&p.curve1, &p.curve2).cmp(&(&q.curve1, &q.curve2)));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Covering lifts and curve transport
// ---------------------------------------------------------------------------

/// Total preimage of a curve under a covering of tori. Components correspond
/// to orbits of the deck group under translation by the holonomy class.
pub fn lift_to_cover(curve: &PLCurve, cov: &CoveringMap) -> Result<MultiCurve, CurveError> {
    if curve.surface != cov.target {
        return Err(CurveError::WrongSurface);
    }
    let order = cov.holonomy_order(curve.holonomy());
    let reps = cov.deck_group();
    let mut remaining: BTreeSet<(Rat, Rat)> =
        reps.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
    let mut components = Vec::new();
    while let Some((x, y)) = remaining.iter().next().cloned() {
        let start = Pt::new(x, y);
        let mut cursor = start.clone();
        for _ in 0..order {
            let key = (cursor.x.clone(), cursor.y.clone());
            assert!(remaining.remove(&key), "orbits partition the deck group");
            cursor = cov.source.reduce_point(&(&cursor + curve.holonomy()));
        }
        let mut verts = Vec::with_capacity(curve.edge_count() * order as usize);
        for period in 0..order {
            let shift = curve.holonomy().scale(&rat(period as i64));
            for v in curve.vertices() {
                verts.push(&(v + &start) + &shift);
            }
        }
        let holonomy = curve.holonomy().scale(&rat(order as i64));
        components.push(PLCurve::new(cov.source.clone(), verts, holonomy)?);
    }
    MultiCurve::new(cov.source.clone(), components)
}

/// Projects a curve on the covering source down to the covering target. The
/// plane data is unchanged; only the ambient lattice grows.
pub fn project_through_cover(curve: &PLCurve, cov: &CoveringMap) -> Result<PLCurve, CurveError> {
    if curve.surface != cov.source {
        return Err(CurveError::WrongSurface);
    }
    PLCurve::new(cov.target.clone(), curve.vertices().to_vec(), curve.holonomy().clone())
}

/// Image of a curve under a surface self-map. Twists refine each edge at the
/// profile breakpoints first, so the image is again piecewise linear.
pub fn map_curve(curve: &PLCurve, map: &SurfaceSelfMap) -> Result<PLCurve, CurveError> {
    match map {
        SurfaceSelfMap::Identity => Ok(curve.clone()),
        SurfaceSelfMap::Translation(v) => curve.translated(v),
        SurfaceSelfMap::Twist(profile) => {
            let k = curve.edge_count();
            let mut verts = Vec::new();
            for i in 0..k {
                let (a, b) = curve.edge(i);
                verts.push(a.clone());
                if a.y != b.y {
                    let mut cuts: Vec<Rat> = Vec::new();
                    for (t, _) in profile.breakpoints() {
                        let u = (t - &a.y) / (&b.y - &a.y);
                        if u > rat(0) && u < rat(1) {
                            cuts.push(u);
                        }
                    }
                    cuts.sort();
                    cuts.dedup();
                    for u in cuts {
                        verts.push(lerp(&a, &b, &u));
                    }
                }
            }
            let mapped: Result<Vec<Pt>, _> = verts
                .iter()
                .map(|p| map.apply(&curve.surface, p).map_err(CurveError::Geometry))
                .collect();
            PLCurve::new(curve.surface.clone(), mapped?, curve.holonomy().clone())
        }
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::rat::frac;

    fn pt(x: i64, y: i64) -> Pt {
        Pt::new(rat(x), rat(y))
    }

    fn pf(xn: i64, xd: i64, yn: i64, yd: i64) -> Pt {
        Pt::new(frac(xn, xd), frac(yn, yd))
    }

    /// Horizontal circle through the origin on the unit torus.
    pub fn alpha() -> PLCurve {
        PLCurve::new(FlatSurface::unit_torus(), vec![pt(0, 0)], pt(1, 0)).unwrap()
    }

    /// Vertical circle at x = 1/2 on the unit torus.
    pub fn beta() -> PLCurve {
        PLCurve::new(FlatSurface::unit_torus(), vec![pf(1, 2, 0, 1)], pt(0, 1)).unwrap()
    }

    /// Three-vertex wiggle crossing the horizontal circle twice.
    pub fn gamma() -> PLCurve {
        PLCurve::new(
            FlatSurface::unit_torus(),
            vec![pf(3, 10, -1, 10), pf(1, 2, 1, 10), pf(7, 10, -1, 10)],
            pt(1, 0),
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::{alpha, beta, gamma};
    use super::*;
    use crate::flatgeom::TwistProfile;
    use crate::rat::frac;

    fn pt(x: i64, y: i64) -> Pt {
        Pt::new(rat(x), rat(y))
    }

    fn pf(xn: i64, xd: i64, yn: i64, yd: i64) -> Pt {
        Pt::new(frac(xn, xd), frac(yn, yd))
    }

    #[test]
    fn construction_and_validation() {
        assert!(PLCurve::new(FlatSurface::unit_torus(), vec![pt(0, 0)], pt(1, 0)).is_ok());
        let bad = PLCurve::new(
            FlatSurface::unit_torus(),
            vec![pt(0, 0), pf(1, 2, 0, 1), pt(0, 0)],
            pt(0, 0),
        );
        assert!(matches!(
            bad,
            Err(CurveError::BacktrackingEdge(_)) | Err(CurveError::ZeroEdge(_))
        ));
        let open = PLCurve::new(FlatSurface::unit_torus(), vec![pt(0, 0)], pf(1, 2, 0, 1));
        assert_eq!(open.err(), Some(CurveError::NotClosed));
        let cyl = FlatSurface::cylinder(rat(1), rat(-1), rat(1)).unwrap();
        let out = PLCurve::new(cyl, vec![pt(0, 3)], pt(1, 0));
        assert_eq!(out.err(), Some(CurveError::OutOfCylinder));
    }

    #[test]
    fn alpha_beta_single_crossing() {
        let pts = intersect(&alpha().into(), &beta().into()).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].point, pf(1, 2, 0, 1));
        assert_eq!(pts[0].curve1, CurvePos { component: 0, edge: 0, s: frac(1, 2) });
    }

    #[test]
    fn alpha_gamma_two_crossings() {
        // Oracle: the two edge-line crossings of the wiggle with the axis,
        // solved by hand: (2/5, 0) and (3/5, 0).
        let pts = intersect(&alpha().into(), &gamma().into()).unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].point, pf(2, 5, 0, 1));
        assert_eq!(pts[1].point, pf(3, 5, 0, 1));
    }

    #[test]
    fn disjoint_translates_do_not_meet() {
        let shifted = alpha().translated(&pf(0, 1, 1, 2)).unwrap();
        let pts = intersect(&alpha().into(), &shifted.into()).unwrap();
        assert!(pts.is_empty());
    }

    #[test]
    fn intersection_is_symmetric() {
        let ab = intersect(&alpha().into(), &gamma().into()).unwrap();
        let ba = intersect(&gamma().into(), &alpha().into()).unwrap();
        assert_eq!(ab.len(), ba.len());
        let reduce = |p: &Pt| {
            let r = FlatSurface::unit_torus().reduce_point(p);
            (r.x, r.y)
        };
        let pa: BTreeSet<_> = ab.iter().map(|p| reduce(&p.point)).collect();
        let pb: BTreeSet<_> = ba.iter().map(|p| reduce(&p.point)).collect();
        assert_eq!(pa, pb);
    }

    #[test]
    fn lattice_translation_invariance() {
        let lam = pt(2, -1);
        let a2 = alpha().translated(&lam).unwrap();
        let g2 = gamma().translated(&lam).unwrap();
        let orig = intersect(&alpha().into(), &gamma().into()).unwrap();
        let moved = intersect(&a2.into(), &g2.into()).unwrap();
        assert_eq!(orig.len(), moved.len());
        for (p, q) in orig.iter().zip(moved.iter()) {
            assert_eq!(&(&p.point + &lam), &q.point);
            assert_eq!(p.curve1, q.curve1);
        }
    }

    #[test]
    fn vertex_contact_is_rejected() {
        let through =
            PLCurve::new(FlatSurface::unit_torus(), vec![pf(1, 2, 0, 1)], pt(1, 0)).unwrap();
        let res = intersect(&through.into(), &beta().into());
        assert!(matches!(res, Err(CurveError::NonTransverse(_))));
    }

    #[test]
    fn lift_vertical_circle_splits() {
        let unit = FlatSurface::unit_torus();
        let doubled = FlatSurface::torus(pt(2, 0), pt(0, 1)).unwrap();
        let cov = CoveringMap::from_sublattice(doubled, unit).unwrap();
        let lifted = lift_to_cover(&beta(), &cov).unwrap();
        assert_eq!(lifted.components.len(), 2);
        let mut starts: Vec<Pt> =
            lifted.components.iter().map(|c| c.vertices()[0].clone()).collect();
        starts.sort();
        assert_eq!(starts, vec![pf(1, 2, 0, 1), pf(3, 2, 0, 1)]);
        for c in &lifted.components {
            assert_eq!(c.holonomy(), &pt(0, 1));
        }
    }

    #[test]
    fn lift_horizontal_circle_stays_connected() {
        let unit = FlatSurface::unit_torus();
        let doubled = FlatSurface::torus(pt(2, 0), pt(0, 1)).unwrap();
        let cov = CoveringMap::from_sublattice(doubled, unit).unwrap();
        let lifted = lift_to_cover(&alpha(), &cov).unwrap();
        assert_eq!(lifted.components.len(), 1);
        assert_eq!(lifted.components[0].holonomy(), &pt(2, 0));
    }

    #[test]
    fn identity_covering_lift_is_identity() {
        let cov = CoveringMap::identity(FlatSurface::unit_torus()).unwrap();
        let lifted = lift_to_cover(&gamma(), &cov).unwrap();
        assert_eq!(lifted.components.len(), 1);
        assert_eq!(lifted.components[0], gamma());
    }

    #[test]
    fn lift_projects_back_with_multiplicity() {
        let unit = FlatSurface::unit_torus();
        let doubled = FlatSurface::torus(pt(2, 0), pt(0, 1)).unwrap();
        let cov = CoveringMap::from_sublattice(doubled, unit.clone()).unwrap();
        for curve in [alpha(), beta(), gamma()] {
            let lifted = lift_to_cover(&curve, &cov).unwrap();
            let total: usize = lifted.components.iter().map(|c| c.edge_count()).sum();
            assert_eq!(total, curve.edge_count() * cov.degree as usize);
            for comp in &lifted.components {
                for i in 0..comp.edge_count() {
                    let (a, b) = comp.edge(i);
                    let found = (0..curve.edge_count()).any(|j| {
                        let (c, d) = curve.edge(j);
                        let da = &a - &c;
                        unit.is_deck_vector(&da) && &b - &d == da
                    });
                    assert!(found, "projected edge must cover an original edge");
                }
            }
        }
    }

    #[test]
    fn embedded_lift_examples() {
        assert!(embedded_lift_check(&alpha()));
        assert!(embedded_lift_check(&gamma()));
        let eight = PLCurve::new(
            FlatSurface::unit_torus(),
            vec![pt(0, 0), pf(1, 2, 1, 4), pf(0, 1, 1, 2), pf(1, 2, 0, 1), pf(0, 1, 1, 4)],
            pt(0, 0),
        )
        .unwrap();
        assert!(!embedded_lift_check(&eight));
    }

    #[test]
    fn double_wrap_is_multiply_traversed() {
        let double = PLCurve::new(FlatSurface::unit_torus(), vec![pt(0, 0)], pt(2, 0)).unwrap();
        assert!(double.is_multiply_traversed());
        assert!(!alpha().is_multiply_traversed());
        assert!(!gamma().is_multiply_traversed());
        let stagger = PLCurve::new(
            FlatSurface::unit_torus(),
            vec![pt(0, 0), pf(1, 2, 1, 8), pt(1, 0), pf(3, 2, -1, 8)],
            pt(2, 0),
        )
        .unwrap();
        assert!(!stagger.is_multiply_traversed());
    }

    #[test]
    fn twist_transports_vertical_segment() {
        let cyl = FlatSurface::cylinder(rat(1), rat(-1), rat(1)).unwrap();
        let c = PLCurve::new(
            cyl.clone(),
            vec![pt(0, -1), pt(0, 1), pf(1, 2, 1, 1), pf(1, 2, -1, 1)],
            pt(1, 0),
        )
        .unwrap();
        let twisted = map_curve(&c, &SurfaceSelfMap::Twist(TwistProfile::dehn_twist(1))).unwrap();
        // The vertical segment from (0,-1) to (0,1) maps to a path whose
        // total angular displacement is one full circumference, while the
        // bottom slice stays fixed pointwise.
        let top = twisted.vertices().iter().find(|p| p.y == rat(1)).unwrap();
        let bottom = twisted.vertices().iter().find(|p| p.y == rat(-1)).unwrap();
        assert_eq!(&top.x - &bottom.x, rat(1));
        assert_eq!(bottom.x, rat(0));
        assert_eq!(map_curve(&c, &SurfaceSelfMap::Identity).unwrap(), c);
    }

    #[test]
    fn twist_preserves_slice_counts() {
        let cyl = FlatSurface::cylinder(rat(1), rat(-1), rat(1)).unwrap();
        let c = PLCurve::new(
            cyl.clone(),
            vec![pt(0, -1), pt(0, 1), pf(1, 2, 1, 1), pf(1, 2, -1, 1)],
            pt(1, 0),
        )
        .unwrap();
        let slice = PLCurve::new(cyl, vec![pf(1, 4, 1, 3)], pt(1, 0)).unwrap();
        let before = intersect(&c.clone().into(), &slice.clone().into()).unwrap();
        let twisted = map_curve(&c, &SurfaceSelfMap::Twist(TwistProfile::dehn_twist(1))).unwrap();
        let after = intersect(&twisted.into(), &slice.into()).unwrap();
        assert_eq!(before.len(), after.len());
    }

    #[test]
    fn reversal_flips_holonomy() {
        for c in [alpha(), gamma()] {
            let r = c.reversed();
            assert_eq!(r.holonomy(), &-c.holonomy());
            assert_eq!(r.reversed().edge_count(), c.edge_count());
        }
    }
}
