//! Exact planar primitives: points, segments, boxes, polygons.

use crate::rat::{rat, rat_to_f64, Rat};
use num_traits::{Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A point (or displacement vector) in the plane with exact coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pt {
    pub x: Rat,
    pub y: Rat,
}

impl Pt {
    pub fn new(x: Rat, y: Rat) -> Self {
        Pt { x, y }
    }

    pub fn zero() -> Self {
        Pt::new(rat(0), rat(0))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rat_to_f64(&self.x), rat_to_f64(&self.y))
    }

    /// Counterclockwise quarter turn.
    pub fn rot90(&self) -> Pt {
        Pt::new(-self.y.clone(), self.x.clone())
    }

    pub fn scale(&self, s: &Rat) -> Pt {
        Pt::new(&self.x * s, &self.y * s)
    }
}

impl fmt::Debug for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for &Pt {
    type Output = Pt;
    fn add(self, rhs: &Pt) -> Pt {
        Pt::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &Pt {
    type Output = Pt;
    fn sub(self, rhs: &Pt) -> Pt {
        Pt::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &Pt {
    type Output = Pt;
    fn neg(self) -> Pt {
        Pt::new(-self.x.clone(), -self.y.clone())
    }
}

impl Mul<&Rat> for &Pt {
    type Output = Pt;
    fn mul(self, s: &Rat) -> Pt {
        self.scale(s)
    }
}

pub fn cross(a: &Pt, b: &Pt) -> Rat {
    &a.x * &b.y - &a.y * &b.x
}

pub fn dot(a: &Pt, b: &Pt) -> Rat {
    &a.x * &b.x + &a.y * &b.y
}

/// Point at parameter `t` on the segment `a -> b`.
pub fn lerp(a: &Pt, b: &Pt, t: &Rat) -> Pt {
    a + &(b - a).scale(t)
}

/// Result of intersecting two full segments (parameters are unrestricted
/// line parameters; callers clamp to the ranges they need).
#[derive(Clone, Debug)]
pub enum SegCross {
    /// Lines cross at one point; `s` is the parameter on `a0 -> a1`, `t` on `b0 -> b1`.
    Transverse { s: Rat, t: Rat, point: Pt },
    /// Parallel, supporting lines distinct or collinear but disjoint as segments.
    ParallelDisjoint,
    /// Collinear with overlapping closed segments.
    ParallelOverlap,
}

pub fn seg_cross(a0: &Pt, a1: &Pt, b0: &Pt, b1: &Pt) -> SegCross {
    let u = a1 - a0;
    let v = b1 - b0;
    let w = b0 - a0;
    let den = cross(&u, &v);
    if den.is_zero() {
        if !cross(&u, &w).is_zero() {
            return SegCross::ParallelDisjoint;
        }
        // Collinear: project [b0,b1] onto a's parameter axis.
        let uu = dot(&u, &u);
        if uu.is_zero() {
            return SegCross::ParallelDisjoint; // degenerate segment, treated as empty
        }
        let t0 = dot(&w, &u) / &uu;
        let t1 = dot(&(b1 - a0), &u) / &uu;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        if hi < rat(0) || lo > rat(1) {
            SegCross::ParallelDisjoint
        } else {
            SegCross::ParallelOverlap
        }
    } else {
        let s = cross(&w, &v) / &den;
        let t = cross(&w, &u) / &den;
        let point = lerp(a0, a1, &s);
        SegCross::Transverse { s, t, point }
    }
}

/// Axis-aligned box with exact corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Box2 {
    pub min: Pt,
    pub max: Pt,
}

impl Box2 {
    pub fn of_point(p: &Pt) -> Self {
        Box2 { min: p.clone(), max: p.clone() }
    }

    pub fn of_points<'a>(pts: impl IntoIterator<Item = &'a Pt>) -> Option<Self> {
        let mut it = pts.into_iter();
        let first = it.next()?;
        let mut b = Box2::of_point(first);
        for p in it {
            b.include(p);
        }
        Some(b)
    }

    pub fn include(&mut self, p: &Pt) {
        if p.x < self.min.x {
            self.min.x = p.x.clone();
        }
        if p.y < self.min.y {
            self.min.y = p.y.clone();
        }
        if p.x > self.max.x {
            self.max.x = p.x.clone();
        }
        if p.y > self.max.y {
            self.max.y = p.y.clone();
        }
    }

    pub fn union(&self, other: &Box2) -> Box2 {
        let mut b = self.clone();
        b.include(&other.min);
        b.include(&other.max);
        b
    }

    pub fn intersects(&self, other: &Box2) -> bool {
        self.min.x <= other.max.x
            && other.min.x <= self.max.x
            && self.min.y <= other.max.y
            && other.min.y <= self.max.y
    }

    pub fn inflate(&self, dx: &Rat, dy: &Rat) -> Box2 {
        Box2 {
            min: Pt::new(&self.min.x - dx, &self.min.y - dy),
            max: Pt::new(&self.max.x + dx, &self.max.y + dy),
        }
    }

    pub fn translate(&self, v: &Pt) -> Box2 {
        Box2 { min: &self.min + v, max: &self.max + v }
    }
}

/// Twice the signed area of a closed polygon (positive when counterclockwise).
pub fn polygon_area2(poly: &[Pt]) -> Rat {
    let mut acc = rat(0);
    let n = poly.len();
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        acc += cross(a, b);
    }
    acc
}

/// True when the closed polygon is simple: consecutive edges meet only at
/// their shared vertex and non-adjacent edges are disjoint. Quadratic and
/// exact; intended for verification, not throughput.
pub fn polygon_is_simple(poly: &[Pt]) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        if poly[i] == poly[(i + 1) % n] {
            return false; // zero-length edge
        }
    }
    for i in 0..n {
        let (a0, a1) = (&poly[i], &poly[(i + 1) % n]);
        for j in (i + 1)..n {
            let (b0, b1) = (&poly[j], &poly[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            match seg_cross(a0, a1, b0, b1) {
                SegCross::Transverse { s, t, .. } => {
                    let zero = rat(0);
                    let one = rat(1);
                    let s_in = s > zero && s < one;
                    let t_in = t > zero && t < one;
                    let s_touch = s >= zero && s <= one;
                    let t_touch = t >= zero && t <= one;
                    if adjacent {
                        // They must meet exactly at the shared vertex.
                        if s_in && t_in {
                            return false;
                        }
                        if (s_in && t_touch) || (t_in && s_touch) {
                            return false;
                        }
                    } else if s_touch && t_touch {
                        return false;
                    }
                }
                SegCross::ParallelOverlap => {
                    if adjacent {
                        return false; // backtracking at the shared vertex
                    } else {
                        return false;
                    }
                }
                SegCross::ParallelDisjoint => {}
            }
        }
    }
    true
}

/// Interior angle test for a counterclockwise polygon: the corner at `v`
/// entered along `u_in` and left along `u_out` is convex (angle < pi)
/// exactly when the turn is to the left.
pub fn ccw_corner_is_convex(u_in: &Pt, u_out: &Pt) -> bool {
    cross(u_in, u_out).is_positive()
}
