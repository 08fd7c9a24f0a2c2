//! Flat model surfaces and the structure maps between them.
//!
//! Two kinds of surface are supported: flat tori `R^2 / Λ` given by an exact
//! rational lattice basis, and flat cylinders `(R/cZ) x [a, b]`. Covering
//! maps between tori are induced by lattice inclusions, cylinders carry
//! twist self-maps with piecewise-linear profiles, and a fold map doubles a
//! `[-1, 1]` cylinder onto a `[0, 1]` cylinder by squaring the height.

use crate::geom::{cross, Pt};
use crate::rat::{frac, rat, Rat};
use num::bigint::BigInt;
use num::ToPrimitive;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlatGeomError {
    #[error("lattice basis is degenerate")]
    DegenerateLattice,
    #[error("cylinder parameters must satisfy c > 0 and a < b")]
    BadCylinder,
    #[error("source lattice is not contained in the target lattice")]
    NotASublattice,
    #[error("operation applied to the wrong kind of surface")]
    WrongSurface,
    #[error("point lies outside the surface: {0}")]
    OutOfRange(String),
    #[error("twist profile violates its shape constraints: {0}")]
    BadProfile(String),
}

/// A flat torus or a flat cylinder, with exact rational data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatSurface {
    Torus {
        /// Lattice basis columns `b1`, `b2`.
        basis: [Pt; 2],
    },
    Cylinder {
        circumference: Rat,
        /// Height interval `[a, b]`.
        height: (Rat, Rat),
    },
}

impl FlatSurface {
    pub fn torus(b1: Pt, b2: Pt) -> Result<Self, FlatGeomError> {
        if cross(&b1, &b2).is_zero() {
            return Err(FlatGeomError::DegenerateLattice);
        }
        Ok(FlatSurface::Torus { basis: [b1, b2] })
    }

    pub fn unit_torus() -> Self {
        FlatSurface::Torus {
            basis: [Pt::new(rat(1), rat(0)), Pt::new(rat(0), rat(1))],
        }
    }

    pub fn cylinder(circumference: Rat, a: Rat, b: Rat) -> Result<Self, FlatGeomError> {
        if !circumference.is_positive() || a >= b {
            return Err(FlatGeomError::BadCylinder);
        }
        Ok(FlatSurface::Cylinder { circumference, height: (a, b) })
    }

    pub fn is_torus(&self) -> bool {
        matches!(self, FlatSurface::Torus { .. })
    }

    /// Generators of the deck lattice of the universal cover: two vectors for
    /// a torus, the horizontal period for a cylinder.
    pub fn deck_generators(&self) -> Vec<Pt> {
        match self {
            FlatSurface::Torus { basis } => vec![basis[0].clone(), basis[1].clone()],
            FlatSurface::Cylinder { circumference, .. } => {
                vec![Pt::new(circumference.clone(), rat(0))]
            }
        }
    }

    /// Coordinates of `p` in the lattice basis (torus only).
    pub fn lattice_coords(&self, p: &Pt) -> Result<(Rat, Rat), FlatGeomError> {
        match self {
            FlatSurface::Torus { basis } => {
                let det = cross(&basis[0], &basis[1]);
                Ok((cross(p, &basis[1]) / &det, cross(&basis[0], p) / &det))
            }
            _ => Err(FlatGeomError::WrongSurface),
        }
    }

    /// True when `v` is a deck vector of the surface.
    pub fn is_deck_vector(&self, v: &Pt) -> bool {
        match self {
            FlatSurface::Torus { .. } => {
                let (u, w) = self.lattice_coords(v).unwrap();
                u.is_integer() && w.is_integer()
            }
            FlatSurface::Cylinder { circumference, .. } => {
                v.y.is_zero() && (&v.x / circumference).is_integer()
            }
        }
    }

    /// Maps a plane point into the half-open fundamental domain. For tori
    /// this is the fundamental parallelogram; for cylinders only the angular
    /// coordinate is reduced.
    pub fn reduce_point(&self, p: &Pt) -> Pt {
        match self {
            FlatSurface::Torus { basis } => {
                let (u, w) = self.lattice_coords(p).unwrap();
                let fu = &u - u.floor();
                let fw = &w - w.floor();
                &basis[0].scale(&fu) + &basis[1].scale(&fw)
            }
            FlatSurface::Cylinder { circumference, .. } => {
                let k = (&p.x / circumference).floor();
                Pt::new(&p.x - &(k * circumference), p.y.clone())
            }
        }
    }

    /// Checks that a plane point lies on the surface (cylinder height range).
    pub fn contains(&self, p: &Pt) -> bool {
        match self {
            FlatSurface::Torus { .. } => true,
            FlatSurface::Cylinder { height, .. } => p.y >= height.0 && p.y <= height.1,
        }
    }

    pub fn height_interval(&self) -> Option<(Rat, Rat)> {
        match self {
            FlatSurface::Cylinder { height, .. } => Some(height.clone()),
            FlatSurface::Torus { .. } => None,
        }
    }

    pub fn circumference(&self) -> Option<Rat> {
        match self {
            FlatSurface::Cylinder { circumference, .. } => Some(circumference.clone()),
            FlatSurface::Torus { .. } => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Covering maps between tori
// ---------------------------------------------------------------------------

/// Covering `R^2/Λ' -> R^2/Λ` induced by the identity on the plane, where
/// `Λ' = Λ·M` for an integer matrix `M`. The degree is `|det M|`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoveringMap {
    pub source: FlatSurface,
    pub target: FlatSurface,
    /// Column-major integer witness: `B_source = B_target * M`.
    pub matrix: [[BigInt; 2]; 2],
    pub degree: u64,
}

impl CoveringMap {
    pub fn from_sublattice(
        source: FlatSurface,
        target: FlatSurface,
    ) -> Result<Self, FlatGeomError> {
        let (sb, tb) = match (&source, &target) {
            (FlatSurface::Torus { basis: sb }, FlatSurface::Torus { basis: tb }) => (sb, tb),
            _ => return Err(FlatGeomError::WrongSurface),
        };
        let mut matrix = [[BigInt::from(0), BigInt::from(0)], [BigInt::from(0), BigInt::from(0)]];
        for (col, src_vec) in sb.iter().enumerate() {
            let det = cross(&tb[0], &tb[1]);
            let u = cross(src_vec, &tb[1]) / &det;
            let w = cross(&tb[0], src_vec) / &det;
            if !u.is_integer() || !w.is_integer() {
                return Err(FlatGeomError::NotASublattice);
            }
            matrix[0][col] = u.to_integer();
            matrix[1][col] = w.to_integer();
        }
        let det = &matrix[0][0] * &matrix[1][1] - &matrix[0][1] * &matrix[1][0];
        let degree = det.abs().to_u64().ok_or(FlatGeomError::NotASublattice)?;
        debug_assert!(degree >= 1);
        Ok(CoveringMap { source, target, matrix, degree })
    }

    pub fn identity(surface: FlatSurface) -> Result<Self, FlatGeomError> {
        CoveringMap::from_sublattice(surface.clone(), surface)
    }

    pub fn is_identity(&self) -> bool {
        self.degree == 1 && self.source == self.target
    }

    /// Coset representatives of the source lattice inside the target lattice,
    /// reduced into the source fundamental domain. There are exactly
    /// `degree` of them; `(0, 0)` is always included.
    pub fn deck_group(&self) -> Vec<Pt> {
        let tb = match &self.target {
            FlatSurface::Torus { basis } => basis,
            _ => unreachable!("covering maps only exist between tori"),
        };
        let mut reps = BTreeSet::new();
        let mut radius: i64 = 1;
        loop {
            for i in -radius..=radius {
                for j in -radius..=radius {
                    let lambda = &tb[0].scale(&rat(i)) + &tb[1].scale(&rat(j));
                    let reduced = self.source.reduce_point(&lambda);
                    reps.insert((reduced.x.clone(), reduced.y.clone()));
                }
            }
            if reps.len() as u64 >= self.degree {
                break;
            }
            radius += 1;
            assert!(radius <= 64, "deck enumeration did not converge");
        }
        assert_eq!(reps.len() as u64, self.degree, "coset count must equal the degree");
        reps.into_iter().map(|(x, y)| Pt::new(x, y)).collect()
    }

    /// Composition `outer ∘ inner` where `inner: F'' -> F'` and `outer: F' -> F`.
    pub fn compose(outer: &CoveringMap, inner: &CoveringMap) -> Result<Self, FlatGeomError> {
        if inner.target != outer.source {
            return Err(FlatGeomError::WrongSurface);
        }
        CoveringMap::from_sublattice(inner.source.clone(), outer.target.clone())
    }

    /// Order of the class of `w` in the quotient of the target lattice by the
    /// source lattice, i.e. the least `m >= 1` with `m·w` in the source lattice.
    pub fn holonomy_order(&self, w: &Pt) -> u64 {
        let mut acc = Pt::zero();
        for m in 1..=self.degree {
            acc = &acc + w;
            if self.source.is_deck_vector(&acc) {
                return m;
            }
        }
        panic!("holonomy order exceeds covering degree; input was not a deck vector of the target");
    }
}

// ---------------------------------------------------------------------------
// Twist profiles and self-maps
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileKind {
    /// Half-turn profile: plateaus 0 on `[-1, -3/5]` and 1 on `[3/5, 1]`.
    GoodMap,
    /// `n` full turns: plateaus 0 on `[-1, -3/4]` and `2n` on `[3/4, 1]`.
    DehnTwist(u32),
}

/// Piecewise-linear, continuous twist amplitude `m : [-1, 1] -> Q`.
///
/// The amplitude is stored as breakpoints `(t, m(t))` with strictly
/// increasing `t`, starting at `t = -1` and ending at `t = 1`. The shape
/// constraints of the two profile kinds are enforced at construction; note
/// that `m(0) = 0` is deliberately not one of them, since a piecewise-linear
/// function that vanishes at 0 cannot be strictly increasing across 0 while
/// staying nonnegative.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistProfile {
    pub kind: ProfileKind,
    points: Vec<(Rat, Rat)>,
}

impl TwistProfile {
    pub fn dehn_twist(n: u32) -> Self {
        assert!(n >= 1, "a Dehn twist needs n >= 1");
        let top = rat(2 * n as i64);
        TwistProfile::custom(
            ProfileKind::DehnTwist(n),
            vec![
                (rat(-1), rat(0)),
                (frac(-1, 4), rat(0)),
                (frac(1, 4), top.clone()),
                (rat(1), top),
            ],
        )
        .expect("default Dehn profile is valid")
    }

    pub fn good_map() -> Self {
        TwistProfile::custom(
            ProfileKind::GoodMap,
            vec![
                (rat(-1), rat(0)),
                (frac(-2, 5), rat(0)),
                (frac(2, 5), rat(1)),
                (rat(1), rat(1)),
            ],
        )
        .expect("default good-map profile is valid")
    }

    pub fn custom(kind: ProfileKind, points: Vec<(Rat, Rat)>) -> Result<Self, FlatGeomError> {
        let err = |msg: &str| Err(FlatGeomError::BadProfile(msg.to_string()));
        if points.len() < 2 {
            return err("need at least two breakpoints");
        }
        if points.first().unwrap().0 != rat(-1) || points.last().unwrap().0 != rat(1) {
            return err("breakpoints must span [-1, 1]");
        }
        for w in points.windows(2) {
            if w[0].0 >= w[1].0 {
                return err("breakpoint t-values must be strictly increasing");
            }
        }
        let profile = TwistProfile { kind, points };
        let (lo_end, hi_start, hi_value, inc_lo, inc_hi) = match kind {
            ProfileKind::GoodMap => (frac(-3, 5), frac(3, 5), rat(1), frac(-2, 5), frac(2, 5)),
            ProfileKind::DehnTwist(n) => {
                (frac(-3, 4), frac(3, 4), rat(2 * n as i64), frac(-1, 4), frac(1, 4))
            }
        };
        // Plateaus.
        if !profile.eval(&rat(-1)).is_zero() || !profile.eval(&lo_end).is_zero() {
            return err("amplitude must vanish on the lower plateau");
        }
        if profile.eval(&hi_start) != hi_value || profile.eval(&rat(1)) != hi_value {
            return err("amplitude must sit at its top value on the upper plateau");
        }
        for (t, m) in &profile.points {
            if *t <= lo_end && !m.is_zero() {
                return err("amplitude must vanish on the lower plateau");
            }
            if *t >= hi_start && *m != hi_value {
                return err("amplitude must sit at its top value on the upper plateau");
            }
            if m.is_negative() || *m > hi_value {
                return err("amplitude must stay within [0, top]");
            }
        }
        // Strict increase through the middle band.
        for w in profile.points.windows(2) {
            let (t0, m0) = &w[0];
            let (t1, m1) = &w[1];
            if t1 > &inc_lo && t0 < &inc_hi && m1 <= m0 {
                return err("amplitude must increase strictly through the middle band");
            }
        }
        Ok(profile)
    }

    pub fn breakpoints(&self) -> &[(Rat, Rat)] {
        &self.points
    }

    /// Linear interpolation of the amplitude; `t` must lie in `[-1, 1]`.
    pub fn eval(&self, t: &Rat) -> Rat {
        assert!(*t >= rat(-1) && *t <= rat(1), "twist amplitude queried outside [-1, 1]");
        for w in self.points.windows(2) {
            let (t0, m0) = &w[0];
            let (t1, m1) = &w[1];
            if t >= t0 && t <= t1 {
                let u = (t - t0) / (t1 - t0);
                return m0 + &(&u * &(m1 - m0));
            }
        }
        self.points.last().unwrap().1.clone()
    }

    /// Slope of the linear piece containing `t = 0` (this must be positive
    /// for a fold-and-twist pair of legs to be an immersion).
    pub fn slope_at_zero(&self) -> Rat {
        for w in self.points.windows(2) {
            let (t0, m0) = &w[0];
            let (t1, m1) = &w[1];
            if *t0 <= rat(0) && rat(0) < *t1 {
                return (m1 - m0) / (t1 - t0);
            }
        }
        rat(0)
    }
}

/// Self-map of a model surface.
#[derive(Clone, Debug, PartialEq)]
pub enum SurfaceSelfMap {
    Identity,
    /// Rotate each height slice of a `[-1, 1]` cylinder by half a
    /// circumference per unit of amplitude: `(θ, t) -> (θ + c·m(t)/2, t)`.
    Twist(TwistProfile),
    Translation(Pt),
}

impl SurfaceSelfMap {
    pub fn apply(&self, surface: &FlatSurface, p: &Pt) -> Result<Pt, FlatGeomError> {
        if !surface.contains(p) {
            return Err(FlatGeomError::OutOfRange(format!("{p:?}")));
        }
        match self {
            SurfaceSelfMap::Identity => Ok(p.clone()),
            SurfaceSelfMap::Translation(v) => Ok(p + v),
            SurfaceSelfMap::Twist(profile) => {
                let c = match surface {
                    FlatSurface::Cylinder { circumference, height }
                        if *height == (rat(-1), rat(1)) =>
                    {
                        circumference.clone()
                    }
                    _ => return Err(FlatGeomError::WrongSurface),
                };
                let m = profile.eval(&p.y);
                Ok(Pt::new(&p.x + &(&c * &m / rat(2)), p.y.clone()))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Fold maps
// ---------------------------------------------------------------------------

/// `a + b·sqrt(radicand)` with exact rational parts. Collapses to a plain
/// rational when the radicand is a perfect square.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadVal {
    pub a: Rat,
    pub b: Rat,
    pub radicand: Rat,
}

impl QuadVal {
    pub fn rational(a: Rat) -> Self {
        QuadVal { a, b: rat(0), radicand: rat(0) }
    }

    pub fn sqrt_of(radicand: Rat) -> Self {
        assert!(!radicand.is_negative());
        match rat_sqrt(&radicand) {
            Some(root) => QuadVal::rational(root),
            None => QuadVal { a: rat(0), b: rat(1), radicand },
        }
    }

    pub fn neg(&self) -> QuadVal {
        QuadVal { a: -self.a.clone(), b: -self.b.clone(), radicand: self.radicand.clone() }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.a)
    }

    pub fn to_f64(&self) -> f64 {
        crate::rat::rat_to_f64(&self.a)
            + crate::rat::rat_to_f64(&self.b) * crate::rat::rat_to_f64(&self.radicand).sqrt()
    }
}

/// Exact square root of a nonnegative rational, when one exists.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer();
    let den = r.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    (&sn * &sn == *num && &sd * &sd == *den).then(|| Rat::new(sn, sd))
}

/// The fold `(θ, t) -> (θ, t²)` from a `[-1, 1]` cylinder onto the `[0, 1]`
/// cylinder of the same circumference. Its critical circle is `{t = 0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FoldMap {
    pub source: FlatSurface,
    pub target: FlatSurface,
}

impl FoldMap {
    pub fn new(circumference: Rat) -> Result<Self, FlatGeomError> {
        let source = FlatSurface::cylinder(circumference.clone(), rat(-1), rat(1))?;
        let target = FlatSurface::cylinder(circumference, rat(0), rat(1))?;
        Ok(FoldMap { source, target })
    }

    pub fn image(&self, p: &Pt) -> Result<Pt, FlatGeomError> {
        if !self.source.contains(p) {
            return Err(FlatGeomError::OutOfRange(format!("{p:?}")));
        }
        Ok(Pt::new(p.x.clone(), &p.y * &p.y))
    }

    /// Preimages of `(θ, s)`: both square roots for `s > 0`, the critical
    /// circle point for `s = 0`. Heights are exact quadratic values.
    pub fn preimages(&self, q: &Pt) -> Result<Vec<(Rat, QuadVal)>, FlatGeomError> {
        if !self.target.contains(q) {
            return Err(FlatGeomError::OutOfRange(format!("{q:?}")));
        }
        if q.y.is_zero() {
            return Ok(vec![(q.x.clone(), QuadVal::rational(rat(0)))]);
        }
        let root = QuadVal::sqrt_of(q.y.clone());
        Ok(vec![(q.x.clone(), root.clone()), (q.x.clone(), root.neg())])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> Pt {
        Pt::new(rat(x), rat(y))
    }

    #[test]
    fn torus_construction() {
        assert!(FlatSurface::torus(pt(1, 0), pt(0, 1)).is_ok());
        assert!(FlatSurface::torus(pt(2, 0), pt(0, 1)).is_ok());
        assert_eq!(
            FlatSurface::torus(pt(1, 0), pt(1, 0)),
            Err(FlatGeomError::DegenerateLattice)
        );
    }

    #[test]
    fn reduce_is_idempotent_and_periodic() {
        let t = FlatSurface::torus(pt(2, 0), pt(1, 3)).unwrap();
        let p = Pt::new(frac(17, 5), frac(-7, 3));
        let r = t.reduce_point(&p);
        assert_eq!(t.reduce_point(&r), r);
        for lam in [pt(2, 0), pt(1, 3), pt(-3, -3)] {
            assert_eq!(t.reduce_point(&(&p + &lam)), r);
        }
    }

    #[test]
    fn covering_degrees() {
        let unit = FlatSurface::unit_torus();
        let doubled = FlatSurface::torus(pt(2, 0), pt(0, 1)).unwrap();
        let cov = CoveringMap::from_sublattice(doubled, unit.clone()).unwrap();
        assert_eq!(cov.degree, 2);
        let deck = cov.deck_group();
        assert_eq!(deck, vec![Pt::new(rat(0), rat(0)), Pt::new(rat(1), rat(0))]);

        let ident = CoveringMap::identity(unit.clone()).unwrap();
        assert_eq!(ident.degree, 1);
        assert_eq!(ident.deck_group(), vec![Pt::new(rat(0), rat(0))]);

        let six = FlatSurface::torus(pt(2, 0), pt(0, 3)).unwrap();
        let cov6 = CoveringMap::from_sublattice(six, unit.clone()).unwrap();
        assert_eq!(cov6.degree, 6);
        assert_eq!(cov6.deck_group().len(), 6);

        let not_sub = FlatSurface::torus(Pt::new(frac(1, 2), rat(0)), pt(0, 1)).unwrap();
        assert_eq!(
            CoveringMap::from_sublattice(not_sub, unit).map(|_| ()),
            Err(FlatGeomError::NotASublattice)
        );
    }

    #[test]
    fn covering_composition_multiplies_degrees() {
        let unit = FlatSurface::unit_torus();
        let mid = FlatSurface::torus(pt(2, 0), pt(0, 1)).unwrap();
        let top = FlatSurface::torus(pt(2, 0), pt(0, 3)).unwrap();
        let inner = CoveringMap::from_sublattice(top.clone(), mid.clone()).unwrap();
        let outer = CoveringMap::from_sublattice(mid, unit).unwrap();
        let composed = CoveringMap::compose(&outer, &inner).unwrap();
        assert_eq!(composed.degree, outer.degree * inner.degree);
    }

    #[test]
    fn dehn_twist_endpoints() {
        let cyl = FlatSurface::cylinder(rat(1), rat(-1), rat(1)).unwrap();
        let twist = SurfaceSelfMap::Twist(TwistProfile::dehn_twist(2));
        // Top slice: displaced by n full circumferences, i.e. the identity on the circle.
        let top = twist.apply(&cyl, &Pt::new(frac(1, 3), rat(1))).unwrap();
        assert_eq!(top, Pt::new(frac(1, 3) + rat(2), rat(1)));
        assert_eq!(cyl.reduce_point(&top), Pt::new(frac(1, 3), rat(1)));
        // Bottom slice: fixed.
        let bottom = twist.apply(&cyl, &Pt::new(frac(1, 3), rat(-1))).unwrap();
        assert_eq!(bottom, Pt::new(frac(1, 3), rat(-1)));
        // Identity map.
        let ident = SurfaceSelfMap::Identity;
        let p = Pt::new(frac(1, 7), frac(1, 2));
        assert_eq!(ident.apply(&cyl, &p).unwrap(), p);
    }

    #[test]
    fn twist_needs_standard_cylinder() {
        let torus = FlatSurface::unit_torus();
        let twist = SurfaceSelfMap::Twist(TwistProfile::dehn_twist(1));
        assert_eq!(
            twist.apply(&torus, &Pt::zero()),
            Err(FlatGeomError::WrongSurface)
        );
    }

    #[test]
    fn twist_is_a_rotation_on_each_slice() {
        let profile = TwistProfile::dehn_twist(1);
        let cyl = FlatSurface::cylinder(rat(1), rat(-1), rat(1)).unwrap();
        let twist = SurfaceSelfMap::Twist(profile);
        // Two distinct angular points on the same slice stay distinct, and the
        // displacement is slice-constant.
        let t = frac(1, 8);
        let a = twist.apply(&cyl, &Pt::new(rat(0), t.clone())).unwrap();
        let b = twist.apply(&cyl, &Pt::new(frac(1, 2), t.clone())).unwrap();
        assert_eq!(&b.x - &a.x, frac(1, 2));
        assert_eq!(a.y, t);
    }

    #[test]
    fn good_map_profile_plateaus() {
        let g = TwistProfile::good_map();
        assert_eq!(g.eval(&rat(-1)), rat(0));
        assert_eq!(g.eval(&frac(-4, 5)), rat(0));
        assert_eq!(g.eval(&frac(4, 5)), rat(1));
        assert_eq!(g.eval(&rat(1)), rat(1));
        assert!(g.slope_at_zero().is_positive());
    }

    #[test]
    fn bad_profiles_rejected() {
        // Plateau violated at the top.
        let bad = TwistProfile::custom(
            ProfileKind::DehnTwist(1),
            vec![(rat(-1), rat(0)), (rat(0), rat(1)), (rat(1), rat(1))],
        );
        assert!(matches!(bad, Err(FlatGeomError::BadProfile(_))));
    }

    #[test]
    fn fold_roundtrip() {
        let fold = FoldMap::new(rat(1)).unwrap();
        let p = Pt::new(frac(1, 3), frac(1, 2));
        assert_eq!(fold.image(&p).unwrap(), Pt::new(frac(1, 3), frac(1, 4)));
        let pre = fold.preimages(&Pt::new(frac(1, 3), frac(1, 4))).unwrap();
        assert_eq!(pre.len(), 2);
        assert_eq!(pre[0], (frac(1, 3), QuadVal::rational(frac(1, 2))));
        assert_eq!(pre[1], (frac(1, 3), QuadVal::rational(frac(-1, 2))));
        // The critical circle has a single preimage.
        let crit = fold.preimages(&Pt::new(frac(1, 3), rat(0))).unwrap();
        assert_eq!(crit, vec![(frac(1, 3), QuadVal::rational(rat(0)))]);
        // Irrational heights surface as quadratic values.
        let irr = fold.preimages(&Pt::new(rat(0), frac(1, 2))).unwrap();
        assert!(!irr[0].1.is_rational());
        assert!((irr[0].1.to_f64() - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn fold_preimage_contains_original() {
        let fold = FoldMap::new(rat(1)).unwrap();
        for p in [Pt::new(frac(1, 5), frac(-1, 2)), Pt::new(rat(0), frac(3, 4))] {
            let q = fold.image(&p).unwrap();
            let pre = fold.preimages(&q).unwrap();
            assert!(pre
                .iter()
                .any(|(x, t)| *x == p.x && t.as_rational() == Some(&p.y)));
        }
    }

    #[test]
    fn exact_rational_sqrt() {
        assert_eq!(rat_sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(rat_sqrt(&frac(1, 2)), None);
        assert_eq!(rat_sqrt(&rat(0)), Some(rat(0)));
    }
}
