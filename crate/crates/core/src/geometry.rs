//! Exact planar predicates over rational points.
//!
//! Everything combinatorial (turn direction, crossings, containment) is decided
//! exactly on [`BigRational`] coordinates. Only [`Point::distance`] leaves the
//! rationals, rounding a single exact squared length before the square root.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A planar point with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point {
            x: BigRational::from_integer(x.into()),
            y: BigRational::from_integer(y.into()),
        }
    }

    /// `(x_num / x_den, y_num / y_den)`. Denominators must be nonzero.
    pub fn ratio(x_num: i64, x_den: i64, y_num: i64, y_den: i64) -> Self {
        Point {
            x: BigRational::new(x_num.into(), x_den.into()),
            y: BigRational::new(y_num.into(), y_den.into()),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (ratio_to_f64(&self.x), ratio_to_f64(&self.y))
    }

    pub fn squared_distance(&self, other: &Point) -> BigRational {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }

    /// Euclidean distance, rounded once from the exact squared distance.
    pub fn distance(&self, other: &Point) -> f64 {
        ratio_to_f64(&self.squared_distance(other)).sqrt()
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let two = BigRational::from_integer(BigInt::from(2));
        Point {
            x: (&self.x + &other.x) / &two,
            y: (&self.y + &other.y) / &two,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Only reachable for magnitudes beyond f64 range.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// A closed segment between two distinct points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        debug_assert!(a != b, "degenerate segment");
        Segment { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.distance(&self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// `(q - p) x (r - p)`.
pub fn cross(p: &Point, q: &Point, r: &Point) -> BigRational {
    (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x)
}

pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    match cross(p, q, r).cmp(&BigRational::zero()) {
        Ordering::Greater => Orientation::CounterClockwise,
        Ordering::Less => Orientation::Clockwise,
        Ordering::Equal => Orientation::Collinear,
    }
}

fn sign(p: &Point, q: &Point, r: &Point) -> i8 {
    match orientation(p, q, r) {
        Orientation::CounterClockwise => 1,
        Orientation::Clockwise => -1,
        Orientation::Collinear => 0,
    }
}

/// True if `p` lies on the closed segment `ab`.
pub fn on_closed_segment(p: &Point, a: &Point, b: &Point) -> bool {
    sign(a, b, p) == 0 && within_box(p, a, b)
}

/// True if `p` lies on segment `ab` but is neither endpoint.
pub fn on_open_segment(p: &Point, a: &Point, b: &Point) -> bool {
    p != a && p != b && on_closed_segment(p, a, b)
}

fn within_box(p: &Point, a: &Point, b: &Point) -> bool {
    let (xlo, xhi) = if a.x <= b.x {
        (&a.x, &b.x)
    } else {
        (&b.x, &a.x)
    };
    let (ylo, yhi) = if a.y <= b.y {
        (&a.y, &b.y)
    } else {
        (&b.y, &a.y)
    };
    xlo <= &p.x && &p.x <= xhi && ylo <= &p.y && &p.y <= yhi
}

/// Parameter `t` with `p = a + t (b - a)`, assuming `p` is on the line `ab`.
pub fn param_along(p: &Point, a: &Point, b: &Point) -> BigRational {
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    let num = (&p.x - &a.x) * &dx + (&p.y - &a.y) * &dy;
    num / (&dx * &dx + &dy * &dy)
}

/// The unique point where the open interiors of `s` and `t` meet, if they meet
/// in exactly one point. Touching endpoints and collinear overlaps yield `None`.
pub fn proper_crossing(s: &Segment, t: &Segment) -> Option<Point> {
    let o1 = sign(&s.a, &s.b, &t.a);
    let o2 = sign(&s.a, &s.b, &t.b);
    let o3 = sign(&t.a, &t.b, &s.a);
    let o4 = sign(&t.a, &t.b, &s.b);
    if o1 * o2 >= 0 || o3 * o4 >= 0 {
        return None;
    }
    let rx = &s.b.x - &s.a.x;
    let ry = &s.b.y - &s.a.y;
    let qx = &t.b.x - &t.a.x;
    let qy = &t.b.y - &t.a.y;
    let denom = &rx * &qy - &ry * &qx;
    let num = (&t.a.x - &s.a.x) * &qy - (&t.a.y - &s.a.y) * &qx;
    let u = num / denom;
    Some(Point {
        x: &s.a.x + &u * &rx,
        y: &s.a.y + &u * &ry,
    })
}

/// True if the closed segments `ab` and `cd` share a point that is interior to
/// at least one of them. Sharing only a common endpoint is allowed.
pub fn segments_conflict(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    if (a == c && b == d) || (a == d && b == c) {
        return true;
    }
    let o1 = sign(a, b, c);
    let o2 = sign(a, b, d);
    let o3 = sign(c, d, a);
    let o4 = sign(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    on_open_segment(c, a, b)
        || on_open_segment(d, a, b)
        || on_open_segment(a, c, d)
        || on_open_segment(b, c, d)
}

/// A closed polygon given by its vertices in cyclic order is simple when its
/// vertices are distinct and its edges meet only at shared endpoints.
pub fn is_simple_polygon(poly: &[Point]) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if poly[i] == poly[j] {
                return false;
            }
        }
    }
    for i in 0..n {
        let (a, b) = (&poly[i], &poly[(i + 1) % n]);
        for j in (i + 1)..n {
            let (c, d) = (&poly[j], &poly[(j + 1) % n]);
            if segments_conflict(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    Exterior,
    Boundary,
}

/// Exact point-in-polygon classification. Rejects non-simple polygons.
pub fn point_in_polygon(p: &Point, poly: &[Point]) -> Result<Location> {
    if !is_simple_polygon(poly) {
        return Err(Error::NonSimplePolygon);
    }
    Ok(locate_in_simple_polygon(p, poly))
}

/// [`point_in_polygon`] without the simplicity check, for callers that have
/// already validated the polygon.
pub fn locate_in_simple_polygon(p: &Point, poly: &[Point]) -> Location {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let u = &poly[i];
        let v = &poly[(i + 1) % n];
        if on_closed_segment(p, u, v) {
            return Location::Boundary;
        }
        let u_above = u.y > p.y;
        let v_above = v.y > p.y;
        if u_above != v_above {
            // The edge straddles the horizontal line through p; count it when
            // the intersection is strictly to the right of p.
            let s = sign(u, v, p);
            if (v_above && s > 0) || (!v_above && s < 0) {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Interior
    } else {
        Location::Exterior
    }
}

/// True if the closed segment `ab` is covered by the boundary of `poly`.
pub fn segment_on_polygon(a: &Point, b: &Point, poly: &[Point]) -> bool {
    let n = poly.len();
    let mut covered: Vec<(BigRational, BigRational)> = Vec::new();
    for i in 0..n {
        let u = &poly[i];
        let v = &poly[(i + 1) % n];
        if sign(a, b, u) != 0 || sign(a, b, v) != 0 {
            continue;
        }
        let tu = param_along(u, a, b);
        let tv = param_along(v, a, b);
        let (lo, hi) = if tu <= tv { (tu, tv) } else { (tv, tu) };
        covered.push((lo, hi));
    }
    covered.sort();
    let mut reach = BigRational::zero();
    for (lo, hi) in covered {
        if lo > reach {
            break;
        }
        if hi > reach {
            reach = hi;
        }
    }
    reach >= BigRational::one()
}

/// True if a single line contains every point.
pub fn all_collinear(points: &[Point]) -> bool {
    let Some(first) = points.first() else {
        return true;
    };
    let Some(second) = points.iter().find(|p| *p != first) else {
        return true;
    };
    points
        .iter()
        .all(|p| orientation(first, second, p) == Orientation::Collinear)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment {
        Segment::new(Point::int(a.0, a.1), Point::int(b.0, b.1))
    }

    fn unit_square() -> Vec<Point> {
        vec![
            Point::int(0, 0),
            Point::int(1, 0),
            Point::int(1, 1),
            Point::int(0, 1),
        ]
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(
            orientation(&Point::int(0, 0), &Point::int(1, 0), &Point::int(2, 0)),
            Orientation::Collinear
        );
        assert_eq!(
            orientation(&Point::int(0, 0), &Point::int(1, 0), &Point::int(1, 1)),
            Orientation::CounterClockwise
        );
        // Heading south then turning east is a left turn: (0,-8) x (3,1) = 24.
        assert_eq!(
            cross(&Point::int(11, 12), &Point::int(11, 4), &Point::int(14, 13)),
            BigRational::from_integer(24.into())
        );
        assert_eq!(
            orientation(&Point::int(11, 12), &Point::int(11, 4), &Point::int(14, 13)),
            Orientation::CounterClockwise
        );
    }

    #[test]
    fn proper_crossing_examples() {
        let p = proper_crossing(&seg((11, 12), (11, 4)), &seg((14, 13), (10, 5)));
        assert_eq!(p, Some(Point::int(11, 7)));
        let p = proper_crossing(&seg((6, 9), (12, 14)), &seg((5, 13), (11, 12)));
        assert_eq!(p, Some(Point::ratio(59, 6, 439, 36)));
        let p = proper_crossing(&seg((0, 7), (10, 5)), &seg((9, 3), (6, 9)));
        assert_eq!(p, Some(Point::ratio(70, 9, 49, 9)));
        assert_eq!(
            proper_crossing(&seg((0, 0), (1, 0)), &seg((1, 0), (2, 1))),
            None
        );
    }

    #[test]
    fn proper_crossing_rejects_touch_and_overlap() {
        // T-junction: endpoint of one segment in the interior of the other.
        assert_eq!(
            proper_crossing(&seg((0, 0), (2, 0)), &seg((1, 0), (1, 3))),
            None
        );
        // Collinear overlap.
        assert_eq!(
            proper_crossing(&seg((0, 0), (3, 0)), &seg((1, 0), (5, 0))),
            None
        );
        // Disjoint.
        assert_eq!(
            proper_crossing(&seg((0, 0), (1, 0)), &seg((0, 1), (1, 1))),
            None
        );
    }

    #[test]
    fn point_in_polygon_examples() {
        let sq = unit_square();
        let half = BigRational::new(1.into(), 2.into());
        let inner = Point::new(half.clone(), half.clone());
        assert_eq!(point_in_polygon(&inner, &sq).unwrap(), Location::Interior);
        assert_eq!(
            point_in_polygon(&Point::int(2, 2), &sq).unwrap(),
            Location::Exterior
        );
        let edge = Point::new(half, BigRational::zero());
        assert_eq!(point_in_polygon(&edge, &sq).unwrap(), Location::Boundary);
        assert_eq!(
            point_in_polygon(&Point::int(1, 1), &sq).unwrap(),
            Location::Boundary
        );
    }

    #[test]
    fn point_in_polygon_ray_through_vertex() {
        // Ray from (1,1) to the right passes exactly through vertex (3,1).
        let poly = vec![
            Point::int(0, 0),
            Point::int(3, 1),
            Point::int(0, 2),
            Point::int(-1, 1),
        ];
        assert_eq!(
            point_in_polygon(&Point::int(1, 1), &poly).unwrap(),
            Location::Interior
        );
        assert_eq!(
            point_in_polygon(&Point::int(4, 1), &poly).unwrap(),
            Location::Exterior
        );
        assert_eq!(
            point_in_polygon(&Point::int(-2, 1), &poly).unwrap(),
            Location::Exterior
        );
    }

    #[test]
    fn point_in_polygon_rejects_bowtie() {
        let bowtie = vec![
            Point::int(0, 0),
            Point::int(1, 1),
            Point::int(1, 0),
            Point::int(0, 1),
        ];
        assert!(matches!(
            point_in_polygon(&Point::int(5, 5), &bowtie),
            Err(Error::NonSimplePolygon)
        ));
    }

    #[test]
    fn collinearity() {
        let pts = |v: &[(i64, i64)]| v.iter().map(|&(x, y)| Point::int(x, y)).collect::<Vec<_>>();
        assert!(all_collinear(&pts(&[(0, 0), (1, 1), (2, 2)])));
        assert!(!all_collinear(&pts(&[(0, 0), (1, 1), (2, 0)])));
        assert!(all_collinear(&pts(&[(3, 4)])));
    }

    #[test]
    fn segment_cover() {
        let sq = unit_square();
        assert!(segment_on_polygon(
            &Point::int(0, 0),
            &Point::int(1, 0),
            &sq
        ));
        assert!(!segment_on_polygon(
            &Point::int(0, 0),
            &Point::int(1, 1),
            &sq
        ));
        let half = Point::new(BigRational::new(1.into(), 2.into()), BigRational::zero());
        assert!(segment_on_polygon(&half, &Point::int(1, 0), &sq));
    }

    #[test]
    fn distance_is_rounded_once() {
        assert_eq!(Point::int(0, 0).distance(&Point::int(3, 4)), 5.0);
        assert_eq!(Point::int(0, 0).distance(&Point::int(1, 1)), 2f64.sqrt());
    }
}
