//! Exact planar points and the orientation predicate.

use std::fmt;

use super::rational::{rat, Rat};

/// A point of the plane with exact rational coordinates.
///
/// Ordering is lexicographic (x, then y); that order is the canonical
/// tie-breaker throughout the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point2 {
    pub x: Rat,
    pub y: Rat,
}

impl Point2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point2 { x, y }
    }

    /// Integer-coordinate constructor, mostly for tests and generators.
    pub fn ints(x: i64, y: i64) -> Self {
        Point2::new(rat(x), rat(y))
    }
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Sign of the turn a -> b -> c.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

/// Exact orientation of the ordered triple `(a, b, c)`:
/// sign of the cross product (b - a) x (c - a).
pub fn orient(a: &Point2, b: &Point2, c: &Point2) -> Orientation {
    let lhs = (&b.x - &a.x) * (&c.y - &a.y);
    let rhs = (&b.y - &a.y) * (&c.x - &a.x);
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Less => Orientation::Clockwise,
        std::cmp::Ordering::Equal => Orientation::Collinear,
        std::cmp::Ordering::Greater => Orientation::CounterClockwise,
    }
}

/// True if `p` lies within the axis-aligned bounding box of `a` and `b`.
pub fn in_box(a: &Point2, b: &Point2, p: &Point2) -> bool {
    let (xlo, xhi) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ylo, yhi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    xlo <= &p.x && &p.x <= xhi && ylo <= &p.y && &p.y <= yhi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_signs() {
        let o = Point2::ints(0, 0);
        assert_eq!(
            orient(&o, &Point2::ints(1, 0), &Point2::ints(0, 1)),
            Orientation::CounterClockwise
        );
        assert_eq!(
            orient(&o, &Point2::ints(0, 1), &Point2::ints(1, 0)),
            Orientation::Clockwise
        );
        assert_eq!(
            orient(&o, &Point2::ints(1, 1), &Point2::ints(2, 2)),
            Orientation::Collinear
        );
    }

    #[test]
    fn lexicographic_order() {
        let a = Point2::ints(0, 5);
        let b = Point2::ints(1, -5);
        let c = Point2::ints(0, 6);
        assert!(a < b);
        assert!(a < c);
        assert!(c < b);
    }
}
