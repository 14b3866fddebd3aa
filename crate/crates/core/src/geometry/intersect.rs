//! Exact intersection of convex bodies and the arrangement candidate set.

use std::collections::BTreeSet;

use super::point::{orient, Orientation, Point2};
use super::polygon::{ConvexPolygon, GeometryError};
use super::rational::Rat;

/// Intersection points of two closed segments: empty, a single point, or
/// the two endpoints of a shared collinear sub-segment.
pub fn segment_intersection(p1: &Point2, p2: &Point2, q1: &Point2, q2: &Point2) -> Vec<Point2> {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    use Orientation::Collinear as Co;

    if d1 == Co && d2 == Co && d3 == Co && d4 == Co {
        // All on one line: intersect the two 1-D intervals in lexicographic
        // order along the line.
        let (plo, phi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        let (qlo, qhi) = if q1 <= q2 { (q1, q2) } else { (q2, q1) };
        let lo = plo.max(qlo);
        let hi = phi.min(qhi);
        return match lo.cmp(hi) {
            std::cmp::Ordering::Greater => Vec::new(),
            std::cmp::Ordering::Equal => vec![lo.clone()],
            std::cmp::Ordering::Less => vec![lo.clone(), hi.clone()],
        };
    }

    let opposite = |a: Orientation, b: Orientation| {
        matches!(
            (a, b),
            (Orientation::Clockwise, Orientation::CounterClockwise)
                | (Orientation::CounterClockwise, Orientation::Clockwise)
                | (Co, _)
                | (_, Co)
        )
    };
    if !(opposite(d1, d2) && opposite(d3, d4)) {
        return Vec::new();
    }

    // A proper or touching crossing; the supporting lines are not parallel.
    let rx = &p2.x - &p1.x;
    let ry = &p2.y - &p1.y;
    let sx = &q2.x - &q1.x;
    let sy = &q2.y - &q1.y;
    let denom = &rx * &sy - &ry * &sx;
    debug_assert!(!num::Zero::is_zero(&denom));
    let t = ((&q1.x - &p1.x) * &sy - (&q1.y - &p1.y) * &sx) / &denom;
    vec![Point2::new(&p1.x + &t * &rx, &p1.y + &t * &ry)]
}

/// Exact intersection of two convex bodies, or `None` when empty.
///
/// Every vertex of `a ∩ b` is a vertex of `a` inside `b`, a vertex of `b`
/// inside `a`, or a boundary-boundary intersection point, so the hull of
/// those candidates is the intersection.
pub fn intersect(a: &ConvexPolygon, b: &ConvexPolygon) -> Option<ConvexPolygon> {
    let mut candidates: Vec<Point2> = Vec::new();
    for v in a.vertices() {
        if b.contains(v) {
            candidates.push(v.clone());
        }
    }
    for v in b.vertices() {
        if a.contains(v) {
            candidates.push(v.clone());
        }
    }
    for (a1, a2) in a.edges() {
        for (b1, b2) in b.edges() {
            candidates.extend(segment_intersection(a1, a2, b1, b2));
        }
    }
    if candidates.is_empty() {
        return None;
    }
    Some(ConvexPolygon::from_points(&candidates).expect("non-empty candidate set"))
}

/// Intersection of a non-empty list of bodies.
pub fn intersect_all(polys: &[&ConvexPolygon]) -> Result<Option<ConvexPolygon>, GeometryError> {
    let Some((first, rest)) = polys.split_first() else {
        return Err(GeometryError::EmptyPointSet);
    };
    let mut acc = (*first).clone();
    for p in rest {
        match intersect(&acc, p) {
            Some(next) => acc = next,
            None => return Ok(None),
        }
    }
    Ok(Some(acc))
}

/// Witness point of the common intersection: the lexicographically smallest
/// vertex of the iterated intersection, or `None` when the intersection is
/// empty. Errors on an empty input list.
pub fn common_point(polys: &[&ConvexPolygon]) -> Result<Option<Point2>, GeometryError> {
    Ok(intersect_all(polys)?.map(|p| p.lex_min_vertex().clone()))
}

/// Deduplicated, lexicographically sorted set of all body vertices and all
/// boundary-boundary intersection points between pairs of bodies.
///
/// Every non-empty intersection of a subfamily contains one of these points:
/// each vertex of such an intersection is either an original vertex or a
/// crossing of two original boundaries.
pub fn candidate_points(polys: &[&ConvexPolygon]) -> Vec<Point2> {
    let mut set: BTreeSet<Point2> = BTreeSet::new();
    for p in polys {
        for v in p.vertices() {
            set.insert(v.clone());
        }
    }
    for i in 0..polys.len() {
        for j in (i + 1)..polys.len() {
            for pt in pair_boundary_points(polys[i], polys[j]) {
                set.insert(pt);
            }
        }
    }
    set.into_iter().collect()
}

/// Points of `∂a ∩ ∂b`. For a point body the boundary is the point itself;
/// for a segment it is the whole segment.
pub fn pair_boundary_points(a: &ConvexPolygon, b: &ConvexPolygon) -> Vec<Point2> {
    match (a.dim(), b.dim()) {
        (0, _) => {
            let p = &a.vertices()[0];
            if b.on_boundary(p) {
                vec![p.clone()]
            } else {
                Vec::new()
            }
        }
        (_, 0) => pair_boundary_points(b, a),
        _ => {
            let mut out: Vec<Point2> = Vec::new();
            for (a1, a2) in a.edges() {
                for (b1, b2) in b.edges() {
                    out.extend(segment_intersection(a1, a2, b1, b2));
                }
            }
            out.sort();
            out.dedup();
            out
        }
    }
}

/// Number of bodies containing `p`.
pub fn depth(polys: &[&ConvexPolygon], p: &Point2) -> usize {
    polys.iter().filter(|poly| poly.contains(p)).count()
}

/// True when `p` lies in the axis-aligned bounding box of the whole set;
/// handy quick rejection for generators.
pub fn bounding_box(polys: &[&ConvexPolygon]) -> Option<(Point2, Point2)> {
    let mut it = polys.iter().flat_map(|p| p.vertices().iter());
    let first = it.next()?;
    let (mut xlo, mut xhi) = (first.x.clone(), first.x.clone());
    let (mut ylo, mut yhi) = (first.y.clone(), first.y.clone());
    for v in it {
        if v.x < xlo {
            xlo = v.x.clone();
        }
        if v.x > xhi {
            xhi = v.x.clone();
        }
        if v.y < ylo {
            ylo = v.y.clone();
        }
        if v.y > yhi {
            yhi = v.y.clone();
        }
    }
    Some((Point2::new(xlo, ylo), Point2::new(xhi, yhi)))
}

/// True when `p` lies in the convex hull of a non-empty point list.
pub fn conv_contains(points: &[Point2], p: &Point2) -> bool {
    ConvexPolygon::from_points(points)
        .map(|h| h.contains(p))
        .unwrap_or(false)
}

/// Centroid of a non-empty point list (a convex combination, hence inside
/// the hull of the list).
pub fn centroid(points: &[Point2]) -> Point2 {
    assert!(!points.is_empty());
    let n = super::rational::rat(points.len() as i64);
    let sx: Rat = points.iter().map(|p| p.x.clone()).sum();
    let sy: Rat = points.iter().map(|p| p.y.clone()).sum();
    Point2::new(sx / &n, sy / &n)
}
