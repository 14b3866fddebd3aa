//! Convex bodies: canonical convex polygons, possibly degenerate.

use thiserror::Error;

use super::point::{in_box, orient, Orientation, Point2};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("a convex body needs at least one point")]
    EmptyPointSet,
}

/// A closed convex region stored in canonical form: counterclockwise
/// vertex order starting at the lexicographically smallest vertex, with
/// collinear runs collapsed. One vertex is a point, two are a segment.
///
/// Canonical form makes structural equality coincide with geometric
/// equality, so `PartialEq` is the set-equality predicate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConvexPolygon {
    verts: Vec<Point2>,
}

impl ConvexPolygon {
    /// Convex hull of an arbitrary non-empty point set.
    pub fn from_points(points: &[Point2]) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::EmptyPointSet);
        }
        Ok(ConvexPolygon {
            verts: convex_hull(points),
        })
    }

    pub fn point(p: Point2) -> Self {
        ConvexPolygon { verts: vec![p] }
    }

    pub fn segment(a: Point2, b: Point2) -> Self {
        ConvexPolygon {
            verts: convex_hull(&[a, b]),
        }
    }

    /// Axis-aligned box `[x0, x1] x [y0, y1]` (degenerate boxes allowed).
    pub fn aabb(x0: &Point2, x1: &Point2) -> Self {
        let pts = [
            x0.clone(),
            Point2::new(x1.x.clone(), x0.y.clone()),
            x1.clone(),
            Point2::new(x0.x.clone(), x1.y.clone()),
        ];
        ConvexPolygon {
            verts: convex_hull(&pts),
        }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.verts
    }

    /// 0 = point, 1 = segment, 2 = full-dimensional polygon.
    pub fn dim(&self) -> u8 {
        match self.verts.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    /// Lexicographically smallest vertex; the canonical witness point.
    pub fn lex_min_vertex(&self) -> &Point2 {
        &self.verts[0]
    }

    /// Edges in counterclockwise order. Empty for a point, a single edge
    /// for a segment.
    pub fn edges(&self) -> Vec<(&Point2, &Point2)> {
        match self.verts.len() {
            0 | 1 => Vec::new(),
            2 => vec![(&self.verts[0], &self.verts[1])],
            n => (0..n)
                .map(|i| (&self.verts[i], &self.verts[(i + 1) % n]))
                .collect(),
        }
    }

    /// Exact closed containment.
    pub fn contains(&self, p: &Point2) -> bool {
        match self.verts.len() {
            1 => &self.verts[0] == p,
            2 => {
                orient(&self.verts[0], &self.verts[1], p) == Orientation::Collinear
                    && in_box(&self.verts[0], &self.verts[1], p)
            }
            _ => self
                .edges()
                .iter()
                .all(|(a, b)| orient(a, b, p) != Orientation::Clockwise),
        }
    }

    /// Exact containment in the topological interior. Degenerate bodies
    /// have empty interior.
    pub fn strictly_contains(&self, p: &Point2) -> bool {
        if self.dim() < 2 {
            return false;
        }
        self.edges()
            .iter()
            .all(|(a, b)| orient(a, b, p) == Orientation::CounterClockwise)
    }

    /// On the boundary: contained but not interior. For degenerate bodies
    /// the whole set is boundary.
    pub fn on_boundary(&self, p: &Point2) -> bool {
        self.contains(p) && !self.strictly_contains(p)
    }
}

/// Identifier of a body within a family; stable across operations.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BodyId(pub u32);

impl std::fmt::Display for BodyId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A family member: a convex region plus its id.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConvexBody {
    pub id: BodyId,
    pub shape: ConvexPolygon,
}

impl ConvexBody {
    pub fn new(id: BodyId, shape: ConvexPolygon) -> Self {
        ConvexBody { id, shape }
    }
}

/// Monotone-chain convex hull with strict turns, returning the canonical
/// vertex list: lexicographically smallest vertex first, counterclockwise.
/// Collinear input collapses to its two extreme points, coincident input
/// to a single point.
fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }

    let mut lower: Vec<Point2> = Vec::with_capacity(pts.len());
    for p in &pts {
        while lower.len() >= 2
            && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p)
                != Orientation::CounterClockwise
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point2> = Vec::with_capacity(pts.len());
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p)
                != Orientation::CounterClockwise
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] > lower[1] {
        lower.swap(0, 1);
    }
    debug_assert!(lower[0] <= *lower.iter().min().unwrap());
    lower
}
