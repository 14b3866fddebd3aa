//! Deterministic, seeded generators for the family classes the test
//! harness and acceptance suite run on.
//!
//! General position is enforced constructively (distinct rational slopes,
//! generic intercepts) and then verified exactly; on a verification
//! failure the generator retries with a perturbed seed a bounded number
//! of times.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{Family, FamilyError};
use crate::geometry::{intersect, rat, ratio, ConvexPolygon, Point2, Rat};
use crate::pierce::{PierceError, WeightedPoints};

#[derive(Debug, Error)]
pub enum GenError {
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("generator verification failed after {attempts} attempts: {reason}")]
    VerificationFailed { attempts: u32, reason: String },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Pierce(#[from] PierceError),
}

/// What to generate. Every variant is fully determined by its parameters
/// and seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GenSpec {
    /// Pairwise-crossing segments in general position: distinct slopes,
    /// no two parallel, no three concurrent, clipped to a box containing
    /// all crossings.
    CrossingSegments { n: u32, seed: u64 },
    /// Pairwise disjoint unit squares.
    Disjoint { n: u32, seed: u64 },
    /// Nested squares sharing the origin.
    Concentric { n: u32, seed: u64 },
    /// p-q+1 pairwise disjoint segments plus q-1 nested boxes containing
    /// all of them: satisfies (p,q) with piercing number exactly p-q+1.
    SegmentsPlusBoxes { p: u32, q: u32, seed: u64 },
    /// Convex hulls of random integer points in a window on a coarse grid.
    RandomPolygons {
        n: u32,
        points_per_body: u32,
        extent: u32,
        span: u32,
        seed: u64,
    },
    /// Inscribed rational octagons of random center and radius
    /// (disc stand-ins with exact coordinates).
    DiscPolygons {
        n: u32,
        extent: u32,
        max_radius: u32,
        seed: u64,
    },
    /// Weighted point multiset on a side x side integer grid.
    GridPoints {
        side: u32,
        support: u32,
        max_weight: u32,
        seed: u64,
    },
}

#[derive(Clone, Debug)]
pub enum GenOutput {
    Family(Family),
    Points(WeightedPoints),
}

pub fn gen(spec: &GenSpec) -> Result<GenOutput, GenError> {
    match spec {
        GenSpec::GridPoints { .. } => Ok(GenOutput::Points(gen_points(spec)?)),
        _ => Ok(GenOutput::Family(gen_family(spec)?)),
    }
}

/// Family-producing kinds; errors on `GridPoints`.
pub fn gen_family(spec: &GenSpec) -> Result<Family, GenError> {
    match *spec {
        GenSpec::CrossingSegments { n, seed } => crossing_segments(n, seed),
        GenSpec::Disjoint { n, seed } => disjoint(n, seed),
        GenSpec::Concentric { n, seed } => concentric(n, seed),
        GenSpec::SegmentsPlusBoxes { p, q, seed } => segments_plus_boxes(p, q, seed),
        GenSpec::RandomPolygons {
            n,
            points_per_body,
            extent,
            span,
            seed,
        } => random_polygons(n, points_per_body, extent, span, seed),
        GenSpec::DiscPolygons {
            n,
            extent,
            max_radius,
            seed,
        } => disc_polygons(n, extent, max_radius, seed),
        GenSpec::GridPoints { .. } => Err(GenError::InvalidParams(
            "grid-points produces a weighted point set, not a family".into(),
        )),
    }
}

/// Point-producing kinds; errors on family kinds.
pub fn gen_points(spec: &GenSpec) -> Result<WeightedPoints, GenError> {
    match *spec {
        GenSpec::GridPoints {
            side,
            support,
            max_weight,
            seed,
        } => grid_points(side, support, max_weight, seed),
        _ => Err(GenError::InvalidParams(
            "this kind produces a family, not a weighted point set".into(),
        )),
    }
}

const MAX_ATTEMPTS: u32 = 32;

fn crossing_segments(n: u32, seed: u64) -> Result<Family, GenError> {
    if n == 0 || n > 16 {
        return Err(GenError::InvalidParams(format!(
            "crossing-segments supports 1..=16 segments, got {n}"
        )));
    }
    let mut reason = String::new();
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        // slope_i = 1/(i+1); intercepts generic small rationals
        let slopes: Vec<Rat> = (0..n).map(|i| ratio(1, i as i64 + 1)).collect();
        let intercepts: Vec<Rat> = (0..n)
            .map(|_| ratio(rng.gen_range(-(16 * n as i64)..=16 * n as i64), 64))
            .collect();

        let mut crossings: Vec<Point2> = Vec::new();
        for i in 0..n as usize {
            for j in (i + 1)..n as usize {
                let x = (&intercepts[j] - &intercepts[i]) / (&slopes[i] - &slopes[j]);
                let y = &slopes[i] * &x + &intercepts[i];
                crossings.push(Point2::new(x, y));
            }
        }
        let (xlo, xhi, ylo, yhi) = extent_with_margin(&crossings, &intercepts);

        let mut shapes: Vec<ConvexPolygon> = Vec::with_capacity(n as usize);
        for i in 0..n as usize {
            let ends = clip_line_to_box(&slopes[i], &intercepts[i], &xlo, &xhi, &ylo, &yhi);
            if ends.len() != 2 {
                reason = "line does not exit the box through two points".into();
                shapes.clear();
                break;
            }
            shapes.push(ConvexPolygon::segment(ends[0].clone(), ends[1].clone()));
        }
        if shapes.len() != n as usize {
            continue;
        }
        let family = Family::new(shapes)?;
        match verify_general_position(&family) {
            Ok(()) => return Ok(family),
            Err(r) => reason = r,
        }
    }
    Err(GenError::VerificationFailed {
        attempts: MAX_ATTEMPTS,
        reason,
    })
}

fn extent_with_margin(crossings: &[Point2], intercepts: &[Rat]) -> (Rat, Rat, Rat, Rat) {
    let mut xlo = rat(-1);
    let mut xhi = rat(1);
    let mut ylo = intercepts.iter().min().cloned().unwrap_or_else(|| rat(0)) - rat(1);
    let mut yhi = intercepts.iter().max().cloned().unwrap_or_else(|| rat(0)) + rat(1);
    for p in crossings {
        if &p.x - rat(1) < xlo {
            xlo = &p.x - rat(1);
        }
        if &p.x + rat(1) > xhi {
            xhi = &p.x + rat(1);
        }
        if &p.y - rat(1) < ylo {
            ylo = &p.y - rat(1);
        }
        if &p.y + rat(1) > yhi {
            yhi = &p.y + rat(1);
        }
    }
    (xlo, xhi, ylo, yhi)
}

/// The two points where the line y = s x + b meets the box boundary.
fn clip_line_to_box(s: &Rat, b: &Rat, xlo: &Rat, xhi: &Rat, ylo: &Rat, yhi: &Rat) -> Vec<Point2> {
    let mut pts: Vec<Point2> = Vec::new();
    for x in [xlo, xhi] {
        let y = s * x + b;
        if &y >= ylo && &y <= yhi {
            pts.push(Point2::new(x.clone(), y));
        }
    }
    for y in [ylo, yhi] {
        let x = (y - b) / s;
        if &x >= xlo && &x <= xhi {
            pts.push(Point2::new(x, y.clone()));
        }
    }
    pts.sort();
    pts.dedup();
    pts
}

/// All pairs cross in a single point, no two segments parallel, and no
/// three supporting lines concurrent.
pub fn verify_general_position(family: &Family) -> Result<(), String> {
    let shapes = family.shapes();
    let n = shapes.len();
    let mut crossing: Vec<Vec<Option<Point2>>> = vec![vec![None; n]; n];
    for i in 0..n {
        if shapes[i].dim() != 1 {
            return Err(format!("body {i} is not a segment"));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            match intersect(shapes[i], shapes[j]) {
                Some(cap) if cap.dim() == 0 => {
                    let p = cap.lex_min_vertex().clone();
                    crossing[i][j] = Some(p);
                }
                Some(_) => return Err(format!("segments {i},{j} overlap (parallel)")),
                None => return Err(format!("segments {i},{j} do not cross")),
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let pij = crossing[i][j].as_ref().unwrap();
                let pik = crossing[i][k].as_ref().unwrap();
                let pjk = crossing[j][k].as_ref().unwrap();
                if pij == pik || pij == pjk || pik == pjk {
                    return Err(format!("segments {i},{j},{k} are concurrent"));
                }
            }
        }
    }
    Ok(())
}

fn disjoint(n: u32, seed: u64) -> Result<Family, GenError> {
    if n == 0 {
        return Err(GenError::InvalidParams("need n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes = (0..n as i64)
        .map(|i| {
            let dy = ratio(rng.gen_range(0..=8), 4);
            ConvexPolygon::aabb(
                &Point2::new(rat(3 * i), dy.clone()),
                &Point2::new(rat(3 * i + 1), dy + rat(1)),
            )
        })
        .collect();
    Ok(Family::new(shapes)?)
}

fn concentric(n: u32, _seed: u64) -> Result<Family, GenError> {
    if n == 0 {
        return Err(GenError::InvalidParams("need n >= 1".into()));
    }
    let shapes = (1..=n as i64)
        .map(|k| ConvexPolygon::aabb(&Point2::ints(-k, -k), &Point2::ints(k, k)))
        .collect();
    Ok(Family::new(shapes)?)
}

fn segments_plus_boxes(p: u32, q: u32, seed: u64) -> Result<Family, GenError> {
    if !(2 <= q && q <= p) {
        return Err(GenError::InvalidParams(format!(
            "need 2 <= q <= p, got p = {p}, q = {q}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = (p - q + 1) as i64;
    let mut shapes: Vec<ConvexPolygon> = Vec::new();
    for j in 0..m {
        let y0 = ratio(rng.gen_range(0..=2), 4);
        let y1 = rat(2) + ratio(rng.gen_range(0..=2), 4);
        shapes.push(ConvexPolygon::segment(
            Point2::new(rat(4 * j), y0),
            Point2::new(rat(4 * j + 2), y1),
        ));
    }
    for t in 0..(q - 1) as i64 {
        shapes.push(ConvexPolygon::aabb(
            &Point2::ints(-1 - t, -1 - t),
            &Point2::ints(4 * m - 1 + t, 3 + t),
        ));
    }
    Ok(Family::new(shapes)?)
}

fn random_polygons(
    n: u32,
    points_per_body: u32,
    extent: u32,
    span: u32,
    seed: u64,
) -> Result<Family, GenError> {
    if n == 0 || points_per_body == 0 || span == 0 {
        return Err(GenError::InvalidParams(
            "need n >= 1, points_per_body >= 1, span >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shapes = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let cx = rng.gen_range(0..=extent as i64);
        let cy = rng.gen_range(0..=extent as i64);
        let pts: Vec<Point2> = (0..points_per_body)
            .map(|_| {
                Point2::ints(
                    cx + rng.gen_range(-(span as i64)..=span as i64),
                    cy + rng.gen_range(-(span as i64)..=span as i64),
                )
            })
            .collect();
        shapes.push(ConvexPolygon::from_points(&pts).expect("non-empty"));
    }
    Ok(Family::new(shapes)?)
}

/// Rational points on the circle of radius r around c: the tangent
/// half-angle parametrization keeps every coordinate rational.
fn octagon(cx: i64, cy: i64, r: i64) -> ConvexPolygon {
    let ts = [rat(0), ratio(1, 2), rat(1), rat(3), rat(-3), rat(-1), ratio(-1, 2)];
    let mut pts: Vec<Point2> = ts
        .iter()
        .map(|t| {
            let denom = rat(1) + t * t;
            let ux = (rat(1) - t * t) / &denom;
            let uy = rat(2) * t / &denom;
            Point2::new(rat(cx) + rat(r) * ux, rat(cy) + rat(r) * uy)
        })
        .collect();
    pts.push(Point2::ints(cx - r, cy));
    ConvexPolygon::from_points(&pts).expect("non-empty")
}

fn disc_polygons(n: u32, extent: u32, max_radius: u32, seed: u64) -> Result<Family, GenError> {
    if n == 0 || max_radius == 0 {
        return Err(GenError::InvalidParams("need n >= 1 and max_radius >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes = (0..n)
        .map(|_| {
            let cx = rng.gen_range(0..=extent as i64);
            let cy = rng.gen_range(0..=extent as i64);
            let r = rng.gen_range(1..=max_radius as i64);
            octagon(cx, cy, r)
        })
        .collect();
    Ok(Family::new(shapes)?)
}

fn grid_points(side: u32, support: u32, max_weight: u32, seed: u64) -> Result<WeightedPoints, GenError> {
    if side == 0 || max_weight == 0 {
        return Err(GenError::InvalidParams("need side >= 1 and max_weight >= 1".into()));
    }
    let cells = (side as u64) * (side as u64);
    if support == 0 || support as u64 > cells {
        return Err(GenError::InvalidParams(format!(
            "support must be in 1..={cells}, got {support}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all: Vec<(i64, i64)> = (0..side as i64)
        .flat_map(|i| (0..side as i64).map(move |j| (i, j)))
        .collect();
    // Fisher-Yates prefix for a deterministic distinct sample.
    for i in 0..support as usize {
        let j = rng.gen_range(i..all.len());
        all.swap(i, j);
    }
    let mut chosen: Vec<(i64, i64)> = all[..support as usize].to_vec();
    chosen.sort();
    let entries = chosen
        .into_iter()
        .map(|(x, y)| {
            (
                Point2::ints(x, y),
                rat(rng.gen_range(1..=max_weight as i64)),
            )
        })
        .collect();
    Ok(WeightedPoints::new(entries)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::family::{has_pq_property, intersection_graph, tuple_stats};
    use crate::pierce::exact_min_piercing;

    #[test]
    fn generators_are_deterministic() {
        let specs = [
            GenSpec::CrossingSegments { n: 5, seed: 7 },
            GenSpec::Disjoint { n: 4, seed: 7 },
            GenSpec::Concentric { n: 4, seed: 7 },
            GenSpec::SegmentsPlusBoxes { p: 5, q: 3, seed: 7 },
            GenSpec::RandomPolygons {
                n: 5,
                points_per_body: 4,
                extent: 12,
                span: 4,
                seed: 7,
            },
            GenSpec::DiscPolygons {
                n: 5,
                extent: 10,
                max_radius: 4,
                seed: 7,
            },
        ];
        for spec in &specs {
            let a = gen_family(spec).unwrap();
            let b = gen_family(spec).unwrap();
            assert_eq!(a.bodies(), b.bodies(), "{spec:?}");
        }
        let a = gen_points(&GenSpec::GridPoints {
            side: 4,
            support: 9,
            max_weight: 3,
            seed: 5,
        })
        .unwrap();
        let b = gen_points(&GenSpec::GridPoints {
            side: 4,
            support: 9,
            max_weight: 3,
            seed: 5,
        })
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn crossing_segments_are_in_general_position() {
        for n in [2u32, 3, 4, 6] {
            for seed in 0..4u64 {
                let fam = gen_family(&GenSpec::CrossingSegments { n, seed }).unwrap();
                assert_eq!(fam.len(), n as usize);
                verify_general_position(&fam).unwrap();
                let g = intersection_graph(&fam);
                assert_eq!(g.edge_count(), (n * (n - 1) / 2) as usize);
                if n >= 3 {
                    let stats = tuple_stats(&fam, 3, &Budget::default()).unwrap();
                    assert_eq!(stats.f[2], 0, "no three segments concurrent");
                }
            }
        }
    }

    #[test]
    fn crossing_three_yields_exactly_two_intersecting_triple() {
        let fam = gen_family(&GenSpec::CrossingSegments { n: 3, seed: 1 }).unwrap();
        let hit = crate::family::find_exactly_two_intersecting(&fam, 3, &Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(hit.len(), 3);
    }

    #[test]
    fn segments_plus_boxes_shape() {
        let fam = gen_family(&GenSpec::SegmentsPlusBoxes { p: 4, q: 3, seed: 3 }).unwrap();
        assert_eq!(fam.len(), 4);
        let d = has_pq_property(&fam, 4, 3, &Budget::default()).unwrap();
        assert!(d.holds);
        let exact = exact_min_piercing(&fam, &Budget::default()).unwrap();
        assert_eq!(exact.size(), 2); // p - q + 1
    }

    #[test]
    fn disjoint_family_has_empty_graph() {
        let fam = gen_family(&GenSpec::Disjoint { n: 5, seed: 11 }).unwrap();
        assert_eq!(intersection_graph(&fam).edge_count(), 0);
    }

    #[test]
    fn octagon_vertices_lie_on_the_circle() {
        let body = octagon(2, -1, 5);
        assert_eq!(body.dim(), 2);
        assert_eq!(body.vertices().len(), 8);
        for v in body.vertices() {
            let dx = &v.x - rat(2);
            let dy = &v.y - rat(-1);
            assert_eq!(&dx * &dx + &dy * &dy, rat(25));
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(gen_family(&GenSpec::CrossingSegments { n: 0, seed: 1 }).is_err());
        assert!(gen_family(&GenSpec::SegmentsPlusBoxes { p: 3, q: 5, seed: 1 }).is_err());
        assert!(gen_points(&GenSpec::GridPoints {
            side: 3,
            support: 10,
            max_weight: 1,
            seed: 1
        })
        .is_err());
        assert!(gen_family(&GenSpec::GridPoints {
            side: 3,
            support: 4,
            max_weight: 1,
            seed: 1
        })
        .is_err());
    }
}
