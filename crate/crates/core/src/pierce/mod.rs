//! Piercing machinery: exact minimum transversal, greedy baseline, exact
//! fractional transversal/matching LPs, weak epsilon-nets and the
//! count/deep-point/LP/net pipeline.

pub mod net;
pub mod pipeline;
pub mod simplex;

use std::collections::BTreeMap;

use num::Signed;
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::family::{Family, FamilyError};
use crate::geometry::{candidate_points, ceil_to_i64, rat, BodyId, Point2, Rat};

pub use net::{verify_weak_net, weak_epsilon_net, NetReport};
pub use pipeline::{ak_pipeline, PipelineReport};
pub use simplex::{solve_covering_lp, LpSolution, SimplexError};

#[derive(Debug, Error)]
pub enum PierceError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("net repair cap exceeded after {0} rounds; no verified net produced")]
    RepairCapExceeded(u32),
    #[error("pipeline stage {stage} ({name}) failed: {reason}")]
    StageFailed {
        stage: u8,
        name: &'static str,
        reason: String,
    },
}

/// A transversal with an explicit containment certificate: each body id is
/// assigned the index of a point of `points` it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiercingSet {
    pub points: Vec<Point2>,
    pub certificate: BTreeMap<BodyId, usize>,
}

impl PiercingSet {
    /// Assigns every body its first covering point; errors if some body
    /// is missed.
    pub fn assign(family: &Family, points: Vec<Point2>) -> Result<Self, PierceError> {
        let mut certificate = BTreeMap::new();
        for body in family.bodies() {
            let idx = points
                .iter()
                .position(|p| body.shape.contains(p))
                .ok_or_else(|| {
                    PierceError::InvalidParams(format!("body {} is not pierced", body.id))
                })?;
            certificate.insert(body.id, idx);
        }
        Ok(PiercingSet {
            points,
            certificate,
        })
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// Re-checks the certificate exactly.
    pub fn verify(&self, family: &Family) -> bool {
        family.bodies().iter().all(|body| {
            self.certificate
                .get(&body.id)
                .and_then(|&i| self.points.get(i))
                .is_some_and(|p| body.shape.contains(p))
        })
    }
}

/// A finite weighted point set with positive rational weights; duplicate
/// points are merged by summing weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPoints {
    entries: Vec<(Point2, Rat)>,
    total: Rat,
}

impl WeightedPoints {
    pub fn new(raw: Vec<(Point2, Rat)>) -> Result<Self, PierceError> {
        if raw.is_empty() {
            return Err(PierceError::InvalidParams(
                "weighted point set must be non-empty".into(),
            ));
        }
        let mut map: BTreeMap<Point2, Rat> = BTreeMap::new();
        for (p, w) in raw {
            if !w.is_positive() {
                return Err(PierceError::InvalidParams(format!(
                    "non-positive weight {w} at {p:?}"
                )));
            }
            *map.entry(p).or_insert_with(|| rat(0)) += w;
        }
        let entries: Vec<(Point2, Rat)> = map.into_iter().collect();
        let total = entries.iter().map(|(_, w)| w.clone()).sum();
        Ok(WeightedPoints { entries, total })
    }

    pub fn entries(&self) -> &[(Point2, Rat)] {
        &self.entries
    }

    pub fn total(&self) -> &Rat {
        &self.total
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    /// Total weight of the entries inside a convex body.
    pub fn weight_inside(&self, body: &crate::geometry::ConvexPolygon) -> Rat {
        self.entries
            .iter()
            .filter(|(p, _)| body.contains(p))
            .map(|(_, w)| w.clone())
            .sum()
    }
}

/// Exact fractional transversal/matching pair: equal optimal values (an
/// exact rational), the optimal weighted point set, per-body dual weights
/// and alpha = 1 / value.
#[derive(Clone, Debug)]
pub struct LPResult {
    pub primal_value: Rat,
    pub point_weights: WeightedPoints,
    pub set_weights: BTreeMap<BodyId, Rat>,
    pub alpha: Rat,
}

/// Candidate columns for covering problems: one representative point per
/// distinct coverage mask, strictly dominated masks removed, ordered by
/// descending depth then lexicographic point order.
pub fn coverage_columns(family: &Family) -> Vec<(Point2, u64)> {
    let shapes = family.shapes();
    let cands = candidate_points(&shapes);
    let mut by_mask: BTreeMap<u64, Point2> = BTreeMap::new();
    for p in cands {
        let mut mask = 0u64;
        for (i, s) in shapes.iter().enumerate() {
            if s.contains(&p) {
                mask |= 1u64 << i;
            }
        }
        debug_assert!(mask != 0, "candidate points always lie in some body");
        by_mask.entry(mask).or_insert(p); // candidates arrive in lex order
    }
    let masks: Vec<u64> = by_mask.keys().copied().collect();
    let mut cols: Vec<(Point2, u64)> = by_mask
        .into_iter()
        .filter(|(m, _)| !masks.iter().any(|other| other != m && other & m == *m))
        .map(|(m, p)| (p, m))
        .collect();
    cols.sort_by(|(pa, ma), (pb, mb)| {
        mb.count_ones()
            .cmp(&ma.count_ones())
            .then_with(|| pa.cmp(pb))
    });
    cols
}

/// Greedy transversal: repeatedly take the candidate point covering the
/// most still-unpierced bodies (ties by lexicographic point order).
pub fn greedy_piercing(family: &Family) -> PiercingSet {
    let n = family.len();
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let cols = coverage_columns(family);
    let mut covered = 0u64;
    let mut picked: Vec<Point2> = Vec::new();
    while covered != full {
        let (point, mask) = cols
            .iter()
            .map(|(p, m)| (p, m & !covered))
            .max_by(|(pa, ma), (pb, mb)| {
                ma.count_ones()
                    .cmp(&mb.count_ones())
                    .then_with(|| pb.cmp(pa)) // prefer lexicographically smaller point
            })
            .map(|(p, m)| (p.clone(), m))
            .expect("columns cover every body");
        assert!(mask != 0, "every body contains one of its own vertices");
        covered |= mask;
        picked.push(point);
    }
    PiercingSet::assign(family, picked).expect("greedy picks cover everything")
}

/// Exact minimum transversal by iterative-deepening branch and bound over
/// the candidate columns, starting from the fractional LP lower bound.
/// Minimality is certified by exhausting size k-1 before accepting k.
pub fn exact_min_piercing(family: &Family, budget: &Budget) -> Result<PiercingSet, PierceError> {
    let n = family.len();
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let cols = coverage_columns(family);
    let lp = fractional_lps(family)?;
    let lower = ceil_to_i64(&lp.primal_value).max(1) as usize;

    let mut meter = budget.meter("exact_min_piercing");
    // Per-body candidate lists, for most-constrained-first branching.
    let covers_of: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..cols.len())
                .filter(|&j| cols[j].1 & (1u64 << i) != 0)
                .collect()
        })
        .collect();

    fn dfs(
        cols: &[(Point2, u64)],
        covers_of: &[Vec<usize>],
        full: u64,
        covered: u64,
        remaining: usize,
        chosen: &mut Vec<usize>,
        meter: &mut crate::budget::WorkMeter,
    ) -> Result<Option<Vec<usize>>, BudgetExceeded> {
        meter.charge(1)?;
        if covered == full {
            return Ok(Some(chosen.clone()));
        }
        if remaining == 0 {
            return Ok(None);
        }
        // Quick bound: the deepest residual column caps progress per pick.
        let best_gain = cols
            .iter()
            .map(|(_, m)| (m & !covered).count_ones() as usize)
            .max()
            .unwrap_or(0);
        if best_gain * remaining < (full & !covered).count_ones() as usize {
            return Ok(None);
        }
        // Most constrained uncovered body.
        let target = (0..covers_of.len())
            .filter(|&i| covered & (1u64 << i) == 0)
            .min_by_key(|&i| (covers_of[i].len(), i))
            .expect("some body uncovered");
        for &j in &covers_of[target] {
            chosen.push(j);
            if let Some(hit) = dfs(
                cols,
                covers_of,
                full,
                covered | cols[j].1,
                remaining - 1,
                chosen,
                meter,
            )? {
                return Ok(Some(hit));
            }
            chosen.pop();
        }
        Ok(None)
    }

    for k in lower..=n {
        let mut chosen = Vec::new();
        if let Some(hit) = dfs(&cols, &covers_of, full, 0, k, &mut chosen, &mut meter)? {
            let points: Vec<Point2> = hit.iter().map(|&j| cols[j].0.clone()).collect();
            return PiercingSet::assign(family, points);
        }
    }
    unreachable!("k = n always admits a cover: every body contains an own vertex")
}

/// Solves the fractional transversal LP (minimum total point weight so
/// that every body carries weight >= 1) and reads off the matching dual;
/// values are asserted equal exactly and every body's covered weight is
/// asserted >= alpha * W with alpha = 1/value.
pub fn fractional_lps(family: &Family) -> Result<LPResult, PierceError> {
    let n = family.len();
    let cols = coverage_columns(family);
    let a: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            cols.iter()
                .map(|(_, m)| rat(((m >> i) & 1) as i64))
                .collect()
        })
        .collect();
    let b = vec![rat(1); n];
    let c = vec![rat(1); cols.len()];
    let sol = solve_covering_lp(&a, &b, &c)?;

    let entries: Vec<(Point2, Rat)> = cols
        .iter()
        .zip(&sol.primal)
        .filter(|(_, w)| w.is_positive())
        .map(|((p, _), w)| (p.clone(), w.clone()))
        .collect();
    let point_weights = WeightedPoints::new(entries)?;
    let mut set_weights = BTreeMap::new();
    for (body, y) in family.bodies().iter().zip(&sol.dual) {
        set_weights.insert(body.id, y.clone());
    }

    // Realization check: with W = value, every body holds weight >= 1 =
    // alpha * W, exactly.
    let alpha = rat(1) / &sol.value;
    debug_assert_eq!(point_weights.total(), &sol.value);
    for body in family.bodies() {
        let inside = point_weights.weight_inside(&body.shape);
        if inside < rat(1) {
            return Err(PierceError::StageFailed {
                stage: 3,
                name: "fractional-lp",
                reason: format!("body {} carries weight {inside} < 1", body.id),
            });
        }
    }

    Ok(LPResult {
        primal_value: sol.value,
        point_weights,
        set_weights,
        alpha,
    })
}
