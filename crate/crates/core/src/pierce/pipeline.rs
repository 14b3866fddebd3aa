//! The four-stage piercing pipeline: tuple counts with combinatorial
//! cross-checks, a guaranteed-depth point, the exact fractional LPs, and
//! a verified weak epsilon-net that doubles as the final transversal.

use rayon::prelude::*;

use crate::bounds::{decaen_bound, kalai_bound, piercing_fraction_bound, PQParams};
use crate::budget::Budget;
use crate::family::{has_pq_property, tuple_stats, Family, TupleStats};
use crate::geometry::{candidate_points, ceil_to_i64, rat, Point2, Rat};

use super::net::{weak_epsilon_net, NetReport};
use super::{fractional_lps, LPResult, PierceError, PiercingSet};

#[derive(Clone, Debug)]
pub struct CountsStage {
    pub stats: TupleStats,
    /// Number of intersecting q-tuples.
    pub q_edges: u64,
    /// Minimum forced by the Turan-type bound; q_edges is at least this.
    pub turan_lower: Rat,
    /// Whether the f-vector cap was applicable (a Helly residue exists).
    pub upper_bound_checked: bool,
}

#[derive(Clone, Debug)]
pub struct DepthStage {
    pub point: Point2,
    pub depth: usize,
    /// ceil(alpha_LB * n) when n >= 2p, else no guarantee is claimed.
    pub required: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct NetStage {
    pub eps: Rat,
    pub initial_size: usize,
    pub repair_rounds: u32,
    pub net_size: usize,
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub counts: CountsStage,
    pub deep_point: DepthStage,
    pub lp: LPResult,
    pub net: NetStage,
    pub piercing: PiercingSet,
}

/// Deepest candidate point (ties to the lexicographically smallest point).
/// Depth evaluation is data-parallel; the argmax scan is sequential, so
/// the result is independent of the thread count.
pub fn max_depth_point(family: &Family) -> (Point2, usize) {
    let shapes = family.shapes();
    let cands = candidate_points(&shapes);
    let depths: Vec<usize> = cands
        .par_iter()
        .map(|p| shapes.iter().filter(|s| s.contains(p)).count())
        .collect();
    let mut best = 0usize;
    for (i, d) in depths.iter().enumerate() {
        if *d > depths[best] {
            best = i;
        }
    }
    (cands[best].clone(), depths[best])
}

/// Runs the whole piercing pipeline on a (p,q)-family in the plane.
///
/// Stage 1 counts intersecting tuples and cross-checks them against the
/// Turan-type lower bound and the convex f-vector upper bound. Stage 2
/// certifies a deep candidate point against the explicit depth fraction
/// (when n >= 2p). Stage 3 solves the exact fractional LPs. Stage 4 builds
/// a verified weak net at the measured alpha; every body carries weight
/// alpha * W, so the net pierces the family and is returned as the
/// transversal. Any check failure aborts with its stage id.
pub fn ak_pipeline(
    family: &Family,
    params: &PQParams,
    budget: &Budget,
) -> Result<PipelineReport, PierceError> {
    let n = family.len();
    let (p, q) = (params.p as usize, params.q as usize);
    if params.d != 2 {
        return Err(PierceError::PreconditionViolated(format!(
            "pipeline runs in the plane only (d = {})",
            params.d
        )));
    }
    if q < 3 {
        return Err(PierceError::PreconditionViolated(
            "pipeline needs q >= d + 1 = 3".into(),
        ));
    }
    let decision = has_pq_property(family, p, q, budget)?;
    if !decision.holds {
        return Err(PierceError::PreconditionViolated(format!(
            "family does not satisfy the ({p},{q}) property; counterexample {:?}",
            decision.counterexample
        )));
    }

    // Stage 1: tuple counts and their combinatorial sanity bounds.
    let stats = tuple_stats(family, n, budget)?;
    let q_edges = stats.f[q - 1];
    let turan_lower = decaen_bound(n as u64, p as u64, q as u64).map_err(|e| {
        PierceError::StageFailed {
            stage: 1,
            name: "tuple-counts",
            reason: e.to_string(),
        }
    })?;
    if Rat::from_integer(q_edges.into()) < turan_lower {
        return Err(PierceError::StageFailed {
            stage: 1,
            name: "tuple-counts",
            reason: format!("{q_edges} intersecting q-tuples, below the forced {turan_lower}"),
        });
    }
    let upper_bound_checked = if let Some(r) = stats.helly_residue {
        for k in 1..=n {
            let cap = kalai_bound(n as u64, r as u64, 2, k as u64);
            if num::BigUint::from(stats.f[k - 1]) > cap {
                return Err(PierceError::StageFailed {
                    stage: 1,
                    name: "tuple-counts",
                    reason: format!("f[{}] = {} exceeds the f-vector cap {cap}", k - 1, stats.f[k - 1]),
                });
            }
        }
        true
    } else {
        false
    };

    // Stage 2: deepest candidate point, with the explicit guarantee when
    // the family is large enough.
    let (point, depth) = max_depth_point(family);
    let required = if n >= 2 * p {
        let alpha_lb = piercing_fraction_bound(params).map_err(|e| PierceError::StageFailed {
            stage: 2,
            name: "deep-point",
            reason: e.to_string(),
        })?;
        let need = ceil_to_i64(&(alpha_lb * rat(n as i64)));
        if (depth as i64) < need {
            return Err(PierceError::StageFailed {
                stage: 2,
                name: "deep-point",
                reason: format!("max depth {depth} below the guaranteed {need}"),
            });
        }
        Some(need)
    } else {
        None
    };

    // Stage 3: exact fractional transversal/matching (verified inside).
    let lp = fractional_lps(family)?;

    // Stage 4: a verified weak net at the measured alpha pierces every
    // body, because each body holds weight alpha * W.
    let NetReport {
        net,
        initial_size,
        repair_rounds,
    } = weak_epsilon_net(&lp.point_weights, &lp.alpha, budget)?;
    let net_stage = NetStage {
        eps: lp.alpha.clone(),
        initial_size,
        repair_rounds,
        net_size: net.len(),
    };
    let piercing = PiercingSet::assign(family, net).map_err(|e| PierceError::StageFailed {
        stage: 4,
        name: "net-cover",
        reason: format!("verified net missed a body: {e}"),
    })?;

    Ok(PipelineReport {
        n,
        p,
        q,
        counts: CountsStage {
            stats,
            q_edges,
            turan_lower,
            upper_bound_checked,
        },
        deep_point: DepthStage {
            point,
            depth,
            required,
        },
        lp,
        net: net_stage,
        piercing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ConvexPolygon, ratio};
    use crate::instances::{gen_family, GenSpec};
    use crate::pierce::exact_min_piercing;

    fn concentric_family(n: i64) -> Family {
        Family::new(
            (1..=n)
                .map(|k| ConvexPolygon::aabb(&Point2::ints(-k, -k), &Point2::ints(k, k)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn concentric_pipeline_returns_one_point() {
        let fam = concentric_family(6);
        let params = PQParams::new(6, 6, 2).unwrap();
        let report = ak_pipeline(&fam, &params, &Budget::default()).unwrap();
        assert_eq!(report.deep_point.depth, 6);
        assert_eq!(report.lp.primal_value, rat(1));
        assert_eq!(report.piercing.size(), 1);
        assert!(report.piercing.verify(&fam));
    }

    #[test]
    fn segments_plus_boxes_pipeline_is_valid_and_compared_to_exact() {
        let fam = gen_family(&GenSpec::SegmentsPlusBoxes { p: 4, q: 3, seed: 9 }).unwrap();
        let params = PQParams::new(4, 3, 2).unwrap();
        let report = ak_pipeline(&fam, &params, &Budget::default()).unwrap();
        assert!(report.piercing.verify(&fam));
        let exact = exact_min_piercing(&fam, &Budget::default()).unwrap();
        assert_eq!(exact.size(), 2);
        assert!(report.piercing.size() >= exact.size());
    }

    #[test]
    fn pipeline_rejects_wrong_dimension_and_failing_families() {
        let fam = concentric_family(4);
        assert!(matches!(
            ak_pipeline(&fam, &PQParams::new(4, 4, 3).unwrap(), &Budget::default()),
            Err(PierceError::PreconditionViolated(_))
        ));
        let disjoint = gen_family(&GenSpec::Disjoint { n: 5, seed: 0 }).unwrap();
        assert!(matches!(
            ak_pipeline(&disjoint, &PQParams::new(3, 3, 2).unwrap(), &Budget::default()),
            Err(PierceError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn max_depth_is_lexicographically_canonical() {
        // two points of equal maximal depth: the lexicographically
        // smaller candidate wins
        let fam = Family::new(vec![
            ConvexPolygon::aabb(&Point2::ints(0, 0), &Point2::ints(1, 1)),
            ConvexPolygon::aabb(&Point2::ints(3, 0), &Point2::ints(4, 1)),
        ])
        .unwrap();
        let (p, d) = max_depth_point(&fam);
        assert_eq!(d, 1);
        assert_eq!(p, Point2::ints(0, 0));
        let _ = ratio(1, 2);
    }
}
