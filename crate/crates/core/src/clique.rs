//! Union complexity, the sub-quadratic union-complexity hypothesis test,
//! the pairwise-only lower bound check, and the deep-point max-clique
//! approximation with measured ratios.

use itertools::Itertools;
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::family::{
    has_pq_property, intersection_graph, max_clique_exact, max_edge_free_subset, nerve,
    find_exactly_two_intersecting, Family, FamilyError,
};
use crate::geometry::{binomial, pair_boundary_points, BodyId, Point2, Rat};
use crate::pierce::pipeline::max_depth_point;

#[derive(Debug, Error)]
pub enum CliqueError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal consistency check failed: {0}")]
    InternalCheckFailed(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Boundary-arrangement vertices that survive on the boundary of the
/// union, with the quadratic threshold they are measured against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionComplexityReport {
    pub vertex_count: usize,
    pub vertices: Vec<Point2>,
    pub k: usize,
    /// C(k, 2).
    pub threshold: u64,
}

/// Counts the boundary-boundary intersection points of pairs of bodies
/// that lie on the boundary of the union, i.e. inside the topological
/// interior of no body. Degenerate bodies have empty interior, so
/// crossings lying on segments always count.
pub fn union_complexity(family: &Family) -> UnionComplexityReport {
    let shapes = family.shapes();
    let n = shapes.len();
    let mut vertices: Vec<Point2> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for p in pair_boundary_points(shapes[i], shapes[j]) {
                if !shapes.iter().any(|s| s.strictly_contains(&p)) {
                    vertices.push(p);
                }
            }
        }
    }
    vertices.sort();
    vertices.dedup();
    UnionComplexityReport {
        vertex_count: vertices.len(),
        vertices,
        k: n,
        threshold: u64::try_from(binomial(n as u64, 2)).expect("desk scale"),
    }
}

#[derive(Clone, Debug)]
pub struct UnionConditionReport {
    pub holds: bool,
    /// A violating k-subfamily when `holds` is false.
    pub witness: Option<Vec<BodyId>>,
}

/// True iff every k-subfamily has union complexity strictly below C(k,2).
pub fn check_union_condition(
    family: &Family,
    k: usize,
    budget: &Budget,
) -> Result<UnionConditionReport, CliqueError> {
    let n = family.len();
    if k < 3 {
        return Err(CliqueError::InvalidParams(format!("k must be >= 3, got {k}")));
    }
    if k > n {
        return Err(CliqueError::InvalidParams(format!(
            "k = {k} exceeds family size {n}"
        )));
    }
    let mut meter = budget.meter("check_union_condition");
    let threshold = binomial(k as u64, 2);
    let ids = family.ids();
    for combo in ids.iter().combinations(k) {
        meter.charge(1)?;
        let subset: Vec<BodyId> = combo.into_iter().copied().collect();
        let sub = family.subfamily(&subset)?;
        let report = union_complexity(&sub);
        if num::BigUint::from(report.vertex_count) >= threshold {
            return Ok(UnionConditionReport {
                holds: false,
                witness: Some(subset),
            });
        }
    }
    Ok(UnionConditionReport {
        holds: true,
        witness: None,
    })
}

#[derive(Clone, Debug)]
pub struct PairwiseLowerReport {
    pub k: usize,
    pub vertex_count: usize,
    pub threshold: u64,
}

/// For an exactly-2-intersecting family (pairwise intersecting, no common
/// triple) of size k >= 3, the union complexity is at least C(k,2). The
/// precondition is re-verified; a bound violation on a valid input is an
/// implementation bug and reported as such.
pub fn lemma33_check(family: &Family, budget: &Budget) -> Result<PairwiseLowerReport, CliqueError> {
    let n = family.len();
    if n < 3 {
        return Err(CliqueError::PreconditionViolated(format!(
            "need at least 3 bodies, got {n}"
        )));
    }
    let witness = find_exactly_two_intersecting(family, n, budget)?;
    if witness.as_deref() != Some(&family.ids()[..]) {
        return Err(CliqueError::PreconditionViolated(
            "family is not exactly 2-intersecting".into(),
        ));
    }
    let report = union_complexity(family);
    let threshold = u64::try_from(binomial(n as u64, 2)).expect("desk scale");
    if (report.vertex_count as u64) < threshold {
        return Err(CliqueError::InternalCheckFailed(format!(
            "union complexity {} below C({n},2) = {threshold} on an exactly-2-intersecting family",
            report.vertex_count
        )));
    }
    Ok(PairwiseLowerReport {
        k: n,
        vertex_count: report.vertex_count,
        threshold,
    })
}

/// The deep-point clique approximation and its measured quality.
#[derive(Clone, Debug)]
pub struct CliqueApproxReport {
    pub approx_clique: Vec<BodyId>,
    pub witness_point: Point2,
    pub exact_clique: Option<Vec<BodyId>>,
    pub exact_clique_size: Option<usize>,
    pub ratio: Option<Rat>,
}

/// Takes the deepest candidate point and returns the subfamily through it;
/// all members share the witness point, so the output is a clique in the
/// intersection graph. Optionally computes the exact maximum clique for
/// the measured ratio.
pub fn approx_max_clique(family: &Family, with_exact: bool) -> CliqueApproxReport {
    let (witness_point, _depth) = max_depth_point(family);
    let approx_clique: Vec<BodyId> = family
        .bodies()
        .iter()
        .filter(|b| b.shape.contains(&witness_point))
        .map(|b| b.id)
        .collect();
    let (exact_clique, exact_clique_size, ratio) = if with_exact {
        let exact = max_clique_exact(&intersection_graph(family));
        let size = exact.len();
        let ratio = Rat::new((approx_clique.len() as i64).into(), (size as i64).into());
        (Some(exact), Some(size), Some(ratio))
    } else {
        (None, None, None)
    };
    CliqueApproxReport {
        approx_clique,
        witness_point,
        exact_clique,
        exact_clique_size,
        ratio,
    }
}

/// Desk-scale verification record for the triple-forcing engine.
#[derive(Clone, Debug)]
pub struct TripleForcingReport {
    pub p: usize,
    pub k: usize,
    /// Largest subfamily with no three members sharing a point.
    pub max_triple_free: usize,
    /// Smallest m such that every m-subfamily contains three members with
    /// a common point; absent when even the full family is triple-free.
    pub smallest_m: Option<usize>,
    /// Subfamilies examined at that m.
    pub m_subfamilies: u64,
    /// How many of them contain a pairwise-intersecting k-subfamily.
    pub with_k_clique: u64,
    /// How many contain p pairwise-disjoint members; always 0 when the
    /// (p,2) precondition holds.
    pub with_p_disjoint: u64,
}

/// Verifies, by exhaustion, the engine behind the (p,2)-to-(.,3) transfer
/// on a concrete instance: the family satisfies (p,2), has no
/// exactly-2-intersecting k-subfamily, and every m-subfamily at the
/// reported threshold m contains three members with a common point.
pub fn lemma32_check(
    family: &Family,
    p: usize,
    k: usize,
    budget: &Budget,
) -> Result<TripleForcingReport, CliqueError> {
    let n = family.len();
    if k < 3 {
        return Err(CliqueError::InvalidParams(format!("k must be >= 3, got {k}")));
    }
    let base = has_pq_property(family, p, 2, budget)?;
    if !base.holds {
        return Err(CliqueError::PreconditionViolated(format!(
            "family does not satisfy the ({p},2) property; counterexample {:?}",
            base.counterexample
        )));
    }
    if k <= n {
        if let Some(found) = find_exactly_two_intersecting(family, k, budget)? {
            return Err(CliqueError::PreconditionViolated(format!(
                "family contains an exactly-2-intersecting {k}-subfamily {found:?}"
            )));
        }
    }

    let mut meter = budget.meter("lemma32_check");
    let triples = nerve(family, 3.min(n), &mut meter)?
        .levels
        .get(2)
        .cloned()
        .unwrap_or_default();
    let free = max_edge_free_subset(n, &triples, &mut meter)?;
    let max_triple_free = free.count_ones() as usize;
    if max_triple_free >= n {
        return Ok(TripleForcingReport {
            p,
            k,
            max_triple_free,
            smallest_m: None,
            m_subfamilies: 0,
            with_k_clique: 0,
            with_p_disjoint: 0,
        });
    }
    let m = max_triple_free + 1;

    let graph = intersection_graph(family);
    let mut m_subfamilies = 0u64;
    let mut with_k_clique = 0u64;
    let mut with_p_disjoint = 0u64;
    for combo in (0..n).combinations(m) {
        meter.charge(1)?;
        m_subfamilies += 1;
        let mask: u64 = combo.iter().fold(0, |acc, &i| acc | (1u64 << i));
        // every m-subfamily must contain an intersecting triple
        if !triples.iter().any(|t| t & !mask == 0) {
            return Err(CliqueError::InternalCheckFailed(format!(
                "subfamily mask {mask:#b} of size {m} has no intersecting triple"
            )));
        }
        if has_clique_of_size(&graph, mask, k) {
            with_k_clique += 1;
        }
        if has_independent_of_size(&graph, mask, p) {
            with_p_disjoint += 1;
        }
    }
    if with_p_disjoint != 0 {
        return Err(CliqueError::InternalCheckFailed(
            "found p pairwise-disjoint bodies despite the verified (p,2) property".into(),
        ));
    }
    Ok(TripleForcingReport {
        p,
        k,
        max_triple_free,
        smallest_m: Some(m),
        m_subfamilies,
        with_k_clique,
        with_p_disjoint,
    })
}

fn has_clique_of_size(graph: &crate::family::IntersectionGraph, within: u64, k: usize) -> bool {
    fn dfs(adj: &[u64], candidates: u64, need: usize) -> bool {
        if need == 0 {
            return true;
        }
        if (candidates.count_ones() as usize) < need {
            return false;
        }
        let mut rest = candidates;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if dfs(adj, rest & adj[v], need - 1) {
                return true;
            }
        }
        false
    }
    dfs(&graph.adj, within, k)
}

fn has_independent_of_size(graph: &crate::family::IntersectionGraph, within: u64, p: usize) -> bool {
    // independent in the graph = clique in the complement
    let n = graph.n;
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let co_adj: Vec<u64> = (0..n)
        .map(|i| (full & !graph.adj[i]) & !(1u64 << i))
        .collect();
    fn dfs(adj: &[u64], candidates: u64, need: usize) -> bool {
        if need == 0 {
            return true;
        }
        if (candidates.count_ones() as usize) < need {
            return false;
        }
        let mut rest = candidates;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if dfs(adj, rest & adj[v], need - 1) {
                return true;
            }
        }
        false
    }
    dfs(&co_adj, within, p)
}
