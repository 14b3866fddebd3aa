//! Family-level combinatorics: intersection graph, f-vector statistics,
//! (p,q)-property decisions, the property/split dichotomy and
//! exactly-2-intersecting subfamily detection.
//!
//! Families are capped at 64 bodies so subfamilies can live in `u64`
//! bitmasks over body positions. Bodies are kept sorted by ascending id,
//! which makes position-lexicographic enumeration coincide with
//! id-lexicographic tie-breaking.

use itertools::Itertools;
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded, WorkMeter};
use crate::geometry::{
    binomial, common_point, intersect, BodyId, ConvexBody, ConvexPolygon, GeometryError,
};

pub const MAX_FAMILY: usize = 64;

/// Helly number of the plane; f-vector residues are measured against it.
pub const PLANE_DIM: usize = 2;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("family must contain between 1 and {MAX_FAMILY} bodies (got {0})")]
    BadSize(usize),
    #[error("duplicate body id {0}")]
    DuplicateId(BodyId),
    #[error("unknown body id {0}")]
    UnknownId(BodyId),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal consistency check failed: {0}")]
    InternalCheckFailed(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// An ordered family of convex bodies with stable, unique ids.
#[derive(Clone, Debug)]
pub struct Family {
    bodies: Vec<ConvexBody>,
}

impl Family {
    /// Builds a family from bare shapes, assigning ids `0..n` in order.
    pub fn new(shapes: Vec<ConvexPolygon>) -> Result<Self, FamilyError> {
        if shapes.is_empty() || shapes.len() > MAX_FAMILY {
            return Err(FamilyError::BadSize(shapes.len()));
        }
        let bodies = shapes
            .into_iter()
            .enumerate()
            .map(|(i, shape)| ConvexBody::new(BodyId(i as u32), shape))
            .collect();
        Ok(Family { bodies })
    }

    /// Builds a family from bodies that already carry ids. Bodies are
    /// sorted by id; duplicates are rejected.
    pub fn from_bodies(mut bodies: Vec<ConvexBody>) -> Result<Self, FamilyError> {
        if bodies.is_empty() || bodies.len() > MAX_FAMILY {
            return Err(FamilyError::BadSize(bodies.len()));
        }
        bodies.sort_by_key(|b| b.id);
        for w in bodies.windows(2) {
            if w[0].id == w[1].id {
                return Err(FamilyError::DuplicateId(w[0].id));
            }
        }
        Ok(Family { bodies })
    }

    pub fn len(&self) -> usize {
        self.bodies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }

    pub fn bodies(&self) -> &[ConvexBody] {
        &self.bodies
    }

    pub fn ids(&self) -> Vec<BodyId> {
        self.bodies.iter().map(|b| b.id).collect()
    }

    pub fn shapes(&self) -> Vec<&ConvexPolygon> {
        self.bodies.iter().map(|b| &b.shape).collect()
    }

    pub fn body(&self, id: BodyId) -> Option<&ConvexBody> {
        self.bodies.iter().find(|b| b.id == id)
    }

    /// Subfamily with the given ids (which keep their identity).
    pub fn subfamily(&self, ids: &[BodyId]) -> Result<Family, FamilyError> {
        let mut picked = Vec::with_capacity(ids.len());
        for &id in ids {
            let body = self.body(id).ok_or(FamilyError::UnknownId(id))?;
            picked.push(body.clone());
        }
        Family::from_bodies(picked)
    }

    /// The family without the given ids.
    pub fn without(&self, ids: &[BodyId]) -> Result<Family, FamilyError> {
        let keep: Vec<ConvexBody> = self
            .bodies
            .iter()
            .filter(|b| !ids.contains(&b.id))
            .cloned()
            .collect();
        Family::from_bodies(keep)
    }

    fn mask_to_ids(&self, mask: u64) -> Vec<BodyId> {
        (0..self.len())
            .filter(|i| mask & (1u64 << i) != 0)
            .map(|i| self.bodies[i].id)
            .collect()
    }
}

/// Adjacency of the intersection graph, as per-vertex neighbor bitmasks
/// over body positions.
#[derive(Clone, Debug)]
pub struct IntersectionGraph {
    pub n: usize,
    pub adj: Vec<u64>,
    pub ids: Vec<BodyId>,
}

impl IntersectionGraph {
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.adj[i] & (1u64 << j) != 0
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(BodyId, BodyId)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.has_edge(i, j) {
                    out.push((self.ids[i], self.ids[j]));
                }
            }
        }
        out
    }

    pub fn is_clique(&self, mask: u64) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (self.adj[i] | (1u64 << i)) & mask != mask {
                return false;
            }
        }
        true
    }
}

/// Edge (i, j) present iff the two bodies intersect.
pub fn intersection_graph(family: &Family) -> IntersectionGraph {
    let n = family.len();
    let shapes = family.shapes();
    let mut adj = vec![0u64; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if intersect(shapes[i], shapes[j]).is_some() {
                adj[i] |= 1u64 << j;
                adj[j] |= 1u64 << i;
            }
        }
    }
    IntersectionGraph {
        n,
        adj,
        ids: family.ids(),
    }
}

/// Masks of all k-subfamilies with a non-empty common intersection, for
/// k = 1..=k_max. `levels[k-1]` is the k-th level, sorted ascending.
///
/// Level k is grown from level k-1 by extending each mask with a strictly
/// larger body index; monotonicity of intersection makes this exhaustive.
pub struct Nerve {
    pub levels: Vec<Vec<u64>>,
}

pub fn nerve(family: &Family, k_max: usize, meter: &mut WorkMeter) -> Result<Nerve, BudgetExceeded> {
    let n = family.len();
    let shapes = family.shapes();
    assert!(k_max >= 1 && k_max <= n);

    let mut levels: Vec<Vec<u64>> = Vec::with_capacity(k_max);
    let mut frontier: Vec<(u64, ConvexPolygon)> = shapes
        .iter()
        .enumerate()
        .map(|(i, s)| (1u64 << i, (*s).clone()))
        .collect();
    levels.push(frontier.iter().map(|(m, _)| *m).collect());

    for _k in 2..=k_max {
        let mut next: Vec<(u64, ConvexPolygon)> = Vec::new();
        for (mask, poly) in &frontier {
            let top = 63 - mask.leading_zeros() as usize;
            for j in (top + 1)..n {
                meter.charge(1)?;
                if let Some(cap) = intersect(poly, shapes[j]) {
                    next.push((mask | (1u64 << j), cap));
                }
            }
        }
        levels.push(next.iter().map(|(m, _)| *m).collect());
        frontier = next;
        if frontier.is_empty() {
            // all higher levels are empty too
            while levels.len() < k_max {
                levels.push(Vec::new());
            }
            break;
        }
    }
    Ok(Nerve { levels })
}

/// f-vector of the nerve: `f[k-1]` = number of k-subfamilies with common
/// point, plus the smallest Helly residue `r >= 0` with `f[2 + r] == 0`
/// (absent when no zero occurs within `k_max` levels).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleStats {
    pub f: Vec<u64>,
    pub helly_residue: Option<u32>,
}

pub fn tuple_stats(
    family: &Family,
    k_max: usize,
    budget: &Budget,
) -> Result<TupleStats, FamilyError> {
    let n = family.len();
    if k_max < 1 || k_max > n {
        return Err(FamilyError::InvalidParams(format!(
            "k_max must be in 1..={n}, got {k_max}"
        )));
    }
    let mut meter = budget.meter("tuple_stats");
    let nerve = nerve(family, k_max, &mut meter)?;
    let f: Vec<u64> = nerve.levels.iter().map(|l| l.len() as u64).collect();
    let helly_residue = (PLANE_DIM..k_max)
        .find(|&j| f[j] == 0)
        .map(|j| (j - PLANE_DIM) as u32);
    Ok(TupleStats { f, helly_residue })
}

/// Decision of the (p,q) property: among any p bodies, some q share a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PQDecision {
    pub holds: bool,
    /// When `holds` is false: the lexicographically smallest p-subset with
    /// no q intersecting members.
    pub counterexample: Option<Vec<BodyId>>,
}

/// Exhaustive (p,q)-property decision with pruning via the precomputed
/// level-q nerve. Budgeted: refuses instances whose subset counts exceed
/// the work cap instead of answering approximately.
pub fn has_pq_property(
    family: &Family,
    p: usize,
    q: usize,
    budget: &Budget,
) -> Result<PQDecision, FamilyError> {
    let n = family.len();
    if p > n {
        return Err(FamilyError::InvalidParams(format!(
            "p = {p} exceeds family size {n}"
        )));
    }
    if !(2 <= q && q <= p) {
        return Err(FamilyError::InvalidParams(format!(
            "need 2 <= q <= p, got p = {p}, q = {q}"
        )));
    }
    let work = binomial(n as u64, p as u64) + binomial(n as u64, q as u64);
    let mut meter = budget.meter("has_pq_property");
    meter.charge(u64::try_from(work.clone()).map_err(|_| BudgetExceeded {
        used: u64::MAX,
        limit: budget.max_work,
        context: "has_pq_property",
    })?)?;

    let mut edge_meter = budget.meter("has_pq_property nerve");
    let q_edges = nerve(family, q, &mut edge_meter)?.levels[q - 1].clone();

    for combo in (0..n).combinations(p) {
        let mask: u64 = combo.iter().fold(0u64, |m, &i| m | (1u64 << i));
        if !q_edges.iter().any(|e| e & !mask == 0) {
            return Ok(PQDecision {
                holds: false,
                counterexample: Some(family.mask_to_ids(mask)),
            });
        }
    }
    Ok(PQDecision {
        holds: true,
        counterexample: None,
    })
}

/// Outcome of the dichotomy: either the family already satisfies the
/// smaller (p', q') property, or a p'-subfamily S with no q' intersecting
/// members is removed and the remainder provably satisfies
/// (p - p', q - q' + 1). Both branches carry re-verified decisions.
#[derive(Clone, Debug)]
pub enum DichotomyOutcome {
    PropertyHolds {
        p_small: usize,
        q_small: usize,
    },
    Split {
        removed: Vec<BodyId>,
        residual_p: usize,
        residual_q: usize,
    },
}

pub fn dichotomy_split(
    family: &Family,
    p: usize,
    q: usize,
    p_small: usize,
    q_small: usize,
    budget: &Budget,
) -> Result<DichotomyOutcome, FamilyError> {
    let n = family.len();
    if !(p_small >= 1 && p_small < p) {
        return Err(FamilyError::PreconditionViolated(format!(
            "need 1 <= p' < p, got p' = {p_small}, p = {p}"
        )));
    }
    if !(q_small >= 2 && q_small < q) {
        return Err(FamilyError::PreconditionViolated(format!(
            "need 2 <= q' < q, got q' = {q_small}, q = {q}"
        )));
    }
    if p - p_small < q - q_small + 1 {
        return Err(FamilyError::PreconditionViolated(format!(
            "residual pair ({}, {}) is ill-formed; choose p', q' with p - p' >= q - q' + 1",
            p - p_small,
            q - q_small + 1
        )));
    }
    let base = has_pq_property(family, p, q, budget)?;
    if !base.holds {
        return Err(FamilyError::PreconditionViolated(format!(
            "family does not satisfy the ({p},{q}) property"
        )));
    }

    // Greedy witness search first: grow S keeping every q'-subset of S
    // free of a common point.
    let shapes = family.shapes();
    let mut greedy: Vec<usize> = Vec::new();
    for i in 0..n {
        let ok = if greedy.len() + 1 < q_small {
            true
        } else {
            greedy
                .iter()
                .copied()
                .combinations(q_small - 1)
                .all(|mut combo| {
                    combo.push(i);
                    let polys: Vec<&ConvexPolygon> = combo.iter().map(|&j| shapes[j]).collect();
                    common_point(&polys).expect("non-empty subset").is_none()
                })
        };
        if ok {
            greedy.push(i);
            if greedy.len() == p_small {
                break;
            }
        }
    }

    let witness: Option<Vec<BodyId>> = if greedy.len() == p_small {
        Some(greedy.iter().map(|&i| family.bodies()[i].id).collect())
    } else {
        let d = has_pq_property(family, p_small, q_small, budget)?;
        if d.holds {
            return Ok(DichotomyOutcome::PropertyHolds { p_small, q_small });
        }
        d.counterexample
    };

    let removed = witness.expect("failing decision carries a counterexample");
    // Self-check both stated facts: S has no q' intersecting members, and
    // the remainder satisfies the residual property. With q' > p' the
    // first fact is vacuous (S is too small to hold q' members at all).
    if q_small <= p_small {
        let s_family = family.subfamily(&removed)?;
        let s_check = has_pq_property(&s_family, p_small, q_small, budget)?;
        if s_check.holds {
            return Err(FamilyError::InternalCheckFailed(
                "greedy witness unexpectedly satisfies the (p',q') property".into(),
            ));
        }
    }
    let residual = family.without(&removed)?;
    let residual_p = p - p_small;
    let residual_q = q - q_small + 1;
    let r_check = has_pq_property(&residual, residual_p, residual_q, budget)?;
    if !r_check.holds {
        return Err(FamilyError::InternalCheckFailed(format!(
            "residual family fails the ({residual_p},{residual_q}) property; this contradicts the dichotomy"
        )));
    }
    Ok(DichotomyOutcome::Split {
        removed,
        residual_p,
        residual_q,
    })
}

/// Smallest (lexicographically) k-subfamily that is pairwise intersecting
/// with no three members sharing a point, or `None` if none exists.
pub fn find_exactly_two_intersecting(
    family: &Family,
    k: usize,
    budget: &Budget,
) -> Result<Option<Vec<BodyId>>, FamilyError> {
    let n = family.len();
    if k < 3 {
        return Err(FamilyError::InvalidParams(format!("k must be >= 3, got {k}")));
    }
    if k > n {
        return Err(FamilyError::InvalidParams(format!(
            "k = {k} exceeds family size {n}"
        )));
    }
    let graph = intersection_graph(family);
    let shapes = family.shapes();
    let mut meter = budget.meter("find_exactly_two_intersecting");

    // DFS over k-cliques in ascending index order; the first hit is the
    // lexicographically smallest witness.
    fn dfs(
        graph: &IntersectionGraph,
        shapes: &[&ConvexPolygon],
        k: usize,
        clique: &mut Vec<usize>,
        candidates: u64,
        meter: &mut WorkMeter,
    ) -> Result<Option<Vec<usize>>, BudgetExceeded> {
        if clique.len() == k {
            let ok = clique.iter().copied().combinations(3).all(|tri| {
                let polys: Vec<&ConvexPolygon> = tri.iter().map(|&i| shapes[i]).collect();
                common_point(&polys).expect("triple is non-empty").is_none()
            });
            return Ok(if ok { Some(clique.clone()) } else { None });
        }
        let mut rest = candidates;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            meter.charge(1)?;
            clique.push(i);
            let next = candidates & graph.adj[i] & !((1u64 << (i + 1)) - 1);
            if clique.len() + (next.count_ones() as usize) + (k - clique.len()).saturating_sub(1)
                >= k
            {
                if let Some(hit) = dfs(graph, shapes, k, clique, next, meter)? {
                    return Ok(Some(hit));
                }
            }
            clique.pop();
        }
        Ok(None)
    }

    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut clique = Vec::new();
    let hit = dfs(&graph, &shapes, k, &mut clique, all, &mut meter)?;
    Ok(hit.map(|idxs| idxs.iter().map(|&i| family.bodies()[i].id).collect()))
}

/// Exact maximum clique via maximal-clique enumeration with pivoting;
/// ties broken toward the lexicographically smallest id-set.
pub fn max_clique_exact(graph: &IntersectionGraph) -> Vec<BodyId> {
    let n = graph.n;
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best: u64 = 1; // a single vertex is always a clique

    fn bron_kerbosch(graph: &IntersectionGraph, r: u64, p: u64, x: u64, best: &mut u64) {
        if p == 0 && x == 0 {
            let better = r.count_ones() > best.count_ones()
                || (r.count_ones() == best.count_ones() && lex_smaller(r, *best));
            if better {
                *best = r;
            }
            return;
        }
        // pivot: vertex of P ∪ X with most neighbours in P
        let mut pivot = usize::MAX;
        let mut pivot_deg = -1i64;
        let mut scan = p | x;
        while scan != 0 {
            let u = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            let deg = (graph.adj[u] & p).count_ones() as i64;
            if deg > pivot_deg {
                pivot_deg = deg;
                pivot = u;
            }
        }
        let mut ext = if pivot == usize::MAX { p } else { p & !graph.adj[pivot] };
        let mut p = p;
        let mut x = x;
        while ext != 0 {
            let v = ext.trailing_zeros() as usize;
            let bit = 1u64 << v;
            ext &= ext - 1;
            bron_kerbosch(graph, r | bit, p & graph.adj[v], x & graph.adj[v], best);
            p &= !bit;
            x |= bit;
        }
    }

    if n > 0 {
        bron_kerbosch(graph, 0, all, 0, &mut best);
    }
    let mut out: Vec<BodyId> = (0..n)
        .filter(|i| best & (1u64 << i) != 0)
        .map(|i| graph.ids[i])
        .collect();
    out.sort();
    out
}

/// For equal-popcount masks: true when `a`'s sorted element list is
/// lexicographically smaller than `b`'s.
fn lex_smaller(a: u64, b: u64) -> bool {
    let d = a ^ b;
    if d == 0 {
        return false;
    }
    a & (d & d.wrapping_neg()) != 0
}

/// Largest subfamily containing none of the given "edges" (subset masks);
/// the hypergraph independence number. Exhaustive DFS with budget.
pub fn max_edge_free_subset(
    n: usize,
    edges: &[u64],
    meter: &mut WorkMeter,
) -> Result<u64, BudgetExceeded> {
    fn dfs(
        n: usize,
        edges: &[u64],
        idx: usize,
        current: u64,
        best: &mut u64,
        meter: &mut WorkMeter,
    ) -> Result<(), BudgetExceeded> {
        meter.charge(1)?;
        if idx == n {
            if current.count_ones() > best.count_ones()
                || (current.count_ones() == best.count_ones() && lex_smaller(current, *best))
            {
                *best = current;
            }
            return Ok(());
        }
        if current.count_ones() + (n - idx) as u32 <= best.count_ones() {
            return Ok(()); // cannot beat the incumbent
        }
        let with = current | (1u64 << idx);
        if !edges.iter().any(|e| e & !with == 0) {
            dfs(n, edges, idx + 1, with, best, meter)?;
        }
        dfs(n, edges, idx + 1, current, best, meter)
    }
    let mut best = 0u64;
    dfs(n, edges, 0, 0, &mut best, meter)?;
    Ok(best)
}
