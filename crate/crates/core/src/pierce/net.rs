//! Weak epsilon-nets: quantile-grid construction, certified repair loop,
//! and the exhaustive verification oracle.

use num::Signed;

use crate::budget::{Budget, WorkMeter};
use crate::geometry::{centroid, conv_contains, rat, Point2, Rat};

use super::{PierceError, WeightedPoints};

/// A verified net plus construction diagnostics.
#[derive(Clone, Debug)]
pub struct NetReport {
    pub net: Vec<Point2>,
    pub initial_size: usize,
    pub repair_rounds: u32,
}

/// Searches for a heavy convex witness avoiding the net: a support subset
/// of weight >= eps * W whose convex hull contains no net point. Returns
/// the indices of such a subset (greedily extended to a maximal one), or
/// `None` if every heavy subset is stabbed.
///
/// Reduction: a convex set of weight >= eps * W avoiding the net exists
/// iff such a support subset exists (take the support points inside the
/// set; the hull only shrinks, the weight is unchanged).
pub fn verify_weak_net(
    points: &WeightedPoints,
    eps: &Rat,
    net: &[Point2],
    budget: &Budget,
) -> Result<Option<Vec<usize>>, PierceError> {
    validate_eps(eps)?;
    let entries = points.entries();
    let n = entries.len();
    if n > 40 {
        return Err(PierceError::InvalidParams(format!(
            "support of {n} points exceeds the enumeration limit of 40"
        )));
    }
    let threshold = eps * points.total();
    let mut meter = budget.meter("verify_weak_net");

    // Include/exclude search over support indices. A branch dies as soon
    // as the hull of the included points swallows a net point (hulls only
    // grow along the branch) or the remaining weight cannot reach the
    // threshold.
    fn dfs(
        entries: &[(Point2, Rat)],
        net: &[Point2],
        threshold: &Rat,
        idx: usize,
        included: &mut Vec<usize>,
        weight: Rat,
        suffix: &[Rat],
        meter: &mut WorkMeter,
    ) -> Result<Option<Vec<usize>>, PierceError> {
        meter.charge(1)?;
        if &weight >= threshold {
            return Ok(Some(included.clone()));
        }
        if idx == entries.len() || &(&weight + &suffix[idx]) < threshold {
            return Ok(None);
        }
        // include idx
        included.push(idx);
        let hull_pts: Vec<Point2> = included.iter().map(|&i| entries[i].0.clone()).collect();
        let hull = crate::geometry::ConvexPolygon::from_points(&hull_pts).expect("non-empty");
        let stabbed = net.iter().any(|q| hull.contains(q));
        if !stabbed {
            let w = &weight + &entries[idx].1;
            if let Some(hit) = dfs(entries, net, threshold, idx + 1, included, w, suffix, meter)? {
                return Ok(Some(hit));
            }
        }
        included.pop();
        // exclude idx
        dfs(entries, net, threshold, idx + 1, included, weight, suffix, meter)
    }

    // suffix[i] = total weight of entries i..
    let mut suffix = vec![rat(0); n + 1];
    for i in (0..n).rev() {
        suffix[i] = &suffix[i + 1] + &entries[i].1;
    }

    let mut included = Vec::new();
    let hit = dfs(
        entries, net, &threshold, 0, &mut included, rat(0), &suffix, &mut meter,
    )?;
    // Extend a violating subset to a maximal one: later repairs then cut
    // as much as possible.
    Ok(hit.map(|base| {
        let mut out = base;
        for i in 0..n {
            if out.contains(&i) {
                continue;
            }
            let mut pts: Vec<Point2> = out.iter().map(|&j| entries[j].0.clone()).collect();
            pts.push(entries[i].0.clone());
            let hull = crate::geometry::ConvexPolygon::from_points(&pts).expect("non-empty");
            if !net.iter().any(|q| hull.contains(q)) {
                out.push(i);
            }
        }
        out.sort();
        out
    }))
}

/// Builds a net for the given weight threshold: a quantile-grid start,
/// then a repair loop that stabs each surviving heavy witness with the
/// centroid of its points, until the verifier accepts. Never returns an
/// unverified net; gives up with an error at the repair cap.
pub fn weak_epsilon_net(
    points: &WeightedPoints,
    eps: &Rat,
    budget: &Budget,
) -> Result<NetReport, PierceError> {
    validate_eps(eps)?;
    let mut net = quantile_grid(points, eps);
    let initial_size = net.len();
    let mut rounds = 0u32;
    loop {
        match verify_weak_net(points, eps, &net, budget)? {
            None => {
                return Ok(NetReport {
                    net,
                    initial_size,
                    repair_rounds: rounds,
                })
            }
            Some(violating) => {
                rounds += 1;
                if rounds > budget.max_repair_rounds {
                    return Err(PierceError::RepairCapExceeded(rounds));
                }
                let pts: Vec<Point2> = violating
                    .iter()
                    .map(|&i| points.entries()[i].0.clone())
                    .collect();
                let stab = centroid(&pts);
                debug_assert!(conv_contains(&pts, &stab));
                net.push(stab);
                net.sort();
                net.dedup();
            }
        }
    }
}

fn validate_eps(eps: &Rat) -> Result<(), PierceError> {
    if !eps.is_positive() || eps > &rat(1) {
        return Err(PierceError::InvalidParams(format!(
            "eps must satisfy 0 < eps <= 1, got {eps}"
        )));
    }
    Ok(())
}

/// ceil(2/eps) x ceil(2/eps) grid of weight-quantile crossings.
fn quantile_grid(points: &WeightedPoints, eps: &Rat) -> Vec<Point2> {
    let m = {
        let cells = (rat(2) / eps).ceil().to_integer();
        i64::try_from(cells).unwrap_or(i64::MAX).clamp(1, 64) as usize
    };
    let total = points.total().clone();

    let axis_quantiles = |key: &dyn Fn(&Point2) -> Rat| -> Vec<Rat> {
        let mut vals: Vec<(Rat, Rat)> = points
            .entries()
            .iter()
            .map(|(p, w)| (key(p), w.clone()))
            .collect();
        vals.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out = Vec::with_capacity(m);
        for j in 1..=m {
            // level (2j - 1) / (2m) of the total weight
            let level = &total * rat(2 * j as i64 - 1) / rat(2 * m as i64);
            let mut cum = rat(0);
            let mut pick = vals.last().expect("non-empty").0.clone();
            for (v, w) in &vals {
                cum += w;
                if cum >= level {
                    pick = v.clone();
                    break;
                }
            }
            out.push(pick);
        }
        out.dedup();
        out
    };

    let xs = axis_quantiles(&|p: &Point2| p.x.clone());
    let ys = axis_quantiles(&|p: &Point2| p.y.clone());
    let mut net: Vec<Point2> = xs
        .iter()
        .flat_map(|x| ys.iter().map(move |y| Point2::new(x.clone(), y.clone())))
        .collect();
    net.sort();
    net.dedup();
    net
}
