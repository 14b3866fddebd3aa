//! Property tests for the geometric and combinatorial invariants, driven
//! by the seeded instance generators.

use proptest::prelude::*;

use pqlab::budget::Budget;
use pqlab::family::{
    dichotomy_split, find_exactly_two_intersecting, has_pq_property, intersection_graph,
    tuple_stats, Family,
};
use pqlab::geometry::{
    binomial, candidate_points, common_point, intersect, rat, ConvexPolygon,
};
use pqlab::instances::{gen_family, GenSpec};
use pqlab::pierce::{exact_min_piercing, fractional_lps, greedy_piercing};

fn family_spec(max_n: u32) -> impl Strategy<Value = GenSpec> {
    (2..=max_n, any::<u64>()).prop_flat_map(|(n, seed)| {
        prop_oneof![
            Just(GenSpec::RandomPolygons {
                n,
                points_per_body: 4,
                extent: 8,
                span: 3,
                seed,
            }),
            Just(GenSpec::DiscPolygons {
                n,
                extent: 6,
                max_radius: 4,
                seed,
            }),
            Just(GenSpec::CrossingSegments { n, seed }),
            Just(GenSpec::Disjoint { n, seed }),
            Just(GenSpec::Concentric { n, seed }),
        ]
    })
}

fn all_subfamilies(n: usize, max_size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= max_size {
            out.push((0..n).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Pairwise intersection commutes, is idempotent, and its vertices lie
    /// in both operands.
    #[test]
    fn intersection_algebra(spec in family_spec(5)) {
        let fam = gen_family(&spec).unwrap();
        let shapes = fam.shapes();
        for a in &shapes {
            prop_assert_eq!(intersect(a, a), Some((*a).clone()));
            for b in &shapes {
                let ab = intersect(a, b);
                let ba = intersect(b, a);
                prop_assert_eq!(&ab, &ba);
                if let Some(cap) = ab {
                    for v in cap.vertices() {
                        prop_assert!(a.contains(v) && b.contains(v));
                    }
                }
            }
        }
    }

    /// On every subfamily of size <= 4 of a random 6-body family, the
    /// common-point decision agrees with brute force over candidate
    /// points.
    #[test]
    fn common_point_agrees_with_candidate_brute_force(spec in family_spec(6)) {
        let fam = gen_family(&spec).unwrap();
        let shapes = fam.shapes();
        let cands = candidate_points(&shapes);
        for subset in all_subfamilies(shapes.len(), 4) {
            let polys: Vec<&ConvexPolygon> = subset.iter().map(|&i| shapes[i]).collect();
            let witness = common_point(&polys).unwrap();
            let brute = cands
                .iter()
                .any(|p| polys.iter().all(|s| s.contains(p)));
            prop_assert_eq!(witness.is_some(), brute);
            if let Some(w) = witness {
                prop_assert!(polys.iter().all(|s| s.contains(&w)));
            }
        }
    }

    /// Candidate soundness on families of up to 7 bodies: every non-empty
    /// subfamily intersection contains a candidate point.
    #[test]
    fn candidate_points_are_sound(spec in family_spec(7)) {
        let fam = gen_family(&spec).unwrap();
        let shapes = fam.shapes();
        let cands = candidate_points(&shapes);
        for subset in all_subfamilies(shapes.len(), shapes.len()) {
            let polys: Vec<&ConvexPolygon> = subset.iter().map(|&i| shapes[i]).collect();
            if common_point(&polys).unwrap().is_some() {
                prop_assert!(
                    cands.iter().any(|p| polys.iter().all(|s| s.contains(p))),
                    "non-empty intersection missed by candidates for {:?}",
                    subset
                );
            }
        }
    }

    /// f-vector sanity: f[0] = n, counts bounded by binomials, downward
    /// positivity, and the Helly residue points at the first zero.
    #[test]
    fn tuple_stats_shape(spec in family_spec(6)) {
        let fam = gen_family(&spec).unwrap();
        let n = fam.len();
        let stats = tuple_stats(&fam, n, &Budget::default()).unwrap();
        prop_assert_eq!(stats.f[0], n as u64);
        for k in 1..=n {
            let cap = binomial(n as u64, k as u64);
            prop_assert!(num::BigUint::from(stats.f[k - 1]) <= cap);
            if k >= 2 && stats.f[k - 1] > 0 {
                prop_assert!(stats.f[k - 2] > 0, "downward positivity failed at {}", k);
            }
        }
        if let Some(r) = stats.helly_residue {
            let idx = 2 + r as usize;
            prop_assert_eq!(stats.f[idx], 0);
            for j in 2..idx {
                prop_assert!(stats.f[j] > 0);
            }
        }
    }

    /// The property is monotone: (p,q) implies (p+1,q) and (p,q-1).
    #[test]
    fn pq_property_monotone(spec in family_spec(6), p in 3usize..=5, q in 2usize..=4) {
        let fam = gen_family(&spec).unwrap();
        let n = fam.len();
        prop_assume!(q <= p && p + 1 <= n);
        let budget = Budget::default();
        let base = has_pq_property(&fam, p, q, &budget).unwrap();
        if base.holds {
            prop_assert!(has_pq_property(&fam, p + 1, q, &budget).unwrap().holds);
            if q > 2 {
                prop_assert!(has_pq_property(&fam, p, q - 1, &budget).unwrap().holds);
            }
        }
    }

    /// A failing decision always carries a genuine counterexample.
    #[test]
    fn pq_counterexample_is_genuine(spec in family_spec(6), p in 3usize..=5, q in 2usize..=4) {
        let fam = gen_family(&spec).unwrap();
        prop_assume!(q <= p && p <= fam.len());
        let budget = Budget::default();
        let d = has_pq_property(&fam, p, q, &budget).unwrap();
        if let Some(ids) = d.counterexample {
            prop_assert!(!d.holds);
            prop_assert_eq!(ids.len(), p);
            let sub = fam.subfamily(&ids).unwrap();
            let within = has_pq_property(&sub, p, q, &budget).unwrap();
            prop_assert!(!within.holds);
        }
    }

    /// The dichotomy never fails its internal re-verification on verified
    /// (p,q)-families; both branches are legitimate outcomes. p' = 2 with
    /// q' = 3 exercises the degenerate witness (too small to hold q'
    /// members); p' = 3 exercises the regular path.
    #[test]
    fn dichotomy_reverification_always_passes(spec in family_spec(7), p_small in 2usize..=3) {
        let fam = gen_family(&spec).unwrap();
        let n = fam.len();
        prop_assume!(n >= 5);
        let budget = Budget::default();
        let (p, q) = (5usize, 4usize);
        prop_assume!(has_pq_property(&fam, p, q, &budget).unwrap().holds);
        let out = dichotomy_split(&fam, p, q, p_small, 3, &budget);
        prop_assert!(out.is_ok(), "dichotomy failed: {:?}", out.err().map(|e| e.to_string()));
    }

    /// An exactly-2-intersecting hit is pairwise intersecting with no
    /// common triple.
    #[test]
    fn exactly_two_hit_is_valid(spec in family_spec(6), k in 3usize..=4) {
        let fam = gen_family(&spec).unwrap();
        prop_assume!(k <= fam.len());
        let budget = Budget::default();
        if let Some(ids) = find_exactly_two_intersecting(&fam, k, &budget).unwrap() {
            let sub = fam.subfamily(&ids).unwrap();
            let g = intersection_graph(&sub);
            prop_assert_eq!(g.edge_count(), k * (k - 1) / 2);
            let stats = tuple_stats(&sub, 3, &budget).unwrap();
            prop_assert_eq!(stats.f[2], 0);
        }
    }

    /// Fractional value <= exact piercing <= greedy piercing, and all
    /// certificates verify.
    #[test]
    fn piercing_chain(spec in family_spec(6)) {
        let fam = gen_family(&spec).unwrap();
        let budget = Budget::default();
        let lp = fractional_lps(&fam).unwrap();
        let exact = exact_min_piercing(&fam, &budget).unwrap();
        let greedy = greedy_piercing(&fam);
        prop_assert!(lp.primal_value <= rat(exact.size() as i64));
        prop_assert!(exact.size() <= greedy.size());
        prop_assert!(exact.verify(&fam));
        prop_assert!(greedy.verify(&fam));
    }
}
