mod common;

use std::collections::{HashSet, VecDeque};

use common::{ctx, FIXTURES};
use weyltrunc_core::orders::{
    antipodal_excellent_leq, dominance_leq, excellent_leq, excellent_leq_with, strong_linkage_leq,
};
use weyltrunc_core::truncate::{gamma_set, lambda_set};
use weyltrunc_core::verify::{verify_ideal, verify_ideal_with};
use weyltrunc_core::{
    relation_on, AffineContext, ExcellentReading, OrderKind, Universe, Weight, WeightSet,
};

/// `λ ↑ μ` by searching upward from λ through reflections
/// `s_{β,np}·` that increase the weight, never passing μ.
fn linked_upward(c: &AffineContext, lambda: &Weight, mu: &Weight) -> bool {
    let rs = c.rs();
    let mut seen = HashSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(x) = queue.pop_front() {
        if &x == mu {
            return true;
        }
        for (k, _) in rs.positive_roots().iter().enumerate() {
            let a = rs.pairing(&(&x + rs.rho()), k).unwrap();
            // s_{β,np}·x = x - (a - np) β lies above x iff a - np < 0.
            let lo = a.div_euclid(c.p()) + 1;
            for np in (lo..)
                .map(|n| n * c.p())
                .take_while(|&np| np - a <= 4 * mu.max_abs() + 64)
            {
                let y = c.affine_reflection(k, np / c.p(), &x).unwrap();
                debug_assert!(a - np < 0);
                if dominance_leq(rs, &y, mu) && seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    false
}

#[test]
fn strong_linkage_matches_upward_search() {
    for (l, n, p) in [("A", 1, 5), ("A", 2, 5), ("B", 2, 7)] {
        let c = ctx(l, n, p);
        let pts: Vec<Weight> = lambda_set(&c, 1)
            .unwrap()
            .iter()
            .cloned()
            .chain(gamma_set(&c, 2).unwrap().iter().cloned())
            .collect();
        for x in &pts {
            for y in &pts {
                assert_eq!(
                    strong_linkage_leq(&c, x, y).unwrap(),
                    linked_upward(&c, x, y),
                    "{l}{n} p={p}: {x} ↑ {y}"
                );
            }
        }
    }
}

#[test]
fn a1_strong_linkage_examples() {
    let c = ctx("A", 1, 5);
    let w = |v: i64| Weight::from([v]);
    assert!(strong_linkage_leq(&c, &w(0), &w(8)).unwrap());
    assert!(strong_linkage_leq(&c, &w(-2), &w(0)).unwrap());
    assert!(!strong_linkage_leq(&c, &w(8), &w(0)).unwrap());
    assert!(!strong_linkage_leq(&c, &w(0), &w(2)).unwrap());
}

#[test]
fn order_axioms_on_lambda2() {
    for &(l, n, p) in FIXTURES.iter().filter(|f| f.1 <= 2) {
        let c = ctx(l, n, p);
        let rs = c.rs();
        let lambda = lambda_set(&c, 2).unwrap();
        let orders = [
            OrderKind::Dominance,
            OrderKind::Excellent,
            OrderKind::AntipodalExcellent,
            OrderKind::StrongLinkage(c.clone()),
        ];
        let rels: Vec<_> = orders
            .iter()
            .map(|o| relation_on(o, rs, &lambda).unwrap())
            .collect();
        for (o, r) in orders.iter().zip(&rels) {
            assert!(r.is_reflexive(), "{l}{n} {}", o.tag());
            assert!(r.is_antisymmetric(), "{l}{n} {}", o.tag());
            assert!(r.is_transitive(), "{l}{n} {}", o.tag());
        }
        let items = lambda.as_slice();
        let w0 = rs.longest_element();
        let idx_w0: Vec<usize> = items
            .iter()
            .map(|x| lambda.index_of(&rs.apply(&w0, x)).unwrap())
            .collect();
        for i in 0..items.len() {
            for j in 0..items.len() {
                // Strong linkage implies dominance.
                if rels[3].get(i, j) {
                    assert!(rels[0].get(i, j));
                }
                // w₀ interchanges ⪯ and ⪯°.
                assert_eq!(rels[1].get(i, j), rels[2].get(idx_w0[i], idx_w0[j]));
            }
        }
    }
}

#[test]
fn relation_matches_pairwise_definitions() {
    for (l, n, p) in [("A", 2, 5), ("B", 2, 7), ("G", 2, 11)] {
        let c = ctx(l, n, p);
        let rs = c.rs();
        let lambda = lambda_set(&c, 1).unwrap();
        let ex = relation_on(&OrderKind::Excellent, rs, &lambda).unwrap();
        let anti = relation_on(&OrderKind::AntipodalExcellent, rs, &lambda).unwrap();
        let dom = relation_on(&OrderKind::Dominance, rs, &lambda).unwrap();
        let sl = relation_on(&OrderKind::StrongLinkage(c.clone()), rs, &lambda).unwrap();
        for (i, x) in lambda.iter().enumerate() {
            for (j, y) in lambda.iter().enumerate() {
                assert_eq!(ex.get(i, j), excellent_leq(rs, x, y));
                assert_eq!(anti.get(i, j), antipodal_excellent_leq(rs, x, y));
                assert_eq!(dom.get(i, j), dominance_leq(rs, x, y));
                assert_eq!(sl.get(i, j), strong_linkage_leq(&c, x, y).unwrap());
            }
        }
    }
}

/// Violations of downward closure by direct pairwise comparison.
fn naive_ideal(
    c: &AffineContext,
    set: &WeightSet,
    order: &OrderKind,
    univ: &WeightSet,
) -> Vec<Vec<Weight>> {
    let rs = c.rs();
    univ.iter()
        .filter(|x| !set.contains(x))
        .filter_map(|x| {
            set.iter()
                .find(|y| order.leq(rs, x, y).unwrap())
                .map(|y| vec![x.clone(), y.clone()])
        })
        .collect()
}

#[test]
fn fast_ideal_check_agrees_with_pairwise() {
    for (l, n, p) in [("A", 1, 5), ("A", 2, 5), ("B", 2, 7), ("G", 2, 11)] {
        let c = ctx(l, n, p);
        let lambda = lambda_set(&c, 1).unwrap();
        let univ_desc = Universe::LambdaBox { m: 1 };
        let univ = univ_desc.materialize(&c).unwrap();
        // Λ_1 itself, and damaged copies that do have violations.
        let mut sets = vec![lambda.clone(), lambda.without(&Weight::zero(n))];
        let sorted: Vec<&Weight> = lambda.iter().collect();
        sets.push(lambda.without(sorted[sorted.len() / 3]));
        sets.push(
            lambda
                .iter()
                .filter(|y| y.coords()[0] >= 0)
                .cloned()
                .collect(),
        );
        for set in &sets {
            for order in [
                OrderKind::Excellent,
                OrderKind::AntipodalExcellent,
                OrderKind::Dominance,
                OrderKind::StrongLinkage(c.clone()),
            ] {
                let fast = verify_ideal(&c, set, &order, &univ_desc).unwrap();
                let mut slow = naive_ideal(&c, set, &order, &univ);
                slow.sort();
                assert_eq!(
                    fast.counts["violations"] as usize,
                    slow.len(),
                    "{l}{n} {}",
                    order.tag()
                );
                slow.truncate(weyltrunc_core::verify::MAX_COUNTEREXAMPLES);
                assert_eq!(fast.counterexamples, slow, "{l}{n} {}", order.tag());
                assert_eq!(fast.passed, slow.is_empty());
            }
            let fast = verify_ideal_with(
                &c,
                set,
                &OrderKind::Excellent,
                &univ_desc,
                ExcellentReading::CrossOrbit,
            )
            .unwrap();
            let slow: Vec<Vec<Weight>> = univ
                .iter()
                .filter(|x| !set.contains(x))
                .filter_map(|x| {
                    set.iter()
                        .find(|y| excellent_leq_with(c.rs(), x, y, ExcellentReading::CrossOrbit))
                        .map(|y| vec![x.clone(), y.clone()])
                })
                .collect();
            assert_eq!(
                fast.counts["violations"] as usize,
                slow.len(),
                "{l}{n} cross-orbit"
            );
        }
    }
}

#[test]
fn cross_orbit_reading_breaks_the_lambda_ideal() {
    let c = ctx("A", 1, 5);
    let lambda = lambda_set(&c, 1).unwrap();
    let r = verify_ideal_with(
        &c,
        &lambda,
        &OrderKind::Excellent,
        &Universe::LambdaBox { m: 1 },
        ExcellentReading::CrossOrbit,
    )
    .unwrap();
    assert!(!r.passed);
    assert!(r
        .counterexamples
        .contains(&vec![Weight::from([10]), Weight::from([2])]));
}
