mod common;

use std::collections::{HashSet, VecDeque};

use common::{ctx, rs};
use proptest::prelude::*;
use weyltrunc_core::{AffineContext, BoxIter, Weight};

/// The dot orbit `W_p·0` by breadth-first search over simple reflections and
/// translations by `±p α_i`, within a box of the given radius.
fn orbit_of_zero(c: &AffineContext, radius: i64) -> HashSet<Weight> {
    let rs = c.rs();
    let n = rs.rank();
    let group_gens: Vec<_> = (0..n).map(|i| rs.simple_reflection(i).unwrap()).collect();
    let shifts: Vec<Weight> = (0..n)
        .flat_map(|i| {
            let a = rs.simple_root(i).scale(c.p());
            [a.clone(), -&a]
        })
        .collect();
    let mut seen = HashSet::from([Weight::zero(n)]);
    let mut queue = VecDeque::from([Weight::zero(n)]);
    while let Some(y) = queue.pop_front() {
        let next = group_gens
            .iter()
            .map(|s| c.dot(s, &y))
            .chain(shifts.iter().map(|t| &y + t));
        for z in next {
            if z.max_abs() <= radius && seen.insert(z.clone()) {
                queue.push_back(z);
            }
        }
    }
    seen
}

#[test]
fn principal_orbit_matches_search() {
    for (l, n, p) in [("A", 1, 5), ("A", 2, 5), ("B", 2, 7), ("G", 2, 7)] {
        let c = ctx(l, n, p);
        let inner = 2 * p;
        let found = orbit_of_zero(&c, 6 * p);
        for y in BoxIter::symmetric(n, inner) {
            assert_eq!(
                c.in_principal_orbit(&y),
                found.contains(&y),
                "{l}{n} p={p} {y}"
            );
        }
    }
}

#[test]
fn dot_is_a_group_action() {
    for (l, n, p) in [("A", 2, 5), ("B", 2, 7), ("G", 2, 7)] {
        let c = ctx(l, n, p);
        let rs = c.rs();
        let g = rs.enumerate_group().unwrap();
        for y in BoxIter::symmetric(n, 3) {
            for u in g {
                for v in g {
                    assert_eq!(c.dot(&rs.multiply(u, v), &y), c.dot(u, &c.dot(v, &y)));
                }
                assert_eq!(&c.dot(u, &y) + rs.rho(), rs.apply(u, &(&y + rs.rho())));
            }
        }
    }
}

#[test]
fn unique_dominant_dot_rep_on_boxes() {
    for (l, n, p) in [
        ("A", 2, 5),
        ("B", 2, 5),
        ("B", 2, 7),
        ("G", 2, 7),
        ("A", 3, 5),
    ] {
        let c = ctx(l, n, p);
        let rs = c.rs();
        let g = rs.enumerate_group().unwrap();
        for y in BoxIter::symmetric(n, 4).filter(|y| rs.in_root_lattice(y)) {
            let nu = y.scale(p);
            let hits: Vec<_> = g.iter().filter(|w| c.dot(w, &nu).is_dominant()).collect();
            assert_eq!(hits.len(), 1, "{l}{n} p={p} {nu}");
            assert!(rs.apply(hits[0], &nu).is_dominant());
            assert!(rs.is_regular(&(&nu + rs.rho())));
            let (w, d) = c.dominant_dot_rep(&nu).unwrap();
            assert_eq!((&w, d), (hits[0], c.dot(hits[0], &nu)));
        }
    }
}

fn weight(n: usize, r: i64) -> impl Strategy<Value = Weight> {
    prop::collection::vec(-r..=r, n).prop_map(Weight::new)
}

proptest! {
    #[test]
    fn pairing_is_additive(x in weight(2, 40), y in weight(2, 40)) {
        for (l, n) in [("B", 2), ("G", 2), ("A", 2)] {
            let s = rs(l, n);
            for k in 0..s.positive_roots().len() {
                let lhs = s.pairing(&(&x + &y), k).unwrap();
                prop_assert_eq!(lhs, s.pairing(&x, k).unwrap() + s.pairing(&y, k).unwrap());
            }
        }
    }

    #[test]
    fn root_lattice_is_a_w_stable_subgroup(x in weight(3, 30), y in weight(3, 30)) {
        for (l, n) in [("A", 3), ("B", 3), ("C", 3)] {
            let s = rs(l, n);
            let (xr, yr) = (s.in_root_lattice(&x), s.in_root_lattice(&y));
            if xr && yr {
                prop_assert!(s.in_root_lattice(&(&x - &y)));
            }
            if xr != yr {
                prop_assert!(!s.in_root_lattice(&(&x + &y)));
            }
            for w in s.enumerate_group().unwrap().iter().step_by(5) {
                prop_assert_eq!(s.in_root_lattice(&s.apply(w, &x)), xr);
                prop_assert!(s.in_root_lattice(&(&s.apply(w, &x) - &x)));
            }
        }
    }

    #[test]
    fn principal_orbit_is_w_p_stable(x in weight(2, 25), z in weight(2, 3)) {
        let c = ctx("B", 2, 7);
        let s = c.rs();
        let inside = c.in_principal_orbit(&x);
        for w in s.enumerate_group().unwrap() {
            prop_assert_eq!(c.in_principal_orbit(&c.dot(w, &x)), inside);
        }
        let shift = s.from_root_coords(z.coords()).scale(7);
        prop_assert_eq!(c.in_principal_orbit(&(&x + &shift)), inside);
    }

    #[test]
    fn dominant_rep_round_trips(x in weight(3, 20)) {
        let s = rs("B", 3);
        let (d, w) = s.dominant_rep(&x, weyltrunc_core::OrbitEnd::Dominant);
        prop_assert!(d.is_dominant());
        prop_assert_eq!(s.apply(&w, &d), x.clone());
        let m = s.minimal_orbit_element(&x);
        prop_assert!(s.apply(&s.inverse(&m), &x).is_antidominant());
    }
}
