#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use weyltrunc_core::{AffineContext, Limits, RootSystem, RootSystemSpec};

pub fn rs(letter: &str, rank: usize) -> Arc<RootSystem> {
    let spec = RootSystemSpec::parse(letter, rank).unwrap();
    let limits = Limits::default().with_rank_cap(6).unwrap();
    Arc::new(RootSystem::build_with(spec, limits).unwrap())
}

pub fn ctx(letter: &str, rank: usize, p: i64) -> AffineContext {
    AffineContext::new(rs(letter, rank), p).unwrap()
}

pub const FIXTURES: [(&str, usize, i64); 10] = [
    ("A", 1, 5),
    ("A", 2, 5),
    ("A", 2, 7),
    ("B", 2, 7),
    ("B", 2, 11),
    ("G", 2, 11),
    ("G", 2, 13),
    ("A", 3, 7),
    ("B", 3, 11),
    ("C", 3, 11),
];

/// Simple roots as integer vectors in a Euclidean space, scaled by 2 where
/// the usual realisation needs halves. Bourbaki numbering.
pub fn euclidean_simple_roots(letter: &str, n: usize) -> Vec<Vec<i64>> {
    let e = |dim: usize, i: usize, c: i64| {
        let mut v = vec![0; dim];
        v[i] = c;
        v
    };
    let diff = |dim: usize, i: usize, j: usize| {
        let mut v = vec![0; dim];
        v[i] = 1;
        v[j] = -1;
        v
    };
    match letter {
        "A" => (0..n).map(|i| diff(n + 1, i, i + 1)).collect(),
        "B" | "C" | "D" => {
            let mut r: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            r.push(match letter {
                "B" => e(n, n - 1, 1),
                "C" => e(n, n - 1, 2),
                _ => {
                    let mut v = vec![0; n];
                    v[n - 2] = 1;
                    v[n - 1] = 1;
                    v
                }
            });
            r
        }
        "E" => {
            // E8 in doubled coordinates; E6 and E7 are the first 6 and 7.
            let mut a1 = vec![-1; 8];
            a1[0] = 1;
            a1[7] = 1;
            let mut a2 = vec![0; 8];
            a2[0] = 2;
            a2[1] = 2;
            let mut r = vec![a1, a2];
            for i in 0..6 {
                let mut v = vec![0; 8];
                v[i] = -2;
                v[i + 1] = 2;
                r.push(v);
            }
            r.truncate(n);
            r
        }
        "F" => vec![
            vec![0, 2, -2, 0],
            vec![0, 0, 2, -2],
            vec![0, 0, 0, 2],
            vec![1, -1, -1, -1],
        ],
        "G" => vec![vec![1, -1, 0], vec![-2, 1, 1]],
        _ => panic!("no realisation for {letter}"),
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// All roots, by closing the simple roots under simple reflections.
pub fn euclidean_roots(simple: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let mut seen: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = simple.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        for a in simple {
            let k = 2 * dot(&v, a) / dot(a, a);
            let r: Vec<i64> = v.iter().zip(a).map(|(x, y)| x - k * y).collect();
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    seen
}
