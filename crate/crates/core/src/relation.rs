//! Finite binary relations stored as bit matrices, and Hasse diagrams.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::affine::AffineContext;
use crate::error::Result;
use crate::orders::{scaled_leq, strong_linkage_down_set, ExcellentKey, OrderKind};
use crate::root_data::RootSystem;
use crate::weight::{Weight, WeightSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        let stride = n.div_ceil(64);
        Relation {
            n,
            stride,
            bits: vec![0; n * stride],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool + Sync) -> Self {
        let mut r = Relation::empty(n);
        let stride = r.stride;
        r.bits
            .par_chunks_mut(stride.max(1))
            .enumerate()
            .take(n)
            .for_each(|(i, row)| {
                for j in 0..n {
                    if f(i, j) {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
            });
        r
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.stride + j / 64] |= 1 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            (0..self.n)
                .filter(move |&j| self.get(i, j))
                .map(move |j| (i, j))
        })
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetry_violations().is_empty()
    }

    pub fn antisymmetry_violations(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.get(i, j) && self.get(j, i))
            .collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_violation().is_none()
    }

    /// Some `(a, b, c)` with `a R b`, `b R c` but not `a R c`.
    pub fn transitivity_violation(&self) -> Option<(usize, usize, usize)> {
        (0..self.n).into_par_iter().find_map_first(|a| {
            let ra = self.row(a);
            for b in 0..self.n {
                if !self.get(a, b) {
                    continue;
                }
                // row(b) must be a subset of row(a)
                for (w, (x, y)) in self.row(b).iter().zip(ra).enumerate() {
                    let missing = x & !y;
                    if missing != 0 {
                        return Some((a, b, w * 64 + missing.trailing_zeros() as usize));
                    }
                }
            }
            None
        })
    }

    pub fn transpose(&self) -> Relation {
        let mut t = Relation::empty(self.n);
        for (i, j) in self.pairs() {
            t.set(j, i);
        }
        t
    }

    /// Covering pairs `(i, j)`: `i < j` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let t = self.transpose();
        let mut out: Vec<(usize, usize)> = (0..self.n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let t = &t;
                (0..self.n)
                    .filter(move |&j| i != j && self.get(i, j))
                    .filter(move |&j| {
                        // Some k != i, j with i R k and k R j?
                        !self
                            .row(i)
                            .iter()
                            .zip(t.row(j))
                            .enumerate()
                            .any(|(w, (a, b))| {
                                let mut both = a & b;
                                for k in [i, j] {
                                    if k / 64 == w {
                                        both &= !(1u64 << (k % 64));
                                    }
                                }
                                both != 0
                            })
                    })
                    .map(move |j| (i, j))
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// The relation `order` restricted to `elems` (`R[i][j]` iff `elems[i] <= elems[j]`).
pub fn relation_on(order: &OrderKind, rs: &RootSystem, elems: &WeightSet) -> Result<Relation> {
    let items = elems.as_slice();
    let n = items.len();
    let det = rs.cartan_determinant();
    Ok(match order {
        OrderKind::Dominance => {
            let scaled: Vec<Vec<i64>> = items.iter().map(|x| rs.scaled_root_coords(x)).collect();
            Relation::from_fn(n, |i, j| scaled_leq(det, &scaled[i], &scaled[j]))
        }
        OrderKind::Excellent | OrderKind::AntipodalExcellent => {
            let negate = matches!(order, OrderKind::AntipodalExcellent);
            let keys: Vec<ExcellentKey> = items
                .par_iter()
                .map(|x| {
                    if negate {
                        ExcellentKey::new(rs, &-x)
                    } else {
                        ExcellentKey::new(rs, x)
                    }
                })
                .collect();
            Relation::from_fn(n, |i, j| keys[i].leq(rs, &keys[j]))
        }
        OrderKind::StrongLinkage(ctx) => strong_linkage_relation(ctx, items)?,
    })
}

fn strong_linkage_relation(ctx: &AffineContext, items: &[Weight]) -> Result<Relation> {
    let rs = ctx.rs();
    let det = rs.cartan_determinant();
    // One floor per root-lattice coset: the componentwise minimum of the
    // scaled root coordinates, which stays in the coset.
    let mut floors: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let class = |s: &[i64]| s.iter().map(|v| v.rem_euclid(det)).collect::<Vec<_>>();
    for x in items {
        let s = rs.scaled_root_coords(x);
        floors
            .entry(class(&s))
            .and_modify(|f| f.iter_mut().zip(&s).for_each(|(a, b)| *a = (*a).min(*b)))
            .or_insert(s);
    }
    let index: HashMap<&Weight, usize> = items.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let rows: Vec<Vec<usize>> = items
        .par_iter()
        .map(|mu| {
            let s = rs.scaled_root_coords(mu);
            let f = &floors[&class(&s)];
            // f differs from s by det times a non-negative integer vector.
            let drop: Vec<i64> = s.iter().zip(f).map(|(a, b)| (a - b) / det).collect();
            let floor = mu - &rs.from_root_coords(&drop);
            let down = strong_linkage_down_set(ctx, mu, &floor)?;
            Ok(down.iter().filter_map(|x| index.get(x).copied()).collect())
        })
        .collect::<Result<_>>()?;
    let mut r = Relation::empty(items.len());
    for (j, below) in rows.iter().enumerate() {
        for &i in below {
            r.set(i, j);
        }
    }
    Ok(r)
}
