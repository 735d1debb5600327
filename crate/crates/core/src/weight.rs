//! Integral weights in the fundamental-weight basis.
//!
//! `coords[i]` is the pairing with the `i`-th simple coroot, so dominance of
//! a weight is a sign check. Arithmetic is checked; overflow panics instead
//! of wrapping, since every quantity in this crate is bounded by the
//! enumeration caps and an overflow means the caller misused the API.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The `i`-th fundamental weight.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Weight(c)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// All simple-coroot pairings are non-negative.
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_antidominant(&self) -> bool {
        self.0.iter().all(|&c| c <= 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|&c| checked(c.checked_mul(k))).collect())
    }

    /// Exact division of every coordinate, if possible.
    pub fn div_exact(&self, k: i64) -> Option<Weight> {
        if k == 0 || self.0.iter().any(|c| c % k != 0) {
            return None;
        }
        Some(Weight(self.0.iter().map(|c| c / k).collect()))
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

#[inline]
pub(crate) fn checked(v: Option<i64>) -> i64 {
    v.expect("weight arithmetic overflowed i64")
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl<const N: usize> From<[i64; N]> for Weight {
    fn from(v: [i64; N]) -> Self {
        Weight(v.to_vec())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in weight addition");
        Weight(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| checked(a.checked_add(*b)))
                .collect(),
        )
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(
            self.rank(),
            rhs.rank(),
            "rank mismatch in weight subtraction"
        );
        Weight(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| checked(a.checked_sub(*b)))
                .collect(),
        )
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| checked(c.checked_neg())).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

/// A finite set of weights kept as a sorted, deduplicated list.
///
/// Equality is list equality, and iteration order is the canonical
/// (lexicographic) order used for every emitted file.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightSet(Vec<Weight>);

impl WeightSet {
    pub fn new() -> Self {
        WeightSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &Weight) -> bool {
        self.0.binary_search(x).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Weight> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Weight] {
        &self.0
    }

    pub fn index_of(&self, x: &Weight) -> Option<usize> {
        self.0.binary_search(x).ok()
    }

    pub fn is_subset(&self, other: &WeightSet) -> bool {
        self.0.iter().all(|x| other.contains(x))
    }

    pub fn filter(&self, mut keep: impl FnMut(&Weight) -> bool) -> WeightSet {
        WeightSet(self.0.iter().filter(|x| keep(x)).cloned().collect())
    }

    pub fn without(&self, x: &Weight) -> WeightSet {
        self.filter(|y| y != x)
    }

    pub fn map(&self, f: impl FnMut(&Weight) -> Weight) -> WeightSet {
        self.0.iter().map(f).collect()
    }
}

impl FromIterator<Weight> for WeightSet {
    fn from_iter<I: IntoIterator<Item = Weight>>(iter: I) -> Self {
        let mut v: Vec<Weight> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        WeightSet(v)
    }
}

impl From<Vec<Weight>> for WeightSet {
    fn from(v: Vec<Weight>) -> Self {
        v.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a WeightSet {
    type Item = &'a Weight;
    type IntoIter = std::slice::Iter<'a, Weight>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl IntoIterator for WeightSet {
    type Item = Weight;
    type IntoIter = std::vec::IntoIter<Weight>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// All integer points of the box `lo[i] <= c[i] <= hi[i]`, in lexicographic
/// order.
#[derive(Debug, Clone)]
pub struct BoxIter {
    lo: Vec<i64>,
    hi: Vec<i64>,
    next: Option<Vec<i64>>,
}

impl BoxIter {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        assert_eq!(lo.len(), hi.len());
        let empty = lo.iter().zip(&hi).any(|(l, h)| l > h);
        let next = if empty { None } else { Some(lo.clone()) };
        BoxIter { lo, hi, next }
    }

    /// The symmetric box `|c[i]| <= radius`.
    pub fn symmetric(rank: usize, radius: i64) -> Self {
        BoxIter::new(vec![-radius; rank], vec![radius; rank])
    }

    pub fn volume(lo: &[i64], hi: &[i64]) -> u128 {
        lo.iter()
            .zip(hi)
            .map(|(l, h)| if h < l { 0 } else { (h - l + 1) as u128 })
            .product()
    }
}

impl Iterator for BoxIter {
    type Item = Weight;

    fn next(&mut self) -> Option<Weight> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if succ[i] < self.hi[i] {
                succ[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ[i] = self.lo[i];
        }
        Some(Weight(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_iter_counts_and_order() {
        let pts: Vec<_> = BoxIter::new(vec![-1, 0], vec![1, 2]).collect();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], Weight::from([-1, 0]));
        assert_eq!(pts[8], Weight::from([1, 2]));
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(BoxIter::new(vec![1], vec![0]).count(), 0);
        assert_eq!(BoxIter::new(vec![], vec![]).count(), 1);
    }

    #[test]
    fn weight_set_is_sorted_and_deduplicated() {
        let s: WeightSet = vec![Weight::from([2]), Weight::from([-1]), Weight::from([2])].into();
        assert_eq!(s.as_slice(), &[Weight::from([-1]), Weight::from([2])]);
        assert!(s.contains(&Weight::from([2])));
        assert!(!s.contains(&Weight::from([0])));
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_not_silent() {
        let _ = Weight::from([i64::MAX]).scale(2);
    }

    #[test]
    fn serializes_as_plain_array() {
        assert_eq!(
            serde_json::to_string(&Weight::from([1, -2])).unwrap(),
            "[1,-2]"
        );
    }
}
