//! Partial orders on weights: dominance, the excellent order ⪯, its antipodal
//! twin ⪯°, and the strong linkage order ↑.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::affine::AffineContext;
use crate::error::{Error, Result};
use crate::root_data::{OrbitEnd, RootSystem};
use crate::weight::Weight;

/// Order names as they appear on the command line and in JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderTag {
    Dominance,
    Excellent,
    AntipodalExcellent,
    StrongLinkage,
}

impl OrderTag {
    pub const ALL: [OrderTag; 4] = [
        OrderTag::Dominance,
        OrderTag::Excellent,
        OrderTag::AntipodalExcellent,
        OrderTag::StrongLinkage,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OrderTag::Dominance => "dominance",
            OrderTag::Excellent => "excellent",
            OrderTag::AntipodalExcellent => "antipodal-excellent",
            OrderTag::StrongLinkage => "strong-linkage",
        }
    }
}

impl fmt::Display for OrderTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OrderTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OrderTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown order {s:?}")))
    }
}

impl Serialize for OrderTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// How the Bruhat clause of the excellent order is scoped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExcellentReading {
    /// `x ⪯ x'` iff `x⁺ < x'⁺`, or `x⁺ = x'⁺` and `w <= w'`.
    #[default]
    SameOrbit,
    /// `x ⪯ x'` iff `x⁺ < x'⁺` or `w <= w'`, regardless of orbit. Exploratory
    /// only; this relation need not be a partial order.
    CrossOrbit,
}

#[derive(Debug, Clone)]
pub enum OrderKind {
    Dominance,
    Excellent,
    AntipodalExcellent,
    StrongLinkage(AffineContext),
}

impl OrderKind {
    pub fn tag(&self) -> OrderTag {
        match self {
            OrderKind::Dominance => OrderTag::Dominance,
            OrderKind::Excellent => OrderTag::Excellent,
            OrderKind::AntipodalExcellent => OrderTag::AntipodalExcellent,
            OrderKind::StrongLinkage(_) => OrderTag::StrongLinkage,
        }
    }

    /// Builds the order for `tag`; only strong linkage uses `ctx`.
    pub fn from_tag(tag: OrderTag, ctx: &AffineContext) -> Self {
        match tag {
            OrderTag::Dominance => OrderKind::Dominance,
            OrderTag::Excellent => OrderKind::Excellent,
            OrderTag::AntipodalExcellent => OrderKind::AntipodalExcellent,
            OrderTag::StrongLinkage => OrderKind::StrongLinkage(ctx.clone()),
        }
    }

    pub fn leq(&self, rs: &RootSystem, x: &Weight, y: &Weight) -> Result<bool> {
        Ok(match self {
            OrderKind::Dominance => dominance_leq(rs, x, y),
            OrderKind::Excellent => excellent_leq(rs, x, y),
            OrderKind::AntipodalExcellent => antipodal_excellent_leq(rs, x, y),
            OrderKind::StrongLinkage(ctx) => strong_linkage_leq(ctx, x, y)?,
        })
    }
}

/// `x <= y` iff `y - x` is a non-negative integer combination of simple roots.
pub fn dominance_leq(rs: &RootSystem, x: &Weight, y: &Weight) -> bool {
    rs.root_coords(&(y - x))
        .is_some_and(|c| c.iter().all(|&v| v >= 0))
}

pub fn dominance_lt(rs: &RootSystem, x: &Weight, y: &Weight) -> bool {
    x != y && dominance_leq(rs, x, y)
}

pub fn excellent_leq(rs: &RootSystem, x: &Weight, y: &Weight) -> bool {
    excellent_leq_with(rs, x, y, ExcellentReading::SameOrbit)
}

pub fn excellent_leq_with(
    rs: &RootSystem,
    x: &Weight,
    y: &Weight,
    reading: ExcellentReading,
) -> bool {
    let xd = rs.dominant(x);
    let yd = rs.dominant(y);
    if dominance_lt(rs, &xd, &yd) {
        return true;
    }
    if reading == ExcellentReading::SameOrbit && xd != yd {
        return false;
    }
    let w = rs.minimal_orbit_element(x);
    let w2 = rs.minimal_orbit_element(y);
    rs.bruhat_leq(&w, &w2)
}

/// `x ⪯° y` iff `-x ⪯ -y`.
pub fn antipodal_excellent_leq(rs: &RootSystem, x: &Weight, y: &Weight) -> bool {
    excellent_leq(rs, &-x, &-y)
}

/// Strong linkage `λ ↑ μ`.
pub fn strong_linkage_leq(ctx: &AffineContext, lambda: &Weight, mu: &Weight) -> Result<bool> {
    let rs = ctx.rs();
    rs.check_rank(lambda)?;
    rs.check_rank(mu)?;
    if lambda == mu {
        return Ok(true);
    }
    if !dominance_leq(rs, lambda, mu) {
        return Ok(false);
    }
    Ok(strong_linkage_down_set(ctx, mu, lambda)?.contains(lambda))
}

/// Every `x` with `x ↑ μ` and `floor <= x` in dominance.
///
/// A chain ending at `λ` only passes through weights between `λ` and `μ`, so
/// with `floor <= λ` the result decides `λ ↑ μ` exactly. `floor` must differ
/// from `μ` by an element of the root lattice.
pub fn strong_linkage_down_set(
    ctx: &AffineContext,
    mu: &Weight,
    floor: &Weight,
) -> Result<HashSet<Weight>> {
    let rs = ctx.rs();
    let p = ctx.p();
    let budget = rs.limits().linkage_budget;
    let floor_scaled = rs.scaled_root_coords(floor);
    let root_scaled: Vec<Vec<i64>> = rs
        .positive_roots()
        .iter()
        .map(|r| rs.scaled_root_coords(&r.weight))
        .collect();

    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    if !dominance_leq(rs, floor, mu) {
        return Ok(seen);
    }
    seen.insert(mu.clone());
    queue.push_back(mu.clone());
    while let Some(x) = queue.pop_front() {
        let slack: Vec<i64> = rs
            .scaled_root_coords(&x)
            .iter()
            .zip(&floor_scaled)
            .map(|(a, b)| a - b)
            .collect();
        let shifted = &x + rs.rho();
        for (idx, pair) in rs.pairings(&shifted).enumerate() {
            // Steps x -> x - k beta with k = pair - np > 0, staying above floor.
            let kmax = root_scaled[idx]
                .iter()
                .zip(&slack)
                .filter(|(b, _)| **b > 0)
                .map(|(b, s)| s / b)
                .min()
                .unwrap_or(0);
            let mut k = pair.rem_euclid(p);
            if k == 0 {
                k = p;
            }
            let beta = &rs.positive_roots()[idx].weight;
            while k <= kmax {
                let y = &x - &beta.scale(k);
                if !seen.contains(&y) {
                    if seen.len() >= budget {
                        return Err(Error::LinkageBudget { budget });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
                k += p;
            }
        }
    }
    Ok(seen)
}

/// Keys that make repeated excellent-order comparisons cheap.
#[derive(Debug, Clone)]
pub(crate) struct ExcellentKey {
    pub dominant: Weight,
    pub scaled_dominant: Vec<i64>,
    pub min_element: crate::weyl::WeylElement,
}

impl ExcellentKey {
    pub fn new(rs: &RootSystem, x: &Weight) -> Self {
        let dominant = rs.dominant_rep(x, OrbitEnd::Dominant).0;
        let scaled_dominant = rs.scaled_root_coords(&dominant);
        ExcellentKey {
            dominant,
            scaled_dominant,
            min_element: rs.minimal_orbit_element(x),
        }
    }

    pub fn leq(&self, rs: &RootSystem, other: &ExcellentKey) -> bool {
        if self.dominant == other.dominant {
            return rs.bruhat_leq(&self.min_element, &other.min_element);
        }
        scaled_lt(
            rs.cartan_determinant(),
            &self.scaled_dominant,
            &other.scaled_dominant,
        )
    }
}

/// Strict dominance on determinant-scaled root coordinates of distinct weights.
pub(crate) fn scaled_leq(det: i64, a: &[i64], b: &[i64]) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| y - x >= 0 && (y - x) % det == 0)
}

fn scaled_lt(det: i64, a: &[i64], b: &[i64]) -> bool {
    a != b && scaled_leq(det, a, b)
}
