//! Finite crystallographic root systems.
//!
//! Cartan matrices are tabulated per type with Bourbaki numbering. Everything
//! else (positive roots, coroots, ρ, the maximal short root, h) is derived
//! from the table with exact integer arithmetic.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::weight::Weight;
use crate::weyl::WeylElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TypeLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for TypeLetter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => TypeLetter::A,
            "B" => TypeLetter::B,
            "C" => TypeLetter::C,
            "D" => TypeLetter::D,
            "E" => TypeLetter::E,
            "F" => TypeLetter::F,
            "G" => TypeLetter::G,
            _ => {
                return Err(Error::InvalidType {
                    letter: s.to_string(),
                    rank: 0,
                    reason: "not a crystallographic type letter (expected one of A-G)",
                })
            }
        })
    }
}

impl fmt::Display for TypeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A finite irreducible Cartan type, e.g. `B3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RootSystemSpec {
    pub type_letter: TypeLetter,
    pub rank: usize,
}

impl RootSystemSpec {
    pub fn new(type_letter: TypeLetter, rank: usize) -> Result<Self> {
        let reason = match type_letter {
            _ if rank == 0 => Some("rank must be positive"),
            TypeLetter::A => None,
            TypeLetter::B | TypeLetter::C if rank < 2 => Some("types B and C need rank >= 2"),
            TypeLetter::D if rank < 4 => Some("type D needs rank >= 4"),
            TypeLetter::E if !(6..=8).contains(&rank) => Some("type E needs rank 6, 7 or 8"),
            TypeLetter::F if rank != 4 => Some("type F needs rank 4"),
            TypeLetter::G if rank != 2 => Some("type G needs rank 2"),
            _ => None,
        };
        match reason {
            Some(reason) => Err(Error::InvalidType {
                letter: type_letter.to_string(),
                rank,
                reason,
            }),
            None => Ok(RootSystemSpec { type_letter, rank }),
        }
    }

    pub fn parse(letter: &str, rank: usize) -> Result<Self> {
        let type_letter = letter
            .parse::<TypeLetter>()
            .map_err(|_| Error::InvalidType {
                letter: letter.to_string(),
                rank,
                reason: "not a crystallographic type letter (expected one of A-G)",
            })?;
        RootSystemSpec::new(type_letter, rank)
    }

    /// Order of the Weyl group, from the classification.
    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.type_letter {
            TypeLetter::A => fact(n + 1),
            TypeLetter::B | TypeLetter::C => (1u64 << n) * fact(n),
            TypeLetter::D => (1u64 << (n - 1)) * fact(n),
            TypeLetter::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            TypeLetter::F => 1_152,
            TypeLetter::G => 12,
        }
    }

    /// `C[i][j] = <alpha_j, alpha_i^vee>`, Bourbaki numbering, 0-based.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut bond = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.type_letter {
            TypeLetter::A | TypeLetter::B | TypeLetter::C => {
                for i in 0..n.saturating_sub(1) {
                    bond(i, i + 1);
                }
            }
            TypeLetter::D => {
                for i in 0..n - 2 {
                    bond(i, i + 1);
                }
                bond(n - 3, n - 1);
            }
            TypeLetter::E => {
                bond(0, 2);
                bond(1, 3);
                for i in 2..n - 1 {
                    bond(i, i + 1);
                }
            }
            TypeLetter::F => {
                bond(0, 1);
                bond(1, 2);
                bond(2, 3);
            }
            TypeLetter::G => bond(0, 1),
        }
        match self.type_letter {
            // alpha_n short
            TypeLetter::B => c[n - 1][n - 2] = -2,
            // alpha_n long
            TypeLetter::C => c[n - 2][n - 1] = -2,
            // alpha_1, alpha_2 long; alpha_3, alpha_4 short
            TypeLetter::F => c[2][1] = -2,
            // alpha_1 short, alpha_2 long
            TypeLetter::G => c[0][1] = -3,
            _ => {}
        }
        c
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.type_letter, self.rank)
    }
}

/// One positive root with its three coordinate descriptions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositiveRoot {
    /// Coefficients over the simple roots.
    pub root_coords: Vec<i64>,
    /// Fundamental-weight coordinates.
    pub weight: Weight,
    /// Coefficients of the coroot over the simple coroots.
    pub coroot_coords: Vec<i64>,
    /// Squared length, normalised so the shortest roots have length 1.
    pub norm: i64,
}

impl PositiveRoot {
    pub fn height(&self) -> i64 {
        self.root_coords.iter().sum()
    }
}

/// Which end of a Weyl orbit to descend to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitEnd {
    Dominant,
    Antidominant,
}

/// Immutable Cartan and lattice data for one finite type.
#[derive(Debug)]
pub struct RootSystem {
    spec: RootSystemSpec,
    limits: Limits,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<PositiveRoot>,
    /// Squared lengths of the simple roots.
    simple_norms: Vec<i64>,
    rho: Weight,
    alpha0: usize,
    coxeter_number: i64,
    weyl_order: u64,
    det: i64,
    /// adj(C), so that root coordinates of `x` are `adj * x / det`.
    adjugate: Vec<Vec<i64>>,
    pub(crate) group_cache: OnceLock<Vec<WeylElement>>,
}

impl RootSystem {
    /// Builds the root system with default limits.
    pub fn build(spec: RootSystemSpec) -> Result<Self> {
        RootSystem::build_with(spec, Limits::default())
    }

    pub fn build_with(spec: RootSystemSpec, limits: Limits) -> Result<Self> {
        // Re-validate: the fields are public.
        let spec = RootSystemSpec::new(spec.type_letter, spec.rank)?;
        if spec.rank > limits.rank_cap {
            return Err(Error::RankCap {
                rank: spec.rank,
                cap: limits.rank_cap,
            });
        }
        let n = spec.rank;
        let cartan = spec.cartan_matrix();
        let simple_norms = symmetrizer(&cartan);
        let positive_roots = positive_roots(&cartan, &simple_norms);
        let coxeter_number = (2 * positive_roots.len() / n) as i64;
        let rho = Weight::new(vec![1; n]);

        let min_norm = positive_roots.iter().map(|r| r.norm).min().unwrap_or(1);
        let alpha0 = positive_roots
            .iter()
            .position(|r| r.norm == min_norm && r.weight.is_dominant())
            .expect("every irreducible root system has a dominant short root");

        let (det, adjugate) = determinant_and_adjugate(&cartan);
        Ok(RootSystem {
            spec,
            limits,
            cartan,
            positive_roots,
            simple_norms,
            rho,
            alpha0,
            coxeter_number,
            weyl_order: spec.weyl_order(),
            det,
            adjugate,
            group_cache: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> RootSystemSpec {
        self.spec
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    pub fn simple_norms(&self) -> &[i64] {
        &self.simple_norms
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// Index of the maximal short root in [`Self::positive_roots`].
    pub fn alpha0_index(&self) -> usize {
        self.alpha0
    }

    pub fn alpha0(&self) -> &Weight {
        &self.positive_roots[self.alpha0].weight
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    pub fn weyl_order(&self) -> u64 {
        self.weyl_order
    }

    pub fn cartan_determinant(&self) -> i64 {
        self.det
    }

    /// The `i`-th simple root in weight coordinates (column `i` of the Cartan matrix).
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight::new(self.cartan.iter().map(|row| row[i]).collect())
    }

    pub(crate) fn check_rank(&self, x: &Weight) -> Result<()> {
        if x.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: x.rank(),
            });
        }
        Ok(())
    }

    /// `<x, beta^vee>` for the positive root with the given index.
    pub fn pairing(&self, x: &Weight, root: usize) -> Result<i64> {
        self.check_rank(x)?;
        let r = self
            .positive_roots
            .get(root)
            .ok_or(Error::IndexOutOfRange {
                index: root,
                len: self.positive_roots.len(),
            })?;
        Ok(coroot_pairing(x, r))
    }

    /// Pairings of `x` with every positive coroot, in root order.
    pub fn pairings(&self, x: &Weight) -> impl Iterator<Item = i64> + '_ {
        let x = x.clone();
        self.positive_roots
            .iter()
            .map(move |r| coroot_pairing(&x, r))
    }

    pub fn pairing_alpha0(&self, x: &Weight) -> i64 {
        coroot_pairing(x, &self.positive_roots[self.alpha0])
    }

    /// Root coordinates scaled by the Cartan determinant: `adj(C) * x`.
    pub fn scaled_root_coords(&self, x: &Weight) -> Vec<i64> {
        self.adjugate
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x.coords())
                    .map(|(a, c)| a * c)
                    .fold(0i64, |s, t| crate::weight::checked(s.checked_add(t)))
            })
            .collect()
    }

    /// Coefficients of `x` over the simple roots, if they are all integers.
    pub fn root_coords(&self, x: &Weight) -> Option<Vec<i64>> {
        self.scaled_root_coords(x)
            .into_iter()
            .map(|v| (v % self.det == 0).then_some(v / self.det))
            .collect()
    }

    /// Whether `x` lies in the root lattice.
    pub fn in_root_lattice(&self, x: &Weight) -> bool {
        self.scaled_root_coords(x).iter().all(|v| v % self.det == 0)
    }

    /// Weight with the given simple-root coefficients.
    pub fn from_root_coords(&self, c: &[i64]) -> Weight {
        Weight::new(
            self.cartan
                .iter()
                .map(|row| row.iter().zip(c).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// `s_i(x) = x - <x, alpha_i^vee> alpha_i`, in place.
    pub(crate) fn reflect_in_place(&self, i: usize, x: &mut Weight) {
        let k = x.coords()[i];
        if k == 0 {
            return;
        }
        for (j, c) in x.coords_mut().iter_mut().enumerate() {
            *c = crate::weight::checked(c.checked_sub(k * self.cartan[j][i]));
        }
    }

    /// The dominant (or antidominant) member of the orbit `W x`, with the
    /// minimal-length `w` such that `apply(w, end) == x`.
    ///
    /// Descends greedily through the smallest index with a pairing of the
    /// wrong sign, so the result is deterministic.
    pub fn dominant_rep(&self, x: &Weight, end: OrbitEnd) -> (Weight, WeylElement) {
        let mut v = x.clone();
        let mut word = Vec::new();
        loop {
            let next = v.coords().iter().position(|&c| match end {
                OrbitEnd::Dominant => c < 0,
                OrbitEnd::Antidominant => c > 0,
            });
            let Some(i) = next else { break };
            self.reflect_in_place(i, &mut v);
            word.push(i);
        }
        // x = s_{word[0]} ... s_{word[k-1]} v
        let w = self.canonicalize(&word);
        (v, w)
    }

    pub fn dominant(&self, x: &Weight) -> Weight {
        self.dominant_rep(x, OrbitEnd::Dominant).0
    }

    /// Whether no positive coroot pairs to zero with `x`.
    pub fn is_regular(&self, x: &Weight) -> bool {
        self.pairings(x).all(|v| v != 0)
    }
}

fn coroot_pairing(x: &Weight, r: &PositiveRoot) -> i64 {
    x.coords()
        .iter()
        .zip(&r.coroot_coords)
        .map(|(a, b)| a * b)
        .fold(0i64, |s, t| crate::weight::checked(s.checked_add(t)))
}

/// Squared lengths `d_i` with `d_i C[i][j] = d_j C[j][i]`, shortest = 1.
fn symmetrizer(c: &[Vec<i64>]) -> Vec<i64> {
    let n = c.len();
    // Numerators over a common denominator; the diagram is a tree.
    let mut d: Vec<Option<i64>> = vec![None; n];
    d[0] = Some(6);
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if i != j && c[i][j] != 0 && d[j].is_none() {
                // d_j = d_i * C[i][j] / C[j][i]
                d[j] = Some(d[i].unwrap() * c[i][j] / c[j][i]);
                stack.push(j);
            }
        }
    }
    let d: Vec<i64> = d
        .into_iter()
        .map(|v| v.expect("connected diagram"))
        .collect();
    let min = *d.iter().min().unwrap();
    d.into_iter().map(|v| v / min).collect()
}

fn positive_roots(c: &[Vec<i64>], norms: &[i64]) -> Vec<PositiveRoot> {
    let n = c.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut seen: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    // Roots are appended in non-decreasing height, so every root below the
    // one being processed is already known.
    let mut k = 0;
    while k < roots.len() {
        let beta = roots[k].clone();
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| c[i][j] * beta[j]).sum();
            let mut q = 0;
            let mut down = beta.clone();
            loop {
                down[i] -= 1;
                if seen.contains(&down) {
                    q += 1;
                } else {
                    break;
                }
            }
            if q - pairing > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if seen.insert(up.clone()) {
                    roots.push(up);
                }
            }
        }
        k += 1;
    }
    let mut out: Vec<PositiveRoot> = roots
        .into_iter()
        .map(|rc| {
            // (beta, beta) = sum_ij c_i c_j d_i C[i][j] / 2
            let mut twice_norm = 0;
            for i in 0..n {
                for j in 0..n {
                    twice_norm += rc[i] * rc[j] * norms[i] * c[i][j];
                }
            }
            let norm = twice_norm / 2;
            let coroot_coords = (0..n)
                .map(|i| {
                    let v = rc[i] * norms[i];
                    debug_assert_eq!(v % norm, 0);
                    v / norm
                })
                .collect();
            let weight = Weight::new(
                (0..n)
                    .map(|i| (0..n).map(|j| c[i][j] * rc[j]).sum())
                    .collect(),
            );
            PositiveRoot {
                root_coords: rc,
                weight,
                coroot_coords,
                norm,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.height()
            .cmp(&b.height())
            .then_with(|| b.root_coords.cmp(&a.root_coords))
    });
    out
}

/// Fraction-free (Bareiss) determinant.
fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

fn determinant_and_adjugate(m: &[Vec<i64>]) -> (i64, Vec<Vec<i64>>) {
    let n = m.len();
    let det = determinant(m);
    // adj[j][i] = (-1)^(i+j) * minor(i, j)
    let cofactor = |i: usize, j: usize| {
        let minor: Vec<Vec<i64>> = (0..n)
            .filter(|&r| r != i)
            .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c]).collect())
            .collect();
        let sign = if (i + j).is_multiple_of(2) { 1 } else { -1 };
        sign * determinant(&minor)
    };
    let adj = (0..n)
        .map(|j| (0..n).map(|i| cofactor(i, j)).collect())
        .collect();
    (det, adj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(letter: TypeLetter, rank: usize) -> RootSystem {
        RootSystem::build_with(
            RootSystemSpec::new(letter, rank).unwrap(),
            Limits::default().with_rank_cap(6).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn a1_is_fully_forced() {
        let a1 = rs(TypeLetter::A, 1);
        assert_eq!(a1.cartan(), &[vec![2]]);
        assert_eq!(a1.positive_roots().len(), 1);
        assert_eq!(a1.positive_roots()[0].weight, Weight::from([2]));
        assert_eq!(a1.rho(), &Weight::from([1]));
        assert_eq!(a1.alpha0(), &Weight::from([2]));
        assert_eq!(a1.coxeter_number(), 2);
        assert_eq!(a1.weyl_order(), 2);
    }

    #[test]
    fn a2_and_g2_basic_numbers() {
        let a2 = rs(TypeLetter::A, 2);
        assert_eq!(a2.coxeter_number(), 3);
        assert_eq!(a2.positive_roots().len(), 3);
        assert_eq!(a2.pairing_alpha0(a2.rho()), 2);

        let g2 = rs(TypeLetter::G, 2);
        assert_eq!(g2.coxeter_number(), 6);
        assert_eq!(g2.positive_roots().len(), 6);
        assert_eq!(g2.weyl_order(), 12);
    }

    #[test]
    fn invalid_types_are_rejected() {
        for (l, r) in [
            (TypeLetter::G, 3),
            (TypeLetter::F, 3),
            (TypeLetter::E, 5),
            (TypeLetter::E, 9),
            (TypeLetter::D, 3),
            (TypeLetter::B, 1),
            (TypeLetter::A, 0),
        ] {
            let err = RootSystemSpec::new(l, r).unwrap_err();
            assert!(err.to_string().contains(&format!("{l}{r}")), "{err}");
        }
        assert!(RootSystemSpec::parse("H", 3).is_err());
    }

    #[test]
    fn rank_cap_is_enforced() {
        let spec = RootSystemSpec::new(TypeLetter::A, 5).unwrap();
        assert!(matches!(
            RootSystem::build(spec),
            Err(Error::RankCap { rank: 5, cap: 4 })
        ));
        assert!(Limits::default().with_rank_cap(7).is_err());
        let e6 = RootSystemSpec::new(TypeLetter::E, 6).unwrap();
        let big = RootSystem::build_with(e6, Limits::default().with_rank_cap(6).unwrap());
        assert_eq!(big.unwrap().coxeter_number(), 12);
    }

    #[test]
    fn pairing_examples() {
        let a1 = rs(TypeLetter::A, 1);
        assert_eq!(a1.pairing(&Weight::from([1]), 0).unwrap(), 1);
        for k in -3..=3 {
            assert_eq!(a1.pairing(&Weight::from([2 * k]), 0).unwrap(), 2 * k);
        }
        assert!(matches!(
            a1.pairing(&Weight::from([1]), 1),
            Err(Error::IndexOutOfRange { index: 1, len: 1 })
        ));
        let a2 = rs(TypeLetter::A, 2);
        assert_eq!(a2.pairing(a2.rho(), a2.alpha0_index()).unwrap(), 2);
    }

    #[test]
    fn root_lattice_examples() {
        let a1 = rs(TypeLetter::A, 1);
        assert!(a1.in_root_lattice(&Weight::from([2])));
        assert!(!a1.in_root_lattice(&Weight::from([1])));
        let a2 = rs(TypeLetter::A, 2);
        assert!(a2.in_root_lattice(&Weight::from([1, 1])));
        assert!(!a2.in_root_lattice(&Weight::from([1, 0])));
        assert_eq!(a2.root_coords(&Weight::from([1, 1])), Some(vec![1, 1]));
    }

    #[test]
    fn dominant_rep_examples() {
        let a1 = rs(TypeLetter::A, 1);
        let (d, w) = a1.dominant_rep(&Weight::from([-3]), OrbitEnd::Dominant);
        assert_eq!(d, Weight::from([3]));
        assert_eq!(w.word(), &[0]);
        let (d, w) = a1.dominant_rep(&Weight::from([4]), OrbitEnd::Dominant);
        assert_eq!(d, Weight::from([4]));
        assert!(w.is_identity());

        let a2 = rs(TypeLetter::A, 2);
        let x = Weight::from([-1, 2]);
        let (d, w) = a2.dominant_rep(&x, OrbitEnd::Dominant);
        assert_eq!(d, Weight::from([1, 1]));
        assert_eq!(a2.apply(&w, &d), x);
        let (a, w) = a2.dominant_rep(&x, OrbitEnd::Antidominant);
        assert_eq!(a, Weight::from([-1, -1]));
        assert_eq!(a2.apply(&w, &a), x);
    }

    #[test]
    fn determinants_match_fundamental_group_orders() {
        for (l, r, det) in [
            (TypeLetter::A, 3, 4),
            (TypeLetter::B, 3, 2),
            (TypeLetter::C, 3, 2),
            (TypeLetter::D, 4, 4),
            (TypeLetter::E, 6, 3),
            (TypeLetter::F, 4, 1),
            (TypeLetter::G, 2, 1),
        ] {
            assert_eq!(rs(l, r).cartan_determinant(), det, "{l}{r}");
        }
    }
}
