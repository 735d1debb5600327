//! The ρ-shifted ("dot") action of `W` and of `W_p = W ⋉ pY`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_data::RootSystem;
use crate::weight::Weight;
use crate::weyl::WeylElement;

/// A root system together with the parameter `p`.
#[derive(Debug, Clone)]
pub struct AffineContext {
    rs: Arc<RootSystem>,
    p: i64,
    p_is_prime: bool,
}

/// Where `p` sits relative to the Coxeter number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PRegime {
    /// `h < p <= 2h - 2`.
    Boundary,
    /// `p > 2h - 2`.
    Stable,
}

/// The affine element `y ↦ w·y + p z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineElement {
    pub w: WeylElement,
    /// Translation part, an element of the root lattice.
    pub z: Weight,
}

impl AffineContext {
    /// Requires `p > h`. A composite `p` is accepted with a warning.
    pub fn new(rs: Arc<RootSystem>, p: i64) -> Result<Self> {
        let h = rs.coxeter_number();
        if p <= h {
            return Err(Error::Precondition(format!(
                "p = {p} must exceed the Coxeter number h = {h} of {}",
                rs.spec()
            )));
        }
        rs.enumerate_group()?;
        let p_is_prime = is_prime(p);
        if !p_is_prime {
            log::warn!("p = {p} is not prime; continuing with a quantum-style parameter");
        }
        Ok(AffineContext { rs, p, p_is_prime })
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn p_is_prime(&self) -> bool {
        self.p_is_prime
    }

    pub fn regime(&self) -> PRegime {
        if self.p > 2 * self.rs.coxeter_number() - 2 {
            PRegime::Stable
        } else {
            PRegime::Boundary
        }
    }

    /// `w·y = w(y + ρ) - ρ`.
    pub fn dot(&self, w: &WeylElement, y: &Weight) -> Weight {
        let rho = self.rs.rho();
        &self.rs.apply(w, &(y + rho)) - rho
    }

    pub fn dot_affine(&self, a: &AffineElement, y: &Weight) -> Weight {
        &self.dot(&a.w, y) + &a.z.scale(self.p)
    }

    /// `y / p` if `y ∈ pY`.
    pub fn p_root_lattice_quotient(&self, y: &Weight) -> Option<Weight> {
        y.div_exact(self.p).filter(|q| self.rs.in_root_lattice(q))
    }

    pub fn in_p_root_lattice(&self, y: &Weight) -> bool {
        self.p_root_lattice_quotient(y).is_some()
    }

    /// Whether `y ∈ W_p·0`, i.e. `y + ρ - w(ρ) ∈ pY` for some `w ∈ W`.
    pub fn in_principal_orbit(&self, y: &Weight) -> bool {
        let shifted = y + self.rs.rho();
        self.rs.group().iter().any(|w| {
            let diff = &shifted - &self.rs.rho_image(w);
            self.in_p_root_lattice(&diff)
        })
    }

    pub fn is_regular(&self, x: &Weight) -> bool {
        self.rs.is_regular(x)
    }

    /// For `ν ∈ pY`, the unique `w ∈ W` with `w·ν` dominant, and `w·ν`.
    ///
    /// Searches all of `W`; finding zero or several such `w`, a non-dominant
    /// `wν`, or a singular `ν + ρ` is reported as an invariant violation.
    pub fn dominant_dot_rep(&self, nu: &Weight) -> Result<(WeylElement, Weight)> {
        self.rs.check_rank(nu)?;
        if !self.in_p_root_lattice(nu) {
            return Err(Error::Precondition(format!(
                "{nu} is not in pY for p = {}",
                self.p
            )));
        }
        let mut found: Option<(WeylElement, Weight)> = None;
        for w in self.rs.group() {
            let image = self.dot(w, nu);
            if image.is_dominant() {
                if let Some((prev, _)) = &found {
                    return Err(Error::InvariantViolation(format!(
                        "both {prev} and {w} send {nu} to a dominant weight"
                    )));
                }
                found = Some((w.clone(), image));
            }
        }
        let (w, image) = found.ok_or_else(|| {
            Error::InvariantViolation(format!("no w in W sends {nu} to a dominant weight"))
        })?;
        if !self.rs.apply(&w, nu).is_dominant() {
            return Err(Error::InvariantViolation(format!(
                "w = {w} makes w·{nu} dominant but not w{nu}"
            )));
        }
        if !self.is_regular(&(nu + self.rs.rho())) {
            return Err(Error::InvariantViolation(format!("{nu} + rho is singular")));
        }
        Ok((w, image))
    }

    /// The affine reflection `s_{β,np}·x = x - (<x+ρ, β^∨> - np) β`.
    pub fn affine_reflection(&self, root: usize, n: i64, x: &Weight) -> Result<Weight> {
        let k = self.rs.pairing(&(x + self.rs.rho()), root)? - n * self.p;
        let beta = &self.rs.positive_roots()[root].weight;
        Ok(x - &beta.scale(k))
    }
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::{RootSystemSpec, TypeLetter};

    fn ctx(l: TypeLetter, r: usize, p: i64) -> AffineContext {
        let rs = RootSystem::build(RootSystemSpec::new(l, r).unwrap()).unwrap();
        AffineContext::new(Arc::new(rs), p).unwrap()
    }

    #[test]
    fn p_must_exceed_h() {
        let rs =
            Arc::new(RootSystem::build(RootSystemSpec::new(TypeLetter::B, 2).unwrap()).unwrap());
        assert!(AffineContext::new(rs.clone(), 4).is_err());
        let c = AffineContext::new(rs, 9).unwrap();
        assert!(!c.p_is_prime());
        assert_eq!(c.regime(), PRegime::Stable);
        assert_eq!(ctx(TypeLetter::B, 2, 5).regime(), PRegime::Boundary);
    }

    #[test]
    fn dot_examples() {
        let c = ctx(TypeLetter::A, 2, 5);
        let y = Weight::from([3, -1]);
        assert_eq!(c.dot(&WeylElement::identity(), &y), y);
        let s1 = c.rs().simple_reflection(0).unwrap();
        assert_eq!(c.dot(&s1, &Weight::zero(2)), Weight::from([-2, 1]));

        let c = ctx(TypeLetter::A, 1, 5);
        let a = AffineElement {
            w: c.rs().simple_reflection(0).unwrap(),
            z: Weight::from([2]),
        };
        assert_eq!(c.dot_affine(&a, &Weight::zero(1)), Weight::from([8]));
    }

    #[test]
    fn principal_orbit_examples() {
        let c = ctx(TypeLetter::A, 1, 5);
        assert!(c.in_principal_orbit(&Weight::zero(1)));
        assert!(c.in_principal_orbit(&Weight::from([8])));
        assert!(!c.in_principal_orbit(&Weight::from([2])));
        // n + 1 ≡ ±1 (mod 10)
        for n in -30..=30 {
            let expected = (n + 1i64).rem_euclid(10) == 1 || (n + 1i64).rem_euclid(10) == 9;
            assert_eq!(
                c.in_principal_orbit(&Weight::from([n])),
                expected,
                "n = {n}"
            );
        }
    }

    #[test]
    fn dominant_dot_rep_examples() {
        let c = ctx(TypeLetter::A, 1, 5);
        let (w, d) = c.dominant_dot_rep(&Weight::zero(1)).unwrap();
        assert!(w.is_identity());
        assert!(d.is_zero());
        let (w, d) = c.dominant_dot_rep(&Weight::from([-10])).unwrap();
        assert_eq!(w.word(), &[0]);
        assert_eq!(d, Weight::from([8]));
        assert!(matches!(
            c.dominant_dot_rep(&Weight::from([5])),
            Err(Error::Precondition(_))
        ));

        let c = ctx(TypeLetter::A, 2, 5);
        // 5 * (-alpha1 - alpha2) = 5 * (-1, -1)
        let (w, _) = c.dominant_dot_rep(&Weight::from([-5, -5])).unwrap();
        assert_eq!(w, c.rs().longest_element());
    }

    #[test]
    fn regularity_examples() {
        let c = ctx(TypeLetter::A, 2, 5);
        assert!(c.is_regular(c.rs().rho()));
        assert!(!c.is_regular(&Weight::zero(2)));
        assert!(c.is_regular(&Weight::from([6, 1])));
    }

    #[test]
    fn affine_reflection_a1() {
        // s_{alpha,5}·0 = 0 - (1 - 5) alpha = 4 alpha = 8 omega
        let c = ctx(TypeLetter::A, 1, 5);
        assert_eq!(
            c.affine_reflection(0, 1, &Weight::zero(1)).unwrap(),
            Weight::from([8])
        );
    }
}
