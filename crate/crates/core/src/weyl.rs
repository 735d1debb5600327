//! The finite Weyl group.
//!
//! An element is stored as its lexicographically least reduced word in the
//! simple reflections. Internally an element is identified with the image of
//! ρ, which is regular, so `w ↦ w(ρ)` is injective; the canonical word is
//! read back off that image by repeatedly stripping the smallest left descent.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_data::{OrbitEnd, RootSystem};
use crate::weight::Weight;

/// Serialises as the JSON array of its canonical word; identity is `[]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct WeylElement {
    word: Vec<u8>,
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement { word: Vec::new() }
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

impl std::fmt::Display for WeylElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        for (k, i) in self.word.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{}", i + 1)?;
        }
        Ok(())
    }
}

impl RootSystem {
    /// Linear action: `w = s_{a1} ... s_{ak}` acts by applying `s_{ak}` first.
    pub fn apply(&self, w: &WeylElement, x: &Weight) -> Weight {
        self.apply_word(w.word.iter().map(|&i| i as usize), x)
    }

    fn apply_word(&self, word: impl DoubleEndedIterator<Item = usize>, x: &Weight) -> Weight {
        let mut v = x.clone();
        for i in word.rev() {
            self.reflect_in_place(i, &mut v);
        }
        v
    }

    pub(crate) fn rho_image(&self, w: &WeylElement) -> Weight {
        self.apply(w, self.rho())
    }

    /// The element `w` with `w(ρ) = image`. `image` must lie in the orbit of ρ.
    pub(crate) fn element_from_rho_image(&self, image: &Weight) -> WeylElement {
        let mut v = image.clone();
        let mut word = Vec::new();
        while let Some(i) = v.coords().iter().position(|&c| c < 0) {
            self.reflect_in_place(i, &mut v);
            word.push(i as u8);
        }
        debug_assert_eq!(&v, self.rho(), "not in the orbit of rho");
        WeylElement { word }
    }

    /// Canonical form of the product of simple reflections in `word`.
    pub(crate) fn canonicalize(&self, word: &[usize]) -> WeylElement {
        let image = self.apply_word(word.iter().copied(), self.rho());
        self.element_from_rho_image(&image)
    }

    /// Canonical element for an arbitrary (not necessarily reduced) word.
    pub fn element_from_word(&self, word: &[usize]) -> Result<WeylElement> {
        if let Some(&bad) = word.iter().find(|&&i| i >= self.rank()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: self.rank(),
            });
        }
        Ok(self.canonicalize(word))
    }

    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement> {
        self.element_from_word(&[i])
    }

    pub fn multiply(&self, u: &WeylElement, v: &WeylElement) -> WeylElement {
        let image = self.apply(u, &self.rho_image(v));
        self.element_from_rho_image(&image)
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let rev: Vec<usize> = w.word.iter().rev().map(|&i| i as usize).collect();
        self.canonicalize(&rev)
    }

    pub fn longest_element(&self) -> WeylElement {
        self.element_from_rho_image(&-self.rho())
    }

    /// Whether `l(s_i w) < l(w)`.
    pub fn is_left_descent(&self, i: usize, w: &WeylElement) -> bool {
        self.rho_image(w).coords()[i] < 0
    }

    fn left_mul_simple(&self, i: usize, w: &WeylElement) -> WeylElement {
        let mut image = self.rho_image(w);
        self.reflect_in_place(i, &mut image);
        self.element_from_rho_image(&image)
    }

    /// Bruhat-Chevalley order `u <= w`, by descent recursion: for a left
    /// descent `s` of `w`, `u <= w` iff `su <= sw` when `s` is also a left
    /// descent of `u`, and iff `u <= sw` otherwise.
    pub fn bruhat_leq(&self, u: &WeylElement, w: &WeylElement) -> bool {
        let mut u = u.clone();
        let mut w = w.clone();
        loop {
            if u.length() > w.length() {
                return false;
            }
            if u.length() == w.length() {
                return u == w;
            }
            if u.is_identity() {
                return true;
            }
            let s = w.word[0] as usize;
            if self.is_left_descent(s, &u) {
                u = self.left_mul_simple(s, &u);
            }
            w = self.left_mul_simple(s, &w);
        }
    }

    /// The unique minimal-length `w` with `x = apply(w, x⁻)`.
    pub fn minimal_orbit_element(&self, x: &Weight) -> WeylElement {
        self.dominant_rep(x, OrbitEnd::Antidominant).1
    }

    /// Every element of `W`, sorted by length then canonical word.
    ///
    /// Built once per root system by breadth-first search over the orbit of ρ.
    pub fn enumerate_group(&self) -> Result<&[WeylElement]> {
        let cap = self.limits().group_cap;
        if self.weyl_order() > cap {
            return Err(Error::GroupCap {
                order: self.weyl_order(),
                cap,
            });
        }
        Ok(self.group_cache.get_or_init(|| {
            let mut seen: HashSet<Weight> = HashSet::new();
            let mut queue = VecDeque::from([self.rho().clone()]);
            seen.insert(self.rho().clone());
            let mut out = Vec::new();
            while let Some(v) = queue.pop_front() {
                for i in 0..self.rank() {
                    let mut u = v.clone();
                    self.reflect_in_place(i, &mut u);
                    if seen.insert(u.clone()) {
                        queue.push_back(u);
                    }
                }
                out.push(self.element_from_rho_image(&v));
            }
            out.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
            out
        }))
    }

    /// Group elements for callers that have already validated the cap.
    pub(crate) fn group(&self) -> &[WeylElement] {
        self.enumerate_group()
            .expect("group size was validated when the context was built")
    }
}
