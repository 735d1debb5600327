//! The truncation sets Λ_m ⊆ Y and Γ_m ⊆ (W_p·0)⁺, and the correspondence
//! between Λ_m ∩ pY and Γ_m.

use rayon::prelude::*;
use serde::Serialize;

use crate::affine::{AffineContext, PRegime};
use crate::error::{Error, Result};
use crate::weight::{BoxIter, Weight, WeightSet};
use crate::weyl::WeylElement;

/// Λ_m and Γ_m for one `(p, m)`.
#[derive(Debug, Clone)]
pub struct TruncationPair {
    pub ctx: AffineContext,
    pub m: i64,
    pub lambda: WeightSet,
    pub gamma: WeightSet,
}

impl TruncationPair {
    pub fn build(ctx: &AffineContext, m: i64) -> Result<Self> {
        Ok(TruncationPair {
            ctx: ctx.clone(),
            m,
            lambda: lambda_set(ctx, m)?,
            gamma: gamma_set(ctx, m)?,
        })
    }

    /// Λ_m ∩ pY.
    pub fn lambda_py(&self) -> WeightSet {
        p_points(&self.ctx, &self.lambda)
    }
}

fn check_m(m: i64) -> Result<()> {
    if m < 1 {
        return Err(Error::Precondition(format!(
            "m = {m} must be a positive integer"
        )));
    }
    Ok(())
}

fn bound(ctx: &AffineContext, m: i64) -> i64 {
    crate::weight::checked(m.checked_mul(ctx.p()))
}

/// Whether `y ∈ Λ_m`: `y ∈ Y` and `|<y, α^∨>| <= mp` for every positive root.
pub fn in_lambda(ctx: &AffineContext, m: i64, y: &Weight) -> bool {
    let b = bound(ctx, m);
    ctx.rs().in_root_lattice(y) && ctx.rs().pairings(y).all(|v| v.abs() <= b)
}

/// Whether `y ∈ Γ_m`: dominant, in `W_p·0`, with every pairing `<= mp`.
pub fn in_gamma(ctx: &AffineContext, m: i64, y: &Weight) -> bool {
    let b = bound(ctx, m);
    y.is_dominant() && ctx.rs().pairings(y).all(|v| v <= b) && ctx.in_principal_orbit(y)
}

fn scan_box(
    ctx: &AffineContext,
    lo: Vec<i64>,
    hi: Vec<i64>,
    keep: impl Fn(&Weight) -> bool + Sync,
) -> Result<WeightSet> {
    ctx.rs().limits().check_box(BoxIter::volume(&lo, &hi))?;
    // Split on the first coordinate so the scan parallelises.
    let rank = lo.len();
    let rows: Vec<Vec<Weight>> = (lo[0]..=hi[0])
        .into_par_iter()
        .map(|c0| {
            let mut l = lo.clone();
            let mut h = hi.clone();
            l[0] = c0;
            h[0] = c0;
            BoxIter::new(l, h).filter(|x| keep(x)).collect()
        })
        .collect();
    debug_assert!(rank > 0);
    Ok(rows.into_iter().flatten().collect())
}

/// Λ_m, scanned over the box `|c_i| <= mp` of simple-coroot pairings.
pub fn lambda_set(ctx: &AffineContext, m: i64) -> Result<WeightSet> {
    check_m(m)?;
    let b = bound(ctx, m);
    let n = ctx.rs().rank();
    scan_box(ctx, vec![-b; n], vec![b; n], |y| in_lambda(ctx, m, y))
}

/// Γ_m, scanned directly over the dominant box `0 <= c_i <= mp`.
pub fn gamma_set(ctx: &AffineContext, m: i64) -> Result<WeightSet> {
    check_m(m)?;
    let b = bound(ctx, m);
    let n = ctx.rs().rank();
    scan_box(ctx, vec![0; n], vec![b; n], |y| in_gamma(ctx, m, y))
}

/// Γ computed as `Λ ∩ X⁺ ∩ W_p·0`.
pub fn gamma_from_lambda(ctx: &AffineContext, lambda: &WeightSet) -> WeightSet {
    lambda.filter(|y| y.is_dominant() && ctx.in_principal_orbit(y))
}

/// The members of `set` lying in pY.
pub fn p_points(ctx: &AffineContext, set: &WeightSet) -> WeightSet {
    set.filter(|y| ctx.in_p_root_lattice(y))
}

fn require_stable(ctx: &AffineContext) -> Result<()> {
    if ctx.regime() != PRegime::Stable {
        let h = ctx.rs().coxeter_number();
        return Err(Error::Precondition(format!(
            "the correspondence needs p > 2h - 2 = {}, got p = {}",
            2 * h - 2,
            ctx.p()
        )));
    }
    Ok(())
}

/// Λ_m ∩ pY → Γ_m: the unique dominant weight in the dot orbit `W·ν`.
pub fn bijection_forward(ctx: &AffineContext, m: i64, nu: &Weight) -> Result<Weight> {
    check_m(m)?;
    require_stable(ctx)?;
    ctx.rs().check_rank(nu)?;
    if !(in_lambda(ctx, m, nu) && ctx.in_p_root_lattice(nu)) {
        return Err(Error::Precondition(format!("{nu} is not in Λ_{m} ∩ pY")));
    }
    forward_unchecked(ctx, nu)
}

pub(crate) fn forward_unchecked(ctx: &AffineContext, nu: &Weight) -> Result<Weight> {
    Ok(ctx.dominant_dot_rep(nu)?.1)
}

/// Result of the backward scan, with the data needed to audit it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BackwardWitness {
    /// The unique `ν = w·γ` in pY.
    pub nu: Weight,
    /// The `w` found by the scan.
    pub w: WeylElement,
    /// `p <w⁻¹ y, α₀^∨>` where `ν = p y`; bounded by `mp + 2h - 2`.
    pub alpha0_value: i64,
}

/// Γ_m → Λ_m ∩ pY: the unique `ν ∈ W·γ` of the form `py`.
pub fn bijection_backward(ctx: &AffineContext, m: i64, gamma: &Weight) -> Result<Weight> {
    check_m(m)?;
    require_stable(ctx)?;
    ctx.rs().check_rank(gamma)?;
    if !in_gamma(ctx, m, gamma) {
        return Err(Error::Precondition(format!("{gamma} is not in Γ_{m}")));
    }
    let witness = backward_unchecked(ctx, gamma)?;
    check_alpha0_bound(ctx, m, &witness)?;
    Ok(witness.nu)
}

/// Scans `W` for the `w` with `w·γ ∈ pY`; more or fewer than one is an
/// invariant violation.
pub(crate) fn backward_unchecked(ctx: &AffineContext, gamma: &Weight) -> Result<BackwardWitness> {
    let rs = ctx.rs();
    let mut found: Option<(WeylElement, Weight, Weight)> = None;
    for w in rs.group() {
        let nu = ctx.dot(w, gamma);
        if let Some(y) = ctx.p_root_lattice_quotient(&nu) {
            if let Some((prev, _, _)) = &found {
                return Err(Error::InvariantViolation(format!(
                    "both {prev} and {w} send {gamma} into pY"
                )));
            }
            found = Some((w.clone(), nu, y));
        }
    }
    let (w, nu, y) = found
        .ok_or_else(|| Error::InvariantViolation(format!("no w in W sends {gamma} into pY")))?;
    let winv = rs.inverse(&w);
    let alpha0_value = ctx.p() * rs.pairing_alpha0(&rs.apply(&winv, &y));
    Ok(BackwardWitness {
        nu,
        w,
        alpha0_value,
    })
}

/// `p <w y, α₀^∨> <= mp + 2h - 2 < (m + 1) p`.
pub(crate) fn check_alpha0_bound(
    ctx: &AffineContext,
    m: i64,
    witness: &BackwardWitness,
) -> Result<()> {
    let p = ctx.p();
    let h = ctx.rs().coxeter_number();
    let v = witness.alpha0_value;
    let upper = m * p + 2 * h - 2;
    if v > upper || upper >= (m + 1) * p {
        return Err(Error::InvariantViolation(format!(
            "alpha0 bound fails for {}: {v} <= {upper} < {}",
            witness.nu,
            (m + 1) * p
        )));
    }
    Ok(())
}
