//! Holomorphic induction from the representation ring to the level-h fusion ring.
//!
//! `I_h(V(λ))` reduces `λ + ρ` at κ = h + c: a wall point maps to zero, an
//! interior point to `(−1)^ℓ [reduced − ρ]`.

use std::collections::BTreeMap;

use crate::affine_weyl::AffineContext;
use crate::error::Result;
use crate::finite_reps::{tensor_decompose, VirtualCharacter};
use crate::fusion::{self, FusionElement};
use crate::rootdata::{RootSystem, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionResult {
    pub value: FusionElement,
    /// Reduction length used for each input label that did not hit a wall.
    pub source_degrees: BTreeMap<Weight, u64>,
}

impl InductionResult {
    pub fn degree(&self, w: &Weight) -> Option<u64> {
        self.source_degrees.get(w).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomomorphismCheck {
    pub lhs: FusionElement,
    pub rhs: FusionElement,
    pub equal: bool,
}

pub fn induce(rs: &RootSystem, level: u32, lambda: &Weight) -> Result<InductionResult> {
    rs.check_dominant(lambda)?;
    let ctx = AffineContext::new(rs, level);
    let red = ctx.alcove_reduce(&lambda.shifted(1).0)?;
    let mut value = FusionElement::zero(level);
    let mut source_degrees = BTreeMap::new();
    if red.is_interior() {
        value.add(Weight(red.reduced.iter().map(|c| c - 1).collect()), red.sign as i64);
        source_degrees.insert(lambda.clone(), red.length);
    }
    Ok(InductionResult { value, source_degrees })
}

pub fn induce_virtual(rs: &RootSystem, level: u32, v: &VirtualCharacter) -> Result<FusionElement> {
    let mut out = FusionElement::zero(level);
    for (w, c) in v.iter() {
        out.add_scaled(&induce(rs, level, w)?.value, c);
    }
    Ok(out)
}

/// `I_h(λ ⊗ μ)` against `I_h(λ) ⋆ I_h(μ)`.
pub fn homomorphism_check(rs: &RootSystem, level: u32, lambda: &Weight, mu: &Weight) -> Result<HomomorphismCheck> {
    let lhs = induce_virtual(rs, level, &tensor_decompose(rs, lambda, mu)?)?;
    let a = induce(rs, level, lambda)?.value;
    let b = induce(rs, level, mu)?.value;
    let rhs = fusion::multiply(rs, level, &a, &b)?;
    let equal = lhs == rhs;
    Ok(HomomorphismCheck { lhs, rhs, equal })
}
