//! The group `(G, ·)`, the action `◁` on it, and the Grossman–Larson
//! product `⋆` they induce (the affine feedback group).
//!
//! ```text
//! 𝐜 · 𝐝 = [c1 ⧢ d1, c2 + c1 ⧢ d2]
//! 𝐜 ⋆ 𝐝 = (𝐜 ◁ 𝐝) · 𝐝
//! ```
//!
//! The [`PostGroup`] trait captures the abstract structure so that the axiom
//! checkers also run on the [`Opposite`] post-group.

use std::fmt;

use num_traits::One;

use crate::check::{compare, first_failure, CheckResult, Checkable};
use crate::composition::{mixed_compose, triangle_unchecked};
use crate::error::{same_degree, Error, Result};
use crate::series::{shuffle_to, Coeff, Series};
use crate::series2::{GroupElement, Series2};

/// `𝐜 · 𝐝`
pub fn dot_mul(c: &GroupElement, d: &GroupElement) -> Result<GroupElement> {
    let max = same_degree(c.max_degree(), d.max_degree())?;
    let c1 = shuffle_to(c.c1(), d.c1(), max);
    let mut c2 = c.c2().clone();
    c2.add_scaled(&shuffle_to(c.c1(), d.c2(), max), &Coeff::one());
    Ok(GroupElement::from_unchecked(Series2::assemble(c1, c2, max)))
}

/// `𝐜^{·−1} = [c1^{⧢−1}, −c1^{⧢−1} ⧢ c2]`
pub fn dot_inv(c: &GroupElement) -> GroupElement {
    let max = c.max_degree();
    let inv = c
        .c1()
        .shuffle_inverse()
        .expect("group elements have unit constant term");
    let c2 = shuffle_to(&inv, c.c2(), max).scale(&-Coeff::one());
    GroupElement::from_unchecked(Series2::assemble(inv, c2, max))
}

/// `𝐜 ◁ 𝐝` on group elements; the result is again a group element.
pub fn act(c: &GroupElement, d: &GroupElement) -> Result<GroupElement> {
    let max = same_degree(c.max_degree(), d.max_degree())?;
    Ok(GroupElement::from_unchecked(triangle_unchecked(
        c.as_series2(),
        d.as_series2(),
        max,
    )))
}

/// `𝐜 ⋆ 𝐝 = (𝐜 ◁ 𝐝) · 𝐝`. Debug builds also evaluate
/// [`star_mul_explicit`] and assert that both agree.
pub fn star_mul(c: &GroupElement, d: &GroupElement) -> Result<GroupElement> {
    let out = dot_mul(&act(c, d)?, d)?;
    debug_assert_eq!(out, star_mul_explicit(c, d)?);
    Ok(out)
}

/// `𝐜 ⋆ 𝐝` from its component form
/// `[(c1 ⋉ 𝐝) ⧢ d1, c2 ⋉ 𝐝 + (c1 ⋉ 𝐝) ⧢ d2]`.
pub fn star_mul_explicit(c: &GroupElement, d: &GroupElement) -> Result<GroupElement> {
    let max = same_degree(c.max_degree(), d.max_degree())?;
    let a = mixed_compose(c.c1(), d.as_series2())?;
    let b = mixed_compose(c.c2(), d.as_series2())?;
    let c1 = shuffle_to(&a, d.c1(), max);
    let mut c2 = b;
    c2.add_scaled(&shuffle_to(&a, d.c2(), max), &Coeff::one());
    Ok(GroupElement::from_unchecked(Series2::assemble(c1, c2, max)))
}

/// Solves `𝐱 ◁ 𝐝 = 𝐲` for `𝐱`.
///
/// `𝐱 ↦ 𝐱 ◁ 𝐝 − 𝐱` strictly raises the channel-graded degree, so the
/// iteration `𝐱 ← 𝐱 + (𝐲 − 𝐱 ◁ 𝐝)` fixes one more degree per pass and is
/// stationary after at most `D + 1` passes.
pub fn r_tri_solve(y: &GroupElement, d: &GroupElement) -> Result<GroupElement> {
    let max = same_degree(y.max_degree(), d.max_degree())?;
    let mut x = y.as_series2().clone();
    for _ in 0..max + 2 {
        let residual = y.as_series2().try_sub(&triangle_unchecked(&x, d.as_series2(), max))?;
        if residual.is_zero() {
            return Ok(GroupElement::from_unchecked(x));
        }
        x = x.try_add(&residual)?;
    }
    Err(Error::Invariant(format!(
        "right-action solver not stationary after {} passes at degree {max}",
        max + 2
    )))
}

/// `𝐜^{⋆−1} = (R◁_𝐜)^{−1}(𝐜^{·−1})`
pub fn star_inv(c: &GroupElement) -> Result<GroupElement> {
    r_tri_solve(&dot_inv(c), c)
}

/// Action of the opposite post-group, `𝐛 ◀ 𝐚 = 𝐚^{·−1} · (𝐛 ◁ 𝐚) · 𝐚`.
///
/// Together with `𝐚 • 𝐛 = 𝐛 · 𝐚` this satisfies both post-group axioms
/// and has the same Grossman–Larson product: `(𝐛 ◀ 𝐚) • 𝐚 = 𝐛 ⋆ 𝐚`.
pub fn opposite_act(b: &GroupElement, a: &GroupElement) -> Result<GroupElement> {
    Opposite(AffineFeedback).act(b, a)
}

/// `𝐚 • 𝐛 = 𝐛 · 𝐚`
pub fn opposite_mul(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    dot_mul(b, a)
}

/// Channel-1 projection, a homomorphism from `(G, ·)` onto the shuffle group.
pub fn pi1(c: &GroupElement) -> Series {
    c.c1().clone()
}

/// `c ↦ [1, c]`, the normal subgroup of the semidirect decomposition.
pub fn embed(c: &Series) -> GroupElement {
    let max = c.max_degree();
    GroupElement::from_unchecked(Series2::assemble(Series::one(max), c.clone(), max))
}

/// A group `(G, ·)` with a right action-like product `◁`.
///
/// Both axioms are checked, not assumed:
///
/// ```text
/// (i)  (x · y) ◁ d = (x ◁ d) · (y ◁ d)
/// (ii) (c ◁ d) ◁ h = c ◁ ((d ◁ h) · h)
/// ```
pub trait PostGroup {
    type Element: Clone + Checkable + fmt::Debug;

    fn product(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element>;
    fn inverse(&self, a: &Self::Element) -> Result<Self::Element>;
    fn unit_like(&self, a: &Self::Element) -> Self::Element;
    /// `a ◁ b`
    fn act(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element>;

    /// Grossman–Larson product `a ⋆ b = (a ◁ b) · b`.
    fn gl_product(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element> {
        self.product(&self.act(a, b)?, b)
    }

    fn check_associativity(&self, a: &Self::Element, b: &Self::Element, c: &Self::Element) -> CheckResult {
        let l = self.product(&self.product(a, b)?, c)?;
        let r = self.product(a, &self.product(b, c)?)?;
        Ok(compare("product associativity", &[a, b, c], &l, &r))
    }

    fn check_inverse(&self, a: &Self::Element) -> CheckResult {
        let e = self.unit_like(a);
        let inv = self.inverse(a)?;
        first_failure([
            Ok(compare("right inverse", &[a], &e, &self.product(a, &inv)?)),
            Ok(compare("left inverse", &[a], &e, &self.product(&inv, a)?)),
        ])
    }

    fn check_automorphism(&self, x: &Self::Element, y: &Self::Element, d: &Self::Element) -> CheckResult {
        let l = self.act(&self.product(x, y)?, d)?;
        let r = self.product(&self.act(x, d)?, &self.act(y, d)?)?;
        Ok(compare("action is a product automorphism", &[x, y, d], &l, &r))
    }

    fn check_weighted_associativity(
        &self,
        c: &Self::Element,
        d: &Self::Element,
        h: &Self::Element,
    ) -> CheckResult {
        let l = self.act(&self.act(c, d)?, h)?;
        let r = self.act(c, &self.product(&self.act(d, h)?, h)?)?;
        Ok(compare("weighted associativity", &[c, d, h], &l, &r))
    }

    fn check_gl_associativity(&self, a: &Self::Element, b: &Self::Element, c: &Self::Element) -> CheckResult {
        let l = self.gl_product(&self.gl_product(a, b)?, c)?;
        let r = self.gl_product(a, &self.gl_product(b, c)?)?;
        Ok(compare("Grossman-Larson associativity", &[a, b, c], &l, &r))
    }

    fn check_gl_unit(&self, a: &Self::Element) -> CheckResult {
        let e = self.unit_like(a);
        first_failure([
            Ok(compare("Grossman-Larson right unit", &[a], a, &self.gl_product(a, &e)?)),
            Ok(compare("Grossman-Larson left unit", &[a], a, &self.gl_product(&e, a)?)),
        ])
    }

    /// Both post-group axioms on one triple.
    fn check_axioms(&self, a: &Self::Element, b: &Self::Element, c: &Self::Element) -> CheckResult {
        first_failure([self.check_automorphism(a, b, c), self.check_weighted_associativity(a, b, c)])
    }
}

/// `(G, ·, ◁)` of affine feedback.
#[derive(Clone, Copy, Debug, Default)]
pub struct AffineFeedback;

impl PostGroup for AffineFeedback {
    type Element = GroupElement;

    fn product(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        dot_mul(a, b)
    }
    fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        Ok(dot_inv(a))
    }
    fn unit_like(&self, a: &GroupElement) -> GroupElement {
        GroupElement::identity(a.max_degree())
    }
    fn act(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        act(a, b)
    }
}

/// The opposite post-group of `P`: product `a • b = b · a` and action
/// `b ◀ a = a^{−1} · (b ◁ a) · a`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Opposite<P>(pub P);

impl<P: PostGroup> PostGroup for Opposite<P> {
    type Element = P::Element;

    fn product(&self, a: &P::Element, b: &P::Element) -> Result<P::Element> {
        self.0.product(b, a)
    }
    fn inverse(&self, a: &P::Element) -> Result<P::Element> {
        self.0.inverse(a)
    }
    fn unit_like(&self, a: &P::Element) -> P::Element {
        self.0.unit_like(a)
    }
    fn act(&self, b: &P::Element, a: &P::Element) -> Result<P::Element> {
        let inner = self.0.act(b, a)?;
        self.0.product(&self.0.product(&self.0.inverse(a)?, &inner)?, a)
    }
}
