//! Two-channel series `c = c₁e₁ + c₂e₂` and the two refinements used
//! throughout: group elements (`c₁(∅) = 1`) and Lie elements (`c₁(∅) = 0`).
//!
//! Channel 2 is graded one above channel 1: a word `η` in channel 2 has
//! degree `wdeg(η) + 1`. At truncation degree `D`, channel 2 therefore keeps
//! only words with `wdeg ≤ D − 1`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{same_degree, Error, Result};
use crate::series::{Coeff, Series};
use crate::word::Word;

/// Basis direction `e₁` (multiplicative) or `e₂` (additive).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Channel {
    One,
    Two,
}

impl Channel {
    /// Degree offset of the channel in the grading.
    pub fn offset(self) -> u32 {
        match self {
            Channel::One => 0,
            Channel::Two => 1,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Channel::One => 1,
            Channel::Two => 2,
        }
    }

    pub fn from_index(i: u8) -> Result<Channel> {
        match i {
            1 => Ok(Channel::One),
            2 => Ok(Channel::Two),
            _ => Err(Error::Parse(format!("channel must be 1 or 2, got {i}"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series2 {
    c1: Series,
    c2: Series,
}

impl Series2 {
    /// Pairs two series of equal truncation degree `D`; channel-2 words past
    /// `D − 1` are projected away.
    pub fn new(c1: Series, c2: Series) -> Result<Self> {
        let d = same_degree(c1.max_degree(), c2.max_degree())?;
        Ok(Self::assemble(c1, c2, d))
    }

    pub(crate) fn assemble(c1: Series, c2: Series, d: u32) -> Self {
        debug_assert_eq!(c1.max_degree(), d);
        debug_assert_eq!(c2.max_degree(), d);
        Series2 { c1, c2: c2.filtered(i64::from(d) - 1) }
    }

    pub fn zero(max_degree: u32) -> Self {
        Series2 { c1: Series::zero(max_degree), c2: Series::zero(max_degree) }
    }

    /// `𝐞 = [1∅, 0]`
    pub fn identity(max_degree: u32) -> Self {
        Series2 { c1: Series::one(max_degree), c2: Series::zero(max_degree) }
    }

    /// Single basis term `c·ηeᵢ`.
    pub fn basis(w: Word, ch: Channel, c: Coeff, max_degree: u32) -> Self {
        let s = Series::monomial(w, c, max_degree);
        match ch {
            Channel::One => Self::assemble(s, Series::zero(max_degree), max_degree),
            Channel::Two => Self::assemble(Series::zero(max_degree), s, max_degree),
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.c1.max_degree()
    }

    pub fn c1(&self) -> &Series {
        &self.c1
    }

    pub fn c2(&self) -> &Series {
        &self.c2
    }

    pub fn channel(&self, ch: Channel) -> &Series {
        match ch {
            Channel::One => &self.c1,
            Channel::Two => &self.c2,
        }
    }

    pub fn into_parts(self) -> (Series, Series) {
        (self.c1, self.c2)
    }

    pub fn coefficient_at(&self, ch: Channel, w: &Word) -> Coeff {
        self.channel(ch).coefficient_at(w)
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.c2.is_zero()
    }

    pub fn try_add(&self, other: &Series2) -> Result<Series2> {
        Ok(Series2 { c1: self.c1.try_add(&other.c1)?, c2: self.c2.try_add(&other.c2)? })
    }

    pub fn try_sub(&self, other: &Series2) -> Result<Series2> {
        Ok(Series2 { c1: self.c1.try_sub(&other.c1)?, c2: self.c2.try_sub(&other.c2)? })
    }

    pub fn scale(&self, k: &Coeff) -> Series2 {
        Series2 { c1: self.c1.scale(k), c2: self.c2.scale(k) }
    }

    /// Keeps every term of channel-graded degree at most `degree`.
    pub fn truncate_to(&self, degree: u32) -> Result<Series2> {
        Ok(Self::assemble(self.c1.truncate_to(degree)?, self.c2.truncate_to(degree)?, degree))
    }

    /// Terms with their channel-graded degree.
    pub fn graded_terms(&self) -> impl Iterator<Item = (Channel, &Word, &Coeff, u32)> {
        self.c1
            .terms()
            .map(|(w, c)| (Channel::One, w, c, w.wdeg()))
            .chain(self.c2.terms().map(|(w, c)| (Channel::Two, w, c, w.wdeg() + 1)))
    }

    /// The common degree of all terms, if the element is homogeneous and
    /// non-zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.graded_terms().map(|(_, _, _, d)| d);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// First differing `(channel, word)` in canonical order.
    pub fn first_difference(&self, other: &Series2) -> Option<(Channel, Word)> {
        if let Some(w) = self.c1.first_difference(&other.c1) {
            return Some((Channel::One, w));
        }
        self.c2.first_difference(&other.c2).map(|w| (Channel::Two, w))
    }
}

impl fmt::Display for Series2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.c1, self.c2)
    }
}

impl fmt::Debug for Series2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [D={}]", self.max_degree())
    }
}

/// Element of `G = {𝐜 : c₁(∅) = 1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement(Series2);

impl GroupElement {
    pub fn new(c1: Series, c2: Series) -> Result<Self> {
        Self::try_from(Series2::new(c1, c2)?)
    }

    pub fn identity(max_degree: u32) -> Self {
        GroupElement(Series2::identity(max_degree))
    }

    pub(crate) fn from_unchecked(s: Series2) -> Self {
        debug_assert!(s.c1().constant_term().is_one());
        GroupElement(s)
    }

    pub fn as_series2(&self) -> &Series2 {
        &self.0
    }

    pub fn into_series2(self) -> Series2 {
        self.0
    }

    pub fn c1(&self) -> &Series {
        self.0.c1()
    }

    pub fn c2(&self) -> &Series {
        self.0.c2()
    }

    pub fn max_degree(&self) -> u32 {
        self.0.max_degree()
    }

    pub fn is_identity(&self) -> bool {
        self.0 == Series2::identity(self.max_degree())
    }
}

impl TryFrom<Series2> for GroupElement {
    type Error = Error;
    fn try_from(s: Series2) -> Result<Self> {
        if !s.c1().constant_term().is_one() {
            return Err(Error::Constraint(format!(
                "group element needs c1(∅) = 1, got {}",
                s.c1().constant_term()
            )));
        }
        Ok(GroupElement(s))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Element of the Lie algebra: channel 1 proper, channel 2 unrestricted.
///
/// `∅e₁` is not part of the algebra (it is quotiented out), so it cannot be
/// represented here.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieElement(Series2);

impl LieElement {
    pub fn new(c1: Series, c2: Series) -> Result<Self> {
        Self::try_from(Series2::new(c1, c2)?)
    }

    pub fn zero(max_degree: u32) -> Self {
        LieElement(Series2::zero(max_degree))
    }

    /// Basis element `ηeᵢ`; rejects `∅e₁`.
    pub fn basis(w: Word, ch: Channel, max_degree: u32) -> Result<Self> {
        Self::try_from(Series2::basis(w, ch, Coeff::one(), max_degree))
    }

    pub(crate) fn from_unchecked(s: Series2) -> Self {
        debug_assert!(s.c1().is_proper());
        LieElement(s)
    }

    pub fn as_series2(&self) -> &Series2 {
        &self.0
    }

    pub fn into_series2(self) -> Series2 {
        self.0
    }

    pub fn c1(&self) -> &Series {
        self.0.c1()
    }

    pub fn c2(&self) -> &Series {
        self.0.c2()
    }

    pub fn max_degree(&self) -> u32 {
        self.0.max_degree()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn try_add(&self, other: &LieElement) -> Result<LieElement> {
        Ok(LieElement(self.0.try_add(&other.0)?))
    }

    pub fn try_sub(&self, other: &LieElement) -> Result<LieElement> {
        Ok(LieElement(self.0.try_sub(&other.0)?))
    }

    pub fn scale(&self, k: &Coeff) -> LieElement {
        LieElement(self.0.scale(k))
    }

    /// `𝐞 + self`, the first-order group element in direction `self`.
    pub fn exp_linear(&self) -> GroupElement {
        let d = self.max_degree();
        let mut c1 = self.c1().clone();
        c1.add_term(Word::empty(), Coeff::one());
        GroupElement(Series2::assemble(c1, self.c2().clone(), d))
    }
}

impl TryFrom<Series2> for LieElement {
    type Error = Error;
    fn try_from(s: Series2) -> Result<Self> {
        let c0 = s.c1().constant_term();
        if !c0.is_zero() {
            return Err(Error::Constraint(format!(
                "Lie element needs c1(∅) = 0 (∅e1 is quotiented out), got {c0}"
            )));
        }
        Ok(LieElement(s))
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(d: u32, t: &[(&str, i64)]) -> Series {
        Series::from_ints(d, t).unwrap()
    }

    #[test]
    fn channel_two_is_shifted() {
        let x = Series2::new(s(3, &[("01", 1)]), s(3, &[("01", 1), ("1", 2)])).unwrap();
        // x0x1 has wdeg 3: fine in channel 1, degree 4 in channel 2
        assert_eq!(x.c2(), &s(3, &[("1", 2)]));
        assert_eq!(x.c1(), &s(3, &[("01", 1)]));
    }

    #[test]
    fn degree_zero_has_empty_channel_two() {
        let x = Series2::new(Series::one(0), Series::one(0)).unwrap();
        assert!(x.c2().is_zero());
    }

    #[test]
    fn mixed_degrees_rejected() {
        assert!(matches!(
            Series2::new(Series::one(2), Series::one(3)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn refinements_check_constant_term() {
        assert!(GroupElement::new(s(3, &[("", 1)]), s(3, &[("1", 1)])).is_ok());
        assert!(GroupElement::new(s(3, &[("", 2)]), Series::zero(3)).is_err());
        assert!(LieElement::new(s(3, &[("1", 1)]), s(3, &[("", 1)])).is_ok());
        assert!(LieElement::new(s(3, &[("", 1)]), Series::zero(3)).is_err());
        assert!(LieElement::basis(Word::empty(), Channel::One, 3).is_err());
        assert!(LieElement::basis(Word::empty(), Channel::Two, 3).is_ok());
    }

    #[test]
    fn homogeneous_degree_uses_channel_grading() {
        let x = Series2::new(s(5, &[("01", 1)]), s(5, &[("0", 3)])).unwrap();
        assert_eq!(x.homogeneous_degree(), Some(3));
        let y = Series2::new(s(5, &[("01", 1)]), s(5, &[("01", 1)])).unwrap();
        assert_eq!(y.homogeneous_degree(), None);
        assert_eq!(Series2::zero(3).homogeneous_degree(), None);
    }
}
