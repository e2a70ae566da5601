//! Truncated noncommutative series with exact rational coefficients, and the
//! shuffle algebra on them.
//!
//! A [`Series`] stores only non-zero coefficients of words whose weighted
//! degree does not exceed its truncation degree `D`. Since every product in
//! this crate is graded (the weighted degree of an output word is the sum of
//! the degrees of what went in), truncating is a quotient and all identities
//! can be checked with exact equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{same_degree, Error, Result};
use crate::word::{shuffle_words, Letter, Word};

/// Exact coefficient field.
pub type Coeff = BigRational;

pub fn coeff(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_coeff(s: &str) -> Result<Coeff> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// A series truncated at weighted degree `max_degree`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    terms: BTreeMap<Word, Coeff>,
    max_degree: u32,
}

impl Series {
    pub fn zero(max_degree: u32) -> Self {
        Series { terms: BTreeMap::new(), max_degree }
    }

    /// `1∅`, the shuffle unit.
    pub fn one(max_degree: u32) -> Self {
        Self::constant(Coeff::one(), max_degree)
    }

    pub fn constant(c: Coeff, max_degree: u32) -> Self {
        Self::monomial(Word::empty(), c, max_degree)
    }

    pub fn monomial(w: Word, c: Coeff, max_degree: u32) -> Self {
        let mut s = Self::zero(max_degree);
        s.add_term(w, c);
        s
    }

    /// Builds a series from arbitrary terms: zero coefficients and words past
    /// the truncation degree are dropped, repeated words are summed.
    pub fn from_terms<I>(max_degree: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Word, Coeff)>,
    {
        let mut s = Self::zero(max_degree);
        for (w, c) in terms {
            s.add_term(w, c);
        }
        s
    }

    /// Shorthand for tests and docs: `Series::from_ints(3, &[("", 1), ("01", 3)])`.
    pub fn from_ints(max_degree: u32, terms: &[(&str, i64)]) -> Result<Self> {
        let mut s = Self::zero(max_degree);
        for (w, c) in terms {
            s.add_term(w.parse()?, coeff(*c));
        }
        Ok(s)
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `w`; zero when absent.
    pub fn coefficient_at(&self, w: &Word) -> Coeff {
        self.terms.get(w).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn constant_term(&self) -> Coeff {
        self.coefficient_at(&Word::empty())
    }

    pub fn is_proper(&self) -> bool {
        !self.terms.contains_key(&Word::empty())
    }

    /// The series minus its constant term.
    pub fn proper_part(&self) -> Series {
        let mut s = self.clone();
        s.terms.remove(&Word::empty());
        s
    }

    /// Smallest weighted degree among stored words.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Word::wdeg).min()
    }

    /// Drops every word of weighted degree above `degree`.
    pub fn truncate_to(&self, degree: u32) -> Result<Series> {
        if degree > self.max_degree {
            return Err(Error::BeyondTruncation { needed: degree, available: self.max_degree });
        }
        Ok(self.restricted(degree))
    }

    /// Same terms, relabelled to truncation degree `degree` (dropping words
    /// above it). Unlike [`Series::truncate_to`] this may raise the label.
    pub(crate) fn restricted(&self, degree: u32) -> Series {
        Series {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.wdeg() <= degree)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
            max_degree: degree,
        }
    }

    /// Keeps words with `wdeg(w) ≤ bound`, leaving the label unchanged.
    pub(crate) fn filtered(mut self, bound: i64) -> Series {
        self.terms.retain(|w, _| i64::from(w.wdeg()) <= bound);
        self
    }

    pub(crate) fn add_term(&mut self, w: Word, c: Coeff) {
        if c.is_zero() || w.wdeg() > self.max_degree {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &Series, k: &Coeff) {
        if k.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c * k);
        }
    }

    pub fn try_add(&self, other: &Series) -> Result<Series> {
        same_degree(self.max_degree, other.max_degree)?;
        let mut s = self.clone();
        s.add_scaled(other, &Coeff::one());
        Ok(s)
    }

    pub fn try_sub(&self, other: &Series) -> Result<Series> {
        same_degree(self.max_degree, other.max_degree)?;
        let mut s = self.clone();
        s.add_scaled(other, &-Coeff::one());
        Ok(s)
    }

    pub fn scale(&self, k: &Coeff) -> Series {
        if k.is_zero() {
            return Series::zero(self.max_degree);
        }
        Series {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
            max_degree: self.max_degree,
        }
    }

    /// `l·self`, dropping words that leave the truncation.
    pub(crate) fn prepend(&self, l: Letter) -> Series {
        let mut out = Series::zero(self.max_degree);
        for (w, c) in &self.terms {
            if w.wdeg() + l.weight() <= self.max_degree {
                out.terms.insert(w.prepend(l), c.clone());
            }
        }
        out
    }

    /// Shuffle product.
    pub fn shuffle(&self, other: &Series) -> Result<Series> {
        let d = same_degree(self.max_degree, other.max_degree)?;
        Ok(shuffle_to(self, other, d))
    }

    /// Inverse in the shuffle algebra: `c(∅)⁻¹·Σₖ (−c′/c(∅))^{⧢k}` where `c′`
    /// is the proper part. The sum is finite under truncation because every
    /// power raises the minimal degree.
    pub fn shuffle_inverse(&self) -> Result<Series> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = c0.recip();
        let step = self.proper_part().scale(&-inv0.clone());
        let d = self.max_degree;
        let mut power = Series::one(d);
        let mut acc = Series::one(d);
        loop {
            power = shuffle_to(&power, &step, d);
            if power.is_zero() {
                break;
            }
            acc.add_scaled(&power, &Coeff::one());
        }
        Ok(acc.scale(&inv0))
    }

    /// First word (canonical order) whose coefficients differ.
    pub fn first_difference(&self, other: &Series) -> Option<Word> {
        let mut keys: Vec<&Word> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.into_iter()
            .find(|w| self.terms.get(*w) != other.terms.get(*w))
            .cloned()
    }

    /// Coefficients as binary floating point, for numerical evaluation.
    pub fn to_f64_terms(&self) -> Vec<(Word, f64)> {
        self.terms.iter().map(|(w, c)| (w.clone(), coeff_to_f64(c))).collect()
    }

    /// Largest absolute coefficient, zero for the zero series.
    pub fn max_abs_coeff(&self) -> Coeff {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Coeff::zero)
    }
}

pub fn coeff_to_f64(c: &Coeff) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

/// Shuffle product truncated at `max`, ignoring operand labels.
pub(crate) fn shuffle_to(a: &Series, b: &Series, max: u32) -> Series {
    let mut out = Series::zero(max);
    for (u, cu) in &a.terms {
        let du = u.wdeg();
        if du > max {
            continue;
        }
        for (v, cv) in &b.terms {
            if du + v.wdeg() > max {
                continue;
            }
            let k = cu * cv;
            if u.is_empty() {
                out.add_term(v.clone(), k);
            } else if v.is_empty() {
                out.add_term(u.clone(), k);
            } else {
                for (w, m) in shuffle_words(u.letters(), v.letters()) {
                    out.add_term(w, &k * coeff(m as i64));
                }
            }
        }
    }
    out
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{}", w.pretty())?;
            } else {
                write!(f, "({c})·{}", w.pretty())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [D={}]", self.max_degree)
    }
}

/// Panics on mismatched truncation degrees; use [`Series::try_add`] to get an
/// error instead.
impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.try_add(rhs).expect("series addition")
    }
}

/// Panics on mismatched truncation degrees; see [`Series::try_sub`].
impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.try_sub(rhs).expect("series subtraction")
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(&-Coeff::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(d: u32, t: &[(&str, i64)]) -> Series {
        Series::from_ints(d, t).unwrap()
    }

    #[test]
    fn linear_ops() {
        let a = s(4, &[("", 1), ("01", 3)]);
        assert_eq!(a.coefficient_at(&"01".parse().unwrap()), coeff(3));
        assert_eq!(a.coefficient_at(&"10".parse().unwrap()), coeff(0));
        let t = s(4, &[("", 1), ("00", 1)]).truncate_to(3).unwrap();
        assert_eq!(t, s(3, &[("", 1)]));
        let x1 = s(2, &[("1", 1)]);
        let z = &x1 + &-&x1;
        assert!(z.is_zero());
        assert_eq!(z.len(), 0);
    }

    #[test]
    fn truncate_cannot_raise_degree() {
        assert!(matches!(
            Series::one(2).truncate_to(3),
            Err(Error::BeyondTruncation { .. })
        ));
    }

    #[test]
    fn construction_drops_words_past_truncation() {
        let a = s(2, &[("00", 5), ("1", 1)]);
        assert_eq!(a, s(2, &[("1", 1)]));
    }

    #[test]
    fn shuffle_examples() {
        let x0 = s(3, &[("0", 1)]);
        let x1 = s(3, &[("1", 1)]);
        assert_eq!(x0.shuffle(&x1).unwrap(), s(3, &[("01", 1), ("10", 1)]));
        assert_eq!(x1.shuffle(&x1).unwrap(), s(3, &[("11", 2)]));
        let x0x1 = s(4, &[("01", 1)]);
        let x1 = s(4, &[("1", 1)]);
        assert_eq!(x1.shuffle(&x0x1).unwrap(), s(4, &[("101", 1), ("011", 2)]));
    }

    #[test]
    fn shuffle_rejects_mixed_degrees() {
        assert_eq!(
            Series::one(2).shuffle(&Series::one(3)),
            Err(Error::DegreeMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn shuffle_inverse_examples() {
        assert_eq!(Series::one(4).shuffle_inverse().unwrap(), Series::one(4));
        let two = Series::constant(coeff(2), 4);
        assert_eq!(two.shuffle_inverse().unwrap(), Series::constant(ratio(1, 2), 4));
        let c = s(3, &[("", 1), ("1", 1)]);
        let inv = c.shuffle_inverse().unwrap();
        assert_eq!(inv, s(3, &[("", 1), ("1", -1), ("11", 2), ("111", -6)]));
        // oracle: multiplying back gives the unit
        assert_eq!(c.shuffle(&inv).unwrap(), Series::one(3));
    }

    #[test]
    fn shuffle_inverse_requires_constant_term() {
        assert_eq!(s(3, &[("1", 1)]).shuffle_inverse(), Err(Error::NotInvertible));
        assert_eq!(Series::zero(3).shuffle_inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_coeff("3").unwrap(), coeff(3));
        assert_eq!(parse_coeff("-6/4").unwrap(), ratio(-3, 2));
        assert!(parse_coeff("1/0").is_err());
        assert!(parse_coeff("abc").is_err());
    }

    #[test]
    fn first_difference_reports_smallest_word() {
        let a = s(4, &[("1", 1), ("01", 2)]);
        let b = s(4, &[("1", 1), ("01", 3), ("0", 1)]);
        assert_eq!(a.first_difference(&b), Some("0".parse().unwrap()));
        assert_eq!(a.first_difference(&a), None);
    }
}
