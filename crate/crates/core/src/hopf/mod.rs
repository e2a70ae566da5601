//! The commutative Hopf algebra `H` of coordinate functions on `G`.
//!
//! `H` is the polynomial algebra on generators `ηε_i` (read: "coefficient of
//! `η` in channel `i`") modulo `∅ε_1 = 𝟏`. Three maps make it a pair of
//! cointeracting bialgebras:
//!
//! - `δ` dualises `·`: `⟨δ(g), 𝐜 ⊗ 𝐝⟩ = g(𝐜 · 𝐝)`
//! - `ρ` dualises `◁`: `⟨ρ(g), 𝐜 ⊗ 𝐝⟩ = g(𝐜 ◁ 𝐝)`
//! - `Δ = (id ⊗ m)(ρ ⊗ id)δ` dualises `⋆`
//!
//! Generators are graded by `deg(ηε_i) = wdeg(η) + (i − 1)`, and all three
//! maps preserve total degree.

mod coproducts;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::check::Checkable;
use crate::error::{Error, Result};
use crate::series::Coeff;
use crate::series2::{Channel, Series2};
use crate::word::{words_of_degree, Word};

pub use coproducts::{
    antipode, check_antipode, check_antipode_duality, check_coassociativity, check_comodule,
    check_counits, check_dualities, check_grading, coproduct_delta, delta, rho, HopfTable, TableEntry,
};

/// Generator `ηε_i`; `∅ε_1` is the unit and not a generator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    word: Word,
    channel: Channel,
}

impl Generator {
    pub fn new(word: Word, channel: Channel) -> Result<Self> {
        if word.is_empty() && channel == Channel::One {
            return Err(Error::Constraint("∅ε1 is the unit of H, not a generator".into()));
        }
        Ok(Generator { word, channel })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn channel(&self) -> Channel {
        self.channel
    }

    /// `wdeg(η)`, plus one in channel 2.
    pub fn degree(&self) -> u32 {
        self.word.wdeg() + self.channel.offset()
    }

    /// Token `"<word>:<channel>"`, e.g. `"01:2"`, or `":2"` for `∅ε2`.
    pub fn token(&self) -> String {
        format!("{}:{}", self.word, self.channel.index())
    }
}

pub fn gen_degree(g: &Generator) -> u32 {
    g.degree()
}

/// Canonical order: by degree, then channel, then word.
impl Ord for Generator {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.channel, &self.word).cmp(&(other.degree(), other.channel, &other.word))
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}ε{}", self.word.pretty(), self.channel.index())
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"<word>:<channel>"` with the word in either spelling:
/// `"01:2"`, `"x0x1:2"`, `":2"`, `"∅:2"`.
impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (w, ch) = s
            .rsplit_once(':')
            .ok_or_else(|| Error::Parse(format!("generator {s:?} must look like \"<word>:<1|2>\"")))?;
        let ch: u8 = ch
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("generator {s:?}: channel must be 1 or 2")))?;
        Generator::new(w.parse()?, Channel::from_index(ch)?)
    }
}

/// All generators of degree `≤ max`, in canonical order.
pub fn generators_up_to(max: u32) -> Vec<Generator> {
    let mut out = Vec::new();
    for d in 1..=max {
        for w in words_of_degree(d) {
            out.push(Generator { word: w, channel: Channel::One });
        }
        for w in words_of_degree(d - 1) {
            out.push(Generator { word: w, channel: Channel::Two });
        }
    }
    out.sort();
    out
}

/// Commutative monomial: a sorted multiset of generators, `𝟏` when empty.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<Generator>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(g: Generator) -> Self {
        Monomial(vec![g])
    }

    /// `ηε_i` as a monomial, mapping `∅ε_1` to `𝟏`.
    pub(crate) fn coordinate(word: Word, channel: Channel) -> Self {
        if word.is_empty() && channel == Channel::One {
            Monomial::one()
        } else {
            Monomial(vec![Generator { word, channel }])
        }
    }

    pub fn from_generators(mut gs: Vec<Generator>) -> Self {
        gs.sort();
        Monomial(gs)
    }

    pub fn factors(&self) -> &[Generator] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(Generator::degree).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        v.sort();
        Monomial(v)
    }

    pub fn tokens(&self) -> Vec<String> {
        self.0.iter().map(Generator::token).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "𝟏");
        }
        // repeated factors print as powers
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            if !first {
                write!(f, "▴")?;
            }
            first = false;
            if j - i > 1 {
                write!(f, "({})^{}", self.0[i], j - i)?;
            } else {
                write!(f, "{}", self.0[i])?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Coeff>, k: K, c: Coeff) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
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

fn fmt_terms<K, F>(f: &mut fmt::Formatter<'_>, terms: &BTreeMap<K, Coeff>, key: F) -> fmt::Result
where
    F: Fn(&K) -> String,
{
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (k, c)) in terms.iter().enumerate() {
        if i > 0 {
            write!(f, " + ")?;
        }
        if c.is_one() {
            write!(f, "{}", key(k))?;
        } else {
            write!(f, "({c})·{}", key(k))?;
        }
    }
    Ok(())
}

/// Element of `H`: a finite linear combination of monomials.
///
/// Every map on `H` preserves degree, so elements need no truncation label.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct HElement {
    terms: BTreeMap<Monomial, Coeff>,
}

impl HElement {
    pub fn zero() -> Self {
        HElement::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one(), Coeff::one())
    }

    pub fn generator(g: Generator) -> Self {
        Self::monomial(Monomial::generator(g), Coeff::one())
    }

    pub fn monomial(m: Monomial, c: Coeff) -> Self {
        let mut h = HElement::zero();
        add_into(&mut h.terms, m, c);
        h
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient_of(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Coeff) {
        add_into(&mut self.terms, m, c);
    }

    pub fn add(&self, other: &HElement) -> HElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HElement) -> HElement {
        self.add(&other.scale(&-Coeff::one()))
    }

    pub fn scale(&self, k: &Coeff) -> HElement {
        let mut out = HElement::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &HElement) -> HElement {
        let mut out = HElement::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    /// Counit: the coefficient of `𝟏`.
    pub fn counit(&self) -> Coeff {
        self.coefficient_of(&Monomial::one())
    }

    /// `[[tokens, "coeff"], …]`
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| json!([m.tokens(), c.to_string()]))
                .collect(),
        )
    }
}

impl fmt::Display for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.terms, |m| m.to_string())
    }
}

impl fmt::Debug for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of `H ⊗ H`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<(Monomial, Monomial), Coeff>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    /// `a ⊗ b`
    pub fn pure(a: Monomial, b: Monomial, c: Coeff) -> Self {
        let mut t = TensorElement::zero();
        t.add_term(a, b, c);
        t
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Monomial, Coeff)>,
    {
        let mut t = TensorElement::zero();
        for (a, b, c) in terms {
            t.add_term(a, b, c);
        }
        t
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Monomial, &Coeff)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, a: Monomial, b: Monomial, c: Coeff) {
        add_into(&mut self.terms, (a, b), c);
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    /// Product in the algebra `H ⊗ H`.
    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((a, b), c) in &self.terms {
            for ((x, y), k) in &other.terms {
                out.add_term(a.mul(x), b.mul(y), c * k);
            }
        }
        out
    }

    /// `[[left tokens, right tokens, "coeff"], …]`
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|((a, b), c)| json!([a.tokens(), b.tokens(), c.to_string()]))
                .collect(),
        )
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.terms, |(a, b)| format!("{a} ⊗ {b}"))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of `H ⊗ H ⊗ H`, the target of iterated coproducts.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Tensor3 {
    terms: BTreeMap<(Monomial, Monomial, Monomial), Coeff>,
}

impl Tensor3 {
    pub(crate) fn add_term(&mut self, a: Monomial, b: Monomial, c: Monomial, k: Coeff) {
        add_into(&mut self.terms, (a, b, c), k);
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|((a, b, c), k)| json!([a.tokens(), b.tokens(), c.tokens(), k.to_string()]))
                .collect(),
        )
    }
}

impl fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.terms, |(a, b, c)| format!("{a} ⊗ {b} ⊗ {c}"))
    }
}

/// Value of the coordinate `g` at `𝐜`: `ηε_i(𝐜) = c_i(η)`.
fn coordinate(g: &Generator, c: &Series2) -> Result<Coeff> {
    if g.degree() > c.max_degree() {
        return Err(Error::BeyondTruncation { needed: g.degree(), available: c.max_degree() });
    }
    Ok(c.coefficient_at(g.channel, &g.word))
}

/// Character evaluation `h(𝐜)`: generators read coefficients, products
/// multiply, and `𝟏(𝐜) = 1`.
pub fn evaluate(h: &HElement, c: &Series2) -> Result<Coeff> {
    let mut total = Coeff::zero();
    for (m, k) in &h.terms {
        let mut v = k.clone();
        for g in m.factors() {
            v *= coordinate(g, c)?;
            if v.is_zero() {
                break;
            }
        }
        total += v;
    }
    Ok(total)
}

/// `⟨t, 𝐜 ⊗ 𝐝⟩ = Σ k · a(𝐜) · b(𝐝)`
pub fn pair(t: &TensorElement, c: &Series2, d: &Series2) -> Result<Coeff> {
    let mut total = Coeff::zero();
    for ((a, b), k) in &t.terms {
        let left = evaluate(&HElement::monomial(a.clone(), Coeff::one()), c)?;
        if left.is_zero() {
            continue;
        }
        total += k * left * evaluate(&HElement::monomial(b.clone(), Coeff::one()), d)?;
    }
    Ok(total)
}

impl Checkable for HElement {
    fn to_json(&self) -> Value {
        HElement::to_json(self)
    }
    fn first_difference_label(&self, other: &Self) -> Option<String> {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .filter(|m| self.terms.get(*m) != other.terms.get(*m))
            .min()
            .map(|m| m.to_string())
    }
}

impl Checkable for TensorElement {
    fn to_json(&self) -> Value {
        TensorElement::to_json(self)
    }
    fn first_difference_label(&self, other: &Self) -> Option<String> {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .filter(|k| self.terms.get(*k) != other.terms.get(*k))
            .min()
            .map(|(a, b)| format!("{a} ⊗ {b}"))
    }
}

impl Checkable for Tensor3 {
    fn to_json(&self) -> Value {
        Tensor3::to_json(self)
    }
    fn first_difference_label(&self, other: &Self) -> Option<String> {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .filter(|k| self.terms.get(*k) != other.terms.get(*k))
            .min()
            .map(|(a, b, c)| format!("{a} ⊗ {b} ⊗ {c}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{coeff, Series};

    fn g(s: &str) -> Generator {
        s.parse().unwrap()
    }

    #[test]
    fn degrees() {
        assert_eq!(g("01:1").degree(), 3);
        assert_eq!(g(":2").degree(), 1);
        assert_eq!(g("00:2").degree(), 5);
        assert_eq!(gen_degree(&g("x1:2")), 2);
    }

    #[test]
    fn generator_parsing() {
        assert_eq!(g("x1:2"), g("1:2"));
        assert_eq!(g("∅:2"), g(":2"));
        assert!(":1".parse::<Generator>().is_err());
        assert!("1:3".parse::<Generator>().is_err());
        assert!("1".parse::<Generator>().is_err());
        assert_eq!(g("01:2").token(), "01:2");
    }

    #[test]
    fn generator_counts() {
        assert_eq!(generators_up_to(5).len(), 31);
        assert_eq!(generators_up_to(1), vec![g("1:1"), g(":2")]);
    }

    #[test]
    fn monomials_are_canonical() {
        let a = Monomial::from_generators(vec![g("1:2"), g(":2"), g("1:2")]);
        let b = Monomial::generator(g("1:2")).mul(&Monomial::from_generators(vec![g(":2"), g("1:2")]));
        assert_eq!(a, b);
        assert_eq!(a.degree(), 5);
        assert_eq!(a.to_string(), "∅ε2▴(x1ε2)^2");
        assert!(Monomial::coordinate(Word::empty(), Channel::One).is_one());
    }

    #[test]
    fn evaluation_examples() {
        let c = Series2::new(Series::one(3), Series::from_ints(3, &[("1", 1)]).unwrap()).unwrap();
        assert_eq!(evaluate(&HElement::one(), &c).unwrap(), coeff(1));
        assert_eq!(evaluate(&HElement::generator(g("1:2")), &c).unwrap(), coeff(1));
        let c = Series2::new(Series::one(3), Series::constant(coeff(3), 3)).unwrap();
        let sq = HElement::monomial(Monomial::from_generators(vec![g(":2"), g(":2")]), coeff(1));
        assert_eq!(evaluate(&sq, &c).unwrap(), coeff(9));
        assert!(matches!(
            evaluate(&HElement::generator(g("01:2")), &c),
            Err(Error::BeyondTruncation { needed: 4, available: 3 })
        ));
    }

    #[test]
    fn counit_is_evaluation_at_the_identity() {
        let e = Series2::identity(5);
        let h = HElement::one()
            .scale(&coeff(4))
            .add(&HElement::generator(g("1:1")))
            .add(&HElement::generator(g(":2")).scale(&coeff(-2)));
        assert_eq!(h.counit(), coeff(4));
        assert_eq!(evaluate(&h, &e).unwrap(), h.counit());
    }
}
