//! `δ`, `ρ`, `Δ` and the antipode, computed on generators and extended
//! multiplicatively.
//!
//! On generators (`∅ε_1` read as `𝟏`, `Δ⧢(η) = Σ η′ ⊗ η″`):
//!
//! ```text
//! δ(ηε1) = Σ η′ε1 ⊗ η″ε1
//! δ(ηε2) = Σ η′ε1 ⊗ η″ε2 + ηε2 ⊗ 𝟏
//!
//! ρ(∅ε_i)   = ∅ε_i ⊗ 𝟏
//! ρ(x0ηε_i) = (θ0 ⊗ id)ρ(ηε_i) + Σ (θ1 ⊗ m)(ρ(η′ε_i) ⊗ η″ε2)
//! ρ(x1ηε_i) = Σ (θ1 ⊗ m)(ρ(η′ε_i) ⊗ η″ε1)
//!
//! Δ = (id ⊗ m)(ρ ⊗ id)δ
//! ```
//!
//! `θ_j` prepends `x_j` to the word of a left-leg generator. The left leg of
//! `ρ(g)` is always a single coordinate, possibly `∅ε1`; `ρ` is therefore
//! computed on coordinates that still allow `∅ε1`, and `∅ε1` becomes `𝟏`
//! only on output, after every `θ_j` has been applied.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;
use serde_json::{json, Value};

use super::{evaluate, pair, Generator, HElement, Monomial, Tensor3, TensorElement};
use crate::check::{compare_json, first_failure, CheckResult, Checkable, Witness};
use crate::error::{Error, Result};
use crate::postgroup::{act, dot_mul, star_inv, star_mul};
use crate::series::{coeff, Coeff};
use crate::series2::{Channel, GroupElement};
use crate::word::{unshuffle, Letter, Word};

type Coord = (Word, Channel);

/// `ρ` on one coordinate: left-leg coordinate ↦ right-leg element.
type Coaction = BTreeMap<Coord, HElement>;

fn delta_generator(g: &Generator) -> TensorElement {
    let mut t = TensorElement::zero();
    for ((a, b), m) in unshuffle(g.word()) {
        t.add_term(
            Monomial::coordinate(a, Channel::One),
            Monomial::coordinate(b, g.channel()),
            coeff(m as i64),
        );
    }
    if g.channel() == Channel::Two {
        t.add_term(Monomial::generator(g.clone()), Monomial::one(), Coeff::one());
    }
    t
}

fn extend_tensor<F>(m: &Monomial, mut f: F) -> TensorElement
where
    F: FnMut(&Generator) -> TensorElement,
{
    let mut t = TensorElement::pure(Monomial::one(), Monomial::one(), Coeff::one());
    for g in m.factors() {
        t = t.mul(&f(g));
    }
    t
}

fn extend_h<F>(m: &Monomial, mut f: F) -> HElement
where
    F: FnMut(&Generator) -> HElement,
{
    let mut h = HElement::one();
    for g in m.factors() {
        h = h.mul(&f(g));
    }
    h
}

fn linear_tensor<F>(h: &HElement, mut f: F) -> TensorElement
where
    F: FnMut(&Monomial) -> TensorElement,
{
    let mut out = TensorElement::zero();
    for (m, k) in h.terms() {
        for (a, b, c) in f(m).terms() {
            out.add_term(a.clone(), b.clone(), c * k);
        }
    }
    out
}

/// Memo tables for one computation.
#[derive(Default)]
struct Engine {
    rho: HashMap<Coord, Coaction>,
    coproduct: HashMap<Generator, TensorElement>,
    antipode: HashMap<Generator, HElement>,
}

impl Engine {
    fn rho_coord(&mut self, w: &Word, ch: Channel) -> Coaction {
        let key = (w.clone(), ch);
        if let Some(r) = self.rho.get(&key) {
            return r.clone();
        }
        let mut out = Coaction::new();
        let add = |out: &mut Coaction, left: Coord, right: HElement| {
            let e = out.entry(left).or_default();
            *e = e.add(&right);
        };
        match w.letters().first() {
            None => add(&mut out, key.clone(), HElement::one()),
            Some(&first) => {
                let eta = Word::from(&w.letters()[1..]);
                if first == Letter::X0 {
                    for ((lw, lc), right) in self.rho_coord(&eta, ch) {
                        add(&mut out, (lw.prepend(Letter::X0), lc), right);
                    }
                }
                let right_channel = match first {
                    Letter::X0 => Channel::Two,
                    Letter::X1 => Channel::One,
                };
                for ((a, b), m) in unshuffle(&eta) {
                    let factor = HElement::monomial(Monomial::coordinate(b, right_channel), coeff(m as i64));
                    for ((lw, lc), right) in self.rho_coord(&a, ch) {
                        add(&mut out, (lw.prepend(Letter::X1), lc), right.mul(&factor));
                    }
                }
            }
        }
        out.retain(|_, h| !h.is_zero());
        self.rho.insert(key, out.clone());
        out
    }

    fn rho_generator(&mut self, g: &Generator) -> TensorElement {
        let mut t = TensorElement::zero();
        for ((w, ch), right) in self.rho_coord(g.word(), g.channel()) {
            let left = Monomial::coordinate(w, ch);
            for (m, c) in right.terms() {
                t.add_term(left.clone(), m.clone(), c.clone());
            }
        }
        t
    }

    fn rho_monomial(&mut self, m: &Monomial) -> TensorElement {
        extend_tensor(m, |g| self.rho_generator(g))
    }

    fn coproduct_generator(&mut self, g: &Generator) -> TensorElement {
        if let Some(t) = self.coproduct.get(g) {
            return t.clone();
        }
        let mut out = TensorElement::zero();
        for (a, b, k) in delta_generator(g).terms() {
            for (x, y, c) in self.rho_monomial(a).terms() {
                out.add_term(x.clone(), y.mul(b), c * k);
            }
        }
        self.coproduct.insert(g.clone(), out.clone());
        out
    }

    fn coproduct_monomial(&mut self, m: &Monomial) -> TensorElement {
        extend_tensor(m, |g| self.coproduct_generator(g))
    }

    fn antipode_generator(&mut self, g: &Generator) -> HElement {
        if let Some(s) = self.antipode.get(g) {
            return s.clone();
        }
        // Σ S(a)·b over Δ(g) vanishes, and the only term with b = 𝟏 is g ⊗ 𝟏
        let mut out = HElement::zero();
        for (a, b, k) in self.coproduct_generator(g).terms() {
            if b.is_one() {
                continue;
            }
            let sa = self.antipode_monomial(a);
            out = out.sub(&sa.mul(&HElement::monomial(b.clone(), k.clone())));
        }
        self.antipode.insert(g.clone(), out.clone());
        out
    }

    fn antipode_monomial(&mut self, m: &Monomial) -> HElement {
        extend_h(m, |g| self.antipode_generator(g))
    }
}

/// Coproduct `δ`, dual to `·`.
pub fn delta(h: &HElement) -> TensorElement {
    linear_tensor(h, |m| extend_tensor(m, delta_generator))
}

/// Coaction `ρ`, dual to `◁`.
pub fn rho(h: &HElement) -> TensorElement {
    let mut e = Engine::default();
    linear_tensor(h, |m| e.rho_monomial(m))
}

/// Coproduct `Δ = (id ⊗ m)(ρ ⊗ id)δ`, dual to `⋆`.
pub fn coproduct_delta(h: &HElement) -> TensorElement {
    let mut e = Engine::default();
    linear_tensor(h, |m| e.coproduct_monomial(m))
}

/// Antipode of `(H, Δ)`.
pub fn antipode(h: &HElement) -> HElement {
    let mut e = Engine::default();
    let mut out = HElement::zero();
    for (m, k) in h.terms() {
        out = out.add(&e.antipode_monomial(m).scale(k));
    }
    out
}

/// `δ`, `ρ`, `Δ` and `S` of one generator.
#[derive(Clone, Debug)]
pub struct TableEntry {
    pub delta: TensorElement,
    pub rho: TensorElement,
    pub coproduct: TensorElement,
    pub antipode: HElement,
}

/// Every generator of degree `≤ max_degree` with its images, computed once
/// and shared read-only.
#[derive(Clone, Debug)]
pub struct HopfTable {
    max_degree: u32,
    entries: BTreeMap<Generator, TableEntry>,
}

impl HopfTable {
    pub fn new(max_degree: u32) -> Self {
        let mut e = Engine::default();
        let entries = super::generators_up_to(max_degree)
            .into_iter()
            .map(|g| {
                let entry = TableEntry {
                    delta: delta_generator(&g),
                    rho: e.rho_generator(&g),
                    coproduct: e.coproduct_generator(&g),
                    antipode: e.antipode_generator(&g),
                };
                (g, entry)
            })
            .collect();
        HopfTable { max_degree, entries }
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.entries.keys()
    }

    pub fn entry(&self, g: &Generator) -> Result<&TableEntry> {
        self.entries
            .get(g)
            .ok_or(Error::BeyondTruncation { needed: g.degree(), available: self.max_degree })
    }

    fn lookup(&self, g: &Generator) -> &TableEntry {
        self.entries
            .get(g)
            .unwrap_or_else(|| panic!("generator {g} above table degree {}", self.max_degree))
    }

    pub fn delta_of(&self, m: &Monomial) -> TensorElement {
        extend_tensor(m, |g| self.lookup(g).delta.clone())
    }

    pub fn rho_of(&self, m: &Monomial) -> TensorElement {
        extend_tensor(m, |g| self.lookup(g).rho.clone())
    }

    pub fn coproduct_of(&self, m: &Monomial) -> TensorElement {
        extend_tensor(m, |g| self.lookup(g).coproduct.clone())
    }

    pub fn antipode_of(&self, m: &Monomial) -> HElement {
        extend_h(m, |g| self.lookup(g).antipode.clone())
    }

    /// `[{"generator", "degree", "delta", "rho", "Delta", "antipode"}, …]`
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|(g, e)| {
                    json!({
                        "generator": g.token(),
                        "degree": g.degree(),
                        "delta": e.delta.to_json(),
                        "rho": e.rho.to_json(),
                        "Delta": e.coproduct.to_json(),
                        "antipode": e.antipode.to_json(),
                    })
                })
                .collect(),
        )
    }
}

fn gen_input(g: &Generator) -> Vec<Value> {
    vec![Value::String(g.token())]
}

/// Every tensor term of `δ(g)`, `ρ(g)`, `Δ(g)` has total degree `deg g`.
pub fn check_grading(table: &HopfTable, g: &Generator) -> CheckResult {
    let e = table.entry(g)?;
    let graded = |t: &TensorElement| {
        TensorElement::from_terms(
            t.terms()
                .filter(|(a, b, _)| a.degree() + b.degree() == g.degree())
                .map(|(a, b, c)| (a.clone(), b.clone(), c.clone())),
        )
    };
    first_failure([
        Ok(compare_json("δ preserves degree", gen_input(g), &graded(&e.delta), &e.delta)),
        Ok(compare_json("ρ preserves degree", gen_input(g), &graded(&e.rho), &e.rho)),
        Ok(compare_json("Δ preserves degree", gen_input(g), &graded(&e.coproduct), &e.coproduct)),
    ])
}

fn counit_left(t: &TensorElement) -> HElement {
    let mut h = HElement::zero();
    for (a, b, c) in t.terms() {
        if a.is_one() {
            h.add_term(b.clone(), c.clone());
        }
    }
    h
}

fn counit_right(t: &TensorElement) -> HElement {
    let mut h = HElement::zero();
    for (a, b, c) in t.terms() {
        if b.is_one() {
            h.add_term(a.clone(), c.clone());
        }
    }
    h
}

/// Counit laws of `δ` and `Δ`, and `(id ⊗ ε)ρ = id`.
pub fn check_counits(table: &HopfTable, g: &Generator) -> CheckResult {
    let e = table.entry(g)?;
    let id = HElement::generator(g.clone());
    first_failure([
        Ok(compare_json("δ left counit", gen_input(g), &id, &counit_left(&e.delta))),
        Ok(compare_json("δ right counit", gen_input(g), &id, &counit_right(&e.delta))),
        Ok(compare_json("Δ left counit", gen_input(g), &id, &counit_left(&e.coproduct))),
        Ok(compare_json("Δ right counit", gen_input(g), &id, &counit_right(&e.coproduct))),
        Ok(compare_json("ρ counit", gen_input(g), &id, &counit_right(&e.rho))),
    ])
}

fn apply_left<F>(t: &TensorElement, mut f: F) -> Tensor3
where
    F: FnMut(&Monomial) -> TensorElement,
{
    let mut out = Tensor3::default();
    for (a, b, k) in t.terms() {
        for (x, y, c) in f(a).terms() {
            out.add_term(x.clone(), y.clone(), b.clone(), c * k);
        }
    }
    out
}

fn apply_right<F>(t: &TensorElement, mut f: F) -> Tensor3
where
    F: FnMut(&Monomial) -> TensorElement,
{
    let mut out = Tensor3::default();
    for (a, b, k) in t.terms() {
        for (x, y, c) in f(b).terms() {
            out.add_term(a.clone(), x.clone(), y.clone(), c * k);
        }
    }
    out
}

/// `(δ ⊗ id)δ = (id ⊗ δ)δ` and the same for `Δ`.
pub fn check_coassociativity(table: &HopfTable, g: &Generator) -> CheckResult {
    let e = table.entry(g)?;
    let dl = apply_left(&e.delta, |m| table.delta_of(m));
    let dr = apply_right(&e.delta, |m| table.delta_of(m));
    let cl = apply_left(&e.coproduct, |m| table.coproduct_of(m));
    let cr = apply_right(&e.coproduct, |m| table.coproduct_of(m));
    first_failure([
        Ok(compare_json("δ coassociativity", gen_input(g), &dl, &dr)),
        Ok(compare_json("Δ coassociativity", gen_input(g), &cl, &cr)),
    ])
}

/// `(ρ ⊗ id)ρ = (id ⊗ Δ)ρ`, dual to `(𝐜 ◁ 𝐝) ◁ 𝐡 = 𝐜 ◁ (𝐝 ⋆ 𝐡)`.
pub fn check_comodule(table: &HopfTable, g: &Generator) -> CheckResult {
    let e = table.entry(g)?;
    let l = apply_left(&e.rho, |m| table.rho_of(m));
    let r = apply_right(&e.rho, |m| table.coproduct_of(m));
    Ok(compare_json("comodule coassociativity", gen_input(g), &l, &r))
}

/// `m(S ⊗ id)Δ = m(id ⊗ S)Δ = ε𝟏` on a monomial.
pub fn check_antipode(table: &HopfTable, m: &Monomial) -> CheckResult {
    let t = table.coproduct_of(m);
    let mut left = HElement::zero();
    let mut right = HElement::zero();
    for (a, b, k) in t.terms() {
        let bb = HElement::monomial(b.clone(), k.clone());
        let aa = HElement::monomial(a.clone(), k.clone());
        left = left.add(&table.antipode_of(a).mul(&bb));
        right = right.add(&aa.mul(&table.antipode_of(b)));
    }
    let unit = if m.is_one() { HElement::one() } else { HElement::zero() };
    let inputs = vec![json!(m.tokens())];
    first_failure([
        Ok(compare_json("antipode left convolution", inputs.clone(), &unit, &left)),
        Ok(compare_json("antipode right convolution", inputs, &unit, &right)),
    ])
}

fn coeff_witness(check: &str, g: &Generator, c: &GroupElement, d: &GroupElement, e: Coeff, a: Coeff) -> Witness {
    Witness {
        check: check.to_string(),
        inputs: vec![Value::String(g.token()), c.to_json(), d.to_json()],
        expected: Value::String(e.to_string()),
        actual: Value::String(a.to_string()),
        first_difference: Some(g.to_string()),
    }
}

/// For every generator `g` in the table:
/// `⟨δ(g), 𝐜⊗𝐝⟩ = g(𝐜·𝐝)`, `⟨ρ(g), 𝐜⊗𝐝⟩ = g(𝐜◁𝐝)`, `⟨Δ(g), 𝐜⊗𝐝⟩ = g(𝐜⋆𝐝)`.
pub fn check_dualities(table: &HopfTable, c: &GroupElement, d: &GroupElement) -> CheckResult {
    let products = [
        ("δ dualises the group product", dot_mul(c, d)?),
        ("ρ dualises the action", act(c, d)?),
        ("Δ dualises the Grossman-Larson product", star_mul(c, d)?),
    ];
    for (g, e) in &table.entries {
        let h = HElement::generator(g.clone());
        for ((name, target), t) in products.iter().zip([&e.delta, &e.rho, &e.coproduct]) {
            let expected = evaluate(&h, target.as_series2())?;
            let actual = pair(t, c.as_series2(), d.as_series2())?;
            if expected != actual {
                return Ok(Some(coeff_witness(name, g, c, d, expected, actual)));
            }
        }
    }
    Ok(None)
}

/// `S(g)(𝐜) = g(𝐜^{⋆−1})` for every generator in the table.
pub fn check_antipode_duality(table: &HopfTable, c: &GroupElement) -> CheckResult {
    let inv = star_inv(c)?;
    for (g, e) in &table.entries {
        let expected = evaluate(&HElement::generator(g.clone()), inv.as_series2())?;
        let actual = evaluate(&e.antipode, c.as_series2())?;
        if expected != actual {
            return Ok(Some(coeff_witness("antipode dualises the ⋆-inverse", g, c, c, expected, actual)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ratio;

    fn g(s: &str) -> Generator {
        s.parse().unwrap()
    }

    fn m(s: &[&str]) -> Monomial {
        Monomial::from_generators(s.iter().map(|t| g(t)).collect())
    }

    fn t(terms: &[(&[&str], &[&str], i64)]) -> TensorElement {
        TensorElement::from_terms(terms.iter().map(|(a, b, c)| (m(a), m(b), coeff(*c))))
    }

    fn h(s: &str) -> HElement {
        HElement::generator(g(s))
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&h(":2")), t(&[(&[], &[":2"], 1), (&[":2"], &[], 1)]));
        assert_eq!(delta(&h("1:1")), t(&[(&["1:1"], &[], 1), (&[], &["1:1"], 1)]));
        assert_eq!(
            delta(&h("1:2")),
            t(&[(&["1:1"], &[":2"], 1), (&[], &["1:2"], 1), (&["1:2"], &[], 1)])
        );
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&h(":2")), t(&[(&[":2"], &[], 1)]));
        assert_eq!(rho(&h("1:1")), t(&[(&["1:1"], &[], 1)]));
        assert_eq!(rho(&h("0:2")), t(&[(&["0:2"], &[], 1), (&["1:2"], &[":2"], 1)]));
        assert_eq!(rho(&HElement::one()), t(&[(&[], &[], 1)]));
    }

    #[test]
    fn coproduct_examples() {
        assert_eq!(coproduct_delta(&h(":2")), t(&[(&[], &[":2"], 1), (&[":2"], &[], 1)]));
        assert_eq!(coproduct_delta(&h("1:1")), t(&[(&["1:1"], &[], 1), (&[], &["1:1"], 1)]));
        assert_eq!(
            coproduct_delta(&h("0:2")),
            t(&[
                (&["0:2"], &[], 1),
                (&[], &["0:2"], 1),
                (&["0:1"], &[":2"], 1),
                (&["1:2"], &[":2"], 1),
                (&["1:1"], &[":2", ":2"], 1),
            ])
        );
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode(&HElement::one()), HElement::one());
        assert_eq!(antipode(&h(":2")), h(":2").scale(&coeff(-1)));
        let expect = h("1:2").scale(&coeff(-1)).add(&h("1:1").mul(&h(":2")));
        assert_eq!(antipode(&h("1:2")), expect);
        let half = h("1:1").scale(&ratio(1, 2));
        assert_eq!(antipode(&half), h("1:1").scale(&ratio(-1, 2)));
    }

    #[test]
    fn maps_are_multiplicative() {
        let a = h("1:2");
        let b = h("0:1");
        assert_eq!(delta(&a.mul(&b)), delta(&a).mul(&delta(&b)));
        assert_eq!(rho(&a.mul(&b)), rho(&a).mul(&rho(&b)));
        assert_eq!(coproduct_delta(&a.mul(&b)), coproduct_delta(&a).mul(&coproduct_delta(&b)));
        assert_eq!(antipode(&a.mul(&b)), antipode(&a).mul(&antipode(&b)));
    }

    #[test]
    fn table_checks_at_low_degree() {
        let table = HopfTable::new(4);
        for gen in table.generators() {
            assert_eq!(check_grading(&table, gen).unwrap(), None);
            assert_eq!(check_counits(&table, gen).unwrap(), None);
            assert_eq!(check_coassociativity(&table, gen).unwrap(), None);
            assert_eq!(check_comodule(&table, gen).unwrap(), None);
            assert_eq!(check_antipode(&table, &Monomial::generator(gen.clone())).unwrap(), None);
        }
    }

    #[test]
    fn table_json_shape() {
        let v = HopfTable::new(1).to_json();
        let first = &v[0];
        assert_eq!(first["generator"], "1:1");
        assert_eq!(first["degree"], 1);
        assert!(first["Delta"].is_array());
    }
}
