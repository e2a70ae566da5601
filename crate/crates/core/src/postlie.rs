//! The Lie algebra `𝔤` of `(G, ·)` with its post-Lie product `↷`, the
//! derived bracket `⟦−,−⟧` and the linearised Grossman–Larson product `•`.
//!
//! On basis elements:
//!
//! ```text
//! [ηe_i, ζe_j] = (η ⧢ ζ)e_j δ_{i,1} − (η ⧢ ζ)e_i δ_{j,1}
//!
//! ∅e_i   ↷ ζe_j = 0
//! x0ηe_i ↷ ζe_j = x0(ηe_i ↷ ζe_j)
//! x1ηe_i ↷ ζe_1 = x1(ηe_i ↷ ζe_1) + x1(η ⧢ ζ)e_i
//! x1ηe_i ↷ ζe_2 = x1(ηe_i ↷ ζe_2) + x0(η ⧢ ζ)e_i
//!
//! ⟦u, v⟧ = u ↷ v − v ↷ u + [u, v]
//! ηe_i • ζe_j = ηe_i ↷ ζe_j + (η ⧢ ζ)e_j δ_{i,1}
//! ```
//!
//! `∅e_1` is not an element of `𝔤`, so [`LieElement`] cannot hold it.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::check::{compare, first_failure, CheckResult};
use crate::composition::triangle_unchecked;
use crate::error::{same_degree, Result};
use crate::series::{coeff, shuffle_to, Coeff, Series};
use crate::series2::{LieElement, Series2};
use crate::word::{Letter, Word};

fn lie(c1: Series, c2: Series, max: u32) -> LieElement {
    LieElement::from_unchecked(Series2::assemble(c1, c2, max))
}

fn add(a: &LieElement, b: &LieElement) -> LieElement {
    a.try_add(b).expect("same degree")
}

fn sub(a: &LieElement, b: &LieElement) -> LieElement {
    a.try_sub(b).expect("same degree")
}

/// `[u, v] = [0, u1 ⧢ v2 − v1 ⧢ u2]`
pub fn lie_bracket(u: &LieElement, v: &LieElement) -> Result<LieElement> {
    let max = same_degree(u.max_degree(), v.max_degree())?;
    let mut c2 = shuffle_to(u.c1(), v.c2(), max);
    c2.add_scaled(&shuffle_to(v.c1(), u.c2(), max), &-Coeff::one());
    Ok(lie(Series::zero(max), c2, max))
}

/// Word images `η ↦ η ↷ 𝐯`, the same in both channels.
struct ActionImages<'a> {
    v1: &'a Series,
    v2: &'a Series,
    max: u32,
    memo: HashMap<Word, Series>,
}

impl ActionImages<'_> {
    fn image(&mut self, w: &[Letter]) -> Series {
        if w.is_empty() {
            return Series::zero(self.max);
        }
        let key = Word::from(w);
        if let Some(s) = self.memo.get(&key) {
            return s.clone();
        }
        let rest = self.image(&w[1..]);
        let out = match w[0] {
            Letter::X0 => rest.prepend(Letter::X0),
            Letter::X1 => {
                let eta = Series::monomial(Word::from(&w[1..]), Coeff::one(), self.max);
                let mut out = rest.prepend(Letter::X1);
                if self.max >= 1 {
                    let a = shuffle_to(&eta, self.v1, self.max - 1).restricted(self.max);
                    out.add_scaled(&a.prepend(Letter::X1), &Coeff::one());
                }
                if self.max >= 2 {
                    let b = shuffle_to(&eta, self.v2, self.max - 2).restricted(self.max);
                    out.add_scaled(&b.prepend(Letter::X0), &Coeff::one());
                }
                out
            }
        };
        self.memo.insert(key, out.clone());
        out
    }

    fn apply(&mut self, c: &Series) -> Series {
        let mut out = Series::zero(self.max);
        for (w, k) in c.terms() {
            let img = self.image(w.letters());
            out.add_scaled(&img, k);
        }
        out
    }
}

/// Post-Lie product `u ↷ v`.
pub fn post_lie_act(u: &LieElement, v: &LieElement) -> Result<LieElement> {
    let max = same_degree(u.max_degree(), v.max_degree())?;
    let mut images = ActionImages { v1: v.c1(), v2: v.c2(), max, memo: HashMap::new() };
    let c1 = images.apply(u.c1());
    let c2 = images.apply(u.c2());
    Ok(lie(c1, c2, max))
}

/// `⟦u, v⟧ = u ↷ v − v ↷ u + [u, v]`
pub fn derived_bracket(u: &LieElement, v: &LieElement) -> Result<LieElement> {
    let uv = post_lie_act(u, v)?;
    let vu = post_lie_act(v, u)?;
    Ok(add(&sub(&uv, &vu), &lie_bracket(u, v)?))
}

/// `u • v = u ↷ v + [u1 ⧢ v1, u1 ⧢ v2]`
pub fn bullet(u: &LieElement, v: &LieElement) -> Result<LieElement> {
    let max = same_degree(u.max_degree(), v.max_degree())?;
    let extra = lie(shuffle_to(u.c1(), v.c1(), max), shuffle_to(u.c1(), v.c2(), max), max);
    Ok(add(&post_lie_act(u, v)?, &extra))
}

/// `u ↷ v` read off from the action itself: `(𝐞 + u) ◁ (𝐞 + s·v)` is a
/// polynomial in `s` of degree at most `D`, so sampling it at
/// `s = 0, 1, …, D + 1` and interpolating recovers its `s¹` coefficient
/// exactly. The `s`-independent part `𝐞 + u` has no `s¹` coefficient.
pub fn linearize_action(u: &LieElement, v: &LieElement) -> Result<LieElement> {
    let max = same_degree(u.max_degree(), v.max_degree())?;
    let base = u.exp_linear();
    let nodes: Vec<i64> = (0..=i64::from(max) + 1).collect();
    let mut out = Series2::zero(max);
    for (k, &sk) in nodes.iter().enumerate() {
        let weight = linear_coefficient_weight(&nodes, k);
        if weight.is_zero() {
            continue;
        }
        let d = v.scale(&coeff(sk)).exp_linear();
        let sample = triangle_unchecked(base.as_series2(), d.as_series2(), max);
        out = out.try_add(&sample.scale(&weight))?;
    }
    LieElement::try_from(out)
}

/// `s¹` coefficient of the Lagrange basis polynomial for node `k`.
fn linear_coefficient_weight(nodes: &[i64], k: usize) -> Coeff {
    // numerator Π_{j≠k} (s − s_j) as ascending coefficients
    let mut poly = vec![Coeff::one()];
    let mut denom = Coeff::one();
    for (j, &sj) in nodes.iter().enumerate() {
        if j == k {
            continue;
        }
        let mut next = vec![Coeff::zero(); poly.len() + 1];
        for (i, p) in poly.iter().enumerate() {
            next[i + 1] += p;
            next[i] -= p * coeff(sj);
        }
        poly = next;
        denom *= coeff(nodes[k] - sj);
    }
    &poly[1] / &denom
}

/// `(x ↷ y) ↷ z − x ↷ (y ↷ z)`
pub fn associator(x: &LieElement, y: &LieElement, z: &LieElement) -> Result<LieElement> {
    Ok(sub(
        &post_lie_act(&post_lie_act(x, y)?, z)?,
        &post_lie_act(x, &post_lie_act(y, z)?)?,
    ))
}

/// Both post-Lie axioms:
///
/// ```text
/// [x, y] ↷ z = [x ↷ z, y] + [x, y ↷ z]
/// z ↷ [x, y] = a(z, x, y) − a(z, y, x)
/// ```
pub fn check_post_lie(x: &LieElement, y: &LieElement, z: &LieElement) -> CheckResult {
    let l1 = post_lie_act(&lie_bracket(x, y)?, z)?;
    let r1 = add(
        &lie_bracket(&post_lie_act(x, z)?, y)?,
        &lie_bracket(x, &post_lie_act(y, z)?)?,
    );
    let l2 = post_lie_act(z, &lie_bracket(x, y)?)?;
    let r2 = sub(&associator(z, x, y)?, &associator(z, y, x)?);
    first_failure([
        Ok(compare("post-Lie: action derives the bracket", &[x, y, z], &l1, &r1)),
        Ok(compare("post-Lie: bracket acts as associator commutator", &[x, y, z], &l2, &r2)),
    ])
}

fn check_jacobi_with(
    name: &str,
    bracket: fn(&LieElement, &LieElement) -> Result<LieElement>,
    x: &LieElement,
    y: &LieElement,
    z: &LieElement,
) -> CheckResult {
    let a = bracket(x, &bracket(y, z)?)?;
    let b = bracket(y, &bracket(z, x)?)?;
    let c = bracket(z, &bracket(x, y)?)?;
    let total = add(&add(&a, &b), &c);
    Ok(compare(name, &[x, y, z], &LieElement::zero(x.max_degree()), &total))
}

/// Jacobi identity for `[−,−]`.
pub fn check_jacobi(x: &LieElement, y: &LieElement, z: &LieElement) -> CheckResult {
    check_jacobi_with("Jacobi for the bracket", lie_bracket, x, y, z)
}

/// Jacobi identity for `⟦−,−⟧`.
pub fn check_jacobi_derived(x: &LieElement, y: &LieElement, z: &LieElement) -> CheckResult {
    check_jacobi_with("Jacobi for the derived bracket", derived_bracket, x, y, z)
}

/// Right pre-Lie identity for `•`:
/// `(x • y) • z − x • (y • z) = (x • z) • y − x • (z • y)`.
pub fn check_pre_lie(x: &LieElement, y: &LieElement, z: &LieElement) -> CheckResult {
    let l = sub(&bullet(&bullet(x, y)?, z)?, &bullet(x, &bullet(y, z)?)?);
    let r = sub(&bullet(&bullet(x, z)?, y)?, &bullet(x, &bullet(z, y)?)?);
    Ok(compare("pre-Lie identity for the linearised product", &[x, y, z], &l, &r))
}

/// `x • y − y • x = ⟦x, y⟧`
pub fn check_antisymmetrization(x: &LieElement, y: &LieElement) -> CheckResult {
    let l = sub(&bullet(x, y)?, &bullet(y, x)?);
    Ok(compare("antisymmetrised bullet is the derived bracket", &[x, y], &derived_bracket(x, y)?, &l))
}

/// `u ↷ v` agrees with the interpolated differential of `◁`.
pub fn check_linearization(u: &LieElement, v: &LieElement) -> CheckResult {
    Ok(compare(
        "post-Lie product is the differential of the action",
        &[u, v],
        &linearize_action(u, v)?,
        &post_lie_act(u, v)?,
    ))
}
