//! Composition `∘`, mixed composition `⋉` and the componentwise action `◁`.
//!
//! All three are linear in the left argument and defined word by word by
//! recursion on the first letter. Images of suffixes are memoised for the
//! duration of one call, since the recursion revisits them.

use std::collections::HashMap;

use num_traits::One;

use crate::error::{same_degree, Result};
use crate::series::{shuffle_to, Coeff, Series};
use crate::series2::Series2;
use crate::word::{Letter, Word};

/// Word images `η ↦ η ⋉ 𝐝` for one fixed `𝐝`:
///
/// ```text
/// ∅ ⋉ 𝐝    = ∅
/// x0η ⋉ 𝐝  = x0(η ⋉ 𝐝)
/// x1η ⋉ 𝐝  = x1(d1 ⧢ (η ⋉ 𝐝)) + x0(d2 ⧢ (η ⋉ 𝐝))
/// ```
struct MixedImages<'a> {
    d1: &'a Series,
    d2: &'a Series,
    max: u32,
    memo: HashMap<Word, Series>,
}

impl<'a> MixedImages<'a> {
    fn new(d: &'a Series2, max: u32) -> Self {
        MixedImages { d1: d.c1(), d2: d.c2(), max, memo: HashMap::new() }
    }

    fn image(&mut self, w: &[Letter]) -> Series {
        if w.is_empty() {
            return Series::one(self.max);
        }
        let key = Word::from(w);
        if let Some(s) = self.memo.get(&key) {
            return s.clone();
        }
        let rest = self.image(&w[1..]);
        let out = match w[0] {
            Letter::X0 => rest.prepend(Letter::X0),
            Letter::X1 => {
                let mut out = Series::zero(self.max);
                if self.max >= 1 {
                    let a = shuffle_to(self.d1, &rest, self.max - 1).restricted(self.max);
                    out.add_scaled(&a.prepend(Letter::X1), &Coeff::one());
                }
                if self.max >= 2 {
                    let b = shuffle_to(self.d2, &rest, self.max - 2).restricted(self.max);
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
            if w.wdeg() <= self.max {
                let img = self.image(w.letters());
                out.add_scaled(&img, k);
            }
        }
        out
    }
}

/// Word images `η ↦ η ∘ d`:
///
/// ```text
/// ∅ ∘ d    = ∅
/// x0η ∘ d  = x0(η ∘ d)
/// x1η ∘ d  = x0(d ⧢ (η ∘ d))
/// ```
struct CompositionImages<'a> {
    d: &'a Series,
    max: u32,
    memo: HashMap<Word, Series>,
}

impl<'a> CompositionImages<'a> {
    fn image(&mut self, w: &[Letter]) -> Series {
        if w.is_empty() {
            return Series::one(self.max);
        }
        let key = Word::from(w);
        if let Some(s) = self.memo.get(&key) {
            return s.clone();
        }
        let rest = self.image(&w[1..]);
        let out = match w[0] {
            Letter::X0 => rest.prepend(Letter::X0),
            Letter::X1 if self.max >= 2 => {
                shuffle_to(self.d, &rest, self.max - 2).restricted(self.max).prepend(Letter::X0)
            }
            Letter::X1 => Series::zero(self.max),
        };
        self.memo.insert(key, out.clone());
        out
    }
}

/// Composition product `c ∘ d`. The right argument is unrestricted.
pub fn compose(c: &Series, d: &Series) -> Result<Series> {
    let max = same_degree(c.max_degree(), d.max_degree())?;
    let mut images = CompositionImages { d, max, memo: HashMap::new() };
    let mut out = Series::zero(max);
    for (w, k) in c.terms() {
        let img = images.image(w.letters());
        out.add_scaled(&img, k);
    }
    Ok(out)
}

/// Mixed composition product `c ⋉ 𝐝`.
pub fn mixed_compose(c: &Series, d: &Series2) -> Result<Series> {
    let max = same_degree(c.max_degree(), d.max_degree())?;
    Ok(MixedImages::new(d, max).apply(c))
}

/// `𝐜 ◁ 𝐝 = [c1 ⋉ 𝐝, c2 ⋉ 𝐝]`.
pub fn triangle(c: &Series2, d: &Series2) -> Result<Series2> {
    let max = same_degree(c.max_degree(), d.max_degree())?;
    Ok(triangle_unchecked(c, d, max))
}

pub(crate) fn triangle_unchecked(c: &Series2, d: &Series2, max: u32) -> Series2 {
    let mut images = MixedImages::new(d, max);
    let c1 = images.apply(c.c1());
    let c2 = images.apply(c.c2());
    Series2::assemble(c1, c2, max)
}
