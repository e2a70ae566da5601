//! Seeded random inputs for property runs.
//!
//! Coefficients are uniform in `{−3, …, 3}`. Every case gets its own
//! generator derived from `(master seed, case index)`, so cases can run in
//! any order or in parallel without changing what they draw.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chenfliess::Signal;
use crate::series::{coeff, Series};
use crate::series2::{Channel, GroupElement, LieElement, Series2};
use crate::word::{words_of_degree, words_up_to, Word};

/// Generator for case `index` under `seed`.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    // splitmix64 finaliser decorrelates neighbouring indices
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    ChaCha8Rng::seed_from_u64(z)
}

fn small<R: Rng>(rng: &mut R) -> i64 {
    rng.gen_range(-3..=3)
}

/// Dense series over all words with `min ≤ wdeg ≤ support`, labelled `max`.
pub fn series_in<R: Rng>(rng: &mut R, max: u32, min: u32, support: u32) -> Series {
    Series::from_terms(
        max,
        words_up_to(support.min(max))
            .into_iter()
            .filter(|w| w.wdeg() >= min)
            .map(|w| (w, coeff(small(rng)))),
    )
}

/// Dense random series truncated at `max`.
pub fn series<R: Rng>(rng: &mut R, max: u32) -> Series {
    series_in(rng, max, 0, max)
}

/// Random proper series.
pub fn proper_series<R: Rng>(rng: &mut R, max: u32) -> Series {
    series_in(rng, max, 1, max)
}

pub fn series2<R: Rng>(rng: &mut R, max: u32) -> Series2 {
    let c1 = series(rng, max);
    let c2 = series(rng, max);
    Series2::new(c1, c2).expect("same degree")
}

/// `[1 + proper, anything]`, a group element by construction.
pub fn group_element<R: Rng>(rng: &mut R, max: u32) -> GroupElement {
    let mut c1 = proper_series(rng, max);
    c1 = &c1 + &Series::one(max);
    let c2 = series(rng, max);
    GroupElement::new(c1, c2).expect("unit constant term")
}

/// Group element whose words all have `wdeg ≤ support`.
pub fn group_element_in<R: Rng>(rng: &mut R, max: u32, support: u32) -> GroupElement {
    let c1 = &series_in(rng, max, 1, support) + &Series::one(max);
    let c2 = series_in(rng, max, 0, support);
    GroupElement::new(c1, c2).expect("unit constant term")
}

pub fn lie_element<R: Rng>(rng: &mut R, max: u32) -> LieElement {
    let c1 = proper_series(rng, max);
    let c2 = series(rng, max);
    LieElement::new(c1, c2).expect("proper channel 1")
}

/// Random Lie element homogeneous of channel-graded degree `deg` (`≥ 1`).
pub fn homogeneous_lie<R: Rng>(rng: &mut R, max: u32, deg: u32) -> LieElement {
    let mut out = Series2::zero(max);
    for w in words_of_degree(deg) {
        out = out.try_add(&Series2::basis(w, Channel::One, coeff(small(rng)), max)).expect("same degree");
    }
    for w in words_of_degree(deg - 1) {
        out = out.try_add(&Series2::basis(w, Channel::Two, coeff(small(rng)), max)).expect("same degree");
    }
    LieElement::try_from(out).expect("degree ≥ 1 excludes ∅e1")
}

/// Three random degrees `≥ 1` summing to at most `max`.
pub fn degree_triple<R: Rng>(rng: &mut R, max: u32) -> [u32; 3] {
    assert!(max >= 3, "need room for three positive degrees");
    let a = rng.gen_range(1..=max - 2);
    let b = rng.gen_range(1..=max - 1 - a);
    let c = rng.gen_range(1..=max - a - b);
    [a, b, c]
}

/// Piecewise-constant input with values uniform in `[−1, 1]`.
pub fn signal<R: Rng>(rng: &mut R, h: f64, horizon: f64) -> Signal {
    let n = (horizon / h).round().max(1.0) as usize;
    Signal::new(h, (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()).expect("valid step and values")
}

/// A random word with `wdeg ≤ max`.
pub fn word<R: Rng>(rng: &mut R, max: u32) -> Word {
    let all = words_up_to(max);
    all[rng.gen_range(0..all.len())].clone()
}
