//! Exact algebra of SISO affine feedback for Chen–Fliess series: the
//! shuffle algebra and its compositions, the feedback post-group and its
//! Grossman–Larson product, the post-Lie algebra, the cointeracting
//! coordinate Hopf algebra, and numerical evaluation to check them against.

pub mod check;
pub mod chenfliess;
pub mod composition;
pub mod error;
pub mod hopf;
pub mod json;
pub mod postgroup;
pub mod postlie;
pub mod random;
pub mod series;
pub mod series2;
pub mod verify;
pub mod word;

// mdbook cannot test snippets against a crate, so the chapters are
// compiled here as doctests, one module per chapter
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/words-and-series.md")]
    mod words_and_series {}
    #[doc = include_str!("../../../book/src/composition.md")]
    mod composition {}
    #[doc = include_str!("../../../book/src/post-group.md")]
    mod post_group {}
    #[doc = include_str!("../../../book/src/post-lie.md")]
    mod post_lie {}
    #[doc = include_str!("../../../book/src/hopf.md")]
    mod hopf {}
    #[doc = include_str!("../../../book/src/chen-fliess.md")]
    mod chen_fliess {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
