//! Letters and words over the two-letter alphabet `{x0, x1}`.
//!
//! Words are ordered length-lexicographically with `x0 < x1`; every map keyed
//! by words iterates in that order, which keeps all printed output
//! deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One of the two letters. `X0` drives the drift term, `X1` the input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X0,
    X1,
}

impl Letter {
    /// Weight in the grading: `x0` counts 2, `x1` counts 1.
    pub fn weight(self) -> u32 {
        match self {
            Letter::X0 => 2,
            Letter::X1 => 1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::X0 => '0',
            Letter::X1 => '1',
        }
    }
}

/// A finite word; the empty word is the unit of concatenation.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Weighted degree `2·#x0 + #x1`.
    pub fn wdeg(&self) -> u32 {
        wdeg(&self.0)
    }

    pub fn count(&self, l: Letter) -> usize {
        self.0.iter().filter(|&&x| x == l).count()
    }

    /// `l·self`
    pub fn prepend(&self, l: Letter) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(l);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Human-readable form, `x0x1` or `∅`.
    pub fn pretty(&self) -> String {
        if self.0.is_empty() {
            return "∅".to_string();
        }
        self.0
            .iter()
            .map(|l| match l {
                Letter::X0 => "x0",
                Letter::X1 => "x1",
            })
            .collect()
    }
}

/// Weighted degree of a letter slice.
pub fn wdeg(letters: &[Letter]) -> u32 {
    letters.iter().map(|l| l.weight()).sum()
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compact form over `'0'`/`'1'`, with the empty word printed as `""`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

/// Accepts the compact form (`"011"`, `""`) as well as the spelled-out form
/// (`"x0x1x1"`, `"∅"`).
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Word::empty());
        }
        if s.contains('x') {
            let mut out = Vec::new();
            let mut chars = s.chars();
            while let Some(c) = chars.next() {
                if c != 'x' {
                    return Err(Error::Parse(format!("bad word {s:?}: expected 'x'")));
                }
                out.push(match chars.next() {
                    Some('0') => Letter::X0,
                    Some('1') => Letter::X1,
                    _ => return Err(Error::Parse(format!("bad word {s:?}: expected x0 or x1"))),
                });
            }
            return Ok(Word(out));
        }
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(Letter::X0),
                '1' => Ok(Letter::X1),
                _ => Err(Error::Parse(format!(
                    "bad word {s:?}: unexpected {c:?} at position {i}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl From<&[Letter]> for Word {
    fn from(l: &[Letter]) -> Self {
        Word(l.to_vec())
    }
}

/// All words of weighted degree at most `max`, in canonical order.
pub fn words_up_to(max: u32) -> Vec<Word> {
    let mut out = Vec::new();
    for d in 0..=max {
        out.extend(words_of_degree(d));
    }
    out.sort();
    out
}

/// All words of weighted degree exactly `d`.
pub fn words_of_degree(d: u32) -> Vec<Word> {
    fn go(rem: u32, prefix: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if rem == 0 {
            out.push(Word(prefix.clone()));
            return;
        }
        for l in [Letter::X0, Letter::X1] {
            if l.weight() <= rem {
                prefix.push(l);
                go(rem - l.weight(), prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Shuffle of two words with multiplicities.
///
/// Built by the last-letter recursion `ua ⧢ vb = (u ⧢ vb)a + (ua ⧢ v)b` as a
/// table over prefix pairs.
pub fn shuffle_words(u: &[Letter], v: &[Letter]) -> BTreeMap<Word, u64> {
    let (m, n) = (u.len(), v.len());
    // row[j] holds the shuffles of u[..i] with v[..j] for the current i.
    let mut prev: Vec<BTreeMap<Vec<Letter>, u64>> = Vec::with_capacity(n + 1);
    let mut base = BTreeMap::new();
    base.insert(Vec::new(), 1u64);
    prev.push(base);
    for j in 1..=n {
        prev.push(single(&v[..j]));
    }
    for i in 1..=m {
        let mut row: Vec<BTreeMap<Vec<Letter>, u64>> = Vec::with_capacity(n + 1);
        row.push(single(&u[..i]));
        for j in 1..=n {
            let mut cell = BTreeMap::new();
            for (w, c) in &prev[j] {
                let mut w = w.clone();
                w.push(u[i - 1]);
                *cell.entry(w).or_insert(0) += c;
            }
            for (w, c) in &row[j - 1] {
                let mut w = w.clone();
                w.push(v[j - 1]);
                *cell.entry(w).or_insert(0) += c;
            }
            row.push(cell);
        }
        prev = row;
    }
    prev.pop()
        .unwrap_or_default()
        .into_iter()
        .map(|(w, c)| (Word(w), c))
        .collect()
}

fn single(w: &[Letter]) -> BTreeMap<Vec<Letter>, u64> {
    let mut m = BTreeMap::new();
    m.insert(w.to_vec(), 1);
    m
}

/// Unshuffle coproduct of a word: every split of the positions into a
/// subword and its complement, with multiplicities.
pub fn unshuffle(w: &Word) -> BTreeMap<(Word, Word), u64> {
    let n = w.len();
    assert!(n < 64, "word too long to unshuffle");
    let mut out = BTreeMap::new();
    for mask in 0u64..(1u64 << n) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (i, &l) in w.0.iter().enumerate() {
            if mask >> i & 1 == 1 {
                left.push(l);
            } else {
                right.push(l);
            }
        }
        *out.entry((Word(left), Word(right))).or_insert(0) += 1;
    }
    out
}
