//! Chen–Fliess series as input–output maps, for piecewise-constant inputs.
//!
//! With `u(t) = u_k` on `[kh, (k+1)h)`, the iterated integrals
//! `F_{x_i η}(t) = ∫₀ᵗ u_i(τ) F_η(τ) dτ` (`u_0 ≡ 1`, `u_1 = u`) propagate
//! exactly from one grid point to the next:
//!
//! ```text
//! F_η(t_{k+1}) = Σ_{η = πσ} u_k^{#x1(π)} · h^{|π|} / |π|! · F_σ(t_k)
//! ```
//!
//! so the only approximation is truncating the series at its degree. For
//! coefficients bounded by `K` and `|u| ≤ 1`, the neglected part of
//! `F_c[u](T)` is of order `K·T^{(D+1)/2}`.
//!
//! Coefficients are converted to `f64` on entry; everything before that is
//! exact.

use std::collections::HashMap;

use num_traits::One;

use serde::{Deserialize, Serialize};

use crate::composition::{compose, mixed_compose};
use crate::error::{Error, Result};
use crate::series::{coeff_to_f64, Coeff, Series};
use crate::series2::{GroupElement, Series2};
use crate::word::{words_up_to, Letter, Word};

/// Piecewise-constant input on a uniform grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Signal {
    h: f64,
    values: Vec<f64>,
}

impl Signal {
    pub fn new(h: f64, values: Vec<f64>) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::Constraint(format!("step must be positive and finite, got {h}")));
        }
        if values.is_empty() {
            return Err(Error::Constraint("a signal needs at least one step".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Constraint("signal values must be finite".into()));
        }
        Ok(Signal { h, values })
    }

    /// `u ≡ value` on `[0, horizon]`, with the step count rounded to the
    /// nearest integer.
    pub fn constant(value: f64, h: f64, horizon: f64) -> Result<Self> {
        let n = (horizon / h).round().max(1.0) as usize;
        Signal::new(h, vec![value; n])
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn steps(&self) -> usize {
        self.values.len()
    }

    pub fn horizon(&self) -> f64 {
        self.h * self.values.len() as f64
    }

    /// Grid points `t_0 … t_N`.
    pub fn grid(&self) -> Vec<f64> {
        (0..=self.values.len()).map(|k| k as f64 * self.h).collect()
    }

    /// `u(t_k)` as a left value, with `u_N := u_{N−1}`.
    pub fn sample(&self, k: usize) -> f64 {
        self.values[k.min(self.values.len() - 1)]
    }
}

/// Output samples at the grid points of the input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub y: Vec<f64>,
}

impl Trajectory {
    /// `max_k |y_k − z_k|`; `∞` when the grids differ in length.
    pub fn sup_distance(&self, other: &Trajectory) -> f64 {
        if self.y.len() != other.y.len() {
            return f64::INFINITY;
        }
        self.y
            .iter()
            .zip(&other.y)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Pointwise product on a shared grid.
    pub fn times(&self, other: &Trajectory) -> Trajectory {
        Trajectory {
            t: self.t.clone(),
            y: self.y.iter().zip(&other.y).map(|(a, b)| a * b).collect(),
        }
    }

    /// Piecewise-constant signal whose value on each step is the average of
    /// the two endpoint samples.
    pub fn to_signal(&self) -> Result<Signal> {
        if self.t.len() < 2 || self.t.len() != self.y.len() {
            return Err(Error::Constraint("trajectory needs at least two matching samples".into()));
        }
        let h = self.t[1] - self.t[0];
        Signal::new(h, self.y.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect())
    }
}

/// `F_η(t_k)` for every word with `wdeg ≤ D` and every grid point.
#[derive(Clone, Debug)]
pub struct IteratedIntegralTable {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    /// `values[k][i]` is `F_{words[i]}(t_k)`.
    values: Vec<Vec<f64>>,
    t: Vec<f64>,
}

impl IteratedIntegralTable {
    pub fn max_degree_words(&self) -> &[Word] {
        &self.words
    }

    pub fn grid(&self) -> &[f64] {
        &self.t
    }

    /// `F_w(t_k)`, or `None` if `w` is past the table's degree.
    pub fn value(&self, w: &Word, k: usize) -> Option<f64> {
        self.index.get(w).map(|&i| self.values[k][i])
    }

    /// `Σ_η c(η) F_η(t_k)` at every grid point, summed in canonical word
    /// order.
    fn contract(&self, c: &Series) -> Result<Vec<f64>> {
        let coeffs: Vec<(usize, f64)> = c
            .terms()
            .map(|(w, k)| {
                self.index
                    .get(w)
                    .map(|&i| (i, coeff_to_f64(k)))
                    .ok_or(Error::BeyondTruncation { needed: w.wdeg(), available: self.degree() })
            })
            .collect::<Result<_>>()?;
        Ok(self
            .values
            .iter()
            .map(|row| coeffs.iter().map(|&(i, k)| k * row[i]).sum())
            .collect())
    }

    fn degree(&self) -> u32 {
        self.words.iter().map(Word::wdeg).max().unwrap_or(0)
    }
}

/// Exact per-step propagation of all iterated integrals up to `wdeg ≤ max`.
pub fn iterated_integrals(u: &Signal, max: u32) -> IteratedIntegralTable {
    let words = words_up_to(max);
    let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    // suffix indices and prefix (#x1, length) for every split of every word
    let splits: Vec<Vec<(usize, usize, usize)>> = words
        .iter()
        .map(|w| {
            let l = w.letters();
            (0..=l.len())
                .map(|p| {
                    let ones = l[..p].iter().filter(|&&x| x == Letter::X1).count();
                    (index[&Word::from(&l[p..])], ones, p)
                })
                .collect()
        })
        .collect();
    let max_len = words.iter().map(Word::len).max().unwrap_or(0);
    let mut fact = vec![1.0f64; max_len + 1];
    for i in 1..=max_len {
        fact[i] = fact[i - 1] * i as f64;
    }

    let mut row = vec![0.0; words.len()];
    row[index[&Word::empty()]] = 1.0;
    let mut values = Vec::with_capacity(u.steps() + 1);
    values.push(row);
    for k in 0..u.steps() {
        let uk = u.values[k];
        // weight[ones][len] = u_k^ones · h^len / len!
        let mut hp = vec![1.0f64; max_len + 1];
        for i in 1..=max_len {
            hp[i] = hp[i - 1] * u.h;
        }
        let mut up = vec![1.0f64; max_len + 1];
        for i in 1..=max_len {
            up[i] = up[i - 1] * uk;
        }
        let prev = values.last().expect("at least the initial row");
        let next: Vec<f64> = splits
            .iter()
            .map(|sp| {
                sp.iter()
                    .map(|&(s, ones, len)| up[ones] * hp[len] / fact[len] * prev[s])
                    .sum()
            })
            .collect();
        values.push(next);
    }
    IteratedIntegralTable { words, index, values, t: u.grid() }
}

/// `F_c[u]` at the grid points.
pub fn evaluate_cf(c: &Series, u: &Signal) -> Trajectory {
    let table = iterated_integrals(u, c.max_degree());
    let y = table.contract(c).expect("table covers the series degree");
    Trajectory { t: table.t, y }
}

/// `F_𝐜[u] = u·F_{c1}[u] + F_{c2}[u]`, with `u(t_k)` the left value `u_k`.
pub fn evaluate_ff(c: &Series2, u: &Signal) -> Trajectory {
    let table = iterated_integrals(u, c.max_degree());
    let y1 = table.contract(c.c1()).expect("table covers the series degree");
    let y2 = table.contract(c.c2()).expect("table covers the series degree");
    let y = (0..y1.len()).map(|k| u.sample(k) * y1[k] + y2[k]).collect();
    Trajectory { t: table.t, y }
}

/// `F_𝐝[u]` as a piecewise-constant signal on the grid of `u`.
///
/// On step `k` the value is `u_k·avg(F_{d1}) + avg(F_{d2})`, with each
/// average taken over the step's endpoints. `u` is constant on the step, so
/// its jumps are not smeared.
pub fn ff_signal(d: &Series2, u: &Signal) -> Result<Signal> {
    let table = iterated_integrals(u, d.max_degree());
    let y1 = table.contract(d.c1())?;
    let y2 = table.contract(d.c2())?;
    let values = (0..u.steps())
        .map(|k| u.values[k] * 0.5 * (y1[k] + y1[k + 1]) + 0.5 * (y2[k] + y2[k + 1]))
        .collect();
    Signal::new(u.h, values)
}

/// `(F_𝐜 ∘ F_𝐝)[u]`: the output of `F_𝐝` resampled by [`ff_signal`] and
/// fed into `F_𝐜`. This is operator composition, not `𝐜 ◁ 𝐝`.
pub fn compose_ff(c: &Series2, d: &Series2, u: &Signal) -> Result<Trajectory> {
    Ok(evaluate_ff(c, &ff_signal(d, u)?))
}

/// Inputs on which `◁` and operator composition visibly differ:
/// `𝐜 = [1, x1]`, `𝐝 = [1, 1]`, `u ≡ 1` on `[0, 1/2]`.
///
/// `F_{𝐜◁𝐝}[u] = 1 + 2t` while `(F_𝐜 ∘ F_𝐝)[u] = 2 + 2t`.
pub fn triangle_counterexample(h: f64) -> (GroupElement, GroupElement, Signal) {
    let max = 3;
    let c = GroupElement::new(Series::one(max), Series::monomial(Word::letter(Letter::X1), Coeff::one(), max))
        .expect("unit channel 1");
    let d = GroupElement::new(Series::one(max), Series::one(max)).expect("unit channel 1");
    let u = Signal::constant(1.0, h, 0.5).expect("positive step");
    (c, d, u)
}

/// Outcome of [`feedback_sim`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FeedbackRun {
    pub trajectory: Trajectory,
    pub iterations: usize,
    /// Sup-norm change of each Picard step.
    pub residuals: Vec<f64>,
}

/// Simulates `y = F_c[u·v1 + v2]`, `v_i = F_{d_i}[y]` by Picard iteration
/// from `y⁰ = F_c[u]`.
///
/// Each iterate is resampled as a step-average signal before being fed
/// back, which costs `O(h²)` per pass.
pub fn feedback_sim(c: &Series, d: &Series2, u: &Signal, tol: f64, max_iter: usize) -> Result<FeedbackRun> {
    let mut y = evaluate_cf(c, u);
    let mut residuals = Vec::new();
    for iter in 1..=max_iter {
        let yhat = y.to_signal()?;
        let table = iterated_integrals(&yhat, d.max_degree());
        let v1 = table.contract(d.c1())?;
        let v2 = table.contract(d.c2())?;
        let w: Vec<f64> = (0..u.steps())
            .map(|k| u.values[k] * 0.5 * (v1[k] + v1[k + 1]) + 0.5 * (v2[k] + v2[k + 1]))
            .collect();
        let next = evaluate_cf(c, &Signal::new(u.h, w)?);
        let r = next.sup_distance(&y);
        residuals.push(r);
        y = next;
        if r <= tol {
            return Ok(FeedbackRun { trajectory: y, iterations: iter, residuals });
        }
        if !r.is_finite() {
            break;
        }
    }
    Err(Error::Convergence {
        iterations: residuals.len(),
        residual: residuals.last().copied().unwrap_or(f64::NAN),
    })
}

/// Generating series of the closed loop: the fixed point
/// `ĉ = c ⋉ (d1 ∘ ĉ, d2 ∘ ĉ)`, reached from `ĉ⁰ = c`.
///
/// Requires `d1(∅) = 1`; the iteration then fixes at least one more degree
/// per pass.
pub fn closed_loop_series(c: &Series, d: &Series2) -> Result<Series> {
    let max = crate::error::same_degree(c.max_degree(), d.max_degree())?;
    if !d.c1().constant_term().is_one() {
        return Err(Error::Constraint(format!(
            "feedback channel 1 needs constant term 1, got {}",
            d.c1().constant_term()
        )));
    }
    let mut cur = c.clone();
    for _ in 0..max + 2 {
        let loop_in = Series2::new(compose(d.c1(), &cur)?, compose(d.c2(), &cur)?)?;
        let next = mixed_compose(c, &loop_in)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::Invariant(format!(
        "closed-loop fixed point not stationary after {} passes at degree {max}",
        max + 2
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::triangle;
    use crate::series::coeff;

    fn s(d: u32, t: &[(&str, i64)]) -> Series {
        Series::from_ints(d, t).unwrap()
    }

    fn w(x: &str) -> Word {
        x.parse().unwrap()
    }

    #[test]
    fn iterated_integral_examples() {
        let u = Signal::constant(1.0, 0.01, 1.0).unwrap();
        let t = iterated_integrals(&u, 4);
        let n = u.steps();
        for k in 0..=n {
            assert_eq!(t.value(&Word::empty(), k), Some(1.0));
        }
        assert!((t.value(&w("1"), n).unwrap() - 1.0).abs() < 1e-12);
        assert!((t.value(&w("11"), n).unwrap() - 0.5).abs() < 1e-12);
        // F_{x0x1} = ∫ τ dτ = t²/2 for u ≡ 1
        assert!((t.value(&w("01"), n).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(t.value(&w("000"), n), None);

        let u = Signal::new(0.5, vec![1.0, 2.0]).unwrap();
        let t = iterated_integrals(&u, 2);
        assert!((t.value(&w("1"), 2).unwrap() - 1.5).abs() < 1e-15);
        // exact even for a jump: F_{x1x1} = U²/2
        assert!((t.value(&w("11"), 2).unwrap() - 1.125).abs() < 1e-15);
    }

    #[test]
    fn evaluation_examples() {
        let u = Signal::new(0.1, vec![0.3, -1.0, 2.0]).unwrap();
        let y = evaluate_cf(&Series::one(4), &u);
        assert!(y.y.iter().all(|&v| v == 1.0));

        let u = Signal::constant(0.7, 0.01, 1.0).unwrap();
        let exp: Series = Series::from_terms(12, (0..=6).map(|k| (Word::new(vec![Letter::X0; k]), coeff(1) / coeff(fact(k)))));
        let y = evaluate_cf(&exp, &u);
        // Σ_{k≤6} 1/k!² has tail below 1/7!² ≈ 4e-8
        let expect: f64 = (0..=6).map(|k| 1.0 / (fact(k) as f64).powi(2)).sum();
        assert!((y.y.last().unwrap() - expect).abs() < 1e-12);

        let u = Signal::constant(1.0, 0.01, 1.0).unwrap();
        let y = evaluate_cf(&s(4, &[("11", 1)]), &u);
        assert!((y.y.last().unwrap() - 0.5).abs() < 1e-12);
    }

    fn fact(k: usize) -> i64 {
        (1..=k as i64).product()
    }

    #[test]
    fn feed_forward_examples() {
        let u = Signal::new(0.1, vec![0.3, -1.0, 2.0]).unwrap();
        let y = evaluate_ff(&Series2::identity(3), &u);
        assert_eq!(y.y, vec![0.3, -1.0, 2.0, 2.0]);

        let c2 = s(3, &[("", 2), ("1", 1)]);
        let y = evaluate_ff(&Series2::new(Series::zero(3), c2.clone()).unwrap(), &u);
        assert_eq!(y, evaluate_cf(&c2, &u));

        let u = Signal::constant(1.0, 0.125, 1.0).unwrap();
        let y = evaluate_ff(&Series2::new(s(3, &[("1", 1)]), Series::zero(3)).unwrap(), &u);
        for (t, v) in y.t.iter().zip(&y.y) {
            assert!((t - v).abs() < 1e-14);
        }
    }

    #[test]
    fn closed_loop_examples() {
        let c = s(7, &[("1", 1), ("01", 2)]);
        assert_eq!(closed_loop_series(&c, &Series2::identity(7)).unwrap(), c);

        let beta = Coeff::from_integer(3.into());
        let d = Series2::new(Series::one(7), Series::constant(beta, 7)).unwrap();
        assert_eq!(closed_loop_series(&s(7, &[("1", 1)]), &d).unwrap(), s(7, &[("1", 1), ("0", 3)]));

        let d = Series2::new(Series::one(9), s(9, &[("1", 1)])).unwrap();
        let got = closed_loop_series(&s(9, &[("1", 1)]), &d).unwrap();
        assert_eq!(got, s(9, &[("1", 1), ("001", 1), ("00001", 1)]));
    }

    #[test]
    fn closed_loop_needs_unit_gain() {
        let d = Series2::new(Series::constant(coeff(2), 4), Series::zero(4)).unwrap();
        assert!(matches!(closed_loop_series(&s(4, &[("1", 1)]), &d), Err(Error::Constraint(_))));
    }

    #[test]
    fn feedback_examples() {
        let u = Signal::constant(1.0, 0.01, 1.0).unwrap();
        let c = s(5, &[("1", 1), ("0", -1)]);
        let run = feedback_sim(&c, &Series2::identity(5), &u, 1e-12, 5).unwrap();
        assert_eq!(run.iterations, 1);
        assert_eq!(run.trajectory, evaluate_cf(&c, &u));

        let d = Series2::new(Series::one(5), Series::constant(coeff(2), 5)).unwrap();
        let run = feedback_sim(&s(5, &[("1", 1)]), &d, &u, 1e-12, 10).unwrap();
        for (t, y) in run.trajectory.t.iter().zip(&run.trajectory.y) {
            assert!((y - 3.0 * t).abs() < 1e-12);
        }
    }

    #[test]
    fn divergence_is_reported() {
        let u = Signal::constant(1.0, 0.01, 1.0).unwrap();
        let d = Series2::new(Series::one(5), s(5, &[("1", 1)])).unwrap();
        let err = feedback_sim(&s(5, &[("1", 1)]), &d, &u, 1e-14, 2).unwrap_err();
        assert!(matches!(err, Error::Convergence { iterations: 2, .. }));
    }

    #[test]
    fn counterexample_discrepancy_is_one() {
        let (c, d, u) = triangle_counterexample(0.01);
        let tri = triangle(c.as_series2(), d.as_series2()).unwrap();
        let lhs = evaluate_ff(&tri, &u);
        let rhs = compose_ff(c.as_series2(), d.as_series2(), &u).unwrap();
        for k in 0..lhs.y.len() {
            assert!((lhs.y[k] - (1.0 + 2.0 * lhs.t[k])).abs() < 1e-12);
            assert!((rhs.y[k] - (2.0 + 2.0 * rhs.t[k])).abs() < 1e-12);
        }
    }

    #[test]
    fn signal_validation() {
        assert!(Signal::new(0.0, vec![1.0]).is_err());
        assert!(Signal::new(0.1, vec![]).is_err());
        assert!(Signal::new(0.1, vec![f64::NAN]).is_err());
        let u = Signal::new(0.25, vec![1.0, 2.0]).unwrap();
        assert_eq!(u.grid(), vec![0.0, 0.25, 0.5]);
        assert_eq!(u.sample(2), 2.0);
        assert!(Coeff::one() == coeff(1));
    }
}
