//! Elementary symmetric functions and power sums on integer multisets.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::partition::{binomial, falling_factorial, Multiset, Partition};
use crate::{Error, Result};

/// `e_0, e_1, ..., e_R` of some multiset. `e_0` is always one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryVector {
    values: Vec<BigInt>,
}

impl ElementaryVector {
    /// `e_r`; zero past the stored range.
    pub fn get(&self, r: usize) -> BigInt {
        self.values.get(r).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.values
    }

    pub fn degree_bound(&self) -> usize {
        self.values.len() - 1
    }
}

impl From<ElementaryVector> for Vec<BigInt> {
    fn from(e: ElementaryVector) -> Self {
        e.values
    }
}

/// Coefficients of `∏ (1 + b_l X)` up to `X^R`, one multiplication pass per element.
pub fn elementary_moments(b: &Multiset, max_r: usize) -> ElementaryVector {
    let mut values = vec![BigInt::zero(); max_r + 1];
    values[0] = BigInt::one();
    for (seen, x) in b.values().iter().enumerate() {
        let top = max_r.min(seen + 1);
        for r in (1..=top).rev() {
            let (lo, hi) = values.split_at_mut(r);
            hi[0] += x * &lo[r - 1];
        }
    }
    ElementaryVector { values }
}

/// `p_k(b) = Σ b_l^k`, for `k >= 1`.
pub fn power_sum(b: &Multiset, k: u32) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::IndexOutOfRange {
            what: "power sum index",
            min: 1,
            value: 0,
        });
    }
    Ok(b.values()
        .iter()
        .map(|x| num_traits::pow(x.clone(), k as usize))
        .sum())
}

/// `Σ_{k=1}^{r} (-1)^{k-1} p_k e_{r-k} - r·e_r`. Newton's identity says this is zero.
pub fn newton_residual(b: &Multiset, r: u32) -> Result<BigInt> {
    if r == 0 {
        return Err(Error::IndexOutOfRange {
            what: "Newton residual index",
            min: 1,
            value: 0,
        });
    }
    let e = elementary_moments(b, r as usize);
    let mut acc = BigInt::zero();
    for k in 1..=r {
        let term = power_sum(b, k)? * e.get((r - k) as usize);
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc - e.get(r as usize) * r)
}

/// The elementary vector after one copy of `l_value` in `b` is replaced by
/// `l_value - c`, computed from the original `e_r` as
/// `e_r - c·Σ_{k=1}^{r} (-b_l)^{k-1} e_{r-k}`.
pub fn subtract_transform(
    b: &Multiset,
    l_value: &BigInt,
    c: &BigInt,
    max_r: usize,
) -> Result<ElementaryVector> {
    if !b.contains(l_value) {
        return Err(Error::MissingValue(l_value.to_string()));
    }
    let e = elementary_moments(b, max_r);
    let neg_b = -l_value;
    let mut values = Vec::with_capacity(max_r + 1);
    for r in 0..=max_r {
        let mut tail = BigInt::zero();
        let mut power = BigInt::one();
        for k in 1..=r {
            tail += &power * e.get(r - k);
            power *= &neg_b;
        }
        values.push(e.get(r) - c * tail);
    }
    Ok(ElementaryVector { values })
}

/// `e_r((η)_s)` as a sum over sub-partitions `ν ≤ η` of length `r`, each
/// weighted by `∏ binom(m_i(η), m_i(ν)) ∏ ((i)_s)^{m_i(ν)}`.
///
/// Parts of `η` below `s` are rejected, as in [`Partition::pochhammer_map`].
pub fn elementary_by_subpartitions(eta: &Partition, s: u32, r: u32) -> Result<BigInt> {
    if let Some(p) = eta.smallest_part().filter(|&p| p < s) {
        return Err(Error::PartBelowShift { part: p, shift: s });
    }
    Ok(eta
        .sub_partitions_of_length(u64::from(r))
        .into_iter()
        .map(|(nu, choices)| {
            nu.multiplicities()
                .map(|(i, m)| num_traits::pow(falling_factorial(i, s), m as usize))
                .fold(choices, |acc, x| acc * x)
        })
        .sum())
}

/// `e_r((λ^{>s})_s)` rewritten over `μ` with `ν = μ^{+s}`:
/// `Σ_{ℓ(μ)=r} ∏_{i>s} binom(m_i(λ), m_{i-s}(μ)) ∏ ((i+s)!/i!)^{m_i(μ)}`.
///
/// Accepts any `λ`; parts `<= s` simply never contribute.
pub fn elementary_by_shifted_subpartitions(lambda: &Partition, s: u32, r: u32) -> BigInt {
    let base = lambda
        .truncate_above(s)
        .shift_down(s)
        .expect("truncated parts exceed s");
    let mut total = BigInt::zero();
    for (mu, _) in base.sub_partitions_of_length(u64::from(r)) {
        let mut term = BigInt::one();
        for (i, m) in mu.multiplicities() {
            term *= binomial(u64::from(lambda.multiplicity(i + s)), m);
            let ratio = factorial(i + s) / factorial(i);
            term *= num_traits::pow(ratio, m as usize);
        }
        total += term;
    }
    total
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}
