//! Integer partitions in sparse multiplicity form, plus the multisets that
//! symmetric functions are evaluated on.
//!
//! A [`Partition`] stores only the non-zero multiplicities `i -> m_i`; the
//! summand sequence is derived on demand. `m_0` is never stored and reads as
//! zero.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Upper bound on partition weights handed to enumeration and expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cap(u32);

impl Cap {
    pub const DEFAULT: u32 = 64;

    pub fn new(max_weight: u32) -> Self {
        Cap(max_weight)
    }

    pub fn max_weight(self) -> u32 {
        self.0
    }

    pub fn check(self, weight: u64) -> Result<()> {
        if weight > u64::from(self.0) {
            Err(Error::CapExceeded {
                weight,
                cap: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Cap {
    fn default() -> Self {
        Cap(Self::DEFAULT)
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PartsWire", into = "PartsWire")]
pub struct Partition {
    mults: BTreeMap<u32, u32>,
}

#[derive(Serialize, Deserialize)]
struct PartsWire {
    parts: Vec<u32>,
}

impl TryFrom<PartsWire> for Partition {
    type Error = Error;

    fn try_from(wire: PartsWire) -> Result<Self> {
        Partition::new(&wire.parts)
    }
}

impl From<Partition> for PartsWire {
    fn from(p: Partition) -> Self {
        PartsWire { parts: p.parts() }
    }
}

impl Partition {
    /// Builds a partition from its summands, in any order.
    pub fn new(parts: &[u32]) -> Result<Self> {
        let mut mults = BTreeMap::new();
        for &p in parts {
            if p == 0 {
                return Err(Error::NonPositivePart(0));
            }
            *mults.entry(p).or_insert(0) += 1;
        }
        Ok(Partition { mults })
    }

    /// Same as [`Partition::new`] for signed input, rejecting entries `<= 0`.
    pub fn from_signed(parts: &[i64]) -> Result<Self> {
        let parts = parts
            .iter()
            .map(|&p| {
                u32::try_from(p)
                    .ok()
                    .filter(|&p| p > 0)
                    .ok_or(Error::NonPositivePart(p))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(&parts)
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// Builds a partition from `(part, multiplicity)` pairs; zero multiplicities are dropped.
    pub fn from_multiplicities<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut mults = BTreeMap::new();
        for (i, m) in pairs {
            if i == 0 {
                return Err(Error::NonPositivePart(0));
            }
            if m > 0 {
                *mults.entry(i).or_insert(0) += m;
            }
        }
        Ok(Partition { mults })
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    /// `|λ| = Σ i·m_i`.
    pub fn weight(&self) -> u64 {
        self.mults
            .iter()
            .map(|(&i, &m)| u64::from(i) * u64::from(m))
            .sum()
    }

    /// `ℓ(λ) = Σ m_i`.
    pub fn length(&self) -> u64 {
        self.mults.values().map(|&m| u64::from(m)).sum()
    }

    /// `m_i(λ)`; absent parts and `i = 0` give zero.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.mults.get(&i).copied().unwrap_or(0)
    }

    /// `(part, multiplicity)` pairs in ascending part order.
    pub fn multiplicities(&self) -> impl DoubleEndedIterator<Item = (u32, u32)> + '_ {
        self.mults.iter().map(|(&i, &m)| (i, m))
    }

    pub fn largest_part(&self) -> Option<u32> {
        self.mults.keys().next_back().copied()
    }

    pub fn smallest_part(&self) -> Option<u32> {
        self.mults.keys().next().copied()
    }

    /// Summands in decreasing order.
    pub fn parts(&self) -> Vec<u32> {
        self.parts_desc().collect()
    }

    fn parts_desc(&self) -> impl Iterator<Item = u32> + '_ {
        self.mults
            .iter()
            .rev()
            .flat_map(|(&i, &m)| std::iter::repeat_n(i, m as usize))
    }

    /// The power sum `p_k(λ) = Σ i^k·m_i`, for `k >= 1`.
    pub fn moment(&self, k: u32) -> Result<BigInt> {
        if k == 0 {
            return Err(Error::IndexOutOfRange {
                what: "moment index",
                min: 1,
                value: 0,
            });
        }
        Ok(self
            .mults
            .iter()
            .map(|(&i, &m)| num_traits::pow(BigInt::from(i), k as usize) * m)
            .sum())
    }

    /// `λ^{>s}`: keeps only the parts strictly larger than `s`.
    pub fn truncate_above(&self, s: u32) -> Partition {
        Partition {
            mults: self
                .mults
                .range(s.saturating_add(1)..)
                .map(|(&i, &m)| (i, m))
                .collect(),
        }
    }

    /// `(μ)_s`: every part `a` replaced by the falling factorial `a(a-1)...(a-s+1)`.
    /// Parts below `s` would map to zero and are rejected.
    pub fn pochhammer_map(&self, s: u32) -> Result<Multiset> {
        let mut values = Vec::with_capacity(self.length() as usize);
        for (i, m) in self.multiplicities().rev() {
            if i < s {
                return Err(Error::PartBelowShift { part: i, shift: s });
            }
            let value = falling_factorial(i, s);
            values.extend(std::iter::repeat_n(value, m as usize));
        }
        Ok(Multiset { values })
    }

    /// `μ ∪ ν`: multiplicities add pointwise.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut mults = self.mults.clone();
        for (&i, &m) in &other.mults {
            *mults.entry(i).or_insert(0) += m;
        }
        Partition { mults }
    }

    /// `μ^{+s}`: every part increased by `s`.
    pub fn shift_up(&self, s: u32) -> Partition {
        Partition {
            mults: self.mults.iter().map(|(&i, &m)| (i + s, m)).collect(),
        }
    }

    /// Inverse of [`Partition::shift_up`]; every part must exceed `s`.
    pub fn shift_down(&self, s: u32) -> Result<Partition> {
        if let Some(p) = self.smallest_part().filter(|&p| p <= s) {
            return Err(Error::PartNotAboveShift { part: p, shift: s });
        }
        Ok(Partition {
            mults: self.mults.iter().map(|(&i, &m)| (i - s, m)).collect(),
        })
    }

    /// `μ ≤ λ` in the multiplicity order: `m_i(μ) <= m_i(λ)` for all `i`.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.mults.iter().all(|(&i, &m)| other.multiplicity(i) >= m)
    }

    /// `λ - ε_j`: drops one copy of the part `j`.
    pub fn remove_part(&self, j: u32) -> Result<Partition> {
        let mut mults = self.mults.clone();
        match mults.get_mut(&j) {
            Some(m) if *m > 1 => *m -= 1,
            Some(_) => {
                mults.remove(&j);
            }
            None => return Err(Error::MissingPart(j)),
        }
        Ok(Partition { mults })
    }

    /// `λ_j`: lowers one copy of the part `j` to `j - 1`, dropping it when it reaches zero.
    pub fn decrement_part(&self, j: u32) -> Result<Partition> {
        let mut lowered = self.remove_part(j)?;
        if j > 1 {
            *lowered.mults.entry(j - 1).or_insert(0) += 1;
        }
        Ok(lowered)
    }

    /// Every sub-partition `ν ≤ λ` with `ℓ(ν) = len`, each paired with `∏ binom(m_i(λ), m_i(ν))`.
    pub fn sub_partitions_of_length(&self, len: u64) -> Vec<(Partition, BigInt)> {
        let pairs: Vec<(u32, u32)> = self.multiplicities().collect();
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(pairs.len());
        sub_partitions_rec(&pairs, len, &mut chosen, BigInt::one(), &mut out);
        out
    }
}

fn sub_partitions_rec(
    pairs: &[(u32, u32)],
    remaining: u64,
    chosen: &mut Vec<(u32, u32)>,
    weight: BigInt,
    out: &mut Vec<(Partition, BigInt)>,
) {
    let Some((&(i, m), rest)) = pairs.split_first() else {
        if remaining == 0 {
            let sub =
                Partition::from_multiplicities(chosen.iter().copied()).expect("parts are positive");
            out.push((sub, weight));
        }
        return;
    };
    let rest_capacity: u64 = rest.iter().map(|&(_, m)| u64::from(m)).sum();
    let take_max = u64::from(m).min(remaining);
    for k in 0..=take_max {
        if remaining - k > rest_capacity {
            continue;
        }
        chosen.push((i, k as u32));
        let w = &weight * binomial(u64::from(m), k as u32);
        sub_partitions_rec(rest, remaining - k, chosen, w, out);
        chosen.pop();
    }
}

/// `a(a-1)...(a-s+1)`; one when `s = 0`.
pub fn falling_factorial(a: u32, s: u32) -> BigInt {
    (0..s)
        .map(|v| BigInt::from(i64::from(a) - i64::from(v)))
        .fold(BigInt::one(), |acc, x| acc * x)
}

/// `binom(n, k)` as a big integer; zero when `k > n`.
pub fn binomial(n: u64, k: u32) -> BigInt {
    let k = u64::from(k);
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

impl Ord for Partition {
    /// Lexicographic order on the decreasing summand sequences.
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts_desc().cmp(other.parts_desc())
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{:?}", self.parts())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (n, p) in self.parts_desc().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// All partitions of `n`, in decreasing lexicographic order of their summand sequences.
pub fn enumerate_partitions(n: u32, cap: Cap) -> Result<Vec<Partition>> {
    cap.check(u64::from(n))?;
    let mut out = Vec::new();
    generate(n, n, 0, 0, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Partitions `λ ⊢ n + r·s` with at least `r` parts larger than `s`, in the
/// same order as [`enumerate_partitions`]. Empty when `r > n`.
pub fn enumerate_constrained(n: u32, r: u32, s: u32, cap: Cap) -> Result<Vec<Partition>> {
    if r > n {
        return Ok(Vec::new());
    }
    let total = u64::from(n) + u64::from(r) * u64::from(s);
    cap.check(total)?;
    let total = total as u32;
    let mut out = Vec::new();
    generate(total, total, r, s, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Partitions of `n` with exactly `k` parts, in canonical order.
pub fn partitions_with_length(n: u32, k: u32, cap: Cap) -> Result<Vec<Partition>> {
    Ok(enumerate_partitions(n, cap)?
        .into_iter()
        .filter(|p| p.length() == u64::from(k))
        .collect())
}

// Emits partitions of `remaining` with parts <= `max_part`, largest first,
// that still contain at least `need` parts larger than `s`.
fn generate(
    remaining: u32,
    max_part: u32,
    need: u32,
    s: u32,
    stack: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        if need == 0 {
            out.push(from_desc(stack));
        }
        return;
    }
    if need > 0 && (max_part <= s || u64::from(remaining) < u64::from(need) * u64::from(s + 1)) {
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        if need > 0 && p <= s {
            break;
        }
        let next_need = if p > s { need.saturating_sub(1) } else { need };
        stack.push(p);
        generate(remaining - p, p, next_need, s, stack, out);
        stack.pop();
    }
}

fn from_desc(parts: &[u32]) -> Partition {
    let mut mults = BTreeMap::new();
    for &p in parts {
        *mults.entry(p).or_insert(0) += 1;
    }
    Partition { mults }
}

/// A finite multiset of non-negative integers, kept in decreasing order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Multiset {
    values: Vec<BigInt>,
}

impl Multiset {
    pub fn new(mut values: Vec<BigInt>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| v.is_negative()) {
            return Err(Error::NegativeEntry(v.to_string()));
        }
        values.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Multiset { values })
    }

    pub fn from_u64s(values: &[u64]) -> Self {
        let mut values: Vec<BigInt> = values.iter().map(|&v| BigInt::from(v)).collect();
        values.sort_unstable_by(|a, b| b.cmp(a));
        Multiset { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn contains(&self, value: &BigInt) -> bool {
        self.values.contains(value)
    }

    /// The multiset with one copy of `value` removed.
    pub fn remove_one(&self, value: &BigInt) -> Result<Multiset> {
        let pos = self
            .values
            .iter()
            .position(|v| v == value)
            .ok_or_else(|| Error::MissingValue(value.to_string()))?;
        let mut values = self.values.clone();
        values.remove(pos);
        Ok(Multiset { values })
    }
}
