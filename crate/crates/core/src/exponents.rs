//! Sparse exponent vectors `i -> e_i` over one family of indexed variables
//! (`y_1, y_2, ...` or `z_1, z_2, ...`), shared by the symbolic polynomial types.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// A monomial `∏ v_i^{e_i}` with only positive exponents stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponents(BTreeMap<u32, u32>);

impl Exponents {
    pub fn one() -> Self {
        Exponents::default()
    }

    /// Drops zero exponents. Index 0 is not a variable and is rejected.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut map = BTreeMap::new();
        for (i, e) in pairs {
            assert!(i >= 1, "variable indices start at 1");
            if e > 0 {
                *map.entry(i).or_insert(0) += e;
            }
        }
        Exponents(map)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: u32) -> u32 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (u32, u32)> + '_ {
        self.0.iter().map(|(&i, &e)| (i, e))
    }

    pub fn max_index(&self) -> Option<u32> {
        self.0.keys().next_back().copied()
    }

    /// `Σ e_i`.
    pub fn degree(&self) -> u64 {
        self.0.values().map(|&e| u64::from(e)).sum()
    }

    /// `Σ i·e_i`.
    pub fn weighted_degree(&self) -> u64 {
        self.0
            .iter()
            .map(|(&i, &e)| u64::from(i) * u64::from(e))
            .sum()
    }

    pub fn times_var(&self, i: u32) -> Exponents {
        self.times_var_pow(i, 1)
    }

    pub fn times_var_pow(&self, i: u32, e: u32) -> Exponents {
        let mut out = self.clone();
        if e > 0 {
            *out.0.entry(i).or_insert(0) += e;
        }
        out
    }

    /// Divides by `v_i`, or `None` when `v_i` does not divide.
    pub fn div_var(&self, i: u32) -> Option<Exponents> {
        let mut out = self.clone();
        match out.0.get_mut(&i) {
            Some(e) if *e > 1 => *e -= 1,
            Some(_) => {
                out.0.remove(&i);
            }
            None => return None,
        }
        Some(out)
    }

    pub fn mul(&self, other: &Exponents) -> Exponents {
        let mut out = self.clone();
        for (&i, &e) in &other.0 {
            *out.0.entry(i).or_insert(0) += e;
        }
        out
    }

    /// Renames `v_i` to `v_{i+s}`.
    pub fn shift(&self, s: u32) -> Exponents {
        Exponents(self.0.iter().map(|(&i, &e)| (i + s, e)).collect())
    }

    /// Applies `D(v_i) = v_{i+1}` with the Leibniz rule: returns `(e_i, m/v_i·v_{i+1})`
    /// for every variable present.
    pub fn derivative_terms(&self) -> Vec<(u32, Exponents)> {
        self.0
            .iter()
            .map(|(&i, &e)| {
                let lowered = self.div_var(i).expect("v_i divides");
                (e, lowered.times_var(i + 1))
            })
            .collect()
    }
}
