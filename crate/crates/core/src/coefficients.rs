//! The coefficients `C_{λ,r}^{(s)}` of the n-th derivative of `(f∘φ)·(g∘φ^(s))`.
//!
//! [`c_coeff`] evaluates the closed form
//! `n!·e_r((λ^{>s})_s) / ∏ (i!)^{m_i} m_i!` with `n = |λ| - r·s` as an exact
//! fraction and insists the result is an integer. [`RecurrenceMemo`] builds
//! the same numbers from the one-step recurrence that mirrors a single
//! differentiation, without touching any elementary symmetric function.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::partition::{enumerate_constrained, Cap, Partition};
use crate::symmetric::elementary_moments;
use crate::{Error, Exec, Result};

static FACTORIALS: OnceLock<Vec<BigInt>> = OnceLock::new();

/// `n!`, served from a table up to the default weight cap.
pub fn factorial(n: u64) -> BigInt {
    let table = FACTORIALS.get_or_init(|| {
        let mut t = Vec::with_capacity(Cap::DEFAULT as usize + 1);
        t.push(BigInt::one());
        for k in 1..=u64::from(Cap::DEFAULT) {
            let next = t[t.len() - 1].clone() * k;
            t.push(next);
        }
        t
    });
    match table.get(n as usize) {
        Some(v) => v.clone(),
        None => (table.len() as u64..=n).fold(table[table.len() - 1].clone(), |acc, k| acc * k),
    }
}

/// `∏_i (i!)^{m_i} m_i!` over every part of `λ`.
pub fn denominator(lambda: &Partition) -> BigInt {
    lambda
        .multiplicities()
        .map(|(i, m)| {
            num_traits::pow(factorial(u64::from(i)), m as usize) * factorial(u64::from(m))
        })
        .fold(BigInt::one(), |acc, x| acc * x)
}

/// `|λ|! / ∏ (i!)^{m_i} m_i!`, the number of set partitions of block type `λ`.
pub fn faa_di_bruno_coeff(lambda: &Partition) -> BigInt {
    factorial(lambda.weight()) / denominator(lambda)
}

/// `C_{λ,r}^{(s)}` by the closed form. Zero when `λ` has fewer than `r` parts above `s`.
pub fn c_coeff(lambda: &Partition, r: u32, s: u32) -> Result<BigInt> {
    let weight = lambda.weight();
    let rs = u64::from(r) * u64::from(s);
    if weight < rs {
        return Err(Error::WeightBelowShift { weight, rs });
    }
    let n = weight - rs;
    let truncated = lambda.truncate_above(s);
    if truncated.length() < u64::from(r) {
        return Ok(BigInt::zero());
    }
    let e_r = elementary_moments(&truncated.pochhammer_map(s)?, r as usize).get(r as usize);
    let value = BigRational::new(factorial(n) * e_r, denominator(lambda));
    if !value.is_integer() {
        return Err(Error::NonIntegral {
            parts: lambda.parts(),
            r,
            s,
            value: value.to_string(),
        });
    }
    Ok(value.to_integer())
}

/// Memoized evaluation of
/// `C_{λ,r} = Σ_{j: m_j>0} (m_{j-1}+1)·C_{λ_j,r} + [r>0][m_{s+1}>0]·C_{λ-ε_{s+1},r-1}`
/// for one fixed `s`, bottoming out at the empty partition.
///
/// The memo is shared behind a lock so parallel table checks can reuse it.
#[derive(Debug)]
pub struct RecurrenceMemo {
    s: u32,
    memo: RwLock<HashMap<(Partition, u32), BigInt>>,
}

impl RecurrenceMemo {
    pub fn new(s: u32) -> Self {
        RecurrenceMemo {
            s,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn len(&self) -> usize {
        self.memo.read().expect("memo lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coeff(&self, lambda: &Partition, r: u32) -> Result<BigInt> {
        let weight = lambda.weight();
        let rs = u64::from(r) * u64::from(self.s);
        if weight < rs {
            return Err(Error::WeightBelowShift { weight, rs });
        }
        Ok(self.value(lambda, r))
    }

    fn value(&self, lambda: &Partition, r: u32) -> BigInt {
        let weight = lambda.weight();
        let rs = u64::from(r) * u64::from(self.s);
        if weight < rs {
            return BigInt::zero();
        }
        if weight == rs {
            return if lambda.is_empty() && r == 0 {
                BigInt::one()
            } else {
                BigInt::zero()
            };
        }
        let key = (lambda.clone(), r);
        if let Some(v) = self.memo.read().expect("memo lock poisoned").get(&key) {
            return v.clone();
        }

        let mut total = BigInt::zero();
        for (j, _) in lambda.multiplicities() {
            let lowered = lambda.decrement_part(j).expect("j occurs in λ");
            let sub = self.value(&lowered, r);
            if !sub.is_zero() {
                total += sub * (lambda.multiplicity(j - 1) + 1);
            }
        }
        if r > 0 && lambda.multiplicity(self.s + 1) > 0 {
            let removed = lambda.remove_part(self.s + 1).expect("s+1 occurs in λ");
            total += self.value(&removed, r - 1);
        }

        self.memo
            .write()
            .expect("memo lock poisoned")
            .insert(key, total.clone());
        total
    }
}

/// `C_{λ,r}^{(s)}` through the recurrence, with a throwaway memo.
pub fn c_coeff_by_recurrence(lambda: &Partition, r: u32, s: u32) -> Result<BigInt> {
    RecurrenceMemo::new(s).coeff(lambda, r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientEntry {
    pub r: u32,
    pub partition: Partition,
    pub coeff: BigInt,
}

/// All non-zero `C_{λ,r}^{(s)}` for one `n`: ascending `r`, then canonical partition order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableWire", into = "TableWire")]
pub struct CoefficientTable {
    pub n: u32,
    pub s: u32,
    pub entries: Vec<CoefficientEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub r: u32,
    pub partition: Partition,
    pub closed_form: BigInt,
    pub recurrence: BigInt,
}

pub fn coefficient_table(n: u32, s: u32, cap: Cap) -> Result<CoefficientTable> {
    coefficient_table_with(n, s, cap, Exec::default())
}

pub fn coefficient_table_with(n: u32, s: u32, cap: Cap, exec: Exec) -> Result<CoefficientTable> {
    let mut index = Vec::new();
    for r in 0..=n {
        for lambda in enumerate_constrained(n, r, s, cap)? {
            index.push((r, lambda));
        }
    }
    let coeffs = exec.try_map(&index, |(r, lambda)| c_coeff(lambda, *r, s))?;
    let entries = index
        .into_iter()
        .zip(coeffs)
        .map(|((r, partition), coeff)| {
            debug_assert!(coeff.is_positive());
            CoefficientEntry {
                r,
                partition,
                coeff,
            }
        })
        .collect();
    Ok(CoefficientTable { n, s, entries })
}

impl CoefficientTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: u32, lambda: &Partition) -> Option<&BigInt> {
        self.entries
            .iter()
            .find(|e| e.r == r && &e.partition == lambda)
            .map(|e| &e.coeff)
    }

    /// Re-derives every entry through `memo` and returns the disagreements.
    pub fn cross_check(&self, memo: &RecurrenceMemo, exec: Exec) -> Vec<Mismatch> {
        assert_eq!(memo.s(), self.s, "memo built for a different s");
        exec.map(&self.entries, |e| {
            let rec = memo.value(&e.partition, e.r);
            (rec != e.coeff).then(|| Mismatch {
                r: e.r,
                partition: e.partition.clone(),
                closed_form: e.coeff.clone(),
                recurrence: rec,
            })
        })
        .into_iter()
        .flatten()
        .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,parts,coeff\n");
        for e in &self.entries {
            let parts: Vec<String> = e.partition.parts().iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{},{},{}", e.r, parts.join(" "), e.coeff);
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "% n = {}, s = {}", self.n, self.s);
        out.push_str("\\begin{tabular}{rlr}\n\\hline\n");
        let _ = writeln!(
            out,
            "$r$ & $\\lambda$ & $C_{{\\lambda,r}}^{{({})}}$ \\\\",
            self.s
        );
        out.push_str("\\hline\n");
        for e in &self.entries {
            let lam = if e.partition.is_empty() {
                "\\emptyset".to_string()
            } else {
                let parts: Vec<String> = e.partition.parts().iter().map(u32::to_string).collect();
                format!("({})", parts.join(","))
            };
            let _ = writeln!(out, "{} & ${}$ & {} \\\\", e.r, lam, e.coeff);
        }
        out.push_str("\\hline\n\\end{tabular}\n");
        out
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "n = {}, s = {}, {} entries",
            self.n,
            self.s,
            self.len()
        );
        for e in &self.entries {
            let _ = writeln!(out, "r={}  {}  {}", e.r, e.partition, e.coeff);
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TableWire {
    n: u32,
    s: u32,
    entries: Vec<EntryWire>,
}

#[derive(Serialize, Deserialize)]
struct EntryWire {
    r: u32,
    parts: Vec<u32>,
    coeff: String,
}

impl From<CoefficientTable> for TableWire {
    fn from(t: CoefficientTable) -> Self {
        TableWire {
            n: t.n,
            s: t.s,
            entries: t
                .entries
                .into_iter()
                .map(|e| EntryWire {
                    r: e.r,
                    parts: e.partition.parts(),
                    coeff: e.coeff.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<TableWire> for CoefficientTable {
    type Error = Error;

    fn try_from(w: TableWire) -> Result<Self> {
        let entries = w
            .entries
            .into_iter()
            .map(|e| {
                Ok(CoefficientEntry {
                    r: e.r,
                    partition: Partition::new(&e.parts)?,
                    coeff: e
                        .coeff
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient {:?}", e.coeff)))?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(CoefficientTable {
            n: w.n,
            s: w.s,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{binomial, enumerate_partitions};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn factorial_table_and_overflow_path() {
        assert_eq!(factorial(0), big(1));
        assert_eq!(factorial(5), big(120));
        assert_eq!(factorial(66), factorial(64) * 65 * 66);
    }

    #[test]
    fn faa_di_bruno_examples() {
        assert_eq!(faa_di_bruno_coeff(&p(&[2, 1, 1])), big(6));
        assert_eq!(faa_di_bruno_coeff(&p(&[])), big(1));
        assert_eq!(faa_di_bruno_coeff(&p(&[1; 7])), big(1));
        assert_eq!(faa_di_bruno_coeff(&p(&[2, 2])), big(3));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(c_coeff(&p(&[2]), 1, 1).unwrap(), big(1));
        assert_eq!(c_coeff(&p(&[2, 1]), 1, 1).unwrap(), big(2));
        assert_eq!(c_coeff(&p(&[2, 2]), 2, 1).unwrap(), big(1));
        for s in 0..5 {
            assert_eq!(c_coeff(&p(&[]), 0, s).unwrap(), big(1));
        }
        // fewer than r parts above s
        assert_eq!(c_coeff(&p(&[1, 1, 1]), 1, 1).unwrap(), big(0));
        assert_eq!(
            c_coeff(&p(&[2]), 1, 3),
            Err(Error::WeightBelowShift { weight: 2, rs: 3 })
        );
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(c_coeff_by_recurrence(&p(&[1]), 0, 0).unwrap(), big(1));
        assert_eq!(c_coeff_by_recurrence(&p(&[2, 1]), 1, 1).unwrap(), big(2));
        assert_eq!(c_coeff_by_recurrence(&p(&[1, 1]), 1, 0).unwrap(), big(2));
        assert!(c_coeff_by_recurrence(&p(&[2]), 1, 3).is_err());
    }

    #[test]
    fn tables_match_hand_derivatives() {
        let cap = Cap::default();
        let t = coefficient_table(0, 2, cap).unwrap();
        assert_eq!(
            t.entries,
            vec![CoefficientEntry {
                r: 0,
                partition: p(&[]),
                coeff: big(1)
            }]
        );

        let t = coefficient_table(1, 1, cap).unwrap();
        let got: Vec<_> = t
            .entries
            .iter()
            .map(|e| (e.r, e.partition.parts(), e.coeff.clone()))
            .collect();
        assert_eq!(got, vec![(0, vec![1], big(1)), (1, vec![2], big(1))]);

        let t = coefficient_table(2, 1, cap).unwrap();
        let got: Vec<_> = t
            .entries
            .iter()
            .map(|e| (e.r, e.partition.parts(), e.coeff.clone()))
            .collect();
        assert_eq!(
            got,
            vec![
                (0, vec![2], big(1)),
                (0, vec![1, 1], big(1)),
                (1, vec![3], big(1)),
                (1, vec![2, 1], big(2)),
                (2, vec![2, 2], big(1)),
            ]
        );
    }

    #[test]
    fn recurrence_matches_closed_form_small() {
        for s in 0..=2 {
            let memo = RecurrenceMemo::new(s);
            for n in 0..=6 {
                let t = coefficient_table(n, s, Cap::default()).unwrap();
                assert!(
                    t.cross_check(&memo, Exec::Sequential).is_empty(),
                    "n={n} s={s}"
                );
            }
        }
    }

    #[test]
    fn s_zero_is_binomial_times_faa_di_bruno() {
        for n in 0..=8 {
            for lam in enumerate_partitions(n, Cap::default()).unwrap() {
                for r in 0..=lam.length() as u32 {
                    let expected = binomial(lam.length(), r) * faa_di_bruno_coeff(&lam);
                    assert_eq!(c_coeff(&lam, r, 0).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn emitters() {
        let t = coefficient_table(0, 3, Cap::default()).unwrap();
        assert_eq!(t.to_csv(), "r,parts,coeff\n0,,1\n");
        let t = coefficient_table(2, 1, Cap::default()).unwrap();
        assert!(t.to_csv().contains("\n1,2 1,2\n"));
        let latex = t.to_latex();
        assert!(latex.starts_with("% n = 2, s = 1\n\\begin{tabular}"));
        assert!(latex.contains("1 & $(2,1)$ & 2 \\\\"));
        let json = t.to_json();
        assert!(json.contains("\"coeff\": \"2\""));
        assert_eq!(CoefficientTable::from_json(&json).unwrap(), t);
    }
}
