//! Partial and complete Bell polynomials, their modified versions indexed by
//! `(n, k, r, s)`, Stirling numbers of the second kind and Touchard polynomials.
//!
//! Every modified object is defined by its sum over partitions with
//! [`c_coeff`]; the product forms, recurrences and convolutions are separate
//! functions so they can be checked against the definitions.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coefficients::{c_coeff, faa_di_bruno_coeff};
use crate::exponents::Exponents;
use crate::partition::{
    binomial, enumerate_constrained, enumerate_partitions, partitions_with_length, Cap,
};
use crate::{Error, Exec, Result};

/// Sparse integer polynomial in `y_1, y_2, ...`. Terms are kept in ascending
/// weighted degree, then lexicographic exponent order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct YPolynomial {
    terms: BTreeMap<(u64, Exponents), BigInt>,
}

impl YPolynomial {
    pub fn zero() -> Self {
        YPolynomial::default()
    }

    pub fn one() -> Self {
        YPolynomial::monomial(Exponents::one(), BigInt::one())
    }

    /// `y_i`.
    pub fn var(i: u32) -> Self {
        YPolynomial::monomial(Exponents::from_pairs([(i, 1)]), BigInt::one())
    }

    pub fn monomial(exps: Exponents, coeff: BigInt) -> Self {
        let mut p = YPolynomial::zero();
        p.add_term(exps, coeff);
        p
    }

    pub fn add_term(&mut self, exps: Exponents, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry((exps.weighted_degree(), exps)) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter().map(|((_, e), c)| (e, c))
    }

    pub fn coeff(&self, exps: &Exponents) -> BigInt {
        self.terms
            .get(&(exps.weighted_degree(), exps.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn add(&self, other: &YPolynomial) -> YPolynomial {
        let mut out = self.clone();
        for (e, c) in other.iter() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &YPolynomial) -> YPolynomial {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> YPolynomial {
        let mut out = YPolynomial::zero();
        for (e, x) in self.iter() {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &YPolynomial) -> YPolynomial {
        let mut out = YPolynomial::zero();
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    /// The derivation `D(y_i) = y_{i+1}`.
    pub fn derive(&self) -> YPolynomial {
        let mut out = YPolynomial::zero();
        for (e, c) in self.iter() {
            for (mult, next) in e.derivative_terms() {
                out.add_term(next, c * mult);
            }
        }
        out
    }

    /// Renames `y_i` to `y_{i+s}`.
    pub fn shift(&self, s: u32) -> YPolynomial {
        let mut out = YPolynomial::zero();
        for (e, c) in self.iter() {
            out.add_term(e.shift(s), c.clone());
        }
        out
    }

    /// Indices of the variables that occur.
    pub fn variables(&self) -> BTreeSet<u32> {
        self.iter()
            .flat_map(|(e, _)| e.iter().map(|(i, _)| i))
            .collect()
    }

    /// Whether every term has degree `degree` and weighted degree `weighted`.
    pub fn is_homogeneous(&self, degree: u64, weighted: u64) -> bool {
        self.iter()
            .all(|(e, _)| e.degree() == degree && e.weighted_degree() == weighted)
    }

    /// Substitutes `y_i = c^i·x` and returns the coefficients keyed by
    /// `(power of c, power of x)`.
    pub fn geometric_substitution(&self) -> BTreeMap<(u64, u64), BigInt> {
        let mut out: BTreeMap<(u64, u64), BigInt> = BTreeMap::new();
        for (e, c) in self.iter() {
            *out.entry((e.weighted_degree(), e.degree())).or_default() += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn to_json(&self) -> String {
        let wire: Vec<YTermWire> = self
            .iter()
            .map(|(y, c)| YTermWire {
                y: y.clone(),
                coeff: c.to_string(),
            })
            .collect();
        serde_json::to_string_pretty(&wire).expect("polynomial serializes")
    }

    pub fn from_json(text: &str) -> Result<YPolynomial> {
        let wire: Vec<YTermWire> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = YPolynomial::zero();
        for w in wire {
            let coeff: BigInt = w
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", w.coeff)))?;
            out.add_term(w.y, coeff);
        }
        Ok(out)
    }

    /// `3·y_2^2 + 4·y_1·y_3`.
    pub fn to_pretty(&self) -> String {
        self.render("·", |i, e| {
            if e == 1 {
                format!("y_{i}")
            } else {
                format!("y_{i}^{e}")
            }
        })
    }

    pub fn to_latex(&self) -> String {
        self.render(" ", |i, e| {
            if e == 1 {
                format!("y_{{{i}}}")
            } else {
                format!("y_{{{i}}}^{{{e}}}")
            }
        })
    }

    fn render(&self, sep: &str, var: impl Fn(u32, u32) -> String) -> String {
        if self.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.iter().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let magnitude = c.abs();
            let factors: Vec<String> = e.iter().map(|(i, p)| var(i, p)).collect();
            if factors.is_empty() {
                let _ = write!(out, "{magnitude}");
            } else {
                if !magnitude.is_one() {
                    let _ = write!(out, "{magnitude}{sep}");
                }
                out.push_str(&factors.join(sep));
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct YTermWire {
    y: Exponents,
    coeff: String,
}

/// `B_{n,k} = Σ_{λ ⊢ n, ℓ(λ) = k} faa(λ)·∏ y_i^{m_i}`; zero when `k > n`.
pub fn partial_bell(n: u32, k: u32, cap: Cap) -> Result<YPolynomial> {
    let mut out = YPolynomial::zero();
    if k > n {
        return Ok(out);
    }
    for lambda in partitions_with_length(n, k, cap)? {
        out.add_term(
            Exponents::from_pairs(lambda.multiplicities()),
            faa_di_bruno_coeff(&lambda),
        );
    }
    Ok(out)
}

/// `B_n = Σ_k B_{n,k}`, with `B_0 = 1`.
pub fn complete_bell(n: u32, cap: Cap) -> Result<YPolynomial> {
    let mut out = YPolynomial::zero();
    for lambda in enumerate_partitions(n, cap)? {
        out.add_term(
            Exponents::from_pairs(lambda.multiplicities()),
            faa_di_bruno_coeff(&lambda),
        );
    }
    Ok(out)
}

/// `Σ C_{λ,r}^{(s)}·∏ y_i^{m_i}` over `λ ⊢ n + rs` of length `k` with at least
/// `r` parts above `s`. Zero unless `r <= k <= n`.
pub fn modified_partial_bell(n: u32, k: u32, r: u32, s: u32, cap: Cap) -> Result<YPolynomial> {
    let mut out = YPolynomial::zero();
    if r > k || k > n {
        return Ok(out);
    }
    for lambda in enumerate_constrained(n, r, s, cap)? {
        if lambda.length() == u64::from(k) {
            out.add_term(
                Exponents::from_pairs(lambda.multiplicities()),
                c_coeff(&lambda, r, s)?,
            );
        }
    }
    Ok(out)
}

/// `Σ_{r <= k <= n} B̃_{n,k,r}^{(s)}`.
pub fn modified_complete_bell(n: u32, s: u32, cap: Cap) -> Result<YPolynomial> {
    let mut out = YPolynomial::zero();
    for r in 0..=n {
        for lambda in enumerate_constrained(n, r, s, cap)? {
            out.add_term(
                Exponents::from_pairs(lambda.multiplicities()),
                c_coeff(&lambda, r, s)?,
            );
        }
    }
    Ok(out)
}

/// `Σ_{p=r}^{n-k+r} binom(n,p)·B_{n-p,k-r}(y_1, ...)·B_{p,r}(y_{s+1}, ...)`.
pub fn product_form_partial(n: u32, k: u32, r: u32, s: u32, cap: Cap) -> Result<YPolynomial> {
    let mut out = YPolynomial::zero();
    if r > k || k > n {
        return Ok(out);
    }
    cap.check(u64::from(n) + u64::from(r) * u64::from(s))?;
    for p in r..=(n - k + r) {
        let left = partial_bell(n - p, k - r, cap)?;
        let right = partial_bell(p, r, cap)?.shift(s);
        out = out.add(&left.mul(&right).scale(&binomial(u64::from(n), p)));
    }
    Ok(out)
}

/// `Σ_p binom(n,p)·B_{n-p}(y_1, ...)·B_p(y_{s+1}, ...)`.
pub fn product_form_complete(n: u32, s: u32, cap: Cap) -> Result<YPolynomial> {
    cap.check(u64::from(n) + u64::from(n) * u64::from(s))?;
    let mut out = YPolynomial::zero();
    for p in 0..=n {
        let left = complete_bell(n - p, cap)?;
        let right = complete_bell(p, cap)?.shift(s);
        out = out.add(&left.mul(&right).scale(&binomial(u64::from(n), p)));
    }
    Ok(out)
}

/// Right-hand side of the degree-raising recurrence for `B̃_{n+1,k+1,r}^{(s)}`:
/// `Σ_l binom(n,l)·y_{l+1}·B̃_{n-l,k,r} + Σ_l binom(n,l)·y_{l+s+1}·B̃_{n-l,k,r-1}`.
pub fn modified_bell_recurrence(n: u32, k: u32, r: u32, s: u32, cap: Cap) -> Result<YPolynomial> {
    let mut out = YPolynomial::zero();
    if k > n {
        return Ok(out);
    }
    for l in 0..=(n - k) {
        let b = binomial(u64::from(n), l);
        let same = modified_partial_bell(n - l, k, r, s, cap)?;
        out = out.add(&YPolynomial::var(l + 1).mul(&same).scale(&b));
        if r > 0 {
            let lower = modified_partial_bell(n - l, k, r - 1, s, cap)?;
            out = out.add(&YPolynomial::var(l + s + 1).mul(&lower).scale(&b));
        }
    }
    Ok(out)
}

/// `S(0..=n_max, 0..=n_max)` from `S(0,0) = 1` and
/// `S(n+1,k+1) = Σ_{l=0}^{n} binom(n,l)·S(n-l,k)`.
pub fn stirling2_table(n_max: u32) -> Vec<Vec<BigInt>> {
    let size = n_max as usize + 1;
    let mut table = vec![vec![BigInt::zero(); size]; size];
    table[0][0] = BigInt::one();
    for n in 0..n_max {
        for k in 0..=n {
            let mut acc = BigInt::zero();
            for l in 0..=n {
                acc += binomial(u64::from(n), l) * &table[(n - l) as usize][k as usize];
            }
            table[n as usize + 1][k as usize + 1] = acc;
        }
    }
    table
}

/// `S(n,k)`, zero when `k > n`.
pub fn stirling2(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    stirling2_table(n)[n as usize][k as usize].clone()
}

/// `S̃(n,k,r)` as the coefficient sum of `B̃_{n,k,r}^{(0)}`.
pub fn modified_stirling(n: u32, k: u32, r: u32) -> Result<BigInt> {
    Ok(
        modified_partial_bell(n, k, r, 0, Cap::new(n.max(Cap::DEFAULT)))?
            .iter()
            .map(|(_, c)| c.clone())
            .sum(),
    )
}

/// The coefficient of `c^{n+rs}·x^k` after `y_i = c^i·x` in `B̃_{n,k,r}^{(s)}`.
pub fn modified_stirling_via_substitution(
    n: u32,
    k: u32,
    r: u32,
    s: u32,
    cap: Cap,
) -> Result<BigInt> {
    let key = (u64::from(n) + u64::from(r) * u64::from(s), u64::from(k));
    Ok(modified_partial_bell(n, k, r, s, cap)?
        .geometric_substitution()
        .remove(&key)
        .unwrap_or_default())
}

/// `S̃(n, 0..=n, 0..=n)` for one `n` from a single pass over the partitions of `n`.
fn modified_stirling_row(n: u32, cap: Cap) -> Result<Vec<Vec<BigInt>>> {
    let size = n as usize + 1;
    let mut row = vec![vec![BigInt::zero(); size]; size];
    for lambda in enumerate_partitions(n, cap)? {
        let k = lambda.length() as u32;
        for r in 0..=k {
            row[k as usize][r as usize] += c_coeff(&lambda, r, 0)?;
        }
    }
    Ok(row)
}

/// `Σ_{p=r}^{n-k+r} binom(n,p)·S(n-p,k-r)·S(p,r)`.
pub fn stirling_convolution(n: u32, k: u32, r: u32) -> BigInt {
    convolution(n, k, r, true)
}

/// The convolution as printed, without the `binom(n,p)` factor.
pub fn stirling_convolution_printed(n: u32, k: u32, r: u32) -> BigInt {
    convolution(n, k, r, false)
}

fn convolution(n: u32, k: u32, r: u32, weighted: bool) -> BigInt {
    if r > k || k > n {
        return BigInt::zero();
    }
    let table = stirling2_table(n);
    let mut acc = BigInt::zero();
    for p in r..=(n - k + r) {
        let term = &table[(n - p) as usize][(k - r) as usize] * &table[p as usize][r as usize];
        acc += if weighted {
            term * binomial(u64::from(n), p)
        } else {
            term
        };
    }
    acc
}

/// Predicted `S̃(n+1,k+1,r) = Σ_{l=0}^{n-k} binom(n,l)·(S̃(n-l,k,r) + S̃(n-l,k,r-1))`.
pub fn modified_stirling_recurrence(n: u32, k: u32, r: u32) -> Result<BigInt> {
    stirling_recurrence(n, k, r, true)
}

/// The recurrence as printed, with the summand not depending on `l`.
pub fn modified_stirling_recurrence_printed(n: u32, k: u32, r: u32) -> Result<BigInt> {
    stirling_recurrence(n, k, r, false)
}

fn stirling_recurrence(n: u32, k: u32, r: u32, shifted: bool) -> Result<BigInt> {
    if k > n {
        return Ok(BigInt::zero());
    }
    let mut acc = BigInt::zero();
    for l in 0..=(n - k) {
        let m = if shifted { n - l } else { n };
        let mut inner = modified_stirling(m, k, r)?;
        if r > 0 {
            inner += modified_stirling(m, k, r - 1)?;
        }
        acc += binomial(u64::from(n), l) * inner;
    }
    Ok(acc)
}

/// Coefficients of `T_n(x) = Σ_k S(n,k)·x^k`, ascending in `k`.
pub fn touchard(n: u32) -> Vec<BigInt> {
    stirling2_table(n).swap_remove(n as usize)
}

/// Polynomial in `x, y` keyed by `(deg_x, deg_y)`.
pub type Bivariate = BTreeMap<(u32, u32), BigInt>;

/// `Σ_p binom(n,p)·T_{n-p}(x)·T_p(y)`.
pub fn touchard_convolution(n: u32) -> Bivariate {
    let table = stirling2_table(n);
    let mut out = Bivariate::new();
    for p in 0..=n {
        let b = binomial(u64::from(n), p);
        for (i, a) in table[(n - p) as usize].iter().enumerate() {
            for (j, c) in table[p as usize].iter().enumerate() {
                if !a.is_zero() && !c.is_zero() {
                    *out.entry((i as u32, j as u32)).or_default() += &b * a * c;
                }
            }
        }
    }
    out
}

/// `T_n(x + y)` expanded.
pub fn touchard_at_sum(n: u32) -> Bivariate {
    let mut out = Bivariate::new();
    for (k, s) in touchard(n).iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        for j in 0..=k as u32 {
            *out.entry((j, k as u32 - j)).or_default() += s * binomial(k as u64, j);
        }
    }
    out
}

/// `S̃(n,k,r)` for `0 <= r <= k <= n <= n_max`, from the definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    pub n_max: u32,
    values: Vec<Vec<Vec<BigInt>>>,
}

#[derive(Serialize)]
struct StirlingRowWire {
    n: u32,
    k: u32,
    r: u32,
    value: String,
}

impl StirlingTable {
    pub fn build(n_max: u32, cap: Cap) -> Result<StirlingTable> {
        StirlingTable::build_with(n_max, cap, Exec::default())
    }

    pub fn build_with(n_max: u32, cap: Cap, exec: Exec) -> Result<StirlingTable> {
        cap.check(u64::from(n_max))?;
        let ns: Vec<u32> = (0..=n_max).collect();
        let values = exec.try_map(&ns, |&n| modified_stirling_row(n, cap))?;
        Ok(StirlingTable { n_max, values })
    }

    /// Zero outside `0 <= r <= k <= n <= n_max`.
    pub fn get(&self, n: u32, k: u32, r: u32) -> BigInt {
        self.values
            .get(n as usize)
            .and_then(|row| row.get(k as usize))
            .and_then(|cell| cell.get(r as usize))
            .cloned()
            .unwrap_or_default()
    }

    /// `(n, k, r, S̃)` in ascending `n`, then `k`, then `r`.
    pub fn rows(&self) -> impl Iterator<Item = (u32, u32, u32, &BigInt)> + '_ {
        self.values.iter().enumerate().flat_map(|(n, row)| {
            row.iter().enumerate().flat_map(move |(k, cell)| {
                cell.iter()
                    .take(k + 1)
                    .enumerate()
                    .map(move |(r, v)| (n as u32, k as u32, r as u32, v))
            })
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,r,value\n");
        for (n, k, r, v) in self.rows() {
            let _ = writeln!(out, "{n},{k},{r},{v}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        let wire: Vec<StirlingRowWire> = self
            .rows()
            .map(|(n, k, r, v)| StirlingRowWire {
                n,
                k,
                r,
                value: v.to_string(),
            })
            .collect();
        serde_json::to_string_pretty(&wire).expect("table serializes")
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::from(
            "\\begin{tabular}{rrrr}\n$n$ & $k$ & $r$ & $\\widetilde{S}(n,k,r)$ \\\\\n\\hline\n",
        );
        for (n, k, r, v) in self.rows() {
            let _ = writeln!(out, "{n} & {k} & {r} & {v} \\\\");
        }
        out.push_str("\\end{tabular}\n");
        out
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        for (n, k, r, v) in self.rows() {
            let _ = writeln!(out, "S~({n},{k},{r}) = {v}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(pairs: &[(u32, u32)]) -> Exponents {
        Exponents::from_pairs(pairs.iter().copied())
    }

    fn poly(terms: &[(&[(u32, u32)], i64)]) -> YPolynomial {
        let mut p = YPolynomial::zero();
        for (e, c) in terms {
            p.add_term(y(e), BigInt::from(*c));
        }
        p
    }

    fn cap() -> Cap {
        Cap::default()
    }

    #[test]
    fn partial_bell_examples() {
        assert_eq!(
            partial_bell(4, 2, cap()).unwrap(),
            poly(&[(&[(2, 2)], 3), (&[(1, 1), (3, 1)], 4)])
        );
        assert_eq!(partial_bell(0, 0, cap()).unwrap(), YPolynomial::one());
        for n in 1..6 {
            assert_eq!(partial_bell(n, 1, cap()).unwrap(), YPolynomial::var(n));
        }
        assert!(partial_bell(2, 3, cap()).unwrap().is_empty());
    }

    #[test]
    fn modified_partial_bell_examples() {
        assert_eq!(
            modified_partial_bell(2, 2, 1, 0, cap()).unwrap(),
            poly(&[(&[(1, 2)], 2)])
        );
        assert_eq!(
            modified_partial_bell(1, 1, 1, 1, cap()).unwrap(),
            YPolynomial::var(2)
        );
        for s in 0..3 {
            assert_eq!(
                modified_partial_bell(5, 3, 0, s, cap()).unwrap(),
                partial_bell(5, 3, cap()).unwrap()
            );
        }
        assert!(modified_partial_bell(3, 1, 2, 1, cap()).unwrap().is_empty());
    }

    #[test]
    fn modified_complete_bell_examples() {
        assert_eq!(
            modified_complete_bell(0, 4, cap()).unwrap(),
            YPolynomial::one()
        );
        assert_eq!(
            modified_complete_bell(1, 1, cap()).unwrap(),
            YPolynomial::var(1).add(&YPolynomial::var(2))
        );
        let expected = poly(&[
            (&[(1, 2)], 1),
            (&[(2, 1)], 1),
            (&[(1, 1), (2, 1)], 2),
            (&[(2, 2)], 1),
            (&[(3, 1)], 1),
        ]);
        assert_eq!(modified_complete_bell(2, 1, cap()).unwrap(), expected);
    }

    #[test]
    fn product_form_examples() {
        assert_eq!(
            product_form_partial(2, 2, 1, 0, cap()).unwrap(),
            poly(&[(&[(1, 2)], 2)])
        );
        assert_eq!(
            product_form_partial(1, 1, 1, 1, cap()).unwrap(),
            YPolynomial::var(2)
        );
        assert_eq!(
            product_form_partial(4, 2, 0, 3, cap()).unwrap(),
            partial_bell(4, 2, cap()).unwrap()
        );
        assert_eq!(
            product_form_complete(3, 2, cap()).unwrap(),
            modified_complete_bell(3, 2, cap()).unwrap()
        );
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(0, 0), BigInt::one());
        assert_eq!(stirling2(3, 0), BigInt::zero());
        assert_eq!(stirling2(2, 5), BigInt::zero());
        assert_eq!(modified_stirling(2, 2, 1).unwrap(), BigInt::from(2));
        for k in 0..=5 {
            assert_eq!(modified_stirling(5, k, 0).unwrap(), stirling2(5, k));
        }
        assert_eq!(modified_stirling(2, 1, 2).unwrap(), BigInt::zero());
    }

    #[test]
    fn convolution_examples() {
        assert_eq!(stirling_convolution(2, 2, 1), BigInt::from(2));
        assert_eq!(stirling_convolution_printed(2, 2, 1), BigInt::one());
        assert_eq!(stirling_convolution(3, 2, 1), BigInt::from(6));
        assert_eq!(modified_stirling(3, 2, 1).unwrap(), BigInt::from(6));
        for k in 0..=6 {
            assert_eq!(stirling_convolution(6, k, 0), stirling2(6, k));
        }
    }

    #[test]
    fn recurrence_examples() {
        // 1·(6 + 3) + 3·(2 + 1) against the l-independent 4·(6 + 3)
        assert_eq!(
            modified_stirling_recurrence(3, 2, 1).unwrap(),
            BigInt::from(18)
        );
        assert_eq!(modified_stirling(4, 3, 1).unwrap(), BigInt::from(18));
        assert_eq!(
            modified_stirling_recurrence_printed(3, 2, 1).unwrap(),
            BigInt::from(36)
        );
    }

    #[test]
    fn touchard_examples() {
        assert_eq!(touchard(0), vec![BigInt::one()]);
        let t3: Vec<BigInt> = [0, 1, 3, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(touchard(3), t3);
        assert_eq!(touchard_convolution(4), touchard_at_sum(4));
    }

    #[test]
    fn geometric_substitution_collects_by_degrees() {
        let p = modified_partial_bell(3, 2, 1, 2, cap()).unwrap();
        let g = p.geometric_substitution();
        assert_eq!(g.len(), 1);
        assert_eq!(g[&(5, 2)], BigInt::from(6));
        assert_eq!(
            modified_stirling_via_substitution(3, 2, 1, 2, cap()).unwrap(),
            BigInt::from(6)
        );
    }

    #[test]
    fn derivation_and_shift() {
        let p = poly(&[(&[(1, 2)], 1)]);
        assert_eq!(p.derive(), poly(&[(&[(1, 1), (2, 1)], 2)]));
        assert_eq!(p.shift(2), poly(&[(&[(3, 2)], 1)]));
        assert_eq!(p.sub(&p), YPolynomial::zero());
    }

    #[test]
    fn rendering_and_json() {
        let p = partial_bell(4, 2, cap()).unwrap();
        assert_eq!(p.to_pretty(), "4·y_1·y_3 + 3·y_2^2");
        assert_eq!(p.to_latex(), "4 y_{1} y_{3} + 3 y_{2}^{2}");
        assert_eq!(YPolynomial::from_json(&p.to_json()).unwrap(), p);
        assert_eq!(YPolynomial::one().to_pretty(), "1");
        assert_eq!(YPolynomial::zero().to_pretty(), "0");
        assert_eq!(
            YPolynomial::var(1).scale(&BigInt::from(-2)).to_pretty(),
            "-2·y_1"
        );
    }

    #[test]
    fn stirling_table_rows() {
        let t = StirlingTable::build(2, cap()).unwrap();
        let csv = t.to_csv();
        assert!(csv.starts_with("n,k,r,value\n0,0,0,1\n"));
        assert!(csv.contains("\n2,2,1,2\n"));
        assert_eq!(t.rows().count(), 1 + 3 + 6);
        assert_eq!(t.get(2, 2, 2), BigInt::one());
        assert_eq!(t.get(5, 0, 0), BigInt::zero());
        let seq = StirlingTable::build_with(4, cap(), Exec::Sequential).unwrap();
        assert_eq!(seq, StirlingTable::build(4, cap()).unwrap());
    }
}
