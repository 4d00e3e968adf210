//! The identity suite: every closed formula compared against an independent
//! route on a full range of instances.
//!
//! Each `check_*` function returns one [`IdentityResult`]. [`run_suite`]
//! runs them all at the bounds of a [`VerifyConfig`] and collects the
//! results in a fixed order, so the JSON report is byte-for-byte
//! reproducible from the configuration alone.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bell::{
    self, modified_complete_bell, modified_partial_bell, modified_stirling,
    modified_stirling_via_substitution, partial_bell, product_form_complete, product_form_partial,
    stirling2_table, YPolynomial,
};
use crate::coefficients::{
    c_coeff, coefficient_table, coefficient_table_with, faa_di_bruno_coeff, RecurrenceMemo,
};
use crate::diffalg::{
    constant_g_oracle, faa_expansion, formula_expansion, independent_oracle,
    leibniz_product_expansion, nth_derivative_expansion_with, DiffPolynomial,
};
use crate::exponents::Exponents;
use crate::partition::{binomial, enumerate_constrained, enumerate_partitions, Cap};
use crate::poly::{
    check_against_expansion, check_main_theorem, random_triples, RationalPolynomial,
};
use crate::symmetric::{
    elementary_by_shifted_subpartitions, elementary_by_subpartitions, elementary_moments,
    newton_residual, subtract_transform,
};
use crate::{Exec, Multiset, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Evaluated and reported, but not a contract.
    Informational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub name: String,
    pub status: Status,
    pub instances: u64,
    pub mismatches: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl IdentityResult {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Instance and mismatch counter; keeps the first mismatch as the detail.
#[derive(Default)]
struct Tally {
    instances: u64,
    mismatches: u64,
    first: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.mismatches += 1;
            if self.first.is_none() {
                self.first = Some(describe());
            }
        }
    }

    fn record_result(&mut self, outcome: Result<bool>, describe: impl FnOnce() -> String) {
        match outcome {
            Ok(ok) => self.record(ok, describe),
            Err(e) => {
                let label = describe();
                self.record(false, || format!("{label}: {e}"));
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.instances += other.instances;
        self.mismatches += other.mismatches;
        if self.first.is_none() {
            self.first = other.first;
        }
    }

    fn finish(self, name: &str) -> IdentityResult {
        IdentityResult {
            name: name.to_string(),
            status: if self.mismatches == 0 {
                Status::Pass
            } else {
                Status::Fail
            },
            instances: self.instances,
            mismatches: self.mismatches,
            detail: self.first,
        }
    }

    fn informational(self, name: &str, detail: String) -> IdentityResult {
        IdentityResult {
            name: name.to_string(),
            status: Status::Informational,
            instances: self.instances,
            mismatches: self.mismatches,
            detail: Some(detail),
        }
    }
}

fn grid(max_n: u32, max_s: u32) -> Vec<(u32, u32)> {
    (0..=max_n)
        .flat_map(|n| (0..=max_s).map(move |s| (n, s)))
        .collect()
}

fn merged(parts: Vec<Tally>) -> Tally {
    parts.into_iter().fold(Tally::default(), |mut acc, t| {
        acc.merge(t);
        acc
    })
}

/// `p(n)` from Euler's pentagonal recurrence.
pub fn partition_counts(max_n: u32) -> Vec<u128> {
    let mut p = vec![0u128; max_n as usize + 1];
    p[0] = 1;
    for n in 1..=max_n as i64 {
        let mut acc: i128 = 0;
        for k in 1i64.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[(n - g1) as usize] as i128;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                acc += sign * p[(n - g2) as usize] as i128;
            }
        }
        p[n as usize] = acc as u128;
    }
    p
}

/// `S(0..=n_max, ·)` by `S(n+1,k) = k·S(n,k) + S(n,k-1)`.
pub fn stirling2_triangular(n_max: u32) -> Vec<Vec<BigInt>> {
    let size = n_max as usize + 1;
    let mut t = vec![vec![BigInt::zero(); size]; size];
    t[0][0] = BigInt::one();
    for n in 1..size {
        for k in 1..=n {
            t[n][k] = &t[n - 1][k] * k + &t[n - 1][k - 1];
        }
    }
    t
}

/// Partition counts against the pentagonal recurrence, plus ordering and
/// weight of every enumerated partition.
pub fn check_partition_enumeration(max_n: u32, cap: Cap) -> IdentityResult {
    let counts = partition_counts(max_n);
    let mut t = Tally::default();
    for n in 0..=max_n {
        t.record_result(
            enumerate_partitions(n, cap).map(|list| {
                list.len() as u128 == counts[n as usize]
                    && list.windows(2).all(|w| w[0] > w[1])
                    && list.iter().all(|p| p.weight() == u64::from(n))
            }),
            || format!("n={n}"),
        );
    }
    t.finish("partition enumeration: count p(n), strictly decreasing order")
}

/// The pruned constrained enumeration against filtering all partitions of `n + rs`.
pub fn check_constrained_enumeration(max_n: u32, max_s: u32, cap: Cap) -> IdentityResult {
    let mut t = Tally::default();
    for (n, s) in grid(max_n, max_s) {
        for r in 0..=n + 1 {
            let outcome = (|| {
                let fast = enumerate_constrained(n, r, s, cap)?;
                let slow: Vec<_> = enumerate_partitions(n + r * s, cap)?
                    .into_iter()
                    .filter(|l| l.truncate_above(s).length() >= u64::from(r))
                    .collect();
                Ok(if r > n { fast.is_empty() } else { fast == slow })
            })();
            t.record_result(outcome, || format!("n={n} r={r} s={s}"));
        }
    }
    t.finish("constrained enumeration equals filtered enumeration")
}

/// Every multiset of at most `max_card` entries from `0..=max_entry`.
pub fn all_multisets(max_card: usize, max_entry: u64) -> Vec<Multiset> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        current: &mut Vec<u64>,
        min: u64,
        max_card: usize,
        max_entry: u64,
        out: &mut Vec<Multiset>,
    ) {
        out.push(Multiset::from_u64s(current));
        if current.len() == max_card {
            return;
        }
        for v in min..=max_entry {
            current.push(v);
            rec(current, v, max_card, max_entry, out);
            current.pop();
        }
    }
    rec(&mut current, 0, max_card, max_entry, &mut out);
    out
}

/// Newton's identity on every multiset of the given size, for `1 <= r <= card + 1`.
pub fn check_newton(max_card: usize, max_entry: u64, exec: Exec) -> IdentityResult {
    let sets = all_multisets(max_card, max_entry);
    let tallies = exec.map(&sets, |b| {
        let mut t = Tally::default();
        for r in 1..=b.len() as u32 + 1 {
            t.record_result(newton_residual(b, r).map(|x| x.is_zero()), || {
                format!("b={:?} r={r}", b.values())
            });
        }
        t
    });
    merged(tallies).finish("Newton identity: Σ(-1)^(k-1) p_k e_(r-k) = r e_r")
}

/// The subtract transform against recomputing `e` on the modified multiset,
/// for every distinct value and `c ∈ {0, 1, value}`.
pub fn check_subtract_transform(max_card: usize, max_entry: u64, exec: Exec) -> IdentityResult {
    let sets = all_multisets(max_card, max_entry);
    let tallies = exec.map(&sets, |b| {
        let mut t = Tally::default();
        let mut distinct = b.values().to_vec();
        distinct.dedup();
        let max_r = b.len();
        for v in &distinct {
            let mut cs = vec![BigInt::zero(), BigInt::one(), v.clone()];
            cs.retain(|c| c <= v);
            cs.sort();
            cs.dedup();
            for c in cs {
                let outcome = (|| {
                    let lhs = subtract_transform(b, v, &c, max_r)?;
                    let mut values = b.remove_one(v)?.values().to_vec();
                    values.push(v - &c);
                    let rhs = elementary_moments(&Multiset::new(values)?, max_r);
                    Ok(lhs == rhs)
                })();
                t.record_result(outcome, || format!("b={:?} l={v} c={c}", b.values()));
            }
        }
        t
    });
    merged(tallies).finish("subtract transform: e_r after b_l -> b_l - c")
}

/// Sub-partition sums against the generating function, on every `η ⊢ m`
/// whose parts are all at least `s`.
pub fn check_subpartition_sums(max_m: u32, max_s: u32, cap: Cap) -> IdentityResult {
    let mut t = Tally::default();
    for m in 0..=max_m {
        let Ok(parts) = enumerate_partitions(m, cap) else {
            t.record(false, || format!("m={m}: cap"));
            continue;
        };
        for s in 0..=max_s {
            for eta in parts
                .iter()
                .filter(|e| e.smallest_part().is_none_or(|p| p >= s))
            {
                let len = eta.length() as u32;
                let gf = eta
                    .pochhammer_map(s)
                    .map(|b| elementary_moments(&b, len as usize + 1));
                for r in 0..=len + 1 {
                    let outcome = match &gf {
                        Ok(gf) => {
                            elementary_by_subpartitions(eta, s, r).map(|x| x == gf.get(r as usize))
                        }
                        Err(e) => Err(e.clone()),
                    };
                    t.record_result(outcome, || format!("eta={eta} s={s} r={r}"));
                }
            }
        }
    }
    t.finish("e_r((η)_s) as a weighted sum over sub-partitions")
}

/// The shifted sub-partition form of `e_r((λ^{>s})_s)` on every `λ ⊢ m`.
pub fn check_shifted_subpartition_sums(max_m: u32, max_s: u32, cap: Cap) -> IdentityResult {
    let mut t = Tally::default();
    for m in 0..=max_m {
        let Ok(parts) = enumerate_partitions(m, cap) else {
            t.record(false, || format!("m={m}: cap"));
            continue;
        };
        for s in 0..=max_s {
            for lambda in &parts {
                let len = lambda.length() as u32;
                let gf = lambda
                    .truncate_above(s)
                    .pochhammer_map(s)
                    .map(|b| elementary_moments(&b, len as usize + 1));
                for r in 0..=len + 1 {
                    let outcome = gf.as_ref().map(|gf| {
                        elementary_by_shifted_subpartitions(lambda, s, r) == gf.get(r as usize)
                    });
                    t.record_result(outcome.map_err(Clone::clone), || {
                        format!("lambda={lambda} s={s} r={r}")
                    });
                }
            }
        }
    }
    t.finish("e_r((λ^{>s})_s) as a sum over shifted sub-partitions")
}

/// `C_{λ,r}^{(0)} = binom(ℓ(λ), r)·C_{λ,0}^{(0)}` for `λ ⊢ n`.
pub fn check_binomial_specialization(max_n: u32, cap: Cap) -> IdentityResult {
    let mut t = Tally::default();
    for n in 0..=max_n {
        for lambda in enumerate_partitions(n, cap).unwrap_or_default() {
            let len = lambda.length();
            for r in 0..=len as u32 {
                let outcome = (|| {
                    let lhs = c_coeff(&lambda, r, 0)?;
                    let rhs = binomial(len, r) * c_coeff(&lambda, 0, 0)?;
                    Ok(lhs == rhs)
                })();
                t.record_result(outcome, || format!("lambda={lambda} r={r}"));
            }
        }
    }
    t.finish("s = 0 coefficients: C_{λ,r} = binom(ℓ(λ), r)·C_{λ,0}")
}

/// Every table entry is an integer; [`c_coeff`] refuses non-integral values.
pub fn check_integrality(max_n: u32, max_s: u32, cap: Cap, exec: Exec) -> IdentityResult {
    let tallies = exec.map(&grid(max_n, max_s), |&(n, s)| {
        let mut t = Tally::default();
        match coefficient_table_with(n, s, cap, Exec::Sequential) {
            Ok(table) => {
                for _ in &table.entries {
                    t.record(true, String::new);
                }
            }
            Err(e) => t.record(false, || format!("n={n} s={s}: {e}")),
        }
        t
    });
    merged(tallies).finish("every coefficient C_{λ,r}^{(s)} is an integer")
}

/// The one-step recurrence against the closed form on whole tables.
pub fn check_recurrence(max_n: u32, max_s: u32, cap: Cap, exec: Exec) -> IdentityResult {
    let tallies = exec.map(&grid(max_n, max_s), |&(n, s)| {
        let mut t = Tally::default();
        match coefficient_table(n, s, cap) {
            Ok(table) => {
                let memo = RecurrenceMemo::new(s);
                let bad = table.cross_check(&memo, Exec::Sequential);
                t.instances += table.len() as u64;
                t.mismatches += bad.len() as u64;
                if let Some(m) = bad.first() {
                    t.first = Some(format!(
                        "n={n} s={s} r={} lambda={}: closed {} recurrence {}",
                        m.r, m.partition, m.closed_form, m.recurrence
                    ));
                }
            }
            Err(e) => t.record(false, || format!("n={n} s={s}: {e}")),
        }
        t
    });
    merged(tallies).finish("recurrence over λ_j and λ - ε_(s+1) reproduces C_{λ,r}^{(s)}")
}

/// `r = 0`: the recurrence and the closed form both give the classical coefficient.
pub fn check_r0_slice(max_n: u32, max_s: u32, cap: Cap) -> IdentityResult {
    let mut t = Tally::default();
    for s in 0..=max_s {
        let memo = RecurrenceMemo::new(s);
        for n in 0..=max_n {
            for lambda in enumerate_partitions(n, cap).unwrap_or_default() {
                let outcome = (|| {
                    let faa = faa_di_bruno_coeff(&lambda);
                    Ok(c_coeff(&lambda, 0, s)? == faa && memo.coeff(&lambda, 0)? == faa)
                })();
                t.record_result(outcome, || format!("lambda={lambda} s={s}"));
            }
        }
    }
    t.finish("r = 0 coefficients equal n!/∏(i!)^m_i m_i!")
}

/// The closed-form expansion against repeated symbolic differentiation.
pub fn check_oracle_equality(max_n: u32, max_s: u32, cap: Cap, exec: Exec) -> IdentityResult {
    let tallies = exec.map(&grid(max_n, max_s), |&(n, s)| {
        let mut t = Tally::default();
        let outcome = (|| {
            let lhs = nth_derivative_expansion_with(n, s, cap, Exec::Sequential)?;
            let rhs = formula_expansion(n, s, cap)?;
            Ok(lhs == rhs)
        })();
        t.record_result(outcome, || format!("n={n} s={s}"));
        t
    });
    merged(tallies).finish("closed-form n-th derivative equals symbolic D^n(F_0 G_0)")
}

/// The classical formula against the constant-`g` oracle, with the
/// `3·y_2² + 4·y_1·y_3` coefficients read back when `max_n >= 4`.
pub fn check_faa_di_bruno(max_n: u32, cap: Cap) -> IdentityResult {
    let mut t = Tally::default();
    for n in 0..=max_n {
        let outcome = (|| Ok(faa_expansion(n, cap)? == constant_g_oracle(n, cap)?))();
        t.record_result(outcome, || format!("n={n}"));
    }
    if max_n >= 4 {
        let outcome = (|| {
            let oracle = constant_g_oracle(4, cap)?;
            let pick = |y: &[(u32, u32)]| {
                oracle.coeff(&crate::diffalg::DiffMonomial::new(
                    2,
                    0,
                    Exponents::from_pairs(y.iter().copied()),
                    Exponents::one(),
                ))
            };
            Ok(pick(&[(2, 2)]) == BigInt::from(3) && pick(&[(1, 1), (3, 1)]) == BigInt::from(4))
        })();
        t.record_result(outcome, || "B_{4,2} coefficients".to_string());
    }
    t.finish("classical Faà di Bruno formula equals the constant-g oracle")
}

/// Product rule plus the classical formula against differentiation with an
/// independent inner function `ψ`.
pub fn check_product_rule(max_n: u32, cap: Cap, exec: Exec) -> IdentityResult {
    let ns: Vec<u32> = (0..=max_n).collect();
    let tallies = exec.map(&ns, |&n| {
        let mut t = Tally::default();
        let outcome = (|| Ok(leibniz_product_expansion(n, cap)? == independent_oracle(n, cap)?))();
        t.record_result(outcome, || format!("n={n}"));
        t
    });
    merged(tallies).finish("Leibniz rule with Faà di Bruno on each factor, independent ψ")
}

/// Substituting `ψ = φ^(s)` in the independent expansion gives the composed one.
pub fn check_psi_bridge(max_n: u32, max_s: u32, cap: Cap, exec: Exec) -> IdentityResult {
    let ns: Vec<u32> = (0..=max_n).collect();
    let tallies = exec.map(&ns, |&n| {
        let mut t = Tally::default();
        match independent_oracle(n, cap) {
            Ok(general) => {
                for s in 0..=max_s {
                    let outcome = (|| {
                        let composed = nth_derivative_expansion_with(n, s, cap, Exec::Sequential)?;
                        Ok(general.substitute_psi(s) == composed)
                    })();
                    t.record_result(outcome, || format!("n={n} s={s}"));
                }
            }
            Err(e) => t.record(false, || format!("n={n}: {e}")),
        }
        t
    });
    merged(tallies)
        .finish("ψ = φ^(s) substitution turns the independent expansion into the composed one")
}

/// Each term `F_a·G_b·∏Y^m` of the expansion has degree `a + b` and weighted degree `n + b·s`.
pub fn check_weighted_degree(max_n: u32, max_s: u32, cap: Cap) -> IdentityResult {
    let mut t = Tally::default();
    for (n, s) in grid(max_n, max_s) {
        match formula_expansion(n, s, cap) {
            Ok(p) => {
                for (m, _) in p.iter() {
                    let ok = m.y.degree() == u64::from(m.f + m.g)
                        && m.y.weighted_degree() == u64::from(n) + u64::from(m.g) * u64::from(s);
                    t.record(ok, || {
                        format!("n={n} s={s} term f={} g={} y={:?}", m.f, m.g, m.y)
                    });
                }
            }
            Err(e) => t.record(false, || format!("n={n} s={s}: {e}")),
        }
    }
    t.finish("expansion terms have degree ℓ(λ) and weighted degree n + rs")
}

/// Exact polynomial equality on seeded random `(f, g, φ)` and the `40t³` hand case.
pub fn check_random_triples(
    seed: u64,
    count: usize,
    max_n: u32,
    max_s: u32,
    cap: Cap,
    exec: Exec,
) -> IdentityResult {
    let mut t = Tally::default();
    let hand = (|| {
        let f = RationalPolynomial::from_ints(&[0, 0, 1]);
        let g = RationalPolynomial::from_ints(&[0, 1]);
        let phi = RationalPolynomial::from_ints(&[0, 0, 1]);
        let report = check_main_theorem(&f, &g, &phi, 2, 1, cap)?;
        Ok(report.equal && report.lhs == RationalPolynomial::from_ints(&[0, 0, 0, 40]))
    })();
    t.record_result(hand, || "f=z^2 g=z φ=t^2 n=2 s=1".to_string());

    let expansions: BTreeMap<(u32, u32), DiffPolynomial> = match grid(max_n, max_s)
        .into_iter()
        .map(|(n, s)| formula_expansion(n, s, cap).map(|p| ((n, s), p)))
        .collect::<Result<_>>()
    {
        Ok(e) => e,
        Err(e) => {
            t.record(false, || format!("expansion: {e}"));
            return t.finish("random polynomial triples: exact equality of both sides");
        }
    };
    let triples = random_triples(seed, count, 5, 10);
    let indexed: Vec<(usize, &[RationalPolynomial; 3])> = triples.iter().enumerate().collect();
    let tallies = exec.map(&indexed, |&(i, [f, g, phi])| {
        let mut t = Tally::default();
        for ((n, s), expansion) in &expansions {
            let outcome = check_against_expansion(f, g, phi, *n, *s, expansion).map(|r| r.equal);
            t.record_result(outcome, || {
                format!(
                    "triple {i} n={n} s={s} f={} g={} φ={}",
                    f.to_literal(),
                    g.to_literal(),
                    phi.to_literal()
                )
            });
        }
        t
    });
    t.merge(merged(tallies));
    t.finish("random polynomial triples: exact equality of both sides")
}

fn bell_cells(max_n: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        for k in 0..=n {
            for r in 0..=k {
                out.push((n, k, r));
            }
        }
    }
    out
}

/// Degree `k` and weighted degree `n + rs` for every term of `B̃_{n,k,r}^{(s)}`.
pub fn check_bell_homogeneity(max_n: u32, max_s: u32, cap: Cap) -> IdentityResult {
    let mut t = Tally::default();
    for (n, k, r) in bell_cells(max_n) {
        for s in 0..=max_s {
            let outcome = modified_partial_bell(n, k, r, s, cap).map(|p| {
                p.is_homogeneous(u64::from(k), u64::from(n) + u64::from(r) * u64::from(s))
            });
            t.record_result(outcome, || format!("n={n} k={k} r={r} s={s}"));
        }
    }
    t.finish("modified partial Bell: degree k, weighted degree n + rs")
}

/// `y_i` with `n + 1 - k < i <= s` never occurs in `B̃_{n,k,r}^{(s)}`.
pub fn check_variable_absence(max_n: u32, max_s: u32, cap: Cap) -> IdentityResult {
    let mut t = Tally::default();
    for (n, k, r) in bell_cells(max_n) {
        for s in 0..=max_s {
            if s + k <= n + 1 {
                continue;
            }
            let outcome = modified_partial_bell(n, k, r, s, cap)
                .map(|p| p.variables().iter().all(|&i| !(i + k > n + 1 && i <= s)));
            t.record_result(outcome, || format!("n={n} k={k} r={r} s={s}"));
        }
    }
    t.finish("modified partial Bell: y_i absent for n + 1 - k < i <= s")
}

/// `B̃_{n,k,r}^{(s)}` and `B̃_n^{(s)}` against their binomial product forms.
pub fn check_product_form(max_n: u32, max_s: u32, cap: Cap) -> IdentityResult {
    let mut t = Tally::default();
    for (n, k, r) in bell_cells(max_n) {
        for s in 0..=max_s {
            let outcome = (|| {
                Ok(product_form_partial(n, k, r, s, cap)?
                    == modified_partial_bell(n, k, r, s, cap)?)
            })();
            t.record_result(outcome, || format!("n={n} k={k} r={r} s={s}"));
        }
    }
    for (n, s) in grid(max_n, max_s) {
        let outcome =
            (|| Ok(product_form_complete(n, s, cap)? == modified_complete_bell(n, s, cap)?))();
        t.record_result(outcome, || format!("complete n={n} s={s}"));
    }
    t.finish("modified Bell polynomials as binomial products of classical ones")
}

/// The degree-raising recurrence for `B̃_{n+1,k+1,r}^{(s)}` in the `y` variables.
pub fn check_bell_recurrence(max_n: u32, max_s: u32, cap: Cap) -> IdentityResult {
    let mut t = Tally::default();
    for (n, k, r) in bell_cells(max_n.saturating_sub(1)) {
        if max_n == 0 {
            break;
        }
        for s in 0..=max_s {
            let outcome = (|| {
                Ok(modified_partial_bell(n + 1, k + 1, r, s, cap)?
                    == bell::modified_bell_recurrence(n, k, r, s, cap)?)
            })();
            t.record_result(outcome, || format!("n={n} k={k} r={r} s={s}"));
        }
    }
    t.finish("modified partial Bell degree-raising recurrence")
}

/// `y_i = c^i·x` collapses `B̃_{n,k,r}^{(s)}` to one monomial whose
/// coefficient does not depend on `s`.
pub fn check_s_independence(max_n: u32, max_s: u32, cap: Cap) -> IdentityResult {
    let mut t = Tally::default();
    for (n, k, r) in bell_cells(max_n) {
        let base = modified_stirling(n, k, r);
        for s in 0..=max_s {
            let outcome = (|| {
                let poly = modified_partial_bell(n, k, r, s, cap)?;
                let single = poly.geometric_substitution().len() <= 1;
                Ok(single
                    && modified_stirling_via_substitution(n, k, r, s, cap)? == base.clone()?)
            })();
            t.record_result(outcome, || format!("n={n} k={k} r={r} s={s}"));
        }
    }
    t.finish("modified Stirling numbers do not depend on s")
}

/// The paper-style `S(n+1,k+1) = Σ binom(n,l) S(n-l,k)` table against the triangular recurrence.
pub fn check_stirling_tables(max_n: u32) -> IdentityResult {
    let a = stirling2_table(max_n);
    let b = stirling2_triangular(max_n);
    let mut t = Tally::default();
    for n in 0..=max_n as usize {
        for k in 0..=max_n as usize {
            t.record(a[n][k] == b[n][k], || {
                format!("S({n},{k}): {} vs {}", a[n][k], b[n][k])
            });
        }
    }
    t.finish("Stirling numbers: binomial recurrence equals triangular recurrence")
}

/// `S̃(n,k,r) = Σ_p binom(n,p)·S(n-p,k-r)·S(p,r)` against the definition.
pub fn check_stirling_convolution(max_n: u32) -> IdentityResult {
    let mut t = Tally::default();
    for (n, k, r) in bell_cells(max_n) {
        let outcome = modified_stirling(n, k, r).map(|d| d == bell::stirling_convolution(n, k, r));
        t.record_result(outcome, || format!("n={n} k={k} r={r}"));
    }
    t.finish("modified Stirling numbers as a binomial convolution")
}

/// The convolution without `binom(n,p)`, reported but not required.
pub fn report_printed_convolution(max_n: u32) -> IdentityResult {
    let mut t = Tally::default();
    for (n, k, r) in bell_cells(max_n) {
        let outcome =
            modified_stirling(n, k, r).map(|d| d == bell::stirling_convolution_printed(n, k, r));
        t.record_result(outcome, || {
            format!(
                "n={n} k={k} r={r}: definition {} vs unweighted {}",
                modified_stirling(n, k, r).unwrap_or_default(),
                bell::stirling_convolution_printed(n, k, r)
            )
        });
    }
    let detail = t
        .first
        .take()
        .unwrap_or_else(|| "no counterexample in range".to_string());
    t.informational("modified Stirling convolution without binom(n,p)", detail)
}

/// `S̃(n+1,k+1,r) = Σ_l binom(n,l)·(S̃(n-l,k,r) + S̃(n-l,k,r-1))`.
pub fn check_stirling_recurrence(max_n: u32) -> IdentityResult {
    let mut t = Tally::default();
    if max_n > 0 {
        for (n, k, r) in bell_cells(max_n - 1) {
            let outcome = (|| {
                Ok(modified_stirling(n + 1, k + 1, r)?
                    == bell::modified_stirling_recurrence(n, k, r)?)
            })();
            t.record_result(outcome, || format!("n={n} k={k} r={r}"));
        }
    }
    t.finish("modified Stirling recurrence with S̃(n-l, ·, ·)")
}

/// The recurrence with `S̃(n, ·, ·)` in every summand, reported but not required.
pub fn report_printed_recurrence(max_n: u32) -> IdentityResult {
    let mut t = Tally::default();
    if max_n > 0 {
        for (n, k, r) in bell_cells(max_n - 1) {
            let outcome: Result<(bool, String)> = (|| {
                let d = modified_stirling(n + 1, k + 1, r)?;
                let p = bell::modified_stirling_recurrence_printed(n, k, r)?;
                Ok((
                    d == p,
                    format!("n={n} k={k} r={r}: definition {d} vs unshifted {p}"),
                ))
            })();
            match outcome {
                Ok((ok, label)) => t.record(ok, || label),
                Err(e) => t.record(false, || e.to_string()),
            }
        }
    }
    let detail = t
        .first
        .take()
        .unwrap_or_else(|| "no counterexample in range".to_string());
    t.informational(
        "modified Stirling recurrence with S̃(n, ·, ·) in every summand",
        detail,
    )
}

/// `Σ_r S̃(n,k,r) = 2^k·S(n,k)`.
pub fn check_row_sum(max_n: u32) -> IdentityResult {
    let table = stirling2_table(max_n);
    let mut t = Tally::default();
    for n in 0..=max_n {
        for k in 0..=n {
            let outcome = (|| {
                let mut sum = BigInt::zero();
                for r in 0..=k {
                    sum += modified_stirling(n, k, r)?;
                }
                Ok(sum == (BigInt::one() << k) * &table[n as usize][k as usize])
            })();
            t.record_result(outcome, || format!("n={n} k={k}"));
        }
    }
    t.finish("Σ_r S̃(n,k,r) = 2^k S(n,k)")
}

/// `Σ_p binom(n,p)·T_{n-p}(x)·T_p(y) = T_n(x + y)`.
pub fn check_touchard_binomial(max_n: u32) -> IdentityResult {
    let mut t = Tally::default();
    for n in 0..=max_n {
        t.record(
            bell::touchard_convolution(n) == bell::touchard_at_sum(n),
            || format!("n={n}"),
        );
    }
    t.finish("Touchard polynomials are of binomial type")
}

/// `B̃_{n,k,0}^{(s)} = B_{n,k}`.
pub fn check_r0_bell(max_n: u32, max_s: u32, cap: Cap) -> IdentityResult {
    let mut t = Tally::default();
    for n in 0..=max_n {
        for k in 0..=n {
            for s in 0..=max_s {
                let outcome =
                    (|| Ok(modified_partial_bell(n, k, 0, s, cap)? == partial_bell(n, k, cap)?))();
                t.record_result(outcome, || format!("n={n} k={k} s={s}"));
            }
        }
    }
    t.finish("r = 0 modified partial Bell equals the classical partial Bell")
}

/// Leibniz rule for `D(y_i) = y_{i+1}` on products of partial Bell polynomials.
pub fn check_y_leibniz(max_n: u32, cap: Cap) -> IdentityResult {
    let mut t = Tally::default();
    let mut polys: Vec<YPolynomial> = Vec::new();
    for n in 0..=max_n.min(6) {
        for k in 0..=n {
            if let Ok(p) = partial_bell(n, k, cap) {
                polys.push(p);
            }
        }
    }
    for (i, p) in polys.iter().enumerate() {
        for q in polys.iter().skip(i) {
            let lhs = p.mul(q).derive();
            let rhs = p.derive().mul(q).add(&p.mul(&q.derive()));
            t.record(lhs == rhs, || {
                format!("{} and {}", p.to_pretty(), q.to_pretty())
            });
        }
    }
    t.finish("D(pq) = D(p)q + pD(q) on y-polynomials")
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub max_n: u32,
    pub max_s: u32,
    pub seed: u64,
    /// Number of random polynomial triples.
    pub triples: usize,
    pub cap: Cap,
    pub exec: Exec,
}

impl VerifyConfig {
    pub fn new(max_n: u32, max_s: u32, seed: u64) -> Self {
        VerifyConfig {
            max_n,
            max_s,
            seed,
            triples: 200,
            cap: Cap::default(),
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_n: u32,
    pub max_s: u32,
    pub seed: u64,
    pub triples: usize,
    pub passed: bool,
    pub identities: Vec<IdentityResult>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityResult> {
        self.identities.iter().filter(|r| !r.passed())
    }
}

/// Largest multiset cardinality the suite enumerates exhaustively.
pub const MULTISET_CARDINALITY: usize = 8;
/// Largest multiset entry the suite enumerates exhaustively.
pub const MULTISET_ENTRY: u64 = 12;

/// Runs every check with `n <= max_n` and `s <= max_s`. Multisets use
/// cardinality `min(max_n, 8)` and entries up to 12; partition enumeration is
/// checked up to the largest weight the expansions use.
pub fn run_suite(config: &VerifyConfig) -> VerifyReport {
    let VerifyConfig {
        max_n,
        max_s,
        seed,
        triples,
        cap,
        exec,
    } = *config;
    let card = (max_n as usize).min(MULTISET_CARDINALITY);
    let identities = vec![
        check_partition_enumeration(max_n + max_n * max_s, cap),
        check_constrained_enumeration(max_n, max_s, cap),
        check_newton(card, MULTISET_ENTRY, exec),
        check_subtract_transform(card, MULTISET_ENTRY, exec),
        check_subpartition_sums(max_n, max_s, cap),
        check_shifted_subpartition_sums(max_n, max_s, cap),
        check_binomial_specialization(max_n, cap),
        check_integrality(max_n, max_s, cap, exec),
        check_recurrence(max_n, max_s, cap, exec),
        check_r0_slice(max_n, max_s, cap),
        check_oracle_equality(max_n, max_s, cap, exec),
        check_faa_di_bruno(max_n, cap),
        check_product_rule(max_n, cap, exec),
        check_psi_bridge(max_n, max_s, cap, exec),
        check_weighted_degree(max_n, max_s, cap),
        check_random_triples(seed, triples, max_n, max_s, cap, exec),
        check_r0_bell(max_n, max_s, cap),
        check_bell_homogeneity(max_n, max_s, cap),
        check_variable_absence(max_n, max_s, cap),
        check_product_form(max_n, max_s, cap),
        check_bell_recurrence(max_n, max_s, cap),
        check_y_leibniz(max_n, cap),
        check_s_independence(max_n, max_s, cap),
        check_stirling_tables(max_n),
        check_stirling_convolution(max_n),
        check_stirling_recurrence(max_n),
        check_row_sum(max_n),
        check_touchard_binomial(max_n),
        report_printed_convolution(max_n),
        report_printed_recurrence(max_n),
    ];
    VerifyReport {
        max_n,
        max_s,
        seed,
        triples,
        passed: identities.iter().all(IdentityResult::passed),
        identities,
    }
}
