//! Formal symbols `F_a = f^(a)∘φ`, `G_b = g^(b)∘ψ`, `Y_i = φ^(i)`, `Z_i = ψ^(i)`
//! and the derivation `D = d/dt` acting on polynomials in them.
//!
//! Applying `D` n times to `F_0·G_0` is the brute-force oracle: no partitions,
//! no closed forms, only the chain and Leibniz rules. The `*_expansion`
//! functions assemble the closed formulas into the same representation so
//! the two can be compared term by term.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coefficients::{c_coeff, faa_di_bruno_coeff};
use crate::exponents::Exponents;
use crate::partition::{enumerate_constrained, enumerate_partitions, Cap};
use crate::{Error, Exec, Result};

/// `F_f · G_g · ∏ Y_i^{y_i} · ∏ Z_i^{z_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiffMonomial {
    pub f: u32,
    pub g: u32,
    pub y: Exponents,
    pub z: Exponents,
}

impl DiffMonomial {
    pub fn new(f: u32, g: u32, y: Exponents, z: Exponents) -> Self {
        DiffMonomial { f, g, y, z }
    }

    /// `F_0·G_0`.
    pub fn base() -> Self {
        DiffMonomial::new(0, 0, Exponents::one(), Exponents::one())
    }
}

impl Ord for DiffMonomial {
    /// Highest `f` order first, then ascending `g` order, then the `Y` and `Z`
    /// exponent maps lexicographically by ascending index.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .cmp(&self.f)
            .then_with(|| self.g.cmp(&other.g))
            .then_with(|| self.y.cmp(&other.y))
            .then_with(|| self.z.cmp(&other.z))
    }
}

impl PartialOrd for DiffMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// How `D` acts on the `G` and `Z` symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeriveMode {
    /// `ψ = φ^(s)`: `D(G_b) = G_{b+1}·Y_{s+1}`; `Z` symbols are not allowed.
    Composed(u32),
    /// `ψ` unrelated to `φ`: `D(G_b) = G_{b+1}·Z_1`, `D(Z_i) = Z_{i+1}`.
    Independent,
    /// `g` constant: `D(G_b) = 0`.
    ConstantG,
}

/// Sparse integer combination of [`DiffMonomial`]s, no zero coefficients stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiffPolynomial {
    terms: BTreeMap<DiffMonomial, BigInt>,
}

impl DiffPolynomial {
    pub fn zero() -> Self {
        DiffPolynomial::default()
    }

    /// `F_0·G_0`, the zeroth derivative.
    pub fn base() -> Self {
        let mut p = DiffPolynomial::zero();
        p.add_term(DiffMonomial::base(), BigInt::one());
        p
    }

    pub fn add_term(&mut self, mono: DiffMonomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
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

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&DiffMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &DiffMonomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn has_independent_symbols(&self) -> bool {
        self.terms.keys().any(|m| !m.z.is_one())
    }

    /// `self - other`, useful for reporting where two expansions disagree.
    pub fn difference(&self, other: &DiffPolynomial) -> DiffPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn derive(&self, mode: DeriveMode) -> Result<DiffPolynomial> {
        self.derive_with(mode, Exec::default())
    }

    /// One application of `D`. Terms are expanded independently (in parallel
    /// under [`Exec::Parallel`]) and merged in canonical order.
    pub fn derive_with(&self, mode: DeriveMode, exec: Exec) -> Result<DiffPolynomial> {
        if matches!(mode, DeriveMode::Composed(_)) && self.has_independent_symbols() {
            return Err(Error::IndependentSymbolInComposedMode);
        }
        let terms: Vec<(&DiffMonomial, &BigInt)> = self.terms.iter().collect();
        let expanded = exec.map(&terms, |(m, c)| derive_monomial(m, c, mode));
        let mut out = DiffPolynomial::zero();
        for (mono, coeff) in expanded.into_iter().flatten() {
            out.add_term(mono, coeff);
        }
        Ok(out)
    }

    /// Replaces every `Z_i` by `Y_{i+s}`, i.e. specializes `ψ = φ^(s)`.
    pub fn substitute_psi(&self, s: u32) -> DiffPolynomial {
        let mut out = DiffPolynomial::zero();
        for (m, c) in &self.terms {
            let y = m.y.mul(&m.z.shift(s));
            out.add_term(DiffMonomial::new(m.f, m.g, y, Exponents::one()), c.clone());
        }
        out
    }

    pub fn to_json(&self) -> String {
        let wire: Vec<MonomialWire> = self
            .terms
            .iter()
            .map(|(m, c)| MonomialWire {
                f: m.f,
                g: m.g,
                y: m.y.clone(),
                z: m.z.clone(),
                coeff: c.to_string(),
            })
            .collect();
        serde_json::to_string_pretty(&wire).expect("polynomial serializes")
    }

    pub fn from_json(text: &str) -> Result<DiffPolynomial> {
        let wire: Vec<MonomialWire> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = DiffPolynomial::zero();
        for w in wire {
            let coeff: BigInt = w
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", w.coeff)))?;
            out.add_term(DiffMonomial::new(w.f, w.g, w.y, w.z), coeff);
        }
        Ok(out)
    }

    /// `f'·g·φ' + f·g'·φ''` style, primes up to order 3.
    pub fn to_pretty(&self) -> String {
        render(self, &PRETTY)
    }

    pub fn to_latex(&self) -> String {
        render(self, &LATEX)
    }
}

fn derive_monomial(m: &DiffMonomial, c: &BigInt, mode: DeriveMode) -> Vec<(DiffMonomial, BigInt)> {
    let mut out = Vec::new();
    // D(F_a) = F_{a+1}·Y_1
    out.push((
        DiffMonomial::new(m.f + 1, m.g, m.y.times_var(1), m.z.clone()),
        c.clone(),
    ));
    match mode {
        DeriveMode::Composed(s) => out.push((
            DiffMonomial::new(m.f, m.g + 1, m.y.times_var(s + 1), m.z.clone()),
            c.clone(),
        )),
        DeriveMode::Independent => out.push((
            DiffMonomial::new(m.f, m.g + 1, m.y.clone(), m.z.times_var(1)),
            c.clone(),
        )),
        DeriveMode::ConstantG => {}
    }
    for (e, y) in m.y.derivative_terms() {
        out.push((DiffMonomial::new(m.f, m.g, y, m.z.clone()), c * e));
    }
    if mode == DeriveMode::Independent {
        for (e, z) in m.z.derivative_terms() {
            out.push((DiffMonomial::new(m.f, m.g, m.y.clone(), z), c * e));
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct MonomialWire {
    f: u32,
    g: u32,
    y: Exponents,
    z: Exponents,
    coeff: String,
}

fn repeated_derive(n: u32, mode: DeriveMode, exec: Exec) -> Result<DiffPolynomial> {
    let mut p = DiffPolynomial::base();
    for _ in 0..n {
        p = p.derive_with(mode, exec)?;
    }
    Ok(p)
}

fn composed_weight(n: u32, s: u32) -> u64 {
    u64::from(n) + u64::from(n) * u64::from(s)
}

/// `D^n(F_0·G_0)` with `ψ = φ^(s)`. The ground truth for the closed formula.
pub fn nth_derivative_expansion(n: u32, s: u32, cap: Cap) -> Result<DiffPolynomial> {
    nth_derivative_expansion_with(n, s, cap, Exec::default())
}

pub fn nth_derivative_expansion_with(
    n: u32,
    s: u32,
    cap: Cap,
    exec: Exec,
) -> Result<DiffPolynomial> {
    cap.check(composed_weight(n, s))?;
    repeated_derive(n, DeriveMode::Composed(s), exec)
}

/// `D^n(F_0·G_0)` with `g` constant.
pub fn constant_g_oracle(n: u32, cap: Cap) -> Result<DiffPolynomial> {
    cap.check(u64::from(n))?;
    repeated_derive(n, DeriveMode::ConstantG, Exec::default())
}

/// `D^n(F_0·G_0)` with `ψ` independent of `φ`.
pub fn independent_oracle(n: u32, cap: Cap) -> Result<DiffPolynomial> {
    cap.check(u64::from(n))?;
    repeated_derive(n, DeriveMode::Independent, Exec::default())
}

/// `Σ_{r,λ} C_{λ,r}^{(s)} · F_{ℓ(λ)-r} · G_r · ∏ Y_i^{m_i}` over `λ ⊢ n + r·s`
/// with at least `r` parts above `s`.
pub fn formula_expansion(n: u32, s: u32, cap: Cap) -> Result<DiffPolynomial> {
    cap.check(composed_weight(n, s))?;
    let mut out = DiffPolynomial::zero();
    for r in 0..=n {
        for lambda in enumerate_constrained(n, r, s, cap)? {
            let coeff = c_coeff(&lambda, r, s)?;
            let f = lambda.length() as u32 - r;
            let y = Exponents::from_pairs(lambda.multiplicities());
            out.add_term(DiffMonomial::new(f, r, y, Exponents::one()), coeff);
        }
    }
    Ok(out)
}

/// `Σ_{λ ⊢ n} faa_di_bruno_coeff(λ) · F_{ℓ(λ)} · G_0 · ∏ Y_i^{m_i}`.
pub fn faa_expansion(n: u32, cap: Cap) -> Result<DiffPolynomial> {
    let mut out = DiffPolynomial::zero();
    for lambda in enumerate_partitions(n, cap)? {
        let y = Exponents::from_pairs(lambda.multiplicities());
        out.add_term(
            DiffMonomial::new(lambda.length() as u32, 0, y, Exponents::one()),
            faa_di_bruno_coeff(&lambda),
        );
    }
    Ok(out)
}

/// The product rule combined with the classical formula for each factor:
/// `Σ_r Σ_{ρ ⊢ n} faa(ρ)·F_{ℓ(ρ)-r}·G_r · Σ_{μ ≤ ρ, ℓ(μ)=r} ∏ binom(m_i(ρ), m_i(μ)) Y_i^{m_i(ρ)-m_i(μ)} Z_i^{m_i(μ)}`.
pub fn leibniz_product_expansion(n: u32, cap: Cap) -> Result<DiffPolynomial> {
    let mut out = DiffPolynomial::zero();
    for rho in enumerate_partitions(n, cap)? {
        let outer = faa_di_bruno_coeff(&rho);
        for r in 0..=rho.length() {
            for (mu, choices) in rho.sub_partitions_of_length(r) {
                let y = Exponents::from_pairs(
                    rho.multiplicities()
                        .map(|(i, m)| (i, m - mu.multiplicity(i))),
                );
                let z = Exponents::from_pairs(mu.multiplicities());
                let f = (rho.length() - r) as u32;
                out.add_term(DiffMonomial::new(f, r as u32, y, z), &outer * choices);
            }
        }
    }
    Ok(out)
}

struct Style {
    f: &'static str,
    g: &'static str,
    y: &'static str,
    z: &'static str,
    sep: &'static str,
    high_order: fn(&str, u32) -> String,
    power: fn(String, u32, bool) -> String,
}

const PRETTY: Style = Style {
    f: "f",
    g: "g",
    y: "φ",
    z: "ψ",
    sep: "·",
    high_order: |base, k| format!("{base}^({k})"),
    power: |sym, e, grouped| {
        if grouped {
            format!("({sym})^{e}")
        } else {
            format!("{sym}^{e}")
        }
    },
};

const LATEX: Style = Style {
    f: "f",
    g: "g",
    y: "\\varphi",
    z: "\\psi",
    sep: " ",
    high_order: |base, k| format!("{base}^{{({k})}}"),
    power: |sym, e, grouped| {
        if grouped {
            format!("\\left({sym}\\right)^{{{e}}}")
        } else {
            format!("{sym}^{{{e}}}")
        }
    },
};

fn symbol(style: &Style, base: &str, order: u32) -> (String, bool) {
    if order <= 3 {
        (format!("{base}{}", "'".repeat(order as usize)), false)
    } else {
        ((style.high_order)(base, order), true)
    }
}

fn render(p: &DiffPolynomial, style: &Style) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms.iter().enumerate() {
        let mut factors = Vec::new();
        factors.push(symbol(style, style.f, m.f).0);
        factors.push(symbol(style, style.g, m.g).0);
        for (base, exps) in [(style.y, &m.y), (style.z, &m.z)] {
            for (i, e) in exps.iter() {
                let (sym, grouped) = symbol(style, base, i);
                factors.push(if e == 1 {
                    sym
                } else {
                    (style.power)(sym, e, grouped)
                });
            }
        }
        let magnitude = c.abs();
        if k == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if !magnitude.is_one() {
            let _ = write!(out, "{magnitude}{}", style.sep);
        }
        out.push_str(&factors.join(style.sep));
    }
    out
}
