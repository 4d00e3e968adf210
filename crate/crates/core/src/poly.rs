//! Exact univariate polynomials over ℚ, used as concrete stand-ins for `f`, `g`
//! and `φ` so both sides of the derivative formula can be compared as actual
//! polynomials in `t`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::diffalg::{formula_expansion, DiffPolynomial};
use crate::partition::{enumerate_partitions, Cap};
use crate::{coefficients::faa_di_bruno_coeff, Error, Result};

/// `(Σ numer_k t^k) / denom` with `denom > 0`, no trailing zero numerators,
/// and the numerators' content coprime to `denom`. This form is unique, so
/// structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    numer: Vec<BigInt>,
    denom: BigInt,
}

impl RationalPolynomial {
    pub fn zero() -> Self {
        RationalPolynomial {
            numer: Vec::new(),
            denom: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        RationalPolynomial::constant(BigRational::one())
    }

    /// The identity polynomial `t`.
    pub fn t() -> Self {
        RationalPolynomial::from_ints(&[0, 1])
    }

    pub fn constant(c: BigRational) -> Self {
        RationalPolynomial::from_coeffs(vec![c])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        RationalPolynomial::normalized(
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            BigInt::one(),
        )
    }

    /// Builds from coefficients in ascending degree.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let denom = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numer = coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        RationalPolynomial::normalized(numer, denom)
    }

    fn normalized(mut numer: Vec<BigInt>, mut denom: BigInt) -> Self {
        while numer.last().is_some_and(Zero::is_zero) {
            numer.pop();
        }
        if numer.is_empty() {
            return RationalPolynomial::zero();
        }
        if denom.is_negative() {
            denom = -denom;
            numer.iter_mut().for_each(|c| *c = -&*c);
        }
        let mut g = denom.clone();
        for c in &numer {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            numer.iter_mut().for_each(|c| *c = &*c / &g);
            denom /= &g;
        }
        RationalPolynomial { numer, denom }
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.numer.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        match self.numer.get(k) {
            Some(c) => BigRational::new(c.clone(), self.denom.clone()),
            None => BigRational::zero(),
        }
    }

    /// Coefficients in ascending degree; empty for zero.
    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.numer.len()).map(|k| self.coeff(k)).collect()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalPolynomial::normalized(
            self.numer.iter().map(|x| x * c.numer()).collect(),
            &self.denom * c.denom(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = RationalPolynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self ∘ inner`, by Horner's scheme in the polynomial ring.
    pub fn compose(&self, inner: &RationalPolynomial) -> Self {
        let mut acc = RationalPolynomial::zero();
        for k in (0..self.numer.len()).rev() {
            acc = &(&acc * inner) + &RationalPolynomial::constant(self.coeff(k));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.numer.len() <= 1 {
            return RationalPolynomial::zero();
        }
        let numer = self.numer[1..]
            .iter()
            .enumerate()
            .map(|(k, c)| c * (k + 1))
            .collect();
        RationalPolynomial::normalized(numer, self.denom.clone())
    }

    pub fn nth_derivative(&self, n: u32) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for k in (0..self.numer.len()).rev() {
            acc = acc * x + BigRational::from_integer(self.numer[k].clone());
        }
        acc / BigRational::from_integer(self.denom.clone())
    }

    /// Parses `"c0,c1,..."` with each coefficient an integer or `p/q`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(RationalPolynomial::zero());
        }
        let coeffs = text
            .split(',')
            .map(|tok| parse_rational(tok.trim()))
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalPolynomial::from_coeffs(coeffs))
    }

    /// Inverse of [`RationalPolynomial::parse`].
    pub fn to_literal(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Random polynomial of degree at most `max_degree` whose coefficients are
    /// `p/q` with `|p| <= height` and `1 <= q <= height`.
    pub fn random<R: Rng>(rng: &mut R, max_degree: usize, height: i64) -> Self {
        let degree = rng.gen_range(0..=max_degree);
        let coeffs = (0..=degree)
            .map(|_| {
                let p = rng.gen_range(-height..=height);
                let q = rng.gen_range(1..=height);
                BigRational::new(BigInt::from(p), BigInt::from(q))
            })
            .collect();
        RationalPolynomial::from_coeffs(coeffs)
    }
}

fn parse_rational(tok: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational coefficient {tok:?}"));
    match tok.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(tok.parse().map_err(|_| bad())?)),
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let denom = self.denom.lcm(&rhs.denom);
        let ls = &denom / &self.denom;
        let rs = &denom / &rhs.denom;
        let len = self.numer.len().max(rhs.numer.len());
        let numer = (0..len)
            .map(|k| {
                let a = self.numer.get(k).map(|c| c * &ls).unwrap_or_default();
                let b = rhs.numer.get(k).map(|c| c * &rs).unwrap_or_default();
                a + b
            })
            .collect();
        RationalPolynomial::normalized(numer, denom)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn neg(self) -> RationalPolynomial {
        RationalPolynomial {
            numer: self.numer.iter().map(|c| -c).collect(),
            denom: self.denom.clone(),
        }
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut numer = vec![BigInt::zero(); self.numer.len() + rhs.numer.len() - 1];
        for (i, a) in self.numer.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.numer.iter().enumerate() {
                numer[i + j] += a * b;
            }
        }
        RationalPolynomial::normalized(numer, &self.denom * &rhs.denom)
    }
}

impl fmt::Display for RationalPolynomial {
    /// Highest degree first: `40·t^3 - 1/2·t + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for k in (0..self.numer.len()).rev() {
            let c = self.coeff(k);
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}·")?,
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for RationalPolynomial {
    /// Ascending coefficient list of rational strings.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs().iter().map(ToString::to_string).collect();
        coeffs.serialize(serializer)
    }
}

/// Outcome of comparing the two sides of one derivative identity instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualityReport {
    pub equal: bool,
    pub lhs: RationalPolynomial,
    pub rhs: RationalPolynomial,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<RationalPolynomial>,
}

impl EqualityReport {
    fn new(lhs: RationalPolynomial, rhs: RationalPolynomial) -> Self {
        let equal = lhs == rhs;
        let difference = (!equal).then(|| &lhs - &rhs);
        EqualityReport {
            equal,
            lhs,
            rhs,
            difference,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Evaluates symbolic expansions for one concrete `(f, g, φ)`, caching the
/// composed derivatives and powers of `φ^(i)` it needs.
pub struct Instance<'a> {
    f: &'a RationalPolynomial,
    g: &'a RationalPolynomial,
    phi_derivs: Vec<RationalPolynomial>,
    f_terms: Vec<RationalPolynomial>,
    g_terms: HashMap<(u32, u32), RationalPolynomial>,
    y_powers: HashMap<(u32, u32), RationalPolynomial>,
}

impl<'a> Instance<'a> {
    pub fn new(
        f: &'a RationalPolynomial,
        g: &'a RationalPolynomial,
        phi: &RationalPolynomial,
    ) -> Self {
        Instance {
            f,
            g,
            phi_derivs: vec![phi.clone()],
            f_terms: Vec::new(),
            g_terms: HashMap::new(),
            y_powers: HashMap::new(),
        }
    }

    fn phi_deriv(&mut self, i: u32) -> &RationalPolynomial {
        while self.phi_derivs.len() <= i as usize {
            let next = self.phi_derivs[self.phi_derivs.len() - 1].derivative();
            self.phi_derivs.push(next);
        }
        &self.phi_derivs[i as usize]
    }

    /// `f^(a) ∘ φ`.
    fn f_term(&mut self, a: u32) -> RationalPolynomial {
        while self.f_terms.len() <= a as usize {
            let k = self.f_terms.len() as u32;
            let phi = self.phi_deriv(0).clone();
            let term = self.f.nth_derivative(k).compose(&phi);
            self.f_terms.push(term);
        }
        self.f_terms[a as usize].clone()
    }

    /// `g^(b) ∘ φ^(s)`.
    fn g_term(&mut self, b: u32, s: u32) -> RationalPolynomial {
        if let Some(p) = self.g_terms.get(&(b, s)) {
            return p.clone();
        }
        let inner = self.phi_deriv(s).clone();
        let p = self.g.nth_derivative(b).compose(&inner);
        self.g_terms.insert((b, s), p.clone());
        p
    }

    fn y_power(&mut self, i: u32, e: u32) -> RationalPolynomial {
        if let Some(p) = self.y_powers.get(&(i, e)) {
            return p.clone();
        }
        let p = self.phi_deriv(i).pow(e);
        self.y_powers.insert((i, e), p.clone());
        p
    }

    /// Substitutes `F_a -> f^(a)∘φ`, `G_b -> g^(b)∘φ^(s)`, `Y_i -> φ^(i)`.
    /// Terms sharing `(F_a, G_b)` are summed before the expensive products.
    pub fn evaluate(&mut self, expansion: &DiffPolynomial, s: u32) -> Result<RationalPolynomial> {
        if expansion.has_independent_symbols() {
            return Err(Error::IndependentSymbolInComposedMode);
        }
        let mut grouped: Vec<((u32, u32), RationalPolynomial)> = Vec::new();
        for (m, c) in expansion.iter() {
            let mut y_part = RationalPolynomial::constant(BigRational::from_integer(c.clone()));
            for (i, e) in m.y.iter() {
                y_part = &y_part * &self.y_power(i, e);
            }
            match grouped.last_mut() {
                Some((key, acc)) if *key == (m.f, m.g) => *acc = &*acc + &y_part,
                _ => grouped.push(((m.f, m.g), y_part)),
            }
        }
        let mut total = RationalPolynomial::zero();
        for ((a, b), y_part) in grouped {
            let term = &(&self.f_term(a) * &self.g_term(b, s)) * &y_part;
            total = &total + &term;
        }
        Ok(total)
    }

    /// `d^n/dt^n [(f∘φ)·(g∘φ^(s))]` computed directly.
    pub fn direct_derivative(&mut self, n: u32, s: u32) -> RationalPolynomial {
        (&self.f_term(0) * &self.g_term(0, s)).nth_derivative(n)
    }
}

/// Compares the n-th derivative of `(f∘φ)·(g∘φ^(s))` with the closed-form expansion.
pub fn check_main_theorem(
    f: &RationalPolynomial,
    g: &RationalPolynomial,
    phi: &RationalPolynomial,
    n: u32,
    s: u32,
    cap: Cap,
) -> Result<EqualityReport> {
    let expansion = formula_expansion(n, s, cap)?;
    check_against_expansion(f, g, phi, n, s, &expansion)
}

/// As [`check_main_theorem`] with a precomputed `formula_expansion(n, s)`.
pub fn check_against_expansion(
    f: &RationalPolynomial,
    g: &RationalPolynomial,
    phi: &RationalPolynomial,
    n: u32,
    s: u32,
    expansion: &DiffPolynomial,
) -> Result<EqualityReport> {
    let mut inst = Instance::new(f, g, phi);
    let lhs = inst.direct_derivative(n, s);
    let rhs = inst.evaluate(expansion, s)?;
    Ok(EqualityReport::new(lhs, rhs))
}

/// `(f∘φ)^(n)` against `Σ_{λ ⊢ n} faa(λ)·(f^(ℓ(λ))∘φ)·∏ (φ^(i))^{m_i}`.
pub fn check_faa_di_bruno(
    f: &RationalPolynomial,
    phi: &RationalPolynomial,
    n: u32,
    cap: Cap,
) -> Result<EqualityReport> {
    let lhs = f.compose(phi).nth_derivative(n);
    let mut derivs = vec![phi.clone()];
    for _ in 0..n {
        let next = derivs[derivs.len() - 1].derivative();
        derivs.push(next);
    }
    let mut rhs = RationalPolynomial::zero();
    for lambda in enumerate_partitions(n, cap)? {
        let mut term = f.nth_derivative(lambda.length() as u32).compose(phi);
        for (i, m) in lambda.multiplicities() {
            term = &term * &derivs[i as usize].pow(m);
        }
        rhs = &rhs + &term.scale(&BigRational::from_integer(faa_di_bruno_coeff(&lambda)));
    }
    Ok(EqualityReport::new(lhs, rhs))
}

/// `count` seeded triples `(f, g, φ)` of degree <= `max_degree` and height <= `height`.
pub fn random_triples(
    seed: u64,
    count: usize,
    max_degree: usize,
    height: i64,
) -> Vec<[RationalPolynomial; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            [
                RationalPolynomial::random(&mut rng, max_degree, height),
                RationalPolynomial::random(&mut rng, max_degree, height),
                RationalPolynomial::random(&mut rng, max_degree, height),
            ]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    fn ints(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_ints(c)
    }

    #[test]
    fn ring_operations() {
        assert_eq!(ints(&[0, 0, 0, 1]).derivative(), ints(&[0, 0, 3]));
        assert_eq!(ints(&[0, 0, 1]).compose(&ints(&[1, 1])), ints(&[1, 2, 1]));
        assert_eq!(&ints(&[1, 1]) * &ints(&[-1, 1]), ints(&[-1, 0, 1]));
        assert_eq!(&ints(&[1, 2]) - &ints(&[1, 2]), RationalPolynomial::zero());
        assert_eq!(ints(&[1, 1]).pow(3), ints(&[1, 3, 3, 1]));
        assert_eq!(ints(&[5]).derivative(), RationalPolynomial::zero());
        assert_eq!(RationalPolynomial::zero().degree(), None);
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = RationalPolynomial::from_coeffs(vec![q(1, 2), q(2, 4), q(0, 1)]);
        let b = RationalPolynomial::parse("1/2, 1/2").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.degree(), Some(1));
        let c = RationalPolynomial::from_coeffs(vec![q(-3, -6)]);
        assert_eq!(c, RationalPolynomial::constant(q(1, 2)));
    }

    #[test]
    fn parse_and_print() {
        let p = RationalPolynomial::parse("3,-1/2,0,40").unwrap();
        assert_eq!(p.coeff(1), q(-1, 2));
        assert_eq!(p.to_string(), "40·t^3 - 1/2·t + 3");
        assert_eq!(p.to_literal(), "3,-1/2,0,40");
        assert_eq!(RationalPolynomial::parse(&p.to_literal()).unwrap(), p);
        assert!(RationalPolynomial::parse("1,x").is_err());
        assert!(RationalPolynomial::parse("1/0").is_err());
        assert_eq!(
            RationalPolynomial::parse("").unwrap(),
            RationalPolynomial::zero()
        );
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"["3","-1/2","0","40"]"#
        );
    }

    #[test]
    fn evaluation() {
        let p = RationalPolynomial::parse("1,1/2,1").unwrap();
        assert_eq!(p.eval(&q(2, 1)), q(6, 1));
    }

    #[test]
    fn hand_instance() {
        // f = z², g = z, φ = t²: (f∘φ)(g∘φ') = 2t⁵, second derivative 40t³
        let f = ints(&[0, 0, 1]);
        let g = ints(&[0, 1]);
        let phi = ints(&[0, 0, 1]);
        let report = check_main_theorem(&f, &g, &phi, 2, 1, Cap::default()).unwrap();
        assert!(report.equal);
        assert_eq!(report.lhs, ints(&[0, 0, 0, 40]));
        assert!(report.difference.is_none());
        let json = report.to_json();
        assert!(json.contains("\"equal\": true"));
    }

    #[test]
    fn zeroth_derivative_is_the_product() {
        let f = ints(&[1, 2, 3]);
        let g = ints(&[0, 5, 0, 1]);
        let phi = ints(&[2, 0, 1]);
        for s in 0..3 {
            let r = check_main_theorem(&f, &g, &phi, 0, s, Cap::default()).unwrap();
            assert!(r.equal);
            assert_eq!(r.lhs, &f.compose(&phi) * &g.compose(&phi.nth_derivative(s)));
        }
    }

    #[test]
    fn constant_g_reduces_to_faa_di_bruno() {
        let f = RationalPolynomial::parse("1,-2,1/3,0,1").unwrap();
        let g = RationalPolynomial::one();
        let phi = RationalPolynomial::parse("0,1,-1/2,2").unwrap();
        for n in 0..=5 {
            let fdb = check_faa_di_bruno(&f, &phi, n, Cap::default()).unwrap();
            assert!(fdb.equal);
            for s in 0..=2 {
                let full = check_main_theorem(&f, &g, &phi, n, s, Cap::default()).unwrap();
                assert!(full.equal);
                assert_eq!(full.lhs, fdb.lhs);
            }
        }
    }

    #[test]
    fn mismatch_reports_difference() {
        let f = ints(&[0, 0, 1]);
        let g = ints(&[0, 1]);
        let phi = ints(&[0, 0, 1]);
        let mut wrong = formula_expansion(2, 1, Cap::default()).unwrap();
        let (m, _) = wrong
            .iter()
            .next()
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        wrong.add_term(m, BigInt::one());
        let r = check_against_expansion(&f, &g, &phi, 2, 1, &wrong).unwrap();
        assert!(!r.equal);
        assert_eq!(r.difference, Some(&r.lhs - &r.rhs));
        assert!(r.to_json().contains("difference"));
    }

    #[test]
    fn random_triples_are_seeded() {
        let a = random_triples(7, 5, 5, 10);
        let b = random_triples(7, 5, 5, 10);
        assert_eq!(a, b);
        assert_ne!(a, random_triples(8, 5, 5, 10));
        for t in &a {
            for p in t {
                assert!(p.degree().unwrap_or(0) <= 5);
                for c in p.coeffs() {
                    assert!(c.numer().abs() <= BigInt::from(10));
                    assert!(c.denom() <= &BigInt::from(10));
                }
            }
        }
    }
}
