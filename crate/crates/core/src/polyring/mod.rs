//! Exact arithmetic kernel: rationals and canonical multivariate polynomials
//! over named parameters.
//!
//! A [`Polynomial`] is a sorted list of `(Monomial, Rational)` terms with no
//! zero coefficients and no repeated monomials, so structural equality is
//! mathematical equality. Terms are kept in *descending* monomial order,
//! which is also the order the printer emits.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use parse::{parse, ParseError};

/// Exact rational scalar. Always normalized: positive denominator, reduced.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Product of parameters with positive exponents, names sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Arc<str>, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(Arc::from(name), 1)])
    }

    /// Builds a monomial from arbitrary `(name, exponent)` pairs; zero
    /// exponents are dropped and repeated names are merged.
    pub fn from_pairs<'a, I: IntoIterator<Item = (&'a str, u32)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<&str, u32> = BTreeMap::new();
        for (name, e) in pairs {
            *acc.entry(name).or_default() += e;
        }
        Monomial(
            acc.into_iter()
                .filter(|(_, e)| *e > 0)
                .map(|(n, e)| (Arc::from(n), e))
                .collect(),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, name: &str) -> u32 {
        self.0
            .iter()
            .find(|(n, _)| n.as_ref() == name)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(n, e)| (n.as_ref(), *e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl Ord for Monomial {
    /// Lexicographic on the sorted name lists, then total degree, then the
    /// exponent vector.
    fn cmp(&self, other: &Self) -> Ordering {
        let names_a = self.0.iter().map(|(n, _)| n);
        let names_b = other.0.iter().map(|(n, _)| n);
        names_a
            .cmp(names_b)
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| {
                let ea = self.0.iter().map(|(_, e)| e);
                let eb = other.0.iter().map(|(_, e)| e);
                ea.cmp(eb)
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical multivariate polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(name: &str) -> Self {
        Polynomial {
            terms: vec![(Monomial::var(name), Rational::one())],
        }
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Collects arbitrary terms into canonical form.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Polynomial {
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Terms in canonical (descending) order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    /// The value as a rational when the polynomial has no parameters.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Parameter names occurring in the polynomial, sorted.
    pub fn parameters(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .terms
            .iter()
            .flat_map(|(m, _)| m.factors().map(|(n, _)| n.to_string()))
            .collect();
        names.sort();
        names.dedup();
        names
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Substitutes rational values for the bound parameters.
    pub fn specialize(&self, bindings: &BTreeMap<String, Rational>) -> Polynomial {
        if bindings.is_empty() {
            return self.clone();
        }
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| {
            let mut coeff = c.clone();
            let mut kept = Vec::new();
            for (name, e) in m.factors() {
                match bindings.get(name) {
                    Some(v) => coeff *= num_traits::pow(v.clone(), e as usize),
                    None => kept.push((name, e)),
                }
            }
            (Monomial::from_pairs(kept), coeff)
        }))
    }

    /// Substitutes polynomials for parameters.
    pub fn substitute(&self, subs: &BTreeMap<String, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(c.clone());
            let mut kept = Vec::new();
            for (name, e) in m.factors() {
                match subs.get(name) {
                    Some(p) => {
                        for _ in 0..e {
                            acc = &acc * p;
                        }
                    }
                    None => kept.push((name, e)),
                }
            }
            out += &acc * &Polynomial::term(Rational::one(), Monomial::from_pairs(kept));
        }
        out
    }

    /// Reduces modulo `name^2 + 1`, treating `name` as the imaginary unit.
    pub fn reduce_imaginary(&self, name: &str) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| {
            let e = m.exponent(name);
            let mut coeff = c.clone();
            if (e / 2) % 2 == 1 {
                coeff = -coeff;
            }
            let kept = m.factors().map(|(n, k)| if n == name { (n, e % 2) } else { (n, k) });
            (Monomial::from_pairs(kept), coeff)
        }))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            // descending order
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial { terms: out }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self + rhs;
    }
}

impl AddAssign for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        *self += &rhs;
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        Polynomial::from_terms(
            self.terms
                .iter()
                .flat_map(|(ma, ca)| rhs.terms.iter().map(move |(mb, cb)| (ma.mul(mb), ca * cb))),
        )
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<i64> for Polynomial {
    fn from(n: i64) -> Self {
        Polynomial::from_int(n)
    }
}

impl std::str::FromStr for Polynomial {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    for (idx, (name, e)) in m.factors().enumerate() {
        if idx > 0 {
            f.write_str("*")?;
        }
        f.write_str(name)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        parse(s).unwrap()
    }

    #[test]
    fn zero_and_cancellation() {
        assert!(p("0").is_zero());
        assert!(p("a^2 - a^2").is_zero());
        assert!((&p("a") + &p("-a")).is_zero());
        assert!((&p("a") - &p("a")).is_zero());
        assert!(!(&p("eta") - &p("1")).is_zero());
    }

    #[test]
    fn half_times_parameter() {
        let q = p("1/2*a");
        assert_eq!(q.terms().len(), 1);
        assert_eq!(q.terms()[0].1, rat(1, 2));
        assert_eq!(q.terms()[0].0, Monomial::var("a"));
    }

    #[test]
    fn add_orders_terms_canonically() {
        assert_eq!(&p("1") + &p("1"), Polynomial::from_int(2));
        let s = &p("eta") + &p("1/2");
        // {eta} > {} so the parameter term leads
        assert_eq!(s.to_string(), "eta + 1/2");
        assert_eq!(s.terms().len(), 2);
    }

    #[test]
    fn products() {
        assert!((&p("a") * &p("0")).is_zero());
        assert_eq!(&p("a + 1") * &p("a - 1"), p("a^2 - 1"));
        let q = &p("theta21") * &p("theta22");
        assert_eq!(q.terms().len(), 1);
        assert_eq!(q.to_string(), "theta21*theta22");
    }

    #[test]
    fn specialization() {
        let b = |pairs: &[(&str, Rational)]| -> BTreeMap<String, Rational> {
            pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
        };
        assert_eq!(p("a + 1").specialize(&b(&[("a", int(1))])), p("2"));
        assert_eq!(p("eta").specialize(&b(&[])), p("eta"));
        assert_eq!(p("1/2*eta").specialize(&b(&[("eta", int(2))])), p("1"));
        assert_eq!(p("a*b + b").specialize(&b(&[("a", int(3))])), p("4*b"));
    }

    #[test]
    fn imaginary_reduction() {
        assert_eq!(p("i^2").reduce_imaginary("i"), p("-1"));
        assert_eq!(p("i^3*x + i^4").reduce_imaginary("i"), p("-i*x + 1"));
    }

    #[test]
    fn monomial_order() {
        let m = |s: &[(&str, u32)]| Monomial::from_pairs(s.iter().copied());
        assert!(m(&[]) < m(&[("a", 1)]));
        assert!(m(&[("a", 1)]) < m(&[("a", 2)]));
        assert!(m(&[("a", 1)]) < m(&[("a", 1), ("b", 1)]));
        assert!(m(&[("a", 1), ("b", 1)]) < m(&[("b", 1)]));
    }
}
