//! Polynomials in the cycle-count variables `X_1, X_2, …` with exact
//! rational coefficients, graded by `deg_w(X_i) = i`.
//!
//! Evaluating `X_i` at the number of `i`-cycles of a permutation turns a
//! polynomial into a class function of `S_m` ([`CharPolynomial::eval_rho_all`]).

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::characters::ClassFunction;
use crate::error::{Error, Result};
use crate::partitions::{factorial, CycleType};

/// Exponent vector: entry `i` is the exponent of `X_{i+1}`. No trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// `X_i` (1-based).
    pub fn var(i: usize) -> Self {
        assert!(i >= 1, "variables start at X_1");
        let mut exps = vec![0; i];
        exps[i - 1] = 1;
        Monomial(exps)
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    /// Exponent of `X_i` (1-based).
    pub fn exponent(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ i·e_i`
    pub fn weight(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &e)| (i + 1) * e as usize)
            .sum()
    }

    /// `Σ e_i`
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let exps = (0..n)
            .map(|i| self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0))
            .collect();
        Monomial(exps)
    }

    /// Value at `X_i := n_i(t)`.
    fn eval_int(&self, t: &CycleType) -> BigInt {
        let mut acc = BigInt::one();
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                let x = t.count(i + 1);
                if x == 0 {
                    return BigInt::zero();
                }
                acc *= BigInt::from(x).pow(e);
            }
        }
        acc
    }

    fn fmt_with(&self, prefix: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{prefix}{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        self.fmt_with("X", f)
    }
}

/// Weighted degree; the zero polynomial has degree `NegInfinity`, below every
/// finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeightedDegree {
    NegInfinity,
    Finite(usize),
}

impl WeightedDegree {
    pub fn finite(self) -> Option<usize> {
        match self {
            WeightedDegree::NegInfinity => None,
            WeightedDegree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for WeightedDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightedDegree::NegInfinity => f.write_str("-inf"),
            WeightedDegree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A sparse polynomial in `X_1, X_2, …` over `Q`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CharPolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl CharPolynomial {
    pub fn zero() -> Self {
        CharPolynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// `X_i` (1-based).
    pub fn var(i: usize) -> Self {
        Self::monomial(Monomial::var(i), BigRational::one())
    }

    pub fn monomial(mono: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        CharPolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigRational {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, mono: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &CharPolynomial) -> CharPolynomial {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &CharPolynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, other: &CharPolynomial, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), d * c);
        }
    }

    pub fn sub(&self, other: &CharPolynomial) -> CharPolynomial {
        let mut out = self.clone();
        out.add_scaled(other, &-BigRational::one());
        out
    }

    pub fn neg(&self) -> CharPolynomial {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> CharPolynomial {
        if c.is_zero() {
            return Self::zero();
        }
        CharPolynomial {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul(&self, other: &CharPolynomial) -> CharPolynomial {
        let mut out = CharPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> CharPolynomial {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `max Σ i·e_i` over the monomials.
    pub fn weighted_degree(&self) -> WeightedDegree {
        self.terms
            .keys()
            .map(Monomial::weight)
            .max()
            .map_or(WeightedDegree::NegInfinity, WeightedDegree::Finite)
    }

    /// Plain total degree (`deg X_i = 1`); `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest `i` with `X_i` occurring, 0 for constants.
    pub fn max_variable(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    /// Value at `X_i := n_i(t)`; variables beyond `t`'s degree evaluate to 0.
    pub fn eval_rho(&self, t: &CycleType) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (m, c)| {
            let v = m.eval_int(t);
            if v.is_zero() {
                acc
            } else {
                acc + c * BigRational::from_integer(v)
            }
        })
    }

    /// The class function `ρ_m(P)` of `S_m`.
    pub fn eval_rho_all(&self, m: usize) -> ClassFunction {
        ClassFunction::from_fn(m, |t| self.eval_rho(t))
    }

    /// Substitutes `X_i ↦ images[i-1]`. Variables past `images.len()` are an error.
    pub fn compose(&self, images: &[CharPolynomial]) -> Result<CharPolynomial> {
        let needed = self.max_variable();
        if needed > images.len() {
            return Err(Error::Precondition(format!(
                "substitution covers {} variables, polynomial uses X{needed}",
                images.len()
            )));
        }
        let mut powers: Vec<Vec<CharPolynomial>> = images
            .iter()
            .map(|p| vec![CharPolynomial::one(), p.clone()])
            .collect();
        let mut out = CharPolynomial::zero();
        for (mono, c) in &self.terms {
            let mut term = CharPolynomial::constant(c.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul(&cache[1]);
                    cache.push(next);
                }
                term = term.mul(&cache[e as usize]);
            }
            out.add_assign(&term);
        }
        Ok(out)
    }

    /// Terms in printing order: decreasing weighted degree, then lexicographic
    /// by variable index (higher power of a lower-index variable first).
    fn printing_order(&self) -> Vec<(&Monomial, &BigRational)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            Reverse(a.weight())
                .cmp(&Reverse(b.weight()))
                .then_with(|| b.0.cmp(&a.0))
        });
        terms
    }

    /// Prints with a custom variable prefix (e.g. `E` for polynomials in `E_1, E_2, …`).
    pub fn display_with<'a>(&'a self, prefix: &'a str) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, prefix }
    }
}

struct PolyDisplay<'a> {
    poly: &'a CharPolynomial,
    prefix: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (mono, c)) in self.poly.printing_order().into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if mono.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                mono.fmt_with(self.prefix, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for CharPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("X").fmt(f)
    }
}

impl fmt::Debug for CharPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for CharPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_poly_with(s, "X")
    }
}

/// Parses `coef*mono ± …` with variables named `X1, X2, …`.
pub fn parse_poly(text: &str) -> Result<CharPolynomial> {
    parse_poly_with(text, "X")
}

/// Like [`parse_poly`] but with a custom variable prefix.
pub fn parse_poly_with(text: &str, prefix: &str) -> Result<CharPolynomial> {
    PolyParser {
        src: text.as_bytes(),
        pos: 0,
        prefix: prefix.as_bytes(),
    }
    .parse()
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
    prefix: &'a [u8],
}

impl PolyParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn small(&mut self, what: &str) -> Result<u32> {
        let start = self.pos;
        let n = self.digits()?;
        u32::try_from(n).map_err(|_| Error::parse(start, format!("{what} too large")))
    }

    fn parse(mut self) -> Result<CharPolynomial> {
        let mut out = CharPolynomial::zero();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            None => return Err(Error::parse(self.pos, "empty polynomial")),
            _ => false,
        };
        loop {
            let (mono, mut coef) = self.term()?;
            if negative {
                coef = -coef;
            }
            out.add_term(mono, coef);
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                Some(c) => {
                    return Err(Error::parse(
                        self.pos,
                        format!("unexpected `{}`", c as char),
                    ));
                }
            }
        }
    }

    fn term(&mut self) -> Result<(Monomial, BigRational)> {
        let mut coef = BigRational::one();
        let mut mono = Monomial::one();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.digits()?;
                    let value = if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let at = self.pos;
                        let den = self.digits()?;
                        if den.is_zero() {
                            return Err(Error::parse(at, "zero denominator"));
                        }
                        BigRational::new(num, den)
                    } else {
                        BigRational::from_integer(num)
                    };
                    coef *= value;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    let name_end = self.src[start..]
                        .iter()
                        .position(|b| !b.is_ascii_alphabetic())
                        .map_or(self.src.len(), |k| start + k);
                    if &self.src[start..name_end] != self.prefix {
                        let name = String::from_utf8_lossy(&self.src[start..name_end]);
                        return Err(Error::parse(
                            start,
                            format!("unknown variable name `{name}`"),
                        ));
                    }
                    self.pos = name_end;
                    if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                        return Err(Error::parse(start, "variable needs an index"));
                    }
                    let index = self.small("variable index")? as usize;
                    if index == 0 {
                        return Err(Error::parse(start, "unknown variable (indices start at 1)"));
                    }
                    let mut exp = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        exp = self.small("exponent")?;
                    }
                    let mut exps = vec![0; index];
                    exps[index - 1] = exp;
                    mono = mono.mul(&Monomial::from_exponents(exps));
                }
                Some(c) => {
                    return Err(Error::parse(
                        self.pos,
                        format!("unexpected `{}`", c as char),
                    ))
                }
                None => return Err(Error::parse(self.pos, "unexpected end of input")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((mono, coef));
            }
        }
    }
}

/// `X_i (X_i - 1) ⋯ (X_i - e + 1)`
pub fn falling_factorial(i: usize, e: usize) -> CharPolynomial {
    let x = CharPolynomial::var(i);
    (0..e).fold(CharPolynomial::one(), |acc, k| {
        acc.mul(&x.sub(&CharPolynomial::integer(k as i64)))
    })
}

/// `C(X_i, j) = X_i (X_i - 1) ⋯ (X_i - j + 1) / j!`
pub fn binomial(i: usize, j: usize) -> CharPolynomial {
    let denom = BigRational::from_integer(BigInt::from(factorial(j)));
    falling_factorial(i, j).scale(&denom.recip())
}

/// Polynomial in `X_i` equal to 1 where `X_i = k` and 0 at the other values
/// `0..=m`: `R_k(X_i) / R_k(k)` with `R_k(Z) = ∏_{j ≠ k, 0 ≤ j ≤ m} (Z - j)`.
pub fn value_indicator(i: usize, k: usize, m: usize) -> CharPolynomial {
    let x = CharPolynomial::var(i);
    let mut numerator = CharPolynomial::one();
    let mut denominator = BigRational::one();
    for j in (0..=m).filter(|&j| j != k) {
        numerator = numerator.mul(&x.sub(&CharPolynomial::integer(j as i64)));
        denominator *= BigRational::from_integer(BigInt::from(k as i64 - j as i64));
    }
    numerator.scale(&denominator.recip())
}

/// `∏_{i=1}^{m} D_{n_i}(X_i)`: evaluates to 1 on the class `t` of `S_m` and 0 elsewhere.
pub fn class_indicator(t: &CycleType) -> CharPolynomial {
    let m = t.degree();
    (1..=m).fold(CharPolynomial::one(), |acc, i| {
        acc.mul(&value_indicator(i, t.count(i), m))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::cycle_types;

    fn poly(s: &str) -> CharPolynomial {
        s.parse().unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn ring_operations() {
        let x1 = CharPolynomial::var(1);
        let sq = x1.mul(&x1);
        assert_eq!(sq, poly("X1^2"));
        assert_eq!(sq.weighted_degree(), WeightedDegree::Finite(2));
        let x2 = CharPolynomial::var(2);
        let prod = x2
            .add(&CharPolynomial::one())
            .mul(&x2.sub(&CharPolynomial::one()));
        assert_eq!(prod, poly("X2^2 - 1"));
        assert_eq!(prod.weighted_degree(), WeightedDegree::Finite(4));
        assert!(x1.sub(&x1).is_zero());
    }

    #[test]
    fn weighted_degrees() {
        assert_eq!(poly("X3").weighted_degree(), WeightedDegree::Finite(3));
        assert_eq!(poly("X1^2*X2").weighted_degree(), WeightedDegree::Finite(4));
        assert_eq!(poly("5").weighted_degree(), WeightedDegree::Finite(0));
        assert_eq!(
            CharPolynomial::zero().weighted_degree(),
            WeightedDegree::NegInfinity
        );
        assert!(WeightedDegree::NegInfinity < WeightedDegree::Finite(0));
        assert_eq!(poly("X1^2*X2").degree(), Some(3));
    }

    #[test]
    fn evaluation() {
        let id3 = CycleType::identity(3);
        assert_eq!(poly("X1").eval_rho(&id3), q(3));
        let rel = poly("X1 + 2*X2 + 3*X3 - 3");
        assert!(rel.eval_rho_all(3).is_zero());
        let falling = poly("X2").mul(&poly("X2 - 1")).mul(&poly("X2 - 2"));
        assert!(falling.eval_rho_all(4).is_zero());
        // variables past the degree vanish
        assert_eq!(poly("X5 + 1").eval_rho(&id3), q(1));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(poly("X1 - 1").to_string(), "X1 - 1");
        let p = poly("1/2*X1^2 - 1/2*X1 + X2");
        assert_eq!(
            p.coefficient(&Monomial::from_exponents(vec![2])),
            BigRational::new(1.into(), 2.into())
        );
        assert_eq!(p.coefficient(&Monomial::var(2)), q(1));
        assert_eq!(p.to_string(), "1/2*X1^2 + X2 - 1/2*X1");
        assert_eq!(poly(&p.to_string()), p);
        assert_eq!(poly("2*X1^2*X2 - 1/3").to_string(), "2*X1^2*X2 - 1/3");
        assert_eq!(poly("  -X1*X1 ").to_string(), "-X1^2");
        assert_eq!(CharPolynomial::zero().to_string(), "0");
        assert_eq!(poly("0"), CharPolynomial::zero());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_poly("X0"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(
            parse_poly("X1 + Y2"),
            Err(Error::Parse { pos: 5, .. })
        ));
        assert!(matches!(parse_poly("X1 +"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_poly("1/0"),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(matches!(parse_poly(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_poly("X1 X2"),
            Err(Error::Parse { pos: 3, .. })
        ));
    }

    #[test]
    fn indicators() {
        let one = class_indicator(&CycleType::identity(1));
        assert_eq!(one.eval_rho(&CycleType::identity(1)), q(1));
        for (m, target) in [(3, "1^1 2^1"), (4, "2^2")] {
            let target: CycleType = target.parse().unwrap();
            let ind = class_indicator(&target);
            for t in cycle_types(m) {
                let expected = if t == target { 1 } else { 0 };
                assert_eq!(ind.eval_rho(&t), q(expected), "class {t}");
            }
        }
    }

    #[test]
    fn composition() {
        let p = poly("X1^2 - X2");
        let images = [poly("X1 + 1"), poly("X3")];
        assert_eq!(p.compose(&images).unwrap(), poly("X1^2 + 2*X1 + 1 - X3"));
        assert!(poly("X3").compose(&images[..1]).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(1, 2), poly("1/2*X1^2 - 1/2*X1"));
        assert_eq!(falling_factorial(2, 0), CharPolynomial::one());
    }
}
