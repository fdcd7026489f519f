//! Exact polynomial arithmetic: dense univariate [`IntPolynomial`] and sparse
//! multivariate [`MultiPoly`] with named variables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense univariate integer polynomial, coefficients stored low degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divide out the largest power of the indeterminate and make the constant
    /// term positive. Two polynomials that differ by a unit `±t^k` normalize
    /// to the same value.
    pub fn normalize_units(&self) -> Self {
        let shift = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let mut coeffs = self.coeffs[shift..].to_vec();
        if coeffs.first().is_some_and(|c| c.is_negative()) {
            coeffs.iter_mut().for_each(|c| *c = -&*c);
        }
        Self::new(coeffs)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`
    /// in `Z[t]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let lead = d.coeffs.last().expect("nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() { Some(Self::zero()) } else { None };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd];
            if c.is_zero() {
                continue;
            }
            if !(c % lead).is_zero() {
                return None;
            }
            let f = c / lead;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &f * dc;
            }
            quot[i] = f;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(quot))
    }

    /// `1 + t + ... + t^(n-1)`.
    pub fn cyclotomic_sum(n: usize) -> Self {
        Self::new(vec![BigInt::one(); n])
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_mag = !mag.is_one() || d == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match d {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{d}")?,
            }
        }
        Ok(())
    }
}

/// A monomial: sorted `(variable, exponent)` pairs with positive exponents.
pub type Monomial = Vec<(String, u32)>;

/// Sparse multivariate polynomial with big-integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m: BTreeMap<String, u32> = a.iter().cloned().collect();
    for (v, e) in b {
        *m.entry(v.clone()).or_insert(0) += e;
    }
    m.into_iter().collect()
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(Vec::new(), c.into());
        p
    }

    pub fn var(name: &str) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(vec![(name.to_string(), 1)], BigInt::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> Vec<String> {
        let mut vs: Vec<String> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn contains_var(&self, v: &str) -> bool {
        self.terms.keys().any(|m| m.iter().any(|(x, _)| x == v))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * &k);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(MultiPoly::constant(1), |acc, _| acc.mul(self))
    }

    /// Replace every occurrence of `var` by `value`.
    pub fn substitute(&self, var: &str, value: &MultiPoly) -> Self {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = Vec::new();
            let mut power = 0;
            for (v, e) in m {
                if v == var {
                    power = *e;
                } else {
                    rest.push((v.clone(), *e));
                }
            }
            let mut term = MultiPoly::zero();
            term.add_term(rest, c.clone());
            out = out.add(&term.mul(&value.pow(power)));
        }
        out
    }

    /// Evaluate at integer values; every variable must be bound.
    pub fn eval(&self, values: &BTreeMap<String, BigInt>) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m {
                let x = values
                    .get(v)
                    .ok_or_else(|| Error::InvalidInput(format!("unbound variable {v}")))?;
                term *= num_traits::pow(x.clone(), *e as usize);
            }
            total += term;
        }
        Ok(total)
    }

    /// Evaluate with `i64` bindings given as `(name, value)` pairs.
    pub fn eval_i64(&self, values: &[(&str, i64)]) -> Result<BigInt> {
        let map = values.iter().map(|(k, v)| (k.to_string(), BigInt::from(*v))).collect();
        self.eval(&map)
    }

    /// Parse a compact formula such as `3(-t - q + 3qst)^2`.
    ///
    /// Variables are single lowercase letters, juxtaposition multiplies, `^`
    /// takes a nonnegative integer exponent.
    pub fn parse(src: &str) -> Result<Self> {
        let mut p = PolyParser { chars: src.chars().collect(), pos: 0 };
        let out = p.sum()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(out)
    }
}

struct PolyParser {
    chars: Vec<char>,
    pos: usize,
}

impl PolyParser {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: 1, col: self.pos + 1, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<MultiPoly> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.product()?.neg()
            }
            Some('+') => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.product()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(c) if c == '(' || c.is_ascii_alphanumeric() => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.number()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(MultiPoly::constant(self.number()?)),
            Some(c) if c.is_ascii_lowercase() => {
                self.pos += 1;
                Ok(MultiPoly::var(&c.to_string()))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text: monomials by descending total degree, then by variable
    /// names; explicit `+`/`-` between terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().map(|(_, e)| e).sum();
            let db: u32 = b.iter().map(|(_, e)| e).sum();
            db.cmp(&da).then_with(|| a.cmp(b))
        });
        for (i, (m, c)) in terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_empty() {
                parts.push(mag.to_string());
            }
            for (v, e) in m.iter() {
                if *e == 1 {
                    parts.push(v.clone());
                } else {
                    parts.push(format!("{v}^{e}"));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn univariate_display_and_eval() {
        let p = IntPolynomial::from_i64(&[1, -3, 1]);
        assert_eq!(p.to_string(), "t^2 - 3t + 1");
        assert_eq!(p.eval(&BigInt::from(-1)), BigInt::from(5));
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = IntPolynomial::from_i64(&[1, -1, 1]);
        let b = IntPolynomial::from_i64(&[2, 0, 3]);
        assert_eq!(a.mul(&b).div_exact(&b), Some(a.clone()));
        assert_eq!(a.add(&IntPolynomial::from_i64(&[1])).div_exact(&b), None);
    }

    #[test]
    fn normalize_units_strips_power_and_sign() {
        let p = IntPolynomial::from_i64(&[0, 0, -1, 1, -1]);
        assert_eq!(p.normalize_units(), IntPolynomial::from_i64(&[1, -1, 1]));
    }

    #[test]
    fn parse_compact_formula() {
        let p = MultiPoly::parse("3(-t - q + 3qst)^2").unwrap();
        let v = p.eval_i64(&[("q", 1), ("s", 1), ("t", 2)]).unwrap();
        assert_eq!(v, BigInt::from(27));
        let expanded = MultiPoly::parse("27q^2s^2t^2 - 18q^2st - 18qst^2 + 3q^2 + 6qt + 3t^2").unwrap();
        assert_eq!(p, expanded);
    }

    #[test]
    fn parse_errors_have_columns() {
        match MultiPoly::parse("3(q + ") {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 7),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn substitution_shifts_variable() {
        let p = MultiPoly::parse("t^2").unwrap();
        let shifted = p.substitute("t", &MultiPoly::parse("t - 1").unwrap());
        assert_eq!(shifted, MultiPoly::parse("t^2 - 2t + 1").unwrap());
    }

    #[test]
    fn canonical_text() {
        let p = MultiPoly::parse("1 - 3ql + 9lqst").unwrap();
        assert_eq!(p.to_string(), "9*l*q*s*t - 3*l*q + 1");
    }
}
