use std::collections::BTreeMap;
use std::fmt;

use crate::error::{invalid, Result};
use crate::poly::MultiPoly;

use super::sign::SignLattice;

/// `constant + Σ coeff·param`, zero coefficients dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AffineExp {
    constant: i64,
    coeffs: BTreeMap<String, i64>,
}

impl AffineExp {
    pub fn constant(c: i64) -> Self {
        AffineExp { constant: c, coeffs: BTreeMap::new() }
    }

    pub fn param(name: &str) -> Self {
        Self::term(name, 1)
    }

    pub fn term(name: &str, coeff: i64) -> Self {
        let mut e = Self::constant(0);
        if coeff != 0 {
            e.coeffs.insert(name.to_string(), coeff);
        }
        e
    }

    pub fn constant_part(&self) -> i64 {
        self.constant
    }

    pub fn coeffs(&self) -> &BTreeMap<String, i64> {
        &self.coeffs
    }

    pub fn coeff(&self, name: &str) -> i64 {
        self.coeffs.get(name).copied().unwrap_or(0)
    }

    /// The value when no parameter occurs.
    pub fn as_constant(&self) -> Option<i64> {
        self.coeffs.is_empty().then_some(self.constant)
    }

    pub fn is_zero(&self) -> bool {
        self.constant == 0 && self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant() == Some(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant += other.constant;
        for (k, v) in &other.coeffs {
            let c = out.coeffs.entry(k.clone()).or_insert(0);
            *c += v;
            if *c == 0 {
                out.coeffs.remove(k);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::constant(0);
        }
        AffineExp {
            constant: self.constant * k,
            coeffs: self.coeffs.iter().map(|(n, c)| (n.clone(), c * k)).collect(),
        }
    }

    pub fn add_const(&self, c: i64) -> Self {
        self.add(&Self::constant(c))
    }

    /// Product of two affine forms when at least one is constant.
    pub fn mul(&self, other: &Self) -> Option<Self> {
        match (self.as_constant(), other.as_constant()) {
            (Some(a), _) => Some(other.scale(a)),
            (_, Some(b)) => Some(self.scale(b)),
            _ => None,
        }
    }

    pub fn eval(&self, values: &BTreeMap<String, i64>) -> Result<i64> {
        let mut v = self.constant;
        for (name, c) in &self.coeffs {
            let x = values.get(name).ok_or_else(|| invalid(format!("unbound parameter {name}")))?;
            v += c * x;
        }
        Ok(v)
    }

    /// Replace parameters by affine forms; unmapped parameters stay.
    pub fn substitute(&self, map: &BTreeMap<String, AffineExp>) -> Self {
        let mut out = Self::constant(self.constant);
        for (name, c) in &self.coeffs {
            match map.get(name) {
                Some(e) => out = out.add(&e.scale(*c)),
                None => out = out.add(&Self::term(name, *c)),
            }
        }
        out
    }

    pub fn to_poly(&self) -> MultiPoly {
        self.coeffs
            .iter()
            .fold(MultiPoly::constant(self.constant), |acc, (n, c)| acc.add(&MultiPoly::var(n).scale(*c)))
    }

    /// Minimum over the box `param >= lower`; `None` means unbounded below.
    fn min_over(&self, env: &ParamEnv) -> Option<i64> {
        let mut m = self.constant;
        for (name, c) in &self.coeffs {
            if *c < 0 {
                return None;
            }
            m += c * env.lower(name)?;
        }
        Some(m)
    }

    fn max_over(&self, env: &ParamEnv) -> Option<i64> {
        let mut m = self.constant;
        for (name, c) in &self.coeffs {
            if *c > 0 {
                return None;
            }
            m += c * env.lower(name)?;
        }
        Some(m)
    }

    /// Sign of the value over every parameter point allowed by `env`.
    pub fn sign(&self, env: &ParamEnv) -> SignLattice {
        if self.is_zero() {
            return SignLattice::Zero;
        }
        match (self.min_over(env), self.max_over(env)) {
            (Some(lo), _) if lo >= 1 => SignLattice::StrictPos,
            (Some(lo), _) if lo >= 0 => SignLattice::NonNeg,
            (_, Some(hi)) if hi <= -1 => SignLattice::StrictNeg,
            (_, Some(hi)) if hi <= 0 => SignLattice::NonPos,
            _ => SignLattice::Unknown,
        }
    }

    pub fn provably_at_least(&self, k: i64, env: &ParamEnv) -> bool {
        self.min_over(env).is_some_and(|m| m >= k)
    }
}

impl From<i64> for AffineExp {
    fn from(c: i64) -> Self {
        AffineExp::constant(c)
    }
}

impl fmt::Display for AffineExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, c) in &self.coeffs {
            let mag = c.abs();
            if first {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if *c < 0 { "-" } else { "+" })?;
            }
            first = false;
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "{name}")?;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if self.constant != 0 {
            write!(f, "{}{}", if self.constant < 0 { "-" } else { "+" }, self.constant.abs())
        } else {
            Ok(())
        }
    }
}

/// Lower-bound constraints `name >= bound` on named integer parameters.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParamEnv {
    bounds: Vec<(String, i64)>,
}

impl ParamEnv {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builder form; a repeated name replaces the earlier bound.
    pub fn with(mut self, name: &str, lower: i64) -> Self {
        self.bounds.retain(|(n, _)| n != name);
        self.bounds.push((name.to_string(), lower));
        self
    }

    pub fn lower(&self, name: &str) -> Option<i64> {
        self.bounds.iter().find(|(n, _)| n == name).map(|(_, b)| *b)
    }

    pub fn bounds(&self) -> &[(String, i64)] {
        &self.bounds
    }

    pub fn admits(&self, values: &BTreeMap<String, i64>) -> bool {
        self.bounds.iter().all(|(n, b)| values.get(n).is_some_and(|v| v >= b))
    }
}

impl fmt::Display for ParamEnv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.bounds.iter().map(|(n, b)| format!("{n}>={b}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(AffineExp::param("k").add_const(-1).to_string(), "k-1");
        assert_eq!(AffineExp::term("q", -1).add_const(1).to_string(), "-q+1");
        assert_eq!(AffineExp::term("k", 2).to_string(), "2k");
        assert_eq!(AffineExp::constant(-3).to_string(), "-3");
    }

    #[test]
    fn signs_over_box() {
        let env = ParamEnv::new().with("k", 2).with("l", 1).with("q", 1);
        assert_eq!(AffineExp::param("k").add_const(-1).sign(&env), SignLattice::StrictPos);
        assert_eq!(AffineExp::param("l").add_const(-1).sign(&env), SignLattice::NonNeg);
        assert_eq!(AffineExp::term("q", -1).add_const(1).sign(&env), SignLattice::NonPos);
        assert_eq!(AffineExp::param("k").sub(&AffineExp::param("l")).sign(&env), SignLattice::Unknown);
        assert_eq!(AffineExp::param("m").sign(&env), SignLattice::Unknown);
    }
}
