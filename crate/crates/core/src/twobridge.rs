//! Two-bridge knot arithmetic and the Seifert-matrix oracle.
//!
//! A knot `K[a1, ..., am]` is named by a continued fraction. When every term
//! is even and the length is even, `[2a1, 2b1, ..., 2am, 2bm]` is an
//! [`EvenExpansion`] and spans a plumbed genus-`m` Seifert surface.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};
use crate::linalg::IntMatrix;
use crate::poly::IntPolynomial;
use crate::Order;

/// A reduced fraction `p/q` with `q > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    pub p: BigInt,
    pub q: BigInt,
}

impl Fraction {
    /// Reduce and move the sign to the numerator.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (mut p, mut q) = (p.into(), q.into());
        if q.is_zero() {
            return Err(invalid("fraction with zero denominator"));
        }
        let g = p.gcd(&q);
        p /= &g;
        q /= &g;
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        Ok(Fraction { p, q })
    }

    /// `|p|`, the knot determinant.
    pub fn determinant(&self) -> BigInt {
        self.p.abs()
    }

    pub fn is_knot(&self) -> bool {
        self.p.is_odd()
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// A nonempty sequence of nonzero integers `[a1, ..., am]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    terms: Vec<i64>,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<i64>) -> Result<Self> {
        if terms.is_empty() {
            return Err(invalid("empty continued fraction"));
        }
        if let Some(i) = terms.iter().position(|&a| a == 0) {
            return Err(invalid(format!("term at index {} is zero", i + 1)));
        }
        Ok(ContinuedFraction { terms })
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    /// Whether every term is even and there is an even number of them.
    pub fn is_even_form(&self) -> bool {
        self.terms.len() % 2 == 0 && self.terms.iter().all(|a| a % 2 == 0)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `[2a1, 2b1, ..., 2am, 2bm]` stored as the pairs `(ai, bi)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EvenExpansion {
    pairs: Vec<(i64, i64)>,
}

impl EvenExpansion {
    pub fn new(pairs: Vec<(i64, i64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(invalid("even expansion needs at least one pair"));
        }
        if pairs.iter().any(|&(a, b)| a == 0 || b == 0) {
            return Err(invalid("even expansion entries must be nonzero"));
        }
        Ok(EvenExpansion { pairs })
    }

    /// Read `[2a1, 2b1, ...]` from its continued-fraction terms.
    pub fn from_terms(terms: &[i64]) -> Result<Self> {
        let cf = ContinuedFraction::new(terms.to_vec())?;
        if !cf.is_even_form() {
            return Err(invalid(format!("{cf} is not an even expansion")));
        }
        Self::new(terms.chunks(2).map(|c| (c[0] / 2, c[1] / 2)).collect())
    }

    /// `K[-2q, 2s, -2t, 2l]`.
    pub fn genus_two(q: i64, s: i64, t: i64, l: i64) -> Result<Self> {
        Self::new(vec![(-q, s), (-t, l)])
    }

    /// `K[2k, -2l]`.
    pub fn genus_one(k: i64, l: i64) -> Result<Self> {
        Self::new(vec![(k, -l)])
    }

    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.pairs
    }

    pub fn genus(&self) -> usize {
        self.pairs.len()
    }

    pub fn to_continued_fraction(&self) -> ContinuedFraction {
        let terms = self.pairs.iter().flat_map(|&(a, b)| [2 * a, 2 * b]).collect();
        ContinuedFraction { terms }
    }
}

/// Evaluate `a1 + 1/(a2 + 1/(... + 1/am))` with the projective recurrence, so
/// an intermediate `1/0` never divides. A final value of `1/0` is an error.
pub fn cf_value(cf: &ContinuedFraction) -> Result<Fraction> {
    let (mut p, mut q) = (BigInt::one(), BigInt::zero());
    for &a in cf.terms.iter().rev() {
        let np = BigInt::from(a) * &p + &q;
        q = p;
        p = np;
    }
    if q.is_zero() {
        return Err(invalid(format!("{cf} evaluates to 1/0")));
    }
    Fraction::new(p, q)
}

pub fn mirror(cf: &ContinuedFraction) -> ContinuedFraction {
    ContinuedFraction { terms: cf.terms.iter().map(|a| -a).collect() }
}

/// Two-bridge classification: `|p1| = |p2|` and `q2 = ±q1^(±1) mod p`.
///
/// Mirror images are identified, matching the freedom to mirror knots.
pub fn same_knot(f1: &Fraction, f2: &Fraction) -> Result<bool> {
    if !f1.is_knot() || !f2.is_knot() {
        return Err(invalid("same_knot needs odd numerators"));
    }
    let p = f1.p.abs();
    if p != f2.p.abs() {
        return Ok(false);
    }
    if p.is_one() {
        return Ok(true);
    }
    let q1 = f1.q.mod_floor(&p);
    let q2 = f2.q.mod_floor(&p);
    let inv = mod_inverse(&q1, &p).ok_or_else(|| invalid("q not invertible mod p"))?;
    let candidates = [q1.clone(), (&p - &q1).mod_floor(&p), inv.clone(), (&p - &inv).mod_floor(&p)];
    Ok(candidates.contains(&q2))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Rolfsen names of the two-bridge knots up to seven crossings.
const KNOT_TABLE: &[(&str, i64, i64)] = &[
    ("3_1", 3, 1),
    ("4_1", 5, 2),
    ("5_1", 5, 1),
    ("5_2", 7, 2),
    ("6_1", 9, 2),
    ("6_2", 11, 3),
    ("6_3", 13, 5),
    ("7_1", 7, 1),
    ("7_2", 11, 2),
    ("7_3", 13, 3),
    ("7_4", 15, 4),
    ("7_5", 17, 5),
    ("7_6", 19, 8),
    ("7_7", 21, 8),
];

/// Table name of a two-bridge knot, `0_1` for the unknot.
pub fn knot_name(f: &Fraction) -> Option<&'static str> {
    if !f.is_knot() {
        return None;
    }
    if f.p.abs().is_one() {
        return Some("0_1");
    }
    KNOT_TABLE.iter().find_map(|&(name, p, q)| {
        let g = Fraction::new(p, q).expect("table entry");
        same_knot(f, &g).ok().filter(|&b| b).map(|_| name)
    })
}

/// Plumbing Seifert matrix of the genus-`m` surface.
///
/// The diagonal is `(a1, -b1, a2, -b2, ...)` and the superdiagonal is all
/// ones. With this choice `|det(V + V^T)| = |p|` on every expansion.
pub fn seifert_matrix(e: &EvenExpansion) -> IntMatrix {
    let n = 2 * e.genus();
    let mut v = IntMatrix::zeros(n, n);
    for (i, &(a, b)) in e.pairs.iter().enumerate() {
        v.set(2 * i, 2 * i, BigInt::from(a));
        v.set(2 * i + 1, 2 * i + 1, BigInt::from(-b));
    }
    for k in 0..n - 1 {
        v.set(k, k + 1, BigInt::one());
    }
    v
}

/// Fraction-free determinant of a matrix over `Z[t]`.
fn poly_det(mut a: Vec<Vec<IntPolynomial>>) -> IntPolynomial {
    let n = a.len();
    let mut sign = false;
    let mut prev = IntPolynomial::from_i64(&[1]);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return IntPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = IntPolynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let d = if n == 0 { IntPolynomial::from_i64(&[1]) } else { a[n - 1][n - 1].clone() };
    if sign {
        d.neg()
    } else {
        d
    }
}

/// `det(V - t V^T)` normalized so the lowest-degree coefficient is positive.
pub fn alexander(e: &EvenExpansion) -> IntPolynomial {
    let v = seifert_matrix(e);
    let n = v.rows();
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| IntPolynomial::new(vec![v.get(i, j).clone(), -v.get(j, i)]))
                .collect()
        })
        .collect();
    poly_det(entries).normalize_units()
}

/// Sylvester matrix of `f` and `g`.
pub fn sylvester(f: &IntPolynomial, g: &IntPolynomial) -> IntMatrix {
    let m = f.degree().unwrap_or(0);
    let n = g.degree().unwrap_or(0);
    let size = m + n;
    let mut s = IntMatrix::zeros(size, size);
    for i in 0..n {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            s.set(i, i + k, c.clone());
        }
    }
    for i in 0..m {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            s.set(n + i, i + k, c.clone());
        }
    }
    s
}

pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
    sylvester(f, g).det()
}

/// `|H1(Σn(K))|` as `|Res(Δ, 1 + t + ... + t^(n-1))|`; a zero resultant
/// means infinite homology.
pub fn h1_cyclic_cover_order(e: &EvenExpansion, n: usize) -> Result<Order> {
    if n < 2 {
        return Err(invalid("cover degree must be at least 2"));
    }
    let r = resultant(&alexander(e), &IntPolynomial::cyclotomic_sum(n)).abs();
    Ok(if r.is_zero() { Order::Infinite } else { Order::Finite(r) })
}

/// `|Δ(-1)|`.
pub fn determinant(e: &EvenExpansion) -> BigInt {
    alexander(e).eval(&BigInt::from(-1)).abs()
}
