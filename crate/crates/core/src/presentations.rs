//! The genus-one and genus-two cyclic presentations of `π1(Σn)`, their
//! abelianizations, and checks of the word identities relating them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{invalid, Error, Result};
use crate::linalg::in_row_span;
pub use crate::linalg::{smith_normal_form, IntMatrix, SnfResult};
use crate::poly::MultiPoly;
use crate::words::{
    equal_up_to_cyclic, exponent_sums, instantiate, reduce, substitute, AffineExp, CyclicMatch, ParamEnv,
    ParamWord, Word,
};
use crate::Order;

/// Generators and named relators over a parameter environment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<(String, ParamWord)>,
    pub env: ParamEnv,
}

/// Generator names for `n` cyclically permuted generators: `x, y, z, t, w`
/// up to five, `x1, ..., xn` beyond.
pub fn generator_names(n: usize) -> Vec<String> {
    const LETTERS: [&str; 5] = ["x", "y", "z", "t", "w"];
    if n <= LETTERS.len() {
        LETTERS[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

const GENUS_ONE_TEMPLATE: &str = "(a^(-k) b^(k))^(l) (c^(-k) b^(k))^(l-1) c^(-k) b^(k-1)";

/// The relator `w(x_{k-2}, ..., x_{k+2})` with `a, ..., e` standing for the
/// five consecutive generators.
pub const MV_TEMPLATE: &str = "(((c^(q) d^(-q))^(-s) c (b^(q) c^(-q))^(s))^(t) c^(q) d^(-q) \
((d^(q) e^(-q))^(-s) d (c^(q) d^(-q))^(s))^(-t))^(-l) \
(c^(q) d^(-q))^(-s) c (b^(q) c^(-q))^(s) \
(((b^(q) c^(-q))^(-s) b (a^(q) b^(-q))^(s))^(t) b^(q) c^(-q) \
((c^(q) d^(-q))^(-s) c (b^(q) c^(-q))^(s))^(-t))^(l)";

fn placeholders(template: &str, gens: &[String], i: usize, offsets: &[(&str, isize)]) -> ParamWord {
    let n = gens.len() as isize;
    let map: BTreeMap<String, String> = offsets
        .iter()
        .map(|&(p, off)| (p.to_string(), gens[((i as isize + off).rem_euclid(n)) as usize].clone()))
        .collect();
    ParamWord::parse(template).expect("template parses").rename(&map)
}

/// `r_i = (x_i^-k x_{i+1}^k)^l (x_{i+2}^-k x_{i+1}^k)^(l-1) x_{i+2}^-k x_{i+1}^(k-1)`
/// for `i = 1..n`, plus `r0 = x_1 ... x_n`, symbolic in `k >= 2, l >= 1`.
pub fn genus_one_presentation(n: usize) -> Result<Presentation> {
    if n < 2 {
        return Err(invalid("genus-one presentation needs n >= 2"));
    }
    let gens = generator_names(n);
    let mut relators = vec![(
        "r0".to_string(),
        ParamWord::from_items(gens.iter().map(|g| crate::words::Item::syl(g, 1)).collect()),
    )];
    for i in 0..n {
        let w = placeholders(GENUS_ONE_TEMPLATE, &gens, i, &[("a", 0), ("b", 1), ("c", 2)]);
        relators.push((format!("r{}", i + 1), w));
    }
    Ok(Presentation { generators: gens, relators, env: ParamEnv::new().with("k", 2).with("l", 1) })
}

/// Genus-one presentation at concrete `k, l`.
pub fn genus_one_presentation_at(k: i64, l: i64, n: usize) -> Result<Presentation> {
    genus_one_presentation(n)?.specialize(&[("k", k), ("l", l)])
}

/// The `n` relators of `π1(Σn(K[-2q, 2s, -2t, 2l]))`, symbolic in `q, s, t, l`.
pub fn mv_presentation_symbolic(n: usize) -> Result<Presentation> {
    if n < 2 {
        return Err(invalid("presentation needs n >= 2"));
    }
    let gens = generator_names(n);
    let relators = (0..n)
        .map(|i| {
            let w = placeholders(MV_TEMPLATE, &gens, i, &[("a", -2), ("b", -1), ("c", 0), ("d", 1), ("e", 2)]);
            (format!("r{}", i + 1), w)
        })
        .collect();
    Ok(Presentation { generators: gens, relators, env: ParamEnv::new() })
}

pub fn mv_presentation(q: i64, s: i64, t: i64, l: i64, n: usize) -> Result<Presentation> {
    if [q, s, t, l].contains(&0) {
        return Err(invalid("q, s, t, l must be nonzero"));
    }
    mv_presentation_symbolic(n)?.specialize(&[("q", q), ("s", s), ("t", t), ("l", l)])
}

impl Presentation {
    /// Substitute integer values for parameters and reduce every relator.
    pub fn specialize(&self, values: &[(&str, i64)]) -> Result<Presentation> {
        let map: BTreeMap<String, AffineExp> =
            values.iter().map(|(k, v)| (k.to_string(), AffineExp::constant(*v))).collect();
        let mut env = ParamEnv::new();
        for (name, b) in self.env.bounds() {
            if !map.contains_key(name) {
                env = env.with(name, *b);
            }
        }
        let relators = self
            .relators
            .iter()
            .map(|(name, w)| (name.clone(), reduce(&w.substitute_params(&map), &env)))
            .collect();
        Ok(Presentation { generators: self.generators.clone(), relators, env })
    }

    pub fn relator(&self, name: &str) -> Option<&ParamWord> {
        self.relators.iter().find(|(n, _)| n == name).map(|(_, w)| w)
    }

    /// Exponent-sum rows as polynomials in the parameters.
    pub fn abelianization_rows(&self) -> Vec<Vec<MultiPoly>> {
        self.relators
            .iter()
            .map(|(_, w)| {
                let sums = exponent_sums(w);
                self.generators.iter().map(|g| sums.get(g).cloned().unwrap_or_default()).collect()
            })
            .collect()
    }

    /// Integer relation matrix: rows are relators, columns generators.
    pub fn abelianization_matrix(&self, values: &[(&str, i64)]) -> Result<IntMatrix> {
        let vals: BTreeMap<String, BigInt> = values.iter().map(|(k, v)| (k.to_string(), BigInt::from(*v))).collect();
        let rows = self
            .abelianization_rows()
            .into_iter()
            .map(|row| row.iter().map(|p| p.eval(&vals)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Ok(IntMatrix::zeros(0, self.generators.len()));
        }
        Ok(IntMatrix::from_rows(rows))
    }

    pub fn h1_order(&self, values: &[(&str, i64)]) -> Result<Order> {
        let m = self.abelianization_matrix(values)?;
        Ok(smith_normal_form(&m).cokernel_order())
    }

    /// Header line, then one `name: word` line per relator.
    pub fn to_text(&self) -> String {
        let mut s = format!("generators {}; env {}\n", self.generators.join(","), self.env);
        for (name, w) in &self.relators {
            s.push_str(&format!("{name}: {w}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Presentation> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| parse_err(1, 1, "empty presentation"))?;
        let rest = header
            .trim()
            .strip_prefix("generators")
            .ok_or_else(|| parse_err(1, 1, "expected 'generators'"))?;
        let (gens, env_part) = rest.split_once(';').unwrap_or((rest, ""));
        let generators: Vec<String> = gens.split(',').map(|g| g.trim().to_string()).filter(|g| !g.is_empty()).collect();
        let mut env = ParamEnv::new();
        let env_part = env_part.trim().strip_prefix("env").unwrap_or(env_part).trim();
        for b in env_part.split(',').map(str::trim).filter(|b| !b.is_empty()) {
            let (name, bound) = b.split_once(">=").ok_or_else(|| parse_err(1, 1, "bad bound"))?;
            let bound = bound.trim().parse().map_err(|_| parse_err(1, 1, "bad bound value"))?;
            env = env.with(name.trim(), bound);
        }
        let mut relators = Vec::new();
        for (idx, line) in lines {
            let (name, body) = line.split_once(':').ok_or_else(|| parse_err(idx + 1, 1, "expected 'name: word'"))?;
            let offset = name.chars().count() + 2;
            let w = crate::words::ParamWord::parse(body).map_err(|e| match e {
                Error::Parse { col, msg, .. } => parse_err(idx + 1, col + offset - 1, &msg),
                other => other,
            })?;
            if let Some(g) = w.generators().into_iter().find(|g| !generators.contains(g)) {
                return Err(parse_err(idx + 1, 1, &format!("undeclared generator {g}")));
            }
            relators.push((name.trim().to_string(), w));
        }
        Ok(Presentation { generators, relators, env })
    }
}

fn parse_err(line: usize, col: usize, msg: &str) -> Error {
    Error::Parse { line, col, msg: msg.to_string() }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Where two words first disagree, as syllable index and the two syllables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub index: usize,
    pub found: Option<(String, i64)>,
    pub expected: Option<(String, i64)>,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &Option<(String, i64)>| match s {
            Some((g, e)) => format!("{g}^{e}"),
            None => "end".to_string(),
        };
        write!(f, "syllable {}: found {}, expected {}", self.index, show(&self.found), show(&self.expected))
    }
}

fn first_difference(found: &Word, expected: &Word) -> Discrepancy {
    let a = found.canonical_rotation();
    let b = expected.canonical_rotation();
    let (sa, sb) = (a.syllables(), b.syllables());
    let index = sa.iter().zip(sb).take_while(|(x, y)| x == y).count();
    Discrepancy { index, found: sa.get(index).cloned(), expected: sb.get(index).cloned() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    FullPass(CyclicMatch),
    AbelianOnly(Discrepancy),
    Fail(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::FullPass(_) => "FULL_PASS",
            Verdict::AbelianOnly(_) => "ABELIAN_ONLY",
            Verdict::Fail(_) => "FAIL",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::FullPass(m) => write!(f, "FULL_PASS ({m:?})"),
            Verdict::AbelianOnly(d) => write!(f, "ABELIAN_ONLY ({d})"),
            Verdict::Fail(msg) => write!(f, "FAIL ({msg})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductVerdict {
    pub params: [i64; 4],
    pub product: Word,
    pub exponent_sums: BTreeMap<String, i64>,
    /// Exponent sums of `r3 r2 r1` are `(1, 1, 1)`.
    pub abelian_pass: bool,
    /// `(1, 1, 1)` lies in the integer row span of the relation matrix.
    pub in_row_span: bool,
    pub verdict: Verdict,
}

fn instantiate_relator(p: &Presentation, name: &str) -> Result<Word> {
    let w = p.relator(name).ok_or_else(|| invalid(format!("no relator {name}")))?;
    instantiate(w, &BTreeMap::new())
}

/// Check that `r3 r2 r1` is a conjugate of `zyx` for `n = 3`.
pub fn verify_product_identity(q: i64, s: i64, t: i64, l: i64) -> Result<ProductVerdict> {
    let p = mv_presentation(q, s, t, l, 3)?;
    let r: Vec<Word> = ["r3", "r2", "r1"].iter().map(|n| instantiate_relator(&p, n)).collect::<Result<_>>()?;
    let product = r[0].concat(&r[1]).concat(&r[2]).cyclic_reduce();
    let zyx = Word::from_syllables(&[("z", 1), ("y", 1), ("x", 1)]);
    let sums = product.exponent_sums();
    let abelian_pass = sums == zyx.exponent_sums();
    let m = p.abelianization_matrix(&[])?;
    let ones = vec![BigInt::from(1); 3];
    let span = in_row_span(&m, &ones);
    let verdict = match equal_up_to_cyclic(&product, &zyx) {
        CyclicMatch::NoMatch if abelian_pass => Verdict::AbelianOnly(first_difference(&product, &zyx)),
        CyclicMatch::NoMatch => Verdict::Fail(format!("exponent sums {sums:?}")),
        m => Verdict::FullPass(m),
    };
    Ok(ProductVerdict { params: [q, s, t, l], product, exponent_sums: sums, abelian_pass, in_row_span: span, verdict })
}

/// `X`, `Y`, `Z` in terms of `x`, `y`, `z`.
pub fn xyz_substitution() -> BTreeMap<String, ParamWord> {
    [
        ("X", "(y^(q) x^(-q))^(s) x (z^(q) x^(-q))^(s)"),
        ("Y", "(z^(q) y^(-q))^(s) y (x^(q) y^(-q))^(s)"),
        ("Z", "(x^(q) z^(-q))^(s) z (y^(q) z^(-q))^(s)"),
        ("x", "x"),
        ("y", "y"),
        ("z", "z"),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), ParamWord::parse(v).expect("fixed text")))
    .collect()
}

/// `r'_1, r'_2, r'_3` written in `X, Y, Z` and `x, y, z`.
pub fn rewritten_relators() -> Vec<(String, ParamWord)> {
    [
        ("r'1", "(Y^(t) y^(q) x^(-q) X^(-t))^(l) X (Z^(t) z^(q) x^(-q) X^(-t))^(l)"),
        ("r'2", "(Z^(t) z^(q) y^(-q) Y^(-t))^(l) Y (X^(t) x^(q) y^(-q) Y^(-t))^(l)"),
        ("r'3", "(X^(t) x^(q) z^(-q) Z^(-t))^(l) Z (Y^(t) y^(q) z^(-q) Z^(-t))^(l)"),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), ParamWord::parse(v).expect("fixed text")))
    .collect()
}

/// `r''_i`: the first block of `r'_i` peeled on the right.
pub fn peeled_relators() -> Vec<(String, ParamWord)> {
    [
        ("r''1", "(Y^(t) y^(q) x^(-q) X^(-t))^(l-1) Y^(t) y^(q) x^(-q) X^(-t+1) (Z^(t) z^(q) x^(-q) X^(-t))^(l)"),
        ("r''2", "(Z^(t) z^(q) y^(-q) Y^(-t))^(l-1) Z^(t) z^(q) y^(-q) Y^(-t+1) (X^(t) x^(q) y^(-q) Y^(-t))^(l)"),
        ("r''3", "(X^(t) x^(q) z^(-q) Z^(-t))^(l-1) X^(t) x^(q) z^(-q) Z^(-t+1) (Y^(t) y^(q) z^(-q) Z^(-t))^(l)"),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), ParamWord::parse(v).expect("fixed text")))
    .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteVerdict {
    /// e.g. `r'1 ~ r1`.
    pub identity: String,
    pub abelian_pass: bool,
    pub verdict: Verdict,
}

fn compare(identity: String, found: &Word, expected: &Word) -> RewriteVerdict {
    let abelian_pass = found.exponent_sums() == expected.exponent_sums();
    let verdict = match equal_up_to_cyclic(found, expected) {
        CyclicMatch::NoMatch if abelian_pass => Verdict::AbelianOnly(first_difference(found, expected)),
        CyclicMatch::NoMatch => Verdict::Fail("exponent sums differ".to_string()),
        m => Verdict::FullPass(m),
    };
    RewriteVerdict { identity, abelian_pass, verdict }
}

/// Expand `r'_i` and `r''_i` through `X, Y, Z` and compare them with `r_i`
/// and with each other, up to rotation and inversion.
pub fn verify_rewrites(q: i64, s: i64, t: i64, l: i64) -> Result<Vec<RewriteVerdict>> {
    let p = mv_presentation(q, s, t, l, 3)?;
    let values: BTreeMap<String, i64> =
        [("q", q), ("s", s), ("t", t), ("l", l)].into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    let sub = xyz_substitution();
    let env = ParamEnv::new();
    let expand = |w: &ParamWord| -> Result<Word> { instantiate(&substitute(w, &sub, &env)?, &values) };
    let mut out = Vec::new();
    for (i, ((n1, r1), (n2, r2))) in rewritten_relators().iter().zip(peeled_relators().iter()).enumerate() {
        let original = instantiate_relator(&p, &format!("r{}", i + 1))?;
        let prime = expand(r1)?;
        let second = expand(r2)?;
        out.push(compare(format!("{n1} ~ r{}", i + 1), &prime, &original));
        out.push(compare(format!("{n2} ~ {n1}"), &second, &prime));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_one_relators() {
        let p = genus_one_presentation(5).unwrap();
        assert_eq!(
            p.relator("r1").unwrap().to_string(),
            "(x^(-k) y^(k))^(l) (z^(-k) y^(k))^(l-1) z^(-k) y^(k-1)"
        );
        assert_eq!(
            p.relator("r5").unwrap().to_string(),
            "(w^(-k) x^(k))^(l) (y^(-k) x^(k))^(l-1) y^(-k) x^(k-1)"
        );
        let at = genus_one_presentation_at(1, 1, 5).unwrap();
        let r1 = instantiate(at.relator("r1").unwrap(), &BTreeMap::new()).unwrap();
        assert_eq!(r1.to_string(), "x^-1 y z^-1");
    }

    #[test]
    fn abelianization_rows() {
        let p = genus_one_presentation(5).unwrap();
        let rows = p.abelianization_rows();
        let text: Vec<String> = rows[0].iter().map(ToString::to_string).collect();
        assert_eq!(text, ["1", "1", "1", "1", "1"]);
        let text: Vec<String> = rows[1].iter().map(ToString::to_string).collect();
        assert_eq!(text, ["-k*l", "2*k*l - 1", "-k*l", "0", "0"]);
        let cyclic = Presentation::from_text("generators x\nr: x^5\n").unwrap();
        assert_eq!(cyclic.abelianization_matrix(&[]).unwrap(), IntMatrix::from_i64(&[&[5]]));
    }

    #[test]
    fn mv_relator_matches_display() {
        let p = mv_presentation_symbolic(3).unwrap();
        let vals: BTreeMap<String, i64> =
            [("q", 2), ("s", 1), ("t", 2), ("l", 1)].into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        let shown = ParamWord::parse(
            "(((y^(q) x^(-q))^(s) x (z^(q) x^(-q))^(s))^(t) x^(q) y^(-q) \
             ((z^(q) y^(-q))^(s) y (x^(q) y^(-q))^(s))^(-t))^(-l) \
             (y^(q) x^(-q))^(s) x (z^(q) x^(-q))^(s) \
             (((x^(q) z^(-q))^(s) z (y^(q) z^(-q))^(s))^(t) z^(q) x^(-q) \
             ((y^(q) x^(-q))^(s) x (z^(q) x^(-q))^(s))^(-t))^(l)",
        )
        .unwrap();
        assert_eq!(
            instantiate(p.relator("r1").unwrap(), &vals).unwrap(),
            instantiate(&shown, &vals).unwrap()
        );
    }

    #[test]
    fn mv_orders() {
        assert_eq!(mv_presentation(1, 1, 1, 1, 3).unwrap().h1_order(&[]).unwrap(), Order::finite(1));
        assert_eq!(mv_presentation(1, 1, 1, 2, 3).unwrap().h1_order(&[]).unwrap(), Order::finite(16));
        assert!(mv_presentation(0, 1, 1, 1, 3).is_err());
    }

    #[test]
    fn product_identity_at_ones() {
        let v = verify_product_identity(1, 1, 1, 1).unwrap();
        assert!(v.abelian_pass && v.in_row_span);
        assert_eq!(v.verdict.label(), "FULL_PASS");
    }

    #[test]
    fn rewrites_at_ones() {
        for r in verify_rewrites(1, 1, 1, 1).unwrap() {
            assert_eq!(r.verdict.label(), "FULL_PASS", "{}", r.identity);
        }
        for r in verify_rewrites(1, 1, 2, 2).unwrap() {
            assert_eq!(r.verdict.label(), "FULL_PASS", "{}", r.identity);
        }
    }

    #[test]
    fn text_round_trip() {
        let p = genus_one_presentation(3).unwrap();
        let back = Presentation::from_text(&p.to_text()).unwrap();
        assert_eq!(back, p);
        let err = Presentation::from_text("generators x,y\nr1: x q\n").unwrap_err();
        assert!(err.to_string().contains("undeclared generator q"));
        let err = Presentation::from_text("generators x,y\nr1: x (y\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
