//! Free-group words with affine exponents in named integer parameters.
//!
//! A [`ParamWord`] is a sequence of syllables `g^e` and power blocks
//! `(body)^m`. Exponents and multiplicities are [`AffineExp`] values, read
//! relative to a [`ParamEnv`] of lower bounds.

mod affine;
mod concrete;
mod parse;
mod sign;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use affine::{AffineExp, ParamEnv};
pub use concrete::{equal_up_to_cyclic, CyclicMatch, Word};
pub use sign::{word_sign, Sign, SignLattice};

use crate::error::{invalid, Error, Result};
use crate::poly::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub generator: String,
    pub exponent: AffineExp,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item {
    Syl(Syllable),
    Block { body: ParamWord, mult: AffineExp },
}

impl Item {
    pub fn syl(generator: &str, exponent: impl Into<AffineExp>) -> Self {
        Item::Syl(Syllable { generator: generator.to_string(), exponent: exponent.into() })
    }

    pub fn block(body: ParamWord, mult: impl Into<AffineExp>) -> Self {
        Item::Block { body, mult: mult.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParamWord {
    items: Vec<Item>,
}

impl ParamWord {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Wrap items as given, without reduction.
    pub fn from_items(items: Vec<Item>) -> Self {
        ParamWord { items }
    }

    pub fn gen(g: &str) -> Self {
        Self::from_items(vec![Item::syl(g, 1)])
    }

    pub fn parse(src: &str) -> Result<Self> {
        parse::parse_word(src, 1)
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut items = self.items.clone();
        items.extend(other.items.iter().cloned());
        ParamWord { items }
    }

    pub fn inverse(&self) -> Self {
        let items = self
            .items
            .iter()
            .rev()
            .map(|it| match it {
                Item::Syl(s) => Item::Syl(Syllable { generator: s.generator.clone(), exponent: s.exponent.neg() }),
                Item::Block { body, mult } => Item::Block { body: body.inverse(), mult: mult.clone() },
            })
            .collect();
        ParamWord { items }
    }

    pub fn generators(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for it in &self.items {
            match it {
                Item::Syl(s) => {
                    out.insert(s.generator.clone());
                }
                Item::Block { body, .. } => out.extend(body.generators()),
            }
        }
        out
    }

    pub fn parameters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for it in &self.items {
            match it {
                Item::Syl(s) => out.extend(s.exponent.coeffs().keys().cloned()),
                Item::Block { body, mult } => {
                    out.extend(mult.coeffs().keys().cloned());
                    out.extend(body.parameters());
                }
            }
        }
        out
    }

    /// Rewrite every exponent and multiplicity through `map`.
    pub fn substitute_params(&self, map: &BTreeMap<String, AffineExp>) -> Self {
        let items = self
            .items
            .iter()
            .map(|it| match it {
                Item::Syl(s) => Item::Syl(Syllable {
                    generator: s.generator.clone(),
                    exponent: s.exponent.substitute(map),
                }),
                Item::Block { body, mult } => {
                    Item::Block { body: body.substitute_params(map), mult: mult.substitute(map) }
                }
            })
            .collect();
        ParamWord { items }
    }

    /// Rename generators; unmapped generators stay.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Self {
        let items = self
            .items
            .iter()
            .map(|it| match it {
                Item::Syl(s) => Item::Syl(Syllable {
                    generator: map.get(&s.generator).cloned().unwrap_or_else(|| s.generator.clone()),
                    exponent: s.exponent.clone(),
                }),
                Item::Block { body, mult } => Item::Block { body: body.rename(map), mult: mult.clone() },
            })
            .collect();
        ParamWord { items }
    }
}

fn push_item(stack: &mut Vec<Item>, item: Item, env: &ParamEnv) {
    match item {
        Item::Syl(s) => {
            if s.exponent.is_zero() {
                return;
            }
            if let Some(Item::Syl(top)) = stack.last() {
                if top.generator == s.generator {
                    let merged = top.exponent.add(&s.exponent);
                    stack.pop();
                    if !merged.is_zero() {
                        stack.push(Item::Syl(Syllable { generator: s.generator, exponent: merged }));
                    }
                    return;
                }
            }
            stack.push(Item::Syl(s));
        }
        Item::Block { body, mult } => {
            let mut body = reduce(&body, env);
            let mut mult = mult;
            if body.is_empty() || mult.is_zero() {
                return;
            }
            if matches!(mult.sign(env), SignLattice::StrictNeg | SignLattice::NonPos) {
                body = body.inverse();
                mult = mult.neg();
            }
            if mult.is_one() {
                for it in body.items {
                    push_item(stack, it, env);
                }
                return;
            }
            if let [Item::Syl(s)] = body.items.as_slice() {
                if let Some(e) = s.exponent.mul(&mult) {
                    push_item(stack, Item::Syl(Syllable { generator: s.generator.clone(), exponent: e }), env);
                    return;
                }
            }
            if let Some(Item::Block { body: top_body, mult: top_mult }) = stack.last() {
                if *top_body == body {
                    let merged = top_mult.add(&mult);
                    stack.pop();
                    push_item(stack, Item::Block { body, mult: merged }, env);
                    return;
                }
            }
            stack.push(Item::Block { body, mult });
        }
    }
}

/// Free reduction: merge adjacent syllables of one generator, drop zero
/// exponents and empty blocks, splice blocks of multiplicity one, and turn
/// provably nonpositive multiplicities into blocks of the inverse body.
pub fn reduce(w: &ParamWord, env: &ParamEnv) -> ParamWord {
    let mut stack = Vec::with_capacity(w.items.len());
    for it in &w.items {
        push_item(&mut stack, it.clone(), env);
    }
    ParamWord { items: stack }
}

/// Reduce, then merge the last item into the first while they combine.
pub fn cyclic_reduce(w: &ParamWord, env: &ParamEnv) -> ParamWord {
    let mut w = reduce(w, env);
    loop {
        if w.items.len() < 2 {
            return w;
        }
        let mergeable = match (&w.items[0], &w.items[w.items.len() - 1]) {
            (Item::Syl(a), Item::Syl(b)) => a.generator == b.generator,
            (Item::Block { body: a, .. }, Item::Block { body: b, .. }) => a == b,
            _ => false,
        };
        if !mergeable {
            return w;
        }
        let first = w.items.remove(0);
        let mut stack = w.items;
        push_item(&mut stack, first, env);
        w = ParamWord { items: stack };
    }
}

/// Split one factor off a block: `body · (body)^(m-1)` for [`Side::Left`],
/// `(body)^(m-1) · body` for [`Side::Right`].
pub fn peel(body: &ParamWord, mult: &AffineExp, side: Side, env: &ParamEnv) -> Result<ParamWord> {
    if !mult.provably_at_least(1, env) {
        return Err(Error::CannotPeel(mult.to_string()));
    }
    let rest = ParamWord::from_items(vec![Item::block(body.clone(), mult.add_const(-1))]);
    let w = match side {
        Side::Left => body.concat(&rest),
        Side::Right => rest.concat(body),
    };
    Ok(reduce(&w, env))
}

/// Peel the top-level block at `index` of `w` and reduce across the new
/// boundaries.
pub fn peel_at(w: &ParamWord, index: usize, side: Side, env: &ParamEnv) -> Result<ParamWord> {
    let Some(Item::Block { body, mult }) = w.items.get(index) else {
        return Err(invalid(format!("item {index} is not a power block")));
    };
    let peeled = peel(body, mult, side, env)?;
    let mut items = w.items[..index].to_vec();
    items.extend(peeled.items);
    items.extend(w.items[index + 1..].iter().cloned());
    Ok(reduce(&ParamWord { items }, env))
}

/// Replace each generator by a word and reduce.
pub fn substitute(w: &ParamWord, sub: &BTreeMap<String, ParamWord>, env: &ParamEnv) -> Result<ParamWord> {
    fn go(w: &ParamWord, sub: &BTreeMap<String, ParamWord>) -> Result<ParamWord> {
        let mut items = Vec::new();
        for it in &w.items {
            match it {
                Item::Syl(s) => {
                    let image = sub
                        .get(&s.generator)
                        .ok_or_else(|| invalid(format!("no substitution for generator {}", s.generator)))?;
                    match s.exponent.as_constant() {
                        Some(c) => {
                            let unit = if c > 0 { image.clone() } else { image.inverse() };
                            for _ in 0..c.unsigned_abs() {
                                items.extend(unit.items.iter().cloned());
                            }
                        }
                        None => items.push(Item::block(image.clone(), s.exponent.clone())),
                    }
                }
                Item::Block { body, mult } => items.push(Item::block(go(body, sub)?, mult.clone())),
            }
        }
        Ok(ParamWord { items })
    }
    Ok(reduce(&go(w, sub)?, env))
}

/// Evaluate every exponent and expand every block into a concrete reduced word.
pub fn instantiate(w: &ParamWord, values: &BTreeMap<String, i64>) -> Result<Word> {
    fn go(w: &ParamWord, values: &BTreeMap<String, i64>, out: &mut Word) -> Result<()> {
        for it in &w.items {
            match it {
                Item::Syl(s) => out.push(&s.generator, s.exponent.eval(values)?),
                Item::Block { body, mult } => {
                    let m = mult.eval(values)?;
                    let mut unit = Word::empty();
                    go(body, values, &mut unit)?;
                    if m < 0 {
                        unit = unit.inverse();
                    }
                    for _ in 0..m.unsigned_abs() {
                        out.append(&unit);
                    }
                }
            }
        }
        Ok(())
    }
    let mut out = Word::empty();
    go(w, values, &mut out)?;
    Ok(out)
}

/// Total signed exponent of each generator; zero totals are omitted.
///
/// A block contributes its multiplicity times the body sums, so the totals
/// are polynomials in the parameters.
pub fn exponent_sums(w: &ParamWord) -> BTreeMap<String, MultiPoly> {
    let mut out: BTreeMap<String, MultiPoly> = BTreeMap::new();
    for it in &w.items {
        match it {
            Item::Syl(s) => {
                let e = out.entry(s.generator.clone()).or_default();
                *e = e.add(&s.exponent.to_poly());
            }
            Item::Block { body, mult } => {
                let m = mult.to_poly();
                for (g, p) in exponent_sums(body) {
                    let e = out.entry(g).or_default();
                    *e = e.add(&p.mul(&m));
                }
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

fn fmt_exp(f: &mut fmt::Formatter<'_>, e: &AffineExp) -> fmt::Result {
    if e.is_one() {
        Ok(())
    } else {
        write!(f, "^({e})")
    }
}

impl fmt::Display for ParamWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.items.is_empty() {
            return write!(f, "1");
        }
        for (i, it) in self.items.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match it {
                Item::Syl(s) => {
                    write!(f, "{}", s.generator)?;
                    fmt_exp(f, &s.exponent)?;
                }
                Item::Block { body, mult } => {
                    write!(f, "({body})")?;
                    if mult.is_one() {
                        write!(f, "^(1)")?;
                    } else {
                        fmt_exp(f, mult)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env() -> ParamEnv {
        ParamEnv::new().with("k", 2).with("l", 1).with("q", 1).with("s", 1)
    }

    fn w(s: &str) -> ParamWord {
        ParamWord::parse(s).unwrap()
    }

    fn vals(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn reduce_examples() {
        assert!(reduce(&w("x^2 x^-2"), &env()).is_empty());
        assert_eq!(reduce(&w("x^(k) x^(1-k)"), &env()), w("x"));
        assert_eq!(reduce(&w("x y y^-1 x"), &env()), w("x^2"));
    }

    #[test]
    fn reduce_is_idempotent_on_blocks() {
        let a = reduce(&w("(x y^-1)^(l) (x y^-1)^(l-1) (z)^(k)"), &env());
        assert_eq!(a.to_string(), "(x y^(-1))^(2l-1) z^(k)");
        assert_eq!(reduce(&a, &env()), a);
    }

    #[test]
    fn peel_examples() {
        let body = w("y x^-1");
        let s = AffineExp::param("s");
        let p = peel(&body, &s, Side::Right, &env()).unwrap();
        assert_eq!(p.to_string(), "(y x^(-1))^(s-1) y x^(-1)");
        let l1 = AffineExp::param("l").add_const(-1);
        assert!(matches!(peel(&body, &l1, Side::Left, &env()), Err(Error::CannotPeel(_))));
    }

    #[test]
    fn peel_round_trip() {
        let word = w("(x^(q) y^(-q))^(l)");
        for side in [Side::Left, Side::Right] {
            let peeled = peel_at(&word, 0, side, &env()).unwrap();
            assert_ne!(peeled, word);
            for (q, l) in [(1, 1), (2, 3)] {
                let v = vals(&[("q", q), ("l", l)]);
                assert_eq!(instantiate(&peeled, &v).unwrap(), instantiate(&word, &v).unwrap());
            }
        }
    }

    #[test]
    fn substitute_examples() {
        let sub: BTreeMap<String, ParamWord> = [
            ("X", "(y^(q) x^(-q))^(s) x (z^(q) x^(-q))^(s)"),
            ("Y", "(z^(q) y^(-q))^(s) y (x^(q) y^(-q))^(s)"),
            ("Z", "(x^(q) z^(-q))^(s) z (y^(q) z^(-q))^(s)"),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), w(v)))
        .collect();
        let one = vals(&[("q", 1), ("s", 1)]);
        let x = substitute(&w("X"), &sub, &env()).unwrap();
        assert_eq!(instantiate(&x, &one).unwrap().to_string(), "y z x^-1");
        let zyx = substitute(&w("Z Y X"), &sub, &env()).unwrap();
        let sums = exponent_sums(&instantiate(&zyx, &one).unwrap().to_param());
        for g in ["x", "y", "z"] {
            assert_eq!(sums[g], MultiPoly::constant(1));
        }
        let missing = substitute(&w("W"), &sub, &env());
        assert!(missing.is_err());
    }

    #[test]
    fn identity_substitution_is_reduce() {
        let word = w("(x^(-k) y^(k))^(l) y^(k-1) y");
        let id: BTreeMap<String, ParamWord> =
            ["x", "y"].into_iter().map(|g| (g.to_string(), ParamWord::gen(g))).collect();
        assert_eq!(substitute(&word, &id, &env()).unwrap(), reduce(&word, &env()));
    }

    #[test]
    fn instantiate_examples() {
        let r1 = w("(x^(-k) y^(k))^(l) (z^(-k) y^(k))^(l-1) z^(-k) y^(k-1)");
        let v = vals(&[("k", 2), ("l", 1)]);
        assert_eq!(instantiate(&r1, &v).unwrap().to_string(), "x^-2 y^2 z^-2 y");
        assert!(instantiate(&w("(z^(-k) y^(k))^(l-1)"), &vals(&[("k", 2), ("l", 1)])).unwrap().is_empty());
        assert!(instantiate(&r1, &vals(&[("k", 2)])).is_err());
    }

    #[test]
    fn exponent_sum_examples() {
        let r1 = w("(x^(-k) y^(k))^(l) (z^(-k) y^(k))^(l-1) z^(-k) y^(k-1)");
        let sums = exponent_sums(&r1);
        assert_eq!(sums["x"], MultiPoly::parse("-kl").unwrap());
        assert_eq!(sums["y"], MultiPoly::parse("2kl - 1").unwrap());
        assert_eq!(sums["z"], MultiPoly::parse("-kl").unwrap());
        assert!(exponent_sums(&ParamWord::empty()).is_empty());
    }

    #[test]
    fn sign_examples() {
        let signs = |s: &[(&str, Sign)]| -> BTreeMap<String, Sign> {
            s.iter().map(|(g, v)| (g.to_string(), *v)).collect()
        };
        let r0 = w("x y z t w");
        let all_pos = signs(&[("x", Sign::Pos), ("y", Sign::Pos), ("z", Sign::Pos), ("t", Sign::Pos), ("w", Sign::Pos)]);
        assert_eq!(word_sign(&r0, &all_pos, &env()), SignLattice::StrictPos);
        let r1 = w("(x^(-k) y^(k))^(l) (z^(-k) y^(k))^(l-1) z^(-k) y^(k-1)");
        let pnp = signs(&[("x", Sign::Pos), ("y", Sign::Neg), ("z", Sign::Pos)]);
        assert_eq!(word_sign(&r1, &pnp, &env()), SignLattice::StrictNeg);
        let x = w("x^(-q+1)");
        assert_eq!(word_sign(&x, &signs(&[("x", Sign::Pos)]), &env()), SignLattice::NonPos);
    }

    #[test]
    fn cyclic_reduce_merges_ends() {
        let c = cyclic_reduce(&w("x^(q) y x^(1-q)"), &env());
        assert_eq!(c.to_string(), "y x");
    }
}
