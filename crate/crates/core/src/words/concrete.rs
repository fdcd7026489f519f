use std::collections::BTreeMap;
use std::fmt;

use super::{Item, ParamWord};

/// A freely reduced word with integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    syllables: Vec<(String, i64)>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_syllables<S: AsRef<str>>(syls: &[(S, i64)]) -> Self {
        let mut w = Word::empty();
        for (g, e) in syls {
            w.push(g.as_ref(), *e);
        }
        w
    }

    pub fn syllables(&self) -> &[(String, i64)] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, `Σ |e|`.
    pub fn letter_length(&self) -> u64 {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    /// Append `g^e`, cancelling against the last syllable.
    pub fn push(&mut self, g: &str, e: i64) {
        if e == 0 {
            return;
        }
        if let Some((last, le)) = self.syllables.last_mut() {
            if last == g {
                *le += e;
                if *le == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push((g.to_string(), e));
    }

    pub fn append(&mut self, other: &Word) {
        for (g, e) in &other.syllables {
            self.push(g, *e);
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.append(other);
        w
    }

    pub fn inverse(&self) -> Word {
        Word { syllables: self.syllables.iter().rev().map(|(g, e)| (g.clone(), -e)).collect() }
    }

    pub fn exponent_sums(&self) -> BTreeMap<String, i64> {
        let mut out = BTreeMap::new();
        for (g, e) in &self.syllables {
            *out.entry(g.clone()).or_insert(0) += e;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Conjugate until the first and last syllables differ in generator.
    pub fn cyclic_reduce(&self) -> Word {
        let mut s = self.syllables.clone();
        while s.len() >= 2 && s[0].0 == s[s.len() - 1].0 {
            let (_, e) = s.remove(0);
            let n = s.len();
            s[n - 1].1 += e;
            if s[n - 1].1 == 0 {
                s.pop();
            }
        }
        Word { syllables: s }
    }

    /// Syllable-level rotations of the cyclic reduction.
    pub fn rotations(&self) -> Vec<Word> {
        let c = self.cyclic_reduce();
        let n = c.syllables.len().max(1);
        (0..n)
            .map(|i| {
                let mut s = c.syllables[i.min(c.syllables.len())..].to_vec();
                s.extend_from_slice(&c.syllables[..i.min(c.syllables.len())]);
                Word { syllables: s }
            })
            .collect()
    }

    /// Lexicographically least rotation of the cyclic reduction.
    pub fn canonical_rotation(&self) -> Word {
        self.rotations().into_iter().min().unwrap_or_default()
    }

    pub fn to_param(&self) -> ParamWord {
        ParamWord::from_items(self.syllables.iter().map(|(g, e)| Item::syl(g, *e)).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// How two words compare as cyclic words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclicMatch {
    /// A rotation of the first word equals the second; `rotation` syllables
    /// were moved from front to back.
    Direct { rotation: usize },
    /// A rotation of the first word equals the inverse of the second.
    Inverse { rotation: usize },
    NoMatch,
}

impl CyclicMatch {
    pub fn is_match(&self) -> bool {
        !matches!(self, CyclicMatch::NoMatch)
    }
}

/// Compare cyclic reductions up to rotation, then against the inverse.
pub fn equal_up_to_cyclic(w1: &Word, w2: &Word) -> CyclicMatch {
    let target = w2.cyclic_reduce();
    let inverse = target.inverse().cyclic_reduce();
    let rots = w1.rotations();
    if let Some(i) = rots.iter().position(|r| *r == target) {
        return CyclicMatch::Direct { rotation: i };
    }
    if let Some(i) = rots.iter().position(|r| *r == inverse) {
        return CyclicMatch::Inverse { rotation: i };
    }
    CyclicMatch::NoMatch
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &[(&str, i64)]) -> Word {
        Word::from_syllables(s)
    }

    #[test]
    fn rotation_matches() {
        let xyz = w(&[("x", 1), ("y", 1), ("z", 1)]);
        let yzx = w(&[("y", 1), ("z", 1), ("x", 1)]);
        let zyx = w(&[("z", 1), ("y", 1), ("x", 1)]);
        assert_eq!(equal_up_to_cyclic(&xyz, &yzx), CyclicMatch::Direct { rotation: 1 });
        assert_eq!(equal_up_to_cyclic(&xyz, &zyx), CyclicMatch::NoMatch);
        assert!(matches!(equal_up_to_cyclic(&yzx, &xyz.inverse()), CyclicMatch::Inverse { .. }));
        assert_eq!(equal_up_to_cyclic(&w(&[("x", 1)]), &w(&[("y", 1)])), CyclicMatch::NoMatch);
    }

    #[test]
    fn cyclic_reduction_merges_across_ends() {
        let a = w(&[("x", 1), ("y", 1), ("x", 1)]);
        assert_eq!(a.cyclic_reduce(), w(&[("y", 1), ("x", 2)]));
        assert!(equal_up_to_cyclic(&a, &w(&[("x", 2), ("y", 1)])).is_match());
        let b = w(&[("x", 1), ("y", 1), ("x", -1)]);
        assert_eq!(b.cyclic_reduce(), w(&[("y", 1)]));
    }

    #[test]
    fn empty_word() {
        assert_eq!(Word::empty().to_string(), "1");
        assert!(equal_up_to_cyclic(&Word::empty(), &Word::empty()).is_match());
    }
}
