use std::collections::BTreeMap;
use std::fmt;

use super::affine::ParamEnv;
use super::{Item, ParamWord};

/// Position of a group element relative to the identity in a left order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignLattice {
    StrictPos,
    NonNeg,
    Zero,
    NonPos,
    StrictNeg,
    Unknown,
}

impl SignLattice {
    pub fn is_strict(self) -> bool {
        matches!(self, SignLattice::StrictPos | SignLattice::StrictNeg)
    }

    pub fn flip(self) -> Self {
        use SignLattice::*;
        match self {
            StrictPos => StrictNeg,
            NonNeg => NonPos,
            NonPos => NonNeg,
            StrictNeg => StrictPos,
            other => other,
        }
    }

    /// Drop strictness: the value of a possibly empty product.
    pub fn weaken(self) -> Self {
        use SignLattice::*;
        match self {
            StrictPos => NonNeg,
            StrictNeg => NonPos,
            other => other,
        }
    }

    /// Sign of a product of two elements with these signs.
    pub fn combine(self, other: Self) -> Self {
        use SignLattice::*;
        let side = |s: Self| match s {
            StrictPos | NonNeg => Some(true),
            StrictNeg | NonPos => Some(false),
            _ => None,
        };
        match (self, other) {
            (Zero, x) | (x, Zero) => x,
            (Unknown, _) | (_, Unknown) => Unknown,
            (a, b) if side(a) == side(b) => {
                if a.is_strict() || b.is_strict() {
                    if side(a) == Some(true) { StrictPos } else { StrictNeg }
                } else {
                    a
                }
            }
            _ => Unknown,
        }
    }

    /// Sign of `g^e` given the sign of `g > 1` and the sign of `e`.
    pub fn power(base: Sign, exp: SignLattice) -> Self {
        match base {
            Sign::Pos => exp,
            Sign::Neg => exp.flip(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SignLattice::StrictPos => "STRICT_POS",
            SignLattice::NonNeg => "NON_NEG",
            SignLattice::Zero => "ZERO",
            SignLattice::NonPos => "NON_POS",
            SignLattice::StrictNeg => "STRICT_NEG",
            SignLattice::Unknown => "UNKNOWN",
        }
    }
}

impl fmt::Display for SignLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Sign of a generator: `Pos` means `g > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            '+' => Some(Sign::Pos),
            '-' => Some(Sign::Neg),
            _ => None,
        }
    }
}

/// Lattice sign of `w` when each generator has the given sign.
///
/// Generators absent from `signs` make their syllables `Unknown`.
pub fn word_sign(w: &ParamWord, signs: &BTreeMap<String, Sign>, env: &ParamEnv) -> SignLattice {
    w.items().iter().fold(SignLattice::Zero, |acc, item| {
        let s = match item {
            Item::Syl(syl) => match signs.get(&syl.generator) {
                Some(&g) => SignLattice::power(g, syl.exponent.sign(env)),
                None => SignLattice::Unknown,
            },
            Item::Block { body, mult } => {
                let b = word_sign(body, signs, env);
                match mult.sign(env) {
                    SignLattice::Zero => SignLattice::Zero,
                    SignLattice::StrictPos => b,
                    SignLattice::NonNeg => b.weaken(),
                    SignLattice::StrictNeg => b.flip(),
                    SignLattice::NonPos => b.flip().weaken(),
                    SignLattice::Unknown if b == SignLattice::Zero => SignLattice::Zero,
                    SignLattice::Unknown => SignLattice::Unknown,
                }
            }
        };
        acc.combine(s)
    })
}

#[cfg(test)]
mod tests {
    use super::SignLattice::*;

    #[test]
    fn product_rule() {
        assert_eq!(NonPos.combine(StrictNeg), StrictNeg);
        assert_eq!(NonNeg.combine(NonNeg), NonNeg);
        assert_eq!(StrictPos.combine(NonPos), Unknown);
        assert_eq!(Zero.combine(StrictNeg), StrictNeg);
        assert_eq!(Unknown.combine(Zero), Unknown);
    }

    #[test]
    fn combine_is_commutative_and_associative() {
        let all = [StrictPos, NonNeg, Zero, NonPos, StrictNeg, Unknown];
        for a in all {
            for b in all {
                assert_eq!(a.combine(b), b.combine(a));
                for c in all {
                    assert_eq!(a.combine(b).combine(c), a.combine(b.combine(c)));
                }
            }
        }
    }
}
