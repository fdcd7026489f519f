//! Text syntax: `(x^(-k) y^(k))^(l) z^(-k) y^(k-1)`.

use crate::error::{Error, Result};

use super::{AffineExp, Item, ParamWord};

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

pub(crate) fn parse_word(src: &str, line: usize) -> Result<ParamWord> {
    let mut p = Parser { chars: src.chars().collect(), pos: 0, line };
    let w = p.word()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err(&format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(w)
}

pub(crate) fn parse_affine(src: &str) -> Result<AffineExp> {
    let mut p = Parser { chars: src.chars().collect(), pos: 0, line: 1 };
    let e = p.affine()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("trailing input after exponent"));
    }
    Ok(e)
}

impl Parser {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: self.line, col: self.pos + 1, msg: msg.to_string() }
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

    fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        if !self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
            return None;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_' || *c == '\'') {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    fn number(&mut self) -> Result<Option<i64>> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map(Some).map_err(|_| self.err("integer out of range"))
    }

    fn word(&mut self) -> Result<ParamWord> {
        let mut items = Vec::new();
        loop {
            match self.peek() {
                None | Some(')') => return Ok(ParamWord::from_items(items)),
                Some('(') => {
                    self.pos += 1;
                    let body = self.word()?;
                    if self.peek() != Some(')') {
                        return Err(self.err("expected ')'"));
                    }
                    self.pos += 1;
                    let mult = self.exponent()?;
                    items.push(Item::block(body, mult));
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let g = self.ident().expect("alphabetic start");
                    let e = self.exponent()?;
                    items.push(Item::syl(&g, e));
                }
                Some(c) => return Err(self.err(&format!("unexpected '{c}'"))),
            }
        }
    }

    fn exponent(&mut self) -> Result<AffineExp> {
        if self.chars.get(self.pos) != Some(&'^') {
            return Ok(AffineExp::constant(1));
        }
        self.pos += 1;
        match self.chars.get(self.pos) {
            Some('(') => {
                self.pos += 1;
                let e = self.affine()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')' closing exponent"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('-') => {
                self.pos += 1;
                match self.number()? {
                    Some(n) => Ok(AffineExp::constant(-n)),
                    None => Err(self.err("expected digits after '^-'")),
                }
            }
            Some(c) if c.is_ascii_digit() => Ok(AffineExp::constant(self.number()?.expect("digit"))),
            Some(c) if c.is_ascii_alphabetic() => Ok(AffineExp::param(&self.ident().expect("alpha"))),
            _ => Err(self.err("expected exponent after '^'")),
        }
    }

    fn affine(&mut self) -> Result<AffineExp> {
        let mut acc = AffineExp::constant(0);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => return Ok(acc),
            };
            first = false;
            self.skip_ws();
            let coeff = self.number()?;
            self.skip_ws();
            if self.chars.get(self.pos) == Some(&'*') {
                self.pos += 1;
                self.skip_ws();
            }
            let name = self.ident();
            let term = match (coeff, name) {
                (Some(c), Some(n)) => AffineExp::term(&n, c),
                (Some(c), None) => AffineExp::constant(c),
                (None, Some(n)) => AffineExp::param(&n),
                (None, None) => return Err(self.err("expected a term")),
            };
            acc = acc.add(&term.scale(sign));
        }
    }
}

impl std::str::FromStr for AffineExp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_affine(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_display() {
        let src = "(x^(-k) y^(k))^(l) (z^(-k) y^(k))^(l-1) z^(-k) y^(k-1)";
        let w = parse_word(src, 1).unwrap();
        assert_eq!(w.to_string(), src);
        assert_eq!(parse_word(&w.to_string(), 1).unwrap(), w);
    }

    #[test]
    fn affine_forms() {
        assert_eq!("-q+1".parse::<AffineExp>().unwrap(), AffineExp::term("q", -1).add_const(1));
        assert_eq!("2*k - 1".parse::<AffineExp>().unwrap(), AffineExp::term("k", 2).add_const(-1));
        assert_eq!("3".parse::<AffineExp>().unwrap(), AffineExp::constant(3));
    }

    #[test]
    fn short_exponents() {
        let w = parse_word("x^-2 y^3 z^k", 1).unwrap();
        assert_eq!(w.to_string(), "x^(-2) y^(3) z^(k)");
    }

    #[test]
    fn errors_carry_position() {
        match parse_word("(x y", 4) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (4, 5)),
            other => panic!("{other:?}"),
        }
        assert!(parse_word("x^", 1).is_err());
        assert!(parse_word("x ) y", 1).is_err());
    }
}
