//! Parser for the human-readable form of ring elements.
//!
//! Accepts `+ - * / ^`, parentheses, integers, `b`/`β`/`beta`, indexed
//! variables `x1`, `t_2`, `y_{3}`, implicit multiplication before `(` or a
//! variable, and the formal difference `⊖` (ASCII `(-)`) at lowest precedence.
//! Division is allowed by units `±∏(1+βv)^e` and, for polynomials, exact
//! division by a linear divisor.

use super::int::Int;
use super::loc::LocElem;
use super::mono::{Family, Var, MAX_INDEX};
use super::poly::MPoly;
use super::RingError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(Int),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Ominus,
}

fn err(pos: usize, msg: impl Into<String>) -> RingError {
    RingError::Parse {
        pos,
        msg: msg.into(),
    }
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, RingError> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, c) = bytes[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '(' if s[pos..].starts_with("(-)") => {
                out.push((pos, Tok::Ominus));
                i += 3;
            }
            '⊖' => {
                out.push((pos, Tok::Ominus));
                i += 1;
            }
            '(' | '[' => {
                out.push((pos, Tok::LParen));
                i += 1;
            }
            ')' | ']' => {
                out.push((pos, Tok::RParen));
                i += 1;
            }
            '+' => {
                out.push((pos, Tok::Plus));
                i += 1;
            }
            '-' | '−' => {
                out.push((pos, Tok::Minus));
                i += 1;
            }
            '*' | '·' => {
                out.push((pos, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((pos, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((pos, Tok::Caret));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                    i += 1;
                }
                let end = bytes.get(i).map_or(s.len(), |b| b.0);
                let v: Int = s[bytes[start].0..end]
                    .parse()
                    .map_err(|_| err(pos, "bad integer"))?;
                out.push((pos, Tok::Int(v)));
            }
            c => {
                if s[pos..].starts_with("beta") {
                    out.push((pos, Tok::Var(Var::BETA)));
                    i += 4;
                    continue;
                }
                let family = Family::from_letter(c).ok_or_else(|| err(pos, format!("unexpected '{c}'")))?;
                i += 1;
                if family == Family::Beta {
                    out.push((pos, Tok::Var(Var::BETA)));
                    continue;
                }
                if i < bytes.len() && bytes[i].1 == '_' {
                    i += 1;
                }
                let braced = i < bytes.len() && bytes[i].1 == '{';
                if braced {
                    i += 1;
                }
                let start = i;
                while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(err(pos, "variable needs an index"));
                }
                let digits: String = bytes[start..i].iter().map(|b| b.1).collect();
                if braced {
                    if i >= bytes.len() || bytes[i].1 != '}' {
                        return Err(err(pos, "unclosed brace"));
                    }
                    i += 1;
                }
                let idx: usize = digits.parse().map_err(|_| err(pos, "bad index"))?;
                if !(1..=MAX_INDEX).contains(&idx) {
                    return Err(err(pos, format!("index {idx} outside 1..={MAX_INDEX}")));
                }
                out.push((pos, Tok::Var(Var::new(family, idx))));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.len, |t| t.0)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LocElem, RingError> {
        let mut acc = self.sum()?;
        while self.eat(&Tok::Ominus) {
            let pos = self.pos();
            let rhs = self.sum()?;
            acc = acc.ominus(&rhs).map_err(|e| err(pos, e.to_string()))?;
        }
        Ok(acc)
    }

    fn sum(&mut self) -> Result<LocElem, RingError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LocElem, RingError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    let pos = self.pos();
                    let d = self.power()?;
                    acc = divide(&acc, &d).map_err(|e| err(pos, e.to_string()))?;
                }
                Some(Tok::LParen) | Some(Tok::Var(_)) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<LocElem, RingError> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    self.at += 1;
                    let e = e
                        .as_i64()
                        .filter(|e| (0..=255).contains(e))
                        .ok_or_else(|| err(pos, "exponent out of range"))?;
                    Ok(base.pow(e as u32))
                }
                _ => Err(err(pos, "expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<LocElem, RingError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(c)) => {
                self.at += 1;
                Ok(LocElem::from_poly(MPoly::constant(c)))
            }
            Some(Tok::Var(v)) => {
                self.at += 1;
                Ok(LocElem::var(v))
            }
            Some(Tok::Minus) => {
                self.at += 1;
                Ok(-&self.power()?)
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.power()
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(err(self.pos(), "expected ')'"));
                }
                Ok(inner)
            }
            Some(t) => Err(err(pos, format!("unexpected token {t:?}"))),
            None => Err(err(pos, "unexpected end of input")),
        }
    }
}

fn divide(a: &LocElem, d: &LocElem) -> Result<LocElem, RingError> {
    if d.is_zero() {
        return Err(RingError::NotDivisible);
    }
    match d.unit_inverse() {
        Ok(inv) => Ok(a * &inv),
        Err(_) => {
            let g = d.as_poly().ok_or(RingError::NotUnit)?;
            a.exact_div(g)
        }
    }
}

/// Parse a ring element from text.
pub fn parse_elem(s: &str) -> Result<LocElem, RingError> {
    let toks = tokenize(s)?;
    let mut p = Parser {
        toks,
        at: 0,
        len: s.len(),
    };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return Err(err(p.pos(), "trailing input"));
    }
    Ok(out)
}

impl std::str::FromStr for LocElem {
    type Err = RingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_elem(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ominus_notation() {
        let a = parse_elem("t_1 ⊖ y_1").unwrap();
        assert_eq!(a, LocElem::ominus_vars(Var::t(1), Var::y(1)));
        assert_eq!(parse_elem("t1 (-) y1").unwrap(), a);
        let b = parse_elem("(1+β(t1⊖y1))").unwrap();
        assert_eq!(b, parse_elem("(1+b*t1)/(1+b*y1)").unwrap());
        assert_eq!(parse_elem("2x1^2 - x1*x1").unwrap().to_string(), "x1^2");
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "1", "-3*b*t2", "(t1-y1)/(1+b*y1)", "(1+b*t1)/(1+b*y1)", "x1/((1+b*t1)^2*(1+b*y3))"] {
            let e = parse_elem(s).unwrap();
            assert_eq!(parse_elem(&e.to_string()).unwrap(), e, "{s}");
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_elem("x0").is_err());
        assert!(parse_elem("x1 +").is_err());
        assert!(parse_elem("1/(x1+x2+1)").is_err());
        assert!(parse_elem("q").is_err());
    }
}
