//! Text grammar for polynomials.
//!
//! ```text
//! poly   := [sign] term (sign term)*
//! term   := factor ('*' factor)*
//! factor := sign factor | atom ['^' uint]
//! atom   := uint ['/' uint] | ident | '(' poly ')'
//! ```
//!
//! Whitespace is ignored, `−` (U+2212) is accepted as a minus sign and an
//! omitted coefficient means 1. Error positions are character offsets.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rational::Rational;

pub fn parse_poly(text: &str, vars: &[String]) -> Result<MultiPoly> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        vars,
    };
    let out = p.sum()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(out)
}

/// Variable names for a polynomial given without an explicit list.
///
/// Names sharing one alphabetic prefix followed by an index (`x0`, `x3`, ...)
/// expand to the full run `prefix0..prefixMAX`; anything else yields the
/// sorted distinct names.
pub fn infer_vars(text: &str) -> Vec<String> {
    let mut names = BTreeSet::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if is_ident_start(chars[i]) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            names.insert(chars[start..i].iter().collect::<String>());
        } else if chars[i].is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
        } else {
            i += 1;
        }
    }
    if names.is_empty() {
        return vec!["x0".to_string()];
    }
    let split = |s: &str| -> Option<(String, usize)> {
        let cut = s.find(|c: char| c.is_ascii_digit())?;
        let (prefix, idx) = s.split_at(cut);
        if prefix.is_empty() || (idx.len() > 1 && idx.starts_with('0')) {
            return None;
        }
        Some((prefix.to_string(), idx.parse().ok()?))
    };
    let indexed: Option<Vec<(String, usize)>> = names.iter().map(|s| split(s)).collect();
    if let Some(indexed) = indexed {
        let prefix = &indexed[0].0;
        if indexed.iter().all(|(p, _)| p == prefix) {
            let max = indexed.iter().map(|(_, i)| *i).max().unwrap();
            return (0..=max).map(|i| format!("{prefix}{i}")).collect();
        }
    }
    names.into_iter().collect()
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') | Some('−') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn sum(&mut self) -> Result<MultiPoly> {
        let n = self.vars.len();
        let mut acc = MultiPoly::zero(n);
        let mut negate = self.sign().unwrap_or(false);
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.sign() {
                Some(neg) => negate = neg,
                None => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        if let Some(neg) = self.sign() {
            let f = self.factor()?;
            return Ok(if neg { -&f } else { f });
        }
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a non-negative integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let n = self.vars.len();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let mut q = Rational::from_integer(num);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.uint()?;
                    if den.is_zero() {
                        return Err(Error::Syntax {
                            pos: at,
                            msg: "zero denominator".into(),
                        });
                    }
                    q /= Rational::from_integer(den);
                }
                Ok(MultiPoly::constant(n, q))
            }
            Some(c) if is_ident_start(c) => {
                let start = self.pos;
                while self.pos < self.chars.len() && is_ident_char(self.chars[self.pos]) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(MultiPoly::var(n, i)),
                    None => Err(Error::UnknownVariable(name)),
                }
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn single_monomial() {
        let p = parse_poly("x0^2", &names(&["x0"])).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coefficient(&[2]), rat(1));
    }

    #[test]
    fn quartic_has_five_terms() {
        let vars = names(&["w0", "w1", "w2", "w3"]);
        let f = parse_poly(
            "w0^2*w3^2 - 6*w0*w1*w2*w3 + 4*w0*w2^3 + 4*w1^3*w3 - 3*w1^2*w2^2",
            &vars,
        )
        .unwrap();
        assert_eq!(f.num_terms(), 5);
        assert_eq!(f.coefficient(&[1, 1, 1, 1]), rat(-6));
        assert_eq!(f.coefficient(&[0, 2, 2, 0]), rat(-3));
        assert_eq!(f.homogeneous_degree(), Some(4));
    }

    #[test]
    fn unknown_variable() {
        assert_eq!(
            parse_poly("x0 + y", &names(&["x0", "x1"])),
            Err(Error::UnknownVariable("y".into()))
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let vars = names(&["x0"]);
        assert!(matches!(parse_poly("x0 +", &vars), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("x0 ^ y", &vars), Err(Error::Syntax { pos: 5, .. })));
        assert!(matches!(parse_poly("(x0", &vars), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("1/0", &vars), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("x0 x0", &vars), Err(Error::Syntax { pos: 3, .. })));
    }

    #[test]
    fn unary_minus_rationals_and_unicode() {
        let vars = names(&["x0", "x1"]);
        let p = parse_poly(" −x0 + 1/2*x1 - -x1 ", &vars).unwrap();
        assert_eq!(p.coefficient(&[1, 0]), rat(-1));
        assert_eq!(p.coefficient(&[0, 1]), ratio(3, 2));
        let q = parse_poly("(x0 + x1)^2 - x0^2 - x1^2", &vars).unwrap();
        assert_eq!(q, parse_poly("2*x0*x1", &vars).unwrap());
    }

    #[test]
    fn variable_inference() {
        assert_eq!(infer_vars("x0^3 + x3"), names(&["x0", "x1", "x2", "x3"]));
        assert_eq!(infer_vars("w1*w2 + 4*w0"), names(&["w0", "w1", "w2"]));
        assert_eq!(infer_vars("a*b + c^2"), names(&["a", "b", "c"]));
        assert_eq!(infer_vars("x0 + y1"), names(&["x0", "y1"]));
        assert_eq!(infer_vars("7"), names(&["x0"]));
    }
}
