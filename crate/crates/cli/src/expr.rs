//! Group expressions: `Z^2 + Z/12 + (Z/2)^3`.
//!
//! ```text
//! expr := term ('+' term)*
//! term := 'Z' ('^' INT)? | 'Z/' INT ('^' INT)? | '(' 'Z/' INT ')' '^' INT | '0'
//! ```
//!
//! Whitespace is ignored. `Z/n^k` is `(Z/n)^k`. `ℤ` and `⊕` are read as `Z`
//! and `+` so that `--unicode` output parses back.

use std::fmt;

use moore_core::{BigInt, Group};
use num_traits::{One, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Character offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}", self.pos + 1, self.msg)
    }
}

impl std::error::Error for ParseError {}

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
    len: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        let chars: Vec<(usize, char)> = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| match c {
                'ℤ' => (i, 'Z'),
                '⊕' => (i, '+'),
                c => (i, c),
            })
            .collect();
        Self { chars, at: 0, len: text.chars().count() }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.len, |(i, _)| *i)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|(_, c)| *c)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.fail(format!("expected `{c}`, found `{found}`")),
                None => self.fail(format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn int(&mut self) -> Result<(usize, BigInt), ParseError> {
        let start = self.pos();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.at += 1;
        }
        if digits.is_empty() {
            return self.fail("expected an integer");
        }
        Ok((start, digits.parse().expect("ascii digits")))
    }

    fn power(&mut self) -> Result<usize, ParseError> {
        if !self.eat('^') {
            return Ok(1);
        }
        let (pos, k) = self.int()?;
        if k.is_zero() {
            return Err(ParseError { pos, msg: "exponent must be at least 1".into() });
        }
        k.to_usize()
            .filter(|&k| k <= 1 << 16)
            .ok_or(ParseError { pos, msg: format!("exponent {k} is too large") })
    }

    fn modulus(&mut self) -> Result<BigInt, ParseError> {
        let (pos, n) = self.int()?;
        if n < BigInt::from(2) {
            return Err(ParseError { pos, msg: format!("Z/{n} needs n >= 2") });
        }
        Ok(n)
    }

    /// One term as a list of cyclic moduli, `0` for `Z`.
    fn term(&mut self, out: &mut Vec<BigInt>) -> Result<(), ParseError> {
        match self.peek() {
            Some('0') => {
                self.at += 1;
                Ok(())
            }
            Some('(') => {
                self.at += 1;
                self.expect('Z')?;
                self.expect('/')?;
                let n = self.modulus()?;
                self.expect(')')?;
                if self.peek() != Some('^') {
                    return self.fail("expected `^` after parenthesised group");
                }
                let k = self.power()?;
                out.extend(std::iter::repeat(n).take(k));
                Ok(())
            }
            Some('Z') => {
                self.at += 1;
                if self.eat('/') {
                    let n = self.modulus()?;
                    let k = self.power()?;
                    out.extend(std::iter::repeat(n).take(k));
                } else {
                    let k = self.power()?;
                    out.extend(std::iter::repeat(BigInt::zero()).take(k));
                }
                Ok(())
            }
            Some(c) => self.fail(format!("unexpected `{c}`")),
            None => self.fail("expected a group"),
        }
    }
}

/// Parses and canonicalizes a group expression.
pub fn parse_group(text: &str) -> Result<Group, ParseError> {
    let mut p = Parser::new(text);
    let mut cyclics = Vec::new();
    p.term(&mut cyclics)?;
    while p.eat('+') {
        p.term(&mut cyclics)?;
    }
    if let Some(c) = p.peek() {
        return p.fail(format!("unexpected `{c}`"));
    }
    debug_assert!(cyclics.iter().all(|n| n.is_zero() || n > &BigInt::one()));
    Ok(Group::from_cyclics(&cyclics))
}

/// `Z^r + Z/d1 + ...`, or with `ℤ` and `⊕`.
pub fn format_group(g: &Group, unicode: bool) -> String {
    if unicode {
        g.to_unicode()
    } else {
        g.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(rank: usize, t: &[i64]) -> Group {
        Group::new(rank, t.iter().map(|&d| BigInt::from(d)).collect()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(parse_group("Z").unwrap(), g(1, &[]));
        assert_eq!(parse_group("Z/2").unwrap(), g(0, &[2]));
        assert_eq!(parse_group("Z^2 + Z/12 + Z/8").unwrap(), g(2, &[4, 24]));
        assert_eq!(parse_group(" Z / 2 ^ 3 ").unwrap(), g(0, &[2, 2, 2]));
        assert_eq!(parse_group("(Z/3)^2+Z").unwrap(), g(1, &[3, 3]));
        assert_eq!(parse_group("0").unwrap(), Group::trivial());
        assert_eq!(parse_group("ℤ ⊕ ℤ/4").unwrap(), g(1, &[4]));
    }

    #[test]
    fn rejections() {
        for bad in ["", "Z/2^0", "Z/1", "Z/0", "Z^0", "Z+", "Z/", "Q", "Z/2)", "(Z/2)", "Z 2", "Z^-1"] {
            assert!(parse_group(bad).is_err(), "{bad:?} parsed");
        }
        let e = parse_group("Z + Z/1").unwrap_err();
        assert_eq!(e.pos, 6);
        assert_eq!(parse_group("Z/2^0").unwrap_err().pos, 4);
    }

    #[test]
    fn printing_round_trips() {
        for t in [g(0, &[]), g(1, &[]), g(3, &[2, 4, 240])] {
            for unicode in [false, true] {
                assert_eq!(parse_group(&format_group(&t, unicode)).unwrap(), t);
            }
        }
        assert_eq!(format_group(&g(2, &[4, 24]), false), "Z^2 + Z/4 + Z/24");
        assert_eq!(format_group(&g(2, &[4, 24]), true), "ℤ^2 ⊕ ℤ/4 ⊕ ℤ/24");
    }
}
