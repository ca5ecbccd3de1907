//! Recursive-descent reader for the symbol grammar.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := '-'? factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := 'x' | 'xi' | 'i' | 'I' | rational | '(' expr ')'
//! rational := uint ('/' uint)?
//! ```
//!
//! Positions in errors are character offsets into the input.

use num_bigint::BigInt;
use num_traits::Zero;

use super::gaussian::{GaussianRational, Rational};
use super::poly::BivariatePoly;
use crate::error::ParseError;

/// Largest accepted power; keeps accidental inputs from exhausting memory.
const MAX_EXPONENT: u32 = 256;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    X,
    Xi,
    I,
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Bad(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        let start = k;
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while k + 1 < chars.len() && chars[k + 1].is_ascii_digit() {
                    k += 1;
                }
                let s: String = chars[start..=k].iter().collect();
                Tok::Int(s.parse().expect("digit run"))
            }
            a if a.is_ascii_alphabetic() => {
                while k + 1 < chars.len() && chars[k + 1].is_ascii_alphanumeric() {
                    k += 1;
                }
                let word: String = chars[start..=k].iter().collect();
                match word.as_str() {
                    "x" => Tok::X,
                    "xi" => Tok::Xi,
                    "i" | "I" => Tok::I,
                    _ => {
                        return Err(ParseError::Syntax {
                            pos: start,
                            expected: format!("'x', 'xi', 'i', a number or '(' (found '{word}')"),
                        })
                    }
                }
            }
            other => Tok::Bad(other),
        };
        out.push((start, tok));
        k += 1;
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            Tok::Bad(c) => format!("'{c}'"),
            t => format!("{t:?}"),
        };
        Err(ParseError::Syntax { pos: self.pos(), expected: format!("{expected} (found {found})") })
    }

    fn expr(&mut self) -> Result<BivariatePoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivariatePoly, ParseError> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(if negate { -acc } else { acc })
    }

    fn factor(&mut self) -> Result<BivariatePoly, ParseError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let e = match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                n
            }
            Tok::Minus => return Err(ParseError::UnsupportedExponent { pos, found: "negative power".into() }),
            Tok::LParen => {
                return Err(ParseError::UnsupportedExponent {
                    pos,
                    found: "parenthesized power; only nonnegative integer literals are allowed".into(),
                })
            }
            _ => return self.fail("a nonnegative integer exponent"),
        };
        if *self.peek() == Tok::Slash {
            return Err(ParseError::UnsupportedExponent { pos, found: "non-integer power".into() });
        }
        let e: u32 = match u32::try_from(&e) {
            Ok(v) if v <= MAX_EXPONENT => v,
            _ => {
                return Err(ParseError::UnsupportedExponent { pos, found: format!("power {e} exceeds {MAX_EXPONENT}") })
            }
        };
        Ok(base.pow(e))
    }

    fn base(&mut self) -> Result<BivariatePoly, ParseError> {
        match self.peek().clone() {
            Tok::X => {
                self.bump();
                Ok(BivariatePoly::x())
            }
            Tok::Xi => {
                self.bump();
                Ok(BivariatePoly::xi())
            }
            Tok::I => {
                self.bump();
                Ok(BivariatePoly::constant(GaussianRational::i()))
            }
            Tok::Int(n) => {
                self.bump();
                let mut r = Rational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let Tok::Int(d) = self.peek().clone() else {
                        return self.fail("a positive integer denominator");
                    };
                    if d.is_zero() {
                        return self.fail("a nonzero denominator");
                    }
                    self.bump();
                    r /= Rational::from_integer(d);
                }
                Ok(BivariatePoly::constant(GaussianRational::real(r)))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.fail("')'");
                }
                self.bump();
                Ok(inner)
            }
            _ => self.fail("'x', 'xi', 'i', a number or '('"),
        }
    }
}

/// Parse a symbol such as `"xi^3 + i*x*xi^2 + x^2"` into an exact polynomial.
pub fn parse_symbol(text: &str) -> Result<BivariatePoly, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0 };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("'+', '-', '*' or end of input");
    }
    Ok(out)
}

impl std::str::FromStr for BivariatePoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_symbol(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::gaussian::rat;

    #[test]
    fn reads_literals_and_products() {
        let p = parse_symbol("(1+2*i)*x*xi - 3").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(1, 1), GaussianRational::new(rat(1, 1), rat(2, 1)));
        assert_eq!(p.coeff(0, 0), GaussianRational::from_int(-3));
    }

    #[test]
    fn unary_minus_and_capital_i() {
        let p = parse_symbol("-xi + I*x^2 + -1/2").unwrap();
        assert_eq!(p.coeff(1, 0), GaussianRational::from_int(-1));
        assert_eq!(p.coeff(0, 2), GaussianRational::i());
        assert_eq!(p.coeff(0, 0), GaussianRational::from_ratio(-1, 2));
    }

    #[test]
    fn expansion_is_exact() {
        let p = parse_symbol("(xi - x)^2").unwrap();
        assert_eq!(p.coeff(1, 1), GaussianRational::from_int(-2));
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_symbol("x + * xi") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_symbol("x xi"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_symbol("x^-1"), Err(ParseError::UnsupportedExponent { .. })));
        assert!(matches!(parse_symbol("x^1/2"), Err(ParseError::UnsupportedExponent { .. })));
        assert!(matches!(parse_symbol("y"), Err(ParseError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_symbol("(x"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_symbol("1/0"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_symbol(""), Err(ParseError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_symbol("1.5"), Err(ParseError::Syntax { pos: 1, .. })));
    }
}
