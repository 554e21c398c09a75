//! Element expressions.
//!
//! ```text
//! expr    := power ( '*'? power )*
//! power   := atom ( '^' int )*
//! atom    := 'a' | 'b' | 'I' | 'e' '[' nat ']'
//!          | 'iso' '(' '[' ( nat ( ',' nat )* )? ']' ',' int ')'
//!          | 'grp' '(' int ')'
//!          | '(' expr ')'
//! int     := '-'? nat
//! ```
//!
//! Juxtaposition is a product, so `ab` is `a*b`.

use std::fmt;

use pisom::extension::{ext_mul, ExtElem};
use pisom::{NoiseParams, PartialIso};
use thiserror::Error;

/// Literal points, shifts and group values must stay within this magnitude.
pub const MAX_LITERAL: u64 = 1 << 20;
/// Largest accepted `|n|` in `x^n`.
pub const MAX_EXPONENT: u64 = 4096;
/// Bound on `(nd + |shift|)·|n|` when raising a monoid element to a power.
pub const MAX_POWER_SIZE: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Iso { excluded: Vec<u64>, shift: i64 },
    Grp(i64),
    A,
    B,
    I,
    Eps(u64),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Iso { excluded, shift } => {
                let e: Vec<String> = excluded.iter().map(u64::to_string).collect();
                write!(f, "iso([{}],{shift})", e.join(","))
            }
            Expr::Grp(k) => write!(f, "grp({k})"),
            Expr::A => f.write_str("a"),
            Expr::B => f.write_str("b"),
            Expr::I => f.write_str("I"),
            Expr::Eps(i) => write!(f, "e[{i}]"),
            Expr::Mul(x, y) => write!(f, "({x}*{y})"),
            Expr::Pow(x, n) => write!(f, "({x})^{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("column {column}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("in `{term}`: {source}")]
pub struct EvalError {
    pub term: String,
    pub source: pisom::Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Iso,
    Grp,
    A,
    B,
    I,
    E,
    Nat(u64),
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Iso => f.write_str("`iso`"),
            Tok::Grp => f.write_str("`grp`"),
            Tok::A => f.write_str("`a`"),
            Tok::B => f.write_str("`b`"),
            Tok::I => f.write_str("`I`"),
            Tok::E => f.write_str("`e`"),
            Tok::Nat(n) => write!(f, "`{n}`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

const ATOM: &[&str] = &["`a`", "`b`", "`I`", "`e[`", "`iso(`", "`grp(`", "`(`"];

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let rest: String = chars[i..].iter().take(3).collect();
        let (tok, len) = match c {
            _ if rest == "iso" => (Tok::Iso, 3),
            _ if rest == "grp" => (Tok::Grp, 3),
            'a' => (Tok::A, 1),
            'b' => (Tok::B, 1),
            'I' => (Tok::I, 1),
            'e' => (Tok::E, 1),
            '-' => (Tok::Minus, 1),
            '*' => (Tok::Star, 1),
            '^' => (Tok::Caret, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '[' => (Tok::LBracket, 1),
            ']' => (Tok::RBracket, 1),
            ',' => (Tok::Comma, 1),
            d if d.is_ascii_digit() => {
                let digits: String = chars[i..]
                    .iter()
                    .take_while(|c| c.is_ascii_digit())
                    .collect();
                let n = digits
                    .parse::<u64>()
                    .ok()
                    .filter(|&n| n <= MAX_LITERAL)
                    .ok_or_else(|| ParseError {
                        column,
                        expected: vec!["a number at most 2^20"],
                        found: format!("`{digits}`"),
                    })?;
                (Tok::Nat(n), digits.len())
            }
            other => {
                return Err(ParseError {
                    column,
                    expected: vec!["a token"],
                    found: format!("{other:?}"),
                })
            }
        };
        out.push((tok, column));
        i += len;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn fail<T>(&self, expected: &[&'static str]) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.column(),
            expected: expected.to_vec(),
            found: self.peek().to_string(),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, name: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(&[name])
        }
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Tok::Nat(n) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => self.fail(&["a number"]),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.pos += 1;
        }
        match self.peek() {
            Tok::Nat(n) => {
                let n = *n as i64;
                self.pos += 1;
                Ok(if negative { -n } else { n })
            }
            _ if negative => self.fail(&["a number"]),
            _ => self.fail(&["`-`", "a number"]),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::A | Tok::B | Tok::I | Tok::E | Tok::Iso | Tok::Grp | Tok::LParen
        )
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.power()?;
        loop {
            if *self.peek() == Tok::Star {
                self.pos += 1;
                if !self.starts_atom() {
                    return self.fail(ATOM);
                }
            } else if !self.starts_atom() {
                return Ok(lhs);
            }
            let rhs = self.power()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.pos += 1;
            let column = self.column();
            let n = self.int()?;
            if n.unsigned_abs() > MAX_EXPONENT {
                return Err(ParseError {
                    column,
                    expected: vec!["an exponent of magnitude at most 4096"],
                    found: format!("`{n}`"),
                });
            }
            base = Expr::Pow(Box::new(base), n);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::A => {
                self.bump();
                Ok(Expr::A)
            }
            Tok::B => {
                self.bump();
                Ok(Expr::B)
            }
            Tok::I => {
                self.bump();
                Ok(Expr::I)
            }
            Tok::E => {
                self.bump();
                self.expect(Tok::LBracket, "`[`")?;
                if *self.peek() == Tok::Nat(0) {
                    return self.fail(&["an index ≥ 1"]);
                }
                let i = self.nat()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Expr::Eps(i))
            }
            Tok::Iso => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                self.expect(Tok::LBracket, "`[`")?;
                let mut excluded = Vec::new();
                if *self.peek() != Tok::RBracket {
                    loop {
                        if *self.peek() == Tok::Nat(0) {
                            return self.fail(&["a point ≥ 1"]);
                        }
                        excluded.push(self.nat()?);
                        match self.peek() {
                            Tok::Comma => {
                                self.bump();
                            }
                            Tok::RBracket => break,
                            _ => return self.fail(&["`,`", "`]`"]),
                        }
                    }
                }
                self.expect(Tok::RBracket, "`]`")?;
                self.expect(Tok::Comma, "`,`")?;
                let shift = self.int()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Iso { excluded, shift })
            }
            Tok::Grp => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let k = self.int()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Grp(k))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => self.fail(ATOM),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        let mut expected = vec!["`*`", "`^`"];
        expected.extend_from_slice(ATOM);
        expected.push("end of input");
        return p.fail(&expected);
    }
    Ok(e)
}

/// Evaluates in the extension for `params`; monoid values must have noise
/// at most `j`.
pub fn eval(expr: &Expr, params: &NoiseParams) -> Result<ExtElem, EvalError> {
    let fail = |source| EvalError {
        term: expr.to_string(),
        source,
    };
    let value = match expr {
        Expr::Iso { excluded, shift } => {
            ExtElem::Iso(PartialIso::new(excluded.iter().copied(), *shift).map_err(fail)?)
        }
        Expr::Grp(k) => ExtElem::Grp(*k),
        Expr::A => ExtElem::Iso(PartialIso::alpha()),
        Expr::B => ExtElem::Iso(PartialIso::beta()),
        Expr::I => ExtElem::Iso(PartialIso::identity()),
        Expr::Eps(i) => ExtElem::Iso(PartialIso::epsilon(*i).map_err(fail)?),
        Expr::Mul(x, y) => {
            let (x, y) = (eval(x, params)?, eval(y, params)?);
            ext_mul(&x, &y, params).map_err(fail)?
        }
        Expr::Pow(x, n) => match eval(x, params)? {
            _ if *n == 0 => ExtElem::Iso(PartialIso::identity()),
            ExtElem::Iso(g) => {
                let size = (g.nd() + g.shift().unsigned_abs()).saturating_mul(n.unsigned_abs());
                if size > MAX_POWER_SIZE {
                    return Err(fail(pisom::Error::InvalidArgument(format!(
                        "power would exclude about {size} points"
                    ))));
                }
                ExtElem::Iso(g.pow(*n))
            }
            ExtElem::Grp(k) => ExtElem::Grp(k.checked_mul(*n).ok_or_else(|| {
                fail(pisom::Error::InvalidArgument(
                    "group value overflows".into(),
                ))
            })?),
        },
    };
    value.check(params).map_err(fail)?;
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(text: &str) -> ExtElem {
        eval(&parse(text).unwrap(), &NoiseParams::unbounded()).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse("a*b").unwrap(),
            Expr::Mul(Box::new(Expr::A), Box::new(Expr::B))
        );
        assert_eq!(
            parse("iso([2],0)^-1").unwrap(),
            Expr::Pow(
                Box::new(Expr::Iso {
                    excluded: vec![2],
                    shift: 0
                }),
                -1
            )
        );
        let err = parse("e[0]").unwrap_err();
        assert_eq!(err.column, 3);
        assert_eq!(parse("ab").unwrap(), parse("a*b").unwrap());
        assert_eq!(parse("a b").unwrap(), parse("a*b").unwrap());
    }

    #[test]
    fn parse_errors_carry_columns() {
        let e = parse("a*").unwrap_err();
        assert_eq!(e.column, 3);
        assert_eq!(e.found, "end of input");
        let e = parse("iso([1,],0)").unwrap_err();
        assert_eq!(e.column, 8);
        let e = parse("a)").unwrap_err();
        assert_eq!(e.column, 2);
        assert!(e.expected.contains(&"end of input"));
        let e = parse("x").unwrap_err();
        assert_eq!((e.column, e.found.as_str()), (1, "'x'"));
        assert!(parse("a^9999").is_err());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(ev("a*b"), ExtElem::Iso(PartialIso::identity()));
        assert_eq!(ev("grp(3)*b"), ExtElem::Grp(2));
        assert_eq!(ev("e[2]*e[3]").to_string(), "iso([2,3],0)");
        assert_eq!(ev("b a"), ExtElem::Iso(PartialIso::new([1], 0).unwrap()));
        assert_eq!(ev("(ba)^3"), ev("ba"));
        assert_eq!(ev("a^-2"), ev("b^2"));
        assert_eq!(ev("grp(2)^-3"), ExtElem::Grp(-6));
        assert_eq!(ev("grp(5)^0"), ExtElem::Iso(PartialIso::identity()));
    }

    #[test]
    fn eval_errors_name_the_subterm() {
        let e = eval(&parse("a*iso([1],-2)").unwrap(), &NoiseParams::unbounded()).unwrap_err();
        assert_eq!(e.term, "iso([1],-2)");
        let j2 = NoiseParams::full(2);
        let e = eval(&parse("e[2]*e[4]").unwrap(), &j2).unwrap_err();
        assert_eq!(e.term, "e[4]");
        assert!(matches!(
            e.source,
            pisom::Error::OutsideClass { noise: 4, .. }
        ));
    }
}
