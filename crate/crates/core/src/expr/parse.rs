use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::Expr;
use crate::{Chart, Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax { position, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().map_err(|_| syntax(start, "bad number"))?;
                out.push((Tok::Num(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, alloc::format!("unexpected character `{ch}`")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    chart: &'a Chart,
}

pub(super) fn parse(text: &str, chart: &Chart) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), chart };
    let e = p.expr()?;
    if let Some((_, at)) = p.toks.get(p.pos) {
        return Err(syntax(*at, "unexpected trailing input"));
    }
    Ok(e)
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, at)| *at)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(syntax(self.offset(), alloc::format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut items = alloc::vec![self.term()?];
        loop {
            if self.eat(&Tok::Plus) {
                items.push(self.term()?);
            } else if self.eat(&Tok::Minus) {
                let t = self.term()?;
                items.push(Expr::Neg(Box::new(t)));
            } else {
                break;
            }
        }
        Ok(if items.len() == 1 { items.pop().expect("one item") } else { Expr::Sum(items) })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                let f = self.factor()?;
                acc = match acc {
                    Expr::Prod(mut v) => {
                        v.push(f);
                        Expr::Prod(v)
                    }
                    other => Expr::Prod(alloc::vec![other, f]),
                };
            } else if self.peek() == Some(&Tok::Slash) {
                let at = self.toks[self.pos + 1..].first().map_or(self.end, |(_, a)| *a);
                self.pos += 1;
                let f = self.factor()?;
                if f.is_literal_zero() {
                    return Err(syntax(at, "division by literal zero"));
                }
                acc = Expr::Div(Box::new(acc), Box::new(f));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.eat(&Tok::Caret) {
            let negative = self.eat(&Tok::Minus);
            let at = self.offset();
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return Err(syntax(at, "expected integer exponent"));
            };
            self.pos += 1;
            let n = if negative { -n } else { n };
            let k: i32 = n.try_into().map_err(|_| syntax(at, "exponent out of range"))?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => {
                // An integer directly followed by `/integer` is a ratio literal.
                if self.peek() == Some(&Tok::Slash) {
                    if let Some((Tok::Num(d), dat)) = self.toks.get(self.pos + 1).cloned() {
                        let exponent_follows = matches!(self.toks.get(self.pos + 2), Some((Tok::Caret, _)));
                        if !exponent_follows {
                            if d.is_zero() {
                                return Err(syntax(dat, "division by literal zero"));
                            }
                            self.pos += 2;
                            return Ok(Expr::Const(BigRational::new(n, d)));
                        }
                    }
                }
                Ok(Expr::Const(BigRational::from_integer(n)))
            }
            Tok::Ident(name) => match name.as_str() {
                "sin" | "cos" | "exp" => {
                    self.expect(&Tok::LParen, "`(` after function name")?;
                    let arg = Box::new(self.expr()?);
                    self.expect(&Tok::RParen, "`)`")?;
                    Ok(match name.as_str() {
                        "sin" => Expr::Sin(arg),
                        "cos" => Expr::Cos(arg),
                        _ => Expr::Exp(arg),
                    })
                }
                _ => match self.chart.index_of(&name) {
                    Some(i) => Ok(Expr::Var(i)),
                    None => Err(Error::UnknownIdentifier { name, position: at }),
                },
            },
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Minus => {
                let f = self.factor()?;
                Ok(Expr::Neg(Box::new(f)))
            }
            _ => Err(syntax(at, "expected a number, coordinate, function or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Chart {
        Chart::new(["x", "y", "z"]).unwrap()
    }

    #[test]
    fn grammar_shapes() {
        let e = parse("x^4 + y^4", &xyz()).unwrap();
        assert_eq!(e, Expr::Sum(alloc::vec![Expr::Var(0).pow(4), Expr::Var(1).pow(4)]));
        let c = Chart::new(["p1", "p2", "p3"]).unwrap();
        let e = parse("p1*sin(p1^3*p2)", &c).unwrap();
        let inner = Expr::Prod(alloc::vec![Expr::Var(0).pow(3), Expr::Var(1)]);
        assert_eq!(e, Expr::Prod(alloc::vec![Expr::Var(0), inner.sin()]));
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let e = parse("-x^2", &xyz()).unwrap();
        assert_eq!(e, Expr::Neg(Box::new(Expr::Var(0).pow(2))));
        let e = parse("x - y - z", &xyz()).unwrap();
        assert_eq!(
            e,
            Expr::Sum(alloc::vec![
                Expr::Var(0),
                Expr::Neg(Box::new(Expr::Var(1))),
                Expr::Neg(Box::new(Expr::Var(2)))
            ])
        );
    }

    #[test]
    fn division_is_left_associative() {
        let e = parse("x/y/z", &xyz()).unwrap();
        let xy = Expr::Div(Box::new(Expr::Var(0)), Box::new(Expr::Var(1)));
        assert_eq!(e, Expr::Div(Box::new(xy), Box::new(Expr::Var(2))));
        assert_eq!(parse("3/4", &xyz()).unwrap(), Expr::ratio(3, 4));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse("x + w", &xyz()),
            Err(Error::UnknownIdentifier { name: "w".into(), position: 4 })
        );
        assert!(matches!(parse("x +", &xyz()), Err(Error::Syntax { position: 3, .. })));
        assert!(matches!(parse("x / 0", &xyz()), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(parse("1/0", &xyz()), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse("sin x", &xyz()), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(parse("x $ y", &xyz()), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse("(x", &xyz()), Err(Error::Syntax { position: 2, .. })));
    }
}
