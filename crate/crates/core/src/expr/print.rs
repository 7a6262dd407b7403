use core::fmt::{self, Write};

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::Expr;
use crate::Chart;

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

/// `Display` adaptor binding an expression to chart names.
pub struct Displayed<'a> {
    expr: &'a Expr,
    chart: &'a Chart,
}

impl<'a> Displayed<'a> {
    pub(super) fn new(expr: &'a Expr, chart: &'a Chart) -> Self {
        Displayed { expr, chart }
    }
}

impl fmt::Display for Displayed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self.expr, self.chart, SUM)
    }
}

fn level(e: &Expr) -> u8 {
    match e {
        Expr::Const(c) if c.is_negative() => UNARY.min(level_ratio(c)),
        Expr::Const(c) => level_ratio(c),
        Expr::Var(_) | Expr::Sin(_) | Expr::Cos(_) | Expr::Exp(_) => ATOM,
        Expr::Sum(_) => SUM,
        Expr::Prod(_) | Expr::Div(..) => PRODUCT,
        Expr::Neg(_) => UNARY,
        Expr::Pow(..) => POWER,
    }
}

fn level_ratio(c: &BigRational) -> u8 {
    if c.is_integer() {
        ATOM
    } else {
        PRODUCT
    }
}

fn write_const(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr, chart: &Chart, min: u8) -> fmt::Result {
    if level(e) < min {
        f.write_char('(')?;
        write_expr(f, e, chart, SUM)?;
        return f.write_char(')');
    }
    match e {
        Expr::Const(c) => write_const(f, c),
        Expr::Var(i) => f.write_str(chart.name(*i)),
        Expr::Sum(items) => {
            for (k, item) in items.iter().enumerate() {
                if k == 0 {
                    write_expr(f, item, chart, SUM)?;
                    continue;
                }
                match negated(item) {
                    Some(pos) => {
                        f.write_str(" - ")?;
                        write_expr(f, &pos, chart, PRODUCT)?;
                    }
                    None => {
                        f.write_str(" + ")?;
                        write_expr(f, item, chart, PRODUCT)?;
                    }
                }
            }
            Ok(())
        }
        Expr::Prod(items) => {
            for (k, item) in items.iter().enumerate() {
                if k == 0 {
                    write_expr(f, item, chart, UNARY)?;
                } else {
                    f.write_char('*')?;
                    write_expr(f, item, chart, POWER)?;
                }
            }
            Ok(())
        }
        Expr::Div(a, b) => {
            write_expr(f, a, chart, PRODUCT)?;
            f.write_char('/')?;
            write_expr(f, b, chart, POWER)
        }
        Expr::Neg(a) => {
            f.write_char('-')?;
            write_expr(f, a, chart, UNARY)
        }
        Expr::Pow(b, k) => {
            write_expr(f, b, chart, ATOM)?;
            write!(f, "^{k}")
        }
        Expr::Sin(a) => write_call(f, "sin", a, chart),
        Expr::Cos(a) => write_call(f, "cos", a, chart),
        Expr::Exp(a) => write_call(f, "exp", a, chart),
    }
}

fn write_call(f: &mut fmt::Formatter<'_>, name: &str, arg: &Expr, chart: &Chart) -> fmt::Result {
    f.write_str(name)?;
    f.write_char('(')?;
    write_expr(f, arg, chart, SUM)?;
    f.write_char(')')
}

// The positive counterpart of a visibly negative summand.
fn negated(e: &Expr) -> Option<Expr> {
    match e {
        Expr::Neg(a) => Some((**a).clone()),
        Expr::Const(c) if c.is_negative() => Some(Expr::Const(-c)),
        Expr::Prod(items) => match items.first() {
            Some(Expr::Const(c)) if c.is_negative() => {
                let mut rest = items.clone();
                if (-c).is_one() {
                    rest.remove(0);
                } else {
                    rest[0] = Expr::Const(-c);
                }
                Some(match rest.len() {
                    1 => rest.pop().expect("one factor"),
                    _ => Expr::Prod(rest),
                })
            }
            _ => None,
        },
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn prints_with_minimal_parentheses() {
        let c = Chart::new(["x", "y"]).unwrap();
        let cases = [
            ("x^4 + y^4", "x^4 + y^4"),
            ("-(x+y)*2", "-(x + y)*2"),
            ("x*(1/2)", "x*(1/2)"),
            ("x - 3*y", "x - 3*y"),
            ("(x^2)^3", "(x^2)^3"),
            ("x/(y*x)", "x/(y*x)"),
            ("exp(-x)*sin(x+y)", "exp(-x)*sin(x + y)"),
            ("x^-2", "x^-2"),
        ];
        for (src, want) in cases {
            let e = Expr::parse(src, &c).unwrap();
            assert_eq!(e.display(&c).to_string(), want, "{src}");
        }
    }

    #[test]
    fn canonical_negatives_read_back() {
        let c = Chart::new(["x", "y"]).unwrap();
        let e = Expr::parse("1 - 2*x*y - x^2/3", &c).unwrap().simplify();
        let text = e.display(&c).to_string();
        let back = Expr::parse(&text, &c).unwrap().simplify();
        assert_eq!(back, e, "{text}");
    }
}
