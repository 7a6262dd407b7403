//! Map files: a header naming both charts, then one component per target
//! coordinate.
//!
//! ```text
//! map from p1 p2 p3 to x y z
//! x = p1*sin(p1^3*p2)
//! y = p1*cos(p1^3*p2)
//! z = p3
//! ```

use jacobi_core::morphism::SmoothMap;
use jacobi_core::Expr;

use crate::error::ParseError;
use crate::structure_file::{parse_chart, parse_expr};

pub fn parse_map(text: &str) -> Result<SmoothMap, ParseError> {
    let mut charts = None;
    let mut components: Vec<Option<Expr>> = Vec::new();
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        let col = body.len() - trimmed.len() + 1;
        let trimmed = trimmed.trim_end();
        if trimmed.is_empty() {
            continue;
        }
        let Some((source, target)) = &charts else {
            let Some(rest) = trimmed.strip_prefix("map from ") else {
                return Err(ParseError::new(line, col, "expected `map from <names> to <names>`"));
            };
            let Some((s, t)) = rest.split_once(" to ") else {
                return Err(ParseError::new(line, col, "expected `to` between the charts"));
            };
            let source = parse_chart(s, line, col + 9)?;
            let target = parse_chart(t, line, col + 9 + s.len() + 4)?;
            components = vec![None; target.dim()];
            charts = Some((source, target));
            continue;
        };
        let Some((name, expr)) = trimmed.split_once('=') else {
            return Err(ParseError::new(line, col, "expected `<target coordinate> = <expression>`"));
        };
        let name = name.trim();
        let k = target
            .index_of(name)
            .ok_or_else(|| ParseError::new(line, col, format!("`{name}` is not a target coordinate")))?;
        if components[k].is_some() {
            return Err(ParseError::new(line, col, format!("`{name}` assigned twice")));
        }
        let offset = trimmed.find('=').unwrap_or(0) + 1;
        let expr_col = col + offset + (expr.len() - expr.trim_start().len());
        components[k] = Some(parse_expr(expr.trim(), source, line, expr_col)?);
    }
    let Some((source, target)) = charts else {
        return Err(ParseError::new(last_line, 1, "missing `map from ... to ...` header"));
    };
    let mut out = Vec::with_capacity(components.len());
    for (k, c) in components.into_iter().enumerate() {
        match c {
            Some(c) => out.push(c),
            None => {
                return Err(ParseError::new(last_line, 1, format!("no component for `{}`", target.name(k))));
            }
        }
    }
    SmoothMap::new(&source, &target, out).map_err(|e| ParseError::new(last_line, 1, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_components_by_name() {
        let m = parse_map("map from a b to u v\nv = a\nu = a*b  # product\n").unwrap();
        assert_eq!(m.components()[0].display(m.source()).to_string(), "a*b");
        assert_eq!(m.components()[1].display(m.source()).to_string(), "a");
    }

    #[test]
    fn rejects_incomplete_maps() {
        let err = parse_map("map from a b to u v\nu = a\n").unwrap_err();
        assert!(err.message.contains("`v`"));
        let err = parse_map("map from a b to u v\nu = a\nu = b\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_map("map from a b to u v\nu = c\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 5));
    }
}
