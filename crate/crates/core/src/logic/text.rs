//! Text syntax for formulas.
//!
//! ```text
//! EX y1. ALL x1. (E(y1,x1) | !(y1 = x1))
//! ```
//!
//! Precedence from loosest to tightest: quantifiers (scope extends as far
//! right as possible), `->` (right associative, read as `!A | B`), `|`, `&`,
//! `!`. `TRUE` and `FALSE` are the empty conjunction and disjunction.

use std::fmt::Write as _;

use super::{Formula, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Ex,
    All,
    True,
    False,
    Dot,
    Comma,
    LParen,
    RParen,
    And,
    Or,
    Not,
    Arrow,
    Eq,
}

fn perr(pos: usize, message: impl Into<String>) -> Error {
    Error::Parse { line: 1, message: format!("column {}: {}", pos + 1, message.into()) }
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '.' => Tok::Dot,
            ',' => Tok::Comma,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '&' => Tok::And,
            '|' => Tok::Or,
            '!' => Tok::Not,
            '=' => Tok::Eq,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                let word: String = chars[start..=i].iter().collect();
                match word.as_str() {
                    "EX" => Tok::Ex,
                    "ALL" => Tok::All,
                    "TRUE" => Tok::True,
                    "FALSE" => Tok::False,
                    _ => Tok::Ident(word),
                }
            }
            other => return Err(perr(i, format!("unexpected character `{other}`"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let at = self.at();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(perr(at, format!("expected {what}"))),
        }
    }

    fn ident(&mut self) -> Result<String> {
        let at = self.at();
        match self.bump() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => Err(perr(at, "expected identifier")),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Tok::Ex) | Some(Tok::All) => {
                let existential = self.bump() == Some(Tok::Ex);
                let v: Var = self.ident()?.into();
                self.expect(Tok::Dot, "`.` after quantified variable")?;
                let body = self.formula()?;
                Ok(if existential { Formula::Exists(v, Box::new(body)) } else { Formula::ForAll(v, Box::new(body)) })
            }
            _ => self.implication(),
        }
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut parts = vec![self.conjunction()?];
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            parts.push(self.conjunction()?);
        }
        Ok(Formula::or(parts))
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut parts = vec![self.unary()?];
        while self.peek() == Some(&Tok::And) {
            self.bump();
            parts.push(self.unary()?);
        }
        Ok(Formula::and(parts))
    }

    fn unary(&mut self) -> Result<Formula> {
        let at = self.at();
        match self.peek() {
            Some(Tok::Not) => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Ex) | Some(Tok::All) => self.formula(),
            Some(Tok::LParen) => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::True) => {
                self.bump();
                Ok(Formula::truth())
            }
            Some(Tok::False) => {
                self.bump();
                Ok(Formula::falsity())
            }
            Some(Tok::Ident(_)) => {
                let name = self.ident()?;
                match self.peek() {
                    Some(Tok::LParen) => {
                        self.bump();
                        let mut args: Vec<Var> = vec![self.ident()?.into()];
                        while self.peek() == Some(&Tok::Comma) {
                            self.bump();
                            args.push(self.ident()?.into());
                        }
                        self.expect(Tok::RParen, "`)` after arguments")?;
                        Ok(Formula::Rel(name.into(), args))
                    }
                    Some(Tok::Eq) => {
                        self.bump();
                        let rhs = self.ident()?;
                        Ok(Formula::Eq(name.into(), rhs.into()))
                    }
                    _ => Err(perr(self.at(), "expected `(` or `=` after identifier")),
                }
            }
            _ => Err(perr(at, "expected a formula")),
        }
    }
}

pub fn parse_formula(s: &str) -> Result<Formula> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, end: s.chars().count() };
    let f = p.formula()?;
    if p.pos < p.toks.len() {
        return Err(perr(p.at(), "trailing input"));
    }
    Ok(f)
}

/// Canonical text: leading quantifiers, then a fully parenthesised matrix.
pub(crate) fn to_text(f: &Formula) -> String {
    let mut out = String::new();
    let mut cur = f;
    while let Formula::Exists(v, b) | Formula::ForAll(v, b) = cur {
        let q = if matches!(cur, Formula::Exists(..)) { "EX" } else { "ALL" };
        let _ = write!(out, "{q} {v}. ");
        cur = b;
    }
    write_node(cur, &mut out);
    out
}

fn write_node(f: &Formula, out: &mut String) {
    match f {
        Formula::Exists(..) | Formula::ForAll(..) => {
            out.push('(');
            out.push_str(&to_text(f));
            out.push(')');
        }
        Formula::And(cs) | Formula::Or(cs) if cs.is_empty() => {
            out.push_str(if matches!(f, Formula::And(_)) { "TRUE" } else { "FALSE" });
        }
        Formula::And(cs) | Formula::Or(cs) => {
            let op = if matches!(f, Formula::And(_)) { " & " } else { " | " };
            out.push('(');
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(op);
                }
                write_node(c, out);
            }
            out.push(')');
        }
        Formula::Not(b) => {
            out.push('!');
            match &**b {
                Formula::Eq(..) => {
                    out.push('(');
                    write_node(b, out);
                    out.push(')');
                }
                _ => write_node(b, out),
            }
        }
        Formula::Rel(name, args) => {
            out.push_str(name);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(a);
            }
            out.push(')');
        }
        Formula::Eq(a, b) => {
            let _ = write!(out, "{a} = {b}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::var;

    #[test]
    fn parses_and_desugars() {
        let f = parse_formula("ALL x. ALL y. (!(x = y) -> E(x,y))").unwrap();
        let expected = Formula::forall(
            "x",
            Formula::forall(
                "y",
                Formula::Or(vec![
                    Formula::not(Formula::not(Formula::eq("x", "y"))),
                    Formula::rel("E", vec![var("x"), var("y")]),
                ]),
            ),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn precedence() {
        let f = parse_formula("A(x) | B(x) & C(x)").unwrap();
        assert!(matches!(&f, Formula::Or(cs) if matches!(cs[1], Formula::And(_))));
        let g = parse_formula("A(x) -> B(x) -> C(x)").unwrap();
        assert!(matches!(&g, Formula::Or(cs) if matches!(cs[1], Formula::Or(_))));
    }

    #[test]
    fn round_trip() {
        for s in [
            "EX y1. ALL x1. ALL x2. (E(y1,x1) & (!(x1 = x2) | !E(x1,x2)) & TRUE)",
            "(EX x. R(x) & !(ALL y. S(y)))",
            "!(EX x. R(x))",
            "FALSE",
            "x = y",
        ] {
            let f = parse_formula(s).unwrap();
            let text = to_text(&f);
            assert_eq!(parse_formula(&text).unwrap(), f, "{s} -> {text}");
            assert_eq!(to_text(&parse_formula(&text).unwrap()), text);
        }
    }

    #[test]
    fn rejects() {
        for s in ["", "EX x R(x)", "R(x", "R(x,)", "x", "R(x) &", "R(x) R(y)", "EX . R(x)", "x == y", "R(x) $"] {
            assert!(parse_formula(s).is_err(), "accepted {s:?}");
        }
    }
}
