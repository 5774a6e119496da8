//! Inline element expressions.
//!
//! ```text
//! expr  := term (('*' | '.') term)*
//! term  := atom ('^' int)?
//! atom  := 'iota(' label ')' | 'lambda(' word ',' label ')' | 'a_g(' label ')'
//!        | '[' dom '|' label '|' ran (';' dom '|' label '|' ran)* ']'
//!        | '(' expr ')' | 'comm(' expr ',' expr ')' | 'conj(' expr ',' expr ')'
//!        | 'id' | '@' path
//! ```
//!
//! Products are read left to right and compose as a right action, so
//! `a * b` applies `a` first.

use std::path::Path;

use lthompson::diagrams::{BitWord, Column, LabeledDiagram, Leaf};
use lthompson::io::ElementFile;
use lthompson::splinter::a_g;
use lthompson::vphi::{iota, lambda_u, Context, GroupoidElement};
use lthompson::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Iota(String),
    Lambda(String, String),
    AG(String),
    Literal(Vec<(String, String, String)>),
    File(String),
    Id,
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Comm(Box<Expr>, Box<Expr>),
    Conj(Box<Expr>, Box<Expr>),
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(err(self.pos, format!("expected `{s}`")))
        }
    }

    /// Raw text up to the first of `stops` outside angle brackets.
    fn raw_until(&mut self, stops: &[char]) -> Result<String> {
        let start = self.pos;
        let mut depth = 0usize;
        for (i, c) in self.rest().char_indices() {
            match c {
                '<' => depth += 1,
                '>' if depth > 0 => depth -= 1,
                c if depth == 0 && stops.contains(&c) => {
                    self.pos = start + i;
                    return Ok(self.src[start..start + i].trim().to_string());
                }
                _ => {}
            }
        }
        Err(err(start, format!("unterminated token, expected one of {stops:?}")))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            if self.eat("*") || self.eat(".") {
                acc = Expr::Mul(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let a = self.atom()?;
        if self.eat("^") {
            self.skip_ws();
            let start = self.pos;
            let len = self
                .rest()
                .char_indices()
                .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+')))
                .count();
            let k: i64 = self.src[start..start + len].parse().map_err(|_| err(start, "expected an integer exponent"))?;
            self.pos += len;
            return Ok(Expr::Pow(Box::new(a), k));
        }
        Ok(a)
    }

    fn pair(&mut self) -> Result<(Expr, Expr)> {
        let a = self.expr()?;
        self.expect(",")?;
        let b = self.expr()?;
        self.expect(")")?;
        Ok((a, b))
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("iota(") {
            let g = self.raw_until(&[')'])?;
            self.expect(")")?;
            Ok(Expr::Iota(g))
        } else if self.eat("lambda(") {
            let u = self.raw_until(&[','])?;
            self.expect(",")?;
            let g = self.raw_until(&[')'])?;
            self.expect(")")?;
            Ok(Expr::Lambda(u, g))
        } else if self.eat("a_g(") {
            let g = self.raw_until(&[')'])?;
            self.expect(")")?;
            Ok(Expr::AG(g))
        } else if self.eat("comm(") {
            let (a, b) = self.pair()?;
            Ok(Expr::Comm(Box::new(a), Box::new(b)))
        } else if self.eat("conj(") {
            let (a, b) = self.pair()?;
            Ok(Expr::Conj(Box::new(a), Box::new(b)))
        } else if self.eat("[") {
            let mut columns = Vec::new();
            loop {
                let dom = self.raw_until(&['|'])?;
                self.expect("|")?;
                let label = self.raw_until(&['|'])?;
                self.expect("|")?;
                let ran = self.raw_until(&[';', ']'])?;
                columns.push((dom, label, ran));
                if self.eat("]") {
                    return Ok(Expr::Literal(columns));
                }
                self.expect(";")?;
            }
        } else if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            Ok(e)
        } else if self.eat("@") {
            let len = self.rest().find(|c: char| c.is_whitespace() || "*),^".contains(c)).unwrap_or(self.rest().len());
            if len == 0 {
                return Err(err(self.pos, "expected a file path after `@`"));
            }
            let path = self.rest()[..len].to_string();
            self.pos += len;
            Ok(Expr::File(path))
        } else if self.eat("id") {
            Ok(Expr::Id)
        } else {
            Err(err(start, "expected an element"))
        }
    }
}

pub fn parse_expression(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(err(p.pos, "unexpected trailing input"));
    }
    Ok(e)
}

fn word(s: &str) -> Result<BitWord> {
    s.parse()
}

fn pow(x: &GroupoidElement, k: i64) -> Result<GroupoidElement> {
    let (m, n) = x.roots();
    if m != n {
        return Err(Error::ArityMismatch { left: n as usize, right: m as usize });
    }
    let base = if k < 0 { x.inv()? } else { x.clone() };
    let mut acc = GroupoidElement::identity(x.context(), m);
    for _ in 0..k.unsigned_abs() {
        acc = acc.mul(&base)?;
    }
    Ok(acc)
}

/// Evaluates `e` in `ctx`; `@` paths are resolved against `base`.
pub fn evaluate(e: &Expr, ctx: &Context, base: &Path) -> Result<GroupoidElement> {
    let tree = |x: lthompson::vphi::VPhiElement| x.as_groupoid().clone();
    Ok(match e {
        Expr::Iota(g) => tree(iota(ctx, &ctx.source_backend().parse_label(g)?)?),
        Expr::Lambda(u, g) => tree(lambda_u(ctx, &word(u)?, &ctx.source_backend().parse_label(g)?)?),
        Expr::AG(g) => tree(a_g(ctx, &ctx.source_backend().parse_label(g)?)?),
        Expr::Literal(cols) => {
            let columns = cols
                .iter()
                .map(|(d, g, r)| Ok(Column::new(Leaf::tree(word(d)?), ctx.parse_label(g)?, Leaf::tree(word(r)?))))
                .collect::<Result<Vec<_>>>()?;
            GroupoidElement::from_stored(ctx, LabeledDiagram::tree(columns)?)?
        }
        Expr::File(p) => {
            let path = base.join(p);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))?;
            ElementFile::parse(&text)?.to_element(ctx)?
        }
        Expr::Id => GroupoidElement::identity(ctx, 1),
        Expr::Mul(a, b) => evaluate(a, ctx, base)?.mul(&evaluate(b, ctx, base)?)?,
        Expr::Pow(a, k) => pow(&evaluate(a, ctx, base)?, *k)?,
        Expr::Comm(a, b) => {
            let (a, b) = (evaluate(a, ctx, base)?, evaluate(b, ctx, base)?);
            a.mul(&b)?.mul(&a.inv()?)?.mul(&b.inv()?)?
        }
        Expr::Conj(a, b) => {
            let (a, b) = (evaluate(a, ctx, base)?, evaluate(b, ctx, base)?);
            b.inv()?.mul(&a)?.mul(&b)?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lthompson::groups::{FiniteTable, GroupBackend};

    fn ctx() -> Context {
        let t = FiniteTable::new(vec![vec![0, 1], vec![1, 0]], Some(vec!["1".into(), "g".into()])).unwrap();
        Context::diagonal(GroupBackend::Finite(t))
    }

    fn eval(s: &str) -> GroupoidElement {
        evaluate(&parse_expression(s).unwrap(), &ctx(), Path::new(".")).unwrap()
    }

    #[test]
    fn grammar() {
        assert_eq!(
            parse_expression("iota(g) * iota(g)^-1").unwrap(),
            Expr::Mul(Box::new(Expr::Iota("g".into())), Box::new(Expr::Pow(Box::new(Expr::Iota("g".into())), -1)))
        );
        assert_eq!(parse_expression("iota(<1,0>)").unwrap(), Expr::Iota("<1,0>".into()));
        assert_eq!(parse_expression("@dir/x.json").unwrap(), Expr::File("dir/x.json".into()));
        let Err(Error::Parse { pos, .. }) = parse_expression("iota(g) + id") else { panic!() };
        assert_eq!(pos, 8);
        assert!(parse_expression("[0|g").is_err());
    }

    #[test]
    fn evaluation() {
        assert!(eval("iota(g) * iota(g)^-1").is_identity());
        assert_eq!(eval("[0|g|0; 1|1|1]"), eval("iota(g)"));
        assert!(eval("comm(lambda(0,g), lambda(1,g))").is_identity());
        assert_eq!(eval("conj(iota(g), id)"), eval("iota(g)"));
        assert_eq!(eval("iota(g) . iota(g)"), eval("iota(g)^2"));
        assert!(eval("(iota(g)*iota(g))^3").is_identity());
    }
}
