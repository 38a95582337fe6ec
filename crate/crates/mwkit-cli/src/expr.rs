//! Expression syntax shared by every subcommand.
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor ("*"? factor)*
//! factor := integer | rational | "eta" | "E" | "(" expr ")"
//!         | "[" unit "]" | "<" units ">" | "<<" units ">>"
//!         | "{" units "}" | "[[" units "]]"
//! ```
//!
//! Unit literals are signed integers or rationals, reduced into the field at
//! parse time. `<a_1,…,a_n>` is the diagonal form ⟨a_1⟩ + ⋯ + ⟨a_n⟩.

use std::fmt;

use mwkit::groupring::{FieldSpec, UnitRep};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Int(BigInt),
    /// A non-integral rational literal, kept as written in lowest terms.
    Rational(BigInt, BigInt),
    Eta,
    E,
    Bracket(UnitRep),
    Angle(Vec<UnitRep>),
    Pfister(Vec<UnitRep>),
    Milnor(Vec<UnitRep>),
    Gen(Vec<UnitRep>),
    Group(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term(pub Vec<Factor>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr(pub Vec<(Sign, Term)>);

/// A parsed expression together with the field its units live in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolExpr {
    pub field: FieldSpec,
    pub root: Expr,
}

pub fn parse(src: &str, field: FieldSpec) -> Result<SymbolExpr, ParseError> {
    let mut p = Parser { s: src.as_bytes(), pos: 0, field };
    let root = p.expr()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(SymbolExpr { field, root })
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    field: FieldSpec,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{tok}'")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let first = if self.eat("-") { Sign::Minus } else { Sign::Plus };
        terms.push((first, self.term()?));
        loop {
            let sign = if self.eat("+") {
                Sign::Plus
            } else if self.eat("-") {
                Sign::Minus
            } else {
                break;
            };
            terms.push((sign, self.term()?));
        }
        Ok(Expr(terms))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut fs = vec![self.factor()?];
        loop {
            if self.eat("*") {
                fs.push(self.factor()?);
                continue;
            }
            match self.peek() {
                Some(c) if c.is_ascii_digit() || b"[<{(eE".contains(&c) => fs.push(self.factor()?),
                _ => break,
            }
        }
        Ok(Term(fs))
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        let start = self.pos;
        if self.eat("[[") {
            let u = self.units("]]")?;
            return Ok(Factor::Gen(u));
        }
        if self.eat("[") {
            let u = self.unit()?;
            self.expect("]")?;
            return Ok(Factor::Bracket(u));
        }
        if self.eat("<<") {
            return Ok(Factor::Pfister(self.units(">>")?));
        }
        if self.eat("<") {
            return Ok(Factor::Angle(self.units(">")?));
        }
        if self.eat("{") {
            return Ok(Factor::Milnor(self.units("}")?));
        }
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(Factor::Group(Box::new(e)));
        }
        if self.eat("eta") {
            return Ok(Factor::Eta);
        }
        if self.eat("E") {
            return Ok(Factor::E);
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let (n, d) = self.number()?;
                if d == BigInt::from(1) {
                    Ok(Factor::Int(n))
                } else {
                    Ok(Factor::Rational(n, d))
                }
            }
            _ => {
                self.pos = start;
                self.skip_ws();
                Err(self.err("expected a factor"))
            }
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(txt.parse().expect("ascii digits"))
    }

    /// An unsigned integer or rational in lowest terms.
    fn number(&mut self) -> Result<(BigInt, BigInt), ParseError> {
        let n = self.digits()?;
        if self.eat("/") {
            let at = self.pos;
            let d = self.digits()?;
            if d == BigInt::from(0) {
                return Err(ParseError { pos: at, msg: "zero denominator".into() });
            }
            let g = num_integer::Integer::gcd(&n, &d);
            return Ok((n / &g, d / g));
        }
        Ok((n, BigInt::from(1)))
    }

    fn unit(&mut self) -> Result<UnitRep, ParseError> {
        let neg = self.eat("-");
        self.skip_ws();
        let at = self.pos;
        let (n, d) = self.number()?;
        let n = if neg { -n } else { n };
        self.field.unit_ratio(&n, &d).map_err(|e| ParseError { pos: at, msg: format!("non-unit literal: {e}") })
    }

    fn units(&mut self, close: &str) -> Result<Vec<UnitRep>, ParseError> {
        let mut out = vec![self.unit()?];
        while self.eat(",") {
            out.push(self.unit()?);
        }
        self.expect(close)?;
        Ok(out)
    }
}

fn join(us: &[UnitRep]) -> String {
    us.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Int(n) => write!(f, "{n}"),
            Factor::Rational(n, d) => write!(f, "{n}/{d}"),
            Factor::Eta => write!(f, "eta"),
            Factor::E => write!(f, "E"),
            Factor::Bracket(u) => write!(f, "[{u}]"),
            Factor::Angle(us) => write!(f, "<{}>", join(us)),
            Factor::Pfister(us) => write!(f, "<<{}>>", join(us)),
            Factor::Milnor(us) => write!(f, "{{{}}}", join(us)),
            Factor::Gen(us) => write!(f, "[[{}]]", join(us)),
            Factor::Group(e) => write!(f, "({e})"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, t)) in self.0.iter().enumerate() {
            match (i, s) {
                (0, Sign::Plus) => write!(f, "{t}")?,
                (0, Sign::Minus) => write!(f, "-{t}")?,
                (_, Sign::Plus) => write!(f, " + {t}")?,
                (_, Sign::Minus) => write!(f, " - {t}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for SymbolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let q = FieldSpec::Q;
        let h = parse("eta*[ -1 ] + 2", q).unwrap();
        assert_eq!(h.root.0.len(), 2);
        assert_eq!(h.to_string(), "eta*[-1] + 2");
        let e = parse("[2][3] - <5>*[7][11]", q).unwrap();
        assert_eq!(e.root.0[1].1 .0.len(), 3);
        assert!(parse("[[1,0]]", q).is_err());
        assert!(parse("[7]", FieldSpec::Fp(7)).is_err());
        let err = parse("[2] + ", q).unwrap_err();
        assert_eq!(err.pos, 6);
    }

    #[test]
    fn fp_literals_reduce() {
        let e = parse("[-1]<1/2>", FieldSpec::Fp(7)).unwrap();
        assert_eq!(e.to_string(), "[6]*<4>");
    }
}
