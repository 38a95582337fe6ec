//! Evaluation of parsed expressions into the algebra each literal lives in.

use mwkit::gpcomplex::symbols::e_elem;
use mwkit::gpcomplex::{star, SymbolElem};
use mwkit::groupring::{FieldSpec, GroupRingElem};
use mwkit::milnor::MilnorClass;
use mwkit::mwk::{Letter, MWExpr};
use mwkit::{MwError, Result};
use num_bigint::BigInt;
use num_traits::One;

use crate::expr::{Expr, Factor, Sign, SymbolExpr, Term};

#[derive(Debug, Clone)]
pub enum Value {
    /// K^MW words, including integers and forms (degree 0).
    Mw(MWExpr),
    Milnor(MilnorClass),
    /// Combinations of [[a_1,…,a_n]] in the free symbol module.
    Stilde(SymbolElem),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Mw(_) => "mwk",
            Value::Milnor(_) => "milnor",
            Value::Stilde(_) => "stilde",
        }
    }
}

pub fn eval(e: &SymbolExpr) -> Result<Value> {
    eval_expr(e.field, &e.root)
}

fn eval_expr(f: FieldSpec, e: &Expr) -> Result<Value> {
    let mut acc: Option<Value> = None;
    for (s, t) in &e.0 {
        let mut v = eval_term(f, t)?;
        if *s == Sign::Minus {
            v = neg(v);
        }
        acc = Some(match acc {
            None => v,
            Some(a) => add(a, v)?,
        });
    }
    acc.ok_or_else(|| MwError::Input("empty expression".into()))
}

fn eval_term(f: FieldSpec, t: &Term) -> Result<Value> {
    let mut acc: Option<Value> = None;
    for x in &t.0 {
        let v = eval_factor(f, x)?;
        acc = Some(match acc {
            None => v,
            Some(a) => mul(a, v)?,
        });
    }
    acc.ok_or_else(|| MwError::Input("empty term".into()))
}

fn eval_factor(f: FieldSpec, x: &Factor) -> Result<Value> {
    Ok(match x {
        Factor::Int(n) => Value::Mw(MWExpr::integer(f, n.clone())),
        Factor::Rational(n, d) => return Err(MwError::Input(format!("rational coefficient {n}/{d} is not an integer"))),
        Factor::Eta => Value::Mw(MWExpr::eta(f)),
        Factor::E => Value::Stilde(e_elem(f)),
        Factor::Bracket(a) => Value::Mw(MWExpr::bracket(f, a)),
        Factor::Angle(us) => {
            let mut acc = MWExpr::zero(f);
            for u in us {
                acc = acc.add(&MWExpr::angle(f, u));
            }
            Value::Mw(acc)
        }
        Factor::Pfister(us) => Value::Mw(MWExpr::pfister(f, us)),
        Factor::Milnor(us) => Value::Milnor(MilnorClass::symbol(f, us)?),
        Factor::Gen(us) => Value::Stilde(SymbolElem::gen(f, us)?),
        Factor::Group(e) => eval_expr(f, e)?,
    })
}

fn neg(v: Value) -> Value {
    match v {
        Value::Mw(e) => Value::Mw(e.neg()),
        Value::Milnor(m) => Value::Milnor(m.neg()),
        Value::Stilde(s) => Value::Stilde(s.neg()),
    }
}

fn mismatch(a: &Value, b: &Value, op: &str) -> MwError {
    MwError::Input(format!("cannot {op} {} and {} values", a.kind(), b.kind()))
}

fn add(a: Value, b: Value) -> Result<Value> {
    match (a, b) {
        (Value::Mw(x), Value::Mw(y)) => Ok(Value::Mw(x.add(&y))),
        (Value::Milnor(x), Value::Milnor(y)) => Ok(Value::Milnor(x.add(&y)?)),
        (Value::Stilde(x), Value::Stilde(y)) => Ok(Value::Stilde(x.add(&y)?)),
        (a, b) => Err(mismatch(&a, &b, "add")),
    }
}

/// An integer, when every word of `e` is empty.
fn as_integer(e: &MWExpr) -> Option<BigInt> {
    e.terms.iter().try_fold(BigInt::from(0), |acc, (k, w)| w.is_empty().then(|| acc + k))
}

/// A group ring element, when `e` only involves ⟨a⟩, ⟨⟨a⟩⟩ and integers.
fn as_group_ring(e: &MWExpr) -> Option<GroupRingElem> {
    let f = e.field;
    let mut out = GroupRingElem::zero(f);
    for (k, w) in &e.terms {
        let mut g = GroupRingElem::one(f);
        for l in w {
            let x = match l {
                Letter::Angle(a) => GroupRingElem::basis(f, a),
                Letter::Pfister(a) => GroupRingElem::pfister_gen(f, a),
                _ => return None,
            };
            g = g.mul(&x).ok()?;
        }
        out = out.add(&g.scale(k)).ok()?;
    }
    Some(out)
}

fn mul(a: Value, b: Value) -> Result<Value> {
    match (a, b) {
        (Value::Mw(x), Value::Mw(y)) => Ok(Value::Mw(x.mul(&y))),
        (Value::Milnor(x), Value::Milnor(y)) => Ok(Value::Milnor(x.mul(&y)?)),
        (Value::Stilde(x), Value::Stilde(y)) => Ok(Value::Stilde(star(&x, &y)?)),
        (Value::Mw(k), Value::Milnor(m)) | (Value::Milnor(m), Value::Mw(k)) => match as_integer(&k) {
            Some(n) => Ok(Value::Milnor(m.scale(&n))),
            None => Err(MwError::Input("Milnor symbols only take integer coefficients".into())),
        },
        (Value::Mw(g), Value::Stilde(s)) | (Value::Stilde(s), Value::Mw(g)) => match as_group_ring(&g) {
            Some(c) if c == GroupRingElem::integer(s.field, BigInt::one()) => Ok(Value::Stilde(s)),
            Some(c) => Ok(Value::Stilde(s.act(&c)?)),
            None => Err(MwError::Input("S~ elements take coefficients in Z[F^x] only".into())),
        },
        (a, b) => Err(mismatch(&a, &b, "multiply")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use mwkit::mwk::mwk_normalize;

    #[test]
    fn h_is_hyperbolic() {
        let f = FieldSpec::Q;
        let Value::Mw(h) = eval(&parse("eta*[-1] + 2", f).unwrap()).unwrap() else { panic!() };
        assert_eq!(mwk_normalize(&h).unwrap(), mwk_normalize(&MWExpr::h(f)).unwrap());
    }

    #[test]
    fn coefficients_act_on_symbols() {
        let f = FieldSpec::Fp(7);
        let Value::Stilde(s) = eval(&parse("<3>[[1,2]] - 2[[1,2]]", f).unwrap()).unwrap() else { panic!() };
        assert_eq!(s.len(), 1);
        assert!(eval(&parse("[2][[1,2]]", f).unwrap()).is_err());
    }
}
