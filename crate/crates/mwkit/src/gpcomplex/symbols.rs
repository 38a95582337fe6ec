//! Z[F×]-combinations of generator symbols [[a_1,…,a_n]], the relation
//! instances that present S̃(F^n), and the maps D_n and T_n.
//!
//! The same type doubles as the free module on the formal symbols
//! ⟨a_1,…,a_n⟩-f; concatenation makes it the free tensor algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{MwError, Result};
use crate::groupring::{FieldSpec, GroupRingElem, UnitRep};
use crate::mwk::{mwk_normalize, Letter, MWClass, MWExpr};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolElem {
    pub field: FieldSpec,
    pub n: usize,
    terms: BTreeMap<Vec<UnitRep>, GroupRingElem>,
}

impl SymbolElem {
    pub fn zero(field: FieldSpec, n: usize) -> Self {
        SymbolElem { field, n, terms: BTreeMap::new() }
    }

    /// The generator [[a_1,…,a_n]].
    pub fn gen(field: FieldSpec, a: &[UnitRep]) -> Result<Self> {
        for x in a {
            field.check(x)?;
        }
        let mut s = Self::zero(field, a.len());
        s.terms.insert(a.to_vec(), GroupRingElem::one(field));
        Ok(s)
    }

    /// c · [[a]].
    pub fn term(field: FieldSpec, c: GroupRingElem, a: &[UnitRep]) -> Result<Self> {
        let mut s = Self::zero(field, a.len());
        s.add_term(a.to_vec(), &c)?;
        Ok(s)
    }

    /// [[a]] for small integer entries.
    pub fn gen_ints(field: FieldSpec, a: &[i64]) -> Result<Self> {
        let u: Vec<UnitRep> = a.iter().map(|x| field.unit(*x)).collect::<Result<_>>()?;
        Self::gen(field, &u)
    }

    pub fn add_term(&mut self, a: Vec<UnitRep>, c: &GroupRingElem) -> Result<()> {
        if a.len() != self.n {
            return Err(MwError::Degree(format!("symbol of length {} in degree {}", a.len(), self.n)));
        }
        if c.is_zero() {
            return Ok(());
        }
        let e = self.terms.entry(a.clone()).or_insert_with(|| GroupRingElem::zero(self.field));
        *e = e.add(c)?;
        if e.is_zero() {
            self.terms.remove(&a);
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<UnitRep>, &GroupRingElem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Zero as a formal combination (not merely in S̃).
    pub fn is_formally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same(&self, o: &Self) -> Result<()> {
        if self.field != o.field {
            return Err(MwError::FieldMismatch(self.field.to_string(), o.field.to_string()));
        }
        if self.n != o.n {
            return Err(MwError::Degree(format!("degrees {} and {} differ", self.n, o.n)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let mut out = self.clone();
        for (a, c) in &o.terms {
            out.add_term(a.clone(), c)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        SymbolElem { field: self.field, n: self.n, terms: self.terms.iter().map(|(a, c)| (a.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    /// Left multiplication by a group ring element.
    pub fn act(&self, g: &GroupRingElem) -> Result<Self> {
        let mut out = Self::zero(self.field, self.n);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), &g.mul(c)?)?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        SymbolElem { field: self.field, n: self.n, terms: self.terms.iter().map(|(a, c)| (a.clone(), c.scale(k))).collect() }
    }

    /// Product in the free algebra: concatenation of symbols.
    pub fn concat(&self, o: &Self) -> Result<Self> {
        if self.field != o.field {
            return Err(MwError::FieldMismatch(self.field.to_string(), o.field.to_string()));
        }
        let mut out = Self::zero(self.field, self.n + o.n);
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                let mut ab = a.clone();
                ab.extend(b.iter().cloned());
                out.add_term(ab, &c.mul(d)?)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SymbolElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| {
                let body = a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                format!("({c})[[{body}]]")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn sign(k: usize) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn signed_unit(field: FieldSpec, k: usize, a: &UnitRep) -> UnitRep {
    if k % 2 == 0 {
        a.clone()
    } else {
        field.neg(a)
    }
}

/// w_i = (a_1(b_1−b_i), …, omitted i, …, a_n(b_n−b_i), b_i).
pub fn w_vector(field: FieldSpec, a: &[UnitRep], b: &[UnitRep], i: usize) -> Result<Vec<UnitRep>> {
    let mut w = Vec::with_capacity(a.len());
    for j in 0..a.len() {
        if j != i {
            let diff = field.sub(&b[j], &b[i])?.ok_or_else(|| MwError::Input("auxiliary constants must be distinct".into()))?;
            w.push(field.mul(&a[j], &diff));
        }
    }
    w.push(b[i].clone());
    Ok(w)
}

fn check_distinct(field: FieldSpec, b: &[UnitRep]) -> Result<()> {
    for x in b {
        field.check(x)?;
    }
    for i in 0..b.len() {
        for j in 0..i {
            if b[i] == b[j] {
                return Err(MwError::Input(format!("auxiliary constants {} repeat", b[i])));
            }
        }
    }
    Ok(())
}

/// The sum Σ_i (−1)^{n+i} ⟨(−1)^{n+i} a_i⟩ [[w_i]] (1-based i).
pub fn relation_rhs(field: FieldSpec, a: &[UnitRep], b: &[UnitRep]) -> Result<SymbolElem> {
    let n = a.len();
    let mut rhs = SymbolElem::zero(field, n);
    for i in 0..n {
        let k = n + i + 1;
        let c = GroupRingElem::basis(field, &signed_unit(field, k, &a[i])).scale(&sign(k));
        rhs.add_term(w_vector(field, a, b, i)?, &c)?;
    }
    Ok(rhs)
}

/// [[b·a]] − [[a]] minus the right-hand side; zero in S̃(F^n).
pub fn relation_instance(field: FieldSpec, a: &[UnitRep], b: &[UnitRep]) -> Result<SymbolElem> {
    if a.len() != b.len() || a.is_empty() {
        return Err(MwError::Dimension { expected: a.len(), got: b.len() });
    }
    check_distinct(field, b)?;
    let ba: Vec<UnitRep> = a.iter().zip(b).map(|(x, y)| field.mul(x, y)).collect();
    let lhs = SymbolElem::gen(field, &ba)?.sub(&SymbolElem::gen(field, a)?)?;
    lhs.sub(&relation_rhs(field, a, b)?)
}

/// The default auxiliary constants b_i = i.
pub fn default_b(field: FieldSpec, n: usize) -> Result<Vec<UnitRep>> {
    if let Some(p) = field.char_p() {
        if p as usize <= n {
            return Err(MwError::Sampling(format!("F_{p} has fewer than {n} distinct units")));
        }
    }
    (1..=n as i64).map(|i| field.unit(i)).collect()
}

/// D_n([[a]]) = Σ_i (−1)^{i+1} ⟨(−1)^{n−i} a_i⟩ + (−1)^n ⟨1⟩, extended Z[F×]-linearly.
pub fn d_map(x: &SymbolElem) -> Result<GroupRingElem> {
    let f = x.field;
    let n = x.n;
    let mut out = GroupRingElem::zero(f);
    for (a, c) in x.terms() {
        let mut d = GroupRingElem::integer(f, sign(n));
        for (i, ai) in a.iter().enumerate() {
            d.add_term(signed_unit(f, n - i - 1, ai), sign(i));
        }
        out = out.add(&c.mul(&d)?)?;
    }
    Ok(out)
}

/// The word ⟨u⟩[a_1]⋯[a_n] for each group ring term of each symbol.
pub fn t_expr(x: &SymbolElem) -> MWExpr {
    let f = x.field;
    let mut e = MWExpr::zero(f);
    for (a, c) in x.terms() {
        for (u, k) in c.terms() {
            let mut word = Vec::with_capacity(a.len() + 1);
            if !u.is_one() {
                word.push(Letter::Angle(u.clone()));
            }
            word.extend(a.iter().map(|y| Letter::Bracket(y.clone())));
            e.terms.push((k.clone(), word));
        }
    }
    e
}

/// T_n: [[a_1,…,a_n]] ↦ [a_1]⋯[a_n] in K^MW_n(F).
pub fn t_map(x: &SymbolElem) -> Result<MWClass> {
    let e = t_expr(x);
    if e.terms.is_empty() {
        return Ok(MWClass::zero(x.field, x.n as i64));
    }
    mwk_normalize(&e)
}

/// Π_n: ⟨a_1,…,a_n⟩-f ↦ ⟨a_1⋯a_n⟩ xⁿ; returns the coefficient of xⁿ.
pub fn pi_map(x: &SymbolElem) -> Result<GroupRingElem> {
    let f = x.field;
    let mut out = GroupRingElem::zero(f);
    for (a, c) in x.terms() {
        let prod = a.iter().fold(f.one(), |acc, y| f.mul(&acc, y));
        out = out.add(&c.shift(&prod))?;
    }
    Ok(out)
}

/// E = [[−1, 1]].
pub fn e_elem(field: FieldSpec) -> SymbolElem {
    SymbolElem::gen(field, &[field.minus_one(), field.one()]).expect("units")
}

/// L(x) = ⟨−1⟩⟨1−x,1⟩-f − ⟨x⟩⟨1−1/x,1/x⟩-f + ⟨1,1⟩-f, for x ≠ 1.
pub fn l_elem(field: FieldSpec, x: &UnitRep) -> Result<SymbolElem> {
    let one = field.one();
    let xi = field.inv(x);
    let mut out = SymbolElem::term(field, GroupRingElem::basis(field, &field.minus_one()), &[field.one_minus(x)?, one.clone()])?;
    out = out.sub(&SymbolElem::term(field, GroupRingElem::basis(field, x), &[field.one_minus(&xi)?, xi])?)?;
    out.add(&SymbolElem::gen(field, &[one.clone(), one])?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7(k: i64) -> UnitRep {
        FieldSpec::Fp(7).unit(k).unwrap()
    }

    #[test]
    fn d_examples() {
        let f = FieldSpec::Fp(7);
        assert_eq!(d_map(&e_elem(f)).unwrap(), GroupRingElem::one(f));
        let a = f7(3);
        let d1 = d_map(&SymbolElem::gen(f, std::slice::from_ref(&a)).unwrap()).unwrap();
        assert_eq!(d1, GroupRingElem::pfister_gen(f, &a));
        let d2 = d_map(&SymbolElem::gen(f, &[f7(2), f7(5)]).unwrap()).unwrap();
        let want = GroupRingElem::from_terms(f, [(f7(5), BigInt::one()), (f7(5), -BigInt::one()), (f7(1), BigInt::one())]);
        assert_eq!(d2, want);
    }

    #[test]
    fn relations_vanish_under_d() {
        let f = FieldSpec::Fp(7);
        let units = f.units().unwrap();
        for a1 in &units {
            for a2 in &units {
                for b1 in &units {
                    for b2 in &units {
                        if b1 == b2 {
                            continue;
                        }
                        let r = relation_instance(f, &[a1.clone(), a2.clone()], &[b1.clone(), b2.clone()]).unwrap();
                        assert!(d_map(&r).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn t_of_e_vanishes() {
        let q = FieldSpec::Q;
        assert!(t_map(&e_elem(q)).unwrap().is_zero());
        let r = relation_instance(q, &[q.unit(3).unwrap(), q.unit(-5).unwrap()], &default_b(q, 2).unwrap()).unwrap();
        assert!(t_map(&r).unwrap().is_zero());
    }

    #[test]
    fn pi_of_odd_relation() {
        for f in [FieldSpec::Q, FieldSpec::Fp(7)] {
            for n in [3usize, 5] {
                let ones = vec![f.one(); n];
                let r = relation_instance(f, &ones, &default_b(f, n).unwrap()).unwrap();
                assert_eq!(pi_map(&r).unwrap(), GroupRingElem::integer(f, -1));
            }
        }
    }
}
