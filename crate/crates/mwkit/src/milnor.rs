//! Milnor K-theory of F_p and Q with normal forms.
//!
//! K_0 = Z and K_1 = F×. Over F_p every K_n with n ≥ 2 vanishes. Over Q,
//! K_2 is modeled as Z/2 ⊕ ⊕_{p odd} F_p× through the dyadic Hilbert symbol
//! and the tame symbols, and K_n for n ≥ 3 is Z/2, detected at the real
//! place.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{MwError, Result};
use crate::groupring::{legendre, mod_inv, mul_mod, pow_mod, FieldSpec, QUnit, UnitRep};
use crate::quadform::{hilbert_symbol, pfister, smallest_nonsquare, GWClass, Place, WittClass};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MilnorData {
    Int(BigInt),
    Unit(UnitRep),
    Zero,
    /// Dyadic bit and nontrivial tame residues at odd primes.
    K2Q { dyadic: bool, tame: BTreeMap<u64, u64> },
    Bit(bool),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MilnorClass {
    pub field: FieldSpec,
    pub degree: u32,
    pub data: MilnorData,
}

/// A symbol {a_1,…,a_n} with an integer multiplicity.
pub type SymbolTerm = (BigInt, Vec<UnitRep>);

/// The tame symbol ∂_p{a,b} = (−1)^{v(a)v(b)} b^{v(a)} / a^{v(b)} mod p.
fn tame2(a: &QUnit, b: &QUnit, p: u64) -> u64 {
    let (va, vb) = (a.valuation(p), b.valuation(p));
    let pw = |r: u64, e: i64| if e >= 0 { pow_mod(r, e as u64, p) } else { pow_mod(mod_inv(r, p), e.unsigned_abs(), p) };
    // Unit parts carry everything except powers of p, which cancel in the ratio.
    let num = pw(b.unit_part_mod(p), va);
    let den = pw(a.unit_part_mod(p), vb);
    let mut t = mul_mod(num, mod_inv(den, p), p);
    if (va * vb).rem_euclid(2) == 1 {
        t = p - t;
    }
    t
}

impl MilnorClass {
    pub fn zero(field: FieldSpec, degree: u32) -> Self {
        let data = match (field, degree) {
            (_, 0) => MilnorData::Int(BigInt::zero()),
            (_, 1) => MilnorData::Unit(field.one()),
            (FieldSpec::Fp(_), _) => MilnorData::Zero,
            (FieldSpec::Q, 2) => MilnorData::K2Q { dyadic: false, tame: BTreeMap::new() },
            (FieldSpec::Q, _) => MilnorData::Bit(false),
        };
        MilnorClass { field, degree, data }
    }

    pub fn integer(field: FieldSpec, k: impl Into<BigInt>) -> Self {
        MilnorClass { field, degree: 0, data: MilnorData::Int(k.into()) }
    }

    /// The class of a single symbol {a_1,…,a_n}.
    pub fn symbol(field: FieldSpec, entries: &[UnitRep]) -> Result<Self> {
        for e in entries {
            field.check(e)?;
        }
        let degree = entries.len() as u32;
        let data = match (field, degree) {
            (_, 0) => MilnorData::Int(BigInt::one()),
            (_, 1) => MilnorData::Unit(entries[0].clone()),
            (FieldSpec::Fp(_), _) => MilnorData::Zero,
            (FieldSpec::Q, 2) => {
                let (a, b) = (entries[0].as_q().unwrap(), entries[1].as_q().unwrap());
                let dyadic = hilbert_symbol(&entries[0], &entries[1], Place::Prime(2))? == -1;
                let primes: BTreeSet<u64> = a.primes().chain(b.primes()).filter(|p| *p != 2).collect();
                let tame = primes.into_iter().map(|p| (p, tame2(a, b, p))).filter(|(_, t)| *t != 1).collect();
                MilnorData::K2Q { dyadic, tame }
            }
            (FieldSpec::Q, _) => MilnorData::Bit(entries.iter().all(|e| e.is_negative_real())),
        };
        Ok(MilnorClass { field, degree, data })
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero(self.field, self.degree)
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if self.field != o.field {
            return Err(MwError::FieldMismatch(self.field.to_string(), o.field.to_string()));
        }
        if self.degree != o.degree {
            return Err(MwError::Degree(format!("cannot add degrees {} and {}", self.degree, o.degree)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let data = match (&self.data, &o.data) {
            (MilnorData::Int(a), MilnorData::Int(b)) => MilnorData::Int(a + b),
            (MilnorData::Unit(a), MilnorData::Unit(b)) => MilnorData::Unit(self.field.mul(a, b)),
            (MilnorData::Zero, MilnorData::Zero) => MilnorData::Zero,
            (MilnorData::K2Q { dyadic: d1, tame: t1 }, MilnorData::K2Q { dyadic: d2, tame: t2 }) => {
                let mut tame = t1.clone();
                for (p, r) in t2 {
                    let v = mul_mod(tame.get(p).copied().unwrap_or(1), *r, *p);
                    if v == 1 {
                        tame.remove(p);
                    } else {
                        tame.insert(*p, v);
                    }
                }
                MilnorData::K2Q { dyadic: d1 ^ d2, tame }
            }
            (MilnorData::Bit(a), MilnorData::Bit(b)) => MilnorData::Bit(a ^ b),
            _ => unreachable!("same field and degree give the same model"),
        };
        Ok(MilnorClass { field: self.field, degree: self.degree, data })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let odd = k.is_odd();
        let data = match &self.data {
            MilnorData::Int(a) => MilnorData::Int(a * k),
            MilnorData::Unit(a) => {
                let e = match self.field {
                    FieldSpec::Fp(p) => k.mod_floor(&BigInt::from(p - 1)).to_i64().unwrap(),
                    FieldSpec::Q => k.to_i64().expect("small multiplicity"),
                };
                MilnorData::Unit(self.field.pow(a, e))
            }
            MilnorData::Zero => MilnorData::Zero,
            MilnorData::K2Q { dyadic, tame } => {
                let tame = tame
                    .iter()
                    .map(|(p, r)| (*p, pow_mod(*r, k.mod_floor(&BigInt::from(p - 1)).to_u64().unwrap(), *p)))
                    .filter(|(_, r)| *r != 1)
                    .collect();
                MilnorData::K2Q { dyadic: dyadic & odd, tame }
            }
            MilnorData::Bit(b) => MilnorData::Bit(b & odd),
        };
        MilnorClass { field: self.field, degree: self.degree, data }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    /// A decomposition into symbols whose sum is this class.
    pub fn symbols(&self) -> Vec<SymbolTerm> {
        let f = self.field;
        match &self.data {
            MilnorData::Int(k) => {
                if k.is_zero() {
                    vec![]
                } else {
                    vec![(k.clone(), vec![])]
                }
            }
            MilnorData::Unit(a) => {
                if a.is_one() {
                    vec![]
                } else {
                    vec![(BigInt::one(), vec![a.clone()])]
                }
            }
            MilnorData::Zero => vec![],
            MilnorData::Bit(b) => {
                if *b {
                    vec![(BigInt::one(), vec![f.minus_one(); self.degree as usize])]
                } else {
                    vec![]
                }
            }
            MilnorData::K2Q { .. } => {
                // Largest prime first: {p, u} only disturbs tame symbols at primes dividing u < p.
                let mut out: Vec<SymbolTerm> = Vec::new();
                let mut cur = Self::zero(f, 2);
                loop {
                    let (MilnorData::K2Q { tame: want, .. }, MilnorData::K2Q { tame: have, .. }) = (&self.data, &cur.data) else {
                        unreachable!()
                    };
                    let primes: BTreeSet<u64> = want.keys().chain(have.keys()).copied().collect();
                    let Some(p) = primes.into_iter().rev().find(|p| want.get(p) != have.get(p)) else { break };
                    let w = want.get(&p).copied().unwrap_or(1);
                    let h = have.get(&p).copied().unwrap_or(1);
                    let r = mul_mod(w, mod_inv(h, p), p);
                    let lift = if r > p / 2 { r as i64 - p as i64 } else { r as i64 };
                    let sym = vec![f.unit(p as i64).unwrap(), f.unit(lift).unwrap()];
                    cur = cur.add(&Self::symbol(f, &sym).unwrap()).unwrap();
                    out.push((BigInt::one(), sym));
                }
                if cur != *self {
                    let sym = vec![f.minus_one(), f.minus_one()];
                    cur = cur.add(&Self::symbol(f, &sym).unwrap()).unwrap();
                    out.push((BigInt::one(), sym));
                }
                debug_assert_eq!(cur, *self);
                out
            }
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.field != o.field {
            return Err(MwError::FieldMismatch(self.field.to_string(), o.field.to_string()));
        }
        let degree = self.degree + o.degree;
        let mut acc = Self::zero(self.field, degree);
        for (c, xs) in self.symbols() {
            for (d, ys) in o.symbols() {
                let mut e = xs.clone();
                e.extend(ys.iter().cloned());
                acc = acc.add(&Self::symbol(self.field, &e)?.scale(&(&c * &d)))?;
            }
        }
        Ok(acc)
    }

    /// Tame symbol at an odd prime, as a class of K^M_{n−1}(F_p).
    pub fn tame(&self, p: u64) -> Result<MilnorClass> {
        let fp = FieldSpec::fp(p)?;
        if self.field != FieldSpec::Q {
            return Err(MwError::Unsupported("tame symbols are defined over Q".into()));
        }
        if self.degree == 0 {
            return Err(MwError::Degree("tame symbol needs degree at least 1".into()));
        }
        let data = match &self.data {
            MilnorData::Unit(a) => MilnorData::Int(BigInt::from(a.as_q().unwrap().valuation(p))),
            MilnorData::K2Q { tame, .. } => MilnorData::Unit(UnitRep::Fp(tame.get(&p).copied().unwrap_or(1))),
            _ => MilnorData::Zero,
        };
        Ok(MilnorClass { field: fp, degree: self.degree - 1, data })
    }

    pub fn to_json(&self) -> Value {
        let data = match &self.data {
            MilnorData::Int(k) => json!({"integer": k.to_string()}),
            MilnorData::Unit(a) => json!({"unit": a.to_string()}),
            MilnorData::Zero => json!("zero"),
            MilnorData::K2Q { dyadic, tame } => {
                let t: serde_json::Map<String, Value> = tame.iter().map(|(p, r)| (p.to_string(), json!(r))).collect();
                json!({"dyadic": u8::from(*dyadic), "tame": t})
            }
            MilnorData::Bit(b) => json!({"bit": u8::from(*b)}),
        };
        json!({"field": self.field.to_string(), "degree": self.degree, "data": data})
    }
}

impl fmt::Display for MilnorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let syms = self.symbols();
        if syms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = syms
            .iter()
            .map(|(c, s)| {
                let body = s.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",");
                if s.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    format!("{{{body}}}")
                } else {
                    format!("{c}{{{body}}}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Normal form of an integer combination of symbols of a common degree.
pub fn milnor_normalize(field: FieldSpec, degree: u32, terms: &[SymbolTerm]) -> Result<MilnorClass> {
    let mut acc = MilnorClass::zero(field, degree);
    for (c, s) in terms {
        if s.len() as u32 != degree {
            return Err(MwError::Degree(format!("symbol of degree {} in a degree {degree} sum", s.len())));
        }
        acc = acc.add(&MilnorClass::symbol(field, s)?.scale(c))?;
    }
    Ok(acc)
}

/// The tame symbol of a single symbol at an odd prime p.
pub fn tame_symbol(entries: &[UnitRep], p: u64) -> Result<MilnorClass> {
    if p == 2 {
        return Err(MwError::Unsupported("the tame symbol at 2 is not a residue map here".into()));
    }
    MilnorClass::symbol(FieldSpec::Q, entries)?.tame(p)
}

/// The Pfister class ⟨⟨a_1,…,a_n⟩⟩ summed over the mod-2 symbol
/// decomposition: a representative of the image in I^n/I^{n+1}.
pub fn mod2_to_in(c: &MilnorClass) -> Result<GWClass> {
    let f = c.field;
    let mut acc = GWClass::zero(f);
    for (k, s) in c.symbols() {
        if k.is_even() {
            continue;
        }
        let term = if s.is_empty() { GWClass::one(f) } else { pfister(f, &s)? };
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Data of the quotient k_n = K^M_n / 2, comparable across the
/// isomorphism with I^n / I^{n+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mod2Data {
    Parity(bool),
    SquareClass(UnitRep),
    /// Dyadic bit and the odd primes with nontrivial local invariant.
    Local { dyadic: bool, odd: BTreeSet<u64> },
    Bit(bool),
    Zero,
}

fn square_class(f: FieldSpec, a: &UnitRep) -> UnitRep {
    match (f, a) {
        (FieldSpec::Fp(p), UnitRep::Fp(r)) => UnitRep::Fp(if legendre(*r, p) == 1 { 1 } else { smallest_nonsquare(p) }),
        (_, UnitRep::Q(q)) => UnitRep::Q(q.square_class()),
        _ => unreachable!(),
    }
}

/// Reduction of a Milnor class modulo 2.
pub fn milnor_mod2(c: &MilnorClass) -> Mod2Data {
    match &c.data {
        MilnorData::Int(k) => Mod2Data::Parity(k.is_odd()),
        MilnorData::Unit(a) => Mod2Data::SquareClass(square_class(c.field, a)),
        MilnorData::Zero => Mod2Data::Zero,
        MilnorData::K2Q { dyadic, tame } => {
            Mod2Data::Local { dyadic: *dyadic, odd: tame.iter().filter(|(p, r)| legendre(**r, **p) == -1).map(|(p, _)| *p).collect() }
        }
        MilnorData::Bit(b) => Mod2Data::Bit(*b),
    }
}

/// The class of w ∈ I^n in I^n / I^{n+1}, in the same coordinates.
pub fn in_to_mod2(w: &WittClass, n: u32) -> Result<Mod2Data> {
    if !w.in_fundamental_power(n as i64)? {
        return Err(MwError::Degree(format!("class is not in I^{n}")));
    }
    Ok(match (w, n) {
        (_, 0) => Mod2Data::Parity(w.parity_odd()),
        (WittClass::Fp { p, class }, 1) => Mod2Data::SquareClass(UnitRep::Fp(if class.disc_nonsquare { smallest_nonsquare(*p) } else { 1 })),
        (WittClass::Q(q), 1) => Mod2Data::SquareClass(UnitRep::Q(q.dyadic.signed_disc.clone())),
        (WittClass::Fp { .. }, _) => Mod2Data::Zero,
        (WittClass::Q(q), 2) => {
            let odd = w
                .relevant_places()
                .into_iter()
                .filter_map(|v| match v {
                    Place::Prime(p) if p != 2 && w.clifford(v) == -1 => Some(p),
                    _ => None,
                })
                .collect();
            Mod2Data::Local { dyadic: q.dyadic.witt_invariant == -1, odd }
        }
        (WittClass::Q(q), _) => Mod2Data::Bit((q.signature >> n).rem_euclid(2) == 1),
    })
}
