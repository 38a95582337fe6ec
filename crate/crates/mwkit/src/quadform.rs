//! Diagonal symmetric bilinear forms over F_p and Q, Hilbert symbols, and
//! canonical models of W(F), GW(F) and the powers I^n(F).
//!
//! W(F_p) is classified by dimension parity and signed discriminant. W(Q) is
//! classified by the signature together with the second residue maps
//! W(Q) → W(F_p) at every prime (W(F_2) = Z/2 counts entries of odd 2-adic
//! valuation). Classes additionally carry the dimension parity, the signed
//! discriminant and the Witt (Clifford) invariant at 2, which are functions
//! of the classifying data.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{MwError, Result};
use crate::groupring::{is_prime, legendre, mul_mod, FieldSpec, GroupRingElem, QUnit, UnitRep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Odd part of a rational unit modulo 8 (odd residues are self-inverse mod 8).
fn odd_part_mod8(u: &QUnit) -> u64 {
    let mut acc: u64 = 1;
    for (q, e) in &u.exps {
        if *q == 2 {
            continue;
        }
        if e % 2 != 0 {
            acc = acc * (q % 8) % 8;
        }
    }
    if u.negative {
        (8 - acc) % 8
    } else {
        acc
    }
}

fn eps(u: u64) -> u64 {
    ((u % 8) / 2) % 2 // (u-1)/2 mod 2 for odd u
}

fn omega(u: u64) -> u64 {
    match u % 8 {
        3 | 5 => 1,
        _ => 0,
    }
}

fn hilbert_q(a: &QUnit, b: &QUnit, place: Place) -> i8 {
    match place {
        Place::Infinity => {
            if a.negative && b.negative {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (al, be) = (a.valuation(2).rem_euclid(2) as u64, b.valuation(2).rem_euclid(2) as u64);
            let (u, v) = (odd_part_mod8(a), odd_part_mod8(b));
            let e = eps(u) * eps(v) + al * omega(v) + be * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (al, be) = (a.valuation(p), b.valuation(p));
            let u = a.unit_part_mod(p);
            let v = b.unit_part_mod(p);
            let mut s: i32 = 1;
            if (al * be).rem_euclid(2) == 1 && (p - 1) / 2 % 2 == 1 {
                s = -s;
            }
            if be.rem_euclid(2) == 1 {
                s *= legendre(u, p);
            }
            if al.rem_euclid(2) == 1 {
                s *= legendre(v, p);
            }
            s as i8
        }
    }
}

/// The Hilbert symbol (a, b)_v of two rational units.
pub fn hilbert_symbol(a: &UnitRep, b: &UnitRep, place: Place) -> Result<i8> {
    let (Some(x), Some(y)) = (a.as_q(), b.as_q()) else {
        return Err(MwError::Unsupported("Hilbert symbols are computed for rational units".into()));
    };
    if let Place::Prime(p) = place {
        if !is_prime(p) {
            return Err(MwError::Input(format!("{p} is not a place of Q")));
        }
    }
    Ok(hilbert_q(x, y, place))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagForm {
    pub field: FieldSpec,
    pub entries: Vec<UnitRep>,
}

impl DiagForm {
    pub fn new(field: FieldSpec, entries: Vec<UnitRep>) -> Result<Self> {
        for e in &entries {
            field.check(e)?;
        }
        Ok(DiagForm { field, entries })
    }

    pub fn from_ints(field: FieldSpec, entries: &[i64]) -> Result<Self> {
        let es = entries.iter().map(|e| field.unit(*e)).collect::<Result<Vec<_>>>()?;
        Ok(DiagForm { field, entries: es })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn orthogonal_sum(&self, o: &DiagForm) -> DiagForm {
        let mut entries = self.entries.clone();
        entries.extend(o.entries.iter().cloned());
        DiagForm { field: self.field, entries }
    }

    pub fn tensor(&self, o: &DiagForm) -> DiagForm {
        let mut entries = Vec::with_capacity(self.entries.len() * o.entries.len());
        for a in &self.entries {
            for b in &o.entries {
                entries.push(self.field.mul(a, b));
            }
        }
        DiagForm { field: self.field, entries }
    }

    pub fn negate(&self) -> DiagForm {
        DiagForm { field: self.field, entries: self.entries.iter().map(|a| self.field.neg(a)).collect() }
    }

    fn q_entries(&self) -> Vec<&QUnit> {
        self.entries.iter().map(|e| e.as_q().expect("rational entries")).collect()
    }
}

impl fmt::Display for DiagForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

/// Classical invariants of a diagonal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormInvariants {
    pub rank: usize,
    /// Square class of the product of the entries.
    pub disc: UnitRep,
    pub signature: Option<i64>,
    /// Hasse symbols ∏_{i<j} (a_i, a_j)_v at ∞, 2 and the odd primes in the support.
    pub hasse: BTreeMap<Place, i8>,
}

impl FormInvariants {
    pub fn to_json(&self) -> Value {
        let hasse: serde_json::Map<String, Value> = self.hasse.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        json!({
            "rank": self.rank,
            "disc": self.disc.to_string(),
            "signature": self.signature,
            "hasse": hasse,
        })
    }
}

fn fp_square_class(p: u64, r: u64) -> u64 {
    if legendre(r, p) == 1 {
        1
    } else {
        smallest_nonsquare(p)
    }
}

pub fn smallest_nonsquare(p: u64) -> u64 {
    (2..p).find(|a| legendre(*a, p) == -1).expect("odd primes have nonsquares")
}

fn support_places(entries: &[&QUnit]) -> BTreeSet<Place> {
    let mut s: BTreeSet<Place> = [Place::Infinity, Place::Prime(2)].into_iter().collect();
    for e in entries {
        for p in e.primes() {
            s.insert(Place::Prime(p));
        }
    }
    s
}

fn hasse_q(entries: &[&QUnit], place: Place) -> (i8, QUnit) {
    let mut s = 1i8;
    let mut d = QUnit::one();
    for a in entries {
        s *= hilbert_q(&d, a, place);
        d = d.mul(a).square_class();
    }
    (s, d)
}

/// Witt invariant c_v from the Hasse invariant, dimension and determinant.
fn clifford_q(entries: &[&QUnit], place: Place) -> i8 {
    let (s, d) = hasse_q(entries, place);
    let m1 = QUnit { negative: true, exps: BTreeMap::new() };
    let neg_d = d.mul(&m1);
    match entries.len() % 8 {
        1 | 2 => s,
        3 | 4 => s * hilbert_q(&m1, &neg_d, place),
        5 | 6 => s * hilbert_q(&m1, &m1, place),
        _ => s * hilbert_q(&m1, &d, place),
    }
}

pub fn form_invariants(f: &DiagForm) -> FormInvariants {
    let rank = f.rank();
    let mut disc = f.field.one();
    for e in &f.entries {
        disc = f.field.mul(&disc, e);
    }
    match f.field {
        FieldSpec::Fp(p) => {
            let r = disc.residue().unwrap();
            FormInvariants { rank, disc: UnitRep::Fp(fp_square_class(p, r)), signature: None, hasse: BTreeMap::new() }
        }
        FieldSpec::Q => {
            let es = f.q_entries();
            let sig = es.iter().map(|e| if e.negative { -1 } else { 1 }).sum();
            let hasse = support_places(&es).into_iter().map(|v| (v, hasse_q(&es, v).0)).collect();
            let disc = UnitRep::Q(disc.as_q().unwrap().square_class());
            FormInvariants { rank, disc, signature: Some(sig), hasse }
        }
    }
}

/// A class of W(F_p): dimension parity and signed discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WittFp {
    pub odd: bool,
    pub disc_nonsquare: bool,
}

impl WittFp {
    pub const ZERO: WittFp = WittFp { odd: false, disc_nonsquare: false };

    pub fn of_residues(p: u64, rs: &[u64]) -> WittFp {
        let n = rs.len() as u64;
        let mut d = if (n * n.saturating_sub(1) / 2) % 2 == 1 { p - 1 } else { 1 };
        for r in rs {
            d = mul_mod(d, *r, p);
        }
        WittFp { odd: n % 2 == 1, disc_nonsquare: legendre(d, p) == -1 }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    /// Minimal diagonal representative as residues.
    pub fn representative(&self, p: u64) -> Vec<u64> {
        let e = smallest_nonsquare(p);
        match (self.odd, self.disc_nonsquare) {
            (false, false) => vec![],
            (true, false) => vec![1],
            (true, true) => vec![e],
            (false, true) => vec![1, p - e],
        }
    }

    pub fn add(&self, o: &WittFp, p: u64) -> WittFp {
        let mut rs = self.representative(p);
        rs.extend(o.representative(p));
        Self::of_residues(p, &rs)
    }

    pub fn neg(&self, p: u64) -> WittFp {
        let rs: Vec<u64> = self.representative(p).iter().map(|r| p - r).collect();
        Self::of_residues(p, &rs)
    }

    pub fn mul(&self, o: &WittFp, p: u64) -> WittFp {
        let (a, b) = (self.representative(p), o.representative(p));
        let rs: Vec<u64> = a.iter().flat_map(|x| b.iter().map(move |y| mul_mod(*x, *y, p))).collect();
        Self::of_residues(p, &rs)
    }

    fn to_json(self) -> Value {
        json!({"parity": u8::from(self.odd), "disc_nonsquare": self.disc_nonsquare})
    }
}

/// Data at the prime 2 together with the global parity and discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicData {
    pub odd: bool,
    /// Square class of (−1)^{n(n−1)/2} ∏ a_i.
    pub signed_disc: QUnit,
    /// Witt invariant c_2 ∈ {±1}.
    pub witt_invariant: i8,
    /// Second residue in W(F_2) = Z/2.
    pub residue: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WittQ {
    pub signature: i64,
    /// Nonzero second residues at odd primes.
    pub residues: BTreeMap<u64, WittFp>,
    pub dyadic: DyadicData,
}

fn witt_q_of(entries: &[&QUnit]) -> WittQ {
    let n = entries.len() as u64;
    let signature = entries.iter().map(|e| if e.negative { -1i64 } else { 1 }).sum();
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    let mut res2 = false;
    for e in entries {
        for (p, k) in &e.exps {
            if k % 2 == 0 {
                continue;
            }
            if *p == 2 {
                res2 = !res2;
            } else {
                by_prime.entry(*p).or_default().push(e.unit_part_mod(*p));
            }
        }
    }
    let residues = by_prime
        .into_iter()
        .map(|(p, rs)| (p, WittFp::of_residues(p, &rs)))
        .filter(|(_, w)| !w.is_zero())
        .collect();
    let mut d = if (n * n.saturating_sub(1) / 2) % 2 == 1 {
        QUnit { negative: true, exps: BTreeMap::new() }
    } else {
        QUnit::one()
    };
    for e in entries {
        d = d.mul(e).square_class();
    }
    WittQ {
        signature,
        residues,
        dyadic: DyadicData { odd: n % 2 == 1, signed_disc: d, witt_invariant: clifford_q(entries, Place::Prime(2)), residue: res2 },
    }
}

/// Lift of a residue to (−p/2, p/2).
fn centered_lift(r: u64, p: u64) -> i64 {
    if r > p / 2 {
        r as i64 - p as i64
    } else {
        r as i64
    }
}

impl WittQ {
    /// A diagonal representative built prime by prime, largest prime first.
    pub fn representative(&self) -> Vec<QUnit> {
        let mut form: Vec<QUnit> = Vec::new();
        loop {
            let refs: Vec<&QUnit> = form.iter().collect();
            let cur = witt_q_of(&refs);
            let primes: BTreeSet<u64> = cur.residues.keys().chain(self.residues.keys()).copied().collect();
            let target = primes.into_iter().rev().find(|p| cur.residues.get(p) != self.residues.get(p));
            let Some(p) = target else { break };
            let want = self.residues.get(&p).copied().unwrap_or(WittFp::ZERO);
            let have = cur.residues.get(&p).copied().unwrap_or(WittFp::ZERO);
            let diff = want.add(&have.neg(p), p);
            for r in diff.representative(p) {
                let lift = centered_lift(r, p) * p as i64;
                form.push(QUnit::from_integer(&BigInt::from(lift)).expect("small lift"));
            }
        }
        let refs: Vec<&QUnit> = form.iter().collect();
        if witt_q_of(&refs).dyadic.residue != self.dyadic.residue {
            form.push(QUnit::from_integer(&BigInt::from(2)).unwrap());
        }
        let refs: Vec<&QUnit> = form.iter().collect();
        let gap = self.signature - witt_q_of(&refs).signature;
        let unit = QUnit { negative: gap < 0, exps: BTreeMap::new() };
        for _ in 0..gap.unsigned_abs() {
            form.push(unit.clone());
        }
        form
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WittClass {
    Fp { p: u64, class: WittFp },
    Q(WittQ),
}

pub fn witt_class(f: &DiagForm) -> WittClass {
    match f.field {
        FieldSpec::Fp(p) => {
            let rs: Vec<u64> = f.entries.iter().map(|e| e.residue().unwrap()).collect();
            WittClass::Fp { p, class: WittFp::of_residues(p, &rs) }
        }
        FieldSpec::Q => WittClass::Q(witt_q_of(&f.q_entries())),
    }
}

impl WittClass {
    pub fn zero(field: FieldSpec) -> Self {
        witt_class(&DiagForm { field, entries: vec![] })
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::basis(field, &field.one())
    }

    pub fn basis(field: FieldSpec, a: &UnitRep) -> Self {
        witt_class(&DiagForm { field, entries: vec![a.clone()] })
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            WittClass::Fp { p, .. } => FieldSpec::Fp(*p),
            WittClass::Q(_) => FieldSpec::Q,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero(self.field())
    }

    pub fn parity_odd(&self) -> bool {
        match self {
            WittClass::Fp { class, .. } => class.odd,
            WittClass::Q(w) => w.dyadic.odd,
        }
    }

    pub fn signature(&self) -> Option<i64> {
        match self {
            WittClass::Q(w) => Some(w.signature),
            WittClass::Fp { .. } => None,
        }
    }

    /// A diagonal form in this class.
    pub fn representative(&self) -> DiagForm {
        match self {
            WittClass::Fp { p, class } => {
                DiagForm { field: FieldSpec::Fp(*p), entries: class.representative(*p).into_iter().map(UnitRep::Fp).collect() }
            }
            WittClass::Q(w) => DiagForm { field: FieldSpec::Q, entries: w.representative().into_iter().map(UnitRep::Q).collect() },
        }
    }

    fn same_field(&self, o: &Self) -> Result<()> {
        if self.field() != o.field() {
            return Err(MwError::FieldMismatch(self.field().to_string(), o.field().to_string()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_field(o)?;
        if let (WittClass::Fp { p, class: a }, WittClass::Fp { class: b, .. }) = (self, o) {
            return Ok(WittClass::Fp { p: *p, class: a.add(b, *p) });
        }
        Ok(witt_class(&self.representative().orthogonal_sum(&o.representative())))
    }

    pub fn neg(&self) -> Self {
        witt_class(&self.representative().negate())
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_field(o)?;
        if let (WittClass::Fp { p, class: a }, WittClass::Fp { class: b, .. }) = (self, o) {
            return Ok(WittClass::Fp { p: *p, class: a.mul(b, *p) });
        }
        Ok(witt_class(&self.representative().tensor(&o.representative())))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut base = if k.is_negative() { self.neg() } else { self.clone() };
        let mut e = k.abs();
        if let WittClass::Fp { .. } = self {
            // W(F_p) has exponent dividing 4.
            e %= 4;
        }
        let mut acc = Self::zero(self.field());
        let two = BigInt::from(2);
        while !e.is_zero() {
            if (&e % &two).is_one() {
                acc = acc.add(&base).unwrap();
            }
            e /= &two;
            if !e.is_zero() {
                base = base.add(&base).unwrap();
            }
        }
        acc
    }

    /// Image of a group ring element under ⟨a⟩ ↦ class of ⟨a⟩.
    pub fn from_group_ring(x: &GroupRingElem) -> Self {
        let mut acc = Self::zero(x.field);
        for (u, c) in x.terms() {
            acc = acc.add(&Self::basis(x.field, u).scale(c)).unwrap();
        }
        acc
    }

    /// Witt invariant c_v at a place of Q; always 1 over F_p.
    pub fn clifford(&self, place: Place) -> i8 {
        match self {
            WittClass::Fp { .. } => 1,
            WittClass::Q(w) => {
                if place == Place::Prime(2) {
                    return w.dyadic.witt_invariant;
                }
                let rep = w.representative();
                let refs: Vec<&QUnit> = rep.iter().collect();
                clifford_q(&refs, place)
            }
        }
    }

    /// Places where the Witt invariant may be nontrivial.
    pub fn relevant_places(&self) -> Vec<Place> {
        match self {
            WittClass::Fp { .. } => vec![],
            WittClass::Q(w) => {
                let rep = w.representative();
                let refs: Vec<&QUnit> = rep.iter().collect();
                support_places(&refs).into_iter().collect()
            }
        }
    }

    /// Membership in I^n. Over Q: parity for n = 1, trivial signed
    /// discriminant for n = 2, trivial Witt invariants everywhere and
    /// signature divisible by 2^n for n ≥ 3.
    pub fn in_fundamental_power(&self, n: i64) -> Result<bool> {
        if n < 0 {
            return Err(MwError::Input(format!("negative power {n}")));
        }
        if n == 0 {
            return Ok(true);
        }
        if self.parity_odd() {
            return Ok(false);
        }
        if n == 1 {
            return Ok(true);
        }
        match self {
            WittClass::Fp { class, .. } => Ok(class.is_zero()),
            WittClass::Q(w) => {
                if !w.dyadic.signed_disc.is_square() {
                    return Ok(false);
                }
                if n == 2 {
                    return Ok(true);
                }
                if self.relevant_places().into_iter().any(|v| self.clifford(v) != 1) {
                    return Ok(false);
                }
                Ok(if n >= 63 { w.signature == 0 } else { w.signature % (1i64 << n) == 0 })
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            WittClass::Fp { p, class } => json!({"field": format!("Fp:{p}"), "class": class.to_json()}),
            WittClass::Q(w) => {
                let res: serde_json::Map<String, Value> = w.residues.iter().map(|(p, c)| (p.to_string(), c.to_json())).collect();
                json!({
                    "field": "Q",
                    "signature": w.signature,
                    "residues": res,
                    "dyadic": {
                        "parity": u8::from(w.dyadic.odd),
                        "signed_disc": w.dyadic.signed_disc.to_string(),
                        "witt_invariant": w.dyadic.witt_invariant,
                        "residue": u8::from(w.dyadic.residue),
                    }
                })
            }
        }
    }
}

impl fmt::Display for WittClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative())
    }
}

/// A class of GW(F): rank and Witt class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GWClass {
    pub rank: i64,
    pub witt: WittClass,
}

impl GWClass {
    pub fn new(rank: i64, witt: WittClass) -> Result<Self> {
        if (rank.rem_euclid(2) == 1) != witt.parity_odd() {
            return Err(MwError::Input(format!("rank {rank} has the wrong parity for {witt}")));
        }
        Ok(GWClass { rank, witt })
    }

    pub fn from_form(f: &DiagForm) -> Self {
        GWClass { rank: f.rank() as i64, witt: witt_class(f) }
    }

    pub fn zero(field: FieldSpec) -> Self {
        GWClass { rank: 0, witt: WittClass::zero(field) }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::basis(field, &field.one())
    }

    pub fn basis(field: FieldSpec, a: &UnitRep) -> Self {
        GWClass { rank: 1, witt: WittClass::basis(field, a) }
    }

    pub fn integer(field: FieldSpec, k: i64) -> Self {
        Self::one(field).scale(&BigInt::from(k))
    }

    /// h = ⟨1⟩ + ⟨−1⟩.
    pub fn hyperbolic(field: FieldSpec) -> Self {
        Self::from_form(&DiagForm { field, entries: vec![field.one(), field.minus_one()] })
    }

    pub fn pfister_gen(field: FieldSpec, a: &UnitRep) -> Self {
        Self::basis(field, a).sub(&Self::one(field)).unwrap()
    }

    pub fn from_group_ring(x: &GroupRingElem) -> Self {
        let rank = x.augment().to_i64().expect("rank fits in i64");
        GWClass { rank, witt: WittClass::from_group_ring(x) }
    }

    pub fn field(&self) -> FieldSpec {
        self.witt.field()
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.witt.is_zero()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(GWClass { rank: self.rank + o.rank, witt: self.witt.add(&o.witt)? })
    }

    pub fn neg(&self) -> Self {
        GWClass { rank: -self.rank, witt: self.witt.neg() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        Ok(GWClass { rank: self.rank * o.rank, witt: self.witt.mul(&o.witt)? })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        GWClass { rank: self.rank * k.to_i64().expect("small scalar"), witt: self.witt.scale(k) }
    }

    /// Membership in I^n ⊂ GW(F): rank zero (for n ≥ 1) and Witt part in I^n.
    pub fn in_fundamental_power(&self, n: i64) -> Result<bool> {
        if n < 0 {
            return Err(MwError::Input(format!("negative power {n}")));
        }
        if n == 0 {
            return Ok(true);
        }
        Ok(self.rank == 0 && self.witt.in_fundamental_power(n)?)
    }

    pub fn to_json(&self) -> Value {
        json!({"rank": self.rank, "witt": self.witt.to_json()})
    }
}

impl fmt::Display for GWClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rep = self.witt.representative();
        let extra = (self.rank - rep.rank() as i64) / 2;
        write!(f, "{rep}")?;
        if extra != 0 {
            write!(f, " {} {}h", if extra < 0 { "-" } else { "+" }, extra.abs())?;
        }
        Ok(())
    }
}

/// The Pfister form ⟨⟨a_1,…,a_n⟩⟩ = ∏ (⟨a_i⟩ − 1) in GW(F).
pub fn pfister(field: FieldSpec, entries: &[UnitRep]) -> Result<GWClass> {
    let mut acc = GWClass::one(field);
    for a in entries {
        field.check(a)?;
        acc = acc.mul(&GWClass::pfister_gen(field, a))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> UnitRep {
        FieldSpec::Q.unit(n).unwrap()
    }

    #[test]
    fn invariants_examples() {
        let inv = form_invariants(&DiagForm::from_ints(FieldSpec::Q, &[1, 1, -2]).unwrap());
        assert_eq!(inv.rank, 3);
        assert_eq!(inv.disc, q(-2));
        assert_eq!(inv.signature, Some(1));
        let inv = form_invariants(&DiagForm::from_ints(FieldSpec::Fp(3), &[1, 1]).unwrap());
        assert_eq!(inv.disc, UnitRep::Fp(1));
        let inv = form_invariants(&DiagForm::from_ints(FieldSpec::Q, &[-1, -1]).unwrap());
        assert_eq!(inv.hasse[&Place::Infinity], -1);
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::Infinity).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(2), &q(3), Place::Prime(3)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::Prime(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(2), &q(3), Place::Prime(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(2), &q(5), Place::Prime(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(2), &q(7), Place::Prime(2)).unwrap(), 1);
        assert!(hilbert_symbol(&q(2), &q(3), Place::Prime(9)).is_err());
    }

    #[test]
    fn witt_class_examples() {
        for f in [FieldSpec::Q, FieldSpec::Fp(3), FieldSpec::Fp(7)] {
            assert!(witt_class(&DiagForm::from_ints(f, &[1, -1]).unwrap()).is_zero());
        }
        let w = witt_class(&DiagForm::from_ints(FieldSpec::Fp(3), &[1, 1]).unwrap());
        assert!(!w.is_zero());
        assert!(w.add(&w).unwrap().is_zero());
        assert!(witt_class(&DiagForm::from_ints(FieldSpec::Fp(5), &[1, 1]).unwrap()).is_zero());
    }

    #[test]
    fn gw_examples() {
        let qq = FieldSpec::Q;
        let h = GWClass::hyperbolic(qq);
        let x = h.mul(&GWClass::pfister_gen(qq, &q(5))).unwrap();
        assert!(x.is_zero());
        let lhs = GWClass::basis(qq, &q(7)).add(&GWClass::basis(qq, &q(-7))).unwrap();
        assert_eq!(lhs, h);
    }

    #[test]
    fn pfister_examples() {
        let qq = FieldSpec::Q;
        assert!(pfister(qq, &[q(1)]).unwrap().is_zero());
        assert!(pfister(qq, &[q(3), q(-2)]).unwrap().is_zero());
        let p = pfister(qq, &[q(-1), q(-1)]).unwrap();
        assert_eq!(p.witt, witt_class(&DiagForm::from_ints(qq, &[1, 1, 1, 1]).unwrap()));
        assert_eq!(p.witt.signature(), Some(4));
    }

    #[test]
    fn fundamental_power_examples() {
        let w = witt_class(&DiagForm::from_ints(FieldSpec::Fp(7), &[1, 1]).unwrap());
        assert!(w.in_fundamental_power(1).unwrap());
        assert!(!w.in_fundamental_power(2).unwrap());
        assert!(WittClass::zero(FieldSpec::Q).in_fundamental_power(9).unwrap());
        assert!(pfister(FieldSpec::Q, &[q(3), q(5)]).unwrap().in_fundamental_power(2).unwrap());
        assert!(pfister(FieldSpec::Q, &[q(-1), q(-1), q(-1)]).unwrap().in_fundamental_power(3).unwrap());
        assert!(!pfister(FieldSpec::Q, &[q(-1), q(-1)]).unwrap().in_fundamental_power(3).unwrap());
        assert!(w.in_fundamental_power(-1).is_err());
    }

    #[test]
    fn representatives_reproduce_class() {
        let f = DiagForm::from_ints(FieldSpec::Q, &[3, -10, 21, 11, -5, 2, 7]).unwrap();
        let w = witt_class(&f);
        assert_eq!(witt_class(&w.representative()), w);
    }
}
