//! Milnor-Witt K-theory as the fiber product K^M_n ×_{i^n} I^n.
//!
//! Expressions are words in [a], η, ⟨a⟩ and ⟨⟨a⟩⟩ with integer
//! coefficients. A word is sent to its Milnor image (η ↦ 0, [a] ↦ {a},
//! ⟨a⟩ ↦ 1) and to its image in the graded Witt ring ([a] ↦ ⟨⟨a⟩⟩,
//! η ↦ the inclusion I^{n+1} ⊂ I^n, ⟨a⟩ ↦ ⟨a⟩). Negative degrees keep only
//! the Witt part; degree 0 is GW(F) = Z ×_{Z/2} W(F).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{MwError, Result};
use crate::groupring::{FieldSpec, GroupRingElem, UnitRep};
use crate::milnor::{in_to_mod2, milnor_mod2, milnor_normalize, MilnorClass, SymbolTerm};
use crate::par::{map_indexed, trial_rng, Exec};
use crate::quadform::{GWClass, WittClass};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Bracket(UnitRep),
    Eta,
    Angle(UnitRep),
    /// ⟨⟨a⟩⟩ = ⟨a⟩ − 1 = η[a].
    Pfister(UnitRep),
}

impl Letter {
    fn degree(&self) -> i64 {
        match self {
            Letter::Bracket(_) => 1,
            Letter::Eta => -1,
            _ => 0,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Bracket(a) => write!(f, "[{a}]"),
            Letter::Eta => write!(f, "eta"),
            Letter::Angle(a) => write!(f, "<{a}>"),
            Letter::Pfister(a) => write!(f, "<<{a}>>"),
        }
    }
}

/// An integer combination of words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MWExpr {
    pub field: FieldSpec,
    pub terms: Vec<(BigInt, Vec<Letter>)>,
}

impl MWExpr {
    pub fn zero(field: FieldSpec) -> Self {
        MWExpr { field, terms: vec![] }
    }

    pub fn integer(field: FieldSpec, k: impl Into<BigInt>) -> Self {
        MWExpr { field, terms: vec![(k.into(), vec![])] }
    }

    pub fn word(field: FieldSpec, letters: Vec<Letter>) -> Self {
        MWExpr { field, terms: vec![(BigInt::one(), letters)] }
    }

    pub fn bracket(field: FieldSpec, a: &UnitRep) -> Self {
        Self::word(field, vec![Letter::Bracket(a.clone())])
    }

    /// [a_1][a_2]⋯[a_n].
    pub fn brackets(field: FieldSpec, entries: &[UnitRep]) -> Self {
        Self::word(field, entries.iter().map(|a| Letter::Bracket(a.clone())).collect())
    }

    pub fn eta(field: FieldSpec) -> Self {
        Self::word(field, vec![Letter::Eta])
    }

    pub fn angle(field: FieldSpec, a: &UnitRep) -> Self {
        Self::word(field, vec![Letter::Angle(a.clone())])
    }

    pub fn pfister(field: FieldSpec, entries: &[UnitRep]) -> Self {
        Self::word(field, entries.iter().map(|a| Letter::Pfister(a.clone())).collect())
    }

    /// h = η[−1] + 2.
    pub fn h(field: FieldSpec) -> Self {
        Self::word(field, vec![Letter::Eta, Letter::Bracket(field.minus_one())]).add(&Self::integer(field, 2))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        MWExpr { field: self.field, terms }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        MWExpr { field: self.field, terms: self.terms.iter().map(|(c, w)| (c * k, w.clone())).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (c, w) in &self.terms {
            for (d, v) in &o.terms {
                let mut word = w.clone();
                word.extend(v.iter().cloned());
                terms.push((c * d, word));
            }
        }
        MWExpr { field: self.field, terms }
    }

    /// The common degree of all words; `None` for the empty sum.
    pub fn degree(&self) -> Result<Option<i64>> {
        let mut deg = None;
        for (_, w) in &self.terms {
            let d: i64 = w.iter().map(Letter::degree).sum();
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(MwError::Degree(format!("mixed degrees {e} and {d}"))),
                _ => {}
            }
        }
        Ok(deg)
    }
}

impl fmt::Display for MWExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, w)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            let body: Vec<String> = w.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", body.join("*"))?;
        }
        Ok(())
    }
}

/// A normalized element of K^MW_n(F).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MWClass {
    pub field: FieldSpec,
    pub degree: i64,
    /// Milnor part for n ≥ 0; in degree 0 it is the rank.
    pub milnor: Option<MilnorClass>,
    /// The element of I^n (of W(F) when n ≤ 0).
    pub witt: WittClass,
}

fn word_witt(field: FieldSpec, w: &[Letter]) -> Result<GroupRingElem> {
    let mut acc = GroupRingElem::one(field);
    for l in w {
        let g = match l {
            Letter::Bracket(a) | Letter::Pfister(a) => {
                field.check(a)?;
                GroupRingElem::pfister_gen(field, a)
            }
            Letter::Angle(a) => {
                field.check(a)?;
                GroupRingElem::basis(field, a)
            }
            Letter::Eta => continue,
        };
        acc = acc.mul(&g)?;
    }
    Ok(acc)
}

/// Milnor image of a word: `None` when it vanishes (η or ⟨⟨a⟩⟩ present).
fn word_milnor(w: &[Letter]) -> Option<Vec<UnitRep>> {
    let mut out = Vec::new();
    for l in w {
        match l {
            Letter::Bracket(a) => out.push(a.clone()),
            Letter::Angle(_) => {}
            Letter::Eta | Letter::Pfister(_) => return None,
        }
    }
    Some(out)
}

impl MWClass {
    pub fn zero(field: FieldSpec, degree: i64) -> Self {
        MWClass {
            field,
            degree,
            milnor: (degree >= 0).then(|| MilnorClass::zero(field, degree as u32)),
            witt: WittClass::zero(field),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_gw(&GWClass::one(field))
    }

    pub fn from_gw(g: &GWClass) -> Self {
        MWClass { field: g.field(), degree: 0, milnor: Some(MilnorClass::integer(g.field(), g.rank)), witt: g.witt.clone() }
    }

    pub fn to_gw(&self) -> Result<GWClass> {
        if self.degree != 0 {
            return Err(MwError::Degree(format!("degree {} is not 0", self.degree)));
        }
        let rank = match &self.milnor {
            Some(MilnorClass { data: crate::milnor::MilnorData::Int(k), .. }) => k.to_i64().expect("rank fits"),
            _ => unreachable!("degree 0 stores the rank"),
        };
        GWClass::new(rank, self.witt.clone())
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero(self.field, self.degree)
    }

    /// The fiber-product condition: witt ∈ I^n and both parts agree in i^n = k_n.
    pub fn check_compatible(&self) -> Result<()> {
        let Some(m) = &self.milnor else { return Ok(()) };
        let n = self.degree as u32;
        let lhs = in_to_mod2(&self.witt, n).map_err(|e| MwError::Invariant(format!("witt part: {e}")))?;
        let rhs = milnor_mod2(m);
        if lhs != rhs {
            return Err(MwError::Invariant(format!("milnor part {m} and witt part {} disagree mod 2", self.witt)));
        }
        Ok(())
    }

    fn same(&self, o: &Self) -> Result<()> {
        if self.field != o.field {
            return Err(MwError::FieldMismatch(self.field.to_string(), o.field.to_string()));
        }
        if self.degree != o.degree {
            return Err(MwError::Degree(format!("cannot add degrees {} and {}", self.degree, o.degree)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let milnor = match (&self.milnor, &o.milnor) {
            (Some(a), Some(b)) => Some(a.add(b)?),
            _ => None,
        };
        Ok(MWClass { field: self.field, degree: self.degree, milnor, witt: self.witt.add(&o.witt)? })
    }

    pub fn neg(&self) -> Self {
        MWClass { field: self.field, degree: self.degree, milnor: self.milnor.as_ref().map(|m| m.neg()), witt: self.witt.neg() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        MWClass { field: self.field, degree: self.degree, milnor: self.milnor.as_ref().map(|m| m.scale(k)), witt: self.witt.scale(k) }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.to_string(),
            "degree": self.degree,
            "milnor": self.milnor.as_ref().map(|m| m.to_json()),
            "witt": self.witt.to_json(),
        })
    }
}

impl fmt::Display for MWClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.milnor {
            Some(m) => write!(f, "(deg {}: milnor {m}, witt {})", self.degree, self.witt),
            None => write!(f, "(deg {}: witt {})", self.degree, self.witt),
        }
    }
}

pub fn mwk_normalize(e: &MWExpr) -> Result<MWClass> {
    let field = e.field;
    let Some(degree) = e.degree()? else { return Ok(MWClass::zero(field, 0)) };
    let mut witt_gr = GroupRingElem::zero(field);
    let mut syms: Vec<SymbolTerm> = Vec::new();
    for (c, w) in &e.terms {
        witt_gr = witt_gr.add(&word_witt(field, w)?.scale(c))?;
        if degree >= 0 {
            if let Some(s) = word_milnor(w) {
                syms.push((c.clone(), s));
            }
        }
    }
    let witt = WittClass::from_group_ring(&witt_gr);
    let milnor = if degree >= 0 { Some(milnor_normalize(field, degree as u32, &syms)?) } else { None };
    let x = MWClass { field, degree, milnor, witt };
    x.check_compatible()?;
    Ok(x)
}

pub fn mwk_mul(x: &MWClass, y: &MWClass) -> Result<MWClass> {
    if x.field != y.field {
        return Err(MwError::FieldMismatch(x.field.to_string(), y.field.to_string()));
    }
    let degree = x.degree + y.degree;
    let milnor = if degree < 0 {
        None
    } else {
        Some(match (&x.milnor, &y.milnor) {
            (Some(a), Some(b)) => a.mul(b)?,
            // η-divisible factors vanish in Milnor K-theory.
            _ => MilnorClass::zero(x.field, degree as u32),
        })
    };
    let z = MWClass { field: x.field, degree, milnor, witt: x.witt.mul(&y.witt)? };
    z.check_compatible()?;
    Ok(z)
}

/// The GW(F)-module structure.
pub fn gw_act(g: &GWClass, x: &MWClass) -> Result<MWClass> {
    mwk_mul(&MWClass::from_gw(g), x)
}

/// I^{n+1} → K^MW_n, ⟨⟨a_1,…,a_{n+1}⟩⟩ ↦ η[a_1]⋯[a_{n+1}].
pub fn incl_pfister(field: FieldSpec, entries: &[UnitRep]) -> Result<MWClass> {
    if entries.is_empty() {
        return Err(MwError::Degree("need at least one Pfister slot".into()));
    }
    mwk_normalize(&MWExpr::eta(field).mul(&MWExpr::brackets(field, entries)))
}

pub fn proj_milnor(x: &MWClass) -> Result<MilnorClass> {
    x.milnor.clone().ok_or_else(|| MwError::Degree(format!("no Milnor part in degree {}", x.degree)))
}

/// 2K^M_n → K^MW_n: the element 2y goes to h times a lift of y.
pub fn incl_2milnor(y: &MilnorClass) -> Result<MWClass> {
    let f = y.field;
    let mut lift = MWExpr::zero(f);
    for (c, s) in y.symbols() {
        lift = lift.add(&MWExpr::brackets(f, &s).scale(&c));
    }
    if lift.terms.is_empty() {
        return Ok(MWClass::zero(f, y.degree as i64));
    }
    mwk_normalize(&MWExpr::h(f).mul(&lift))
}

pub fn proj_ipower(x: &MWClass) -> WittClass {
    x.witt.clone()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    MwRelations,
    Lemma23,
    Lemma39,
    MatsumotoMoore,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::MwRelations => "mw-relations",
            Suite::Lemma23 => "lemma-2.3",
            Suite::Lemma39 => "lemma-3.9",
            Suite::MatsumotoMoore => "matsumoto-moore",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        [Suite::MwRelations, Suite::Lemma23, Suite::Lemma39, Suite::MatsumotoMoore].into_iter().find(|x| x.name() == s)
    }
}

/// One checked identity lhs = rhs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceResult {
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub suite: String,
    pub field: FieldSpec,
    pub trials: usize,
    pub seed: u64,
    pub instances: Vec<InstanceResult>,
    /// Diagnostics that do not affect pass/fail.
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.instances.iter().all(|i| i.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceResult> {
        self.instances.iter().filter(|i| !i.pass)
    }

    pub fn to_json(&self) -> Value {
        let failures: Vec<Value> = self.failures().map(|f| json!({"instance": f.instance, "lhs": f.lhs, "rhs": f.rhs})).collect();
        json!({
            "suite": self.suite,
            "field": self.field.to_string(),
            "trials": self.trials,
            "seed": self.seed,
            "instances": self.instances.len(),
            "passed": self.passed(),
            "failures": failures,
            "notes": self.notes,
        })
    }
}

/// Normalizes both sides and records the comparison.
pub fn check_identity(label: String, lhs: &MWExpr, rhs: &MWExpr) -> InstanceResult {
    // An empty sum takes the degree of the other side.
    let norm = |x: &MWExpr, other: &MWExpr| -> Result<MWClass> {
        match (x.degree()?, other.degree()?) {
            (None, Some(d)) => Ok(MWClass::zero(x.field, d)),
            _ => mwk_normalize(x),
        }
    };
    let l = norm(lhs, rhs);
    let r = norm(rhs, lhs);
    let show = |x: &Result<MWClass>| match x {
        Ok(c) => c.to_string(),
        Err(e) => format!("error: {e}"),
    };
    let pass = matches!((&l, &r), (Ok(a), Ok(b)) if a == b);
    InstanceResult { instance: format!("{label}: {lhs} = {rhs}"), lhs: show(&l), rhs: show(&r), pass }
}

/// Bound on numerators and denominators of random rational units.
pub const Q_BOUND: u64 = 50;

fn distinct_units<R: Rng + ?Sized>(field: FieldSpec, rng: &mut R, n: usize) -> Result<Vec<UnitRep>> {
    if let FieldSpec::Fp(p) = field {
        if (p - 1) < n as u64 {
            return Err(MwError::Sampling(format!("F_{p} has fewer than {n} distinct units")));
        }
    }
    let mut out: Vec<UnitRep> = Vec::with_capacity(n);
    while out.len() < n {
        let b = field.random_unit(rng, Q_BOUND);
        if !out.contains(&b) {
            out.push(b);
        }
    }
    Ok(out)
}

fn mw_relations_trial<R: Rng + ?Sized>(f: FieldSpec, rng: &mut R) -> Vec<InstanceResult> {
    let a = f.random_unit(rng, Q_BOUND);
    let b = f.random_unit(rng, Q_BOUND);
    let c = f.random_non_one(rng, Q_BOUND);
    let br = |x: &UnitRep| MWExpr::bracket(f, x);
    let eta = MWExpr::eta(f);
    vec![
        check_identity(
            format!("(a) a={a} b={b}"),
            &br(&f.mul(&a, &b)),
            &br(&a).add(&br(&b)).add(&eta.mul(&br(&a)).mul(&br(&b))),
        ),
        check_identity(format!("(b) a={c}"), &br(&c).mul(&br(&f.one_minus(&c).unwrap())), &MWExpr::zero(f)),
        check_identity(format!("(c) a={a}"), &eta.mul(&br(&a)), &br(&a).mul(&eta)),
        check_identity("(d)".into(), &eta.mul(&MWExpr::h(f)), &MWExpr::zero(f)),
    ]
}

fn lemma23_trial<R: Rng + ?Sized>(f: FieldSpec, rng: &mut R) -> Vec<InstanceResult> {
    let a = f.random_unit(rng, Q_BOUND);
    let b = f.random_unit(rng, Q_BOUND);
    let br = |x: &UnitRep| MWExpr::bracket(f, x);
    vec![
        check_identity(format!("(1) a={a}"), &br(&a).mul(&br(&f.minus_one())), &br(&a).mul(&br(&a))),
        check_identity(format!("(2) a={a} b={b}"), &br(&f.mul(&a, &b)), &br(&a).add(&MWExpr::angle(f, &a).mul(&br(&b)))),
        check_identity(
            format!("(3) a={a} b={b}"),
            &br(&a).mul(&br(&b)),
            &MWExpr::angle(f, &f.minus_one()).mul(&br(&b)).mul(&br(&a)).neg(),
        ),
    ]
}

/// Σ_i [b_1−b_i]⋯[b_i]⋯[b_n−b_i], the difference expansion of [b_1]⋯[b_n].
pub fn lemma39_rhs(f: FieldSpec, b: &[UnitRep]) -> Result<MWExpr> {
    let mut rhs = MWExpr::zero(f);
    for i in 0..b.len() {
        let mut word = Vec::with_capacity(b.len());
        for j in 0..b.len() {
            if i == j {
                word.push(b[i].clone());
            } else {
                word.push(f.sub(&b[j], &b[i])?.ok_or_else(|| MwError::Sampling("entries must be distinct".into()))?);
            }
        }
        rhs = rhs.add(&MWExpr::brackets(f, &word));
    }
    Ok(rhs)
}

fn lemma39_trial<R: Rng + ?Sized>(f: FieldSpec, rng: &mut R, n: usize) -> Result<Vec<InstanceResult>> {
    let b = distinct_units(f, rng, n)?;
    let label = format!("n={n} b=({})", b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    Ok(vec![check_identity(label, &MWExpr::brackets(f, &b), &lemma39_rhs(f, &b)?)])
}

/// A formal sum of symbol words ±[a_1]⋯[a_n].
pub type WordSum = Vec<(i64, Vec<UnitRep>)>;

/// One Matsumoto–Moore relation instance lhs = rhs in degree n, as words.
#[derive(Debug, Clone)]
pub struct MmInstance {
    pub label: String,
    pub lhs: WordSum,
    pub rhs: WordSum,
}

/// Random instances of relations (i)–(v) in degree n ≥ 2.
pub fn mm_instances<R: Rng + ?Sized>(f: FieldSpec, rng: &mut R, n: usize) -> Vec<MmInstance> {
    let a: Vec<UnitRep> = (0..n).map(|_| f.random_unit(rng, Q_BOUND)).collect();
    let bn = f.random_unit(rng, Q_BOUND);
    let show = |s: &[UnitRep]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let mut out = Vec::new();

    let mut a1 = a.clone();
    let k = rng.random_range(0..n);
    a1[k] = f.one();
    out.push(MmInstance { label: format!("(i) n={n} a=({})", show(&a1)), lhs: vec![(1, a1)], rhs: vec![] });

    let i = rng.random_range(1..n);
    let mut sw = a.clone();
    sw[i - 1] = f.inv(&a[i]);
    sw[i] = a[i - 1].clone();
    out.push(MmInstance { label: format!("(ii) n={n} i={} a=({})", i + 1, show(&a)), lhs: vec![(1, a.clone())], rhs: vec![(1, sw)] });

    let pre = &a[..n - 2];
    let (x, y) = (&a[n - 2], &a[n - 1]);
    let cat = |tail: &[UnitRep]| {
        let mut v = pre.to_vec();
        v.extend(tail.iter().cloned());
        v
    };
    out.push(MmInstance {
        label: format!("(iii) n={n} a=({}) b={bn}", show(&a)),
        lhs: vec![(1, cat(&[x.clone(), f.mul(y, &bn)])), (1, cat(&[y.clone(), bn.clone()]))],
        rhs: vec![(1, cat(&[f.mul(x, y), bn.clone()])), (1, cat(&[x.clone(), y.clone()]))],
    });

    let iv = cat(&[x.clone(), f.neg(&f.mul(x, y))]);
    out.push(MmInstance { label: format!("(iv) n={n} a=({})", show(&a)), lhs: vec![(1, a.clone())], rhs: vec![(1, iv)] });

    let mut av = a.clone();
    if av[n - 2].is_one() {
        av[n - 2] = f.random_non_one(rng, Q_BOUND);
    }
    let xv = av[n - 2].clone();
    let mut v5 = av.clone();
    v5[n - 1] = f.mul(&f.one_minus(&xv).unwrap(), &av[n - 1]);
    out.push(MmInstance { label: format!("(v) n={n} a=({})", show(&av)), lhs: vec![(1, av)], rhs: vec![(1, v5)] });
    out
}

fn word_sum_expr(f: FieldSpec, s: &WordSum) -> MWExpr {
    s.iter().fold(MWExpr::zero(f), |acc, (k, w)| acc.add(&MWExpr::brackets(f, w).scale(&BigInt::from(*k))))
}

fn mm_trial<R: Rng + ?Sized>(f: FieldSpec, rng: &mut R, n: usize) -> Vec<InstanceResult> {
    mm_instances(f, rng, n)
        .into_iter()
        .map(|m| check_identity(m.label, &word_sum_expr(f, &m.lhs), &word_sum_expr(f, &m.rhs)))
        .collect()
}

/// Runs a named identity suite with per-trial generators derived from (seed, trial).
pub fn verify_identities(suite: Suite, field: FieldSpec, trials: usize, seed: u64, exec: Exec) -> Result<VerifyReport> {
    if suite == Suite::Lemma39 {
        if let FieldSpec::Fp(p) = field {
            if p - 1 < 4 {
                return Err(MwError::Sampling(format!("F_{p} has fewer than 4 distinct units")));
            }
        }
    }
    let per_trial: Vec<Result<Vec<InstanceResult>>> = map_indexed(exec, trials, |t| {
        let mut rng = trial_rng(seed, t as u64);
        match suite {
            Suite::MwRelations => Ok(mw_relations_trial(field, &mut rng)),
            Suite::Lemma23 => Ok(lemma23_trial(field, &mut rng)),
            Suite::Lemma39 => {
                let mut v = Vec::new();
                for n in 2..=4 {
                    v.extend(lemma39_trial(field, &mut rng, n)?);
                }
                Ok(v)
            }
            Suite::MatsumotoMoore => {
                let mut v = mm_trial(field, &mut rng, 2);
                v.extend(mm_trial(field, &mut rng, 3));
                Ok(v)
            }
        }
    });
    let mut instances = Vec::new();
    for r in per_trial {
        instances.extend(r?);
    }
    Ok(VerifyReport { suite: suite.name().into(), field, trials, seed, instances, notes: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> UnitRep {
        FieldSpec::Q.unit(n).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let qq = FieldSpec::Q;
        let eh = MWExpr::eta(qq).mul(&MWExpr::h(qq));
        let c = mwk_normalize(&eh).unwrap();
        assert_eq!(c.degree, -1);
        assert!(c.is_zero());
        let x = mwk_normalize(&MWExpr::eta(qq).mul(&MWExpr::bracket(qq, &q(5))).add(&MWExpr::integer(qq, 1))).unwrap();
        assert_eq!(x.to_gw().unwrap(), GWClass::basis(qq, &q(5)));
        let f7 = FieldSpec::Fp(7);
        let y = mwk_normalize(&MWExpr::brackets(f7, &[f7.unit(3).unwrap(), f7.unit(5).unwrap()])).unwrap();
        assert!(y.is_zero());
        assert!(mwk_normalize(&MWExpr::bracket(qq, &q(1))).unwrap().is_zero());
        let mixed = MWExpr::bracket(qq, &q(2)).add(&MWExpr::integer(qq, 1));
        assert!(mwk_normalize(&mixed).is_err());
    }

    #[test]
    fn module_structure_examples() {
        let qq = FieldSpec::Q;
        let x = mwk_normalize(&MWExpr::brackets(qq, &[q(3), q(-7)])).unwrap();
        let lhs = gw_act(&GWClass::pfister_gen(qq, &q(5)), &x).unwrap();
        let rhs = mwk_normalize(&MWExpr::eta(qq).mul(&MWExpr::brackets(qq, &[q(5), q(3), q(-7)]))).unwrap();
        assert_eq!(lhs, rhs);
        let h = GWClass::hyperbolic(qq);
        assert_eq!(gw_act(&h, &x).unwrap(), mwk_normalize(&MWExpr::brackets(qq, &[q(9), q(-7)])).unwrap());
        assert_eq!(gw_act(&GWClass::one(qq), &x).unwrap(), x);
    }

    #[test]
    fn exact_sequence_examples() {
        let qq = FieldSpec::Q;
        let x = incl_pfister(qq, &[q(2), q(3)]).unwrap();
        assert_eq!(x.degree, 1);
        assert!(proj_milnor(&x).unwrap().is_zero());
        assert_eq!(x.witt, crate::quadform::pfister(qq, &[q(2), q(3)]).unwrap().witt);
        let y = MilnorClass::symbol(qq, &[q(6), q(-5)]).unwrap();
        let z = incl_2milnor(&y).unwrap();
        assert_eq!(z, mwk_normalize(&MWExpr::brackets(qq, &[q(36), q(-5)])).unwrap());
        assert!(proj_ipower(&z).is_zero());
        assert_eq!(proj_milnor(&z).unwrap(), y.scale(&BigInt::from(2)));
    }

    #[test]
    fn small_suites_pass() {
        for f in [FieldSpec::Q, FieldSpec::Fp(13)] {
            for s in [Suite::MwRelations, Suite::Lemma23, Suite::Lemma39, Suite::MatsumotoMoore] {
                let r = verify_identities(s, f, 10, 1, Exec::Sequential).unwrap();
                assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
            }
        }
        assert!(verify_identities(Suite::Lemma39, FieldSpec::Fp(3), 1, 1, Exec::Sequential).is_err());
    }
}
