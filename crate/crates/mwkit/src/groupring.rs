//! Coefficient fields (F_p for odd p, and Q), their unit groups, and the
//! integral group ring Z[F×].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{MwError, Result};

/// Trial division never runs past this bound on a cofactor.
const FACTOR_LIMIT: u64 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Fp(u64),
    Q,
}

impl FieldSpec {
    pub fn fp(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(MwError::Input(format!("{p} is not an odd prime")));
        }
        if p > u32::MAX as u64 {
            return Err(MwError::Unsupported(format!("prime {p} too large")));
        }
        Ok(FieldSpec::Fp(p))
    }

    pub fn is_q(&self) -> bool {
        matches!(self, FieldSpec::Q)
    }

    pub fn char_p(&self) -> Option<u64> {
        match self {
            FieldSpec::Fp(p) => Some(*p),
            FieldSpec::Q => None,
        }
    }

    pub fn one(&self) -> UnitRep {
        match self {
            FieldSpec::Fp(_) => UnitRep::Fp(1),
            FieldSpec::Q => UnitRep::Q(QUnit::one()),
        }
    }

    pub fn minus_one(&self) -> UnitRep {
        match self {
            FieldSpec::Fp(p) => UnitRep::Fp(p - 1),
            FieldSpec::Q => UnitRep::Q(QUnit { negative: true, exps: BTreeMap::new() }),
        }
    }

    pub fn unit(&self, n: i64) -> Result<UnitRep> {
        self.unit_ratio(&BigInt::from(n), &BigInt::one())
    }

    pub fn unit_ratio(&self, num: &BigInt, den: &BigInt) -> Result<UnitRep> {
        if den.is_zero() {
            return Err(MwError::Input("zero denominator".into()));
        }
        match self {
            FieldSpec::Fp(p) => {
                let pb = BigInt::from(*p);
                let n = num.mod_floor(&pb).to_u64().unwrap();
                let d = den.mod_floor(&pb).to_u64().unwrap();
                if n == 0 {
                    return Err(MwError::Input(format!("{num}/{den} is zero in F_{p}")));
                }
                if d == 0 {
                    return Err(MwError::Input(format!("{num}/{den} is not defined in F_{p}")));
                }
                Ok(UnitRep::Fp(mul_mod(n, mod_inv(d, *p), *p)))
            }
            FieldSpec::Q => {
                if num.is_zero() {
                    return Err(MwError::Input("0 is not a unit".into()));
                }
                let mut u = QUnit::from_integer(num)?;
                let d = QUnit::from_integer(den)?;
                u = u.mul(&d.inv());
                Ok(UnitRep::Q(u))
            }
        }
    }

    pub fn check(&self, a: &UnitRep) -> Result<()> {
        match (self, a) {
            (FieldSpec::Fp(p), UnitRep::Fp(r)) if *r >= 1 && r < p => Ok(()),
            (FieldSpec::Q, UnitRep::Q(_)) => Ok(()),
            _ => Err(MwError::Input(format!("{a} is not a unit of {self}"))),
        }
    }

    pub fn mul(&self, a: &UnitRep, b: &UnitRep) -> UnitRep {
        match (self, a, b) {
            (FieldSpec::Fp(p), UnitRep::Fp(x), UnitRep::Fp(y)) => UnitRep::Fp(mul_mod(*x, *y, *p)),
            (FieldSpec::Q, UnitRep::Q(x), UnitRep::Q(y)) => UnitRep::Q(x.mul(y)),
            _ => panic!("unit {a} or {b} does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &UnitRep) -> UnitRep {
        match (self, a) {
            (FieldSpec::Fp(p), UnitRep::Fp(x)) => UnitRep::Fp(mod_inv(*x, *p)),
            (FieldSpec::Q, UnitRep::Q(x)) => UnitRep::Q(x.inv()),
            _ => panic!("unit {a} does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &UnitRep) -> UnitRep {
        self.mul(a, &self.minus_one())
    }

    pub fn div(&self, a: &UnitRep, b: &UnitRep) -> UnitRep {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &UnitRep, k: i64) -> UnitRep {
        let base = if k < 0 { self.inv(a) } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// a + b, or `None` when the sum is zero.
    pub fn add(&self, a: &UnitRep, b: &UnitRep) -> Result<Option<UnitRep>> {
        match (self, a, b) {
            (FieldSpec::Fp(p), UnitRep::Fp(x), UnitRep::Fp(y)) => {
                let s = (x + y) % p;
                Ok(if s == 0 { None } else { Some(UnitRep::Fp(s)) })
            }
            (FieldSpec::Q, UnitRep::Q(x), UnitRep::Q(y)) => {
                let s = x.to_rational() + y.to_rational();
                if s.is_zero() {
                    Ok(None)
                } else {
                    self.unit_ratio(s.numer(), s.denom()).map(Some)
                }
            }
            _ => Err(MwError::FieldMismatch(a.to_string(), b.to_string())),
        }
    }

    pub fn sub(&self, a: &UnitRep, b: &UnitRep) -> Result<Option<UnitRep>> {
        self.add(a, &self.neg(b))
    }

    /// 1 − a; an error when a = 1.
    pub fn one_minus(&self, a: &UnitRep) -> Result<UnitRep> {
        self.sub(&self.one(), a)?.ok_or_else(|| MwError::Input("1 - a vanishes for a = 1".into()))
    }

    /// All units of F_p in residue order.
    pub fn units(&self) -> Result<Vec<UnitRep>> {
        match self {
            FieldSpec::Fp(p) => Ok((1..*p).map(UnitRep::Fp).collect()),
            FieldSpec::Q => Err(MwError::Unsupported("Q has infinitely many units".into())),
        }
    }

    /// A random unit: uniform over F_p×, or ±n/d with 1 ≤ n, d ≤ bound over Q.
    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> UnitRep {
        match self {
            FieldSpec::Fp(p) => UnitRep::Fp(rng.random_range(1..*p)),
            FieldSpec::Q => {
                let n = rng.random_range(1..=bound.max(1));
                let d = rng.random_range(1..=bound.max(1));
                let s: i64 = if rng.random_bool(0.5) { -1 } else { 1 };
                self.unit_ratio(&BigInt::from(s * n as i64), &BigInt::from(d)).unwrap()
            }
        }
    }

    /// Random unit different from 1 (so that 1 − a is a unit too).
    pub fn random_non_one<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> UnitRep {
        loop {
            let a = self.random_unit(rng, bound);
            if !a.is_one() {
                return a;
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Fp(p) => write!(f, "Fp:{p}"),
            FieldSpec::Q => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = MwError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Q);
        }
        let digits = t
            .strip_prefix("Fp:")
            .or_else(|| t.strip_prefix("fp:"))
            .or_else(|| t.strip_prefix("F_"))
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| MwError::Input(format!("unknown field '{s}'")))?;
        let p: u64 = digits.parse().map_err(|_| MwError::Input(format!("unknown field '{s}'")))?;
        FieldSpec::fp(p)
    }
}

/// A nonzero rational in factored form: sign and prime exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QUnit {
    pub negative: bool,
    pub exps: BTreeMap<u64, i64>,
}

impl QUnit {
    pub fn one() -> Self {
        QUnit { negative: false, exps: BTreeMap::new() }
    }

    pub fn from_integer(n: &BigInt) -> Result<Self> {
        if n.is_zero() {
            return Err(MwError::Input("0 is not a unit".into()));
        }
        let m = n.magnitude().to_u64().filter(|m| *m <= FACTOR_LIMIT);
        let m = m.ok_or_else(|| MwError::Unsupported(format!("{n} is too large to factor")))?;
        let exps = factor(m).into_iter().map(|(p, e)| (p, e as i64)).collect();
        Ok(QUnit { negative: n.sign() == Sign::Minus, exps })
    }

    pub fn mul(&self, o: &QUnit) -> QUnit {
        let mut exps = self.exps.clone();
        for (p, e) in &o.exps {
            let v = exps.entry(*p).or_insert(0);
            *v += e;
            if *v == 0 {
                exps.remove(p);
            }
        }
        QUnit { negative: self.negative ^ o.negative, exps }
    }

    pub fn inv(&self) -> QUnit {
        QUnit { negative: self.negative, exps: self.exps.iter().map(|(p, e)| (*p, -e)).collect() }
    }

    pub fn valuation(&self, p: u64) -> i64 {
        self.exps.get(&p).copied().unwrap_or(0)
    }

    pub fn numer_denom(&self) -> (BigInt, BigInt) {
        let mut n = BigInt::one();
        let mut d = BigInt::one();
        for (p, e) in &self.exps {
            let pp = BigInt::from(*p).pow(e.unsigned_abs() as u32);
            if *e > 0 {
                n *= pp;
            } else {
                d *= pp;
            }
        }
        if self.negative {
            n = -n;
        }
        (n, d)
    }

    pub fn to_rational(&self) -> BigRational {
        let (n, d) = self.numer_denom();
        BigRational::new(n, d)
    }

    /// Residue of u·p^{−v_p(u)} modulo p.
    pub fn unit_part_mod(&self, p: u64) -> u64 {
        let mut acc: u64 = if self.negative { p - 1 } else { 1 };
        for (q, e) in &self.exps {
            if *q == p {
                continue;
            }
            let base = q % p;
            let t = if *e >= 0 { pow_mod(base, *e as u64, p) } else { pow_mod(mod_inv(base, p), e.unsigned_abs(), p) };
            acc = mul_mod(acc, t, p);
        }
        acc
    }

    /// Sign and the primes of odd exponent: the square class.
    pub fn square_class(&self) -> QUnit {
        QUnit {
            negative: self.negative,
            exps: self.exps.iter().filter(|(_, e)| *e % 2 != 0).map(|(p, _)| (*p, 1)).collect(),
        }
    }

    pub fn is_square(&self) -> bool {
        !self.negative && self.exps.values().all(|e| e % 2 == 0)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.exps.keys().copied()
    }
}

impl fmt::Display for QUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.numer_denom();
        if d.is_one() {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnitRep {
    Fp(u64),
    Q(QUnit),
}

impl UnitRep {
    pub fn is_one(&self) -> bool {
        match self {
            UnitRep::Fp(r) => *r == 1,
            UnitRep::Q(q) => !q.negative && q.exps.is_empty(),
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            UnitRep::Fp(r) => Some(*r),
            UnitRep::Q(_) => None,
        }
    }

    pub fn as_q(&self) -> Option<&QUnit> {
        match self {
            UnitRep::Q(q) => Some(q),
            UnitRep::Fp(_) => None,
        }
    }

    pub fn is_negative_real(&self) -> bool {
        matches!(self, UnitRep::Q(q) if q.negative)
    }
}

impl fmt::Display for UnitRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitRep::Fp(r) => write!(f, "{r}"),
            UnitRep::Q(q) => write!(f, "{q}"),
        }
    }
}

/// Finitely supported integer combination of units.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElem {
    pub field: FieldSpec,
    terms: BTreeMap<UnitRep, BigInt>,
}

impl GroupRingElem {
    pub fn zero(field: FieldSpec) -> Self {
        GroupRingElem { field, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::basis(field, &field.one())
    }

    pub fn integer(field: FieldSpec, k: impl Into<BigInt>) -> Self {
        let mut x = Self::zero(field);
        x.add_term(field.one(), k.into());
        x
    }

    /// The basis element ⟨a⟩.
    pub fn basis(field: FieldSpec, a: &UnitRep) -> Self {
        let mut x = Self::zero(field);
        x.terms.insert(a.clone(), BigInt::one());
        x
    }

    /// ⟨⟨a⟩⟩ = ⟨a⟩ − 1.
    pub fn pfister_gen(field: FieldSpec, a: &UnitRep) -> Self {
        let mut x = Self::basis(field, a);
        x.add_term(field.one(), -BigInt::one());
        x
    }

    pub fn from_terms(field: FieldSpec, terms: impl IntoIterator<Item = (UnitRep, BigInt)>) -> Self {
        let mut x = Self::zero(field);
        for (u, c) in terms {
            x.add_term(u, c);
        }
        x
    }

    pub fn add_term(&mut self, u: UnitRep, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(u.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&u);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UnitRep, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, u: &UnitRep) -> BigInt {
        self.terms.get(u).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_field(&self, o: &Self) -> Result<()> {
        if self.field != o.field {
            return Err(MwError::FieldMismatch(self.field.to_string(), o.field.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_field(o)?;
        let mut x = self.clone();
        for (u, c) in &o.terms {
            x.add_term(u.clone(), c.clone());
        }
        Ok(x)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.field);
        }
        GroupRingElem { field: self.field, terms: self.terms.iter().map(|(u, c)| (u.clone(), c * k)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_field(o)?;
        let mut x = Self::zero(self.field);
        for (u, c) in &self.terms {
            for (v, d) in &o.terms {
                x.add_term(self.field.mul(u, v), c * d);
            }
        }
        Ok(x)
    }

    /// Multiplication by a single basis element ⟨a⟩.
    pub fn shift(&self, a: &UnitRep) -> Self {
        GroupRingElem { field: self.field, terms: self.terms.iter().map(|(u, c)| (self.field.mul(a, u), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.field);
        for _ in 0..k {
            acc = acc.mul(self).unwrap();
        }
        acc
    }

    /// The augmentation Z[F×] → Z.
    pub fn augment(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // The unit ⟨1⟩ is written last, as a bare integer.
        let one = self.field.one();
        let mut ordered: Vec<(&UnitRep, &BigInt)> = self.terms.iter().filter(|(u, _)| **u != one).collect();
        if let Some(c) = self.terms.get(&one) {
            ordered.push((&one, c));
        }
        for (i, (u, c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if *u == one {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                write!(f, "<{u}>")?;
            }
        }
        Ok(())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n % q == 0 {
            let mut e = 0;
            while n % q == 0 {
                n /= q;
                e += 1;
            }
            out.push((q, e));
            if n > 1 && is_prime(n) {
                break;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime.
pub fn mod_inv(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "{a} is not invertible mod {p}");
    pow_mod(a, p - 2, p)
}

/// Legendre symbol (a|p) for odd prime p, as −1, 0 or 1.
pub fn legendre(a: u64, p: u64) -> i32 {
    let r = pow_mod(a % p, (p - 1) / 2, p);
    match r {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Smallest generator of F_p×.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let qs: Vec<u64> = factor(p - 1).into_iter().map(|(q, _)| q).collect();
    (2..p).find(|g| qs.iter().all(|q| pow_mod(*g, (p - 1) / q, p) != 1)).expect("primes have primitive roots")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> UnitRep {
        FieldSpec::Q.unit(n).unwrap()
    }

    #[test]
    fn basis_and_pfister_generators() {
        let f7 = FieldSpec::fp(7).unwrap();
        let x = GroupRingElem::basis(f7, &f7.unit(5).unwrap());
        assert_eq!(x.to_string(), "<5>");
        assert!(GroupRingElem::pfister_gen(f7, &f7.one()).is_zero());
        let qq = FieldSpec::Q;
        let prod = GroupRingElem::pfister_gen(qq, &q(2)).mul(&GroupRingElem::pfister_gen(qq, &q(3))).unwrap();
        let expect = GroupRingElem::from_terms(qq, [(q(6), 1.into()), (q(2), (-1).into()), (q(3), (-1).into()), (q(1), 1.into())]);
        assert_eq!(prod, expect);
        assert!(f7.unit(0).is_err());
        assert!(f7.unit(14).is_err());
    }

    #[test]
    fn multiplication_examples() {
        let qq = FieldSpec::Q;
        let p = GroupRingElem::basis(qq, &q(2)).mul(&GroupRingElem::basis(qq, &q(3))).unwrap();
        assert_eq!(p, GroupRingElem::basis(qq, &q(6)));
        let f5 = FieldSpec::fp(5).unwrap();
        let two = f5.unit(2).unwrap();
        let a = GroupRingElem::pfister_gen(f5, &two);
        let b = GroupRingElem::basis(f5, &two).add(&GroupRingElem::one(f5)).unwrap();
        let expect = GroupRingElem::basis(f5, &f5.unit(4).unwrap()).sub(&GroupRingElem::one(f5)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), expect);
        assert!(a.mul(&GroupRingElem::one(qq)).is_err());
    }

    #[test]
    fn augmentation_examples() {
        let qq = FieldSpec::Q;
        let x = GroupRingElem::from_terms(qq, [(q(2), 3.into()), (q(5), (-1).into())]);
        assert_eq!(x.augment(), BigInt::from(2));
        assert_eq!(x.to_string(), "3<2> - <5>");
        let y = GroupRingElem::pfister_gen(qq, &q(2)).mul(&GroupRingElem::pfister_gen(qq, &q(7))).unwrap();
        assert!(y.augment().is_zero());
        assert_eq!(GroupRingElem::one(qq).augment(), BigInt::one());
    }

    #[test]
    fn units_have_order_dividing_p_minus_one() {
        for p in [3u64, 5, 7, 11, 13] {
            let f = FieldSpec::fp(p).unwrap();
            for a in f.units().unwrap() {
                let x = GroupRingElem::basis(f, &a);
                assert_eq!(x.pow((p - 1) as u32), GroupRingElem::one(f));
            }
        }
    }

    #[test]
    fn rationals_factor_and_add() {
        let qq = FieldSpec::Q;
        let a = qq.unit_ratio(&BigInt::from(-12), &BigInt::from(18)).unwrap();
        assert_eq!(a.to_string(), "-2/3");
        assert_eq!(qq.one_minus(&a).unwrap().to_string(), "5/3");
        assert!(qq.one_minus(&qq.one()).is_err());
        assert_eq!(qq.add(&q(3), &q(-3)).unwrap(), None);
    }

    #[test]
    fn field_parsing() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Q);
        assert_eq!("Fp:13".parse::<FieldSpec>().unwrap(), FieldSpec::Fp(13));
        assert!("Fp:9".parse::<FieldSpec>().is_err());
        assert!("Fp:2".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn primitive_roots_generate() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 47] {
            let g = primitive_root(p);
            let mut seen = std::collections::BTreeSet::new();
            for k in 0..p - 1 {
                seen.insert(pow_mod(g, k, p));
            }
            assert_eq!(seen.len() as u64, p - 1);
        }
    }

    #[test]
    fn random_units_are_units() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in [FieldSpec::Q, FieldSpec::Fp(13)] {
            for _ in 0..50 {
                let a = f.random_unit(&mut rng, 50);
                f.check(&a).unwrap();
            }
        }
    }
}
