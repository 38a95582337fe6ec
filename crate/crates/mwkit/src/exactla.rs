//! Exact integer linear algebra: sparse matrices, Smith normal form,
//! lattice echelon bases and finitely presented abelian groups.
//!
//! Heavy loops run first on checked `i64` arithmetic and are replayed on
//! `BigInt` if any intermediate overflows, so results are always exact.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{MwError, Result};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl fmt::Debug for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseIntMatrix {}x{} {:?}", self.rows, self.cols, self.to_dense_strings())
    }
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(1));
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged dense matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn from_sparse_rows(cols: usize, rows: &[Vec<(usize, BigInt)>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row {
                let cur = m.get(i, *j) + v;
                m.set(i, *j, cur);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        if Zero::is_zero(&v) {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.entries.iter()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            t.entries.insert((j, i), v.clone());
        }
        t
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols != other.rows {
            return Err(MwError::Dimension { expected: self.cols, got: other.rows });
        }
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for (&(k, j), v) in &other.entries {
            by_row[k].push((j, v));
        }
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &by_row[k] {
                *acc.entry((i, j)).or_default() += a * b;
            }
        }
        acc.retain(|_, v| !Zero::is_zero(v));
        Ok(SparseIntMatrix { rows: self.rows, cols: other.cols, entries: acc })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(MwError::Dimension { expected: self.cols, got: v.len() });
        }
        let mut out = vec![BigInt::ZERO; self.rows];
        for (&(i, j), a) in &self.entries {
            out[i] += a * &v[j];
        }
        Ok(out)
    }

    pub fn column(&self, j: usize) -> Vec<(usize, BigInt)> {
        self.entries.iter().filter(|((_, c), _)| *c == j).map(|((r, _), v)| (*r, v.clone())).collect()
    }

    pub fn sparse_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (&(i, j), v) in &self.entries {
            out[i].push((j, v.clone()));
        }
        out
    }

    pub fn sparse_columns(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut out = vec![Vec::new(); self.cols];
        for (&(i, j), v) in &self.entries {
            out[j].push((i, v.clone()));
        }
        out
    }

    pub fn to_dense_strings(&self) -> Vec<Vec<String>> {
        let mut d = vec![vec!["0".to_string(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.to_string();
        }
        d
    }

    /// The diagonal embedding of `diag` into a `rows x cols` matrix.
    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }
}

/// Integer arithmetic with overflow reporting, implemented for `i64`
/// (checked) and `BigInt` (never overflows).
pub trait ExactInt: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Floor division with nonnegative remainder for positive divisor, truncated otherwise.
    fn div_trunc(&self, o: &Self) -> Self;
    fn rem_is_zero(&self, o: &Self) -> bool;
    fn abs_lt(&self, o: &Self) -> bool;
    fn is_unit(&self) -> bool;
    fn is_negative(&self) -> bool;
    /// Returns (g, s, t) with g = s*a + t*b and g > 0.
    fn ext_gcd(a: &Self, b: &Self) -> Option<(Self, Self, Self)>;
}

impl ExactInt for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64().filter(|x| *x != i64::MIN)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o).filter(|x| *x != i64::MIN)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o).filter(|x| *x != i64::MIN)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o).filter(|x| *x != i64::MIN)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_trunc(&self, o: &Self) -> Self {
        self / o
    }
    fn rem_is_zero(&self, o: &Self) -> bool {
        self % o == 0
    }
    fn abs_lt(&self, o: &Self) -> bool {
        self.unsigned_abs() < o.unsigned_abs()
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn ext_gcd(a: &Self, b: &Self) -> Option<(Self, Self, Self)> {
        let e = (*a as i128).extended_gcd(&(*b as i128));
        let (mut g, mut s, mut t) = (e.gcd, e.x, e.y);
        if g < 0 {
            g = -g;
            s = -s;
            t = -t;
        }
        Some((i64::try_from(g).ok()?, i64::try_from(s).ok()?, i64::try_from(t).ok()?))
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_trunc(&self, o: &Self) -> Self {
        self / o
    }
    fn rem_is_zero(&self, o: &Self) -> bool {
        Zero::is_zero(&(self % o))
    }
    fn abs_lt(&self, o: &Self) -> bool {
        self.magnitude() < o.magnitude()
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn ext_gcd(a: &Self, b: &Self) -> Option<(Self, Self, Self)> {
        let e = a.extended_gcd(b);
        if Signed::is_negative(&e.gcd) {
            Some((-e.gcd, -e.x, -e.y))
        } else {
            Some((e.gcd, e.x, e.y))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

type SVec<T> = Vec<(usize, T)>;

/// alpha*x + beta*y on sorted sparse vectors.
fn combine<T: ExactInt>(alpha: &T, x: &SVec<T>, beta: &T, y: &SVec<T>) -> std::result::Result<SVec<T>, Overflow> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let scale = |c: &T, v: &T| -> std::result::Result<T, Overflow> {
        if c.is_unit() {
            if c.is_negative() {
                v.neg().ok_or(Overflow)
            } else {
                Ok(v.clone())
            }
        } else {
            c.mul(v).ok_or(Overflow)
        }
    };
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            if !alpha.is_zero() {
                out.push((x[i].0, scale(alpha, &x[i].1)?));
            }
            i += 1;
        } else if take_y {
            if !beta.is_zero() {
                out.push((y[j].0, scale(beta, &y[j].1)?));
            }
            j += 1;
        } else {
            let v = scale(alpha, &x[i].1)?.add(&scale(beta, &y[j].1)?).ok_or(Overflow)?;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// Incremental echelon basis of an integer lattice (row lattice).
///
/// Every basis vector starts at a distinct pivot index; the pivot entry of
/// the vector stored at index `c` generates the ideal of leading entries of
/// lattice vectors supported on indices `>= c`, which makes reduction an
/// exact membership test.
#[derive(Debug, Clone)]
pub struct Echelon<T: ExactInt> {
    dim: usize,
    basis: BTreeMap<usize, SVec<T>>,
    combos: Option<BTreeMap<usize, SVec<T>>>,
    inserted: usize,
}

impl<T: ExactInt> Echelon<T> {
    pub fn new(dim: usize, track: bool) -> Self {
        Echelon { dim, basis: BTreeMap::new(), combos: if track { Some(BTreeMap::new()) } else { None }, inserted: 0 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Inserts a generator; its index (for certificates) is the insertion order.
    pub fn insert(&mut self, v: SVec<T>) -> std::result::Result<(), Overflow> {
        let idx = self.inserted;
        self.inserted += 1;
        let mut x = v;
        x.retain(|(_, a)| !a.is_zero());
        let mut cx: SVec<T> = vec![(idx, T::one())];
        let track = self.combos.is_some();
        while let Some((c, xc)) = x.first().cloned() {
            let Some(b) = self.basis.get(&c) else {
                self.basis.insert(c, x);
                if let Some(cm) = self.combos.as_mut() {
                    cm.insert(c, cx);
                }
                return Ok(());
            };
            let bc = b[0].1.clone();
            if xc.rem_is_zero(&bc) {
                let q = xc.div_trunc(&bc).neg().ok_or(Overflow)?;
                x = combine(&T::one(), &x, &q, b)?;
                if track {
                    let cb = &self.combos.as_ref().unwrap()[&c];
                    cx = combine(&T::one(), &cx, &q, cb)?;
                }
            } else {
                let (g, s, t) = T::ext_gcd(&xc, &bc).ok_or(Overflow)?;
                let bq = bc.div_trunc(&g);
                let xq = xc.div_trunc(&g).neg().ok_or(Overflow)?;
                let new_b = combine(&s, &x, &t, b)?;
                let new_x = combine(&bq, &x, &xq, b)?;
                if track {
                    let cm = self.combos.as_mut().unwrap();
                    let cb = &cm[&c];
                    let new_cb = combine(&s, &cx, &t, cb)?;
                    let new_cx = combine(&bq, &cx, &xq, cb)?;
                    cm.insert(c, new_cb);
                    cx = new_cx;
                }
                self.basis.insert(c, new_b);
                x = new_x;
            }
        }
        Ok(())
    }

    /// Reduces `v` against the basis. Returns the coefficients on original
    /// generators when `v` lies in the lattice (empty map when untracked).
    pub fn reduce(&self, v: &SVec<T>) -> std::result::Result<Option<SVec<T>>, Overflow> {
        let mut x: SVec<T> = v.iter().filter(|(_, a)| !a.is_zero()).cloned().collect();
        let mut cert: SVec<T> = Vec::new();
        while let Some((c, xc)) = x.first().cloned() {
            let Some(b) = self.basis.get(&c) else { return Ok(None) };
            let bc = &b[0].1;
            if !xc.rem_is_zero(bc) {
                return Ok(None);
            }
            let q = xc.div_trunc(bc);
            x = combine(&T::one(), &x, &q.neg().ok_or(Overflow)?, b)?;
            if let Some(cm) = &self.combos {
                cert = combine(&T::one(), &cert, &q, &cm[&c])?;
            }
        }
        Ok(Some(cert))
    }

    pub fn basis(&self) -> impl Iterator<Item = (&usize, &SVec<T>)> {
        self.basis.iter()
    }

    pub fn pivots_are_units(&self) -> bool {
        self.basis.values().all(|b| b[0].1.is_unit())
    }

    pub fn to_big(&self) -> Echelon<BigInt> {
        let conv = |v: &SVec<T>| v.iter().map(|(i, a)| (*i, a.to_big())).collect::<SVec<BigInt>>();
        Echelon {
            dim: self.dim,
            basis: self.basis.iter().map(|(k, v)| (*k, conv(v))).collect(),
            combos: self.combos.as_ref().map(|c| c.iter().map(|(k, v)| (*k, conv(v))).collect()),
            inserted: self.inserted,
        }
    }
}

/// Builds an echelon basis for the lattice spanned by `gens`, trying `i64`
/// first and falling back to `BigInt`.
pub fn echelon_of(dim: usize, gens: &[SVec<BigInt>], track: bool) -> Echelon<BigInt> {
    let small: Option<Vec<SVec<i64>>> = gens
        .iter()
        .map(|g| g.iter().map(|(i, a)| i64::from_big(a).map(|x| (*i, x))).collect::<Option<Vec<_>>>())
        .collect();
    if let Some(small) = small {
        let mut e = Echelon::<i64>::new(dim, track);
        let ok = small.into_iter().all(|g| e.insert(g).is_ok());
        if ok {
            return e.to_big();
        }
    }
    let mut e = Echelon::<BigInt>::new(dim, track);
    for g in gens {
        e.insert(g.clone()).expect("bigint arithmetic cannot overflow");
    }
    e
}

/// Elimination on unit (±1) entries in arbitrary columns.
///
/// Pivot rows are kept fully reduced: each vanishes on every other pivot
/// column, so a single pass over a vector's support reduces it. Reduced vectors without a unit entry
/// are kept as residuals; after `settle`, every residual vanishes on all
/// pivot columns and Z^dim / L ≅ Z^(non-pivot columns) / span(residuals).
/// `u - q·w` for sparse vectors; the first entry of `u` (a pivot) stays first.
fn combine_sorted<T: ExactInt>(u: &SVec<T>, q: &T, w: &SVec<T>) -> std::result::Result<SVec<T>, Overflow> {
    let mut acc: BTreeMap<usize, T> = u[1..].iter().cloned().collect();
    for (j, b) in w {
        let cur = acc.remove(j).unwrap_or_else(T::zero);
        let nv = cur.sub(&q.mul(b).ok_or(Overflow)?).ok_or(Overflow)?;
        if !nv.is_zero() {
            acc.insert(*j, nv);
        }
    }
    let mut out = vec![u[0].clone()];
    out.extend(acc);
    Ok(out)
}

const RESIDUAL_BUFFER: usize = 4096;

#[derive(Debug, Clone)]
struct UnitReducer<T: ExactInt> {
    dim: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<(usize, SVec<T>)>,
    /// Residual vectors, each stamped with the pivot count it was reduced against.
    residual: Vec<(usize, SVec<T>)>,
}

impl<T: ExactInt> UnitReducer<T> {
    fn new(dim: usize) -> Self {
        UnitReducer { dim, pivot_row: vec![None; dim], rows: Vec::new(), residual: Vec::new() }
    }

    fn reduce(&self, v: &SVec<T>) -> std::result::Result<SVec<T>, Overflow> {
        let mut x: Vec<T> = vec![T::zero(); self.dim];
        let mut touched: Vec<usize> = Vec::with_capacity(v.len() * 4);
        for (i, a) in v {
            x[*i] = a.clone();
            touched.push(*i);
        }
        for (i, a) in v {
            let Some(k) = self.pivot_row[*i] else { continue };
            // Pivot entries are ±1, so the multiplier is a·pivot.
            let row = &self.rows[k].1;
            let q = a.mul(&row[0].1).ok_or(Overflow)?;
            for (j, b) in row {
                if x[*j].is_zero() {
                    touched.push(*j);
                }
                x[*j] = x[*j].sub(&q.mul(b).ok_or(Overflow)?).ok_or(Overflow)?;
            }
        }
        touched.sort_unstable();
        touched.dedup();
        Ok(touched.into_iter().filter(|&i| !x[i].is_zero()).map(|i| (i, x[i].clone())).collect())
    }

    /// Adds a reduced vector, as a pivot row if it has a unit entry. Existing
    /// pivot rows are cleared on the new pivot column.
    fn push_reduced(&mut self, x: SVec<T>) -> std::result::Result<(), Overflow> {
        if x.is_empty() {
            return Ok(());
        }
        let Some(pos) = x.iter().position(|(_, a)| a.is_unit()) else {
            self.residual.push((self.rows.len(), x));
            return Ok(());
        };
        let mut row = x;
        let piv = row.remove(pos);
        row.insert(0, piv);
        let c = row[0].0;
        for (_, other) in self.rows.iter_mut() {
            let Some(a) = other.iter().find(|(j, _)| *j == c).map(|(_, a)| a.clone()) else { continue };
            let q = a.mul(&row[0].1).ok_or(Overflow)?;
            *other = combine_sorted(other, &q, &row)?;
        }
        self.pivot_row[c] = Some(self.rows.len());
        self.rows.push((c, row));
        Ok(())
    }

    fn insert(&mut self, v: &SVec<T>) -> std::result::Result<(), Overflow> {
        let x = self.reduce(v)?;
        self.push_reduced(x)?;
        if self.residual.len() >= RESIDUAL_BUFFER {
            self.compress()?;
        }
        Ok(())
    }

    /// Settles the residuals and replaces them by a Hermite basis of the
    /// lattice they span, which has at most one row per free column.
    fn compress(&mut self) -> std::result::Result<(), Overflow> {
        self.settle()?;
        let free: Vec<usize> = (0..self.dim).filter(|c| self.pivot_row[*c].is_none()).collect();
        let pos: HashMap<usize, usize> = free.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let mut herm = Hermite::new(free.len());
        for (_, r) in std::mem::take(&mut self.residual) {
            let mut v = vec![BigInt::ZERO; free.len()];
            for (i, a) in &r {
                v[pos[i]] = a.to_big();
            }
            herm.insert(v);
        }
        for row in herm.rows.into_iter().flatten() {
            let mut out: SVec<T> = Vec::new();
            for (k, a) in row.iter().enumerate() {
                if !Zero::is_zero(a) {
                    out.push((free[k], T::from_big(a).ok_or(Overflow)?));
                }
            }
            self.residual.push((self.rows.len(), out));
        }
        Ok(())
    }

    /// Re-reduces residuals until all are reduced against every pivot row.
    fn settle(&mut self) -> std::result::Result<(), Overflow> {
        while self.residual.iter().any(|(stamp, _)| *stamp < self.rows.len()) {
            for (stamp, r) in std::mem::take(&mut self.residual) {
                if stamp == self.rows.len() {
                    self.residual.push((stamp, r));
                } else {
                    let x = self.reduce(&r)?;
                    self.push_reduced(x)?;
                }
            }
        }
        Ok(())
    }

    fn to_big(&self) -> UnitReducer<BigInt> {
        let conv = |v: &SVec<T>| v.iter().map(|(i, a)| (*i, a.to_big())).collect::<SVec<BigInt>>();
        UnitReducer {
            dim: self.dim,
            pivot_row: self.pivot_row.clone(),
            rows: self.rows.iter().map(|(c, r)| (*c, conv(r))).collect(),
            residual: self.residual.iter().map(|(k, r)| (*k, conv(r))).collect(),
        }
    }
}

/// Dense Hermite normal form over Z, kept fully reduced: each pivot is
/// positive and every entry above a pivot lies in [0, pivot).
#[derive(Debug, Clone)]
struct Hermite {
    cols: usize,
    rows: Vec<Option<Vec<BigInt>>>,
}

impl Hermite {
    fn new(cols: usize) -> Self {
        Hermite { cols, rows: vec![None; cols] }
    }

    fn rank(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }

    fn sub_multiple(v: &mut [BigInt], q: &BigInt, row: &[BigInt]) {
        for (x, r) in v.iter_mut().zip(row) {
            if !Zero::is_zero(r) {
                *x -= q * r;
            }
        }
    }

    /// Reduces `v` in place; returns the first column where it has no pivot
    /// to cancel against, or `None` if it reduced to zero.
    fn reduce(&self, v: &mut [BigInt]) -> Option<usize> {
        for c in 0..self.cols {
            if Zero::is_zero(&v[c]) {
                continue;
            }
            let row = self.rows[c].as_ref()?;
            let (q, r) = v[c].div_mod_floor(&row[c]);
            if !Zero::is_zero(&r) {
                return Some(c);
            }
            Self::sub_multiple(v, &q, row);
        }
        None
    }

    fn insert(&mut self, mut v: Vec<BigInt>) {
        let mut changed = false;
        let mut c = 0;
        while c < self.cols {
            if Zero::is_zero(&v[c]) {
                c += 1;
                continue;
            }
            match self.rows[c].take() {
                None => {
                    if Signed::is_negative(&v[c]) {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.rows[c] = Some(v);
                    changed = true;
                    break;
                }
                Some(b) => {
                    let (q, r) = v[c].div_mod_floor(&b[c]);
                    if Zero::is_zero(&r) {
                        Self::sub_multiple(&mut v, &q, &b);
                        self.rows[c] = Some(b);
                    } else {
                        let e = v[c].extended_gcd(&b[c]);
                        let (vq, bq) = (&v[c] / &e.gcd, &b[c] / &e.gcd);
                        let new: Vec<BigInt> = v.iter().zip(&b).map(|(x, y)| &e.x * x + &e.y * y).collect();
                        let rest: Vec<BigInt> = v.iter().zip(&b).map(|(x, y)| &bq * x - &vq * y).collect();
                        self.rows[c] = Some(new);
                        v = rest;
                        changed = true;
                    }
                    c += 1;
                }
            }
        }
        if changed {
            self.normalize();
        }
    }

    fn normalize(&mut self) {
        for c in 0..self.cols {
            let Some(piv) = self.rows[c].clone() else { continue };
            for r in 0..c {
                if let Some(row) = self.rows[r].as_mut() {
                    if !Zero::is_zero(&row[c]) {
                        let q = row[c].div_floor(&piv[c]);
                        Self::sub_multiple(row, &q, &piv);
                    }
                }
            }
        }
    }

    fn torsion(&self) -> Vec<BigInt> {
        if self.rows.iter().flatten().all(|r| r.iter().find(|x| !Zero::is_zero(*x)).is_some_and(One::is_one)) {
            return Vec::new();
        }
        let rows: Vec<SVec<BigInt>> = self
            .rows
            .iter()
            .flatten()
            .map(|r| r.iter().enumerate().filter(|(_, x)| !Zero::is_zero(*x)).map(|(i, x)| (i, x.clone())).collect())
            .collect();
        let m = SparseIntMatrix::from_sparse_rows(self.cols.max(1), &rows);
        smith_normal_form(&m, false).diag.into_iter().filter(|d| !Zero::is_zero(d) && !One::is_one(d)).collect()
    }
}

#[derive(Debug, Clone)]
enum Reducer {
    Small(UnitReducer<i64>),
    Big(UnitReducer<BigInt>),
}

/// A lattice in Z^dim prepared for invariants and membership queries by
/// unit-pivot elimination followed by an echelon basis of the residue.
#[derive(Debug, Clone)]
pub struct UnitLattice {
    dim: usize,
    reducer: Reducer,
    /// Non-pivot column → compact index.
    free_cols: HashMap<usize, usize>,
    residual: Hermite,
}

impl UnitLattice {
    pub fn new(dim: usize, gens: &[SVec<BigInt>]) -> Self {
        let small: Option<Vec<SVec<i64>>> = gens
            .iter()
            .map(|g| g.iter().map(|(i, a)| i64::from_big(a).map(|x| (*i, x))).collect::<Option<Vec<_>>>())
            .collect();
        let reducer = small
            .and_then(|small| {
                let mut r = UnitReducer::<i64>::new(dim);
                for g in &small {
                    r.insert(g).ok()?;
                }
                r.settle().ok()?;
                Some(Reducer::Small(r))
            })
            .unwrap_or_else(|| {
                let mut r = UnitReducer::<BigInt>::new(dim);
                for g in gens {
                    r.insert(g).expect("bigint arithmetic cannot overflow");
                }
                r.settle().expect("bigint arithmetic cannot overflow");
                Reducer::Big(r)
            });
        let (pivots, residual): (Vec<usize>, Vec<SVec<BigInt>>) = match &reducer {
            Reducer::Small(r) => (r.rows.iter().map(|(c, _)| *c).collect(), r.to_big().residual.into_iter().map(|(_, v)| v).collect()),
            Reducer::Big(r) => (r.rows.iter().map(|(c, _)| *c).collect(), r.residual.iter().map(|(_, v)| v.clone()).collect()),
        };
        let pivot_set: BTreeSet<usize> = pivots.into_iter().collect();
        let free_cols: HashMap<usize, usize> =
            (0..dim).filter(|c| !pivot_set.contains(c)).enumerate().map(|(k, c)| (c, k)).collect();
        let mut herm = Hermite::new(free_cols.len());
        for r in &residual {
            let mut v = vec![BigInt::ZERO; free_cols.len()];
            for (i, a) in r {
                v[free_cols[i]] = a.clone();
            }
            herm.insert(v);
        }
        let residual = herm;
        UnitLattice { dim, reducer, free_cols, residual }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit_pivots(&self) -> usize {
        match &self.reducer {
            Reducer::Small(r) => r.rows.len(),
            Reducer::Big(r) => r.rows.len(),
        }
    }

    pub fn rank(&self) -> usize {
        self.unit_pivots() + self.residual.rank()
    }

    /// Torsion coefficients of Z^dim / L, each > 1.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.residual.torsion()
    }

    fn reduce_big(&self, v: &SVec<BigInt>) -> SVec<BigInt> {
        match &self.reducer {
            Reducer::Small(r) => {
                let small: Option<SVec<i64>> = v.iter().map(|(i, a)| i64::from_big(a).map(|x| (*i, x))).collect();
                if let Some(out) = small.and_then(|s| r.reduce(&s).ok()) {
                    return out.into_iter().map(|(i, a)| (i, BigInt::from(a))).collect();
                }
                r.to_big().reduce(v).expect("bigint arithmetic cannot overflow")
            }
            Reducer::Big(r) => r.reduce(v).expect("bigint arithmetic cannot overflow"),
        }
    }

    pub fn contains(&self, v: &SVec<BigInt>) -> bool {
        let x = self.reduce_big(v);
        let mut dense = vec![BigInt::ZERO; self.free_cols.len()];
        for (i, a) in x {
            match self.free_cols.get(&i) {
                Some(k) => dense[*k] = a,
                None => return false,
            }
        }
        self.residual.reduce(&mut dense).is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries, positive and divisibility-ordered.
    pub diag: Vec<BigInt>,
    /// (L, R) with L * A * R equal to the diagonal embedding of `diag`.
    pub transforms: Option<(SparseIntMatrix, SparseIntMatrix)>,
}

struct SnfWork<T: ExactInt> {
    rows: Vec<HashMap<usize, T>>,
    cols: Vec<BTreeSet<usize>>,
    left: Option<Vec<HashMap<usize, T>>>,
    right: Option<Vec<HashMap<usize, T>>>,
}

impl<T: ExactInt> SnfWork<T> {
    fn set(&mut self, i: usize, j: usize, v: T) {
        if v.is_zero() {
            self.rows[i].remove(&j);
            self.cols[j].remove(&i);
        } else {
            self.rows[i].insert(j, v);
            self.cols[j].insert(i);
        }
    }

    // row_i += q * row_k
    fn row_add(&mut self, i: usize, k: usize, q: &T) -> std::result::Result<(), Overflow> {
        let src: Vec<(usize, T)> = self.rows[k].iter().map(|(j, v)| (*j, v.clone())).collect();
        for (j, v) in src {
            let cur = self.rows[i].get(&j).cloned().unwrap_or_else(T::zero);
            let nv = cur.add(&q.mul(&v).ok_or(Overflow)?).ok_or(Overflow)?;
            self.set(i, j, nv);
        }
        if let Some(l) = self.left.as_mut() {
            let src: Vec<(usize, T)> = l[k].iter().map(|(j, v)| (*j, v.clone())).collect();
            for (j, v) in src {
                let cur = l[i].get(&j).cloned().unwrap_or_else(T::zero);
                let nv = cur.add(&q.mul(&v).ok_or(Overflow)?).ok_or(Overflow)?;
                if nv.is_zero() {
                    l[i].remove(&j);
                } else {
                    l[i].insert(j, nv);
                }
            }
        }
        Ok(())
    }

    // col_j += q * col_l
    fn col_add(&mut self, j: usize, l: usize, q: &T) -> std::result::Result<(), Overflow> {
        let src: Vec<usize> = self.cols[l].iter().copied().collect();
        for i in src {
            let v = self.rows[i][&l].clone();
            let cur = self.rows[i].get(&j).cloned().unwrap_or_else(T::zero);
            let nv = cur.add(&q.mul(&v).ok_or(Overflow)?).ok_or(Overflow)?;
            self.set(i, j, nv);
        }
        if let Some(r) = self.right.as_mut() {
            // R stored by rows: column op on R touches every row.
            for row in r.iter_mut() {
                if let Some(v) = row.get(&l).cloned() {
                    let cur = row.get(&j).cloned().unwrap_or_else(T::zero);
                    let nv = cur.add(&q.mul(&v).ok_or(Overflow)?).ok_or(Overflow)?;
                    if nv.is_zero() {
                        row.remove(&j);
                    } else {
                        row.insert(j, nv);
                    }
                }
            }
        }
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let ra: Vec<usize> = self.rows[a].keys().copied().collect();
        let rb: Vec<usize> = self.rows[b].keys().copied().collect();
        for j in &ra {
            self.cols[*j].remove(&a);
        }
        for j in &rb {
            self.cols[*j].remove(&b);
        }
        self.rows.swap(a, b);
        for j in self.rows[a].keys() {
            self.cols[*j].insert(a);
        }
        for j in self.rows[b].keys() {
            self.cols[*j].insert(b);
        }
        if let Some(l) = self.left.as_mut() {
            l.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let ca: Vec<usize> = self.cols[a].iter().copied().collect();
        let cb: Vec<usize> = self.cols[b].iter().copied().collect();
        for &i in &ca {
            let v = self.rows[i].remove(&a).unwrap();
            self.rows[i].insert(usize::MAX, v);
        }
        for &i in &cb {
            let v = self.rows[i].remove(&b).unwrap();
            self.rows[i].insert(a, v);
        }
        for &i in &ca {
            let v = self.rows[i].remove(&usize::MAX).unwrap();
            self.rows[i].insert(b, v);
        }
        self.cols.swap(a, b);
        if let Some(r) = self.right.as_mut() {
            for row in r.iter_mut() {
                let va = row.remove(&a);
                let vb = row.remove(&b);
                if let Some(v) = va {
                    row.insert(b, v);
                }
                if let Some(v) = vb {
                    row.insert(a, v);
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) -> std::result::Result<(), Overflow> {
        let m1 = T::one().neg().ok_or(Overflow)?;
        let keys: Vec<usize> = self.rows[i].keys().copied().collect();
        for j in keys {
            let v = self.rows[i][&j].mul(&m1).ok_or(Overflow)?;
            self.rows[i].insert(j, v);
        }
        if let Some(l) = self.left.as_mut() {
            for v in l[i].values_mut() {
                *v = v.mul(&m1).ok_or(Overflow)?;
            }
        }
        Ok(())
    }
}

fn snf_generic<T: ExactInt>(m: &SparseIntMatrix, keep: bool) -> std::result::Result<SmithForm, Overflow> {
    let (nr, nc) = (m.rows, m.cols);
    let mut w = SnfWork::<T> {
        rows: vec![HashMap::new(); nr],
        cols: vec![BTreeSet::new(); nc],
        left: None,
        right: None,
    };
    for (&(i, j), v) in &m.entries {
        w.set(i, j, T::from_big(v).ok_or(Overflow)?);
    }
    if keep {
        w.left = Some((0..nr).map(|i| HashMap::from([(i, T::one())])).collect());
        w.right = Some((0..nc).map(|i| HashMap::from([(i, T::one())])).collect());
    }
    let mut diag: Vec<T> = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // Minimal |entry| in the active block, stopping early on a unit.
        let mut best: Option<(usize, usize, T)> = None;
        'scan: for i in t..nr {
            for (&j, v) in &w.rows[i] {
                if j < t {
                    continue;
                }
                if best.as_ref().is_none_or(|b| v.abs_lt(&b.2)) {
                    best = Some((i, j, v.clone()));
                    if v.is_unit() {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let piv = w.rows[t][&t].clone();
            let mut dirty = false;
            let col_rows: Vec<usize> = w.cols[t].iter().copied().filter(|&i| i > t).collect();
            for i in col_rows {
                let a = w.rows[i][&t].clone();
                let q = a.div_trunc(&piv);
                w.row_add(i, t, &q.neg().ok_or(Overflow)?)?;
                if w.rows[i].contains_key(&t) {
                    dirty = true;
                }
            }
            let row_cols: Vec<usize> = w.rows[t].keys().copied().filter(|&j| j > t).collect();
            for j in row_cols {
                let a = w.rows[t][&j].clone();
                let q = a.div_trunc(&piv);
                w.col_add(j, t, &q.neg().ok_or(Overflow)?)?;
                if w.rows[t].contains_key(&j) {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder smaller than the pivot exists in row or column t.
                let mut best: Option<(usize, usize, T)> = None;
                for &i in w.cols[t].iter() {
                    let v = &w.rows[i][&t];
                    if best.as_ref().is_none_or(|b| v.abs_lt(&b.2)) {
                        best = Some((i, t, v.clone()));
                    }
                }
                for (&j, v) in &w.rows[t] {
                    if best.as_ref().is_none_or(|b| v.abs_lt(&b.2)) {
                        best = Some((t, j, v.clone()));
                    }
                }
                let (bi, bj, _) = best.unwrap();
                w.swap_rows(t, bi);
                w.swap_cols(t, bj);
                continue;
            }
            // Pivot must divide the rest of the active block.
            let mut offender: Option<usize> = None;
            if !piv.is_unit() {
                'outer: for i in (t + 1)..nr {
                    for (&j, v) in &w.rows[i] {
                        if j > t && !v.rem_is_zero(&piv) {
                            offender = Some(i);
                            break 'outer;
                        }
                    }
                }
            }
            match offender {
                Some(i) => {
                    w.row_add(t, i, &T::one())?;
                }
                None => break,
            }
        }
        if w.rows[t][&t].is_negative() {
            w.negate_row(t)?;
        }
        diag.push(w.rows[t][&t].clone());
        t += 1;
    }
    let transforms = if keep {
        let to_mat = |rows: &Vec<HashMap<usize, T>>, n: usize| {
            let mut mm = SparseIntMatrix::zeros(n, n);
            for (i, r) in rows.iter().enumerate() {
                for (j, v) in r {
                    mm.set(i, *j, v.to_big());
                }
            }
            mm
        };
        Some((to_mat(w.left.as_ref().unwrap(), nr), to_mat(w.right.as_ref().unwrap(), nc)))
    } else {
        None
    };
    Ok(SmithForm { diag: diag.iter().map(|d| d.to_big()).collect(), transforms })
}

/// Smith normal form with minimal-absolute-value pivoting.
pub fn smith_normal_form(m: &SparseIntMatrix, keep_transforms: bool) -> SmithForm {
    match snf_generic::<i64>(m, keep_transforms) {
        Ok(s) => s,
        Err(Overflow) => snf_generic::<BigInt>(m, keep_transforms).expect("bigint arithmetic cannot overflow"),
    }
}

/// Invariant factors of a lattice given by generators: the nontrivial
/// (> 1) elementary divisors together with the rank.
fn lattice_invariants(dim: usize, gens: &[SVec<BigInt>]) -> (usize, Vec<BigInt>) {
    let l = UnitLattice::new(dim, gens);
    (l.rank(), l.torsion())
}

/// A finitely presented abelian group Z^generators / (row lattice of `relations`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedAbelianGroup {
    pub generators: usize,
    /// One row per relation.
    pub relations: SparseIntMatrix,
    pub free_rank: usize,
    /// Torsion coefficients, each > 1, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl PresentedAbelianGroup {
    pub fn from_relation_rows(generators: usize, rows: Vec<SVec<BigInt>>) -> Self {
        let (rank, torsion) = lattice_invariants(generators, &rows);
        let relations = SparseIntMatrix::from_sparse_rows(generators, &rows);
        PresentedAbelianGroup { generators, relations, free_rank: generators - rank, torsion }
    }

    /// Same as `from_relation_rows`, reusing an already prepared lattice.
    pub fn from_lattice(lattice: &RelationLattice, rows: &[SVec<BigInt>]) -> Self {
        let generators = lattice.dim();
        let relations = SparseIntMatrix::from_sparse_rows(generators, rows);
        PresentedAbelianGroup { generators, relations, free_rank: generators - lattice.rank(), torsion: lattice.torsion() }
    }

    /// Group with the given invariants and a diagonal relation matrix.
    pub fn from_invariants(free_rank: usize, torsion: &[i64]) -> Self {
        let rows: Vec<SVec<BigInt>> = torsion.iter().enumerate().map(|(i, t)| vec![(i, BigInt::from(*t))]).collect();
        Self::from_relation_rows(free_rank + torsion.len(), rows)
    }

    /// Free rank followed by torsion coefficients, as decimal strings.
    pub fn invariant_factors(&self) -> (usize, Vec<BigInt>) {
        (self.free_rank, self.torsion.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// The quotient of Z^rows by the lattice spanned by the columns of `m`.
pub fn cokernel(m: &SparseIntMatrix) -> PresentedAbelianGroup {
    let cols = m.sparse_columns();
    PresentedAbelianGroup::from_relation_rows(m.rows, cols)
}

pub fn groups_isomorphic(a: &PresentedAbelianGroup, b: &PresentedAbelianGroup) -> bool {
    a.free_rank == b.free_rank && a.torsion == b.torsion
}

/// Decides whether `v` lies in the integer column span of `m`; when it does,
/// returns a preimage `x` with `m * x = v`.
pub fn lattice_membership(v: &[BigInt], m: &SparseIntMatrix) -> Result<Option<Vec<BigInt>>> {
    if v.len() != m.rows {
        return Err(MwError::Dimension { expected: m.rows, got: v.len() });
    }
    let e = echelon_of(m.rows, &m.sparse_columns(), true);
    Ok(membership_in(&e, m.cols, v))
}

/// Membership against a tracked echelon built from `ngens` generators.
pub fn membership_in(e: &Echelon<BigInt>, ngens: usize, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let sv: SVec<BigInt> = v.iter().enumerate().filter(|(_, a)| !Zero::is_zero(*a)).map(|(i, a)| (i, a.clone())).collect();
    let cert = e.reduce(&sv).expect("bigint arithmetic cannot overflow")?;
    let mut x = vec![BigInt::ZERO; ngens];
    for (i, a) in cert {
        x[i] = a;
    }
    Some(x)
}

/// A relation lattice prepared for repeated membership queries.
#[derive(Debug, Clone)]
pub struct RelationLattice {
    dim: usize,
    ngens: usize,
    inner: LatticeImpl,
}

#[derive(Debug, Clone)]
enum LatticeImpl {
    Tracked(Echelon<BigInt>),
    Unit(UnitLattice),
}

impl RelationLattice {
    /// With `track`, the generator combinations are kept so `certificate`
    /// can answer; without it, elimination pivots on unit entries and is
    /// much faster on large sparse systems.
    pub fn new(dim: usize, gens: &[SVec<BigInt>], track: bool) -> Self {
        let inner = if track {
            LatticeImpl::Tracked(echelon_of(dim, gens, true))
        } else {
            LatticeImpl::Unit(UnitLattice::new(dim, gens))
        };
        RelationLattice { dim, ngens: gens.len(), inner }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        match &self.inner {
            LatticeImpl::Tracked(e) => e.rank(),
            LatticeImpl::Unit(u) => u.rank(),
        }
    }

    /// Torsion coefficients of the quotient, each > 1.
    pub fn torsion(&self) -> Vec<BigInt> {
        match &self.inner {
            LatticeImpl::Tracked(e) => {
                let rows: Vec<SVec<BigInt>> = e.basis().map(|(_, v)| v.clone()).collect();
                lattice_invariants(self.dim, &rows).1
            }
            LatticeImpl::Unit(u) => u.torsion(),
        }
    }

    pub fn contains(&self, v: &SVec<BigInt>) -> bool {
        match &self.inner {
            LatticeImpl::Tracked(e) => e.reduce(v).expect("bigint arithmetic cannot overflow").is_some(),
            LatticeImpl::Unit(u) => u.contains(v),
        }
    }

    /// Coefficients on the original generators, if `v` is in the lattice.
    /// Requires a lattice built with `track`.
    pub fn certificate(&self, v: &SVec<BigInt>) -> Option<Vec<BigInt>> {
        let LatticeImpl::Tracked(e) = &self.inner else { return None };
        let mut dense = vec![BigInt::ZERO; self.dim];
        for (i, a) in v {
            dense[*i] += a;
        }
        membership_in(e, self.ngens, &dense)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn snf_small_examples() {
        let s = smith_normal_form(&SparseIntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]), false);
        assert_eq!(s.diag, big(&[1, 6]));
        let s = smith_normal_form(&SparseIntMatrix::zeros(3, 3), false);
        assert!(s.diag.is_empty());
        let s = smith_normal_form(&SparseIntMatrix::from_dense(&[vec![2, 4], vec![6, 8]]), false);
        assert_eq!(s.diag, big(&[2, 4]));
    }

    #[test]
    fn snf_transforms_reconstruct() {
        let a = SparseIntMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&a, true);
        assert_eq!(s.diag, big(&[2, 6, 12]));
        let (l, r) = s.transforms.unwrap();
        let lar = l.mul(&a).unwrap().mul(&r).unwrap();
        assert_eq!(lar, SparseIntMatrix::diagonal(3, 3, &s.diag));
    }

    #[test]
    fn cokernel_examples() {
        let g = cokernel(&SparseIntMatrix::from_dense(&[vec![2]]));
        assert_eq!(g.invariant_factors(), (0, big(&[2])));
        assert!(cokernel(&SparseIntMatrix::identity(2)).is_trivial());
        let g = cokernel(&SparseIntMatrix::from_columns(2, &[vec![2, 0], vec![0, 0]]));
        assert_eq!(g.invariant_factors(), (1, big(&[2])));
    }

    #[test]
    fn membership_examples() {
        let m = SparseIntMatrix::from_dense(&[vec![2]]);
        assert_eq!(lattice_membership(&big(&[4]), &m).unwrap(), Some(big(&[2])));
        assert_eq!(lattice_membership(&big(&[1]), &m).unwrap(), None);
        let m = SparseIntMatrix::from_columns(2, &[vec![1, 2], vec![2, 1]]);
        assert_eq!(lattice_membership(&big(&[3, 3]), &m).unwrap(), Some(big(&[1, 1])));
        assert!(lattice_membership(&big(&[1]), &SparseIntMatrix::zeros(2, 1)).is_err());
    }

    #[test]
    fn isomorphism_examples() {
        let a = PresentedAbelianGroup::from_invariants(1, &[2]);
        let b = cokernel(&SparseIntMatrix::from_columns(2, &[vec![0, 2]]));
        assert!(groups_isomorphic(&a, &b));
        assert!(!groups_isomorphic(&PresentedAbelianGroup::from_invariants(0, &[4]), &PresentedAbelianGroup::from_invariants(0, &[2, 2])));
        let c = cokernel(&SparseIntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]));
        assert!(groups_isomorphic(&c, &PresentedAbelianGroup::from_invariants(0, &[6])));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big_entry = i64::MAX / 3;
        let a = SparseIntMatrix::from_dense(&[vec![big_entry, big_entry - 1], vec![big_entry - 2, big_entry - 5]]);
        let s = smith_normal_form(&a, true);
        let (l, r) = s.transforms.clone().unwrap();
        assert_eq!(l.mul(&a).unwrap().mul(&r).unwrap(), SparseIntMatrix::diagonal(2, 2, &s.diag));
    }
}
