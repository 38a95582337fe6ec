//! Tuples of vectors in general position over F_p and integer chains on them.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{MwError, Result};
use crate::groupring::mod_inv;
use crate::par::{map_indexed, trial_rng, Exec};

pub type Vector = Vec<u64>;

/// Determinant of the square matrix with the given columns, mod p.
pub fn det_mod(cols: &[Vector], p: u64) -> u64 {
    let n = cols.len();
    let mut m: Vec<Vec<u64>> = (0..n).map(|i| cols.iter().map(|c| c[i] % p).collect()).collect();
    let mut det = 1u64;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| m[r][c] != 0) else { return 0 };
        if r != c {
            m.swap(r, c);
            det = (p - det) % p;
        }
        det = det * m[c][c] % p;
        let inv = mod_inv(m[c][c], p);
        for r in c + 1..n {
            let f = m[r][c] * inv % p;
            if f != 0 {
                for k in c..n {
                    m[r][k] = (m[r][k] + (p - f) * m[c][k]) % p;
                }
            }
        }
    }
    det
}

/// Rank of a list of vectors (all of the same length), mod p.
pub fn rank_mod(vecs: &[&[u64]], p: u64) -> usize {
    let mut rows: Vec<Vec<u64>> = vecs.iter().map(|v| v.iter().map(|x| x % p).collect()).collect();
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..width {
        let Some(r) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(r, rank);
        let inv = mod_inv(rows[rank][c], p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] * inv % p;
                for k in c..width {
                    rows[r][k] = (rows[r][k] + (p - f) * rows[rank][k]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `A x = v` for the matrix with columns `cols`; `None` if singular.
pub fn solve_mod(cols: &[Vector], v: &[u64], p: u64) -> Option<Vector> {
    let n = cols.len();
    let mut m: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut row: Vec<u64> = cols.iter().map(|c| c[i] % p).collect();
            row.push(v[i] % p);
            row
        })
        .collect();
    for c in 0..n {
        let r = (c..n).find(|&r| m[r][c] != 0)?;
        m.swap(r, c);
        let inv = mod_inv(m[c][c], p);
        for k in c..=n {
            m[c][k] = m[c][k] * inv % p;
        }
        for r in 0..n {
            if r != c && m[r][c] != 0 {
                let f = m[r][c];
                for k in c..=n {
                    m[r][k] = (m[r][k] + (p - f) * m[c][k]) % p;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n]).collect())
}

/// Inverse of the matrix with columns `cols`, returned as columns.
pub fn inverse_mod(cols: &[Vector], p: u64) -> Option<Vec<Vector>> {
    let n = cols.len();
    (0..n)
        .map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            solve_mod(cols, &e, p)
        })
        .collect()
}

/// Product of matrices given by columns.
pub fn matmul_mod(a: &[Vector], b: &[Vector], p: u64) -> Vec<Vector> {
    b.iter().map(|col| apply_mod(a, col, p)).collect()
}

/// `A v` for `A` given by columns.
pub fn apply_mod(a: &[Vector], v: &[u64], p: u64) -> Vector {
    let rows = a.first().map_or(0, |c| c.len());
    let mut out = vec![0u64; rows];
    for (c, x) in a.iter().zip(v) {
        for (o, y) in out.iter_mut().zip(c) {
            *o = (*o + y * x) % p;
        }
    }
    out
}

/// Whether every subset of size min(q, dim) of `vecs` is linearly independent.
pub fn in_general_position(vecs: &[&[u64]], dim: usize, p: u64) -> bool {
    let q = vecs.len();
    if q <= dim {
        return rank_mod(vecs, p) == q;
    }
    let mut idx: Vec<usize> = (0..dim).collect();
    loop {
        let cols: Vec<Vector> = idx.iter().map(|&i| vecs[i].to_vec()).collect();
        if dim > 0 && det_mod(&cols, p) == 0 {
            return false;
        }
        let mut k = dim;
        loop {
            if k == 0 {
                return true;
            }
            k -= 1;
            if idx[k] < q - dim + k {
                idx[k] += 1;
                for j in k + 1..dim {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// An ordered tuple ((w_1,v_1),…,(w_q,v_q)) in W ⊕ V; each vector stores the
/// W coordinates first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GPTuple {
    pub p: u64,
    pub wdim: usize,
    pub vdim: usize,
    pub vecs: Vec<Vector>,
}

impl GPTuple {
    pub fn new(p: u64, wdim: usize, vdim: usize, vecs: Vec<Vector>) -> Result<Self> {
        let t = GPTuple { p, wdim, vdim, vecs: vecs.into_iter().map(|v| v.into_iter().map(|x| x % p).collect()).collect() };
        for v in &t.vecs {
            if v.len() != wdim + vdim {
                return Err(MwError::Dimension { expected: wdim + vdim, got: v.len() });
            }
        }
        if !t.is_general_position() {
            return Err(MwError::GeneralPosition(format!("{t} is not in general position")));
        }
        Ok(t)
    }

    /// A tuple in V = F_p^n.
    pub fn in_v(p: u64, vecs: Vec<Vector>) -> Result<Self> {
        let n = vecs.first().map_or(0, |v| v.len());
        Self::new(p, 0, n, vecs)
    }

    pub fn len(&self) -> usize {
        self.vecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vecs.is_empty()
    }

    fn v_parts(&self) -> Vec<&[u64]> {
        self.vecs.iter().map(|v| &v[self.wdim..]).collect()
    }

    pub fn is_general_position(&self) -> bool {
        in_general_position(&self.v_parts(), self.vdim, self.p)
    }

    pub fn face(&self, i: usize) -> GPTuple {
        let mut vecs = self.vecs.clone();
        vecs.remove(i);
        GPTuple { vecs, ..self.clone() }
    }

    /// Appends (0, v) when the result is in general position.
    pub fn extend(&self, v: &[u64]) -> Option<GPTuple> {
        let mut full = vec![0u64; self.wdim];
        full.extend(v.iter().map(|x| x % self.p));
        let mut vecs = self.vecs.clone();
        vecs.push(full);
        let t = GPTuple { vecs, ..self.clone() };
        t.is_general_position().then_some(t)
    }
}

impl fmt::Display for GPTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vecs
            .iter()
            .map(|v| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// A finitely supported integer combination of tuples of one length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub p: u64,
    pub wdim: usize,
    pub vdim: usize,
    pub len: usize,
    terms: BTreeMap<Vec<Vector>, i64>,
}

impl Chain {
    pub fn zero(p: u64, wdim: usize, vdim: usize, len: usize) -> Self {
        Chain { p, wdim, vdim, len, terms: BTreeMap::new() }
    }

    pub fn from_tuple(t: &GPTuple) -> Self {
        let mut c = Self::zero(t.p, t.wdim, t.vdim, t.len());
        c.add_term(t.vecs.clone(), 1);
        c
    }

    fn add_term(&mut self, key: Vec<Vector>, k: i64) {
        if k == 0 {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e = e.checked_add(k).expect("chain coefficient overflow");
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add_tuple(&mut self, t: &GPTuple, k: i64) -> Result<()> {
        if (t.p, t.wdim, t.vdim, t.len()) != (self.p, self.wdim, self.vdim, self.len) {
            return Err(MwError::Input(format!("tuple {t} does not belong to this chain group")));
        }
        self.add_term(t.vecs.clone(), k);
        Ok(())
    }

    pub fn add(&self, o: &Chain) -> Result<Chain> {
        if (o.p, o.wdim, o.vdim, o.len) != (self.p, self.wdim, self.vdim, self.len) {
            return Err(MwError::Input("chains live in different groups".into()));
        }
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), *c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Chain {
        let mut out = Self::zero(self.p, self.wdim, self.vdim, self.len);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c.checked_mul(k).expect("chain coefficient overflow"));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (GPTuple, i64)> + '_ {
        self.terms
            .iter()
            .map(|(v, c)| (GPTuple { p: self.p, wdim: self.wdim, vdim: self.vdim, vecs: v.clone() }, *c))
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(t, c)| format!("{c}*{t}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The simplicial boundary: the alternating sum of face deletions.
pub fn boundary(c: &Chain) -> Result<Chain> {
    if c.len == 0 {
        return Err(MwError::Degree("the empty tuple has no boundary".into()));
    }
    let mut out = Chain::zero(c.p, c.wdim, c.vdim, c.len - 1);
    for (vecs, k) in &c.terms {
        for i in 0..vecs.len() {
            let mut face = vecs.clone();
            face.remove(i);
            out.add_term(face, if i % 2 == 0 { *k } else { -*k });
        }
    }
    Ok(out)
}

/// The partial homotopy s_v, appending (0, v). Every tuple in the support
/// must stay in general position.
pub fn homotopy(c: &Chain, v: &[u64]) -> Result<Chain> {
    if v.len() != c.vdim {
        return Err(MwError::Dimension { expected: c.vdim, got: v.len() });
    }
    let mut out = Chain::zero(c.p, c.wdim, c.vdim, c.len + 1);
    for (t, k) in c.terms() {
        let Some(s) = t.extend(v) else {
            let vs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            return Err(MwError::GeneralPosition(format!("({}) is not in general position with {t}", vs.join(","))));
        };
        out.add_term(s.vecs, k);
    }
    Ok(out)
}

/// Whether `v` may be appended to every tuple of the chain.
pub fn admissible_vector(c: &Chain, v: &[u64]) -> bool {
    c.terms().all(|(t, _)| t.extend(v).is_some())
}

/// The preimage (−1)^q s_v(z) of a cycle z of length q.
pub fn contract_cycle(z: &Chain, v: &[u64]) -> Result<Chain> {
    let s = homotopy(z, v)?;
    Ok(if z.len % 2 == 0 { s } else { s.scale(-1) })
}

pub fn random_vector<R: Rng + ?Sized>(p: u64, dim: usize, rng: &mut R) -> Vector {
    (0..dim).map(|_| rng.random_range(0..p)).collect()
}

/// Draws a vector admissible for every tuple of `c`.
pub fn random_admissible<R: Rng + ?Sized>(c: &Chain, rng: &mut R, attempts: usize) -> Result<Vector> {
    for _ in 0..attempts {
        let v = random_vector(c.p, c.vdim, rng);
        if admissible_vector(c, &v) {
            return Ok(v);
        }
    }
    Err(MwError::Sampling(format!("no admissible vector found in {attempts} draws")))
}

/// A random tuple of `q` vectors in W ⊕ V with V-parts in general position.
pub fn random_gp_tuple<R: Rng + ?Sized>(p: u64, wdim: usize, vdim: usize, q: usize, rng: &mut R) -> Result<GPTuple> {
    let mut vecs: Vec<Vector> = Vec::with_capacity(q);
    let mut tries = 0;
    while vecs.len() < q {
        tries += 1;
        if tries > 10_000 {
            return Err(MwError::Sampling(format!("cannot place {q} vectors in general position in F_{p}^{vdim}")));
        }
        let v = random_vector(p, wdim + vdim, rng);
        vecs.push(v);
        let parts: Vec<&[u64]> = vecs.iter().map(|v| &v[wdim..]).collect();
        if !in_general_position(&parts, vdim, p) {
            vecs.pop();
        }
    }
    GPTuple::new(p, wdim, vdim, vecs)
}

/// All nonzero vectors of F_p^dim, in lexicographic order.
pub fn nonzero_vectors(p: u64, dim: usize) -> Vec<Vector> {
    let total = p.pow(dim as u32);
    (1..total)
        .map(|mut k| {
            let mut v = vec![0u64; dim];
            for i in (0..dim).rev() {
                v[i] = k % p;
                k /= p;
            }
            v
        })
        .collect()
}

/// Number of tuples of length q in general position in F_p^n. For q > n
/// every tuple is a GL_n-translate of exactly one tuple starting with the
/// standard basis, so those extensions are counted and multiplied by |GL_n|.
pub fn count_tuples(p: u64, n: usize, q: usize) -> u64 {
    let pn = p.saturating_pow(n as u32);
    let independent = |k: usize| (0..k).fold(1u64, |acc, i| acc.saturating_mul(pn - p.pow(i as u32)));
    if q <= n {
        return independent(q);
    }
    let mut ext = 0u64;
    for_each_tuple(p, n, q, &standard_basis(n), &mut |_| ext += 1);
    independent(n).saturating_mul(ext)
}

/// Visits every tuple of length q in general position in F_p^n whose
/// first min(q, n) vectors are the prefix `start` (all tuples when `start`
/// is empty).
pub fn for_each_tuple(p: u64, n: usize, q: usize, start: &[Vector], f: &mut dyn FnMut(&[Vector])) {
    let pool = nonzero_vectors(p, n);
    let mut stack: Vec<Vector> = start.to_vec();
    fn rec(pool: &[Vector], stack: &mut Vec<Vector>, n: usize, q: usize, p: u64, f: &mut dyn FnMut(&[Vector])) {
        if stack.len() == q {
            f(stack);
            return;
        }
        for v in pool {
            stack.push(v.clone());
            let parts: Vec<&[u64]> = stack.iter().map(|v| v.as_slice()).collect();
            if in_general_position(&parts, n, p) {
                rec(pool, stack, n, q, p, f);
            }
            stack.pop();
        }
    }
    rec(&pool, &mut stack, n, q, p, f);
}

pub fn standard_basis(n: usize) -> Vec<Vector> {
    (0..n)
        .map(|i| {
            let mut e = vec![0u64; n];
            e[i] = 1;
            e
        })
        .collect()
}

/// Result of a d∘d sweep over C_q(F_p^n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DdReport {
    pub p: u64,
    pub n: usize,
    pub q: usize,
    /// Tuples checked.
    pub checked: u64,
    /// Whether every tuple was visited or only GL_n-orbit representatives.
    pub exhaustive: bool,
    pub failures: u64,
}

/// Tuple count above which d∘d is checked on GL_n-orbit representatives.
pub const DD_EXHAUSTIVE_LIMIT: u64 = 2_000_000;

/// Checks d∘d = 0 on basis tuples of C_q(F_p^n). Small groups are swept
/// completely; larger ones on the tuples that start with the standard basis
/// (one per GL_n-orbit, since d commutes with the GL_n action).
pub fn dd_sweep(p: u64, n: usize, q: usize) -> Result<DdReport> {
    if q < 2 {
        return Err(MwError::Degree("d∘d needs tuples of length at least 2".into()));
    }
    let exhaustive = count_tuples(p, n, q) <= DD_EXHAUSTIVE_LIMIT;
    let start: Vec<Vector> = if exhaustive { vec![] } else { standard_basis(n)[..n.min(q)].to_vec() };
    let mut checked = 0u64;
    let mut failures = 0u64;
    for_each_tuple(p, n, q, &start, &mut |vecs| {
        checked += 1;
        let t = GPTuple { p, wdim: 0, vdim: n, vecs: vecs.to_vec() };
        let dd = boundary(&boundary(&Chain::from_tuple(&t)).expect("length ≥ 2")).expect("length ≥ 1");
        if !dd.is_zero() {
            failures += 1;
        }
    });
    Ok(DdReport { p, n, q, checked, exhaustive, failures })
}

/// Result of checking z = d((−1)^q s_v z) on random cycles of n-tuples in F_p^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyReport {
    pub p: u64,
    pub n: usize,
    pub trials: usize,
    pub failures: usize,
    pub redraws: usize,
}

/// Random cycles are boundaries of one to three random (n+1)-tuples with
/// small coefficients; each is contracted with a random admissible vector and
/// the boundary compared. Cycles admitting no such vector are redrawn, and the
/// number of redraws is reported.
pub fn homotopy_sweep(p: u64, n: usize, trials: usize, seed: u64, exec: Exec) -> Result<HomotopyReport> {
    let outcomes: Vec<Result<(bool, usize)>> = map_indexed(exec, trials, |t| {
        let mut rng = trial_rng(seed, t as u64);
        for redraw in 0..HOMOTOPY_REDRAWS {
            let mut c = Chain::zero(p, 0, n, n + 1);
            for _ in 0..rng.random_range(1..=3) {
                let k = rng.random_range(1..=3) * if rng.random_bool(0.5) { 1 } else { -1 };
                c.add_tuple(&random_gp_tuple(p, 0, n, n + 1, &mut rng)?, k)?;
            }
            let z = boundary(&c)?;
            if z.is_zero() {
                continue;
            }
            match random_admissible(&z, &mut rng, 1000) {
                Ok(v) => return Ok((boundary(&contract_cycle(&z, &v)?)? == z, redraw)),
                Err(MwError::Sampling(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(MwError::Sampling(format!("no cycle with an admissible vector in {HOMOTOPY_REDRAWS} draws")))
    });
    let mut failures = 0;
    let mut redraws = 0;
    for o in outcomes {
        let (ok, r) = o?;
        redraws += r;
        if !ok {
            failures += 1;
        }
    }
    Ok(HomotopyReport { p, n, trials, failures, redraws })
}

const HOMOTOPY_REDRAWS: usize = 200;

/// The inclusion C_•(V) → C_•(W, V), placing every vector at w = 0.
pub fn include_in_w(c: &Chain, wdim: usize) -> Result<Chain> {
    if c.wdim != 0 {
        return Err(MwError::Input("chain already has a W part".into()));
    }
    let mut out = Chain::zero(c.p, wdim, c.vdim, c.len);
    for (t, k) in c.terms() {
        let vecs = t
            .vecs
            .iter()
            .map(|v| {
                let mut full = vec![0u64; wdim];
                full.extend(v.iter().copied());
                full
            })
            .collect();
        out.add_term(vecs, k);
    }
    Ok(out)
}
