//! Orbit normal forms and the two models of S̃(F_p^n): the presentation by
//! generators and relation instances, and the direct computation of the
//! SL_n-coinvariants of im d_{n+1}.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::chain::{
    apply_mod, boundary, contract_cycle, det_mod, inverse_mod, matmul_mod, nonzero_vectors, standard_basis, Chain, GPTuple, Vector,
};
use super::symbols::{relation_instance, SymbolElem};
use crate::error::{MwError, Result};
use crate::exactla::{echelon_of, Echelon, PresentedAbelianGroup, RelationLattice};
use crate::groupring::{FieldSpec, GroupRingElem, UnitRep};

/// Normal form of a tuple (v_1,…,v_n,v) under SL_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitNormal {
    pub det: u64,
    pub w: Vec<u64>,
    /// B = diag(1,…,1,det A)·A⁻¹ in SL_n, as columns.
    pub certificate: Vec<Vector>,
}

/// For x = (v_1,…,v_n,v) with A = [v_1|⋯|v_n] invertible, d(x) represents
/// ⟨det A⟩[[A⁻¹v]]. The certificate B is checked to lie in SL_n and to send
/// x to (e_1,…,e_{n−1}, det A·e_n, diag(1,…,det A)·w).
pub fn orbit_normalize(x: &GPTuple) -> Result<OrbitNormal> {
    let n = x.vdim;
    if x.wdim != 0 || x.len() != n + 1 {
        return Err(MwError::Dimension { expected: n + 1, got: x.len() });
    }
    let p = x.p;
    let a: Vec<Vector> = x.vecs[..n].to_vec();
    let det = det_mod(&a, p);
    let ainv = inverse_mod(&a, p).ok_or_else(|| MwError::GeneralPosition(format!("leading block of {x} is singular")))?;
    let w = apply_mod(&ainv, &x.vecs[n], p);
    let mut scale = standard_basis(n);
    scale[n - 1][n - 1] = det;
    let b = matmul_mod(&scale, &ainv, p);
    if det_mod(&b, p) != 1 {
        return Err(MwError::Invariant(format!("certificate for {x} is not in SL_n")));
    }
    let image = matmul_mod(&b, &x.vecs, p);
    let mut expected = scale.clone();
    expected.push(apply_mod(&scale, &w, p));
    if image != expected {
        return Err(MwError::Invariant(format!("certificate for {x} does not reach the normal form")));
    }
    Ok(OrbitNormal { det, w, certificate: b })
}

fn fp_unit(p: u64, r: u64) -> UnitRep {
    UnitRep::Fp(r % p)
}

/// The class in S̃ of d(y) for a chain y of (n+1)-tuples in F_p^n.
pub fn chain_class(y: &Chain) -> Result<SymbolElem> {
    if y.wdim != 0 || y.len != y.vdim + 1 {
        return Err(MwError::Dimension { expected: y.vdim + 1, got: y.len });
    }
    let f = FieldSpec::Fp(y.p);
    let mut out = SymbolElem::zero(f, y.vdim);
    for (t, k) in y.terms() {
        let o = orbit_normalize(&t)?;
        let w: Vec<UnitRep> = o.w.iter().map(|r| fp_unit(y.p, *r)).collect();
        out.add_term(w, &GroupRingElem::basis(f, &fp_unit(y.p, o.det)).scale(&BigInt::from(k)))?;
    }
    Ok(out)
}

/// D on chains of n-tuples: Σ k ⟨det⟩.
pub fn d_chain(z: &Chain) -> Result<GroupRingElem> {
    if z.len != z.vdim {
        return Err(MwError::Dimension { expected: z.vdim, got: z.len });
    }
    let f = FieldSpec::Fp(z.p);
    let mut out = GroupRingElem::zero(f);
    for (t, k) in z.terms() {
        out.add_term(fp_unit(z.p, det_mod(&t.vecs, z.p)), BigInt::from(k));
    }
    Ok(out)
}

/// The (n+1)-tuple (e_1,…,c·e_1,…,e_n, a) with c·a_1 in the first slot,
/// whose boundary represents ⟨c⟩[[a]].
pub fn generator_tuple(p: u64, c: u64, a: &[u64]) -> Result<GPTuple> {
    let n = a.len();
    let mut vecs = standard_basis(n);
    vecs[0][0] = c % p;
    let mut v = a.to_vec();
    v[0] = v[0] * c % p;
    vecs.push(v);
    GPTuple::in_v(p, vecs)
}

/// A chain of (n+1)-tuples whose boundary represents `x`.
pub fn lift_to_chain(x: &SymbolElem) -> Result<Chain> {
    let FieldSpec::Fp(p) = x.field else { return Err(MwError::Unsupported("chains are modeled over F_p only".into())) };
    let mut out = Chain::zero(p, 0, x.n, x.n + 1);
    for (a, c) in x.terms() {
        let ar: Vec<u64> = a.iter().map(|u| u.residue().expect("F_p unit")).collect();
        for (u, k) in c.terms() {
            let t = generator_tuple(p, u.residue().expect("F_p unit"), &ar)?;
            out.add_tuple(&t, i64::try_from(k).map_err(|_| MwError::Unsupported("coefficient too large".into()))?)?;
        }
    }
    Ok(out)
}

/// The cycle d(lift) representing `x` in H(F_p^n).
pub fn cycle_of(x: &SymbolElem) -> Result<Chain> {
    boundary(&lift_to_chain(x)?)
}

/// Class of a cycle z of n-tuples, via the homotopy with vector v.
pub fn cycle_class(z: &Chain, v: &[u64]) -> Result<SymbolElem> {
    chain_class(&contract_cycle(z, v)?)
}

/// Coordinates of S̃ symbols: ⟨u⟩[[a_1,…,a_n]] is indexed in mixed radix
/// (u, a_1, …, a_n), each unit r ∈ F_p× contributing the digit r − 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolIndex {
    pub p: u64,
    pub n: usize,
}

impl SymbolIndex {
    pub fn size(&self) -> usize {
        ((self.p - 1) as usize).pow(self.n as u32 + 1)
    }

    pub fn index(&self, u: u64, a: &[u64]) -> usize {
        let base = (self.p - 1) as usize;
        let mut idx = (u - 1) as usize;
        for x in a {
            idx = idx * base + (*x - 1) as usize;
        }
        idx
    }

    pub fn coords(&self, x: &SymbolElem) -> Result<Vec<(usize, BigInt)>> {
        if x.field != FieldSpec::Fp(self.p) || x.n != self.n {
            return Err(MwError::Input(format!("element of degree {} over {} is not in the F_{} model of degree {}", x.n, x.field, self.p, self.n)));
        }
        let mut out: std::collections::BTreeMap<usize, BigInt> = Default::default();
        for (a, c) in x.terms() {
            let ar: Vec<u64> = a.iter().map(|u| u.residue().expect("F_p unit")).collect();
            for (u, k) in c.terms() {
                *out.entry(self.index(u.residue().expect("F_p unit"), &ar)).or_default() += k;
            }
        }
        Ok(out.into_iter().filter(|(_, k)| !k.is_zero()).collect())
    }
}

/// Largest relation count accepted by the presented model.
pub const PRESENTED_ROW_LIMIT: usize = 1_000_000;
/// Largest |X_{n+1}(F_p^n)| accepted by the direct model.
pub const DIRECT_TUPLE_LIMIT: usize = 200_000;

fn check_model_params(p: u64, n: usize) -> Result<FieldSpec> {
    let f = FieldSpec::fp(p)?;
    if n == 0 {
        return Err(MwError::Degree("n must be positive".into()));
    }
    if p > 13 || n > 3 {
        return Err(MwError::Budget(format!("S̃ models are limited to p ≤ 13 and n ≤ 3 (got p = {p}, n = {n})")));
    }
    if ((p - 1) as usize) < n {
        return Err(MwError::Sampling(format!("F_{p} has fewer than {n} distinct units")));
    }
    Ok(f)
}

fn tuples_of_units(p: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u64>| {
                (1..p).map(move |r| {
                    let mut w = v.clone();
                    w.push(r);
                    w
                })
            })
            .collect();
    }
    out
}

/// S̃(F_p^n) presented over Z by restriction of scalars.
#[derive(Debug, Clone)]
pub struct StildeModel {
    pub p: u64,
    pub n: usize,
    pub index: SymbolIndex,
    /// One row per relation instance ⟨c⟩·R(a, b).
    pub relations: Vec<Vec<(usize, BigInt)>>,
    pub group: PresentedAbelianGroup,
    lattice: RelationLattice,
    pub millis: u128,
}

/// Number of relation rows of the presented model.
pub fn presented_row_count(p: u64, n: usize) -> usize {
    let m = (p - 1) as usize;
    let distinct: usize = (0..n).map(|i| m.saturating_sub(i)).product();
    m.pow(n as u32) * distinct * m
}

pub fn stilde_presented(p: u64, n: usize) -> Result<StildeModel> {
    let f = check_model_params(p, n)?;
    let rows_needed = presented_row_count(p, n);
    if rows_needed > PRESENTED_ROW_LIMIT {
        return Err(MwError::Budget(format!("{rows_needed} relation rows exceed the limit {PRESENTED_ROW_LIMIT}")));
    }
    let start = Instant::now();
    let index = SymbolIndex { p, n };
    let units = tuples_of_units(p, n);
    let bs: Vec<&Vec<u64>> = units.iter().filter(|b| (0..n).all(|i| (0..i).all(|j| b[i] != b[j]))).collect();
    let mut relations = Vec::with_capacity(rows_needed);
    for a in &units {
        let au: Vec<UnitRep> = a.iter().map(|r| UnitRep::Fp(*r)).collect();
        for b in &bs {
            let bu: Vec<UnitRep> = b.iter().map(|r| UnitRep::Fp(*r)).collect();
            let r = relation_instance(f, &au, &bu)?;
            for c in 1..p {
                relations.push(index.coords(&r.act(&GroupRingElem::basis(f, &UnitRep::Fp(c)))?)?);
            }
        }
    }
    let lattice = RelationLattice::new(index.size(), &relations, false);
    let group = PresentedAbelianGroup::from_lattice(&lattice, &relations);
    Ok(StildeModel { p, n, index, relations, group, lattice, millis: start.elapsed().as_millis() })
}

impl StildeModel {
    pub fn field(&self) -> FieldSpec {
        FieldSpec::Fp(self.p)
    }

    /// Whether x = 0 in S̃(F_p^n).
    pub fn is_zero(&self, x: &SymbolElem) -> Result<bool> {
        Ok(self.lattice.contains(&self.index.coords(x)?))
    }

    pub fn equal(&self, x: &SymbolElem, y: &SymbolElem) -> Result<bool> {
        self.is_zero(&x.sub(y)?)
    }

    /// Membership modulo the relations together with extra generators.
    pub fn lattice_with(&self, extra: &[SymbolElem]) -> Result<RelationLattice> {
        let mut gens = self.relations.clone();
        for e in extra {
            gens.push(self.index.coords(e)?);
        }
        Ok(RelationLattice::new(self.index.size(), &gens, false))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "n": self.n,
            "generators": self.index.size(),
            "relation_matrix_shape": [self.relations.len(), self.index.size()],
            "invariant_factors": invariants_json(&self.group),
            "timings": {"build_ms": self.millis as u64},
        })
    }
}

pub fn invariants_json(g: &PresentedAbelianGroup) -> Value {
    json!({
        "free_rank": g.free_rank,
        "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "describe": g.describe(),
    })
}

/// ker d_n / im d_{n+1} in C_n(F_p^n), before coinvariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KerImDiagnostic {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl KerImDiagnostic {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({"free_rank": self.free_rank, "torsion": self.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>()})
    }
}

#[derive(Debug, Clone)]
pub struct StildeDirect {
    pub p: u64,
    pub n: usize,
    pub index: SymbolIndex,
    /// |X_n| and |X_{n+1}|.
    pub tuple_counts: (usize, usize),
    /// Generators of π(ker d_{n+1}) in symbol coordinates.
    pub relations: Vec<Vec<(usize, BigInt)>>,
    pub group: PresentedAbelianGroup,
    pub ker_vs_im: KerImDiagnostic,
    pub millis: u128,
}

impl StildeDirect {
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "n": self.n,
            "generators": self.index.size(),
            "relation_matrix_shape": [self.relations.len(), self.index.size()],
            "tuples": {"top": self.tuple_counts.0, "above_top": self.tuple_counts.1},
            "invariant_factors": invariants_json(&self.group),
            "diagnostics": {"ker_vs_im": self.ker_vs_im.to_json()},
            "timings": {"build_ms": self.millis as u64},
        })
    }
}

/// All ordered bases of F_p^n (elements of GL_n as column lists).
fn ordered_bases(p: u64, n: usize) -> Vec<Vec<Vector>> {
    let pool = nonzero_vectors(p, n);
    let mut out = Vec::new();
    let mut stack: Vec<Vector> = Vec::new();
    fn rec(pool: &[Vector], stack: &mut Vec<Vector>, n: usize, p: u64, out: &mut Vec<Vec<Vector>>) {
        if stack.len() == n {
            out.push(stack.clone());
            return;
        }
        for v in pool {
            stack.push(v.clone());
            let parts: Vec<&[u64]> = stack.iter().map(|v| v.as_slice()).collect();
            if super::chain::rank_mod(&parts, p) == stack.len() {
                rec(pool, stack, n, p, out);
            }
            stack.pop();
        }
    }
    rec(&pool, &mut stack, n, p, &mut out);
    out
}

fn ordered_independent(p: u64, n: usize, k: usize) -> Vec<Vec<Vector>> {
    let mut out = Vec::new();
    super::chain::for_each_tuple(p, n, k, &[], &mut |t| out.push(t.to_vec()));
    out
}

/// Size of X_{n+1}(F_p^n) = |GL_n(F_p)|·(p−1)^n.
pub fn direct_tuple_count(p: u64, n: usize) -> usize {
    let pn = p.pow(n as u32);
    let gl: u64 = (0..n).map(|i| pn - p.pow(i as u32)).product();
    (gl as usize).saturating_mul(((p - 1) as usize).pow(n as u32))
}

/// (im d_{n+1})_{SL_n}, computed as (C_{n+1})_{SL_n} modulo the image of
/// ker d_{n+1}. The kernel image is read off an echelon basis of the
/// vectors (d(x); π(x)), x ∈ X_{n+1}, with the d coordinates ordered first:
/// basis vectors whose pivot lies in the π block span π(ker d_{n+1}).
pub fn stilde_direct(p: u64, n: usize) -> Result<StildeDirect> {
    check_model_params(p, n)?;
    let count = direct_tuple_count(p, n);
    if count > DIRECT_TUPLE_LIMIT {
        return Err(MwError::Budget(format!("{count} tuples exceed the direct-model limit {DIRECT_TUPLE_LIMIT}")));
    }
    let start = Instant::now();
    let index = SymbolIndex { p, n };
    let bases = ordered_bases(p, n);
    let g = bases.len();
    let pos: HashMap<Vec<Vector>, usize> = bases.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
    let units = tuples_of_units(p, n);
    let mut gens: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(g * units.len());
    for a in &bases {
        let det = det_mod(a, p);
        for w in &units {
            let v = apply_mod(a, w, p);
            let mut row: Vec<(usize, i64)> = Vec::with_capacity(n + 2);
            for i in 0..n {
                let mut face: Vec<Vector> = a.clone();
                face.remove(i);
                face.push(v.clone());
                row.push((pos[&face], if i % 2 == 0 { 1 } else { -1 }));
            }
            row.push((pos[a], if n % 2 == 0 { 1 } else { -1 }));
            row.sort();
            let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(n + 2);
            for (i, k) in row {
                match merged.last_mut() {
                    Some((j, c)) if *j == i => *c += k,
                    _ => merged.push((i, BigInt::from(k))),
                }
            }
            merged.retain(|(_, c)| !c.is_zero());
            merged.push((g + index.index(det, w), BigInt::one()));
            gens.push(merged);
        }
    }
    let ech = echelon_of(g + index.size(), &gens, false);
    let mut relations = Vec::new();
    let mut image_rows = Vec::new();
    for (&pivot, row) in ech.basis() {
        if pivot >= g {
            relations.push(row.iter().map(|(i, c)| (i - g, c.clone())).collect::<Vec<_>>());
        } else {
            image_rows.push(row.iter().filter(|(i, _)| *i < g).cloned().collect::<Vec<_>>());
        }
    }
    let group = PresentedAbelianGroup::from_relation_rows(index.size(), relations.clone());
    let ker_vs_im = homology_at_top(p, n, &bases, &image_rows, &ech)?;
    Ok(StildeDirect { p, n, index, tuple_counts: (g, gens.len()), relations, group, ker_vs_im, millis: start.elapsed().as_millis() })
}

/// ker d_n / im d_{n+1}: its rank is |X_n| − rk d_n − rk d_{n+1} and its
/// torsion is that of C_n / im d_{n+1}.
fn homology_at_top(
    p: u64,
    n: usize,
    bases: &[Vec<Vector>],
    image_rows: &[Vec<(usize, BigInt)>],
    ech: &Echelon<BigInt>,
) -> Result<KerImDiagnostic> {
    let g = bases.len();
    let lower = ordered_independent(p, n, n - 1);
    let lpos: HashMap<Vec<Vector>, usize> = lower.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
    let mut dn_rows = Vec::with_capacity(g);
    for a in bases {
        let mut row: Vec<(usize, BigInt)> = (0..n)
            .map(|i| {
                let mut face = a.clone();
                face.remove(i);
                (lpos[&face], BigInt::from(if i % 2 == 0 { 1 } else { -1 }))
            })
            .collect();
        row.sort();
        dn_rows.push(row);
    }
    let rank_dn = echelon_of(lower.len().max(1), &dn_rows, false).rank();
    let rank_im = image_rows.len();
    let free_rank = g - rank_dn - rank_im;
    let unit_pivots = ech.basis().filter(|(pv, _)| **pv < g).all(|(_, row)| {
        let c = &row[0].1;
        c.is_one() || *c == -BigInt::one()
    });
    let torsion = if unit_pivots { vec![] } else { PresentedAbelianGroup::from_relation_rows(g, image_rows.to_vec()).torsion };
    Ok(KerImDiagnostic { free_rank, torsion })
}
