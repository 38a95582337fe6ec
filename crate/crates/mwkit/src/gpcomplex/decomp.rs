//! Decomposability: the span S̃_dec(F_p^n) of products of lower-degree
//! generators, the free symbol algebra with its map Π, and the chain-level
//! representation of [[1,a_1]]∗⋯∗[[1,a_k]] by ∏ L(a_i).

use std::time::Instant;

use super::chain::{boundary, contract_cycle, Chain, GPTuple};
use super::model::{chain_class, stilde_presented, StildeModel};
use super::product::{chain_star, star};
use super::symbols::{l_elem, relation_instance, SymbolElem};
use crate::error::{MwError, Result};
use crate::exactla::RelationLattice;
use crate::groupring::{FieldSpec, GroupRingElem, UnitRep};

/// R_b = ⟨b⟩-f − ⟨1,…,1⟩-f − Σ_j (−1)^{n+j} ⟨(−1)^{n+j}⟩ ⟨b_1−b_j,…,b_j⟩-f,
/// the relation instance at a = (1,…,1) read in the free symbol module.
pub fn r_b(f: FieldSpec, b: &[UnitRep]) -> Result<SymbolElem> {
    relation_instance(f, &vec![f.one(); b.len()], b)
}

/// Π_n(R_b) with b_i = i, as the coefficient of xⁿ.
pub fn pi_of_r_default(f: FieldSpec, n: usize) -> Result<GroupRingElem> {
    let b: Vec<UnitRep> = (1..=n as i64).map(|i| f.unit(i)).collect::<Result<_>>()?;
    super::symbols::pi_map(&r_b(f, &b)?)
}

/// The product of L(a_i) in the free symbol algebra (concatenation).
pub fn l_product(f: FieldSpec, a: &[UnitRep]) -> Result<SymbolElem> {
    let mut acc: Option<SymbolElem> = None;
    for x in a {
        let l = l_elem(f, x)?;
        acc = Some(match acc {
            None => l,
            Some(s) => s.concat(&l)?,
        });
    }
    acc.ok_or_else(|| MwError::Degree("empty product".into()))
}

/// The cycle d_3(e_1, e_2, e_1 + a·e_2) representing [[1,a]] in F_p².
pub fn one_a_cycle(p: u64, a: u64) -> Result<Chain> {
    let t = GPTuple::in_v(p, vec![vec![1, 0], vec![0, 1], vec![1, a % p]])?;
    boundary(&Chain::from_tuple(&t))
}

/// The class of [[1,a_1]]∗⋯∗[[1,a_k]] obtained on chains with the homotopy
/// vector e = (1,…,1), returned formally (before any relation is applied).
pub fn one_a_product_class(p: u64, a: &[u64]) -> Result<SymbolElem> {
    let mut z: Option<Chain> = None;
    for &x in a {
        let c = one_a_cycle(p, x)?;
        z = Some(match z {
            None => c,
            Some(acc) => chain_star(&acc, &c)?,
        });
    }
    let z = z.ok_or_else(|| MwError::Degree("empty product".into()))?;
    let e = vec![1u64; z.vdim];
    chain_class(&contract_cycle(&z, &e)?)
}

/// S̃(F_p^n) together with the lattice of relations and decomposable
/// elements ⟨c⟩·([[a]]∗[[a']]) over all splittings n = k + (n−k).
#[derive(Debug, Clone)]
pub struct DecomposableModel {
    pub model: StildeModel,
    pub dec_generators: usize,
    lattice: RelationLattice,
    pub millis: u128,
}

pub fn decomposable_generators(p: u64, n: usize) -> Result<Vec<SymbolElem>> {
    let f = FieldSpec::fp(p)?;
    let units = f.units()?;
    let tuples = |k: usize| -> Vec<Vec<UnitRep>> {
        let mut out: Vec<Vec<UnitRep>> = vec![vec![]];
        for _ in 0..k {
            out = out.into_iter().flat_map(|t| units.iter().map(move |u| [t.clone(), vec![u.clone()]].concat())).collect();
        }
        out
    };
    let mut gens = Vec::new();
    for k in 1..n {
        for a in tuples(k) {
            for a2 in tuples(n - k) {
                let prod = star(&SymbolElem::gen(f, &a)?, &SymbolElem::gen(f, &a2)?)?;
                for c in &units {
                    gens.push(prod.act(&GroupRingElem::basis(f, c))?);
                }
            }
        }
    }
    Ok(gens)
}

impl DecomposableModel {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(MwError::Degree("decomposable elements need n ≥ 2".into()));
        }
        if p < n as u64 + 2 {
            return Err(MwError::Sampling(format!("decomposability checks need p ≥ n + 2, got p = {p}, n = {n}")));
        }
        let start = Instant::now();
        let model = stilde_presented(p, n)?;
        let gens = decomposable_generators(p, n)?;
        let lattice = model.lattice_with(&gens)?;
        Ok(DecomposableModel { model, dec_generators: gens.len(), lattice, millis: start.elapsed().as_millis() })
    }

    /// Whether x ≡ 0 modulo S̃_dec.
    pub fn is_decomposable(&self, x: &SymbolElem) -> Result<bool> {
        Ok(self.lattice.contains(&self.model.index.coords(x)?))
    }

    /// [[a_1,…,b·a_i,…,a_n]] − ⟨b⟩[[a_1,…,a_n]] (0-based i).
    pub fn scaling_difference(&self, a: &[UnitRep], b: &UnitRep, i: usize) -> Result<SymbolElem> {
        let f = self.model.field();
        let mut ba = a.to_vec();
        ba[i] = f.mul(&a[i], b);
        SymbolElem::gen(f, &ba)?.sub(&SymbolElem::term(f, GroupRingElem::basis(f, b), a)?)
    }
}
