//! The ∗ product on S̃(F^•): the closed formula on generators, the
//! chain-level product through the homotopy operator, and the elements
//! ⟦a,b⟧ and ⟦a_1,…,a_n⟧ built from it.

use num_bigint::BigInt;
use rand::Rng;

use super::chain::{contract_cycle, random_admissible, Chain, GPTuple, Vector};
use super::model::{chain_class, cycle_of};
use super::symbols::{default_b, e_elem, w_vector, SymbolElem};
use crate::error::{MwError, Result};
use crate::groupring::{FieldSpec, GroupRingElem, UnitRep};

fn sign(k: usize) -> BigInt {
    if k % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

fn signed(f: FieldSpec, k: usize, a: &UnitRep) -> UnitRep {
    if k % 2 == 0 {
        a.clone()
    } else {
        f.neg(a)
    }
}

fn cat(x: &[UnitRep], y: &[UnitRep]) -> Vec<UnitRep> {
    x.iter().chain(y).cloned().collect()
}

/// [[a]]∗[[a']] by the closed formula with auxiliary constants b, b'
/// (each list pairwise distinct). With δ_i = (−1)^{n−i} a_i and
/// δ'_j = (−1)^{m−j} a'_j (1-based), the determinants of the matrices
/// [e_1|…|ê_i|…|e_n|a]:
/// Σ_{i,j} (−1)^{m+n+i+j} ⟨δ_i δ'_j⟩ [[w_i, w'_j]]
///  + (−1)^n Σ_i (−1)^{i+1} ⟨δ_i⟩ [[w_i, b'a']]
///  + (−1)^m Σ_j (−1)^{j+1} ⟨δ'_j⟩ [[ba, w'_j]]
///  + [[ba, b'a']].
/// For n, m odd these are the signs (−1)^{i+j}, (−1)^{i+1}, (−1)^{j+1}.
pub fn star_gens(f: FieldSpec, a: &[UnitRep], a2: &[UnitRep], b: &[UnitRep], b2: &[UnitRep]) -> Result<SymbolElem> {
    let (n, m) = (a.len(), a2.len());
    if b.len() != n || b2.len() != m {
        return Err(MwError::Dimension { expected: n + m, got: b.len() + b2.len() });
    }
    let ba: Vec<UnitRep> = a.iter().zip(b).map(|(x, y)| f.mul(x, y)).collect();
    let ba2: Vec<UnitRep> = a2.iter().zip(b2).map(|(x, y)| f.mul(x, y)).collect();
    let w: Vec<Vec<UnitRep>> = (0..n).map(|i| w_vector(f, a, b, i)).collect::<Result<_>>()?;
    let w2: Vec<Vec<UnitRep>> = (0..m).map(|j| w_vector(f, a2, b2, j)).collect::<Result<_>>()?;
    let mut out = SymbolElem::zero(f, n + m);
    for i in 1..=n {
        for j in 1..=m {
            let u = signed(f, n - i + m - j, &f.mul(&a[i - 1], &a2[j - 1]));
            out.add_term(cat(&w[i - 1], &w2[j - 1]), &GroupRingElem::basis(f, &u).scale(&sign(m + n + i + j)))?;
        }
    }
    for i in 1..=n {
        let u = signed(f, n - i, &a[i - 1]);
        out.add_term(cat(&w[i - 1], &ba2), &GroupRingElem::basis(f, &u).scale(&(sign(n) * sign(i + 1))))?;
    }
    for j in 1..=m {
        let u = signed(f, m - j, &a2[j - 1]);
        out.add_term(cat(&ba, &w2[j - 1]), &GroupRingElem::basis(f, &u).scale(&(sign(m) * sign(j + 1))))?;
    }
    out.add_term(cat(&ba, &ba2), &GroupRingElem::one(f))?;
    Ok(out)
}

/// x∗y for generator combinations, extended Z[F×]-bilinearly from the closed
/// formula with the default constants b_i = i.
pub fn star(x: &SymbolElem, y: &SymbolElem) -> Result<SymbolElem> {
    if x.field != y.field {
        return Err(MwError::Input("operands live over different fields".into()));
    }
    let f = x.field;
    let b = default_b(f, x.n)?;
    let b2 = default_b(f, y.n)?;
    let mut out = SymbolElem::zero(f, x.n + y.n);
    for (a, c) in x.terms() {
        for (a2, c2) in y.terms() {
            out = out.add(&star_gens(f, a, a2, &b, &b2)?.act(&c.mul(c2)?)?)?;
        }
    }
    Ok(out)
}

/// The homotopy vector (a_1b_1,…,a_nb_n, a'_1b'_1,…,a'_mb'_m) used to derive
/// the closed formula, as residues.
pub fn formula_vector(a: &[UnitRep], a2: &[UnitRep], b: &[UnitRep], b2: &[UnitRep], p: u64) -> Result<Vector> {
    let res = |u: &UnitRep| u.residue().ok_or_else(|| MwError::Unsupported("chains are modeled over F_p only".into()));
    let mut v = Vec::with_capacity(a.len() + a2.len());
    for (x, y) in a.iter().zip(b).chain(a2.iter().zip(b2)) {
        v.push(res(x)? * res(y)? % p);
    }
    Ok(v)
}

/// x∗y on chains: ((v_1,…,v_p), (u_1,…,u_q)) ↦ ((v_1,0),…,(v_p,0),(0,u_1),…,(0,u_q)).
pub fn chain_star(x: &Chain, y: &Chain) -> Result<Chain> {
    if x.p != y.p || x.wdim != 0 || y.wdim != 0 {
        return Err(MwError::Input("chain product needs two chains over the same F_p with W = 0".into()));
    }
    let (n, m) = (x.vdim, y.vdim);
    let mut out = Chain::zero(x.p, 0, n + m, x.len + y.len);
    for (tx, kx) in x.terms() {
        for (ty, ky) in y.terms() {
            let mut vecs: Vec<Vector> = Vec::with_capacity(tx.len() + ty.len());
            for v in &tx.vecs {
                let mut full = v.clone();
                full.resize(n + m, 0);
                vecs.push(full);
            }
            for u in &ty.vecs {
                let mut full = vec![0u64; n];
                full.extend(u.iter().copied());
                vecs.push(full);
            }
            let k = kx.checked_mul(ky).ok_or_else(|| MwError::Unsupported("chain coefficient overflow".into()))?;
            out.add_tuple(&GPTuple::in_v(x.p, vecs)?, k)?;
        }
    }
    Ok(out)
}

/// x∗y computed on cycles: the product cycle is contracted with the homotopy
/// vector `v` (or a random admissible one) and read off by orbit normal forms.
pub fn star_chain<R: Rng + ?Sized>(x: &SymbolElem, y: &SymbolElem, v: Option<&[u64]>, rng: &mut R) -> Result<SymbolElem> {
    let z = chain_star(&cycle_of(x)?, &cycle_of(y)?)?;
    let v = match v {
        Some(v) => v.to_vec(),
        None => random_admissible(&z, rng, 10_000)?,
    };
    chain_class(&contract_cycle(&z, &v)?)
}

/// ⟦a,b⟧ = [[a]]∗[[b]] − ⟨⟨a⟩⟩⟨⟨b⟩⟩E.
pub fn ksp(f: FieldSpec, a: &UnitRep, b: &UnitRep) -> Result<SymbolElem> {
    let prod = star(&SymbolElem::gen(f, std::slice::from_ref(a))?, &SymbolElem::gen(f, std::slice::from_ref(b))?)?;
    let pf = GroupRingElem::pfister_gen(f, a).mul(&GroupRingElem::pfister_gen(f, b))?;
    prod.sub(&e_elem(f).act(&pf)?)
}

/// ⟦a_1,…,a_n⟧: ⟦a_1,a_2⟧∗⋯∗⟦a_{n−1},a_n⟧ for n even, and
/// [[a_1]]∗⟦a_2,a_3⟧∗⋯ for n odd.
pub fn ksb(f: FieldSpec, a: &[UnitRep]) -> Result<SymbolElem> {
    if a.len() < 2 {
        return Err(MwError::Degree("⟦a_1,…,a_n⟧ needs n ≥ 2".into()));
    }
    let (mut acc, rest) = if a.len() % 2 == 1 {
        (SymbolElem::gen(f, &a[..1])?, &a[1..])
    } else {
        (ksp(f, &a[0], &a[1])?, &a[2..])
    };
    for pair in rest.chunks(2) {
        acc = star(&acc, &ksp(f, &pair[0], &pair[1])?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gpcomplex::symbols::{d_map, t_map};
    use crate::mwk::{mwk_normalize, MWExpr};

    fn fp(p: u64, xs: &[u64]) -> Vec<UnitRep> {
        xs.iter().map(|x| UnitRep::Fp(x % p)).collect()
    }

    #[test]
    fn degree_one_formula() {
        let f = FieldSpec::Fp(7);
        let one = fp(7, &[1]);
        let got = star_gens(f, &fp(7, &[3]), &fp(7, &[5]), &one, &one).unwrap();
        let g = |c: u64, a: &[u64]| SymbolElem::term(f, GroupRingElem::basis(f, &UnitRep::Fp(c)), &fp(7, a)).unwrap();
        let want = g(1, &[1, 1]).act(&GroupRingElem::basis(f, &UnitRep::Fp(15 % 7))).unwrap();
        let want = want.sub(&g(3, &[1, 5])).unwrap().sub(&g(5, &[3, 1])).unwrap().add(&g(1, &[3, 5])).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn ksp_images() {
        let f = FieldSpec::Q;
        let (a, b) = (f.unit(3).unwrap(), f.unit(-5).unwrap());
        let k = ksp(f, &a, &b).unwrap();
        assert!(d_map(&k).unwrap().is_zero());
        let want = mwk_normalize(&MWExpr::brackets(f, &[a, b])).unwrap();
        assert_eq!(t_map(&k).unwrap(), want);
        assert_eq!(d_map(&e_elem(f)).unwrap(), GroupRingElem::one(f));
    }

    #[test]
    fn chain_star_of_cycles_is_a_cycle() {
        let f = FieldSpec::Fp(5);
        let x = SymbolElem::gen(f, &fp(5, &[2])).unwrap();
        let z = chain_star(&cycle_of(&x).unwrap(), &cycle_of(&x).unwrap()).unwrap();
        assert!(super::super::chain::boundary(&z).unwrap().is_zero());
    }
}
