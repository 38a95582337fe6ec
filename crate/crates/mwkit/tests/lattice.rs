use mwkit::exactla::{smith_normal_form, PresentedAbelianGroup, RelationLattice, SparseIntMatrix, UnitLattice};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn sparse_rows(m: &[Vec<i64>]) -> Vec<Vec<(usize, BigInt)>> {
    m.iter().map(|r| r.iter().enumerate().filter(|(_, x)| **x != 0).map(|(j, x)| (j, BigInt::from(*x))).collect()).collect()
}

/// Determinant by cofactor expansion, for the oracle on small square matrices.
fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 1 {
        return BigInt::from(m[0][0]);
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect()).collect();
        let term = BigInt::from(m[0][j]) * det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

#[test]
fn snf_hand_examples() {
    let cases: Vec<(Vec<Vec<i64>>, Vec<i64>)> = vec![
        (vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], vec![2, 6, 12]),
        (vec![vec![1, 2], vec![3, 4]], vec![1, 2]),
        (vec![vec![6, 0], vec![0, 4]], vec![2, 12]),
        (vec![vec![0, 0], vec![0, 0]], vec![]),
        (vec![vec![2, 0, 0], vec![0, 3, 0]], vec![1, 6]),
    ];
    for (m, want) in cases {
        let s = smith_normal_form(&SparseIntMatrix::from_dense(&m), true);
        assert_eq!(s.diag, big(&want), "{m:?}");
        let (l, r) = s.transforms.unwrap();
        let a = SparseIntMatrix::from_dense(&m);
        let d = l.mul(&a).unwrap().mul(&r).unwrap();
        assert_eq!(d, SparseIntMatrix::diagonal(m.len(), m[0].len(), &s.diag));
    }
}

#[test]
fn cokernel_descriptions() {
    let g = PresentedAbelianGroup::from_relation_rows(3, sparse_rows(&[vec![2, 0, 0], vec![0, 3, 0]]));
    assert_eq!((g.free_rank, g.torsion.clone()), (1, big(&[6])));
    assert_eq!(g.describe(), "Z + Z/6");
    assert!(PresentedAbelianGroup::from_relation_rows(1, sparse_rows(&[vec![1]])).is_trivial());
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 4 => -5i64..=5], c), r))
}

fn square() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-6i64..=6, n), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn unit_lattice_matches_snf(m in matrix()) {
        let cols = m[0].len();
        let s = smith_normal_form(&SparseIntMatrix::from_dense(&m), false);
        let rows = sparse_rows(&m);
        let u = UnitLattice::new(cols, &rows);
        prop_assert_eq!(u.rank(), s.diag.len());
        let torsion: Vec<BigInt> = s.diag.iter().filter(|d| **d > BigInt::from(1)).cloned().collect();
        prop_assert_eq!(u.torsion(), torsion.clone());
        let tracked = RelationLattice::new(cols, &rows, true);
        prop_assert_eq!(tracked.rank(), s.diag.len());
        prop_assert_eq!(tracked.torsion(), torsion);
    }

    #[test]
    fn combinations_are_members(m in matrix(), coeffs in prop::collection::vec(-4i64..=4, 6)) {
        let cols = m[0].len();
        let rows = sparse_rows(&m);
        let mut v = vec![BigInt::zero(); cols];
        for (r, k) in m.iter().zip(&coeffs) {
            for (j, x) in r.iter().enumerate() {
                v[j] += BigInt::from(x * k);
            }
        }
        let sv: Vec<(usize, BigInt)> = v.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        prop_assert!(UnitLattice::new(cols, &rows).contains(&sv));
        let tracked = RelationLattice::new(cols, &rows, true);
        let cert = tracked.certificate(&sv).expect("member");
        let mut back = vec![BigInt::zero(); cols];
        for (r, k) in m.iter().zip(&cert) {
            for (j, x) in r.iter().enumerate() {
                back[j] += BigInt::from(*x) * k;
            }
        }
        prop_assert_eq!(back, v);
    }

    #[test]
    fn snf_matches_determinantal_divisors(m in square()) {
        let s = smith_normal_form(&SparseIntMatrix::from_dense(&m), false);
        let g = m.iter().flatten().fold(BigInt::zero(), |acc, x| acc.gcd(&BigInt::from(*x)));
        prop_assert_eq!(s.diag.first().cloned().unwrap_or_default(), g);
        let d = det(&m).abs();
        if d.is_zero() {
            prop_assert!(s.diag.len() < m.len());
        } else {
            prop_assert_eq!(s.diag.iter().product::<BigInt>(), d);
        }
        for w in s.diag.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }
}
