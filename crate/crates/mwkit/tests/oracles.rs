use mwkit::groupring::{is_prime, legendre, FieldSpec, UnitRep};
use mwkit::milnor::MilnorClass;
use mwkit::mwk::{mwk_normalize, MWExpr};
use mwkit::quadform::{hilbert_symbol, pfister, GWClass, Place, WittFp};
use num_bigint::BigInt;
use proptest::prelude::*;

fn q(n: i64) -> UnitRep {
    FieldSpec::Q.unit(n).unwrap()
}

fn isotropic(p: u64, diag: &[u64]) -> bool {
    let n = diag.len() as u32;
    (1..p.pow(n)).any(|code| {
        let mut c = code;
        let mut s = 0;
        for a in diag {
            let x = c % p;
            c /= p;
            s += a * x % p * x;
        }
        s % p == 0
    })
}

#[test]
fn legendre_matches_squares() {
    for p in (3..60u64).filter(|p| is_prime(*p)) {
        let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
        for a in 1..p {
            assert_eq!(legendre(a, p) == 1, squares.contains(&a), "({a}/{p})");
        }
    }
}

#[test]
fn binary_witt_zero_iff_isotropic() {
    for p in [3u64, 5, 7, 11, 13] {
        for a in 1..p {
            for b in 1..p {
                assert_eq!(WittFp::of_residues(p, &[a, b]).is_zero(), isotropic(p, &[a, b]), "<{a},{b}> over F_{p}");
            }
        }
        // every ternary form is isotropic, so no anisotropic class has rank 3
        for a in 1..p {
            for b in 1..p {
                assert!(isotropic(p, &[1, a, b]));
            }
        }
    }
}

#[test]
fn hilbert_symbol_spot_values() {
    let cases = [(-1, -1, Place::Infinity, -1), (-1, -1, Place::Prime(2), -1), (2, 3, Place::Prime(3), -1), (3, 5, Place::Prime(3), -1), (7, 2, Place::Prime(7), 1), (5, 5, Place::Prime(5), 1), (3, 3, Place::Prime(3), -1), (2, 5, Place::Prime(2), -1)];
    for (a, b, v, want) in cases {
        assert_eq!(hilbert_symbol(&q(a), &q(b), v).unwrap(), want, "({a},{b})_{v}");
    }
}

fn unit() -> impl Strategy<Value = i64> {
    prop_oneof![-60i64..=-1, 1i64..=60]
}

fn places(a: i64, b: i64) -> Vec<Place> {
    let mut ps = vec![Place::Infinity];
    for p in (2..=60u64).filter(|p| is_prime(*p)) {
        if a.unsigned_abs() % p == 0 || b.unsigned_abs() % p == 0 || p == 2 {
            ps.push(Place::Prime(p));
        }
    }
    ps
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hilbert_product_formula(a in unit(), b in unit()) {
        let prod: i8 = places(a, b).into_iter().map(|v| hilbert_symbol(&q(a), &q(b), v).unwrap()).product();
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn hilbert_odd_prime_formula(a in unit(), b in unit()) {
        for v in places(a, b) {
            let Place::Prime(p) = v else { continue };
            if p == 2 {
                continue;
            }
            // (p^α u, p^β w)_p = (−1)^{αβ(p−1)/2} (u/p)^β (w/p)^α
            let split = |x: i64| {
                let mut e = 0u32;
                let mut y = x;
                while y % p as i64 == 0 {
                    y /= p as i64;
                    e += 1;
                }
                (e, y.rem_euclid(p as i64) as u64)
            };
            let ((ea, ua), (eb, ub)) = (split(a), split(b));
            let mut s = if (ea * eb) % 2 == 1 && p % 4 == 3 { -1 } else { 1 };
            if eb % 2 == 1 {
                s *= legendre(ua, p);
            }
            if ea % 2 == 1 {
                s *= legendre(ub, p);
            }
            prop_assert_eq!(hilbert_symbol(&q(a), &q(b), v).unwrap() as i32, s);
        }
    }

    #[test]
    fn steinberg_relation(num in 2i64..200, den in 1i64..200, neg in any::<bool>()) {
        prop_assume!(num != den);
        let f = FieldSpec::Q;
        let n = if neg { -num } else { num };
        let a = f.unit_ratio(&BigInt::from(n), &BigInt::from(den)).unwrap();
        let b = f.one_minus(&a).unwrap();
        prop_assert!(MilnorClass::symbol(f, &[a.clone(), b.clone()]).unwrap().is_zero());
        prop_assert!(MilnorClass::symbol(f, &[a.clone(), f.neg(&a)]).unwrap().is_zero());
        prop_assert!(mwk_normalize(&MWExpr::brackets(f, &[a, b])).unwrap().is_zero());
    }

    #[test]
    fn k2_bilinear_and_antisymmetric(a in unit(), b in unit(), c in unit()) {
        let f = FieldSpec::Q;
        let s = |x: &UnitRep, y: &UnitRep| MilnorClass::symbol(f, &[x.clone(), y.clone()]).unwrap();
        let (a, b, c) = (q(a), q(b), q(c));
        prop_assert_eq!(s(&f.mul(&a, &b), &c), s(&a, &c).add(&s(&b, &c)).unwrap());
        prop_assert!(s(&a, &b).add(&s(&b, &a)).unwrap().is_zero());
    }

    #[test]
    fn pfister_forms_span_powers(n in 1usize..4, entries in prop::collection::vec(unit(), 8), k in -3i64..=3) {
        let f = FieldSpec::Q;
        let x: Vec<UnitRep> = entries[..n].iter().map(|e| q(*e)).collect();
        let y: Vec<UnitRep> = entries[4..4 + n].iter().map(|e| q(*e)).collect();
        let sum = pfister(f, &x).unwrap().add(&pfister(f, &y).unwrap().scale(&BigInt::from(k))).unwrap();
        prop_assert!(sum.in_fundamental_power(n as i64).unwrap());
        prop_assert!(!GWClass::one(f).in_fundamental_power(1).unwrap());
        // ⟨⟨−1,…,−1⟩⟩ has signature (−2)^n, so it is not in the next power
        let minus: Vec<UnitRep> = vec![q(-1); n];
        prop_assert!(!pfister(f, &minus).unwrap().in_fundamental_power(n as i64 + 1).unwrap());
    }
}
