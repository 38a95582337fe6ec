use mwkit::groupring::{FieldSpec, UnitRep};
use mwkit::milnor::MilnorClass;
use mwkit::mwk::{mwk_mul, mwk_normalize, proj_milnor, Letter, MWExpr};
use num_bigint::BigInt;
use proptest::prelude::*;

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::Q), Just(FieldSpec::Fp(13)), Just(FieldSpec::Fp(7))]
}

fn unit(f: FieldSpec) -> impl Strategy<Value = UnitRep> {
    let raw = prop_oneof![-50i64..=-1, 1i64..=50];
    raw.prop_filter_map("unit", move |n| f.unit(n).ok())
}

fn letter(f: FieldSpec) -> impl Strategy<Value = Letter> {
    prop_oneof![unit(f).prop_map(Letter::Bracket), Just(Letter::Eta), unit(f).prop_map(Letter::Angle), unit(f).prop_map(Letter::Pfister)]
}

fn expr(f: FieldSpec, degree: i64) -> impl Strategy<Value = MWExpr> {
    // words of a fixed degree: brackets and etas balance, angles and Pfister letters are free
    let word = (0usize..3, prop::collection::vec(letter(f), 0..3)).prop_flat_map(move |(etas, extra)| {
        let etas = etas + (-degree).max(0) as usize;
        let brackets = (degree + etas as i64) as usize;
        (prop::collection::vec(unit(f), brackets), Just(etas), Just(extra))
    });
    prop::collection::vec((-3i64..=3, word), 1..4).prop_map(move |terms| MWExpr {
        field: f,
        terms: terms
            .into_iter()
            .map(|(k, (bs, etas, extra))| {
                let mut w: Vec<Letter> = bs.into_iter().map(Letter::Bracket).collect();
                w.extend(std::iter::repeat_n(Letter::Eta, etas));
                w.extend(extra.into_iter().filter(|l| !matches!(l, Letter::Bracket(_) | Letter::Eta)));
                (BigInt::from(k), w)
            })
            .collect(),
    })
}

fn pair() -> impl Strategy<Value = (FieldSpec, MWExpr, MWExpr)> {
    (field(), -1i64..=2).prop_flat_map(|(f, d)| (Just(f), expr(f, d), expr(f, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn normalization_is_additive((_f, x, y) in pair()) {
        let lhs = mwk_normalize(&x.add(&y)).unwrap();
        let rhs = mwk_normalize(&x).unwrap().add(&mwk_normalize(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalization_is_multiplicative((_f, x, y) in pair()) {
        let lhs = mwk_normalize(&x.mul(&y)).unwrap();
        let rhs = mwk_mul(&mwk_normalize(&x).unwrap(), &mwk_normalize(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn classes_are_compatible((_f, x, _y) in pair()) {
        prop_assert!(mwk_normalize(&x).unwrap().check_compatible().is_ok());
    }

    #[test]
    fn eps_graded_commutativity(f in field(), seed in any::<u64>()) {
        let mut rng = mwkit::par::trial_rng(seed, 0);
        let (a, b) = (f.random_unit(&mut rng, 50), f.random_unit(&mut rng, 50));
        let ab = MWExpr::brackets(f, &[a.clone(), b.clone()]);
        // [a][b] = −⟨−1⟩[b][a]
        let ba = MWExpr::angle(f, &f.minus_one()).mul(&MWExpr::brackets(f, &[b, a])).neg();
        prop_assert_eq!(mwk_normalize(&ab).unwrap(), mwk_normalize(&ba).unwrap());
    }

    #[test]
    fn milnor_projection_of_brackets(f in field(), seed in any::<u64>()) {
        let mut rng = mwkit::par::trial_rng(seed, 1);
        let (a, b) = (f.random_unit(&mut rng, 50), f.random_unit(&mut rng, 50));
        let c = mwk_normalize(&MWExpr::brackets(f, &[a.clone(), b.clone()])).unwrap();
        prop_assert_eq!(proj_milnor(&c).unwrap(), MilnorClass::symbol(f, &[a, b]).unwrap());
    }
}

#[test]
fn eta_h_vanishes() {
    for f in [FieldSpec::Q, FieldSpec::Fp(11)] {
        assert!(mwk_normalize(&MWExpr::eta(f).mul(&MWExpr::h(f))).unwrap().is_zero());
    }
}
