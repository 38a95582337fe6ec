use mwkit::groupring::{FieldSpec, UnitRep};
use mwkit_cli::expr::{Expr, Factor, Sign, SymbolExpr, Term};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::Rng;

fn units<R: Rng>(f: FieldSpec, rng: &mut R) -> Vec<UnitRep> {
    (0..rng.random_range(1..=3)).map(|_| f.random_unit(rng, 50)).collect()
}

fn factor<R: Rng>(f: FieldSpec, rng: &mut R, depth: u32) -> Factor {
    match rng.random_range(0..if depth == 0 { 9 } else { 10 }) {
        0 => Factor::Int(BigInt::from(rng.random_range(0..1000u32))),
        1 => {
            let (n, d) = (rng.random_range(1..100u32), rng.random_range(2..100u32));
            let g = n.gcd(&d);
            if d / g == 1 {
                Factor::Int(BigInt::from(n / g))
            } else {
                Factor::Rational(BigInt::from(n / g), BigInt::from(d / g))
            }
        }
        2 => Factor::Eta,
        3 => Factor::E,
        4 => Factor::Bracket(f.random_unit(rng, 50)),
        5 => Factor::Angle(units(f, rng)),
        6 => Factor::Pfister(units(f, rng)),
        7 => Factor::Milnor(units(f, rng)),
        8 => Factor::Gen(units(f, rng)),
        _ => Factor::Group(Box::new(expr(f, rng, depth - 1))),
    }
}

fn expr<R: Rng>(f: FieldSpec, rng: &mut R, depth: u32) -> Expr {
    let n = rng.random_range(1..=3);
    Expr(
        (0..n)
            .map(|_| {
                let s = if rng.random_bool(0.4) { Sign::Minus } else { Sign::Plus };
                (s, Term((0..rng.random_range(1..=3)).map(|_| factor(f, rng, depth)).collect()))
            })
            .collect(),
    )
}

/// A random AST over Q or F_13, nested up to three levels.
pub fn random_ast<R: Rng>(rng: &mut R) -> SymbolExpr {
    let field = if rng.random_bool(0.5) { FieldSpec::Q } else { FieldSpec::Fp(13) };
    SymbolExpr { field, root: expr(field, rng, 3) }
}
