//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use mwkit::gpcomplex::chain::{dd_sweep, homotopy_sweep};
use mwkit::gpcomplex::symbols::{d_map, e_elem, t_map};
use mwkit::gpcomplex::{ksp, relation_instance, stilde_direct, stilde_presented, verify_gp, GpSuite};
use mwkit::groupring::{FieldSpec, GroupRingElem, UnitRep};
use mwkit::milnor::MilnorClass;
use mwkit::mwk::{incl_2milnor, incl_pfister, mwk_normalize, proj_milnor, verify_identities, Letter, MWExpr, Suite, VerifyReport, Q_BOUND};
use mwkit::par::{trial_rng, Exec};
use mwkit::quadform::WittFp;
use num_bigint::BigInt;
use rand::Rng;
use serde_json::Value;

type Check = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Check {
    let e = t.elapsed();
    ensure(e <= limit, format!("{what} took {:.1}s (limit {}s)", e.as_secs_f64(), limit.as_secs()))
}

fn report_line(r: &VerifyReport) -> Check {
    let failed = r.failures().count();
    let first = r.failures().next().map(|f| format!("; first failure: {}", f.instance)).unwrap_or_default();
    ensure(failed == 0, format!("{} {} over {}: {} instances, {} failures{}", r.suite, r.trials, r.field, r.instances.len(), failed, first))
}

fn all(parts: Vec<Check>) -> Check {
    let ok = parts.iter().all(|p| p.is_ok());
    let text = parts.into_iter().map(|p| p.unwrap_or_else(|e| format!("FAILED {e}"))).collect::<Vec<_>>().join(" | ");
    ensure(ok, text)
}

fn suite(s: Suite, f: FieldSpec, trials: usize) -> Check {
    verify_identities(s, f, trials, 2024, Exec::default()).map_err(|e| e.to_string()).and_then(|r| report_line(&r))
}

fn c1() -> Check {
    let t = Instant::now();
    let mut parts = Vec::new();
    for f in [FieldSpec::Fp(13), FieldSpec::Q] {
        parts.push(suite(Suite::MwRelations, f, 1000));
        parts.push(suite(Suite::Lemma23, f, 1000));
    }
    parts.push(within(t, Duration::from_secs(10), "criterion"));
    all(parts)
}

fn c2() -> Check {
    let t = Instant::now();
    let mut parts: Vec<Check> = [FieldSpec::Fp(13), FieldSpec::Q].into_iter().map(|f| suite(Suite::MatsumotoMoore, f, 500)).collect();
    parts.push(within(t, Duration::from_secs(30), "criterion"));
    all(parts)
}

fn c3() -> Check {
    suite(Suite::Lemma39, FieldSpec::Q, 200)
}

/// Brute-force isotropy of a diagonal form over F_p.
fn isotropic(p: u64, diag: &[u64]) -> bool {
    let n = diag.len();
    let mut x = vec![0u64; n];
    loop {
        let mut i = 0;
        while i < n && x[i] == p - 1 {
            x[i] = 0;
            i += 1;
        }
        if i == n {
            return false;
        }
        x[i] += 1;
        if diag.iter().zip(&x).map(|(a, v)| a * v % p * v).sum::<u64>() % p == 0 {
            return true;
        }
    }
}

/// Brute-force isometry of binary diagonal forms over F_p.
fn isometric2(p: u64, a: [u64; 2], b: [u64; 2]) -> bool {
    for m in 0..p.pow(4) {
        let (m00, m01, m10, m11) = (m % p, m / p % p, m / p / p % p, m / p / p / p);
        if (m00 * m11 + p * p - m01 * m10 % p) % p == 0 {
            continue;
        }
        // columns of M are the images of the basis vectors of b
        let q = |x: u64, y: u64| (a[0] * x % p * x + a[1] * y % p * y) % p;
        let bil = (a[0] * m00 % p * m01 + a[1] * m10 % p * m11) % p;
        if q(m00, m10) == b[0] % p && q(m01, m11) == b[1] % p && bil == 0 {
            return true;
        }
    }
    false
}

fn witt_count_oracle(p: u64) -> (usize, bool) {
    let nonsq = (2..p).find(|a| (1..p).all(|x| x * x % p != *a)).unwrap();
    let reps = [1, nonsq];
    let mut aniso2: Vec<[u64; 2]> = Vec::new();
    for &a in &reps {
        for &b in &reps {
            if !isotropic(p, &[a, b]) && !aniso2.iter().any(|c| isometric2(p, *c, [a, b])) {
                aniso2.push([a, b]);
            }
        }
    }
    let count = 1 + reps.len() + aniso2.len();
    (count, !isotropic(p, &[1, 1]))
}

fn c4() -> Check {
    let mut parts = Vec::new();
    for p in (3..50u64).filter(|p| mwkit::groupring::is_prime(*p)) {
        let mut classes: HashSet<WittFp> = HashSet::new();
        classes.insert(WittFp::of_residues(p, &[]));
        for a in 1..p {
            classes.insert(WittFp::of_residues(p, &[a]));
            for b in a..p {
                classes.insert(WittFp::of_residues(p, &[a, b]));
                for c in b..p {
                    classes.insert(WittFp::of_residues(p, &[a, b, c]));
                }
            }
        }
        let one = WittFp::of_residues(p, &[1]);
        let mut k = 1;
        let mut acc = one;
        while !acc.is_zero() {
            acc = acc.add(&one, p);
            k += 1;
        }
        let mut ok = classes.len() == 4 && (k == 4) == (p % 4 == 3);
        let mut detail = format!("p={p}: {} classes, ord<1>={k}", classes.len());
        if p <= 13 {
            let (count, ord4) = witt_count_oracle(p);
            ok &= count == classes.len() && ord4 == (k == 4);
            detail.push_str(&format!(" (isotropy oracle: {count} classes, ord 4: {ord4})"));
        }
        parts.push(ensure(ok, detail));
    }
    let n = parts.len();
    let bad: Vec<String> = parts.iter().filter_map(|p| p.clone().err()).collect();
    ensure(bad.is_empty(), if bad.is_empty() { format!("{n} odd primes below 50 checked") } else { bad.join("; ") })
}

fn random_mw_word<R: Rng>(f: FieldSpec, rng: &mut R, n: usize) -> Vec<Letter> {
    let etas = rng.random_range(0..=1);
    let mut w: Vec<Letter> = (0..n + etas).map(|_| Letter::Bracket(f.random_unit(rng, 0))).collect();
    for _ in 0..etas {
        w.push(Letter::Eta);
    }
    for _ in 0..rng.random_range(0..=1) {
        w.push(Letter::Angle(f.random_unit(rng, 0)));
    }
    w
}

fn c5() -> Check {
    let mut bad = 0;
    let mut total = 0;
    for p in [5u64, 7, 13] {
        let f = FieldSpec::Fp(p);
        for t in 0..100 {
            let mut rng = trial_rng(p, t);
            let n = rng.random_range(2..=4);
            let terms = (0..rng.random_range(1..=3)).map(|_| (BigInt::from(rng.random_range(-3..=3i64)), random_mw_word(f, &mut rng, n))).collect();
            let e = MWExpr { field: f, terms };
            total += 1;
            match mwk_normalize(&e) {
                Ok(c) if c.is_zero() => {}
                _ => bad += 1,
            }
        }
    }
    ensure(bad == 0, format!("{total} random expressions of degree 2..4, {bad} nonzero"))
}

fn c6() -> Check {
    let f = FieldSpec::Q;
    let mut bad = Vec::new();
    for t in 0..200 {
        let mut rng = trial_rng(6, t);
        let (a, b) = (f.random_unit(&mut rng, Q_BOUND), f.random_unit(&mut rng, Q_BOUND));
        let n = rng.random_range(1..=3);
        let entries: Vec<UnitRep> = (0..=n).map(|_| f.random_unit(&mut rng, Q_BOUND)).collect();
        let pm = incl_pfister(f, &entries).and_then(|x| proj_milnor(&x));
        if !matches!(&pm, Ok(m) if m.is_zero()) {
            bad.push(format!("proj_milnor(incl_pfister(<<{entries:?}>>)) != 0"));
        }
        let a2 = f.mul(&a, &a);
        let lhs = MilnorClass::symbol(f, &[a.clone(), b.clone()]).and_then(|y| incl_2milnor(&y));
        let rhs = mwk_normalize(&MWExpr::brackets(f, &[a2.clone(), b.clone()]));
        if lhs.is_err() || lhs != rhs {
            bad.push(format!("incl_2milnor(2{{{a},{b}}}) != [{a2}][{b}]"));
        }
        let h = mwk_normalize(&MWExpr::h(f).mul(&MWExpr::brackets(f, &[a.clone(), b.clone()])));
        if h.is_err() || h != rhs {
            bad.push(format!("h[{a}][{b}] != [{a2}][{b}]"));
        }
    }
    ensure(bad.is_empty(), format!("200 instances over Q, {} failures {}", bad.len(), bad.first().cloned().unwrap_or_default()))
}

fn c7() -> Check {
    let mut parts = Vec::new();
    let mut checked = 0u64;
    let mut dd_fail = Vec::new();
    let mut sampled = Vec::new();
    for p in [3u64, 5] {
        for n in 1..=3usize {
            for q in 2..=n + 2 {
                match dd_sweep(p, n, q) {
                    Ok(r) => {
                        checked += r.checked;
                        if !r.exhaustive {
                            sampled.push(format!("({p},{n},{q})"));
                        }
                        if r.failures > 0 {
                            dd_fail.push(format!("({p},{n},{q}): {} failures", r.failures));
                        }
                    }
                    Err(e) => dd_fail.push(format!("({p},{n},{q}): {e}")),
                }
            }
        }
    }
    let orbit = if sampled.is_empty() { String::new() } else { format!(", orbit representatives for {}", sampled.join(" ")) };
    parts.push(ensure(dd_fail.is_empty(), format!("d∘d on {checked} tuples{orbit} {}", dd_fail.join("; "))));
    let mut h_fail = Vec::new();
    let mut redraws = 0;
    let configs = [(3u64, 1usize), (5, 1), (7, 1), (5, 2), (7, 2), (11, 2), (7, 3), (11, 3), (13, 3)];
    for (p, n) in configs {
        match homotopy_sweep(p, n, 100, 77, Exec::default()) {
            Ok(r) => {
                redraws += r.redraws;
                if r.failures > 0 {
                    h_fail.push(format!("({p},{n}): {} of 100", r.failures));
                }
            }
            Err(e) => h_fail.push(format!("({p},{n}): {e}")),
        }
    }
    let configs = configs.len();
    parts.push(ensure(h_fail.is_empty(), format!("homotopy reconstruction on 100 cycles x {configs} configurations ({redraws} redraws) {}", h_fail.join("; "))));
    all(parts)
}

fn c8() -> Check {
    let t = Instant::now();
    let mut parts = Vec::new();
    for p in [5u64, 7] {
        let r = stilde_presented(p, 2).and_then(|m| Ok((m, stilde_direct(p, 2)?)));
        parts.push(match r {
            Ok((m, d)) => ensure(
                m.group.free_rank == d.group.free_rank && m.group.torsion == d.group.torsion,
                format!(
                    "p={p}: presented {}, direct {}, ker/im {}",
                    m.group.describe(),
                    d.group.describe(),
                    if d.ker_vs_im.is_zero() { "0".to_string() } else { d.ker_vs_im.to_json().to_string() }
                ),
            ),
            Err(e) => Err(format!("p={p}: {e}")),
        });
    }
    parts.push(within(t, Duration::from_secs(120), "criterion"));
    all(parts)
}

fn c9() -> Check {
    let f7 = FieldSpec::Fp(7);
    let q = FieldSpec::Q;
    let mut bad = Vec::new();
    let units = f7.units().unwrap();
    for a in &units {
        for b in &units {
            if !matches!(ksp(f7, a, b).and_then(|k| d_map(&k)), Ok(d) if d.is_zero()) {
                bad.push(format!("D(ksp({a},{b})) != 0"));
            }
        }
    }
    if d_map(&e_elem(f7)).ok() != Some(GroupRingElem::one(f7)) {
        bad.push("D([[-1,1]]) != <1>".into());
    }
    for t in 0..100 {
        let mut rng = trial_rng(9, t);
        let (a, b) = (q.random_unit(&mut rng, Q_BOUND), q.random_unit(&mut rng, Q_BOUND));
        let got = ksp(q, &a, &b).and_then(|k| t_map(&k));
        if got.is_err() || got != mwk_normalize(&MWExpr::brackets(q, &[a.clone(), b.clone()])) {
            bad.push(format!("T(ksp({a},{b})) != [{a}][{b}]"));
        }
    }
    let mut rel_d = 0;
    for a in &units {
        for c in &units {
            for b1 in &units {
                for b2 in units.iter().filter(|b2| *b2 != b1) {
                    rel_d += 1;
                    let r = relation_instance(f7, &[a.clone(), c.clone()], &[b1.clone(), b2.clone()]);
                    if !matches!(r.and_then(|r| d_map(&r)), Ok(d) if d.is_zero()) {
                        bad.push(format!("D(R(({a},{c}),({b1},{b2}))) != 0"));
                    }
                }
            }
        }
    }
    let mut rel_t = 0;
    for t in 0..100 {
        let mut rng = trial_rng(90, t);
        let n = rng.random_range(2..=3);
        let a: Vec<UnitRep> = (0..n).map(|_| q.random_unit(&mut rng, Q_BOUND)).collect();
        let mut b: Vec<UnitRep> = Vec::new();
        while b.len() < n {
            let u = q.random_unit(&mut rng, Q_BOUND);
            if !b.contains(&u) {
                b.push(u);
            }
        }
        rel_t += 1;
        if !matches!(relation_instance(q, &a, &b).and_then(|r| t_map(&r)), Ok(c) if c.is_zero()) {
            bad.push(format!("T(R({a:?},{b:?})) != 0"));
        }
    }
    ensure(
        bad.is_empty(),
        format!("36 D(ksp) over F_7, D(E), 100 T(ksp) over Q, {rel_d} relations under D, {rel_t} under T; {} failures {}", bad.len(), bad.first().cloned().unwrap_or_default()),
    )
}

fn gp(s: GpSuite, f: FieldSpec, trials: usize) -> Check {
    match verify_gp(s, f, trials, 2024, Exec::default()) {
        Ok(r) => {
            let line = report_line(&r);
            let notes = if r.notes.is_empty() { String::new() } else { format!(" [{}]", r.notes.join("; ")) };
            line.map(|x| x.clone() + &notes).map_err(|x| x + &notes)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn c10() -> Check {
    gp(GpSuite::StarDualPath, FieldSpec::Fp(7), 0)
}

fn c11() -> Check {
    gp(GpSuite::Decomposability, FieldSpec::Fp(7), 100)
}

fn c12() -> Check {
    gp(GpSuite::Identities, FieldSpec::Q, 100)
}

fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("timings");
            m.values_mut().for_each(strip_timings);
        }
        Value::Array(xs) => xs.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

fn cli(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_mwkit")).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn c13() -> Check {
    let mut parts = Vec::new();
    let runs: [&[&str]; 3] = [
        &["verify", "--suite", "mw-relations", "--field", "Q", "--trials", "200", "--seed", "42", "--json"],
        &["verify", "--suite", "star-dual-path", "--field", "Fp:7", "--trials", "5", "--seed", "3", "--json"],
        &["stilde", "--p", "5", "--n", "2", "--compare", "--json"],
    ];
    for args in runs {
        let a = cli(args);
        let b = cli(args);
        parts.push(match (a, b) {
            (Ok((ca, mut ja)), Ok((cb, mut jb))) => {
                if args[0] == "stilde" {
                    let strip = |bytes: &[u8]| -> Vec<u8> {
                        let mut v: Value = serde_json::from_slice(bytes).unwrap_or(Value::Null);
                        strip_timings(&mut v);
                        serde_json::to_vec(&v).unwrap()
                    };
                    ja = strip(&ja);
                    jb = strip(&jb);
                }
                ensure(ca == 0 && cb == 0 && ja == jb && !ja.is_empty(), format!("`{}` identical: {}", args[..2].join(" "), ja == jb))
            }
            (Err(e), _) | (_, Err(e)) => Err(e),
        });
    }
    let seq = verify_identities(Suite::MatsumotoMoore, FieldSpec::Fp(13), 50, 5, Exec::Sequential).map(|r| r.to_json());
    let par = verify_identities(Suite::MatsumotoMoore, FieldSpec::Fp(13), 50, 5, Exec::Parallel).map(|r| r.to_json());
    parts.push(ensure(seq.is_ok() && seq == par, "sequential and parallel reports identical".into()));
    let mut rng = trial_rng(13, 0);
    let mut bad = 0;
    for _ in 0..500 {
        let ast = common::random_ast(&mut rng);
        match mwkit_cli::parse(&ast.to_string(), ast.field) {
            Ok(back) if back == ast => {}
            _ => bad += 1,
        }
    }
    parts.push(ensure(bad == 0, format!("500 AST round-trips, {bad} mismatches")));
    all(parts)
}

fn main() {
    let criteria: [(&str, fn() -> Check); 13] = [
        ("MW presentation relations and degree 1 identities", c1),
        ("Matsumoto-Moore relations in degrees 2 and 3", c2),
        ("difference expansion of [b_1]...[b_n], n = 2, 3, 4", c3),
        ("Witt classes of F_p for odd p < 50", c4),
        ("K^MW_n(F_p) = 0 for n >= 2", c5),
        ("exact sequence contracts over Q", c6),
        ("complex axioms: d∘d = 0 and homotopy reconstruction", c7),
        ("S~(F_p^2) presented vs direct model", c8),
        ("D and T consistency", c9),
        ("product coherence in degree (1,1)", c10),
        ("decomposability", c11),
        ("(T,D)-images of the degree 3 and 4 identities", c12),
        ("CLI determinism and parser round-trip", c13),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(d) => println!("criterion {:>2}: PASS  {name} ({secs:.1}s): {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.1}s): {d}", i + 1);
            }
        }
    }
    let total = start.elapsed();
    let budget = total <= Duration::from_secs(300);
    println!("total {:.1}s (budget 300s): {}", total.as_secs_f64(), if budget { "within" } else { "exceeded" });
    println!("{} of 13 criteria passed", 13 - failed);
    if failed > 0 || !budget {
        std::process::exit(1);
    }
}
