//! Subcommand dispatch, reports and exit codes.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use mwkit::gpcomplex::symbols::{d_map, t_map};
use mwkit::gpcomplex::{star, star_chain, stilde_direct, stilde_presented, verify_gp, GpSuite, SymbolElem};
use mwkit::groupring::FieldSpec;
use mwkit::mwk::{mwk_mul, mwk_normalize, verify_identities, Suite};
use mwkit::par::{trial_rng, Exec};
use mwkit::quadform::{form_invariants, DiagForm, GWClass};
use mwkit::MwError;
use serde_json::{json, Value};

use crate::eval::{eval, Value as Val};
use crate::expr::{parse, Factor, Sign};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mwkit", about = "Exact computations in Milnor-Witt K-theory and general-position complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an expression.
    Normalize {
        expr: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Invariants of a form such as "<1,1,-2>".
    Witt {
        form: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Build S~(F_p^n), optionally comparing the presented and direct models.
    Stilde {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        compare: bool,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate x*y by the closed formula and on chains.
    Product {
        x: String,
        y: String,
        #[arg(long, default_value = "Fp:7")]
        field: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What a command produced: the exit code and the JSON report.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

fn error_outcome(e: &MwError) -> Outcome {
    let code = match e {
        MwError::Budget(_) => EXIT_BUDGET,
        MwError::Invariant(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    };
    Outcome { code, report: json!({"error": e.to_string()}) }
}

fn usage(msg: String) -> Outcome {
    Outcome { code: EXIT_USAGE, report: json!({"error": msg}) }
}

fn field_of(s: &str) -> Result<FieldSpec, Outcome> {
    s.parse::<FieldSpec>().map_err(|e| usage(e.to_string()))
}

fn pass_fail(ok: bool) -> i32 {
    if ok {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

pub fn execute(cmd: &Command) -> Outcome {
    let r = match cmd {
        Command::Normalize { expr, field } => normalize(expr, field),
        Command::Witt { form, field } => witt(form, field),
        Command::Stilde { p, n, compare } => stilde(*p, *n, *compare),
        Command::Verify { suite, field, trials, seed } => verify(suite, field.as_deref(), *trials, *seed),
        Command::Product { x, y, field, seed } => product(x, y, field, *seed),
    };
    r.unwrap_or_else(|o| o)
}

fn lift<T>(r: mwkit::Result<T>) -> Result<T, Outcome> {
    r.map_err(|e| error_outcome(&e))
}

fn parsed(src: &str, f: FieldSpec) -> Result<crate::expr::SymbolExpr, Outcome> {
    parse(src, f).map_err(|e| usage(e.to_string()))
}

fn normalize(src: &str, field: &str) -> Result<Outcome, Outcome> {
    let f = field_of(field)?;
    let e = parsed(src, f)?;
    let v = lift(eval(&e))?;
    let mut report = json!({"command": "normalize", "field": f.to_string(), "input": e.to_string(), "kind": v.kind()});
    match v {
        Val::Mw(x) => {
            let c = lift(mwk_normalize(&x))?;
            report["normal_form"] = json!(c.to_string());
            report["class"] = c.to_json();
            if c.degree == 0 {
                report["gw"] = lift(c.to_gw())?.to_json();
            }
        }
        Val::Milnor(m) => {
            report["normal_form"] = json!(m.to_string());
            report["class"] = m.to_json();
        }
        Val::Stilde(s) => {
            report["normal_form"] = json!(s.to_string());
            report["D"] = json!(lift(d_map(&s))?.to_string());
            report["T"] = json!(lift(t_map(&s))?.to_string());
        }
    }
    Ok(Outcome { code: EXIT_PASS, report })
}

fn witt(src: &str, field: &str) -> Result<Outcome, Outcome> {
    let f = field_of(field)?;
    let e = parsed(src, f)?;
    // A bare form literal is read as a diagonal form; anything else as a GW class.
    let single = match e.root.0.as_slice() {
        [(Sign::Plus, t)] => match t.0.as_slice() {
            [Factor::Angle(us)] => Some(us.clone()),
            _ => None,
        },
        _ => None,
    };
    let (gw, form) = match single {
        Some(us) => {
            let d = lift(DiagForm::new(f, us))?;
            (GWClass::from_form(&d), Some(d))
        }
        None => {
            let Val::Mw(x) = lift(eval(&e))? else {
                return Err(usage("witt expects a degree 0 expression".into()));
            };
            let c = lift(mwk_normalize(&x))?;
            if c.degree != 0 {
                return Err(usage(format!("witt expects degree 0, got degree {}", c.degree)));
            }
            let g = lift(c.to_gw())?;
            let rep = g.witt.representative();
            let extra = g.rank - rep.rank() as i64;
            let form = (extra >= 0).then(|| {
                let mut d = rep.clone();
                let plane = DiagForm::new(f, vec![f.one(), f.minus_one()]).expect("±1 are units");
                for _ in 0..extra / 2 {
                    d = d.orthogonal_sum(&plane);
                }
                d
            });
            (g, form)
        }
    };
    let mut report = json!({"command": "witt", "field": f.to_string(), "input": e.to_string(), "gw": gw.to_json()});
    if let Some(d) = form {
        report["form"] = json!(d.to_string());
        report["invariants"] = form_invariants(&d).to_json();
    }
    Ok(Outcome { code: EXIT_PASS, report })
}

fn stilde(p: u64, n: usize, compare: bool) -> Result<Outcome, Outcome> {
    let m = lift(stilde_presented(p, n))?;
    let mut report = json!({"command": "stilde", "p": p, "n": n, "presented": m.to_json()});
    let mut ok = true;
    if compare {
        let d = lift(stilde_direct(p, n))?;
        let agree = d.group.free_rank == m.group.free_rank && d.group.torsion == m.group.torsion;
        report["direct"] = d.to_json();
        report["invariant_factors_agree"] = json!(agree);
        report["ker_vs_im_zero"] = json!(d.ker_vs_im.is_zero());
        ok = agree;
    }
    Ok(Outcome { code: pass_fail(ok), report })
}

fn verify(suite: &str, field: Option<&str>, trials: usize, seed: u64) -> Result<Outcome, Outcome> {
    let exec = Exec::default();
    let rep = if let Some(s) = Suite::parse(suite) {
        let f = field.map(field_of).transpose()?.unwrap_or(FieldSpec::Q);
        lift(verify_identities(s, f, trials, seed, exec))?
    } else if let Some(s) = GpSuite::parse(suite) {
        let f = field.map(field_of).transpose()?.unwrap_or(s.default_field());
        lift(verify_gp(s, f, trials, seed, exec))?
    } else {
        return Err(usage(format!("unknown suite '{suite}'")));
    };
    let mut report = json!({"command": "verify"});
    if let (Value::Object(dst), Value::Object(src)) = (&mut report, rep.to_json()) {
        dst.extend(src);
    }
    Ok(Outcome { code: pass_fail(rep.passed()), report })
}

fn stilde_of(src: &str, f: FieldSpec) -> Result<SymbolElem, Outcome> {
    match lift(eval(&parsed(src, f)?))? {
        Val::Stilde(s) => Ok(s),
        v => Err(usage(format!("product expects S~ elements, got a {} value", v.kind()))),
    }
}

fn product(x: &str, y: &str, field: &str, seed: u64) -> Result<Outcome, Outcome> {
    let f = field_of(field)?;
    let (a, b) = (stilde_of(x, f)?, stilde_of(y, f)?);
    let closed = lift(star(&a, &b))?;
    let dl = lift(d_map(&closed))?;
    let dr = lift(d_map(&a).and_then(|u| Ok(u.mul(&d_map(&b)?)?)))?;
    let tl = lift(t_map(&closed))?;
    let tr = lift(mwk_mul(&lift(t_map(&a))?, &lift(t_map(&b))?))?;
    let mut report = json!({
        "command": "product",
        "field": f.to_string(),
        "x": a.to_string(),
        "y": b.to_string(),
        "closed": closed.to_string(),
        "D_multiplicative": dl == dr,
        "T_multiplicative": tl == tr,
    });
    let mut ok = dl == dr && tl == tr;
    if let Some(p) = f.char_p() {
        let mut rng = trial_rng(seed, 0);
        let chain = lift(star_chain(&a, &b, None, &mut rng))?;
        report["chain"] = json!(chain.to_string());
        match stilde_presented(p, a.n + b.n) {
            Ok(m) => {
                let agree = lift(m.equal(&closed, &chain))?;
                report["closed_equals_chain"] = json!(agree);
                ok &= agree;
            }
            Err(MwError::Budget(msg)) => report["closed_equals_chain"] = json!(format!("not checked: {msg}")),
            Err(e) => return Err(error_outcome(&e)),
        }
    }
    Ok(Outcome { code: pass_fail(ok), report })
}

/// Human-readable rendering of a report.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(x, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !matches!(x, Value::Object(_) | Value::Array(_))),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        x => x.to_string(),
    }
}

/// Parses `argv` and runs the command; returns the exit code and the text
/// printed on stdout.
pub fn run(argv: &[String]) -> (i32, String) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            return (code, e.to_string());
        }
    };
    let o = execute(&cli.command);
    let json_text = serde_json::to_string_pretty(&o.report).expect("reports serialize") + "\n";
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &json_text) {
            return (EXIT_USAGE, format!("cannot write {}: {e}\n", path.display()));
        }
    }
    let text = if cli.json { json_text } else { render_text(&o.report) };
    (o.code, text)
}
