//! `quotsg`: invariants of quotients `<a,b>/d`, the reverse problem,
//! continued fractions, digit expansions and exhaustive scans.
//!
//! Exit status: 0 on success, 1 on a domain error (the message starts with
//! the error name, e.g. `NotCoprime`), 2 on a usage error, 3 when two
//! computations that must agree do not.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use quotsg::exactmath::{
    ceil_cfe, floor, floor_cfe, fmt_rat, parse_rat, semiconvergents, CfeError, ConvergentTable,
    Expansion, Int, Rat,
};
use quotsg::invariants::{
    fast_report, fmt_list, full_report, normalize, oracle_report, InvariantReport,
    InvariantsError, Mode,
};
use quotsg::lattice::QuotientSpec;
use quotsg::oracle::{member_ab, SemigroupOracle};
use quotsg::ostrowski::{AlphaCtx, OstrowskiError};
use quotsg::reverse::{
    admissible_orderings, solve_case1, solve_case2, solve_case3, FamilyResult, ReverseError,
    Solution,
};

const EXIT_DOMAIN: u8 = 1;
const EXIT_MISMATCH: u8 = 3;

/// Longest ceiling expansion `cf` prints.
const MAX_CEIL_TERMS: usize = 1_000_000;

#[derive(Parser, Debug)]
#[command(name = "quotsg", version, about = "Quotients of two-generator numerical semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants of <A,B>/D.
    Invariants {
        a: Int,
        b: Int,
        d: Int,
        /// Closed forms, membership table, or both compared.
        #[arg(long, value_enum, default_value_t = ModeArg::Fast)]
        mode: ModeArg,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Every (a,b,d) whose quotient has the given minimal generators.
    Reverse {
        #[arg(required = true, num_args = 1..)]
        set: Vec<Int>,
        /// Which position of d to solve for.
        #[arg(long = "case", value_enum, default_value_t = CaseArg::All)]
        case: CaseArg,
        /// Instances listed per infinite family.
        #[arg(long, default_value_t = 5)]
        limit: usize,
        /// Check every triple against a membership table.
        #[arg(long)]
        verify: bool,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Continued fraction expansions of P/Q.
    Cf {
        #[arg(value_parser = parse_rat_arg)]
        x: Rat,
        /// Also print the ceiling expansion.
        #[arg(long)]
        ceiling: bool,
        /// Print the convergent tables.
        #[arg(long)]
        convergents: bool,
        /// Print the semiconvergents.
        #[arg(long)]
        semiconvergents: bool,
    },
    /// Digits of N for alpha = P/Q in [0, 1), with the summation identities.
    Ostrowski {
        #[arg(value_parser = parse_rat_arg)]
        alpha: Rat,
        n: Int,
    },
    /// Compare closed forms with tables over a grid of specs.
    Scan {
        #[arg(long)]
        max_a: u64,
        #[arg(long)]
        max_b: u64,
        #[arg(long)]
        max_d: u64,
        /// What to verify on each spec.
        #[arg(long, value_enum, default_value_t = CheckArg::Oracle)]
        check: CheckArg,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Fast,
    Oracle,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CaseArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CheckArg {
    Wilf,
    Oracle,
    Cases,
}

fn parse_rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

/// A failed command: exit status and message.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn domain(msg: impl ToString) -> Self {
        Failure {
            code: EXIT_DOMAIN,
            msg: msg.to_string(),
        }
    }

    fn mismatch(msg: impl ToString) -> Self {
        Failure {
            code: EXIT_MISMATCH,
            msg: msg.to_string(),
        }
    }
}

impl From<InvariantsError> for Failure {
    fn from(e: InvariantsError) -> Self {
        match e {
            InvariantsError::Mismatch(_) | InvariantsError::InternalInconsistency(_) => {
                Failure::mismatch(e)
            }
            _ => Failure::domain(e),
        }
    }
}

impl From<ReverseError> for Failure {
    fn from(e: ReverseError) -> Self {
        match e {
            ReverseError::InternalInconsistency(_) => Failure::mismatch(e),
            ReverseError::Invariants(inner) => inner.into(),
            _ => Failure::domain(e),
        }
    }
}

impl From<CfeError> for Failure {
    fn from(e: CfeError) -> Self {
        Failure::domain(e)
    }
}

impl From<OstrowskiError> for Failure {
    fn from(e: OstrowskiError) -> Self {
        Failure::domain(e)
    }
}

/// JSON number when it fits in 64 bits, decimal string otherwise.
fn jint(x: &Int) -> Value {
    if let Some(v) = x.to_i64() {
        json!(v)
    } else {
        json!(x.to_string())
    }
}

/// `(x1,x2,...)`.
fn paren(v: &[Int]) -> String {
    let body: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", body.join(","))
}

fn jlist(v: &[Int]) -> Value {
    Value::Array(v.iter().map(jint).collect())
}

/// The report as ordered `(key, text value, json value)` rows, shared by
/// both output modes so they cannot drift apart.
fn report_rows(r: &InvariantReport) -> Vec<(&'static str, String, Value)> {
    let tag = r.case_tag.map(|t| t.to_string());
    vec![
        ("multiplicity", r.multiplicity.to_string(), jint(&r.multiplicity)),
        ("embedding_dim", r.e.to_string(), json!(r.e)),
        ("type", r.t.to_string(), json!(r.t)),
        ("frobenius", r.frobenius.to_string(), jint(&r.frobenius)),
        ("genus", r.genus.to_string(), jint(&r.genus)),
        ("irr", fmt_list(&r.irr), jlist(&r.irr)),
        ("pf", fmt_list(&r.pf), jlist(&r.pf)),
        ("symmetric", r.symmetric.to_string(), json!(r.symmetric)),
        ("wilf_margin", fmt_rat(&r.wilf_margin), json!(fmt_rat(&r.wilf_margin))),
        ("method", r.method.to_string(), json!(r.method.to_string())),
        (
            "case_tag",
            tag.clone().unwrap_or_else(|| "none".into()),
            tag.map_or(Value::Null, Value::String),
        ),
    ]
}

fn cmd_invariants(a: Int, b: Int, d: Int, mode: ModeArg, as_json: bool) -> Result<(), Failure> {
    let (_, trace) = normalize(&a, &b, &d)?;
    for step in &trace {
        eprintln!("note: {step}");
    }
    let mode = match mode {
        ModeArg::Fast => Mode::Fast,
        ModeArg::Oracle => Mode::Oracle,
        ModeArg::Both => Mode::Both,
    };
    let report = full_report(&a, &b, &d, mode)?;
    let rows = report_rows(&report);
    if as_json {
        let obj: Map<String, Value> = rows.into_iter().map(|(k, _, v)| (k.to_string(), v)).collect();
        println!("{}", Value::Object(obj));
    } else {
        println!(
            "<{a},{b}>/{d}: m={} e={} t={} f={} g={}",
            report.multiplicity, report.e, report.t, report.frobenius, report.genus
        );
        for (k, text, _) in rows {
            println!("{k}: {text}");
        }
    }
    Ok(())
}

/// Oracle check of one triple: `Some(true/false)`, or `None` when the
/// table would be too large.
fn oracle_matches(spec: &QuotientSpec, set: &[Int]) -> Option<bool> {
    let (a, b, d) = (spec.a.to_u64()?, spec.b.to_u64()?, spec.d.to_u64()?);
    let irr = SemigroupOracle::quotient_ab(a, b, d).ok()?.irr();
    let mut want: Vec<Int> = set.to_vec();
    want.sort();
    want.dedup();
    Some(irr.into_iter().map(Int::from).collect::<Vec<_>>() == want)
}

struct Verifier<'a> {
    set: &'a [Int],
    enabled: bool,
    failed: Vec<String>,
}

impl Verifier<'_> {
    fn check(&mut self, spec: &QuotientSpec) -> Value {
        if !self.enabled {
            return Value::Null;
        }
        match oracle_matches(spec, self.set) {
            Some(true) => json!(true),
            Some(false) => {
                self.failed.push(spec.to_string());
                json!(false)
            }
            None => json!("skipped"),
        }
    }
}

fn verify_suffix(v: &Value) -> &'static str {
    match v {
        Value::Bool(true) => " verified",
        Value::Bool(false) => " MISMATCH",
        Value::String(_) => " verify-skipped",
        _ => "",
    }
}

fn solution_json(s: &Solution, verified: Value) -> Value {
    let mut obj = Map::new();
    obj.insert("a".into(), jint(&s.spec.a));
    obj.insert("b".into(), jint(&s.spec.b));
    obj.insert("d".into(), jint(&s.spec.d));
    obj.insert("ordering".into(), jlist(&s.ordering));
    if let Some(j) = &s.j {
        obj.insert("j".into(), jint(j));
    }
    if let Some(k) = &s.k {
        obj.insert("k".into(), jint(k));
    }
    if !verified.is_null() {
        obj.insert("verified".into(), verified);
    }
    Value::Object(obj)
}

fn params_text(s: &Solution) -> String {
    let mut out = String::new();
    if let Some(j) = &s.j {
        out.push_str(&format!(" j={j}"));
    }
    if let Some(k) = &s.k {
        out.push_str(&format!(" k={k}"));
    }
    out
}

fn families_out(
    label: &str,
    fams: &[FamilyResult],
    ver: &mut Verifier,
    lines: &mut Vec<String>,
) -> Value {
    let mut arr = Vec::new();
    for f in fams {
        let fam = &f.family;
        lines.push(format!(
            "{label} family from {}: {fam}",
            paren(&fam.ordering)
        ));
        let mut inst = Vec::new();
        for s in &f.instances {
            let v = ver.check(&s.spec);
            lines.push(format!("{label} {}{}{}", s.spec, params_text(s), verify_suffix(&v)));
            inst.push(solution_json(s, v));
        }
        let bounds: Map<String, Value> = fam
            .bounds
            .iter()
            .map(|(p, lo)| (p.to_string(), jint(lo)))
            .collect();
        arr.push(json!({
            "ordering": jlist(&fam.ordering),
            "family": fam.to_string(),
            "a": fam.a.to_string(),
            "b": fam.b.to_string(),
            "d": fam.d.to_string(),
            "bounds": bounds,
            "constraints": fam.constraints.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "instances": inst,
        }));
    }
    Value::Array(arr)
}

fn cmd_reverse(set: Vec<Int>, case: CaseArg, limit: usize, verify: bool, as_json: bool) -> Result<(), Failure> {
    let orderings = admissible_orderings(&set)?;
    let mut ver = Verifier {
        set: &set,
        enabled: verify,
        failed: Vec::new(),
    };
    let mut lines = vec![format!("set {}", fmt_list(&set))];
    for o in &orderings {
        lines.push(format!("ordering {o}"));
    }
    let mut out = Map::new();
    out.insert("set".into(), jlist(&set));
    out.insert(
        "orderings".into(),
        Value::Array(orderings.iter().map(|o| jlist(o.terms())).collect()),
    );
    if matches!(case, CaseArg::One | CaseArg::All) {
        let mut arr = Vec::new();
        for s in solve_case1(&set)? {
            let v = ver.check(&s.spec);
            lines.push(format!(
                "case1 {} ordering {}{}",
                s.spec,
                paren(&s.ordering),
                verify_suffix(&v)
            ));
            arr.push(solution_json(&s, v));
        }
        out.insert("case1".into(), Value::Array(arr));
    }
    if matches!(case, CaseArg::Two | CaseArg::All) {
        let fams = solve_case2(&set, limit)?;
        out.insert("case2".into(), families_out("case2", &fams, &mut ver, &mut lines));
    }
    if matches!(case, CaseArg::Three | CaseArg::All) {
        let fams = solve_case3(&set, limit)?;
        out.insert("case3".into(), families_out("case3", &fams, &mut ver, &mut lines));
    }
    if as_json {
        println!("{}", Value::Object(out));
    } else {
        for l in lines {
            println!("{l}");
        }
    }
    if ver.failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::mismatch(format!(
            "MismatchError: table generators differ for {}",
            ver.failed.join(", ")
        )))
    }
}

fn print_table(title: &str, t: &ConvergentTable, terms: &[Int]) {
    println!("{title}");
    println!("  {:>4}  {:>12}  {:>16}  {:>16}", "i", "term", "p_i", "q_i");
    for i in 0..t.len() {
        println!("  {:>4}  {:>12}  {:>16}  {:>16}", i, terms[i], t.ps[i], t.qs[i]);
    }
}

fn cmd_cf(x: Rat, ceiling: bool, convergents: bool, semi: bool) -> Result<(), Failure> {
    println!("x = {}", fmt_rat(&x));
    let fl = floor_cfe(&x);
    println!("floor {fl}");
    let ce = if ceiling {
        let c = ceil_cfe(&x, MAX_CEIL_TERMS)?;
        println!("ceiling {c}");
        Some(c)
    } else {
        None
    };
    if convergents {
        print_table("floor convergents", &fl.convergents(), fl.terms());
        if let Some(c) = &ce {
            print_table("ceiling convergents", &c.convergents(), c.terms());
        }
    }
    if semi {
        let s: Vec<String> = semiconvergents(&x).iter().map(fmt_rat).collect();
        println!("semiconvergents {}", s.join(" "));
    }
    Ok(())
}

fn cmd_ostrowski(alpha: Rat, n: Int) -> Result<(), Failure> {
    let c = AlphaCtx::new(&alpha)?;
    let digits = c.psi_inv(&n)?;
    println!("alpha = {} = {}", fmt_rat(&alpha), floor_cfe(&alpha));
    println!("digits of {n}: {digits}");
    let f = c.frac_of(&n);
    println!("{{{n} alpha}} = {}", fmt_rat(&f));
    let mut sum_n = Int::zero();
    let mut sum_floor = Int::zero();
    let mut sum_frac = Rat::zero();
    for (i, dj) in digits.0.iter().enumerate() {
        let i = i as isize;
        sum_n += dj * c.q(i);
        sum_floor += dj * c.p(i);
        let t = Rat::from_integer(dj.clone()) * c.delta(i);
        if i % 2 == 0 {
            sum_frac += t;
        } else {
            sum_frac -= t;
        }
    }
    let fl = floor(&(&alpha * Rat::from_integer(n.clone())));
    let checks = [
        ("n = sum d_j q_(j-1)", n.to_string(), sum_n.to_string()),
        ("floor(n alpha) = sum d_j p_(j-1)", fl.to_string(), sum_floor.to_string()),
        ("{n alpha} = sum (-1)^(j-1) d_j delta_(j-1)", fmt_rat(&f), fmt_rat(&sum_frac)),
    ];
    let mut bad = Vec::new();
    for (name, lhs, rhs) in checks {
        let ok = lhs == rhs;
        println!("{name}: {lhs} = {rhs} {}", if ok { "ok" } else { "FAILED" });
        if !ok {
            bad.push(name);
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::mismatch(format!("MismatchError: {}", bad.join("; "))))
    }
}

/// Violation lines `a b d field fast_value oracle_value` for one spec.
fn scan_one(a: u64, b: u64, d: u64, check: CheckArg) -> Vec<String> {
    let line = |field: &str, x: &dyn std::fmt::Display, y: &dyn std::fmt::Display| {
        format!("{a} {b} {d} {field} {x} {y}")
    };
    let spec = match QuotientSpec::from_u64(a, b, d) {
        Ok(s) => s,
        Err(e) => return vec![line("error", &e.to_string().replace(' ', "_"), &"-")],
    };
    let fast = match fast_report(&spec) {
        Ok(r) => r,
        Err(e) => return vec![line("error", &e.to_string().replace(' ', "_"), &"-")],
    };
    let mut out = Vec::new();
    match check {
        CheckArg::Oracle => {
            let slow = match oracle_report(&spec) {
                Ok(r) => r,
                Err(e) => return vec![line("error", &"-", &e.to_string().replace(' ', "_"))],
            };
            let f = report_rows(&fast);
            let s = report_rows(&slow);
            for ((k, x, _), (_, y, _)) in f.iter().zip(&s) {
                if matches!(*k, "method" | "case_tag") {
                    continue;
                }
                if x != y {
                    out.push(line(k, x, y));
                }
            }
        }
        CheckArg::Wilf => {
            if fast.wilf_margin.is_positive() {
                out.push(line("wilf_margin", &fmt_rat(&fast.wilf_margin), &"<=0"));
            }
            if fast.t >= fast.e {
                out.push(line("type", &fast.t, &format!("<{}", fast.e)));
            }
        }
        CheckArg::Cases => {
            let expected = if d < a {
                "D_LT_A"
            } else if d < b {
                "A_LT_D_LT_B"
            } else {
                "D_GT_B"
            };
            let tag = fast.case_tag.map(|t| t.to_string()).unwrap_or_else(|| "none".into());
            if !tag.starts_with(expected) {
                out.push(line("case_tag", &tag, &expected));
            }
        }
    }
    out
}

fn cmd_scan(max_a: u64, max_b: u64, max_d: u64, check: CheckArg, jobs: usize) -> Result<(), Failure> {
    let mut specs = Vec::new();
    for a in 2..=max_a.min(max_b.saturating_sub(1)) {
        for b in a + 1..=max_b {
            if a.gcd(&b) != 1 {
                continue;
            }
            for d in 2..=max_d {
                if a.gcd(&d) == 1 && b.gcd(&d) == 1 && !member_ab(d, a, b) {
                    specs.push((a, b, d));
                }
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::domain(format!("DomainError: {e}")))?;
    // Indexed parallel collect keeps the (a, b, d) order of `specs`.
    let results: Vec<Vec<String>> = pool.install(|| {
        specs
            .par_iter()
            .map(|&(a, b, d)| scan_one(a, b, d, check))
            .collect()
    });
    let mut violations = 0usize;
    for lines in &results {
        for l in lines {
            println!("{l}");
            violations += 1;
        }
    }
    eprintln!("{} specs checked, {violations} violations", specs.len());
    if violations == 0 {
        Ok(())
    } else {
        Err(Failure::mismatch(format!("MismatchError: {violations} violations")))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Invariants { a, b, d, mode, json } => cmd_invariants(a, b, d, mode, json),
        Command::Reverse {
            set,
            case,
            limit,
            verify,
            json,
        } => cmd_reverse(set, case, limit, verify, json),
        Command::Cf {
            x,
            ceiling,
            convergents,
            semiconvergents,
        } => cmd_cf(x, ceiling, convergents, semiconvergents),
        Command::Ostrowski { alpha, n } => cmd_ostrowski(alpha, n),
        Command::Scan {
            max_a,
            max_b,
            max_d,
            check,
            jobs,
        } => cmd_scan(max_a, max_b, max_d, check, jobs),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
