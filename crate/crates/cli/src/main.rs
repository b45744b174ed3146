//! `groupdet`: group determinants and the integer group determinants of C8 x C2.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on a usage error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use groupdet::c8c2::{self, Clause, Verdict};
use groupdet::error::Error;
use groupdet::gdet::{cross_check, eval_bareiss, eval_via_subgroup, factor_report_text, symbolic_z};
use groupdet::groups::{GroupSpec, Subgroup};
use groupdet::search::{self, Evaluator, Predicate, SearchSpec, ValueTable};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "groupdet", version, about = "Exact group determinants and the integer group determinants of C8 x C2")]
#[command(after_help = "Groups are written C8xC2, C4, C2^4 or D16. Assignments are comma-separated integers \
indexed by element; for C8xC2 the element (r, s) has index r + 8s.")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the group determinant at an assignment, cross-checking every evaluator.
    Eval {
        group: String,
        #[arg(allow_hyphen_values = true)]
        assignment: String,
    },
    /// Factor the determinant through a subgroup H given by generators.
    Factor {
        group: String,
        /// Comma-separated element indices generating H (empty for the trivial subgroup).
        #[arg(allow_hyphen_values = true)]
        generators: String,
        #[arg(allow_hyphen_values = true)]
        assignment: String,
    },
    /// Print the polynomials z_h with Theta_G = Theta_H(z_h).
    Zpoly {
        group: String,
        /// Comma-separated element indices generating H.
        generators: String,
    },
    /// Decide whether an integer is a group determinant of C8 x C2.
    Classify {
        #[arg(allow_hyphen_values = true)]
        n: i128,
        /// Largest |n| that will be factored.
        #[arg(long, default_value_t = c8c2::DEFAULT_BOUND)]
        bound: u128,
    },
    /// Build a C8 x C2 assignment with a prescribed determinant.
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// Run an exhaustive residue check (`all` runs every check).
    CheckLemma { id: String },
    /// Enumerate determinant values over a box of assignments.
    Search(SearchArgs),
    /// Check that every value of a saved table lies in a predicate or another table.
    VerifySubset {
        /// JSONL table written by `search --out`.
        #[arg(long)]
        inner: PathBuf,
        /// A predicate (C8xC2, C8, C4, C2, any) or a path to another JSONL table.
        #[arg(long)]
        outer: String,
    },
    /// Run the residue checks, evaluator cross-checks and witness checks.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random assignments per group.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
enum WitnessKind {
    /// One of the six single-parameter patterns (cases 1-6).
    Pattern {
        case: u8,
        #[arg(allow_hyphen_values = true)]
        m: i64,
        /// Second parameter, used by cases 2 and 3.
        #[arg(allow_hyphen_values = true, default_value_t = 0)]
        n: i64,
    },
    /// A prime-indexed family with 2-adic valuation 11 (cases 1-3).
    Prime {
        case: u8,
        p: u64,
        #[arg(allow_hyphen_values = true)]
        m: i64,
    },
    /// A witness for any member value, chosen from its classification.
    Value {
        #[arg(allow_hyphen_values = true)]
        n: i128,
        /// Require this classification clause.
        #[arg(long)]
        clause: Option<String>,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    group: String,
    /// Coordinate range `lo..hi` (inclusive) applied to every entry.
    #[arg(long = "box", default_value = "0..1", allow_hyphen_values = true)]
    range: String,
    /// Record only values with |value| <= B.
    #[arg(long)]
    value_bound: Option<BigInt>,
    /// Write the table as JSONL.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Draw this many random points instead of scanning the whole box.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// closed-form, dedekind or bareiss (default: the fastest that applies).
    #[arg(long)]
    evaluator: Option<String>,
    /// Largest number of points evaluated.
    #[arg(long, default_value_t = search::DEFAULT_CAP)]
    cap: u128,
}

/// A failed command: usage errors exit with 2, failed verifications with 1.
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) | Error::Integrality(_) | Error::InexactDivision(_) | Error::BlockStructure(_) => {
                Failure::Verification(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_list(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|_| usage(format!("`{s}` is not an integer"))))
        .collect()
}

fn parse_group(text: &str) -> Result<GroupSpec, Failure> {
    GroupSpec::parse(text).map_err(|e| usage(format!("{e}; expected something like C8xC2, C4, C2^4 or D16")))
}

fn parse_assignment(group: &GroupSpec, text: &str) -> Result<Vec<i64>, Failure> {
    let a = parse_list(text)?;
    if a.len() != group.size() {
        return Err(usage(format!("{group} needs {} comma-separated values, got {}", group.size(), a.len())));
    }
    Ok(a)
}

fn parse_subgroup(group: &GroupSpec, text: &str) -> Result<Subgroup, Failure> {
    let g = group.abelian().ok_or_else(|| usage(format!("{group} is not abelian")))?;
    let gens: Vec<usize> = parse_list(text)?
        .into_iter()
        .map(|x| usize::try_from(x).map_err(|_| usage(format!("element index {x} is negative"))))
        .collect::<Result<_, _>>()?;
    Ok(Subgroup::closure(g, &gens)?)
}

fn parse_box(text: &str) -> Result<(i64, i64), Failure> {
    let bad = || usage(format!("box `{text}` should look like -1..1"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Writes to stdout, ignoring a closed pipe.
fn print(json_mode: bool, value: &Value, text: impl FnOnce() -> String) {
    let out = if json_mode { serde_json::to_string_pretty(value).expect("serializable") } else { text() };
    let _ = writeln!(std::io::stdout(), "{out}");
}

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
fn int_json(v: &BigInt) -> Value {
    i64::try_from(v).map(Value::from).unwrap_or_else(|_| Value::from(v.to_string()))
}

fn join(a: &[i64]) -> String {
    a.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn eval(json_mode: bool, group: &str, assignment: &str) -> Outcome {
    let group = parse_group(group)?;
    let a = parse_assignment(&group, assignment)?;
    let value = cross_check(&group, &a)?;
    print(json_mode, &json!({"group": group.to_string(), "assignment": a, "value": int_json(&value)}), || value.to_string());
    Ok(())
}

fn factor(json_mode: bool, group: &str, generators: &str, assignment: &str) -> Outcome {
    let group = parse_group(group)?;
    let h = parse_subgroup(&group, generators)?;
    let a = parse_assignment(&group, assignment)?;
    let report = eval_via_subgroup(&h, &a)?;
    print(json_mode, &serde_json::to_value(&report).expect("serializable"), || factor_report_text(&report));
    Ok(())
}

fn zpoly(json_mode: bool, group: &str, generators: &str) -> Outcome {
    let group = parse_group(group)?;
    let h = parse_subgroup(&group, generators)?;
    let z = symbolic_z(&h)?;
    let entries: Vec<Value> = z.iter().map(|(h, p)| json!({"element": h, "polynomial": p.to_string()})).collect();
    let value = json!({"group": group.to_string(), "subgroup": h.elements(), "z": entries});
    print(json_mode, &value, || z.iter().map(|(h, p)| format!("z_{h} = {p}")).collect::<Vec<_>>().join("\n"));
    Ok(())
}

fn verdict_text(v: &Verdict) -> String {
    let status = if v.member { "member" } else { "non-member" };
    let cert = serde_json::to_string(&v.certificate).expect("serializable");
    format!("{}: {status} ({})\ncertificate: {cert}", v.value, v.clause)
}

fn classify(json_mode: bool, n: i128, bound: u128) -> Outcome {
    let v = c8c2::classify_with_bound(n, bound)?;
    print(json_mode, &serde_json::to_value(&v).expect("serializable"), || verdict_text(&v));
    if v.verify() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("certificate for {n} does not re-check")))
    }
}

fn witness(json_mode: bool, kind: WitnessKind) -> Outcome {
    let (a, target) = match kind {
        WitnessKind::Pattern { case, m, n } => (c8c2::witness_71(case, m, n)?, c8c2::witness_71_value(case, m, n)?),
        WitnessKind::Prime { case, p, m } => (c8c2::witness_72(case, p, m)?, c8c2::witness_72_value(case, p, m)?),
        WitnessKind::Value { n, clause } => {
            let v = c8c2::classify(n)?;
            if let Some(name) = clause {
                let want = Clause::parse(&name).ok_or_else(|| usage(format!("unknown clause `{name}`")))?;
                if v.clause != want {
                    return Err(Failure::Verification(format!("{n} falls under {}, not {want}", v.clause)));
                }
            }
            if !v.member {
                return Err(Failure::Verification(format!("{n} is not a determinant of C8xC2 ({})", v.clause)));
            }
            (c8c2::witness_for(&v)?, BigInt::from(n))
        }
    };
    let value = eval_bareiss(&c8c2::group().cayley(), &a)?;
    let ok = value == target && c8c2::d8x2(&a) == value;
    print(json_mode, &json!({"witness": a, "value": int_json(&value), "target": int_json(&target), "verified": ok}), || {
        format!("{}\nvalue {value} (target {target}){}", join(&a), if ok { "" } else { " MISMATCH" })
    });
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification(format!("witness evaluates to {value}, expected {target}")))
    }
}

fn check_lemma(json_mode: bool, id: &str) -> Outcome {
    let ids: Vec<&str> = if id == "all" { c8c2::residue_check_ids().to_vec() } else { vec![id] };
    let mut reports = Vec::new();
    for id in ids {
        reports.push(c8c2::residue_check(id)?);
    }
    print(json_mode, &serde_json::to_value(&reports).expect("serializable"), || {
        reports
            .iter()
            .map(|r| {
                let status = if r.passed { "PASS" } else { "FAIL" };
                format!("{status} {} ({} cases, {} counterexamples): {}", r.id, r.cases, r.counterexamples.len(), r.statement)
            })
            .collect::<Vec<_>>()
            .join("\n")
    });
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Verification("residue check failed".into()))
    }
}

fn run_search(json_mode: bool, args: SearchArgs) -> Outcome {
    let group = parse_group(&args.group)?;
    let (lo, hi) = parse_box(&args.range)?;
    let mut spec = SearchSpec::new(group, lo, hi)?.with_cap(args.cap);
    if let Some(name) = &args.evaluator {
        let e = Evaluator::parse(name).ok_or_else(|| usage(format!("unknown evaluator `{name}`")))?;
        spec = spec.with_evaluator(e)?;
    }
    if let Some(b) = args.value_bound {
        spec = spec.with_value_bound(b);
    }
    let table = match args.samples {
        Some(n) => search::sample(&spec, n, args.seed)?,
        None => search::enumerate(&spec)?,
    };
    if let Some(path) = &args.out {
        table.save_jsonl(path)?;
    }
    const SHOWN: usize = 64;
    let values: Vec<&BigInt> = table.values().collect();
    let value = json!({
        "group": table.group,
        "evaluator": table.evaluator,
        "scanned": table.scanned,
        "distinct": table.len(),
        "duration_ms": table.duration_ms,
        "out": args.out,
        "values": values.iter().map(|v| int_json(v)).collect::<Vec<_>>(),
    });
    print(json_mode, &value, || {
        let mut s = format!(
            "{}: {} points, {} distinct values ({} evaluator, {} ms)",
            table.group, table.scanned, table.len(), table.evaluator, table.duration_ms
        );
        let shown: Vec<String> = values.iter().take(SHOWN).map(|v| v.to_string()).collect();
        s.push_str(&format!("\nvalues: {}", shown.join(" ")));
        if values.len() > SHOWN {
            s.push_str(&format!(" ... ({} more)", values.len() - SHOWN));
        }
        s
    });
    Ok(())
}

fn verify_subset(json_mode: bool, inner: &std::path::Path, outer: &str) -> Outcome {
    let table = ValueTable::load_jsonl(inner)?;
    let verified = table.verify_witnesses()?;
    let (outer_name, violations, undecided): (String, Vec<BigInt>, Vec<BigInt>) = match Predicate::parse(outer) {
        Some(p) => {
            let r = search::verify_subset(&table, p)?;
            (p.name().into(), r.violations.into_iter().map(|v| v.value).collect(), r.undecided)
        }
        None if std::path::Path::new(outer).exists() => {
            let other = ValueTable::load_jsonl(outer.as_ref())?;
            let missing = table.values().filter(|v| !other.contains(v)).cloned().collect();
            (format!("search({})", other.group), missing, Vec::new())
        }
        None => return Err(usage(format!("`{outer}` is neither a predicate (C8xC2, C8, C4, C2, any) nor a table file"))),
    };
    let value = json!({
        "inner": format!("search({})", table.group),
        "outer": outer_name,
        "checked": table.len(),
        "witnesses_verified": verified,
        "violations": violations.iter().map(int_json).collect::<Vec<_>>(),
        "undecided": undecided.iter().map(int_json).collect::<Vec<_>>(),
        "passed": violations.is_empty(),
    });
    print(json_mode, &value, || {
        let status = if violations.is_empty() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{status}: {} values of search({}) checked against {outer_name}, {} violations, {} undecided; {verified} witnesses re-verified",
            table.len(),
            table.group,
            violations.len(),
            undecided.len()
        );
        if !violations.is_empty() {
            let shown: Vec<String> = violations.iter().take(20).map(BigInt::to_string).collect();
            s.push_str(&format!("\nviolations: {}", shown.join(" ")));
        }
        s
    });
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{} values outside {outer_name}", violations.len())))
    }
}

const SELFTEST_GROUPS: [&str; 9] = ["C2", "C4", "C8", "C2^2", "C4xC2", "C8xC2", "C2^4", "C16", "D16"];

fn selftest(json_mode: bool, seed: u64, samples: usize) -> Outcome {
    let mut results: Vec<(String, bool, String)> = Vec::new();
    for id in c8c2::residue_check_ids() {
        let r = c8c2::residue_check(id)?;
        results.push((format!("residue {id}"), r.passed, format!("{} cases", r.cases)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for name in SELFTEST_GROUPS {
        let group = GroupSpec::parse(name)?;
        let mut failure = None;
        for _ in 0..samples {
            let a: Vec<i64> = (0..group.size()).map(|_| rng.gen_range(-5..=5)).collect();
            if let Err(e) = cross_check(&group, &a) {
                failure = Some(e.to_string());
                break;
            }
        }
        let ok = failure.is_none();
        results.push((format!("evaluators agree on {name}"), ok, failure.unwrap_or_else(|| format!("{samples} assignments"))));
    }
    let mut witness_failure = None;
    'cases: for case in 1..=6u8 {
        for m in -3..=3 {
            let a = c8c2::witness_71(case, m, m + 1)?;
            if c8c2::d8x2(&a) != c8c2::witness_71_value(case, m, m + 1)? {
                witness_failure = Some(format!("pattern {case} at m = {m}"));
                break 'cases;
            }
        }
    }
    for (case, p) in [(1u8, 13u64), (2, 11), (3, 17), (3, 73)] {
        if witness_failure.is_none() && c8c2::witness_72(case, p, 1).is_err() {
            witness_failure = Some(format!("prime family {case} at p = {p}"));
        }
    }
    results.push(("witness families".into(), witness_failure.is_none(), witness_failure.unwrap_or_else(|| "6 patterns, 4 prime families".into())));
    let mut classify_failure = None;
    for n in -300i128..=300 {
        let v = c8c2::classify(n)?;
        if !v.verify() || (v.member && c8c2::witness_for(&v).is_err()) {
            classify_failure = Some(format!("n = {n}"));
            break;
        }
    }
    results.push(("classifier certificates and witnesses for |n| <= 300".into(), classify_failure.is_none(), classify_failure.unwrap_or_else(|| "601 values".into())));
    let spec = SearchSpec::new(GroupSpec::parse("C8xC2")?, 0, 1)?;
    let table = search::enumerate(&spec)?;
    let report = search::verify_subset(&table, Predicate::C8xC2)?;
    results.push((
        "binary box values are classified members".into(),
        report.passed && report.undecided.is_empty(),
        format!("{} values", report.checked),
    ));
    let passed = results.iter().all(|r| r.1);
    let value = json!({
        "passed": passed,
        "checks": results.iter().map(|(name, ok, detail)| json!({"check": name, "passed": ok, "detail": detail})).collect::<Vec<_>>(),
    });
    print(json_mode, &value, || {
        results
            .iter()
            .map(|(name, ok, detail)| format!("{} {name}: {detail}", if *ok { "PASS" } else { "FAIL" }))
            .collect::<Vec<_>>()
            .join("\n")
    });
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification("selftest failed".into()))
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| usage(e.to_string()))?;
    }
    let j = cli.json;
    match cli.command {
        Command::Eval { group, assignment } => eval(j, &group, &assignment),
        Command::Factor { group, generators, assignment } => factor(j, &group, &generators, &assignment),
        Command::Zpoly { group, generators } => zpoly(j, &group, &generators),
        Command::Classify { n, bound } => classify(j, n, bound),
        Command::Witness { kind } => witness(j, kind),
        Command::CheckLemma { id } => check_lemma(j, &id),
        Command::Search(args) => run_search(j, args),
        Command::VerifySubset { inner, outer } => verify_subset(j, &inner, &outer),
        Command::Selftest { seed, samples } => selftest(j, seed, samples),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
