//! Command-line driver: emits presentations, runs the verification
//! suites, and produces dimension tables and reports.
//!
//! Exit codes: 0 = pass, 1 = verification failure, 2 = usage error,
//! 3 = resource bound exceeded. Progress goes to stderr, results to
//! stdout (or `--output`).

use crate::error::Error;
use crate::gf::FieldCtx;
use crate::groups::{GroupKind, GroupSpec};
use crate::hilbert;
use crate::invgen::InvariantSet;
use crate::oracle;
use crate::presentation::{
    build_presentation, check_elimination_structure, check_minimality_obstruction,
    verify_kernel, Presentation,
};
use crate::relcheck;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser)]
#[command(
    name = "invar",
    version,
    about = "Generators, relations, and dimension tables of the invariant rings F_q[V + V*]^G"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    Un,
    Bn,
    Gln,
    Sln,
}

impl GroupArg {
    fn kind(self) -> GroupKind {
        match self {
            GroupArg::Un => GroupKind::Un,
            GroupArg::Bn => GroupKind::Bn,
            GroupArg::Gln => GroupKind::GLn,
            GroupArg::Sln => GroupKind::SLn,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Cas,
    Csv,
}

#[derive(Args)]
struct CommonArgs {
    /// Group family.
    #[arg(long, value_enum)]
    group: Option<GroupArg>,
    /// Rank of the natural module.
    #[arg(long)]
    n: Option<usize>,
    /// Characteristic (prime).
    #[arg(long)]
    p: Option<u64>,
    /// Field extension degree: q = p^e.
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// Total-degree bound for tables and checks.
    #[arg(long)]
    cutoff: Option<u64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker-parallelism cap (results are independent of this).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write results here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Read a presentation from this JSON file instead of generating it.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the generators-and-relations presentation (un, bn).
    Gen(CommonArgs),
    /// Substitute concrete invariants into every relation and check the
    /// structural tables.
    Verify(CommonArgs),
    /// Brute-force invariant dimension table.
    Dims(CommonArgs),
    /// Expand the closed-form bigraded Hilbert series.
    Hilbert(CommonArgs),
    /// Check the general-linear generation conjecture by brute force.
    CheckConjecture(CommonArgs),
    /// Fuzz the double-sum determinant identity over several base rings.
    FuzzDet {
        /// Largest matrix size.
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Random instances per (n, k) per ring.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Report the SL_2(F_3) non-generation example.
    Sl2Example {
        #[arg(long, default_value_t = 6)]
        cutoff: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::ResourceBound(_) | Error::OrbitBound(_) | Error::Overflow(_) => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn emit(output: &Option<PathBuf>, text: &str) -> i32 {
    match output {
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            EXIT_PASS
        }
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => EXIT_PASS,
            Err(e) => usage_error(&format!("cannot write {}: {e}", path.display())),
        },
    }
}

struct Resolved {
    kind: GroupKind,
    n: usize,
    field: Arc<FieldCtx>,
}

fn resolve(common: &CommonArgs) -> Result<Resolved, i32> {
    let kind = common
        .group
        .ok_or_else(|| usage_error("--group is required"))?
        .kind();
    let n = common.n.ok_or_else(|| usage_error("--n is required"))?;
    if n == 0 {
        return Err(usage_error("--n must be at least 1"));
    }
    let p = common.p.ok_or_else(|| usage_error("--p is required"))?;
    let field = FieldCtx::new(p, common.e).map_err(|e| usage_error(&e.to_string()))?;
    Ok(Resolved { kind, n, field })
}

fn presentation_text(p: &Presentation) -> String {
    let q = p.field.q;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "presentation: group {}, n = {}, q = {}",
        p.group.name(),
        p.n,
        q
    );
    if p.free_flagged {
        let _ = writeln!(out, "free (no relations)");
    }
    let _ = writeln!(out, "generators ({}):", p.generators.len());
    for g in &p.generators {
        let (d, e) = g.bidegree(q).unwrap_or((0, 0));
        let _ = writeln!(out, "  {}  bidegree ({d}, {e})", g.name());
    }
    let _ = writeln!(out, "relations ({}):", p.relations.len());
    for r in &p.relations {
        let _ = writeln!(out, "  {} = {}", r.label.name(), r.poly.render());
    }
    out
}

fn presentation_csv(p: &Presentation) -> String {
    let q = p.field.q;
    let mut out = String::from("kind,name,d,e\n");
    for g in &p.generators {
        let (d, e) = g.bidegree(q).unwrap_or((0, 0));
        let _ = writeln!(out, "generator,{},{d},{e}", g.name());
    }
    for r in &p.relations {
        let (d, e) = r.label.expected_bidegree(p.n, q).unwrap_or((0, 0));
        let _ = writeln!(out, "relation,{},{d},{e}", r.label.name());
    }
    out
}

fn cmd_gen(common: &CommonArgs) -> i32 {
    let r = match resolve(common) {
        Ok(r) => r,
        Err(code) => return code,
    };
    if matches!(r.kind, GroupKind::GLn | GroupKind::SLn) {
        return usage_error(
            "no finite presentation is emitted for gln/sln; use check-conjecture or dims",
        );
    }
    let p = match build_presentation(r.kind, r.n, &r.field) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    if p.free_flagged {
        eprintln!(
            "warning: the n = 1 unipotent group is trivial; the invariant ring is the \
             free polynomial ring on F1, Fs1"
        );
    }
    let text = match common.format {
        FormatArg::Text => presentation_text(&p),
        FormatArg::Json => match p.to_json() {
            Ok(v) => format!("{:#}\n", v),
            Err(e) => {
                eprintln!("error: {e}");
                return exit_code_for(&e);
            }
        },
        FormatArg::Cas => p.to_cas_script(),
        FormatArg::Csv => presentation_csv(&p),
    };
    emit(&common.output, &text)
}

fn cmd_verify(common: &CommonArgs) -> i32 {
    let r = match resolve(common) {
        Ok(r) => r,
        Err(code) => return code,
    };
    if matches!(r.kind, GroupKind::GLn | GroupKind::SLn) {
        return usage_error("verify supports the un and bn presentations");
    }
    let p = match &common.input {
        None => match build_presentation(r.kind, r.n, &r.field) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("error: {e}");
                return exit_code_for(&e);
            }
        },
        Some(path) => {
            // a presentation that cannot be read back is a failed
            // verification, not a usage error
            let loaded = std::fs::read_to_string(path)
                .map_err(Error::from)
                .and_then(|s| Ok(serde_json::from_str::<serde_json::Value>(&s)?))
                .and_then(|v| Presentation::from_json(&v));
            match loaded {
                Ok(p) => p,
                Err(e) => {
                    println!("FAIL: input presentation rejected: {e}");
                    return EXIT_FAIL;
                }
            }
        }
    };
    eprintln!(
        "verifying {} relations for {} at n = {}, q = {} ...",
        p.relations.len(),
        p.group.name(),
        p.n,
        p.field.q
    );
    let inv = match InvariantSet::build(&p.field, p.n) {
        Ok(inv) => inv,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let kernel = match verify_kernel(&p, &inv) {
        Ok(k) => k,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let elim = match check_elimination_structure(&p) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let flags = match check_minimality_obstruction(&p) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let mut out = String::new();
    let mut ok = true;
    for entry in &kernel.entries {
        let status = if entry.pass { "PASS" } else { "FAIL" };
        ok &= entry.pass;
        let _ = writeln!(
            out,
            "kernel {} {} (residue terms: {})",
            entry.label.name(),
            status,
            entry.residue_terms
        );
    }
    for row in &elim {
        let status = if row.ok { "PASS" } else { "FAIL" };
        ok &= row.ok;
        let _ = writeln!(
            out,
            "structure {} {} (relation for U{}) {}",
            row.label.name(),
            status,
            row.relation_for,
            row.detail.join("; ")
        );
    }
    for flag in &flags {
        let _ = writeln!(
            out,
            "minimality note: relation {} dominates generator {}",
            flag.relation.name(),
            flag.generator.name()
        );
    }
    let _ = writeln!(out, "{}", if ok { "PASS" } else { "FAIL" });
    let code = emit(&common.output, &out);
    if code != EXIT_PASS {
        return code;
    }
    if ok {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn cmd_dims(common: &CommonArgs) -> i32 {
    let r = match resolve(common) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let cutoff = common.cutoff.unwrap_or(if r.n <= 3 { 12 } else { 8 });
    let group = GroupSpec::new(r.kind, r.n, r.field);
    eprintln!(
        "computing invariant dimensions for {} at n = {}, q = {}, cutoff {cutoff} ...",
        r.kind.name(),
        r.n,
        group.field.q
    );
    let table = match oracle::build_dim_table(&group, cutoff) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let text = match common.format {
        FormatArg::Json => format!("{:#}\n", table.to_json()),
        _ => table.to_csv(),
    };
    emit(&common.output, &text)
}

fn cmd_hilbert(common: &CommonArgs) -> i32 {
    let r = match resolve(common) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let series = match hilbert::series_for(r.kind, r.n, r.field.q) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return usage_error(&format!("{e}"));
        }
    };
    let cutoff = common.cutoff.unwrap_or(12) as usize;
    let trunc = match hilbert::expand(&series, cutoff, cutoff) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let text = match common.format {
        FormatArg::Json => {
            let v = serde_json::json!({
                "series": series.to_json(),
                "cutoff": cutoff,
                "coeffs": trunc
                    .coeffs
                    .iter()
                    .map(|row| row.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            });
            format!("{:#}\n", v)
        }
        FormatArg::Csv => trunc.to_csv(),
        _ => {
            let mut out = String::new();
            let factor = |list: &[(u64, u64)]| {
                list.iter()
                    .map(|&(a, b)| format!("(1 - s^{a} t^{b})"))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let _ = writeln!(out, "numerator:   {}", factor(&series.numerator));
            let _ = writeln!(out, "denominator: {}", factor(&series.denominator));
            out.push_str(&trunc.to_csv());
            out
        }
    };
    emit(&common.output, &text)
}

fn cmd_check_conjecture(common: &CommonArgs) -> i32 {
    let n = match common.n {
        Some(n) if n >= 1 => n,
        _ => return usage_error("--n is required and must be at least 1"),
    };
    let p = match common.p {
        Some(p) => p,
        None => return usage_error("--p is required"),
    };
    let field = match FieldCtx::new(p, common.e) {
        Ok(f) => f,
        Err(e) => return usage_error(&e.to_string()),
    };
    let cutoff = common.cutoff.unwrap_or(if n <= 2 { 10 } else { 8 });
    let group = GroupSpec::new(GroupKind::GLn, n, field.clone());
    eprintln!(
        "checking the general-linear generation conjecture at n = {n}, q = {}, cutoff {cutoff} ...",
        field.q
    );
    let gens = match oracle::conjecture_generators(&field, n) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let report = match oracle::check_generation(&group, &gens, cutoff) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let text = match common.format {
        FormatArg::Json => format!("{:#}\n", report.to_json()),
        _ => {
            let mut out = String::new();
            for cell in &report.cells {
                let _ = writeln!(
                    out,
                    "({}, {}): span {} / invariants {}",
                    cell.d, cell.e, cell.subalgebra, cell.invariant
                );
            }
            let _ = writeln!(out, "{}", if report.pass { "PASS" } else { "FAIL" });
            out
        }
    };
    let code = emit(&common.output, &text);
    if code != EXIT_PASS {
        return code;
    }
    if report.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn cmd_fuzz_det(
    n: usize,
    trials: usize,
    seed: u64,
    format: FormatArg,
    output: &Option<PathBuf>,
) -> i32 {
    eprintln!("fuzzing the determinant identity: n <= {n}, {trials} trials per case, seed {seed} ...");
    let report = match relcheck::fuzz_det_identity(n, trials, seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let text = match format {
        FormatArg::Json => format!("{:#}\n", report.to_json()),
        _ => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "seed {}, {} trials, {} failures",
                report.seed, report.trials, report.failures
            );
            for case in &report.failing_cases {
                let _ = writeln!(out, "failing case: {case}");
            }
            let _ = writeln!(out, "{}", if report.failures == 0 { "PASS" } else { "FAIL" });
            out
        }
    };
    let code = emit(output, &text);
    if code != EXIT_PASS {
        return code;
    }
    if report.failures == 0 {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn cmd_sl2_example(cutoff: u64, format: FormatArg, output: &Option<PathBuf>) -> i32 {
    eprintln!("running the SL_2(F_3) example up to total degree {cutoff} ...");
    let report = match oracle::sl2_counterexample_report(cutoff) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let text = match format {
        FormatArg::Json => format!("{:#}\n", report.to_json()),
        _ => {
            let mut out = String::new();
            let _ = writeln!(out, "orbit length of the pairing form: {}", report.orbit_len);
            let _ = writeln!(out, "orbit contains the negated form: {}", report.contains_neg_h);
            let _ = writeln!(
                out,
                "x-side invariants generated by f1, f2 up to the cutoff: {}",
                report.v_generation_ok
            );
            match report.first_deficit {
                Some((d, e)) => {
                    let _ = writeln!(
                        out,
                        "candidate set falls short first at bidegree ({d}, {e}), missing {} dimension(s)",
                        report.deficit_amount
                    );
                }
                None => {
                    let _ = writeln!(out, "candidate set generates up to the cutoff");
                }
            }
            out
        }
    };
    emit(output, &text)
}

/// Parses `args` (including the program name) and runs the requested
/// command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap renders its own help/version output
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match &cli.command {
        Command::Gen(c) => cmd_gen(c),
        Command::Verify(c) => cmd_verify(c),
        Command::Dims(c) => cmd_dims(c),
        Command::Hilbert(c) => cmd_hilbert(c),
        Command::CheckConjecture(c) => cmd_check_conjecture(c),
        Command::FuzzDet {
            n,
            trials,
            seed,
            format,
            output,
        } => cmd_fuzz_det(*n, *trials, *seed, *format, output),
        Command::Sl2Example {
            cutoff,
            format,
            output,
        } => cmd_sl2_example(*cutoff, *format, output),
    }
}
