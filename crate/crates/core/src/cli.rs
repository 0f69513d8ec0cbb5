//! The `coset-classes` command-line front end.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error,
//! 3 the group violates the hypothesis (H not normal, or G/H not cyclic).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::arith::{divisors, gcd};
use crate::classes::{build_class_table, ClassTable};
use crate::group::{build_coset_structure, GroupError, GroupSpec, DEFAULT_ORDER_CAP};
use crate::matrix::{
    build_l, build_r, det_exact, eigenspace_dimension, predicted_spectrum, rl_inverse, verify_rlinv, verify_tensor,
    DivisorMatrix,
};
use crate::report::{reports_to_json, VerificationReport};
use crate::suite::{describe, run_corpus, verify_group};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_HYPOTHESIS: u8 = 3;

/// Default ceiling on the matrix parameter `n`.
pub const DEFAULT_N_CAP: u64 = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Dump {
    L,
    R,
    Rlinv,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print the annotated class list and the N, T, S, S* tables.
    Classes,
    /// Run every group-level check on one (G, H).
    Verify {
        /// Shift N_d^c by delta before checking (failure-path testing).
        #[arg(long, hide = true, value_name = "D,C,DELTA")]
        perturb: Option<String>,
    },
    /// Check det L, the spectrum of R·L⁻¹ and the tensor split for one n.
    Matrix {
        /// Also write the chosen matrix as CSV.
        #[arg(long, value_enum)]
        dump: Option<Dump>,
    },
    /// Run all checks over a directory of group specs and all n ≤ n-max.
    Corpus {
        /// Directory of `*.grp` group specs (optional; matrix checks still run).
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "coset-classes",
    version,
    about = "Verify conjugacy-class distribution over cyclic-quotient cosets"
)]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
    /// Group-spec file.
    #[arg(long, global = true)]
    pub group: Option<PathBuf>,
    /// Matrix parameter n.
    #[arg(long, global = true)]
    pub n: Option<u64>,
    /// Largest n for corpus matrix checks.
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,
    #[arg(long = "order-cap", global = true, default_value_t = DEFAULT_ORDER_CAP)]
    pub order_cap: usize,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        let code = if e.is_hypothesis_violation() {
            EXIT_HYPOTHESIS
        } else {
            EXIT_USAGE
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub fn run(args: &Args, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match &args.command {
        Command::Classes => cmd_classes(args, out),
        Command::Verify { perturb } => cmd_verify(args, perturb.as_deref(), out),
        Command::Matrix { dump } => cmd_matrix(args, *dump, out),
        Command::Corpus { dir } => cmd_corpus(args, dir.as_deref(), out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load_table(args: &Args) -> Result<(String, ClassTable), Failure> {
    let path = args
        .group
        .as_ref()
        .ok_or_else(|| Failure::usage("--group <path> is required"))?;
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let (g, h) = GroupSpec::parse(&text)
        .and_then(|s| s.build(args.order_cap))
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let cs = build_coset_structure(g, h)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let subject = describe(&name, &cs);
    Ok((subject, build_class_table(cs)?))
}

fn emit_reports(reports: &[VerificationReport], output: Output, out: &mut dyn Write) -> std::io::Result<()> {
    match output {
        Output::Json => writeln!(out, "{}", reports_to_json(reports)),
        Output::Text => {
            for r in reports {
                let status = if r.passed { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{status} {} [{}] ({} assertions)",
                    r.check_name,
                    r.subject,
                    r.details.len()
                )?;
                for d in r.failures() {
                    writeln!(out, "    {}: expected {}, got {}", d.label, d.expected, d.actual)?;
                }
                for w in r.witnesses.iter().flatten() {
                    write!(out, "    witness: {}", w.label)?;
                    if let Some((a, b)) = w.divisor_pair {
                        write!(out, " pair=({a},{b})")?;
                    }
                    if let Some(rep) = &w.class_representative {
                        write!(out, " class={rep}")?;
                    }
                    writeln!(out)?;
                }
            }
            Ok(())
        }
    }
}

fn status(reports: &[VerificationReport]) -> u8 {
    if reports.iter().all(|r| r.passed) {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::usage(format!("write failed: {e}"))
}

fn cmd_classes(args: &Args, out: &mut dyn Write) -> Result<u8, Failure> {
    let (subject, table) = load_table(args)?;
    if args.output == Output::Json {
        let value = class_table_json(&subject, &table);
        writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json")).map_err(io)?;
        return Ok(EXIT_OK);
    }
    write_class_table(&subject, &table, out).map_err(io)?;
    Ok(EXIT_OK)
}

fn write_class_table(subject: &str, table: &ClassTable, out: &mut dyn Write) -> std::io::Result<()> {
    let n = table.coset_structure().n();
    writeln!(out, "{subject}")?;
    writeln!(
        out,
        "{:<28} {:>6} {:>6} {:>4} {:>4}",
        "representative", "size", "coset", "d", "c"
    )?;
    for a in table.classes() {
        writeln!(
            out,
            "{:<28} {:>6} {:>6} {:>4} {:>4}",
            a.class.representative.to_string(),
            a.class.size(),
            a.coset,
            a.coset_order,
            a.centralizing_index
        )?;
    }
    writeln!(out)?;
    writeln!(out, "N_d^c:")?;
    for (&(d, c), v) in table.n_counts() {
        writeln!(out, "  N_{d}^{c} = {v}")?;
    }
    for d in divisors(n) {
        writeln!(
            out,
            "d={d}: T={} S={} S*={}",
            table.t()[&d],
            table.s()[&d],
            table.s_star()[&d]
        )?;
    }
    Ok(())
}

fn class_table_json(subject: &str, table: &ClassTable) -> serde_json::Value {
    let classes: Vec<_> = table
        .classes()
        .iter()
        .map(|a| {
            serde_json::json!({
                "representative": a.class.representative.to_string(),
                "size": a.class.size(),
                "coset": a.coset,
                "coset_order": a.coset_order,
                "centralizing_index": a.centralizing_index,
            })
        })
        .collect();
    let n: Vec<_> = table
        .n_counts()
        .iter()
        .map(|(&(d, c), v)| serde_json::json!({"d": d, "c": c, "count": v}))
        .collect();
    serde_json::json!({
        "subject": subject,
        "n": table.coset_structure().n(),
        "classes": classes,
        "N": n,
        "T": table.t(),
        "S": table.s(),
        "S_star": table.s_star(),
    })
}

fn parse_perturbation(spec: &str) -> Result<(u64, u64, i64), Failure> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let bad = || Failure::usage(format!("--perturb expects D,C,DELTA, got {spec:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    Ok((
        parts[0].parse().map_err(|_| bad())?,
        parts[1].parse().map_err(|_| bad())?,
        parts[2].parse().map_err(|_| bad())?,
    ))
}

fn cmd_verify(args: &Args, perturb: Option<&str>, out: &mut dyn Write) -> Result<u8, Failure> {
    let (subject, mut table) = load_table(args)?;
    if let Some(p) = perturb {
        let (d, c, delta) = parse_perturbation(p)?;
        table.perturb_n_count(d, c, delta);
    }
    verify_table(&table, &subject, args.output, out)
}

fn verify_table(table: &ClassTable, subject: &str, output: Output, out: &mut dyn Write) -> Result<u8, Failure> {
    let reports = verify_group(table, subject)?;
    emit_reports(&reports, output, out).map_err(io)?;
    Ok(status(&reports))
}

fn check_n(n: u64) -> Result<(), Failure> {
    if n == 0 || n > DEFAULT_N_CAP {
        return Err(Failure::usage(format!("n must be in 1..={DEFAULT_N_CAP}, got {n}")));
    }
    Ok(())
}

fn cmd_matrix(args: &Args, dump: Option<Dump>, out: &mut dyn Write) -> Result<u8, Failure> {
    let n = args.n.ok_or_else(|| Failure::usage("--n <int> is required"))?;
    check_n(n)?;
    if let Some(which) = dump {
        let m: DivisorMatrix = match which {
            Dump::L => build_l(n),
            Dump::R => build_r(n),
            Dump::Rlinv => rl_inverse(n),
        }
        .expect("n >= 1");
        write!(out, "{}", m.to_csv()).map_err(io)?;
        return Ok(EXIT_OK);
    }

    let mut reports = vec![verify_rlinv(n).expect("n >= 1")];
    // One coprime split suffices to exercise the factorization.
    if let Some(m) = divisors(n).into_iter().find(|&m| m > 1 && m < n && gcd(m, n / m) == 1) {
        reports.push(verify_tensor(m, n / m).expect("coprime split"));
    }

    if args.output == Output::Text {
        let l = build_l(n).expect("n >= 1");
        let rl = rl_inverse(n).expect("n >= 1");
        writeln!(out, "n = {n}, side = {}", l.side()).map_err(io)?;
        writeln!(out, "det L = {}", det_exact(&l)).map_err(io)?;
        writeln!(out, "{:>10} {:>10} {:>10}", "lambda", "predicted", "dim").map_err(io)?;
        for (lambda, mult) in predicted_spectrum(n).expect("n >= 1") {
            let dim = eigenspace_dimension(&rl, &lambda);
            writeln!(out, "{:>10} {:>10} {:>10}", lambda.to_string(), mult, dim).map_err(io)?;
        }
    }
    emit_reports(&reports, args.output, out).map_err(io)?;
    Ok(status(&reports))
}

/// `*.grp` files in `dir`, sorted by name, as `(stem, contents)`.
pub fn load_spec_dir(dir: &Path) -> std::io::Result<Vec<(String, String)>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "grp"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            Ok((name, fs::read_to_string(&p)?))
        })
        .collect()
}

fn cmd_corpus(args: &Args, dir: Option<&Path>, out: &mut dyn Write) -> Result<u8, Failure> {
    let n_max = args.n_max.ok_or_else(|| Failure::usage("--n-max <int> is required"))?;
    check_n(n_max)?;
    let specs = match dir {
        Some(d) => load_spec_dir(d).map_err(|e| Failure::usage(format!("{}: {e}", d.display())))?,
        None => Vec::new(),
    };
    let reports = run_corpus(&specs, n_max, args.order_cap);
    emit_reports(&reports, args.output, out).map_err(io)?;
    Ok(status(&reports))
}
