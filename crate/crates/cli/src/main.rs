//! `vdw`: build van der Waerden complexes, decide their combinatorial and
//! algebraic properties, and compare against the closed-form classification.

mod record;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use vdw_core::{
    check_max_increment_bound, check_odd_increment_bound, is_shellable, is_vertex_decomposable,
    nonlinear_obstruction_vdw, taylor_syzygies, vdw_complex, vdw_dual_ideal, vdw_facets, Face,
    Field, IntersectionBoundCheck, ShellabilityOutcome, ShellingOrder, SimplicialComplex,
    VdwParams, DEFAULT_SHELLING_BUDGET,
};

use record::{Check, Plan, SweepRecord};

const EXIT_DISAGREE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser)]
#[command(
    name = "vdw",
    version,
    about = "van der Waerden complexes: build, classify, sweep"
)]
struct Cli {
    /// Output format. Defaults depend on the subcommand.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Coefficient fields for the Cohen-Macaulay check: Q, F2 or Fp:<p>.
    #[arg(long = "field", global = true, value_delimiter = ',', value_parser = parse_field)]
    fields: Vec<Field>,
    /// Worker threads for `sweep`. 0 picks one per core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Node budget for the shellability search.
    #[arg(long, global = true, default_value_t = DEFAULT_SHELLING_BUDGET)]
    budget: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Include per-check wall-clock times (makes output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the facets of vdW(n, k).
    Generate { n: usize, k: usize },
    /// Run the deciders on vdW(n, k) and compare with the closed form.
    Classify {
        n: usize,
        k: usize,
        #[arg(long, value_delimiter = ',')]
        checks: Vec<Check>,
    },
    /// Classify every vdW(n, k) with 0 < k < n <= n_max.
    Sweep {
        n_max: usize,
        #[arg(long, value_delimiter = ',')]
        checks: Vec<Check>,
        /// Allow explicitly requested checks beyond their default size limit.
        #[arg(long)]
        force: bool,
    },
    /// Print a derived object of vdW(n, k) as JSON.
    Inspect {
        n: usize,
        k: usize,
        #[command(subcommand)]
        what: Inspect,
    },
    /// Check whether ORDER is a shelling of COMPLEX.
    VerifyShelling { complex: PathBuf, order: PathBuf },
}

#[derive(Subcommand)]
enum Inspect {
    Link {
        vertex: usize,
    },
    Deletion {
        vertex: usize,
    },
    Dual,
    Ideal,
    Syzygies,
    Lemmas,
    /// Shedding-vertex certificate, or null.
    Shedding,
    /// A shelling order, or null.
    Shelling,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

type Outcome = Result<u8, Failure>;

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse()
        .map_err(|e: vdw_core::HomologyError| e.to_string())
}

fn params(n: usize, k: usize) -> Result<VdwParams, Failure> {
    VdwParams::new(n, k).map_err(usage)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Generate { n, k } => generate(cli, params(*n, *k)?),
        Command::Classify { n, k, checks } => classify(cli, params(*n, *k)?, checks),
        Command::Sweep {
            n_max,
            checks,
            force,
        } => sweep(cli, *n_max, checks, *force),
        Command::Inspect { n, k, what } => inspect(cli, params(*n, *k)?, what),
        Command::VerifyShelling { complex, order } => verify_shelling(cli, complex, order),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| usage(format!("cannot write output: {e}")))
        }
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn generate(cli: &Cli, p: VdwParams) -> Outcome {
    let facets = vdw_facets(p);
    let text = match cli.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&vdw_complex(p)),
        Format::Text => facets
            .iter()
            .map(|f| format!("{}\n", join(f.face, " ")))
            .collect(),
        Format::Csv => {
            let rows = facets
                .iter()
                .map(|f| {
                    vec![
                        f.start.to_string(),
                        f.increment.to_string(),
                        join(f.face, " "),
                    ]
                })
                .collect::<Vec<_>>();
            csv_table(&["start", "increment", "vertices"].map(String::from), &rows)
        }
    };
    emit(cli, &text)?;
    Ok(0)
}

fn join(face: Face, sep: &str) -> String {
    face.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn plan(cli: &Cli, checks: &[Check]) -> Plan {
    let mut checks = if checks.is_empty() {
        Check::ALL.to_vec()
    } else {
        checks.to_vec()
    };
    checks.sort();
    checks.dedup();
    let mut fields = if cli.fields.is_empty() {
        vec![Field::Rational, Field::F2]
    } else {
        cli.fields.clone()
    };
    fields.sort();
    fields.dedup();
    Plan {
        checks,
        fields,
        budget: cli.budget,
        timings: cli.timings,
    }
}

fn exit_code(records: &[SweepRecord]) -> u8 {
    if records.iter().any(|r| !r.agreement) {
        EXIT_DISAGREE
    } else if records.iter().any(|r| r.undecided) {
        EXIT_UNDECIDED
    } else {
        0
    }
}

fn render_records(records: &[SweepRecord], plan: &Plan, format: Format) -> String {
    let header = record::header(plan);
    let rows: Vec<_> = records.iter().map(|r| record::row(r, plan)).collect();
    match format {
        Format::Json => to_json(records),
        Format::Csv => csv_table(&header, &rows),
        Format::Text => text_table(&header, &rows),
    }
}

fn classify(cli: &Cli, p: VdwParams, checks: &[Check]) -> Outcome {
    let plan = plan(cli, checks);
    let rec = record::run(p, &plan);
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&rec),
        other => render_records(std::slice::from_ref(&rec), &plan, other),
    };
    emit(cli, &text)?;
    if rec.undecided {
        eprintln!("shellability undecided after {} nodes", cli.budget);
    }
    Ok(exit_code(&[rec]))
}

fn sweep(cli: &Cli, n_max: usize, checks: &[Check], force: bool) -> Outcome {
    if n_max > vdw_core::complex::MAX_VERTICES {
        return Err(usage(format!(
            "n_max must be at most {}, got {n_max}",
            vdw_core::complex::MAX_VERTICES
        )));
    }
    let explicit = !checks.is_empty();
    let plan = plan(cli, checks);
    if explicit && !force {
        if let Some(c) = plan.checks.iter().find(|c| n_max > c.sweep_limit()) {
            return Err(usage(format!(
                "check {} is limited to n <= {} in a sweep; pass --force to go further",
                c.name(),
                c.sweep_limit()
            )));
        }
    }
    let pairs: Vec<VdwParams> = VdwParams::all_up_to(n_max).collect();
    let run_pair = |p: &VdwParams| {
        let mut local = plan.clone();
        if !force {
            local.checks.retain(|c| p.n() <= c.sweep_limit());
        }
        record::run(*p, &local)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| usage(format!("cannot start worker pool: {e}")))?;
    let records: Vec<SweepRecord> = pool.install(|| pairs.par_iter().map(run_pair).collect());

    let text = render_records(&records, &plan, cli.format.unwrap_or(Format::Csv));
    emit(cli, &text)?;
    let agree = records.iter().filter(|r| r.agreement).count();
    let undecided = records.iter().filter(|r| r.undecided).count();
    if undecided > 0 {
        eprintln!("agree {agree}/{} (undecided {undecided})", records.len());
    } else {
        eprintln!("agree {agree}/{}", records.len());
    }
    Ok(exit_code(&records))
}

fn csv_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
}

fn text_table(header: &[String], rows: &[Vec<String>]) -> String {
    let blank = |s: &String| {
        if s.is_empty() {
            "-".to_string()
        } else {
            s.clone()
        }
    };
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(blank(c).len());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{:<w$}", blank(c)))
            .collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header);
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

fn bound_check(check: Result<IntersectionBoundCheck, vdw_core::VdwError>) -> Value {
    match check {
        Ok(c) => {
            let mut v = serde_json::to_value(&c).expect("serializable");
            v["holds"] = json!(c.holds());
            v
        }
        Err(e) => json!({ "applicable": false, "reason": e.to_string() }),
    }
}

fn inspect(cli: &Cli, p: VdwParams, what: &Inspect) -> Outcome {
    if cli.format.is_some_and(|f| f != Format::Json) {
        return Err(usage("inspect only writes json"));
    }
    let complex = vdw_complex(p);
    let value: Value = match what {
        Inspect::Link { vertex } => json!(complex.link(*vertex).map_err(usage)?),
        Inspect::Deletion { vertex } => json!(complex.deletion(*vertex).map_err(usage)?),
        Inspect::Dual => json!(complex.alexander_dual().map_err(usage)?),
        Inspect::Ideal => json!(vdw_dual_ideal(p)),
        Inspect::Syzygies => json!(taylor_syzygies(&vdw_dual_ideal(p)).map_err(usage)?),
        Inspect::Lemmas => {
            let obstruction = match nonlinear_obstruction_vdw(p) {
                Ok(w) => {
                    let mut v = json!(w);
                    v["holds"] = json!(true);
                    v
                }
                Err(e) => json!({ "applicable": false, "reason": e.to_string() }),
            };
            let odd = if p.k() == 2 {
                bound_check(check_odd_increment_bound(p.n()))
            } else {
                json!({ "applicable": false, "reason": "needs k = 2" })
            };
            json!({
                "n": p.n(),
                "k": p.k(),
                "odd_increment_bound": odd,
                "increment_bound": bound_check(check_max_increment_bound(p.n(), p.k())),
                "obstruction": obstruction,
            })
        }
        Inspect::Shedding => json!(is_vertex_decomposable(&complex).map_err(usage)?),
        Inspect::Shelling => match is_shellable(&complex, cli.budget).map_err(usage)? {
            ShellabilityOutcome::Shellable(order) => json!(order),
            ShellabilityOutcome::NotShellable => Value::Null,
            ShellabilityOutcome::Undecided { nodes } => {
                return Err(Failure {
                    code: EXIT_UNDECIDED,
                    message: format!("shellability undecided after {nodes} nodes"),
                })
            }
        },
    };
    emit(cli, &to_json(&value))?;
    Ok(0)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn verify_shelling(cli: &Cli, complex: &Path, order: &Path) -> Outcome {
    let complex: SimplicialComplex = read_json(complex)?;
    // accept either {"order": [...]} or a bare list of facets
    let order: Value = read_json(order)?;
    let order: ShellingOrder = match order {
        Value::Array(_) => ShellingOrder {
            order: serde_json::from_value(order).map_err(usage)?,
        },
        other => serde_json::from_value(other).map_err(usage)?,
    };
    let valid = vdw_core::verify_shelling(&complex, &order).map_err(usage)?;
    emit(cli, &to_json(&json!({ "valid": valid })))?;
    Ok(if valid { 0 } else { EXIT_DISAGREE })
}
