use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stringdet::dot::{ar_dot, quiver_dot};
use stringdet::engine::determiner_report;
use stringdet::format::{parse_algebra, serialize_algebra};
use stringdet::generate;
use stringdet::oracle::{compare, enumerate_strings, OracleRun};
use stringdet::quiver::{BoundQuiverAlgebra, Certificate, StringAlgebra};
use stringdet::taxonomy::{profiles, vertex_ideal, IdealStatus};

const EXIT_USAGE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_DISAGREE: u8 = 3;

#[derive(Parser)]
#[command(name = "stringdet", version, about = "Minimal right determiners over tree string algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct OracleLimit {
    /// Refuse to build modules when the algebra has more strings than this.
    #[arg(long, default_value_t = 400)]
    max_strings: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check the tree, degree and relation conditions.
    Validate { input: PathBuf },
    /// Vertex classes.
    Classify { input: PathBuf },
    /// Vertex ideals with witnesses.
    Ideals { input: PathBuf },
    /// Projective determiners and |Det|.
    Determiners { input: PathBuf },
    /// Determiners computed from the AR quiver.
    Oracle {
        input: PathBuf,
        #[command(flatten)]
        limit: OracleLimit,
    },
    /// Compare the engine with the oracle; exit 3 on disagreement.
    Check {
        input: PathBuf,
        #[command(flatten)]
        limit: OracleLimit,
    },
    /// Graphviz rendering of the quiver, or of the AR quiver with --ar.
    ExportDot {
        input: PathBuf,
        #[arg(long)]
        ar: bool,
        #[command(flatten)]
        limit: OracleLimit,
    },
    /// Emit an example algebra in the input format.
    GenExample {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Four-valent vertex with two zero paths through it.
    #[command(name = "four-valent")]
    FourValent,
    /// Path algebra of 1 -> 2 <- 3 -> 4.
    #[command(name = "zigzag")]
    Zigzag,
    /// Branching algebra with one or two zero paths.
    #[command(name = "branching")]
    Branching {
        /// Only the zero path into vertex 1.
        #[arg(long)]
        single: bool,
    },
    /// Grown four-valent tree with all length-two paths zero.
    Lambda {
        #[arg(long, default_value_t = 1)]
        level: usize,
    },
    /// Type A line without relations.
    Linear {
        #[arg(long)]
        n: Option<usize>,
        /// One of `>`/`<` per edge; defaults to all `>`.
        #[arg(long)]
        orientation: Option<String>,
    },
    /// Type D with one zero path.
    Dn {
        #[arg(long)]
        n: usize,
    },
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn new(code: u8, error: anyhow::Error) -> Self {
        Failure { code, error }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure::new(EXIT_USAGE, error)
    }
}

/// Rendered output plus the exit code to finish with.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

fn render(format: Format, text: impl FnOnce() -> String, value: impl FnOnce() -> Value) -> String {
    match format {
        Format::Text => text(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value()).expect("json values serialize");
            s.push('\n');
            s
        }
    }
}

fn read_algebra(path: &Path) -> Result<BoundQuiverAlgebra, Failure> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_algebra(&text).map_err(|e| Failure::new(EXIT_INVALID, anyhow!("{}:{e}", path.display())))
}

fn read_valid(path: &Path) -> Result<StringAlgebra, Failure> {
    let alg = read_algebra(path)?.validate();
    if let Certificate::Invalid(violations) = alg.certificate() {
        let list: Vec<String> = violations.iter().map(|v| format!("  {v}")).collect();
        return Err(Failure::new(
            EXIT_INVALID,
            anyhow!("{} is not a valid string algebra:\n{}", path.display(), list.join("\n")),
        ));
    }
    StringAlgebra::new(alg).map_err(|e| Failure::new(EXIT_INVALID, e.into()))
}

fn run_oracle(alg: &StringAlgebra, limit: &OracleLimit) -> Result<OracleRun, Failure> {
    let strings = enumerate_strings(alg).len();
    if strings > limit.max_strings {
        return Err(anyhow!(
            "the algebra has {strings} strings, more than --max-strings {}; raise the limit to run the oracle",
            limit.max_strings
        )
        .into());
    }
    let run = OracleRun::new(alg).map_err(|e| Failure::new(EXIT_DISAGREE, e.into()))?;
    let problems = run.structural_problems(alg);
    if !problems.is_empty() {
        return Err(Failure::new(EXIT_DISAGREE, anyhow!("oracle invariants failed:\n  {}", problems.join("\n  "))));
    }
    Ok(run)
}

fn validate(format: Format, path: &Path) -> Result<Outcome, Failure> {
    let alg = read_algebra(path)?.validate();
    let violations = alg.certificate().violations().to_vec();
    let warnings = alg.warnings().to_vec();
    let text = render(
        format,
        || {
            let mut s = String::new();
            for w in &warnings {
                writeln!(s, "warning: {w}").unwrap();
            }
            if violations.is_empty() {
                s.push_str("valid\n");
            } else {
                s.push_str("invalid\n");
                for v in &violations {
                    writeln!(s, "  {v}").unwrap();
                }
            }
            s
        },
        || json!({ "valid": violations.is_empty(), "violations": violations, "warnings": warnings }),
    );
    let code = if violations.is_empty() { 0 } else { EXIT_INVALID };
    Ok(Outcome { text, code })
}

fn classify(format: Format, path: &Path) -> Result<Outcome, Failure> {
    let alg = read_valid(path)?;
    let rows = profiles(&alg).map_err(|e| Failure::new(EXIT_INVALID, e.into()))?;
    Ok(Outcome::ok(render(
        format,
        || {
            let mut s = String::from("vertex  in  out  class  description\n");
            for p in &rows {
                writeln!(
                    s,
                    "{:>6}  {:>2}  {:>3}  {:<5}  {}",
                    p.vertex,
                    p.in_neighbours.len(),
                    p.out_neighbours.len(),
                    p.class.label(),
                    p.class.description()
                )
                .unwrap();
            }
            s
        },
        || {
            json!(rows
                .iter()
                .map(|p| json!({
                    "vertex": p.vertex,
                    "class": p.class.label(),
                    "in_neighbours": p.in_neighbours,
                    "out_neighbours": p.out_neighbours,
                }))
                .collect::<Vec<_>>())
        },
    )))
}

fn ideals(format: Format, path: &Path) -> Result<Outcome, Failure> {
    let alg = read_valid(path)?;
    let rows: Vec<_> = profiles(&alg)
        .map_err(|e| Failure::new(EXIT_INVALID, e.into()))?
        .into_iter()
        .filter(|p| p.class.has_vertex_ideal())
        .map(|p| (p.class, vertex_ideal(&alg, p.vertex).expect("class has an ideal")))
        .collect();
    Ok(Outcome::ok(render(
        format,
        || {
            let mut s = String::from("vertex  class  ideal  witness\n");
            for (class, st) in &rows {
                let witness = st.witness.map_or("-".to_owned(), |w| w.to_string());
                let status = match st.status {
                    IdealStatus::Zero => "zero".to_owned(),
                    other => format!("non-zero ({other})"),
                };
                writeln!(s, "{:>6}  {:<5}  {status}  {witness}", st.vertex, class.label()).unwrap();
            }
            s
        },
        || {
            json!(rows
                .iter()
                .map(|(class, st)| json!({
                    "vertex": st.vertex,
                    "class": class.label(),
                    "status": st.status,
                    "zero": st.status.is_zero(),
                    "witness": st.witness,
                }))
                .collect::<Vec<_>>())
        },
    )))
}

fn determiners(format: Format, path: &Path) -> Result<Outcome, Failure> {
    let alg = read_valid(path)?;
    let report = determiner_report(&alg).map_err(|e| Failure::new(EXIT_INVALID, e.into()))?;
    Ok(Outcome::ok(render(format, || report.to_string(), || json!(report))))
}

fn oracle(format: Format, path: &Path, limit: &OracleLimit) -> Result<Outcome, Failure> {
    let alg = read_valid(path)?;
    let run = run_oracle(&alg, limit)?;
    let summary = run.summary(&alg);
    Ok(Outcome::ok(render(
        format,
        || {
            let mut s = String::new();
            writeln!(
                s,
                "{} indecomposables, {} irreducible maps, {} + {} almost split sequences (one / two middle terms)",
                summary.modules, summary.irreducible_maps, summary.one_middle_sequences, summary.two_middle_sequences
            )
            .unwrap();
            writeln!(
                s,
                "|Det| = {} ({} projective + {} non-projective)",
                summary.det_size,
                summary.projective_determiners.len(),
                summary.non_projective_determiners
            )
            .unwrap();
            for m in &summary.members {
                let dims: Vec<String> = m.dimension_vector.iter().map(|(v, d)| format!("{v}:{d}")).collect();
                let tag = m.projective_of.map_or(String::new(), |i| format!("  P({i})"));
                writeln!(s, "  {}  [{}]{tag}", m.string, dims.join(" ")).unwrap();
            }
            s
        },
        || json!(summary),
    )))
}

fn check(format: Format, path: &Path, limit: &OracleLimit) -> Result<Outcome, Failure> {
    let alg = read_valid(path)?;
    let report = determiner_report(&alg).map_err(|e| Failure::new(EXIT_INVALID, e.into()))?;
    let run = run_oracle(&alg, limit)?;
    let agreement = compare(&report, &run.summary(&alg));
    let text = render(
        format,
        || {
            let set = |s: &std::collections::BTreeSet<u32>| {
                s.iter().map(|v| format!("P({v})")).collect::<Vec<_>>().join(", ")
            };
            format!(
                "engine: |Det| = {}, projective {{{}}}\noracle: |Det| = {}, projective {{{}}}\n{}\n",
                agreement.engine_count,
                set(&agreement.engine_projectives),
                agreement.oracle_count,
                set(&agreement.oracle_projectives),
                if agreement.agrees { "agree" } else { "DISAGREE" }
            )
        },
        || json!(agreement),
    );
    let code = if agreement.agrees { 0 } else { EXIT_DISAGREE };
    Ok(Outcome { text, code })
}

fn export_dot(path: &Path, ar: bool, limit: &OracleLimit) -> Result<Outcome, Failure> {
    if !ar {
        return Ok(Outcome::ok(quiver_dot(&read_algebra(path)?)));
    }
    let alg = read_valid(path)?;
    let run = run_oracle(&alg, limit)?;
    Ok(Outcome::ok(ar_dot(&run.ar)))
}

fn gen_example(family: &Family) -> Result<Outcome, Failure> {
    let alg = match family {
        Family::FourValent => generate::four_valent(),
        Family::Zigzag => generate::zigzag_a4(),
        Family::Branching { single } => generate::branching_d5(!single),
        Family::Lambda { level } => generate::lambda(*level),
        Family::Linear { n, orientation } => {
            let orientation = match (n, orientation) {
                (_, Some(o)) => generate::parse_orientation(o)
                    .ok_or_else(|| anyhow!("orientation may only contain '>' and '<'"))?,
                (Some(n), None) if *n >= 1 => vec![generate::Orientation::Right; n - 1],
                _ => return Err(anyhow!("linear needs --n >= 1 or --orientation").into()),
            };
            if let Some(n) = n {
                if orientation.len() + 1 != *n {
                    return Err(anyhow!("--orientation has {} edges but --n {n} needs {}", orientation.len(), n - 1).into());
                }
            }
            generate::linear(&orientation)
        }
        Family::Dn { n } => generate::dynkin_d(*n).ok_or_else(|| anyhow!("type D needs --n >= 4"))?,
    };
    Ok(Outcome::ok(serialize_algebra(&alg)))
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomically(path: &Path, text: &str) -> anyhow::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| anyhow!("{} is not a file path", path.display()))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    std::fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path).with_context(|| format!("renaming onto {}", path.display()))
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let f = cli.format;
    match &cli.command {
        Command::Validate { input } => validate(f, input),
        Command::Classify { input } => classify(f, input),
        Command::Ideals { input } => ideals(f, input),
        Command::Determiners { input } => determiners(f, input),
        Command::Oracle { input, limit } => oracle(f, input, limit),
        Command::Check { input, limit } => check(f, input, limit),
        Command::ExportDot { input, ar, limit } => export_dot(input, *ar, limit),
        Command::GenExample { family } => gen_example(family),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            return ExitCode::from(f.code);
        }
    };
    let written = match &cli.output {
        Some(path) => write_atomically(path, &outcome.text),
        None => std::io::stdout().write_all(outcome.text.as_bytes()).map_err(Into::into),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(outcome.code)
}
