mod batch;
mod fail;
mod out;

use binowords::complexity::{ComplexityKind, Profiler};
use binowords::error::Error;
use binowords::generators::{parse_generator, WordGenerator};
use binowords::morphism::Morphism;
use binowords::rauzy::{RauzyAnalyzer, RunMaxima};
use binowords::tm_structure::{classify_factor, phi_factorizations, tm_decode_all, TmDecoding};
use binowords::verify::{run_suites, suite_names, Scale, SuiteReport};
use binowords::word::FiniteWord;
use clap::{Args, Parser, Subcommand, ValueEnum};
use fail::{Failure, Outcome};
use out::{emit, with_newline};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

pub const PREFIX_CAP_VAR: &str = "BINOWORDS_PREFIX_CAP";

/// Subword binomial coefficients and complexity functions of infinite words.
#[derive(Parser)]
#[command(name = "binowords", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the length-n prefix of a generated word.
    Generate { spec: String, n: usize },
    /// Tabulate a complexity function for n in [from, n-max].
    Complexity(ComplexityArgs),
    /// List the k-binomial classes of the length-n factors.
    Classes {
        spec: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Abelian Rauzy graph of order n, or a summary of its edge quotients and runs.
    Rauzy(RauzyArgs),
    /// Classify a morphism file.
    Morphism {
        file: PathBuf,
        /// Classify the j-th power instead.
        #[arg(long, default_value_t = 1)]
        power: u32,
        /// Also print the image of this word.
        #[arg(long)]
        apply: Option<String>,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Factorizations p·phi^j(z)·s of a binary word.
    Factorize {
        word: String,
        #[arg(long, default_value_t = 1)]
        j: u32,
        /// Print the factorization classes instead (j = 1).
        #[arg(long)]
        classes: bool,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Read a binary word as u·phi^k(y)·r.
    Decode {
        word: String,
        #[arg(long)]
        k: u32,
        /// Print every admissible offset, not only the preferred one.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Run a verification suite, or `all`.
    Verify(VerifyArgs),
    /// Run the tasks of an experiment config file.
    Batch { config: PathBuf },
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("kind").required(true))]
struct ComplexityArgs {
    spec: String,
    #[arg(long, group = "kind")]
    factor: bool,
    #[arg(long, group = "kind")]
    abelian: bool,
    #[arg(long, group = "kind", value_name = "K")]
    binomial: Option<usize>,
    #[arg(long)]
    n_max: usize,
    #[arg(long, default_value_t = 0)]
    from: usize,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("view"))]
struct RauzyArgs {
    spec: String,
    n: usize,
    #[arg(long, group = "view")]
    dot: bool,
    #[arg(long, group = "view")]
    json: bool,
    #[arg(long, group = "view")]
    summary: bool,
    /// With --summary: also predict b^(k+1) of phi^k(word) at length n.
    #[arg(long, requires = "summary")]
    k: Option<u32>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(required_unless_present = "list")]
    suite: Option<String>,
    #[arg(long, conflicts_with = "full")]
    quick: bool,
    #[arg(long)]
    full: bool,
    #[arg(long)]
    json: bool,
    /// Print the suite names and exit.
    #[arg(long)]
    list: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

/// The factor-search cap from the environment, if set.
pub fn prefix_cap() -> Outcome<Option<usize>> {
    match std::env::var(PREFIX_CAP_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(Failure::Usage(format!("{PREFIX_CAP_VAR}: {e}"))),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(cap) if cap > 0 => Ok(Some(cap)),
            _ => Err(Failure::Usage(format!("{PREFIX_CAP_VAR} must be a positive integer, got {v:?}"))),
        },
    }
}

pub fn profiler(gen: &WordGenerator) -> Outcome<Profiler> {
    Ok(match prefix_cap()? {
        Some(cap) => Profiler::with_cap(gen, cap),
        None => Profiler::new(gen),
    })
}

pub fn analyzer(gen: &WordGenerator) -> Outcome<RauzyAnalyzer> {
    Ok(match prefix_cap()? {
        Some(cap) => RauzyAnalyzer::with_cap(gen, cap),
        None => RauzyAnalyzer::new(gen),
    })
}

pub fn generator(spec: &str) -> Outcome<WordGenerator> {
    parse_generator(spec).map_err(|e| match e {
        Error::Invalid(m) | Error::Parse { message: m, .. } => Failure::Usage(m),
        other => Failure::Lib(other),
    })
}

fn binary_word(text: &str) -> Outcome<FiniteWord> {
    FiniteWord::binary(text.trim()).map_err(|e| Failure::Usage(format!("bad word {text:?}: {e}")))
}

fn show(w: &FiniteWord) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        w.to_string()
    }
}

pub fn decodings_json(k: u32, found: &[TmDecoding]) -> serde_json::Value {
    let rows: Vec<_> = found
        .iter()
        .map(|d| json!({ "u": d.u.to_string(), "y": d.y_prefix.to_string(), "remainder": d.remainder.to_string() }))
        .collect();
    json!({ "k": k, "decodings": rows })
}

pub fn reports_text(reports: &[SuiteReport]) -> String {
    let mut text: String = reports.iter().map(ToString::to_string).collect();
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.suite.as_str()).collect();
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    if failed.is_empty() {
        text.push_str(&format!("ok: {} suites, {checks} checks\n", reports.len()));
    } else {
        text.push_str(&format!("failed suites: {}\n", failed.join(", ")));
    }
    text
}

pub fn reports_json(reports: &[SuiteReport]) -> String {
    with_newline(serde_json::to_string_pretty(reports).expect("reports serialize"))
}

fn verification_status(reports: &[SuiteReport]) -> Outcome<()> {
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.suite.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("verification failed: {}", failed.join(", "))))
    }
}

fn runs_text(runs: &RunMaxima) -> String {
    format!("m={} m'={}", runs.m, runs.m_prime)
}

/// Largest run length the summary resolves exactly.
const RUN_LIMIT: usize = 1024;

fn rauzy_summary(gen: &WordGenerator, n: usize, k: Option<u32>) -> Outcome<String> {
    let mut an = analyzer(gen)?;
    let graph = an.graph(n)?;
    let mut text = format!(
        "generator={} n={} vertices={} edges={} loops={}\n",
        gen.id(),
        n,
        graph.vertices.len(),
        graph.edges.len(),
        graph.loops().count()
    );
    if gen.alphabet().is_binary() {
        text.push_str(&format!("{}\n", an.edge_quotients(n)?));
        text.push_str(&format!("runs {}\n", runs_text(&an.run_maxima_bounded(RUN_LIMIT)?)));
        if let Some(k) = k {
            let value = match an.kplus1_formula(k, n) {
                Ok(v) => v,
                Err(Error::Precondition(reason)) => {
                    eprintln!("warning: {reason}; the prediction assumes an aperiodic word");
                    an.kplus1_formula_unchecked(k, n)?
                }
                Err(e) => return Err(e.into()),
            };
            text.push_str(&format!("b^{}(phi^{k}(y))({n}) = {value}\n", k + 1));
        }
    } else if k.is_some() {
        return Err(Error::NotBinary(gen.alphabet().to_string()).into());
    }
    Ok(text)
}

fn run(cli: Cli) -> Outcome<()> {
    prefix_cap()?;
    match cli.command {
        Command::Generate { spec, n } => {
            let gen = generator(&spec)?;
            emit(None, &format!("{}\n", gen.prefix(n)?))
        }
        Command::Complexity(a) => {
            let kind = match (a.factor, a.abelian, a.binomial) {
                (true, _, _) => ComplexityKind::Factor,
                (_, true, _) => ComplexityKind::Abelian,
                (_, _, Some(0)) => return Err(Failure::Usage("--binomial needs k >= 1".into())),
                (_, _, Some(k)) => ComplexityKind::Binomial(k),
                _ => unreachable!("clap requires one kind"),
            };
            if a.from > a.n_max {
                return Err(Failure::Usage(format!("--from {} exceeds --n-max {}", a.from, a.n_max)));
            }
            let gen = generator(&a.spec)?;
            let profile = profiler(&gen)?.profile_range(kind, a.from, a.n_max)?;
            let text = match a.format {
                TableFormat::Csv => profile.to_csv(),
                TableFormat::Json => with_newline(profile.to_json()),
            };
            emit(a.output.as_deref(), &text)
        }
        Command::Classes { spec, k, n, format } => {
            let gen = generator(&spec)?;
            let classes = profiler(&gen)?.classes(k, n)?;
            let text = match format {
                TextFormat::Text => classes
                    .iter()
                    .map(|c| {
                        let members: Vec<String> = c.iter().map(show).collect();
                        format!("{} ({}): {}\n", show(&c[0]), c.len(), members.join(" "))
                    })
                    .collect(),
                TextFormat::Json => {
                    let rows: Vec<Vec<String>> =
                        classes.iter().map(|c| c.iter().map(ToString::to_string).collect()).collect();
                    let value = json!({ "generator": gen.id(), "k": k, "n": n, "classes": rows });
                    with_newline(serde_json::to_string_pretty(&value).expect("json"))
                }
            };
            emit(None, &text)
        }
        Command::Rauzy(a) => {
            if a.n == 0 {
                return Err(Failure::Usage("Rauzy graph order must be at least 1".into()));
            }
            let gen = generator(&a.spec)?;
            let text = if a.summary {
                rauzy_summary(&gen, a.n, a.k)?
            } else {
                let graph = analyzer(&gen)?.graph(a.n)?;
                if a.json {
                    with_newline(graph.to_json())
                } else {
                    graph.to_dot()
                }
            };
            emit(a.output.as_deref(), &text)
        }
        Command::Morphism { file, power, apply, format } => {
            let source = std::fs::read_to_string(&file).map_err(|e| Failure::Io(file.display().to_string(), e))?;
            let f = Morphism::parse(&source)?.power(power)?;
            let class = f.classify();
            let matrix = f.adjacency_matrix();
            let image = apply
                .map(|w| FiniteWord::parse(f.source(), w.trim()).and_then(|w| f.apply(&w)))
                .transpose()?;
            let text = match format {
                TextFormat::Json => {
                    let value = json!({
                        "class": class,
                        "adjacency": matrix,
                        "image": image.as_ref().map(ToString::to_string),
                    });
                    with_newline(serde_json::to_string_pretty(&value).expect("json"))
                }
                TextFormat::Text => {
                    let mut t = format!(
                        "rank {}\nparikh-constant {}\nparikh-collinear {}\ntotally-erasing {}\nuniform {}\nprolongable-on {}\n",
                        class.rank,
                        class.is_parikh_constant,
                        class.is_parikh_collinear,
                        class.is_totally_erasing,
                        class.is_uniform,
                        class.prolongable_on.map_or("-".to_string(), |c| c.to_string()),
                    );
                    t.push_str("adjacency\n");
                    for row in &matrix {
                        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                        t.push_str(&format!("  {}\n", cells.join(" ")));
                    }
                    if let Some(img) = image {
                        t.push_str(&format!("image {}\n", show(&img)));
                    }
                    t
                }
            };
            emit(None, &text)
        }
        Command::Factorize { word, j, classes, format } => {
            let u = binary_word(&word)?;
            let text = if classes {
                let found = classify_factor(&u)?;
                match format {
                    TextFormat::Text => found.iter().map(|c| format!("{c}\n")).collect(),
                    TextFormat::Json => with_newline(serde_json::to_string_pretty(&found).expect("json")),
                }
            } else {
                let found = phi_factorizations(&u, j)?;
                match format {
                    TextFormat::Text => found.iter().map(|f| format!("{f}\n")).collect(),
                    TextFormat::Json => {
                        let rows: Vec<_> = found
                            .iter()
                            .map(|f| {
                                json!({
                                    "p": f.p.to_string(),
                                    "core": f.core.to_string(),
                                    "s": f.s.to_string(),
                                    "ancestor": f.ancestor().to_string(),
                                })
                            })
                            .collect();
                        with_newline(serde_json::to_string_pretty(&json!({ "j": j, "factorizations": rows })).expect("json"))
                    }
                }
            };
            emit(None, &text)
        }
        Command::Decode { word, k, all, format } => {
            let x = binary_word(&word)?;
            let mut found = tm_decode_all(&x, k)?;
            if !all {
                found.truncate(1);
            }
            let text = match format {
                TextFormat::Text => found.iter().map(|d| format!("{d}\n")).collect(),
                TextFormat::Json => with_newline(serde_json::to_string_pretty(&decodings_json(k, &found)).expect("json")),
            };
            emit(None, &text)
        }
        Command::Verify(a) => {
            if a.list {
                let mut names = suite_names();
                names.push("all");
                return emit(None, &format!("{}\n", names.join("\n")));
            }
            let suite = a.suite.expect("clap requires a suite");
            let scale = if a.full { Scale::Full } else { Scale::Quick };
            let reports = run_suites(&suite, scale).map_err(|e| match e {
                Error::Invalid(m) => Failure::Usage(m),
                other => Failure::Lib(other),
            })?;
            let text = if a.json { reports_json(&reports) } else { reports_text(&reports) };
            emit(None, &text)?;
            verification_status(&reports)
        }
        Command::Batch { config } => batch::run_file(&config),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(fail::EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            f.exit()
        }
    }
}
