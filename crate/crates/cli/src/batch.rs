//! Experiment configs: a general section with `generator`, `output` and
//! `formats`, then one `[<task>.<name>]` section per task.
//!
//! ```ini
//! generator = tm
//! output = results
//! formats = csv, json, dot
//!
//! [complexity.b2]
//! kind = binomial
//! k = 2
//! n_max = 64
//!
//! [rauzy.small]
//! n = 1..6
//!
//! [verify.ochs]
//! suite = ochsenschlager
//! scale = quick
//!
//! [decode.k2]
//! k = 2
//! length = 256
//! ```
//!
//! A task section may set its own `generator`. Relative output paths are
//! resolved against the config file's directory.

use crate::fail::{Failure, Outcome, EXIT_OTHER, EXIT_STABILIZATION, EXIT_USAGE, EXIT_VERIFICATION};
use crate::out::{with_newline, write_atomic};
use crate::{analyzer, decodings_json, generator, profiler, reports_json, reports_text};
use binowords::complexity::ComplexityKind;
use binowords::tm_structure::tm_decode_all;
use binowords::verify::{run_suites, Scale};
use ini::{Ini, Properties};
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Largest `n_max` or Rauzy order a config may request.
pub const N_MAX_CAP: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Format {
    Csv,
    Json,
    Dot,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Dot => "dot",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            other => Err(format!("unknown format `{other}` (expected csv, json or dot)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TaskKind {
    Complexity { kind: ComplexityKind, n_max: usize },
    Rauzy { orders: Vec<usize> },
    Verify { suite: String, scale: Scale },
    Decode { k: u32, length: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Task {
    /// Section name, also the stem of the task's output files.
    pub name: String,
    pub generator: Option<String>,
    pub kind: TaskKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub generator: Option<String>,
    pub output: PathBuf,
    pub formats: BTreeSet<Format>,
    pub tasks: Vec<Task>,
}

fn usage(section: &str, msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("config [{section}]: {msg}"))
}

/// Rejects keys outside `allowed` and repeated keys.
fn check_keys(section: &str, props: &Properties, allowed: &[&str]) -> Outcome<()> {
    let mut seen = BTreeSet::new();
    for (key, _) in props.iter() {
        if !allowed.contains(&key) {
            return Err(usage(section, format!("unknown key `{key}`")));
        }
        if !seen.insert(key) {
            return Err(usage(section, format!("key `{key}` given twice")));
        }
    }
    Ok(())
}

fn required<'a>(section: &str, props: &'a Properties, key: &str) -> Outcome<&'a str> {
    props
        .get(key)
        .map(str::trim)
        .ok_or_else(|| usage(section, format!("missing `{key}`")))
}

fn number<T: FromStr>(section: &str, key: &str, value: &str) -> Outcome<T> {
    value
        .trim()
        .parse()
        .map_err(|_| usage(section, format!("`{key}` is not a valid number: {value:?}")))
}

fn capped(section: &str, key: &str, n: usize) -> Outcome<usize> {
    if n > N_MAX_CAP {
        Err(usage(section, format!("`{key}` = {n} exceeds the cap {N_MAX_CAP}")))
    } else {
        Ok(n)
    }
}

/// `5`, `1..6` (inclusive) or `2, 4, 8`.
fn orders(section: &str, value: &str) -> Outcome<Vec<usize>> {
    let out: Vec<usize> = if let Some((a, b)) = value.split_once("..") {
        let (a, b): (usize, usize) = (number(section, "n", a)?, number(section, "n", b)?);
        (a..=b).collect()
    } else {
        value.split(',').map(|t| number(section, "n", t)).collect::<Outcome<_>>()?
    };
    if out.is_empty() || out.contains(&0) {
        return Err(usage(section, "`n` must list orders >= 1"));
    }
    for &n in &out {
        capped(section, "n", n)?;
    }
    Ok(out)
}

fn parse_task(section: &str, props: &Properties) -> Outcome<Task> {
    let (kind_name, name) = section
        .split_once('.')
        .filter(|(_, n)| !n.is_empty())
        .ok_or_else(|| usage(section, "task sections are named <task>.<name>"))?;
    let kind = match kind_name {
        "complexity" => {
            check_keys(section, props, &["generator", "kind", "k", "n_max"])?;
            let n_max = capped(section, "n_max", number(section, "n_max", required(section, props, "n_max")?)?)?;
            let k = props.get("k").map(|v| number::<usize>(section, "k", v)).transpose()?;
            let kind = match (required(section, props, "kind")?, k) {
                ("factor", None) => ComplexityKind::Factor,
                ("abelian", None) => ComplexityKind::Abelian,
                ("binomial", Some(k)) if k >= 1 => ComplexityKind::Binomial(k),
                ("binomial", _) => return Err(usage(section, "binomial needs k >= 1")),
                ("factor" | "abelian", Some(_)) => return Err(usage(section, "`k` is only for kind = binomial")),
                (other, _) => return Err(usage(section, format!("unknown kind `{other}`"))),
            };
            TaskKind::Complexity { kind, n_max }
        }
        "rauzy" => {
            check_keys(section, props, &["generator", "n"])?;
            TaskKind::Rauzy {
                orders: orders(section, required(section, props, "n")?)?,
            }
        }
        "verify" => {
            check_keys(section, props, &["generator", "suite", "scale"])?;
            let scale = props
                .get("scale")
                .map_or(Ok(Scale::Quick), |s| s.trim().parse())
                .map_err(|e| usage(section, e))?;
            TaskKind::Verify {
                suite: required(section, props, "suite")?.to_string(),
                scale,
            }
        }
        "decode" => {
            check_keys(section, props, &["generator", "k", "length"])?;
            let k: u32 = number(section, "k", required(section, props, "k")?)?;
            let length = props.get("length").map_or(Ok(256), |v| number(section, "length", v))?;
            TaskKind::Decode {
                k,
                length: capped(section, "length", length)?,
            }
        }
        other => return Err(usage(section, format!("unknown task `{other}`"))),
    };
    Ok(Task {
        name: format!("{kind_name}-{name}"),
        generator: props.get("generator").map(|g| g.trim().to_string()),
        kind,
    })
}

impl ExperimentConfig {
    /// Parses config text; relative `output` paths are joined onto `base`.
    pub fn parse(text: &str, base: &Path) -> Outcome<Self> {
        let ini = Ini::load_from_str_noescape(text).map_err(|e| Failure::Usage(format!("config: {e}")))?;
        let mut names = BTreeSet::new();
        let mut tasks = Vec::new();
        let mut general = None;
        for (section, props) in ini.iter() {
            match section {
                None => general = Some(props),
                Some(s) => {
                    if !names.insert(s) {
                        return Err(usage(s, "section given twice"));
                    }
                    tasks.push(parse_task(s, props)?);
                }
            }
        }
        let empty = Properties::new();
        let general = general.unwrap_or(&empty);
        check_keys("general", general, &["generator", "output", "formats"])?;
        let output = base.join(required("general", general, "output")?);
        let formats = match general.get("formats") {
            None => [Format::Csv, Format::Json, Format::Dot].into(),
            Some(v) => v
                .split(',')
                .map(|f| f.trim().parse().map_err(|e| usage("general", e)))
                .collect::<Outcome<BTreeSet<Format>>>()?,
        };
        let config = ExperimentConfig {
            generator: general.get("generator").map(|g| g.trim().to_string()),
            output,
            formats,
            tasks,
        };
        if config.tasks.is_empty() {
            return Err(Failure::Usage("config defines no tasks".into()));
        }
        for t in &config.tasks {
            let spec = config.generator_of(t).ok_or_else(|| usage(&t.name, "no generator defined"))?;
            if !matches!(t.kind, TaskKind::Verify { .. }) {
                generator(spec)?;
            }
        }
        Ok(config)
    }

    fn generator_of<'a>(&'a self, task: &'a Task) -> Option<&'a str> {
        task.generator.as_deref().or(self.generator.as_deref())
    }

    fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }

    fn write(&self, written: &mut Vec<PathBuf>, stem: &str, f: Format, text: &str) -> Outcome<()> {
        let path = self.output.join(format!("{stem}.{}", f.ext()));
        write_atomic(&path, text)?;
        written.push(path);
        Ok(())
    }
}

/// What one task produced; `passed` is false only for failed verification checks.
pub struct TaskResult {
    pub written: Vec<PathBuf>,
    pub passed: bool,
}

pub fn run_task(config: &ExperimentConfig, task: &Task) -> Outcome<TaskResult> {
    let mut written = Vec::new();
    let mut passed = true;
    let stem = task.name.as_str();
    let spec = config.generator_of(task).expect("checked at parse time");
    match &task.kind {
        TaskKind::Complexity { kind, n_max } => {
            let gen = generator(spec)?;
            let profile = profiler(&gen)?.profile(*kind, *n_max)?;
            if config.wants(Format::Json) {
                config.write(&mut written, stem, Format::Json, &with_newline(profile.to_json()))?;
            }
            if config.wants(Format::Csv) || written.is_empty() {
                config.write(&mut written, stem, Format::Csv, &profile.to_csv())?;
            }
        }
        TaskKind::Rauzy { orders } => {
            let gen = generator(spec)?;
            let mut an = analyzer(&gen)?;
            let mut table = String::from("n,vertices,edges,loops\n");
            for &n in orders {
                let graph = an.graph(n)?;
                table.push_str(&format!("{n},{},{},{}\n", graph.vertices.len(), graph.edges.len(), graph.loops().count()));
                let graph_stem = format!("{stem}-n{n}");
                if config.wants(Format::Dot) {
                    config.write(&mut written, &graph_stem, Format::Dot, &graph.to_dot())?;
                }
                if config.wants(Format::Json) {
                    config.write(&mut written, &graph_stem, Format::Json, &with_newline(graph.to_json()))?;
                }
            }
            if config.wants(Format::Csv) || written.is_empty() {
                config.write(&mut written, stem, Format::Csv, &table)?;
            }
        }
        TaskKind::Verify { suite, scale } => {
            let reports = run_suites(suite, *scale)?;
            passed = reports.iter().all(|r| r.passed());
            let path = config.output.join(format!("{stem}.txt"));
            write_atomic(&path, &reports_text(&reports))?;
            written.push(path);
            if config.wants(Format::Json) {
                config.write(&mut written, stem, Format::Json, &reports_json(&reports))?;
            }
        }
        TaskKind::Decode { k, length } => {
            let gen = generator(spec)?;
            let found = tm_decode_all(&gen.prefix(*length)?, *k)?;
            let path = config.output.join(format!("{stem}.txt"));
            write_atomic(&path, &found.iter().map(|d| format!("{d}\n")).collect::<String>())?;
            written.push(path);
            if config.wants(Format::Json) {
                let text = serde_json::to_string_pretty(&decodings_json(*k, &found)).expect("json");
                config.write(&mut written, stem, Format::Json, &with_newline(text))?;
            }
        }
    }
    Ok(TaskResult { written, passed })
}

/// Runs every task on its own thread and reports in config order.
/// The exit status is the most severe one among the tasks.
pub fn run_config(config: &ExperimentConfig) -> Outcome<()> {
    let results: Vec<Outcome<TaskResult>> = std::thread::scope(|scope| {
        let handles: Vec<_> = config
            .tasks
            .iter()
            .map(|t| scope.spawn(move || run_task(config, t)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Failure::Usage("task panicked".into()))))
            .collect()
    });
    let mut worst = 0u8;
    for (task, result) in config.tasks.iter().zip(&results) {
        match result {
            Ok(r) => {
                let files: Vec<String> = r.written.iter().map(|p| p.display().to_string()).collect();
                let status = if r.passed { "ok" } else { "FAILED" };
                println!("{} {status}: {}", task.name, files.join(" "));
                if !r.passed {
                    worst = worst.max(EXIT_VERIFICATION);
                }
            }
            Err(f) => {
                println!("{} error: {f}", task.name);
                worst = worst.max(f.code());
            }
        }
    }
    // usage errors inside a task are data problems of that task, not of the invocation
    let code = if worst == EXIT_USAGE { EXIT_OTHER } else { worst };
    match code {
        0 => Ok(()),
        EXIT_VERIFICATION => Err(Failure::Verification("some verification tasks failed".into())),
        EXIT_STABILIZATION => Err(Failure::Lib(first_stabilization(&results))),
        _ => Err(Failure::Io("batch".into(), std::io::Error::other("some tasks failed"))),
    }
}

fn first_stabilization(results: &[Outcome<TaskResult>]) -> binowords::error::Error {
    results
        .iter()
        .find_map(|r| match r {
            Err(Failure::Lib(e)) if e.is_stabilization() => Some(e.clone()),
            _ => None,
        })
        .expect("a stabilization failure was recorded")
}

pub fn run_file(path: &Path) -> Outcome<()> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(path.display().to_string(), e))?;
    let base = path.parent().unwrap_or(Path::new(""));
    let config = ExperimentConfig::parse(&text, base)?;
    run_config(&config)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "generator = tm\noutput = out\nformats = csv, dot\n\n\
        [complexity.b2]\nkind = binomial\nk = 2\nn_max = 16\n\n\
        [rauzy.small]\nn = 1..3\ngenerator = fib\n\n\
        [verify.ochs]\nsuite = ochsenschlager\n\n\
        [decode.k1]\nk = 1\n";

    #[test]
    fn parses_sample() {
        let c = ExperimentConfig::parse(SAMPLE, Path::new("/base")).unwrap();
        assert_eq!(c.output, PathBuf::from("/base/out"));
        assert_eq!(c.formats, [Format::Csv, Format::Dot].into());
        assert_eq!(c.tasks.len(), 4);
        assert_eq!(
            c.tasks[0].kind,
            TaskKind::Complexity {
                kind: ComplexityKind::Binomial(2),
                n_max: 16
            }
        );
        assert_eq!(c.tasks[1].kind, TaskKind::Rauzy { orders: vec![1, 2, 3] });
        assert_eq!(c.generator_of(&c.tasks[1]), Some("fib"));
        assert_eq!(
            c.tasks[2].kind,
            TaskKind::Verify {
                suite: "ochsenschlager".into(),
                scale: Scale::Quick
            }
        );
        assert_eq!(c.tasks[3].kind, TaskKind::Decode { k: 1, length: 256 });
        assert_eq!(c.tasks[3].name, "decode-k1");
    }

    #[test]
    fn rejects_bad_configs() {
        let bad = [
            "output = o\n[complexity.a]\nkind = factor\nn_max = 4\n",
            "generator = tm\noutput = o\n[complexity.a]\nkind = binomial\nn_max = 4\n",
            "generator = tm\noutput = o\n[complexity.a]\nkind = factor\nn_max = 100000\n",
            "generator = tm\noutput = o\n[rauzy.a]\nn = 0..2\n",
            "generator = tm\noutput = o\n[rauzy.a]\nn = 2\ncolour = red\n",
            "generator = tm\noutput = o\n[rauzy.a]\nn = 2\n[rauzy.a]\nn = 3\n",
            "generator = nope\noutput = o\n[rauzy.a]\nn = 2\n",
            "generator = tm\n[rauzy.a]\nn = 2\n",
            "generator = tm\noutput = o\nformats = png\n[rauzy.a]\nn = 2\n",
            "generator = tm\noutput = o\n",
            "generator = tm\noutput = o\n[plot.a]\nn = 2\n",
        ];
        for text in bad {
            let err = ExperimentConfig::parse(text, Path::new("")).unwrap_err();
            assert_eq!(err.code(), EXIT_USAGE, "{text}");
        }
    }
}
