//! Named oracle and property suites that check the library's identities and
//! closed forms over finite ranges.
//!
//! A suite never claims more than it tested: every check reports how many
//! cases it ran and the first counterexample it met.

mod infinite;
mod structure;
mod words;

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::word::{signature, Alphabet, FiniteWord};

/// Bounds preset for a suite run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Quick,
    Full,
}

impl Scale {
    fn pick<T>(self, quick: T, full: T) -> T {
        match self {
            Scale::Quick => quick,
            Scale::Full => full,
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Quick => "quick",
            Scale::Full => "full",
        })
    }
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Scale::Quick),
            "full" => Ok(Scale::Full),
            other => Err(Error::Invalid(format!("unknown scale `{other}` (expected quick or full)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// Reported without asserting anything.
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.outcome != Outcome::Fail
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub scale: Scale,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::Info => "INFO",
            };
            writeln!(f, "{tag} {}/{}: {}", self.suite, c.name, c.detail)?;
        }
        Ok(())
    }
}

type SuiteFn = fn(Scale) -> Result<Vec<Check>>;

const SUITES: &[(&str, SuiteFn)] = &[
    ("binomial-dp", words::binomial_dp),
    ("refinement", words::refinement),
    ("cancellation", words::cancellation),
    ("w35", words::w35),
    ("length-shortcut", words::length_shortcut),
    ("row-sum", words::row_sum),
    ("diff-powers", words::diff_powers),
    ("sum-constant-pvect", words::sum_constant_pvect),
    ("ochsenschlager", words::ochsenschlager),
    ("michel", words::michel),
    ("parikh-matrix", words::parikh_matrix),
    ("pc-characterization", words::pc_characterization),
    ("g-function", words::g_function),
    ("image-coefficient", words::image_coefficient),
    ("coefficients-of-images", words::coefficients_of_images),
    ("transfer", structure::transfer),
    ("unique-image", structure::unique_image),
    ("prefix-suffix", structure::prefix_suffix),
    ("kplus1-prefix-suffix", structure::kplus1_prefix_suffix),
    ("2bin-same-class", structure::same_class),
    ("decode", structure::decode),
    ("short-factors", infinite::short_factors),
    ("walnut-facts", infinite::walnut_facts),
    ("tm-complexity", infinite::tm_complexity),
    ("sturmian-2bin", infinite::sturmian_2bin),
    ("tm-property", infinite::tm_property),
    ("sturmian-closed-forms", infinite::sturmian_closed_forms),
    ("kplus1-formula", infinite::kplus1_formula),
    ("boundaries", infinite::boundaries),
    ("prec-chain", infinite::prec_chain),
    ("word-h", infinite::word_h),
    ("period-doubling", infinite::period_doubling),
    ("bounded", infinite::bounded),
    ("unbounded", infinite::unbounded),
    ("constructions", infinite::constructions),
    ("profile-invariants", infinite::profile_invariants),
];

/// Every suite name accepted by [`run_suite`], without the `all` alias.
pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(name, _)| *name).collect()
}

pub fn run_suite(name: &str, scale: Scale) -> Result<SuiteReport> {
    let (name, suite) = SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Invalid(format!("unknown suite `{name}`")))?;
    Ok(SuiteReport {
        suite: name.to_string(),
        scale,
        checks: suite(scale)?,
    })
}

/// `all` expands to every suite in registry order.
pub fn run_suites(name: &str, scale: Scale) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        suite_names().into_iter().map(|n| run_suite(n, scale)).collect()
    } else {
        Ok(vec![run_suite(name, scale)?])
    }
}

/// Counts cases of one property and keeps the first counterexample.
struct Tally {
    name: String,
    cases: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            cases: 0,
            failures: 0,
            first: None,
        }
    }

    fn case(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(counterexample());
            }
        }
    }

    fn fail(&mut self, counterexample: String) {
        self.case(false, || counterexample);
    }

    fn finish(self) -> Check {
        let (outcome, detail) = match (self.failures, self.first) {
            (0, _) if self.cases == 0 => (Outcome::Fail, "no cases were generated".to_string()),
            (0, _) => (Outcome::Pass, format!("{} cases", self.cases)),
            (f, first) => (
                Outcome::Fail,
                format!("{f} of {} cases failed; first: {}", self.cases, first.unwrap_or_default()),
            ),
        };
        Check {
            name: self.name,
            outcome,
            detail,
        }
    }
}

fn expect(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        outcome: if ok { Outcome::Pass } else { Outcome::Fail },
        detail: detail.into(),
    }
}

fn info(name: impl Into<String>, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        outcome: Outcome::Info,
        detail: detail.into(),
    }
}

/// `Ok(Err(message))` for a violated identity, so it counts as a failed case
/// rather than aborting the suite.
fn identity<T>(r: Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(Error::IdentityViolated(m)) => Ok(Err(m)),
        Err(e) => Err(e),
    }
}

fn rng(salt: u64) -> StdRng {
    StdRng::seed_from_u64(0x5eed_0000 ^ salt)
}

fn bin(text: &str) -> FiniteWord {
    FiniteWord::binary(text).expect("binary literal")
}

fn word_of(alphabet: &std::sync::Arc<Alphabet>, letters: Vec<u8>) -> FiniteWord {
    FiniteWord::from_indices_unchecked(alphabet, letters)
}

fn random_word(rng: &mut StdRng, alphabet: &std::sync::Arc<Alphabet>, len: usize) -> FiniteWord {
    let sigma = alphabet.size() as u8;
    word_of(alphabet, (0..len).map(|_| rng.gen_range(0..sigma)).collect())
}

/// Every binary word of length `len`, in lexicographic order.
fn all_binary(len: usize) -> Vec<FiniteWord> {
    let alphabet = Alphabet::binary();
    (0..1u64 << len)
        .map(|code| word_of(&alphabet, (0..len).rev().map(|b| ((code >> b) & 1) as u8).collect()))
        .collect()
}

/// The `~_k` classes with at least two members among binary words of length `len`.
fn nontrivial_classes(len: usize, k: usize) -> Result<Vec<Vec<FiniteWord>>> {
    let mut groups: std::collections::BTreeMap<Vec<num_bigint::BigUint>, Vec<FiniteWord>> = Default::default();
    for w in all_binary(len) {
        groups.entry(signature(&w, k)?.counts().to_vec()).or_default().push(w);
    }
    Ok(groups.into_values().filter(|c| c.len() > 1).collect())
}

/// Two members of a random class, or `None` when there is none.
fn pick_pair(rng: &mut StdRng, classes: &[Vec<FiniteWord>]) -> Option<(FiniteWord, FiniteWord)> {
    if classes.is_empty() {
        return None;
    }
    let class = &classes[rng.gen_range(0..classes.len())];
    let i = rng.gen_range(0..class.len());
    let mut j = rng.gen_range(0..class.len() - 1);
    if j >= i {
        j += 1;
    }
    Some((class[i].clone(), class[j].clone()))
}

fn tm_power(j: u32) -> Result<Morphism> {
    Morphism::thue_morse().with_image_limit(usize::MAX).power(j)
}

fn shuffled(rng: &mut StdRng, w: &FiniteWord) -> FiniteWord {
    use rand::seq::SliceRandom;
    let mut letters = w.letters().to_vec();
    letters.shuffle(rng);
    word_of(w.alphabet(), letters)
}
