//! Abelian Rauzy graphs, their edge quotients, and the closed form for the
//! `(k+1)`-binomial complexity of `phi^k(y)` built from them.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::complexity::tm_factor_formula;
use crate::error::{Error, Result};
use crate::factors::FactorScanner;
use crate::generators::WordGenerator;
use crate::word::{parikh_of_letters, Alphabet, ParikhVector};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RauzyEdge {
    pub source: ParikhVector,
    pub label: (u8, u8),
    pub target: ParikhVector,
}

impl RauzyEdge {
    pub fn is_loop(&self) -> bool {
        self.label.0 == self.label.1
    }
}

/// Abelian Rauzy graph of order `n`: Parikh vectors of `Fac_n` joined by the
/// length-`(n+1)` factors `a u b`, as `Ψ(au) -(a,b)-> Ψ(ub)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianRauzyGraph {
    pub order: usize,
    pub alphabet: Arc<Alphabet>,
    pub vertices: BTreeSet<ParikhVector>,
    pub edges: BTreeSet<RauzyEdge>,
    pub prefix_used: usize,
}

impl AbelianRauzyGraph {
    pub fn loops(&self) -> impl Iterator<Item = &RauzyEdge> {
        self.edges.iter().filter(|e| e.is_loop())
    }

    pub fn has_label(&self, a: u8, b: u8) -> bool {
        self.edges.iter().any(|e| e.label == (a, b))
    }

    fn vertex_name(&self, v: &ParikhVector) -> String {
        if self.alphabet.is_binary() {
            v.weight().to_string()
        } else {
            v.to_string()
        }
    }

    fn label_name(&self, (a, b): (u8, u8)) -> String {
        format!("{}{}", self.alphabet.symbol(a), self.alphabet.symbol(b))
    }

    fn sorted_vertices(&self) -> Vec<&ParikhVector> {
        let mut vs: Vec<&ParikhVector> = self.vertices.iter().collect();
        if self.alphabet.is_binary() {
            vs.sort_by_key(|v| v.weight());
        }
        vs
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph G_{} {{\n  node [shape=circle];\n", self.order);
        for v in self.sorted_vertices() {
            let name = self.vertex_name(v);
            out.push_str(&format!("  \"{name}\" [label=\"{name}\"];\n"));
        }
        let mut edges: Vec<&RauzyEdge> = self.edges.iter().collect();
        if self.alphabet.is_binary() {
            edges.sort_by_key(|e| (e.source.weight(), e.label, e.target.weight()));
        }
        for e in edges {
            let style = if e.is_loop() { ", color=red, fontcolor=red" } else { "" };
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"{style}];\n",
                self.vertex_name(&e.source),
                self.vertex_name(&e.target),
                self.label_name(e.label)
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        let vertices: Vec<_> = self
            .sorted_vertices()
            .into_iter()
            .map(|v| json!({ "parikh": v.counts, "name": self.vertex_name(v) }))
            .collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                json!({
                    "source": e.source.counts,
                    "label": self.label_name(e.label),
                    "target": e.target.counts,
                    "loop": e.is_loop(),
                })
            })
            .collect();
        let value = json!({
            "order": self.order,
            "prefix_used": self.prefix_used,
            "vertex_count": self.vertices.len(),
            "edge_count": self.edges.len(),
            "vertices": vertices,
            "edges": edges,
        });
        serde_json::to_string_pretty(&value).expect("graph serializes")
    }
}

/// Sizes of the sets `X(n)`, `Y_L(n)`, `Y_R(n)` and `Y(n)` read off `Fac_{n+1}`.
///
/// `Y` is the union of `Y_L` and `Y_R` taken as sets of different shapes
/// (letter first versus letter last), so `y_count = yl_count + yr_count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeQuotients {
    pub order: usize,
    pub x_count: usize,
    pub yl_count: usize,
    pub yr_count: usize,
    pub y_count: usize,
}

impl fmt::Display for EdgeQuotients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} #X={} #Y_L={} #Y_R={} #Y={}",
            self.order, self.x_count, self.yl_count, self.yr_count, self.y_count
        )
    }
}

/// A maximum that may only be known as a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum RunBound {
    Exact(usize),
    AtLeast(usize),
}

impl RunBound {
    /// `n < self`, reading `AtLeast` as larger than any tested length.
    fn exceeds(self, n: usize) -> bool {
        match self {
            RunBound::Exact(m) => n < m,
            RunBound::AtLeast(_) => true,
        }
    }

    fn equals(self, n: usize) -> bool {
        self == RunBound::Exact(n)
    }
}

impl fmt::Display for RunBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunBound::Exact(m) => write!(f, "{m}"),
            RunBound::AtLeast(m) => write!(f, ">= {m}"),
        }
    }
}

/// `m`: longest `n` with both `0^n` and `1^n` factors; `m_prime`: with either.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RunMaxima {
    pub m: RunBound,
    pub m_prime: RunBound,
}

/// Rauzy-graph computations over one generator, sharing its factor index.
pub struct RauzyAnalyzer {
    scanner: FactorScanner,
}

impl RauzyAnalyzer {
    pub fn new(generator: &WordGenerator) -> Self {
        RauzyAnalyzer {
            scanner: FactorScanner::new(generator),
        }
    }

    pub fn with_cap(generator: &WordGenerator, cap: usize) -> Self {
        RauzyAnalyzer {
            scanner: FactorScanner::with_cap(generator, cap),
        }
    }

    pub fn generator(&self) -> &WordGenerator {
        self.scanner.generator()
    }

    fn sigma(&self) -> usize {
        self.scanner.generator().alphabet().size()
    }

    fn require_binary(&self) -> Result<()> {
        let alphabet = self.scanner.generator().alphabet();
        if alphabet.is_binary() {
            Ok(())
        } else {
            Err(Error::NotBinary(alphabet.to_string()))
        }
    }

    /// Length-`n` factors as letter vectors, plus the certifying prefix length.
    fn factor_letters(&mut self, n: usize) -> Result<(Vec<Vec<u8>>, usize)> {
        let stable = self.scanner.stabilized(n)?;
        let letters = self.scanner.letters();
        let words = stable.positions.iter().map(|&i| letters[i..i + n].to_vec()).collect();
        Ok((words, stable.prefix_used))
    }

    pub fn graph(&mut self, n: usize) -> Result<AbelianRauzyGraph> {
        if n == 0 {
            return Err(Error::Precondition("Rauzy graph order must be at least 1".into()));
        }
        let sigma = self.sigma();
        let (short, p1) = self.factor_letters(n)?;
        let (long, p2) = self.factor_letters(n + 1)?;
        let vertices = short.iter().map(|w| parikh_of_letters(w, sigma)).collect();
        let edges = long
            .iter()
            .map(|w| RauzyEdge {
                source: parikh_of_letters(&w[..n], sigma),
                label: (w[0], w[n]),
                target: parikh_of_letters(&w[1..], sigma),
            })
            .collect();
        Ok(AbelianRauzyGraph {
            order: n,
            alphabet: self.scanner.generator().alphabet().clone(),
            vertices,
            edges,
            prefix_used: p1.max(p2),
        })
    }

    pub fn edge_quotients(&mut self, n: usize) -> Result<EdgeQuotients> {
        self.require_binary()?;
        if n == 0 {
            return Err(Error::Precondition("edge quotients need n >= 1".into()));
        }
        let (long, _) = self.factor_letters(n + 1)?;
        let ones = |w: &[u8]| w.iter().filter(|&&c| c == 1).count();
        let x: BTreeSet<(u8, usize, u8)> = long.iter().map(|w| (w[0], ones(&w[1..n]), w[n])).collect();
        let yl: BTreeSet<(u8, usize)> = long.iter().map(|w| (w[0], ones(&w[1..]))).collect();
        let yr: BTreeSet<(usize, u8)> = long.iter().map(|w| (ones(&w[..n]), w[n])).collect();
        Ok(EdgeQuotients {
            order: n,
            x_count: x.len(),
            yl_count: yl.len(),
            yr_count: yr.len(),
            y_count: yl.len() + yr.len(),
        })
    }

    fn abelian_count(&mut self, n: usize) -> Result<usize> {
        let sigma = self.sigma();
        let (words, _) = self.factor_letters(n)?;
        let vectors: BTreeSet<ParikhVector> = words.iter().map(|w| parikh_of_letters(w, sigma)).collect();
        Ok(vectors.len())
    }

    fn has_run(&mut self, letter: u8, n: usize) -> Result<bool> {
        let (words, _) = self.factor_letters(n)?;
        Ok(words.iter().any(|w| w.iter().all(|&c| c == letter)))
    }

    /// Longest run of `letter` among the factors, or a lower bound when the
    /// search hits the prefix cap.
    fn longest_run(&mut self, letter: u8, limit: usize) -> Result<RunBound> {
        let present = |s: &mut Self, n: usize| -> Result<Option<bool>> {
            match s.has_run(letter, n) {
                Ok(b) => Ok(Some(b)),
                Err(e) if e.is_stabilization() => Ok(None),
                Err(e) => Err(e),
            }
        };
        if present(self, 1)? != Some(true) {
            return Ok(RunBound::Exact(0));
        }
        // exponential search, then bisection on the monotone predicate
        let mut lo = 1;
        let mut hi = 2;
        loop {
            if hi > limit {
                if present(self, limit)? == Some(true) {
                    return Ok(RunBound::AtLeast(limit));
                }
                hi = limit;
                break;
            }
            match present(self, hi)? {
                Some(true) => {
                    lo = hi;
                    hi *= 2;
                }
                Some(false) => break,
                None => return Ok(RunBound::AtLeast(lo)),
            }
        }
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            match present(self, mid)? {
                Some(true) => lo = mid,
                Some(false) => hi = mid,
                None => return Ok(RunBound::AtLeast(lo)),
            }
        }
        Ok(RunBound::Exact(lo))
    }

    pub fn run_maxima(&mut self) -> Result<RunMaxima> {
        self.run_maxima_bounded(usize::MAX)
    }

    /// Run maxima where any run of length `limit` or more is reported as `AtLeast(limit)`.
    pub fn run_maxima_bounded(&mut self, limit: usize) -> Result<RunMaxima> {
        self.require_binary()?;
        let limit = limit.max(1);
        let zero = self.longest_run(0, limit)?;
        let one = self.longest_run(1, limit)?;
        let (lower, upper) = match (zero, one) {
            (RunBound::Exact(a), RunBound::Exact(b)) => (RunBound::Exact(a.min(b)), RunBound::Exact(a.max(b))),
            (RunBound::Exact(a), at_least) | (at_least, RunBound::Exact(a)) => (RunBound::Exact(a), at_least),
            (RunBound::AtLeast(a), RunBound::AtLeast(b)) => (RunBound::AtLeast(a.min(b)), RunBound::AtLeast(a.max(b))),
        };
        Ok(RunMaxima {
            m: lower,
            m_prime: upper,
        })
    }

    /// Smallest period of the second half of a `len`-prefix, if at most a quarter of that half.
    pub fn short_period(&self, len: usize) -> Result<Option<usize>> {
        let letters = self.scanner.generator().prefix_letters(len)?;
        let tail = &letters[len / 2..];
        let period = smallest_period(tail);
        Ok((period <= tail.len() / 4).then_some(period))
    }

    /// Predicted `b^(k+1)` of `phi^k(y)` at `length`, `y` being this generator.
    /// Fails when `y` looks eventually periodic.
    pub fn kplus1_formula(&mut self, k: u32, length: usize) -> Result<u64> {
        if let Some(p) = self.short_period(APERIODICITY_PREFIX)? {
            return Err(Error::Precondition(format!(
                "{} looks eventually periodic (period {p} within the first {APERIODICITY_PREFIX} letters)",
                self.generator().id()
            )));
        }
        self.kplus1_formula_unchecked(k, length)
    }

    /// [`Self::kplus1_formula`] without the periodicity screen.
    pub fn kplus1_formula_unchecked(&mut self, k: u32, length: usize) -> Result<u64> {
        self.require_binary()?;
        if k == 0 {
            return Err(Error::Precondition("the formula needs k >= 1".into()));
        }
        let block = 1usize << k;
        let (n, r) = (length / block, length % block);
        if n == 0 {
            return Ok(tm_factor_formula(r as u64));
        }
        // the case split only compares m and m' with n and n + 1
        let runs = self.run_maxima_bounded(n + 2)?;
        let (m, m_prime) = (runs.m, runs.m_prime);
        let block = block as i64;
        let value = if r == 0 {
            let z = (block - 1) * self.edge_quotients(n)?.x_count as i64 + self.abelian_count(n)? as i64;
            let correction = if m.exceeds(n) {
                block
            } else if m.equals(n) && m_prime.exceeds(n) {
                1
            } else {
                0
            };
            z - correction
        } else {
            let r = r as i64;
            let here = self.edge_quotients(n)?;
            let next = self.edge_quotients(n + 1)?;
            let z = (r - 1) * next.x_count as i64 + (block - r - 1) * here.x_count as i64 + here.y_count as i64;
            let correction = if m.exceeds(n + 1) {
                block
            } else if m.equals(n + 1) && m_prime.exceeds(n + 1) {
                block - r + 1
            } else if m.equals(n + 1) && m_prime.equals(n + 1) && r <= block / 2 {
                block - 2 * (r - 1)
            } else {
                0
            };
            z - correction
        };
        u64::try_from(value).map_err(|_| Error::IdentityViolated(format!("negative formula value {value} at length {length}")))
    }
}

/// Prefix length screened for short periods before evaluating the formula.
pub const APERIODICITY_PREFIX: usize = 4096;

fn smallest_period(w: &[u8]) -> usize {
    if w.is_empty() {
        return 0;
    }
    let mut fail = vec![0usize; w.len()];
    let mut j = 0;
    for i in 1..w.len() {
        while j > 0 && w[i] != w[j] {
            j = fail[j - 1];
        }
        if w[i] == w[j] {
            j += 1;
        }
        fail[i] = j;
    }
    w.len() - fail[w.len() - 1]
}

pub fn build_graph(gen: &WordGenerator, n: usize) -> Result<AbelianRauzyGraph> {
    RauzyAnalyzer::new(gen).graph(n)
}

pub fn edge_quotients(gen: &WordGenerator, n: usize) -> Result<EdgeQuotients> {
    RauzyAnalyzer::new(gen).edge_quotients(n)
}

pub fn run_maxima(gen: &WordGenerator) -> Result<RunMaxima> {
    RauzyAnalyzer::new(gen).run_maxima()
}

pub fn kplus1_formula(gen_y: &WordGenerator, k: u32, length: usize) -> Result<u64> {
    RauzyAnalyzer::new(gen_y).kplus1_formula(k, length)
}
