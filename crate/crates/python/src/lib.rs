use binowords::complexity::{ComplexityKind, Profiler};
use binowords::error::Error;
use binowords::generators::{parse_generator, WordGenerator};
use binowords::morphism::Morphism as CoreMorphism;
use binowords::rauzy::RauzyAnalyzer;
use binowords::tm_structure::{phi_factorizations as core_factorizations, tm_decode as core_decode};
use binowords::verify::{run_suites, suite_names as core_suite_names, Scale};
use binowords::word::{self, Alphabet, FiniteWord};
use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

create_exception!(binowords, StabilizationError, PyException, "Factor search hit the prefix cap.");

fn py_err(e: Error) -> PyErr {
    if e.is_stabilization() {
        StabilizationError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

/// The given alphabet, else `01` when every symbol is a bit, else the sorted symbols used.
fn alphabet_for(words: &[&str], alphabet: Option<&str>) -> Result<Arc<Alphabet>, Error> {
    if let Some(symbols) = alphabet {
        return Alphabet::parse(symbols);
    }
    let used: BTreeSet<char> = words.iter().flat_map(|w| w.chars()).collect();
    if used.iter().all(|c| matches!(c, '0' | '1')) {
        Ok(Alphabet::binary())
    } else {
        Alphabet::new(used)
    }
}

fn words(texts: &[&str], alphabet: Option<&str>) -> PyResult<Vec<FiniteWord>> {
    let a = alphabet_for(texts, alphabet).map_err(py_err)?;
    texts.iter().map(|t| FiniteWord::parse(&a, t).map_err(py_err)).collect()
}

/// Number of occurrences of `w` as a scattered subword of `u`.
#[pyfunction]
#[pyo3(signature = (u, w, alphabet=None))]
fn binomial_coefficient(u: &str, w: &str, alphabet: Option<&str>) -> PyResult<BigUint> {
    let ws = words(&[u, w], alphabet)?;
    word::binomial_coefficient(&ws[0], &ws[1]).map_err(py_err)
}

/// Coefficients of every pattern of length at most `k`, keyed by pattern.
#[pyfunction]
#[pyo3(signature = (u, k, alphabet=None))]
fn signature(u: &str, k: usize, alphabet: Option<&str>) -> PyResult<BTreeMap<String, BigUint>> {
    let w = words(&[u], alphabet)?.remove(0);
    let sig = word::signature(&w, k).map_err(py_err)?;
    let a = w.alphabet().clone();
    Ok(sig
        .iter()
        .map(|(pattern, c)| (pattern.iter().map(|&i| a.symbol(i)).collect(), c.clone()))
        .collect())
}

/// Whether `u` and `v` are k-binomially equivalent.
#[pyfunction]
#[pyo3(signature = (u, v, k, alphabet=None))]
fn equivalent(u: &str, v: &str, k: usize, alphabet: Option<&str>) -> PyResult<bool> {
    let ws = words(&[u, v], alphabet)?;
    word::equivalent(&ws[0], &ws[1], k).map_err(py_err)
}

/// `(p, core, s)` triples with `u = p · phi^j(core) · s`.
#[pyfunction]
fn phi_factorizations(u: &str, j: u32) -> PyResult<Vec<(String, String, String)>> {
    let w = FiniteWord::binary(u).map_err(py_err)?;
    let found = core_factorizations(&w, j).map_err(py_err)?;
    Ok(found
        .into_iter()
        .map(|f| (f.p.to_string(), f.core.to_string(), f.s.to_string()))
        .collect())
}

/// `(u, y)` with `x = u · phi^k(y) · r` and the shortest `u`.
#[pyfunction]
fn tm_decode(x: &str, k: u32) -> PyResult<(String, String)> {
    let w = FiniteWord::binary(x).map_err(py_err)?;
    let (u, y) = core_decode(&w, k).map_err(py_err)?;
    Ok((u.to_string(), y.to_string()))
}

#[pyfunction]
fn suite_names() -> Vec<&'static str> {
    core_suite_names()
}

/// Runs a verification suite (or `all`); returns `(passed, report)`.
#[pyfunction]
#[pyo3(signature = (name, scale="quick"))]
fn run_suite(name: &str, scale: &str) -> PyResult<(bool, String)> {
    let scale: Scale = scale.parse().map_err(py_err)?;
    let reports = run_suites(name, scale).map_err(py_err)?;
    let passed = reports.iter().all(|r| r.passed());
    Ok((passed, reports.iter().map(ToString::to_string).collect()))
}

/// An infinite word given by a generator spec such as `tm`, `fib` or `sturmian:1,2`.
#[pyclass]
struct Generator {
    generator: WordGenerator,
    profiler: Profiler,
    analyzer: RauzyAnalyzer,
}

impl Generator {
    fn profile(&mut self, kind: ComplexityKind, n_max: usize) -> PyResult<Vec<u64>> {
        Ok(self.profiler.profile(kind, n_max).map_err(py_err)?.values)
    }
}

#[pymethods]
impl Generator {
    #[new]
    #[pyo3(signature = (spec, prefix_cap=None))]
    fn new(spec: &str, prefix_cap: Option<usize>) -> PyResult<Self> {
        let generator = parse_generator(spec).map_err(py_err)?;
        let (profiler, analyzer) = match prefix_cap {
            Some(cap) => (Profiler::with_cap(&generator, cap), RauzyAnalyzer::with_cap(&generator, cap)),
            None => (Profiler::new(&generator), RauzyAnalyzer::new(&generator)),
        };
        Ok(Generator {
            generator,
            profiler,
            analyzer,
        })
    }

    #[getter]
    fn id(&self) -> String {
        self.generator.id().to_string()
    }

    #[getter]
    fn alphabet(&self) -> String {
        self.generator.alphabet().symbols().iter().collect()
    }

    fn prefix(&self, n: usize) -> PyResult<String> {
        Ok(self.generator.prefix(n).map_err(py_err)?.to_string())
    }

    /// Values for n = 0..=n_max.
    fn factor_complexity(&mut self, n_max: usize) -> PyResult<Vec<u64>> {
        self.profile(ComplexityKind::Factor, n_max)
    }

    fn abelian_complexity(&mut self, n_max: usize) -> PyResult<Vec<u64>> {
        self.profile(ComplexityKind::Abelian, n_max)
    }

    fn binomial_complexity(&mut self, k: usize, n_max: usize) -> PyResult<Vec<u64>> {
        if k == 0 {
            return Err(PyValueError::new_err("k must be at least 1"));
        }
        self.profile(ComplexityKind::Binomial(k), n_max)
    }

    /// The k-binomial classes of the length-n factors.
    fn classes(&mut self, k: usize, n: usize) -> PyResult<Vec<Vec<String>>> {
        let classes = self.profiler.classes(k, n).map_err(py_err)?;
        Ok(classes
            .into_iter()
            .map(|c| c.into_iter().map(|w| w.to_string()).collect())
            .collect())
    }

    fn rauzy_dot(&mut self, n: usize) -> PyResult<String> {
        Ok(self.analyzer.graph(n).map_err(py_err)?.to_dot())
    }

    fn rauzy_json(&mut self, n: usize) -> PyResult<String> {
        Ok(self.analyzer.graph(n).map_err(py_err)?.to_json())
    }

    /// `(#X, #Y_L, #Y_R, #Y)` at order n.
    fn edge_quotients(&mut self, n: usize) -> PyResult<(usize, usize, usize, usize)> {
        let q = self.analyzer.edge_quotients(n).map_err(py_err)?;
        Ok((q.x_count, q.yl_count, q.yr_count, q.y_count))
    }

    fn __repr__(&self) -> String {
        format!("Generator({:?})", self.generator.id())
    }
}

/// Adjacency-matrix flags of a morphism.
#[pyclass(get_all, frozen)]
struct MorphismClass {
    rank: usize,
    parikh_constant: bool,
    parikh_collinear: bool,
    totally_erasing: bool,
    uniform: bool,
    prolongable_on: Option<char>,
}

/// A morphism parsed from `letter -> image` lines.
#[pyclass(frozen)]
struct Morphism {
    inner: CoreMorphism,
}

#[pymethods]
impl Morphism {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Morphism {
            inner: CoreMorphism::parse(text).map_err(py_err)?,
        })
    }

    fn apply(&self, u: &str) -> PyResult<String> {
        let w = FiniteWord::parse(self.inner.source(), u).map_err(py_err)?;
        Ok(self.inner.apply(&w).map_err(py_err)?.to_string())
    }

    fn power(&self, j: u32) -> PyResult<Morphism> {
        Ok(Morphism {
            inner: self.inner.power(j).map_err(py_err)?,
        })
    }

    fn adjacency_matrix(&self) -> Vec<Vec<u64>> {
        self.inner.adjacency_matrix()
    }

    fn classify(&self) -> MorphismClass {
        let c = self.inner.classify();
        MorphismClass {
            rank: c.rank,
            parikh_constant: c.is_parikh_constant,
            parikh_collinear: c.is_parikh_collinear,
            totally_erasing: c.is_totally_erasing,
            uniform: c.is_uniform,
            prolongable_on: c.prolongable_on,
        }
    }
}

#[pymodule]
#[pyo3(name = "binowords")]
pub fn binowords_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("StabilizationError", m.py().get_type::<StabilizationError>())?;
    m.add_class::<Generator>()?;
    m.add_class::<Morphism>()?;
    m.add_class::<MorphismClass>()?;
    m.add_function(wrap_pyfunction!(binomial_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(signature, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(phi_factorizations, m)?)?;
    m.add_function(wrap_pyfunction!(tm_decode, m)?)?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_inference() {
        assert!(alphabet_for(&["0110", ""], None).unwrap().is_binary());
        assert_eq!(alphabet_for(&["ba", "c"], None).unwrap().symbols(), &['a', 'b', 'c']);
        assert_eq!(alphabet_for(&["0"], Some("012")).unwrap().size(), 3);
    }
}
