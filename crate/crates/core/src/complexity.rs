//! Factor, abelian and k-binomial complexity of infinite words, plus the
//! closed forms they are checked against.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factors::FactorScanner;
use crate::generators::WordGenerator;
use crate::word::{counts_fit_u64, signature_of_letters, FiniteWord, PatternLayout, SlidingSignature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "k")]
pub enum ComplexityKind {
    Factor,
    Abelian,
    Binomial(usize),
}

impl ComplexityKind {
    /// The equivalence depth: `None` for plain factor equality.
    pub fn depth(self) -> Option<usize> {
        match self {
            ComplexityKind::Factor => None,
            ComplexityKind::Abelian => Some(1),
            ComplexityKind::Binomial(k) => Some(k),
        }
    }
}

impl fmt::Display for ComplexityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexityKind::Factor => write!(f, "factor"),
            ComplexityKind::Abelian => write!(f, "abelian"),
            ComplexityKind::Binomial(k) => write!(f, "binomial({k})"),
        }
    }
}

/// Values of one complexity function over the contiguous range `start..start + values.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityProfile {
    #[serde(flatten)]
    pub kind: ComplexityKind,
    pub generator_id: String,
    pub start: usize,
    pub values: Vec<u64>,
    pub prefix_used: Vec<usize>,
}

impl ComplexityProfile {
    pub fn end(&self) -> usize {
        self.start + self.values.len()
    }

    pub fn value(&self, n: usize) -> Option<u64> {
        n.checked_sub(self.start).and_then(|i| self.values.get(i).copied())
    }

    /// `(n, value)` pairs in increasing `n`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.values.iter().enumerate().map(move |(i, &v)| (self.start + i, v))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,value,prefix_used\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", self.start + i, v, self.prefix_used[i]));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("profile serializes")
    }
}

/// Complexity engine for one generator; reuses one growing prefix index across lengths.
pub struct Profiler {
    scanner: FactorScanner,
}

impl Profiler {
    pub fn new(generator: &WordGenerator) -> Self {
        Profiler {
            scanner: FactorScanner::new(generator),
        }
    }

    pub fn with_cap(generator: &WordGenerator, cap: usize) -> Self {
        Profiler {
            scanner: FactorScanner::with_cap(generator, cap),
        }
    }

    pub fn scanner(&mut self) -> &mut FactorScanner {
        &mut self.scanner
    }

    /// `(value, prefix_used)` at length `n`.
    pub fn value(&mut self, kind: ComplexityKind, n: usize) -> Result<(u64, usize)> {
        let stable = self.scanner.stabilized(n)?;
        let count = match kind.depth() {
            None => stable.positions.len(),
            Some(_) if n == 0 => 1,
            Some(k) => {
                let sigma = self.scanner.generator().alphabet().size();
                count_classes(self.scanner.letters(), &stable.positions, n, sigma, k)?
            }
        };
        Ok((count as u64, stable.prefix_used))
    }

    pub fn profile(&mut self, kind: ComplexityKind, n_max: usize) -> Result<ComplexityProfile> {
        self.profile_range(kind, 0, n_max)
    }

    pub fn profile_range(&mut self, kind: ComplexityKind, start: usize, end: usize) -> Result<ComplexityProfile> {
        if let Some(0) = kind.depth() {
            return Err(Error::Precondition("binomial complexity needs k >= 1".into()));
        }
        let mut values = Vec::new();
        let mut prefix_used = Vec::new();
        for n in start..=end {
            let (v, p) = self.value(kind, n)?;
            values.push(v);
            prefix_used.push(p);
        }
        Ok(ComplexityProfile {
            kind,
            generator_id: self.scanner.generator().id().to_string(),
            start,
            values,
            prefix_used,
        })
    }

    /// The `~_k` classes of `Fac_n`, each sorted, ordered by smallest member.
    pub fn classes(&mut self, k: usize, n: usize) -> Result<Vec<Vec<FiniteWord>>> {
        if k == 0 {
            return Err(Error::Precondition("classes need k >= 1".into()));
        }
        let set = self.scanner.factors(n)?;
        let sigma = self.scanner.generator().alphabet().size();
        let mut groups: HashMap<Vec<BigUint>, Vec<FiniteWord>> = HashMap::new();
        for w in set.words {
            let sig = signature_of_letters(w.letters(), sigma, k)?;
            groups.entry(sig.counts().to_vec()).or_default().push(w);
        }
        let mut classes: Vec<Vec<FiniteWord>> = groups.into_values().collect();
        for c in &mut classes {
            c.sort();
        }
        classes.sort();
        Ok(classes)
    }
}

fn count_classes(letters: &[u8], positions: &[usize], n: usize, sigma: usize, k: usize) -> Result<usize> {
    let layout = PatternLayout::new(sigma, k)?;
    if !counts_fit_u64(n, k) {
        let mut seen: FxHashSet<Vec<BigUint>> = FxHashSet::default();
        for &i in positions {
            let sig = signature_of_letters(&letters[i..i + n], sigma, k)?;
            let key = if n >= k { sig.level(k).to_vec() } else { sig.counts().to_vec() };
            seen.insert(key);
        }
        return Ok(seen.len());
    }
    // equal-length words with n >= k are ~_k iff their length-k counts agree
    let lo = if n >= k { layout.offset(k) } else { 0 };
    let mut window = SlidingSignature::new(layout);
    for &c in &letters[..n] {
        window.push_back(c);
    }
    let mut seen: FxHashSet<Vec<u64>> = FxHashSet::default();
    let mut next = positions.iter().peekable();
    let mut i = 0;
    while let Some(&&p) = next.peek() {
        if p == i {
            seen.insert(window.counts()[lo..].to_vec());
            next.next();
            if next.peek().is_none() {
                break;
            }
        }
        window.pop_front(letters[i]);
        window.push_back(letters[i + n]);
        i += 1;
    }
    Ok(seen.len())
}

pub fn factor_complexity(gen: &WordGenerator, n_max: usize) -> Result<ComplexityProfile> {
    Profiler::new(gen).profile(ComplexityKind::Factor, n_max)
}

pub fn abelian_complexity(gen: &WordGenerator, n_max: usize) -> Result<ComplexityProfile> {
    Profiler::new(gen).profile(ComplexityKind::Abelian, n_max)
}

pub fn binomial_complexity(gen: &WordGenerator, k: usize, n_max: usize) -> Result<ComplexityProfile> {
    Profiler::new(gen).profile(ComplexityKind::Binomial(k), n_max)
}

/// Factor complexity of the Thue–Morse word.
pub fn tm_factor_formula(n: u64) -> u64 {
    match n {
        0 => 1,
        1 => 2,
        2 => 4,
        _ => {
            // n = 2^m + r with 1 <= r <= 2^m
            let m = 63 - (n - 1).leading_zeros() as u64;
            let pm = 1u64 << m;
            let r = n - pm;
            if r <= pm / 2 {
                3 * pm + 4 * (r - 1)
            } else {
                4 * pm + 2 * (r - 1)
            }
        }
    }
}

/// `j`-binomial complexity of the Thue–Morse word.
pub fn tm_binomial_formula(j: u32, n: u64) -> u64 {
    let block = 1u64 << j;
    if n < block {
        tm_factor_formula(n)
    } else if n.is_multiple_of(block) {
        3 * block - 3
    } else {
        3 * block - 4
    }
}

/// `(k+1)`-binomial complexity of `phi^k(s)` for a Sturmian `s`.
pub fn sturmian_image_formula(k: u32, n: u64) -> u64 {
    let block = 1u64 << k;
    let (q, r) = (n / block, n % block);
    match (q, r) {
        (0, _) => tm_factor_formula(r),
        (1, 0) => 3 * block - 2,
        (1, _) => 3 * block + r - 1,
        _ => 4 * block - 2,
    }
}

/// Factor complexity of `phi^k(s)` for a Sturmian `s`.
pub fn sturmian_image_factor_formula(k: u32, n: u64) -> u64 {
    let block = 1u64 << k;
    if n <= block {
        tm_factor_formula(n)
    } else {
        n + 2 * block - 1
    }
}

/// Pointwise comparison of two profiles over their common range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrecReport {
    pub lower: String,
    pub upper: String,
    pub start: usize,
    pub end: usize,
    pub strict: Vec<usize>,
    pub equal: Vec<usize>,
    pub reversed: Vec<usize>,
    pub min_strict: usize,
}

impl PrecReport {
    /// At least `min_strict` points with `lower(n) < upper(n)` in the compared range.
    pub fn witnessed(&self) -> bool {
        self.strict.len() >= self.min_strict
    }

    /// `lower(n) <= upper(n)` everywhere in the compared range.
    pub fn dominated(&self) -> bool {
        self.reversed.is_empty()
    }
}

impl fmt::Display for PrecReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.end.saturating_sub(1);
        writeln!(f, "{} vs {} on {}..={}", self.lower, self.upper, self.start, last)?;
        writeln!(f, "  strict ({}): {:?}", self.strict.len(), self.strict)?;
        writeln!(f, "  equal ({}): {:?}", self.equal.len(), self.equal)?;
        if !self.reversed.is_empty() {
            writeln!(f, "  reversed ({}): {:?}", self.reversed.len(), self.reversed)?;
        }
        if self.witnessed() {
            write!(f, "  strict inequality witnessed at {} points up to n = {last}", self.strict.len())
        } else {
            write!(f, "  fewer than {} strict points up to n = {last}", self.min_strict)
        }
    }
}

pub const DEFAULT_MIN_STRICT: usize = 10;

pub fn prec_compare(a: &ComplexityProfile, b: &ComplexityProfile) -> Result<PrecReport> {
    prec_compare_with(a, b, DEFAULT_MIN_STRICT)
}

pub fn prec_compare_with(a: &ComplexityProfile, b: &ComplexityProfile, min_strict: usize) -> Result<PrecReport> {
    let start = a.start.max(b.start);
    let end = a.end().min(b.end());
    if start >= end {
        return Err(Error::Precondition(format!(
            "profile ranges {}..{} and {}..{} do not overlap",
            a.start,
            a.end(),
            b.start,
            b.end()
        )));
    }
    let label = |p: &ComplexityProfile| format!("{}[{}]", p.kind, p.generator_id);
    let mut report = PrecReport {
        lower: label(a),
        upper: label(b),
        start,
        end,
        strict: Vec::new(),
        equal: Vec::new(),
        reversed: Vec::new(),
        min_strict,
    };
    for n in start..end {
        let (x, y) = (a.value(n).unwrap(), b.value(n).unwrap());
        match x.cmp(&y) {
            std::cmp::Ordering::Less => report.strict.push(n),
            std::cmp::Ordering::Equal => report.equal.push(n),
            std::cmp::Ordering::Greater => report.reversed.push(n),
        }
    }
    Ok(report)
}

/// For each window length `1..=n_max`, the least and greatest number of
/// letters from `set` in a length-`n` window of `letters`.
///
/// Runs in time proportional to the number of occurrences, so pass the
/// sparser of a set and its complement.
pub fn letter_count_ranges(letters: &[u8], set: &[u8], n_max: usize) -> Vec<(u64, u64)> {
    let hits: Vec<usize> = letters
        .iter()
        .enumerate()
        .filter(|(_, c)| set.contains(c))
        .map(|(i, _)| i)
        .collect();
    let len = letters.len();
    let count = |a: usize, b: usize| (hits.partition_point(|&p| p < b) - hits.partition_point(|&p| p < a)) as u64;
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max.min(len) {
        // a maximal window can be moved to start at a hit or to the end of the
        // prefix; a minimal one can be moved to position 0 or just after a hit
        let mut hi = count(len - n, len);
        let mut lo = count(0, n);
        for &p in &hits {
            if p + n <= len {
                hi = hi.max(count(p, p + n));
            }
            if p + 1 + n <= len {
                lo = lo.min(count(p + 1, p + 1 + n));
            }
        }
        out.push((lo, hi));
    }
    out
}

/// `max_a (max |u|_a - min |u|_a)` over length-`n` windows of `letters`, for `n = 1..=n_max`.
pub fn weight_spread(letters: &[u8], alphabet_size: usize, n_max: usize) -> Vec<u64> {
    let mut spread = vec![0u64; n_max.min(letters.len())];
    for a in 0..alphabet_size as u8 {
        let hits = letters.iter().filter(|&&c| c == a).count();
        let set: Vec<u8> = if 2 * hits <= letters.len() {
            vec![a]
        } else {
            (0..alphabet_size as u8).filter(|&c| c != a).collect()
        };
        for (s, (lo, hi)) in spread.iter_mut().zip(letter_count_ranges(letters, &set, n_max)) {
            *s = (*s).max(hi - lo);
        }
    }
    spread
}

/// Lengths at which a profile exceeds every earlier value.
pub fn records(profile: &ComplexityProfile) -> Vec<(usize, u64)> {
    let mut out: Vec<(usize, u64)> = Vec::new();
    for (n, v) in profile.iter() {
        if out.last().is_none_or(|&(_, best)| v > best) {
            out.push((n, v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{equivalent, FiniteWord};

    #[test]
    fn tm_factor_formula_examples() {
        let got: Vec<u64> = (0..=12).map(tm_factor_formula).collect();
        assert_eq!(got, vec![1, 2, 4, 6, 10, 12, 16, 20, 22, 24, 28, 32, 36]);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(tm_binomial_formula(2, 8), 9);
        assert_eq!(tm_binomial_formula(2, 3), 6);
        assert_eq!(tm_binomial_formula(1, 5), 2);
        assert_eq!(sturmian_image_formula(1, 2), 4);
        assert_eq!(sturmian_image_formula(1, 3), 6);
        assert_eq!(sturmian_image_formula(1, 10), 6);
        assert_eq!(sturmian_image_factor_formula(1, 5), 8);
        assert_eq!(sturmian_image_factor_formula(2, 4), 10);
        assert_eq!(sturmian_image_factor_formula(0, 2), 3);
    }

    #[test]
    fn thue_morse_profiles() {
        let tm = WordGenerator::thue_morse();
        let p = factor_complexity(&tm, 40).unwrap();
        for (n, v) in p.iter() {
            assert_eq!(v, tm_factor_formula(n as u64), "n={n}");
        }
        let b1 = abelian_complexity(&tm, 20).unwrap();
        for (n, v) in b1.iter().skip(1) {
            assert_eq!(v, if n % 2 == 0 { 3 } else { 2 }, "n={n}");
        }
        let b2 = binomial_complexity(&tm, 2, 20).unwrap();
        assert_eq!(b2.value(8), Some(9));
        assert_eq!(b2.value(6), Some(8));
    }

    fn naive_classes(letters: &[u8], n: usize, k: usize) -> usize {
        let words: Vec<FiniteWord> = (0..=letters.len() - n)
            .map(|i| FiniteWord::from_indices_unchecked(&crate::word::Alphabet::binary(), letters[i..i + n].to_vec()))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut reps: Vec<&FiniteWord> = Vec::new();
        for w in &words {
            if !reps.iter().any(|r| equivalent(r, w, k).unwrap()) {
                reps.push(w);
            }
        }
        reps.len()
    }

    #[test]
    fn class_counts_match_pairwise_equivalence() {
        let gen = WordGenerator::period_doubling();
        let mut profiler = Profiler::new(&gen);
        for k in 1..=3 {
            for n in 1..=14 {
                let (v, p) = profiler.value(ComplexityKind::Binomial(k), n).unwrap();
                let letters = gen.prefix_letters(p).unwrap();
                assert_eq!(v as usize, naive_classes(&letters, n, k), "k={k} n={n}");
            }
        }
    }

    fn direct_classes(letters: &[u8], positions: &[usize], n: usize, k: usize) -> usize {
        positions
            .iter()
            .map(|&i| signature_of_letters(&letters[i..i + n], 2, k).unwrap())
            .collect::<std::collections::HashSet<_>>()
            .len()
    }

    #[test]
    fn sliding_and_bigint_paths_agree_with_direct_signatures() {
        let letters = WordGenerator::period_doubling().prefix_letters(4096).unwrap();
        let positions: Vec<usize> = (0..300).collect();
        assert!(counts_fit_u64(70, 3));
        assert_eq!(
            count_classes(&letters, &positions, 70, 2, 3).unwrap(),
            direct_classes(&letters, &positions, 70, 3)
        );
        assert!(!counts_fit_u64(300, 12));
        assert_eq!(
            count_classes(&letters, &positions, 300, 2, 12).unwrap(),
            direct_classes(&letters, &positions, 300, 12)
        );
    }

    #[test]
    fn classes_partition_factors() {
        let mut profiler = Profiler::new(&WordGenerator::thue_morse());
        let classes = profiler.classes(1, 4).unwrap();
        assert_eq!(classes.len(), 3);
        assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), 10);
    }

    #[test]
    fn prec_report() {
        let tm = WordGenerator::thue_morse();
        let b1 = abelian_complexity(&tm, 64).unwrap();
        let b2 = binomial_complexity(&tm, 2, 64).unwrap();
        let report = prec_compare(&b1, &b2).unwrap();
        assert!(report.witnessed());
        assert!(report.dominated());
        for n in (4..=64).step_by(2) {
            assert!(report.strict.contains(&n));
        }
        let fib = factor_complexity(&WordGenerator::fibonacci(), 20).unwrap();
        let same = prec_compare(&fib, &fib).unwrap();
        assert!(same.strict.is_empty());
        let mut shifted = fib.clone();
        shifted.start = 100;
        assert!(prec_compare(&fib, &shifted).is_err());
    }

    #[test]
    fn letter_ranges_match_brute_force() {
        let letters = WordGenerator::h_word().prefix_letters(600).unwrap();
        for set in [vec![0u8], vec![1], vec![0, 1]] {
            let fast = letter_count_ranges(&letters, &set, 80);
            for n in 1..=80 {
                let counts: Vec<u64> = letters
                    .windows(n)
                    .map(|w| w.iter().filter(|c| set.contains(c)).count() as u64)
                    .collect();
                let expected = (*counts.iter().min().unwrap(), *counts.iter().max().unwrap());
                assert_eq!(fast[n - 1], expected, "set={set:?} n={n}");
            }
        }
    }

    #[test]
    fn csv_and_json_layout() {
        let p = factor_complexity(&WordGenerator::fibonacci(), 2).unwrap();
        assert_eq!(p.to_csv(), "n,value,prefix_used\n0,1,0\n1,2,4096\n2,3,4096\n");
        let json: serde_json::Value = serde_json::from_str(&p.to_json()).unwrap();
        assert_eq!(json["kind"], "factor");
        let b = binomial_complexity(&WordGenerator::fibonacci(), 2, 1).unwrap();
        let json: serde_json::Value = serde_json::from_str(&b.to_json()).unwrap();
        assert_eq!(json["kind"], "binomial");
        assert_eq!(json["k"], 2);
    }
}
