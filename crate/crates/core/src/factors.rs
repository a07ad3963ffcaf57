//! Factor sets of infinite words, read off finite prefixes.
//!
//! `Fac_n` is extracted from a prefix of length `P` by sliding a window;
//! `P` starts at `max(4n, 1024)` and doubles until one doubling adds no new
//! factor. Because factor sets of nested prefixes are nested, equal counts
//! mean equal sets. Windows are named exactly (no hashing of contents) by
//! doubling names of power-of-two blocks, so counting distinct windows of
//! any length costs `O(P)` once the block names exist.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::generators::WordGenerator;
use crate::word::FiniteWord;

/// Default cap on the prefix used for factor extraction (`2^22` symbols).
pub const DEFAULT_PREFIX_CAP: usize = 1 << 22;

/// Exact names for every power-of-two-length window of a fixed prefix.
pub struct FactorIndex {
    letters: Vec<u8>,
    // levels[t][i] names letters[i .. i + 2^t]
    levels: Vec<Vec<u32>>,
}

impl FactorIndex {
    pub fn new(letters: Vec<u8>) -> Self {
        let level0 = letters.iter().map(|&c| c as u32).collect();
        FactorIndex {
            letters,
            levels: vec![level0],
        }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn ensure_level(&mut self, t: usize) {
        while self.levels.len() <= t {
            let s = self.levels.len() - 1;
            let half = 1usize << s;
            let prev = &self.levels[s];
            let count = (self.letters.len() + 1).saturating_sub(2 * half);
            let mut names: FxHashMap<u64, u32> = FxHashMap::default();
            let mut next = Vec::with_capacity(count);
            for i in 0..count {
                let key = ((prev[i] as u64) << 32) | prev[i + half] as u64;
                let fresh = names.len() as u32;
                next.push(*names.entry(key).or_insert(fresh));
            }
            self.levels.push(next);
        }
    }

    /// Start positions of the first occurrence of each distinct length-`n`
    /// factor of `letters[..p]`, in order of first occurrence.
    pub fn distinct_positions(&mut self, n: usize, p: usize) -> Vec<usize> {
        let p = p.min(self.letters.len());
        if n == 0 {
            return vec![0];
        }
        if n > p {
            return Vec::new();
        }
        let t = usize::BITS as usize - 1 - n.leading_zeros() as usize;
        self.ensure_level(t);
        let block = 1usize << t;
        let names = &self.levels[t];
        let mut seen: FxHashMap<u64, ()> = FxHashMap::default();
        let mut out = Vec::new();
        for i in 0..=p - n {
            let key = ((names[i] as u64) << 32) | names[i + n - block] as u64;
            if seen.insert(key, ()).is_none() {
                out.push(i);
            }
        }
        out
    }

    pub fn count_distinct(&mut self, n: usize, p: usize) -> usize {
        self.distinct_positions(n, p).len()
    }
}

/// A stabilized factor set given by first-occurrence positions.
#[derive(Debug, Clone)]
pub struct StableFactors {
    pub n: usize,
    pub prefix_used: usize,
    pub positions: Vec<usize>,
}

/// Stabilizes factor sets of one generator, reusing one growing prefix index.
pub struct FactorScanner {
    generator: WordGenerator,
    cap: usize,
    index: FactorIndex,
}

impl FactorScanner {
    pub fn new(generator: &WordGenerator) -> Self {
        Self::with_cap(generator, DEFAULT_PREFIX_CAP)
    }

    pub fn with_cap(generator: &WordGenerator, cap: usize) -> Self {
        FactorScanner {
            generator: generator.clone(),
            cap,
            index: FactorIndex::new(Vec::new()),
        }
    }

    pub fn generator(&self) -> &WordGenerator {
        &self.generator
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// The indexed prefix; at least as long as every `prefix_used` returned so far.
    pub fn letters(&self) -> &[u8] {
        self.index.letters()
    }

    fn ensure_prefix(&mut self, p: usize) -> Result<()> {
        if self.index.len() >= p {
            return Ok(());
        }
        let target = p.max(2 * self.index.len()).min(self.cap.max(p));
        let letters = self.generator.prefix_letters(target)?;
        self.index = FactorIndex::new(letters);
        Ok(())
    }

    pub fn stabilized(&mut self, n: usize) -> Result<StableFactors> {
        if n == 0 {
            return Ok(StableFactors {
                n,
                prefix_used: 0,
                positions: vec![0],
            });
        }
        let certified = self.generator.certified_prefix(n)?.unwrap_or(0);
        let mut p = (4 * n).max(1024).max(certified);
        if p > self.cap {
            // report what the cap itself shows
            let cap = self.cap;
            self.ensure_prefix(cap)?;
            return Err(Error::Stabilization {
                n,
                cap,
                previous: self.index.count_distinct(n, cap / 2),
                current: self.index.count_distinct(n, cap),
            });
        }
        self.ensure_prefix(p)?;
        let mut previous = self.index.count_distinct(n, p);
        // unchanged across two consecutive doublings
        let mut unchanged = 0;
        loop {
            let doubled = 2 * p;
            if doubled > self.cap {
                return Err(Error::Stabilization {
                    n,
                    cap: self.cap,
                    previous: self.index.count_distinct(n, p / 2),
                    current: previous,
                });
            }
            self.ensure_prefix(doubled)?;
            let positions = self.index.distinct_positions(n, doubled);
            if positions.len() == previous {
                unchanged += 1;
                if unchanged == 2 {
                    return Ok(StableFactors {
                        n,
                        prefix_used: doubled,
                        positions,
                    });
                }
            } else {
                unchanged = 0;
            }
            previous = positions.len();
            p = doubled;
        }
    }

    /// `Fac_n` as sorted words.
    pub fn factors(&mut self, n: usize) -> Result<FactorSet> {
        let stable = self.stabilized(n)?;
        let alphabet = self.generator.alphabet().clone();
        let mut words: Vec<FiniteWord> = stable
            .positions
            .iter()
            .map(|&i| FiniteWord::from_indices_unchecked(&alphabet, self.letters()[i..i + n].to_vec()))
            .collect();
        words.sort();
        Ok(FactorSet {
            n,
            words,
            prefix_used: stable.prefix_used,
        })
    }
}

/// `Fac_n` of an infinite word together with the prefix length that certified it.
#[derive(Debug, Clone)]
pub struct FactorSet {
    pub n: usize,
    pub words: Vec<FiniteWord>,
    pub prefix_used: usize,
}

impl FactorSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &FiniteWord) -> bool {
        self.words.binary_search(w).is_ok()
    }
}

/// Length-`n` factors of `gen`, stabilized under the default prefix cap.
pub fn factors(gen: &WordGenerator, n: usize) -> Result<FactorSet> {
    FactorScanner::new(gen).factors(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn naive(letters: &[u8], n: usize) -> BTreeSet<Vec<u8>> {
        (0..=letters.len() - n).map(|i| letters[i..i + n].to_vec()).collect()
    }

    #[test]
    fn index_matches_naive_sets() {
        let tm = WordGenerator::champernowne().prefix_letters(700).unwrap();
        let mut index = FactorIndex::new(tm.clone());
        for n in 1..40 {
            for p in [n, n + 1, 97, 350, 700] {
                if p < n {
                    continue;
                }
                let got: BTreeSet<Vec<u8>> = index
                    .distinct_positions(n, p)
                    .into_iter()
                    .map(|i| tm[i..i + n].to_vec())
                    .collect();
                assert_eq!(got, naive(&tm[..p], n), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn thue_morse_factors() {
        let set = factors(&WordGenerator::thue_morse(), 2).unwrap();
        let words: Vec<String> = set.words.iter().map(|w| w.to_string()).collect();
        assert_eq!(words, vec!["00", "01", "10", "11"]);
        assert_eq!(set.prefix_used, 4096);
    }

    #[test]
    fn empty_factor() {
        let set = factors(&WordGenerator::fibonacci(), 0).unwrap();
        assert_eq!(set.len(), 1);
        assert!(set.words[0].is_empty());
    }

    #[test]
    fn fibonacci_factors_of_length_three() {
        let set = factors(&WordGenerator::fibonacci(), 3).unwrap();
        let words: Vec<String> = set.words.iter().map(|w| w.to_string()).collect();
        assert_eq!(words, vec!["001", "010", "100", "101"]);
    }

    #[test]
    fn stabilization_failure_reports_counts() {
        let mut scanner = FactorScanner::with_cap(&WordGenerator::champernowne(), 1 << 12);
        match scanner.stabilized(14) {
            Err(Error::Stabilization { n, cap, previous, current }) => {
                assert_eq!((n, cap), (14, 4096));
                assert!(previous < current, "{previous} {current}");
            }
            other => panic!("expected stabilization error, got {other:?}"),
        }
    }

    #[test]
    fn champernowne_contains_all_short_words() {
        let mut scanner = FactorScanner::new(&WordGenerator::champernowne());
        for n in 1..=8 {
            assert_eq!(scanner.stabilized(n).unwrap().positions.len(), 1 << n);
        }
    }
}
