//! Finite words, subword binomial coefficients, Parikh vectors and k-binomial
//! signatures.
//!
//! Symbols are stored as 0-based indices into an [`Alphabet`]; the alphabet
//! carries the external characters and the letter order used by Parikh
//! vectors and by the canonical pattern order of signatures.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{CheckedAdd, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_ALPHABET: usize = 16;

/// Ordered set of 2 to 16 distinct symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Arc<Self>> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.len() < 2 || symbols.len() > MAX_ALPHABET {
            return Err(Error::InvalidAlphabet(format!(
                "size {} outside 2..={MAX_ALPHABET}",
                symbols.len()
            )));
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {c:?}")));
            }
        }
        Ok(Arc::new(Alphabet { symbols }))
    }

    /// Parses the symbols of a string in order, e.g. `"01"` or `"a01α"`.
    pub fn parse(symbols: &str) -> Result<Arc<Self>> {
        Self::new(symbols.chars())
    }

    pub fn binary() -> Arc<Self> {
        Arc::new(Alphabet {
            symbols: vec!['0', '1'],
        })
    }

    /// `{0, 1, ..., size-1}` using decimal digits then lowercase letters.
    pub fn digits(size: usize) -> Result<Arc<Self>> {
        Self::new((0..size as u32).filter_map(|d| char::from_digit(d, 36)))
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, index: u8) -> char {
        self.symbols[index as usize]
    }

    pub fn index_of(&self, symbol: char) -> Option<u8> {
        self.symbols.iter().position(|&c| c == symbol).map(|i| i as u8)
    }

    pub fn is_binary(&self) -> bool {
        self.symbols.len() == 2
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// An immutable word over an [`Alphabet`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWord {
    letters: Vec<u8>,
    alphabet: Arc<Alphabet>,
}

impl FiniteWord {
    pub fn empty(alphabet: &Arc<Alphabet>) -> Self {
        FiniteWord {
            letters: Vec::new(),
            alphabet: Arc::clone(alphabet),
        }
    }

    pub fn from_indices(alphabet: &Arc<Alphabet>, letters: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l as usize >= alphabet.size()) {
            return Err(Error::InvalidAlphabet(format!(
                "letter index {bad} out of range for {alphabet}"
            )));
        }
        Ok(FiniteWord {
            letters,
            alphabet: Arc::clone(alphabet),
        })
    }

    /// Caller guarantees every index is in range.
    pub(crate) fn from_indices_unchecked(alphabet: &Arc<Alphabet>, letters: Vec<u8>) -> Self {
        debug_assert!(letters.iter().all(|&l| (l as usize) < alphabet.size()));
        FiniteWord {
            letters,
            alphabet: Arc::clone(alphabet),
        }
    }

    pub fn parse(alphabet: &Arc<Alphabet>, text: &str) -> Result<Self> {
        let letters = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                alphabet.index_of(c).ok_or_else(|| Error::UnknownSymbol {
                    symbol: c,
                    alphabet: alphabet.to_string(),
                })
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(FiniteWord {
            letters,
            alphabet: Arc::clone(alphabet),
        })
    }

    /// Word over `{0,1}`.
    pub fn binary(text: &str) -> Result<Self> {
        Self::parse(&Alphabet::binary(), text)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn factor(&self, start: usize, end: usize) -> FiniteWord {
        FiniteWord::from_indices_unchecked(&self.alphabet, self.letters[start..end].to_vec())
    }

    pub fn prefix(&self, len: usize) -> FiniteWord {
        self.factor(0, len.min(self.len()))
    }

    pub fn concat(&self, other: &FiniteWord) -> Result<FiniteWord> {
        same_alphabet(self, other)?;
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(FiniteWord::from_indices_unchecked(&self.alphabet, letters))
    }

    pub fn repeat(&self, times: usize) -> FiniteWord {
        FiniteWord::from_indices_unchecked(&self.alphabet, self.letters.repeat(times))
    }

    pub fn count(&self, letter: u8) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }

    pub fn is_prefix_of(&self, other: &FiniteWord) -> bool {
        other.letters.starts_with(&self.letters)
    }

    pub fn is_suffix_of(&self, other: &FiniteWord) -> bool {
        other.letters.ends_with(&self.letters)
    }

    /// Exchanges the two letters of a binary word.
    pub fn complement(&self) -> Result<FiniteWord> {
        require_binary(self)?;
        Ok(FiniteWord::from_indices_unchecked(
            &self.alphabet,
            self.letters.iter().map(|&l| 1 - l).collect(),
        ))
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{}", self.alphabet.symbol(l))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

pub(crate) fn same_alphabet(u: &FiniteWord, v: &FiniteWord) -> Result<()> {
    if Arc::ptr_eq(&u.alphabet, &v.alphabet) || u.alphabet == v.alphabet {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch {
            left: u.alphabet.to_string(),
            right: v.alphabet.to_string(),
        })
    }
}

pub(crate) fn require_binary(u: &FiniteWord) -> Result<()> {
    if u.alphabet.is_binary() {
        Ok(())
    } else {
        Err(Error::NotBinary(u.alphabet.to_string()))
    }
}

/// Letter-occurrence counts in alphabet order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParikhVector {
    pub counts: Vec<u64>,
}

impl ParikhVector {
    pub fn new(counts: Vec<u64>) -> Self {
        ParikhVector { counts }
    }

    pub fn zero(size: usize) -> Self {
        ParikhVector {
            counts: vec![0; size],
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn get(&self, letter: u8) -> u64 {
        self.counts[letter as usize]
    }

    /// Number of occurrences of the second letter; the usual weight of a
    /// binary Parikh vector.
    pub fn weight(&self) -> u64 {
        self.counts.get(1).copied().unwrap_or(0)
    }

    pub(crate) fn add_letter(&mut self, letter: u8) {
        self.counts[letter as usize] += 1;
    }
}

impl fmt::Display for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub fn parikh(u: &FiniteWord) -> ParikhVector {
    parikh_of_letters(u.letters(), u.alphabet().size())
}

pub(crate) fn parikh_of_letters(letters: &[u8], size: usize) -> ParikhVector {
    let mut pv = ParikhVector::zero(size);
    for &l in letters {
        pv.add_letter(l);
    }
    pv
}

/// `C(n, k)` as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn subword_count<T: Clone + Zero + One + CheckedAdd>(u: &[u8], w: &[u8]) -> Option<T> {
    // dp[j] = occurrences of w[..j] as a subword of the prefix read so far
    let mut dp = vec![T::zero(); w.len() + 1];
    dp[0] = T::one();
    for &c in u {
        for j in (1..=w.len()).rev() {
            if w[j - 1] == c {
                dp[j] = dp[j].checked_add(&dp[j - 1])?;
            }
        }
    }
    Some(dp[w.len()].clone())
}

pub(crate) fn binomial_coefficient_letters(u: &[u8], w: &[u8]) -> BigUint {
    if w.len() > u.len() {
        return BigUint::zero();
    }
    match subword_count::<u64>(u, w) {
        Some(v) => BigUint::from(v),
        None => subword_count::<BigUint>(u, w).expect("BigUint addition cannot overflow"),
    }
}

/// Number of occurrences of `w` as a (scattered) subword of `u`.
pub fn binomial_coefficient(u: &FiniteWord, w: &FiniteWord) -> Result<BigUint> {
    same_alphabet(u, w)?;
    Ok(binomial_coefficient_letters(u.letters(), w.letters()))
}

/// Index layout of the patterns `A^{<=k}`, ordered by length then
/// lexicographically in alphabet order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PatternLayout {
    pub sigma: usize,
    pub k: usize,
}

/// Upper bound on the number of stored patterns of a signature.
pub const MAX_PATTERNS: usize = 1 << 22;

impl PatternLayout {
    pub fn new(sigma: usize, k: usize) -> Result<Self> {
        let layout = PatternLayout { sigma, k };
        let mut total: usize = 0;
        let mut level: usize = 1;
        for _ in 0..=k {
            total = total.saturating_add(level);
            level = level.saturating_mul(sigma);
        }
        if total > MAX_PATTERNS {
            return Err(Error::Precondition(format!(
                "{total} patterns for alphabet size {sigma} and k={k} exceeds {MAX_PATTERNS}"
            )));
        }
        Ok(layout)
    }

    /// Index of the first pattern of length `len`.
    pub fn offset(&self, len: usize) -> usize {
        let mut off = 0;
        let mut level = 1;
        for _ in 0..len {
            off += level;
            level *= self.sigma;
        }
        off
    }

    pub fn level_size(&self, len: usize) -> usize {
        self.sigma.pow(len as u32)
    }

    pub fn total(&self) -> usize {
        self.offset(self.k + 1)
    }

    pub fn index_of(&self, pattern: &[u8]) -> usize {
        let mut value = 0;
        for &c in pattern {
            value = value * self.sigma + c as usize;
        }
        self.offset(pattern.len()) + value
    }

    pub fn pattern_at(&self, index: usize) -> Vec<u8> {
        let mut len = 0;
        while self.offset(len + 1) <= index {
            len += 1;
        }
        let mut value = index - self.offset(len);
        let mut out = vec![0u8; len];
        for slot in out.iter_mut().rev() {
            *slot = (value % self.sigma) as u8;
            value /= self.sigma;
        }
        out
    }
}

fn signature_counts<T: Clone + Zero + One + CheckedAdd>(
    letters: &[u8],
    layout: PatternLayout,
) -> Option<Vec<T>> {
    let mut counts = vec![T::zero(); layout.total()];
    counts[0] = T::one();
    let sigma = layout.sigma;
    for (read, &c) in letters.iter().enumerate() {
        let top = layout.k.min(read + 1);
        for len in (1..=top).rev() {
            let shorter = layout.offset(len - 1);
            let here = layout.offset(len);
            for pre in 0..layout.level_size(len - 1) {
                let target = here + pre * sigma + c as usize;
                let add = counts[shorter + pre].clone();
                counts[target] = counts[target].checked_add(&add)?;
            }
        }
    }
    Some(counts)
}

/// The complete `~_k` certificate of a word: every subword count for
/// patterns of length at most `k`, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinomialSignature {
    pub k: usize,
    pub word_length: usize,
    pub alphabet_size: usize,
    counts: Vec<BigUint>,
}

impl BinomialSignature {
    pub fn layout(&self) -> PatternLayout {
        PatternLayout {
            sigma: self.alphabet_size,
            k: self.k,
        }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// Counts of the patterns of length exactly `len`.
    pub fn level(&self, len: usize) -> &[BigUint] {
        let layout = self.layout();
        let start = layout.offset(len);
        &self.counts[start..start + layout.level_size(len)]
    }

    /// Count for a pattern given as letter indices; `None` if longer than `k`.
    pub fn get(&self, pattern: &[u8]) -> Option<&BigUint> {
        if pattern.len() > self.k || pattern.iter().any(|&c| c as usize >= self.alphabet_size) {
            return None;
        }
        Some(&self.counts[self.layout().index_of(pattern)])
    }

    pub fn count(&self, pattern: &FiniteWord) -> Option<&BigUint> {
        self.get(pattern.letters())
    }

    /// `(pattern, count)` pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<u8>, &BigUint)> + '_ {
        let layout = self.layout();
        self.counts
            .iter()
            .enumerate()
            .map(move |(i, c)| (layout.pattern_at(i), c))
    }
}

pub(crate) fn signature_of_letters(
    letters: &[u8],
    sigma: usize,
    k: usize,
) -> Result<BinomialSignature> {
    if k == 0 {
        return Err(Error::Precondition("signature needs k >= 1".into()));
    }
    let layout = PatternLayout::new(sigma, k)?;
    let counts = match signature_counts::<u64>(letters, layout) {
        Some(small) => small.into_iter().map(BigUint::from).collect(),
        None => signature_counts::<BigUint>(letters, layout).expect("BigUint cannot overflow"),
    };
    Ok(BinomialSignature {
        k,
        word_length: letters.len(),
        alphabet_size: sigma,
        counts,
    })
}

pub fn signature(u: &FiniteWord, k: usize) -> Result<BinomialSignature> {
    signature_of_letters(u.letters(), u.alphabet().size(), k)
}

/// `u ~_k v`. For equal lengths at least `k`, only the patterns of length
/// exactly `k` are compared.
pub fn equivalent(u: &FiniteWord, v: &FiniteWord, k: usize) -> Result<bool> {
    same_alphabet(u, v)?;
    if k == 0 {
        return Ok(true);
    }
    if u.len() != v.len() {
        return Ok(false);
    }
    let su = signature(u, k)?;
    let sv = signature(v, k)?;
    if u.len() >= k {
        Ok(su.level(k) == sv.level(k))
    } else {
        Ok(su == sv)
    }
}

/// `prod_a C(|u|_a, m_a)`: the total subword count of `u` over the abelian
/// class with Parikh vector `m`.
pub fn abelian_mass(u: &FiniteWord, m: &ParikhVector) -> Result<BigUint> {
    let size = u.alphabet().size();
    if m.counts.len() != size {
        return Err(Error::LengthMismatch {
            expected: size,
            actual: m.counts.len(),
        });
    }
    let pu = parikh(u);
    Ok(pu
        .counts
        .iter()
        .zip(&m.counts)
        .map(|(&have, &want)| binomial(have, want))
        .product())
}

/// `binom(x^n, e) - binom(y^n, e)` for `x ~_{|e|-1} y`, checked against
/// `n * (binom(x, e) - binom(y, e))`.
pub fn power_delta(x: &FiniteWord, y: &FiniteWord, n: usize, e: &FiniteWord) -> Result<BigInt> {
    same_alphabet(x, y)?;
    same_alphabet(x, e)?;
    if e.is_empty() {
        return Err(Error::Precondition("pattern e must be nonempty".into()));
    }
    let k = e.len() - 1;
    if !equivalent(x, y, k)? {
        return Err(Error::Precondition(format!(
            "{x} and {y} are not {k}-binomially equivalent"
        )));
    }
    let big = |b: BigUint| BigInt::from(b);
    let delta = big(binomial_coefficient_letters(&x.letters().repeat(n), e.letters()))
        - big(binomial_coefficient_letters(&y.letters().repeat(n), e.letters()));
    let base = big(binomial_coefficient_letters(x.letters(), e.letters()))
        - big(binomial_coefficient_letters(y.letters(), e.letters()));
    let expected = base * BigInt::from(n);
    if delta != expected {
        return Err(Error::IdentityViolated(format!(
            "power delta for x={x}, y={y}, n={n}, e={e}: {delta} != {expected}"
        )));
    }
    Ok(delta)
}

/// Whether every count of a length-`n` word's `k`-signature fits in `u64`.
pub(crate) fn counts_fit_u64(n: usize, k: usize) -> bool {
    (0..=k.min(n)).all(|l| binomial(n as u64, l as u64).to_u64().is_some())
}

/// Incrementally maintained `u64` signature of a sliding window.
///
/// Only valid while every count fits in `u64` (see [`counts_fit_u64`]).
pub(crate) struct SlidingSignature {
    layout: PatternLayout,
    counts: Vec<u64>,
}

impl SlidingSignature {
    pub fn new(layout: PatternLayout) -> Self {
        let mut counts = vec![0u64; layout.total()];
        counts[0] = 1;
        SlidingSignature { layout, counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Window `v` becomes `v c`: `binom(vc, w'c) += binom(v, w')`, longest first.
    pub fn push_back(&mut self, c: u8) {
        let sigma = self.layout.sigma;
        for len in (1..=self.layout.k).rev() {
            let shorter = self.layout.offset(len - 1);
            let here = self.layout.offset(len);
            for pre in 0..self.layout.level_size(len - 1) {
                self.counts[here + pre * sigma + c as usize] += self.counts[shorter + pre];
            }
        }
    }

    /// Window `c v` becomes `v`: `binom(v, cw') = binom(cv, cw') - binom(v, w')`,
    /// shortest first so `binom(v, w')` is already updated.
    pub fn pop_front(&mut self, c: u8) {
        for len in 1..=self.layout.k {
            let shorter = self.layout.offset(len - 1);
            let here = self.layout.offset(len);
            let block = self.layout.level_size(len - 1);
            let base = here + c as usize * block;
            for suf in 0..block {
                self.counts[base + suf] -= self.counts[shorter + suf];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FiniteWord {
        FiniteWord::binary(s).unwrap()
    }

    #[test]
    fn binomial_coefficient_examples() {
        let b = |u: &str, v: &str| binomial_coefficient(&w(u), &w(v)).unwrap();
        assert_eq!(b("0101", "01"), BigUint::from(3u32));
        assert_eq!(b("0110", "01"), BigUint::from(2u32));
        assert_eq!(b("0110", ""), BigUint::one());
        assert_eq!(b("", ""), BigUint::one());
        assert_eq!(b("0", "00"), BigUint::zero());
        let a = Alphabet::parse("ab").unwrap();
        let aaaa = FiniteWord::parse(&a, "aaaa").unwrap();
        let aa = FiniteWord::parse(&a, "aa").unwrap();
        assert_eq!(binomial_coefficient(&aaaa, &aa).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let other = FiniteWord::parse(&Alphabet::parse("ab").unwrap(), "ab").unwrap();
        assert!(matches!(
            binomial_coefficient(&w("01"), &other),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::parse("0").is_err());
        assert!(Alphabet::parse("010").is_err());
        assert!(Alphabet::parse("0123456789abcdefg").is_err());
        assert_eq!(Alphabet::digits(3).unwrap().symbols(), &['0', '1', '2']);
        assert!(FiniteWord::binary("012").is_err());
    }

    #[test]
    fn parikh_examples() {
        assert_eq!(parikh(&w("0110")).counts, vec![2, 2]);
        assert_eq!(parikh(&w("")).counts, vec![0, 0]);
        assert_eq!(parikh(&w("000111")).counts, vec![3, 3]);
    }

    #[test]
    fn signature_examples() {
        let s = signature(&w("01"), 1).unwrap();
        let c: Vec<u64> = s.counts().iter().map(|c| c.to_u64().unwrap()).collect();
        assert_eq!(c, vec![1, 1, 1]);

        // patterns: eps, 0, 1, 00, 01, 10, 11
        let s = signature(&w("0110"), 2).unwrap();
        let c: Vec<u64> = s.counts().iter().map(|c| c.to_u64().unwrap()).collect();
        assert_eq!(c, vec![1, 2, 2, 1, 2, 2, 1]);
        assert_eq!(s.get(&[0, 1]), Some(&BigUint::from(2u32)));
        assert_eq!(s.get(&[0, 1, 1]), None);
    }

    #[test]
    fn signature_rejects_k_zero() {
        assert!(signature(&w("01"), 0).is_err());
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent(&w("0110"), &w("1001"), 2).unwrap());
        assert!(!equivalent(&w("0110"), &w("1001"), 3).unwrap());
        assert!(equivalent(&w("0110"), &w("0110"), 5).unwrap());
        assert!(!equivalent(&w("01"), &w("011"), 1).unwrap());
        // shorter than k: full comparison
        assert!(!equivalent(&w("01"), &w("10"), 3).unwrap());
    }

    #[test]
    fn abelian_mass_examples() {
        let m = |u: &str, v: Vec<u64>| abelian_mass(&w(u), &ParikhVector::new(v)).unwrap();
        assert_eq!(m("0110", vec![1, 1]), BigUint::from(4u32));
        assert_eq!(m("0110", vec![2, 2]), BigUint::one());
        assert_eq!(m("000", vec![0, 1]), BigUint::zero());
        assert!(abelian_mass(&w("01"), &ParikhVector::new(vec![1])).is_err());
    }

    #[test]
    fn power_delta_examples() {
        let x = w("0110");
        let y = w("1001");
        let e = w("011");
        let d = power_delta(&x, &y, 3, &e).unwrap();
        let direct = BigInt::from(binomial_coefficient(&x.repeat(3), &e).unwrap())
            - BigInt::from(binomial_coefficient(&y.repeat(3), &e).unwrap());
        assert_eq!(d, direct);
        assert_eq!(power_delta(&x, &x, 4, &e).unwrap(), BigInt::zero());
        assert_eq!(power_delta(&x, &y, 0, &e).unwrap(), BigInt::zero());
        assert!(matches!(
            power_delta(&w("01"), &w("00"), 2, &w("01")),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn sliding_signature_tracks_direct_signature() {
        let text = w("0110100110010110100101100110");
        let n = 7;
        let layout = PatternLayout::new(2, 3).unwrap();
        let mut sl = SlidingSignature::new(layout);
        for &c in &text.letters()[..n] {
            sl.push_back(c);
        }
        for start in 0..=text.len() - n {
            if start > 0 {
                sl.pop_front(text.letters()[start - 1]);
                sl.push_back(text.letters()[start + n - 1]);
            }
            let direct = signature(&text.factor(start, start + n), 3).unwrap();
            let got: Vec<BigUint> = sl.counts().iter().map(|&c| BigUint::from(c)).collect();
            assert_eq!(got.as_slice(), direct.counts());
        }
    }

    #[test]
    fn pattern_layout_round_trip() {
        let layout = PatternLayout::new(3, 3).unwrap();
        for i in 0..layout.total() {
            assert_eq!(layout.index_of(&layout.pattern_at(i)), i);
        }
        assert_eq!(layout.total(), 1 + 3 + 9 + 27);
    }

    #[test]
    fn large_counts_fall_back_to_bigint() {
        let u = w(&"01".repeat(400));
        let sig = signature(&u, 12).unwrap();
        let twelve = vec![0u8; 6].into_iter().chain(vec![1u8; 6]).collect::<Vec<_>>();
        let direct = binomial_coefficient_letters(u.letters(), &twelve);
        assert_eq!(sig.get(&twelve), Some(&direct));
        assert!(direct.to_u64().is_none());
    }
}
