//! Morphisms of free monoids: application, powers, fixed-point letters,
//! adjacency-matrix rank and Parikh-collinearity, and the identities that
//! express subword counts of images through counts of preimages.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{
    binomial_coefficient_letters, parikh, parikh_of_letters, require_binary, same_alphabet,
    Alphabet, BinomialSignature, FiniteWord, ParikhVector,
};

/// Default cap on the length of any materialized letter image.
pub const DEFAULT_IMAGE_LIMIT: usize = 1 << 20;

#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Arc<Alphabet>,
    target: Arc<Alphabet>,
    images: Vec<FiniteWord>,
    image_limit: usize,
}

/// Rank and collinearity flags of a morphism's adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismClass {
    pub rank: usize,
    pub is_parikh_constant: bool,
    pub is_parikh_collinear: bool,
    pub is_totally_erasing: bool,
    pub is_uniform: bool,
    /// First letter (in alphabet order) the morphism is prolongable on.
    pub prolongable_on: Option<char>,
}

impl Morphism {
    pub fn new(
        source: &Arc<Alphabet>,
        target: &Arc<Alphabet>,
        images: Vec<FiniteWord>,
    ) -> Result<Self> {
        if images.len() != source.size() {
            return Err(Error::LengthMismatch {
                expected: source.size(),
                actual: images.len(),
            });
        }
        for img in &images {
            if **img.alphabet() != **target {
                return Err(Error::AlphabetMismatch {
                    left: img.alphabet().to_string(),
                    right: target.to_string(),
                });
            }
        }
        Ok(Morphism {
            source: Arc::clone(source),
            target: Arc::clone(target),
            images,
            image_limit: DEFAULT_IMAGE_LIMIT,
        })
    }

    /// Endomorphism of `alphabet` given by one image string per letter.
    pub fn from_images(alphabet: &Arc<Alphabet>, images: &[&str]) -> Result<Self> {
        let images = images
            .iter()
            .map(|s| FiniteWord::parse(alphabet, s))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(alphabet, alphabet, images)
    }

    /// The Thue–Morse morphism `0 -> 01, 1 -> 10`.
    pub fn thue_morse() -> Self {
        Self::from_images(&Alphabet::binary(), &["01", "10"]).expect("valid morphism")
    }

    /// `0 -> 01, 1 -> 0`.
    pub fn fibonacci() -> Self {
        Self::from_images(&Alphabet::binary(), &["01", "0"]).expect("valid morphism")
    }

    /// `0 -> 01, 1 -> 00`.
    pub fn period_doubling() -> Self {
        Self::from_images(&Alphabet::binary(), &["01", "00"]).expect("valid morphism")
    }

    /// `0 -> 01, 1 -> 12, 2 -> 2`.
    pub fn h_morphism() -> Self {
        Self::from_images(&Alphabet::digits(3).unwrap(), &["01", "12", "2"]).expect("valid morphism")
    }

    /// Parses one `letter -> image` rule per line; `#` starts a comment and
    /// whitespace is ignored. An empty image may be written as nothing, `ε`
    /// or `eps`. The target alphabet equals the source alphabet unless an
    /// image uses other symbols, which are then appended in order of
    /// appearance.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rules: Vec<(char, Vec<char>)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let compact: String = line.chars().filter(|c| !c.is_whitespace()).collect();
            if compact.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            let (lhs, rhs) = compact
                .split_once("->")
                .ok_or_else(|| parse_err(format!("expected `letter -> image`, got {raw:?}")))?;
            let mut lhs_chars = lhs.chars();
            let letter = match (lhs_chars.next(), lhs_chars.next()) {
                (Some(c), None) => c,
                _ => return Err(parse_err(format!("left side must be one symbol, got {lhs:?}"))),
            };
            if rules.iter().any(|(c, _)| *c == letter) {
                return Err(parse_err(format!("duplicate rule for {letter:?}")));
            }
            let image = match rhs {
                "ε" | "eps" => Vec::new(),
                other => other.chars().collect(),
            };
            rules.push((letter, image));
        }
        let source = Alphabet::new(rules.iter().map(|(c, _)| *c))?;
        let mut target_symbols: Vec<char> = source.symbols().to_vec();
        for (_, image) in &rules {
            for &c in image {
                if !target_symbols.contains(&c) {
                    target_symbols.push(c);
                }
            }
        }
        let target = if target_symbols.len() == source.size() {
            Arc::clone(&source)
        } else {
            Alphabet::new(target_symbols)?
        };
        let images = rules
            .iter()
            .map(|(_, img)| FiniteWord::parse(&target, &img.iter().collect::<String>()))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(&source, &target, images)
    }

    pub fn with_image_limit(mut self, limit: usize) -> Self {
        self.image_limit = limit;
        self
    }

    pub fn image_limit(&self) -> usize {
        self.image_limit
    }

    pub fn source(&self) -> &Arc<Alphabet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Alphabet> {
        &self.target
    }

    pub fn image(&self, letter: u8) -> &FiniteWord {
        &self.images[letter as usize]
    }

    pub fn images(&self) -> &[FiniteWord] {
        &self.images
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub(crate) fn apply_letters(&self, letters: &[u8]) -> Vec<u8> {
        let mut out = Vec::new();
        for &c in letters {
            out.extend_from_slice(self.images[c as usize].letters());
        }
        out
    }

    pub fn apply(&self, u: &FiniteWord) -> Result<FiniteWord> {
        if **u.alphabet() != *self.source {
            return Err(Error::AlphabetMismatch {
                left: u.alphabet().to_string(),
                right: self.source.to_string(),
            });
        }
        Ok(FiniteWord::from_indices_unchecked(
            &self.target,
            self.apply_letters(u.letters()),
        ))
    }

    /// `self` after `inner`: `u -> self(inner(u))`.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        if *inner.target != *self.source {
            return Err(Error::AlphabetMismatch {
                left: inner.target.to_string(),
                right: self.source.to_string(),
            });
        }
        let images = inner
            .images
            .iter()
            .map(|img| {
                let letters = self.apply_letters(img.letters());
                if letters.len() > self.image_limit {
                    return Err(Error::ImageTooLong {
                        length: letters.len(),
                        limit: self.image_limit,
                    });
                }
                Ok(FiniteWord::from_indices_unchecked(&self.target, letters))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism {
            source: Arc::clone(&inner.source),
            target: Arc::clone(&self.target),
            images,
            image_limit: self.image_limit,
        })
    }

    pub fn identity(alphabet: &Arc<Alphabet>) -> Morphism {
        let images = (0..alphabet.size() as u8)
            .map(|c| FiniteWord::from_indices_unchecked(alphabet, vec![c]))
            .collect();
        Morphism {
            source: Arc::clone(alphabet),
            target: Arc::clone(alphabet),
            images,
            image_limit: DEFAULT_IMAGE_LIMIT,
        }
    }

    /// The `j`-fold composition, with every image capped by the image limit.
    pub fn power(&self, j: u32) -> Result<Morphism> {
        if !self.is_endomorphism() {
            return Err(Error::NotEndomorphism {
                source_alphabet: self.source.to_string(),
                target_alphabet: self.target.to_string(),
            });
        }
        let mut acc = Morphism::identity(&self.source).with_image_limit(self.image_limit);
        for _ in 0..j {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Column `a` is the Parikh vector of `f(a)`; rows follow the target alphabet.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u64>> {
        let cols: Vec<ParikhVector> = self.images.iter().map(parikh).collect();
        (0..self.target.size())
            .map(|row| cols.iter().map(|pv| pv.counts[row]).collect())
            .collect()
    }

    /// `M_f * v` for a Parikh vector over the source alphabet.
    pub fn apply_matrix(&self, v: &ParikhVector) -> ParikhVector {
        let m = self.adjacency_matrix();
        ParikhVector::new(
            m.iter()
                .map(|row| row.iter().zip(&v.counts).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn prolongable_letter(&self) -> Option<u8> {
        if !self.is_endomorphism() {
            return None;
        }
        (0..self.source.size() as u8).find(|&a| self.is_prolongable_on(a))
    }

    pub fn is_prolongable_on(&self, a: u8) -> bool {
        let img = self.images[a as usize].letters();
        self.is_endomorphism() && img.len() >= 2 && img[0] == a
    }

    pub fn classify(&self) -> MorphismClass {
        let parikhs: Vec<ParikhVector> = self.images.iter().map(parikh).collect();
        let matrix = self.adjacency_matrix();
        let rank = integer_rank(&matrix);
        let is_parikh_constant = parikhs.windows(2).all(|w| w[0] == w[1]);
        let is_parikh_collinear = pairwise_proportional(&parikhs);
        debug_assert_eq!(is_parikh_collinear, rank <= 1);
        let is_totally_erasing = self.images.iter().all(FiniteWord::is_empty);
        let lengths: Vec<usize> = self.images.iter().map(FiniteWord::len).collect();
        MorphismClass {
            rank,
            is_parikh_constant,
            is_parikh_collinear,
            is_totally_erasing,
            is_uniform: lengths.windows(2).all(|w| w[0] == w[1]),
            prolongable_on: self.prolongable_letter().map(|a| self.source.symbol(a)),
        }
    }

    /// `binom(f(u), e)` computed from the subword counts of `u` alone.
    ///
    /// Sums, over decompositions `e = e_1 ... e_l` into nonempty blocks and
    /// letter tuples `a_1 ... a_l`, the products `binom(u, a_1...a_l) *
    /// prod_i binom(f(a_i), e_i)`.
    pub fn image_coefficient(&self, u_signature: &BinomialSignature, e: &FiniteWord) -> Result<BigUint> {
        if u_signature.alphabet_size != self.source.size() {
            return Err(Error::Precondition(format!(
                "signature over {} letters, morphism source has {}",
                u_signature.alphabet_size,
                self.source.size()
            )));
        }
        if **e.alphabet() != *self.target {
            return Err(Error::AlphabetMismatch {
                left: e.alphabet().to_string(),
                right: self.target.to_string(),
            });
        }
        if u_signature.k < e.len() {
            return Err(Error::Precondition(format!(
                "signature depth {} is smaller than |e| = {}",
                u_signature.k,
                e.len()
            )));
        }
        if e.is_empty() {
            return Ok(BigUint::one());
        }
        let e = e.letters();
        let sigma = self.source.size();
        // block[i][j][a] = binom(f(a), e[i..j])
        let block = |i: usize, j: usize, a: usize| -> BigUint {
            binomial_coefficient_letters(self.images[a].letters(), &e[i..j])
        };
        let mut total = BigUint::zero();
        // iterate over compositions of |e| by the set of cut points
        let cuts = e.len() - 1;
        for mask in 0u32..(1u32 << cuts) {
            let mut bounds = vec![0usize];
            for bit in 0..cuts {
                if mask & (1 << bit) != 0 {
                    bounds.push(bit + 1);
                }
            }
            bounds.push(e.len());
            let parts = bounds.len() - 1;
            let factors: Vec<Vec<BigUint>> = (0..parts)
                .map(|p| (0..sigma).map(|a| block(bounds[p], bounds[p + 1], a)).collect())
                .collect();
            let mut tuple = vec![0u8; parts];
            loop {
                let product: BigUint = tuple
                    .iter()
                    .enumerate()
                    .map(|(p, &a)| factors[p][a as usize].clone())
                    .product();
                if !product.is_zero() {
                    let count = u_signature.get(&tuple).expect("tuple within signature depth");
                    total += count * product;
                }
                if !advance_tuple(&mut tuple, sigma) {
                    break;
                }
            }
        }
        Ok(total)
    }

    /// `prod_i binom(f(w_i), e_i)` for letters `w_i` of `w` and `e_i` of `e`.
    pub fn g_value(&self, w: &FiniteWord, e: &FiniteWord) -> Result<BigUint> {
        if w.len() != e.len() {
            return Err(Error::LengthMismatch {
                expected: w.len(),
                actual: e.len(),
            });
        }
        if **w.alphabet() != *self.source || **e.alphabet() != *self.target {
            return Err(Error::AlphabetMismatch {
                left: format!("{} / {}", w.alphabet(), e.alphabet()),
                right: format!("{} / {}", self.source, self.target),
            });
        }
        Ok(w.letters()
            .iter()
            .zip(e.letters())
            .map(|(&a, &b)| binomial_coefficient_letters(self.images[a as usize].letters(), &[b]))
            .product())
    }
}

fn advance_tuple(tuple: &mut [u8], sigma: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        if (*slot as usize) + 1 < sigma {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

fn pairwise_proportional(vectors: &[ParikhVector]) -> bool {
    for (i, u) in vectors.iter().enumerate() {
        for v in &vectors[i + 1..] {
            for a in 0..u.counts.len() {
                for b in a + 1..u.counts.len() {
                    let lhs = u.counts[a] as u128 * v.counts[b] as u128;
                    let rhs = u.counts[b] as u128 * v.counts[a] as u128;
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Exact rank by fraction-free (Bareiss) elimination.
pub fn integer_rank(matrix: &[Vec<u64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev_pivot = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev_pivot;
            }
            m[r][col] = BigInt::zero();
        }
        prev_pivot = m[rank][col].abs();
        if prev_pivot.is_zero() {
            prev_pivot = BigInt::one();
        }
        rank += 1;
    }
    rank
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, img) in self.images.iter().enumerate() {
            let image = if img.is_empty() {
                "ε".to_string()
            } else {
                img.to_string()
            };
            writeln!(f, "{} -> {}", self.source.symbol(a as u8), image)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rules: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(a, img)| format!("{}->{}", self.source.symbol(a as u8), img))
            .collect();
        write!(f, "Morphism[{}]", rules.join(", "))
    }
}

/// `(binom(phi^k(u), 0 1^k) - binom(phi^k(v), 0 1^k),
///   binom(phi^k(u), 0 1^{k+1}) - binom(phi^k(v), 0 1^{k+1}))`
/// for the Thue–Morse morphism `phi`, checked against the closed forms
/// `2^{(k-1)(k-2)/2} (|u|_0 - |v|_0)` and, when `u ~_1 v`,
/// `2^{k(k-1)/2} (binom(u,01) - binom(v,01))`.
pub fn michel_delta(u: &FiniteWord, v: &FiniteWord, k: u32) -> Result<(BigInt, BigInt)> {
    same_alphabet(u, v)?;
    require_binary(u)?;
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: u.len(),
            actual: v.len(),
        });
    }
    if k == 0 {
        return Err(Error::Precondition("michel_delta needs k >= 1".into()));
    }
    let phik = Morphism::thue_morse()
        .with_image_limit(usize::MAX)
        .power(k)?;
    let pu = phik.apply_letters(u.letters());
    let pv = phik.apply_letters(v.letters());
    let pattern = |ones: u32| -> Vec<u8> {
        std::iter::once(0u8)
            .chain(std::iter::repeat_n(1u8, ones as usize))
            .collect()
    };
    let diff = |pat: &[u8]| -> BigInt {
        BigInt::from(binomial_coefficient_letters(&pu, pat))
            - BigInt::from(binomial_coefficient_letters(&pv, pat))
    };
    let first = diff(&pattern(k));
    let second = diff(&pattern(k + 1));

    let scale = BigInt::one() << (((k - 1) * k.saturating_sub(2)) / 2);
    let zeros = |w: &FiniteWord| BigInt::from(w.count(0));
    let expected_first = &scale * (zeros(u) - zeros(v));
    if first != expected_first {
        return Err(Error::IdentityViolated(format!(
            "michel first component for u={u}, v={v}, k={k}: {first} != {expected_first}"
        )));
    }
    let pu1 = parikh_of_letters(u.letters(), 2);
    let pv1 = parikh_of_letters(v.letters(), 2);
    if pu1 == pv1 {
        let b01 = |w: &FiniteWord| BigInt::from(binomial_coefficient_letters(w.letters(), &[0, 1]));
        // the second identity carries 2^{k(k-1)/2}; the same exponent as the
        // first one fails already at u=01, v=10, k=2
        let second_scale = BigInt::one() << ((k * (k - 1)) / 2);
        let expected_second = &second_scale * (b01(u) - b01(v));
        if second != expected_second {
            return Err(Error::IdentityViolated(format!(
                "michel second component for u={u}, v={v}, k={k}: {second} != {expected_second}"
            )));
        }
    }
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::signature;

    fn w(s: &str) -> FiniteWord {
        FiniteWord::binary(s).unwrap()
    }

    fn pc_example() -> Morphism {
        Morphism::from_images(&Alphabet::binary(), &["000111", "0110"]).unwrap()
    }

    fn rank_two_example() -> Morphism {
        Morphism::from_images(
            &Alphabet::digits(3).unwrap(),
            &["000222", "0001112", "2222000000111"],
        )
        .unwrap()
    }

    #[test]
    fn apply_examples() {
        let phi = Morphism::thue_morse();
        assert_eq!(phi.apply(&w("0")).unwrap().to_string(), "01");
        assert_eq!(phi.apply(&w("01")).unwrap().to_string(), "0110");
        assert_eq!(phi.apply(&w("")).unwrap().to_string(), "");
        assert_eq!(pc_example().apply(&w("1")).unwrap().to_string(), "0110");
        let other = FiniteWord::parse(&Alphabet::parse("ab").unwrap(), "a").unwrap();
        assert!(phi.apply(&other).is_err());
    }

    #[test]
    fn power_examples() {
        let phi = Morphism::thue_morse();
        assert_eq!(phi.power(2).unwrap().image(0).to_string(), "0110");
        assert_eq!(phi.power(0).unwrap().image(0).to_string(), "0");
        assert_eq!(phi.power(3).unwrap().image(0).to_string(), "01101001");
        let limited = Morphism::thue_morse().with_image_limit(16);
        assert!(matches!(limited.power(5), Err(Error::ImageTooLong { .. })));
        let tau = Morphism::parse("a -> \n 0 -> 0\n 1 -> 1\n").unwrap();
        assert!(tau.is_endomorphism());
        let coding = Morphism::parse("0 -> x").unwrap_err();
        assert!(matches!(coding, Error::InvalidAlphabet(_)));
    }

    #[test]
    fn parse_format() {
        let text = "# Thue-Morse\n0 -> 01\n  1->1 0   # second rule\n\n";
        let m = Morphism::parse(text).unwrap();
        assert_eq!(m, Morphism::thue_morse());
        assert!(Morphism::parse("0 => 01").is_err());
        assert!(Morphism::parse("0 -> 01\n0 -> 10").is_err());
        assert!(Morphism::parse("01 -> 0").is_err());
        let tau = Morphism::parse("a -> eps\n0 -> 0\n1 -> 1\nb -> 1").unwrap();
        assert!(tau.image(0).is_empty());
        assert_eq!(format!("{}", tau).lines().next(), Some("a -> ε"));
    }

    #[test]
    fn classify_examples() {
        let c = Morphism::thue_morse().classify();
        assert_eq!(c.rank, 1);
        assert!(c.is_parikh_constant && c.is_parikh_collinear);
        assert_eq!(c.prolongable_on, Some('0'));

        let c = pc_example().classify();
        assert!(c.is_parikh_collinear && !c.is_parikh_constant);
        assert_eq!(c.rank, 1);

        let c = rank_two_example().classify();
        assert_eq!(c.rank, 2);
        assert!(!c.is_parikh_collinear);

        let id = Morphism::identity(&Alphabet::binary()).classify();
        assert_eq!(id.rank, 2);
        assert!(!id.is_parikh_collinear);
        assert_eq!(id.prolongable_on, None);

        let erase = Morphism::from_images(&Alphabet::binary(), &["", ""]).unwrap().classify();
        assert_eq!(erase.rank, 0);
        assert!(erase.is_parikh_collinear && erase.is_totally_erasing);
    }

    #[test]
    fn bareiss_rank_small_cases() {
        assert_eq!(integer_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(integer_rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(integer_rank(&[vec![0, 1], vec![1, 0]]), 2);
        assert_eq!(
            integer_rank(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]),
            2
        );
        assert_eq!(
            integer_rank(&[vec![2, 0, 1], vec![0, 3, 1], vec![1, 1, 4], vec![3, 3, 2]]),
            3
        );
    }

    #[test]
    fn image_coefficient_examples() {
        let phi = Morphism::thue_morse();
        let sig = signature(&w("01"), 2).unwrap();
        assert_eq!(phi.image_coefficient(&sig, &w("0")).unwrap(), BigUint::from(2u32));

        let empty = signature(&w(""), 2).unwrap();
        assert_eq!(phi.image_coefficient(&empty, &w("01")).unwrap(), BigUint::zero());

        let u = w("0110100");
        let sig = signature(&u, 3).unwrap();
        let lhs = phi.image_coefficient(&sig, &w("011")).unwrap();
        let expected = binomial_coefficient_letters(u.letters(), &[0, 1])
            + binomial_coefficient_letters(u.letters(), &[0, 0])
            + crate::word::binomial(u.len() as u64, 3);
        assert_eq!(lhs, expected);

        let shallow = signature(&u, 1).unwrap();
        assert!(phi.image_coefficient(&shallow, &w("01")).is_err());
    }

    #[test]
    fn g_value_examples() {
        let phi = Morphism::thue_morse();
        assert_eq!(phi.g_value(&w("01"), &w("01")).unwrap(), BigUint::one());
        assert_eq!(phi.g_value(&w(""), &w("")).unwrap(), BigUint::one());
        assert!(phi.g_value(&w("01"), &w("0")).is_err());
        let f = pc_example();
        assert_eq!(
            f.g_value(&w("01"), &w("10")).unwrap(),
            f.g_value(&w("10"), &w("10")).unwrap()
        );
    }

    #[test]
    fn michel_delta_examples() {
        let (first, second) = michel_delta(&w("01"), &w("10"), 2).unwrap();
        assert_eq!(first, BigInt::zero());
        assert_eq!(second, BigInt::from(2));
        let (first, _) = michel_delta(&w("00"), &w("11"), 1).unwrap();
        assert_eq!(first, BigInt::from(2));
        assert!(michel_delta(&w("0"), &w("10"), 2).is_err());
    }

    #[test]
    fn matrix_maps_parikh_vectors() {
        let f = rank_two_example();
        let a = f.source().clone();
        let u = FiniteWord::parse(&a, "0120210").unwrap();
        assert_eq!(f.apply_matrix(&parikh(&u)), parikh(&f.apply(&u).unwrap()));
    }
}
