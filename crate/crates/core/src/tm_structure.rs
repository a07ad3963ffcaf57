//! Block structure of factors of `phi^j`-images, `phi` being the Thue–Morse
//! morphism `0 -> 01, 1 -> 10`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::word::{equivalent, require_binary, same_alphabet, Alphabet, FiniteWord};

/// `phi^j(letter)` as letter indices.
fn block(j: u32, letter: u8) -> Vec<u8> {
    let mut w = vec![letter];
    for _ in 0..j {
        w = w.iter().flat_map(|&c| [c, 1 - c]).collect();
    }
    w
}

fn tm_power(j: u32) -> Result<Morphism> {
    Morphism::thue_morse().with_image_limit(usize::MAX).power(j)
}

/// `u = p · phi^j(core) · s` with `p` a proper suffix of `phi^j(a)` and `s` a
/// proper prefix of `phi^j(b)`; `a` is set iff `p` is nonempty, `b` iff `s` is.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhiFactorization {
    pub j: u32,
    pub p: FiniteWord,
    pub core: FiniteWord,
    pub s: FiniteWord,
    pub a: Option<u8>,
    pub b: Option<u8>,
}

impl PhiFactorization {
    /// `a·core·b`, dropping whichever end letter is absent.
    pub fn ancestor(&self) -> FiniteWord {
        let mut letters = Vec::with_capacity(self.core.len() + 2);
        letters.extend(self.a);
        letters.extend_from_slice(self.core.letters());
        letters.extend(self.b);
        FiniteWord::from_indices_unchecked(self.core.alphabet(), letters)
    }

    pub fn pair(&self) -> PrefixSuffixPair {
        PrefixSuffixPair {
            p: self.p.clone(),
            s: self.s.clone(),
            j: self.j,
        }
    }

    /// Rebuilds the factored word.
    pub fn word(&self) -> FiniteWord {
        let mut letters = self.p.letters().to_vec();
        for &c in self.core.letters() {
            letters.extend(block(self.j, c));
        }
        letters.extend_from_slice(self.s.letters());
        FiniteWord::from_indices_unchecked(self.core.alphabet(), letters)
    }
}

impl fmt::Display for PhiFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |w: &FiniteWord| if w.is_empty() { "ε".to_string() } else { w.to_string() };
        write!(
            f,
            "({}, phi^{}({}), {}) ancestor {}",
            show(&self.p),
            self.j,
            show(&self.core),
            show(&self.s),
            show(&self.ancestor())
        )
    }
}

/// Tries the split with prefix length `t`.
fn factor_at(u: &[u8], j: u32, t: usize, alphabet: &std::sync::Arc<Alphabet>) -> Option<PhiFactorization> {
    let size = 1usize << j;
    let images = [block(j, 0), block(j, 1)];
    let p = &u[..t];
    let a = if p.is_empty() {
        None
    } else {
        // p ends phi^j(a), whose last letter is determined by a
        let a = (0..2u8).find(|&a| images[a as usize].ends_with(p))?;
        Some(a)
    };
    let mut core = Vec::new();
    let mut i = t;
    while i + size <= u.len() {
        let c = u[i];
        if u[i..i + size] != images[c as usize][..] {
            break;
        }
        core.push(c);
        i += size;
    }
    let s = &u[i..];
    if s.len() >= size {
        return None;
    }
    let b = if s.is_empty() {
        None
    } else {
        Some(s[0]).filter(|&b| images[b as usize].starts_with(s))?.into()
    };
    let word = |w: &[u8]| FiniteWord::from_indices_unchecked(alphabet, w.to_vec());
    Some(PhiFactorization {
        j,
        p: word(p),
        core: word(&core),
        s: word(s),
        a,
        b,
    })
}

/// All `phi^j`-factorizations of `u`, ordered by `(p, s)`.
///
/// An empty list means `u` is not a factor of any `phi^j`-image. When two
/// factorizations exist, their shape is checked: unary ancestors in opposite
/// letters, prefixes differing in length by `2^(j-1)`, and `≡_j`-related pairs.
pub fn phi_factorizations(u: &FiniteWord, j: u32) -> Result<Vec<PhiFactorization>> {
    require_binary(u)?;
    if j == 0 {
        return Err(Error::Precondition("phi^j-factorizations need j >= 1".into()));
    }
    let size = 1usize << j;
    if u.len() + 1 < size {
        return Err(Error::Precondition(format!(
            "|u| = {} is shorter than 2^{j} - 1",
            u.len()
        )));
    }
    let mut found: Vec<PhiFactorization> = (0..size.min(u.len() + 1))
        .filter_map(|t| factor_at(u.letters(), j, t, u.alphabet()))
        .collect();
    found.sort_by(|x, y| (&x.p, &x.s).cmp(&(&y.p, &y.s)));
    match found.len() {
        0 | 1 => {}
        2 if u.len() < size => {}
        2 => check_two_factorizations(u, &found[0], &found[1])?,
        n => {
            return Err(Error::IdentityViolated(format!(
                "{u} has {n} phi^{j}-factorizations"
            )))
        }
    }
    Ok(found)
}

fn check_two_factorizations(u: &FiniteWord, f: &PhiFactorization, g: &PhiFactorization) -> Result<()> {
    let unary = |w: &FiniteWord| -> Option<u8> {
        let first = *w.letters().first()?;
        w.letters().iter().all(|&c| c == first).then_some(first)
    };
    let half = 1usize << (f.j - 1);
    let shape = match (unary(&f.ancestor()), unary(&g.ancestor())) {
        (Some(x), Some(y)) => x != y && f.p.len().abs_diff(g.p.len()) == half && f.s.len().abs_diff(g.s.len()) == half,
        _ => false,
    };
    if !shape || !equiv_j(&f.pair(), &g.pair())? {
        return Err(Error::IdentityViolated(format!(
            "two phi^{}-factorizations of {u} have the wrong shape: {f}; {g}",
            f.j
        )));
    }
    Ok(())
}

/// A prefix–suffix pair `(p, s)` with `|p|, |s| < 2^j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrefixSuffixPair {
    pub p: FiniteWord,
    pub s: FiniteWord,
    pub j: u32,
}

impl PrefixSuffixPair {
    pub fn new(p: FiniteWord, s: FiniteWord, j: u32) -> Result<Self> {
        same_alphabet(&p, &s)?;
        require_binary(&p)?;
        let size = 1usize << j;
        if j == 0 || p.len() >= size || s.len() >= size {
            return Err(Error::Precondition(format!(
                "prefix and suffix must be shorter than 2^{j}"
            )));
        }
        Ok(PrefixSuffixPair { p, s, j })
    }
}

/// The relation `≡_j` on prefix–suffix pairs.
pub fn equiv_j(x: &PrefixSuffixPair, y: &PrefixSuffixPair) -> Result<bool> {
    if x.j != y.j {
        return Err(Error::Precondition(format!(
            "pairs of different orders {} and {}",
            x.j, y.j
        )));
    }
    let (p1, s1, p2, s2) = (x.p.letters(), x.s.letters(), y.p.letters(), y.s.letters());
    let cat = |a: &[u8], b: &[u8]| [a, b].concat();
    let sum1 = p1.len() + s1.len();
    let sum2 = p2.len() + s2.len();
    let size = 1usize << x.j;
    for a in 0..2u8 {
        let ha = block(x.j - 1, a);
        let hb = block(x.j - 1, 1 - a);
        let holds = if sum1 == sum2 {
            (p1 == p2 && s1 == s2)
                || (p1 == cat(p2, &ha) && cat(&ha, s1) == s2)
                || (p2 == cat(p1, &ha) && cat(&ha, s2) == s1)
                || (p1 == ha && s2 == ha && s1 == hb && p2 == hb)
        } else if sum1.abs_diff(sum2) == size {
            (p1 == cat(p2, &ha) && s1 == cat(&hb, s2)) || (p2 == cat(p1, &ha) && s2 == cat(&hb, s1))
        } else {
            false
        };
        if holds {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `S(n)` when `left` and `right` are both absent, `S_{left,right}(n)` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FactorizationClass {
    pub left: Option<u8>,
    pub right: Option<u8>,
    pub n: usize,
}

impl FactorizationClass {
    /// Length shared by all words associated with this class.
    pub fn word_length(&self) -> usize {
        2 * self.n + self.left.is_some() as usize + self.right.is_some() as usize
    }
}

impl fmt::Display for FactorizationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |c: Option<u8>| c.map_or("ε".to_string(), |c| c.to_string());
        match (self.left, self.right) {
            (None, None) => write!(f, "S({})", self.n),
            (l, r) => write!(f, "S_{{{},{}}}({})", show(l), show(r), self.n),
        }
    }
}

/// Factorization classes associated with `u` through its `phi`-factorizations.
pub fn classify_factor(u: &FiniteWord) -> Result<Vec<FactorizationClass>> {
    let found = phi_factorizations(u, 1)?;
    if found.is_empty() {
        return Err(Error::NoFactorization { j: 1 });
    }
    let mut classes: Vec<FactorizationClass> = found
        .iter()
        .map(|f| FactorizationClass {
            left: f.a,
            right: f.b,
            n: f.core.len(),
        })
        .collect();
    classes.sort();
    classes.dedup();
    Ok(classes)
}

/// Whether no two adjacent letters of `u` are equal: the words with two `phi`-factorizations.
pub fn is_alternating(u: &FiniteWord) -> bool {
    u.letters().windows(2).all(|w| w[0] != w[1])
}

/// One way of reading `x = u · phi^k(y) · r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmDecoding {
    pub k: u32,
    pub u: FiniteWord,
    pub y_prefix: FiniteWord,
    pub remainder: FiniteWord,
}

impl fmt::Display for TmDecoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |w: &FiniteWord| if w.is_empty() { "ε".to_string() } else { w.to_string() };
        write!(
            f,
            "u={} y={} remainder={}",
            show(&self.u),
            show(&self.y_prefix),
            show(&self.remainder)
        )
    }
}

/// Every decoding of `x` as `u · phi^k(y) · r` with `u` a proper suffix and
/// `r` a proper prefix of a `phi^k`-block, shortest `u` first.
pub fn tm_decode_all(x: &FiniteWord, k: u32) -> Result<Vec<TmDecoding>> {
    require_binary(x)?;
    if k == 0 {
        return Err(Error::Precondition("decoding needs k >= 1".into()));
    }
    let size = 1usize << k;
    if x.len() < 2 * size {
        return Err(Error::Precondition(format!(
            "prefix of length {} is shorter than 2^{}",
            x.len(),
            k + 1
        )));
    }
    let out: Vec<TmDecoding> = (0..size)
        .filter_map(|t| factor_at(x.letters(), k, t, x.alphabet()))
        .map(|f| TmDecoding {
            k,
            u: f.p,
            y_prefix: f.core,
            remainder: f.s,
        })
        .collect();
    if out.is_empty() {
        return Err(Error::NotDecodable { k });
    }
    Ok(out)
}

/// The decoding of `x` with the shortest `u`, as `(u, y_prefix)`.
pub fn tm_decode(x: &FiniteWord, k: u32) -> Result<(FiniteWord, FiniteWord)> {
    let best = tm_decode_all(x, k)?.swap_remove(0);
    Ok((best.u, best.y_prefix))
}

/// `phi^(k-1)(u) phi^k(v) ~_k phi^k(v2) phi^(k-1)(u)`.
pub fn transfer_check(u: &FiniteWord, v: &FiniteWord, v2: &FiniteWord, k: u32) -> Result<bool> {
    same_alphabet(u, v)?;
    same_alphabet(u, v2)?;
    require_binary(u)?;
    if u.is_empty() || v.is_empty() || v2.is_empty() {
        return Err(Error::Precondition("u, v and v2 must be nonempty".into()));
    }
    if v.len() != v2.len() {
        return Err(Error::LengthMismatch {
            expected: v.len(),
            actual: v2.len(),
        });
    }
    if k == 0 {
        return Err(Error::Precondition("transfer needs k >= 1".into()));
    }
    let lower = tm_power(k - 1)?;
    let upper = tm_power(k)?;
    let left = lower.apply(u)?.concat(&upper.apply(v)?)?;
    let right = upper.apply(v2)?.concat(&lower.apply(u)?)?;
    equivalent(&left, &right, k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FiniteWord {
        FiniteWord::binary(s).unwrap()
    }

    fn pair(p: &str, s: &str, j: u32) -> PrefixSuffixPair {
        PrefixSuffixPair::new(w(p), w(s), j).unwrap()
    }

    #[test]
    fn factorization_examples() {
        let f = phi_factorizations(&w("0110"), 1).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].core.to_string(), "01");
        assert!(f[0].p.is_empty() && f[0].s.is_empty());

        let f = phi_factorizations(&w("0101"), 1).unwrap();
        assert_eq!(f.len(), 2);
        let ancestors: Vec<String> = f.iter().map(|x| x.ancestor().to_string()).collect();
        assert_eq!(ancestors, vec!["00", "111"]);
        assert_eq!(f[1].p.to_string(), "0");
        assert_eq!(f[1].s.to_string(), "1");

        let image = tm_power(3).unwrap().apply(&w("0")).unwrap();
        // the unary ancestor 0 forces a second reading (0110, phi^3(ε), 1001) with ancestor 11
        let f = phi_factorizations(&image, 3).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].core.to_string(), "0");
        assert!(f[0].p.is_empty() && f[0].s.is_empty());
        assert_eq!(f[1].ancestor().to_string(), "11");
        assert!(f.iter().all(|x| x.word() == image));
        let mixed = tm_power(3).unwrap().apply(&w("01")).unwrap();
        assert_eq!(phi_factorizations(&mixed, 3).unwrap().len(), 1);
    }

    #[test]
    fn factorization_errors() {
        assert!(phi_factorizations(&w("01"), 2).is_err());
        assert!(phi_factorizations(&w("0001"), 1).unwrap().is_empty());
    }

    #[test]
    fn equivalence_cases() {
        assert!(equiv_j(&pair("01", "1", 2), &pair("01", "1", 2)).unwrap());
        assert!(equiv_j(&pair("01", "10", 2), &pair("10", "01", 2)).unwrap());
        assert!(!equiv_j(&pair("0", "1", 2), &pair("1", "0", 2)).unwrap());
        assert!(equiv_j(&pair("", "", 2), &pair("01", "10", 2)).unwrap());
        assert!(equiv_j(&pair("", "", 1), &pair("0", "1", 1)).unwrap());
        assert!(!equiv_j(&pair("", "", 2), &pair("0", "", 2)).unwrap());
        assert!(equiv_j(&pair("", "", 1), &pair("", "", 2)).is_err());
        assert!(PrefixSuffixPair::new(w("0110"), w(""), 2).is_err());
    }

    #[test]
    fn class_examples() {
        assert_eq!(classify_factor(&w("1011")).unwrap().len(), 1);
        for l in 1..5 {
            let classes = classify_factor(&w(&format!("{}1", "10".repeat(l)))).unwrap();
            let names: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
            assert_eq!(names, vec![format!("S_{{ε,1}}({l})"), format!("S_{{0,ε}}({l})")]);
            let classes = classify_factor(&w(&"01".repeat(l + 1))).unwrap();
            let names: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
            assert_eq!(names, vec![format!("S({})", l + 1), format!("S_{{1,1}}({l})")]);
        }
        assert!(classify_factor(&w("000")).is_err());
    }

    #[test]
    fn decode_round_trip() {
        let y = w("0100101001001");
        let x = tm_power(2).unwrap().apply(&y).unwrap();
        let (u, decoded) = tm_decode(&x, 2).unwrap();
        assert!(u.is_empty());
        assert_eq!(decoded, y);

        let pd = w("0100010101000100");
        let mut x = w("0");
        x = x.concat(&tm_power(1).unwrap().apply(&pd).unwrap()).unwrap();
        let all = tm_decode_all(&x, 1).unwrap();
        assert_eq!(all[0].u.to_string(), "0");
        assert_eq!(all[0].y_prefix, pd);
    }

    #[test]
    fn decode_rejects_words_with_cubes_of_letters() {
        let champ = crate::generators::WordGenerator::champernowne().prefix(200).unwrap();
        assert!(matches!(tm_decode(&champ, 2), Err(Error::NotDecodable { k: 2 })));
        assert!(tm_decode(&w("0110"), 2).is_err());
    }

    #[test]
    fn transfer_examples() {
        assert!(transfer_check(&w("0"), &w("1"), &w("0"), 2).unwrap());
        assert!(transfer_check(&w("01"), &w("10"), &w("11"), 3).unwrap());
        assert!(transfer_check(&w("1"), &w("0"), &w("0"), 1).unwrap());
        assert!(transfer_check(&w(""), &w("0"), &w("0"), 1).is_err());
    }
}
