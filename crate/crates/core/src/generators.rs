//! Deterministic prefix suppliers for infinite words.
//!
//! A [`WordGenerator`] is an immutable description of an infinite word plus a
//! prefix cache. `prefix(n)` is deterministic and prefix-monotone. Composite
//! generators (`image(f^k, inner)`, `suffix(offset, inner)`) pull prefixes
//! from the words they wrap.

use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::word::{Alphabet, FiniteWord};

/// Hard bound on any prefix a generator is asked to materialize.
pub const MAX_PREFIX: usize = 1 << 30;

/// Continued-fraction directive of a characteristic Sturmian word: the
/// preperiod followed by the period repeated forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SturmianSpec {
    preperiod: Vec<u32>,
    period: Vec<u32>,
}

impl SturmianSpec {
    pub fn new(preperiod: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Invalid("Sturmian directive needs a nonempty period".into()));
        }
        if preperiod.iter().chain(&period).any(|&a| a == 0) {
            return Err(Error::Invalid("Sturmian directive entries must be >= 1".into()));
        }
        Ok(SturmianSpec { preperiod, period })
    }

    pub fn periodic(period: Vec<u32>) -> Result<Self> {
        Self::new(Vec::new(), period)
    }

    pub fn fibonacci() -> Self {
        SturmianSpec {
            preperiod: Vec::new(),
            period: vec![1],
        }
    }

    /// The `i`-th partial quotient, 1-based.
    pub fn entry(&self, i: usize) -> u32 {
        let i = i - 1;
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }
}

#[derive(Clone)]
pub enum GeneratorKind {
    FixedPoint { morphism: Morphism, letter: u8 },
    Sturmian(SturmianSpec),
    Champernowne,
    /// Fixed point of `a -> a0α, 0 -> 01, 1 -> 10, α -> αα`.
    GWord,
    /// `g` with `a` erased and `α` sent to `1`.
    TauGWord,
    /// Fixed point of `0 -> 01, 1 -> 12, 2 -> 2`.
    HWord,
    /// Limit of `u_k`, `D_{k+1} = u_k D_k^2`, `D_0 = {0, 1}`.
    Grillenberger,
    ImageOf { morphism: Morphism, inner: WordGenerator },
    SuffixOf { offset: usize, inner: WordGenerator },
}

struct Inner {
    kind: GeneratorKind,
    alphabet: Arc<Alphabet>,
    id: String,
    cache: RwLock<Vec<u8>>,
}

/// An infinite word given by its prefixes.
#[derive(Clone)]
pub struct WordGenerator {
    inner: Arc<Inner>,
}

impl fmt::Debug for WordGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WordGenerator({})", self.inner.id)
    }
}

impl WordGenerator {
    fn from_kind(kind: GeneratorKind, alphabet: Arc<Alphabet>, id: String) -> Self {
        WordGenerator {
            inner: Arc::new(Inner {
                kind,
                alphabet,
                id,
                cache: RwLock::new(Vec::new()),
            }),
        }
    }

    /// `lim f^n(a)` for `f` prolongable on `a`.
    pub fn fixed_point(morphism: &Morphism, letter: char) -> Result<Self> {
        let a = morphism
            .source()
            .index_of(letter)
            .ok_or_else(|| Error::UnknownSymbol {
                symbol: letter,
                alphabet: morphism.source().to_string(),
            })?;
        if !morphism.is_prolongable_on(a) {
            return Err(Error::NotProlongable(letter));
        }
        let id = format!("fixpoint({:?}, {letter})", morphism);
        let gen = Self::from_kind(
            GeneratorKind::FixedPoint {
                morphism: morphism.clone(),
                letter: a,
            },
            Arc::clone(morphism.source()),
            id,
        );
        // a fixed point that stops growing is finite
        gen.prefix(64)?;
        Ok(gen)
    }

    pub fn thue_morse() -> Self {
        Self::fixed_point(&Morphism::thue_morse(), '0')
            .expect("valid fixed point")
            .renamed("tm")
    }

    pub fn period_doubling() -> Self {
        Self::fixed_point(&Morphism::period_doubling(), '0')
            .expect("valid fixed point")
            .renamed("pd")
    }

    pub fn fibonacci() -> Self {
        Self::sturmian(SturmianSpec::fibonacci()).renamed("fib")
    }

    pub fn sturmian(spec: SturmianSpec) -> Self {
        let mut id = String::from("sturmian:");
        let render = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        if !spec.preperiod.is_empty() {
            id.push_str(&render(&spec.preperiod));
            id.push(';');
        }
        id.push_str(&render(&spec.period));
        Self::from_kind(GeneratorKind::Sturmian(spec), Alphabet::binary(), id)
    }

    pub fn champernowne() -> Self {
        Self::from_kind(GeneratorKind::Champernowne, Alphabet::binary(), "champ".into())
    }

    pub fn g_morphism() -> Morphism {
        let alphabet = Alphabet::parse("a01α").expect("valid alphabet");
        Morphism::from_images(&alphabet, &["a0α", "01", "10", "αα"]).expect("valid morphism")
    }

    /// Erases `a`, keeps `0` and `1`, sends `α` to `1`.
    pub fn tau_coding() -> Morphism {
        let source = Alphabet::parse("a01α").expect("valid alphabet");
        let target = Alphabet::binary();
        let images = ["", "0", "1", "1"]
            .iter()
            .map(|s| FiniteWord::parse(&target, s))
            .collect::<Result<Vec<_>>>()
            .expect("valid images");
        Morphism::new(&source, &target, images).expect("valid morphism")
    }

    pub fn g_word() -> Self {
        let morphism = Self::g_morphism();
        Self::from_kind(GeneratorKind::GWord, Arc::clone(morphism.source()), "g".into())
    }

    pub fn tau_g_word() -> Self {
        Self::from_kind(GeneratorKind::TauGWord, Alphabet::binary(), "tau-g".into())
    }

    pub fn h_word() -> Self {
        Self::from_kind(
            GeneratorKind::HWord,
            Alphabet::digits(3).expect("valid alphabet"),
            "h".into(),
        )
    }

    pub fn grillenberger() -> Self {
        Self::from_kind(GeneratorKind::Grillenberger, Alphabet::binary(), "grill".into())
    }

    /// `f(inner)` where `inner` is over the source alphabet of `f`.
    pub fn image_of(morphism: &Morphism, inner: &WordGenerator) -> Result<Self> {
        if **morphism.source() != **inner.alphabet() {
            return Err(Error::AlphabetMismatch {
                left: morphism.source().to_string(),
                right: inner.alphabet().to_string(),
            });
        }
        if morphism.images().iter().all(FiniteWord::is_empty) {
            return Err(Error::Invalid("image of an infinite word under an erasing morphism".into()));
        }
        let id = format!("image({:?}, {})", morphism, inner.id());
        Ok(Self::from_kind(
            GeneratorKind::ImageOf {
                morphism: morphism.clone(),
                inner: inner.clone(),
            },
            Arc::clone(morphism.target()),
            id,
        ))
    }

    /// `phi^k(inner)` for the Thue–Morse morphism `phi`.
    pub fn thue_morse_image(k: u32, inner: &WordGenerator) -> Result<Self> {
        let phik = Morphism::thue_morse().power(k)?;
        Ok(Self::image_of(&phik, inner)?.renamed(&format!("image(tm^{k}, {})", inner.id())))
    }

    pub fn suffix_of(offset: usize, inner: &WordGenerator) -> Self {
        let id = format!("suffix({offset}, {})", inner.id());
        Self::from_kind(
            GeneratorKind::SuffixOf {
                offset,
                inner: inner.clone(),
            },
            Arc::clone(inner.alphabet()),
            id,
        )
    }

    /// Same word, different provenance tag.
    pub fn renamed(&self, id: &str) -> Self {
        Self::from_kind(
            self.inner.kind.clone(),
            Arc::clone(&self.inner.alphabet),
            id.to_string(),
        )
    }

    pub fn id(&self) -> &str {
        &self.inner.id
    }

    pub fn kind(&self) -> &GeneratorKind {
        &self.inner.kind
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.inner.alphabet
    }

    pub fn prefix(&self, n: usize) -> Result<FiniteWord> {
        let letters = self.prefix_letters(n)?;
        Ok(FiniteWord::from_indices_unchecked(&self.inner.alphabet, letters))
    }

    /// The first `n` letter indices.
    pub fn prefix_letters(&self, n: usize) -> Result<Vec<u8>> {
        {
            let cache = self.inner.cache.read().expect("prefix cache poisoned");
            if cache.len() >= n {
                return Ok(cache[..n].to_vec());
            }
        }
        if n > MAX_PREFIX {
            return Err(Error::Invalid(format!("prefix length {n} exceeds {MAX_PREFIX}")));
        }
        let generated = self.generate(n)?;
        let out = generated[..n].to_vec();
        let mut cache = self.inner.cache.write().expect("prefix cache poisoned");
        if generated.len() > cache.len() {
            *cache = generated;
        }
        Ok(out)
    }

    /// A prefix length that provably contains every length-`n` factor, when
    /// one is known: growing fixed points of non-erasing morphisms and their
    /// non-erasing images. `None` leaves factor extraction to the doubling test.
    pub fn certified_prefix(&self, n: usize) -> Result<Option<usize>> {
        match &self.inner.kind {
            GeneratorKind::FixedPoint { morphism, .. } => fixed_point_bound(self, morphism, n),
            GeneratorKind::GWord => fixed_point_bound(self, &Self::g_morphism(), n),
            GeneratorKind::ImageOf { morphism, inner } => {
                let shortest = morphism.images().iter().map(FiniteWord::len).min().unwrap_or(0);
                if shortest == 0 {
                    return Ok(None);
                }
                // a window of length n meets at most this many consecutive blocks
                let blocks = n.saturating_sub(1) / shortest + 2;
                let Some(inner_len) = inner.certified_prefix(blocks)? else {
                    return Ok(None);
                };
                if inner_len > MAX_PREFIX {
                    return Ok(Some(usize::MAX));
                }
                let pre = inner.prefix_letters(inner_len)?;
                Ok(Some(pre.iter().map(|&c| morphism.image(c).len()).sum()))
            }
            _ => Ok(None),
        }
    }

    /// At least `n` letters (possibly more).
    fn generate(&self, n: usize) -> Result<Vec<u8>> {
        match &self.inner.kind {
            GeneratorKind::FixedPoint { morphism, letter } => fixed_point_prefix(morphism, *letter, n),
            GeneratorKind::GWord => fixed_point_prefix(&Self::g_morphism(), 0, n),
            GeneratorKind::HWord => fixed_point_prefix(&Morphism::h_morphism(), 0, n),
            GeneratorKind::TauGWord => image_prefix(&Self::tau_coding(), &Self::g_word(), n),
            GeneratorKind::Sturmian(spec) => Ok(sturmian_prefix(spec, n)),
            GeneratorKind::Champernowne => Ok(champernowne_prefix(n)),
            GeneratorKind::Grillenberger => Ok(grillenberger_prefix(n)),
            GeneratorKind::ImageOf { morphism, inner } => image_prefix(morphism, inner, n),
            GeneratorKind::SuffixOf { offset, inner } => {
                let mut letters = inner.prefix_letters(n + offset)?;
                letters.drain(..*offset);
                Ok(letters)
            }
        }
    }
}

fn fixed_point_prefix(morphism: &Morphism, letter: u8, n: usize) -> Result<Vec<u8>> {
    let mut out: Vec<u8> = morphism.image(letter).letters().to_vec();
    let mut next = 1;
    while out.len() < n {
        if next >= out.len() {
            return Err(Error::FiniteWord {
                produced: out.len(),
                requested: n,
            });
        }
        let c = out[next];
        out.extend_from_slice(morphism.image(c).letters());
        next += 1;
    }
    Ok(out)
}

/// For `x = f(x)` with every letter of `x` growing: take `m` with all
/// `|f^m(b)| >= n - 1`. A length-`n` window of `x = f^m(x)` then lies in some
/// `f^m(cd)` with `cd` a factor of `x`, so the first occurrence of every
/// two-letter factor, pushed through `f^m`, bounds the prefix needed.
fn fixed_point_bound(gen: &WordGenerator, f: &Morphism, n: usize) -> Result<Option<usize>> {
    if f.images().iter().any(FiniteWord::is_empty) {
        return Ok(None);
    }
    let sigma = f.source().size();
    let start = gen.prefix_letters(1)?[0];
    let mut letters = vec![false; sigma];
    letters[start as usize] = true;
    let mut stack = vec![start];
    while let Some(b) = stack.pop() {
        for &c in f.image(b).letters() {
            if !letters[c as usize] {
                letters[c as usize] = true;
                stack.push(c);
            }
        }
    }
    // two-letter factors: inside some f(b), or across the boundary of f(c) f(d) for a factor cd
    let mut pairs = vec![false; sigma * sigma];
    let mut changed = true;
    while changed {
        changed = false;
        let mut found = Vec::new();
        for b in (0..sigma).filter(|&b| letters[b]) {
            found.extend(f.image(b as u8).letters().windows(2).map(|w| (w[0], w[1])));
        }
        for cd in (0..sigma * sigma).filter(|&i| pairs[i]) {
            let (c, d) = ((cd / sigma) as u8, (cd % sigma) as u8);
            let last = *f.image(c).letters().last().expect("non-erasing");
            found.push((last, f.image(d).letters()[0]));
        }
        for (c, d) in found {
            let i = c as usize * sigma + d as usize;
            if !pairs[i] {
                pairs[i] = true;
                changed = true;
            }
        }
    }
    // |f^m(b)| for the letters of x, saturating
    let target = n.saturating_sub(1).max(1) as u64;
    let mut lengths = vec![1u64; sigma];
    for _ in 0..=64 {
        if (0..sigma).filter(|&b| letters[b]).all(|b| lengths[b] >= target) {
            break;
        }
        let next: Vec<u64> = (0..sigma)
            .map(|b| f.image(b as u8).letters().iter().fold(0u64, |acc, &c| acc.saturating_add(lengths[c as usize])))
            .collect();
        if next == lengths {
            return Ok(None);
        }
        lengths = next;
    }
    if (0..sigma).filter(|&b| letters[b]).any(|b| lengths[b] < target) {
        return Ok(None);
    }
    // first occurrence of each pair
    let wanted = pairs.iter().filter(|&&p| p).count();
    let mut len = 1024;
    let prefix = loop {
        let pre = gen.prefix_letters(len)?;
        let mut seen = vec![false; sigma * sigma];
        let present = pre.windows(2).fold(0, |acc, w| {
            let i = w[0] as usize * sigma + w[1] as usize;
            if seen[i] {
                acc
            } else {
                seen[i] = true;
                acc + 1
            }
        });
        if present == wanted {
            break pre;
        }
        if len >= 1 << 24 {
            return Ok(None);
        }
        len *= 2;
    };
    let mut seen = vec![false; sigma * sigma];
    let mut total = 0u64;
    let mut bound = 0u64;
    for (t, w) in prefix.windows(2).enumerate() {
        let i = w[0] as usize * sigma + w[1] as usize;
        if t == 0 {
            total = lengths[w[0] as usize];
        }
        let end = total.saturating_add(lengths[w[1] as usize]);
        if !seen[i] {
            seen[i] = true;
            bound = bound.max(end);
        }
        total = end;
    }
    Ok(Some(usize::try_from(bound).unwrap_or(usize::MAX)))
}

fn image_prefix(morphism: &Morphism, inner: &WordGenerator, n: usize) -> Result<Vec<u8>> {
    let longest = morphism.images().iter().map(FiniteWord::len).max().unwrap_or(0);
    let mut m = (n / longest.max(1)).max(16);
    loop {
        let pre = inner.prefix_letters(m)?;
        let out = morphism.apply_letters(&pre);
        if out.len() >= n {
            return Ok(out);
        }
        if m >= MAX_PREFIX / 2 {
            return Err(Error::FiniteWord {
                produced: out.len(),
                requested: n,
            });
        }
        m *= 2;
    }
}

fn sturmian_prefix(spec: &SturmianSpec, n: usize) -> Vec<u8> {
    // standard words: s_{-1} = 1, s_0 = 0, s_i = s_{i-1}^{a_i} s_{i-2}
    let mut older: Vec<u8> = vec![1];
    let mut current: Vec<u8> = vec![0];
    let mut i = 1;
    while current.len() < n {
        let mut next = Vec::with_capacity(current.len() * spec.entry(i) as usize + older.len());
        for _ in 0..spec.entry(i) {
            next.extend_from_slice(&current);
        }
        next.extend_from_slice(&older);
        older = std::mem::replace(&mut current, next);
        i += 1;
    }
    current
}

fn champernowne_prefix(n: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(n + 64);
    let mut i: u64 = 0;
    while out.len() < n {
        if i == 0 {
            out.push(0);
        } else {
            let bits = 64 - i.leading_zeros();
            for b in (0..bits).rev() {
                out.push(((i >> b) & 1) as u8);
            }
        }
        i += 1;
    }
    out
}

fn grillenberger_prefix(n: usize) -> Vec<u8> {
    let mut level: Vec<Vec<u8>> = vec![vec![0], vec![1]];
    loop {
        // u_k: words of D_k in lexicographic order
        let u: Vec<u8> = level.concat();
        if u.len() >= n {
            return u;
        }
        let word_len = level[0].len();
        let next_total = level.len() * level.len() * (u.len() + 2 * word_len);
        // D_{k+1} = u_k D_k^2; words share length, so pairs in order give lex order
        if next_total >= n {
            let mut out = Vec::with_capacity(n + u.len() + 2 * word_len);
            'outer: for x in &level {
                for y in &level {
                    out.extend_from_slice(&u);
                    out.extend_from_slice(x);
                    out.extend_from_slice(y);
                    if out.len() >= n {
                        break 'outer;
                    }
                }
            }
            return out;
        }
        let mut next = Vec::with_capacity(level.len() * level.len());
        for x in &level {
            for y in &level {
                let mut w = u.clone();
                w.extend_from_slice(x);
                w.extend_from_slice(y);
                next.push(w);
            }
        }
        level = next;
    }
}

/// The level sets `D_0, ..., D_depth` of the uniformly recurrent construction.
pub fn grillenberger_levels(depth: usize) -> Vec<Vec<FiniteWord>> {
    let alphabet = Alphabet::binary();
    let mut levels: Vec<Vec<Vec<u8>>> = vec![vec![vec![0], vec![1]]];
    for _ in 0..depth {
        let last = levels.last().expect("nonempty");
        let u: Vec<u8> = last.concat();
        let mut next = Vec::new();
        for x in last {
            for y in last {
                let mut w = u.clone();
                w.extend_from_slice(x);
                w.extend_from_slice(y);
                next.push(w);
            }
        }
        levels.push(next);
    }
    levels
        .into_iter()
        .map(|lvl| {
            lvl.into_iter()
                .map(|l| FiniteWord::from_indices_unchecked(&alphabet, l))
                .collect()
        })
        .collect()
}

/// Parses the generator mini-language: `tm`, `fib`, `sturmian:1,2` (periodic
/// directive) or `sturmian:3;1,2` (preperiod `3`, period `1,2`), `pd`, `h`,
/// `g`, `tau-g`, `grill`, `champ`, `image(<morphism-file>^k, <gen>)`,
/// `image(tm^k, <gen>)` and `suffix(<offset>, <gen>)`.
///
/// `load_morphism` resolves a morphism-file reference to its text.
pub fn parse_generator_with<F>(spec: &str, load_morphism: &F) -> Result<WordGenerator>
where
    F: Fn(&str) -> Result<String>,
{
    let spec = spec.trim();
    let bad = |msg: &str| Error::Invalid(format!("bad generator spec {spec:?}: {msg}"));
    match spec {
        "tm" => return Ok(WordGenerator::thue_morse()),
        "fib" => return Ok(WordGenerator::fibonacci()),
        "pd" => return Ok(WordGenerator::period_doubling()),
        "h" => return Ok(WordGenerator::h_word()),
        "g" => return Ok(WordGenerator::g_word()),
        "tau-g" => return Ok(WordGenerator::tau_g_word()),
        "grill" => return Ok(WordGenerator::grillenberger()),
        "champ" => return Ok(WordGenerator::champernowne()),
        _ => {}
    }
    if let Some(rest) = spec.strip_prefix("sturmian:") {
        let parse_list = |s: &str| -> Result<Vec<u32>> {
            s.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty() && *t != "..." && *t != "…")
                .map(|t| t.parse::<u32>().map_err(|_| bad(&format!("not an integer: {t:?}"))))
                .collect()
        };
        let (pre, per) = match rest.split_once(';') {
            Some((a, b)) => (parse_list(a)?, parse_list(b)?),
            None => (Vec::new(), parse_list(rest)?),
        };
        return Ok(WordGenerator::sturmian(SturmianSpec::new(pre, per)?));
    }
    if let Some(args) = strip_call(spec, "image") {
        let (first, second) = split_top_level(args).ok_or_else(|| bad("expected two arguments"))?;
        let inner = parse_generator_with(second, load_morphism)?;
        let (name, power) = match first.rsplit_once('^') {
            Some((name, p)) => (
                name.trim(),
                p.trim().parse::<u32>().map_err(|_| bad("bad morphism power"))?,
            ),
            None => (first.trim(), 1),
        };
        let morphism = match name {
            "tm" | "phi" => Morphism::thue_morse(),
            "fib" => Morphism::fibonacci(),
            "pd" => Morphism::period_doubling(),
            file => Morphism::parse(&load_morphism(file)?)?,
        };
        let powered = morphism.power(power)?;
        let gen = WordGenerator::image_of(&powered, &inner)?;
        return Ok(gen.renamed(spec));
    }
    if let Some(args) = strip_call(spec, "suffix") {
        let (first, second) = split_top_level(args).ok_or_else(|| bad("expected two arguments"))?;
        let offset = first.trim().parse::<usize>().map_err(|_| bad("bad offset"))?;
        let inner = parse_generator_with(second, load_morphism)?;
        return Ok(WordGenerator::suffix_of(offset, &inner).renamed(spec));
    }
    Err(bad("unknown generator"))
}

/// [`parse_generator_with`] reading morphism files from disk.
pub fn parse_generator(spec: &str) -> Result<WordGenerator> {
    parse_generator_with(spec, &|path: &str| {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read morphism file {path:?}: {e}")))
    })
}

fn strip_call<'a>(spec: &'a str, name: &str) -> Option<&'a str> {
    spec.strip_prefix(name)?
        .trim_start()
        .strip_prefix('(')?
        .strip_suffix(')')
}

fn split_top_level(args: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in args.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&args[..i], &args[i + 1..])),
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prefix(g: &WordGenerator, n: usize) -> String {
        g.prefix(n).unwrap().to_string()
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(prefix(&WordGenerator::thue_morse(), 8), "01101001");
        assert_eq!(prefix(&WordGenerator::period_doubling(), 14), "01000101010001");
        assert_eq!(prefix(&WordGenerator::h_word(), 22), "0112122122212222122222");
        let complement = WordGenerator::fixed_point(&Morphism::thue_morse(), '1').unwrap();
        assert_eq!(prefix(&complement, 8), "10010110");
        let fib = Morphism::fibonacci();
        assert!(matches!(
            WordGenerator::fixed_point(&fib, '1'),
            Err(Error::NotProlongable('1'))
        ));
        let finite = Morphism::from_images(&Alphabet::binary(), &["01", ""]).unwrap();
        assert!(matches!(
            WordGenerator::fixed_point(&finite, '0'),
            Err(Error::FiniteWord { .. })
        ));
    }

    #[test]
    fn sturmian_examples() {
        assert_eq!(prefix(&WordGenerator::fibonacci(), 19), "0100101001001010010");
        let s = WordGenerator::sturmian(SturmianSpec::periodic(vec![2, 1]).unwrap());
        assert_eq!(prefix(&s, 3), "001");
        assert!(SturmianSpec::periodic(vec![]).is_err());
        assert!(SturmianSpec::periodic(vec![1, 0]).is_err());
        // Fibonacci as the fixed point of 0 -> 01, 1 -> 0
        let fp = WordGenerator::fixed_point(&Morphism::fibonacci(), '0').unwrap();
        assert_eq!(prefix(&fp, 500), prefix(&WordGenerator::fibonacci(), 500));
    }

    #[test]
    fn champernowne_examples() {
        let c = WordGenerator::champernowne();
        assert_eq!(prefix(&c, 9), "011011100");
        assert_eq!(prefix(&c, 1), "0");
    }

    #[test]
    fn g_words() {
        let g = WordGenerator::g_word();
        assert_eq!(prefix(&g, 4), "a0α0");
        let t = WordGenerator::tau_g_word();
        assert_eq!(prefix(&t, 3), "010");
        // a 0 α (01) αα (0110) αααα ...
        assert_eq!(prefix(&g, 14), "a0α01αα0110αααα"[..].chars().take(14).collect::<String>());
    }

    #[test]
    fn grillenberger_examples() {
        assert_eq!(prefix(&WordGenerator::grillenberger(), 16), "0100010101100111");
        let levels = grillenberger_levels(1);
        let d1: Vec<String> = levels[1].iter().map(|w| w.to_string()).collect();
        assert_eq!(d1, vec!["0100", "0101", "0110", "0111"]);
        // the lazily built tail of u_{k+1} agrees with the materialized level
        let levels = grillenberger_levels(3);
        let u3: String = levels[3].iter().map(|w| w.to_string()).collect();
        assert_eq!(prefix(&WordGenerator::grillenberger(), u3.len()), u3);
        let longer = prefix(&WordGenerator::grillenberger(), u3.len() + 5000);
        assert!(longer.starts_with(&u3));
    }

    #[test]
    fn combinators() {
        let tm = WordGenerator::thue_morse();
        let s = WordGenerator::suffix_of(3, &tm);
        assert_eq!(prefix(&s, 5), "01001");
        let img = WordGenerator::image_of(&Morphism::thue_morse(), &tm).unwrap();
        assert_eq!(prefix(&img, 16), prefix(&tm, 16));
        let bad = WordGenerator::image_of(&Morphism::h_morphism(), &tm);
        assert!(bad.is_err());
    }

    #[test]
    fn prefix_monotonicity_and_cache() {
        for g in [
            WordGenerator::thue_morse(),
            WordGenerator::fibonacci(),
            WordGenerator::grillenberger(),
            WordGenerator::tau_g_word(),
        ] {
            let long = prefix(&g, 3000);
            for n in [0, 1, 7, 100, 2999] {
                assert_eq!(prefix(&g, n), long[..n]);
            }
        }
    }

    #[test]
    fn spec_language() {
        let ids = ["tm", "fib", "pd", "h", "g", "tau-g", "grill", "champ"];
        for id in ids {
            let g = parse_generator(id).unwrap();
            assert_eq!(g.id(), id);
            g.prefix(50).unwrap();
        }
        let s = parse_generator("sturmian:1,1,2,...").unwrap();
        assert_eq!(s.id(), "sturmian:1,1,2");
        let s = parse_generator("sturmian:2;1").unwrap();
        assert_eq!(prefix(&s, 3), "001");
        let img = parse_generator("image(tm^2, fib)").unwrap();
        let phi2 = Morphism::thue_morse().power(2).unwrap();
        let fibp = WordGenerator::fibonacci().prefix(10).unwrap();
        assert_eq!(prefix(&img, 40), phi2.apply(&fibp).unwrap().to_string());
        let suf = parse_generator("suffix(2, image(tm^1, pd))").unwrap();
        assert_eq!(prefix(&suf, 4), "1001");
        let loaded = parse_generator_with("image(sq.txt^1, tm)", &|_| Ok("0 -> 00\n1 -> 11".into()))
            .unwrap();
        assert_eq!(prefix(&loaded, 6), "001111");
        assert!(parse_generator("nonsense").is_err());
        assert!(parse_generator("sturmian:1,x").is_err());
    }

    #[test]
    fn certified_prefix_covers_late_factors() {
        let f = Morphism::from_images(&Alphabet::digits(3).unwrap(), &["000222", "0001112", "2222000000111"]).unwrap();
        let x = WordGenerator::fixed_point(&f, '0').unwrap();
        // a length-26 factor first occurs at 2268
        let bound = x.certified_prefix(26).unwrap().unwrap();
        assert!(bound >= 2268 + 26, "{bound}");
        let tm = WordGenerator::thue_morse();
        assert!(tm.certified_prefix(8).unwrap().unwrap() >= 8);
        assert_eq!(WordGenerator::h_word().certified_prefix(8).unwrap(), None);
        assert_eq!(WordGenerator::fibonacci().certified_prefix(8).unwrap(), None);
        let image = WordGenerator::thue_morse_image(2, &tm).unwrap();
        assert!(image.certified_prefix(8).unwrap().is_some());
    }
}
