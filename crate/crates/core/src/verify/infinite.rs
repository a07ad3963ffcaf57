//! Complexity functions, Rauzy graphs and constructions on infinite words.

use std::collections::BTreeSet;

use rustc_hash::FxHashMap;

use super::words::{collinear_example, rank_two_morphism};
use super::{expect, info, tm_power, Check, Scale, Tally};
use crate::complexity::{
    letter_count_ranges, prec_compare, records, sturmian_image_factor_formula, sturmian_image_formula,
    tm_binomial_formula, tm_factor_formula, weight_spread, ComplexityKind, ComplexityProfile, Profiler,
};
use crate::error::Result;
use crate::factors::FactorScanner;
use crate::generators::{SturmianSpec, WordGenerator};
use crate::rauzy::RauzyAnalyzer;
use crate::word::{counts_fit_u64, equivalent, FiniteWord, PatternLayout, SlidingSignature};

const FACTOR: ComplexityKind = ComplexityKind::Factor;

fn binomial(k: usize) -> ComplexityKind {
    ComplexityKind::Binomial(k)
}

fn fib_12() -> Result<WordGenerator> {
    Ok(WordGenerator::sturmian(SturmianSpec::periodic(vec![1, 2])?))
}

fn tm_image(k: u32, inner: &WordGenerator) -> Result<WordGenerator> {
    WordGenerator::thue_morse_image(k, inner)
}

/// Compares a profile to a closed form over `start..=end`.
fn against(name: impl Into<String>, profile: &ComplexityProfile, formula: impl Fn(usize) -> u64) -> Check {
    let mut t = Tally::new(name);
    for (n, v) in profile.iter() {
        let want = formula(n);
        t.case(v == want, || format!("n={n}: computed {v}, formula {want}"));
    }
    t.finish()
}

pub(super) fn short_factors(scale: Scale) -> Result<Vec<Check>> {
    let mut t = Tally::new("phi^k(fib) and tm share factors up to length 2^k");
    let mut tm = FactorScanner::new(&WordGenerator::thue_morse());
    for k in 1..=scale.pick(4u32, 5) {
        let mut image = FactorScanner::new(&tm_image(k, &WordGenerator::fibonacci())?);
        for n in 1..=1usize << k {
            let a = image.factors(n)?.words;
            let b = tm.factors(n)?.words;
            t.case(a == b, || format!("k={k} n={n}: {} vs {} factors", a.len(), b.len()));
        }
    }
    let mut mono = Tally::new("prefixes are nested");
    let gens = [
        WordGenerator::thue_morse(),
        WordGenerator::fibonacci(),
        WordGenerator::period_doubling(),
        WordGenerator::h_word(),
        WordGenerator::g_word(),
        WordGenerator::tau_g_word(),
        WordGenerator::grillenberger(),
        WordGenerator::champernowne(),
        fib_12()?,
        tm_image(2, &WordGenerator::fibonacci())?,
        WordGenerator::suffix_of(5, &WordGenerator::thue_morse()),
    ];
    for g in &gens {
        let long = g.prefix(5000)?;
        for n in [0, 1, 7, 64, 1000, 4999] {
            // a fresh generator, so no cache is shared with `long`
            let fresh = g.renamed("fresh").prefix(n)?;
            mono.case(fresh == long.prefix(n), || format!("{} at n={n}", g.id()));
        }
    }
    Ok(vec![t.finish(), mono.finish()])
}

pub(super) fn walnut_facts(scale: Scale) -> Result<Vec<Check>> {
    let t = WordGenerator::thue_morse().prefix_letters(1 << 16)?;
    let max_m = scale.pick(64, 64);
    let mut even = Tally::new("length 2m+2 factor at an even index with 1...1");
    let mut odd = Tally::new("length 2m+2 factor at an odd index with 0...0");
    for m in 1..=max_m {
        let found = (0..(t.len() - 2 * m - 2) / 2).any(|j| t[2 * j] == 1 && t[2 * j + 2 * m + 1] == 1);
        even.case(found, || format!("m={m}"));
    }
    for m in 0..=max_m {
        let found = (1..(t.len() - 2 * m) / 2).any(|j| t[2 * j - 1] == 0 && t[2 * j + 2 * m] == 0);
        odd.case(found, || format!("m={m}"));
    }
    Ok(vec![even.finish(), odd.finish()])
}

pub(super) fn tm_complexity(scale: Scale) -> Result<Vec<Check>> {
    let mut p = Profiler::new(&WordGenerator::thue_morse());
    let mut out = vec![against(
        "factor complexity matches the closed form",
        &p.profile(FACTOR, scale.pick(256, 512))?,
        |n| tm_factor_formula(n as u64),
    )];
    for j in 1..=3 {
        out.push(against(
            format!("b^{j} matches the closed form"),
            &p.profile(binomial(j), scale.pick(64, 128))?,
            |n| tm_binomial_formula(j as u32, n as u64),
        ));
    }
    Ok(out)
}

pub(super) fn sturmian_2bin(scale: Scale) -> Result<Vec<Check>> {
    let n_max = scale.pick(100, 200);
    let mut out = Vec::new();
    for g in [WordGenerator::fibonacci(), fib_12()?] {
        let mut p = Profiler::new(&g);
        out.push(against(format!("{}: b^2(n) = n+1", g.id()), &p.profile(binomial(2), n_max)?, |n| n as u64 + 1));
        out.push(against(format!("{}: p(n) = n+1", g.id()), &p.profile(FACTOR, n_max)?, |n| n as u64 + 1));
    }
    Ok(out)
}

pub(super) fn tm_property(scale: Scale) -> Result<Vec<Check>> {
    let n_max = scale.pick(48, 96);
    let mut out = Vec::new();
    for y in [WordGenerator::fibonacci(), WordGenerator::period_doubling()] {
        for k in 1..=3u32 {
            let mut p = Profiler::new(&tm_image(k, &y)?);
            let mut t = Tally::new(format!("phi^{k}({}) has the tm values of b^j, j <= {k}", y.id()));
            for j in 1..=k {
                for (n, v) in p.profile(binomial(j as usize), n_max)?.iter() {
                    let want = tm_binomial_formula(j, n as u64);
                    t.case(v == want, || format!("j={j} n={n}: computed {v}, formula {want}"));
                }
            }
            out.push(t.finish());
        }
    }
    Ok(out)
}

pub(super) fn sturmian_closed_forms(scale: Scale) -> Result<Vec<Check>> {
    let n_max = scale.pick(48, 96);
    let mut out = Vec::new();
    for s in [WordGenerator::fibonacci(), fib_12()?] {
        for k in 1..=2u32 {
            let mut p = Profiler::new(&tm_image(k, &s)?);
            out.push(against(
                format!("b^{} of phi^{k}({})", k + 1, s.id()),
                &p.profile(binomial(k as usize + 1), n_max)?,
                |n| sturmian_image_formula(k, n as u64),
            ));
            out.push(against(
                format!("factor complexity of phi^{k}({})", s.id()),
                &p.profile(FACTOR, n_max)?,
                |n| sturmian_image_factor_formula(k, n as u64),
            ));
        }
    }
    Ok(out)
}

pub(super) fn kplus1_formula(scale: Scale) -> Result<Vec<Check>> {
    let n_max = scale.pick(48, 96);
    let mut out = Vec::new();
    for y in [WordGenerator::fibonacci(), WordGenerator::period_doubling(), WordGenerator::tau_g_word()] {
        let mut analyzer = RauzyAnalyzer::new(&y);
        for k in 1..=2u32 {
            let mut p = Profiler::new(&tm_image(k, &y)?);
            let brute = p.profile(binomial(k as usize + 1), n_max)?;
            let mut t = Tally::new(format!("formula for b^{} of phi^{k}({})", k + 1, y.id()));
            for (n, v) in brute.iter() {
                let want = analyzer.kplus1_formula(k, n)?;
                t.case(v == want, || format!("length {n}: brute force {v}, formula {want}"));
            }
            out.push(t.finish());
        }
    }
    Ok(out)
}

pub(super) fn boundaries(scale: Scale) -> Result<Vec<Check>> {
    let n_max = scale.pick(32, 64);
    let mut out = Vec::new();
    for y in [WordGenerator::fibonacci(), WordGenerator::period_doubling(), WordGenerator::tau_g_word()] {
        let mut analyzer = RauzyAnalyzer::new(&y);
        let mut labels = Tally::new(format!("{}: labels (0,1), (1,0) and a loop", y.id()));
        let mut loops = Tally::new(format!("{}: a missing (a,a) loop forces (a',a') next", y.id()));
        let mut shape = Tally::new(format!("{}: graph invariants", y.id()));
        let mut covering = Tally::new(format!("{}: windows map onto edges", y.id()));
        let mut previous = None;
        for n in 1..=n_max {
            let g = analyzer.graph(n)?;
            labels.case(g.has_label(0, 1) && g.has_label(1, 0) && (g.has_label(0, 0) || g.has_label(1, 1)), || {
                format!("n={n}")
            });
            if let Some((m, has00, has11)) = previous {
                let ok = (has00 || g.has_label(1, 1)) && (has11 || g.has_label(0, 0));
                loops.case(ok, || format!("n={m} -> n={n}"));
            }
            previous = Some((n, g.has_label(0, 0), g.has_label(1, 1)));
            let q = analyzer.edge_quotients(n)?;
            let consistent = g.edges.iter().all(|e| {
                let mut expected = e.source.counts.clone();
                expected[e.label.0 as usize] -= 1;
                expected[e.label.1 as usize] += 1;
                expected == e.target.counts && e.is_loop() == (e.label.0 == e.label.1)
            });
            shape.case(
                consistent && g.edges.len() > g.vertices.len() && q.x_count == g.edges.len(),
                || format!("n={n}: {} vertices, {} edges, #X={}", g.vertices.len(), g.edges.len(), q.x_count),
            );
            // every window of a long prefix lands on an edge, and together they cover all edges
            let letters = y.prefix_letters(g.prefix_used)?;
            let mut hit = BTreeSet::new();
            let mut all_known = true;
            for w in letters.windows(n + 1) {
                let key = (w[0], w[n], w[..n].iter().filter(|&&c| c == 1).count());
                all_known &= g
                    .edges
                    .iter()
                    .any(|e| e.label == (key.0, key.1) && e.source.weight() as usize == key.2);
                hit.insert(key);
            }
            covering.case(all_known && hit.len() == g.edges.len(), || format!("n={n}"));
        }
        out.extend([labels.finish(), loops.finish(), shape.finish(), covering.finish()]);
    }
    for s in [WordGenerator::fibonacci(), fib_12()?] {
        let mut analyzer = RauzyAnalyzer::new(&s);
        let mut t = Tally::new(format!("{}: sturmian graph shape", s.id()));
        for n in 1..=n_max {
            let g = analyzer.graph(n)?;
            let q = analyzer.edge_quotients(n)?;
            let mut weights: Vec<u64> = g.vertices.iter().map(|v| v.weight()).collect();
            weights.sort();
            let (light, heavy) = (weights[0], weights[weights.len() - 1]);
            let loop_at = |w: u64, a: u8| g.edges.iter().any(|e| e.label == (a, a) && e.source.weight() == w);
            let edges_ok = if n == 1 { g.edges.len() == 3 } else { g.edges.len() == 4 };
            let ok = weights.len() == 2
                && heavy == light + 1
                && edges_ok
                && g.loops().count() == g.edges.len() - 2
                && q.y_count == 6
                && !(loop_at(heavy, 1) && loop_at(light, 0));
            t.case(ok, || {
                format!("n={n}: weights {weights:?}, {} edges, #Y={}", g.edges.len(), q.y_count)
            });
        }
        out.push(t.finish());
    }
    let mut tm = RauzyAnalyzer::new(&WordGenerator::thue_morse());
    let mut t = Tally::new("tm graph forms");
    for m in 1..=scale.pick(8, 16) {
        let even = tm.graph(2 * m)?;
        let mut w: Vec<u64> = even.vertices.iter().map(|v| v.weight()).collect();
        w.sort();
        let m64 = m as u64;
        let even_ok = w == [m64 - 1, m64, m64 + 1]
            && even.edges.len() == 6
            && even.loops().all(|e| e.source.weight() == m64)
            && even.loops().count() == 2;
        let odd = tm.graph(2 * m + 1)?;
        let mut w2: Vec<u64> = odd.vertices.iter().map(|v| v.weight()).collect();
        w2.sort();
        let odd_ok = w2 == [m64, m64 + 1] && odd.edges.len() == 6 && odd.loops().count() == 4;
        t.case(even_ok && odd_ok, || format!("m={m}: {w:?} / {w2:?}"));
    }
    out.push(t.finish());
    Ok(out)
}

pub(super) fn prec_chain(scale: Scale) -> Result<Vec<Check>> {
    let gen = tm_image(2, &WordGenerator::fibonacci())?;
    let mut p = Profiler::new(&gen);
    let n_max = scale.pick(96, 96);
    let b = (1..=4)
        .map(|k| p.profile(binomial(k), n_max))
        .collect::<Result<Vec<_>>>()?;
    let factor = p.profile(FACTOR, n_max)?;
    let mut out = Vec::new();
    for k in 0..2 {
        let report = prec_compare(&b[k], &b[k + 1])?;
        out.push(expect(
            format!("b^{} < b^{} witnessed", k + 1, k + 2),
            report.witnessed() && report.dominated(),
            format!("{} strict points up to {n_max}", report.strict.len()),
        ));
    }
    let mut t = Tally::new("b^4 equals the factor complexity up to 64");
    for n in 0..=64 {
        let (a, f) = (b[3].value(n).unwrap_or(0), factor.value(n).unwrap_or(0));
        t.case(a == f, || format!("n={n}: b^4 {a}, p {f}"));
    }
    out.push(t.finish());
    Ok(out)
}

/// Prefix of `h` long enough to contain every factor of length up to `n_max`:
/// it reaches past the block `1 2^(n_max+1)`.
fn h_prefix(n_max: usize) -> Result<Vec<u8>> {
    let r = n_max + 1;
    WordGenerator::h_word().prefix_letters(2 + (r + 1) * (r + 2) / 2 + n_max)
}

pub(super) fn word_h(scale: Scale) -> Result<Vec<Check>> {
    let h = WordGenerator::h_word();
    let mut p = Profiler::new(&h);
    let chain_max = scale.pick(96, 256);
    let b1 = p.profile_range(binomial(1), 6, chain_max)?;
    let b2 = p.profile_range(binomial(2), 6, chain_max)?;
    let f = p.profile_range(FACTOR, 6, chain_max)?;
    let mut chain = Tally::new(format!("b^1 < b^2 < p for 6 <= n <= {chain_max}"));
    for ((n, x), ((_, y), (_, z))) in b1.iter().zip(b2.iter().zip(f.iter())) {
        chain.case(x < y && y < z, || format!("n={n}: {x} {y} {z}"));
    }
    let eq_max = scale.pick(64, 128);
    let b3 = p.profile(binomial(3), eq_max)?;
    let f3 = p.profile(FACTOR, eq_max)?;
    let mut equal = Tally::new(format!("b^3 = p for n <= {eq_max}"));
    for ((n, x), (_, y)) in b3.iter().zip(f3.iter()) {
        equal.case(x == y, || format!("n={n}: {x} vs {y}"));
    }
    let spread_max = scale.pick(1024, 4096);
    let letters = h_prefix(spread_max)?;
    let spread = weight_spread(&letters, 3, spread_max);
    let envelope = sqrt_envelope(&spread, 16);
    Ok(vec![
        chain.finish(),
        equal.finish(),
        expect(
            format!("weight spread is within a factor 2 of c*sqrt(n), 16 <= n <= {spread_max}"),
            envelope.0,
            envelope.1,
        ),
    ])
}

/// Whether some `c` has `c sqrt(n) / 2 <= spread(n) <= 2 c sqrt(n)` for all
/// `n >= from`, i.e. the extreme ratios `spread(n) / sqrt(n)` are at most a
/// factor 4 apart; the detail names both extremes.
pub(crate) fn sqrt_envelope(spread: &[u64], from: usize) -> (bool, String) {
    let ratios: Vec<(usize, f64)> = spread
        .iter()
        .enumerate()
        .map(|(i, &s)| (i + 1, s as f64 / ((i + 1) as f64).sqrt()))
        .filter(|&(n, _)| n >= from)
        .collect();
    let lo = ratios.iter().cloned().fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
    let hi = ratios.iter().cloned().fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
    let ok = !ratios.is_empty() && hi.1 <= 4.0 * lo.1;
    (
        ok,
        format!(
            "spread/sqrt(n) ranges over [{:.3} at n={}, {:.3} at n={}]",
            lo.1, lo.0, hi.1, hi.0
        ),
    )
}

pub(super) fn period_doubling(_scale: Scale) -> Result<Vec<Check>> {
    let pd = WordGenerator::period_doubling();
    let mut p = Profiler::new(&pd);
    let b2 = p.profile(binomial(2), 64)?;
    let f = p.profile(FACTOR, 64)?;
    let mut powers = Tally::new("b^2(2^n) = p(2^n) for n <= 6");
    let mut others = Vec::new();
    for n in 0..=6 {
        let m = 1usize << n;
        let (a, b) = (b2.value(m).unwrap_or(0), f.value(m).unwrap_or(0));
        powers.case(a == b, || format!("length {m}: {a} vs {b}"));
    }
    for n in 1..=64usize {
        if !n.is_power_of_two() && b2.value(n) >= f.value(n) {
            others.push(n);
        }
    }
    let b3 = p.profile(binomial(3), 64)?;
    let report = prec_compare(&b3, &f)?;
    let b4 = p.profile(binomial(4), 48)?;
    let equal4: Vec<usize> = (0..=48).filter(|&n| b4.value(n) == f.value(n)).collect();
    Ok(vec![
        powers.finish(),
        expect(
            "b^2(n) < p(n) for every other n <= 64",
            others.is_empty(),
            if others.is_empty() {
                "63 lengths".to_string()
            } else {
                format!("equality at n = {others:?}")
            },
        ),
        expect(
            "b^3 < p witnessed up to 64",
            report.witnessed() && report.dominated(),
            format!("{} strict points", report.strict.len()),
        ),
        info(
            "b^4 against p up to 48",
            if equal4.len() == 49 {
                "equal at every n <= 48".to_string()
            } else {
                format!("equal at {} of 49 lengths", equal4.len())
            },
        ),
    ])
}

/// Bounded means the running maximum stops moving: no record in the upper
/// half of `1..=512`.
pub(super) fn bounded(_scale: Scale) -> Result<Vec<Check>> {
    let f = collinear_example();
    let x = WordGenerator::fixed_point(&f, '0')?;
    let n_max = 512;
    let mut p = Profiler::new(&x);
    let mut out = Vec::new();
    for k in 1..=3 {
        let profile = p.profile(binomial(k), n_max)?;
        let recs = records(&profile);
        let (last_n, top) = recs.last().copied().unwrap_or((0, 0));
        let upper: BTreeSet<u64> = profile.values[n_max / 2..].iter().copied().collect();
        out.push(expect(
            format!("b^{k} of the collinear fixed point stays bounded"),
            last_n < n_max / 2,
            format!(
                "max {top} reached at n={last_n}; {} distinct values on {}..={n_max}",
                upper.len(),
                n_max / 2
            ),
        ));
    }
    Ok(out)
}

/// Strictly increasing values along `n = 2^i`.
fn doubling_growth(gen: &WordGenerator, top: u32) -> Result<(bool, String)> {
    let mut p = Profiler::new(gen);
    let mut values = Vec::new();
    for i in 0..=top {
        values.push(p.value(binomial(1), 1 << i)?.0);
    }
    let ok = values.windows(2).all(|w| w[0] < w[1]);
    Ok((ok, format!("b^1(2^i) for i <= {top}: {values:?}")))
}

pub(super) fn unbounded(scale: Scale) -> Result<Vec<Check>> {
    let rank2 = WordGenerator::fixed_point(&rank_two_morphism(), '0')?;
    let mut out = Vec::new();
    let (ok, detail) = record_growth(&rank2, scale.pick(512, 1024))?;
    out.push(expect("rank-2 fixed point: abelian complexity keeps setting records", ok, detail));
    let (ok, detail) = doubling_growth(&WordGenerator::h_word(), scale.pick(9, 10))?;
    out.push(expect("h: abelian complexity strictly increases along powers of two", ok, detail));
    Ok(out)
}

/// The record values of `b^1` on `1..=n_max` form a strictly increasing
/// subsequence; it must keep growing in the upper half of the range.
fn record_growth(gen: &WordGenerator, n_max: usize) -> Result<(bool, String)> {
    let profile = Profiler::new(gen).profile(binomial(1), n_max)?;
    let recs = records(&profile);
    let (last, top) = recs.last().copied().unwrap_or((0, 0));
    let ok = recs.len() >= 4 && last > n_max / 2;
    Ok((ok, format!("{} records up to {n_max}, last {top} at n={last}", recs.len())))
}

/// Start positions of two length-`n` windows that are `~_k` but not `~_(k+1)`.
pub(crate) fn split_witness(letters: &[u8], sigma: usize, k: usize, n: usize) -> Result<Option<(usize, usize)>> {
    if n < k + 1 || n > letters.len() || !counts_fit_u64(n, k + 1) {
        return Ok(None);
    }
    let layout = PatternLayout::new(sigma, k + 1)?;
    let (lo, mid) = (layout.offset(k), layout.offset(k + 1));
    let mut window = SlidingSignature::new(layout);
    for &c in &letters[..n] {
        window.push_back(c);
    }
    let mut seen: FxHashMap<Vec<u64>, (usize, Vec<u64>)> = FxHashMap::default();
    for i in 0..=letters.len() - n {
        if i > 0 {
            window.pop_front(letters[i - 1]);
            window.push_back(letters[i + n - 1]);
        }
        let counts = window.counts();
        match seen.get(&counts[lo..mid]) {
            Some((j, top)) if top[..] != counts[mid..] => return Ok(Some((*j, i))),
            Some(_) => {}
            None => {
                seen.insert(counts[lo..mid].to_vec(), (i, counts[mid..].to_vec()));
            }
        }
    }
    Ok(None)
}

fn contains(hay: &[u8], needle: &[u8]) -> bool {
    hay.windows(needle.len()).any(|w| w == needle)
}

pub(super) fn constructions(scale: Scale) -> Result<Vec<Check>> {
    let max_len = scale.pick(48, 96);
    let mut out = Vec::new();
    let binary = [
        (WordGenerator::champernowne(), 1usize << 16),
        (WordGenerator::tau_g_word(), 1 << 16),
        (WordGenerator::grillenberger(), 1 << 17),
    ];
    for (gen, prefix) in &binary {
        let letters = gen.prefix_letters(*prefix)?;
        for k in 1..=3 {
            let mut lengths = Vec::new();
            let mut example = None;
            for n in k + 1..=max_len {
                if let Some((i, j)) = split_witness(&letters, 2, k, n)? {
                    lengths.push(n);
                    example.get_or_insert((n, i, j));
                }
            }
            let detail = match example {
                Some((n, i, j)) => format!(
                    "{} lengths <= {max_len}; e.g. {} vs {}",
                    lengths.len(),
                    show(&letters[i..i + n]),
                    show(&letters[j..j + n])
                ),
                None => format!("no split pair up to length {max_len}"),
            };
            out.push(expect(
                format!("{}: b^{k} < b^{} at >= 10 lengths", gen.id(), k + 1),
                lengths.len() >= 10,
                detail,
            ));
        }
    }

    // g over {a, 0, 1, α}: the pairs phi^k(0) α^n and phi^k(1) α^n
    let g = WordGenerator::g_word();
    let g_letters = g.prefix_letters(1 << 16)?;
    let alphabet = g.alphabet().clone();
    let (zero, one, alpha) = (1u8, 2u8, 3u8);
    for k in 1..=3u32 {
        let block = |c: u8| -> Result<Vec<u8>> {
            let w = tm_power(k)?.apply(&FiniteWord::binary(&c.to_string())?)?;
            Ok(w.letters().iter().map(|&b| if b == 0 { zero } else { one }).collect())
        };
        let mut t = Tally::new(format!("g: phi^{k}(0) α^n ~{k} phi^{k}(1) α^n, not ~{}", k + 1));
        for n in 1..=10 {
            let mut u = block(0)?;
            let mut v = block(1)?;
            u.extend(std::iter::repeat_n(alpha, n));
            v.extend(std::iter::repeat_n(alpha, n));
            let present = contains(&g_letters, &u) && contains(&g_letters, &v);
            let (u, v) = (
                FiniteWord::from_indices(&alphabet, u)?,
                FiniteWord::from_indices(&alphabet, v)?,
            );
            let split = equivalent(&u, &v, k as usize)? && !equivalent(&u, &v, k as usize + 1)?;
            t.case(present && split, || format!("n={n}: present {present}, split {split}"));
        }
        out.push(t.finish());
    }

    // the interleaved description a · prod_j phi^j(0) α^(2^j) of g
    let mut interleaved = vec![0u8];
    let mut j = 0;
    while interleaved.len() < g_letters.len() {
        let w = tm_power(j)?.apply(&FiniteWord::binary("0")?)?;
        interleaved.extend(w.letters().iter().map(|&b| if b == 0 { zero } else { one }));
        interleaved.extend(std::iter::repeat_n(alpha, 1 << j));
        j += 1;
    }
    out.push(expect(
        "g: fixed point agrees with its interleaved description",
        interleaved[..g_letters.len()] == g_letters[..],
        format!("{} letters", g_letters.len()),
    ));

    let d1 = &crate::generators::grillenberger_levels(1)[1];
    let (a, b) = (FiniteWord::binary("0101")?, FiniteWord::binary("0110")?);
    out.push(expect(
        "grill: D_1 holds 0101 ~1 0110, not ~2",
        d1.contains(&a) && d1.contains(&b) && equivalent(&a, &b, 1)? && !equivalent(&a, &b, 2)?,
        format!("D_1 has {} words", d1.len()),
    ));
    Ok(out)
}

fn show(letters: &[u8]) -> String {
    letters.iter().map(|c| char::from(b'0' + c)).collect()
}

pub(super) fn profile_invariants(scale: Scale) -> Result<Vec<Check>> {
    let n_max = scale.pick(32, 64);
    let mut out = Vec::new();
    let gens = [
        (WordGenerator::thue_morse(), n_max),
        (WordGenerator::fibonacci(), n_max),
        (WordGenerator::period_doubling(), n_max),
        (WordGenerator::tau_g_word(), n_max),
        (WordGenerator::h_word(), n_max),
        (WordGenerator::champernowne(), 12),
        (tm_image(2, &WordGenerator::period_doubling())?, n_max),
    ];
    for (gen, top) in gens {
        let mut p = Profiler::new(&gen);
        let ab = p.profile(ComplexityKind::Abelian, top)?;
        let bs = (1..=3)
            .map(|k| p.profile(binomial(k), top))
            .collect::<Result<Vec<_>>>()?;
        let f = p.profile(FACTOR, top)?;
        let mut t = Tally::new(format!("{}: b^1 = abelian, b^1 <= b^2 <= b^3 <= p", gen.id()));
        for n in 0..=top {
            let v = |pr: &ComplexityProfile| pr.value(n).unwrap_or(0);
            let ok = v(&ab) == v(&bs[0]) && v(&bs[0]) <= v(&bs[1]) && v(&bs[1]) <= v(&bs[2]) && v(&bs[2]) <= v(&f);
            t.case(ok, || format!("n={n}"));
        }
        out.push(t.finish());
        if gen.alphabet().is_binary() {
            let steps_ok = ab.values.windows(2).all(|w| w[0].abs_diff(w[1]) <= 1);
            // the abelian count is one more than the spread of the weight
            let letters = gen.prefix_letters(*f.prefix_used.iter().max().unwrap_or(&1024))?;
            let ranges = letter_count_ranges(&letters, &[1], top);
            let spread_ok = ranges
                .iter()
                .enumerate()
                .all(|(i, (lo, hi))| ab.value(i + 1) == Some(hi - lo + 1));
            out.push(expect(
                format!("{}: consecutive abelian values differ by at most 1", gen.id()),
                steps_ok && spread_ok,
                format!("n <= {top}"),
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    #[test]
    fn split_witness_finds_thue_morse_blocks() {
        let letters: Vec<u8> = FiniteWord::binary("0110100110010110").unwrap().into_letters();
        let (i, j) = split_witness(&letters, 2, 2, 4).unwrap().unwrap();
        let a = FiniteWord::binary(&show(&letters[i..i + 4])).unwrap();
        let b = FiniteWord::binary(&show(&letters[j..j + 4])).unwrap();
        assert!(equivalent(&a, &b, 2).unwrap() && !equivalent(&a, &b, 3).unwrap());
    }

    #[test]
    fn envelope_accepts_square_roots() {
        let spread: Vec<u64> = (1..=400).map(|n: u64| (n as f64).sqrt().round() as u64 * 3).collect();
        assert!(sqrt_envelope(&spread, 16).0);
        let linear: Vec<u64> = (1..=400).collect();
        assert!(!sqrt_envelope(&linear, 16).0);
    }

    #[test]
    fn h_prefix_reaches_long_runs() {
        let letters = h_prefix(20).unwrap();
        assert!(letters.windows(21).any(|w| w.iter().all(|&c| c == 2)));
    }

    #[test]
    fn alphabet_of_g_is_ordered() {
        let g = WordGenerator::g_word();
        assert_eq!(g.alphabet().symbols(), Alphabet::parse("a01α").unwrap().symbols());
    }
}
