//! Block structure of Thue–Morse images: factorizations, `≡_j`, decoding.

use rand::Rng;

use super::{bin, expect, identity, info, random_word, rng, tm_power, word_of, Check, Scale, Tally};
use crate::error::Result;
use crate::factors::FactorScanner;
use crate::generators::WordGenerator;
use crate::tm_structure::{
    classify_factor, equiv_j, is_alternating, phi_factorizations, tm_decode, tm_decode_all, transfer_check,
    PhiFactorization,
};
use crate::word::{parikh, signature, Alphabet, FiniteWord};

pub(super) fn transfer(scale: Scale) -> Result<Vec<Check>> {
    let mut t = Tally::new("phi^(k-1)(u) phi^k(v) ~k phi^k(v') phi^(k-1)(u)");
    for (u, v, v2, k) in [("0", "1", "0", 2), ("01", "10", "11", 3), ("1", "0", "0", 1)] {
        let ok = transfer_check(&bin(u), &bin(v), &bin(v2), k)?;
        t.case(ok, || format!("u={u} v={v} v'={v2} k={k}"));
    }
    let mut rng = rng(20);
    let alphabet = Alphabet::binary();
    for _ in 0..scale.pick(100, 300) {
        let k = rng.gen_range(1..=scale.pick(3, 4));
        let ulen = rng.gen_range(1..=4);
        let vlen = rng.gen_range(1..=4);
        let u = random_word(&mut rng, &alphabet, ulen);
        let v = random_word(&mut rng, &alphabet, vlen);
        let v2 = random_word(&mut rng, &alphabet, vlen);
        let ok = transfer_check(&u, &v, &v2, k)?;
        t.case(ok, || format!("u={u} v={v} v'={v2} k={k}"));
    }
    Ok(vec![t.finish()])
}

fn image_generators(k: u32) -> Result<Vec<WordGenerator>> {
    Ok(vec![
        WordGenerator::thue_morse_image(k, &WordGenerator::fibonacci())?,
        WordGenerator::thue_morse_image(k, &WordGenerator::period_doubling())?,
    ])
}

pub(super) fn unique_image(scale: Scale) -> Result<Vec<Check>> {
    let mut t = Tally::new("one or two factorizations, two only in the unary-ancestor shape");
    let mut alternation = Tally::new("two phi-factorizations exactly for alternating words");
    let mut boundary = Vec::new();
    let max_len = scale.pick(24, 40);
    let mut gens = vec![WordGenerator::thue_morse()];
    gens.extend(image_generators(3)?);
    for gen in gens {
        let mut scanner = FactorScanner::new(&gen);
        for n in 1..=max_len {
            for u in scanner.factors(n)?.words {
                for j in 1..=3u32 {
                    if n + 1 < 1 << j {
                        continue;
                    }
                    match identity(phi_factorizations(&u, j))? {
                        Ok(found) => {
                            t.case(matches!(found.len(), 1 | 2), || format!("{u} has {} phi^{j}-factorizations", found.len()));
                            if n + 1 == 1 << j && found.len() == 2 && found.iter().all(|f| f.ancestor().len() == 2) {
                                boundary.push(format!("{u} (j={j})"));
                            }
                            if j == 1 {
                                let two = found.len() == 2;
                                alternation.case(two == is_alternating(&u), || format!("{u}: {} factorizations", found.len()));
                            }
                        }
                        Err(m) => t.fail(m),
                    }
                }
            }
        }
    }
    boundary.sort();
    boundary.dedup();
    let listed = phi_factorizations(&bin("0101"), 1)?;
    let shapes: Vec<String> = listed.iter().map(|f| f.ancestor().to_string()).collect();
    let example = expect(
        "0101 factors through ancestors 00 and 111",
        shapes == ["00", "111"],
        format!("ancestors {shapes:?}"),
    );
    Ok(vec![
        t.finish(),
        alternation.finish(),
        example,
        info(
            "length 2^j - 1 with two mixed-ancestor factorizations",
            if boundary.is_empty() { "none".to_string() } else { boundary.join(", ") },
        ),
    ])
}

/// Factors of length `n` together with their `phi^j`-factorizations.
fn factored(scanner: &mut FactorScanner, n: usize, j: u32) -> Result<Vec<(FiniteWord, Vec<PhiFactorization>)>> {
    scanner
        .factors(n)?
        .words
        .into_iter()
        .map(|u| {
            let f = phi_factorizations(&u, j)?;
            Ok((u, f))
        })
        .collect()
}

pub(super) fn prefix_suffix(scale: Scale) -> Result<Vec<Check>> {
    let mut t = Tally::new("u ~j v iff their prefix-suffix pairs are ≡_j");
    let max_len = scale.pick(24, 40);
    for k in 1..=3u32 {
        for gen in image_generators(k)? {
            let mut scanner = FactorScanner::new(&gen);
            for j in 1..=k {
                for n in (1usize << j) - 1..=max_len {
                    let items = factored(&mut scanner, n, j)?;
                    let sigs = items
                        .iter()
                        .map(|(u, _)| signature(u, j as usize))
                        .collect::<Result<Vec<_>>>()?;
                    for a in 0..items.len() {
                        for b in a + 1..items.len() {
                            let lhs = sigs[a] == sigs[b];
                            let mut rhs = false;
                            for f1 in &items[a].1 {
                                for f2 in &items[b].1 {
                                    rhs |= equiv_j(&f1.pair(), &f2.pair())?;
                                }
                            }
                            t.case(lhs == rhs, || {
                                format!("{}: u={} v={} j={j}: ~j {lhs}, ≡_j {rhs}", gen.id(), items[a].0, items[b].0)
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(vec![t.finish()])
}

pub(super) fn kplus1_prefix_suffix(scale: Scale) -> Result<Vec<Check>> {
    let mut t = Tally::new("u ~(k+1) v, u != v iff same (p,s) and distinct abelian-equivalent cores");
    let max_len = scale.pick(24, 40);
    for k in 1..=2u32 {
        for gen in image_generators(k)? {
            let mut scanner = FactorScanner::new(&gen);
            for n in (1usize << k) - 1..=max_len {
                let items = factored(&mut scanner, n, k)?;
                let sigs = items
                    .iter()
                    .map(|(u, _)| signature(u, k as usize + 1))
                    .collect::<Result<Vec<_>>>()?;
                for a in 0..items.len() {
                    for b in a + 1..items.len() {
                        let lhs = sigs[a] == sigs[b];
                        let mut rhs = false;
                        for f1 in &items[a].1 {
                            for f2 in &items[b].1 {
                                rhs |= f1.p == f2.p
                                    && f1.s == f2.s
                                    && f1.core != f2.core
                                    && parikh(&f1.core) == parikh(&f2.core);
                            }
                        }
                        t.case(lhs == rhs, || {
                            format!("{}: u={} v={} k={k}: ~(k+1) {lhs}, core relation {rhs}", gen.id(), items[a].0, items[b].0)
                        });
                    }
                }
            }
        }
    }
    Ok(vec![t.finish()])
}

pub(super) fn same_class(scale: Scale) -> Result<Vec<Check>> {
    let mut t = Tally::new("2-binomially equivalent factors share factorization classes");
    let mut examples = Vec::new();
    let max_len = scale.pick(20, 30);
    for gen in image_generators(1)? {
        let mut scanner = FactorScanner::new(&gen);
        for n in 1..=max_len {
            let words = scanner.factors(n)?.words;
            let mut seen: Vec<(Vec<num_bigint::BigUint>, FiniteWord, Vec<_>)> = Vec::new();
            for u in words {
                let sig = signature(&u, 2)?.counts().to_vec();
                let classes = classify_factor(&u)?;
                if let Some((_, v, other)) = seen.iter().find(|(s, _, _)| *s == sig) {
                    t.case(*other == classes, || format!("{}: {u} and {v} are ~2 with different classes", gen.id()));
                } else {
                    seen.push((sig, u, classes));
                }
            }
        }
    }
    // the two worked examples of distinct classes
    for (word, want) in [("10101", vec!["S_{ε,1}(2)", "S_{0,ε}(2)"]), ("010101", vec!["S(3)", "S_{1,1}(2)"])] {
        let mut got: Vec<String> = classify_factor(&bin(word))?.iter().map(ToString::to_string).collect();
        got.sort();
        let mut want: Vec<String> = want.into_iter().map(String::from).collect();
        want.sort();
        examples.push(expect(format!("classes of {word}"), got == want, format!("{got:?}")));
    }
    let mut out = vec![t.finish()];
    out.extend(examples);
    Ok(out)
}

pub(super) fn decode(scale: Scale) -> Result<Vec<Check>> {
    let mut rng = rng(21);
    let sources = [WordGenerator::fibonacci(), WordGenerator::period_doubling()];
    let prefixes = sources
        .iter()
        .map(|g| g.prefix(4096))
        .collect::<Result<Vec<_>>>()?;
    let alphabet = Alphabet::binary();
    let mut listed = Tally::new("construction appears among the decodings");
    let mut preferred = Tally::new("preferred decoding recovers the construction");
    for _ in 0..scale.pick(100, 200) {
        let k = rng.gen_range(1..=3u32);
        let size = 1usize << k;
        let source = &prefixes[rng.gen_range(0..prefixes.len())];
        let ylen = rng.gen_range(6..=24);
        let start = rng.gen_range(0..source.len() - ylen);
        let y = source.factor(start, start + ylen);
        let block = |a: u8| -> Result<FiniteWord> { tm_power(k)?.apply(&word_of(&alphabet, vec![a])) };
        let t = rng.gen_range(0..size);
        let u = {
            let b = block(rng.gen_range(0..2))?;
            b.factor(size - t, size)
        };
        let r = {
            let b = block(rng.gen_range(0..2))?;
            b.prefix(rng.gen_range(0..size))
        };
        let x = u.concat(&tm_power(k)?.apply(&y)?)?.concat(&r)?;
        let all = tm_decode_all(&x, k)?;
        listed.case(all.iter().any(|d| d.u == u && d.y_prefix == y && d.remainder == r), || {
            format!("x={x} k={k} built from u={u} y={y}")
        });
        let (du, dy) = tm_decode(&x, k)?;
        preferred.case(du == u && dy == y, || format!("x={x} k={k}: built from u={u} y={y}, decoded u={du} y={dy}"));
    }
    let champ = WordGenerator::champernowne().prefix(64)?;
    let refused = matches!(tm_decode(&champ, 2), Err(crate::error::Error::NotDecodable { .. }));
    Ok(vec![
        listed.finish(),
        preferred.finish(),
        expect("champernowne prefix is not a phi^2 image", refused, "64-letter prefix"),
    ])
}
