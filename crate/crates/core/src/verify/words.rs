//! Finite-word and morphism identities.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use rand::rngs::StdRng;
use rand::Rng;

use super::{
    all_binary, bin, expect, identity, nontrivial_classes, pick_pair, random_word, rng, shuffled, tm_power, word_of,
    Check, Scale, Tally,
};
use crate::error::Result;
use crate::morphism::{michel_delta, Morphism};
use crate::word::{
    abelian_mass, binomial, binomial_coefficient, equivalent, parikh, power_delta, signature, Alphabet, FiniteWord,
    ParikhVector,
};

pub(super) fn binomial_dp(scale: Scale) -> Result<Vec<Check>> {
    let mut t = Tally::new("dp equals subset enumeration");
    for len in 0..=scale.pick(7, 8) {
        for u in all_binary(len) {
            let mut counts: HashMap<Vec<u8>, u64> = HashMap::new();
            for mask in 0u32..1 << len {
                let picked: Vec<u8> = (0..len).filter(|i| mask >> i & 1 == 1).map(|i| u.letters()[i]).collect();
                *counts.entry(picked).or_default() += 1;
            }
            for wl in 0..=len + 1 {
                for w in all_binary(wl) {
                    let want = counts.get(w.letters()).copied().unwrap_or(0);
                    let got = binomial_coefficient(&u, &w)?;
                    t.case(got == BigUint::from(want), || format!("binom({u}, {w}) = {got}, enumeration gives {want}"));
                }
            }
        }
    }
    Ok(vec![t.finish()])
}

pub(super) fn refinement(scale: Scale) -> Result<Vec<Check>> {
    let mut rng = rng(1);
    let mut classes = Tally::new("~_(k+1) classes lie inside ~_k classes");
    for len in 2..=scale.pick(8, 10) {
        for k in 1..=4 {
            for class in nontrivial_classes(len, k + 1)? {
                for w in &class[1..] {
                    let ok = equivalent(&class[0], w, k)?;
                    classes.case(ok, || format!("{} ~_{} {w} but not ~_{k}", class[0], k + 1));
                }
            }
        }
    }
    let mut random = Tally::new("random pairs up to length 20");
    let alphabet = Alphabet::binary();
    for _ in 0..scale.pick(500, 2000) {
        let len = rng.gen_range(1..=20);
        let u = random_word(&mut rng, &alphabet, len);
        let v = if rng.gen_bool(0.5) {
            shuffled(&mut rng, &u)
        } else {
            random_word(&mut rng, &alphabet, len)
        };
        for k in 1..=4 {
            let ok = !equivalent(&u, &v, k + 1)? || equivalent(&u, &v, k)?;
            random.case(ok, || format!("{u} ~_{} {v} but not ~_{k}", k + 1));
        }
    }
    Ok(vec![classes.finish(), random.finish()])
}

pub(super) fn cancellation(scale: Scale) -> Result<Vec<Check>> {
    let mut rng = rng(2);
    let alphabet = Alphabet::binary();
    let mut t = Tally::new("v ~k w iff uv ~k uw iff vu ~k wu");
    for k in 1..=4 {
        for len in [k + 1, k + 3, 8] {
            let classes = nontrivial_classes(len, k)?;
            for _ in 0..scale.pick(40, 150) {
                let (v, w) = match pick_pair(&mut rng, &classes) {
                    Some(pair) if rng.gen_bool(0.7) => pair,
                    _ => (random_word(&mut rng, &alphabet, len), random_word(&mut rng, &alphabet, len)),
                };
                let ulen = rng.gen_range(0..=8);
                let u = random_word(&mut rng, &alphabet, ulen);
                let base = equivalent(&v, &w, k)?;
                let left = equivalent(&u.concat(&v)?, &u.concat(&w)?, k)?;
                let right = equivalent(&v.concat(&u)?, &w.concat(&u)?, k)?;
                t.case(base == left && base == right, || {
                    format!("u={u} v={v} w={w} k={k}: {base} {left} {right}")
                });
            }
        }
    }
    Ok(vec![t.finish()])
}

pub(super) fn w35(scale: Scale) -> Result<Vec<Check>> {
    let mut rng = rng(3);
    let alphabet = Alphabet::binary();
    let mut t = Tally::new("xy ~k yx iff x ~(k-1) y");
    for k in 2..=4 {
        for len in 1..=scale.pick(10, 12) {
            // equivalent pairs come from exhaustive classes while those stay small
            let classes = if len <= 10 { nontrivial_classes(len, k - 1)? } else { Vec::new() };
            for _ in 0..scale.pick(15, 40) {
                let (x, y) = match pick_pair(&mut rng, &classes) {
                    Some(pair) if rng.gen_bool(0.6) => pair,
                    _ => (random_word(&mut rng, &alphabet, len), random_word(&mut rng, &alphabet, len)),
                };
                let lhs = equivalent(&x.concat(&y)?, &y.concat(&x)?, k)?;
                let rhs = equivalent(&x, &y, k - 1)?;
                t.case(lhs == rhs, || format!("x={x} y={y} k={k}: xy~yx is {lhs}, x~y is {rhs}"));
            }
        }
    }
    Ok(vec![t.finish()])
}

pub(super) fn length_shortcut(scale: Scale) -> Result<Vec<Check>> {
    let mut t = Tally::new("length-k counts decide ~_k for equal lengths");
    for len in 1..=scale.pick(8, 10) {
        for k in 1..=3.min(len) {
            let mut by_level: HashMap<Vec<BigUint>, Vec<BigUint>> = HashMap::new();
            for u in all_binary(len) {
                let sig = signature(&u, k)?;
                let full = sig.counts().to_vec();
                match by_level.get(sig.level(k)) {
                    Some(existing) => {
                        t.case(*existing == full, || format!("length {len}, k={k}: {u} shares its top level with a word of another class"));
                    }
                    None => {
                        t.case(true, String::new);
                        by_level.insert(sig.level(k).to_vec(), full);
                    }
                }
            }
        }
    }
    Ok(vec![t.finish()])
}

pub(super) fn row_sum(scale: Scale) -> Result<Vec<Check>> {
    let mut rng = rng(4);
    let mut t = Tally::new("level sums equal C(|u|, l)");
    for _ in 0..scale.pick(100, 400) {
        let alphabet = Alphabet::digits(rng.gen_range(2..=4))?;
        let len = rng.gen_range(0..=40);
        let u = random_word(&mut rng, &alphabet, len);
        let k = rng.gen_range(1..=4);
        let sig = signature(&u, k)?;
        let mut ok = sig.counts()[0] == BigUint::from(1u8);
        for a in 0..alphabet.size() as u8 {
            ok &= sig.get(&[a]) == Some(&BigUint::from(u.count(a)));
        }
        for l in 0..=k {
            let total: BigUint = sig.level(l).iter().sum();
            ok &= total == binomial(len as u64, l as u64);
        }
        t.case(ok, || format!("signature of {u} with k={k}"));
    }
    Ok(vec![t.finish()])
}

pub(super) fn diff_powers(scale: Scale) -> Result<Vec<Check>> {
    let mut rng = rng(5);
    let alphabet = Alphabet::binary();
    let mut t = Tally::new("binom(x^n,e) - binom(y^n,e) = n (binom(x,e) - binom(y,e))");
    let mut pools = Vec::new();
    for k in 1..=3 {
        for len in k + 1..=8 {
            let classes = nontrivial_classes(len, k)?;
            if !classes.is_empty() {
                pools.push((k, classes));
            }
        }
    }
    for _ in 0..scale.pick(100, 200) {
        let (k, classes) = &pools[rng.gen_range(0..pools.len())];
        let (x, y) = pick_pair(&mut rng, classes).expect("nonempty pool");
        let e = random_word(&mut rng, &alphabet, k + 1);
        let n = rng.gen_range(0..=5);
        let big = |b: BigUint| BigInt::from(b);
        let base = big(binomial_coefficient(&x, &e)?) - big(binomial_coefficient(&y, &e)?);
        match identity(power_delta(&x, &y, n, &e))? {
            Ok(delta) => t.case(delta == base * BigInt::from(n), || format!("x={x} y={y} n={n} e={e}: {delta}")),
            Err(m) => t.fail(m),
        }
    }
    Ok(vec![t.finish()])
}

/// All words with Parikh vector `m`.
fn words_with_parikh(alphabet: &Arc<Alphabet>, m: &[u64]) -> Vec<FiniteWord> {
    fn go(m: &mut Vec<u64>, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if m.iter().all(|&c| c == 0) {
            out.push(prefix.clone());
            return;
        }
        for a in 0..m.len() {
            if m[a] > 0 {
                m[a] -= 1;
                prefix.push(a as u8);
                go(m, prefix, out);
                prefix.pop();
                m[a] += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut m.to_vec(), &mut Vec::new(), &mut out);
    out.into_iter().map(|l| word_of(alphabet, l)).collect()
}

fn vectors_up_to(sigma: usize, total: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..sigma {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u64>| {
                let used: u64 = v.iter().sum();
                (0..=total - used).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

pub(super) fn sum_constant_pvect(scale: Scale) -> Result<Vec<Check>> {
    let mut rng = rng(6);
    let mut t = Tally::new("class sum of binomials equals product of C(|u|_a, m_a)");
    for _ in 0..scale.pick(30, 100) {
        let alphabet = Alphabet::digits(rng.gen_range(2..=3))?;
        let len = rng.gen_range(0..=12);
        let u = random_word(&mut rng, &alphabet, len);
        for m in vectors_up_to(alphabet.size(), 4) {
            let sum: BigUint = words_with_parikh(&alphabet, &m)
                .iter()
                .map(|w| binomial_coefficient(&u, w))
                .sum::<Result<BigUint>>()?;
            let mass = abelian_mass(&u, &ParikhVector::new(m.clone()))?;
            t.case(sum == mass, || format!("u={u} m={m:?}: sum {sum}, mass {mass}"));
        }
    }
    Ok(vec![t.finish()])
}

pub(super) fn ochsenschlager(scale: Scale) -> Result<Vec<Check>> {
    let mut t = Tally::new("phi^k(0) ~k phi^k(1) and not ~(k+1)");
    for k in 1..=scale.pick(5u32, 7) {
        let f = tm_power(k)?;
        let a = f.apply(&bin("0"))?;
        let b = f.apply(&bin("1"))?;
        let same = equivalent(&a, &b, k as usize)?;
        let next = equivalent(&a, &b, k as usize + 1)?;
        t.case(same && !next, || format!("k={k}: ~k {same}, ~(k+1) {next}"));
    }
    Ok(vec![t.finish()])
}

pub(super) fn michel(scale: Scale) -> Result<Vec<Check>> {
    let mut rng = rng(7);
    let alphabet = Alphabet::binary();
    let mut t = Tally::new("phi^k image differences for 01^k and 01^(k+1)");
    for _ in 0..scale.pick(100, 300) {
        let len = rng.gen_range(1..=8);
        let u = random_word(&mut rng, &alphabet, len);
        let v = if rng.gen_bool(0.5) {
            shuffled(&mut rng, &u)
        } else {
            random_word(&mut rng, &alphabet, len)
        };
        let k = rng.gen_range(1..=4);
        match identity(michel_delta(&u, &v, k))? {
            Ok(_) => t.case(true, String::new),
            Err(m) => t.fail(m),
        }
    }
    Ok(vec![t.finish()])
}

fn random_morphism(rng: &mut StdRng) -> Result<Morphism> {
    let source = crate::word::Alphabet::digits(rng.gen_range(2..=4))?;
    let target = if rng.gen_bool(0.5) {
        Arc::clone(&source)
    } else {
        Alphabet::digits(rng.gen_range(2..=4))?
    };
    let images = (0..source.size())
        .map(|_| {
            let len = rng.gen_range(0..=5);
            random_word(rng, &target, len)
        })
        .collect();
    Morphism::new(&source, &target, images)
}

pub(super) fn parikh_matrix(scale: Scale) -> Result<Vec<Check>> {
    let mut rng = rng(8);
    let mut t = Tally::new("Parikh vector of f(u) equals M_f times that of u");
    for _ in 0..scale.pick(200, 500) {
        let f = random_morphism(&mut rng)?;
        let len = rng.gen_range(0..=10);
        let u = random_word(&mut rng, f.source(), len);
        let lhs = parikh(&f.apply(&u)?);
        let rhs = f.apply_matrix(&parikh(&u));
        t.case(lhs == rhs, || format!("f=[{}] u={u}: {lhs} vs {rhs}", f.to_string().trim().replace('\n', "; ")));
    }
    Ok(vec![t.finish()])
}

/// Images are shuffles of `c_a` copies of one base vector; `c_a = 0` is allowed.
fn random_collinear(rng: &mut StdRng, source: &Arc<Alphabet>) -> Result<Morphism> {
    let target = Alphabet::digits(rng.gen_range(2..=3))?;
    let base: Vec<u64> = loop {
        let b: Vec<u64> = (0..target.size()).map(|_| rng.gen_range(0..=2)).collect();
        if b.iter().sum::<u64>() > 0 {
            break b;
        }
    };
    let images = (0..source.size())
        .map(|_| {
            let c = if rng.gen_bool(0.1) { 0 } else { rng.gen_range(1..=3) };
            let letters: Vec<u8> = base
                .iter()
                .enumerate()
                .flat_map(|(a, &n)| std::iter::repeat_n(a as u8, (n * c) as usize))
                .collect();
            shuffled(rng, &word_of(&target, letters))
        })
        .collect();
    Morphism::new(source, &target, images)
}

/// `0 -> 000222, 1 -> 0001112, 2 -> 2222000000111`: adjacency matrix of rank 2.
pub(super) fn rank_two_morphism() -> Morphism {
    Morphism::from_images(&Alphabet::digits(3).expect("alphabet"), &["000222", "0001112", "2222000000111"])
        .expect("valid morphism")
}

/// `0 -> 000111, 1 -> 0110`: Parikh-collinear but not Parikh-constant.
pub(super) fn collinear_example() -> Morphism {
    Morphism::from_images(&Alphabet::binary(), &["000111", "0110"]).expect("valid morphism")
}

pub(super) fn pc_characterization(scale: Scale) -> Result<Vec<Check>> {
    let binary = Alphabet::binary();
    let mut checks = Vec::new();
    let truth: [(&str, Morphism, usize, bool, bool, bool); 5] = [
        ("thue-morse", Morphism::thue_morse(), 1, true, true, false),
        ("collinear example", collinear_example(), 1, false, true, false),
        ("rank-2 example", rank_two_morphism(), 2, false, false, false),
        ("identity", Morphism::identity(&binary), 2, false, false, false),
        ("totally erasing", Morphism::from_images(&binary, &["", ""])?, 0, true, true, true),
    ];
    for (name, f, rank, constant, collinear, erasing) in truth {
        let c = f.classify();
        let ok = c.rank == rank
            && c.is_parikh_constant == constant
            && c.is_parikh_collinear == collinear
            && c.is_totally_erasing == erasing;
        checks.push(expect(
            format!("classify {name}"),
            ok,
            format!(
                "rank {} constant {} collinear {} erasing {}",
                c.rank, c.is_parikh_constant, c.is_parikh_collinear, c.is_totally_erasing
            ),
        ));
    }

    let mut rng = rng(9);
    let mut forward = Tally::new("collinear f and u ~(k-1) v give f(u) ~k f(v)");
    let mut pools = Vec::new();
    for k in 2..=4usize {
        let mut classes = Vec::new();
        for len in 1..=10 {
            classes.extend(nontrivial_classes(len, k - 1)?);
        }
        pools.push((k, classes));
    }
    for _ in 0..scale.pick(150, 500) {
        let (k, classes) = &pools[rng.gen_range(0..pools.len())];
        let (u, v) = pick_pair(&mut rng, classes).expect("nonempty pool");
        let f = random_collinear(&mut rng, &binary)?;
        let ok = equivalent(&f.apply(&u)?, &f.apply(&v)?, *k)?;
        forward.case(ok, || format!("f=[{}] u={u} v={v} k={k}", f.to_string().trim().replace('\n', "; ")));
    }
    checks.push(forward.finish());

    // the rank-2 morphism must break the forward direction somewhere
    let g = rank_two_morphism();
    let ternary = g.source().clone();
    let mut witness = None;
    'search: for len in 2..=5 {
        let words: Vec<FiniteWord> = (0..3u32.pow(len as u32))
            .map(|mut code| {
                let mut l = vec![0u8; len];
                for c in l.iter_mut().rev() {
                    *c = (code % 3) as u8;
                    code /= 3;
                }
                word_of(&ternary, l)
            })
            .collect();
        for u in &words {
            for v in &words {
                if u < v && parikh(u) == parikh(v) && !equivalent(&g.apply(u)?, &g.apply(v)?, 2)? {
                    witness = Some((u.clone(), v.clone()));
                    break 'search;
                }
            }
        }
    }
    checks.push(match witness {
        Some((u, v)) => expect("rank-2 converse witness", true, format!("u={u} ~1 v={v} but f(u), f(v) are not ~2")),
        None => expect("rank-2 converse witness", false, "no witness among words of length <= 5"),
    });
    Ok(checks)
}

pub(super) fn g_function(scale: Scale) -> Result<Vec<Check>> {
    let mut rng = rng(10);
    let binary = Alphabet::binary();
    let mut t = Tally::new("g_e is constant on abelian classes");
    for _ in 0..scale.pick(150, 400) {
        let source = if rng.gen_bool(0.5) { Arc::clone(&binary) } else { Alphabet::digits(3)? };
        let f = random_collinear(&mut rng, &source)?;
        let len = rng.gen_range(0..=8);
        let w = random_word(&mut rng, &source, len);
        let w2 = shuffled(&mut rng, &w);
        let e = random_word(&mut rng, f.target(), len);
        let a = f.g_value(&w, &e)?;
        let b = f.g_value(&w2, &e)?;
        t.case(a == b, || format!("w={w} w'={w2} e={e}: {a} vs {b}"));
    }
    Ok(vec![t.finish()])
}

pub(super) fn image_coefficient(scale: Scale) -> Result<Vec<Check>> {
    let mut rng = rng(11);
    let mut t = Tally::new("coefficient from subword counts equals direct expansion");
    for _ in 0..scale.pick(200, 500) {
        let f = random_morphism(&mut rng)?;
        let len = rng.gen_range(0..=8);
        let u = random_word(&mut rng, f.source(), len);
        let elen = rng.gen_range(1..=4);
        let e = random_word(&mut rng, f.target(), elen);
        let via = f.image_coefficient(&signature(&u, elen)?, &e)?;
        let direct = binomial_coefficient(&f.apply(&u)?, &e)?;
        t.case(via == direct, || format!("u={u} e={e}: {via} vs {direct}"));
    }
    Ok(vec![t.finish()])
}

pub(super) fn coefficients_of_images(scale: Scale) -> Result<Vec<Check>> {
    let mut rng = rng(12);
    let alphabet = Alphabet::binary();
    let phi = Morphism::thue_morse();
    let mut t = Tally::new("binomials of phi(u) for 0, 01 and 011");
    for _ in 0..scale.pick(100, 300) {
        let len = rng.gen_range(0..=16);
        let u = random_word(&mut rng, &alphabet, len);
        let image = phi.apply(&u)?;
        let n = len as u64;
        let zeros = u.count(0) as u64;
        let b = |x: &FiniteWord, w: &str| binomial_coefficient(x, &bin(w));
        let ok = b(&image, "0")? == BigUint::from(n)
            && b(&image, "01")? == BigUint::from(zeros) + binomial(n, 2)
            && b(&image, "011")? == b(&u, "01")? + binomial(zeros, 2) + binomial(n, 3);
        t.case(ok, || format!("u={u}"));
    }
    Ok(vec![t.finish()])
}
