use binowords::generators::WordGenerator;
use binowords::morphism::{integer_rank, Morphism};
use binowords::tm_structure::phi_factorizations;
use binowords::word::{abelian_mass, binomial, binomial_coefficient, equivalent, parikh, signature, Alphabet, FiniteWord, ParikhVector};
use num_bigint::BigUint;
use proptest::prelude::*;

fn word(sigma: usize, letters: Vec<u8>) -> FiniteWord {
    let alphabet = Alphabet::digits(sigma).unwrap();
    FiniteWord::from_indices(&alphabet, letters).unwrap()
}

fn letters(sigma: u8, max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..sigma, 0..=max_len)
}

/// Subsequence occurrences by plain recursion.
fn naive_count(u: &[u8], w: &[u8]) -> u64 {
    if w.is_empty() {
        return 1;
    }
    if u.len() < w.len() {
        return 0;
    }
    let last = u.len() - 1;
    let mut c = naive_count(&u[..last], w);
    if u[last] == w[w.len() - 1] {
        c += naive_count(&u[..last], &w[..w.len() - 1]);
    }
    c
}

fn all_words(sigma: u8, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..sigma).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

/// Rank over the rationals by exact fraction arithmetic on i128.
fn rational_rank(m: &[Vec<u64>]) -> usize {
    let mut rows: Vec<Vec<(i128, i128)>> = m.iter().map(|r| r.iter().map(|&x| (x as i128, 1)).collect()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let reduce = |(n, d): (i128, i128)| {
        let mut g = gcd(n.abs(), d.abs()).max(1);
        if d < 0 {
            g = -g;
        }
        (n / g, d / g)
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c].0 != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (pn, pd) = rows[rank][c];
        for r in 0..rows.len() {
            if r == rank || rows[r][c].0 == 0 {
                continue;
            }
            let (fn_, fd) = reduce((rows[r][c].0 * pd, rows[r][c].1 * pn));
            for cc in 0..cols {
                let (an, ad) = rows[r][cc];
                let (bn, bd) = rows[rank][cc];
                let (tn, td) = reduce((fn_ * bn, fd * bd));
                rows[r][cc] = reduce((an * td - tn * ad, ad * td));
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #[test]
    fn coefficient_matches_recursion(u in letters(3, 12), w in letters(3, 4)) {
        let got = binomial_coefficient(&word(3, u.clone()), &word(3, w.clone())).unwrap();
        prop_assert_eq!(got, BigUint::from(naive_count(&u, &w)));
    }

    #[test]
    fn signature_row_sums(u in letters(2, 14), k in 1usize..=4) {
        let sig = signature(&word(2, u.clone()), k).unwrap();
        prop_assert_eq!(sig.level(0), &[BigUint::from(1u32)][..]);
        for len in 0..=k {
            let total: BigUint = sig.level(len).iter().sum();
            prop_assert_eq!(total, binomial(u.len() as u64, len as u64));
        }
        for a in 0..2u8 {
            let n = u.iter().filter(|&&c| c == a).count();
            prop_assert_eq!(sig.get(&[a]).cloned(), Some(BigUint::from(n)));
        }
    }

    #[test]
    fn refinement(u in letters(2, 10), v in letters(2, 10), k in 1usize..=4) {
        let (u, v) = (word(2, u), word(2, v));
        if equivalent(&u, &v, k + 1).unwrap() {
            prop_assert!(equivalent(&u, &v, k).unwrap());
        }
    }

    #[test]
    fn equal_length_shortcut(u in letters(2, 9), seed in letters(2, 9), k in 1usize..=4) {
        let n = u.len();
        let mut v = seed;
        v.resize(n, 0);
        let (uw, vw) = (word(2, u), word(2, v));
        let full = signature(&uw, k).unwrap().counts() == signature(&vw, k).unwrap().counts();
        prop_assert_eq!(equivalent(&uw, &vw, k).unwrap(), full);
    }

    #[test]
    fn cancellation(u in letters(2, 8), v in letters(2, 8), p in letters(2, 5), k in 1usize..=3) {
        let (u, v, p) = (word(2, u), word(2, v), word(2, p));
        let base = equivalent(&u, &v, k).unwrap();
        prop_assert_eq!(equivalent(&p.concat(&u).unwrap(), &p.concat(&v).unwrap(), k).unwrap(), base);
        prop_assert_eq!(equivalent(&u.concat(&p).unwrap(), &v.concat(&p).unwrap(), k).unwrap(), base);
    }

    #[test]
    fn abelian_mass_sums_its_class(u in letters(2, 10), m0 in 0u64..=3, m1 in 0u64..=3) {
        let uw = word(2, u);
        let m = ParikhVector::new(vec![m0, m1]);
        let mut total = BigUint::from(0u32);
        for w in all_words(2, (m0 + m1) as usize) {
            let ww = word(2, w);
            if parikh(&ww) == m {
                total += binomial_coefficient(&uw, &ww).unwrap();
            }
        }
        prop_assert_eq!(abelian_mass(&uw, &m).unwrap(), total);
    }

    #[test]
    fn rank_matches_rational_elimination(m in prop::collection::vec(prop::collection::vec(0u64..6, 3), 3)) {
        prop_assert_eq!(integer_rank(&m), rational_rank(&m));
    }

    #[test]
    fn classification_flags(images in prop::collection::vec(letters(3, 6), 3)) {
        let alphabet = Alphabet::digits(3).unwrap();
        let images: Vec<FiniteWord> = images.into_iter().map(|l| FiniteWord::from_indices(&alphabet, l).unwrap()).collect();
        let f = Morphism::new(&alphabet, &alphabet, images).unwrap();
        let class = f.classify();
        prop_assert!(!class.is_parikh_constant || class.is_parikh_collinear);
        prop_assert_eq!(class.is_parikh_collinear, class.rank <= 1);
        let m = f.adjacency_matrix();
        for a in 0..3u8 {
            let psi = parikh(f.image(a));
            for b in 0..3u8 {
                prop_assert_eq!(m[b as usize][a as usize], psi.get(b));
            }
        }
        if let Some(c) = class.prolongable_on {
            let a = alphabet.index_of(c).unwrap();
            prop_assert!(f.image(a).len() >= 2 && f.image(a).letters()[0] == a);
        }
    }

    #[test]
    fn prefixes_are_nested(n in 0usize..400, extra in 0usize..400) {
        for gen in [WordGenerator::thue_morse(), WordGenerator::fibonacci(), WordGenerator::tau_g_word(), WordGenerator::h_word()] {
            let short = gen.prefix(n).unwrap();
            let long = gen.prefix(n + extra).unwrap();
            prop_assert!(short.is_prefix_of(&long));
        }
    }

    #[test]
    fn factorizations_rebuild_tm_factors(start in 0usize..2000, len in 1usize..40, j in 1u32..=3) {
        prop_assume!(len + 1 >= 1 << j);
        let t = WordGenerator::thue_morse().prefix(start + len).unwrap();
        let u = t.factor(start, start + len);
        let phi = Morphism::thue_morse().power(j).unwrap();
        let found = phi_factorizations(&u, j).unwrap();
        prop_assert!(!found.is_empty());
        for f in found {
            prop_assert!(f.p.len() < 1 << j && f.s.len() < 1 << j);
            let rebuilt = f.p.concat(&phi.apply(&f.core).unwrap()).unwrap().concat(&f.s).unwrap();
            prop_assert_eq!(rebuilt, u.clone());
        }
    }
}
