//! Exhaustive cross-checks at small lengths against brute-force oracles.

use std::collections::BTreeSet;

use dsrecon::codes::{
    best_coset, coset_sizes, default_p, is_rll, subcode_check, CodeSpec, CosetFamily, Family,
};
use dsrecon::error_balls::{decompose_intersection, deletion_intersection_len, ds_ball, substitution_intersection_len};
use dsrecon::reconstruct::{decode, DecodeStatus, ReadBundle};
use dsrecon::sequences::psi;
use dsrecon::verify::{intersection_bounds, Verdict};
use dsrecon::Word;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn naive_del(x: &Word) -> BTreeSet<Word> {
    (1..=x.len()).map(|i| x.delete(i)).collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn members(spec: CodeSpec) -> Vec<Word> {
    spec.members().unwrap()
}

#[test]
fn residue_families_partition_the_space() {
    for n in 2..=14 {
        let mut families = vec![
            CosetFamily::Vt,
            CosetFamily::Inv { m: 2 },
            CosetFamily::Inv { m: 5 },
            CosetFamily::VtMod { m: 3 },
            CosetFamily::EvenPos { m: 2 },
        ];
        if n <= 10 {
            families.push(CosetFamily::Cl);
        }
        for family in families {
            let total: u64 = coset_sizes(family, n).unwrap().iter().map(|(_, k)| k).sum();
            assert_eq!(total, 1 << n, "{family:?} n={n}");
        }
        // the constrained families partition their parent sets
        let p = default_p(n);
        let rll = CodeSpec::new(n, Family::Rll { p }).unwrap().size().unwrap();
        let cp: u64 = coset_sizes(CosetFamily::Cp { p }, n).unwrap().iter().map(|(_, k)| k).sum();
        assert_eq!(cp, rll);
    }
}

#[test]
fn vt_cosets_share_no_deletions_or_substitutions() {
    for n in 2..=12 {
        for a in 0..2 * n as u64 {
            let words = members(CodeSpec::new(n, Family::Vt { a }).unwrap());
            let dels: Vec<BTreeSet<Word>> = words.iter().map(naive_del).collect();
            for i in 0..words.len() {
                for j in i + 1..words.len() {
                    assert!(dels[i].is_disjoint(&dels[j]), "{} {}", words[i], words[j]);
                    assert!(words[i].hamming(&words[j]) >= 3, "{} {}", words[i], words[j]);
                    assert_eq!(deletion_intersection_len(&words[i], &words[j]), 0);
                    assert_eq!(substitution_intersection_len(&words[i], &words[j]), 0);
                }
            }
        }
    }
}

#[test]
fn period_constrained_cosets_share_at_most_one_deletion() {
    for n in 4..=12 {
        let p = default_p(n);
        for (a1, a2) in [(0, 0), (1, 0), (0, 1), (1, p / 2)] {
            let words = members(CodeSpec::new(n, Family::Cp { p, a1, a2 }).unwrap());
            let dels: Vec<BTreeSet<Word>> = words.iter().map(naive_del).collect();
            for i in 0..words.len() {
                for j in i + 1..words.len() {
                    assert!(dels[i].intersection(&dels[j]).count() <= 1, "{} {}", words[i], words[j]);
                }
            }
        }
    }
}

#[test]
fn cl_triples_have_empty_intersections() {
    for n in 4..=9 {
        let (spec, _) = best_coset(CosetFamily::Cl, n).unwrap();
        let words = members(spec);
        let balls: Vec<BTreeSet<Word>> = words
            .iter()
            .map(|x| ds_ball(x).unwrap().into_vec().into_iter().collect())
            .collect();
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                let common: BTreeSet<&Word> = balls[i].intersection(&balls[j]).collect();
                assert!(common.len() <= 6);
                for third in &balls[j + 1..] {
                    assert!(common.iter().all(|z| !third.contains(z)));
                }
            }
        }
    }
}

#[test]
fn subcodes_nest() {
    let n = 10;
    let p = default_p(n);
    for a1 in 0..2 {
        for a2 in 0..=p / 2 {
            let inner = CodeSpec::new(n, Family::Cn21 { p, a1, a2 }).unwrap();
            let outer = CodeSpec::new(n, Family::C2n9 { a: a2, m: 1 + p / 2 }).unwrap();
            assert!(subcode_check(&inner, &outer).unwrap());
            assert_eq!(inner.parent(), Some(outer));
        }
    }
    let n = 8;
    for (a0, a1, a2) in [(0, 0, 0), (1, 3, 17), (3, 15, 127)] {
        let cl = CodeSpec::new(n, Family::Cl { a0, a1, a2 }).unwrap();
        assert!(subcode_check(&cl, &CodeSpec::new(n, Family::Vt { a: a1 }).unwrap()).unwrap());
    }
    let full = CodeSpec::new(n, Family::Full).unwrap();
    assert!(!subcode_check(&full, &CodeSpec::new(n, Family::Vt { a: 0 }).unwrap()).unwrap());
}

#[test]
fn run_bounded_sizes() {
    for n in 1..=16usize {
        let direct = Word::all(n).filter(|x| x.run_count() <= n.div_ceil(2)).count() as u64;
        let formula: u64 = (0..n.div_ceil(2) as u64).map(|i| 2 * binomial(n as u64 - 1, i)).sum();
        assert_eq!(direct, formula, "n={n}");
        assert!(direct >= 1 << (n - 1));
        assert_eq!(CodeSpec::new(n, Family::RunBounded).unwrap().size().unwrap(), direct);
    }
}

#[test]
fn psi_is_injective() {
    for n in 0..=14 {
        let images: BTreeSet<Word> = Word::all(n).map(|x| psi(&x)).collect();
        assert_eq!(images.len(), 1 << n);
    }
}

#[test]
fn rll_sizes_meet_the_lower_bound() {
    for n in 3..=14usize {
        let p = (n as f64).log2().ceil() as u64 + 3;
        let size = Word::all(n).filter(|x| is_rll(x, p)).count() as u64;
        assert!(size >= 3 << (n - 2), "n={n} P={p} size={size}");
    }
    assert!(CodeSpec::new(8, Family::Rll { p: 6 }).unwrap().size().unwrap() >= 192);
}

#[test]
fn extremal_adjacent_transposition() {
    let x: Word = "010101".parse().unwrap();
    let y: Word = "100101".parse().unwrap();
    assert_eq!(decompose_intersection(&x, &y).unwrap().total, 15);
    let r = intersection_bounds(5).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.extremal_observed, 12);
    assert_eq!(r.details["largest_is_4n_minus_9"], false);
    for n in 5..=10 {
        let r = intersection_bounds(n).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.to_text());
        if n >= 6 {
            assert_eq!(r.extremal_observed, 4 * n as u64 - 9);
        }
        // (r(a), r(b)) in {(0, n-2), (n-2, 0)}: four pairs per length
        assert_eq!(r.equality_cases, 4);
        assert_eq!(r.pairs_checked, (1u64 << n) * ((1u64 << n) - 1) / 2);
    }
}

#[test]
fn sampled_seven_subsets_decode_uniquely() {
    let n = 8;
    let (spec, _) = best_coset(CosetFamily::Cl, n).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for x in members(spec) {
        let ball = ds_ball(&x).unwrap().into_vec();
        if ball.len() < 7 {
            continue;
        }
        for _ in 0..50 {
            let reads: Vec<Word> = sample(&mut rng, ball.len(), 7).into_iter().map(|i| ball[i]).collect();
            let result = decode(&spec, 7, &ReadBundle::new(n, reads).unwrap()).unwrap();
            assert_eq!(result.status, DecodeStatus::Unique);
            assert_eq!(result.candidates, vec![x]);
        }
    }
}
