//! Property tests. Oracles work on plain `Vec<u8>` symbol strings and share
//! no code with the bit-packed implementation.

use std::collections::BTreeSet;

use dsrecon::codes::{CodeSpec, Family};
use dsrecon::error_balls::{
    apply_del_sub, ball_intersection, classify_pair, decompose_intersection, deletion_ball, ds_ball, preimage_ball,
    substitution_ball, witnesses, BallKind, BallSet,
};
use dsrecon::reconstruct::{channel_sample, collect_reads, decode};
use dsrecon::sequences::{
    common_affixes, inversion_number, max_le2_periodic_length, psi, psi_inverse, runs, vt_syndrome,
};
use dsrecon::Word;
use proptest::prelude::*;

type Syms = Vec<u8>;

fn syms(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Syms> {
    prop::collection::vec(0u8..2, len)
}

fn word(s: &[u8]) -> Word {
    Word::from_symbols(s).unwrap()
}

fn text(s: &[u8]) -> String {
    s.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect()
}

fn delete(s: &[u8], i: usize) -> Syms {
    let mut v = s.to_vec();
    v.remove(i);
    v
}

fn flip(s: &[u8], i: usize) -> Syms {
    let mut v = s.to_vec();
    v[i] ^= 1;
    v
}

fn naive_del(s: &[u8]) -> BTreeSet<Syms> {
    (0..s.len()).map(|i| delete(s, i)).collect()
}

fn naive_sub(s: &[u8]) -> BTreeSet<Syms> {
    std::iter::once(s.to_vec()).chain((0..s.len()).map(|i| flip(s, i))).collect()
}

fn naive_ds(s: &[u8]) -> BTreeSet<Syms> {
    naive_del(s).iter().flat_map(|z| naive_sub(z)).collect()
}

fn as_syms(b: &BallSet) -> BTreeSet<Syms> {
    b.iter().map(|w| w.symbols().collect()).collect()
}

fn naive_runs(s: &[u8]) -> usize {
    (0..s.len()).filter(|&i| i == 0 || s[i] != s[i - 1]).count()
}

fn naive_inversions(s: &[u8]) -> u64 {
    let mut k = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] > s[j] {
                k += 1;
            }
        }
    }
    k
}

fn naive_periodic(s: &[u8]) -> usize {
    let n = s.len();
    let mut best = n.min(2);
    for l in 0..n {
        for r in l + 2..n {
            if (l..=r - 2).all(|k| s[k] == s[k + 2]) {
                best = best.max(r - l + 1);
            }
        }
    }
    best
}

fn pair(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (Syms, Syms)> {
    syms(len)
        .prop_flat_map(|x| {
            let n = x.len();
            (Just(x), syms(n..=n))
        })
        .prop_filter("distinct", |(x, y)| x != y)
}

/// Pairs biased towards small Hamming distance, where the balls overlap.
fn close_pair(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (Syms, Syms)> {
    syms(len)
        .prop_flat_map(|x| {
            let n = x.len();
            (Just(x), prop::collection::vec(0..n, 1..=3))
        })
        .prop_map(|(x, flips)| {
            let mut y = x.clone();
            for i in flips {
                y[i] ^= 1;
            }
            (x, y)
        })
        .prop_filter("distinct", |(x, y)| x != y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn text_round_trip_and_order(a in syms(0..=64), b in syms(0..=64)) {
        let (wa, wb) = (word(&a), word(&b));
        prop_assert_eq!(wa.to_string(), text(&a));
        prop_assert_eq!(text(&a).parse::<Word>().unwrap(), wa);
        if a.len() == b.len() {
            prop_assert_eq!(wa.cmp(&wb), a.cmp(&b));
        }
    }

    #[test]
    fn run_profile_is_consistent(s in syms(0..=64)) {
        let x = word(&s);
        let p = runs(&x);
        prop_assert_eq!(p.run_count, naive_runs(&s));
        prop_assert_eq!(p.boundaries.iter().map(|r| r.length).sum::<usize>(), s.len());
        for w in p.boundaries.windows(2) {
            prop_assert_ne!(w[0].symbol, w[1].symbol);
            prop_assert_eq!(w[0].start + w[0].length, w[1].start);
        }
        prop_assert_eq!(runs(&x.complement()).run_count, p.run_count);
        prop_assert_eq!(runs(&x.reverse()).run_count, p.run_count);
    }

    #[test]
    fn inversions_of_word_and_reverse(s in syms(0..=64)) {
        let x = word(&s);
        let w = x.weight() as u64;
        prop_assert_eq!(inversion_number(&x), naive_inversions(&s));
        prop_assert_eq!(inversion_number(&x) + inversion_number(&x.reverse()), w * (s.len() as u64 - w));
    }

    #[test]
    fn vt_syndromes_match_sums(s in syms(0..=64)) {
        let x = word(&s);
        let one: u64 = s.iter().enumerate().map(|(i, b)| (i as u64 + 1) * u64::from(*b)).sum();
        let two: u64 = s.iter().enumerate().map(|(i, b)| (1..=i as u64 + 1).sum::<u64>() * u64::from(*b)).sum();
        prop_assert_eq!(vt_syndrome(&x, 1).unwrap(), one);
        prop_assert_eq!(vt_syndrome(&x, 2).unwrap(), two);
    }

    #[test]
    fn psi_is_invertible(s in syms(0..=64)) {
        let x = word(&s);
        prop_assert_eq!(psi_inverse(&psi(&x)), x);
        prop_assert_eq!(psi(&psi_inverse(&x)), x);
        let expected: Syms = (0..s.len()).map(|i| s[i] ^ if i == 0 { 0 } else { s[i - 1] }).collect();
        prop_assert_eq!(psi(&x), word(&expected));
    }

    #[test]
    fn periodic_window_matches_scan(s in syms(0..=24)) {
        prop_assert_eq!(max_le2_periodic_length(&word(&s)), naive_periodic(&s));
    }

    #[test]
    fn affixes_cut_the_differing_span((a, b) in pair(1..=64)) {
        let d = common_affixes(&word(&a), &word(&b)).unwrap();
        let diffs: Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
        prop_assert_eq!(d.hamming, diffs.len());
        prop_assert_eq!(d.first_diff, diffs[0] + 1);
        prop_assert_eq!(d.last_diff, diffs[diffs.len() - 1] + 1);
        prop_assert_eq!(d.prefix, word(&a[..diffs[0]]));
        prop_assert_eq!(d.suffix, word(&b[diffs[diffs.len() - 1] + 1..]));
        prop_assert!(d.prefix.len() + d.suffix.len() < a.len());
    }

    #[test]
    fn balls_match_direct_edits(s in syms(1..=40)) {
        let x = word(&s);
        prop_assert_eq!(as_syms(&deletion_ball(&x).unwrap()), naive_del(&s));
        prop_assert_eq!(as_syms(&substitution_ball(&x)), naive_sub(&s));
        let ds = ds_ball(&x).unwrap();
        prop_assert_eq!(as_syms(&ds), naive_ds(&s));
        prop_assert!(ds.len() <= naive_runs(&s) * s.len());
        prop_assert!(ds.members().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn applied_edits_land_in_the_ball(s in syms(2..=40), del in 0usize..40, sub in 0usize..40) {
        let x = word(&s);
        let n = s.len();
        let (del, sub) = (del % n + 1, sub % n);
        let sub = (sub > 0).then_some(sub);
        let z = apply_del_sub(&x, del, sub).unwrap();
        let mut expected = delete(&s, del - 1);
        if let Some(k) = sub {
            expected = flip(&expected, k - 1);
        }
        prop_assert_eq!(z, word(&expected));
        prop_assert!(ds_ball(&x).unwrap().contains(&z));
        prop_assert!(witnesses(&x, &z).unwrap().iter().any(|w| w.del == del || x.delete(w.del) == x.delete(del)));
    }

    #[test]
    fn witnesses_are_exactly_the_edits(s in syms(1..=16), t in syms(0..=15)) {
        let x = word(&s);
        let mut t = t;
        t.resize(s.len() - 1, 0);
        let z = word(&t);
        let found = witnesses(&x, &z).unwrap();
        let mut expected = Vec::new();
        for i in 0..s.len() {
            let short = delete(&s, i);
            if short == t {
                expected.push((i + 1, None));
            }
            for k in 0..short.len() {
                if flip(&short, k) == t {
                    expected.push((i + 1, Some(k + 1)));
                }
            }
        }
        let got: Vec<(usize, Option<usize>)> = found.iter().map(|w| (w.del, w.sub)).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn preimage_is_the_inverse_ball(w in syms(1..=10), t in syms(0..=9)) {
        let mut t = t;
        t.resize(w.len() - 1, 0);
        let z = word(&t);
        let pre = preimage_ball(&z, w.len()).unwrap();
        prop_assert_eq!(pre.contains(&word(&w)), naive_ds(&w).contains(&t));
    }

    #[test]
    fn intersections_match_set_algebra((a, b) in close_pair(1..=20)) {
        let (x, y) = (word(&a), word(&b));
        let del: BTreeSet<Syms> = naive_del(&a).intersection(&naive_del(&b)).cloned().collect();
        let sub: BTreeSet<Syms> = naive_sub(&a).intersection(&naive_sub(&b)).cloned().collect();
        let ds: BTreeSet<Syms> = naive_ds(&a).intersection(&naive_ds(&b)).cloned().collect();
        prop_assert_eq!(as_syms(&ball_intersection(&x, &y, BallKind::Del).unwrap()), del.clone());
        prop_assert_eq!(as_syms(&ball_intersection(&x, &y, BallKind::Sub).unwrap()), sub.clone());
        prop_assert_eq!(as_syms(&ball_intersection(&x, &y, BallKind::Ds).unwrap()), ds.clone());

        let c = classify_pair(&x, &y).unwrap();
        prop_assert_eq!((c.d, c.s), (del.len(), sub.len()));
        prop_assert!(c.d <= 2 && (c.s == 0 || c.s == 2));
        prop_assert_eq!(c.case_tag.sizes(), (c.d, c.s));
        prop_assert_eq!(c.shape.words(), (x, y));

        let parts = decompose_intersection(&x, &y).unwrap();
        prop_assert!(parts.identity_holds());
        prop_assert_eq!(parts.total, ds.len());
        let s_part: BTreeSet<Syms> = del.iter().flat_map(|z| naive_sub(z)).collect();
        let d_part: BTreeSet<Syms> = sub.iter().flat_map(|z| naive_del(z)).collect();
        prop_assert_eq!(parts.size_s, s_part.len());
        prop_assert_eq!(parts.size_d, d_part.len());
        prop_assert_eq!(parts.size_overlap, s_part.intersection(&d_part).count());
    }

    #[test]
    fn classification_rebuilds_far_pairs((a, b) in pair(1..=48)) {
        let (x, y) = (word(&a), word(&b));
        let c = classify_pair(&x, &y).unwrap();
        prop_assert_eq!(c.shape.words(), (x, y));
        prop_assert_eq!(c.hamming, (0..a.len()).filter(|&i| a[i] != b[i]).count());
    }

    #[test]
    fn set_operations_match_btreeset(a in prop::collection::vec(0u64..64, 0..20), b in prop::collection::vec(0u64..64, 0..20)) {
        let mk = |v: &[u64]| BallSet::from_words(6, v.iter().map(|&k| Word::from_bits(k, 6)).collect());
        let (sa, sb) = (mk(&a), mk(&b));
        let (ta, tb): (BTreeSet<u64>, BTreeSet<u64>) = (a.iter().copied().collect(), b.iter().copied().collect());
        let bits = |s: &BallSet| s.iter().map(|w| w.bits()).collect::<Vec<_>>();
        prop_assert_eq!(bits(&sa.intersect(&sb)), ta.intersection(&tb).copied().collect::<Vec<_>>());
        prop_assert_eq!(bits(&sa.union(&sb)), ta.union(&tb).copied().collect::<Vec<_>>());
        prop_assert_eq!(bits(&sa.difference(&sb)), ta.difference(&tb).copied().collect::<Vec<_>>());
        prop_assert_eq!(sa.intersection_len(&sb), ta.intersection(&tb).count());
        prop_assert_eq!(sa.is_subset(&sb), ta.is_subset(&tb));
    }

    #[test]
    fn membership_matches_constraints(s in syms(2..=20), a in 0u64..400, m in 2u64..7) {
        let x = word(&s);
        let n = s.len() as u64;
        let vt1: u64 = s.iter().enumerate().map(|(i, b)| (i as u64 + 1) * u64::from(*b)).sum();
        let inv = naive_inversions(&s);
        let even: u64 = s.iter().skip(1).step_by(2).map(|&b| u64::from(b)).sum();
        let runs = naive_runs(&s) as u64;
        let check = |family: Family, expected: bool| -> Result<(), TestCaseError> {
            let spec = CodeSpec::new(s.len(), family).unwrap();
            prop_assert_eq!(spec.contains(&x).unwrap(), expected, "{}", spec);
            Ok(())
        };
        check(Family::Vt { a: a % (2 * n) }, vt1 % (2 * n) == a % (2 * n))?;
        check(Family::Inv { a: a % m, m }, inv % m == a % m)?;
        check(Family::VtMod { a: a % m, m }, vt1 % m == a % m)?;
        check(Family::EvenPos { a: a % m, m }, even % m == a % m)?;
        check(Family::RunBounded, runs <= n.div_ceil(2))?;
        let p = 2 * (1 + a % 4);
        check(Family::Rll { p }, naive_periodic(&s) as u64 <= p)?;
        check(Family::C2n9 { a: a % m, m }, runs <= n.div_ceil(2) && inv % m == a % m)?;
    }

    #[test]
    fn channel_output_is_a_ball_member(s in syms(1..=30), seed in any::<u64>()) {
        let x = word(&s);
        let z = channel_sample(&x, seed).unwrap();
        prop_assert_eq!(channel_sample(&x, seed).unwrap(), z);
        prop_assert!(naive_ds(&s).contains(&z.symbols().collect::<Syms>()));
    }

    #[test]
    fn decoding_is_sound_and_complete(s in syms(4..=11), reads in 1usize..6, seed in any::<u64>()) {
        let x = word(&s);
        let ball = naive_ds(&s);
        prop_assume!(ball.len() >= reads);
        let bundle = collect_reads(&x, reads, seed).unwrap();
        prop_assert_eq!(collect_reads(&x, reads, seed).unwrap(), bundle.clone());
        let vt = CodeSpec::new(s.len(), Family::Vt { a: vt_syndrome(&x, 1).unwrap() % (2 * s.len() as u64) }).unwrap();
        let result = decode(&vt, 31, &bundle).unwrap();
        prop_assert!(result.candidates.contains(&x));
        for c in &result.candidates {
            prop_assert!(vt.contains(c).unwrap());
            let cb = ds_ball(c).unwrap();
            prop_assert!(bundle.reads.iter().all(|z| cb.contains(z)));
        }
    }
}
