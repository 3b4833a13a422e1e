//! Ball sizes and the structure of single-kind intersections.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::Result;
use crate::error_balls::{
    classify_pair, constrained_deletion_matches, deletion_ball, run_deletions, substitution_ball, ds_ball,
    BallSet,
};
use crate::sequences::{common_affixes, Word};

use super::{check_exhaustive_len, BoundKind, Tally, VerificationReport};

fn par_words<F>(n: usize, visit: F) -> Tally
where
    F: Fn(&Word, &mut Tally) + Sync,
{
    (0..1u64 << n)
        .into_par_iter()
        .fold(Tally::default, |mut t, bits| {
            visit(&Word::from_bits(bits, n), &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

/// Runs counted symbol by symbol.
fn count_runs(x: &Word) -> usize {
    let s: Vec<u8> = x.symbols().collect();
    s.iter().enumerate().filter(|&(i, v)| i == 0 || s[i - 1] != *v).count()
}

/// `|D(x)| = r(x)`, `|S(x)| = n + 1` and the one-deletion-one-flip ball,
/// each against a naive enumeration.
pub fn ball_sizes(n: usize) -> Result<VerificationReport> {
    check_exhaustive_len(n, 20)?;
    if n == 0 {
        return Ok(VerificationReport::skipped("ball-sizes", n, "needs n >= 1"));
    }
    let tally = par_words(n, |x, t| {
        let naive_del: BTreeSet<Word> = (1..=n).map(|i| x.delete(i)).collect();
        let naive_sub: BTreeSet<Word> = std::iter::once(*x).chain((1..=n).map(|i| x.flip(i))).collect();
        let runs = count_runs(x);
        let del = deletion_ball(x).expect("nonempty");
        let sub = substitution_ball(x);
        t.checked += 1;
        t.observe(del.len() as u64);
        t.check(del.len() == runs && naive_del.len() == runs, &[*x], || {
            format!("|D(x)| = {} (naive {}), r(x) = {runs}", del.len(), naive_del.len())
        });
        t.check(del.iter().copied().eq(naive_del.iter().copied()), &[*x], || {
            "deletion ball differs from naive enumeration".into()
        });
        t.check(sub.len() == n + 1 && sub.iter().copied().eq(naive_sub.iter().copied()), &[*x], || {
            format!("|S(x)| = {}, expected {}", sub.len(), n + 1)
        });
        if n <= 12 {
            let mut naive_ds = BTreeSet::new();
            for z in &naive_del {
                naive_ds.insert(*z);
                for k in 1..n {
                    naive_ds.insert(z.flip(k));
                }
            }
            let ds = ds_ball(x).expect("nonempty");
            t.check(ds.iter().copied().eq(naive_ds.iter().copied()), &[*x], || {
                "one-deletion-one-flip ball differs from naive enumeration".into()
            });
        }
        if del.len() == n {
            t.equality_cases += 1;
        }
    });
    Ok(VerificationReport::from_tally("ball-sizes", n, n as u64, BoundKind::AtMost, tally))
}

/// Deleting from the `i`-th and `j`-th run gives words at Hamming distance
/// `j - i`, and every position of a run gives the same word.
pub fn del_positions(n: usize) -> Result<VerificationReport> {
    check_exhaustive_len(n, 20)?;
    if n == 0 {
        return Ok(VerificationReport::skipped("del-positions", n, "needs n >= 1"));
    }
    let tally = par_words(n, |x, t| {
        let by_run = run_deletions(x);
        t.checked += 1;
        let mut pos = 1;
        for (i, zi) in by_run.iter().enumerate() {
            let sym = x.get(pos);
            while pos <= n && x.get(pos) == sym {
                t.check(x.delete(pos) == *zi, &[*x], || {
                    format!("deleting position {pos} differs from deleting run {}", i + 1)
                });
                pos += 1;
            }
            for (j, zj) in by_run.iter().enumerate().skip(i + 1) {
                let d = zi.hamming(zj);
                t.observe(d as u64);
                t.check(d == j - i, &[*x], || {
                    format!("d_H(x[{}], x[{}]) = {d}, expected {}", i + 1, j + 1, j - i)
                });
            }
        }
        t.check(pos == n + 1, &[*x], || "runs do not cover the word".into());
        if by_run.len() == n {
            t.equality_cases += 1;
        }
    });
    Ok(VerificationReport::from_tally(
        "del-positions",
        n,
        n as u64 - 1,
        BoundKind::AtMost,
        tally,
    ))
}

/// `F = {z in D(v) : d_H(z, u) <= 1}` has at most three members, and three
/// only when `u` is one of them. Exhaustive over `u` of length `n` and `v` of
/// length `n + 1`.
pub fn constrained_deletion(n: usize) -> Result<VerificationReport> {
    check_exhaustive_len(n, 12)?;
    if n == 0 {
        return Ok(VerificationReport::skipped("constrained-deletion", n, "needs n >= 1"));
    }
    let tally = par_words(n + 1, |v, t| {
        let naive_del: BTreeSet<Word> = (1..=n + 1).map(|i| v.delete(i)).collect();
        for u in Word::all(n) {
            let f = constrained_deletion_matches(&u, v).expect("lengths match");
            let naive = naive_del.iter().filter(|z| z.hamming(&u) <= 1).count();
            t.checked += 1;
            t.observe(f.len() as u64);
            t.check(f.len() == naive, &[u, *v], || {
                format!("|F| = {} but naive count is {naive}", f.len())
            });
            t.check(f.len() <= 3, &[u, *v], || format!("|F| = {}", f.len()));
            if f.len() == 3 {
                t.equality_cases += 1;
                t.check(f.contains(&u), &[u, *v], || "|F| = 3 without u in F".into());
            }
        }
    });
    Ok(VerificationReport::from_tally(
        "constrained-deletion",
        n,
        3,
        BoundKind::AtMost,
        tally,
    ))
}

fn sorted_runs(x: &Word) -> Vec<Word> {
    let mut v = run_deletions(x);
    v.sort_unstable();
    v
}

fn merge_common(a: &[Word], b: &[Word]) -> Vec<Word> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Middles `p`, `q` of the form `ᾱ α c β` and `α c β β̄`.
fn shifted_middles(p: &[u8], q: &[u8]) -> bool {
    let k = p.len();
    if k < 3 || p[0] == p[1] || q[0] != p[1] || q[k - 1] == p[k - 1] {
        return false;
    }
    // q = α c β β̄ with c β = p[2..]
    q[1..k - 1] == p[2..k]
}

fn alternating_complement(p: &[u8], q: &[u8]) -> bool {
    p.len() >= 2
        && p.windows(2).all(|w| w[0] != w[1])
        && p.iter().zip(q).all(|(a, b)| a != b)
}

/// Structure of `S(x, y)` and `D(x, y)` for every pair, against direct ball
/// intersection.
pub fn pair_structure(n: usize) -> Result<VerificationReport> {
    check_exhaustive_len(n, 14)?;
    if n < 2 {
        return Ok(VerificationReport::skipped("pair-structure", n, "needs n >= 2"));
    }
    let dels: Vec<Vec<Word>> = Word::all(n).map(|x| sorted_runs(&x)).collect();
    let subs: Vec<BallSet> = Word::all(n).map(|x| substitution_ball(&x)).collect();
    let count = 1u64 << n;
    let tally = (0..count)
        .into_par_iter()
        .fold(Tally::default, |mut t, i| {
            let x = Word::from_bits(i, n);
            let xs: Vec<u8> = x.symbols().collect();
            for j in i + 1..count {
                let y = Word::from_bits(j, n);
                t.checked += 1;
                let d_common = merge_common(&dels[i as usize], &dels[j as usize]);
                let s_common = subs[i as usize].intersect(&subs[j as usize]);
                let (d, s) = (d_common.len(), s_common.len());
                let pair = [x, y];
                t.observe((d + s) as u64);
                t.count(&format!("d={d},s={s}"));
                t.check(s == 0 || s == 2, &pair, || format!("|S(x,y)| = {s}"));
                t.check(d <= 2, &pair, || format!("|D(x,y)| = {d}"));

                let aff = common_affixes(&x, &y).expect("distinct");
                let h = aff.hamming;
                let (lo, hi) = (aff.first_diff, aff.last_diff);
                let expected_s: Vec<Word> = match h {
                    1 => {
                        let mut v = vec![x, y];
                        v.sort_unstable();
                        v
                    }
                    2 => {
                        let mut v = vec![x.flip(lo), x.flip(hi)];
                        v.sort_unstable();
                        v
                    }
                    _ => Vec::new(),
                };
                t.check(s_common.members() == expected_s.as_slice(), &pair, || {
                    format!("S(x,y) has {s} members, differs from the Hamming-distance description")
                });

                let ys: Vec<u8> = y.symbols().collect();
                let (p, q) = (&xs[lo - 1..hi], &ys[lo - 1..hi]);
                let alt = alternating_complement(p, q);
                t.check((d == 2) == alt, &pair, || {
                    format!("|D(x,y)| = {d} but alternating-complement test says {alt}")
                });
                if h == 1 {
                    t.check(d == 1, &pair, || format!("Hamming distance 1 with |D(x,y)| = {d}"));
                } else {
                    let shifted = !alt && (shifted_middles(p, q) || shifted_middles(q, p));
                    t.check((d == 1) == shifted, &pair, || {
                        format!("|D(x,y)| = {d} but shifted-pair test says {shifted}")
                    });
                }
                if d == 1 {
                    let z = d_common[0];
                    let first = z == x.delete(lo)
                        && z == y.delete(hi)
                        && x.slice(lo, hi) == y.slice(lo - 1, hi - 1);
                    let second = z == x.delete(hi)
                        && z == y.delete(lo)
                        && x.slice(lo - 1, hi - 1) == y.slice(lo, hi);
                    t.check(first || second, &pair, || {
                        format!("the common subsequence {z} is not a deletion at the first or last difference")
                    });
                }
                match classify_pair(&x, &y) {
                    Ok(c) => {
                        t.check(c.d == d && c.s == s, &pair, || "classification sizes differ".into());
                        t.count(c.case_tag.name());
                    }
                    Err(e) => t.fail(&pair, e.to_string()),
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    Ok(VerificationReport::from_tally("pair-structure", n, 4, BoundKind::AtMost, tally))
}
