//! Channel simulation and multi-read decoding.

use std::collections::BTreeSet;
use std::io::BufRead;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codes::CodeSpec;
use crate::error::{Error, Result};
use crate::error_balls::{apply_del_sub, ds_ball, preimage_ball, BallSet};
use crate::sequences::Word;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_2025;

/// Draws one `(del, sub)` pair uniformly, `sub = None` included.
fn draw(x: &Word, rng: &mut ChaCha8Rng) -> Word {
    let n = x.len();
    let del = rng.random_range(1..=n);
    // value 0 stands for no substitution
    let k = rng.random_range(0..n);
    let sub = (k > 0).then_some(k);
    apply_del_sub(x, del, sub).expect("drawn indices are in range")
}

/// One channel output for `x`, determined by `seed`.
pub fn channel_sample(x: &Word, seed: u64) -> Result<Word> {
    if x.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(draw(x, &mut rng))
}

/// `count` consecutive channel outputs from one seeded stream.
pub fn channel_samples(x: &Word, count: usize, seed: u64) -> Result<Vec<Word>> {
    if x.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| draw(x, &mut rng)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReadBundle {
    pub n: usize,
    pub reads: BallSet,
}

impl ReadBundle {
    pub fn new(n: usize, reads: Vec<Word>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        if let Some(bad) = reads.iter().find(|r| r.len() + 1 != n) {
            return Err(Error::LengthMismatch {
                expected: n - 1,
                found: bad.len(),
            });
        }
        Ok(ReadBundle {
            n,
            reads: BallSet::from_words(n - 1, reads),
        })
    }

    pub fn len(&self) -> usize {
        self.reads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reads.is_empty()
    }

    /// `# n=<n> N=<N>` followed by one read per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("# n={} N={}\n", self.n, self.reads.len());
        for r in &self.reads {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_reader(input: impl BufRead) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty read bundle".into()))?
            .map_err(|e| Error::Parse(e.to_string()))?;
        let body = header
            .trim()
            .strip_prefix('#')
            .ok_or_else(|| Error::Parse("read bundle must start with '# n=<n> N=<N>'".into()))?;
        let (mut n, mut count) = (None, None);
        for field in body.split_whitespace() {
            let (k, v) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("malformed header field {field:?}")))?;
            let v: usize = v
                .parse()
                .map_err(|_| Error::Parse(format!("bad value for {k}: {v:?}")))?;
            match k {
                "n" => n = Some(v),
                "N" => count = Some(v),
                other => return Err(Error::Parse(format!("unknown header field {other:?}"))),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("header lacks n".into()))?;
        let mut reads = Vec::new();
        for line in lines {
            let line = line.map_err(|e| Error::Parse(e.to_string()))?;
            let line = line.trim();
            if !line.is_empty() {
                reads.push(line.parse::<Word>()?);
            }
        }
        let bundle = ReadBundle::new(n, reads)?;
        if let Some(count) = count {
            if count != bundle.len() {
                return Err(Error::Parse(format!(
                    "header announces {count} reads, found {} distinct",
                    bundle.len()
                )));
            }
        }
        Ok(bundle)
    }
}

/// `count` distinct channel outputs of `x`, drawing until enough new ones appear.
pub fn collect_reads(x: &Word, count: usize, seed: u64) -> Result<ReadBundle> {
    if x.is_empty() {
        return Err(Error::EmptyWord);
    }
    let ball = ds_ball(x)?.len();
    if ball < count {
        return Err(Error::BallTooSmall {
            ball,
            requested: count,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    while seen.len() < count {
        seen.insert(draw(x, &mut rng));
    }
    ReadBundle::new(x.len(), seen.into_iter().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DecodeStatus {
    Unique,
    Ambiguous,
    Inconsistent,
}

impl DecodeStatus {
    pub fn name(&self) -> &'static str {
        match self {
            DecodeStatus::Unique => "UNIQUE",
            DecodeStatus::Ambiguous => "AMBIGUOUS",
            DecodeStatus::Inconsistent => "INCONSISTENT",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    pub candidates: Vec<Word>,
    /// Fewer reads than the code's design `N` were supplied.
    pub short_of_design: bool,
}

impl DecodeResult {
    fn from_candidates(candidates: Vec<Word>, short_of_design: bool) -> Self {
        let status = match candidates.len() {
            0 => DecodeStatus::Inconsistent,
            1 => DecodeStatus::Unique,
            _ => DecodeStatus::Ambiguous,
        };
        DecodeResult {
            status,
            candidates,
            short_of_design,
        }
    }
}

fn check_bundle(spec: &CodeSpec, bundle: &ReadBundle) -> Result<()> {
    spec.validate()?;
    if bundle.n != spec.n {
        return Err(Error::LengthMismatch {
            expected: spec.n,
            found: bundle.n,
        });
    }
    Ok(())
}

/// Codewords whose ball contains every read. `design_reads` is the `N` the
/// code was built for; it is only used to flag short bundles.
pub fn decode(spec: &CodeSpec, design_reads: usize, bundle: &ReadBundle) -> Result<DecodeResult> {
    check_bundle(spec, bundle)?;
    let short = bundle.len() < design_reads;
    let mut reads = bundle.reads.iter();
    let Some(first) = reads.next() else {
        return Ok(DecodeResult::from_candidates(spec.members()?, short));
    };
    let mut candidates = preimage_ball(first, spec.n)?;
    for z in reads {
        if candidates.is_empty() {
            break;
        }
        candidates = candidates.intersect(&preimage_ball(z, spec.n)?);
    }
    let members = candidates
        .into_vec()
        .into_iter()
        .filter(|c| spec.contains_unchecked(c))
        .collect();
    Ok(DecodeResult::from_candidates(members, short))
}

/// Whole-code scan; slower reference for [`decode`].
pub fn decode_by_scan(spec: &CodeSpec, design_reads: usize, bundle: &ReadBundle) -> Result<DecodeResult> {
    check_bundle(spec, bundle)?;
    let mut out = Vec::new();
    for c in spec.enumerate()? {
        let ball = ds_ball(&c)?;
        if bundle.reads.is_subset(&ball) {
            out.push(c);
        }
    }
    Ok(DecodeResult::from_candidates(out, bundle.len() < design_reads))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::Family;
    use crate::error_balls::substitution_ball;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn sample_stays_in_ball() {
        for seed in 0..50 {
            let z = channel_sample(&w("00"), seed).unwrap();
            assert!(z == w("0") || z == w("1"));
        }
        assert_eq!(channel_sample(&Word::empty(), 1), Err(Error::EmptyWord));
    }

    #[test]
    fn sample_is_reproducible() {
        let x = w("010101");
        let a = channel_sample(&x, DEFAULT_SEED).unwrap();
        assert_eq!(a, channel_sample(&x, DEFAULT_SEED).unwrap());
        assert!(ds_ball(&x).unwrap().contains(&a));
    }

    #[test]
    fn sample_support_is_the_ball() {
        let x = w("0110");
        let support = BallSet::from_words(3, channel_samples(&x, 10_000, 7).unwrap());
        assert_eq!(support, ds_ball(&x).unwrap());
    }

    #[test]
    fn collect_examples() {
        let x = w("0000");
        let bundle = collect_reads(&x, 4, 3).unwrap();
        assert_eq!(bundle.reads, substitution_ball(&w("000")));
        assert_eq!(
            collect_reads(&x, 5, 3),
            Err(Error::BallTooSmall {
                ball: 4,
                requested: 5
            })
        );
        assert!(collect_reads(&x, 0, 3).unwrap().is_empty());
    }

    #[test]
    fn bundle_text_round_trip() {
        let bundle = collect_reads(&w("0110101"), 5, 11).unwrap();
        let text = bundle.to_text();
        assert!(text.starts_with("# n=7 N=5\n"));
        assert_eq!(ReadBundle::from_reader(text.as_bytes()).unwrap(), bundle);
        assert!(ReadBundle::from_reader("# n=7 N=2\n010101\n".as_bytes()).is_err());
    }

    #[test]
    fn decode_inconsistent() {
        let spec = CodeSpec::new(6, Family::Vt { a: 0 }).unwrap();
        // "11111" lies only in the balls of words with weight at least four
        let bundle = ReadBundle::new(6, vec![w("11111"), w("00000")]).unwrap();
        let r = decode(&spec, 2, &bundle).unwrap();
        assert_eq!(r.status, DecodeStatus::Inconsistent);
        assert!(r.candidates.is_empty());
    }

    #[test]
    fn decode_ambiguous_on_full_space() {
        let spec = CodeSpec::new(6, Family::Full).unwrap();
        let (x, y) = (w("011010"), w("101010"));
        let common = ds_ball(&x).unwrap().intersect(&ds_ball(&y).unwrap());
        let z = common.members()[0];
        let r = decode(&spec, 1, &ReadBundle::new(6, vec![z]).unwrap()).unwrap();
        assert_eq!(r.status, DecodeStatus::Ambiguous);
        assert!(r.candidates.contains(&x) && r.candidates.contains(&y));
    }

    #[test]
    fn decode_matches_scan() {
        let spec = CodeSpec::new(8, Family::Vt { a: 3 }).unwrap();
        for (i, x) in spec.members().unwrap().into_iter().enumerate().take(10) {
            let bundle = collect_reads(&x, 4, i as u64).unwrap();
            let fast = decode(&spec, 31, &bundle).unwrap();
            assert_eq!(fast, decode_by_scan(&spec, 31, &bundle).unwrap());
            assert!(fast.candidates.contains(&x));
        }
    }

    #[test]
    fn decode_rejects_wrong_length() {
        let spec = CodeSpec::new(6, Family::Full).unwrap();
        let bundle = ReadBundle::new(5, vec![w("0000")]).unwrap();
        assert!(matches!(
            decode(&spec, 1, &bundle),
            Err(Error::LengthMismatch { .. })
        ));
    }
}
