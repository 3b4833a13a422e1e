//! Per-shape claims about the pieces of `B(x, y)`.
//!
//! Each claim is checked against the measured decomposition of one pair.
//! Table rows are stored as data keyed by the last run of `a` and the first
//! run of `b`, both read relative to the shape's `α`.

use serde::Serialize;

use crate::error::Result;
use crate::error_balls::{
    deletion_ball, substitution_ball, CaseTag, IntersectionDecomposition, PairClassification, PairShape,
};
use crate::sequences::Word;

use super::Tally;

/// The boundary run of an affix, relative to a fixed symbol `α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunSide {
    /// The affix is empty.
    Empty,
    /// The run consists of `α`.
    Same,
    /// The run consists of `ᾱ`.
    Other,
}

impl RunSide {
    fn of(symbol: Option<u8>, alpha: u8) -> RunSide {
        match symbol {
            None => RunSide::Empty,
            Some(s) if s == alpha => RunSide::Same,
            Some(_) => RunSide::Other,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            RunSide::Empty => "ε",
            RunSide::Same => "α",
            RunSide::Other => "ᾱ",
        }
    }
}

use RunSide::{Empty, Other, Same};

/// Run counts of `a α α b` and `a ᾱ ᾱ b` as offsets from `r(a) + r(b)`.
pub const DOUBLED_RUN_TABLE: [(RunSide, RunSide, i64, i64); 8] = [
    (Empty, Same, 0, 1),
    (Empty, Other, 1, 0),
    (Same, Same, -1, 1),
    (Same, Other, 0, 0),
    (Same, Empty, 0, 1),
    (Other, Same, 0, 0),
    (Other, Other, 1, -1),
    (Other, Empty, 1, 0),
];

/// Run counts of `a α^(ℓ+1) b` and `a ᾱ α^(ℓ-1) ᾱ b` as offsets from
/// `r(a) + r(b)`.
pub const SHIFTED_RUN_TABLE: [(RunSide, RunSide, i64, i64); 9] = [
    (Empty, Empty, 1, 3),
    (Empty, Same, 0, 3),
    (Empty, Other, 1, 2),
    (Same, Same, -1, 3),
    (Same, Other, 0, 2),
    (Same, Empty, 0, 3),
    (Other, Same, 0, 2),
    (Other, Other, 1, 1),
    (Other, Empty, 1, 2),
];

fn lookup(table: &[(RunSide, RunSide, i64, i64)], last: RunSide, first: RunSide) -> Option<(i64, i64)> {
    table
        .iter()
        .find(|row| row.0 == last && row.1 == first)
        .map(|row| (row.2, row.3))
}

/// Run data of the affixes `a`, `b` relative to `α`.
#[derive(Debug, Clone, Copy)]
struct Affixes {
    ra: usize,
    rb: usize,
    last_a: RunSide,
    first_b: RunSide,
    a_has: [bool; 2],
    b_has: [bool; 2],
}

impl Affixes {
    fn new(a: &Word, b: &Word, alpha: u8) -> Self {
        let has = |w: &Word| {
            let ones = w.weight();
            [ones < w.len(), ones > 0]
        };
        let a_has = has(a);
        let b_has = has(b);
        Affixes {
            ra: a.run_count(),
            rb: b.run_count(),
            last_a: RunSide::of((!a.is_empty()).then(|| a.get(a.len())), alpha),
            first_b: RunSide::of((!b.is_empty()).then(|| b.get(1)), alpha),
            a_has: if alpha == 0 { a_has } else { [a_has[1], a_has[0]] },
            b_has: if alpha == 0 { b_has } else { [b_has[1], b_has[0]] },
        }
    }

    fn r(&self) -> i64 {
        (self.ra + self.rb) as i64
    }

    /// `1 + [a has a ᾱ-run] + [b has a ᾱ-run]`, or the `α` version.
    fn near_count(&self, other_symbol: bool) -> usize {
        let k = usize::from(other_symbol);
        1 + usize::from(self.a_has[k]) + usize::from(self.b_has[k])
    }

    /// The single run of `a` and of `b` carry the same symbol.
    fn same_single_runs(&self) -> bool {
        self.last_a == self.first_b
    }
}

/// Size of `D(u) ∩ S(v)`.
fn del_sub_overlap(u: &Word, v: &Word) -> Result<usize> {
    Ok(deletion_ball(u)?.intersection_len(&substitution_ball(v)))
}

fn sym(s: u8) -> Word {
    Word::from_bits(u64::from(s), 1)
}

fn cat(parts: &[Word]) -> Word {
    parts.iter().fold(Word::empty(), |acc, p| acc.concat(p))
}

struct Checker<'a> {
    tally: &'a mut Tally,
    words: [Word; 2],
    tag: &'static str,
}

impl Checker<'_> {
    fn eq(&mut self, claim: &str, expected: i64, actual: usize) {
        let words = self.words;
        let tag = self.tag;
        self.tally.check(expected == actual as i64, &words, || {
            format!("{tag} {claim}: expected {expected}, measured {actual}")
        });
    }

    fn at_most(&mut self, claim: &str, bound: i64, actual: usize) {
        let words = self.words;
        let tag = self.tag;
        self.tally.check(actual as i64 <= bound, &words, || {
            format!("{tag} {claim}: {actual} exceeds {bound}")
        });
    }

    fn within(&mut self, claim: &str, lo: i64, hi: i64, actual: usize) {
        let words = self.words;
        let tag = self.tag;
        let a = actual as i64;
        self.tally.check(lo <= a && a <= hi, &words, || {
            format!("{tag} {claim}: {actual} outside [{lo}, {hi}]")
        });
    }
}

/// `|D ∩ S|` for the two doubled shapes, indexed by `(r(a), r(b))` regime.
fn overlap_by_regime(ra: usize, rb: usize, base: i64) -> i64 {
    let lo = ra.min(rb);
    let hi = ra.max(rb);
    base + match (lo, hi) {
        (0, 1) => 0,
        (0, _) | (1, 1) => 1,
        (1, _) => 2,
        _ => 3,
    }
}

/// Checks every claim that applies to the pair's shape. Returns the number of
/// individual assertions made.
pub fn check_claims(
    classification: &PairClassification,
    sizes: &IntersectionDecomposition,
    tally: &mut Tally,
) -> Result<u64> {
    let (x, y) = classification.shape.words();
    let n = x.len() as i64;
    let rxy = (x.run_count() + y.run_count()) as i64;
    let mut c = Checker {
        tally,
        words: [x, y],
        tag: classification.case_tag.name(),
    };
    let mut asserted = 0u64;
    let mut count = |k: u64| asserted += k;

    c.eq("identity total", (sizes.size_b_extra + sizes.size_d + sizes.size_s) as i64 - sizes.size_overlap as i64, sizes.total);
    count(1);

    match classification.shape {
        PairShape::AdjacentTransposition { a, alpha, b } => {
            let f = Affixes::new(&a, &b, alpha);
            let nal = 1 - alpha;
            c.eq("|S| = 2n-2", 2 * n - 2, sizes.size_s);
            count(1);
            if f.r() >= 1 {
                let aa = cat(&[a, sym(alpha), sym(alpha), b]);
                let nn = cat(&[a, sym(nal), sym(nal), b]);
                if let Some((oa, on)) = lookup(&DOUBLED_RUN_TABLE, f.last_a, f.first_b) {
                    c.eq("r(a α α b)", f.r() + oa, aa.run_count());
                    c.eq("r(a ᾱ ᾱ b)", f.r() + on, nn.run_count());
                    count(2);
                }
                let empty_side = f.ra == 0 || f.rb == 0;
                let d = 2 * f.r() + i64::from(empty_side);
                c.eq("|D|", d, sizes.size_d);
                c.eq("|D ∩ S|", overlap_by_regime(f.ra, f.rb, 3), sizes.size_overlap);
                let f1 = del_sub_overlap(&aa, &cat(&[a, sym(alpha), b]))?;
                let f2 = del_sub_overlap(&nn, &cat(&[a, sym(nal), b]))?;
                c.eq("|D(a α α b) ∩ S(a α b)|", f.near_count(true) as i64, f1);
                c.eq("|D(a ᾱ ᾱ b) ∩ S(a ᾱ b)|", f.near_count(false) as i64, f2);
                c.eq("f = |D ∩ S|", (f1 + f2) as i64, sizes.size_overlap);
                let extra = match (f.ra, f.rb) {
                    (0, _) | (_, 0) => 0,
                    (1, 1) => i64::from(f.same_single_runs()),
                    (1, _) | (_, 1) => 1,
                    _ => 2,
                };
                c.eq("|B extra|", extra, sizes.size_b_extra);
                count(7);
            }
            if n >= 5 {
                c.at_most("total <= 4n-9", 4 * n - 9, sizes.total);
                count(1);
            }
        }
        PairShape::SingleFlip { a, alpha, b } => {
            let f = Affixes::new(&a, &b, alpha);
            c.eq("|S| = n", n, sizes.size_s);
            c.eq("|D| = r(x)+r(y)-1", rxy - 1, sizes.size_d);
            count(2);
            if f.r() >= 1 {
                let empty_side = f.ra == 0 || f.rb == 0;
                c.eq("|D|", 2 * f.r() - i64::from(!empty_side), sizes.size_d);
                c.eq("|D ∩ S|", overlap_by_regime(f.ra, f.rb, 2), sizes.size_overlap);
                let ab = a.concat(&b);
                let g1 = del_sub_overlap(&cat(&[a, sym(alpha), b]), &ab)?;
                let g2 = del_sub_overlap(&cat(&[a, sym(1 - alpha), b]), &ab)?;
                c.eq("|D(a α b) ∩ S(a b)|", f.near_count(true) as i64, g1);
                c.eq("|D(a ᾱ b) ∩ S(a b)|", f.near_count(false) as i64, g2);
                c.eq("g = |D ∩ S|", (g1 + g2) as i64 - 1, sizes.size_overlap);
                let extra = match (f.ra, f.rb) {
                    (0, _) | (_, 0) => 0,
                    (1, 1) => i64::from(!f.same_single_runs()),
                    (1, _) | (_, 1) => 1,
                    _ => 2,
                };
                c.eq("|B extra|", extra, sizes.size_b_extra);
                count(6);
            }
            c.at_most("total <= r(x)+r(y)+n-1", rxy + n - 1, sizes.total);
            count(1);
            if n >= 4 {
                c.at_most("total <= 3n-5", 3 * n - 5, sizes.total);
                count(1);
            }
        }
        PairShape::RunShift { a, alpha, ell, b, .. } => {
            let f = Affixes::new(&a, &b, alpha);
            let nal = 1 - alpha;
            let run = |len: usize| Word::repeat(alpha, len);
            let long = cat(&[a, run(ell + 1), b]);
            let framed = cat(&[a, sym(nal), run(ell - 1), sym(nal), b]);
            let centre = cat(&[a, run(ell), b]);
            c.eq("|S| = n", n, sizes.size_s);
            c.eq("|D| = r(x)+r(y)", rxy, sizes.size_d);
            count(2);
            let (oa, on) = lookup(&SHIFTED_RUN_TABLE, f.last_a, f.first_b).expect("table covers every row");
            c.eq("r(a α^(ℓ+1) b)", f.r() + oa, long.run_count());
            c.eq("r(a ᾱ α^(ℓ-1) ᾱ b)", f.r() + on, framed.run_count());
            let d = match (f.ra, f.rb) {
                (0, 0) => 4,
                (0, _) | (_, 0) => 2 * f.r() + 3,
                _ => 2 * f.r() + 2,
            };
            c.eq("|D|", d, sizes.size_d);
            c.within("|D ∩ S|", 3, 5, sizes.size_overlap);
            if f.ra >= 2 || f.rb >= 2 {
                c.within("|D ∩ S| with a long affix", 4, 5, sizes.size_overlap);
            }
            let near = del_sub_overlap(&long, &centre)?;
            let framed_near = del_sub_overlap(&framed, &centre)?;
            c.eq("|D(a α^(ℓ+1) b) ∩ S(a α^ℓ b)|", f.near_count(true) as i64, near);
            c.eq("|D(a ᾱ α^(ℓ-1) ᾱ b) ∩ S(a α^ℓ b)|", 2, framed_near);
            c.eq("|D ∩ S| split", (near + framed_near) as i64, sizes.size_overlap);
            let both_alpha = f.a_has[0] && f.b_has[0];
            c.eq("|B extra|", i64::from(both_alpha), sizes.size_b_extra);
            count(9);
            if n >= 6 {
                c.at_most("total <= 3n-7", 3 * n - 7, sizes.total);
                c.at_most("total <= r(x)+r(y)+n-2", rxy + n - 2, sizes.total);
                count(2);
            }
        }
        PairShape::AlternatingBlock { c: block, .. } => {
            c.eq("|D| = 0", 0, sizes.size_d);
            let s = if block.len() >= 4 { 2 * n } else { 2 * n - 2 };
            c.eq("|S|", s, sizes.size_s);
            c.at_most("|B extra| <= 8", 8, sizes.size_b_extra);
            c.at_most("total <= 2n+8", 2 * n + 8, sizes.total);
            count(4);
        }
        PairShape::TwoFlips { .. } => {
            c.eq("|S| = 0", 0, sizes.size_s);
            c.at_most("|D| <= 2n", 2 * n, sizes.size_d);
            c.at_most("|D| <= r(x)+r(y)+4", rxy + 4, sizes.size_d);
            c.at_most("|B extra| <= 4", 4, sizes.size_b_extra);
            c.at_most("total <= 2n+4", 2 * n + 4, sizes.total);
            c.at_most("total <= r(x)+r(y)+8", rxy + 8, sizes.total);
            count(6);
        }
        PairShape::ShiftedPair { .. } => {
            c.eq("|D| = 0", 0, sizes.size_d);
            c.eq("|S| = n", n, sizes.size_s);
            c.at_most("|B extra| <= 20", 20, sizes.size_b_extra);
            c.at_most("total <= n+20", n + 20, sizes.total);
            count(4);
        }
        PairShape::Generic { .. } => {
            c.eq("|D| = 0", 0, sizes.size_d);
            c.eq("|S| = 0", 0, sizes.size_s);
            c.at_most("total <= 30", 30, sizes.total);
            count(3);
        }
    }
    Ok(asserted)
}

/// Ceiling on `|B(x, y)|` for the shape, when the length allows one.
pub(crate) fn total_ceiling(tag: CaseTag, n: usize, rxy: usize) -> Option<usize> {
    let n_i = n as i64;
    let r = rxy as i64;
    let v = match tag {
        CaseTag::AdjacentTransposition if n >= 5 => 4 * n_i - 9,
        CaseTag::SingleFlip if n >= 4 => (3 * n_i - 5).min(r + n_i - 1),
        CaseTag::SingleFlip => r + n_i - 1,
        CaseTag::RunShift if n >= 6 => (3 * n_i - 7).min(r + n_i - 2),
        CaseTag::AlternatingBlock => 2 * n_i + 8,
        CaseTag::TwoFlips => (2 * n_i + 4).min(r + 8),
        CaseTag::ShiftedPair => n_i + 20,
        CaseTag::Generic => 30,
        _ => return None,
    };
    Some(v.max(0) as usize)
}
