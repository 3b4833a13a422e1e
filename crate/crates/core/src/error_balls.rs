//! Deletion, substitution and deletion+substitution balls, their pairwise
//! intersections, and the structural classification of word pairs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequences::{common_affixes, Word};

/// A sorted, duplicate-free set of equal-length words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BallSet {
    word_length: usize,
    members: Vec<Word>,
}

impl BallSet {
    pub fn empty(word_length: usize) -> Self {
        BallSet {
            word_length,
            members: Vec::new(),
        }
    }

    /// Sorts and deduplicates `members`. Panics if a member has the wrong length.
    pub fn from_words(word_length: usize, mut members: Vec<Word>) -> Self {
        assert!(
            members.iter().all(|w| w.len() == word_length),
            "ball members must all have length {word_length}"
        );
        members.sort_unstable();
        members.dedup();
        BallSet {
            word_length,
            members,
        }
    }

    pub fn word_length(&self) -> usize {
        self.word_length
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Word] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Word> {
        self.members.iter()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.binary_search(w).is_ok()
    }

    pub fn into_vec(self) -> Vec<Word> {
        self.members
    }

    /// Merge-join intersection.
    pub fn intersect(&self, other: &BallSet) -> BallSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        let (a, b) = (&self.members, &other.members);
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
        BallSet {
            word_length: self.word_length,
            members: out,
        }
    }

    /// Size of the intersection without materializing it.
    pub fn intersection_len(&self, other: &BallSet) -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        let (a, b) = (&self.members, &other.members);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    pub fn union(&self, other: &BallSet) -> BallSet {
        let mut members = Vec::with_capacity(self.len() + other.len());
        members.extend_from_slice(&self.members);
        members.extend_from_slice(&other.members);
        BallSet::from_words(self.word_length.max(other.word_length), members)
    }

    pub fn difference(&self, other: &BallSet) -> BallSet {
        BallSet {
            word_length: self.word_length,
            members: self
                .members
                .iter()
                .filter(|w| !other.contains(w))
                .copied()
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &BallSet) -> bool {
        self.members.iter().all(|w| other.contains(w))
    }
}

impl<'a> IntoIterator for &'a BallSet {
    type Item = &'a Word;
    type IntoIter = std::slice::Iter<'a, Word>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BallKind {
    Del,
    Sub,
    Ds,
}

fn ensure_nonempty(x: &Word) -> Result<()> {
    if x.is_empty() {
        Err(Error::EmptyWord)
    } else {
        Ok(())
    }
}

fn ensure_pair(x: &Word, y: &Word) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    if x == y {
        return Err(Error::EqualInputs);
    }
    Ok(())
}

/// `D(x)` listed by run: the i-th entry deletes one symbol of the i-th run.
pub fn run_deletions(x: &Word) -> Vec<Word> {
    let mut out = Vec::with_capacity(x.run_count());
    for i in 1..=x.len() {
        if i == 1 || x.get(i) != x.get(i - 1) {
            out.push(x.delete(i));
        }
    }
    out
}

pub fn deletion_ball(x: &Word) -> Result<BallSet> {
    ensure_nonempty(x)?;
    Ok(BallSet::from_words(x.len() - 1, run_deletions(x)))
}

/// All words within Hamming distance one of `x`, including `x`.
pub fn substitution_ball(x: &Word) -> BallSet {
    let mut members = Vec::with_capacity(x.len() + 1);
    members.push(*x);
    members.extend((1..=x.len()).map(|i| x.flip(i)));
    BallSet::from_words(x.len(), members)
}

/// One deletion followed by at most one substitution.
pub fn ds_ball(x: &Word) -> Result<BallSet> {
    ensure_nonempty(x)?;
    let m = x.len() - 1;
    let mut members = Vec::with_capacity(x.run_count() * (m + 1));
    for z in run_deletions(x) {
        members.push(z);
        members.extend((1..=m).map(|k| z.flip(k)));
    }
    Ok(BallSet::from_words(m, members))
}

pub fn ball(x: &Word, kind: BallKind) -> Result<BallSet> {
    match kind {
        BallKind::Del => deletion_ball(x),
        BallKind::Sub => Ok(substitution_ball(x)),
        BallKind::Ds => ds_ball(x),
    }
}

/// Deletes position `del`, then flips position `sub` of the shortened word.
/// `None` leaves the shortened word unchanged.
pub fn apply_del_sub(x: &Word, del: usize, sub: Option<usize>) -> Result<Word> {
    let n = x.len();
    if del == 0 || del > n {
        return Err(Error::IndexOutOfRange {
            what: "deletion",
            index: del,
            max: n,
        });
    }
    let shortened = x.delete(del);
    match sub {
        None => Ok(shortened),
        Some(k) if k >= 1 && k < n => Ok(shortened.flip(k)),
        Some(k) => Err(Error::IndexOutOfRange {
            what: "substitution",
            index: k,
            max: n - 1,
        }),
    }
}

pub fn ball_intersection(x: &Word, y: &Word, kind: BallKind) -> Result<BallSet> {
    ensure_pair(x, y)?;
    Ok(ball(x, kind)?.intersect(&ball(y, kind)?))
}

// ---------------------------------------------------------------------------
// Pair classification

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseTag {
    AdjacentTransposition,
    SingleFlip,
    RunShift,
    AlternatingBlock,
    TwoFlips,
    ShiftedPair,
    Generic,
}

impl CaseTag {
    pub const ALL: [CaseTag; 7] = [
        CaseTag::AdjacentTransposition,
        CaseTag::SingleFlip,
        CaseTag::RunShift,
        CaseTag::AlternatingBlock,
        CaseTag::TwoFlips,
        CaseTag::ShiftedPair,
        CaseTag::Generic,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CaseTag::AdjacentTransposition => "ADJACENT_TRANSPOSITION",
            CaseTag::SingleFlip => "SINGLE_FLIP",
            CaseTag::RunShift => "RUN_SHIFT",
            CaseTag::AlternatingBlock => "ALTERNATING_BLOCK",
            CaseTag::TwoFlips => "TWO_FLIPS",
            CaseTag::ShiftedPair => "SHIFTED_PAIR",
            CaseTag::Generic => "GENERIC",
        }
    }

    /// The `(d, s)` intersection sizes this shape occurs with.
    pub fn sizes(&self) -> (usize, usize) {
        match self {
            CaseTag::AdjacentTransposition => (2, 2),
            CaseTag::SingleFlip | CaseTag::RunShift => (1, 2),
            CaseTag::AlternatingBlock => (2, 0),
            CaseTag::TwoFlips => (0, 2),
            CaseTag::ShiftedPair => (1, 0),
            CaseTag::Generic => (0, 0),
        }
    }
}

/// Structural parameters of a pair. `alpha`/`beta` are single symbols;
/// `swapped` records that the pair matched with the roles of `x` and `y`
/// exchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PairShape {
    /// `x = a α ᾱ b`, `y = a ᾱ α b`.
    AdjacentTransposition { a: Word, alpha: u8, b: Word },
    /// `x = a α b`, `y = a ᾱ b`.
    SingleFlip { a: Word, alpha: u8, b: Word },
    /// `x = a α^ℓ ᾱ b`, `y = a ᾱ α^ℓ b`, `ℓ ≥ 2`.
    RunShift {
        a: Word,
        alpha: u8,
        ell: usize,
        b: Word,
        swapped: bool,
    },
    /// `x = a c b`, `y = a c̄ b`, `c` alternating with `|c| ≥ 3`.
    AlternatingBlock { a: Word, c: Word, b: Word },
    /// `x = a α v β b`, `y = a ᾱ v β̄ b`.
    TwoFlips {
        a: Word,
        alpha: u8,
        v: Word,
        beta: u8,
        b: Word,
    },
    /// `x = a ᾱ α c β b`, `y = a α c β β̄ b`.
    ShiftedPair {
        a: Word,
        alpha: u8,
        c: Word,
        beta: u8,
        b: Word,
        swapped: bool,
    },
    /// `x = a α u β b`, `y = a ᾱ v β̄ b`.
    Generic {
        a: Word,
        alpha: u8,
        u: Word,
        v: Word,
        beta: u8,
        b: Word,
    },
}

fn sym(s: u8) -> Word {
    Word::from_bits(u64::from(s), 1)
}

fn cat(parts: &[Word]) -> Word {
    parts.iter().fold(Word::empty(), |acc, p| acc.concat(p))
}

impl PairShape {
    pub fn tag(&self) -> CaseTag {
        match self {
            PairShape::AdjacentTransposition { .. } => CaseTag::AdjacentTransposition,
            PairShape::SingleFlip { .. } => CaseTag::SingleFlip,
            PairShape::RunShift { .. } => CaseTag::RunShift,
            PairShape::AlternatingBlock { .. } => CaseTag::AlternatingBlock,
            PairShape::TwoFlips { .. } => CaseTag::TwoFlips,
            PairShape::ShiftedPair { .. } => CaseTag::ShiftedPair,
            PairShape::Generic { .. } => CaseTag::Generic,
        }
    }

    /// Common prefix `a` and suffix `b`.
    pub fn affixes(&self) -> (Word, Word) {
        match *self {
            PairShape::AdjacentTransposition { a, b, .. }
            | PairShape::SingleFlip { a, b, .. }
            | PairShape::RunShift { a, b, .. }
            | PairShape::AlternatingBlock { a, b, .. }
            | PairShape::TwoFlips { a, b, .. }
            | PairShape::ShiftedPair { a, b, .. }
            | PairShape::Generic { a, b, .. } => (a, b),
        }
    }

    /// Rebuilds `(x, y)` from the structural parameters.
    pub fn words(&self) -> (Word, Word) {
        match *self {
            PairShape::AdjacentTransposition { a, alpha, b } => (
                cat(&[a, sym(alpha), sym(1 - alpha), b]),
                cat(&[a, sym(1 - alpha), sym(alpha), b]),
            ),
            PairShape::SingleFlip { a, alpha, b } => {
                (cat(&[a, sym(alpha), b]), cat(&[a, sym(1 - alpha), b]))
            }
            PairShape::RunShift {
                a,
                alpha,
                ell,
                b,
                swapped,
            } => {
                let run = Word::repeat(alpha, ell);
                let p = cat(&[a, run, sym(1 - alpha), b]);
                let q = cat(&[a, sym(1 - alpha), run, b]);
                if swapped {
                    (q, p)
                } else {
                    (p, q)
                }
            }
            PairShape::AlternatingBlock { a, c, b } => {
                (cat(&[a, c, b]), cat(&[a, c.complement(), b]))
            }
            PairShape::TwoFlips {
                a,
                alpha,
                v,
                beta,
                b,
            } => (
                cat(&[a, sym(alpha), v, sym(beta), b]),
                cat(&[a, sym(1 - alpha), v, sym(1 - beta), b]),
            ),
            PairShape::ShiftedPair {
                a,
                alpha,
                c,
                beta,
                b,
                swapped,
            } => {
                let p = cat(&[a, sym(1 - alpha), sym(alpha), c, sym(beta), b]);
                let q = cat(&[a, sym(alpha), c, sym(beta), sym(1 - beta), b]);
                if swapped {
                    (q, p)
                } else {
                    (p, q)
                }
            }
            PairShape::Generic {
                a,
                alpha,
                u,
                v,
                beta,
                b,
            } => (
                cat(&[a, sym(alpha), u, sym(beta), b]),
                cat(&[a, sym(1 - alpha), v, sym(1 - beta), b]),
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairClassification {
    pub d: usize,
    pub s: usize,
    pub hamming: usize,
    pub case_tag: CaseTag,
    #[serde(flatten)]
    pub shape: PairShape,
}

/// Whether `c` alternates (no two adjacent symbols equal).
pub fn is_alternating(c: &Word) -> bool {
    c.run_count() == c.len()
}

/// `|D(x, y)|` by merging the two run-deletion lists.
pub fn deletion_intersection_len(x: &Word, y: &Word) -> usize {
    let mut dx = run_deletions(x);
    let mut dy = run_deletions(y);
    dx.sort_unstable();
    dy.sort_unstable();
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < dx.len() && j < dy.len() {
        match dx[i].cmp(&dy[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// `|S(x, y)|` for distinct words: 2 when within Hamming distance two, else 0.
pub fn substitution_intersection_len(x: &Word, y: &Word) -> usize {
    if x.hamming(y) <= 2 {
        2
    } else {
        0
    }
}

fn mismatch(x: &Word, y: &Word, reason: impl Into<String>) -> Error {
    Error::ShapeMismatch {
        x: x.to_string(),
        y: y.to_string(),
        reason: reason.into(),
    }
}

/// Matches the pair against the shape that corresponds to its `(d, s)` sizes.
pub fn shape_for(x: &Word, y: &Word, d: usize, s: usize) -> Result<PairShape> {
    let aff = common_affixes(x, y)?;
    let (a, b) = (aff.prefix, aff.suffix);
    let mx = aff.middle(x);
    let my = aff.middle(y);
    let k = mx.len();
    let shape = match (d, s) {
        (2, 2) => {
            if k != 2 || mx.get(1) == mx.get(2) {
                return Err(mismatch(x, y, "(2,2) pair is not an adjacent transposition"));
            }
            PairShape::AdjacentTransposition {
                a,
                alpha: mx.get(1),
                b,
            }
        }
        (1, 2) if aff.hamming == 1 => PairShape::SingleFlip {
            a,
            alpha: mx.get(1),
            b,
        },
        (1, 2) => {
            let run_then_flip = |p: &Word, q: &Word| -> Option<(u8, usize)> {
                let alpha = p.get(1);
                let ell = k - 1;
                let expect_p = Word::repeat(alpha, ell).push(1 - alpha);
                let expect_q = sym(1 - alpha).concat(&Word::repeat(alpha, ell));
                (ell >= 2 && *p == expect_p && *q == expect_q).then_some((alpha, ell))
            };
            if let Some((alpha, ell)) = run_then_flip(&mx, &my) {
                PairShape::RunShift {
                    a,
                    alpha,
                    ell,
                    b,
                    swapped: false,
                }
            } else if let Some((alpha, ell)) = run_then_flip(&my, &mx) {
                PairShape::RunShift {
                    a,
                    alpha,
                    ell,
                    b,
                    swapped: true,
                }
            } else {
                return Err(mismatch(x, y, "(1,2) pair matches neither single flip nor run shift"));
            }
        }
        (2, 0) => {
            if k < 3 || !is_alternating(&mx) || my != mx.complement() {
                return Err(mismatch(x, y, "(2,0) pair is not a complemented alternating block"));
            }
            PairShape::AlternatingBlock { a, c: mx, b }
        }
        (0, 2) => {
            if aff.hamming != 2 {
                return Err(mismatch(x, y, "(0,2) pair does not have Hamming distance 2"));
            }
            let alpha = mx.get(1);
            let beta = mx.get(k);
            let v = mx.slice(1, k - 1);
            let vb = v.push(beta);
            let nav = sym(1 - alpha).concat(&v);
            let av = sym(alpha).concat(&v);
            let vnb = v.push(1 - beta);
            if vb == nav || av == vnb {
                return Err(mismatch(x, y, "(0,2) pair violates the two-flip side conditions"));
            }
            PairShape::TwoFlips {
                a,
                alpha,
                v,
                beta,
                b,
            }
        }
        (1, 0) => {
            // p = ᾱ α c β, q = α c β β̄
            let shifted = |p: &Word, q: &Word| -> Option<(u8, Word, u8)> {
                if k < 3 {
                    return None;
                }
                let alpha = p.get(2);
                if p.get(1) != 1 - alpha {
                    return None;
                }
                let c = p.slice(2, k - 1);
                let beta = p.get(k);
                let expect_q = cat(&[sym(alpha), c, sym(beta), sym(1 - beta)]);
                if *q != expect_q {
                    return None;
                }
                let lhs = cat(&[sym(1 - alpha), sym(alpha), c]);
                let rhs = cat(&[c, sym(beta), sym(1 - beta)]);
                let ac = sym(alpha).concat(&c);
                let cb = c.push(beta);
                (lhs != rhs && ac != cb).then_some((alpha, c, beta))
            };
            if let Some((alpha, c, beta)) = shifted(&mx, &my) {
                PairShape::ShiftedPair {
                    a,
                    alpha,
                    c,
                    beta,
                    b,
                    swapped: false,
                }
            } else if let Some((alpha, c, beta)) = shifted(&my, &mx) {
                PairShape::ShiftedPair {
                    a,
                    alpha,
                    c,
                    beta,
                    b,
                    swapped: true,
                }
            } else {
                return Err(mismatch(x, y, "(1,0) pair is not a shifted pair"));
            }
        }
        (0, 0) => {
            if k < 3 {
                return Err(mismatch(x, y, "(0,0) pair has Hamming distance below 3"));
            }
            PairShape::Generic {
                a,
                alpha: mx.get(1),
                u: mx.slice(1, k - 1),
                v: my.slice(1, k - 1),
                beta: mx.get(k),
                b,
            }
        }
        _ => return Err(mismatch(x, y, format!("impossible sizes (d,s)=({d},{s})"))),
    };
    if shape.words() != (*x, *y) {
        return Err(mismatch(x, y, "shape parameters do not rebuild the pair"));
    }
    Ok(shape)
}

pub fn classify_pair(x: &Word, y: &Word) -> Result<PairClassification> {
    ensure_pair(x, y)?;
    let d = deletion_intersection_len(x, y);
    let s = substitution_intersection_len(x, y);
    let shape = shape_for(x, y, d, s)?;
    Ok(PairClassification {
        d,
        s,
        hamming: x.hamming(y),
        case_tag: shape.tag(),
        shape,
    })
}

// ---------------------------------------------------------------------------
// Decomposition of B(x, y)

/// Sizes of the pieces of `B(x,y)`: `S` is the union of substitution balls
/// around `D(x,y)`, `D` the union of deletion balls around `S(x,y)`, and the
/// remainder is everything outside both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct IntersectionDecomposition {
    pub size_s: usize,
    pub size_d: usize,
    pub size_overlap: usize,
    pub size_b_extra: usize,
    pub total: usize,
}

impl IntersectionDecomposition {
    /// Inclusion-exclusion identity `total = extra + |D| + |S| - |D ∩ S|`.
    pub fn identity_holds(&self) -> bool {
        self.total + self.size_overlap == self.size_b_extra + self.size_d + self.size_s
    }
}

/// The sets behind [`IntersectionDecomposition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionParts {
    pub s_part: BallSet,
    pub d_part: BallSet,
    pub overlap: BallSet,
    pub extra: BallSet,
    pub intersection: BallSet,
}

impl IntersectionParts {
    pub fn sizes(&self) -> IntersectionDecomposition {
        IntersectionDecomposition {
            size_s: self.s_part.len(),
            size_d: self.d_part.len(),
            size_overlap: self.overlap.len(),
            size_b_extra: self.extra.len(),
            total: self.intersection.len(),
        }
    }
}

pub fn intersection_parts(x: &Word, y: &Word) -> Result<IntersectionParts> {
    ensure_pair(x, y)?;
    let m = x.len() - 1;
    let del_common = ball_intersection(x, y, BallKind::Del)?;
    let sub_common = ball_intersection(x, y, BallKind::Sub)?;

    let mut s_words = Vec::new();
    for z in &del_common {
        s_words.extend(substitution_ball(z).into_vec());
    }
    let s_part = BallSet::from_words(m, s_words);

    let mut d_words = Vec::new();
    for z in &sub_common {
        d_words.extend(run_deletions(z));
    }
    let d_part = BallSet::from_words(m, d_words);

    let intersection = ds_ball(x)?.intersect(&ds_ball(y)?);
    let overlap = d_part.intersect(&s_part);
    let extra = intersection.difference(&d_part.union(&s_part));
    Ok(IntersectionParts {
        s_part,
        d_part,
        overlap,
        extra,
        intersection,
    })
}

pub fn decompose_intersection(x: &Word, y: &Word) -> Result<IntersectionDecomposition> {
    Ok(intersection_parts(x, y)?.sizes())
}

// ---------------------------------------------------------------------------
// Witnesses and good/bad words

/// An edit `(del, sub)` producing an element of the ball: delete position
/// `del` of `x`, then flip position `sub` of the shortened word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Witness {
    pub del: usize,
    pub sub: Option<usize>,
}

/// How a flip index is read when comparing it with deletion positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexConvention {
    /// Flip index counts positions of the shortened word.
    PostDeletion,
    /// Flip index counts positions of the original word.
    PreDeletion,
}

impl IndexConvention {
    pub const ALL: [IndexConvention; 2] =
        [IndexConvention::PostDeletion, IndexConvention::PreDeletion];

    pub fn name(&self) -> &'static str {
        match self {
            IndexConvention::PostDeletion => "post_deletion",
            IndexConvention::PreDeletion => "pre_deletion",
        }
    }
}

/// The convention used by [`is_bad`]. Post-deletion indexing admits up to
/// eight bad words per pair at n = 9; pre-deletion indexing keeps the count
/// at most six.
pub const DECLARED_CONVENTION: IndexConvention = IndexConvention::PreDeletion;

impl Witness {
    /// Flip position under `convention`; `None` for a deletion-only witness.
    pub fn flip_position(&self, convention: IndexConvention) -> Option<usize> {
        self.sub.map(|k| match convention {
            IndexConvention::PostDeletion => k,
            IndexConvention::PreDeletion => {
                if k < self.del {
                    k
                } else {
                    k + 1
                }
            }
        })
    }
}

pub fn witnesses(x: &Word, z: &Word) -> Result<Vec<Witness>> {
    ensure_nonempty(x)?;
    if z.len() + 1 != x.len() {
        return Err(Error::LengthMismatch {
            expected: x.len() - 1,
            found: z.len(),
        });
    }
    let mut out = Vec::new();
    for del in 1..=x.len() {
        let shortened = x.delete(del);
        let diff = shortened.hamming(z);
        if diff == 0 {
            out.push(Witness { del, sub: None });
        } else if diff == 1 {
            let pos = z.len() - (shortened.bits() ^ z.bits()).trailing_zeros() as usize;
            out.push(Witness {
                del,
                sub: Some(pos),
            });
        }
    }
    Ok(out)
}

fn flip_inside(w: &Witness, lo: usize, hi: usize, convention: IndexConvention) -> bool {
    match w.flip_position(convention) {
        None => true,
        Some(p) => lo <= p && p <= hi,
    }
}

/// `true` when every witness pair keeps both flips inside the closed interval
/// spanned by the two deletion positions.
pub fn is_bad_with(x: &Word, y: &Word, z: &Word, convention: IndexConvention) -> Result<bool> {
    ensure_pair(x, y)?;
    let wx = witnesses(x, z)?;
    let wy = witnesses(y, z)?;
    if wx.is_empty() || wy.is_empty() {
        return Err(Error::NotInIntersection);
    }
    Ok(bad_from_witnesses(&wx, &wy, convention))
}

pub(crate) fn bad_from_witnesses(wx: &[Witness], wy: &[Witness], convention: IndexConvention) -> bool {
    for p in wx {
        for q in wy {
            let lo = p.del.min(q.del);
            let hi = p.del.max(q.del);
            if !flip_inside(p, lo, hi, convention) || !flip_inside(q, lo, hi, convention) {
                return false;
            }
        }
    }
    true
}

pub fn is_bad(x: &Word, y: &Word, z: &Word) -> Result<bool> {
    is_bad_with(x, y, z, DECLARED_CONVENTION)
}

// ---------------------------------------------------------------------------

/// Every `w` of length `n` whose ds-ball contains `z`.
pub fn preimage_ball(z: &Word, n: usize) -> Result<BallSet> {
    if z.len() + 1 != n {
        return Err(Error::LengthMismatch {
            expected: n.saturating_sub(1),
            found: z.len(),
        });
    }
    let mut members = Vec::with_capacity(2 * n * n);
    for s in substitution_ball(z).iter() {
        for pos in 1..=n {
            members.push(s.insert(pos, 0));
            members.push(s.insert(pos, 1));
        }
    }
    Ok(BallSet::from_words(n, members))
}

/// `{z in D(v) : d_H(z, u) <= 1}` for `|v| = |u| + 1`.
pub fn constrained_deletion_matches(u: &Word, v: &Word) -> Result<BallSet> {
    if v.len() != u.len() + 1 {
        return Err(Error::LengthMismatch {
            expected: u.len() + 1,
            found: v.len(),
        });
    }
    let members = run_deletions(v)
        .into_iter()
        .filter(|z| z.hamming(u) <= 1)
        .collect();
    Ok(BallSet::from_words(u.len(), members))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn strs(b: &BallSet) -> Vec<String> {
        b.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn deletion_ball_examples() {
        assert_eq!(strs(&deletion_ball(&w("000")).unwrap()), ["00"]);
        assert_eq!(strs(&deletion_ball(&w("0110")).unwrap()), ["010", "011", "110"]);
        assert_eq!(deletion_ball(&w("0101")).unwrap().len(), 4);
        assert_eq!(deletion_ball(&Word::empty()), Err(Error::EmptyWord));
    }

    #[test]
    fn substitution_ball_examples() {
        assert_eq!(strs(&substitution_ball(&w("0"))), ["0", "1"]);
        assert_eq!(strs(&substitution_ball(&w("01"))), ["00", "01", "11"]);
        assert_eq!(substitution_ball(&w("010011101001")).len(), 13);
        assert_eq!(substitution_ball(&Word::empty()).len(), 1);
    }

    #[test]
    fn ds_ball_examples() {
        assert_eq!(strs(&ds_ball(&w("00")).unwrap()), ["0", "1"]);
        assert_eq!(strs(&ds_ball(&w("010")).unwrap()), ["00", "01", "10", "11"]);
        assert_eq!(ds_ball(&w("0000")).unwrap(), substitution_ball(&w("000")));
    }

    #[test]
    fn apply_examples() {
        assert_eq!(apply_del_sub(&w("0110"), 1, Some(2)).unwrap(), w("100"));
        assert_eq!(apply_del_sub(&w("0110"), 4, None).unwrap(), w("011"));
        assert_eq!(apply_del_sub(&w("00"), 2, Some(1)).unwrap(), w("1"));
        assert!(matches!(
            apply_del_sub(&w("00"), 3, None),
            Err(Error::IndexOutOfRange { what: "deletion", .. })
        ));
        assert!(matches!(
            apply_del_sub(&w("00"), 1, Some(2)),
            Err(Error::IndexOutOfRange { what: "substitution", .. })
        ));
    }

    #[test]
    fn intersection_examples() {
        let (x, y) = (w("0110"), w("1010"));
        assert_eq!(strs(&ball_intersection(&x, &y, BallKind::Del).unwrap()), ["010", "110"]);
        assert_eq!(strs(&ball_intersection(&x, &y, BallKind::Sub).unwrap()), ["0010", "1110"]);
        assert!(ball_intersection(&w("0011"), &w("1100"), BallKind::Sub)
            .unwrap()
            .is_empty());
        assert_eq!(
            ball_intersection(&x, &x, BallKind::Ds),
            Err(Error::EqualInputs)
        );
    }

    #[test]
    fn classify_examples() {
        let c = classify_pair(&w("0110"), &w("1010")).unwrap();
        assert_eq!((c.d, c.s, c.case_tag), (2, 2, CaseTag::AdjacentTransposition));
        assert_eq!(
            c.shape,
            PairShape::AdjacentTransposition {
                a: Word::empty(),
                alpha: 0,
                b: w("10")
            }
        );

        let c = classify_pair(&w("0000"), &w("0100")).unwrap();
        assert_eq!((c.d, c.s, c.case_tag), (1, 2, CaseTag::SingleFlip));

        let c = classify_pair(&w("0011"), &w("1100")).unwrap();
        assert_eq!((c.d, c.s, c.case_tag), (0, 0, CaseTag::Generic));

        let c = classify_pair(&w("0001011"), &w("0010011")).unwrap();
        assert_eq!(c.case_tag, CaseTag::AdjacentTransposition);

        // x = a α^2 ᾱ b with a = "1", b = "1"
        let c = classify_pair(&w("10011"), &w("11001")).unwrap();
        assert_eq!((c.d, c.s, c.case_tag), (1, 2, CaseTag::RunShift));

        let c = classify_pair(&w("001010"), &w("010100")).unwrap();
        assert_eq!((c.d, c.s), (2, 0));
        assert_eq!(c.case_tag, CaseTag::AlternatingBlock);
        assert_eq!(classify_pair(&w("01"), &w("01")), Err(Error::EqualInputs));
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose_intersection(&w("0110"), &w("1010")).unwrap();
        assert_eq!(
            d,
            IntersectionDecomposition {
                size_s: 6,
                size_d: 5,
                size_overlap: 4,
                size_b_extra: 0,
                total: 7
            }
        );
        assert!(d.identity_holds());

        let d = decompose_intersection(&w("010101"), &w("100101")).unwrap();
        assert_eq!(d.total, 15);

        let d = decompose_intersection(&w("00000000"), &w("11111111")).unwrap();
        assert_eq!(d, IntersectionDecomposition::default());
    }

    #[test]
    fn witness_examples() {
        let ws = witnesses(&w("00"), &w("1")).unwrap();
        assert_eq!(
            ws,
            vec![
                Witness { del: 1, sub: Some(1) },
                Witness { del: 2, sub: Some(1) }
            ]
        );
        let ws = witnesses(&w("00"), &w("0")).unwrap();
        assert_eq!(
            ws,
            vec![Witness { del: 1, sub: None }, Witness { del: 2, sub: None }]
        );
        let mut ws = witnesses(&w("010"), &w("00")).unwrap();
        ws.sort();
        assert_eq!(
            ws,
            vec![
                Witness { del: 1, sub: Some(1) },
                Witness { del: 2, sub: None },
                Witness { del: 3, sub: Some(2) }
            ]
        );
        assert!(matches!(
            witnesses(&w("010"), &w("0")),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn flip_position_conventions() {
        let wit = Witness { del: 3, sub: Some(3) };
        assert_eq!(wit.flip_position(IndexConvention::PostDeletion), Some(3));
        assert_eq!(wit.flip_position(IndexConvention::PreDeletion), Some(4));
        let wit = Witness { del: 3, sub: Some(2) };
        assert_eq!(wit.flip_position(IndexConvention::PreDeletion), Some(2));
    }

    #[test]
    fn is_bad_requires_membership() {
        assert_eq!(
            is_bad(&w("0011"), &w("1100"), &w("011")),
            Err(Error::NotInIntersection)
        );
    }

    #[test]
    fn preimage_examples() {
        let p = preimage_ball(&w("00"), 3).unwrap();
        assert_eq!(p.len(), 7);
        assert!(!p.contains(&w("111")));
        assert_eq!(preimage_ball(&w("0"), 2).unwrap().len(), 4);
        assert!(preimage_ball(&w("0"), 3).is_err());
    }

    #[test]
    fn constrained_examples() {
        let f = constrained_deletion_matches(&w("00"), &w("010")).unwrap();
        assert_eq!(strs(&f), ["00", "01", "10"]);
        assert!(constrained_deletion_matches(&w("11"), &w("000"))
            .unwrap()
            .is_empty());
        assert_eq!(strs(&constrained_deletion_matches(&w("0"), &w("01")).unwrap()), ["0", "1"]);
    }
}
