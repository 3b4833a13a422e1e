//! C interface to `dsrecon`.
//!
//! Words, balls and codes are opaque handles created by `*_new`/`*_parse`
//! functions and released with the matching `*_free`. Every fallible call
//! returns a [`DsStatus`]; on failure the message is available from
//! [`ds_last_error`] on the same thread. Strings handed out by the library
//! are released with [`ds_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dsrecon::codes::{CodeSpec, Family};
use dsrecon::error_balls::{self, BallKind, BallSet, CaseTag};
use dsrecon::reconstruct::{self, DecodeStatus, ReadBundle};
use dsrecon::verify::{run_target, Target, VerifyOptions};
use dsrecon::{Error, Word};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidWord = 3,
    LengthMismatch = 4,
    EqualInputs = 5,
    OutOfRange = 6,
    InvalidParams = 7,
    LimitExceeded = 8,
    BallTooSmall = 9,
    BufferTooSmall = 10,
    Failed = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DsBallKind {
    Del = 0,
    Sub = 1,
    Ds = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DsCaseTag {
    AdjacentTransposition = 0,
    SingleFlip = 1,
    RunShift = 2,
    AlternatingBlock = 3,
    TwoFlips = 4,
    ShiftedPair = 5,
    Generic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DsDecodeStatus {
    Unique = 0,
    Ambiguous = 1,
    Inconsistent = 2,
}

/// Sizes and shape of a pair of distinct words of equal length.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DsPairInfo {
    pub deletion_common: usize,
    pub substitution_common: usize,
    pub hamming: usize,
    pub ds_common: usize,
    pub case_tag: DsCaseTag,
}

/// Opaque binary word.
pub struct DsWord(Word);

/// Opaque sorted set of words of one length.
pub struct DsBall(BallSet);

/// Opaque code: a family with its parameters at a fixed length.
pub struct DsCode(CodeSpec);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> DsStatus {
    match e {
        Error::InvalidSymbol { .. } | Error::TooLong(_) | Error::EmptyWord | Error::Parse(_) => {
            DsStatus::InvalidWord
        }
        Error::LengthMismatch { .. } => DsStatus::LengthMismatch,
        Error::EqualInputs => DsStatus::EqualInputs,
        Error::IndexOutOfRange { .. } => DsStatus::OutOfRange,
        Error::InvalidParams(_) | Error::UnsupportedOrder(_) | Error::EmptyCode => {
            DsStatus::InvalidParams
        }
        Error::EnumerationLimit { .. } => DsStatus::LimitExceeded,
        Error::BallTooSmall { .. } => DsStatus::BallTooSmall,
        Error::NotInIntersection | Error::ShapeMismatch { .. } => DsStatus::Failed,
    }
}

struct Fail(DsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(DsStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, recording any error or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> DsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            DsStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal panic".into());
            set_error(message);
            DsStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(DsStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(s)
        .map_err(|_| Fail(DsStatus::Failed, "string contains NUL".into()))?
        .into_raw();
    Ok(())
}

/// Copies `s` plus a NUL terminator into `buf`, reporting the needed size.
unsafe fn copy_out(s: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> Result<(), Fail> {
    if !needed.is_null() {
        *needed = s.len() + 1;
    }
    if cap <= s.len() {
        return Err(Fail(
            DsStatus::BufferTooSmall,
            format!("buffer of {cap} bytes cannot hold {} bytes", s.len() + 1),
        ));
    }
    if buf.is_null() {
        return Err(null("buffer"));
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    *buf.add(s.len()) = 0;
    Ok(())
}

fn ball_kind(kind: DsBallKind) -> BallKind {
    match kind {
        DsBallKind::Del => BallKind::Del,
        DsBallKind::Sub => BallKind::Sub,
        DsBallKind::Ds => BallKind::Ds,
    }
}

fn case_tag(tag: CaseTag) -> DsCaseTag {
    match tag {
        CaseTag::AdjacentTransposition => DsCaseTag::AdjacentTransposition,
        CaseTag::SingleFlip => DsCaseTag::SingleFlip,
        CaseTag::RunShift => DsCaseTag::RunShift,
        CaseTag::AlternatingBlock => DsCaseTag::AlternatingBlock,
        CaseTag::TwoFlips => DsCaseTag::TwoFlips,
        CaseTag::ShiftedPair => DsCaseTag::ShiftedPair,
        CaseTag::Generic => DsCaseTag::Generic,
    }
}

/// Message for the last failed call on this thread, or NULL after a
/// success. Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn ds_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn ds_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a string of '0'/'1' symbols.
///
/// # Safety
/// `text_ptr` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ds_word_parse(text_ptr: *const c_char, out: *mut *mut DsWord) -> DsStatus {
    guard(|| {
        let w: Word = text(text_ptr, "text")?.parse()?;
        put(out, DsWord(w))
    })
}

/// # Safety
/// `word` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn ds_word_free(word: *mut DsWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// Length of `word`, or 0 for NULL.
///
/// # Safety
/// `word` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ds_word_len(word: *const DsWord) -> usize {
    word.as_ref().map_or(0, |w| w.0.len())
}

/// Writes the word's symbols into `buf`. `needed` (optional) receives the
/// buffer size required including the terminator.
///
/// # Safety
/// `buf` must have room for `cap` bytes; `needed` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn ds_word_text(
    word: *const DsWord,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> DsStatus {
    guard(|| copy_out(&borrow(word, "word")?.0.to_string(), buf, cap, needed))
}

/// Ball of `word` under one deletion (`DEL`), at most one substitution
/// (`SUB`) or one deletion then at most one substitution (`DS`).
///
/// # Safety
/// `word` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ds_ball_new(word: *const DsWord, kind: DsBallKind, out: *mut *mut DsBall) -> DsStatus {
    guard(|| {
        let ball = error_balls::ball(&borrow(word, "word")?.0, ball_kind(kind))?;
        put(out, DsBall(ball))
    })
}

/// Common part of the two words' balls of the given kind.
///
/// # Safety
/// `x` and `y` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ds_ball_intersection(
    x: *const DsWord,
    y: *const DsWord,
    kind: DsBallKind,
    out: *mut *mut DsBall,
) -> DsStatus {
    guard(|| {
        let (x, y) = (borrow(x, "x")?, borrow(y, "y")?);
        let ball = error_balls::ball_intersection(&x.0, &y.0, ball_kind(kind))?;
        put(out, DsBall(ball))
    })
}

/// # Safety
/// `ball` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn ds_ball_free(ball: *mut DsBall) {
    if !ball.is_null() {
        drop(Box::from_raw(ball));
    }
}

/// Number of members, or 0 for NULL.
///
/// # Safety
/// `ball` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ds_ball_len(ball: *const DsBall) -> usize {
    ball.as_ref().map_or(0, |b| b.0.len())
}

/// Length of the words in the ball.
///
/// # Safety
/// `ball` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ds_ball_word_length(ball: *const DsBall) -> usize {
    ball.as_ref().map_or(0, |b| b.0.word_length())
}

/// Writes the `index`-th member (0-based, lexicographic order) into `buf`.
///
/// # Safety
/// `buf` must have room for `cap` bytes; `needed` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn ds_ball_member(
    ball: *const DsBall,
    index: usize,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> DsStatus {
    guard(|| {
        let members = borrow(ball, "ball")?.0.members();
        let w = members.get(index).ok_or_else(|| {
            Fail(
                DsStatus::OutOfRange,
                format!("member index {index} out of range 0..{}", members.len()),
            )
        })?;
        copy_out(&w.to_string(), buf, cap, needed)
    })
}

/// Whether `word` is a member of `ball`.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ds_ball_contains(ball: *const DsBall, word: *const DsWord, out: *mut bool) -> DsStatus {
    guard(|| {
        let found = borrow(ball, "ball")?.0.contains(&borrow(word, "word")?.0);
        *out.as_mut().ok_or_else(|| null("output pointer"))? = found;
        Ok(())
    })
}

/// Intersection sizes and structural case of two distinct words.
///
/// # Safety
/// `x` and `y` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ds_classify(x: *const DsWord, y: *const DsWord, out: *mut DsPairInfo) -> DsStatus {
    guard(|| {
        let (x, y) = (&borrow(x, "x")?.0, &borrow(y, "y")?.0);
        let c = error_balls::classify_pair(x, y)?;
        let total = error_balls::decompose_intersection(x, y)?.total;
        *out.as_mut().ok_or_else(|| null("output pointer"))? = DsPairInfo {
            deletion_common: c.d,
            substitution_common: c.s,
            hamming: c.hamming,
            ds_common: total as usize,
            case_tag: case_tag(c.case_tag),
        };
        Ok(())
    })
}

/// Builds a code from a family id (`vt`, `inv`, `cl`, ...) and a parameter
/// list such as `"a=3,m=2"`. `params` may be NULL for families without
/// parameters.
///
/// # Safety
/// `family` and `params` must be NULL-terminated strings; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ds_code_new(
    family: *const c_char,
    n: usize,
    params: *const c_char,
    out: *mut *mut DsCode,
) -> DsStatus {
    guard(|| {
        let id = text(family, "family")?;
        let raw = if params.is_null() { "" } else { text(params, "params")? };
        let mut pairs = Vec::new();
        for item in raw.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let parsed = item
                .split_once('=')
                .and_then(|(k, v)| Some((k.trim(), v.trim().parse::<u64>().ok()?)));
            let pair = parsed.ok_or_else(|| {
                Fail(DsStatus::InvalidParams, format!("malformed parameter {item:?}; expected name=value"))
            })?;
            pairs.push(pair);
        }
        let family = Family::from_params(id, |name| pairs.iter().find(|(k, _)| *k == name).map(|&(_, v)| v))?;
        put(out, DsCode(CodeSpec::new(n, family)?))
    })
}

/// # Safety
/// `code` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn ds_code_free(code: *mut DsCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ds_code_contains(code: *const DsCode, word: *const DsWord, out: *mut bool) -> DsStatus {
    guard(|| {
        let found = borrow(code, "code")?.0.contains(&borrow(word, "word")?.0)?;
        *out.as_mut().ok_or_else(|| null("output pointer"))? = found;
        Ok(())
    })
}

/// Number of codewords, by enumeration where no closed form exists.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ds_code_size(code: *const DsCode, out: *mut u64) -> DsStatus {
    guard(|| {
        let size = borrow(code, "code")?.0.size()?;
        *out.as_mut().ok_or_else(|| null("output pointer"))? = size;
        Ok(())
    })
}

/// Draws one read of `word` through the deletion-then-substitution channel.
///
/// # Safety
/// `word` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ds_channel_sample(word: *const DsWord, seed: u64, out: *mut *mut DsWord) -> DsStatus {
    guard(|| {
        let read = reconstruct::channel_sample(&borrow(word, "word")?.0, seed)?;
        put(out, DsWord(read))
    })
}

/// Codewords consistent with every read. `candidates` receives a ball of
/// length-`n` words holding them; `design_reads` is the read count the code
/// was built for.
///
/// # Safety
/// `reads` must point to `count` live word handles; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn ds_decode(
    code: *const DsCode,
    design_reads: usize,
    reads: *const *const DsWord,
    count: usize,
    status: *mut DsDecodeStatus,
    candidates: *mut *mut DsBall,
) -> DsStatus {
    guard(|| {
        let spec = &borrow(code, "code")?.0;
        if reads.is_null() && count > 0 {
            return Err(null("reads"));
        }
        let mut words = Vec::with_capacity(count);
        for i in 0..count {
            words.push(borrow(*reads.add(i), "read")?.0);
        }
        let bundle = ReadBundle::new(spec.n, words)?;
        let result = reconstruct::decode(spec, design_reads, &bundle)?;
        *status.as_mut().ok_or_else(|| null("status"))? = match result.status {
            DecodeStatus::Unique => DsDecodeStatus::Unique,
            DecodeStatus::Ambiguous => DsDecodeStatus::Ambiguous,
            DecodeStatus::Inconsistent => DsDecodeStatus::Inconsistent,
        };
        put(candidates, DsBall(BallSet::from_words(spec.n, result.candidates)))
    })
}

/// Runs a named verifier at length `n` with default options and returns its
/// report as JSON in `*json` (free with [`ds_string_free`]). `passed`
/// (optional) receives the verdict. A failing verdict is not an error.
///
/// # Safety
/// `target` must be a NUL-terminated string; `json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ds_verify_json(
    target: *const c_char,
    n: usize,
    passed: *mut bool,
    json: *mut *mut c_char,
) -> DsStatus {
    guard(|| {
        let target: Target = text(target, "target")?.parse()?;
        let report = run_target(target, n, &VerifyOptions::default())?;
        if let Some(p) = passed.as_mut() {
            *p = report.passed();
        }
        put_string(json, report.to_json())
    })
}
