//! Code families defined by syndrome residues and run constraints.

use std::fmt;
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequences::{inversion_number, max_le2_periodic_length, vt_syndrome, Word, MAX_LEN};

/// Largest length that [`enumerate`] will walk.
pub const ENUMERATION_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// Every word.
    Full,
    /// `VT1 = a (mod 2n)`.
    Vt { a: u64 },
    /// `Inv = a (mod m)`.
    Inv { a: u64, m: u64 },
    /// `VT1 = a (mod m)`.
    VtMod { a: u64, m: u64 },
    /// `x_2 + x_4 + ... + x_(2 floor(n/2)) = a (mod m)`.
    EvenPos { a: u64, m: u64 },
    /// At most `ceil(n/2)` runs.
    RunBounded,
    /// Every window that is constant or alternating has length at most `p`.
    Rll { p: u64 },
    /// `Rll(p)`, weight parity `a1`, `Inv = a2 (mod 1 + p/2)`.
    Cp { p: u64, a1: u64, a2: u64 },
    /// `RunBounded` and `Inv = a (mod m)`.
    C2n9 { a: u64, m: u64 },
    /// `Cp(p, a1, a2)` restricted to `RunBounded`.
    Cn21 { p: u64, a1: u64, a2: u64 },
    /// Weight `= a0 (mod 4)`, `VT1 = a1 (mod 2n)`, `VT2 = a2 (mod 2n^2)`.
    Cl { a0: u64, a1: u64, a2: u64 },
}

impl Family {
    pub const IDS: [&'static str; 11] = [
        "full",
        "vt",
        "inv",
        "vt-mod",
        "even-pos",
        "run-bounded",
        "rll",
        "cp",
        "c2n9",
        "cn21",
        "cl",
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Family::Full => "full",
            Family::Vt { .. } => "vt",
            Family::Inv { .. } => "inv",
            Family::VtMod { .. } => "vt-mod",
            Family::EvenPos { .. } => "even-pos",
            Family::RunBounded => "run-bounded",
            Family::Rll { .. } => "rll",
            Family::Cp { .. } => "cp",
            Family::C2n9 { .. } => "c2n9",
            Family::Cn21 { .. } => "cn21",
            Family::Cl { .. } => "cl",
        }
    }

    /// Parameters in canonical order.
    pub fn params(&self) -> Vec<(&'static str, u64)> {
        match *self {
            Family::Full | Family::RunBounded => vec![],
            Family::Vt { a } => vec![("a", a)],
            Family::Inv { a, m }
            | Family::VtMod { a, m }
            | Family::EvenPos { a, m }
            | Family::C2n9 { a, m } => vec![("a", a), ("m", m)],
            Family::Rll { p } => vec![("P", p)],
            Family::Cp { p, a1, a2 } | Family::Cn21 { p, a1, a2 } => {
                vec![("P", p), ("a1", a1), ("a2", a2)]
            }
            Family::Cl { a0, a1, a2 } => vec![("a0", a0), ("a1", a1), ("a2", a2)],
        }
    }

    /// Builds a family from its id and named parameters. Missing parameters
    /// are reported by name.
    pub fn from_params(id: &str, lookup: impl Fn(&str) -> Option<u64>) -> Result<Family> {
        let need = |name: &str| {
            lookup(name).ok_or_else(|| Error::InvalidParams(format!("family {id} requires {name}")))
        };
        Ok(match id {
            "full" => Family::Full,
            "vt" => Family::Vt { a: need("a")? },
            "inv" => Family::Inv {
                a: need("a")?,
                m: need("m")?,
            },
            "vt-mod" => Family::VtMod {
                a: need("a")?,
                m: need("m")?,
            },
            "even-pos" => Family::EvenPos {
                a: need("a")?,
                m: need("m")?,
            },
            "run-bounded" => Family::RunBounded,
            "rll" => Family::Rll { p: need("P")? },
            "cp" => Family::Cp {
                p: need("P")?,
                a1: need("a1")?,
                a2: need("a2")?,
            },
            "c2n9" => Family::C2n9 {
                a: need("a")?,
                m: need("m")?,
            },
            "cn21" => Family::Cn21 {
                p: need("P")?,
                a1: need("a1")?,
                a2: need("a2")?,
            },
            "cl" => Family::Cl {
                a0: need("a0")?,
                a1: need("a1")?,
                a2: need("a2")?,
            },
            other => {
                return Err(Error::InvalidParams(format!(
                    "unknown family {other:?}; expected one of {}",
                    Family::IDS.join(", ")
                )))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CodeSpec {
    pub n: usize,
    #[serde(flatten)]
    pub family: Family,
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self
            .family
            .params()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(
            f,
            "family={} n={} params={}",
            self.family.id(),
            self.n,
            params.join(",")
        )
    }
}

fn check_residue(name: &str, value: u64, modulus: u64) -> Result<()> {
    if value >= modulus {
        Err(Error::InvalidParams(format!(
            "{name}={value} must lie in [0, {}]",
            modulus - 1
        )))
    } else {
        Ok(())
    }
}

fn check_modulus(m: u64) -> Result<()> {
    if m < 2 {
        Err(Error::InvalidParams(format!("m={m} must be at least 2")))
    } else {
        Ok(())
    }
}

fn check_even_period(p: u64) -> Result<()> {
    if p < 2 || !p.is_multiple_of(2) {
        Err(Error::InvalidParams(format!("P={p} must be even and at least 2")))
    } else {
        Ok(())
    }
}

/// `r(x) <= ceil(n/2)`.
pub fn is_run_bounded(x: &Word) -> bool {
    x.run_count() <= x.len().div_ceil(2)
}

/// Membership in `R(n, p)`.
pub fn is_rll(x: &Word, p: u64) -> bool {
    max_le2_periodic_length(x) as u64 <= p
}

fn even_position_sum(x: &Word) -> u64 {
    (1..=x.len() / 2).map(|i| u64::from(x.get(2 * i))).sum()
}

/// Smallest even integer at least `log2(n) + 3`.
pub fn default_p(n: usize) -> u64 {
    let t = ((n.max(1) as f64).log2() + 3.0).ceil() as u64;
    t + t % 2
}

impl CodeSpec {
    pub fn new(n: usize, family: Family) -> Result<Self> {
        let spec = CodeSpec { n, family };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n as u64;
        if self.n == 0 || self.n > MAX_LEN {
            return Err(Error::InvalidParams(format!(
                "n={} must lie in [1, {MAX_LEN}]",
                self.n
            )));
        }
        match self.family {
            Family::Full | Family::RunBounded => Ok(()),
            Family::Vt { a } => check_residue("a", a, 2 * n),
            Family::Inv { a, m }
            | Family::VtMod { a, m }
            | Family::EvenPos { a, m }
            | Family::C2n9 { a, m } => {
                check_modulus(m)?;
                check_residue("a", a, m)
            }
            Family::Rll { p } => {
                if p == 0 {
                    Err(Error::InvalidParams("P must be positive".into()))
                } else {
                    Ok(())
                }
            }
            Family::Cp { p, a1, a2 } | Family::Cn21 { p, a1, a2 } => {
                check_even_period(p)?;
                check_residue("a1", a1, 2)?;
                check_residue("a2", a2, 1 + p / 2)
            }
            Family::Cl { a0, a1, a2 } => {
                check_residue("a0", a0, 4)?;
                check_residue("a1", a1, 2 * n)?;
                check_residue("a2", a2, 2 * n * n)
            }
        }
    }

    /// Membership without length or parameter checks.
    pub(crate) fn contains_unchecked(&self, x: &Word) -> bool {
        let n = self.n as u64;
        let vt1 = || vt_syndrome(x, 1).expect("order 1 is supported");
        let inv = || inversion_number(x);
        let wt = || x.weight() as u64;
        match self.family {
            Family::Full => true,
            Family::Vt { a } => vt1() % (2 * n) == a,
            Family::Inv { a, m } => inv() % m == a,
            Family::VtMod { a, m } => vt1() % m == a,
            Family::EvenPos { a, m } => even_position_sum(x) % m == a,
            Family::RunBounded => is_run_bounded(x),
            Family::Rll { p } => is_rll(x, p),
            Family::Cp { p, a1, a2 } => {
                is_rll(x, p) && wt() % 2 == a1 && inv() % (1 + p / 2) == a2
            }
            Family::C2n9 { a, m } => is_run_bounded(x) && inv() % m == a,
            Family::Cn21 { p, a1, a2 } => {
                is_run_bounded(x) && is_rll(x, p) && wt() % 2 == a1 && inv() % (1 + p / 2) == a2
            }
            Family::Cl { a0, a1, a2 } => {
                wt() % 4 == a0
                    && vt1() % (2 * n) == a1
                    && vt_syndrome(x, 2).expect("order 2 is supported") % (2 * n * n) == a2
            }
        }
    }

    pub fn contains(&self, x: &Word) -> Result<bool> {
        self.validate()?;
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(self.contains_unchecked(x))
    }

    /// Streams the members in ascending order.
    pub fn enumerate(&self) -> Result<impl Iterator<Item = Word> + '_> {
        self.validate()?;
        if self.n > ENUMERATION_LIMIT {
            return Err(Error::EnumerationLimit {
                n: self.n,
                limit: ENUMERATION_LIMIT,
            });
        }
        Ok(Word::all(self.n).filter(move |x| self.contains_unchecked(x)))
    }

    pub fn members(&self) -> Result<Vec<Word>> {
        Ok(self.enumerate()?.collect())
    }

    pub fn size(&self) -> Result<u64> {
        if self.family == Family::Full {
            self.validate()?;
            return Ok(1u64 << self.n);
        }
        Ok(self.enumerate()?.count() as u64)
    }

    /// `n - log2 |C|`.
    pub fn redundancy(&self) -> Result<f64> {
        redundancy_of(self.n, self.size()?)
    }

    /// The next-larger code this one is built inside, if any.
    pub fn parent(&self) -> Option<CodeSpec> {
        let n = self.n;
        let family = match self.family {
            Family::Cn21 { p, a2, .. } => Family::C2n9 { a: a2, m: 1 + p / 2 },
            Family::C2n9 { a, m } => Family::Inv { a, m },
            Family::Cl { a1, .. } => Family::Vt { a: a1 },
            Family::Cp { p, .. } => Family::Rll { p },
            _ => return None,
        };
        Some(CodeSpec { n, family })
    }
}

pub fn redundancy_of(n: usize, size: u64) -> Result<f64> {
    if size == 0 {
        return Err(Error::EmptyCode);
    }
    Ok(n as f64 - (size as f64).log2())
}

/// `true` iff every member of `inner` belongs to `outer`.
pub fn subcode_check(inner: &CodeSpec, outer: &CodeSpec) -> Result<bool> {
    if inner.n != outer.n {
        return Err(Error::LengthMismatch {
            expected: inner.n,
            found: outer.n,
        });
    }
    outer.validate()?;
    let mut members = inner.enumerate()?;
    Ok(members.all(|x| outer.contains_unchecked(&x)))
}

// ---------------------------------------------------------------------------
// Cosets

/// A residue-parameterized family with its non-residue parameters fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum CosetFamily {
    Vt,
    Inv { m: u64 },
    VtMod { m: u64 },
    EvenPos { m: u64 },
    C2n9 { m: u64 },
    Cp { p: u64 },
    Cn21 { p: u64 },
    Cl,
}

impl CosetFamily {
    /// Modulus of each residue parameter, in parameter order.
    pub fn moduli(&self, n: usize) -> Vec<u64> {
        let n = n as u64;
        match *self {
            CosetFamily::Vt => vec![2 * n],
            CosetFamily::Inv { m }
            | CosetFamily::VtMod { m }
            | CosetFamily::EvenPos { m }
            | CosetFamily::C2n9 { m } => vec![m],
            CosetFamily::Cp { p } | CosetFamily::Cn21 { p } => vec![2, 1 + p / 2],
            CosetFamily::Cl => vec![4, 2 * n, 2 * n * n],
        }
    }

    pub fn spec(&self, n: usize, residues: &[u64]) -> CodeSpec {
        let r = |i: usize| residues[i];
        let family = match *self {
            CosetFamily::Vt => Family::Vt { a: r(0) },
            CosetFamily::Inv { m } => Family::Inv { a: r(0), m },
            CosetFamily::VtMod { m } => Family::VtMod { a: r(0), m },
            CosetFamily::EvenPos { m } => Family::EvenPos { a: r(0), m },
            CosetFamily::C2n9 { m } => Family::C2n9 { a: r(0), m },
            CosetFamily::Cp { p } => Family::Cp {
                p,
                a1: r(0),
                a2: r(1),
            },
            CosetFamily::Cn21 { p } => Family::Cn21 {
                p,
                a1: r(0),
                a2: r(1),
            },
            CosetFamily::Cl => Family::Cl {
                a0: r(0),
                a1: r(1),
                a2: r(2),
            },
        };
        CodeSpec { n, family }
    }

    /// Writes the residues of `x` into `out`; `false` when `x` fails the
    /// non-residue constraints.
    fn key(&self, x: &Word, moduli: &[u64], out: &mut [u64]) -> bool {
        match *self {
            CosetFamily::Vt => out[0] = vt_syndrome(x, 1).unwrap() % moduli[0],
            CosetFamily::Inv { .. } => out[0] = inversion_number(x) % moduli[0],
            CosetFamily::VtMod { .. } => out[0] = vt_syndrome(x, 1).unwrap() % moduli[0],
            CosetFamily::EvenPos { .. } => out[0] = even_position_sum(x) % moduli[0],
            CosetFamily::C2n9 { .. } => {
                if !is_run_bounded(x) {
                    return false;
                }
                out[0] = inversion_number(x) % moduli[0];
            }
            CosetFamily::Cp { p } | CosetFamily::Cn21 { p } => {
                if !is_rll(x, p) {
                    return false;
                }
                if matches!(self, CosetFamily::Cn21 { .. }) && !is_run_bounded(x) {
                    return false;
                }
                out[0] = x.weight() as u64 % 2;
                out[1] = inversion_number(x) % moduli[1];
            }
            CosetFamily::Cl => {
                out[0] = x.weight() as u64 % 4;
                out[1] = vt_syndrome(x, 1).unwrap() % moduli[1];
                out[2] = vt_syndrome(x, 2).unwrap() % moduli[2];
            }
        }
        true
    }

    fn validate(&self, n: usize) -> Result<()> {
        self.spec(n, &vec![0; self.moduli(n).len()]).validate()
    }
}

/// Size of every coset, in lexicographic order of the residue tuple.
pub fn coset_sizes(family: CosetFamily, n: usize) -> Result<Vec<(CodeSpec, u64)>> {
    family.validate(n)?;
    if n > ENUMERATION_LIMIT {
        return Err(Error::EnumerationLimit {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let moduli = family.moduli(n);
    let cells: u64 = moduli.iter().product();
    let mut histogram = vec![0u64; cells as usize];
    let mut key = vec![0u64; moduli.len()];
    for x in Word::all(n) {
        if family.key(&x, &moduli, &mut key) {
            let index = key.iter().zip(&moduli).fold(0u64, |acc, (k, m)| acc * m + k);
            histogram[index as usize] += 1;
        }
    }
    Ok(histogram
        .into_iter()
        .enumerate()
        .map(|(index, count)| (family.spec(n, &residue_tuple(index as u64, &moduli)), count))
        .collect())
}

/// Inverse of the mixed-radix index used to bucket cosets.
fn residue_tuple(index: u64, moduli: &[u64]) -> Vec<u64> {
    let mut rest = index;
    let mut residues = vec![0u64; moduli.len()];
    for (slot, m) in residues.iter_mut().zip(moduli).rev() {
        *slot = rest % m;
        rest /= m;
    }
    residues
}

/// Members of every coset, in lexicographic order of the residue tuple.
pub fn coset_partition(family: CosetFamily, n: usize) -> Result<Vec<(CodeSpec, Vec<Word>)>> {
    family.validate(n)?;
    if n > ENUMERATION_LIMIT {
        return Err(Error::EnumerationLimit {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let moduli = family.moduli(n);
    let cells: u64 = moduli.iter().product();
    let mut groups: Vec<Vec<Word>> = vec![Vec::new(); cells as usize];
    let mut key = vec![0u64; moduli.len()];
    for x in Word::all(n) {
        if family.key(&x, &moduli, &mut key) {
            let index = key.iter().zip(&moduli).fold(0u64, |acc, (k, m)| acc * m + k);
            groups[index as usize].push(x);
        }
    }
    Ok(groups
        .into_iter()
        .enumerate()
        .map(|(index, words)| (family.spec(n, &residue_tuple(index as u64, &moduli)), words))
        .collect())
}

/// The largest coset; ties go to the lexicographically smallest residues.
pub fn best_coset(family: CosetFamily, n: usize) -> Result<(CodeSpec, u64)> {
    let sizes = coset_sizes(family, n)?;
    let mut best = sizes[0];
    for entry in &sizes[1..] {
        if entry.1 > best.1 {
            best = *entry;
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// Code files

pub fn write_code_file(spec: &CodeSpec, out: &mut impl Write) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(e.to_string());
    writeln!(out, "# {spec}").map_err(io)?;
    for x in spec.enumerate()? {
        writeln!(out, "{x}").map_err(io)?;
    }
    Ok(())
}

fn parse_header(line: &str) -> Result<CodeSpec> {
    let body = line
        .strip_prefix('#')
        .ok_or_else(|| Error::Parse("code file must start with a '#' header".into()))?;
    let mut id = None;
    let mut n = None;
    let mut params: Vec<(String, u64)> = Vec::new();
    for field in body.split_whitespace() {
        let (k, v) = field
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("malformed header field {field:?}")))?;
        match k {
            "family" => id = Some(v.to_string()),
            "n" => n = Some(v.parse().map_err(|_| Error::Parse(format!("bad n {v:?}")))?),
            "params" => {
                for kv in v.split(',').filter(|s| !s.is_empty()) {
                    let (pk, pv) = kv
                        .split_once('=')
                        .ok_or_else(|| Error::Parse(format!("malformed parameter {kv:?}")))?;
                    let pv = pv
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad value for {pk}: {pv:?}")))?;
                    params.push((pk.to_string(), pv));
                }
            }
            other => return Err(Error::Parse(format!("unknown header field {other:?}"))),
        }
    }
    let id = id.ok_or_else(|| Error::Parse("header lacks family".into()))?;
    let n = n.ok_or_else(|| Error::Parse("header lacks n".into()))?;
    let family = Family::from_params(&id, |name| {
        params.iter().find(|(k, _)| k == name).map(|&(_, v)| v)
    })?;
    CodeSpec::new(n, family)
}

/// Reads a code file, checking that every listed word has the right length
/// and the lines are strictly ascending.
pub fn read_code_file(input: impl BufRead) -> Result<(CodeSpec, Vec<Word>)> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty code file".into()))?
        .map_err(|e| Error::Parse(e.to_string()))?;
    let spec = parse_header(header.trim())?;
    let mut words: Vec<Word> = Vec::new();
    for line in lines {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let w: Word = line.parse()?;
        if w.len() != spec.n {
            return Err(Error::LengthMismatch {
                expected: spec.n,
                found: w.len(),
            });
        }
        if words.last().is_some_and(|prev| *prev >= w) {
            return Err(Error::Parse(format!("words out of order at {w}")));
        }
        words.push(w);
    }
    Ok((spec, words))
}
