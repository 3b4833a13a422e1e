//! Command-line front end. [`run`] parses `argv`, dispatches to the library
//! and renders the result as JSON, text or CSV.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::codes::{
    best_coset, coset_sizes, read_code_file, subcode_check, write_code_file, CodeSpec, CosetFamily, Family,
};
use crate::error::Error;
use crate::error_balls::{
    apply_del_sub, ball, ball_intersection, classify_pair, constrained_deletion_matches, intersection_parts,
    is_bad_with, preimage_ball, witnesses, BallKind, IndexConvention, DECLARED_CONVENTION,
};
use crate::reconstruct::{channel_samples, collect_reads, decode, decode_by_scan, ReadBundle, DEFAULT_SEED};
use crate::sequences::{
    common_affixes, inversion_number, max_le2_periodic_length, psi, psi_inverse, runs, vt_syndrome, Word,
};
use crate::verify::{run_target, Target, VerificationReport, Verdict, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Del,
    Sub,
    Ds,
}

impl From<KindArg> for BallKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Del => BallKind::Del,
            KindArg::Sub => BallKind::Sub,
            KindArg::Ds => BallKind::Ds,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    PreDeletion,
    PostDeletion,
}

impl From<ConventionArg> for IndexConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::PreDeletion => IndexConvention::PreDeletion,
            ConventionArg::PostDeletion => IndexConvention::PostDeletion,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "dsrecon", version, about = "Single-deletion single-substitution balls, codes and verifiers")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses every available core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Add wall-clock time to verification reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// Code family id.
    #[arg(long)]
    family: String,
    /// Word length.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    a: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long = "P")]
    p: Option<u64>,
    #[arg(long)]
    a0: Option<u64>,
    #[arg(long)]
    a1: Option<u64>,
    #[arg(long)]
    a2: Option<u64>,
}

impl FamilyArgs {
    fn lookup(&self, name: &str) -> Option<u64> {
        match name {
            "a" => self.a,
            "m" => self.m,
            "P" => self.p,
            "a0" => self.a0,
            "a1" => self.a1,
            "a2" => self.a2,
            _ => None,
        }
    }

    fn spec(&self) -> Result<CodeSpec, Failure> {
        let family = Family::from_params(&self.family, |k| self.lookup(k)).map_err(flag("--family"))?;
        CodeSpec::new(self.n, family).map_err(flag("--family"))
    }

    fn cosets(&self) -> Result<CosetFamily, Failure> {
        let need = |name: &str, v: Option<u64>| {
            v.ok_or_else(|| Failure::usage(format!("--{name} is required for --family {}", self.family)))
        };
        Ok(match self.family.as_str() {
            "vt" => CosetFamily::Vt,
            "inv" => CosetFamily::Inv { m: need("m", self.m)? },
            "vt-mod" => CosetFamily::VtMod { m: need("m", self.m)? },
            "even-pos" => CosetFamily::EvenPos { m: need("m", self.m)? },
            "c2n9" => CosetFamily::C2n9 { m: need("m", self.m)? },
            "cp" => CosetFamily::Cp { p: need("P", self.p)? },
            "cn21" => CosetFamily::Cn21 { p: need("P", self.p)? },
            "cl" => CosetFamily::Cl,
            other => {
                return Err(Failure::usage(format!("--family {other} has no residue cosets")));
            }
        })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Runs, weight, syndromes and transforms of one word.
    Word {
        #[arg(long)]
        word: Word,
    },
    /// Members of a ball around a word.
    Ball {
        #[arg(long, value_enum, default_value_t = KindArg::Ds)]
        kind: KindArg,
        #[arg(long)]
        word: Word,
    },
    /// Delete one position, then optionally flip one position of the result.
    Apply {
        #[arg(long)]
        word: Word,
        #[arg(long)]
        del: usize,
        #[arg(long)]
        sub: Option<usize>,
    },
    /// Intersection of the balls of two words (`--word` twice).
    Intersect {
        #[arg(long = "word", required = true)]
        words: Vec<Word>,
        #[arg(long, value_enum, default_value_t = KindArg::Ds)]
        kind: KindArg,
        /// Also list the S, D, overlap and extra pieces of the ds intersection.
        #[arg(long)]
        parts: bool,
    },
    /// Structural case of a pair (`--word` twice).
    Classify {
        #[arg(long = "word", required = true)]
        words: Vec<Word>,
    },
    /// Edits turning `--word` into `--read`.
    Witness {
        #[arg(long)]
        word: Word,
        #[arg(long)]
        read: Word,
    },
    /// Whether a common read is bad for a pair (`--word` twice).
    Bad {
        #[arg(long = "word", required = true)]
        words: Vec<Word>,
        #[arg(long)]
        read: Word,
        #[arg(long, value_enum)]
        convention: Option<ConventionArg>,
    },
    /// Every word of length `--n` whose ds ball contains `--read`.
    Preimage {
        #[arg(long)]
        read: Word,
        #[arg(long)]
        n: usize,
    },
    /// Deletions of `--longer` within Hamming distance one of `--word`.
    Constrained {
        #[arg(long)]
        word: Word,
        #[arg(long)]
        longer: Word,
    },
    /// Code membership, sizes and cosets.
    Code {
        #[command(subcommand)]
        action: CodeAction,
    },
    /// Run one verifier over `--n ..= --n-max`.
    Verify {
        target: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        n_max: Option<usize>,
        /// Period bound for `rll`.
        #[arg(long = "P")]
        p: Option<u64>,
        /// Reads per bundle for `reconstruction`.
        #[arg(long = "N")]
        reads: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        codewords: Option<usize>,
        #[arg(long)]
        subsets: Option<usize>,
    },
    /// Channel outputs of a word: `--N` distinct reads as a read bundle.
    Simulate {
        #[arg(long)]
        word: Word,
        #[arg(long = "N")]
        reads: usize,
        /// Raw channel draws (possibly repeated) instead of a distinct bundle.
        #[arg(long)]
        raw: bool,
    },
    /// Decode a read bundle file against a code.
    Decode {
        #[command(flatten)]
        code: FamilyArgs,
        /// Design number of reads of the code.
        #[arg(long = "N")]
        reads: usize,
        /// Read bundle file.
        #[arg(long)]
        bundle: PathBuf,
        /// Scan the whole code instead of intersecting preimages.
        #[arg(long)]
        scan: bool,
    },
}

#[derive(Debug, Subcommand)]
enum CodeAction {
    /// Members of a code.
    List {
        #[command(flatten)]
        code: FamilyArgs,
    },
    /// Size and redundancy of a code.
    Size {
        #[command(flatten)]
        code: FamilyArgs,
    },
    /// Membership of one word.
    Check {
        #[command(flatten)]
        code: FamilyArgs,
        #[arg(long)]
        word: Word,
    },
    /// Sizes of every coset of a residue family.
    Cosets {
        #[command(flatten)]
        code: FamilyArgs,
    },
    /// Largest coset of a residue family.
    Best {
        #[command(flatten)]
        code: FamilyArgs,
    },
    /// Whether a code lies inside the code it is built from.
    Subcode {
        #[command(flatten)]
        code: FamilyArgs,
    },
    /// Validate a code file.
    Load {
        #[arg(long)]
        file: PathBuf,
    },
}

/// Subcommands and the library operations each one reaches.
pub const DISPATCH: &[(&str, &[&str])] = &[
    ("word", &["runs", "vt_syndrome", "inversion_number", "psi", "psi_inverse", "max_le2_periodic_length"]),
    ("ball", &["ball", "deletion_ball", "substitution_ball", "ds_ball"]),
    ("apply", &["apply_del_sub"]),
    ("intersect", &["ball_intersection", "intersection_parts", "decompose_intersection"]),
    ("classify", &["classify_pair", "common_affixes"]),
    ("witness", &["witnesses"]),
    ("bad", &["is_bad", "is_bad_with"]),
    ("preimage", &["preimage_ball"]),
    ("constrained", &["constrained_deletion_matches"]),
    ("code list", &["members", "write_code_file"]),
    ("code size", &["size", "redundancy"]),
    ("code check", &["contains"]),
    ("code cosets", &["coset_sizes"]),
    ("code best", &["best_coset"]),
    ("code subcode", &["parent", "subcode_check"]),
    ("code load", &["read_code_file"]),
    ("verify", &["run_target"]),
    ("simulate", &["collect_reads", "channel_samples", "channel_sample"]),
    ("decode", &["decode", "decode_by_scan"]),
];

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

fn flag(name: &'static str) -> impl Fn(Error) -> Failure {
    move |e| Failure::usage(format!("{name}: {e}"))
}

/// What a command produced, in every format it supports.
struct Output {
    json: String,
    text: String,
    csv: Option<String>,
    failed: bool,
}

impl Output {
    fn new(value: &impl Serialize, text: String) -> Self {
        Output {
            json: serde_json::to_string(value).expect("output serializes") + "\n",
            text,
            csv: None,
            failed: false,
        }
    }

    fn words(value: &impl Serialize, words: &[Word]) -> Self {
        let text = words.iter().map(|w| format!("{w}\n")).collect();
        let mut o = Output::new(value, text);
        o.csv = Some(std::iter::once("word\n".to_string()).chain(words.iter().map(|w| format!("{w}\n"))).collect());
        o
    }
}

fn two(words: &[Word]) -> Result<(Word, Word), Failure> {
    match words {
        [x, y] => Ok((*x, *y)),
        _ => Err(Failure::usage(format!("--word must be given exactly twice, got {}", words.len()))),
    }
}

fn bool_text(label: &str, v: bool) -> String {
    format!("{label}: {v}\n")
}

fn word_info(x: &Word) -> Result<Output, Failure> {
    let profile = runs(x);
    let value = json!({
        "word": x,
        "n": x.len(),
        "weight": x.weight(),
        "runs": profile,
        "vt1": vt_syndrome(x, 1).map_err(flag("--word"))?,
        "vt2": vt_syndrome(x, 2).map_err(flag("--word"))?,
        "inversions": inversion_number(x),
        "psi": psi(x),
        "psi_inverse": psi_inverse(x),
        "max_le2_periodic_length": max_le2_periodic_length(x),
        "complement": x.complement(),
        "reverse": x.reverse(),
    });
    let text = format!(
        "word: {x}\nn: {}\nweight: {}\nruns: {}\nvt1: {}\nvt2: {}\ninversions: {}\npsi: {}\npsi_inverse: {}\nmax_le2_periodic_length: {}\n",
        x.len(),
        x.weight(),
        profile.run_count,
        value["vt1"],
        value["vt2"],
        value["inversions"],
        psi(x),
        psi_inverse(x),
        max_le2_periodic_length(x),
    );
    Ok(Output::new(&value, text))
}

fn verify(
    target: &str,
    n: usize,
    n_max: Option<usize>,
    options: &VerifyOptions,
    timing: bool,
) -> Result<Output, Failure> {
    let target: Target = target.parse().map_err(flag("target"))?;
    let n_max = n_max.unwrap_or(n);
    if n_max < n {
        return Err(Failure::usage(format!("--n-max {n_max} is below --n {n}")));
    }
    let mut reports: Vec<VerificationReport> = Vec::new();
    for k in n..=n_max {
        let start = Instant::now();
        let mut r = run_target(target, k, options).map_err(flag("--n"))?;
        if timing {
            r.elapsed = Some(start.elapsed().as_secs_f64());
        }
        reports.push(r);
    }
    let failed = reports.iter().any(|r| r.verdict == Verdict::Fail);
    Ok(Output {
        json: reports.iter().map(|r| r.to_json() + "\n").collect(),
        text: reports.iter().map(|r| r.to_text() + "\n").collect(),
        csv: Some(
            std::iter::once(format!("{}\n", VerificationReport::CSV_HEADER))
                .chain(reports.iter().map(|r| r.to_csv_row() + "\n"))
                .collect(),
        ),
        failed,
    })
}

fn code(action: CodeAction) -> Result<Output, Failure> {
    match action {
        CodeAction::List { code } => {
            let spec = code.spec()?;
            let members = spec.members().map_err(flag("--n"))?;
            let mut file = Vec::new();
            write_code_file(&spec, &mut file).map_err(flag("--out"))?;
            let mut o = Output::words(&json!({ "spec": spec, "members": members }), &members);
            o.text = String::from_utf8(file).expect("code files are ASCII");
            Ok(o)
        }
        CodeAction::Size { code } => {
            let spec = code.spec()?;
            let size = spec.size().map_err(flag("--n"))?;
            let redundancy = spec.redundancy().ok();
            let value = json!({ "spec": spec, "size": size, "redundancy": redundancy });
            let mut o = Output::new(&value, format!("{size}\n"));
            o.csv = Some(format!(
                "size,redundancy\n{size},{}\n",
                redundancy.map(|r| r.to_string()).unwrap_or_default()
            ));
            Ok(o)
        }
        CodeAction::Check { code, word } => {
            let spec = code.spec()?;
            let member = spec.contains(&word).map_err(flag("--word"))?;
            Ok(Output::new(
                &json!({ "spec": spec, "word": word, "member": member }),
                bool_text("member", member),
            ))
        }
        CodeAction::Cosets { code } => {
            let family = code.cosets()?;
            let sizes = coset_sizes(family, code.n).map_err(flag("--n"))?;
            let rows: Vec<Value> = sizes.iter().map(|(s, k)| json!({ "spec": s, "size": k })).collect();
            let text = sizes.iter().map(|(s, k)| format!("{s} size={k}\n")).collect();
            let mut o = Output::new(&rows, text);
            o.csv = Some(
                std::iter::once("params,size\n".to_string())
                    .chain(sizes.iter().map(|(s, k)| {
                        let params: Vec<String> = s.family.params().iter().map(|(p, v)| format!("{p}={v}")).collect();
                        format!("{},{k}\n", params.join(";"))
                    }))
                    .collect(),
            );
            Ok(o)
        }
        CodeAction::Best { code } => {
            let family = code.cosets()?;
            let (spec, size) = best_coset(family, code.n).map_err(flag("--n"))?;
            let redundancy = spec.redundancy().ok();
            Ok(Output::new(
                &json!({ "spec": spec, "size": size, "redundancy": redundancy }),
                format!("{spec} size={size}\n"),
            ))
        }
        CodeAction::Subcode { code } => {
            let spec = code.spec()?;
            let Some(parent) = spec.parent() else {
                return Err(Failure::usage(format!("--family {} is not built inside another code", code.family)));
            };
            let inside = subcode_check(&spec, &parent).map_err(flag("--n"))?;
            Ok(Output::new(
                &json!({ "spec": spec, "parent": parent, "subcode": inside }),
                format!("{spec}\ninside {parent}: {inside}\n"),
            ))
        }
        CodeAction::Load { file } => {
            let f = File::open(&file).map_err(|e| Failure::usage(format!("--file {}: {e}", file.display())))?;
            let (spec, words) = read_code_file(BufReader::new(f)).map_err(flag("--file"))?;
            let o = Output::words(&json!({ "spec": spec, "members": words }), &words);
            Ok(o)
        }
    }
}

fn dispatch(cli: Cli) -> Result<Output, Failure> {
    let seed = cli.seed;
    match cli.command {
        Command::Word { word } => word_info(&word),
        Command::Ball { kind, word } => {
            let b = ball(&word, kind.into()).map_err(flag("--word"))?;
            Ok(Output::words(&b.members(), b.members()))
        }
        Command::Apply { word, del, sub } => {
            let z = apply_del_sub(&word, del, sub).map_err(flag(if sub.is_some() { "--sub" } else { "--del" }))?;
            Ok(Output::new(&z, format!("{z}\n")))
        }
        Command::Intersect { words, kind, parts } => {
            let (x, y) = two(&words)?;
            if !parts {
                let b = ball_intersection(&x, &y, kind.into()).map_err(flag("--word"))?;
                return Ok(Output::words(&b.members(), b.members()));
            }
            let p = intersection_parts(&x, &y).map_err(flag("--word"))?;
            let sizes = p.sizes();
            let value = json!({
                "intersection": p.intersection.members(),
                "s_part": p.s_part.members(),
                "d_part": p.d_part.members(),
                "overlap": p.overlap.members(),
                "extra": p.extra.members(),
                "sizes": sizes,
            });
            let text = format!(
                "total: {}\ns_part: {}\nd_part: {}\noverlap: {}\nextra: {}\n",
                sizes.total, sizes.size_s, sizes.size_d, sizes.size_overlap, sizes.size_b_extra
            );
            Ok(Output::new(&value, text))
        }
        Command::Classify { words } => {
            let (x, y) = two(&words)?;
            let c = classify_pair(&x, &y).map_err(flag("--word"))?;
            let affixes = common_affixes(&x, &y).map_err(flag("--word"))?;
            let text = format!(
                "case: {}\nd: {}\ns: {}\nhamming: {}\nprefix: {}\nsuffix: {}\n",
                c.case_tag.name(),
                c.d,
                c.s,
                c.hamming,
                affixes.prefix,
                affixes.suffix
            );
            Ok(Output::new(&json!({ "classification": c, "affixes": affixes }), text))
        }
        Command::Witness { word, read } => {
            let w = witnesses(&word, &read).map_err(flag("--read"))?;
            let text = w
                .iter()
                .map(|w| match w.sub {
                    Some(k) => format!("del={} sub={k}\n", w.del),
                    None => format!("del={}\n", w.del),
                })
                .collect();
            Ok(Output::new(&w, text))
        }
        Command::Bad { words, read, convention } => {
            let (x, y) = two(&words)?;
            let convention: IndexConvention = convention.map(Into::into).unwrap_or(DECLARED_CONVENTION);
            let bad = is_bad_with(&x, &y, &read, convention).map_err(flag("--read"))?;
            Ok(Output::new(
                &json!({ "bad": bad, "convention": convention.name() }),
                bool_text("bad", bad),
            ))
        }
        Command::Preimage { read, n } => {
            let b = preimage_ball(&read, n).map_err(flag("--n"))?;
            Ok(Output::words(&b.members(), b.members()))
        }
        Command::Constrained { word, longer } => {
            let f = constrained_deletion_matches(&word, &longer).map_err(flag("--longer"))?;
            Ok(Output::words(&f.members(), f.members()))
        }
        Command::Code { action } => code(action),
        Command::Verify {
            target,
            n,
            n_max,
            p,
            reads,
            trials,
            codewords,
            subsets,
        } => {
            let mut options = VerifyOptions { p, ..VerifyOptions::default() };
            let plan = &mut options.reconstruction;
            plan.seed = seed;
            plan.reads = reads.unwrap_or(plan.reads);
            plan.trials = trials.unwrap_or(plan.trials);
            plan.codewords = codewords.unwrap_or(plan.codewords);
            plan.subsets = subsets.unwrap_or(plan.subsets);
            verify(&target, n, n_max, &options, cli.timing)
        }
        Command::Simulate { word, reads, raw } => {
            if raw {
                let draws = channel_samples(&word, reads, seed).map_err(flag("--word"))?;
                return Ok(Output::words(&draws, &draws));
            }
            let bundle = collect_reads(&word, reads, seed).map_err(flag("--N"))?;
            Ok(Output::new(
                &json!({ "n": bundle.n, "N": bundle.len(), "seed": seed, "reads": bundle.reads.members() }),
                bundle.to_text(),
            ))
        }
        Command::Decode { code, reads, bundle, scan } => {
            let spec = code.spec()?;
            let raw = std::fs::read_to_string(&bundle)
                .map_err(|e| Failure::usage(format!("--bundle {}: {e}", bundle.display())))?;
            let b = if raw.trim_start().starts_with('{') {
                bundle_from_json(&raw)
            } else {
                ReadBundle::from_reader(raw.as_bytes())
            }
            .map_err(flag("--bundle"))?;
            let result = if scan { decode_by_scan(&spec, reads, &b) } else { decode(&spec, reads, &b) }
                .map_err(flag("--bundle"))?;
            let text = std::iter::once(format!("{}\n", result.status.name()))
                .chain(result.candidates.iter().map(|c| format!("{c}\n")))
                .collect();
            Ok(Output::new(&result, text))
        }
    }
}

/// The JSON view written by `simulate`: `{"n": .., "reads": [..]}`.
fn bundle_from_json(raw: &str) -> Result<ReadBundle, Error> {
    let v: Value = serde_json::from_str(raw).map_err(|e| Error::Parse(e.to_string()))?;
    let n = v["n"]
        .as_u64()
        .ok_or_else(|| Error::Parse("read bundle lacks n".into()))?;
    let reads = v["reads"]
        .as_array()
        .ok_or_else(|| Error::Parse("read bundle lacks reads".into()))?
        .iter()
        .map(|r| {
            r.as_str()
                .ok_or_else(|| Error::Parse("reads must be strings".into()))?
                .parse::<Word>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    ReadBundle::new(n as usize, reads)
}

/// Parses `argv` (program name first), runs the command and writes its output
/// to `--out` or `stdout`. Diagnostics go to `stderr`. Returns the exit status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("usage error");
            let _ = writeln!(stderr, "{line}");
            return EXIT_USAGE;
        }
    };
    let (format, out, jobs) = (cli.format, cli.out.clone(), cli.jobs);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(stderr, "error: --jobs: {e}");
            return EXIT_USAGE;
        }
    };
    let output = match pool.install(|| dispatch(cli)) {
        Ok(o) => o,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    let body = match format {
        Format::Json => output.json,
        Format::Text => output.text,
        Format::Csv => match output.csv {
            Some(csv) => csv,
            None => {
                let _ = writeln!(stderr, "error: --format csv is only available for tabular output");
                return EXIT_USAGE;
            }
        },
    };
    let written = match &out {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => stdout.write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: --out: {e}");
        return EXIT_USAGE;
    }
    if output.failed {
        EXIT_FAILED
    } else {
        EXIT_OK
    }
}
