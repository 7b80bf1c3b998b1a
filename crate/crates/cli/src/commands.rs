use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, BufWriter, Write};
use std::time::Instant;

use morse_core::derived::{DigitTriple, TernarySource};
use morse_core::dynamics::{language_disjointness, least_disjoint_depth, uniform_recurrence_bound};
use morse_core::method_b::{BlockOrder, MethodBConfig};
use morse_core::repetitions::{classify_tm_squares, runs, SquareClass};
use morse_core::sequence::parse_triple;
use morse_core::thue_morse::{classify_lookalikes, tm_prefix, BlockKind, FlipSeed};
use morse_core::words::{right_special_census, subword_complexity};
use morse_core::{Error, SequenceSpec, Word};
use serde_json::json;

use crate::report::{AuditReport, Outcome};
use crate::{
    CheckArgs, CompareArgs, ComplexityArgs, FamilyParams, Format, GenerateArgs, LookalikeArgs, Order, Property,
    RecurrenceArgs, Source, SquaresArgs,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(Error::Usage(_) | Error::SquareInDigits { .. }) => 2,
            CliError::Core(Error::Integrity(_)) | CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Core(e) => e.fmt(f),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CmdResult = Result<u8, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn check_length(length: usize, max_length: usize) -> Result<(), CliError> {
    if length > max_length {
        return usage(format!("length {length} exceeds --max-length {max_length}"));
    }
    Ok(())
}

fn source(s: Source) -> TernarySource {
    match s {
        Source::Theta => TernarySource::Theta,
        Source::Vartheta => TernarySource::Vartheta,
    }
}

/// Parses `family` and applies the flag overrides that fit its variant.
pub fn resolve(family: &str, params: &FamilyParams) -> Result<SequenceSpec, CliError> {
    let mut spec: SequenceSpec = match &params.seed {
        Some(seed) if matches!(family.to_ascii_lowercase().as_str(), "flip" | "seeded-flip") => {
            format!("{family}:{seed}").parse()?
        }
        _ => family.parse()?,
    };
    let reject = |flag: &str| usage(format!("--{flag} does not apply to family {family}"));
    match &mut spec {
        SequenceSpec::MethodA { triple, source: src } => {
            if let Some(t) = &params.triple {
                *triple = DigitTriple::new(parse_triple(t)?)?;
            }
            if let Some(s) = params.source {
                *src = source(s);
            }
        }
        _ if params.triple.is_some() => return reject("triple"),
        _ => {}
    }
    match &mut spec {
        SequenceSpec::SeededFlip(seed) => {
            if let Some(s) = &params.seed {
                *seed = FlipSeed::new(Word::from_ascii(s, 2)?)?;
            }
        }
        _ if params.seed.is_some() => return reject("seed"),
        _ => {}
    }
    match &mut spec {
        SequenceSpec::Kappa(config) => {
            let gaps = params.gaps.as_deref().map(parse_triple).transpose()?.unwrap_or(config.gap_values());
            let order = match params.order {
                Some(Order::DescLex) => BlockOrder::DescLex,
                Some(Order::AscLex) => BlockOrder::AscLex,
                None => config.block_order(),
            };
            let src = params.source.map(source).unwrap_or(config.source());
            let start = params.start_section.unwrap_or(config.start_section());
            *config = MethodBConfig::new(gaps, src, order, start)?;
        }
        _ if params.gaps.is_some() => return reject("gaps"),
        _ if params.order.is_some() => return reject("order"),
        _ if params.start_section.is_some() => return reject("start-section"),
        SequenceSpec::MethodA { .. } => {}
        _ if params.source.is_some() => return reject("source"),
        _ => {}
    }
    Ok(spec)
}

fn emit(report: &AuditReport) -> CmdResult {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    serde_json::to_writer_pretty(&mut out, report).map_err(io::Error::from)?;
    writeln!(out)?;
    out.flush()?;
    Ok(report.verdict.exit_code())
}

pub fn generate(args: &GenerateArgs) -> CmdResult {
    check_length(args.length, args.max_length)?;
    let spec = resolve(&args.family, &args.params)?;
    let word = spec.prefix(args.length);
    let mut out = BufWriter::with_capacity(1 << 16, io::stdout().lock());
    match args.format {
        Format::Ascii => {
            if word.alphabet_size() > 10 {
                return usage("alphabet too large for ASCII output; use --format json");
            }
            let mut buf = Vec::with_capacity(1 << 16);
            for chunk in word.symbols().chunks(1 << 16) {
                buf.clear();
                buf.extend(chunk.iter().map(|&s| b'0' + s));
                out.write_all(&buf)?;
            }
        }
        Format::Json => {
            out.write_all(b"[")?;
            for (i, s) in word.symbols().iter().enumerate() {
                if i > 0 {
                    out.write_all(b",")?;
                }
                write!(out, "{s}")?;
            }
            out.write_all(b"]")?;
        }
    }
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(0)
}

pub fn check(args: &CheckArgs) -> CmdResult {
    let started = Instant::now();
    check_length(args.length, args.limits.max_length)?;
    let spec = resolve(&args.family, &args.params)?;
    let word = spec.prefix(args.length);
    let all = runs(&word);
    let (property, offending): (&'static str, Vec<_>) = match args.property {
        Property::Square => ("square-free", all.iter().collect()),
        Property::Cube => ("cube-free", all.iter().filter(|r| r.has_cube()).collect()),
        Property::Overlap => ("overlap-free", all.iter().filter(|r| r.has_overlap()).collect()),
    };
    let mut by_period: BTreeMap<usize, usize> = BTreeMap::new();
    for r in &offending {
        *by_period.entry(r.period).or_default() += 1;
    }
    let mut report = AuditReport::new(property, Some(&spec), word.len());
    report.verdict = Outcome::from_holds(offending.is_empty());
    report.set_witnesses(offending.iter().map(|r| r.witness(&word)), args.limits.max_witnesses);
    report.census = json!({ "violations": offending.len(), "violations_by_root_length": by_period });
    report.details = json!({ "maximal_repetitions": all.len() });
    emit(&report.finish(started))
}

pub fn audit_squares(args: &SquaresArgs) -> CmdResult {
    let started = Instant::now();
    check_length(args.length, args.limits.max_length)?;
    let census = classify_tm_squares(args.length)?;
    let mut distinct_other: BTreeMap<String, usize> = BTreeMap::new();
    for sq in census.squares.iter().filter(|s| s.class == SquareClass::Other) {
        distinct_other.entry(sq.root.to_string()).or_insert(sq.start);
    }
    let mut report = AuditReport::new("square-classification", Some(&SequenceSpec::ThueMorse), args.length);
    report.set_witnesses(census.squares.iter().filter(|s| s.class == SquareClass::Other), args.limits.max_witnesses);
    report.census = json!({
        "squares": census.squares.len(),
        "partition_similar": census.partition_similar,
        "other": census.other,
        "power_of_two_other": census.power_of_two_other,
        "by_root_length": census.by_root_length,
    });
    report.details = json!({ "first_occurrence_of_other_roots": distinct_other });
    emit(&report.finish(started))
}

pub fn audit_lookalikes(args: &LookalikeArgs) -> CmdResult {
    let started = Instant::now();
    check_length(args.length, args.limits.max_length)?;
    if args.max_k == 0 || args.max_k > 30 {
        return usage("--max-k must be in 1..=30");
    }
    let prefix = tm_prefix(args.length);
    let mut table = Vec::new();
    let mut exceptions = Vec::new();
    for k in 1..=args.max_k {
        let found = classify_lookalikes(&prefix, k)?;
        let count = |kind: BlockKind| found.iter().filter(|o| o.kind == kind).count();
        let (x_copies, y_copies) = (count(BlockKind::X), count(BlockKind::Y));
        let bad: Vec<_> = found.into_iter().filter(|o| !o.centered).collect();
        table.push(json!({
            "k": k,
            "x_copies": x_copies,
            "y_copies": y_copies,
            "exceptions": bad.len(),
        }));
        exceptions.extend(bad);
    }
    let mut report = AuditReport::new("lookalike-centering", Some(&SequenceSpec::ThueMorse), args.length);
    report.verdict = Outcome::from_holds(exceptions.is_empty());
    report.set_witnesses(&exceptions, args.limits.max_witnesses);
    report.census = json!({ "by_k": table, "exceptions": exceptions.len() });
    emit(&report.finish(started))
}

pub fn audit_recurrence(args: &RecurrenceArgs) -> CmdResult {
    let started = Instant::now();
    check_length(args.length, args.limits.max_length)?;
    let spec = resolve(&args.family, &args.params)?;
    let word = spec.prefix(args.length);
    let rec = uniform_recurrence_bound(&word, args.max_len)?;
    let table: Vec<_> = rec
        .lengths
        .iter()
        .map(|l| {
            json!({
                "length": l.length,
                "factor_count": l.factor_count,
                "worst_gap": l.worst_gap,
                "n_bound": l.n_bound,
                "absent_later": l.absent_later.len(),
            })
        })
        .collect();
    let mut report = AuditReport::new("uniform-recurrence-in-window", Some(&spec), word.len());
    report.verdict = Outcome::from_holds(rec.recurrent_in_window());
    report.set_witnesses(rec.factors_absent_later.iter().map(|w| w.to_string()), args.limits.max_witnesses);
    report.census = json!({ "lengths": table });
    report.details = json!({ "window_length": rec.window_length, "max_len": rec.max_len, "diagnosis": rec.diagnosis });
    emit(&report.finish(started))
}

pub fn audit_compare(args: &CompareArgs) -> CmdResult {
    let started = Instant::now();
    check_length(args.length, args.limits.max_length)?;
    let a: SequenceSpec = args.family_a.parse()?;
    let b: SequenceSpec = args.family_b.parse()?;
    let (wa, wb) = (a.prefix(args.length), b.prefix(args.length));
    let shared = language_disjointness(&wa, &wb, args.depth)?;
    let least = least_disjoint_depth(&wa, &wb, args.depth)?;
    let mut report = AuditReport::new("factor-language-disjointness", None, args.length);
    report.verdict = Outcome::from_holds(shared.is_empty());
    report.set_witnesses(shared.members().iter().map(|w| w.to_string()), args.limits.max_witnesses);
    report.census = json!({ "depth": args.depth, "shared_factors": shared.len(), "least_disjoint_depth": least });
    report.details = json!({
        "family_a": { "name": a.to_string(), "family": a.family() },
        "family_b": { "name": b.to_string(), "family": b.family() },
    });
    emit(&report.finish(started))
}

pub fn audit_complexity(args: &ComplexityArgs) -> CmdResult {
    let started = Instant::now();
    check_length(args.length, args.limits.max_length)?;
    let spec = resolve(&args.family, &args.params)?;
    let word = spec.prefix(args.length);
    let complexity = subword_complexity(&word, args.max_n)?;
    let special = right_special_census(&word, args.max_n)?;
    let mut report = AuditReport::new("factor-complexity", Some(&spec), word.len());
    report.census = json!({ "subword_complexity": complexity, "right_special": special });
    report.details = json!({ "max_n": args.max_n });
    emit(&report.finish(started))
}
