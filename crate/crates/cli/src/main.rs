use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

/// Generators and finite-prefix audits for the Thue-Morse sequence and the
/// sequences built from it.
#[derive(Debug, Parser)]
#[command(name = "morse", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a prefix of a sequence to stdout.
    Generate(GenerateArgs),
    /// Check square-, cube- or overlap-freeness of a prefix.
    Check(CheckArgs),
    /// Censuses and diagnostics with JSON reports.
    Audit {
        #[command(subcommand)]
        kind: AuditKind,
    },
    /// Same as `audit squares`.
    AuditSquares(SquaresArgs),
    /// Same as `audit recurrence`.
    Recurrence(RecurrenceArgs),
    /// Same as `audit compare`.
    Compare(CompareArgs),
}

#[derive(Debug, Subcommand)]
enum AuditKind {
    /// Classify every square of a Thue-Morse prefix.
    Squares(SquaresArgs),
    /// Locate unaligned copies of the partition blocks.
    Lookalikes(LookalikeArgs),
    /// Worst recurrence gaps per factor length.
    Recurrence(RecurrenceArgs),
    /// Shared factors of two sequences at a fixed length.
    Compare(CompareArgs),
    /// Subword complexity and right-special factor counts.
    Complexity(ComplexityArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Ascii,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Order {
    DescLex,
    AscLex,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Source {
    Theta,
    Vartheta,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Property {
    Square,
    Cube,
    Overlap,
}

/// Parameter overrides applied on top of a family name.
#[derive(Debug, Clone, Args)]
pub struct FamilyParams {
    /// Run lengths for `alpha`.
    #[arg(long, value_name = "D1,D2,D3")]
    pub triple: Option<String>,
    /// Seed word for `flip`.
    #[arg(long, value_name = "WORD")]
    pub seed: Option<String>,
    /// Zero-gap lengths for `kappa`.
    #[arg(long, value_name = "G1,G2,G3")]
    pub gaps: Option<String>,
    /// Block order for `kappa`.
    #[arg(long, value_enum)]
    pub order: Option<Order>,
    /// First section for `kappa`.
    #[arg(long)]
    pub start_section: Option<usize>,
    /// Ternary sequence driving `alpha` or `kappa`.
    #[arg(long, value_enum)]
    pub source: Option<Source>,
}

#[derive(Debug, Clone, Args)]
pub struct Limits {
    /// Upper bound on `--length`.
    #[arg(long, default_value_t = 1 << 26)]
    pub max_length: usize,
    /// Witnesses kept in a report.
    #[arg(long, default_value_t = 16)]
    pub max_witnesses: usize,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// tm, theta, vartheta, v, w, beta, alpha[:d1,d2,d3], flip:SEED or kappa[:g1,g2,g3].
    pub family: String,
    #[arg(long)]
    pub length: usize,
    #[command(flatten)]
    pub params: FamilyParams,
    #[arg(long, value_enum, default_value = "ascii")]
    pub format: Format,
    #[arg(long, default_value_t = 1 << 26)]
    pub max_length: usize,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub property: Property,
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub length: usize,
    #[command(flatten)]
    pub params: FamilyParams,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Debug, Args)]
pub struct SquaresArgs {
    /// Thue-Morse prefix length.
    #[arg(long, default_value_t = 1 << 14)]
    pub length: usize,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Debug, Args)]
pub struct LookalikeArgs {
    /// Thue-Morse prefix length, a multiple of `2^max-k`.
    #[arg(long, default_value_t = 1 << 16)]
    pub length: usize,
    #[arg(long, default_value_t = 8)]
    pub max_k: u32,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Debug, Args)]
pub struct RecurrenceArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub length: usize,
    #[arg(long)]
    pub max_len: usize,
    #[command(flatten)]
    pub params: FamilyParams,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub family_a: String,
    #[arg(long)]
    pub family_b: String,
    #[arg(long)]
    pub depth: usize,
    #[arg(long, default_value_t = 10_000)]
    pub length: usize,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Debug, Args)]
pub struct ComplexityArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub length: usize,
    #[arg(long, default_value_t = 12)]
    pub max_n: usize,
    #[command(flatten)]
    pub params: FamilyParams,
    #[command(flatten)]
    pub limits: Limits,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => commands::generate(&args),
        Command::Check(args) => commands::check(&args),
        Command::Audit { kind } => match kind {
            AuditKind::Squares(args) => commands::audit_squares(&args),
            AuditKind::Lookalikes(args) => commands::audit_lookalikes(&args),
            AuditKind::Recurrence(args) => commands::audit_recurrence(&args),
            AuditKind::Compare(args) => commands::audit_compare(&args),
            AuditKind::Complexity(args) => commands::audit_complexity(&args),
        },
        Command::AuditSquares(args) => commands::audit_squares(&args),
        Command::Recurrence(args) => commands::audit_recurrence(&args),
        Command::Compare(args) => commands::audit_compare(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(commands::CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(io::stderr(), "morse: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
