//! `dtower`: correction terms of ±1 surgery from knot complex documents.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 parse or usage error, 3 invalid
//! complex, 4 grading or d-invariant failure, 5 Borromean mismatch.

mod listing;
mod repl;

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::{Parser, Subcommand};
use dtower_core::cone::{verify_borromean, D_B_NOTE};
use dtower_core::models::{self, PRESET_NAMES};
use dtower_core::{compute_d_batch, read_complex, write_complex, y_slice, DConfig, Error, KnotComplex};

const EXIT_IO: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_COMPUTE: u8 = 4;
const EXIT_MISMATCH: u8 = 5;

/// Overrides the first truncation bound tried for d.
const WINDOW_VAR: &str = "DTOWER_WINDOW";

#[derive(Debug, Parser)]
#[command(name = "dtower", version, about = "d-invariants of +1 and -1 surgery on knots, over Z/2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Input {
    /// Complex document (JSON).
    #[arg(required_unless_present = "preset", conflicts_with = "preset")]
    file: Option<PathBuf>,
    /// Built-in complex instead of a file.
    #[arg(long, value_parser = PossibleValuesParser::new(PRESET_NAMES))]
    preset: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print d(S^3_{+1}(K)) and d(S^3_{-1}(K)).
    D {
        files: Vec<PathBuf>,
        #[arg(long, value_parser = PossibleValuesParser::new(PRESET_NAMES))]
        preset: Vec<String>,
    },
    /// Write the connected sum of two complexes (files first, then presets).
    Sum {
        files: Vec<PathBuf>,
        #[arg(long, value_parser = PossibleValuesParser::new(PRESET_NAMES))]
        preset: Vec<String>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Check d^2 = 0, filtration and supplied gradings.
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Write the mirror complex.
    Mirror {
        #[command(flatten)]
        input: Input,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Print adjacency, bifiltration levels and y-slice homology.
    Info {
        #[command(flatten)]
        input: Input,
    },
    /// Check the tower structure of +1 or -1 surgery on the genus-g Borromean knot.
    Borromean {
        #[arg(long)]
        genus: u32,
        #[arg(long, allow_negative_numbers = true)]
        sign: i64,
    },
    /// Interactive menu session.
    Repl,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    fn io(path: &Path, e: io::Error) -> Self {
        Self::new(EXIT_IO, format!("{}: {e}", path.display()))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            Error::Invalid(_) => EXIT_INVALID,
            _ => EXIT_COMPUTE,
        };
        Self::new(code, e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

type CliResult<T = ()> = Result<T, Failure>;

enum Source {
    File(PathBuf),
    Preset(String),
}

impl Source {
    fn load(&self) -> CliResult<KnotComplex> {
        match self {
            Source::File(path) => {
                let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
                read_complex(&text).map_err(|e| {
                    let f = Failure::from(e);
                    Failure::new(f.code, format!("{}: {}", path.display(), f.message))
                })
            }
            Source::Preset(name) => {
                models::preset(name).ok_or_else(|| Failure::new(EXIT_PARSE, format!("unknown preset {name}")))
            }
        }
    }

    fn label(&self) -> String {
        match self {
            Source::File(path) => path.display().to_string(),
            Source::Preset(name) => name.clone(),
        }
    }
}

fn sources(files: Vec<PathBuf>, presets: Vec<String>) -> Vec<Source> {
    files.into_iter().map(Source::File).chain(presets.into_iter().map(Source::Preset)).collect()
}

impl Input {
    fn source(self) -> Source {
        match (self.file, self.preset) {
            (Some(f), _) => Source::File(f),
            (None, Some(p)) => Source::Preset(p),
            (None, None) => unreachable!("clap requires one of file and preset"),
        }
    }
}

fn d_config() -> CliResult<DConfig> {
    let mut cfg = DConfig::default();
    if let Ok(text) = std::env::var(WINDOW_VAR) {
        let window: i64 = text.trim().parse().ok().filter(|&w| w > 0).ok_or_else(|| {
            Failure::new(EXIT_PARSE, format!("{WINDOW_VAR} must be a positive integer, got {text:?}"))
        })?;
        cfg.initial_window = Some(window);
        cfg.max_window = cfg.max_window.max(4 * window);
    }
    Ok(cfg)
}

fn write_file(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|e| Failure::io(path, e))
}

fn cmd_d(inputs: Vec<Source>) -> CliResult {
    if inputs.is_empty() {
        return Err(Failure::new(EXIT_PARSE, "d needs a file or --preset"));
    }
    let cfg = d_config()?;
    let complexes = inputs.iter().map(Source::load).collect::<CliResult<Vec<_>>>()?;
    let reports = compute_d_batch(&complexes, &cfg);
    let many = inputs.len() > 1;
    let mut failures: Vec<Failure> = Vec::new();
    for (src, report) in inputs.iter().zip(reports) {
        if many {
            println!("{}:", src.label());
        }
        match report {
            Ok(r) => print!("{}", listing::d_lines(r.d_plus, r.d_minus)),
            Err(e) => {
                let f = Failure::from(e);
                failures.push(Failure::new(f.code, format!("{}: {}", src.label(), f.message)));
            }
        }
    }
    match failures.len() {
        0 => Ok(()),
        1 => Err(failures.remove(0)),
        n => {
            for f in &failures {
                eprintln!("error: {f}");
            }
            Err(Failure::new(failures[0].code, format!("{n} of {} inputs failed", inputs.len())))
        }
    }
}

fn cmd_sum(inputs: Vec<Source>, out: &Path) -> CliResult {
    let [a, b] = <[Source; 2]>::try_from(inputs)
        .map_err(|v| Failure::new(EXIT_PARSE, format!("sum needs exactly two complexes, got {}", v.len())))?;
    let sum = a.load()?.tensor_product(&b.load()?)?;
    write_file(out, &write_complex(&sum))?;
    println!("Created knot {} having adjacency list", sum.name());
    print!("{}", listing::adjacency(&sum));
    println!("and bifiltrations");
    print!("{}", listing::bifiltrations(&sum));
    Ok(())
}

fn cmd_validate(input: Source) -> CliResult {
    let c = input.load()?;
    let report = c.validate();
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    println!("defines a complex: {}", yes_no(report.is_complex));
    println!("filtered: {}", yes_no(report.is_filtered));
    println!("gradings consistent: {}", yes_no(report.grading_consistent));
    for v in &report.violations {
        println!("  {v}");
    }
    c.ensure_valid()?;
    Ok(())
}

fn cmd_mirror(input: Source, out: &Path) -> CliResult {
    let m = input.load()?.mirror()?;
    write_file(out, &write_complex(&m))
}

fn cmd_info(input: Source) -> CliResult {
    let c = input.load()?;
    println!("knot {}", c.name());
    println!("coefficients: Z/2");
    println!("generators: {}, arrows: {}", c.len(), c.arrow_count());
    println!("adjacency list");
    print!("{}", listing::adjacency(&c));
    println!("bifiltration levels");
    print!("{}", listing::bifiltrations(&c));
    println!("symmetric under (i,j) -> (j,i): {}", if c.symmetry_check() { "yes" } else { "no" });
    let slice = y_slice(&c)?;
    println!("y-slice homology rank: {}", slice.homology_rank());
    Ok(())
}

fn cmd_borromean(genus: u32, sign: i64) -> CliResult {
    if sign != 1 && sign != -1 {
        return Err(Failure::new(EXIT_PARSE, format!("--sign must be 1 or -1, got {sign}")));
    }
    let report = verify_borromean(genus, sign).map_err(|e| match e {
        Error::Precondition(m) => Failure::new(EXIT_PARSE, m),
        e => Failure::new(EXIT_MISMATCH, e.to_string()),
    })?;
    println!("{report}");
    println!("note: {D_B_NOTE}");
    if report.pass() {
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_MISMATCH,
            format!(
                "expected towers {} and d_b = {}",
                dtower_core::cone::format_multiset(&report.expected),
                report.expected_d_b
            ),
        ))
    }
}

fn cmd_repl() -> CliResult {
    let cfg = d_config()?;
    let stdin = io::stdin();
    let stdout = io::stdout();
    repl::Session::new(stdin.lock(), stdout.lock(), cfg).run().map_err(|e| Failure::new(EXIT_IO, e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::D { files, preset } => cmd_d(sources(files, preset)),
        Command::Sum { files, preset, out } => cmd_sum(sources(files, preset), &out),
        Command::Validate { input } => cmd_validate(input.source()),
        Command::Mirror { input, out } => cmd_mirror(input.source(), &out),
        Command::Info { input } => cmd_info(input.source()),
        Command::Borromean { genus, sign } => cmd_borromean(genus, sign),
        Command::Repl => cmd_repl(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
