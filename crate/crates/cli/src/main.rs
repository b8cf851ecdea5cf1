//! `scl`: shortcut certificates and isometric-cycle checks in the Cayley
//! graphs of `F(a,b) x F(c,d)`.
//!
//! Exit codes: 0 success / property holds, 1 property violated, 2 usage or
//! parse error, 3 resource cap reached (the query would need a larger BFS
//! radius or enumeration horizon than configured).

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use scl_core::acceptance::{self, Level};
use scl_core::cayley::{DistanceOracle, DEFAULT_ENUMERATION_CAP, DEFAULT_RADIUS_CAP};
use scl_core::families::{self, FamilySpec, FamilyVariant};
use scl_core::group::MarkedAlphabet;
use scl_core::shortcut_free::{cancellation_tree, centroid, centroid_excursions, split_null_word};
use scl_core::shortcut_product::{shortcut, verify_certificate};
use scl_core::{Error, Word};

const RADIUS_CAP_ENV: &str = "SCL_RADIUS_CAP";

#[derive(Parser)]
#[command(
    name = "scl",
    version,
    about = "Shortcut certificates and isometric cycles in Cay(F(a,b) x F(c,d))"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlphabetArgs {
    /// Generating set: "std" ({a,b,c,d}) or "twisted" ({a,b,c,t}, t = dB)
    #[arg(long, default_value = "std", conflicts_with = "gen")]
    alphabet: String,

    /// Custom generating set "sym=word,..." with images over std, e.g. "t=dB"
    #[arg(long)]
    gen: Option<String>,
}

impl AlphabetArgs {
    fn resolve(&self) -> Result<Arc<MarkedAlphabet>, CliError> {
        if let Some(spec) = &self.gen {
            return MarkedAlphabet::custom_from_spec(spec).map_err(CliError::Core);
        }
        match self.alphabet.as_str() {
            "std" => Ok(MarkedAlphabet::standard()),
            "twisted" => Ok(MarkedAlphabet::twisted()),
            other => Err(CliError::Usage(format!(
                "unknown alphabet '{other}': use std, twisted, or --gen \"sym=word,...\""
            ))),
        }
    }
}

#[derive(Args)]
struct OracleArgs {
    /// Per-side BFS radius cap; distances up to twice this are decidable
    /// (default 8, env SCL_RADIUS_CAP overrides)
    #[arg(long)]
    radius_cap: Option<usize>,
}

impl OracleArgs {
    fn cap(&self) -> usize {
        self.radius_cap
            .or_else(|| std::env::var(RADIUS_CAP_ENV).ok().and_then(|v| v.parse().ok()))
            .unwrap_or(DEFAULT_RADIUS_CAP)
    }

    fn oracle(&self, alphabet: Arc<MarkedAlphabet>, enum_cap: usize) -> DistanceOracle {
        DistanceOracle::with_caps(alphabet, self.cap(), enum_cap)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Freely reduce a word (deletes adjacent inverse pairs)
    Reduce {
        word: String,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Evaluate a word to its normal form, printed in std letters
    Eval {
        word: String,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Graph distance from the identity to WORD, or between two words
    Dist {
        word: String,
        word2: Option<String>,
        #[command(flatten)]
        alphabet: AlphabetArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// A geodesic word representing the same element as WORD
    Geodesic {
        word: String,
        #[command(flatten)]
        alphabet: AlphabetArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Isometric-cycle checks and bounded enumeration
    #[command(subcommand)]
    Cycle(CycleCommand),
    /// Shortcut constructions
    #[command(subcommand)]
    Shortcut(ShortcutCommand),
    /// The explicit word families over the twisted alphabet
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Exact sphere and ball sizes around the identity
    Ball {
        #[arg(long)]
        radius: usize,
        /// Write "r,sphere,ball" rows to this file
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        alphabet: AlphabetArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Structured verification suites
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand)]
enum CycleCommand {
    /// Check that a null word defines an isometrically embedded cycle
    Check {
        /// Loop to check, in the compact grammar
        word: Option<String>,
        /// Use the commutator family word w_N instead of an explicit word
        #[arg(long, value_name = "N", conflicts_with = "word")]
        wn: Option<usize>,
        #[command(flatten)]
        alphabet: AlphabetArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Canonical representatives of all isometric cycles through the
    /// identity, up to the given length
    Enumerate {
        #[arg(long)]
        max_len: usize,
        /// Write "length,word" rows to this file
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Enumeration horizon cap (default 16)
        #[arg(long)]
        enum_cap: Option<usize>,
        #[command(flatten)]
        alphabet: AlphabetArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
}

#[derive(Subcommand)]
enum ShortcutCommand {
    /// Split a null word of one free factor into two null cyclic halves
    /// with min >= floor(|u|/3)
    Free {
        word: String,
        /// Write the cancellation tree (centroid highlighted) as DOT
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Produce and verify a shortcut certificate for a null word over
    /// {a,b,c,d}
    Product {
        word: String,
        /// Write the certificate as a single JSON line
        #[arg(long)]
        cert: Option<PathBuf>,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// The length-(4n+4) commutator loop w_n
    Wn { n: usize },
    /// The length-(2n+2) subword family u_k and its variants
    Uk {
        n: usize,
        k: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Plain)]
        variant: VariantArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Plain,
    Prime,
    Dprime,
    Tprime,
}

impl From<VariantArg> for FamilyVariant {
    fn from(v: VariantArg) -> FamilyVariant {
        match v {
            VariantArg::Plain => FamilyVariant::Plain,
            VariantArg::Prime => FamilyVariant::Prime,
            VariantArg::Dprime => FamilyVariant::DoublePrime,
            VariantArg::Tprime => FamilyVariant::TriplePrime,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Run the acceptance suite; exit 0 iff every criterion passes
    Acceptance {
        #[arg(long, value_enum, default_value_t = LevelArg::Full)]
        level: LevelArg,
        #[arg(long)]
        seed: Option<u64>,
    },
}

enum CliError {
    Core(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::RadiusExhausted(_))
            | CliError::Core(Error::CapExceeded { .. }) => 3,
            CliError::Core(Error::NotNull) => 1,
            _ => 2,
        }
    }
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // Clap prints help/version to stdout with success and usage
        // errors to stderr with code 2.
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Reduce { word, alphabet } => {
            let alphabet = alphabet.resolve()?;
            let w = Word::parse(&word, &alphabet)?;
            println!("{}", w.free_reduce());
            Ok(0)
        }
        Command::Eval { word, alphabet } => {
            let alphabet = alphabet.resolve()?;
            let w = Word::parse(&word, &alphabet)?;
            println!("{}", alphabet.eval(&w)?);
            Ok(0)
        }
        Command::Dist { word, word2, alphabet, oracle } => {
            let alphabet = alphabet.resolve()?;
            let mut oracle = oracle.oracle(Arc::clone(&alphabet), DEFAULT_ENUMERATION_CAP);
            let g = alphabet.eval(&Word::parse(&word, &alphabet)?)?;
            let d = match word2 {
                Some(second) => {
                    let h = alphabet.eval(&Word::parse(&second, &alphabet)?)?;
                    oracle.distance(&g, &h)?
                }
                None => oracle.distance_from_identity(&g)?,
            };
            println!("{d}");
            Ok(0)
        }
        Command::Geodesic { word, alphabet, oracle } => {
            let alphabet = alphabet.resolve()?;
            let mut oracle = oracle.oracle(Arc::clone(&alphabet), DEFAULT_ENUMERATION_CAP);
            let g = alphabet.eval(&Word::parse(&word, &alphabet)?)?;
            println!("{}", oracle.geodesic_witness(&g)?);
            Ok(0)
        }
        Command::Cycle(cycle) => run_cycle(cycle),
        Command::Shortcut(shortcut) => run_shortcut(shortcut),
        Command::Family(family) => {
            let word = match family {
                FamilyCommand::Wn { n } => families::w_n(n),
                FamilyCommand::Uk { n, k, variant } => {
                    families::u_family(&FamilySpec::new(n, k, variant.into()))?
                }
            };
            println!("{word}");
            Ok(0)
        }
        Command::Ball { radius, csv, alphabet, oracle } => {
            let alphabet = alphabet.resolve()?;
            let mut oracle = oracle.oracle(alphabet, DEFAULT_ENUMERATION_CAP);
            let rows = oracle.ball_profile(radius)?;
            println!("{:>4} {:>12} {:>12}", "r", "sphere", "ball");
            for row in &rows {
                println!("{:>4} {:>12} {:>12}", row.r, row.sphere, row.ball);
            }
            if let Some(path) = csv {
                let mut out = String::from("r,sphere,ball\n");
                for row in &rows {
                    out.push_str(&format!("{},{},{}\n", row.r, row.sphere, row.ball));
                }
                write_file(&path, &out)?;
            }
            Ok(0)
        }
        Command::Verify(VerifyCommand::Acceptance { level, seed }) => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let seed = seed.unwrap_or(acceptance::DEFAULT_SEED);
            let all_passed = acceptance::run_with(level, seed, &mut |r| {
                println!(
                    "[{:2}/10] {}  {:<58} ({:6.2}s)  {}",
                    r.index,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.seconds,
                    r.detail
                );
            });
            Ok(if all_passed { 0 } else { 1 })
        }
    }
}

fn run_cycle(command: CycleCommand) -> Result<u8, CliError> {
    match command {
        CycleCommand::Check { word, wn, alphabet, oracle } => {
            let alphabet = alphabet.resolve()?;
            let loop_word = match (word, wn) {
                (Some(text), None) => Word::parse(&text, &alphabet)?,
                (None, Some(n)) => families::w_n(n),
                _ => {
                    return Err(CliError::Usage(
                        "provide exactly one of <word> or --wn N".into(),
                    ))
                }
            };
            let mut oracle = oracle.oracle(Arc::clone(&alphabet), DEFAULT_ENUMERATION_CAP);
            let report = oracle.is_isometric_cycle(&loop_word)?;
            if report.is_isometric {
                println!("isometric");
                Ok(0)
            } else {
                let v = report.violation.expect("non-isometric reports carry a violation");
                println!(
                    "not isometric: d(g_{}, g_{}) = {}, expected {}",
                    v.i, v.j, v.actual, v.expected
                );
                Ok(1)
            }
        }
        CycleCommand::Enumerate { max_len, csv, enum_cap, alphabet, oracle } => {
            let alphabet = alphabet.resolve()?;
            let cap = enum_cap.unwrap_or(DEFAULT_ENUMERATION_CAP);
            let mut oracle = oracle.oracle(alphabet, cap);
            let cycles = oracle.enumerate_isometric_cycles(max_len)?;
            for cycle in &cycles {
                println!("{:>3} {}", cycle.len(), cycle);
            }
            if let Some(path) = csv {
                let mut out = String::from("length,word\n");
                for cycle in &cycles {
                    out.push_str(&format!("{},{}\n", cycle.len(), cycle));
                }
                write_file(&path, &out)?;
            }
            Ok(0)
        }
    }
}

fn run_shortcut(command: ShortcutCommand) -> Result<u8, CliError> {
    match command {
        ShortcutCommand::Free { word, dot, alphabet } => {
            let alphabet = alphabet.resolve()?;
            let u = Word::parse(&word, &alphabet)?;
            let split = split_null_word(&u)?;
            if let Some(path) = dot {
                let tree = cancellation_tree(&u)?;
                write_file(&path, &tree.to_dot(Some(centroid(&tree))))?;
            }
            let excursions = centroid_excursions(&u)?;
            println!("rotation: {}", split.rotation);
            println!("u1: {}", split.first);
            println!("u2: {}", split.second);
            println!(
                "min: {} (bound floor({}/3) = {}; centroid vertex {} with {} excursions)",
                split.min_len(),
                u.len(),
                u.len() / 3,
                excursions.centroid,
                excursions.pieces.len()
            );
            Ok(0)
        }
        ShortcutCommand::Product { word, cert, alphabet } => {
            let resolved = alphabet.resolve()?;
            if resolved.name() != "std" {
                return Err(CliError::Usage(format!(
                    "shortcut certificates are defined over the standard alphabet {{a,b,c,d}}; \
                     no uniform constants exist for '{}' loops - use `scl cycle check` to test \
                     them instead",
                    resolved.name()
                )));
            }
            let w = Word::parse(&word, &resolved)?;
            let certificate = shortcut(&w)?;
            if let Err(violation) = verify_certificate(&w, &certificate) {
                println!("certificate failed re-verification: {violation}");
                return Ok(1);
            }
            println!("factor: {}", certificate.factor);
            println!("rotation: {}", certificate.rotation);
            println!("w1: {}", certificate.w1);
            println!("w2: {}", certificate.w2);
            println!("mu: {}", certificate.mu);
            println!(
                "loops: {} and {} (original {}, bound {})",
                certificate.loop1_length,
                certificate.loop2_length,
                w.len(),
                if w.len() >= 24 {
                    (w.len() - w.len() / 6).to_string()
                } else {
                    "n/a below length 24".to_string()
                }
            );
            let line = certificate.to_json_line();
            println!("{line}");
            if let Some(path) = cert {
                write_file(&path, &format!("{line}\n"))?;
            }
            Ok(0)
        }
    }
}
