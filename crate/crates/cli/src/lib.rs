//! Command-line front-end for `ramsey-core`. Every subcommand runs one library
//! operation and prints a single JSON document. Integers cross the boundary as
//! decimal strings.

use std::io::Read;

use clap::{Args, CommandFactory, Parser, Subcommand};
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use ramsey_core::constructors::{
    basecase_solution, epsilon_matrix, example_19_solution, shift_solution, solution_from_cover,
    solution_from_epsilon, ConstructorError,
};
use ramsey_core::criteria::{
    basecase_threshold, check_columns_condition, check_ip_cover, check_separation, cover_to_blocks,
    is_shift_invariant, signature_bound, verify_block_ordering, zero_sum_subsets, CriteriaError,
    LinearSystem, ShiftInvariantEq, SubsetCover,
};
use ramsey_core::decimal;
use ramsey_core::fs::{
    ap_to_line, fs_enumerate, has_distinct_sums, ip_bar_enumerate, line_to_ap, max_ap_length,
    signed_digit_decompose, sparse_generators, sum_to_word, word_to_sum, ArithProgression,
    EpsilonWord, FsError, FsSpec, IpBarIndexing, ParametricWord,
};
use ramsey_core::search::{
    brauer_number, check_pseudo_neat, find_mono, find_shifted_fs, forall_colorings, hj_number,
    vdw_number, verify_digit_matrix, Coloring, GroundSet, SearchError, SearchOptions, Target,
    DEFAULT_BUDGET, DEFAULT_SEED,
};

/// Usage errors: unknown subcommand, bad flags.
pub const EXIT_USAGE: i32 = 64;
/// Malformed input or a rejected library call.
pub const EXIT_INPUT: i32 = 65;

/// Each subcommand with the library operations it runs.
pub const SUBCOMMANDS: &[(&str, &[&str])] = &[
    ("fs-enum", &["fs_enumerate", "has_distinct_sums"]),
    ("fs-sparse", &["sparse_generators"]),
    ("ipbar-enum", &["ip_bar_enumerate"]),
    ("word2sum", &["word_to_sum"]),
    ("sum2word", &["sum_to_word", "signed_digit_decompose"]),
    ("line2ap", &["line_to_ap"]),
    ("ap2line", &["ap_to_line"]),
    ("max-ap", &["max_ap_length"]),
    ("zero-sum-subsets", &["zero_sum_subsets"]),
    ("check-ip-cover", &["check_ip_cover"]),
    ("check-separation", &["check_separation"]),
    ("check-columns", &["check_columns_condition"]),
    ("cover2blocks", &["cover_to_blocks"]),
    ("shift-invariant", &["is_shift_invariant"]),
    ("signature", &["signature_bound"]),
    ("basecase-threshold", &["basecase_threshold"]),
    ("solve-from-cover", &["solution_from_cover"]),
    ("basecase-solve", &["basecase_solution"]),
    (
        "epsilon-solve",
        &["epsilon_matrix", "solution_from_epsilon", "shift_solution"],
    ),
    ("example19", &["example_19_solution"]),
    ("find-mono", &["find_mono"]),
    ("forall", &["forall_colorings"]),
    ("vdw", &["vdw_number"]),
    ("brauer", &["brauer_number"]),
    ("hj", &["hj_number"]),
    ("shifted-fs", &["find_shifted_fs"]),
    ("pseudo-neat", &["check_pseudo_neat", "verify_digit_matrix"]),
];

#[derive(Parser, Debug)]
#[command(
    name = "ramsey",
    version,
    about = "Finite-sums sets, partition-regularity criteria and coloring search",
    args_override_self = true,
    subcommand_required = false,
    arg_required_else_help = true
)]
struct Cli {
    /// Cap on explored colorings or subsets.
    #[arg(long, global = true, env = "RAMSEY_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Seed for random colorings; recorded in search output.
    #[arg(long, global = true, env = "RAMSEY_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for exhaustive search.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Run newline-delimited JSON commands from a file (`-` for stdin). Each
    /// line is an argument array such as `["vdw","-r","2","-k","3"]`.
    #[arg(long, value_name = "FILE")]
    batch: Option<String>,
    #[command(subcommand)]
    command: Option<Command>,
}

/// A finite-sums set given by flags or as JSON.
#[derive(Args, Debug, Clone)]
struct SpecArgs {
    /// Generators, e.g. `1,3,9`.
    #[arg(long, allow_hyphen_values = true)]
    generators: Option<String>,
    /// Digit bound: digits range over `0..k`.
    #[arg(short, long, default_value_t = 2)]
    k: u32,
    /// Constant added to every sum.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    shift: String,
    /// Spec as JSON, e.g. `{"generators":[1,3],"k":3}`, or `@file`.
    #[arg(long, conflicts_with = "generators")]
    spec: Option<String>,
}

/// A shift-invariant equation `left . x = right . y`.
#[derive(Args, Debug, Clone)]
struct EqArgs {
    /// Left coefficients, e.g. `1,1`.
    #[arg(long)]
    left: String,
    /// Right coefficients, e.g. `2`.
    #[arg(long)]
    right: String,
}

/// A coloring given explicitly or drawn from the global seed.
#[derive(Args, Debug, Clone)]
struct ColoringArgs {
    /// Colors as JSON, e.g. `[0,1,1,0]` or `{"colors":[...]}`, or `@file`.
    #[arg(long, required_unless_present = "random")]
    coloring: Option<String>,
    /// Use a uniform random coloring with this many colors.
    #[arg(long, conflicts_with = "coloring")]
    random: Option<u8>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sorted elements of a finite-sums set.
    FsEnum(SpecArgs),
    /// Generators with x_{j+1} = (k-1) * (x_1 + ... + x_j) + 1.
    FsSparse {
        #[arg(short, long)]
        k: u32,
        #[arg(short, long)]
        n: usize,
        /// First generator.
        #[arg(long, default_value = "1")]
        seed_value: String,
    },
    /// Sums with the i-th digit in 0..i (or 0..=i with `--indexing shifted`).
    IpbarEnum {
        #[arg(long)]
        generators: String,
        /// Number of generators used.
        #[arg(short = 'N', long)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Indexing::Literal)]
        indexing: Indexing,
    },
    /// Sum of a digit word.
    Word2sum {
        /// Digits, e.g. `1,0,2`.
        #[arg(long)]
        word: String,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Digit word of a member; with `--base`, signed digits of `x` in that base.
    Sum2word {
        #[arg(long, allow_hyphen_values = true)]
        sum: String,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, requires_all = ["m", "bound"], conflicts_with_all = ["generators", "spec"])]
        base: Option<String>,
        /// Number of signed digits, at positions base^1..base^m.
        #[arg(short, long)]
        m: Option<usize>,
        /// Largest allowed digit magnitude.
        #[arg(long)]
        bound: Option<String>,
    },
    /// Progression of a one-variable parametric word such as `(*,0,1)`.
    Line2ap {
        #[arg(long)]
        word: String,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Parametric word whose points are the progression, if any.
    Ap2line {
        #[arg(short, long)]
        a: String,
        #[arg(short, long)]
        d: String,
        #[arg(long)]
        len: usize,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Longest progression inside a sorted list.
    MaxAp {
        /// Values, e.g. `1,2,4,8` or a JSON list, or `@file`.
        #[arg(long)]
        values: String,
    },
    /// Column subsets of a matrix summing to zero.
    ZeroSumSubsets(MatrixArgs),
    /// Zero-sum column subsets covering every column.
    CheckIpCover(MatrixArgs),
    /// A cover that also separates every pair of columns.
    CheckSeparation(MatrixArgs),
    /// Columns-condition block ordering with span witnesses.
    CheckColumns(MatrixArgs),
    /// Block ordering derived from a cover.
    Cover2blocks {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// 1-based subsets, e.g. `[[1,3],[2,3]]`.
        #[arg(long)]
        cover: String,
    },
    /// Whether coefficients sum to zero.
    ShiftInvariant {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Bound above which distinct solutions exist in distinct-sums sets.
    Signature(EqArgs),
    /// Threshold a + b for a x + b y = (a+b) z.
    BasecaseThreshold {
        #[arg(short, long)]
        a: String,
        #[arg(short, long)]
        b: String,
    },
    /// Solution built from a zero-sum cover.
    SolveFromCover {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long)]
        cover: String,
        /// One positive generator per cover subset.
        #[arg(long)]
        ys: String,
    },
    /// Distinct solution of a x + b y = (a+b) z.
    BasecaseSolve {
        #[arg(short, long)]
        a: String,
        #[arg(short, long)]
        b: String,
        #[arg(long, default_value = "1")]
        y1: String,
        #[arg(long, default_value = "1")]
        y2: String,
    },
    /// Solution from the epsilon vectors of a shift-invariant equation.
    EpsilonSolve {
        #[command(flatten)]
        eq: EqArgs,
        /// One positive generator per vector (n - 1 of them).
        #[arg(long)]
        ys: String,
        /// Also add this constant to every entry.
        #[arg(long)]
        shift: Option<String>,
    },
    /// The worked solution of 3 x1 + 5 x2 + 11 x3 = 19 x4.
    Example19 {
        #[arg(long, default_value = "1")]
        y1: String,
        #[arg(long, default_value = "1")]
        y2: String,
    },
    /// First monochromatic target instance under a coloring.
    FindMono {
        #[command(flatten)]
        ground: GroundArgs,
        #[command(flatten)]
        coloring: ColoringArgs,
    },
    /// Does every r-coloring contain a monochromatic target?
    Forall {
        #[command(flatten)]
        ground: GroundArgs,
        #[arg(short, long, default_value_t = 2)]
        r: u8,
        /// Search all colorings instead of one per color permutation.
        #[arg(long)]
        no_canonical: bool,
    },
    /// Van der Waerden number W(r, k).
    Vdw {
        #[arg(short, long)]
        r: u8,
        #[arg(short, long)]
        k: usize,
        #[arg(long, default_value_t = 64)]
        cap: u64,
    },
    /// Brauer number: progression of length k together with s*d.
    Brauer {
        #[arg(short, long)]
        r: u8,
        #[arg(short, long)]
        k: usize,
        #[arg(short, long, default_value_t = 1)]
        s: u64,
        #[arg(long, default_value_t = 64)]
        cap: u64,
    },
    /// Hales-Jewett number HJ(r, t).
    Hj {
        #[arg(short, long)]
        r: u8,
        #[arg(short, long)]
        t: u32,
        #[arg(long, default_value_t = 4)]
        cap: u64,
    },
    /// Monochromatic m + FS^k(y_1..y_t) inside a colored finite-sums set.
    ShiftedFs {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        coloring: ColoringArgs,
        #[arg(short, long, default_value_t = 1)]
        t: usize,
    },
    /// Distinct solution inside FS^k(B, ..., B^t); with `--digits`, checks a digit matrix.
    PseudoNeat {
        #[command(flatten)]
        eq: EqArgs,
        #[arg(short, long)]
        k: u32,
        #[arg(short, long, default_value_t = 2)]
        t: usize,
        /// Digit matrix to check instead of searching, e.g. `[[1,1],[7,1],[0,1],[2,1]]`.
        #[arg(long)]
        digits: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
struct MatrixArgs {
    /// Rows as JSON, e.g. `[[1,1,-1]]`, a full system object, or `@file`.
    #[arg(long)]
    matrix: String,
}

#[derive(Args, Debug, Clone)]
struct GroundArgs {
    /// Ground set as JSON: `{"interval":9}`, `{"integers":[1,2,4]}`,
    /// `{"cube":{"t":3,"n":2}}` or `{"fs":{"generators":[1,3],"k":3}}`.
    #[arg(long)]
    ground: String,
    /// Target as JSON, e.g. `{"kind":"ap","len":3}` or `{"kind":"line"}`.
    #[arg(long)]
    target: String,
}

#[derive(clap::ValueEnum, Debug, Clone, Copy)]
enum Indexing {
    Literal,
    Shifted,
}

/// An error reported as `{"error": code, "message": ...}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: String,
    pub message: String,
}

impl CliError {
    fn malformed(message: impl Into<String>) -> Self {
        CliError {
            code: "malformed-input".into(),
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> String {
        json!({"error": self.code, "message": self.message}).to_string()
    }
}

macro_rules! from_library_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError { code: e.code().into(), message: e.to_string() }
            }
        }
    )*};
}

from_library_error!(FsError, CriteriaError, ConstructorError, SearchError);

type CliResult = Result<Value, CliError>;

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn command() -> clap::Command {
    Cli::command()
}

/// Runs the CLI on `args`, which include the program name.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    if let Some(path) = &cli.batch {
        if cli.command.is_some() {
            return usage_error(Cli::command().error(
                clap::error::ErrorKind::ArgumentConflict,
                "--batch cannot be combined with a subcommand",
            ));
        }
        return run_batch(&cli, path);
    }
    let Some(command) = &cli.command else {
        return usage_error(Cli::command().error(
            clap::error::ErrorKind::MissingSubcommand,
            "a subcommand or --batch is required",
        ));
    };
    match execute(&cli, command) {
        Ok(v) => Output {
            code: 0,
            stdout: format!("{v}\n"),
            stderr: String::new(),
        },
        Err(e) => Output {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("{}\n", e.to_json()),
        },
    }
}

fn usage_error(e: clap::Error) -> Output {
    use clap::error::ErrorKind;
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output {
            code: 0,
            stdout: e.render().to_string(),
            stderr: String::new(),
        },
        ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => Output {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: e.render().to_string(),
        },
        _ => {
            let message = first_line(&e);
            Output {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("{}\n", json!({"error": "usage", "message": message})),
            }
        }
    }
}

fn first_line(e: &clap::Error) -> String {
    let text = e.render().to_string();
    let first = text.lines().next().unwrap_or_default();
    first.trim_start_matches("error: ").to_string()
}

/// Runs each line of the batch with the outer global flags as defaults.
/// Every line yields one output line; failed lines yield an error object.
fn run_batch(cli: &Cli, path: &str) -> Output {
    let text = if path == "-" {
        let mut s = String::new();
        match std::io::stdin().read_to_string(&mut s) {
            Ok(_) => Ok(s),
            Err(e) => Err(e.to_string()),
        }
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    };
    let text = match text {
        Ok(t) => t,
        Err(message) => {
            let e = CliError::malformed(message);
            return Output {
                code: EXIT_INPUT,
                stdout: String::new(),
                stderr: format!("{}\n", e.to_json()),
            };
        }
    };
    let mut stdout = String::new();
    let mut failed = false;
    for (no, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let argv: Vec<String> = match serde_json::from_str(line) {
            Ok(a) => a,
            Err(e) => {
                failed = true;
                let e = CliError::malformed(format!("line {}: {e}", no + 1));
                stdout.push_str(&e.to_json());
                stdout.push('\n');
                continue;
            }
        };
        let mut full = vec![
            "ramsey".to_string(),
            format!("--budget={}", cli.budget),
            format!("--seed={}", cli.seed),
            format!("--threads={}", cli.threads),
        ];
        full.extend(argv);
        let out = match Cli::try_parse_from(&full) {
            Ok(inner) if inner.batch.is_some() => Err(CliError {
                code: "usage".into(),
                message: "batches do not nest".into(),
            }),
            Ok(inner) => match &inner.command {
                Some(cmd) => execute(&inner, cmd),
                None => Err(CliError {
                    code: "usage".into(),
                    message: "a subcommand is required".into(),
                }),
            },
            Err(e) => Err(CliError {
                code: "usage".into(),
                message: first_line(&e),
            }),
        };
        match out {
            Ok(v) => stdout.push_str(&v.to_string()),
            Err(e) => {
                failed = true;
                stdout.push_str(&e.to_json());
            }
        }
        stdout.push('\n');
    }
    Output {
        code: if failed { EXIT_INPUT } else { 0 },
        stdout,
        stderr: String::new(),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

/// Reads `@path` from disk and returns anything else unchanged.
fn payload(s: &str) -> Result<String, CliError> {
    match s.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| CliError::malformed(format!("{path}: {e}")))
        }
        None => Ok(s.to_string()),
    }
}

fn parse_json<T: DeserializeOwned>(s: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(&payload(s)?).map_err(|e| CliError::malformed(format!("{what}: {e}")))
}

fn parse_int(s: &str, what: &str) -> Result<BigInt, CliError> {
    decimal::parse(s.trim()).map_err(|e| CliError::malformed(format!("{what}: {e}")))
}

/// A list given as `1,2,3`, as a JSON array of numbers or strings, or `@file`.
fn parse_ints(s: &str, what: &str) -> Result<Vec<BigInt>, CliError> {
    let text = payload(s)?;
    let t = text.trim();
    if t.starts_with('[') {
        #[derive(serde::Deserialize)]
        struct List(#[serde(with = "decimal::vec")] Vec<BigInt>);
        let List(v) =
            serde_json::from_str(t).map_err(|e| CliError::malformed(format!("{what}: {e}")))?;
        Ok(v)
    } else {
        decimal::parse_list(t).map_err(|e| CliError::malformed(format!("{what}: {e}")))
    }
}

fn parse_digits(s: &str) -> Result<Vec<u32>, CliError> {
    let t = payload(s)?;
    let t = t.trim().trim_start_matches('[').trim_end_matches(']');
    t.split(',')
        .map(|d| {
            d.trim()
                .parse::<u32>()
                .map_err(|e| CliError::malformed(format!("word digit {d:?}: {e}")))
        })
        .collect()
}

fn parse_matrix(m: &MatrixArgs) -> Result<LinearSystem, CliError> {
    let text = payload(&m.matrix)?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::malformed(format!("matrix: {e}")))?;
    if value.is_array() {
        #[derive(serde::Deserialize)]
        struct Rows(#[serde(with = "decimal::matrix")] Vec<Vec<BigInt>>);
        let Rows(rows) = serde_json::from_value(value)
            .map_err(|e| CliError::malformed(format!("matrix: {e}")))?;
        Ok(LinearSystem::from_rows(rows)?)
    } else {
        serde_json::from_value(value).map_err(|e| CliError::malformed(format!("matrix: {e}")))
    }
}

fn parse_spec(a: &SpecArgs) -> Result<FsSpec, CliError> {
    if let Some(s) = &a.spec {
        return parse_json(s, "spec");
    }
    let Some(gens) = &a.generators else {
        return Err(CliError::malformed("give --generators or --spec"));
    };
    let gens = parse_ints(gens, "generators")?;
    Ok(FsSpec::new(gens, a.k)?.with_shift(parse_int(&a.shift, "shift")?)?)
}

fn parse_eq(a: &EqArgs) -> Result<ShiftInvariantEq, CliError> {
    Ok(ShiftInvariantEq::new(
        parse_ints(&a.left, "left")?,
        parse_ints(&a.right, "right")?,
    )?)
}

fn parse_coloring(a: &ColoringArgs, len: usize, seed: u64) -> Result<Coloring, CliError> {
    if let Some(r) = a.random {
        if r == 0 {
            return Err(CliError::malformed("--random needs at least one color"));
        }
        return Ok(Coloring::random(len, r, seed));
    }
    let text = payload(a.coloring.as_deref().unwrap_or_default())?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::malformed(format!("coloring: {e}")))?;
    let value = if value.is_array() {
        json!({"colors": value})
    } else {
        value
    };
    serde_json::from_value(value).map_err(|e| CliError::malformed(format!("coloring: {e}")))
}

fn ground_len(g: &GroundSet) -> Result<usize, CliError> {
    Ok(g.resolve()?.len())
}

fn options(cli: &Cli, canonical: bool) -> SearchOptions {
    SearchOptions {
        budget: cli.budget,
        canonical,
        threads: cli.threads.max(1),
        seed: Some(cli.seed),
    }
}

fn execute(cli: &Cli, command: &Command) -> CliResult {
    use Command::*;
    match command {
        FsEnum(a) => {
            let spec = parse_spec(a)?;
            let values = fs_enumerate(&spec)?;
            Ok(json!({
                "spec": to_value(&spec),
                "count": values.len(),
                "distinct_sums": has_distinct_sums(&spec),
                "values": strings(&values),
            }))
        }
        FsSparse { k, n, seed_value } => {
            let spec = sparse_generators(*k, *n, &parse_int(seed_value, "seed-value")?)?;
            Ok(to_value(&spec))
        }
        IpbarEnum {
            generators,
            count,
            indexing,
        } => {
            let gens = parse_ints(generators, "generators")?;
            let indexing = match indexing {
                Indexing::Literal => IpBarIndexing::Literal,
                Indexing::Shifted => IpBarIndexing::Shifted,
            };
            let values = ip_bar_enumerate(&gens, *count, indexing)?;
            Ok(json!({
                "indexing": to_value(&indexing),
                "count": values.len(),
                "values": strings(&values),
            }))
        }
        Word2sum { word, spec } => {
            let spec = parse_spec(spec)?;
            let word = EpsilonWord::new(parse_digits(word)?, spec.k())?;
            Ok(json!({"sum": word_to_sum(&word, &spec)?.to_string()}))
        }
        Sum2word {
            sum,
            spec,
            base,
            m,
            bound,
        } => {
            let x = parse_int(sum, "sum")?;
            if let Some(base) = base {
                let base = parse_int(base, "base")?;
                let bound = parse_int(bound.as_deref().unwrap_or_default(), "bound")?;
                let digits = signed_digit_decompose(&x, &base, m.unwrap_or_default(), &bound)?;
                return Ok(json!({"base": base.to_string(), "digits": strings(&digits)}));
            }
            let spec = parse_spec(spec)?;
            Ok(json!({"word": to_value(&sum_to_word(&x, &spec)?)}))
        }
        Line2ap { word, spec } => {
            let spec = parse_spec(spec)?;
            let word = ParametricWord::parse(word, spec.k())?;
            Ok(to_value(&line_to_ap(&word, &spec)?))
        }
        Ap2line { a, d, len, spec } => {
            let spec = parse_spec(spec)?;
            let ap = ArithProgression::new(parse_int(a, "a")?, parse_int(d, "d")?, *len)?;
            Ok(json!({"line": to_value(&ap_to_line(&ap, &spec)?)}))
        }
        MaxAp { values } => {
            let values = parse_ints(values, "values")?;
            Ok(to_value(&max_ap_length(&values)?))
        }
        ZeroSumSubsets(m) => {
            let subsets = zero_sum_subsets(&parse_matrix(m)?)?;
            Ok(json!({"subsets": to_value(&subsets)}))
        }
        CheckIpCover(m) => Ok(json!({"cover": to_value(&check_ip_cover(&parse_matrix(m)?)?)})),
        CheckSeparation(m) => Ok(json!({"cover": to_value(&check_separation(&parse_matrix(m)?)?)})),
        CheckColumns(m) => {
            let sys = parse_matrix(m)?;
            let ordering = check_columns_condition(&sys)?;
            if let Some(o) = &ordering {
                verify_block_ordering(&sys, o).map_err(|message| CliError {
                    code: "verification-failed".into(),
                    message,
                })?;
            }
            Ok(json!({"ordering": to_value(&ordering)}))
        }
        Cover2blocks { matrix, cover } => {
            let sys = parse_matrix(matrix)?;
            let cover: SubsetCover = parse_json(cover, "cover")?;
            Ok(json!({"ordering": to_value(&cover_to_blocks(&sys, &cover)?)}))
        }
        ShiftInvariant { coeffs } => {
            let coeffs = parse_ints(coeffs, "coeffs")?;
            Ok(json!({"shift_invariant": is_shift_invariant(&coeffs)?}))
        }
        Signature(e) => Ok(to_value(&signature_bound(&parse_eq(e)?))),
        BasecaseThreshold { a, b } => {
            let t = basecase_threshold(&parse_int(a, "a")?, &parse_int(b, "b")?)?;
            Ok(json!({"threshold": t.to_string()}))
        }
        SolveFromCover { matrix, cover, ys } => {
            let sys = parse_matrix(matrix)?;
            let cover: SubsetCover = parse_json(cover, "cover")?;
            let ys = parse_ints(ys, "ys")?;
            Ok(to_value(&solution_from_cover(&sys, &cover, &ys)?))
        }
        BasecaseSolve { a, b, y1, y2 } => Ok(to_value(&basecase_solution(
            &parse_int(a, "a")?,
            &parse_int(b, "b")?,
            &parse_int(y1, "y1")?,
            &parse_int(y2, "y2")?,
        )?)),
        EpsilonSolve { eq, ys, shift } => {
            let eq = parse_eq(eq)?;
            let em = epsilon_matrix(&eq)?;
            let sol = solution_from_epsilon(&eq, &em, &parse_ints(ys, "ys")?)?;
            let mut out = json!({"matrix": to_value(&em), "solution": to_value(&sol)});
            if let Some(m) = shift {
                out["shifted"] = to_value(&shift_solution(&sol, &parse_int(m, "shift")?)?);
            }
            Ok(out)
        }
        Example19 { y1, y2 } => Ok(to_value(&example_19_solution(
            &parse_int(y1, "y1")?,
            &parse_int(y2, "y2")?,
        )?)),
        FindMono { ground, coloring } => {
            let g: GroundSet = parse_json(&ground.ground, "ground")?;
            let target: Target = parse_json(&ground.target, "target")?;
            let c = parse_coloring(coloring, ground_len(&g)?, cli.seed)?;
            let w = find_mono(&g, &target, &c)?;
            let mut out = json!({"found": w.is_some(), "witness": to_value(&w)});
            if coloring.random.is_some() {
                out["seed"] = json!(cli.seed);
                out["coloring"] = to_value(&c);
            }
            Ok(out)
        }
        Forall {
            ground,
            r,
            no_canonical,
        } => {
            let g: GroundSet = parse_json(&ground.ground, "ground")?;
            let target: Target = parse_json(&ground.target, "target")?;
            Ok(to_value(&forall_colorings(
                &g,
                *r,
                &target,
                &options(cli, !no_canonical),
            )?))
        }
        Vdw { r, k, cap } => Ok(to_value(&vdw_number(*r, *k, *cap, &options(cli, true))?)),
        Brauer { r, k, s, cap } => Ok(to_value(&brauer_number(
            *r,
            *k,
            *s,
            *cap,
            &options(cli, true),
        )?)),
        Hj { r, t, cap } => Ok(to_value(&hj_number(*r, *t, *cap, &options(cli, true))?)),
        ShiftedFs { spec, coloring, t } => {
            let spec = parse_spec(spec)?;
            let len = ground_len(&GroundSet::Fs(spec.clone()))?;
            let c = parse_coloring(coloring, len, cli.seed)?;
            let s = find_shifted_fs(&spec, &c, *t)?;
            let mut out = json!({"found": s.is_some(), "shifted": to_value(&s)});
            if coloring.random.is_some() {
                out["seed"] = json!(cli.seed);
                out["coloring"] = to_value(&c);
            }
            Ok(out)
        }
        PseudoNeat { eq, k, t, digits } => {
            let eq = parse_eq(eq)?;
            if let Some(d) = digits {
                let d: Vec<Vec<u32>> = parse_json(d, "digits")?;
                return Ok(json!({"k": k, "valid": verify_digit_matrix(&eq, *k, &d)}));
            }
            Ok(to_value(&check_pseudo_neat(
                &eq,
                *k,
                *t,
                &options(cli, true),
            )?))
        }
    }
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}
