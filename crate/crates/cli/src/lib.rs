//! Argument parsing and dispatch for the `reesse` binary.
//!
//! Data goes to stdout or to `--out` files; diagnostics go to stderr.
//! Exit codes: 0 on success, 1 on a domain failure (failed reproduction,
//! dirty lever set, rejected parameters), 2 on usage or IO errors.

use std::fmt;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use reesse_core::attack::{render_report, run_attack, AttackFilter, Format, Rounding, TripleSet};
use reesse_core::keys::{
    build_omega, keygen, validate_omega, ModulusChoice, OmegaFamily, OmegaSet, PrivateKey, PublicKey, SumMode,
    SystemParams, Variant,
};
use reesse_core::reproduce::{reproduce, ExampleId, ReproductionResult};
use reesse_core::study::{study_completeness, study_false_positive, StudyConfig};

#[derive(Debug, Parser)]
#[command(
    name = "reesse",
    version,
    about = "REESSE1+ key transform and continued-fraction attack laboratory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a key pair
    Keygen(KeygenArgs),
    /// Run the continued-fraction attack on a public key
    Attack(AttackArgs),
    /// Replay a published example
    Reproduce(ReproduceArgs),
    /// Build a lever set
    OmegaGen(OmegaGenArgs),
    /// Check a lever set for sum relations
    OmegaCheck(OmegaCheckArgs),
    /// Seeded Monte-Carlo measurement of the attack
    Study(StudyArgs),
}

/// Lever family with its parameter: `scaled:D`, `shifted:D` or `odd`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OmegaSpec {
    pub family: OmegaFamily,
    pub delta: u64,
}

impl FromStr for OmegaSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, delta) = match s.split_once(':') {
            Some((name, d)) => (
                name,
                Some(d.parse::<u64>().map_err(|_| format!("bad lever parameter `{d}`"))?),
            ),
            None => (s, None),
        };
        let family: OmegaFamily = name.parse()?;
        let delta = match (family, delta) {
            (OmegaFamily::OddSumfree, None) => 0,
            (OmegaFamily::OddSumfree, Some(_)) => return Err("the odd family takes no parameter".into()),
            (_, Some(d)) => d,
            (_, None) => return Err(format!("`{name}` needs a parameter, e.g. `{name}:1`")),
        };
        Ok(OmegaSpec { family, delta })
    }
}

impl fmt::Display for OmegaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            OmegaFamily::Scaled => write!(f, "scaled:{}", self.delta),
            OmegaFamily::Shifted => write!(f, "shifted:{}", self.delta),
            OmegaFamily::OddSumfree => f.write_str("odd"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulusArg(pub ModulusChoice);

impl FromStr for ModulusArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(ModulusArg(ModulusChoice::Auto));
        }
        s.parse::<BigUint>()
            .map(|m| ModulusArg(ModulusChoice::Explicit(m)))
            .map_err(|_| format!("modulus must be `auto` or a decimal integer, got `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    V1,
    V21,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    /// Approximation bound only
    Legendre,
    /// Bound plus the jump condition
    Jump,
    /// Bound with constant 2^(n-3)
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RoundingArg {
    Floor,
    Ceil,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TriplesArg {
    All,
    Distinct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum FormatArg {
    Json,
    #[default]
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Distinct,
    Repetition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StudyKind {
    /// False-positive rate on non-relation triples
    Fp,
    /// Recovery rate on planted relations
    Completeness,
}

#[derive(Debug, Args)]
pub struct KeygenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub rho: u64,
    /// scaled:D, shifted:D or odd
    #[arg(long, default_value = "scaled:1")]
    pub omega: OmegaSpec,
    #[arg(long, value_enum, default_value = "v1")]
    pub variant: VariantArg,
    /// Outer exponent for v21; drawn from the seed when absent
    #[arg(long)]
    pub delta: Option<BigUint>,
    /// `auto` or an explicit prime
    #[arg(long, default_value = "auto")]
    pub modulus: ModulusArg,
    #[arg(long)]
    pub seed: u64,
    /// Private key file; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub pub_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AttackArgs {
    #[arg(long = "pub")]
    pub public: PathBuf,
    #[arg(long, value_enum, default_value = "jump")]
    pub filter: FilterArg,
    /// Replaces the computed maxA
    #[arg(long)]
    pub max_a: Option<BigUint>,
    #[arg(long, value_enum, default_value = "floor")]
    pub max_a_rounding: RoundingArg,
    #[arg(long, value_enum, default_value = "all")]
    pub triples: TriplesArg,
    #[arg(long, value_enum, default_value = "table")]
    pub format: FormatArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// 1-5, table2 or all
    #[arg(long)]
    pub example: String,
    #[arg(long, value_enum, default_value = "table")]
    pub format: FormatArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OmegaGenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub omega: OmegaSpec,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OmegaCheckArgs {
    /// Lever file written by omega-gen
    #[arg(long, conflicts_with_all = ["omega", "n"], required_unless_present = "omega")]
    pub file: Option<PathBuf>,
    #[arg(long, requires = "n")]
    pub omega: Option<OmegaSpec>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value = "distinct")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "table")]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct StudyArgs {
    #[arg(value_enum)]
    pub kind: StudyKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub rho: u64,
    #[arg(long, default_value = "scaled:1")]
    pub omega: OmegaSpec,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "table")]
    pub format: FormatArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    /// Rejected parameters or a failed check.
    Domain(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

fn domain(e: impl fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_atomic(path, contents),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(contents.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn with_newline(mut text: String) -> String {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    text
}

/// Parses a full argument vector, program name first. Help, version and
/// usage errors come back as `clap::Error`, which knows its exit code.
pub fn parse_args<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

/// Runs one command. `Ok` means exit code 0.
pub fn execute(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Keygen(args) => run_keygen(args),
        Command::Attack(args) => run_attack_cmd(args),
        Command::Reproduce(args) => run_reproduce(args),
        Command::OmegaGen(args) => {
            let set = build_omega(args.omega.family, args.n, args.omega.delta).map_err(domain)?;
            emit(args.out.as_deref(), &with_newline(set.to_json()))
        }
        Command::OmegaCheck(args) => run_omega_check(args),
        Command::Study(args) => run_study(args),
    }
}

fn run_keygen(args: &KeygenArgs) -> Result<(), CliError> {
    let omega = build_omega(args.omega.family, args.n, args.omega.delta).map_err(domain)?;
    let variant = match args.variant {
        VariantArg::V1 => Variant::V1,
        VariantArg::V21 => Variant::V21,
    };
    if variant == Variant::V1 && args.delta.is_some() {
        return Err(CliError::Domain("--delta applies only to --variant v21".into()));
    }
    let params = SystemParams::new(args.n, args.rho, omega).with_variant(variant, args.delta.clone());
    let (private, public): (PrivateKey, PublicKey) = keygen(&params, &args.modulus.0, args.seed).map_err(domain)?;
    emit(args.out.as_deref(), &with_newline(private.to_json()))?;
    if let Some(path) = &args.pub_out {
        write_atomic(path, &with_newline(public.to_json()))?;
    }
    Ok(())
}

fn run_attack_cmd(args: &AttackArgs) -> Result<(), CliError> {
    let text = read(&args.public)?;
    let public = PublicKey::from_json(&text).map_err(|e| CliError::Io(format!("{}: {e}", args.public.display())))?;
    let filter = match args.filter {
        FilterArg::Legendre => AttackFilter::legendre(),
        FilterArg::Jump => AttackFilter::jump(),
        FilterArg::Strict => AttackFilter::strict(public.n),
    }
    .with_max_a(args.max_a.clone())
    .with_rounding(match args.max_a_rounding {
        RoundingArg::Floor => Rounding::Floor,
        RoundingArg::Ceil => Rounding::Ceil,
    })
    .with_triples(match args.triples {
        TriplesArg::All => TripleSet::All,
        TriplesArg::Distinct => TripleSet::Distinct,
    });
    let report = run_attack(&public, &filter).map_err(domain)?;
    let format = match args.format {
        FormatArg::Json => Format::Json,
        FormatArg::Table => Format::Table,
    };
    emit(args.out.as_deref(), &render_report(&report, format))
}

fn run_reproduce(args: &ReproduceArgs) -> Result<(), CliError> {
    let ids: Vec<ExampleId> = if args.example.eq_ignore_ascii_case("all") {
        ExampleId::ALL.to_vec()
    } else {
        vec![args.example.parse::<ExampleId>().map_err(CliError::Domain)?]
    };
    let results: Vec<ReproductionResult> = ids.into_iter().map(reproduce).collect();
    let text = match args.format {
        FormatArg::Json => {
            let body = if results.len() == 1 {
                serde_json::to_string_pretty(&results[0])
            } else {
                serde_json::to_string_pretty(&results)
            };
            with_newline(body.expect("reproduction result serializes"))
        }
        FormatArg::Table => results.iter().map(ReproductionResult::render_table).collect(),
    };
    emit(args.out.as_deref(), &text)?;
    let failed: Vec<String> = results
        .iter()
        .filter(|r| !r.overall)
        .map(|r| r.example_id.to_string())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Domain(format!(
            "reproduction failed for example(s) {}",
            failed.join(", ")
        )))
    }
}

fn run_omega_check(args: &OmegaCheckArgs) -> Result<(), CliError> {
    let set = match (&args.file, args.omega, args.n) {
        (Some(path), _, _) => {
            OmegaSet::from_json(&read(path)?).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
        }
        (None, Some(spec), Some(n)) => build_omega(spec.family, n, spec.delta).map_err(domain)?,
        _ => return Err(CliError::Domain("give --file, or --omega with --n".into())),
    };
    let mode = match args.mode {
        ModeArg::Distinct => SumMode::Distinct,
        ModeArg::Repetition => SumMode::Repetition,
    };
    let report = validate_omega(&set, mode);
    let text = match args.format {
        FormatArg::Json => with_newline(serde_json::to_string_pretty(&report).expect("report serializes")),
        FormatArg::Table => {
            let mut out = format!("{} elements, mode {:?}\n", set.elements.len(), mode);
            for d in &report.duplicates {
                out.push_str(&format!("duplicate {d}\n"));
            }
            for (a, b, c) in &report.pair_violations {
                out.push_str(&format!("{a} + {b} = {c}\n"));
            }
            for (a, b, c, d) in &report.triple_violations {
                out.push_str(&format!("{a} + {b} + {c} = {d}\n"));
            }
            out.push_str(if report.is_clean() {
                "clean\n"
            } else {
                "violations found\n"
            });
            out
        }
    };
    emit(None, &text)?;
    if report.is_clean() {
        Ok(())
    } else {
        Err(CliError::Domain("lever set has sum relations".into()))
    }
}

fn run_study(args: &StudyArgs) -> Result<(), CliError> {
    let config = StudyConfig {
        n: args.n,
        rho: args.rho,
        family: args.omega.family,
        omega_delta: args.omega.delta,
        trials: args.trials,
        seed: args.seed,
    };
    let text = match args.kind {
        StudyKind::Fp => {
            let result = study_false_positive(config).map_err(domain)?;
            match args.format {
                FormatArg::Json => result.to_json(),
                FormatArg::Table => result.render_table(),
            }
        }
        StudyKind::Completeness => {
            let result = study_completeness(config).map_err(domain)?;
            match args.format {
                FormatArg::Json => result.to_json(),
                FormatArg::Table => result.render_table(),
            }
        }
    };
    emit(args.out.as_deref(), &text)
}
