//! Command-line front end for `qclearn`: build a family, run one of the
//! library operations on it, and print or save the result.

mod format;

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use qclearn::amplify::{amplified_learn_with_plan, bigship_hybrid};
use qclearn::analysis::{battleship_spectrum, majority_spectrum, sweep, SweepFamily};
use qclearn::concepts::{build_family, gamma_measure, membership_oracle, ConceptFamily, FamilySpec, TruthTable};
use qclearn::group_algebra::{detect_symmetry, query_symbol};
use qclearn::measurement::{impatient_transform, PlanPath};
use qclearn::Spectrum;

pub use format::{emit_csv, row_fields, sig12, write_csv, write_table, CSV_HEADER};

/// Failure of a CLI run, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("BadFlags: {0}")]
    BadFlags(String),
    #[error("{0}")]
    Compute(#[from] qclearn::Error),
}

impl CliError {
    /// 2 for bad flags, 3 for computation errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::BadFlags(_) => 2,
            CliError::Compute(_) => 3,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CliError::BadFlags(_) => "BadFlags",
            CliError::Compute(e) => e.name(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Compute(e.into())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::BadFlags(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Grover,
    Bv,
    Battleship,
    Bigship,
    Majority,
    Custom,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Pretty,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct Options {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    /// Domain size; a comma list for `sweep`.
    #[arg(long = "N", value_delimiter = ',')]
    pub big_n: Vec<usize>,
    /// Bit count for bv and majority; a comma list for `sweep`.
    #[arg(long = "n", value_delimiter = ',')]
    pub small_n: Vec<usize>,
    /// Battleship half-width.
    #[arg(long)]
    pub r: Option<usize>,
    /// Battleship length `2r + 1`.
    #[arg(long)]
    pub d: Option<usize>,
    /// Bigship length ratio as `p/q`.
    #[arg(long, value_parser = parse_ratio)]
    pub alpha: Option<Ratio<u64>>,
    /// Truth-table file for `--family custom`.
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[arg(long)]
    pub target: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Eigenvalues of the query matrix.
    Spectrum(Options),
    /// Single-query measurement and its success profile.
    Impatient(Options),
    /// Amplified learning of one target.
    Amplify(Options),
    /// Exact gamma by subset enumeration.
    Gamma(Options),
    /// Grover plus binary search for battleship.
    Hybrid(Options),
    /// Query counts over a list of sizes, as CSV rows.
    Sweep(Options),
}

#[derive(Debug, Parser)]
#[command(name = "qclearn", version, about = "Exact learning with quantum membership queries")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

fn parse_ratio(s: &str) -> Result<Ratio<u64>, String> {
    let (p, q) = s.split_once('/').ok_or_else(|| format!("expected p/q, got {s:?}"))?;
    let p: u64 = p.trim().parse().map_err(|e| format!("numerator: {e}"))?;
    let q: u64 = q.trim().parse().map_err(|e| format!("denominator: {e}"))?;
    if q == 0 {
        return Err("denominator is zero".into());
    }
    Ok(Ratio::new(p, q))
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
}

impl RunConfig {
    /// Parses argv (including the program name); clap's own errors map to `BadFlags`.
    pub fn from_args<I, S>(args: I) -> CliResult<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args).map_err(|e| bad(e.to_string()))?;
        Ok(Self::from(cli))
    }

    pub fn options(&self) -> &Options {
        match &self.command {
            Command::Spectrum(o)
            | Command::Impatient(o)
            | Command::Amplify(o)
            | Command::Gamma(o)
            | Command::Hybrid(o)
            | Command::Sweep(o) => o,
        }
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        RunConfig { command: cli.command }
    }
}

impl Options {
    fn sizes(&self) -> CliResult<&[usize]> {
        let hypercube = matches!(self.family, FamilyName::Bv | FamilyName::Majority);
        let (want, other, flag) =
            if hypercube { (&self.small_n, &self.big_n, "--n") } else { (&self.big_n, &self.small_n, "--N") };
        if !other.is_empty() {
            let wrong = if hypercube { "--N" } else { "--n" };
            return Err(bad(format!("{wrong} does not apply to {:?}; use {flag}", self.family)));
        }
        if want.is_empty() && self.family != FamilyName::Custom {
            return Err(bad(format!("{flag} is required")));
        }
        Ok(want)
    }

    fn single_size(&self) -> CliResult<Option<usize>> {
        match self.sizes()? {
            [] => Ok(None),
            [n] => Ok(Some(*n)),
            _ => Err(bad("a list of sizes is only accepted by sweep")),
        }
    }

    fn battleship_length(&self) -> CliResult<usize> {
        match (self.r, self.d) {
            (Some(r), None) => Ok(2 * r + 1),
            (None, Some(d)) => Ok(d),
            (Some(r), Some(d)) if d == 2 * r + 1 => Ok(d),
            (Some(_), Some(_)) => Err(bad("--r and --d disagree")),
            (None, None) => Err(bad("battleship needs --r or --d")),
        }
    }

    fn family_spec(&self, size: Option<usize>) -> CliResult<FamilySpec> {
        let size = || size.ok_or_else(|| bad("missing size"));
        let bits = || u32::try_from(size()?).map_err(|_| bad("n too large"));
        Ok(match self.family {
            FamilyName::Grover => FamilySpec::Grover { size: size()? },
            FamilyName::Bv => FamilySpec::Bv { n: bits()? },
            FamilyName::Majority => FamilySpec::Majority { n: bits()? },
            FamilyName::Battleship => FamilySpec::battleship_with_length(size()?, self.battleship_length()?)?,
            FamilyName::Bigship => {
                FamilySpec::Bigship { size: size()?, alpha: self.alpha.ok_or_else(|| bad("bigship needs --alpha"))? }
            }
            FamilyName::Custom => {
                let path = self.table.as_ref().ok_or_else(|| bad("custom needs --table"))?;
                let text = std::fs::read_to_string(path).map_err(qclearn::Error::from)?;
                FamilySpec::Custom(TruthTable::parse(&text)?)
            }
        })
    }

    fn family(&self) -> CliResult<ConceptFamily> {
        Ok(build_family(&self.family_spec(self.single_size()?)?)?)
    }

    fn sweep_family(&self) -> CliResult<SweepFamily> {
        Ok(match self.family {
            FamilyName::Grover => SweepFamily::Grover,
            FamilyName::Bv => SweepFamily::Bv,
            FamilyName::Majority => SweepFamily::Majority,
            FamilyName::Battleship => SweepFamily::Smallship { d: self.battleship_length()? },
            FamilyName::Bigship => {
                SweepFamily::Bigship { alpha: self.alpha.ok_or_else(|| bad("bigship needs --alpha"))? }
            }
            FamilyName::Custom => return Err(bad("sweep does not take custom families")),
        })
    }

    fn target(&self, fam: &ConceptFamily) -> CliResult<usize> {
        let t = self.target.unwrap_or(0);
        if t >= fam.size() {
            return Err(bad(format!("--target {t} is outside 0..{}", fam.size())));
        }
        Ok(t)
    }
}

fn family_spectrum(fam: &ConceptFamily) -> CliResult<Spectrum> {
    if let Some(d) = fam.battleship_length() {
        return Ok(battleship_spectrum(fam.size(), d)?);
    }
    if let qclearn::concepts::FamilyTag::Majority { n } = fam.tag() {
        return Ok(majority_spectrum(n)?);
    }
    let group = detect_symmetry(fam)
        .group(fam.size())
        .ok_or_else(|| qclearn::Error::BadParams("family has no cyclic or hypercube symmetry".into()))?;
    Ok(query_symbol::<f64>(fam, group)?.eigenvalues())
}

fn keyed(out: &mut String, format: Format, pairs: &[(&str, String)]) {
    match format {
        Format::Pretty => {
            let parts: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "{}", parts.join(" "));
        }
        Format::Csv => {
            let _ = writeln!(out, "{}", pairs.iter().map(|p| p.0).collect::<Vec<_>>().join(","));
            let _ = writeln!(out, "{}", pairs.iter().map(|p| p.1.as_str()).collect::<Vec<_>>().join(","));
        }
    }
}

fn render(config: &RunConfig) -> CliResult<Vec<u8>> {
    let o = config.options();
    let mut text = String::new();
    match &config.command {
        Command::Spectrum(_) => {
            let fam = o.family()?;
            let spec = family_spectrum(&fam)?;
            if o.format == Format::Csv {
                text.push_str("index,re,im,multiplicity\n");
            }
            for (i, e) in spec.eigenvalues().iter().enumerate() {
                let (re, im) = (sig12(e.value.re), sig12(e.value.im));
                let sign = if e.value.im.is_sign_negative() { '-' } else { '+' };
                let mag = sig12(e.value.im.abs());
                match o.format {
                    Format::Csv => writeln!(text, "{i},{re},{im},{}", e.multiplicity),
                    Format::Pretty if e.multiplicity == 1 => writeln!(text, "lambda[{i}] = {re} {sign} {mag}i"),
                    Format::Pretty => writeln!(text, "lambda[{i}] = {re} {sign} {mag}i (x{})", e.multiplicity),
                }
                .expect("write to String");
            }
        }
        Command::Impatient(_) => {
            let fam = o.family()?;
            let plan = impatient_transform::<f64>(&fam)?;
            let lo = plan.per_concept_success.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = plan.per_concept_success.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let path = match plan.path {
                PlanPath::GroupSign => "group_sign",
                PlanPath::GramSqrt => "gram_sqrt",
            };
            let warnings: Vec<String> = plan.warnings.iter().map(|w| format!("{w:?}")).collect();
            keyed(
                &mut text,
                o.format,
                &[
                    ("family", fam.tag().name().to_string()),
                    ("N", fam.size().to_string()),
                    ("param", fam.param_string()),
                    ("path", path.to_string()),
                    ("s", plan.constant_amplitude().map(sig12).unwrap_or_default()),
                    ("avg_success", sig12(plan.avg_success)),
                    ("min_success", sig12(lo)),
                    ("max_success", sig12(hi)),
                    ("warnings", warnings.join(";")),
                ],
            );
        }
        Command::Amplify(_) => {
            let fam = o.family()?;
            let target = o.target(&fam)?;
            let plan = impatient_transform::<f64>(&fam)?;
            let r = amplified_learn_with_plan(&fam, &plan, target)?;
            keyed(
                &mut text,
                o.format,
                &[
                    ("family", fam.tag().name().to_string()),
                    ("N", fam.size().to_string()),
                    ("param", fam.param_string()),
                    ("target", target.to_string()),
                    ("s", sig12(r.s)),
                    ("theta", sig12(r.theta)),
                    ("m", r.m.to_string()),
                    ("predicted_success", sig12(r.predicted_success)),
                    ("success", sig12(r.simulated_success)),
                    ("membership_queries", r.membership_queries.to_string()),
                    ("equivalence_queries", r.equivalence_queries.to_string()),
                ],
            );
        }
        Command::Gamma(_) => {
            let fam = o.family()?;
            let g = gamma_measure(&fam)?;
            keyed(
                &mut text,
                o.format,
                &[
                    ("family", fam.tag().name().to_string()),
                    ("N", fam.size().to_string()),
                    ("param", fam.param_string()),
                    ("gamma", format!("{}/{}", g.numer(), g.denom())),
                    ("gamma_value", sig12(*g.numer() as f64 / *g.denom() as f64)),
                ],
            );
        }
        Command::Hybrid(_) => {
            let fam = o.family()?;
            let target = o.target(&fam)?;
            let oracle = membership_oracle(&fam, target)?;
            let h = bigship_hybrid::<f64>(&fam, &oracle, o.seed)?;
            keyed(
                &mut text,
                o.format,
                &[
                    ("family", fam.tag().name().to_string()),
                    ("N", fam.size().to_string()),
                    ("param", fam.param_string()),
                    ("target", target.to_string()),
                    ("seed", o.seed.to_string()),
                    ("found", h.found.map(|a| a.to_string()).unwrap_or_default()),
                    ("correct", (h.found == Some(target)).to_string()),
                    ("sampled", h.sampled.to_string()),
                    ("grover_iterations", h.grover_iterations.to_string()),
                    ("phase_one_success", sig12(h.phase_one_success)),
                    ("membership_queries", h.membership_queries.to_string()),
                ],
            );
        }
        Command::Sweep(_) => {
            let family = o.sweep_family()?;
            let rows = sweep::<f64>(&family, o.sizes()?)?;
            let mut buf = Vec::new();
            match o.format {
                Format::Csv => write_csv(&rows, &mut buf)?,
                Format::Pretty => write_table(&rows, &mut buf)?,
            }
            return Ok(buf);
        }
    }
    Ok(text.into_bytes())
}

/// Runs one command, writing to `--out` when given and to `stdout` otherwise.
pub fn run<W: Write>(config: &RunConfig, stdout: &mut W) -> CliResult<()> {
    let o = config.options();
    if matches!(config.command, Command::Sweep(_)) && o.sizes()?.is_empty() {
        return Err(bad("sweep needs at least one size"));
    }
    let bytes = render(config)?;
    match &o.out {
        Some(path) => std::fs::write(path, bytes)?,
        None => stdout.write_all(&bytes)?,
    }
    Ok(())
}
