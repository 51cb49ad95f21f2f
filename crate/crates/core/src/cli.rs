//! Command-line front end.
//!
//! Exit codes: 0 success, 1 internal error, 2 usage, 3 resource guard, 4 failed
//! verification. Reports go to the given writer; `.fset` output goes to `--out`.

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::enumerate::{
    bucket_by_weight, count_balanced_monotone, enumerate_balanced_monotone, enumerate_monotone, enumerate_unate,
    filter_nondegenerate, stream_balanced_monotone, EnumOptions, EnumerateError, FunctionSet, Progress,
    BALANCED_MONOTONE_GUARD, UNATE_GUARD,
};
use crate::equiv::{class_census_by_canonical, filter_classes, unate_classes_from_monotone, ClassCensus};
use crate::oracle::{verify_all, verify_enumeration, verify_tables, VerifyReport, ORACLE_MAX};
use crate::property::Property;
use crate::store::{self, FsetHeader, StoreError, DEFAULT_SORT_BUDGET};
use crate::transforms::{
    balanced_unate_counts, inverse_binomial_transform, unate_counts, CountSequence, KnownConstants, Label,
    TransformError,
};

#[derive(Debug, Parser)]
#[command(name = "bfcensus", version, about = "Census of monotone and unate Boolean functions")]
pub struct Cli {
    /// Worker threads (default: all cores). Never changes the output.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Report progress of long runs on stderr.
    #[arg(long, global = true)]
    pub progress: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Class {
    Monotone,
    BalancedMonotone,
    Unate,
    BalancedUnate,
}

impl Class {
    fn property(self) -> Property {
        match self {
            Class::Monotone => Property::Monotone,
            Class::BalancedMonotone => Property::BalancedMonotone,
            Class::Unate => Property::Unate,
            Class::BalancedUnate => Property::BalancedUnate,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Target {
    #[arg(long, value_enum)]
    pub class: Class,

    #[arg(long)]
    pub n: usize,

    /// Restrict to functions depending on every variable.
    #[arg(long)]
    pub nondegenerate: bool,

    /// Lift the resource guards.
    #[arg(long)]
    pub allow_large: bool,
}

impl Target {
    fn label(&self, classes: bool) -> Label {
        Label::new(self.class.property(), self.nondegenerate, classes)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Via {
    Enumerate,
    Transform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Filter,
    Canonical,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a complete set and optionally write it as .fset.
    Enumerate {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the per-weight histogram.
        #[arg(long)]
        weights: bool,
    },
    /// Print the counts for 0..=n.
    Count {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Via::Transform)]
        via: Via,
    },
    /// Count permutation classes; --out writes representatives and a JSON sidecar.
    Classes {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Method::Filter)]
        method: Method,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check generators, transforms and class counts against brute force and the
    /// reference rows.
    Verify {
        #[arg(long, default_value_t = ORACLE_MAX)]
        n_max: usize,
        /// Reference constants as JSON instead of the embedded ones.
        #[arg(long)]
        constants: Option<PathBuf>,
        #[arg(long)]
        allow_large: bool,
    },
    /// .fset utilities.
    Fset {
        #[command(subcommand)]
        command: FsetCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum FsetCommand {
    /// Merge sorted files into one sorted, deduplicated file.
    Merge {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sort and deduplicate a file of any size (scratch space: BFCENSUS_TMPDIR).
    Sort {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// In-memory budget in KiB.
        #[arg(long)]
        budget_kb: Option<usize>,
    },
    /// Print the header.
    Info { input: PathBuf },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Guard(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Guard(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}

impl From<EnumerateError> for CliError {
    fn from(e: EnumerateError) -> Self {
        match e {
            EnumerateError::ResourceLimit { .. } => CliError::Guard(format!("{e}; pass --allow-large to override")),
            EnumerateError::Unsupported { .. } | EnumerateError::IncompleteInput(_) => CliError::Usage(e.to_string()),
            EnumerateError::Store(s) => s.into(),
        }
    }
}

impl From<StoreError> for CliError {
    fn from(e: StoreError) -> Self {
        match e {
            StoreError::Io(_) => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<TransformError> for CliError {
    fn from(e: TransformError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name) and runs the command. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| CliError::Internal(e.to_string()))?;
    let reporter = ProgressReporter::new(cli.progress);
    let progress = |p: Progress| reporter.report(p);
    let opts_base = if cli.progress { EnumOptions::default().with_progress(&progress) } else { EnumOptions::default() };
    let mut buf: Vec<u8> = Vec::new();
    let result = pool.install(|| {
        let out = &mut buf;
        match &cli.command {
            Command::Enumerate { target, out: path, weights } => {
                let opts = opts_base.allow_large(target.allow_large);
                cmd_enumerate(target, path.as_deref(), *weights, cli.format, &opts, out)
            }
            Command::Count { target, via } => {
                cmd_count(target, *via, cli.format, &opts_base.allow_large(target.allow_large), out)
            }
            Command::Classes { target, method, out: path } => {
                let opts = opts_base.allow_large(target.allow_large);
                cmd_classes(target, *method, path.as_deref(), cli.format, &opts, out)
            }
            Command::Verify { n_max, constants, allow_large } => {
                cmd_verify(*n_max, constants.as_deref(), cli.format, &opts_base.allow_large(*allow_large), out)
            }
            Command::Fset { command } => cmd_fset(command, cli.format, out),
        }
    });
    // reports are written even when verification fails
    out.write_all(&buf)?;
    result
}

struct ProgressReporter {
    enabled: bool,
    last: Mutex<Instant>,
}

impl ProgressReporter {
    fn new(enabled: bool) -> Self {
        Self { enabled, last: Mutex::new(Instant::now()) }
    }

    fn report(&self, p: Progress) {
        if !self.enabled {
            return;
        }
        let mut last = self.last.lock().unwrap();
        if last.elapsed() >= Duration::from_secs(2) {
            *last = Instant::now();
            eprintln!("pairs {} emitted {}", p.pairs, p.emitted);
        }
    }
}

/// Members of `class` at `n`, with signatures for the unate classes.
fn generate(target: &Target, opts: &EnumOptions) -> Result<(FunctionSet, Option<Vec<crate::boolfn::Signature>>)> {
    let n = target.n;
    let (set, sigs) = match target.class {
        Class::Monotone => (enumerate_monotone(n, opts)?, None),
        Class::BalancedMonotone => (enumerate_balanced_monotone(n, opts)?, None),
        Class::Unate | Class::BalancedUnate => {
            let u = enumerate_unate(n, opts)?;
            let keep = |f: &crate::BoolFn| target.class == Class::Unate || f.is_balanced_or_false();
            let items: Vec<_> = u.items.into_iter().filter(|s| keep(&s.function)).collect();
            let sigs = items.iter().map(|s| s.sig).collect();
            let set = FunctionSet::new(
                n,
                items.into_iter().map(|s| s.function).collect(),
                target.class.property(),
                false,
                crate::enumerate::Origin::Generated,
            )
            .map_err(|e| CliError::Internal(e.to_string()))?;
            (set, Some(sigs))
        }
    };
    if !target.nondegenerate {
        return Ok((set, sigs));
    }
    let keep: Vec<bool> = set.items().iter().map(|f| f.is_nondegenerate()).collect();
    let sigs = sigs.map(|s| s.into_iter().zip(&keep).filter(|(_, &k)| k).map(|(s, _)| s).collect());
    Ok((filter_nondegenerate(&set), sigs))
}

fn write_set(path: &Path, set: &FunctionSet, sigs: Option<&[crate::boolfn::Signature]>) -> Result<FsetHeader> {
    let mut w = store::create_file(path, set.n(), true, sigs.is_some())?;
    match sigs {
        Some(sigs) => {
            for (f, s) in set.items().iter().zip(sigs) {
                w.push_signed(f, s)?;
            }
        }
        None => {
            for f in set.items() {
                w.push(f)?;
            }
        }
    }
    let (mut sink, header) = w.finish()?;
    sink.flush()?;
    Ok(header)
}

fn cmd_enumerate(
    target: &Target,
    path: Option<&Path>,
    weights: bool,
    format: Format,
    opts: &EnumOptions,
    out: &mut dyn Write,
) -> Result<()> {
    let label = target.label(false);
    if target.class == Class::BalancedMonotone && target.n == BALANCED_MONOTONE_GUARD + 1 {
        return enumerate_bm7(target, path, weights, format, opts, out);
    }
    let (set, sigs) = generate(target, opts)?;
    if let Some(path) = path {
        write_set(path, &set, sigs.as_deref())?;
    }
    let histogram = weights.then(|| bucket_by_weight(&set).sizes());
    print_enumeration(label, target.n, set.len() as u64, histogram.as_deref(), format, out)
}

/// `BM_7` through the weight-bucket pairing over `M_6`, streamed to disk or counted.
fn enumerate_bm7(
    target: &Target,
    path: Option<&Path>,
    weights: bool,
    format: Format,
    opts: &EnumOptions,
    out: &mut dyn Write,
) -> Result<()> {
    if !opts.allow_large {
        return Err(CliError::Guard(format!(
            "balanced monotone enumeration at n = {} takes about 2^40 comparisons; pass --allow-large",
            target.n
        )));
    }
    if target.nondegenerate || weights {
        return Err(CliError::Usage("--nondegenerate and --weights are not available at n = 7".into()));
    }
    let m6 = enumerate_monotone(6, opts)?;
    let count = match path {
        Some(path) => {
            let mut w = store::create_file(path, 7, true, false)?;
            let count = stream_balanced_monotone(&m6, opts, |chunk| {
                chunk.iter().try_for_each(|f| w.push(f)).map_err(EnumerateError::from)
            })?;
            w.finish()?.0.flush()?;
            count
        }
        None => count_balanced_monotone(&m6, opts)?,
    };
    print_enumeration(target.label(false), 7, count, None, format, out)
}

fn print_enumeration(
    label: Label,
    n: usize,
    count: u64,
    weights: Option<&[usize]>,
    format: Format,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        Format::Text => {
            writeln!(out, "{label}_{n} = {count}")?;
            if let Some(w) = weights {
                for (k, c) in w.iter().enumerate() {
                    writeln!(out, "weight {k}: {c}")?;
                }
            }
        }
        Format::Json => {
            let mut v = json!({ "label": label.to_string(), "n": n, "count": count.to_string() });
            if let Some(w) = weights {
                v["weights"] = w.iter().map(|c| c.to_string()).collect();
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
        Format::Csv => match weights {
            Some(w) => {
                writeln!(out, "weight,count")?;
                for (k, c) in w.iter().enumerate() {
                    writeln!(out, "{k},{c}")?;
                }
            }
            None => writeln!(out, "label,n,count\n{label},{n},{count}")?,
        },
    }
    Ok(())
}

fn cmd_count(target: &Target, via: Via, format: Format, opts: &EnumOptions, out: &mut dyn Write) -> Result<()> {
    let label = target.label(false);
    let seq = match via {
        Via::Transform => count_by_transform(label, target.n, KnownConstants::embedded())?,
        Via::Enumerate => {
            let mut values = Vec::with_capacity(target.n + 1);
            for k in 0..=target.n {
                let t = Target { n: k, ..target.clone() };
                let count = if t.class == Class::BalancedMonotone && k == BALANCED_MONOTONE_GUARD + 1 {
                    if !opts.allow_large {
                        return Err(CliError::Guard("balanced monotone counting at n = 7 needs --allow-large".into()));
                    }
                    if t.nondegenerate {
                        return Err(CliError::Usage("use --via transform for nondegenerate counts at n = 7".into()));
                    }
                    count_balanced_monotone(&enumerate_monotone(6, opts)?, opts)?
                } else {
                    generate(&t, opts)?.0.len() as u64
                };
                values.push(count);
            }
            CountSequence::from_u64(label, &values)
        }
    };
    match format {
        Format::Text => {
            let v = seq.get(target.n).expect("sequence covers n");
            writeln!(out, "{label}_{} = {v}", target.n)?;
        }
        Format::Json => writeln!(out, "{}", seq.to_json())?,
        Format::Csv => write!(out, "{}", seq.to_csv())?,
    }
    Ok(())
}

/// Counts for `0..=n` derived from the reference inputs: Dedekind numbers for the
/// monotone and unate families, the balanced monotone row for the balanced ones.
pub fn count_by_transform(label: Label, n: usize, k: &KnownConstants) -> Result<CountSequence> {
    let len = n + 1;
    let need = |seq: CountSequence, what: &str| -> Result<CountSequence> {
        if seq.len() < len {
            Err(CliError::Usage(format!("{what} is known for n <= {} only", seq.len().saturating_sub(1))))
        } else {
            Ok(seq.truncated(len))
        }
    };
    let dedekind = || need(k.dedekind(), "the Dedekind sequence");
    let bm = || {
        k.row(Label::count(Property::BalancedMonotone))
            .ok_or_else(|| CliError::Usage("no balanced monotone row".into()))
            .and_then(|s| need(s, "the balanced monotone row"))
    };
    let seq = match (label.property, label.nondegenerate) {
        (Property::Monotone, false) => dedekind()?,
        (Property::Monotone, true) => inverse_binomial_transform(&dedekind()?)?,
        (Property::Unate, nd) => {
            let (u, nd_u) = unate_counts(&dedekind()?)?;
            if nd {
                nd_u
            } else {
                u
            }
        }
        (Property::BalancedMonotone, false) => bm()?,
        (Property::BalancedMonotone, true) => inverse_binomial_transform(&bm()?)?,
        (Property::BalancedUnate, nd) => {
            let (bu, nd_bu) = balanced_unate_counts(&bm()?)?;
            if nd {
                nd_bu
            } else {
                bu
            }
        }
        (p, _) => return Err(CliError::Usage(format!("no transform path for {p}"))),
    };
    Ok(CountSequence::new(label, seq.values))
}

fn cmd_classes(
    target: &Target,
    method: Method,
    path: Option<&Path>,
    format: Format,
    opts: &EnumOptions,
    out: &mut dyn Write,
) -> Result<()> {
    let unate = matches!(target.class, Class::Unate | Class::BalancedUnate);
    let (census, method_name) = if unate && target.n == UNATE_GUARD + 1 {
        if !opts.allow_large {
            return Err(CliError::Guard(format!("unate classes at n = {} need --allow-large", target.n)));
        }
        let m = enumerate_monotone(target.n, opts)?;
        let census = unate_classes_from_monotone(&m, target.class == Class::BalancedUnate, target.nondegenerate);
        (census, "monotone-shifts")
    } else {
        let (set, _) = generate(target, opts)?;
        match method {
            Method::Filter => (filter_classes(&set), "filter"),
            Method::Canonical => (class_census_by_canonical(&set), "canonical"),
            Method::Both => {
                let a = filter_classes(&set);
                let b = class_census_by_canonical(&set);
                if a.class_count != b.class_count {
                    return Err(CliError::Verification(format!(
                        "filter found {} classes, canonical forms {}",
                        a.class_count, b.class_count
                    )));
                }
                (a, "both")
            }
        }
    };
    if let Some(path) = path {
        write_set(path, &census.representatives, None)?;
        let sidecar = serde_json::to_string_pretty(&census.sidecar()).expect("json");
        std::fs::write(path.with_extension("json"), sidecar + "\n")?;
    }
    print_classes(target.label(true), target.n, &census, method_name, format, out)
}

fn print_classes(
    label: Label,
    n: usize,
    census: &ClassCensus,
    method: &str,
    format: Format,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        Format::Text => {
            writeln!(out, "{label}_{n} = {} (of {} functions, {method})", census.class_count, census.source_size)?
        }
        Format::Json => {
            let v = json!({
                "label": label.to_string(),
                "n": n,
                "classCount": census.class_count.to_string(),
                "sourceSize": census.source_size.to_string(),
                "method": method,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
        Format::Csv => {
            writeln!(out, "label,n,classCount,sourceSize\n{label},{n},{},{}", census.class_count, census.source_size)?
        }
    }
    Ok(())
}

fn cmd_verify(
    n_max: usize,
    constants: Option<&Path>,
    format: Format,
    opts: &EnumOptions,
    out: &mut dyn Write,
) -> Result<()> {
    if n_max > 6 {
        return Err(CliError::Usage("verify supports --n-max up to 6".into()));
    }
    if n_max == 6 && !opts.allow_large {
        return Err(CliError::Guard("verify at n = 6 needs --allow-large".into()));
    }
    let loaded;
    let k = match constants {
        Some(path) => {
            let file = File::open(path)?;
            loaded = serde_json::from_reader::<_, KnownConstants>(BufReader::new(file))
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            &loaded
        }
        None => KnownConstants::embedded(),
    };
    let mut report: VerifyReport = verify_all(n_max.min(ORACLE_MAX), k).expect("within oracle range");
    for n in ORACLE_MAX + 1..=n_max {
        report.extend(verify_enumeration(n, k, opts)?);
    }
    report.extend(verify_tables(k));
    match format {
        Format::Text => writeln!(out, "{report}")?,
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Csv => {
            writeln!(out, "status,category,check,n,expected,actual")?;
            for r in &report.rows {
                let category = serde_json::to_value(r.category).expect("json");
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    if r.pass { "PASS" } else { "FAIL" },
                    category.as_str().unwrap_or_default(),
                    r.check,
                    r.n,
                    r.expected,
                    r.actual
                )?;
            }
        }
    }
    if report.all_pass() {
        Ok(())
    } else {
        let names: Vec<String> = report.failures().map(|r| format!("{} (n={})", r.check, r.n)).collect();
        Err(CliError::Verification(format!("{} checks failed: {}", names.len(), names.join(", "))))
    }
}

fn cmd_fset(command: &FsetCommand, format: Format, out: &mut dyn Write) -> Result<()> {
    let header = match command {
        FsetCommand::Merge { inputs, out: path } => store::merge_sorted(inputs, path)?,
        FsetCommand::Sort { input, out: path, budget_kb } => {
            let budget = budget_kb.map(|kb| kb << 10).unwrap_or(DEFAULT_SORT_BUDGET);
            let scratch = store::scratch_dir();
            store::external_sort(input, path, &scratch, budget)?
        }
        FsetCommand::Info { input } => store::open_file(input)?.header(),
    };
    match format {
        Format::Text => writeln!(
            out,
            "n = {}\ncount = {}\nsorted = {}\nsignatures = {}",
            header.n, header.count, header.sorted, header.signatures
        )?,
        Format::Json => {
            let v = json!({
                "n": header.n,
                "count": header.count.to_string(),
                "sorted": header.sorted,
                "signatures": header.signatures,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
        Format::Csv => writeln!(
            out,
            "n,count,sorted,signatures\n{},{},{},{}",
            header.n, header.count, header.sorted, header.signatures
        )?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("bfcensus").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn enumerate_monotone_4() {
        let (code, out, _) = run_str(&["enumerate", "--class", "monotone", "--n", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "M_4 = 168");
    }

    #[test]
    fn unate_weights_symmetric() {
        let (code, out, _) = run_str(&["enumerate", "--class", "unate", "--n", "3", "--weights", "--format", "csv"]);
        assert_eq!(code, 0);
        let counts: Vec<u64> = out.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
        assert_eq!(counts.iter().sum::<u64>(), 104);
        assert!(counts.iter().eq(counts.iter().rev()));
    }

    #[test]
    fn count_paths() {
        let (_, out, _) = run_str(&["count", "--class", "unate", "--n", "9", "--via", "transform"]);
        assert_eq!(out.trim(), "U_9 = 146629927766168786368451678290041110762316052");
        let (_, out, _) = run_str(&["count", "--class", "balanced-unate", "--n", "7"]);
        assert_eq!(out.trim(), "BU_7 = 10393772159334");
        let (_, out, _) = run_str(&["count", "--class", "monotone", "--n", "3", "--via", "enumerate"]);
        assert_eq!(out.trim(), "M_3 = 20");
        let (_, out, _) = run_str(&["count", "--class", "unate", "--n", "4", "--nondegenerate", "--via", "enumerate"]);
        assert_eq!(out.trim(), "ndU_4 = 1824");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["enumerate", "--class", "nope", "--n", "2"]).0, 2);
        assert_eq!(run_str(&["enumerate", "--class", "unate", "--n", "6"]).0, 3);
        assert_eq!(run_str(&["enumerate", "--class", "monotone", "--n", "7"]).0, 3);
        assert_eq!(run_str(&["enumerate", "--class", "monotone", "--n", "7", "--allow-large"]).0, 2);
        assert_eq!(run_str(&["count", "--class", "unate", "--n", "10"]).0, 2);
        assert_eq!(run_str(&["verify", "--n-max", "7"]).0, 2);
        assert_eq!(run_str(&["--threads", "0", "verify", "--n-max", "1"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn classes_both_methods() {
        let (code, out, _) =
            run_str(&["classes", "--class", "balanced-unate", "--n", "4", "--method", "both", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().nth(1).unwrap(), "clsBU,4,24,296");
    }

    #[test]
    fn verify_small() {
        let (code, out, _) = run_str(&["verify", "--n-max", "2"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.lines().last().unwrap().ends_with(" 0 failed"));
    }
}
