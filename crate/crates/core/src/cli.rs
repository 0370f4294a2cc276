//! Batch front-end. [`run`] parses arguments and returns the exit status with buffered output,
//! so the binary only prints and exits.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use log::LevelFilter;
use serde::Serialize;
use serde_json::Value;

use crate::braid::{closure_components, positive_closure_genus, recognize_one_bridge, BraidWord};
use crate::error::Error;
use crate::invariants::{alexander_from_braid, same_closure_evidence, Verdict};
use crate::knotgroup::{fox_alexander, one_bridge_presentation, satellite_presentation, Presentation};
use crate::markov::{ttk_to_one_bridge, verify_trace, MoveTrace};
use crate::ordercert::{
    check_certificate, check_equality_witness, property_d_certificate, satellite_certificate, satellite_genus,
    v2503_bundle, Certificate, WitnessedEquality,
};

/// First stdout line of every run.
pub const HEADER: &str = concat!("# braidforge ", env!("CARGO_PKG_VERSION"));

pub const LOG_ENV: &str = "BRAIDFORGE_LOG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitStatus {
    Success = 0,
    Rejected = 1,
    Usage = 2,
    Internal = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn of(e: &Error) -> ExitStatus {
        match e {
            Error::Domain(_) | Error::Parse(_) | Error::UnsupportedPresentation(_) => ExitStatus::Usage,
            Error::NotPositiveBraid(_)
            | Error::NotAKnot(_)
            | Error::UnsupportedCase(_)
            | Error::Move { .. }
            | Error::Trace { .. }
            | Error::Witness { .. }
            | Error::Cert { .. } => ExitStatus::Rejected,
            Error::InternalInvariantViolation(_) | Error::CertGen { .. } | Error::Overflow(_) => ExitStatus::Internal,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    fn status(&self) -> ExitStatus {
        match self {
            CliError::Lib(e) => ExitStatus::of(e),
            CliError::Io { .. } | CliError::Json { .. } | CliError::Usage(_) => ExitStatus::Usage,
            CliError::Internal(_) => ExitStatus::Internal,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses a `BRAIDFORGE_LOG` value; unset means `info`.
pub fn log_filter(value: Option<&str>) -> Option<LevelFilter> {
    match value.unwrap_or("info") {
        "quiet" => Some(LevelFilter::Off),
        "info" => Some(LevelFilter::Info),
        "debug" => Some(LevelFilter::Debug),
        _ => None,
    }
}

#[derive(Debug, Parser)]
#[command(name = "braidforge", version, about = "Braid conversions, knot invariants and order certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert a twisted torus braid to a 1-bridge braid.
    Convert(ConvertArgs),
    /// Replay traces, certificates or equality witnesses.
    Verify(VerifyArgs),
    /// Invariants of a braid closure.
    Report(ReportArgs),
    /// Generate a property-(D) or satellite certificate.
    CertGen(CertGenArgs),
    /// Run the v2503 checks.
    V2503(V2503Args),
}

#[derive(Debug, Args)]
struct ConvertArgs {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    q: i64,
    #[arg(long)]
    l: i64,
    #[arg(long)]
    n: i64,
    /// Write the move trace here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Presentation for certificates and witnesses.
    #[arg(long)]
    pres: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[arg(long)]
    braid: PathBuf,
    #[arg(long)]
    presentation: bool,
    #[arg(long)]
    alexander: bool,
    #[arg(long)]
    genus: bool,
}

#[derive(Debug, Args)]
struct CertGenArgs {
    /// `ω,t,b` of a 1-bridge braid knot: certify property (D) for it.
    #[arg(long, value_parser = parse_triple, conflicts_with = "companion")]
    knot: Option<(i64, i64, i64)>,
    /// Companion `ω,t,b`; each `--pattern` wraps the previous knot.
    #[arg(long, value_parser = parse_triple, requires = "pattern")]
    companion: Option<(i64, i64, i64)>,
    #[arg(long, value_parser = parse_triple)]
    pattern: Vec<(i64, i64, i64)>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the presentation the certificate refers to.
    #[arg(long)]
    pres_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct V2503Args {
    /// Write the presentation, certificates and witnesses here.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn parse_triple(s: &str) -> std::result::Result<(i64, i64, i64), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts[..] {
        [a, b, c] => {
            let n = |x: &str| x.parse::<i64>().map_err(|e| format!("{x:?}: {e}"));
            Ok((n(a)?, n(b)?, n(c)?))
        }
        _ => Err(format!("expected omega,t,b, got {s:?}")),
    }
}

/// Buffered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn code(&self) -> i32 {
        self.status.code()
    }
}

#[derive(Default)]
struct Out {
    stdout: String,
    stderr: String,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.stdout.push_str(s.as_ref());
        self.stdout.push('\n');
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { ExitStatus::Usage } else { ExitStatus::Success };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (format!("{HEADER}\n"), text)
            } else {
                (text, String::new())
            };
            return Outcome { status, stdout, stderr };
        }
    };
    let mut out = Out::default();
    out.line(HEADER);
    let status = match dispatch(cli.command, &mut out) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(out.stderr, "error: {e}");
            e.status()
        }
    };
    Outcome {
        status,
        stdout: out.stdout,
        stderr: out.stderr,
    }
}

fn dispatch(cmd: Command, out: &mut Out) -> CliResult<ExitStatus> {
    match cmd {
        Command::Convert(a) => convert(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Report(a) => report(a, out),
        Command::CertGen(a) => cert_gen(a, out),
        Command::V2503(a) => v2503(a, out),
    }
}

/// Pretty JSON with keys in sorted order.
pub fn to_sorted_json<T: Serialize>(v: &T) -> serde_json::Result<String> {
    // `Value` objects are `BTreeMap`s without the `preserve_order` feature.
    let v = serde_json::to_value(v)?;
    serde_json::to_string_pretty(&v)
}

fn json<T: Serialize>(v: &T) -> CliResult<String> {
    to_sorted_json(v).map_err(|e| CliError::Internal(format!("serialization failed: {e}")))
}

fn write_json<T: Serialize>(path: &Path, v: &T) -> CliResult<()> {
    let mut s = json(v)?;
    s.push('\n');
    fs::write(path, s).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_value(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn from_value<T: serde::de::DeserializeOwned>(path: &Path, v: Value) -> CliResult<T> {
    serde_json::from_value(v).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn convert(a: ConvertArgs, out: &mut Out) -> CliResult<ExitStatus> {
    let r = ttk_to_one_bridge(a.p, a.q, a.l, a.n)?;
    log::info!("condition {:?}, {} moves", r.condition, r.trace.steps.len());
    let ev = same_closure_evidence(&r.trace.start, &r.trace.end)?;
    let verdict = serde_json::to_value(ev.verdict)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default();
    out.line(format!("B({},{},{}) alexander={verdict}", r.omega, r.t, r.b));
    if let Some(path) = &a.out {
        write_json(path, &r.trace)?;
    }
    if ev.verdict == Verdict::Inconsistent {
        return Err(CliError::Internal(format!(
            "source and target closures disagree: {:?}",
            ev.alexander
        )));
    }
    Ok(ExitStatus::Success)
}

enum Artifact {
    Trace(MoveTrace),
    Certificate(Box<Certificate>),
    Witness(WitnessedEquality),
}

fn classify(path: &Path, v: Value) -> CliResult<Artifact> {
    let has = |k: &str| v.get(k).is_some();
    if has("steps") && has("start") {
        Ok(Artifact::Trace(from_value(path, v)?))
    } else if has("nodes") && has("root") {
        Ok(Artifact::Certificate(Box::new(from_value(path, v)?)))
    } else if has("witness") && has("from") {
        Ok(Artifact::Witness(from_value(path, v)?))
    } else {
        Err(CliError::Usage(format!(
            "{}: not a move trace, certificate or equality witness",
            path.display()
        )))
    }
}

fn verify_one(path: &Path, pres: Option<&Presentation>) -> CliResult<String> {
    let need_pres = || pres.ok_or_else(|| CliError::Usage(format!("{}: --pres is required", path.display())));
    match classify(path, read_value(path)?)? {
        Artifact::Trace(t) => {
            verify_trace(&t)?;
            Ok(format!("trace ok: {} moves, {} -> {}", t.steps.len(), t.start, t.end))
        }
        Artifact::Certificate(c) => {
            check_certificate(need_pres()?, &c.s, &c.target, &c)?;
            Ok(format!("certificate ok: {} nodes, target {}", c.len(), c.target))
        }
        Artifact::Witness(w) => {
            check_equality_witness(need_pres()?, &w.from, &w.to, &w.witness)?;
            Ok(format!("witness ok: {} = {} in {} steps", w.from, w.to, w.witness.len()))
        }
    }
}

fn verify(a: VerifyArgs, out: &mut Out) -> CliResult<ExitStatus> {
    let pres: Option<Presentation> = match &a.pres {
        Some(p) => Some(from_value(p, read_value(p)?)?),
        None => None,
    };
    let results: Vec<CliResult<String>> = std::thread::scope(|s| {
        let handles: Vec<_> = a
            .files
            .iter()
            .map(|f| {
                let pres = pres.as_ref();
                s.spawn(move || verify_one(f, pres))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(CliError::Internal("verifier panicked".into()))))
            .collect()
    });
    let mut status = ExitStatus::Success;
    for (f, r) in a.files.iter().zip(results) {
        match r {
            Ok(msg) => out.line(format!("{}: {msg}", f.display())),
            Err(e) => {
                out.line(format!("{}: rejected", f.display()));
                let _ = match e {
                    CliError::Lib(_) => writeln!(out.stderr, "error: {}: {e}", f.display()),
                    _ => writeln!(out.stderr, "error: {e}"),
                };
                status = status.max(e.status());
            }
        }
    }
    Ok(status)
}

#[derive(Serialize)]
struct Report {
    strands: usize,
    word: Vec<i32>,
    components: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    one_bridge: Option<[i64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alexander: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    genus: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    slope_threshold: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    presentation: Option<Presentation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fox_alexander: Option<String>,
}

fn report(a: ReportArgs, out: &mut Out) -> CliResult<ExitStatus> {
    let w: BraidWord = from_value(&a.braid, read_value(&a.braid)?)?;
    let ob = recognize_one_bridge(&w);
    let mut r = Report {
        strands: w.strands(),
        word: w.letters().to_vec(),
        components: closure_components(&w),
        one_bridge: ob.map(|(o, t, b)| [o, t, b]),
        alexander: None,
        genus: None,
        slope_threshold: None,
        presentation: None,
        fox_alexander: None,
    };
    if a.alexander {
        r.alexander = Some(alexander_from_braid(&w)?.to_string());
    }
    if a.genus {
        let g = positive_closure_genus(&w)?;
        r.genus = Some(g.genus);
        r.slope_threshold = Some(g.slope_threshold);
    }
    if a.presentation {
        let (o, t, b) = ob.ok_or_else(|| {
            Error::UnsupportedCase("presentations are built only for words of the form B(omega,t,b)".into())
        })?;
        let p = one_bridge_presentation(o, t, b)?;
        r.fox_alexander = Some(fox_alexander(&p)?.to_string());
        r.presentation = Some(p);
    }
    out.line(json(&r)?);
    Ok(ExitStatus::Success)
}

fn cert_gen(a: CertGenArgs, out: &mut Out) -> CliResult<ExitStatus> {
    let (pres, genus, cert) = match (a.knot, a.companion) {
        (Some((o, t, b)), None) => {
            let cert = property_d_certificate(o, t, b)?;
            let genus = positive_closure_genus(&crate::braid::one_bridge_braid(o, t, b)?)?.genus;
            (one_bridge_presentation(o, t, b)?, genus, cert)
        }
        (None, Some((o, t, b))) => {
            let mut cert = property_d_certificate(o, t, b)?;
            let mut pres = one_bridge_presentation(o, t, b)?;
            let mut genus = positive_closure_genus(&crate::braid::one_bridge_braid(o, t, b)?)?.genus;
            for &(o, t, b) in &a.pattern {
                cert = satellite_certificate(&cert, &pres, genus, o, t, b)?;
                pres = satellite_presentation(&pres, o, t, b)?;
                genus = satellite_genus(genus, o, t, b)?;
            }
            (pres, genus, cert)
        }
        _ => return Err(CliError::Usage("give either --knot or --companion with --pattern".into())),
    };
    let s: Vec<String> = cert.s.iter().map(|w| w.to_string()).collect();
    log::info!("genus {genus}, S = [{}]", s.join(", "));
    if let Some(p) = &a.pres_out {
        write_json(p, &pres)?;
    }
    match &a.out {
        Some(p) => {
            write_json(p, &cert)?;
            out.line(format!("certificate: {} nodes, genus {genus}, target {}", cert.len(), cert.target));
        }
        None => out.line(json(&cert)?),
    }
    Ok(ExitStatus::Success)
}

fn v2503(a: V2503Args, out: &mut Out) -> CliResult<ExitStatus> {
    let b = v2503_bundle()?;
    for c in &b.checks {
        out.line(format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
    }
    if let Some(dir) = &a.out_dir {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.clone(),
            source,
        })?;
        write_json(&dir.join("presentation.json"), &b.presentation)?;
        write_json(&dir.join("filled.json"), &b.filled)?;
        write_json(&dir.join("certificate.json"), &b.certificate)?;
        write_json(&dir.join("mu_inverse.json"), &b.mu_inverse)?;
        for (name, c) in &b.lemmas {
            write_json(&dir.join(format!("{name}.json")), c)?;
        }
        for (i, t) in b.torsion.iter().enumerate() {
            write_json(&dir.join(format!("torsion_{i}.json")), t)?;
        }
    }
    Ok(if b.all_passed() {
        ExitStatus::Success
    } else {
        ExitStatus::Rejected
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> Outcome {
        let o = run(std::iter::once("braidforge").chain(args.iter().copied()));
        assert_eq!(o.status, ExitStatus::Success, "{}", o.stderr);
        o
    }

    #[test]
    fn convert_trefoil_family() {
        let o = run_ok(&["convert", "--p", "2", "--q", "3", "--l", "2", "--n", "2"]);
        assert_eq!(o.stdout, format!("{HEADER}\nB(2,5,0) alexander=consistent\n"));
        let o = run(["braidforge", "convert", "--p", "3", "--q", "4", "--l", "3", "--n", "1"]);
        assert_eq!(o.code(), 2);
        let o = run(["braidforge", "convert", "--p", "3", "--q", "x", "--l", "3", "--n", "1"]);
        assert_eq!(o.code(), 2);
    }

    #[test]
    fn parse_triples() {
        assert_eq!(parse_triple("3, 5,0"), Ok((3, 5, 0)));
        assert!(parse_triple("3,5").is_err());
        assert!(parse_triple("3,5,z").is_err());
    }

    #[test]
    fn log_levels() {
        assert_eq!(log_filter(Some("quiet")), Some(LevelFilter::Off));
        assert_eq!(log_filter(None), Some(LevelFilter::Info));
        assert_eq!(log_filter(Some("debug")), Some(LevelFilter::Debug));
        assert_eq!(log_filter(Some("loud")), None);
    }

    #[test]
    fn status_classes() {
        assert_eq!(ExitStatus::of(&Error::NotAKnot(2)), ExitStatus::Rejected);
        assert_eq!(ExitStatus::of(&Error::domain("x")), ExitStatus::Usage);
        assert_eq!(ExitStatus::of(&Error::internal("x")), ExitStatus::Internal);
    }

    #[test]
    fn sorted_keys() {
        #[derive(Serialize)]
        struct Z {
            zeta: u8,
            alpha: u8,
        }
        assert_eq!(to_sorted_json(&Z { zeta: 1, alpha: 2 }).unwrap(), "{\n  \"alpha\": 2,\n  \"zeta\": 1\n}");
    }

    #[test]
    fn help_is_success() {
        let o = run(["braidforge", "--help"]);
        assert_eq!(o.code(), 0);
        assert!(o.stdout.contains("cert-gen"));
        assert_eq!(run(["braidforge", "frobnicate"]).code(), 2);
    }
}
