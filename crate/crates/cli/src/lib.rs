//! Library side of the `frobrec` command: configuration, the four commands,
//! output formats and the on-disk cache.

pub mod format;

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use frobrec_core::verify::to_gw_invariant;
use frobrec_core::{
    check_presentation, limit_algebra, reconstruct, sweep_residuals, OrbifoldData, Potential, VerificationReport,
};

use format::{Format, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] frobrec_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        use frobrec_core::Error as E;
        match self {
            Error::Core(E::Stalled(_) | E::Inconsistent { .. } | E::SymmetryConflict(..) | E::Oracle { .. }) => {
                EXIT_SOLVER
            }
            Error::Core(E::Incomplete(_)) => EXIT_VERIFY,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Compute,
    Verify,
    Invariants,
    Algebra,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub a: [i64; 3],
    /// `None` means the natural bound, which exists only when `chi > 0`.
    pub max_m: Option<u32>,
    pub max_len: Option<u32>,
    pub command: Command,
    pub format: Format,
    pub out_path: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    /// Run the residual sweep before emitting `compute` output.
    pub verify: bool,
}

impl RunConfig {
    pub fn new(a: [i64; 3], command: Command) -> Self {
        RunConfig {
            a,
            max_m: None,
            max_len: None,
            command,
            format: Format::Text,
            out_path: None,
            cache_dir: None,
            verify: true,
        }
    }

    fn orbifold(&self) -> Result<OrbifoldData, Error> {
        let [a1, a2, a3] = self.a;
        Ok(OrbifoldData::new(a1, a2, a3)?)
    }

    fn resolve_max_m(&self, orb: &OrbifoldData) -> Result<u32, Error> {
        match (self.max_m, orb.natural_max_m()) {
            (Some(0), _) => Err(Error::Usage("--max-m must be at least 1".into())),
            (Some(m), _) => Ok(m),
            (None, Some(n)) => Ok(n),
            (None, None) => Err(Error::Usage(format!(
                "--max-m is required for {orb}: chi = {} <= 0 leaves the degree unbounded",
                orb.chi()
            ))),
        }
    }
}

/// Runs one command, writing the result to `out_path` or `stdout` and
/// diagnostics to `stderr`. Returns the process exit code.
pub fn run(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match execute(config, stderr) {
        Ok((text, code)) => {
            if let Err(e) = emit(config, &text, stdout) {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_USAGE;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(config: &RunConfig, text: &str, stdout: &mut dyn Write) -> Result<(), Error> {
    match &config.out_path {
        Some(path) => fs::write(path, text).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| Error::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn execute(config: &RunConfig, stderr: &mut dyn Write) -> Result<(String, i32), Error> {
    let orb = config.orbifold()?;
    let max_m = config.resolve_max_m(&orb)?;
    if config.max_len.is_some_and(|l| l < 3) {
        return Err(Error::Usage("--max-len must be at least 3".into()));
    }
    let p = obtain(config, &orb, max_m, stderr)?;
    match config.command {
        Command::Compute => {
            let mut code = EXIT_OK;
            if config.verify {
                let report = sweep_residuals(&p, max_m)?;
                if !report.is_clean() {
                    let _ = write!(stderr, "{}", report_text(&p, &report));
                    code = EXIT_VERIFY;
                }
            }
            let text = match config.format {
                Format::Json => format::to_json(&p, !config.verify),
                Format::Csv => format::to_csv(&p),
                Format::Text => format::to_text(&p, !config.verify),
            };
            Ok((text, code))
        }
        Command::Verify => {
            let report = sweep_residuals(&p, max_m)?;
            let code = if report.is_clean() { EXIT_OK } else { EXIT_VERIFY };
            Ok((render_report(&p, &report, config.format), code))
        }
        Command::Invariants => Ok((render_invariants(&p, config.format), EXIT_OK)),
        Command::Algebra => render_algebra(&p, config.format),
    }
}

/// Cache file for a given run. The crate version is part of the name so
/// stale entries from other builds are never read.
pub fn cache_file(dir: &Path, orb: &OrbifoldData, max_m: u32, max_len: Option<u32>) -> PathBuf {
    let [a1, a2, a3] = orb.a();
    let len = max_len.map_or_else(|| "all".to_string(), |l| l.to_string());
    dir.join(format!(
        "P1_{a1}_{a2}_{a3}-m{max_m}-len{len}-v{}.json",
        env!("CARGO_PKG_VERSION")
    ))
}

fn cache_dir(config: &RunConfig) -> Option<PathBuf> {
    std::env::var_os("FROBREC_CACHE")
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or_else(|| config.cache_dir.clone())
}

fn obtain(config: &RunConfig, orb: &OrbifoldData, max_m: u32, stderr: &mut dyn Write) -> Result<Potential, Error> {
    let dir = cache_dir(config);
    let path = dir.as_ref().map(|d| cache_file(d, orb, max_m, config.max_len));
    if let Some(path) = &path {
        if let Ok(text) = fs::read_to_string(path) {
            match format::from_json(&text) {
                Ok(p) => return Ok(p),
                Err(e) => {
                    let _ = writeln!(stderr, "warning: ignoring cache {}: {e}", path.display());
                }
            }
        }
    }
    let r = reconstruct(orb, max_m, config.max_len)?;
    if let Some(path) = &path {
        let stored = dir
            .as_ref()
            .map_or(Ok(()), fs::create_dir_all)
            .and_then(|_| fs::write(path, format::to_json(&r.potential, false)));
        if let Err(e) = stored {
            let _ = writeln!(stderr, "warning: could not write cache {}: {e}", path.display());
        }
    }
    Ok(r.potential)
}

fn report_text(p: &Potential, r: &VerificationReport) -> String {
    let ok = |b: bool| if b { "ok" } else { "FAILED" };
    let mut s = String::new();
    let _ = writeln!(s, "A = {}", p.orbifold());
    let _ = writeln!(s, "residuals checked: {}", r.residuals_checked);
    let _ = writeln!(s, "skipped: {}", r.skipped);
    let _ = writeln!(s, "failures: {}", r.failures.len());
    for (inst, v) in &r.failures {
        let _ = writeln!(s, "  {inst} = {v}");
    }
    let _ = writeln!(s, "homogeneity: {}", ok(r.homogeneity_ok));
    let _ = writeln!(s, "symmetry: {}", ok(r.symmetry_ok));
    let _ = writeln!(s, "algebra: {}", ok(r.algebra_ok));
    s
}

#[derive(Serialize)]
struct FailureRecord {
    instance: String,
    residual: Rational,
}

#[derive(Serialize)]
struct ReportDoc {
    #[serde(rename = "A")]
    a: [u32; 3],
    max_m: u32,
    residuals_checked: usize,
    skipped: usize,
    failures: Vec<FailureRecord>,
    homogeneity_ok: bool,
    symmetry_ok: bool,
    algebra_ok: bool,
}

fn render_report(p: &Potential, r: &VerificationReport, fmt: Format) -> String {
    match fmt {
        Format::Text => report_text(p, r),
        Format::Json => {
            let doc = ReportDoc {
                a: p.orbifold().a(),
                max_m: p.max_m(),
                residuals_checked: r.residuals_checked,
                skipped: r.skipped,
                failures: r
                    .failures
                    .iter()
                    .map(|(inst, v)| FailureRecord {
                        instance: inst.to_string(),
                        residual: Rational(v.clone()),
                    })
                    .collect(),
                homogeneity_ok: r.homogeneity_ok,
                symmetry_ok: r.symmetry_ok,
                algebra_ok: r.algebra_ok,
            };
            serde_json::to_string(&doc).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["instance", "residual"]).expect("in-memory write");
            for (inst, v) in &r.failures {
                w.write_record([inst.to_string(), v.to_string()]).expect("in-memory write");
            }
            finish_csv(w)
        }
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::NonNumeric)
        .from_writer(Vec::new())
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

#[derive(Serialize)]
struct InvariantRecord {
    alpha: format::Alpha,
    m: u32,
    c: Rational,
    invariant: Rational,
}

fn render_invariants(p: &Potential, fmt: Format) -> String {
    let rows: Vec<InvariantRecord> = p
        .coefficients()
        .into_iter()
        .map(|(k, v)| InvariantRecord {
            alpha: format::Alpha(k.alpha.clone()),
            m: k.m,
            c: Rational(v.clone()),
            invariant: Rational(to_gw_invariant(k, v)),
        })
        .collect();
    match fmt {
        Format::Json => serde_json::to_string(&rows).expect("serializable") + "\n",
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["alpha", "m", "c", "invariant"]).expect("in-memory write");
            for (k, v) in p.coefficients() {
                w.write_record([format::alpha_cell(&k.alpha), k.m.to_string(), v.to_string(), to_gw_invariant(k, v).to_string()])
                    .expect("in-memory write");
            }
            finish_csv(w)
        }
        Format::Text => {
            let mut s = String::new();
            for (k, v) in p.coefficients() {
                let _ = writeln!(s, "{k} = {v}    invariant = {}", to_gw_invariant(k, v));
            }
            s
        }
    }
}

#[derive(Serialize)]
struct ProductRecord {
    x: String,
    y: String,
    product: Vec<(String, Rational)>,
}

#[derive(Serialize)]
struct AlgebraDoc {
    #[serde(rename = "A")]
    a: [u32; 3],
    products: Vec<ProductRecord>,
    presentation_ok: bool,
    diagnoses: Vec<String>,
}

fn render_algebra(p: &Potential, fmt: Format) -> Result<(String, i32), Error> {
    let sc = limit_algebra(p)?;
    let check = check_presentation(&sc);
    let code = if check.ok { EXIT_OK } else { EXIT_VERIFY };
    let coords = p.orbifold().coordinates();
    let mut products = Vec::new();
    for (ix, &x) in coords.iter().enumerate() {
        for &y in &coords[ix..] {
            let prod = sc.product(x, y);
            if !prod.is_empty() {
                products.push(ProductRecord {
                    x: x.to_string(),
                    y: y.to_string(),
                    product: prod.into_iter().map(|(c, v)| (c.to_string(), Rational(v))).collect(),
                });
            }
        }
    }
    let text = match fmt {
        Format::Json => {
            let doc = AlgebraDoc {
                a: p.orbifold().a(),
                products,
                presentation_ok: check.ok,
                diagnoses: check.diagnoses,
            };
            serde_json::to_string(&doc).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["x", "y", "basis", "coefficient"]).expect("in-memory write");
            for r in &products {
                for (c, v) in &r.product {
                    w.write_record([r.x.as_str(), r.y.as_str(), c.as_str(), &v.0.to_string()])
                        .expect("in-memory write");
                }
            }
            finish_csv(w)
        }
        Format::Text => {
            let mut s = String::new();
            for r in &products {
                let terms: Vec<String> = r.product.iter().map(|(c, v)| format!("({}) d{c}", v.0)).collect();
                let _ = writeln!(s, "d{} o d{} = {}", r.x, r.y, terms.join(" + "));
            }
            let _ = writeln!(s, "presentation: {}", if check.ok { "ok" } else { "FAILED" });
            for d in &check.diagnoses {
                let _ = writeln!(s, "  {d}");
            }
            s
        }
    };
    Ok((text, code))
}
