use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use liecohom::cochain::RelativeComplex;
use liecohom::error::{ComplexError, IoError, LieError};
use liecohom::io;
use liecohom::lie::{verify_jacobi, LieAlgebra, Subalgebra};
use liecohom::linalg::format_rational;
use liecohom::report::{ValidationReport, Verdict};
use liecohom::rep::{verify_representation, GModule};
use liecohom::resolution::SignPolicy;
use liecohom::suite::{self, SuiteConfig};

#[derive(Parser)]
#[command(name = "liecohom", version, about = "Exact relative Lie algebra cohomology over Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Jacobi identity, subalgebra closure, reductivity and the representation law.
    Validate(Common),
    /// Betti numbers of the relative cochain complex, degree by degree.
    Cohomology(Common),
    /// Run the seeded property battery at the configured truncation.
    Verify(Common),
    /// Build and verify a contracting homotopy for a complex file.
    Homotopy(HomotopyArgs),
    /// H^n(h, E) next to the chain-level Shapiro checks.
    Shapiro(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock time (makes output non-deterministic).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct Common {
    /// Preset name (abelian:n, heisenberg3, sl2, so3, gl2, filiform:n) or JSON file.
    #[arg(long, default_value = "heisenberg3")]
    algebra: String,
    /// Preset name (trivial:d, adjoint, natural, sym:k) or JSON file.
    #[arg(long, default_value = "trivial:1")]
    module: String,
    /// zero, full, compact, cartan, center, derived, an index list like 0,2, or a JSON vector list.
    #[arg(long, default_value = "zero")]
    subalgebra: String,
    #[arg(long)]
    max_degree: Option<usize>,
    /// PBW degree bound N for the enveloping-algebra checks.
    #[arg(long, default_value_t = 4)]
    truncation: usize,
    #[arg(long)]
    representatives: bool,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Random inputs per property check.
    #[arg(long, default_value_t = 2)]
    samples: usize,
    /// Drop the (-1)^{i+j} sign on the bracket sum of the standard coboundary.
    #[arg(long, hide = true)]
    unsigned_bracket_sum: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct HomotopyArgs {
    /// JSON file {"spaces": [...], "maps": [...]}.
    #[arg(long)]
    complex: PathBuf,
    #[command(flatten)]
    output: Output,
}

enum Failure {
    /// Exit code 2.
    Input(String),
    /// Exit code 1, with a report still printed.
    Math(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Lie(l) => l.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<LieError> for Failure {
    fn from(e: LieError) -> Self {
        match e {
            LieError::Jacobi(_) | LieError::NotClosed(_) | LieError::Representation(_) => Failure::Math(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn looks_like_file(s: &str) -> bool {
    Path::new(s).exists() || s.ends_with(".json") || s.contains('/')
}

fn load_algebra(source: &str) -> Result<Arc<LieAlgebra>, Failure> {
    if looks_like_file(source) {
        return Ok(Arc::new(io::parse_algebra(&read(Path::new(source))?)?));
    }
    Ok(Arc::new(LieAlgebra::preset(source)?))
}

fn load_module(source: &str, g: &Arc<LieAlgebra>) -> Result<GModule, Failure> {
    if looks_like_file(source) {
        return Ok(io::parse_module(&read(Path::new(source))?, g.clone())?);
    }
    Ok(GModule::preset(g.clone(), source)?)
}

struct Setup {
    h: Subalgebra,
    module: GModule,
    max_degree: usize,
}

fn setup(c: &Common) -> Result<Setup, Failure> {
    let g = load_algebra(&c.algebra)?;
    let h = io::parse_subalgebra(&c.subalgebra, &g)?;
    let module = load_module(&c.module, &g)?;
    let q = g.dim() - h.dim();
    let max_degree = c.max_degree.unwrap_or(q);
    if max_degree > q {
        return Err(Failure::Input(format!("--max-degree {max_degree} exceeds dim(g/h) = {q}")));
    }
    Ok(Setup { h, module, max_degree })
}

fn inputs(command: &str, c: &Common, max_degree: usize) -> Value {
    json!({
        "command": command,
        "algebra": c.algebra,
        "module": c.module,
        "subalgebra": c.subalgebra,
        "max_degree": max_degree,
        "truncation": c.truncation,
    })
}

struct Rendered {
    table: String,
    json: Value,
    ok: bool,
}

fn report_json(r: &ValidationReport) -> Value {
    let failures: Vec<Value> = r.failures.iter().map(|f| json!({ "location": f.location, "residual": f.residual })).collect();
    json!({ "check": r.check, "pass": r.passed(), "checked": r.checked, "failures": failures })
}

fn report_line(s: &mut String, r: &ValidationReport) {
    let _ = writeln!(s, "{r}");
}

fn validate(c: &Common) -> Result<Rendered, Failure> {
    let mut reports = Vec::new();
    let g = if looks_like_file(&c.algebra) {
        let (names, brackets) = io::parse_algebra_raw(&read(Path::new(&c.algebra))?)?;
        let jacobi = verify_jacobi(names.len(), &brackets);
        let ok = jacobi.passed();
        reports.push(jacobi);
        if !ok {
            return Ok(finish_validate(c, reports, Vec::new()));
        }
        Arc::new(LieAlgebra::new(names, brackets)?)
    } else {
        let g = Arc::new(LieAlgebra::preset(&c.algebra)?);
        reports.push(verify_jacobi(g.dim(), g.brackets()));
        g
    };
    let mut notes = Vec::new();
    let h = match io::parse_subalgebra(&c.subalgebra, &g) {
        Ok(h) => {
            let mut closure = ValidationReport::new("subalgebra-closure");
            closure.record(true, String::new, String::new);
            reports.push(closure);
            Some(h)
        }
        Err(IoError::Lie(LieError::NotClosed(r))) => {
            let mut closure = r;
            closure.check = "subalgebra-closure".into();
            reports.push(closure);
            None
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(h) = &h {
        let cert = h.is_reductive();
        let mut red = ValidationReport::new("subalgebra-reductive");
        red.record(
            cert.reductive,
            || "h".into(),
            || {
                format!(
                    "center {} + derived {} (Killing rank {}) does not split dim h = {}",
                    cert.center.len(),
                    cert.derived_dim,
                    cert.killing_rank,
                    h.dim()
                )
            },
        );
        reports.push(red);
        notes.push(format!(
            "h acts semisimply on g: {}",
            if h.acts_semisimply_on_parent() { "yes" } else { "no" }
        ));
    }
    let action = if looks_like_file(&c.module) {
        let (dim, action) = io::parse_module_raw(&read(Path::new(&c.module))?)?;
        if action.len() != g.dim() || action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Failure::Input(format!("module file needs {} matrices of size {dim}x{dim}", g.dim())));
        }
        action
    } else {
        GModule::preset(g.clone(), &c.module)?.action().to_vec()
    };
    reports.push(verify_representation(&g, &action));
    Ok(finish_validate(c, reports, notes))
}

fn finish_validate(c: &Common, reports: Vec<ValidationReport>, notes: Vec<String>) -> Rendered {
    let ok = reports.iter().all(ValidationReport::passed);
    let mut table = String::new();
    for r in &reports {
        report_line(&mut table, r);
    }
    for n in &notes {
        let _ = writeln!(table, "note: {n}");
    }
    let _ = writeln!(table, "{}", if ok { "all checks pass" } else { "validation FAILED" });
    let json = json!({
        "inputs": inputs("validate", c, c.max_degree.unwrap_or(0)),
        "checks": reports.iter().map(report_json).collect::<Vec<_>>(),
        "notes": notes,
        "pass": ok,
    });
    Rendered { table, json, ok }
}

fn cohomology(c: &Common) -> Result<Rendered, Failure> {
    let s = setup(c)?;
    let cx = RelativeComplex::new(&s.h, &s.module).map_err(|e| Failure::Input(e.to_string()))?;
    let report = cx.betti_numbers(s.max_degree).map_err(|e| Failure::Input(e.to_string()))?;
    let reduced = cx.reduced_betti_numbers(s.max_degree).map_err(|e| Failure::Input(e.to_string()))?;
    let equal = reduced.betti() == report.betti();
    let mut table = report.table();
    let betti: Vec<String> = report.betti().iter().map(ToString::to_string).collect();
    let _ = writeln!(table, "betti: ({})", betti.join(", "));
    let _ = writeln!(table, "reduced = unreduced: {}", if equal { "yes" } else { "NO" });
    if c.representatives {
        for r in &report.results {
            for (i, v) in r.representatives.iter().enumerate() {
                let coords: Vec<String> = v.iter().map(format_rational).collect();
                let _ = writeln!(table, "H^{} representative {i}: [{}]", r.degree, coords.join(", "));
            }
        }
    }
    let mut json = io::cohomology_json(&report, c.representatives);
    json["inputs"] = inputs("cohomology", c, s.max_degree);
    json["betti"] = json!(report.betti());
    json["reduced_betti"] = json!(reduced.betti());
    json["reduced_equals_unreduced"] = json!(equal);
    Ok(Rendered { table, json, ok: equal })
}

fn verdict_table(s: &mut String, verdicts: &[Verdict]) {
    let _ = writeln!(s, "{:<36} {:>6} {:>7} {:>6} {:>8}", "check", "result", "points", "bound", "window");
    for v in verdicts {
        let result = if !v.passed() {
            "FAIL"
        } else if v.vacuous {
            "empty"
        } else {
            "pass"
        };
        let _ = writeln!(s, "{:<36} {:>6} {:>7} {:>6} {:>8}", v.check, result, v.report.checked, v.bound, v.window);
        for f in v.report.failures.iter().take(3) {
            let _ = writeln!(s, "    at {}: residual {}", f.location, f.residual);
        }
        if v.report.failures.len() > 3 {
            let _ = writeln!(s, "    ... {} more", v.report.failures.len() - 3);
        }
    }
}

fn verify(c: &Common) -> Result<Rendered, Failure> {
    let s = setup(c)?;
    let config = SuiteConfig {
        bound: c.truncation,
        seed: c.seed,
        samples: c.samples,
        policy: if c.unsigned_bracket_sum { SignPolicy::Unsigned } else { SignPolicy::Signed },
    };
    let verdicts = suite::run(&s.h, &s.module, &config).map_err(|e| Failure::Input(e.to_string()))?;
    let ok = suite::all_passed(&verdicts);
    let mut table = String::new();
    verdict_table(&mut table, &verdicts);
    let failed: Vec<&str> = verdicts.iter().filter(|v| !v.passed()).map(|v| v.check.as_str()).collect();
    let _ = writeln!(table, "{}", if ok { "all checks pass".to_string() } else { format!("FAILED: {}", failed.join(", ")) });
    let json = json!({
        "inputs": inputs("verify", c, s.max_degree),
        "seed": c.seed,
        "samples": c.samples,
        "sign_policy": if c.unsigned_bracket_sum { "unsigned" } else { "signed" },
        "verdicts": verdicts.iter().map(io::verdict_json).collect::<Vec<_>>(),
        "pass": ok,
    });
    Ok(Rendered { table, json, ok })
}

fn shapiro(c: &Common) -> Result<Rendered, Failure> {
    let s = setup(c)?;
    let e_h = s.module.restrict(&s.h)?;
    let mut rng = suite::seeded(c.seed);
    let max = c.max_degree.unwrap_or(s.h.dim()).min(s.h.dim());
    let report = suite::shapiro_report(&s.h, &e_h, max, c.truncation, &mut rng, c.samples)
        .map_err(|e| Failure::Input(e.to_string()))?;
    let ok = suite::all_passed(&report.verdicts);
    let mut table = String::new();
    let _ = writeln!(table, "{:>6} {:>10}", "degree", "H^n(h,E)");
    for (n, b) in report.h_betti.iter().enumerate() {
        let _ = writeln!(table, "{n:>6} {b:>10}");
    }
    let _ = writeln!(table, "note: {}", report.note);
    verdict_table(&mut table, &report.verdicts);
    let _ = writeln!(table, "{}", if ok { "all checks pass" } else { "FAILED" });
    let mut json = io::shapiro_json(&report);
    json["inputs"] = inputs("shapiro", c, max);
    json["pass"] = json!(ok);
    Ok(Rendered { table, json, ok })
}

fn homotopy(a: &HomotopyArgs) -> Result<Rendered, Failure> {
    let complex = io::parse_complex(&read(&a.complex)?)?;
    let mut table = String::new();
    let mut json = json!({ "inputs": { "command": "homotopy", "complex": a.complex.display().to_string() } });
    let _ = writeln!(table, "spaces: {:?}", complex.spaces());
    json["spaces"] = json!(complex.spaces());
    let cx = complex.verify_complex();
    json["complex_check"] = report_json(&cx);
    if !cx.passed() {
        report_line(&mut table, &cx);
        json["pass"] = json!(false);
        return Ok(Rendered { table, json, ok: false });
    }
    json["homology"] = json!(complex.homology_dims());
    let ok = match complex.build_contracting_homotopy() {
        Ok(s) => {
            for (l, m) in s.maps.iter().enumerate() {
                let _ = writeln!(table, "s^{l} ({}x{}):", m.rows(), m.cols());
                for r in 0..m.rows() {
                    let row: Vec<String> = m.row(r).iter().map(format_rational).collect();
                    let _ = writeln!(table, "  [{}]", row.join(", "));
                }
            }
            let check = complex.verify_homotopy(&s);
            report_line(&mut table, &check);
            json["homotopy"] = json!(s.maps.iter().map(io::matrix_json).collect::<Vec<_>>());
            json["homotopy_check"] = report_json(&check);
            check.passed()
        }
        Err(ComplexError::NotExact { degree, dim }) => {
            let _ = writeln!(table, "NotExact: homology at E^{degree} has dimension {dim}");
            json["error"] = json!({ "kind": "NotExact", "degree": degree, "dim": dim });
            false
        }
        Err(ComplexError::NotInjectiveAugmentation) => {
            let _ = writeln!(table, "NotInjectiveAugmentation");
            json["error"] = json!({ "kind": "NotInjectiveAugmentation" });
            false
        }
        Err(e) => return Err(Failure::Math(e.to_string())),
    };
    json["pass"] = json!(ok);
    Ok(Rendered { table, json, ok })
}

fn emit(out: &Output, mut r: Rendered, started: Instant) -> Result<bool, Failure> {
    if out.timing {
        let secs = started.elapsed().as_secs_f64();
        r.json["timing_seconds"] = json!(secs);
        let _ = writeln!(r.table, "time: {secs:.3}s");
    }
    let text = match out.format {
        Format::Table => r.table,
        Format::Json => serde_json::to_string_pretty(&r.json).expect("plain data") + "\n",
    };
    match &out.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(r.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let (rendered, out) = match &cli.command {
        Command::Validate(c) => (validate(c), &c.output),
        Command::Cohomology(c) => (cohomology(c), &c.output),
        Command::Verify(c) => (verify(c), &c.output),
        Command::Shapiro(c) => (shapiro(c), &c.output),
        Command::Homotopy(a) => (homotopy(a), &a.output),
    };
    match rendered.and_then(|r| emit(out, r, started)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Math(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
