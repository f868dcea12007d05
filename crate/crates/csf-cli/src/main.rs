//! `csf`: batch front end for the filtered-complex toolkit.
//!
//! Subcommands: `ell`, `kappa`, `barcode`, `triangle-check`, `surgery-ranks`,
//! `alexander`, `certify`. Every command reads its inputs, computes with
//! exact arithmetic, and emits a deterministic report; `--json` switches to
//! the machine form. Exit codes: 0 success, 1 validation failure, 2
//! verification failure.

mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use csf_core::alexander::cosmetic_solve;
use csf_core::cobordism::{certify_chain, parse_chain_spec, Relation};
use csf_core::floer::ManifoldData;
use csf_core::rational::{display_rat, format_ext, format_rat, ExtRat, Rat};
use csf_core::triangle::{surgery_rank_terms, surgery_ranks, GradedDims, TriangleFile};

use report::RunReport;

#[derive(Parser)]
#[command(
    name = "csf",
    version,
    about = "Filtered-complex invariants, triangle detection, surgery rank calculus, and inequality certificates"
)]
struct Cli {
    /// Emit the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug)]
struct Window {
    lo: i64,
    hi: i64,
}

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| format!("window `{s}` must look like `0..7`"))?;
        let lo: i64 = lo.trim().parse().map_err(|_| format!("bad window start `{lo}`"))?;
        let hi: i64 = hi.trim().parse().map_err(|_| format!("bad window end `{hi}`"))?;
        if lo > hi {
            return Err(format!("window `{s}` is empty"));
        }
        if hi - lo > 64 {
            return Err(format!("window `{s}` is too wide"));
        }
        Ok(Window { lo, hi })
    }
}

impl Window {
    fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

fn default_window() -> Window {
    Window { lo: 0, hi: 7 }
}

#[derive(Subcommand)]
enum Command {
    /// Kappa table over a degree window and the ell invariant of a manifest.
    Ell {
        manifest: PathBuf,
        /// Degree window to report, e.g. `0..7`.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<Window>,
    },
    /// Kappa values of a manifest, for one degree or a window.
    Kappa {
        manifest: PathBuf,
        /// Report a single degree.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<Window>,
    },
    /// Barcode of a manifest over a degree window.
    Barcode {
        manifest: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<Window>,
    },
    /// Verify the triangle identities of a data file and run the detection.
    #[command(name = "triangle-check")]
    TriangleCheck { data: PathBuf },
    /// Rank decomposition of a surgery family member from a base vector.
    #[command(name = "surgery-ranks")]
    SurgeryRanks {
        /// Nonzero surgery parameter.
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Eight comma-separated dimensions, degrees 0..7.
        #[arg(long)]
        base: String,
    },
    /// Solve the cosmetic-surgery constraints on the genus-two template.
    Alexander,
    /// Build the inequality certificate for a chain spec file.
    Certify { chain: PathBuf },
}

enum CliError {
    Validation(String),
}

enum Outcome {
    Pass(RunReport),
    Fail(RunReport),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Outcome::Pass(report)) => {
            emit(&report.render(cli.json));
            ExitCode::SUCCESS
        }
        Ok(Outcome::Fail(report)) => {
            emit(&report.render(cli.json));
            ExitCode::from(2)
        }
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Prints the report; a closed stdout (downstream consumer stopped reading)
/// is not an error for a batch tool.
fn emit(text: &str) {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let _ = writeln!(lock, "{text}");
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Ell { manifest, window } => {
            cmd_ell(manifest, window.unwrap_or_else(default_window), true)
        }
        Command::Kappa { manifest, degree, window } => match degree {
            Some(d) => cmd_kappa_single(manifest, *d),
            None => cmd_ell(manifest, window.unwrap_or_else(default_window), false),
        },
        Command::Barcode { manifest, window } => {
            cmd_barcode(manifest, window.unwrap_or_else(default_window))
        }
        Command::TriangleCheck { data } => cmd_triangle(data),
        Command::SurgeryRanks { n, base } => cmd_surgery_ranks(*n, base),
        Command::Alexander => cmd_alexander(),
        Command::Certify { chain } => cmd_certify(chain),
    }
}

fn read_manifest(path: &PathBuf, report: &mut RunReport) -> Result<ManifoldData, CliError> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    report.input(&path.display().to_string(), &bytes);
    let text = String::from_utf8(bytes)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    ManifoldData::from_json(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn ext_json(e: &ExtRat) -> Value {
    Value::String(format_ext(e))
}

fn cmd_ell(path: &PathBuf, window: Window, with_ell: bool) -> Result<Outcome, CliError> {
    let mut report = RunReport::new(if with_ell { "ell" } else { "kappa" });
    let data = read_manifest(path, &mut report)?;
    let module = data.ip_module();
    report.line(format!("manifest: {} ({})", path.display(), report.inputs[0].1.clone()));
    report.line(format!("name: {}", data.name()));
    report.line(format!("kappa (degrees {}..{}):", window.lo, window.hi));
    let mut kappa_rows = Vec::new();
    for d in window.degrees() {
        let k = module.kappa(d);
        report.line(format!("  kappa({d}) = {k}"));
        kappa_rows.push(json!({ "degree": d, "value": format_ext(&k) }));
    }
    let ell = module.ell();
    if with_ell {
        report.line(format!("ell = {ell}"));
    }
    report.results = json!({
        "name": data.name(),
        "kappa": kappa_rows,
        "ell": if with_ell { ext_json(&ell) } else { Value::Null },
    });
    report.citations = vec![
        "sublevel-persistence-barcode".into(),
        "kappa-least-surviving-level".into(),
        "ell-infimum-over-degree-window".into(),
    ];
    Ok(Outcome::Pass(report))
}

fn cmd_kappa_single(path: &PathBuf, degree: i64) -> Result<Outcome, CliError> {
    let mut report = RunReport::new("kappa");
    let data = read_manifest(path, &mut report)?;
    let k = data.ip_module().kappa(degree);
    report.line(format!("manifest: {} ({})", path.display(), report.inputs[0].1.clone()));
    report.line(format!("kappa({degree}) = {k}"));
    report.results = json!({
        "name": data.name(),
        "kappa": [{ "degree": degree, "value": format_ext(&k) }],
    });
    report.citations = vec!["kappa-least-surviving-level".into()];
    Ok(Outcome::Pass(report))
}

fn cmd_barcode(path: &PathBuf, window: Window) -> Result<Outcome, CliError> {
    let mut report = RunReport::new("barcode");
    let data = read_manifest(path, &mut report)?;
    let module = data.ip_module();
    report.line(format!("manifest: {} ({})", path.display(), report.inputs[0].1.clone()));
    report.line(format!("barcode (degrees {}..{}):", window.lo, window.hi));
    let mut bars_json = Vec::new();
    for d in window.degrees() {
        for bar in module.barcode().bars_in_degree(d) {
            let death = match &bar.death {
                None => "inf".to_string(),
                Some(x) => display_rat(x),
            };
            report.line(format!("  degree {d}: [{}, {death})", display_rat(&bar.birth)));
            bars_json.push(json!({
                "degree": d,
                "birth": format_rat(&bar.birth),
                "death": bar.death.as_ref().map(format_rat).unwrap_or_else(|| "inf".into()),
            }));
        }
    }
    if bars_json.is_empty() {
        report.line("  (empty)");
    }
    report.results = json!({ "name": data.name(), "bars": bars_json });
    report.citations = vec!["sublevel-persistence-barcode".into(), "bar-translation-rule".into()];
    Ok(Outcome::Pass(report))
}

fn cmd_triangle(path: &PathBuf) -> Result<Outcome, CliError> {
    let mut report = RunReport::new("triangle-check");
    let bytes = fs::read(path)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    report.input(&path.display().to_string(), &bytes);
    let text = String::from_utf8(bytes)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    let (name, data) = TriangleFile::parse(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    let dims = data.dims();
    report.line(format!("triangle: {name} (dims {}, {}, {})", dims[0], dims[1], dims[2]));
    let identities = data.verify_identities();
    report.line("identities:");
    let mut identity_rows = Vec::new();
    for c in &identities.checks {
        report.line(format!("  [{}] {} at slot {}", if c.ok { "ok" } else { "FAIL" }, c.kind, c.slot));
        identity_rows.push(json!({ "kind": c.kind, "slot": c.slot, "ok": c.ok }));
    }
    if !identities.ok {
        let (kind, slot) = identities.first_failure.unwrap();
        report.line(format!("verdict: FAIL ({kind} violated at slot {slot})"));
        report.results = json!({
            "name": name,
            "identities": identity_rows,
            "verdict": "fail",
            "first_failure": { "kind": kind, "slot": slot },
        });
        report.citations = vec!["four-identity-check".into()];
        return Ok(Outcome::Fail(report));
    }
    let q_routes: Vec<String> =
        identities.q_routes.iter().map(|r| format!("{r:?}").to_lowercase()).collect();
    report.line(format!(
        "q homotopic to identity: established (routes: {})",
        q_routes.join(", ")
    ));
    let verdict = data.detect().expect("identities verified");
    report.line(format!(
        "homology dims: [{}, {}, {}]; induced f ranks: [{}, {}, {}]",
        verdict.homology_dims[0],
        verdict.homology_dims[1],
        verdict.homology_dims[2],
        verdict.induced_f_ranks[0],
        verdict.induced_f_ranks[1],
        verdict.induced_f_ranks[2],
    ));
    let mut cone_rows = Vec::new();
    for c in &verdict.cone_checks {
        report.line(format!(
            "  H(C{}) = {} vs H(Cone(f{})) = {}: {}",
            c.slot,
            c.homology_dim,
            c.cone_of,
            c.cone_homology_dim,
            if c.comparison_iso { "isomorphism" } else { "NOT an isomorphism" }
        ));
        cone_rows.push(json!({
            "slot": c.slot,
            "cone_of": c.cone_of,
            "homology_dim": c.homology_dim,
            "cone_homology_dim": c.cone_homology_dim,
            "comparison_iso": c.comparison_iso,
        }));
    }
    let mut notes = Vec::new();
    for n in &verdict.zero_vertex_notes {
        let text = format!(
            "C{} = 0: g{} induces an isomorphism H(C{}) -> H(C{}): {}",
            n.zero_slot,
            n.g_slot,
            n.g_slot,
            n.target_slot,
            if n.quasi_isomorphism { "yes" } else { "NO" }
        );
        report.line(format!("  note: {text}"));
        notes.push(json!({
            "zero_slot": n.zero_slot,
            "g_slot": n.g_slot,
            "target_slot": n.target_slot,
            "quasi_isomorphism": n.quasi_isomorphism,
        }));
    }
    report.line(format!(
        "rank triangle exact: {}",
        if verdict.rank_triangle_exact { "yes" } else { "NO" }
    ));
    report.line(format!("verdict: {}", if verdict.ok { "PASS" } else { "FAIL" }));
    report.results = json!({
        "name": name,
        "identities": identity_rows,
        "q_routes": q_routes,
        "homology_dims": verdict.homology_dims.to_vec(),
        "induced_f_ranks": verdict.induced_f_ranks.to_vec(),
        "cone_checks": cone_rows,
        "zero_vertex_notes": notes,
        "rank_triangle_exact": verdict.rank_triangle_exact,
        "verdict": if verdict.ok { "pass" } else { "fail" },
    });
    report.citations = vec![
        "four-identity-check".into(),
        "mapping-cone-comparison".into(),
        "homology-rank-triangle".into(),
    ];
    Ok(if verdict.ok { Outcome::Pass(report) } else { Outcome::Fail(report) })
}

fn cmd_surgery_ranks(n: i64, base_arg: &str) -> Result<Outcome, CliError> {
    let parts: Result<Vec<usize>, _> =
        base_arg.split(',').map(|p| p.trim().parse::<usize>()).collect();
    let dims = parts.map_err(|_| {
        CliError::Validation(format!("base `{base_arg}` must be eight comma-separated naturals"))
    })?;
    if dims.len() != 8 {
        return Err(CliError::Validation(format!(
            "base must have exactly 8 entries, got {}",
            dims.len()
        )));
    }
    let base = GradedDims::new(dims);
    let out = surgery_ranks(n, &base)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let mut report = RunReport::new("surgery-ranks");
    let param = format!("n={n};base={base_arg}");
    report.input(&param, param.as_bytes());
    report.line(format!("base (degrees 0..7): {:?}", base.dims()));
    report.line(format!("n = {n}"));
    let mut provenance = Vec::new();
    for d in 0..8i64 {
        let terms = surgery_rank_terms(n, d).expect("n is nonzero");
        let rendered: Vec<String> = terms.iter().map(|t| format!("base({t})")).collect();
        report.line(format!("  out({d}) = {} = {}", rendered.join(" + "), out.dim(d)));
        provenance.push(json!({ "degree": d, "terms": terms, "value": out.dim(d) }));
    }
    report.line(format!(
        "result: {:?}  (total {} = |{n}| x {})",
        out.dims(),
        out.total(),
        base.total()
    ));
    report.results = json!({
        "n": n,
        "base": base.dims(),
        "result": out.dims(),
        "total": out.total(),
        "provenance": provenance,
    });
    report.citations = vec!["direct-sum-shift-decomposition".into()];
    Ok(Outcome::Pass(report))
}

fn cmd_alexander() -> Result<Outcome, CliError> {
    let solve = cosmetic_solve();
    let mut report = RunReport::new("alexander");
    let param = "genus-two-symmetric-template";
    report.input(param, param.as_bytes());
    report.line("template: a t^2 + b t + c + b t^-1 + a t^-2");
    report.line(format!(
        "second derivative at 1: {}a + {}b = 0  =>  b = {}",
        solve.second_derivative_form[0],
        solve.second_derivative_form[1],
        solve.b_of_a.display_in("a")
    ));
    report.line(format!(
        "determinant normalization |value at 1| = 1  =>  c = {} or c = {}",
        solve.c_of_a[0].display_in("a"),
        solve.c_of_a[1].display_in("a")
    ));
    report.line(format!(
        "lifted second derivative at 1: {} and {}  =>  a = 0",
        solve.cover_second_derivative[0].display_in("a"),
        solve.cover_second_derivative[1].display_in("a")
    ));
    let sols: Vec<String> = solve
        .raw_solutions
        .iter()
        .map(|s| format!("(a, b, c) = ({}, {}, {})", s.a, s.b, s.c))
        .collect();
    report.line(format!("solutions: {}", sols.join(", ")));
    report.line(format!(
        "normalized: (a, b, c) = ({}, {}, {}) — the polynomial is 1",
        solve.normalized.a, solve.normalized.b, solve.normalized.c
    ));
    report.results = json!({
        "second_derivative_form": solve.second_derivative_form.to_vec(),
        "b_of_a": solve.b_of_a.display_in("a"),
        "c_of_a": [solve.c_of_a[0].display_in("a"), solve.c_of_a[1].display_in("a")],
        "cover_second_derivative": [
            solve.cover_second_derivative[0].display_in("a"),
            solve.cover_second_derivative[1].display_in("a"),
        ],
        "solutions": solve
            .raw_solutions
            .iter()
            .map(|s| json!({ "a": s.a, "b": s.b, "c": s.c }))
            .collect::<Vec<_>>(),
        "normalized": { "a": solve.normalized.a, "b": solve.normalized.b, "c": solve.normalized.c },
        "polynomial": "1",
    });
    report.citations = vec![
        "second-derivative-vanishing".into(),
        "determinant-normalization".into(),
        "branched-cover-lift".into(),
    ];
    Ok(Outcome::Pass(report))
}

fn cmd_certify(path: &PathBuf) -> Result<Outcome, CliError> {
    let mut report = RunReport::new("certify");
    let bytes = fs::read(path)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    report.input(&path.display().to_string(), &bytes);
    let text = String::from_utf8(bytes)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    let (name, steps) = parse_chain_spec(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    let cert = certify_chain(&steps)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    report.line(format!("certificate: {name}"));
    let mut step_rows = Vec::new();
    for (i, s) in cert.steps.iter().enumerate() {
        let offset = render_offset(&s.offset);
        let conditional = if s.conditional {
            format!("  [CONDITIONAL: missing {}]", s.missing.join(", "))
        } else {
            String::new()
        };
        report.line(format!(
            "  [{}] {}: {} {} {}{}{}",
            i + 1,
            s.label,
            s.target,
            s.relation.symbol(),
            s.source,
            offset,
            conditional,
        ));
        step_rows.push(json!({
            "label": s.label,
            "source": s.source,
            "target": s.target,
            "relation": s.relation.symbol(),
            "offset": format_rat(&s.offset),
            "conditional": s.conditional,
            "missing": s.missing,
            "justification": s.justification,
        }));
        for tag in &s.justification {
            if !report.citations.contains(tag) {
                report.citations.push(tag.clone());
            }
        }
    }
    let first = &cert.steps[0].source;
    let last = &cert.steps[cert.steps.len() - 1].target;
    let relation = if cert.cumulative_strict { Relation::Lt } else { Relation::Le };
    report.line(format!(
        "cumulative: {last} {} {first}{}",
        relation.symbol(),
        render_offset(&cert.cumulative_offset)
    ));
    if cert.cumulative_offset < Rat::from_integer(0.into()) {
        report.line(format!(
            "gap >= {}{}",
            display_rat(&-cert.cumulative_offset.clone()),
            if cert.cumulative_strict { " (strict)" } else { "" }
        ));
    }
    report.line(format!("conditional: {}", if cert.conditional { "yes" } else { "no" }));
    report.line(format!("cyclic: {}", if cert.cyclic { "yes" } else { "no" }));
    report.line(format!(
        "contradiction: {}",
        if cert.contradictory { "YES — the attested chain is impossible" } else { "no" }
    ));
    report.results = json!({
        "name": name,
        "steps": step_rows,
        "cumulative_offset": format_rat(&cert.cumulative_offset),
        "cumulative_strict": cert.cumulative_strict,
        "conditional": cert.conditional,
        "cyclic": cert.cyclic,
        "contradictory": cert.contradictory,
    });
    Ok(Outcome::Pass(report))
}

fn render_offset(r: &Rat) -> String {
    let zero = Rat::from_integer(0.into());
    if *r == zero {
        String::new()
    } else if *r < zero {
        format!(" - {}", display_rat(&-r.clone()))
    } else {
        format!(" + {}", display_rat(r))
    }
}
