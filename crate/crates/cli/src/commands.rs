use std::collections::BTreeMap;
use std::path::Path;

use parafree_core::bundled::{bundled, BUNDLED};
use parafree_core::certify::{
    border_witness, certify_residual_nilpotence, generate_family_example, Certificate, Verdict,
};
use parafree_core::error::{OrderError, ParseError};
use parafree_core::expr::parse_poly;
use parafree_core::file::PresentationFile;
use parafree_core::gsbases::{check_classical, check_series, complete_classical, normal_words, GsVerdict};
use parafree_core::presentation::Presentation;
use parafree_core::quotients::{dimension_table, gr1_dependence, hopf_h2_graded, DimensionRow};
use parafree_core::resolution::{
    d_matrix, verify_c0_identity, verify_c_equations, verify_complex, verify_ext_steps, verify_homotopy,
    verify_iomega_identities, IdentityCheck, MainExampleAlgebra,
};
use parafree_core::rewrite::RewriteSystem;
use parafree_core::words::{check_admissible, BoundMode};
use parafree_core::{Alphabet, CoefficientField, LeadMode, Poly};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::args::{Cli, Command, Counterexample};
use crate::report::{self, SCHEMA_VERSION};
use crate::CliError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_CAP: i32 = 4;

/// A finished run: the full report, its exit code and a one-line summary.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
    pub summary: String,
}

struct Input {
    source: String,
    sha256: String,
    file: PresentationFile,
}

impl Input {
    fn load(input: &str) -> Result<Self, CliError> {
        let (source, text) = if Path::new(input).is_file() {
            let text = std::fs::read_to_string(input).map_err(|source| CliError::Io { path: input.into(), source })?;
            (input.to_string(), text)
        } else if let Some(b) = bundled(input) {
            (format!("bundled:{}", b.name), b.source.to_string())
        } else {
            return Err(CliError::UnknownInput(input.to_string()));
        };
        let file = PresentationFile::from_json(&text).map_err(|e| CliError::parse(&source, e))?;
        Ok(Input { sha256: hex::encode(Sha256::digest(text.as_bytes())), source, file })
    }

    fn presentation(&self) -> Result<Presentation, CliError> {
        self.file.to_presentation().map_err(|e| CliError::parse(&self.source, e))
    }

    fn json(&self) -> Value {
        json!({ "source": self.source, "sha256": self.sha256 })
    }
}

struct Report {
    command: &'static str,
    input: Option<Value>,
    flags: Value,
    sections: Map<String, Value>,
}

impl Report {
    fn new(command: &'static str, input: Option<&Input>, flags: Value) -> Self {
        Report { command, input: input.map(Input::json), flags, sections: Map::new() }
    }

    fn section(&mut self, key: &str, value: Value) {
        self.sections.insert(key.to_string(), value);
    }

    fn finish(self, status: &str, exit_code: i32, summary: String) -> Outcome {
        let mut out = self.sections;
        out.insert("schema_version".into(), json!(SCHEMA_VERSION));
        out.insert("tool".into(), json!({ "name": "parafree", "version": env!("CARGO_PKG_VERSION") }));
        out.insert("command".into(), json!(self.command));
        out.insert("input".into(), self.input.unwrap_or(Value::Null));
        out.insert("flags".into(), self.flags);
        out.insert("status".into(), json!(status));
        out.insert("exit_code".into(), json!(exit_code));
        Outcome { report: Value::Object(out), exit_code, summary }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::OrderCheck { input, max_length } => order_check(input, *max_length),
        Command::GsCheck { input, trace } => gs_check(input, trace.trace),
        Command::GsComplete { input, trunc, cap } => gs_complete(input, *trunc, cap.max_rules),
        Command::SeriesGsCheck { input, series, trace } => series_gs_check(input, series.weight_bound, trace.trace),
        Command::Certify { input, series, trace } => certify(input, series.weight_bound, trace.trace),
        Command::QuotientDims { input, trunc, csv, free_rank, cap } => {
            quotient_dims(input, *trunc, csv.as_deref(), *free_rank, cap.max_rules)
        }
        Command::H2 { input, max_weight } => h2(input, *max_weight),
        Command::Example { name, list, series, trunc, slice_length } => match (name, list) {
            (_, true) | (None, false) => Ok(list_examples()),
            (Some(name), false) => example(name, series.weight_bound, *trunc, *slice_length),
        },
        Command::Counterexample { which } => Ok(match which {
            Counterexample::One => counterexample_one(),
            Counterexample::Two => counterexample_two()?,
        }),
    }
}

fn order_check(input: &str, max_length: usize) -> Result<Outcome, CliError> {
    let input = Input::load(input)?;
    let p = input.presentation()?;
    let a = p.alphabet();
    let mut report = Report::new("order-check", Some(&input), json!({ "max_length": max_length }));
    let classical = check_admissible(p.order_max(), a, max_length);
    let series = check_admissible(p.order_min(), a, max_length);
    let n_order = p.order_min().is_n_order();
    let mut leading = Vec::new();
    let mut all_match = true;
    for (i, r) in p.relations().iter().enumerate() {
        let (mt_max, _) = r.max_term(p.order_max()).map_err(parafree_core::Error::from)?;
        let (mt_min, _) = r.min_term(p.order_min()).map_err(parafree_core::Error::from)?;
        all_match &= mt_max == mt_min;
        leading.push(json!({
            "relation": i,
            "max_term": a.render(&mt_max),
            "min_term": a.render(&mt_min),
            "matches": mt_max == mt_min,
        }));
    }
    let passed = classical.passed && series.passed && n_order && all_match;
    report.section("classical", serde_json::to_value(&classical).expect("serializable"));
    report.section("series", serde_json::to_value(&series).expect("serializable"));
    report.section("series_is_n_order", json!(n_order));
    report.section("leading_terms", json!(leading));
    let summary = format!(
        "order-check: classical {}, series {}{}, leading terms {}",
        if classical.passed { "admissible" } else { "NOT admissible" },
        if series.passed { "admissible" } else { "NOT admissible" },
        if n_order { "" } else { " (not an N-order)" },
        if all_match { "match" } else { "differ" },
    );
    Ok(report.finish(if passed { "passed" } else { "failed" }, if passed { EXIT_OK } else { EXIT_REFUTED }, summary))
}

fn gs_check(input: &str, trace: bool) -> Result<Outcome, CliError> {
    let input = Input::load(input)?;
    let p = input.presentation()?;
    let sys = RewriteSystem::new(p.relations().to_vec(), p.order_max().clone(), LeadMode::Max)?;
    let check = check_classical(&sys, true);
    let mut report = Report::new("gs-check", Some(&input), json!({ "trace": trace }));
    report.section("gs", report::gs_check(&check, &sys, p.alphabet(), trace));
    let cofactors = report::all_cofactors_verified(&check, &sys);
    let (status, code) = if !cofactors {
        ("cofactor-mismatch", EXIT_REFUTED)
    } else if check.is_gs() {
        ("gs", EXIT_OK)
    } else {
        ("not-gs", EXIT_REFUTED)
    };
    let summary = format!(
        "gs-check: {} compositions, {}",
        check.outcomes.len(),
        if check.is_gs() { "all reduce to 0" } else { "some do not reduce to 0" }
    );
    Ok(report.finish(status, code, summary))
}

fn series_gs_check(input: &str, weight_bound: u64, trace: bool) -> Result<Outcome, CliError> {
    let input = Input::load(input)?;
    let p = input.presentation()?;
    let sys = RewriteSystem::new(p.relations().to_vec(), p.order_min().clone(), LeadMode::Min)?;
    let check = check_series(&sys, weight_bound, true)?;
    let mut report =
        Report::new("series-gs-check", Some(&input), json!({ "weight_bound": weight_bound, "trace": trace }));
    report.section("gs", report::gs_check(&check, &sys, p.alphabet(), trace));
    let cofactors = report::all_cofactors_verified(&check, &sys);
    let (status, code) = match check.verdict {
        _ if !cofactors => ("cofactor-mismatch", EXIT_REFUTED),
        GsVerdict::GroebnerShirshov => ("gs", EXIT_OK),
        GsVerdict::NotGroebnerShirshov { .. } => ("not-gs", EXIT_REFUTED),
        GsVerdict::GroebnerShirshovUpToBound { .. } => ("gs-up-to-bound", EXIT_INCONCLUSIVE),
    };
    let summary = format!("series-gs-check: {} compositions, {status}", check.outcomes.len());
    Ok(report.finish(status, code, summary))
}

fn gs_complete(input: &str, trunc: usize, max_rules: usize) -> Result<Outcome, CliError> {
    let input = Input::load(input)?;
    let p = input.presentation()?;
    let a = p.alphabet();
    let completion = complete_classical(p.relations(), a, p.order_max(), trunc, max_rules)?;
    let mut by_length: BTreeMap<usize, usize> = (0..trunc).map(|k| (k, 0)).collect();
    for w in &completion.normal_words {
        *by_length.entry(w.len()).or_default() += 1;
    }
    let mut report = Report::new("gs-complete", Some(&input), json!({ "trunc": trunc, "max_rules": max_rules }));
    report.section(
        "completion",
        json!({
            "order": p.order_max().describe(a),
            "rules": completion.rules.iter().map(|r| report::poly(r, a, p.order_max())).collect::<Vec<_>>(),
            "normal_words": report::words(&completion.normal_words, a),
            "normal_words_by_length": by_length.values().collect::<Vec<_>>(),
            "quotient_dim": completion.normal_words.len(),
        }),
    );
    let summary = format!(
        "gs-complete: {} rules modulo words of length {trunc}, quotient dimension {}",
        completion.rules.len(),
        completion.normal_words.len()
    );
    Ok(report.finish("completed", EXIT_OK, summary))
}

fn verdict_status(c: &Certificate) -> (&'static str, i32) {
    match c.verdict {
        Verdict::CertifiedResiduallyNilpotent => ("certified", EXIT_OK),
        Verdict::RefutedHypothesis { .. } => ("refuted-hypothesis", EXIT_REFUTED),
        Verdict::Inconclusive { .. } => ("inconclusive", EXIT_INCONCLUSIVE),
    }
}

fn cofactors_ok(c: &Certificate) -> bool {
    report::all_cofactors_verified(&c.classical, &c.classical_system)
        && report::all_cofactors_verified(&c.series, &c.series_system)
}

fn certify(input: &str, weight_bound: u64, trace: bool) -> Result<Outcome, CliError> {
    let input = Input::load(input)?;
    let p = input.presentation()?;
    let c = certify_residual_nilpotence(&p, weight_bound, true)?;
    let mut report = Report::new("certify", Some(&input), json!({ "weight_bound": weight_bound, "trace": trace }));
    report.section("certificate", report::certificate(&c, p.alphabet(), trace));
    let (status, code) = if cofactors_ok(&c) { verdict_status(&c) } else { ("cofactor-mismatch", EXIT_REFUTED) };
    Ok(report.finish(status, code, format!("certify: {status}")))
}

fn expected_dims(rank: usize, n: usize) -> (usize, Vec<usize>) {
    let gr: Vec<usize> = (0..n as u32).map(|k| rank.pow(k)).collect();
    (gr.iter().sum(), gr)
}

/// Table rows plus, when a free rank is given, the comparison with the free
/// algebra of that rank.
fn dims_section(rows: &[DimensionRow], free_rank: Option<usize>) -> (Value, bool) {
    let mut ok = true;
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            let mut v = json!({ "n": r.n, "dim": r.dim, "filtration_dims": r.filtration_dims });
            if let Some(rank) = free_rank {
                let (dim, gr) = expected_dims(rank, r.n);
                let matches = dim == r.dim && gr == r.filtration_dims;
                ok &= matches;
                v["free_dim"] = json!(dim);
                v["matches_free"] = json!(matches);
            }
            v
        })
        .collect();
    (json!({ "free_rank": free_rank, "rows": rows, "paraequivalent": free_rank.map(|_| ok) }), ok)
}

fn quotient_dims(
    input: &str,
    trunc: usize,
    csv_path: Option<&Path>,
    free_rank: Option<usize>,
    max_rules: usize,
) -> Result<Outcome, CliError> {
    let input = Input::load(input)?;
    let p = input.presentation()?;
    let rank = free_rank.or(p.parafree_rank());
    let rows = dimension_table(&p, trunc, max_rules)?;
    if let Some(path) = csv_path {
        write_csv(path, &rows)?;
    }
    let mut report = Report::new(
        "quotient-dims",
        Some(&input),
        json!({
            "trunc": trunc,
            "free_rank": free_rank,
            "max_rules": max_rules,
            "csv": csv_path.map(|p| p.display().to_string()),
        }),
    );
    let (section, ok) = dims_section(&rows, rank);
    report.section("dimensions", section);
    let dims: Vec<String> = rows.iter().map(|r| r.dim.to_string()).collect();
    let summary = format!("quotient-dims: dim A/I^n for n = 1..{trunc}: {}", dims.join(", "));
    let (status, code) = match (rank, ok) {
        (None, _) => ("computed", EXIT_OK),
        (Some(_), true) => ("matches-free", EXIT_OK),
        (Some(_), false) => ("differs-from-free", EXIT_REFUTED),
    };
    Ok(report.finish(status, code, summary))
}

fn write_csv(path: &Path, rows: &[DimensionRow]) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Csv { path: path.display().to_string(), source: e };
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(["n", "dim", "k", "gr_dim"]).map_err(io)?;
    for r in rows {
        for (k, g) in r.filtration_dims.iter().enumerate() {
            w.write_record([r.n.to_string(), r.dim.to_string(), k.to_string(), g.to_string()]).map_err(io)?;
        }
    }
    w.flush().map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn h2(input: &str, max_weight: u64) -> Result<Outcome, CliError> {
    let input = Input::load(input)?;
    let p = input.presentation()?;
    let values = (1..=max_weight).map(|d| hopf_h2_graded(&p, d)).collect::<Result<Vec<_>, _>>()?;
    let mut report = Report::new("h2", Some(&input), json!({ "max_weight": max_weight }));
    report.section(
        "h2",
        json!((1..=max_weight).zip(&values).map(|(d, v)| json!({ "weight": d, "dim": v })).collect::<Vec<_>>()),
    );
    let rendered: Vec<String> = values.iter().map(usize::to_string).collect();
    Ok(report.finish("computed", EXIT_OK, format!("h2: dims by weight 1..{max_weight}: {}", rendered.join(", "))))
}

fn list_examples() -> Outcome {
    let mut report = Report::new("example", None, json!({ "list": true }));
    report.section(
        "examples",
        serde_json::to_value(
            BUNDLED
                .iter()
                .map(|b| json!({ "name": b.name, "expected": b.expected, "summary": b.summary }))
                .collect::<Vec<_>>(),
        )
        .expect("serializable"),
    );
    let names: Vec<&str> = BUNDLED.iter().map(|b| b.name).collect();
    report.finish("listed", EXIT_OK, format!("examples: {}", names.join(", ")))
}

fn example(name: &str, weight_bound: u64, trunc: usize, slice_length: usize) -> Result<Outcome, CliError> {
    let b = bundled(name).ok_or_else(|| CliError::UnknownInput(name.to_string()))?;
    match b.expected {
        "unsupported-order" => return Ok(counterexample_one()),
        "gr1-rank-1" => return counterexample_two(),
        _ => {}
    }
    if slice_length < 2 {
        return Err(CliError::Usage("--slice-length must be at least 2".into()));
    }
    let input = Input::load(name)?;
    let p = input.presentation()?;
    let mut report = Report::new(
        "example",
        Some(&input),
        json!({ "name": name, "weight_bound": weight_bound, "trunc": trunc, "slice_length": slice_length }),
    );
    report.section("expected", json!(b.expected));
    let c = certify_residual_nilpotence(&p, weight_bound, true)?;
    report.section("certificate", report::certificate(&c, p.alphabet(), false));
    let (mut status, mut code) = verdict_status(&c);
    let mut failed = Vec::new();
    if !cofactors_ok(&c) {
        failed.push("cofactors");
    }
    if status != b.expected {
        failed.push("certificate");
    }

    if let Some(rank) = p.parafree_rank() {
        let rows = dimension_table(&p, trunc, parafree_core::quotients::DEFAULT_MAX_ROWS)?;
        let (section, ok) = dims_section(&rows, Some(rank));
        report.section("dimensions", section);
        if !ok {
            failed.push("paraequivalence");
        }
    }
    if p.is_weight_homogeneous() {
        let h2 = (1..=4).map(|d| hopf_h2_graded(&p, d)).collect::<Result<Vec<_>, _>>()?;
        report.section("h2_by_weight", json!(h2));
    }
    match name {
        "main" => {
            let leads = c.classical_system.leads().to_vec();
            let beta = normal_words(&leads, p.alphabet(), 3, BoundMode::ByLength)?;
            let mut counts = vec![0usize; 4];
            for w in &beta {
                counts[w.len()] += 1;
            }
            report.section("normal_word_counts", json!(counts));
            let (section, ok) = resolution_section(slice_length)?;
            report.section("resolution", section);
            if !ok {
                failed.push("resolution");
            }
        }
        "family" => {
            let (section, ok) = family_section(&input.file, weight_bound)?;
            report.section("generator", section);
            if !ok {
                failed.push("generator");
            }
        }
        _ => {}
    }
    if !failed.is_empty() {
        report.section("failed_checks", json!(failed));
        if code == EXIT_OK {
            code = EXIT_REFUTED;
        }
        status = "failed";
    }
    let summary = if failed.is_empty() {
        format!("example {name}: {status}, all checks passed")
    } else {
        format!("example {name}: failed checks: {}", failed.join(", "))
    };
    Ok(report.finish(status, code, summary))
}

fn identity_checks(checks: &[IdentityCheck]) -> (Value, bool) {
    (serde_json::to_value(checks).expect("serializable"), checks.iter().all(|c| c.passed))
}

fn resolution_section(slice_length: usize) -> Result<(Value, bool), CliError> {
    let alg = MainExampleAlgebra::new()?;
    let c0 = verify_c0_identity(&alg, slice_length);
    let (c_eqs, c_ok) = identity_checks(&verify_c_equations(&alg, slice_length));
    let (complex, complex_ok) = identity_checks(&verify_complex(&alg, 6));
    let (homotopy, homotopy_ok) = identity_checks(&verify_homotopy(&alg, 5, slice_length - 1));
    let ext = verify_ext_steps(&alg, slice_length - 1, slice_length);
    let iomega = verify_iomega_identities(&alg, 10, 5);
    let matrices: BTreeMap<String, Vec<Vec<String>>> =
        (1..=3).map(|i| (format!("d{i}"), d_matrix(&alg, i).render(&alg))).collect();
    let passed = c0.passed && c_ok && complex_ok && homotopy_ok && ext.passed() && iomega.passed;
    Ok((
        json!({
            "differentials": matrices,
            "c0_identity": c0,
            "c_identities": c_eqs,
            "complex": complex,
            "homotopy": homotopy,
            "ext_steps": ext,
            "ext_steps_passed": ext.passed(),
            "iomega": iomega,
            "passed": passed,
        }),
        passed,
    ))
}

/// Regenerates the family instance recorded in the file's metadata and
/// checks that a self-overlapping `u` is rejected.
fn family_section(file: &PresentationFile, weight_bound: u64) -> Result<(Value, bool), CliError> {
    let meta = file.meta.get("family").ok_or_else(|| CliError::Usage("family example lacks `meta.family`".into()))?;
    let field = |k: &str| meta.get(k).cloned().unwrap_or(Value::Null);
    let (n, m) = (field("n").as_u64().unwrap_or(0) as usize, field("m").as_u64().unwrap_or(0) as usize);
    let (u, phi) = (field("u").as_str().unwrap_or("").to_string(), field("phi").as_str().unwrap_or("").to_string());
    let generated = generate_family_example(n, m, &u, &phi, None, weight_bound)?;
    let certified = generated.certificate.verdict == Verdict::CertifiedResiduallyNilpotent;

    let bad_u = "x1*x2*x1";
    let plain = Alphabet::unweighted(["x1", "x2"])?;
    let bad_word = parse_poly(bad_u, &plain, CoefficientField::Rational)?;
    let witness = bad_word.terms().next().and_then(|(w, _)| border_witness(w)).map(|w| plain.render(&w));
    let rejection = match generate_family_example(n, m, bad_u, &phi, None, weight_bound) {
        Ok(_) => None,
        Err(e) => Some(e.to_string()),
    };
    let ok = certified && rejection.is_some() && witness.is_some();
    Ok((
        json!({
            "n": n,
            "m": m,
            "u": u,
            "phi": phi,
            "relations": generated.presentation.render_relations(),
            "verdict": generated.certificate.verdict,
            "rejected": { "u": bad_u, "witness": witness, "error": rejection },
            "passed": ok,
        }),
        ok,
    ))
}

pub fn counterexample_one() -> Outcome {
    let b = bundled("counterexample-one").expect("bundled");
    let mut report = Report::new("counterexample", None, json!({ "which": "one" }));
    let (status, code, message) = match b.presentation() {
        Err(ParseError::Order(e @ OrderError::UnsupportedKind(_))) => ("rejected-as-expected", EXIT_OK, e.to_string()),
        Err(e) => ("unexpected-error", EXIT_REFUTED, e.to_string()),
        Ok(_) => ("accepted", EXIT_REFUTED, "order was accepted".to_string()),
    };
    let a = Alphabet::unweighted(["x1", "x2", "x3", "x4"]).expect("valid names");
    let shifted: Vec<Value> = (1..=4u32)
        .map(|n| {
            let s = parse_poly(&format!("x2^{n}*x3^{n}*x4^{n} - x1"), &a, CoefficientField::Rational)
                .expect("valid expression");
            let sum = Poly::letter(CoefficientField::Rational, 0).add(&s);
            json!({ "n": n, "x1_plus_s_n": sum.render(&a, None), "min_length": sum.min_length() })
        })
        .collect();
    report.section("file", json!(b.file().meta));
    report.section("rejection", json!(message));
    report.section("x1_plus_s_n", json!(shifted));
    report.finish(status, code, format!("counterexample one: {status}: {message}"))
}

pub fn counterexample_two() -> Result<Outcome, CliError> {
    let b = bundled("counterexample-two").expect("bundled");
    let p = b.presentation().map_err(|e| CliError::parse(b.name, e))?;
    let a = p.alphabet();
    let elements = ["x3", "x4"];
    let polys = elements.iter().map(|s| parse_poly(s, a, p.field())).collect::<Result<Vec<_>, _>>()?;
    let rank = gr1_dependence(&p, &polys)?;
    let sys = RewriteSystem::new(p.relations().to_vec(), p.order_max().clone(), LeadMode::Max)?;
    let length_one: Vec<String> = p
        .alphabet()
        .letters()
        .iter()
        .map(|l| l.name.clone())
        .filter(|n| sys.is_normal_word(&a.word(n).expect("letter")))
        .collect();
    let mut report = Report::new("counterexample", None, json!({ "which": "two" }));
    report.section("relations", json!(p.render_relations()));
    report.section("normal_words_of_length_1", json!(length_one));
    report.section("elements", json!(elements));
    report.section("gr1_rank", json!(rank));
    let (status, code) = if rank == 1 { ("dependent-as-expected", EXIT_OK) } else { ("unexpected-rank", EXIT_REFUTED) };
    Ok(report.finish(status, code, format!("counterexample two: rank of {{x3, x4}} in I/I^2 is {rank}")))
}
