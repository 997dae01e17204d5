//! The five commands. Each returns an [`Outcome`]; mathematical failures set
//! `passed = false` and carry their witness in the report.

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use qpalg_core::locality::{
    example_oracle, extract_kth_products, heisenberg_analysis, locality_order, nth_products_agreement, BracketOracle,
    CatalogOracle, Verdict,
};
use qpalg_core::loop_algebra::{
    grading_and_twist, jacobi_window_check, nth_products, reduced_form_comparison, virasoro_from_idempotent,
};
use qpalg_core::qp::{
    compatibility_check, derived_identities, export_json, import_json, verify_axioms, CheckResult, QPAlgebra,
    Sparse, Violation, SCHEMA,
};
use qpalg_core::{Error, Scalar};

use crate::config::{Command, RunConfig, Source};
use crate::{CliError, Outcome};

/// Mode range of the Heisenberg bracket comparison.
pub const HEISENBERG_RANGE: (i64, i64) = (-8, 12);

pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    match config.command {
        Command::Verify => verify(config),
        Command::LoopCheck => loop_check(config),
        Command::Locality => locality(config),
        Command::NthProducts => nth(config),
        Command::Export => export(config),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn envelope(config: &RunConfig, subject: (&str, &str), passed: bool, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(config.command.name()));
    m.insert(subject.0.into(), json!(subject.1));
    m.insert("passed".into(), json!(passed));
    if let Value::Object(body) = body {
        m.extend(body);
    }
    Value::Object(m)
}

fn load(config: &RunConfig) -> Result<(String, QPAlgebra), CliError> {
    match &config.source {
        Source::Catalog(spec) => Ok((spec.to_string(), spec.build_capped(config.max_n)?)),
        Source::Input(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let a = import_json(&text)?;
            let name = a
                .meta()
                .get("spec")
                .and_then(|s| s.as_str())
                .map_or_else(|| path.display().to_string(), String::from);
            Ok((name, a))
        }
        Source::Example { .. } => Err(CliError::Usage("--example is only accepted by `locality`".into())),
    }
}

/// `c·label + …`, or `0`.
pub fn format_sparse(v: &Sparse, labels: &[String]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|(i, c)| if c.is_one() { labels[*i].clone() } else { format!("({c})·{}", labels[*i]) })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn check_line(c: &CheckResult, labels: &[String]) -> String {
    match &c.violation {
        None => format!("  {}: pass", c.name),
        Some(v) => format!(
            "  {}: FAIL ({}) at ({}), residual {}",
            c.name,
            v.clause,
            v.labels.join(", "),
            format_sparse(&v.residual, labels)
        ),
    }
}

fn verify(config: &RunConfig) -> Result<Outcome, CliError> {
    let (name, a) = load(config)?;
    let labels = a.labels();
    let dim = a.dim();
    let axioms = verify_axioms(&a);
    let derived = derived_identities(&a);
    let compat = compatibility_check(&a);
    let passed = axioms.passed() && derived.passed() && compat.passed();
    let mut text = format!("algebra {name}\n");
    let failed: Vec<&str> = axioms.failures().map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        text += &format!("QP1..QP4: pass, dim {dim}\n");
    } else {
        text += &format!("QP1..QP4: fail ({}), dim {dim}\n", failed.join(", "));
    }
    for (title, r) in [("axioms", &axioms), ("derived identities", &derived), ("compatibility", &compat)] {
        text += &format!("{title}: {}\n", if r.passed() { "pass" } else { "FAIL" });
        for c in &r.checks {
            text += &check_line(c, labels);
            text.push('\n');
        }
    }
    let body = json!({
        "dim": dim,
        "axioms": to_value(&axioms),
        "derived_identities": to_value(&derived),
        "compatibility": to_value(&compat),
    });
    Ok(Outcome {
        passed,
        json: envelope(config, ("algebra", &name), passed, body),
        text,
    })
}

fn loop_check(config: &RunConfig) -> Result<Outcome, CliError> {
    let (name, a) = load(config)?;
    let labels = a.labels();
    let w = config.window;
    let jacobi = jacobi_window_check(&a, w);
    let virasoro = virasoro_from_idempotent(&a, a.unit(), w)?;
    let grading = grading_and_twist(&a, w)?;
    let passed = jacobi.passed() && virasoro.is_witt() && grading.passed();
    let mut text = format!("algebra {name}, dim {}, window {w}\n", a.dim());
    text += &match &jacobi.witness {
        Some(wit) if wit.modes.is_some() => format!(
            "Jacobi: FAIL at ({}) modes {:?}, residual {}\n",
            wit.labels.join(", "),
            wit.modes.expect("some"),
            format_sparse(&wit.residual, labels)
        ),
        _ => format!(
            "Jacobi: pass on {} basis triples (holds for all modes: {})\n",
            jacobi.triples,
            if jacobi.holds_for_all_modes { "yes" } else { "no" }
        ),
    };
    text += &match &virasoro.witness {
        None if virasoro.is_witt() => "Virasoro: E = 1 gives [L_n, L_k] = (n-k)L_{n+k}\n".to_string(),
        None => format!("Virasoro: not Witt (omega = {})\n", virasoro.omega),
        Some(v) => format!("Virasoro: FAIL at (n, k) = ({}, {}), residual {}\n", v.n, v.k, v.residual.display(labels)),
    };
    text += &format!("grading: {}\n", grading.verdict);
    for c in &grading.checks {
        text += &check_line(c, labels);
        text.push('\n');
    }
    let body = json!({
        "window": w,
        "jacobi": to_value(&jacobi),
        "virasoro": to_value(&virasoro),
        "grading": to_value(&grading),
    });
    Ok(Outcome {
        passed,
        json: envelope(config, ("algebra", &name), passed, body),
        text,
    })
}

struct PairResult {
    json: Value,
    line: String,
    ok: bool,
}

fn pair(o: &dyn BracketOracle, x: usize, y: usize, nmax: usize, w: i64) -> Result<PairResult, Error> {
    let labels = o.generator_labels();
    let r = locality_order(o, x, y, nmax, w)?;
    let mut json = json!({
        "pair": format!("{},{}", r.x, r.y),
        "verdict": r.label(),
        "order": r.order(),
        "certified": r.certified(),
        "window": w,
        "nmax": nmax,
        "degree_bound": r.degree_bound,
        "witness": r.witness,
    });
    let mut line = match r.verdict {
        Verdict::Local { order, .. } => format!("{} {}: order {order} ({})", r.x, r.y, r.label()),
        Verdict::NotLocal { .. } => match r.witness {
            Some((p, q)) => format!("{} {}: {} (nonzero at p = {p}, q = {q})", r.x, r.y, r.label()),
            None => format!("{} {}: {}", r.x, r.y, r.label()),
        },
    };
    let mut ok = r.order().is_some();
    if ok {
        match extract_kth_products(o, x, y, nmax, w) {
            Ok(t) => {
                json["coset"] = json!(t.coset.to_string());
                json["products"] = t.to_json(&labels)["products"].clone();
            }
            Err(Error::Extraction(m)) => {
                ok = false;
                line += &format!("; extraction failed: {m}");
                json["extraction_error"] = json!(m);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(PairResult { json, line, ok })
}

fn sweep(o: &dyn BracketOracle, nmax: usize, w: i64) -> Result<(Vec<Value>, String, bool), CliError> {
    let n = o.distributions().len();
    let results: Vec<Result<PairResult, Error>> =
        (0..n * n).into_par_iter().map(|xy| pair(o, xy / n, xy % n, nmax, w)).collect();
    let mut pairs = Vec::with_capacity(n * n);
    let mut text = String::new();
    let mut ok = true;
    for r in results {
        let r = r?;
        ok &= r.ok;
        text += &r.line;
        text.push('\n');
        pairs.push(r.json);
    }
    Ok((pairs, text, ok))
}

fn locality(config: &RunConfig) -> Result<Outcome, CliError> {
    let (w, nmax) = (config.window, config.nmax);
    match &config.source {
        Source::Example { name, alpha } => {
            let o = example_oracle(name, alpha.clone())?;
            let (pairs, mut text, mut passed) = sweep(&o, nmax, w)?;
            text = format!("example {name}, window {w}, nmax {nmax}\n{text}");
            let mut body = json!({ "window": w, "nmax": nmax, "pairs": pairs });
            if let Some(alpha) = alpha {
                body["alpha"] = json!(alpha.to_string());
            }
            if name == "heisenberg_5_5" {
                let h = heisenberg_analysis(HEISENBERG_RANGE)?;
                passed &= h.passed();
                let constant = h.lambdas.get(5).cloned().unwrap_or_else(Scalar::zero);
                let (lo, hi) = h.range;
                text += &format!(
                    "[y_n, y_k] = {constant}·C(n,5)·δ_(n+k,4)·c for n, k in [{lo}, {hi}]: {}\n",
                    if h.bracket_mismatch.is_none() { "match" } else { "MISMATCH" }
                );
                let kernel: Vec<String> = h
                    .kernel
                    .iter()
                    .map(|modes| modes.iter().map(|m| format!("y{m}")).collect::<Vec<_>>().join("+"))
                    .collect();
                text += &format!(
                    "kernel of y_n -> n(n-1)x_(n-2): span{{{}}} (central: {})\n",
                    kernel.join(", "),
                    if h.kernel_central { "yes" } else { "no" }
                );
                body["heisenberg"] = to_value(&h);
                body["bracket_constant"] = json!(constant.to_string());
            }
            Ok(Outcome {
                passed,
                json: envelope(config, ("example", name), passed, body),
                text,
            })
        }
        _ => {
            let (name, a) = load(config)?;
            let o = CatalogOracle::new(&a)?;
            let (pairs, text, mut passed) = sweep(&o, nmax, w)?;
            let agreement = nth_products_agreement(&a, w)?;
            passed &= agreement.passed();
            let text = format!(
                "algebra {name}, window {w}, nmax {nmax}\n{text}k-th products vs n-th product table: {} on {} pairs (max order {}, all certified: {})\n",
                if agreement.mismatch.is_none() { "agree" } else { "DISAGREE" },
                agreement.pairs,
                agreement.max_order,
                if agreement.all_certified { "yes" } else { "no" }
            );
            let body = json!({ "window": w, "nmax": nmax, "pairs": pairs, "nth_agreement": to_value(&agreement) });
            Ok(Outcome {
                passed,
                json: envelope(config, ("algebra", &name), passed, body),
                text,
            })
        }
    }
}

fn nth(config: &RunConfig) -> Result<Outcome, CliError> {
    let (name, a) = load(config)?;
    let labels = a.labels();
    let dim = a.dim();
    let table = nth_products(&a);
    let symmetry = table.first_product_symmetry();
    let higher = (2..=3u32)
        .flat_map(|n| (0..dim).flat_map(move |i| (0..dim).map(move |j| (n, i, j))))
        .find_map(|(n, i, j)| {
            let (d, plain) = table.product(n, i, j);
            (!d.is_empty() || !plain.is_empty()).then(|| Violation {
                clause: format!("a({n})b = 0"),
                tuple: vec![i, j],
                labels: vec![labels[i].clone(), labels[j].clone()],
                residual: plain,
            })
        });
    let higher = CheckResult {
        name: "higher products vanish".into(),
        violation: higher,
    };
    let reduced = reduced_form_comparison(&a);
    let passed = symmetry.passed() && higher.passed() && reduced.equal;
    let table_json = table.to_json();
    let entries = table_json["entries"].as_array().map_or(0, |e| e.len());
    let mut text = format!("algebra {name}, dim {dim}: {entries} basis pairs with nonzero products\n");
    text += &check_line(&symmetry, labels);
    text.push('\n');
    text += &check_line(&higher, labels);
    text.push('\n');
    text += &match &reduced.first_difference {
        None => "  same table as the reduced form: yes\n".to_string(),
        Some((i, j, what)) => format!("  same table as the reduced form: NO, first at ({}, {}): {what}\n", labels[*i], labels[*j]),
    };
    let body = json!({
        "dim": dim,
        "table": table_json,
        "checks": [to_value(&symmetry), to_value(&higher)],
        "reduced_form": to_value(&reduced),
    });
    Ok(Outcome {
        passed,
        json: envelope(config, ("algebra", &name), passed, body),
        text,
    })
}

fn export(config: &RunConfig) -> Result<Outcome, CliError> {
    let (name, a) = load(config)?;
    let json: Value = serde_json::from_str(&export_json(&a)).expect("export emits valid JSON");
    let count = |t: &[Sparse]| t.iter().map(Vec::len).sum::<usize>();
    let text = format!(
        "algebra {name}, dim {}\nbasis: {}\n{} product constants, {} bracket constants\n",
        a.dim(),
        a.labels().join(", "),
        count(a.mul_table()),
        count(a.bracket_table())
    );
    Ok(Outcome {
        passed: true,
        json,
        text,
    })
}

