//! Command implementations. Each returns a [`Output`] holding the JSON report
//! and the plain-text rendering; `main` decides which one to print.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use leafsub_core::asymptotics::{
    bits_for_digits, cdh_recurrence, find_h, floor_formula, iterated_log, kappa_decimal,
    lemma1_log_identity, prop7_bound_check, round_sig,
};
use leafsub_core::extremal::{
    generate_up_to, series_reduced_count, verify_theorem1, DEFAULT_CORPUS_CAP,
};
use leafsub_core::family::{count_family, count_tree, CountOutcome, Family, Method};
use leafsub_core::formulas::{complete_dary_count, complete_dary_sequence};
use leafsub_core::{brute_force_set, induced_set, RootedTree};
use rug::Float;
use serde_json::{json, Value};
use thiserror::Error;

use crate::newick::{parse_newick, parse_newick_many, to_newick, NewickError};
use crate::report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Newick { path: PathBuf, source: NewickError },
    #[error(transparent)]
    Core(#[from] leafsub_core::Error),
}

pub type CliResult<T> = Result<T, CliError>;

/// What a command produced.
#[derive(Debug, Clone)]
pub struct Output {
    pub report: Report,
    pub text: String,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_trees(path: &Path) -> CliResult<Vec<RootedTree>> {
    parse_newick_many(&read(path)?).map_err(|source| CliError::Newick {
        path: path.to_path_buf(),
        source,
    })
}

fn read_tree(path: &Path) -> CliResult<RootedTree> {
    parse_newick(&read(path)?).map_err(|source| CliError::Newick {
        path: path.to_path_buf(),
        source,
    })
}

/// Where `count` takes its host trees from.
#[derive(Debug, Clone)]
pub enum CountSource {
    Newick(PathBuf),
    Family(Family),
}

fn outcome_json(outcome: &CountOutcome) -> Value {
    json!({
        "family": outcome.family.map(|f| f.to_string()),
        "leaves": outcome.leaf_count,
        "value": outcome.value().to_string(),
        "routes": outcome.routes.iter().map(|(m, v)| json!({
            "method": m.name(),
            "value": v.to_string(),
        })).collect::<Vec<_>>(),
    })
}

fn routes_line(outcome: &CountOutcome) -> String {
    let parts: Vec<String> = outcome
        .routes
        .iter()
        .map(|(m, v)| format!("{}={v}", m.name()))
        .collect();
    let verdict = if outcome.agree() { "agree" } else { "DISAGREE" };
    format!("routes: {} ({verdict})", parts.join(", "))
}

pub fn count(source: &CountSource, method: Method) -> CliResult<Output> {
    let (inputs, entries) = match source {
        CountSource::Family(f) => (
            json!({"family": f.to_string(), "method": method.name()}),
            vec![(None, count_family(*f, method)?)],
        ),
        CountSource::Newick(path) => {
            let trees = read_trees(path)?;
            let mut entries = Vec::new();
            for t in &trees {
                entries.push((Some(to_newick(t, true)), count_tree(t, method)?));
            }
            (
                json!({"newick": path.display().to_string(), "method": method.name()}),
                entries,
            )
        }
    };
    let mut report = Report::new("count", inputs);
    let mut text = String::new();
    let many = entries.len() > 1;
    let mut results = Vec::new();
    for (i, (tree, outcome)) in entries.iter().enumerate() {
        if many {
            writeln!(
                text,
                "{}\t{}",
                tree.as_deref().unwrap_or(""),
                outcome.value()
            )
            .unwrap();
        } else {
            writeln!(text, "{}", outcome.value()).unwrap();
        }
        if outcome.routes.len() > 1 {
            writeln!(text, "{}", routes_line(outcome)).unwrap();
            let first = outcome.value().to_string();
            for (m, v) in &outcome.routes[1..] {
                report.check(
                    format!(
                        "tree {i}: {} agrees with {}",
                        m.name(),
                        outcome.routes[0].0.name()
                    ),
                    *v == *outcome.value(),
                    first.clone(),
                    v.to_string(),
                );
            }
        }
        let mut entry = outcome_json(outcome);
        entry["tree"] = json!(tree);
        results.push(entry);
    }
    report.results = json!({ "counts": results });
    Ok(Output { report, text })
}

pub fn enumerate(path: &Path, emit_newick: bool) -> CliResult<Output> {
    let t = read_tree(path)?;
    let set = induced_set(&t)?;
    let mut text = String::new();
    let mut classes = Vec::new();
    for code in set.iter() {
        let newick = to_newick(&RootedTree::from_code(code), true);
        if emit_newick {
            writeln!(text, "{newick}").unwrap();
        } else {
            writeln!(text, "{}\t{}\t{}", code.leaf_count(), code.height(), code).unwrap();
        }
        classes.push(json!({
            "leaves": code.leaf_count(),
            "height": code.height(),
            "code": code.as_str(),
            "newick": newick,
        }));
    }
    let mut report = Report::new(
        "enumerate",
        json!({"newick": path.display().to_string(), "emit_newick": emit_newick}),
    );
    report.check(
        "contains the host class",
        set.contains(set.host_code()),
        true,
        set.contains(set.host_code()),
    );
    report.results = json!({
        "host": set.host_code().as_str(),
        "count": set.len(),
        "classes": classes,
    });
    Ok(Output { report, text })
}

fn sci(x: &Float) -> String {
    round_sig(x, 3).unwrap_or_else(|| x.to_string())
}

pub fn kappa(d: u32, digits: u32) -> CliResult<Output> {
    if d < 2 {
        return Err(usage("--d must be at least 2"));
    }
    if digits == 0 {
        return Err(usage("--digits must be positive"));
    }
    let (r, value) = kappa_decimal(d, digits)?;
    let k_sum = r
        .k_sum
        .to_sig_digits(digits)
        .unwrap_or_else(|| round_sig(r.k_sum.mid(), digits).unwrap());
    let tail = sci(&r.tail_bound);
    let mut report = Report::new("kappa", json!({"d": d, "digits": digits}));
    let one = Float::with_val(64, 1);
    report.check(
        "kappa > 1",
        r.kappa.certainly_gt(&one),
        "> 1",
        value.clone(),
    );
    let limit = Float::with_val(64, Float::parse(format!("1e-{}", digits + 5)).unwrap());
    report.check(
        "tail bound below 10^-(digits+5)",
        r.tail_bound < limit,
        format!("< 1e-{}", digits + 5),
        tail.clone(),
    );
    report.results = json!({
        "kappa": value,
        "K": k_sum,
        "terms_used": r.terms_used,
        "tail_bound": tail,
        "bits": r.bits,
    });
    let text = format!(
        "{value}\nK = {k_sum}\nterms = {}\ntail_bound = {tail}\n",
        r.terms_used
    );
    Ok(Output { report, text })
}

pub fn table_kappa(d_max: u32, digits: u32) -> CliResult<Output> {
    if d_max < 2 {
        return Err(usage("--d-max must be at least 2"));
    }
    let one = Float::with_val(64, 1);
    let mut report = Report::new(
        "table",
        json!({"kind": "kappa", "d_max": d_max, "digits": digits}),
    );
    let mut text = String::from("d\tkappa(d)\n");
    let mut rows = Vec::new();
    for d in 2..=d_max {
        let (r, value) = kappa_decimal(d, digits)?;
        report.check(
            format!("kappa({d}) > 1"),
            r.kappa.certainly_gt(&one),
            "> 1",
            value.clone(),
        );
        writeln!(text, "{d}\t{value}").unwrap();
        rows.push(json!({"d": d, "kappa": value}));
    }
    report.results = json!({ "rows": rows });
    Ok(Output { report, text })
}

pub fn table_complete(d: u32, h_max: u32) -> CliResult<Output> {
    let seq = complete_dary_sequence(d, h_max)?;
    let mut report = Report::new("table", json!({"kind": "complete", "d": d, "h_max": h_max}));
    let increasing = seq.windows(2).all(|w| w[1] > w[0]);
    report.check("strictly increasing", increasing, true, increasing);
    let mut text = format!("h\tN(C^{d}_h)\n");
    let mut rows = Vec::new();
    for (h, n) in seq.iter().enumerate() {
        writeln!(text, "{h}\t{n}").unwrap();
        rows.push(json!({"h": h, "count": n.to_string()}));
    }
    report.results = json!({ "rows": rows });
    Ok(Output { report, text })
}

pub fn floor(d: u32, h: u32) -> CliResult<Output> {
    let eval = floor_formula(d, h)?;
    let exact = complete_dary_count(d, h)?;
    let offset = eval.offset_from(&exact);
    let matched = eval.value == exact;
    let mut report = Report::new("floor", json!({"d": d, "h": h}));
    report.check(
        "floor formula equals the recursion",
        matched,
        exact.to_string(),
        eval.value.to_string(),
    );
    let offset_text = round_sig(offset.mid(), 6).unwrap();
    report.results = json!({
        "floor": eval.value.to_string(),
        "exact": exact.to_string(),
        "match": matched,
        "offset": offset_text,
        "bits": eval.bits,
    });
    let text = format!(
        "floor = {}\nexact = {exact}\nmatch = {matched}\nx - N = {offset_text}\n",
        eval.value
    );
    Ok(Output { report, text })
}

/// The verification suites behind `verify`.
#[derive(Debug, Clone, Copy)]
pub enum Suite {
    Theorem1 { n_max: usize },
    Prop7 { d_max: u32 },
    Prop8 { d: u32, h_max: u32 },
    Lemma1 { d: u32, n: u32 },
    Oracle { n_max: usize },
}

pub fn verify(suite: Suite) -> CliResult<Output> {
    let mut text = String::new();
    let report = match suite {
        Suite::Theorem1 { n_max } => {
            if !(5..=DEFAULT_CORPUS_CAP).contains(&n_max) {
                return Err(usage(format!(
                    "--n-max must be in 5..={DEFAULT_CORPUS_CAP}"
                )));
            }
            let inputs = json!({"suite": "theorem1", "n_max": n_max});
            let mut report = Report::new("verify", inputs);
            let mut rows = Vec::new();
            for n in 5..=n_max {
                let r = verify_theorem1(n)?;
                let expected_size = series_reduced_count(n);
                report.check(
                    format!("n={n}: corpus size"),
                    r.corpus_size as u128 == expected_size,
                    expected_size.to_string(),
                    r.corpus_size.to_string(),
                );
                report.check(
                    format!("n={n}: minimum"),
                    r.min == n as u64,
                    n.to_string(),
                    r.min.to_string(),
                );
                report.check(
                    format!("n={n}: minimizers are the star and the binary caterpillar"),
                    r.pass,
                    2,
                    r.minimizers.len(),
                );
                writeln!(
                    text,
                    "n={n}: corpus={} min={} minimizers={} {}",
                    r.corpus_size,
                    r.min,
                    r.minimizers.len(),
                    if r.pass { "pass" } else { "FAIL" }
                )
                .unwrap();
                let histogram: Vec<Value> = r
                    .histogram
                    .iter()
                    .map(|(k, v)| json!({"count": k.to_string(), "trees": v}))
                    .collect();
                rows.push(json!({
                    "n": n,
                    "corpus_size": r.corpus_size,
                    "min": r.min.to_string(),
                    "minimizers": r.minimizers.iter().map(|c| c.as_str()).collect::<Vec<_>>(),
                    "histogram": histogram,
                }));
            }
            report.results = json!({ "rows": rows });
            report
        }
        Suite::Prop7 { d_max } => {
            if d_max < 2 {
                return Err(usage("--d-max must be at least 2"));
            }
            let inputs = json!({"suite": "prop7", "d_max": d_max});
            let mut report = Report::new("verify", inputs);
            let r = prop7_bound_check(d_max)?;
            let mut rows = Vec::new();
            for row in &r.rows {
                let kappa = row
                    .kappa
                    .to_sig_digits(30)
                    .unwrap_or_else(|| row.kappa.to_string());
                let bound = row
                    .bound
                    .to_sig_digits(30)
                    .unwrap_or_else(|| row.bound.to_string());
                report.check(
                    format!("d={}: 1 < kappa", row.d),
                    row.above_one,
                    "> 1",
                    kappa.clone(),
                );
                report.check(
                    format!("d={}: kappa <= d^(1/(d-1))", row.d),
                    row.below_bound,
                    format!("<= {bound}"),
                    kappa.clone(),
                );
                writeln!(
                    text,
                    "d={}: kappa={} bound={} margins=({:.3e}, {:.3e}) {}",
                    row.d,
                    kappa,
                    bound,
                    row.lower_margin,
                    row.upper_margin,
                    if row.pass() { "pass" } else { "FAIL" }
                )
                .unwrap();
                rows.push(json!({
                    "d": row.d,
                    "kappa": kappa,
                    "bound": bound,
                    "lower_margin": row.lower_margin,
                    "upper_margin": row.upper_margin,
                }));
            }
            report.results = json!({
                "rows": rows,
                "decreasing_from_three": r.decreasing_from_three,
            });
            report
        }
        Suite::Prop8 { d, h_max } => {
            let inputs = json!({"suite": "prop8", "d": d, "h_max": h_max});
            let mut report = Report::new("verify", inputs);
            let search = find_h(d, h_max)?;
            let mut rows = Vec::new();
            for row in &search.rows {
                let floor = match &row.floor {
                    Ok(v) => v.to_string(),
                    Err(e) => format!("error: {e}"),
                };
                let offset = row.offset.map(|o| format!("{o:.6}"));
                writeln!(
                    text,
                    "h={}: floor={} exact={} x-N={} {}",
                    row.h,
                    floor,
                    row.exact,
                    offset.as_deref().unwrap_or("-"),
                    if row.matches() { "match" } else { "mismatch" }
                )
                .unwrap();
                rows.push(json!({
                    "h": row.h,
                    "floor": floor,
                    "exact": row.exact.to_string(),
                    "match": row.matches(),
                    "offset": offset,
                }));
            }
            report.check(
                "floor formula holds from some H <= h_max",
                search.threshold.is_some(),
                format!("H <= {h_max}"),
                search.threshold.map_or(Value::Null, |h| json!(h)),
            );
            match search.threshold {
                Some(h) => writeln!(text, "H = {h}").unwrap(),
                None => writeln!(
                    text,
                    "no H <= {h_max}; mismatches at {:?}",
                    search.mismatches()
                )
                .unwrap(),
            }
            report.results = json!({
                "threshold": search.threshold,
                "mismatches": search.mismatches(),
                "rows": rows,
            });
            report
        }
        Suite::Lemma1 { d, n } => {
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            let inputs = json!({"suite": "lemma1", "d": d, "n": n});
            let mut report = Report::new("verify", inputs);
            let rec = cdh_recurrence(d)?;
            let bits = bits_for_digits(40);
            let tolerance = 1e-20;
            let mut rows = Vec::new();
            for k in 1..=n {
                let identity = lemma1_log_identity(&rec, k, bits)?;
                let direct = iterated_log(&rec, k, bits)?;
                let diff = identity.sub(&direct).mid().to_f64().abs();
                report.check(
                    format!("n={k}: |identity - log A_n| < 1e-20"),
                    diff < tolerance,
                    "< 1e-20",
                    format!("{diff:.3e}"),
                );
                let log_a = round_sig(direct.mid(), 25).unwrap();
                writeln!(text, "n={k}: log A_n = {log_a} diff = {diff:.3e}").unwrap();
                rows.push(json!({"n": k, "log_a": log_a, "difference": format!("{diff:.3e}")}));
            }
            report.results = json!({ "rows": rows });
            report
        }
        Suite::Oracle { n_max } => {
            if !(1..=DEFAULT_CORPUS_CAP).contains(&n_max) {
                return Err(usage(format!(
                    "--n-max must be in 1..={DEFAULT_CORPUS_CAP}"
                )));
            }
            let inputs = json!({"suite": "oracle", "n_max": n_max});
            let mut report = Report::new("verify", inputs);
            let mut rows = Vec::new();
            for corpus in generate_up_to(n_max, DEFAULT_CORPUS_CAP)? {
                let mut agree = 0;
                for t in corpus.trees() {
                    if induced_set(&t)?.codes() == brute_force_set(&t)?.codes() {
                        agree += 1;
                    }
                }
                report.check(
                    format!("n={}: enumeration equals brute force", corpus.n),
                    agree == corpus.len(),
                    corpus.len(),
                    agree,
                );
                writeln!(text, "n={}: {agree}/{} trees agree", corpus.n, corpus.len()).unwrap();
                rows.push(json!({"n": corpus.n, "trees": corpus.len(), "agree": agree}));
            }
            report.results = json!({ "rows": rows });
            report
        }
    };
    writeln!(text, "{}", if report.passed() { "PASS" } else { "FAIL" }).unwrap();
    Ok(Output { report, text })
}
