//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the terminal.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use jetlct_cli::IdealFile;
use jetlct_core::algebra::{FieldSpec, Monomial, Polynomial, VariableContext};
use jetlct_core::groebner::{buchberger, krull_dimension, monomial_dimension, self_checks_passed, Limits, MonomialOrder};
use jetlct_core::jets::{jet_fiber_origin, jet_ideal, AffineIdeal};
use jetlct_core::lct::{check_multiplicity_bound, lct_estimate, Codim, Fraction, LctError, LctOptions, Mode, Threshold};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use serde_json::Value;

type Outcome = Result<String, String>;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn corpus() -> Vec<(String, IdealFile)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "ideal"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), IdealFile::read(&p).unwrap()))
        .collect()
}

struct Run {
    code: i32,
    stdout: String,
    json: Option<Value>,
}

fn jetlct(args: &[&str], with_json: bool) -> Run {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("report.json");
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_jetlct"));
    for a in args {
        if a.ends_with(".ideal") && !a.contains('/') {
            cmd.arg(corpus_dir().join(a));
        } else {
            cmd.arg(a);
        }
    }
    if with_json {
        cmd.arg("--json").arg(&json_path);
    }
    let out = cmd.output().expect("running jetlct");
    let json = with_json
        .then(|| std::fs::read_to_string(&json_path).ok())
        .flatten()
        .map(|s| serde_json::from_str(&s).unwrap());
    Run { code: out.status.code().unwrap_or(-1), stdout: String::from_utf8_lossy(&out.stdout).into_owned(), json }
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    if t < budget {
        Ok(())
    } else {
        Err(format!("{what} took {:.1}s, budget {:.0}s", t.as_secs_f64(), budget.as_secs_f64()))
    }
}

fn frac(v: &Value) -> Option<Fraction> {
    Some(Fraction::new(v["num"].as_u64()?, v["den"].as_u64()?))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for p in [2u64, 3] {
        let file = format!("frobenius_{p}.ideal");
        let run = jetlct(&["lct", &file, "--mmax", "6"], true);
        if run.code != 0 {
            return Err(format!("{file}: exit {}", run.code));
        }
        let report = &run.json.ok_or("no JSON report")?["reports"][0];
        for m in 0..=6u64 {
            let expected = 1 + m / p;
            let got = report["rows"][m as usize]["codim"].as_u64();
            if got != Some(expected) {
                return Err(format!("p = {p}, m = {m}: codim {got:?}, expected {expected}"));
            }
        }
        let min = frac(&report["running_min"]);
        if min != Some(Fraction::new(1, p)) {
            return Err(format!("p = {p}: running minimum {min:?}, expected 1/{p}"));
        }
        if !run.stdout.contains(&format!("upper bound after 6 levels: 1/{p}")) {
            return Err(format!("p = {p}: footer missing"));
        }
    }
    within(start, Duration::from_secs(10), "both fields")?;
    Ok(format!("codim = 1 + floor(m/p) for m <= 6, minimum 1/p, {:.2}s", start.elapsed().as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let names = ["x1", "x2", "x3"];
    let fields = [FieldSpec::rationals(), FieldSpec::prime(2).unwrap(), FieldSpec::prime(5).unwrap()];
    let mut checked = 0;
    for field in &fields {
        for n in 1..=3 {
            let ring = VariableContext::new(field.clone(), names[..n].iter().copied()).unwrap();
            let ideal = AffineIdeal::new(&ring, vec![Polynomial::var(&ring, 0)]).unwrap();
            let report = lct_estimate(&ideal, 6, Mode::Global, &LctOptions::default()).map_err(|e| e.to_string())?;
            for row in &report.rows {
                if row.ratio != Some(Threshold::Finite(Fraction::from_integer(1))) {
                    return Err(format!("{field}, n = {n}, m = {}: ratio {:?}", row.m, row.ratio));
                }
                checked += 1;
            }
        }
    }
    within(start, Duration::from_secs(5), "smooth divisors")?;
    Ok(format!("{checked} rows with ratio 1, {:.2}s", start.elapsed().as_secs_f64()))
}

/// `dim` of the cusp jet scheme, by stratifying jets by `(ord x, ord y)`.
fn cusp_oracle_dim(m: u64) -> u64 {
    let mut best = 0;
    for a in 0..=m + 1 {
        for b in 0..=m + 1 {
            let free = (m + 1 - a) + (m + 1 - b);
            let dim = if (2 * a).min(3 * b) > m {
                Some(free)
            } else if 2 * a == 3 * b {
                Some(free - (m - 2 * a + 1))
            } else {
                None
            };
            if let Some(d) = dim {
                best = best.max(d);
            }
        }
    }
    best
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let oracle: Vec<u64> = (0..=5).map(|m| 2 * (m + 1) - cusp_oracle_dim(m)).collect();
    let oracle_min = oracle.iter().enumerate().map(|(m, &c)| Fraction::new(c, m as u64 + 1)).min().unwrap();
    if oracle_min != Fraction::new(5, 6) || oracle[5] != 5 {
        return Err(format!("oracle disagrees with 5/6: codims {oracle:?}"));
    }
    let run = jetlct(&["lct", "cusp.ideal", "--mmax", "5"], true);
    if run.code != 0 {
        return Err(format!("exit {}", run.code));
    }
    let report = &run.json.ok_or("no JSON report")?["reports"][0];
    let codims: Vec<Option<u64>> = (0..=5).map(|m| report["rows"][m]["codim"].as_u64()).collect();
    if codims != oracle.iter().copied().map(Some).collect::<Vec<_>>() {
        return Err(format!("codims {codims:?}, oracle {oracle:?}"));
    }
    if frac(&report["running_min"]) != Some(Fraction::new(5, 6)) {
        return Err(format!("running minimum {}", report["running_min"]));
    }
    let golden = std::fs::read_to_string(corpus_dir().join("golden/cusp.lct.txt")).map_err(|e| e.to_string())?;
    if golden != run.stdout {
        return Err("output differs from the golden file".into());
    }
    within(start, Duration::from_secs(300), "cusp")?;
    Ok(format!("minimum 5/6, codim(Y_5) = 5, matches oracle and golden file, {:.2}s", start.elapsed().as_secs_f64()))
}

fn corpus_shape_ok(f: &IdealFile) -> bool {
    f.ring.nvars() <= 3 && f.generators.iter().all(|g| g.total_degree().unwrap_or(0) <= 4)
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let corpus: Vec<_> = corpus().into_iter().filter(|(_, f)| corpus_shape_ok(f)).collect();
    if corpus.len() < 20 {
        return Err(format!("only {} eligible corpus ideals", corpus.len()));
    }
    if !corpus.iter().any(|(_, f)| f.field().is_rationals()) || !corpus.iter().any(|(_, f)| f.field().is_prime_field())
    {
        return Err("corpus must mix Q and F_p".into());
    }
    let mut pairs = 0;
    let mut violations = Vec::new();
    for (name, f) in &corpus {
        let ideal = f.ideal();
        let mut modes = vec![Mode::Global];
        if ideal.at_origin_eligible() {
            modes.push(Mode::FiberAtOrigin);
        }
        for mode in modes {
            let report = match lct_estimate(&ideal, 4, mode, &LctOptions::default()) {
                Ok(r) => r,
                Err(LctError::MonotonicityViolated { m, previous, current }) => {
                    violations.push(format!("{name} ({mode}) m = {m}: {previous} -> {current}"));
                    continue;
                }
                Err(e) => return Err(format!("{name}: {e}")),
            };
            if report.is_partial() {
                return Err(format!("{name} ({mode}): some level exceeded its limits"));
            }
            let codims: Vec<Codim> = report.rows.iter().map(|r| r.codim.unwrap()).collect();
            for (m, w) in codims.windows(2).enumerate() {
                pairs += 1;
                if w[1] < w[0] {
                    violations.push(format!("{name} ({mode}) m = {}: {} -> {}", m + 1, w[0], w[1]));
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(violations.join("; "));
    }
    Ok(format!("{} ideals, {pairs} consecutive pairs, 0 violations, {:.2}s", corpus.len(), start.elapsed().as_secs_f64()))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    let mut ideals = 0;
    for (name, f) in corpus() {
        let ideal = f.ideal();
        if !ideal.at_origin_eligible() || ideal.is_whole_space() {
            continue;
        }
        ideals += 1;
        for m in 0..=5 {
            let fiber = jet_fiber_origin(&jet_ideal(&ideal, m).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            for (g, &(_, p)) in fiber.ideal().generators().iter().zip(fiber.sources()) {
                checked += 1;
                if g.weighted_homogeneous_degree(fiber.weights()) != Some(p as u64) {
                    return Err(format!("{name}, m = {m}: {g} is not weighted-homogeneous of degree {p}"));
                }
            }
        }
    }
    Ok(format!("{ideals} ideals, {checked} fiber generators, 0 violations"))
}

fn integer_corpus() -> Vec<String> {
    corpus()
        .into_iter()
        .filter(|(_, f)| {
            f.field().is_rationals()
                && f.ideal().at_origin_eligible()
                && f.generators.iter().all(|g| g.terms().all(|(_, c)| c.as_rational().is_some_and(|q| q.is_integer())))
        })
        .map(|(n, _)| format!("{n}.ideal"))
        .collect()
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let files = integer_corpus();
    let mut rows = 0;
    for file in &files {
        let run = jetlct(&["compare", file, "--primes", "2,3,5", "--mmax", "4"], true);
        if run.code != 0 || !run.stdout.ends_with("verdict: PASS\n") {
            return Err(format!("{file}: exit {}\n{}", run.code, run.stdout));
        }
        let details = run.json.ok_or("no JSON report")?["verdicts"][0]["details"].as_array().cloned().unwrap_or_default();
        if details.len() != 15 || details.iter().any(|d| d["holds"] != Value::Bool(true)) {
            return Err(format!("{file}: incomplete or failing rows"));
        }
        rows += details.len();
    }
    within(start, Duration::from_secs(120), "comparison")?;
    Ok(format!("{} ideals, {rows} rows, 0 violations, {:.2}s", files.len(), start.elapsed().as_secs_f64()))
}

fn criterion_7() -> Outcome {
    let mut checks = 0;
    let mut rows = 0;
    for (name, f) in corpus() {
        if f.ring.nvars() < 2 || !f.ideal().at_origin_eligible() {
            continue;
        }
        for var in f.ring.names() {
            let file = format!("{name}.ideal");
            let run = jetlct(&["ioa", &file, "--hyperplane", var, "--mmax", "4"], true);
            if run.code != 0 || !run.stdout.ends_with("verdict: PASS\n") {
                return Err(format!("{file}, H = {{{var} = 0}}: exit {}\n{}", run.code, run.stdout));
            }
            let details = run.json.ok_or("no JSON report")?["verdicts"][0]["details"].as_array().cloned().unwrap_or_default();
            if details.len() != 5 || details.iter().any(|d| d["holds"] != Value::Bool(true)) {
                return Err(format!("{file}, H = {{{var} = 0}}: incomplete or failing rows"));
            }
            checks += 1;
            rows += details.len();
        }
    }
    Ok(format!("{checks} (ideal, hyperplane) pairs, {rows} rows, 0 violations"))
}

fn criterion_8() -> Outcome {
    let mut ideals = 0;
    let mut rows = 0;
    for (name, f) in corpus() {
        let ideal = f.ideal();
        if !ideal.at_origin_eligible() || ideal.is_whole_space() {
            continue;
        }
        let check = check_multiplicity_bound(&ideal, 5, &LctOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        if !check.verdict {
            return Err(format!("{name}: ratios below 1/{} at m = {:?}", check.ord, check.violations));
        }
        if check.report.is_partial() {
            return Err(format!("{name}: some level exceeded its limits"));
        }
        ideals += 1;
        rows += check.report.rows.len();
    }
    Ok(format!("{ideals} ideals, {rows} rows, 0 violations"))
}

fn criterion_9(checks_before_suite: u64) -> Outcome {
    let start = Instant::now();
    let strategy = (1usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(0u32..=3, n), 1..=6).prop_map(move |g| (n, g))
    });
    let mut runner = TestRunner::deterministic();
    let fields = [FieldSpec::rationals(), FieldSpec::prime(3).unwrap()];
    let names = ["a", "b", "c", "d", "e", "f"];
    let before = self_checks_passed();
    let mut invocations = 0;
    for k in 0..200 {
        let (n, monos) = strategy.new_tree(&mut runner).unwrap().current();
        let ring = VariableContext::new(fields[k % 2].clone(), names[..n].iter().copied()).unwrap();
        let gens = monos
            .iter()
            .map(|e| Polynomial::from_terms(&ring, [(Monomial::from_exponents(e.clone()), ring.field().one())]).unwrap())
            .collect();
        let ideal = AffineIdeal::new(&ring, gens).unwrap();
        let gb = buchberger(&ideal, &MonomialOrder::DegRevLex, &Limits::default()).map_err(|e| e.to_string())?;
        invocations += 1;
        let krull = krull_dimension(&gb).map_err(|e| e.to_string())?.dim;
        let oracle = monomial_dimension(&ideal).map_err(|e| e.to_string())?.dim;
        if krull != oracle {
            return Err(format!("{ideal}: krull_dimension {krull}, monomial oracle {oracle}"));
        }
    }
    let passed = self_checks_passed() - before;
    if passed != invocations {
        return Err(format!("{invocations} bases computed but {passed} self-checks recorded"));
    }
    within(start, Duration::from_secs(60), "oracle comparison")?;
    Ok(format!(
        "200 monomial ideals agree, {} self-checks passed in this suite, {:.2}s",
        self_checks_passed() - checks_before_suite,
        start.elapsed().as_secs_f64()
    ))
}

fn main() {
    let suite_start = self_checks_passed();
    let criteria: [(&str, &dyn Fn() -> Outcome); 8] = [
        ("1 Frobenius example over F_p(s)", &criterion_1),
        ("2 smooth divisor", &criterion_2),
        ("3 cusp at desk scale", &criterion_3),
        ("4 codim monotonicity", &criterion_4),
        ("5 weighted homogeneity", &criterion_5),
        ("6 reduction mod p", &criterion_6),
        ("7 inversion of adjunction", &criterion_7),
        ("8 multiplicity bound", &criterion_8),
    ];
    let mut failed = 0;
    let mut report = |name: &str, outcome: Outcome| match outcome {
        Ok(msg) => println!("PASS  criterion {name}: {msg}"),
        Err(msg) => {
            failed += 1;
            println!("FAIL  criterion {name}: {msg}");
        }
    };
    for (name, f) in criteria {
        report(name, f());
    }
    report("9 Gröbner oracle equivalence", criterion_9(suite_start));
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
