use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use jetlct_core::jets::{jet_fiber_origin, jet_ideal, ord_along_arc};
use jetlct_core::lct::{
    check_inversion_of_adjunction, compare_mod_p, contact_codim, lct_estimate, IoaCheck, LctReport, LctRow, Mode,
    ModPComparison, RowStatus,
};
use serde_json::json;

use crate::arc::parse_arc;
use crate::document::{write_csv, write_json, InputEcho, ReportDocument, ReportRecord, Timing, VerdictRecord, SCHEMA_VERSION};
use crate::idealfile::IdealFile;
use crate::{Cli, CliError, Command, EXIT_EXHAUSTED, EXIT_FAIL, EXIT_OK};

pub(crate) fn dispatch(cli: &Cli, jobs: usize, out: &mut Vec<u8>) -> Result<i32, CliError> {
    let start = Instant::now();
    let options = cli.global.options();
    let mut text = String::new();
    let code = match &cli.command {
        Command::Jet { file, m, fiber_origin } => {
            let f = IdealFile::read(file)?;
            jet(&f, *m, *fiber_origin, &mut text)?;
            EXIT_OK
        }
        Command::Lct { file, mmax, fiber_origin, json, csv } => {
            let f = IdealFile::read(file)?;
            let mode = if *fiber_origin { Mode::FiberAtOrigin } else { Mode::Global };
            let report = lct_estimate(&f.ideal(), *mmax, mode, &options)?;
            render_header(&f, &mut text);
            render_lct(&report, &mut text);
            if let Some(path) = json {
                let doc = document(
                    "lct",
                    file,
                    &f,
                    json!({ "mmax": mmax, "mode": mode.to_string() }),
                    vec![ReportRecord::new(f.field().to_string(), &report)],
                    Vec::new(),
                    start,
                    jobs,
                );
                emit_json(path, &doc)?;
            }
            if let Some(path) = csv {
                write_csv(path, &report)
                    .map_err(|e| CliError::Output { path: path.display().to_string(), message: e.to_string() })?;
            }
            if report.is_partial() {
                EXIT_EXHAUSTED
            } else {
                EXIT_OK
            }
        }
        Command::Compare { file, primes, mmax, json } => {
            let f = IdealFile::read(file)?;
            let cmp = compare_mod_p(&f.ideal(), primes, *mmax, &options)?;
            render_header(&f, &mut text);
            render_compare(&cmp, &mut text);
            if let Some(path) = json {
                let mut reports = vec![ReportRecord::new("Q", &cmp.rationals)];
                reports.extend(cmp.reductions.iter().map(|(p, r)| ReportRecord::new(format!("F_{p}"), r)));
                let details = cmp
                    .rows
                    .iter()
                    .map(|r| json!({ "p": r.prime, "m": r.m, "dim_q": r.dim_q, "dim_p": r.dim_p, "holds": r.holds }))
                    .collect();
                let verdict = VerdictRecord { name: "dim_p >= dim_q".into(), pass: cmp.verdict, partial: cmp.partial, details };
                let doc = document(
                    "compare",
                    file,
                    &f,
                    json!({ "mmax": mmax, "primes": primes }),
                    reports,
                    vec![verdict],
                    start,
                    jobs,
                );
                emit_json(path, &doc)?;
            }
            verdict_code(cmp.verdict, cmp.partial)
        }
        Command::Ord { file, arc, prec } => {
            let f = IdealFile::read(file)?;
            let arc = parse_arc(arc, &f.ring, *prec)?;
            let ord = ord_along_arc(&f.ideal(), &arc)?;
            writeln!(text, "{ord}").unwrap();
            EXIT_OK
        }
        Command::Contact { file, e, m } => {
            let f = IdealFile::read(file)?;
            let row = contact_codim(&f.ideal(), *e, *m, &options)?;
            match (&row.status, row.codim) {
                (RowStatus::Done, Some(c)) => {
                    writeln!(text, "codim = {c}").unwrap();
                    EXIT_OK
                }
                (status, _) => {
                    writeln!(text, "codim = timeout").unwrap();
                    if let RowStatus::Exhausted(msg) = status {
                        writeln!(text, "# {msg}").unwrap();
                    }
                    EXIT_EXHAUSTED
                }
            }
        }
        Command::Ioa { file, hyperplane, mmax, json } => {
            let f = IdealFile::read(file)?;
            let i = f
                .ring
                .index_of(hyperplane)
                .ok_or_else(|| CliError::Usage(format!("`{hyperplane}` is not a variable of the file")))?;
            let check = check_inversion_of_adjunction(&f.ideal(), i, *mmax, &options)?;
            render_header(&f, &mut text);
            render_ioa(&check, hyperplane, &mut text);
            if let Some(path) = json {
                let mut reports = vec![ReportRecord::new("X", &check.ambient)];
                if let Some(h) = &check.hyperplane_report {
                    reports.push(ReportRecord::new("H", h));
                }
                let details = check
                    .rows
                    .iter()
                    .map(|r| {
                        json!({
                            "m": r.m,
                            "c_x": r.c_x.map(|c| c.to_string()),
                            "c_h": r.c_h.map(|c| c.to_string()),
                            "holds": r.holds,
                        })
                    })
                    .collect();
                let verdict = VerdictRecord { name: "c_X >= c_H".into(), pass: check.verdict, partial: check.partial, details };
                let doc = document(
                    "ioa",
                    file,
                    &f,
                    json!({ "mmax": mmax, "hyperplane": hyperplane, "degenerate": check.degenerate }),
                    reports,
                    vec![verdict],
                    start,
                    jobs,
                );
                emit_json(path, &doc)?;
            }
            verdict_code(check.verdict, check.partial)
        }
    };
    out.write_all(text.as_bytes()).expect("writing to memory");
    Ok(code)
}

fn verdict_code(pass: bool, partial: bool) -> i32 {
    match (pass, partial) {
        (false, _) => EXIT_FAIL,
        (true, true) => EXIT_EXHAUSTED,
        (true, false) => EXIT_OK,
    }
}

#[allow(clippy::too_many_arguments)]
fn document(
    command: &str,
    path: &Path,
    file: &IdealFile,
    parameters: serde_json::Value,
    reports: Vec<ReportRecord>,
    verdicts: Vec<VerdictRecord>,
    start: Instant,
    jobs: usize,
) -> ReportDocument {
    ReportDocument {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        input: InputEcho::new(path, file),
        parameters,
        reports,
        verdicts,
        timing: Timing { total_ms: start.elapsed().as_secs_f64() * 1e3, jobs },
    }
}

fn emit_json(path: &Path, doc: &ReportDocument) -> Result<(), CliError> {
    write_json(path, doc).map_err(|e| CliError::Output { path: path.display().to_string(), message: e.to_string() })
}

fn jet(f: &IdealFile, m: usize, fiber_origin: bool, text: &mut String) -> Result<(), CliError> {
    let ideal = f.ideal();
    if ideal.is_whole_space() {
        if !fiber_origin {
            for _ in 0..f.generators.len() * (m + 1) {
                writeln!(text, "0 (≡0)").unwrap();
            }
        }
        return Ok(());
    }
    let jets = jet_ideal(&ideal, m)?;
    if fiber_origin {
        let fiber = jet_fiber_origin(&jets)?;
        for g in fiber.ideal().generators() {
            writeln!(text, "{g}").unwrap();
        }
    } else {
        for g in jets.generators() {
            if g.is_zero() {
                writeln!(text, "0 (≡0)").unwrap();
            } else {
                writeln!(text, "{g}").unwrap();
            }
        }
    }
    Ok(())
}

fn render_header(f: &IdealFile, text: &mut String) {
    writeln!(text, "field: {}", f.field()).unwrap();
    writeln!(text, "vars: {}", f.ring.names().join(" ")).unwrap();
    writeln!(text, "generators:").unwrap();
    for g in &f.generators {
        if g.is_zero() {
            writeln!(text, "  0 (≡0)").unwrap();
        } else {
            writeln!(text, "  {g}").unwrap();
        }
    }
}

fn cell<T: ToString>(v: Option<T>, row: &LctRow) -> String {
    match (v, &row.status) {
        (Some(x), _) => x.to_string(),
        (None, RowStatus::Exhausted(_)) => "timeout".to_string(),
        (None, RowStatus::Done) => "-".to_string(),
    }
}

fn render_lct(report: &LctReport, text: &mut String) {
    writeln!(text, "mode: {}", report.mode).unwrap();
    writeln!(text, "{:>3}  {:>7}  {:>7}  {:>9}", "m", "dim", "codim", "ratio").unwrap();
    for row in &report.rows {
        writeln!(
            text,
            "{:>3}  {:>7}  {:>7}  {:>9}",
            row.m,
            cell(row.dim, row),
            cell(row.codim, row),
            cell(row.ratio, row)
        )
        .unwrap();
    }
    match report.estimate() {
        Some(t) => writeln!(text, "upper bound after {} levels: {t}", report.m_max).unwrap(),
        None => writeln!(text, "upper bound after {} levels: none", report.m_max).unwrap(),
    }
    if let Some(d) = &report.diagnostic {
        writeln!(text, "note: {d}").unwrap();
    }
}

fn verdict_line(pass: bool, partial: bool) -> &'static str {
    match (pass, partial) {
        (false, _) => "verdict: FAIL",
        (true, true) => "verdict: PASS (some rows timed out)",
        (true, false) => "verdict: PASS",
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "timeout".to_string(), |x| x.to_string())
}

fn render_compare(cmp: &ModPComparison, text: &mut String) {
    writeln!(text, "{:>3}  {:>3}  {:>7}  {:>7}  {:>4}", "p", "m", "dim_Q", "dim_p", "ok").unwrap();
    for r in &cmp.rows {
        let ok = match r.holds {
            Some(true) => "yes",
            Some(false) => "NO",
            None => "?",
        };
        writeln!(text, "{:>3}  {:>3}  {:>7}  {:>7}  {:>4}", r.prime, r.m, opt(r.dim_q), opt(r.dim_p), ok).unwrap();
    }
    let est = |r: &LctReport| r.estimate().map_or_else(|| "none".to_string(), |t| t.to_string());
    writeln!(text, "origin bound over Q: {}", est(&cmp.rationals)).unwrap();
    for (p, r) in &cmp.reductions {
        writeln!(text, "origin bound over F_{p}: {}", est(r)).unwrap();
    }
    writeln!(text, "{}", verdict_line(cmp.verdict, cmp.partial)).unwrap();
}

fn render_ioa(check: &IoaCheck, name: &str, text: &mut String) {
    writeln!(text, "hyperplane: {name} = 0").unwrap();
    if check.degenerate {
        writeln!(text, "restriction: the hyperplane lies in Y").unwrap();
    } else {
        writeln!(text, "restriction: {}", check.restricted).unwrap();
    }
    writeln!(text, "{:>3}  {:>7}  {:>7}  {:>4}", "m", "c_X", "c_H", "ok").unwrap();
    for r in &check.rows {
        let ok = match r.holds {
            Some(true) => "yes",
            Some(false) => "NO",
            None => "?",
        };
        writeln!(text, "{:>3}  {:>7}  {:>7}  {:>4}", r.m, opt(r.c_x), opt(r.c_h), ok).unwrap();
    }
    let est = |t: Option<jetlct_core::lct::Threshold>| t.map_or_else(|| "none".to_string(), |t| t.to_string());
    writeln!(text, "origin bound on X: {}", est(check.ambient.estimate())).unwrap();
    writeln!(text, "origin bound on H: {}", est(check.hyperplane_estimate())).unwrap();
    writeln!(text, "{}", verdict_line(check.verdict, check.partial)).unwrap();
}
