use std::path::Path;

use clap::ValueEnum;
use fevac::cayley::{ball, boundary_report, Automaton, AutomatonFile, BoundaryReport, GenAlphabet, Letter};
use fevac::counting::{self, CountTable};
use fevac::evac::{solve_pure, solve_with_constant, verify_flow_certificate, CertificateVerdict, FlowCertificate, Outcome};
use fevac::fgroup::generator_x;
use fevac::forests::{bb_automaton, bb_automaton_with_budget, enumerate_bb};
use fevac::ratio::{format_ratio, ratio};
use fevac::Exec;
use serde_json::{json, Value};

use crate::output::{union_table, Report};

#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit code 2.
    Invalid(String),
    /// Well-formed input with no possible result: exit code 3.
    Infeasible(String),
}

impl From<fevac::Error> for CliError {
    fn from(e: fevac::Error) -> Self {
        match e {
            fevac::Error::NoEvacuationTarget => CliError::Infeasible(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// A report plus the exit code to use after emitting it.
pub struct Done {
    pub report: Report,
    pub code: u8,
}

impl Done {
    fn ok(report: Report) -> Self {
        Done { report, code: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BbMode {
    Enumerate,
    Count,
}

fn alphabet(spec: &str) -> CliResult<GenAlphabet> {
    GenAlphabet::parse(spec).map_err(|e| CliError::Invalid(format!("alphabet `{spec}`: {e}")))
}

/// Reads an automaton file, or the `result.automaton` field of a saved
/// `ball`/`bb` report.
pub fn load_automaton(path: &Path) -> CliResult<Automaton> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let mut v: Value = serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    if let Some(inner) = v.pointer_mut("/result/automaton") {
        v = inner.take();
    }
    let file: AutomatonFile =
        serde_json::from_value(v).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    Ok(Automaton::from_file(&file)?)
}

fn nu_table(rep: &BoundaryReport) -> (Vec<String>, Vec<Vec<String>>) {
    let header = vec!["letter".to_string(), "nu".to_string()];
    let rows = rep.nu.iter().map(|(l, c)| vec![l.clone(), c.to_string()]).collect();
    (header, rows)
}

fn automaton_report(command: &'static str, params: Value, y: &Automaton) -> CliResult<Report> {
    let rep = boundary_report(y)?;
    let (header, rows) = nu_table(&rep);
    Ok(Report {
        command,
        params,
        result: json!({"report": rep.to_json(), "automaton": y.to_file()}),
        header,
        rows,
    })
}

pub fn cmd_ball(r: usize, spec: &str) -> CliResult<Done> {
    let y = ball(r, &alphabet(spec)?)?;
    Ok(Done::ok(automaton_report("ball", json!({"r": r, "alphabet": spec}), &y)?))
}

pub fn cmd_bb(n: usize, k: usize, spec: &str, mode: BbMode, budget: u64, exec: Exec) -> CliResult<Done> {
    let a = alphabet(spec)?;
    let params = json!({"n": n, "k": k, "alphabet": spec, "mode": format!("{mode:?}").to_lowercase(), "budget": budget});
    if n == 0 {
        return Err(CliError::Invalid("BB(n, k) needs n >= 1".into()));
    }
    match mode {
        BbMode::Enumerate => {
            let y = bb_automaton_with_budget(n, k, &a, budget)?;
            Ok(Done::ok(automaton_report("bb", params, &y)?))
        }
        BbMode::Count => {
            let rec = CountTable::with_exec(k, n, exec).density_report(n, &a)?;
            Ok(Done::ok(Report {
                command: "bb",
                params,
                result: rec.to_json(),
                header: rec.csv_header(),
                rows: vec![rec.csv_fields()],
            }))
        }
    }
}

pub fn cmd_sweep(ns: &[usize], ks: &[usize], specs: &[String], trimmed: bool, exec: Exec) -> CliResult<Done> {
    if ns.contains(&0) {
        return Err(CliError::Invalid("n values must be >= 1".into()));
    }
    let mut json_rows = Vec::new();
    let mut tables = Vec::new();
    for spec in specs {
        for row in counting::sweep(ns, ks, &alphabet(spec)?, trimmed, exec)? {
            json_rows.push(row.to_json());
            tables.push((row.csv_header(), row.csv_fields()));
        }
    }
    let (header, rows) = union_table(tables);
    Ok(Done::ok(Report {
        command: "sweep",
        params: json!({"n": ns, "k": ks, "alphabets": specs, "trimmed": trimmed}),
        result: json!({"rows": json_rows}),
        header,
        rows,
    }))
}

pub fn cmd_evac(path: &Path, k: u32) -> CliResult<Done> {
    let y = load_automaton(path)?;
    let outcome = solve_with_constant(&y, k)?;
    let mut result = json!({
        "exists": outcome.exists(),
        "K": k,
        "size": y.len(),
        "boundary": y.boundary_vertices().len(),
    });
    let (header, rows): (Vec<&str>, Vec<Vec<String>>) = match &outcome {
        Outcome::Scheme(s) => {
            result["scheme"] = serde_json::to_value(s).map_err(|e| CliError::Invalid(e.to_string()))?;
            let rows = s
                .paths
                .iter()
                .flat_map(|(v, path)| {
                    path.iter().enumerate().map(move |(i, st)| {
                        vec![v.clone(), i.to_string(), st.from.clone(), st.letter.clone(), st.to.clone()]
                    })
                })
                .collect();
            (vec!["vertex", "step", "from", "letter", "to"], rows)
        }
        Outcome::None(w) => {
            result["witness"] = w.to_json();
            (vec!["Z"], w.z.iter().map(|z| vec![z.clone()]).collect())
        }
    };
    Ok(Done::ok(Report {
        command: "evac",
        params: json!({"automaton": path.display().to_string(), "K": k}),
        result,
        header: header.into_iter().map(String::from).collect(),
        rows,
    }))
}

pub fn cmd_certify(automaton: &Path, cert: &Path) -> CliResult<Done> {
    let y = load_automaton(automaton)?;
    let c = FlowCertificate::load(cert).map_err(|e| CliError::Invalid(format!("{}: {e}", cert.display())))?;
    let verdict = verify_flow_certificate(&y, &c)?;
    let result = verdict.to_json();
    let rows = result
        .as_object()
        .expect("verdict is an object")
        .iter()
        .map(|(k, v)| vec![k.clone(), v.as_str().map_or_else(|| v.to_string(), String::from)])
        .collect();
    let code = if verdict.accepted() { 0 } else { 3 };
    Ok(Done {
        report: Report {
            command: "certify",
            params: json!({"automaton": automaton.display().to_string(), "certificate": cert.display().to_string()}),
            result,
            header: vec!["field".into(), "value".into()],
            rows,
        },
        code,
    })
}

fn selftest_checks() -> CliResult<Vec<(&'static str, bool)>> {
    let mut checks = Vec::new();

    let x01 = alphabet("x0,x1")?;
    let y = ball(2, &x01)?;
    let rep = boundary_report(&y)?;
    let edges: usize = (0..y.len()).map(|v| y.degree(v)).sum();
    let identity = rep.density == ratio(edges as u64, y.len() as u64) && &rep.density + &rep.isoperimetric == ratio(4, 1);
    checks.push(("density identity on ball(2, {x0,x1})", identity));

    let b1 = ball(1, &x01)?;
    let solved = solve_pure(&b1)?.scheme().is_some_and(|s| s.validate(&b1).is_ok());
    checks.push(("pure scheme on ball(1, {x0,x1})", solved));

    let wide = alphabet("x0,x1,xb1,x2")?;
    let mut dp_ok = true;
    for k in 0..=2 {
        let table = CountTable::new(k, 6);
        for n in 1..=6 {
            let listed = enumerate_bb(n, k, fevac::forests::DEFAULT_BUDGET)?.len() as u64;
            let rep = boundary_report(&bb_automaton(n, k, &wide)?)?;
            let rec = table.density_report(n, &wide)?;
            dp_ok &= table.bb_count(n)? == listed.into()
                && rep.nu.iter().all(|(l, c)| rec.nu_of(l).is_some_and(|d| *d == (*c).into()));
        }
    }
    checks.push(("counting DP matches enumeration for n <= 6, k <= 2", dp_ok));

    let relations = (1..=4).all(|j| (0..j).all(|i| generator_x(j).multiply(&generator_x(i)) == generator_x(i).multiply(&generator_x(j + 1))));
    checks.push(("x_j x_i = x_i x_{j+1} for i < j <= 4", relations));

    let path = Automaton::from_edges(
        GenAlphabet::abstract_symbols(&["a"])?,
        &["p", "q", "r"],
        &[("p", Letter::new(0, false), "q"), ("q", Letter::new(0, false), "r")],
    )?;
    let zero = FlowCertificate { c: "1".into(), eps: "1".into(), flow: Vec::new(), boundary_inflows: Default::default() };
    let rejected = matches!(verify_flow_certificate(&path, &zero)?, CertificateVerdict::Rejected(_));
    checks.push(("zero-flow certificate rejected", rejected));

    let bound = counting::trimmed_bound(&ratio(1, 260));
    checks.push(("trimmed bound at p0 = 1/260 is 517/518", format_ratio(&bound) == "517/518"));
    Ok(checks)
}

pub fn cmd_selftest() -> CliResult<Done> {
    let checks = selftest_checks()?;
    let passed = checks.iter().all(|(_, ok)| *ok);
    Ok(Done {
        report: Report {
            command: "selftest",
            params: json!({}),
            result: json!({
                "passed": passed,
                "checks": checks.iter().map(|(name, ok)| json!({"name": name, "passed": ok})).collect::<Vec<_>>(),
            }),
            header: vec!["check".into(), "passed".into()],
            rows: checks.iter().map(|(name, ok)| vec![name.to_string(), ok.to_string()]).collect(),
        },
        code: if passed { 0 } else { 2 },
    })
}
