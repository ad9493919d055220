use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::seed;
use super::{CharArgs, EnumerateArgs, Format, Method, ModelArgs, OrbitArgs, Suite, VerifyArgs};
use super::{EXIT_CAP, EXIT_FALSIFIED, EXIT_PASS};
use crate::characters::{
    char_bosonic, char_fermionic, char_partial, verify_char_recurrence, verify_fk_identity, verify_gauss_identity,
    verify_main_theorem, verify_path_recurrence, Verdict,
};
use crate::error::{Error, Result};
use crate::exactq::{Difference, ExactRational, QSeries};
use crate::minimal_model::ModelParams;
use crate::particle_moves::{
    apply_move, bijection_suite, find_blocks, move_lemma_suite, parse_move_word, rigging, Block, SuiteReport,
};
use crate::path_comb::{char_paths, char_paths_total, enumerate_with_degrees, path_admissible, path_degree, RiggedPath};

pub(super) const BROKEN_PIPE: &str = "output closed";

fn io(e: std::io::Error) -> Error {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        return Error::OutOfRange(BROKEN_PIPE.into());
    }
    Error::OutOfRange(format!("output failed: {e}"))
}

fn json_line(out: &mut dyn Write, v: &impl Serialize) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::Internal(e.to_string()))?;
    writeln!(out, "{s}").map_err(io)
}

fn model(m: &ModelArgs) -> Result<ModelParams> {
    match (m.p, m.pp) {
        (Some(p), Some(pp)) => ModelParams::new(p, pp),
        _ => Err(Error::OutOfRange("--p and --pp are required".into())),
    }
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::OutOfRange(format!("{flag} is required for this suite")))
}

fn no_csv(f: Format) -> Result<()> {
    if f == Format::Csv {
        return Err(Error::OutOfRange("csv output is only available for enumerate".into()));
    }
    Ok(())
}

pub(super) fn char_cmd(a: &CharArgs, out: &mut dyn Write) -> Result<i32> {
    no_csv(a.format)?;
    let m = model(&a.model)?;
    if a.trunc.is_negative() {
        return Err(Error::OutOfRange(format!("--trunc {} must be nonnegative", a.trunc)));
    }
    m.conformal_dim(a.r, a.s)?;
    let n = &a.trunc;
    let methods: Vec<Method> = match a.method {
        Method::All => vec![Method::Bosonic, Method::Fermionic, Method::Paths],
        x => vec![x],
    };
    if a.s != 1 && methods.iter().any(|&x| x != Method::Bosonic) {
        return Err(Error::OutOfRange("only the bosonic formula covers s != 1".into()));
    }
    let mut code = EXIT_PASS;
    let mut series: Vec<(&'static str, QSeries)> = Vec::new();
    for method in methods {
        let s = match (method, a.len) {
            (Method::Bosonic, None) => char_bosonic(&m, a.r, a.s, n)?,
            (Method::Bosonic, Some(_)) => {
                return Err(Error::OutOfRange("--L has no bosonic counterpart".into()));
            }
            (Method::Fermionic, None) => char_fermionic(&m, a.r, n)?,
            (Method::Fermionic, Some(l)) => char_partial(&m, a.r, l, n)?,
            (Method::Paths, None) => {
                let pc = char_paths_total(&m, a.r, n, a.l_cap);
                if pc.cap_reached {
                    code = EXIT_CAP;
                }
                pc.series
            }
            (Method::Paths, Some(l)) => char_paths(&m, l, a.r, n),
            (Method::All, _) => unreachable!(),
        };
        let name = match method {
            Method::Bosonic => "bosonic",
            Method::Fermionic => "fermionic",
            _ => "paths",
        };
        series.push((name, s));
    }
    let mut verdict = None;
    if series.len() > 1 {
        let mut v = Verdict { ok: true, first_diff: None };
        for (_, s) in &series[1..] {
            let d = series[0].1.first_difference(s, n)?;
            if v.ok && d.is_some() {
                v = Verdict { ok: false, first_diff: d };
            }
        }
        if !v.ok && code == EXIT_PASS {
            code = EXIT_FALSIFIED;
        }
        verdict = Some(v);
    }
    match a.format {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> =
                series.iter().map(|(k, s)| (k.to_string(), json!(s))).collect();
            json_line(out, &json!({ "series": map, "verdict": verdict, "cap_reached": code == EXIT_CAP }))?;
        }
        _ => {
            for (k, s) in &series {
                writeln!(out, "{k}: {s}").map_err(io)?;
            }
            if let Some(v) = &verdict {
                writeln!(out, "agree: {}", describe(v)).map_err(io)?;
            }
            if code == EXIT_CAP {
                writeln!(out, "length cap {} reached; the paths series may be incomplete", a.l_cap).map_err(io)?;
            }
        }
    }
    Ok(code)
}

fn describe(v: &Verdict) -> String {
    match &v.first_diff {
        None => "PASS".into(),
        Some(d) => format!("FAIL at q^({}): {} vs {}", d.exponent, d.left, d.right),
    }
}

pub(super) fn enumerate_cmd(a: &EnumerateArgs, out: &mut dyn Write) -> Result<i32> {
    let m = model(&a.model)?;
    if !(1..m.p()).contains(&a.r) {
        return Err(Error::OutOfRange(format!("r = {} outside 1..{}", a.r, m.p() - 1)));
    }
    let rows = enumerate_with_degrees(&m, a.len, a.r, &a.max_degree);
    match a.format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(p, d)| json!({ "r": p.heights_desc(), "sigma": p.riggings_desc(), "degree": d }))
                .collect();
            json_line(out, &v)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let join = |v: Vec<i64>| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
            let err = |e: csv::Error| Error::Internal(e.to_string());
            w.write_record(["r_seq", "sigma_seq", "degree"]).map_err(err)?;
            for (p, d) in &rows {
                w.write_record([join(p.heights_desc()), join(p.riggings_desc()), d.to_fraction_string()])
                    .map_err(err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
            out.write_all(&bytes).map_err(io)?;
        }
        Format::Text => {
            for (p, d) in &rows {
                writeln!(out, "{p}  degree={d}").map_err(io)?;
            }
            writeln!(out, "{} paths", rows.len()).map_err(io)?;
        }
    }
    Ok(EXIT_PASS)
}

/// Outcome of one verification case.
#[derive(Clone, Debug, Serialize)]
pub(super) struct CaseResult {
    pub suite: String,
    pub case: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_diff: Option<Difference>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<SuiteReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl CaseResult {
    fn new(suite: &str, case: String) -> CaseResult {
        CaseResult { suite: suite.into(), case, status: "PASS", first_diff: None, report: None, message: None }
    }

    pub(super) fn from_verdict(suite: &str, case: String, v: Result<Verdict>) -> CaseResult {
        let mut c = CaseResult::new(suite, case);
        match v {
            Ok(v) => {
                if !v.ok {
                    c.status = "FAIL";
                }
                c.first_diff = v.first_diff;
            }
            Err(e) => c.set_error(&e),
        }
        c
    }

    pub(super) fn from_report(suite: &str, case: String, rep: Result<SuiteReport>) -> CaseResult {
        let mut c = CaseResult::new(suite, case);
        match rep {
            Ok(rep) => {
                if !rep.passed() {
                    c.status = "FAIL";
                }
                c.report = Some(rep);
            }
            Err(e) => c.set_error(&e),
        }
        c
    }

    pub(super) fn from_bool(suite: &str, case: String, ok: bool, message: Option<String>) -> CaseResult {
        let mut c = CaseResult::new(suite, case);
        if !ok {
            c.status = "FAIL";
        }
        c.message = message;
        c
    }

    fn set_error(&mut self, e: &Error) {
        self.status = match e {
            Error::CapReached(_) => "CAP",
            Error::Internal(_) => "FAIL",
            _ => "ERROR",
        };
        self.message = Some(e.to_string());
    }

    fn line(&self) -> String {
        let mut s = format!("{} {}: {}", self.suite, self.case, self.status);
        if let Some(d) = &self.first_diff {
            s += &format!(" (first difference at q^({}): {} vs {})", d.exponent, d.left, d.right);
        }
        if let Some(r) = &self.report {
            s += &format!(" ({} checked, {} applicable, {} failures)", r.total(), r.applicable(), r.failure_count);
            for f in r.failures.iter().take(3) {
                s += &format!("\n    {f}");
            }
        }
        if let Some(m) = &self.message {
            s += &format!(" ({m})");
        }
        s
    }
}

pub(super) fn emit_cases(cases: &[CaseResult], format: Format, out: &mut dyn Write) -> Result<i32> {
    match format {
        Format::Json => json_line(out, &cases)?,
        _ => {
            for c in cases {
                writeln!(out, "{}", c.line()).map_err(io)?;
            }
            let failed = cases.iter().filter(|c| c.status != "PASS").count();
            writeln!(out, "{} cases, {} not passing", cases.len(), failed).map_err(io)?;
        }
    }
    let code = if cases.iter().any(|c| c.status == "FAIL") {
        EXIT_FALSIFIED
    } else if cases.iter().any(|c| c.status == "CAP") {
        EXIT_CAP
    } else if cases.iter().any(|c| c.status == "ERROR") {
        super::EXIT_USAGE
    } else {
        EXIT_PASS
    };
    Ok(code)
}

fn rs(m: &ModelParams, r: Option<i64>) -> Vec<i64> {
    match r {
        Some(r) => vec![r],
        None => (1..m.p()).collect(),
    }
}

fn mlabel(m: &ModelParams) -> String {
    format!("({},{})", m.p(), m.pp())
}

pub(super) fn main_cases(m: &ModelParams, r: Option<i64>, n: &ExactRational, l_cap: usize) -> Vec<CaseResult> {
    rs(m, r)
        .into_par_iter()
        .map(|r| {
            let case = format!("{} r={r} N={n}", mlabel(m));
            CaseResult::from_verdict("main", case, verify_main_theorem(m, r, n, l_cap))
        })
        .collect()
}

pub(super) fn recurrence_cases(
    suite: &str,
    m: &ModelParams,
    r: Option<i64>,
    len: Option<usize>,
    n: &ExactRational,
) -> Vec<CaseResult> {
    let lens: Vec<usize> = match len {
        Some(l) => vec![l],
        None => (0..=12).collect(),
    };
    let grid: Vec<(i64, usize)> = rs(m, r).into_iter().flat_map(|r| lens.iter().map(move |&l| (r, l))).collect();
    grid.into_par_iter()
        .map(|(r, l)| {
            let case = format!("{} r={r} L={l} N={n}", mlabel(m));
            let v = if suite == "char-rec" {
                verify_char_recurrence(m, r, l, n)
            } else {
                verify_path_recurrence(m, r, l, n)
            };
            CaseResult::from_verdict(suite, case, v)
        })
        .collect()
}

pub(super) fn verify_cmd(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    no_csv(a.format)?;
    if a.seed_suite {
        let cases = seed::run_all();
        return emit_cases(&cases, a.format, out);
    }
    let suite = a.suite.ok_or_else(|| Error::OutOfRange("name a suite or pass --seed-suite".into()))?;
    let cases = match suite {
        Suite::Main => {
            let m = model(&a.model)?;
            main_cases(&m, a.r, &need(&a.trunc, "--trunc")?, a.l_cap)
        }
        Suite::CharRec | Suite::PathRec => {
            let m = model(&a.model)?;
            let name = if suite == Suite::CharRec { "char-rec" } else { "path-rec" };
            recurrence_cases(name, &m, a.r, a.len, &need(&a.trunc, "--trunc")?)
        }
        Suite::Gauss => {
            let (l, mu, n) = (need(&a.l, "--l")?, need(&a.mu, "--mu")?, need(&a.trunc, "--trunc")?);
            vec![CaseResult::from_verdict("gauss", format!("l={l} mu={mu} N={n}"), verify_gauss_identity(l, mu, &n))]
        }
        Suite::Fk => {
            let (k, mu, n) = (need(&a.k, "--k")?, need(&a.mu, "--mu")?, need(&a.trunc, "--trunc")?);
            vec![CaseResult::from_verdict("fk", format!("k={k} mu={mu} N={n}"), verify_fk_identity(k, mu, &n))]
        }
        Suite::Moves | Suite::Bijection => {
            let m = model(&a.model)?;
            let extra = a.max_degree.clone().unwrap_or_else(|| ExactRational::from(10));
            let len = a.len.unwrap_or(6);
            let case = format!("{} L<={len} degree<=Delta+{extra}", mlabel(&m));
            if suite == Suite::Moves {
                vec![CaseResult::from_report("moves", case, Ok(move_lemma_suite(&m, len, &extra)))]
            } else {
                vec![CaseResult::from_report("bijection", case, bijection_suite(&m, len, &extra))]
            }
        }
    };
    emit_cases(&cases, a.format, out)
}

#[derive(Serialize)]
struct OrbitStep {
    #[serde(rename = "move")]
    mv: Option<String>,
    path: RiggedPath,
    degree: ExactRational,
    particles: usize,
    rigging: crate::particle_moves::Partition,
    blocks: Vec<Block>,
}

fn orbit_step(m: &ModelParams, mv: Option<String>, p: &RiggedPath) -> Result<OrbitStep> {
    let blocks = find_blocks(m, p)?;
    Ok(OrbitStep {
        mv,
        path: p.clone(),
        degree: path_degree(m, p)?,
        particles: blocks.iter().map(|b| b.particles).sum(),
        rigging: rigging(m, p)?,
        blocks,
    })
}

pub(super) fn orbit_cmd(a: &OrbitArgs, out: &mut dyn Write) -> Result<i32> {
    no_csv(a.format)?;
    let m = model(&a.model)?;
    let start: RiggedPath = a.path.parse()?;
    if let Some(v) = path_admissible(&m, &start)? {
        return Err(Error::Inadmissible(v));
    }
    let word = parse_move_word(&a.apply)?;
    let mut steps = vec![orbit_step(&m, None, &start)?];
    let mut undefined = None;
    let mut cur = start;
    for (i, mv) in word.iter().enumerate() {
        match apply_move(&m, &cur, mv.j, mv.dir)? {
            Some(next) => {
                steps.push(orbit_step(&m, Some(mv.to_string()), &next)?);
                cur = next;
            }
            None => {
                undefined = Some((i + 1, mv.to_string()));
                break;
            }
        }
    }
    match a.format {
        Format::Json => {
            let u = undefined.as_ref().map(|(i, mv)| json!({ "index": i, "move": mv }));
            json_line(out, &json!({ "steps": steps, "undefined": u }))?;
        }
        _ => {
            for s in &steps {
                let blocks: Vec<String> = s
                    .blocks
                    .iter()
                    .map(|b| format!("{}..{} x{}", b.min, b.max, b.particles))
                    .collect();
                let label = s.mv.as_deref().map_or("start".to_string(), |x| format!("{x:>5}"));
                writeln!(
                    out,
                    "{label}: {}  degree={}  m(P)={}  lambda={}  blocks=[{}]",
                    s.path,
                    s.degree,
                    s.particles,
                    s.rigging,
                    blocks.join(", ")
                )
                .map_err(io)?;
            }
            if let Some((i, mv)) = &undefined {
                writeln!(out, "move {i}: UNDEFINED ({mv} on {cur})").map_err(io)?;
            }
        }
    }
    Ok(EXIT_PASS)
}
