//! The `qplane` command line: argument parsing, report assembly and exit
//! codes. Reports are JSON on standard output.
//!
//! Exit codes: 0 success or a positive decision, 1 a negative decision, 2 bad
//! input (unreadable file, parse failure, failed precondition), 3 an internal
//! consistency failure.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::{is_latin, Quasigroup};
use crate::embed::{decide_frame_points_with, decide_frame_with, decide_lift_with, decide_planar, EmbeddingWitness, SweepOptions, WitnessMode};
use crate::error::{Error, Result};
use crate::gf::prime_power;
use crate::io;
use crate::matroid::{
    frame_circuit_catalog, frame_matroid, lift_circuit_catalog, lift_matroid, matroid_of_points, Matroid3,
};
use crate::plane::{dual_plane, plane_from_ternary, ternary_from_quadrangle, verify_plane_axioms, Plane, Quadrangle};
use crate::selftest;
use crate::ternary::{is_linear, verify_axioms, TernaryRing};
use crate::thicken::thicken;

#[derive(Debug, Parser)]
#[command(name = "qplane", version, about = "Quasigroup expansions, their matroids and projective plane embeddings")]
pub struct Cli {
    /// Worker threads for quadrangle sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Include wall-clock timing in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatroidKind {
    #[value(name = "G")]
    G,
    #[value(name = "Gfull")]
    Gfull,
    #[value(name = "L")]
    L,
    #[value(name = "L0")]
    L0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EmbedMode {
    Frame,
    FramePoints,
    Lift,
    Planar,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a .lsq, .bg3, .trn or .pln file.
    Validate { file: PathBuf },
    /// Extend a biased graph to a biased expansion.
    Thicken {
        file: PathBuf,
        /// Write the expansion as .bg3 here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build the plane of a field or of a ternary ring.
    Plane {
        /// A prime power q, or a prime p together with --ext.
        #[arg(long, conflicts_with = "from_ternary")]
        field: Option<usize>,
        #[arg(long, requires = "field")]
        ext: Option<u32>,
        #[arg(long)]
        from_ternary: Option<PathBuf>,
        /// Write the plane as .pln here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Read the ternary ring of a plane off a quadrangle.
    Coordinatize {
        file: PathBuf,
        #[arg(long, num_args = 4, value_names = ["U", "V", "O", "E"])]
        quadrangle: Vec<usize>,
        /// Write the ring as .trn here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Frame or lift matroid of a biased graph.
    Matroid {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: MatroidKind,
        #[arg(long)]
        circuits: bool,
    },
    /// Decide whether the matroid of a quasigroup expansion embeds in a plane.
    Embed {
        #[arg(long, value_enum)]
        mode: EmbedMode,
        #[arg(long, conflicts_with = "field")]
        plane: Option<PathBuf>,
        #[arg(long)]
        field: Option<usize>,
        #[arg(long)]
        quasigroup: PathBuf,
        /// Collect a witness for every successful quadrangle.
        #[arg(long)]
        all: bool,
        /// Recheck each witness against the matroid of its image points.
        #[arg(long)]
        verify: bool,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Run only these criteria.
        #[arg(long)]
        only: Vec<u8>,
    },
}

/// Output of one invocation: the JSON report and the exit code.
pub struct Outcome {
    pub report: Value,
    pub code: i32,
}

fn digest(path: &Path, text: &str) -> Value {
    let hash = Sha256::digest(text.as_bytes());
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    json!({ "path": path.display().to_string(), "sha256": hex })
}

struct Inputs(Vec<Value>);

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String> {
        let text = io::read_text(path)?;
        self.0.push(digest(path, &text));
        Ok(text)
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn field_ring(q: usize, ext: Option<u32>) -> Result<TernaryRing> {
    let (p, k) = match ext {
        Some(k) => (q, k),
        None => prime_power(q).ok_or_else(|| Error::input(format!("{q} is not a prime power")))?,
    };
    TernaryRing::from_field(p, k)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn validate(path: &Path, inputs: &mut Inputs) -> Result<(Value, bool)> {
    let text = inputs.read(path)?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    Ok(match ext {
        "lsq" => {
            // parse the shape, then judge the Latin property separately
            match io::parse_lsq(&text) {
                Ok(f) => (json!({ "kind": "latin-square", "order": f.quasigroup.order(), "identity": f.identity, "valid": true }), true),
                Err(e @ Error::Parse { .. }) => return Err(e),
                Err(e) => {
                    let rows = lsq_rows(&text);
                    let latin = rows.as_deref().map(is_latin).transpose()?.unwrap_or(false);
                    (json!({ "kind": "latin-square", "valid": false, "latin": latin, "reason": e.to_string() }), false)
                }
            }
        }
        "bg3" => {
            let g = io::parse_bg3(&text)?;
            let r = g.validate();
            let valid = r.valid;
            (
                json!({
                    "kind": "biased-graph",
                    "sizes": g.sizes(),
                    "valid": valid,
                    "biased_expansion": g.is_biased_expansion(),
                    "violations": to_value(&r.violations),
                }),
                valid,
            )
        }
        "trn" => {
            let tr = io::parse_trn(&text)?;
            let r = verify_axioms(&tr);
            let valid = r.all_pass();
            (json!({ "kind": "ternary-ring", "order": tr.order(), "valid": valid, "axioms": to_value(&r), "linear": is_linear(&tr).linear }), valid)
        }
        "pln" => match io::parse_pln(&text) {
            Ok(p) => (json!({ "kind": "plane", "order": p.order(), "points": p.n_points(), "valid": true }), true),
            Err(e @ Error::Parse { .. }) => return Err(e),
            Err(_) => {
                let inc = pln_incidence(&text)?;
                let r = verify_plane_axioms(&inc);
                (json!({ "kind": "plane", "valid": false, "axioms": to_value(&r) }), false)
            }
        },
        other => return Err(Error::input(format!("unknown file type `.{other}`"))),
    })
}

fn lsq_rows(text: &str) -> Option<Vec<Vec<usize>>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let n: usize = lines.next()?.trim().parse().ok()?;
    (0..n)
        .map(|_| lines.next()?.split_whitespace().map(|t| t.parse().ok()).collect())
        .collect()
}

fn pln_incidence(text: &str) -> Result<crate::plane::Incidence> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let head: Vec<usize> = lines
        .next()
        .unwrap_or("")
        .split_whitespace()
        .filter_map(|t| t.parse().ok())
        .collect();
    let np = head.first().copied().unwrap_or(0);
    let rows = lines.map(|l| l.split_whitespace().filter_map(|t| t.parse().ok()).collect()).collect();
    crate::plane::Incidence::new(np, rows)
}

fn matroid_report(m: &Matroid3, circuits: bool, catalog: Option<BTreeSet<Vec<crate::matroid::Element>>>) -> Value {
    let name = |i: usize| m.elements()[i].to_string();
    let mut v = json!({
        "ground_set": to_value(&m.elements()),
        "rank": m.total_rank(),
        "parallel_pairs": m.parallel_pairs().iter().map(|&(a, b)| [name(a), name(b)]).collect::<Vec<_>>(),
        "dependent_triples": m.dependent_triples().iter().map(|t| t.map(name)).collect::<Vec<_>>(),
    });
    if circuits {
        let cs = m.circuit_elements();
        v["circuits"] = to_value(&cs);
        if let Some(cat) = catalog {
            v["catalog_agrees"] = json!(cat == cs);
        }
    }
    v
}

fn load_plane(plane: &Option<PathBuf>, field: Option<usize>, inputs: &mut Inputs) -> Result<(Plane, Value)> {
    match (plane, field) {
        (Some(path), None) => {
            let p = io::parse_pln(&inputs.read(path)?)?;
            Ok((p, json!({ "file": path.display().to_string() })))
        }
        (None, Some(q)) => Ok((plane_from_ternary(&field_ring(q, None)?)?, json!({ "field": q }))),
        _ => Err(Error::input("give exactly one of --plane and --field")),
    }
}

fn witness_value(w: &EmbeddingWitness, extra_check: Option<bool>) -> Value {
    let mut v = to_value(w);
    v["table"] = w
        .elements
        .iter()
        .zip(&w.images)
        .zip(&w.image_labels)
        .map(|((e, i), l)| json!([e.to_string(), i, l]))
        .collect();
    if let Some(ok) = extra_check {
        v["rechecked"] = json!(ok);
    }
    v
}

/// Compares the mode's matroid with the matroid of the image points.
fn recheck(q: &Quasigroup, point_plane: &Plane, w: &EmbeddingWitness) -> Result<bool> {
    let omega = crate::biased::expansion_from_quasigroup(q);
    let m = match w.mode {
        WitnessMode::FrameLines | WitnessMode::FramePointsDual => frame_matroid(&omega, true)?,
        _ => lift_matroid(&omega, true)?,
    };
    let img = matroid_of_points(point_plane, &w.images)?;
    Ok(img.total_rank() == m.total_rank() && img.dependent_triples() == m.dependent_triples())
}

fn witnesses(q: &Quasigroup, point_plane: &Plane, ws: &[EmbeddingWitness], verify: bool) -> Result<Vec<Value>> {
    ws.iter()
        .map(|w| {
            let extra = if verify { Some(recheck(q, point_plane, w)?) } else { None };
            Ok(witness_value(w, extra))
        })
        .collect()
}

fn run_command(cli: &Cli, inputs: &mut Inputs) -> Result<(Value, i32)> {
    let opts = |all: bool| SweepOptions { jobs: cli.jobs.max(1), all };
    match &cli.command {
        Command::Validate { file } => {
            let (v, ok) = validate(file, inputs)?;
            Ok((v, if ok { 0 } else { 1 }))
        }
        Command::Thicken { file, output } => {
            let g = io::parse_bg3(&inputs.read(file)?)?;
            let res = thicken(&g)?;
            let text = io::write_bg3(&res.expansion);
            if let Some(out) = output {
                write_file(out, &text)?;
            }
            let mut v = to_value(&res);
            v["bound_holds"] = json!(res.bound.is_none_or(|b| res.gamma <= b));
            v["expansion_bg3"] = json!(text);
            Ok((v, 0))
        }
        Command::Plane { field, ext, from_ternary, output } => {
            let tr = match (field, from_ternary) {
                (Some(q), None) => field_ring(*q, *ext)?,
                (None, Some(path)) => io::parse_trn(&inputs.read(path)?)?,
                _ => return Err(Error::input("give --field or --from-ternary")),
            };
            let p = plane_from_ternary(&tr)?;
            let text = io::write_pln(&p);
            if let Some(out) = output {
                write_file(out, &text)?;
            }
            Ok((json!({ "order": p.order(), "points": p.n_points(), "lines": p.n_lines(), "pln": text }), 0))
        }
        Command::Coordinatize { file, quadrangle, output } => {
            let p = io::parse_pln(&inputs.read(file)?)?;
            let [u, v, o, e] = quadrangle[..] else {
                return Err(Error::input("--quadrangle takes four points"));
            };
            if [u, v, o, e].iter().any(|&x| x >= p.n_points()) {
                return Err(Error::input("quadrangle point out of range"));
            }
            let c = ternary_from_quadrangle(&p, &Quadrangle { u, v, o, e })?;
            let text = io::write_trn(&c.ring);
            if let Some(out) = output {
                write_file(out, &text)?;
            }
            let axioms = verify_axioms(&c.ring);
            Ok((
                json!({
                    "order": c.ring.order(),
                    "axioms": to_value(&axioms),
                    "linear": is_linear(&c.ring).linear,
                    "point_labels": c.point_labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                    "line_labels": c.line_labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                    "trn": text,
                }),
                0,
            ))
        }
        Command::Matroid { file, kind, circuits } => {
            let g = io::parse_bg3(&inputs.read(file)?)?;
            let (m, cat) = match kind {
                MatroidKind::G => (frame_matroid(&g, false)?, frame_circuit_catalog(&g, false)),
                MatroidKind::Gfull => (frame_matroid(&g, true)?, frame_circuit_catalog(&g, true)),
                MatroidKind::L => (lift_matroid(&g, false)?, lift_circuit_catalog(&g, false)),
                MatroidKind::L0 => (lift_matroid(&g, true)?, lift_circuit_catalog(&g, true)),
            };
            Ok((matroid_report(&m, *circuits, Some(cat)), 0))
        }
        Command::Embed { mode, plane, field, quasigroup, all, verify } => {
            let (p, plane_desc) = load_plane(plane, *field, inputs)?;
            let q = io::parse_lsq(&inputs.read(quasigroup)?)?.quasigroup;
            let o = opts(*all);
            let mut report = json!({ "mode": mode_name(*mode), "plane": plane_desc, "plane_order": p.order(), "quasigroup_order": q.order() });
            let present = match mode {
                EmbedMode::Frame => {
                    let ws = decide_frame_with(&q, &p, &o)?;
                    report["witnesses"] = json!(witnesses(&q, &dual_plane(&p), &ws, *verify)?);
                    !ws.is_empty()
                }
                EmbedMode::FramePoints => {
                    let ws = decide_frame_points_with(&q, &p, &o)?;
                    report["witnesses"] = json!(witnesses(&q, &p, &ws, *verify)?);
                    !ws.is_empty()
                }
                EmbedMode::Lift => {
                    let ws = decide_lift_with(&q, &p, &o)?;
                    report["witnesses"] = json!(witnesses(&q, &p, &ws, *verify)?);
                    !ws.is_empty()
                }
                EmbedMode::Planar => {
                    let r = decide_planar(&q, &p, &o)?;
                    let d = dual_plane(&p);
                    report["trivial"] = json!(r.trivial);
                    report["points_in_plane"] = json!(r.points_in_plane);
                    report["points_in_dual"] = json!(r.points_in_dual);
                    report["lift_points"] = json!(witnesses(&q, &p, &r.lift_points, *verify)?);
                    report["frame_points"] = json!(witnesses(&q, &p, &r.frame_points, *verify)?);
                    report["frame_lines"] = json!(witnesses(&q, &d, &r.frame_lines, *verify)?);
                    report["lift_lines"] = json!(witnesses(&q, &d, &r.lift_lines, *verify)?);
                    r.points_in_plane || r.points_in_dual
                }
            };
            report["verdict"] = json!(if present { "yes" } else { "no" });
            Ok((report, if present { 0 } else { 1 }))
        }
        Command::Selftest { only } => {
            let mut ctx = selftest::Context { opts: opts(false), ..Default::default() };
            let ids: Vec<u8> = if only.is_empty() { selftest::CRITERIA.iter().map(|c| c.0).collect() } else { only.clone() };
            if let Some(bad) = ids.iter().find(|&&i| !(1..=9).contains(&i)) {
                return Err(Error::input(format!("no criterion {bad}")));
            }
            let results: Vec<_> = ids.iter().map(|&i| selftest::run_criterion(i, &mut ctx)).collect();
            let pass = results.iter().all(|r| r.pass);
            let lines: Vec<String> = results.iter().map(|r| r.to_string()).collect();
            let mut values = to_value(&results);
            if !cli.timing {
                for r in values.as_array_mut().expect("list") {
                    r.as_object_mut().expect("object").remove("seconds");
                }
            }
            Ok((json!({ "lines": lines, "results": values, "all_pass": pass }), if pass { 0 } else { 1 }))
        }
    }
}

fn mode_name(m: EmbedMode) -> &'static str {
    match m {
        EmbedMode::Frame => "frame",
        EmbedMode::FramePoints => "frame-points",
        EmbedMode::Lift => "lift",
        EmbedMode::Planar => "planar",
    }
}

fn echo(cli: &Cli) -> Value {
    let name = match cli.command {
        Command::Validate { .. } => "validate",
        Command::Thicken { .. } => "thicken",
        Command::Plane { .. } => "plane",
        Command::Coordinatize { .. } => "coordinatize",
        Command::Matroid { .. } => "matroid",
        Command::Embed { .. } => "embed",
        Command::Selftest { .. } => "selftest",
    };
    json!({ "name": name, "jobs": cli.jobs })
}

/// Runs a parsed command line and assembles the report.
pub fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let mut inputs = Inputs(Vec::new());
    let result = run_command(cli, &mut inputs);
    let (mut report, code) = match result {
        Ok((v, code)) => (json!({ "result": v }), code),
        Err(e) => {
            let code = if matches!(e, Error::Internal(_)) { 3 } else { 2 };
            let mut err = json!({ "message": e.to_string() });
            if let Error::Parse { pos, .. } = &e {
                err["line"] = json!(pos.line);
                err["column"] = json!(pos.column);
            }
            (json!({ "error": err }), code)
        }
    };
    report["command"] = echo(cli);
    report["inputs"] = Value::Array(inputs.0);
    report["exit_code"] = json!(code);
    if cli.timing {
        report["seconds"] = json!(start.elapsed().as_secs_f64());
    }
    Outcome { report, code }
}

/// Parses `args`, runs, prints the report and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = run(&cli);
    println!("{}", serde_json::to_string_pretty(&out.report).expect("json"));
    out.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let cli = Cli::try_parse_from(std::iter::once("qplane").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    #[test]
    fn embed_lift_fano() {
        let dir = tempfile::tempdir().unwrap();
        let z2 = dir.path().join("z2.lsq");
        std::fs::write(&z2, "2\n0 1\n1 0\n").unwrap();
        let out = run_args(&["embed", "--mode", "lift", "--field", "2", "--quasigroup", z2.to_str().unwrap(), "--verify"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.report["result"]["verdict"], "yes");
        let w = &out.report["result"]["witnesses"][0];
        assert_eq!(w["rechecked"], true);
        assert_eq!(w["images"].as_array().unwrap().len(), 7);
        let out = run_args(&["embed", "--mode", "frame-points", "--field", "2", "--quasigroup", z2.to_str().unwrap()]);
        assert_eq!(out.code, 1);
    }

    #[test]
    fn parse_errors_exit_two_with_position() {
        let dir = tempfile::tempdir().unwrap();
        let bad = dir.path().join("bad.bg3");
        std::fs::write(&bad, "1 1 1\n0 0 0\nT 0 0 x\n").unwrap();
        let out = run_args(&["validate", bad.to_str().unwrap()]);
        assert_eq!(out.code, 2);
        assert_eq!(out.report["error"]["line"], 3);
        assert_eq!(out.report["error"]["column"], 7);
        let out = run_args(&["validate", "/nonexistent/x.lsq"]);
        assert_eq!(out.code, 2);
    }

    #[test]
    fn validate_reports_negative_results() {
        let dir = tempfile::tempdir().unwrap();
        let sq = dir.path().join("bad.lsq");
        std::fs::write(&sq, "2\n0 1\n0 1\n").unwrap();
        let out = run_args(&["validate", sq.to_str().unwrap()]);
        assert_eq!(out.code, 1, "{}", out.report);
        let g = dir.path().join("theta.bg3");
        std::fs::write(&g, "2 1 1\n0 0 0\nT 0 0 0\nT 1 0 0\n").unwrap();
        let out = run_args(&["validate", g.to_str().unwrap()]);
        assert_eq!(out.code, 1);
        assert_eq!(out.report["result"]["valid"], false);
    }

    #[test]
    fn deterministic_without_timing() {
        let dir = tempfile::tempdir().unwrap();
        let g = dir.path().join("g.bg3");
        std::fs::write(&g, "2 2 1\n1 0 0\nT 0 0 0\n").unwrap();
        let a = run_args(&["thicken", g.to_str().unwrap()]).report.to_string();
        let b = run_args(&["thicken", g.to_str().unwrap()]).report.to_string();
        assert_eq!(a, b);
        assert!(!a.contains("seconds"));
    }
}
