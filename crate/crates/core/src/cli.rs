//! Command line front end.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{CycloProduct, Matrix};
use crate::monodromy::{acampo_charpoly, complex_cohomology_action, jordan_blocks_matrix, jordan_from_graded, weight_filtration, CohomologyMode, GradedCharData, JordanSpectrum, Restrict};
use crate::qspace::{blowup_2d, blowup_3d_quotient, blowup_3d_smooth, Blowup, QuotientType};
use crate::semistable::{build_dual_complex, component_euler, gen_multibranch, riemann_hurwitz_check, LevelB, SemistableComplex};
use crate::steenbrink::{column_exact_solver, cyclo_json, mhs_curve, mhs_surface_partial, MHSReport, SurfaceAux};
use crate::strata::{self, gen_one_branch, gen_two_branch, gen_yls_cusp, gen_yls_two_branch, StratifiedDivisor, ValidatedDivisor};

#[derive(Debug, Parser)]
#[command(name = "qres", version, about = "Q-resolutions, semistable reduction and monodromy of Milnor fibres")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Reject unknown fields in input files.
    #[arg(long, global = true, env = "QRES_STRICT", value_parser = clap::builder::FalseyValueParser::new())]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Args)]
pub struct Input {
    /// JSON file with a stratified divisor or a dual graph.
    pub file: Option<PathBuf>,
    /// Built-in family, e.g. `one-branch:2,3`, `two-branch:2,3,4,1`,
    /// `multibranch:2,3,4,5,6,7`, `yls-cusp:2,3,1,6`, `yls-two-branch:2,3,4,1,2,12`.
    #[arg(long = "gen")]
    pub generator: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalized presentation of a quotient type such as `3:1,2` or `10:1,-3/10:-4,2`.
    Normalize { ty: String },
    /// Weighted blow-up of a surface quotient singularity.
    Blowup2 {
        ty: String,
        #[arg(long)]
        omega: String,
    },
    /// Weighted blow-up of a threefold quotient singularity (`smooth:3` for C^3).
    Blowup3 {
        ty: String,
        #[arg(long)]
        omega: String,
    },
    /// Check a stratified divisor and print its stratum multiplicities.
    Validate(Input),
    /// Dual complex and covering data of the semistable reduction.
    Semistable(Input),
    /// Dual complex in Graphviz format.
    Dualgraph(Input),
    /// Characteristic polynomial of the monodromy.
    Charpoly(Input),
    /// Graded pieces of the limit mixed Hodge structure.
    Mhs {
        #[command(flatten)]
        input: Input,
        /// Surface data: `{"h1": {"E0": null}, "betti": {..}}`.
        #[arg(long)]
        aux: Option<PathBuf>,
    },
    /// Jordan blocks from a matrix, a nilpotent operator or graded characteristic polynomials.
    Jordan { file: PathBuf },
}

enum Loaded {
    Divisor(StratifiedDivisor),
    Graph(LevelB),
}

fn ints(s: &str) -> Result<Vec<i64>> {
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("not an integer: {x:?}")))).collect()
}

fn generate(family: &str) -> Result<Loaded> {
    let (name, args) = family.split_once(':').ok_or_else(|| Error::Parse(format!("expected family:params, got {family:?}")))?;
    let a = ints(args)?;
    let want = |n: usize| -> Result<()> {
        if a.len() == n {
            Ok(())
        } else {
            Err(Error::Parse(format!("{name} takes {n} parameters, got {}", a.len())))
        }
    };
    Ok(match name {
        "one-branch" => {
            want(2)?;
            Loaded::Divisor(gen_one_branch(a[0], a[1])?)
        }
        "two-branch" => {
            want(4)?;
            Loaded::Divisor(gen_two_branch(a[0], a[1], a[2], a[3])?)
        }
        "yls-cusp" => {
            want(4)?;
            Loaded::Divisor(gen_yls_cusp(a[0], a[1], a[2], a[3])?)
        }
        "yls-two-branch" => {
            want(6)?;
            Loaded::Divisor(gen_yls_two_branch(a[0], a[1], a[2], a[3], a[4], a[5])?)
        }
        "multibranch" => {
            if a.len() % 2 != 0 {
                return Err(Error::Parse("multibranch takes pairs p,q".into()));
            }
            Loaded::Graph(gen_multibranch(&a.chunks(2).map(|c| (c[0], c[1])).collect::<Vec<_>>())?)
        }
        _ => return Err(Error::Parse(format!("unknown family {name:?}"))),
    })
}

fn load(input: &Input, strict: bool) -> Result<Loaded> {
    match (&input.file, &input.generator) {
        (Some(_), Some(_)) | (None, None) => Err(Error::Validation("give exactly one of a file or --gen".into())),
        (None, Some(g)) => generate(g),
        (Some(path), None) => {
            let v: Value = serde_json::from_str(&std::fs::read_to_string(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            if v.get("vertices").is_some() {
                serde_json::from_value(v).map(Loaded::Graph).map_err(|e| Error::Validation(format!("schema: {e}")))
            } else {
                strata::from_json_value(v, strict).map(Loaded::Divisor)
            }
        }
    }
}

fn complex_of(l: &Loaded) -> Result<(Option<ValidatedDivisor>, SemistableComplex)> {
    match l {
        Loaded::Divisor(sd) => {
            let v = strata::validate(sd.clone())?;
            let k = build_dual_complex(&v)?;
            k.check()?;
            Ok((Some(v), k))
        }
        Loaded::Graph(g) => {
            let k = g.build()?;
            k.check()?;
            Ok((None, k))
        }
    }
}

fn divisor(l: Loaded) -> Result<ValidatedDivisor> {
    match l {
        Loaded::Divisor(sd) => strata::validate(sd),
        Loaded::Graph(_) => Err(Error::Validation("this command needs a stratified divisor, not a dual graph".into())),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn canonical(c: &CycloProduct) -> String {
    let parts: Vec<String> = c.phi_exponents().iter().map(|(d, e)| format!("{d}: {e}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn blowup_report(b: &Blowup, format: Format) -> String {
    if format == Format::Json {
        let charts: Vec<Value> = b
            .charts
            .iter()
            .map(|c| json!({ "raw": c.raw.to_compact(), "target": c.target.to_compact(), "normalized": c.normalized.to_compact(), "rescale": c.rescale, "substitution": c.substitution }))
            .collect();
        let lines: Vec<Value> = b.exceptional.axis_lines.iter().map(|l| json!({ "axis": l.axis, "transversal": l.transversal.to_compact() })).collect();
        let origins: Vec<String> = b.exceptional.origins.iter().map(QuotientType::to_compact).collect();
        return pretty(&json!({ "omega": b.exceptional.omega, "charts": charts, "exceptional": { "origins": origins, "axis_lines": lines } }));
    }
    let mut s = format!("omega = {:?}\n", b.exceptional.omega);
    for (i, c) in b.charts.iter().enumerate() {
        let _ = writeln!(s, "chart {i}: {} = {} -> {} (rescale {:?})", c.raw, c.target, c.normalized, c.rescale);
    }
    for l in &b.exceptional.axis_lines {
        let _ = writeln!(s, "singular line x{} = 0: transversal {}", l.axis, l.transversal);
    }
    s
}

fn semistable_report(v: Option<&ValidatedDivisor>, k: &SemistableComplex, format: Format) -> Result<String> {
    let mut comps = Vec::new();
    let mut extra = json!({});
    if let Some(v) = v {
        for c in &v.sd.components {
            let e = component_euler(v, c.id)?;
            let mut j = json!({ "id": c.id, "name": c.name, "multiplicity": c.multiplicity, "preimages": e.count, "euler": e.euler });
            if let Some(g) = e.genus {
                j["genus"] = json!(g);
            }
            if v.n() == 1 && v.is_exceptional(c.id) {
                let rh = riemann_hurwitz_check(v, c.id)?;
                if !rh.holds() {
                    return Err(Error::Inconsistent(format!("Riemann-Hurwitz fails on component {}: {} vs {}", c.id, rh.predicted, rh.actual)));
                }
                j["riemann_hurwitz"] = json!(rh.predicted);
            }
            comps.push(j);
        }
        if v.n() == 2 {
            let t2 = k.count(2) as i64;
            let c1 = k.cells[1].iter().filter(|c| c.compact).count() as i64;
            let s0 = k.cells[0].iter().filter(|c| c.exceptional).count() as i64;
            extra = json!({ "fifth_column": [t2, c1, s0], "gr4_dim": column_exact_solver(&[None, Some(t2), Some(c1), Some(s0)])? });
        }
    }
    let coh = complex_cohomology_action(k, Restrict::Exceptional, CohomologyMode::Exact)?;
    let counts: Vec<usize> = (0..=k.n).map(|q| k.count(q)).collect();
    if format == Format::Json {
        let h: Vec<Value> = coh.h.iter().zip(&coh.dims).map(|(d, n)| json!({ "dim": n, "delta": cyclo_json(d) })).collect();
        let mut out = json!({ "n": k.n, "e": k.e, "cells": counts, "components": comps, "exceptional_cohomology": h });
        if let Some(o) = extra.as_object() {
            for (key, val) in o {
                out[key] = val.clone();
            }
        }
        return Ok(pretty(&out));
    }
    let mut s = format!("n = {}, e = {}, cells by dimension {:?}\n", k.n, k.e, counts);
    for c in &comps {
        let _ = write!(s, "{} (id {}): multiplicity {}, {} preimage(s), euler {}", c["name"].as_str().unwrap_or(""), c["id"], c["multiplicity"], c["preimages"], c["euler"]);
        if let Some(g) = c.get("genus") {
            let _ = write!(s, ", genus {g}");
        }
        s.push('\n');
    }
    for (q, (d, n)) in coh.h.iter().zip(&coh.dims).enumerate() {
        let _ = writeln!(s, "H^{q} of the exceptional complex: dim {n}, Delta = {d}");
    }
    if let Some(d) = extra.get("gr4_dim") {
        let _ = writeln!(s, "gr_4 dim {d}");
    }
    Ok(s)
}

fn graph_mhs(k: &SemistableComplex) -> Result<MHSReport> {
    use crate::steenbrink::{GradedPiece, SymbolicCyclo};
    let coh = complex_cohomology_action(k, Restrict::Exceptional, CohomologyMode::Exact)?;
    Ok(MHSReport {
        n: k.n,
        delta: CycloProduct::one(),
        graded: vec![GradedPiece { weight: 0, dim: Some(coh.dims[k.n]), delta: Some(SymbolicCyclo::known(coh.h[k.n].clone())), hodge: None }],
        block_polynomials: BTreeMap::from([(k.n + 1, SymbolicCyclo::known(coh.h[k.n].clone()))]),
        jordan: None,
        notes: vec!["dual graph input: only the weight-0 piece is determined".into()],
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JordanInput {
    #[serde(default)]
    matrix: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    e: Option<u64>,
    #[serde(default)]
    nilpotent: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    center: Option<i64>,
    /// `l -> {m: e}` exponents of `(t^m - 1)` for `Delta_l`.
    #[serde(default)]
    levels: Option<BTreeMap<usize, BTreeMap<u64, i64>>>,
}

fn rat(rows: &[Vec<i64>]) -> Result<Matrix<BigRational>> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Validation("matrix must be square".into()));
    }
    Ok(Matrix::from_fn(n, n, |i, j| BigRational::from_integer(BigInt::from(rows[i][j]))))
}

fn spectrum_json(s: &JordanSpectrum) -> Value {
    Value::Array(s.0.iter().map(|(&(d, l), &c)| json!({ "order": d, "size": l, "count": c })).collect())
}

fn spectrum_text(s: &JordanSpectrum) -> String {
    s.0.iter().map(|(&(d, l), &c)| format!("order {d}, size {l}: {c}\n")).collect()
}

fn jordan(file: &PathBuf, format: Format) -> Result<String> {
    let input: JordanInput = serde_json::from_str(&std::fs::read_to_string(file)?).map_err(|e| Error::Validation(format!("schema: {e}")))?;
    let given = [input.matrix.is_some(), input.nilpotent.is_some(), input.levels.is_some()].iter().filter(|&&b| b).count();
    if given != 1 {
        return Err(Error::Validation("give exactly one of matrix, nilpotent or levels".into()));
    }
    if let Some(m) = &input.matrix {
        let e = input.e.ok_or_else(|| Error::Validation("matrix input needs e".into()))?;
        let s = jordan_blocks_matrix(&rat(m)?, e)?;
        return Ok(if format == Format::Json { pretty(&json!({ "jordan": spectrum_json(&s) })) } else { spectrum_text(&s) });
    }
    if let Some(m) = &input.nilpotent {
        let w = weight_filtration(&rat(m)?, input.center.unwrap_or(0))?;
        if format == Format::Json {
            return Ok(pretty(&json!({ "graded": w.graded, "filtration": w.filtration, "blocks": w.blocks })));
        }
        let mut s = String::new();
        for (l, d) in &w.graded {
            let _ = writeln!(s, "gr_{l}: dim {d}");
        }
        for (l, c) in &w.blocks {
            let _ = writeln!(s, "J_{l} = {c}");
        }
        return Ok(s);
    }
    let levels = input.levels.unwrap_or_default().into_iter().map(|(l, e)| (l, CycloProduct::from_exponents(e))).collect();
    let (polys, spec) = jordan_from_graded(&GradedCharData { levels })?;
    if format == Format::Json {
        let p: serde_json::Map<String, Value> = polys.iter().map(|(l, p)| (l.to_string(), cyclo_json(p))).collect();
        return Ok(pretty(&json!({ "block_polynomials": p, "jordan": spectrum_json(&spec) })));
    }
    let mut s: String = polys.iter().map(|(l, p)| format!("blocks of size {l}: {p}\n")).collect();
    s += &spectrum_text(&spec);
    Ok(s)
}

/// Runs one command and returns its standard output.
pub fn execute(cli: &Cli) -> Result<String> {
    let f = cli.format;
    match &cli.command {
        Command::Normalize { ty } => {
            let t = QuotientType::parse(ty)?;
            let (n, k) = t.normalize();
            Ok(if f == Format::Json {
                pretty(&json!({ "input": t.to_compact(), "normalized": n.to_compact(), "rescale": k, "order": n.order() }))
            } else {
                format!("{t} -> {n} (rescale {k:?})\n")
            })
        }
        Command::Blowup2 { ty, omega } => {
            let w = ints(omega)?;
            let [p, q] = w[..] else { return Err(Error::Parse("omega needs two weights".into())) };
            Ok(blowup_report(&blowup_2d(&QuotientType::parse(ty)?, (p, q))?, f))
        }
        Command::Blowup3 { ty, omega } => {
            let w = ints(omega)?;
            let [p, q, r] = w[..] else { return Err(Error::Parse("omega needs three weights".into())) };
            let t = QuotientType::parse(ty)?;
            let b = if t.is_smooth() { blowup_3d_smooth((p, q, r))? } else { blowup_3d_quotient(&t, (p, q, r))? };
            Ok(blowup_report(&b, f))
        }
        Command::Validate(input) => {
            let sd = match load(input, cli.strict)? {
                Loaded::Divisor(sd) => sd,
                Loaded::Graph(g) => {
                    g.build()?.check()?;
                    return Ok(if f == Format::Json { pretty(&json!({ "valid": true })) } else { "valid dual graph\n".into() });
                }
            };
            let v = strata::validate(sd)?;
            Ok(if f == Format::Json { pretty(&json!({ "valid": true, "m": v.m })) } else { format!("valid; stratum multiplicities {:?}\n", v.m) })
        }
        Command::Semistable(input) => {
            let (v, k) = complex_of(&load(input, cli.strict)?)?;
            if f == Format::Dot {
                return Ok(k.to_dot());
            }
            semistable_report(v.as_ref(), &k, f)
        }
        Command::Dualgraph(input) => Ok(complex_of(&load(input, cli.strict)?)?.1.to_dot()),
        Command::Charpoly(input) => {
            let d = acampo_charpoly(&divisor(load(input, cli.strict)?)?)?;
            Ok(if f == Format::Json { pretty(&cyclo_json(&d)) } else { format!("{d}\ncanonical: {}\n", canonical(&d)) })
        }
        Command::Mhs { input, aux } => {
            let report = match load(input, cli.strict)? {
                Loaded::Graph(g) => graph_mhs(&g.build()?)?,
                Loaded::Divisor(sd) => {
                    let v = strata::validate(sd)?;
                    if v.n() == 1 {
                        mhs_curve(&v)?
                    } else {
                        let path = aux.as_ref().ok_or_else(|| Error::Validation("surface reports need --aux".into()))?;
                        let a: SurfaceAux = serde_json::from_str(&std::fs::read_to_string(path)?).map_err(|e| Error::Validation(format!("aux: {e}")))?;
                        mhs_surface_partial(&v, &a)?
                    }
                }
            };
            Ok(if f == Format::Json { pretty(&report.to_json()) } else { report.to_text() })
        }
        Command::Jordan { file } => jordan(file, f),
    }
}

/// Parses arguments, runs, and returns `(exit code, stdout, stderr)`.
pub fn run<I, S>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return if code == 0 { (0, e.to_string(), String::new()) } else { (1, String::new(), e.to_string()) };
        }
    };
    match execute(&cli) {
        Ok(out) => (0, out, String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
