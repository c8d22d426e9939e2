use std::path::PathBuf;

use serde_json::{json, Value};

use super::parse::{parse_combination, parse_presentation, serialize_presentation};
use crate::error::{Error, Result};
use crate::exact::format_rational;
use crate::opoly::Presentation;
use crate::rewrite::GroebnerData;
use crate::series::{self, RationalSeries};
use crate::tree::OrderSpec;
use crate::{cobar, dual, presets, rewrite, suite, veronese};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    None,
    Preset(String),
    File(PathBuf),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VeroneseMode {
    Naive,
    Generated,
    Quadratic,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SeriesOp {
    /// Lagrange inversion of explicit coefficients (or the mock series).
    Invert { coeffs: Option<String>, order: usize },
    Gk { order: usize },
    Positivity { coeffs: Option<String>, order: usize },
    Recurrence { upto: usize },
    Ratios { n: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Dims { max_arity: usize },
    Gb { max_arity: usize, max_weight: Option<usize> },
    NormalForm { expr: String },
    Veronese { mode: VeroneseMode, d: usize, max_arity: usize },
    Dual { max_arity: usize },
    Pure { k: usize, max_arity: usize },
    Cobar { max_arity: usize, pure_cycle: Option<usize> },
    Series(SeriesOp),
    PresetList,
    PresetDump { name: String },
    PaperSuite { criteria: Vec<usize> },
}

impl Command {
    pub fn name(&self) -> String {
        match self {
            Command::Dims { .. } => "dims".into(),
            Command::Gb { .. } => "gb".into(),
            Command::NormalForm { .. } => "normal-form".into(),
            Command::Veronese { mode, .. } => format!("veronese {}", mode_name(*mode)),
            Command::Dual { .. } => "dual".into(),
            Command::Pure { .. } => "pure".into(),
            Command::Cobar { .. } => "cobar".into(),
            Command::Series(op) => format!(
                "series {}",
                match op {
                    SeriesOp::Invert { .. } => "invert",
                    SeriesOp::Gk { .. } => "gk",
                    SeriesOp::Positivity { .. } => "positivity",
                    SeriesOp::Recurrence { .. } => "recurrence",
                    SeriesOp::Ratios { .. } => "ratios",
                }
            ),
            Command::PresetList => "preset list".into(),
            Command::PresetDump { .. } => "preset dump".into(),
            Command::PaperSuite { .. } => "paper-suite".into(),
        }
    }
}

fn mode_name(m: VeroneseMode) -> &'static str {
    match m {
        VeroneseMode::Naive => "naive",
        VeroneseMode::Generated => "generated",
        VeroneseMode::Quadratic => "quadratic",
    }
}

#[derive(Clone, Debug)]
pub struct Invocation {
    pub command: Command,
    pub input: Input,
    pub order: Option<String>,
    pub format: Format,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

struct Report {
    input: Value,
    order_spec: Value,
    bounds: Value,
    result: Value,
    provenance: Value,
    failed: bool,
}

impl Report {
    fn new(result: Value) -> Self {
        Report {
            input: Value::Null,
            order_spec: Value::Null,
            bounds: Value::Null,
            result,
            provenance: Value::Null,
            failed: false,
        }
    }
}

pub fn run(inv: &Invocation) -> Outcome {
    match execute(inv) {
        Ok(r) => {
            let doc = json!({
                "command": inv.command.name(),
                "input": r.input,
                "order_spec": r.order_spec,
                "bounds": r.bounds,
                "result": r.result,
                "provenance": r.provenance,
            });
            let stdout = match inv.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&doc).expect("report serializes")),
                Format::Tsv => tsv(&doc),
            };
            Outcome {
                code: if r.failed { EXIT_ASSERTION } else { EXIT_OK },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// One `path<TAB>value` line per scalar leaf.
fn tsv(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, x, out);
                }
            }
            Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let cells: Vec<String> = a.iter().map(scalar).collect();
                out.push_str(&format!("{prefix}\t{}\n", cells.join("\t")));
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}.{i}"), x, out);
                }
            }
            _ => out.push_str(&format!("{prefix}\t{}\n", scalar(v))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.replace('\t', " ").replace('\n', "\\n"),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

fn load(inv: &Invocation) -> Result<Presentation> {
    let mut p = match &inv.input {
        Input::Preset(name) => presets::preset(name)?,
        Input::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
            parse_presentation(&text)?
        }
        Input::None => return Err(Error::Precondition("this command needs --preset or --file".into())),
    };
    if let Some(o) = &inv.order {
        p.order = OrderSpec::parse(o)?;
    }
    Ok(p)
}

fn input_value(inv: &Invocation) -> Value {
    match &inv.input {
        Input::None => Value::Null,
        Input::Preset(n) => json!({ "preset": n }),
        Input::File(f) => json!({ "file": f.display().to_string() }),
    }
}

fn provenance(gb: &GroebnerData) -> Value {
    json!({
        "groebner_bound": gb.bound,
        "complete_within_bound": true,
        "basis_size": gb.basis.len(),
        "spolys_processed": gb.spolys_processed,
    })
}

fn with_presentation(inv: &Invocation, p: &Presentation, mut r: Report) -> Report {
    r.input = input_value(inv);
    r.order_spec = Value::String(p.order.name());
    r
}

fn execute(inv: &Invocation) -> Result<Report> {
    let limit = crate::linalg::default_limit();
    match &inv.command {
        Command::Dims { max_arity } => {
            let p = load(inv)?;
            let gb = veronese::gb_up_to(&p, *max_arity, None)?;
            let mut r = Report::new(json!(gb.dims(*max_arity)?));
            r.bounds = json!({ "max_arity": max_arity });
            r.provenance = provenance(&gb);
            Ok(with_presentation(inv, &p, r))
        }
        Command::Gb { max_arity, max_weight } => {
            let p = load(inv)?;
            let gb = veronese::gb_up_to(&p, *max_arity, *max_weight)?;
            let mut r = Report::new(json!(gb.text_basis()));
            r.bounds = json!({ "max_arity": max_arity, "max_weight": gb.bound.max_weight });
            r.provenance = provenance(&gb);
            Ok(with_presentation(inv, &p, r))
        }
        Command::NormalForm { expr } => {
            let p = load(inv)?;
            let w = parse_combination(expr, &p.gens)?;
            let poly = p.written_to_poly(&w)?;
            let arity = poly.arity().unwrap_or(1);
            let gb = veronese::gb_up_to(&p, arity, None)?;
            let nf = gb.normal_form(&poly)?;
            let text = if nf.is_zero() { "0".to_string() } else { nf.text(gb.gens(), &gb.order) };
            let mut r = Report::new(json!({ "normal_form": text, "is_zero": nf.is_zero() }));
            r.bounds = json!({ "max_arity": arity });
            r.provenance = provenance(&gb);
            Ok(with_presentation(inv, &p, r))
        }
        Command::Veronese { mode, d, max_arity } => {
            let p = load(inv)?;
            let gb = veronese::gb_up_to(&p, *max_arity, None)?;
            let result = match mode {
                VeroneseMode::Naive => json!(veronese::naive_dims_from(&gb, *d, *max_arity)?),
                VeroneseMode::Generated => json!(veronese::suboperad_dims_from(&gb, *d, *max_arity, limit)?),
                VeroneseMode::Quadratic => {
                    let q = veronese::quadratic_veronese(&p, *d)?;
                    json!({
                        "generators": q.gens.iter().map(|g| g.id.clone()).collect::<Vec<_>>(),
                        "relations": q.relations.len(),
                        "presentation": serialize_presentation(&q),
                    })
                }
            };
            let mut r = Report::new(result);
            r.bounds = json!({ "max_arity": max_arity, "d": d });
            r.provenance = provenance(&gb);
            Ok(with_presentation(inv, &p, r))
        }
        Command::Dual { max_arity } => {
            let p = load(inv)?;
            let dp = dual::quadratic_dual(&p)?;
            let mut r = Report::new(json!({
                "convention": dp.convention,
                "dims": rewrite::dims(&dp.presentation, *max_arity)?,
                "presentation": serialize_presentation(&dp.presentation),
            }));
            r.bounds = json!({ "max_arity": max_arity });
            Ok(with_presentation(inv, &p, r))
        }
        Command::Pure { k, max_arity } => {
            let p = load(inv)?;
            let dp = dual::pure_homotopy(&p, *k)?;
            let mut r = Report::new(json!({
                "convention": dp.convention,
                "dims": rewrite::dims(&dp.presentation, *max_arity)?,
                "presentation": serialize_presentation(&dp.presentation),
            }));
            r.bounds = json!({ "max_arity": max_arity, "k": k });
            Ok(with_presentation(inv, &p, r))
        }
        Command::Cobar { max_arity, pure_cycle } => {
            if let Some(n) = pure_cycle {
                let rep = cobar::pure_cycle_report(*n, inv.seed)?;
                let mut r = Report::new(serde_json::to_value(&rep).map_err(json_err)?);
                r.input = json!({ "preset": rep.source });
                r.bounds = json!({ "boundary_arity": rep.boundary_arity, "cycle_arity": rep.cycle_arity });
                r.provenance = json!({ "seed": inv.seed });
                return Ok(r);
            }
            let p = load(inv)?;
            let tables = cobar::composition_tables(&p, *max_arity)?;
            let mut out = Vec::new();
            for a in 2..=*max_arity {
                out.push(serde_json::to_value(tables.homology_ranks(a)?).map_err(json_err)?);
            }
            let mut r = Report::new(Value::Array(out));
            r.bounds = json!({ "max_arity": max_arity });
            Ok(with_presentation(inv, &p, r))
        }
        Command::Series(op) => series_command(inv, op),
        Command::PresetList => Ok(Report::new(json!(presets::shipped()))),
        Command::PresetDump { name } => {
            let mut r = Report::new(Value::String(presets::preset_text(name)?));
            r.input = json!({ "preset": name });
            Ok(r)
        }
        Command::PaperSuite { criteria } => {
            let ids: Vec<usize> = if criteria.is_empty() { (1..=10).collect() } else { criteria.clone() };
            let results = suite::run_suite(&ids, inv.seed)?;
            let failed = results.iter().any(|c| !c.pass);
            let mut r = Report::new(serde_json::to_value(&results).map_err(json_err)?);
            r.provenance = json!({ "seed": inv.seed, "known_unattainable": suite::KNOWN_UNATTAINABLE });
            r.failed = failed;
            Ok(r)
        }
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Precondition(format!("serialization failed: {e}"))
}

fn series_text(s: &RationalSeries) -> Vec<String> {
    s.coeffs.iter().map(format_rational).collect()
}

fn source_series(inv: &Invocation, coeffs: &Option<String>, order: usize) -> Result<(RationalSeries, Value)> {
    if let Some(c) = coeffs {
        return Ok((RationalSeries::parse(c)?, json!({ "coefficients": c })));
    }
    match &inv.input {
        Input::None => Ok((series::mock_series(order), json!({ "series": "t - t^3/6 + t^5/120" }))),
        _ => {
            let p = load(inv)?;
            let (dims, step) = vanishing_dims(&p, order)?;
            let f = series::egf_from_dims(&dims, &series::SignMode::Alternating(step))?;
            let nonzero = dims.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
            Ok((f, json!({ "preset_or_file": input_value(inv), "dims": &dims[..nonzero], "step": step })))
        }
    }
}

/// Dimensions up to `order` for generators of one arity k. Weight w lives in
/// arity 1 + w(k-1); once a weight level vanishes every higher one does.
fn vanishing_dims(p: &Presentation, order: usize) -> Result<(Vec<u64>, usize)> {
    let k = match p.gens.first() {
        Some(g) if p.gens.iter().all(|h| h.arity == g.arity) && g.arity >= 2 => g.arity,
        _ => return Err(Error::Unsupported("series from a preset needs generators of one arity >= 2".into())),
    };
    let step = k - 1;
    let mut dims = vec![0u64; order];
    let mut top = 1;
    while top + step <= order {
        top += step;
        let d = rewrite::dims(p, top)?;
        dims[..top].copy_from_slice(&d);
        if d[top - 1] == 0 {
            break;
        }
    }
    Ok((dims, step))
}

fn series_command(inv: &Invocation, op: &SeriesOp) -> Result<Report> {
    let mut r = match op {
        SeriesOp::Invert { coeffs, order } => {
            let (f, src) = source_series(inv, coeffs, *order)?;
            let g = series::lagrange_invert(&f, *order)?;
            let mut r = Report::new(json!({
                "inverse": series_text(&g),
                "first_negative": series::positivity_scan(&g),
            }));
            r.input = src;
            r.bounds = json!({ "order": order });
            r
        }
        SeriesOp::Gk { order } => {
            let p = load(inv)?;
            let rep = series::gk_check(&p, *order)?;
            let mut r = Report::new(serde_json::to_value(&rep).map_err(json_err)?);
            r.input = input_value(inv);
            r.bounds = json!({ "order": order });
            r.provenance = json!({ "convention": series::GK_CONVENTION });
            r
        }
        SeriesOp::Positivity { coeffs, order } => {
            let (f, src) = source_series(inv, coeffs, *order)?;
            let g = series::lagrange_invert(&f, *order)?;
            let first = series::positivity_scan(&g);
            let mut r = Report::new(json!({
                "first_negative": first.map_or(Value::String("none".into()), |n| json!(n)),
            }));
            r.input = src;
            r.bounds = json!({ "order": order });
            r
        }
        SeriesOp::Recurrence { upto } => {
            let spec = series::an_recurrence();
            let rep = series::recurrence_verify(series::inverse_coefficient_an, &spec, spec.order, *upto)?;
            let mut r = Report::new(json!({
                "recurrence": spec,
                "checked_from": spec.order,
                "checked_to": upto,
                "violations": rep.violations,
            }));
            r.bounds = json!({ "upto": upto });
            r
        }
        SeriesOp::Ratios { n } => {
            let rep = series::ratio_report(*n)?;
            let mut r = Report::new(serde_json::to_value(&rep).map_err(json_err)?);
            r.bounds = json!({ "n": n });
            r
        }
    };
    if r.input.is_null() {
        r.input = input_value(inv);
    }
    Ok(r)
}
