use std::fs;
use std::io::Write;
use std::path::Path;

use flopcalc::catalog::{self, lookup, universal_flopping_algebra, FlopCatalogEntry};
use flopcalc::contraction::{contraction_report, gv_invariants};
use flopcalc::flops::{
    hypersurface_with, matrix_factorization_from_gb, specialize, verify_representation, verify_superpotential, FlopData, ParamMap,
    Representation,
};
use flopcalc::ncgb::{truncated_groebner, DEFAULT_BUDGET};
use flopcalc::pathalg::{parse_presentation, AlgebraPresentation};
use num_rational::BigRational;
use serde_json::json;

use crate::cli::{Cli, Command, Source, BUDGET_ENV};
use crate::error::CliError;
use crate::output::Sink;

/// Default budget once `--heavy` is given.
pub const HEAVY_BUDGET: u64 = 500_000_000;

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load(source: &Source) -> Result<AlgebraPresentation> {
    match (&source.input, &source.builtin) {
        (Some(path), _) => parse_presentation(&read(path)?).map_err(|e| CliError::parse(path.display().to_string(), e)),
        (None, Some(name)) => Ok(lookup(name)?),
        (None, None) => Err(CliError::Usage("one of --in or --builtin is required".into())),
    }
}

fn load_map(path: &Path) -> Result<ParamMap> {
    ParamMap::parse(&read(path)?).map_err(|e| CliError::parse(path.display().to_string(), e))
}

/// Flag, then environment, then the default for the mode.
pub fn resolve_budget(flag: Option<u64>, env: Option<&str>, heavy: bool) -> Result<u64> {
    let b = match (flag, env) {
        (Some(b), _) => b,
        (None, Some(s)) => s.trim().parse().map_err(|_| CliError::Usage(format!("{BUDGET_ENV}='{s}' is not a step count")))?,
        (None, None) if heavy => HEAVY_BUDGET,
        (None, None) => DEFAULT_BUDGET,
    };
    if b == 0 {
        return Err(CliError::Usage("budget must be positive".into()));
    }
    Ok(b)
}

fn cost_class(l: u8) -> &'static str {
    match l {
        4 => "tens of seconds",
        5 => "minutes",
        _ => "hours or more",
    }
}

fn flop_entry(length: u8, heavy: bool) -> Result<FlopCatalogEntry> {
    let e = universal_flopping_algebra(length)?;
    if e.is_heavy() && !heavy {
        return Err(CliError::Usage(format!(
            "length {length} is heavy (expected cost: {}); pass --heavy to run it",
            cost_class(length)
        )));
    }
    Ok(e)
}

fn flop_algebra(e: &FlopCatalogEntry, map: Option<&Path>) -> Result<AlgebraPresentation> {
    match map {
        Some(m) => Ok(specialize(&e.presentation, &load_map(m)?)?),
        None => Ok(e.presentation.clone()),
    }
}

fn parse_scale(items: &[String]) -> Result<Vec<(String, BigRational)>> {
    items
        .iter()
        .map(|s| {
            let (a, q) = s.split_once('=').ok_or_else(|| CliError::Usage(format!("--scale expects ARROW=Q, got '{s}'")))?;
            let q: BigRational = q.trim().parse().map_err(|_| CliError::Usage(format!("'{}' is not a rational number", q.trim())))?;
            Ok((a.trim().to_string(), q))
        })
        .collect()
}

pub fn run<W: Write>(cli: &Cli, budget: u64, out: &mut Sink<W>) -> Result<()> {
    out.header(cli.command.name())?;
    match &cli.command {
        Command::Catalog { name: None } => {
            for n in catalog::names() {
                out.record("entry", json!({ "name": n }), n)?;
            }
        }
        Command::Catalog { name: Some(n) } => {
            let alg = lookup(n)?;
            let text = alg.to_text();
            out.record("presentation", json!({ "name": n, "text": text }), &text)?;
        }
        Command::Gb { source, degree } => {
            let alg = load(source)?;
            let gb = truncated_groebner(&alg, &alg.order, *degree, budget)?;
            let q = alg.quiver();
            let rules = gb.rules();
            out.record(
                "basis",
                json!({ "truncation": gb.truncation_degree(), "complete": gb.is_complete(), "rules": rules.len(), "steps": gb.steps() }),
                gb.serialize(),
            )?;
            if out_is_json(cli) {
                for (lead, tail) in rules {
                    out.record("rule", json!({ "lead": q.show_path(&lead), "tail": tail.show(&alg.order) }), "")?;
                }
            }
        }
        Command::Nf { source, element, degree } => {
            let alg = load(source)?;
            let x = alg.parse_element(element).map_err(|e| CliError::parse("--element", e))?;
            let gb = truncated_groebner(&alg, &alg.order, *degree, budget)?;
            let n = gb.normal_form(&x)?;
            let shown = if n.is_zero() { "0".to_string() } else { n.show(&alg.order) };
            out.record("normal_form", json!({ "input": element, "value": shown, "complete": gb.is_complete() }), &shown)?;
        }
        Command::Hypersurface { length, raw, nice_basis, map, degree } => {
            let e = flop_entry(*length, cli.heavy)?;
            let alg = flop_algebra(&e, map.as_deref())?;
            let h = hypersurface_with(&alg, &FlopData::from_entry(&e), degree.unwrap_or(e.gb_degree), budget)?;
            let (form, ring, f) = if *nice_basis {
                let nb = e.nice_basis.as_ref().ok_or_else(|| CliError::Usage(format!("length {length} has no recorded change of basis")))?;
                let (ring, f) = nb.apply(&h.ring, &h.equation)?;
                ("nice", ring, f)
            } else if *raw {
                ("raw", h.ring.clone(), h.raw_equation())
            } else {
                ("completed", h.ring.clone(), h.equation.clone())
            };
            let shown = ring.show_poly(&f);
            out.record(
                "hypersurface",
                json!({ "length": length, "form": form, "variables": ring.names(), "equation": shown }),
                format!("f = {shown}"),
            )?;
        }
        Command::Mf { length, check_only, map, degree } => {
            let e = flop_entry(*length, cli.heavy)?;
            let alg = flop_algebra(&e, map.as_deref())?;
            let gb = truncated_groebner(&alg, &alg.order, degree.unwrap_or(e.gb_degree), budget)?;
            let mf = matrix_factorization_from_gb(&gb, &FlopData::from_entry(&e))?;
            let ring = mf.ring();
            if !check_only {
                let rows = mf.c.show_rows(ring);
                let mut text = format!("g = {}\nC =\n", ring.show_poly(mf.g()));
                for r in &rows {
                    text.push_str(&format!("  [{}]\n", r.join(", ")));
                }
                out.record(
                    "matrix_factorization",
                    json!({ "length": length, "size": mf.size(), "variables": ring.names(), "g": ring.show_poly(mf.g()), "rows": rows }),
                    text,
                )?;
            }
            let ok = mf.check_factorization();
            out.record("check", json!({ "name": "C^2 = g*I", "passed": ok }), format!("C^2 = g*I: {}", if ok { "ok" } else { "FAIL" }))?;
            if !ok {
                return Err(CliError::CheckFailed("C^2 != g*I".into()));
            }
        }
        Command::Specialize { source, map } => {
            let alg = load(source)?;
            let s = specialize(&alg, &load_map(map)?)?;
            let text = s.to_text();
            out.record("presentation", json!({ "name": s.name, "text": text }), &text)?;
        }
        Command::Superpotential { source, phi, scale, degree } => {
            let alg = load(source)?;
            let text = read(phi)?;
            let w = alg.parse_element(text.trim()).map_err(|e| CliError::parse(phi.display().to_string(), e))?;
            let r = verify_superpotential(&alg, &w, *degree, &parse_scale(scale)?, budget)?;
            if let Some(n) = r.nil_length {
                out.record("mode", json!({ "local": true, "nil_length": n }), format!("local check modulo paths of length {n}"))?;
            }
            for (a, d) in &r.derivatives {
                out.record("derivative", json!({ "arrow": a, "value": d }), format!("d/d{a} = {d}"))?;
            }
            checks(out, r.checks.iter().map(|c| (c.name.clone(), c.passed, c.detail.clone())))?;
            if !r.passed() {
                return Err(CliError::CheckFailed("superpotential check failed".into()));
            }
        }
        Command::VerifyRep { source, rep } => {
            let alg = load(source)?;
            let rep = Representation::parse(&read(rep)?).map_err(|e| CliError::parse(rep.display().to_string(), e))?;
            let r = verify_representation(&alg, &rep)?;
            checks(
                out,
                r.checks.iter().map(|c| {
                    let detail = if c.passed { c.relation.clone() } else { {
                        let rows: Vec<String> = c.residual.iter().map(|r| format!("[{}]", r.join(", "))).collect();
                        format!("{} residual {}", c.relation, rows.join(" "))
                    } };
                    (format!("relation {}", c.index + 1), c.passed, detail)
                }),
            )?;
            if !r.passed() {
                return Err(CliError::CheckFailed("representation does not satisfy every relation".into()));
            }
        }
        Command::Contraction { source, vertex, length } => {
            let alg = load(source)?;
            let v = alg
                .quiver()
                .vertices()
                .iter()
                .position(|x| x == vertex)
                .ok_or_else(|| CliError::Usage(format!("no vertex '{vertex}'")))?;
            let r = contraction_report(&alg, v, *length, budget)?;
            out.record(
                "contraction",
                json!({
                    "vertex": vertex,
                    "dim": r.dim,
                    "dim_ab": r.dim_ab,
                    "mode": r.mode.to_string(),
                    "presentation": r.presentation.to_text(),
                }),
                format!("dim = {} ({})\ndim_ab = {}", r.dim, r.mode, r.dim_ab),
            )?;
            gv_records(out, &r.gv_solutions)?;
        }
        Command::Gv { dim, dim_ab, length } => {
            gv_records(out, &gv_invariants(*dim, *dim_ab, *length))?;
        }
    }
    Ok(())
}

fn out_is_json(cli: &Cli) -> bool {
    cli.format == crate::cli::Format::Json
}

fn checks<W: Write>(out: &mut Sink<W>, items: impl Iterator<Item = (String, bool, String)>) -> Result<()> {
    let mut all = true;
    for (name, passed, detail) in items {
        all &= passed;
        let text = format!("{} {name}: {detail}", if passed { "ok  " } else { "FAIL" });
        out.record("check", json!({ "name": name, "passed": passed, "detail": detail }), text)?;
    }
    out.record("summary", json!({ "passed": all }), if all { "all checks passed" } else { "some checks failed" })?;
    Ok(())
}

fn gv_records<W: Write>(out: &mut Sink<W>, sols: &[[u64; 6]]) -> Result<()> {
    if sols.is_empty() {
        out.record("gv_none", json!({}), "GV: no solutions")?;
    }
    for t in sols {
        let last = t.iter().rposition(|&x| x > 0).map_or(1, |i| i + 1);
        let shown: Vec<String> = t[..last].iter().map(u64::to_string).collect();
        out.record("gv", json!({ "n": t }), format!("GV: ({})", shown.join(", ")))?;
    }
    Ok(())
}
