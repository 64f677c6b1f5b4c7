use std::path::PathBuf;

use anyhow::{bail, Result};
use hypercover_core::json::JsonInt;
use hypercover_core::{
    build_corollary_matrix, build_sn, check_gap_bound, complete_bipartite, coverable_by,
    covering_number, covering_upper_bound, edge_bound, girth, greedy_girth_graph, max_gap,
    plank_witness, project, recover, verify_sensing, width_upper_bound, width_with_direction,
    Budget, Direction, EdgeOrder, Error, IntMatrix, PointSet,
};
use num_bigint::BigInt;
use serde_json::{json, to_value};

use crate::io::{json_ints, load, matrix_csv, parse_ints, write};
use crate::report::RunReport;

/// Largest dimension with an exact width computation.
const EXACT_WIDTH_DIM: usize = 3;

pub struct Ctx {
    pub budget: Budget,
    pub csv: bool,
}

pub enum Output {
    Report(RunReport),
    /// Plain text written instead of a report, for CSV matrix exports.
    Text(String, bool),
}

impl From<RunReport> for Output {
    fn from(r: RunReport) -> Self {
        Output::Report(r)
    }
}

pub fn sn(n: usize) -> Result<RunReport> {
    let set = build_sn(n)?;
    Ok(RunReport::new("sn", json!({ "n": n }), to_value(&set)?))
}

pub fn cover(ctx: &Ctx, input: &PathBuf, max_t: Option<usize>) -> Result<RunReport> {
    let set: PointSet = load(input, "points")?;
    let bound = covering_upper_bound(set.len(), set.dim());
    let inputs = json!({ "input": input, "max_t": max_t });
    match max_t {
        Some(t) => {
            let cert = coverable_by(&set, t, &ctx.budget)?;
            let found = cert.is_some();
            let valid = cert.as_ref().is_none_or(|c| c.validate(&set));
            let outputs = json!({
                "t": t,
                "coverable": found,
                "certificate": cert,
                "upper_bound": bound,
            });
            Ok(RunReport::new("cover", inputs, outputs)
                .check(
                    "coverable",
                    found,
                    if found {
                        format!("covered by at most {t} parallel hyperplanes")
                    } else {
                        format!("no direction gives {t} or fewer hyperplanes")
                    },
                )
                .check(
                    "certificate",
                    valid,
                    "certificate inner products re-checked",
                ))
        }
        None => {
            let (t, cert) = covering_number(&set, &ctx.budget)?;
            let valid = cert.validate(&set);
            let outputs = json!({
                "covering_number": t,
                "certificate": cert,
                "upper_bound": bound,
            });
            Ok(RunReport::new("cover", inputs, outputs)
                .check(
                    "certificate",
                    valid,
                    "certificate inner products re-checked",
                )
                .check(
                    "upper bound",
                    t <= bound,
                    format!("covering number {t} <= max(1, k - n + 1) = {bound}"),
                ))
        }
    }
}

pub fn graph(m: usize, l: usize, ell: usize, complete: bool) -> Result<RunReport> {
    let g = if complete {
        complete_bipartite(m, l)?
    } else {
        greedy_girth_graph(m, l, ell, &EdgeOrder::LeftMajor)?
    };
    let gi = girth(&g);
    let outputs = json!({
        "graph": g,
        "girth": gi,
        "edge_count": g.edges().len(),
        "edge_bound": edge_bound(m + l, ell),
    });
    Ok(RunReport::new(
        "graph",
        json!({ "m": m, "l": l, "ell": ell, "complete": complete }),
        outputs,
    )
    .check(
        "girth",
        gi.exceeds(ell),
        format!("girth {gi} against ell = {ell}"),
    ))
}

pub fn build(ctx: &Ctx, n: usize, ell: usize, out: Option<&PathBuf>) -> Result<Output> {
    let b = build_corollary_matrix(n, ell, &ctx.budget)?;
    if let Some(path) = out {
        let text = if ctx.csv {
            matrix_csv(&b.matrix)
        } else {
            serde_json::to_string_pretty(&b.matrix)? + "\n"
        };
        write(path, &text)?;
    }
    let d = b.matrix.cols();
    let checks = [
        (
            "sensing",
            b.report.verified,
            format!("every {} columns independent", b.report.ell),
        ),
        (
            "girth",
            b.girth.exceeds(ell),
            format!("girth {} against ell = {ell}", b.girth),
        ),
        (
            "sup norm",
            b.report.sup_norm == BigInt::from(2),
            format!("sup norm {}", b.report.sup_norm),
        ),
    ];
    if ctx.csv {
        let pass = checks.iter().all(|c| c.1);
        return Ok(Output::Text(matrix_csv(&b.matrix), pass));
    }
    let mut outputs = to_value(&b)?;
    outputs["d"] = json!(d);
    outputs["edge_margin"] = json!(d as f64 - b.edge_bound);
    let mut report = RunReport::new("build", json!({ "n": n, "ell": ell, "out": out }), outputs);
    for (name, pass, details) in checks {
        report = report.check(name, pass, details);
    }
    Ok(report.into())
}

pub fn verify(ctx: &Ctx, matrix: &PathBuf, ell: usize) -> Result<RunReport> {
    let a: IntMatrix = load(matrix, "matrix")?;
    let rep = verify_sensing(&a, ell, &ctx.budget)?;
    let details = match &rep.witness {
        None => format!("every {ell} of the {} columns are independent", a.cols()),
        Some(w) => format!("columns {w:?} are dependent"),
    };
    let pass = rep.verified;
    Ok(RunReport::new(
        "verify",
        json!({ "matrix": matrix, "ell": ell }),
        to_value(&rep)?,
    )
    .check("sensing", pass, details))
}

pub fn recover_cmd(
    ctx: &Ctx,
    matrix: &PathBuf,
    y: &str,
    s: usize,
    bound: &BigInt,
) -> Result<RunReport> {
    let a: IntMatrix = load(matrix, "matrix")?;
    let y = parse_ints(y)?;
    let inputs = json!({
        "matrix": matrix,
        "y": json_ints(&y),
        "s": s,
        "bound": to_value(JsonInt(bound))?,
    });
    let report = |outputs, pass, details: String| {
        RunReport::new("recover", inputs.clone(), outputs).check("unique solution", pass, details)
    };
    match recover(&a, &y, s, bound, &ctx.budget) {
        Ok(Some(x)) => {
            let consistent = a.mul_vec(&x)? == y;
            let x_json = json_ints(&x);
            Ok(report(
                json!({ "x": x_json }),
                consistent,
                "one bounded sparse signal reproduces the measurements".into(),
            ))
        }
        Ok(None) => Ok(report(
            json!({ "x": null }),
            false,
            format!("no signal with at most {s} nonzeros in [-{bound}, {bound}]"),
        )),
        Err(Error::Ambiguous { first, second }) => Ok(report(
            json!({
                "x": null,
                "candidates": [json_ints(&first), json_ints(&second)],
            }),
            false,
            "two different signals give the same measurements".into(),
        )),
        Err(e) => Err(e.into()),
    }
}

pub fn project_cmd(ctx: &Ctx, input: &PathBuf, dir: &str) -> Result<RunReport> {
    let set: PointSet = load(input, "points")?;
    let direction = Direction::new(parse_ints(dir)?)?;
    let profile = project(&set, &direction)?;
    let gap = max_gap(&profile);
    let outputs = json!({ "profile": profile, "m": profile.m(), "max_gap": gap });
    let mut report = RunReport::new("project", json!({ "input": input, "dir": dir }), outputs);
    if set.dim() <= EXACT_WIDTH_DIM && !set.is_empty() {
        let g = check_gap_bound(&set, &direction, &ctx.budget)?;
        report.outputs["gap_bound"] = to_value(&g)?;
        report = report.check(
            "gap bound",
            g.holds,
            if g.vacuous {
                "single projection, nothing to check".to_string()
            } else {
                "max_gap * (m - 1)^2 >= width^2".to_string()
            },
        );
    }
    Ok(report)
}

pub fn width(ctx: &Ctx, input: &PathBuf, sampled: Option<usize>) -> Result<RunReport> {
    let set: PointSet = load(input, "points")?;
    let inputs = json!({ "input": input, "sampled": sampled });
    if set.dim() > EXACT_WIDTH_DIM {
        let Some(n) = sampled else {
            bail!(
                "exact width is limited to dimension {EXACT_WIDTH_DIM}; pass --sampled N for an uncertified upper bound"
            );
        };
        let ub = width_upper_bound(&set, n)?;
        return Ok(RunReport::new("width", inputs, to_value(&ub)?));
    }
    let (w, u) = width_with_direction(&set, &ctx.budget)?;
    Ok(RunReport::new(
        "width",
        inputs,
        json!({ "squared": w, "direction": u, "certified": true }),
    ))
}

pub fn plank(ctx: &Ctx, body: &PathBuf, points: &PathBuf) -> Result<RunReport> {
    let b: PointSet = load(body, "points")?;
    let p: PointSet = load(points, "points")?;
    let w = plank_witness(&b, &p, &ctx.budget)?;
    let pass = w.holds;
    Ok(RunReport::new(
        "plank",
        json!({ "body": body, "points": points }),
        to_value(&w)?,
    )
    .check("plank width", pass, "empty plank width^2 >= bound^2"))
}
