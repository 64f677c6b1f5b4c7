use anyhow::Result;
use clap::ValueEnum;
use hypercover_core::{
    assemble_matrix, build_corollary_matrix, build_sn, check_gap_bound, complete_bipartite,
    covering_number, difference_set, grid_bound_check, min_projection_direction, verify_sensing,
    Budget, CoveringCertificate, Direction, IntMatrix, KernelVector, Partition, PointSet,
};
use num_bigint::BigInt;
use serde_json::{json, to_value, Value};

use crate::report::RunReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Name {
    SnCovering,
    #[value(name = "example-63")]
    Example63,
    #[value(name = "counterexample-2x4")]
    Counterexample2x4,
    CorollaryBound,
    GapBound,
    GridBounds,
}

impl Name {
    fn id(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn example_matrix() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![1, -1, 1, -1, 1, -1],
        vec![-1, -1, -1, -1, -2, -2],
        vec![-1, -1, -2, -2, 0, 0],
    ])
    .expect("rectangular")
}

fn five_points() -> PointSet {
    PointSet::from_i64(
        2,
        &[vec![0, 0], vec![2, 1], vec![1, 2], vec![3, 1], vec![2, 2]],
    )
    .expect("distinct points")
}

pub fn run(name: Name, budget: &Budget) -> Result<RunReport> {
    let (outputs, checks) = match name {
        Name::SnCovering => sn_covering(budget)?,
        Name::Example63 => example_63(budget)?,
        Name::Counterexample2x4 => counterexample(budget)?,
        Name::CorollaryBound => corollary_bound(budget)?,
        Name::GapBound => gap_bound(budget)?,
        Name::GridBounds => grid_bounds(budget)?,
    };
    let mut report = RunReport::new("repro", json!({ "name": name.id() }), outputs);
    for (n, pass, details) in checks {
        report = report.check(n, pass, details);
    }
    Ok(report)
}

type Checks = Vec<(String, bool, String)>;

fn sn_covering(budget: &Budget) -> Result<(Value, Checks)> {
    let mut rows = Vec::new();
    let mut checks = Checks::new();
    for n in 1..=8 {
        let set = build_sn(n)?;
        let (t, cert) = covering_number(&set, budget)?;
        let valid = cert.validate(&set);
        checks.push((
            format!("S_{n}"),
            t == 3 && valid,
            format!("covering number {t}, certificate valid: {valid}"),
        ));
        rows.push(json!({ "n": n, "k": set.len(), "covering_number": t, "certificate": cert }));
    }
    Ok((Value::Array(rows), checks))
}

fn example_63(budget: &Budget) -> Result<(Value, Checks)> {
    let set = build_sn(3)?;
    let partition = Partition::split_at(5, 3)?;
    let graph = complete_bipartite(3, 2)?;
    let a = assemble_matrix(&difference_set(&set, &partition, &graph)?);
    let rep = verify_sensing(&a, 3, budget)?;
    let checks = vec![
        (
            "matrix".into(),
            a == example_matrix(),
            "A(D) equals the displayed 3x6 matrix".into(),
        ),
        (
            "sensing".into(),
            rep.verified,
            "all 20 three-column subsets independent".into(),
        ),
        (
            "sup norm".into(),
            rep.sup_norm == BigInt::from(2),
            format!("sup norm {}", rep.sup_norm),
        ),
    ];
    // ell = n here, outside the 1..=n-1 range of the general pipeline, so the
    // property is checked directly
    Ok((
        json!({
            "points": set,
            "partition": partition,
            "matrix": a,
            "sensing": rep,
            "ell_range": { "ell": 3, "n": 3, "within_pipeline_range": false },
        }),
        checks,
    ))
}

fn counterexample(budget: &Budget) -> Result<(Value, Checks)> {
    let a = IntMatrix::from_rows(&[vec![2, 1, 3, 2], vec![1, 2, 1, 2]])?;
    let rep = verify_sensing(&a, 2, budget)?;
    let set = five_points();
    let (t, cert) = covering_number(&set, budget)?;
    let witness = CoveringCertificate::from_normal(
        &set,
        KernelVector::canonical(ints(&[1, 1])).expect("nonzero"),
    );
    let required = set.len() - set.dim() + 1;
    let checks = vec![
        (
            "sensing".into(),
            rep.verified,
            "every 2 columns independent".into(),
        ),
        (
            "covering number".into(),
            t == 3,
            format!("covering number {t}"),
        ),
        (
            "three lines".into(),
            witness.validate(&set) && witness.values() == ints(&[0, 3, 4]),
            "normal (1,1) takes the values 0, 3, 4".into(),
        ),
        (
            "not extremal".into(),
            t < required,
            format!("{t} < k - n + 1 = {required}"),
        ),
    ];
    Ok((
        json!({
            "matrix": a,
            "sensing": rep,
            "points": set,
            "covering_number": t,
            "certificate": cert,
            "witness": witness,
        }),
        checks,
    ))
}

fn corollary_bound(budget: &Budget) -> Result<(Value, Checks)> {
    let mut rows = Vec::new();
    let mut checks = Checks::new();
    let mut prev = 0.0f64;
    for n in [6usize, 10, 14] {
        let b = build_corollary_matrix(n, 3, budget)?;
        let d = b.matrix.cols();
        let ratio = d as f64 / n as f64;
        checks.push((
            format!("n = {n}"),
            d as f64 >= b.edge_bound && b.report.verified && ratio > prev,
            format!("d = {d} >= {:.6}, d/n = {ratio:.4}", b.edge_bound),
        ));
        prev = ratio;
        rows.push(json!({
            "n": n,
            "d": d,
            "edge_bound": b.edge_bound,
            "margin": d as f64 - b.edge_bound,
            "ratio": ratio,
            "verified": b.report.verified,
        }));
    }
    Ok((Value::Array(rows), checks))
}

/// Every canonical direction with coordinates in `[-3, 3]`.
fn small_directions(dim: usize) -> Vec<Direction> {
    let mut out = Vec::new();
    let mut v = vec![-3i64; dim];
    loop {
        if let Ok(d) = Direction::new(ints(&v)) {
            if !out.contains(&d) {
                out.push(d);
            }
        }
        let Some(i) = v.iter().rposition(|&x| x < 3) else {
            break;
        };
        v[i] += 1;
        for x in &mut v[i + 1..] {
            *x = -3;
        }
    }
    out
}

fn gap_bound(budget: &Budget) -> Result<(Value, Checks)> {
    let sets = [
        ("S_2", build_sn(2)?),
        ("S_3", build_sn(3)?),
        ("five points", five_points()),
    ];
    let mut rows = Vec::new();
    let mut checks = Checks::new();
    for (label, set) in sets {
        let dirs = small_directions(set.dim());
        let mut failures = 0;
        for d in &dirs {
            if !check_gap_bound(&set, d, budget)?.holds {
                failures += 1;
            }
        }
        let (t, _) = covering_number(&set, budget)?;
        let (dir, m) = min_projection_direction(&set, budget)?;
        checks.push((
            label.to_string(),
            failures == 0 && m == t,
            format!(
                "{} directions, {failures} failures, fewest projections {m}",
                dirs.len()
            ),
        ));
        rows.push(json!({
            "set": label,
            "directions": dirs.len(),
            "failures": failures,
            "min_projection_direction": dir,
            "m": m,
        }));
    }
    Ok((Value::Array(rows), checks))
}

fn grid_bounds(budget: &Budget) -> Result<(Value, Checks)> {
    let mut cases: Vec<(String, PointSet)> = (1..=6)
        .map(|n| Ok((format!("S_{n}"), build_sn(n)?)))
        .collect::<Result<_>>()?;
    cases.push(("single point".into(), PointSet::from_i64(2, &[vec![0, 0]])?));
    let mut rows = Vec::new();
    let mut checks = Checks::new();
    for (label, set) in cases {
        let r = grid_bound_check(&set, 1, budget)?;
        checks.push((
            label.clone(),
            r.pass,
            format!(
                "k = {}, n = {}, covering number {}",
                r.k, r.n, r.covering_number
            ),
        ));
        let mut row = to_value(&r)?;
        row["set"] = json!(label);
        rows.push(row);
    }
    Ok((Value::Array(rows), checks))
}
