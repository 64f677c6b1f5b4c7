//! Brute-force oracles and random generators shared by the integration tests.
//! None of these call into the algorithms they are used to check.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use hypercover_core::{BipartiteGraph, IntMatrix, PointSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn to_i64_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| x.to_i64().unwrap()).collect())
        .collect()
}

pub fn points_i64(s: &PointSet) -> Vec<Vec<i64>> {
    s.points()
        .iter()
        .map(|p| p.iter().map(|x| x.to_i64().unwrap()).collect())
        .collect()
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut total = 0i128;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let sign = if c % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][c] as i128 * cofactor_det(&minor);
    }
    total
}

/// Girth by enumerating every simple cycle through DFS from its smallest
/// vertex. `None` for forests.
pub fn girth_by_cycle_enumeration(g: &BipartiteGraph) -> Option<usize> {
    let n = g.left() + g.right();
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in g.edges() {
        adj[i].push(g.left() + j);
        adj[g.left() + j].push(i);
    }
    fn dfs(
        adj: &[Vec<usize>],
        start: usize,
        u: usize,
        len: usize,
        on_path: &mut Vec<bool>,
        best: &mut Option<usize>,
    ) {
        for &w in &adj[u] {
            if w == start && len >= 3 {
                *best = Some(best.map_or(len, |b: usize| b.min(len)));
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                dfs(adj, start, w, len + 1, on_path, best);
                on_path[w] = false;
            }
        }
    }
    let mut best = None;
    for start in 0..n {
        let mut on_path = vec![false; n];
        on_path[start] = true;
        dfs(&adj, start, start, 1, &mut on_path, &mut best);
    }
    best
}

pub fn random_bipartite(rng: &mut ChaCha8Rng, max_side: usize, max_edges: usize) -> BipartiteGraph {
    let m = rng.gen_range(1..=max_side);
    let l = rng.gen_range(1..=max_side);
    let mut all: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..l).map(move |j| (i, j))).collect();
    all.shuffle(rng);
    let e = rng.gen_range(0..=max_edges.min(all.len()));
    all.truncate(e);
    BipartiteGraph::new(m, l, all).unwrap()
}

/// Minimum number of distinct values of `<v, x>` over directions `v` that
/// are perpendicular to some difference of points, plus the axes. In the
/// plane an optimal direction either has a class with two points, and so is
/// perpendicular to their difference, or separates every point.
pub fn covering_number_by_directions_2d(points: &[Vec<i64>]) -> usize {
    let mut dirs: BTreeSet<(i64, i64)> = BTreeSet::from([(1, 0), (0, 1)]);
    for a in points {
        for b in points {
            let d = (a[0] - b[0], a[1] - b[1]);
            if d != (0, 0) {
                dirs.insert((-d.1, d.0));
            }
        }
    }
    // pairs of differences only add a direction when they are parallel, in
    // which case the perpendicular is already present
    dirs.into_iter()
        .map(|(v0, v1)| {
            points
                .iter()
                .map(|p| v0 * p[0] + v1 * p[1])
                .collect::<BTreeSet<_>>()
                .len()
        })
        .min()
        .unwrap()
}

fn isqrt(v: u128) -> u128 {
    let mut r = (v as f64).sqrt() as u128;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

/// Largest absolute coefficient a minimal integer dependency among the
/// columns `support` can need: its coefficients are maximal minors of at most
/// `|support| - 1` columns, bounded by Hadamard's inequality.
pub fn hadamard_coefficient_bound(cols: &[Vec<i64>], support: &[usize]) -> i64 {
    let mut norms: Vec<u128> = support
        .iter()
        .map(|&c| cols[c].iter().map(|&x| (x * x) as u128).sum())
        .collect();
    norms.sort_unstable_by(|a, b| b.cmp(a));
    let product: u128 = norms
        .iter()
        .take(support.len().saturating_sub(1))
        .map(|&n| n.max(1))
        .product();
    isqrt(product).max(1) as i64
}

fn box_vectors(len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn combine(cols: &[Vec<i64>], idx: &[usize], coeffs: &[i64], rows: usize) -> Vec<i64> {
    let mut acc = vec![0i64; rows];
    for (&c, &x) in idx.iter().zip(coeffs) {
        for r in 0..rows {
            acc[r] += x * cols[c][r];
        }
    }
    acc
}

/// Whether some nonzero integer vector with at most `ell` nonzero entries,
/// all within the Hadamard bound of their support, lies in the kernel of the
/// matrix given by its columns. Enumerates the coefficient box exhaustively
/// (split in two halves to keep it fast).
pub fn has_sparse_null_vector(cols: &[Vec<i64>], rows: usize, ell: usize) -> bool {
    let d = cols.len();
    let size = ell.min(d);
    let mut supports = vec![Vec::new()];
    for _ in 0..size {
        supports = supports
            .into_iter()
            .flat_map(|s: Vec<usize>| {
                let start = s.last().map_or(0, |&l| l + 1);
                (start..d).map(move |c| {
                    let mut t = s.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    for support in supports {
        let bound = hadamard_coefficient_bound(cols, &support);
        let (first, second) = support.split_at(support.len() / 2);
        let mut sums: HashMap<Vec<i64>, bool> = HashMap::new();
        for x in box_vectors(first.len(), bound) {
            let nonzero = x.iter().any(|&v| v != 0);
            let e = sums.entry(combine(cols, first, &x, rows)).or_insert(false);
            *e |= nonzero;
        }
        for x in box_vectors(second.len(), bound) {
            let nonzero = x.iter().any(|&v| v != 0);
            let target: Vec<i64> = combine(cols, second, &x, rows).iter().map(|v| -v).collect();
            if let Some(&first_nonzero) = sums.get(&target) {
                if nonzero || first_nonzero {
                    return true;
                }
            }
        }
    }
    false
}

pub fn random_matrix(
    rng: &mut ChaCha8Rng,
    max_rows: usize,
    max_cols: usize,
    entry: i64,
) -> Vec<Vec<i64>> {
    let n = rng.gen_range(1..=max_rows);
    let d = rng.gen_range(1..=max_cols);
    (0..n)
        .map(|_| (0..d).map(|_| rng.gen_range(-entry..=entry)).collect())
        .collect()
}

pub fn random_point_set(rng: &mut ChaCha8Rng, dim: usize, k: usize, coord: i64) -> PointSet {
    let mut seen = BTreeSet::new();
    while seen.len() < k {
        let p: Vec<i64> = (0..dim).map(|_| rng.gen_range(-coord..=coord)).collect();
        seen.insert(p);
    }
    let mut pts: Vec<Vec<i64>> = seen.into_iter().collect();
    pts.shuffle(rng);
    PointSet::from_i64(dim, &pts).unwrap()
}

pub fn random_direction(rng: &mut ChaCha8Rng, dim: usize, coord: i64) -> Vec<BigInt> {
    loop {
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-coord..=coord)).collect();
        if v.iter().any(|&x| x != 0) {
            return v.into_iter().map(BigInt::from).collect();
        }
    }
}

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex hull vertices by gift wrapping, counter-clockwise, collinear
/// points dropped. Fewer than three vertices means a degenerate hull.
pub fn gift_wrap(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let start = points.iter().min().unwrap().clone();
    let mut hull = vec![start.clone()];
    let mut current = start.clone();
    loop {
        let mut next = points.iter().find(|p| **p != current).cloned();
        let Some(mut cand) = next.take() else { break };
        for p in points {
            if *p == current {
                continue;
            }
            let c = cross(&current, &cand, p);
            let farther = {
                let dc = (cand[0] - current[0]).pow(2) + (cand[1] - current[1]).pow(2);
                let dp = (p[0] - current[0]).pow(2) + (p[1] - current[1]).pow(2);
                dp > dc
            };
            if c < 0 || (c == 0 && farther) {
                cand = p.clone();
            }
        }
        if cand == start {
            break;
        }
        hull.push(cand.clone());
        current = cand;
        if hull.len() > points.len() {
            break;
        }
    }
    hull
}

/// Squared width of a planar set: for each hull edge the farthest hull
/// vertex from its supporting line, minimized over edges.
pub fn calipers_width_2d(points: &[Vec<i64>]) -> BigRational {
    let hull = gift_wrap(points);
    let zero = BigRational::from_integer(BigInt::from(0));
    if hull.len() < 3 {
        return zero;
    }
    let mut best: Option<BigRational> = None;
    for i in 0..hull.len() {
        let p = &hull[i];
        let q = &hull[(i + 1) % hull.len()];
        let len2 = (q[0] - p[0]).pow(2) + (q[1] - p[1]).pow(2);
        let far = hull.iter().map(|r| cross(p, q, r).abs()).max().unwrap();
        let w = BigRational::new(BigInt::from(far * far), BigInt::from(len2));
        if best.as_ref().is_none_or(|b| w < *b) {
            best = Some(w);
        }
    }
    best.unwrap()
}
