//! Difference-set sensing matrices.
//!
//! A point set is split into two sides `I` and `J`; a bipartite graph on the
//! split selects which differences `x_i - x_j` become matrix columns. The
//! matrix senses `ell`-sparse vectors when every `ell` of its columns are
//! linearly independent, which this module verifies by exhaustive exact rank
//! checks. Bounded sparse integer signals are recovered by enumerating
//! supports and solving each restricted system exactly.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::budget::{binomial, subsets_up_to, Budget};
use crate::error::{Error, Result};
use crate::graphs::{
    complete_bipartite, edge_bound, girth, greedy_girth_graph, BipartiteGraph, EdgeOrder, Girth,
};
use crate::json;
use crate::linalg::{columns_independent, solve_on_columns, IntMatrix, Solve};
use crate::pointset::{build_sn, covering_number, PointSet};

/// Split of the indices `0..k` of a point set into two nonempty sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Partition {
    pub fn new(k: usize, left: Vec<usize>, right: Vec<usize>) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::invalid("both sides of a partition must be nonempty"));
        }
        let mut seen = vec![false; k];
        for &i in left.iter().chain(&right) {
            if i >= k {
                return Err(Error::invalid(format!(
                    "index {i} out of range for {k} points"
                )));
            }
            if seen[i] {
                return Err(Error::invalid(format!("index {i} appears twice")));
            }
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::invalid("partition does not cover every point"));
        }
        Ok(Partition { left, right })
    }

    /// The first `m` indices against the remaining `k - m`.
    pub fn split_at(k: usize, m: usize) -> Result<Self> {
        Partition::new(k, (0..m).collect(), (m..k).collect())
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }
}

/// Differences `x_i - x_j` selected by the edges of a bipartite graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferenceSet {
    dim: usize,
    /// Point indices `(i, j)` with `i` on the left side, in column order.
    pairs: Vec<(usize, usize)>,
    #[serde(with = "json::bigint_rows")]
    vectors: Vec<Vec<BigInt>>,
}

impl DifferenceSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Number of distinct points appearing in the selected differences.
    pub fn support_size(&self, members: &[usize]) -> usize {
        members
            .iter()
            .flat_map(|&r| [self.pairs[r].0, self.pairs[r].1])
            .sorted_unstable()
            .dedup()
            .count()
    }
}

/// One difference per edge of `graph`, in edge order.
pub fn difference_set(
    set: &PointSet,
    partition: &Partition,
    graph: &BipartiteGraph,
) -> Result<DifferenceSet> {
    if graph.left() != partition.left.len() || graph.right() != partition.right.len() {
        return Err(Error::invalid(format!(
            "graph is ({}, {}) but the partition has sides ({}, {})",
            graph.left(),
            graph.right(),
            partition.left.len(),
            partition.right.len()
        )));
    }
    let mut pairs = Vec::with_capacity(graph.edges().len());
    let mut vectors = Vec::with_capacity(graph.edges().len());
    for &(a, b) in graph.edges() {
        let (i, j) = (partition.left[a], partition.right[b]);
        if i >= set.len() || j >= set.len() {
            return Err(Error::invalid("partition refers to a missing point"));
        }
        pairs.push((i, j));
        vectors.push(
            set.point(i)
                .iter()
                .zip(set.point(j))
                .map(|(x, y)| x - y)
                .collect(),
        );
    }
    Ok(DifferenceSet {
        dim: set.dim(),
        pairs,
        vectors,
    })
}

/// The `n x |D|` matrix whose columns are the differences in order.
pub fn assemble_matrix(d: &DifferenceSet) -> IntMatrix {
    IntMatrix::from_columns(d.dim, &d.vectors).expect("differences share the dimension")
}

/// Result of an exhaustive column-independence check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SensingReport {
    pub rows: usize,
    pub cols: usize,
    pub ell: usize,
    pub verified: bool,
    /// First dependent column subset (0-based) in lexicographic order.
    pub witness: Option<Vec<usize>>,
    #[serde(with = "json::bigint")]
    pub sup_norm: BigInt,
    /// Edge-count comparison value, when the matrix comes from the pipeline.
    pub bound: Option<f64>,
}

const CHUNK: usize = 2048;

/// Checks that every `ell` columns of `a` are independent. Subsets are
/// visited in lexicographic order and the first dependent one is reported;
/// smaller dependent sets extend to dependent sets of size `ell`, so this
/// covers every sparsity level up to `ell`.
pub fn verify_sensing(a: &IntMatrix, ell: usize, budget: &Budget) -> Result<SensingReport> {
    if ell == 0 || ell > a.cols() {
        return Err(Error::invalid(format!(
            "sparsity {ell} must lie in 1..={}",
            a.cols()
        )));
    }
    budget.check_subsets("column subsets", binomial(a.cols(), ell))?;
    let mut witness = None;
    let mut subsets = (0..a.cols()).combinations(ell);
    loop {
        let chunk: Vec<Vec<usize>> = subsets.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let found = chunk
            .into_par_iter()
            .find_first(|c| !columns_independent(a, c).expect("indices in range"));
        if found.is_some() {
            witness = found;
            break;
        }
    }
    Ok(SensingReport {
        rows: a.rows(),
        cols: a.cols(),
        ell,
        verified: witness.is_none(),
        witness,
        sup_norm: a.sup_norm(),
        bound: None,
    })
}

/// The `n x (k-1)` matrix of the nonzero points, for a set listing the origin
/// first.
pub fn point_column_matrix(set: &PointSet) -> Result<IntMatrix> {
    let Some((origin, rest)) = set.points().split_first() else {
        return Err(Error::invalid("point set is empty"));
    };
    if origin.iter().any(|x| !x.is_zero()) {
        return Err(Error::invalid("the first point must be the origin"));
    }
    IntMatrix::from_columns(set.dim(), rest)
}

/// How the pipeline chose its graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphMethod {
    Complete,
    Greedy,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorollaryBuild {
    pub n: usize,
    pub ell: usize,
    pub points: PointSet,
    pub partition: Partition,
    pub graph: BipartiteGraph,
    pub method: GraphMethod,
    pub girth: Girth,
    pub matrix: IntMatrix,
    pub report: SensingReport,
    /// `((n+2)/2)^(1 + 2/(3 ell - 2))`
    pub edge_bound: f64,
}

/// Builds `S_n`, splits it into its first `ceil((n+2)/2)` points and the
/// rest, connects the sides with a graph of girth above `ell` (complete for
/// `ell <= 3`, greedy otherwise), and verifies the resulting matrix.
pub fn build_corollary_matrix(n: usize, ell: usize, budget: &Budget) -> Result<CorollaryBuild> {
    if n < 2 {
        return Err(Error::invalid("the pipeline needs n >= 2"));
    }
    if ell == 0 || ell >= n {
        return Err(Error::invalid(format!(
            "sparsity must lie in 1..={}",
            n - 1
        )));
    }
    let points = build_sn(n)?;
    let k = points.len();
    let m = k.div_ceil(2);
    let partition = Partition::split_at(k, m)?;
    let (graph, method) = if ell <= 3 {
        (complete_bipartite(m, k - m)?, GraphMethod::Complete)
    } else {
        (
            greedy_girth_graph(m, k - m, ell, &EdgeOrder::LeftMajor)?,
            GraphMethod::Greedy,
        )
    };
    let diffs = difference_set(&points, &partition, &graph)?;
    let matrix = assemble_matrix(&diffs);
    let bound = edge_bound(k, ell);
    let mut report = verify_sensing(&matrix, ell.min(matrix.cols()), budget)?;
    report.bound = Some(bound);
    Ok(CorollaryBuild {
        n,
        ell,
        girth: girth(&graph),
        points,
        partition,
        graph,
        method,
        matrix,
        report,
        edge_bound: bound,
    })
}

fn to_integer_in_box(z: &[BigRational], bound: &BigInt) -> Option<Vec<BigInt>> {
    z.iter()
        .map(|q| {
            (q.is_integer() && !q.is_zero() && q.to_integer().abs() <= *bound)
                .then(|| q.to_integer())
        })
        .collect()
}

/// Recovers the unique integer vector `x` with at most `s` nonzero entries,
/// all in `[-bound, bound]`, such that `A x = y`.
///
/// Supports are enumerated by size and then lexicographically. Only supports
/// with independent columns are solved; each contributes at most one
/// candidate, whose entries must all be nonzero so that every vector is found
/// on exactly one support. Two distinct candidates give
/// [`Error::Ambiguous`], which cannot happen when `A` senses
/// `2s`-sparse vectors.
pub fn recover(
    a: &IntMatrix,
    y: &[BigInt],
    s: usize,
    bound: &BigInt,
    budget: &Budget,
) -> Result<Option<Vec<BigInt>>> {
    if y.len() != a.rows() {
        return Err(Error::invalid(format!(
            "measurement has length {}, matrix has {} rows",
            y.len(),
            a.rows()
        )));
    }
    if !bound.is_positive() {
        return Err(Error::invalid("entry bound must be at least 1"));
    }
    budget.check_subsets("supports", subsets_up_to(a.cols(), s))?;
    let mut found: Option<Vec<BigInt>> = None;
    let mut accept = |x: Vec<BigInt>| -> Result<()> {
        match &found {
            Some(prev) if *prev != x => Err(Error::Ambiguous {
                first: prev.clone(),
                second: x,
            }),
            _ => {
                found = Some(x);
                Ok(())
            }
        }
    };
    if y.iter().all(Zero::is_zero) {
        accept(vec![BigInt::zero(); a.cols()])?;
    }
    for size in 1..=s.min(a.cols()) {
        for support in (0..a.cols()).combinations(size) {
            let Solve::Unique(z) = solve_on_columns(a, &support, y)? else {
                continue;
            };
            let Some(vals) = to_integer_in_box(&z, bound) else {
                continue;
            };
            let mut x = vec![BigInt::zero(); a.cols()];
            for (&c, v) in support.iter().zip(vals) {
                x[c] = v;
            }
            accept(x)?;
        }
    }
    Ok(found)
}

/// Both sides of the forward implication: a set that needs `k - n + 1`
/// hyperplanes, with a graph whose `ell`-edge subsets all have support
/// larger than `ell`, gives an `ell`-sparse sensing matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ForwardReport {
    pub k: usize,
    pub n: usize,
    pub ell: usize,
    pub covering_number: usize,
    pub required: usize,
    pub covering_hypothesis: bool,
    pub girth: Girth,
    pub support_hypothesis: bool,
    pub sensing: SensingReport,
    pub implication_holds: bool,
}

pub fn theorem_matrix1_forward(
    set: &PointSet,
    partition: &Partition,
    graph: &BipartiteGraph,
    ell: usize,
    budget: &Budget,
) -> Result<ForwardReport> {
    let (k, n) = (set.len(), set.dim());
    if k <= n {
        return Err(Error::invalid("the implication is stated for k > n points"));
    }
    if ell == 0 || ell >= n {
        return Err(Error::invalid(format!(
            "sparsity must lie in 1..={}",
            n - 1
        )));
    }
    let diffs = difference_set(set, partition, graph)?;
    if diffs.is_empty() {
        return Err(Error::invalid("graph has no edges"));
    }
    let (cn, _) = covering_number(set, budget)?;
    let required = k - n + 1;
    let g = girth(graph);
    let matrix = assemble_matrix(&diffs);
    // with fewer than ell columns, ell-sparse means all columns independent
    let sensing = verify_sensing(&matrix, ell.min(matrix.cols()), budget)?;
    let covering_hypothesis = cn >= required;
    let support_hypothesis = g.exceeds(ell);
    Ok(ForwardReport {
        k,
        n,
        ell,
        covering_number: cn,
        required,
        covering_hypothesis,
        girth: g,
        support_hypothesis,
        implication_holds: !(covering_hypothesis && support_hypothesis) || sensing.verified,
        sensing,
    })
}

/// The converse direction checked over every bipartition of a small set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConverseReport {
    pub k: usize,
    pub n: usize,
    pub bipartitions: usize,
    /// Every full difference matrix senses `n`-sparse vectors.
    pub hypothesis: bool,
    /// First bipartition (left side, containing point 0) whose matrix fails.
    pub failing_partition: Option<Partition>,
    pub covering_number: usize,
    pub required: usize,
    pub implication_holds: bool,
}

/// Largest set accepted by [`theorem_matrix1_converse`].
pub const CONVERSE_MAX_POINTS: usize = 10;

pub fn theorem_matrix1_converse(set: &PointSet, budget: &Budget) -> Result<ConverseReport> {
    let (k, n) = (set.len(), set.dim());
    if k <= n {
        return Err(Error::invalid("the implication is stated for k > n points"));
    }
    if k > CONVERSE_MAX_POINTS {
        return Err(Error::capacity(
            "bipartition enumeration",
            k as u128,
            CONVERSE_MAX_POINTS as u128,
        ));
    }
    // {I, J} and {J, I} give matrices that differ by sign, so fix point 0 in I
    let count = (1usize << (k - 1)) - 1;
    budget.check_subsets("bipartitions", count as u128)?;
    let mut failing_partition = None;
    for mask in 0..count {
        let left: Vec<usize> = std::iter::once(0)
            .chain((1..k).filter(|&i| mask >> (i - 1) & 1 == 1))
            .collect();
        let right: Vec<usize> = (1..k).filter(|&i| mask >> (i - 1) & 1 == 0).collect();
        let partition = Partition::new(k, left, right)?;
        let graph = complete_bipartite(partition.left.len(), partition.right.len())?;
        let matrix = assemble_matrix(&difference_set(set, &partition, &graph)?);
        if !verify_sensing(&matrix, n, budget)?.verified {
            failing_partition = Some(partition);
            break;
        }
    }
    let (cn, _) = covering_number(set, budget)?;
    let required = k - n + 1;
    let hypothesis = failing_partition.is_none();
    Ok(ConverseReport {
        k,
        n,
        bipartitions: count,
        hypothesis,
        failing_partition,
        covering_number: cn,
        required,
        implication_holds: !hypothesis || cn >= required,
    })
}
