//! Integer point sets, the extremal family `S_n`, and exact covering numbers
//! by parallel hyperplanes.
//!
//! A family of parallel affine hyperplanes `<v, x> = c` covers a set with as
//! many hyperplanes as `<v, .>` takes distinct values on it. To decide whether
//! `t` suffice we walk the set partitions into at most `t` blocks in
//! restricted-growth-string order: a partition is realizable exactly when the
//! within-block differences leave a nonzero common orthogonal vector. Blocks
//! whose differences already span the space are pruned early.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::json;
use crate::linalg::{dot, kernel_vector, KernelVector, RowSpace};

/// Ordered list of pairwise distinct integer points of a common dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointSet {
    dim: usize,
    #[serde(with = "json::bigint_rows")]
    points: Vec<Vec<BigInt>>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Vec<BigInt>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| p.len() != dim) {
            return Err(Error::invalid(format!(
                "point {i} has length {}, expected {dim}",
                p.len()
            )));
        }
        let mut seen = HashSet::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if !seen.insert(p) {
                return Err(Error::invalid(format!("point {i} is a duplicate")));
            }
        }
        Ok(PointSet { dim, points })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(dim: usize, points: &[Vec<i64>]) -> Result<Self> {
        PointSet::new(
            dim,
            points
                .iter()
                .map(|p| p.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<BigInt>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[BigInt] {
        &self.points[i]
    }

    /// Inner product of every point with `v`, in point order.
    pub fn inner_products(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.points.iter().map(|p| dot(p, v)).collect()
    }

    /// True iff every coordinate lies in `[-t, t]`.
    pub fn in_cube(&self, t: u64) -> bool {
        let t = BigInt::from(t);
        self.points.iter().flatten().all(|x| x.abs() <= t)
    }
}

#[derive(Deserialize)]
struct PointSetRepr {
    dim: usize,
    #[serde(with = "json::bigint_rows")]
    points: Vec<Vec<BigInt>>,
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = PointSetRepr::deserialize(d)?;
        PointSet::new(r.dim, r.points).map_err(D::Error::custom)
    }
}

/// The set `S_n = {0, x_1, ..., x_{n+1}}` with
/// `x_i = -e_{n-i+1} + e_{n-i+2} + ... + e_n` for `i <= n` and
/// `x_{n+1} = (1, ..., 1)`. It has `n + 2` points with coordinates in
/// `{-1, 0, 1}` and needs three parallel hyperplanes to be covered.
pub fn build_sn(n: usize) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::invalid("S_n is defined for n >= 1"));
    }
    let mut points = Vec::with_capacity(n + 2);
    points.push(vec![BigInt::zero(); n]);
    for i in 1..=n {
        let mut x = vec![BigInt::zero(); n];
        // coordinate n-i+1 (1-based) is -1, the ones after it are +1
        x[n - i] = -BigInt::one();
        for c in x.iter_mut().skip(n - i + 1) {
            *c = BigInt::one();
        }
        points.push(x);
    }
    points.push(vec![BigInt::one(); n]);
    PointSet::new(n, points)
}

/// One translate of the covering family: the points with `<normal, x> = value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverClass {
    #[serde(with = "json::bigint")]
    pub value: BigInt,
    pub members: Vec<usize>,
}

/// A normal vector together with the partition of the points by inner
/// product, witnessing a cover by `t` parallel hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringCertificate {
    pub normal: KernelVector,
    /// Classes in increasing order of value.
    pub classes: Vec<CoverClass>,
    pub t: usize,
}

impl CoveringCertificate {
    pub fn from_normal(set: &PointSet, normal: KernelVector) -> Self {
        let mut by_value: BTreeMap<BigInt, Vec<usize>> = BTreeMap::new();
        for (i, v) in set.inner_products(normal.coords()).into_iter().enumerate() {
            by_value.entry(v).or_default().push(i);
        }
        let classes: Vec<CoverClass> = by_value
            .into_iter()
            .map(|(value, members)| CoverClass { value, members })
            .collect();
        CoveringCertificate {
            normal,
            t: classes.len(),
            classes,
        }
    }

    pub fn values(&self) -> Vec<BigInt> {
        self.classes.iter().map(|c| c.value.clone()).collect()
    }

    /// Re-checks the certificate against `set` from scratch.
    pub fn validate(&self, set: &PointSet) -> bool {
        if self.normal.dim() != set.dim() || self.t != self.classes.len() {
            return false;
        }
        let mut seen = vec![false; set.len()];
        let mut last: Option<&BigInt> = None;
        for class in &self.classes {
            if last.is_some_and(|l| l >= &class.value) || class.members.is_empty() {
                return false;
            }
            last = Some(&class.value);
            for &i in &class.members {
                if i >= set.len() || seen[i] {
                    return false;
                }
                seen[i] = true;
                if dot(set.point(i), self.normal.coords()) != class.value {
                    return false;
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

struct Search<'a> {
    set: &'a PointSet,
    max_blocks: usize,
    /// Block label of each assigned point.
    labels: Vec<usize>,
    /// First point of each block.
    reps: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, next: usize, space: &RowSpace) -> Option<RowSpace> {
        if next == self.set.len() {
            return Some(space.clone());
        }
        let point = self.set.point(next);
        for block in 0..self.reps.len() {
            let rep = self.set.point(self.reps[block]);
            let diff: Vec<BigInt> = point.iter().zip(rep).map(|(a, b)| a - b).collect();
            let mut grown = space.clone();
            grown.insert(diff);
            if grown.rank() == self.set.dim() {
                continue;
            }
            self.labels.push(block);
            if let Some(found) = self.run(next + 1, &grown) {
                return Some(found);
            }
            self.labels.pop();
        }
        if self.reps.len() < self.max_blocks {
            self.reps.push(next);
            self.labels.push(self.reps.len() - 1);
            if let Some(found) = self.run(next + 1, space) {
                return Some(found);
            }
            self.labels.pop();
            self.reps.pop();
        }
        None
    }
}

fn check_cover_capacity(set: &PointSet, t: usize, budget: &Budget) -> Result<()> {
    let limit = match t {
        0 | 1 => return Ok(()),
        2 => budget.cover_points_two,
        _ => budget.cover_points_many,
    };
    if set.len() > limit {
        return Err(Error::capacity(
            format!("covering search with t = {t}"),
            set.len() as u128,
            limit as u128,
        ));
    }
    Ok(())
}

/// A certificate that `set` lies on at most `t` parallel hyperplanes, or
/// `None` if no direction achieves that. The certificate comes from the first
/// realizable partition in restricted-growth-string order.
pub fn coverable_by(
    set: &PointSet,
    t: usize,
    budget: &Budget,
) -> Result<Option<CoveringCertificate>> {
    if set.is_empty() {
        return Err(Error::invalid("covering needs at least one point"));
    }
    if t == 0 {
        return Ok(None);
    }
    check_cover_capacity(set, t, budget)?;
    let mut search = Search {
        set,
        max_blocks: t,
        labels: Vec::with_capacity(set.len()),
        reps: Vec::with_capacity(t),
    };
    let Some(space) = search.run(0, &RowSpace::new(set.dim())) else {
        return Ok(None);
    };
    let normal = kernel_vector(&space.matrix()).expect("realizable partition leaves a kernel");
    let cert = CoveringCertificate::from_normal(set, normal);
    debug_assert!(cert.t <= t);
    Ok(Some(cert))
}

/// The upper bound `max{1, k - n + 1}` on the covering number of `k` points
/// in dimension `n`.
pub fn covering_upper_bound(k: usize, n: usize) -> usize {
    (k + 1).saturating_sub(n).max(1)
}

/// Minimum number of parallel hyperplanes covering `set`, with a certificate.
pub fn covering_number(set: &PointSet, budget: &Budget) -> Result<(usize, CoveringCertificate)> {
    if set.is_empty() {
        return Err(Error::invalid("covering needs at least one point"));
    }
    // every point in its own block is always realizable, so this terminates
    for t in 1..=set.len() {
        if let Some(cert) = coverable_by(set, t, budget)? {
            return Ok((cert.t, cert));
        }
    }
    unreachable!("a covering with one hyperplane per point always exists")
}

/// Outcome of checking both implications of the grid-size bound on a subset of
/// the cube `C_n(T)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridBoundReport {
    pub k: usize,
    pub n: usize,
    pub cube: u64,
    pub covering_number: usize,
    pub certificate: CoveringCertificate,
    /// Covering number equals `k - n + 1`.
    pub extremal: bool,
    /// `k <= 2T + n`.
    pub small_enough: bool,
    /// Covering number equals `2T + 1`.
    pub needs_full_cube: bool,
    /// `k >= 2T + n`.
    pub large_enough: bool,
    pub pass: bool,
}

pub fn grid_bound_check(set: &PointSet, cube: u64, budget: &Budget) -> Result<GridBoundReport> {
    if cube == 0 {
        return Err(Error::invalid("cube half-side must be at least 1"));
    }
    if !set.in_cube(cube) {
        return Err(Error::invalid(format!(
            "point set is not inside C_n({cube})"
        )));
    }
    let (cn, certificate) = covering_number(set, budget)?;
    let k = set.len() as i128;
    let n = set.dim() as i128;
    let t = cube as i128;
    let extremal = cn as i128 == k - n + 1;
    let small_enough = k <= 2 * t + n;
    let needs_full_cube = cn as i128 == 2 * t + 1;
    let large_enough = k >= 2 * t + n;
    Ok(GridBoundReport {
        k: set.len(),
        n: set.dim(),
        cube,
        covering_number: cn,
        certificate,
        extremal,
        small_enough,
        needs_full_cube,
        large_enough,
        pass: (!extremal || small_enough) && (!needs_full_cube || large_enough),
    })
}
