//! Projections onto lines, exact widths of small polytopes, and the gap and
//! plank bounds that follow from the plank theorem.
//!
//! Distances are carried squared as exact rationals: a point's position along
//! an integer direction `v` is `<v, x> / |v|`, so a gap of `d` inner-product
//! units has squared length `d^2 / <v, v>`. Every inequality is checked by
//! comparing squared quantities.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::budget::{binomial, subsets_up_to, Budget};
use crate::error::{Error, Result};
use crate::json::{self, JsonRatio};
use crate::linalg::{dot, kernel_vector, rank, solve_on_columns, IntMatrix, KernelVector, Solve};
use crate::pointset::{covering_number, covering_upper_bound, PointSet};

/// Largest dimension with a certified exact width.
pub const MAX_EXACT_WIDTH_DIM: usize = 3;

/// Canonical integer direction with its cached squared length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Direction {
    vector: KernelVector,
    #[serde(with = "json::bigint")]
    squared_norm: BigInt,
}

impl Direction {
    /// Canonicalizes `v`; the zero vector is rejected.
    pub fn new(v: Vec<BigInt>) -> Result<Self> {
        let vector = KernelVector::canonical(v).ok_or_else(|| Error::invalid("zero direction"))?;
        Ok(Direction::from_kernel(vector))
    }

    pub fn from_kernel(vector: KernelVector) -> Self {
        let squared_norm = dot(vector.coords(), vector.coords());
        Direction {
            vector,
            squared_norm,
        }
    }

    pub fn coords(&self) -> &[BigInt] {
        self.vector.coords()
    }

    pub fn squared_norm(&self) -> &BigInt {
        &self.squared_norm
    }

    pub fn dim(&self) -> usize {
        self.vector.dim()
    }

    fn squared_length(&self, delta: &BigInt) -> BigRational {
        BigRational::new(delta * delta, self.squared_norm.clone())
    }
}

/// Distinct inner products of a point set with a direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionProfile {
    pub direction: Direction,
    /// Strictly increasing.
    #[serde(with = "json::bigint_vec")]
    pub values: Vec<BigInt>,
    /// Point indices for each value, parallel to `values`.
    pub members: Vec<Vec<usize>>,
}

impl ProjectionProfile {
    pub fn m(&self) -> usize {
        self.values.len()
    }
}

pub fn project(set: &PointSet, direction: &Direction) -> Result<ProjectionProfile> {
    if direction.dim() != set.dim() {
        return Err(Error::invalid(format!(
            "direction has dimension {}, points have {}",
            direction.dim(),
            set.dim()
        )));
    }
    let mut by_value: BTreeMap<BigInt, Vec<usize>> = BTreeMap::new();
    for (i, v) in set
        .inner_products(direction.coords())
        .into_iter()
        .enumerate()
    {
        by_value.entry(v).or_default().push(i);
    }
    let (values, members) = by_value.into_iter().unzip();
    Ok(ProjectionProfile {
        direction: direction.clone(),
        values,
        members,
    })
}

/// Squared length of a gap; `Infinite` when there is a single projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gap {
    Finite(BigRational),
    Infinite,
}

impl Serialize for Gap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Gap::Finite(q) => JsonRatio(q).serialize(s),
            Gap::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Largest squared distance between consecutive projections.
pub fn max_gap(profile: &ProjectionProfile) -> Gap {
    profile
        .values
        .iter()
        .tuple_windows()
        .map(|(a, b)| b - a)
        .max()
        .map_or(Gap::Infinite, |d| {
            Gap::Finite(profile.direction.squared_length(&d))
        })
}

/// Exact squared width of a convex hull.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WidthValue(pub BigRational);

impl WidthValue {
    pub fn squared(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Serialize for WidthValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonRatio(&self.0).serialize(s)
    }
}

/// Squared directional width `(max <u,x> - min <u,x>)^2 / <u,u>`.
fn directional_width(set: &PointSet, u: &Direction) -> BigRational {
    let (lo, hi) = extent(set, u.coords());
    u.squared_length(&(hi - lo))
}

fn extent(set: &PointSet, v: &[BigInt]) -> (BigInt, BigInt) {
    set.inner_products(v)
        .into_iter()
        .minmax()
        .into_option()
        .expect("nonempty point set")
}

/// Distinct difference directions `x_i - x_j`, canonicalized up to sign.
fn difference_directions(set: &PointSet) -> Vec<Vec<BigInt>> {
    let mut dirs = BTreeSet::new();
    for (a, b) in set.points().iter().tuple_combinations() {
        let d: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        if let Some(k) = KernelVector::canonical(d) {
            dirs.insert(k.into_inner());
        }
    }
    dirs.into_iter().collect()
}

/// Width candidates: normals of hyperplanes spanned by `n - 1` difference
/// directions. Each facet of the difference body `conv{x_i - x_j}` is a sum
/// of two faces of the hull and is spanned by such differences, and the
/// width is attained at a facet normal of the difference body, so the
/// minimum over this superset is exact.
fn candidate_normals<'a>(
    dirs: &'a [Vec<BigInt>],
    dim: usize,
) -> impl Iterator<Item = Direction> + 'a {
    dirs.iter()
        .combinations(dim - 1)
        .filter_map(move |rows| {
            let m = if rows.is_empty() {
                IntMatrix::zeros(0, dim)
            } else {
                IntMatrix::from_rows(&rows.into_iter().cloned().collect::<Vec<_>>())
                    .expect("rows share the dimension")
            };
            kernel_vector(&m)
        })
        .map(Direction::from_kernel)
}

/// Exact squared width together with a direction attaining it.
pub fn width_with_direction(set: &PointSet, budget: &Budget) -> Result<(WidthValue, Direction)> {
    let n = set.dim();
    if n > MAX_EXACT_WIDTH_DIM {
        return Err(Error::capacity(
            "exact width dimension",
            n as u128,
            MAX_EXACT_WIDTH_DIM as u128,
        ));
    }
    if set.is_empty() {
        return Err(Error::invalid("width of an empty set"));
    }
    let dirs = difference_directions(set);
    if dirs.is_empty() {
        return Ok((
            WidthValue(BigRational::zero()),
            Direction::from_kernel(KernelVector::basis(n, 0)),
        ));
    }
    let diff_matrix = IntMatrix::from_rows(&dirs).expect("rows share the dimension");
    if rank(&diff_matrix) < n {
        let normal = kernel_vector(&diff_matrix).expect("rank deficient");
        return Ok((
            WidthValue(BigRational::zero()),
            Direction::from_kernel(normal),
        ));
    }
    budget.check_subsets("width candidates", binomial(dirs.len(), n - 1))?;
    let (w, u) = candidate_normals(&dirs, n)
        .map(|u| (directional_width(set, &u), u))
        .min_by(|a, b| a.0.cmp(&b.0))
        .expect("full-rank differences give candidates");
    Ok((WidthValue(w), u))
}

/// Exact squared width of `conv(set)` for dimensions 1 to 3. Degenerate hulls
/// have width 0.
pub fn width_exact(set: &PointSet, budget: &Budget) -> Result<WidthValue> {
    width_with_direction(set, budget).map(|(w, _)| w)
}

/// Upper bound on the squared width from a limited sample of candidate
/// directions. Never certified; intended for dimensions above 3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WidthUpperBound {
    pub squared: WidthValue,
    pub candidates: usize,
    pub certified: bool,
}

pub fn width_upper_bound(set: &PointSet, max_candidates: usize) -> Result<WidthUpperBound> {
    if set.is_empty() {
        return Err(Error::invalid("width of an empty set"));
    }
    let n = set.dim();
    let dirs = difference_directions(set);
    let axes = (0..n).map(|i| Direction::from_kernel(KernelVector::basis(n, i)));
    let mut candidates = 0;
    let mut best: Option<BigRational> = None;
    for u in axes
        .chain(candidate_normals(&dirs, n))
        .take(max_candidates.max(n))
    {
        candidates += 1;
        let w = directional_width(set, &u);
        if best.as_ref().is_none_or(|b| w < *b) {
            best = Some(w);
        }
    }
    Ok(WidthUpperBound {
        squared: WidthValue(best.expect("at least one axis")),
        candidates,
        certified: false,
    })
}

/// Check of `max_gap * (m - 1)^2 >= width^2` along one direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapBoundReport {
    pub m: usize,
    pub max_gap: Gap,
    pub squared_width: WidthValue,
    /// `max_gap * (m - 1)^2`, absent when `m = 1`.
    pub scaled_gap: Option<ScaledGap>,
    /// No gaps exist, so the bound holds vacuously.
    pub vacuous: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledGap(pub BigRational);

impl Serialize for ScaledGap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonRatio(&self.0).serialize(s)
    }
}

pub fn check_gap_bound(
    set: &PointSet,
    direction: &Direction,
    budget: &Budget,
) -> Result<GapBoundReport> {
    let squared_width = width_exact(set, budget)?;
    let profile = project(set, direction)?;
    let m = profile.m();
    let gap = max_gap(&profile);
    let (scaled_gap, vacuous, holds) = match &gap {
        Gap::Infinite => (None, true, true),
        Gap::Finite(g) => {
            let steps = BigRational::from_integer(BigInt::from(m - 1));
            let lhs = g * &steps * &steps;
            let holds = lhs >= *squared_width.squared();
            (Some(ScaledGap(lhs)), false, holds)
        }
    };
    Ok(GapBoundReport {
        m,
        max_gap: gap,
        squared_width,
        scaled_gap,
        vacuous,
        holds,
    })
}

/// A direction with the fewest distinct projections, taken from the
/// minimum covering certificate, and that number of projections.
pub fn min_projection_direction(set: &PointSet, budget: &Budget) -> Result<(Direction, usize)> {
    let (m, cert) = covering_number(set, budget)?;
    assert!(
        m <= covering_upper_bound(set.len(), set.dim()),
        "covering number {m} above max(1, k - n + 1)"
    );
    Ok((Direction::from_kernel(cert.normal), m))
}

/// Whether `p` lies in the convex hull of `body`. By Caratheodory it is enough
/// to test simplices on at most `n + 1` affinely independent vertices.
pub fn hull_contains(body: &PointSet, p: &[BigInt], budget: &Budget) -> Result<bool> {
    let n = body.dim();
    if p.len() != n {
        return Err(Error::invalid("point and body dimensions differ"));
    }
    let k = body.len();
    budget.check_subsets("hull simplices", subsets_up_to(k, n + 1))?;
    // columns (x_i, 1) against right-hand side (p, 1)
    let columns: Vec<Vec<BigInt>> = body
        .points()
        .iter()
        .map(|x| {
            x.iter()
                .cloned()
                .chain(std::iter::once(BigInt::one()))
                .collect()
        })
        .collect();
    let lifted = IntMatrix::from_columns(n + 1, &columns)?;
    let rhs: Vec<BigInt> = p
        .iter()
        .cloned()
        .chain(std::iter::once(BigInt::one()))
        .collect();
    for size in 1..=(n + 1).min(k) {
        for simplex in (0..k).combinations(size) {
            if let Solve::Unique(lambda) = solve_on_columns(&lifted, &simplex, &rhs)? {
                if lambda.iter().all(|l| !l.is_negative()) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// The widest point-free plank found by sweeping a minimum-projection
/// direction of the points across the body. This is a witness for a lower
/// bound on the supremum of empty plank widths, not the supremum itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlankWitness {
    pub k: usize,
    pub n: usize,
    pub direction: Direction,
    /// Projections used as plank boundaries: the body's support values and
    /// the distinct projections of the points between them.
    #[serde(with = "json::bigint_vec")]
    pub boundaries: Vec<BigInt>,
    /// The plank is `lower <= <direction, x> <= upper`.
    #[serde(with = "json::bigint")]
    pub lower: BigInt,
    #[serde(with = "json::bigint")]
    pub upper: BigInt,
    pub squared_width: WidthValue,
    pub body_squared_width: WidthValue,
    /// `w^2 / (k - n + 2)^2` when `k >= n`, else `w^2 / 4`.
    pub squared_bound: WidthValue,
    pub holds: bool,
}

pub fn plank_witness(body: &PointSet, points: &PointSet, budget: &Budget) -> Result<PlankWitness> {
    let n = body.dim();
    if points.dim() != n {
        return Err(Error::invalid("body and points have different dimensions"));
    }
    for (i, p) in points.points().iter().enumerate() {
        if !hull_contains(body, p, budget)? {
            return Err(Error::invalid(format!("point {i} lies outside the body")));
        }
    }
    let (body_width, body_dir) = width_with_direction(body, budget)?;
    let k = points.len();
    let direction = if points.is_empty() {
        body_dir
    } else {
        min_projection_direction(points, budget)?.0
    };
    let (lo, hi) = extent(body, direction.coords());
    let mut boundaries: BTreeSet<BigInt> = points
        .inner_products(direction.coords())
        .into_iter()
        .collect();
    boundaries.insert(lo.clone());
    boundaries.insert(hi.clone());
    let boundaries: Vec<BigInt> = boundaries.into_iter().collect();
    // first widest gap; a single boundary value means a zero-width body
    let mut widest = (lo.clone(), lo.clone());
    for (a, b) in boundaries.iter().tuple_windows() {
        if b - a > &widest.1 - &widest.0 {
            widest = (a.clone(), b.clone());
        }
    }
    let (lower, upper) = widest;
    let squared_width = WidthValue(direction.squared_length(&(&upper - &lower)));
    let divisor = if k >= n { k - n + 2 } else { 2 };
    let divisor = BigRational::from_integer(BigInt::from(divisor * divisor));
    let squared_bound = WidthValue(body_width.squared() / divisor);
    let holds = squared_width >= squared_bound;
    Ok(PlankWitness {
        k,
        n,
        direction,
        boundaries,
        lower,
        upper,
        squared_width,
        body_squared_width: body_width,
        squared_bound,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointset::build_sn;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn dir(v: &[i64]) -> Direction {
        Direction::new(ints(v)).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn pts(dim: usize, p: &[Vec<i64>]) -> PointSet {
        PointSet::from_i64(dim, p).unwrap()
    }

    fn square() -> PointSet {
        pts(2, &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]])
    }

    fn five_points() -> PointSet {
        pts(
            2,
            &[vec![0, 0], vec![2, 1], vec![1, 2], vec![3, 1], vec![2, 2]],
        )
    }

    #[test]
    fn direction_is_canonical() {
        let d = dir(&[-2, -2]);
        assert_eq!(d.coords(), ints(&[1, 1]).as_slice());
        assert_eq!(d.squared_norm(), &BigInt::from(2));
        assert!(Direction::new(ints(&[0, 0])).is_err());
    }

    #[test]
    fn projections() {
        let p = project(&build_sn(3).unwrap(), &dir(&[0, 0, 1])).unwrap();
        assert_eq!(p.values, ints(&[-1, 0, 1]));
        assert_eq!(p.m(), 3);
        let p = project(&five_points(), &dir(&[1, 1])).unwrap();
        assert_eq!(p.values, ints(&[0, 3, 4]));
        assert_eq!(p.members, vec![vec![0], vec![1, 2], vec![3, 4]]);
        let flat = pts(3, &[vec![1, 0, 2], vec![0, 1, 2], vec![5, 5, 2]]);
        assert_eq!(project(&flat, &dir(&[0, 0, 1])).unwrap().m(), 1);
        assert!(project(&flat, &dir(&[1, 1])).is_err());
    }

    #[test]
    fn gaps() {
        let p = project(&five_points(), &dir(&[1, 1])).unwrap();
        assert_eq!(max_gap(&p), Gap::Finite(q(9, 2)));
        let line = pts(1, &[vec![0], vec![1], vec![2]]);
        assert_eq!(
            max_gap(&project(&line, &dir(&[1])).unwrap()),
            Gap::Finite(q(1, 1))
        );
        let single = pts(2, &[vec![3, 4]]);
        assert_eq!(
            max_gap(&project(&single, &dir(&[1, 0])).unwrap()),
            Gap::Infinite
        );
    }

    #[test]
    fn widths() {
        let b = Budget::default();
        assert!(width_exact(&pts(2, &[vec![1, 1]]), &b).unwrap().is_zero());
        assert!(
            width_exact(&pts(2, &[vec![0, 0], vec![1, 2], vec![2, 4]]), &b)
                .unwrap()
                .is_zero()
        );
        assert_eq!(width_exact(&square(), &b).unwrap(), WidthValue(q(1, 1)));
        let tri = pts(2, &[vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(width_exact(&tri, &b).unwrap(), WidthValue(q(1, 2)));
        assert_eq!(
            width_exact(&pts(1, &[vec![-2], vec![5]]), &b).unwrap(),
            WidthValue(q(49, 1))
        );
        // unit cube and a coplanar set in 3-d
        let cube: Vec<Vec<i64>> = (0..8)
            .map(|i| vec![i & 1, (i >> 1) & 1, (i >> 2) & 1])
            .collect();
        assert_eq!(
            width_exact(&pts(3, &cube), &b).unwrap(),
            WidthValue(q(1, 1))
        );
        let flat = pts(3, &[vec![0, 0, 1], vec![3, 0, 1], vec![0, 4, 1]]);
        assert!(width_exact(&flat, &b).unwrap().is_zero());
        // regular-ish tetrahedron: width attained between opposite edges
        let tet = pts(
            3,
            &[vec![0, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]],
        );
        assert_eq!(width_exact(&tet, &b).unwrap(), WidthValue(q(1, 1)));
        assert!(matches!(
            width_exact(&pts(4, &[vec![0, 0, 0, 0]]), &b),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn upper_bound_in_four_dimensions() {
        let cube: Vec<Vec<i64>> = (0..16)
            .map(|i| vec![i & 1, (i >> 1) & 1, (i >> 2) & 1, (i >> 3) & 1])
            .collect();
        let w = width_upper_bound(&pts(4, &cube), 100).unwrap();
        assert!(!w.certified);
        assert_eq!(w.squared, WidthValue(q(1, 1)));
    }

    #[test]
    fn gap_bound_cases() {
        let b = Budget::default();
        let r = check_gap_bound(&square(), &dir(&[1, 0]), &b).unwrap();
        assert_eq!(r.m, 2);
        assert_eq!(r.max_gap, Gap::Finite(q(1, 1)));
        assert!(r.holds && !r.vacuous);
        let r = check_gap_bound(&five_points(), &dir(&[1, 1]), &b).unwrap();
        assert_eq!(r.m, 3);
        assert_eq!(r.scaled_gap, Some(ScaledGap(q(18, 1))));
        assert!(r.holds);
        let flat = pts(2, &[vec![0, 1], vec![3, 1]]);
        let r = check_gap_bound(&flat, &dir(&[0, 1]), &b).unwrap();
        assert!(r.vacuous && r.holds);
    }

    #[test]
    fn min_projection_examples() {
        let b = Budget::default();
        let (_, m) =
            min_projection_direction(&pts(3, &[vec![1, 2, 3], vec![0, 1, 0]]), &b).unwrap();
        assert_eq!(m, 1);
        for n in 1..=4 {
            assert_eq!(
                min_projection_direction(&build_sn(n).unwrap(), &b)
                    .unwrap()
                    .1,
                3
            );
        }
        let (d, m) = min_projection_direction(&five_points(), &b).unwrap();
        assert_eq!(m, 3);
        assert_eq!(d.coords(), ints(&[1, 1]).as_slice());
    }

    #[test]
    fn containment() {
        let b = Budget::default();
        assert!(hull_contains(&square(), &ints(&[1, 0]), &b).unwrap());
        assert!(!hull_contains(&square(), &ints(&[2, 0]), &b).unwrap());
        let big = pts(2, &[vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2]]);
        assert!(hull_contains(&big, &ints(&[1, 1]), &b).unwrap());
        let seg = pts(2, &[vec![0, 0], vec![2, 2]]);
        assert!(hull_contains(&seg, &ints(&[1, 1]), &b).unwrap());
        assert!(!hull_contains(&seg, &ints(&[1, 0]), &b).unwrap());
    }

    #[test]
    fn plank_examples() {
        let b = Budget::default();
        // the square [0,2]^2 with its centre: k = 1 < n = 2, bound w/2
        let big = pts(2, &[vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2]]);
        let w = plank_witness(&big, &pts(2, &[vec![1, 1]]), &b).unwrap();
        assert_eq!(w.body_squared_width, WidthValue(q(4, 1)));
        assert_eq!(w.squared_bound, WidthValue(q(1, 1)));
        assert!(w.squared_width >= w.squared_bound && w.holds);
        // no points: the whole body is one plank of width w
        let w = plank_witness(&square(), &PointSet::new(2, vec![]).unwrap(), &b).unwrap();
        assert_eq!(w.squared_width, WidthValue(q(1, 1)));
        assert!(w.holds);
        // the four corners: k = 4 >= n, bound w/4
        let w = plank_witness(&square(), &square(), &b).unwrap();
        assert_eq!(w.squared_bound, WidthValue(q(1, 16)));
        assert_eq!(w.squared_width, WidthValue(q(1, 1)));
        assert!(w.holds);
        assert!(plank_witness(&square(), &pts(2, &[vec![3, 3]]), &b).is_err());
    }
}
