//! Exact linear algebra over the integers and rationals.
//!
//! Rank and determinant use fraction-free (Bareiss) elimination, so every
//! intermediate value is an integer and each division is exact. Pivots are
//! chosen as the first nonzero entry in column order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows.checked_mul(cols) != Some(entries.len()) {
            return Err(Error::invalid(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows.saturating_mul(cols),
                entries.len()
            )));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows. An empty slice gives the 0x0 matrix.
    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::invalid(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix::new(rows.len(), cols, entries)
    }

    /// Builds a `rows x columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let cols = columns.len();
        let mut m = IntMatrix::zeros(rows, cols);
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::invalid(format!(
                    "column {c} has {} entries, expected {rows}",
                    col.len()
                )));
            }
            for (r, v) in col.iter().enumerate() {
                m.entries[r * cols + c] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> Result<IntMatrix> {
        self.check_columns(cols)?;
        let mut m = IntMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.entries[r * cols.len() + j] = self.get(r, c).clone();
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::invalid(format!(
                "vector of length {} does not match {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), x)).collect())
    }

    /// Largest absolute entry; zero for an empty matrix.
    pub fn sup_norm(&self) -> BigInt {
        self.entries
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    fn check_columns(&self, cols: &[usize]) -> Result<()> {
        match cols.iter().find(|&&c| c >= self.cols) {
            Some(c) => Err(Error::invalid(format!(
                "column index {c} out of range for {} columns",
                self.cols
            ))),
            None => Ok(()),
        }
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    #[serde(with = "json::bigint_rows")]
    entries: Vec<Vec<BigInt>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self.to_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = MatrixRepr::deserialize(d)?;
        if repr.entries.len() != repr.rows {
            return Err(D::Error::custom(format!(
                "expected {} rows, found {}",
                repr.rows,
                repr.entries.len()
            )));
        }
        if let Some(bad) = repr.entries.iter().find(|r| r.len() != repr.cols) {
            return Err(D::Error::custom(format!(
                "row of length {} in a matrix with {} columns",
                bad.len(),
                repr.cols
            )));
        }
        let entries = repr.entries.into_iter().flatten().collect();
        IntMatrix::new(repr.rows, repr.cols, entries).map_err(D::Error::custom)
    }
}

/// Nonzero integer vector in canonical form: primitive (gcd 1) with its first
/// nonzero coordinate positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KernelVector(Vec<BigInt>);

impl KernelVector {
    /// Canonicalizes `coords`; `None` for the zero vector.
    pub fn canonical(mut coords: Vec<BigInt>) -> Option<Self> {
        let g = coords.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return None;
        }
        let lead_negative = coords.iter().find(|x| !x.is_zero())?.is_negative();
        for x in coords.iter_mut() {
            *x = &*x / &g;
            if lead_negative {
                *x = -&*x;
            }
        }
        Some(KernelVector(coords))
    }

    /// The `i`-th standard basis vector of length `dim`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = vec![BigInt::zero(); dim];
        v[i] = BigInt::one();
        KernelVector(v)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<BigInt> {
        self.0
    }
}

impl Serialize for KernelVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json::bigint_vec::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for KernelVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = json::bigint_vec::deserialize(d)?;
        let canon = KernelVector::canonical(raw.clone())
            .ok_or_else(|| D::Error::custom("zero vector is not a valid direction"))?;
        if canon.0 != raw {
            return Err(D::Error::custom("vector is not in canonical form"));
        }
        Ok(canon)
    }
}

struct Elimination {
    rank: usize,
    swaps: usize,
    work: Vec<Vec<BigInt>>,
}

fn bareiss(mut a: Vec<Vec<BigInt>>, ncols: usize) -> Elimination {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut swaps = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..ncols {
                let num = pivot * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero());
                row[j] = num / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
        r += 1;
    }
    Elimination {
        rank: r,
        swaps,
        work: a,
    }
}

/// Rank over the rationals. Matrices with no rows or no columns have rank 0.
pub fn rank(m: &IntMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    bareiss(m.to_rows(), m.cols).rank
}

/// Exact determinant of a square matrix; the 0x0 determinant is 1.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if m.rows != m.cols {
        return Err(Error::invalid(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let e = bareiss(m.to_rows(), n);
    if e.rank < n {
        return Ok(BigInt::zero());
    }
    let d = e.work[n - 1][n - 1].clone();
    Ok(if e.swaps % 2 == 1 { -d } else { d })
}

/// Reduced row echelon form over the rationals, with pivot columns.
fn rref(rows: Vec<Vec<BigRational>>, ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut a = rows;
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

fn to_rational_rows(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    (0..m.rows)
        .map(|r| {
            m.row(r)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect()
}

/// A canonical nonzero integer vector `v` with `M v = 0`, or `None` when the
/// columns of `M` are independent.
///
/// The vector is the kernel basis element attached to the first free column
/// of the reduced row echelon form. Since that form depends only on the row
/// space, matrices with equal row spaces give equal kernel vectors.
pub fn kernel_vector(m: &IntMatrix) -> Option<KernelVector> {
    let (reduced, pivots) = rref(to_rational_rows(m), m.cols);
    let free = (0..m.cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![BigRational::zero(); m.cols];
    v[free] = BigRational::one();
    for (row, &p) in reduced.iter().zip(&pivots) {
        v[p] = -row[free].clone();
    }
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints = v
        .into_iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    KernelVector::canonical(ints)
}

/// Whether the selected columns are linearly independent. More columns than
/// rows are always dependent; repeated indices count as dependent.
pub fn columns_independent(m: &IntMatrix, cols: &[usize]) -> Result<bool> {
    m.check_columns(cols)?;
    if cols.len() > m.rows {
        return Ok(false);
    }
    let sub = m.select_columns(cols)?;
    Ok(rank(&sub) == cols.len())
}

/// Outcome of solving `A_T z = y` over the rationals on a column subset `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve {
    Unique(Vec<BigRational>),
    Inconsistent,
    /// The selected columns are dependent and the system is consistent.
    Underdetermined,
}

pub fn solve_on_columns(m: &IntMatrix, cols: &[usize], y: &[BigInt]) -> Result<Solve> {
    m.check_columns(cols)?;
    if y.len() != m.rows {
        return Err(Error::invalid(format!(
            "right-hand side of length {} for {} rows",
            y.len(),
            m.rows
        )));
    }
    let k = cols.len();
    let rows: Vec<Vec<BigRational>> = (0..m.rows)
        .map(|r| {
            cols.iter()
                .map(|&c| m.get(r, c))
                .chain(std::iter::once(&y[r]))
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let (reduced, pivots) = rref(rows, k + 1);
    if pivots.last() == Some(&k) {
        return Ok(Solve::Inconsistent);
    }
    if pivots.len() < k {
        return Ok(Solve::Underdetermined);
    }
    Ok(Solve::Unique(
        reduced.iter().map(|row| row[k].clone()).collect(),
    ))
}

/// Row space kept in integer echelon form, grown one vector at a time.
#[derive(Clone, Debug)]
pub(crate) struct RowSpace {
    dim: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl RowSpace {
    pub(crate) fn new(dim: usize) -> Self {
        RowSpace {
            dim,
            rows: Vec::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub(crate) fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        // each stored row is already reduced against the ones before it, so a
        // single pass in insertion order clears every stored pivot from v
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let a = row[*p].clone();
            let b = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = &a * &*x - &b * y;
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
        self.rows.push((pivot, v));
        true
    }

    pub(crate) fn matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = self.rows.iter().map(|(_, r)| r.clone()).collect();
        if rows.is_empty() {
            IntMatrix::zeros(0, self.dim)
        } else {
            IntMatrix::from_rows(&rows).expect("rows share the space dimension")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn example_3x6() -> IntMatrix {
        m(&[
            vec![1, -1, 1, -1, 1, -1],
            vec![-1, -1, -1, -1, -2, -2],
            vec![-1, -1, -2, -2, 0, 0],
        ])
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rank_identity_zero_and_example() {
        assert_eq!(rank(&IntMatrix::identity(3)), 3);
        assert_eq!(rank(&IntMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&example_3x6()), 3);
        assert_eq!(rank(&IntMatrix::zeros(0, 4)), 0);
        assert_eq!(rank(&IntMatrix::zeros(4, 0)), 0);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&IntMatrix::identity(5)).unwrap(), BigInt::one());
        assert_eq!(
            determinant(&m(&[vec![2, 1], vec![1, 2]])).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            determinant(&m(&[vec![1, 2, 3], vec![4, 5, 6], vec![1, 2, 3]])).unwrap(),
            BigInt::zero()
        );
        assert_eq!(determinant(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::one());
        // one row swap flips the sign
        assert_eq!(
            determinant(&m(&[vec![0, 1], vec![1, 0]])).unwrap(),
            BigInt::from(-1)
        );
    }

    #[test]
    fn determinant_rejects_non_square() {
        assert!(matches!(
            determinant(&IntMatrix::zeros(2, 3)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_vector(&m(&[vec![1, -1]])).unwrap();
        assert_eq!(k.coords(), ints(&[1, 1]).as_slice());
        assert!(kernel_vector(&IntMatrix::identity(3)).is_none());
        // within-block differences of {(0,0)}, {(2,1),(1,2)}, {(3,1),(2,2)}
        let k = kernel_vector(&m(&[vec![-1, 1], vec![-1, 1]])).unwrap();
        assert_eq!(k.coords(), ints(&[1, 1]).as_slice());
        // no rows at all: the first basis direction
        let k = kernel_vector(&IntMatrix::zeros(0, 3)).unwrap();
        assert_eq!(k.coords(), ints(&[1, 0, 0]).as_slice());
    }

    #[test]
    fn kernel_is_canonical() {
        let k = kernel_vector(&m(&[vec![2, 4, 6]])).unwrap();
        // first free column is 1: x1 = 1, x0 = -2
        assert_eq!(k.coords(), ints(&[2, -1, 0]).as_slice());
        let k = kernel_vector(&m(&[vec![0, 3, 1]])).unwrap();
        assert_eq!(k.coords(), ints(&[1, 0, 0]).as_slice());
    }

    #[test]
    fn independence() {
        let a = example_3x6();
        assert!(columns_independent(&a, &[0]).unwrap());
        assert!(columns_independent(&a, &[0, 1, 2]).unwrap());
        assert!(!columns_independent(&a, &[0, 1, 2, 3]).unwrap());
        let doubled = m(&[vec![1, 2], vec![3, 6]]);
        assert!(!columns_independent(&doubled, &[0, 1]).unwrap());
        assert!(matches!(
            columns_independent(&a, &[6]),
            Err(Error::InvalidInput(_))
        ));
        assert!(!columns_independent(&a, &[1, 1]).unwrap());
    }

    #[test]
    fn solve_cases() {
        let a = example_3x6();
        let y = ints(&[2, -2, -4]);
        assert_eq!(
            solve_on_columns(&a, &[2], &y).unwrap(),
            Solve::Unique(vec![BigRational::from_integer(BigInt::from(2))])
        );
        assert_eq!(solve_on_columns(&a, &[0], &y).unwrap(), Solve::Inconsistent);
        let dup = m(&[vec![1, 2], vec![1, 2]]);
        assert_eq!(
            solve_on_columns(&dup, &[0, 1], &ints(&[1, 1])).unwrap(),
            Solve::Underdetermined
        );
    }

    #[test]
    fn row_space_tracks_rank() {
        let mut s = RowSpace::new(3);
        assert!(s.insert(ints(&[1, 2, 3])));
        assert!(!s.insert(ints(&[2, 4, 6])));
        assert!(s.insert(ints(&[0, 1, 1])));
        assert!(!s.insert(ints(&[1, 3, 4])));
        assert_eq!(s.rank(), 2);
        assert_eq!(rank(&s.matrix()), 2);
    }

    #[test]
    fn json_form() {
        let a = m(&[vec![1, -2], vec![3, 4]]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"rows":2,"cols":2,"entries":[[1,-2],[3,4]]}"#);
        let back: IntMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        let empty: IntMatrix =
            serde_json::from_str(r#"{"rows":3,"cols":0,"entries":[[],[],[]]}"#).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (3, 0));
        assert!(
            serde_json::from_str::<IntMatrix>(r#"{"rows":2,"cols":2,"entries":[[1,2]]}"#).is_err()
        );
    }
}
