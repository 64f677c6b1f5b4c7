//! Fixtures shared by the benchmarks.

use hypercover_core::{IntMatrix, PointSet};

/// The 3x6 difference matrix of `S_3` split 3 + 2 over `K_{3,2}`.
pub fn example_matrix() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![1, -1, 1, -1, 1, -1],
        vec![-1, -1, -1, -1, -2, -2],
        vec![-1, -1, -2, -2, 0, 0],
    ])
    .expect("rectangular")
}

/// The origin and the columns of `[[2,1,3,2],[1,2,1,2]]`.
pub fn five_points() -> PointSet {
    PointSet::from_i64(
        2,
        &[vec![0, 0], vec![2, 1], vec![1, 2], vec![3, 1], vec![2, 2]],
    )
    .expect("distinct points")
}
