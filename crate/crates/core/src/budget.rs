use crate::error::{Error, Result};

/// Default cap on the number of subsets any single enumeration may visit.
pub const DEFAULT_SUBSET_BUDGET: u128 = 5_000_000;

/// Limits on exhaustive searches. Every search checks its size up front and
/// fails with [`Error::Capacity`] instead of truncating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Column subsets, edge subsets, supports or bipartitions per call.
    pub subsets: u128,
    /// Largest point set searched for coverings by two hyperplanes.
    pub cover_points_two: usize,
    /// Largest point set searched for coverings by three or more hyperplanes.
    pub cover_points_many: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            subsets: DEFAULT_SUBSET_BUDGET,
            cover_points_two: 22,
            cover_points_many: 16,
        }
    }
}

impl Budget {
    pub fn with_subsets(subsets: u128) -> Self {
        Budget {
            subsets,
            ..Budget::default()
        }
    }

    pub(crate) fn check_subsets(&self, what: &str, required: u128) -> Result<()> {
        if required > self.subsets {
            Err(Error::capacity(what, required, self.subsets))
        } else {
            Ok(())
        }
    }
}

/// `n choose k`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of subsets of size `1..=max_size` drawn from `n` items.
pub(crate) fn subsets_up_to(n: usize, max_size: usize) -> u128 {
    (1..=max_size.min(n)).fold(0u128, |acc, j| acc.saturating_add(binomial(n, j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(64, 3), 41_664);
        assert_eq!(subsets_up_to(4, 2), 10);
    }

    #[test]
    fn huge_binomial_saturates() {
        assert_eq!(binomial(10_000, 5_000), u128::MAX);
    }
}
