use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::group::FiniteGroupTable;
use crate::series::TruncatedSeries;

/// Word-length spheres of a finite group with respect to a generating set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthSeries {
    pub series: TruncatedSeries,
    /// Every element was reached within the requested order.
    pub covered: bool,
}

/// Breadth-first spheres over `C ∪ C⁻¹`, up to `max_order`.
pub fn generic_length_series(g: &FiniteGroupTable, gens: &[usize], max_order: usize) -> LengthSeries {
    let mut step: Vec<usize> = gens.iter().flat_map(|&c| [c, g.inv(c)]).collect::<HashSet<_>>().into_iter().collect();
    step.sort_unstable();
    let mut dist = vec![usize::MAX; g.order()];
    dist[0] = 0;
    let mut frontier = vec![0usize];
    let mut counts = vec![1i64];
    while counts.len() <= max_order && !frontier.is_empty() {
        let r = counts.len();
        let mut next = Vec::new();
        for &x in &frontier {
            for &c in &step {
                let y = g.mul(x, c);
                if dist[y] == usize::MAX {
                    dist[y] = r;
                    next.push(y);
                }
            }
        }
        counts.push(next.len() as i64);
        frontier = next;
    }
    counts.resize(max_order + 1, 0);
    let covered = dist.iter().all(|&d| d != usize::MAX);
    LengthSeries { series: TruncatedSeries::from_ints(&counts), covered }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2() {
        let z2 = FiniteGroupTable::from_table(vec!["1".into(), "s".into()], vec![vec![0, 1], vec![1, 0]]).unwrap();
        let s = generic_length_series(&z2, &[1], 3);
        assert_eq!(s.series.to_i64(), vec![1, 1, 0, 0]);
        assert!(s.covered);
        assert!(!generic_length_series(&z2, &[], 3).covered);
    }
}
