//! Fixed workloads shared by the benchmarks.

use extcrystal::HighestWeight;

/// Highest weights benchmarked at every size: two and three residues at a
/// couple of levels.
pub fn fixtures() -> Vec<(&'static str, HighestWeight)> {
    [
        ("2L0+L1", vec![2, 1]),
        ("L0+L1", vec![1, 1]),
        ("L0+L1+L2", vec![1, 1, 1]),
        ("2L0+L2+L3", vec![2, 0, 1, 1]),
    ]
    .into_iter()
    .map(|(name, a)| (name, HighestWeight::new(a).expect("fixture weights are dominant")))
    .collect()
}
