//! Fixed inputs shared by the benchmarks.

use hist_forge_core::families::{random_graph_min_degree, random_graph_sigma2};
use hist_forge_core::{generate, FamilySpec, Graph};

pub const SEED: u64 = 0x5eed;

/// Lower-bound graphs the exact solver has to refute.
pub fn refutation_fixtures() -> Vec<(String, Graph)> {
    [
        "gkd:2,4",
        "gkd:3,4",
        "gkd:4,3",
        "dn:14",
        "ahat:3,3,3",
        "bp:8",
    ]
    .iter()
    .map(|s| {
        let spec: FamilySpec = s.parse().expect("valid spec");
        (s.to_string(), generate(&spec).expect("valid family"))
    })
    .collect()
}

/// Dense random graphs where a tree exists, orders 12 and 14.
pub fn search_fixtures() -> Vec<(String, Graph)> {
    [12, 14]
        .iter()
        .map(|&n| {
            (
                format!("sigma2-{n}"),
                random_graph_sigma2(n, n - 2, SEED).expect("generator succeeds"),
            )
        })
        .collect()
}

/// Graphs meeting the minimum-degree threshold for `k = 2`.
pub fn mindeg_fixtures() -> Vec<(usize, Graph)> {
    [(500, 90), (2000, 179)]
        .iter()
        .map(|&(n, delta)| {
            (
                n,
                random_graph_min_degree(n, delta, SEED).expect("generator succeeds"),
            )
        })
        .collect()
}
