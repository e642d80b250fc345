//! Embedded graph lists: all graphs on `n ≤ 7` vertices up to isomorphism,
//! and the connected cubic graphs on up to 12 vertices, in graph6 form.
//!
//! The same files live under `tests/data/` and can be passed to the CLI.

use crate::graphs::{parse_graph6_lines, Graph};

const ATLAS: [&str; 6] = [
    include_str!("../tests/data/graphs2.g6"),
    include_str!("../tests/data/graphs3.g6"),
    include_str!("../tests/data/graphs4.g6"),
    include_str!("../tests/data/graphs5.g6"),
    include_str!("../tests/data/graphs6.g6"),
    include_str!("../tests/data/graphs7.g6"),
];

const CUBIC: [&str; 5] = [
    include_str!("../tests/data/cubic4.g6"),
    include_str!("../tests/data/cubic6.g6"),
    include_str!("../tests/data/cubic8.g6"),
    include_str!("../tests/data/cubic10.g6"),
    include_str!("../tests/data/cubic12.g6"),
];

fn parse(text: &str) -> Vec<Graph> {
    parse_graph6_lines(text).expect("embedded graph6 lists are well formed")
}

/// Every graph on `n` vertices, `2 ≤ n ≤ 7`.
pub fn all_graphs(n: usize) -> Option<Vec<Graph>> {
    (2..=7).contains(&n).then(|| parse(ATLAS[n - 2]))
}

/// Every connected cubic graph on `n` vertices, `n ∈ {4, 6, 8, 10, 12}`.
pub fn cubic_graphs(n: usize) -> Option<Vec<Graph>> {
    (n % 2 == 0 && (4..=12).contains(&n)).then(|| parse(CUBIC[n / 2 - 2]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let counts: Vec<usize> = (2..=7).map(|n| all_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, [2, 4, 11, 34, 156, 1044]);
        let cubic: Vec<usize> = [4, 6, 8, 10, 12].iter().map(|&n| cubic_graphs(n).unwrap().len()).collect();
        assert_eq!(cubic, [1, 2, 5, 19, 85]);
        for n in [4, 6, 8, 10, 12] {
            assert!(cubic_graphs(n).unwrap().iter().all(|g| g.is_regular(3) && g.is_connected()));
        }
        assert!(all_graphs(8).is_none() && cubic_graphs(5).is_none());
    }
}
