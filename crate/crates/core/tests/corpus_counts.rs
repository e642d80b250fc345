//! Corpus counts against a brute force over label multisets.

use std::collections::HashSet;

use sumgraph::corpora::all_graphs;
use sumgraph::search::count_corpus_with;
use sumgraph::Graph;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical(adj: &[Vec<bool>], perms: &[Vec<usize>]) -> u64 {
    let n = adj.len();
    perms
        .iter()
        .map(|p| {
            let mut code = 0u64;
            for i in 0..n {
                for j in i + 1..n {
                    code = code << 1 | adj[p[i]][p[j]] as u64;
                }
            }
            code
        })
        .min()
        .unwrap()
}

fn graph_adj(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    (0..n).map(|i| (0..n).map(|j| g.has_edge(i, j)).collect()).collect()
}

/// Isomorphism classes of graphs induced by label multisets from `values`.
fn achieved(n: usize, values: &[i64], relaxed: bool, perms: &[Vec<usize>]) -> HashSet<u64> {
    let mut out = HashSet::new();
    let mut idx = vec![0usize; n];
    loop {
        let labels: Vec<i64> = idx.iter().map(|&i| values[i]).collect();
        if relaxed || labels.windows(2).all(|w| w[0] != w[1]) {
            let adj: Vec<Vec<bool>> = (0..n)
                .map(|i| (0..n).map(|j| i != j && labels.contains(&(labels[i] + labels[j]))).collect())
                .collect();
            out.insert(canonical(&adj, perms));
        }
        // Next non-decreasing index tuple.
        let Some(k) = (0..n).rev().find(|&k| idx[k] + 1 < values.len()) else { break };
        idx[k] += 1;
        for t in k + 1..n {
            idx[t] = idx[k];
        }
    }
    out
}

fn check(n: usize, bound: i64) {
    let graphs = all_graphs(n).unwrap();
    let perms = permutations(n);
    let classes: Vec<u64> = graphs.iter().map(|g| canonical(&graph_adj(g), &perms)).collect();
    for zero in [false, true] {
        let values: Vec<i64> = (-bound..=bound).filter(|&v| zero || v != 0).collect();
        let isg = achieved(n, &values, false, &perms);
        let risg = achieved(n, &values, true, &perms);
        assert!(risg.iter().all(|c| classes.contains(c)), "corpus for n={n} is incomplete");
        let want = (
            classes.iter().filter(|c| isg.contains(c)).count(),
            classes.iter().filter(|c| risg.contains(c)).count(),
        );
        let got = count_corpus_with(&graphs, true, bound as u64, zero).unwrap();
        assert_eq!((got.isg, got.risg.unwrap()), want, "n={n} bound={bound} zero allowed={zero}");
    }
}

#[test]
fn small_orders_match_brute_force() {
    for n in 2..=4 {
        check(n, 12);
    }
}

#[test]
fn order_five_matches_brute_force() {
    check(5, 12);
}

#[test]
fn printed_rows_under_each_convention() {
    let row = |n: usize, zero: bool| {
        let c = count_corpus_with(&all_graphs(n).unwrap(), true, 12, zero).unwrap();
        (c.isg, c.risg.unwrap())
    };
    // Nonzero labels give the printed rows for n = 4, 5, 6.
    assert_eq!(row(4, false), (5, 6));
    assert_eq!(row(5, false), (14, 18));
    assert_eq!(row(6, false), (50, 72));
    // The printed rows for n = 2, 3 need the label 0.
    assert_eq!(row(2, true), (2, 2));
    assert_eq!(row(3, true), (4, 4));
    assert_eq!(row(2, false), (1, 1));
    assert_eq!(row(3, false), (2, 2));
}
