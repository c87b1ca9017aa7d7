//! Oracles shared by the integration tests. None of these go through the
//! enumerator or the canonical-code machinery.

#![allow(dead_code)]

use asymtree::Tree;
use proptest::prelude::*;

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`) into a labeled tree.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Tree {
    assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&j| degree[j] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&j| degree[j] == 1).collect();
    edges.push((rest[0], rest[1]));
    Tree::from_edges(n, &edges).unwrap()
}

/// Calls `f` on every labeled tree on `n >= 2` vertices.
pub fn for_each_labeled_tree(n: usize, mut f: impl FnMut(Tree)) {
    if n == 2 {
        f(Tree::path(2));
        return;
    }
    let mut seq = vec![0usize; n - 2];
    loop {
        f(prufer_decode(n, &seq));
        let mut i = 0;
        loop {
            if i == seq.len() {
                return;
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

/// Backtracking search for a bijection `t1 -> t2` preserving adjacency.
pub fn brute_force_isomorphic(t1: &Tree, t2: &Tree) -> bool {
    fn extend(t1: &Tree, t2: &Tree, v: usize, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if v == t1.n() {
            return true;
        }
        for w in 0..t2.n() {
            if used[w] || t1.degree(v) != t2.degree(w) {
                continue;
            }
            if (0..v).all(|x| t1.has_edge(v, x) == t2.has_edge(w, map[x])) {
                used[w] = true;
                map.push(w);
                if extend(t1, t2, v + 1, map, used) {
                    return true;
                }
                map.pop();
                used[w] = false;
            }
        }
        false
    }
    if t1.n() != t2.n() {
        return false;
    }
    let mut d1 = t1.degree_sequence();
    let mut d2 = t2.degree_sequence();
    d1.sort_unstable();
    d2.sort_unstable();
    d1 == d2 && extend(t1, t2, 0, &mut Vec::new(), &mut vec![false; t2.n()])
}

/// Per-n `(total, asymmetric)` counts produced by `tests/oracle/tree_counts.py`.
pub fn frozen_counts() -> Vec<(usize, usize, usize)> {
    include_str!("../fixtures/tree_counts.tsv")
        .lines()
        .skip(1)
        .map(|line| {
            let f: Vec<usize> = line.split('\t').map(|x| x.parse().unwrap()).collect();
            (f[0], f[1], f[2])
        })
        .collect()
}

/// Random labeled trees on `min..=max` vertices via random Prüfer sequences.
pub fn arb_tree(min: usize, max: usize) -> impl Strategy<Value = Tree> {
    (min.max(2)..=max).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n - 2).prop_map(move |seq| prufer_decode(n, &seq))
    })
}

/// A random tree together with a random permutation of its vertices.
pub fn arb_tree_and_perm(min: usize, max: usize) -> impl Strategy<Value = (Tree, Vec<usize>)> {
    arb_tree(min, max).prop_flat_map(|t| {
        let ids: Vec<usize> = (0..t.n()).collect();
        (Just(t), Just(ids).prop_shuffle())
    })
}
