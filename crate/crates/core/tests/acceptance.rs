//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each, and
//! exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use asymtree::poset::{e7_code, replay_ascent, MIN_LEVEL};
use asymtree::tree::E7_EDGES;
use asymtree::{
    all_trees, asymmetric_trees, aut_order, brute_force_automorphisms, build_tree, canonical_code,
    chain_from_e7, count_report, find_special_leaf, is_asymmetric, is_special_leaf, reduce_to_e7,
    reduce_to_e7_with, safe_leaves, TieBreak, Tree,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn asymmetric_up_to(n_max: usize) -> Vec<Tree> {
    (MIN_LEVEL..=n_max)
        .flat_map(|n| asymmetric_trees(n).unwrap())
        .collect()
}

fn trees_between(lo: usize, hi: usize) -> impl Iterator<Item = Tree> {
    (lo..=hi).flat_map(|n| all_trees(n).unwrap())
}

/// `verify --max-n 14` exits 0; the single class at n = 7 is the
/// reconstructed E7; every asymmetric tree on 8..=14 vertices has a safe leaf.
fn unique_minimal_element() -> Outcome {
    let started = Instant::now();
    let outcome = asymtree::cli::run(["asymtree", "verify", "--max-n", "14"]);
    ensure(outcome.status == 0, || {
        format!("verify exited {}:\n{}", outcome.status, outcome.stdout)
    })?;

    let e7 = build_tree(&E7_EDGES).unwrap();
    let seven: Vec<Tree> = asymmetric_trees(7).unwrap().collect();
    ensure(seven.len() == 1, || {
        format!("{} classes at n=7", seven.len())
    })?;
    ensure(canonical_code(&seven[0]) == canonical_code(&e7), || {
        "n=7 class is not E7".into()
    })?;

    let mut checked = 0;
    for t in asymmetric_up_to(14).into_iter().filter(|t| t.n() >= 8) {
        ensure(!safe_leaves(&t).unwrap().is_empty(), || {
            format!("no safe leaf: {t:?}")
        })?;
        checked += 1;
    }
    let secs = started.elapsed().as_secs_f64();
    ensure(secs < 120.0, || format!("took {secs:.1}s, limit 120s"))?;
    Ok(format!("{checked} trees on 8..=14 vertices, {secs:.2}s"))
}

/// Greedy reduction reaches E7 with asymmetric intermediates for n <= 14,
/// and under five random tie-break seeds for n <= 12.
fn reduction_theorem() -> Outcome {
    let target = e7_code();
    let mut runs = 0;
    for t in asymmetric_up_to(14) {
        let trace = reduce_to_e7(&t).map_err(|e| format!("{t:?}: {e}"))?;
        let trees = trace.replay().map_err(|e| format!("{t:?}: {e}"))?;
        ensure(canonical_code(trees.last().unwrap()) == target, || {
            format!("{t:?} ends elsewhere")
        })?;
        runs += 1;
    }
    let seeded = asymmetric_up_to(12);
    for seed in [11, 23, 37, 41, 53] {
        for t in &seeded {
            let trace = reduce_to_e7_with(t, TieBreak::Random(seed))
                .map_err(|e| format!("seed {seed} {t:?}: {e}"))?;
            trace
                .replay()
                .map_err(|e| format!("seed {seed} {t:?}: {e}"))?;
            ensure(trace.end_code == target, || {
                format!("seed {seed} {t:?} ends elsewhere")
            })?;
            runs += 1;
        }
    }
    Ok(format!("{runs} reductions, 0 failures"))
}

/// Replaying the ascent chain rebuilds each asymmetric tree with n <= 12.
fn ascent_theorem() -> Outcome {
    let trees = asymmetric_up_to(12);
    for t in &trees {
        let attach = chain_from_e7(t).map_err(|e| format!("{t:?}: {e}"))?;
        let built = replay_ascent(&attach).map_err(|e| format!("{t:?}: {e}"))?;
        ensure(
            canonical_code(built.last().unwrap()) == canonical_code(t),
            || format!("{t:?} not rebuilt"),
        )?;
    }
    Ok(format!("{} chains replayed, 0 failures", trees.len()))
}

/// aut_order equals the permutation count and is_asymmetric agrees, n <= 9.
fn symmetry_oracle() -> Outcome {
    let mut checked = 0;
    for t in trees_between(1, 9) {
        let count = brute_force_automorphisms(&t).unwrap().len();
        ensure(aut_order(&t).order == count.into(), || {
            format!("{t:?}: |Aut| mismatch")
        })?;
        if t.n() >= 2 {
            ensure(is_asymmetric(&t).unwrap() == (count == 1), || {
                format!("{t:?}: asymmetry mismatch")
            })?;
        }
        checked += 1;
    }
    Ok(format!("{checked} trees, 0 mismatches"))
}

/// No asymmetric trees on 2..=6 vertices; exactly one on 7.
fn no_small_asymmetric_trees() -> Outcome {
    for n in 2..=6 {
        let count = asymmetric_trees(n).unwrap().count();
        ensure(count == 0, || format!("{count} asymmetric trees at n={n}"))?;
    }
    let count = asymmetric_trees(7).unwrap().count();
    ensure(count == 1, || format!("{count} asymmetric trees at n=7"))?;
    Ok("0 classes on 2..=6 vertices, 1 on 7".into())
}

/// The finder's leaf passes the independent predicate for every tree on
/// 2..=10 vertices and every anchor.
fn special_leaf_existence() -> Outcome {
    let mut checked = 0;
    for t in trees_between(2, 10) {
        for u in 0..t.n() {
            let cert = find_special_leaf(&t, u).map_err(|e| format!("{t:?} u={u}: {e}"))?;
            let ok = is_special_leaf(&t, u, cert.leaf).map_err(|e| format!("{t:?} u={u}: {e}"))?;
            ensure(ok.is_some(), || {
                format!("{t:?} u={u}: leaf {} fails", cert.leaf)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (tree, anchor) pairs, 0 failures"))
}

/// Center lemma: items about center count, radius paths and leaf deletion
/// for n <= 10; center behaviour under automorphisms for n <= 9.
fn center_lemma() -> Outcome {
    let mut checks = 0;
    for t in trees_between(2, 10) {
        let info = t.center_info();
        match info.centers[..] {
            [c] => {
                for leaf in t.leaves().unwrap() {
                    let (smaller, map) = t.delete_leaf(leaf.id).unwrap();
                    let c2 = map[c].unwrap();
                    ensure(smaller.center_info().centers.contains(&c2), || {
                        format!("(5) {t:?}")
                    })?;
                    checks += 1;
                }
            }
            [u, v] => {
                ensure(t.has_edge(u, v), || format!("(1) {t:?}"))?;
                for (from, other) in [(u, v), (v, u)] {
                    let dist = t.distances_from(from).unwrap();
                    for w in (0..t.n()).filter(|&w| dist[w] == info.radius) {
                        ensure(t.path_between(from, w).unwrap().contains(&other), || {
                            format!("(2) {t:?}")
                        })?;
                        checks += 1;
                    }
                }
                for leaf in t.leaves().unwrap() {
                    let (smaller, map) = t.delete_leaf(leaf.id).unwrap();
                    let allowed: Vec<usize> = [u, v].iter().filter_map(|&x| map[x]).collect();
                    for c in smaller.center_info().centers {
                        ensure(allowed.contains(&c), || format!("(6) {t:?}"))?;
                    }
                    checks += 1;
                }
            }
            _ => return Err(format!("(1) {t:?} has {} centers", info.centers.len())),
        }
    }
    for t in trees_between(2, 9) {
        let centers = t.center_info().centers;
        for phi in brute_force_automorphisms(&t).unwrap() {
            let m = &phi.mapping;
            let ok = match centers[..] {
                [u] => m[u] == u,
                [u, v] => (m[u] == u && m[v] == v) || (m[u] == v && m[v] == u),
                _ => false,
            };
            ensure(ok, || format!("(3)/(4) {t:?} {m:?}"))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} checks, 0 failures"))
}

/// Code sets equal the Prüfer-dedup oracle for n <= 9; totals for n <= 12
/// equal the frozen oracle fixture.
fn enumeration_correctness() -> Outcome {
    for n in 2..=9 {
        let ours: BTreeSet<_> = all_trees(n).unwrap().map(|t| canonical_code(&t)).collect();
        let mut oracle = BTreeSet::new();
        common::for_each_labeled_tree(n, |t| {
            oracle.insert(canonical_code(&t));
        });
        ensure(ours == oracle, || format!("code sets differ at n={n}"))?;
    }
    let frozen: Vec<_> = common::frozen_counts()
        .into_iter()
        .filter(|r| r.0 <= 12)
        .collect();
    let rows = count_report(12).unwrap();
    ensure(rows.len() == frozen.len(), || "row count".into())?;
    for (row, (n, total, asym)) in rows.iter().zip(&frozen) {
        ensure(
            (row.n, row.total, row.asymmetric) == (*n, *total, *asym),
            || {
                format!(
                    "n={n}: got ({}, {}), oracle ({total}, {asym})",
                    row.total, row.asymmetric
                )
            },
        )?;
    }
    Ok("Prüfer sets n<=9 and totals n<=12 match".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("unique minimal element", unique_minimal_element),
        ("reduction to E7", reduction_theorem),
        ("ascent from E7", ascent_theorem),
        ("symmetry oracle equivalence", symmetry_oracle),
        (
            "no asymmetric trees below 7 vertices",
            no_small_asymmetric_trees,
        ),
        ("special-leaf existence", special_leaf_existence),
        ("center lemma", center_lemma),
        ("enumeration correctness", enumeration_correctness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result =
            panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
