//! The leaf-deletion poset of asymmetric trees.
//!
//! `S <= T` when `S` is reached from `T` by deleting one leaf at a time with
//! every intermediate tree asymmetric. Only the cover relation (single
//! deletions between consecutive levels) is stored. E7 is the unique
//! minimal element, so greedy deletion from any asymmetric tree must end at
//! E7. [`TreeError::StuckNotAtE7`] reports the opposite outcome.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::canon::{canonical_code, find_isomorphism, is_asymmetric, CanonicalCode};
use crate::enumerate::{coded_asymmetric_trees, MAX_N};
use crate::error::{Result, TreeError};
use crate::tree::{IdMap, Tree};

/// Smallest vertex count carrying an asymmetric tree.
pub const MIN_LEVEL: usize = 7;

pub fn e7_code() -> CanonicalCode {
    canonical_code(&Tree::e7())
}

fn require_asymmetric(t: &Tree) -> Result<()> {
    if t.n() >= 2 && is_asymmetric(t)? {
        Ok(())
    } else {
        Err(TreeError::NotAsymmetric)
    }
}

fn check_levels(n_max: usize) -> Result<()> {
    if (MIN_LEVEL..=MAX_N).contains(&n_max) {
        Ok(())
    } else {
        Err(TreeError::OutOfRange {
            value: n_max,
            min: MIN_LEVEL,
            max: MAX_N,
        })
    }
}

/// Leaves whose deletion leaves an asymmetric tree on at least two vertices,
/// ascending.
pub fn safe_leaves(t: &Tree) -> Result<Vec<usize>> {
    require_asymmetric(t)?;
    let mut out = Vec::new();
    for leaf in t.leaves()? {
        let (smaller, _) = t.delete_leaf(leaf.id)?;
        if smaller.n() >= 2 && is_asymmetric(&smaller)? {
            out.push(leaf.id);
        }
    }
    Ok(out)
}

/// How [`reduce_to_e7_with`] picks among safe leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    Smallest,
    Random(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    /// Deleted leaf, in the labeling of the tree before this step.
    pub leaf: usize,
    pub id_map: IdMap,
    /// Code of the tree after this step.
    pub code_after: CanonicalCode,
}

/// A sequence of safe leaf deletions from `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub start: Tree,
    pub steps: Vec<ReductionStep>,
    pub end_code: CanonicalCode,
}

impl ReductionTrace {
    /// Replays the deletions, returning `start` and every tree after it.
    /// Fails if a step no longer matches the tree it is applied to or
    /// leaves the poset.
    pub fn replay(&self) -> Result<Vec<Tree>> {
        require_asymmetric(&self.start)?;
        let mut trees = vec![self.start.clone()];
        for (i, step) in self.steps.iter().enumerate() {
            let current = trees.last().expect("non-empty");
            let (next, map) = current
                .delete_leaf(step.leaf)
                .map_err(|_| TreeError::TraceMismatch { step: i })?;
            if map != step.id_map || canonical_code(&next) != step.code_after {
                return Err(TreeError::TraceMismatch { step: i });
            }
            require_asymmetric(&next)?;
            trees.push(next);
        }
        Ok(trees)
    }

    pub fn is_complete(&self) -> bool {
        self.end_code == e7_code()
    }

    /// Start code, then `delete <leaf>` followed by the resulting code for
    /// each step.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", canonical_code(&self.start));
        for step in &self.steps {
            let _ = writeln!(out, "delete {}", step.leaf);
            let _ = writeln!(out, "{}", step.code_after);
        }
        out
    }
}

pub fn reduce_to_e7(t: &Tree) -> Result<ReductionTrace> {
    reduce_to_e7_with(t, TieBreak::Smallest)
}

/// Deletes safe leaves until the tree is E7.
pub fn reduce_to_e7_with(t: &Tree, tie_break: TieBreak) -> Result<ReductionTrace> {
    require_asymmetric(t)?;
    let target = e7_code();
    let mut rng = match tie_break {
        TieBreak::Smallest => None,
        TieBreak::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut current = t.clone();
    let mut code = canonical_code(&current);
    let mut steps = Vec::new();
    while code != target {
        let safe = safe_leaves(&current)?;
        let leaf = match (&mut rng, safe.as_slice()) {
            (_, []) => return Err(TreeError::StuckNotAtE7 { code: code.text }),
            (None, [first, ..]) => *first,
            (Some(rng), options) => options[rng.gen_range(0..options.len())],
        };
        let (next, id_map) = current.delete_leaf(leaf)?;
        code = canonical_code(&next);
        steps.push(ReductionStep {
            leaf,
            id_map,
            code_after: code.clone(),
        });
        current = next;
    }
    Ok(ReductionTrace {
        start: t.clone(),
        steps,
        end_code: code,
    })
}

/// Attachment points that grow the reference E7 ([`Tree::e7`]) into a tree
/// isomorphic to `t`, one leaf at a time. Each entry is a vertex id of the
/// tree built so far; the new vertex takes the next free id.
pub fn chain_from_e7(t: &Tree) -> Result<Vec<usize>> {
    let trace = reduce_to_e7(t)?;
    let trees = trace.replay()?;
    let bottom = trees.last().expect("non-empty");
    let mut to_ascent =
        find_isomorphism(bottom, &Tree::e7()).ok_or_else(|| TreeError::StuckNotAtE7 {
            code: canonical_code(bottom).text,
        })?;
    let mut attach = Vec::with_capacity(trace.steps.len());
    for (size, (step, before)) in (MIN_LEVEL..).zip(trace.steps.iter().zip(&trees).rev()) {
        let parent = before.neighbors(step.leaf)[0];
        let at = to_ascent[step.id_map[parent].expect("parent survives")];
        attach.push(at);
        to_ascent = step
            .id_map
            .iter()
            .map(|m| m.map_or(size, |new| to_ascent[new]))
            .collect();
    }
    Ok(attach)
}

/// Grows the reference E7 by `attach`, checking asymmetry at every level.
/// Returns E7 and each tree built from it.
pub fn replay_ascent(attach: &[usize]) -> Result<Vec<Tree>> {
    let mut trees = vec![Tree::e7()];
    for &at in attach {
        let next = trees.last().expect("non-empty").add_leaf(at)?;
        require_asymmetric(&next)?;
        trees.push(next);
    }
    Ok(trees)
}

/// Asymmetric classes on one vertex count.
#[derive(Debug, Clone)]
pub struct PosetLevel {
    pub n: usize,
    pub nodes: Vec<(CanonicalCode, Tree)>,
}

/// `upper` covers `lower`: deleting `witness_leaf` from the upper
/// representative yields the lower class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoverEdge {
    pub lower: CanonicalCode,
    pub upper: CanonicalCode,
    pub witness_leaf: usize,
}

#[derive(Debug, Clone)]
pub struct Hasse {
    pub levels: Vec<PosetLevel>,
    pub covers: Vec<CoverEdge>,
}

pub fn poset_levels(n_max: usize) -> Result<Vec<PosetLevel>> {
    check_levels(n_max)?;
    (MIN_LEVEL..=n_max)
        .map(|n| {
            Ok(PosetLevel {
                n,
                nodes: coded_asymmetric_trees(n)?,
            })
        })
        .collect()
}

/// One cover per distinct lower class reachable from `upper` by a single
/// safe deletion; the witness is the smallest such leaf.
fn covers_below(code: &CanonicalCode, t: &Tree) -> Result<Vec<CoverEdge>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for leaf in safe_leaves(t)? {
        let (lower, _) = t.delete_leaf(leaf)?;
        let lower = canonical_code(&lower);
        if seen.insert(lower.clone()) {
            out.push(CoverEdge {
                lower,
                upper: code.clone(),
                witness_leaf: leaf,
            });
        }
    }
    Ok(out)
}

pub fn build_hasse(n_max: usize) -> Result<Hasse> {
    let levels = poset_levels(n_max)?;
    let nested: Vec<Vec<CoverEdge>> = levels
        .iter()
        .flat_map(|level| &level.nodes)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(code, t)| covers_below(code, t))
        .collect::<Result<_>>()?;
    Ok(Hasse {
        levels,
        covers: nested.into_iter().flatten().collect(),
    })
}

impl Hasse {
    pub fn node_count(&self) -> usize {
        self.levels.iter().map(|l| l.nodes.len()).sum()
    }

    /// Graphviz rendering: one `rank=same` subgraph per level, nodes named
    /// by code, edges pointing from upper to lower.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph aft {\n  rankdir=TB;\n");
        for level in &self.levels {
            let _ = writeln!(out, "  subgraph level_{} {{\n    rank=same;", level.n);
            for (code, _) in &level.nodes {
                let _ = writeln!(out, "    \"{code}\" [label=\"n={}\"];", level.n);
            }
            out.push_str("  }\n");
        }
        for edge in &self.covers {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", edge.upper, edge.lower);
        }
        out.push_str("}\n");
        out
    }

    /// Tab-separated `upper lower witness_leaf` rows under a header.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("upper\tlower\twitness_leaf\n");
        for edge in &self.covers {
            let _ = writeln!(out, "{}\t{}\t{}", edge.upper, edge.lower, edge.witness_leaf);
        }
        out
    }
}

/// Codes of asymmetric trees on `7..=n_max` vertices with no safe leaf.
pub fn minimal_elements(n_max: usize) -> Result<Vec<CanonicalCode>> {
    let levels = poset_levels(n_max)?;
    let mut out = Vec::new();
    for level in &levels {
        let stuck: Vec<CanonicalCode> = level
            .nodes
            .par_iter()
            .map(|(code, t)| Ok((code, safe_leaves(t)?.is_empty())))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|(_, empty)| *empty)
            .map(|(code, _)| code.clone())
            .collect();
        out.extend(stuck);
    }
    Ok(out)
}

/// Outcome of the sweep over one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelReport {
    pub n: usize,
    pub classes: usize,
    /// Classes with no safe leaf.
    pub minimal: Vec<CanonicalCode>,
    pub reductions_ok: usize,
    /// Codes whose reduction failed, with the error text.
    pub failures: Vec<(CanonicalCode, String)>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub levels: Vec<LevelReport>,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn minimal_elements(&self) -> Vec<CanonicalCode> {
        self.levels
            .iter()
            .flat_map(|l| l.minimal.iter().cloned())
            .collect()
    }

    /// E7 is the sole minimal element and every reduction reached it.
    pub fn passed(&self) -> bool {
        let bottom_ok = self
            .levels
            .first()
            .is_some_and(|l| l.n == MIN_LEVEL && l.classes == 1);
        bottom_ok
            && self.minimal_elements() == vec![e7_code()]
            && self.levels.iter().all(|l| l.failures.is_empty())
    }
}

fn check_reduction(t: &Tree) -> std::result::Result<(), String> {
    let trace = reduce_to_e7(t).map_err(|e| e.to_string())?;
    trace.replay().map_err(|e| e.to_string())?;
    if trace.is_complete() {
        Ok(())
    } else {
        Err(format!("trace ends at {}", trace.end_code))
    }
}

/// Minimal-element scan plus a full reduction sweep over every asymmetric
/// tree on `7..=n_max` vertices. `progress` sees each level as it finishes.
pub fn verify(n_max: usize, mut progress: impl FnMut(&LevelReport)) -> Result<VerifyReport> {
    check_levels(n_max)?;
    let started = Instant::now();
    let mut levels = Vec::new();
    for n in MIN_LEVEL..=n_max {
        let level_start = Instant::now();
        let nodes = coded_asymmetric_trees(n)?;
        let results: Vec<(bool, std::result::Result<(), String>)> = nodes
            .par_iter()
            .map(|(_, t)| {
                let minimal = safe_leaves(t).map(|s| s.is_empty()).unwrap_or(true);
                (minimal, check_reduction(t))
            })
            .collect();
        let mut report = LevelReport {
            n,
            classes: nodes.len(),
            minimal: Vec::new(),
            reductions_ok: 0,
            failures: Vec::new(),
            elapsed: Duration::ZERO,
        };
        for ((code, _), (minimal, reduced)) in nodes.iter().zip(results) {
            if minimal {
                report.minimal.push(code.clone());
            }
            match reduced {
                Ok(()) => report.reductions_ok += 1,
                Err(e) => report.failures.push((code.clone(), e)),
            }
        }
        report.elapsed = level_start.elapsed();
        progress(&report);
        levels.push(report);
    }
    Ok(VerifyReport {
        levels,
        elapsed: started.elapsed(),
    })
}
