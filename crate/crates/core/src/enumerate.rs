//! Isomorphism-free generation of free trees.
//!
//! Trees come from the Wright-Richmond-Odlyzko-McKay walk over level
//! sequences: each free tree is visited once, as the rooted tree whose level
//! sequence is canonical for its center. Streams are emitted in ascending
//! canonical-code order so cursors stay meaningful across runs.

use rayon::prelude::*;

use crate::canon::{canonical_code, is_asymmetric, CanonicalCode};
use crate::error::{Result, TreeError};
use crate::tree::Tree;

/// Largest vertex count the enumerator accepts.
pub const MAX_N: usize = 20;

fn check_range(n: usize, min: usize) -> Result<()> {
    if (min..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(TreeError::OutOfRange {
            value: n,
            min,
            max: MAX_N,
        })
    }
}

/// One Beyer-Hedetniemi step: the next rooted level sequence after
/// `seq`, replanting from position `p`.
fn next_rooted(seq: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = seq.len() - 1;
            while seq[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while seq[q] != seq[p] - 1 {
        q -= 1;
    }
    let mut out = seq.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

/// Splits a level sequence into the leftmost root subtree (levels shifted
/// up by one) and the remainder with the root kept.
fn split(seq: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = seq
        .iter()
        .enumerate()
        .skip(2)
        .find(|&(_, &l)| l == 1)
        .map_or(seq.len(), |(i, _)| i);
    let left = seq[1..m].iter().map(|l| l - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&seq[m..]);
    (left, rest)
}

/// Advances `candidate` to the next level sequence that is canonical as a
/// free tree (possibly `candidate` itself).
fn next_free(candidate: Vec<usize>) -> Option<Vec<usize>> {
    let (left, rest) = split(&candidate);
    let left_height = left.iter().copied().max().unwrap_or(0);
    let rest_height = rest.iter().copied().max().unwrap_or(0);
    let mut valid = rest_height >= left_height;
    if valid
        && rest_height == left_height
        && (left.len() > rest.len() || (left.len() == rest.len() && left > rest))
    {
        valid = false;
    }
    if valid {
        return Some(candidate);
    }
    let p = left.len();
    let mut next = next_rooted(&candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split(&next);
        let height = new_left.iter().copied().max().unwrap_or(0);
        let len = next.len();
        for (slot, level) in next[len - height - 1..].iter_mut().zip(1..) {
            *slot = level;
        }
    }
    Some(next)
}

fn tree_from_levels(seq: &[usize]) -> Tree {
    let mut stack: Vec<usize> = Vec::with_capacity(seq.len());
    let mut edges = Vec::with_capacity(seq.len().saturating_sub(1));
    for (i, &level) in seq.iter().enumerate() {
        while let Some(&top) = stack.last() {
            if seq[top] >= level {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(&parent) = stack.last() {
            edges.push((parent, i));
        }
        stack.push(i);
    }
    Tree::from_edges(seq.len(), &edges).expect("level sequence encodes a tree")
}

/// Every free tree on `n` vertices in generation order, one per class.
fn generate(n: usize) -> Vec<Tree> {
    if n == 1 {
        return vec![Tree::single()];
    }
    // Start from the path rooted at its center.
    let mut seq: Vec<usize> = (0..=n / 2).chain(1..n.div_ceil(2)).collect();
    let mut out = Vec::new();
    while let Some(free) = next_free(seq) {
        out.push(tree_from_levels(&free));
        match next_rooted(&free, None) {
            Some(next) => seq = next,
            None => break,
        }
    }
    out
}

/// All free trees on `n` vertices paired with their canonical codes,
/// ascending by code.
pub fn coded_trees(n: usize) -> Result<Vec<(CanonicalCode, Tree)>> {
    check_range(n, 1)?;
    let mut coded: Vec<_> = generate(n)
        .into_par_iter()
        .map(|t| (canonical_code(&t), t))
        .collect();
    coded.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(coded)
}

/// A resumable stream over one representative per isomorphism class.
#[derive(Debug, Clone)]
pub struct EnumerationStream {
    n: usize,
    items: Vec<(CanonicalCode, Tree)>,
    cursor: usize,
    emitted: usize,
}

impl EnumerationStream {
    /// Reopens a stream at a cursor obtained from [`EnumerationStream::cursor`].
    pub fn resume(n: usize, cursor: usize) -> Result<EnumerationStream> {
        let items = coded_trees(n)?;
        if cursor > items.len() {
            return Err(TreeError::OutOfRange {
                value: cursor,
                min: 0,
                max: items.len(),
            });
        }
        Ok(EnumerationStream {
            n,
            items,
            cursor,
            emitted: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    /// Trees yielded by this handle (not counting any skipped by `resume`).
    pub fn emitted(&self) -> usize {
        self.emitted
    }

    /// Same stream, yielding each tree with its canonical code.
    pub fn with_codes(self) -> impl Iterator<Item = (CanonicalCode, Tree)> {
        self.items.into_iter().skip(self.cursor)
    }
}

impl Iterator for EnumerationStream {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        let (_, tree) = self.items.get(self.cursor)?;
        self.cursor += 1;
        self.emitted += 1;
        Some(tree.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.items.len() - self.cursor;
        (left, Some(left))
    }
}

impl ExactSizeIterator for EnumerationStream {}

pub fn all_trees(n: usize) -> Result<EnumerationStream> {
    EnumerationStream::resume(n, 0)
}

/// Asymmetric trees on `n >= 2` vertices with their codes, ascending by code.
pub fn coded_asymmetric_trees(n: usize) -> Result<Vec<(CanonicalCode, Tree)>> {
    check_range(n, 2)?;
    Ok(coded_trees(n)?
        .into_par_iter()
        .filter(|(_, t)| is_asymmetric(t).expect("n >= 2"))
        .collect())
}

pub fn asymmetric_trees(n: usize) -> Result<impl Iterator<Item = Tree>> {
    Ok(coded_asymmetric_trees(n)?.into_iter().map(|(_, t)| t))
}

/// One row of [`count_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountRow {
    pub n: usize,
    pub total: usize,
    pub asymmetric: usize,
}

/// Per-`n` totals and asymmetric counts for `1..=n_max`. Single-vertex trees
/// count as not asymmetric.
pub fn count_report(n_max: usize) -> Result<Vec<CountRow>> {
    check_range(n_max, 1)?;
    (1..=n_max)
        .map(|n| {
            let trees = coded_trees(n)?;
            let asymmetric = if n < 2 {
                0
            } else {
                trees
                    .par_iter()
                    .filter(|(_, t)| is_asymmetric(t).expect("n >= 2"))
                    .count()
            };
            Ok(CountRow {
                n,
                total: trees.len(),
                asymmetric,
            })
        })
        .collect()
}

/// Renders rows as TSV with a `n total asymmetric` header.
pub fn count_report_tsv(rows: &[CountRow]) -> String {
    let mut out = String::from("n\ttotal\tasymmetric\n");
    for r in rows {
        out.push_str(&format!("{}\t{}\t{}\n", r.n, r.total, r.asymmetric));
    }
    out
}
