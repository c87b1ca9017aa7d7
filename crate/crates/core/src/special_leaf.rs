//! Special leaves with respect to an anchor vertex.
//!
//! Walk the path `v1 = u, ..., vm = l`. At every `vi` with `i < m`, the
//! component of `T \ vi` holding `l` must be no larger than any component of
//! `T \ vi` that avoids `u`. At `v1` the anchor itself is removed, so every
//! component competes.
//!
//! [`is_special_leaf`] checks that definition head-on from
//! [`Tree::components_after_removal`]. [`find_special_leaf`] builds a leaf by
//! repeatedly stepping into a smallest component, and records its own size
//! evidence along the way.

use std::fmt;

use crate::error::{Result, TreeError};
use crate::tree::Tree;

/// Sizes observed at one path vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepEvidence {
    pub vertex: usize,
    /// Size of the component of `T \ vertex` that contains the leaf.
    pub leaf_side: usize,
    /// Smallest component of `T \ vertex` avoiding the anchor. The leaf side
    /// never contains the anchor, so it is always among these.
    pub min_other: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialLeafCertificate {
    pub leaf: usize,
    pub anchor: usize,
    /// `v1 = anchor, ..., vm = leaf`.
    pub path: Vec<usize>,
    /// One entry per `v1 .. v(m-1)`.
    pub steps: Vec<StepEvidence>,
}

impl SpecialLeafCertificate {
    pub fn holds(&self) -> bool {
        self.steps.iter().all(|s| s.leaf_side <= s.min_other)
    }
}

impl fmt::Display for SpecialLeafCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "leaf {}", self.leaf)?;
        let path: Vec<String> = self.path.iter().map(usize::to_string).collect();
        writeln!(f, "path {}", path.join(" "))?;
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(
                f,
                "step {} |Ci|={} min_other={}",
                i + 1,
                s.leaf_side,
                s.min_other
            )?;
        }
        Ok(())
    }
}

fn check_vertex(t: &Tree, v: usize) -> Result<()> {
    if v < t.n() {
        Ok(())
    } else {
        Err(TreeError::BadVertexId { id: v, n: t.n() })
    }
}

/// Size evidence for the `u`-`l` path, recomputed from scratch at every path
/// vertex.
pub fn path_evidence(t: &Tree, u: usize, l: usize) -> Result<(Vec<usize>, Vec<StepEvidence>)> {
    let path = t.path_between(u, l)?;
    let mut steps = Vec::with_capacity(path.len() - 1);
    for &v in &path[..path.len() - 1] {
        let comps = t.components_after_removal(v)?;
        let leaf_side = comps
            .iter()
            .find(|c| c.contains(l))
            .map(|c| c.size())
            .expect("leaf lies in some component");
        let min_other = comps
            .iter()
            .filter(|c| !c.contains(u))
            .map(|c| c.size())
            .min()
            .expect("leaf side avoids the anchor");
        steps.push(StepEvidence {
            vertex: v,
            leaf_side,
            min_other,
        });
    }
    Ok((path, steps))
}

/// Checks the special-leaf inequality at every path vertex. Returns the
/// certificate when it holds.
pub fn is_special_leaf(t: &Tree, u: usize, l: usize) -> Result<Option<SpecialLeafCertificate>> {
    if t.n() < 2 {
        return Err(TreeError::TooSmall {
            n: t.n(),
            needed: 2,
        });
    }
    check_vertex(t, u)?;
    check_vertex(t, l)?;
    if u == l {
        return Err(TreeError::SameVertex(u));
    }
    if !t.is_leaf(l) {
        return Err(TreeError::NotALeaf(l));
    }
    let (path, steps) = path_evidence(t, u, l)?;
    let cert = SpecialLeafCertificate {
        leaf: l,
        anchor: u,
        path,
        steps,
    };
    Ok(cert.holds().then_some(cert))
}

/// Descends from `u` into a smallest component at every step, breaking ties
/// towards the lowest neighbor id, until the entry vertex has no further
/// neighbors in its component.
pub fn find_special_leaf(t: &Tree, u: usize) -> Result<SpecialLeafCertificate> {
    if t.n() < 2 {
        return Err(TreeError::TooSmall {
            n: t.n(),
            needed: 2,
        });
    }
    check_vertex(t, u)?;

    // Vertices outside the current region are blocked; the region shrinks to
    // the chosen component each round.
    let mut blocked = vec![false; t.n()];
    let mut current = u;
    let mut path = vec![u];
    let mut steps = Vec::new();
    loop {
        blocked[current] = true;
        let mut best: Option<(usize, usize, Vec<usize>)> = None;
        for &w in t.neighbors(current) {
            if blocked[w] {
                continue;
            }
            let comp = region_component(t, w, &blocked);
            let better = match &best {
                None => true,
                Some((size, nb, _)) => (comp.len(), w) < (*size, *nb),
            };
            if better {
                best = Some((comp.len(), w, comp));
            }
        }
        let (size, next, comp) = best.expect("region around the current vertex is non-empty");
        steps.push(StepEvidence {
            vertex: current,
            leaf_side: size,
            min_other: size,
        });
        path.push(next);
        let in_comp: Vec<bool> = {
            let mut mask = vec![false; t.n()];
            for &x in &comp {
                mask[x] = true;
            }
            mask
        };
        for (v, b) in blocked.iter_mut().enumerate() {
            *b = !in_comp[v];
        }
        if size == 1 {
            return Ok(SpecialLeafCertificate {
                leaf: next,
                anchor: u,
                path,
                steps,
            });
        }
        current = next;
    }
}

/// Vertices reachable from `start` without entering a blocked vertex.
fn region_component(t: &Tree, start: usize, blocked: &[bool]) -> Vec<usize> {
    let mut seen = vec![false; t.n()];
    seen[start] = true;
    let mut out = vec![start];
    let mut i = 0;
    while i < out.len() {
        for &y in t.neighbors(out[i]) {
            if !blocked[y] && !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out
}
