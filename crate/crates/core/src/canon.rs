//! AHU canonical codes, isomorphism, automorphism counting and the rigidity
//! test, plus the permutation oracle the fast routines are checked against.
//!
//! Rooted codes follow the grammar `"(" + sorted child codes + ")"`. Child
//! codes are ordered lexicographically with `)` ranked before `(`, so a leaf
//! `()` precedes every deeper subtree. Free trees are coded from their
//! center: `C` + the rooted code at the unique center, or `B` + the two
//! half-codes (sorted the same way) obtained by cutting the center-center
//! edge.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Result, TreeError};
use crate::tree::Tree;

/// Largest tree handed to [`brute_force_automorphisms`].
pub const BRUTE_FORCE_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CodeKind {
    Rooted,
    Unicentral,
    Bicentral,
}

/// Text code identifying a rooted or free tree up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    pub text: String,
    pub kind: CodeKind,
}

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.text
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// An adjacency-preserving permutation; `mapping[v]` is the image of `v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Automorphism {
    pub mapping: Vec<usize>,
}

impl Automorphism {
    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(v, &w)| v == w)
    }
}

/// Order of the automorphism group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutCount {
    pub order: BigUint,
}

impl AutCount {
    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }
}

impl fmt::Display for AutCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.order)
    }
}

/// Orders codes lexicographically with `)` before `(`.
pub fn code_order(a: &str, b: &str) -> Ordering {
    fn rank(c: u8) -> u8 {
        match c {
            b')' => 0,
            b'(' => 1,
            other => other,
        }
    }
    a.bytes().map(rank).cmp(b.bytes().map(rank))
}

/// A tree hung from one root, or from two adjacent roots that each own one
/// half of the tree.
struct Rooting {
    /// Children of each vertex, sorted by [`code_order`] of their codes.
    children: Vec<Vec<usize>>,
    code: Vec<String>,
}

impl Rooting {
    fn new(t: &Tree, roots: &[usize]) -> Rooting {
        let n = t.n();
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        for &r in roots {
            parent[r] = r;
            queue.push_back(r);
        }
        let mut children = vec![Vec::new(); n];
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in t.neighbors(x) {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    children[x].push(y);
                    queue.push_back(y);
                }
            }
        }
        let mut code = vec![String::new(); n];
        for &x in order.iter().rev() {
            let mut kids = std::mem::take(&mut children[x]);
            kids.sort_by(|&a, &b| code_order(&code[a], &code[b]).then(a.cmp(&b)));
            let mut text =
                String::with_capacity(2 + kids.iter().map(|&c| code[c].len()).sum::<usize>());
            text.push('(');
            for &c in &kids {
                text.push_str(&code[c]);
            }
            text.push(')');
            code[x] = text;
            children[x] = kids;
        }
        Rooting { children, code }
    }

    /// True when no vertex has two children with equal codes.
    fn siblings_distinct(&self) -> bool {
        self.children
            .iter()
            .all(|kids| kids.windows(2).all(|w| self.code[w[0]] != self.code[w[1]]))
    }

    /// Automorphisms of the subtree under `v` that fix `v`.
    fn stabilizer_order(&self, v: usize) -> BigUint {
        let mut order = BigUint::one();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            let kids = &self.children[x];
            let mut run = 1u32;
            for i in 1..=kids.len() {
                if i < kids.len() && self.code[kids[i]] == self.code[kids[i - 1]] {
                    run += 1;
                } else {
                    for k in 2..=run {
                        order *= k;
                    }
                    run = 1;
                }
            }
            stack.extend(kids.iter().copied());
        }
        order
    }
}

/// AHU code of `t` rooted at `root`.
pub fn rooted_code(t: &Tree, root: usize) -> Result<CanonicalCode> {
    if root >= t.n() {
        return Err(TreeError::BadVertexId { id: root, n: t.n() });
    }
    let mut rooting = Rooting::new(t, &[root]);
    Ok(CanonicalCode {
        text: std::mem::take(&mut rooting.code[root]),
        kind: CodeKind::Rooted,
    })
}

/// Center-rooted view of a free tree shared by the unrooted routines.
struct CenterRooting {
    centers: Vec<usize>,
    rooting: Rooting,
}

impl CenterRooting {
    fn new(t: &Tree) -> CenterRooting {
        let centers = t.centers();
        let rooting = Rooting::new(t, &centers);
        CenterRooting { centers, rooting }
    }

    /// Centers ordered so that the first owns the smaller half-code.
    fn ordered_centers(&self) -> Vec<usize> {
        let mut cs = self.centers.clone();
        if cs.len() == 2
            && code_order(&self.rooting.code[cs[1]], &self.rooting.code[cs[0]]) == Ordering::Less
        {
            cs.swap(0, 1);
        }
        cs
    }

    fn code(&self) -> CanonicalCode {
        let cs = self.ordered_centers();
        match cs.as_slice() {
            [c] => CanonicalCode {
                text: format!("C{}", self.rooting.code[*c]),
                kind: CodeKind::Unicentral,
            },
            [a, b] => CanonicalCode {
                text: format!("B{}{}", self.rooting.code[*a], self.rooting.code[*b]),
                kind: CodeKind::Bicentral,
            },
            _ => unreachable!("a tree has one or two centers"),
        }
    }

    fn halves_equal(&self) -> bool {
        self.centers.len() == 2
            && self.rooting.code[self.centers[0]] == self.rooting.code[self.centers[1]]
    }
}

/// Relabeling-invariant code of the free tree `t`.
pub fn canonical_code(t: &Tree) -> CanonicalCode {
    CenterRooting::new(t).code()
}

pub fn are_isomorphic(t1: &Tree, t2: &Tree) -> bool {
    t1.n() == t2.n() && canonical_code(t1) == canonical_code(t2)
}

/// An isomorphism from `t1` onto `t2` (`map[v]` is the image of `v`), or
/// `None` when the trees are not isomorphic.
pub fn find_isomorphism(t1: &Tree, t2: &Tree) -> Option<Vec<usize>> {
    if t1.n() != t2.n() {
        return None;
    }
    let (r1, r2) = (CenterRooting::new(t1), CenterRooting::new(t2));
    if r1.code() != r2.code() {
        return None;
    }
    let mut map = vec![usize::MAX; t1.n()];
    let mut stack: Vec<(usize, usize)> = r1
        .ordered_centers()
        .into_iter()
        .zip(r2.ordered_centers())
        .collect();
    while let Some((x, y)) = stack.pop() {
        map[x] = y;
        let (a, b) = (&r1.rooting.children[x], &r2.rooting.children[y]);
        stack.extend(a.iter().copied().zip(b.iter().copied()));
    }
    Some(map)
}

/// |Aut(T)| from the center-rooted tree: factorials of repeated child codes,
/// times two when the halves of a bicentral tree coincide.
pub fn aut_order(t: &Tree) -> AutCount {
    let cr = CenterRooting::new(t);
    let mut order = BigUint::one();
    for &c in &cr.centers {
        order *= cr.rooting.stabilizer_order(c);
    }
    if cr.halves_equal() {
        order *= 2u32;
    }
    AutCount { order }
}

/// True iff the only automorphism of `t` is the identity. Needs `n >= 2`.
pub fn is_asymmetric(t: &Tree) -> Result<bool> {
    if t.n() < 2 {
        return Err(TreeError::TooSmall {
            n: t.n(),
            needed: 2,
        });
    }
    let cr = CenterRooting::new(t);
    Ok(!cr.halves_equal() && cr.rooting.siblings_distinct())
}

/// Every adjacency-preserving permutation, by backtracking over
/// degree-compatible images. Only for `n <= BRUTE_FORCE_LIMIT`.
pub fn brute_force_automorphisms(t: &Tree) -> Result<Vec<Automorphism>> {
    let n = t.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(TreeError::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut found = Vec::new();
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(t, 0, &mut mapping, &mut used, &mut found);
    Ok(found)
}

fn extend(
    t: &Tree,
    v: usize,
    mapping: &mut [usize],
    used: &mut [bool],
    found: &mut Vec<Automorphism>,
) {
    let n = t.n();
    if v == n {
        found.push(Automorphism {
            mapping: mapping.to_vec(),
        });
        return;
    }
    for image in 0..n {
        if used[image] || t.degree(image) != t.degree(v) {
            continue;
        }
        let consistent = (0..v).all(|w| t.has_edge(v, w) == t.has_edge(image, mapping[w]));
        if !consistent {
            continue;
        }
        mapping[v] = image;
        used[image] = true;
        extend(t, v + 1, mapping, used, found);
        used[image] = false;
    }
    mapping[v] = usize::MAX;
}
