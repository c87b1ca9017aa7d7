//! Labeled free trees on dense vertex ids `0..n`.
//!
//! A [`Tree`] is immutable once built. Every structural edit (leaf deletion,
//! leaf addition, relabeling) returns a fresh value.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Result, TreeError};

/// Edge list of E7, the spider with one degree-3 vertex (0) and legs of
/// lengths 1, 2 and 3.
pub const E7_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)];

/// A labeled free tree. Adjacency lists are kept sorted ascending, so derived
/// equality is equality of labeled trees.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

/// Eccentricities, radius and the one or two centers of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterInfo {
    pub eccentricity: Vec<usize>,
    pub radius: usize,
    /// Sorted ascending; one or two entries.
    pub centers: Vec<usize>,
}

impl CenterInfo {
    pub fn is_bicentral(&self) -> bool {
        self.centers.len() == 2
    }
}

/// A degree-1 vertex together with its unique neighbor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Leaf {
    pub id: usize,
    pub parent: usize,
}

/// One connected component left after removing a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// The neighbor of the removed vertex that lies in this component.
    pub neighbor: usize,
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
}

impl Component {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Maps each old vertex id to its new id, `None` for the deleted vertex.
pub type IdMap = Vec<Option<usize>>;

/// Builds a tree from an edge list, inferring `n` as one more than the largest
/// id. An empty list yields the single-vertex tree.
pub fn build_tree(edges: &[(usize, usize)]) -> Result<Tree> {
    let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(1);
    Tree::from_edges(n, edges)
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

impl Tree {
    /// The tree with one vertex and no edges.
    pub fn single() -> Tree {
        Tree {
            adj: vec![Vec::new()],
        }
    }

    /// Builds and validates a tree on exactly `n` vertices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        if n == 0 {
            return Err(TreeError::TooSmall { n: 0, needed: 1 });
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut sets = DisjointSets::new(n);
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(TreeError::BadVertexId { id, n });
                }
            }
            if u == v {
                return Err(TreeError::CycleDetected(u, v));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(TreeError::DuplicateEdge(u, v));
            }
            if !sets.union(u, v) {
                return Err(TreeError::CycleDetected(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        if edges.len() != n - 1 {
            return Err(TreeError::DisconnectedInput { n });
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Tree { adj })
    }

    /// The reference labeling of E7 (see [`E7_EDGES`]).
    pub fn e7() -> Tree {
        Tree::from_edges(7, &E7_EDGES).expect("E7 edge list is a tree")
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Tree {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Tree::from_edges(n.max(1), &edges).expect("path is a tree")
    }

    /// Star with center 0 and leaves `1..n`.
    pub fn star(n: usize) -> Tree {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        Tree::from_edges(n.max(1), &edges).expect("star is a tree")
    }

    /// Spider with center 0 and one leg per entry of `legs`; leg vertices are
    /// numbered consecutively outward, leg by leg.
    pub fn spider(legs: &[usize]) -> Tree {
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Tree::from_edges(next, &edges).expect("spider is a tree")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(TreeError::BadVertexId { id: v, n: self.n() })
        }
    }

    /// BFS distances from `src` to every vertex.
    pub fn distances_from(&self, src: usize) -> Result<Vec<usize>> {
        self.check(src)?;
        Ok(self.bfs(src))
    }

    fn bfs(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::from([src]);
        dist[src] = 0;
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Number of edges on the unique `u`-`v` path.
    pub fn distance(&self, u: usize, v: usize) -> Result<usize> {
        self.check(v)?;
        Ok(self.distances_from(u)?[v])
    }

    /// The unique `u`-`v` path, both endpoints included.
    pub fn path_between(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        self.check(u)?;
        self.check(v)?;
        let parents = self.parents_from(v);
        let mut path = vec![u];
        let mut x = u;
        while x != v {
            x = parents[x];
            path.push(x);
        }
        Ok(path)
    }

    /// BFS parent pointers towards `root`; the root is its own parent.
    pub(crate) fn parents_from(&self, root: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::from([root]);
        parent[root] = root;
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        parent
    }

    /// Centers by repeated leaf peeling, sorted ascending. Agrees with
    /// [`Tree::center_info`] but runs in linear time.
    pub fn centers(&self) -> Vec<usize> {
        let n = self.n();
        if n <= 2 {
            return (0..n).collect();
        }
        let mut degree = self.degree_sequence();
        let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &v in &layer {
                for &w in &self.adj[v] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
            layer = next;
        }
        layer.sort_unstable();
        layer
    }

    /// Eccentricities from all-pairs BFS, with the radius and the argmin set.
    pub fn center_info(&self) -> CenterInfo {
        let eccentricity: Vec<usize> = (0..self.n())
            .map(|v| self.bfs(v).into_iter().max().unwrap_or(0))
            .collect();
        let radius = eccentricity.iter().copied().min().unwrap_or(0);
        let centers = (0..self.n())
            .filter(|&v| eccentricity[v] == radius)
            .collect();
        CenterInfo {
            eccentricity,
            radius,
            centers,
        }
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        v < self.n() && self.adj[v].len() == 1
    }

    /// All leaves with their parents, ascending by id.
    pub fn leaves(&self) -> Result<Vec<Leaf>> {
        if self.n() < 2 {
            return Err(TreeError::TooSmall {
                n: self.n(),
                needed: 2,
            });
        }
        Ok((0..self.n())
            .filter(|&v| self.is_leaf(v))
            .map(|id| Leaf {
                id,
                parent: self.adj[id][0],
            })
            .collect())
    }

    /// Deletes leaf `l` and compacts the remaining ids in order. Returns the
    /// new tree and the old-to-new id map.
    pub fn delete_leaf(&self, l: usize) -> Result<(Tree, IdMap)> {
        self.check(l)?;
        if !self.is_leaf(l) {
            return Err(TreeError::NotALeaf(l));
        }
        let map: IdMap = (0..self.n())
            .map(|v| match v.cmp(&l) {
                std::cmp::Ordering::Less => Some(v),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(v - 1),
            })
            .collect();
        let adj = self
            .adj
            .iter()
            .enumerate()
            .filter(|&(v, _)| v != l)
            .map(|(_, ns)| ns.iter().filter_map(|&w| map[w]).collect())
            .collect();
        Ok((Tree { adj }, map))
    }

    /// Joins a new vertex with id `n` to `attach_at`.
    pub fn add_leaf(&self, attach_at: usize) -> Result<Tree> {
        self.check(attach_at)?;
        let new = self.n();
        let mut adj = self.adj.clone();
        adj[attach_at].push(new);
        adj.push(vec![attach_at]);
        Ok(Tree { adj })
    }

    /// Components of the tree with `v` removed, one per neighbor of `v`, in
    /// ascending neighbor order.
    pub fn components_after_removal(&self, v: usize) -> Result<Vec<Component>> {
        self.check(v)?;
        let mut seen = vec![false; self.n()];
        seen[v] = true;
        Ok(self.adj[v]
            .iter()
            .map(|&start| {
                let mut vertices = vec![start];
                seen[start] = true;
                let mut i = 0;
                while i < vertices.len() {
                    let x = vertices[i];
                    for &y in &self.adj[x] {
                        if !seen[y] {
                            seen[y] = true;
                            vertices.push(y);
                        }
                    }
                    i += 1;
                }
                vertices.sort_unstable();
                Component {
                    neighbor: start,
                    vertices,
                }
            })
            .collect())
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Tree> {
        let n = self.n();
        let mut hit = vec![false; n];
        if perm.len() != n {
            return Err(TreeError::BadPermutation { n });
        }
        for &p in perm {
            if p >= n || std::mem::replace(&mut hit[p], true) {
                return Err(TreeError::BadPermutation { n });
            }
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Tree::from_edges(n, &edges)
    }

    /// Renders the interchange text format: `n`, then one `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Edge list rendered as comma-separated `u-v` pairs.
    pub fn edge_list_string(&self) -> String {
        self.edges()
            .map(|(u, v)| format!("{u}-{v}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree(n={}; {})", self.n(), self.edge_list_string())
    }
}

impl FromStr for Tree {
    type Err = TreeError;

    /// Parses the interchange format. `#` starts a comment; blank lines are
    /// skipped.
    fn from_str(s: &str) -> Result<Tree> {
        let mut n = None;
        let mut edges = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse = |f: &str| {
                f.parse::<usize>().map_err(|_| TreeError::Parse {
                    line: line_no,
                    message: format!("expected a non-negative integer, found {f:?}"),
                })
            };
            match (n, fields.as_slice()) {
                (None, [count]) => n = Some(parse(count)?),
                (None, _) => {
                    return Err(TreeError::Parse {
                        line: line_no,
                        message: "first line must hold the vertex count".into(),
                    })
                }
                (Some(_), [a, b]) => edges.push((parse(a)?, parse(b)?)),
                (Some(_), _) => {
                    return Err(TreeError::Parse {
                        line: line_no,
                        message: "edge lines must hold exactly two vertex ids".into(),
                    })
                }
            }
        }
        let n = n.ok_or(TreeError::Parse {
            line: 0,
            message: "empty input".into(),
        })?;
        Tree::from_edges(n, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bfs_oracle_eccentricities(t: &Tree) -> Vec<usize> {
        // Floyd-Warshall over the edge list, independent of the BFS path.
        let n = t.n();
        let inf = usize::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for (v, row) in d.iter_mut().enumerate() {
            row[v] = 0;
        }
        for (u, v) in t.edges() {
            d[u][v] = 1;
            d[v][u] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        d.iter().map(|row| *row.iter().max().unwrap()).collect()
    }

    #[test]
    fn builds_small_trees() {
        let p2 = build_tree(&[(0, 1)]).unwrap();
        assert_eq!(p2.n(), 2);
        let e7 = build_tree(&E7_EDGES).unwrap();
        assert_eq!(e7, Tree::e7());
        assert_eq!(e7.degree_sequence(), vec![3, 1, 2, 1, 2, 2, 1]);
        assert_eq!(build_tree(&[]).unwrap(), Tree::single());
    }

    #[test]
    fn rejects_non_trees() {
        assert_eq!(
            build_tree(&[(0, 1), (1, 2), (0, 2)]),
            Err(TreeError::CycleDetected(0, 2))
        );
        assert_eq!(
            Tree::from_edges(4, &[(0, 1), (2, 3)]),
            Err(TreeError::DisconnectedInput { n: 4 })
        );
        assert_eq!(
            Tree::from_edges(3, &[(0, 1), (1, 3)]),
            Err(TreeError::BadVertexId { id: 3, n: 3 })
        );
        assert_eq!(
            Tree::from_edges(3, &[(0, 1), (1, 0)]),
            Err(TreeError::DuplicateEdge(1, 0))
        );
        assert_eq!(
            Tree::from_edges(2, &[(1, 1)]),
            Err(TreeError::CycleDetected(1, 1))
        );
    }

    #[test]
    fn distances() {
        let e7 = Tree::e7();
        assert_eq!(e7.distance(3, 6).unwrap(), 5);
        assert_eq!(e7.path_between(3, 6).unwrap(), vec![3, 2, 0, 4, 5, 6]);
        assert_eq!(e7.distance(4, 4).unwrap(), 0);
        assert_eq!(Tree::path(2).distance(0, 1).unwrap(), 1);
        assert!(matches!(
            e7.distance(0, 7),
            Err(TreeError::BadVertexId { .. })
        ));
    }

    #[test]
    fn centers_of_small_trees() {
        let p3 = Tree::path(3).center_info();
        assert_eq!((p3.centers, p3.radius), (vec![1], 1));
        let p4 = Tree::path(4).center_info();
        assert_eq!((p4.centers, p4.radius), (vec![1, 2], 2));
        let single = Tree::single().center_info();
        assert_eq!((single.centers, single.radius), (vec![0], 0));

        let e7 = Tree::e7();
        let info = e7.center_info();
        assert_eq!(info.eccentricity, bfs_oracle_eccentricities(&e7));
        assert_eq!((info.centers, info.radius), (vec![0, 4], 3));
    }

    #[test]
    fn leaf_listing() {
        assert_eq!(
            Tree::path(2).leaves().unwrap(),
            vec![Leaf { id: 0, parent: 1 }, Leaf { id: 1, parent: 0 }]
        );
        let ids: Vec<_> = Tree::e7().leaves().unwrap().iter().map(|l| l.id).collect();
        assert_eq!(ids, vec![1, 3, 6]);
        let ids: Vec<_> = Tree::star(4)
            .leaves()
            .unwrap()
            .iter()
            .map(|l| l.id)
            .collect();
        assert_eq!(ids, vec![1, 2, 3]);
        assert_eq!(
            Tree::single().leaves(),
            Err(TreeError::TooSmall { n: 1, needed: 2 })
        );
    }

    #[test]
    fn leaf_deletion() {
        let (p2, map) = Tree::path(3).delete_leaf(2).unwrap();
        assert_eq!(p2, Tree::path(2));
        assert_eq!(map, vec![Some(0), Some(1), None]);

        let (spider, _) = Tree::e7().delete_leaf(6).unwrap();
        assert_eq!(
            spider,
            Tree::from_edges(6, &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5)]).unwrap()
        );

        let (single, _) = Tree::path(2).delete_leaf(1).unwrap();
        assert_eq!(single, Tree::single());

        assert_eq!(
            Tree::e7().delete_leaf(0).unwrap_err(),
            TreeError::NotALeaf(0)
        );

        // Compaction shifts higher ids down.
        let (t, map) = Tree::e7().delete_leaf(3).unwrap();
        assert_eq!(map[6], Some(5));
        assert!(t.has_edge(4, 5) && t.has_edge(3, 4) && t.has_edge(0, 3));
    }

    #[test]
    fn leaf_addition() {
        assert_eq!(Tree::single().add_leaf(0).unwrap(), Tree::path(2));
        assert_eq!(Tree::path(2).add_leaf(1).unwrap(), Tree::path(3));
        assert_eq!(Tree::e7().add_leaf(6).unwrap(), Tree::spider(&[1, 2, 4]));
        assert!(Tree::e7().add_leaf(7).is_err());
    }

    #[test]
    fn components() {
        let sizes: Vec<_> = Tree::e7()
            .components_after_removal(0)
            .unwrap()
            .iter()
            .map(|c| (c.vertices.clone(), c.size()))
            .collect();
        assert_eq!(
            sizes,
            vec![(vec![1], 1), (vec![2, 3], 2), (vec![4, 5, 6], 3)]
        );
        let p3 = Tree::path(3).components_after_removal(1).unwrap();
        assert_eq!(p3.len(), 2);
        assert!(p3.iter().all(|c| c.size() == 1));
        let e7 = Tree::e7();
        let leaf = e7.components_after_removal(6).unwrap();
        assert_eq!(leaf.len(), 1);
        assert_eq!(leaf[0].size(), 6);
    }

    #[test]
    fn text_format() {
        let text = "# E7\n7\n0 1\n0 2 # short leg\n2 3\n\n0 4\n4 5\n5 6\n";
        let t: Tree = text.parse().unwrap();
        assert_eq!(t, Tree::e7());
        assert_eq!(t.to_text().parse::<Tree>().unwrap(), t);
        assert_eq!("1\n".parse::<Tree>().unwrap(), Tree::single());
        assert!(matches!(
            "3\n0 x\n".parse::<Tree>(),
            Err(TreeError::Parse { line: 2, .. })
        ));
        assert!(matches!("".parse::<Tree>(), Err(TreeError::Parse { .. })));
        assert!(matches!(
            "3\n0 1\n".parse::<Tree>(),
            Err(TreeError::DisconnectedInput { .. })
        ));
    }

    #[test]
    fn relabel_is_an_isomorphic_copy() {
        let t = Tree::e7();
        let perm = [6, 5, 4, 3, 2, 1, 0];
        let r = t.relabel(&perm).unwrap();
        for (u, v) in t.edges() {
            assert!(r.has_edge(perm[u], perm[v]));
        }
        assert!(t.relabel(&[0, 0, 1, 2, 3, 4, 5]).is_err());
    }
}
