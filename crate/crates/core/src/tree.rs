//! Spanning forests over a host graph: degree profiles, the class-vector
//! potential, tree paths and edge exchanges.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{Edge, Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("edge {0} is not an edge of the host graph")]
    NotInHost(Edge),
    #[error("adding edge {0} would close a cycle")]
    CreatesCycle(Edge),
    #[error("edge {0} is not in the tree")]
    MissingEdge(Edge),
    #[error("vertices {0} and {1} lie in different tree components")]
    DifferentComponents(VertexId, VertexId),
    #[error("edge set is not a spanning tree")]
    NotSpanning,
    #[error("class vectors built for k={0} and k={1} cannot be compared")]
    ThresholdMismatch(usize, usize),
}

/// An acyclic subset of host edges with per-vertex tree degrees.
///
/// Values are immutable at the interface: mutations return a new set.
#[derive(Clone, PartialEq, Eq)]
pub struct TreeEdgeSet<'g> {
    host: &'g Graph,
    edges: BTreeSet<Edge>,
    degree: Vec<usize>,
}

impl std::fmt::Debug for TreeEdgeSet<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TreeEdgeSet")
            .field("n", &self.host.order())
            .field(
                "edges",
                &self.edges.iter().map(|e| (e.u, e.v)).collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// Disjoint-set forest used for acyclicity checks.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }
}

impl<'g> TreeEdgeSet<'g> {
    pub fn empty(host: &'g Graph) -> Self {
        TreeEdgeSet {
            host,
            edges: BTreeSet::new(),
            degree: vec![0; host.order()],
        }
    }

    /// Validates host membership and acyclicity.
    pub fn from_edges<I, E>(host: &'g Graph, edges: I) -> Result<Self, TreeError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        let mut set = TreeEdgeSet::empty(host);
        let mut uf = UnionFind::new(host.order());
        for e in edges {
            let e = e.into();
            if !host.has_edge(e.u, e.v) {
                return Err(TreeError::NotInHost(e));
            }
            if !uf.union(e.u, e.v) {
                return Err(TreeError::CreatesCycle(e));
            }
            set.edges.insert(e);
            set.degree[e.u] += 1;
            set.degree[e.v] += 1;
        }
        Ok(set)
    }

    /// Star centered at `center` over its whole host neighborhood.
    pub fn star(host: &'g Graph, center: VertexId) -> Self {
        let mut set = TreeEdgeSet::empty(host);
        for &v in host.neighbors(center) {
            set.edges.insert(Edge::new(center, v));
            set.degree[v] += 1;
        }
        set.degree[center] = host.degree(center);
        set
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.degree[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    pub fn adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.host.order()];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        adj
    }

    /// Number of components, counting vertices without tree edges.
    pub fn num_components(&self) -> usize {
        self.host.order() - self.edges.len()
    }

    pub fn is_spanning_tree(&self) -> bool {
        let n = self.host.order();
        n > 0 && self.edges.len() == n - 1
    }

    /// True iff no vertex has tree degree in `[2, k]`. `k = 2` is the
    /// homeomorphically irreducible case.
    pub fn is_2k_st(&self, k: usize) -> Result<bool, TreeError> {
        if !self.is_spanning_tree() {
            return Err(TreeError::NotSpanning);
        }
        Ok(self.degree.iter().all(|&d| d < 2 || d > k))
    }

    pub fn class_vector(&self, k: usize) -> DegreeClassVector {
        DegreeClassVector::from_degrees(&self.degree, k)
    }

    /// Parent pointers of the component containing `root`, oriented towards
    /// `root`. Vertices outside that component get `None`, as does `root`.
    pub fn rooted_parents(&self, root: VertexId) -> Vec<Option<VertexId>> {
        let adj = self.adjacency();
        let n = self.host.order();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(x);
                    queue.push_back(y);
                }
            }
        }
        parent
    }

    /// The unique path `u .. v` inside the forest.
    pub fn tree_path(&self, u: VertexId, v: VertexId) -> Result<TreePath, TreeError> {
        if u == v {
            return Ok(TreePath(vec![u]));
        }
        let parent = self.rooted_parents(u);
        if parent[v].is_none() {
            return Err(TreeError::DifferentComponents(u, v));
        }
        let mut path = vec![v];
        let mut x = v;
        while let Some(p) = parent[x] {
            path.push(p);
            x = p;
        }
        path.reverse();
        Ok(TreePath(path))
    }

    /// Adds a host edge joining two components.
    pub fn with_edge(&self, add: Edge) -> Result<Self, TreeError> {
        if !self.host.has_edge(add.u, add.v) {
            return Err(TreeError::NotInHost(add));
        }
        if self.edges.contains(&add) || self.tree_path(add.u, add.v).is_ok() {
            return Err(TreeError::CreatesCycle(add));
        }
        let mut next = self.clone();
        next.insert_unchecked(add);
        Ok(next)
    }

    pub fn without_edge(&self, remove: Edge) -> Result<Self, TreeError> {
        if !self.edges.contains(&remove) {
            return Err(TreeError::MissingEdge(remove));
        }
        let mut next = self.clone();
        next.remove_unchecked(remove);
        Ok(next)
    }

    /// `(T - remove) + add`, rejected unless the result is again acyclic.
    /// Removing and re-adding the same edge is the identity.
    pub fn swap_edge(&self, remove: Edge, add: Edge) -> Result<Self, TreeError> {
        if !self.edges.contains(&remove) {
            return Err(TreeError::MissingEdge(remove));
        }
        if remove == add {
            return Ok(self.clone());
        }
        if !self.host.has_edge(add.u, add.v) {
            return Err(TreeError::NotInHost(add));
        }
        let mut next = self.clone();
        next.remove_unchecked(remove);
        if next.edges.contains(&add) || next.tree_path(add.u, add.v).is_ok() {
            return Err(TreeError::CreatesCycle(add));
        }
        next.insert_unchecked(add);
        Ok(next)
    }

    /// Parent array rooted at `root`, `None` for the root itself.
    pub fn parent_array(&self, root: VertexId) -> Vec<Option<VertexId>> {
        self.rooted_parents(root)
    }

    pub(crate) fn insert_unchecked(&mut self, e: Edge) {
        if self.edges.insert(e) {
            self.degree[e.u] += 1;
            self.degree[e.v] += 1;
        }
    }

    pub(crate) fn remove_unchecked(&mut self, e: Edge) {
        if self.edges.remove(&e) {
            self.degree[e.u] -= 1;
            self.degree[e.v] -= 1;
        }
    }
}

/// A vertex sequence along tree edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePath(pub Vec<VertexId>);

impl TreePath {
    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.len() <= 1
    }
}

/// `(|V_2|, .., |V_k|)` together with the potential
/// `mu = sum_{2<=i<=k+1} (k+2-i) |V_i|`.
///
/// Ordering compares the counts lexicographically and ignores `mu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeClassVector {
    pub k: usize,
    pub counts: Vec<usize>,
    pub mu: usize,
}

impl DegreeClassVector {
    pub fn from_degrees(degrees: &[usize], k: usize) -> Self {
        let mut counts = vec![0; k.saturating_sub(1)];
        let mut mu = 0;
        for &d in degrees {
            if (2..=k).contains(&d) {
                counts[d - 2] += 1;
            }
            if (2..=k + 1).contains(&d) {
                mu += k + 2 - d;
            }
        }
        DegreeClassVector { k, counts, mu }
    }

    /// `|V_i|` for `2 <= i <= k`.
    pub fn count(&self, i: usize) -> usize {
        self.counts[i - 2]
    }

    /// Smallest `s` in `[2, k]` with `V_s` non-empty.
    pub fn lowest_class(&self) -> Option<usize> {
        self.counts.iter().position(|&c| c > 0).map(|i| i + 2)
    }

    pub fn is_clear(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn lex_cmp(&self, other: &Self) -> Result<Ordering, TreeError> {
        if self.k != other.k {
            return Err(TreeError::ThresholdMismatch(self.k, other.k));
        }
        Ok(self.counts.cmp(&other.counts))
    }
}

/// Strict lexicographic comparison of the class counts.
pub fn lex_less(a: &DegreeClassVector, b: &DegreeClassVector) -> Result<bool, TreeError> {
    Ok(a.lex_cmp(b)? == Ordering::Less)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn dcv(k: usize, counts: &[usize]) -> DegreeClassVector {
        DegreeClassVector {
            k,
            counts: counts.to_vec(),
            mu: 0,
        }
    }

    #[test]
    fn spanning_checks() {
        let k4 = complete(4);
        assert!(TreeEdgeSet::star(&k4, 0).is_spanning_tree());
        let c4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let matching = TreeEdgeSet::from_edges(&c4, [(0, 1), (2, 3)]).unwrap();
        assert!(!matching.is_spanning_tree());
        let tri = complete(3);
        assert_eq!(
            TreeEdgeSet::from_edges(&tri, [(0, 1), (1, 2), (0, 2)]).unwrap_err(),
            TreeError::CreatesCycle(Edge::new(0, 2))
        );
    }

    #[test]
    fn stem_free_predicate() {
        let k6 = complete(6);
        let star = TreeEdgeSet::star(&k6, 2);
        for k in 2..5 {
            assert!(star.is_2k_st(k).unwrap());
        }
        assert!(!star.is_2k_st(5).unwrap());
        let p4 = build_graph(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let path = TreeEdgeSet::from_edges(&p4, p4.edges()).unwrap();
        assert!(!path.is_2k_st(2).unwrap());
        let k4 = complete(4);
        let spider = TreeEdgeSet::star(&k4, 0);
        assert!(spider.is_2k_st(2).unwrap());
        assert!(!spider.is_2k_st(3).unwrap());
        let partial = TreeEdgeSet::from_edges(&p4, [(0, 1)]).unwrap();
        assert_eq!(partial.is_2k_st(2), Err(TreeError::NotSpanning));
    }

    #[test]
    fn class_vectors() {
        let p4 = build_graph(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let path = TreeEdgeSet::from_edges(&p4, p4.edges()).unwrap();
        let v = path.class_vector(2);
        assert_eq!(v.counts, vec![2]);
        assert_eq!(v.mu, 4);

        let k8 = complete(8);
        let star = TreeEdgeSet::star(&k8, 0);
        let v = star.class_vector(3);
        assert_eq!((v.counts.clone(), v.mu), (vec![0, 0], 0));

        let k4 = complete(4);
        let spider = TreeEdgeSet::star(&k4, 0);
        let v = spider.class_vector(3);
        assert_eq!(v.counts, vec![0, 1]);
        assert_eq!(v.mu, 2);
    }

    #[test]
    fn lexicographic_order() {
        assert!(lex_less(&dcv(3, &[0, 1]), &dcv(3, &[1, 0])).unwrap());
        assert!(!lex_less(&dcv(3, &[2, 0]), &dcv(3, &[2, 0])).unwrap());
        assert!(lex_less(&dcv(3, &[0, 5]), &dcv(3, &[1, 0])).unwrap());
        assert_eq!(
            lex_less(&dcv(2, &[0]), &dcv(3, &[0, 0])),
            Err(TreeError::ThresholdMismatch(2, 3))
        );
    }

    #[test]
    fn paths() {
        let k5 = complete(5);
        let star = TreeEdgeSet::star(&k5, 0);
        assert_eq!(star.tree_path(3, 4).unwrap().vertices(), &[3, 0, 4]);
        assert_eq!(star.tree_path(2, 2).unwrap().vertices(), &[2]);
        let p5 = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let path = TreeEdgeSet::from_edges(&p5, p5.edges()).unwrap();
        assert_eq!(path.tree_path(0, 4).unwrap().vertices(), &[0, 1, 2, 3, 4]);
        let split = TreeEdgeSet::from_edges(&p5, [(0, 1), (3, 4)]).unwrap();
        assert_eq!(
            split.tree_path(0, 4),
            Err(TreeError::DifferentComponents(0, 4))
        );
    }

    #[test]
    fn swaps() {
        let c4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let t = TreeEdgeSet::from_edges(&c4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let swapped = t.swap_edge(Edge::new(0, 1), Edge::new(0, 3)).unwrap();
        assert!(swapped.is_spanning_tree());
        assert_eq!(
            swapped.edges().collect::<Vec<_>>(),
            vec![Edge::new(0, 3), Edge::new(1, 2), Edge::new(2, 3)]
        );
        assert_eq!(t.swap_edge(Edge::new(1, 2), Edge::new(1, 2)).unwrap(), t);
        let k5 = complete(5);
        let t = TreeEdgeSet::from_edges(&k5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        // dropping 2-3 splits {0,1,2} | {3,4}; 0-2 stays inside one side
        assert_eq!(
            t.swap_edge(Edge::new(2, 3), Edge::new(0, 2)),
            Err(TreeError::CreatesCycle(Edge::new(0, 2)))
        );
        assert_eq!(
            t.swap_edge(Edge::new(0, 2), Edge::new(0, 3)),
            Err(TreeError::MissingEdge(Edge::new(0, 2)))
        );
    }
}
