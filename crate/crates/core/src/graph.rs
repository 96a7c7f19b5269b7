//! Immutable simple undirected graphs and the degree/distance statistics the
//! existence conditions are phrased in.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use thiserror::Error;

/// Vertices are dense indices in `0..n`.
pub type VertexId = usize;

/// Above this order the adjacency bitset is skipped and membership falls back
/// to binary search over the sorted neighbor list.
const BITSET_MAX_ORDER: usize = 8192;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: VertexId, v: VertexId, n: usize },
    #[error("edge ({0}, {0}) is a self-loop")]
    SelfLoop(VertexId),
    #[error("graph is disconnected")]
    Disconnected,
}

/// An undirected edge stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

impl From<(VertexId, VertexId)> for Edge {
    fn from((a, b): (VertexId, VertexId)) -> Self {
        Edge::new(a, b)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Minimum degree-sum over non-adjacent pairs. Complete graphs have no such
/// pair and get the `Infinite` variant, which compares above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sigma2 {
    Finite(usize),
    Infinite,
}

impl Sigma2 {
    pub fn finite(self) -> Option<usize> {
        match self {
            Sigma2::Finite(x) => Some(x),
            Sigma2::Infinite => None,
        }
    }

    /// `self >= bound`, with `Infinite` satisfying every bound.
    pub fn at_least(self, bound: usize) -> bool {
        self >= Sigma2::Finite(bound)
    }
}

impl fmt::Display for Sigma2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma2::Finite(x) => write!(f, "{x}"),
            Sigma2::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub delta: usize,
    pub sigma2: Sigma2,
    /// degree `i` -> the vertices of degree exactly `i`, ascending.
    pub classes: BTreeMap<usize, Vec<VertexId>>,
}

impl DegreeStats {
    pub fn class(&self, degree: usize) -> &[VertexId] {
        self.classes.get(&degree).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Immutable simple graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<VertexId>>,
    /// Row-major adjacency matrix, `words` u64 per row. Empty when `n` is large.
    bits: Vec<u64>,
    words: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field(
                "edges",
                &self.edges().map(|e| (e.u, e.v)).collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// Single-use accumulator for edges; duplicates are dropped at `build`.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    n: usize,
    adj: Vec<Vec<VertexId>>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<&mut Self, GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::VertexOutOfRange { u, v, n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        Ok(self)
    }

    pub fn build(self) -> Graph {
        let mut adj = self.adj;
        let mut m2 = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m2 += list.len();
        }
        let n = self.n;
        let (bits, words) = if n <= BITSET_MAX_ORDER {
            let words = n.div_ceil(64).max(1);
            let mut bits = vec![0u64; n * words];
            for (u, list) in adj.iter().enumerate() {
                for &v in list {
                    bits[u * words + v / 64] |= 1 << (v % 64);
                }
            }
            (bits, words)
        } else {
            (Vec::new(), 0)
        };
        Graph {
            n,
            m: m2 / 2,
            adj,
            bits,
            words,
        }
    }
}

/// Builds a graph on `0..n` from a list of vertex pairs.
pub fn build_graph<I, E>(n: usize, edges: I) -> Result<Graph, GraphError>
where
    I: IntoIterator<Item = E>,
    E: Into<Edge>,
{
    Graph::from_edges(n, edges)
}

impl Graph {
    pub fn from_edges<I, E>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        let mut b = GraphBuilder::new(n);
        for e in edges {
            let e = e.into();
            b.add_edge(e.u, e.v)?;
        }
        Ok(b.build())
    }

    pub fn empty(n: usize) -> Graph {
        GraphBuilder::new(n).build()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n
    }

    pub fn neighbors(&self, u: VertexId) -> &[VertexId] {
        &self.adj[u]
    }

    pub fn degree(&self, u: VertexId) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        if u >= self.n || v >= self.n {
            return false;
        }
        if self.words > 0 {
            self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
        } else {
            self.adj[u].binary_search(&v).is_ok()
        }
    }

    /// Edges with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&v| u < v)
                .map(move |&v| Edge { u, v })
        })
    }

    pub fn is_complete(&self) -> bool {
        self.n < 2 || self.m == self.n * (self.n - 1) / 2
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Lowest-id vertex of maximum degree.
    pub fn max_degree_vertex(&self) -> Option<VertexId> {
        let best = self.max_degree();
        self.vertices().find(|&v| self.degree(v) == best)
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let mut classes: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for v in self.vertices() {
            classes.entry(self.degree(v)).or_default().push(v);
        }
        DegreeStats {
            delta: self.min_degree(),
            sigma2: self.sigma2(),
            classes,
        }
    }

    /// Scans pairs in ascending degree-sum order and stops at the first
    /// non-adjacent one.
    pub fn sigma2(&self) -> Sigma2 {
        if self.is_complete() {
            return Sigma2::Infinite;
        }
        let mut order: Vec<VertexId> = self.vertices().collect();
        order.sort_by_key(|&v| (self.degree(v), v));
        let mut best = usize::MAX;
        for (i, &a) in order.iter().enumerate() {
            let da = self.degree(a);
            if 2 * da >= best {
                break;
            }
            for &b in &order[i + 1..] {
                let sum = da + self.degree(b);
                if sum >= best {
                    break;
                }
                if !self.has_edge(a, b) {
                    best = sum;
                    break;
                }
            }
        }
        Sigma2::Finite(best)
    }

    /// BFS distances from `src`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, src: VertexId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap_or(0);
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.bfs_distances(u)[v]
    }

    pub fn eccentricity(&self, u: VertexId) -> Option<usize> {
        self.bfs_distances(u)
            .into_iter()
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }

    /// Maximum pairwise distance; `None` when disconnected. The empty graph
    /// has diameter 0.
    pub fn diameter(&self) -> Option<usize> {
        self.vertices()
            .try_fold(0, |acc, u| self.eccentricity(u).map(|e| acc.max(e)))
    }

    /// Component label per vertex (labels dense, in order of lowest member).
    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in self.vertices() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn num_components(&self) -> usize {
        self.component_labels().0
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() <= 1
    }

    /// All-pairs distance matrix (`usize::MAX` for unreachable pairs).
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        self.vertices()
            .map(|u| {
                self.bfs_distances(u)
                    .into_iter()
                    .map(|d| d.unwrap_or(usize::MAX))
                    .collect()
            })
            .collect()
    }

    /// Every shortest path realizing the diameter, as vertex sequences
    /// `u0 u1 .. ud`. Ordered by endpoint pair `(u0, ud)`, then
    /// lexicographically by sequence; both orientations of a path appear.
    pub fn diametral_paths(&self) -> Result<DiametralPaths, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let dist = self.distance_matrix();
        let diameter = dist.iter().flatten().copied().max().unwrap_or(0);
        Ok(DiametralPaths {
            adj: self.adj.clone(),
            dist,
            diameter,
            pair: (0, 0),
            stack: Vec::new(),
            started: false,
        })
    }

    /// The graph with edge `uv` removed (if present).
    pub fn without_edge(&self, u: VertexId, v: VertexId) -> Graph {
        let drop = Edge::new(u, v);
        let mut b = GraphBuilder::new(self.n);
        for e in self.edges().filter(|&e| e != drop) {
            b.adj[e.u].push(e.v);
            b.adj[e.v].push(e.u);
        }
        b.build()
    }

    /// The graph with edge `uv` added.
    pub fn with_edge(&self, u: VertexId, v: VertexId) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new(self.n);
        for e in self.edges() {
            b.adj[e.u].push(e.v);
            b.adj[e.v].push(e.u);
        }
        b.add_edge(u, v)?;
        Ok(b.build())
    }

    /// Biconnected components (blocks) as edge lists, plus the cut-vertex
    /// flags. Isolated vertices belong to no block.
    pub fn blocks(&self) -> (Vec<Vec<Edge>>, Vec<bool>) {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut blocks = Vec::new();
        let mut edge_stack: Vec<Edge> = Vec::new();
        let mut time = 0;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(VertexId, usize, usize)> = Vec::new();
        for root in self.vertices() {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            stack.push((root, usize::MAX, 0));
            while let Some(top) = stack.last_mut() {
                let (x, parent, idx) = *top;
                if idx < self.adj[x].len() {
                    top.2 += 1;
                    let y = self.adj[x][idx];
                    if disc[y] == usize::MAX {
                        edge_stack.push(Edge::new(x, y));
                        disc[y] = time;
                        low[y] = time;
                        time += 1;
                        if x == root {
                            root_children += 1;
                        }
                        stack.push((y, x, 0));
                    } else if y != parent && disc[y] < disc[x] {
                        edge_stack.push(Edge::new(x, y));
                        low[x] = low[x].min(disc[y]);
                    }
                } else {
                    stack.pop();
                    if parent == usize::MAX {
                        continue;
                    }
                    low[parent] = low[parent].min(low[x]);
                    if low[x] >= disc[parent] {
                        if parent != root {
                            is_cut[parent] = true;
                        }
                        let split = Edge::new(parent, x);
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == split {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (blocks, is_cut)
    }
}

/// Iterator over diametral paths; see [`Graph::diametral_paths`].
pub struct DiametralPaths {
    adj: Vec<Vec<VertexId>>,
    dist: Vec<Vec<usize>>,
    diameter: usize,
    pair: (VertexId, VertexId),
    /// DFS frames: (vertex, index of next neighbor to try).
    stack: Vec<(VertexId, usize)>,
    started: bool,
}

impl DiametralPaths {
    pub fn diameter(&self) -> usize {
        self.diameter
    }

    fn next_pair(&mut self) -> bool {
        let n = self.adj.len();
        let (mut a, mut b) = self.pair;
        loop {
            if self.started {
                b += 1;
                if b >= n {
                    b = 0;
                    a += 1;
                }
            }
            self.started = true;
            if a >= n {
                return false;
            }
            if a != b && self.dist[a][b] == self.diameter
                || n == 1 && a == 0 && b == 0 && self.diameter == 0
            {
                self.pair = (a, b);
                self.stack.clear();
                self.stack.push((a, 0));
                return true;
            }
        }
    }
}

impl Iterator for DiametralPaths {
    type Item = Vec<VertexId>;

    fn next(&mut self) -> Option<Vec<VertexId>> {
        loop {
            if self.stack.is_empty() && !self.next_pair() {
                return None;
            }
            let target = self.pair.1;
            // Advance the DFS until a full path is on the stack.
            while let Some(&(x, idx)) = self.stack.last() {
                if x == target {
                    let path: Vec<VertexId> = self.stack.iter().map(|&(v, _)| v).collect();
                    self.stack.pop();
                    return Some(path);
                }
                let remaining = self.dist[x][target];
                let next = self.adj[x][idx..]
                    .iter()
                    .position(|&y| self.dist[y][target] + 1 == remaining);
                match next {
                    Some(offset) => {
                        let y = self.adj[x][idx + offset];
                        if let Some(top) = self.stack.last_mut() {
                            top.1 = idx + offset + 1;
                        }
                        self.stack.push((y, 0));
                    }
                    None => {
                        self.stack.pop();
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge(u, v).unwrap();
            }
        }
        b.build()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn complete_graph_basics() {
        let g = build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(g.vertices().all(|v| g.degree(v) == 3));
        let stats = g.degree_stats();
        assert_eq!(stats.delta, 3);
        assert_eq!(stats.sigma2, Sigma2::Infinite);
        assert_eq!(g.distance(0, 3), Some(1));
        assert_eq!(k(7).diameter(), Some(1));
    }

    #[test]
    fn path_and_cycle() {
        let p = build_graph(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            (0..3).map(|v| p.degree(v)).collect::<Vec<_>>(),
            vec![1, 2, 1]
        );
        let c5 = cycle(5);
        let stats = c5.degree_stats();
        assert_eq!(stats.delta, 2);
        assert_eq!(stats.sigma2, Sigma2::Finite(4));
        assert_eq!(c5.distance(0, 2), Some(2));
        assert_eq!(c5.diameter(), Some(2));
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            build_graph(3, [(0, 3)]).unwrap_err(),
            GraphError::VertexOutOfRange { u: 0, v: 3, n: 3 }
        );
        assert_eq!(
            build_graph(3, [(1, 1)]).unwrap_err(),
            GraphError::SelfLoop(1)
        );
    }

    #[test]
    fn parallel_edges_collapse() {
        let g = build_graph(3, [(0, 1), (1, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.size(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn components() {
        assert_eq!(cycle(6).num_components(), 1);
        assert_eq!(Graph::empty(4).num_components(), 4);
        let two = build_graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(two.num_components(), 2);
        assert_eq!(two.diameter(), None);
        assert_eq!(two.distance(0, 4), None);
        assert!(matches!(
            two.diametral_paths(),
            Err(GraphError::Disconnected)
        ));
    }

    #[test]
    fn diametral_paths_of_path_graph() {
        let p4 = build_graph(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let paths: Vec<_> = p4.diametral_paths().unwrap().collect();
        assert_eq!(paths, vec![vec![0, 1, 2, 3], vec![3, 2, 1, 0]]);
    }

    #[test]
    fn diametral_paths_of_complete_graph() {
        let paths: Vec<_> = k(4).diametral_paths().unwrap().collect();
        assert_eq!(paths.len(), 12);
        assert!(paths.iter().all(|p| p.len() == 2));
        assert_eq!(paths[0], vec![0, 1]);
        assert_eq!(paths[11], vec![3, 2]);
    }

    #[test]
    fn diametral_paths_enumerate_all_shortest_routes() {
        // C4: opposite corners have two shortest routes each.
        let paths: Vec<_> = cycle(4).diametral_paths().unwrap().collect();
        assert_eq!(&paths[..2], &[vec![0, 1, 2], vec![0, 3, 2]],);
        assert_eq!(paths.len(), 8);
    }

    #[test]
    fn blocks_of_bowtie_with_tail() {
        // two triangles sharing vertex 2, plus the pendant edge 4-5
        let g = build_graph(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5)]).unwrap();
        let (mut blocks, cut) = g.blocks();
        blocks.sort();
        assert_eq!(blocks.len(), 3);
        assert_eq!(blocks[2], vec![Edge::new(4, 5)]);
        assert_eq!(cut, vec![false, false, true, false, true, false]);
    }

    #[test]
    fn sigma2_matches_pairwise_scan() {
        let g = build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 2), (0, 3)]).unwrap();
        let brute = (0..6)
            .flat_map(|a| (a + 1..6).map(move |b| (a, b)))
            .filter(|&(a, b)| !g.has_edge(a, b))
            .map(|(a, b)| g.degree(a) + g.degree(b))
            .min()
            .unwrap();
        assert_eq!(g.sigma2(), Sigma2::Finite(brute));
    }
}
