//! Spanning trees without degrees in `[2, k]` for graphs of large minimum
//! degree: grow a forest of big stars, hang the leftover vertices on forest
//! leaves, connect the pieces, then repair the low-degree vertices one
//! exchange at a time.
//!
//! The repair loop never lets the class vector `(|V_2|, .., |V_k|)` grow in
//! lexicographic order, and never lets `mu` grow. When the minimum degree is
//! at least `c_k * sqrt(n)` it always finishes; below that it may report the
//! vertex it could not fix.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Edge, Graph, VertexId};
use crate::tree::{DegreeClassVector, TreeEdgeSet, TreeError, UnionFind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MindegError {
    #[error("k must be at least 2, got {0}")]
    InvalidK(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex {0} is outside the forest and has no neighbor among its leaves")]
    NoLeafNeighbor(VertexId),
    #[error("input is not a spanning tree")]
    NotSpanning,
    #[error("exchange at vertex {0} did not lower the class vector")]
    NoProgress(VertexId),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// `c_k = sqrt(k(k-1)(k + 2 sqrt(2k) + 2))`.
pub fn c_k(k: usize) -> f64 {
    let k = k as f64;
    (k * (k - 1.0) * (k + 2.0 * (2.0 * k).sqrt() + 2.0)).sqrt()
}

/// Constants of the construction for a given `k` and order `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub k: usize,
    pub n: usize,
    pub c_k: f64,
    /// Minimum size of a forest component; never rounded.
    pub p: f64,
    /// Trees with `mu` below this value are admissible.
    pub admissible_bound: f64,
    /// `sqrt(n) > c_k`, the range where `c_k sqrt(n) > p > k + 2` holds.
    pub in_regime: bool,
}

pub fn compute_thresholds(k: usize, n: usize) -> Thresholds {
    let c = c_k(k);
    let kf = k as f64;
    let (nf, rn) = (n as f64, (n as f64).sqrt());
    let p = ((c * c - kf * (kf - 1.0) * (kf - 2.0)) * rn + kf * c) / (2.0 * c);
    let slack = c * rn - p + kf;
    let admissible_bound = kf * (kf * p * nf + 2.0 * slack * nf) / (slack * p);
    Thresholds {
        k,
        n,
        c_k: c,
        p,
        admissible_bound,
        in_regime: rn > c,
    }
}

impl Thresholds {
    /// `c_k sqrt(n)`, the minimum degree that guarantees success.
    pub fn degree_bound(&self) -> f64 {
        self.c_k * (self.n as f64).sqrt()
    }

    /// Upper bound `kn / (c_k sqrt(n) - p + k)` on the vertices a maximal
    /// forest leaves uncovered.
    pub fn straggler_bound(&self) -> f64 {
        let kf = self.k as f64;
        kf * self.n as f64 / (self.degree_bound() - self.p + kf)
    }

    pub fn hypothesis_holds(&self, g: &Graph) -> bool {
        g.order() == self.n && g.min_degree() as f64 >= self.degree_bound()
    }

    pub fn is_admissible(&self, mu: usize) -> bool {
        (mu as f64) < self.admissible_bound
    }
}

/// A forest with no degree in `[2, k+1]` whose components all have at least
/// `p` vertices. Vertices it does not touch are the stragglers.
#[derive(Debug, Clone)]
pub struct ConstrainedForest<'g> {
    pub forest: TreeEdgeSet<'g>,
    pub covered: Vec<bool>,
    pub component_sizes: Vec<usize>,
}

impl ConstrainedForest<'_> {
    pub fn num_components(&self) -> usize {
        self.component_sizes.len()
    }

    pub fn stragglers(&self) -> Vec<VertexId> {
        (0..self.covered.len())
            .filter(|&v| !self.covered[v])
            .collect()
    }
}

struct ForestGrower<'a> {
    g: &'a Graph,
    k: usize,
    p: f64,
    covered: Vec<bool>,
    degree: Vec<usize>,
    /// `|N(v) ∩ A|` for every vertex, `A` the uncovered set.
    outside: Vec<usize>,
    edges: Vec<Edge>,
}

impl ForestGrower<'_> {
    fn cover(&mut self, v: VertexId) {
        self.covered[v] = true;
        for &x in self.g.neighbors(v) {
            self.outside[x] -= 1;
        }
    }

    fn link(&mut self, center: VertexId, leaf: VertexId) {
        self.edges.push(Edge::new(center, leaf));
        self.degree[center] += 1;
        self.degree[leaf] += 1;
        self.cover(leaf);
    }

    /// Hangs every uncovered neighbor of `center` on it.
    fn absorb(&mut self, center: VertexId) {
        if !self.covered[center] {
            self.cover(center);
        }
        let g = self.g;
        for &x in g.neighbors(center) {
            if !self.covered[x] {
                self.link(center, x);
            }
        }
    }

    fn heavy(&self, v: VertexId) -> bool {
        self.degree[v] >= self.k + 2
    }

    fn attach_to_heavy(&mut self) -> bool {
        let mut changed = false;
        for a in self.g.vertices() {
            if self.covered[a] {
                continue;
            }
            if let Some(&w) = self
                .g
                .neighbors(a)
                .iter()
                .find(|&&w| self.covered[w] && self.heavy(w))
            {
                self.link(w, a);
                changed = true;
            }
        }
        changed
    }

    fn promote_leaf(&mut self) -> bool {
        let leaf = self
            .g
            .vertices()
            .find(|&u| self.covered[u] && self.degree[u] == 1 && self.outside[u] > self.k);
        leaf.map(|u| self.absorb(u)).is_some()
    }

    fn seed_star(&mut self) -> bool {
        let seed = self.g.vertices().find(|&a| {
            !self.covered[a] && self.outside[a] >= self.k + 2 && self.outside[a] as f64 >= self.p
        });
        seed.map(|a| self.absorb(a)).is_some()
    }
}

/// Grows a forest that none of the three augmentations can extend: hanging
/// an uncovered vertex on a forest vertex of degree at least `k + 2`,
/// expanding a forest leaf with more than `k` uncovered neighbors, or adding
/// a star around an uncovered vertex with at least `p` uncovered neighbors.
/// The first star is the closed neighborhood of a maximum-degree vertex.
pub fn grow_forest<'g>(g: &'g Graph, th: &Thresholds) -> ConstrainedForest<'g> {
    let n = g.order();
    let mut grower = ForestGrower {
        g,
        k: th.k,
        p: th.p,
        covered: vec![false; n],
        degree: vec![0; n],
        outside: g.vertices().map(|v| g.degree(v)).collect(),
        edges: Vec::new(),
    };
    if let Some(u0) = g.max_degree_vertex() {
        let d = g.degree(u0);
        if d >= th.k + 2 && (d + 1) as f64 >= th.p {
            grower.absorb(u0);
        }
    }
    loop {
        grower.attach_to_heavy();
        if grower.promote_leaf() || grower.seed_star() {
            continue;
        }
        break;
    }
    let forest = TreeEdgeSet::from_edges(g, grower.edges.iter().copied())
        .expect("stars over fresh vertices are acyclic");
    let component_sizes = forest_component_sizes(&forest, &grower.covered);
    ConstrainedForest {
        forest,
        covered: grower.covered,
        component_sizes,
    }
}

fn forest_component_sizes(forest: &TreeEdgeSet<'_>, covered: &[bool]) -> Vec<usize> {
    let mut uf = UnionFind::new(covered.len());
    for e in forest.edges() {
        uf.union(e.u, e.v);
    }
    let mut size = vec![0; covered.len()];
    for v in (0..covered.len()).filter(|&v| covered[v]) {
        let r = uf.find(v);
        size[r] += 1;
    }
    size.into_iter().filter(|&s| s > 0).collect()
}

/// Hangs each straggler on its lowest-id neighbor among the forest leaves,
/// then joins the components by a breadth-first sweep from vertex 0 that
/// takes the first edge reaching each new component.
pub fn attach_and_span<'g>(
    g: &'g Graph,
    forest: &ConstrainedForest<'g>,
) -> Result<TreeEdgeSet<'g>, MindegError> {
    if !g.is_connected() {
        return Err(MindegError::Disconnected);
    }
    let n = g.order();
    let mut tree = forest.forest.clone();
    for a in forest.stragglers() {
        let leaf = g
            .neighbors(a)
            .iter()
            .copied()
            .find(|&u| forest.covered[u] && forest.forest.degree(u) == 1)
            .ok_or(MindegError::NoLeafNeighbor(a))?;
        tree.insert_unchecked(Edge::new(a, leaf));
    }
    if n == 0 {
        return Ok(tree);
    }

    let mut uf = UnionFind::new(n);
    for e in tree.edges() {
        uf.union(e.u, e.v);
    }
    let mut members = vec![Vec::new(); n];
    for v in 0..n {
        let r = uf.find(v);
        members[r].push(v);
    }
    let comp: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    let mut reached = vec![false; n];
    reached[comp[0]] = true;
    let mut queue: VecDeque<VertexId> = members[comp[0]].iter().copied().collect();
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if !reached[comp[y]] {
                reached[comp[y]] = true;
                tree.insert_unchecked(Edge::new(x, y));
                queue.extend(members[comp[y]].iter().copied());
            }
        }
    }
    debug_assert!(tree.is_spanning_tree());
    Ok(tree)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveKind {
    /// `T - v w_v + u v`.
    Swap { remove: Edge, add: Edge },
    /// Every vertex of `set` is moved from `from` to `to`.
    Shift {
        from: VertexId,
        to: VertexId,
        set: Vec<VertexId>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImprovementMove {
    pub kind: MoveKind,
    pub before: DegreeClassVector,
    pub after: DegreeClassVector,
}

/// Result of the repair loop. `stuck` names the vertex where no exchange
/// applied; it is `None` exactly when the tree has no degree in `[2, k]`.
#[derive(Debug, Clone)]
pub struct Improvement<'g> {
    pub tree: TreeEdgeSet<'g>,
    pub moves: Vec<ImprovementMove>,
    pub stuck: Option<VertexId>,
}

impl Improvement<'_> {
    pub fn is_complete(&self) -> bool {
        self.stuck.is_none()
    }
}

/// First applicable exchange at `u`, a vertex of the lowest occupied class
/// `s`, trying the non-tree neighbors of `u` in increasing order.
fn exchange_at(g: &Graph, tree: &TreeEdgeSet<'_>, u: VertexId, s: usize) -> Option<MoveKind> {
    let parent = tree.rooted_parents(u);
    let adj = tree.adjacency();
    for &v in g.neighbors(u) {
        if tree.contains(Edge::new(u, v)) {
            continue;
        }
        let w = parent[v].expect("spanning tree reaches every vertex");
        let t = tree.degree(w);
        if t != s && t != s + 1 {
            return Some(MoveKind::Swap {
                remove: Edge::new(v, w),
                add: Edge::new(u, v),
            });
        }
        let children: Vec<VertexId> = adj[w]
            .iter()
            .copied()
            .filter(|&z| parent[w] != Some(z))
            .collect();
        if children.iter().all(|&z| g.has_edge(u, z)) {
            let mut set = children;
            set.sort_unstable();
            return Some(MoveKind::Shift {
                from: w,
                to: u,
                set,
            });
        }
    }
    None
}

fn apply(tree: &mut TreeEdgeSet<'_>, kind: &MoveKind) {
    match kind {
        MoveKind::Swap { remove, add } => {
            tree.remove_unchecked(*remove);
            tree.insert_unchecked(*add);
        }
        MoveKind::Shift { from, to, set } => {
            for &z in set {
                tree.remove_unchecked(Edge::new(*from, z));
                tree.insert_unchecked(Edge::new(*to, z));
            }
        }
    }
}

/// Repeatedly picks the lowest-id vertex `u` of the smallest occupied class
/// `V_s` (`2 <= s <= k`) and applies the first exchange that clears it.
pub fn improve<'g>(t0: &TreeEdgeSet<'g>, k: usize) -> Result<Improvement<'g>, MindegError> {
    if k < 2 {
        return Err(MindegError::InvalidK(k));
    }
    if !t0.is_spanning_tree() {
        return Err(MindegError::NotSpanning);
    }
    let g = t0.host();
    let mut tree = t0.clone();
    let mut moves = Vec::new();
    loop {
        let before = tree.class_vector(k);
        let Some(s) = before.lowest_class() else {
            return Ok(Improvement {
                tree,
                moves,
                stuck: None,
            });
        };
        let u = (0..g.order())
            .find(|&x| tree.degree(x) == s)
            .expect("class is occupied");
        let Some(kind) = exchange_at(g, &tree, u, s) else {
            return Ok(Improvement {
                tree,
                moves,
                stuck: Some(u),
            });
        };
        apply(&mut tree, &kind);
        let after = tree.class_vector(k);
        if after.counts >= before.counts || after.mu > before.mu {
            return Err(MindegError::NoProgress(u));
        }
        moves.push(ImprovementMove {
            kind,
            before,
            after,
        });
    }
}

/// Every stage of one run, kept for inspection.
#[derive(Debug, Clone)]
pub struct MindegRun<'g> {
    pub thresholds: Thresholds,
    pub forest: ConstrainedForest<'g>,
    pub initial: TreeEdgeSet<'g>,
    pub improvement: Improvement<'g>,
}

impl<'g> MindegRun<'g> {
    /// The finished tree, if the repair loop completed.
    pub fn tree(&self) -> Option<&TreeEdgeSet<'g>> {
        self.improvement
            .is_complete()
            .then_some(&self.improvement.tree)
    }
}

/// Thresholds, forest, straggler attachment, spanning, repair.
pub fn find_2k_st_mindeg(g: &Graph, k: usize) -> Result<MindegRun<'_>, MindegError> {
    if k < 2 {
        return Err(MindegError::InvalidK(k));
    }
    if !g.is_connected() {
        return Err(MindegError::Disconnected);
    }
    let thresholds = compute_thresholds(k, g.order());
    let forest = grow_forest(g, &thresholds);
    let initial = attach_and_span(g, &forest)?;
    let improvement = improve(&initial, k)?;
    Ok(MindegRun {
        thresholds,
        forest,
        initial,
        improvement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, random_graph_min_degree, FamilySpec};
    use crate::graph::build_graph;

    fn complete(n: usize) -> Graph {
        generate(&FamilySpec::Complete(n)).unwrap()
    }

    #[test]
    fn threshold_values() {
        assert_eq!(c_k(2), 4.0);
        let th = compute_thresholds(2, 10_000);
        assert!((th.p - 201.0).abs() < 1e-9);
        assert!(th.in_regime && th.degree_bound() > th.p && th.p > 4.0);
        let c3 = (6.0 * (5.0 + 2.0 * 6f64.sqrt())).sqrt();
        assert!((c_k(3) - c3).abs() < 1e-12);
        assert!((c_k(3) - 7.7068).abs() < 1e-4);
        assert!(!compute_thresholds(3, 50).in_regime);
    }

    #[test]
    fn forest_on_complete_graph_is_one_star() {
        let g = complete(20);
        let f = grow_forest(&g, &compute_thresholds(2, 20));
        assert_eq!(f.component_sizes, vec![20]);
        assert!(f.stragglers().is_empty());
        assert_eq!(f.forest.degree(0), 19);
    }

    #[test]
    fn forest_invariants_hold_when_degree_is_large() {
        for seed in 0..3 {
            let g = random_graph_min_degree(400, 80, seed).unwrap();
            let th = compute_thresholds(2, 400);
            assert!(th.hypothesis_holds(&g));
            let f = grow_forest(&g, &th);
            for v in g.vertices() {
                let d = f.forest.degree(v);
                assert!(!(2..=3).contains(&d));
            }
            assert!(f.component_sizes.iter().all(|&s| s as f64 >= th.p));
            assert!(f.num_components() as f64 <= 400.0 / th.p);
            assert!((f.stragglers().len() as f64) < th.straggler_bound());
        }
    }

    #[test]
    fn spanning_joins_components_with_few_edges() {
        // two K6 joined through vertex 12; each gets its own star when p is small
        let mut edges = Vec::new();
        for base in [0, 6] {
            for i in 0..6 {
                for j in i + 1..6 {
                    edges.push((base + i, base + j));
                }
            }
        }
        edges.extend([(5, 12), (12, 6)]);
        let g = build_graph(13, edges).unwrap();
        let mut th = compute_thresholds(2, 13);
        th.p = 3.0;
        let f = grow_forest(&g, &th);
        assert_eq!(f.num_components(), 2);
        let t0 = attach_and_span(&g, &f).unwrap();
        assert!(t0.is_spanning_tree());
        assert_eq!(t0.len() - f.forest.len(), 1);
    }

    #[test]
    fn straggler_without_leaf_neighbor_is_reported() {
        // star at 0 over 1..=4, vertex 5 hangs only on the center
        let g = build_graph(6, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        let forest = TreeEdgeSet::from_edges(&g, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let mut covered = vec![true; 6];
        covered[5] = false;
        let f = ConstrainedForest {
            forest,
            covered,
            component_sizes: vec![5],
        };
        assert_eq!(
            attach_and_span(&g, &f).unwrap_err(),
            MindegError::NoLeafNeighbor(5)
        );
    }

    #[test]
    fn hamiltonian_path_in_k6_is_repaired() {
        let g = complete(6);
        let path = TreeEdgeSet::from_edges(&g, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let out = improve(&path, 2).unwrap();
        assert!(out.is_complete());
        assert_eq!(out.tree.is_2k_st(2), Ok(true));
        assert!(!out.moves.is_empty());
        for m in &out.moves {
            assert!(m.after.counts < m.before.counts);
            assert!(m.after.mu <= m.before.mu);
        }
    }

    #[test]
    fn finished_tree_is_returned_unchanged() {
        let g = complete(7);
        let star = TreeEdgeSet::star(&g, 3);
        let out = improve(&star, 3).unwrap();
        assert!(out.moves.is_empty());
        assert_eq!(out.tree, star);
    }

    #[test]
    fn swap_past_a_heavy_vertex_lowers_mu_by_one() {
        // 0 has tree degree 2 (s = 2); 6 hangs on 1, which has degree 5 = k + 3
        let g = build_graph(
            8,
            [
                (0, 1),
                (0, 7),
                (1, 2),
                (1, 3),
                (1, 4),
                (1, 6),
                (0, 6),
                (7, 5),
            ],
        )
        .unwrap();
        let t =
            TreeEdgeSet::from_edges(&g, [(0, 1), (0, 7), (1, 2), (1, 3), (1, 4), (1, 6), (7, 5)])
                .unwrap();
        assert_eq!(t.degree(1), 5);
        let out = improve(&t, 2).unwrap();
        let first = &out.moves[0];
        assert_eq!(
            first.kind,
            MoveKind::Swap {
                remove: Edge::new(1, 6),
                add: Edge::new(0, 6)
            }
        );
        assert_eq!(first.before.mu - first.after.mu, 1);
    }

    #[test]
    fn large_complete_graph() {
        let g = complete(400);
        let run = find_2k_st_mindeg(&g, 2).unwrap();
        assert_eq!(run.tree().unwrap().is_2k_st(2), Ok(true));
    }

    #[test]
    fn cycle_gets_stuck() {
        // no vertex is heavy enough to seed a star, so nothing covers the
        // stragglers; a wheel gets a forest but cannot be repaired
        let g = generate(&FamilySpec::Cycle(10)).unwrap();
        assert_eq!(
            find_2k_st_mindeg(&g, 2).unwrap_err(),
            MindegError::NoLeafNeighbor(0)
        );
        let mut edges: Vec<(usize, usize)> = (1..7).map(|i| (0, i)).collect();
        edges.extend((1..7).map(|i| (i, i % 6 + 1)));
        edges.extend([(1, 7), (7, 8), (8, 4)]);
        let g = build_graph(9, edges).unwrap();
        match find_2k_st_mindeg(&g, 2) {
            Ok(run) => {
                assert!(run.tree().is_none() || run.improvement.tree.is_2k_st(2) == Ok(true))
            }
            Err(e) => assert_eq!(e, MindegError::NoLeafNeighbor(7)),
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = complete(5);
        assert_eq!(
            find_2k_st_mindeg(&g, 1).unwrap_err(),
            MindegError::InvalidK(1)
        );
        let split = Graph::empty(3);
        assert_eq!(
            find_2k_st_mindeg(&split, 2).unwrap_err(),
            MindegError::Disconnected
        );
        let partial = TreeEdgeSet::from_edges(&g, [(0, 1)]).unwrap();
        assert_eq!(improve(&partial, 2).unwrap_err(), MindegError::NotSpanning);
    }
}
