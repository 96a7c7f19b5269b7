//! Exact decision procedure for spanning trees with no vertex degree in
//! `[2, k]`, and a brute-force enumeration oracle that checks it.
//!
//! A spanning tree restricts to a spanning tree of every block
//! (biconnected component), so the search runs block by block over the
//! block-cut tree, leaves first. A cut vertex lies in at least two blocks and
//! therefore has tree degree at least 2, so it must reach `k + 1`. Each
//! non-root block reports the largest degree (capped at `k + 1`) it can give
//! its parent cut vertex while satisfying everything below it; the parent
//! block then only needs the remaining degree at that vertex.

mod oracle;
mod search;

use std::collections::VecDeque;
use std::time::Duration;

pub use oracle::{count_spanning_trees, oracle_enumerate, OracleError, ORACLE_MAX_ORDER};

use crate::graph::{Edge, Graph, VertexId};
use crate::tree::TreeEdgeSet;
use search::{BlockOutcome, BlockSearch, DegreeRule, NodeCounter};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximum number of expanded search nodes, at least 1.
    pub max_nodes: u64,
    /// Soft wall-clock limit, checked every 1024 nodes.
    pub time_hint: Option<Duration>,
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: max_nodes.max(1),
            time_hint: None,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::nodes(50_000_000)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchVerdict<'g> {
    Found(TreeEdgeSet<'g>),
    NotExists,
    BudgetExceeded(u64),
}

impl<'g> SearchVerdict<'g> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchVerdict::Found(_))
    }

    pub fn tree(&self) -> Option<&TreeEdgeSet<'g>> {
        match self {
            SearchVerdict::Found(t) => Some(t),
            _ => None,
        }
    }

    /// Outcome label without the certificate.
    pub fn kind(&self) -> &'static str {
        match self {
            SearchVerdict::Found(_) => "found",
            SearchVerdict::NotExists => "not-exists",
            SearchVerdict::BudgetExceeded(_) => "budget-exceeded",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub blocks: usize,
}

/// Decides whether `g` has a spanning tree without vertices of degree in
/// `[2, k]`. Deterministic for a given budget.
pub fn solve_2k_st<'g>(g: &'g Graph, k: usize, budget: SearchBudget) -> SearchVerdict<'g> {
    solve_2k_st_with_stats(g, k, budget).0
}

pub fn solve_2k_st_with_stats<'g>(
    g: &'g Graph,
    k: usize,
    budget: SearchBudget,
) -> (SearchVerdict<'g>, SearchStats) {
    let n = g.order();
    if n == 0 || !g.is_connected() {
        return (SearchVerdict::NotExists, SearchStats::default());
    }
    if n == 1 {
        return (
            SearchVerdict::Found(TreeEdgeSet::empty(g)),
            SearchStats::default(),
        );
    }
    let (blocks, is_cut) = g.blocks();
    let tree = BlockCutTree::new(g, &blocks, &is_cut);
    let mut counter = NodeCounter::new(budget);
    let mut contribution = vec![0usize; blocks.len()];
    let mut chosen: Vec<Vec<Edge>> = vec![Vec::new(); blocks.len()];

    for &b in tree.order.iter().rev() {
        let vertices = &tree.vertices[b];
        let local = |v: VertexId| vertices.binary_search(&v).expect("block vertex");
        let ends: Vec<(usize, usize)> =
            blocks[b].iter().map(|e| (local(e.u), local(e.v))).collect();
        let mut rules: Vec<DegreeRule> = vertices
            .iter()
            .map(|&v| {
                if !is_cut[v] {
                    return DegreeRule::LEAF_OR_BRANCH;
                }
                let below: usize = tree.children[b]
                    .iter()
                    .filter(|&&(c, _)| c == v)
                    .map(|&(_, child)| contribution[child])
                    .sum();
                DegreeRule::at_least((k + 1).saturating_sub(below.min(k + 1)))
            })
            .collect();

        let parent_slot = tree.parent_cut[b].map(local);
        let targets: Vec<usize> = match parent_slot {
            Some(_) => (1..=k + 1).rev().collect(),
            None => vec![0],
        };
        let mut solved = false;
        for t in targets {
            if let Some(slot) = parent_slot {
                rules[slot] = DegreeRule::at_least(t);
            }
            match BlockSearch::new(vertices.len(), &ends, &rules, k).run(&mut counter) {
                BlockOutcome::Feasible(edges) => {
                    contribution[b] = t;
                    chosen[b] = edges.into_iter().map(|i| blocks[b][i]).collect();
                    solved = true;
                    break;
                }
                BlockOutcome::Infeasible => {}
                BlockOutcome::OutOfBudget => {
                    let stats = SearchStats {
                        nodes: counter.spent,
                        blocks: blocks.len(),
                    };
                    return (SearchVerdict::BudgetExceeded(counter.spent), stats);
                }
            }
        }
        if !solved {
            let stats = SearchStats {
                nodes: counter.spent,
                blocks: blocks.len(),
            };
            return (SearchVerdict::NotExists, stats);
        }
    }

    let stats = SearchStats {
        nodes: counter.spent,
        blocks: blocks.len(),
    };
    let found = TreeEdgeSet::from_edges(g, chosen.into_iter().flatten())
        .expect("block trees combine into a forest");
    assert_eq!(
        found.is_2k_st(k),
        Ok(true),
        "solver produced an invalid certificate"
    );
    (SearchVerdict::Found(found), stats)
}

/// Rooted block-cut tree, blocks in BFS order from the root block.
struct BlockCutTree {
    order: Vec<usize>,
    vertices: Vec<Vec<VertexId>>,
    parent_cut: Vec<Option<VertexId>>,
    /// (cut vertex, child block) pairs per block.
    children: Vec<Vec<(VertexId, usize)>>,
}

impl BlockCutTree {
    fn new(g: &Graph, blocks: &[Vec<Edge>], is_cut: &[bool]) -> Self {
        let nb = blocks.len();
        let vertices: Vec<Vec<VertexId>> = blocks
            .iter()
            .map(|edges| {
                let mut vs: Vec<VertexId> = edges.iter().flat_map(|e| [e.u, e.v]).collect();
                vs.sort_unstable();
                vs.dedup();
                vs
            })
            .collect();
        let mut blocks_of = vec![Vec::new(); g.order()];
        for (b, vs) in vertices.iter().enumerate() {
            for &v in vs {
                if is_cut[v] {
                    blocks_of[v].push(b);
                }
            }
        }
        let hub = g.max_degree_vertex().unwrap_or(0);
        let root = (0..nb)
            .find(|&b| vertices[b].binary_search(&hub).is_ok())
            .unwrap_or(0);
        let mut order = Vec::with_capacity(nb);
        let mut parent_cut = vec![None; nb];
        let mut children = vec![Vec::new(); nb];
        let mut seen = vec![false; nb];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(b) = queue.pop_front() {
            order.push(b);
            for &c in &vertices[b] {
                if !is_cut[c] || parent_cut[b] == Some(c) {
                    continue;
                }
                for &child in &blocks_of[c] {
                    if !seen[child] {
                        seen[child] = true;
                        parent_cut[child] = Some(c);
                        children[b].push((c, child));
                        queue.push_back(child);
                    }
                }
            }
        }
        BlockCutTree {
            order,
            vertices,
            parent_cut,
            children,
        }
    }
}
