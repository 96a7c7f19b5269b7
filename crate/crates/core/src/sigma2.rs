//! Spanning trees without degree-2 vertices for graphs with
//! `sigma2 >= n - 2`.
//!
//! Such a graph on `n >= 10` vertices has one unless it is `D_n`. Complete
//! graphs get a star, diameter-two graphs are searched directly, and
//! diameter-three graphs go through a case analysis on a carefully chosen
//! path `u0 u1 u2 u3` between two vertices at distance three. Every case
//! builds a small subtree around that path which covers `u0`, `u3` and the
//! neighbors of `u0`; all remaining vertices are neighbors of `u3` and are
//! hung on it at the end.

use thiserror::Error;

use crate::families::recognize_dn;
use crate::graph::{Edge, Graph, Sigma2, VertexId};
use crate::mindeg::find_2k_st_mindeg;
use crate::solver::{solve_2k_st, SearchBudget, SearchVerdict};
use crate::tree::TreeEdgeSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Sigma2Error {
    #[error("graph is not connected")]
    Disconnected,
    #[error("order {0} is below 8")]
    TooSmall(usize),
    #[error("sigma2 = {sigma2} is below n - 2 = {required}")]
    Sigma2TooSmall { sigma2: Sigma2, required: usize },
    #[error("expected diameter 3, found {0:?}")]
    WrongDiameter(Option<usize>),
    #[error("no vertex qualifies as {0}")]
    MissingWitness(&'static str),
    #[error("broken invariant: {0}")]
    BrokenInvariant(String),
    #[error("exhaustive search stopped after {0} nodes")]
    BudgetExceeded(u64),
}

fn broken(what: impl Into<String>) -> Sigma2Error {
    Sigma2Error::BrokenInvariant(what.into())
}

fn check(cond: bool, what: &str) -> Result<(), Sigma2Error> {
    if cond {
        Ok(())
    } else {
        Err(broken(what))
    }
}

/// Shape of the tree that was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    /// Star of a complete graph.
    Star,
    /// Exchange repair or exhaustive search (diameter two, or `n < 10`).
    Search,
    /// `u0` has at most 3 neighbors, all adjacent to `u1` or `u2`; they are
    /// hung on the middle of the path.
    SpineCover,
    /// `u0` has 2 neighbors; its outside neighbor `z1` reaches `u3` through
    /// `z2`, which becomes a branch vertex.
    DetourPair,
    /// `u0` has 3 neighbors none of which sees `u1`; `u0` branches itself.
    EndFan,
    /// `u0` has 3 neighbors, one of them `a` shared with `u1`; detour as in
    /// [`Construction::DetourPair`].
    DetourTriple,
    /// Both ends keep at least 3 neighbors after `a1`, `a2` are taken.
    BothEnds,
    /// The neighbors of `u0` besides `a2` all see `u1`, which takes them.
    InnerFan,
    /// `u0` hangs on a neighbor `w` of `z2` shared with `u0`.
    SharedNeighbor,
    /// `z2` branches to `z1` and a further neighbor `w` of `u3`.
    DetourWide,
}

/// Outcome of [`find_hist_sigma2`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HistOutcome<'g> {
    Found {
        tree: TreeEdgeSet<'g>,
        construction: Construction,
    },
    NoHist(NoHistReason),
}

impl<'g> HistOutcome<'g> {
    pub fn tree(&self) -> Option<&TreeEdgeSet<'g>> {
        match self {
            HistOutcome::Found { tree, .. } => Some(tree),
            HistOutcome::NoHist(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoHistReason {
    /// The graph is `D_n`.
    IsDn,
    /// Exhaustive search on an order-8 or order-9 input found nothing.
    Exhausted,
}

/// The chosen path `u0 u1 u2 u3` with the quantities it was ranked by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiametralContext {
    pub path: [VertexId; 4],
    /// `d(u0)`, minimized first.
    pub end_degree: usize,
    /// `max(3 - d(u1), 0)`, minimized second.
    pub deficit: usize,
    /// `|N(u0) ∩ (N(u1) ∪ N(u2))|`, maximized last.
    pub overlap: usize,
}

/// A subtree around the path, to be completed by hanging the rest on `hub`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialHist<'g> {
    pub tree: TreeEdgeSet<'g>,
    pub hub: VertexId,
    pub construction: Construction,
}

impl PartialHist<'_> {
    pub fn vertices(&self) -> Vec<VertexId> {
        let t = &self.tree;
        (0..t.host().order()).filter(|&v| t.degree(v) > 0).collect()
    }
}

fn overlap(g: &Graph, u0: VertexId, u1: VertexId, u2: VertexId) -> usize {
    g.neighbors(u0)
        .iter()
        .filter(|&&x| g.has_edge(x, u1) || g.has_edge(x, u2))
        .count()
}

/// Picks the path minimizing `d(u0)`, then `max(3 - d(u1), 0)`, then
/// maximizing `|N(u0) ∩ (N(u1) ∪ N(u2))|`; ties go to the first path in
/// lexicographic order of endpoints and then vertices.
pub fn choose_diametral_path(g: &Graph) -> Result<DiametralContext, Sigma2Error> {
    if !g.is_connected() {
        return Err(Sigma2Error::Disconnected);
    }
    let diameter = g.diameter();
    if diameter != Some(3) {
        return Err(Sigma2Error::WrongDiameter(diameter));
    }
    let paths = g.diametral_paths().map_err(|_| Sigma2Error::Disconnected)?;
    let mut best: Option<DiametralContext> = None;
    for p in paths {
        let path = [p[0], p[1], p[2], p[3]];
        let ctx = DiametralContext {
            path,
            end_degree: g.degree(p[0]),
            deficit: 3usize.saturating_sub(g.degree(p[1])),
            overlap: overlap(g, p[0], p[1], p[2]),
        };
        let key = |c: &DiametralContext| (c.end_degree, c.deficit, std::cmp::Reverse(c.overlap));
        if best.as_ref().is_none_or(|b| key(&ctx) < key(b)) {
            best = Some(ctx);
        }
    }
    best.ok_or(Sigma2Error::WrongDiameter(diameter))
}

/// The ends of the path split the other vertices: every vertex besides `u0`
/// and `u3` is adjacent to exactly one of them.
fn check_split(g: &Graph, ctx: &DiametralContext) -> Result<(), Sigma2Error> {
    let [u0, _, _, u3] = ctx.path;
    check(
        g.degree(u0) + g.degree(u3) == g.order() - 2,
        "end degrees sum to n - 2",
    )?;
    for v in g.vertices().filter(|&v| v != u0 && v != u3) {
        check(
            g.has_edge(v, u0) != g.has_edge(v, u3),
            "ends split the remaining vertices",
        )?;
    }
    if cfg!(debug_assertions) {
        for end in [u0, u3] {
            for &v in g.neighbors(end) {
                check(
                    g.degree(v) >= g.degree(end),
                    "neighbors of an end are at least as heavy as it",
                )?;
            }
        }
    }
    Ok(())
}

fn first(
    candidates: impl IntoIterator<Item = VertexId>,
    what: &'static str,
) -> Result<VertexId, Sigma2Error> {
    candidates
        .into_iter()
        .next()
        .ok_or(Sigma2Error::MissingWitness(what))
}

fn build<'g>(
    g: &'g Graph,
    hub: VertexId,
    construction: Construction,
    edges: impl IntoIterator<Item = (VertexId, VertexId)>,
) -> Result<PartialHist<'g>, Sigma2Error> {
    let tree = TreeEdgeSet::from_edges(g, edges.into_iter().map(Edge::from))
        .map_err(|e| broken(format!("{construction:?} is not a subtree: {e}")))?;
    Ok(PartialHist {
        tree,
        hub,
        construction,
    })
}

fn path_edges(path: [VertexId; 4]) -> [(VertexId, VertexId); 3] {
    [(path[0], path[1]), (path[1], path[2]), (path[2], path[3])]
}

/// Subtree for `d(u0) <= 3`.
pub fn build_case1<'g>(
    g: &'g Graph,
    ctx: &DiametralContext,
) -> Result<PartialHist<'g>, Sigma2Error> {
    let [u0, u1, u2, u3] = ctx.path;
    let adj = |x: VertexId, y: VertexId| g.has_edge(x, y);
    check(g.degree(u0) <= 3, "start of the path has degree at most 3")?;
    check(
        g.degree(u1) >= 3,
        "second path vertex has degree at least 3",
    )?;

    let off_path = || {
        g.neighbors(u1)
            .iter()
            .copied()
            .filter(|&x| x != u0 && x != u2)
    };
    let a = match off_path().find(|&x| adj(x, u0)) {
        Some(x) => x,
        None => first(off_path(), "a: neighbor of u1 off the path")?,
    };
    let n0 = g.neighbors(u0);

    if n0.iter().all(|&v| adj(v, u1) || adj(v, u2)) {
        let a2 = first(
            g.neighbors(u2)
                .iter()
                .copied()
                .filter(|&x| x != u1 && x != u3 && x != a),
            "a': neighbor of u2 off the path, not a",
        )?;
        let mut edges = path_edges(ctx.path).to_vec();
        edges.extend([(u1, a), (u2, a2)]);
        for &v in n0.iter().filter(|&&v| v != u1 && v != a && v != a2) {
            let w = if adj(v, u1) { u1 } else { u2 };
            edges.push((v, w));
        }
        return build(g, u3, Construction::SpineCover, edges);
    }

    let z1 = first(
        n0.iter().copied().filter(|&v| !adj(v, u1) && !adj(v, u2)),
        "z1: neighbor of u0 outside N(u1) and N(u2)",
    )?;
    let z2 = first(
        g.neighbors(z1).iter().copied().filter(|&x| adj(x, u3)),
        "z2: common neighbor of z1 and u3",
    )?;
    check(z2 != u2, "z2 differs from u2")?;
    if cfg!(debug_assertions) && n0.iter().all(|&v| v == u1 || v == z1 || adj(v, u1)) {
        check(
            !adj(u1, z2),
            "u1 and z2 are not adjacent when u1 sees all other neighbors of u0",
        )?;
    }
    let b = first(
        g.neighbors(u2)
            .iter()
            .copied()
            .filter(|x| ![u1, z1, a, z2, u3].contains(x)),
        "b: neighbor of u2 avoiding u1, z1, a, z2, u3",
    )?;

    if g.degree(u0) == 2 {
        let c = first(
            g.neighbors(z2)
                .iter()
                .copied()
                .filter(|x| ![z1, a, u2, b, u3].contains(x)),
            "c: neighbor of z2 avoiding z1, a, u2, b, u3",
        )?;
        let mut edges = path_edges(ctx.path).to_vec();
        edges.extend([(u1, a), (u2, b), (u3, z2), (z2, z1), (z2, c)]);
        return build(g, u3, Construction::DetourPair, edges);
    }

    if !adj(a, u0) {
        let b2 = first(
            g.neighbors(u2)
                .iter()
                .copied()
                .filter(|&x| !adj(x, u0) && x != a && x != u3),
            "b': neighbor of u2 outside N(u0) avoiding a, u3",
        )?;
        let mut edges = path_edges(ctx.path).to_vec();
        edges.extend([(u1, a), (u2, b2)]);
        edges.extend(n0.iter().filter(|&&v| v != u1).map(|&v| (u0, v)));
        return build(g, u3, Construction::EndFan, edges);
    }

    check(!adj(z2, a), "z2 and a are not adjacent")?;
    let c = first(
        g.neighbors(z2)
            .iter()
            .copied()
            .filter(|x| ![z1, u2, b, u3].contains(x)),
        "c': neighbor of z2 avoiding z1, u2, b, u3",
    )?;
    let mut edges = path_edges(ctx.path).to_vec();
    edges.extend([(u1, a), (u2, b), (u3, z2), (z2, z1), (z2, c)]);
    build(g, u3, Construction::DetourTriple, edges)
}

/// Subtree for `d(u0) >= 4`; in the balanced sub-case it is already a
/// spanning tree.
pub fn build_case2<'g>(
    g: &'g Graph,
    ctx: &DiametralContext,
) -> Result<PartialHist<'g>, Sigma2Error> {
    let [u0, u1, u2, u3] = ctx.path;
    let adj = |x: VertexId, y: VertexId| g.has_edge(x, y);
    check(g.degree(u0) >= 4, "start of the path has degree at least 4")?;
    check(
        g.degree(u3) >= g.degree(u0),
        "far end is at least as heavy as the start",
    )?;

    let on_path = |x: VertexId| ctx.path.contains(&x);
    // (min remaining end degree, -(cross edges)), maximized; first wins ties
    let mut best: Option<((usize, std::cmp::Reverse<usize>), VertexId, VertexId)> = None;
    for &a1 in g.neighbors(u1).iter().filter(|&&x| !on_path(x)) {
        for &a2 in g.neighbors(u2).iter().filter(|&&x| !on_path(x) && x != a1) {
            let left =
                |u: VertexId| g.degree(u) - usize::from(adj(u, a1)) - usize::from(adj(u, a2));
            let cross = usize::from(adj(u1, a2)) + usize::from(adj(u2, a1));
            let score = (left(u0).min(left(u3)), std::cmp::Reverse(cross));
            if best.as_ref().is_none_or(|b| score > b.0) {
                best = Some((score, a1, a2));
            }
        }
    }
    let ((spare, _), a1, a2) = best.ok_or(Sigma2Error::MissingWitness(
        "a1, a2: distinct neighbors of u1, u2 off the path",
    ))?;

    if spare >= 3 {
        let mut edges = path_edges(ctx.path).to_vec();
        edges.extend([(u1, a1), (u2, a2)]);
        for end in [u0, u3] {
            let next = if end == u0 { u1 } else { u2 };
            edges.extend(
                g.neighbors(end)
                    .iter()
                    .filter(|&&v| v != a1 && v != a2 && v != next)
                    .map(|&v| (end, v)),
            );
        }
        return build(g, u3, Construction::BothEnds, edges);
    }

    let u0_short = g.degree(u0) - usize::from(adj(u0, a1)) - usize::from(adj(u0, a2)) <= 2;
    check(
        u0_short,
        "only the start of the path can run short of neighbors",
    )?;
    check(
        g.degree(u0) == 4 && adj(u0, a1) && adj(u0, a2),
        "start has degree 4 and sees a1, a2",
    )?;

    let rest: Vec<VertexId> = g
        .neighbors(u0)
        .iter()
        .copied()
        .filter(|&v| v != u1 && v != a2)
        .collect();
    if rest.iter().all(|&v| adj(v, u1)) {
        let mut edges = path_edges(ctx.path).to_vec();
        edges.push((u2, a2));
        edges.extend(rest.iter().map(|&v| (u1, v)));
        return build(g, u3, Construction::InnerFan, edges);
    }

    let outside: Vec<VertexId> = g
        .neighbors(u0)
        .iter()
        .copied()
        .filter(|&v| v != u1 && !adj(v, u1))
        .collect();
    check(outside.len() == 1, "exactly one neighbor of u0 misses u1")?;
    let z1 = outside[0];
    check(!adj(z1, u2), "z1' and u2 are not adjacent")?;
    let z2 = first(
        g.neighbors(z1)
            .iter()
            .copied()
            .filter(|&x| adj(x, u3) && x != u2),
        "z2': common neighbor of z1' and u3 other than u2",
    )?;
    let w = first(
        g.neighbors(z2)
            .iter()
            .copied()
            .filter(|&x| x != z1 && x != u3),
        "w: neighbor of z2' avoiding z1', u3",
    )?;
    check(w != u1 && w != u2, "w lies off the middle of the path")?;

    if adj(w, u0) {
        check(w == a1 || w == a2, "w is a1 or a2")?;
        let edges = [
            (u1, u2),
            (u1, a1),
            (u1, a2),
            (w, u0),
            (w, z2),
            (z2, z1),
            (z2, u3),
        ];
        return build(g, u3, Construction::SharedNeighbor, edges);
    }
    let mut edges = path_edges(ctx.path).to_vec();
    edges.extend([(u1, a1), (u2, a2), (u3, z2), (z2, z1), (z2, w)]);
    build(g, u3, Construction::DetourWide, edges)
}

/// Checks the three conditions that let the hub absorb the rest: the
/// subtree contains both ends and every neighbor of `u0`, no vertex other
/// than the hub has degree 2, and enough vertices are left to lift the hub
/// to degree 3.
pub fn check_partial(
    g: &Graph,
    ctx: &DiametralContext,
    ph: &PartialHist<'_>,
) -> Result<(), Sigma2Error> {
    let [u0, _, _, u3] = ctx.path;
    let t = &ph.tree;
    let inside = |v: VertexId| t.degree(v) > 0;
    check(
        inside(u0) && inside(u3) && g.neighbors(u0).iter().all(|&v| inside(v)),
        "subtree covers both ends and the neighbors of u0",
    )?;
    check(
        g.vertices().all(|v| v == ph.hub || t.degree(v) != 2),
        "no subtree vertex besides the hub has degree 2",
    )?;
    let size = t.len() + 1;
    check(
        g.order() + t.degree(ph.hub) >= size + 3,
        "enough vertices remain to raise the hub to degree 3",
    )
}

/// Hangs every vertex outside the subtree on the hub.
pub fn complete_hist<'g>(
    g: &'g Graph,
    ph: &PartialHist<'g>,
) -> Result<TreeEdgeSet<'g>, Sigma2Error> {
    let mut tree = ph.tree.clone();
    for v in g
        .vertices()
        .filter(|&v| ph.tree.degree(v) == 0 && v != ph.hub)
    {
        check(
            g.has_edge(v, ph.hub),
            "every leftover vertex is adjacent to the hub",
        )?;
        tree.insert_unchecked(Edge::new(ph.hub, v));
    }
    check(
        tree.is_2k_st(2) == Ok(true),
        "completed tree has no degree-2 vertex",
    )?;
    Ok(tree)
}

fn search<'g>(g: &'g Graph) -> Result<Option<TreeEdgeSet<'g>>, Sigma2Error> {
    if let Ok(run) = find_2k_st_mindeg(g, 2) {
        if let Some(t) = run.tree() {
            return Ok(Some(t.clone()));
        }
    }
    match solve_2k_st(g, 2, SearchBudget::default()) {
        SearchVerdict::Found(t) => Ok(Some(t)),
        SearchVerdict::NotExists => Ok(None),
        SearchVerdict::BudgetExceeded(nodes) => Err(Sigma2Error::BudgetExceeded(nodes)),
    }
}

/// Finds a spanning tree with no degree-2 vertex, or shows the graph is
/// `D_n`. Orders 8 and 9 fall back to exhaustive search.
pub fn find_hist_sigma2(g: &Graph) -> Result<HistOutcome<'_>, Sigma2Error> {
    let n = g.order();
    if n < 8 {
        return Err(Sigma2Error::TooSmall(n));
    }
    if !g.is_connected() {
        return Err(Sigma2Error::Disconnected);
    }
    let sigma2 = g.sigma2();
    if !sigma2.at_least(n - 2) {
        return Err(Sigma2Error::Sigma2TooSmall {
            sigma2,
            required: n - 2,
        });
    }
    if recognize_dn(g).is_some() {
        return Ok(HistOutcome::NoHist(NoHistReason::IsDn));
    }
    let found = |tree, construction| Ok(HistOutcome::Found { tree, construction });
    if g.is_complete() {
        return found(TreeEdgeSet::star(g, 0), Construction::Star);
    }
    let diameter = g.diameter();
    if n < 10 || diameter == Some(2) {
        return match search(g)? {
            Some(tree) => found(tree, Construction::Search),
            None if n < 10 => Ok(HistOutcome::NoHist(NoHistReason::Exhausted)),
            None => Err(broken(
                "a diameter-2 graph with sigma2 >= n - 2 has a tree without degree 2",
            )),
        };
    }
    if diameter != Some(3) {
        return Err(broken(format!(
            "sigma2 >= n - 2 forces diameter at most 3, got {diameter:?}"
        )));
    }
    let ctx = choose_diametral_path(g)?;
    check_split(g, &ctx)?;
    let ph = if ctx.end_degree <= 3 {
        build_case1(g, &ctx)?
    } else {
        build_case2(g, &ctx)?
    };
    check_partial(g, &ctx, &ph)?;
    let construction = ph.construction;
    found(complete_hist(g, &ph)?, construction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{
        generate, random_graph_sigma2, random_graph_sigma2_diameter3, FamilySpec,
    };
    use crate::graph::build_graph;

    fn family(spec: &str) -> Graph {
        generate(&spec.parse::<FamilySpec>().unwrap()).unwrap()
    }

    #[test]
    fn complete_graph_gives_star() {
        let g = family("complete:10");
        let out = find_hist_sigma2(&g).unwrap();
        assert!(matches!(
            out,
            HistOutcome::Found {
                construction: Construction::Star,
                ..
            }
        ));
        assert_eq!(out.tree().unwrap().degree(0), 9);
    }

    #[test]
    fn dn_has_none() {
        for n in 10..=14 {
            let g = family(&format!("dn:{n}"));
            assert_eq!(
                find_hist_sigma2(&g).unwrap(),
                HistOutcome::NoHist(NoHistReason::IsDn)
            );
        }
    }

    #[test]
    fn path_choice_on_dn_starts_at_pendant() {
        let g = family("dn:10");
        let ctx = choose_diametral_path(&g).unwrap();
        assert_eq!(ctx.path[0], 9);
        assert_eq!(ctx.end_degree, 1);
        assert_eq!(g.degree(ctx.path[0]) + g.degree(ctx.path[3]), 8);
    }

    #[test]
    fn path_choice_needs_diameter_three() {
        assert_eq!(
            choose_diametral_path(&family("complete:5")).unwrap_err(),
            Sigma2Error::WrongDiameter(Some(1))
        );
    }

    #[test]
    fn preconditions_are_reported() {
        assert_eq!(
            find_hist_sigma2(&family("complete:7")).unwrap_err(),
            Sigma2Error::TooSmall(7)
        );
        let e = find_hist_sigma2(&family("cycle:12")).unwrap_err();
        assert!(matches!(e, Sigma2Error::Sigma2TooSmall { .. }));
        assert_eq!(
            find_hist_sigma2(&Graph::empty(10)).unwrap_err(),
            Sigma2Error::Disconnected
        );
    }

    #[test]
    fn dense_random_graphs() {
        for seed in 0..40 {
            let n = 10 + (seed as usize % 5);
            let g = random_graph_sigma2(n, n - 2, seed).unwrap();
            if recognize_dn(&g).is_some() {
                continue;
            }
            let out = find_hist_sigma2(&g).unwrap();
            assert_eq!(out.tree().unwrap().is_2k_st(2), Ok(true), "seed {seed}");
        }
    }

    #[test]
    fn diameter_three_graphs_reach_every_case() {
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..400 {
            let n = 10 + (seed as usize % 5);
            let g = random_graph_sigma2_diameter3(n, seed).unwrap();
            let out = find_hist_sigma2(&g).unwrap();
            match out {
                HistOutcome::Found { tree, construction } => {
                    assert_eq!(tree.is_2k_st(2), Ok(true));
                    seen.insert(format!("{construction:?}"));
                }
                other => panic!("seed {seed}: {other:?}"),
            }
        }
        assert!(seen.len() >= 3, "constructions seen: {seen:?}");
    }

    #[test]
    fn spine_cover_tree_is_small() {
        // u0 = 0 with neighbors 1, 2; both see u1 = 1 or u2
        let n = 10;
        let mut edges = vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)];
        // u3 = 9 sees everything except 0, 1, 2; its side is a clique with 3
        let side: Vec<usize> = (3..n).collect();
        for (i, &x) in side.iter().enumerate() {
            for &y in &side[i + 1..] {
                edges.push((x, y));
            }
        }
        edges.extend([(1, 4), (2, 4)]);
        let g = build_graph(n, edges).unwrap();
        assert!(g.sigma2().at_least(n - 2));
        let ctx = choose_diametral_path(&g).unwrap();
        let ph = build_case1(&g, &ctx).unwrap();
        assert_eq!(ph.construction, Construction::SpineCover);
        assert!(ph.vertices().len() <= 8);
        assert_eq!(ph.tree.degree(ph.hub), 1);
        check_partial(&g, &ctx, &ph).unwrap();
        assert_eq!(complete_hist(&g, &ph).unwrap().is_2k_st(2), Ok(true));
    }

    /// One instance per construction, found by searching structured random
    /// graphs; pins down which branch each shape lands in.
    const BRANCH_FIXTURES: &[(Construction, usize, &[(usize, usize)])] = &[
        (
            Construction::DetourPair,
            10,
            &[
                (0, 1),
                (0, 2),
                (1, 5),
                (1, 6),
                (1, 8),
                (2, 3),
                (2, 4),
                (2, 7),
                (3, 4),
                (3, 5),
                (3, 6),
                (3, 7),
                (3, 8),
                (3, 9),
                (4, 5),
                (4, 6),
                (4, 7),
                (4, 9),
                (5, 6),
                (5, 7),
                (5, 8),
                (5, 9),
                (6, 8),
                (6, 9),
                (7, 8),
                (7, 9),
                (8, 9),
            ],
        ),
        (
            Construction::DetourTriple,
            11,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 4),
                (2, 6),
                (2, 9),
                (3, 7),
                (3, 8),
                (4, 5),
                (4, 6),
                (4, 7),
                (4, 8),
                (4, 9),
                (4, 10),
                (5, 6),
                (5, 7),
                (5, 8),
                (5, 9),
                (5, 10),
                (6, 7),
                (6, 8),
                (6, 9),
                (6, 10),
                (7, 9),
                (7, 10),
                (8, 9),
                (8, 10),
                (9, 10),
            ],
        ),
        (
            Construction::EndFan,
            10,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 6),
                (1, 7),
                (1, 8),
                (2, 4),
                (2, 5),
                (2, 6),
                (3, 4),
                (3, 5),
                (3, 7),
                (4, 6),
                (4, 7),
                (4, 9),
                (5, 6),
                (5, 7),
                (5, 8),
                (5, 9),
                (6, 8),
                (6, 9),
                (7, 8),
                (7, 9),
                (8, 9),
            ],
        ),
        (
            Construction::InnerFan,
            10,
            &[
                (0, 1),
                (0, 2),
                (0, 4),
                (0, 9),
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 6),
                (3, 8),
                (3, 9),
                (4, 7),
                (4, 9),
                (5, 6),
                (5, 7),
                (5, 8),
                (5, 9),
                (6, 8),
                (6, 9),
                (7, 8),
                (7, 9),
            ],
        ),
        (
            Construction::SharedNeighbor,
            10,
            &[
                (0, 3),
                (0, 6),
                (0, 7),
                (0, 8),
                (1, 2),
                (1, 3),
                (1, 6),
                (1, 7),
                (2, 4),
                (2, 5),
                (2, 9),
                (3, 6),
                (3, 7),
                (4, 6),
                (4, 8),
                (4, 9),
                (5, 7),
                (5, 8),
                (5, 9),
                (8, 9),
            ],
        ),
        (
            Construction::DetourWide,
            10,
            &[
                (0, 1),
                (0, 2),
                (0, 6),
                (0, 9),
                (1, 4),
                (1, 5),
                (1, 7),
                (2, 3),
                (2, 6),
                (2, 9),
                (3, 6),
                (3, 8),
                (3, 9),
                (4, 5),
                (4, 8),
                (4, 9),
                (5, 7),
                (5, 8),
                (6, 7),
                (7, 8),
            ],
        ),
        (
            Construction::BothEnds,
            10,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 3),
                (1, 4),
                (1, 5),
                (1, 6),
                (1, 7),
                (2, 3),
                (2, 4),
                (2, 8),
                (3, 4),
                (3, 5),
                (3, 6),
                (4, 6),
                (4, 7),
                (5, 6),
                (5, 9),
                (6, 8),
                (6, 9),
                (7, 8),
                (7, 9),
                (8, 9),
            ],
        ),
    ];

    #[test]
    fn every_construction_has_a_witness() {
        for &(expected, n, edges) in BRANCH_FIXTURES {
            let g = build_graph(n, edges.iter().copied()).unwrap();
            let ctx = choose_diametral_path(&g).unwrap();
            check_split(&g, &ctx).unwrap();
            let ph = if ctx.end_degree <= 3 {
                build_case1(&g, &ctx)
            } else {
                build_case2(&g, &ctx)
            }
            .unwrap();
            assert_eq!(ph.construction, expected);
            check_partial(&g, &ctx, &ph).unwrap();
            let tree = complete_hist(&g, &ph).unwrap();
            assert_eq!(tree.is_2k_st(2), Ok(true), "{expected:?}");
            assert!(solve_2k_st(&g, 2, SearchBudget::default()).is_found());
        }
    }

    #[test]
    fn detour_trees_have_nine_vertices() {
        for &(expected, n, edges) in BRANCH_FIXTURES {
            if !matches!(
                expected,
                Construction::DetourPair | Construction::DetourTriple | Construction::DetourWide
            ) {
                continue;
            }
            let g = build_graph(n, edges.iter().copied()).unwrap();
            let ctx = choose_diametral_path(&g).unwrap();
            let ph = if ctx.end_degree <= 3 {
                build_case1(&g, &ctx)
            } else {
                build_case2(&g, &ctx)
            }
            .unwrap();
            assert_eq!(ph.vertices().len(), 9);
            assert_eq!(ph.tree.degree(ph.hub), 2);
        }
    }

    #[test]
    fn completion_is_identity_on_spanning_input() {
        let g = family("complete:6");
        let ph = PartialHist {
            tree: TreeEdgeSet::star(&g, 5),
            hub: 5,
            construction: Construction::Star,
        };
        assert_eq!(complete_hist(&g, &ph).unwrap(), ph.tree);
    }
}
