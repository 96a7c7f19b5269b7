//! Brute-force oracle: enumerate every spanning tree by deletion/contraction
//! over the edge list and test each one. No degree reasoning at all, so it
//! stays independent of the branch-and-bound it validates.

use thiserror::Error;

use super::SearchVerdict;
use crate::graph::{Edge, Graph};
use crate::tree::TreeEdgeSet;

pub const ORACLE_MAX_ORDER: usize = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle enumeration is limited to {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
}

struct Enumerator<'a> {
    n: usize,
    edges: &'a [Edge],
    /// Union-find without path compression so merges can be undone.
    parent: Vec<usize>,
    picked: Vec<usize>,
}

impl Enumerator<'_> {
    fn root(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// True if vertices stay connected using picked edges plus `edges[from..]`.
    fn still_connected(&self, from: usize) -> bool {
        let mut label: Vec<usize> = (0..self.n).collect();
        fn find(l: &mut [usize], mut x: usize) -> usize {
            while l[x] != x {
                l[x] = l[l[x]];
                x = l[x];
            }
            x
        }
        let mut parts = self.n;
        let rest = self.edges[from..].iter();
        for e in self.picked.iter().map(|&i| &self.edges[i]).chain(rest) {
            let (a, b) = (find(&mut label, e.u), find(&mut label, e.v));
            if a != b {
                label[a] = b;
                parts -= 1;
            }
        }
        parts == 1
    }

    /// Calls `visit` on each spanning tree; stops early when it returns true.
    fn walk(&mut self, i: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if self.picked.len() == self.n - 1 {
            return visit(&self.picked);
        }
        if i == self.edges.len() {
            return false;
        }
        let e = self.edges[i];
        let (a, b) = (self.root(e.u), self.root(e.v));
        if a != b {
            self.parent[a] = b;
            self.picked.push(i);
            let stop = self.walk(i + 1, visit);
            self.picked.pop();
            self.parent[a] = a;
            if stop {
                return true;
            }
        }
        if self.still_connected(i + 1) {
            return self.walk(i + 1, visit);
        }
        false
    }
}

fn for_each_spanning_tree(g: &Graph, visit: &mut dyn FnMut(&[Edge]) -> bool) {
    let n = g.order();
    if n == 0 || !g.is_connected() {
        return;
    }
    let edges: Vec<Edge> = g.edges().collect();
    let mut en = Enumerator {
        n,
        edges: &edges,
        parent: (0..n).collect(),
        picked: Vec::new(),
    };
    let mut buf = Vec::with_capacity(n);
    en.walk(0, &mut |picked| {
        buf.clear();
        buf.extend(picked.iter().map(|&i| edges[i]));
        visit(&buf)
    });
}

/// Counts spanning trees by full enumeration (`n <= 9`).
pub fn count_spanning_trees(g: &Graph) -> Result<u64, OracleError> {
    if g.order() > ORACLE_MAX_ORDER {
        return Err(OracleError::TooLarge {
            n: g.order(),
            max: ORACLE_MAX_ORDER,
        });
    }
    let mut count = 0;
    for_each_spanning_tree(g, &mut |_| {
        count += 1;
        false
    });
    Ok(count)
}

/// Enumerates spanning trees until one has no vertex degree in `[2, k]`.
pub fn oracle_enumerate(g: &Graph, k: usize) -> Result<SearchVerdict<'_>, OracleError> {
    let n = g.order();
    if n > ORACLE_MAX_ORDER {
        return Err(OracleError::TooLarge {
            n,
            max: ORACLE_MAX_ORDER,
        });
    }
    let mut found = None;
    let mut degree = vec![0usize; n];
    for_each_spanning_tree(g, &mut |tree| {
        degree.iter_mut().for_each(|d| *d = 0);
        for e in tree {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        if degree.iter().all(|&d| d < 2 || d > k) {
            found = Some(tree.to_vec());
            return true;
        }
        false
    });
    Ok(match found {
        Some(edges) => SearchVerdict::Found(
            TreeEdgeSet::from_edges(g, edges).expect("enumerated tree is acyclic"),
        ),
        None => SearchVerdict::NotExists,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, FamilySpec};

    fn g(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap()
    }

    #[test]
    fn spanning_tree_counts() {
        assert_eq!(
            count_spanning_trees(&g(FamilySpec::Complete(4))).unwrap(),
            16
        );
        assert_eq!(
            count_spanning_trees(&g(FamilySpec::Complete(6))).unwrap(),
            1296
        );
        assert_eq!(count_spanning_trees(&g(FamilySpec::Cycle(5))).unwrap(), 5);
        assert_eq!(
            count_spanning_trees(&g(FamilySpec::CompleteBipartite(2, 3))).unwrap(),
            12
        );
        assert_eq!(count_spanning_trees(&g(FamilySpec::Path(6))).unwrap(), 1);
        assert_eq!(count_spanning_trees(&Graph::empty(3)).unwrap(), 0);
    }

    #[test]
    fn oracle_verdicts() {
        assert_eq!(
            oracle_enumerate(&g(FamilySpec::Cycle(5)), 2).unwrap(),
            SearchVerdict::NotExists
        );
        assert_eq!(
            oracle_enumerate(&g(FamilySpec::Complete(4)), 3).unwrap(),
            SearchVerdict::NotExists
        );
        let k4 = g(FamilySpec::Complete(4));
        let found = oracle_enumerate(&k4, 2).unwrap();
        assert_eq!(found.tree().unwrap().is_2k_st(2), Ok(true));
    }

    #[test]
    fn tree_inputs_decide_themselves() {
        let spider =
            crate::graph::build_graph(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap();
        assert_eq!(
            oracle_enumerate(&spider, 2).unwrap(),
            SearchVerdict::NotExists
        );
        let star = g(FamilySpec::CompleteBipartite(1, 5));
        assert!(oracle_enumerate(&star, 4).unwrap().is_found());
        assert_eq!(
            oracle_enumerate(&star, 5).unwrap(),
            SearchVerdict::NotExists
        );
    }

    #[test]
    fn refuses_large_inputs() {
        assert_eq!(
            oracle_enumerate(&g(FamilySpec::Complete(10)), 2).unwrap_err(),
            OracleError::TooLarge { n: 10, max: 9 }
        );
    }
}
