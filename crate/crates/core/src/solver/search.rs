//! Branch-and-bound over edge inclusion inside one biconnected block.
//!
//! Every vertex carries an admissible degree set (`>= min`, optionally with
//! `[2, k]` removed) and a live interval `[lo, hi]` of reachable tree degrees:
//! `lo` counts included edges and `hi` adds the undecided ones. Propagation
//! runs to a fixpoint after each branch:
//!
//! * an undecided edge inside one component of included edges is excluded;
//! * a vertex whose smallest feasible degree equals `hi` takes all its
//!   undecided edges, one whose largest feasible degree equals `lo` drops them;
//! * included + undecided edges must connect the block, and undecided
//!   bridges of that graph are forced in;
//! * feasible degree minima (maxima) must not overshoot (undershoot) `2(n-1)`.

use std::time::Instant;

use super::SearchBudget;
use crate::tree::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct DegreeRule {
    pub min: usize,
    pub forbid_stem: bool,
}

impl DegreeRule {
    pub const LEAF_OR_BRANCH: DegreeRule = DegreeRule {
        min: 1,
        forbid_stem: true,
    };

    pub fn at_least(min: usize) -> Self {
        DegreeRule {
            min: min.max(1),
            forbid_stem: false,
        }
    }

    /// Smallest and largest admissible degree inside `[lo, hi]`.
    fn window(&self, lo: usize, hi: usize, k: usize) -> Option<(usize, usize)> {
        let stem = |d: usize| self.forbid_stem && (2..=k).contains(&d);
        let mut first = lo.max(self.min).max(1);
        if stem(first) {
            first = k + 1;
        }
        let mut last = hi;
        if stem(last) {
            last = 1;
        }
        (first <= hi && last >= first).then_some((first, last))
    }

    pub fn admits(&self, d: usize, k: usize) -> bool {
        d >= self.min.max(1) && !(self.forbid_stem && (2..=k).contains(&d))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Open,
    In,
    Out,
}

pub(crate) enum BlockOutcome {
    Feasible(Vec<usize>),
    Infeasible,
    OutOfBudget,
}

pub(crate) struct NodeCounter {
    pub spent: u64,
    pub budget: SearchBudget,
    pub started: Instant,
}

impl NodeCounter {
    pub fn new(budget: SearchBudget) -> Self {
        NodeCounter {
            spent: 0,
            budget,
            started: Instant::now(),
        }
    }

    fn tick(&mut self) -> bool {
        self.spent += 1;
        if self.spent > self.budget.max_nodes {
            return false;
        }
        match self.budget.time_hint {
            Some(limit) if self.spent.is_multiple_of(1024) => self.started.elapsed() <= limit,
            _ => true,
        }
    }
}

pub(crate) struct BlockSearch<'a> {
    nv: usize,
    k: usize,
    ends: &'a [(usize, usize)],
    incident: Vec<Vec<usize>>,
    rules: &'a [DegreeRule],
    order: Vec<usize>,
    status: Vec<Status>,
    lo: Vec<usize>,
    hi: Vec<usize>,
    trail: Vec<usize>,
    included: usize,
}

impl<'a> BlockSearch<'a> {
    /// `ends` are local edges over `0..nv`; edges are branched on in BFS
    /// order from the lowest-index vertex of maximum degree.
    pub fn new(nv: usize, ends: &'a [(usize, usize)], rules: &'a [DegreeRule], k: usize) -> Self {
        let mut incident = vec![Vec::new(); nv];
        for (i, &(a, b)) in ends.iter().enumerate() {
            incident[a].push(i);
            incident[b].push(i);
        }
        let hi: Vec<usize> = incident.iter().map(Vec::len).collect();
        let root = (0..nv)
            .max_by_key(|&v| (hi[v], std::cmp::Reverse(v)))
            .unwrap_or(0);
        let mut order = Vec::with_capacity(ends.len());
        let mut listed = vec![false; ends.len()];
        let mut seen = vec![false; nv];
        let mut queue = std::collections::VecDeque::from([root]);
        seen[root] = true;
        while let Some(x) = queue.pop_front() {
            let mut around: Vec<(usize, usize)> = incident[x]
                .iter()
                .map(|&e| (if ends[e].0 == x { ends[e].1 } else { ends[e].0 }, e))
                .collect();
            around.sort_unstable();
            for (y, e) in around {
                if !listed[e] {
                    listed[e] = true;
                    order.push(e);
                }
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        BlockSearch {
            nv,
            k,
            ends,
            incident,
            rules,
            order,
            status: vec![Status::Open; ends.len()],
            lo: vec![0; nv],
            hi,
            trail: Vec::new(),
            included: 0,
        }
    }

    pub fn run(mut self, counter: &mut NodeCounter) -> BlockOutcome {
        if self.nv == 1 {
            return BlockOutcome::Feasible(Vec::new());
        }
        match self.dfs(counter) {
            Ok(Some(edges)) => BlockOutcome::Feasible(edges),
            Ok(None) => BlockOutcome::Infeasible,
            Err(()) => BlockOutcome::OutOfBudget,
        }
    }

    fn assign(&mut self, e: usize, to: Status) {
        let (a, b) = self.ends[e];
        self.status[e] = to;
        match to {
            Status::In => {
                self.lo[a] += 1;
                self.lo[b] += 1;
                self.included += 1;
            }
            Status::Out => {
                self.hi[a] -= 1;
                self.hi[b] -= 1;
            }
            Status::Open => unreachable!(),
        }
        self.trail.push(e);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let e = self.trail.pop().unwrap_or_default();
            let (a, b) = self.ends[e];
            match self.status[e] {
                Status::In => {
                    self.lo[a] -= 1;
                    self.lo[b] -= 1;
                    self.included -= 1;
                }
                Status::Out => {
                    self.hi[a] += 1;
                    self.hi[b] += 1;
                }
                Status::Open => {}
            }
            self.status[e] = Status::Open;
        }
    }

    fn dfs(&mut self, counter: &mut NodeCounter) -> Result<Option<Vec<usize>>, ()> {
        if !counter.tick() {
            return Err(());
        }
        let mark = self.trail.len();
        if !self.propagate() {
            self.undo_to(mark);
            return Ok(None);
        }
        if self.included == self.nv - 1 {
            let done = (0..self.nv).all(|v| self.rules[v].admits(self.lo[v], self.k));
            let found = done.then(|| {
                (0..self.ends.len())
                    .filter(|&e| self.status[e] == Status::In)
                    .collect()
            });
            self.undo_to(mark);
            return Ok(found);
        }
        let Some(&e) = self.order.iter().find(|&&e| self.status[e] == Status::Open) else {
            self.undo_to(mark);
            return Ok(None);
        };
        for choice in [Status::In, Status::Out] {
            let inner = self.trail.len();
            self.assign(e, choice);
            let result = self.dfs(counter);
            self.undo_to(inner);
            match result {
                Ok(None) => {}
                other => {
                    self.undo_to(mark);
                    return other;
                }
            }
        }
        self.undo_to(mark);
        Ok(None)
    }

    /// Runs the rules to a fixpoint; false on contradiction.
    fn propagate(&mut self) -> bool {
        let target = 2 * (self.nv - 1);
        loop {
            let mut changed = false;
            let mut uf = UnionFind::new(self.nv);
            for e in 0..self.ends.len() {
                if self.status[e] == Status::In {
                    let (a, b) = self.ends[e];
                    uf.union(a, b);
                }
            }
            for e in 0..self.ends.len() {
                let (a, b) = self.ends[e];
                if self.status[e] == Status::Open && uf.find(a) == uf.find(b) {
                    self.assign(e, Status::Out);
                    changed = true;
                }
            }

            let (mut sum_min, mut sum_max) = (0, 0);
            for v in 0..self.nv {
                let Some((first, last)) = self.rules[v].window(self.lo[v], self.hi[v], self.k)
                else {
                    return false;
                };
                sum_min += first;
                sum_max += last;
                if self.lo[v] == self.hi[v] {
                    continue;
                }
                if first == self.hi[v] {
                    for i in 0..self.incident[v].len() {
                        let e = self.incident[v][i];
                        if self.status[e] != Status::Open {
                            continue;
                        }
                        let (a, b) = self.ends[e];
                        if !uf.union(a, b) {
                            return false;
                        }
                        self.assign(e, Status::In);
                        changed = true;
                    }
                } else if last == self.lo[v] {
                    for i in 0..self.incident[v].len() {
                        let e = self.incident[v][i];
                        if self.status[e] == Status::Open {
                            self.assign(e, Status::Out);
                            changed = true;
                        }
                    }
                }
            }
            if sum_min > target || sum_max < target {
                return false;
            }
            if changed {
                continue;
            }

            match self.open_bridges() {
                None => return false,
                Some(bridges) if bridges.is_empty() => return true,
                Some(bridges) => {
                    for e in bridges {
                        self.assign(e, Status::In);
                    }
                }
            }
        }
    }

    /// Undecided bridges of the graph of non-excluded edges, or `None` when
    /// that graph is disconnected.
    fn open_bridges(&self) -> Option<Vec<usize>> {
        let nv = self.nv;
        let mut disc = vec![usize::MAX; nv];
        let mut low = vec![0; nv];
        let mut time = 0;
        let mut bridges = Vec::new();
        // (vertex, edge used to enter, next incident index)
        let mut stack = vec![(0usize, usize::MAX, 0usize)];
        disc[0] = 0;
        low[0] = 0;
        time += 1;
        while let Some(top) = stack.last_mut() {
            let (x, via, idx) = *top;
            if idx < self.incident[x].len() {
                top.2 += 1;
                let e = self.incident[x][idx];
                if e == via || self.status[e] == Status::Out {
                    continue;
                }
                let (a, b) = self.ends[e];
                let y = if a == x { b } else { a };
                if disc[y] == usize::MAX {
                    disc[y] = time;
                    low[y] = time;
                    time += 1;
                    stack.push((y, e, 0));
                } else {
                    low[x] = low[x].min(disc[y]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[x]);
                    if low[x] > disc[parent] && self.status[via] == Status::Open {
                        bridges.push(via);
                    }
                }
            }
        }
        (time == nv).then_some(bridges)
    }
}
