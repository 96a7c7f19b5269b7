//! Generators and recognizers for the extremal families, standard graphs,
//! and seeded random graphs under degree constraints.
//!
//! Vertex labelling is fixed per family so fixtures are reproducible:
//!
//! * `Dn(n)`: the clique `K_{n-2}` on `0..n-2`, vertex `0` is the clique end
//!   of the pendant path `0 - (n-2) - (n-1)`.
//! * `Ahat(p_1..p_m)`: hub `0`, then the clique vertices `x_{i,2}` at `1..=m`,
//!   then the `p_i` interior vertices of block `i` (each adjacent to the hub
//!   and to `x_{i,2}`) block after block.
//! * `Bp(p)`: the `Ahat(2, p)` labelling, with the extra edge between the two
//!   interiors `3` and `4` of the first block.
//! * `Gkd(k, d)`: side `U1 = 0..d` with `u_i = i - 1` for `1 <= i <= l`, side
//!   `U2 = d..2d`, then the `l = d/(k-1)` cliques of order `d+1` in turn; the
//!   first vertex of each clique is `v_i`, joined to `u_i`.
//! * `CompleteBipartite(a, b)`: sides `0..a` and `a..a+b`.
//! * `Path(n)` / `Cycle(n)`: consecutive labels along the path or cycle.

use std::fmt;
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, Sigma2, VertexId};

/// Attempts made by [`random_graph_sigma2`] before giving up.
pub const SIGMA2_RETRY_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters {
        family: &'static str,
        reason: String,
    },
    #[error("cannot parse family spec {0:?}")]
    Parse(String),
    #[error("infeasible request: {0}")]
    Infeasible(String),
    #[error("no graph found after {0} attempts")]
    RetryCapExhausted(usize),
}

/// Parameterized description of a family member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Dn(usize),
    Ahat(Vec<usize>),
    Bp(usize),
    Gkd { k: usize, d: usize },
    Complete(usize),
    CompleteBipartite(usize, usize),
    Path(usize),
    Cycle(usize),
}

fn invalid(family: &'static str, reason: impl Into<String>) -> FamilyError {
    FamilyError::InvalidParameters {
        family,
        reason: reason.into(),
    }
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), FamilyError> {
        match self {
            FamilySpec::Dn(n) if *n < 5 => Err(invalid("dn", format!("order {n} < 5"))),
            FamilySpec::Ahat(ps) if ps.is_empty() => {
                Err(invalid("ahat", "needs at least one block"))
            }
            FamilySpec::Ahat(ps) if ps.contains(&0) => {
                Err(invalid("ahat", "block sizes must be >= 1"))
            }
            FamilySpec::Bp(0) => Err(invalid("bp", "p must be >= 1")),
            FamilySpec::Gkd { k, .. } if *k < 2 => Err(invalid("gkd", "k must be >= 2")),
            FamilySpec::Gkd { d: 0, .. } => Err(invalid("gkd", "d must be >= 1")),
            FamilySpec::Gkd { k, d } if d % (k - 1) != 0 => Err(invalid(
                "gkd",
                format!("k-1 = {} does not divide d = {d}", k - 1),
            )),
            FamilySpec::Complete(0) => Err(invalid("complete", "order must be >= 1")),
            FamilySpec::CompleteBipartite(a, b) if a + b == 0 => {
                Err(invalid("bipartite", "empty graph"))
            }
            FamilySpec::Path(0) => Err(invalid("path", "order must be >= 1")),
            FamilySpec::Cycle(n) if *n < 3 => Err(invalid("cycle", "order must be >= 3")),
            _ => Ok(()),
        }
    }

    /// Order of the generated graph (parameters assumed valid).
    pub fn order(&self) -> usize {
        match self {
            FamilySpec::Dn(n)
            | FamilySpec::Complete(n)
            | FamilySpec::Path(n)
            | FamilySpec::Cycle(n) => *n,
            FamilySpec::Ahat(ps) => 1 + ps.len() + ps.iter().sum::<usize>(),
            FamilySpec::Bp(p) => 5 + p,
            FamilySpec::Gkd { k, d } => 2 * d + d * (d + 1) / (k - 1),
            FamilySpec::CompleteBipartite(a, b) => a + b,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| {
            xs.iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            FamilySpec::Dn(n) => write!(f, "dn:{n}"),
            FamilySpec::Ahat(ps) => write!(f, "ahat:{}", join(ps)),
            FamilySpec::Bp(p) => write!(f, "bp:{p}"),
            FamilySpec::Gkd { k, d } => write!(f, "gkd:{k},{d}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::CompleteBipartite(a, b) => write!(f, "bipartite:{a},{b}"),
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// Parses `name:args`, e.g. `dn:10`, `ahat:3,2,2`, `bp:4`, `gkd:2,2`,
    /// `complete:12` (or `k:12`), `bipartite:3,4`, `path:4`, `cycle:5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::Parse(s.to_string());
        let (name, args) = s.trim().split_once(':').ok_or_else(bad)?;
        let nums = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        let one = || match nums.as_slice() {
            [x] => Ok(*x),
            _ => Err(bad()),
        };
        let two = || match nums.as_slice() {
            [x, y] => Ok((*x, *y)),
            _ => Err(bad()),
        };
        let spec = match name.trim().to_ascii_lowercase().as_str() {
            "dn" => FamilySpec::Dn(one()?),
            "ahat" => FamilySpec::Ahat(nums.clone()),
            "bp" => FamilySpec::Bp(one()?),
            "gkd" => {
                let (k, d) = two()?;
                FamilySpec::Gkd { k, d }
            }
            "complete" | "k" => FamilySpec::Complete(one()?),
            "bipartite" | "kab" => {
                let (a, b) = two()?;
                FamilySpec::CompleteBipartite(a, b)
            }
            "path" => FamilySpec::Path(one()?),
            "cycle" => FamilySpec::Cycle(one()?),
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn add(b: &mut GraphBuilder, u: VertexId, v: VertexId) {
    b.add_edge(u, v)
        .expect("family construction stays in range");
}

fn add_clique(b: &mut GraphBuilder, vertices: impl IntoIterator<Item = VertexId>) {
    let vs: Vec<_> = vertices.into_iter().collect();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            add(b, u, v);
        }
    }
}

fn ahat_builder(ps: &[usize], extra: usize) -> GraphBuilder {
    let m = ps.len();
    let n = 1 + m + ps.iter().sum::<usize>();
    let mut b = GraphBuilder::new(n + extra);
    add_clique(&mut b, 1..=m);
    let mut next = m + 1;
    for (i, &p) in ps.iter().enumerate() {
        for _ in 0..p {
            add(&mut b, 0, next);
            add(&mut b, i + 1, next);
            next += 1;
        }
    }
    b
}

pub fn generate(spec: &FamilySpec) -> Result<Graph, FamilyError> {
    spec.validate()?;
    let n = spec.order();
    let mut b = GraphBuilder::new(n);
    match spec {
        FamilySpec::Dn(n) => {
            add_clique(&mut b, 0..n - 2);
            add(&mut b, 0, n - 2);
            add(&mut b, n - 2, n - 1);
        }
        FamilySpec::Ahat(ps) => b = ahat_builder(ps, 0),
        FamilySpec::Bp(p) => {
            b = ahat_builder(&[2, *p], 0);
            add(&mut b, 3, 4);
        }
        FamilySpec::Gkd { k, d } => {
            let (d, l) = (*d, d / (k - 1));
            for u in 0..d {
                for v in d..2 * d {
                    add(&mut b, u, v);
                }
            }
            for i in 0..l {
                let start = 2 * d + i * (d + 1);
                add_clique(&mut b, start..start + d + 1);
                add(&mut b, i, start);
            }
        }
        FamilySpec::Complete(n) => add_clique(&mut b, 0..*n),
        FamilySpec::CompleteBipartite(a, c) => {
            for u in 0..*a {
                for v in *a..a + c {
                    add(&mut b, u, v);
                }
            }
        }
        FamilySpec::Path(n) => {
            for i in 1..*n {
                add(&mut b, i - 1, i);
            }
        }
        FamilySpec::Cycle(n) => {
            for i in 0..*n {
                add(&mut b, i, (i + 1) % n);
            }
        }
    }
    Ok(b.build())
}

/// Returns `n` iff `g` is isomorphic to `D_n` (`n >= 5`).
pub fn recognize_dn(g: &Graph) -> Option<usize> {
    let n = g.order();
    if n < 5 || g.size() != (n - 2) * (n - 3) / 2 + 2 {
        return None;
    }
    let mut pendants = g.vertices().filter(|&v| g.degree(v) == 1);
    let pendant = pendants.next()?;
    if pendants.next().is_some() {
        return None;
    }
    let middle = g.neighbors(pendant)[0];
    if g.degree(middle) != 2 {
        return None;
    }
    let attach = *g.neighbors(middle).iter().find(|&&x| x != pendant)?;
    if g.degree(attach) != n - 2 {
        return None;
    }
    let clique: Vec<_> = g
        .vertices()
        .filter(|&v| v != pendant && v != middle)
        .collect();
    let is_clique = clique
        .iter()
        .enumerate()
        .all(|(i, &a)| clique[i + 1..].iter().all(|&b| g.has_edge(a, b)));
    is_clique.then_some(n)
}

/// Membership in the diameter-two exceptional families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AbMember {
    /// Block sizes, sorted ascending.
    Ahat(Vec<usize>),
    Bp(usize),
}

impl AbMember {
    pub fn spec(&self) -> FamilySpec {
        match self {
            AbMember::Ahat(ps) => FamilySpec::Ahat(ps.clone()),
            AbMember::Bp(p) => FamilySpec::Bp(*p),
        }
    }
}

/// Decides whether `g` is some `Ahat(p_1..p_m)` or `B_p`.
///
/// Every member has a hub adjacent to a degree-2 vertex, so only neighbors
/// of degree-2 vertices are tried as hubs; for each candidate the rest of
/// the structure is forced.
pub fn recognize_ab(g: &Graph) -> Option<AbMember> {
    let n = g.order();
    if n < 3 || !g.is_connected() {
        return None;
    }
    let mut candidates: Vec<VertexId> = g
        .vertices()
        .filter(|&v| g.degree(v) == 2)
        .flat_map(|v| g.neighbors(v).iter().copied())
        .collect();
    candidates.sort_unstable_by_key(|&h| (std::cmp::Reverse(g.degree(h)), h));
    candidates.dedup();
    candidates
        .into_iter()
        .find_map(|hub| decode_ahat(g, hub).or_else(|| decode_bp(g, hub)))
}

fn decode_ahat(g: &Graph, hub: VertexId) -> Option<AbMember> {
    let far: Vec<VertexId> = g
        .vertices()
        .filter(|&v| v != hub && !g.has_edge(hub, v))
        .collect();
    if far.is_empty() {
        return None;
    }
    for (i, &a) in far.iter().enumerate() {
        if !far[i + 1..].iter().all(|&b| g.has_edge(a, b)) {
            return None;
        }
    }
    let mut sizes = vec![0usize; far.len()];
    for &y in g.neighbors(hub) {
        if g.degree(y) != 2 {
            return None;
        }
        let other = g.neighbors(y).iter().copied().find(|&x| x != hub)?;
        sizes[far.iter().position(|&x| x == other)?] += 1;
    }
    let m = far.len();
    for (idx, &x) in far.iter().enumerate() {
        if sizes[idx] == 0 || g.degree(x) != sizes[idx] + m - 1 {
            return None;
        }
    }
    sizes.sort_unstable();
    Some(AbMember::Ahat(sizes))
}

fn decode_bp(g: &Graph, hub: VertexId) -> Option<AbMember> {
    let far: Vec<VertexId> = g
        .vertices()
        .filter(|&v| v != hub && !g.has_edge(hub, v))
        .collect();
    let [a, b] = far.as_slice() else { return None };
    if !g.has_edge(*a, *b) || g.degree(hub) < 3 {
        return None;
    }
    let side = |x: VertexId| -> Vec<VertexId> {
        g.neighbors(x)
            .iter()
            .copied()
            .filter(|&y| g.has_edge(hub, y))
            .collect()
    };
    for (x1, x2) in [(*a, *b), (*b, *a)] {
        let pair = side(x1);
        let rest = side(x2);
        let [y, y2] = pair.as_slice() else { continue };
        let ok = g.has_edge(*y, *y2)
            && g.degree(*y) == 3
            && g.degree(*y2) == 3
            && g.degree(x1) == 3
            && !rest.is_empty()
            && g.degree(x2) == rest.len() + 1
            && rest.iter().all(|&z| g.degree(z) == 2)
            && g.degree(hub) == rest.len() + 2
            && g.size() == 2 * rest.len() + 6;
        if ok {
            return Some(AbMember::Bp(rest.len()));
        }
    }
    None
}

/// Symmetric adjacency matrix used while sampling.
struct Sampler {
    n: usize,
    adj: Vec<bool>,
    degree: Vec<usize>,
}

impl Sampler {
    fn new(n: usize) -> Self {
        Sampler {
            n,
            adj: vec![false; n * n],
            degree: vec![0; n],
        }
    }

    fn has(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u * self.n + v]
    }

    fn add(&mut self, u: VertexId, v: VertexId) {
        if u != v && !self.has(u, v) {
            self.adj[u * self.n + v] = true;
            self.adj[v * self.n + u] = true;
            self.degree[u] += 1;
            self.degree[v] += 1;
        }
    }

    fn remove(&mut self, u: VertexId, v: VertexId) {
        if self.has(u, v) {
            self.adj[u * self.n + v] = false;
            self.adj[v * self.n + u] = false;
            self.degree[u] -= 1;
            self.degree[v] -= 1;
        }
    }

    fn gnp(&mut self, p: f64, rng: &mut ChaCha8Rng) {
        for u in 0..self.n {
            for v in u + 1..self.n {
                if rng.random_bool(p) {
                    self.add(u, v);
                }
            }
        }
    }

    fn graph(&self) -> Graph {
        let mut b = GraphBuilder::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has(u, v) {
                    add(&mut b, u, v);
                }
            }
        }
        b.build()
    }

    /// Minimum degree-sum over non-adjacent pairs, `None` if complete.
    fn sigma2(&self) -> Option<usize> {
        let mut best = None;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has(u, v) {
                    let s = self.degree[u] + self.degree[v];
                    best = Some(best.map_or(s, |b: usize| b.min(s)));
                }
            }
        }
        best
    }
}

/// Connected graph with minimum degree at least `delta_target`, seeded.
///
/// Samples `G(n, p)` at mean degree `delta_target`, tops every deficient
/// vertex up with random non-neighbors, then links any leftover components.
pub fn random_graph_min_degree(
    n: usize,
    delta_target: usize,
    seed: u64,
) -> Result<Graph, FamilyError> {
    if n == 0 || delta_target >= n.max(2) {
        return Err(FamilyError::Infeasible(format!(
            "minimum degree {delta_target} on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Sampler::new(n);
    if n > 1 {
        s.gnp((delta_target as f64 / (n - 1) as f64).min(1.0), &mut rng);
    }
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(&mut rng);
    for &v in &order {
        if s.degree[v] >= delta_target {
            continue;
        }
        let mut pool: Vec<VertexId> = (0..n).filter(|&w| w != v && !s.has(v, w)).collect();
        pool.shuffle(&mut rng);
        let need = delta_target - s.degree[v];
        for &w in &pool[..need] {
            s.add(v, w);
        }
    }
    let g = s.graph();
    let (count, label) = g.component_labels();
    if count <= 1 {
        return Ok(g);
    }
    let mut reps = vec![usize::MAX; count];
    for v in (0..n).rev() {
        reps[label[v]] = v;
    }
    for pair in reps.windows(2) {
        s.add(pair[0], pair[1]);
    }
    Ok(s.graph())
}

/// Connected graph with `sigma2 >= sigma2_target`, seeded.
///
/// Each attempt samples a dense `G(n, p)`, then repairs it by joining
/// randomly chosen violating non-adjacent pairs until none is left.
/// Disconnected results are rejected; after [`SIGMA2_RETRY_CAP`] attempts
/// the generator gives up.
pub fn random_graph_sigma2(
    n: usize,
    sigma2_target: usize,
    seed: u64,
) -> Result<Graph, FamilyError> {
    if n < 3 {
        return Err(FamilyError::Infeasible(format!("order {n} < 3")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SIGMA2_RETRY_CAP {
        let mut s = Sampler::new(n);
        let p = rng.random_range(0.35..0.9);
        s.gnp(p, &mut rng);
        loop {
            let violating: Vec<(VertexId, VertexId)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| !s.has(u, v) && s.degree[u] + s.degree[v] < sigma2_target)
                .collect();
            let Some(&(u, v)) = violating.choose(&mut rng) else {
                break;
            };
            s.add(u, v);
        }
        let g = s.graph();
        if g.is_connected() && g.sigma2().at_least(sigma2_target) {
            return Ok(g);
        }
    }
    Err(FamilyError::RetryCapExhausted(SIGMA2_RETRY_CAP))
}

/// Random diameter-3 graph with `sigma2 = n - 2` that is not `D_n`.
///
/// Vertices `0` and `n - 1` are the far pair; the rest split into their
/// neighborhoods, which start out complete (with all cross edges). Edges
/// among the split vertices are then deleted in random order whenever the
/// degree-sum bound and connectivity survive.
pub fn random_graph_sigma2_diameter3(n: usize, seed: u64) -> Result<Graph, FamilyError> {
    if n < 6 {
        return Err(FamilyError::Infeasible(format!("order {n} < 6")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SIGMA2_RETRY_CAP {
        let near0 = rng.random_range(1..=n - 3);
        let mut s = Sampler::new(n);
        let (a, z) = (0, n - 1);
        for x in 1..=near0 {
            s.add(a, x);
        }
        for y in near0 + 1..n - 1 {
            s.add(z, y);
        }
        let mut inner: Vec<(VertexId, VertexId)> = (1..n - 1)
            .flat_map(|u| (u + 1..n - 1).map(move |v| (u, v)))
            .collect();
        for &(u, v) in &inner {
            s.add(u, v);
        }
        inner.shuffle(&mut rng);
        let keep_bias = rng.random_range(0.0..0.8);
        for &(u, v) in &inner {
            if rng.random_bool(keep_bias) {
                continue;
            }
            s.remove(u, v);
            let ok = s.sigma2().is_some_and(|x| x >= n - 2) && s.graph().is_connected();
            if !ok {
                s.add(u, v);
            }
        }
        let g = s.graph();
        if g.diameter() == Some(3)
            && g.sigma2() >= Sigma2::Finite(n - 2)
            && recognize_dn(&g).is_none()
        {
            return Ok(g);
        }
    }
    Err(FamilyError::RetryCapExhausted(SIGMA2_RETRY_CAP))
}
