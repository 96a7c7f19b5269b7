//! Reproducible sweeps that check the constructions and the exact solver
//! against each other and against the known extremal families.
//!
//! Every instance carries a key (used for sorting, so reports do not depend
//! on scheduling) and a description precise enough to regenerate it.
//! Instances run on a rayon pool whose size comes from `HIST_FORGE_THREADS`
//! when set.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::families::{
    generate, random_graph_min_degree, random_graph_sigma2, random_graph_sigma2_diameter3,
    recognize_ab, recognize_dn, AbMember, FamilySpec,
};
use crate::graph::{Graph, GraphBuilder, Sigma2};
use crate::mindeg::{compute_thresholds, find_2k_st_mindeg, MoveKind};
use crate::sigma2::{find_hist_sigma2, HistOutcome, NoHistReason};
use crate::solver::{oracle_enumerate, solve_2k_st, SearchBudget, SearchVerdict};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_260_101;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "HIST_FORGE_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    MinDegree,
    Sigma2,
    LowerBound,
    Diameter2Families,
    OracleXcheck,
    ThresholdGrid,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::MinDegree,
        Suite::Sigma2,
        Suite::LowerBound,
        Suite::Diameter2Families,
        Suite::OracleXcheck,
        Suite::ThresholdGrid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MinDegree => "thm1",
            Suite::Sigma2 => "thm2",
            Suite::LowerBound => "prop-gkd",
            Suite::Diameter2Families => "thmC-families",
            Suite::OracleXcheck => "oracle-xcheck",
            Suite::ThresholdGrid => "claim11",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                format!("unknown suite {s:?} (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditConfig {
    pub seed: u64,
    /// Largest order for the oracle cross-check; caps the random orders of
    /// the minimum-degree sweep.
    pub nmax: Option<usize>,
    pub budget: SearchBudget,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            seed: DEFAULT_SEED,
            nmax: None,
            budget: SearchBudget::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditFailure {
    pub key: String,
    pub reproduce: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub suite: String,
    pub instances: usize,
    pub successes: usize,
    pub failures: Vec<AuditFailure>,
    pub wall: Duration,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.instances > 0
    }

    /// `key=value` lines; wall time is left out so output is reproducible.
    pub fn render(&self) -> String {
        let mut s = format!(
            "suite={}\ninstances={}\nsuccesses={}\nfailures={}\n",
            self.suite,
            self.instances,
            self.successes,
            self.failures.len()
        );
        for f in &self.failures {
            s.push_str(&format!(
                "failure key={} reproduce={} reason={}\n",
                f.key, f.reproduce, f.reason
            ));
        }
        s.push_str(&format!(
            "status={}\n",
            if self.passed() { "pass" } else { "fail" }
        ));
        s
    }

    fn merge(suite: &str, parts: Vec<AuditReport>) -> AuditReport {
        let mut out = AuditReport {
            suite: suite.to_string(),
            instances: 0,
            successes: 0,
            failures: Vec::new(),
            wall: Duration::ZERO,
        };
        for p in parts {
            out.instances += p.instances;
            out.successes += p.successes;
            out.failures.extend(p.failures);
            out.wall += p.wall;
        }
        out
    }
}

/// One unit of work: a sortable key, how to rebuild it, and the check.
struct Instance<'a> {
    key: String,
    reproduce: String,
    check: Box<dyn Fn() -> Result<(), String> + Send + Sync + 'a>,
}

impl<'a> Instance<'a> {
    fn new(
        key: String,
        reproduce: String,
        check: impl Fn() -> Result<(), String> + Send + Sync + 'a,
    ) -> Self {
        Instance {
            key,
            reproduce,
            check: Box::new(check),
        }
    }
}

fn thread_pool() -> rayon::ThreadPool {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

fn run(suite: &str, instances: Vec<Instance<'_>>) -> AuditReport {
    let started = Instant::now();
    let mut results: Vec<(String, String, Result<(), String>)> = thread_pool().install(|| {
        instances
            .into_par_iter()
            .map(|inst| (inst.key, inst.reproduce, (inst.check)()))
            .collect()
    });
    results.sort_by(|a, b| a.0.cmp(&b.0));
    let instances = results.len();
    let failures: Vec<AuditFailure> = results
        .into_iter()
        .filter_map(|(key, reproduce, r)| {
            r.err().map(|reason| AuditFailure {
                key,
                reproduce,
                reason,
            })
        })
        .collect();
    AuditReport {
        suite: suite.to_string(),
        instances,
        successes: instances - failures.len(),
        failures,
        wall: started.elapsed(),
    }
}

fn ensure(cond: bool, reason: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(reason())
    }
}

/// Relative gap `(hi - lo) / |hi|`.
fn rel_gap(hi: f64, lo: f64) -> f64 {
    (hi - lo) / hi.abs()
}

/// Orders used for the threshold grid of `k`: the first 20 perfect-square
/// multiples above `c_k^2`, so `sqrt(n) > c_k` by construction.
pub fn threshold_grid_orders(k: usize) -> Vec<usize> {
    let c = compute_thresholds(k, 1).c_k;
    let base = (c * c).floor() as usize + 1;
    (1..=20).map(|j| base * j * j).collect()
}

/// `c_k sqrt(n) > p > k + 2` with relative margin above `1e-9` for
/// `k = 2..=8`.
pub fn threshold_grid() -> AuditReport {
    let mut instances = Vec::new();
    for k in 2..=8 {
        for n in threshold_grid_orders(k) {
            instances.push(Instance::new(
                format!("k={k} n={n:08}"),
                format!("thresholds(k={k}, n={n})"),
                move || {
                    let th = compute_thresholds(k, n);
                    ensure(th.in_regime, || format!("sqrt({n}) <= c_k = {}", th.c_k))?;
                    let upper = rel_gap(th.degree_bound(), th.p);
                    let lower = rel_gap(th.p, (k + 2) as f64);
                    ensure(upper > 1e-9 && lower > 1e-9, || {
                        format!(
                            "c_k sqrt(n) = {}, p = {}, k + 2 = {}",
                            th.degree_bound(),
                            th.p,
                            k + 2
                        )
                    })
                },
            ));
        }
    }
    run("claim11", instances)
}

/// `(n, k, count)` configurations of the minimum-degree sweep.
pub const MINDEG_SWEEP: [(usize, usize, usize); 2] = [(2000, 2, 20), (500, 3, 10)];

/// Random graphs with `delta >= ceil(c_k sqrt(n))`: the pipeline must finish
/// with a valid tree, every move must lower the class vector without raising
/// `mu`, and the intermediate forest and tree must respect their bounds.
pub fn mindeg_sweep(cfg: &AuditConfig) -> AuditReport {
    let mut instances = Vec::new();
    for (cfg_index, &(n, k, count)) in MINDEG_SWEEP.iter().enumerate() {
        let n = cfg.nmax.map_or(n, |cap| n.min(cap.max(2)));
        let delta = compute_thresholds(k, n).degree_bound().ceil() as usize;
        for i in 0..count {
            let seed = cfg.seed.wrapping_add((cfg_index * 1000 + i) as u64);
            instances.push(Instance::new(
                format!("k={k} n={n:05} i={i:03}"),
                format!("random_graph_min_degree(n={n}, delta={delta}, seed={seed}) k={k}"),
                move || mindeg_instance(n, k, delta, seed),
            ));
        }
    }
    run("thm1", instances)
}

fn mindeg_instance(n: usize, k: usize, delta: usize, seed: u64) -> Result<(), String> {
    if delta >= n {
        return Err(format!("delta {delta} impossible at order {n}"));
    }
    let g = random_graph_min_degree(n, delta, seed).map_err(|e| e.to_string())?;
    ensure(g.min_degree() >= delta, || {
        format!("generator returned delta {}", g.min_degree())
    })?;
    let run = find_2k_st_mindeg(&g, k).map_err(|e| e.to_string())?;
    let th = run.thresholds;
    let hypothesis = th.hypothesis_holds(&g);
    if let Some(u) = run.improvement.stuck {
        return Err(format!("stuck at vertex {u}"));
    }
    ensure(run.improvement.tree.is_2k_st(k) == Ok(true), || {
        "result is not a valid tree".into()
    })?;
    for (i, m) in run.improvement.moves.iter().enumerate() {
        ensure(m.after.counts < m.before.counts, || {
            format!("move {i} did not lower the class vector")
        })?;
        ensure(m.after.mu <= m.before.mu, || format!("move {i} raised mu"))?;
        if let MoveKind::Shift { .. } = m.kind {
            ensure(m.after.mu < m.before.mu, || format!("shift {i} kept mu"))?;
        }
    }
    if hypothesis {
        let f = &run.forest;
        ensure(f.num_components() as f64 <= n as f64 / th.p, || {
            "forest has too many components".into()
        })?;
        ensure((f.stragglers().len() as f64) < th.straggler_bound(), || {
            "too many uncovered vertices".into()
        })?;
        ensure(th.is_admissible(run.initial.class_vector(k).mu), || {
            "initial tree is not admissible".into()
        })?;
    }
    Ok(())
}

/// `D_n` for `n` in `orders`: `sigma2 = n - 2`, the exact solver finds no
/// tree, and the constructive route recognizes it.
pub fn dn_sharpness(orders: std::ops::RangeInclusive<usize>, budget: SearchBudget) -> AuditReport {
    let instances = orders
        .map(|n| {
            Instance::new(format!("dn n={n:03}"), format!("dn:{n}"), move || {
                let g = generate(&FamilySpec::Dn(n)).map_err(|e| e.to_string())?;
                ensure(g.sigma2() == Sigma2::Finite(n - 2), || {
                    format!("sigma2 = {}", g.sigma2())
                })?;
                let v = solve_2k_st(&g, 2, budget);
                ensure(v == SearchVerdict::NotExists, || {
                    format!("exact solver: {}", v.kind())
                })?;
                let out = find_hist_sigma2(&g).map_err(|e| e.to_string())?;
                ensure(out == HistOutcome::NoHist(NoHistReason::IsDn), || {
                    "not recognized as D_n".into()
                })
            })
        })
        .collect();
    run("dn-sharpness", instances)
}

/// Number of random instances in the `sigma2 >= n - 2` sweep.
pub const SIGMA2_SWEEP_SIZE: usize = 500;
/// Every `SIGMA2_CROSSCHECK_STRIDE`-th instance is also solved exactly.
pub const SIGMA2_CROSSCHECK_STRIDE: usize = 10;

/// Random graphs with `n` in `10..=14` and `sigma2 >= n - 2`, alternating a
/// dense generator and a diameter-3 generator, `D_n` skipped.
pub fn sigma2_sweep(cfg: &AuditConfig) -> AuditReport {
    let mut instances = Vec::new();
    let mut attempt = 0u64;
    while instances.len() < SIGMA2_SWEEP_SIZE {
        let i = instances.len();
        let n = 10 + i % 5;
        let seed = cfg.seed.wrapping_add(attempt);
        attempt += 1;
        let (name, made) = if i % 2 == 0 {
            ("random_graph_sigma2", random_graph_sigma2(n, n - 2, seed))
        } else {
            (
                "random_graph_sigma2_diameter3",
                random_graph_sigma2_diameter3(n, seed),
            )
        };
        let reproduce = format!("{name}(n={n}, seed={seed})");
        let key = format!("sigma2 i={i:04}");
        let g = match made {
            Ok(g) if recognize_dn(&g).is_some() => continue,
            Ok(g) => g,
            Err(e) => {
                let reason = e.to_string();
                instances.push(Instance::new(key, reproduce, move || Err(reason.clone())));
                continue;
            }
        };
        let cross = i % SIGMA2_CROSSCHECK_STRIDE == 0;
        let budget = cfg.budget;
        instances.push(Instance::new(key, reproduce, move || {
            ensure(g.sigma2().at_least(n - 2), || {
                format!("sigma2 = {}", g.sigma2())
            })?;
            let out = find_hist_sigma2(&g).map_err(|e| e.to_string())?;
            let tree = out.tree().ok_or_else(|| format!("no tree: {out:?}"))?;
            ensure(tree.is_2k_st(2) == Ok(true), || {
                "tree has a degree-2 vertex".into()
            })?;
            if cross {
                let v = solve_2k_st(&g, 2, budget);
                ensure(v.is_found(), || {
                    format!("exact solver disagrees: {}", v.kind())
                })?;
            }
            Ok(())
        }));
    }
    run("sigma2-sweep", instances)
}

/// `(k, d)` pairs of the lower-bound grid.
pub const GKD_GRID: [(usize, usize); 5] = [(2, 2), (2, 4), (3, 2), (3, 4), (4, 3)];

/// The lower-bound graphs have minimum degree `d` and no `[2, k]` tree.
pub fn gkd_sweep(budget: SearchBudget) -> AuditReport {
    let instances = GKD_GRID
        .iter()
        .map(|&(k, d)| {
            let spec = FamilySpec::Gkd { k, d };
            Instance::new(format!("gkd k={k} d={d}"), spec.to_string(), move || {
                let g = generate(&spec).map_err(|e| e.to_string())?;
                ensure(g.order() == spec.order(), || "order mismatch".into())?;
                ensure(g.min_degree() == d, || {
                    format!("delta = {}", g.min_degree())
                })?;
                let v = solve_2k_st(&g, k, budget);
                ensure(v == SearchVerdict::NotExists, || {
                    format!("exact solver: {}", v.kind())
                })
            })
        })
        .collect();
    run("prop-gkd", instances)
}

/// All non-increasing sequences of positive integers summing to `total`.
fn partitions(total: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(cap)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, &mut Vec::new(), &mut out);
    out
}

/// Every `Ahat(p_1..p_m)` and `B_p` of an order in `orders`, up to
/// reordering the blocks.
pub fn ab_specs(orders: std::ops::RangeInclusive<usize>) -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    for n in orders {
        // n = 1 + m + sum p_i, i.e. the parts p_i + 1 sum to n - 1
        for parts in partitions(n - 1) {
            if parts.iter().all(|&q| q >= 2) {
                let mut ps: Vec<usize> = parts.iter().map(|q| q - 1).collect();
                ps.sort_unstable();
                specs.push(FamilySpec::Ahat(ps));
            }
        }
        if n >= 6 {
            specs.push(FamilySpec::Bp(n - 5));
        }
    }
    specs
}

fn relabel(g: &Graph, seed: u64) -> Graph {
    let mut perm: Vec<usize> = (0..g.order()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in (1..perm.len()).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let mut b = GraphBuilder::new(g.order());
    for e in g.edges() {
        b.add_edge(perm[e.u], perm[e.v])
            .expect("permutation stays in range");
    }
    b.build()
}

/// The diameter-two exceptions of orders 10 to 13 have no tree without
/// degree 2, and are recognized again after a random relabelling.
pub fn ab_sweep(cfg: &AuditConfig) -> AuditReport {
    let budget = cfg.budget;
    let instances = ab_specs(10..=13)
        .into_iter()
        .enumerate()
        .map(|(i, spec)| {
            let seed = cfg.seed.wrapping_add(i as u64);
            Instance::new(
                format!("ab n={:02} {spec}", spec.order()),
                format!("{spec} relabel_seed={seed}"),
                move || {
                    let g = generate(&spec).map_err(|e| e.to_string())?;
                    let v = solve_2k_st(&g, 2, budget);
                    ensure(v == SearchVerdict::NotExists, || {
                        format!("exact solver: {}", v.kind())
                    })?;
                    let expected = match &spec {
                        FamilySpec::Ahat(ps) => AbMember::Ahat(ps.clone()),
                        FamilySpec::Bp(p) => AbMember::Bp(*p),
                        other => return Err(format!("unexpected spec {other}")),
                    };
                    for (label, h) in [
                        ("as generated", g.clone()),
                        ("relabelled", relabel(&g, seed)),
                    ] {
                        let got = recognize_ab(&h);
                        ensure(got.as_ref() == Some(&expected), || {
                            format!("{label}: recognized {got:?}")
                        })?;
                    }
                    Ok(())
                },
            )
        })
        .collect();
    run("thmC-families", instances)
}

/// Labeled graphs enumerated per order before switching to sampling.
pub const ORACLE_ENUMERATION_CAP: u64 = 50_000;

fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let mut b = GraphBuilder::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits >> k & 1 == 1 {
                b.add_edge(i, j).expect("in range");
            }
            k += 1;
        }
    }
    b.build()
}

/// Connected labeled graphs of order `n`: all of them when there are at
/// most [`ORACLE_ENUMERATION_CAP`] labeled graphs, otherwise the connected
/// ones among that many uniform samples.
pub fn oracle_graphs(n: usize, seed: u64) -> Vec<(u64, Graph)> {
    let pairs = n * n.saturating_sub(1) / 2;
    let total = 1u64 << pairs;
    let codes: Vec<u64> = if total <= ORACLE_ENUMERATION_CAP {
        (0..total).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
        (0..ORACLE_ENUMERATION_CAP)
            .map(|_| rng.random_range(0..total))
            .collect()
    };
    codes
        .into_iter()
        .map(|c| (c, graph_from_bits(n, c)))
        .filter(|(_, g)| g.is_connected())
        .collect()
}

/// The exact solver and the spanning-tree enumeration agree on every
/// connected graph of order up to `nmax` (default 7), for `k = 2, 3`.
pub fn oracle_xcheck(cfg: &AuditConfig) -> AuditReport {
    let nmax = cfg.nmax.unwrap_or(7).min(crate::solver::ORACLE_MAX_ORDER);
    let budget = cfg.budget;
    let mut instances = Vec::new();
    for n in 1..=nmax {
        let graphs = oracle_graphs(n, cfg.seed);
        // one instance per chunk keeps the report small
        for (chunk_no, chunk) in graphs.chunks(500).enumerate() {
            let chunk: Vec<(u64, Graph)> = chunk.to_vec();
            let first = chunk[0].0;
            instances.push(Instance::new(
                format!("oracle n={n} chunk={chunk_no:04}"),
                format!("n={n} edge-bit codes from {first} (seed={})", cfg.seed),
                move || {
                    for (code, g) in &chunk {
                        for k in [2, 3] {
                            let fast = solve_2k_st(g, k, budget);
                            let slow = oracle_enumerate(g, k).map_err(|e| e.to_string())?;
                            ensure(
                                fast.is_found() == slow.is_found()
                                    && fast.kind() != "budget-exceeded",
                                || {
                                    format!(
                                        "code {code} k={k}: solver {} oracle {}",
                                        fast.kind(),
                                        slow.kind()
                                    )
                                },
                            )?;
                        }
                    }
                    Ok(())
                },
            ));
        }
    }
    run("oracle-xcheck", instances)
}

/// Number of graphs the oracle cross-check covers for `n` (for reporting).
pub fn oracle_graph_count(n: usize, seed: u64) -> usize {
    oracle_graphs(n, seed).len()
}

pub fn run_suite(suite: Suite, cfg: &AuditConfig) -> AuditReport {
    let started = Instant::now();
    let mut report = match suite {
        Suite::MinDegree => mindeg_sweep(cfg),
        Suite::Sigma2 => AuditReport::merge(
            "thm2",
            vec![dn_sharpness(10..=14, cfg.budget), sigma2_sweep(cfg)],
        ),
        Suite::LowerBound => gkd_sweep(cfg.budget),
        Suite::Diameter2Families => ab_sweep(cfg),
        Suite::OracleXcheck => oracle_xcheck(cfg),
        Suite::ThresholdGrid => threshold_grid(),
    };
    report.wall = started.elapsed();
    report
}
