use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hist_forge_core::audit::{run_suite, AuditConfig, Suite, DEFAULT_SEED};
use hist_forge_core::families::{
    random_graph_min_degree, random_graph_sigma2, random_graph_sigma2_diameter3,
};
use hist_forge_core::io::{format_graph, parse_graph, read_graph, write_graph};
use hist_forge_core::mindeg::compute_thresholds;
use hist_forge_core::{
    find_2k_st_mindeg, find_hist_sigma2, generate, recognize_ab, recognize_dn, solve_2k_st, Format,
    Graph, HistOutcome, MindegError, SearchBudget, SearchVerdict, Sigma2, Sigma2Error, TreeEdgeSet,
};

const EXIT_FOUND: u8 = 0;
const EXIT_NONE: u8 = 1;
const EXIT_STUCK: u8 = 2;
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hist-forge",
    version,
    about = "Spanning trees without small degrees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family member or a seeded random graph.
    Gen {
        /// Family spec (`dn:10`, `ahat:3,2,2`, `bp:4`, `gkd:2,2`, `complete:12`,
        /// `bipartite:3,4`, `path:5`, `cycle:6`) or a random spec
        /// (`random-mindeg:N,DELTA`, `random-sigma2:N,TARGET`, `random-diam3:N`).
        spec: String,
        #[arg(long, value_enum, default_value_t = FormatArg::Graph6)]
        format: FormatArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Search for a spanning tree with no degree in [2, k].
    Find {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        /// Input format; sniffed when omitted.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Node limit for the exact solver.
        #[arg(long)]
        budget: Option<u64>,
        /// Also write the tree as an edge list.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Report invariants, thresholds and which existence results apply.
    Check {
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Run a reproducible sweep.
    Audit {
        /// One of thm1, thm2, prop-gkd, thmC-families, oracle-xcheck, claim11.
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Largest order for oracle-xcheck; caps the orders of thm1.
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Graph6,
    Edgelist,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Graph6 => Format::Graph6,
            FormatArg::Edgelist => Format::EdgeList,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Mindeg,
    Sigma2,
    Auto,
}

/// Text for stdout plus the exit code.
struct Outcome {
    text: String,
    code: u8,
}

fn fail(msg: impl std::fmt::Display) -> String {
    format!("error: {msg}")
}

fn budget_from(nodes: Option<u64>) -> SearchBudget {
    nodes.map_or_else(SearchBudget::default, SearchBudget::nodes)
}

fn random_spec(spec: &str, seed: u64) -> Option<Result<Graph, String>> {
    let (name, args) = spec.split_once(':')?;
    let nums: Result<Vec<usize>, _> = args.split(',').map(|a| a.trim().parse::<usize>()).collect();
    let Ok(nums) = nums else {
        return Some(Err(format!("cannot parse random spec {spec:?}")));
    };
    let made = match (name, nums.as_slice()) {
        ("random-mindeg", [n, delta]) => random_graph_min_degree(*n, *delta, seed),
        ("random-sigma2", [n, target]) => random_graph_sigma2(*n, *target, seed),
        ("random-diam3", [n]) => random_graph_sigma2_diameter3(*n, seed),
        (name, _) if name.starts_with("random-") => {
            return Some(Err(format!("cannot parse random spec {spec:?}")))
        }
        _ => return None,
    };
    Some(made.map_err(|e| e.to_string()))
}

fn cmd_gen(spec: &str, format: Format, seed: u64, out: Option<&Path>) -> Result<Outcome, String> {
    let g = match random_spec(spec, seed) {
        Some(made) => made?,
        None => {
            let spec = spec.parse().map_err(|e| format!("{e}"))?;
            generate(&spec).map_err(|e| e.to_string())?
        }
    };
    match out {
        Some(path) => {
            write_graph(path, &g, format).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok(Outcome {
                text: format!(
                    "wrote {} vertices, {} edges to {}\n",
                    g.order(),
                    g.size(),
                    path.display()
                ),
                code: EXIT_FOUND,
            })
        }
        None => Ok(Outcome {
            text: format_graph(&g, format),
            code: EXIT_FOUND,
        }),
    }
}

fn load(input: &Path, format: Option<FormatArg>) -> Result<Graph, String> {
    if input.as_os_str() == "-" {
        let text = std::io::read_to_string(std::io::stdin()).map_err(|e| format!("stdin: {e}"))?;
        return parse_graph(&text, format.map(Into::into)).map_err(|e| format!("stdin: {e}"));
    }
    read_graph(input, format.map(Into::into)).map_err(|e| format!("{}: {e}", input.display()))
}

fn parent_line(tree: &TreeEdgeSet<'_>) -> String {
    tree.parent_array(0)
        .iter()
        .map(|p| p.map_or_else(|| "-1".to_string(), |p| p.to_string()))
        .collect::<Vec<_>>()
        .join(" ")
}

fn sigma2_hypothesis(g: &Graph) -> bool {
    let n = g.order();
    n >= 10 && g.is_connected() && g.sigma2().at_least(n - 2)
}

fn mindeg_hypothesis(g: &Graph, k: usize) -> bool {
    g.is_connected() && compute_thresholds(k, g.order()).hypothesis_holds(g)
}

/// Verdict of one search attempt.
enum Attempt<'g> {
    Found {
        tree: TreeEdgeSet<'g>,
        detail: Vec<(String, String)>,
    },
    None {
        verdict: &'static str,
        detail: Vec<(String, String)>,
    },
    Stuck {
        verdict: &'static str,
        detail: Vec<(String, String)>,
    },
}

fn kv(key: &str, value: impl ToString) -> (String, String) {
    (key.to_string(), value.to_string())
}

fn try_exact(g: &Graph, k: usize, budget: SearchBudget) -> Attempt<'_> {
    match solve_2k_st(g, k, budget) {
        SearchVerdict::Found(tree) => Attempt::Found {
            tree,
            detail: vec![],
        },
        SearchVerdict::NotExists => Attempt::None {
            verdict: "not-exists",
            detail: vec![],
        },
        SearchVerdict::BudgetExceeded(nodes) => Attempt::Stuck {
            verdict: "budget-exceeded",
            detail: vec![kv("nodes", nodes)],
        },
    }
}

fn try_mindeg(g: &Graph, k: usize) -> Result<Attempt<'_>, String> {
    match find_2k_st_mindeg(g, k) {
        Ok(run) => {
            let moves = run.improvement.moves.len();
            let mut detail = vec![
                kv("moves", moves),
                kv("forest_components", run.forest.num_components()),
            ];
            match run.improvement.stuck {
                None => Ok(Attempt::Found {
                    tree: run.improvement.tree,
                    detail,
                }),
                Some(u) => {
                    detail.push(kv("stuck_at", u));
                    Ok(Attempt::Stuck {
                        verdict: "stuck",
                        detail,
                    })
                }
            }
        }
        Err(MindegError::Disconnected) => Ok(Attempt::None {
            verdict: "not-exists",
            detail: vec![],
        }),
        Err(MindegError::InvalidK(_)) => Err("k must be at least 2".into()),
        Err(e) => Ok(Attempt::Stuck {
            verdict: "stuck",
            detail: vec![kv("reason", e)],
        }),
    }
}

fn try_sigma2(g: &Graph) -> Result<Attempt<'_>, String> {
    match find_hist_sigma2(g) {
        Ok(HistOutcome::Found { tree, construction }) => Ok(Attempt::Found {
            tree,
            detail: vec![kv("construction", format!("{construction:?}"))],
        }),
        Ok(HistOutcome::NoHist(reason)) => Ok(Attempt::None {
            verdict: "no-hist",
            detail: vec![kv("reason", format!("{reason:?}"))],
        }),
        Err(Sigma2Error::Disconnected) => Ok(Attempt::None {
            verdict: "not-exists",
            detail: vec![],
        }),
        Err(Sigma2Error::BudgetExceeded(nodes)) => Ok(Attempt::Stuck {
            verdict: "budget-exceeded",
            detail: vec![kv("nodes", nodes)],
        }),
        Err(
            e @ (Sigma2Error::TooSmall(_)
            | Sigma2Error::Sigma2TooSmall { .. }
            | Sigma2Error::WrongDiameter(_)),
        ) => Err(format!("sigma2 mode does not apply: {e}")),
        Err(e) => Ok(Attempt::Stuck {
            verdict: "stuck",
            detail: vec![kv("reason", e)],
        }),
    }
}

fn cmd_find(
    g: &Graph,
    k: usize,
    mode: Mode,
    budget: SearchBudget,
    out: Option<&Path>,
) -> Result<Outcome, String> {
    if k < 2 {
        return Err("k must be at least 2".into());
    }
    if mode == Mode::Sigma2 && k != 2 {
        return Err("sigma2 mode builds trees without degree 2 only; use --k 2".into());
    }
    let (used, attempt) = match mode {
        Mode::Exact => ("exact", try_exact(g, k, budget)),
        Mode::Mindeg => ("mindeg", try_mindeg(g, k)?),
        Mode::Sigma2 => ("sigma2", try_sigma2(g)?),
        Mode::Auto => {
            if k == 2 && sigma2_hypothesis(g) {
                ("sigma2", try_sigma2(g)?)
            } else if mindeg_hypothesis(g, k) {
                match try_mindeg(g, k)? {
                    Attempt::Stuck { .. } => ("exact", try_exact(g, k, budget)),
                    a => ("mindeg", a),
                }
            } else {
                ("exact", try_exact(g, k, budget))
            }
        }
    };
    let mut text = String::new();
    let (verdict, code, detail, tree) = match attempt {
        Attempt::Found { tree, detail } => ("found", EXIT_FOUND, detail, Some(tree)),
        Attempt::None { verdict, detail } => (verdict, EXIT_NONE, detail, None),
        Attempt::Stuck { verdict, detail } => (verdict, EXIT_STUCK, detail, None),
    };
    let _ = writeln!(
        text,
        "verdict={verdict}\nmode={used}\nk={k}\nn={}\nm={}",
        g.order(),
        g.size()
    );
    for (key, value) in &detail {
        let _ = writeln!(text, "{key}={value}");
    }
    match &tree {
        Some(t) => {
            let _ = writeln!(text, "parents={}", parent_line(t));
            let max = t.degrees().iter().copied().max().unwrap_or(0);
            let leaves = t.degrees().iter().filter(|&&d| d == 1).count();
            let _ = writeln!(
                text,
                "found a spanning tree with no degree in [2,{k}]: {leaves} leaves, maximum degree {max}"
            );
            if let Some(path) = out {
                let tg = Graph::from_edges(g.order(), t.edges()).map_err(|e| e.to_string())?;
                write_graph(path, &tg, Format::EdgeList)
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
        }
        None => {
            let _ = writeln!(
                text,
                "no spanning tree with no degree in [2,{k}] ({verdict})"
            );
        }
    }
    Ok(Outcome { text, code })
}

fn cmd_check(g: &Graph) -> Outcome {
    let n = g.order();
    let mut text = String::new();
    let connected = g.is_connected();
    let sigma2 = g.sigma2();
    let diameter = g
        .diameter()
        .map_or_else(|| "inf".to_string(), |d| d.to_string());
    let _ = writeln!(text, "n={n}\nm={}\nconnected={connected}", g.size());
    let _ = writeln!(
        text,
        "min_degree={}\nmax_degree={}",
        g.min_degree(),
        g.max_degree()
    );
    let sigma2_text = match sigma2 {
        Sigma2::Finite(s) => s.to_string(),
        Sigma2::Infinite => "inf".to_string(),
    };
    let _ = writeln!(text, "sigma2={sigma2_text}\ndiameter={diameter}");
    let mut summary = Vec::new();
    for k in 2..=5 {
        let th = compute_thresholds(k, n);
        let holds = mindeg_hypothesis(g, k);
        let _ = writeln!(text, "c_k[k={k}]={:.6}", th.c_k);
        let _ = writeln!(text, "p[k={k}]={:.6}", th.p);
        let _ = writeln!(text, "degree_bound[k={k}]={:.6}", th.degree_bound());
        let _ = writeln!(text, "thm1[k={k}]={holds}");
        summary.push(format!(
            "thm1[k={k}]: {}",
            if holds { "holds" } else { "does not hold" }
        ));
    }
    let thm2 = sigma2_hypothesis(g);
    let dn = recognize_dn(g);
    let _ = writeln!(text, "thm2={thm2}\nis_dn={}", dn.is_some());
    match recognize_ab(g) {
        Some(member) => {
            let _ = writeln!(text, "ab_member={}", member.spec());
        }
        None => {
            let _ = writeln!(text, "ab_member=none");
        }
    }
    summary.push(match (thm2, dn.is_some()) {
        (true, true) => "thm2: hypothesis holds, graph is D_n".to_string(),
        (true, false) => "thm2: hypothesis holds".to_string(),
        (false, _) => "thm2: does not hold".to_string(),
    });
    for line in summary {
        let _ = writeln!(text, "{line}");
    }
    Outcome {
        text,
        code: EXIT_FOUND,
    }
}

fn cmd_audit(suite: &str, cfg: &AuditConfig) -> Result<Outcome, String> {
    let suite: Suite = suite.parse()?;
    let report = run_suite(suite, cfg);
    eprintln!("wall_time_secs={:.3}", report.wall.as_secs_f64());
    let code = if report.passed() {
        EXIT_FOUND
    } else {
        EXIT_NONE
    };
    Ok(Outcome {
        text: report.render(),
        code,
    })
}

fn dispatch(cli: Cli) -> Result<Outcome, String> {
    match cli.command {
        Command::Gen {
            spec,
            format,
            seed,
            out,
        } => cmd_gen(&spec, format.into(), seed, out.as_deref()),
        Command::Find {
            input,
            k,
            mode,
            format,
            budget,
            out,
        } => {
            let g = load(&input, format)?;
            cmd_find(&g, k, mode, budget_from(budget), out.as_deref())
        }
        Command::Check { input, format } => Ok(cmd_check(&load(&input, format)?)),
        Command::Audit {
            suite,
            seed,
            nmax,
            budget,
        } => cmd_audit(
            &suite,
            &AuditConfig {
                seed,
                nmax,
                budget: budget_from(budget),
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_ERROR
            } else {
                EXIT_FOUND
            });
        }
    };
    match dispatch(cli) {
        Ok(Outcome { text, code }) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(msg) => {
            eprintln!("{}", fail(msg));
            ExitCode::from(EXIT_ERROR)
        }
    }
}
