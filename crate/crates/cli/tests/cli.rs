use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn hist_forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hist-forge"))
        .args(args)
        .env("HIST_FORGE_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen(dir: &TempDir, spec: &str, extra: &[&str]) -> String {
    let path = dir.path().join(spec.replace([':', ','], "_"));
    let path = path.to_str().unwrap().to_string();
    let mut args = vec!["gen", spec, "-o", &path];
    args.extend_from_slice(extra);
    let o = hist_forge(&args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    path
}

fn header(path: &str) -> (usize, usize) {
    let text = std::fs::read_to_string(Path::new(path)).unwrap();
    let mut it = text
        .lines()
        .next()
        .unwrap()
        .split_whitespace()
        .map(|x| x.parse().unwrap());
    (it.next().unwrap(), it.next().unwrap())
}

#[test]
fn gen_writes_family_members() {
    let dir = TempDir::new().unwrap();
    assert_eq!(
        header(&gen(&dir, "dn:10", &["--format", "edgelist"])),
        (10, 30)
    );
    assert_eq!(
        header(&gen(&dir, "ahat:1,1", &["--format", "edgelist"])),
        (5, 5)
    );
    let gkd = gen(&dir, "gkd:2,2", &[]);
    let check = stdout(&hist_forge(&["check", &gkd]));
    assert!(check.contains("n=10\n"), "{check}");
    assert!(check.contains("min_degree=2\n"), "{check}");
    let o = hist_forge(&["gen", "nonsense:3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn gen_to_stdout_is_graph6() {
    let o = hist_forge(&["gen", "complete:4"]);
    assert_eq!(stdout(&o), "C~\n");
}

#[test]
fn find_exit_codes() {
    let dir = TempDir::new().unwrap();
    let dn = gen(&dir, "dn:10", &[]);
    let o = hist_forge(&["find", &dn, "--k", "2", "--mode", "exact"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict=not-exists"));

    let k12 = gen(&dir, "complete:12", &[]);
    let tree_path = dir.path().join("tree.txt");
    let o = hist_forge(&[
        "find",
        &k12,
        "--mode",
        "auto",
        "-o",
        tree_path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("verdict=found"), "{out}");
    // rooted at 0, a star centered at 0 has every other parent equal to 0
    let parents = out
        .lines()
        .find_map(|l| l.strip_prefix("parents="))
        .unwrap();
    let parents: Vec<i64> = parents.split(' ').map(|p| p.parse().unwrap()).collect();
    assert_eq!(parents[0], -1);
    assert!(parents[1..].iter().all(|&p| p == 0), "{parents:?}");
    assert!(out.contains("maximum degree 11"));
    assert_eq!(header(tree_path.to_str().unwrap()), (12, 11));

    let gkd = gen(&dir, "gkd:2,2", &[]);
    assert_eq!(
        hist_forge(&["find", &gkd, "--k", "2", "--mode", "exact"])
            .status
            .code(),
        Some(1)
    );

    let dn_sigma = hist_forge(&["find", &dn, "--mode", "sigma2"]);
    assert_eq!(dn_sigma.status.code(), Some(1));
    assert!(stdout(&dn_sigma).contains("verdict=no-hist"));
}

#[test]
fn find_budget_and_errors() {
    let dir = TempDir::new().unwrap();
    let gkd = gen(&dir, "gkd:3,4", &[]);
    let o = hist_forge(&["find", &gkd, "--k", "3", "--mode", "exact", "--budget", "1"]);
    assert!(
        matches!(o.status.code(), Some(1) | Some(2)),
        "{:?}",
        o.status
    );
    assert_eq!(
        hist_forge(&["find", "/nonexistent/graph.g6"]).status.code(),
        Some(3)
    );
    let junk = dir.path().join("junk.txt");
    std::fs::write(&junk, "3 2\n0 1\n").unwrap();
    assert_eq!(
        hist_forge(&["find", junk.to_str().unwrap()]).status.code(),
        Some(3)
    );
    assert_eq!(
        hist_forge(&["find", "--mode", "fast", "x"]).status.code(),
        Some(3)
    );
}

#[test]
fn find_mindeg_on_dense_graph() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "random-mindeg:400,80", &["--seed", "7"]);
    let o = hist_forge(&["find", &g, "--k", "2", "--mode", "mindeg"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("mode=mindeg"));
}

#[test]
fn check_reports_hypotheses() {
    let dir = TempDir::new().unwrap();
    let k100 = stdout(&hist_forge(&["check", &gen(&dir, "complete:100", &[])]));
    assert!(k100.contains("thm1[k=2]: holds"), "{k100}");
    assert!(k100.contains("c_k[k=2]=4.000000"));
    let dn = stdout(&hist_forge(&["check", &gen(&dir, "dn:10", &[])]));
    assert!(dn.contains("thm2: hypothesis holds, graph is D_n"), "{dn}");
    assert!(dn.contains("sigma2=8\n"));
    let c10 = stdout(&hist_forge(&["check", &gen(&dir, "cycle:10", &[])]));
    assert!(
        !c10.contains(": holds") && !c10.contains("hypothesis holds"),
        "{c10}"
    );
    let ab = stdout(&hist_forge(&["check", &gen(&dir, "ahat:3,2,2", &[])]));
    assert!(ab.contains("ab_member=ahat:2,2,3"), "{ab}");
}

#[test]
fn audits_are_deterministic() {
    for args in [
        &["audit", "claim11"][..],
        &["audit", "prop-gkd"],
        &["audit", "oracle-xcheck", "--nmax", "5"],
    ] {
        let a = hist_forge(args);
        let b = hist_forge(args);
        assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
        assert_eq!(a.stdout, b.stdout);
        assert!(stdout(&a).contains("status=pass"));
    }
    let t = hist_forge(&["audit", "thm2", "--seed", "99"]);
    assert_eq!(t.status.code(), Some(0));
    assert_eq!(
        t.stdout,
        hist_forge(&["audit", "thm2", "--seed", "99"]).stdout
    );
    assert_eq!(hist_forge(&["audit", "thm9"]).status.code(), Some(3));
}
