//! Text formats: graph6 and a plain edge list (`n m` header, then one
//! 0-indexed `u v` pair per line).

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, GraphError};

const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("edge list line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
    #[error("unknown format {0:?} (expected graph6 or edgelist)")]
    UnknownFormat(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

impl FromStr for Format {
    type Err = IoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edgelist" | "edges" => Ok(Format::EdgeList),
            _ => Err(IoError::UnknownFormat(s.to_string())),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Graph6 => "graph6",
            Format::EdgeList => "edgelist",
        })
    }
}

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
        return;
    }
    let words = if n <= 258_047 {
        out.push(126);
        3
    } else {
        out.extend([126, 126]);
        6
    };
    for i in (0..words).rev() {
        out.push(((n >> (6 * i)) & 63) as u8 + 63);
    }
}

/// Standard graph6 line (no header, no newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    push_size(&mut out, n);
    let (mut acc, mut filled) = (0u8, 0);
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                (acc, filled) = (0, 0);
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 line; an optional `>>graph6<<` prefix is accepted.
pub fn decode_graph6(text: &str) -> Result<Graph, IoError> {
    let bad = |m: &str| IoError::Graph6(m.to_string());
    let line = text.trim();
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line).as_bytes();
    if let Some(&c) = line.iter().find(|c| !(63..=126).contains(*c)) {
        return Err(IoError::Graph6(format!("byte {c} outside 63..=126")));
    }
    let six = |bytes: &[u8]| {
        bytes
            .iter()
            .fold(0usize, |acc, &c| (acc << 6) | usize::from(c - 63))
    };
    let (n, body) = match line {
        [] => return Err(bad("empty input")),
        [126, 126, rest @ ..] if rest.len() >= 6 => (six(&rest[..6]), &rest[6..]),
        [126, rest @ ..] if rest.len() >= 3 => (six(&rest[..3]), &rest[3..]),
        [126, ..] => return Err(bad("truncated size field")),
        [c, rest @ ..] => (usize::from(c - 63), rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(IoError::Graph6(format!(
            "expected {} data bytes for {n} vertices, found {}",
            bits.div_ceil(6),
            body.len()
        )));
    }
    let mut b = GraphBuilder::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                b.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(b.build())
}

pub fn encode_edgelist(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.order(), g.size());
    for e in g.edges() {
        s.push_str(&format!("{} {}\n", e.u, e.v));
    }
    s
}

pub fn decode_edgelist(text: &str) -> Result<Graph, IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let nums = |no: usize, l: &str| -> Result<(usize, usize), IoError> {
        let err = |reason: String| IoError::EdgeList {
            line: no + 1,
            reason,
        };
        let fields: Vec<&str> = l.split_whitespace().collect();
        match fields.as_slice() {
            [a, b] => Ok((
                a.parse().map_err(|_| err(format!("not a number: {a:?}")))?,
                b.parse().map_err(|_| err(format!("not a number: {b:?}")))?,
            )),
            _ => Err(err(format!("expected two integers, got {l:?}"))),
        }
    };
    let (no, header) = lines.next().ok_or(IoError::EdgeList {
        line: 1,
        reason: "missing header".into(),
    })?;
    let (n, m) = nums(no, header)?;
    let mut b = GraphBuilder::new(n);
    let mut count = 0;
    for (no, l) in lines {
        let (u, v) = nums(no, l)?;
        b.add_edge(u, v).map_err(|e| IoError::EdgeList {
            line: no + 1,
            reason: e.to_string(),
        })?;
        count += 1;
    }
    if count != m {
        return Err(IoError::EdgeList {
            line: 1,
            reason: format!("header announces {m} edges, found {count}"),
        });
    }
    Ok(b.build())
}

/// Guesses the format: a first line holding one token of graph6 characters
/// (or the graph6 header) is graph6, anything else an edge list.
pub fn sniff_format(text: &str) -> Format {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .unwrap_or("");
    let g6 = first.starts_with(GRAPH6_HEADER)
        || (!first.is_empty() && first.bytes().all(|c| (63..=126).contains(&c)));
    if g6 {
        Format::Graph6
    } else {
        Format::EdgeList
    }
}

/// Parses `text` in `format`, or in the sniffed format when `None`. For
/// graph6 only the first non-empty line is read.
pub fn parse_graph(text: &str, format: Option<Format>) -> Result<Graph, IoError> {
    match format.unwrap_or_else(|| sniff_format(text)) {
        Format::Graph6 => {
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .unwrap_or("");
            decode_graph6(line)
        }
        Format::EdgeList => decode_edgelist(text),
    }
}

pub fn format_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => encode_graph6(g) + "\n",
        Format::EdgeList => encode_edgelist(g),
    }
}

pub fn read_graph(path: &Path, format: Option<Format>) -> Result<Graph, IoError> {
    parse_graph(&std::fs::read_to_string(path)?, format)
}

pub fn write_graph(path: &Path, g: &Graph, format: Format) -> Result<(), IoError> {
    std::fs::write(path, format_graph(g, format))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, FamilySpec};
    use crate::graph::build_graph;
    use proptest::prelude::*;

    #[test]
    fn known_graph6_strings() {
        // reference encodings from the format description
        let k4 = generate(&FamilySpec::Complete(4)).unwrap();
        assert_eq!(encode_graph6(&k4), "C~");
        let p5 = generate(&FamilySpec::Path(5)).unwrap();
        assert_eq!(encode_graph6(&p5), "DhC");
        assert_eq!(encode_graph6(&Graph::empty(0)), "?");
        assert_eq!(decode_graph6(">>graph6<<C~\n").unwrap(), k4);
    }

    #[test]
    fn long_size_field() {
        let g = generate(&FamilySpec::Path(100)).unwrap();
        let s = encode_graph6(&g);
        assert!(s.starts_with("~?@c"));
        assert_eq!(decode_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_malformed() {
        assert!(matches!(decode_graph6(""), Err(IoError::Graph6(_))));
        assert!(matches!(decode_graph6("C"), Err(IoError::Graph6(_))));
        assert!(matches!(decode_graph6("C~~"), Err(IoError::Graph6(_))));
        assert!(matches!(decode_graph6("C 1"), Err(IoError::Graph6(_))));
    }

    #[test]
    fn edgelist_text() {
        let g = build_graph(4, [(0, 1), (2, 3), (1, 2)]).unwrap();
        assert_eq!(encode_edgelist(&g), "4 3\n0 1\n1 2\n2 3\n");
        assert_eq!(decode_edgelist("4 3\n\n0 1\n 2 3 \n1 2\n").unwrap(), g);
        let err = decode_edgelist("3 1\n0 5\n").unwrap_err();
        assert!(matches!(err, IoError::EdgeList { line: 2, .. }), "{err}");
        let err = decode_edgelist("3 2\n0 1\n").unwrap_err();
        assert!(matches!(err, IoError::EdgeList { line: 1, .. }), "{err}");
        assert!(decode_edgelist("3 1\n0 x\n").is_err());
    }

    #[test]
    fn sniffing() {
        assert_eq!(sniff_format("C~\n"), Format::Graph6);
        assert_eq!(sniff_format(">>graph6<<C~"), Format::Graph6);
        assert_eq!(sniff_format("4 3\n0 1\n"), Format::EdgeList);
        let g = generate(&FamilySpec::Dn(10)).unwrap();
        for f in [Format::Graph6, Format::EdgeList] {
            assert_eq!(parse_graph(&format_graph(&g, f), None).unwrap(), g);
        }
        assert_eq!("g6".parse::<Format>().unwrap(), Format::Graph6);
        assert!("dot".parse::<Format>().is_err());
    }

    #[test]
    fn families_round_trip() {
        for spec in [
            "dn:12",
            "ahat:3,2,2",
            "bp:4",
            "gkd:2,4",
            "gkd:3,2",
            "complete:63",
            "bipartite:3,4",
            "cycle:7",
            "path:1",
        ] {
            let g = generate(&spec.parse().unwrap()).unwrap();
            assert_eq!(decode_graph6(&encode_graph6(&g)).unwrap(), g, "{spec}");
            assert_eq!(decode_edgelist(&encode_edgelist(&g)).unwrap(), g, "{spec}");
        }
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..=60).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut b = GraphBuilder::new(n);
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            b.add_edge(i, j).unwrap();
                        }
                        k += 1;
                    }
                }
                b.build()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn random_graphs_round_trip(g in arb_graph()) {
            prop_assert_eq!(&decode_graph6(&encode_graph6(&g)).unwrap(), &g);
            prop_assert_eq!(&decode_edgelist(&encode_edgelist(&g)).unwrap(), &g);
        }
    }
}
