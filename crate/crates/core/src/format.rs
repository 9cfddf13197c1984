//! Line-oriented text formats.
//!
//! * `.hg`  hypergraph: `n m`, then one line of vertex indices per edge.
//! * `.big` bipartite graph: `|X| |Y|`, then one line of Y-neighbours per X-vertex.
//! * `.bkf` Berge-factor certificate: `k p`, then `edge u v` per pair.
//! * `.bar` barrier: `delta |A| |B|`, the A line, the B line, then one
//!   `class size v...` line per component.
//!
//! Lines starting with `#` are comments. Serialisation is deterministic.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{BergeFactorCertificate, BergePair, Hypergraph};
use crate::incidence::BipartiteGraph;
use crate::parity::{Barrier, ClassifiedComponent, ComponentClass};

/// Non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('#'))
}

fn numbers<T: std::str::FromStr>(line: usize, s: &str) -> Result<Vec<T>> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<T>()
                .map_err(|_| Error::parse(line, format!("`{t}` is not a valid number")))
        })
        .collect()
}

fn header<'a, const N: usize, T: std::str::FromStr + Copy + Default>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    what: &str,
) -> Result<(usize, [T; N])> {
    let (no, l) = lines
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| Error::parse(1, format!("missing `{what}` header")))?;
    let v: Vec<T> = numbers(no, l)?;
    if v.len() != N {
        return Err(Error::parse(no, format!("expected header `{what}`")));
    }
    let mut out = [T::default(); N];
    out.copy_from_slice(&v);
    Ok((no, out))
}

fn expect_end<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<()> {
    match lines.into_iter().find(|(_, l)| !l.is_empty()) {
        Some((no, _)) => Err(Error::parse(no, "unexpected trailing content")),
        None => Ok(()),
    }
}

fn join(items: impl IntoIterator<Item = usize>) -> String {
    let mut s = String::new();
    for (i, v) in items.into_iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{v}");
    }
    s
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = content_lines(text).filter(|(_, l)| !l.is_empty());
    let (no, [n, m]) = header::<2, usize>(&mut lines, "n m")?;
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let (line, l) = lines
            .next()
            .ok_or_else(|| Error::parse(no, format!("expected {m} edges, found {i}")))?;
        let e: Vec<usize> = numbers(line, l)?;
        edges.push(e);
    }
    expect_end(lines)?;
    Hypergraph::new(n, edges).map_err(|e| Error::parse(no, e.to_string()))
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut s = format!("{} {}\n", h.vertex_count(), h.edge_count());
    for e in h.edges() {
        s.push_str(&join(e.iter().copied()));
        s.push('\n');
    }
    s
}

pub fn parse_bipartite(text: &str) -> Result<BipartiteGraph> {
    let mut lines = content_lines(text);
    let (no, [x, y]) = header::<2, usize>(&mut lines, "|X| |Y|")?;
    let mut rows = Vec::with_capacity(x);
    for i in 0..x {
        let (line, l) = lines
            .next()
            .ok_or_else(|| Error::parse(no, format!("expected {x} rows, found {i}")))?;
        rows.push(numbers(line, l)?);
    }
    expect_end(lines)?;
    BipartiteGraph::new(y, rows).map_err(|e| Error::parse(no, e.to_string()))
}

pub fn write_bipartite(g: &BipartiteGraph) -> String {
    let mut s = format!("{} {}\n", g.x_count(), g.y_count());
    for row in g.x_adjacency() {
        s.push_str(&join(row.iter().copied()));
        s.push('\n');
    }
    s
}

pub fn parse_certificate(text: &str) -> Result<BergeFactorCertificate> {
    let mut lines = content_lines(text).filter(|(_, l)| !l.is_empty());
    let (no, [k, p]) = header::<2, usize>(&mut lines, "k p")?;
    let mut pairs = Vec::with_capacity(p);
    for i in 0..p {
        let (line, l) = lines
            .next()
            .ok_or_else(|| Error::parse(no, format!("expected {p} pairs, found {i}")))?;
        match numbers::<usize>(line, l)?[..] {
            [e, u, v] => pairs.push(BergePair { edge: e, u, v }),
            _ => return Err(Error::parse(line, "expected `edgeIndex u v`")),
        }
    }
    expect_end(lines)?;
    Ok(BergeFactorCertificate { k, pairs })
}

pub fn write_certificate(c: &BergeFactorCertificate) -> String {
    let mut pairs: Vec<BergePair> = c
        .pairs
        .iter()
        .map(|p| BergePair::new(p.edge, p.u, p.v))
        .collect();
    pairs.sort();
    let mut s = format!("{} {}\n", c.k, pairs.len());
    for p in pairs {
        let _ = writeln!(s, "{} {} {}", p.edge, p.u, p.v);
    }
    s
}

pub fn parse_barrier(text: &str) -> Result<Barrier> {
    let mut lines = content_lines(text);
    let (no, [delta, na, nb]) = header::<3, i64>(&mut lines, "delta |A| |B|")?;
    let mut set = |len: i64, name: &str| -> Result<Vec<usize>> {
        let (line, l) = lines
            .next()
            .ok_or_else(|| Error::parse(no, format!("missing {name} line")))?;
        let v: Vec<usize> = numbers(line, l)?;
        if v.len() as i64 != len {
            return Err(Error::parse(
                line,
                format!("{name} has {} entries, header says {len}", v.len()),
            ));
        }
        Ok(v)
    };
    let a = set(na, "A")?;
    let b = set(nb, "B")?;
    let mut components = Vec::new();
    for (line, l) in lines.filter(|(_, l)| !l.is_empty()) {
        let mut toks = l.split_whitespace();
        let class = match toks.next() {
            Some("odd") => ComponentClass::Odd,
            Some("even") => ComponentClass::Even,
            other => {
                return Err(Error::parse(
                    line,
                    format!("unknown component class {other:?}"),
                ))
            }
        };
        let rest: Vec<usize> = numbers(line, &toks.collect::<Vec<_>>().join(" "))?;
        let (&size, vertices) = rest
            .split_first()
            .ok_or_else(|| Error::parse(line, "missing component size"))?;
        if vertices.len() != size {
            return Err(Error::parse(
                line,
                "component size does not match its vertex list",
            ));
        }
        components.push(ClassifiedComponent {
            vertices: vertices.to_vec(),
            class,
        });
    }
    let hw = components
        .iter()
        .filter(|c| c.class == ComponentClass::Odd)
        .count();
    Ok(Barrier {
        a,
        b,
        delta,
        components,
        hw,
    })
}

pub fn write_barrier(bar: &Barrier) -> String {
    let mut s = format!("{} {} {}\n", bar.delta, bar.a.len(), bar.b.len());
    s.push_str(&join(bar.a.iter().copied()));
    s.push('\n');
    s.push_str(&join(bar.b.iter().copied()));
    s.push('\n');
    for c in &bar.components {
        let _ = write!(s, "{} {}", c.class, c.vertices.len());
        for v in &c.vertices {
            let _ = write!(s, " {v}");
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::incidence_graph;
    use crate::parity::{delta, DegreeSpec};

    #[test]
    fn hypergraph_text() {
        let text = "# K4 3-uniform\n4 4\n0 1 2\n0 1 3\n\n0 2 3\n1 2 3\n";
        let h = parse_hypergraph(text).unwrap();
        assert_eq!(h.edge_count(), 4);
        assert_eq!(write_hypergraph(&h), "4 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n");
        assert!(parse_hypergraph("3 2\n0 1\n").is_err());
        assert!(parse_hypergraph("3 1\n0 5\n").is_err());
        assert!(parse_hypergraph("3 1\n0 1\n2 1\n").is_err());
        assert!(parse_hypergraph("3\n").is_err());
        assert!(matches!(
            parse_hypergraph("2 1\n0 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn bipartite_text_keeps_empty_rows() {
        let g = parse_bipartite("3 2\n0 1\n\n1\n").unwrap();
        assert_eq!(g.x_count(), 3);
        assert!(g.x_neighbors(1).is_empty());
        assert_eq!(write_bipartite(&g), "3 2\n0 1\n\n1\n");
    }

    #[test]
    fn certificate_text() {
        let c = parse_certificate("1 2\n3 3 2\n0 0 1\n").unwrap();
        assert_eq!(write_certificate(&c), "1 2\n0 0 1\n3 2 3\n");
        assert!(parse_certificate("1 1\n0 1\n").is_err());
    }

    #[test]
    fn barrier_text() {
        let g = incidence_graph(&Hypergraph::from_graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap());
        let bar = delta(&g, &[3], &[4, 5, 6], &DegreeSpec::new(1).unwrap()).unwrap();
        let text = write_barrier(&bar);
        assert_eq!(text, "-2 1 3\n3\n4 5 6\nodd 1 0\nodd 1 1\nodd 1 2\n");
        assert_eq!(parse_barrier(&text).unwrap(), bar);

        let empty = delta(&g, &[], &[], &DegreeSpec::new(2).unwrap()).unwrap();
        let text = write_barrier(&empty);
        assert!(text.starts_with("0 0 0\n\n\n"));
        assert_eq!(parse_barrier(&text).unwrap(), empty);

        assert!(parse_barrier("-2 1 0\n\n\n").is_err());
        assert!(parse_barrier("0 0 0\n\n\nweird 1 0\n").is_err());
    }
}
