//! Constructive `(2,k)`-factors via a parity gadget and perfect matching,
//! and their lift to Berge-k-factors.
//!
//! Host vertex `v` with degree `d` and degree window `[lo, hi]` (with
//! `hi − lo` even) becomes `d` outer vertices (one per incident host edge),
//! `d − hi` core vertices joined to every outer vertex, and `(hi − lo) / 2`
//! slack pairs `p – q`, each joined to every outer vertex. Each host edge
//! becomes one bridge between the two outer vertices it owns. In a perfect
//! matching the cores absorb `d − hi` outers and each slack pair absorbs
//! zero or two, so the number of bridges matched at `v` ranges over
//! `lo, lo + 2, …, hi`.

use std::fmt;

use crate::error::{Error, Result};
use crate::hypergraph::{BergeFactorCertificate, BergePair, Hypergraph};
use crate::incidence::{BipartiteGraph, FactorSubgraph};
use crate::matching::{is_perfect, max_matching, GeneralGraph};
use crate::parity::DegreeSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetRole {
    /// Stands for host edge `edge` (index into [`BipartiteGraph::edges`]).
    Outer {
        edge: usize,
    },
    Core,
    SlackP,
    SlackQ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetVertex {
    /// Unified host vertex.
    pub host: usize,
    pub role: GadgetRole,
}

#[derive(Debug, Clone)]
pub struct GadgetGraph {
    pub graph: GeneralGraph,
    pub vertices: Vec<GadgetVertex>,
    /// For host edge `i`: the two outer vertices its bridge joins.
    pub bridges: Vec<(usize, usize)>,
    /// Host edges in bridge order, as `(x, y)`.
    pub host_edges: Vec<(usize, usize)>,
    /// Effective `(lo, hi)` degree window of every unified host vertex.
    pub bounds: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub enum Gadget {
    Graph(GadgetGraph),
    /// `y` has fewer than `k` neighbours, so no factor exists.
    Infeasible {
        y: usize,
        degree: usize,
        k: usize,
    },
}

/// Effective degree window of an X-vertex: `{0, 2} ∩ [0, d]`.
fn x_bounds(d: usize) -> (usize, usize) {
    if d >= 2 {
        (0, 2)
    } else {
        (0, 0)
    }
}

pub fn build_gadget(g: &BipartiteGraph, spec: &DegreeSpec) -> Result<Gadget> {
    g.require_no_isolated_x()?;
    let k = spec.k();
    if let Some((y, degree)) = (0..g.y_count())
        .map(|y| (y, g.y_neighbors(y).len()))
        .find(|&(_, d)| d < k)
    {
        return Ok(Gadget::Infeasible { y, degree, k });
    }

    let host_edges: Vec<(usize, usize)> = g.edges().collect();
    let mut offset = Vec::with_capacity(g.x_count());
    let mut acc = 0;
    for x in 0..g.x_count() {
        offset.push(acc);
        acc += g.x_neighbors(x).len();
    }
    let edge_index =
        |x: usize, y: usize| offset[x] + g.x_neighbors(x).binary_search(&y).expect("host edge");

    let n_host = g.vertex_count();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut bridge_ends = vec![(usize::MAX, usize::MAX); host_edges.len()];
    let mut bounds = Vec::with_capacity(n_host);

    for v in 0..n_host {
        let (incident, (lo, hi)): (Vec<usize>, _) = if g.is_x(v) {
            let row = g.x_neighbors(v);
            (
                row.iter().map(|&y| edge_index(v, y)).collect(),
                x_bounds(row.len()),
            )
        } else {
            let y = v - g.x_count();
            (
                g.y_neighbors(y).iter().map(|&x| edge_index(x, y)).collect(),
                (k, k),
            )
        };
        bounds.push((lo, hi));
        let d = incident.len();

        let outers: Vec<usize> = incident
            .iter()
            .map(|&e| {
                let id = vertices.len();
                vertices.push(GadgetVertex {
                    host: v,
                    role: GadgetRole::Outer { edge: e },
                });
                let ends = &mut bridge_ends[e];
                if g.is_x(v) {
                    ends.0 = id;
                } else {
                    ends.1 = id;
                }
                id
            })
            .collect();

        for _ in 0..d - hi {
            let c = vertices.len();
            vertices.push(GadgetVertex {
                host: v,
                role: GadgetRole::Core,
            });
            edges.extend(outers.iter().map(|&o| (o, c)));
        }
        for _ in 0..(hi - lo) / 2 {
            let p = vertices.len();
            vertices.push(GadgetVertex {
                host: v,
                role: GadgetRole::SlackP,
            });
            let q = vertices.len();
            vertices.push(GadgetVertex {
                host: v,
                role: GadgetRole::SlackQ,
            });
            edges.push((p, q));
            edges.extend(outers.iter().flat_map(|&o| [(o, p), (o, q)]));
        }
    }
    edges.extend(bridge_ends.iter().copied());

    Ok(Gadget::Graph(GadgetGraph {
        graph: GeneralGraph::new(vertices.len(), edges)?,
        vertices,
        bridges: bridge_ends,
        host_edges,
        bounds,
    }))
}

/// Sizes recorded while solving, for `--trace` output.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolverTrace {
    pub host_vertices: usize,
    pub host_edges: usize,
    pub gadget_vertices: usize,
    pub gadget_edges: usize,
    pub matching_size: usize,
    pub chosen_edges: usize,
    /// Set when a Y-vertex has degree below `k`.
    pub infeasible_y: Option<usize>,
}

impl fmt::Display for SolverTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "host vertices {} edges {}",
            self.host_vertices, self.host_edges
        )?;
        if let Some(y) = self.infeasible_y {
            return writeln!(f, "infeasible: y{y} has degree below k");
        }
        writeln!(
            f,
            "gadget vertices {} edges {}",
            self.gadget_vertices, self.gadget_edges
        )?;
        writeln!(
            f,
            "matching size {} of {} needed",
            self.matching_size,
            self.gadget_vertices / 2
        )?;
        writeln!(f, "extracted {} host edges", self.chosen_edges)
    }
}

/// Finds a `(2,k)`-factor, or `None` when none exists.
pub fn find_2k_factor(g: &BipartiteGraph, spec: &DegreeSpec) -> Result<Option<FactorSubgraph>> {
    Ok(find_2k_factor_traced(g, spec)?.0)
}

pub fn find_2k_factor_traced(
    g: &BipartiteGraph,
    spec: &DegreeSpec,
) -> Result<(Option<FactorSubgraph>, SolverTrace)> {
    let mut trace = SolverTrace {
        host_vertices: g.vertex_count(),
        host_edges: g.edge_count(),
        ..SolverTrace::default()
    };
    let gadget = match build_gadget(g, spec)? {
        Gadget::Infeasible { y, .. } => {
            trace.infeasible_y = Some(y);
            return Ok((None, trace));
        }
        Gadget::Graph(gadget) => gadget,
    };
    trace.gadget_vertices = gadget.graph.vertex_count();
    trace.gadget_edges = gadget.graph.edges().len();

    let m = max_matching(&gadget.graph);
    trace.matching_size = m.len();
    if !is_perfect(&gadget.graph, &m)? {
        #[cfg(debug_assertions)]
        if g.vertex_count() <= 12 {
            let decision = crate::parity::decide_by_criterion(g, spec)?;
            debug_assert!(
                !decision.exists(),
                "criterion finds a factor the solver missed"
            );
        }
        return Ok((None, trace));
    }

    let mate = m.mates(gadget.graph.vertex_count());
    let mut across = vec![0usize; g.vertex_count()];
    let mut chosen = Vec::new();
    for (i, &(ox, oy)) in gadget.bridges.iter().enumerate() {
        if mate[ox] == Some(oy) {
            let (x, y) = gadget.host_edges[i];
            chosen.push((x, y));
            across[g.x_vertex(x)] += 1;
            across[g.y_vertex(y)] += 1;
        }
    }
    for (v, (&c, &(lo, hi))) in across.iter().zip(&gadget.bounds).enumerate() {
        assert!(
            lo <= c && c <= hi && (c - lo) % 2 == 0,
            "gadget parity law broken at host vertex {v}: {c} not in [{lo}, {hi}] step 2"
        );
    }
    trace.chosen_edges = chosen.len();
    Ok((Some(FactorSubgraph::new(spec.k(), chosen)), trace))
}

/// Why a candidate `(2,k)`-factor was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorViolation {
    Malformed(String),
    NotHostEdge { x: usize, y: usize },
    XDegree { x: usize, degree: usize },
    YDegree { y: usize, degree: usize, k: usize },
}

impl fmt::Display for FactorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorViolation::Malformed(msg) => write!(f, "malformed: {msg}"),
            FactorViolation::NotHostEdge { x, y } => {
                write!(f, "(x{x}, y{y}) is not an edge of the host graph")
            }
            FactorViolation::XDegree { x, degree } => {
                write!(f, "x{x} has degree {degree}, expected 0 or 2")
            }
            FactorViolation::YDegree { y, degree, k } => {
                write!(f, "y{y} has degree {degree}, expected {k}")
            }
        }
    }
}

impl std::error::Error for FactorViolation {}

/// Accepts iff every pair is a host edge, every X-degree is 0 or 2 and
/// every Y-degree is `k`.
pub fn verify_2k_factor(
    g: &BipartiteGraph,
    spec: &DegreeSpec,
    f: &FactorSubgraph,
) -> std::result::Result<(), FactorViolation> {
    if f.k != spec.k() {
        return Err(FactorViolation::Malformed(format!(
            "factor is for k = {}, spec has k = {}",
            f.k,
            spec.k()
        )));
    }
    let mut seen = std::collections::HashSet::new();
    for &(x, y) in &f.chosen {
        if x >= g.x_count() || y >= g.y_count() {
            return Err(FactorViolation::Malformed(format!(
                "pair (x{x}, y{y}) out of range"
            )));
        }
        if !seen.insert((x, y)) {
            return Err(FactorViolation::Malformed(format!(
                "pair (x{x}, y{y}) repeats"
            )));
        }
        if !g.has_edge(x, y) {
            return Err(FactorViolation::NotHostEdge { x, y });
        }
    }
    let (dx, dy) = f.degrees(g.x_count(), g.y_count());
    if let Some((x, &degree)) = dx.iter().enumerate().find(|(_, &d)| d != 0 && d != 2) {
        return Err(FactorViolation::XDegree { x, degree });
    }
    if let Some((y, &degree)) = dy.iter().enumerate().find(|(_, &d)| d != spec.k()) {
        return Err(FactorViolation::YDegree {
            y,
            degree,
            k: spec.k(),
        });
    }
    Ok(())
}

/// Turns a verified `(2,k)`-factor of `I(H)` into a Berge-k-factor
/// certificate: each used hyperedge hosts the pair of its two chosen vertices.
pub fn lift_to_berge(h: &Hypergraph, f: &FactorSubgraph) -> Result<BergeFactorCertificate> {
    let g = BipartiteGraph::incidence(h);
    let spec = DegreeSpec::new(f.k)?;
    verify_2k_factor(&g, &spec, f).map_err(|v| Error::Precondition(v.to_string()))?;
    let mut ends: Vec<Vec<usize>> = vec![Vec::new(); g.x_count()];
    for &(x, y) in &f.chosen {
        ends[x].push(y);
    }
    let pairs = ends
        .iter()
        .enumerate()
        .filter(|(_, e)| e.len() == 2)
        .map(|(x, e)| BergePair::new(x, e[0], e[1]))
        .collect();
    Ok(BergeFactorCertificate::new(f.k, pairs))
}
