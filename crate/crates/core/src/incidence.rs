//! Bipartite graphs `G[X, Y]` and the incidence graph of a hypergraph.
//!
//! `X` plays the role of hyperedges and `Y` the role of vertices. When a
//! single index space is needed (barriers, components) vertices are
//! numbered `0..|X|` for `X` followed by `|X|..|X|+|Y|` for `Y`.

use rayon::prelude::*;

use crate::bits::{self, Bits};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hypergraph::{Cut, Hypergraph, ToughnessValue};

/// Simple bipartite graph with sorted adjacency on both sides.
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    x_adj: Vec<Vec<usize>>,
    y_adj: Vec<Vec<usize>>,
    /// Y-neighbourhood of each x as a mask, present when `|Y| <= 64`.
    x_rows: Option<Vec<u64>>,
    /// X-neighbourhood of each y as a mask, present when `|X| <= 64`.
    y_rows: Option<Vec<u64>>,
}

impl PartialEq for BipartiteGraph {
    fn eq(&self, other: &Self) -> bool {
        self.x_adj == other.x_adj && self.y_count() == other.y_count()
    }
}

impl Eq for BipartiteGraph {}

impl BipartiteGraph {
    /// Builds a graph from the Y-neighbour list of every X-vertex.
    pub fn new(y_count: usize, x_adj: Vec<Vec<usize>>) -> Result<Self> {
        let mut x_adj = x_adj;
        for (x, row) in x_adj.iter_mut().enumerate() {
            row.sort_unstable();
            if let Some(&y) = row.iter().find(|&&y| y >= y_count) {
                return Err(Error::InvalidBipartite(format!(
                    "x{x} is adjacent to y{y}, but |Y| = {y_count}"
                )));
            }
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidBipartite(format!("x{x} has a parallel edge")));
            }
        }
        let mut y_adj = vec![Vec::new(); y_count];
        for (x, row) in x_adj.iter().enumerate() {
            for &y in row {
                y_adj[y].push(x);
            }
        }
        let x_rows = (y_count <= 64).then(|| {
            x_adj
                .iter()
                .map(|r| bits::mask_of(r.iter().copied()))
                .collect()
        });
        let y_rows = (x_adj.len() <= 64).then(|| {
            y_adj
                .iter()
                .map(|r| bits::mask_of(r.iter().copied()))
                .collect()
        });
        Ok(BipartiteGraph {
            x_adj,
            y_adj,
            x_rows,
            y_rows,
        })
    }

    /// The incidence graph: one X-vertex per hyperedge, one Y-vertex per
    /// hypergraph vertex, adjacency by containment.
    pub fn incidence(h: &Hypergraph) -> Self {
        Self::new(h.vertex_count(), h.edges().to_vec())
            .expect("hypergraph edges are validated on construction")
    }

    pub fn x_count(&self) -> usize {
        self.x_adj.len()
    }

    pub fn y_count(&self) -> usize {
        self.y_adj.len()
    }

    /// `|X| + |Y|`.
    pub fn vertex_count(&self) -> usize {
        self.x_count() + self.y_count()
    }

    pub fn edge_count(&self) -> usize {
        self.x_adj.iter().map(Vec::len).sum()
    }

    pub fn x_neighbors(&self, x: usize) -> &[usize] {
        &self.x_adj[x]
    }

    pub fn y_neighbors(&self, y: usize) -> &[usize] {
        &self.y_adj[y]
    }

    pub fn x_adjacency(&self) -> &[Vec<usize>] {
        &self.x_adj
    }

    /// Y-neighbourhood of `x` as a mask, when `|Y| <= 64`.
    pub fn x_row(&self, x: usize) -> Option<u64> {
        self.x_rows.as_ref().map(|r| r[x])
    }

    /// X-neighbourhood of `y` as a mask, when `|X| <= 64`.
    pub fn y_row(&self, y: usize) -> Option<u64> {
        self.y_rows.as_ref().map(|r| r[y])
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        x < self.x_count() && self.x_adj[x].binary_search(&y).is_ok()
    }

    /// All `(x, y)` edges in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.x_adj
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().map(move |&y| (x, y)))
    }

    /// First X-vertex without neighbours, if any.
    pub fn isolated_x(&self) -> Option<usize> {
        self.x_adj.iter().position(Vec::is_empty)
    }

    pub(crate) fn require_no_isolated_x(&self) -> Result<()> {
        match self.isolated_x() {
            Some(x) => Err(Error::NotHypergraphRepresentable(x)),
            None => Ok(()),
        }
    }

    /// Unified index of X-vertex `x`.
    pub fn x_vertex(&self, x: usize) -> usize {
        x
    }

    /// Unified index of Y-vertex `y`.
    pub fn y_vertex(&self, y: usize) -> usize {
        self.x_count() + y
    }

    pub fn is_x(&self, v: usize) -> bool {
        v < self.x_count()
    }

    /// Neighbours of a unified vertex, in unified indices.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        if self.is_x(v) {
            self.x_adj[v].iter().map(|&y| self.y_vertex(y)).collect()
        } else {
            self.y_adj[v - self.x_count()].clone()
        }
    }

    /// The hypergraph on vertex set `Y` with one edge `N(x)` per `x ∈ X`.
    pub fn to_hypergraph(&self) -> Result<Hypergraph> {
        self.require_no_isolated_x()?;
        Hypergraph::new(self.y_count(), self.x_adj.clone())
    }

    /// Strong deletion `G ⊖ S`: removes `S ⊆ Y` and every X-neighbour of `S`.
    pub fn strong_delete_y(&self, s: &[usize]) -> Result<YDeletion> {
        let mut removed_y = vec![false; self.y_count()];
        for &y in s {
            if y >= self.y_count() {
                return Err(Error::Precondition(format!(
                    "y{y} is not in a graph with |Y| = {}",
                    self.y_count()
                )));
            }
            removed_y[y] = true;
        }
        let mut y_map = vec![None; self.y_count()];
        let mut next = 0;
        for (y, slot) in y_map.iter_mut().enumerate() {
            if !removed_y[y] {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut x_map = vec![None; self.x_count()];
        let mut rows = Vec::new();
        for (x, row) in self.x_adj.iter().enumerate() {
            if row.iter().all(|&y| !removed_y[y]) {
                x_map[x] = Some(rows.len());
                rows.push(row.iter().map(|&y| y_map[y].unwrap()).collect());
            }
        }
        Ok(YDeletion {
            graph: BipartiteGraph::new(next, rows)?,
            x_map,
            y_map,
        })
    }

    /// Connected components as sorted lists of unified vertex indices,
    /// ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                for w in self.neighbors(comp[i]) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Exact Y-toughness with the default budget.
    pub fn y_toughness(&self) -> Result<ToughnessValue> {
        self.y_toughness_with(&Budget::default())
    }

    /// Minimum of `|S| / c(G ⊖ S)` over Y-cutsets `S`, or infinite when no
    /// Y-cutset exists. Witness tie-breaking matches
    /// [`Hypergraph::toughness_with`].
    pub fn y_toughness_with(&self, budget: &Budget) -> Result<ToughnessValue> {
        self.require_no_isolated_x()?;
        Budget::check("|Y|", self.y_count(), budget.y_vertices)?;
        let kernel = YCutKernel::new(self);
        let full = bits::full(self.y_count());
        let best = (0..=full)
            .into_par_iter()
            .fold(
                || None,
                |best: Option<Cut>, s| {
                    let c = kernel.component_count(s);
                    if c < 2 {
                        return best;
                    }
                    let cut = Cut {
                        mask: s,
                        size: u64::from(s.count_ones()),
                        components: c,
                    };
                    Cut::pick(best, Some(cut))
                },
            )
            .reduce(|| None, Cut::pick);
        Ok(Cut::into_value(best))
    }
}

/// Result of [`BipartiteGraph::strong_delete_y`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YDeletion {
    pub graph: BipartiteGraph,
    /// Old X index to new X index; `None` when removed.
    pub x_map: Vec<Option<usize>>,
    /// Old Y index to new Y index; `None` when removed.
    pub y_map: Vec<Option<usize>>,
}

/// Counts components of `G ⊖ S` by flooding through surviving X-vertices.
struct YCutKernel<'a> {
    g: &'a BipartiteGraph,
    x_rows: Vec<u64>,
}

impl<'a> YCutKernel<'a> {
    fn new(g: &'a BipartiteGraph) -> Self {
        YCutKernel {
            g,
            x_rows: g.x_rows.clone().expect("|Y| within mask range"),
        }
    }

    fn component_count(&self, s: u64) -> u64 {
        let mut visited_x = vec![false; self.g.x_count()];
        let mut rest = bits::full(self.g.y_count()) & !s;
        let mut count = 0;
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut reach = 0;
                for y in Bits(frontier) {
                    for &x in self.g.y_neighbors(y) {
                        let row = self.x_rows[x];
                        if !visited_x[x] && row & s == 0 {
                            visited_x[x] = true;
                            reach |= row;
                        }
                    }
                }
                frontier = reach & !comp;
                comp |= reach;
            }
            rest &= !comp;
            count += 1;
        }
        // Surviving X-vertices always reach a surviving Y-vertex.
        debug_assert!(self
            .x_rows
            .iter()
            .enumerate()
            .all(|(x, &row)| row & s != 0 || visited_x[x]));
        count
    }
}

/// A `(2,k)`-factor candidate: a set of `(x, y)` host edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSubgraph {
    pub k: usize,
    /// Sorted `(x, y)` pairs.
    pub chosen: Vec<(usize, usize)>,
}

impl FactorSubgraph {
    pub fn new(k: usize, mut chosen: Vec<(usize, usize)>) -> Self {
        chosen.sort_unstable();
        chosen.dedup();
        FactorSubgraph { k, chosen }
    }

    /// Degrees of every X- and Y-vertex in the chosen subgraph. Pairs out
    /// of range are ignored.
    pub fn degrees(&self, x_count: usize, y_count: usize) -> (Vec<usize>, Vec<usize>) {
        let mut dx = vec![0; x_count];
        let mut dy = vec![0; y_count];
        for &(x, y) in &self.chosen {
            if x < x_count && y < y_count {
                dx[x] += 1;
                dy[y] += 1;
            }
        }
        (dx, dy)
    }
}

/// Free-function form of [`BipartiteGraph::incidence`].
pub fn incidence_graph(h: &Hypergraph) -> BipartiteGraph {
    BipartiteGraph::incidence(h)
}

/// Free-function form of [`BipartiteGraph::to_hypergraph`].
pub fn hypergraph_of(g: &BipartiteGraph) -> Result<Hypergraph> {
    g.to_hypergraph()
}
