//! Maximum-cardinality matching in general graphs (Edmonds' blossom
//! algorithm with base-array contraction).

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Simple undirected graph with a canonical sorted edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl GeneralGraph {
    /// Builds a graph; each edge is normalised to `(min, max)` and the list
    /// is sorted. Loops and parallel edges are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{u}, {v}}} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "parallel edge {{{}, {}}}",
                w[0].0, w[0].1
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(GeneralGraph {
            n,
            edges: list,
            adj,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }
}

/// A set of vertex-disjoint edges, stored as sorted `(min, max)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut pairs: Vec<_> = pairs
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        pairs.sort_unstable();
        Matching { pairs }
    }

    fn from_mate(mate: &[Option<usize>]) -> Self {
        Matching {
            pairs: mate
                .iter()
                .enumerate()
                .filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| (u, v)))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Partner of every vertex of a graph on `n` vertices.
    pub fn mates(&self, n: usize) -> Vec<Option<usize>> {
        let mut mate = vec![None; n];
        for &(u, v) in &self.pairs {
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        mate
    }

    /// Checks that every pair is an edge of `g` and no vertex repeats.
    pub fn validate(&self, g: &GeneralGraph) -> Result<()> {
        let mut used = vec![false; g.vertex_count()];
        for &(u, v) in &self.pairs {
            if !g.has_edge(u, v) {
                return Err(Error::Precondition(format!(
                    "{{{u}, {v}}} is not an edge of the graph"
                )));
            }
            for w in [u, v] {
                if used[w] {
                    return Err(Error::Precondition(format!("vertex {w} is covered twice")));
                }
                used[w] = true;
            }
        }
        Ok(())
    }
}

/// True iff `m` covers every vertex. Fails if `m` is not a matching of `g`.
pub fn is_perfect(g: &GeneralGraph, m: &Matching) -> Result<bool> {
    m.validate(g)?;
    Ok(2 * m.len() == g.vertex_count())
}

/// A maximum-cardinality matching. Deterministic: a greedy pass over the
/// canonical edge list seeds the matching, then free vertices are grown in
/// ascending order.
pub fn max_matching(g: &GeneralGraph) -> Matching {
    let mut search = Blossom::new(g);
    for &(u, v) in g.edges() {
        if search.mate[u].is_none() && search.mate[v].is_none() {
            search.mate[u] = Some(v);
            search.mate[v] = Some(u);
        }
    }
    for root in 0..g.vertex_count() {
        if search.mate[root].is_none() {
            if let Some(end) = search.find_augmenting_path(root) {
                search.augment(end);
            }
        }
    }
    Matching::from_mate(&search.mate)
}

struct Blossom<'a> {
    g: &'a GeneralGraph,
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a GeneralGraph) -> Self {
        let n = g.vertex_count();
        Blossom {
            g,
            mate: vec![None; n],
            parent: vec![None; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    /// Lowest common ancestor of `a` and `b` in the alternating forest,
    /// measured on blossom bases.
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.vertex_count()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                None => break,
                Some(m) => a = self.parent[m].expect("matched outer vertex has a parent"),
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            let m = self.mate[b].expect("path reaches the root");
            b = self.parent[m].expect("matched outer vertex has a parent");
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v].expect("blossom path alternates");
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("blossom path alternates");
        }
    }

    fn find_augmenting_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.vertex_count();
        self.used.fill(false);
        self.parent.fill(None);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let to_is_outer =
                    to == root || self.mate[to].is_some_and(|m| self.parent[m].is_some());
                if to_is_outer {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.used[m] = true;
                            self.queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }

    fn augment(&mut self, end: usize) {
        let mut v = Some(end);
        while let Some(x) = v {
            let pv = self.parent[x].expect("augmenting path is rooted");
            let next = self.mate[pv];
            self.mate[x] = Some(pv);
            self.mate[pv] = Some(x);
            v = next;
        }
    }
}
