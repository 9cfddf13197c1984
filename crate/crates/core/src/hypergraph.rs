//! Hypergraphs with index-identified edges, strong deletion, exact
//! toughness and Berge-factor certificates.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::bits::{self, Bits};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Exact non-negative rational used for toughness values.
pub type Rational = Ratio<u64>;

/// A hypergraph on vertices `0..n` whose edges are identified by their
/// position in the edge list. Identical vertex sets may appear at several
/// positions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph, sorting every edge. Edges must be nonempty, in
    /// range, and free of repeated vertices.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut edges = edges;
        for (i, e) in edges.iter_mut().enumerate() {
            if e.is_empty() {
                return Err(Error::InvalidHypergraph(format!("edge {i} is empty")));
            }
            e.sort_unstable();
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {i} references vertex {v}, but n = {n}"
                )));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {i} repeats a vertex"
                )));
            }
        }
        Ok(Hypergraph { n, edges })
    }

    /// The edgeless hypergraph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Hypergraph {
            n,
            edges: Vec::new(),
        }
    }

    /// 2-uniform hypergraph from a simple edge list.
    pub fn from_graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, edges.iter().map(|&(u, v)| vec![u, v]).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    /// True when every edge has exactly `r` vertices.
    pub fn is_uniform(&self, r: usize) -> bool {
        self.edges.iter().all(|e| e.len() == r)
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut dsu = Dsu::new(self.n);
        for e in &self.edges {
            for w in e.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
        let mut slot = vec![usize::MAX; self.n];
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.n {
            let r = dsu.find(v);
            if slot[r] == usize::MAX {
                slot[r] = parts.len();
                parts.push(Vec::new());
            }
            parts[slot[r]].push(v);
        }
        parts
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Removes the vertices of `s` together with every edge meeting `s`.
    pub fn strong_delete(&self, s: &[usize]) -> Result<StrongDeletion> {
        let mut removed = vec![false; self.n];
        for &v in s {
            if v >= self.n {
                return Err(Error::Precondition(format!(
                    "vertex {v} is not in a hypergraph on {} vertices",
                    self.n
                )));
            }
            removed[v] = true;
        }
        let mut vertex_map = vec![None; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if !removed[v] {
                vertex_map[v] = Some(next);
                next += 1;
            }
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.iter().all(|&v| !removed[v]) {
                edges.push(e.iter().map(|&v| vertex_map[v].unwrap()).collect());
                edge_map.push(i);
            }
        }
        Ok(StrongDeletion {
            hypergraph: Hypergraph { n: next, edges },
            vertex_map,
            edge_map,
        })
    }

    /// Exact toughness with the default enumeration budget.
    pub fn toughness(&self) -> Result<ToughnessValue> {
        self.toughness_with(&Budget::default())
    }

    /// Exact toughness: the minimum of `|S| / c(H − S)` over all `S` with at
    /// least two components left, or infinite when no such `S` exists.
    ///
    /// The witness is the smallest minimizing cutset, ties broken by the
    /// lexicographically least sorted index sequence.
    pub fn toughness_with(&self, budget: &Budget) -> Result<ToughnessValue> {
        if self.n == 0 {
            return Err(Error::Precondition(
                "toughness needs at least one vertex".into(),
            ));
        }
        Budget::check("vertex count", self.n, budget.toughness_vertices)?;
        let kernel = CutKernel::new(self);
        Ok(Cut::into_value(kernel.minimum_ratio()))
    }

    /// True iff `H − S` is connected for every `S` with `|S| ≤ n − 2`.
    pub fn is_complete(&self) -> Result<bool> {
        self.is_complete_with(&Budget::default())
    }

    pub fn is_complete_with(&self, budget: &Budget) -> Result<bool> {
        if self.n <= 1 {
            return Ok(true);
        }
        Budget::check("vertex count", self.n, budget.toughness_vertices)?;
        // |S| ≥ n − 1 leaves at most one vertex, so only cutsets matter.
        let kernel = CutKernel::new(self);
        let full = bits::full(self.n);
        Ok((0..=full)
            .into_par_iter()
            .all(|s| kernel.component_count(s) < 2))
    }

    /// Checks a Berge-k-factor certificate. On rejection, reports the first
    /// violated clause: well-formedness, injectivity, containment, then
    /// regularity.
    pub fn verify_berge_factor(
        &self,
        cert: &BergeFactorCertificate,
    ) -> std::result::Result<(), CertificateViolation> {
        for (i, p) in cert.pairs.iter().enumerate() {
            let reason = if p.edge >= self.edges.len() {
                Some(format!("edge index {} out of range", p.edge))
            } else if p.u >= self.n || p.v >= self.n {
                Some(format!("vertex pair {{{}, {}}} out of range", p.u, p.v))
            } else if p.u == p.v {
                Some(format!("loop at vertex {}", p.u))
            } else {
                None
            };
            if let Some(reason) = reason {
                return Err(CertificateViolation::Malformed { pair: i, reason });
            }
        }

        let mut first_use = vec![usize::MAX; self.edges.len()];
        for (i, p) in cert.pairs.iter().enumerate() {
            if first_use[p.edge] != usize::MAX {
                return Err(CertificateViolation::NotInjective {
                    edge: p.edge,
                    first: first_use[p.edge],
                    second: i,
                });
            }
            first_use[p.edge] = i;
        }

        for (i, p) in cert.pairs.iter().enumerate() {
            let e = &self.edges[p.edge];
            if e.binary_search(&p.u).is_err() || e.binary_search(&p.v).is_err() {
                return Err(CertificateViolation::NotContained {
                    pair: i,
                    edge: p.edge,
                });
            }
        }

        let degrees = cert.degrees(self.n);
        if let Some((vertex, &degree)) = degrees.iter().enumerate().find(|(_, &d)| d != cert.k) {
            return Err(CertificateViolation::NotRegular {
                vertex,
                degree,
                k: cert.k,
            });
        }
        Ok(())
    }
}

/// Result of [`Hypergraph::strong_delete`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongDeletion {
    pub hypergraph: Hypergraph,
    /// Old vertex index to new index; `None` for deleted vertices.
    pub vertex_map: Vec<Option<usize>>,
    /// New edge index to the old edge index it came from.
    pub edge_map: Vec<usize>,
}

/// Exact toughness of a hypergraph or Y-toughness of a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ToughnessValue {
    /// No cutset exists.
    Infinite,
    Finite {
        value: Rational,
        witness: Vec<usize>,
        /// Component count left by the witness.
        components: usize,
    },
}

impl ToughnessValue {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ToughnessValue::Infinite)
    }

    pub fn value(&self) -> Option<Rational> {
        match self {
            ToughnessValue::Infinite => None,
            ToughnessValue::Finite { value, .. } => Some(*value),
        }
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            ToughnessValue::Infinite => None,
            ToughnessValue::Finite { witness, .. } => Some(witness),
        }
    }

    /// Whether the hypergraph is `t`-tough.
    pub fn is_at_least(&self, t: Rational) -> bool {
        match self {
            ToughnessValue::Infinite => true,
            ToughnessValue::Finite { value, .. } => *value >= t,
        }
    }

    /// Same value, ignoring the witness.
    pub fn same_value(&self, other: &ToughnessValue) -> bool {
        self.value() == other.value()
    }
}

impl PartialOrd for ToughnessValue {
    /// Orders by value only; infinite is the top element.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(match (self.value(), other.value()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(a), Some(b)) => a.cmp(&b),
        })
    }
}

impl fmt::Display for ToughnessValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToughnessValue::Infinite => f.write_str("inf"),
            ToughnessValue::Finite { value, .. } => {
                write!(f, "{}/{}", value.numer(), value.denom())
            }
        }
    }
}

/// Best cutset found by an enumeration: `size / components`, with the mask.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Cut {
    pub mask: u64,
    pub size: u64,
    pub components: u64,
}

impl Cut {
    /// Ratio, then size, then lexicographic order of the member list.
    pub fn better_than(&self, other: &Cut) -> bool {
        let lhs = self.size * other.components;
        let rhs = other.size * self.components;
        match lhs.cmp(&rhs) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => match self.size.cmp(&other.size) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => bits::lex_cmp(self.mask, other.mask) == Ordering::Less,
            },
        }
    }

    pub fn pick(a: Option<Cut>, b: Option<Cut>) -> Option<Cut> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(if b.better_than(&a) { b } else { a }),
        }
    }
}

impl Cut {
    pub fn into_value(best: Option<Cut>) -> ToughnessValue {
        match best {
            None => ToughnessValue::Infinite,
            Some(c) => ToughnessValue::Finite {
                value: Rational::new(c.size, c.components),
                witness: bits::to_vec(c.mask),
                components: c.components as usize,
            },
        }
    }
}

/// Mask-based component counter for `H − S`.
struct CutKernel {
    n: usize,
    edge_masks: Vec<u64>,
    incident: Vec<Vec<usize>>,
}

impl CutKernel {
    fn new(h: &Hypergraph) -> Self {
        let edge_masks: Vec<u64> = h
            .edges
            .iter()
            .map(|e| bits::mask_of(e.iter().copied()))
            .collect();
        let mut incident = vec![Vec::new(); h.n];
        for (i, e) in h.edges.iter().enumerate() {
            if e.len() > 1 {
                for &v in e {
                    incident[v].push(i);
                }
            }
        }
        CutKernel {
            n: h.n,
            edge_masks,
            incident,
        }
    }

    fn component_count(&self, s: u64) -> u64 {
        let mut rest = bits::full(self.n) & !s;
        let mut count = 0;
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut reach = 0;
                for u in Bits(frontier) {
                    for &e in &self.incident[u] {
                        let m = self.edge_masks[e];
                        if m & s == 0 {
                            reach |= m;
                        }
                    }
                }
                frontier = reach & !comp;
                comp |= reach;
            }
            rest &= !comp;
            count += 1;
        }
        count
    }

    fn minimum_ratio(&self) -> Option<Cut> {
        let full = bits::full(self.n);
        (0..=full)
            .into_par_iter()
            .fold(
                || None,
                |best: Option<Cut>, s| {
                    let c = self.component_count(s);
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
            .reduce(|| None, Cut::pick)
    }
}

/// One pair of a Berge-factor certificate: graph edge `{u, v}` hosted by
/// hyperedge `edge`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BergePair {
    pub edge: usize,
    pub u: usize,
    pub v: usize,
}

impl BergePair {
    pub fn new(edge: usize, u: usize, v: usize) -> Self {
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        BergePair { edge, u, v }
    }
}

/// A k-regular multigraph on `V(H)` together with the injection that maps
/// each of its edges to a hosting hyperedge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BergeFactorCertificate {
    pub k: usize,
    pub pairs: Vec<BergePair>,
}

impl BergeFactorCertificate {
    pub fn new(k: usize, mut pairs: Vec<BergePair>) -> Self {
        pairs.sort();
        BergeFactorCertificate { k, pairs }
    }

    /// Degree of each vertex in the underlying multigraph. Pairs with
    /// out-of-range endpoints are ignored.
    pub fn degrees(&self, n: usize) -> Vec<usize> {
        let mut deg = vec![0; n];
        for p in &self.pairs {
            if p.u < n && p.v < n {
                deg[p.u] += 1;
                deg[p.v] += 1;
            }
        }
        deg
    }
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateViolation {
    Malformed {
        pair: usize,
        reason: String,
    },
    NotInjective {
        edge: usize,
        first: usize,
        second: usize,
    },
    NotContained {
        pair: usize,
        edge: usize,
    },
    NotRegular {
        vertex: usize,
        degree: usize,
        k: usize,
    },
}

impl fmt::Display for CertificateViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateViolation::Malformed { pair, reason } => {
                write!(f, "malformed certificate: pair {pair}: {reason}")
            }
            CertificateViolation::NotInjective {
                edge,
                first,
                second,
            } => write!(
                f,
                "injection violated: hyperedge {edge} hosts pairs {first} and {second}"
            ),
            CertificateViolation::NotContained { pair, edge } => {
                write!(
                    f,
                    "containment violated: pair {pair} is not inside hyperedge {edge}"
                )
            }
            CertificateViolation::NotRegular { vertex, degree, k } => write!(
                f,
                "regularity violated: vertex {vertex} has degree {degree}, expected {k}"
            ),
        }
    }
}

impl std::error::Error for CertificateViolation {}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}
