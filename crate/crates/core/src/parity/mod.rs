//! Partial parity `(g,f)`-factor criterion specialised to `(2,k)`-factors
//! of a bipartite graph: deficiency `δ(A,B)`, odd/even components,
//! barriers, biased barriers and the structure checks they satisfy.
//!
//! All vertex sets here use the unified index space of
//! [`BipartiteGraph`]: X-vertices first, then Y-vertices.

mod scan;
mod structure;

pub use scan::{
    criterion_scan, decide_by_criterion, decide_by_criterion_with, find_biased_barrier,
    find_biased_barrier_with, CriterionScan, Decision,
};
pub use structure::{
    check_barrier_structure, check_barrier_structure_with, Clause, StructureReport,
    StructureWitness,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::incidence::BipartiteGraph;

/// Degree bounds for a `(2,k)`-factor: `f(x) = 2, g(x) = 0` on `X`
/// (with parity enforced on `W = X`) and `f(y) = g(y) = k` on `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeSpec {
    k: usize,
}

impl DegreeSpec {
    pub const MAX_K: usize = 8;

    pub fn new(k: usize) -> Result<Self> {
        if (1..=Self::MAX_K).contains(&k) {
            Ok(DegreeSpec { k })
        } else {
            Err(Error::InvalidSpec(format!(
                "k = {k} is outside 1..={}",
                Self::MAX_K
            )))
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Upper bound `f(v)` for a unified vertex.
    pub fn upper(&self, g: &BipartiteGraph, v: usize) -> i64 {
        if g.is_x(v) {
            2
        } else {
            self.k as i64
        }
    }

    /// Lower bound `g(v)` for a unified vertex.
    pub fn lower(&self, g: &BipartiteGraph, v: usize) -> i64 {
        if g.is_x(v) {
            0
        } else {
            self.k as i64
        }
    }

    /// Whether `k·|Y|` is even.
    pub fn parity_holds(&self, g: &BipartiteGraph) -> bool {
        (self.k * g.y_count()).is_multiple_of(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentClass {
    Odd,
    Even,
}

impl fmt::Display for ComponentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentClass::Odd => "odd",
            ComponentClass::Even => "even",
        })
    }
}

/// A component of `G − (A ∪ B)` with its parity class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedComponent {
    /// Sorted unified vertex indices.
    pub vertices: Vec<usize>,
    pub class: ComponentClass,
}

/// A fully evaluated pair `(A, B)`. It is a barrier when `delta < 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Barrier {
    /// Sorted unified vertex indices.
    pub a: Vec<usize>,
    /// Sorted unified vertex indices, disjoint from `a`.
    pub b: Vec<usize>,
    pub delta: i64,
    /// Components of `G − (A ∪ B)`, ordered by smallest member.
    pub components: Vec<ClassifiedComponent>,
    /// Number of odd components.
    pub hw: usize,
}

impl Barrier {
    pub fn is_barrier(&self) -> bool {
        self.delta < 0
    }

    pub fn odd_components(&self) -> impl Iterator<Item = &ClassifiedComponent> {
        self.components
            .iter()
            .filter(|c| c.class == ComponentClass::Odd)
    }
}

/// Membership of every unified vertex in `A`, `B` or neither.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    A,
    B,
    Rest,
}

fn sides(g: &BipartiteGraph, a: &[usize], b: &[usize]) -> Result<Vec<Side>> {
    let n = g.vertex_count();
    let mut side = vec![Side::Rest; n];
    for (set, tag) in [(a, Side::A), (b, Side::B)] {
        for &v in set {
            if v >= n {
                return Err(Error::Precondition(format!(
                    "vertex {v} is out of range for a graph on {n} vertices"
                )));
            }
            if side[v] != Side::Rest {
                return Err(Error::Precondition(format!(
                    "A and B must be disjoint sets of distinct vertices; {v} repeats"
                )));
            }
            side[v] = tag;
        }
    }
    Ok(side)
}

/// Components of `G − (A ∪ B)` by breadth-first search.
fn rest_components(g: &BipartiteGraph, side: &[Side]) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] || side[start] != Side::Rest {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            for w in g.neighbors(comp[i]) {
                if !seen[w] && side[w] == Side::Rest {
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

fn class_of(g: &BipartiteGraph, side: &[Side], spec: &DegreeSpec, d: &[usize]) -> ComponentClass {
    let f_sum: i64 = d.iter().map(|&v| spec.upper(g, v)).sum();
    let e_db = d
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| side[w] == Side::B)
                .count() as i64
        })
        .sum::<i64>();
    if (f_sum + e_db) % 2 == 1 {
        ComponentClass::Odd
    } else {
        ComponentClass::Even
    }
}

/// Classifies a component `d` of `G − (A ∪ B)` as odd or even by the parity
/// of `Σ_{v∈D} f(v) + e_G(D, B)`.
pub fn classify_component(
    g: &BipartiteGraph,
    a: &[usize],
    b: &[usize],
    spec: &DegreeSpec,
    d: &[usize],
) -> Result<ComponentClass> {
    let side = sides(g, a, b)?;
    let mut d = d.to_vec();
    d.sort_unstable();
    let is_component = d
        .first()
        .is_some_and(|&v| v < side.len() && side[v] == Side::Rest)
        && rest_components(g, &side).contains(&d);
    if !is_component {
        return Err(Error::Precondition(format!(
            "{d:?} is not a component of G − (A ∪ B)"
        )));
    }
    Ok(class_of(g, &side, spec, &d))
}

/// Evaluates `δ(A, B) = Σ_A f − Σ_B g + Σ_{v∈B} d_{G−A}(v) − h_W(A, B)` from
/// scratch, returning the populated record.
pub fn delta(g: &BipartiteGraph, a: &[usize], b: &[usize], spec: &DegreeSpec) -> Result<Barrier> {
    let side = sides(g, a, b)?;
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();

    let f_a: i64 = a.iter().map(|&v| spec.upper(g, v)).sum();
    let g_b: i64 = b.iter().map(|&v| spec.lower(g, v)).sum();
    let d_b: i64 = b
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| side[w] != Side::A)
                .count() as i64
        })
        .sum();

    let components: Vec<ClassifiedComponent> = rest_components(g, &side)
        .into_iter()
        .map(|vertices| {
            let class = class_of(g, &side, spec, &vertices);
            ClassifiedComponent { vertices, class }
        })
        .collect();
    let hw = components
        .iter()
        .filter(|c| c.class == ComponentClass::Odd)
        .count();

    Ok(Barrier {
        a,
        b,
        delta: f_a - g_b + d_b - hw as i64,
        components,
        hw,
    })
}

/// `h(Z) = |N(Z) ∩ B|` plus the number of odd components with an edge to `Z`,
/// for `Z ⊆ A ∩ X`.
pub fn h_of_z(g: &BipartiteGraph, barrier: &Barrier, z: &[usize]) -> Result<usize> {
    for &v in z {
        if !g.is_x(v) || barrier.a.binary_search(&v).is_err() {
            return Err(Error::Precondition(format!("{v} is not in A ∩ X")));
        }
    }
    let n = g.vertex_count();
    let mut near = vec![false; n];
    for &v in z {
        for w in g.neighbors(v) {
            near[w] = true;
        }
    }
    let in_b = barrier.b.iter().filter(|&&v| near[v]).count();
    let odd = barrier
        .odd_components()
        .filter(|c| c.vertices.iter().any(|&v| near[v]))
        .count();
    Ok(in_b + odd)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;
    use crate::incidence::incidence_graph;

    /// Incidence graph of the star K_{1,3}: x0..x2 are the edges {0,i},
    /// y-vertices are unified 3 (centre), 4, 5, 6.
    pub fn star_incidence() -> BipartiteGraph {
        incidence_graph(&Hypergraph::from_graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap())
    }

    #[test]
    fn spec_bounds() {
        assert!(DegreeSpec::new(0).is_err());
        assert!(DegreeSpec::new(9).is_err());
        let g = star_incidence();
        let s = DegreeSpec::new(3).unwrap();
        assert_eq!((s.upper(&g, 0), s.lower(&g, 0)), (2, 0));
        assert_eq!((s.upper(&g, 3), s.lower(&g, 3)), (3, 3));
        assert!(!s.parity_holds(&BipartiteGraph::new(3, vec![]).unwrap()));
        assert!(s.parity_holds(&g));
    }

    #[test]
    fn classify_examples() {
        let g = star_incidence();
        let k1 = DegreeSpec::new(1).unwrap();
        // A = {centre}, B = leaves: each x_i is a singleton with one edge to B.
        for x in 0..3 {
            assert_eq!(
                classify_component(&g, &[3], &[4, 5, 6], &k1, &[x]).unwrap(),
                ComponentClass::Odd
            );
        }
        // singleton y with no B-neighbour and k even
        let k2 = DegreeSpec::new(2).unwrap();
        assert_eq!(
            classify_component(&g, &[0, 1, 2], &[], &k2, &[4]).unwrap(),
            ComponentClass::Even
        );
        // x0 alone with one edge into B = {y1}
        assert_eq!(
            classify_component(&g, &[3], &[4], &k1, &[0]).unwrap(),
            ComponentClass::Odd
        );
        assert!(classify_component(&g, &[3], &[4, 5, 6], &k1, &[0, 1]).is_err());
        assert!(classify_component(&g, &[3], &[4, 5, 6], &k1, &[3]).is_err());
    }

    #[test]
    fn delta_examples() {
        let g = star_incidence();
        let k1 = DegreeSpec::new(1).unwrap();
        let bar = delta(&g, &[3], &[4, 5, 6], &k1).unwrap();
        assert_eq!(bar.delta, 1 - 3 + 3 - 3);
        assert_eq!(bar.hw, 3);
        assert!(bar.is_barrier());

        let single = incidence_graph(&Hypergraph::new(2, vec![vec![0, 1]]).unwrap());
        let bar = delta(&single, &[], &[], &k1).unwrap();
        assert_eq!(bar.delta, 0);
        assert_eq!(bar.components.len(), 1);
        assert_eq!(bar.components[0].class, ComponentClass::Even);

        // all-even components: δ(∅,∅) = 0
        let c4 =
            incidence_graph(&Hypergraph::from_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap());
        assert_eq!(delta(&c4, &[], &[], &k1).unwrap().delta, 0);

        assert!(delta(&g, &[3], &[3], &k1).is_err());
        assert!(delta(&g, &[30], &[], &k1).is_err());
    }

    #[test]
    fn h_of_z_examples() {
        let g = star_incidence();
        let k1 = DegreeSpec::new(1).unwrap();
        let bar = delta(&g, &[3], &[4, 5, 6], &k1).unwrap();
        assert_eq!(h_of_z(&g, &bar, &[]).unwrap(), 0);
        assert!(h_of_z(&g, &bar, &[3]).is_err());
        assert!(h_of_z(&g, &bar, &[0]).is_err());
    }

    /// Ten-vertex instance, k = 1. X: x0 = {y0,y1,y2}, x1 = {y0,y3},
    /// x2 = {y3,y4}, x3 = {y4,y5}; unified x_i = i, y_j = 4 + j.
    /// With A = {x0}, B = {y0} the rest splits into {y1} (f = 1, odd),
    /// {y2} (odd) and {x1,y3,x2,y4,x3,y5} (f = 9, e(D,B) = 1, even).
    /// So h({x0}) = |{y0}| + 2 = 3.
    #[test]
    fn h_of_z_synthetic() {
        let g = BipartiteGraph::new(6, vec![vec![0, 1, 2], vec![0, 3], vec![3, 4], vec![4, 5]])
            .unwrap();
        let k1 = DegreeSpec::new(1).unwrap();
        let bar = delta(&g, &[0], &[4], &k1).unwrap();
        let classes: Vec<_> = bar
            .components
            .iter()
            .map(|c| (c.vertices.clone(), c.class))
            .collect();
        assert_eq!(
            classes,
            vec![
                (vec![1, 2, 3, 7, 8, 9], ComponentClass::Even),
                (vec![5], ComponentClass::Odd),
                (vec![6], ComponentClass::Odd),
            ]
        );
        assert_eq!(h_of_z(&g, &bar, &[0]).unwrap(), 3);
    }
}
