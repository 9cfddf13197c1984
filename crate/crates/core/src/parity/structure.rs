//! Structural properties of a biased barrier for the `(2,k)` degree spec.

use std::fmt;

use super::{delta, h_of_z, Barrier, ComponentClass, DegreeSpec};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::incidence::BipartiteGraph;

/// Counterexample for a failed clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureWitness {
    /// An X-vertex inside `B`.
    XInB { vertex: usize },
    /// A vertex of component `component` with `edges_to_b` edges into `B`.
    TooManyEdgesToB {
        component: usize,
        vertex: usize,
        edges_to_b: usize,
    },
    /// `Z ⊆ A ∩ X` with `N(Z) ∩ B = ∅` and `h(Z) < 2|Z|`.
    SmallH { z: Vec<usize>, h: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Clause {
    Pass,
    Fail(StructureWitness),
}

impl Clause {
    pub fn passed(&self) -> bool {
        matches!(self, Clause::Pass)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clause::Pass => f.write_str("pass"),
            Clause::Fail(StructureWitness::XInB { vertex }) => {
                write!(f, "fail: X-vertex {vertex} lies in B")
            }
            Clause::Fail(StructureWitness::TooManyEdgesToB {
                component,
                vertex,
                edges_to_b,
            }) => write!(
                f,
                "fail: vertex {vertex} of component {component} has {edges_to_b} edges to B"
            ),
            Clause::Fail(StructureWitness::SmallH { z, h }) => {
                write!(f, "fail: Z = {z:?} has h(Z) = {h} < {}", 2 * z.len())
            }
        }
    }
}

/// Result of [`check_barrier_structure`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    /// `B ⊆ Y`.
    pub b_in_y: Clause,
    /// Vertices of odd components have at most one edge to `B`.
    pub odd_components: Clause,
    /// Vertices of even components have no edge to `B`.
    pub even_components: Clause,
    /// `h(Z) ≥ 2|Z|` for every `Z ⊆ A ∩ X` with `N(Z) ∩ B = ∅`.
    pub neighbourhoods: Clause,
    /// Number of sets `Z` examined for the last clause.
    pub z_checked: u64,
    /// Set when only singletons and pairs were examined.
    pub z_truncated: bool,
}

impl StructureReport {
    pub fn all_pass(&self) -> bool {
        self.clauses().iter().all(|c| c.passed())
    }

    pub fn clauses(&self) -> [&Clause; 4] {
        [
            &self.b_in_y,
            &self.odd_components,
            &self.even_components,
            &self.neighbourhoods,
        ]
    }
}

pub fn check_barrier_structure(
    g: &BipartiteGraph,
    biased: &Barrier,
    spec: &DegreeSpec,
) -> Result<StructureReport> {
    check_barrier_structure_with(g, biased, spec, &Budget::default())
}

/// Evaluates the four structure clauses of a biased barrier. Requires
/// `k·|Y|` even; the barrier record must be consistent with `g`.
pub fn check_barrier_structure_with(
    g: &BipartiteGraph,
    biased: &Barrier,
    spec: &DegreeSpec,
    budget: &Budget,
) -> Result<StructureReport> {
    if !spec.parity_holds(g) {
        return Err(Error::Precondition(format!(
            "k·|Y| = {}·{} is odd",
            spec.k(),
            g.y_count()
        )));
    }
    let fresh = delta(g, &biased.a, &biased.b, spec)?;
    if fresh != *biased {
        return Err(Error::Precondition(
            "barrier record does not match the graph".into(),
        ));
    }

    let n = g.vertex_count();
    let mut in_b = vec![false; n];
    for &v in &biased.b {
        in_b[v] = true;
    }
    let edges_to_b = |v: usize| g.neighbors(v).iter().filter(|&&w| in_b[w]).count();

    let b_in_y = match biased.b.iter().find(|&&v| g.is_x(v)) {
        Some(&vertex) => Clause::Fail(StructureWitness::XInB { vertex }),
        None => Clause::Pass,
    };

    let component_clause = |class: ComponentClass, limit: usize| {
        for (ci, comp) in biased.components.iter().enumerate() {
            if comp.class != class {
                continue;
            }
            for &v in &comp.vertices {
                let e = edges_to_b(v);
                if e > limit {
                    return Clause::Fail(StructureWitness::TooManyEdgesToB {
                        component: ci,
                        vertex: v,
                        edges_to_b: e,
                    });
                }
            }
        }
        Clause::Pass
    };
    let odd_components = component_clause(ComponentClass::Odd, 1);
    let even_components = component_clause(ComponentClass::Even, 0);

    // Z qualifies iff every member has no neighbour in B.
    let a_x: Vec<usize> = biased.a.iter().copied().filter(|&v| g.is_x(v)).collect();
    let eligible: Vec<usize> = a_x
        .iter()
        .copied()
        .filter(|&v| edges_to_b(v) == 0)
        .collect();
    let z_truncated = a_x.len() > budget.structure_subsets;

    let mut z_checked = 0u64;
    let mut neighbourhoods = Clause::Pass;
    let mut check = |z: &[usize]| -> Result<bool> {
        z_checked += 1;
        let h = h_of_z(g, biased, z)?;
        if h < 2 * z.len() {
            neighbourhoods = Clause::Fail(StructureWitness::SmallH { z: z.to_vec(), h });
            return Ok(false);
        }
        Ok(true)
    };
    if z_truncated {
        'outer: for (i, &u) in eligible.iter().enumerate() {
            if !check(&[u])? {
                break;
            }
            for &w in &eligible[i + 1..] {
                if !check(&[u, w])? {
                    break 'outer;
                }
            }
        }
    } else {
        let mut z = Vec::with_capacity(eligible.len());
        subsets(&eligible, 0, &mut z, &mut check)?;
    }

    Ok(StructureReport {
        b_in_y,
        odd_components,
        even_components,
        neighbourhoods,
        z_checked,
        z_truncated,
    })
}

/// Depth-first walk over the nonempty subsets of `pool[from..]` extending
/// `z`; stops as soon as `visit` returns `false`.
fn subsets(
    pool: &[usize],
    from: usize,
    z: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> Result<bool>,
) -> Result<bool> {
    for i in from..pool.len() {
        z.push(pool[i]);
        let go_on = visit(z)? && subsets(pool, i + 1, z, visit)?;
        z.pop();
        if !go_on {
            return Ok(false);
        }
    }
    Ok(true)
}
