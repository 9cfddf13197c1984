//! Exhaustive `3^|V|` scan over disjoint pairs `(A, B)`.
//!
//! Pairs are grouped by `R = A ∪ B`. The components of `G − R` depend on
//! `R` only, so they are computed once per union; the subsets `B ⊆ R` are
//! then walked in Gray-code order, moving one vertex between `A` and `B`
//! per step and updating every term of `δ` incrementally.

use std::cmp::Ordering;

use rayon::prelude::*;

use super::{delta, Barrier, DegreeSpec};
use crate::bits::{self, Bits};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::incidence::BipartiteGraph;

/// Outcome of the criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    /// `δ(A, B) ≥ 0` for every disjoint pair: a `(2,k)`-factor exists.
    Exists,
    /// The first barrier in ternary counting order.
    Barrier(Barrier),
}

impl Decision {
    pub fn exists(&self) -> bool {
        matches!(self, Decision::Exists)
    }
}

/// Everything a full scan learns about a graph.
#[derive(Debug, Clone)]
pub struct CriterionScan {
    /// Number of disjoint pairs evaluated (`3^|V|`).
    pub pairs: u64,
    /// Pairs whose `δ` was odd.
    pub odd_deltas: u64,
    pub min_delta: i64,
    /// Barrier with the least ternary key (vertex `i` contributes digit
    /// `0` = neither, `1` = A, `2` = B at weight `3^i`).
    pub first_barrier: Option<Barrier>,
    /// Minimum `δ`, then minimum `|B|`, then maximum `|A|`, then
    /// lexicographically least `(B, A)`.
    pub biased_barrier: Option<Barrier>,
}

impl CriterionScan {
    pub fn decision(&self) -> Decision {
        match &self.first_barrier {
            None => Decision::Exists,
            Some(b) => Decision::Barrier(b.clone()),
        }
    }
}

/// Runs the full scan under `budget`.
pub fn criterion_scan(
    g: &BipartiteGraph,
    spec: &DegreeSpec,
    budget: &Budget,
) -> Result<CriterionScan> {
    let n = g.vertex_count();
    Budget::check("|X| + |Y|", n, budget.criterion_vertices)?;
    let kernel = Kernel::new(g, spec);
    let full = bits::full(n);
    let acc = (0..=full)
        .into_par_iter()
        .fold(Acc::default, |mut acc, r| {
            kernel.scan_union(r, &mut acc);
            acc
        })
        .reduce(Acc::default, Acc::merge);

    let materialise = |c: Option<Candidate>| -> Result<Option<Barrier>> {
        c.map(|c| {
            let bar = delta(g, &bits::to_vec(c.a), &bits::to_vec(c.b), spec)?;
            assert_eq!(
                bar.delta, c.delta,
                "incremental δ disagrees with direct evaluation"
            );
            Ok(bar)
        })
        .transpose()
    };
    Ok(CriterionScan {
        pairs: acc.pairs,
        odd_deltas: acc.odd,
        min_delta: acc.min_delta,
        first_barrier: materialise(acc.first.map(|(_, c)| c))?,
        biased_barrier: materialise(acc.biased)?,
    })
}

/// Decides whether a `(2,k)`-factor exists, returning a barrier otherwise.
pub fn decide_by_criterion(g: &BipartiteGraph, spec: &DegreeSpec) -> Result<Decision> {
    decide_by_criterion_with(g, spec, &Budget::default())
}

pub fn decide_by_criterion_with(
    g: &BipartiteGraph,
    spec: &DegreeSpec,
    budget: &Budget,
) -> Result<Decision> {
    Ok(criterion_scan(g, spec, budget)?.decision())
}

/// The canonical biased barrier, or [`Error::NoBarrier`] when a factor exists.
pub fn find_biased_barrier(g: &BipartiteGraph, spec: &DegreeSpec) -> Result<Barrier> {
    find_biased_barrier_with(g, spec, &Budget::default())
}

pub fn find_biased_barrier_with(
    g: &BipartiteGraph,
    spec: &DegreeSpec,
    budget: &Budget,
) -> Result<Barrier> {
    criterion_scan(g, spec, budget)?
        .biased_barrier
        .ok_or(Error::NoBarrier)
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    a: u64,
    b: u64,
    delta: i64,
}

impl Candidate {
    /// True when `self` beats `other` as a biased barrier.
    fn more_biased(&self, other: &Candidate) -> bool {
        let key = |c: &Candidate| {
            (
                c.delta,
                c.b.count_ones(),
                std::cmp::Reverse(c.a.count_ones()),
            )
        };
        match key(self).cmp(&key(other)) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => {
                bits::lex_cmp(self.b, other.b).then_with(|| bits::lex_cmp(self.a, other.a))
                    == Ordering::Less
            }
        }
    }
}

#[derive(Debug, Clone)]
struct Acc {
    pairs: u64,
    odd: u64,
    min_delta: i64,
    first: Option<(u64, Candidate)>,
    biased: Option<Candidate>,
}

impl Default for Acc {
    fn default() -> Self {
        Acc {
            pairs: 0,
            odd: 0,
            min_delta: i64::MAX,
            first: None,
            biased: None,
        }
    }
}

impl Acc {
    #[inline]
    fn record(&mut self, a: u64, b: u64, key: u64, delta: i64) {
        self.pairs += 1;
        self.odd += (delta & 1) as u64;
        if delta >= 0 {
            self.min_delta = self.min_delta.min(delta);
            return;
        }
        let cand = Candidate { a, b, delta };
        if self.first.is_none_or(|(k, _)| key < k) {
            self.first = Some((key, cand));
        }
        if delta <= self.min_delta {
            self.min_delta = delta;
            if self.biased.is_none_or(|cur| cand.more_biased(&cur)) {
                self.biased = Some(cand);
            }
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        self.pairs += other.pairs;
        self.odd += other.odd;
        self.min_delta = self.min_delta.min(other.min_delta);
        self.first = match (self.first, other.first) {
            (Some(x), Some(y)) => Some(if y.0 < x.0 { y } else { x }),
            (x, y) => x.or(y),
        };
        self.biased = match (self.biased, other.biased) {
            (Some(x), Some(y)) => Some(if y.more_biased(&x) { y } else { x }),
            (x, y) => x.or(y),
        };
        self
    }
}

struct Kernel {
    n: usize,
    nbr: Vec<u64>,
    upper: Vec<i64>,
    lower: Vec<i64>,
    degree: Vec<i64>,
    pow3: Vec<u64>,
}

impl Kernel {
    fn new(g: &BipartiteGraph, spec: &DegreeSpec) -> Self {
        let n = g.vertex_count();
        let nbr: Vec<u64> = (0..n).map(|v| bits::mask_of(g.neighbors(v))).collect();
        let mut pow3 = Vec::with_capacity(n);
        let mut p: u64 = 1;
        for _ in 0..n {
            pow3.push(p);
            p = p.wrapping_mul(3);
        }
        Kernel {
            n,
            upper: (0..n).map(|v| spec.upper(g, v)).collect(),
            lower: (0..n).map(|v| spec.lower(g, v)).collect(),
            degree: nbr.iter().map(|m| i64::from(m.count_ones())).collect(),
            nbr,
            pow3,
        }
    }

    /// Visits every split of `r` into `(A, B)`.
    fn scan_union(&self, r: u64, acc: &mut Acc) {
        let rest = bits::full(self.n) & !r;

        // Components of G − R as masks, and the parity of Σf over each.
        let mut comps = [0u64; 64];
        let mut ncomp = 0;
        let mut parity = 0u64;
        let mut left = rest;
        while left != 0 {
            let start = left & left.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut reach = 0;
                for u in Bits(frontier) {
                    reach |= self.nbr[u];
                }
                reach &= rest & !comp;
                comp |= reach;
                frontier = reach;
            }
            let f_sum: i64 = Bits(comp).map(|v| self.upper[v]).sum();
            if f_sum & 1 == 1 {
                parity |= 1 << ncomp;
            }
            comps[ncomp] = comp;
            ncomp += 1;
            left &= !comp;
        }

        // For each v in R: the components whose e(D, B) parity flips when v
        // enters or leaves B.
        let mut members = [0usize; 64];
        let mut toggle = [0u64; 64];
        let mut r_len = 0;
        for v in Bits(r) {
            members[r_len] = v;
            r_len += 1;
            let mut t = 0u64;
            for (c, &m) in comps[..ncomp].iter().enumerate() {
                if (self.nbr[v] & m).count_ones() & 1 == 1 {
                    t |= 1 << c;
                }
            }
            toggle[v] = t;
        }

        // Start from A = R, B = ∅.
        let mut a = r;
        let mut b = 0u64;
        let mut f_a: i64 = Bits(r).map(|v| self.upper[v]).sum();
        let mut g_b: i64 = 0;
        let mut deg_b: i64 = 0;
        let mut e_ab: i64 = 0;
        let mut key: u64 = Bits(r).map(|v| self.pow3[v]).sum();
        acc.record(a, b, key, f_a - i64::from(parity.count_ones()));

        for step in 1u64..(1u64 << r_len) {
            let v = members[step.trailing_zeros() as usize];
            let bit = 1u64 << v;
            let nv = self.nbr[v];
            if a & bit != 0 {
                // A → B
                a &= !bit;
                e_ab += i64::from((nv & a).count_ones()) - i64::from((nv & b).count_ones());
                b |= bit;
                f_a -= self.upper[v];
                g_b += self.lower[v];
                deg_b += self.degree[v];
                key += self.pow3[v];
            } else {
                // B → A
                b &= !bit;
                e_ab += i64::from((nv & b).count_ones()) - i64::from((nv & a).count_ones());
                a |= bit;
                f_a += self.upper[v];
                g_b -= self.lower[v];
                deg_b -= self.degree[v];
                key -= self.pow3[v];
            }
            parity ^= toggle[v];
            let d = f_a - g_b + deg_b - e_ab - i64::from(parity.count_ones());
            acc.record(a, b, key, d);
        }
    }
}
