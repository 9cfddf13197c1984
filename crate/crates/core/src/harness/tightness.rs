use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::generate::{gen_random_hypergraph, EdgeSizeLaw, GenParams};
use super::theorem::gate_holds;
use crate::budget::Budget;
use crate::error::Result;
use crate::factor::find_2k_factor;
use crate::hypergraph::{Hypergraph, ToughnessValue};
use crate::incidence::BipartiteGraph;
use crate::parity::{find_biased_barrier_with, Barrier, DegreeSpec};

#[derive(Debug, Clone, Copy)]
pub struct TightnessConfig {
    pub k: usize,
    /// Number of candidate instances examined.
    pub budget: usize,
    pub seed: u64,
    /// Largest vertex count of the exhaustive graph prefix and of the
    /// random hypergraphs.
    pub n_max: usize,
    pub limits: Budget,
}

impl TightnessConfig {
    pub fn new(k: usize, budget: usize) -> Self {
        TightnessConfig {
            k,
            budget,
            seed: 0,
            n_max: 6,
            limits: Budget::default(),
        }
    }
}

/// Most tough factor-less instance seen.
#[derive(Debug, Clone)]
pub struct TightnessBest {
    pub toughness: ToughnessValue,
    pub instance: Hypergraph,
    /// `None` when the incidence graph exceeds the scan budget.
    pub barrier: Option<Barrier>,
    /// Position of the instance in the candidate stream.
    pub index: usize,
}

#[derive(Debug, Clone)]
pub struct TightnessResult {
    pub examined: usize,
    pub factorless: usize,
    pub best: Option<TightnessBest>,
}

/// The candidate stream: every simple graph on `n ∈ k+1..=n_max` vertices
/// passing the parity gate (edge subsets in increasing mask order), then
/// seeded random hypergraphs on gated vertex counts.
///
/// The stream depends only on `(k, n_max, seed)`, so a larger budget
/// examines a superset of instances.
pub fn tightness_candidates(k: usize, n_max: usize, seed: u64) -> impl Iterator<Item = Hypergraph> {
    let ns: Vec<usize> = (k + 1..=n_max).filter(|&n| gate_holds(n, k)).collect();
    let graphs = ns.clone().into_iter().flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        (0u64..1 << pairs.len()).map(move |mask| {
            let edges: Vec<(usize, usize)> = crate::bits::Bits(mask).map(|i| pairs[i]).collect();
            Hypergraph::from_graph(n, &edges).expect("pairs are distinct")
        })
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = std::iter::from_fn(move || {
        if ns.is_empty() {
            return None;
        }
        let n = ns[rng.gen_range(0..ns.len())];
        let p = GenParams {
            n,
            m: rng.gen_range(1..=2 * n),
            sizes: EdgeSizeLaw::Range {
                lo: 2,
                hi: n.min(4),
            },
            seed: rng.gen(),
            connected: false,
        };
        Some(gen_random_hypergraph(&p).expect("parameters are valid"))
    });
    graphs.chain(random)
}

/// Scans the first `cfg.budget` candidates for the maximum toughness among
/// instances without a Berge-k-factor. Ties keep the earliest instance.
pub fn tightness_search(cfg: &TightnessConfig) -> Result<TightnessResult> {
    let spec = DegreeSpec::new(cfg.k)?;
    let mut result = TightnessResult {
        examined: 0,
        factorless: 0,
        best: None,
    };
    for (index, h) in tightness_candidates(cfg.k, cfg.n_max, cfg.seed)
        .take(cfg.budget)
        .enumerate()
    {
        result.examined += 1;
        let g = BipartiteGraph::incidence(&h);
        if find_2k_factor(&g, &spec)?.is_some() {
            continue;
        }
        result.factorless += 1;
        let t = h.toughness_with(&cfg.limits)?;
        if result.best.as_ref().is_some_and(|b| t <= b.toughness) {
            continue;
        }
        let barrier = if g.vertex_count() <= cfg.limits.criterion_vertices {
            Some(find_biased_barrier_with(&g, &spec, &cfg.limits)?)
        } else {
            None
        };
        result.best = Some(TightnessBest {
            toughness: t,
            instance: h,
            barrier,
            index,
        });
    }
    Ok(result)
}
