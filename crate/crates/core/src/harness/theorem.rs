use std::fmt;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::generate::{gen_random_hypergraph, Census, EdgeSizeLaw, GenParams};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::factor::{find_2k_factor, lift_to_berge};
use crate::hypergraph::{BergeFactorCertificate, Hypergraph, Rational, ToughnessValue};
use crate::incidence::BipartiteGraph;
use crate::parity::{find_biased_barrier_with, Barrier, DegreeSpec};

/// Largest `n` accepted for exhaustive runs.
pub const EXHAUSTIVE_N_LIMIT: usize = 5;
/// Largest `n` accepted for random runs.
pub const RANDOM_N_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremMode {
    /// Every edge multiset with edge sizes `min_edge..=n` and at most
    /// `max_edges` edges.
    Exhaustive { min_edge: usize, max_edges: usize },
    /// `trials` random hypergraphs: `n` uniform in range, edge count uniform
    /// in `0..=max_edges`, edge sizes uniform in `2..=min(n, max_edge_size)`.
    Random {
        trials: usize,
        seed: u64,
        max_edges: usize,
        max_edge_size: usize,
    },
}

#[derive(Debug, Clone, Copy)]
pub struct TheoremConfig {
    pub n_lo: usize,
    pub n_hi: usize,
    pub k: usize,
    pub mode: TheoremMode,
    pub budget: Budget,
}

impl TheoremConfig {
    pub fn exhaustive(n_hi: usize, k: usize) -> Self {
        TheoremConfig {
            n_lo: 1,
            n_hi,
            k,
            mode: TheoremMode::Exhaustive {
                min_edge: 2,
                max_edges: 6,
            },
            budget: Budget::default(),
        }
    }

    pub fn random(n_hi: usize, k: usize, trials: usize, seed: u64) -> Self {
        TheoremConfig {
            n_lo: 1,
            n_hi,
            k,
            mode: TheoremMode::Random {
                trials,
                seed,
                max_edges: 12,
                max_edge_size: 4,
            },
            budget: Budget::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        DegreeSpec::new(self.k)?;
        if self.n_lo > self.n_hi {
            return Err(Error::InvalidSpec(format!(
                "empty vertex range {}..={}",
                self.n_lo, self.n_hi
            )));
        }
        let limit = match self.mode {
            TheoremMode::Exhaustive { .. } => EXHAUSTIVE_N_LIMIT,
            TheoremMode::Random { .. } => RANDOM_N_LIMIT,
        };
        Budget::check("n", self.n_hi, limit)
    }
}

/// The instances a run examines, in a fixed order.
pub fn theorem_instances(
    cfg: &TheoremConfig,
) -> Result<Box<dyn Iterator<Item = Hypergraph> + Send>> {
    cfg.validate()?;
    let (n_lo, n_hi) = (cfg.n_lo, cfg.n_hi);
    Ok(match cfg.mode {
        TheoremMode::Exhaustive {
            min_edge,
            max_edges,
        } => Box::new((n_lo..=n_hi).flat_map(move |n| Census::new(n, min_edge, max_edges))),
        TheoremMode::Random {
            trials,
            seed,
            max_edges,
            max_edge_size,
        } => {
            let n_lo = n_lo.max(2);
            if n_lo > n_hi {
                return Err(Error::InvalidSpec("random mode needs n ≥ 2".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let params: Vec<GenParams> = (0..trials)
                .map(|_| {
                    let n = rng.gen_range(n_lo..=n_hi);
                    GenParams {
                        n,
                        m: rng.gen_range(0..=max_edges),
                        sizes: EdgeSizeLaw::Range {
                            lo: 2,
                            hi: n.min(max_edge_size.max(2)),
                        },
                        seed: rng.gen(),
                        connected: false,
                    }
                })
                .collect();
            Box::new(
                params
                    .into_iter()
                    .map(|p| gen_random_hypergraph(&p).expect("parameters are valid")),
            )
        }
    })
}

/// How one instance was classified.
#[derive(Debug, Clone)]
pub enum InstanceOutcome {
    /// `k·n` odd or `n < k + 1`.
    GateFalse,
    /// Gate holds but `τ(H) < k`.
    BelowToughness(ToughnessValue),
    FactorFound {
        toughness: ToughnessValue,
        certificate: BergeFactorCertificate,
    },
    Violation(Violation),
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub instance: Hypergraph,
    pub toughness: ToughnessValue,
    pub k: usize,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone)]
pub enum ViolationKind {
    /// The solver found no factor; the barrier is re-derived when the
    /// incidence graph fits the criterion budget.
    NoFactor { barrier: Option<Barrier> },
    /// The lifted certificate failed verification.
    BadCertificate(String),
}

/// Whether `n` and `k` satisfy the parity and size hypotheses.
pub fn gate_holds(n: usize, k: usize) -> bool {
    (k * n).is_multiple_of(2) && n > k
}

/// Runs the pipeline on one hypergraph.
pub fn check_instance(h: &Hypergraph, k: usize, budget: &Budget) -> Result<InstanceOutcome> {
    let spec = DegreeSpec::new(k)?;
    if !gate_holds(h.vertex_count(), k) {
        return Ok(InstanceOutcome::GateFalse);
    }
    let toughness = h.toughness_with(budget)?;
    if !toughness.is_at_least(Rational::from_integer(k as u64)) {
        return Ok(InstanceOutcome::BelowToughness(toughness));
    }
    let g = BipartiteGraph::incidence(h);
    let violation = |kind| {
        InstanceOutcome::Violation(Violation {
            instance: h.clone(),
            toughness: toughness.clone(),
            k,
            kind,
        })
    };
    match find_2k_factor(&g, &spec)? {
        Some(f) => {
            let certificate = lift_to_berge(h, &f)?;
            match h.verify_berge_factor(&certificate) {
                Ok(()) => Ok(InstanceOutcome::FactorFound {
                    toughness,
                    certificate,
                }),
                Err(v) => Ok(violation(ViolationKind::BadCertificate(v.to_string()))),
            }
        }
        None => {
            // `None` when the graph is beyond the scan budget or the
            // criterion itself finds no barrier (solver and criterion disagree).
            let barrier = if g.vertex_count() <= budget.criterion_vertices {
                find_biased_barrier_with(&g, &spec, budget).ok()
            } else {
                None
            };
            Ok(violation(ViolationKind::NoFactor { barrier }))
        }
    }
}

/// Tallies of a theorem-verification run.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub k: usize,
    pub n_lo: usize,
    pub n_hi: usize,
    pub mode: TheoremMode,
    pub total: u64,
    pub gate_false: u64,
    pub below_toughness: u64,
    /// Gate true and `τ(H) ≥ k`.
    pub hypothesis: u64,
    pub factors_found: u64,
    /// Sorted by instance.
    pub violations: Vec<Violation>,
    pub elapsed: Duration,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// `key=value` lines for machine consumption.
    pub fn porcelain(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            s.push_str(k);
            s.push('=');
            s.push_str(&v);
            s.push('\n');
        };
        kv("k", self.k.to_string());
        kv("n_lo", self.n_lo.to_string());
        kv("n_hi", self.n_hi.to_string());
        match self.mode {
            TheoremMode::Exhaustive {
                min_edge,
                max_edges,
            } => {
                kv("mode", "exhaustive".into());
                kv("min_edge", min_edge.to_string());
                kv("max_edges", max_edges.to_string());
            }
            TheoremMode::Random {
                trials,
                seed,
                max_edges,
                max_edge_size,
            } => {
                kv("mode", "random".into());
                kv("trials", trials.to_string());
                kv("seed", seed.to_string());
                kv("max_edges", max_edges.to_string());
                kv("max_edge_size", max_edge_size.to_string());
            }
        }
        kv("total", self.total.to_string());
        kv("gate_false", self.gate_false.to_string());
        kv("below_toughness", self.below_toughness.to_string());
        kv("hypothesis", self.hypothesis.to_string());
        kv("factors_found", self.factors_found.to_string());
        kv("violations", self.violations.len().to_string());
        kv("elapsed_ms", self.elapsed.as_millis().to_string());
        s
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.mode {
            TheoremMode::Exhaustive {
                min_edge,
                max_edges,
            } => {
                format!("exhaustive (edge sizes >= {min_edge}, <= {max_edges} edges)")
            }
            TheoremMode::Random { trials, seed, .. } => {
                format!("random ({trials} trials, seed {seed})")
            }
        };
        writeln!(f, "k                {}", self.k)?;
        writeln!(f, "n                {}..={}", self.n_lo, self.n_hi)?;
        writeln!(f, "mode             {mode}")?;
        writeln!(f, "instances        {}", self.total)?;
        writeln!(f, "gate false       {}", self.gate_false)?;
        writeln!(f, "below toughness  {}", self.below_toughness)?;
        writeln!(f, "hypothesis true  {}", self.hypothesis)?;
        writeln!(f, "factors found    {}", self.factors_found)?;
        writeln!(f, "violations       {}", self.violations.len())?;
        writeln!(f, "elapsed          {:.3}s", self.elapsed.as_secs_f64())?;
        for v in &self.violations {
            writeln!(
                f,
                "violation: tau {} k {} instance {:?}",
                v.toughness,
                v.k,
                v.instance.edges()
            )?;
            match &v.kind {
                ViolationKind::NoFactor { barrier: Some(b) } => {
                    writeln!(f, "  barrier delta {} A {:?} B {:?}", b.delta, b.a, b.b)?
                }
                ViolationKind::NoFactor { barrier: None } => writeln!(f, "  no barrier available")?,
                ViolationKind::BadCertificate(msg) => writeln!(f, "  certificate rejected: {msg}")?,
            }
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    total: u64,
    gate_false: u64,
    below: u64,
    found: u64,
}

/// Runs the pipeline over every instance of `cfg`. Never aborts on a
/// violation; all of them are reported.
pub fn verify_theorem(cfg: &TheoremConfig) -> Result<TheoremReport> {
    let start = Instant::now();
    let instances = theorem_instances(cfg)?;
    let violations = Mutex::new(Vec::new());
    let tally = instances
        .par_bridge()
        .map(|h| -> Result<Tally> {
            let mut t = Tally {
                total: 1,
                ..Tally::default()
            };
            match check_instance(&h, cfg.k, &cfg.budget)? {
                InstanceOutcome::GateFalse => t.gate_false = 1,
                InstanceOutcome::BelowToughness(_) => t.below = 1,
                InstanceOutcome::FactorFound { .. } => t.found = 1,
                InstanceOutcome::Violation(v) => violations.lock().unwrap().push(v),
            }
            Ok(t)
        })
        .try_reduce(Tally::default, |a, b| {
            Ok(Tally {
                total: a.total + b.total,
                gate_false: a.gate_false + b.gate_false,
                below: a.below + b.below,
                found: a.found + b.found,
            })
        })?;
    let mut violations = violations.into_inner().unwrap();
    violations.sort_by(|a, b| a.instance.cmp(&b.instance));
    Ok(TheoremReport {
        k: cfg.k,
        n_lo: cfg.n_lo,
        n_hi: cfg.n_hi,
        mode: cfg.mode,
        total: tally.total,
        gate_false: tally.gate_false,
        below_toughness: tally.below,
        hypothesis: tally.found + violations.len() as u64,
        factors_found: tally.found,
        violations,
        elapsed: start.elapsed(),
    })
}
