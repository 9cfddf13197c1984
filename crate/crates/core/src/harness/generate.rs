use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Distribution of edge sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeSizeLaw {
    Fixed(usize),
    /// Uniform on `lo..=hi`.
    Range {
        lo: usize,
        hi: usize,
    },
}

impl EdgeSizeLaw {
    fn bounds(&self) -> (usize, usize) {
        match *self {
            EdgeSizeLaw::Fixed(r) => (r, r),
            EdgeSizeLaw::Range { lo, hi } => (lo, hi),
        }
    }
}

/// Parameters of the random hypergraph model. Edges are drawn
/// independently, so the same vertex set may appear more than once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub n: usize,
    pub m: usize,
    pub sizes: EdgeSizeLaw,
    pub seed: u64,
    /// Redraw until the hypergraph is connected.
    pub connected: bool,
}

const CONNECT_ATTEMPTS: usize = 10_000;

impl GenParams {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.sizes.bounds();
        if lo == 0 || lo > hi || hi > self.n {
            return Err(Error::InvalidSpec(format!(
                "edge sizes {lo}..={hi} impossible on {} vertices",
                self.n
            )));
        }
        Ok(())
    }
}

pub fn gen_random_hypergraph(p: &GenParams) -> Result<Hypergraph> {
    p.validate()?;
    let (lo, hi) = p.sizes.bounds();
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    for _ in 0..CONNECT_ATTEMPTS {
        let edges = (0..p.m)
            .map(|_| {
                let r = rng.gen_range(lo..=hi);
                sample(&mut rng, p.n, r).into_vec()
            })
            .collect();
        let h = Hypergraph::new(p.n, edges)?;
        if !p.connected || h.component_count() <= 1 {
            return Ok(h);
        }
    }
    Err(Error::InvalidSpec(format!(
        "no connected hypergraph after {CONNECT_ATTEMPTS} draws (n = {}, m = {})",
        p.n, p.m
    )))
}

/// All hypergraphs on `n` vertices whose edges have sizes in
/// `min_edge..=n`, up to `max_edges` edges, as sorted edge multisets.
///
/// Edge types are ordered by size, then lexicographically; each multiset
/// is a non-decreasing sequence of type indices, shorter sequences first.
pub struct Census {
    n: usize,
    types: Vec<Vec<usize>>,
    max_edges: usize,
    current: Option<Vec<usize>>,
}

impl Census {
    pub fn new(n: usize, min_edge: usize, max_edges: usize) -> Self {
        let mut types: Vec<Vec<usize>> = (0u64..1 << n)
            .filter(|m| (m.count_ones() as usize) >= min_edge.max(1))
            .map(crate::bits::to_vec)
            .collect();
        types.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Census {
            n,
            types,
            max_edges,
            current: Some(Vec::new()),
        }
    }

    /// Number of hypergraphs the census yields.
    pub fn len(&self) -> u128 {
        // Σ_{m ≤ M} C(T + m − 1, m) = C(T + M, M)
        let t = self.types.len() as u128;
        let m = self.max_edges as u128;
        (1..=m).fold(1u128, |acc, i| acc * (t + i) / i)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn advance(&mut self) {
        let t = self.types.len();
        let Some(cur) = self.current.as_mut() else {
            return;
        };
        if let Some(i) = (0..cur.len()).rev().find(|&i| cur[i] + 1 < t) {
            let v = cur[i] + 1;
            for slot in &mut cur[i..] {
                *slot = v;
            }
            return;
        }
        let len = cur.len() + 1;
        if len > self.max_edges || t == 0 {
            self.current = None;
        } else {
            *cur = vec![0; len];
        }
    }
}

impl Iterator for Census {
    type Item = Hypergraph;

    fn next(&mut self) -> Option<Hypergraph> {
        let cur = self.current.as_ref()?;
        let edges = cur.iter().map(|&i| self.types[i].clone()).collect();
        let h = Hypergraph::new(self.n, edges).expect("census edges are valid");
        self.advance();
        Some(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_in_seed() {
        let p = GenParams {
            n: 4,
            m: 4,
            sizes: EdgeSizeLaw::Fixed(3),
            seed: 7,
            connected: false,
        };
        let a = gen_random_hypergraph(&p).unwrap();
        assert_eq!(a, gen_random_hypergraph(&p).unwrap());
        assert!(a.is_uniform(3));
        assert_eq!(a.edge_count(), 4);
        let other = gen_random_hypergraph(&GenParams { seed: 8, ..p }).unwrap();
        assert_eq!(other.edge_count(), 4);
    }

    #[test]
    fn edgeless_is_zero_tough() {
        let p = GenParams {
            n: 3,
            m: 0,
            sizes: EdgeSizeLaw::Range { lo: 1, hi: 3 },
            seed: 1,
            connected: false,
        };
        let h = gen_random_hypergraph(&p).unwrap();
        assert_eq!(h.edge_count(), 0);
        let t = h.toughness().unwrap();
        assert_eq!(t.value(), Some(0.into()));
    }

    #[test]
    fn impossible_law_is_rejected() {
        let p = GenParams {
            n: 2,
            m: 1,
            sizes: EdgeSizeLaw::Range { lo: 3, hi: 3 },
            seed: 0,
            connected: false,
        };
        assert!(gen_random_hypergraph(&p).is_err());
        let p = GenParams {
            sizes: EdgeSizeLaw::Range { lo: 2, hi: 1 },
            n: 4,
            ..p
        };
        assert!(gen_random_hypergraph(&p).is_err());
    }

    #[test]
    fn connected_filter() {
        for seed in 0..20 {
            let p = GenParams {
                n: 6,
                m: 4,
                sizes: EdgeSizeLaw::Range { lo: 2, hi: 3 },
                seed,
                connected: true,
            };
            assert_eq!(gen_random_hypergraph(&p).unwrap().component_count(), 1);
        }
    }

    #[test]
    fn census_counts() {
        // n = 3, sizes 2..3: four edge types; multisets of size ≤ 2: 1 + 4 + 10
        let c = Census::new(3, 2, 2);
        assert_eq!(c.len(), 15);
        let all: Vec<_> = c.collect();
        assert_eq!(all.len(), 15);
        assert_eq!(all[0], Hypergraph::empty(3));
        assert_eq!(all[1].edges(), &[vec![0, 1]]);
        assert_eq!(all[5].edges(), &[vec![0, 1], vec![0, 1]]);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 15);

        // n = 4, sizes 2..4, up to 6 edges: 11 types, C(17, 6)
        assert_eq!(Census::new(4, 2, 6).len(), 12376);
        assert_eq!(Census::new(1, 2, 6).count(), 1);
    }
}
