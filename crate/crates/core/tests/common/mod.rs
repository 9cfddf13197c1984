//! Brute-force oracles shared by the integration tests. None of them call
//! into the library's algorithms.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Reduced fraction `p/q`.
pub type Frac = (u64, u64);

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn reduce(p: u64, q: u64) -> Frac {
    let g = gcd(p, q).max(1);
    (p / g, q / g)
}

fn less(a: Frac, b: Frac) -> bool {
    (a.0 as u128) * (b.1 as u128) < (b.0 as u128) * (a.1 as u128)
}

fn min_ratio(n: usize, mut comps: impl FnMut(&[bool]) -> usize) -> Option<Frac> {
    let mut best: Option<Frac> = None;
    for mask in 0u64..1 << n {
        let s: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        let c = comps(&s);
        if c >= 2 {
            let r = reduce(mask.count_ones() as u64, c as u64);
            if best.is_none_or(|b| less(r, b)) {
                best = Some(r);
            }
        }
    }
    best
}

/// Hypergraph toughness by union-find over every vertex subset; `None`
/// means infinite.
pub fn hypergraph_toughness(n: usize, edges: &[Vec<usize>]) -> Option<Frac> {
    min_ratio(n, |s| {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], v: usize) -> usize {
            let mut r = v;
            while p[r] != r {
                r = p[r];
            }
            p[v] = r;
            r
        }
        for e in edges {
            if e.iter().any(|&v| s[v]) {
                continue;
            }
            for w in e.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        let mut roots: Vec<usize> = (0..n)
            .filter(|&v| !s[v])
            .map(|v| find(&mut parent, v))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    })
}

/// Graph toughness by depth-first search on an adjacency matrix.
pub fn graph_toughness(n: usize, edges: &[(usize, usize)]) -> Option<Frac> {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    min_ratio(n, |s| {
        let mut seen = s.to_vec();
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for v in 0..n {
                    if adj[u][v] && !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    })
}

/// Maximum matching size: the lowest unmatched vertex is either left
/// unmatched or matched to each free neighbour in turn.
pub fn matching_number(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    fn go(adj: &[Vec<usize>], used: &mut Vec<bool>, from: usize) -> usize {
        let Some(u) = (from..adj.len()).find(|&u| !used[u]) else {
            return 0;
        };
        used[u] = true;
        let mut best = go(adj, used, u + 1);
        for &v in &adj[u] {
            if !used[v] {
                used[v] = true;
                best = best.max(1 + go(adj, used, u + 1));
                used[v] = false;
            }
        }
        used[u] = false;
        best
    }
    go(&adj, &mut vec![false; n], 0)
}

/// Whether some edge subset gives every x degree 0 or 2 and every y degree
/// `k`. Walks the edges in order, keeping or dropping each one.
pub fn has_2k_factor(y_count: usize, x_adj: &[Vec<usize>], k: usize) -> bool {
    let edges: Vec<(usize, usize)> = x_adj
        .iter()
        .enumerate()
        .flat_map(|(x, row)| row.iter().map(move |&y| (x, y)))
        .collect();
    // remaining[i][y]: edges at y among edges[i..]
    let mut remaining = vec![vec![0usize; y_count]; edges.len() + 1];
    for i in (0..edges.len()).rev() {
        remaining[i] = remaining[i + 1].clone();
        remaining[i][edges[i].1] += 1;
    }
    fn go(
        i: usize,
        edges: &[(usize, usize)],
        remaining: &[Vec<usize>],
        dx: &mut [usize],
        dy: &mut [usize],
        k: usize,
    ) -> bool {
        if (0..dy.len()).any(|y| dy[y] + remaining[i][y] < k) {
            return false;
        }
        if i == edges.len() {
            return dx.iter().all(|&d| d == 0 || d == 2);
        }
        let (x, y) = edges[i];
        // x's last edge decides whether its degree can still be 0 or 2
        let x_last = edges.get(i + 1).is_none_or(|e| e.0 != x);
        if dx[x] < 2 && dy[y] < k {
            dx[x] += 1;
            dy[y] += 1;
            let ok = (!x_last || dx[x] == 2) && go(i + 1, edges, remaining, dx, dy, k);
            dx[x] -= 1;
            dy[y] -= 1;
            if ok {
                return true;
            }
        }
        (!x_last || dx[x] != 1) && go(i + 1, edges, remaining, dx, dy, k)
    }
    go(
        0,
        &edges,
        &remaining,
        &mut vec![0; x_adj.len()],
        &mut vec![0; y_count],
        k,
    )
}

/// Random bipartite graph with `2 ≤ |X| + |Y| ≤ max_vertices`, `|X|, |Y| ≥ 1`
/// and no isolated X-vertex. Returns `(y_count, x_adj)`.
pub fn random_bipartite(rng: &mut ChaCha8Rng, max_vertices: usize) -> (usize, Vec<Vec<usize>>) {
    let total = rng.gen_range(2..=max_vertices);
    let x = rng.gen_range(1..total);
    let y = total - x;
    let p: f64 = rng.gen_range(0.15..0.85);
    let rows = (0..x)
        .map(|_| loop {
            let row: Vec<usize> = (0..y).filter(|_| rng.gen_bool(p)).collect();
            if !row.is_empty() {
                break row;
            }
        })
        .collect();
    (y, rows)
}

/// Random simple graph on `n` vertices with edge probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every simple graph on `n` vertices, as edge lists in mask order.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        (0..pairs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect()
    })
}

/// Every bipartite graph with the given side sizes and no isolated X-vertex.
pub fn all_bipartite(x: usize, y: usize) -> Vec<Vec<Vec<usize>>> {
    let rows: Vec<Vec<usize>> = (1u64..1 << y)
        .map(|m| (0..y).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    let mut out = vec![Vec::new()];
    for _ in 0..x {
        out = out
            .into_iter()
            .flat_map(|g: Vec<Vec<usize>>| {
                rows.iter().map(move |r| {
                    let mut g = g.clone();
                    g.push(r.clone());
                    g
                })
            })
            .collect();
    }
    out
}
