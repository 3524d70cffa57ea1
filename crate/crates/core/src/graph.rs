//! Simple undirected graphs, exact edge expansion for small graphs and a
//! spectral lower bound for larger ones.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;

/// Largest graph accepted by [`cheeger_exact`].
pub const CHEEGER_MAX_VERTICES: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralGraph {
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl GeneralGraph {
    /// Builds a graph on `n` vertices. Repeated edges are merged; self-loops are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::NoSuchVertex { vertex: w, vertices: n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        Ok(Self { adj, labels: None })
    }

    /// Builds a graph from an edge list, sizing it by the largest vertex id.
    pub fn from_edges(edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        Self::new(n, edges)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.adj.len());
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &edges).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges).expect("valid path")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::new(n, &edges).expect("valid complete graph")
    }

    /// Uniform-ish random `d`-regular simple graph from the pairing model.
    pub fn random_regular(n: usize, d: usize, seed: u64) -> Self {
        assert!(
            (n * d).is_multiple_of(2) && d < n,
            "no {d}-regular graph on {n} vertices"
        );
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut points: Vec<usize> = (0..n * d).map(|i| i / d).collect();
            points.shuffle(&mut rng);
            let mut edges: Vec<(usize, usize)> = points.chunks(2).map(|p| (p[0].min(p[1]), p[0].max(p[1]))).collect();
            if edges.iter().any(|&(u, v)| u == v) {
                continue;
            }
            edges.sort_unstable();
            if edges.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            return Self::new(n, &edges).expect("simple by construction");
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|a| a.binary_search(&v).is_ok())
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for (u, a) in self.adj.iter().enumerate() {
            for &v in a.iter().filter(|&&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Hop distances from `src`; `usize::MAX` for unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.num_vertices()];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.num_vertices() == 0 || self.bfs_distances(0).iter().all(|&d| d != usize::MAX)
    }
}

/// Non-negative rational number in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0);
        let g = gcd(num, den);
        Self {
            num: num / g,
            den: den / g,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Edge expansion `min |E(S, S^c)| / min(|S|, |S^c|)` over nonempty proper
/// subsets, by enumerating subsets in Gray-code order.
pub fn cheeger_exact(g: &GeneralGraph) -> Result<Ratio, GraphError> {
    let n = g.num_vertices();
    if n > CHEEGER_MAX_VERTICES {
        return Err(GraphError::TooLarge {
            vertices: n,
            max: CHEEGER_MAX_VERTICES,
        });
    }
    if n < 2 {
        return Err(GraphError::Empty);
    }
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let mut best: Option<Ratio> = None;
    let mut set = 0u32;
    let mut cut: i64 = 0;
    for i in 1u32..(1 << n) - 1 {
        let v = i.trailing_zeros() as usize;
        let inside = (masks[v] & set).count_ones() as i64;
        let deg = g.degree(v) as i64;
        if set & (1 << v) == 0 {
            cut += deg - 2 * inside;
        } else {
            cut -= deg - 2 * inside;
        }
        set ^= 1 << v;
        let size = set.count_ones() as u64;
        let small = size.min(n as u64 - size);
        if small == 0 {
            continue;
        }
        let r = Ratio::new(cut as u64, small);
        if best.is_none_or(|b| r < b) {
            best = Some(r);
        }
    }
    Ok(best.expect("at least one proper subset"))
}

/// Half the algebraic connectivity `lambda_2 / 2` of the Laplacian, found by
/// power iteration on `cI - L` with the constant vector projected out.
///
/// This is a screening estimate for graphs too large for [`cheeger_exact`];
/// by Cheeger's inequality it never exceeds the edge expansion. Returns 0 for
/// disconnected graphs.
pub fn expansion_lower_bound(g: &GeneralGraph) -> f64 {
    let n = g.num_vertices();
    if n < 2 || !g.is_connected() {
        return 0.0;
    }
    let shift = 2.0 * g.max_degree() as f64 + 1.0;
    let apply = |v: &[f64], out: &mut [f64]| {
        for u in 0..n {
            let mut lv = g.degree(u) as f64 * v[u];
            for &w in g.neighbors(u) {
                lv -= v[w];
            }
            out[u] = shift * v[u] - lv;
        }
    };
    let deflate = |v: &mut [f64]| {
        let mean = v.iter().sum::<f64>() / n as f64;
        v.iter_mut().for_each(|x| *x -= mean);
        let norm = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>());
        v.iter_mut().for_each(|x| *x /= norm);
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut v: Vec<f64> = (0..n)
        .map(|_| (rand::RngCore::next_u32(&mut rng) as f64) / u32::MAX as f64 - 0.5)
        .collect();
    deflate(&mut v);
    let mut w = vec![0.0; n];
    let mut mu = 0.0;
    for _ in 0..200_000 {
        apply(&v, &mut w);
        let next: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        core::mem::swap(&mut v, &mut w);
        deflate(&mut v);
        let done = (next - mu).abs() < 1e-12 * shift;
        mu = next;
        if done {
            break;
        }
    }
    ((shift - mu) / 2.0).max(0.0)
}
