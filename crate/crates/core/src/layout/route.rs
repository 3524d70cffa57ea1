use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::GridTarget;
use crate::error::LayoutError;

/// What routed paths of one class may not share.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Disjointness {
    Edge,
    Vertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RouteOptions {
    pub seed: u64,
    /// Height increases allowed after the first attempt.
    pub retries: usize,
    /// Random pair orders tried at each height.
    pub orders_per_height: usize,
    pub disjointness: Disjointness,
}

impl Default for RouteOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            retries: 8,
            orders_per_height: 4,
            disjointness: Disjointness::Edge,
        }
    }
}

/// Paths from the bottom face to the top face of a slab grid.
#[derive(Clone, Debug, PartialEq)]
pub struct RoutedPaths {
    pub grid: GridTarget,
    /// Vertex ids from source to sink, one path per input pair.
    pub paths: Vec<Vec<usize>>,
    pub retries_used: usize,
}

impl RoutedPaths {
    pub fn height(&self) -> usize {
        self.grid.height()
    }

    /// Height over base side length.
    pub fn c_d(&self) -> f64 {
        self.height() as f64 / self.grid.extents()[0] as f64
    }

    /// Number of paths through each grid edge, recounted from the paths.
    pub fn edge_usage(&self) -> BTreeMap<(usize, usize), usize> {
        edge_usage(&self.paths)
    }

    pub fn max_edge_usage(&self) -> usize {
        self.edge_usage().values().copied().max().unwrap_or(0)
    }

    /// Whether every path steps between grid neighbours and joins its pair.
    pub fn connects(&self, pairs: &[(Vec<i32>, Vec<i32>)]) -> bool {
        let top = self.height() as i32;
        self.paths.len() == pairs.len()
            && self.paths.iter().zip(pairs).all(|(p, (src, dst))| {
                let mut dst = dst.clone();
                *dst.last_mut().expect("nonempty") = top;
                p.first() == self.grid.vertex(src).as_ref()
                    && p.last() == self.grid.vertex(&dst).as_ref()
                    && p.windows(2).all(|w| self.grid.distance(w[0], w[1]) == 1)
            })
    }
}

pub(crate) fn edge_usage(paths: &[Vec<usize>]) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for p in paths {
        for w in p.windows(2) {
            *out.entry((w[0].min(w[1]), w[0].max(w[1]))).or_insert(0) += 1;
        }
    }
    out
}

/// Rounds of rip-up and reroute before a class is declared unroutable.
const NEGOTIATION_ROUNDS: usize = 100;

#[derive(Clone, Copy, PartialEq)]
struct Cost(f64, usize);

impl Eq for Cost {}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

/// Routes one class of pairs on `grid`: each path rises from its source on
/// the bottom face, stays strictly inside the slab, and enters the top face
/// only at its own sink. Paths are negotiated: every round reroutes each pair
/// by a cheapest path, where shared resources (edges or vertices, by `mode`)
/// cost more the more they are used now and have been overused before.
/// Returns `None` if the paths still overlap after the last round.
pub(crate) fn route_class(
    grid: &GridTarget,
    pairs: &[(usize, usize)],
    order: &[usize],
    mode: Disjointness,
) -> Option<Vec<Vec<usize>>> {
    let h = grid.height();
    let dim = grid.dim();
    let nv = grid.num_vertices();
    let layer = nv / (h + 1);
    if h <= 1 {
        return pairs
            .iter()
            .map(|&(src, dst)| (src + layer == dst).then(|| vec![src, dst]))
            .collect();
    }
    let z_of = |v: usize| v / layer;
    let axis_of = |u: usize, v: usize| {
        let diff = u.abs_diff(v);
        let mut stride = 1;
        let mut axis = 0;
        while stride != diff {
            stride *= grid.extents()[axis];
            axis += 1;
        }
        axis
    };
    let resource = |u: usize, v: usize| match mode {
        Disjointness::Vertex => v,
        Disjointness::Edge => u.min(v) * dim + axis_of(u, v),
    };
    let nres = match mode {
        Disjointness::Vertex => nv,
        Disjointness::Edge => nv * dim,
    };
    let mut usage = vec![0u32; nres];
    let mut history = vec![0.0f64; nres];
    let mut present = 0.5;
    let mut paths: Vec<Vec<usize>> = vec![Vec::new(); pairs.len()];
    let mut dist = vec![f64::INFINITY; nv];
    let mut prev = vec![usize::MAX; nv];
    let mut touched: Vec<usize> = Vec::new();

    let charge = |path: &[usize], usage: &mut [u32], delta: i32| {
        for w in path[1..path.len() - 1].windows(2) {
            let r = resource(w[0], w[1]);
            usage[r] = (usage[r] as i32 + delta) as u32;
        }
        if mode == Disjointness::Vertex {
            let r = path[1];
            usage[r] = (usage[r] as i32 + delta) as u32;
        }
    };

    for _ in 0..NEGOTIATION_ROUNDS {
        for &i in order {
            let (src, dst) = pairs[i];
            if !paths[i].is_empty() {
                let old = core::mem::take(&mut paths[i]);
                charge(&old, &mut usage, -1);
            }
            let start = src + layer;
            let goal = dst - layer;
            for &v in &touched {
                dist[v] = f64::INFINITY;
            }
            touched.clear();
            let enter = |r: usize, usage: &[u32]| (1.0 + history[r]) * (1.0 + present * usage[r] as f64);
            let first = if mode == Disjointness::Vertex {
                enter(start, &usage)
            } else {
                1.0
            };
            dist[start] = first;
            touched.push(start);
            let mut heap = alloc::collections::BinaryHeap::new();
            heap.push(Cost(first, start));
            while let Some(Cost(d, u)) = heap.pop() {
                if d > dist[u] {
                    continue;
                }
                if u == goal {
                    break;
                }
                for v in grid.neighbors(u) {
                    let z = z_of(v);
                    if z == 0 || z == h {
                        continue;
                    }
                    let nd = d + enter(resource(u, v), &usage);
                    if nd < dist[v] {
                        if dist[v].is_infinite() {
                            touched.push(v);
                        }
                        dist[v] = nd;
                        prev[v] = u;
                        heap.push(Cost(nd, v));
                    }
                }
            }
            let mut p = vec![dst, goal];
            let mut v = goal;
            while v != start {
                v = prev[v];
                p.push(v);
            }
            p.push(src);
            p.reverse();
            charge(&p, &mut usage, 1);
            paths[i] = p;
        }
        let mut clean = true;
        for (r, &u) in usage.iter().enumerate() {
            if u > 1 {
                clean = false;
                history[r] += (u - 1) as f64;
            }
        }
        if clean {
            return Some(paths);
        }
        present *= 1.3;
    }
    None
}

/// Routes pairs from the bottom face (`z = 0`) to the top face (`z = height`) of
/// `grid` with pairwise disjoint paths. When routing fails the height grows by
/// the base side length, up to `opts.retries` times; sinks move to the new top.
pub fn route_grid(
    pairs: &[(Vec<i32>, Vec<i32>)],
    grid: &GridTarget,
    opts: &RouteOptions,
) -> Result<RoutedPaths, LayoutError> {
    let dim = grid.dim();
    if dim < 2 {
        return Err(LayoutError::BadDimension(dim));
    }
    let top = grid.height() as i32;
    for (src, dst) in pairs {
        let ok = src.len() == dim
            && dst.len() == dim
            && src[dim - 1] == 0
            && dst[dim - 1] == top
            && grid.contains(src)
            && grid.contains(dst);
        if !ok {
            return Err(LayoutError::BadRequest(alloc::format!(
                "pair {src:?} -> {dst:?} must run from the bottom face to the top face"
            )));
        }
    }
    for (name, ends) in [("source", 0usize), ("sink", 1)] {
        let mut v: Vec<&Vec<i32>> = pairs.iter().map(|p| if ends == 0 { &p.0 } else { &p.1 }).collect();
        v.sort();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(LayoutError::BadRequest(alloc::format!("repeated {name}")));
        }
    }
    let m = grid.extents()[0];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut height = grid.height();
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    for attempt in 0..=opts.retries {
        let mut extents = grid.extents().to_vec();
        extents[dim - 1] = height + 1;
        let g = GridTarget::new(extents, grid.origin().to_vec());
        let ids: Vec<(usize, usize)> = pairs
            .iter()
            .map(|(s, d)| {
                let mut d = d.clone();
                d[dim - 1] = height as i32;
                (g.vertex(s).expect("checked"), g.vertex(&d).expect("checked"))
            })
            .collect();
        for _ in 0..opts.orders_per_height.max(1) {
            order.shuffle(&mut rng);
            if let Some(paths) = route_class(&g, &ids, &order, opts.disjointness) {
                return Ok(RoutedPaths {
                    grid: g,
                    paths,
                    retries_used: attempt,
                });
            }
        }
        if attempt < opts.retries {
            height += m;
        }
    }
    let (src, dst) = pairs.get(*order.first().unwrap_or(&0)).cloned().unwrap_or_default();
    Err(LayoutError::RoutingFailed {
        source_vertex: src,
        sink: dst,
        retries: opts.retries,
        height,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_permutation_is_straight() {
        let grid = GridTarget::slab(2, 4, 4);
        let pairs: Vec<_> = (0..4).map(|x| (vec![x, 0], vec![x, 4])).collect();
        let r = route_grid(&pairs, &grid, &RouteOptions::default()).unwrap();
        assert_eq!(r.height(), 4);
        assert!(r.paths.iter().all(|p| p.len() == 5));
        assert_eq!(r.max_edge_usage(), 1);
        assert!(r.connects(&pairs));
    }

    #[test]
    fn crossing_pairs_are_edge_disjoint() {
        let grid = GridTarget::slab(2, 4, 4);
        let pairs = vec![
            (vec![0, 0], vec![2, 4]),
            (vec![2, 0], vec![0, 4]),
            (vec![3, 0], vec![1, 4]),
        ];
        let r = route_grid(&pairs, &grid, &RouteOptions::default()).unwrap();
        assert_eq!(r.max_edge_usage(), 1);
        assert!(r.connects(&pairs));
    }

    #[test]
    fn full_reversal_in_a_plane_is_unroutable() {
        // Every row of a fully used 2D slab can only pass paths straight up.
        let grid = GridTarget::slab(2, 3, 3);
        let pairs: Vec<_> = (0..3).map(|x| (vec![x, 0], vec![2 - x, 3])).collect();
        let opts = RouteOptions {
            retries: 1,
            ..RouteOptions::default()
        };
        assert!(matches!(
            route_grid(&pairs, &grid, &opts),
            Err(LayoutError::RoutingFailed { .. })
        ));
    }

    #[test]
    fn reversal_in_three_dimensions() {
        let grid = GridTarget::slab(3, 4, 4);
        let pairs: Vec<_> = (0..16)
            .map(|i| (vec![i % 4, i / 4, 0], vec![3 - i % 4, 3 - i / 4, 4]))
            .collect();
        let r = route_grid(&pairs, &grid, &RouteOptions::default()).unwrap();
        assert_eq!(r.max_edge_usage(), 1);
        assert!(r.connects(&pairs));
    }

    #[test]
    fn rejects_bad_endpoints() {
        let grid = GridTarget::slab(2, 4, 4);
        let pairs = vec![(vec![0, 1], vec![0, 4])];
        assert!(matches!(
            route_grid(&pairs, &grid, &RouteOptions::default()),
            Err(LayoutError::BadRequest(_))
        ));
    }
}
