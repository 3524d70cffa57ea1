//! Embedding wire codes into arbitrary connectivity graphs.
//!
//! Every input qubit and check is assigned a vertex, each incidence pair is
//! routed along a path with congestion-aware shortest paths, and the wire code
//! edge carrying that incidence is stretched along the path. Every
//! multi-qubit gauge generator of the result lies on one vertex or one edge.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{Register, StabilizerCode};
use crate::error::GraphError;
use crate::graph::GeneralGraph;
use crate::layout::{color_classes, LayoutStats, PlacedWireCode, Target};
use crate::wire::{build_wire_code, BranchMode, WireCode};

/// Congestion the routing lemma guarantees on good expanders; reported, not enforced.
pub const CONGESTION_TARGET: usize = 15;

/// Vertex assignment and routed paths for every incidence pair of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingPlan {
    qubit_vertex: Vec<usize>,
    check_vertex: Vec<usize>,
    paths: BTreeMap<(usize, usize), Vec<usize>>,
    congestion: BTreeMap<(usize, usize), usize>,
    c: usize,
}

impl EmbeddingPlan {
    /// Builds a plan; `paths[(q, s)]` runs from `qubit_vertex[q]` to `check_vertex[s]`.
    /// Congestion and `c` are recounted from the paths.
    pub fn new(
        qubit_vertex: Vec<usize>,
        check_vertex: Vec<usize>,
        paths: BTreeMap<(usize, usize), Vec<usize>>,
    ) -> Self {
        let mut plan = Self {
            qubit_vertex,
            check_vertex,
            paths,
            congestion: BTreeMap::new(),
            c: 0,
        };
        plan.finalize();
        plan
    }

    fn finalize(&mut self) {
        let all: Vec<Vec<usize>> = self.paths.values().cloned().collect();
        self.congestion = edge_usage(&all);
        let mut on_vertex: BTreeMap<usize, usize> = BTreeMap::new();
        for &v in self.qubit_vertex.iter().chain(&self.check_vertex) {
            *on_vertex.entry(v).or_insert(0) += 1;
        }
        for p in &all {
            for &v in p.iter().skip(1).take(p.len().saturating_sub(2)) {
                *on_vertex.entry(v).or_insert(0) += 1;
            }
        }
        self.c = on_vertex
            .values()
            .chain(self.congestion.values())
            .copied()
            .max()
            .unwrap_or(0);
    }

    /// Vertex `eta(q)` of every input qubit.
    pub fn qubit_vertex(&self) -> &[usize] {
        &self.qubit_vertex
    }

    /// Vertex `eta(s)` of every input check.
    pub fn check_vertex(&self) -> &[usize] {
        &self.check_vertex
    }

    pub fn paths(&self) -> &BTreeMap<(usize, usize), Vec<usize>> {
        &self.paths
    }

    pub fn path(&self, q: usize, s: usize) -> Option<&[usize]> {
        self.paths.get(&(q, s)).map(Vec::as_slice)
    }

    /// Paths through each graph edge `(u, v)`, `u < v`.
    pub fn congestion(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.congestion
    }

    pub fn max_congestion(&self) -> usize {
        self.congestion.values().copied().max().unwrap_or(0)
    }

    /// Largest number of assigned items plus path interiors on one vertex, or
    /// paths on one edge.
    pub fn c(&self) -> usize {
        self.c
    }

    pub fn is_injective(&self) -> bool {
        let mut all: Vec<usize> = self.qubit_vertex.iter().chain(&self.check_vertex).copied().collect();
        all.sort_unstable();
        all.windows(2).all(|w| w[0] != w[1])
    }

    pub fn longest_path(&self) -> usize {
        self.paths.values().map(Vec::len).max().unwrap_or(0)
    }

    /// Checks that every path walks along edges of `g` between the right endpoints.
    pub fn validate(&self, g: &GeneralGraph) -> Result<(), GraphError> {
        let n = g.num_vertices();
        for &v in self.qubit_vertex.iter().chain(&self.check_vertex) {
            if v >= n {
                return Err(GraphError::NoSuchVertex { vertex: v, vertices: n });
            }
        }
        for (&(q, s), p) in &self.paths {
            let (Some(&a), Some(&b)) = (self.qubit_vertex.get(q), self.check_vertex.get(s)) else {
                return Err(GraphError::PlanMismatch(format!("path for unknown pair ({q}, {s})")));
            };
            if p.first() != Some(&a) || p.last() != Some(&b) {
                return Err(GraphError::PlanMismatch(format!(
                    "path for ({q}, {s}) has wrong endpoints"
                )));
            }
            if let Some(w) = p.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
                return Err(GraphError::PlanMismatch(format!("({}, {}) is not an edge", w[0], w[1])));
            }
        }
        Ok(())
    }
}

fn edge_usage(paths: &[Vec<usize>]) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for p in paths {
        for w in p.windows(2) {
            *out.entry((w[0].min(w[1]), w[0].max(w[1]))).or_insert(0) += 1;
        }
    }
    out
}

/// Paths for a list of vertex pairs with their edge usage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphRouting {
    pub paths: Vec<Vec<usize>>,
    pub edge_usage: BTreeMap<(usize, usize), usize>,
    pub congestion: usize,
}

/// Shortest-path router whose edge cost doubles with every path already using the edge.
struct CongestionRouter<'a> {
    g: &'a GeneralGraph,
    usage: BTreeMap<(usize, usize), u32>,
}

impl<'a> CongestionRouter<'a> {
    fn new(g: &'a GeneralGraph) -> Self {
        Self {
            g,
            usage: BTreeMap::new(),
        }
    }

    fn cost(&self, u: usize, v: usize) -> u64 {
        let used = self.usage.get(&(u.min(v), u.max(v))).copied().unwrap_or(0);
        1u64 << used.min(40)
    }

    fn route(&mut self, src: usize, dst: usize) -> Result<Vec<usize>, GraphError> {
        let n = self.g.num_vertices();
        let mut dist = vec![u64::MAX; n];
        let mut prev = vec![usize::MAX; n];
        let mut heap = BinaryHeap::new();
        dist[src] = 0;
        heap.push(Reverse((0u64, src)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if u == dst {
                break;
            }
            if d > dist[u] {
                continue;
            }
            for &v in self.g.neighbors(u) {
                let nd = d.saturating_add(self.cost(u, v));
                if nd < dist[v] {
                    dist[v] = nd;
                    prev[v] = u;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        if dist[dst] == u64::MAX {
            return Err(GraphError::Disconnected { from: src, to: dst });
        }
        let mut path = vec![dst];
        let mut v = dst;
        while v != src {
            v = prev[v];
            path.push(v);
        }
        path.reverse();
        for w in path.windows(2) {
            *self.usage.entry((w[0].min(w[1]), w[0].max(w[1]))).or_insert(0) += 1;
        }
        Ok(path)
    }
}

/// Routes `pairs` one after another in a seeded random order, each along a
/// cheapest path where an edge already used by `u` paths costs `2^u`.
pub fn route_congestion(g: &GeneralGraph, pairs: &[(usize, usize)], seed: u64) -> Result<GraphRouting, GraphError> {
    let n = g.num_vertices();
    for &(a, b) in pairs {
        for v in [a, b] {
            if v >= n {
                return Err(GraphError::NoSuchVertex { vertex: v, vertices: n });
            }
        }
    }
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut router = CongestionRouter::new(g);
    let mut paths = vec![Vec::new(); pairs.len()];
    for i in order {
        paths[i] = router.route(pairs[i].0, pairs[i].1)?;
    }
    let edge_usage = edge_usage(&paths);
    let congestion = edge_usage.values().copied().max().unwrap_or(0);
    Ok(GraphRouting {
        paths,
        edge_usage,
        congestion,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmbedOptions {
    pub seed: u64,
    /// Weight- and degree-reduce the code before stretching it along the paths.
    pub post_reduce: bool,
    /// Let several qubits and checks share a vertex when the graph is too small.
    pub shared_vertices: bool,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            post_reduce: true,
            shared_vertices: false,
        }
    }
}

/// Result of [`embed_on_graph`].
#[derive(Clone, Debug, PartialEq)]
pub struct GraphEmbedding {
    pub placed: PlacedWireCode,
    pub plan: EmbeddingPlan,
}

/// Hop distances from a vertex, computed on demand.
struct DistanceCache<'a> {
    g: &'a GeneralGraph,
    rows: BTreeMap<usize, Vec<usize>>,
}

impl DistanceCache<'_> {
    fn get(&mut self, u: usize, v: usize) -> usize {
        let g = self.g;
        self.rows.entry(u).or_insert_with(|| g.bfs_distances(u))[v]
    }
}

/// Injective vertex assignment for qubits `0..n` and checks `n..n+m`,
/// improved by `2 n` random swaps that shorten the total incidence distance.
fn assign_vertices(code: &StabilizerCode, g: &GeneralGraph, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = code.num_qubits();
    let items = n + code.num_checks();
    let mut vertices: Vec<usize> = (0..g.num_vertices()).collect();
    vertices.shuffle(rng);
    let mut eta: Vec<usize> = vertices[..items].to_vec();
    let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); items];
    for (q, s) in code.incidences() {
        neighbours[q].push(n + s);
        neighbours[n + s].push(q);
    }
    let mut dist = DistanceCache {
        g,
        rows: BTreeMap::new(),
    };
    let local = |eta: &[usize], a: usize, at: usize, dist: &mut DistanceCache| -> usize {
        neighbours[a].iter().map(|&b| dist.get(at, eta[b])).sum()
    };
    for _ in 0..2 * n {
        let a = rng.random_range(0..items);
        let b = rng.random_range(0..items);
        if a == b {
            continue;
        }
        let before = local(&eta, a, eta[a], &mut dist) + local(&eta, b, eta[b], &mut dist);
        eta.swap(a, b);
        let after = local(&eta, a, eta[a], &mut dist) + local(&eta, b, eta[b], &mut dist);
        if after >= before {
            eta.swap(a, b);
        }
    }
    eta
}

/// Lays `code` out on `g`: assigns distinct vertices to qubits and checks,
/// routes every incidence pair class by class with shared congestion, and
/// stretches the corresponding wire code edge along its path.
///
/// With `post_reduce` the wire code is the weight- and degree-reduced one,
/// so every gauge generator has weight at most 3; otherwise each incidence
/// gets its own one-copy branch and each check stays whole at its vertex.
pub fn embed_on_graph(
    code: &StabilizerCode,
    g: &GeneralGraph,
    opts: &EmbedOptions,
) -> Result<GraphEmbedding, GraphError> {
    let n = code.num_qubits();
    let m = code.num_checks();
    let nv = g.num_vertices();
    if nv == 0 {
        return Err(GraphError::Empty);
    }
    if let Some(to) = g.bfs_distances(0).iter().position(|&d| d == usize::MAX) {
        return Err(GraphError::Disconnected { from: 0, to });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let eta: Vec<usize> = if n + m <= nv {
        assign_vertices(code, g, &mut rng)
    } else if opts.shared_vertices {
        (0..n + m).map(|i| i % nv).collect()
    } else {
        return Err(GraphError::TooFewVertices {
            needed: n + m,
            available: nv,
        });
    };
    let (qubit_vertex, check_vertex) = (eta[..n].to_vec(), eta[n..].to_vec());

    let classes = color_classes(code);
    let mut router = CongestionRouter::new(g);
    let mut paths = BTreeMap::new();
    for class in classes.classes() {
        let mut order = class.clone();
        order.shuffle(&mut rng);
        for (q, s) in order {
            let p = router.route(qubit_vertex[q], check_vertex[s])?;
            paths.insert((q, s), p);
        }
    }
    let plan = EmbeddingPlan::new(qubit_vertex, check_vertex, paths);

    let wire = if opts.post_reduce {
        build_wire_code(code)
    } else {
        let mut wire = WireCode::skeleton(code, BranchMode::PerIncidence);
        for s in 0..m {
            wire.place_check_whole(s);
        }
        wire
    };
    let (out, placement) = stretch_along(&wire, &plan, g)?;
    let stats = LayoutStats {
        classes: classes.len(),
        congestion: plan.max_congestion(),
        ..LayoutStats::default()
    };
    let placed =
        PlacedWireCode::new(out, Target::Graph(g.clone()), placement, stats).map_err(GraphError::PlanMismatch)?;
    Ok(GraphEmbedding { placed, plan })
}

/// Stretches every slot edge of `wire` along its planned path and returns the
/// stretched code with a vertex for each qubit.
fn stretch_along(
    wire: &WireCode,
    plan: &EmbeddingPlan,
    g: &GeneralGraph,
) -> Result<(WireCode, Vec<usize>), GraphError> {
    let input = wire.input();
    let (n, m) = (input.num_qubits(), input.num_checks());
    if plan.qubit_vertex.len() != n || plan.check_vertex.len() != m {
        return Err(GraphError::PlanMismatch(format!(
            "plan covers {} qubits and {} checks, code has {n} and {m}",
            plan.qubit_vertex.len(),
            plan.check_vertex.len()
        )));
    }
    if !wire.edge_lengths().is_empty() {
        return Err(GraphError::PlanMismatch("wire code already has stretched edges".into()));
    }
    plan.validate(g)?;
    let sub = wire.subsystem();
    let mut placement = vec![usize::MAX; wire.num_qubits()];
    for (q, v) in placement.iter_mut().enumerate().take(n) {
        *v = plan.qubit_vertex[q];
    }
    for br in wire.branches() {
        for &l in br.links() {
            for r in sub.gauge(l).support() {
                if r >= n {
                    placement[r] = plan.qubit_vertex[br.target()];
                }
            }
        }
    }
    for s in 0..m {
        for &l in wire.anc_of(s) {
            for a in sub.gauge(l).support() {
                if sub.register_of(a) == Register::Anc {
                    placement[a] = plan.check_vertex[s];
                }
            }
        }
    }
    if let Some(q) = placement.iter().position(|&v| v == usize::MAX) {
        return Err(GraphError::PlanMismatch(format!(
            "qubit {q} belongs to no qubit or check"
        )));
    }

    let mut out = wire.clone();
    for s in 0..m {
        for sl in wire.slots(s).to_vec() {
            let path = plan
                .path(sl.qubit, s)
                .ok_or_else(|| GraphError::PlanMismatch(format!("no path for ({}, {s})", sl.qubit)))?;
            let holder = *out
                .anc_of(s)
                .iter()
                .find(|&&l| out.subsystem().gauge(l).acts_on(sl.site))
                .ok_or_else(|| GraphError::PlanMismatch(format!("check {s} has no gauge on its slot")))?;
            let new = out
                .stretch_edge(holder, sl.site, path.len())
                .map_err(|e| GraphError::PlanMismatch(format!("{e}")))?;
            placement.extend(path[1..].iter().copied());
            debug_assert_eq!(new.len(), path.len() - 1);
        }
    }
    Ok((out, placement))
}

/// Places `wire`, an unstretched wire code of the plan's input code, on `g`:
/// data and branch qubits at `eta(q)`, check ancillas at `eta(s)`, and every
/// slot edge stretched to the length of its path with one new qubit per path
/// vertex after the first.
pub fn embed_with_plan(wire: &WireCode, plan: &EmbeddingPlan, g: &GeneralGraph) -> Result<PlacedWireCode, GraphError> {
    let (out, placement) = stretch_along(wire, plan, g)?;
    let stats = LayoutStats {
        congestion: plan.max_congestion(),
        ..LayoutStats::default()
    };
    PlacedWireCode::new(out, Target::Graph(g.clone()), placement, stats).map_err(GraphError::PlanMismatch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::compute_k;
    use crate::codes;

    fn recount(paths: &[Vec<usize>]) -> usize {
        let mut edges: Vec<(usize, usize)> = paths
            .iter()
            .flat_map(|p| p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))))
            .collect();
        edges.sort_unstable();
        edges.chunk_by(|a, b| a == b).map(<[_]>::len).max().unwrap_or(0)
    }

    #[test]
    fn routing_examples() {
        let g = GeneralGraph::cycle(6);
        let r = route_congestion(&g, &[(0, 2)], 1).unwrap();
        assert_eq!(r.paths, vec![vec![0, 1, 2]]);
        assert_eq!(r.congestion, 1);

        let k = GeneralGraph::complete(8);
        let pairs: Vec<_> = (0..4).map(|i| (2 * i, 2 * i + 1)).collect();
        assert_eq!(route_congestion(&k, &pairs, 0).unwrap().congestion, 1);

        let g = GeneralGraph::random_regular(64, 3, 11);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pairs: Vec<_> = (0..32)
            .map(|_| (rng.random_range(0..64), rng.random_range(0..64)))
            .collect();
        let r = route_congestion(&g, &pairs, 3).unwrap();
        assert_eq!(r.congestion, recount(&r.paths));
        assert!(r.congestion <= CONGESTION_TARGET);
        for (p, &(a, b)) in r.paths.iter().zip(&pairs) {
            assert_eq!((p[0], *p.last().unwrap()), (a, b));
            assert!(p.windows(2).all(|w| g.has_edge(w[0], w[1])));
        }
    }

    fn check_embedding(code: &StabilizerCode, g: &GeneralGraph, opts: &EmbedOptions) -> GraphEmbedding {
        let e = embed_on_graph(code, g, opts).unwrap();
        let wire = e.placed.wire();
        assert_eq!(compute_k(wire.subsystem()), code.k());
        for s in 0..code.num_checks() {
            wire.stabilizer_recovery(s).unwrap();
        }
        let report = e.placed.check_locality();
        assert!(report.is_local(), "{:?}", report.violations);
        e.plan.validate(g).unwrap();
        e
    }

    #[test]
    fn repetition_on_a_cycle() {
        let e = check_embedding(&codes::repetition(3), &GeneralGraph::cycle(6), &EmbedOptions::default());
        assert!(e.plan.is_injective());
    }

    #[test]
    fn five_qubit_on_random_regular_graph() {
        let g = GeneralGraph::random_regular(64, 3, 2);
        for post_reduce in [true, false] {
            let opts = EmbedOptions {
                post_reduce,
                ..EmbedOptions::default()
            };
            let e = check_embedding(&codes::five_qubit(), &g, &opts);
            if post_reduce {
                e.placed.wire().check_invariants().unwrap();
            }
            assert!(e.plan.c() >= 1);
        }
    }

    #[test]
    fn two_vertex_graph_needs_shared_vertices() {
        let g = GeneralGraph::complete(2);
        let five = codes::five_qubit();
        assert_eq!(
            embed_on_graph(&five, &g, &EmbedOptions::default()).unwrap_err(),
            GraphError::TooFewVertices {
                needed: 9,
                available: 2
            }
        );
        let opts = EmbedOptions {
            shared_vertices: true,
            ..EmbedOptions::default()
        };
        let e = check_embedding(&five, &g, &opts);
        assert!(e.placed.max_stacking() > 3);
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let g = GeneralGraph::new(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let e = embed_on_graph(&codes::repetition(3), &g, &EmbedOptions::default());
        assert_eq!(e.unwrap_err(), GraphError::Disconnected { from: 0, to: 3 });
    }

    #[test]
    fn unit_plan_leaves_the_code_unchanged() {
        let five = codes::five_qubit();
        let wire = build_wire_code(&five);
        let g = GeneralGraph::new(1, &[]).unwrap();
        let paths = five.incidences().into_iter().map(|p| (p, vec![0])).collect();
        let plan = EmbeddingPlan::new(vec![0; 5], vec![0; 4], paths);
        let placed = embed_with_plan(&wire, &plan, &g).unwrap();
        assert_eq!(placed.wire().subsystem(), wire.subsystem());
    }

    #[test]
    fn one_long_path_adds_its_interior() {
        let rep = codes::repetition(3);
        let wire = build_wire_code(&rep);
        let g = GeneralGraph::path(12);
        let mut paths: BTreeMap<(usize, usize), Vec<usize>> =
            rep.incidences().into_iter().map(|p| (p, vec![0])).collect();
        let mut qv = vec![0; 3];
        qv[0] = 6;
        paths.insert((0, 0), (0..=6).rev().collect());
        let plan = EmbeddingPlan::new(qv, vec![0; 2], paths);
        let placed = embed_with_plan(&wire, &plan, &g).unwrap();
        assert_eq!(placed.wire().num_qubits(), wire.num_qubits() + 6);
        assert_eq!(compute_k(placed.wire().subsystem()), 1);
        assert!(placed.check_locality().is_local());
    }
}
