//! Placing wire codes on grids and graphs.
//!
//! [`layout_2d`] lays branches along one row and one check per row above it.
//! [`layout_dd`] puts branches on the bottom face of a D-dimensional box, check
//! sites on the top face, and routes each color class of incidence pairs by
//! vertex-disjoint paths through the interior.

mod color;
mod planar;
mod route;
mod spatial;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::GeneralGraph;
use crate::wire::WireCode;

pub use color::{color_classes, ColorClasses};
pub use planar::layout_2d;
pub use route::{route_grid, Disjointness, RouteOptions, RoutedPaths};
pub use spatial::{layout_dd, DdOptions};

/// Axis-aligned box of integer points with nearest-neighbour edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridTarget {
    extents: Vec<usize>,
    origin: Vec<i32>,
}

impl GridTarget {
    /// Box with the given per-axis sizes whose lowest corner is `origin`.
    pub fn new(extents: Vec<usize>, origin: Vec<i32>) -> Self {
        assert_eq!(extents.len(), origin.len());
        assert!(extents.iter().all(|&e| e >= 1));
        Self { extents, origin }
    }

    /// `[m]^(dim-1) x {0..=height}` with the last axis as height.
    pub fn slab(dim: usize, m: usize, height: usize) -> Self {
        let mut extents = vec![m; dim - 1];
        extents.push(height + 1);
        Self::new(extents, vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.extents.len()
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn origin(&self) -> &[i32] {
        &self.origin
    }

    /// Largest coordinate along the last axis.
    pub fn height(&self) -> usize {
        self.extents[self.dim() - 1] - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.extents.iter().product()
    }

    pub fn contains(&self, coords: &[i32]) -> bool {
        coords.len() == self.dim()
            && coords
                .iter()
                .zip(&self.origin)
                .zip(&self.extents)
                .all(|((&c, &o), &e)| c >= o && ((c - o) as usize) < e)
    }

    pub fn vertex(&self, coords: &[i32]) -> Option<usize> {
        if !self.contains(coords) {
            return None;
        }
        let mut v = 0;
        for a in (0..self.dim()).rev() {
            v = v * self.extents[a] + (coords[a] - self.origin[a]) as usize;
        }
        Some(v)
    }

    pub fn coords(&self, mut v: usize) -> Vec<i32> {
        let mut out = Vec::with_capacity(self.dim());
        for a in 0..self.dim() {
            out.push((v % self.extents[a]) as i32 + self.origin[a]);
            v /= self.extents[a];
        }
        out
    }

    /// Manhattan distance between two vertices.
    pub fn distance(&self, u: usize, v: usize) -> usize {
        let (a, b) = (self.coords(u), self.coords(v));
        a.iter().zip(&b).map(|(x, y)| x.abs_diff(*y) as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let c = self.coords(v);
        let mut out = Vec::with_capacity(2 * self.dim());
        let mut stride = 1;
        for (a, &ca) in c.iter().enumerate() {
            let local = (ca - self.origin[a]) as usize;
            if local > 0 {
                out.push(v - stride);
            }
            if local + 1 < self.extents[a] {
                out.push(v + stride);
            }
            stride *= self.extents[a];
        }
        out
    }
}

/// Connectivity a wire code is laid out on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Grid(GridTarget),
    Graph(GeneralGraph),
}

impl Target {
    pub fn num_vertices(&self) -> usize {
        match self {
            Target::Grid(g) => g.num_vertices(),
            Target::Graph(g) => g.num_vertices(),
        }
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        match self {
            Target::Grid(g) => g.distance(u, v) == 1,
            Target::Graph(g) => g.has_edge(u, v),
        }
    }

    fn distance(&self, u: usize, v: usize) -> usize {
        match self {
            Target::Grid(g) => g.distance(u, v),
            Target::Graph(g) => g.bfs_distances(u)[v],
        }
    }
}

/// Figures recorded while building a layout.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LayoutStats {
    /// Side length `m` of the base face (or row width in 2D).
    pub base: usize,
    /// Height of the routing box; 0 when there is none.
    pub height: usize,
    /// Number of color classes routed.
    pub classes: usize,
    /// Height increases needed before routing succeeded.
    pub retries_used: usize,
    /// Achieved `height / base`.
    pub c_d: f64,
    /// Largest number of routed paths sharing one edge of the target.
    pub congestion: usize,
}

/// A wire code with every qubit assigned to a target vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct PlacedWireCode {
    wire: WireCode,
    target: Target,
    placement: Vec<usize>,
    stats: LayoutStats,
}

impl PlacedWireCode {
    pub fn new(
        wire: WireCode,
        target: Target,
        placement: Vec<usize>,
        stats: LayoutStats,
    ) -> Result<Self, alloc::string::String> {
        if placement.len() != wire.num_qubits() {
            return Err(alloc::format!(
                "{} placements for {} qubits",
                placement.len(),
                wire.num_qubits()
            ));
        }
        let nv = target.num_vertices();
        if let Some(q) = placement.iter().position(|&v| v >= nv) {
            return Err(alloc::format!("qubit {q} placed outside the target"));
        }
        Ok(Self {
            wire,
            target,
            placement,
            stats,
        })
    }

    pub fn wire(&self) -> &WireCode {
        &self.wire
    }

    pub fn into_wire(self) -> WireCode {
        self.wire
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    pub fn placement(&self) -> &[usize] {
        &self.placement
    }

    pub fn vertex_of(&self, q: usize) -> usize {
        self.placement[q]
    }

    pub fn stats(&self) -> &LayoutStats {
        &self.stats
    }

    /// Coordinates of qubit `q` on a grid target.
    pub fn coords_of(&self, q: usize) -> Option<Vec<i32>> {
        match &self.target {
            Target::Grid(g) => Some(g.coords(self.placement[q])),
            Target::Graph(_) => None,
        }
    }

    /// Number of qubits on each occupied vertex.
    pub fn stacking(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &v in &self.placement {
            *out.entry(v).or_insert(0) += 1;
        }
        out
    }

    pub fn max_stacking(&self) -> usize {
        self.stacking().values().copied().max().unwrap_or(0)
    }

    /// Side lengths of the bounding box of all placed qubits (grid targets).
    pub fn bounding_box(&self) -> Option<Vec<usize>> {
        let Target::Grid(g) = &self.target else {
            return None;
        };
        let mut lo = vec![i32::MAX; g.dim()];
        let mut hi = vec![i32::MIN; g.dim()];
        for &v in &self.placement {
            for (a, c) in g.coords(v).into_iter().enumerate() {
                lo[a] = lo[a].min(c);
                hi[a] = hi[a].max(c);
            }
        }
        Some(lo.iter().zip(&hi).map(|(l, h)| (h - l + 1) as usize).collect())
    }

    pub fn check_locality(&self) -> LocalityReport {
        check_locality(self)
    }
}

/// A gauge generator whose support is not local on the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub gauge: usize,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalityReport {
    pub violations: Vec<Violation>,
    pub max_stacking: usize,
    /// Largest target distance between two qubits of one gauge generator.
    pub max_diameter: usize,
}

impl LocalityReport {
    pub fn is_local(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every multi-qubit gauge generator: on a grid its qubits must sit on
/// identical or adjacent vertices; on a graph they must lie on one vertex or
/// one edge.
pub fn check_locality(placed: &PlacedWireCode) -> LocalityReport {
    let sub = placed.wire.subsystem();
    let mut violations = Vec::new();
    let mut max_diameter = 0;
    for (i, g) in sub.gauges().iter().enumerate() {
        if g.weight() < 2 {
            continue;
        }
        let mut vs: Vec<usize> = g.support().map(|q| placed.placement[q]).collect();
        vs.sort_unstable();
        vs.dedup();
        let ok = match (&placed.target, vs.len()) {
            (_, 1) => true,
            (Target::Graph(_), 2) => placed.target.adjacent(vs[0], vs[1]),
            (Target::Graph(_), _) => false,
            (Target::Grid(_), _) => vs
                .iter()
                .enumerate()
                .all(|(a, &u)| vs[a + 1..].iter().all(|&v| placed.target.adjacent(u, v))),
        };
        let diameter = if ok {
            usize::from(vs.len() > 1)
        } else {
            let mut d = 0;
            for (a, &u) in vs.iter().enumerate() {
                for &v in &vs[a + 1..] {
                    d = d.max(placed.target.distance(u, v));
                }
            }
            d
        };
        max_diameter = max_diameter.max(diameter);
        if !ok {
            violations.push(Violation { gauge: i, vertices: vs });
        }
    }
    LocalityReport {
        violations,
        max_stacking: placed.max_stacking(),
        max_diameter,
    }
}

/// Collects per-qubit coordinates during construction and fixes the grid at the end.
pub(crate) struct Placer {
    coords: Vec<Option<Vec<i32>>>,
}

impl Placer {
    pub(crate) fn new() -> Self {
        Self { coords: Vec::new() }
    }

    pub(crate) fn put(&mut self, q: usize, c: Vec<i32>) {
        if self.coords.len() <= q {
            self.coords.resize(q + 1, None);
        }
        debug_assert!(self.coords[q].is_none(), "qubit {q} placed twice");
        self.coords[q] = Some(c);
    }

    pub(crate) fn get(&self, q: usize) -> &[i32] {
        self.coords[q].as_deref().expect("qubit placed")
    }

    /// Maps every qubit onto `grid`, or onto the bounding box when `grid` is `None`.
    pub(crate) fn finish(self, n: usize, grid: Option<GridTarget>) -> (GridTarget, Vec<usize>) {
        assert_eq!(self.coords.len(), n, "every qubit must be placed");
        let coords: Vec<Vec<i32>> = self.coords.into_iter().map(|c| c.expect("placed")).collect();
        let grid = grid.unwrap_or_else(|| {
            let dim = coords[0].len();
            let mut lo = vec![i32::MAX; dim];
            let mut hi = vec![i32::MIN; dim];
            for c in &coords {
                for a in 0..dim {
                    lo[a] = lo[a].min(c[a]);
                    hi[a] = hi[a].max(c[a]);
                }
            }
            let extents = lo.iter().zip(&hi).map(|(l, h)| (h - l + 1) as usize).collect();
            GridTarget::new(extents, lo)
        });
        let placement = coords
            .iter()
            .map(|c| grid.vertex(c).expect("coordinates inside the grid"))
            .collect();
        (grid, placement)
    }
}
