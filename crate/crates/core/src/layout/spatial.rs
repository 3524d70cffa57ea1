use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::route::{edge_usage, route_class};
use super::{color_classes, layout_2d, Disjointness, GridTarget, LayoutStats, PlacedWireCode, Placer, Target};
use crate::code::{Register, StabilizerCode};
use crate::error::LayoutError;
use crate::pauli::{Pauli, SparsePauli};
use crate::wire::{BranchMode, Owner, WireCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DdOptions {
    pub seed: u64,
    /// Height increases allowed after the first attempt.
    pub retries: usize,
    /// Random pair orders tried per class at each height.
    pub orders_per_height: usize,
}

impl Default for DdOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            retries: 8,
            orders_per_height: 4,
        }
    }
}

/// Coordinates of the `t`-th vertex of `[m]^k` in boustrophedon order, where
/// consecutive vertices are grid neighbours.
fn snake(t: usize, m: usize, k: usize) -> Vec<i32> {
    let mut digits = Vec::with_capacity(k);
    let mut rest = t;
    for _ in 0..k {
        digits.push(rest % m);
        rest /= m;
    }
    let mut out = vec![0i32; k];
    let mut higher = 0usize;
    for a in (0..k).rev() {
        out[a] = if higher % 2 == 1 { m - 1 - digits[a] } else { digits[a] } as i32;
        higher += out[a] as usize;
    }
    out
}

/// Column width of the strip owned by a qubit of total degree `delta`.
fn strip_width(delta: usize) -> usize {
    delta.max(1) + 1
}

/// First-fit strip origins `(row pair, column)` for side `m`, or `None` if the
/// strips do not fit on the bottom face.
fn pack_strips(widths: &[usize], m: usize, dim: usize) -> Option<Vec<(usize, usize)>> {
    let rows = m / 2 * m.pow(dim as u32 - 3);
    let mut out = Vec::with_capacity(widths.len());
    let (mut row, mut col) = (0usize, 0usize);
    for &w in widths {
        if w > m {
            return None;
        }
        if col + w > m {
            row += 1;
            col = 0;
        }
        if row >= rows {
            return None;
        }
        out.push((row, col));
        col += w;
    }
    Some(out)
}

/// Bottom-face coordinates (without height) of column `x`, row `y` of row pair `row`.
fn face_coords(row: usize, x: i32, y_main: bool, m: usize, dim: usize) -> Vec<i32> {
    let half = m / 2;
    let mut c = vec![x, (2 * (row % half) + usize::from(y_main)) as i32];
    let mut rest = row / half;
    for _ in 2..dim - 1 {
        c.push((rest % m) as i32);
        rest /= m;
    }
    c
}

/// Check, slot, source and sink of one routing request.
type Request = (usize, usize, Vec<i32>, Vec<i32>);
type ClassPaths = Vec<Vec<usize>>;

/// Lays out `code` on a `dim`-dimensional grid `[m]^(dim-1) x [0, h]`.
///
/// Branches sit on the bottom face in per-qubit strips (the same arrangement
/// as the 2D layout's bottom rows, one row pair per strip line). Each check
/// gets a run of consecutive vertices of a snake order on the top face, joined
/// by a spine of Z-checks. Copies reach their run vertex along paths that are
/// vertex-disjoint within each color class; all classes share one box, so a
/// vertex holds at most one path per class. The height starts at `m` and grows
/// by `m` whenever some class cannot be routed. A 2-dimensional request falls
/// back to [`layout_2d`].
pub fn layout_dd(code: &StabilizerCode, dim: usize, opts: &DdOptions) -> Result<PlacedWireCode, LayoutError> {
    if dim < 2 {
        return Err(LayoutError::BadDimension(dim));
    }
    if dim == 2 {
        return Ok(layout_2d(code));
    }
    let profile = code.degree_profile();
    let n = code.num_qubits();
    let widths: Vec<usize> = (0..n).map(|q| strip_width(profile.of(q).total())).collect();
    let runs_needed: usize = (0..code.num_checks()).map(|s| code.check(s).weight()).sum();
    let mut m = widths.iter().copied().max().unwrap_or(1).max(2);
    m += m % 2;
    let origins = loop {
        if m.pow(dim as u32 - 1) >= runs_needed {
            if let Some(o) = pack_strips(&widths, m, dim) {
                break o;
            }
        }
        m += 2;
    };

    let mut wire = WireCode::skeleton(code, BranchMode::PerType(1));
    let mut placer = Placer::new();
    let lift = |mut c: Vec<i32>, z: i32| {
        c.push(z);
        c
    };
    for (q, &(row, x0)) in origins.iter().enumerate().take(n) {
        let d = profile.of(q);
        let xq = (x0 + d.x + d.y) as i32;
        placer.put(q, lift(face_coords(row, xq, true, m, dim), 0));
        let branches: Vec<(usize, Pauli)> = wire.branches_on(q).map(|(b, br)| (b, br.pauli())).collect();
        for (b, p) in branches {
            let copies = wire.branches()[b].copies().to_vec();
            for (i, &r) in copies.iter().enumerate() {
                let i = i as i32;
                let x = match p {
                    Pauli::X => xq - 1 - i,
                    Pauli::Z => xq + 1 + i,
                    _ => xq - d.x as i32 - 1 - i,
                };
                placer.put(r, lift(face_coords(row, x, true, m, dim), 0));
            }
            if p == Pauli::Y {
                let attach = wire.branches()[b].attach_check();
                let path = wire.stretch_edge(attach, q, d.x + 3).expect("attachment acts on q");
                for (i, &w) in path.iter().enumerate() {
                    placer.put(w, lift(face_coords(row, xq - i as i32, false, m, dim), 0));
                }
            }
        }
    }

    // Sink of every slot: the j-th vertex of its check's run.
    let mut sink_rank: Vec<Vec<usize>> = Vec::with_capacity(code.num_checks());
    let mut next = 0usize;
    for s in 0..code.num_checks() {
        let w = wire.slots(s).len();
        sink_rank.push((next..next + w).collect());
        next += w;
    }
    let site_of = |s: usize, q: usize| {
        wire.slots(s)
            .iter()
            .position(|sl| sl.qubit == q)
            .expect("incidence has a slot")
    };
    let classes = color_classes(code);
    let requests: Vec<Vec<Request>> = classes
        .classes()
        .iter()
        .map(|class| {
            class
                .iter()
                .filter(|&&(_, s)| code.check(s).weight() > 1)
                .map(|&(q, s)| {
                    let j = site_of(s, q);
                    let src = lift(placer.get(wire.slots(s)[j].site)[..dim - 1].to_vec(), 0);
                    let dst = snake(sink_rank[s][j], m, dim - 1);
                    (s, j, src, dst)
                })
                .collect()
        })
        .filter(|c: &Vec<_>| !c.is_empty())
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut height = m;
    let mut routed: Option<(GridTarget, Vec<ClassPaths>, usize)> = None;
    let mut blocked: Option<(Vec<i32>, Vec<i32>)> = None;
    'heights: for attempt in 0..=opts.retries {
        let grid = GridTarget::slab(dim, m, height);
        let mut all = Vec::with_capacity(requests.len());
        for req in &requests {
            let ids: Vec<(usize, usize)> = req
                .iter()
                .map(|(_, _, src, dst)| {
                    let top = lift(dst.clone(), height as i32);
                    (
                        grid.vertex(src).expect("on the face"),
                        grid.vertex(&top).expect("on the face"),
                    )
                })
                .collect();
            let mut order: Vec<usize> = (0..ids.len()).collect();
            let mut found = None;
            for _ in 0..opts.orders_per_height.max(1) {
                order.shuffle(&mut rng);
                found = route_class(&grid, &ids, &order, Disjointness::Vertex);
                if found.is_some() {
                    break;
                }
            }
            match found {
                Some(paths) => all.push(paths),
                None => {
                    let (_, _, src, dst) = &req[order[0]];
                    blocked = Some((src.clone(), lift(dst.clone(), height as i32)));
                    if attempt < opts.retries {
                        height += m;
                    }
                    continue 'heights;
                }
            }
        }
        routed = Some((grid, all, attempt));
        break;
    }
    let Some((grid, paths, retries_used)) = routed else {
        let (source_vertex, sink) = blocked.unwrap_or_default();
        return Err(LayoutError::RoutingFailed {
            source_vertex,
            sink,
            retries: opts.retries,
            height,
        });
    };

    // Path of every routed slot, keyed by (check, slot index).
    let mut path_of: Vec<Vec<Option<&Vec<usize>>>> = (0..code.num_checks())
        .map(|s| vec![None; wire.slots(s).len()])
        .collect();
    for (req, ps) in requests.iter().zip(&paths) {
        for ((s, j, _, _), p) in req.iter().zip(ps) {
            path_of[*s][*j] = Some(p);
        }
    }

    for s in 0..code.num_checks() {
        let w = wire.slots(s).len();
        if w == 0 {
            continue;
        }
        if w == 1 {
            wire.place_check_whole(s);
            continue;
        }
        let r: Vec<usize> = wire.slots(s).iter().map(|sl| sl.site).collect();
        let run: Vec<Vec<i32>> = sink_rank[s]
            .iter()
            .map(|&t| lift(snake(t, m, dim - 1), height as i32))
            .collect();
        let holder: Vec<usize> = if w == 2 {
            let g = wire.add_gauge(
                SparsePauli::new(vec![(r[0], Pauli::Z), (r[1], Pauli::Z)]),
                Owner::Check(s),
            );
            vec![g, g]
        } else {
            let c: Vec<usize> = (1..w - 1)
                .map(|i| {
                    let c = wire.add_wire_qubit(Register::Anc);
                    placer.put(c, run[i].clone());
                    c
                })
                .collect();
            let mut holder = Vec::with_capacity(w);
            let g = wire.add_gauge(
                SparsePauli::new(vec![(r[0], Pauli::Z), (r[1], Pauli::Z), (c[0], Pauli::Z)]),
                Owner::Check(s),
            );
            holder.extend([g, g]);
            for i in 1..w - 2 {
                let g = wire.add_gauge(
                    SparsePauli::new(vec![(c[i - 1], Pauli::Z), (r[i + 1], Pauli::Z), (c[i], Pauli::Z)]),
                    Owner::Check(s),
                );
                holder.push(g);
            }
            let g = wire.add_gauge(
                SparsePauli::new(vec![(c[w - 3], Pauli::Z), (r[w - 1], Pauli::Z)]),
                Owner::Check(s),
            );
            holder.push(g);
            holder
        };
        for j in 0..w {
            let p = path_of[s][j].expect("weight >= 2 slots are routed");
            let new = wire
                .stretch_edge(holder[j], r[j], p.len())
                .expect("holder acts on the copy");
            for (&qb, &v) in new.iter().zip(&p[1..]) {
                placer.put(qb, grid.coords(v));
            }
        }
    }

    let all_paths: Vec<Vec<usize>> = paths.iter().flatten().cloned().collect();
    let congestion = edge_usage(&all_paths).values().copied().max().unwrap_or(0);
    let stats = LayoutStats {
        base: m,
        height,
        classes: requests.len(),
        retries_used,
        c_d: height as f64 / m as f64,
        congestion,
    };
    let (grid, placement) = placer.finish(wire.num_qubits(), Some(grid));
    Ok(PlacedWireCode::new(wire, Target::Grid(grid), placement, stats).expect("every qubit placed on the grid"))
}
