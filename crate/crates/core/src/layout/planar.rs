use alloc::vec;
use alloc::vec::Vec;

use super::{LayoutStats, PlacedWireCode, Placer, Target};
use crate::code::{Register, StabilizerCode};
use crate::pauli::{Pauli, SparsePauli};
use crate::wire::{BranchMode, Owner, WireCode};

/// Places branches of every data qubit in row 0 and input check `s` in row
/// `s + 1`.
///
/// Data qubit `q` owns a column interval of width `delta(q) + 1`: its X-branch
/// runs left, its Z-branch runs right, and its Y-branch runs left along row -1
/// under the X-branch before rising into row 0. Each copy used by check `s`
/// sends a vertical Z-wire up to row `s + 1`, where a horizontal Z-wire joins
/// the tops. Every gauge generator ends up on one vertex or two adjacent
/// vertices, with at most two qubits per vertex.
pub fn layout_2d(code: &StabilizerCode) -> PlacedWireCode {
    let mut wire = WireCode::skeleton(code, BranchMode::PerType(1));
    let mut placer = Placer::new();
    let profile = code.degree_profile();

    let mut start = 0i32;
    for q in 0..code.num_qubits() {
        let d = profile.of(q);
        let xq = start + (d.x + d.y) as i32;
        placer.put(q, vec![xq, 0]);
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
                placer.put(r, vec![x, 0]);
            }
            if p == Pauli::Y {
                let attach = wire.branches()[b].attach_check();
                let len = d.x + 3;
                let path = wire.stretch_edge(attach, q, len).expect("attachment acts on q");
                for (i, &w) in path.iter().enumerate() {
                    placer.put(w, vec![xq - i as i32, -1]);
                }
            }
        }
        start += d.total().max(1) as i32 + 1;
    }

    for s in 0..code.num_checks() {
        let y = s as i32 + 1;
        let mut tops: Vec<(i32, usize)> = wire
            .slots(s)
            .iter()
            .map(|sl| (placer.get(sl.site)[0], sl.site))
            .collect();
        tops.sort_unstable();
        if tops.len() == 1 {
            wire.place_check_whole(s);
            continue;
        }
        let x_first = tops[0].0;
        let x_last = tops[tops.len() - 1].0;
        // Horizontal wire: one qubit per column strictly between the ends.
        let mut spine: Vec<usize> = Vec::new();
        for x in x_first + 1..x_last {
            let c = wire.add_wire_qubit(Register::Anc);
            placer.put(c, vec![x, y]);
            spine.push(c);
        }
        let spine_at = |x: i32| spine[(x - x_first - 1) as usize];
        // Gauge holding each top, to be stretched down to its copy afterwards.
        let mut holder = vec![0usize; tops.len()];
        let mut prev = tops[0].1;
        let mut prev_is_top = Some(0usize);
        for x in x_first + 1..=x_last {
            let (node, terms) = if x == x_last {
                let last = tops.len() - 1;
                (tops[last].1, vec![(prev, Pauli::Z), (tops[last].1, Pauli::Z)])
            } else {
                let c = spine_at(x);
                match tops.iter().position(|t| t.0 == x) {
                    Some(i) => (c, vec![(prev, Pauli::Z), (tops[i].1, Pauli::Z), (c, Pauli::Z)]),
                    None => (c, vec![(prev, Pauli::Z), (c, Pauli::Z)]),
                }
            };
            let g = wire.add_gauge(SparsePauli::new(terms), Owner::Check(s));
            if let Some(i) = prev_is_top {
                holder[i] = g;
            }
            prev_is_top = None;
            if x == x_last {
                holder[tops.len() - 1] = g;
            } else if let Some(i) = tops.iter().position(|t| t.0 == x) {
                holder[i] = g;
            }
            prev = node;
        }
        for (i, &(x, r)) in tops.iter().enumerate() {
            let path = wire
                .stretch_edge(holder[i], r, y as usize + 1)
                .expect("holder acts on the copy");
            for (k, &w) in path.iter().enumerate() {
                placer.put(w, vec![x, k as i32 + 1]);
            }
        }
    }

    let n = wire.num_qubits();
    let (grid, placement) = placer.finish(n, None);
    let stats = LayoutStats {
        base: grid.extents()[0],
        height: grid.extents()[1],
        ..LayoutStats::default()
    };
    PlacedWireCode::new(wire, Target::Grid(grid), placement, stats).expect("every qubit placed on the grid")
}
