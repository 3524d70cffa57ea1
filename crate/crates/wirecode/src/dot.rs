//! Graphviz export of a wire code's Tanner graph: qubits as circles, gauge
//! checks as boxes. Grid layouts pin nodes to their coordinates.

use std::fmt::Write;

use wirecode_core::code::{GaugeKind, Register};
use wirecode_core::layout::PlacedWireCode;
use wirecode_core::wire::WireCode;

fn qubit_color(r: Register) -> &'static str {
    match r {
        Register::Data => "black",
        Register::Copy => "blue",
        Register::Anc => "red",
    }
}

fn check_color(k: GaugeKind) -> &'static str {
    match k {
        GaugeKind::SingleSite => "gray",
        GaugeKind::Copy => "blue",
        GaugeKind::Anc => "red",
    }
}

fn write_graph(wire: &WireCode, pos: impl Fn(usize) -> Option<(f64, f64)>) -> String {
    let sub = wire.subsystem();
    let mut out = String::from("graph wirecode {\n  node [fontsize=8];\n");
    for q in 0..sub.num_qubits() {
        let _ = write!(
            out,
            "  q{q} [shape=circle, label=\"{q}\", color={}",
            qubit_color(sub.register_of(q))
        );
        if let Some((x, y)) = pos(q) {
            let _ = write!(out, ", pos=\"{x},{y}!\"");
        }
        out.push_str("];\n");
    }
    for (g, gauge) in sub.gauges().iter().enumerate() {
        let _ = writeln!(
            out,
            "  g{g} [shape=box, label=\"{gauge}\", color={}];",
            check_color(sub.kind(g))
        );
        for (q, p) in gauge.terms() {
            let _ = writeln!(out, "  q{q} -- g{g} [label=\"{p}\"];");
        }
    }
    out.push_str("}\n");
    out
}

/// Tanner graph without positions.
pub fn wire_to_dot(wire: &WireCode) -> String {
    write_graph(wire, |_| None)
}

/// Tanner graph with qubits pinned to the first two grid coordinates. Stacked
/// qubits are nudged apart so they stay visible.
pub fn placed_to_dot(placed: &PlacedWireCode) -> String {
    let n = placed.wire().num_qubits();
    let mut seen = std::collections::BTreeMap::new();
    let positions: Vec<Option<(f64, f64)>> = (0..n)
        .map(|q| {
            let c = placed.coords_of(q)?;
            let slot = seen.entry(placed.vertex_of(q)).or_insert(0usize);
            let nudge = 0.2 * *slot as f64;
            *slot += 1;
            let z = c.get(2).copied().unwrap_or(0) as f64 * 0.3;
            Some((
                c[0] as f64 + nudge + z,
                c.get(1).copied().unwrap_or(0) as f64 + nudge + z,
            ))
        })
        .collect();
    write_graph(placed.wire(), |q| positions[q])
}
