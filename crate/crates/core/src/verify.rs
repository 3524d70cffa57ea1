//! One-call property report for a wire code against its input code.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::code::{compute_k, dressed_distance, relations, StabilizerCode};
use crate::layout::{PlacedWireCode, Violation};
use crate::wire::WireCode;

/// Wire codes larger than this skip the exhaustive distance search.
pub const DISTANCE_QUBIT_LIMIT: usize = 400;

/// Outcome of checking `d_wire >= ceil(d_in / omega)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistanceCheck {
    /// Every operator of weight below `target` was ruled out.
    Proven { target: usize },
    /// A dressed logical lighter than `target`.
    Violated { target: usize, witness: String },
    /// The search budget stopped short of `target - 1`.
    Inconclusive { target: usize, searched: usize },
    /// The wire code is too large for the exhaustive search.
    Skipped { target: usize, n_wire: usize },
}

impl DistanceCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, DistanceCheck::Proven { .. })
    }

    pub fn target(&self) -> usize {
        match *self {
            DistanceCheck::Proven { target }
            | DistanceCheck::Violated { target, .. }
            | DistanceCheck::Inconclusive { target, .. }
            | DistanceCheck::Skipped { target, .. } => target,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub n_in: usize,
    pub n_wire: usize,
    pub k_in: usize,
    pub k_wire: usize,
    pub k_match: bool,
    /// Largest weight among gauge generators of weight at least 2.
    pub max_weight: usize,
    /// Largest number of multi-qubit gauge generators on one qubit.
    pub max_degree: usize,
    /// Input distance used for the bound, and whether the search found it exactly.
    pub d_in_used: usize,
    pub d_in_exact: bool,
    pub omega: usize,
    /// Lightest dressed logical of the wire code within the search budget.
    pub d_wire_found: Option<usize>,
    pub d_wire_witness: Option<String>,
    pub distance: DistanceCheck,
    pub bound_ok: bool,
    pub recovery_ok: bool,
    pub recovery_failures: Vec<(usize, String)>,
    pub relations_ok: bool,
    pub relation_failures: Vec<Vec<usize>>,
    /// `None` for wire codes without a placement.
    pub locality_violations: Option<usize>,
    pub first_violation: Option<Violation>,
    pub stacking_max: Option<usize>,
    pub congestion_max: Option<usize>,
    pub overhead_ratio: f64,
}

impl VerificationReport {
    pub fn weight_ok(&self) -> bool {
        self.max_weight <= 3 && self.max_degree <= 3
    }

    pub fn all_green(&self) -> bool {
        self.k_match
            && self.weight_ok()
            && self.bound_ok
            && self.recovery_ok
            && self.relations_ok
            && self.locality_violations.unwrap_or(0) == 0
    }

    /// Rows of `(property, value, ok)` for a human-readable table.
    pub fn rows(&self) -> Vec<(String, String, bool)> {
        let mut rows = alloc::vec![
            (
                "n".to_string(),
                alloc::format!("{} -> {}", self.n_in, self.n_wire),
                true
            ),
            (
                "k".to_string(),
                alloc::format!("{} -> {}", self.k_in, self.k_wire),
                self.k_match
            ),
            (
                "max weight".to_string(),
                self.max_weight.to_string(),
                self.max_weight <= 3
            ),
            (
                "max degree".to_string(),
                self.max_degree.to_string(),
                self.max_degree <= 3
            ),
            (
                "distance".to_string(),
                alloc::format!(
                    "d_in {}{} / omega {} -> target {}; found {}; {:?}",
                    self.d_in_used,
                    if self.d_in_exact { "" } else { " (lower bound)" },
                    self.omega,
                    self.distance.target(),
                    self.d_wire_found.map_or("none".to_string(), |d| d.to_string()),
                    self.distance
                ),
                self.bound_ok,
            ),
            (
                "recovery".to_string(),
                alloc::format!("{:?}", self.recovery_failures),
                self.recovery_ok
            ),
            (
                "relations".to_string(),
                alloc::format!("{:?}", self.relation_failures),
                self.relations_ok
            ),
        ];
        if let Some(v) = self.locality_violations {
            rows.push((
                "locality".to_string(),
                alloc::format!("{v} violations; first {:?}", self.first_violation),
                v == 0,
            ));
        }
        if let Some(s) = self.stacking_max {
            rows.push(("stacking".to_string(), s.to_string(), true));
        }
        if let Some(c) = self.congestion_max {
            rows.push(("congestion".to_string(), c.to_string(), true));
        }
        rows.push((
            "overhead".to_string(),
            alloc::format!("{:.2}", self.overhead_ratio),
            true,
        ));
        rows
    }
}

/// Runs every check against a placed wire code.
pub fn verify_all(input: &StabilizerCode, placed: &PlacedWireCode, w_max: usize) -> VerificationReport {
    let mut report = verify_wire(input, placed.wire(), w_max);
    let locality = placed.check_locality();
    report.locality_violations = Some(locality.violations.len());
    report.first_violation = locality.violations.first().cloned();
    report.stacking_max = Some(locality.max_stacking);
    report.congestion_max = Some(placed.stats().congestion);
    report
}

/// Runs every check that does not need a placement.
///
/// The distance bound is sound: it holds only when every operator lighter
/// than `ceil(d_in / omega)` has been ruled out. The input distance is
/// searched up to `w_max`; if none is found, `w_max + 1` is used as a lower
/// bound. The wire search runs up to `max(w_max, target - 1)` and is skipped
/// above [`DISTANCE_QUBIT_LIMIT`] qubits, where only a target of 1 is proven.
pub fn verify_wire(input: &StabilizerCode, wire: &WireCode, w_max: usize) -> VerificationReport {
    let sub = wire.subsystem();
    let k_in = input.k();
    let k_wire = compute_k(sub);
    let omega = input.max_weight().max(1);

    let d_in = dressed_distance(&input.as_subsystem(), w_max.min(input.num_qubits()));
    let (d_in_used, d_in_exact) = match d_in.distance() {
        Some(d) => (d, true),
        None => (w_max.min(input.num_qubits()) + 1, false),
    };
    let target = d_in_used.div_ceil(omega);

    let (d_wire_found, d_wire_witness, distance) = if wire.num_qubits() > DISTANCE_QUBIT_LIMIT {
        // Weight zero is never a logical, so a target of 1 needs no search.
        let distance = if target <= 1 {
            DistanceCheck::Proven { target }
        } else {
            DistanceCheck::Skipped {
                target,
                n_wire: wire.num_qubits(),
            }
        };
        (None, None, distance)
    } else {
        let search = dressed_distance(sub, w_max.max(target.saturating_sub(1)));
        let found = search.distance();
        let witness = search
            .witness
            .as_ref()
            .map(|w| crate::pauli::SparsePauli::from_dense(w).to_string());
        let check = match found {
            Some(d) if d < target => DistanceCheck::Violated {
                target,
                witness: witness.clone().unwrap_or_default(),
            },
            _ if search.proves_at_least(target) => DistanceCheck::Proven { target },
            _ => DistanceCheck::Inconclusive {
                target,
                searched: search.w_max,
            },
        };
        (found, witness, check)
    };

    let recovery_failures: Vec<(usize, String)> = (0..input.num_checks())
        .filter_map(|s| wire.stabilizer_recovery(s).err().map(|e| (s, e.to_string())))
        .collect();
    let relation_failures: Vec<Vec<usize>> = relations(input)
        .into_iter()
        .filter(|r| wire.verify_relation_image(r) != Ok(true))
        .collect();

    VerificationReport {
        n_in: input.num_qubits(),
        n_wire: wire.num_qubits(),
        k_in,
        k_wire,
        k_match: k_in == k_wire,
        max_weight: sub.max_multi_weight(),
        max_degree: sub.max_degree(),
        d_in_used,
        d_in_exact,
        omega,
        d_wire_found,
        d_wire_witness,
        bound_ok: distance.is_ok(),
        distance,
        recovery_ok: recovery_failures.is_empty(),
        recovery_failures,
        relations_ok: relation_failures.is_empty(),
        relation_failures,
        locality_violations: None,
        first_violation: None,
        stacking_max: None,
        congestion_max: None,
        overhead_ratio: wire.num_qubits() as f64 / input.num_qubits().max(1) as f64,
    }
}

/// Index of a single-site X gauge on an ancilla or copy qubit, the first in
/// gauge order, for building negative controls.
pub fn first_single_site_on_ancilla(wire: &WireCode) -> Option<usize> {
    let sub = wire.subsystem();
    let n_data = wire.input().num_qubits();
    sub.gauges()
        .iter()
        .position(|g| g.weight() == 1 && g.terms()[0].0 >= n_data)
}
