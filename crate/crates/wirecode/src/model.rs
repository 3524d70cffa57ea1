//! Versioned JSON documents: `wirecode/1`, `placed/1`, `embedplan/1`, plus
//! report, schedule and simulation outputs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use wirecode_core::code::{compute_k, GaugeKind, Register, StabilizerCode, SubsystemCode};
use wirecode_core::embed::EmbeddingPlan;
use wirecode_core::graph::GeneralGraph;
use wirecode_core::layout::{GridTarget, LayoutStats, PlacedWireCode, Target};
use wirecode_core::pauli::{parse_pauli, SparsePauli};
use wirecode_core::sim::{Schedule, Simulation};
use wirecode_core::verify::{DistanceCheck, VerificationReport};
use wirecode_core::wire::{Branch, Slot, WireCode};
use wirecode_core::Pauli;

pub const WIRECODE_FORMAT: &str = "wirecode/1";
pub const PLACED_FORMAT: &str = "placed/1";
pub const EMBEDPLAN_FORMAT: &str = "embedplan/1";
pub const REPORT_FORMAT: &str = "report/1";
pub const SCHEDULE_FORMAT: &str = "schedule/1";
pub const SIMULATION_FORMAT: &str = "simulation/1";

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("unsupported format {found:?}, expected {expected:?}")]
    Format { found: String, expected: &'static str },
    #[error("invalid document: {0}")]
    Invalid(String),
}

fn invalid(e: impl ToString) -> ModelError {
    ModelError::Invalid(e.to_string())
}

fn expect_format(found: &str, expected: &'static str) -> Result<(), ModelError> {
    if found == expected {
        Ok(())
    } else {
        Err(ModelError::Format {
            found: found.to_string(),
            expected,
        })
    }
}

fn pauli_char(p: Pauli) -> char {
    p.as_char()
}

fn parse_pauli_char(c: char) -> Result<Pauli, ModelError> {
    Pauli::from_char(c).ok_or_else(|| invalid(format!("invalid Pauli {c:?}")))
}

/// Parses the `X3 Z5` notation written by [`SparsePauli`]'s `Display`.
pub fn parse_sparse(text: &str) -> Result<SparsePauli, ModelError> {
    if text.trim() == "I" {
        return Ok(SparsePauli::new(Vec::new()));
    }
    let terms = text
        .split_whitespace()
        .map(|tok| {
            let mut chars = tok.chars();
            let p = parse_pauli_char(chars.next().unwrap_or(' '))?;
            let q = chars
                .as_str()
                .parse::<usize>()
                .map_err(|_| invalid(format!("invalid term {tok:?}")))?;
            Ok((q, p))
        })
        .collect::<Result<Vec<_>, ModelError>>()?;
    Ok(SparsePauli::new(terms))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugeDoc {
    pub pauli: String,
    pub kind: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDoc {
    pub pauli: char,
    pub target: usize,
    pub copies: Vec<usize>,
    pub links: Vec<usize>,
    pub reach: Vec<usize>,
    pub single_x: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotDoc {
    pub qubit: usize,
    pub pauli: char,
    pub site: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLengthDoc {
    pub gauge: usize,
    pub qubit: usize,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSummary {
    pub n: usize,
    pub k: usize,
    pub max_weight: usize,
    pub max_degree: usize,
    pub data: usize,
    pub copy: usize,
    pub anc: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireCodeDoc {
    pub format: String,
    /// Input checks as `IXYZ` strings.
    pub input: Vec<String>,
    pub registers: Vec<String>,
    pub gauges: Vec<GaugeDoc>,
    pub branches: Vec<BranchDoc>,
    pub slots: Vec<Vec<SlotDoc>>,
    pub anc_of: Vec<Vec<usize>>,
    pub edge_lengths: Vec<EdgeLengthDoc>,
    pub summary: CodeSummary,
}

fn register_name(r: Register) -> &'static str {
    match r {
        Register::Data => "data",
        Register::Copy => "copy",
        Register::Anc => "anc",
    }
}

fn kind_name(k: GaugeKind) -> &'static str {
    match k {
        GaugeKind::SingleSite => "single",
        GaugeKind::Copy => "copy",
        GaugeKind::Anc => "anc",
    }
}

impl WireCodeDoc {
    pub fn from_wire(wire: &WireCode) -> Self {
        let sub = wire.subsystem();
        WireCodeDoc {
            format: WIRECODE_FORMAT.into(),
            input: wire.input().checks().iter().map(|c| c.to_pauli_string()).collect(),
            registers: sub.registers().iter().map(|&r| register_name(r).into()).collect(),
            gauges: sub
                .gauges()
                .iter()
                .zip(sub.kinds())
                .map(|(g, &k)| GaugeDoc {
                    pauli: g.to_string(),
                    kind: kind_name(k).into(),
                })
                .collect(),
            branches: wire
                .branches()
                .iter()
                .map(|b| BranchDoc {
                    pauli: pauli_char(b.pauli()),
                    target: b.target(),
                    copies: b.copies().to_vec(),
                    links: b.links().to_vec(),
                    reach: b.reach().to_vec(),
                    single_x: b.single_x().to_vec(),
                })
                .collect(),
            slots: wire
                .all_slots()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|s| SlotDoc {
                            qubit: s.qubit,
                            pauli: pauli_char(s.pauli),
                            site: s.site,
                            branch: s.branch,
                        })
                        .collect()
                })
                .collect(),
            anc_of: wire.all_anc().to_vec(),
            edge_lengths: wire
                .edge_lengths()
                .iter()
                .map(|(&(gauge, qubit), &length)| EdgeLengthDoc { gauge, qubit, length })
                .collect(),
            summary: summarize(sub),
        }
    }

    /// Rebuilds the wire code; fails unless it passes its own invariants.
    pub fn to_wire(&self) -> Result<WireCode, ModelError> {
        expect_format(&self.format, WIRECODE_FORMAT)?;
        let rows: Vec<&str> = self.input.iter().map(String::as_str).collect();
        let input = StabilizerCode::from_strings(&rows).map_err(invalid)?;
        let registers = self
            .registers
            .iter()
            .map(|r| match r.as_str() {
                "data" => Ok(Register::Data),
                "copy" => Ok(Register::Copy),
                "anc" => Ok(Register::Anc),
                other => Err(invalid(format!("unknown register {other:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut gauges = Vec::with_capacity(self.gauges.len());
        let mut kinds = Vec::with_capacity(self.gauges.len());
        for g in &self.gauges {
            gauges.push(parse_sparse(&g.pauli)?);
            kinds.push(match g.kind.as_str() {
                "single" => GaugeKind::SingleSite,
                "copy" => GaugeKind::Copy,
                "anc" => GaugeKind::Anc,
                other => return Err(invalid(format!("unknown gauge kind {other:?}"))),
            });
        }
        let base = SubsystemCode::from_parts(registers, gauges, kinds).map_err(invalid)?;
        let branches = self
            .branches
            .iter()
            .map(|b| {
                Branch::from_parts(
                    parse_pauli_char(b.pauli)?,
                    b.target,
                    b.copies.clone(),
                    b.links.clone(),
                    b.reach.clone(),
                    b.single_x.clone(),
                )
                .map_err(invalid)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let slots = self
            .slots
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        Ok(Slot {
                            qubit: s.qubit,
                            pauli: parse_pauli_char(s.pauli)?,
                            site: s.site,
                            branch: s.branch,
                        })
                    })
                    .collect::<Result<Vec<_>, ModelError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let edge_lengths: BTreeMap<(usize, usize), usize> = self
            .edge_lengths
            .iter()
            .map(|e| ((e.gauge, e.qubit), e.length))
            .collect();
        WireCode::from_parts(input, base, branches, slots, self.anc_of.clone(), edge_lengths).map_err(invalid)
    }
}

pub fn summarize(sub: &SubsystemCode) -> CodeSummary {
    CodeSummary {
        n: sub.num_qubits(),
        k: compute_k(sub),
        max_weight: sub.max_multi_weight(),
        max_degree: sub.max_degree(),
        data: sub.count_register(Register::Data),
        copy: sub.count_register(Register::Copy),
        anc: sub.count_register(Register::Anc),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TargetDoc {
    Grid {
        extents: Vec<usize>,
        origin: Vec<i32>,
    },
    Graph {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
}

impl TargetDoc {
    pub fn from_target(t: &Target) -> Self {
        match t {
            Target::Grid(g) => TargetDoc::Grid {
                extents: g.extents().to_vec(),
                origin: g.origin().to_vec(),
            },
            Target::Graph(g) => TargetDoc::Graph {
                vertices: g.num_vertices(),
                edges: g.edges(),
            },
        }
    }

    pub fn to_target(&self) -> Result<Target, ModelError> {
        match self {
            TargetDoc::Grid { extents, origin } => {
                if extents.len() != origin.len() || extents.is_empty() || extents.contains(&0) {
                    return Err(invalid("grid extents and origin disagree"));
                }
                Ok(Target::Grid(GridTarget::new(extents.clone(), origin.clone())))
            }
            TargetDoc::Graph { vertices, edges } => {
                GeneralGraph::new(*vertices, edges).map(Target::Graph).map_err(invalid)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsDoc {
    pub base: usize,
    pub height: usize,
    pub classes: usize,
    pub retries_used: usize,
    pub c_d: f64,
    pub congestion: usize,
}

impl From<&LayoutStats> for StatsDoc {
    fn from(s: &LayoutStats) -> Self {
        StatsDoc {
            base: s.base,
            height: s.height,
            classes: s.classes,
            retries_used: s.retries_used,
            c_d: s.c_d,
            congestion: s.congestion,
        }
    }
}

impl From<&StatsDoc> for LayoutStats {
    fn from(s: &StatsDoc) -> Self {
        LayoutStats {
            base: s.base,
            height: s.height,
            classes: s.classes,
            retries_used: s.retries_used,
            c_d: s.c_d,
            congestion: s.congestion,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlacedDoc {
    pub format: String,
    pub wire: WireCodeDoc,
    pub target: TargetDoc,
    /// Target vertex of every wire qubit.
    pub placement: Vec<usize>,
    /// Grid coordinates of every wire qubit; empty on graphs.
    #[serde(default)]
    pub coords: Vec<Vec<i32>>,
    pub stats: StatsDoc,
}

impl PlacedDoc {
    pub fn from_placed(p: &PlacedWireCode) -> Self {
        let coords = match p.target() {
            Target::Grid(_) => (0..p.wire().num_qubits()).filter_map(|q| p.coords_of(q)).collect(),
            Target::Graph(_) => Vec::new(),
        };
        PlacedDoc {
            format: PLACED_FORMAT.into(),
            wire: WireCodeDoc::from_wire(p.wire()),
            target: TargetDoc::from_target(p.target()),
            placement: p.placement().to_vec(),
            coords,
            stats: StatsDoc::from(p.stats()),
        }
    }

    pub fn to_placed(&self) -> Result<PlacedWireCode, ModelError> {
        expect_format(&self.format, PLACED_FORMAT)?;
        let wire = self.wire.to_wire()?;
        let target = self.target.to_target()?;
        let placed =
            PlacedWireCode::new(wire, target, self.placement.clone(), (&self.stats).into()).map_err(invalid)?;
        if !self.coords.is_empty() {
            let ok = (0..placed.wire().num_qubits()).all(|q| placed.coords_of(q).as_ref() == self.coords.get(q));
            if !ok {
                return Err(invalid("coordinates disagree with the placement"));
            }
        }
        Ok(placed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDoc {
    pub qubit: usize,
    pub check: usize,
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedPlanDoc {
    pub format: String,
    pub qubit_vertex: Vec<usize>,
    pub check_vertex: Vec<usize>,
    pub paths: Vec<PathDoc>,
    pub c: usize,
    pub max_congestion: usize,
}

impl EmbedPlanDoc {
    pub fn from_plan(plan: &EmbeddingPlan) -> Self {
        EmbedPlanDoc {
            format: EMBEDPLAN_FORMAT.into(),
            qubit_vertex: plan.qubit_vertex().to_vec(),
            check_vertex: plan.check_vertex().to_vec(),
            paths: plan
                .paths()
                .iter()
                .map(|(&(qubit, check), path)| PathDoc {
                    qubit,
                    check,
                    path: path.clone(),
                })
                .collect(),
            c: plan.c(),
            max_congestion: plan.max_congestion(),
        }
    }

    pub fn to_plan(&self) -> Result<EmbeddingPlan, ModelError> {
        expect_format(&self.format, EMBEDPLAN_FORMAT)?;
        let paths = self
            .paths
            .iter()
            .map(|p| ((p.qubit, p.check), p.path.clone()))
            .collect();
        let plan = EmbeddingPlan::new(self.qubit_vertex.clone(), self.check_vertex.clone(), paths);
        if plan.c() != self.c || plan.max_congestion() != self.max_congestion {
            return Err(invalid("recorded congestion disagrees with the paths"));
        }
        Ok(plan)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub format: String,
    pub n_in: usize,
    pub n_wire: usize,
    pub k_in: usize,
    pub k_wire: usize,
    pub k_match: bool,
    pub max_weight: usize,
    pub max_degree: usize,
    pub d_in_used: usize,
    pub d_in_exact: bool,
    pub omega: usize,
    pub d_target: usize,
    pub d_wire_found: Option<usize>,
    pub d_wire_witness: Option<String>,
    pub distance_status: String,
    pub bound_ok: bool,
    pub recovery_ok: bool,
    pub recovery_failures: Vec<(usize, String)>,
    pub relations_ok: bool,
    pub relation_failures: Vec<Vec<usize>>,
    pub locality_violations: Option<usize>,
    pub first_violation: Option<(usize, Vec<usize>)>,
    pub stacking_max: Option<usize>,
    pub congestion_max: Option<usize>,
    pub overhead_ratio: f64,
    pub all_green: bool,
}

impl From<&VerificationReport> for ReportDoc {
    fn from(r: &VerificationReport) -> Self {
        let status = match &r.distance {
            DistanceCheck::Proven { .. } => "proven".to_string(),
            DistanceCheck::Violated { witness, .. } => format!("violated by {witness}"),
            DistanceCheck::Inconclusive { searched, .. } => format!("inconclusive: searched weight <= {searched}"),
            DistanceCheck::Skipped { n_wire, .. } => format!("skipped: {n_wire} qubits"),
        };
        ReportDoc {
            format: REPORT_FORMAT.into(),
            n_in: r.n_in,
            n_wire: r.n_wire,
            k_in: r.k_in,
            k_wire: r.k_wire,
            k_match: r.k_match,
            max_weight: r.max_weight,
            max_degree: r.max_degree,
            d_in_used: r.d_in_used,
            d_in_exact: r.d_in_exact,
            omega: r.omega,
            d_target: r.distance.target(),
            d_wire_found: r.d_wire_found,
            d_wire_witness: r.d_wire_witness.clone(),
            distance_status: status,
            bound_ok: r.bound_ok,
            recovery_ok: r.recovery_ok,
            recovery_failures: r.recovery_failures.clone(),
            relations_ok: r.relations_ok,
            relation_failures: r.relation_failures.clone(),
            locality_violations: r.locality_violations,
            first_violation: r.first_violation.as_ref().map(|v| (v.gauge, v.vertices.clone())),
            stacking_max: r.stacking_max,
            congestion_max: r.congestion_max,
            overhead_ratio: r.overhead_ratio,
            all_green: r.all_green(),
        }
    }
}

/// Fixed-width text table of a report.
pub fn report_table(r: &VerificationReport) -> String {
    let mut out = String::new();
    for (name, value, ok) in r.rows() {
        out.push_str(&format!(
            "{:<12} {:<5} {}\n",
            name,
            if ok { "ok" } else { "FAIL" },
            value
        ));
    }
    out.push_str(&format!(
        "{:<12} {}\n",
        "result",
        if r.all_green() { "all green" } else { "FAILED" }
    ));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundDoc {
    pub color: usize,
    pub checks: Vec<usize>,
    pub phase1: Vec<Vec<usize>>,
    pub phase2: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReadout {
    pub check: usize,
    pub round: usize,
    pub recovery: Vec<usize>,
    pub corrections: Vec<usize>,
    pub sign: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleDoc {
    pub format: String,
    pub depth: usize,
    pub rounds: Vec<RoundDoc>,
    pub readout: Vec<CheckReadout>,
}

impl ScheduleDoc {
    pub fn from_schedule(s: &Schedule) -> Self {
        ScheduleDoc {
            format: SCHEDULE_FORMAT.into(),
            depth: s.depth(),
            rounds: s
                .rounds()
                .iter()
                .map(|r| RoundDoc {
                    color: r.color,
                    checks: r.checks.clone(),
                    phase1: r.phase1.clone(),
                    phase2: r.phase2.clone(),
                })
                .collect(),
            readout: (0..s.num_checks())
                .map(|c| CheckReadout {
                    check: c,
                    round: s.round_of(c),
                    recovery: s.recovery(c).to_vec(),
                    corrections: s.corrections(c).to_vec(),
                    sign: s.sign(c),
                })
                .collect(),
        }
    }

    /// Checks the document against `wire`: every recovery gauge of a check is
    /// measured in phase 1 of its round, every correction qubit is ancillary,
    /// and no layer reuses a qubit.
    pub fn validate(&self, wire: &WireCode) -> Result<(), ModelError> {
        expect_format(&self.format, SCHEDULE_FORMAT)?;
        let sub = wire.subsystem();
        if self.readout.len() != wire.input().num_checks() {
            return Err(invalid("readout does not cover every check"));
        }
        for r in &self.readout {
            let round = self.rounds.get(r.round).ok_or_else(|| invalid("round out of range"))?;
            if !round.checks.contains(&r.check) {
                return Err(invalid(format!("check {} missing from round {}", r.check, r.round)));
            }
            let measured: Vec<usize> = round.phase1.iter().flatten().copied().collect();
            if let Some(g) = r.recovery.iter().find(|g| !measured.contains(g)) {
                return Err(invalid(format!("gauge {g} of check {} is not measured", r.check)));
            }
            if let Some(q) = r
                .corrections
                .iter()
                .find(|&&q| q >= sub.num_qubits() || sub.register_of(q) == Register::Data)
            {
                return Err(invalid(format!(
                    "correction qubit {q} of check {} is not an ancillary qubit",
                    r.check
                )));
            }
        }
        for round in &self.rounds {
            for layer in &round.phase1 {
                let mut seen = std::collections::BTreeSet::new();
                for &g in layer {
                    if g >= sub.num_gauges() {
                        return Err(invalid(format!("gauge {g} out of range")));
                    }
                    if !sub.gauge(g).support().all(|q| seen.insert(q)) {
                        return Err(invalid("a layer measures overlapping gauges"));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundOutcomes {
    pub phase1: BTreeMap<usize, bool>,
    pub phase2: BTreeMap<usize, bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulationDoc {
    pub format: String,
    pub seed: u64,
    pub error: String,
    /// Reconstructed syndrome, one bit per input check.
    pub syndrome: Vec<u8>,
    /// Syndrome computed directly from commutation with the input checks.
    pub expected: Vec<u8>,
    pub matches: bool,
    pub rounds: Vec<RoundOutcomes>,
}

impl SimulationDoc {
    pub fn new(sim: &Simulation, error: &str, expected: &[bool]) -> Self {
        let bits = |v: &[bool]| v.iter().map(|&b| b as u8).collect::<Vec<u8>>();
        SimulationDoc {
            format: SIMULATION_FORMAT.into(),
            seed: sim.seed,
            error: error.to_string(),
            syndrome: bits(&sim.syndrome),
            expected: bits(expected),
            matches: sim.syndrome == expected,
            rounds: sim
                .record
                .rounds
                .iter()
                .map(|r| RoundOutcomes {
                    phase1: r.phase1.clone(),
                    phase2: r.phase2.clone(),
                })
                .collect(),
        }
    }

    pub fn validate(&self, num_checks: usize) -> Result<(), ModelError> {
        expect_format(&self.format, SIMULATION_FORMAT)?;
        parse_pauli(&self.error).map_err(invalid)?;
        if self.syndrome.len() != num_checks || self.expected.len() != num_checks {
            return Err(invalid("syndrome length differs from the check count"));
        }
        if self.syndrome.iter().chain(&self.expected).any(|&b| b > 1) {
            return Err(invalid("syndrome bits must be 0 or 1"));
        }
        if self.matches != (self.syndrome == self.expected) {
            return Err(invalid("match flag disagrees with the bits"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use wirecode_core::codes;
    use wirecode_core::embed::{embed_on_graph, EmbedOptions};
    use wirecode_core::layout::layout_2d;
    use wirecode_core::wire::build_wire_code;

    #[test]
    fn sparse_notation_round_trips() {
        let p = SparsePauli::new(vec![(3, Pauli::X), (12, Pauli::Z), (0, Pauli::Y)]);
        assert_eq!(parse_sparse(&p.to_string()).unwrap(), p);
        assert_eq!(parse_sparse("I").unwrap().weight(), 0);
        assert!(parse_sparse("Q3").is_err());
        assert!(parse_sparse("Xa").is_err());
    }

    #[test]
    fn wire_documents_reload() {
        for code in [codes::five_qubit(), codes::shor(), codes::toric_2x2()] {
            let wire = build_wire_code(&code);
            let doc = WireCodeDoc::from_wire(&wire);
            let text = serde_json::to_string(&doc).unwrap();
            let back: WireCodeDoc = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_wire().unwrap(), wire);
        }
    }

    #[test]
    fn placed_and_plan_documents_reload() {
        let placed = layout_2d(&codes::five_qubit());
        let doc = PlacedDoc::from_placed(&placed);
        let back: PlacedDoc = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(back.to_placed().unwrap(), placed);

        let g = GeneralGraph::random_regular(64, 3, 1);
        let emb = embed_on_graph(&codes::repetition(3), &g, &EmbedOptions::default()).unwrap();
        let doc = EmbedPlanDoc::from_plan(&emb.plan);
        let back: EmbedPlanDoc = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(back.to_plan().unwrap(), emb.plan);
        let placed = PlacedDoc::from_placed(&emb.placed);
        assert_eq!(placed.to_placed().unwrap(), emb.placed);
    }

    #[test]
    fn wrong_format_is_rejected() {
        let mut doc = WireCodeDoc::from_wire(&build_wire_code(&codes::repetition(3)));
        doc.format = "wirecode/0".into();
        assert!(matches!(doc.to_wire(), Err(ModelError::Format { .. })));
    }

    #[test]
    fn tampered_wire_is_rejected() {
        let mut doc = WireCodeDoc::from_wire(&build_wire_code(&codes::five_qubit()));
        let i = doc.gauges.iter().position(|g| g.kind == "anc").unwrap();
        doc.gauges[i].pauli = "Z0".into();
        assert!(doc.to_wire().is_err());
    }
}
