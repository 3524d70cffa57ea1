//! Two-phase gauge measurement schedules and their stabilizer-tableau check.
//!
//! Each round measures, for a set of input checks with disjoint gauge
//! supports, every multi-qubit gauge generator whose product recovers the
//! check (phase 1), then single-qubit X on every ancillary and copy qubit
//! touched (phase 2). The syndrome of check `s` is read off as the parity of
//! its phase-1 outcomes together with the latest X outcomes on the qubits
//! where its stabilizer image carries an X correction.

mod tableau;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use tableau::Tableau;

use crate::code::bare_logicals;
use crate::error::{SimError, WireError};
use crate::pauli::{Pauli, PauliOperator, SparsePauli};
use crate::wire::WireCode;

/// One color of input checks and the measurements that read them out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub color: usize,
    pub checks: Vec<usize>,
    /// Multi-qubit gauge generators, split into layers of disjoint support.
    pub phase1: Vec<Vec<usize>>,
    /// Qubits measured in the X basis after phase 1.
    pub phase2: Vec<usize>,
}

impl Round {
    pub fn phase1_gauges(&self) -> impl Iterator<Item = usize> + '_ {
        self.phase1.iter().flatten().copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    rounds: Vec<Round>,
    round_of: Vec<usize>,
    recovery: Vec<Vec<usize>>,
    corrections: Vec<Vec<usize>>,
    sign: Vec<bool>,
}

impl Schedule {
    pub fn rounds(&self) -> &[Round] {
        &self.rounds
    }

    pub fn num_checks(&self) -> usize {
        self.round_of.len()
    }

    pub fn round_of(&self, s: usize) -> usize {
        self.round_of[s]
    }

    /// Gauge generators whose product is `s ⊗ 1` up to [`Schedule::sign`].
    pub fn recovery(&self, s: usize) -> &[usize] {
        &self.recovery[s]
    }

    /// Qubits carrying X in the stabilizer image of check `s`.
    pub fn corrections(&self, s: usize) -> &[usize] {
        &self.corrections[s]
    }

    /// Whether the recovery product equals `-(s ⊗ 1)`.
    pub fn sign(&self, s: usize) -> bool {
        self.sign[s]
    }

    /// Largest number of phase-1 layers in a round.
    pub fn depth(&self) -> usize {
        self.rounds.iter().map(|r| r.phase1.len()).max().unwrap_or(0)
    }

    /// How often each gauge generator is measured in one pass.
    pub fn measure_counts(&self, wire: &WireCode) -> Vec<usize> {
        let sub = wire.subsystem();
        let mut out = vec![0; sub.num_gauges()];
        let single: BTreeMap<usize, usize> = sub
            .gauges()
            .iter()
            .enumerate()
            .filter(|(_, g)| g.weight() == 1 && g.get(g.terms()[0].0) == Pauli::X)
            .map(|(i, g)| (g.terms()[0].0, i))
            .collect();
        for r in &self.rounds {
            for g in r.phase1_gauges() {
                out[g] += 1;
            }
            for q in &r.phase2 {
                if let Some(&g) = single.get(q) {
                    out[g] += 1;
                }
            }
        }
        out
    }

    /// Whether no qubit appears twice within a phase-1 layer.
    pub fn layers_are_disjoint(&self, wire: &WireCode) -> bool {
        let sub = wire.subsystem();
        self.rounds.iter().flat_map(|r| &r.phase1).all(|layer| {
            let mut qs: Vec<usize> = layer.iter().flat_map(|&g| sub.gauge(g).support()).collect();
            let len = qs.len();
            qs.sort_unstable();
            qs.dedup();
            qs.len() == len
        })
    }
}

/// Product of the given gauge generators with its phase, as an exponent of `i`.
fn signed_product(wire: &WireCode, gauges: &[usize]) -> (u8, SparsePauli) {
    let mut acc: BTreeMap<usize, Pauli> = BTreeMap::new();
    let mut phase: i32 = 0;
    for &g in gauges {
        for &(q, p) in wire.subsystem().gauge(g).terms() {
            let a = acc.get(&q).copied().unwrap_or(Pauli::I);
            let (x1, z1) = a.bits();
            let (x2, z2) = p.bits();
            phase += match (x1, z1) {
                (false, false) => 0,
                (true, true) => z2 as i32 - x2 as i32,
                (true, false) => z2 as i32 * (2 * x2 as i32 - 1),
                (false, true) => x2 as i32 * (1 - 2 * z2 as i32),
            };
            let c = Pauli::from_bits(x1 ^ x2, z1 ^ z2);
            if c == Pauli::I {
                acc.remove(&q);
            } else {
                acc.insert(q, c);
            }
        }
    }
    (phase.rem_euclid(4) as u8, SparsePauli::new(acc.into_iter().collect()))
}

/// Colors the input checks greedily so that checks of one color have
/// disjoint recovery supports, and emits one round per color.
pub fn build_schedule(wire: &WireCode) -> Result<Schedule, SimError> {
    let sub = wire.subsystem();
    let m = wire.input().num_checks();
    let n = wire.num_qubits();
    let n_data = wire.input().num_qubits();
    let mut recovery = Vec::with_capacity(m);
    let mut corrections = Vec::with_capacity(m);
    let mut sign = Vec::with_capacity(m);
    for s in 0..m {
        let f = wire.recovery_gauges(s);
        let (phase, product) = signed_product(wire, &f);
        let want = SparsePauli::from_dense(wire.input().check(s));
        if product != want || phase % 2 == 1 {
            return Err(SimError::Wire(WireError::RecoveryMismatch {
                check: s,
                found: alloc::format!("{product}"),
            }));
        }
        let image = wire.stabilizer_image(s)?;
        for &j in &image.corrections {
            if f.iter().any(|&g| sub.gauge(g).get(j).bits().1) {
                return Err(SimError::Wire(WireError::Inconsistent(alloc::format!(
                    "correction qubit {j} of check {s} meets a Z of its recovery gauges"
                ))));
            }
        }
        recovery.push(f);
        corrections.push(image.corrections);
        sign.push(phase == 2);
    }

    let mut used: Vec<Vec<bool>> = Vec::new();
    let mut round_of = vec![0; m];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for s in 0..m {
        let support: Vec<usize> = recovery[s].iter().flat_map(|&g| sub.gauge(g).support()).collect();
        let c = match used.iter().position(|u| support.iter().all(|&q| !u[q])) {
            Some(c) => c,
            None => {
                used.push(vec![false; n]);
                members.push(Vec::new());
                used.len() - 1
            }
        };
        for &q in &support {
            used[c][q] = true;
        }
        members[c].push(s);
        round_of[s] = c;
    }

    let rounds = members
        .into_iter()
        .enumerate()
        .map(|(color, checks)| {
            let mut gauges: Vec<usize> = checks.iter().flat_map(|&s| recovery[s].iter().copied()).collect();
            gauges.sort_unstable();
            gauges.dedup();
            let mut layers: Vec<(Vec<usize>, Vec<bool>)> = Vec::new();
            for &g in &gauges {
                let supp: Vec<usize> = sub.gauge(g).support().collect();
                let slot = layers.iter().position(|(_, busy)| supp.iter().all(|&q| !busy[q]));
                let i = slot.unwrap_or_else(|| {
                    layers.push((Vec::new(), vec![false; n]));
                    layers.len() - 1
                });
                layers[i].0.push(g);
                for q in supp {
                    layers[i].1[q] = true;
                }
            }
            let mut phase2: Vec<usize> = gauges
                .iter()
                .flat_map(|&g| sub.gauge(g).support())
                .filter(|&q| q >= n_data)
                .collect();
            phase2.sort_unstable();
            phase2.dedup();
            Round {
                color,
                checks,
                phase1: layers.into_iter().map(|(l, _)| l).collect(),
                phase2,
            }
        })
        .collect();
    Ok(Schedule {
        rounds,
        round_of,
        recovery,
        corrections,
        sign,
    })
}

/// Outcomes of one round; `true` means eigenvalue -1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RoundRecord {
    pub phase1: BTreeMap<usize, bool>,
    pub phase2: BTreeMap<usize, bool>,
}

/// Outcomes of one pass over the schedule.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MeasurementRecord {
    /// Latest X outcome of each qubit before the pass; absent means `|+>`.
    pub prior_x: BTreeMap<usize, bool>,
    pub rounds: Vec<RoundRecord>,
}

/// Reads check `s` off a record: its phase-1 outcomes, the latest X outcome
/// (up to the end of its round) of each correction qubit, and the sign of
/// its recovery product.
pub fn reconstruct_syndrome(record: &MeasurementRecord, sched: &Schedule, s: usize) -> Result<bool, SimError> {
    if s >= sched.num_checks() {
        return Err(SimError::Wire(WireError::NoSuchCheck(s)));
    }
    let t = sched.round_of(s);
    let round = record.rounds.get(t).ok_or(SimError::IncompleteRecord(s))?;
    let mut bit = sched.sign(s);
    for g in sched.recovery(s) {
        bit ^= *round.phase1.get(g).ok_or(SimError::IncompleteRecord(s))?;
    }
    for &j in sched.corrections(s) {
        let latest = record.rounds[..=t]
            .iter()
            .rev()
            .find_map(|r| r.phase2.get(&j))
            .or_else(|| record.prior_x.get(&j));
        bit ^= latest.copied().unwrap_or(false);
    }
    Ok(bit)
}

/// Result of running the schedule on a simulated state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simulation {
    pub seed: u64,
    pub record: MeasurementRecord,
    /// One bit per input check; `true` when the check is violated.
    pub syndrome: Vec<bool>,
}

/// Tableau simulation of repeated passes over a schedule.
pub struct Simulator<'a> {
    wire: &'a WireCode,
    sched: &'a Schedule,
    state: Tableau,
    rng: ChaCha8Rng,
    reference: Vec<bool>,
    last_x: BTreeMap<usize, bool>,
    seed: u64,
}

impl<'a> Simulator<'a> {
    /// Data register in a fixed codeword of the input code (checks and one
    /// logical Z per logical qubit at +1), every other qubit in `|+>`.
    pub fn new(wire: &'a WireCode, sched: &'a Schedule, seed: u64) -> Self {
        let n = wire.num_qubits();
        let input = wire.input();
        let n_data = input.num_qubits();
        let mut state = Tableau::zero_state(n);
        for q in n_data..n {
            state.hadamard(q);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let logicals = bare_logicals(&input.as_subsystem());
        let fixed = input
            .checks()
            .iter()
            .chain(logicals.iter().skip(1).step_by(2))
            .map(SparsePauli::from_dense);
        for p in fixed {
            if let (true, Some(fix)) = state.measure(&p, &mut rng) {
                state.apply_pauli(&fix);
            }
        }
        let reference = input
            .checks()
            .iter()
            .map(|c| state.peek(&SparsePauli::from_dense(c)).expect("checks are fixed"))
            .collect();
        Self {
            wire,
            sched,
            state,
            rng,
            reference,
            last_x: BTreeMap::new(),
            seed,
        }
    }

    /// Applies a Pauli error given on the data register or on the whole wire code.
    pub fn apply_error(&mut self, error: &PauliOperator) -> Result<(), SimError> {
        let n_data = self.wire.input().num_qubits();
        let len = error.num_qubits();
        if len != n_data && len != self.wire.num_qubits() {
            return Err(SimError::ErrorLength {
                expected: n_data,
                found: len,
            });
        }
        if let Some(q) = error.support().into_iter().find(|&q| q >= n_data) {
            return Err(SimError::OutsideData(q));
        }
        self.state.apply_pauli(&SparsePauli::from_dense(error));
        Ok(())
    }

    /// Runs every round once and reconstructs the syndrome.
    pub fn run_pass(&mut self) -> Result<Simulation, SimError> {
        let sub = self.wire.subsystem();
        let mut record = MeasurementRecord {
            prior_x: self.last_x.clone(),
            rounds: Vec::with_capacity(self.sched.rounds().len()),
        };
        for round in self.sched.rounds() {
            let mut rec = RoundRecord::default();
            for g in round.phase1_gauges() {
                let (out, _) = self.state.measure(sub.gauge(g), &mut self.rng);
                rec.phase1.insert(g, out);
            }
            for &q in &round.phase2 {
                let (out, _) = self.state.measure(&SparsePauli::single(q, Pauli::X), &mut self.rng);
                rec.phase2.insert(q, out);
                self.last_x.insert(q, out);
            }
            record.rounds.push(rec);
        }
        let syndrome = (0..self.sched.num_checks())
            .map(|s| Ok(reconstruct_syndrome(&record, self.sched, s)? ^ self.reference[s]))
            .collect::<Result<Vec<bool>, SimError>>()?;
        Ok(Simulation {
            seed: self.seed,
            record,
            syndrome,
        })
    }
}

/// Prepares the codeword state, applies `error` on the data register, runs
/// one pass of `sched` and returns the reconstructed syndrome.
pub fn simulate_extraction(
    wire: &WireCode,
    sched: &Schedule,
    error: &PauliOperator,
    seed: u64,
) -> Result<Simulation, SimError> {
    let mut sim = Simulator::new(wire, sched, seed);
    sim.apply_error(error)?;
    sim.run_pass()
}

/// Syndrome of `error` against the input checks, computed directly.
pub fn direct_syndrome(wire: &WireCode, error: &PauliOperator) -> Vec<bool> {
    let n = wire.input().num_qubits();
    let e = if error.num_qubits() == n {
        error.clone()
    } else {
        PauliOperator::from_sparse(n, &error.terms())
    };
    wire.input().checks().iter().map(|c| !c.commutes_with(&e)).collect()
}
