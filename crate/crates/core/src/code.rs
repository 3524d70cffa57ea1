//! Stabilizer and subsystem code model.
//!
//! A [`SubsystemCode`] is a list of gauge generators over qubits tagged with a
//! register. Its stabilizer group is the center of the gauge group, `k` is
//! `n - (rank(G) + rank(center(G))) / 2`, and a dressed logical is any operator
//! commuting with the stabilizer group that is not itself a gauge element.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::CodeError;
use crate::gf2::{self, SymplecticBasis};
use crate::pauli::{Pauli, PauliOperator, SparsePauli};

/// An input stabilizer code given by a list of pairwise commuting checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    checks: Vec<PauliOperator>,
    labels: Vec<String>,
}

impl StabilizerCode {
    /// Validates and wraps a list of checks; labels default to `s0, s1, ...`.
    pub fn new(checks: Vec<PauliOperator>) -> Result<Self, CodeError> {
        let labels = (0..checks.len()).map(|i| format!("s{i}")).collect();
        Self::with_labels(checks, labels)
    }

    pub fn with_labels(checks: Vec<PauliOperator>, labels: Vec<String>) -> Result<Self, CodeError> {
        let first = checks.first().ok_or(CodeError::NoChecks)?;
        let n = first.num_qubits();
        if labels.len() != checks.len() {
            return Err(CodeError::LabelCount {
                labels: labels.len(),
                checks: checks.len(),
            });
        }
        for (index, c) in checks.iter().enumerate() {
            if c.num_qubits() != n {
                return Err(CodeError::LengthMismatch {
                    index,
                    expected: n,
                    found: c.num_qubits(),
                });
            }
            if c.is_identity() {
                return Err(CodeError::IdentityCheck { index });
            }
        }
        for a in 0..checks.len() {
            for b in (a + 1)..checks.len() {
                if !checks[a].commutes_with(&checks[b]) {
                    return Err(CodeError::NonCommuting { a, b });
                }
            }
        }
        Ok(Self { n, checks, labels })
    }

    /// Parses one Pauli string per check.
    pub fn from_strings(rows: &[&str]) -> Result<Self, crate::Error> {
        let checks = rows
            .iter()
            .map(|r| crate::pauli::parse_pauli(r))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(checks)?)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn num_checks(&self) -> usize {
        self.checks.len()
    }

    pub fn checks(&self) -> &[PauliOperator] {
        &self.checks
    }

    pub fn check(&self, i: usize) -> &PauliOperator {
        &self.checks[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Maximum check weight (omega).
    pub fn max_weight(&self) -> usize {
        self.checks.iter().map(|c| c.weight()).max().unwrap_or(0)
    }

    /// Maximum number of checks acting on one qubit (delta).
    pub fn max_degree(&self) -> usize {
        self.degree_profile().max_degree()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        degree_profile(self)
    }

    /// `n - rank(checks)`.
    pub fn k(&self) -> usize {
        self.n - gf2::gf2_rank(&self.checks)
    }

    /// Views the code as a subsystem code whose gauge group is abelian.
    pub fn as_subsystem(&self) -> SubsystemCode {
        let mut sub = SubsystemCode::new();
        for _ in 0..self.n {
            sub.push_qubit(Register::Data);
        }
        for c in &self.checks {
            sub.push_gauge(SparsePauli::from_dense(c), GaugeKind::Anc);
        }
        sub
    }

    /// Incidence pairs `(qubit, check)` in check-major order.
    pub fn incidences(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (s, c) in self.checks.iter().enumerate() {
            for q in c.support() {
                out.push((q, s));
            }
        }
        out
    }
}

/// Per-qubit counts of checks acting as X, Y and Z.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QubitDegree {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl QubitDegree {
    pub fn total(&self) -> usize {
        self.x + self.y + self.z
    }

    pub fn of(&self, p: Pauli) -> usize {
        match p {
            Pauli::X => self.x,
            Pauli::Y => self.y,
            Pauli::Z => self.z,
            Pauli::I => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub per_qubit: Vec<QubitDegree>,
}

impl DegreeProfile {
    pub fn of(&self, q: usize) -> QubitDegree {
        self.per_qubit[q]
    }

    pub fn max_degree(&self) -> usize {
        self.per_qubit.iter().map(QubitDegree::total).max().unwrap_or(0)
    }

    pub fn total_incidences(&self) -> usize {
        self.per_qubit.iter().map(QubitDegree::total).sum()
    }
}

/// Counts, for every qubit, how many checks act on it as X, Y and Z.
pub fn degree_profile(code: &StabilizerCode) -> DegreeProfile {
    let mut per_qubit = vec![QubitDegree::default(); code.n];
    for c in &code.checks {
        for (q, p) in c.terms() {
            let d = &mut per_qubit[q];
            match p {
                Pauli::X => d.x += 1,
                Pauli::Y => d.y += 1,
                Pauli::Z => d.z += 1,
                Pauli::I => {}
            }
        }
    }
    DegreeProfile { per_qubit }
}

/// Register a qubit belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Register {
    Data,
    Copy,
    Anc,
}

/// Which generating set a gauge generator belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GaugeKind {
    /// Single-qubit X check on a copy or ancilla qubit.
    SingleSite,
    /// Branch check: attachment `P_q Z_r` or chain `Z_r Z_r'`.
    Copy,
    /// Check obtained from an input check.
    Anc,
}

/// A subsystem code: gauge generators over register-tagged qubits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubsystemCode {
    registers: Vec<Register>,
    gauges: Vec<SparsePauli>,
    kinds: Vec<GaugeKind>,
}

impl SubsystemCode {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a code from parts, checking that every gauge acts inside `registers`.
    pub fn from_parts(
        registers: Vec<Register>,
        gauges: Vec<SparsePauli>,
        kinds: Vec<GaugeKind>,
    ) -> Result<Self, String> {
        if gauges.len() != kinds.len() {
            return Err(format!("{} gauges but {} kinds", gauges.len(), kinds.len()));
        }
        let code = Self {
            registers,
            gauges,
            kinds,
        };
        code.check_invariants()?;
        Ok(code)
    }

    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.num_qubits();
        for (i, g) in self.gauges.iter().enumerate() {
            if let Some(q) = g.support().find(|&q| q >= n) {
                return Err(format!("gauge {i} acts on qubit {q} >= {n}"));
            }
            if self.kinds[i] == GaugeKind::SingleSite {
                let ok = g.weight() == 1 && g.terms()[0].1 == Pauli::X;
                if !ok {
                    return Err(format!("single-site gauge {i} is {g}, not a weight-1 X"));
                }
            }
        }
        Ok(())
    }

    pub fn push_qubit(&mut self, register: Register) -> usize {
        self.registers.push(register);
        self.registers.len() - 1
    }

    pub fn push_gauge(&mut self, gauge: SparsePauli, kind: GaugeKind) -> usize {
        debug_assert!(gauge.support().all(|q| q < self.registers.len()));
        self.gauges.push(gauge);
        self.kinds.push(kind);
        self.gauges.len() - 1
    }

    pub(crate) fn gauge_mut(&mut self, i: usize) -> &mut SparsePauli {
        &mut self.gauges[i]
    }

    /// Removes gauge generator `i`, shifting later indices down by one.
    pub(crate) fn remove_gauge(&mut self, i: usize) -> SparsePauli {
        self.kinds.remove(i);
        self.gauges.remove(i)
    }

    pub fn num_qubits(&self) -> usize {
        self.registers.len()
    }

    pub fn num_gauges(&self) -> usize {
        self.gauges.len()
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn register_of(&self, q: usize) -> Register {
        self.registers[q]
    }

    pub fn gauges(&self) -> &[SparsePauli] {
        &self.gauges
    }

    pub fn gauge(&self, i: usize) -> &SparsePauli {
        &self.gauges[i]
    }

    pub fn kinds(&self) -> &[GaugeKind] {
        &self.kinds
    }

    pub fn kind(&self, i: usize) -> GaugeKind {
        self.kinds[i]
    }

    fn indices_of(&self, kind: GaugeKind) -> Vec<usize> {
        (0..self.gauges.len()).filter(|&i| self.kinds[i] == kind).collect()
    }

    pub fn single_site_set(&self) -> Vec<usize> {
        self.indices_of(GaugeKind::SingleSite)
    }

    pub fn copy_set(&self) -> Vec<usize> {
        self.indices_of(GaugeKind::Copy)
    }

    pub fn anc_set(&self) -> Vec<usize> {
        self.indices_of(GaugeKind::Anc)
    }

    pub fn count_register(&self, r: Register) -> usize {
        self.registers.iter().filter(|&&x| x == r).count()
    }

    /// Dense copies of all gauge generators.
    pub fn gauge_operators(&self) -> Vec<PauliOperator> {
        let n = self.num_qubits();
        self.gauges.iter().map(|g| g.to_dense(n)).collect()
    }

    pub fn max_weight(&self) -> usize {
        self.gauges.iter().map(SparsePauli::weight).max().unwrap_or(0)
    }

    /// Maximum weight over multi-qubit gauge generators.
    pub fn max_multi_weight(&self) -> usize {
        self.gauges
            .iter()
            .map(SparsePauli::weight)
            .filter(|&w| w >= 2)
            .max()
            .unwrap_or(0)
    }

    /// Number of multi-qubit gauge generators acting on each qubit.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_qubits()];
        for g in self.gauges.iter().filter(|g| g.weight() >= 2) {
            for q in g.support() {
                deg[q] += 1;
            }
        }
        deg
    }

    /// Maximum qubit degree, single-qubit gauges excluded.
    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Gauge generators touching each qubit.
    pub fn incident_gauges(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.num_qubits()];
        for (i, g) in self.gauges.iter().enumerate() {
            for q in g.support() {
                inc[q].push(i);
            }
        }
        inc
    }
}

/// Summary parameters of a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    /// Proven lower bound on the dressed distance.
    pub d_lower: Option<usize>,
    /// Exact dressed distance when a minimum-weight witness was found.
    pub d_exact: Option<usize>,
}

impl CodeParams {
    pub fn is_consistent(&self) -> bool {
        self.k <= self.n
            && match (self.d_lower, self.d_exact) {
                (Some(lo), Some(d)) => d >= lo,
                _ => true,
            }
    }
}

/// Number of logical qubits.
///
/// Uses `rank(center) = rank(G) - rank(Omega)` where `Omega` is the
/// anticommutation matrix of the generators, so both ranks are taken on sparse
/// matrices and large layouts stay cheap.
pub fn compute_k(code: &SubsystemCode) -> usize {
    let n = code.num_qubits();
    let rank_g = gf2::sparse_rank(code.gauges.iter().map(symplectic_columns), 2 * n);
    let omega = anticommutation_rows(code);
    let rank_omega = gf2::sparse_rank(omega, code.num_gauges());
    debug_assert_eq!(rank_omega % 2, 0);
    n + rank_omega / 2 - rank_g
}

/// Same quantity computed densely through an explicit center.
pub fn compute_k_dense(code: &SubsystemCode) -> usize {
    let n = code.num_qubits();
    let g = code.gauge_operators();
    let rank_g = gf2::gf2_rank(&g);
    let rank_s = gf2::center(&g).len();
    n - (rank_g + rank_s) / 2
}

fn symplectic_columns(g: &SparsePauli) -> Vec<u32> {
    let mut cols = Vec::with_capacity(2 * g.weight());
    for &(q, p) in g.terms() {
        let (x, z) = p.bits();
        if x {
            cols.push(2 * q as u32);
        }
        if z {
            cols.push(2 * q as u32 + 1);
        }
    }
    cols
}

/// Row `i` lists the generators anticommuting with generator `i`.
fn anticommutation_rows(code: &SubsystemCode) -> Vec<Vec<u32>> {
    let inc = code.incident_gauges();
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for (q, on_qubit) in inc.iter().enumerate() {
        for (a, &i) in on_qubit.iter().enumerate() {
            let pi = code.gauges[i].get(q);
            for &j in &on_qubit[a + 1..] {
                if !pi.commutes_with(code.gauges[j].get(q)) {
                    pairs.push((i as u32, j as u32));
                }
            }
        }
    }
    pairs.sort_unstable();
    let mut rows = vec![Vec::new(); code.num_gauges()];
    let mut k = 0;
    while k < pairs.len() {
        let mut end = k;
        while end < pairs.len() && pairs[end] == pairs[k] {
            end += 1;
        }
        if (end - k) % 2 == 1 {
            let (i, j) = pairs[k];
            rows[i as usize].push(j);
            rows[j as usize].push(i);
        }
        k = end;
    }
    for r in &mut rows {
        r.sort_unstable();
    }
    rows
}

/// Generators of the stabilizer group (the center of the gauge group).
pub fn stabilizer_group(code: &SubsystemCode) -> Vec<PauliOperator> {
    gf2::center(&code.gauge_operators())
}

/// `2k` bare logical operators, ordered as symplectic pairs `(X1, Z1, X2, Z2, ...)`.
pub fn bare_logicals(code: &SubsystemCode) -> Vec<PauliOperator> {
    let n = code.num_qubits();
    let g = code.gauge_operators();
    let normalizer = gf2::normalizer(n, &g);
    let center = gf2::center(&g);
    let mut basis = SymplecticBasis::from_generators(n, &center);
    let mut reps: Vec<PauliOperator> = normalizer.into_iter().filter(|p| basis.insert(p)).collect();
    symplectic_pairs(&mut reps)
}

/// Rearranges operators into anticommuting pairs, each pair commuting with
/// every other pair. Operators without a partner are dropped.
pub(crate) fn symplectic_pairs(ops: &mut Vec<PauliOperator>) -> Vec<PauliOperator> {
    let mut out = Vec::with_capacity(ops.len());
    while let Some(a) = ops.first().cloned() {
        ops.remove(0);
        let Some(j) = ops.iter().position(|b| !a.commutes_with(b)) else {
            continue;
        };
        let b = ops.remove(j);
        for c in ops.iter_mut() {
            let with_a = !c.commutes_with(&a);
            let with_b = !c.commutes_with(&b);
            if with_b {
                c.mul_assign(&a);
            }
            if with_a {
                c.mul_assign(&b);
            }
        }
        out.push(a);
        out.push(b);
    }
    out
}

/// Outcome of a bounded dressed-distance search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceSearch {
    /// Largest weight searched exhaustively.
    pub w_max: usize,
    /// Minimum-weight dressed logical found, if any has weight at most `w_max`.
    pub witness: Option<PauliOperator>,
}

impl DistanceSearch {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }

    pub fn distance(&self) -> Option<usize> {
        self.witness.as_ref().map(PauliOperator::weight)
    }

    /// Whether every operator of weight below `target` was ruled out.
    pub fn proves_at_least(&self, target: usize) -> bool {
        match self.distance() {
            Some(d) => d >= target,
            None => self.w_max + 1 >= target,
        }
    }
}

/// Precomputed data for the brute-force dressed-distance search.
struct DistanceOracle {
    n: usize,
    /// Syndrome of each single-qubit Pauli against the stabilizer generators,
    /// indexed by `3 * qubit + pauli_index`.
    syndromes: Vec<Vec<u64>>,
    gauge: SymplecticBasis,
}

impl DistanceOracle {
    fn new(code: &SubsystemCode) -> Self {
        let n = code.num_qubits();
        let g = code.gauge_operators();
        let stabilizers = gf2::center(&g);
        let words = stabilizers.len().div_ceil(64).max(1);
        let mut syndromes = Vec::with_capacity(3 * n);
        for q in 0..n {
            for p in Pauli::NON_IDENTITY {
                let mut v = vec![0u64; words];
                for (i, s) in stabilizers.iter().enumerate() {
                    if !p.commutes_with(s.get(q)) {
                        gf2::set_bit(&mut v, i);
                    }
                }
                syndromes.push(v);
            }
        }
        Self {
            n,
            syndromes,
            gauge: SymplecticBasis::from_generators(n, &g),
        }
    }

    /// First dressed logical of exactly weight `w` whose support starts at `first`,
    /// in lexicographic (support, Pauli) order.
    fn search_from(&self, w: usize, first: usize) -> Option<PauliOperator> {
        let words = self.syndromes[0].len();
        let mut support = Vec::with_capacity(w);
        let mut paulis = Vec::with_capacity(w);
        let mut acc = vec![vec![0u64; words]; w + 1];
        self.descend(w, first, true, &mut support, &mut paulis, &mut acc)
    }

    fn descend(
        &self,
        w: usize,
        start: usize,
        pinned: bool,
        support: &mut Vec<usize>,
        paulis: &mut Vec<Pauli>,
        acc: &mut Vec<Vec<u64>>,
    ) -> Option<PauliOperator> {
        let depth = support.len();
        if depth == w {
            if !gf2::is_zero(&acc[depth]) {
                return None;
            }
            let terms: Vec<(usize, Pauli)> = support.iter().copied().zip(paulis.iter().copied()).collect();
            let op = PauliOperator::from_sparse(self.n, &terms);
            return (!self.gauge.contains(&op)).then_some(op);
        }
        let remaining = w - depth;
        let last = if pinned { start + 1 } else { self.n + 1 - remaining };
        for q in start..last.min(self.n + 1 - remaining) {
            for (pi, p) in Pauli::NON_IDENTITY.into_iter().enumerate() {
                let (lo, hi) = acc.split_at_mut(depth + 1);
                hi[0].copy_from_slice(&lo[depth]);
                gf2::xor_into(&mut hi[0], &self.syndromes[3 * q + pi]);
                support.push(q);
                paulis.push(p);
                let found = self.descend(w, q + 1, false, support, paulis, acc);
                support.pop();
                paulis.pop();
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }

    fn search_weight(&self, w: usize) -> Option<PauliOperator> {
        if w > self.n {
            return None;
        }
        let firsts = 0..=(self.n - w);
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            let hits: Vec<(usize, PauliOperator)> = firsts
                .into_par_iter()
                .filter_map(|f| self.search_from(w, f).map(|op| (f, op)))
                .collect();
            hits.into_iter().min_by_key(|(f, _)| *f).map(|(_, op)| op)
        }
        #[cfg(not(feature = "parallel"))]
        {
            firsts.into_iter().find_map(|f| self.search_from(w, f))
        }
    }
}

/// Searches weights `1..=w_max` in increasing order for an operator that
/// commutes with the stabilizer group but is not a gauge element.
///
/// The result is deterministic: within a weight, candidates are ordered by
/// support and then by Pauli labels, and the first hit is returned.
pub fn dressed_distance(code: &SubsystemCode, w_max: usize) -> DistanceSearch {
    let oracle = DistanceOracle::new(code);
    let cap = w_max.min(code.num_qubits());
    for w in 1..=cap {
        if let Some(op) = oracle.search_weight(w) {
            return DistanceSearch {
                w_max,
                witness: Some(op),
            };
        }
    }
    DistanceSearch { w_max, witness: None }
}

/// Basis of relations among the checks: index sets whose product is the identity.
pub fn relations(code: &StabilizerCode) -> Vec<Vec<usize>> {
    let vectors: Vec<Vec<u64>> = code.checks.iter().map(gf2::pack_symplectic).collect();
    let width = vectors.first().map_or(0, Vec::len);
    gf2::dependencies(&vectors, width)
        .into_iter()
        .map(|c| gf2::ones(&c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes;

    #[test]
    fn degree_profile_examples() {
        let rep = codes::repetition(3);
        let d = degree_profile(&rep).of(1);
        assert_eq!((d.x, d.y, d.z), (0, 0, 2));

        // qubit 4 (1-indexed) of XZZXI, IXZZX, XIXZZ, ZXIXZ carries X, Z, Z, X
        let five = codes::five_qubit();
        let d = degree_profile(&five).of(3);
        assert_eq!(d.total(), 4);
        assert_eq!((d.x, d.z), (2, 2));

        let shor = codes::shor();
        let d = degree_profile(&shor).of(1);
        assert_eq!((d.x, d.y, d.z), (1, 0, 2));
    }

    #[test]
    fn degree_profile_sums_to_total_weight() {
        for code in [codes::five_qubit(), codes::shor(), codes::toric_2x2()] {
            let total: usize = code.checks().iter().map(|c| c.weight()).sum();
            assert_eq!(code.degree_profile().total_incidences(), total);
        }
    }

    #[test]
    fn k_examples() {
        assert_eq!(compute_k(&codes::repetition(3).as_subsystem()), 1);
        assert_eq!(compute_k(&codes::five_qubit().as_subsystem()), 1);
        assert_eq!(compute_k(&codes::bacon_shor_3x3()), 1);
    }

    #[test]
    fn sparse_k_matches_dense_k() {
        let mut codes = vec![codes::bacon_shor_3x3()];
        for c in [codes::five_qubit(), codes::shor(), codes::toric_2x2()] {
            codes.push(c.as_subsystem());
        }
        for c in &codes {
            assert_eq!(compute_k(c), compute_k_dense(c));
        }
    }

    #[test]
    fn k_of_abelian_matches_rank_formula() {
        for code in [codes::shor(), codes::toric_2x2(), codes::four_two_two()] {
            assert_eq!(compute_k(&code.as_subsystem()), code.k());
        }
    }

    #[test]
    fn bare_logicals_of_repetition() {
        let rep = codes::repetition(3).as_subsystem();
        let logicals = bare_logicals(&rep);
        assert_eq!(logicals.len(), 2);
        assert!(!logicals[0].commutes_with(&logicals[1]));
        let stabs = codes::repetition(3).checks().to_vec();
        // Z1 is a logical up to stabilizers, XXX is the other.
        let z1: PauliOperator = "ZII".parse().unwrap();
        let xxx: PauliOperator = "XXX".parse().unwrap();
        let span_with = |extra: &PauliOperator| {
            let mut g = stabs.clone();
            g.extend(logicals.iter().cloned());
            gf2::in_group(extra, &g)
        };
        assert!(span_with(&z1));
        assert!(span_with(&xxx));
        for l in &logicals {
            for g in rep.gauge_operators() {
                assert!(l.commutes_with(&g));
            }
        }
    }

    #[test]
    fn dressed_distance_of_stabilizer_codes() {
        let rep = dressed_distance(&codes::repetition(3).as_subsystem(), 3);
        assert_eq!(rep.distance(), Some(1));
        let five = dressed_distance(&codes::five_qubit().as_subsystem(), 5);
        assert_eq!(five.distance(), Some(3));
        let shor = dressed_distance(&codes::shor().as_subsystem(), 4);
        assert_eq!(shor.distance(), Some(3));
        let bs = dressed_distance(&codes::bacon_shor_3x3(), 4);
        assert_eq!(bs.distance(), Some(3));
    }

    #[test]
    fn dressed_distance_not_found_below_distance() {
        let res = dressed_distance(&codes::five_qubit().as_subsystem(), 2);
        assert!(!res.found());
        assert!(res.proves_at_least(3));
        assert!(!res.proves_at_least(4));
    }

    #[test]
    fn relation_examples() {
        assert!(relations(&codes::repetition(3)).is_empty());
        let over = StabilizerCode::from_strings(&["ZZI", "IZZ", "ZIZ"]).unwrap();
        assert_eq!(relations(&over), vec![vec![0, 1, 2]]);
        let toric = relations(&codes::toric_2x2());
        assert_eq!(toric.len(), 2);
    }

    #[test]
    fn stabilizer_code_validation() {
        assert_eq!(
            StabilizerCode::from_strings(&["XI", "ZI"]),
            Err(CodeError::NonCommuting { a: 0, b: 1 }.into())
        );
        assert_eq!(
            StabilizerCode::from_strings(&["XX", "III"]),
            Err(CodeError::LengthMismatch {
                index: 1,
                expected: 2,
                found: 3
            }
            .into())
        );
        assert_eq!(
            StabilizerCode::from_strings(&["II"]),
            Err(CodeError::IdentityCheck { index: 0 }.into())
        );
        assert_eq!(StabilizerCode::new(Vec::new()), Err(CodeError::NoChecks));
    }
}
