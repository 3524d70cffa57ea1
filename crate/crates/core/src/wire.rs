//! Wire codes: P-branches for degree reduction, check chains for weight
//! reduction, edge stretching, and the provenance needed to recover every
//! input check from gauge generators.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::code::{GaugeKind, Register, StabilizerCode, SubsystemCode};
use crate::error::WireError;
use crate::gf2;
use crate::pauli::{Pauli, PauliOperator, SparsePauli};

/// A chain of copy qubits distributing the P-type checks of one data qubit.
///
/// `links` starts with the attachment check `P_q Z_r1` and continues along the
/// chain. The product of `links[..=reach[i]]` is `P_q Z_{copies[i]}`, which is
/// the copy-register correction used to recover checks slotted on copy `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pauli: Pauli,
    target: usize,
    copies: Vec<usize>,
    links: Vec<usize>,
    reach: Vec<usize>,
    single_x: Vec<usize>,
}

impl Branch {
    pub fn from_parts(
        pauli: Pauli,
        target: usize,
        copies: Vec<usize>,
        links: Vec<usize>,
        reach: Vec<usize>,
        single_x: Vec<usize>,
    ) -> Result<Self, WireError> {
        if copies.len() != reach.len() || reach.iter().any(|&r| r >= links.len()) {
            return Err(WireError::Inconsistent("branch reach does not match its links".into()));
        }
        Ok(Self {
            pauli,
            target,
            copies,
            links,
            reach,
            single_x,
        })
    }

    pub fn pauli(&self) -> Pauli {
        self.pauli
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn copies(&self) -> &[usize] {
        &self.copies
    }

    /// Gauge index of the attachment check `P_q Z_r1`.
    pub fn attach_check(&self) -> usize {
        self.links[0]
    }

    pub fn links(&self) -> &[usize] {
        &self.links
    }

    pub fn reach(&self) -> &[usize] {
        &self.reach
    }

    pub fn single_x(&self) -> &[usize] {
        &self.single_x
    }

    /// Links whose product is `P_q Z_{copies[i]}`.
    pub fn links_to(&self, i: usize) -> &[usize] {
        &self.links[..=self.reach[i]]
    }
}

/// Where one term of an input check lives in the wire code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    /// Data qubit of the input check term.
    pub qubit: usize,
    /// Input Pauli on that qubit.
    pub pauli: Pauli,
    /// Wire qubit carrying the term: the data qubit itself or a copy.
    pub site: usize,
    /// `(branch, copy index)` when the term moved onto a copy qubit.
    pub branch: Option<(usize, usize)>,
}

impl Slot {
    /// Pauli the check's gauge generators apply at `site`.
    pub fn site_pauli(&self) -> Pauli {
        if self.branch.is_some() {
            Pauli::Z
        } else {
            self.pauli
        }
    }
}

/// Generating set a gauge generator was created for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Owner {
    Check(usize),
    Branch(usize),
    SingleSite,
}

/// Center element extending an input check onto the ancillary registers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerImage {
    pub check: usize,
    /// Non-data qubits carrying an X factor.
    pub corrections: Vec<usize>,
    pub operator: SparsePauli,
}

/// Output of the construction: a subsystem code plus provenance back to the
/// input code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WireCode {
    input: StabilizerCode,
    base: SubsystemCode,
    branches: Vec<Branch>,
    slots: Vec<Vec<Slot>>,
    anc_of: Vec<Vec<usize>>,
    owner: Vec<Owner>,
    edge_lengths: BTreeMap<(usize, usize), usize>,
}

/// How branches are created when building a skeleton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum BranchMode {
    /// One branch per `(qubit, type)` whose degree is at least the given value.
    PerType(usize),
    /// One single-copy branch per incidence pair.
    PerIncidence,
}

impl WireCode {
    /// Reassembles a wire code from its parts and checks its provenance.
    pub fn from_parts(
        input: StabilizerCode,
        base: SubsystemCode,
        branches: Vec<Branch>,
        slots: Vec<Vec<Slot>>,
        anc_of: Vec<Vec<usize>>,
        edge_lengths: BTreeMap<(usize, usize), usize>,
    ) -> Result<Self, WireError> {
        let m = input.num_checks();
        if slots.len() != m || anc_of.len() != m {
            return Err(WireError::Inconsistent("provenance does not cover every check".into()));
        }
        let mut owner = vec![Owner::SingleSite; base.num_gauges()];
        let out_of_range = |g: usize| WireError::Inconsistent(alloc::format!("gauge {g} out of range"));
        for (s, gs) in anc_of.iter().enumerate() {
            for &g in gs {
                *owner.get_mut(g).ok_or_else(|| out_of_range(g))? = Owner::Check(s);
            }
        }
        for (b, br) in branches.iter().enumerate() {
            for &g in &br.links {
                *owner.get_mut(g).ok_or_else(|| out_of_range(g))? = Owner::Branch(b);
            }
        }
        let wire = Self {
            input,
            base,
            branches,
            slots,
            anc_of,
            owner,
            edge_lengths,
        };
        wire.base.check_invariants().map_err(WireError::Inconsistent)?;
        for s in 0..m {
            wire.stabilizer_recovery(s)?;
        }
        Ok(wire)
    }

    /// Data qubits and branches, with every check still unplaced.
    pub(crate) fn skeleton(input: &StabilizerCode, mode: BranchMode) -> Self {
        let n = input.num_qubits();
        let m = input.num_checks();
        let mut base = SubsystemCode::new();
        for _ in 0..n {
            base.push_qubit(Register::Data);
        }
        let mut wire = Self {
            input: input.clone(),
            base,
            branches: Vec::new(),
            slots: vec![Vec::new(); m],
            anc_of: vec![Vec::new(); m],
            owner: Vec::new(),
            edge_lengths: BTreeMap::new(),
        };
        let profile = input.degree_profile();
        match mode {
            BranchMode::PerType(min) => {
                let mut branch_of = BTreeMap::new();
                for q in 0..n {
                    for p in Pauli::NON_IDENTITY {
                        let count = profile.of(q).of(p);
                        if count >= min.max(1) {
                            branch_of.insert((q, p), wire.add_branch(q, p, count));
                        }
                    }
                }
                let mut used: BTreeMap<usize, usize> = BTreeMap::new();
                for s in 0..m {
                    for (q, p) in input.check(s).terms() {
                        let slot = match branch_of.get(&(q, p)) {
                            Some(&b) => {
                                let i = used.entry(b).or_insert(0);
                                let slot = Slot {
                                    qubit: q,
                                    pauli: p,
                                    site: wire.branches[b].copies[*i],
                                    branch: Some((b, *i)),
                                };
                                *i += 1;
                                slot
                            }
                            None => Slot {
                                qubit: q,
                                pauli: p,
                                site: q,
                                branch: None,
                            },
                        };
                        wire.slots[s].push(slot);
                    }
                }
            }
            BranchMode::PerIncidence => {
                for s in 0..m {
                    for (q, p) in input.check(s).terms() {
                        let b = wire.add_branch(q, p, 1);
                        wire.slots[s].push(Slot {
                            qubit: q,
                            pauli: p,
                            site: wire.branches[b].copies[0],
                            branch: Some((b, 0)),
                        });
                    }
                }
            }
        }
        wire
    }

    pub(crate) fn add_qubit(&mut self, register: Register) -> usize {
        self.base.push_qubit(register)
    }

    pub(crate) fn add_gauge(&mut self, gauge: SparsePauli, owner: Owner) -> usize {
        let kind = match owner {
            Owner::Check(_) => GaugeKind::Anc,
            Owner::Branch(_) => GaugeKind::Copy,
            Owner::SingleSite => GaugeKind::SingleSite,
        };
        let g = self.base.push_gauge(gauge, kind);
        self.owner.push(owner);
        match owner {
            Owner::Check(s) => self.anc_of[s].push(g),
            Owner::Branch(b) => self.branches[b].links.push(g),
            Owner::SingleSite => {}
        }
        g
    }

    /// Adds a qubit carrying a single-site X gauge.
    pub(crate) fn add_wire_qubit(&mut self, register: Register) -> usize {
        let r = self.add_qubit(register);
        self.add_gauge(SparsePauli::single(r, Pauli::X), Owner::SingleSite);
        r
    }

    fn add_branch(&mut self, target: usize, pauli: Pauli, length: usize) -> usize {
        let b = self.branches.len();
        self.branches.push(Branch {
            pauli,
            target,
            copies: Vec::new(),
            links: Vec::new(),
            reach: Vec::new(),
            single_x: Vec::new(),
        });
        let mut prev: Option<usize> = None;
        for i in 0..length {
            let r = self.add_qubit(Register::Copy);
            let link = match prev {
                None => SparsePauli::new(vec![(target, pauli), (r, Pauli::Z)]),
                Some(p) => SparsePauli::new(vec![(p, Pauli::Z), (r, Pauli::Z)]),
            };
            self.add_gauge(link, Owner::Branch(b));
            let x = self.add_gauge(SparsePauli::single(r, Pauli::X), Owner::SingleSite);
            let br = &mut self.branches[b];
            br.copies.push(r);
            br.reach.push(i);
            br.single_x.push(x);
            prev = Some(r);
        }
        b
    }

    /// Terms of check `s` as placed by its slots, in input qubit order.
    pub fn slot_terms(&self, s: usize) -> Vec<(usize, Pauli)> {
        self.slots[s].iter().map(|sl| (sl.site, sl.site_pauli())).collect()
    }

    /// Places check `s` as one gauge generator on its slot sites.
    pub(crate) fn place_check_whole(&mut self, s: usize) -> usize {
        let g = SparsePauli::new(self.slot_terms(s));
        self.add_gauge(g, Owner::Check(s))
    }

    /// Places check `s` through the weight-reduction chain when its weight is at least 4.
    pub(crate) fn place_check_chain(&mut self, s: usize) {
        let terms = self.slot_terms(s);
        if terms.len() < 2 {
            self.place_check_whole(s);
            return;
        }
        let first = self.base.num_qubits();
        let gadget = weight_reduce_check(&terms, first).expect("weight checked above");
        for &a in &gadget.anc {
            let got = self.add_qubit(Register::Anc);
            debug_assert_eq!(got, a);
        }
        for g in gadget.gauges {
            self.add_gauge(g, Owner::Check(s));
        }
        for x in gadget.single_x {
            self.add_gauge(x, Owner::SingleSite);
        }
    }

    pub fn input(&self) -> &StabilizerCode {
        &self.input
    }

    pub fn subsystem(&self) -> &SubsystemCode {
        &self.base
    }

    pub fn num_qubits(&self) -> usize {
        self.base.num_qubits()
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    /// Branches attached to data qubit `q`.
    pub fn branches_on(&self, q: usize) -> impl Iterator<Item = (usize, &Branch)> {
        self.branches.iter().enumerate().filter(move |(_, b)| b.target == q)
    }

    pub fn slots(&self, s: usize) -> &[Slot] {
        &self.slots[s]
    }

    pub fn all_slots(&self) -> &[Vec<Slot>] {
        &self.slots
    }

    /// Gauge generators obtained from input check `s`.
    pub fn anc_of(&self, s: usize) -> &[usize] {
        &self.anc_of[s]
    }

    pub fn all_anc(&self) -> &[Vec<usize>] {
        &self.anc_of
    }

    pub fn owner(&self, g: usize) -> Owner {
        self.owner[g]
    }

    /// Copy qubit carrying the term of check `s` on data qubit `q`.
    pub fn copy_slot(&self, s: usize, q: usize) -> Option<usize> {
        self.slots[s]
            .iter()
            .find(|sl| sl.qubit == q && sl.branch.is_some())
            .map(|sl| sl.site)
    }

    pub fn edge_lengths(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.edge_lengths
    }

    /// Length of the edge between gauge `g` and qubit `q`; 1 unless stretched.
    pub fn edge_length(&self, g: usize, q: usize) -> usize {
        self.edge_lengths.get(&(g, q)).copied().unwrap_or(1)
    }

    pub fn max_edge_length(&self) -> usize {
        self.edge_lengths.values().copied().max().unwrap_or(1)
    }

    /// Copy-register correction `g_copy` for check `s`: branch links joining each
    /// used copy back to its data qubit.
    pub fn copy_correction(&self, s: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for sl in &self.slots[s] {
            if let Some((b, i)) = sl.branch {
                out.extend_from_slice(self.branches[b].links_to(i));
            }
        }
        out
    }

    /// Gauge generators whose product is `s ⊗ 1`: `Γ_s^anc` together with `g_copy`.
    pub fn recovery_gauges(&self, s: usize) -> Vec<usize> {
        let mut all: Vec<usize> = self.anc_of[s].clone();
        all.extend(self.copy_correction(s));
        all.sort_unstable();
        // Repeated generators cancel in the product.
        let mut out: Vec<usize> = Vec::with_capacity(all.len());
        for g in all {
            if out.last() == Some(&g) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        out
    }

    fn product_of(&self, gauges: &[usize]) -> PauliOperator {
        let mut acc = PauliOperator::identity(self.num_qubits());
        for &g in gauges {
            for &(q, p) in self.base.gauge(g).terms() {
                acc.set(q, multiply_single(acc.get(q), p));
            }
        }
        acc
    }

    /// Product of `Γ_s^anc` and `g_copy`; errors unless it equals `s ⊗ 1`.
    pub fn stabilizer_recovery(&self, s: usize) -> Result<PauliOperator, WireError> {
        if s >= self.input.num_checks() {
            return Err(WireError::NoSuchCheck(s));
        }
        let got = self.product_of(&self.recovery_gauges(s));
        let want = self.input.check(s).extended(self.num_qubits());
        if got == want {
            Ok(got)
        } else {
            Err(WireError::RecoveryMismatch {
                check: s,
                found: SparsePauli::from_dense(&got).to_string(),
            })
        }
    }

    /// The stabilizer of the wire code that restricts to check `s` on the data
    /// register: `s ⊗ 1` times X on a set of non-data qubits, chosen so that it
    /// commutes with every gauge generator.
    pub fn stabilizer_image(&self, s: usize) -> Result<StabilizerImage, WireError> {
        if s >= self.input.num_checks() {
            return Err(WireError::NoSuchCheck(s));
        }
        let check = self.input.check(s);
        let n_data = self.input.num_qubits();
        let n = self.num_qubits();
        let is_data = |q: usize| q < n_data;

        let mut eq_vars: Vec<Vec<usize>> = Vec::new();
        let mut rhs: Vec<bool> = Vec::new();
        for g in self.base.gauges() {
            let mut parity = false;
            let mut vars = Vec::new();
            for &(q, p) in g.terms() {
                if is_data(q) {
                    parity ^= !p.commutes_with(check.get(q));
                } else if p.bits().1 {
                    vars.push(q);
                }
            }
            if vars.is_empty() {
                if parity {
                    return Err(WireError::NoImage { check: s });
                }
                continue;
            }
            eq_vars.push(vars);
            rhs.push(parity);
        }

        let mut var_eqs: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (e, vars) in eq_vars.iter().enumerate() {
            for &v in vars {
                var_eqs[v].push(e as u32);
            }
        }
        let mut value: Vec<Option<bool>> = vec![None; n];
        let mut unknown: Vec<usize> = eq_vars.iter().map(Vec::len).collect();
        let mut queue: Vec<usize> = (0..eq_vars.len()).filter(|&e| unknown[e] == 1).collect();
        let assign = |v: usize,
                      val: bool,
                      value: &mut Vec<Option<bool>>,
                      unknown: &mut Vec<usize>,
                      rhs: &mut Vec<bool>,
                      queue: &mut Vec<usize>|
         -> Result<(), WireError> {
            value[v] = Some(val);
            for &e in &var_eqs[v] {
                let e = e as usize;
                unknown[e] -= 1;
                rhs[e] ^= val;
                match unknown[e] {
                    0 if rhs[e] => return Err(WireError::NoImage { check: s }),
                    1 => queue.push(e),
                    _ => {}
                }
            }
            Ok(())
        };
        while let Some(e) = queue.pop() {
            if unknown[e] != 1 {
                continue;
            }
            let v = *eq_vars[e]
                .iter()
                .find(|&&v| value[v].is_none())
                .expect("one unknown left");
            let val = rhs[e];
            assign(v, val, &mut value, &mut unknown, &mut rhs, &mut queue)?;
        }

        // Whatever peeling left is solved densely.
        let rest: Vec<usize> = (0..eq_vars.len()).filter(|&e| unknown[e] > 0).collect();
        if !rest.is_empty() {
            let mut cols: BTreeMap<usize, usize> = BTreeMap::new();
            for &e in &rest {
                for &v in &eq_vars[e] {
                    if value[v].is_none() {
                        let next = cols.len();
                        cols.entry(v).or_insert(next);
                    }
                }
            }
            let ncols = cols.len();
            let words = crate::pauli::words_for(ncols);
            let rows: Vec<Vec<u64>> = rest
                .iter()
                .map(|&e| {
                    let mut r = vec![0u64; words];
                    for &v in &eq_vars[e] {
                        if let Some(&c) = cols.get(&v) {
                            gf2::flip_bit(&mut r, c);
                        }
                    }
                    r
                })
                .collect();
            let b: Vec<bool> = rest.iter().map(|&e| rhs[e]).collect();
            let x = gf2::solve(&rows, &b, ncols).ok_or(WireError::NoImage { check: s })?;
            for (&v, &c) in &cols {
                value[v] = Some(gf2::get_bit(&x, c));
            }
        }

        let corrections: Vec<usize> = (n_data..n).filter(|&q| value[q] == Some(true)).collect();
        let mut terms = check.terms();
        terms.extend(corrections.iter().map(|&q| (q, Pauli::X)));
        Ok(StabilizerImage {
            check: s,
            corrections,
            operator: SparsePauli::new(terms),
        })
    }

    /// Whether the images of the checks in `relation` multiply to the identity.
    pub fn verify_relation_image(&self, relation: &[usize]) -> Result<bool, WireError> {
        verify_relation_image(&self.input, self, relation)
    }

    /// Replaces the coupling of gauge `gauge` to `qubit` by a wire of length `len`.
    ///
    /// With `P` the gauge's Pauli on `qubit`, this adds qubits `b1..b_{len-1}`
    /// with checks `P Z_b1, Z_b1 Z_b2, ...` and single-site X on each, and moves
    /// the gauge's term from `qubit` to `Z` on the last new qubit. Returns the new
    /// qubits in order from `qubit`.
    pub fn stretch_edge(&mut self, gauge: usize, qubit: usize, len: usize) -> Result<Vec<usize>, WireError> {
        if len == 0 {
            return Err(WireError::ZeroLength);
        }
        if gauge >= self.base.num_gauges() || !self.base.gauge(gauge).acts_on(qubit) {
            return Err(WireError::NoSuchEdge { gauge, qubit });
        }
        let owner = self.owner[gauge];
        if owner == Owner::SingleSite {
            return Err(WireError::SingleSiteEdge { gauge });
        }
        let key = (gauge, qubit);
        let prior = self.edge_length(gauge, qubit);
        self.edge_lengths.insert(key, prior + len - 1);
        if len == 1 {
            return Ok(Vec::new());
        }
        let register = match owner {
            Owner::Branch(_) => Register::Copy,
            _ => Register::Anc,
        };
        let p = self.base.gauge(gauge).get(qubit);
        let mut new_qubits = Vec::with_capacity(len - 1);
        let mut new_gauges = Vec::with_capacity(len - 1);
        let mut prev: Option<usize> = None;
        for _ in 0..len - 1 {
            let b = self.add_wire_qubit(register);
            let link = match prev {
                None => SparsePauli::new(vec![(qubit, p), (b, Pauli::Z)]),
                Some(a) => SparsePauli::new(vec![(a, Pauli::Z), (b, Pauli::Z)]),
            };
            let kind = if register == Register::Copy {
                GaugeKind::Copy
            } else {
                GaugeKind::Anc
            };
            new_gauges.push(self.base.push_gauge(link, kind));
            self.owner.push(owner);
            new_qubits.push(b);
            prev = Some(b);
        }
        let last = *new_qubits.last().expect("len >= 2");
        let g = self.base.gauge_mut(gauge);
        g.set(qubit, Pauli::I);
        g.set(last, Pauli::Z);
        match owner {
            Owner::Check(s) => self.anc_of[s].extend_from_slice(&new_gauges),
            Owner::Branch(b) => {
                let br = &mut self.branches[b];
                let pos = br.links.iter().position(|&l| l == gauge).expect("link of its branch");
                let shift = new_gauges.len();
                br.links.splice(pos + 1..pos + 1, new_gauges.iter().copied());
                for r in &mut br.reach {
                    if *r >= pos {
                        *r += shift;
                    }
                }
            }
            Owner::SingleSite => unreachable!(),
        }
        Ok(new_qubits)
    }

    /// Copy of the code without the single-site gauge generator `g`; later
    /// gauge indices shift down by one. Used to build negative controls.
    pub fn remove_single_site(&self, g: usize) -> Result<WireCode, WireError> {
        if self.owner.get(g) != Some(&Owner::SingleSite) {
            return Err(WireError::Inconsistent(alloc::format!(
                "gauge {g} is not a single-site check"
            )));
        }
        let shift = |i: usize| if i > g { i - 1 } else { i };
        let mut out = self.clone();
        out.base.remove_gauge(g);
        out.owner.remove(g);
        for gs in &mut out.anc_of {
            gs.iter_mut().for_each(|i| *i = shift(*i));
        }
        for br in &mut out.branches {
            br.links.iter_mut().for_each(|i| *i = shift(*i));
            br.single_x.retain(|&i| i != g);
            br.single_x.iter_mut().for_each(|i| *i = shift(*i));
        }
        out.edge_lengths = self
            .edge_lengths
            .iter()
            .map(|(&(gauge, q), &len)| ((shift(gauge), q), len))
            .collect();
        Ok(out)
    }

    /// Checks the weight and degree bounds and stabilizer recovery for every check.
    pub fn check_invariants(&self) -> Result<(), WireError> {
        self.base.check_invariants().map_err(WireError::Inconsistent)?;
        let w = self.base.max_weight();
        if w > 3 {
            return Err(WireError::Inconsistent(alloc::format!("gauge weight {w} exceeds 3")));
        }
        let d = self.base.max_degree();
        if d > 3 {
            return Err(WireError::Inconsistent(alloc::format!("qubit degree {d} exceeds 3")));
        }
        for s in 0..self.input.num_checks() {
            if self.anc_of[s].is_empty() {
                return Err(WireError::Inconsistent(alloc::format!(
                    "check {s} has no gauge generators"
                )));
            }
            self.stabilizer_recovery(s)?;
        }
        Ok(())
    }
}

fn multiply_single(a: Pauli, b: Pauli) -> Pauli {
    let (ax, az) = a.bits();
    let (bx, bz) = b.bits();
    Pauli::from_bits(ax ^ bx, az ^ bz)
}

/// Gadget replacing one check: new ancilla qubits, gauge checks and the
/// single-site X on each ancilla.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckGadget {
    pub anc: Vec<usize>,
    pub gauges: Vec<SparsePauli>,
    pub single_x: Vec<SparsePauli>,
}

/// Splits a check, given as ordered terms, into a chain of weight-3 gauge checks.
///
/// Ancillas are numbered from `first_anc`. Checks of weight 2 or 3 come back
/// unchanged; weight `w >= 4` yields `w - 3` ancillas and `w - 2` checks
/// `P1 P2 Z_a1, Z_a1 P3 Z_a2, ..., Z_a P_{w-1} P_w`.
pub fn weight_reduce_check(terms: &[(usize, Pauli)], first_anc: usize) -> Result<CheckGadget, WireError> {
    let w = terms.len();
    if w < 2 {
        return Err(WireError::WeightTooSmall { weight: w });
    }
    if w <= 3 {
        return Ok(CheckGadget {
            anc: Vec::new(),
            gauges: vec![SparsePauli::new(terms.to_vec())],
            single_x: Vec::new(),
        });
    }
    let anc: Vec<usize> = (first_anc..first_anc + w - 3).collect();
    let mut gauges = Vec::with_capacity(w - 2);
    gauges.push(SparsePauli::new(vec![terms[0], terms[1], (anc[0], Pauli::Z)]));
    for i in 1..anc.len() {
        gauges.push(SparsePauli::new(vec![
            (anc[i - 1], Pauli::Z),
            terms[i + 1],
            (anc[i], Pauli::Z),
        ]));
    }
    gauges.push(SparsePauli::new(vec![
        (anc[anc.len() - 1], Pauli::Z),
        terms[w - 2],
        terms[w - 1],
    ]));
    let single_x = anc.iter().map(|&a| SparsePauli::single(a, Pauli::X)).collect();
    Ok(CheckGadget { anc, gauges, single_x })
}

/// Degree reduction only: a P-branch for every `(qubit, type)` of degree at
/// least 2, each check kept as one gauge generator on its slot sites.
pub fn degree_reduce(code: &StabilizerCode) -> WireCode {
    let mut wire = WireCode::skeleton(code, BranchMode::PerType(2));
    for s in 0..code.num_checks() {
        wire.place_check_whole(s);
    }
    wire
}

/// Full wire code with every edge of length 1: degree reduction followed by
/// weight reduction of every check of weight at least 4.
pub fn build_wire_code(code: &StabilizerCode) -> WireCode {
    let mut wire = WireCode::skeleton(code, BranchMode::PerType(2));
    for s in 0..code.num_checks() {
        wire.place_check_chain(s);
    }
    wire
}

/// Copy of `wire` with one edge stretched to length `len`.
pub fn stretch_edge(wire: &WireCode, gauge: usize, qubit: usize, len: usize) -> Result<WireCode, WireError> {
    let mut out = wire.clone();
    out.stretch_edge(gauge, qubit, len)?;
    Ok(out)
}

/// Whether the stabilizer images of the input checks in `relation` multiply
/// to the identity on every register.
pub fn verify_relation_image(input: &StabilizerCode, wire: &WireCode, relation: &[usize]) -> Result<bool, WireError> {
    let n = input.num_qubits();
    let mut product = PauliOperator::identity(n);
    for &s in relation {
        if s >= input.num_checks() {
            return Err(WireError::NoSuchCheck(s));
        }
        product.mul_assign(input.check(s));
    }
    if !product.is_identity() {
        return Err(WireError::NotARelation(relation.to_vec()));
    }
    let mut corrections: Vec<usize> = Vec::new();
    for &s in relation {
        corrections.extend(wire.stabilizer_image(s)?.corrections);
    }
    corrections.sort_unstable();
    Ok(pairs_cancel(&corrections))
}

fn pairs_cancel(sorted: &[usize]) -> bool {
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            return false;
        }
        i = j;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{compute_k, relations};
    use crate::codes;

    fn all_fixtures() -> Vec<StabilizerCode> {
        vec![
            codes::repetition(3),
            codes::five_qubit(),
            codes::shor(),
            codes::four_two_two(),
            codes::toric_2x2(),
            codes::xzzx_check(),
            codes::repetition_overcomplete(),
            codes::rotated_surface(3),
        ]
    }

    #[test]
    fn repetition_gets_one_branch() {
        let wire = build_wire_code(&codes::repetition(3));
        assert_eq!(wire.branches().len(), 1);
        let b = &wire.branches()[0];
        assert_eq!((b.target(), b.pauli(), b.copies().len()), (1, Pauli::Z, 2));
        assert_eq!(wire.num_qubits(), 5);
        assert!(wire.subsystem().anc_set().len() == 2);
    }

    #[test]
    fn five_qubit_register_counts() {
        let wire = build_wire_code(&codes::five_qubit());
        let sub = wire.subsystem();
        assert_eq!(sub.count_register(Register::Data), 5);
        assert_eq!(sub.count_register(Register::Copy), 12);
        assert_eq!(sub.count_register(Register::Anc), 4);
        let q3: Vec<_> = wire
            .branches_on(3)
            .map(|(_, b)| (b.pauli(), b.copies().len()))
            .collect();
        assert_eq!(q3, vec![(Pauli::X, 2), (Pauli::Z, 2)]);
    }

    #[test]
    fn shor_qubit_without_branches() {
        let wire = build_wire_code(&codes::shor());
        assert_eq!(wire.branches_on(0).count(), 0);
    }

    #[test]
    fn weight_reduction_shapes() {
        let terms = [(0, Pauli::X), (1, Pauli::Z), (2, Pauli::Z), (3, Pauli::X)];
        let g = weight_reduce_check(&terms, 4).unwrap();
        assert_eq!(g.anc, vec![4]);
        assert_eq!(g.gauges[0].to_string(), "X0 Z1 Z4");
        assert_eq!(g.gauges[1].to_string(), "Z2 X3 Z4");
        let six: Vec<_> = (0..6).map(|q| (q, Pauli::X)).collect();
        let g = weight_reduce_check(&six, 6).unwrap();
        assert_eq!((g.anc.len(), g.gauges.len()), (3, 4));
        assert!(g.gauges.iter().all(|c| c.weight() == 3));
        let three = [(0, Pauli::Z), (1, Pauli::Z), (2, Pauli::Z)];
        assert_eq!(weight_reduce_check(&three, 3).unwrap().anc.len(), 0);
        assert_eq!(
            weight_reduce_check(&three[..1], 3),
            Err(WireError::WeightTooSmall { weight: 1 })
        );
    }

    #[test]
    fn gadget_center_contains_input_check() {
        let wire = build_wire_code(&codes::xzzx_check());
        assert_eq!(wire.num_qubits(), 5);
        let center = crate::gf2::center(&wire.subsystem().gauge_operators());
        let s: PauliOperator = "XZZXI".parse().unwrap();
        assert!(crate::gf2::in_group(&s, &center));
    }

    #[test]
    fn fixtures_satisfy_wire_invariants() {
        for code in all_fixtures() {
            let wire = build_wire_code(&code);
            wire.check_invariants().unwrap();
            assert_eq!(compute_k(wire.subsystem()), code.k());
            let delta = code.max_degree();
            assert!(wire.num_qubits() <= 3 * delta * code.num_qubits());
            for s in 0..code.num_checks() {
                let img = wire.stabilizer_image(s).unwrap();
                let op = img.operator.to_dense(wire.num_qubits());
                for g in wire.subsystem().gauge_operators() {
                    assert!(op.commutes_with(&g));
                }
            }
        }
    }

    #[test]
    fn degree_reduce_preserves_k() {
        for code in all_fixtures() {
            let wire = degree_reduce(&code);
            assert_eq!(compute_k(wire.subsystem()), code.k());
            for s in 0..code.num_checks() {
                wire.stabilizer_recovery(s).unwrap();
            }
        }
    }

    #[test]
    fn relation_images_cancel() {
        for code in [codes::repetition_overcomplete(), codes::toric_2x2()] {
            let wire = build_wire_code(&code);
            for r in relations(&code) {
                assert!(wire.verify_relation_image(&r).unwrap());
            }
        }
        let wire = build_wire_code(&codes::repetition(3));
        assert_eq!(wire.verify_relation_image(&[0]), Err(WireError::NotARelation(vec![0])));
    }

    #[test]
    fn stretching_preserves_k_and_recovery() {
        let code = codes::five_qubit();
        let mut wire = build_wire_code(&code);
        let gauges: Vec<usize> = (0..wire.subsystem().num_gauges())
            .filter(|&g| wire.owner(g) != Owner::SingleSite)
            .collect();
        for (i, &g) in gauges.iter().enumerate() {
            let q = wire.subsystem().gauge(g).support().next().unwrap();
            wire.stretch_edge(g, q, 1 + i % 4).unwrap();
        }
        wire.check_invariants().unwrap();
        assert_eq!(compute_k(wire.subsystem()), 1);
        for r in relations(&code) {
            assert!(wire.verify_relation_image(&r).unwrap());
        }
    }

    #[test]
    fn stretch_errors() {
        let mut wire = build_wire_code(&codes::repetition(3));
        let x = wire.subsystem().single_site_set()[0];
        let q = wire.subsystem().gauge(x).support().next().unwrap();
        assert_eq!(wire.stretch_edge(x, q, 2), Err(WireError::SingleSiteEdge { gauge: x }));
        let g = wire.anc_of(0)[0];
        assert_eq!(
            wire.stretch_edge(g, 2, 2),
            Err(WireError::NoSuchEdge { gauge: g, qubit: 2 })
        );
        assert_eq!(wire.stretch_edge(g, 0, 0), Err(WireError::ZeroLength));
        let added = wire.stretch_edge(g, 0, 7).unwrap();
        assert_eq!(added.len(), 6);
        assert_eq!(wire.edge_length(g, 0), 7);
        assert_eq!(compute_k(wire.subsystem()), 1);
    }
}
