use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::pauli::{Pauli, PauliOperator, SparsePauli};

/// Stabilizer state on `n` qubits in destabilizer form: rows `0..n` are
/// destabilizers, rows `n..2n` stabilizers, each with a sign bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    x: Vec<Vec<u64>>,
    z: Vec<Vec<u64>>,
    r: Vec<bool>,
}

#[inline]
fn bit(words: &[u64], q: usize) -> bool {
    words[q / 64] >> (q % 64) & 1 == 1
}

#[inline]
fn flip(words: &mut [u64], q: usize) {
    words[q / 64] ^= 1 << (q % 64);
}

/// Exponent of `i` picked up when multiplying single-qubit Paulis `(x1, z1) * (x2, z2)`.
fn g(x1: bool, z1: bool, x2: bool, z2: bool) -> i32 {
    match (x1, z1) {
        (false, false) => 0,
        (true, true) => z2 as i32 - x2 as i32,
        (true, false) => z2 as i32 * (2 * x2 as i32 - 1),
        (false, true) => x2 as i32 * (1 - 2 * z2 as i32),
    }
}

impl Tableau {
    /// The state `|0...0>`.
    pub fn zero_state(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut x = vec![vec![0u64; words]; 2 * n + 1];
        let mut z = vec![vec![0u64; words]; 2 * n + 1];
        for q in 0..n {
            flip(&mut x[q], q);
            flip(&mut z[n + q], q);
        }
        Self {
            n,
            x,
            z,
            r: vec![false; 2 * n + 1],
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn hadamard(&mut self, q: usize) {
        for i in 0..2 * self.n {
            let (xb, zb) = (bit(&self.x[i], q), bit(&self.z[i], q));
            self.r[i] ^= xb && zb;
            if xb != zb {
                flip(&mut self.x[i], q);
                flip(&mut self.z[i], q);
            }
        }
    }

    fn anticommutes(&self, i: usize, p: &SparsePauli) -> bool {
        let mut odd = false;
        for &(q, pq) in p.terms() {
            let (px, pz) = pq.bits();
            odd ^= (bit(&self.x[i], q) && pz) ^ (bit(&self.z[i], q) && px);
        }
        odd
    }

    /// Row `h` becomes row `h` times row `i`, with the sign tracked.
    fn rowsum(&mut self, h: usize, i: usize) {
        let mut e: i32 = 2 * self.r[h] as i32 + 2 * self.r[i] as i32;
        for q in 0..self.n {
            e += g(
                bit(&self.x[i], q),
                bit(&self.z[i], q),
                bit(&self.x[h], q),
                bit(&self.z[h], q),
            );
        }
        self.r[h] = e.rem_euclid(4) == 2;
        let (xi, zi) = (self.x[i].clone(), self.z[i].clone());
        for (a, b) in self.x[h].iter_mut().zip(&xi) {
            *a ^= b;
        }
        for (a, b) in self.z[h].iter_mut().zip(&zi) {
            *a ^= b;
        }
    }

    /// Applies the Pauli `p`: flips the sign of every row it anticommutes with.
    pub fn apply_pauli(&mut self, p: &SparsePauli) {
        for i in 0..2 * self.n {
            if self.anticommutes(i, p) {
                self.r[i] ^= true;
            }
        }
    }

    /// Outcome (`true` for eigenvalue -1) of measuring `p` if it is determined.
    pub fn peek(&mut self, p: &SparsePauli) -> Option<bool> {
        let n = self.n;
        if (n..2 * n).any(|i| self.anticommutes(i, p)) {
            return None;
        }
        let scratch = 2 * n;
        self.x[scratch].iter_mut().for_each(|w| *w = 0);
        self.z[scratch].iter_mut().for_each(|w| *w = 0);
        self.r[scratch] = false;
        for i in 0..n {
            if self.anticommutes(i, p) {
                self.rowsum(scratch, i + n);
            }
        }
        Some(self.r[scratch])
    }

    /// Measures `p`, drawing random outcomes from `rng`. Returns the outcome
    /// and the destabilizer row paired with the new stabilizer when the outcome
    /// was random.
    pub fn measure<R: Rng>(&mut self, p: &SparsePauli, rng: &mut R) -> (bool, Option<SparsePauli>) {
        let n = self.n;
        let Some(pivot) = (n..2 * n).find(|&i| self.anticommutes(i, p)) else {
            return (self.peek(p).expect("deterministic"), None);
        };
        for i in 0..2 * n {
            if i != pivot && self.anticommutes(i, p) {
                self.rowsum(i, pivot);
            }
        }
        self.x[pivot - n] = self.x[pivot].clone();
        self.z[pivot - n] = self.z[pivot].clone();
        self.r[pivot - n] = self.r[pivot];
        self.x[pivot].iter_mut().for_each(|w| *w = 0);
        self.z[pivot].iter_mut().for_each(|w| *w = 0);
        for &(q, pq) in p.terms() {
            let (px, pz) = pq.bits();
            if px {
                flip(&mut self.x[pivot], q);
            }
            if pz {
                flip(&mut self.z[pivot], q);
            }
        }
        let outcome: bool = rng.random();
        self.r[pivot] = outcome;
        (outcome, Some(self.row(pivot - n)))
    }

    fn row(&self, i: usize) -> SparsePauli {
        let terms = (0..self.n)
            .filter_map(|q| {
                let p = Pauli::from_bits(bit(&self.x[i], q), bit(&self.z[i], q));
                (p != Pauli::I).then_some((q, p))
            })
            .collect();
        SparsePauli::new(terms)
    }

    /// Stabilizer generators with their signs.
    pub fn stabilizers(&self) -> Vec<(bool, PauliOperator)> {
        (self.n..2 * self.n)
            .map(|i| (self.r[i], self.row(i).to_dense(self.n)))
            .collect()
    }
}
