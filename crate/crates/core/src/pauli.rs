//! Phaseless Pauli operators in the symplectic (X bits, Z bits) representation.
//!
//! Phases are dropped everywhere in this module: a product of two operators is
//! the XOR of their bit vectors. The tableau simulator keeps its own signs.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::PauliError;

/// Single-qubit Pauli label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const NON_IDENTITY: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    #[inline]
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    #[inline]
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    /// Whether two single-qubit Paulis commute.
    #[inline]
    pub fn commutes_with(self, other: Pauli) -> bool {
        let (ax, az) = self.bits();
        let (bx, bz) = other.bits();
        !((ax & bz) ^ (az & bx))
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// An n-qubit Pauli operator without phase.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOperator {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        Self {
            n,
            x: vec![0; w],
            z: vec![0; w],
        }
    }

    /// Operator acting as `pauli` on `qubit` and trivially elsewhere.
    pub fn single(n: usize, qubit: usize, pauli: Pauli) -> Self {
        let mut p = Self::identity(n);
        p.set(qubit, pauli);
        p
    }

    pub fn from_sparse(n: usize, terms: &[(usize, Pauli)]) -> Self {
        let mut p = Self::identity(n);
        for &(q, pauli) in terms {
            p.set(q, pauli);
        }
        p
    }

    /// Builds an operator from explicit X and Z bit slices.
    pub fn from_bits(x: &[bool], z: &[bool]) -> Result<Self, PauliError> {
        if x.len() != z.len() {
            return Err(PauliError::LengthMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        let mut p = Self::identity(x.len());
        for (q, (&xb, &zb)) in x.iter().zip(z).enumerate() {
            p.set(q, Pauli::from_bits(xb, zb));
        }
        Ok(p)
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, q: usize) -> Pauli {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        let (w, b) = (q / 64, q % 64);
        Pauli::from_bits((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    #[inline]
    pub fn set(&mut self, q: usize, pauli: Pauli) {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        let (w, b) = (q / 64, q % 64);
        let (xb, zb) = pauli.bits();
        self.x[w] = (self.x[w] & !(1 << b)) | ((xb as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((zb as u64) << b);
    }

    #[inline]
    pub fn x_bit(&self, q: usize) -> bool {
        (self.x[q / 64] >> (q % 64)) & 1 == 1
    }

    #[inline]
    pub fn z_bit(&self, q: usize) -> bool {
        (self.z[q / 64] >> (q % 64)) & 1 == 1
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// Qubits on which the operator acts non-trivially, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, (x, z)) in self.x.iter().zip(&self.z).enumerate() {
            let mut bits = x | z;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(w * 64 + b);
                bits &= bits - 1;
            }
        }
        out
    }

    /// Non-identity entries as `(qubit, pauli)` pairs.
    pub fn terms(&self) -> Vec<(usize, Pauli)> {
        self.support().into_iter().map(|q| (q, self.get(q))).collect()
    }

    /// Symplectic form; panics on a length mismatch.
    pub fn commutes_with(&self, other: &Self) -> bool {
        assert_eq!(self.n, other.n, "commutes_with on operators of different length");
        let mut acc = 0u64;
        for i in 0..self.x.len() {
            acc ^= (self.x[i] & other.z[i]) ^ (self.z[i] & other.x[i]);
        }
        acc.count_ones().is_multiple_of(2)
    }

    /// In-place phaseless product; panics on a length mismatch.
    pub fn mul_assign(&mut self, other: &Self) {
        assert_eq!(self.n, other.n, "product of operators of different length");
        for i in 0..self.x.len() {
            self.x[i] ^= other.x[i];
            self.z[i] ^= other.z[i];
        }
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut p = self.clone();
        p.mul_assign(other);
        p
    }

    /// Returns the operator re-indexed onto `new_n` qubits; qubit `q` moves to `map[q]`.
    pub fn relabel(&self, new_n: usize, map: &[usize]) -> Self {
        let mut p = Self::identity(new_n);
        for (q, pauli) in self.terms() {
            p.set(map[q], pauli);
        }
        p
    }

    /// Extends the operator with identity on `extra` additional trailing qubits.
    pub fn extended(&self, new_n: usize) -> Self {
        assert!(new_n >= self.n);
        let w = words_for(new_n);
        let mut x = self.x.clone();
        let mut z = self.z.clone();
        x.resize(w, 0);
        z.resize(w, 0);
        Self { n: new_n, x, z }
    }

    pub fn to_pauli_string(&self) -> String {
        (0..self.n).map(|q| self.get(q).as_char()).collect()
    }
}

/// Sparse Pauli operator: sorted `(qubit, pauli)` terms without identities.
///
/// Gauge generators of large wire codes are stored this way; convert with
/// [`SparsePauli::to_dense`] when linear algebra is needed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparsePauli {
    terms: Vec<(usize, Pauli)>,
}

impl SparsePauli {
    pub fn new(mut terms: Vec<(usize, Pauli)>) -> Self {
        terms.retain(|&(_, p)| p != Pauli::I);
        terms.sort_unstable_by_key(|&(q, _)| q);
        debug_assert!(terms.windows(2).all(|w| w[0].0 != w[1].0), "repeated qubit");
        Self { terms }
    }

    pub fn single(qubit: usize, pauli: Pauli) -> Self {
        Self::new(vec![(qubit, pauli)])
    }

    pub fn from_dense(p: &PauliOperator) -> Self {
        Self { terms: p.terms() }
    }

    pub fn to_dense(&self, n: usize) -> PauliOperator {
        PauliOperator::from_sparse(n, &self.terms)
    }

    pub fn terms(&self) -> &[(usize, Pauli)] {
        &self.terms
    }

    pub fn weight(&self) -> usize {
        self.terms.len()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.iter().map(|&(q, _)| q)
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        match self.terms.binary_search_by_key(&qubit, |&(q, _)| q) {
            Ok(i) => self.terms[i].1,
            Err(_) => Pauli::I,
        }
    }

    pub fn acts_on(&self, qubit: usize) -> bool {
        self.terms.binary_search_by_key(&qubit, |&(q, _)| q).is_ok()
    }

    /// Replaces the entry on `qubit` (removing it for `Pauli::I`).
    pub fn set(&mut self, qubit: usize, pauli: Pauli) {
        match self.terms.binary_search_by_key(&qubit, |&(q, _)| q) {
            Ok(i) if pauli == Pauli::I => {
                self.terms.remove(i);
            }
            Ok(i) => self.terms[i].1 = pauli,
            Err(_) if pauli == Pauli::I => {}
            Err(i) => self.terms.insert(i, (qubit, pauli)),
        }
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        let (mut i, mut j) = (0, 0);
        let mut anti = false;
        while i < self.terms.len() && j < other.terms.len() {
            let (qa, pa) = self.terms[i];
            let (qb, pb) = other.terms[j];
            match qa.cmp(&qb) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    anti ^= !pa.commutes_with(pb);
                    i += 1;
                    j += 1;
                }
            }
        }
        !anti
    }

    /// Whether every entry is `Z`.
    pub fn is_z_type(&self) -> bool {
        self.terms.iter().all(|&(_, p)| p == Pauli::Z)
    }
}

impl fmt::Display for SparsePauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "I");
        }
        for (i, (q, p)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}{q}")?;
        }
        Ok(())
    }
}

/// Parses a string of `I`, `X`, `Y`, `Z` characters.
pub fn parse_pauli(text: &str) -> Result<PauliOperator, PauliError> {
    let chars: Vec<char> = text.chars().collect();
    let mut p = PauliOperator::identity(chars.len());
    for (position, &c) in chars.iter().enumerate() {
        let pauli = Pauli::from_char(c).ok_or(PauliError::InvalidCharacter { position, found: c })?;
        p.set(position, pauli);
    }
    Ok(p)
}

/// Whether `a` and `b` commute under the symplectic form.
pub fn commutes(a: &PauliOperator, b: &PauliOperator) -> Result<bool, PauliError> {
    check_lengths(a, b)?;
    Ok(a.commutes_with(b))
}

/// Phaseless product of `a` and `b`.
pub fn multiply(a: &PauliOperator, b: &PauliOperator) -> Result<PauliOperator, PauliError> {
    check_lengths(a, b)?;
    Ok(a.product(b))
}

fn check_lengths(a: &PauliOperator, b: &PauliOperator) -> Result<(), PauliError> {
    if a.n != b.n {
        return Err(PauliError::LengthMismatch { left: a.n, right: b.n });
    }
    Ok(())
}

impl FromStr for PauliOperator {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pauli(s)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n {
            write!(f, "{}", self.get(q))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 64 {
            write!(f, "Pauli({self})")
        } else {
            write!(f, "Pauli[n={}](", self.n)?;
            for (i, (q, p)) in self.terms().into_iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}{q}")?;
            }
            write!(f, ")")
        }
    }
}
