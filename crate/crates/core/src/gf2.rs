//! Dense GF(2) linear algebra on packed `u64` rows.
//!
//! Pauli operators enter as length-2n symplectic vectors `(x | z)`; the
//! x block and the z block each occupy `words_for(n)` words.

use alloc::vec;
use alloc::vec::Vec;

use crate::pauli::{words_for, PauliOperator};

#[inline]
pub(crate) fn get_bit(v: &[u64], i: usize) -> bool {
    (v[i / 64] >> (i % 64)) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(v: &mut [u64], i: usize) {
    v[i / 64] |= 1 << (i % 64);
}

#[inline]
pub(crate) fn flip_bit(v: &mut [u64], i: usize) {
    v[i / 64] ^= 1 << (i % 64);
}

#[inline]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

#[inline]
pub(crate) fn lowest_set(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

#[inline]
pub(crate) fn is_zero(v: &[u64]) -> bool {
    v.iter().all(|&w| w == 0)
}

pub(crate) fn ones(v: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &word) in v.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            out.push(w * 64 + bits.trailing_zeros() as usize);
            bits &= bits - 1;
        }
    }
    out
}

pub(crate) fn pack_symplectic(p: &PauliOperator) -> Vec<u64> {
    let mut v = Vec::with_capacity(2 * p.x_words().len());
    v.extend_from_slice(p.x_words());
    v.extend_from_slice(p.z_words());
    v
}

/// Row whose dot product with `pack_symplectic(q)` is the symplectic form `<p, q>`.
pub(crate) fn pack_twisted(p: &PauliOperator) -> Vec<u64> {
    let mut v = Vec::with_capacity(2 * p.x_words().len());
    v.extend_from_slice(p.z_words());
    v.extend_from_slice(p.x_words());
    v
}

pub(crate) fn unpack_symplectic(n: usize, v: &[u64]) -> PauliOperator {
    let w = words_for(n);
    let mut p = PauliOperator::identity(n);
    for q in 0..n {
        let x = get_bit(&v[..w], q);
        let z = get_bit(&v[w..], q);
        if x || z {
            p.set(q, crate::pauli::Pauli::from_bits(x, z));
        }
    }
    p
}

/// Reduced row-echelon basis built incrementally.
///
/// Every stored row has a distinct pivot (its lowest set bit) and every other
/// row is zero in that column, so reduction can visit rows in any order.
/// Optionally tracks which inserted vectors each row is a combination of.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    width: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    combos: Option<Vec<Vec<u64>>>,
    inserted: usize,
    combo_capacity: usize,
}

impl Echelon {
    pub fn new(width_words: usize) -> Self {
        Self {
            width: width_words,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: None,
            inserted: 0,
            combo_capacity: 0,
        }
    }

    /// Tracks combinations of up to `capacity` inserted vectors.
    pub fn with_combinations(width_words: usize, capacity: usize) -> Self {
        Self {
            combos: Some(Vec::new()),
            combo_capacity: capacity,
            ..Self::new(width_words)
        }
    }

    /// Reduces `v` in place against the basis; returns the combination used when tracking.
    pub fn reduce(&self, v: &mut [u64]) -> Option<Vec<u64>> {
        let mut combo = self.combos.as_ref().map(|_| vec![0u64; words_for(self.combo_capacity)]);
        for (i, (row, &pivot)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if get_bit(v, pivot) {
                xor_into(v, row);
                if let (Some(c), Some(cs)) = (combo.as_mut(), self.combos.as_ref()) {
                    xor_into(c, &cs[i]);
                }
            }
        }
        combo
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut tmp = v.to_vec();
        self.reduce(&mut tmp);
        is_zero(&tmp)
    }

    /// Inserts a vector. Returns `Ok(row index)` if it was independent, or
    /// `Err(combination)` describing how it is expressed by earlier inserts
    /// (the combination includes the vector itself; empty without tracking).
    pub fn insert(&mut self, v: &[u64]) -> Result<usize, Vec<u64>> {
        debug_assert_eq!(v.len(), self.width);
        let index = self.inserted;
        self.inserted += 1;
        let mut v = v.to_vec();
        let mut combo = self.reduce(&mut v);
        if let Some(c) = combo.as_mut() {
            assert!(index < self.combo_capacity, "combination capacity exceeded");
            flip_bit(c, index);
        }
        let Some(pivot) = lowest_set(&v) else {
            return Err(combo.unwrap_or_default());
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if get_bit(row, pivot) {
                xor_into(row, &v);
                if let (Some(cs), Some(c)) = (self.combos.as_mut(), combo.as_ref()) {
                    xor_into(&mut cs[i], c);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(pivot);
        if let (Some(cs), Some(c)) = (self.combos.as_mut(), combo) {
            cs.push(c);
        }
        Ok(self.rows.len() - 1)
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

/// Basis of the null space `{x : rows · x = 0}` for a matrix with `ncols` columns.
pub(crate) fn nullspace(rows: &[Vec<u64>], ncols: usize) -> Vec<Vec<u64>> {
    let w = words_for(ncols);
    let mut ech = Echelon::new(w);
    for r in rows {
        let _ = ech.insert(r);
    }
    let mut is_pivot = vec![false; ncols];
    for &p in ech.pivots() {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![0u64; w];
        set_bit(&mut x, free);
        for (row, &p) in ech.rows().iter().zip(ech.pivots()) {
            if get_bit(row, free) {
                set_bit(&mut x, p);
            }
        }
        out.push(x);
    }
    out
}

/// Solves `rows · x = rhs` over GF(2); `None` when inconsistent.
pub(crate) fn solve(rows: &[Vec<u64>], rhs: &[bool], ncols: usize) -> Option<Vec<u64>> {
    assert_eq!(rows.len(), rhs.len());
    // Augment each row with the right-hand side in column `ncols`.
    let w = words_for(ncols + 1);
    let mut ech = Echelon::new(w);
    for (r, &b) in rows.iter().zip(rhs) {
        let mut v = vec![0u64; w];
        v[..r.len()].copy_from_slice(r);
        if b {
            set_bit(&mut v, ncols);
        }
        let _ = ech.insert(&v);
    }
    let mut x = vec![0u64; words_for(ncols)];
    for (row, &p) in ech.rows().iter().zip(ech.pivots()) {
        if p == ncols {
            return None;
        }
        if get_bit(row, ncols) {
            set_bit(&mut x, p);
        }
    }
    Some(x)
}

/// Basis `{c}` of the dependencies `sum_i c_i v_i = 0` among the given vectors.
pub(crate) fn dependencies(vectors: &[Vec<u64>], width_words: usize) -> Vec<Vec<u64>> {
    let mut ech = Echelon::with_combinations(width_words, vectors.len());
    let mut out = Vec::new();
    for v in vectors {
        if let Err(combo) = ech.insert(v) {
            out.push(combo);
        }
    }
    out
}

/// Independent basis of the span of a list of Pauli operators.
#[derive(Clone, Debug)]
pub struct SymplecticBasis {
    n: usize,
    echelon: Echelon,
    rows: Vec<PauliOperator>,
}

impl SymplecticBasis {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            echelon: Echelon::new(2 * words_for(n)),
            rows: Vec::new(),
        }
    }

    pub fn from_generators(n: usize, generators: &[PauliOperator]) -> Self {
        let mut b = Self::new(n);
        for g in generators {
            b.insert(g);
        }
        b
    }

    /// Adds `p`; returns `true` if it was independent of the current rows.
    pub fn insert(&mut self, p: &PauliOperator) -> bool {
        assert_eq!(p.num_qubits(), self.n);
        match self.echelon.insert(&pack_symplectic(p)) {
            Ok(_) => {
                self.rows.push(p.clone());
                true
            }
            Err(_) => false,
        }
    }

    pub fn contains(&self, p: &PauliOperator) -> bool {
        self.echelon.contains(&pack_symplectic(p))
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The independent generators kept, in insertion order.
    pub fn rows(&self) -> &[PauliOperator] {
        &self.rows
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }
}

fn common_length(vectors: &[PauliOperator]) -> Option<usize> {
    let n = vectors.first()?.num_qubits();
    assert!(
        vectors.iter().all(|v| v.num_qubits() == n),
        "operators of different length"
    );
    Some(n)
}

/// GF(2) rank of the operators viewed as length-2n vectors.
pub fn gf2_rank(vectors: &[PauliOperator]) -> usize {
    match common_length(vectors) {
        Some(n) => SymplecticBasis::from_generators(n, vectors).rank(),
        None => 0,
    }
}

/// Whether `p` lies in the group generated by `generators` (phases ignored).
pub fn in_group(p: &PauliOperator, generators: &[PauliOperator]) -> bool {
    if generators.is_empty() {
        return p.is_identity();
    }
    SymplecticBasis::from_generators(p.num_qubits(), generators).contains(p)
}

/// Generators of the center of the group generated by `generators`.
///
/// Works on exponent vectors over an independent basis `b_1..b_r`: the element
/// `prod c_i b_i` is central iff `c` is in the kernel of the commutation matrix.
pub fn center(generators: &[PauliOperator]) -> Vec<PauliOperator> {
    let Some(n) = common_length(generators) else {
        return Vec::new();
    };
    let basis = SymplecticBasis::from_generators(n, generators);
    let b = basis.rows();
    let r = b.len();
    let w = words_for(r);
    let mut omega = vec![vec![0u64; w]; r];
    for i in 0..r {
        for j in (i + 1)..r {
            if !b[i].commutes_with(&b[j]) {
                set_bit(&mut omega[i], j);
                set_bit(&mut omega[j], i);
            }
        }
    }
    nullspace(&omega, r)
        .into_iter()
        .map(|c| {
            let mut g = PauliOperator::identity(n);
            for i in ones(&c) {
                g.mul_assign(&b[i]);
            }
            g
        })
        .collect()
}

/// Basis of the normalizer `{p : p commutes with every generator}` on `n` qubits.
pub fn normalizer(n: usize, generators: &[PauliOperator]) -> Vec<PauliOperator> {
    let rows: Vec<Vec<u64>> = generators.iter().map(pack_twisted).collect();
    let w = words_for(n);
    // Null space is computed over a 2*w*64-column layout; drop padding columns.
    let ncols = 2 * w * 64;
    nullspace(&rows, ncols)
        .into_iter()
        .filter(|v| {
            ones(v)
                .iter()
                .all(|&c| (c < w * 64 && c < n) || (c >= w * 64 && c - w * 64 < n))
        })
        .map(|v| unpack_symplectic(n, &v))
        .collect()
}

/// Symmetric difference of two sorted index lists.
pub(crate) fn sym_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Rank of a sparse GF(2) matrix given as sorted column lists.
///
/// Rows are reduced on their lowest column. Wire codes are close to trees, so
/// fill-in stays small and this handles matrices far beyond dense reach.
pub(crate) fn sparse_rank<I>(rows: I, ncols: usize) -> usize
where
    I: IntoIterator<Item = Vec<u32>>,
{
    let mut pivot: Vec<Option<Vec<u32>>> = vec![None; ncols];
    let mut rank = 0;
    for mut r in rows {
        while let Some(&lead) = r.first() {
            match &pivot[lead as usize] {
                Some(p) => r = sym_diff(&r, p),
                None => {
                    pivot[lead as usize] = Some(r);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}
