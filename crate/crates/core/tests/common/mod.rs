#![allow(dead_code)]

//! Slow, independent reference implementations used as test oracles.

use wirecode_core::code::SubsystemCode;
use wirecode_core::{Pauli, PauliOperator};

/// Symplectic row `(x | z)` as plain booleans.
pub fn row(p: &PauliOperator) -> Vec<bool> {
    let n = p.num_qubits();
    let mut v = vec![false; 2 * n];
    for q in 0..n {
        v[q] = p.x_bit(q);
        v[n + q] = p.z_bit(q);
    }
    v
}

pub fn rank(rows: &[Vec<bool>]) -> usize {
    let mut m: Vec<Vec<bool>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c]) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] {
                let pivot = m[r].clone();
                m[i].iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= *b);
            }
        }
        r += 1;
    }
    r
}

/// Basis of `{v : M v = 0}` over GF(2).
pub fn kernel(m: &[Vec<bool>], cols: usize) -> Vec<Vec<bool>> {
    let mut a: Vec<Vec<bool>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c]) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && a[i][c] {
                let pivot = a[r].clone();
                a[i].iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= *y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![false; cols];
            v[f] = true;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = a[i][f];
            }
            v
        })
        .collect()
}

/// Rows of the symplectic normalizer of the generators: `x.z' + z.x' = 0`.
pub fn normalizer_rows(n: usize, gens: &[PauliOperator]) -> Vec<Vec<bool>> {
    let m: Vec<Vec<bool>> = gens
        .iter()
        .map(|g| {
            let r = row(g);
            let (x, z) = r.split_at(n);
            z.iter().chain(x.iter()).copied().collect()
        })
        .collect();
    kernel(&m, 2 * n)
}

/// `k = (2n - rank(G) - rank(G ∩ N(G))) / 2`, with the intersection found by
/// the dimension formula instead of an explicit center.
pub fn k_via_normalizer(code: &SubsystemCode) -> usize {
    let n = code.num_qubits();
    let gens = code.gauge_operators();
    let g_rows: Vec<Vec<bool>> = gens.iter().map(row).collect();
    let r_g = rank(&g_rows);
    let norm = normalizer_rows(n, &gens);
    let mut both = g_rows.clone();
    both.extend(norm.iter().cloned());
    let r_center = r_g + norm.len() - rank(&both);
    (2 * n - r_g - r_center) / 2
}

pub fn in_span(v: &[bool], rows: &[Vec<bool>]) -> bool {
    let mut with = rows.to_vec();
    with.push(v.to_vec());
    rank(rows) == rank(&with)
}

fn commutes(a: &[bool], b: &[bool], n: usize) -> bool {
    let mut acc = false;
    for q in 0..n {
        acc ^= (a[q] & b[n + q]) ^ (a[n + q] & b[q]);
    }
    !acc
}

/// Every Pauli of weight exactly `w` on `n` qubits.
pub fn paulis_of_weight(n: usize, w: usize) -> Vec<PauliOperator> {
    let mut out = Vec::new();
    let mut support = Vec::new();
    fn rec(n: usize, w: usize, start: usize, support: &mut Vec<usize>, out: &mut Vec<PauliOperator>) {
        if support.len() == w {
            let mut idx = vec![0usize; w];
            loop {
                let terms: Vec<(usize, Pauli)> = support
                    .iter()
                    .zip(&idx)
                    .map(|(&q, &i)| (q, [Pauli::X, Pauli::Y, Pauli::Z][i]))
                    .collect();
                out.push(PauliOperator::from_sparse(n, &terms));
                let mut j = 0;
                while j < w && idx[j] == 2 {
                    idx[j] = 0;
                    j += 1;
                }
                if j == w {
                    return;
                }
                idx[j] += 1;
            }
        }
        for q in start..n {
            support.push(q);
            rec(n, w, q + 1, support, out);
            support.pop();
        }
    }
    rec(n, w, 0, &mut support, &mut out);
    out
}

/// Lightest dressed logical up to weight `w_max`: commutes with the center,
/// lies outside the gauge span. Enumerates operators directly.
pub fn brute_dressed_distance(code: &SubsystemCode, w_max: usize) -> Option<usize> {
    let n = code.num_qubits();
    let gens = code.gauge_operators();
    let g_rows: Vec<Vec<bool>> = gens.iter().map(row).collect();
    let norm = normalizer_rows(n, &gens);
    let center = intersection(&g_rows, &norm, 2 * n);
    let gauge = Span::new(&g_rows);
    for w in 1..=w_max.min(n) {
        for p in paulis_of_weight(n, w) {
            let v = row(&p);
            if center.iter().all(|c| commutes(&v, c, n)) && !gauge.contains(&v) {
                return Some(w);
            }
        }
    }
    None
}

/// Basis of `span(a) ∩ span(b)` via the kernel of `[a; b]^T`.
pub fn intersection(a: &[Vec<bool>], b: &[Vec<bool>], cols: usize) -> Vec<Vec<bool>> {
    let rows = a.len() + b.len();
    let mut t = vec![vec![false; rows]; cols];
    for (i, r) in a.iter().chain(b.iter()).enumerate() {
        for c in 0..cols {
            t[c][i] = r[c];
        }
    }
    let mut out: Vec<Vec<bool>> = Vec::new();
    for combo in kernel(&t, rows) {
        let mut v = vec![false; cols];
        for (i, r) in a.iter().enumerate() {
            if combo[i] {
                v.iter_mut().zip(r).for_each(|(x, y)| *x ^= *y);
            }
        }
        if v.iter().any(|&x| x) && !in_span(&v, &out) {
            out.push(v);
        }
    }
    out
}

/// Incrementally reduced row space for repeated membership tests.
pub struct Span {
    rows: Vec<(usize, Vec<bool>)>,
}

impl Span {
    pub fn new(rows: &[Vec<bool>]) -> Self {
        let mut s = Span { rows: Vec::new() };
        for r in rows {
            s.insert(r);
        }
        s
    }

    fn reduce(&self, v: &mut [bool]) {
        for (p, r) in &self.rows {
            if v[*p] {
                v.iter_mut().zip(r).for_each(|(a, b)| *a ^= *b);
            }
        }
    }

    pub fn insert(&mut self, v: &[bool]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        match v.iter().position(|&b| b) {
            Some(p) => {
                for (_, r) in self.rows.iter_mut() {
                    if r[p] {
                        r.iter_mut().zip(&v).for_each(|(a, b)| *a ^= *b);
                    }
                }
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &[bool]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        !v.iter().any(|&b| b)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}
