//! Small fixture codes used by the tests, the examples and the CLI.

use alloc::vec;
use alloc::vec::Vec;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{GaugeKind, Register, StabilizerCode, SubsystemCode};
use crate::gf2::SymplecticBasis;
use crate::pauli::{Pauli, PauliOperator, SparsePauli};

fn from_rows(rows: &[&str]) -> StabilizerCode {
    StabilizerCode::from_strings(rows).expect("fixture is a valid code")
}

fn from_terms(n: usize, checks: Vec<Vec<(usize, Pauli)>>) -> StabilizerCode {
    let ops = checks.iter().map(|t| PauliOperator::from_sparse(n, t)).collect();
    StabilizerCode::new(ops).expect("fixture is a valid code")
}

/// Bit-flip repetition code on `n` qubits with checks `Z_i Z_{i+1}`.
pub fn repetition(n: usize) -> StabilizerCode {
    assert!(n >= 2);
    let checks = (0..n - 1).map(|i| vec![(i, Pauli::Z), (i + 1, Pauli::Z)]).collect();
    from_terms(n, checks)
}

/// Three-qubit repetition code with the redundant check `ZIZ` appended.
pub fn repetition_overcomplete() -> StabilizerCode {
    from_rows(&["ZZI", "IZZ", "ZIZ"])
}

/// The [[5,1,3]] code.
pub fn five_qubit() -> StabilizerCode {
    from_rows(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"])
}

/// Shor's [[9,1,3]] code.
pub fn shor() -> StabilizerCode {
    from_rows(&[
        "XXXXXXIII",
        "IIIXXXXXX",
        "ZZIIIIIII",
        "IZZIIIIII",
        "IIIZZIIII",
        "IIIIZZIII",
        "IIIIIIZZI",
        "IIIIIIIZZ",
    ])
}

/// The [[4,2,2]] code.
pub fn four_two_two() -> StabilizerCode {
    from_rows(&["XXXX", "ZZZZ"])
}

/// A single weight-four check `X Z Z X` on four qubits.
pub fn xzzx_check() -> StabilizerCode {
    from_rows(&["XZZX"])
}

/// Toric code on a 2x2 torus: 8 edge qubits, 4 star and 4 plaquette checks.
pub fn toric_2x2() -> StabilizerCode {
    toric(2)
}

/// Toric code on an `l x l` torus. Qubit `2(i l + j)` is the horizontal edge
/// leaving vertex `(i, j)`, qubit `2(i l + j) + 1` the vertical one.
pub fn toric(l: usize) -> StabilizerCode {
    assert!(l >= 2);
    let h = |i: usize, j: usize| 2 * ((i % l) * l + (j % l));
    let v = |i: usize, j: usize| h(i, j) + 1;
    let mut checks = Vec::new();
    for i in 0..l {
        for j in 0..l {
            let star = [h(i, j), h(i, j + l - 1), v(i, j), v(i + l - 1, j)];
            checks.push(star.iter().map(|&q| (q, Pauli::X)).collect());
        }
    }
    for i in 0..l {
        for j in 0..l {
            let plaq = [h(i, j), h(i + 1, j), v(i, j), v(i, j + 1)];
            checks.push(plaq.iter().map(|&q| (q, Pauli::Z)).collect());
        }
    }
    from_terms(2 * l * l, checks)
}

/// Rotated surface code of distance `d` on `d * d` qubits, row-major.
pub fn rotated_surface(d: usize) -> StabilizerCode {
    assert!(d >= 2);
    let mut checks = Vec::new();
    for i in 0..=d {
        for j in 0..=d {
            let x_type = (i + j) % 2 == 0;
            let row_edge = i == 0 || i == d;
            let col_edge = j == 0 || j == d;
            let keep = match (row_edge, col_edge) {
                (true, true) => false,
                (true, false) => x_type,
                (false, true) => !x_type,
                (false, false) => true,
            };
            if !keep {
                continue;
            }
            let p = if x_type { Pauli::X } else { Pauli::Z };
            let mut terms = Vec::new();
            for r in i.saturating_sub(1)..=i.min(d - 1) {
                for c in j.saturating_sub(1)..=j.min(d - 1) {
                    terms.push((r * d + c, p));
                }
            }
            checks.push(terms);
        }
    }
    from_terms(d * d, checks)
}

/// Bacon-Shor gauge group on a 3x3 grid: `XX` on horizontal neighbours and
/// `ZZ` on vertical neighbours.
pub fn bacon_shor_3x3() -> SubsystemCode {
    let mut code = SubsystemCode::new();
    for _ in 0..9 {
        code.push_qubit(Register::Data);
    }
    for r in 0..3 {
        for c in 0..2 {
            let q = 3 * r + c;
            code.push_gauge(SparsePauli::new(vec![(q, Pauli::X), (q + 1, Pauli::X)]), GaugeKind::Anc);
        }
    }
    for r in 0..2 {
        for c in 0..3 {
            let q = 3 * r + c;
            code.push_gauge(SparsePauli::new(vec![(q, Pauli::Z), (q + 3, Pauli::Z)]), GaugeKind::Anc);
        }
    }
    code
}

/// Random stabilizer code on `n` qubits with up to `m` independent checks,
/// drawn by rejection sampling. Deterministic in `seed`.
pub fn random_commuting(n: usize, m: usize, seed: u64) -> StabilizerCode {
    assert!(n >= 1 && m >= 1 && m <= n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks: Vec<PauliOperator> = Vec::new();
    let mut basis = SymplecticBasis::new(n);
    let mut attempts = 0;
    while checks.len() < m && attempts < 10_000 {
        attempts += 1;
        let mut p = PauliOperator::identity(n);
        for q in 0..n {
            let r = rng.next_u32() % 4;
            p.set(q, Pauli::from_bits(r & 1 == 1, r & 2 == 2));
        }
        if p.is_identity() || !checks.iter().all(|c| c.commutes_with(&p)) {
            continue;
        }
        if basis.insert(&p) {
            checks.push(p);
        }
    }
    StabilizerCode::new(checks).expect("sampled checks commute")
}
