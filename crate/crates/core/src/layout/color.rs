use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::code::StabilizerCode;

/// Partition of the incidence pairs `(qubit, check)` into classes in which no
/// two pairs share a qubit or a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorClasses {
    classes: Vec<Vec<(usize, usize)>>,
}

impl ColorClasses {
    pub fn classes(&self) -> &[Vec<(usize, usize)>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class index of every incidence pair.
    pub fn class_of(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for (c, pairs) in self.classes.iter().enumerate() {
            for &p in pairs {
                out.insert(p, c);
            }
        }
        out
    }

    /// Whether the classes partition the incidences of `code` with no shared
    /// qubit or check inside a class.
    pub fn is_valid_for(&self, code: &StabilizerCode) -> bool {
        let mut all: Vec<(usize, usize)> = self.classes.iter().flatten().copied().collect();
        all.sort_unstable();
        let mut want = code.incidences();
        want.sort_unstable();
        if all != want {
            return false;
        }
        self.classes.iter().all(|class| {
            class
                .iter()
                .enumerate()
                .all(|(i, a)| class[i + 1..].iter().all(|b| a.0 != b.0 && a.1 != b.1))
        })
    }
}

/// Greedy coloring of the incidence pairs in check-major order. Each pair
/// conflicts with at most `(w - 1) + (delta - 1)` others, so at most
/// `w + delta - 1 <= w * delta + 1` classes are used.
pub fn color_classes(code: &StabilizerCode) -> ColorClasses {
    let n = code.num_qubits();
    let m = code.num_checks();
    let mut by_qubit: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut by_check: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
    for (q, s) in code.incidences() {
        let mut taken: Vec<usize> = by_qubit[q].iter().chain(&by_check[s]).copied().collect();
        taken.sort_unstable();
        taken.dedup();
        let c = (0..).find(|c| taken.binary_search(c).is_err()).expect("unbounded");
        if c == classes.len() {
            classes.push(Vec::new());
        }
        classes[c].push((q, s));
        by_qubit[q].push(c);
        by_check[s].push(c);
    }
    ColorClasses { classes }
}
