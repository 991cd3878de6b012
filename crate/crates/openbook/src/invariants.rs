//! Multiplicity and joint-multiplicity invariants of a factorization.
//!
//! For a factorization of the monodromy, `M[j]` counts the curves enclosing
//! hole `j` and `J[i][j]` counts the curves enclosing both `i` and `j`. These
//! counts are independent of the chosen positive factorization, which is what
//! makes them usable as search targets.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::page::{Factorization, PageError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Page(#[from] PageError),
    #[error("multiplicity vector has length {got}, expected {expected} (= 2k+1)")]
    BadVectorLength { got: usize, expected: usize },
    #[error("joint multiplicity matrix is not a symmetric {expected}x{expected} matrix")]
    BadMatrixShape { expected: usize },
    #[error("joint multiplicity J[{i}][{j}] = {jij} exceeds min(M[{i}], M[{j}]) = {cap}")]
    JointExceedsMultiplicity { i: usize, j: usize, jij: u64, cap: u64 },
}

/// Multiplicities `M[j]` and joint multiplicities `J[i][j]` over the inner
/// holes `0..=2k`. The outer boundary has no entry. `J` is stored densely;
/// the diagonal is unused and kept at zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantTable {
    k: usize,
    m: Vec<u64>,
    j: Vec<Vec<u64>>,
}

impl InvariantTable {
    pub fn new(k: usize, m: Vec<u64>, j: Vec<Vec<u64>>) -> Result<Self, InvariantError> {
        if k == 0 {
            return Err(PageError::InvalidK(0).into());
        }
        let n = 2 * k + 1;
        if m.len() != n {
            return Err(InvariantError::BadVectorLength { got: m.len(), expected: n });
        }
        if j.len() != n || j.iter().any(|row| row.len() != n) {
            return Err(InvariantError::BadMatrixShape { expected: n });
        }
        for a in 0..n {
            if j[a][a] != 0 {
                return Err(InvariantError::BadMatrixShape { expected: n });
            }
            for b in 0..n {
                if j[a][b] != j[b][a] {
                    return Err(InvariantError::BadMatrixShape { expected: n });
                }
                if a != b && j[a][b] > m[a].min(m[b]) {
                    return Err(InvariantError::JointExceedsMultiplicity {
                        i: a,
                        j: b,
                        jij: j[a][b],
                        cap: m[a].min(m[b]),
                    });
                }
            }
        }
        Ok(InvariantTable { k, m, j })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of inner holes `2k+1`.
    pub fn holes(&self) -> usize {
        2 * self.k + 1
    }

    pub fn multiplicity(&self, j: usize) -> u64 {
        self.m[j]
    }

    pub fn joint(&self, i: usize, j: usize) -> u64 {
        self.j[i][j]
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.m
    }

    /// Aligned text rendering: the M row followed by the J matrix.
    pub fn render_text(&self) -> String {
        let n = self.holes();
        let width = self
            .m
            .iter()
            .chain(self.j.iter().flatten())
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(2);
        let mut out = String::new();
        out.push_str(&format!("{:>4}", "M"));
        for v in &self.m {
            out.push_str(&format!(" {v:>width$}"));
        }
        out.push('\n');
        for a in 0..n {
            out.push_str(&format!("J{a:<3}"));
            for b in 0..n {
                if a == b {
                    out.push_str(&format!(" {:>width$}", "."));
                } else {
                    out.push_str(&format!(" {:>width$}", self.j[a][b]));
                }
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for InvariantTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_text())
    }
}

/// Counts multiplicities and joint multiplicities of a factorization.
/// Outer-parallel curves count as enclosing every inner hole, which their
/// hole set already records.
pub fn invariant_table(f: &Factorization) -> InvariantTable {
    let k = f.page().k();
    let n = 2 * k + 1;
    let mut m = vec![0u64; n];
    let mut j = vec![vec![0u64; n]; n];
    for curve in f.curves() {
        let holes: Vec<usize> = curve.holes().iter().copied().collect();
        for (idx, &a) in holes.iter().enumerate() {
            m[a] += 1;
            for &b in &holes[idx + 1..] {
                j[a][b] += 1;
                j[b][a] += 1;
            }
        }
    }
    InvariantTable { k, m, j }
}

/// The reference table of the canonical monodromy, from the six closed-form
/// rules:
///
/// 1. `M[j] = 2` for every `j`;
/// 2. `J[0][j] = 1` for every `j ≥ 1`;
/// 3. `J[h][l] = 0` for `h` odd, `l` even, `l ≠ h+1`;
/// 4. `J[h][h+1] = 1` for `h` odd;
/// 5. `J[h1][h2] = 1` for distinct odd `h1, h2`;
/// 6. `J[l1][l2] = 1` for distinct even `l1, l2 ≥ 2`.
pub fn reference_table(k: usize) -> Result<InvariantTable, InvariantError> {
    if k == 0 {
        return Err(PageError::InvalidK(0).into());
    }
    let n = 2 * k + 1;
    let m = vec![2u64; n];
    let mut j = vec![vec![0u64; n]; n];
    for a in 1..n {
        j[0][a] = 1;
        j[a][0] = 1;
    }
    for a in 1..n {
        for b in (a + 1)..n {
            let entry = match (a % 2, b % 2) {
                (1, 1) | (0, 0) => 1,
                // odd-even pairs carry a single shared curve only when
                // adjacent; an even hole below an odd one is never adjacent
                // in the required direction, so (even, odd) pairs are 0
                (1, 0) => u64::from(b == a + 1),
                _ => 0,
            };
            j[a][b] = entry;
            j[b][a] = entry;
        }
    }
    Ok(InvariantTable { k, m, j })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcg::{hurwitz_move, realize};
    use crate::page::canonical_monodromy;

    #[test]
    fn canonical_tables_match_reference() {
        for k in 1..=6 {
            let f = canonical_monodromy(k).unwrap();
            assert_eq!(invariant_table(&f), reference_table(k).unwrap(), "k={k}");
        }
    }

    #[test]
    fn canonical_k2_spot_values() {
        let t = invariant_table(&canonical_monodromy(2).unwrap());
        assert_eq!(t.multiplicities(), &[2, 2, 2, 2, 2]);
        assert_eq!(t.joint(0, 3), 1);
        assert_eq!(t.joint(1, 4), 0);
    }

    #[test]
    fn rule_three_is_vacuous_for_k1() {
        let t = reference_table(1).unwrap();
        // the only odd-even pair is (1,2) with 2 = 1+1, so no zero entry exists
        for a in 0..3 {
            for b in 0..3 {
                if a != b {
                    assert_eq!(t.joint(a, b), 1);
                }
            }
        }
    }

    #[test]
    fn reference_k3_odd_odd() {
        let t = reference_table(3).unwrap();
        assert_eq!(t.joint(1, 5), 1);
        assert_eq!(t.joint(3, 5), 1);
        assert_eq!(t.joint(1, 4), 0);
        assert_eq!(t.joint(2, 6), 1);
    }

    #[test]
    fn reference_rejects_k0() {
        assert!(reference_table(0).is_err());
    }

    #[test]
    fn table_is_order_independent() {
        let f = canonical_monodromy(2).unwrap();
        let mut curves = f.curves().to_vec();
        curves.reverse();
        let g = Factorization::new(*f.page(), curves).unwrap();
        assert_eq!(invariant_table(&f), invariant_table(&g));
    }

    #[test]
    fn table_invariant_under_hurwitz_moves() {
        let f = canonical_monodromy(3).unwrap();
        let t = invariant_table(&f);
        for i in 0..f.len() - 1 {
            let moved = hurwitz_move(&f, i).unwrap();
            assert_eq!(invariant_table(&moved), t, "i={i}");
        }
    }

    #[test]
    fn framing_equals_multiplicities() {
        for k in 1..=4 {
            let f = canonical_monodromy(k).unwrap();
            let t = invariant_table(&f);
            let m = realize(&f).unwrap();
            let framing: Vec<u64> = m.framing().iter().map(|&v| v as u64).collect();
            assert_eq!(framing, t.multiplicities());
        }
    }

    #[test]
    fn validation_rejects_asymmetric_tables() {
        let mut j = vec![vec![0u64; 3]; 3];
        j[0][1] = 1;
        assert!(InvariantTable::new(1, vec![2, 2, 2], j).is_err());
    }

    #[test]
    fn validation_rejects_joint_above_multiplicity() {
        let mut j = vec![vec![0u64; 3]; 3];
        j[0][1] = 3;
        j[1][0] = 3;
        assert_eq!(
            InvariantTable::new(1, vec![2, 2, 2], j),
            Err(InvariantError::JointExceedsMultiplicity { i: 0, j: 1, jij: 3, cap: 2 })
        );
    }
}
