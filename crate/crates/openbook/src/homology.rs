//! Exact integer homology: cokernels in invariant-factor form, the chain
//! complex of a Lefschetz fibration over the disk, abelianization of finite
//! presentations, and the coefficient homology behind the boundary extension
//! problem.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::matrix::{smith_normal_form, IntMatrix};
use crate::search::Configuration;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("k must be at least {min}, got {got}")]
    InvalidK { got: usize, min: usize },
    #[error("relator references generator {index}, but only {count} generators are declared")]
    UnknownGenerator { index: usize, count: usize },
}

/// A finitely generated abelian group in invariant-factor normal form:
/// free rank plus torsion coefficients `d_1 | d_2 | … | d_r`, each `≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// Normal form of `Z^free_rank ⊕ Z/orders[0] ⊕ …` for arbitrary cyclic
    /// orders (order 0 adds a free summand, order 1 adds nothing).
    pub fn with_cyclic_orders(free_rank: usize, orders: &[u64]) -> Self {
        let n = orders.len();
        let mut diag = IntMatrix::zeros(n, n);
        for (i, &d) in orders.iter().enumerate() {
            diag[(i, i)] = BigInt::from(d);
        }
        let mut g = cokernel(&diag);
        g.free_rank += free_rank;
        g
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Pretty form like `Z^2 ⊕ Z/4`; the trivial group prints as `0`.
    pub fn to_pretty(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pretty())
    }
}

/// Cokernel of `relations: Z^cols → Z^rows` in normal form. Invariant
/// factors equal to 1 are dropped.
pub fn cokernel(relations: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(relations);
    let rank = snf.rank();
    let torsion: Vec<u64> = snf
        .d
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .map(|d| u64::try_from(d).expect("torsion coefficient exceeds u64"))
        .collect();
    AbelianGroup { free_rank: relations.rows() - rank, torsion }
}

/// Homology of the Lefschetz fibration determined by a configuration over
/// the page with `2k+1` holes.
///
/// The handle decomposition has one 0-handle, `2k+1` 1-handles and one
/// 2-handle per curve, attached with framing −1 along the curve. The chain
/// complex is `C_2 = Z^curves → C_1 = Z^{2k+1} → C_0 = Z` with
/// `∂_2(curve) = Σ_{j ∈ holes} e_j` (linking with the dotted circle of hole
/// `j`) and `∂_1 = 0`. The −1 framings do not enter `∂_2`: the attaching
/// circles see the 1-handlebody only through those linking numbers, so
/// `H_1 = coker ∂_2` and `H_2 = ker ∂_2`.
pub fn fibration_homology(cfg: &Configuration) -> (AbelianGroup, AbelianGroup) {
    let n = 2 * cfg.k() + 1;
    let m = cfg.len();
    let mut d2 = IntMatrix::zeros(n, m);
    for (col, subset) in cfg.subsets().iter().enumerate() {
        for &hole in subset {
            d2[(hole, col)] = BigInt::one();
        }
    }
    let snf = smith_normal_form(&d2);
    let rank = snf.rank();
    let h1 = cokernel(&d2);
    // kernel of a map out of a free group is free
    let h2 = AbelianGroup::free(m - rank);
    (h1, h2)
}

/// A finite group presentation. Relators are letter sequences
/// `(generator index, ±1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Vec<(usize, i8)>>,
}

impl GroupPresentation {
    pub fn new(
        generators: Vec<String>,
        relators: Vec<Vec<(usize, i8)>>,
    ) -> Result<Self, HomologyError> {
        let count = generators.len();
        for r in &relators {
            for &(idx, _) in r {
                if idx >= count {
                    return Err(HomologyError::UnknownGenerator { index: idx, count });
                }
            }
        }
        Ok(GroupPresentation { generators, relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Vec<(usize, i8)>] {
        &self.relators
    }

    /// Exponent-sum matrix: one row per generator, one column per relator.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.generators.len(), self.relators.len());
        for (col, r) in self.relators.iter().enumerate() {
            for &(idx, e) in r {
                let add = BigInt::from(e);
                m[(idx, col)] += add;
            }
        }
        m
    }
}

/// Abelianization: Smith normal form of the exponent-sum matrix.
pub fn abelianization(p: &GroupPresentation) -> AbelianGroup {
    cokernel(&p.exponent_matrix())
}

/// Fundamental group presentation of the boundary circle bundle:
/// generators `a_1, …, a_k, t`; relators `a_j t a_j⁻¹ t` for each `j` and
/// `a_1² ⋯ a_k² t^{−(k−2)}`.
pub fn st_star_presentation(k: usize) -> Result<GroupPresentation, HomologyError> {
    if k == 0 {
        return Err(HomologyError::InvalidK { got: 0, min: 1 });
    }
    let mut generators: Vec<String> = (1..=k).map(|j| format!("a{j}")).collect();
    generators.push("t".to_string());
    let t = k;

    let mut relators = Vec::with_capacity(k + 1);
    for j in 0..k {
        relators.push(vec![(j, 1), (t, 1), (j, -1), (t, 1)]);
    }
    let mut long = Vec::new();
    for j in 0..k {
        long.push((j, 1));
        long.push((j, 1));
    }
    let fiber_exponent = k as i64 - 2;
    let sign = if fiber_exponent >= 0 { -1i8 } else { 1i8 };
    for _ in 0..fiber_exponent.unsigned_abs() {
        long.push((t, sign));
    }
    relators.push(long);

    GroupPresentation::new(generators, relators)
}

/// `H_1` of the nonorientable surface `N_k` with `Z_m` coefficients, as an
/// abelian group in normal form. `m = 0` means integer coefficients.
///
/// The CW structure has one 0-cell, `k` 1-cells and one 2-cell attached
/// along twice the sum of the 1-cells, so the group is
/// `Z_m^k / ⟨(2, …, 2)⟩`.
pub fn surface_homology_mod_m(k: usize, m: u64) -> Result<AbelianGroup, HomologyError> {
    if k < 2 {
        return Err(HomologyError::InvalidK { got: k, min: 2 });
    }
    // columns: the doubled 2-cell boundary, then m·e_i per generator
    let mut rel = IntMatrix::zeros(k, 1 + k);
    for i in 0..k {
        rel[(i, 0)] = BigInt::from(2);
        rel[(i, 1 + i)] = BigInt::from(m);
    }
    Ok(cokernel(&rel))
}

/// The degree-2 homology of the extension group, assembled from the three
/// surviving terms of the five-term decomposition: the corner terms vanish
/// (`H_2(Z_m) = 0` and `H_2(N_k) = 0`), leaving the coefficient homology of
/// the surface.
///
/// Valid only under the degeneration hypothesis that the second page equals
/// the limit page, which holds because the surface group has cohomological
/// dimension 2; that fact is taken as given here, not recomputed.
pub fn extension_h2(k: usize, m: u64) -> Result<AbelianGroup, HomologyError> {
    surface_homology_mod_m(k, m)
}

/// All fiber orders `m ∈ {0, …, m_max}` for which [`extension_h2`] is
/// trivial. `m = 0` stands for the infinite cyclic case.
pub fn solve_extension(k: usize, m_max: u64) -> Result<Vec<u64>, HomologyError> {
    if k < 2 {
        return Err(HomologyError::InvalidK { got: k, min: 2 });
    }
    let mut out = Vec::new();
    for m in 0..=m_max {
        if extension_h2(k, m)?.is_trivial() {
            out.push(m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::invariant_table;
    use crate::mcg::hurwitz_move;
    use crate::page::{canonical_monodromy, Factorization};

    fn pretty(g: &AbelianGroup) -> String {
        g.to_pretty()
    }

    #[test]
    fn cyclic_order_normalization() {
        let g = AbelianGroup::with_cyclic_orders(0, &[6, 4]);
        assert_eq!(g.torsion(), &[2, 12]);
        let g = AbelianGroup::with_cyclic_orders(1, &[1, 1]);
        assert_eq!(g, AbelianGroup::free(1));
        let g = AbelianGroup::with_cyclic_orders(0, &[0, 3]);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.torsion(), &[3]);
    }

    #[test]
    fn fibration_homology_canonical() {
        for k in 2..=5 {
            let f = canonical_monodromy(k).unwrap();
            let cfg = Configuration::from_factorization(&f);
            let (h1, h2) = fibration_homology(&cfg);
            assert_eq!(h1, AbelianGroup::with_cyclic_orders(k - 1, &[2]), "k={k}");
            assert!(h2.is_trivial(), "k={k}");
        }
    }

    #[test]
    fn fibration_homology_k2_alternative() {
        let cfg = Configuration::new(
            2,
            vec![
                [0, 1, 2].into_iter().collect(),
                [0, 3, 4].into_iter().collect(),
                [1, 3].into_iter().collect(),
                [2, 4].into_iter().collect(),
            ],
        )
        .unwrap();
        let (h1, h2) = fibration_homology(&cfg);
        assert_eq!(pretty(&h1), "Z ⊕ Z/2");
        assert!(h2.is_trivial());
    }

    #[test]
    fn fibration_homology_k1_both_fillings() {
        // canonical: rational homology ball with |H1|² = |H1(boundary)|;
        // alternative: H2 of rank 1
        let canonical = Configuration::from_factorization(&canonical_monodromy(1).unwrap());
        let (h1, h2) = fibration_homology(&canonical);
        assert_eq!(pretty(&h1), "Z/2");
        assert!(h2.is_trivial());

        let alt = Configuration::new(
            1,
            vec![
                [0].into_iter().collect(),
                [1].into_iter().collect(),
                [2].into_iter().collect(),
                [0, 1, 2].into_iter().collect(),
            ],
        )
        .unwrap();
        let (h1, h2) = fibration_homology(&alt);
        assert!(h1.is_trivial());
        assert_eq!(h2, AbelianGroup::free(1));
    }

    #[test]
    fn fibration_homology_empty_factorization() {
        let cfg = Configuration::new(1, vec![]).unwrap();
        let (h1, h2) = fibration_homology(&cfg);
        assert_eq!(h1, AbelianGroup::free(3));
        assert!(h2.is_trivial());
    }

    #[test]
    fn fibration_homology_ignores_order_and_hurwitz_moves() {
        let f = canonical_monodromy(3).unwrap();
        let base = fibration_homology(&Configuration::from_factorization(&f));

        let mut curves = f.curves().to_vec();
        curves.rotate_left(2);
        curves.swap(0, 1);
        let shuffled = Factorization::new(*f.page(), curves).unwrap();
        assert_eq!(fibration_homology(&Configuration::from_factorization(&shuffled)), base);

        let moved = hurwitz_move(&f, 1).unwrap();
        assert_eq!(fibration_homology(&Configuration::from_factorization(&moved)), base);
    }

    #[test]
    fn abelianization_examples() {
        let p = st_star_presentation(2).unwrap();
        assert_eq!(p.generators().len(), 3);
        assert_eq!(p.relators().len(), 3);
        assert_eq!(pretty(&abelianization(&p)), "Z ⊕ Z/2 ⊕ Z/2");

        let p = st_star_presentation(3).unwrap();
        assert_eq!(pretty(&abelianization(&p)), "Z^2 ⊕ Z/4");

        let single = GroupPresentation::new(vec!["a".into()], vec![vec![(0, 1)]]).unwrap();
        assert!(abelianization(&single).is_trivial());
    }

    #[test]
    fn boundary_first_homology_parity_split() {
        for k in 1..=10usize {
            let p = st_star_presentation(k).unwrap();
            let got = abelianization(&p);
            let expected = if k % 2 == 0 {
                AbelianGroup::with_cyclic_orders(k - 1, &[2, 2])
            } else {
                AbelianGroup::with_cyclic_orders(k - 1, &[4])
            };
            assert_eq!(got, expected, "k={k}");
        }
    }

    #[test]
    fn st_star_rejects_k0() {
        assert_eq!(
            st_star_presentation(0),
            Err(HomologyError::InvalidK { got: 0, min: 1 })
        );
    }

    #[test]
    fn presentation_validates_generator_indices() {
        assert!(GroupPresentation::new(vec!["a".into()], vec![vec![(1, 1)]]).is_err());
    }

    #[test]
    fn surface_homology_examples() {
        assert_eq!(pretty(&surface_homology_mod_m(3, 2).unwrap()), "Z/2 ⊕ Z/2 ⊕ Z/2");
        assert_eq!(pretty(&surface_homology_mod_m(3, 3).unwrap()), "Z/3 ⊕ Z/3");
        assert!(surface_homology_mod_m(2, 1).unwrap().is_trivial());
        assert!(surface_homology_mod_m(1, 2).is_err());
    }

    #[test]
    fn surface_homology_universal_coefficients_cross_check() {
        // independent route: (Z_m)^{k-1} ⊕ Z_{gcd(2,m)} from the integral
        // homology of the surface
        for k in 2..=6usize {
            for &m in &[0u64, 1, 2, 3, 4, 5, 6, 12, 100] {
                let direct = surface_homology_mod_m(k, m).unwrap();
                let mut orders = vec![m; k - 1];
                orders.push(num_integer::gcd(2, m));
                let expected = AbelianGroup::with_cyclic_orders(0, &orders);
                assert_eq!(direct, expected, "k={k} m={m}");
            }
        }
    }

    #[test]
    fn extension_examples() {
        assert!(extension_h2(2, 1).unwrap().is_trivial());
        assert_eq!(pretty(&extension_h2(2, 0).unwrap()), "Z ⊕ Z/2");
        let g = extension_h2(4, 6).unwrap();
        assert_eq!(g.torsion(), &[2, 6, 6, 6]);
        assert_eq!(g.free_rank(), 0);
    }

    #[test]
    fn solve_extension_examples() {
        assert_eq!(solve_extension(2, 100).unwrap(), vec![1]);
        assert_eq!(solve_extension(5, 100).unwrap(), vec![1]);
        assert_eq!(solve_extension(2, 0).unwrap(), Vec::<u64>::new());
    }

    /// Cross-check between the two boundary computations: the first homology
    /// of the boundary 3-manifold read off the surgery diagram is the
    /// cokernel of `A·Aᵀ` where `A` is the hole-incidence matrix (equivalently
    /// `diag(M) + J`), and it must agree with the abelianized fundamental
    /// group presentation of the circle bundle.
    #[test]
    fn boundary_homology_agrees_with_presentation() {
        for k in 1..=6usize {
            let f = canonical_monodromy(k).unwrap();
            let table = invariant_table(&f);
            let n = 2 * k + 1;
            let mut link = IntMatrix::zeros(n, n);
            for a in 0..n {
                link[(a, a)] = BigInt::from(table.multiplicity(a));
                for b in 0..n {
                    if a != b {
                        link[(a, b)] = BigInt::from(table.joint(a, b));
                    }
                }
            }
            let from_diagram = cokernel(&link);
            let from_presentation = abelianization(&st_star_presentation(k).unwrap());
            assert_eq!(from_diagram, from_presentation, "k={k}");
        }
    }
}
