//! Acceptance suite. One test per criterion; each prints a PASS line with
//! the measured numbers once its assertions hold. Run with
//! `cargo test -p openbook --test acceptance -- --nocapture` to see them.

use std::collections::BTreeSet;
use std::time::Instant;

use openbook::mcg::{equal, hurwitz_move, realize};
use openbook::page::{boundary_parallel_curve, Factorization, Page};
use openbook::search::{enumerate_configurations, Configuration};
use openbook::{
    abelianization, canonical_monodromy, extension_h2, fibration_homology, invariant_table,
    reference_table, smith_normal_form, solve_extension, st_star_presentation, AbelianGroup,
    IntMatrix,
};

/// Deterministic xorshift64*; all randomized suites are reproducible.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0.wrapping_mul(0x2545F4914F6CDD1D)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

fn cfg(k: usize, subsets: &[&[usize]]) -> Configuration {
    Configuration::new(k, subsets.iter().map(|s| s.iter().copied().collect()).collect()).unwrap()
}

#[test]
fn criterion_1_invariant_fixtures() {
    let start = Instant::now();
    for k in 1..=6 {
        let f = canonical_monodromy(k).unwrap();
        assert_eq!(invariant_table(&f), reference_table(k).unwrap(), "k={k}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("PASS criterion 1: invariant tables match reference for k=1..6 in {elapsed:?}");
}

#[test]
fn criterion_2_lantern_gate() {
    let start = Instant::now();
    let left = realize(&canonical_monodromy(1).unwrap()).unwrap();
    let page = Page::new(1).unwrap();
    let right_curves: Vec<_> =
        (0..=3).map(|l| boundary_parallel_curve(&page, l).unwrap()).collect();
    let right = realize(&Factorization::new(page, right_curves).unwrap()).unwrap();
    assert!(equal(&left, &right).unwrap(), "lantern identity failed");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("PASS criterion 2: lantern identity holds with frozen default words in {elapsed:?}");
}

#[test]
fn criterion_3_search_classification() {
    let start = Instant::now();

    let found1 = enumerate_configurations(&reference_table(1).unwrap()).unwrap();
    assert_eq!(found1.len(), 2, "k=1 must have exactly the two lantern configurations");
    assert!(found1.contains(&cfg(1, &[&[0, 1], &[0, 2], &[1, 2]])));
    assert!(found1.contains(&cfg(1, &[&[0], &[1], &[2], &[0, 1, 2]])));

    let found2 = enumerate_configurations(&reference_table(2).unwrap()).unwrap();
    assert_eq!(found2.len(), 2, "k=2 must have the canonical and one alternative");
    assert!(found2.contains(&cfg(2, &[&[0, 1, 3], &[1, 2], &[3, 4], &[0, 2, 4]])));
    assert!(found2.contains(&cfg(2, &[&[0, 1, 2], &[0, 3, 4], &[1, 3], &[2, 4]])));

    for k in 3..=5 {
        let found = enumerate_configurations(&reference_table(k).unwrap()).unwrap();
        let canonical = Configuration::from_factorization(&canonical_monodromy(k).unwrap());
        assert_eq!(found, vec![canonical], "k={k} must be canonical only");
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "took {elapsed:?}, budget 5 min");
    println!("PASS criterion 3: configuration counts 2/2/1/1/1 for k=1..5 in {elapsed:?}");
}

#[test]
fn criterion_4_fibration_homology() {
    for k in 2..=5 {
        let expected_h1 = AbelianGroup::with_cyclic_orders(k - 1, &[2]);
        for c in enumerate_configurations(&reference_table(k).unwrap()).unwrap() {
            let (h1, h2) = fibration_homology(&c);
            assert_eq!(h1, expected_h1, "k={k} {}", c.render_text());
            assert!(h2.is_trivial(), "k={k} {}", c.render_text());
        }
    }
    let mut h2_ranks: Vec<usize> = enumerate_configurations(&reference_table(1).unwrap())
        .unwrap()
        .iter()
        .map(|c| fibration_homology(c).1.free_rank())
        .collect();
    h2_ranks.sort();
    assert_eq!(h2_ranks, vec![0, 1], "k=1 fillings must differ in H2 rank");
    println!("PASS criterion 4: H1 = Z^(k-1) ⊕ Z/2 and H2 = 0 for k=2..5; k=1 ranks differ");
}

#[test]
fn criterion_5_boundary_homology() {
    for k in 1..=10usize {
        let got = abelianization(&st_star_presentation(k).unwrap());
        let expected = if k % 2 == 0 {
            AbelianGroup::with_cyclic_orders(k - 1, &[2, 2])
        } else {
            AbelianGroup::with_cyclic_orders(k - 1, &[4])
        };
        assert_eq!(got, expected, "k={k}");
    }
    println!("PASS criterion 5: boundary H1 matches the parity split for k=1..10");
}

#[test]
fn criterion_6_extension_solver() {
    for k in 2..=6 {
        assert_eq!(solve_extension(k, 100).unwrap(), vec![1], "k={k}");
        let at_zero = extension_h2(k, 0).unwrap();
        assert_eq!(at_zero, AbelianGroup::with_cyclic_orders(k - 1, &[2]), "k={k}, m=0");
        assert!(!at_zero.is_trivial());
    }
    println!("PASS criterion 6: only m = 1 kills the extension homology for k=2..6");
}

#[test]
fn criterion_7a_hurwitz_invariance() {
    // 125 random walks of 4 moves each per k, every move verified: 500
    // randomized moves per k in total. Walks restart from the canonical
    // factorization: curve words grow exponentially along a single long walk
    // (intrinsic to iterated twisting) and the word cap makes such walks a
    // hard error. Exhausting every index sequence to depth 4 keeps the worst
    // moved-curve word under ten thousand letters.
    let mut rng = Rng(0x0B5E55ED);
    for k in 1..=4usize {
        let original = canonical_monodromy(k).unwrap();
        let target = realize(&original).unwrap();
        let table = invariant_table(&original);
        let mut moves = 0usize;
        for _walk in 0..125 {
            let mut f = original.clone();
            for _ in 0..4 {
                let i = rng.below(f.len() as u64 - 1) as usize;
                f = hurwitz_move(&f, i).unwrap();
                moves += 1;
                assert!(
                    equal(&target, &realize(&f).unwrap()).unwrap(),
                    "k={k} move={moves} realize drifted"
                );
                assert_eq!(invariant_table(&f), table, "k={k} move={moves} table drifted");
            }
        }
        assert_eq!(moves, 500);
    }
    println!("PASS criterion 7a: realize and tables invariant over 500 moves for each k=1..4");
}

#[test]
fn criterion_7b_snf_against_determinantal_divisors() {
    let mut rng = Rng(0x5EEDED);
    for case in 0..1000 {
        let rows = 1 + rng.below(8) as usize;
        let cols = 1 + rng.below(8) as usize;
        let m = IntMatrix::from_fn(rows, cols, |_, _| rng.int_in(-9, 9));
        let snf = smith_normal_form(&m);

        let mut product = 1i128;
        for (i, d) in snf.d.iter().enumerate() {
            let d: i128 = d.try_into().expect("desk-scale invariant factor");
            product = product.saturating_mul(d);
            let divisor = gcd_of_minors(&m, i + 1);
            assert_eq!(product, divisor, "case {case}: {rows}x{cols} at size {}", i + 1);
        }
    }
    println!("PASS criterion 7b: invariant factor products equal gcds of minors, 1000 matrices");
}

#[test]
fn criterion_7c_shuffle_invariance_of_fibration_homology() {
    let mut rng = Rng(0xC0FFEE);
    for k in 1..=5usize {
        let f = canonical_monodromy(k).unwrap();
        let base = fibration_homology(&Configuration::from_factorization(&f));
        for _ in 0..50 {
            let mut curves = f.curves().to_vec();
            for i in (1..curves.len()).rev() {
                let j = rng.below(i as u64 + 1) as usize;
                curves.swap(i, j);
            }
            let shuffled = Factorization::new(*f.page(), curves).unwrap();
            let got = fibration_homology(&Configuration::from_factorization(&shuffled));
            assert_eq!(got, base, "k={k}");
        }
    }
    println!("PASS criterion 7c: fibration homology is order-blind, 50 shuffles for k=1..5");
}

/// Independent oracle for criterion 7b: the gcd of all `size × size` minors,
/// by direct enumeration with exact i128 Bareiss determinants. Entries are
/// in [-9, 9] and sizes at most 8, so i128 never overflows.
fn gcd_of_minors(m: &IntMatrix, size: usize) -> i128 {
    if size > m.rows() || size > m.cols() {
        return 0;
    }
    let as_i128 = |r: usize, c: usize| -> i128 {
        i128::try_from(&m[(r, c)]).expect("small entries")
    };
    let row_sets = combinations(m.rows(), size);
    let col_sets = combinations(m.cols(), size);
    let mut g: i128 = 0;
    for rs in &row_sets {
        for cs in &col_sets {
            let mut sub = vec![vec![0i128; size]; size];
            for (i, &r) in rs.iter().enumerate() {
                for (j, &c) in cs.iter().enumerate() {
                    sub[i][j] = as_i128(r, c);
                }
            }
            g = gcd_i128(g, bareiss_det(sub));
            if g == 1 {
                return 1;
            }
        }
    }
    g
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

fn bareiss_det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for t in 0..n - 1 {
        if a[t][t] == 0 {
            let Some(p) = (t + 1..n).find(|&i| a[i][t] != 0) else {
                return 0;
            };
            a.swap(t, p);
            sign = -sign;
        }
        for i in t + 1..n {
            for j in t + 1..n {
                a[i][j] = (a[t][t] * a[i][j] - a[i][t] * a[t][j]) / prev;
            }
            a[i][t] = 0;
        }
        prev = a[t][t];
    }
    sign * a[n - 1][n - 1]
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Shape facts that the criteria above lean on: canonical curve counts and
/// per-hole incidences.
#[test]
fn canonical_shape_facts() {
    for k in 1..=6 {
        let f = canonical_monodromy(k).unwrap();
        assert_eq!(f.len(), k + 2);
        let mut incidence = vec![0usize; 2 * k + 1];
        let mut all: BTreeSet<usize> = BTreeSet::new();
        for c in f.curves() {
            for &h in c.holes() {
                incidence[h] += 1;
                all.insert(h);
            }
        }
        assert!(incidence.iter().all(|&c| c == 2));
        assert_eq!(all.len(), 2 * k + 1);
    }
}
