//! Dense exact integer matrices and Smith normal form.
//!
//! All arithmetic is arbitrary precision; there is no fixed-width fast path.
//! The matrices here are desk scale (a few dozen rows at most), so the
//! elimination uses plain gcd pivoting — smallest absolute value pivot — to
//! keep entry growth down, and correctness is checked on every call: the
//! returned transforms are verified unimodular by exact determinant and the
//! diagonalization identity `U·A·V = diag(d)` is re-multiplied.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense matrix of exact integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds from row-major `i64` data; panics if the slice length is not
    /// `rows * cols`.
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must match dimensions");
        IntMatrix {
            rows,
            cols,
            entries: data.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = BigInt::from(f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_a += q * row_b
    fn add_row_multiple(&mut self, a: usize, b: usize, q: &BigInt) {
        for j in 0..self.cols {
            let add = q * &self[(b, j)];
            self[(a, j)] += add;
        }
    }

    /// col_a += q * col_b
    fn add_col_multiple(&mut self, a: usize, b: usize, q: &BigInt) {
        for i in 0..self.rows {
            let add = q * &self[(i, b)];
            self[(i, a)] += add;
        }
    }

    /// Left-multiplies rows (a, b) by `[[p, q], [r, s]]`.
    fn row_transform(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
        for j in 0..self.cols {
            let x = self[(a, j)].clone();
            let y = self[(b, j)].clone();
            self[(a, j)] = p * &x + q * &y;
            self[(b, j)] = r * &x + s * &y;
        }
    }

    /// Right-multiplies columns (a, b) by `[[p, r], [q, s]]`ᵀ-style: new
    /// col_a = p·col_a + q·col_b, new col_b = r·col_a + s·col_b.
    fn col_transform(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
        for i in 0..self.rows {
            let x = self[(i, a)].clone();
            let y = self[(i, b)].clone();
            self[(i, a)] = p * &x + q * &y;
            self[(i, b)] = r * &x + s * &y;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for t in 0..n - 1 {
            if a[(t, t)].is_zero() {
                let Some(p) = (t + 1..n).find(|&i| !a[(i, t)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(t, p);
                sign = -sign;
            }
            for i in t + 1..n {
                for j in t + 1..n {
                    let num = &a[(t, t)] * &a[(i, j)] - &a[(i, t)] * &a[(t, j)];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    a[(i, j)] = q;
                }
                a[(i, t)] = BigInt::zero();
            }
            prev = a[(t, t)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Result of [`smith_normal_form`]: `u · a · v = diag(d)` with `d_i ≥ 0`,
/// `d_i | d_{i+1}`, and `u`, `v` unimodular.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|v| !v.is_zero()).count()
    }
}

/// Smith normal form by gcd pivoting. Empty matrices are fine and give an
/// empty `d`. The unimodularity of the transforms and the diagonalization
/// identity are verified before returning.
pub fn smith_normal_form(a: &IntMatrix) -> SmithNormalForm {
    let (rows, cols) = (a.rows(), a.cols());
    let mut b = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let bound = rows.min(cols);

    for t in 0..bound {
        if !select_pivot(&mut b, &mut u, &mut v, t) {
            break;
        }
        loop {
            clear_pivot_cross(&mut b, &mut u, &mut v, t);
            if fix_divisibility(&mut b, &mut u, t) {
                break;
            }
        }
        if b[(t, t)].is_negative() {
            b.negate_row(t);
            u.negate_row(t);
        }
    }

    let d: Vec<BigInt> = (0..bound).map(|t| b[(t, t)].clone()).collect();

    // exact verification of the contract
    debug_or_check(&d, a, &u, &v);

    SmithNormalForm { d, u, v }
}

/// Moves the smallest nonzero entry of the trailing submatrix to `(t, t)`.
/// Returns false when the submatrix is zero.
fn select_pivot(b: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, t: usize) -> bool {
    let mut best: Option<(usize, usize)> = None;
    for i in t..b.rows() {
        for j in t..b.cols() {
            if b[(i, j)].is_zero() {
                continue;
            }
            match best {
                Some(pos) if b[pos].magnitude() <= b[(i, j)].magnitude() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    let Some((pi, pj)) = best else {
        return false;
    };
    b.swap_rows(t, pi);
    u.swap_rows(t, pi);
    b.swap_cols(t, pj);
    v.swap_cols(t, pj);
    true
}

/// Clears row `t` and column `t` against the pivot with single unimodular
/// 2×2 transforms per entry. Quotient-and-swap cycles are avoided: each
/// non-divisible entry shrinks the pivot to a gcd in one step, which keeps
/// the trailing entries from swelling.
fn clear_pivot_cross(b: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, t: usize) {
    loop {
        for i in t + 1..b.rows() {
            if b[(i, t)].is_zero() {
                continue;
            }
            let x = b[(t, t)].clone();
            let y = b[(i, t)].clone();
            if y.mod_floor(&x).is_zero() {
                let q = -(&y / &x);
                b.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
            } else {
                // [[s, w], [-y/g, x/g]] is unimodular and sends (x, y) to (g, 0)
                let e = x.extended_gcd(&y);
                let (bp, ap) = (&y / &e.gcd, &x / &e.gcd);
                b.row_transform(t, i, &e.x, &e.y, &-bp.clone(), &ap);
                u.row_transform(t, i, &e.x, &e.y, &-bp, &ap);
            }
        }
        for j in t + 1..b.cols() {
            if b[(t, j)].is_zero() {
                continue;
            }
            let x = b[(t, t)].clone();
            let y = b[(t, j)].clone();
            if y.mod_floor(&x).is_zero() {
                let q = -(&y / &x);
                b.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
            } else {
                let e = x.extended_gcd(&y);
                let (bp, ap) = (&y / &e.gcd, &x / &e.gcd);
                b.col_transform(t, j, &e.x, &e.y, &-bp.clone(), &ap);
                v.col_transform(t, j, &e.x, &e.y, &-bp, &ap);
            }
        }
        // column transforms can re-dirty column t below the pivot; every
        // non-divisible hit strictly shrinks the pivot, so this settles
        if cross_is_clear(b, t) {
            return;
        }
    }
}

fn cross_is_clear(b: &IntMatrix, t: usize) -> bool {
    (t + 1..b.rows()).all(|i| b[(i, t)].is_zero())
        && (t + 1..b.cols()).all(|j| b[(t, j)].is_zero())
}

/// Makes the pivot divide the whole trailing submatrix. Returns true when it
/// already does; otherwise folds the offending row into row `t` so the next
/// elimination pass shrinks the pivot.
fn fix_divisibility(b: &mut IntMatrix, u: &mut IntMatrix, t: usize) -> bool {
    for i in t + 1..b.rows() {
        for j in t + 1..b.cols() {
            if !b[(i, j)].mod_floor(&b[(t, t)]).is_zero() {
                b.add_row_multiple(t, i, &BigInt::one());
                u.add_row_multiple(t, i, &BigInt::one());
                return false;
            }
        }
    }
    true
}

fn debug_or_check(d: &[BigInt], a: &IntMatrix, u: &IntMatrix, v: &IntMatrix) {
    assert!(
        u.determinant().abs().is_one() && v.determinant().abs().is_one(),
        "SNF transforms must be unimodular"
    );
    let prod = u.mul(a).mul(v);
    for i in 0..prod.rows() {
        for j in 0..prod.cols() {
            let expect = if i == j && i < d.len() { d[i].clone() } else { BigInt::zero() };
            assert!(prod[(i, j)] == expect, "U·A·V is not the expected diagonal");
        }
    }
    for w in d.windows(2) {
        if w[0].is_zero() {
            assert!(w[1].is_zero(), "zero invariant factors must come last");
        } else {
            assert!(w[1].mod_floor(&w[0]).is_zero(), "divisibility chain broken");
        }
    }
}
