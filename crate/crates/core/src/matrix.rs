//! Dense integer matrices with exact normal forms.
//!
//! Smith and Hermite forms drive every class-group computation downstream:
//! presentations of Cl(X), integer kernels, and particular solutions of
//! `M x = b` over the integers.

use crate::arith::Int;
use crate::error::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(
                f,
                "  {:?}",
                (0..self.cols).map(|c| self.at(r, c).to_string()).collect::<Vec<_>>()
            )?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged rows");
        }
        Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| crate::arith::int_vec(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Int {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Int {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Int::zero();
                for k in 0..self.cols {
                    acc += self.at(r, k) * other.at(k, c);
                }
                *out.at_mut(r, c) = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| crate::arith::dot_int(self.row(r), v))
            .collect()
    }

    pub fn mul_vec_rat(&self, v: &[crate::arith::Rat]) -> Vec<crate::arith::Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| crate::arith::dot_int_rat(self.row(r), v))
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[a] += f * row[b]
    fn add_row_multiple(&mut self, a: usize, b: usize, f: &Int) {
        for c in 0..self.cols {
            let t = self.at(b, c) * f;
            *self.at_mut(a, c) += t;
        }
    }

    /// col[a] += f * col[b]
    fn add_col_multiple(&mut self, a: usize, b: usize, f: &Int) {
        for r in 0..self.rows {
            let t = self.at(r, b) * f;
            *self.at_mut(r, a) += t;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = 1i32;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m.at(i, k).is_zero()) else {
                    return Int::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                    *m.at_mut(i, j) = &num / &prev;
                }
                *m.at_mut(i, k) = Int::zero();
            }
            prev = m.at(k, k).clone();
        }
        let d = m.at(n - 1, n - 1).clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    pub fn rank(&self) -> usize {
        self.smith_form().rank()
    }

    /// Smith normal form: unimodular U, V with `U * self * V = S`,
    /// S diagonal with s1 | s2 | ... and nonnegative entries.
    pub fn smith_form(&self) -> SmithForm {
        let mut s = self.clone();
        let mut u = Self::identity(self.rows);
        let mut v = Self::identity(self.cols);
        let n = self.rows.min(self.cols);

        for t in 0..n {
            loop {
                // Deterministic pivot: minimal |entry| over the trailing block,
                // ties broken by position.
                let mut pivot: Option<(usize, usize)> = None;
                for i in t..s.rows {
                    for j in t..s.cols {
                        if s.at(i, j).is_zero() {
                            continue;
                        }
                        match &pivot {
                            None => pivot = Some((i, j)),
                            Some(&(pi, pj)) => {
                                if s.at(i, j).abs() < s.at(pi, pj).abs() {
                                    pivot = Some((i, j));
                                }
                            }
                        }
                    }
                }
                let Some((pi, pj)) = pivot else {
                    break;
                };
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);

                let mut dirty = false;
                for i in t + 1..s.rows {
                    if !s.at(i, t).is_zero() {
                        let q = -(s.at(i, t).div_floor(s.at(t, t)));
                        s.add_row_multiple(i, t, &q);
                        u.add_row_multiple(i, t, &q);
                        if !s.at(i, t).is_zero() {
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..s.cols {
                    if !s.at(t, j).is_zero() {
                        let q = -(s.at(t, j).div_floor(s.at(t, t)));
                        s.add_col_multiple(j, t, &q);
                        v.add_col_multiple(j, t, &q);
                        if !s.at(t, j).is_zero() {
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    continue;
                }
                let clean = (t + 1..s.rows).all(|i| s.at(i, t).is_zero())
                    && (t + 1..s.cols).all(|j| s.at(t, j).is_zero());
                if clean {
                    break;
                }
            }
        }

        // Normalize signs.
        for t in 0..n {
            if s.at(t, t).is_negative() {
                s.negate_row(t);
                u.negate_row(t);
            }
        }

        // Enforce the divisibility chain s_i | s_{i+1}.
        loop {
            let mut fixed = true;
            for t in 0..n.saturating_sub(1) {
                let a = s.at(t, t).clone();
                let b = s.at(t + 1, t + 1).clone();
                if a.is_zero() || b.is_zero() || (&b % &a).is_zero() {
                    continue;
                }
                fixed = false;
                // Place b next to a, clear with row/col ops; this replaces
                // the pair by (gcd, lcm).
                s.add_col_multiple(t, t + 1, &Int::one());
                v.add_col_multiple(t, t + 1, &Int::one());
                loop {
                    // Column t now holds (a, b)^T in rows t, t+1.
                    let at = s.at(t, t).clone();
                    let bt = s.at(t + 1, t).clone();
                    if bt.is_zero() {
                        break;
                    }
                    if at.is_zero() || bt.abs() < at.abs() {
                        s.swap_rows(t, t + 1);
                        u.swap_rows(t, t + 1);
                        continue;
                    }
                    let q = -(s.at(t + 1, t).div_floor(s.at(t, t)));
                    s.add_row_multiple(t + 1, t, &q);
                    u.add_row_multiple(t + 1, t, &q);
                }
                // Clear the fill-in in row t / row t+1 off-diagonal.
                for j in t + 1..s.cols {
                    if !s.at(t, j).is_zero() {
                        let q = -(s.at(t, j) / s.at(t, t)).clone();
                        s.add_col_multiple(j, t, &q);
                        v.add_col_multiple(j, t, &q);
                    }
                }
                for i in t + 1..s.rows {
                    if !s.at(i, t).is_zero() {
                        let q = -(s.at(i, t) / s.at(t, t)).clone();
                        s.add_row_multiple(i, t, &q);
                        u.add_row_multiple(i, t, &q);
                    }
                }
                if s.at(t, t).is_negative() {
                    s.negate_row(t);
                    u.negate_row(t);
                }
                if s.at(t + 1, t + 1).is_negative() {
                    s.negate_row(t + 1);
                    u.negate_row(t + 1);
                }
            }
            if fixed {
                break;
            }
        }

        SmithForm { u, s, v }
    }

    /// Row-style Hermite normal form: unimodular U with `U * self = H`,
    /// H in row echelon form with positive pivots and entries above each
    /// pivot reduced into [0, pivot). The form is unique, which makes it
    /// a canonical representative for golden tests.
    pub fn hermite_form(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = Self::identity(self.rows);
        let mut r = 0;
        for c in 0..h.cols {
            if r == h.rows {
                break;
            }
            // Euclidean elimination in column c below row r.
            loop {
                let mut best: Option<usize> = None;
                for i in r..h.rows {
                    if h.at(i, c).is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some(i),
                        Some(b) => {
                            if h.at(i, c).abs() < h.at(b, c).abs() {
                                best = Some(i);
                            }
                        }
                    }
                }
                let Some(b) = best else {
                    break;
                };
                h.swap_rows(r, b);
                u.swap_rows(r, b);
                let mut done = true;
                for i in r + 1..h.rows {
                    if !h.at(i, c).is_zero() {
                        let q = -(h.at(i, c).div_floor(h.at(r, c)));
                        h.add_row_multiple(i, r, &q);
                        u.add_row_multiple(i, r, &q);
                        if !h.at(i, c).is_zero() {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if h.at(r, c).is_zero() {
                continue;
            }
            if h.at(r, c).is_negative() {
                h.negate_row(r);
                u.negate_row(r);
            }
            // Reduce entries above the pivot into [0, pivot).
            for i in 0..r {
                if !h.at(i, c).is_zero() {
                    let q = -(h.at(i, c).div_floor(h.at(r, c)));
                    h.add_row_multiple(i, r, &q);
                    u.add_row_multiple(i, r, &q);
                }
            }
            r += 1;
        }
        (h, u)
    }

    /// Basis of the integer right kernel (returned as rows).
    pub fn kernel_basis(&self) -> Vec<Vec<Int>> {
        let snf = self.smith_form();
        let rank = snf.rank();
        (rank..self.cols).map(|j| snf.v.col(j)).collect()
    }

    /// One integer solution of `self * x = b`, if any exists.
    pub fn solve_integer(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.rows);
        let snf = self.smith_form();
        let ub = snf.u.mul_vec(b);
        let n = self.rows.min(self.cols);
        let mut y = vec![Int::zero(); self.cols];
        for i in 0..self.rows {
            if i < n && !snf.s.at(i, i).is_zero() {
                let (q, r) = ub[i].div_rem(snf.s.at(i, i));
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !ub[i].is_zero() {
                return None;
            }
        }
        Some(snf.v.mul_vec(&y))
    }

    /// Elementary divisors different from 1 (the torsion orders of the
    /// cokernel), in divisibility order.
    pub fn torsion_orders(&self) -> Vec<Int> {
        let snf = self.smith_form();
        let n = self.rows.min(self.cols);
        (0..n)
            .map(|i| snf.s.at(i, i).clone())
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect()
    }

    /// Inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        if !self.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        let snf = self.smith_form();
        // U * M * V = I, hence M^{-1} = V * U.
        debug_assert!((0..self.rows).all(|i| snf.s.at(i, i).is_one()));
        Ok(snf.v.mul(&snf.u))
    }
}

#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        let n = self.s.rows().min(self.s.cols());
        (0..n).filter(|&i| !self.s.at(i, i).is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<Int> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.at(i, i).clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use rand::{Rng, SeedableRng};

    fn check_snf(m: &IntMatrix) -> SmithForm {
        let snf = m.smith_form();
        assert!(snf.u.is_unimodular(), "U not unimodular");
        assert!(snf.v.is_unimodular(), "V not unimodular");
        assert_eq!(snf.u.mul(m).mul(&snf.v), snf.s, "U*M*V != S");
        let d = snf.diagonal();
        for w in d.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken: {d:?}");
            } else {
                assert!(w[1].is_zero(), "zero before nonzero in chain");
            }
        }
        for x in &d {
            assert!(!x.is_negative());
        }
        snf
    }

    #[test]
    fn smith_identity() {
        let m = IntMatrix::identity(2);
        let snf = check_snf(&m);
        assert_eq!(snf.s, IntMatrix::identity(2));
    }

    #[test]
    fn smith_diag_2_3() {
        // diag(2,3) has invariant factors (1,6): forced by gcd 1 and det 6.
        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let snf = check_snf(&m);
        assert_eq!(snf.diagonal(), vec![int(1), int(6)]);
    }

    #[test]
    fn smith_single_row_gcd() {
        let m = IntMatrix::from_i64_rows(&[&[2, 4]]);
        let snf = check_snf(&m);
        assert_eq!(snf.diagonal(), vec![int(2)]);
        assert!(snf.s.at(0, 1).is_zero());
    }

    #[test]
    fn smith_random_matrices() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let rows = rng.random_range(1..=4);
            let cols = rng.random_range(1..=4);
            let mut m = IntMatrix::zero(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    *m.at_mut(r, c) = int(rng.random_range(-9..=9));
                }
            }
            check_snf(&m);
        }
    }

    #[test]
    fn hermite_canonical() {
        let m = IntMatrix::from_i64_rows(&[&[1, 1, 1, 0], &[-1, -1, 0, 1]]);
        let (h, u) = m.hermite_form();
        assert!(u.is_unimodular());
        assert_eq!(u.mul(&m), h);
        assert_eq!(h, IntMatrix::from_i64_rows(&[&[1, 1, 0, -1], &[0, 0, 1, 1]]));
    }

    #[test]
    fn kernel_and_solve() {
        // P^2 ray matrix transposed: kernel is the line (1,1,1).
        let m = IntMatrix::from_i64_rows(&[&[1, 0, -1], &[0, 1, -1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(crate::arith::primitive(&k[0]), crate::arith::int_vec(&[1, 1, 1]));

        let b = vec![int(3), int(5)];
        let x = m.solve_integer(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);

        // 2x = 1 has no integer solution.
        let m = IntMatrix::from_i64_rows(&[&[2]]);
        assert!(m.solve_integer(&[int(1)]).is_none());
        assert_eq!(m.solve_integer(&[int(4)]).unwrap(), vec![int(2)]);
    }

    #[test]
    fn determinant_and_unimodularity() {
        let m = IntMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.det(), int(1));
        assert!(m.is_unimodular());
        let m = IntMatrix::from_i64_rows(&[&[1, 0, 1], &[0, 1, 1], &[-1, -1, 1]]);
        assert_eq!(m.det(), int(3));
        assert!(!m.is_unimodular());
        let inv = IntMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]).unimodular_inverse().unwrap();
        assert_eq!(inv, IntMatrix::from_i64_rows(&[&[1, -1], &[-1, 2]]));
    }

    #[test]
    fn torsion_orders_reported() {
        // Quadric cone ray pairing: cokernel Z/2.
        let m = IntMatrix::from_i64_rows(&[&[1, 1], &[0, 2]]);
        assert_eq!(m.torsion_orders(), vec![int(2)]);
    }
}
