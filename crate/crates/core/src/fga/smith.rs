//! Smith normal form over the integers.
//!
//! `D = U * M * V` with `U`, `V` unimodular and `D` diagonal, non-negative,
//! and satisfying `d_1 | d_2 | ... | d_r` followed by zeros. The inverses of
//! `U` and `V` are maintained alongside so callers never invert a matrix.

use super::matrix::IntMatrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub u: IntMatrix<T>,
    pub u_inv: IntMatrix<T>,
    pub d: IntMatrix<T>,
    pub v: IntMatrix<T>,
    pub v_inv: IntMatrix<T>,
}

impl<T: Scalar> SmithForm<T> {
    pub fn compute(m: &IntMatrix<T>) -> Self {
        let mut w = Worker {
            a: m.clone(),
            u: IntMatrix::identity(m.rows()),
            u_inv: IntMatrix::identity(m.rows()),
            v: IntMatrix::identity(m.cols()),
            v_inv: IntMatrix::identity(m.cols()),
        };
        w.run();
        SmithForm {
            u: w.u,
            u_inv: w.u_inv,
            d: w.a,
            v: w.v,
            v_inv: w.v_inv,
        }
    }

    /// The diagonal entries `d_1, ..., d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Returns `(U, D, V)` with `D = U * M * V`.
pub fn smith_normal_form<T: Scalar>(m: &IntMatrix<T>) -> (IntMatrix<T>, IntMatrix<T>, IntMatrix<T>) {
    let s = SmithForm::compute(m);
    (s.u, s.d, s.v)
}

/// `q` with `|a - q p| <= |p| / 2`.
fn nearest_quotient<T: Scalar>(a: &T, p: &T) -> T {
    let (q, r) = a.div_mod_floor(p);
    if r.add_exact(&r).abs_exact() > p.abs_exact() {
        q.add_exact(&T::one())
    } else {
        q
    }
}

struct Worker<T> {
    a: IntMatrix<T>,
    u: IntMatrix<T>,
    u_inv: IntMatrix<T>,
    v: IntMatrix<T>,
    v_inv: IntMatrix<T>,
}

impl<T: Scalar> Worker<T> {
    fn row_add(&mut self, dst: usize, src: usize, k: &T) {
        // E = I + k e_dst e_src^T acts on the left; E^{-1} = I - k e_dst e_src^T
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &k.neg_exact());
    }

    fn col_add(&mut self, dst: usize, src: usize, k: &T) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &k.neg_exact());
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of the nonzero entry of least absolute value in the
    /// lower-right block starting at `t`.
    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs_exact();
                if best.as_ref().map_or(true, |(_, _, b)| ax < *b) {
                    let one = ax.is_one();
                    best = Some((i, j, ax));
                    if one {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        let n = self.a.rows().min(self.a.cols());
        for t in 0..n {
            let Some((pi, pj)) = self.smallest_in_block(t) else {
                break;
            };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                if self.clear_column(t) {
                    continue;
                }
                if self.clear_row(t) {
                    continue;
                }
                if let Some(i) = self.non_divisible_row(t) {
                    self.row_add(t, i, &T::one());
                    continue;
                }
                break;
            }
            if self.a[(t, t)].is_negative() {
                self.row_negate(t);
            }
        }
    }

    /// Reduces column `t` below the pivot. Returns true if a nonzero
    /// remainder was left; the smallest one becomes the new pivot.
    fn clear_column(&mut self, t: usize) -> bool {
        let mut best: Option<(usize, T)> = None;
        for i in t + 1..self.a.rows() {
            if self.a[(i, t)].is_zero() {
                continue;
            }
            let q = nearest_quotient(&self.a[(i, t)], &self.a[(t, t)]);
            self.row_add(i, t, &q.neg_exact());
            let r = self.a[(i, t)].abs_exact();
            if !r.is_zero() && best.as_ref().map_or(true, |(_, b)| r < *b) {
                best = Some((i, r));
            }
        }
        match best {
            Some((i, _)) => {
                self.row_swap(t, i);
                true
            }
            None => false,
        }
    }

    fn clear_row(&mut self, t: usize) -> bool {
        let mut best: Option<(usize, T)> = None;
        for j in t + 1..self.a.cols() {
            if self.a[(t, j)].is_zero() {
                continue;
            }
            let q = nearest_quotient(&self.a[(t, j)], &self.a[(t, t)]);
            self.col_add(j, t, &q.neg_exact());
            let r = self.a[(t, j)].abs_exact();
            if !r.is_zero() && best.as_ref().map_or(true, |(_, b)| r < *b) {
                best = Some((j, r));
            }
        }
        match best {
            Some((j, _)) => {
                self.col_swap(t, j);
                true
            }
            None => false,
        }
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = &self.a[(t, t)];
        for i in t + 1..self.a.rows() {
            for j in t + 1..self.a.cols() {
                if !self.a[(i, j)].is_multiple_of(p) {
                    return Some(i);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = IntMatrix<i64>;

    fn check(m: &M) -> SmithForm<i64> {
        let s = SmithForm::compute(m);
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), M::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), M::identity(m.cols()));
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&M::identity(2));
        assert_eq!(s.d, M::identity(2));
    }

    #[test]
    fn zero_one_by_one() {
        let s = check(&M::zeros(1, 1));
        assert_eq!(s.d, M::zeros(1, 1));
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2 and |det| = 8, so the diagonal is (2, 4)
        let s = check(&M::from_i64_rows(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.d, M::from_i64_rows(&[&[2, 0], &[0, 4]]));
    }

    #[test]
    fn coprime_diagonal_merges() {
        let s = check(&M::from_i64_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal(), vec![1, 6]);
    }

    #[test]
    fn rectangular_and_empty() {
        let s = check(&M::from_i64_rows(&[&[4, 6, 10]]));
        assert_eq!(s.diagonal(), vec![2]);
        let s = check(&M::zeros(0, 3));
        assert_eq!(s.rank(), 0);
        let s = check(&M::from_i64_rows(&[&[0, 0], &[0, -5], &[0, 0]]));
        assert_eq!(s.diagonal(), vec![5, 0]);
    }
}
