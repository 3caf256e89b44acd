//! Smith normal form over the integers and the lattice utilities built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Result of [`smith_normal_form`]: `d = u * a * v` with `u`, `v` unimodular.
///
/// The inverses are tracked alongside so callers can move between the
/// original and the diagonal coordinates without a second elimination.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl Snf {
    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_rank`, all positive.
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Computes `(U, D, V)` with `D = U·A·V` in Smith normal form.
///
/// Pivot is the smallest nonzero absolute value in the active block, ties
/// broken by lowest row and then lowest column, so the output is a
/// deterministic function of the input.
pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    // Row operation bookkeeping: D <- E D, U <- E U, U^-1 <- U^-1 E^-1.
    let row_add = |d: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, dst, src, k: &BigInt| {
        d.add_row_multiple(dst, src, k);
        u.add_row_multiple(dst, src, k);
        u_inv.add_col_multiple(src, dst, &-k);
    };
    let col_add = |d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, dst, src, k: &BigInt| {
        d.add_col_multiple(dst, src, k);
        v.add_col_multiple(dst, src, k);
        v_inv.add_row_multiple(src, dst, &-k);
    };

    let mut rank = 0;
    let mut t = 0;
    'outer: while t < m.min(n) {
        loop {
            let Some((pr, pc)) = smallest_nonzero(&d, t) else {
                break 'outer;
            };
            if pr != t {
                d.swap_rows(t, pr);
                u.swap_rows(t, pr);
                u_inv.swap_cols(t, pr);
            }
            if pc != t {
                d.swap_cols(t, pc);
                v.swap_cols(t, pc);
                v_inv.swap_rows(t, pc);
            }

            let mut clean = true;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t) / d.get(t, t);
                row_add(&mut d, &mut u, &mut u_inv, i, t, &-q);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j) / d.get(t, t);
                col_add(&mut d, &mut v, &mut v_inv, j, t, &-q);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            let pivot = d.get(t, t).clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    row_add(&mut d, &mut u, &mut u_inv, t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        rank += 1;
        t += 1;
    }

    Snf {
        u,
        u_inv,
        d,
        v,
        v_inv,
        rank,
    }
}

fn smallest_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for r in t..d.rows() {
        for c in t..d.cols() {
            let e = d.get(r, c);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                best = Some((a, r, c));
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

/// A sublattice of `Z^n` with a basis of full column rank.
#[derive(Debug, Clone)]
pub struct Lattice {
    basis: IntMatrix,
    snf: Snf,
}

impl Lattice {
    /// Lattice spanned by the columns of `generators` (any spanning set).
    pub fn span(generators: &IntMatrix) -> Lattice {
        let snf = smith_normal_form(generators);
        let n = generators.rows();
        let mut columns = Vec::with_capacity(snf.rank);
        for i in 0..snf.rank {
            let di = snf.d.get(i, i);
            columns.push((0..n).map(|r| snf.u_inv.get(r, i) * di).collect());
        }
        Lattice::from_basis(IntMatrix::from_columns(n, &columns))
    }

    /// Trusts that the columns are linearly independent.
    pub fn from_basis(basis: IntMatrix) -> Lattice {
        let snf = smith_normal_form(&basis);
        debug_assert_eq!(snf.rank, basis.cols(), "basis columns are dependent");
        Lattice { basis, snf }
    }

    pub fn full(n: usize) -> Lattice {
        Lattice::from_basis(IntMatrix::identity(n))
    }

    /// `{x : A x = 0}`.
    pub fn kernel_of(a: &IntMatrix) -> Lattice {
        let snf = smith_normal_form(a);
        let cols: Vec<usize> = (snf.rank..a.cols()).collect();
        Lattice::from_basis(snf.v.select_columns(&cols))
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of `w` in the basis, or `None` when `w` is not in the
    /// lattice.
    pub fn coords(&self, w: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.snf.u.mul_vec(w);
        let t = self.dim();
        let mut scaled = Vec::with_capacity(t);
        for (i, yi) in y.iter().enumerate() {
            if i < t {
                let (q, r) = yi.div_rem(self.snf.d.get(i, i));
                if !r.is_zero() {
                    return None;
                }
                scaled.push(q);
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&scaled))
    }

    pub fn contains(&self, w: &[BigInt]) -> bool {
        self.coords(w).is_some()
    }

    /// Coordinates of every column of `m`; `None` if any column lies outside.
    pub fn coords_of_columns(&self, m: &IntMatrix) -> Option<IntMatrix> {
        let mut columns = Vec::with_capacity(m.cols());
        for c in 0..m.cols() {
            columns.push(self.coords(&m.column(c))?);
        }
        Some(IntMatrix::from_columns(self.dim(), &columns))
    }

    /// Projection of the lattice onto the leading `k` coordinates, as a new
    /// lattice in `Z^k`.
    pub fn project_leading(&self, k: usize) -> Lattice {
        let rows: Vec<usize> = (0..k).collect();
        Lattice::span(&self.basis.select_rows(&rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(a: &IntMatrix) -> Snf {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(a.rows()));
        assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(a.cols()));
        assert!(s.d.is_diagonal());
        s
    }

    #[test]
    fn diag_two_three() {
        let s = check(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariants(), vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
    }

    #[test]
    fn single_negative_entry() {
        let s = check(&IntMatrix::from_i64(&[&[-7]]));
        assert_eq!(s.invariants(), vec![BigInt::from(7)]);
    }

    #[test]
    fn degenerate_shapes() {
        let s = check(&IntMatrix::zeros(0, 3));
        assert_eq!(s.rank, 0);
        let s = check(&IntMatrix::zeros(2, 0));
        assert_eq!(s.rank, 0);
        let s = check(&IntMatrix::zeros(2, 2));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn lattice_coordinates() {
        let l = Lattice::span(&IntMatrix::from_i64(&[&[2, 4], &[0, 6]]));
        let w = vec![BigInt::from(2), BigInt::from(6)];
        let c = l.coords(&w).unwrap();
        assert_eq!(l.basis().mul_vec(&c), w);
        assert!(!l.contains(&[BigInt::from(1), BigInt::from(0)]));
        assert!(!l.contains(&[BigInt::from(0), BigInt::from(3)]));
    }

    #[test]
    fn kernel_lattice_is_annihilated() {
        let a = IntMatrix::from_i64(&[&[1, -1, 0], &[0, 3, 3]]);
        let k = Lattice::kernel_of(&a);
        assert_eq!(k.dim(), 1);
        assert!((&a * k.basis()).is_zero());
    }
}
