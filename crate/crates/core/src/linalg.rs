//! Arbitrary-precision integer vectors and matrices, column Hermite normal
//! form, determinants and characteristic polynomials.
//!
//! Everything here is exact; powers of a dilation transpose grow fast, so all
//! entries are `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntVec = Vec<BigInt>;

pub fn vec_from_i64(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn vec_zero(d: usize) -> IntVec {
    vec![BigInt::zero(); d]
}

pub fn vec_is_zero(v: &[BigInt]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add(a: &[BigInt], b: &[BigInt]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[BigInt], b: &[BigInt]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[BigInt]) -> IntVec {
    a.iter().map(|x| -x).collect()
}

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*x));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(d: usize, cols: &[IntVec]) -> Self {
        let mut m = IntMat::zero(d, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), d);
            for i in 0..d {
                m.set(i, j, col[i].clone());
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a * rhs.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> IntVec {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    acc += self.get(i, j) * &v[j];
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> IntMat {
        assert_eq!(self.rows, self.cols);
        let mut acc = IntMat::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, s: &BigInt) -> IntMat {
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, rhs: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row_vec(i)).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero());
                    a[i][j] = q;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    fn row_vec(&self, i: usize) -> IntVec {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    /// Coefficients of det(xI - M), ascending, exact. The polynomial is monic
    /// of degree n; computed by evaluation at n+1 integer points and Lagrange
    /// interpolation over the rationals.
    pub fn char_poly(&self) -> Vec<BigInt> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let points: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
        let values: Vec<BigInt> = points
            .iter()
            .map(|t| {
                let mut m = self.scale(&BigInt::from(-1));
                for i in 0..n {
                    let v = m.get(i, i) + t;
                    m.set(i, i, v);
                }
                m.det()
            })
            .collect();

        // Lagrange interpolation at integer nodes; coefficients come out
        // integral because the polynomial is integral.
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (i, ti) in points.iter().enumerate() {
            // basis polynomial prod_{j != i} (x - t_j) / (t_i - t_j)
            let mut basis = vec![BigRational::zero(); n + 1];
            basis[0] = BigRational::one();
            let mut deg = 0;
            let mut denom = BigRational::one();
            for (j, tj) in points.iter().enumerate() {
                if j == i {
                    continue;
                }
                let tj_r = BigRational::from_integer(tj.clone());
                // multiply the accumulated basis polynomial by (x - t_j)
                for k in (0..=deg).rev() {
                    let old_k = basis[k].clone();
                    basis[k + 1] += &old_k;
                    basis[k] = -(&tj_r * &old_k);
                }
                deg += 1;
                denom *= BigRational::from_integer(ti - tj);
            }
            let w = BigRational::from_integer(values[i].clone()) / denom;
            for k in 0..=n {
                coeffs[k] += &basis[k] * &w;
            }
        }
        coeffs
            .into_iter()
            .map(|c| {
                assert!(c.denom().is_one(), "char poly must be integral");
                c.numer().clone()
            })
            .collect()
    }
}

/// Column-style Hermite normal form.
///
/// Returns `(h, u)` with `u` unimodular and `m * u = [h | 0]`: `h` keeps only
/// the nonzero columns, in column echelon form with pivots positive, pivot
/// rows strictly increasing, and every entry left of a pivot in its row
/// reduced into `[0, pivot)`. The form is canonical, so two column spans are
/// equal iff their `h` matrices are identical.
pub fn hermite_normal_form(m: &IntMat) -> (IntMat, IntMat) {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMat::identity(cols);
    let mut pivot_col = 0usize;
    let mut pivots: Vec<(usize, usize)> = Vec::new();

    for row in 0..rows {
        if pivot_col >= cols {
            break;
        }
        loop {
            // pick the column with the smallest nonzero entry in this row
            let mut best: Option<(usize, BigInt)> = None;
            for j in pivot_col..cols {
                let v = a.get(row, j);
                if v.is_zero() {
                    continue;
                }
                let mag = v.abs();
                if best.as_ref().map_or(true, |(_, b)| mag < *b) {
                    best = Some((j, mag));
                }
            }
            let Some((j, _)) = best else {
                break;
            };
            swap_cols(&mut a, pivot_col, j);
            swap_cols(&mut u, pivot_col, j);
            let mut done = true;
            for j in pivot_col + 1..cols {
                if a.get(row, j).is_zero() {
                    continue;
                }
                let q = a.get(row, j) / a.get(row, pivot_col);
                if !q.is_zero() {
                    col_axpy(&mut a, j, pivot_col, &q);
                    col_axpy(&mut u, j, pivot_col, &q);
                }
                if !a.get(row, j).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !a.get(row, pivot_col).is_zero() {
            if a.get(row, pivot_col).is_negative() {
                negate_col(&mut a, pivot_col);
                negate_col(&mut u, pivot_col);
            }
            // reduce the entries left of this pivot into [0, pivot)
            for j in 0..pivot_col {
                let q = a.get(row, j).div_floor(a.get(row, pivot_col));
                if !q.is_zero() {
                    col_axpy(&mut a, j, pivot_col, &q);
                    col_axpy(&mut u, j, pivot_col, &q);
                }
            }
            pivots.push((row, pivot_col));
            pivot_col += 1;
        }
    }

    let rank = pivot_col;
    let mut h = IntMat::zero(rows, rank);
    for i in 0..rows {
        for j in 0..rank {
            h.set(i, j, a.get(i, j).clone());
        }
    }
    (h, u)
}

fn swap_cols(m: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let x = m.get(i, a).clone();
        let y = m.get(i, b).clone();
        m.set(i, a, y);
        m.set(i, b, x);
    }
}

/// col_j -= q * col_k
fn col_axpy(m: &mut IntMat, j: usize, k: usize, q: &BigInt) {
    for i in 0..m.rows() {
        let v = m.get(i, j) - q * m.get(i, k);
        m.set(i, j, v);
    }
}

fn negate_col(m: &mut IntMat, j: usize) {
    for i in 0..m.rows() {
        let v = -m.get(i, j).clone();
        m.set(i, j, v);
    }
}

/// Basis of the integer kernel {x : m x = 0}, as columns (column HNF of the
/// trailing transform columns). The integer kernel of an integer matrix is
/// saturated, so the HNF of these columns is canonical for it.
pub fn integer_kernel(m: &IntMat) -> IntMat {
    let (h, u) = hermite_normal_form(m);
    let rank = h.cols();
    let cols: Vec<IntVec> = (rank..m.cols()).map(|j| u.column(j)).collect();
    let gen = IntMat::from_columns(m.cols(), &cols);
    hermite_normal_form(&gen).0
}

/// Solve `m x = rhs` exactly over the rationals; `None` if inconsistent.
/// `m` may be rectangular with full column rank (the use sites guarantee it).
pub fn solve_rational(m: &IntMat, rhs: &[BigInt]) -> Option<Vec<BigRational>> {
    let rows = m.rows();
    let cols = m.cols();
    assert_eq!(rows, rhs.len());
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..cols)
                .map(|j| BigRational::from_integer(m.get(i, j).clone()))
                .collect();
            row.push(BigRational::from_integer(rhs[i].clone()));
            row
        })
        .collect();

    let mut pivot_rows = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x /= inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=cols {
                    let sub = &f * &a[r][j];
                    a[i][j] -= sub;
                }
            }
        }
        pivot_rows.push((r, c));
        r += 1;
        if r == rows {
            break;
        }
    }
    // consistency
    for i in r..rows {
        if !a[i][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); cols];
    for (row, col) in pivot_rows {
        x[col] = a[row][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_trivial_cases() {
        let m = IntMat::from_rows_i64(&[vec![2]]);
        let (h, _) = hermite_normal_form(&m);
        assert_eq!(h, IntMat::from_rows_i64(&[vec![2]]));

        let id = IntMat::identity(2);
        let (h, _) = hermite_normal_form(&id);
        assert_eq!(h, id);
    }

    #[test]
    fn hnf_2x2_hand_checked() {
        // Column reduction by hand: [[2,1],[0,3]] -> [[1,0],[3,6]]
        // (swap-in the gcd-1 column, clear the row, normalize signs,
        // reduce 3 mod 6: already in range).
        let m = IntMat::from_rows_i64(&[vec![2, 1], vec![0, 3]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, IntMat::from_rows_i64(&[vec![1, 0], vec![3, 6]]));
        // m * u = [h | 0] and u unimodular
        let prod = m.mul(&u);
        assert_eq!(prod, h);
        assert_eq!(u.det().abs(), BigInt::one());
    }

    #[test]
    fn hnf_drops_zero_columns_and_is_canonical() {
        let m = IntMat::from_rows_i64(&[vec![2, 4, 0], vec![0, 0, 0]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h.cols(), 1);
        assert_eq!(h, IntMat::from_rows_i64(&[vec![2], vec![0]]));
        assert_eq!(u.det().abs(), BigInt::one());

        // same lattice, different generators -> same HNF
        let m2 = IntMat::from_rows_i64(&[vec![-2, 6], vec![0, 0]]);
        let (h2, _) = hermite_normal_form(&m2);
        assert_eq!(h, h2);
    }

    #[test]
    fn det_and_char_poly() {
        let m = IntMat::from_rows_i64(&[vec![2, 1], vec![0, 3]]);
        assert_eq!(m.det(), BigInt::from(6));
        // det(xI - M) = (x-2)(x-3) = x^2 - 5x + 6
        assert_eq!(
            m.char_poly(),
            vec![BigInt::from(6), BigInt::from(-5), BigInt::from(1)]
        );

        let r = IntMat::from_rows_i64(&[vec![0, -2], vec![1, 0]]);
        // x^2 + 2
        assert_eq!(
            r.char_poly(),
            vec![BigInt::from(2), BigInt::from(0), BigInt::from(1)]
        );
    }

    #[test]
    fn kernel_of_diag() {
        let m = IntMat::from_rows_i64(&[vec![1, 0], vec![0, 0]]);
        let k = integer_kernel(&m);
        assert_eq!(k, IntMat::from_rows_i64(&[vec![0], vec![1]]));
    }

    #[test]
    fn solve_simple() {
        let m = IntMat::from_rows_i64(&[vec![2, 0], vec![0, 3]]);
        let x = solve_rational(&m, &vec_from_i64(&[4, 9])).unwrap();
        assert_eq!(x[0], BigRational::from_integer(BigInt::from(2)));
        assert_eq!(x[1], BigRational::new(BigInt::from(3), BigInt::from(1)));
    }

    #[test]
    fn matrix_power() {
        let m = IntMat::from_rows_i64(&[vec![1, 1], vec![0, 1]]);
        let p = m.pow(5);
        assert_eq!(p, IntMat::from_rows_i64(&[vec![1, 5], vec![0, 1]]));
    }
}
