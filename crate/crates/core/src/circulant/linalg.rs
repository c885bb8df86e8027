use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Minimal field interface needed by Gaussian elimination.
pub trait FieldScalar: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse; only called on nonzero values.
    fn inv(&self) -> Self;
}

impl FieldScalar for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RationalMatrix = Matrix<Rational>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "rows must have equal length");
        let n = rows.len();
        Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols.max(1)).map(<[T]>::to_vec).take(self.rows).collect()
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Entry `(r, c)` of the result is entry `(row_perm[r], col_perm[c])` of `self`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        Matrix::from_fn(row_perm.len(), col_perm.len(), |r, c| self.get(row_perm[r], col_perm[c]).clone())
    }

    /// Square submatrix starting at `(start, start)`.
    pub fn diagonal_block(&self, start: usize, size: usize) -> Self {
        Matrix::from_fn(size, size, |r, c| self.get(start + r, start + c).clone())
    }
}

impl RationalMatrix {
    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect())
    }

    /// `M·v`.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows).map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}

/// Rank by Gaussian elimination with division, pivoting on the first nonzero
/// entry of each column.
pub fn rank_over_field<T: FieldScalar>(m: &Matrix<T>) -> usize {
    let mut rows = m.to_rows();
    let mut rank = 0;
    for c in 0..m.cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][c].inv();
        let pivot_row: Vec<T> = rows[rank].iter().map(|x| x.mul(&inv)).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x = x.sub(&factor.mul(y));
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn content(row: &[BigInt]) -> BigInt {
    row.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn normalize(row: &mut [BigInt]) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Rank and right-nullspace basis by fraction-free Gauss–Jordan elimination.
///
/// Rows are first cleared of denominators; elimination then stays in the
/// integers (`row ← a·row − b·pivot_row`, followed by division by the row
/// content). One basis vector is produced per free column, in column order,
/// with a 1 in that column and 0 in the other free columns.
pub fn rank_and_kernel(m: &RationalMatrix) -> (usize, Vec<Vec<Rational>>) {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let lcm = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let mut ints: Vec<BigInt> = row.iter().map(|x| (x * &lcm).to_integer()).collect();
            normalize(&mut ints);
            ints
        })
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    for c in 0..m.cols {
        let rank = pivots.len();
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        if rows[rank][c].is_negative() {
            rows[rank].iter_mut().for_each(|x| *x = -&*x);
        }
        let pivot_row = rows[rank].clone();
        let a = &pivot_row[c];
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[c].is_zero() {
                continue;
            }
            let b = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * a - &b * y;
            }
            normalize(row);
        }
        pivots.push(c);
        if pivots.len() == rows.len() {
            break;
        }
    }

    let rank = pivots.len();
    let mut kernel = Vec::new();
    let mut next_pivot = 0;
    for f in 0..m.cols {
        if next_pivot < rank && pivots[next_pivot] == f {
            next_pivot += 1;
            continue;
        }
        let mut v = vec![Rational::zero(); m.cols];
        v[f] = Rational::one();
        for (r, &c) in pivots.iter().enumerate() {
            if !rows[r][f].is_zero() {
                v[c] = -Rational::new(rows[r][f].clone(), rows[r][c].clone());
            }
        }
        kernel.push(v);
    }
    (rank, kernel)
}
