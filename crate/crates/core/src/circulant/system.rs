use std::fmt::Write as _;

use serde::Serialize;

use super::linalg::RationalMatrix;
use crate::error::Result;
use crate::field::{ExtElement, FieldSpec};

/// Coefficient matrix of `N·x_{γ+1} = x_γ + Σ_{δ ∈ Λ^γ} x_δ`, written as
/// `S·x = 0`. Row `γ = iα + m`, column `δ = jα + n`, both lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentSystem {
    pub field: FieldSpec,
    #[serde(rename = "N")]
    pub order: u64,
    /// `a[j][i]`: row 0, column `i` of the block `S_j = S_0^j`.
    pub first_rows: Vec<Vec<i64>>,
    /// The full `q × q` matrix.
    pub matrix: Vec<Vec<i64>>,
}

/// Applies the entry rule: `−N` where `i = j` and `n = m + 1`, `1` where
/// `((i − j)α + m − n + 1)^N = 1`, and `0` otherwise.
pub fn build_system(field: &FieldSpec, order: u64) -> Result<ExponentSystem> {
    field.check_order(order)?;
    let p = field.p;
    let q = field.size();
    let minus_n = -(order as i64);
    let mut matrix = vec![vec![0i64; q]; q];
    for (r, row) in matrix.iter_mut().enumerate() {
        let gamma = field.element_at(r);
        for (c, entry) in row.iter_mut().enumerate() {
            let delta = field.element_at(c);
            let lag = field.sub(field.add(gamma, ExtElement::ONE), delta);
            let is_one = field.pow(lag, order) == ExtElement::ONE;
            let is_next = gamma.i == delta.i && delta.j == (gamma.j + 1) % p;
            debug_assert!(!(is_one && is_next));
            *entry = if is_next {
                minus_n
            } else if is_one {
                1
            } else {
                0
            };
        }
    }
    let p = p as usize;
    let first_rows = (0..p).map(|j| matrix[0][j * p..(j + 1) * p].to_vec()).collect();
    Ok(ExponentSystem { field: *field, order, first_rows, matrix })
}

/// `Σ_{j,i} a_{j,i}`.
pub fn coefficient_sum(sys: &ExponentSystem) -> i64 {
    sys.first_rows.iter().flatten().sum()
}

fn circulant(first_row: &[i64]) -> Vec<Vec<i64>> {
    let n = first_row.len();
    (0..n).map(|m| (0..n).map(|k| first_row[(k + n - m) % n]).collect()).collect()
}

impl ExponentSystem {
    pub fn p(&self) -> usize {
        self.field.p as usize
    }

    pub fn q(&self) -> usize {
        self.field.size()
    }

    /// Block `S_i^j`: equations `γ ∈ iα + F_p`, unknowns `x_{jα + n}`.
    pub fn block(&self, i: usize, j: usize) -> Vec<Vec<i64>> {
        let p = self.p();
        (0..p).map(|m| self.matrix[i * p + m][j * p..(j + 1) * p].to_vec()).collect()
    }

    /// `S_j = circ(a_{j,0}, …, a_{j,p−1})`.
    pub fn circulant_block(&self, j: usize) -> Vec<Vec<i64>> {
        circulant(&self.first_rows[j])
    }

    /// `S = bcirc(S_0, …, S_{p−1})` entry by entry, every block circulant.
    pub fn is_block_circulant(&self) -> bool {
        let p = self.p();
        (0..p).all(|i| (0..p).all(|j| self.block(i, j) == self.circulant_block((j + p - i) % p)))
    }

    /// `S_j = 0` for every `j ≠ 0`.
    pub fn off_diagonal_blocks_vanish(&self) -> bool {
        self.first_rows[1..].iter().flatten().all(|&a| a == 0)
    }

    /// `S = diag(S_0, …, S_0)`.
    pub fn is_block_diagonal(&self) -> bool {
        let p = self.p();
        let s0 = self.circulant_block(0);
        (0..p).all(|i| {
            (0..p).all(|j| {
                let b = self.block(i, j);
                if i == j {
                    b == s0
                } else {
                    b.iter().flatten().all(|&a| a == 0)
                }
            })
        })
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::from_integers(&self.matrix)
    }

    pub fn s0_rational(&self) -> RationalMatrix {
        RationalMatrix::from_integers(&self.circulant_block(0))
    }

    /// Plain-text grid, one row per line, entries separated by spaces.
    pub fn grid_text(&self) -> String {
        let mut out = String::new();
        for row in &self.matrix {
            let line: Vec<String> = row.iter().map(i64::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}
