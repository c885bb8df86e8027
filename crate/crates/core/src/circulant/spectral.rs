use super::cyclotomic::CyclotomicNumber;
use super::linalg::{Matrix, Rational};
use super::system::ExponentSystem;
use crate::error::{Error, Result};
use crate::field::is_prime;

/// Eigenvalues `λ_k = Σ_l c_l ω^{kl}` of `circ(c_0, …, c_{p−1})`, in `Q(ω)`.
pub fn circulant_eigenvalues(first_row: &[Rational]) -> Result<Vec<CyclotomicNumber>> {
    let p = first_row.len();
    if !is_prime(p as u64) {
        return Err(Error::Invalid(format!("circulant order {p} is not prime")));
    }
    Ok((0..p).map(|k| fourier_sum(first_row, k)).collect())
}

/// `Σ_l c_l ω^{kl}`.
fn fourier_sum(coeffs: &[Rational], k: usize) -> CyclotomicNumber {
    let p = coeffs.len();
    let mut poly = vec![Rational::from_integer(0.into()); p];
    for (l, c) in coeffs.iter().enumerate() {
        poly[(k * l) % p] += c;
    }
    CyclotomicNumber::reduce(p, poly)
}

/// Spectral form of an exponent system.
#[derive(Clone, Debug)]
pub struct DeltaTilde {
    p: usize,
    /// `lambda[j][k] = λ_{j,k}`, the `k`-th eigenvalue of `S_j`.
    pub lambda: Vec<Vec<CyclotomicNumber>>,
    /// `Δ̃_k = circ(λ_{0,k}, …, λ_{p−1,k})`.
    pub blocks: Vec<Matrix<CyclotomicNumber>>,
}

/// Builds `λ_{j,k}` and the circulant blocks `Δ̃_k`.
pub fn build_delta_tilde(sys: &ExponentSystem) -> DeltaTilde {
    let p = sys.p();
    let lambda: Vec<Vec<CyclotomicNumber>> = sys
        .first_rows
        .iter()
        .map(|row| {
            let row: Vec<Rational> = row.iter().map(|&a| Rational::from_integer(a.into())).collect();
            (0..p).map(|k| fourier_sum(&row, k)).collect()
        })
        .collect();
    let blocks = (0..p).map(|k| Matrix::from_fn(p, p, |r, c| lambda[(c + p - r) % p][k].clone())).collect();
    DeltaTilde { p, lambda, blocks }
}

impl DeltaTilde {
    pub fn p(&self) -> usize {
        self.p
    }

    /// `Δ = bcirc(Δ_0, …, Δ_{p−1})` with `Δ_j = diag(λ_{j,0}, …, λ_{j,p−1})`.
    pub fn delta(&self) -> Matrix<CyclotomicNumber> {
        let p = self.p;
        Matrix::from_fn(p * p, p * p, |r, c| {
            let (bi, l) = (r / p, r % p);
            let (bj, l2) = (c / p, c % p);
            if l == l2 {
                self.lambda[(bj + p - bi) % p][l].clone()
            } else {
                CyclotomicNumber::zero(p)
            }
        })
    }

    /// Regrouping order: position `l·p + t` takes row (or column) `t·p + l`
    /// of `Δ`, i.e. rows `L_l, L_{p+l}, …, L_{(p−1)p+l}` become contiguous.
    pub fn permutation(&self) -> Vec<usize> {
        let p = self.p;
        (0..p * p).map(|k| (k % p) * p + k / p).collect()
    }

    /// `Δ` with rows and then columns regrouped by [`DeltaTilde::permutation`].
    pub fn regrouped(&self) -> Matrix<CyclotomicNumber> {
        let perm = self.permutation();
        self.delta().permuted(&perm, &perm)
    }

    /// `diag(Δ̃_0, …, Δ̃_{p−1})`.
    pub fn assembled(&self) -> Matrix<CyclotomicNumber> {
        let p = self.p;
        Matrix::from_fn(p * p, p * p, |r, c| {
            if r / p == c / p {
                self.blocks[r / p].get(r % p, c % p).clone()
            } else {
                CyclotomicNumber::zero(p)
            }
        })
    }
}

/// Whether `Σ_r u_r ω^{jr} = 0` in `Q(ω)`.
pub fn cyclotomic_constant_test(u: &[Rational], j: usize) -> Result<bool> {
    let p = u.len();
    if !is_prime(p as u64) {
        return Err(Error::Invalid(format!("vector length {p} is not prime")));
    }
    if j == 0 || j >= p {
        return Err(Error::Invalid(format!("index {j} must lie in 1..{p}")));
    }
    Ok(fourier_sum(u, j).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::linalg::rank_over_field;
    use crate::circulant::system::build_system;
    use crate::field::FieldSpec;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn eigenvalue_examples() {
        let ev = circulant_eigenvalues(&[q(1), q(-2), q(1)]).unwrap();
        assert!(ev[0].is_zero());
        let w = CyclotomicNumber::omega_pow(3, 1);
        let expected = CyclotomicNumber::one(3).sub(&w.scale(&q(2))).add(&w.mul(&w));
        assert_eq!(ev[1], expected);
        assert!(!ev[1].is_zero());

        let ev = circulant_eigenvalues(&[q(1), q(-3)]).unwrap();
        assert_eq!(ev, vec![CyclotomicNumber::from_int(2, -2), CyclotomicNumber::from_int(2, 4)]);
        assert!(circulant_eigenvalues(&vec![q(1); 4]).is_err());
    }

    #[test]
    fn eigenvectors_are_fourier_columns() {
        // circ(c)·v_k = λ_k·v_k with v_k = (ω^{km})_m.
        let row = [q(3), q(-1), q(0), q(2), q(5)];
        let p = row.len();
        let ev = circulant_eigenvalues(&row).unwrap();
        for (k, lambda) in ev.iter().enumerate() {
            for m in 0..p {
                let lhs = (0..p).fold(CyclotomicNumber::zero(p), |acc, n| {
                    let c = &row[(n + p - m) % p];
                    acc.add(&CyclotomicNumber::omega_pow(p, k * n).scale(c))
                });
                assert_eq!(lhs, lambda.mul(&CyclotomicNumber::omega_pow(p, k * m)));
            }
        }
    }

    #[test]
    fn four_element_delta_tilde() {
        let f = FieldSpec::new(2).unwrap();
        let dt = build_delta_tilde(&build_system(&f, 3).unwrap());
        let c = |n| CyclotomicNumber::from_int(2, n);
        assert_eq!(dt.lambda, vec![vec![c(-2), c(4)], vec![c(2), c(0)]]);
        assert_eq!(dt.blocks[0], Matrix::from_rows(vec![vec![c(-2), c(2)], vec![c(2), c(-2)]]));
        assert_eq!(dt.blocks[1], Matrix::from_rows(vec![vec![c(4), c(0)], vec![c(0), c(4)]]));
        assert_eq!(dt.regrouped(), dt.assembled());
        assert_eq!(rank_over_field(&dt.assembled()), 3);
    }

    #[test]
    fn vanishing_blocks_give_zero_eigenvalues() {
        let f = FieldSpec::new(3).unwrap();
        let dt = build_delta_tilde(&build_system(&f, 2).unwrap());
        for j in 1..3 {
            assert!(dt.lambda[j].iter().all(CyclotomicNumber::is_zero));
        }
        assert_eq!(dt.regrouped(), dt.assembled());
    }

    #[test]
    fn constant_test_examples() {
        assert!(cyclotomic_constant_test(&[q(5), q(5), q(5)], 1).unwrap());
        assert!(!cyclotomic_constant_test(&[q(1), q(0), q(0)], 1).unwrap());
        assert!(cyclotomic_constant_test(&[q(1), q(0), q(0)], 0).is_err());
        assert!(cyclotomic_constant_test(&[q(1), q(0), q(0), q(0)], 1).is_err());
    }
}
