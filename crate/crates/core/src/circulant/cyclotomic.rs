use std::fmt;

use num_traits::{One, Zero};

use super::linalg::{FieldScalar, Rational};
use crate::error::{Error, Result};

/// An element of `Q(ω) ≅ Q[x]/Φ_p`, `ω` a primitive `p`-th root of unity,
/// in the basis `1, ω, …, ω^{p−2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    coords: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(p: usize) -> Self {
        CyclotomicNumber { coords: vec![Rational::zero(); p - 1] }
    }

    pub fn one(p: usize) -> Self {
        Self::from_rational(p, Rational::one())
    }

    pub fn from_rational(p: usize, r: Rational) -> Self {
        let mut out = Self::zero(p);
        out.coords[0] = r;
        out
    }

    pub fn from_int(p: usize, n: i64) -> Self {
        Self::from_rational(p, Rational::from_integer(n.into()))
    }

    /// `ω^k`, with `k` taken modulo `p`.
    pub fn omega_pow(p: usize, k: usize) -> Self {
        let mut poly = vec![Rational::zero(); p];
        poly[k % p] = Rational::one();
        Self::reduce(p, poly)
    }

    /// Reduces `Σ c_k x^k` modulo `Φ_p`: first `x^p = 1`, then
    /// `x^{p−1} = −(1 + x + … + x^{p−2})`.
    pub fn reduce(p: usize, poly: Vec<Rational>) -> Self {
        let mut folded = vec![Rational::zero(); p];
        for (k, c) in poly.into_iter().enumerate() {
            folded[k % p] += c;
        }
        let top = folded.pop().expect("p >= 2");
        let coords = folded.into_iter().map(|c| c - &top).collect();
        CyclotomicNumber { coords }
    }

    pub fn p(&self) -> usize {
        self.coords.len() + 1
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Coordinate in `Q` when the element is rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| &self.coords[0])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect();
        CyclotomicNumber { coords }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect();
        CyclotomicNumber { coords }
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber { coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CyclotomicNumber { coords: self.coords.iter().map(|a| a * r).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.p();
        let mut poly = vec![Rational::zero(); 2 * p];
        for (k, a) in self.coords.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (l, b) in rhs.coords.iter().enumerate() {
                if !Zero::is_zero(b) {
                    poly[k + l] += a * b;
                }
            }
        }
        Self::reduce(p, poly)
    }

    /// Inverse via the extended Euclidean algorithm against `Φ_p`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let p = self.p();
        let phi = vec![Rational::one(); p];
        let (mut r0, mut r1) = (phi, trim(self.coords.clone()));
        let (mut s0, mut s1) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = divmod(&r0, &r1);
            let s = sub_poly(&s0, &mul_poly(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant because Φ_p is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].clone();
        let inv: Vec<Rational> = s0.into_iter().map(|a| a / &c).collect();
        Ok(Self::reduce(p, inv))
    }
}

impl FieldScalar for CyclotomicNumber {
    fn is_zero(&self) -> bool {
        CyclotomicNumber::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        CyclotomicNumber::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        CyclotomicNumber::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        CyclotomicNumber::mul(self, rhs)
    }
    fn inv(&self) -> Self {
        CyclotomicNumber::inv(self).expect("pivot is nonzero")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("({c})w"),
                _ => format!("({c})w^{k}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

fn trim(mut a: Vec<Rational>) -> Vec<Rational> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn sub_poly(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let zero = Rational::zero();
    trim((0..n).map(|k| a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero)).collect())
}

fn mul_poly(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (k, x) in a.iter().enumerate() {
        for (l, y) in b.iter().enumerate() {
            out[k + l] += x * y;
        }
    }
    trim(out)
}

fn divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    let lead = b.last().expect("nonzero divisor");
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().expect("nonempty") / lead;
        for (k, y) in b.iter().enumerate() {
            let t = &c * y;
            rem[shift + k] -= t;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn omega_powers() {
        for p in [2usize, 3, 5, 7, 11] {
            let w = CyclotomicNumber::omega_pow(p, 1);
            let mut acc = CyclotomicNumber::one(p);
            let mut sum = CyclotomicNumber::zero(p);
            for k in 0..p {
                assert_eq!(acc, CyclotomicNumber::omega_pow(p, k));
                sum = sum.add(&acc);
                acc = acc.mul(&w);
            }
            assert_eq!(acc, CyclotomicNumber::one(p));
            // 1 + ω + … + ω^{p−1} = Φ_p(ω) = 0.
            assert!(sum.is_zero());
        }
        assert_eq!(CyclotomicNumber::omega_pow(2, 1), CyclotomicNumber::from_int(2, -1));
    }

    #[test]
    fn three_term_example() {
        // 1 − 2ω + ω² = (1 − ω)² over Φ_3; ω² = −1 − ω.
        let p = 3;
        let w = CyclotomicNumber::omega_pow(p, 1);
        let nu = CyclotomicNumber::one(p).sub(&w.scale(&q(2))).add(&CyclotomicNumber::omega_pow(p, 2));
        assert_eq!(nu.coords(), &[q(0), q(-3)]);
        let one_minus_w = CyclotomicNumber::one(p).sub(&w);
        assert_eq!(one_minus_w.mul(&one_minus_w), nu);
        assert!(!nu.is_zero());
    }

    #[test]
    fn inverse_examples() {
        let p = 5;
        let one_minus_w = CyclotomicNumber::one(p).sub(&CyclotomicNumber::omega_pow(p, 1));
        let inv = one_minus_w.inv().unwrap();
        assert_eq!(inv.mul(&one_minus_w), CyclotomicNumber::one(p));
        assert_eq!(CyclotomicNumber::zero(p).inv(), Err(Error::ZeroInverse));
        let half = CyclotomicNumber::from_int(2, 2).inv().unwrap();
        assert_eq!(half, CyclotomicNumber::from_rational(2, Rational::new(1.into(), 2.into())));
    }

    fn element(p: usize) -> impl Strategy<Value = CyclotomicNumber> {
        prop::collection::vec((-6i64..=6, 1i64..=4), p - 1).prop_map(move |v| CyclotomicNumber {
            coords: v.into_iter().map(|(n, d)| Rational::new(n.into(), d.into())).collect(),
        })
    }

    fn triple() -> impl Strategy<Value = (CyclotomicNumber, CyclotomicNumber, CyclotomicNumber)> {
        prop::sample::select(vec![2usize, 3, 5, 7]).prop_flat_map(|p| (element(p), element(p), element(p)))
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in triple()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv().unwrap()), CyclotomicNumber::one(a.p()));
            }
        }
    }
}
