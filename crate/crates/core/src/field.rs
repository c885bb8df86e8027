//! Arithmetic in `F_p` and in the quadratic extension `F_{p^2} = F_p[α]`.
//!
//! An element `iα + j` is stored as the coordinate pair `(i, j)`. The
//! derived ordering on [`ExtElement`] compares `i` first and then `j`, which
//! is exactly the lexicographic order used to index unknowns and roots
//! throughout the crate.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported characteristic. Keeps every intermediate product of two
/// reduced coordinates below `2^30`.
pub const MAX_PRIME: u32 = 1 << 15;

/// The element `iα + j` of `F_{p^2}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement {
    /// Coordinate on `α`.
    pub i: u32,
    /// Constant coordinate.
    pub j: u32,
}

impl ExtElement {
    pub const ZERO: ExtElement = ExtElement { i: 0, j: 0 };
    pub const ONE: ExtElement = ExtElement { i: 0, j: 1 };

    /// Builds `iα + j` without range checks; see [`FieldSpec::element`].
    pub const fn new(i: u32, j: u32) -> Self {
        ExtElement { i, j }
    }

    pub fn is_zero(self) -> bool {
        self.i == 0 && self.j == 0
    }

    /// Whether the element lies in the prime field.
    pub fn is_prime_field(self) -> bool {
        self.i == 0
    }
}

impl Serialize for ExtElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.i, self.j].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExtElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [i, j] = <[u32; 2]>::deserialize(deserializer)?;
        Ok(ExtElement { i, j })
    }
}

/// Binary operations accepted by [`FieldSpec::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtOp {
    Add,
    Sub,
    Mul,
}

/// `F_{p^2}` presented as `F_p[α]` with `α² = c1·α + c0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub c1: u32,
    pub c0: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl FieldSpec {
    /// Canonical presentation of `F_{p^2}`: `α² = α + 1` for `p = 2`,
    /// otherwise `α² = s` with `s` the smallest quadratic non-residue.
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > u64::from(MAX_PRIME) {
            return Err(Error::PrimeTooLarge(p));
        }
        let p = p as u32;
        if p == 2 {
            return Ok(FieldSpec { p, c1: 1, c0: 1 });
        }
        let mut residue = vec![false; p as usize];
        for x in 1..p {
            residue[((x * x) % p) as usize] = true;
        }
        let s = (1..p).find(|&s| !residue[s as usize]).expect("odd prime has a non-residue");
        Ok(FieldSpec { p, c1: 0, c0: s })
    }

    /// Validates an arbitrary presentation, rejecting reducible quadratics.
    pub fn with_relation(p: u64, c1: u64, c0: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > u64::from(MAX_PRIME) {
            return Err(Error::PrimeTooLarge(p));
        }
        if c1 >= p || c0 >= p {
            return Err(Error::Invalid(format!("relation coefficients must lie in 0..{p}")));
        }
        // x² − c1·x − c0 must have no root in F_p.
        let has_root = (0..p).any(|x| (x * x + (p - c1) * x % p + (p - c0)).is_multiple_of(p));
        if has_root {
            return Err(Error::Invalid(format!("x^2 - {c1}x - {c0} is reducible over F_{p}")));
        }
        Ok(FieldSpec { p: p as u32, c1: c1 as u32, c0: c0 as u32 })
    }

    pub fn q(&self) -> u64 {
        u64::from(self.p) * u64::from(self.p)
    }

    pub fn q_minus_one(&self) -> u64 {
        self.q() - 1
    }

    /// Number of elements as a `usize`, for indexing.
    pub fn size(&self) -> usize {
        (self.p as usize) * (self.p as usize)
    }

    pub fn alpha(&self) -> ExtElement {
        ExtElement::new(1, 0)
    }

    /// Range-checked constructor for `iα + j`.
    pub fn element(&self, i: u64, j: u64) -> Result<ExtElement> {
        let p = u64::from(self.p);
        if i >= p || j >= p {
            return Err(Error::ElementOutOfRange { i, j, p: self.p });
        }
        Ok(ExtElement::new(i as u32, j as u32))
    }

    pub fn check(&self, e: ExtElement) -> Result<ExtElement> {
        self.element(u64::from(e.i), u64::from(e.j))
    }

    /// Embeds an integer into the prime field.
    pub fn from_int(&self, n: i64) -> ExtElement {
        ExtElement::new(0, n.rem_euclid(i64::from(self.p)) as u32)
    }

    /// Position of `e` in the lexicographic enumeration, `i·p + j`.
    pub fn index_of(&self, e: ExtElement) -> usize {
        (e.i as usize) * (self.p as usize) + e.j as usize
    }

    pub fn element_at(&self, index: usize) -> ExtElement {
        let p = self.p as usize;
        ExtElement::new((index / p) as u32, (index % p) as u32)
    }

    /// All `q` elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = ExtElement> + '_ {
        (0..self.size()).map(move |k| self.element_at(k))
    }

    /// Divisors of `q − 1`, increasing.
    pub fn orders(&self) -> Vec<u64> {
        divisors(self.q_minus_one())
    }

    pub fn check_order(&self, order: u64) -> Result<()> {
        if order == 0 || !self.q_minus_one().is_multiple_of(order) {
            return Err(Error::NotDivisor { order, q_minus_one: self.q_minus_one() });
        }
        Ok(())
    }

    pub fn add(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        let p = self.p;
        ExtElement::new((a.i + b.i) % p, (a.j + b.j) % p)
    }

    pub fn neg(&self, a: ExtElement) -> ExtElement {
        let p = self.p;
        ExtElement::new((p - a.i) % p, (p - a.j) % p)
    }

    pub fn sub(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        self.add(a, self.neg(b))
    }

    /// Reduces the unreduced coordinates of a product
    /// `ii·α² + ij·α + jj` using the defining relation.
    #[inline]
    pub(crate) fn reduce_product(&self, ii: u64, ij: u64, jj: u64) -> ExtElement {
        let p = u64::from(self.p);
        let t = ii % p;
        let i = (t * u64::from(self.c1) + ij) % p;
        let j = (t * u64::from(self.c0) + jj) % p;
        ExtElement::new(i as u32, j as u32)
    }

    #[inline]
    pub fn mul(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        let (ai, aj, bi, bj) = (u64::from(a.i), u64::from(a.j), u64::from(b.i), u64::from(b.j));
        self.reduce_product(ai * bi, ai * bj + aj * bi, aj * bj)
    }

    pub fn arith(&self, a: ExtElement, b: ExtElement, op: ExtOp) -> ExtElement {
        match op {
            ExtOp::Add => self.add(a, b),
            ExtOp::Sub => self.sub(a, b),
            ExtOp::Mul => self.mul(a, b),
        }
    }

    /// Square-and-multiply exponentiation; `pow(a, 0) = 1` for every `a`.
    pub fn pow(&self, a: ExtElement, mut k: u64) -> ExtElement {
        let mut base = a;
        let mut acc = ExtElement::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: ExtElement) -> Result<ExtElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.q() - 2))
    }

    /// All `x` with `x^order = 1` in lexicographic order. Since `1 = (0, 1)`
    /// is the smallest nonzero element it always comes first.
    pub fn nth_roots_of_unity(&self, order: u64) -> Result<Vec<ExtElement>> {
        self.check_order(order)?;
        let roots: Vec<ExtElement> =
            self.elements().filter(|&x| !x.is_zero() && self.pow(x, order) == ExtElement::ONE).collect();
        debug_assert_eq!(roots.len() as u64, order);
        Ok(roots)
    }

    /// Human-readable form `iα + j` (`a` stands for α).
    pub fn format(&self, e: ExtElement) -> String {
        match (e.i, e.j) {
            (0, j) => j.to_string(),
            (1, 0) => "a".to_string(),
            (i, 0) => format!("{i}a"),
            (1, j) => format!("a+{j}"),
            (i, j) => format!("{i}a+{j}"),
        }
    }
}

/// Lexicographic comparison: first on the `α`-coordinate, then on the constant.
pub fn lex_compare(a: ExtElement, b: ExtElement) -> Ordering {
    (a.i, a.j).cmp(&(b.i, b.j))
}
