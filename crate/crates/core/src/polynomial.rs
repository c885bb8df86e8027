//! Dense and factored polynomials over `F_{p^2}` and the divisor sum `σ`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ExtElement, FieldSpec};

/// Default ceiling on the degree of any polynomial that gets multiplied out.
pub const DEFAULT_DEGREE_BOUND: usize = 10_000;

/// Largest input accepted by [`sigma_bruteforce`].
pub const BRUTEFORCE_MAX_DEGREE: usize = 24;

/// Coefficient vector, lowest degree first, with no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DensePoly {
    coeffs: Vec<ExtElement>,
}

impl DensePoly {
    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DensePoly { coeffs: vec![ExtElement::ONE] }
    }

    pub fn from_coeffs(mut coeffs: Vec<ExtElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    /// `x − γ`.
    pub fn linear(field: &FieldSpec, gamma: ExtElement) -> Self {
        DensePoly { coeffs: vec![field.neg(gamma), ExtElement::ONE] }
    }

    pub fn coeffs(&self) -> &[ExtElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&ExtElement::ONE)
    }

    pub fn leading(&self) -> ExtElement {
        self.coeffs.last().copied().unwrap_or(ExtElement::ZERO)
    }

    pub fn add(&self, field: &FieldSpec, rhs: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).copied().unwrap_or_default();
                let b = rhs.coeffs.get(k).copied().unwrap_or_default();
                field.add(a, b)
            })
            .collect();
        DensePoly::from_coeffs(coeffs)
    }

    /// Schoolbook product. Coordinates are accumulated unreduced and reduced
    /// once per output coefficient.
    pub fn mul(&self, field: &FieldSpec, rhs: &DensePoly) -> DensePoly {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut acc = vec![[0u64; 3]; n];
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (ai, aj) = (u64::from(a.i), u64::from(a.j));
            for (slot, b) in acc[k..].iter_mut().zip(&rhs.coeffs) {
                let (bi, bj) = (u64::from(b.i), u64::from(b.j));
                slot[0] += ai * bi;
                slot[1] += ai * bj + aj * bi;
                slot[2] += aj * bj;
            }
        }
        DensePoly::from_coeffs(acc.into_iter().map(|[ii, ij, jj]| field.reduce_product(ii, ij, jj)).collect())
    }

    /// Multiplies in place by `x − γ`.
    pub fn mul_linear(&mut self, field: &FieldSpec, gamma: ExtElement) {
        if self.is_zero() {
            return;
        }
        let neg = field.neg(gamma);
        self.coeffs.push(ExtElement::ZERO);
        // new[k] = old[k-1] − γ·old[k]; walking downward keeps old[k-1] intact.
        for k in (0..self.coeffs.len()).rev() {
            let shifted = if k > 0 { self.coeffs[k - 1] } else { ExtElement::ZERO };
            self.coeffs[k] = field.add(shifted, field.mul(self.coeffs[k], neg));
        }
    }

    /// Exact division by `x − γ`; `None` when `γ` is not a root.
    pub fn div_linear(&self, field: &FieldSpec, gamma: ExtElement) -> Option<DensePoly> {
        let n = self.coeffs.len();
        if n < 2 {
            return None;
        }
        let mut quotient = vec![ExtElement::ZERO; n - 1];
        let mut carry = ExtElement::ZERO;
        for k in (1..n).rev() {
            carry = field.add(self.coeffs[k], field.mul(carry, gamma));
            quotient[k - 1] = carry;
        }
        let remainder = field.add(self.coeffs[0], field.mul(carry, gamma));
        remainder.is_zero().then(|| DensePoly::from_coeffs(quotient))
    }

    pub fn eval(&self, field: &FieldSpec, x: ExtElement) -> ExtElement {
        self.coeffs.iter().rev().fold(ExtElement::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    /// Renders the polynomial as `x^3 + (a+1)x + 2`.
    pub fn display(&self, field: &FieldSpec) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let coeff = field.format(*c);
            let coeff = if coeff.contains('+') { format!("({coeff})") } else { coeff };
            match (k, *c == ExtElement::ONE) {
                (0, _) => out.push_str(&coeff),
                (1, true) => out.push('x'),
                (1, false) => {
                    let _ = write!(out, "{coeff}x");
                }
                (_, true) => {
                    let _ = write!(out, "x^{k}");
                }
                (_, false) => {
                    let _ = write!(out, "{coeff}x^{k}");
                }
            }
        }
        out
    }
}

/// `∏ (x − γ)^e(γ)` kept in factored form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitPoly {
    factors: BTreeMap<ExtElement, BigUint>,
}

impl SplitPoly {
    /// The constant polynomial 1.
    pub fn one() -> Self {
        SplitPoly::default()
    }

    /// Raises the multiplicity of `γ` by `exp`; zero exponents are ignored.
    pub fn insert(&mut self, gamma: ExtElement, exp: impl Into<BigUint>) {
        let exp = exp.into();
        if exp.is_zero() {
            return;
        }
        *self.factors.entry(gamma).or_default() += exp;
    }

    pub fn from_pairs<I, E>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (ExtElement, E)>,
        E: Into<BigUint>,
    {
        let mut poly = SplitPoly::one();
        for (gamma, exp) in pairs {
            poly.insert(gamma, exp);
        }
        poly
    }

    pub fn factors(&self) -> &BTreeMap<ExtElement, BigUint> {
        &self.factors
    }

    pub fn exponent(&self, gamma: ExtElement) -> BigUint {
        self.factors.get(&gamma).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> BigUint {
        self.factors.values().sum()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Product of two factored polynomials.
    pub fn mul(&self, rhs: &SplitPoly) -> SplitPoly {
        let mut out = self.clone();
        for (&gamma, exp) in &rhs.factors {
            out.insert(gamma, exp.clone());
        }
        out
    }

    pub fn check(&self, field: &FieldSpec) -> Result<()> {
        self.factors.keys().try_for_each(|&g| field.check(g).map(|_| ()))
    }

    /// Renders as `(x)^2 (x - (a+1))`.
    pub fn display(&self, field: &FieldSpec) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let parts: Vec<String> = self.factors.iter().map(|(&g, e)| factor_text(field, g, e)).collect();
        parts.join(" ")
    }
}

#[derive(Serialize, Deserialize)]
struct SplitFactorJson {
    gamma: ExtElement,
    exp: String,
}

impl Serialize for SplitPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.factors.len()))?;
        for (&gamma, exp) in &self.factors {
            seq.serialize_element(&SplitFactorJson { gamma, exp: exp.to_str_radix(10) })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for SplitPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<SplitFactorJson>::deserialize(deserializer)?;
        let mut poly = SplitPoly::one();
        for f in raw {
            let exp = BigUint::parse_bytes(f.exp.as_bytes(), 10)
                .ok_or_else(|| serde::de::Error::custom(format!("invalid exponent {:?}", f.exp)))?;
            poly.insert(f.gamma, exp);
        }
        Ok(poly)
    }
}

/// `(x - γ)^e` in text, with `x` alone for `γ = 0` and no exponent for `e = 1`.
pub(crate) fn factor_text(field: &FieldSpec, gamma: ExtElement, exp: &BigUint) -> String {
    let base = if gamma.is_zero() {
        "x".to_string()
    } else {
        let g = field.format(gamma);
        if g.contains('+') {
            format!("(x - ({g}))")
        } else {
            format!("(x - {g})")
        }
    };
    if exp.is_one() {
        base
    } else {
        format!("{base}^{exp}")
    }
}

fn checked_degree(degree: &BigUint, bound: usize) -> Result<usize> {
    match degree.to_usize() {
        Some(d) if d <= bound => Ok(d),
        _ => Err(Error::DegreeBound { degree: degree.clone(), bound }),
    }
}

/// Multiplies out `∏ (x − γ)^e(γ)`.
pub fn expand(field: &FieldSpec, f: &SplitPoly, degree_bound: usize) -> Result<DensePoly> {
    checked_degree(&f.degree(), degree_bound)?;
    let mut out = DensePoly::one();
    for (&gamma, exp) in &f.factors {
        let e = exp.to_usize().expect("bounded by the total degree");
        for _ in 0..e {
            out.mul_linear(field, gamma);
        }
    }
    Ok(out)
}

/// `σ((x − γ)^h) = Σ_{i=0}^{h} (x − γ)^i`, evaluated by Horner's rule.
pub fn sigma_prime_power(field: &FieldSpec, gamma: ExtElement, h: usize) -> DensePoly {
    let mut out = DensePoly::one();
    for _ in 0..h {
        out.mul_linear(field, gamma);
        let c0 = out.coeffs[0];
        out.coeffs[0] = field.add(c0, ExtElement::ONE);
    }
    DensePoly::from_coeffs(out.coeffs)
}

/// Factored `σ((x − γ)^{N·p^n − 1}) = (x − γ − 1)^{p^n − 1} · ∏_{ζ ≠ 1, ζ^N = 1} (x − γ − ζ)^{p^n}`.
pub fn sigma_closed_form(field: &FieldSpec, gamma: ExtElement, order: u64, power: u32) -> Result<SplitPoly> {
    let roots = field.nth_roots_of_unity(order)?;
    let frob = BigUint::from(field.p).pow(power);
    let mut out = SplitPoly::one();
    out.insert(field.add(gamma, ExtElement::ONE), &frob - 1u32);
    for &zeta in &roots[1..] {
        out.insert(field.add(gamma, zeta), frob.clone());
    }
    Ok(out)
}

/// `σ(f)` using multiplicativity over the factored form.
pub fn sigma_split(field: &FieldSpec, f: &SplitPoly, degree_bound: usize) -> Result<DensePoly> {
    checked_degree(&f.degree(), degree_bound)?;
    let mut out = DensePoly::one();
    for (&gamma, exp) in &f.factors {
        let h = exp.to_usize().expect("bounded by the total degree");
        out = out.mul(field, &sigma_prime_power(field, gamma, h));
    }
    Ok(out)
}

/// Roots of `f` with multiplicity, found by scanning every field element.
pub fn split_roots(field: &FieldSpec, f: &DensePoly) -> Result<Vec<(ExtElement, usize)>> {
    let mut rest = f.clone();
    let mut roots = Vec::new();
    for gamma in field.elements() {
        let mut mult = 0;
        while let Some(q) = rest.div_linear(field, gamma) {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((gamma, mult));
        }
    }
    if rest.degree() != Some(0) {
        return Err(Error::NotSplit);
    }
    Ok(roots)
}

/// Literal sum of every monic divisor of a split polynomial.
pub fn sigma_bruteforce(field: &FieldSpec, f: &DensePoly) -> Result<DensePoly> {
    let degree = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::OracleInput("input must be nonconstant".into())),
    };
    if !f.is_monic() {
        return Err(Error::OracleInput("input must be monic".into()));
    }
    if degree > BRUTEFORCE_MAX_DEGREE {
        return Err(Error::OracleInput(format!("degree {degree} exceeds {BRUTEFORCE_MAX_DEGREE}")));
    }
    let roots = split_roots(field, f)?;
    let mut total = DensePoly::zero();
    sum_divisors(field, &roots, DensePoly::one(), &mut total);
    Ok(total)
}

fn sum_divisors(field: &FieldSpec, roots: &[(ExtElement, usize)], prefix: DensePoly, total: &mut DensePoly) {
    let Some((&(gamma, mult), rest)) = roots.split_first() else {
        *total = total.add(field, &prefix);
        return;
    };
    let mut divisor = prefix;
    for k in 0..=mult {
        if k > 0 {
            divisor.mul_linear(field, gamma);
        }
        sum_divisors(field, rest, divisor.clone(), total);
    }
}

/// Whether `σ(f) = f`, compared coefficient by coefficient.
pub fn is_perfect(field: &FieldSpec, f: &SplitPoly, degree_bound: usize) -> Result<bool> {
    let sigma = sigma_split(field, f, degree_bound)?;
    let expanded = expand(field, f, degree_bound)?;
    Ok(sigma == expanded)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u32, j: u32) -> ExtElement {
        ExtElement::new(i, j)
    }

    fn poly(cs: &[(u32, u32)]) -> DensePoly {
        DensePoly::from_coeffs(cs.iter().map(|&(i, j)| e(i, j)).collect())
    }

    /// Product of linear factors by plain convolution, independent of
    /// `mul_linear`.
    fn schoolbook(field: &FieldSpec, roots: &[ExtElement]) -> DensePoly {
        let mut coeffs = vec![ExtElement::ONE];
        for &r in roots {
            let mut next = vec![ExtElement::ZERO; coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] = field.add(next[k + 1], c);
                next[k] = field.sub(next[k], field.mul(c, r));
            }
            coeffs = next;
        }
        DensePoly::from_coeffs(coeffs)
    }

    #[test]
    fn expand_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        let f = SplitPoly::from_pairs([(e(0, 0), 1u32), (e(0, 1), 1u32)]);
        assert_eq!(expand(&f2, &f, 100).unwrap(), poly(&[(0, 0), (0, 1), (0, 1)]));

        let f3 = FieldSpec::new(3).unwrap();
        let f = SplitPoly::from_pairs([(e(0, 0), 2u32)]);
        assert_eq!(expand(&f3, &f, 100).unwrap(), poly(&[(0, 0), (0, 0), (0, 1)]));

        // (x − α)(x − 2α) = x² − 3αx + 2α² = x² + 2·(−1) = x² + 1 over F₉.
        let f = SplitPoly::from_pairs([(e(1, 0), 1u32), (e(2, 0), 1u32)]);
        let oracle = schoolbook(&f3, &[e(1, 0), e(2, 0)]);
        assert_eq!(oracle, poly(&[(0, 1), (0, 0), (0, 1)]));
        assert_eq!(expand(&f3, &f, 100).unwrap(), oracle);

        let big = SplitPoly::from_pairs([(e(0, 0), 20u32)]);
        assert!(matches!(expand(&f3, &big, 10), Err(Error::DegreeBound { .. })));
    }

    #[test]
    fn prime_power_sigma() {
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!(sigma_prime_power(&f2, e(0, 0), 0), DensePoly::one());
        assert_eq!(sigma_prime_power(&f2, e(0, 0), 2), poly(&[(0, 1), (0, 1), (0, 1)]));
        let f3 = FieldSpec::new(3).unwrap();
        assert_eq!(sigma_prime_power(&f3, e(0, 1), 1), poly(&[(0, 0), (0, 1)]));
    }

    #[test]
    fn closed_form_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!(sigma_closed_form(&f2, e(0, 0), 1, 1).unwrap(), SplitPoly::from_pairs([(e(0, 1), 1u32)]));

        let got = sigma_closed_form(&f2, e(0, 0), 3, 0).unwrap();
        assert_eq!(got, SplitPoly::from_pairs([(e(1, 0), 1u32), (e(1, 1), 1u32)]));
        // x² + x + 1 = (x + α)(x + α + 1) over F₄.
        assert_eq!(expand(&f2, &got, 100).unwrap(), sigma_prime_power(&f2, e(0, 0), 2));

        let f3 = FieldSpec::new(3).unwrap();
        let got = sigma_closed_form(&f3, e(0, 0), 2, 1).unwrap();
        assert_eq!(got, SplitPoly::from_pairs([(e(0, 1), 2u32), (e(0, 2), 3u32)]));
        assert_eq!(expand(&f3, &got, 100).unwrap(), sigma_prime_power(&f3, e(0, 0), 5));

        assert!(matches!(sigma_closed_form(&f3, e(0, 0), 3, 0), Err(Error::NotDivisor { .. })));
    }

    #[test]
    fn split_sigma_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        let f = SplitPoly::from_pairs([(e(0, 0), 1u32), (e(0, 1), 1u32)]);
        assert_eq!(sigma_split(&f2, &f, 100).unwrap(), poly(&[(0, 0), (0, 1), (0, 1)]));

        let f3 = FieldSpec::new(3).unwrap();
        let f = SplitPoly::from_pairs([(e(0, 0), 1u32)]);
        assert_eq!(sigma_split(&f3, &f, 100).unwrap(), poly(&[(0, 1), (0, 1)]));

        let f = SplitPoly::from_pairs([(e(0, 0), 3u32), (e(0, 1), 3u32), (e(0, 2), 3u32)]);
        let dense = expand(&f3, &f, 100).unwrap();
        assert_eq!(sigma_split(&f3, &f, 100).unwrap(), sigma_bruteforce(&f3, &dense).unwrap());

        assert_eq!(sigma_split(&f3, &SplitPoly::one(), 100).unwrap(), DensePoly::one());
    }

    #[test]
    fn bruteforce_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!(sigma_bruteforce(&f2, &poly(&[(0, 0), (0, 0), (0, 1)])).unwrap(), poly(&[(0, 1), (0, 1), (0, 1)]));
        let x2x = poly(&[(0, 0), (0, 1), (0, 1)]);
        assert_eq!(sigma_bruteforce(&f2, &x2x).unwrap(), x2x);

        // α + 1 generates F₉^*, so it is not a square and x² − (α + 1) has no root.
        let f3 = FieldSpec::new(3).unwrap();
        assert!(f3.elements().all(|x| f3.mul(x, x) != e(1, 1)));
        let nonsplit = DensePoly::from_coeffs(vec![f3.neg(e(1, 1)), ExtElement::ZERO, ExtElement::ONE]);
        assert_eq!(sigma_bruteforce(&f3, &nonsplit), Err(Error::NotSplit));
        assert!(matches!(sigma_bruteforce(&f3, &DensePoly::one()), Err(Error::OracleInput(_))));
        assert!(matches!(sigma_bruteforce(&f3, &poly(&[(0, 1), (0, 2)])), Err(Error::OracleInput(_))));
    }

    #[test]
    fn perfection_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        let all_two = SplitPoly::from_pairs(f2.elements().map(|g| (g, 2u32)));
        assert!(is_perfect(&f2, &all_two, 100).unwrap());
        assert!(!is_perfect(&f2, &SplitPoly::from_pairs([(e(0, 0), 1u32)]), 100).unwrap());
        assert!(is_perfect(&f2, &SplitPoly::one(), 100).unwrap());
    }

    #[test]
    fn linear_helpers() {
        let f3 = FieldSpec::new(3).unwrap();
        let roots = [e(1, 0), e(2, 1), e(1, 0), e(0, 2)];
        let mut p = DensePoly::one();
        for &r in &roots {
            p.mul_linear(&f3, r);
        }
        assert_eq!(p, schoolbook(&f3, &roots));
        assert_eq!(p, schoolbook(&f3, &[e(1, 0), e(1, 0)]).mul(&f3, &schoolbook(&f3, &[e(2, 1), e(0, 2)])));
        for &r in &roots {
            assert!(p.eval(&f3, r).is_zero());
        }
        let q = p.div_linear(&f3, e(2, 1)).unwrap();
        assert_eq!(q, schoolbook(&f3, &[e(1, 0), e(1, 0), e(0, 2)]));
        assert!(p.div_linear(&f3, e(0, 0)).is_none());
        let mut found = split_roots(&f3, &p).unwrap();
        found.sort();
        assert_eq!(found, vec![(e(0, 2), 1), (e(1, 0), 2), (e(2, 1), 1)]);
    }

    #[test]
    fn serde_shapes() {
        let f = SplitPoly::from_pairs([(e(1, 0), 3u32), (e(0, 1), 2u32)]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"[{"gamma":[0,1],"exp":"2"},{"gamma":[1,0],"exp":"3"}]"#);
        assert_eq!(serde_json::from_str::<SplitPoly>(&json).unwrap(), f);
        assert_eq!(serde_json::to_string(&poly(&[(0, 1), (1, 2)])).unwrap(), "[[0,1],[1,2]]");
    }

    #[test]
    fn display_forms() {
        let f3 = FieldSpec::new(3).unwrap();
        assert_eq!(poly(&[(0, 2), (1, 1), (0, 1)]).display(&f3), "x^2 + (a+1)x + 2");
        let f = SplitPoly::from_pairs([(e(0, 0), 2u32), (e(1, 1), 1u32)]);
        assert_eq!(f.display(&f3), "x^2 (x - (a+1))");
        let f = SplitPoly::from_pairs([(e(0, 2), 5u32), (e(1, 0), 1u32)]);
        assert_eq!(f.display(&f3), "(x - 2)^5 (x - a)");
    }
}
