//! Small prime fields and their quadratic extensions, plus just enough
//! univariate polynomial arithmetic over F_p to test good reduction and
//! splitting behavior of degeneracy forms.

use crate::{Error, Result};

/// Abstraction over the two finite fields the oracles run in. Elements are
/// plain `Copy` values; the field value carries the modulus context.
pub trait FiniteField: Sync {
    type Elem: Copy + Eq + std::fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }
    fn size(&self) -> u64;
    /// All field elements in a fixed order starting with 0.
    fn elements(&self) -> Vec<Self::Elem>;
}

/// F_p for a small odd prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

fn is_small_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// Odd primes only: everything downstream assumes characteristic != 2.
    pub fn new(p: u64) -> Result<PrimeField> {
        if p == 2 || !is_small_prime(p) {
            return Err(Error::Unsupported(format!(
                "modulus {p} must be an odd prime"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    pub fn is_square(&self, a: u64) -> bool {
        a.is_multiple_of(self.p) || self.pow(a, (self.p - 1) / 2) == 1
    }
}

impl FiniteField for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }
    fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }
    fn size(&self) -> u64 {
        self.p
    }
    fn elements(&self) -> Vec<u64> {
        (0..self.p).collect()
    }
}

/// F_{p^2} = F_p(sqrt(d)) for a fixed non-residue d, elements (a, b)
/// meaning a + b*sqrt(d).
#[derive(Debug, Clone, Copy)]
pub struct QuadExtField {
    pub base: PrimeField,
    pub nonresidue: u64,
}

impl QuadExtField {
    pub fn new(p: u64) -> Result<QuadExtField> {
        let base = PrimeField::new(p)?;
        let nonresidue = (2..p)
            .find(|&d| !base.is_square(d))
            .ok_or_else(|| Error::Unsupported(format!("no quadratic non-residue mod {p}")))?;
        Ok(QuadExtField { base, nonresidue })
    }

    pub fn embed(&self, a: u64) -> (u64, u64) {
        (a % self.base.p, 0)
    }
}

impl FiniteField for QuadExtField {
    type Elem = (u64, u64);

    fn zero(&self) -> (u64, u64) {
        (0, 0)
    }
    fn one(&self) -> (u64, u64) {
        (1, 0)
    }
    fn add(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        (self.base.add(a.0, b.0), self.base.add(a.1, b.1))
    }
    fn sub(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        (self.base.sub(a.0, b.0), self.base.sub(a.1, b.1))
    }
    fn neg(&self, a: (u64, u64)) -> (u64, u64) {
        (self.base.neg(a.0), self.base.neg(a.1))
    }
    fn mul(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        let f = &self.base;
        let re = f.add(f.mul(a.0, b.0), f.mul(self.nonresidue, f.mul(a.1, b.1)));
        let im = f.add(f.mul(a.0, b.1), f.mul(a.1, b.0));
        (re, im)
    }
    fn inv(&self, a: (u64, u64)) -> Option<(u64, u64)> {
        let f = &self.base;
        // norm = a0^2 - d a1^2
        let norm = f.sub(f.mul(a.0, a.0), f.mul(self.nonresidue, f.mul(a.1, a.1)));
        let ninv = f.inv(norm)?;
        Some((f.mul(a.0, ninv), f.mul(f.neg(a.1), ninv)))
    }
    fn size(&self) -> u64 {
        self.base.p * self.base.p
    }
    fn elements(&self) -> Vec<(u64, u64)> {
        let p = self.base.p;
        let mut out = Vec::with_capacity((p * p) as usize);
        for a in 0..p {
            for b in 0..p {
                out.push((a, b));
            }
        }
        out
    }
}

/// Univariate polynomial over F_p, ascending coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    pub coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(mut coeffs: Vec<u64>, f: &PrimeField) -> FpPoly {
        for c in coeffs.iter_mut() {
            *c %= f.p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn derivative(&self, f: &PrimeField) -> FpPoly {
        if self.coeffs.len() <= 1 {
            return FpPoly { coeffs: vec![] };
        }
        FpPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| c * ((i as u64 + 1) % f.p) % f.p)
                .collect(),
            f,
        )
    }

    pub fn rem(&self, div: &FpPoly, f: &PrimeField) -> FpPoly {
        let dd = div.degree().expect("division by zero polynomial");
        let lead_inv = f.inv(*div.coeffs.last().unwrap()).expect("unit leading");
        let mut rem = self.coeffs.clone();
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = rem[k] % f.p;
            if c != 0 {
                let factor = f.mul(c, lead_inv);
                let shift = k - dd;
                for (i, &dc) in div.coeffs.iter().enumerate() {
                    rem[shift + i] = f.sub(rem[shift + i], f.mul(factor, dc));
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        FpPoly { coeffs: rem }
    }

    pub fn gcd(&self, other: &FpPoly, f: &PrimeField) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        // monic normalization
        if let Some(&lead) = a.coeffs.last() {
            let li = f.inv(lead).unwrap();
            for c in a.coeffs.iter_mut() {
                *c = f.mul(*c, li);
            }
        }
        a
    }

    /// x^(p^e) mod self, by repeated squaring of x mod self.
    pub fn frobenius_power(&self, e: u32, f: &PrimeField) -> FpPoly {
        let mut acc = FpPoly::new(vec![0, 1], f); // x
        let d = self.degree().expect("modulus must be nonzero");
        assert!(d >= 1);
        let total_exp = (0..e).fold(1u128, |acc, _| acc * f.p as u128);
        // square-and-multiply on the exponent p^e
        let mut result = FpPoly::new(vec![1], f);
        let mut exp = total_exp;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul_mod(&acc, self, f);
            }
            acc = acc.mul_mod(&acc, self, f);
            exp >>= 1;
        }
        result
    }

    pub fn mul_mod(&self, other: &FpPoly, modulus: &FpPoly, f: &PrimeField) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly { coeffs: vec![] };
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % f.p;
            }
        }
        FpPoly::new(out, f).rem(modulus, f)
    }

    pub fn sub(&self, other: &FpPoly, f: &PrimeField) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] = c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            out[i] = f.sub(out[i], c);
        }
        FpPoly::new(out, f)
    }

    /// True iff every irreducible factor has degree dividing e (so all
    /// roots lie in F_{p^e}): gcd(x^(p^e) - x, self) = self.
    pub fn splits_within(&self, e: u32, f: &PrimeField) -> bool {
        let x = FpPoly::new(vec![0, 1], f);
        let frob = self.frobenius_power(e, f);
        let diff = frob.sub(&x, f);
        let g = diff.gcd(self, f);
        g.degree() == self.degree()
    }

    /// Squarefree and of the stated degree: the good-reduction test.
    pub fn is_squarefree(&self, f: &PrimeField) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(_) => {
                let d = self.derivative(f);
                if d.is_zero() {
                    return false;
                }
                self.gcd(&d, f).degree() == Some(0)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), Some(5));
        assert_eq!(f.inv(0), None);
        assert_eq!(f.sub(2, 5), 4);
    }

    #[test]
    fn quadratic_extension_arithmetic() {
        let f = QuadExtField::new(3).unwrap();
        assert_eq!(f.nonresidue, 2);
        let a = (1, 2);
        let ai = f.inv(a).unwrap();
        assert_eq!(f.mul(a, ai), f.one());
        assert_eq!(f.elements().len(), 9);
    }

    #[test]
    fn fp_poly_gcd_and_squarefree() {
        let f = PrimeField::new(5).unwrap();
        // (x+1)^2 (x+2) mod 5
        let sq = FpPoly::new(vec![2, 5, 4, 1], &f);
        assert!(!sq.is_squarefree(&f));
        let sf = FpPoly::new(vec![2, 3, 1], &f); // (x+1)(x+2)
        assert!(sf.is_squarefree(&f));
    }

    #[test]
    fn splitting_detection() {
        let f = PrimeField::new(3).unwrap();
        // x^2 + 1 is irreducible over F_3, splits over F_9
        let q = FpPoly::new(vec![1, 0, 1], &f);
        assert!(!q.splits_within(1, &f));
        assert!(q.splits_within(2, &f));
        // (x)(x+1) splits over F_3
        let lin = FpPoly::new(vec![0, 1, 1], &f);
        assert!(lin.splits_within(1, &f));
        // x^3 - x + 1 is irreducible of degree 3
        let cubic = FpPoly::new(vec![1, 2, 0, 1], &f);
        assert!(!cubic.splits_within(2, &f));
        assert!(cubic.splits_within(3, &f));
    }
}
