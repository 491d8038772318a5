//! Univariate rational polynomials and homogeneous binary forms.
//!
//! Binary forms of degree d store d+1 coefficients with the coefficient of
//! s^(d-i) t^i at index i. Most computations dehomogenize into the chart
//! t = 1 and track the multiplicity of the root `[1:0]` separately.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mat::{Mat, SymMat};
use super::rat::{rat, Rat};
use crate::Error;

/// Dense univariate polynomial, coefficients ascending by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    pub coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat(i as i64 + 1))
                .collect(),
        )
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        UniPoly::new(out)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, s: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn div_rem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let lead = div.leading();
        let mut rem = self.clone();
        let mut quo = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let f = rem.leading() / &lead;
            let shift = dr - dd;
            quo[shift] = f.clone();
            for (i, c) in div.coeffs.iter().enumerate() {
                let d = c * &f;
                rem.coeffs[shift + i] -= d;
            }
            rem = UniPoly::new(rem.coeffs);
        }
        (UniPoly::new(quo), rem)
    }

    /// Divides by the rational content and makes the leading coefficient
    /// positive. Returns the zero polynomial unchanged.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let scale = Rat::new(den_lcm, num_gcd);
        let p = self.scale(&scale);
        if p.leading().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// Monic gcd via the Euclidean algorithm with content normalization.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    /// Distinct squarefree factors by Yun's algorithm:
    /// `self = lc * prod factors[i].1 ^ factors[i].0` with each factor
    /// squarefree, pairwise coprime, returned with its multiplicity.
    pub fn squarefree_decomposition(&self) -> Vec<(usize, UniPoly)> {
        if self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let f = self.primitive();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut mult = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((mult, a.clone()));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            mult += 1;
        }
        out
    }
}

/// Homogeneous binary form of fixed degree in (s, t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    /// `coeffs[i]` multiplies s^(degree-i) t^i; length = degree + 1.
    pub coeffs: Vec<Rat>,
    pub degree: usize,
}

impl BinaryForm {
    pub fn new(degree: usize, coeffs: Vec<Rat>) -> Result<Self, Error> {
        if coeffs.len() != degree + 1 {
            return Err(Error::Shape(format!(
                "binary form of degree {degree} needs {} coefficients, got {}",
                degree + 1,
                coeffs.len()
            )));
        }
        Ok(BinaryForm { coeffs, degree })
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        BinaryForm {
            degree: coeffs.len() - 1,
            coeffs: coeffs.iter().map(|&c| rat(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, s: &Rat, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        let mut s_pow = vec![rat(1)];
        let mut t_pow = vec![rat(1)];
        for _ in 0..self.degree {
            s_pow.push(s_pow.last().unwrap() * s);
            t_pow.push(t_pow.last().unwrap() * t);
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * &s_pow[self.degree - i] * &t_pow[i];
            }
        }
        acc
    }

    /// Chart t = 1: polynomial in x = s/t. Coefficient of x^j is coeffs[d-j].
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Multiplicity of the root `[1:0]`, i.e. the power of t dividing the form.
    pub fn infinity_multiplicity(&self) -> usize {
        if self.is_zero() {
            return self.degree + 1;
        }
        let d = self.dehomogenize().degree().unwrap();
        self.degree - d
    }

    /// Homogenizes `p` back to the given total degree (multiplying by the
    /// appropriate power of t).
    pub fn homogenize(p: &UniPoly, degree: usize) -> BinaryForm {
        let d = p.degree().expect("cannot homogenize the zero polynomial");
        assert!(d <= degree);
        let mut coeffs = vec![Rat::zero(); degree + 1];
        for (j, c) in p.coeffs.iter().enumerate() {
            coeffs[degree - j] = c.clone();
        }
        BinaryForm { coeffs, degree }
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let degree = self.degree + other.degree;
        let mut coeffs = vec![Rat::zero(); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        BinaryForm { coeffs, degree }
    }

    /// Content-1, positive-leading-coefficient normalization. The leading
    /// coefficient is the first nonzero one in lexicographic monomial order
    /// (highest power of s).
    pub fn normalized(&self) -> BinaryForm {
        if self.is_zero() {
            return self.clone();
        }
        let dehom = self.dehomogenize().primitive();
        // primitive() normalizes the sign of the highest x-power, which is
        // the highest s-power here.
        BinaryForm::homogenize(&dehom, self.degree)
    }
}

impl std::fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", super::rat::rat_to_string(c))?;
            let (es, et) = (self.degree - i, i);
            if es > 0 {
                write!(f, "*s^{es}")?;
            }
            if et > 0 {
                write!(f, "*t^{et}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// det(s*A + t*B) as a binary form of degree n, by exact interpolation at
/// `[1:0]`, `[0:1]`, and n-1 finite points.
pub fn binary_det(a: &SymMat, b: &SymMat) -> Result<BinaryForm, Error> {
    if a.dim() != b.dim() {
        return Err(Error::Shape("pencil matrices differ in dimension".into()));
    }
    let n = a.dim();
    if n == 0 {
        return BinaryForm::new(0, vec![rat(1)]);
    }
    // Unknowns c_0..c_n with Delta(s,t) = sum c_i s^(n-i) t^i.
    // Row for [1:0] pins c_0 = det(A); row for [0:1] pins c_n = det(B);
    // evaluation at (x,1) gives sum c_i x^(n-i).
    let mut rows = Vec::with_capacity(n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    let mut row0 = vec![Rat::zero(); n + 1];
    row0[0] = rat(1);
    rows.push(row0);
    rhs.push(a.mat().det());
    let mut row_inf = vec![Rat::zero(); n + 1];
    row_inf[n] = rat(1);
    rows.push(row_inf);
    rhs.push(b.mat().det());
    for k in 1..n {
        let x = rat(k as i64);
        let mut row = vec![Rat::zero(); n + 1];
        let mut pow = rat(1);
        for i in (0..=n).rev() {
            row[i] = pow.clone();
            pow *= &x;
        }
        rows.push(row);
        rhs.push(a.pencil_at(b, &x, &rat(1)).mat().det());
    }
    // Solve the (n+1)x(n+1) system exactly.
    let mut aug = Mat::new(rows);
    for (i, v) in rhs.into_iter().enumerate() {
        aug.rows[i].push(v);
    }
    let (r, pivots) = aug.rref();
    debug_assert_eq!(pivots.len(), n + 1);
    let coeffs: Vec<Rat> = (0..=n).map(|i| r.rows[i][n + 1].clone()).collect();
    BinaryForm::new(n, coeffs)
}

/// True iff the form has no repeated factor (over the algebraic closure):
/// the dehomogenization is coprime with its derivative and `[1:0]` is at most
/// a simple root.
pub fn is_squarefree(f: &BinaryForm) -> Result<bool, Error> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if f.infinity_multiplicity() > 1 {
        return Ok(false);
    }
    let p = f.dehomogenize();
    if p.degree().unwrap_or(0) == 0 {
        return Ok(true);
    }
    Ok(p.gcd(&p.derivative()).degree() == Some(0))
}

/// Radical of a binary form: the product of its distinct irreducible
/// factors, with content 1 and positive leading coefficient.
pub fn squarefree_part(f: &BinaryForm) -> Result<BinaryForm, Error> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let inf = f.infinity_multiplicity().min(1);
    let p = f.dehomogenize();
    let rad = if p.degree().unwrap_or(0) == 0 {
        UniPoly::constant(rat(1))
    } else {
        p.div_rem(&p.gcd(&p.derivative())).0.primitive()
    };
    let d = rad.degree().unwrap() + inf;
    Ok(BinaryForm::homogenize(&rad, d))
}

/// Product of the repeated factors with their multiplicities: the part of
/// the form witnessing failure of squarefreeness. Constant (degree 0) iff
/// the form is squarefree.
pub fn repeated_part(f: &BinaryForm) -> Result<BinaryForm, Error> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let inf = f.infinity_multiplicity();
    let p = f.dehomogenize();
    let mut acc = UniPoly::constant(rat(1));
    if p.degree().unwrap_or(0) > 0 {
        for (mult, factor) in p.squarefree_decomposition() {
            if mult >= 2 {
                let mut pw = UniPoly::constant(rat(1));
                for _ in 0..mult {
                    pw = pw.mul(&factor);
                }
                acc = acc.mul(&pw);
            }
        }
    }
    let inf_part = if inf >= 2 { inf } else { 0 };
    let d = acc.degree().unwrap() + inf_part;
    Ok(BinaryForm::homogenize(&acc.primitive(), d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::ratio;

    fn form_mul(parts: &[&[i64]]) -> BinaryForm {
        let mut acc = BinaryForm::from_i64(&[1]);
        for p in parts {
            acc = acc.mul(&BinaryForm::from_i64(p));
        }
        acc
    }

    #[test]
    fn poly_div_rem_and_gcd() {
        let a = UniPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = UniPoly::from_i64(&[1, 1]); // x + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, UniPoly::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&b), b.primitive());
    }

    #[test]
    fn yun_decomposition() {
        // (x+1)^2 (x-1)
        let f = UniPoly::from_i64(&[1, 1])
            .mul(&UniPoly::from_i64(&[1, 1]))
            .mul(&UniPoly::from_i64(&[-1, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (1, UniPoly::from_i64(&[-1, 1])));
        assert_eq!(dec[1], (2, UniPoly::from_i64(&[1, 1])));
    }

    #[test]
    fn binary_det_diagonal_product() {
        let a = SymMat::identity(3);
        let b = SymMat::diagonal_i64(&[1, 2, 3]);
        let det = binary_det(&a, &b).unwrap();
        // (s+t)(s+2t)(s+3t) = s^3 + 6 s^2 t + 11 s t^2 + 6 t^3
        assert_eq!(det, BinaryForm::from_i64(&[1, 6, 11, 6]));
    }

    #[test]
    fn binary_det_degenerate_second_form() {
        let a = SymMat::identity(2);
        let b = SymMat::zero(2);
        assert_eq!(
            binary_det(&a, &b).unwrap(),
            BinaryForm::from_i64(&[1, 0, 0])
        );
    }

    #[test]
    fn binary_det_hyperbolic_times_identity() {
        // det(s*[[0,1],[1,0]] + t*I) = t^2 - s^2, worked by hand from the
        // 2x2 expansion det [[t, s],[s, t]].
        let a = SymMat::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        let b = SymMat::identity(2);
        assert_eq!(
            binary_det(&a, &b).unwrap(),
            BinaryForm::from_i64(&[-1, 0, 1])
        );
    }

    #[test]
    fn binary_det_specializes_to_direct_det() {
        let a = SymMat::from_i64(&[&[2, 1, 0], &[1, -1, 3], &[0, 3, 5]]).unwrap();
        let b = SymMat::from_i64(&[&[0, 2, 2], &[2, 4, -1], &[2, -1, 1]]).unwrap();
        let form = binary_det(&a, &b).unwrap();
        for (s, t) in [
            (ratio(1, 2), rat(3)),
            (rat(-2), ratio(5, 7)),
            (rat(9), rat(1)),
        ] {
            assert_eq!(form.eval(&s, &t), a.pencil_at(&b, &s, &t).mat().det());
        }
    }

    #[test]
    fn squarefree_detection() {
        let good = form_mul(&[&[1, 1], &[1, 2], &[1, 3]]);
        assert!(is_squarefree(&good).unwrap());
        // s^2 t
        let st2 = BinaryForm::from_i64(&[0, 1, 0, 0]);
        assert_eq!(st2.to_string(), "1*s^2*t^1");
        assert!(!is_squarefree(&st2).unwrap());
        // s^2 + t^2: no real roots, still squarefree
        assert!(is_squarefree(&BinaryForm::from_i64(&[1, 0, 1])).unwrap());
        // t^2 s: repeated root at infinity
        assert!(!is_squarefree(&BinaryForm::from_i64(&[0, 0, 1, 0])).unwrap());
        assert!(is_squarefree(&BinaryForm::from_i64(&[0, 0])).is_err());
    }

    #[test]
    fn squarefree_part_examples() {
        // s^2 t -> s t
        let f = BinaryForm::from_i64(&[0, 1, 0, 0]);
        assert_eq!(
            squarefree_part(&f).unwrap(),
            BinaryForm::from_i64(&[0, 1, 0])
        );
        // squarefree stays itself up to content/sign normalization
        let g = form_mul(&[&[2, 2], &[1, 3]]);
        assert_eq!(squarefree_part(&g).unwrap(), form_mul(&[&[1, 1], &[1, 3]]));
        // (s+t)^2 (s-t) -> (s+t)(s-t)
        let h = form_mul(&[&[1, 1], &[1, 1], &[1, -1]]);
        assert_eq!(squarefree_part(&h).unwrap(), form_mul(&[&[1, 1], &[1, -1]]));
    }

    #[test]
    fn repeated_part_witness() {
        // (s+t)^2 (s+2t): witness (s+t)^2
        let f = form_mul(&[&[1, 1], &[1, 1], &[1, 2]]);
        let w = repeated_part(&f).unwrap();
        assert_eq!(w, form_mul(&[&[1, 1], &[1, 1]]));
        let clean = form_mul(&[&[1, 1], &[1, 2]]);
        assert_eq!(repeated_part(&clean).unwrap().degree, 0);
    }

    #[test]
    fn squarefree_iff_radical_has_full_degree() {
        for f in [
            form_mul(&[&[1, 1], &[1, 2], &[1, 3]]),
            BinaryForm::from_i64(&[0, 1, 0, 0]),
            BinaryForm::from_i64(&[1, 0, 1]),
            form_mul(&[&[1, 1], &[1, 1], &[1, -1]]),
        ] {
            let sf = is_squarefree(&f).unwrap();
            let rad = squarefree_part(&f).unwrap();
            assert_eq!(sf, rad.degree == f.degree);
        }
    }
}
