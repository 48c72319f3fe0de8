//! Dense univariate polynomials over F_p. Coefficients are canonical
//! residues indexed by x-degree; the zero polynomial is the empty sequence,
//! so `degree()` is `None` rather than an integer sentinel.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DensePoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl DensePoly {
    /// Builds a polynomial from integer coefficients (index = x-degree),
    /// reducing mod p and trimming trailing zeros.
    pub fn new(field: PrimeField, coeffs: &[i64]) -> Self {
        let reduced: Vec<u64> = coeffs.iter().map(|&c| field.element(c).value()).collect();
        Self::from_residues(field, reduced)
    }

    pub(crate) fn from_residues(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < field.modulus()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        DensePoly { field, coeffs }
    }

    pub fn zero(field: PrimeField) -> Self {
        DensePoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        DensePoly {
            field,
            coeffs: vec![1],
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of x^i, zero when out of range.
    pub fn coeff(&self, i: usize) -> Fp {
        self.field
            .element_from_u64(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub(crate) fn coeff_raw(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub(crate) fn residues(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<Fp> {
        self.coeffs.last().map(|&c| self.field.element_from_u64(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "polynomials over different fields");
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.field.add_raw(self.coeff_raw(i), other.coeff_raw(i)));
        }
        Self::from_residues(self.field, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "polynomials over different fields");
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.field.sub_raw(self.coeff_raw(i), other.coeff_raw(i)));
        }
        Self::from_residues(self.field, out)
    }

    pub fn scale(&self, c: Fp) -> Self {
        assert_eq!(self.field, c.field(), "scalar from a different field");
        let out = self
            .coeffs
            .iter()
            .map(|&a| self.field.mul_raw(a, c.value()))
            .collect();
        Self::from_residues(self.field, out)
    }

    /// Schoolbook product. `max_degree`, when given, drops every coefficient
    /// of x-degree above the bound.
    pub fn mul_bounded(&self, other: &Self, max_degree: Option<usize>) -> Self {
        assert_eq!(self.field, other.field, "polynomials over different fields");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let full = self.coeffs.len() + other.coeffs.len() - 2;
        let out_deg = match max_degree {
            Some(n) => full.min(n),
            None => full,
        };
        let p = self.field.modulus();
        let mut out = vec![0u64; out_deg + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 || i > out_deg {
                continue;
            }
            let jmax = (out_deg - i).min(other.coeffs.len() - 1);
            for (j, &b) in other.coeffs[..=jmax].iter().enumerate() {
                // a, b < 2^31 and out[i+j] < p, so the sum stays below 2^63.
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        Self::from_residues(self.field, out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_bounded(other, None)
    }

    /// Binary exponentiation, truncating after every multiplication when a
    /// degree bound is given, so intermediates never exceed twice the bound.
    pub fn pow_bounded(&self, e: u64, max_degree: Option<usize>) -> Self {
        let mut acc = Self::one(self.field);
        if let Some(n) = max_degree {
            acc = Self::from_residues(self.field, acc.coeffs.into_iter().take(n + 1).collect());
        }
        let mut base = match max_degree {
            Some(n) => Self::from_residues(
                self.field,
                self.coeffs.iter().copied().take(n + 1).collect(),
            ),
            None => self.clone(),
        };
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_bounded(&base, max_degree);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_bounded(&base, max_degree);
            }
        }
        acc
    }

    pub fn pow(&self, e: u64) -> Self {
        self.pow_bounded(e, None)
    }

    /// Formal derivative; x-degrees divisible by p annihilate.
    pub fn derivative(&self) -> Self {
        let p = self.field.modulus();
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.field.mul_raw((i as u64) % p, c))
            .collect();
        Self::from_residues(self.field, out)
    }

    pub fn monic(&self) -> Result<Self> {
        let lead = self.leading_coeff().ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(lead.inv()?))
    }

    /// Remainder of `self` by a nonzero divisor.
    fn rem(&self, divisor: &Self) -> Self {
        let d_deg = divisor.degree().expect("division by zero polynomial");
        let d_lead_inv = self
            .field
            .inv_raw(divisor.coeff_raw(d_deg))
            .expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        while r.len() > d_deg {
            let lead = *r.last().unwrap();
            if lead != 0 {
                let q = self.field.mul_raw(lead, d_lead_inv);
                let shift = r.len() - 1 - d_deg;
                for (j, &b) in divisor.coeffs.iter().enumerate() {
                    let t = self.field.mul_raw(q, b);
                    r[shift + j] = self.field.sub_raw(r[shift + j], t);
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        Self::from_residues(self.field, r)
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(a: &Self, b: &Self) -> Result<Self> {
        assert_eq!(a.field, b.field, "polynomials over different fields");
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    /// A nonzero polynomial is squarefree iff gcd(f, f') is constant.
    /// A vanishing derivative means f is a p-th power, hence not squarefree
    /// unless f is a constant.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(true);
        }
        let d = self.derivative();
        if d.is_zero() {
            return Ok(false);
        }
        Ok(Self::gcd(self, &d)?.degree() == Some(0))
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "x")?,
                1 => write!(f, "{c}*x")?,
                _ if c == 1 => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}
