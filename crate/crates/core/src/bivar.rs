//! Sparse bivariate polynomials over F_p, indexed by (x-degree, y-degree).
//! Only nonzero coefficients are stored; the term map is ordered so equality
//! and iteration are deterministic.

use std::collections::BTreeMap;

use crate::field::{Fp, PrimeField};
use crate::poly::DensePoly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BivariatePoly {
    field: PrimeField,
    terms: BTreeMap<(u64, u64), u64>,
}

// Products are accumulated in a dense scratch grid keyed by bounded degrees;
// above this many grid cells we fall back to map accumulation.
const DENSE_SCRATCH_LIMIT: u64 = 1 << 24;

impl BivariatePoly {
    pub fn zero(field: PrimeField) -> Self {
        BivariatePoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::from_terms(field, [(0, 0, 1i64)])
    }

    /// Builds from (x-degree, y-degree, coefficient) triples, reducing mod p
    /// and accumulating repeated indices. Zero coefficients are dropped.
    pub fn from_terms<I>(field: PrimeField, terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, u64, i64)>,
    {
        let mut map = BTreeMap::new();
        for (i, j, c) in terms {
            let c = field.element(c).value();
            let slot = map.entry((i, j)).or_insert(0);
            *slot = field.add_raw(*slot, c);
        }
        map.retain(|_, &mut c| c != 0);
        BivariatePoly { field, terms: map }
    }

    /// Embeds a univariate polynomial at y-degree 0.
    pub fn lift(poly: &DensePoly) -> Self {
        let field = poly.field();
        let terms = poly
            .residues()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| ((i as u64, 0), c))
            .collect();
        BivariatePoly { field, terms }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of x^i y^j, zero when absent.
    pub fn coeff(&self, i: u64, j: u64) -> Fp {
        self.field
            .element_from_u64(self.terms.get(&(i, j)).copied().unwrap_or(0))
    }

    /// Nonzero terms in (x-degree, y-degree) order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, u64, u64)> + '_ {
        self.terms.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn max_degrees(&self) -> Option<(u64, u64)> {
        if self.terms.is_empty() {
            return None;
        }
        let mut dx = 0;
        let mut dy = 0;
        for &(i, j) in self.terms.keys() {
            dx = dx.max(i);
            dy = dy.max(j);
        }
        Some((dx, dy))
    }

    /// The coefficients of y^j as a univariate polynomial in x.
    pub fn univariate_slice(&self, j: u64) -> DensePoly {
        let mut coeffs = Vec::new();
        for (&(i, jj), &c) in &self.terms {
            if jj != j {
                continue;
            }
            let i = i as usize;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, 0);
            }
            coeffs[i] = c;
        }
        DensePoly::from_residues(self.field, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "polynomials over different fields");
        let (adx, ady) = match self.max_degrees() {
            Some(d) => d,
            None => return Self::zero(self.field),
        };
        let (bdx, bdy) = match other.max_degrees() {
            Some(d) => d,
            None => return Self::zero(self.field),
        };
        let xdim = adx + bdx + 1;
        let ydim = ady + bdy + 1;
        if xdim
            .checked_mul(ydim)
            .is_some_and(|n| n <= DENSE_SCRATCH_LIMIT)
        {
            self.mul_dense_scratch(other, xdim, ydim)
        } else {
            self.mul_map(other)
        }
    }

    fn mul_dense_scratch(&self, other: &Self, xdim: u64, ydim: u64) -> Self {
        let p = self.field.modulus();
        let mut grid = vec![0u64; (xdim * ydim) as usize];
        for (&(ai, aj), &ac) in &self.terms {
            for (&(bi, bj), &bc) in &other.terms {
                let idx = ((ai + bi) * ydim + (aj + bj)) as usize;
                grid[idx] = (grid[idx] + ac * bc) % p;
            }
        }
        let mut terms = BTreeMap::new();
        for (idx, &c) in grid.iter().enumerate() {
            if c != 0 {
                let idx = idx as u64;
                terms.insert((idx / ydim, idx % ydim), c);
            }
        }
        BivariatePoly {
            field: self.field,
            terms,
        }
    }

    fn mul_map(&self, other: &Self) -> Self {
        let p = self.field.modulus();
        let mut terms: BTreeMap<(u64, u64), u64> = BTreeMap::new();
        for (&(ai, aj), &ac) in &self.terms {
            for (&(bi, bj), &bc) in &other.terms {
                let slot = terms.entry((ai + bi, aj + bj)).or_insert(0);
                *slot = (*slot + ac * bc) % p;
            }
        }
        terms.retain(|_, &mut c| c != 0);
        BivariatePoly {
            field: self.field,
            terms,
        }
    }

    /// Binary exponentiation over the sparse representation.
    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}
