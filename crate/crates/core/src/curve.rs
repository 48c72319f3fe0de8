//! Validated Picard curves y^3 = f(x) with deg f = 4 and f squarefree,
//! over a prime field of characteristic p > 3. Such a curve has genus 3.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::DensePoly;

/// Genus of every curve this crate accepts.
pub const GENUS: usize = 3;

/// Ordered labels of the holomorphic differential basis used for every
/// matrix this crate emits: z1 = dx/y^2, z2 = x dx/y^2, z3 = dx/y.
/// The order is fixed and not user-configurable.
pub const DIFFERENTIAL_BASIS: [&str; 3] = ["dx/y^2", "x dx/y^2", "dx/y"];

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PicardCurve {
    field: PrimeField,
    quartic: DensePoly,
}

impl PicardCurve {
    /// Validates (p, f): p must be a prime > 3, and f must reduce to a
    /// squarefree polynomial of degree exactly 4 mod p. Coefficients are
    /// arbitrary integers, constant term first.
    pub fn new(p: u64, f_coeffs: &[i64]) -> Result<Self> {
        let field = PrimeField::new(p)?;
        Self::from_poly(field, DensePoly::new(field, f_coeffs))
    }

    pub fn from_poly(field: PrimeField, quartic: DensePoly) -> Result<Self> {
        assert_eq!(field, quartic.field(), "polynomial over a different field");
        let p = field.modulus();
        if quartic.degree() != Some(4) {
            return Err(Error::DegenerateCurve { p });
        }
        if !quartic.is_squarefree()? {
            return Err(Error::SingularCurve { p });
        }
        Ok(PicardCurve { field, quartic })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.modulus()
    }

    /// The defining quartic f(x).
    pub fn quartic(&self) -> &DensePoly {
        &self.quartic
    }

    pub fn genus(&self) -> usize {
        GENUS
    }
}
