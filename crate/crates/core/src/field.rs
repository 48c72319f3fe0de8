//! Prime fields F_p for odd primes p > 3, with exact arithmetic on
//! canonical residues in [0, p).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest supported modulus is 2^31 - 1, so products of residues fit in u64.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

/// A prime field F_p, p an odd prime with 3 < p < 2^31.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Validates that `p` is a prime in (3, 2^31) and returns the field.
    pub fn new(p: u64) -> Result<Self> {
        if p <= 3 || p > MAX_MODULUS || !is_prime(p) {
            return Err(Error::InvalidField { p });
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces an arbitrary integer to its canonical residue.
    pub fn element(&self, v: i64) -> Fp {
        let p = self.p as i64;
        let r = ((v % p) + p) % p;
        Fp {
            value: r as u64,
            field: *self,
        }
    }

    pub fn element_from_u64(&self, v: u64) -> Fp {
        Fp {
            value: v % self.p,
            field: *self,
        }
    }

    pub fn zero(&self) -> Fp {
        Fp {
            value: 0,
            field: *self,
        }
    }

    pub fn one(&self) -> Fp {
        Fp {
            value: 1,
            field: *self,
        }
    }

    // Raw residue arithmetic. Operands must already be canonical; every
    // result is canonical. These back both `Fp` and the polynomial types.

    #[inline]
    pub(crate) fn add_raw(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        // a, b < 2^31 so the product fits in u64.
        (a * b) % self.p
    }

    /// Binary exponentiation; 0^0 = 1.
    pub(crate) fn pow_raw(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn inv_raw(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        // Fermat: a^(p-2) inverts a for prime p.
        Ok(self.pow_raw(a, self.p - 2))
    }
}

/// An element of F_p in canonical form, tagged with its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    value: u64,
    field: PrimeField,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, e: u64) -> Fp {
        Fp {
            value: self.field.pow_raw(self.value, e),
            field: self.field,
        }
    }

    /// Multiplicative inverse; `Err(DivisionByZero)` for zero.
    pub fn inv(&self) -> Result<Fp> {
        Ok(Fp {
            value: self.field.inv_raw(self.value)?,
            field: self.field,
        })
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// Mixing elements of distinct fields is a caller bug, not a recoverable
// condition, so the operators panic on mismatched moduli.
macro_rules! check_same_field {
    ($a:expr, $b:expr) => {
        assert_eq!(
            $a.field.p, $b.field.p,
            "field elements from different prime fields"
        );
    };
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        check_same_field!(self, rhs);
        Fp {
            value: self.field.add_raw(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        check_same_field!(self, rhs);
        Fp {
            value: self.field.sub_raw(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        check_same_field!(self, rhs);
        Fp {
            value: self.field.mul_raw(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: self.field.neg_raw(self.value),
            field: self.field,
        }
    }
}

/// Deterministic Miller-Rabin, exact for all u64 with the fixed witness set.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        e >>= 1;
    }
    acc
}
