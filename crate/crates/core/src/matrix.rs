//! 3x3 matrices over F_p with an explicit convention tag. Row/column
//! conventions between the two matrix roles differ by a transpose, so the
//! tag travels with the entries to keep the paths honest.

use std::fmt;

use crate::field::{Fp, PrimeField};

/// How the 3x3 entries are laid out with respect to the differential basis.
///
/// * `HasseWitt`: row i lists the coordinates of the image of basis element
///   z_i (the layout used for the coefficient table read off the expansion).
/// * `Cartier`: column j holds the coordinates of the image of z_j, i.e. the
///   matrix that acts on coordinate columns. Over F_p it is the transpose of
///   the Hasse-Witt layout.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Convention {
    HasseWitt,
    Cartier,
}

impl Convention {
    pub fn label(&self) -> &'static str {
        match self {
            Convention::HasseWitt => "hasse_witt",
            Convention::Cartier => "cartier",
        }
    }

    pub fn transposed(&self) -> Convention {
        match self {
            Convention::HasseWitt => Convention::Cartier,
            Convention::Cartier => Convention::HasseWitt,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixFp {
    field: PrimeField,
    convention: Convention,
    entries: [[u64; 3]; 3],
}

impl MatrixFp {
    pub fn new(field: PrimeField, convention: Convention, entries: [[i64; 3]; 3]) -> Self {
        let entries = entries.map(|row| row.map(|c| field.element(c).value()));
        MatrixFp {
            field,
            convention,
            entries,
        }
    }

    pub(crate) fn from_residues(
        field: PrimeField,
        convention: Convention,
        entries: [[u64; 3]; 3],
    ) -> Self {
        debug_assert!(entries
            .iter()
            .all(|row| row.iter().all(|&c| c < field.modulus())));
        MatrixFp {
            field,
            convention,
            entries,
        }
    }

    pub fn zero(field: PrimeField, convention: Convention) -> Self {
        MatrixFp {
            field,
            convention,
            entries: [[0; 3]; 3],
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn entry(&self, row: usize, col: usize) -> Fp {
        self.field.element_from_u64(self.entries[row][col])
    }

    /// Canonical residues, row major.
    pub fn entries(&self) -> [[u64; 3]; 3] {
        self.entries
    }

    /// Transposes the entries and flips the convention tag, since the two
    /// layouts are transposes of each other.
    pub fn transpose(&self) -> Self {
        let mut out = [[0u64; 3]; 3];
        for (r, row) in self.entries.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                out[c][r] = v;
            }
        }
        MatrixFp {
            field: self.field,
            convention: self.convention.transposed(),
            entries: out,
        }
    }

    #[allow(clippy::needless_range_loop)]
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "matrices over different fields");
        let f = self.field;
        let mut out = [[0u64; 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                let mut acc = 0u64;
                for k in 0..3 {
                    acc = f.add_raw(acc, f.mul_raw(self.entries[r][k], other.entries[k][c]));
                }
                out[r][c] = acc;
            }
        }
        MatrixFp {
            field: f,
            convention: self.convention,
            entries: out,
        }
    }

    /// Entrywise p-th power. On prime-field entries this is the identity map;
    /// it is spelled out so the stable-rank product below matches its
    /// semilinear definition.
    pub fn frobenius_twist(&self) -> Self {
        let p = self.field.modulus();
        let entries = self
            .entries
            .map(|row| row.map(|c| self.field.pow_raw(c, p)));
        MatrixFp {
            field: self.field,
            convention: self.convention,
            entries,
        }
    }

    /// Rank over F_p by Gaussian elimination with exact arithmetic.
    #[allow(clippy::needless_range_loop)]
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut m = self.entries;
        let mut rank = 0;
        for col in 0..3 {
            let pivot = (rank..3).find(|&r| m[r][col] != 0);
            let Some(pivot) = pivot else { continue };
            m.swap(rank, pivot);
            let inv = f.inv_raw(m[rank][col]).expect("pivot is nonzero by choice");
            for r in (rank + 1)..3 {
                if m[r][col] == 0 {
                    continue;
                }
                let factor = f.mul_raw(m[r][col], inv);
                for c in col..3 {
                    let t = f.mul_raw(factor, m[rank][c]);
                    m[r][c] = f.sub_raw(m[r][c], t);
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Display for MatrixFp {
    /// Rows as space-separated residues, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.entries.iter().enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            write!(f, "{} {} {}", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rank_examples() {
        let h5 = MatrixFp::new(
            f(5),
            Convention::HasseWitt,
            [[0, 0, 1], [0, 0, 0], [3, 0, 0]],
        );
        assert_eq!(h5.rank(), 2);
        let h13 = MatrixFp::new(
            f(13),
            Convention::HasseWitt,
            [[4, 0, 0], [0, 2, 0], [0, 0, 4]],
        );
        assert_eq!(h13.rank(), 3);
        assert_eq!(MatrixFp::zero(f(5), Convention::HasseWitt).rank(), 0);
    }

    #[test]
    fn transpose_flips_convention() {
        let h = MatrixFp::new(
            f(5),
            Convention::HasseWitt,
            [[0, 0, 1], [0, 0, 0], [3, 0, 0]],
        );
        let c = h.transpose();
        assert_eq!(c.convention(), Convention::Cartier);
        assert_eq!(c.entries(), [[0, 0, 3], [0, 0, 0], [1, 0, 0]]);
        assert_eq!(c.transpose(), h);
    }

    #[test]
    fn matmul_against_hand_computation() {
        let h = MatrixFp::new(
            f(5),
            Convention::HasseWitt,
            [[0, 0, 1], [0, 0, 0], [3, 0, 0]],
        );
        let h2 = h.matmul(&h);
        assert_eq!(h2.entries(), [[3, 0, 0], [0, 0, 0], [0, 0, 3]]);
        let h3 = h2.matmul(&h);
        assert_eq!(h3.entries(), [[0, 0, 3], [0, 0, 0], [4, 0, 0]]);
        assert_eq!(h3.rank(), 2);
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(
            entries in proptest::collection::vec(0i64..13, 9),
        ) {
            let fp = f(13);
            let e = [
                [entries[0], entries[1], entries[2]],
                [entries[3], entries[4], entries[5]],
                [entries[6], entries[7], entries[8]],
            ];
            let m = MatrixFp::new(fp, Convention::HasseWitt, e);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        // The entrywise p-th power fixes every prime-field matrix.
        #[test]
        fn frobenius_twist_is_identity_on_prime_field(
            p_idx in 0usize..3,
            entries in proptest::collection::vec(0i64..1000, 9),
        ) {
            let fp = f([5u64, 13, 97][p_idx]);
            let e = [
                [entries[0], entries[1], entries[2]],
                [entries[3], entries[4], entries[5]],
                [entries[6], entries[7], entries[8]],
            ];
            let m = MatrixFp::new(fp, Convention::HasseWitt, e);
            prop_assert_eq!(m.frobenius_twist(), m.clone());
        }
    }
}
