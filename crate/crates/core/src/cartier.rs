//! The three computation paths for the 3x3 matrix of the Cartier operator
//! on a Picard curve, plus the scalar invariants derived from it.
//!
//! * [`hasse_witt_fast`] reads the matrix off truncated powers of the
//!   defining quartic, one coefficient table per residue of p mod 3.
//! * [`hasse_witt_oracle`] expands (y^3 - f)^{p-1} as a sparse bivariate
//!   polynomial and reads the nine indexed coefficients. It is slow and
//!   exists to check the other two paths.
//! * [`cartier_matrix`] applies the operator to each basis differential
//!   directly: rewrite the basis element through powers of f, expand, and
//!   map monomials termwise. It must equal the transpose of the fast path.
//!
//! All three agree entrywise because the matrix entries are p-th roots of
//! coefficients that live in the prime field, where the root is the
//! identity map.

use crate::bivar::BivariatePoly;
use crate::curve::{PicardCurve, GENUS};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{Convention, MatrixFp};

/// Default prime cutoff for the bivariate expansion. The expansion of
/// (y^3 - f)^{p-1} carries O(p^2) terms, so the oracle is kept to desk
/// scale unless the caller raises the bound explicitly.
pub const DEFAULT_ORACLE_BOUND: u64 = 101;

/// Image of the differential x^j dx under the Cartier operator: zero unless
/// p divides j + 1, in which case x^j dx maps to x^{s-1} dx for j + 1 = p s.
/// Returns `Some(s - 1)` in the second case.
pub fn cartier_monomial_rule(j: u64, field: PrimeField) -> Option<u64> {
    let p = field.modulus();
    if (j + 1).is_multiple_of(p) {
        Some((j + 1) / p - 1)
    } else {
        None
    }
}

/// Index rule of the (p-1)-fold mixed partial derivative in both variables:
/// it keeps exactly the monomials x^{ip+p-1} y^{jp+p-1} and sends each to
/// x^{ip} y^{jp}, scaled by a unit that cancels in the matrix entries.
pub struct MixedPartialRule;

impl MixedPartialRule {
    /// Source index whose coefficient lands on output block (i, j).
    pub fn source_index(block_x: u64, block_y: u64, p: u64) -> (u64, u64) {
        (block_x * p + p - 1, block_y * p + p - 1)
    }

    /// Block (i, j) receiving the coefficient at (src_x, src_y), if any.
    pub fn output_block(src_x: u64, src_y: u64, p: u64) -> Option<(u64, u64)> {
        if src_x % p == p - 1 && src_y % p == p - 1 {
            Some((src_x / p, src_y / p))
        } else {
            None
        }
    }

    /// Applies the rule to a whole polynomial: the surviving coefficient at
    /// (ip+p-1, jp+p-1) reappears on the monomial x^{ip} y^{jp}.
    pub fn apply(g: &BivariatePoly) -> BivariatePoly {
        let p = g.field().modulus();
        BivariatePoly::from_terms(
            g.field(),
            g.terms().filter_map(|(i, j, c)| {
                Self::output_block(i, j, p).map(|(bi, bj)| (bi * p, bj * p, c as i64))
            }),
        )
    }
}

/// x^a y^b numerator shifts of the basis z1 = dx/y^2, z2 = x dx/y^2,
/// z3 = dx/y, once the common factor dx/(3 y^2) is pulled out.
const BASIS_SHIFTS: [(u64, u64); 3] = [(0, 0), (1, 0), (0, 1)];

/// The defining surface polynomial F = y^3 - f(x).
pub fn surface_polynomial(curve: &PicardCurve) -> BivariatePoly {
    let field = curve.field();
    let mut terms: Vec<(u64, u64, i64)> = vec![(0, 3, 1)];
    for (i, &c) in curve.quartic().residues().iter().enumerate() {
        if c != 0 {
            terms.push((i as u64, 0, -(c as i64)));
        }
    }
    BivariatePoly::from_terms(field, terms)
}

/// Fast path: the matrix entries are coefficients of powers of f alone.
///
/// Expanding (y^3 - f)^{p-1} binomially, the y^{3k} block carries the
/// scalar C(p-1, k) (-1)^{p-1-k} = 1 mod p, so each needed bivariate
/// coefficient equals a plain coefficient of f^e for the matching exponent
/// e. Which entries can be nonzero depends only on p mod 3.
pub fn hasse_witt_fast(curve: &PicardCurve) -> MatrixFp {
    let field = curve.field();
    let p = field.modulus();
    let f = curve.quartic();
    let trunc = Some((2 * p - 1) as usize);
    let mut m = [[0u64; 3]; 3];
    match p % 3 {
        1 => {
            let g = f.pow_bounded((2 * p - 2) / 3, trunc);
            let h = f.pow_bounded((p - 1) / 3, trunc);
            m[0][0] = g.coeff_raw((p - 1) as usize);
            m[0][1] = g.coeff_raw((2 * p - 1) as usize);
            m[1][0] = g.coeff_raw((p - 2) as usize);
            m[1][1] = g.coeff_raw((2 * p - 2) as usize);
            m[2][2] = h.coeff_raw((p - 1) as usize);
        }
        2 => {
            let g = f.pow_bounded((p - 2) / 3, trunc);
            let h = f.pow_bounded((2 * p - 1) / 3, trunc);
            m[0][2] = g.coeff_raw((p - 1) as usize);
            m[1][2] = g.coeff_raw((p - 2) as usize);
            m[2][0] = h.coeff_raw((p - 1) as usize);
            m[2][1] = h.coeff_raw((2 * p - 1) as usize);
        }
        _ => unreachable!("characteristic divisible by 3 is rejected at validation"),
    }
    MatrixFp::from_residues(field, Convention::HasseWitt, m)
}

/// Oracle path with the default prime cutoff.
pub fn hasse_witt_oracle(curve: &PicardCurve) -> Result<MatrixFp> {
    hasse_witt_oracle_bounded(curve, DEFAULT_ORACLE_BOUND)
}

/// Oracle path: expand F^{p-1} for F = y^3 - f and read the coefficient at
/// the mixed-partial source index for every (basis row, output block) pair.
/// Row i lists the coordinates of the image of z_i. The constant 3 in the
/// basis numerators cancels against F_y = 3 y^2.
pub fn hasse_witt_oracle_bounded(curve: &PicardCurve, bound: u64) -> Result<MatrixFp> {
    let field = curve.field();
    let p = field.modulus();
    if p > bound {
        return Err(Error::OracleBoundExceeded { p, bound });
    }
    let expansion = surface_polynomial(curve).pow(p - 1);
    let mut m = [[0u64; 3]; 3];
    for (row, &(a, b)) in BASIS_SHIFTS.iter().enumerate() {
        for (col, &(i, j)) in BASIS_SHIFTS.iter().enumerate() {
            // multiplying the expansion by x^a y^b shifts the source index
            let (sx, sy) = MixedPartialRule::source_index(i, j, p);
            m[row][col] = expansion.coeff(sx - a, sy - b).value();
        }
    }
    Ok(MatrixFp::from_residues(field, Convention::HasseWitt, m))
}

/// Operator path: computes the image of each basis element z_j separately
/// and collects its coordinates into column j.
///
/// With mu the y-exponent in the denominator of z_j, pick k in {1, 2} such
/// that 3 divides k p - mu; then y^{-mu} = f^{(k p - mu)/3} y^{-k p}, the
/// y^{-k p} factor moves through the operator as y^{-k}, and the remaining
/// univariate polynomial maps termwise by the monomial rule. Every
/// surviving image term is x^{s-1} dx / y^k with (s-1, k) naming a basis
/// element; degree bounds rule out anything else.
pub fn cartier_matrix(curve: &PicardCurve) -> MatrixFp {
    let field = curve.field();
    let p = field.modulus();
    let f = curve.quartic();
    // z_j = x^a dx / y^mu in basis order
    const BASIS_FORM: [(u64, u64); 3] = [(0, 2), (1, 2), (0, 1)];
    let mut m = [[0u64; 3]; 3];
    for (col, &(a, mu)) in BASIS_FORM.iter().enumerate() {
        let k = (1..=2)
            .find(|&k| (k * p) % 3 == mu % 3)
            .expect("p is coprime to 3");
        let e = (k * p - mu) / 3;
        let g = f.pow(e);
        for (i, &c) in g.residues().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let Some(s_minus_1) = cartier_monomial_rule(i as u64 + a, field) else {
                continue;
            };
            // image term c^{1/p} x^{s-1} dx / y^k; the p-th root is the
            // identity on prime-field coefficients
            let row = match (s_minus_1, k) {
                (0, 2) => 0,
                (1, 2) => 1,
                (0, 1) => 2,
                (s, k) => {
                    unreachable!("image term x^{s} dx/y^{k} cannot arise: deg f^e < p*(s+1) - 1")
                }
            };
            m[row][col] = c;
        }
    }
    MatrixFp::from_residues(field, Convention::Cartier, m)
}

/// Dimension of the kernel of the operator on the basis: genus minus the
/// rank of its matrix. Transpose-invariance of rank makes this equal to
/// genus minus the rank of the fast-path matrix.
pub fn a_number(curve: &PicardCurve) -> usize {
    GENUS - cartier_matrix(curve).rank()
}

/// Stable rank of the twisted product H H^(sigma) H^(sigma^2), sigma the
/// entrywise p-th power. Over the prime field the twist fixes the entries,
/// so this is the rank of H^3.
pub fn p_rank(curve: &PicardCurve) -> usize {
    let h = hasse_witt_fast(curve);
    let h1 = h.frobenius_twist();
    let h2 = h1.frobenius_twist();
    h.matmul(&h1).matmul(&h2).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn reference_curve(p: u64) -> PicardCurve {
        PicardCurve::new(p, &[1, 0, 0, 0, 1]).unwrap()
    }

    #[test]
    fn monomial_rule_examples() {
        let f5 = field(5);
        assert_eq!(cartier_monomial_rule(4, f5), Some(0));
        assert_eq!(cartier_monomial_rule(3, f5), None);
        assert_eq!(cartier_monomial_rule(9, f5), Some(1));
    }

    // Independent restatement: write x^j = (x^q)^p * x^b with 0 <= b < p;
    // the operator keeps the term iff the leftover power b is exactly p-1,
    // and the image is then x^q dx.
    #[test]
    fn monomial_rule_matches_base_p_decomposition() {
        for p in [5u64, 7, 11, 13] {
            let fp = field(p);
            for j in 0..3 * p {
                let (q, b) = (j / p, j % p);
                let expected = if b == p - 1 { Some(q) } else { None };
                assert_eq!(cartier_monomial_rule(j, fp), expected, "j={j} p={p}");
            }
        }
    }

    #[test]
    fn mixed_partial_rule_on_monomials() {
        for p in [5u64, 13] {
            for i in 0..3 {
                for j in 0..3 {
                    let (sx, sy) = MixedPartialRule::source_index(i, j, p);
                    assert_eq!(MixedPartialRule::output_block(sx, sy, p), Some((i, j)));
                    assert_eq!(MixedPartialRule::output_block(sx + 1, sy, p), None);
                    assert_eq!(MixedPartialRule::output_block(sx, sy + p - 1, p), None);
                }
            }
        }
        // whole-polynomial application keeps exactly the selected monomials
        let fp = field(5);
        let g = BivariatePoly::from_terms(fp, [(4, 4, 2), (9, 4, 3), (3, 4, 1), (4, 5, 1)]);
        let out = MixedPartialRule::apply(&g);
        assert_eq!(out.coeff(0, 0).value(), 2);
        assert_eq!(out.coeff(5, 0).value(), 3);
        assert_eq!(out.term_count(), 2);
    }

    #[test]
    fn fast_path_reference_matrices() {
        assert_eq!(
            hasse_witt_fast(&reference_curve(5)).entries(),
            [[0, 0, 1], [0, 0, 0], [3, 0, 0]]
        );
        assert_eq!(
            hasse_witt_fast(&reference_curve(13)).entries(),
            [[4, 0, 0], [0, 2, 0], [0, 0, 4]]
        );
        // derived by hand from the binomial expansions of (x^4+1)^4 and
        // (x^4+1)^2; confirmed against the oracle below
        let h7 = hasse_witt_fast(&reference_curve(7));
        assert_eq!(h7.entries(), [[0, 0, 0], [0, 4, 0], [0, 0, 0]]);
        assert_eq!(
            h7.entries(),
            hasse_witt_oracle(&reference_curve(7)).unwrap().entries()
        );
    }

    #[test]
    fn oracle_reference_matrices() {
        assert_eq!(
            hasse_witt_oracle(&reference_curve(5)).unwrap().entries(),
            [[0, 0, 1], [0, 0, 0], [3, 0, 0]]
        );
        assert_eq!(
            hasse_witt_oracle(&reference_curve(13)).unwrap().entries(),
            [[4, 0, 0], [0, 2, 0], [0, 0, 4]]
        );
    }

    #[test]
    fn oracle_bound_is_enforced() {
        let curve = PicardCurve::new(103, &[1, 0, 0, 0, 1]).unwrap();
        assert_eq!(
            hasse_witt_oracle(&curve),
            Err(Error::OracleBoundExceeded { p: 103, bound: 101 })
        );
        assert!(hasse_witt_oracle_bounded(&curve, 103).is_ok());
    }

    #[test]
    fn expansion_only_carries_y_degrees_divisible_by_three() {
        for p in [5u64, 7, 11] {
            let g = surface_polynomial(&reference_curve(p)).pow(p - 1);
            assert!(g.terms().all(|(_, j, _)| j % 3 == 0));
        }
    }

    #[test]
    fn operator_path_reference_matrices() {
        let c5 = cartier_matrix(&reference_curve(5));
        assert_eq!(c5.convention(), Convention::Cartier);
        assert_eq!(c5.entries(), [[0, 0, 3], [0, 0, 0], [1, 0, 0]]);
        assert_eq!(
            cartier_matrix(&reference_curve(13)).entries(),
            [[4, 0, 0], [0, 2, 0], [0, 0, 4]]
        );
    }

    #[test]
    fn operator_path_is_transpose_of_fast_path() {
        for p in [5u64, 7, 11, 13, 17, 19] {
            for f_coeffs in [
                [1i64, 0, 0, 0, 1],
                [1, 1, 0, 0, 1],
                [2, 0, 1, 0, 3],
                [0, 1, 0, 0, 1],
                [3, 2, 1, 1, 1],
            ] {
                let Ok(curve) = PicardCurve::new(p, &f_coeffs) else {
                    continue;
                };
                assert_eq!(
                    cartier_matrix(&curve),
                    hasse_witt_fast(&curve).transpose(),
                    "p={p} f={f_coeffs:?}"
                );
            }
        }
    }

    #[test]
    fn zero_pattern_depends_on_residue_of_p() {
        // p = 7 is 1 mod 3: corners (0,2),(1,2),(2,0),(2,1) vanish
        let h = hasse_witt_fast(&PicardCurve::new(7, &[3, 2, 1, 1, 1]).unwrap());
        let e = h.entries();
        assert_eq!((e[0][2], e[1][2], e[2][0], e[2][1]), (0, 0, 0, 0));
        // p = 11 is 2 mod 3: the 2x2 block and the (2,2) entry vanish
        let h = hasse_witt_fast(&PicardCurve::new(11, &[1, 1, 0, 0, 1]).unwrap());
        let e = h.entries();
        assert_eq!(
            (e[0][0], e[0][1], e[1][0], e[1][1], e[2][2]),
            (0, 0, 0, 0, 0)
        );
    }

    #[test]
    fn a_number_reference_values() {
        assert_eq!(a_number(&reference_curve(5)), 1);
        assert_eq!(a_number(&reference_curve(13)), 0);
        assert_eq!(a_number(&reference_curve(7)), 2);
    }

    // Minimal independent 3x3 matrix-power oracle over F_p.
    fn naive_matpow(m: [[u64; 3]; 3], e: u32, p: u64) -> [[u64; 3]; 3] {
        let mut acc = [[0u64; 3]; 3];
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] = 1;
        }
        for _ in 0..e {
            let mut next = [[0u64; 3]; 3];
            for r in 0..3 {
                for c in 0..3 {
                    let mut s = 0u64;
                    for k in 0..3 {
                        s = (s + acc[r][k] * m[k][c]) % p;
                    }
                    next[r][c] = s;
                }
            }
            acc = next;
        }
        acc
    }

    #[test]
    fn p_rank_reference_values() {
        assert_eq!(p_rank(&reference_curve(13)), 3);
        let curve = reference_curve(5);
        let cube = naive_matpow(hasse_witt_fast(&curve).entries(), 3, 5);
        let rank_of_cube = MatrixFp::from_residues(field(5), Convention::HasseWitt, cube).rank();
        assert_eq!(rank_of_cube, 2);
        assert_eq!(p_rank(&curve), rank_of_cube);
    }

    #[test]
    fn p_rank_never_exceeds_matrix_rank() {
        for p in [5u64, 7, 11, 13] {
            for f_coeffs in [[1i64, 0, 0, 0, 1], [1, 1, 0, 0, 1], [2, 0, 1, 0, 3]] {
                let Ok(curve) = PicardCurve::new(p, &f_coeffs) else {
                    continue;
                };
                assert!(p_rank(&curve) <= hasse_witt_fast(&curve).rank());
            }
        }
    }

    // Replacing f by c*f scales rows of the matrix by powers of c and must
    // leave all three invariants unchanged.
    #[test]
    fn invariants_are_scaling_invariant() {
        for p in [7u64, 13, 17] {
            let fp = field(p);
            for seed in 0..10 {
                let mut rng = crate::survey::trial_rng(31337, p, seed);
                let base = crate::survey::random_squarefree_quartic(fp, &mut rng, false).unwrap();
                let curve = PicardCurve::from_poly(fp, base.clone()).unwrap();
                let c = 1 + (seed % (p - 1)) as i64;
                let scaled = PicardCurve::from_poly(fp, base.scale(fp.element(c))).unwrap();
                assert_eq!(
                    hasse_witt_fast(&scaled).rank(),
                    hasse_witt_fast(&curve).rank()
                );
                assert_eq!(a_number(&scaled), a_number(&curve));
                assert_eq!(p_rank(&scaled), p_rank(&curve));
            }
        }
    }
}
