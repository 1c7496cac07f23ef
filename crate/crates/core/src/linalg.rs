//! Exact rational linear algebra for the small exponent systems solved by
//! the Darboux assemblers.

use crate::poly::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Solution of `A e = b`: one particular solution (free coordinates zero)
/// plus a basis of the homogeneous solutions in reduced-echelon convention
/// (each basis vector has 1 in its free coordinate and 0 in the others).
#[derive(Debug, Clone)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub nullspace: Vec<Vec<Rational>>,
}

/// Gaussian elimination over the rationals. `None` when inconsistent.
#[allow(clippy::needless_range_loop)] // rows are read and written simultaneously
pub fn solve_linear(a: &[Vec<Rational>], b: &[Rational]) -> Option<AffineSolution> {
    let rows = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    assert_eq!(rows, b.len());
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let pivot_row = (rank..rows).find(|&r| !m[r][col].is_zero());
        let Some(pr) = pivot_row else { continue };
        m.swap(rank, pr);
        let inv = m[rank][col].clone().recip();
        for v in m[rank].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..=cols {
                    let delta = &m[rank][c] * &factor;
                    m[r][c] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    // Inconsistency: a zero row with nonzero right-hand side.
    for r in rank..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }

    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut particular = vec![Rational::zero(); cols];
    for (r, &pc) in pivot_cols.iter().enumerate() {
        particular[pc] = m[r][cols].clone();
    }
    let mut nullspace = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![Rational::zero(); cols];
        v[fc] = Rational::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[r][fc].clone();
        }
        nullspace.push(v);
    }
    Some(AffineSolution {
        particular,
        nullspace,
    })
}

/// Nullspace basis of `A e = 0` in reduced-echelon convention.
pub fn nullspace(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let zeros = vec![Rational::zero(); a.len()];
    solve_linear(a, &zeros)
        .expect("homogeneous system is always consistent")
        .nullspace
}

/// Scale a rational vector to primitive integers with the first nonzero
/// entry positive. Zero vectors pass through.
pub fn integer_primitive(v: &[Rational]) -> Vec<Rational> {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for c in v {
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    if num_gcd.is_zero() {
        return v.to_vec();
    }
    let mut scale = Rational::new(den_lcm, num_gcd);
    if let Some(first) = v.iter().find(|c| !c.is_zero()) {
        if (first * &scale).is_negative() {
            scale = -scale;
        }
    }
    v.iter().map(|c| c * &scale).collect()
}

/// Height of a rational vector: the maximum absolute value of its entries.
pub fn height(v: &[Rational]) -> Rational {
    v.iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}
