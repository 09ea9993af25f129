//! Exact integer and rational helpers shared by every other module.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// `C(a, b)`, zero-extended: returns 0 whenever `b < 0` or `b > a`.
///
/// Formula code relies on this so summation limits may run past the
/// support of a binomial without special casing.
pub fn binomial(a: u64, b: i64) -> Integer {
    if b < 0 || b as u64 > a {
        return Integer::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = Integer::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Signed convenience wrapper: `C(a, b)` with `a < 0` treated as 0.
///
/// Only the formulas' "empty" corners produce a negative top argument
/// (e.g. `C(n-j-1, s)` at `j = n`), and those terms vanish.
pub(crate) fn binom(a: i64, b: i64) -> Integer {
    if a < 0 {
        Integer::zero()
    } else {
        binomial(a as u64, b)
    }
}

pub fn factorial(n: u64) -> Integer {
    (1..=n).fold(Integer::one(), |acc, i| acc * i)
}

/// `a! / (parts[0]! * parts[1]! * ...)`; the parts must sum to `a`.
pub fn multinomial(a: u64, parts: &[u64]) -> Result<Integer> {
    let sum: u64 = parts.iter().sum();
    if sum != a {
        return Err(Error::PartsMismatch { total: a, sum });
    }
    // Product of binomials avoids the large factorial quotient.
    let mut acc = Integer::one();
    let mut used = 0u64;
    for &p in parts {
        used += p;
        acc *= binomial(used, p as i64);
    }
    Ok(acc)
}

pub fn pow2(e: u32) -> Integer {
    Integer::one() << e
}

/// Converts a rational that is known to be integral.
pub fn to_integer(q: &Rational) -> Option<Integer> {
    if q.denom().is_one() {
        Some(q.numer().clone())
    } else {
        None
    }
}

/// Affine dimension of a point configuration: the rank of `{p_i - p_0}`.
///
/// Rank is found by fraction-free (Bareiss) elimination, so every
/// intermediate stays an exact integer.
pub fn affine_dimension(points: &[Vec<i64>]) -> Result<usize> {
    let (first, rest) = points.split_first().ok_or(Error::EmptyPointSet)?;
    let width = first.len();
    let mut rows = Vec::with_capacity(rest.len());
    for p in rest {
        if p.len() != width {
            return Err(Error::RaggedPoints {
                expected: width,
                found: p.len(),
            });
        }
        rows.push(
            p.iter()
                .zip(first)
                .map(|(x, o)| Integer::from(x - o))
                .collect::<Vec<_>>(),
        );
    }
    Ok(integer_rank(rows))
}

/// Rank of an integer matrix given as rows, by Bareiss elimination.
pub fn integer_rank(mut rows: Vec<Vec<Integer>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev_pivot = Integer::one();
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let (upper, lower) = rows.split_at_mut(rank + 1);
        let pivot = &upper[rank];
        for row in lower.iter_mut() {
            let factor = row[col].clone();
            for c in col + 1..cols {
                let num = &pivot[col] * &row[c] - &factor * &pivot[c];
                let (q, r) = num.div_rem(&prev_pivot);
                debug_assert!(r.is_zero(), "Bareiss step must divide exactly");
                row[c] = q;
            }
            row[col] = Integer::zero();
        }
        prev_pivot = pivot[col].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), Integer::from(6));
        assert_eq!(binomial(3, 5), Integer::zero());
        assert_eq!(binomial(7, 0), Integer::one());
        assert_eq!(binomial(5, -1), Integer::zero());
        assert_eq!(
            binomial(100, 49).to_string(),
            "98913082887808032681188722800"
        );
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), Integer::from(12));
        assert_eq!(multinomial(5, &[5]).unwrap(), Integer::one());
        assert_eq!(multinomial(4, &[1, 1, 2]).unwrap(), Integer::from(12));
        assert_eq!(multinomial(0, &[]).unwrap(), Integer::one());
        assert_eq!(
            multinomial(4, &[1, 1]),
            Err(Error::PartsMismatch { total: 4, sum: 2 })
        );
        assert_eq!(
            multinomial(9, &[2, 3, 4]).unwrap(),
            factorial(9) / (factorial(2) * factorial(3) * factorial(4))
        );
    }

    #[test]
    fn affine_dimension_values() {
        assert_eq!(affine_dimension(&[vec![0, 0]]).unwrap(), 0);
        assert_eq!(
            affine_dimension(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap(),
            2
        );
        assert_eq!(
            affine_dimension(&[vec![0, 0, 0], vec![1, 1, 0], vec![2, 2, 0]]).unwrap(),
            1
        );
        assert_eq!(affine_dimension(&[]), Err(Error::EmptyPointSet));
        assert!(matches!(
            affine_dimension(&[vec![0, 0], vec![1]]),
            Err(Error::RaggedPoints { .. })
        ));
    }

    #[test]
    fn rank_with_skipped_columns() {
        // first column is all zero, pivots land on columns 1 and 3
        let rows = vec![vec![0, 2, 4, 6], vec![0, 1, 2, 5], vec![0, 3, 6, 9]]
            .into_iter()
            .map(|r| r.into_iter().map(Integer::from).collect())
            .collect();
        assert_eq!(integer_rank(rows), 2);
    }

    #[test]
    fn rational_to_integer() {
        let q = Rational::new(Integer::from(6), Integer::from(3));
        assert_eq!(to_integer(&q), Some(Integer::from(2)));
        let h = Rational::new(Integer::from(1), Integer::from(2));
        assert_eq!(to_integer(&h), None);
    }
}
