//! Chebyshev polynomials of the first kind, and the match between their
//! coefficient magnitudes and the cube-decomposition column sums.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::closed_form::chebyshev_column_sum;
use crate::error::{Error, Result};
use crate::exact_math::{binomial, factorial, pow2, to_integer, Integer, Rational};

/// `T_ell` as its integer coefficient list; `coeffs[d]` multiplies `x^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebyshevPoly {
    pub ell: u32,
    pub coeffs: Vec<Integer>,
}

impl ChebyshevPoly {
    pub fn coefficient(&self, d: u32) -> Integer {
        self.coeffs.get(d as usize).cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        self.coeffs
            .iter()
            .rev()
            .fold(Integer::zero(), |acc, c| acc * x + c)
    }
}

/// `T_ell` from `T_0 = 1`, `T_1 = x`, `T_(l+1) = 2x·T_l - T_(l-1)`.
pub fn chebyshev_t(ell: u32) -> ChebyshevPoly {
    let mut prev = vec![Integer::one()];
    if ell == 0 {
        return ChebyshevPoly { ell, coeffs: prev };
    }
    let mut cur = vec![Integer::zero(), Integer::one()];
    for _ in 1..ell {
        let mut next = vec![Integer::zero(); cur.len() + 1];
        for (d, c) in cur.iter().enumerate() {
            next[d + 1] += c * 2u32;
        }
        for (d, c) in prev.iter().enumerate() {
            next[d] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    ChebyshevPoly { ell, coeffs: cur }
}

fn check_m(ell: u32, m: u32) -> Result<()> {
    if ell == 0 || m > ell / 2 {
        return Err(Error::InvalidArgument(format!(
            "coefficient index needs ell >= 1 and 0 <= m <= ell/2, got ell={ell}, m={m}"
        )));
    }
    Ok(())
}

fn sign(m: u32) -> Integer {
    if m.is_multiple_of(2) {
        Integer::one()
    } else {
        -Integer::one()
    }
}

/// Coefficient of `x^(ell-2m)` in `T_ell` as
/// `(-1)^m · ell/(ell-m) · C(ell-m, m) · 2^(ell-2m-1)`.
///
/// The power of two is `1/2` when `ell = 2m`, so the product is formed in
/// rationals and then checked to be integral.
pub fn coefficient_closed_form(ell: u32, m: u32) -> Result<Integer> {
    check_m(ell, m)?;
    let power = if ell > 2 * m {
        Rational::from(pow2(ell - 2 * m - 1))
    } else {
        Rational::new(Integer::one(), Integer::from(2))
    };
    let ratio = Rational::new(Integer::from(ell), Integer::from(ell - m));
    let value = ratio * power * Rational::from(binomial((ell - m).into(), m.into()) * sign(m));
    Ok(to_integer(&value).expect("Chebyshev coefficient must be an integer"))
}

/// The same coefficient from the factorial form
/// `ell/2 · (-1)^m · (ell-m-1)! / (m! (ell-2m)!) · 2^(ell-2m)`.
pub fn coefficient_factorial_form(ell: u32, m: u32) -> Result<Integer> {
    check_m(ell, m)?;
    let num = factorial((ell - m - 1).into()) * pow2(ell - 2 * m) * ell * sign(m);
    let den = factorial(m.into()) * factorial((ell - 2 * m).into()) * 2u32;
    let value = Rational::new(num, den);
    Ok(to_integer(&value).expect("Chebyshev coefficient must be an integer"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub ell: u32,
    pub m: u32,
    /// `|[x^(ell-2m)] T_ell|` from the recurrence.
    #[serde(serialize_with = "crate::cli::ser_integer")]
    pub lhs: Integer,
    /// Column sum of `j`-faces divided by `j`, `j = m-1`, `n = ell-m-1`.
    #[serde(serialize_with = "crate::cli::ser_integer")]
    pub rhs: Integer,
    pub equal: bool,
}

/// Compares a Chebyshev coefficient magnitude with the scaled face total of
/// the cube decomposition. Requires `m >= 2` and `ell >= 2m`.
pub fn verify_relation(ell: u32, m: u32) -> Result<RelationReport> {
    if m < 2 || ell < 2 * m {
        return Err(Error::InvalidArgument(format!(
            "relation needs m >= 2 and ell >= 2m, got ell={ell}, m={m}"
        )));
    }
    let lhs = chebyshev_t(ell).coefficient(ell - 2 * m).abs();
    let rhs = chebyshev_column_sum(ell, m)?;
    let equal = lhs == rhs;
    Ok(RelationReport {
        ell,
        m,
        lhs,
        rhs,
        equal,
    })
}
