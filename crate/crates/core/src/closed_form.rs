//! Summation formulas for hypersimplex face numbers.
//!
//! The default path for every count is an all-integer sum of products of
//! binomials. The equivalent rational forms (with factors such as
//! `(n-s+1)/(n+1)`) are evaluated separately in `*_rational` functions; debug
//! builds assert that both agree on every call.

use std::fmt;
use std::ops::Index;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_math::{binom, binomial, pow2, to_integer, Integer, Rational};

/// One polytope of the family: `Δ(n,k)` or, with `half_open`, `Δ'(n,k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HypersimplexSpec {
    pub n: u32,
    pub k: u32,
    pub half_open: bool,
}

impl HypersimplexSpec {
    pub fn new(n: u32, k: u32, half_open: bool) -> Result<Self> {
        check_nk(n, k)?;
        Ok(Self { n, k, half_open })
    }

    pub fn closed(n: u32, k: u32) -> Result<Self> {
        Self::new(n, k, false)
    }

    pub fn half_open(n: u32, k: u32) -> Result<Self> {
        Self::new(n, k, true)
    }

    /// Face count in dimension `j` by the summation formulas.
    pub fn f(&self, j: u32) -> Result<Integer> {
        if self.half_open {
            half_open_f(self.n, self.k, j)
        } else {
            closed_f(self.n, self.k, j)
        }
    }

    pub fn f_vector(&self) -> Result<FVector> {
        (0..=self.n)
            .map(|j| self.f(j))
            .collect::<Result<Vec<_>>>()
            .map(FVector)
    }
}

impl fmt::Display for HypersimplexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prime = if self.half_open { "'" } else { "" };
        write!(f, "Δ{prime}({},{})", self.n, self.k)
    }
}

/// Face numbers `(f_0, ..., f_n)`; entry `j` counts the `j`-dimensional faces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FVector(pub Vec<Integer>);

impl FVector {
    pub fn entries(&self) -> &[Integer] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Alternating sum `Σ (-1)^j f_j`.
    pub fn euler_characteristic(&self) -> Integer {
        self.0.iter().enumerate().fold(
            Integer::zero(),
            |acc, (j, f)| if j % 2 == 0 { acc + f } else { acc - f },
        )
    }
}

impl Index<usize> for FVector {
    type Output = Integer;

    fn index(&self, j: usize) -> &Integer {
        &self.0[j]
    }
}

impl From<Vec<Integer>> for FVector {
    fn from(v: Vec<Integer>) -> Self {
        FVector(v)
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn check_nk(n: u32, k: u32) -> Result<()> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::InvalidSpec { n, k });
    }
    Ok(())
}

fn check_nkj(n: u32, k: u32, j: u32) -> Result<()> {
    check_nk(n, k)?;
    if j > n {
        return Err(Error::DimensionOutOfRange { n, j });
    }
    Ok(())
}

/// Summation range `max(0, k-j) ..= k-1` shared by both polytopes.
fn s_range(k: i64, j: i64) -> std::ops::RangeInclusive<i64> {
    (k - j).max(0)..=k - 1
}

/// Number of `j`-faces of the half-open hypersimplex `Δ'(n,k)`.
///
/// Faces are split by whether they lie on the top hyperplane `Σx = k`:
/// `Σ_s [ C(n,j)·C(n-j,s) + C(n,j+1)·C(n-j-1,s) ]`, `s` from `max(0,k-j)`
/// to `k-1`. Vertices (`j = 0`) are the `C(n,k)` points at level `k`.
pub fn half_open_f(n: u32, k: u32, j: u32) -> Result<Integer> {
    check_nkj(n, k, j)?;
    if j == 0 {
        return Ok(binomial(n.into(), k.into()));
    }
    let (n, k, j) = (i64::from(n), i64::from(k), i64::from(j));
    let off_top = binom(n, j);
    let on_top = binom(n, j + 1);
    let value = s_range(k, j).fold(Integer::zero(), |acc, s| {
        acc + &off_top * binom(n - j, s) + &on_top * binom(n - j - 1, s)
    });
    debug_assert_eq!(
        Rational::from(value.clone()),
        half_open_f_rational(n as u32, k as u32, j as u32)?,
        "integer and rational forms disagree at ({n},{k},{j})"
    );
    Ok(value)
}

/// `C(n+1,j+1) · Σ_s C(n-j,s)·(n-s+1)/(n+1)`, evaluated in exact rationals.
///
/// Verification path for [`half_open_f`]; defined for `j >= 1`.
pub fn half_open_f_rational(n: u32, k: u32, j: u32) -> Result<Rational> {
    check_nkj(n, k, j)?;
    if j == 0 {
        return Err(Error::DimensionOutOfRange { n, j });
    }
    let (n, k, j) = (i64::from(n), i64::from(k), i64::from(j));
    let inner = s_range(k, j).fold(Rational::zero(), |acc, s| {
        acc + Rational::new(binom(n - j, s) * (n - s + 1), Integer::from(n + 1))
    });
    Ok(inner * Rational::from(binom(n + 1, j + 1)))
}

/// Codimension form: counts the `i`-sets of supporting hyperplanes whose
/// intersection with `Δ'(n,k)` has dimension `n - i`.
///
/// `C(n,i)·Σ C(i,s) + C(n,i-1)·Σ C(i-1,s)` with `s` bounded below by
/// `max(0, k+i-n)` and above by `min(k-1, i)` resp. `min(k-1, i-1)`.
/// Verification path; defined for `0 <= i < n`.
pub fn half_open_f_by_codim(n: u32, k: u32, i: u32) -> Result<Integer> {
    check_nk(n, k)?;
    if i >= n {
        return Err(Error::InvalidArgument(format!(
            "codimension i={i} out of range 0..{n}"
        )));
    }
    let (n, k, i) = (i64::from(n), i64::from(k), i64::from(i));
    let lo = (k + i - n).max(0);
    let without_top: Integer = (lo..=(k - 1).min(i)).map(|s| binom(i, s)).sum();
    let with_top: Integer = (lo..=(k - 1).min(i - 1)).map(|s| binom(i - 1, s)).sum();
    Ok(binom(n, i) * without_top + binom(n, i - 1) * with_top)
}

/// Number of `j`-faces of the closed hypersimplex `Δ(n,k)`.
///
/// `C(n+1,j+1) · Σ_s C(n-j,s)` for `j >= 1`; `C(n,k) + C(n,k-1)` vertices.
pub fn closed_f(n: u32, k: u32, j: u32) -> Result<Integer> {
    check_nkj(n, k, j)?;
    let (n, k, j) = (i64::from(n), i64::from(k), i64::from(j));
    if j == 0 {
        return Ok(binom(n, k) + binom(n, k - 1));
    }
    let inner: Integer = s_range(k, j).map(|s| binom(n - j, s)).sum();
    Ok(binom(n + 1, j + 1) * inner)
}

/// Faces of `Δ(n,k)` lying in the bottom hyperplane `Σx = k-1`, i.e. the
/// difference `closed_f - half_open_f`.
///
/// `C(n,j+1)·Σ C(n-j-1,s)` over `max(0,k-1-j) ..= k-2` for `j >= 1`, and
/// `C(n,k-1)` at `j = 0`.
pub fn bottom_face_count(n: u32, k: u32, j: u32) -> Result<Integer> {
    check_nkj(n, k, j)?;
    let (n, k, j) = (i64::from(n), i64::from(k), i64::from(j));
    if j == 0 {
        return Ok(binom(n, k - 1));
    }
    let inner: Integer = ((k - 1 - j).max(0)..=k - 2)
        .map(|s| binom(n - j - 1, s))
        .sum();
    Ok(binom(n, j + 1) * inner)
}

pub fn half_open_f_vector(spec: HypersimplexSpec) -> Result<FVector> {
    HypersimplexSpec {
        half_open: true,
        ..spec
    }
    .f_vector()
}

pub fn closed_f_vector(spec: HypersimplexSpec) -> Result<FVector> {
    HypersimplexSpec {
        half_open: false,
        ..spec
    }
    .f_vector()
}

/// `Σ_{k=1..n} f_j(Δ'(n,k))`: the `j`-faces of the decomposition of the unit
/// cube into half-open hypersimplices.
///
/// Evaluated as `j·2^(n-j)·C(n,j) + j·2^(n-j-1)·C(n,j+1)`: every `j`-face of
/// the cube is cut into `j` pieces, and every `(j+1)`-face of the cube meets
/// `j` of the level hyperplanes in its interior. `j = 0` is rejected: the
/// formula vanishes there while the true vertex total is `2^n - 1`.
pub fn cube_column_sum(n: u32, j: u32) -> Result<Integer> {
    if n == 0 || j == 0 || j > n {
        return Err(Error::InvalidArgument(format!(
            "cube_column_sum needs 1 <= j <= n, got n={n}, j={j}"
        )));
    }
    let cube_faces = pow2(n - j) * binomial(n.into(), j.into());
    let cut_faces = if j < n {
        pow2(n - j - 1) * binomial(n.into(), i64::from(j) + 1)
    } else {
        Integer::zero()
    };
    let value = (cube_faces + cut_faces) * j;
    debug_assert_eq!(
        Rational::from(value.clone()),
        cube_column_sum_rational(n, j)?,
        "column sum forms disagree at n={n}, j={j}"
    );
    Ok(value)
}

/// `j · 2^(n-j-1) · (n+j+2)/(n+1) · C(n+1,j+1)` in exact rationals.
pub fn cube_column_sum_rational(n: u32, j: u32) -> Result<Rational> {
    if n == 0 || j == 0 || j > n {
        return Err(Error::InvalidArgument(format!(
            "cube_column_sum needs 1 <= j <= n, got n={n}, j={j}"
        )));
    }
    let power = if j < n {
        Rational::from(pow2(n - j - 1))
    } else {
        Rational::new(Integer::one(), Integer::from(2))
    };
    let ratio = Rational::new(Integer::from(n + j + 2), Integer::from(n + 1));
    Ok(power
        * ratio
        * Rational::from(binomial(u64::from(n) + 1, i64::from(j) + 1))
        * Integer::from(j))
}

/// `(1/j) · cube_column_sum(n, j)` with `j = m-1`, `n = ell-m-1`.
///
/// This is the magnitude of the `x^(ell-2m)` coefficient of the Chebyshev
/// polynomial `T_ell`; see [`crate::chebyshev::verify_relation`].
pub fn chebyshev_column_sum(ell: u32, m: u32) -> Result<Integer> {
    if m < 2 || ell < 2 * m {
        return Err(Error::InvalidArgument(format!(
            "chebyshev_column_sum needs m >= 2 and ell >= 2m, got ell={ell}, m={m}"
        )));
    }
    let (j, n) = (m - 1, ell - m - 1);
    let total = cube_column_sum(n, j)?;
    let j = Integer::from(j);
    assert!(
        (&total % &j).is_zero(),
        "column sum {total} not divisible by j={j}"
    );
    Ok(total / j)
}

/// Validates the rational column-sum form against the integer one; handy
/// for the harness, which wants a `Result` instead of a debug assertion.
pub fn cube_column_sum_forms_agree(n: u32, j: u32) -> Result<bool> {
    let int = cube_column_sum(n, j)?;
    Ok(to_integer(&cube_column_sum_rational(n, j)?).as_ref() == Some(&int))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    fn fv(v: &[i64]) -> FVector {
        FVector(v.iter().copied().map(Integer::from).collect())
    }

    #[test]
    fn half_open_examples() {
        assert_eq!(half_open_f(2, 2, 0).unwrap(), int(1));
        assert_eq!(half_open_f(3, 2, 1).unwrap(), int(9));
        assert_eq!(half_open_f(4, 2, 2).unwrap(), int(26));
        assert_eq!(half_open_f(5, 3, 4).unwrap(), int(11));
        for n in 1..=9 {
            for k in 1..=n {
                assert_eq!(half_open_f(n, k, n).unwrap(), int(1), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn closed_examples() {
        assert_eq!(closed_f(3, 2, 0).unwrap(), int(6));
        assert_eq!(closed_f(3, 2, 1).unwrap(), int(12));
        assert_eq!(closed_f(3, 2, 2).unwrap(), int(8));
    }

    #[test]
    fn vectors() {
        let ho = HypersimplexSpec::half_open(2, 2).unwrap();
        assert_eq!(half_open_f_vector(ho).unwrap(), fv(&[1, 2, 1]));
        let oct = HypersimplexSpec::closed(3, 2).unwrap();
        assert_eq!(closed_f_vector(oct).unwrap(), fv(&[6, 12, 8, 1]));
        let seg = HypersimplexSpec::closed(1, 1).unwrap();
        assert_eq!(closed_f_vector(seg).unwrap(), fv(&[2, 1]));
        assert_eq!(fv(&[6, 12, 8, 1]).to_string(), "(6, 12, 8, 1)");
    }

    #[test]
    fn rejects_bad_arguments() {
        assert_eq!(half_open_f(0, 1, 0), Err(Error::InvalidSpec { n: 0, k: 1 }));
        assert_eq!(half_open_f(3, 0, 0), Err(Error::InvalidSpec { n: 3, k: 0 }));
        assert_eq!(closed_f(3, 4, 0), Err(Error::InvalidSpec { n: 3, k: 4 }));
        assert_eq!(
            closed_f(3, 2, 4),
            Err(Error::DimensionOutOfRange { n: 3, j: 4 })
        );
        assert!(HypersimplexSpec::new(2, 3, true).is_err());
        assert!(cube_column_sum(3, 0).is_err());
        assert!(cube_column_sum(3, 4).is_err());
        assert!(chebyshev_column_sum(6, 1).is_err());
        assert!(chebyshev_column_sum(5, 3).is_err());
    }

    #[test]
    fn codim_form_matches() {
        // Hand enumeration for k = 2: f_{n-2} = 2C(n,2)+n at n = 3,
        // and 3C(n,2)+2n beyond.
        assert_eq!(half_open_f_by_codim(3, 2, 2).unwrap(), int(9));
        for n in 4..=12i64 {
            let expected = 3 * (n * (n - 1) / 2) + 2 * n;
            assert_eq!(half_open_f_by_codim(n as u32, 2, 2).unwrap(), int(expected));
        }
        for n in 1..=12 {
            for k in 1..=n {
                for i in 0..n {
                    assert_eq!(
                        half_open_f_by_codim(n, k, i).unwrap(),
                        half_open_f(n, k, n - i).unwrap(),
                        "n={n} k={k} i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn rational_form_matches() {
        for n in 1..=12 {
            for k in 1..=n {
                for j in 1..=n {
                    let q = half_open_f_rational(n, k, j).unwrap();
                    assert_eq!(to_integer(&q), Some(half_open_f(n, k, j).unwrap()));
                }
            }
        }
    }

    #[test]
    fn closed_minus_half_open_is_bottom() {
        for n in 1..=12 {
            for k in 1..=n {
                for j in 0..=n {
                    let diff = closed_f(n, k, j).unwrap() - half_open_f(n, k, j).unwrap();
                    assert_eq!(
                        diff,
                        bottom_face_count(n, k, j).unwrap(),
                        "n={n} k={k} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn euler_and_symmetry() {
        for n in 1..=12 {
            for k in 1..=n {
                let closed = closed_f_vector(HypersimplexSpec::closed(n, k).unwrap()).unwrap();
                let open = half_open_f_vector(HypersimplexSpec::half_open(n, k).unwrap()).unwrap();
                assert_eq!(closed.euler_characteristic(), int(1));
                assert_eq!(open.euler_characteristic(), int(0));
                let mirror =
                    closed_f_vector(HypersimplexSpec::closed(n, n + 1 - k).unwrap()).unwrap();
                assert_eq!(closed, mirror);
            }
        }
    }

    #[test]
    fn facet_counts() {
        for n in 2..=12 {
            assert_eq!(half_open_f(n, 1, n - 1).unwrap(), int(i64::from(n) + 1));
            assert_eq!(half_open_f(n, n, n - 1).unwrap(), int(i64::from(n)));
            for k in 2..n {
                assert_eq!(half_open_f(n, k, n - 1).unwrap(), int(2 * i64::from(n) + 1));
            }
        }
    }

    #[test]
    fn column_sums() {
        assert_eq!(cube_column_sum(2, 1).unwrap(), int(5));
        assert_eq!(cube_column_sum(3, 2).unwrap(), int(14));
        assert_eq!(cube_column_sum(3, 3).unwrap(), int(3));
        for n in 1..=12 {
            for j in 1..=n {
                let direct: Integer = (1..=n).map(|k| half_open_f(n, k, j).unwrap()).sum();
                assert_eq!(cube_column_sum(n, j).unwrap(), direct);
                assert!(cube_column_sum_forms_agree(n, j).unwrap());
            }
        }
    }

    #[test]
    fn chebyshev_sums() {
        assert_eq!(chebyshev_column_sum(4, 2).unwrap(), int(1));
        // j=1, n=3: 1·4·3 + 1·2·3 = 18 = |[x^2] T_6|
        assert_eq!(chebyshev_column_sum(6, 2).unwrap(), int(18));
        for m in 2..=12 {
            assert_eq!(chebyshev_column_sum(2 * m, m).unwrap(), int(1));
        }
    }
}
