//! Truncated formal power series with exact integer coefficients, and the
//! expansions of the face-count generating functions.
//!
//! In the trivariate series the monomial `x^k y^(n-k) t^j` carries the number
//! of `j`-faces of the `(n,k)` polytope. Truncation bounds `a + b` (which is
//! `n`) and `c` (which is `j`) separately. Every generating function here has a
//! denominator with constant term 1, so the expansions stay integral.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_math::Integer;

/// Largest degree cap accepted by the expansion routines.
pub const MAX_SERIES_CAP: u32 = 64;

fn guard_cap(cap: u32) -> Result<()> {
    if cap > MAX_SERIES_CAP {
        return Err(Error::SizeGuard {
            what: "series cap",
            requested: cap,
            guard: MAX_SERIES_CAP,
            hint: "expansions are dense in the cap",
        });
    }
    Ok(())
}

/// Series in `x, y, t` keeping monomials with `a + b <= cap_n` and `c <= cap_t`.
///
/// Coefficients live in a dense triangular array over `(a, b)`, each slot
/// holding `cap_t + 1` entries for the powers of `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries3 {
    cap_n: u32,
    cap_t: u32,
    coeffs: Vec<Integer>,
}

impl TruncatedSeries3 {
    pub fn zero(cap_n: u32, cap_t: u32) -> Self {
        let pairs = (cap_n as usize + 1) * (cap_n as usize + 2) / 2;
        Self {
            cap_n,
            cap_t,
            coeffs: vec![Integer::zero(); pairs * (cap_t as usize + 1)],
        }
    }

    pub fn one(cap_n: u32, cap_t: u32) -> Self {
        let mut s = Self::zero(cap_n, cap_t);
        s.coeffs[0] = Integer::one();
        s
    }

    /// A polynomial given by `((a, b, c), coefficient)` terms; terms above the
    /// caps are dropped.
    pub fn from_terms(cap_n: u32, cap_t: u32, terms: &[((u32, u32, u32), i64)]) -> Self {
        let mut s = Self::zero(cap_n, cap_t);
        for &((a, b, c), v) in terms {
            if s.within_caps(a, b, c) {
                let i = s.index(a, b, c);
                s.coeffs[i] += v;
            }
        }
        s
    }

    pub fn cap_n(&self) -> u32 {
        self.cap_n
    }

    pub fn cap_t(&self) -> u32 {
        self.cap_t
    }

    fn within_caps(&self, a: u32, b: u32, c: u32) -> bool {
        a + b <= self.cap_n && c <= self.cap_t
    }

    fn index(&self, a: u32, b: u32, c: u32) -> usize {
        let (n, a, b) = (self.cap_n as usize, a as usize, b as usize);
        let row = a * (n + 1) - a * a.saturating_sub(1) / 2;
        (row + b) * (self.cap_t as usize + 1) + c as usize
    }

    /// Coefficient of `x^a y^b t^c`; errors when the monomial was truncated
    /// away, so "not retained" is never confused with zero.
    pub fn coefficient(&self, a: u32, b: u32, c: u32) -> Result<Integer> {
        if !self.within_caps(a, b, c) {
            return Err(Error::AboveCap {
                a,
                b,
                c,
                cap_n: self.cap_n,
                cap_t: self.cap_t,
            });
        }
        Ok(self.coeffs[self.index(a, b, c)].clone())
    }

    /// Coefficient of `x^k y^(n-k) t^j`.
    pub fn face_count(&self, n: u32, k: u32, j: u32) -> Result<Integer> {
        if k > n {
            return Err(Error::InvalidSpec { n, k });
        }
        self.coefficient(k, n - k, j)
    }

    /// All monomials in `(a, b, c)` lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32, u32), &Integer)> + '_ {
        let (cap_n, cap_t) = (self.cap_n, self.cap_t);
        (0..=cap_n)
            .flat_map(move |a| {
                (0..=cap_n - a).flat_map(move |b| (0..=cap_t).map(move |c| (a, b, c)))
            })
            .zip(self.coeffs.iter())
    }

    pub fn nonzero_terms(&self) -> impl Iterator<Item = ((u32, u32, u32), &Integer)> + '_ {
        self.iter().filter(|(_, v)| !v.is_zero())
    }

    fn assert_same_caps(&self, other: &Self) {
        assert!(
            self.cap_n == other.cap_n && self.cap_t == other.cap_t,
            "series caps differ: ({}, {}) vs ({}, {})",
            self.cap_n,
            self.cap_t,
            other.cap_n,
            other.cap_t
        );
    }

    /// Multiplicative inverse of a series whose constant term is exactly 1.
    pub fn inverse_unit_series(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnitConstant(self.coeffs[0].to_string()));
        }
        let terms: Vec<_> = self
            .nonzero_terms()
            .filter(|&(e, _)| e != (0, 0, 0))
            .map(|(e, v)| (e, v.clone()))
            .collect();
        let mut inv = Self::one(self.cap_n, self.cap_t);
        // Lexicographic order visits every e - e' before e.
        for a in 0..=self.cap_n {
            for b in 0..=self.cap_n - a {
                for c in 0..=self.cap_t {
                    if (a, b, c) == (0, 0, 0) {
                        continue;
                    }
                    let mut acc = Integer::zero();
                    for &((da, db, dc), ref v) in &terms {
                        if da <= a && db <= b && dc <= c {
                            acc -= v * &inv.coeffs[inv.index(a - da, b - db, c - dc)];
                        }
                    }
                    let i = inv.index(a, b, c);
                    inv.coeffs[i] = acc;
                }
            }
        }
        Ok(inv)
    }

    /// Substitutes `y = x` and keeps the `t^c` slice: the coefficient of `x^n`
    /// in the result is `Σ_{a+b=n} [x^a y^b t^c]`.
    pub fn diagonal_slice(&self, c: u32) -> Result<TruncatedSeries1> {
        if c > self.cap_t {
            return Err(Error::AboveCap {
                a: 0,
                b: 0,
                c,
                cap_n: self.cap_n,
                cap_t: self.cap_t,
            });
        }
        let mut out = TruncatedSeries1::zero(self.cap_n);
        for a in 0..=self.cap_n {
            for b in 0..=self.cap_n - a {
                out.coeffs[(a + b) as usize] += &self.coeffs[self.index(a, b, c)];
            }
        }
        Ok(out)
    }
}

impl Mul for &TruncatedSeries3 {
    type Output = TruncatedSeries3;

    fn mul(self, rhs: &TruncatedSeries3) -> TruncatedSeries3 {
        self.assert_same_caps(rhs);
        let mut out = TruncatedSeries3::zero(self.cap_n, self.cap_t);
        let right: Vec<_> = rhs.nonzero_terms().collect();
        for ((a1, b1, c1), v1) in self.nonzero_terms() {
            for &((a2, b2, c2), v2) in &right {
                let (a, b, c) = (a1 + a2, b1 + b2, c1 + c2);
                if out.within_caps(a, b, c) {
                    let i = out.index(a, b, c);
                    out.coeffs[i] += v1 * v2;
                }
            }
        }
        out
    }
}

impl Add for &TruncatedSeries3 {
    type Output = TruncatedSeries3;

    fn add(self, rhs: &TruncatedSeries3) -> TruncatedSeries3 {
        self.assert_same_caps(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        TruncatedSeries3 { coeffs, ..*self }
    }
}

impl Sub for &TruncatedSeries3 {
    type Output = TruncatedSeries3;

    fn sub(self, rhs: &TruncatedSeries3) -> TruncatedSeries3 {
        self + &(-rhs)
    }
}

impl Neg for &TruncatedSeries3 {
    type Output = TruncatedSeries3;

    fn neg(self) -> TruncatedSeries3 {
        let coeffs = self.coeffs.iter().map(|x| -x).collect();
        TruncatedSeries3 { coeffs, ..*self }
    }
}

/// Univariate series in `x` truncated above degree `cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries1 {
    cap: u32,
    coeffs: Vec<Integer>,
}

impl TruncatedSeries1 {
    pub fn zero(cap: u32) -> Self {
        Self {
            cap,
            coeffs: vec![Integer::zero(); cap as usize + 1],
        }
    }

    pub fn from_terms(cap: u32, terms: &[(u32, i64)]) -> Self {
        let mut s = Self::zero(cap);
        for &(e, v) in terms {
            if e <= cap {
                s.coeffs[e as usize] += v;
            }
        }
        s
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn coefficient(&self, e: u32) -> Result<Integer> {
        if e > self.cap {
            return Err(Error::AboveCap {
                a: e,
                b: 0,
                c: 0,
                cap_n: self.cap,
                cap_t: 0,
            });
        }
        Ok(self.coeffs[e as usize].clone())
    }

    pub fn inverse_unit_series(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnitConstant(self.coeffs[0].to_string()));
        }
        let mut inv = Self::zero(self.cap);
        inv.coeffs[0] = Integer::one();
        for e in 1..=self.cap as usize {
            let acc: Integer = (1..=e).map(|d| &self.coeffs[d] * &inv.coeffs[e - d]).sum();
            inv.coeffs[e] = -acc;
        }
        Ok(inv)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::from_terms(self.cap, &[(0, 1)]);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl Mul for &TruncatedSeries1 {
    type Output = TruncatedSeries1;

    fn mul(self, rhs: &TruncatedSeries1) -> TruncatedSeries1 {
        assert_eq!(self.cap, rhs.cap, "series caps differ");
        let mut out = TruncatedSeries1::zero(self.cap);
        for (i, x) in self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (k, y) in rhs
                .coeffs
                .iter()
                .enumerate()
                .take(self.cap as usize + 1 - i)
            {
                out.coeffs[i + k] += x * y;
            }
        }
        out
    }
}

/// `(1-x-y)(1-x-y-xt)(1-x-y-yt)`, shared by both trivariate functions.
pub fn face_gf_denominator(cap_n: u32) -> TruncatedSeries3 {
    let base = [((0, 0, 0), 1), ((1, 0, 0), -1), ((0, 1, 0), -1)];
    let plain = TruncatedSeries3::from_terms(cap_n, cap_n, &base);
    let mut with_xt = base.to_vec();
    with_xt.push(((1, 0, 1), -1));
    let mut with_yt = base.to_vec();
    with_yt.push(((0, 1, 1), -1));
    let with_xt = TruncatedSeries3::from_terms(cap_n, cap_n, &with_xt);
    let with_yt = TruncatedSeries3::from_terms(cap_n, cap_n, &with_yt);
    &(&plain * &with_xt) * &with_yt
}

/// `(1-x)·x·t`
pub fn half_open_gf_numerator(cap_n: u32) -> TruncatedSeries3 {
    TruncatedSeries3::from_terms(cap_n, cap_n, &[((1, 0, 1), 1), ((2, 0, 1), -1)])
}

/// `x·t`
pub fn closed_gf_numerator(cap_n: u32) -> TruncatedSeries3 {
    TruncatedSeries3::from_terms(cap_n, cap_n, &[((1, 0, 1), 1)])
}

fn expand(cap_n: u32, numerator: TruncatedSeries3) -> Result<TruncatedSeries3> {
    if cap_n == 0 {
        return Err(Error::InvalidArgument(
            "series cap must be at least 1".into(),
        ));
    }
    guard_cap(cap_n)?;
    let inv = face_gf_denominator(cap_n).inverse_unit_series()?;
    Ok(&numerator * &inv)
}

/// Expansion of `(1-x)xt / ((1-x-y)(1-x-y-xt)(1-x-y-yt))`, whose coefficient
/// of `x^k y^(n-k) t^j` is the number of `j`-faces of `Δ'(n,k)` (`j >= 1`).
pub fn expand_half_open_gf(cap_n: u32) -> Result<TruncatedSeries3> {
    expand(cap_n, half_open_gf_numerator(cap_n))
}

/// Expansion of `xt / ((1-x-y)(1-x-y-xt)(1-x-y-yt))`, the closed counterpart.
pub fn expand_closed_gf(cap_n: u32) -> Result<TruncatedSeries3> {
    expand(cap_n, closed_gf_numerator(cap_n))
}

/// Expansion of `j x^j (1-x) / (1-2x)^(j+2)`, whose coefficient of `x^n` is
/// the number of `j`-faces in the half-open decomposition of the `n`-cube.
pub fn expand_column_sum_gf(j: u32, cap: u32) -> Result<TruncatedSeries1> {
    if j == 0 {
        return Err(Error::InvalidArgument(
            "column-sum series needs j >= 1".into(),
        ));
    }
    guard_cap(cap)?;
    let numerator = TruncatedSeries1::from_terms(cap, &[(j, i64::from(j)), (j + 1, -i64::from(j))]);
    let denominator = TruncatedSeries1::from_terms(cap, &[(0, 1), (1, -2)]).pow(j + 2);
    Ok(&numerator * &denominator.inverse_unit_series()?)
}
