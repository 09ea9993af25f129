//! Cross-verification of every counting route against the others.
//!
//! Checks run in a fixed order and stop at the first disagreement, which is
//! reported with the offending `(n, k, j)` and both values.

use std::fmt;
use std::thread;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::chebyshev::{
    chebyshev_t, coefficient_closed_form, coefficient_factorial_form, verify_relation,
};
use crate::closed_form::{
    bottom_face_count, closed_f, cube_column_sum, cube_column_sum_forms_agree, half_open_f,
    half_open_f_by_codim,
};
use crate::error::{Error, Result};
use crate::exact_math::{pow2, Integer};
use crate::face_oracle::{check_guard, face_lattice, size_guard};
use crate::series::{expand_closed_gf, expand_column_sum_gf, expand_half_open_gf, MAX_SERIES_CAP};
use crate::FVector;

/// Largest Chebyshev degree checked.
pub const MAX_ELL: u32 = 24;

/// Test fixture: perturbs the half-open formula by +1 at one `(n, k, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fault {
    pub n: u32,
    pub k: u32,
    pub j: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Oracle comparisons run for `n <= max_n`.
    pub max_n: u32,
    /// Formula and series comparisons run for `n <= max_series_n`.
    pub max_series_n: u32,
    pub max_ell: u32,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_n: 7,
            max_series_n: 12,
            max_ell: MAX_ELL,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub check: &'static str,
    pub n: Option<u32>,
    pub k: Option<u32>,
    pub j: Option<u32>,
    pub left_label: &'static str,
    pub left: String,
    pub right_label: &'static str,
    pub right: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mismatch in {}", self.check)?;
        let coords: Vec<String> = [("n", self.n), ("k", self.k), ("j", self.j)]
            .iter()
            .filter_map(|(name, v)| v.map(|v| format!("{name}={v}")))
            .collect();
        if !coords.is_empty() {
            write!(f, " at ({})", coords.join(", "))?;
        }
        write!(
            f,
            ": {}={} vs {}={}",
            self.left_label, self.left, self.right_label, self.right
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub name: &'static str,
    pub cases: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Passed(Vec<CheckSummary>),
    Failed {
        passed: Vec<CheckSummary>,
        mismatch: Mismatch,
    },
}

impl Outcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Passed(_))
    }
}

enum Stop {
    Mismatch(Box<Mismatch>),
    Error(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Error(e)
    }
}

type Step = std::result::Result<usize, Stop>;

type Check = (&'static str, fn(&Verifier) -> Step);

#[derive(Clone, Copy, Default)]
struct At {
    n: Option<u32>,
    k: Option<u32>,
    j: Option<u32>,
}

fn at(n: u32, k: u32, j: u32) -> At {
    At {
        n: Some(n),
        k: Some(k),
        j: Some(j),
    }
}

struct Cmp {
    check: &'static str,
    left: &'static str,
    right: &'static str,
}

impl Cmp {
    fn eq(&self, at: At, left: &Integer, right: &Integer) -> std::result::Result<(), Stop> {
        if left == right {
            return Ok(());
        }
        Err(Stop::Mismatch(Box::new(Mismatch {
            check: self.check,
            n: at.n,
            k: at.k,
            j: at.j,
            left_label: self.left,
            left: left.to_string(),
            right_label: self.right,
            right: right.to_string(),
        })))
    }
}

struct Verifier {
    cfg: VerifyConfig,
}

impl Verifier {
    fn half_open(&self, n: u32, k: u32, j: u32) -> Result<Integer> {
        let v = half_open_f(n, k, j)?;
        Ok(match self.cfg.fault {
            Some(f) if (f.n, f.k, f.j) == (n, k, j) => v + 1u32,
            _ => v,
        })
    }

    fn oracle_equivalence(&self) -> Step {
        let max_n = self.cfg.max_n;
        let pairs: Vec<(u32, u32)> = (1..=max_n)
            .flat_map(|n| (1..=n).map(move |k| (n, k)))
            .collect();
        let lattices: Vec<Result<(FVector, FVector)>> = thread::scope(|s| {
            let handles: Vec<_> = pairs
                .iter()
                .map(|&(n, k)| {
                    s.spawn(move || {
                        let lat = face_lattice(n, k)?;
                        Ok((lat.f_vector(), lat.half_open_f_vector()))
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("oracle worker panicked"))
                .collect()
        });
        let closed = Cmp {
            check: "closed formula vs face oracle",
            left: "formula",
            right: "oracle",
        };
        let open = Cmp {
            check: "half-open formula vs face oracle",
            left: "formula",
            right: "oracle",
        };
        let mut cases = 0;
        for (&(n, k), res) in pairs.iter().zip(lattices) {
            let (closed_oracle, open_oracle) = res?;
            for j in 0..=n {
                open.eq(
                    at(n, k, j),
                    &self.half_open(n, k, j)?,
                    &open_oracle[j as usize],
                )?;
                closed.eq(at(n, k, j), &closed_f(n, k, j)?, &closed_oracle[j as usize])?;
                cases += 2;
            }
        }
        Ok(cases)
    }

    fn series_equivalence(&self) -> Step {
        let cap = self.cfg.max_series_n;
        let open_gf = expand_half_open_gf(cap)?;
        let closed_gf = expand_closed_gf(cap)?;
        let open = Cmp {
            check: "half-open formula vs generating function",
            left: "formula",
            right: "series",
        };
        let closed = Cmp {
            check: "closed formula vs generating function",
            left: "formula",
            right: "series",
        };
        let mut cases = 0;
        for n in 1..=cap {
            for k in 1..=n {
                for j in 1..=n {
                    open.eq(
                        at(n, k, j),
                        &self.half_open(n, k, j)?,
                        &open_gf.face_count(n, k, j)?,
                    )?;
                    closed.eq(
                        at(n, k, j),
                        &closed_f(n, k, j)?,
                        &closed_gf.face_count(n, k, j)?,
                    )?;
                    cases += 2;
                }
                let zero = Cmp {
                    check: "generating functions vanish at t^0",
                    left: "series",
                    right: "expected",
                };
                zero.eq(at(n, k, 0), &open_gf.face_count(n, k, 0)?, &Integer::zero())?;
                zero.eq(
                    at(n, k, 0),
                    &closed_gf.face_count(n, k, 0)?,
                    &Integer::zero(),
                )?;
            }
        }
        Ok(cases)
    }

    fn alternative_forms(&self) -> Step {
        let cap = self.cfg.max_series_n;
        let codim = Cmp {
            check: "half-open formula vs codimension form",
            left: "formula",
            right: "codim",
        };
        let bottom = Cmp {
            check: "closed minus half-open vs bottom faces",
            left: "difference",
            right: "bottom",
        };
        let mut cases = 0;
        for n in 1..=cap {
            for k in 1..=n {
                for j in 0..=n {
                    if j >= 1 {
                        codim.eq(
                            at(n, k, j),
                            &self.half_open(n, k, j)?,
                            &half_open_f_by_codim(n, k, n - j)?,
                        )?;
                    }
                    let diff = closed_f(n, k, j)? - self.half_open(n, k, j)?;
                    bottom.eq(at(n, k, j), &diff, &bottom_face_count(n, k, j)?)?;
                    cases += 1;
                }
            }
        }
        Ok(cases)
    }

    fn facet_counts(&self) -> Step {
        let cmp = Cmp {
            check: "facet counts",
            left: "formula",
            right: "expected",
        };
        let mut cases = 0;
        for n in 2..=self.cfg.max_series_n {
            for k in 1..=n {
                let expected = match k {
                    1 => n + 1,
                    k if k == n => n,
                    _ => 2 * n + 1,
                };
                cmp.eq(
                    at(n, k, n - 1),
                    &self.half_open(n, k, n - 1)?,
                    &Integer::from(expected),
                )?;
                cases += 1;
            }
        }
        Ok(cases)
    }

    fn structural(&self) -> Step {
        let cap = self.cfg.max_series_n;
        let mut cases = 0;
        for n in 1..=cap {
            for k in 1..=n {
                let mut closed_euler = Integer::zero();
                let mut open_euler = Integer::zero();
                for j in 0..=n {
                    let (c, o) = (closed_f(n, k, j)?, self.half_open(n, k, j)?);
                    if j % 2 == 0 {
                        closed_euler += c;
                        open_euler += o;
                    } else {
                        closed_euler -= c;
                        open_euler -= o;
                    }
                    Cmp {
                        check: "closed complement symmetry",
                        left: "f(n,k)",
                        right: "f(n,n+1-k)",
                    }
                    .eq(
                        at(n, k, j),
                        &closed_f(n, k, j)?,
                        &closed_f(n, n + 1 - k, j)?,
                    )?;
                }
                let where_ = At {
                    n: Some(n),
                    k: Some(k),
                    j: None,
                };
                Cmp {
                    check: "Euler relation (closed)",
                    left: "alternating sum",
                    right: "expected",
                }
                .eq(where_, &closed_euler, &Integer::one())?;
                Cmp {
                    check: "Euler relation (half-open)",
                    left: "alternating sum",
                    right: "expected",
                }
                .eq(where_, &open_euler, &Integer::zero())?;
                cases += 1;
            }
        }
        Ok(cases)
    }

    fn column_sums(&self) -> Step {
        let cap = self.cfg.max_series_n;
        let open_gf = expand_half_open_gf(cap)?;
        let mut cases = 0;
        for j in 1..=cap {
            let gf = expand_column_sum_gf(j, cap)?;
            let diagonal = open_gf.diagonal_slice(j)?;
            for n in 1..=cap {
                let where_ = At {
                    n: Some(n),
                    k: None,
                    j: Some(j),
                };
                if n < j {
                    Cmp {
                        check: "column-sum series below j",
                        left: "series",
                        right: "expected",
                    }
                    .eq(where_, &gf.coefficient(n)?, &Integer::zero())?;
                    continue;
                }
                let formula = cube_column_sum(n, j)?;
                let mut direct = Integer::zero();
                for k in 1..=n {
                    direct += self.half_open(n, k, j)?;
                }
                Cmp {
                    check: "column sum vs summed formula",
                    left: "column sum",
                    right: "summed",
                }
                .eq(where_, &formula, &direct)?;
                Cmp {
                    check: "column sum vs column-sum series",
                    left: "column sum",
                    right: "series",
                }
                .eq(where_, &formula, &gf.coefficient(n)?)?;
                Cmp {
                    check: "column-sum series vs diagonal of trivariate series",
                    left: "column series",
                    right: "diagonal",
                }
                .eq(where_, &gf.coefficient(n)?, &diagonal.coefficient(n)?)?;
                if !cube_column_sum_forms_agree(n, j)? {
                    return Err(Stop::Mismatch(Box::new(Mismatch {
                        check: "column sum integer vs rational form",
                        n: Some(n),
                        k: None,
                        j: Some(j),
                        left_label: "integer",
                        left: formula.to_string(),
                        right_label: "rational",
                        right: crate::closed_form::cube_column_sum_rational(n, j)?.to_string(),
                    })));
                }
                cases += 1;
            }
        }
        Ok(cases)
    }

    fn cube_decomposition(&self) -> Step {
        let mut cases = 0;
        for n in 1..=self.cfg.max_n {
            let mut totals = vec![Integer::zero(); n as usize + 1];
            for k in 1..=n {
                let cell = face_lattice(n, k)?.half_open_f_vector();
                for (t, c) in totals.iter_mut().zip(cell.entries()) {
                    *t += c;
                }
            }
            let vertices = At {
                n: Some(n),
                k: None,
                j: Some(0),
            };
            Cmp {
                check: "cube decomposition vertex total",
                left: "oracle",
                right: "2^n-1",
            }
            .eq(vertices, &totals[0], &(pow2(n) - 1u32))?;
            for j in 1..=n {
                let where_ = At {
                    n: Some(n),
                    k: None,
                    j: Some(j),
                };
                Cmp {
                    check: "column sum vs cube decomposition oracle",
                    left: "column sum",
                    right: "oracle",
                }
                .eq(where_, &cube_column_sum(n, j)?, &totals[j as usize])?;
                cases += 1;
            }
        }
        Ok(cases)
    }

    fn chebyshev(&self) -> Step {
        let mut cases = 0;
        for ell in 1..=self.cfg.max_ell {
            let t = chebyshev_t(ell);
            for m in 0..=ell / 2 {
                let where_ = At {
                    n: None,
                    k: None,
                    j: None,
                };
                let c = t.coefficient(ell - 2 * m);
                let cmp = Cmp {
                    check: "Chebyshev recurrence vs closed forms",
                    left: "recurrence",
                    right: "closed form",
                };
                cmp.eq(where_, &c, &coefficient_closed_form(ell, m)?)
                    .map_err(|e| label_ell(e, ell, m))?;
                cmp.eq(where_, &c, &coefficient_factorial_form(ell, m)?)
                    .map_err(|e| label_ell(e, ell, m))?;
                if m >= 2 {
                    let r = verify_relation(ell, m)?;
                    Cmp {
                        check: "Chebyshev coefficient vs column sum",
                        left: "|coefficient|",
                        right: "column sum / j",
                    }
                    .eq(where_, &r.lhs, &r.rhs)
                    .map_err(|e| label_ell(e, ell, m))?;
                }
                cases += 1;
            }
        }
        Ok(cases)
    }
}

/// Tags a Chebyshev mismatch with `ell` and `m`; for `m >= 2` the `n`, `j`
/// slots carry the face parameters `n = ell-m-1`, `j = m-1`.
fn label_ell(stop: Stop, ell: u32, m: u32) -> Stop {
    match stop {
        Stop::Mismatch(mut mm) => {
            if m >= 2 {
                mm.j = Some(m - 1);
                mm.n = Some(ell - m - 1);
            }
            mm.left = format!("{} (ell={ell}, m={m})", mm.left);
            Stop::Mismatch(mm)
        }
        other => other,
    }
}

/// Runs every check in order. Errors are reserved for bad configuration.
pub fn run(cfg: &VerifyConfig) -> Result<Outcome> {
    if cfg.max_n == 0 || cfg.max_series_n == 0 {
        return Err(Error::InvalidArgument(
            "--max-n and --max-series-n must be at least 1".into(),
        ));
    }
    check_guard(cfg.max_n, size_guard())?;
    if cfg.max_series_n > MAX_SERIES_CAP {
        return Err(Error::SizeGuard {
            what: "series cap",
            requested: cfg.max_series_n,
            guard: MAX_SERIES_CAP,
            hint: "expansions are dense in the cap",
        });
    }
    let v = Verifier { cfg: cfg.clone() };
    let steps: [Check; 8] = [
        ("formula vs face oracle", Verifier::oracle_equivalence),
        (
            "formula vs generating functions",
            Verifier::series_equivalence,
        ),
        ("alternative formula forms", Verifier::alternative_forms),
        ("facet counts", Verifier::facet_counts),
        ("Euler relation and symmetry", Verifier::structural),
        ("column sums", Verifier::column_sums),
        ("cube decomposition oracle", Verifier::cube_decomposition),
        ("Chebyshev identity", Verifier::chebyshev),
    ];
    drive(&v, &steps)
}

/// Only the generating-function checks, for `series-check`.
pub fn run_series_checks(max_series_n: u32) -> Result<Outcome> {
    if max_series_n == 0 {
        return Err(Error::InvalidArgument(
            "--max-series-n must be at least 1".into(),
        ));
    }
    if max_series_n > MAX_SERIES_CAP {
        return Err(Error::SizeGuard {
            what: "series cap",
            requested: max_series_n,
            guard: MAX_SERIES_CAP,
            hint: "expansions are dense in the cap",
        });
    }
    let cfg = VerifyConfig {
        max_series_n,
        ..VerifyConfig::default()
    };
    let steps: [Check; 2] = [
        (
            "formula vs generating functions",
            Verifier::series_equivalence,
        ),
        ("column sums", Verifier::column_sums),
    ];
    drive(&Verifier { cfg }, &steps)
}

fn drive(v: &Verifier, steps: &[Check]) -> Result<Outcome> {
    let mut passed = Vec::new();
    for &(name, step) in steps {
        match step(v) {
            Ok(cases) => passed.push(CheckSummary { name, cases }),
            Err(Stop::Mismatch(mismatch)) => {
                return Ok(Outcome::Failed {
                    passed,
                    mismatch: *mismatch,
                })
            }
            Err(Stop::Error(e)) => return Err(e),
        }
    }
    Ok(Outcome::Passed(passed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let cfg = VerifyConfig {
            max_n: 4,
            max_series_n: 6,
            max_ell: 12,
            fault: None,
        };
        let out = run(&cfg).unwrap();
        assert!(out.is_pass(), "{out:?}");
    }

    #[test]
    fn fault_is_reported_at_its_tuple() {
        let cfg = VerifyConfig {
            max_n: 4,
            max_series_n: 6,
            max_ell: 12,
            fault: Some(Fault { n: 3, k: 2, j: 1 }),
        };
        let Outcome::Failed { mismatch, .. } = run(&cfg).unwrap() else {
            panic!("corrupted formula must fail");
        };
        assert_eq!(
            (mismatch.n, mismatch.k, mismatch.j),
            (Some(3), Some(2), Some(1))
        );
        assert_eq!(mismatch.left, "10");
        assert_eq!(mismatch.right, "9");
        assert_eq!(
            mismatch.to_string(),
            "mismatch in half-open formula vs face oracle at (n=3, k=2, j=1): formula=10 vs oracle=9"
        );
    }

    #[test]
    fn fault_beyond_oracle_range_is_caught_by_series() {
        let cfg = VerifyConfig {
            max_n: 3,
            max_series_n: 6,
            max_ell: 8,
            fault: Some(Fault { n: 5, k: 2, j: 3 }),
        };
        let Outcome::Failed { mismatch, passed } = run(&cfg).unwrap() else {
            panic!("corrupted formula must fail");
        };
        assert_eq!(passed.len(), 1);
        assert_eq!(
            (mismatch.n, mismatch.k, mismatch.j),
            (Some(5), Some(2), Some(3))
        );
    }

    #[test]
    fn guards() {
        let cfg = VerifyConfig {
            max_n: 99,
            ..VerifyConfig::default()
        };
        assert!(matches!(run(&cfg), Err(Error::SizeGuard { .. })));
        let cfg = VerifyConfig {
            max_series_n: 0,
            ..VerifyConfig::default()
        };
        assert!(run(&cfg).is_err());
    }
}
