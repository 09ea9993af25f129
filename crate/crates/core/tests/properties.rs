use num_traits::{One, Zero};
use proptest::prelude::*;

use hyperfv::cli::{Method, OutputRecord};
use hyperfv::exact_math::{affine_dimension, binomial, multinomial, Integer, Rational};
use hyperfv::series::{TruncatedSeries1, TruncatedSeries3};

/// Rank by plain Gaussian elimination over the rationals.
fn rational_rank(points: &[Vec<i64>]) -> usize {
    let origin = &points[0];
    let mut rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(origin)
                .map(|(x, o)| Rational::from(Integer::from(x - o)))
                .collect()
        })
        .collect();
    let cols = origin.len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let factor = &row[c] / &pivot[c];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &factor * y;
            }
        }
        rank += 1;
    }
    rank
}

fn point_cloud() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6).prop_flat_map(|d| prop::collection::vec(prop::collection::vec(-3i64..=3, d), 1..8))
}

proptest! {
    #[test]
    fn binomial_symmetry(a in 0u64..80, b in 0u64..80) {
        prop_assume!(b <= a);
        prop_assert_eq!(binomial(a, b as i64), binomial(a, (a - b) as i64));
    }

    #[test]
    fn two_part_multinomial_is_binomial(a in 0u64..60, b in 0u64..60) {
        prop_assume!(b <= a);
        prop_assert_eq!(multinomial(a, &[b, a - b]).unwrap(), binomial(a, b as i64));
    }

    #[test]
    fn affine_dimension_matches_rational_elimination(points in point_cloud()) {
        prop_assert_eq!(affine_dimension(&points).unwrap(), rational_rank(&points));
    }

    #[test]
    fn affine_dimension_invariances(
        points in point_cloud(),
        shift in prop::collection::vec(-5i64..=5, 6),
        seed in any::<u64>(),
    ) {
        let dim = affine_dimension(&points).unwrap();
        let moved: Vec<Vec<i64>> = points
            .iter()
            .map(|p| p.iter().zip(&shift).map(|(x, s)| x + s).collect())
            .collect();
        prop_assert_eq!(affine_dimension(&moved).unwrap(), dim);
        let mut shuffled = points.clone();
        let len = shuffled.len();
        shuffled.rotate_left((seed % len as u64) as usize);
        if len > 2 {
            shuffled.swap(0, len - 1);
        }
        prop_assert_eq!(affine_dimension(&shuffled).unwrap(), dim);
    }

    #[test]
    fn unit_series_inverse(
        terms in prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), -3i64..=3), 0..8),
    ) {
        let mut all = vec![((0, 0, 0), 1)];
        all.extend(terms.into_iter().filter(|(e, _)| *e != (0, 0, 0)));
        let d = TruncatedSeries3::from_terms(6, 4, &all);
        let inv = d.inverse_unit_series().unwrap();
        prop_assert_eq!(&d * &inv, TruncatedSeries3::one(6, 4));
    }

    #[test]
    fn unit_series_inverse_univariate(terms in prop::collection::vec((1u32..6, -4i64..=4), 0..6)) {
        let mut all = vec![(0, 1)];
        all.extend(terms);
        let d = TruncatedSeries1::from_terms(10, &all);
        let inv = d.inverse_unit_series().unwrap();
        let prod = &d * &inv;
        prop_assert!(prod.coeffs()[0].is_one());
        prop_assert!(prod.coeffs()[1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn output_record_json_round_trip(
        n in 1u32..40,
        k in proptest::option::of(1u32..40),
        j in proptest::option::of(0u32..40),
        half_open in any::<bool>(),
        values in prop::collection::vec(any::<i128>(), 1..6),
    ) {
        let record = OutputRecord {
            n,
            k,
            j,
            half_open,
            method: Method::Series,
            values: values.into_iter().map(Integer::from).collect(),
            source: None,
        };
        let text = serde_json::to_string(std::slice::from_ref(&record)).unwrap();
        let back: Vec<OutputRecord> = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, vec![record]);
    }
}

#[test]
fn huge_values_render_exactly() {
    let big = binomial(200, 100);
    let record = OutputRecord {
        n: 200,
        k: Some(100),
        j: Some(0),
        half_open: true,
        method: Method::Formula,
        values: vec![big.clone()],
        source: None,
    };
    let text = serde_json::to_string(&record).unwrap();
    assert!(text.contains(&format!("\"{big}\"")));
    assert_eq!(big.to_string().len(), 59);
}
