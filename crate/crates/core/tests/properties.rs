//! Randomized invariants of the series arithmetic, partitions, ribbons and `chi`.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

use pitgf::brion::split_sums;
use pitgf::formulas::{chi_bos, chi_det, chi_explicit};
use pitgf::oracle::{enumerate_chi, minimal_weight};
use pitgf::partition::{a_shifted, config_battery, holes, particles};
use pitgf::qseries::{det, det_by_permutations, qbinom};
use pitgf::ribbon::{is_ribbon, is_ribbon_by_jump, Cell};
use pitgf::{Partition, QSeries, Sign, EXACT};

fn series() -> impl Strategy<Value = QSeries> {
    (-3i64..4, prop::collection::vec(-20i64..21, 0..9), 0i64..10, any::<bool>()).prop_map(|(low, coeffs, extra, exact)| {
        let order = if exact { EXACT } else { low + extra };
        QSeries::from_i64s(low, &coeffs, order)
    })
}

/// The exact Laurent polynomial with the known coefficients of `s`.
fn exact(s: &QSeries) -> QSeries {
    if s.is_zero() {
        return QSeries::zero();
    }
    let low = s.valuation().unwrap_or(0);
    QSeries::from_coeffs(low, s.dense(low, s.degree().unwrap_or(low)), EXACT)
}

/// An exact Laurent polynomial and an order to truncate it at.
fn exact_and_order() -> impl Strategy<Value = (QSeries, i64)> {
    (-3i64..4, prop::collection::vec(-20i64..21, 0..12), -2i64..10).prop_map(|(low, coeffs, order)| (QSeries::from_i64s(low, &coeffs, EXACT), order))
}

fn unit_series() -> impl Strategy<Value = QSeries> {
    (-2i64..3, any::<bool>(), prop::collection::vec(-9i64..10, 0..7), 1i64..10).prop_map(|(low, neg, tail, extra)| {
        let mut coeffs = vec![if neg { -1 } else { 1 }];
        coeffs.extend(tail);
        QSeries::from_i64s(low, &coeffs, low + extra)
    })
}

fn partition(rows: usize, max_part: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=rows).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).unwrap()
    })
}

fn binomial(n: i64, k: i64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn value_at_one(s: &QSeries) -> BigInt {
    s.terms().map(|(_, c)| c.clone()).sum()
}

/// Cells of the ribbon traced from its top-right box by `down` / left steps.
fn path_ribbon(steps: &[bool]) -> (Vec<Cell>, i64, i64) {
    let left = steps.iter().filter(|&&d| !d).count() as i64;
    let down = steps.len() as i64 - left;
    let (mut row, mut col) = (1, left + 1);
    let mut cells = vec![Cell::new(row, col)];
    for &d in steps {
        if d {
            row += 1;
        } else {
            col -= 1;
        }
        cells.push(Cell::new(row, col));
    }
    (cells, down, left)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn exact_series_form_a_commutative_ring(a in series(), b in series(), c in series()) {
        let (a, b, c) = (exact(&a), exact(&b), exact(&c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &QSeries::zero(), a.clone());
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &QSeries::one(), a.clone());
    }

    #[test]
    fn truncated_series_satisfy_the_axioms_on_their_known_window(a in series(), b in series(), c in series()) {
        prop_assert!((&a + &b).agrees_with(&(&b + &a)));
        prop_assert!((&(&a + &b) + &c).agrees_with(&(&a + &(&b + &c))));
        prop_assert!((&a * &b).agrees_with(&(&b * &a)));
        prop_assert!((&(&a * &b) * &c).agrees_with(&(&a * &(&b * &c))));
        prop_assert!((&a * &(&b + &c)).agrees_with(&(&(&a * &b) + &(&a * &c))));
    }

    #[test]
    fn truncation_is_sound((x, ox) in exact_and_order(), (y, oy) in exact_and_order(), k in -3i64..8) {
        let (a, b) = (x.truncate(ox), y.truncate(oy));
        prop_assert!((&a + &b).agrees_with(&(&x + &y)));
        prop_assert!((&a - &b).agrees_with(&(&x - &y)));
        prop_assert!((&a * &b).agrees_with(&(&x * &y)));
        prop_assert_eq!((&x + &y).truncate(k), &x.truncate(k) + &y.truncate(k));
    }

    #[test]
    fn inverse_is_two_sided_and_sound(a in unit_series(), more in prop::collection::vec(-9i64..10, 0..6)) {
        let inv = a.inverse().unwrap();
        let left = &a * &inv;
        prop_assert_eq!(&left, &(&inv * &a));
        prop_assert!(left.agrees_with(&QSeries::one()));
        // Any completion of `a` has an inverse that agrees with `inv` on its window.
        let low = a.valuation().unwrap();
        let mut coeffs = a.dense(low, a.order());
        coeffs.extend(more.into_iter().map(BigInt::from));
        let completed = QSeries::from_coeffs(low, coeffs, EXACT);
        prop_assert!(completed.inverse_to(inv.order() + 5).unwrap().agrees_with(&inv));
    }

    #[test]
    fn determinant_expansions_agree(n in 1usize..5, entries in prop::collection::vec(series(), 16)) {
        let matrix: Vec<Vec<QSeries>> = (0..n).map(|i| entries[i * n..(i + 1) * n].to_vec()).collect();
        let (cofactor, expanded) = (det(&matrix).unwrap(), det_by_permutations(&matrix).unwrap());
        prop_assert!(cofactor.agrees_with(&expanded));
        let exact: Vec<Vec<QSeries>> = matrix.iter().map(|row| row.iter().map(exact).collect()).collect();
        prop_assert_eq!(det(&exact).unwrap(), det_by_permutations(&exact).unwrap());
    }

    #[test]
    fn gaussian_binomials(n in 0i64..14, k_seed in 0i64..100) {
        let k = k_seed % (n + 1);
        prop_assert_eq!(qbinom(n, k), qbinom(n, n - k));
        prop_assert_eq!(value_at_one(&qbinom(n, k)), binomial(n, k));
        prop_assert_eq!(qbinom(n, k).degree(), Some(k * (n - k)));
        if n > 0 && k > 0 && k < n {
            let pascal = &qbinom(n - 1, k - 1) + &qbinom(n - 1, k).shift(k);
            prop_assert_eq!(qbinom(n, k), pascal);
        }
    }

    #[test]
    fn gaussian_binomial_theorem(n in 0i64..9) {
        // prod_{i<n} (1 + q^i t) = sum_k q^(k(k-1)/2) [n,k] t^k, compared at t = q^s.
        for s in 0..3i64 {
            let product: QSeries = (0..n).map(|i| &QSeries::one() + &QSeries::exact_monomial(Sign::Plus, i + s)).product();
            let sum: QSeries = (0..=n).map(|k| qbinom(n, k).shift(k * (k - 1) / 2 + k * s)).sum();
            prop_assert_eq!(product, sum);
        }
    }

    #[test]
    fn particles_and_holes_tile_the_integers(lambda in partition(7, 7), shift in -5i64..6) {
        let lo = shift - 30;
        let hi = shift + 30;
        let mut seen: Vec<i64> = particles(&lambda, shift).take_while(|&x| x >= lo).filter(|&x| x <= hi).collect();
        seen.extend(holes(&lambda, shift).take_while(|&x| x <= hi).filter(|&x| x >= lo));
        seen.sort();
        prop_assert_eq!(seen, (lo..=hi).collect::<Vec<i64>>());
    }

    #[test]
    fn conjugation_is_an_involution(lambda in partition(8, 8)) {
        prop_assert_eq!(lambda.conjugate().conjugate(), lambda.clone());
        prop_assert_eq!(lambda.conjugate().size(), lambda.size());
    }

    #[test]
    fn ribbon_shape_matches_particle_jump(outer in partition(5, 5), inner in partition(5, 5)) {
        if inner.is_subset_of(&outer) {
            prop_assert_eq!(is_ribbon(&outer, &inner).unwrap(), is_ribbon_by_jump(&outer, &inner).unwrap());
        } else {
            prop_assert!(is_ribbon_by_jump(&outer, &inner).is_err());
        }
    }

    #[test]
    fn a_shifted_is_antisymmetric(exps in prop::collection::vec(-4i64..6, 2..5), args in prop::collection::vec(-4i64..5, 4), i_seed in 0usize..10) {
        let n = exps.len();
        let args = &args[..n];
        let i = i_seed % (n - 1);
        let mut swapped = exps.clone();
        swapped.swap(i, i + 1);
        prop_assert_eq!(a_shifted(&swapped, args), -a_shifted(&exps, args));
        let mut repeated = exps.clone();
        repeated[i + 1] = repeated[i];
        prop_assert!(a_shifted(&repeated, args).is_zero());
    }

    #[test]
    fn split_sums_agree_inside_the_rectangle(steps in prop::collection::vec(any::<bool>(), 1..7), nu in 0i64..7, d_seed in 0i64..100) {
        let (cells, down, left) = path_ribbon(&steps);
        let span = left - 1 - (1 - down) + 1;
        prop_assume!(span > 0);
        let d = 1 - down + d_seed % span;
        let mu = nu - d;
        prop_assume!(mu >= 0);
        let target = (cells.len() as i64) * nu.max(mu) + 10;
        let (h, v) = split_sums(&cells, nu, mu, target).unwrap();
        prop_assert_eq!(h, v);
    }
}

fn battery_strategy(max_n: i64, max_m: i64, max_part: u32) -> impl Strategy<Value = pitgf::PitConfig> {
    let battery = config_battery(max_n, max_m, max_part);
    (0..battery.len()).prop_map(move |i| battery[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chi_has_nonnegative_coefficients_and_support(c in battery_strategy(3, 3, 3)) {
        let s = chi_det(&c, 8);
        prop_assert!(s.valuation().is_none_or(|v| v >= 0));
        prop_assert!(s.terms().all(|(_, k)| !k.is_negative()));
        prop_assert_eq!(s.order(), 8);
    }

    #[test]
    fn formulas_agree_and_are_stable_under_truncation(c in battery_strategy(3, 3, 3), k in 0i64..8) {
        let det = chi_det(&c, 2 * k + 2);
        prop_assert_eq!(det.truncate(k), chi_det(&c, k));
        prop_assert_eq!(&chi_bos(&c, 2 * k + 2), &det);
        prop_assert_eq!(&chi_explicit(&c, 2 * k + 2), &det);
    }

    #[test]
    fn oracle_is_stable_under_truncation(c in battery_strategy(2, 2, 2), k in 0i64..5) {
        prop_assert_eq!(enumerate_chi(&c, 2 * k).unwrap().truncate(k), enumerate_chi(&c, k).unwrap());
        prop_assert_eq!(enumerate_chi(&c, k).unwrap(), chi_det(&c, k));
    }

    #[test]
    fn transposition_shifts_chi_by_a_monomial(c in battery_strategy(3, 3, 3)) {
        let t = c.transpose();
        let d = minimal_weight(&t) - minimal_weight(&c);
        prop_assert_eq!(chi_det(&t, 8 + d), chi_det(&c, 8).shift(d));
    }
}
