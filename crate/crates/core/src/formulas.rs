//! Closed-form generating functions.
//!
//! Three equivalent formulas for `chi` are implemented:
//! * [`chi_det`], a determinant of a block matrix of size `m + n - r`;
//! * [`chi_bos`], a sum over atypical tuples `A_1 > ... > A_r >= 0` of
//!   products of two antisymmetric evaluations;
//! * [`chi_explicit`], the same sum with both determinants expanded over
//!   permutations and `A` restricted to the values `-L_s`, `s > n - r`.
//!
//! Each carries the normalization `q^Delta / (q)_inf^(m+n)`; in the expanded
//! form `q^Delta` is already folded into each exponent.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::partition::{a_shifted, ConfigError, FrobeniusData, Partition, PitConfig};
use crate::perm;
use crate::qseries::{det, inverse_qpochhammer_infinite, QSeries, Sign};

/// `(-1)^(mn - r)`, the sign in front of the determinant formula.
pub fn det_sign(n: usize, m: usize, r: usize) -> Sign {
    Sign::from_parity((m * n) as i64 - r as i64)
}

/// `(-1)^(r(m+n)) (-1)^(sum A)`, the sign of one bosonic term.
pub fn bos_sign(n: usize, m: usize, r: usize, a_values: &[i64]) -> Sign {
    Sign::from_parity((r * (m + n)) as i64 + a_values.iter().sum::<i64>())
}

/// `(-1)^(r(m+n)) (-1)^(|sigma| + |tau| + sum A)`, the sign of one expanded term.
pub fn explicit_sign(n: usize, m: usize, r: usize, sigma: &[usize], tau: &[usize], a_values: &[i64]) -> Sign {
    bos_sign(n, m, r, a_values) * perm::sign(sigma) * perm::sign(tau)
}

fn binom2(a: i64) -> i64 {
    a * (a - 1) / 2
}

/// `sum_{a>=0} (-1)^a q^(binom(a+1,2) + d a)` through `q^order`.
///
/// Terms stop once the exponent exceeds `order` while increasing.
pub fn theta_entry(d: i64, order: i64) -> QSeries {
    let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
    let mut a = 0i64;
    loop {
        let e = binom2(a + 1) + d * a;
        if e > order && a + 1 + d > 0 {
            break;
        }
        if e <= order {
            *terms.entry(e).or_default() += Sign::from_parity(a).to_i64();
        }
        a += 1;
    }
    series_from_terms(terms, order)
}

fn series_from_terms(terms: BTreeMap<i64, BigInt>, order: i64) -> QSeries {
    let Some((&low, _)) = terms.iter().next() else {
        return QSeries::zero_to(order);
    };
    let high = *terms.keys().next_back().unwrap();
    let mut dense = vec![BigInt::default(); (high - low + 1) as usize];
    for (e, c) in terms {
        dense[(e - low) as usize] += c;
    }
    QSeries::from_coeffs(low, dense, order)
}

/// `numerator / (q)_inf^power` through `q^target`; the numerator must be
/// known through `q^target`.
pub(crate) fn divide_by_pochhammer_power(numerator: &QSeries, power: u32, target: i64) -> QSeries {
    assert!(numerator.order() >= target, "numerator known through q^{} < q^{target}", numerator.order());
    let num = numerator.truncate(target);
    let Some(v) = num.valuation() else {
        return QSeries::zero_to(target);
    };
    let inv = inverse_qpochhammer_infinite(power, target - v.min(0));
    let out = (&num * &inv).truncate(target);
    debug_assert_eq!(out.order(), target);
    out
}

/// `R(d; q) = sum_i (-1)^i q^(i(i+1)/2 + d i) / (q)_inf^2`, the generating
/// function of V-partitions with `d = nu_1 - mu_1`.
pub fn r_series(d: i64, order: i64) -> QSeries {
    divide_by_pochhammer_power(&theta_entry(d, order), 2, order)
}

/// Wall generating function `chi^{n,0}`:
/// `q^(sum (lambda_i+n-i)(nu_i+n-i)) a_{nu+rho}(q^(-lambda-rho)) / (q)_inf^n`.
pub fn chi_wall(n: usize, nu: &Partition, lambda: &Partition, order: i64) -> Result<QSeries, ConfigError> {
    PitConfig::new(n, 0, nu.clone(), Partition::empty(), lambda.clone())?;
    let shifted_nu: Vec<i64> = (1..=n).map(|i| nu.part(i) + (n - i) as i64).collect();
    let shifted_lambda: Vec<i64> = (1..=n).map(|i| lambda.part(i) + (n - i) as i64).collect();
    let prefactor: i64 = shifted_nu.iter().zip(&shifted_lambda).map(|(a, b)| a * b).sum();
    let args: Vec<i64> = shifted_lambda.iter().map(|x| -x).collect();
    let numerator = a_shifted(&shifted_nu, &args).shift(prefactor);
    Ok(divide_by_pochhammer_power(&numerator, n as u32, order))
}

/// `q^(-binom(n,3)) V(1, q, ..., q^(n-1)) / (q)_inf^n`: plane partitions
/// whose row `n+1` vanishes.
pub fn macmahon_staircase(n: usize, order: i64) -> QSeries {
    let mut vandermonde = QSeries::one();
    for i in 0..n as i64 {
        for j in i + 1..n as i64 {
            let factor = &QSeries::exact_monomial(Sign::Plus, i) - &QSeries::exact_monomial(Sign::Plus, j);
            vandermonde = &vandermonde * &factor;
        }
    }
    let n = n as i64;
    let shift = -(n * (n - 1) * (n - 2) / 6);
    divide_by_pochhammer_power(&vandermonde.shift(shift), n as u32, order)
}

/// `prod_{k>=1} (1 - q^k)^(-k)`, all plane partitions.
pub fn macmahon_product(order: i64) -> QSeries {
    let mut denominator = QSeries::one();
    for k in 1..=order.max(0) {
        let factor = &QSeries::one() - &QSeries::exact_monomial(Sign::Plus, k);
        denominator = (&denominator * &factor.pow(k as u32)).truncate(order);
    }
    denominator.truncate(order).inverse_to(order).expect("constant term is 1")
}

/// The block matrix of the determinant formula with top-left entries known
/// through `q^working_order`.
pub fn lgv_block_matrix(config: &PitConfig, working_order: i64) -> Vec<Vec<QSeries>> {
    block_matrix(&FrobeniusData::new(config), working_order, false)
}

/// The block matrix with column `n + j` of the top-right block rescaled by
/// `(-1)^(Q_j) q^(binom(Q_j+1, 2))`, as used in the Cauchy-Binet factorization.
pub fn modified_block_matrix(config: &PitConfig, working_order: i64) -> Vec<Vec<QSeries>> {
    block_matrix(&FrobeniusData::new(config), working_order, true)
}

fn block_matrix(frob: &FrobeniusData, working_order: i64, rescaled: bool) -> Vec<Vec<QSeries>> {
    let (n, m) = (frob.nu_shifted.len(), frob.mu_shifted.len());
    let r = frob.atypicality;
    let mut rows = Vec::with_capacity(m + n - r);
    for &mu_i in &frob.mu_shifted {
        let mut row: Vec<QSeries> = frob.nu_shifted.iter().map(|&nu_j| theta_entry(nu_j - mu_i, working_order)).collect();
        for &q_j in &frob.col_arms {
            let mut entry = QSeries::exact_monomial(Sign::Plus, -mu_i * q_j);
            if rescaled {
                entry = entry.shift(binom2(q_j + 1)).signed(Sign::from_parity(q_j));
            }
            row.push(entry);
        }
        rows.push(row);
    }
    for &p_i in &frob.row_arms {
        let mut row: Vec<QSeries> =
            frob.nu_shifted.iter().map(|&nu_j| QSeries::exact_monomial(Sign::Plus, -nu_j * (p_i + 1))).collect();
        row.extend((0..m - r).map(|_| QSeries::zero()));
        rows.push(row);
    }
    rows
}

/// The determinant formula:
/// `chi = (-1)^(mn-r) q^Delta det(block matrix) / (q)_inf^(m+n)`.
pub fn chi_det(config: &PitConfig, order: i64) -> QSeries {
    let frob = FrobeniusData::new(config);
    let (n, m, r) = (config.n(), config.m(), frob.atypicality);
    let target = order - frob.grading_shift;
    let mut working = target;
    let numerator = loop {
        let matrix = block_matrix(&frob, working, false);
        let d = det(&matrix).expect("block matrix is square and within the cap");
        if d.order() >= target {
            break d;
        }
        working += target - d.order();
    };
    let numerator = numerator.signed(det_sign(n, m, r)).shift(frob.grading_shift);
    divide_by_pochhammer_power(&numerator, (m + n) as u32, order)
}

/// Lower bound for the exponent contributed by atypical values, relative to
/// the `q^Delta` normalization: `sum_i f(A_i) + base`.
#[derive(Clone, Copy, Debug)]
struct TupleBound {
    min_nu: i64,
    max_mu: i64,
    base: i64,
}

impl TupleBound {
    fn new(frob: &FrobeniusData) -> TupleBound {
        let min_nu = frob.nu_shifted.iter().copied().min().unwrap_or(0);
        let max_nu = frob.nu_shifted.iter().copied().max().unwrap_or(0);
        let max_mu = frob.mu_shifted.iter().copied().max().unwrap_or(0);
        let base = -frob.row_arms.iter().map(|p| (p + 1) * max_nu).sum::<i64>()
            - frob.col_arms.iter().map(|q| q * max_mu).sum::<i64>();
        TupleBound { min_nu, max_mu, base }
    }

    fn per_value(&self, a: i64) -> i64 {
        binom2(a + 1) + a * (self.min_nu - self.max_mu)
    }

    /// Smallest `per_value` over nonnegative integers, and where it is attained.
    fn minimum(&self) -> (i64, i64) {
        let slope = self.min_nu - self.max_mu;
        let at = (-slope).max(0);
        let best = [at - 1, at, at + 1]
            .into_iter()
            .filter(|&a| a >= 0)
            .min_by_key(|&a| (self.per_value(a), a))
            .unwrap();
        (self.per_value(best), best)
    }
}

/// Strictly decreasing `r`-tuples drawn from the increasing `values`, whose
/// exponent bound does not exceed `limit`.
fn bounded_tuples(r: usize, bound: &TupleBound, limit: i64, mut values: impl Iterator<Item = i64>) -> Vec<Vec<i64>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let (f_min, argmin) = bound.minimum();
    let rest = (r as i64 - 1) * f_min + bound.base;
    let mut candidates = Vec::new();
    loop {
        let v = values.next().expect("candidate values are infinite");
        let too_big = bound.per_value(v) + rest > limit;
        if too_big && v > argmin {
            break;
        }
        if !too_big {
            candidates.push(v);
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(r);
    choose_tuples(&candidates, 0, r, bound, limit, f_min, bound.base, &mut chosen, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn choose_tuples(
    candidates: &[i64],
    start: usize,
    r: usize,
    bound: &TupleBound,
    limit: i64,
    f_min: i64,
    partial: i64,
    chosen: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if chosen.len() == r {
        let mut tuple = chosen.clone();
        tuple.reverse();
        out.push(tuple);
        return;
    }
    let remaining_after = (r - chosen.len() - 1) as i64;
    for idx in start..candidates.len() {
        let v = candidates[idx];
        let next = partial + bound.per_value(v);
        if next + remaining_after * f_min > limit {
            continue;
        }
        chosen.push(v);
        choose_tuples(candidates, idx + 1, r, bound, limit, f_min, next, chosen, out);
        chosen.pop();
    }
}

/// The atypical tuples `A_1 > ... > A_r >= 0` that can contribute through
/// `q^order`, with the cutoff raised by `slack`.
pub fn bos_tuples(config: &PitConfig, order: i64, slack: i64) -> Vec<Vec<i64>> {
    let frob = FrobeniusData::new(config);
    let bound = TupleBound::new(&frob);
    bounded_tuples(frob.atypicality, &bound, order - frob.grading_shift + slack, 0..)
}

/// The bosonic formula:
/// `chi = (-1)^(r(m+n)) q^Delta sum_A (-1)^(sum A) q^(sum binom(A_i+1,2))
///        a_N(q^A, q^(-P-1)) a_M(q^(-A), q^(-Q)) / (q)_inf^(m+n)`.
pub fn chi_bos(config: &PitConfig, order: i64) -> QSeries {
    chi_bos_with_slack(config, order, 0)
}

/// [`chi_bos`] with the tuple cutoff raised by `slack`; the result must not
/// depend on `slack >= 0`.
pub fn chi_bos_with_slack(config: &PitConfig, order: i64, slack: i64) -> QSeries {
    let frob = FrobeniusData::new(config);
    let (n, m, r) = (config.n(), config.m(), frob.atypicality);
    let tuples = bos_tuples(config, order, slack);
    let numerator: QSeries = tuples
        .par_iter()
        .map(|a_values| bos_term(&frob, n, m, r, a_values))
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    let target = order - frob.grading_shift;
    let numerator = numerator.truncate(target).shift(frob.grading_shift);
    divide_by_pochhammer_power(&numerator, (m + n) as u32, order)
}

fn bos_term(frob: &FrobeniusData, n: usize, m: usize, r: usize, a_values: &[i64]) -> QSeries {
    let nu_args: Vec<i64> = a_values.iter().copied().chain(frob.row_arms.iter().map(|p| -p - 1)).collect();
    let mu_args: Vec<i64> = a_values.iter().map(|a| -a).chain(frob.col_arms.iter().map(|q| -q)).collect();
    let quadratic: i64 = a_values.iter().map(|&a| binom2(a + 1)).sum();
    let product = &a_shifted(&frob.nu_shifted, &nu_args) * &a_shifted(&frob.mu_shifted, &mu_args);
    product.shift(quadratic).signed(bos_sign(n, m, r, a_values))
}

/// One term of the expanded formula: permutations `sigma` of `1..n`, `tau` of
/// `1..m` (stored 0-based) and atypical values `A_1 > ... > A_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTerm {
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
    pub a_values: Vec<i64>,
}

impl ThetaTerm {
    /// `Delta^{sigma,tau,A} = sum_{i<=r} A_i((A_i+1)/2 + N_sigma(i) - M_tau(i))
    ///   - sum_{i>r} (P_{i-r}+1)(N_sigma(i) - N_{i-r}) - sum_{i>r} Q_{i-r}(M_tau(i) - M_{i-r})`.
    pub fn exponent(&self, frob: &FrobeniusData) -> i64 {
        let (nn, mm) = (&frob.nu_shifted, &frob.mu_shifted);
        let r = self.a_values.len();
        let atypical: i64 = self
            .a_values
            .iter()
            .enumerate()
            .map(|(i, &a)| binom2(a + 1) + a * (nn[self.sigma[i]] - mm[self.tau[i]]))
            .sum();
        let rows: i64 = frob
            .row_arms
            .iter()
            .enumerate()
            .map(|(k, p)| (p + 1) * (nn[self.sigma[r + k]] - nn[k]))
            .sum();
        let cols: i64 = frob
            .col_arms
            .iter()
            .enumerate()
            .map(|(k, q)| q * (mm[self.tau[r + k]] - mm[k]))
            .sum();
        atypical - rows - cols
    }

    pub fn sign(&self, n: usize, m: usize) -> Sign {
        explicit_sign(n, m, self.a_values.len(), &self.sigma, &self.tau, &self.a_values)
    }
}

/// Atypical values `{-L_s : s > n - r}` in increasing order.
pub fn atypical_values(frob: &FrobeniusData) -> impl Iterator<Item = i64> + '_ {
    let first = frob.nu_shifted.len() - frob.atypicality + 1;
    (first..).map(move |s| -frob.lambda_particle(s))
}

/// Tuples drawn from [`atypical_values`] that can contribute through `q^order`.
pub fn explicit_tuples(config: &PitConfig, order: i64, slack: i64) -> Vec<Vec<i64>> {
    let frob = FrobeniusData::new(config);
    let bound = TupleBound::new(&frob);
    bounded_tuples(frob.atypicality, &bound, order - frob.grading_shift + slack, atypical_values(&frob))
}

/// All terms of the expanded formula whose exponent can be at most `order`.
pub fn theta_terms(config: &PitConfig, order: i64) -> Vec<ThetaTerm> {
    let sigmas = perm::permutations(config.n());
    let taus = perm::permutations(config.m());
    let mut out = Vec::new();
    for a_values in explicit_tuples(config, order, 0) {
        for sigma in &sigmas {
            for tau in &taus {
                out.push(ThetaTerm { sigma: sigma.clone(), tau: tau.clone(), a_values: a_values.clone() });
            }
        }
    }
    out
}

/// The expanded formula:
/// `chi = sum_Theta (-1)^(r(m+n)+|sigma|+|tau|+sum A) q^(Delta^{sigma,tau,A}) / (q)_inf^(m+n)`.
pub fn chi_explicit(config: &PitConfig, order: i64) -> QSeries {
    let frob = FrobeniusData::new(config);
    let (n, m) = (config.n(), config.m());
    let terms = theta_terms(config, order);
    let partials: Vec<BTreeMap<i64, BigInt>> = terms
        .par_chunks(256)
        .map(|chunk| {
            let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
            for term in chunk {
                let e = term.exponent(&frob);
                if e <= order {
                    *acc.entry(e).or_default() += term.sign(n, m).to_i64();
                }
            }
            acc
        })
        .collect();
    let mut total: BTreeMap<i64, BigInt> = BTreeMap::new();
    for part in partials {
        for (e, c) in part {
            *total.entry(e).or_default() += c;
        }
    }
    divide_by_pochhammer_power(&series_from_terms(total, order), (m + n) as u32, order)
}

/// The square case `n = m`, `lambda = ∅`:
/// `sum_{A_1>...>A_n>=0} (-1)^(sum A) q^(sum binom(A_i+1,2)) a_{nu+rho}(q^A) a_{mu+rho}(q^(-A)) / (q)_inf^(2n)`.
pub fn chi_square_empty(n: usize, nu: &Partition, mu: &Partition, order: i64) -> Result<QSeries, ConfigError> {
    let config = PitConfig::new(n, n, nu.clone(), mu.clone(), Partition::empty())?;
    let frob = FrobeniusData::new(&config);
    let bound = TupleBound::new(&frob);
    let mut numerator = QSeries::zero();
    for a_values in bounded_tuples(n, &bound, order, 0..) {
        let neg: Vec<i64> = a_values.iter().map(|a| -a).collect();
        let quadratic: i64 = a_values.iter().map(|&a| binom2(a + 1)).sum();
        let term = &a_shifted(&frob.nu_shifted, &a_values) * &a_shifted(&frob.mu_shifted, &neg);
        numerator = &numerator + &term.shift(quadratic).signed(Sign::from_parity(a_values.iter().sum()));
    }
    Ok(divide_by_pochhammer_power(&numerator.truncate(order), (2 * n) as u32, order))
}

/// Whether a series is a counting series: no negative exponents and no negative coefficients.
pub fn is_counting_series(s: &QSeries) -> bool {
    s.terms().all(|(e, c)| e >= 0 && *c > BigInt::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{enumerate_chi, enumerate_v_partitions};

    fn cfg(n: usize, m: usize, nu: &str, mu: &str, lambda: &str) -> PitConfig {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        PitConfig::new(n, m, p(nu), p(mu), p(lambda)).unwrap()
    }

    fn ints(s: &QSeries, to: i64) -> Vec<i64> {
        s.dense(0, to).iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn sign_conventions() {
        assert_eq!(det_sign(3, 2, 1), Sign::Minus);
        assert_eq!(det_sign(1, 1, 1), Sign::Plus);
        assert_eq!(bos_sign(3, 2, 1, &[2]), Sign::Minus);
        assert_eq!(bos_sign(2, 2, 2, &[3, 1]), Sign::Plus);
        assert_eq!(explicit_sign(2, 1, 1, &[1, 0], &[0], &[0]), Sign::Plus);
    }

    #[test]
    fn r_series_matches_v_partitions() {
        assert_eq!(ints(&r_series(0, 2), 2), vec![1, 1, 3]);
        for d in -3..=3 {
            let (a, b) = if d >= 0 { (d + 1, 1) } else { (0, -d) };
            assert_eq!(r_series(d, 10), enumerate_v_partitions(a, b, 10), "d={d}");
        }
        assert_eq!(r_series(12, 10), inverse_qpochhammer_infinite(2, 10));
    }

    #[test]
    fn wall_and_staircase() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(chi_wall(1, &p("3"), &p("2"), 8).unwrap(), inverse_qpochhammer_infinite(1, 8));
        for n in 1..=4 {
            assert_eq!(chi_wall(n, &p(""), &p(""), 12).unwrap(), macmahon_staircase(n, 12), "n={n}");
        }
        assert!(chi_wall(1, &p("1,1"), &p(""), 4).is_err());
        assert_eq!(ints(&macmahon_product(6), 6), vec![1, 1, 3, 6, 13, 24, 48]);
    }

    #[test]
    fn small_determinants() {
        assert_eq!(chi_det(&cfg(1, 0, "", "", ""), 6), inverse_qpochhammer_infinite(1, 6));
        assert_eq!(chi_det(&cfg(0, 0, "", "", ""), 5), QSeries::from_i64s(0, &[1], 5));
        for (nu, mu) in [("3", "1"), ("", "2"), ("2", "2")] {
            let c = cfg(1, 1, nu, mu, "");
            let d = c.nu().part(1) - c.mu().part(1);
            assert_eq!(chi_det(&c, 10), r_series(d, 10));
        }
    }

    #[test]
    fn worked_configuration_all_routes() {
        let c = cfg(3, 2, "3,1,1", "2", "2,1,1");
        let oracle = enumerate_chi(&c, 8).unwrap();
        assert_eq!(chi_det(&c, 8), oracle);
        assert_eq!(chi_bos(&c, 8), oracle);
        assert_eq!(chi_explicit(&c, 8), oracle);
    }

    #[test]
    fn explicit_matches_oracle_on_mixed_config() {
        let c = cfg(2, 1, "2,1", "1", "1");
        assert_eq!(chi_explicit(&c, 8), enumerate_chi(&c, 8).unwrap());
        assert_eq!(chi_explicit(&cfg(0, 0, "", "", ""), 4), QSeries::from_i64s(0, &[1], 4));
    }

    #[test]
    fn typical_case_is_a_product() {
        let c = cfg(2, 1, "2", "1", "2,1");
        let frob = FrobeniusData::new(&c);
        assert_eq!(frob.atypicality, 0);
        assert_eq!(bos_tuples(&c, 8, 0), vec![Vec::<i64>::new()]);
        let nu_args: Vec<i64> = frob.row_arms.iter().map(|p| -p - 1).collect();
        let mu_args: Vec<i64> = frob.col_arms.iter().map(|q| -q).collect();
        let product = &a_shifted(&frob.nu_shifted, &nu_args) * &a_shifted(&frob.mu_shifted, &mu_args);
        let expected = divide_by_pochhammer_power(&product.shift(frob.grading_shift), 3, 8);
        assert_eq!(chi_bos(&c, 8), expected);
        assert_eq!(enumerate_chi(&c, 8).unwrap(), expected);
    }

    #[test]
    fn square_case_matches_bosonic_sum() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        for (n, nu, mu) in [(1, "2", "1"), (2, "2,1", "3"), (2, "", "1,1"), (3, "1", "2,1")] {
            let c = cfg(n, n, nu, mu, "");
            assert_eq!(chi_square_empty(n, &p(nu), &p(mu), 10).unwrap(), chi_bos(&c, 10), "{c}");
        }
    }

    #[test]
    fn cauchy_binet_rescaling() {
        for c in [cfg(3, 2, "3,1,1", "2", "2,1,1"), cfg(2, 2, "1", "2,1", ""), cfg(2, 3, "2", "1", "3,1")] {
            let frob = FrobeniusData::new(&c);
            let plain = det(&lgv_block_matrix(&c, 12)).unwrap();
            let scaled = det(&modified_block_matrix(&c, 12)).unwrap();
            let sign = Sign::from_parity(frob.col_arms.iter().sum());
            let quadratic: i64 = frob.col_arms.iter().map(|&q| binom2(q + 1)).sum();
            assert!(scaled.agrees_with(&plain.shift(quadratic).signed(sign)), "{c}");
            assert!(plain.agrees_with(&scaled.shift(-quadratic).signed(sign)), "{c}");
        }
    }

    #[test]
    fn cutoff_slack_does_not_change_coefficients() {
        for c in [cfg(2, 2, "3,1", "2", ""), cfg(3, 2, "3,1,1", "2", "2,1,1"), cfg(2, 2, "", "3,3", "1")] {
            assert_eq!(chi_bos_with_slack(&c, 10, 5), chi_bos(&c, 10), "{c}");
            assert!(explicit_tuples(&c, 10, 5).len() >= explicit_tuples(&c, 10, 0).len());
        }
    }
}
