//! Truncated Laurent series in `q` over arbitrary-precision integers.
//!
//! A [`QSeries`] stores the coefficients of `q^low, q^(low+1), ...` together
//! with a truncation order: the series is known exactly modulo `q^(order+1)`.
//! Laurent polynomials that are known completely carry the order [`EXACT`].
//!
//! Every operation propagates the weakest order among its inputs, so a
//! coefficient above the reported order is never produced from garbage.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Order of a series with no truncation (an exact Laurent polynomial).
pub const EXACT: i64 = i64::MAX;

/// Largest determinant size accepted by [`det`].
pub const DET_CAP: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QSeriesError {
    #[error("series is zero below its truncation order and cannot be inverted")]
    ZeroInverse,
    #[error("leading coefficient {0} is not a unit over the integers")]
    NonUnitLeading(BigInt),
    #[error("inverse of an exact polynomial needs an explicit target order")]
    UnboundedInverse,
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("matrix of size {size} exceeds the determinant cap {cap}")]
    TooLarge { size: usize, cap: usize },
}

/// A sign `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^count`.
    pub fn from_parity(count: i64) -> Sign {
        if count.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// Truncated Laurent series `sum c_k q^k + O(q^(order+1))`.
///
/// Canonical form: `coeffs` is empty or starts and ends with a nonzero entry,
/// and `low + coeffs.len() - 1 <= order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    low: i64,
    coeffs: Vec<BigInt>,
    order: i64,
}

fn shift_order(order: i64, by: i64) -> i64 {
    if order == EXACT {
        EXACT
    } else {
        order + by
    }
}

impl QSeries {
    /// Builds a series from dense coefficients starting at `q^low`.
    /// Entries above `order` are dropped and the result is canonicalized.
    pub fn from_coeffs(low: i64, mut coeffs: Vec<BigInt>, order: i64) -> QSeries {
        if order != EXACT {
            let keep = (order - low + 1).max(0) as usize;
            coeffs.truncate(keep);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        coeffs.drain(..lead);
        let low = if coeffs.is_empty() { 0 } else { low + lead as i64 };
        QSeries { low, coeffs, order }
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64s(low: i64, coeffs: &[i64], order: i64) -> QSeries {
        QSeries::from_coeffs(low, coeffs.iter().map(|&c| BigInt::from(c)).collect(), order)
    }

    /// Exact Laurent polynomial with dense coefficients starting at `q^low`.
    pub fn polynomial(low: i64, coeffs: Vec<BigInt>) -> QSeries {
        QSeries::from_coeffs(low, coeffs, EXACT)
    }

    /// The zero series known modulo `q^(order+1)`.
    pub fn zero_to(order: i64) -> QSeries {
        QSeries { low: 0, coeffs: Vec::new(), order }
    }

    /// The exact zero polynomial.
    pub fn zero() -> QSeries {
        QSeries::zero_to(EXACT)
    }

    /// The exact constant `1`.
    pub fn one() -> QSeries {
        QSeries::exact_monomial(Sign::Plus, 0)
    }

    /// `sign * q^exponent` truncated at `order`; zero when `exponent > order`.
    pub fn monomial(sign: Sign, exponent: i64, order: i64) -> QSeries {
        QSeries::from_coeffs(exponent, vec![BigInt::from(sign.to_i64())], order)
    }

    /// `sign * q^exponent` as an exact polynomial.
    pub fn exact_monomial(sign: Sign, exponent: i64) -> QSeries {
        QSeries::monomial(sign, exponent, EXACT)
    }

    /// Truncation order; [`EXACT`] for polynomials.
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order == EXACT
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient, if any.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// A lower bound for the exponents of the (possibly unknown) tail.
    fn valuation_bound(&self) -> i64 {
        match self.valuation() {
            Some(v) => v,
            None => shift_order(self.order, 1),
        }
    }

    /// Coefficient of `q^exponent`, or `None` above the truncation order.
    pub fn coefficient(&self, exponent: i64) -> Option<BigInt> {
        if exponent > self.order {
            return None;
        }
        let idx = exponent - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Some(BigInt::zero())
        } else {
            Some(self.coeffs[idx as usize].clone())
        }
    }

    /// Dense coefficients of `q^from ..= q^to`.
    ///
    /// # Panics
    /// If `to` exceeds the truncation order.
    pub fn dense(&self, from: i64, to: i64) -> Vec<BigInt> {
        assert!(to <= self.order, "coefficient q^{to} is above the truncation order {}", self.order);
        (from..=to).map(|e| self.coefficient(e).unwrap_or_default()).collect()
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Forgets everything above `order` (never raises the order).
    pub fn truncate(&self, order: i64) -> QSeries {
        QSeries::from_coeffs(self.low, self.coeffs.clone(), self.order.min(order))
    }

    /// Multiplication by `q^by`.
    pub fn shift(&self, by: i64) -> QSeries {
        QSeries {
            low: if self.is_zero() { 0 } else { self.low + by },
            coeffs: self.coeffs.clone(),
            order: shift_order(self.order, by),
        }
    }

    pub fn signed(&self, sign: Sign) -> QSeries {
        match sign {
            Sign::Plus => self.clone(),
            Sign::Minus => -self,
        }
    }

    pub fn scale(&self, factor: &BigInt) -> QSeries {
        QSeries::from_coeffs(self.low, self.coeffs.iter().map(|c| c * factor).collect(), self.order)
    }

    pub fn pow(&self, exponent: u32) -> QSeries {
        (0..exponent).fold(QSeries::one(), |acc, _| &acc * self)
    }

    /// Inverse at the natural order of the input.
    pub fn inverse(&self) -> Result<QSeries, QSeriesError> {
        if self.is_exact() {
            return Err(QSeriesError::UnboundedInverse);
        }
        self.inverse_to(EXACT)
    }

    /// Inverse truncated at `min(target, natural order)`, where the natural
    /// order of `q^l u` known through `o` is `o - 2l`.
    pub fn inverse_to(&self, target: i64) -> Result<QSeries, QSeriesError> {
        let lead = self.coeffs.first().ok_or(QSeriesError::ZeroInverse)?;
        if !lead.abs().is_one() {
            return Err(QSeriesError::NonUnitLeading(lead.clone()));
        }
        let shift = self.low;
        let order = target.min(shift_order(self.order, -2 * shift));
        if order == EXACT {
            return Err(QSeriesError::UnboundedInverse);
        }
        let len = order + shift + 1;
        if len <= 0 {
            return Ok(QSeries::zero_to(order));
        }
        let len = len as usize;
        let mut inv: Vec<BigInt> = Vec::with_capacity(len);
        inv.push(lead.clone());
        for k in 1..len {
            let mut acc = BigInt::zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc += &self.coeffs[i] * &inv[k - i];
            }
            inv.push(-(lead * acc));
        }
        Ok(QSeries::from_coeffs(-shift, inv, order))
    }

    /// First exponent where `self` and `other` differ on their shared window.
    pub fn first_divergence(&self, other: &QSeries) -> Option<i64> {
        let top = self.order.min(other.order);
        let mut exps: Vec<i64> = self
            .terms()
            .map(|(e, _)| e)
            .chain(other.terms().map(|(e, _)| e))
            .filter(|&e| e <= top)
            .collect();
        exps.sort_unstable();
        exps.dedup();
        exps.into_iter().find(|&e| self.coefficient(e) != other.coefficient(e))
    }

    /// Equality on the shared window `(-inf, min(order)]`.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        self.first_divergence(other).is_none()
    }
}

impl Add<&QSeries> for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let order = self.order.min(rhs.order);
        if self.is_zero() {
            return rhs.truncate(order);
        }
        if rhs.is_zero() {
            return self.truncate(order);
        }
        let low = self.low.min(rhs.low);
        let high = self.degree().unwrap().max(rhs.degree().unwrap());
        let high = if order == EXACT { high } else { high.min(order) };
        if high < low {
            return QSeries::zero_to(order);
        }
        let mut out = vec![BigInt::zero(); (high - low + 1) as usize];
        for series in [self, rhs] {
            for (i, c) in series.coeffs.iter().enumerate() {
                let e = series.low + i as i64;
                if e > high {
                    break;
                }
                out[(e - low) as usize] += c;
            }
        }
        QSeries::from_coeffs(low, out, order)
    }
}

impl Sub<&QSeries> for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self + &(-rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect(), order: self.order }
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

/// Order of a product: an error term `O(q^(o+1))` in one factor is multiplied
/// by the other factor, whose exponents start at its valuation.
fn product_order(a: &QSeries, b: &QSeries) -> i64 {
    let from_a = shift_order(a.order, b.valuation_bound().min(0));
    let from_b = shift_order(b.order, a.valuation_bound().min(0));
    from_a.min(from_b)
}

impl Mul<&QSeries> for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let order = product_order(self, rhs);
        if self.is_zero() || rhs.is_zero() {
            return QSeries::zero_to(order);
        }
        let low = self.low + rhs.low;
        let full = self.coeffs.len() + rhs.coeffs.len() - 1;
        let len = if order == EXACT { full } else { full.min((order - low + 1).max(0) as usize) };
        let mut out = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        QSeries::from_coeffs(low, out, order)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<QSeries> for QSeries {
            type Output = QSeries;
            fn $method(self, rhs: QSeries) -> QSeries {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QSeries> for QSeries {
            type Output = QSeries;
            fn $method(self, rhs: &QSeries) -> QSeries {
                (&self).$method(rhs)
            }
        }
        impl $tr<QSeries> for &QSeries {
            type Output = QSeries;
            fn $method(self, rhs: QSeries) -> QSeries {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for QSeries {
    fn sum<I: Iterator<Item = QSeries>>(iter: I) -> QSeries {
        iter.fold(QSeries::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Product for QSeries {
    fn product<I: Iterator<Item = QSeries>>(iter: I) -> QSeries {
        iter.fold(QSeries::one(), |acc, x| &acc * &x)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "q")?,
                1 => write!(f, "{mag}q")?,
                _ if unit => write!(f, "q^{e}")?,
                _ => write!(f, "{mag}q^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if !self.is_exact() {
            write!(f, " + O(q^{})", self.order + 1)?;
        }
        Ok(())
    }
}

/// `(q)_k = prod_{s=1}^{k} (1 - q^s)` as an exact polynomial.
pub fn qpochhammer(k: u64) -> QSeries {
    let degree = (k * (k + 1) / 2) as usize;
    let mut c = vec![BigInt::zero(); degree + 1];
    c[0] = BigInt::one();
    let mut top = 0usize;
    for s in 1..=k as usize {
        for e in (s..=top + s).rev() {
            let prev = c[e - s].clone();
            c[e] -= prev;
        }
        top += s;
    }
    QSeries::polynomial(0, c)
}

/// `(q)_inf` truncated at `order`: only factors with `s <= order` matter.
pub fn qpochhammer_infinite(order: i64) -> QSeries {
    if order < 0 {
        return QSeries::zero_to(order);
    }
    qpochhammer(order as u64).truncate(order)
}

/// Multiplies dense coefficients (from `q^0`) in place by `1/(1 - q^s)`.
fn divide_by_cyclotomic_step(coeffs: &mut [BigInt], s: usize) {
    for e in s..coeffs.len() {
        let prev = coeffs[e - s].clone();
        coeffs[e] += prev;
    }
}

/// `1 / (q)_k` truncated at `order`.
pub fn inverse_qpochhammer(k: u64, order: i64) -> QSeries {
    inverse_pochhammer_product(&[k], 0, order)
}

/// `1 / (q)_inf^power` truncated at `order`.
pub fn inverse_qpochhammer_infinite(power: u32, order: i64) -> QSeries {
    if order < 0 {
        return QSeries::zero_to(order);
    }
    inverse_pochhammer_product(&vec![order as u64; power as usize], 0, order)
}

/// `q^shift / prod_i (q)_{ks[i]}` truncated at `order`.
pub fn inverse_pochhammer_product(ks: &[u64], shift: i64, order: i64) -> QSeries {
    let rel = order - shift;
    if rel < 0 {
        return QSeries::zero_to(order);
    }
    let len = rel as usize + 1;
    let mut c = vec![BigInt::zero(); len];
    c[0] = BigInt::one();
    for &k in ks {
        for s in 1..=(k as usize).min(len - 1) {
            divide_by_cyclotomic_step(&mut c, s);
        }
    }
    QSeries::from_coeffs(shift, c, order)
}

/// Gaussian binomial `[a choose b]_q` as an exact polynomial.
///
/// # Panics
/// Unless `a >= b >= 0`.
pub fn qbinom(a: i64, b: i64) -> QSeries {
    assert!(a >= b && b >= 0, "qbinom needs a >= b >= 0, got ({a}, {b})");
    let degree = b * (a - b);
    let numerator = qpochhammer(a as u64);
    let inv = inverse_pochhammer_product(&[b as u64, (a - b) as u64], 0, degree);
    let quotient = (&numerator * &inv).truncate(degree);
    QSeries::from_coeffs(0, quotient.dense(0, degree), EXACT)
}

fn check_square(matrix: &[Vec<QSeries>], cap: usize) -> Result<(), QSeriesError> {
    let n = matrix.len();
    if n > cap {
        return Err(QSeriesError::TooLarge { size: n, cap });
    }
    for (row, entries) in matrix.iter().enumerate() {
        if entries.len() != n {
            return Err(QSeriesError::NotSquare { row, len: entries.len(), expected: n });
        }
    }
    Ok(())
}

/// Determinant by cofactor expansion along the first row, capped at [`DET_CAP`].
pub fn det(matrix: &[Vec<QSeries>]) -> Result<QSeries, QSeriesError> {
    det_with_cap(matrix, DET_CAP)
}

pub fn det_with_cap(matrix: &[Vec<QSeries>], cap: usize) -> Result<QSeries, QSeriesError> {
    check_square(matrix, cap)?;
    let cols: Vec<usize> = (0..matrix.len()).collect();
    Ok(cofactor(matrix, 0, &cols))
}

fn cofactor(matrix: &[Vec<QSeries>], row: usize, cols: &[usize]) -> QSeries {
    if cols.is_empty() {
        return QSeries::one();
    }
    let mut total = QSeries::zero();
    for (pos, &col) in cols.iter().enumerate() {
        let entry = &matrix[row][col];
        if entry.is_zero() && entry.is_exact() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != col).collect();
        let term = entry * &cofactor(matrix, row + 1, &rest);
        total = &total + &term.signed(Sign::from_parity(pos as i64));
    }
    total
}

/// Determinant by the signed permutation expansion; an independent check on [`det`].
pub fn det_by_permutations(matrix: &[Vec<QSeries>]) -> Result<QSeries, QSeriesError> {
    check_square(matrix, DET_CAP)?;
    let n = matrix.len();
    let mut total = QSeries::zero();
    for perm in crate::perm::permutations(n) {
        let sign = crate::perm::sign(&perm);
        let term: QSeries = perm.iter().enumerate().map(|(i, &j)| matrix[i][j].clone()).product();
        total = &total + &term.signed(sign);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries, to: i64) -> Vec<i64> {
        s.dense(0, to).iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn monomial_examples() {
        assert_eq!(QSeries::monomial(Sign::Plus, 0, 5), QSeries::from_i64s(0, &[1], 5));
        let m = QSeries::monomial(Sign::Minus, -3, 5);
        assert_eq!(m.valuation(), Some(-3));
        assert_eq!(m.coefficient(-3), Some(BigInt::from(-1)));
        assert!(QSeries::monomial(Sign::Plus, 7, 5).is_zero());
    }

    #[test]
    fn ring_examples() {
        let one = QSeries::one();
        let q = QSeries::exact_monomial(Sign::Plus, 1);
        assert_eq!(&one - &q, QSeries::polynomial(0, vec![1.into(), (-1).into()]));
        assert_eq!((&one - &q) * (&one + &q), QSeries::from_i64s(0, &[1, 0, -1], EXACT));
        let inv_q = QSeries::exact_monomial(Sign::Plus, -1);
        assert_eq!(&inv_q * &q, one);
    }

    #[test]
    fn product_order_accounts_for_negative_valuation() {
        let a = QSeries::from_i64s(-1, &[1], 5);
        let b = QSeries::from_i64s(0, &[1, 1, 1, 1, 1, 1], 5);
        assert_eq!((&a * &b).order(), 4);
        let c = QSeries::from_i64s(2, &[1], 5);
        assert_eq!((&c * &b).order(), 5);
    }

    #[test]
    fn inverse_examples() {
        let geometric = QSeries::from_i64s(0, &[1, -1], 4).inverse().unwrap();
        assert_eq!(geometric, QSeries::from_i64s(0, &[1, 1, 1, 1, 1], 4));
        assert_eq!(QSeries::one().inverse_to(3).unwrap(), QSeries::monomial(Sign::Plus, 0, 3));
        let shifted = QSeries::from_i64s(1, &[1, -1], EXACT).inverse_to(3).unwrap();
        assert_eq!(shifted, QSeries::from_i64s(-1, &[1, 1, 1, 1, 1], 3));
        assert!(matches!(
            QSeries::from_i64s(0, &[2, 1], 3).inverse(),
            Err(QSeriesError::NonUnitLeading(_))
        ));
        assert_eq!(QSeries::one().inverse(), Err(QSeriesError::UnboundedInverse));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(ints(&qpochhammer_infinite(5), 5), vec![1, -1, -1, 0, 0, 1]);
        assert_eq!(qpochhammer(0), QSeries::one());
        assert_eq!(qpochhammer(2), QSeries::from_i64s(0, &[1, -1, -1, 1], EXACT));
        assert_eq!(ints(&inverse_qpochhammer_infinite(1, 6), 6), vec![1, 1, 2, 3, 5, 7, 11]);
        let direct = qpochhammer(3).truncate(8).inverse().unwrap();
        assert_eq!(inverse_qpochhammer(3, 8), direct);
    }

    #[test]
    fn qbinom_examples() {
        assert_eq!(qbinom(4, 2), QSeries::from_i64s(0, &[1, 1, 2, 1, 1], EXACT));
        assert_eq!(qbinom(7, 0), QSeries::one());
        assert_eq!(qbinom(3, 1), QSeries::from_i64s(0, &[1, 1, 1], EXACT));
    }

    #[test]
    fn det_examples() {
        let one = QSeries::one();
        let q = QSeries::exact_monomial(Sign::Plus, 1);
        assert_eq!(det(&[vec![one.clone()]]).unwrap(), one);
        let m = vec![vec![one.clone(), q.clone()], vec![q.clone(), one.clone()]];
        assert_eq!(det(&m).unwrap(), QSeries::from_i64s(0, &[1, 0, -1], EXACT));
        assert_eq!(det_by_permutations(&m).unwrap(), det(&m).unwrap());
        assert_eq!(det(&[]).unwrap(), one);
        let ragged = vec![vec![one.clone(), q.clone()], vec![one.clone()]];
        assert!(matches!(det(&ragged), Err(QSeriesError::NotSquare { row: 1, .. })));
        let big = vec![vec![one.clone(); 11]; 11];
        assert!(matches!(det(&big), Err(QSeriesError::TooLarge { size: 11, .. })));
    }

    #[test]
    fn display_format() {
        let s = QSeries::from_i64s(-1, &[1, 0, -2, 1], 3);
        assert_eq!(s.to_string(), "q^-1 - 2q + q^2 + O(q^4)");
        assert_eq!(QSeries::zero().to_string(), "0");
    }
}
