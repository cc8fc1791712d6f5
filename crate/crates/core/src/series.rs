//! Truncated power series in `q` with arbitrary-precision integer coefficients.
//!
//! A series of order `N` stores the exact coefficients of `q^0 ..= q^N`.
//! Binary operations truncate to the smaller of the two orders.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use rug::{Complex, Integer};
use thiserror::Error;

use crate::par;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division by 1 - q^0 is a pole")]
    ZeroExponent,
}

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Integer>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Integer::new(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(1, 0, order)
    }

    /// `coeff * q^exponent`, truncated away when `exponent > order`.
    pub fn monomial(coeff: i64, exponent: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exponent <= order {
            s.coeffs[exponent] = Integer::from(coeff);
        }
        s
    }

    /// Takes ownership of `coeffs`; the order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<Integer>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least q^0");
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Integer> {
        self.coeffs
    }

    /// Coefficient of `q^n`; `None` past the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&Integer> {
        self.coeffs.get(n)
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [Integer] {
        &mut self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub(crate) fn truncate_in_place(&mut self, order: usize) {
        self.coeffs.truncate(order + 1);
    }

    /// Exponents carrying a nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Cauchy product truncated to `min(self.order(), other.order())`.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let (sparse, dense) = if self.nnz(order) <= other.nnz(order) {
            (self, other)
        } else {
            (other, self)
        };
        // Sparse factors (theta-like sums) are cheaper as shifted adds.
        if sparse.nnz(order) * 8 <= order + 1 {
            let mut out = Self::zero(order);
            for (i, a) in sparse.coeffs[..=order].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let len = order + 1 - i;
                par::zip_apply(&mut out.coeffs[i..], &dense.coeffs[..len], |c, b| {
                    *c += Integer::from(a * b);
                });
            }
            return out;
        }
        let coeffs = par::map_range(order + 1, |k| {
            let mut acc = Integer::new();
            for i in 0..=k {
                let a = &self.coeffs[i];
                if a.is_zero() {
                    continue;
                }
                acc += Integer::from(a * &other.coeffs[k - i]);
            }
            acc
        });
        Self { coeffs }
    }

    fn nnz(&self, order: usize) -> usize {
        self.coeffs[..=order].iter().filter(|c| !c.is_zero()).count()
    }

    /// Returns `self / (1 - q^d)`.
    pub fn mul_inv_one_minus(&self, d: usize) -> Result<Self, SeriesError> {
        let mut out = self.clone();
        out.div_one_minus_in_place(d)?;
        Ok(out)
    }

    /// In-place `self /= (1 - q^d)` via `c_i += c_{i-d}`.
    ///
    /// The recurrence runs block by block: block `j` (exponents `jd..(j+1)d`)
    /// only reads block `j - 1`, so each block is one elementwise add.
    pub fn div_one_minus_in_place(&mut self, d: usize) -> Result<(), SeriesError> {
        if d == 0 {
            return Err(SeriesError::ZeroExponent);
        }
        let len = self.coeffs.len();
        let mut start = d;
        while start < len {
            let (lo, hi) = self.coeffs.split_at_mut(start);
            let width = d.min(len - start);
            par::zip_apply(&mut hi[..width], &lo[start - d..], |c, p| *c += p);
            start += d;
        }
        Ok(())
    }

    /// Returns `self * (1 - q^d)`.
    pub fn mul_one_minus(&self, d: usize) -> Self {
        let mut out = self.clone();
        for i in (d..self.coeffs.len()).rev() {
            out.coeffs[i] -= &self.coeffs[i - d];
        }
        out
    }

    /// Adds `src * q^shift` into `self`, dropping terms past the order.
    pub(crate) fn add_shifted(&mut self, src: &[Integer], shift: usize) {
        if shift >= self.coeffs.len() {
            return;
        }
        let dst = &mut self.coeffs[shift..];
        let n = dst.len().min(src.len());
        par::zip_apply(&mut dst[..n], &src[..n], |c, s| *c += s);
    }

    /// Evaluates the polynomial at `q` with Horner's rule at `q`'s precision.
    pub fn evaluate(&self, q: &Complex) -> Complex {
        let mut acc = Complex::new(q.prec());
        for c in self.coeffs.iter().rev() {
            acc *= q;
            acc += c;
        }
        acc
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|i| Integer::from(&self.coeffs[i] + &rhs.coeffs[i]))
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|i| Integer::from(&self.coeffs[i] - &rhs.coeffs[i]))
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| Integer::from(-c)).collect() }
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ => write!(f, "{c}*q^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_convolution(a: &[i64], b: &[i64]) -> Vec<i64> {
        let n = a.len().min(b.len());
        (0..n)
            .map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum())
            .collect()
    }

    #[test]
    fn difference_of_squares() {
        let a = TruncatedSeries::from_i64s(&[1, 1, 0, 0, 0]);
        let b = TruncatedSeries::from_i64s(&[1, -1, 0, 0, 0]);
        assert_eq!(a.mul(&b), TruncatedSeries::from_i64s(&[1, 0, -1, 0, 0]));
    }

    #[test]
    fn identity_product() {
        let a = TruncatedSeries::from_i64s(&[3, -1, 4, 1, -5, 9]);
        assert_eq!(TruncatedSeries::one(5).mul(&a), a);
    }

    #[test]
    fn square_of_trinomial() {
        let a = [1, 1, 1, 0, 0, 0];
        let want = brute_convolution(&a, &a);
        assert_eq!(want, vec![1, 2, 3, 2, 1, 0]);
        let s = TruncatedSeries::from_i64s(&a);
        assert_eq!(s.mul(&s), TruncatedSeries::from_i64s(&want));
    }

    #[test]
    fn product_truncates_to_smaller_order() {
        let a = TruncatedSeries::from_i64s(&[1, 1, 1, 1, 1, 1, 1]);
        let b = TruncatedSeries::from_i64s(&[1, 1, 1]);
        assert_eq!(a.mul(&b).order(), 2);
        assert_eq!((&a + &b).order(), 2);
    }

    #[test]
    fn geometric_series() {
        let ones = TruncatedSeries::one(20).mul_inv_one_minus(1).unwrap();
        assert!(ones.coeffs().iter().all(|c| *c == 1));
        let thirds = TruncatedSeries::one(20).mul_inv_one_minus(3).unwrap();
        for (i, c) in thirds.coeffs().iter().enumerate() {
            assert_eq!(*c, i32::from(i % 3 == 0));
        }
    }

    #[test]
    fn exact_cancellation() {
        for d in 1..12 {
            let s = TruncatedSeries::one(30).mul_one_minus(d);
            assert_eq!(s.mul_inv_one_minus(d).unwrap(), TruncatedSeries::one(30));
        }
    }

    #[test]
    fn zero_exponent_is_a_pole() {
        assert_eq!(
            TruncatedSeries::one(4).mul_inv_one_minus(0),
            Err(SeriesError::ZeroExponent)
        );
    }

    #[test]
    fn large_division_matches_small_block_path() {
        // d wide enough to take the parallel block path on every block
        let order = 20_000;
        let mut a = TruncatedSeries::zero(order);
        for (i, c) in a.coeffs_mut().iter_mut().enumerate() {
            *c = Integer::from((i % 7) as i64 - 3);
        }
        let d = 4_099;
        let fast = a.mul_inv_one_minus(d).unwrap();
        let mut slow = a.coeffs().to_vec();
        for i in d..=order {
            let prev = slow[i - d].clone();
            slow[i] += prev;
        }
        assert_eq!(fast.coeffs(), &slow[..]);
    }

    #[test]
    fn sparse_and_dense_products_agree() {
        let order = 400;
        let mut sparse = TruncatedSeries::zero(order);
        for k in [0usize, 1, 5, 12, 22, 35, 51, 70, 92] {
            sparse.coeffs_mut()[k] = Integer::from(if k % 2 == 0 { 1 } else { -1 });
        }
        let dense = TruncatedSeries::one(order).mul_inv_one_minus(1).unwrap()
            .mul_inv_one_minus(2).unwrap();
        let via_sparse = sparse.mul(&dense);
        let brute: Vec<Integer> = (0..=order)
            .map(|k| {
                (0..=k).fold(Integer::new(), |acc, i| {
                    acc + Integer::from(&sparse.coeffs()[i] * &dense.coeffs()[k - i])
                })
            })
            .collect();
        assert_eq!(via_sparse.coeffs(), &brute[..]);
    }

    #[test]
    fn evaluate_polynomial() {
        let s = TruncatedSeries::from_i64s(&[1, 2, 3]);
        let v = s.evaluate(&Complex::with_val(64, (0.5, 0.0)));
        assert_eq!(v.real().to_f64(), 1.0 + 1.0 + 0.75);
    }

    fn small_series(len: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(-50i64..50, len).prop_map(|v| TruncatedSeries::from_i64s(&v))
    }

    proptest! {
        #[test]
        fn mul_commutes(a in small_series(24), b in small_series(24)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn mul_associates(a in small_series(16), b in small_series(16), c in small_series(16)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn inverse_factor_round_trips(a in small_series(40), d in 1usize..45) {
            let back = a.mul_inv_one_minus(d).unwrap().mul_one_minus(d);
            prop_assert_eq!(back, a);
        }
    }
}
