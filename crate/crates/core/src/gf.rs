//! Generating-function expansions for mixed congruence stacks and the pieces
//! of the decomposition `S = F·L + R`.

use std::collections::BTreeMap;

use rug::Integer;
use thiserror::Error;

use crate::params::{StackParams, Variant};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{op} needs {expected} parameters, got {params}")]
    WrongVariant { op: &'static str, expected: Variant, params: StackParams },
    #[error("decomposition check needs order >= m + r = {min}, got {order}")]
    OrderTooSmall { order: usize, min: usize },
    #[error("R has coefficient {value} at q^{exponent}; expected -1, 0 or +1")]
    Collision { exponent: usize, value: Integer },
}

fn require(op: &'static str, params: &StackParams, expected: Variant) -> Result<(), GfError> {
    if params.variant() == expected {
        Ok(())
    } else {
        Err(GfError::WrongVariant { op, expected, params: *params })
    }
}

/// Sums `q^{km+r} / ((q^r;q^m)_{k+1} (q^{m-r};q^m)_{k+extra})` over peaks `km + r <= order`.
///
/// One running product is kept; each step divides in the two new factors.
/// Only exponents `<= order - (km + r)` of the product can still reach the
/// result, so the product is truncated as the peak climbs.
fn peak_sum(params: &StackParams, order: usize, extra_right: usize) -> TruncatedSeries {
    let r = params.r() as usize;
    let m = params.m() as usize;
    let s = m - r;
    let mut out = TruncatedSeries::zero(order);
    if r > order {
        return out;
    }
    let mut prod = TruncatedSeries::one(order - r);
    prod.div_one_minus_in_place(r).expect("r > 0");
    for j in 0..extra_right {
        prod.div_one_minus_in_place(s + j * m).expect("m - r > 0");
    }
    let mut k = 0;
    loop {
        let peak = k * m + r;
        out.add_shifted(prod.coeffs(), peak);
        let next = peak + m;
        if next > order {
            break;
        }
        prod.truncate_in_place(order - next);
        prod.div_one_minus_in_place(next).expect("nonzero exponent");
        prod.div_one_minus_in_place(s + (k + extra_right) * m).expect("nonzero exponent");
        k += 1;
    }
    out
}

/// Expansion of `S_(r,m)(q)`; the coefficient of `q^n` is the number of
/// mixed congruence stacks of size `n`.
pub fn gf_stack(params: &StackParams, order: usize) -> Result<TruncatedSeries, GfError> {
    require("gf_stack", params, Variant::Standard)?;
    Ok(peak_sum(params, order, 0))
}

/// Expansion of `S*_(r,m)(q)` for `2r > m`, where both Pochhammer factors run
/// to depth `k + 1`.
pub fn gf_gap(params: &StackParams, order: usize) -> Result<TruncatedSeries, GfError> {
    require("gf_gap", params, Variant::Gap)?;
    Ok(peak_sum(params, order, 1))
}

/// `F(q) = 1 / (q^r, q^{m-r}; q^m)_inf`, partitions into parts `≡ ±r (mod m)`.
pub fn gf_f(params: &StackParams, order: usize) -> TruncatedSeries {
    let m = params.m() as usize;
    let mut out = TruncatedSeries::one(order);
    for residue in [params.r() as usize, params.conjugate_residue() as usize] {
        let mut part = residue;
        while part <= order {
            out.div_one_minus_in_place(part).expect("parts are positive");
            part += m;
        }
    }
    out
}

/// Exponent `mn(n+1)/2 - 2rn` of the `n`-th term of `L`.
fn l_exponent(params: &StackParams, n: u64) -> i64 {
    let (r, m) = (params.r() as i64, params.m() as i64);
    let n = n as i64;
    m * n * (n + 1) / 2 - 2 * r * n
}

/// Exponent `mn(3n+1)/2 - 3rn` of the `n`-th pair of terms of `R`, and the
/// offset `(2n+1)m - 2r` of its second term.
fn r_exponents(params: &StackParams, n: u64) -> (i64, i64) {
    let (r, m) = (params.r() as i64, params.m() as i64);
    let n = n as i64;
    (m * n * (3 * n + 1) / 2 - 3 * r * n, (2 * n + 1) * m - 2 * r)
}

/// The false theta series `L(q) = Σ (-1)^n q^{mn(n+1)/2 - 2rn}`.
///
/// Only defined for the standard variant: with `2r > m` the `n = 1`
/// exponent `m - 2r` is negative.
pub fn gf_l(params: &StackParams, order: usize) -> Result<TruncatedSeries, GfError> {
    require("gf_l", params, Variant::Standard)?;
    let mut out = TruncatedSeries::zero(order);
    for n in 0u64.. {
        let e = l_exponent(params, n);
        if e > order as i64 {
            break;
        }
        let sign = if n % 2 == 0 { 1 } else { -1 };
        out.coeffs_mut()[e as usize] += sign;
    }
    Ok(out)
}

fn r_terms(params: &StackParams, order: usize) -> Vec<(usize, i32)> {
    let mut terms = Vec::new();
    for n in 0u64.. {
        let (base, offset) = r_exponents(params, n);
        if base > order as i64 {
            break;
        }
        // (-1)^{n-1} q^base (1 - q^offset)
        let sign = if n % 2 == 0 { -1 } else { 1 };
        terms.push((base as usize, sign));
        let second = base + offset;
        if second <= order as i64 {
            terms.push((second as usize, -sign));
        }
    }
    terms
}

/// `R(q) = Σ (-1)^{n-1} q^{mn(3n+1)/2 - 3rn} (1 - q^{(2n+1)m - 2r})`.
pub fn gf_r(params: &StackParams, order: usize) -> Result<TruncatedSeries, GfError> {
    require("gf_r", params, Variant::Standard)?;
    let mut out = TruncatedSeries::zero(order);
    for (e, sign) in r_terms(params, order) {
        out.coeffs_mut()[e] += sign;
    }
    Ok(out)
}

/// One exponent where `S` and `F·L + R` disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: usize,
    pub stack: Integer,
    pub decomposed: Integer,
}

#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub params: StackParams,
    pub order: usize,
    pub mismatches: Vec<Mismatch>,
}

impl DecompositionReport {
    pub fn is_identity(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn first_mismatch(&self) -> Option<&Mismatch> {
        self.mismatches.first()
    }
}

/// Compares `S` against `F·L + R` coefficient by coefficient through `order`.
pub fn verify_decomposition(
    params: &StackParams,
    order: usize,
) -> Result<DecompositionReport, GfError> {
    let min = (params.m() + params.r()) as usize;
    if order < min {
        return Err(GfError::OrderTooSmall { order, min });
    }
    let stack = gf_stack(params, order)?;
    let decomposed = &gf_f(params, order).mul(&gf_l(params, order)?) + &gf_r(params, order)?;
    let mismatches = stack
        .coeffs()
        .iter()
        .zip(decomposed.coeffs())
        .enumerate()
        .filter(|(_, (s, d))| s != d)
        .map(|(exponent, (s, d))| Mismatch {
            exponent,
            stack: s.clone(),
            decomposed: d.clone(),
        })
        .collect();
    Ok(DecompositionReport { params: *params, order, mismatches })
}

/// Sparse signed support of `R` through `order`, ascending by exponent.
///
/// Fails if two terms land on the same exponent with the same sign; terms
/// that cancel are dropped from the support.
pub fn r_support(params: &StackParams, order: usize) -> Result<Vec<(usize, i8)>, GfError> {
    require("r_support", params, Variant::Standard)?;
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for (e, sign) in r_terms(params, order) {
        *acc.entry(e).or_default() += i64::from(sign);
    }
    let mut out = Vec::with_capacity(acc.len());
    for (exponent, value) in acc {
        match value {
            0 => {}
            1 | -1 => out.push((exponent, value as i8)),
            _ => return Err(GfError::Collision { exponent, value: Integer::from(value) }),
        }
    }
    Ok(out)
}
