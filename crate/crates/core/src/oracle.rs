//! Ground-truth counting of stacks straight from the definition.
//!
//! A stack of size `n` is `a_1 <= .. <= a_s <= c > b_t >= .. >= b_1` with all
//! parts positive and summing to `n`. Copies of the maximum always sit on the
//! left (right parts are strictly below the peak), so a stack is determined
//! by its peak plus one partition on each side. In congruence mode left parts
//! and the peak are `≡ r (mod m)` and right parts `≡ -r (mod m)`.
//!
//! Nothing here touches [`crate::series`] or [`crate::gf`].

use rug::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::StackParams;

/// Largest `n` accepted by [`enumerate_stacks_explicit`].
pub const MAX_EXPLICIT_N: u64 = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("explicit enumeration is limited to n <= {MAX_EXPLICIT_N}, got {0}")]
    TooLarge(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// Unrestricted stacks.
    Plain,
    Congruence(StackParams),
}

impl OracleMode {
    fn allows_peak(&self, c: u64) -> bool {
        match self {
            OracleMode::Plain => c >= 1,
            OracleMode::Congruence(p) => c % u64::from(p.m()) == u64::from(p.r()),
        }
    }

    fn allows_left(&self, part: u64) -> bool {
        self.allows_peak(part)
    }

    fn allows_right(&self, part: u64) -> bool {
        match self {
            OracleMode::Plain => part >= 1,
            OracleMode::Congruence(p) => {
                part % u64::from(p.m()) == u64::from(p.conjugate_residue())
            }
        }
    }

    fn first_peak(&self) -> u64 {
        match self {
            OracleMode::Plain => 1,
            OracleMode::Congruence(p) => u64::from(p.r()),
        }
    }

    fn peak_step(&self) -> u64 {
        match self {
            OracleMode::Plain => 1,
            OracleMode::Congruence(p) => u64::from(p.m()),
        }
    }
}

/// Adds `part` to an unbounded-knapsack partition table.
fn add_part(table: &mut [Integer], part: u64) {
    let part = part as usize;
    for i in part..table.len() {
        let (lo, hi) = table.split_at_mut(i);
        hi[0] += &lo[i - part];
    }
}

/// Counts stacks of size `n` by sweeping the peak upward.
///
/// `left[j]` counts partitions of `j` into allowed left parts `<= c` and
/// `right[j]` partitions into allowed right parts `< c`; both tables grow one
/// part at a time as `c` increases, and each peak contributes
/// `Σ left[j] · right[n - c - j]`.
pub fn count_stacks_dp(mode: OracleMode, n: u64) -> Integer {
    let len = n as usize + 1;
    let mut left = vec![Integer::new(); len];
    let mut right = vec![Integer::new(); len];
    left[0] = Integer::from(1);
    right[0] = Integer::from(1);
    let mut right_added = 0u64;
    let mut total = Integer::new();
    let mut c = mode.first_peak();
    while c <= n {
        if mode.allows_left(c) {
            add_part(&mut left, c);
        }
        for part in right_added + 1..c {
            if mode.allows_right(part) {
                add_part(&mut right, part);
            }
        }
        right_added = right_added.max(c - 1);
        let rest = (n - c) as usize;
        for j in 0..=rest {
            if !left[j].is_zero() && !right[rest - j].is_zero() {
                total += Integer::from(&left[j] * &right[rest - j]);
            }
        }
        c += mode.peak_step();
    }
    total
}

/// One explicit stack: `left` non-decreasing, then `peak`, then `right`
/// non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StackWitness {
    pub left: Vec<u64>,
    pub peak: u64,
    pub right: Vec<u64>,
}

impl StackWitness {
    pub fn size(&self) -> u64 {
        self.left.iter().sum::<u64>() + self.peak + self.right.iter().sum::<u64>()
    }

    /// Checks ordering, peak strictness, positivity and congruences.
    pub fn is_valid(&self, mode: OracleMode) -> bool {
        let positive = self.peak >= 1
            && self.left.iter().all(|&a| a >= 1)
            && self.right.iter().all(|&b| b >= 1);
        let ordered = self.left.windows(2).all(|w| w[0] <= w[1])
            && self.right.windows(2).all(|w| w[0] >= w[1]);
        let unimodal = self.left.last().is_none_or(|&a| a <= self.peak)
            && self.right.first().is_none_or(|&b| b < self.peak);
        let congruent = mode.allows_peak(self.peak)
            && self.left.iter().all(|&a| mode.allows_left(a))
            && self.right.iter().all(|&b| mode.allows_right(b));
        positive && ordered && unimodal && congruent
    }
}

/// All partitions of `n` into parts from `parts` (descending), each emitted
/// as a descending vector.
fn partitions_from(n: u64, parts: &[u64], out: &mut Vec<Vec<u64>>, cur: &mut Vec<u64>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    for (i, &p) in parts.iter().enumerate() {
        if p <= n {
            cur.push(p);
            partitions_from(n - p, &parts[i..], out, cur);
            cur.pop();
        }
    }
}

fn partitions(n: u64, parts: &[u64]) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    partitions_from(n, parts, &mut out, &mut Vec::new());
    out
}

/// Lists every stack of size `n` (at most [`MAX_EXPLICIT_N`]), sorted.
pub fn enumerate_stacks_explicit(
    mode: OracleMode,
    n: u64,
) -> Result<Vec<StackWitness>, OracleError> {
    if n > MAX_EXPLICIT_N {
        return Err(OracleError::TooLarge(n));
    }
    let mut out = Vec::new();
    for peak in (1..=n).filter(|&c| mode.allows_peak(c)) {
        let left_parts: Vec<u64> = (1..=peak).rev().filter(|&a| mode.allows_left(a)).collect();
        let right_parts: Vec<u64> = (1..peak).rev().filter(|&b| mode.allows_right(b)).collect();
        let rest = n - peak;
        for split in 0..=rest {
            let lefts = partitions(split, &left_parts);
            if lefts.is_empty() {
                continue;
            }
            let rights = partitions(rest - split, &right_parts);
            for l in &lefts {
                for r in &rights {
                    let mut left = l.clone();
                    left.reverse();
                    out.push(StackWitness { left, peak, right: r.clone() });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}
