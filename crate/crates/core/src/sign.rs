//! Sign vectors `ω ∈ {-1, +1}^n`.

use std::fmt;

use crate::error::{Error, Result};

/// An element of `{-1, +1}^n`, packed as a bitmask: bit `k` set means
/// entry `k` is `-1`.
///
/// `ω` and `-ω` give the same rank-one matrix `ωωᵀ`; the canonical member of
/// the pair `{ω, -ω}` has a `+1` first entry. Canonical vectors are numbered
/// by their mask shifted right once, so for `n = 3` the classes come out as
/// `(+,+,+)`, `(+,-,+)`, `(+,+,-)`, `(+,-,-)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    n: usize,
    mask: u64,
}

impl SignVector {
    pub const MAX_LEN: usize = 64;

    pub fn new(entries: &[i8]) -> Result<Self> {
        if entries.is_empty() || entries.len() > Self::MAX_LEN {
            return Err(Error::Size(format!(
                "sign vector length {} outside 1..={}",
                entries.len(),
                Self::MAX_LEN
            )));
        }
        let mut mask = 0u64;
        for (k, &e) in entries.iter().enumerate() {
            match e {
                1 => {}
                -1 => mask |= 1 << k,
                other => {
                    return Err(Error::Invalid(format!("sign entry {other} is not ±1")));
                }
            }
        }
        Ok(Self {
            n: entries.len(),
            mask,
        })
    }

    /// Builds from a bitmask; bits at positions `>= n` must be clear.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n == 0 || n > Self::MAX_LEN {
            return Err(Error::Size(format!(
                "sign vector length {n} outside 1..=64"
            )));
        }
        if n < 64 && mask >> n != 0 {
            return Err(Error::Invalid(format!(
                "mask {mask:#b} has bits beyond length {n}"
            )));
        }
        Ok(Self { n, mask })
    }

    /// The canonical representative of sign class `class` (`0 <= class < 2^(n-1)`).
    pub fn from_class(n: usize, class: usize) -> Result<Self> {
        if n == 0 || n > Self::MAX_LEN {
            return Err(Error::Size(format!(
                "sign vector length {n} outside 1..=64"
            )));
        }
        if (class as u128) >= (1u128 << (n - 1)) {
            return Err(Error::Argument(format!(
                "class {class} out of range for n = {n}"
            )));
        }
        Ok(Self {
            n,
            mask: (class as u64) << 1,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Entry `k` (zero-based) as `±1`.
    pub fn get(&self, k: usize) -> i8 {
        assert!(
            k < self.n,
            "sign index {k} out of range for length {}",
            self.n
        );
        if self.mask >> k & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn entries(&self) -> Vec<i8> {
        (0..self.n).map(|k| self.get(k)).collect()
    }

    /// `ω_i ω_j`.
    pub fn product(&self, i: usize, j: usize) -> i8 {
        self.get(i) * self.get(j)
    }

    pub fn negate(&self) -> Self {
        let full = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        Self {
            n: self.n,
            mask: !self.mask & full,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.mask & 1 == 0
    }

    pub fn canonical(&self) -> Self {
        if self.is_canonical() {
            *self
        } else {
            self.negate()
        }
    }

    /// Index of the sign class `{ω, -ω}`.
    pub fn class_index(&self) -> usize {
        (self.canonical().mask >> 1) as usize
    }

    /// All `2^n` vectors in mask order.
    pub fn all(n: usize) -> impl Iterator<Item = SignVector> {
        assert!(
            (1..64).contains(&n),
            "cannot enumerate sign vectors of length {n}"
        );
        (0..1u64 << n).map(move |mask| SignVector { n, mask })
    }

    /// Canonical representatives of all `2^(n-1)` classes in class order.
    pub fn classes(n: usize) -> impl Iterator<Item = SignVector> {
        assert!(
            (1..64).contains(&n),
            "cannot enumerate sign classes of length {n}"
        );
        (0..1u64 << (n - 1)).map(move |c| SignVector { n, mask: c << 1 })
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for k in 0..self.n {
            f.write_str(if self.get(k) > 0 { "+" } else { "-" })?;
        }
        f.write_str(")")
    }
}
