use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{GyroError, Result};

/// A subset of a finite carrier `{0, …, n-1}` stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    n: usize,
    bits: u64,
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 64, "carrier of size {n} does not fit a u64 mask");
        Subset { n, bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= 64, "carrier of size {n} does not fit a u64 mask");
        Subset {
            n,
            bits: full_mask(n),
        }
    }

    pub fn singleton(n: usize, i: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(i);
        s
    }

    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        if n > 64 {
            return Err(GyroError::BoundExceeded { n, bound: 64 });
        }
        if bits & !full_mask(n) != 0 {
            return Err(GyroError::Domain(format!(
                "mask {bits:#x} has members outside 0..{n}"
            )));
        }
        Ok(Subset { n, bits })
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n > 64 {
            return Err(GyroError::BoundExceeded { n, bound: 64 });
        }
        let mut s = Self::empty(n);
        for i in indices {
            if i >= n {
                return Err(GyroError::Domain(format!("index {i} outside 0..{n}")));
            }
            s.insert(i);
        }
        Ok(s)
    }

    /// Parses a comma-separated index list (`0,2,5`) or a hex mask (`0x25`).
    /// `{}` braces and surrounding whitespace are accepted.
    pub fn parse(n: usize, literal: &str) -> Result<Self> {
        let s = literal.trim().trim_start_matches('{').trim_end_matches('}').trim();
        let err = |msg: String| GyroError::Parse {
            line: 1,
            message: msg,
        };
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            let bits = u64::from_str_radix(hex, 16)
                .map_err(|e| err(format!("bad hex mask {literal:?}: {e}")))?;
            return Self::from_bits(n, bits);
        }
        if s.is_empty() {
            return Ok(Self::empty(n));
        }
        let indices = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| err(format!("bad index {t:?} in {literal:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(n, indices)
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == full_mask(self.n)
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.bits >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.n, "index {i} outside 0..{}", self.n);
        self.bits |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.n {
            self.bits &= !(1 << i);
        }
    }

    pub fn union(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.n, other.n);
        Subset {
            n: self.n,
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.n, other.n);
        Subset {
            n: self.n,
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        Subset {
            n: self.n,
            bits: self.bits & !other.bits,
        }
    }

    pub fn complement(&self) -> Subset {
        Subset {
            n: self.n,
            bits: !self.bits & full_mask(self.n),
        }
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        self.bits & other.bits == 0
    }

    /// Least member.
    pub fn first(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub(crate) fn check_width(&self, n: usize) -> Result<()> {
        if self.n == n {
            Ok(())
        } else {
            Err(GyroError::WidthMismatch {
                expected: n,
                got: self.n,
            })
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Calls `f` on every subset mask of an `n`-element carrier, in increasing
/// numeric order, stopping at the first `Some`.
pub(crate) fn scan_masks<W>(n: usize, mut f: impl FnMut(u64) -> Option<W>) -> Option<W> {
    debug_assert!(n < 64);
    (0..1u64 << n).find_map(|m| f(m))
}
