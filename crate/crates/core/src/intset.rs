//! Sorted sets of non-negative integers and exact (capped) sumsets.

use crate::error::{Error, Result};
use crate::ntt;
use serde::{Deserialize, Serialize};

/// Operand pairs at or below this product use the sort-merge engine.
pub const PAIRWISE_THRESHOLD: u128 = 4096;

/// Upper bound on the value window a word-parallel sumset may allocate (bits).
const BITSET_MAX_WIDTH: u64 = 1 << 32;

/// A strictly increasing sequence of non-negative integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntegerSet {
    elems: Vec<u64>,
}

impl IntegerSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(x: u64) -> Self {
        Self { elems: vec![x] }
    }

    /// Builds a set from signed input, rejecting negative values.
    pub fn make_set(values: &[i64]) -> Result<Self> {
        let mut v = Vec::with_capacity(values.len());
        for &x in values {
            if x < 0 {
                return Err(Error::NegativeValue(x));
            }
            v.push(x as u64);
        }
        Ok(Self::from_unsorted(v))
    }

    pub fn from_unsorted(mut v: Vec<u64>) -> Self {
        v.sort_unstable();
        v.dedup();
        Self { elems: v }
    }

    /// Caller guarantees `v` is strictly increasing.
    pub(crate) fn from_sorted(v: Vec<u64>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Self { elems: v }
    }

    /// Sorts and deduplicates in place; cheaper than `from_unsorted` when
    /// `v` is already nearly sorted.
    pub(crate) fn from_nondecreasing(mut v: Vec<u64>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] <= w[1]));
        v.dedup();
        Self { elems: v }
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.elems
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.elems.iter().copied()
    }

    pub fn min(&self) -> Option<u64> {
        self.elems.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.elems.last().copied()
    }

    pub fn sum(&self) -> Result<u64> {
        self.elems
            .iter()
            .try_fold(0u64, |acc, &x| acc.checked_add(x))
            .ok_or(Error::Overflow("set sum"))
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    /// Largest element `<= x`.
    pub fn predecessor(&self, x: u64) -> Option<u64> {
        let idx = self.elems.partition_point(|&e| e <= x);
        idx.checked_sub(1).map(|i| self.elems[i])
    }

    /// Smallest element `>= x`.
    pub fn successor(&self, x: u64) -> Option<u64> {
        let idx = self.elems.partition_point(|&e| e < x);
        self.elems.get(idx).copied()
    }

    /// `{s : w <= s <= v}`.
    pub fn restrict(&self, w: u64, v: u64) -> Self {
        if w > v {
            return Self::new();
        }
        let lo = self.elems.partition_point(|&e| e < w);
        let hi = self.elems.partition_point(|&e| e <= v);
        Self::from_sorted(self.elems[lo..hi].to_vec())
    }

    pub(crate) fn range_slice(&self, w: u64, v_exclusive: u64) -> &[u64] {
        let lo = self.elems.partition_point(|&e| e < w);
        let hi = self.elems.partition_point(|&e| e < v_exclusive);
        &self.elems[lo..hi.max(lo)]
    }

    /// Maps every element `x` to `floor(x * den / num)`.
    pub fn scale_floor(&self, num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidInstance(
                "scale factors must be positive".into(),
            ));
        }
        let mut out = Vec::with_capacity(self.elems.len());
        for &x in &self.elems {
            let y = (x as u128) * (den as u128) / (num as u128);
            out.push(u64::try_from(y).map_err(|_| Error::Overflow("scale_floor"))?);
        }
        Ok(Self::from_nondecreasing(out))
    }

    pub fn union(&self, other: &Self) -> Self {
        let (a, b) = (&self.elems, &other.elems);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self::from_sorted(out)
    }

    /// `{sigma - s : s in self}`; every element must be `<= sigma`.
    pub fn reflect(&self, sigma: u64) -> Result<Self> {
        if self.max().is_some_and(|m| m > sigma) {
            return Err(Error::InvalidInstance(format!(
                "cannot reflect elements above {sigma}"
            )));
        }
        Ok(Self::from_sorted(
            self.elems.iter().rev().map(|&s| sigma - s).collect(),
        ))
    }
}

impl FromIterator<u64> for IntegerSet {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        Self::from_unsorted(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a IntegerSet {
    type Item = &'a u64;
    type IntoIter = std::slice::Iter<'a, u64>;
    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

/// Exact `(A + B)[0, cap]`; `cap = None` means no upper bound.
pub fn sumset(a: &IntegerSet, b: &IntegerSet, cap: Option<u64>) -> Result<IntegerSet> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    crate::stats::sumset_call();
    sumset_slices(a.as_slice(), b.as_slice(), cap).map(IntegerSet::from_sorted)
}

/// Exact `((A + B) ∪ A ∪ B)[0, cap]`.
pub fn oplus(a: &IntegerSet, b: &IntegerSet, cap: Option<u64>) -> Result<IntegerSet> {
    let sums = sumset(a, b, cap)?;
    let limit = cap.unwrap_or(u64::MAX);
    Ok(sums
        .union(&a.restrict(0, limit))
        .union(&b.restrict(0, limit)))
}

/// Sumset over sorted, deduplicated, non-empty slices.
pub(crate) fn sumset_slices(a: &[u64], b: &[u64], cap: Option<u64>) -> Result<Vec<u64>> {
    let limit = cap.unwrap_or(u64::MAX);
    let lo = match a[0].checked_add(b[0]) {
        Some(lo) if lo <= limit => lo,
        Some(_) => return Ok(Vec::new()),
        None if cap.is_some() => return Ok(Vec::new()),
        None => return Err(Error::Overflow("sumset")),
    };
    let hi = match a[a.len() - 1].checked_add(b[b.len() - 1]) {
        Some(h) => h.min(limit),
        None if cap.is_some() => limit,
        None => return Err(Error::Overflow("sumset")),
    };

    let pairs = a.len() as u128 * b.len() as u128;
    if pairs <= PAIRWISE_THRESHOLD {
        return Ok(pairwise(a, b, limit));
    }

    let width = hi - lo + 1;
    let pairwise_cost = pairs as f64 * (pairs as f64).log2().max(1.0);
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let bitset_cost = if width <= BITSET_MAX_WIDTH {
        small.len() as f64 * (width as f64 / 64.0 + 2.0)
    } else {
        f64::INFINITY
    };
    // Truncated operands still need a transform of up to twice the window.
    let ntt_cost = if width <= 1 << (ntt::MAX_LOG_LEN - 1) {
        let n = (2.0 * width as f64).log2().ceil().exp2();
        4.0 * n * n.log2() + (a.len() + b.len()) as f64
    } else {
        f64::INFINITY
    };

    if ntt_cost <= bitset_cost && ntt_cost <= pairwise_cost {
        let pa: Vec<usize> = a
            .iter()
            .map(|&x| x - a[0])
            .take_while(|&x| x < width)
            .map(|x| x as usize)
            .collect();
        let pb: Vec<usize> = b
            .iter()
            .map(|&x| x - b[0])
            .take_while(|&x| x < width)
            .map(|x| x as usize)
            .collect();
        Ok(ntt::indicator_convolution(&pa, &pb, width as usize)
            .into_iter()
            .map(|k| lo + k as u64)
            .collect())
    } else if bitset_cost <= pairwise_cost {
        Ok(bitset_sumset(small, large, lo, width))
    } else {
        Ok(pairwise(a, b, limit))
    }
}

fn pairwise(a: &[u64], b: &[u64], limit: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            match x.checked_add(y) {
                Some(s) if s <= limit => out.push(s),
                _ => break,
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Shift-or of `large` by every element of `small`, over the window
/// `[lo, lo + width)`.
fn bitset_sumset(small: &[u64], large: &[u64], lo: u64, width: u64) -> Vec<u64> {
    crate::stats::bitset_call();
    let words = width.div_ceil(64) as usize;
    let mut src = vec![0u64; words];
    for &y in large {
        let p = y - large[0];
        if p >= width {
            break;
        }
        src[(p / 64) as usize] |= 1 << (p % 64);
    }
    let mut dst = vec![0u64; words];
    for &x in small {
        let shift = x - small[0];
        if shift >= width {
            break;
        }
        let ws = (shift / 64) as usize;
        let bs = (shift % 64) as u32;
        if bs == 0 {
            for i in ws..words {
                dst[i] |= src[i - ws];
            }
        } else {
            dst[ws] |= src[0] << bs;
            for i in ws + 1..words {
                dst[i] |= (src[i - ws] << bs) | (src[i - ws - 1] >> (64 - bs));
            }
        }
    }
    let tail = width % 64;
    if tail != 0 {
        dst[words - 1] &= (1u64 << tail) - 1;
    }
    let mut out = Vec::new();
    for (i, &w) in dst.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let b = w.trailing_zeros() as u64;
            out.push(lo + i as u64 * 64 + b);
            w &= w - 1;
        }
    }
    out
}
