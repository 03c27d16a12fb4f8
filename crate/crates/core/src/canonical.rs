//! μ-canonical sets and the approximate sumset `⊕_μ`.
//!
//! With `U = 1/μ`, segment 0 is `[0, 2U)` and segment `i >= 1` is
//! `[2^i·U, 2^{i+1}·U)`. A set is μ-canonical when every element of
//! segment `i` is a multiple of `2^i`, so the resolution coarsens with
//! magnitude exactly as a `(1 - μ)` factor tolerates.

use crate::error::{Error, Result};
use crate::intset::{sumset_slices, IntegerSet};
use serde::Serialize;

/// Reciprocal precision `U = 1/μ`, `U >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Precision(u64);

impl Precision {
    pub fn new(u: u64) -> Result<Self> {
        if u < 2 {
            return Err(Error::InvalidPrecision(u));
        }
        Ok(Self(u))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Segment index of `x`.
    pub fn segment(self, x: u64) -> u32 {
        let q = x / self.0;
        if q < 2 {
            0
        } else {
            63 - q.leading_zeros()
        }
    }

    /// Lower end of segment `i` (saturating).
    pub fn segment_start(self, i: u32) -> u64 {
        if i == 0 {
            0
        } else {
            let v = (self.0 as u128) << i.min(100);
            u64::try_from(v).unwrap_or(u64::MAX)
        }
    }

    /// Rounds `x` down to a multiple of `2^segment(x)`.
    pub fn round(self, x: u64) -> u64 {
        let i = self.segment(x);
        (x >> i) << i
    }
}

/// Every element of segment `i` is a multiple of `2^i`.
pub fn is_canonical(set: &IntegerSet, p: Precision) -> bool {
    set.iter().all(|x| p.round(x) == x)
}

/// Canonical, and every segment `1..=h` is occupied where `h` is the segment
/// of the maximum.
pub fn is_complete_canonical(set: &IntegerSet, p: Precision) -> bool {
    is_canonical(set, p) && segments_complete(set, p)
}

fn segments_complete(set: &IntegerSet, p: Precision) -> bool {
    let Some(max) = set.max() else {
        return true;
    };
    let top = p.segment(max);
    let mut seen = 0u64;
    for x in set.iter() {
        seen |= 1 << p.segment(x);
    }
    (1..=top).all(|i| seen & (1 << i) != 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuCanonicalSet {
    base: IntegerSet,
    precision: Precision,
    complete: bool,
}

impl MuCanonicalSet {
    pub fn new(base: IntegerSet, precision: Precision) -> Result<Self> {
        if !is_canonical(&base, precision) {
            return Err(Error::NotCanonical(precision.get()));
        }
        Ok(Self::from_canonical(base, precision))
    }

    pub(crate) fn from_canonical(base: IntegerSet, precision: Precision) -> Self {
        debug_assert!(is_canonical(&base, precision));
        let complete = segments_complete(&base, precision);
        Self {
            base,
            precision,
            complete,
        }
    }

    pub fn singleton(x: u64, precision: Precision) -> Result<Self> {
        Self::new(IntegerSet::singleton(x), precision)
    }

    pub fn base(&self) -> &IntegerSet {
        &self.base
    }

    pub fn into_base(self) -> IntegerSet {
        self.base
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn max(&self) -> Option<u64> {
        self.base.max()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.base.contains(x)
    }

    /// Segment of the maximum, if the maximum is at least `U`.
    pub fn top_level(&self) -> Option<u32> {
        self.max()
            .filter(|&m| m >= self.precision.get())
            .map(|m| self.precision.segment(m))
    }

    pub fn segment_slice(&self, i: u32) -> &[u64] {
        let p = self.precision;
        let hi = if i == 0 {
            p.segment_start(1)
        } else {
            p.segment_start(i + 1)
        };
        let lo = p.segment_start(i);
        if i > 0 && lo == u64::MAX {
            return &[];
        }
        self.base.range_slice(lo, hi)
    }

    /// Segments `0..k` (exclusive of `k`), a prefix of the sorted elements.
    fn below_segment(&self, k: u32) -> &[u64] {
        if k == 0 {
            return &[];
        }
        self.base.range_slice(0, self.precision.segment_start(k))
    }

    /// Drops elements above `cap`; the result stays canonical.
    pub fn capped(&self, cap: u64) -> Self {
        Self::from_canonical(self.base.restrict(0, cap), self.precision)
    }
}

/// Rounds every element down to a multiple of `2^i` within its segment.
/// Elements below `2U` are unchanged.
pub fn round_to_canonical(set: &IntegerSet, p: Precision) -> Result<MuCanonicalSet> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let rounded: Vec<u64> = set.iter().map(|x| p.round(x)).collect();
    Ok(MuCanonicalSet::from_canonical(
        IntegerSet::from_nondecreasing(rounded),
        p,
    ))
}

/// Where an element of `A ⊕_μ B` was first produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Hint {
    Left,
    Right,
    /// Rounded sum at scale `2^k`: segment `k` of the left with segments
    /// `0..=k` of the right (`left_top`), or segments `0..k` of the left with
    /// segment `k` of the right.
    Pair {
        k: u8,
        left_top: bool,
    },
}

/// Result of `⊕_μ` with a per-element construction record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub set: MuCanonicalSet,
    hints: Vec<Hint>,
}

impl Product {
    pub fn hints(&self) -> &[Hint] {
        &self.hints
    }

    pub fn hint_of(&self, s: u64) -> Option<Hint> {
        self.set
            .base()
            .as_slice()
            .binary_search(&s)
            .ok()
            .map(|i| self.hints[i])
    }

    pub fn into_parts(self) -> (MuCanonicalSet, Vec<Hint>) {
        (self.set, self.hints)
    }
}

/// `A ⊕_μ B`: a μ-canonical set approximating `A ⊕ B` with factor `1 - 2μ`.
pub fn oplus_mu(a: &MuCanonicalSet, b: &MuCanonicalSet) -> Result<Product> {
    oplus_mu_capped(a, b, None)
}

/// `(A ⊕_μ B)[0, cap]`. Sums above `cap` are never materialised.
pub fn oplus_mu_capped(
    a: &MuCanonicalSet,
    b: &MuCanonicalSet,
    cap: Option<u64>,
) -> Result<Product> {
    let p = a.precision;
    if p != b.precision {
        return Err(Error::PrecisionMismatch(p.get(), b.precision.get()));
    }
    let (Some(amax), Some(bmax)) = (a.max(), b.max()) else {
        return Err(Error::EmptySet);
    };
    crate::stats::oplus_mu_call();
    let limit = cap.unwrap_or(u64::MAX);

    // Smallest h >= 1 with A, B ⊆ [0, 2^h·U).
    let top = amax.max(bmax);
    let mut h = 1u32;
    while p.segment_start(h) <= top {
        h += 1;
    }

    let mut runs: Vec<(Vec<u64>, Vec<Hint>)> = Vec::new();
    let mut push_run = |values: Vec<u64>, hint: Hint| {
        if !values.is_empty() {
            let hints = vec![hint; values.len()];
            runs.push((values, hints));
        }
    };
    push_run(
        a.base.iter().take_while(|&x| x <= limit).collect(),
        Hint::Left,
    );
    push_run(
        b.base.iter().take_while(|&x| x <= limit).collect(),
        Hint::Right,
    );

    // Pairs (i, j) with max(i, j) = k are all rounded to multiples of 2^k,
    // so they collapse into two sumsets per k: segment k of one side with
    // every lower segment of the other (rounded down to 2^k).
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in 0..h {
        if p.segment_start(k) > limit {
            break;
        }
        for left_top in [true, false] {
            let (lhs, rhs) = if left_top {
                (a.segment_slice(k), b.below_segment(k + 1))
            } else {
                (a.below_segment(k), b.segment_slice(k))
            };
            if lhs.is_empty() || rhs.is_empty() {
                continue;
            }
            xs.clear();
            xs.extend(lhs.iter().map(|&x| x >> k));
            xs.dedup();
            ys.clear();
            ys.extend(rhs.iter().map(|&y| y >> k));
            ys.dedup();
            let scaled_cap = cap.map(|c| (c >> k).saturating_add(1));
            let sums = sumset_slices(&xs, &ys, scaled_cap)?;
            // Rounding is monotone, so the run stays sorted.
            let mut run: Vec<u64> = Vec::with_capacity(sums.len());
            for c in sums {
                let v = c.checked_shl(k).filter(|v| v >> k == c);
                let Some(v) = v else {
                    return Err(Error::Overflow("oplus_mu"));
                };
                let s = p.round(v);
                if s > limit {
                    break;
                }
                if run.last() != Some(&s) {
                    run.push(s);
                }
            }
            push_run(
                run,
                Hint::Pair {
                    k: k as u8,
                    left_top,
                },
            );
        }
    }

    while runs.len() > 1 {
        let mut next = Vec::with_capacity(runs.len().div_ceil(2));
        let mut it = runs.into_iter();
        while let Some(x) = it.next() {
            match it.next() {
                Some(y) => next.push(merge_runs(x, y)),
                None => next.push(x),
            }
        }
        runs = next;
    }
    let (values, hints) = runs.pop().unwrap_or_default();
    Ok(Product {
        set: MuCanonicalSet::from_canonical(IntegerSet::from_sorted(values), p),
        hints,
    })
}

/// Merges two sorted, duplicate-free runs. On equal values the smaller
/// hint wins, matching a sort of `(value, hint)` pairs.
fn merge_runs(x: (Vec<u64>, Vec<Hint>), y: (Vec<u64>, Vec<Hint>)) -> (Vec<u64>, Vec<Hint>) {
    let (xv, xh) = x;
    let (yv, yh) = y;
    let mut values = Vec::with_capacity(xv.len() + yv.len());
    let mut hints = Vec::with_capacity(xv.len() + yv.len());
    let (mut i, mut j) = (0, 0);
    while i < xv.len() && j < yv.len() {
        match xv[i].cmp(&yv[j]) {
            std::cmp::Ordering::Less => {
                values.push(xv[i]);
                hints.push(xh[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                values.push(yv[j]);
                hints.push(yh[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                values.push(xv[i]);
                hints.push(xh[i].min(yh[j]));
                i += 1;
                j += 1;
            }
        }
    }
    values.extend_from_slice(&xv[i..]);
    hints.extend_from_slice(&xh[i..]);
    values.extend_from_slice(&yv[j..]);
    hints.extend_from_slice(&yh[j..]);
    (values, hints)
}

/// `(1 - 2/U)(a + b) <= s <= a + b`.
pub fn pair_within_factor(p: Precision, a: u64, b: u64, s: u64) -> bool {
    let total = a as u128 + b as u128;
    let u = p.get() as u128;
    (s as u128) <= total && (u - 2) * total <= u * s as u128
}

/// Finds `a ∈ A ∪ {0}`, `b ∈ B ∪ {0}` with `(1 - 2/U)(a + b) <= s <= a + b`
/// using the construction record of `product = A ⊕_μ B`.
pub fn recover_pair(
    a: &MuCanonicalSet,
    b: &MuCanonicalSet,
    product: &Product,
    s: u64,
) -> Result<(u64, u64)> {
    let hint = product.hint_of(s).ok_or(Error::NotInSet(s))?;
    recover_with_hint(a, b, hint, s)
}

pub(crate) fn recover_with_hint(
    a: &MuCanonicalSet,
    b: &MuCanonicalSet,
    hint: Hint,
    s: u64,
) -> Result<(u64, u64)> {
    match hint {
        Hint::Left => Ok((s, 0)),
        Hint::Right => Ok((0, s)),
        Hint::Pair { k, left_top } => {
            search_level(a, b, k as u32, left_top, s).ok_or(Error::RecoveryFailed(s))
        }
    }
}

/// Recovery without a construction record: membership first, then the two
/// scales whose rounded sums can land in the segment of `s`.
pub fn recover_pair_search(a: &MuCanonicalSet, b: &MuCanonicalSet, s: u64) -> Result<(u64, u64)> {
    if a.contains(s) {
        return Ok((s, 0));
    }
    if b.contains(s) {
        return Ok((0, s));
    }
    let top = a.precision.segment(s);
    for k in [top.checked_sub(1), Some(top)].into_iter().flatten() {
        for left_top in [true, false] {
            if let Some(pair) = search_level(a, b, k, left_top, s) {
                return Ok(pair);
            }
        }
    }
    Err(Error::RecoveryFailed(s))
}

/// Looks for `x`, `y` from the slices named by `(k, left_top)` with
/// `round(2^k·(⌊x/2^k⌋ + ⌊y/2^k⌋)) = s`.
fn search_level(
    a: &MuCanonicalSet,
    b: &MuCanonicalSet,
    k: u32,
    left_top: bool,
    s: u64,
) -> Option<(u64, u64)> {
    let p = a.precision;
    let step = 1u64.checked_shl(k)?;
    if !s.is_multiple_of(step) {
        return None;
    }
    let (lhs, rhs) = if left_top {
        (a.segment_slice(k), b.below_segment(k + 1))
    } else {
        (a.below_segment(k), b.segment_slice(k))
    };
    if lhs.is_empty() || rhs.is_empty() {
        return None;
    }
    let (small, large, swapped) = if lhs.len() <= rhs.len() {
        (lhs, rhs, false)
    } else {
        (rhs, lhs, true)
    };
    for c in [Some(s), s.checked_add(step)].into_iter().flatten() {
        if p.round(c) != s {
            continue;
        }
        let t = c >> k;
        for &x in small {
            let Some(rest) = t.checked_sub(x >> k) else {
                break;
            };
            let Some(lo) = rest.checked_shl(k).filter(|v| v >> k == rest) else {
                continue;
            };
            let idx = large.partition_point(|&y| y < lo);
            if let Some(&y) = large.get(idx) {
                if y >> k == rest {
                    return Some(if swapped { (y, x) } else { (x, y) });
                }
            }
        }
    }
    None
}
