//! Exact reference computations and the approximation checker.

use crate::error::{Error, Result};
use crate::intset::IntegerSet;
use serde::Serialize;

/// Largest cap the subset-sum bitset may cover (bits).
pub const MAX_BITSET_CAP: u64 = 1 << 33;

/// Largest half-sum for which a witness table is built (4 bytes per entry).
pub const MAX_WITNESS_CAP: u64 = 1 << 27;

/// Instances up to this size fall back to exhaustive enumeration.
pub const EXHAUSTIVE_MAX_N: usize = 24;

struct Bitset {
    words: Vec<u64>,
    cap: u64,
}

impl Bitset {
    fn new(cap: u64) -> Self {
        let mut words = vec![0u64; (cap / 64 + 1) as usize];
        words[0] = 1;
        Self { words, cap }
    }

    /// Word `i` of `self << x`.
    fn shifted_word(&self, i: usize, x: u64) -> u64 {
        let w = (x / 64) as usize;
        let b = (x % 64) as u32;
        if i < w {
            return 0;
        }
        let lo = self.words[i - w] << b;
        if b > 0 && i > w {
            lo | (self.words[i - w - 1] >> (64 - b))
        } else {
            lo
        }
    }

    fn tail_mask(&self) -> u64 {
        let r = (self.cap % 64) as u32;
        if r == 63 {
            u64::MAX
        } else {
            (1u64 << (r + 1)) - 1
        }
    }

    /// `self |= self << x`, calling `on_new` for every newly reached value.
    fn add_item(&mut self, x: u64, mut on_new: impl FnMut(u64)) {
        if x > self.cap {
            return;
        }
        let last = self.words.len() - 1;
        let first = (x / 64) as usize;
        for i in (first..=last).rev() {
            let mut v = self.shifted_word(i, x) & !self.words[i];
            if i == last {
                v &= self.tail_mask();
            }
            if v == 0 {
                continue;
            }
            self.words[i] |= v;
            while v != 0 {
                let t = v.trailing_zeros() as u64;
                on_new(i as u64 * 64 + t);
                v &= v - 1;
            }
        }
    }

    fn to_set(&self) -> IntegerSet {
        let mut out = Vec::new();
        for (i, &w) in self.words.iter().enumerate() {
            let mut v = w;
            while v != 0 {
                out.push(i as u64 * 64 + v.trailing_zeros() as u64);
                v &= v - 1;
            }
        }
        IntegerSet::from_unsorted(out)
    }
}

fn checked_total(x: &[u64]) -> Result<u64> {
    x.iter()
        .try_fold(0u64, |acc, &v| acc.checked_add(v))
        .ok_or(Error::Overflow("sum of instance"))
}

/// `S_X ∩ [0, cap]` by word-parallel shift-or. `cap = None` means `Σ(X)`.
pub fn exact_subset_sums(x: &[u64], cap: Option<u64>) -> Result<IntegerSet> {
    let total = checked_total(x)?;
    let cap = cap.map_or(total, |c| c.min(total));
    if cap > MAX_BITSET_CAP {
        return Err(Error::LimitExceeded(format!(
            "subset-sum cap {cap} exceeds {MAX_BITSET_CAP}"
        )));
    }
    let mut bits = Bitset::new(cap);
    for &v in x {
        bits.add_item(v, |_| {});
    }
    Ok(bits.to_set())
}

/// Subset sums up to a cap, with the first item index that reached each sum.
/// Walking back through those indices yields a witness.
#[derive(Clone, Debug)]
pub struct SubsetSumTable {
    first: Vec<u32>,
    items: Vec<u64>,
}

impl SubsetSumTable {
    const UNREACHED: u32 = u32::MAX;

    pub fn build(x: &[u64], cap: u64) -> Result<Self> {
        let total = checked_total(x)?;
        let cap = cap.min(total);
        if cap > MAX_WITNESS_CAP {
            return Err(Error::LimitExceeded(format!(
                "witness table cap {cap} exceeds {MAX_WITNESS_CAP}"
            )));
        }
        if x.len() >= u32::MAX as usize {
            return Err(Error::LimitExceeded("too many items".into()));
        }
        let mut first = vec![Self::UNREACHED; cap as usize + 1];
        first[0] = 0;
        let mut bits = Bitset::new(cap);
        for (idx, &v) in x.iter().enumerate() {
            bits.add_item(v, |s| first[s as usize] = idx as u32);
        }
        Ok(Self {
            first,
            items: x.to_vec(),
        })
    }

    pub fn cap(&self) -> u64 {
        self.first.len() as u64 - 1
    }

    pub fn reachable(&self, s: u64) -> bool {
        s == 0
            || self
                .first
                .get(s as usize)
                .is_some_and(|&i| i != Self::UNREACHED)
    }

    pub fn max_reachable(&self) -> u64 {
        (0..=self.cap())
            .rev()
            .find(|&s| self.reachable(s))
            .unwrap_or(0)
    }

    /// Indices of a subset summing to `s`, in increasing order.
    pub fn witness(&self, s: u64) -> Option<Vec<usize>> {
        if !self.reachable(s) {
            return None;
        }
        let mut out = Vec::new();
        let mut rest = s;
        while rest > 0 {
            let i = self.first[rest as usize] as usize;
            out.push(i);
            rest -= self.items[i];
        }
        out.reverse();
        Some(out)
    }
}

/// Best subset sum not exceeding `Σ(X)/2` by enumerating all `2^n` subsets.
pub fn exhaustive_partition(x: &[u64]) -> Result<(u64, Vec<usize>)> {
    if x.len() > EXHAUSTIVE_MAX_N {
        return Err(Error::LimitExceeded(format!(
            "exhaustive enumeration needs n <= {EXHAUSTIVE_MAX_N}"
        )));
    }
    let total = checked_total(x)?;
    let half = total / 2;
    let mut best = (0u64, 0u32);
    for mask in 0u32..(1u32 << x.len()) {
        let s: u64 = (0..x.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| x[i])
            .sum();
        if s <= half && s > best.0 {
            best = (s, mask);
        }
    }
    let idx = (0..x.len()).filter(|&i| best.1 >> i & 1 == 1).collect();
    Ok((best.0, idx))
}

/// Exact Partition optimum with a realising index set.
pub fn exact_partition_opt(x: &[u64]) -> Result<(u64, Vec<usize>)> {
    let total = checked_total(x)?;
    let half = total / 2;
    if half <= MAX_WITNESS_CAP {
        let table = SubsetSumTable::build(x, half)?;
        let opt = table.max_reachable();
        let witness = table.witness(opt).expect("maximum is reachable");
        return Ok((opt, witness));
    }
    exhaustive_partition(x)
}

/// Approximation mode: factor `1 - num/den`, or additive error `δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ApproxMode {
    Factor { num: u64, den: u64 },
    Additive(u64),
}

/// Approximation requirement on an interval `[lo, hi]` (`hi = None` is unbounded).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ApproxSpec {
    pub mode: ApproxMode,
    pub lo: u64,
    pub hi: Option<u64>,
}

impl ApproxSpec {
    /// Factor `1 - num/den` on `[0, ∞)`.
    pub fn factor(num: u64, den: u64) -> Self {
        assert!(den > 0 && num <= den, "factor needs 0 <= num/den <= 1");
        Self {
            mode: ApproxMode::Factor { num, den },
            lo: 0,
            hi: None,
        }
    }

    pub fn additive(delta: u64) -> Self {
        Self {
            mode: ApproxMode::Additive(delta),
            lo: 0,
            hi: None,
        }
    }

    pub fn within(self, lo: u64, hi: Option<u64>) -> Self {
        Self { lo, hi, ..self }
    }
}

/// The first element breaking one of the two clauses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// An element of the target inside the interval has no close approximant.
    Uncovered(u64),
    /// An approximant has no close target element.
    Unsupported(u64),
}

fn close_factor(num: u64, den: u64, small: u64, large: u64) -> bool {
    small <= large && (den - num) as u128 * large as u128 <= den as u128 * small as u128
}

fn close_additive(delta: u64, a: u64, b: u64) -> bool {
    a.abs_diff(b) <= delta
}

fn near(set: &IntegerSet, x: u64) -> (Option<u64>, Option<u64>) {
    (set.predecessor(x), set.successor(x))
}

/// Checks that `approx` approximates `target` under `spec`.
pub fn check_approx(
    approx: &IntegerSet,
    target: &IntegerSet,
    spec: &ApproxSpec,
) -> std::result::Result<(), Violation> {
    let hi = spec.hi.unwrap_or(u64::MAX);
    for s in target.restrict(spec.lo, hi).iter() {
        let ok = match spec.mode {
            ApproxMode::Factor { num, den } => approx
                .predecessor(s)
                .is_some_and(|p| close_factor(num, den, p, s)),
            ApproxMode::Additive(d) => {
                let (p, q) = near(approx, s);
                p.is_some_and(|p| close_additive(d, p, s))
                    || q.is_some_and(|q| close_additive(d, q, s))
            }
        };
        if !ok {
            return Err(Violation::Uncovered(s));
        }
    }
    for t in approx.iter() {
        let ok = match spec.mode {
            ApproxMode::Factor { num, den } => target
                .successor(t)
                .is_some_and(|s| close_factor(num, den, t, s)),
            ApproxMode::Additive(d) => {
                let (p, q) = near(target, t);
                p.is_some_and(|p| close_additive(d, p, t))
                    || q.is_some_and(|q| close_additive(d, q, t))
            }
        };
        if !ok {
            return Err(Violation::Unsupported(t));
        }
    }
    Ok(())
}
