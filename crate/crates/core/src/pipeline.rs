//! Partition → bounded-window subproblems → Partition answer.
//!
//! With internal precision `E'` (a power-of-two multiple of `E`), all work
//! happens in units where `Σ/2` becomes `E'^2`:
//!
//! 1. items below `Σ/(2E')` are packed into groups of size in
//!    `[Σ/(2E'), Σ/E')`, the last partial group is dropped;
//! 2. every item is scaled to `⌊2xE'^2/Σ⌋`;
//! 3. items are split into classes `[αE', 2αE')` for powers of two `α`;
//! 4. each class is listed exactly up to `2αE'` and solved above that on
//!    dyadic windows `[βE', 2βE']` by the sumset tree; the lower half is
//!    mirrored to the upper half;
//! 5. the class approximations are combined with a rounded dense sumset and
//!    the largest value not above `E'^2 + E'^2/(4E)` is traced back to a
//!    subset of the original items.
//!
//! `E'` is the smallest multiple whose summed stage errors stay within
//! `E'^2/(4E)`, i.e. `Σ/(8E)` in original units.

use crate::error::{Error, Result};
use crate::intset::{sumset, IntegerSet};
use crate::reduced::{solve_rp, RpInstance, RpResult, ThresholdConstant};
use rayon::prelude::*;
use serde::Serialize;
use std::str::FromStr;
use std::time::{Duration, Instant};

/// `ε = 1/E` for an integer `E >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Epsilon(u64);

impl Epsilon {
    pub fn from_inverse(e: u64) -> Result<Self> {
        if e < 2 {
            return Err(Error::InvalidInstance(format!(
                "1/epsilon must be at least 2, got {e}"
            )));
        }
        Ok(Self(e))
    }

    pub fn inverse(self) -> u64 {
        self.0
    }

    /// Accepts `1/E`, a fraction `p/q`, or a decimal such as `0.05`, and
    /// rounds to `1/⌈1/ε⌉`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInstance(format!("cannot parse epsilon {s:?}"));
        let s = s.trim();
        let (p, q): (u128, u128) = if let Some((a, b)) = s.split_once('/') {
            (
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            )
        } else {
            let (int, frac) = s.split_once('.').unwrap_or((s, ""));
            if frac.len() > 18
                || !int.bytes().all(|c| c.is_ascii_digit())
                || !frac.bytes().all(|c| c.is_ascii_digit())
                || int.len() + frac.len() == 0
            {
                return Err(bad());
            }
            let digits = format!("{int}{frac}");
            (
                digits.parse().map_err(|_| bad())?,
                10u128.pow(frac.len() as u32),
            )
        };
        if p == 0 || q == 0 {
            return Err(bad());
        }
        let e = u64::try_from(q.div_ceil(p)).map_err(|_| bad())?;
        Self::from_inverse(e)
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionInstance {
    values: Vec<u64>,
    total: u64,
    epsilon: Epsilon,
}

impl PartitionInstance {
    /// Values must be positive and sum below `2^62`.
    pub fn new(values: Vec<u64>, epsilon: Epsilon) -> Result<Self> {
        if values.contains(&0) {
            return Err(Error::InvalidInstance("values must be positive".into()));
        }
        let total = values
            .iter()
            .try_fold(0u64, |acc, &v| acc.checked_add(v))
            .filter(|&t| t < 1 << 62)
            .ok_or(Error::Overflow("sum of values"))?;
        Ok(Self {
            values,
            total,
            epsilon,
        })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn epsilon(&self) -> Epsilon {
        self.epsilon
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub threshold: ThresholdConstant,
    /// Solving fails with [`Error::LimitExceeded`] if the internal precision
    /// would reach this value.
    pub max_internal_precision: u64,
    /// Worker threads; `None` uses the ambient rayon pool.
    pub threads: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            threshold: ThresholdConstant::default(),
            max_internal_precision: 1 << 31,
            threads: None,
        }
    }
}

/// Additive error of one magnitude class, in internal units.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassBudget {
    pub alpha: u64,
    pub items: usize,
    pub windows: usize,
    pub error: u64,
}

/// Per-stage additive errors in internal units (`Σ/2` maps to `E'^2`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorBudget {
    pub multiplier: u64,
    pub internal_precision: u64,
    pub allowed: u64,
    pub tiny_merge: u64,
    pub scaling: u64,
    pub classes: Vec<ClassBudget>,
    pub combine: u64,
    pub total: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionSolution {
    /// Indices into the input values, increasing.
    pub subset_indices: Vec<usize>,
    pub achieved_sum: u64,
    pub total: u64,
    pub epsilon_inv: u64,
    /// `max(X) >= 3Σ/4`; the answer is exact.
    pub trivial: bool,
    pub budget: Option<ErrorBudget>,
}

/// If `4·max(X) >= 3·Σ(X)`, every item except one maximum is optimal.
pub fn trivial_case(values: &[u64]) -> Option<Vec<usize>> {
    let total: u128 = values.iter().map(|&v| v as u128).sum();
    let (imax, &max) = values
        .iter()
        .enumerate()
        .max_by_key(|&(i, v)| (*v, std::cmp::Reverse(i)))?;
    (4 * max as u128 >= 3 * total).then(|| (0..values.len()).filter(|&i| i != imax).collect())
}

/// Items below `num/den` are packed greedily in ascending order into groups
/// whose sums reach `num/den`; a final group below that is dropped. Returns
/// the new values and, for each, the input indices it stands for.
pub fn merge_tiny(values: &[u64], num: u128, den: u128) -> (Vec<u64>, Vec<Vec<usize>>) {
    let is_tiny = |x: u64| (x as u128) * den < num;
    let mut out = Vec::new();
    let mut groups = Vec::new();
    let mut tiny = Vec::new();
    for (i, &x) in values.iter().enumerate() {
        if is_tiny(x) {
            tiny.push(i);
        } else {
            out.push(x);
            groups.push(vec![i]);
        }
    }
    tiny.sort_by_key(|&i| (values[i], i));
    let mut current = Vec::new();
    let mut sum = 0u64;
    for i in tiny {
        current.push(i);
        sum += values[i];
        if (sum as u128) * den >= num {
            out.push(sum);
            groups.push(std::mem::take(&mut current));
            sum = 0;
        }
    }
    (out, groups)
}

/// `x ↦ ⌊2·x·e^2 / sigma⌋`, i.e. `Σ/2` becomes `e^2`.
pub fn scale_round(values: &[u64], e: u64, sigma: u64) -> Result<Vec<u64>> {
    if sigma == 0 {
        return Err(Error::InvalidInstance("zero total".into()));
    }
    let f = 2 * (e as u128) * (e as u128);
    values
        .iter()
        .map(|&x| {
            u64::try_from(x as u128 * f / sigma as u128).map_err(|_| Error::Overflow("scale_round"))
        })
        .collect()
}

/// Splits indices by the dyadic class `[αe, 2αe)` of their value.
pub fn partition_by_magnitude(values: &[u64], e: u64) -> Vec<(u64, Vec<usize>)> {
    let mut classes: Vec<(u64, Vec<usize>)> = Vec::new();
    let mut order: Vec<usize> = (0..values.len()).collect();
    let alpha_of = |x: u64| {
        let q = (x / e).max(1);
        1u64 << (63 - q.leading_zeros())
    };
    order.sort_by_key(|&i| (alpha_of(values[i]), i));
    for i in order {
        let a = alpha_of(values[i]);
        match classes.last_mut() {
            Some((alpha, members)) if *alpha == a => members.push(i),
            _ => classes.push((a, vec![i])),
        }
    }
    classes
}

/// `{sigma - s : s ∈ set}`.
pub fn mirror_upper(set: &IntegerSet, sigma: u64) -> Result<IntegerSet> {
    set.reflect(sigma)
}

fn mul_div_ceil(a: u64, b: u64, c: u64) -> u64 {
    u64::try_from((a as u128 * b as u128).div_ceil(c as u128)).unwrap_or(u64::MAX)
}

fn mul_div_floor(a: u64, b: u64, c: u64) -> u64 {
    u64::try_from(a as u128 * b as u128 / c as u128).unwrap_or(u64::MAX)
}

struct WindowPlan {
    beta: u64,
    inst: RpInstance,
    error: u64,
}

/// One magnitude class with its windows, before any subproblem is solved.
struct ClassPlan {
    alpha: u64,
    ep: u64,
    values: Vec<u64>,
    sigma: u64,
    windows: Vec<WindowPlan>,
    error: u64,
}

fn plan_class(
    values: Vec<u64>,
    alpha: u64,
    ep: u64,
    threshold: ThresholdConstant,
) -> Result<ClassPlan> {
    let sigma: u64 = values.iter().sum();
    let unit = alpha * ep;
    let mut windows = Vec::new();
    // Sums up to 2αE' are single items or two copies of αE'; they are
    // listed exactly, so the first tree window is β = 2α.
    let mut beta = 2 * alpha;
    while 2 * beta as u128 * ep as u128 <= sigma as u128 {
        let items: Vec<u64> = values
            .iter()
            .map(|&x| mul_div_floor(x, beta, unit))
            .collect();
        let m = beta / alpha;
        let total: u128 = items.iter().map(|&x| x as u128).sum();
        let inst = if total >= 4 * m as u128 * beta as u128 {
            RpInstance::new(items, beta, m, threshold)?
        } else {
            RpInstance::new_relaxed(items, beta, m, threshold)?
        };
        let e_rp = if inst.takes_exact_path() {
            0
        } else {
            inst.tree_error_bound()
        };
        // Each item loses less than one window unit to the floor; a sum up to
        // 2mU + e_rp has at most (2mU + e_rp)/U items.
        let count = ((inst.window_hi() + e_rp) / beta).min(values.len() as u64);
        let error = mul_div_ceil(e_rp, unit, beta) + mul_div_ceil(count, unit, beta) + 1;
        windows.push(WindowPlan { beta, inst, error });
        beta *= 2;
    }
    let error = windows.iter().map(|w| w.error).max().unwrap_or(0);
    Ok(ClassPlan {
        alpha,
        ep,
        values,
        sigma,
        windows,
        error,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Source {
    mirrored: bool,
    /// `None` is the exact window `[0, 2αE']`.
    window: Option<usize>,
    y: u64,
}

/// Approximate subset sums of one magnitude class with recovery data.
pub struct AlphaSolution {
    pub alpha: u64,
    pub sigma: u64,
    /// Approximates the class's subset sums on `[0, sigma]`.
    pub set: IntegerSet,
    pub error: u64,
    values: Vec<u64>,
    sources: Vec<Source>,
    windows: Vec<(u64, RpResult)>,
}

impl AlphaSolution {
    fn recover_low(&self, y: u64) -> Option<Vec<usize>> {
        if y == 0 {
            return Some(Vec::new());
        }
        if let Some(i) = self.values.iter().position(|&x| x == y) {
            return Some(vec![i]);
        }
        let half = y / 2;
        let pair: Vec<usize> = (0..self.values.len())
            .filter(|&i| self.values[i] == half)
            .take(2)
            .collect();
        (y.is_multiple_of(2) && pair.len() == 2).then_some(pair)
    }

    pub fn windows(&self) -> impl Iterator<Item = (u64, &RpResult)> {
        self.windows.iter().map(|(b, r)| (*b, r))
    }

    /// Local item indices whose sum is within `error` of `s`.
    pub fn recover(&self, s: u64) -> Result<Vec<usize>> {
        let pos = self
            .set
            .as_slice()
            .binary_search(&s)
            .map_err(|_| Error::NotInSet(s))?;
        let src = self.sources[pos];
        let mut idx = match src.window {
            None => self.recover_low(src.y).ok_or(Error::RecoveryFailed(s))?,
            Some(w) => self.windows[w].1.recover_subset(src.y)?,
        };
        if src.mirrored {
            let mut keep = vec![true; self.values.len()];
            for &i in &idx {
                keep[i] = false;
            }
            idx = (0..self.values.len()).filter(|&i| keep[i]).collect();
        }
        Ok(idx)
    }
}

impl ClassPlan {
    fn solve(&self) -> Result<AlphaSolution> {
        let unit = self.alpha * self.ep;
        let results = self
            .windows
            .par_iter()
            .map(|w| solve_rp(&w.inst).map(|r| (w.beta, r)))
            .collect::<Result<Vec<_>>>()?;

        let mut entries: Vec<(u64, Source)> = Vec::with_capacity(self.values.len() + 2);
        let low = std::iter::once(0)
            .chain(self.values.iter().copied())
            .chain((self.values.iter().filter(|&&x| x == unit).count() >= 2).then_some(2 * unit));
        for y in low {
            entries.push((
                y,
                Source {
                    mirrored: false,
                    window: None,
                    y,
                },
            ));
        }
        for (w, (beta, res)) in results.iter().enumerate() {
            for y in res.approx_set.iter() {
                entries.push((
                    mul_div_floor(y, unit, *beta),
                    Source {
                        mirrored: false,
                        window: Some(w),
                        y,
                    },
                ));
            }
        }
        let lower = entries.len();
        for k in 0..lower {
            let (v, src) = entries[k];
            if v <= self.sigma {
                entries.push((
                    self.sigma - v,
                    Source {
                        mirrored: true,
                        ..src
                    },
                ));
            }
        }
        entries.sort_unstable();
        entries.dedup_by_key(|e| e.0);
        let (values, sources): (Vec<u64>, Vec<Source>) = entries.into_iter().unzip();
        Ok(AlphaSolution {
            alpha: self.alpha,
            sigma: self.sigma,
            set: IntegerSet::from_unsorted(values),
            error: self.error,
            values: self.values.clone(),
            sources,
            windows: results,
        })
    }
}

/// Approximates the subset sums of one class `X_α ⊆ [αE', 2αE')`.
pub fn solve_alpha(
    values: &[u64],
    alpha: u64,
    ep: u64,
    threshold: ThresholdConstant,
) -> Result<AlphaSolution> {
    if let Some(&x) = values.iter().find(|&&x| {
        (x as u128) < alpha as u128 * ep as u128 || x as u128 >= 2 * alpha as u128 * ep as u128
    }) {
        return Err(Error::InvalidInstance(format!(
            "{x} outside the class of alpha = {alpha}"
        )));
    }
    plan_class(values.to_vec(), alpha, ep, threshold)?.solve()
}

/// Rounding step of [`combine_additive`]: `max(1, ⌊u/(2ℓe)⌋)`.
pub fn combine_delta(u: u64, sets: usize, e: u64) -> u64 {
    (u as u128 / (2 * sets as u128 * e as u128)).max(1) as u64
}

/// `A_1 + ⋯ + A_ℓ` on `[0, u]` with additive error at most `u/e`.
pub struct Combination {
    pub set: IntegerSet,
    pub delta: u64,
    reps: Vec<Vec<(u64, u64)>>,
    levels: Vec<Vec<IntegerSet>>,
}

impl Combination {
    /// One element from each input set (0 allowed) whose sum is within
    /// `ℓ·delta` of `v`.
    pub fn recover(&self, v: u64) -> Result<Vec<u64>> {
        if !v.is_multiple_of(self.delta) || !self.set.contains(v) {
            return Err(Error::NotInSet(v));
        }
        let mut parts = vec![v / self.delta];
        for k in (1..self.levels.len()).rev() {
            let below = &self.levels[k - 1];
            let mut next = Vec::with_capacity(below.len());
            for (i, &r) in parts.iter().enumerate() {
                if 2 * i + 1 >= below.len() {
                    next.push(r);
                    continue;
                }
                let (l, rr) = (&below[2 * i], &below[2 * i + 1]);
                let a = l
                    .iter()
                    .take_while(|&a| a <= r)
                    .find(|&a| rr.contains(r - a))
                    .ok_or(Error::RecoveryFailed(v))?;
                next.push(a);
                next.push(r - a);
            }
            parts = next;
        }
        parts
            .iter()
            .zip(&self.reps)
            .map(|(&r, reps)| {
                reps.binary_search_by_key(&r, |p| p.0)
                    .map(|i| reps[i].1)
                    .map_err(|_| Error::RecoveryFailed(v))
            })
            .collect()
    }
}

/// Rounds every set down to multiples of `δ = max(1, ⌊u/(2ℓe)⌋)` and sums
/// them exactly in the rounded universe. Every set implicitly contains 0.
pub fn combine_additive(sets: &[IntegerSet], u: u64, e: u64) -> Result<Combination> {
    if sets.is_empty() {
        return Err(Error::EmptySet);
    }
    let delta = combine_delta(u, sets.len(), e);
    let cap = u / delta;
    let mut reps = Vec::with_capacity(sets.len());
    let mut level = Vec::with_capacity(sets.len());
    for s in sets {
        let mut r: Vec<(u64, u64)> = vec![(0, 0)];
        for x in s.iter().filter(|&x| x <= u) {
            if r.last().is_some_and(|p| p.0 == x / delta) {
                continue;
            }
            r.push((x / delta, x));
        }
        level.push(IntegerSet::from_unsorted(r.iter().map(|p| p.0).collect()));
        reps.push(r);
    }
    let mut levels = vec![level];
    while levels.last().unwrap().len() > 1 {
        let cur = levels.last().unwrap();
        let mut next = cur
            .par_chunks(2)
            .filter(|c| c.len() == 2)
            .map(|c| sumset(&c[0], &c[1], Some(cap)))
            .collect::<Result<Vec<_>>>()?;
        if cur.len() % 2 == 1 {
            next.push(cur[cur.len() - 1].clone());
        }
        levels.push(next);
    }
    let set = IntegerSet::from_unsorted(
        levels.last().unwrap()[0]
            .iter()
            .map(|r| r * delta)
            .collect(),
    );
    Ok(Combination {
        set,
        delta,
        reps,
        levels,
    })
}

struct Plan {
    ep: u64,
    groups: Vec<Vec<usize>>,
    classes: Vec<(Vec<usize>, ClassPlan)>,
    budget: ErrorBudget,
}

/// Builds every subproblem for internal precision `ep` and totals the
/// stage errors.
fn plan(values: &[u64], sigma: u64, e: u64, ep: u64, threshold: ThresholdConstant) -> Result<Plan> {
    let (merged, groups) = merge_tiny(values, sigma as u128, 2 * ep as u128);
    let tiny_merge = if groups.iter().any(|g| g.len() > 1) || groups.len() < values.len() {
        2 * ep
    } else {
        0
    };
    let scaled = scale_round(&merged, ep, sigma)?;
    let scaling = (scaled.len() as u64).min(2 * ep);
    let classes = partition_by_magnitude(&scaled, ep)
        .into_iter()
        .map(|(alpha, members)| {
            let vals = members.iter().map(|&i| scaled[i]).collect();
            plan_class(vals, alpha, ep, threshold).map(|c| (members, c))
        })
        .collect::<Result<Vec<_>>>()?;
    let ep2 = ep * ep;
    let allowed = ep2 / (4 * e);
    let u = ep2 + allowed;
    let combine = if classes.is_empty() {
        0
    } else {
        classes.len() as u64 * combine_delta(u, classes.len(), 8 * e)
    };
    let class_budgets: Vec<ClassBudget> = classes
        .iter()
        .map(|(_, c)| ClassBudget {
            alpha: c.alpha,
            items: c.values.len(),
            windows: c.windows.len(),
            error: c.error,
        })
        .collect();
    let total = class_budgets
        .iter()
        .fold(tiny_merge + scaling + combine, |acc, c| {
            acc.saturating_add(c.error)
        });
    Ok(Plan {
        ep,
        groups,
        classes,
        budget: ErrorBudget {
            multiplier: ep / e,
            internal_precision: ep,
            allowed,
            tiny_merge,
            scaling,
            classes: class_budgets,
            combine,
            total,
        },
    })
}

fn choose_plan(values: &[u64], sigma: u64, e: u64, config: &SolverConfig) -> Result<Plan> {
    let mut k = 1u64;
    loop {
        let ep = k
            .checked_mul(e)
            .filter(|&ep| ep < config.max_internal_precision && ep < 1 << 31)
            .ok_or_else(|| {
                Error::LimitExceeded(format!(
                    "internal precision {k}·{e} reaches the limit {}",
                    config.max_internal_precision.min(1 << 31)
                ))
            })?;
        let p = plan(values, sigma, e, ep, config.threshold)?;
        if p.budget.total <= p.budget.allowed {
            return Ok(p);
        }
        k *= 2;
    }
}

/// A `(1 - 1/E)`-approximate Partition solution with its witness subset.
pub fn solve_partition(
    inst: &PartitionInstance,
    config: &SolverConfig,
) -> Result<PartitionSolution> {
    solve_partition_timed(inst, config).map(|(s, _)| s)
}

/// Wall time spent in each stage of one solve.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StageTimings {
    /// Trivial-case test, tiny-item merging, scaling and class planning.
    pub reduce: Duration,
    /// Per-class window solves.
    pub classes: Duration,
    pub combine: Duration,
    pub recover: Duration,
}

/// [`solve_partition`] that also reports stage timings.
pub fn solve_partition_timed(
    inst: &PartitionInstance,
    config: &SolverConfig,
) -> Result<(PartitionSolution, StageTimings)> {
    let mut timings = StageTimings::default();
    let sol = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidInstance(format!("thread pool: {e}")))?
            .install(|| solve_inner(inst, config, &mut timings)),
        None => solve_inner(inst, config, &mut timings),
    }?;
    Ok((sol, timings))
}

fn solve_inner(
    inst: &PartitionInstance,
    config: &SolverConfig,
    timings: &mut StageTimings,
) -> Result<PartitionSolution> {
    let mut clock = Instant::now();
    let mut lap = || {
        let now = Instant::now();
        let d = now - clock;
        clock = now;
        d
    };
    let values = inst.values();
    let sigma = inst.total();
    let e = inst.epsilon().inverse();
    let finish = |indices: Vec<usize>, trivial: bool, budget: Option<ErrorBudget>| {
        let achieved_sum = indices.iter().map(|&i| values[i]).sum();
        PartitionSolution {
            subset_indices: indices,
            achieved_sum,
            total: sigma,
            epsilon_inv: e,
            trivial,
            budget,
        }
    };
    if values.is_empty() {
        return Ok(finish(Vec::new(), true, None));
    }
    if let Some(idx) = trivial_case(values) {
        return Ok(finish(idx, true, None));
    }

    let plan = choose_plan(values, sigma, e, config)?;
    timings.reduce = lap();
    let ep2 = plan.ep * plan.ep;
    let u = ep2 + plan.budget.allowed;
    let solved = plan
        .classes
        .par_iter()
        .map(|(_, c)| c.solve())
        .collect::<Result<Vec<_>>>()?;
    timings.classes = lap();
    if solved.is_empty() {
        return Ok(finish(Vec::new(), false, Some(plan.budget)));
    }
    let sets: Vec<IntegerSet> = solved.iter().map(|s| s.set.clone()).collect();
    let comb = combine_additive(&sets, u, 8 * e)?;
    let best = comb.set.max().unwrap_or(0);
    timings.combine = lap();
    let parts = comb.recover(best)?;

    let mut chosen = Vec::new();
    for (((members, _), sol), part) in plan.classes.iter().zip(&solved).zip(parts) {
        for local in sol.recover(part)? {
            chosen.extend_from_slice(&plan.groups[members[local]]);
        }
    }
    chosen.sort_unstable();
    let sum: u128 = chosen.iter().map(|&i| values[i] as u128).sum();
    if 2 * sum > sigma as u128 {
        let mut keep = vec![true; values.len()];
        for &i in &chosen {
            keep[i] = false;
        }
        chosen = (0..values.len()).filter(|&i| keep[i]).collect();
    }
    timings.recover = lap();
    Ok(finish(chosen, false, Some(plan.budget)))
}
