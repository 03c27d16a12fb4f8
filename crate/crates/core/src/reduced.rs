//! The bounded-window subproblem: items in `[U, 2U)`, answers wanted on
//! `[mU, 2mU]`.
//!
//! Leaves are singletons `{x_i}`. Each level pairs adjacent nodes with
//! `⊕_μ`; a level may stop early once the produced sets are large in total,
//! in which case the remaining pairs fall back to
//! `A ∪ {max(A) + max(B)}` (rounded). An odd node at the end of a level is
//! carried up unchanged.

use crate::canonical::{
    oplus_mu_capped, recover_with_hint, Hint, MuCanonicalSet, Precision, Product,
};
use crate::error::{Error, Result};
use crate::intset::IntegerSet;
use crate::oracle::SubsetSumTable;
use crate::stats;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

/// The constant `c` of the early-termination threshold, as `num/den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdConstant {
    pub num: u64,
    pub den: u64,
}

impl ThresholdConstant {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidInstance(format!(
                "threshold constant must be positive, got {num}/{den}"
            )));
        }
        Ok(Self { num, den })
    }
}

impl Default for ThresholdConstant {
    fn default() -> Self {
        Self { num: 1, den: 1 }
    }
}

/// `⌈log2 x⌉` for `x >= 1`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RpInstance {
    items: Vec<u64>,
    precision: Precision,
    m: u64,
    threshold: ThresholdConstant,
    early_stop: bool,
    allow_exact: bool,
}

impl RpInstance {
    /// Checks `U <= x < 2U` for every item, `1 <= m <= n` and `Σ >= 4mU`.
    pub fn new(items: Vec<u64>, u: u64, m: u64, threshold: ThresholdConstant) -> Result<Self> {
        let inst = Self::new_relaxed(items, u, m, threshold)?;
        let total: u128 = inst.items.iter().map(|&x| x as u128).sum();
        if total < 4 * m as u128 * u as u128 {
            return Err(Error::InvalidInstance(format!(
                "item sum {total} is below 4mU = {}",
                4 * m as u128 * u as u128
            )));
        }
        Ok(Self {
            early_stop: true,
            ..inst
        })
    }

    /// Like [`RpInstance::new`] without the lower bound on the item sum.
    /// Early termination is disabled, so every level is computed in full.
    pub fn new_relaxed(
        items: Vec<u64>,
        u: u64,
        m: u64,
        threshold: ThresholdConstant,
    ) -> Result<Self> {
        let precision = Precision::new(u)?;
        if items.is_empty() {
            return Err(Error::EmptySet);
        }
        let hi = u.checked_mul(2).ok_or(Error::Overflow("2U"))?;
        if let Some(&x) = items.iter().find(|&&x| x < u || x >= hi) {
            return Err(Error::InvalidInstance(format!(
                "item {x} outside [{u}, {hi})"
            )));
        }
        if m == 0 || m > items.len() as u64 {
            return Err(Error::InvalidInstance(format!(
                "m = {m} outside [1, {}]",
                items.len()
            )));
        }
        if (m as u128) * (hi as u128) > u64::MAX as u128 / 4 {
            return Err(Error::Overflow("2mU"));
        }
        Ok(Self {
            items,
            precision,
            m,
            threshold,
            early_stop: false,
            allow_exact: true,
        })
    }

    /// Disables early termination at every level.
    pub fn without_early_stop(mut self) -> Self {
        self.early_stop = false;
        self
    }

    /// Always builds the sumset tree, even when `U` is small enough for the
    /// direct dynamic program.
    pub fn force_tree(mut self) -> Self {
        self.allow_exact = false;
        self
    }

    pub fn items(&self) -> &[u64] {
        &self.items
    }

    pub fn n(&self) -> usize {
        self.items.len()
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn early_stop(&self) -> bool {
        self.early_stop
    }

    pub fn threshold(&self) -> ThresholdConstant {
        self.threshold
    }

    /// Upper end of the target window, `2mU`.
    pub fn window_hi(&self) -> u64 {
        2 * self.m * self.precision.get()
    }

    /// Tree nodes keep elements up to `4mU`, twice the window top.
    pub fn node_cap(&self) -> u64 {
        2 * self.window_hi()
    }

    /// `K(h) = ⌈128·c·n·h·U·⌈log2 U⌉ / m⌉`, saturating.
    pub fn level_threshold(&self, h: u32) -> u64 {
        let u = self.precision.get();
        let num = 128u128
            .saturating_mul(self.threshold.num as u128)
            .saturating_mul(self.n() as u128)
            .saturating_mul(h as u128)
            .saturating_mul(u as u128)
            .saturating_mul(ceil_log2(u) as u128);
        let den = self.threshold.den as u128 * self.m as u128;
        u64::try_from(num.div_ceil(den)).unwrap_or(u64::MAX)
    }

    /// Levels in the tree, `⌈log2 n⌉`.
    pub fn levels(&self) -> u32 {
        ceil_log2(self.n() as u64)
    }

    /// `U <= 8·log2 n`: the direct dynamic program is cheap enough.
    pub fn takes_exact_path(&self) -> bool {
        self.allow_exact && (self.precision.get() as f64) <= 8.0 * (self.n() as f64).log2()
    }

    /// `⌈4mU·(1 - (1 - 2/U)^L)⌉` with `L = ⌈log2 n⌉`, in exact arithmetic.
    pub fn tree_error_bound(&self) -> u64 {
        let u = self.precision.get();
        let l = self.levels();
        let ul = BigUint::from(u).pow(l);
        let vl = BigUint::from(u - 2).pow(l);
        let num = BigUint::from(4u32) * BigUint::from(self.m) * BigUint::from(u) * (&ul - vl);
        let (q, r) = (&num / &ul, &num % &ul);
        let q = if r.is_zero() { q } else { q + BigUint::one() };
        q.to_u64().unwrap_or(u64::MAX)
    }
}

/// How a tree node was produced from the level below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeOrigin {
    Leaf {
        item: usize,
    },
    Sumset {
        left: usize,
        right: usize,
        hints: Vec<Hint>,
    },
    Fallback {
        left: usize,
        right: usize,
    },
    Carry {
        child: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub set: MuCanonicalSet,
    pub origin: NodeOrigin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumsetTree {
    levels: Vec<Vec<TreeNode>>,
}

impl SumsetTree {
    pub fn levels(&self) -> &[Vec<TreeNode>] {
        &self.levels
    }

    pub fn root(&self) -> &TreeNode {
        &self.levels.last().expect("tree has a leaf level")[0]
    }

    pub fn fallback_nodes(&self) -> usize {
        self.levels
            .iter()
            .flatten()
            .filter(|n| matches!(n.origin, NodeOrigin::Fallback { .. }))
            .count()
    }
}

#[derive(Clone, Debug)]
enum Witness {
    Table(SubsetSumTable),
    Tree(SumsetTree),
}

#[derive(Clone, Debug)]
pub struct RpResult {
    /// Approximation of the subset sums in `[0, 2mU]`; always contains 0.
    pub approx_set: IntegerSet,
    /// Additive error valid on `[mU, 2mU]`.
    pub error_bound: u64,
    pub exact: bool,
    items: Vec<u64>,
    witness: Witness,
}

impl RpResult {
    pub fn tree(&self) -> Option<&SumsetTree> {
        match &self.witness {
            Witness::Tree(t) => Some(t),
            Witness::Table(_) => None,
        }
    }

    pub fn fallback_nodes(&self) -> usize {
        self.tree().map_or(0, SumsetTree::fallback_nodes)
    }

    /// Item indices `Y` with `s <= Σ(Y) <= s + error_bound`.
    pub fn recover_subset(&self, s: u64) -> Result<Vec<usize>> {
        if !self.approx_set.contains(s) {
            return Err(Error::NotInSet(s));
        }
        let mut out = match &self.witness {
            Witness::Table(t) => t.witness(s).ok_or(Error::RecoveryFailed(s))?,
            Witness::Tree(tree) => {
                let mut out = Vec::new();
                if s > 0 {
                    let top = tree.levels.len() - 1;
                    descend(tree, &self.items, top, 0, s, &mut out)?;
                }
                out
            }
        };
        out.sort_unstable();
        Ok(out)
    }
}

fn descend(
    tree: &SumsetTree,
    items: &[u64],
    level: usize,
    idx: usize,
    value: u64,
    out: &mut Vec<usize>,
) -> Result<()> {
    if value == 0 {
        return Ok(());
    }
    let node = &tree.levels[level][idx];
    match &node.origin {
        NodeOrigin::Leaf { item } => {
            if items[*item] != value {
                return Err(Error::RecoveryFailed(value));
            }
            out.push(*item);
        }
        NodeOrigin::Carry { child } => descend(tree, items, level - 1, *child, value, out)?,
        NodeOrigin::Sumset { left, right, hints } => {
            let below = &tree.levels[level - 1];
            let pos = node
                .set
                .base()
                .as_slice()
                .binary_search(&value)
                .map_err(|_| Error::RecoveryFailed(value))?;
            let (a, b) =
                recover_with_hint(&below[*left].set, &below[*right].set, hints[pos], value)?;
            descend(tree, items, level - 1, *left, a, out)?;
            descend(tree, items, level - 1, *right, b, out)?;
        }
        NodeOrigin::Fallback { left, right } => {
            let below = &tree.levels[level - 1];
            let (l, r) = (&below[*left].set, &below[*right].set);
            if l.contains(value) {
                descend(tree, items, level - 1, *left, value, out)?;
            } else {
                let (lm, rm) = (l.max().unwrap_or(0), r.max().unwrap_or(0));
                if node.set.precision().round(lm + rm) != value {
                    return Err(Error::RecoveryFailed(value));
                }
                descend(tree, items, level - 1, *left, lm, out)?;
                descend(tree, items, level - 1, *right, rm, out)?;
            }
        }
    }
    Ok(())
}

/// Result of pairing the nodes of one level.
#[derive(Clone, Debug)]
pub struct LevelOutcome {
    /// `B_i` for the computed prefix of pairs.
    pub products: Vec<Product>,
    /// Whether the scan stopped before the last pair.
    pub stopped: bool,
}

/// Computes `B_i = A_{2i-1} ⊕_μ A_{2i}` left to right over the complete
/// pairs of `nodes`, stopping once `Σ|B_i|` reaches `K(h)` when early
/// termination applies at this level.
pub fn compute_level(nodes: &[MuCanonicalSet], inst: &RpInstance, h: u32) -> Result<LevelOutcome> {
    let p = inst.precision();
    if let Some(bad) = nodes.iter().find(|a| a.precision() != p) {
        return Err(Error::PrecisionMismatch(p.get(), bad.precision().get()));
    }
    let pairs = nodes.len() / 2;
    let cap = Some(inst.node_cap());
    let early = inst.early_stop() && pairs as u64 >= 24 * h as u64;
    if !early {
        let products = (0..pairs)
            .into_par_iter()
            .map(|i| oplus_mu_capped(&nodes[2 * i], &nodes[2 * i + 1], cap))
            .collect::<Result<Vec<_>>>()?;
        return Ok(LevelOutcome {
            products,
            stopped: false,
        });
    }
    let k = inst.level_threshold(h);
    let mut products = Vec::with_capacity(pairs);
    let mut total = 0u64;
    for i in 0..pairs {
        let b = oplus_mu_capped(&nodes[2 * i], &nodes[2 * i + 1], cap)?;
        total = total.saturating_add(b.set.len() as u64);
        products.push(b);
        if total >= k && i + 1 < pairs {
            return Ok(LevelOutcome {
                products,
                stopped: true,
            });
        }
    }
    Ok(LevelOutcome {
        products,
        stopped: false,
    })
}

/// The next tree level: `B_i` where computed, the fallback
/// `round(A_{2i-1} ∪ {max(A_{2i-1}) + max(A_{2i})})` elsewhere, and an odd
/// trailing node carried unchanged.
pub fn compute_level_with_fallback(
    nodes: &[MuCanonicalSet],
    inst: &RpInstance,
    h: u32,
) -> Result<Vec<TreeNode>> {
    let outcome = compute_level(nodes, inst, h)?;
    if outcome.stopped {
        stats::early_stop();
    }
    let p = inst.precision();
    let cap = inst.node_cap();
    let pairs = nodes.len() / 2;
    let computed = outcome.products.len();
    let mut next = Vec::with_capacity(nodes.len().div_ceil(2));
    for (i, product) in outcome.products.into_iter().enumerate() {
        let (set, hints) = product.into_parts();
        next.push(TreeNode {
            set,
            origin: NodeOrigin::Sumset {
                left: 2 * i,
                right: 2 * i + 1,
                hints,
            },
        });
    }
    for i in computed..pairs {
        let (a, b) = (&nodes[2 * i], &nodes[2 * i + 1]);
        let (am, bm) = (
            a.max().ok_or(Error::EmptySet)?,
            b.max().ok_or(Error::EmptySet)?,
        );
        let top = p.round(am.checked_add(bm).ok_or(Error::Overflow("fallback"))?);
        let mut elems = a.base().as_slice().to_vec();
        if top <= cap {
            elems.push(top);
        }
        next.push(TreeNode {
            set: MuCanonicalSet::new(IntegerSet::from_unsorted(elems), p)?,
            origin: NodeOrigin::Fallback {
                left: 2 * i,
                right: 2 * i + 1,
            },
        });
    }
    if nodes.len() % 2 == 1 {
        next.push(TreeNode {
            set: nodes[nodes.len() - 1].clone(),
            origin: NodeOrigin::Carry {
                child: nodes.len() - 1,
            },
        });
    }
    Ok(next)
}

/// Solves the instance: an approximation of `S_X` on `[mU, 2mU]` with an
/// explicit additive error bound, plus the data needed for recovery.
pub fn solve_rp(inst: &RpInstance) -> Result<RpResult> {
    let exact = inst.takes_exact_path();
    stats::rp_solve(exact);
    let cap = inst.window_hi();
    if exact {
        let table = SubsetSumTable::build(inst.items(), cap)?;
        let approx: Vec<u64> = (0..=table.cap()).filter(|&s| table.reachable(s)).collect();
        return Ok(RpResult {
            approx_set: IntegerSet::from_unsorted(approx),
            error_bound: 0,
            exact: true,
            items: inst.items().to_vec(),
            witness: Witness::Table(table),
        });
    }

    let p = inst.precision();
    let leaves = inst
        .items()
        .iter()
        .enumerate()
        .map(|(item, &x)| {
            Ok(TreeNode {
                set: MuCanonicalSet::singleton(x, p)?,
                origin: NodeOrigin::Leaf { item },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut levels = vec![leaves];
    let mut h = 1u32;
    while levels.last().map_or(0, Vec::len) > 1 {
        let sets: Vec<MuCanonicalSet> = levels
            .last()
            .unwrap()
            .iter()
            .map(|n| n.set.clone())
            .collect();
        levels.push(compute_level_with_fallback(&sets, inst, h)?);
        h += 1;
    }
    let tree = SumsetTree { levels };
    let mut approx = tree.root().set.base().restrict(0, cap).into_vec();
    approx.push(0);
    Ok(RpResult {
        approx_set: IntegerSet::from_unsorted(approx),
        error_bound: inst.tree_error_bound(),
        exact: false,
        items: inst.items().to_vec(),
        witness: Witness::Tree(tree),
    })
}
