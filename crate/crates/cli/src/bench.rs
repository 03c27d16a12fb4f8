//! Seeded instance generator and scaling sweeps. Only instance synthesis is
//! random; the solver itself is deterministic.

use partition_fptas::{solve_partition_timed, Epsilon, Error, PartitionInstance, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

/// `n` values drawn uniformly from `[lo, hi]`.
pub fn generate(n: usize, lo: u64, hi: u64, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The solver refused the instance under the configured limits.
    Limit,
    /// A smaller `E` at the same `n` already exceeded the time budget.
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Limit => "limit",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub n: usize,
    pub e: u64,
    pub status: Status,
    pub wall: Duration,
    pub reduce: Duration,
    pub classes: Duration,
    pub combine: Duration,
    pub recover: Duration,
    pub achieved_sum: u64,
    pub total: u64,
}

pub struct Sweep {
    pub ns: Vec<usize>,
    pub es: Vec<u64>,
    pub lo: u64,
    pub hi: u64,
    pub seed: u64,
    /// Once a run takes longer than this, larger `E` at the same `n` are
    /// skipped.
    pub budget: Option<Duration>,
}

pub fn run(sweep: &Sweep, config: &SolverConfig) -> crate::Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in &sweep.ns {
        let values = generate(n, sweep.lo, sweep.hi, sweep.seed);
        let mut over_budget = false;
        for &e in &sweep.es {
            let eps = Epsilon::from_inverse(e)?;
            let inst = PartitionInstance::new(values.clone(), eps)?;
            let mut row = BenchRow {
                n,
                e,
                status: Status::Skipped,
                wall: Duration::ZERO,
                reduce: Duration::ZERO,
                classes: Duration::ZERO,
                combine: Duration::ZERO,
                recover: Duration::ZERO,
                achieved_sum: 0,
                total: inst.total(),
            };
            if !over_budget {
                let start = Instant::now();
                match solve_partition_timed(&inst, config) {
                    Ok((sol, t)) => {
                        row.status = Status::Ok;
                        row.achieved_sum = sol.achieved_sum;
                        row.reduce = t.reduce;
                        row.classes = t.classes;
                        row.combine = t.combine;
                        row.recover = t.recover;
                    }
                    Err(Error::LimitExceeded(_)) => row.status = Status::Limit,
                    Err(e) => return Err(e.into()),
                }
                row.wall = start.elapsed();
                over_budget = sweep.budget.is_some_and(|b| row.wall > b);
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let ms = |d: Duration| format!("{:.3}", d.as_secs_f64() * 1e3);
    let mut out = String::from(
        "n,E,status,wall_ms,reduce_ms,classes_ms,combine_ms,recover_ms,achieved_sum,total\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.e,
            r.status.as_str(),
            ms(r.wall),
            ms(r.reduce),
            ms(r.classes),
            ms(r.combine),
            ms(r.recover),
            r.achieved_sum,
            r.total
        ));
    }
    out
}
