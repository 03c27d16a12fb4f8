use crate::input::{digest, parse_values};
use crate::report::{RunReport, Timings};
use crate::{CliError, Result};
use partition_fptas::oracle::{exact_partition_opt, exhaustive_partition, EXHAUSTIVE_MAX_N};
use partition_fptas::{
    solve_partition_timed, stats, Epsilon, PartitionInstance, SolverConfig, ThresholdConstant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

/// Resource limits, set with `--limits key=value,...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest internal precision `E'` the solver may use (`precision`).
    pub precision: u64,
    /// Largest `Σ` the exact oracle accepts beyond exhaustive size (`oracle-sum`).
    pub oracle_sum: u64,
    /// Largest accepted instance size (`n`).
    pub max_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            precision: SolverConfig::default().max_internal_precision,
            oracle_sum: 20_000_000,
            max_n: 50_000_000,
        }
    }
}

impl Limits {
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Self::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| CliError::Input(format!("limit {part:?} is not key=value")))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("limit {k} needs an integer, got {v:?}")))?;
            match k.trim() {
                "precision" => out.precision = v,
                "oracle-sum" => out.oracle_sum = v,
                "n" => out.max_n = usize::try_from(v).unwrap_or(usize::MAX),
                other => return Err(CliError::Input(format!("unknown limit {other:?}"))),
            }
        }
        Ok(out)
    }
}

/// Accepts an integer, a fraction `p/q` or a decimal such as `0.001`.
pub fn parse_constant(s: &str) -> Result<ThresholdConstant> {
    let bad = || CliError::Input(format!("cannot parse constant {s:?}"));
    let s = s.trim();
    let (num, den) = if let Some((a, b)) = s.split_once('/') {
        (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        )
    } else {
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let num: u64 = format!("{int}{frac}").parse().map_err(|_| bad())?;
        (num, 10u64.pow(frac.len() as u32))
    };
    ThresholdConstant::new(num, den).map_err(|e| CliError::Input(e.to_string()))
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub epsilon: Epsilon,
    pub threshold: ThresholdConstant,
    pub limits: Limits,
    pub threads: usize,
    pub timings: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            epsilon: Epsilon::from_inverse(10).expect("valid"),
            threshold: ThresholdConstant::default(),
            limits: Limits::default(),
            threads: 1,
            timings: false,
        }
    }
}

fn check_size(values: &[u64], limits: &Limits) -> Result<()> {
    if values.len() > limits.max_n {
        return Err(CliError::Limits(format!(
            "n = {} exceeds the limit {}",
            values.len(),
            limits.max_n
        )));
    }
    Ok(())
}

pub fn run_solve(bytes: &[u8], opts: &SolveOptions) -> Result<RunReport> {
    let start = Instant::now();
    let values = parse_values(bytes)?;
    check_size(&values, &opts.limits)?;
    let parse_ms = start.elapsed().as_secs_f64() * 1e3;

    let inst = PartitionInstance::new(values, opts.epsilon)?;
    let config = SolverConfig {
        threshold: opts.threshold,
        max_internal_precision: opts.limits.precision,
        threads: Some(opts.threads.max(1)),
    };
    stats::reset();
    let (sol, stages) = solve_partition_timed(&inst, &config)?;
    let counters = stats::snapshot();

    let verify = Instant::now();
    let resum: u128 = sol
        .subset_indices
        .iter()
        .map(|&i| inst.values()[i] as u128)
        .sum();
    if resum != sol.achieved_sum as u128 || 2 * resum > inst.total() as u128 {
        return Err(CliError::Other(format!(
            "witness check failed: indices sum to {resum}, reported {}",
            sol.achieved_sum
        )));
    }
    let verify_ms = verify.elapsed().as_secs_f64() * 1e3;

    let c = opts.threshold;
    Ok(RunReport {
        command: "solve",
        input_sha256: digest(bytes),
        n: inst.values().len(),
        total: inst.total(),
        epsilon: Some(format!("1/{}", sol.epsilon_inv)),
        achieved_sum: sol.achieved_sum,
        opt: None,
        subset_indices: sol.subset_indices,
        trivial: Some(sol.trivial),
        threshold_constant: Some(format!("{}/{}", c.num, c.den)),
        budget: sol.budget,
        counters: Some(counters),
        timings: opts.timings.then(|| {
            Timings::from_stages(
                parse_ms,
                &stages,
                verify_ms,
                start.elapsed().as_secs_f64() * 1e3,
            )
        }),
    })
}

pub fn run_oracle(bytes: &[u8], limits: &Limits) -> Result<RunReport> {
    let values = parse_values(bytes)?;
    check_size(&values, limits)?;
    let total: u128 = values.iter().map(|&v| v as u128).sum();
    if values.len() > EXHAUSTIVE_MAX_N && total > limits.oracle_sum as u128 {
        return Err(CliError::Limits(format!(
            "exact oracle needs n <= {EXHAUSTIVE_MAX_N} or a total of at most {}",
            limits.oracle_sum
        )));
    }
    let inst = PartitionInstance::new(values, Epsilon::from_inverse(2)?)?;
    let (opt, witness) = if total <= limits.oracle_sum as u128 {
        exact_partition_opt(inst.values())?
    } else {
        exhaustive_partition(inst.values())?
    };
    Ok(RunReport {
        command: "oracle",
        input_sha256: digest(bytes),
        n: inst.values().len(),
        total: inst.total(),
        epsilon: None,
        achieved_sum: opt,
        opt: Some(opt),
        subset_indices: witness,
        trivial: None,
        threshold_constant: None,
        budget: None,
        counters: None,
        timings: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestSummary {
    pub cases: usize,
    pub failures: Vec<String>,
}

/// Random small instances solved and checked against the exact optimum.
pub fn run_selftest(cases: usize, seed: u64, threads: usize) -> Result<SelftestSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let n = rng.gen_range(1..=18);
        let values: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=10_000)).collect();
        let e = [3u64, 10, 20][rng.gen_range(0..3)];
        let inst = PartitionInstance::new(values.clone(), Epsilon::from_inverse(e)?)?;
        let config = SolverConfig {
            threads: Some(threads.max(1)),
            ..SolverConfig::default()
        };
        let (sol, _) = solve_partition_timed(&inst, &config)?;
        let (opt, _) = exact_partition_opt(&values)?;
        let resum: u64 = sol.subset_indices.iter().map(|&i| values[i]).sum();
        let ok = resum == sol.achieved_sum
            && sol.achieved_sum <= opt
            && (e - 1) * opt <= e * sol.achieved_sum;
        if !ok {
            failures.push(format!(
                "case {case}: E={e} values={values:?} achieved={} opt={opt}",
                sol.achieved_sum
            ));
        }
    }
    Ok(SelftestSummary { cases, failures })
}
