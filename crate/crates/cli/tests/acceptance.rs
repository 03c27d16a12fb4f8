//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if an enforced criterion fails. Runs without the libtest
//! harness so the lines show up in plain `cargo test` output.

use partition_fptas::canonical::{
    is_canonical, oplus_mu, pair_within_factor, recover_pair, round_to_canonical, MuCanonicalSet,
};
use partition_fptas::intset::oplus;
use partition_fptas::oracle::{check_approx, exact_partition_opt, exact_subset_sums, ApproxSpec};
use partition_fptas::pipeline::mirror_upper;
use partition_fptas::{
    solve_partition, solve_rp, Epsilon, IntegerSet, PartitionInstance, Precision, RpInstance,
    SolverConfig, ThresholdConstant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// `"; first: ..."` for a non-empty failure list.
fn first(failures: &[String]) -> String {
    failures
        .first()
        .map(|f| format!("; first: {f}"))
        .unwrap_or_default()
}

// ---------------------------------------------------------------- 1

fn end_to_end() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let mut bad = Vec::new();
    for case in 0..1000 {
        let n = rng.gen_range(1..=18);
        let values: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=10_000)).collect();
        let e = [3u64, 10, 20][rng.gen_range(0..3)];
        let inst =
            PartitionInstance::new(values.clone(), Epsilon::from_inverse(e).unwrap()).unwrap();
        let sol = solve_partition(&inst, &SolverConfig::default()).unwrap();
        let (opt, _) = exact_partition_opt(&values).unwrap();
        let resum: u64 = sol.subset_indices.iter().map(|&i| values[i]).sum();
        let ok = resum == sol.achieved_sum
            && sol.achieved_sum <= opt
            && (e - 1) * opt <= e * sol.achieved_sum;
        if !ok {
            bad.push(format!(
                "case {case}: E={e} achieved={} opt={opt}",
                sol.achieved_sum
            ));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        bad.is_empty() && secs < 60.0,
        format!(
            "1000 instances, {} violations, {secs:.2}s (limit 60s){}",
            bad.len(),
            first(&bad)
        ),
    )
}

// ---------------------------------------------------------------- 2

/// Random μ-canonical set with at most 200 elements; complete on request.
fn random_canonical(rng: &mut ChaCha8Rng, p: Precision, complete: bool) -> MuCanonicalSet {
    let top = rng.gen_range(0..8u32);
    let hi = p.segment_start(top + 1);
    let mut v: Vec<u64> = Vec::new();
    if complete {
        v.extend((1..=top).map(|i| rng.gen_range(p.segment_start(i)..p.segment_start(i + 1))));
    }
    let extra = rng.gen_range(1..=200 - v.len());
    v.extend((0..extra).map(|_| rng.gen_range(1..hi.max(2))));
    round_to_canonical(&IntegerSet::from_unsorted(v), p).unwrap()
}

fn oplus_contract() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = Vec::new();
    let mut complete_pairs = 0;
    let mut recovered = 0usize;
    for case in 0..10_000 {
        let u = [2u64, 4, 16, 64][rng.gen_range(0..4)];
        let p = Precision::new(u).unwrap();
        let complete = rng.gen_bool(0.5);
        let a = random_canonical(&mut rng, p, complete);
        let b = random_canonical(&mut rng, p, complete);
        let prod = oplus_mu(&a, &b).unwrap();
        let exact = oplus(a.base(), b.base(), None).unwrap();
        if let Err(v) = check_approx(prod.set.base(), &exact, &ApproxSpec::factor(2, u)) {
            failures.push(format!("case {case}: U={u} approximation {v:?}"));
            continue;
        }
        if !is_canonical(prod.set.base(), p) {
            failures.push(format!("case {case}: U={u} result not canonical"));
        }
        if a.is_complete() && b.is_complete() {
            complete_pairs += 1;
            if !prod.set.is_complete() {
                failures.push(format!("case {case}: U={u} completeness lost"));
            }
        }
        for s in prod.set.base().iter() {
            let ok = match recover_pair(&a, &b, &prod, s) {
                Ok((x, y)) => {
                    (x == 0 || a.contains(x))
                        && (y == 0 || b.contains(y))
                        && pair_within_factor(p, x, y, s)
                }
                Err(_) => false,
            };
            recovered += 1;
            if !ok {
                failures.push(format!("case {case}: U={u} recovery of {s}"));
                break;
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "10000 pairs ({complete_pairs} complete), {recovered} recoveries, {} violations{}",
            failures.len(),
            first(&failures)
        ),
    )
}

// ---------------------------------------------------------------- 3

/// Items, precision and `m` of a random RP instance. Sizes are drawn where
/// the sumset tree is used and early termination can be reached.
fn random_rp(rng: &mut ChaCha8Rng) -> (Vec<u64>, u64, u64) {
    let n = rng.gen_range(48..=64);
    let u = rng.gen_range(49..=256u64);
    let items: Vec<u64> = (0..n).map(|_| rng.gen_range(u..2 * u)).collect();
    let total: u64 = items.iter().sum();
    let m = rng.gen_range(1..=(total / (4 * u)).min(n as u64));
    (items, u, m)
}

/// Checks one instance; returns whether the fallback branch fired.
fn check_rp(inst: &RpInstance) -> Result<bool, String> {
    let res = solve_rp(inst).map_err(|e| e.to_string())?;
    let u = inst.precision().get();
    let (lo, hi) = (inst.m() * u, inst.window_hi());
    let exact = exact_subset_sums(inst.items(), None).map_err(|e| e.to_string())?;
    let spec = ApproxSpec::additive(res.error_bound).within(lo, Some(hi));
    let window = res.approx_set.restrict(lo, hi);
    check_approx(&window, &exact, &spec)
        .map_err(|v| format!("{v:?} with error bound {}", res.error_bound))?;
    for s in window.iter() {
        let y = res.recover_subset(s).map_err(|e| e.to_string())?;
        let sum: u64 = y.iter().map(|&i| inst.items()[i]).sum();
        if !(s <= sum && sum <= s + res.error_bound) {
            return Err(format!("recovered {sum} for {s}"));
        }
    }
    Ok(res.fallback_nodes() > 0)
}

fn rp_solver() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let tiny = ThresholdConstant::new(1, u64::MAX).unwrap();
    let mut failures = Vec::new();
    let mut fired = 0;
    let cases = 500;
    for case in 0..cases {
        let (items, u, m) = random_rp(&mut rng);
        for c in [ThresholdConstant::default(), tiny] {
            let inst = RpInstance::new(items.clone(), u, m, c).unwrap();
            match check_rp(&inst) {
                Ok(f) => fired += usize::from(f && c == tiny),
                Err(e) => failures.push(format!("case {case} c={}/{}: {e}", c.num, c.den)),
            }
        }
    }
    let rate = fired as f64 / cases as f64;
    outcome(
        failures.is_empty() && rate >= 0.9,
        format!(
            "{cases} instances x 2 constants, {} violations, fallback fired on {fired}/{cases} ({:.0}%, need 90%){}",
            failures.len(),
            rate * 100.0,
            first(&failures)
        ),
    )
}

// ---------------------------------------------------------------- 4

fn set(v: Vec<u64>) -> IntegerSet {
    IntegerSet::from_unsorted(v)
}

fn values(rng: &mut ChaCha8Rng) -> IntegerSet {
    let n = rng.gen_range(1..60);
    set((0..n).map(|_| rng.gen_range(1..5_000)).collect())
}

/// Approximates `target` with factor `1 - num/den` on `[lo, hi]`. Elements
/// outside the interval are covered at random, the largest always.
fn factor_approx(
    rng: &mut ChaCha8Rng,
    target: &IntegerSet,
    num: u64,
    den: u64,
    lo: u64,
    hi: u64,
) -> IntegerSet {
    let mut out = Vec::new();
    for s in target.iter() {
        if (lo..=hi).contains(&s) || Some(s) == target.max() || rng.gen_bool(0.5) {
            let floor = ((den - num) as u128 * s as u128).div_ceil(den as u128) as u64;
            out.push(rng.gen_range(floor..=s));
        }
    }
    set(out)
}

fn additive_approx(
    rng: &mut ChaCha8Rng,
    target: &IntegerSet,
    delta: u64,
    lo: u64,
    hi: u64,
) -> IntegerSet {
    let mut out = Vec::new();
    for s in target.iter() {
        if (lo..=hi).contains(&s) || Some(s) == target.max() || rng.gen_bool(0.5) {
            out.push(rng.gen_range(s.saturating_sub(delta)..=s + delta));
        }
    }
    set(out)
}

/// One law checked on a random case: `None` if the premise failed to hold
/// (a generator bug), otherwise whether the conclusion held.
type LawCase = fn(&mut ChaCha8Rng) -> Option<bool>;

fn factor_to_additive(rng: &mut ChaCha8Rng) -> Option<bool> {
    let target = values(rng);
    let den = rng.gen_range(2..64u64);
    let num = rng.gen_range(0..=den / 2);
    let w = rng.gen_range(0..3_000);
    let v = w + rng.gen_range(0..3_000);
    let approx = factor_approx(rng, &target, num, den, w, v);
    check_approx(
        &approx,
        &target,
        &ApproxSpec::factor(num, den).within(w, Some(v)),
    )
    .ok()?;
    let delta = (2 * num as u128 * v as u128 / den as u128) as u64;
    Some(
        check_approx(
            &approx.restrict(0, v),
            &target,
            &ApproxSpec::additive(delta).within(w, Some(v)),
        )
        .is_ok(),
    )
}

fn compose_factors(rng: &mut ChaCha8Rng) -> Option<bool> {
    let target = values(rng);
    let (d1, d2) = (rng.gen_range(2..32u64), rng.gen_range(2..32u64));
    let (n1, n2) = (rng.gen_range(0..=d1), rng.gen_range(0..=d2));
    let w = rng.gen_range(0..3_000);
    let v = w + rng.gen_range(0..3_000);
    let s1 = factor_approx(rng, &target, n1, d1, w, v);
    let s2 = factor_approx(rng, &s1, n2, d2, 0, u64::MAX);
    check_approx(&s1, &target, &ApproxSpec::factor(n1, d1).within(w, Some(v))).ok()?;
    check_approx(&s2, &s1, &ApproxSpec::factor(n2, d2)).ok()?;
    let den = d1 * d2;
    let num = den - (d1 - n1) * (d2 - n2);
    Some(
        check_approx(
            &s2,
            &target,
            &ApproxSpec::factor(num, den).within(w, Some(v)),
        )
        .is_ok(),
    )
}

fn compose_additive(rng: &mut ChaCha8Rng) -> Option<bool> {
    let target = values(rng);
    let (d1, d2) = (rng.gen_range(0..200), rng.gen_range(0..200));
    let w = rng.gen_range(0..3_000);
    let v = w + rng.gen_range(0..3_000);
    let s1 = additive_approx(rng, &target, d1, w, v);
    let s2 = additive_approx(rng, &s1, d2, 0, u64::MAX);
    check_approx(&s1, &target, &ApproxSpec::additive(d1).within(w, Some(v))).ok()?;
    check_approx(&s2, &s1, &ApproxSpec::additive(d2)).ok()?;
    Some(
        check_approx(
            &s2,
            &target,
            &ApproxSpec::additive(d1 + d2).within(w, Some(v)),
        )
        .is_ok(),
    )
}

fn sumset_factor(rng: &mut ChaCha8Rng) -> Option<bool> {
    let (s1, s2) = (values(rng), values(rng));
    let den = rng.gen_range(2..64u64);
    let num = rng.gen_range(0..=den);
    let u = rng.gen_range(0..10_000);
    let t1 = factor_approx(rng, &s1, num, den, 0, u);
    let t2 = factor_approx(rng, &s2, num, den, 0, u);
    let spec = ApproxSpec::factor(num, den).within(0, Some(u));
    check_approx(&t1, &s1, &spec).ok()?;
    check_approx(&t2, &s2, &spec).ok()?;
    let exact = oplus(&s1, &s2, None).ok()?;
    let approx = oplus(&t1, &t2, None).ok()?;
    Some(check_approx(&approx, &exact, &spec).is_ok())
}

fn sumset_additive(rng: &mut ChaCha8Rng) -> Option<bool> {
    let (s1, s2) = (values(rng), values(rng));
    let (d1, d2) = (rng.gen_range(0..200), rng.gen_range(0..200));
    let u = rng.gen_range(0..10_000);
    let t1 = additive_approx(rng, &s1, d1, 0, u);
    let t2 = additive_approx(rng, &s2, d2, 0, u);
    check_approx(&t1, &s1, &ApproxSpec::additive(d1).within(0, Some(u))).ok()?;
    check_approx(&t2, &s2, &ApproxSpec::additive(d2).within(0, Some(u))).ok()?;
    let exact = oplus(&s1, &s2, None).ok()?;
    let approx = oplus(&t1, &t2, None).ok()?;
    Some(
        check_approx(
            &approx,
            &exact,
            &ApproxSpec::additive(d1 + d2).within(0, Some(u)),
        )
        .is_ok(),
    )
}

fn interval_union(rng: &mut ChaCha8Rng) -> Option<bool> {
    let target = values(rng);
    let delta = rng.gen_range(0..200);
    let w = rng.gen_range(0..2_000);
    let mid = w + rng.gen_range(0..2_000);
    let v = mid + rng.gen_range(0..2_000);
    let t1 = additive_approx(rng, &target, delta, w, mid);
    let t2 = additive_approx(rng, &target, delta, mid, v);
    check_approx(
        &t1,
        &target,
        &ApproxSpec::additive(delta).within(w, Some(mid)),
    )
    .ok()?;
    check_approx(
        &t2,
        &target,
        &ApproxSpec::additive(delta).within(mid, Some(v)),
    )
    .ok()?;
    Some(
        check_approx(
            &t1.union(&t2),
            &target,
            &ApproxSpec::additive(delta).within(w, Some(v)),
        )
        .is_ok(),
    )
}

fn mirror_half(rng: &mut ChaCha8Rng) -> Option<bool> {
    let n = rng.gen_range(1..16);
    let x: Vec<u64> = (0..n).map(|_| rng.gen_range(1..400)).collect();
    let sigma: u64 = x.iter().sum();
    let delta = rng.gen_range(0..100);
    let sums = exact_subset_sums(&x, None).ok()?;
    let lower = sums.restrict(0, sigma / 2);
    let approx = set(lower
        .iter()
        .map(|s| {
            rng.gen_range(s.saturating_sub(delta)..=s + delta)
                .min(sigma)
        })
        .collect());
    check_approx(&approx, &lower, &ApproxSpec::additive(delta)).ok()?;
    let upper = sums.restrict(sigma.div_ceil(2), sigma);
    let mirrored = mirror_upper(&approx, sigma).ok()?;
    Some(check_approx(&mirrored, &upper, &ApproxSpec::additive(delta)).is_ok())
}

/// `|S ∩ [U, ∞)| <= (h + 1)·U` for a canonical set with top level `h`.
fn size_bound(rng: &mut ChaCha8Rng) -> Option<bool> {
    let u = [2u64, 4, 16, 64, 256][rng.gen_range(0..5)];
    let n = rng.gen_range(1..3_000);
    let mut v: Vec<u64> = (0..n).map(|_| rng.gen_range(1..1 << 20)).collect();
    if rng.gen_bool(0.5) {
        v.extend((1..rng.gen_range(2..8_000u64)).map(|i| i * u / 8 + 1));
    }
    let c = round_to_canonical(&set(v), Precision::new(u).ok()?).ok()?;
    let h = c.top_level().unwrap_or(0) as u64;
    let above = c.base().restrict(u, u64::MAX).len() as u64;
    Some(above <= (h + 1) * u && c.len() as u64 <= (h + 2) * u)
}

fn law_suites() -> Outcome {
    let suites: [(&str, LawCase); 8] = [
        ("factor-to-additive", factor_to_additive),
        ("compose-factor", compose_factors),
        ("compose-additive", compose_additive),
        ("sumset-factor", sumset_factor),
        ("sumset-additive", sumset_additive),
        ("interval-union", interval_union),
        ("mirror-half", mirror_half),
        ("canonical-size", size_bound),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (i, (name, case)) in suites.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(40 + i as u64);
        let (mut bad, mut invalid) = (0, 0);
        for _ in 0..1000 {
            match case(&mut rng) {
                Some(true) => {}
                Some(false) => bad += 1,
                None => invalid += 1,
            }
        }
        pass &= bad == 0 && invalid == 0;
        parts.push(format!("{name} {bad}/1000"));
        if invalid > 0 {
            parts.push(format!("{name} premise failed {invalid}x"));
        }
    }
    outcome(pass, format!("violations: {}", parts.join(", ")))
}

// ---------------------------------------------------------------- 5

fn pfptas() -> std::process::Command {
    std::process::Command::new(env!("CARGO_BIN_EXE_pfptas"))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    for inst in 0..10 {
        let n = rng.gen_range(5..=60);
        let text: String = (0..n)
            .map(|_| format!("{}\n", rng.gen_range(1..=100_000u64)))
            .collect();
        let path = dir.path().join(format!("inst{inst}.txt"));
        std::fs::write(&path, text).unwrap();
        let e = rng.gen_range(3..=10u64);
        let mut reference: Option<Vec<u8>> = None;
        for threads in [1, 4] {
            for _ in 0..20 {
                let out = pfptas()
                    .args([
                        "solve",
                        "--epsilon",
                        &format!("1/{e}"),
                        "--threads",
                        &threads.to_string(),
                    ])
                    .arg("--input")
                    .arg(&path)
                    .output()
                    .unwrap();
                if !out.status.success() {
                    failures.push(format!("instance {inst}: exit {:?}", out.status.code()));
                    break;
                }
                match &reference {
                    None => reference = Some(out.stdout),
                    Some(r) if *r != out.stdout => {
                        failures.push(format!(
                            "instance {inst}: report differs with --threads {threads}"
                        ));
                        break;
                    }
                    Some(_) => {}
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "10 instances x 20 runs x threads {{1,4}}, {} mismatches{}",
            failures.len(),
            first(&failures)
        ),
    )
}

// ---------------------------------------------------------------- 6

/// Seconds allowed per benchmark point before the run is killed.
fn point_budget() -> Duration {
    let secs = std::env::var("PFPTAS_ACCEPT_POINT_SECS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(60.0);
    Duration::from_secs_f64(secs)
}

/// Solver wall time for one generated instance, measured by a child
/// process that is killed once it exceeds `budget`.
fn bench_point(n: usize, e: u64, budget: Duration) -> Result<f64, String> {
    let mut child = pfptas()
        .args([
            "bench",
            "--n",
            &n.to_string(),
            "--e",
            &e.to_string(),
            "--seed",
            "1",
        ])
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::null())
        .spawn()
        .map_err(|e| e.to_string())?;
    let start = Instant::now();
    loop {
        if child.try_wait().map_err(|e| e.to_string())?.is_some() {
            break;
        }
        if start.elapsed() > budget {
            let _ = child.kill();
            let _ = child.wait();
            return Err(format!(
                "n={n} E={e} did not finish within {:.0}s",
                budget.as_secs_f64()
            ));
        }
        std::thread::sleep(Duration::from_millis(20));
    }
    let out = child.wait_with_output().map_err(|e| e.to_string())?;
    let csv = String::from_utf8_lossy(&out.stdout);
    let row: Vec<&str> = csv
        .lines()
        .nth(1)
        .ok_or("no benchmark output")?
        .split(',')
        .collect();
    match row.get(2) {
        Some(&"ok") => row[3]
            .parse::<f64>()
            .map(|ms| ms / 1e3)
            .map_err(|e| e.to_string()),
        other => Err(format!("n={n} E={e} status {other:?}")),
    }
}

/// Times each point in order, stopping at the first that fails, and checks
/// that time grows by at most `limit` per doubling of the swept parameter.
fn sweep(
    points: &[(usize, u64)],
    doubling: impl Fn(usize, u64, usize, u64) -> f64,
    limit: f64,
    budget: Duration,
) -> (bool, String) {
    let mut times = Vec::new();
    let mut error = None;
    for &(n, e) in points {
        match bench_point(n, e, budget) {
            Ok(t) => times.push(t),
            Err(msg) => {
                error = Some(msg);
                break;
            }
        }
    }
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for (i, t) in times.iter().enumerate() {
        let (n, e) = points[i];
        parts.push(format!("(n={n},E={e}) {t:.2}s"));
        if i > 0 {
            let (pn, pe) = points[i - 1];
            let steps = doubling(pn, pe, n, e);
            worst = worst.max((t / times[i - 1]).powf(1.0 / steps));
        }
    }
    let done = error.is_none();
    let mut detail = format!("{} of {} points measured", times.len(), points.len());
    if times.len() > 1 {
        detail.push_str(&format!(
            ", worst per-doubling ratio {worst:.2} (limit {limit})"
        ));
    }
    if !parts.is_empty() {
        detail.push_str(&format!(": {}", parts.join(" ")));
    }
    if let Some(msg) = error {
        detail.push_str(&format!("; {msg}"));
    }
    (done && worst <= limit, detail)
}

fn log2_ratio(a: f64, b: f64) -> f64 {
    (b / a).log2()
}

fn scaling() -> Outcome {
    let budget = point_budget();
    let e_points: Vec<(usize, u64)> = (0..=10).map(|k| (100_000, 1_000u64 << k)).collect();
    let mut n_points: Vec<(usize, u64)> = (0..=6).map(|k| (10_000usize << k, 1_000)).collect();
    n_points.push((1_000_000, 1_000));
    let (ok_e, de) = sweep(
        &e_points,
        |_, e0, _, e1| log2_ratio(e0 as f64, e1 as f64),
        2.8,
        budget,
    );
    let (ok_n, dn) = sweep(
        &n_points,
        |n0, _, n1, _| log2_ratio(n0 as f64, n1 as f64),
        2.5,
        budget,
    );
    outcome(
        ok_e && ok_n,
        format!("E sweep at n=1e5: {de} | n sweep at E=1e3: {dn}"),
    )
}

/// The same measurement at sizes that finish here; informational only.
fn scaling_small() -> Outcome {
    let budget = point_budget();
    let e_points: Vec<(usize, u64)> = [8, 16, 32, 64].iter().map(|&e| (1_000, e)).collect();
    let n_points: Vec<(usize, u64)> = [500, 1_000, 2_000, 4_000]
        .iter()
        .map(|&n| (n, 16))
        .collect();
    let (ok_e, de) = sweep(
        &e_points,
        |_, e0, _, e1| log2_ratio(e0 as f64, e1 as f64),
        2.8,
        budget,
    );
    let (ok_n, dn) = sweep(
        &n_points,
        |n0, _, n1, _| log2_ratio(n0 as f64, n1 as f64),
        2.5,
        budget,
    );
    outcome(
        ok_e && ok_n,
        format!("E sweep at n=1000: {de} | n sweep at E=16: {dn}"),
    )
}

// ---------------------------------------------------------------- driver

struct Criterion {
    id: &'static str,
    name: &'static str,
    run: fn() -> Outcome,
    /// Failure makes the suite exit non-zero.
    enforced: bool,
}

fn main() {
    // libtest flags such as `--nocapture` are accepted and ignored; a
    // `--list` from tooling gets an empty listing.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria = [
        Criterion {
            id: "1",
            name: "end-to-end oracle equivalence",
            run: end_to_end,
            enforced: true,
        },
        Criterion {
            id: "2",
            name: "approximate sumset contract",
            run: oplus_contract,
            enforced: true,
        },
        Criterion {
            id: "3",
            name: "reduced-problem solver",
            run: rp_solver,
            enforced: true,
        },
        Criterion {
            id: "4",
            name: "approximation law suites",
            run: law_suites,
            enforced: true,
        },
        Criterion {
            id: "5",
            name: "determinism",
            run: determinism,
            enforced: true,
        },
        Criterion {
            id: "6",
            name: "scaling at n=1e5..1e6, E=1e3..1e6",
            run: scaling,
            enforced: false,
        },
        Criterion {
            id: "6-small",
            name: "scaling at n<=4000, E<=64",
            run: scaling_small,
            enforced: false,
        },
    ];
    let only: Option<Vec<String>> = std::env::var("PFPTAS_ACCEPT_ONLY")
        .ok()
        .map(|s| s.split(',').map(|p| p.trim().to_string()).collect());
    let mut failed = Vec::new();
    for c in &criteria {
        if only
            .as_ref()
            .is_some_and(|o| !o.iter().any(|id| id == c.id))
        {
            continue;
        }
        let start = Instant::now();
        let out = (c.run)();
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        let note = if c.enforced || out.pass {
            ""
        } else {
            " (not enforced)"
        };
        println!(
            "{verdict} [{}] {} ({:.1}s){note}: {}",
            c.id,
            c.name,
            start.elapsed().as_secs_f64(),
            out.detail
        );
        if !out.pass && c.enforced {
            failed.push(c.id);
        }
    }
    if !failed.is_empty() {
        println!("enforced criteria failed: {}", failed.join(", "));
        std::process::exit(1);
    }
}
