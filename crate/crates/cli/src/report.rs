use partition_fptas::pipeline::ErrorBudget;
use partition_fptas::stats::EngineCounters;
use partition_fptas::StageTimings;
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

/// Wall time per stage in milliseconds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timings {
    pub parse_ms: f64,
    pub reduce_ms: f64,
    pub classes_ms: f64,
    pub combine_ms: f64,
    pub recover_ms: f64,
    pub verify_ms: f64,
    pub total_ms: f64,
}

impl Timings {
    pub fn from_stages(parse: f64, stages: &StageTimings, verify: f64, total: f64) -> Self {
        let ms = |d: std::time::Duration| d.as_secs_f64() * 1e3;
        Self {
            parse_ms: parse,
            reduce_ms: ms(stages.reduce),
            classes_ms: ms(stages.classes),
            combine_ms: ms(stages.combine),
            recover_ms: ms(stages.recover),
            verify_ms: verify,
            total_ms: total,
        }
    }
}

/// Everything a run reports. Without timings the serialized form depends
/// only on the input and the options.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub input_sha256: String,
    pub n: usize,
    pub total: u64,
    /// `ε` as `1/E`; absent in oracle mode.
    pub epsilon: Option<String>,
    pub achieved_sum: u64,
    /// Exact optimum, oracle mode only.
    pub opt: Option<u64>,
    pub subset_indices: Vec<usize>,
    pub trivial: Option<bool>,
    pub threshold_constant: Option<String>,
    pub budget: Option<ErrorBudget>,
    pub counters: Option<EngineCounters>,
    pub timings: Option<Timings>,
}

impl RunReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Tsv => self.to_tsv(),
        }
    }

    /// One `key<TAB>value` line per field; lists are comma-separated.
    fn to_tsv(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            let _ = writeln!(out, "{k}\t{v}");
        };
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        line("command", self.command.into());
        line("input_sha256", self.input_sha256.clone());
        line("n", self.n.to_string());
        line("total", self.total.to_string());
        line("epsilon", opt(self.epsilon.clone()));
        line("achieved_sum", self.achieved_sum.to_string());
        line("opt", opt(self.opt.map(|v| v.to_string())));
        line("subset_indices", join(self.subset_indices.iter()));
        line("trivial", opt(self.trivial.map(|v| v.to_string())));
        line("threshold_constant", opt(self.threshold_constant.clone()));
        if let Some(b) = &self.budget {
            line("budget.multiplier", b.multiplier.to_string());
            line(
                "budget.internal_precision",
                b.internal_precision.to_string(),
            );
            line("budget.allowed", b.allowed.to_string());
            line("budget.tiny_merge", b.tiny_merge.to_string());
            line("budget.scaling", b.scaling.to_string());
            line(
                "budget.classes",
                join(
                    b.classes
                        .iter()
                        .map(|c| format!("{}:{}:{}:{}", c.alpha, c.items, c.windows, c.error)),
                ),
            );
            line("budget.combine", b.combine.to_string());
            line("budget.total", b.total.to_string());
        }
        if let Some(c) = &self.counters {
            line("counters.sumset_calls", c.sumset_calls.to_string());
            line("counters.ntt_calls", c.ntt_calls.to_string());
            line("counters.bitset_calls", c.bitset_calls.to_string());
            line("counters.max_ntt_len", c.max_ntt_len.to_string());
            line("counters.oplus_mu_calls", c.oplus_mu_calls.to_string());
            line("counters.early_stops", c.early_stops.to_string());
            line("counters.rp_solves", c.rp_solves.to_string());
            line("counters.rp_exact_paths", c.rp_exact_paths.to_string());
        }
        if let Some(t) = &self.timings {
            line("timings.parse_ms", format!("{:.3}", t.parse_ms));
            line("timings.reduce_ms", format!("{:.3}", t.reduce_ms));
            line("timings.classes_ms", format!("{:.3}", t.classes_ms));
            line("timings.combine_ms", format!("{:.3}", t.combine_ms));
            line("timings.recover_ms", format!("{:.3}", t.recover_ms));
            line("timings.verify_ms", format!("{:.3}", t.verify_ms));
            line("timings.total_ms", format!("{:.3}", t.total_ms));
        }
        out
    }
}

fn join<T: ToString>(it: impl Iterator<Item = T>) -> String {
    it.map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}
