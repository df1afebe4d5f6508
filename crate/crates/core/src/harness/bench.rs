//! Round-scaling benchmarks: median measured rounds per size and the
//! fitted log-log slope.

use super::{AlgoId, ExperimentConfig, Report};
use crate::rpaths::AlgoError;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub median_rounds: u64,
    pub rounds: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchResult {
    pub algo: String,
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of log(median rounds) against log(n); absent
    /// with fewer than two sizes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope: Option<f64>,
}

impl BenchResult {
    pub fn text(&self) -> String {
        let mut out = format!("bench: {}\n", self.algo);
        out.push_str("n rounds_median rounds_all\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{} {} {:?}\n",
                row.n, row.median_rounds, row.rounds
            ));
        }
        if let Some(s) = self.slope {
            out.push_str(&format!("loglog_slope: {s:.4}\n"));
        }
        out
    }
}

/// Instance recipe for a benchmark point.
fn bench_graph_spec(algo: AlgoId, n: usize, hst: usize, seed: u64) -> String {
    match algo {
        AlgoId::RpDirunwSample | AlgoId::RpIterSssp | AlgoId::RpDirwApprox => {
            format!("layered:n={n},hst={hst},seed={seed}")
        }
        _ => {
            // Sparse connected undirected instances: p a bit above the
            // connectivity threshold.
            let p = (1.4 * (n.max(4) as f64).ln() / n as f64).min(1.0);
            format!("random:n={n},p={p:.6},seed={seed}")
        }
    }
}

/// Runs `algo` over ascending sizes, `seeds` instances per size, and fits
/// the slope on medians.
pub fn cmd_bench(
    algo: AlgoId,
    sizes: &[usize],
    hst: usize,
    seeds: u64,
    eps: Option<super::Eps>,
) -> Result<BenchResult, AlgoError> {
    assert!(sizes.windows(2).all(|w| w[0] < w[1]), "sizes must ascend");
    let mut rows = Vec::new();
    for &n in sizes {
        let mut rounds = Vec::new();
        for seed in 0..seeds.max(1) {
            let cfg = ExperimentConfig {
                algo: algo.id().into(),
                graph: bench_graph_spec(algo, n, hst, seed),
                path: "auto".into(),
                seed,
                eps,
                budget: None,
                charge: false,
                verify: false,
            };
            let report: Report = super::cmd_run(&cfg)?;
            rounds.push(report.rounds);
        }
        rounds.sort_unstable();
        let median = rounds[rounds.len() / 2];
        rows.push(BenchRow {
            n,
            median_rounds: median,
            rounds,
        });
    }
    let slope = (rows.len() >= 2).then(|| fit_slope(&rows));
    Ok(BenchResult {
        algo: algo.id().into(),
        rows,
        slope,
    })
}

/// Least squares on (ln n, ln median_rounds).
pub fn fit_slope(rows: &[BenchRow]) -> f64 {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).ln(), (r.median_rounds.max(1) as f64).ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_size_has_no_slope() {
        let r = cmd_bench(AlgoId::MwcUndir, &[48], 8, 2, None).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert!(r.slope.is_none());
    }

    #[test]
    fn slope_fit_recovers_a_power_law() {
        let rows = vec![
            BenchRow { n: 64, median_rounds: 64, rounds: vec![] },
            BenchRow { n: 256, median_rounds: 256, rounds: vec![] },
            BenchRow { n: 1024, median_rounds: 1024, rounds: vec![] },
        ];
        assert!((fit_slope(&rows) - 1.0).abs() < 1e-9);
    }
}
