//! Verification corpora: registered (algorithm, instance) sets that run
//! with oracle checking and aggregate to a single verdict.

use super::{cmd_run, AlgoId, Eps, ExperimentConfig};
use crate::gadgets::{check_dichotomy, gen_gadget, GadgetFamily, GadgetSpec};
use crate::oracle;
use crate::reconstruct::{
    build_rpath_tables, construct_cycle, route_failover, OnFlyOutcome, RpAlgo,
};
use crate::rpaths::AlgoError;
use crate::sim::SimConfig;
use serde::{Deserialize, Serialize};
use serde_json::json;

pub const CORPORA: [&str; 4] = [
    "exact-corpus",
    "approx-corpus",
    "gadget-corpus",
    "recon-corpus",
];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub corpus: String,
    pub entries: Vec<SuiteEntry>,
    pub pass: bool,
}

impl SuiteOutcome {
    pub fn text(&self) -> String {
        let mut out = format!("suite: {}\n", self.corpus);
        for e in &self.entries {
            out.push_str(&format!(
                "{} {} {}\n",
                if e.pass { "pass" } else { "FAIL" },
                e.name,
                e.detail
            ));
        }
        out.push_str(&format!(
            "aggregate: {} ({}/{} passed)\n",
            if self.pass { "pass" } else { "FAIL" },
            self.entries.iter().filter(|e| e.pass).count(),
            self.entries.len()
        ));
        out
    }

    /// Machine-readable summary, stable for identical seeds.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(&json!({
            "schema": super::SCHEMA_VERSION,
            "corpus": self.corpus,
            "pass": self.pass,
            "entries": self.entries,
        }))
        .expect("suite serializes")
    }
}

fn run_entry(algo: AlgoId, graph: String, seed: u64, eps: Option<Eps>) -> SuiteEntry {
    let cfg = ExperimentConfig {
        algo: algo.id().into(),
        graph: graph.clone(),
        path: "auto".into(),
        seed,
        eps,
        budget: None,
        charge: false,
        verify: true,
    };
    let name = format!("{} {} seed={seed}", algo.id(), graph);
    match cmd_run(&cfg) {
        Ok(report) => {
            let v = report.verdict.expect("verify was requested");
            SuiteEntry {
                name,
                pass: v.pass,
                detail: v.detail,
            }
        }
        Err(e) => SuiteEntry {
            name,
            pass: false,
            detail: format!("run failed: {e}"),
        },
    }
}

/// The registered members of each corpus.
pub fn suite_entries(corpus: &str) -> Result<Vec<SuiteEntry>, AlgoError> {
    match corpus {
        "exact-corpus" => {
            let mut entries = Vec::new();
            for seed in 0..5u64 {
                entries.push(run_entry(
                    AlgoId::RpDirwApsp,
                    format!("random:n=28,p=0.18,weighted,directed,w=60,seed={seed}"),
                    seed,
                    None,
                ));
                entries.push(run_entry(
                    AlgoId::RpIterSssp,
                    format!("random:n=28,p=0.18,weighted,directed,w=60,seed={}", seed + 10),
                    seed,
                    None,
                ));
                entries.push(run_entry(
                    AlgoId::RpDirunwSample,
                    format!("layered:n=48,hst=6,seed={seed}"),
                    seed,
                    None,
                ));
                entries.push(run_entry(
                    AlgoId::RpUndir,
                    format!("random:n=28,p=0.16,weighted,w=60,seed={}", seed + 20),
                    seed,
                    None,
                ));
                entries.push(run_entry(
                    AlgoId::MwcDir,
                    format!("random:n=24,p=0.2,weighted,directed,w=40,seed={}", seed + 30),
                    seed,
                    None,
                ));
                entries.push(run_entry(
                    AlgoId::MwcUndir,
                    format!("random:n=24,p=0.18,weighted,w=40,seed={}", seed + 40),
                    seed,
                    None,
                ));
                entries.push(run_entry(
                    AlgoId::Ansc,
                    format!("random:n=22,p=0.2,seed={}", seed + 50),
                    seed,
                    None,
                ));
            }
            Ok(entries)
        }
        "approx-corpus" => {
            let eps = Some(Eps { num: 1, den: 4 });
            let mut entries = Vec::new();
            for seed in 0..4u64 {
                entries.push(run_entry(
                    AlgoId::GirthApprox,
                    format!("random:n=40,p=0.08,seed={seed}"),
                    seed,
                    None,
                ));
                entries.push(run_entry(
                    AlgoId::MwcWapprox,
                    format!("random:n=24,p=0.14,weighted,w=16,seed={}", seed + 60),
                    seed,
                    eps,
                ));
                entries.push(run_entry(
                    AlgoId::RpDirwApprox,
                    format!("random:n=24,p=0.2,weighted,directed,w=30,seed={}", seed + 70),
                    seed,
                    eps,
                ));
            }
            Ok(entries)
        }
        "gadget-corpus" => {
            let mut entries = Vec::new();
            let families: Vec<GadgetFamily> = vec![
                GadgetFamily::DirwRpaths,
                GadgetFamily::DirwRpathsSink,
                GadgetFamily::DirunwRpaths,
                GadgetFamily::UndirRpaths,
                GadgetFamily::DirMwc,
                GadgetFamily::UndirwMwc,
                GadgetFamily::QCycle { q: 4 },
                GadgetFamily::QCycle { q: 5 },
                GadgetFamily::QCycle { q: 6 },
            ];
            for family in families {
                for k in [2usize, 3, 4] {
                    for intersecting in [true, false] {
                        for seed in 0..3u64 {
                            let k_eff = if matches!(
                                family,
                                GadgetFamily::DirunwRpaths | GadgetFamily::UndirRpaths
                            ) {
                                k + 8
                            } else {
                                k
                            };
                            let spec = GadgetSpec::random(family, k_eff, intersecting, seed);
                            let name = format!(
                                "{} k={k_eff} intersecting={intersecting} seed={seed}",
                                family.id()
                            );
                            match gen_gadget(&spec) {
                                Ok(inst) => {
                                    let v = check_dichotomy(&inst);
                                    entries.push(SuiteEntry {
                                        name,
                                        pass: v.pass,
                                        detail: format!(
                                            "measured {} vs {}",
                                            v.measured, v.requirement
                                        ),
                                    });
                                }
                                Err(e) => entries.push(SuiteEntry {
                                    name,
                                    pass: false,
                                    detail: format!("generation failed: {e}"),
                                }),
                            }
                        }
                    }
                }
            }
            Ok(entries)
        }
        "recon-corpus" => {
            let mut entries = Vec::new();
            let cases: Vec<(RpAlgo, String)> = vec![
                (
                    RpAlgo::IterSssp,
                    "random:n=22,p=0.2,weighted,directed,w=30,seed=81".into(),
                ),
                (
                    RpAlgo::DirwApsp,
                    "random:n=20,p=0.22,weighted,directed,w=25,seed=82".into(),
                ),
                (RpAlgo::DirunwSample, "layered:n=48,hst=6,seed=83".into()),
                (
                    RpAlgo::Undirected,
                    "random:n=22,p=0.18,weighted,w=30,seed=84".into(),
                ),
            ];
            for (algo, graph) in cases {
                entries.push(recon_entry(algo, &graph));
            }
            entries.push(cycle_entry("random:n=16,p=0.22,weighted,directed,w=20,seed=85", false));
            entries.push(cycle_entry("random:n=16,p=0.2,weighted,w=20,seed=86", true));
            Ok(entries)
        }
        other => Err(AlgoError::InvalidInput(format!("unknown corpus `{other}`"))),
    }
}

fn recon_entry(algo: RpAlgo, graph: &str) -> SuiteEntry {
    let name = format!("routes {algo:?} {graph}");
    let fail = |detail: String| SuiteEntry {
        name: name.clone(),
        pass: false,
        detail,
    };
    let source = match super::GraphSource::parse(graph) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let (g, gp) = match source.build() {
        Ok(x) => x,
        Err(e) => return fail(e.to_string()),
    };
    let p = match gp.map_or_else(|| super::auto_path(&g), Ok) {
        Ok(p) => p,
        Err(e) => return fail(e.to_string()),
    };
    let cfg = SimConfig::new(9);
    let (outcome, routes, mut log) = match build_rpath_tables(&g, &p, algo, &cfg) {
        Ok(x) => x,
        Err(e) => return fail(e.to_string()),
    };
    let h_rep = routes.h_rep();
    for j in 0..p.h_st {
        let (u, v) = p.edge(j);
        let want = oracle::oracle_replacement_weight(&g, &p, u, v);
        match route_failover(&g, &p, routes.next.clone(), (u, v), &cfg, &mut log) {
            Ok(OnFlyOutcome::NoReplacement) => {
                if want < g.sentinel() {
                    return fail(format!("edge {j}: replacement exists but was not routed"));
                }
            }
            Ok(OnFlyOutcome::Routed(tr)) => {
                if !tr.is_simple_path()
                    || tr.uses_edge(u, v, g.directed())
                    || tr.weight != want
                    || tr.weight != outcome.result.per_edge[j].weight
                    || tr.rounds > p.h_st as u64 + h_rep
                {
                    return fail(format!(
                        "edge {j}: trace invalid (weight {} vs {want}, rounds {} vs {} + {h_rep})",
                        tr.weight, tr.rounds, p.h_st
                    ));
                }
            }
            Err(e) => return fail(e.to_string()),
        }
    }
    SuiteEntry {
        name,
        pass: true,
        detail: format!("{} failures routed, h_rep {h_rep}", p.h_st),
    }
}

fn cycle_entry(graph: &str, onfly: bool) -> SuiteEntry {
    let name = format!("cycles {graph} onfly={onfly}");
    let fail = |detail: String| SuiteEntry {
        name: name.clone(),
        pass: false,
        detail,
    };
    let (g, _) = match super::GraphSource::parse(graph).map_err(AlgoError::InvalidInput).and_then(|s| s.build()) {
        Ok(x) => x,
        Err(e) => return fail(e.to_string()),
    };
    let cfg = SimConfig::new(11);
    let run = match crate::mwc::ansc(&g, &cfg) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let ansc = run.result.ansc.clone().unwrap();
    for u in 0..g.n() {
        match construct_cycle(&g, &run.result, u, onfly, &cfg) {
            Ok(out) => match out.result {
                None => {
                    if ansc[u] < g.sentinel() {
                        return fail(format!("node {u}: cycle exists but was not built"));
                    }
                }
                Some(tr) => {
                    if tr.weight != ansc[u] || tr.rounds != (tr.vertices.len() - 1) as u64 {
                        return fail(format!(
                            "node {u}: trace weight {} vs ansc {}",
                            tr.weight, ansc[u]
                        ));
                    }
                }
            },
            Err(e) => return fail(e.to_string()),
        }
    }
    SuiteEntry {
        name,
        pass: true,
        detail: "all per-node cycles close at their ANSC weight".into(),
    }
}

/// Runs a corpus and aggregates.
pub fn cmd_suite(corpus: &str) -> Result<SuiteOutcome, AlgoError> {
    let entries = suite_entries(corpus)?;
    let pass = entries.iter().all(|e| e.pass);
    Ok(SuiteOutcome {
        corpus: corpus.into(),
        entries,
        pass,
    })
}

/// Byte-stable digest of a full suite run (all corpora), for determinism
/// checks: runs everything and returns the concatenated canonical JSON.
pub fn determinism_digest() -> Result<String, AlgoError> {
    let mut out = String::new();
    for corpus in CORPORA {
        out.push_str(&cmd_suite(corpus)?.canonical_json());
        out.push('\n');
    }
    Ok(out)
}
