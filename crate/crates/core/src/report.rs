//! Machine-readable sweeps over generated instances.
//!
//! Output is a JSON document with `schema: 1`. Object keys are sorted, and
//! instances are evaluated in parallel but reported in input order, so the
//! same configuration always produces the same bytes.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::average::{decompose, Alpha, DecomposeOutcome};
use crate::compression::{find_kc_compressible, kc, rtd_sequence, teaching_dimension};
use crate::error::{Error, Result};
use crate::generators::{generate, generate_system, GeneratorSpec, MAX_CONCEPTS, MAX_GROUND};
use crate::hype::hype_family;
use crate::oracle::{oracle_min_td_class, MAX_ORACLE_GROUND};
use crate::udtfs::udtfs_report;
use crate::vc::vc_dimension;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    KcTable,
    Bounds,
    Frontier,
    Udtfs,
    HypeVc,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::KcTable,
        Suite::Bounds,
        Suite::Frontier,
        Suite::Udtfs,
        Suite::HypeVc,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::KcTable => "kc-table",
            Suite::Bounds => "bounds",
            Suite::Frontier => "frontier",
            Suite::Udtfs => "udtfs",
            Suite::HypeVc => "hype-vc",
        }
    }

    pub fn default_instances(&self, seed: u64) -> Vec<GeneratorSpec> {
        use GeneratorSpec::*;
        match self {
            Suite::KcTable => Vec::new(),
            Suite::Bounds => {
                let mut v = vec![
                    Thresholds { m: 10 },
                    Intervals { m: 8 },
                    UnionsOfIntervals { m: 8, t: 2 },
                    HalfplanesOnGrid {
                        width: 3,
                        height: 3,
                    },
                ];
                v.extend((0..4).map(|i| RandomFiltered {
                    m: 10,
                    concepts: 24,
                    max_vc: 2,
                    seed: seed.wrapping_add(i),
                }));
                v
            }
            Suite::Frontier => vec![
                Thresholds { m: 3 },
                Thresholds { m: 4 },
                Intervals { m: 4 },
                Intervals { m: 5 },
            ],
            Suite::Udtfs => (3..=8).map(|m| OrderRelation { m }).collect(),
            Suite::HypeVc => {
                let mut v = vec![Thresholds { m: 5 }, Intervals { m: 5 }, Singletons { m: 5 }];
                v.extend((0..4).map(|i| RandomFiltered {
                    m: 5,
                    concepts: 10,
                    max_vc: 2,
                    seed: seed.wrapping_add(i),
                }));
                v
            }
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct ReportConfig {
    pub suite: Suite,
    pub seed: u64,
    /// Instances to run; the suite's defaults when empty.
    pub instances: Vec<GeneratorSpec>,
    pub n_max: usize,
    pub alpha: Alpha,
}

impl ReportConfig {
    pub fn new(suite: Suite, seed: u64) -> Self {
        ReportConfig {
            suite,
            seed,
            instances: Vec::new(),
            n_max: 5,
            alpha: Alpha::HALF,
        }
    }
}

pub fn kc_table() -> Value {
    let map: serde_json::Map<String, Value> =
        (0..=3u32).map(|d| (d.to_string(), json!(kc(d)))).collect();
    Value::Object(map)
}

fn bounds_entry(spec: &GeneratorSpec) -> Result<Value> {
    let c = generate_system(spec)?;
    let vc = vc_dimension(&c)?;
    let bound = kc(vc as u32);
    let (concept, cert) = find_kc_compressible(&c)?;
    let min_td = if c.ground_size() <= MAX_ORACLE_GROUND {
        oracle_min_td_class(&c)?
    } else {
        let mut best = usize::MAX;
        for l in c.labelings() {
            best = best.min(teaching_dimension(&c, &l)?.0);
        }
        best
    };
    let rtd = rtd_sequence(&c)?;
    let rtd_max = rtd.iter().map(|s| s.teaching_dimension).max().unwrap_or(0);
    let rtd_ok = rtd
        .iter()
        .all(|s| s.teaching_dimension as u64 <= kc(s.class_vc as u32));
    let pass = cert.size() as u64 <= bound && min_td as u64 <= bound && rtd_ok;
    Ok(json!({
        "instance": spec.to_string(),
        "vc": vc,
        "kc_bound": bound,
        "min_td": min_td,
        "found": { "concept": concept.to_string(), "witness": cert.witness, "size": cert.size() },
        "rtd_max": rtd_max,
        "pass": pass,
    }))
}

fn frontier_entry(spec: &GeneratorSpec, alpha: Alpha, n_max: usize) -> Result<Value> {
    let c = generate_system(spec)?;
    let vc = vc_dimension(&c)?;
    let k_top = (kc(vc as u32) as usize).min(c.ground_size());
    let mut targets = Vec::new();
    for target in c.labelings() {
        let mut by_k = Vec::new();
        for k in 0..=k_top {
            let row = match decompose(&c, &target, alpha, n_max, k)? {
                DecomposeOutcome::Found(d) => json!({
                    "k": k, "n": d.n(), "status": "found",
                    "components": d.concepts().iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                }),
                DecomposeOutcome::Exhausted { .. } => {
                    json!({ "k": k, "n": null, "status": "exhausted" })
                }
            };
            by_k.push(row);
        }
        targets.push(json!({ "target": target.to_string(), "by_k": by_k }));
    }
    Ok(json!({
        "instance": spec.to_string(),
        "vc": vc,
        "kc_bound": kc(vc as u32),
        "alpha": alpha.to_string(),
        "n_max": n_max,
        "targets": targets,
    }))
}

fn udtfs_entry(spec: &GeneratorSpec, alpha: Alpha, n_max: usize) -> Result<Value> {
    let rel = generate(spec)?
        .relation()
        .ok_or_else(|| Error::Input(format!("{spec} is not a relation")))?;
    let points: Vec<usize> = (0..rel.x_size()).collect();
    let rep = udtfs_report(&rel, &points, alpha, n_max, 2)?;
    Ok(json!({
        "instance": spec.to_string(),
        "successes": rep.successes(),
        "total": rep.total(),
        "max_k": rep.max_k(),
        "pass": rep.all_exact() && rep.max_k().is_some_and(|k| k <= 2),
    }))
}

fn hype_vc_entry(spec: &GeneratorSpec) -> Result<Value> {
    let c = generate_system(spec)?;
    let vc = vc_dimension(&c)?;
    let m = c.ground_size();
    let mut rows = Vec::new();
    for k in vc + 1..=m {
        let h = hype_family(&c, k)?;
        let hvc = vc_dimension(&h)?;
        rows.push(json!({ "k": k, "hype_count": h.len(), "hype_vc": hvc, "pass": hvc <= vc }));
    }
    let pass = rows.iter().all(|r| r["pass"] == json!(true));
    Ok(json!({ "instance": spec.to_string(), "vc": vc, "by_k": rows, "pass": pass }))
}

pub fn run_report(config: &ReportConfig) -> Result<Value> {
    let instances = if config.instances.is_empty() {
        config.suite.default_instances(config.seed)
    } else {
        config.instances.clone()
    };
    let results: Vec<Value> = match config.suite {
        Suite::KcTable => vec![kc_table()],
        suite => instances
            .par_iter()
            .map(|spec| match suite {
                Suite::Bounds => bounds_entry(spec),
                Suite::Frontier => frontier_entry(spec, config.alpha, config.n_max),
                Suite::Udtfs => udtfs_entry(spec, config.alpha, config.n_max),
                Suite::HypeVc => hype_vc_entry(spec),
                Suite::KcTable => unreachable!(),
            })
            .collect::<Result<_>>()?,
    };
    Ok(json!({
        "schema": SCHEMA,
        "suite": config.suite.name(),
        "meta": {
            "seed": config.seed,
            "caps": { "ground": MAX_GROUND, "concepts": MAX_CONCEPTS, "oracle_ground": MAX_ORACLE_GROUND },
            "kc_table": kc_table(),
        },
        "results": results,
    }))
}
