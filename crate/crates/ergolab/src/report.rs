//! Report types and file emission.

use std::fs;
use std::path::Path;

use ergolab_core::base_systems::ReturnStep;
use ergolab_core::cascades::WeissTable;
use ergolab_core::lemma_tools::LemmaFuzzReport;
use ergolab_core::zero_lab::{ScanStats, ZeroEvent};
use ergolab_core::FlowPoint;
use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::RunError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleStatus {
    Complete,
    /// The per-step horizon ran out before the requested work was done.
    Partial,
    /// The event cap stopped the search before the horizon.
    Truncated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CascadeZerosSample {
    pub id: u64,
    pub x: f64,
    pub zero_count: u64,
    pub zeros: Vec<u64>,
    pub last_zero: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignTimesSample {
    pub id: u64,
    pub x: f64,
    pub below_count: u64,
    pub above_count: u64,
    pub below: Vec<u64>,
    pub above: Vec<u64>,
    /// `max |S(x,n)/n - ∫ g|` over sign times `n >= tail_from`.
    pub tail_deviation: f64,
    pub tail_from: u64,
    pub final_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowZerosSample {
    pub id: u64,
    pub start: FlowPoint,
    pub status: SampleStatus,
    pub event_count: u64,
    pub in_target_count: u64,
    pub transversal_count: u64,
    pub tangential_count: u64,
    pub max_residual: f64,
    pub events: Vec<ZeroEvent>,
    pub stats: ScanStats,
    /// Membership of the start point in `A_b`, when `b` and `delta` are set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start_in_ab: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenisovaSample {
    pub id: u64,
    pub start: FlowPoint,
    pub radii_consumed: usize,
    pub zeros_seen: u64,
    pub accepted: Vec<ZeroEvent>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InducedSample {
    pub id: u64,
    pub x: f64,
    pub status: SampleStatus,
    pub steps_done: u64,
    pub total_time: u64,
    /// `Σ` of the induced cocycle over the completed steps.
    pub induced_sum: i64,
    /// `S(x, total_time)` recomputed directly.
    pub birkhoff_sum: i64,
    pub telescoping_holds: bool,
    pub steps: Vec<ReturnStep<i64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WienerSample {
    pub id: u64,
    pub start: FlowPoint,
    pub t_values: Vec<f64>,
    pub residuals: Vec<f64>,
    pub bounds: Vec<Option<f64>>,
    pub slope_bound: f64,
    pub within_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Results {
    CascadeZeros {
        samples: Vec<CascadeZerosSample>,
    },
    ShneibergDiscrete {
        mean: f64,
        samples: Vec<SignTimesSample>,
    },
    FlowZeros {
        samples: Vec<FlowZerosSample>,
    },
    Theorem1 {
        target_measure: f64,
        samples: Vec<FlowZerosSample>,
    },
    Denisova {
        radii: Vec<f64>,
        samples: Vec<DenisovaSample>,
    },
    Induced {
        samples: Vec<InducedSample>,
    },
    Weiss {
        table: WeissTable,
    },
    LemmaFuzz {
        report: LemmaFuzzReport,
    },
    Wiener {
        samples: Vec<WienerSample>,
    },
    PhiTrace {
        start: FlowPoint,
        points: u64,
        final_phi: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub samples: u64,
    pub successes: u64,
    pub success_fraction: f64,
    /// What `success` means for this experiment.
    pub success_rule: String,
    /// What the count statistics count.
    pub count_label: String,
    pub count_min: Option<f64>,
    pub count_median: Option<f64>,
    pub count_max: Option<f64>,
    /// Samples whose work finished within the configured horizons.
    pub complete: u64,
}

impl Summary {
    pub fn new(rule: &str, label: &str, successes: &[bool], counts: &[f64], complete: u64) -> Self {
        let n = successes.len() as u64;
        let ok = successes.iter().filter(|&&s| s).count() as u64;
        let mut sorted = counts.to_vec();
        sorted.sort_by(f64::total_cmp);
        let median = match sorted.len() {
            0 => None,
            k if k % 2 == 1 => Some(sorted[k / 2]),
            k => Some(0.5 * (sorted[k / 2 - 1] + sorted[k / 2])),
        };
        Summary {
            samples: n,
            successes: ok,
            success_fraction: if n == 0 { 0.0 } else { ok as f64 / n as f64 },
            success_rule: rule.into(),
            count_label: label.into(),
            count_min: sorted.first().copied(),
            count_median: median,
            count_max: sorted.last().copied(),
            complete,
        }
    }
}

/// Wall-clock data, excluded from determinism comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_seconds: f64,
    pub threads: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: ExperimentConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_form: Option<String>,
    pub warnings: Vec<String>,
    pub summary: Summary,
    pub results: Results,
    pub timing: Timing,
}

impl RunReport {
    /// The report as JSON with the timing field removed.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("timing");
        }
        serde_json::to_string(&v).expect("report serializes")
    }
}

/// Rows for the CSV traces.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Traces {
    /// `(t, Φ(t, x))`.
    pub phi_trace: Vec<(f64, f64)>,
    /// `(sample_id, t_k, in_target, residual)`.
    pub zeros: Vec<(u64, f64, bool, f64)>,
    /// `(n, S(x, n))` for sample 0, already formatted.
    pub sums: Vec<(u64, String)>,
}

/// Writes report.json and the non-empty CSV traces into `dir`.
pub fn write_outputs(dir: &Path, report: &RunReport, traces: &Traces) -> Result<(), RunError> {
    fs::create_dir_all(dir)?;
    let mut json = serde_json::to_string_pretty(report)?;
    json.push('\n');
    fs::write(dir.join("report.json"), json)?;
    if !traces.phi_trace.is_empty() {
        let mut w = csv::Writer::from_path(dir.join("phi_trace.csv"))?;
        w.write_record(["t", "phi"])?;
        for (t, v) in &traces.phi_trace {
            w.write_record([t.to_string(), v.to_string()])?;
        }
        w.flush()?;
    }
    if !traces.zeros.is_empty() {
        let mut w = csv::Writer::from_path(dir.join("zeros.csv"))?;
        w.write_record(["sample_id", "t_k", "in_target", "residual"])?;
        for (id, t, hit, r) in &traces.zeros {
            w.write_record([
                id.to_string(),
                t.to_string(),
                hit.to_string(),
                r.to_string(),
            ])?;
        }
        w.flush()?;
    }
    if !traces.sums.is_empty() {
        let mut w = csv::Writer::from_path(dir.join("sums.csv"))?;
        w.write_record(["n", "S"])?;
        for (n, s) in &traces.sums {
            w.write_record([n.to_string(), s.clone()])?;
        }
        w.flush()?;
    }
    Ok(())
}
