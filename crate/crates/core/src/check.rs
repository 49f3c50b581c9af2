//! Randomized agreement harness: the geometric and direct methods on random
//! connected graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geometric::{cross_validate_with, CrossValidateOptions, Mismatch};
use crate::graph::{random_connected, Graph};
use crate::report::FORMAT_VERSION;

#[derive(Debug, Clone)]
pub struct CheckConfig {
    pub trials: usize,
    pub max_vertices: usize,
    /// Every trial graph is checked at each of these lengths (all >= 3).
    pub lengths: Vec<usize>,
    pub seed: u64,
    pub exec: Execution,
    pub options: CrossValidateOptions,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            trials: 50,
            max_vertices: 6,
            lengths: vec![3, 4, 5],
            seed: 0,
            exec: Execution::default(),
            options: CrossValidateOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub vertices: usize,
    pub edges: usize,
    pub lengths: Vec<usize>,
    pub components_checked: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub graph: serde_json::Value,
    pub mismatch: Mismatch,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub format_version: u32,
    pub seed: u64,
    pub max_vertices: usize,
    pub trials: Vec<TrialOutcome>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl CheckReport {
    pub fn first_failure(&self) -> Option<&Counterexample> {
        self.trials.iter().find_map(|t| t.counterexample.as_ref())
    }
}

/// The graph used for trial `i`; a pure function of `(seed, i, max_vertices)`.
pub fn trial_graph(seed: u64, trial: usize, max_vertices: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let n = rng.random_range(1..=max_vertices.max(1));
    let p = rng.random_range(0.1..0.7);
    random_connected(n, p, &mut rng)
}

pub fn run_check(config: &CheckConfig) -> Result<CheckReport> {
    if let Some(&l) = config.lengths.iter().find(|&&l| l < 3) {
        return Err(Error::LengthTooSmall(l));
    }
    let indices: Vec<usize> = (0..config.trials).collect();
    let trials = config
        .exec
        .map(&indices, |&i| run_trial(config, i))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let passed = trials.iter().all(|t| t.passed);
    Ok(CheckReport {
        format_version: FORMAT_VERSION,
        seed: config.seed,
        max_vertices: config.max_vertices,
        passed,
        warning: (config.trials == 0).then(|| "no trials were run; the check passes vacuously".to_string()),
        trials,
    })
}

fn run_trial(config: &CheckConfig, trial: usize) -> Result<TrialOutcome> {
    let g = trial_graph(config.seed, trial, config.max_vertices);
    let mut components_checked = 0;
    let mut counterexample = None;
    for &l in &config.lengths {
        // Per-component work is already parallel at the trial level.
        let cv = cross_validate_with(&g, l, l, Execution::Sequential, config.options)?;
        components_checked += cv.components;
        if let Some(mismatch) = cv.failure {
            counterexample = Some(Counterexample {
                graph: serde_json::from_str(&g.to_json()).expect("graph json round-trips"),
                mismatch,
            });
            break;
        }
    }
    Ok(TrialOutcome {
        trial,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        lengths: config.lengths.clone(),
        components_checked,
        passed: counterexample.is_none(),
        counterexample,
    })
}
