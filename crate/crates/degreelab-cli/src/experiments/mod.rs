//! Experiment runners. Each experiment derives per-stage master seeds from
//! the user seed, emits CSV tables plus a manifest into a timestamp-free
//! directory, and reports named verdicts whose inputs are all present in the
//! emitted files.

mod er_convergence;
mod limit_validation;
mod pa_general_setting;
mod threshold_counterexample;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::config::{ExperimentConfig, ExperimentKind, HarnessError};
use crate::manifest::{FileDigest, RunManifest, Verdict};

/// Collects emitted files, verdicts, and stage timings for one run.
pub struct ExperimentContext {
    dir: PathBuf,
    files: Vec<FileDigest>,
    verdicts: Vec<Verdict>,
    timings: BTreeMap<String, f64>,
}

impl ExperimentContext {
    fn create(dir: PathBuf) -> Result<Self, HarnessError> {
        fs::create_dir_all(&dir)?;
        Ok(ExperimentContext {
            dir,
            files: Vec::new(),
            verdicts: Vec::new(),
            timings: BTreeMap::new(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Writes one output file and records its digest.
    pub fn emit(&mut self, name: &str, content: &str) -> Result<(), HarnessError> {
        fs::write(self.dir.join(name), content.as_bytes())?;
        self.files.push(FileDigest::of(name, content.as_bytes()));
        Ok(())
    }

    pub fn verdict(&mut self, name: &str, passed: bool, detail: String) {
        self.verdicts.push(Verdict {
            name: name.to_string(),
            passed,
            detail,
        });
    }

    /// Runs a stage and records its wall time under `stage`.
    pub fn stage<T>(&mut self, stage: &str, f: impl FnOnce(&mut Self) -> T) -> T {
        let start = Instant::now();
        let out = f(self);
        self.timings
            .insert(stage.to_string(), start.elapsed().as_secs_f64());
        out
    }
}

/// Short hex prefix of the SHA-256 of the canonical config echo plus seed;
/// names the output directory without timestamps.
fn run_name(config_echo: &BTreeMap<String, String>, seed: u64) -> String {
    let mut canon = String::new();
    for (k, v) in config_echo {
        canon.push_str(k);
        canon.push('=');
        canon.push_str(v);
        canon.push('\n');
    }
    canon.push_str(&format!("master_seed={seed}\n"));
    let digest = FileDigest::of("", canon.as_bytes()).sha256;
    format!("cfg-{}", &digest[..8])
}

/// Runs one experiment and writes `<out_root>/<experiment>/<cfg-hash>/`
/// with its CSVs and `manifest.json`. Returns the manifest and the run
/// directory.
pub fn run_experiment(
    cfg: &ExperimentConfig,
    seed: u64,
    out_root: &Path,
    threads: usize,
) -> Result<(RunManifest, PathBuf), HarnessError> {
    let echo = cfg.echo();
    let dir = out_root
        .join(cfg.experiment.name())
        .join(run_name(&echo, seed));
    let mut ctx = ExperimentContext::create(dir)?;

    let body = |ctx: &mut ExperimentContext| -> Result<(), HarnessError> {
        match cfg.experiment {
            ExperimentKind::ErConvergence => er_convergence::run(cfg, seed, ctx),
            ExperimentKind::ThresholdCounterexample => {
                threshold_counterexample::run(cfg, seed, ctx)
            }
            ExperimentKind::LimitValidation => limit_validation::run(cfg, seed, ctx),
            ExperimentKind::PaGeneralSetting => pa_general_setting::run(cfg, seed, ctx),
        }
    };
    if threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| HarnessError::Invalid(format!("thread pool: {e}")))?;
        pool.install(|| body(&mut ctx))?;
    } else {
        body(&mut ctx)?;
    }

    let passed = ctx.verdicts.iter().all(|v| v.passed);
    let manifest = RunManifest {
        experiment: cfg.experiment.name().to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        master_seed: seed,
        threads,
        config: echo,
        verdicts: ctx.verdicts.clone(),
        passed,
        timing_seconds: ctx.timings.clone(),
        files: ctx.files.clone(),
    };
    fs::write(ctx.dir.join("manifest.json"), manifest.to_json())?;
    let dir = ctx.dir.clone();
    Ok((manifest, dir))
}

/// Sample median of a non-empty slice.
pub(crate) fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        0.5 * (values[mid - 1] + values[mid])
    }
}
