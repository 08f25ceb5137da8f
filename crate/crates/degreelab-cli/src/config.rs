//! Plain-text experiment configuration: `key = value` lines, `#` comments,
//! an explicit `experiment` key, and no unknown keys. Every verdict
//! threshold lives here with a default matching the acceptance suite, so a
//! config file fully determines an experiment run.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("config line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("config line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("config does not set `experiment`")]
    MissingExperiment,
    #[error("experiment `{cli}` requested but config declares `{config}`")]
    ExperimentMismatch { cli: String, config: String },
    #[error("no master seed: pass --seed or set `master_seed` in the config")]
    MissingSeed,
    #[error("config invariant: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Stats(#[from] degreelab::stats::StatsError),
    #[error(transparent)]
    Model(#[from] degreelab::models::ModelError),
    #[error(transparent)]
    Limit(#[from] degreelab::limits::LimitError),
}

/// The four experiments the harness ships.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    ErConvergence,
    ThresholdCounterexample,
    LimitValidation,
    PaGeneralSetting,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::ErConvergence => "er-convergence",
            ExperimentKind::ThresholdCounterexample => "threshold-counterexample",
            ExperimentKind::LimitValidation => "limit-validation",
            ExperimentKind::PaGeneralSetting => "pa-general-setting",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "er-convergence" => Some(ExperimentKind::ErConvergence),
            "threshold-counterexample" => Some(ExperimentKind::ThresholdCounterexample),
            "limit-validation" => Some(ExperimentKind::LimitValidation),
            "pa-general-setting" => Some(ExperimentKind::PaGeneralSetting),
            _ => None,
        }
    }
}

/// Fully resolved experiment parameters. Defaults depend on the experiment
/// and mirror the acceptance suite; any key may be overridden in the file.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    /// Graph sizes the experiment sweeps.
    pub n_values: Vec<usize>,
    /// Poisson scale constant c (Erdos-Renyi and the ER control).
    pub c: f64,
    /// Exponential fitness rate (threshold model).
    pub lambda: f64,
    /// Attachment count (preferential attachment).
    pub m: u32,
    /// Ensemble run count R.
    pub runs: usize,
    /// Degrees of interest.
    pub degrees: Vec<u32>,
    /// Optional master seed; the CLI --seed flag overrides it.
    pub master_seed: Option<u64>,
    /// Relative tolerance for analytic quadrature targets.
    pub rel_tol: f64,

    // verdict thresholds and stage sizes
    pub tv_threshold: f64,
    pub seeds_per_n: u64,
    pub cov_n: usize,
    pub cov_runs: usize,
    pub var_ceiling: f64,
    pub slope_min: f64,
    pub runavg_n: usize,
    pub runavg_runs: usize,
    pub run_avg_tol: f64,
    pub cd_draws: u64,
    pub cd_d: u32,
    pub extreme_p: u64,
    pub extreme_draws: u64,
    pub joint_draws: u64,
    pub pair_p: u64,
    pub pair_replicates: u64,
    pub decomp_n: usize,
    pub decomp_replicates: u64,
    pub tail_dmin: u32,
    pub tail_dmax: u32,
    pub tail_slope: f64,
    pub tail_slope_tol: f64,
}

impl ExperimentConfig {
    /// Acceptance-matched defaults for one experiment.
    pub fn default_for(experiment: ExperimentKind) -> Self {
        let mut cfg = ExperimentConfig {
            experiment,
            n_values: vec![100_000],
            c: 1.0,
            lambda: 1.0,
            m: 2,
            runs: 200,
            degrees: vec![0],
            master_seed: None,
            rel_tol: 1e-10,
            tv_threshold: 0.01,
            seeds_per_n: 20,
            cov_n: 1000,
            cov_runs: 10_000,
            var_ceiling: 1e-3,
            slope_min: -0.1,
            runavg_n: 10_000,
            runavg_runs: 100,
            run_avg_tol: 0.01,
            cd_draws: 1_000_000,
            cd_d: 1,
            extreme_p: 100_000,
            extreme_draws: 100_000,
            joint_draws: 1_000_000,
            pair_p: 100_000,
            pair_replicates: 100_000,
            decomp_n: 10_000,
            decomp_replicates: 200_000,
            tail_dmin: 5,
            tail_dmax: 50,
            tail_slope: -3.0,
            tail_slope_tol: 0.3,
        };
        match experiment {
            ExperimentKind::ErConvergence => {}
            ExperimentKind::ThresholdCounterexample => {
                cfg.n_values = vec![1000, 10_000, 30_000];
                cfg.degrees = vec![0, 1];
                cfg.cov_n = 10_000;
            }
            ExperimentKind::LimitValidation => {
                cfg.n_values = vec![10_000];
                cfg.degrees = vec![0, 1];
            }
            ExperimentKind::PaGeneralSetting => {
                cfg.degrees = vec![2];
                cfg.runs = 5;
                cfg.cov_runs = 800;
            }
        }
        cfg
    }

    /// Parses a config text. The `experiment` key selects the defaults;
    /// every other key overrides one field. Unknown and duplicate keys are
    /// errors.
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let mut entries: Vec<(usize, String, String)> = Vec::new();
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(HarnessError::Parse {
                    line: line_no,
                    message: format!("expected `key = value`, got `{line}`"),
                });
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if value.is_empty() {
                return Err(HarnessError::Parse {
                    line: line_no,
                    message: format!("key `{key}` has an empty value"),
                });
            }
            if seen.insert(key.clone(), line_no).is_some() {
                return Err(HarnessError::DuplicateKey { line: line_no, key });
            }
            entries.push((line_no, key, value));
        }

        let experiment = entries
            .iter()
            .find(|(_, k, _)| k == "experiment")
            .map(|(line, _, v)| {
                ExperimentKind::from_name(v).ok_or_else(|| HarnessError::Parse {
                    line: *line,
                    message: format!("unknown experiment `{v}`"),
                })
            })
            .transpose()?
            .ok_or(HarnessError::MissingExperiment)?;

        let mut cfg = ExperimentConfig::default_for(experiment);
        for (line, key, value) in &entries {
            cfg.apply(*line, key, value)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply(&mut self, line: usize, key: &str, value: &str) -> Result<(), HarnessError> {
        fn num<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T, HarnessError> {
            v.parse().map_err(|_| HarnessError::Parse {
                line,
                message: format!("cannot parse `{v}` for key `{key}`"),
            })
        }
        fn list<T: std::str::FromStr>(
            line: usize,
            key: &str,
            v: &str,
        ) -> Result<Vec<T>, HarnessError> {
            v.split(',')
                .map(|item| num(line, key, item.trim()))
                .collect()
        }
        match key {
            "experiment" => {} // consumed above
            "n" => self.n_values = list(line, key, value)?,
            "c" => self.c = num(line, key, value)?,
            "lambda" => self.lambda = num(line, key, value)?,
            "m" => self.m = num(line, key, value)?,
            "runs" => self.runs = num(line, key, value)?,
            "degrees" => self.degrees = list(line, key, value)?,
            "master_seed" => self.master_seed = Some(num(line, key, value)?),
            "rel_tol" => self.rel_tol = num(line, key, value)?,
            "tv_threshold" => self.tv_threshold = num(line, key, value)?,
            "seeds_per_n" => self.seeds_per_n = num(line, key, value)?,
            "cov_n" => self.cov_n = num(line, key, value)?,
            "cov_runs" => self.cov_runs = num(line, key, value)?,
            "var_ceiling" => self.var_ceiling = num(line, key, value)?,
            "slope_min" => self.slope_min = num(line, key, value)?,
            "runavg_n" => self.runavg_n = num(line, key, value)?,
            "runavg_runs" => self.runavg_runs = num(line, key, value)?,
            "run_avg_tol" => self.run_avg_tol = num(line, key, value)?,
            "cd_draws" => self.cd_draws = num(line, key, value)?,
            "cd_d" => self.cd_d = num(line, key, value)?,
            "extreme_p" => self.extreme_p = num(line, key, value)?,
            "extreme_draws" => self.extreme_draws = num(line, key, value)?,
            "joint_draws" => self.joint_draws = num(line, key, value)?,
            "pair_p" => self.pair_p = num(line, key, value)?,
            "pair_replicates" => self.pair_replicates = num(line, key, value)?,
            "decomp_n" => self.decomp_n = num(line, key, value)?,
            "decomp_replicates" => self.decomp_replicates = num(line, key, value)?,
            "tail_dmin" => self.tail_dmin = num(line, key, value)?,
            "tail_dmax" => self.tail_dmax = num(line, key, value)?,
            "tail_slope" => self.tail_slope = num(line, key, value)?,
            "tail_slope_tol" => self.tail_slope_tol = num(line, key, value)?,
            _ => {
                return Err(HarnessError::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
        }
        Ok(())
    }

    fn validate(&self) -> Result<(), HarnessError> {
        if self.n_values.is_empty() || self.n_values.iter().any(|&n| n < 2) {
            return Err(HarnessError::Invalid(
                "`n` must list node counts of at least 2".into(),
            ));
        }
        if self.runs < 2 || self.runavg_runs < 2 || self.cov_runs < 2 {
            return Err(HarnessError::Invalid("run counts must be at least 2".into()));
        }
        if self.degrees.is_empty() {
            return Err(HarnessError::Invalid("`degrees` must be non-empty".into()));
        }
        if self.lambda.is_nan() || self.lambda <= 0.0 || self.c.is_nan() || self.c < 0.0 {
            return Err(HarnessError::Invalid(
                "`lambda` must be positive and `c` non-negative".into(),
            ));
        }
        if self.rel_tol.is_nan() || self.rel_tol <= 0.0 {
            return Err(HarnessError::Invalid("`rel_tol` must be positive".into()));
        }
        if self.tail_dmin >= self.tail_dmax {
            return Err(HarnessError::Invalid(
                "`tail_dmin` must be below `tail_dmax`".into(),
            ));
        }
        Ok(())
    }

    /// Canonical echo of every effective field, for the manifest.
    pub fn echo(&self) -> BTreeMap<String, String> {
        fn join<T: std::fmt::Display>(v: &[T]) -> String {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
        let mut map = BTreeMap::new();
        map.insert("experiment".into(), self.experiment.name().to_string());
        map.insert("n".into(), join(&self.n_values));
        map.insert("c".into(), self.c.to_string());
        map.insert("lambda".into(), self.lambda.to_string());
        map.insert("m".into(), self.m.to_string());
        map.insert("runs".into(), self.runs.to_string());
        map.insert("degrees".into(), join(&self.degrees));
        map.insert("rel_tol".into(), self.rel_tol.to_string());
        map.insert("tv_threshold".into(), self.tv_threshold.to_string());
        map.insert("seeds_per_n".into(), self.seeds_per_n.to_string());
        map.insert("cov_n".into(), self.cov_n.to_string());
        map.insert("cov_runs".into(), self.cov_runs.to_string());
        map.insert("var_ceiling".into(), self.var_ceiling.to_string());
        map.insert("slope_min".into(), self.slope_min.to_string());
        map.insert("runavg_n".into(), self.runavg_n.to_string());
        map.insert("runavg_runs".into(), self.runavg_runs.to_string());
        map.insert("run_avg_tol".into(), self.run_avg_tol.to_string());
        map.insert("cd_draws".into(), self.cd_draws.to_string());
        map.insert("cd_d".into(), self.cd_d.to_string());
        map.insert("extreme_p".into(), self.extreme_p.to_string());
        map.insert("extreme_draws".into(), self.extreme_draws.to_string());
        map.insert("joint_draws".into(), self.joint_draws.to_string());
        map.insert("pair_p".into(), self.pair_p.to_string());
        map.insert("pair_replicates".into(), self.pair_replicates.to_string());
        map.insert("decomp_n".into(), self.decomp_n.to_string());
        map.insert(
            "decomp_replicates".into(),
            self.decomp_replicates.to_string(),
        );
        map.insert("tail_dmin".into(), self.tail_dmin.to_string());
        map.insert("tail_dmax".into(), self.tail_dmax.to_string());
        map.insert("tail_slope".into(), self.tail_slope.to_string());
        map.insert("tail_slope_tol".into(), self.tail_slope_tol.to_string());
        map
    }
}
