//! CSV emission for pmfs, ensemble moments, and covariance estimates.
//! Plain `Display` formatting keeps the bytes identical across reruns.

use std::io::{self, Write};

use super::{EmpiricalPmf, EnsembleStats, PairCovEstimate};

/// Columns: `d,count,prob`.
pub fn write_pmf_csv<W: Write>(mut w: W, pmf: &EmpiricalPmf) -> io::Result<()> {
    writeln!(w, "d,count,prob")?;
    for (&d, &count) in pmf.counts() {
        writeln!(w, "{},{},{}", d, count, count as f64 / pmf.n() as f64)?;
    }
    Ok(())
}

/// Columns: `d,mean,var,stderr,run_avg` (stderr is the standard error of the
/// mean; the variance's own standard error is reported by experiment tables
/// that need it). Rows cover every observed degree plus the requested ones.
pub fn write_ensemble_csv<W: Write>(mut w: W, stats: &EnsembleStats) -> io::Result<()> {
    writeln!(w, "d,mean,var,stderr,run_avg")?;
    for d in stats.support() {
        let m = stats.moments(d);
        writeln!(
            w,
            "{},{},{},{},{}",
            d, m.mean, m.variance, m.mean_stderr, m.run_avg
        )?;
    }
    Ok(())
}

/// Columns: `d,cov,stderr,R,mode`.
pub fn write_cov_csv<W: Write>(mut w: W, estimates: &[PairCovEstimate]) -> io::Result<()> {
    writeln!(w, "d,cov,stderr,R,mode")?;
    for est in estimates {
        writeln!(
            w,
            "{},{},{},{},{}",
            est.d,
            est.estimate,
            est.standard_error,
            est.runs,
            est.mode.as_str()
        )?;
    }
    Ok(())
}
