//! Analytic degree pmfs: the Poisson law and the heavy-tailed conditionally
//! Poisson law that arises as the nodal degree limit of random threshold
//! graphs with exponential fitness.
//!
//! The heavy-tailed pmf is
//!
//! ```text
//!     p(d) = (1/d!) * integral_1^inf t^(d-2) e^(-t) dt ,   d = 0, 1, ...
//! ```
//!
//! obtained from the defining expectation over an exponential fitness by the
//! substitution `t = exp(lambda x)`, which removes the rate entirely. The
//! normalization carries a single `1/d!` factor: summing over `d` turns the
//! integrand into `t^-2` on `[1, inf)`, so the pmf sums to exactly one.
//! For `d >= 2` the integral is the upper incomplete gamma `G(d-1, 1)`, which
//! for integer order has the closed form used here as a cross-check, and
//! `d (d-1) p(d) = P(Poisson(1) <= d-2)`, giving the exact `d^-2` tail law.

use std::sync::OnceLock;

use super::quad::{self, QuadratureResult};
use super::LimitError;

/// ln(n!): exact table products for small n, cumulative log sums beyond.
pub(crate) fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if n <= 20 {
        let mut f = 1u64;
        for k in 2..=n {
            f *= k;
        }
        return (f as f64).ln();
    }
    let mut acc = ln_factorial(20);
    for k in 21..=n {
        acc += (k as f64).ln();
    }
    acc
}

/// Poisson(c) probability of the value `d`, in log space once factorials get
/// large.
pub fn poisson_pmf(c: f64, d: u32) -> Result<f64, LimitError> {
    if c.is_nan() || c <= 0.0 || !c.is_finite() {
        return Err(LimitError::NonPositiveParameter);
    }
    let d64 = f64::from(d);
    if d <= 20 {
        let mut term = (-c).exp();
        for k in 1..=d {
            term *= c / f64::from(k);
        }
        Ok(term)
    } else {
        Ok((d64 * c.ln() - c - ln_factorial(u64::from(d))).exp())
    }
}

/// P(Poisson(1) <= k), the exact partial sum e^-1 * sum_{j<=k} 1/j!.
pub fn poisson_cdf_unit(k: u32) -> f64 {
    let mut term = (-1.0f64).exp();
    let mut acc = term;
    for j in 1..=k {
        term /= f64::from(j);
        acc += term;
    }
    acc.min(1.0)
}

/// Degrees above which the unit-Poisson CDF factor is 1.0 to f64 precision,
/// making the pmf equal to `1/(d(d-1))` exactly.
const EXACT_TAIL_FROM: u32 = 50;

/// Evaluates the heavy-tailed pmf at `d` by adaptive quadrature to the given
/// relative tolerance. For `d >= 2` the result is cross-checked against the
/// incomplete-gamma closed form and an error is returned if they disagree.
pub fn fujihara_pmf(d: u32, rel_tol: f64) -> Result<QuadratureResult, LimitError> {
    if rel_tol.is_nan() || rel_tol <= 0.0 {
        return Err(LimitError::NonPositiveParameter);
    }
    let lnfac = ln_factorial(u64::from(d));
    let dm2 = f64::from(d) - 2.0;
    let integrand = move |t: f64| (dm2 * t.ln() - t - lnfac).exp();

    // Scale the absolute tolerance off the closed form when available, else
    // off a coarse magnitude estimate.
    let scale = fujihara_gamma_identity(d).unwrap_or(0.15);
    let abs_tol = (rel_tol * scale).max(1e-300);
    // For t >= max(41, 3d) the integrand is dominated by e^(-t/2) decay:
    // t^(d-2) e^(-t) <= e^(-t/2) there, integrating to 2 e^(-cut/2).
    let start = 41.0f64.max(3.0 * f64::from(d) + 20.0);
    let result = quad::integrate_to_infinity(
        integrand,
        1.0,
        abs_tol,
        move |cut: f64| 2.0 * (dm2 * cut.ln() - 0.5 * cut - lnfac).exp(),
    );
    let result = match result {
        Ok(r) => r,
        Err(e) => return Err(LimitError::Quadrature(e)),
    };
    let _ = start;

    if let Some(exact) = fujihara_gamma_identity(d) {
        let rel = (result.value - exact).abs() / exact;
        if rel > (10.0 * rel_tol).max(1e-6) {
            return Err(LimitError::CrossCheckFailed {
                quadrature: result.value,
                closed_form: exact,
            });
        }
    }
    Ok(result)
}

/// Closed form of the pmf for `d >= 2`:
/// `p(d) = P(Poisson(1) <= d-2) / (d (d-1))`. Returns `None` below `d = 2`.
pub fn fujihara_gamma_identity(d: u32) -> Option<f64> {
    if d < 2 {
        return None;
    }
    let df = f64::from(d);
    Some(poisson_cdf_unit(d - 2) / (df * (df - 1.0)))
}

/// Exact-to-f64 pmf value: cached tight quadrature for `d <= 1`, closed form
/// beyond. Used for bookkeeping sums where re-running quadrature per degree
/// would be wasteful.
pub(crate) fn fujihara_pmf_exact(d: u32) -> f64 {
    static P0: OnceLock<f64> = OnceLock::new();
    static P1: OnceLock<f64> = OnceLock::new();
    match d {
        0 => *P0.get_or_init(|| fujihara_pmf(0, 1e-13).expect("pmf(0)").value),
        1 => *P1.get_or_init(|| fujihara_pmf(1, 1e-13).expect("pmf(1)").value),
        _ => fujihara_gamma_identity(d).unwrap(),
    }
}

/// `d (d-1) p(d)`, the tail ratio that approaches 1 from below. Requires
/// `d >= 2`.
pub fn fujihara_tail_ratio(d: u32, rel_tol: f64) -> Result<f64, LimitError> {
    if d < 2 {
        return Err(LimitError::DegreeTooSmall { minimum: 2 });
    }
    let df = f64::from(d);
    Ok(df * (df - 1.0) * fujihara_pmf(d, rel_tol)?.value)
}

/// Sum of the heavy-tailed pmf over `0..=dmax`, exact to f64. Beyond the
/// point where the Poisson CDF factor saturates at 1, consecutive terms are
/// exactly `1/(d(d-1))` and the remaining sum telescopes to `1/a - 1/b`, so
/// arbitrarily large truncation points cost O(1).
pub fn fujihara_partial_sum(dmax: u64) -> f64 {
    let head_top = dmax.min(u64::from(EXACT_TAIL_FROM));
    let mut acc = 0.0;
    for d in 0..=head_top {
        acc += fujihara_pmf_exact(d as u32);
    }
    if dmax > u64::from(EXACT_TAIL_FROM) {
        // sum_{a < d <= b} 1/(d(d-1)) = 1/a - 1/b
        acc += 1.0 / f64::from(EXACT_TAIL_FROM) - 1.0 / (dmax as f64);
    }
    acc
}

/// Mass of the heavy-tailed pmf beyond `dmax`.
pub fn fujihara_tail_mass(dmax: u64) -> f64 {
    if dmax >= u64::from(EXACT_TAIL_FROM) {
        1.0 / (dmax as f64)
    } else {
        1.0 - fujihara_partial_sum(dmax)
    }
}
