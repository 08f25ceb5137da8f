//! Analytic and semi-analytic degree limit laws, extreme-value CDFs, and the
//! limiting indicator covariances, together with finite-sample validators
//! for each of them.

pub mod covariance;
pub mod fujihara;
pub mod gumbel;
pub mod quad;

use thiserror::Error;

use crate::stats::{EmpiricalPmf, Pmf};

pub use covariance::{
    erlang2_tail, finite_p_extreme_check, finite_p_extreme_grid, finite_p_pair_cov,
    limit_cov_c0, limit_cov_c0_direct2d, limit_cov_cd, threshold_decomposition_gap,
    MonteCarloEstimate,
};
pub use fujihara::{
    fujihara_gamma_identity, fujihara_partial_sum, fujihara_pmf, fujihara_tail_mass,
    fujihara_tail_ratio, poisson_cdf_unit, poisson_pmf,
};
pub use gumbel::{gumbel_gs_cdf, joint_js_cdf, sample_lambda_pair, ExtremePairSample};
pub use quad::{QuadratureError, QuadratureResult};

/// Errors from the limit-law evaluators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LimitError {
    #[error("parameter must be positive")]
    NonPositiveParameter,
    #[error("degree must be at least {minimum}")]
    DegreeTooSmall { minimum: u32 },
    #[error("order-statistic rank {s} exceeds sample size {p}")]
    RankExceedsSample { p: u64, s: u32 },
    #[error("quadrature {quadrature} disagrees with closed form {closed_form}")]
    CrossCheckFailed { quadrature: f64, closed_form: f64 },
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("law support is too wide to materialize as a finite table")]
    Unmaterializable,
}

/// Which analytic degree law a [`LimitLaw`] represents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitLawKind {
    /// Poisson with mean `c`; `c = 0` degenerates to a point mass at zero.
    Poisson { c: f64 },
    /// The heavy-tailed conditionally Poisson law with the `d^-2` tail.
    Fujihara,
}

/// An analytic degree pmf with explicit truncation bookkeeping: probabilities
/// are retained up to `truncation` and the residual `tail_mass` beyond it is
/// tracked analytically, staying below 1e-12.
///
/// The Poisson table is materialized; the heavy-tailed law keeps an O(1)
/// evaluator instead, because pushing its `d^-2` tail under 1e-12 puts the
/// truncation point near 2e12.
#[derive(Debug, Clone)]
pub struct LimitLaw {
    kind: LimitLawKind,
    truncation: u64,
    tail_mass: f64,
    table: Vec<f64>,
}

const TAIL_TARGET: f64 = 1e-12;

impl LimitLaw {
    /// Poisson law with mean `c >= 0`, truncated where the tail drops below
    /// 1e-12.
    pub fn poisson(c: f64) -> Result<Self, LimitError> {
        if c.is_nan() || c < 0.0 || !c.is_finite() {
            return Err(LimitError::NonPositiveParameter);
        }
        if c == 0.0 {
            return Ok(LimitLaw {
                kind: LimitLawKind::Poisson { c },
                truncation: 0,
                tail_mass: 0.0,
                table: vec![1.0],
            });
        }
        // run the term recurrence well past the point where terms stop mattering
        let mut terms = Vec::new();
        let mut term = (-c).exp();
        let mut d = 0u64;
        loop {
            terms.push(term);
            if term < 1e-25 && (d as f64) > c + 5.0 {
                break;
            }
            d += 1;
            term *= c / d as f64;
        }
        // smallest truncation whose analytic tail is under target
        let mut tail = 0.0;
        let mut cut = terms.len() - 1;
        while cut > 0 && tail + terms[cut] < TAIL_TARGET {
            tail += terms[cut];
            cut -= 1;
        }
        terms.truncate(cut + 1);
        Ok(LimitLaw {
            kind: LimitLawKind::Poisson { c },
            truncation: cut as u64,
            tail_mass: tail,
            table: terms,
        })
    }

    /// The heavy-tailed law, truncated at 2e12 where its `1/d` tail falls
    /// below 1e-12.
    pub fn fujihara() -> Self {
        let truncation = 2_000_000_000_000u64;
        LimitLaw {
            kind: LimitLawKind::Fujihara,
            truncation,
            tail_mass: fujihara::fujihara_tail_mass(truncation),
            table: Vec::new(),
        }
    }

    pub fn kind(&self) -> LimitLawKind {
        self.kind
    }

    /// Largest degree retained by the truncation.
    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    /// Residual probability beyond the truncation point.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    /// Probability of degree `d` (zero beyond the truncation).
    pub fn pmf(&self, d: u64) -> f64 {
        if d > self.truncation {
            return 0.0;
        }
        match self.kind {
            LimitLawKind::Poisson { .. } => self.table[d as usize],
            LimitLawKind::Fujihara => {
                if d <= 60 {
                    fujihara::fujihara_pmf_exact(d as u32)
                } else {
                    let df = d as f64;
                    1.0 / (df * (df - 1.0))
                }
            }
        }
    }

    /// Mass retained at degrees `<= dmax` (capped at the truncation).
    pub fn partial_sum(&self, dmax: u64) -> f64 {
        let cap = dmax.min(self.truncation);
        match self.kind {
            LimitLawKind::Poisson { .. } => self.table[..=cap as usize].iter().sum(),
            LimitLawKind::Fujihara => fujihara::fujihara_partial_sum(cap),
        }
    }

    /// Total retained mass; `retained_mass() + tail_mass()` is 1 within
    /// 1e-12.
    pub fn retained_mass(&self) -> f64 {
        self.partial_sum(self.truncation)
    }

    /// Materializes the law as a finite pmf for the total-variation routine.
    /// Only compactly truncated laws support this; the heavy-tailed law
    /// reports [`LimitError::Unmaterializable`] and goes through
    /// [`LimitLaw::tv_to_empirical`] instead.
    pub fn to_pmf(&self) -> Result<Pmf, LimitError> {
        match self.kind {
            LimitLawKind::Poisson { .. } => Ok(Pmf::from_probs(
                self.table
                    .iter()
                    .enumerate()
                    .map(|(d, &p)| (d as u32, p)),
            )),
            LimitLawKind::Fujihara => Err(LimitError::Unmaterializable),
        }
    }

    /// Total variation distance to an empirical pmf, with the law's mass
    /// beyond the empirical support handled analytically.
    pub fn tv_to_empirical(&self, emp: &EmpiricalPmf) -> f64 {
        let max_emp = u64::from(emp.max_degree().unwrap_or(0));
        let mut acc = 0.0;
        for d in 0..=max_emp {
            acc += (emp.prob(d as u32) - self.pmf(d)).abs();
        }
        let beyond = (self.retained_mass() - self.partial_sum(max_emp)).max(0.0);
        0.5 * (acc + beyond)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{gen_er_degrees, gen_threshold_degrees};
    use crate::rng::{make_stream, FitnessLaw};
    use crate::stats::{empirical_pmf, tv_distance};

    #[test]
    fn poisson_law_bookkeeping() {
        let law = LimitLaw::poisson(1.0).unwrap();
        assert!(law.tail_mass() < 1e-12);
        assert!((law.retained_mass() + law.tail_mass() - 1.0).abs() < 1e-12);
        assert!((law.pmf(0) - (-1.0f64).exp()).abs() < 1e-15);
        assert!(law.pmf(law.truncation() + 1) == 0.0);
    }

    #[test]
    fn degenerate_poisson_is_a_point_mass() {
        let law = LimitLaw::poisson(0.0).unwrap();
        assert_eq!(law.truncation(), 0);
        assert_eq!(law.pmf(0), 1.0);
        // an edgeless graph has empirical pmf equal to the point mass
        let mut stream = make_stream(1, 0);
        let sample = gen_er_degrees(40, 0.0, &mut stream).unwrap();
        assert_eq!(law.tv_to_empirical(&empirical_pmf(&sample)), 0.0);
    }

    #[test]
    fn fujihara_law_bookkeeping() {
        let law = LimitLaw::fujihara();
        assert!(law.tail_mass() < 1e-12, "tail = {}", law.tail_mass());
        assert!((law.retained_mass() + law.tail_mass() - 1.0).abs() < 1e-12);
        assert!(law.to_pmf().is_err());
    }

    #[test]
    fn tv_via_law_matches_materialized_table() {
        let law = LimitLaw::poisson(1.0).unwrap();
        let mut stream = make_stream(9, 0);
        let sample = gen_er_degrees(5000, 1.0 / 5000.0, &mut stream).unwrap();
        let emp = empirical_pmf(&sample);
        let direct = law.tv_to_empirical(&emp);
        let via_pmf = tv_distance(&emp.to_pmf(), &law.to_pmf().unwrap()).unwrap();
        assert!((direct - via_pmf).abs() < 1e-9, "{direct} vs {via_pmf}");
    }

    #[test]
    fn threshold_sample_has_moderate_tv_to_fujihara() {
        // smoke check that the analytic-tail path is sane on a real sample
        let law = LimitLaw::fujihara();
        let mut stream = make_stream(9, 1);
        let n = 20_000;
        let sample = gen_threshold_degrees(
            n,
            (n as f64).ln(),
            FitnessLaw::exponential(1.0).unwrap(),
            &mut stream,
        )
        .unwrap();
        let tv = law.tv_to_empirical(&empirical_pmf(&sample));
        assert!((0.0..=1.0).contains(&tv));
        // a single realization is noisy but nowhere near disjoint support
        assert!(tv < 0.8, "tv = {tv}");
    }

    #[test]
    fn presubstitution_integrand_is_rate_free() {
        // The defining integral over the fitness variable depends on the
        // rate only through the substitution t = exp(lambda x); evaluating
        // it directly for several rates must reproduce the canonical values.
        for d in [0u32, 1, 3] {
            let want = fujihara::fujihara_pmf_exact(d);
            for lambda in [0.5, 1.0, 2.0] {
                let lnfac = fujihara::ln_factorial(u64::from(d));
                let integrand = move |x: f64| {
                    let t = (lambda * x).exp();
                    (f64::from(d) * lambda * x - lnfac - t - lambda * x).exp() * lambda
                };
                let hi = (60.0f64).ln() / lambda;
                let got = quad::integrate(integrand, 0.0, hi, 1e-12).unwrap().value;
                assert!(
                    (got - want).abs() < 1e-9,
                    "d = {d} lambda = {lambda}: {got} vs {want}"
                );
            }
        }
    }
}
