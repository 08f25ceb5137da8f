//! Deterministic, splittable random streams and the elementary samplers the
//! rest of the crate is built on.
//!
//! All randomness flows through [`RandomStream`] values addressed by a
//! `(master_seed, stream_id)` pair. Replaying the same pair bit-reproduces
//! every sampler output, and distinct stream ids get distinct SplitMix
//! increments, so handing one independent stream to each realization is cheap.
//! Nothing in the crate may touch a platform RNG or the wall clock.

use thiserror::Error;

/// Weyl-sequence increment used by SplitMix64.
const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output mixer (Stafford variant 13).
#[inline]
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a per-stream odd increment the way `SplittableRandom` does: a
/// MurmurHash3 finalizer, forced odd, with a minimum of bit transitions.
#[inline]
fn mix_gamma(mut z: u64) -> u64 {
    z = (z ^ (z >> 33)).wrapping_mul(0xFF51_AFD7_ED55_8CCD);
    z = (z ^ (z >> 33)).wrapping_mul(0xC4CE_B9FE_1A85_EC53);
    z = (z ^ (z >> 33)) | 1;
    if (z ^ (z >> 1)).count_ones() < 24 {
        z ^ 0xAAAA_AAAA_AAAA_AAAA
    } else {
        z
    }
}

/// Errors from the sampler preconditions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RngError {
    /// Exponential rates must be strictly positive.
    #[error("exponential rate must be positive")]
    NonPositiveRate,
    /// Integer gamma shapes start at one.
    #[error("gamma shape must be at least 1")]
    ZeroShape,
}

/// A reproducible pseudo-random stream addressed by `(master_seed, stream_id)`.
///
/// Two streams built from the same pair produce identical sequences; streams
/// with different ids run on different SplitMix increments and are
/// statistically independent for this crate's purposes. A stream is
/// single-owner: create it, optionally move it to another thread, never share
/// it concurrently.
#[derive(Debug, Clone)]
pub struct RandomStream {
    state: u64,
    gamma: u64,
    master_seed: u64,
    stream_id: u64,
}

impl RandomStream {
    /// Seed of the ensemble this stream belongs to.
    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    /// Index of this stream within the ensemble.
    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// `(master_seed, stream_id)` pair recorded into generated samples.
    pub fn seed_info(&self) -> (u64, u64) {
        (self.master_seed, self.stream_id)
    }

    /// Next raw 64-bit word.
    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(self.gamma);
        mix64(self.state)
    }

    /// Uniform draw strictly inside (0, 1), on a 2^-53 lattice offset by half
    /// a step so neither endpoint is reachable.
    #[inline]
    pub fn sample_uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Unbiased integer in `[0, bound)` via Lemire's multiply-shift rejection.
    ///
    /// Panics if `bound` is zero.
    #[inline]
    pub fn sample_index(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "sample_index bound must be positive");
        loop {
            let x = self.next_u64();
            let m = (x as u128) * (bound as u128);
            let lo = m as u64;
            if lo >= bound || lo >= bound.wrapping_neg() % bound {
                return (m >> 64) as u64;
            }
        }
    }

    /// Unit-rate exponential draw by inversion.
    #[inline]
    pub(crate) fn sample_exp_unit(&mut self) -> f64 {
        -self.sample_uniform().ln()
    }

    /// Derives a child stream from this stream's identity (not its state):
    /// `stream.split(c)` is the same stream no matter how much of the parent
    /// has been consumed. Used to fan replicates out across workers while
    /// keeping results independent of scheduling.
    pub fn split(&self, child_id: u64) -> RandomStream {
        let child_master = mix64(
            self.master_seed ^ mix64(self.stream_id ^ 0xD1B5_4A32_D192_ED03),
        );
        make_stream(child_master, child_id)
    }
}

/// Creates the stream addressed by `(master_seed, stream_id)`.
pub fn make_stream(master_seed: u64, stream_id: u64) -> RandomStream {
    let state = mix64(master_seed.wrapping_add(stream_id.wrapping_mul(GOLDEN_GAMMA)));
    let gamma = mix_gamma(stream_id.wrapping_add(master_seed.wrapping_mul(GOLDEN_GAMMA)));
    RandomStream {
        state,
        gamma,
        master_seed,
        stream_id,
    }
}

/// Derives a fresh master seed for a named purpose, so that different stages
/// of an experiment sharing one user-facing seed do not replay each other's
/// stream ids.
pub fn derive_seed(master_seed: u64, tag: u64) -> u64 {
    mix64(master_seed ^ mix64(tag.wrapping_add(GOLDEN_GAMMA)))
}

/// Uniform draw strictly inside (0, 1).
pub fn sample_uniform(stream: &mut RandomStream) -> f64 {
    stream.sample_uniform()
}

/// Exponential draw with the given rate, by inversion: `-ln(U) / rate`.
pub fn sample_exponential(stream: &mut RandomStream, rate: f64) -> Result<f64, RngError> {
    if rate.is_nan() || rate <= 0.0 {
        return Err(RngError::NonPositiveRate);
    }
    Ok(stream.sample_exp_unit() / rate)
}

/// Gamma(shape, 1) draw for integer shapes, as a sum of `shape` unit
/// exponentials.
pub fn sample_gamma_integer(stream: &mut RandomStream, shape: u64) -> Result<f64, RngError> {
    if shape == 0 {
        return Err(RngError::ZeroShape);
    }
    let mut acc = 0.0;
    for _ in 0..shape {
        acc += stream.sample_exp_unit();
    }
    Ok(acc)
}

/// Distribution of the node fitness variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitnessKind {
    Exponential,
}

/// A validated fitness law. Only the exponential family is implemented;
/// the enum leaves room for other distributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitnessLaw {
    kind: FitnessKind,
    rate: f64,
}

impl FitnessLaw {
    /// Exponential fitness with the given rate. The rate must be positive.
    pub fn exponential(rate: f64) -> Result<Self, RngError> {
        if rate.is_nan() || rate <= 0.0 || !rate.is_finite() {
            return Err(RngError::NonPositiveRate);
        }
        Ok(FitnessLaw {
            kind: FitnessKind::Exponential,
            rate,
        })
    }

    pub fn kind(&self) -> FitnessKind {
        self.kind
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// One fitness draw. The law was validated at construction, so this
    /// cannot fail.
    #[inline]
    pub fn sample(&self, stream: &mut RandomStream) -> f64 {
        match self.kind {
            FitnessKind::Exponential => stream.sample_exp_unit() / self.rate,
        }
    }
}
