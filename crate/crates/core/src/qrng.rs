//! Simulated random number generator based on measuring a prepared ray in
//! a context that does not contain it.
//!
//! Prepare `c`, measure the basis containing `b`: outcome `b` is bit 1, any
//! other basis element is bit 0. The run is certified when the overlap
//! `|⟨c|b⟩|` lies inside [`CertificationBounds`].
//!
//! # Randomness contract
//!
//! Draws come from xoshiro256** seeded through `seed_from_u64`, which
//! expands the 64-bit seed with SplitMix64. Each draw takes one `u64`, keeps
//! its top 53 bits and scales by 2^-53 to a uniform `u` in [0, 1). The
//! outcome is the first basis index `i` with `u < p_0 + ... + p_i`; the last
//! index absorbs rounding. This is reproducible in any language that
//! implements the same two generators.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ray::{self, ContextBasis, Ray};

/// Closed interval of admissible overlaps `|⟨c|b⟩|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertificationBounds {
    pub lower: f64,
    pub upper: f64,
}

impl Default for CertificationBounds {
    /// `√(5/14) ≤ |⟨c|b⟩| ≤ 3/√14`.
    fn default() -> Self {
        Self {
            lower: (5.0f64 / 14.0).sqrt(),
            upper: 3.0 / 14f64.sqrt(),
        }
    }
}

impl CertificationBounds {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lower) || !(0.0..=1.0).contains(&upper) || lower > upper {
            return Err(Error::InvalidConfig(format!(
                "bounds [{lower}, {upper}] must be ordered within [0, 1]"
            )));
        }
        Ok(Self { lower, upper })
    }

    pub fn contains(&self, overlap: f64) -> bool {
        self.lower <= overlap && overlap <= self.upper
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Certification {
    pub certified: bool,
    pub overlap: f64,
}

/// Whether `|⟨c|b⟩|` lies in `bounds`, endpoints included.
pub fn certify_angle(c: &Ray, b: &Ray, bounds: &CertificationBounds) -> Result<Certification> {
    let overlap = ray::inner_product(c, b)?.abs();
    Ok(Certification {
        certified: bounds.contains(overlap),
        overlap,
    })
}

#[derive(Debug, Clone)]
pub struct QrngConfig {
    pub preparation: Ray,
    pub measurement: ContextBasis,
    /// Basis element that counts as bit 1.
    pub target_index: usize,
    pub seed: u64,
    pub n: usize,
    pub bounds: CertificationBounds,
}

impl QrngConfig {
    /// Config with default bounds.
    pub fn new(
        preparation: Ray,
        measurement: ContextBasis,
        target_index: usize,
        seed: u64,
        n: usize,
    ) -> Self {
        Self {
            preparation,
            measurement,
            target_index,
            seed,
            n,
            bounds: CertificationBounds::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.measurement.dimension();
        if self.preparation.dimension() != d {
            return Err(Error::DimensionMismatch {
                left: self.preparation.dimension(),
                right: d,
            });
        }
        if self.target_index >= d {
            return Err(Error::InvalidConfig(format!(
                "target index {} out of range for dimension {d}",
                self.target_index
            )));
        }
        if self.n == 0 {
            return Err(Error::InvalidConfig(
                "sample count must be at least 1".into(),
            ));
        }
        CertificationBounds::new(self.bounds.lower, self.bounds.upper)?;
        Ok(())
    }

    pub fn target(&self) -> &Ray {
        &self.measurement.rays()[self.target_index]
    }

    /// Outcome probabilities `|⟨c|r_i⟩|²` over the measurement basis.
    pub fn probabilities(&self) -> Result<Vec<f64>> {
        self.measurement
            .rays()
            .iter()
            .map(|r| ray::born_probability(&self.preparation, r))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRun {
    /// One bit per draw: `true` when the outcome was the target.
    #[serde(skip)]
    pub bits: Vec<bool>,
    /// Outcome counts per basis element.
    pub tallies: Vec<u64>,
    pub frequency: f64,
    pub certified: bool,
    pub overlap: f64,
    pub seed: u64,
    pub n: usize,
    pub target_index: usize,
}

pub fn sample(config: &QrngConfig) -> Result<SampleRun> {
    config.validate()?;
    let cumulative = cumulative(&config.probabilities()?);
    let draws = draw(config.seed, config.n, &cumulative);
    finish(config, &draws)
}

/// Split the run into `batches` contiguous chunks, each seeded with
/// [`derive_batch_seed`] and drawn on its own thread. The result depends on
/// `(seed, n, batches)` only; it differs from [`sample`] with the same seed.
pub fn sample_batched(config: &QrngConfig, batches: usize) -> Result<SampleRun> {
    config.validate()?;
    if batches == 0 || batches > config.n {
        return Err(Error::InvalidConfig(format!(
            "cannot split {} draws into {batches} batches",
            config.n
        )));
    }
    let cumulative = cumulative(&config.probabilities()?);
    let (base, extra) = (config.n / batches, config.n % batches);
    let chunks: Vec<Vec<usize>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..batches)
            .map(|i| {
                let len = base + usize::from(i < extra);
                let seed = derive_batch_seed(config.seed, i as u64);
                let cumulative = &cumulative;
                scope.spawn(move || draw(seed, len, cumulative))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampling thread panicked"))
            .collect()
    });
    finish(config, &chunks.concat())
}

/// Seed for batch `index`: the SplitMix64 output function applied to
/// `seed + (index + 1) * 0x9E3779B97F4A7C15` (wrapping).
pub fn derive_batch_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn cumulative(probabilities: &[f64]) -> Vec<f64> {
    probabilities
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect()
}

fn draw(seed: u64, n: usize, cumulative: &[f64]) -> Vec<usize> {
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let last = cumulative.len() - 1;
    (0..n)
        .map(|_| {
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            cumulative[..last]
                .iter()
                .position(|&c| u < c)
                .unwrap_or(last)
        })
        .collect()
}

fn finish(config: &QrngConfig, outcomes: &[usize]) -> Result<SampleRun> {
    let mut tallies = vec![0u64; config.measurement.dimension()];
    outcomes.iter().for_each(|&o| tallies[o] += 1);
    let bits: Vec<bool> = outcomes.iter().map(|&o| o == config.target_index).collect();
    let cert = certify_angle(&config.preparation, config.target(), &config.bounds)?;
    Ok(SampleRun {
        frequency: tallies[config.target_index] as f64 / config.n as f64,
        bits,
        tallies,
        certified: cert.certified,
        overlap: cert.overlap,
        seed: config.seed,
        n: config.n,
        target_index: config.target_index,
    })
}

/// Von Neumann extractor: non-overlapping pairs `01 -> 0`, `10 -> 1`, and
/// `00`/`11` are dropped. A trailing odd bit is ignored.
pub fn debias(bits: &[bool]) -> Vec<bool> {
    bits.chunks_exact(2)
        .filter(|p| p[0] != p[1])
        .map(|p| p[0])
        .collect()
}

/// Pack bits into bytes, most significant bit first; the last byte is
/// zero-padded.
pub fn pack_bits(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |byte, (i, &b)| byte | (u8::from(b) << (7 - i)))
        })
        .collect()
}
