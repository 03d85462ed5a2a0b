//! Shot sampling of the final position measurement.
//!
//! Counts are a multinomial draw from the exact distribution, taken as a chain
//! of conditional binomials on a seeded ChaCha20 stream. The circuit is
//! deterministic up to measurement, so this matches what a simulator backend
//! would return.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::probability::{l1_distance, ProbabilityVector};

pub const RNG_ALGORITHM: &str = "chacha20";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotCounts {
    counts: Vec<u64>,
    shots: u64,
    seed: u64,
}

impl ShotCounts {
    pub fn new(counts: Vec<u64>, seed: u64) -> Result<Self> {
        let shots: u64 = counts.iter().sum();
        if shots == 0 {
            return Err(Error::InvalidArgument("shot counts are all zero".into()));
        }
        Ok(Self { counts, shots, seed })
    }

    pub fn n_nodes(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Draws `shots` measurements from `p`. Identical arguments give identical counts.
pub fn sample(p: &ProbabilityVector, shots: u64, seed: u64) -> Result<ShotCounts> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let probs = p.as_slice();
    let mut counts = vec![0u64; probs.len()];
    let mut left = shots;
    let mut mass = 1.0f64;
    for (i, &pi) in probs.iter().enumerate() {
        if left == 0 {
            break;
        }
        if i + 1 == probs.len() || mass <= pi {
            counts[i] = left;
            break;
        }
        let frac = (pi / mass).clamp(0.0, 1.0);
        let k = Binomial::new(left, frac)
            .expect("probability clamped to [0, 1]")
            .sample(&mut rng);
        counts[i] = k;
        left -= k;
        mass -= pi;
    }
    ShotCounts::new(counts, seed)
}

/// Relative frequencies `counts / shots`.
pub fn empirical(c: &ShotCounts) -> ProbabilityVector {
    let shots = c.shots as f64;
    ProbabilityVector::new(c.counts.iter().map(|&k| k as f64 / shots).collect())
        .expect("frequencies of a non-empty count vector form a distribution")
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub shots: u64,
    pub seed: u64,
    pub rng: &'static str,
    pub counts: Vec<u64>,
    pub empirical: ProbabilityVector,
    pub l1_vs_theory: f64,
}

pub fn report(c: &ShotCounts, theory: &ProbabilityVector) -> Result<SampleReport> {
    let emp = empirical(c);
    let l1 = l1_distance(&emp, theory)?;
    Ok(SampleReport {
        shots: c.shots,
        seed: c.seed,
        rng: RNG_ALGORITHM,
        counts: c.counts.clone(),
        empirical: emp,
        l1_vs_theory: l1,
    })
}
