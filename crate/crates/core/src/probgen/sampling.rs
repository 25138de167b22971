use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lattice::StableLattice;
use crate::error::{Error, Result};
use crate::groups::normal_closure;

/// Number of independently seeded streams the trials are split into.
pub const MC_STREAMS: u64 = 64;

/// Outcome of a seeded Monte Carlo run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonteCarlo {
    pub trials: u64,
    pub successes: u64,
    pub seed: u64,
}

impl MonteCarlo {
    pub fn estimate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    pub fn stderr(&self) -> f64 {
        let p = self.estimate();
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    /// `|p̂ − exact| ≤ z·√(p̂(1−p̂)/trials)`, decided in exact rationals.
    pub fn within(&self, exact: &BigRational, z: u32) -> bool {
        let t = BigInt::from(self.trials);
        let est = BigRational::new(BigInt::from(self.successes), t.clone());
        let diff = &est - exact;
        let variance = &est * (BigRational::from_integer(1.into()) - &est) / BigRational::from_integer(t);
        &diff * &diff <= variance * BigRational::from_integer(BigInt::from(z * z))
    }
}

/// Samples `k` uniform elements of `R` per trial and tests whether their
/// normal closure in `H` is `R`. Trial `i` of stream `s` draws from
/// ChaCha8 seeded with `seed` on stream `s`, so the result does not depend
/// on the number of worker threads.
pub fn monte_carlo_gen_probability(lattice: &StableLattice, k: usize, trials: u64, seed: u64) -> Result<MonteCarlo> {
    if trials == 0 {
        return Err(Error::invalid("at least one trial is required"));
    }
    let h = lattice.domain();
    let elems = lattice.kernel.elements();
    let successes = (0..MC_STREAMS)
        .into_par_iter()
        .map(|s| {
            let count = trials / MC_STREAMS + u64::from(s < trials % MC_STREAMS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s);
            let mut hits = 0u64;
            for _ in 0..count {
                let tuple: Vec<usize> = (0..k).map(|_| elems[rng.gen_range(0..elems.len())]).collect();
                if normal_closure(h, &tuple, h.gens()).order() == elems.len() {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    Ok(MonteCarlo { trials, successes, seed })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurjectionLabel {
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "G")]
    pub g: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McSummary {
    pub trials: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub seed: u64,
}

/// Exact and sampled normal-generation probability of one surjection.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityReport {
    pub surjection: SurjectionLabel,
    pub k: usize,
    /// `num/den` in lowest terms.
    pub exact: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mc: Option<McSummary>,
}

impl ProbabilityReport {
    pub fn new(lattice: &StableLattice, k: usize, mc: Option<&MonteCarlo>) -> Self {
        let exact = lattice.exact_gen_probability(k);
        ProbabilityReport {
            surjection: SurjectionLabel {
                h: lattice.domain().label().to_string(),
                g: lattice.codomain().label().to_string(),
            },
            k,
            exact: format!("{}/{}", exact.numer(), exact.denom()),
            mc: mc.map(|m| McSummary {
                trials: m.trials,
                estimate: m.estimate(),
                stderr: m.stderr(),
                seed: m.seed,
            }),
        }
    }
}
