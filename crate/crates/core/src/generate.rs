//! Seeded instance generation.
//!
//! The generator is SplitMix64 (Steele, Lea and Flood), which is fully
//! specified by a few lines of integer arithmetic, so any implementation can
//! reproduce the same instances from the same parameters. Draw order:
//!
//! * `uniform`: `size_s` source coordinates, then `size_t` target coordinates,
//!   each `lo + below(hi - lo + 1)`.
//! * `clustered`: `c = 1 + (size_s + size_t) / 32` cluster centres drawn
//!   uniformly from `[lo, hi]`; then each source, then each target, as a
//!   centre index `below(c)` followed by an offset uniform in
//!   `[-spread, spread]` with `spread = max(1, (hi - lo) / (8c))`, clamped
//!   to `[lo, hi]`.
//!
//! `below(n)` draws `x = next_u64()` until `x < u64::MAX - u64::MAX % n` and
//! returns `x % n`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instance::{Instance, COORD_BOUND};

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`; `n` must be non-zero.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let limit = u64::MAX - u64::MAX % n;
        loop {
            let x = self.next_u64();
            if x < limit {
                return x % n;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn range_inclusive(&mut self, lo: i64, hi: i64) -> i64 {
        let width = (hi as i128 - lo as i128 + 1) as u64;
        lo + self.below(width) as i64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Distribution {
    #[default]
    Uniform,
    Clustered,
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Distribution::Uniform => "uniform",
            Distribution::Clustered => "clustered",
        })
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Distribution::Uniform),
            "clustered" => Ok(Distribution::Clustered),
            other => Err(Error::InvalidParameter(format!(
                "unknown distribution {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub seed: u64,
    pub size_s: usize,
    pub size_t: usize,
    pub lo: i64,
    pub hi: i64,
    pub dist: Distribution,
}

impl GenSpec {
    fn validate(&self) -> Result<()> {
        if self.size_t == 0 || self.size_s < self.size_t {
            return Err(Error::InvalidParameter(format!(
                "need size_s >= size_t >= 1, got {} and {}",
                self.size_s, self.size_t
            )));
        }
        if self.lo > self.hi {
            return Err(Error::InvalidParameter(format!(
                "empty coordinate range [{}, {}]",
                self.lo, self.hi
            )));
        }
        for v in [self.lo, self.hi] {
            if !(-COORD_BOUND..COORD_BOUND).contains(&v) {
                return Err(Error::RangeExceeded { value: v });
            }
        }
        Ok(())
    }
}

/// Raw `(S, T)` coordinates in draw order (unsorted).
pub fn generate_points(spec: &GenSpec) -> Result<(Vec<i64>, Vec<i64>)> {
    spec.validate()?;
    let mut rng = SplitMix64::new(spec.seed);
    let (lo, hi) = (spec.lo, spec.hi);
    match spec.dist {
        Distribution::Uniform => {
            let s = (0..spec.size_s)
                .map(|_| rng.range_inclusive(lo, hi))
                .collect();
            let t = (0..spec.size_t)
                .map(|_| rng.range_inclusive(lo, hi))
                .collect();
            Ok((s, t))
        }
        Distribution::Clustered => {
            let clusters = 1 + (spec.size_s + spec.size_t) / 32;
            let spread = ((hi - lo) / (8 * clusters as i64)).max(1);
            let centers: Vec<i64> = (0..clusters).map(|_| rng.range_inclusive(lo, hi)).collect();
            let mut draw = |_| {
                let c = centers[rng.below(clusters as u64) as usize];
                (c + rng.range_inclusive(-spread, spread)).clamp(lo, hi)
            };
            let s = (0..spec.size_s).map(&mut draw).collect();
            let t = (0..spec.size_t).map(&mut draw).collect();
            Ok((s, t))
        }
    }
}

pub fn generate_instance(spec: &GenSpec) -> Result<Instance> {
    let (s, t) = generate_points(spec)?;
    Instance::new(s, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // First outputs for seed 1234567, as published with the algorithm.
        let mut rng = SplitMix64::new(1234567);
        let got: Vec<u64> = (0..5).map(|_| rng.next_u64()).collect();
        assert_eq!(
            got,
            vec![
                6457827717110365317,
                3203168211198807973,
                9817491932198370423,
                4593380528125082431,
                16408922859458223821
            ]
        );
    }

    fn spec(dist: Distribution) -> GenSpec {
        GenSpec {
            seed: 42,
            size_s: 50,
            size_t: 20,
            lo: 0,
            hi: 1000,
            dist,
        }
    }

    #[test]
    fn deterministic() {
        for dist in [Distribution::Uniform, Distribution::Clustered] {
            let a = generate_instance(&spec(dist)).unwrap();
            let b = generate_instance(&spec(dist)).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.s().len(), 50);
            assert_eq!(a.t().len(), 20);
            assert!(a.s().iter().chain(a.t()).all(|&x| (0..=1000).contains(&x)));
        }
    }

    #[test]
    fn seeds_differ() {
        let a = generate_instance(&spec(Distribution::Uniform)).unwrap();
        let b = generate_instance(&GenSpec {
            seed: 43,
            ..spec(Distribution::Uniform)
        })
        .unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn equal_sizes() {
        let inst = generate_instance(&GenSpec {
            size_s: 7,
            size_t: 7,
            ..spec(Distribution::Uniform)
        })
        .unwrap();
        assert_eq!(inst.delta(), 0);
    }

    #[test]
    fn rejects_bad_parameters() {
        let bad = [
            GenSpec {
                size_t: 0,
                ..spec(Distribution::Uniform)
            },
            GenSpec {
                size_s: 3,
                size_t: 4,
                ..spec(Distribution::Uniform)
            },
            GenSpec {
                lo: 5,
                hi: 4,
                ..spec(Distribution::Uniform)
            },
            GenSpec {
                hi: COORD_BOUND,
                ..spec(Distribution::Uniform)
            },
        ];
        for b in bad {
            assert!(generate_instance(&b).is_err(), "{b:?}");
        }
    }

    #[test]
    fn below_stays_in_range() {
        let mut rng = SplitMix64::new(7);
        for n in [1u64, 2, 3, 10, 1 << 40] {
            for _ in 0..100 {
                assert!(rng.below(n) < n);
            }
        }
        assert_eq!(rng.range_inclusive(5, 5), 5);
        let x = rng.range_inclusive(-COORD_BOUND, COORD_BOUND - 1);
        assert!((-COORD_BOUND..COORD_BOUND).contains(&x));
    }

    #[test]
    fn distribution_names() {
        assert_eq!(
            "clustered".parse::<Distribution>().unwrap(),
            Distribution::Clustered
        );
        assert_eq!(Distribution::Uniform.to_string(), "uniform");
        assert!("gauss".parse::<Distribution>().is_err());
    }
}
