//! Monte Carlo harness: per-trial RNG streams, a sequential or data-parallel
//! trial executor, and order-deterministic aggregation.
//!
//! Trial `i` of a run with master seed `s` draws from ChaCha8 seeded with `s`
//! on stream `i`. Results are collected by trial index and folded in that
//! order, so a run's statistics do not depend on the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::ungar::random_ungar_move;

pub const DEFAULT_STEP_CAP: u64 = 10_000_000;
/// A run fails when more than this fraction of its trials hit the step cap.
pub const MAX_CAPPED_FRACTION: f64 = 0.001;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChainParams {
    pub p: f64,
    pub seed: u64,
    pub trials: usize,
    pub step_cap: u64,
}

impl ChainParams {
    pub fn new(p: f64, seed: u64, trials: usize) -> Self {
        ChainParams {
            p,
            seed,
            trials,
            step_cap: DEFAULT_STEP_CAP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(Error::invalid(format!("p = {} must lie in (0, 1]", self.p)));
        }
        if self.trials == 0 {
            return Err(Error::invalid("trial count must be positive"));
        }
        if self.step_cap == 0 {
            return Err(Error::invalid("step cap must be positive"));
        }
        Ok(())
    }
}

/// RNG for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// SplitMix64 finalizer, used to derive independent sub-seeds.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Executor {
    Sequential,
    #[default]
    Parallel,
}

impl Executor {
    /// Evaluates `f(0), …, f(n-1)` and returns the results in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Executor::Sequential => (0..n).map(f).collect(),
            Executor::Parallel => parallel_map(n, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T: Send, F: Fn(usize) -> T + Sync + Send>(n: usize, f: F) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T: Send, F: Fn(usize) -> T + Sync + Send>(n: usize, f: F) -> Vec<T> {
    (0..n).map(f).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub value: u64,
    pub capped: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Statistics {
    pub trials: usize,
    pub capped: usize,
    pub mean: f64,
    pub variance: f64,
    pub stderr: f64,
    pub ci95: [f64; 2],
    pub min: u64,
    pub max: u64,
}

impl Statistics {
    /// Welford's algorithm over uncapped outcomes, in the given order.
    pub fn from_outcomes(outcomes: &[TrialOutcome]) -> Statistics {
        let mut n = 0usize;
        let mut mean = 0.0f64;
        let mut m2 = 0.0f64;
        let mut min = u64::MAX;
        let mut max = 0u64;
        let mut capped = 0usize;
        for o in outcomes {
            if o.capped {
                capped += 1;
                continue;
            }
            n += 1;
            let x = o.value as f64;
            let d = x - mean;
            mean += d / n as f64;
            m2 += d * (x - mean);
            min = min.min(o.value);
            max = max.max(o.value);
        }
        let variance = if n > 1 { m2 / (n - 1) as f64 } else { 0.0 };
        let stderr = if n > 0 { (variance / n as f64).sqrt() } else { 0.0 };
        Statistics {
            trials: outcomes.len(),
            capped,
            mean,
            variance,
            stderr,
            ci95: [mean - 1.96 * stderr, mean + 1.96 * stderr],
            min: if n > 0 { min } else { 0 },
            max,
        }
    }

    /// Errors when too many trials were capped to trust the mean.
    pub fn check_capped(&self) -> Result<()> {
        if self.capped as f64 > MAX_CAPPED_FRACTION * self.trials as f64 {
            Err(Error::TooManyCapped {
                capped: self.capped,
                trials: self.trials,
            })
        } else {
            Ok(())
        }
    }

    /// Whether `target` lies within `k` standard errors of the mean.
    pub fn within_sigma(&self, target: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.stderr + 1e-12
    }
}

/// A Markov chain run from a fixed initial state until absorption.
pub trait ChainProcess: Sync {
    type State: Clone + Send;

    fn initial(&self) -> Self::State;
    fn is_absorbed(&self, s: &Self::State) -> bool;
    fn step(&self, s: &mut Self::State, rng: &mut ChaCha8Rng);
}

/// One trajectory: absorption time, capped flag and requested snapshots.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationRecord<T> {
    pub steps: u64,
    pub capped: bool,
    pub snapshots: Vec<(u64, T)>,
    pub stream_index: u64,
}

pub fn run_trial<P: ChainProcess>(process: &P, params: &ChainParams, trial: u64) -> TrialOutcome {
    let mut rng = trial_rng(params.seed, trial);
    let mut s = process.initial();
    let mut steps = 0u64;
    while !process.is_absorbed(&s) {
        if steps == params.step_cap {
            return TrialOutcome {
                value: steps,
                capped: true,
            };
        }
        process.step(&mut s, &mut rng);
        steps += 1;
    }
    TrialOutcome {
        value: steps,
        capped: false,
    }
}

/// Runs trial `trial` recording the state at each time in `snapshot_times`
/// that is reached (the absorbing state is held after absorption).
pub fn record_trial<P: ChainProcess>(
    process: &P,
    params: &ChainParams,
    trial: u64,
    snapshot_times: &[u64],
) -> SimulationRecord<P::State> {
    let mut rng = trial_rng(params.seed, trial);
    let mut s = process.initial();
    let mut steps = 0u64;
    let mut snaps = Vec::new();
    let mut want: Vec<u64> = snapshot_times.to_vec();
    want.sort_unstable();
    want.dedup();
    let mut next = 0;
    let last = want.last().copied().unwrap_or(0);
    let mut capped = false;
    loop {
        while next < want.len() && want[next] == steps {
            snaps.push((steps, s.clone()));
            next += 1;
        }
        if process.is_absorbed(&s) {
            break;
        }
        if steps == params.step_cap {
            capped = true;
            break;
        }
        process.step(&mut s, &mut rng);
        steps += 1;
    }
    let absorbed_at = steps;
    if !capped {
        for &t in &want[next..] {
            if t <= last {
                snaps.push((t, s.clone()));
            }
        }
    }
    SimulationRecord {
        steps: absorbed_at,
        capped,
        snapshots: snaps,
        stream_index: trial,
    }
}

pub fn simulate_outcomes<P: ChainProcess>(
    process: &P,
    params: &ChainParams,
    exec: Executor,
) -> Result<Vec<TrialOutcome>> {
    params.validate()?;
    Ok(exec.map(params.trials, |i| run_trial(process, params, i as u64)))
}

/// Mean absorption time over `params.trials` independent runs.
pub fn simulate_hitting_time<P: ChainProcess>(
    process: &P,
    params: &ChainParams,
    exec: Executor,
) -> Result<Statistics> {
    let outcomes = simulate_outcomes(process, params, exec)?;
    let stats = Statistics::from_outcomes(&outcomes);
    stats.check_capped()?;
    Ok(stats)
}

/// The Ungarian Markov chain on an explicit lattice.
pub struct LatticeChain<'a> {
    pub lattice: &'a FiniteLattice,
    pub p: f64,
}

impl ChainProcess for LatticeChain<'_> {
    type State = usize;

    fn initial(&self) -> usize {
        self.lattice.top()
    }

    fn is_absorbed(&self, s: &usize) -> bool {
        *s == self.lattice.bottom()
    }

    fn step(&self, s: &mut usize, rng: &mut ChaCha8Rng) {
        *s = random_ungar_move(self.lattice, *s, self.p, rng);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::chain;

    #[test]
    fn welford_matches_two_pass() {
        let vals = [3u64, 7, 7, 19, 1, 4];
        let outcomes: Vec<_> = vals
            .iter()
            .map(|&v| TrialOutcome {
                value: v,
                capped: false,
            })
            .collect();
        let s = Statistics::from_outcomes(&outcomes);
        let mean = vals.iter().sum::<u64>() as f64 / 6.0;
        let var = vals.iter().map(|&v| (v as f64 - mean).powi(2)).sum::<f64>() / 5.0;
        assert!((s.mean - mean).abs() < 1e-12);
        assert!((s.variance - var).abs() < 1e-9);
        assert_eq!((s.min, s.max), (1, 19));
    }

    #[test]
    fn capped_trials_are_excluded_and_reported() {
        let mut outcomes = vec![
            TrialOutcome {
                value: 2,
                capped: false
            };
            10
        ];
        outcomes[3] = TrialOutcome {
            value: 99,
            capped: true,
        };
        let s = Statistics::from_outcomes(&outcomes);
        assert_eq!(s.capped, 1);
        assert_eq!(s.mean, 2.0);
        assert!(s.check_capped().is_err());
    }

    #[test]
    fn chain_lattice_mean_and_determinism() {
        let c = FiniteLattice::from_poset(chain(5)).unwrap();
        let proc = LatticeChain { lattice: &c, p: 0.5 };
        let params = ChainParams::new(0.5, 42, 20_000);
        let a = simulate_hitting_time(&proc, &params, Executor::Sequential).unwrap();
        let b = simulate_hitting_time(&proc, &params, Executor::Parallel).unwrap();
        assert_eq!(a, b);
        assert!(a.within_sigma(8.0, 4.0), "{a:?}");
    }

    #[test]
    fn step_cap_flags_runs() {
        let c = FiniteLattice::from_poset(chain(50)).unwrap();
        let proc = LatticeChain { lattice: &c, p: 0.5 };
        let mut params = ChainParams::new(0.5, 1, 10);
        params.step_cap = 5;
        let err = simulate_hitting_time(&proc, &params, Executor::Sequential).unwrap_err();
        assert!(matches!(err, Error::TooManyCapped { capped: 10, .. }));
        let rec = record_trial(&proc, &params, 0, &[0, 3]);
        assert!(rec.capped);
        assert_eq!(rec.snapshots.len(), 2);
        assert_eq!(rec.snapshots[0], (0, 49));
    }
}
