//! Last-passage percolation with geometric weights, and the bound formulas
//! that go with it.
//!
//! On `J(P)` the Ungarian chain started at `1̂` is absorbed after exactly
//! `max_C Σ_{x∈C} G_x` steps in law, the maximum taken over maximal chains
//! `C` of `P` with `G_x` i.i.d. geometric on `{1, 2, …}`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poset::{maximal_chains, FinitePoset};
use crate::sim::{trial_rng, ChainParams, Executor, Statistics, TrialOutcome};

/// Geometric variable on `{1, 2, …}` with mean `1/p`, by inverse CDF.
#[inline]
pub fn sample_geometric<R: Rng + ?Sized>(p: f64, rng: &mut R) -> u64 {
    if p >= 1.0 {
        return 1;
    }
    let u = 1.0 - rng.random::<f64>(); // (0, 1]
    let g = (u.ln() / (1.0 - p).ln()).ceil();
    if g < 1.0 {
        1
    } else {
        g as u64
    }
}

/// Cover DAG in topological order; enough for LPP and far lighter than a
/// full order table when the poset is large.
#[derive(Clone, Debug)]
pub struct LppGraph {
    order: Vec<usize>,
    preds: Vec<Vec<usize>>,
}

impl LppGraph {
    pub fn from_poset(p: &FinitePoset) -> Self {
        LppGraph {
            order: p.linear_extension().to_vec(),
            preds: (0..p.len()).map(|x| p.lower_covers(x).to_vec()).collect(),
        }
    }

    /// `k × l` rectangle, element `(i, j)` at id `i * l + j`.
    pub fn rectangle(k: usize, l: usize) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::invalid("rectangle sides must be positive"));
        }
        let mut preds = vec![Vec::new(); k * l];
        for i in 0..k {
            for j in 0..l {
                let x = i * l + j;
                if i > 0 {
                    preds[x].push(x - l);
                }
                if j > 0 {
                    preds[x].push(x - 1);
                }
            }
        }
        Ok(LppGraph {
            order: (0..k * l).collect(),
            preds,
        })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Longest weighted path: max over maximal chains of the weight sum.
    pub fn last_passage(&self, weights: &[u64]) -> u64 {
        let mut best = vec![0u64; self.len()];
        let mut out = 0;
        for &x in &self.order {
            let below = self.preds[x].iter().map(|&a| best[a]).max().unwrap_or(0);
            best[x] = below + weights[x];
            out = out.max(best[x]);
        }
        out
    }

    /// Draws weights in element-id order and returns the last-passage value.
    pub fn sample<R: Rng + ?Sized>(&self, p: f64, rng: &mut R) -> u64 {
        let weights: Vec<u64> = (0..self.len()).map(|_| sample_geometric(p, rng)).collect();
        self.last_passage(&weights)
    }
}

pub fn sample_lpp_value(p: &FinitePoset, prob: f64, rng: &mut ChaCha8Rng) -> Result<u64> {
    if p.is_empty() {
        return Err(Error::invalid("LPP needs a nonempty poset"));
    }
    Ok(LppGraph::from_poset(p).sample(prob, rng))
}

/// Brute-force oracle: maximum chain sum over enumerated maximal chains.
pub fn lpp_bruteforce(p: &FinitePoset, weights: &[u64]) -> u64 {
    maximal_chains(p)
        .iter()
        .map(|c| c.iter().map(|&x| weights[x]).sum())
        .max()
        .unwrap_or(0)
}

pub fn lpp_outcomes(g: &LppGraph, params: &ChainParams, exec: Executor) -> Result<Vec<TrialOutcome>> {
    params.validate()?;
    if g.is_empty() {
        return Err(Error::invalid("LPP needs a nonempty poset"));
    }
    Ok(exec.map(params.trials, |i| {
        let mut rng = trial_rng(params.seed, i as u64);
        TrialOutcome {
            value: g.sample(params.p, &mut rng),
            capped: false,
        }
    }))
}

/// Monte Carlo estimate of `E(J(P))` through last-passage percolation.
pub fn estimate_e_jp(p: &FinitePoset, params: &ChainParams, exec: Executor) -> Result<Statistics> {
    estimate_lpp(&LppGraph::from_poset(p), params, exec)
}

pub fn estimate_lpp(g: &LppGraph, params: &ChainParams, exec: Executor) -> Result<Statistics> {
    Ok(Statistics::from_outcomes(&lpp_outcomes(g, params, exec)?))
}

/// `E[max of n i.i.d. geometrics] = Σ_{m≥0} (1 - (1 - q^m)^n)`.
pub fn expected_max_geometrics(n: usize, p: f64) -> f64 {
    if p >= 1.0 {
        return if n == 0 { 0.0 } else { 1.0 };
    }
    let q = 1.0 - p;
    let mut total = 0.0;
    let mut qm = 1.0f64;
    loop {
        let term = 1.0 - (1.0 - qm).powi(n as i32);
        total += term;
        if term < 1e-17 {
            break;
        }
        qm *= q;
    }
    total
}

/// Leading coefficient of `E(J(R_{k_n × l_n}))/n` with `k_n/n → k̄`, `l_n/n → l̄`.
pub fn rectangle_coefficient(kbar: f64, lbar: f64, p: f64) -> f64 {
    (kbar + lbar + 2.0 * ((1.0 - p) * kbar * lbar).sqrt()) / p
}

/// Bound coefficient for posets whose chains have size at most `μn` and
/// that have at most `Γ^(n)` maximal chains.
pub fn chernoff_coefficient(mu: f64, gamma: f64, p: f64) -> f64 {
    let lg = gamma.ln();
    (mu + lg + (2.0 * mu * lg + lg * lg).sqrt()) / p
}

/// Upper bound on `P(G_1 + … + G_k > γk/p)`.
/// The bound does not depend on `p`.
pub fn geometric_tail_bound(k: u64, gamma: f64, _p: f64) -> f64 {
    (-(gamma * k as f64 / 2.0) * (1.0 - 1.0 / gamma).powi(2)).exp()
}

/// Frequency of `G_1 + … + G_k > γk/p` over `trials` draws.
pub fn empirical_tail(k: u64, gamma: f64, p: f64, trials: usize, seed: u64) -> f64 {
    let threshold = gamma * k as f64 / p;
    let hits = (0..trials)
        .filter(|&t| {
            let mut rng = trial_rng(seed, t as u64);
            let s: u64 = (0..k).map(|_| sample_geometric(p, &mut rng)).sum();
            s as f64 > threshold
        })
        .count();
    hits as f64 / trials as f64
}
