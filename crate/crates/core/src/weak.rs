//! The symmetric group under the weak order: permutations, Ungar moves,
//! the explicit lattice for small `n`, and the coupled simulation driven by
//! one Bernoulli stream per descent-bottom value.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{check_cap, Error, Result};
use crate::lattice::FiniteLattice;
use crate::poset::FinitePoset;
use crate::sim::{mix64, ChainParams, ChainProcess, Executor, SimulationRecord, Statistics, TrialOutcome};

/// One-line notation, values `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Permutation(Vec<u16>);

impl Permutation {
    pub fn new(values: Vec<u16>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::invalid(format!("{values:?} is not a permutation")));
            }
        }
        Ok(Permutation(values))
    }

    /// Caller guarantees `values` is a permutation of `1..=len`.
    pub(crate) fn from_values_unchecked(values: Vec<u16>) -> Self {
        Permutation(values)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u16).collect())
    }

    /// `n (n-1) … 1`.
    pub fn decreasing(n: usize) -> Self {
        Permutation((1..=n as u16).rev().collect())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn values(&self) -> &[u16] {
        &self.0
    }

    /// `x(i)` for 1-based `i`.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u16;
        }
        Permutation(inv)
    }

    /// `(self · other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&j| self.0[j as usize - 1]).collect())
    }

    pub fn inversions(&self) -> usize {
        let v = &self.0;
        (0..v.len())
            .map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count())
            .sum()
    }

    /// Inversion set as value pairs `(a, b)`, `a < b`, with `b` left of `a`.
    pub fn inversion_set(&self) -> Vec<(u16, u16)> {
        let v = &self.0;
        let mut out = Vec::new();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    out.push((v[j], v[i]));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Weak order: inversion-set containment.
    pub fn weak_leq(&self, other: &Permutation) -> bool {
        let pos = other.inverse();
        self.inversion_set()
            .into_iter()
            .all(|(a, b)| pos.at(b as usize) < pos.at(a as usize))
    }

    /// 1-based `i` with `x(i) > x(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.len()).filter(|&i| self.0[i - 1] > self.0[i]).collect()
    }

    /// Values `x(i+1)` for descents `i`, sorted.
    pub fn descent_bottoms(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.descents().iter().map(|&i| self.at(i + 1)).collect();
        v.sort_unstable();
        v
    }

    /// Values larger than everything to their left, sorted.
    pub fn lr_maxima(&self) -> Vec<usize> {
        let mut best = 0;
        let mut out = Vec::new();
        for &v in &self.0 {
            if v > best {
                best = v;
                out.push(v as usize);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn avoids_312(&self) -> bool {
        // x avoids 312 iff no a left of b left of c with b < c < a; scan each
        // middle-right pair against the maximum to the left
        let v = &self.0;
        let n = v.len();
        let mut max_left = vec![0u16; n];
        for i in 1..n {
            max_left[i] = max_left[i - 1].max(v[i - 1]);
        }
        for j in 1..n {
            for k in j + 1..n {
                if v[j] < v[k] && max_left[j] > v[k] {
                    return false;
                }
            }
        }
        true
    }

    /// `x · s_i`: swaps positions `i` and `i+1`.
    pub fn swap_positions(&self, i: usize) -> Permutation {
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Permutation(v)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `"763198542"` (single digits) or `"10,2,1,…"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Option<Vec<u16>> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse::<u16>().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as u16)).collect()
        };
        Permutation::new(values.ok_or_else(|| Error::invalid(format!("cannot parse {s:?}")))?)
    }
}

/// Maximal runs of consecutive integers in a sorted set, as `(start, end)`.
fn runs(t: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &i in t {
        match out.last_mut() {
            Some((_, e)) if *e + 1 == i => *e = i,
            _ => out.push((i, i)),
        }
    }
    out
}

fn normalize_subset(n: usize, t: &[usize]) -> Result<Vec<usize>> {
    let mut t = t.to_vec();
    t.sort_unstable();
    t.dedup();
    if t.iter().any(|&i| i == 0 || i >= n) {
        return Err(Error::invalid(format!("{t:?} is not a subset of [{}]", n.saturating_sub(1))));
    }
    Ok(t)
}

/// Longest element of the parabolic subgroup generated by `{s_i : i ∈ T}`.
pub fn w0_of_subset(n: usize, t: &[usize]) -> Result<Permutation> {
    let t = normalize_subset(n, t)?;
    let mut v: Vec<u16> = (1..=n as u16).collect();
    for (a, b) in runs(&t) {
        v[a - 1..=b].reverse();
    }
    Ok(Permutation(v))
}

/// In-place `x ↦ x · w0(T)` for sorted `T`: reverses the blocks of positions
/// `a..=b+1` for each maximal run `a..=b` of `T`.
pub(crate) fn reverse_runs(v: &mut [u16], t: &[usize]) {
    let mut k = 0;
    while k < t.len() {
        let a = t[k];
        let mut b = a;
        while k + 1 < t.len() && t[k + 1] == b + 1 {
            k += 1;
            b += 1;
        }
        v[a - 1..=b].reverse();
        k += 1;
    }
}

/// `x · w0(T)` for `T ⊆ Des(x)`.
pub fn ungar_move(x: &Permutation, t: &[usize]) -> Result<Permutation> {
    let t = normalize_subset(x.len().max(1), t)?;
    let des = x.descents();
    if let Some(i) = t.iter().find(|i| !des.contains(i)) {
        return Err(Error::invalid(format!("{i} is not a descent of {x}")));
    }
    let mut v = x.0.clone();
    reverse_runs(&mut v, &t);
    Ok(Permutation(v))
}

/// Maximal Ungar move: reverse every maximal descending run.
pub fn pop_permutation(x: &Permutation) -> Permutation {
    ungar_move(x, &x.descents()).expect("descents are descents")
}

/// All permutations of `[n]` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut v: Vec<u16> = (1..=n as u16).collect();
    let mut out = vec![Permutation(v.clone())];
    loop {
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            break;
        };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot exists");
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(Permutation(v.clone()));
    }
    out
}

/// Weak order on `S_n` as an explicit lattice, with the permutation behind
/// each element id.
pub fn weak_lattice(n: usize) -> Result<(FiniteLattice, Vec<Permutation>)> {
    check_cap("weak order rank", n, 7)?;
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let perms = all_permutations(n);
    let index: HashMap<&Permutation, usize> = perms.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let mut rel = Vec::new();
    for (k, w) in perms.iter().enumerate() {
        for i in w.descents() {
            rel.push((index[&w.swap_positions(i)], k));
        }
    }
    let poset = FinitePoset::from_covers(perms.len(), &rel)?;
    Ok((FiniteLattice::from_poset_unchecked(poset), perms))
}

/// Fewest nontrivial Ungar moves from `n(n-1)…1` to the identity. With
/// `first_move_not_maximal`, the first move may not reverse every descent.
pub fn min_nontrivial_ungar_moves(n: usize, first_move_not_maximal: bool) -> Result<usize> {
    check_cap("symmetric group rank for move search", n, 7)?;
    if n <= 1 {
        return Ok(0);
    }
    let mut perms = all_permutations(n);
    perms.sort_by_key(|w| w.inversions());
    let index: HashMap<Permutation, usize> =
        perms.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
    // every nontrivial move strictly lowers the inversion count
    let mut dist = vec![usize::MAX; perms.len()];
    dist[0] = 0;
    let subsets = |w: &Permutation| -> Vec<Vec<usize>> {
        let des = w.descents();
        (1u32..(1 << des.len()))
            .map(|mask| (0..des.len()).filter(|&b| mask >> b & 1 == 1).map(|b| des[b]).collect())
            .collect()
    };
    for k in 1..perms.len() {
        let w = &perms[k];
        dist[k] = subsets(w)
            .iter()
            .map(|t| dist[index[&ungar_move(w, t).expect("subset of descents")]])
            .min()
            .expect("non-identity has a descent")
            + 1;
    }
    let top = Permutation::decreasing(n);
    if !first_move_not_maximal {
        return Ok(dist[index[&top]]);
    }
    let des = top.descents();
    subsets(&top)
        .iter()
        .filter(|t| t.len() < des.len())
        .map(|t| dist[index[&ungar_move(&top, t).expect("subset of descents")]] + 1)
        .min()
        .ok_or_else(|| Error::invalid("no non-maximal nontrivial first move exists for n = 2"))
}

/// Ungarian chain on `S_n` drawing one Bernoulli per descent from the trial RNG.
pub struct WeakChain {
    pub n: usize,
    pub p: f64,
}

impl ChainProcess for WeakChain {
    type State = Vec<u16>;

    fn initial(&self) -> Vec<u16> {
        Permutation::decreasing(self.n).0
    }

    fn is_absorbed(&self, s: &Vec<u16>) -> bool {
        s.windows(2).all(|w| w[0] < w[1])
    }

    fn step(&self, s: &mut Vec<u16>, rng: &mut ChaCha8Rng) {
        let t: Vec<usize> = (1..s.len())
            .filter(|&i| s[i - 1] > s[i] && rng.random::<f64>() < self.p)
            .collect();
        reverse_runs(s, &t);
    }
}

/// Per-value Bernoulli streams `X^(β)_0, X^(β)_1, …`: stream `β` is advanced
/// only at steps where `β` is a descent bottom.
pub(crate) struct BetaStreams {
    rngs: Vec<ChaCha8Rng>,
    pub successes: Vec<u64>,
    pub draws: Vec<u64>,
}

impl BetaStreams {
    /// Streams for trial `trial` of a run seeded with `seed`; stream `β` is
    /// ChaCha8 keyed by `mix64(seed ⊕ mix64(trial))` on stream number `β`.
    pub fn new(n: usize, seed: u64, trial: u64) -> Self {
        let key = mix64(seed ^ mix64(trial));
        let rngs = (0..=n as u64)
            .map(|b| {
                let mut r = ChaCha8Rng::seed_from_u64(key);
                r.set_stream(b);
                r
            })
            .collect();
        BetaStreams {
            rngs,
            successes: vec![0; n + 1],
            draws: vec![0; n + 1],
        }
    }

    #[inline]
    pub fn next(&mut self, beta: usize, p: f64) -> bool {
        self.draws[beta] += 1;
        let x = self.rngs[beta].random::<f64>() < p;
        if x {
            self.successes[beta] += 1;
        }
        x
    }

    /// `Σ_j X^(β)_j ≤ n − β` for every `β`.
    pub fn stream_bound_holds(&self) -> bool {
        let n = self.successes.len() - 1;
        (1..=n).all(|b| self.successes[b] <= (n - b) as u64)
    }
}

/// One coupled trajectory.
#[derive(Clone, Debug, Serialize)]
pub struct CoupledRecord {
    pub record: SimulationRecord<Vec<u16>>,
    /// Successes observed on each value's stream, index `β`.
    pub successes: Vec<u64>,
    pub stream_bound_holds: bool,
}

/// Runs the coupled weak-order chain from `n(n-1)…1` until it reaches the
/// identity.
pub fn simulate_weak_chain(
    n: usize,
    params: &ChainParams,
    trial: u64,
    snapshot_times: &[u64],
) -> Result<CoupledRecord> {
    params.validate()?;
    let mut streams = BetaStreams::new(n, params.seed, trial);
    let mut s = Permutation::decreasing(n).0;
    let mut want = snapshot_times.to_vec();
    want.sort_unstable();
    want.dedup();
    let mut snaps = Vec::new();
    let mut next = 0;
    let mut steps = 0u64;
    let mut capped = false;
    let mut t = Vec::with_capacity(n);
    loop {
        while next < want.len() && want[next] == steps {
            snaps.push((steps, s.clone()));
            next += 1;
        }
        t.clear();
        for i in 1..s.len() {
            if s[i - 1] > s[i] && streams.next(s[i] as usize, params.p) {
                t.push(i);
            }
        }
        if s.windows(2).all(|w| w[0] < w[1]) {
            break;
        }
        if steps == params.step_cap {
            capped = true;
            break;
        }
        reverse_runs(&mut s, &t);
        steps += 1;
    }
    if !capped {
        for &time in &want[next..] {
            snaps.push((time, s.clone()));
        }
    }
    Ok(CoupledRecord {
        stream_bound_holds: streams.stream_bound_holds(),
        successes: streams.successes,
        record: SimulationRecord {
            steps,
            capped,
            snapshots: snaps,
            stream_index: trial,
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoupledSummary {
    pub stats: Statistics,
    pub stream_bound_violations: usize,
}

/// Mean absorption time of the coupled weak-order chain.
pub fn simulate_weak(n: usize, params: &ChainParams, exec: Executor) -> Result<CoupledSummary> {
    params.validate()?;
    let recs = exec.map(params.trials, |i| simulate_weak_chain(n, params, i as u64, &[]));
    let recs: Vec<CoupledRecord> = recs.into_iter().collect::<Result<_>>()?;
    summarize(&recs)
}

pub(crate) fn summarize(recs: &[CoupledRecord]) -> Result<CoupledSummary> {
    let outcomes: Vec<TrialOutcome> = recs
        .iter()
        .map(|r| TrialOutcome {
            value: r.record.steps,
            capped: r.record.capped,
        })
        .collect();
    let stats = Statistics::from_outcomes(&outcomes);
    stats.check_capped()?;
    Ok(CoupledSummary {
        stats,
        stream_bound_violations: recs.iter().filter(|r| !r.stream_bound_holds).count(),
    })
}
