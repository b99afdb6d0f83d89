//! The Tamari lattice `Tam_n` as 312-avoiding permutations under the weak
//! order, with the projection `π↓ : S_n → Av_n(312)` and the coupled Ungarian
//! chain on it.
//!
//! An Ungar move in `Av_n(312)` with descent set `T` sends `x` to
//! `π↓(x · w0(T))`.

use std::collections::HashMap;

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{check_cap, Error, Result};
use crate::lattice::FiniteLattice;
use crate::poset::{self, FinitePoset};
use crate::sim::{ChainParams, Executor, SimulationRecord, Statistics, TrialOutcome};
use crate::ungar::UngarKernel;
use crate::weak::{all_permutations, reverse_runs, BetaStreams, Permutation};

/// A permutation certified to avoid 312.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Av312Permutation(Permutation);

impl Av312Permutation {
    pub fn new(p: Permutation) -> Result<Self> {
        if p.avoids_312() {
            Ok(Av312Permutation(p))
        } else {
            Err(Error::invalid(format!("{p} contains 312")))
        }
    }

    pub fn permutation(&self) -> &Permutation {
        &self.0
    }

    pub fn into_permutation(self) -> Permutation {
        self.0
    }
}

/// Positions `i` (1-based) where swapping `x(i)` and `x(i+1)` is allowable:
/// some `i' > i + 1` has `x(i+1) < x(i') < x(i)`.
pub fn allowable_swaps(x: &Permutation) -> Vec<usize> {
    let v = x.values();
    let n = v.len();
    (1..n)
        .filter(|&i| {
            let (a, b) = (v[i - 1], v[i]);
            a > b && v[i + 1..].iter().any(|&c| b < c && c < a)
        })
        .collect()
}

/// `π↓(x)`: insert the entries of `x` from right to left into a binary search
/// tree and read it in postorder.
pub fn pi_down(x: &Permutation) -> Av312Permutation {
    Av312Permutation(Permutation::from_values_unchecked(pi_down_values(x.values())))
}

pub(crate) fn pi_down_values(v: &[u16]) -> Vec<u16> {
    let n = v.len();
    if n == 0 {
        return Vec::new();
    }
    // children indexed by value
    let mut left = vec![0u16; n + 1];
    let mut right = vec![0u16; n + 1];
    let root = v[n - 1];
    for &val in v[..n - 1].iter().rev() {
        let mut cur = root;
        loop {
            let slot = if val < cur {
                &mut left[cur as usize]
            } else {
                &mut right[cur as usize]
            };
            if *slot == 0 {
                *slot = val;
                break;
            }
            cur = *slot;
        }
    }
    // iterative postorder
    let mut out = Vec::with_capacity(n);
    let mut stack: Vec<(u16, bool)> = vec![(root, false)];
    while let Some((node, expanded)) = stack.pop() {
        if expanded {
            out.push(node);
            continue;
        }
        stack.push((node, true));
        let (l, r) = (left[node as usize], right[node as usize]);
        if r != 0 {
            stack.push((r, false));
        }
        if l != 0 {
            stack.push((l, false));
        }
    }
    out
}

/// `π↓` by applying allowable swaps in a random order until none remain.
/// Slow; a reference for the tree-based version.
pub fn pi_down_reference<R: Rng + ?Sized>(x: &Permutation, rng: &mut R) -> Permutation {
    let mut v = x.values().to_vec();
    loop {
        let p = Permutation::from_values_unchecked(v.clone());
        let swaps = allowable_swaps(&p);
        match swaps.choose(rng) {
            Some(&i) => v.swap(i - 1, i),
            None => return p,
        }
    }
}

/// `π↓(x · w0(T))` for `T ⊆ Des(x)`.
pub fn tamari_ungar_move(x: &Av312Permutation, t: &[usize]) -> Result<Av312Permutation> {
    let moved = crate::weak::ungar_move(x.permutation(), t)?;
    Ok(pi_down(&moved))
}

/// One random Ungar move: each descent joins `T` with probability `p`.
pub fn tamari_random_ungar<R: Rng + ?Sized>(x: &Av312Permutation, p: f64, rng: &mut R) -> Av312Permutation {
    let t: Vec<usize> = x
        .permutation()
        .descents()
        .into_iter()
        .filter(|_| rng.random::<f64>() < p)
        .collect();
    tamari_ungar_move(x, &t).expect("subset of the descents")
}

/// `Av_n(312)` in lexicographic order.
pub fn av312_permutations(n: usize) -> Result<Vec<Permutation>> {
    check_cap("permutation size", n, 10)?;
    Ok(all_permutations(n).into_iter().filter(Permutation::avoids_312).collect())
}

/// `Av_n(312)` with the restriction of the weak order, built from the full
/// weak order on `S_n` and validated as a lattice.
pub fn av312_lattice(n: usize) -> Result<(FiniteLattice, Vec<Permutation>)> {
    let (weak, perms) = crate::weak::weak_lattice(n)?;
    let keep: Vec<usize> = (0..perms.len()).filter(|&i| perms[i].avoids_312()).collect();
    let sub = poset::induced_subposet(weak.poset(), &keep)?;
    Ok((
        FiniteLattice::from_poset(sub)?,
        keep.iter().map(|&i| perms[i].clone()).collect(),
    ))
}

/// The Ungarian chain on `Av_n(312)` as a kernel for the exact solvers:
/// choices at `x` are its descents.
pub struct TamariKernel {
    states: Vec<Permutation>,
    index: HashMap<Vec<u16>, usize>,
    descents: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl TamariKernel {
    pub fn new(n: usize, cap: usize) -> Result<Self> {
        let states = av312_permutations(n)?;
        check_cap("Av_n(312) size", states.len(), cap)?;
        let index = states
            .iter()
            .enumerate()
            .map(|(i, p)| (p.values().to_vec(), i))
            .collect();
        let descents = states.iter().map(Permutation::descents).collect();
        let mut order: Vec<usize> = (0..states.len()).collect();
        order.sort_by_key(|&i| states[i].inversions());
        Ok(TamariKernel {
            states,
            index,
            descents,
            order,
        })
    }

    pub fn states(&self) -> &[Permutation] {
        &self.states
    }
}

impl UngarKernel for TamariKernel {
    fn num_states(&self) -> usize {
        self.states.len()
    }

    fn start(&self) -> usize {
        self.index[&Permutation::decreasing(self.states[0].len()).values().to_vec()]
    }

    fn absorbing(&self) -> usize {
        self.index[&Permutation::identity(self.states[0].len()).values().to_vec()]
    }

    fn order(&self) -> Vec<usize> {
        self.order.clone()
    }

    fn num_choices(&self, x: usize) -> usize {
        self.descents[x].len()
    }

    fn for_each_move(&self, x: usize, f: &mut dyn FnMut(usize, usize)) {
        let des = &self.descents[x];
        let mut t = Vec::with_capacity(des.len());
        for mask in 0u64..(1 << des.len()) {
            t.clear();
            t.extend((0..des.len()).filter(|&k| mask >> k & 1 == 1).map(|k| des[k]));
            let mut v = self.states[x].values().to_vec();
            reverse_runs(&mut v, &t);
            let target = self.index[&pi_down_values(&v)];
            f(t.len(), target);
        }
    }
}

/// One coupled trajectory of the Tamari chain.
#[derive(Clone, Debug, Serialize)]
pub struct TamariRecord {
    pub record: SimulationRecord<Vec<u16>>,
    pub successes: Vec<u64>,
    pub stream_bound_holds: bool,
    /// `DB(σ_{t+1}) ⊆ DB(σ_t)` at every step.
    pub db_monotone: bool,
}

fn descent_bottom_mask(v: &[u16]) -> Vec<bool> {
    let mut m = vec![false; v.len() + 1];
    for w in v.windows(2) {
        if w[0] > w[1] {
            m[w[1] as usize] = true;
        }
    }
    m
}

/// Runs the chain from `n(n-1)…1`. A descent with bottom value `β` joins
/// `T_t` when the next draw on stream `β` succeeds.
pub fn simulate_tamari_chain(
    n: usize,
    params: &ChainParams,
    trial: u64,
    snapshot_times: &[u64],
) -> Result<TamariRecord> {
    params.validate()?;
    if n == 0 || n > u16::MAX as usize {
        return Err(Error::invalid("n must lie in 1..=65535"));
    }
    let mut streams = BetaStreams::new(n, params.seed, trial);
    let mut s: Vec<u16> = (1..=n as u16).rev().collect();
    let mut want = snapshot_times.to_vec();
    want.sort_unstable();
    want.dedup();
    let mut snaps = Vec::new();
    let mut next = 0;
    let mut steps = 0u64;
    let mut capped = false;
    let mut db_monotone = true;
    let mut db = descent_bottom_mask(&s);
    let mut t = Vec::with_capacity(n);
    loop {
        while next < want.len() && want[next] == steps {
            snaps.push((steps, s.clone()));
            next += 1;
        }
        if s.windows(2).all(|w| w[0] < w[1]) {
            break;
        }
        if steps == params.step_cap {
            capped = true;
            break;
        }
        t.clear();
        for i in 1..s.len() {
            if s[i - 1] > s[i] && streams.next(s[i] as usize, params.p) {
                t.push(i);
            }
        }
        reverse_runs(&mut s, &t);
        s = pi_down_values(&s);
        let new_db = descent_bottom_mask(&s);
        db_monotone &= new_db.iter().zip(&db).all(|(&a, &b)| !a || b);
        db = new_db;
        steps += 1;
    }
    if !capped {
        for &time in &want[next..] {
            snaps.push((time, s.clone()));
        }
    }
    Ok(TamariRecord {
        stream_bound_holds: streams.stream_bound_holds(),
        successes: streams.successes,
        db_monotone,
        record: SimulationRecord {
            steps,
            capped,
            snapshots: snaps,
            stream_index: trial,
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TamariSummary {
    pub stats: Statistics,
    pub stream_bound_violations: usize,
    pub db_violations: usize,
}

/// Mean absorption time of the Tamari chain on `Av_n(312)`.
pub fn simulate_tamari(n: usize, params: &ChainParams, exec: Executor) -> Result<TamariSummary> {
    params.validate()?;
    let recs = exec.map(params.trials, |i| simulate_tamari_chain(n, params, i as u64, &[]));
    let recs: Vec<TamariRecord> = recs.into_iter().collect::<Result<_>>()?;
    let outcomes: Vec<TrialOutcome> = recs
        .iter()
        .map(|r| TrialOutcome {
            value: r.record.steps,
            capped: r.record.capped,
        })
        .collect();
    let stats = Statistics::from_outcomes(&outcomes);
    stats.check_capped()?;
    Ok(TamariSummary {
        stats,
        stream_bound_violations: recs.iter().filter(|r| !r.stream_bound_holds).count(),
        db_violations: recs.iter().filter(|r| !r.db_monotone).count(),
    })
}

/// The weak-order poset on `Av_n(312)` without the lattice check.
pub fn av312_poset(n: usize) -> Result<FinitePoset> {
    let perms = av312_permutations(n)?;
    FinitePoset::from_relation(perms.len(), |a, b| perms[a].weak_leq(&perms[b]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::cambrian::{cambrian_lattice, DEFAULT_GROUP_CAP};
    use crate::coxeter::CoxeterSpec;
    use crate::poset::find_isomorphism;
    use crate::sim::trial_rng;
    use crate::tamari::{nu_tamari_lattice, LatticePath, Nu};
    use crate::ungar::{exact_expected_steps_linear, pop, solve_kernel_linear, ExactCaps};
    use crate::weak::pop_permutation;
    use crate::Probability;
    use num_rational::BigRational;
    use rand::seq::SliceRandom;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn projection_examples() {
        assert_eq!(pi_down(&perm("312")).permutation(), &perm("132"));
        assert_eq!(allowable_swaps(&perm("312")), vec![1]);
        for p in av312_permutations(5).unwrap() {
            assert_eq!(pi_down(&p).permutation(), &p);
            assert!(allowable_swaps(&p).is_empty());
        }
        assert!(Av312Permutation::new(perm("312")).is_err());
    }

    #[test]
    fn projection_is_order_independent() {
        let mut rng = trial_rng(5, 0);
        for _ in 0..200 {
            let mut v: Vec<u16> = (1..=7).collect();
            v.shuffle(&mut rng);
            let x = Permutation::new(v).unwrap();
            let a = pi_down_reference(&x, &mut rng);
            let b = pi_down_reference(&x, &mut rng);
            assert_eq!(a, b);
            assert_eq!(pi_down(&x).permutation(), &a, "{x}");
            assert!(a.avoids_312());
            assert!(a.weak_leq(&x));
        }
    }

    #[test]
    fn db_and_lrmax_partition() {
        for n in 1..=7 {
            for p in av312_permutations(n).unwrap() {
                let mut all = p.descent_bottoms();
                all.extend(p.lr_maxima());
                all.sort_unstable();
                assert_eq!(all, (1..=n).collect::<Vec<_>>(), "{p}");
            }
        }
    }

    #[test]
    fn three_tamari_models_agree() {
        for n in 1..=5 {
            let (av, perms) = av312_lattice(n).unwrap();
            let spec_ok = n >= 2;
            let tam = nu_tamari_lattice(&Nu::new(LatticePath::m_tamari(n, 1)).unwrap(), 1000).unwrap();
            assert!(find_isomorphism(av.poset(), tam.lattice.poset(), 1_000_000).unwrap().is_some());
            if spec_ok {
                let spec = CoxeterSpec::a(n - 1);
                let c: Vec<usize> = (1..n).collect();
                let camb = cambrian_lattice(&spec, &c, DEFAULT_GROUP_CAP).unwrap();
                assert!(find_isomorphism(av.poset(), camb.lattice.poset(), 1_000_000)
                    .unwrap()
                    .is_some());
            }
            // Ungar moves inside Av_n(312) are projected weak-order moves
            let index: HashMap<&Permutation, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
            for (i, p) in perms.iter().enumerate() {
                let x = Av312Permutation::new(p.clone()).unwrap();
                let projected = pi_down(&pop_permutation(p));
                assert_eq!(index[projected.permutation()], pop(&av, i));
                assert_eq!(&tamari_ungar_move(&x, &p.descents()).unwrap(), &projected);
            }
        }
    }

    #[test]
    fn kernel_matches_lattice_solver() {
        let p: Probability = "1/2".parse().unwrap();
        for n in 2..=5 {
            let (av, _) = av312_lattice(n).unwrap();
            let a: BigRational = exact_expected_steps_linear(&av, &p).unwrap();
            let k = TamariKernel::new(n, 10_000).unwrap();
            let b: BigRational = solve_kernel_linear(&k, p.exact(), ExactCaps::default()).unwrap();
            assert_eq!(a, b, "n = {n}");
        }
    }

    #[test]
    fn coupled_simulation() {
        let params = ChainParams::new(0.5, 11, 4000);
        let s = simulate_tamari(4, &params, Executor::Parallel).unwrap();
        let k = TamariKernel::new(4, 1000).unwrap();
        let exact: f64 = solve_kernel_linear(&k, &0.5, ExactCaps::default()).unwrap();
        assert!(s.stats.within_sigma(exact, 3.0), "{:?} vs {exact}", s.stats);
        assert_eq!(s.stream_bound_violations, 0);
        assert_eq!(s.db_violations, 0);
        let seq = simulate_tamari(4, &params, Executor::Sequential).unwrap();
        assert_eq!(seq.stats, s.stats);
        let rec = simulate_tamari_chain(60, &ChainParams::new(0.5, 2, 1), 0, &[0, 1, 5]).unwrap();
        assert!(rec.db_monotone && rec.stream_bound_holds);
        assert_eq!(rec.record.snapshots[0].1, (1..=60u16).rev().collect::<Vec<_>>());
    }

    #[test]
    fn p_one_is_pop() {
        let params = ChainParams::new(1.0, 0, 1);
        let rec = simulate_tamari_chain(6, &params, 0, &[0, 1, 2, 3, 4, 5, 6]).unwrap();
        let mut x = Permutation::decreasing(6);
        for (t, v) in &rec.record.snapshots {
            if *t > 0 {
                x = pi_down(&pop_permutation(&x)).into_permutation();
            }
            assert_eq!(x.values(), v.as_slice());
        }
    }
}
