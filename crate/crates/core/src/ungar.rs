//! Ungar moves, the Ungarian Markov chain on a finite lattice, and exact
//! expected absorption times.

use std::collections::HashMap;

use rand::Rng;

use crate::error::{check_cap, Error, Result};
use crate::lattice::FiniteLattice;
use crate::prob::{subset_weights, Probability, Scalar};

/// Largest cover set whose subsets are enumerated.
pub const DEFAULT_SUBSET_CAP: usize = 20;
/// Largest lattice the exact solvers accept.
pub const DEFAULT_EXACT_CAP: usize = 20_000;

#[derive(Clone, Copy, Debug)]
pub struct ExactCaps {
    pub states: usize,
    pub subset: usize,
}

impl Default for ExactCaps {
    fn default() -> Self {
        ExactCaps {
            states: DEFAULT_EXACT_CAP,
            subset: DEFAULT_SUBSET_CAP,
        }
    }
}

/// `∧({x} ∪ T)` with each element of `cov(x)` placed in `T` with probability `p`.
pub fn random_ungar_move<R: Rng + ?Sized>(l: &FiniteLattice, x: usize, p: f64, rng: &mut R) -> usize {
    let mut y = x;
    for &c in l.lower_covers(x) {
        if rng.random::<f64>() < p {
            y = l.meet(y, c);
        }
    }
    y
}

/// Maximal Ungar move: `∧({x} ∪ cov(x))`.
pub fn pop(l: &FiniteLattice, x: usize) -> usize {
    l.meet_all(x, l.lower_covers(x).iter().copied())
}

/// Number of Pop iterations from `1̂` to `0̂`.
pub fn pop_orbit_length(l: &FiniteLattice) -> usize {
    let mut x = l.top();
    let mut steps = 0;
    while x != l.bottom() {
        x = pop(l, x);
        steps += 1;
    }
    steps
}

/// A chain on states `0..num_states()` whose step from `x` picks a random
/// subset of `num_choices(x)` items, each independently with probability `p`,
/// and moves to a target that depends only on the subset. The empty subset
/// keeps `x` in place; every nonempty subset strictly lowers `x` in
/// `order()`.
pub trait UngarKernel: Sync {
    fn num_states(&self) -> usize;
    fn start(&self) -> usize;
    fn absorbing(&self) -> usize;
    /// States listed so that every move goes to an earlier state.
    fn order(&self) -> Vec<usize>;
    fn num_choices(&self, x: usize) -> usize;
    /// Calls `f(|T|, target)` once for every subset `T` of the choices at `x`.
    fn for_each_move(&self, x: usize, f: &mut dyn FnMut(usize, usize));
}

impl UngarKernel for FiniteLattice {
    fn num_states(&self) -> usize {
        self.len()
    }

    fn start(&self) -> usize {
        self.top()
    }

    fn absorbing(&self) -> usize {
        self.bottom()
    }

    fn order(&self) -> Vec<usize> {
        self.poset().linear_extension().to_vec()
    }

    fn num_choices(&self, x: usize) -> usize {
        self.lower_covers(x).len()
    }

    fn for_each_move(&self, x: usize, f: &mut dyn FnMut(usize, usize)) {
        // depth-first over subsets, carrying the running meet
        fn go(
            l: &FiniteLattice,
            covers: &[usize],
            k: usize,
            size: usize,
            acc: usize,
            f: &mut dyn FnMut(usize, usize),
        ) {
            if k == covers.len() {
                f(size, acc);
                return;
            }
            go(l, covers, k + 1, size, acc, f);
            go(l, covers, k + 1, size + 1, l.meet(acc, covers[k]), f);
        }
        go(self, self.lower_covers(x), 0, 0, x, f);
    }
}

/// `P(x → y)` for every reachable `y`, sorted by `y`. Subsets are aggregated by
/// target and size before weighting.
pub fn kernel_distribution<K: UngarKernel + ?Sized, S: Scalar>(
    kernel: &K,
    x: usize,
    p: &S,
    subset_cap: usize,
) -> Result<Vec<(usize, S)>> {
    let k = kernel.num_choices(x);
    check_cap("cover-set size for subset enumeration", k, subset_cap)?;
    let weights = subset_weights(p, k);
    let mut counts: HashMap<usize, Vec<u64>> = HashMap::new();
    kernel.for_each_move(x, &mut |size, y| {
        counts.entry(y).or_insert_with(|| vec![0; k + 1])[size] += 1;
    });
    let mut out: Vec<(usize, S)> = counts
        .into_iter()
        .map(|(y, c)| {
            let w = c
                .iter()
                .enumerate()
                .filter(|&(_, &n)| n > 0)
                .fold(S::zero(), |acc, (s, &n)| acc + S::from_u64(n) * weights[s].clone());
            (y, w)
        })
        .collect();
    out.sort_by_key(|&(y, _)| y);
    Ok(out)
}

pub fn transition_distribution<S: Scalar>(
    l: &FiniteLattice,
    x: usize,
    p: &Probability,
) -> Result<Vec<(usize, S)>> {
    kernel_distribution(l, x, &S::from_probability(p), DEFAULT_SUBSET_CAP)
}

/// Expected absorption time from `start()`, solving the triangular system
/// `h(x) = 1 + Σ_y P(x→y) h(y)` in `order()`.
pub fn solve_kernel_linear<K: UngarKernel + ?Sized, S: Scalar>(
    kernel: &K,
    p: &S,
    caps: ExactCaps,
) -> Result<S> {
    check_cap("states for exact solve", kernel.num_states(), caps.states)?;
    let mut h: Vec<Option<S>> = vec![None; kernel.num_states()];
    for x in kernel.order() {
        if x == kernel.absorbing() {
            h[x] = Some(S::zero());
            continue;
        }
        let dist = kernel_distribution(kernel, x, p, caps.subset)?;
        let mut stay = S::zero();
        let mut acc = S::one();
        for (y, w) in dist {
            if y == x {
                stay = w;
            } else {
                let hy = h[y].clone().ok_or_else(|| {
                    Error::Verification(format!("move {x} -> {y} goes forward in the order"))
                })?;
                acc = acc + w * hy;
            }
        }
        let leave = S::one() - stay;
        assert!(leave > S::zero(), "every transient state can move down when p > 0");
        h[x] = Some(acc / leave);
    }
    Ok(h[kernel.start()].clone().expect("start state solved"))
}

pub fn exact_expected_steps_linear<S: Scalar>(l: &FiniteLattice, p: &Probability) -> Result<S> {
    solve_kernel_linear(l, &S::from_probability(p), ExactCaps::default())
}

/// Memoized recursion over principal down-sets with raw subset enumeration:
/// `E(Δ(x)) = (1 + Σ_{T≠∅} p^|T| (1-p)^(k-|T|) E(Δ(∧({x}∪T)))) / (1 - (1-p)^k)`.
pub fn exact_expected_steps_recursive<S: Scalar>(l: &FiniteLattice, p: &Probability) -> Result<S> {
    let caps = ExactCaps::default();
    check_cap("states for exact solve", l.len(), caps.states)?;
    let p = S::from_probability(p);
    let mut memo: HashMap<usize, S> = HashMap::new();
    memo.insert(l.bottom(), S::zero());
    down_set_value(l, l.top(), &p, caps.subset, &mut memo)
}

fn down_set_value<S: Scalar>(
    l: &FiniteLattice,
    x: usize,
    p: &S,
    subset_cap: usize,
    memo: &mut HashMap<usize, S>,
) -> Result<S> {
    if let Some(v) = memo.get(&x) {
        return Ok(v.clone());
    }
    let cov = l.lower_covers(x).to_vec();
    let k = cov.len();
    check_cap("cover-set size for subset enumeration", k, subset_cap)?;
    let weights = subset_weights(p, k);
    let mut acc = S::one();
    for mask in 1u64..(1u64 << k) {
        let y = l.meet_all(x, (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| cov[i]));
        let e = down_set_value(l, y, p, subset_cap, memo)?;
        acc = acc + weights[mask.count_ones() as usize].clone() * e;
    }
    let q = S::one() - p.clone();
    let stay = (0..k).fold(S::one(), |a, _| a * q.clone());
    let v = acc / (S::one() - stay);
    memo.insert(x, v.clone());
    Ok(v)
}

pub use crate::weak::min_nontrivial_ungar_moves;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{antichain, chain, order_ideal_lattice};
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn diamond() -> FiniteLattice {
        FiniteLattice::from_cover_relations(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn pop_and_trivial_moves() {
        let d = diamond();
        assert_eq!(pop(&d, 3), 0);
        assert_eq!(pop(&d, 0), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert_eq!(random_ungar_move(&d, 0, 0.5, &mut rng), 0);
            assert_eq!(random_ungar_move(&d, 3, 1.0, &mut rng), 0);
            let y = random_ungar_move(&d, 3, 0.3, &mut rng);
            assert!(d.leq(y, 3));
        }
    }

    #[test]
    fn diamond_distribution_is_uniform_at_half() {
        let d = diamond();
        let p: Probability = "1/2".parse().unwrap();
        let dist: Vec<(usize, BigRational)> = transition_distribution(&d, 3, &p).unwrap();
        assert_eq!(dist.len(), 4);
        for (_, w) in dist {
            assert_eq!(w, rat(1, 4));
        }
        let dist: Vec<(usize, BigRational)> = transition_distribution(&d, 1, &p).unwrap();
        assert_eq!(dist, vec![(0, rat(1, 2)), (1, rat(1, 2))]);
    }

    #[test]
    fn chain_and_boolean_closed_forms() {
        let p: Probability = "1/3".parse().unwrap();
        for r in 0..8 {
            let c = FiniteLattice::from_poset(chain(r + 1)).unwrap();
            let e: BigRational = exact_expected_steps_linear(&c, &p).unwrap();
            assert_eq!(e, rat(3 * r as i64, 1));
        }
        let half: Probability = "1/2".parse().unwrap();
        let b2 = order_ideal_lattice(&antichain(2), 10).unwrap();
        let e: BigRational = exact_expected_steps_linear(&b2, &half).unwrap();
        assert_eq!(e, rat(8, 3));
        let e2: BigRational = exact_expected_steps_recursive(&b2, &half).unwrap();
        assert_eq!(e2, rat(8, 3));
    }

    #[test]
    fn p_one_counts_pop_orbit() {
        let one: Probability = "1".parse().unwrap();
        let b3 = order_ideal_lattice(&antichain(3), 10).unwrap();
        let e: f64 = exact_expected_steps_linear(&b3, &one).unwrap();
        assert_eq!(e, pop_orbit_length(&b3) as f64);
        assert_eq!(e, 1.0);
        let single = FiniteLattice::from_poset(chain(1)).unwrap();
        let e: f64 = exact_expected_steps_recursive(&single, &one).unwrap();
        assert_eq!(e, 0.0);
    }

    #[test]
    fn subset_cap_is_enforced() {
        let b = order_ideal_lattice(&antichain(4), 100).unwrap();
        let p = 0.5f64;
        let err = kernel_distribution(&b, b.top(), &p, 3).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }
}
