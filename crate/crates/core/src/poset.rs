//! Finite posets stored as dense order tables, plus the standard constructions
//! used throughout: chains, antichains, rectangles, duals, induced subposets,
//! order ideals and isomorphism search.
//!
//! Elements are the integers `0..n`. Internally every poset also fixes a linear
//! extension; the up/down-set bitsets are indexed by position in that extension,
//! so that meets in a lattice are "highest common position" lookups.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::bitset::BitSet;
use crate::error::{check_cap, Error, Result};
use crate::lattice::FiniteLattice;

/// Default node budget for the isomorphism search.
pub const DEFAULT_ISO_BUDGET: usize = 5_000_000;

#[derive(Clone, Debug)]
pub struct FinitePoset {
    order: Vec<usize>,
    pos: Vec<usize>,
    down: Vec<BitSet>,
    up: Vec<BitSet>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
}

impl FinitePoset {
    /// Builds a poset from generating relations `(a, b)` meaning `a < b`.
    /// The pairs need not be covers; the cover relation is the transitive
    /// reduction of their closure.
    pub fn from_covers(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut succs: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::invalid(format!(
                    "relation ({a}, {b}) out of range for {n} elements"
                )));
            }
            if a == b {
                return Err(Error::Cyclic);
            }
            preds[b].push(a);
            succs[a].push(b);
        }
        for v in preds.iter_mut().chain(succs.iter_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        let order = topological_order(n, &preds, &succs)?;
        let mut pos = vec![0; n];
        for (k, &x) in order.iter().enumerate() {
            pos[x] = k;
        }
        let mut down = vec![BitSet::new(n); n];
        for &x in &order {
            let mut d = BitSet::new(n);
            d.insert(pos[x]);
            for &a in &preds[x] {
                d.union_with(&down[a]);
            }
            down[x] = d;
        }
        let mut up = vec![BitSet::new(n); n];
        for &x in order.iter().rev() {
            let mut u = BitSet::new(n);
            u.insert(pos[x]);
            for &b in &succs[x] {
                u.union_with(&up[b]);
            }
            up[x] = u;
        }
        // a is a cover of b iff no other generator a' below b lies above a
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for b in 0..n {
            for &a in &preds[b] {
                let redundant = preds[b]
                    .iter()
                    .any(|&a2| a2 != a && down[a2].contains(pos[a]));
                if !redundant {
                    lower[b].push(a);
                    upper[a].push(b);
                }
            }
        }
        for v in upper.iter_mut() {
            v.sort_unstable();
        }
        Ok(FinitePoset {
            order,
            pos,
            down,
            up,
            lower,
            upper,
        })
    }

    /// Builds a poset from an order predicate `leq(a, b)`, validating the
    /// partial-order axioms by exhaustive scan.
    pub fn from_relation(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut below: Vec<BitSet> = vec![BitSet::new(n); n];
        for b in 0..n {
            if !leq(b, b) {
                return Err(Error::invalid(format!("relation is not reflexive at {b}")));
            }
            for a in 0..n {
                if a != b && leq(a, b) {
                    if leq(b, a) {
                        return Err(Error::invalid(format!(
                            "relation is not antisymmetric at ({a}, {b})"
                        )));
                    }
                    below[b].insert(a);
                }
            }
        }
        for b in 0..n {
            for a in below[b].iter() {
                if !below[a].is_subset(&below[b]) {
                    return Err(Error::invalid(format!(
                        "relation is not transitive below ({a}, {b})"
                    )));
                }
            }
        }
        let mut relations = Vec::new();
        for b in 0..n {
            for a in below[b].iter() {
                // keep only covers: nothing strictly between a and b
                let between = below[b].iter().any(|c| c != a && below[c].contains(a));
                if !between {
                    relations.push((a, b));
                }
            }
        }
        Self::from_covers(n, &relations)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.order.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(self.pos[a])
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Elements covered by `x`.
    #[inline]
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    /// Elements covering `x`.
    #[inline]
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    /// All cover pairs `(a, b)` with `a ⋖ b`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.len())
            .flat_map(|b| self.lower[b].iter().map(move |&a| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    /// A linear extension: every element appears after everything below it.
    #[inline]
    pub fn linear_extension(&self) -> &[usize] {
        &self.order
    }

    #[inline]
    pub(crate) fn at_position(&self, k: usize) -> usize {
        self.order[k]
    }

    /// Down-set of `x` as a bitset over linear-extension positions.
    #[inline]
    pub(crate) fn down_bits(&self, x: usize) -> &BitSet {
        &self.down[x]
    }

    #[inline]
    pub(crate) fn up_bits(&self, x: usize) -> &BitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.down[x].iter().map(|k| self.order[k]).collect();
        v.sort_unstable();
        v
    }

    pub fn up_set(&self, x: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.up[x].iter().map(|k| self.order[k]).collect();
        v.sort_unstable();
        v
    }

    pub fn down_set_size(&self, x: usize) -> usize {
        self.down[x].count()
    }

    pub fn up_set_size(&self, x: usize) -> usize {
        self.up[x].count()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.lower[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.upper[x].is_empty()).collect()
    }

    /// Number of elements in a longest chain ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.len()];
        for &x in &self.order {
            h[x] = 1 + self.lower[x].iter().map(|&a| h[a]).max().unwrap_or(0);
        }
        h
    }

    /// Number of elements in a longest chain starting at each element.
    pub fn depths(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.len()];
        for &x in self.order.iter().rev() {
            d[x] = 1 + self.upper[x].iter().map(|&b| d[b]).max().unwrap_or(0);
        }
        d
    }

    /// Size of the largest chain.
    pub fn max_chain_size(&self) -> usize {
        self.heights().into_iter().max().unwrap_or(0)
    }

    /// Number of maximal chains, by dynamic programming over covers.
    pub fn count_maximal_chains(&self) -> u128 {
        if self.is_empty() {
            return 1;
        }
        let mut ways = vec![0u128; self.len()];
        for &x in &self.order {
            ways[x] = if self.lower[x].is_empty() {
                1
            } else {
                self.lower[x].iter().map(|&a| ways[a]).sum()
            };
        }
        self.maximal_elements().iter().map(|&x| ways[x]).sum()
    }

    /// Strict order relations `(a, b)`, `a < b`.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.len() {
            for k in self.down[b].iter() {
                let a = self.order[k];
                if a != b {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

fn topological_order(n: usize, preds: &[Vec<usize>], succs: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut indeg: Vec<usize> = preds.iter().map(Vec::len).collect();
    let mut ready: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&x| indeg[x] == 0)
        .map(std::cmp::Reverse)
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse(x)) = ready.pop() {
        order.push(x);
        for &b in &succs[x] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.push(std::cmp::Reverse(b));
            }
        }
    }
    if order.len() != n {
        return Err(Error::Cyclic);
    }
    Ok(order)
}

/// Chain `0 < 1 < … < n-1`.
pub fn chain(n: usize) -> FinitePoset {
    let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    FinitePoset::from_covers(n, &rel).expect("chain is acyclic")
}

/// `n` pairwise incomparable elements.
pub fn antichain(n: usize) -> FinitePoset {
    FinitePoset::from_covers(n, &[]).expect("antichain is acyclic")
}

/// Product of a `k`-element chain and an `l`-element chain. Element `(i, j)`
/// has id `i * l + j`.
pub fn rectangle_poset(k: usize, l: usize) -> Result<FinitePoset> {
    if k == 0 || l == 0 {
        return Err(Error::invalid("rectangle sides must be positive"));
    }
    let id = |i: usize, j: usize| i * l + j;
    let mut rel = Vec::with_capacity(2 * k * l);
    for i in 0..k {
        for j in 0..l {
            if i + 1 < k {
                rel.push((id(i, j), id(i + 1, j)));
            }
            if j + 1 < l {
                rel.push((id(i, j), id(i, j + 1)));
            }
        }
    }
    FinitePoset::from_covers(k * l, &rel)
}

/// Same elements, all relations reversed.
pub fn dual(p: &FinitePoset) -> FinitePoset {
    let rel: Vec<_> = p.covers().into_iter().map(|(a, b)| (b, a)).collect();
    FinitePoset::from_covers(p.len(), &rel).expect("dual of a poset is a poset")
}

/// Restriction of `p` to `subset`; element `k` of the result is `subset[k]`.
pub fn induced_subposet(p: &FinitePoset, subset: &[usize]) -> Result<FinitePoset> {
    let mut seen = HashSet::new();
    for &x in subset {
        if x >= p.len() || !seen.insert(x) {
            return Err(Error::invalid(format!("bad subset element {x}")));
        }
    }
    let mut rel = Vec::new();
    for (ib, &b) in subset.iter().enumerate() {
        for (ia, &a) in subset.iter().enumerate() {
            if a != b && p.leq(a, b) {
                rel.push((ia, ib));
            }
        }
    }
    FinitePoset::from_covers(subset.len(), &rel)
}

/// All maximal chains, each listed bottom to top. The empty poset has a single
/// empty maximal chain.
pub fn maximal_chains(p: &FinitePoset) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if p.is_empty() {
        out.push(Vec::new());
        return out;
    }
    let mut stack = Vec::new();
    fn walk(p: &FinitePoset, x: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        stack.push(x);
        if p.upper_covers(x).is_empty() {
            out.push(stack.clone());
        } else {
            for &y in p.upper_covers(x) {
                walk(p, y, stack, out);
            }
        }
        stack.pop();
    }
    for m in p.minimal_elements() {
        walk(p, m, &mut stack, &mut out);
    }
    out
}

/// A downward-closed set of elements of a poset, as a membership mask over
/// element ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderIdeal(BitSet);

impl OrderIdeal {
    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn len(&self) -> usize {
        self.0.count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn elements(&self) -> Vec<usize> {
        self.0.iter().collect()
    }

    pub fn is_subset(&self, other: &OrderIdeal) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Checks downward closure in `p`.
    pub fn is_ideal_of(&self, p: &FinitePoset) -> bool {
        self.0
            .iter()
            .all(|y| p.lower_covers(y).iter().all(|&x| self.0.contains(x)))
    }
}

/// Enumerates all order ideals of `p`, smallest first by size. Refuses once
/// more than `cap` ideals have been found.
pub fn order_ideals(p: &FinitePoset, cap: usize) -> Result<Vec<OrderIdeal>> {
    let n = p.len();
    let empty = OrderIdeal(BitSet::new(n));
    let mut index: HashMap<OrderIdeal, usize> = HashMap::new();
    let mut ideals = vec![empty.clone()];
    index.insert(empty, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let cur = ideals[i].clone();
        for x in 0..n {
            if cur.contains(x) || !p.lower_covers(x).iter().all(|&a| cur.contains(a)) {
                continue;
            }
            let mut next = cur.clone();
            next.0.insert(x);
            if !index.contains_key(&next) {
                check_cap("order ideals", ideals.len() + 1, cap)?;
                index.insert(next.clone(), ideals.len());
                queue.push_back(ideals.len());
                ideals.push(next);
            }
        }
    }
    Ok(ideals)
}

/// The distributive lattice `J(p)` of order ideals ordered by inclusion.
pub fn order_ideal_lattice(p: &FinitePoset, cap: usize) -> Result<FiniteLattice> {
    Ok(order_ideal_lattice_with_ideals(p, cap)?.0)
}

/// As [`order_ideal_lattice`], also returning the ideal behind each element.
pub fn order_ideal_lattice_with_ideals(
    p: &FinitePoset,
    cap: usize,
) -> Result<(FiniteLattice, Vec<OrderIdeal>)> {
    let ideals = order_ideals(p, cap)?;
    let index: HashMap<&OrderIdeal, usize> =
        ideals.iter().enumerate().map(|(k, i)| (i, k)).collect();
    let mut rel = Vec::new();
    for (k, ideal) in ideals.iter().enumerate() {
        for x in 0..p.len() {
            if !ideal.contains(x) && p.lower_covers(x).iter().all(|&a| ideal.contains(a)) {
                let mut next = ideal.clone();
                next.0.insert(x);
                rel.push((k, index[&next]));
            }
        }
    }
    let poset = FinitePoset::from_covers(ideals.len(), &rel)?;
    Ok((FiniteLattice::from_poset_unchecked(poset), ideals))
}

/// Poset isomorphism search by backtracking with invariant pruning.
/// Returns `map` with `map[x]` the image in `q` of element `x` of `p`.
pub fn find_isomorphism(
    p: &FinitePoset,
    q: &FinitePoset,
    budget: usize,
) -> Result<Option<Vec<usize>>> {
    if p.len() != q.len() {
        return Ok(None);
    }
    let n = p.len();
    let inv = |s: &FinitePoset| -> Vec<[usize; 6]> {
        let h = s.heights();
        let d = s.depths();
        (0..s.len())
            .map(|x| {
                [
                    s.down_set_size(x),
                    s.up_set_size(x),
                    s.lower_covers(x).len(),
                    s.upper_covers(x).len(),
                    h[x],
                    d[x],
                ]
            })
            .collect()
    };
    let ip = inv(p);
    let iq = inv(q);
    let mut sp = ip.clone();
    let mut sq = iq.clone();
    sp.sort_unstable();
    sq.sort_unstable();
    if sp != sq {
        return Ok(None);
    }
    let mut by_class: HashMap<[usize; 6], Vec<usize>> = HashMap::new();
    for y in 0..n {
        by_class.entry(iq[y]).or_default().push(y);
    }
    let order: Vec<usize> = p.linear_extension().to_vec();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut nodes = 0usize;

    struct Ctx<'a> {
        p: &'a FinitePoset,
        q: &'a FinitePoset,
        order: &'a [usize],
        ip: &'a [[usize; 6]],
        by_class: &'a HashMap<[usize; 6], Vec<usize>>,
        budget: usize,
    }

    fn go(
        c: &Ctx,
        k: usize,
        map: &mut [usize],
        used: &mut [bool],
        nodes: &mut usize,
    ) -> Result<bool> {
        if k == c.order.len() {
            return Ok(true);
        }
        let x = c.order[k];
        for &y in &c.by_class[&c.ip[x]] {
            if used[y] {
                continue;
            }
            *nodes += 1;
            check_cap("isomorphism search nodes", *nodes, c.budget)?;
            let ok = c.order[..k].iter().all(|&x2| {
                let y2 = map[x2];
                c.p.leq(x2, x) == c.q.leq(y2, y) && c.p.leq(x, x2) == c.q.leq(y, y2)
            });
            if !ok {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if go(c, k + 1, map, used, nodes)? {
                return Ok(true);
            }
            used[y] = false;
            map[x] = usize::MAX;
        }
        Ok(false)
    }

    let ctx = Ctx {
        p,
        q,
        order: &order,
        ip: &ip,
        by_class: &by_class,
        budget,
    };
    if go(&ctx, 0, &mut map, &mut used, &mut nodes)? {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

pub fn are_isomorphic(p: &FinitePoset, q: &FinitePoset) -> Result<bool> {
    Ok(find_isomorphism(p, q, DEFAULT_ISO_BUDGET)?.is_some())
}
