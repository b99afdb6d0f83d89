//! Finite Coxeter groups of types A, B, D and I₂(m) through concrete models,
//! Coxeter elements and orientations, c-sorting words and heaps.
//!
//! Models:
//! - `A_n`: permutations of `[n+1]`, generators `s_1..s_n`, `s_i = (i i+1)`.
//! - `B_n`: signed permutations of `[n]`, generators `s_0..s_{n-1}`; `s_0`
//!   negates the first entry, `s_i` swaps entries `i, i+1`.
//! - `D_n`: signed permutations with an even number of negatives, generators
//!   `s_0..s_{n-1}`; `s_0 = [-2, -1, 3, …, n]`.
//! - `I₂(m)`: generators `s = 0`, `t = 1`; an element is its alternating
//!   reduced word, stored as `[length, first letter]`.
//!
//! Right multiplication acts on positions, left multiplication on values.

pub mod cambrian;
pub mod embedding;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{check_cap, Error, Result};
use crate::poset::FinitePoset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CoxeterType {
    A,
    B,
    D,
    I2,
}

/// Type tag plus rank (`m` for `I₂(m)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CoxeterSpec {
    pub kind: CoxeterType,
    pub rank: usize,
}

impl CoxeterSpec {
    pub fn new(kind: CoxeterType, rank: usize) -> Result<Self> {
        let ok = match kind {
            CoxeterType::A => rank >= 1,
            CoxeterType::B => rank >= 2,
            CoxeterType::D => rank >= 4,
            CoxeterType::I2 => rank >= 2,
        };
        if !ok {
            return Err(Error::invalid(format!("{kind:?} with parameter {rank} is not supported")));
        }
        if rank > 200 {
            return Err(Error::invalid("rank too large"));
        }
        Ok(CoxeterSpec { kind, rank })
    }

    pub fn a(n: usize) -> Self {
        Self::new(CoxeterType::A, n).expect("valid rank")
    }

    pub fn b(n: usize) -> Self {
        Self::new(CoxeterType::B, n).expect("valid rank")
    }

    pub fn d(n: usize) -> Self {
        Self::new(CoxeterType::D, n).expect("valid rank")
    }

    pub fn i2(m: usize) -> Self {
        Self::new(CoxeterType::I2, m).expect("valid m")
    }

    /// Generator labels in increasing order.
    pub fn generators(&self) -> Vec<usize> {
        match self.kind {
            CoxeterType::A => (1..=self.rank).collect(),
            CoxeterType::B | CoxeterType::D => (0..self.rank).collect(),
            CoxeterType::I2 => vec![0, 1],
        }
    }

    pub fn num_generators(&self) -> usize {
        match self.kind {
            CoxeterType::I2 => 2,
            _ => self.rank,
        }
    }

    /// Row of a generator in heap drawings: `s_i` sits at height `i` in
    /// type A and at `i + 1` in types B and D, so the bottom row is 1.
    pub fn level(&self, s: usize) -> usize {
        match self.kind {
            CoxeterType::B | CoxeterType::D => s + 1,
            _ => s,
        }
    }

    /// `m(a, b)`: order of `ab`.
    pub fn m(&self, a: usize, b: usize) -> usize {
        if a == b {
            return 1;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        match self.kind {
            CoxeterType::A => {
                if hi == lo + 1 {
                    3
                } else {
                    2
                }
            }
            CoxeterType::B => match (lo, hi) {
                (0, 1) => 4,
                _ if hi == lo + 1 => 3,
                _ => 2,
            },
            CoxeterType::D => match (lo, hi) {
                (0, 2) => 3,
                (0, _) => 2,
                _ if hi == lo + 1 => 3,
                _ => 2,
            },
            CoxeterType::I2 => self.rank,
        }
    }

    /// Edges `{a, b}` (`a < b`) of the Coxeter graph.
    pub fn graph_edges(&self) -> Vec<(usize, usize)> {
        let g = self.generators();
        let mut out = Vec::new();
        for (i, &a) in g.iter().enumerate() {
            for &b in &g[i + 1..] {
                if self.m(a, b) >= 3 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn coxeter_number(&self) -> usize {
        match self.kind {
            CoxeterType::A => self.rank + 1,
            CoxeterType::B => 2 * self.rank,
            CoxeterType::D => 2 * self.rank - 2,
            CoxeterType::I2 => self.rank,
        }
    }

    /// `ψ(s) = w0 s w0`.
    pub fn psi(&self, s: usize) -> usize {
        match self.kind {
            CoxeterType::A => self.rank + 1 - s,
            CoxeterType::B => s,
            CoxeterType::D => {
                if self.rank % 2 == 1 && s <= 1 {
                    1 - s
                } else {
                    s
                }
            }
            CoxeterType::I2 => {
                if self.rank % 2 == 1 {
                    1 - s
                } else {
                    s
                }
            }
        }
    }

    /// Group order.
    pub fn order(&self) -> u128 {
        let fact = |k: usize| (1..=k as u128).product::<u128>();
        match self.kind {
            CoxeterType::A => fact(self.rank + 1),
            CoxeterType::B => fact(self.rank) << self.rank,
            CoxeterType::D => fact(self.rank) << (self.rank - 1),
            CoxeterType::I2 => 2 * self.rank as u128,
        }
    }

    pub fn generator_name(&self, s: usize) -> String {
        match self.kind {
            CoxeterType::I2 => ["s", "t"][s].to_string(),
            _ => format!("s{s}"),
        }
    }

    fn check_generator(&self, s: usize) -> Result<()> {
        if self.generators().contains(&s) {
            Ok(())
        } else {
            Err(Error::invalid(format!("{s} is not a generator of {self}")))
        }
    }

    pub fn check_word(&self, word: &[usize]) -> Result<()> {
        word.iter().try_for_each(|&s| self.check_generator(s))
    }

    /// Validates that `word` uses every generator exactly once.
    pub fn check_coxeter_word(&self, word: &[usize]) -> Result<()> {
        self.check_word(word)?;
        let mut sorted = word.to_vec();
        sorted.sort_unstable();
        if sorted != self.generators() {
            return Err(Error::invalid(format!(
                "a Coxeter element must use each generator of {self} once"
            )));
        }
        Ok(())
    }

    pub fn identity(&self) -> GroupElement {
        match self.kind {
            CoxeterType::A => GroupElement((1..=self.rank as i16 + 1).collect()),
            CoxeterType::B | CoxeterType::D => GroupElement((1..=self.rank as i16).collect()),
            CoxeterType::I2 => GroupElement(vec![0, 0]),
        }
    }

    pub fn length(&self, w: &GroupElement) -> usize {
        let v = &w.0;
        let inv = || -> usize {
            (0..v.len())
                .map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count())
                .sum()
        };
        match self.kind {
            CoxeterType::A => inv(),
            CoxeterType::B => {
                let neg: i64 = v.iter().filter(|&&x| x < 0).map(|&x| -(x as i64)).sum();
                inv() + neg as usize
            }
            CoxeterType::D => {
                let neg: i64 = v.iter().filter(|&&x| x < 0).map(|&x| -(x as i64) - 1).sum();
                inv() + neg as usize
            }
            CoxeterType::I2 => v[0] as usize,
        }
    }

    /// `w · s`.
    pub fn right_mul(&self, w: &GroupElement, s: usize) -> GroupElement {
        let mut v = w.0.clone();
        match self.kind {
            CoxeterType::A => v.swap(s - 1, s),
            CoxeterType::B => {
                if s == 0 {
                    v[0] = -v[0];
                } else {
                    v.swap(s - 1, s);
                }
            }
            CoxeterType::D => {
                if s == 0 {
                    let (a, b) = (v[0], v[1]);
                    v[0] = -b;
                    v[1] = -a;
                } else {
                    v.swap(s - 1, s);
                }
            }
            CoxeterType::I2 => return self.i2_mul(w, s, false),
        }
        GroupElement(v)
    }

    /// `s · w`.
    pub fn left_mul(&self, s: usize, w: &GroupElement) -> GroupElement {
        let mut v = w.0.clone();
        match self.kind {
            CoxeterType::A => {
                let (a, b) = (s as i16, s as i16 + 1);
                for x in v.iter_mut() {
                    if *x == a {
                        *x = b;
                    } else if *x == b {
                        *x = a;
                    }
                }
            }
            CoxeterType::B | CoxeterType::D => {
                let map = |x: i16| -> i16 {
                    let (sign, a) = (x.signum(), x.abs());
                    if s == 0 {
                        if self.kind == CoxeterType::B {
                            if a == 1 {
                                -x
                            } else {
                                x
                            }
                        } else {
                            match a {
                                1 => -2 * sign,
                                2 => -sign,
                                _ => x,
                            }
                        }
                    } else if a == s as i16 {
                        sign * (a + 1)
                    } else if a == s as i16 + 1 {
                        sign * (a - 1)
                    } else {
                        x
                    }
                };
                for x in v.iter_mut() {
                    *x = map(*x);
                }
            }
            CoxeterType::I2 => return self.i2_mul(w, s, true),
        }
        GroupElement(v)
    }

    /// Dihedral multiplication on alternating normal forms `[k, first]`.
    fn i2_mul(&self, w: &GroupElement, s: usize, left: bool) -> GroupElement {
        let m = self.rank as i16;
        let (k, first) = (w.0[0], w.0[1]);
        let s = s as i16;
        let norm = |k: i16, f: i16| -> GroupElement {
            if k == 0 || k == m {
                GroupElement(vec![k, 0])
            } else {
                GroupElement(vec![k, f])
            }
        };
        if left {
            if k == 0 {
                return norm(1, s);
            }
            // w0 starts with both letters
            if k == m {
                return norm(m - 1, 1 - s);
            }
            if first == s {
                norm(k - 1, 1 - s)
            } else {
                norm(k + 1, s)
            }
        } else {
            if k == 0 {
                return norm(1, s);
            }
            if k == m {
                // w0 = u · s with u of length m-1 ending in the other letter
                let f = if (m - 1) % 2 == 1 { 1 - s } else { s };
                return norm(m - 1, f);
            }
            let last = if k % 2 == 1 { first } else { 1 - first };
            if last == s {
                norm(k - 1, first)
            } else {
                norm(k + 1, first)
            }
        }
    }

    pub fn is_left_descent(&self, s: usize, w: &GroupElement) -> bool {
        self.length(&self.left_mul(s, w)) < self.length(w)
    }

    pub fn is_right_descent(&self, w: &GroupElement, s: usize) -> bool {
        self.length(&self.right_mul(w, s)) < self.length(w)
    }

    /// Product of a word, left to right.
    pub fn evaluate(&self, word: &[usize]) -> Result<GroupElement> {
        self.check_word(word)?;
        Ok(word
            .iter()
            .fold(self.identity(), |w, &s| self.right_mul(&w, s)))
    }

    /// All elements by breadth-first search over right multiplication, so
    /// they come out in order of length.
    pub fn elements(&self, cap: usize) -> Result<Vec<GroupElement>> {
        let order = self.order();
        check_cap("Coxeter group order", order.min(usize::MAX as u128) as usize, cap)?;
        let mut seen: HashMap<GroupElement, ()> = HashMap::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([self.identity()]);
        seen.insert(self.identity(), ());
        while let Some(w) = queue.pop_front() {
            for s in self.generators() {
                let ws = self.right_mul(&w, s);
                if seen.insert(ws.clone(), ()).is_none() {
                    queue.push_back(ws);
                }
            }
            out.push(w);
        }
        Ok(out)
    }

    /// Longest element, by climbing right ascents.
    pub fn longest_element(&self) -> GroupElement {
        let mut w = self.identity();
        loop {
            match self
                .generators()
                .into_iter()
                .find(|&s| !self.is_right_descent(&w, s))
            {
                Some(s) => w = self.right_mul(&w, s),
                None => return w,
            }
        }
    }
}

impl fmt::Display for CoxeterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CoxeterType::I2 => write!(f, "I2({})", self.rank),
            k => write!(f, "{:?}{}", k, self.rank),
        }
    }
}

impl FromStr for CoxeterSpec {
    type Err = Error;

    /// `"A3"`, `"B4"`, `"D5"`, `"I2(7)"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::invalid(format!("cannot parse Coxeter type {s:?}"));
        if let Some(rest) = s.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            return Self::new(CoxeterType::I2, rest.parse().map_err(|_| bad())?);
        }
        let (head, tail) = s.split_at(1.min(s.len()));
        let kind = match head {
            "A" | "a" => CoxeterType::A,
            "B" | "b" => CoxeterType::B,
            "D" | "d" => CoxeterType::D,
            _ => return Err(bad()),
        };
        Self::new(kind, tail.parse().map_err(|_| bad())?)
    }
}

/// Concrete group element; see the module docs for the encoding.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement(pub Vec<i16>);

/// Orientation of the Coxeter graph: one directed edge `(from, to)` per edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orientation {
    pub arrows: Vec<(usize, usize)>,
}

impl Orientation {
    /// Parses `"1>2,3>2"`; each token `a>b` (or `s_a>s_b`) orients `{a, b}` from `a` to `b`.
    pub fn parse(spec: &CoxeterSpec, s: &str) -> Result<Self> {
        let mut arrows = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (a, b) = tok
                .split_once('>')
                .ok_or_else(|| Error::invalid(format!("bad arrow {tok:?}")))?;
            let num = |x: &str| -> Result<usize> {
                let x = x.trim().trim_start_matches("s_").trim_start_matches('s');
                match x {
                    "t" => Ok(1),
                    "" => Ok(0),
                    _ => x.parse().map_err(|_| Error::invalid(format!("bad generator {x:?}"))),
                }
            };
            arrows.push((num(a)?, num(b)?));
        }
        Self::new(spec, arrows)
    }

    pub fn new(spec: &CoxeterSpec, mut arrows: Vec<(usize, usize)>) -> Result<Self> {
        let mut undirected: Vec<(usize, usize)> =
            arrows.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        undirected.sort_unstable();
        if undirected != spec.graph_edges() {
            return Err(Error::invalid(format!(
                "an orientation of {spec} must direct each of the edges {:?} exactly once",
                spec.graph_edges()
            )));
        }
        arrows.sort_unstable_by_key(|&(a, b)| (a.min(b), a.max(b)));
        Ok(Orientation { arrows })
    }

    pub fn to_string_arrows(&self) -> String {
        let parts: Vec<String> = self.arrows.iter().map(|(a, b)| format!("{a}>{b}")).collect();
        parts.join(",")
    }
}

/// A reduced word for the Coxeter element of an orientation: the
/// lexicographically smallest linear extension of the induced order.
pub fn coxeter_element(spec: &CoxeterSpec, o: &Orientation) -> Result<Vec<usize>> {
    let gens = spec.generators();
    let idx = |s: usize| gens.iter().position(|&g| g == s).expect("generator");
    let rel: Vec<_> = o.arrows.iter().map(|&(a, b)| (idx(a), idx(b))).collect();
    let p = FinitePoset::from_covers(gens.len(), &rel)?;
    Ok(p.linear_extension().iter().map(|&k| gens[k]).collect())
}

/// Orientation induced by a Coxeter word: `{a, b}` points from the earlier letter.
pub fn orientation_of(spec: &CoxeterSpec, c: &[usize]) -> Result<Orientation> {
    spec.check_coxeter_word(c)?;
    let pos = |s: usize| c.iter().position(|&x| x == s).expect("letter present");
    let arrows = spec
        .graph_edges()
        .into_iter()
        .map(|(a, b)| if pos(a) < pos(b) { (a, b) } else { (b, a) })
        .collect();
    Orientation::new(spec, arrows)
}

/// All orientations of the Coxeter graph.
pub fn all_orientations(spec: &CoxeterSpec) -> Vec<Orientation> {
    let edges = spec.graph_edges();
    (0u64..(1 << edges.len()))
        .map(|mask| Orientation {
            arrows: edges
                .iter()
                .enumerate()
                .map(|(k, &(a, b))| if mask >> k & 1 == 0 { (a, b) } else { (b, a) })
                .collect(),
        })
        .collect()
}

/// Number of path edges `{s_i, s_{i+1}}` oriented upward. For type D the edge
/// `{s_0, s_2}` and the edge `{s_0, s_1}`-free fork are ignored (only
/// `1 ≤ i ≤ n-2` counts); for type B the `{s_0, s_1}` edge counts.
pub fn r_statistic(spec: &CoxeterSpec, o: &Orientation) -> usize {
    o.arrows
        .iter()
        .filter(|&&(a, b)| {
            b == a + 1
                && match spec.kind {
                    CoxeterType::D => a >= 1,
                    _ => true,
                }
        })
        .count()
}

/// Edges in a longest directed path of the orientation.
pub fn u_statistic(spec: &CoxeterSpec, o: &Orientation) -> Result<usize> {
    let c = coxeter_element(spec, o)?;
    Ok(heap(spec, &c)?.max_chain_size().saturating_sub(1))
}

/// The c-sorting word of `w`, split into the rounds it uses of `c^∞`.
pub fn sorting_rounds(spec: &CoxeterSpec, c: &[usize], w: &GroupElement) -> Result<Vec<Vec<usize>>> {
    spec.check_coxeter_word(c)?;
    let mut y = w.clone();
    let mut len = spec.length(&y);
    let mut rounds = Vec::new();
    while len > 0 {
        let mut round = Vec::new();
        for &s in c {
            let sy = spec.left_mul(s, &y);
            let l = spec.length(&sy);
            if l < len {
                round.push(s);
                y = sy;
                len = l;
            }
        }
        rounds.push(round);
    }
    Ok(rounds)
}

pub fn sorting_word(spec: &CoxeterSpec, c: &[usize], w: &GroupElement) -> Result<Vec<usize>> {
    Ok(sorting_rounds(spec, c, w)?.concat())
}

/// Supports of the rounds of `sort_c(w)` are weakly decreasing.
pub fn is_c_sortable(spec: &CoxeterSpec, c: &[usize], w: &GroupElement) -> Result<bool> {
    let rounds = sorting_rounds(spec, c, w)?;
    Ok(rounds.windows(2).all(|pair| {
        pair[1].iter().all(|s| pair[0].contains(s))
    }))
}

/// Heap of a word: letters ordered by the transitive closure of
/// `i < j` whenever the letters at `i` and `j` do not commute.
pub fn heap(spec: &CoxeterSpec, word: &[usize]) -> Result<FinitePoset> {
    spec.check_word(word)?;
    let mut rel = Vec::new();
    for j in 0..word.len() {
        for i in 0..j {
            if spec.m(word[i], word[j]) != 2 {
                rel.push((i, j));
            }
        }
    }
    FinitePoset::from_covers(word.len(), &rel)
}

/// Whether two words lie in one commutation class: for every non-commuting
/// pair of generators (a generator with itself included) the subsequences
/// restricted to that pair coincide.
pub fn commutation_equivalent(spec: &CoxeterSpec, u: &[usize], v: &[usize]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    let gens = spec.generators();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i..] {
            if spec.m(a, b) == 2 {
                continue;
            }
            let ru: Vec<usize> = u.iter().copied().filter(|&x| x == a || x == b).collect();
            let rv: Vec<usize> = v.iter().copied().filter(|&x| x == a || x == b).collect();
            if ru != rv {
                return false;
            }
        }
    }
    true
}

/// Parses `"s3s2s1"`, `"3,2,1"` or `"s t"`-style words.
pub fn parse_word(spec: &CoxeterSpec, s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let mut out = Vec::new();
    if s.contains(',') || s.contains(' ') {
        for tok in s.split([',', ' ']).filter(|t| !t.is_empty()) {
            out.push(parse_letter(tok)?);
        }
    } else if spec.kind == CoxeterType::I2 && s.chars().all(|ch| ch == 's' || ch == 't') {
        out = s.chars().map(|ch| usize::from(ch == 't')).collect();
    } else {
        for tok in s.split('s').filter(|t| !t.is_empty()) {
            out.push(parse_letter(tok.trim_start_matches('_'))?);
        }
    }
    spec.check_word(&out)?;
    Ok(out)
}

fn parse_letter(tok: &str) -> Result<usize> {
    let t = tok.trim().trim_start_matches("s_").trim_start_matches('s');
    if t == "t" {
        return Ok(1);
    }
    t.parse()
        .map_err(|_| Error::invalid(format!("bad generator {tok:?}")))
}

pub fn format_word(spec: &CoxeterSpec, w: &[usize]) -> String {
    w.iter().map(|&s| spec.generator_name(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bfs_lengths(spec: &CoxeterSpec) -> HashMap<GroupElement, usize> {
        let mut dist = HashMap::new();
        dist.insert(spec.identity(), 0);
        let mut q = VecDeque::from([spec.identity()]);
        while let Some(w) = q.pop_front() {
            let d = dist[&w];
            for s in spec.generators() {
                let ws = spec.right_mul(&w, s);
                if !dist.contains_key(&ws) {
                    dist.insert(ws.clone(), d + 1);
                    q.push_back(ws);
                }
            }
        }
        dist
    }

    #[test]
    fn models_have_right_order_and_length() {
        for spec in [
            CoxeterSpec::a(1),
            CoxeterSpec::a(3),
            CoxeterSpec::b(2),
            CoxeterSpec::b(3),
            CoxeterSpec::d(4),
            CoxeterSpec::i2(2),
            CoxeterSpec::i2(5),
            CoxeterSpec::i2(6),
        ] {
            let dist = bfs_lengths(&spec);
            assert_eq!(dist.len() as u128, spec.order(), "{spec}");
            for (w, &d) in &dist {
                assert_eq!(spec.length(w), d, "{spec} {w:?}");
                for s in spec.generators() {
                    // left and right multiplication are involutions and commute
                    let sw = spec.left_mul(s, w);
                    assert_eq!(spec.left_mul(s, &sw), *w);
                    assert!(dist.contains_key(&sw));
                    for t in spec.generators() {
                        assert_eq!(
                            spec.right_mul(&spec.left_mul(s, w), t),
                            spec.left_mul(s, &spec.right_mul(w, t))
                        );
                    }
                }
            }
            let w0 = spec.longest_element();
            let max = dist.values().copied().max().unwrap();
            assert_eq!(spec.length(&w0), max);
        }
    }

    #[test]
    fn coxeter_relations_hold() {
        for spec in [CoxeterSpec::a(4), CoxeterSpec::b(4), CoxeterSpec::d(5), CoxeterSpec::i2(7)] {
            for a in spec.generators() {
                for b in spec.generators() {
                    let m = spec.m(a, b);
                    let word: Vec<usize> = (0..m).flat_map(|_| [a, b]).collect();
                    assert_eq!(spec.evaluate(&word).unwrap(), spec.identity(), "{spec} {a} {b}");
                    for k in 1..m {
                        let word: Vec<usize> = (0..k).flat_map(|_| [a, b]).collect();
                        assert_ne!(spec.evaluate(&word).unwrap(), spec.identity());
                    }
                }
            }
        }
    }

    #[test]
    fn r_statistics_of_examples() {
        let b7 = CoxeterSpec::b(7);
        let c = parse_word(&b7, "s1s0s2s3s5s4s6").unwrap();
        assert_eq!(r_statistic(&b7, &orientation_of(&b7, &c).unwrap()), 4);
        let d6 = CoxeterSpec::d(6);
        let c = parse_word(&d6, "s0s3s2s1s5s4").unwrap();
        assert_eq!(r_statistic(&d6, &orientation_of(&d6, &c).unwrap()), 1);
        let a3 = CoxeterSpec::a(3);
        let c = parse_word(&a3, "s1s3s2").unwrap();
        assert_eq!(r_statistic(&a3, &orientation_of(&a3, &c).unwrap()), 1);
    }

    #[test]
    fn orientation_round_trip() {
        for spec in [CoxeterSpec::a(4), CoxeterSpec::b(4), CoxeterSpec::d(5)] {
            for o in all_orientations(&spec) {
                let c = coxeter_element(&spec, &o).unwrap();
                assert_eq!(orientation_of(&spec, &c).unwrap(), o);
            }
        }
        let a3 = CoxeterSpec::a(3);
        let o = Orientation::parse(&a3, "1>2,3>2").unwrap();
        assert_eq!(coxeter_element(&a3, &o).unwrap(), vec![1, 3, 2]);
        assert!(Orientation::parse(&a3, "1>2").is_err());
        assert!(Orientation::parse(&a3, "1>3,3>2").is_err());
    }

    #[test]
    fn sorting_words_of_long_elements() {
        let a9 = CoxeterSpec::a(9);
        let c = parse_word(&a9, "s3s2s1s4s5s7s6s8s9").unwrap();
        let w = sorting_word(&a9, &c, &a9.longest_element()).unwrap();
        let mut expect: Vec<usize> = (0..4).flat_map(|_| c.clone()).collect();
        expect.extend(parse_word(&a9, "s3s2s1s4s5s3s2s1s4").unwrap());
        assert_eq!(w, expect);
        let b7 = CoxeterSpec::b(7);
        let c = parse_word(&b7, "s1s0s2s3s5s4s6").unwrap();
        let w = sorting_word(&b7, &c, &b7.longest_element()).unwrap();
        assert_eq!(w, (0..7).flat_map(|_| c.clone()).collect::<Vec<_>>());
        assert!(sorting_word(&b7, &c, &b7.identity()).unwrap().is_empty());
    }

    #[test]
    fn heaps_and_commutation() {
        let a3 = CoxeterSpec::a(3);
        let h = heap(&a3, &[1, 3, 2]).unwrap();
        assert_eq!(h.covers(), vec![(0, 2), (1, 2)]);
        assert!(commutation_equivalent(&a3, &[1, 3, 2], &[3, 1, 2]));
        assert!(!commutation_equivalent(&a3, &[1, 2, 3], &[2, 1, 3]));
    }

    #[test]
    fn parse_specs() {
        assert_eq!("A3".parse::<CoxeterSpec>().unwrap(), CoxeterSpec::a(3));
        assert_eq!("I2(7)".parse::<CoxeterSpec>().unwrap(), CoxeterSpec::i2(7));
        assert!("D3".parse::<CoxeterSpec>().is_err());
        assert!("E6".parse::<CoxeterSpec>().is_err());
        let i = CoxeterSpec::i2(4);
        assert_eq!(parse_word(&i, "st").unwrap(), vec![0, 1]);
    }
}
