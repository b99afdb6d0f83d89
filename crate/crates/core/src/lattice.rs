//! Finite lattices: meets and joins, irreducibles, κ, the Galois graph and
//! poset of a trim lattice, classification predicates and the spine.

use crate::error::{check_cap, Error, Result};
use crate::poset::{self, FinitePoset};

/// Largest lattice `classify` will look at unless told otherwise.
pub const DEFAULT_CLASSIFY_CAP: usize = 2_000;

#[derive(Clone, Debug)]
pub struct FiniteLattice {
    poset: FinitePoset,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Validates that `poset` is a lattice: a unique top, a unique bottom and a
    /// greatest lower bound for every pair.
    pub fn from_poset(poset: FinitePoset) -> Result<Self> {
        let maxs = poset.maximal_elements();
        if maxs.len() != 1 {
            return Err(Error::NoTop);
        }
        let mins = poset.minimal_elements();
        if mins.len() != 1 {
            return Err(Error::NoBottom);
        }
        let n = poset.len();
        for x in 0..n {
            for y in (x + 1)..n {
                let (dx, dy) = (poset.down_bits(x), poset.down_bits(y));
                let k = dx
                    .highest_common(dy)
                    .expect("bottom lies below everything");
                let m = poset.at_position(k);
                if !dx.intersection_equals(dy, poset.down_bits(m)) {
                    return Err(Error::NotALattice(x, y, "meet"));
                }
            }
        }
        Ok(FiniteLattice {
            bottom: mins[0],
            top: maxs[0],
            poset,
        })
    }

    /// For builders whose output is a lattice by construction.
    pub(crate) fn from_poset_unchecked(poset: FinitePoset) -> Self {
        let bottom = poset.linear_extension()[0];
        let top = *poset.linear_extension().last().expect("nonempty lattice");
        debug_assert_eq!(poset.minimal_elements(), vec![bottom]);
        debug_assert_eq!(poset.maximal_elements(), vec![top]);
        FiniteLattice { poset, bottom, top }
    }

    /// Builds and validates a lattice from generating relations `(a, b)`, `a < b`.
    pub fn from_cover_relations(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a lattice needs at least one element"));
        }
        Self::from_poset(FinitePoset::from_covers(n, covers)?)
    }

    #[inline]
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.poset.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        self.poset.lower_covers(x)
    }

    #[inline]
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        self.poset.upper_covers(x)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        let p = &self.poset;
        let k = p
            .down_bits(x)
            .highest_common(p.down_bits(y))
            .expect("lattice has a bottom");
        p.at_position(k)
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        let p = &self.poset;
        let k = p
            .up_bits(x)
            .lowest_common(p.up_bits(y))
            .expect("lattice has a top");
        p.at_position(k)
    }

    /// Meet of `x` with every element of `others`.
    pub fn meet_all(&self, x: usize, others: impl IntoIterator<Item = usize>) -> usize {
        others.into_iter().fold(x, |acc, y| self.meet(acc, y))
    }

    /// Join of a set; the empty join is `0̂`.
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, y| self.join(acc, y))
    }

    pub fn is_join_irreducible(&self, x: usize) -> bool {
        self.lower_covers(x).len() == 1
    }

    pub fn is_meet_irreducible(&self, x: usize) -> bool {
        self.upper_covers(x).len() == 1
    }

    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.is_join_irreducible(x))
            .collect()
    }

    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.is_meet_irreducible(x))
            .collect()
    }

    /// Longest cover-path length from `0̂` to each element.
    pub fn ranks_from_bottom(&self) -> Vec<usize> {
        self.poset.heights().into_iter().map(|h| h - 1).collect()
    }

    /// Longest cover-path length from each element to `1̂`.
    pub fn ranks_to_top(&self) -> Vec<usize> {
        self.poset.depths().into_iter().map(|d| d - 1).collect()
    }

    /// Length (number of covers) of a longest chain.
    pub fn length(&self) -> usize {
        self.ranks_from_bottom()[self.top]
    }

    /// The interval `[u, v]` and the ids of its elements in `self`.
    pub fn interval(&self, u: usize, v: usize) -> Result<(FiniteLattice, Vec<usize>)> {
        if !self.leq(u, v) {
            return Err(Error::invalid(format!("{u} is not below {v}")));
        }
        let elems: Vec<usize> = (0..self.len())
            .filter(|&z| self.leq(u, z) && self.leq(z, v))
            .collect();
        let sub = poset::induced_subposet(&self.poset, &elems)?;
        Ok((FiniteLattice::from_poset_unchecked(sub), elems))
    }

    /// Principal down-set `[0̂, x]`.
    pub fn down_interval(&self, x: usize) -> Result<(FiniteLattice, Vec<usize>)> {
        self.interval(self.bottom, x)
    }

    pub fn dual(&self) -> FiniteLattice {
        FiniteLattice::from_poset_unchecked(poset::dual(&self.poset))
    }

    /// True when `subset` is closed under meet and join.
    pub fn is_sublattice(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.len()];
        for &x in subset {
            member[x] = true;
        }
        subset.iter().all(|&x| {
            subset
                .iter()
                .all(|&y| member[self.meet(x, y)] && member[self.join(x, y)])
        })
    }

    /// Exhaustive check that meet/join are the greatest lower / least upper
    /// bounds. Cubic; meant for tests.
    pub fn check_bounds(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                let m = self.meet(x, y);
                let j = self.join(x, y);
                if !(self.leq(m, x) && self.leq(m, y) && self.leq(x, j) && self.leq(y, j)) {
                    return Err(Error::Verification(format!("bounds at ({x}, {y})")));
                }
                for z in 0..n {
                    if self.leq(z, x) && self.leq(z, y) && !self.leq(z, m) {
                        return Err(Error::Verification(format!("meet not greatest at ({x}, {y})")));
                    }
                    if self.leq(x, z) && self.leq(y, z) && !self.leq(j, z) {
                        return Err(Error::Verification(format!("join not least at ({x}, {y})")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Join-irreducibles with their lower covers, meet-irreducibles with their
/// upper covers, and κ as an index map from the first list into the second.
#[derive(Clone, Debug)]
pub struct IrreducibleData {
    pub join_irreducibles: Vec<usize>,
    pub lower_cover: Vec<usize>,
    pub meet_irreducibles: Vec<usize>,
    pub upper_cover: Vec<usize>,
    pub kappa: Vec<usize>,
}

impl IrreducibleData {
    /// κ as element ids, parallel to `join_irreducibles`.
    pub fn kappa_elements(&self) -> Vec<usize> {
        self.kappa
            .iter()
            .map(|&k| self.meet_irreducibles[k])
            .collect()
    }
}

/// κ(j): the unique meet-irreducible `m` with `j ∧ m = j_*` and `j ∨ m = m^*`.
pub fn kappa(l: &FiniteLattice, j: usize) -> Result<usize> {
    if !l.is_join_irreducible(j) {
        return Err(Error::invalid(format!("{j} is not join-irreducible")));
    }
    let j_star = l.lower_covers(j)[0];
    let candidates: Vec<usize> = l
        .meet_irreducibles()
        .into_iter()
        .filter(|&m| l.meet(j, m) == j_star && l.join(j, m) == l.upper_covers(m)[0])
        .collect();
    match candidates.as_slice() {
        [m] => Ok(*m),
        _ => Err(Error::KappaUndefined {
            element: j,
            candidates: candidates.len(),
        }),
    }
}

pub fn irreducible_data(l: &FiniteLattice) -> Result<IrreducibleData> {
    let join_irreducibles = l.join_irreducibles();
    let meet_irreducibles = l.meet_irreducibles();
    let lower_cover = join_irreducibles
        .iter()
        .map(|&j| l.lower_covers(j)[0])
        .collect();
    let upper_cover = meet_irreducibles
        .iter()
        .map(|&m| l.upper_covers(m)[0])
        .collect();
    let mut index = vec![usize::MAX; l.len()];
    for (k, &m) in meet_irreducibles.iter().enumerate() {
        index[m] = k;
    }
    let kappa = join_irreducibles
        .iter()
        .map(|&j| kappa(l, j).map(|m| index[m]))
        .collect::<Result<Vec<_>>>()?;
    let mut seen = vec![false; meet_irreducibles.len()];
    for &k in &kappa {
        if std::mem::replace(&mut seen[k], true) {
            return Err(Error::Verification("kappa is not injective".into()));
        }
    }
    Ok(IrreducibleData {
        join_irreducibles,
        lower_cover,
        meet_irreducibles,
        upper_cover,
        kappa,
    })
}

/// Galois graph on the join-irreducibles; vertex `k` is
/// `vertices[k]`, and `(a, b)` in `arrows` means an arrow `vertices[a] → vertices[b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisGraph {
    pub vertices: Vec<usize>,
    pub arrows: Vec<(usize, usize)>,
}

pub fn galois_graph(l: &FiniteLattice) -> Result<GaloisGraph> {
    let data = irreducible_data(l)?;
    let kap = data.kappa_elements();
    let js = &data.join_irreducibles;
    let mut arrows = Vec::new();
    for (a, &j) in js.iter().enumerate() {
        for (b, _) in js.iter().enumerate() {
            if a != b && !l.leq(j, kap[b]) {
                arrows.push((a, b));
            }
        }
    }
    Ok(GaloisGraph {
        vertices: js.clone(),
        arrows,
    })
}

/// Galois poset: `j ⪯ j'` iff the Galois graph has a path from `j'` to `j`.
/// Element `k` of the result is `galois_graph(l).vertices[k]`.
pub fn galois_poset(l: &FiniteLattice) -> Result<FinitePoset> {
    let g = galois_graph(l)?;
    let rel: Vec<_> = g.arrows.iter().map(|&(a, b)| (b, a)).collect();
    FinitePoset::from_covers(g.vertices.len(), &rel).map_err(|e| match e {
        Error::Cyclic => Error::GaloisCycle,
        other => other,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Classification {
    pub is_graded: bool,
    pub is_distributive: bool,
    pub is_extremal: bool,
    pub is_left_modular: bool,
    pub is_trim: bool,
}

pub fn classify(l: &FiniteLattice) -> Result<Classification> {
    classify_with_cap(l, DEFAULT_CLASSIFY_CAP)
}

pub fn classify_with_cap(l: &FiniteLattice, cap: usize) -> Result<Classification> {
    check_cap("lattice size for classification", l.len(), cap)?;
    let is_graded = is_graded(l);
    let is_distributive = is_distributive(l);
    let length = l.length();
    let is_extremal =
        length == l.join_irreducibles().len() && length == l.meet_irreducibles().len();
    let is_left_modular = is_left_modular(l);
    Ok(Classification {
        is_graded,
        is_distributive,
        is_extremal,
        is_left_modular,
        is_trim: is_extremal && is_left_modular,
    })
}

/// All maximal chains have the same length iff the shortest and longest
/// cover paths from `0̂` to `1̂` agree.
pub fn is_graded(l: &FiniteLattice) -> bool {
    let mut shortest = vec![usize::MAX; l.len()];
    shortest[l.bottom()] = 0;
    for &x in l.poset().linear_extension() {
        for &y in l.upper_covers(x) {
            shortest[y] = shortest[y].min(shortest[x] + 1);
        }
    }
    shortest[l.top()] == l.length()
}

/// A finite lattice is distributive iff every join-irreducible `j` is
/// join-prime, i.e. the join of everything not above `j` is still not above `j`.
pub fn is_distributive(l: &FiniteLattice) -> bool {
    l.join_irreducibles().into_iter().all(|j| {
        let rest = (0..l.len()).filter(|&x| !l.leq(j, x));
        !l.leq(j, l.join_all(rest))
    })
}

/// Direct cubic check of `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`.
pub fn is_distributive_bruteforce(l: &FiniteLattice) -> bool {
    let n = l.len();
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| l.meet(x, l.join(y, z)) == l.join(l.meet(x, y), l.meet(x, z)))
        })
    })
}

/// `x` is left modular iff `(y ∨ x) ∧ z = y ∨ (x ∧ z)` for all `y ≤ z`.
pub fn is_left_modular_element(l: &FiniteLattice, x: usize) -> bool {
    let n = l.len();
    (0..n).all(|z| {
        let xz = l.meet(x, z);
        l.poset()
            .down_set(z)
            .into_iter()
            .all(|y| l.meet(l.join(y, x), z) == l.join(y, xz))
    })
}

/// Searches for a maximal chain of left-modular elements, walking up covers
/// from `0̂` and testing each element at most once.
pub fn is_left_modular(l: &FiniteLattice) -> bool {
    let n = l.len();
    // 0 = unknown, 1 = left modular, 2 = not
    let mut lm = vec![0u8; n];
    let mut dead = vec![false; n];
    let check = |x: usize, lm: &mut Vec<u8>| -> bool {
        if lm[x] == 0 {
            lm[x] = if is_left_modular_element(l, x) { 1 } else { 2 };
        }
        lm[x] == 1
    };
    // 0̂ and 1̂ are always left modular, but go through the check for uniformity
    if !check(l.bottom(), &mut lm) {
        return false;
    }
    let mut stack = vec![l.bottom()];
    let mut visited = vec![false; n];
    visited[l.bottom()] = true;
    while let Some(x) = stack.pop() {
        if x == l.top() {
            return true;
        }
        for &y in l.upper_covers(x) {
            if !visited[y] && !dead[y] {
                visited[y] = true;
                if check(y, &mut lm) {
                    stack.push(y);
                } else {
                    dead[y] = true;
                }
            }
        }
    }
    false
}

/// The spine as a lattice together with the ids of its elements in `l`.
#[derive(Clone, Debug)]
pub struct Spine {
    pub lattice: FiniteLattice,
    pub elements: Vec<usize>,
}

/// Elements lying on some maximum-length chain.
pub fn spine_elements(l: &FiniteLattice) -> Vec<usize> {
    let up = l.ranks_from_bottom();
    let down = l.ranks_to_top();
    let len = l.length();
    (0..l.len()).filter(|&x| up[x] + down[x] == len).collect()
}

/// The spine with the induced order. Fails when the induced order is not a
/// lattice, which cannot happen for trim input.
pub fn spine(l: &FiniteLattice) -> Result<Spine> {
    let elements = spine_elements(l);
    let sub = poset::induced_subposet(l.poset(), &elements)?;
    Ok(Spine {
        lattice: FiniteLattice::from_poset(sub)?,
        elements,
    })
}

/// Constructs `J(P(L))` and an order isomorphism from it onto `spine(L)`.
/// `Ok(None)` means no isomorphism exists.
pub fn verify_spine_isomorphism(
    l: &FiniteLattice,
    ideal_cap: usize,
) -> Result<Option<Vec<usize>>> {
    let gp = galois_poset(l)?;
    let j = crate::poset::order_ideal_lattice(&gp, ideal_cap)?;
    let s = spine(l)?;
    let map = poset::find_isomorphism(j.poset(), s.lattice.poset(), poset::DEFAULT_ISO_BUDGET)?;
    Ok(map.map(|m| m.into_iter().map(|k| s.elements[k]).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{antichain, chain, order_ideal_lattice};

    fn diamond() -> FiniteLattice {
        FiniteLattice::from_cover_relations(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn pentagon() -> FiniteLattice {
        // 0 < a=1 < b=2 < 1̂=4, 0 < c=3 < 1̂
        FiniteLattice::from_cover_relations(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap()
    }

    fn chain_lattice(k: usize) -> FiniteLattice {
        FiniteLattice::from_poset(chain(k)).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            FiniteLattice::from_cover_relations(2, &[]),
            Err(Error::NoTop)
        ));
        // two incomparable middle pairs: no meet of the two upper ones
        let bowtie = FiniteLattice::from_cover_relations(
            6,
            &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 5), (4, 5)],
        );
        assert!(matches!(bowtie, Err(Error::NotALattice(..))));
        let d = diamond();
        d.check_bounds().unwrap();
        assert_eq!(d.meet(1, 2), 0);
        assert_eq!(d.join(1, 2), 3);
    }

    #[test]
    fn kappa_on_small_lattices() {
        let d = diamond();
        assert_eq!(kappa(&d, 1).unwrap(), 2);
        assert_eq!(kappa(&d, 2).unwrap(), 1);
        // chain 0 < 1 < 2: J = {1, 2}, M = {0, 1}
        let c = chain_lattice(3);
        assert_eq!(kappa(&c, 1).unwrap(), 0);
        assert_eq!(kappa(&c, 2).unwrap(), 1);
        // M3 is not trim and κ is not defined on it
        let m3 =
            FiniteLattice::from_cover_relations(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
                .unwrap();
        assert!(matches!(kappa(&m3, 1), Err(Error::KappaUndefined { .. })));
    }

    #[test]
    fn galois_structures() {
        let d = diamond();
        let g = galois_graph(&d).unwrap();
        assert!(g.arrows.is_empty());
        let gp = galois_poset(&d).unwrap();
        assert_eq!(gp.relations(), vec![]);
        // a chain's Galois poset is again a chain, one element shorter
        let c = chain_lattice(5);
        let gp = galois_poset(&c).unwrap();
        assert_eq!(gp.len(), 4);
        assert_eq!(gp.max_chain_size(), 4);
        let p = pentagon();
        assert_eq!(galois_poset(&p).unwrap().len(), 3);
    }

    #[test]
    fn classification() {
        let b3 = order_ideal_lattice(&antichain(3), 100).unwrap();
        let c = classify(&b3).unwrap();
        assert!(c.is_distributive && c.is_trim && c.is_graded && c.is_extremal);
        let p = pentagon();
        let c = classify(&p).unwrap();
        assert!(!c.is_graded && !c.is_distributive);
        assert!(c.is_trim);
        let m3 =
            FiniteLattice::from_cover_relations(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
                .unwrap();
        let c = classify(&m3).unwrap();
        assert!(c.is_graded && !c.is_distributive && !c.is_extremal);
        assert!(!is_distributive_bruteforce(&m3));
        assert!(is_distributive_bruteforce(&b3));
    }

    #[test]
    fn spine_of_pentagon_is_long_side() {
        let p = pentagon();
        assert_eq!(spine_elements(&p), vec![0, 1, 2, 4]);
        let s = spine(&p).unwrap();
        assert_eq!(s.lattice.len(), 4);
        assert!(verify_spine_isomorphism(&p, 1000).unwrap().is_some());
        let b3 = order_ideal_lattice(&antichain(3), 100).unwrap();
        assert_eq!(spine_elements(&b3).len(), 8);
        assert!(verify_spine_isomorphism(&b3, 1000).unwrap().is_some());
    }

    #[test]
    fn intervals_and_dual() {
        let b3 = order_ideal_lattice(&antichain(3), 100).unwrap();
        let (iv, elems) = b3.interval(b3.bottom(), b3.upper_covers(b3.bottom())[0]).unwrap();
        assert_eq!(iv.len(), 2);
        assert_eq!(elems.len(), 2);
        let p = pentagon();
        let d = p.dual();
        assert_eq!(d.top(), p.bottom());
        assert!(d.check_bounds().is_ok());
        assert!(p.is_sublattice(&spine_elements(&p)));
    }
}
