//! ν-Tamari lattices as lattice paths and as ν-bracket vectors, the grid
//! poset `Cells(ν)`, and the explicit join-irreducibles and κ.
//!
//! Submodules hold the `Av_n(312)` model of the ordinary Tamari lattice
//! ([`av312`]) and the numerics for the maximum of geometric variables
//! ([`bruss`]).

pub mod av312;
pub mod bruss;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{check_cap, Error, Result};
use crate::lattice::{self, FiniteLattice};
use crate::poset::FinitePoset;

pub const DEFAULT_TAMARI_CAP: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Step {
    N,
    E,
}

/// A word over `{N, E}`, read as a path from `(0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticePath(pub Vec<Step>);

impl LatticePath {
    /// `(NE^m)^n`.
    pub fn m_tamari(n: usize, m: usize) -> Self {
        let mut v = Vec::new();
        for _ in 0..n {
            v.push(Step::N);
            v.extend(std::iter::repeat_n(Step::E, m));
        }
        LatticePath(v)
    }

    /// All `2^len` paths with `len` steps (`len ≤ 20`).
    pub fn all_of_length(len: usize) -> Result<Vec<LatticePath>> {
        check_cap("path length for enumeration", len, 20)?;
        Ok((0u32..(1 << len))
            .map(|mask| {
                LatticePath(
                    (0..len)
                        .map(|k| if mask >> k & 1 == 1 { Step::N } else { Step::E })
                        .collect(),
                )
            })
            .collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn north_steps(&self) -> usize {
        self.0.iter().filter(|&&s| s == Step::N).count()
    }

    /// The `len() + 1` lattice points visited.
    pub fn points(&self) -> Vec<(usize, usize)> {
        let mut pts = Vec::with_capacity(self.len() + 1);
        let (mut x, mut y) = (0, 0);
        pts.push((x, y));
        for s in &self.0 {
            match s {
                Step::N => y += 1,
                Step::E => x += 1,
            }
            pts.push((x, y));
        }
        pts
    }

    /// Heights of the points, `h(ν)` when the path is `ν`.
    pub fn heights(&self) -> Vec<usize> {
        self.points().into_iter().map(|(_, y)| y).collect()
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Step::N => "N",
                Step::E => "E",
            })?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                'N' | 'n' => Ok(Step::N),
                'E' | 'e' => Ok(Step::E),
                _ => Err(Error::invalid(format!("path {s:?} has a step other than N or E"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(LatticePath)
    }
}

/// `b = (b_0, …, b_ℓ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NuBracketVector(pub Vec<u16>);

impl NuBracketVector {
    /// Indices `i` with `b_i > b_{i+1}`.
    pub fn descents(&self) -> Vec<usize> {
        (0..self.0.len().saturating_sub(1))
            .filter(|&i| self.0[i] > self.0[i + 1])
            .collect()
    }

    pub fn leq(&self, other: &NuBracketVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for NuBracketVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u16::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Componentwise minimum.
pub fn meet_bracket(a: &NuBracketVector, b: &NuBracketVector) -> NuBracketVector {
    NuBracketVector(a.0.iter().zip(&b.0).map(|(x, y)| *x.min(y)).collect())
}

/// A reference path `ν` with the data derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nu {
    path: LatticePath,
    n: usize,
    ell: usize,
    h: Vec<usize>,
    /// `f[k]`: last index with height `k`.
    f: Vec<usize>,
    /// Largest x-coordinate of `ν` at each height.
    row_max: Vec<usize>,
    is_f: Vec<bool>,
}

impl Nu {
    pub fn new(path: LatticePath) -> Result<Self> {
        if path.len() > u16::MAX as usize / 2 {
            return Err(Error::invalid("path too long"));
        }
        let n = path.north_steps();
        let ell = path.len();
        let pts = path.points();
        let h: Vec<usize> = pts.iter().map(|&(_, y)| y).collect();
        let mut f = vec![0; n + 1];
        let mut row_max = vec![0; n + 1];
        for (i, &(x, y)) in pts.iter().enumerate() {
            f[y] = i;
            row_max[y] = x;
        }
        let mut is_f = vec![false; ell + 1];
        for &i in &f {
            is_f[i] = true;
        }
        Ok(Nu {
            path,
            n,
            ell,
            h,
            f,
            row_max,
            is_f,
        })
    }

    pub fn path(&self) -> &LatticePath {
        &self.path
    }

    /// Number of north steps.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of steps.
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn heights(&self) -> &[usize] {
        &self.h
    }

    pub fn f_indices(&self) -> &[usize] {
        &self.f
    }

    /// Largest `d` with `(x + d, y)` on `ν`.
    pub fn horizontal_distance(&self, (x, y): (usize, usize)) -> Result<usize> {
        if y > self.n || x > self.ell - self.n || x > self.row_max[y] {
            return Err(Error::invalid(format!(
                "({x}, {y}) is not weakly above {} inside its bounding box",
                self.path
            )));
        }
        Ok(self.row_max[y] - x)
    }

    /// Whether `mu` has the endpoints of `ν` and stays weakly above it.
    pub fn contains(&self, mu: &LatticePath) -> bool {
        mu.len() == self.ell
            && mu.north_steps() == self.n
            && mu.points().iter().all(|&(x, y)| x <= self.row_max[y])
    }

    fn check_path(&self, mu: &LatticePath) -> Result<()> {
        if self.contains(mu) {
            Ok(())
        } else {
            Err(Error::invalid(format!("{mu} is not in Tam({})", self.path)))
        }
    }

    /// Elements covering `mu`: for each valley `v` (an E step followed by an N
    /// step), let `v'` be the next point of `mu` with the same horizontal
    /// distance and move the E step from before `v` to `v'`.
    pub fn upper_covers_path(&self, mu: &LatticePath) -> Result<Vec<LatticePath>> {
        self.check_path(mu)?;
        let pts = mu.points();
        let hd: Vec<usize> = pts
            .iter()
            .map(|&p| self.horizontal_distance(p))
            .collect::<Result<_>>()?;
        let s = &mu.0;
        let mut out = Vec::new();
        for j in 1..s.len() {
            if s[j - 1] != Step::E || s[j] != Step::N {
                continue;
            }
            let jp = (j + 1..pts.len())
                .find(|&t| hd[t] == hd[j])
                .ok_or_else(|| Error::Verification(format!("no matching point after valley {j} of {mu}")))?;
            let mut w = Vec::with_capacity(s.len());
            w.extend_from_slice(&s[..j - 1]);
            w.extend_from_slice(&s[j..jp]);
            w.push(Step::E);
            w.extend_from_slice(&s[jp..]);
            let w = LatticePath(w);
            debug_assert!(self.contains(&w));
            out.push(w);
        }
        Ok(out)
    }

    /// All of `Tam(ν)`, in lexicographic order with `N < E`.
    pub fn paths(&self, cap: usize) -> Result<Vec<LatticePath>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.ell);
        self.extend_paths(&mut cur, 0, 0, cap, &mut out)?;
        Ok(out)
    }

    fn extend_paths(
        &self,
        cur: &mut Vec<Step>,
        x: usize,
        y: usize,
        cap: usize,
        out: &mut Vec<LatticePath>,
    ) -> Result<()> {
        if cur.len() == self.ell {
            check_cap("nu-Tamari size", out.len() + 1, cap)?;
            out.push(LatticePath(cur.clone()));
            return Ok(());
        }
        if y < self.n {
            cur.push(Step::N);
            self.extend_paths(cur, x, y + 1, cap, out)?;
            cur.pop();
        }
        if x < self.row_max[y] {
            cur.push(Step::E);
            self.extend_paths(cur, x + 1, y, cap, out)?;
            cur.pop();
        }
        Ok(())
    }

    /// Checks conditions (I) `b_{f_k} = k`, (II) `h_i ≤ b_i ≤ n` and
    /// (III) no `121` pattern, naming the first one that fails.
    pub fn validate_bracket(&self, b: &NuBracketVector) -> Result<()> {
        let b = &b.0;
        if b.len() != self.ell + 1 {
            return Err(Error::invalid(format!(
                "bracket vector has length {}, expected {}",
                b.len(),
                self.ell + 1
            )));
        }
        for (k, &i) in self.f.iter().enumerate() {
            if b[i] as usize != k {
                return Err(Error::invalid(format!("condition (I) fails: b_{i} = {} != {k}", b[i])));
            }
        }
        for i in 0..=self.ell {
            if (b[i] as usize) < self.h[i] || b[i] as usize > self.n {
                return Err(Error::invalid(format!(
                    "condition (II) fails at position {i}: {} not in [{}, {}]",
                    b[i], self.h[i], self.n
                )));
            }
        }
        // 121: some value strictly exceeded between two of its occurrences
        let mut first = vec![usize::MAX; self.n + 1];
        let mut last = vec![0; self.n + 1];
        for (i, &v) in b.iter().enumerate() {
            let v = v as usize;
            first[v] = first[v].min(i);
            last[v] = i;
        }
        for v in 0..=self.n {
            if first[v] == usize::MAX {
                continue;
            }
            if let Some(i) = (first[v]..last[v]).find(|&i| b[i] as usize > v) {
                return Err(Error::invalid(format!(
                    "condition (III) fails: 121 pattern at positions {}, {i}, {}",
                    first[v], last[v]
                )));
            }
        }
        Ok(())
    }

    /// The bracket vector whose value counts equal the numbers of points of
    /// `mu` at each height. Values are placed in increasing order, each
    /// filling the free positions closest to the left of its `f_k`.
    pub fn bracket_vector(&self, mu: &LatticePath) -> Result<NuBracketVector> {
        self.check_path(mu)?;
        let mut count = vec![0usize; self.n + 1];
        for (_, y) in mu.points() {
            count[y] += 1;
        }
        let mut b: Vec<Option<u16>> = vec![None; self.ell + 1];
        for (k, &fk) in self.f.iter().enumerate() {
            b[fk] = Some(k as u16);
        }
        for k in 0..=self.n {
            let mut need = count[k] - 1;
            let mut i = self.f[k];
            while need > 0 {
                if i == 0 {
                    return Err(Error::Verification(format!("no room for value {k} in {mu}")));
                }
                i -= 1;
                if b[i].is_none() && self.h[i] <= k {
                    b[i] = Some(k as u16);
                    need -= 1;
                }
            }
        }
        let b = NuBracketVector(
            b.into_iter()
                .map(|v| v.ok_or_else(|| Error::Verification("unfilled bracket position".into())))
                .collect::<Result<_>>()?,
        );
        self.validate_bracket(&b)?;
        Ok(b)
    }

    /// Inverse of [`Nu::bracket_vector`]: `c_k` occurrences of `k` give
    /// `c_k - 1` east steps at height `k`.
    pub fn path_of_bracket(&self, b: &NuBracketVector) -> Result<LatticePath> {
        self.validate_bracket(b)?;
        let mut count = vec![0usize; self.n + 1];
        for &v in &b.0 {
            count[v as usize] += 1;
        }
        let mut steps = Vec::with_capacity(self.ell);
        for (k, &c) in count.iter().enumerate() {
            steps.extend(std::iter::repeat_n(Step::E, c - 1));
            if k < self.n {
                steps.push(Step::N);
            }
        }
        let mu = LatticePath(steps);
        self.check_path(&mu)?;
        Ok(mu)
    }

    /// Every valid bracket vector, by direct search (a test oracle).
    pub fn bracket_vectors_bruteforce(&self, cap: usize) -> Result<Vec<NuBracketVector>> {
        let mut out = Vec::new();
        let mut cur = vec![0u16; self.ell + 1];
        self.extend_brackets(0, &mut cur, cap, &mut out)?;
        Ok(out)
    }

    fn extend_brackets(
        &self,
        i: usize,
        cur: &mut Vec<u16>,
        cap: usize,
        out: &mut Vec<NuBracketVector>,
    ) -> Result<()> {
        if i > self.ell {
            let b = NuBracketVector(cur.clone());
            if self.validate_bracket(&b).is_ok() {
                check_cap("bracket vectors", out.len() + 1, cap)?;
                out.push(b);
            }
            return Ok(());
        }
        let range = if self.is_f[i] {
            self.h[i]..=self.h[i]
        } else {
            self.h[i]..=self.n
        };
        for v in range {
            cur[i] = v as u16;
            // prune 121 on the prefix: v repeats after something larger
            let bad = (0..i).rev().take_while(|&j| cur[j] as usize != v).any(|j| cur[j] as usize > v)
                && (0..i).any(|j| cur[j] as usize == v);
            if !bad {
                self.extend_brackets(i + 1, cur, cap, out)?;
            }
        }
        Ok(())
    }

    /// `(i, m)` with `i ∉ {f_0, …, f_n}` and `h_i + 1 ≤ m ≤ n`; these index
    /// the join-irreducibles, the meet-irreducibles and `Cells(ν)` alike.
    pub fn cell_parameters(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..=self.ell {
            if self.is_f[i] {
                continue;
            }
            for m in self.h[i] + 1..=self.n {
                out.push((i, m));
            }
        }
        out
    }

    fn check_im(&self, i: usize, m: usize) -> Result<()> {
        if i > self.ell || self.is_f[i] || m < self.h[i] + 1 || m > self.n {
            return Err(Error::invalid(format!(
                "(i, m) = ({i}, {m}) is outside the parameter range for {}",
                self.path
            )));
        }
        Ok(())
    }

    /// `𝔟^{i,m}`: `m` on positions `f_{k-1}+1 ..= i` (with `k = h_i` and
    /// `f_{-1} = -1`), `h(ν)` elsewhere.
    pub fn b_im(&self, i: usize, m: usize) -> Result<NuBracketVector> {
        self.check_im(i, m)?;
        let k = self.h[i];
        let start = if k == 0 { 0 } else { self.f[k - 1] + 1 };
        Ok(NuBracketVector(
            (0..=self.ell)
                .map(|r| if (start..=i).contains(&r) { m } else { self.h[r] } as u16)
                .collect(),
        ))
    }

    /// `𝔠^{i,m}`: `s` at `f_s`, `m - 1` on non-`f` positions `i ≤ r < f_{m-1}`,
    /// `n` elsewhere.
    pub fn c_im(&self, i: usize, m: usize) -> Result<NuBracketVector> {
        self.check_im(i, m)?;
        let mut v = vec![self.n as u16; self.ell + 1];
        for (r, slot) in v.iter_mut().enumerate() {
            if self.is_f[r] {
                *slot = self.h[r] as u16;
            } else if i <= r && r < self.f[m - 1] {
                *slot = (m - 1) as u16;
            }
        }
        Ok(NuBracketVector(v))
    }

    /// `Cells(ν)` ordered by "weakly southwest"; element `k` is
    /// `cell_parameters()[k]`.
    pub fn cells_poset(&self) -> Result<FinitePoset> {
        let cells = self.cell_parameters();
        let idx: HashMap<(usize, usize), usize> =
            cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut rel = Vec::new();
        // the cell to the east (next non-f index) and the cell above
        let next_col: Vec<Option<usize>> = (0..=self.ell)
            .map(|i| (i + 1..=self.ell).find(|&j| !self.is_f[j]))
            .collect();
        for (k, &(i, m)) in cells.iter().enumerate() {
            if let Some(&up) = idx.get(&(i, m + 1)) {
                rel.push((k, up));
            }
            if let Some(j) = next_col[i] {
                if let Some(&right) = idx.get(&(j, m)) {
                    rel.push((k, right));
                }
            }
        }
        FinitePoset::from_covers(cells.len(), &rel)
    }
}

impl FromStr for Nu {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Nu::new(s.parse()?)
    }
}

/// `Tam(ν)` with paths and bracket vectors indexed by element id.
#[derive(Clone, Debug)]
pub struct NuTamari {
    pub nu: Nu,
    pub paths: Vec<LatticePath>,
    pub brackets: Vec<NuBracketVector>,
    pub lattice: FiniteLattice,
    index: HashMap<NuBracketVector, usize>,
}

impl NuTamari {
    pub fn index_of(&self, b: &NuBracketVector) -> Option<usize> {
        self.index.get(b).copied()
    }
}

/// Builds `Tam(ν)` from the path cover relations and validates it as a lattice.
pub fn nu_tamari_lattice(nu: &Nu, cap: usize) -> Result<NuTamari> {
    let paths = nu.paths(cap)?;
    let by_path: HashMap<&LatticePath, usize> =
        paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut covers = Vec::new();
    for (i, p) in paths.iter().enumerate() {
        for q in nu.upper_covers_path(p)? {
            let j = *by_path
                .get(&q)
                .ok_or_else(|| Error::Verification(format!("cover {q} of {p} is not in Tam(ν)")))?;
            covers.push((i, j));
        }
    }
    let brackets = paths
        .iter()
        .map(|p| nu.bracket_vector(p))
        .collect::<Result<Vec<_>>>()?;
    let index = brackets.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let lattice = FiniteLattice::from_poset(FinitePoset::from_covers(paths.len(), &covers)?)?;
    Ok(NuTamari {
        nu: nu.clone(),
        paths,
        brackets,
        lattice,
        index,
    })
}

/// Checks that the join-irreducibles are exactly the `𝔟^{i,m}`, the
/// meet-irreducibles exactly the `𝔠^{i,m}`, and `κ(𝔟^{i,m}) = 𝔠^{i,m}`.
/// Returns the number of join-irreducibles checked.
pub fn verify_kappa_formula(t: &NuTamari) -> Result<usize> {
    let params = t.nu.cell_parameters();
    let lookup = |b: NuBracketVector| -> Result<usize> {
        t.index_of(&b)
            .ok_or_else(|| Error::Verification(format!("{b} is not an element of Tam(ν)")))
    };
    let mut js = Vec::new();
    let mut ms = Vec::new();
    for &(i, m) in &params {
        let b = t.nu.b_im(i, m)?;
        if b.descents() != [i] {
            return Err(Error::Verification(format!("b^({i},{m}) = {b} does not have unique descent {i}")));
        }
        js.push(lookup(b)?);
        ms.push(lookup(t.nu.c_im(i, m)?)?);
    }
    let sorted = |v: &[usize]| {
        let mut v = v.to_vec();
        v.sort_unstable();
        v
    };
    if sorted(&js) != t.lattice.join_irreducibles() {
        return Err(Error::Verification("join-irreducibles differ from the b^(i,m)".into()));
    }
    if sorted(&ms) != t.lattice.meet_irreducibles() {
        return Err(Error::Verification("meet-irreducibles differ from the c^(i,m)".into()));
    }
    for (k, &(i, m)) in params.iter().enumerate() {
        let got = lattice::kappa(&t.lattice, js[k])?;
        if got != ms[k] {
            return Err(Error::Verification(format!(
                "kappa(b^({i},{m})) = {} but c^({i},{m}) = {}",
                t.brackets[got], t.brackets[ms[k]]
            )));
        }
    }
    Ok(params.len())
}

/// Checks that `𝔟^{i,m} ↦ □^{i,m}` is an isomorphism from the Galois poset
/// onto `Cells(ν)`.
pub fn verify_cells_isomorphism(t: &NuTamari) -> Result<()> {
    let g = lattice::galois_graph(&t.lattice)?;
    let gp = lattice::galois_poset(&t.lattice)?;
    let cells = t.nu.cells_poset()?;
    let mut cell_of_element = HashMap::new();
    for (k, &(i, m)) in t.nu.cell_parameters().iter().enumerate() {
        let b = t.nu.b_im(i, m)?;
        let e = t
            .index_of(&b)
            .ok_or_else(|| Error::Verification(format!("{b} is not an element of Tam(ν)")))?;
        cell_of_element.insert(e, k);
    }
    let map: Vec<usize> = g
        .vertices
        .iter()
        .map(|e| {
            cell_of_element
                .get(e)
                .copied()
                .ok_or_else(|| Error::Verification(format!("join-irreducible {e} has no cell")))
        })
        .collect::<Result<_>>()?;
    if map.len() != cells.len() {
        return Err(Error::Verification("Galois poset and Cells(ν) differ in size".into()));
    }
    for a in 0..map.len() {
        for b in 0..map.len() {
            if gp.leq(a, b) != cells.leq(map[a], map[b]) {
                return Err(Error::Verification(format!(
                    "order mismatch between cells {:?} and {:?}",
                    t.nu.cell_parameters()[map[a]],
                    t.nu.cell_parameters()[map[b]]
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::classify;
    use crate::poset::are_isomorphic;

    #[test]
    fn example_heights_and_f() {
        let nu: Nu = "ENEEENNEENNE".parse().unwrap();
        assert_eq!(nu.heights(), &[0, 0, 1, 1, 1, 1, 2, 3, 3, 3, 4, 5, 5]);
        assert_eq!(nu.f_indices(), &[1, 5, 6, 9, 10, 12]);
        let b = nu.bracket_vector(nu.path()).unwrap();
        assert_eq!(b.0, vec![0, 0, 1, 1, 1, 1, 2, 3, 3, 3, 4, 5, 5]);
        assert_eq!(nu.b_im(3, 4).unwrap().0, vec![0, 0, 4, 4, 1, 1, 2, 3, 3, 3, 4, 5, 5]);
        assert_eq!(nu.c_im(3, 4).unwrap().0, vec![5, 0, 5, 3, 3, 1, 2, 3, 3, 3, 4, 5, 5]);
        assert!(nu.b_im(5, 3).is_err());
        assert!(nu.b_im(3, 1).is_err());
    }

    #[test]
    fn horizontal_distance_and_covers() {
        let nu: Nu = "NENE".parse().unwrap();
        assert_eq!(nu.horizontal_distance((0, 1)).unwrap(), 1);
        assert_eq!(nu.horizontal_distance((1, 1)).unwrap(), 0);
        assert!(nu.horizontal_distance((2, 1)).is_err());
        let nu: Nu = "EEENENENNE".parse().unwrap();
        let mu: LatticePath = "EENENNENEE".parse().unwrap();
        let up = nu.upper_covers_path(&mu).unwrap();
        assert!(up.contains(&"EENNNEENEE".parse().unwrap()), "{up:?}");
        let top: LatticePath = "NNNNEEEEEE".parse().unwrap();
        assert!(nu.upper_covers_path(&top).unwrap().is_empty());
    }

    #[test]
    fn fuss_catalan_and_pentagon() {
        let nu = Nu::new(LatticePath::m_tamari(3, 2)).unwrap();
        let t = nu_tamari_lattice(&nu, 1000).unwrap();
        assert_eq!(t.lattice.len(), 12);
        for (p, b) in t.paths.iter().zip(&t.brackets) {
            assert_eq!(&nu.path_of_bracket(b).unwrap(), p);
        }
        let t3 = nu_tamari_lattice(&Nu::new(LatticePath::m_tamari(3, 1)).unwrap(), 100).unwrap();
        let pentagon =
            FiniteLattice::from_cover_relations(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        assert!(are_isomorphic(t3.lattice.poset(), pentagon.poset()).unwrap());
        let t4 = nu_tamari_lattice(&Nu::new(LatticePath::m_tamari(4, 1)).unwrap(), 100).unwrap();
        assert_eq!(t4.lattice.len(), 14);
        let c = classify(&t4.lattice).unwrap();
        assert!(c.is_trim && !c.is_distributive);
    }

    #[test]
    fn invalid_brackets_name_the_condition() {
        let nu: Nu = "NENE".parse().unwrap();
        let err = |v: Vec<u16>| nu.validate_bracket(&NuBracketVector(v)).unwrap_err().to_string();
        assert!(err(vec![1, 1, 1, 1, 2]).contains("(I)"));
        assert!(err(vec![0, 1, 1, 3, 2]).contains("(II)"));
        let nu: Nu = "EENN".parse().unwrap();
        assert_eq!(nu.f_indices(), &[2, 3, 4]);
        assert!(nu
            .validate_bracket(&NuBracketVector(vec![1, 2, 0, 1, 2]))
            .unwrap_err()
            .to_string()
            .contains("(III)"));
        nu.validate_bracket(&NuBracketVector(vec![2, 1, 0, 1, 2])).unwrap();
    }

    #[test]
    fn exhaustive_small_paths() {
        for len in 0..=8 {
            for path in LatticePath::all_of_length(len).unwrap() {
                let nu = Nu::new(path).unwrap();
                let t = nu_tamari_lattice(&nu, 10_000).unwrap();
                // bijection with the brute-force bracket vectors
                let mut brute = nu.bracket_vectors_bruteforce(10_000).unwrap();
                brute.sort();
                let mut ours = t.brackets.clone();
                ours.sort();
                assert_eq!(brute, ours, "{}", nu.path());
                // path order is componentwise order, meet is componentwise min
                for a in 0..t.lattice.len() {
                    for b in 0..t.lattice.len() {
                        assert_eq!(t.lattice.leq(a, b), t.brackets[a].leq(&t.brackets[b]));
                        assert_eq!(
                            t.brackets[t.lattice.meet(a, b)],
                            meet_bracket(&t.brackets[a], &t.brackets[b])
                        );
                    }
                }
                verify_kappa_formula(&t).unwrap();
                verify_cells_isomorphism(&t).unwrap();
            }
        }
    }

    #[test]
    fn staircase_cells() {
        for n in 1..7 {
            let nu = Nu::new(LatticePath::m_tamari(n, 1)).unwrap();
            assert_eq!(nu.cell_parameters().len(), n * (n - 1) / 2);
        }
    }
}
