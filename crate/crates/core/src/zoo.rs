//! A fixed collection of small lattices used by the verification suites:
//! Tamari, Cambrian, distributive, weak-order, ν-Tamari and a few
//! non-trim controls.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::coxeter::cambrian::{cambrian_lattice, DEFAULT_GROUP_CAP};
use crate::coxeter::{all_orientations, coxeter_element, format_word, CoxeterSpec};
use crate::error::Result;
use crate::lattice::FiniteLattice;
use crate::poset::{self, FinitePoset};
use crate::sim::trial_rng;
use crate::tamari::{nu_tamari_lattice, LatticePath, Nu, DEFAULT_TAMARI_CAP};
use crate::weak::weak_lattice;

pub const DEFAULT_ZOO_SEED: u64 = 20_240_601;

#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: String,
    pub family: &'static str,
    pub lattice: FiniteLattice,
}

/// A random poset on `n` elements: each pair `i < j` is related with
/// probability `density`, then closed transitively.
pub fn random_poset(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Result<FinitePoset> {
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < density {
                rel.push((i, j));
            }
        }
    }
    FinitePoset::from_covers(n, &rel)
}

/// `count` random posets with 1..=`max_size` elements, reproducible from `seed`.
pub fn random_posets(count: usize, max_size: usize, seed: u64) -> Result<Vec<FinitePoset>> {
    (0..count)
        .map(|i| {
            let mut rng = trial_rng(seed, i as u64);
            let n = rng.random_range(1..=max_size.max(1));
            let density = rng.random_range(0.15..0.6);
            random_poset(n, density, &mut rng)
        })
        .collect()
}

fn push(out: &mut Vec<ZooEntry>, name: String, family: &'static str, lattice: FiniteLattice) {
    out.push(ZooEntry {
        name,
        family,
        lattice,
    });
}

/// The standard zoo, about seventy lattices. Random posets are drawn from `seed`.
pub fn lattice_zoo(seed: u64) -> Result<Vec<ZooEntry>> {
    let mut out = Vec::new();
    for k in 1..=4 {
        let l = FiniteLattice::from_poset(poset::chain(k))?;
        push(&mut out, format!("chain {k}"), "chain", l);
    }
    for n in 1..=5 {
        let nu = Nu::new(LatticePath::m_tamari(n, 1))?;
        let t = nu_tamari_lattice(&nu, DEFAULT_TAMARI_CAP)?;
        push(&mut out, format!("Tam{n}"), "tamari", t.lattice);
    }
    let coxeter = [
        CoxeterSpec::a(1),
        CoxeterSpec::a(2),
        CoxeterSpec::a(3),
        CoxeterSpec::a(4),
        CoxeterSpec::b(2),
        CoxeterSpec::b(3),
        CoxeterSpec::d(4),
    ];
    for spec in coxeter {
        for o in all_orientations(&spec) {
            let c = coxeter_element(&spec, &o)?;
            let camb = cambrian_lattice(&spec, &c, DEFAULT_GROUP_CAP)?;
            let name = format!("Camb {spec} c={}", format_word(&spec, &c));
            push(&mut out, name, "cambrian", camb.lattice);
        }
    }
    for m in 2..=7 {
        let spec = CoxeterSpec::i2(m);
        let camb = cambrian_lattice(&spec, &[0, 1], DEFAULT_GROUP_CAP)?;
        push(&mut out, format!("Camb {spec}"), "cambrian", camb.lattice);
    }
    for (i, p) in random_posets(12, 7, seed)?.iter().enumerate() {
        let l = poset::order_ideal_lattice(p, 1 << 7)?;
        push(&mut out, format!("J(P{i}) |P|={}", p.len()), "distributive", l);
    }
    let boolean = poset::order_ideal_lattice(&poset::antichain(3), 8)?;
    push(&mut out, "Boolean 3".into(), "distributive", boolean);
    let grid = poset::order_ideal_lattice(&poset::rectangle_poset(2, 3)?, 64)?;
    push(&mut out, "J([2]x[3])".into(), "distributive", grid);
    for n in 1..=4 {
        let (l, _) = weak_lattice(n)?;
        push(&mut out, format!("Weak S{n}"), "weak", l);
    }
    for nu in ["ENEN", "NEENEN", "NNEENE", "ENNEEN", "NENEENE", "NEENNEE"] {
        let t = nu_tamari_lattice(&nu.parse()?, DEFAULT_TAMARI_CAP)?;
        push(&mut out, format!("Tam({nu})"), "nu-tamari", t.lattice);
    }
    let pentagon =
        FiniteLattice::from_cover_relations(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])?;
    push(&mut out, "N5".into(), "other", pentagon);
    let m3 = FiniteLattice::from_cover_relations(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])?;
    push(&mut out, "M3".into(), "other", m3);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::classify;

    #[test]
    fn zoo_is_large_and_mostly_trim() {
        let zoo = lattice_zoo(DEFAULT_ZOO_SEED).unwrap();
        assert!(zoo.len() >= 60, "{}", zoo.len());
        for e in &zoo {
            let c = classify(&e.lattice).unwrap();
            match e.family {
                "tamari" | "cambrian" | "nu-tamari" | "distributive" | "chain" => {
                    assert!(c.is_trim, "{}", e.name)
                }
                _ => {}
            }
        }
        let m3 = zoo.iter().find(|e| e.name == "M3").unwrap();
        assert!(!classify(&m3.lattice).unwrap().is_trim);
    }

    #[test]
    fn random_posets_are_reproducible() {
        let a = random_posets(5, 7, 3).unwrap();
        let b = random_posets(5, 7, 3).unwrap();
        for (p, q) in a.iter().zip(&b) {
            assert_eq!(p.relations(), q.relations());
        }
    }
}
