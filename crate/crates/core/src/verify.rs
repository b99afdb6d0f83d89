//! Verification suites over the lattice zoo and small Coxeter/ν families.
//! Each check yields one [`CheckOutcome`]; the CLI prints them and exits
//! with the assertion-failure code if any failed.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use crate::coxeter::cambrian::{cambrian_lattice, cambrian_spine_poset, verify_psi_identity, DEFAULT_GROUP_CAP};
use crate::coxeter::{all_orientations, coxeter_element, format_word, CoxeterSpec};
use crate::error::{Error, Result};
use crate::lattice::{classify_with_cap, galois_graph, galois_poset, irreducible_data, spine, verify_spine_isomorphism};
use crate::poset::are_isomorphic;
use crate::prob::Probability;
use crate::tamari::{nu_tamari_lattice, verify_cells_isomorphism, verify_kappa_formula, LatticePath, Nu};
use crate::ungar::{exact_expected_steps_linear, exact_expected_steps_recursive};
use crate::zoo::{lattice_zoo, ZooEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl CheckOutcome {
    fn new(suite: Suite, name: impl Into<String>, res: Result<String>) -> Self {
        let (status, detail) = match res {
            Ok(d) => (Status::Pass, d),
            Err(Error::Verification(d)) => (Status::Fail, d),
            Err(e @ Error::KappaUndefined { .. }) | Err(e @ Error::GaloisCycle) => {
                (Status::Fail, e.to_string())
            }
            Err(Error::InvalidInput(d)) => (Status::Skip, d),
            Err(e) => (Status::Skip, e.to_string()),
        };
        CheckOutcome {
            suite,
            name: name.into(),
            status,
            detail,
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        write!(f, "{tag} [{}] {}: {}", self.suite, self.name, self.detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// `E(L) ≤ E(spine(L))` for trim `L`, equality when distributive.
    Spine,
    /// κ is a bijection, the Galois graph is acyclic and `spine(L) ≅ J(P(L))`.
    Galois,
    /// Linear and recursive exact solvers agree exactly.
    Solvers,
    /// `Heap(sort_c(w0)) ≅ P(Camb_c)` and the ψ identity.
    Cambrian,
    /// κ formula and `P(Tam(ν)) ≅ Cells(ν)` for all short ν.
    NuTamari,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Spine, Suite::Galois, Suite::Solvers, Suite::Cambrian, Suite::NuTamari];

    fn as_str(self) -> &'static str {
        match self {
            Suite::Spine => "spine",
            Suite::Galois => "galois",
            Suite::Solvers => "solvers",
            Suite::Cambrian => "cambrian",
            Suite::NuTamari => "nu-tamari",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite {s:?} (spine, galois, solvers, cambrian, nu-tamari, all)")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Lattices larger than this are skipped; for `nu-tamari` it bounds the
    /// number of steps of ν instead (capped at 12).
    pub max_size: usize,
    pub zoo_seed: u64,
    /// Probability used for exact comparisons.
    pub p: Probability,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_size: 2000,
            zoo_seed: crate::zoo::DEFAULT_ZOO_SEED,
            p: Probability::from_ratio(1, 2).expect("1/2 is a probability"),
        }
    }
}

fn exact(l: &crate::FiniteLattice, p: &Probability) -> Result<BigRational> {
    exact_expected_steps_linear(l, p)
}

fn spine_check(e: &ZooEntry, opts: &VerifyOptions) -> Result<String> {
    let c = classify_with_cap(&e.lattice, opts.max_size)?;
    if !c.is_trim {
        return Err(Error::invalid("not trim"));
    }
    let s = spine(&e.lattice)?;
    let el = exact(&e.lattice, &opts.p)?;
    let es = exact(&s.lattice, &opts.p)?;
    if el > es {
        return Err(Error::Verification(format!("E(L) = {el} > E(spine) = {es}")));
    }
    if c.is_distributive && el != es {
        return Err(Error::Verification(format!("distributive but E(L) = {el} != E(spine) = {es}")));
    }
    Ok(format!("E(L) = {el} <= E(spine) = {es}{}", if c.is_distributive { " (equal)" } else { "" }))
}

fn galois_check(e: &ZooEntry, opts: &VerifyOptions) -> Result<String> {
    let c = classify_with_cap(&e.lattice, opts.max_size)?;
    if !c.is_trim {
        return Err(Error::invalid("not trim"));
    }
    let data = irreducible_data(&e.lattice)?;
    let g = galois_graph(&e.lattice)?;
    galois_poset(&e.lattice)?;
    match verify_spine_isomorphism(&e.lattice, 1 << 16)? {
        Some(_) => Ok(format!(
            "{} join-irreducibles, {} Galois arrows, spine = J(P(L))",
            data.join_irreducibles.len(),
            g.arrows.len()
        )),
        None => Err(Error::Verification("spine is not isomorphic to J(P(L))".into())),
    }
}

fn solver_check(e: &ZooEntry, opts: &VerifyOptions) -> Result<String> {
    crate::error::check_cap("lattice size", e.lattice.len(), opts.max_size)?;
    let a: BigRational = exact_expected_steps_linear(&e.lattice, &opts.p)?;
    let b: BigRational = exact_expected_steps_recursive(&e.lattice, &opts.p)?;
    if a == b {
        Ok(format!("E = {a}"))
    } else {
        Err(Error::Verification(format!("linear {a} != recursive {b}")))
    }
}

fn cambrian_specs() -> Vec<CoxeterSpec> {
    let mut v: Vec<CoxeterSpec> = (1..=4).map(CoxeterSpec::a).collect();
    v.extend([CoxeterSpec::b(2), CoxeterSpec::b(3), CoxeterSpec::d(4)]);
    v.extend((2..=7).map(CoxeterSpec::i2));
    v
}

fn cambrian_check(spec: &CoxeterSpec, c: &[usize], opts: &VerifyOptions) -> Result<String> {
    let camb = cambrian_lattice(spec, c, DEFAULT_GROUP_CAP)?;
    crate::error::check_cap("lattice size", camb.lattice.len(), opts.max_size)?;
    let gp = galois_poset(&camb.lattice)?;
    let hp = cambrian_spine_poset(spec, c)?;
    if !are_isomorphic(&gp, &hp)? {
        return Err(Error::Verification("heap is not isomorphic to the Galois poset".into()));
    }
    if !verify_psi_identity(spec, c)? {
        return Err(Error::Verification("sort(w0)·ψ(sort(w0)) is not commutation equivalent to c^h".into()));
    }
    Ok(format!("{} elements, heap of {} letters", camb.lattice.len(), hp.len()))
}

fn nu_check(nu: &Nu) -> Result<String> {
    let t = nu_tamari_lattice(nu, crate::tamari::DEFAULT_TAMARI_CAP)?;
    let k = verify_kappa_formula(&t)?;
    verify_cells_isomorphism(&t)?;
    Ok(format!("{} elements, {k} cells", t.lattice.len()))
}

/// Runs one suite.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    match suite {
        Suite::Spine | Suite::Galois | Suite::Solvers => {
            let check = match suite {
                Suite::Spine => spine_check,
                Suite::Galois => galois_check,
                _ => solver_check,
            };
            for e in lattice_zoo(opts.zoo_seed)? {
                let res = if e.lattice.len() > opts.max_size {
                    Err(Error::invalid(format!("{} elements exceeds --max-size", e.lattice.len())))
                } else {
                    check(&e, opts)
                };
                out.push(CheckOutcome::new(suite, e.name, res));
            }
        }
        Suite::Cambrian => {
            for spec in cambrian_specs() {
                for o in all_orientations(&spec) {
                    let c = coxeter_element(&spec, &o)?;
                    let name = format!("{spec} c={}", format_word(&spec, &c));
                    out.push(CheckOutcome::new(suite, name, cambrian_check(&spec, &c, opts)));
                }
            }
        }
        Suite::NuTamari => {
            for len in 0..=opts.max_size.min(12) {
                for path in LatticePath::all_of_length(len)? {
                    let name = if path.is_empty() { "(empty)".to_string() } else { path.to_string() };
                    let res = Nu::new(path).and_then(|nu| nu_check(&nu));
                    out.push(CheckOutcome::new(suite, name, res));
                }
            }
        }
    }
    Ok(out)
}

/// Runs several suites, in the order given.
pub fn run_suites(suites: &[Suite], opts: &VerifyOptions) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for &s in suites {
        out.extend(run_suite(s, opts)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_parse() {
        assert_eq!("spine".parse::<Suite>().unwrap(), Suite::Spine);
        assert_eq!("nu-tamari".parse::<Suite>().unwrap(), Suite::NuTamari);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_nu_suite_passes() {
        let opts = VerifyOptions {
            max_size: 5,
            ..Default::default()
        };
        let out = run_suite(Suite::NuTamari, &opts).unwrap();
        assert_eq!(out.len(), (0..=5).map(|k| 1 << k).sum::<usize>());
        assert!(out.iter().all(|o| o.status == Status::Pass), "{:?}", out.iter().find(|o| o.status != Status::Pass));
    }

    #[test]
    fn spine_suite_skips_non_trim_and_passes_the_rest() {
        let out = run_suite(Suite::Spine, &VerifyOptions::default()).unwrap();
        assert!(out.iter().all(|o| o.status != Status::Fail), "{:?}", out.iter().find(|o| o.status == Status::Fail));
        let m3 = out.iter().find(|o| o.name == "M3").unwrap();
        assert_eq!(m3.status, Status::Skip);
        assert!(out.iter().filter(|o| o.status == Status::Pass).count() >= 50);
    }
}
