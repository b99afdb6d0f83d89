//! Experiment configuration and the runner behind the `ungar` binary.
//!
//! A run is a pure function of its [`ExperimentConfig`]: the JSON record
//! echoes the inputs, names the RNG streams used, and leaves out anything
//! that depends on the machine (thread count, wall time) unless asked.

use std::fmt;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::coxeter::cambrian::{cambrian_coefficient, cambrian_lattice, dihedral_expected, DEFAULT_GROUP_CAP};
use crate::coxeter::{orientation_of, parse_word, r_statistic, CoxeterSpec, CoxeterType};
use crate::error::{check_cap, Error, Result};
use crate::lattice::FiniteLattice;
use crate::lpp::{lpp_outcomes, rectangle_coefficient, LppGraph};
use crate::plot::{snapshot_panels, write_permutation_svg, PlotStyle};
use crate::poset::{self, FinitePoset};
use crate::prob::Probability;
use crate::sim::{simulate_outcomes, ChainParams, Executor, LatticeChain, Statistics, TrialOutcome, DEFAULT_STEP_CAP};
use crate::tamari::av312::simulate_tamari_chain;
use crate::tamari::{bruss, nu_tamari_lattice, LatticePath, Nu};
use crate::ungar::{exact_expected_steps_linear, exact_expected_steps_recursive, DEFAULT_EXACT_CAP};
use crate::weak::{simulate_weak_chain, weak_lattice};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest lattice a non-exact run will materialize.
pub const DEFAULT_BUILD_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "weak")]
    Weak,
    #[serde(rename = "tamari")]
    Tamari,
    #[serde(rename = "nu-tamari")]
    NuTamari,
    #[serde(rename = "cambrian-A")]
    CambrianA,
    #[serde(rename = "cambrian-B")]
    CambrianB,
    #[serde(rename = "cambrian-D")]
    CambrianD,
    #[serde(rename = "cambrian-I2")]
    CambrianI2,
    #[serde(rename = "J-of-poset")]
    JOfPoset,
    #[serde(rename = "rectangle-lpp")]
    RectangleLpp,
    #[serde(rename = "custom-file")]
    CustomFile,
    #[serde(rename = "chain")]
    Chain,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Weak,
        Family::Tamari,
        Family::NuTamari,
        Family::CambrianA,
        Family::CambrianB,
        Family::CambrianD,
        Family::CambrianI2,
        Family::JOfPoset,
        Family::RectangleLpp,
        Family::CustomFile,
        Family::Chain,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Weak => "weak",
            Family::Tamari => "tamari",
            Family::NuTamari => "nu-tamari",
            Family::CambrianA => "cambrian-A",
            Family::CambrianB => "cambrian-B",
            Family::CambrianD => "cambrian-D",
            Family::CambrianI2 => "cambrian-I2",
            Family::JOfPoset => "J-of-poset",
            Family::RectangleLpp => "rectangle-lpp",
            Family::CustomFile => "custom-file",
            Family::Chain => "chain",
        }
    }

    fn coxeter_type(self) -> Option<CoxeterType> {
        match self {
            Family::CambrianA => Some(CoxeterType::A),
            Family::CambrianB => Some(CoxeterType::B),
            Family::CambrianD => Some(CoxeterType::D),
            Family::CambrianI2 => Some(CoxeterType::I2),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<&str> = Family::ALL.iter().map(|f| f.as_str()).collect();
                Error::invalid(format!("unknown family {s:?} (one of {})", names.join(", ")))
            })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    ExactLinear,
    ExactRecursive,
    Simulate,
    Lpp,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::ExactLinear => "exact-linear",
            Mode::ExactRecursive => "exact-recursive",
            Mode::Simulate => "simulate",
            Mode::Lpp => "lpp",
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Mode::ExactLinear | Mode::ExactRecursive)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [Mode::ExactLinear, Mode::ExactRecursive, Mode::Simulate, Mode::Lpp]
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown mode {s:?}")))
    }
}

fn default_p() -> String {
    "1/2".into()
}

fn default_trials() -> usize {
    1000
}

/// Everything that determines a run. Mirrors the CLI flags; the TOML config
/// file uses the same field names.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub family: Family,
    #[serde(default)]
    pub mode: Mode,
    /// Rank, permutation size, chain length or random-poset size.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// `m` of `I₂(m)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Rectangle sides.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    /// Coxeter element as a word, e.g. `s2s1s3`; defaults to `s_1 s_2 …`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    /// ν as an N/E string.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<String>,
    /// Poset file (`J-of-poset`) or lattice cover file (`custom-file`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<PathBuf>,
    /// `"a/b"` selects exact rational arithmetic, a decimal selects floats.
    #[serde(default = "default_p")]
    pub p: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub snapshots: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_cap: Option<u64>,
    /// Largest lattice the exact solvers accept.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_cap: Option<usize>,
    #[serde(default, skip_serializing)]
    pub output: Option<PathBuf>,
    /// Per-trial table.
    #[serde(default, skip_serializing)]
    pub csv: Option<PathBuf>,
    /// Snapshot trace of trial 0 as `time,position,value` rows.
    #[serde(default, skip_serializing)]
    pub trace: Option<PathBuf>,
    /// Multi-panel SVG of the trial-0 snapshots (weak and tamari).
    #[serde(default, skip_serializing)]
    pub plot: Option<PathBuf>,
    #[serde(default, skip_serializing)]
    pub record_runtime: bool,
}

impl ExperimentConfig {
    pub fn new(family: Family, mode: Mode) -> Self {
        ExperimentConfig {
            family,
            mode,
            n: None,
            m: None,
            k: None,
            l: None,
            c: None,
            nu: None,
            poset: None,
            p: default_p(),
            seed: 0,
            trials: default_trials(),
            snapshots: Vec::new(),
            step_cap: None,
            exact_cap: None,
            output: None,
            csv: None,
            trace: None,
            plot: None,
            record_runtime: false,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::invalid(format!("config: {e}")))
    }

    pub fn probability(&self) -> Result<Probability> {
        self.p.parse()
    }

    fn need(&self, v: Option<usize>, name: &str) -> Result<usize> {
        v.ok_or_else(|| Error::invalid(format!("family {} needs --{name}", self.family)))
    }

    fn exact_cap(&self) -> usize {
        self.exact_cap.unwrap_or(DEFAULT_EXACT_CAP)
    }

    fn params(&self, p: &Probability) -> ChainParams {
        ChainParams {
            p: p.value(),
            seed: self.seed,
            trials: self.trials,
            step_cap: self.step_cap.unwrap_or(DEFAULT_STEP_CAP),
        }
    }

    /// Checks parameters and mode/family compatibility without building
    /// anything large.
    pub fn validate(&self) -> Result<()> {
        let p = self.probability()?;
        if !self.mode.is_exact() {
            self.params(&p).validate()?;
        }
        use Family::*;
        match self.family {
            Weak | Tamari | Chain | CambrianA | CambrianB | CambrianD => {
                self.need(self.n, "n")?;
            }
            CambrianI2 => {
                self.need(self.m, "m")?;
            }
            NuTamari => {
                self.nu.as_deref().ok_or_else(|| Error::invalid("nu-tamari needs --nu"))?;
            }
            RectangleLpp => {
                self.need(self.k, "k")?;
                self.need(self.l, "l")?;
            }
            JOfPoset => {
                if self.poset.is_none() && self.n.is_none() {
                    return Err(Error::invalid("J-of-poset needs --poset FILE or --n (random poset)"));
                }
            }
            CustomFile => {
                self.poset.as_ref().ok_or_else(|| Error::invalid("custom-file needs --poset FILE"))?;
            }
        }
        if self.family.coxeter_type().is_some() {
            self.coxeter()?;
        }
        match self.mode {
            Mode::Lpp if !matches!(self.family, RectangleLpp | JOfPoset) => {
                return Err(Error::invalid("lpp mode needs family rectangle-lpp or J-of-poset"));
            }
            Mode::Simulate if self.family == RectangleLpp => {
                return Err(Error::invalid("rectangle-lpp is simulated with mode lpp"));
            }
            _ => {}
        }
        if (self.plot.is_some() || self.trace.is_some()) && !matches!(self.family, Weak | Tamari) {
            return Err(Error::invalid("plots and traces are available for weak and tamari"));
        }
        if self.mode.is_exact() {
            if let Some(size) = self.estimated_states()? {
                check_cap("lattice size for exact solve", size, self.exact_cap())?;
            }
        }
        Ok(())
    }

    /// Known lattice sizes, without building the lattice.
    fn estimated_states(&self) -> Result<Option<usize>> {
        let n = self.n.unwrap_or(0);
        let sat = |x: u128| usize::try_from(x).unwrap_or(usize::MAX);
        Ok(match self.family {
            Family::Weak => Some(sat((1..=n as u128).product())),
            Family::Tamari => Some(sat(catalan(n))),
            Family::CambrianA => Some(sat(catalan(n + 1))),
            Family::CambrianB => Some(sat(binomial(2 * n as u128, n as u128))),
            Family::CambrianD => {
                let b = binomial(2 * n as u128 - 2, n as u128 - 1);
                Some(sat((3 * n as u128 - 2) * b / n as u128))
            }
            Family::CambrianI2 => self.m.map(|m| m + 2),
            Family::Chain => Some(n + 1),
            Family::RectangleLpp => {
                let (k, l) = (self.k.unwrap_or(0) as u128, self.l.unwrap_or(0) as u128);
                Some(sat(binomial(k + l, k)))
            }
            _ => None,
        })
    }

    fn coxeter(&self) -> Result<(CoxeterSpec, Vec<usize>)> {
        let kind = self.family.coxeter_type().expect("cambrian family");
        let rank = match kind {
            CoxeterType::I2 => self.need(self.m, "m")?,
            _ => self.need(self.n, "n")?,
        };
        let spec = CoxeterSpec::new(kind, rank)?;
        let c = match &self.c {
            Some(w) => parse_word(&spec, w)?,
            None => spec.generators(),
        };
        spec.check_coxeter_word(&c)?;
        Ok((spec, c))
    }

    fn random_poset(&self) -> Result<FinitePoset> {
        let n = self.need(self.n, "n")?;
        check_cap("random poset size", n, 64)?;
        let mut rng = crate::sim::trial_rng(crate::sim::mix64(self.seed), u64::MAX);
        crate::zoo::random_poset(n, 0.35, &mut rng)
    }

    fn poset_input(&self) -> Result<FinitePoset> {
        match &self.poset {
            Some(path) => crate::io::read_poset_file(path),
            None => self.random_poset(),
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn catalan(n: usize) -> u128 {
    binomial(2 * n as u128, n as u128) / (n as u128 + 1)
}

/// A lattice built from a config, with a one-line description.
pub struct BuiltLattice {
    pub lattice: FiniteLattice,
    pub description: String,
}

/// Materializes the lattice named by `config`.
pub fn build_lattice(config: &ExperimentConfig, cap: usize) -> Result<BuiltLattice> {
    let (lattice, description) = match config.family {
        Family::Weak => {
            let n = config.need(config.n, "n")?;
            (weak_lattice(n)?.0, format!("weak order on S_{n}"))
        }
        Family::Tamari => {
            let n = config.need(config.n, "n")?;
            let nu = Nu::new(LatticePath::m_tamari(n, 1))?;
            (nu_tamari_lattice(&nu, cap)?.lattice, format!("Tamari lattice Tam_{n}"))
        }
        Family::NuTamari => {
            let nu: Nu = config.nu.as_deref().unwrap_or("").parse()?;
            let desc = format!("nu-Tamari lattice Tam({})", nu.path());
            (nu_tamari_lattice(&nu, cap)?.lattice, desc)
        }
        Family::CambrianA | Family::CambrianB | Family::CambrianD | Family::CambrianI2 => {
            let (spec, c) = config.coxeter()?;
            let camb = cambrian_lattice(&spec, &c, DEFAULT_GROUP_CAP.max(cap.min(50_000)))?;
            let desc = format!("Cambrian lattice of {spec}, c = {}", crate::coxeter::format_word(&spec, &c));
            (camb.lattice, desc)
        }
        Family::Chain => {
            let n = config.need(config.n, "n")?;
            check_cap("chain length", n, cap)?;
            (FiniteLattice::from_poset(poset::chain(n + 1))?, format!("chain of length {n}"))
        }
        Family::RectangleLpp => {
            let (k, l) = (config.need(config.k, "k")?, config.need(config.l, "l")?);
            let p = poset::rectangle_poset(k, l)?;
            (poset::order_ideal_lattice(&p, cap)?, format!("J([{k}] x [{l}])"))
        }
        Family::JOfPoset => {
            let p = config.poset_input()?;
            let desc = format!("J(P), |P| = {}", p.len());
            (poset::order_ideal_lattice(&p, cap)?, desc)
        }
        Family::CustomFile => {
            let path = config.poset.as_deref().expect("validated");
            let p = crate::io::read_poset_file(path)?;
            (FiniteLattice::from_poset(p)?, format!("lattice from {}", path.display()))
        }
    };
    check_cap("lattice size", lattice.len(), cap)?;
    Ok(BuiltLattice { lattice, description })
}

#[derive(Clone, Debug, Serialize)]
pub struct LibraryInfo {
    pub name: &'static str,
    pub version: &'static str,
}

pub const LIBRARY: LibraryInfo = LibraryInfo {
    name: env!("CARGO_PKG_NAME"),
    version: env!("CARGO_PKG_VERSION"),
};

#[derive(Clone, Debug, Serialize)]
pub struct ExactEstimate {
    pub solver: &'static str,
    pub arithmetic: &'static str,
    /// Present in rational mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational: Option<String>,
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RngInfo {
    pub generator: &'static str,
    pub seed: u64,
    /// Trial `i` uses stream `i`; streams `[first, last]` were used.
    pub streams: [u64; 2],
    pub note: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimulationEstimate {
    pub process: String,
    pub statistics: Statistics,
    pub rng: RngInfo,
    /// Trajectories violating the per-stream success bound (coupled chains).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stream_bound_violations: Option<usize>,
    /// Tamari trajectories where the descent-bottom set grew.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub descent_bottom_violations: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Reference {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational: Option<String>,
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentResult {
    pub schema_version: u32,
    pub library: LibraryInfo,
    pub inputs: ExperimentConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub states: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimulationEstimate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub references: Vec<Reference>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_seconds: Option<f64>,
}

impl ExperimentResult {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result serializes");
        s.push('\n');
        s
    }

    /// One or two human-readable lines.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        if let Some(d) = &self.structure {
            writeln!(s, "{d}{}", self.states.map(|n| format!(" ({n} elements)")).unwrap_or_default()).ok();
        }
        if let Some(e) = &self.exact {
            match &e.rational {
                Some(r) => writeln!(s, "E = {r} ≈ {:.6}", e.value),
                None => writeln!(s, "E ≈ {:.12}", e.value),
            }
            .ok();
        }
        if let Some(sim) = &self.simulation {
            let st = &sim.statistics;
            writeln!(
                s,
                "mean = {:.4} ± {:.4} (95% CI [{:.4}, {:.4}], {} trials, {} capped)",
                st.mean,
                1.96 * st.stderr,
                st.ci95[0],
                st.ci95[1],
                st.trials,
                st.capped
            )
            .ok();
        }
        for r in &self.references {
            match &r.rational {
                Some(q) => writeln!(s, "{}: {q} ≈ {:.6}", r.name, r.value),
                None => writeln!(s, "{}: {:.6}", r.name, r.value),
            }
            .ok();
        }
        s
    }
}

/// Side outputs of a run, written by [`write_outputs`].
#[derive(Clone, Debug, Default)]
pub struct RunArtifacts {
    pub trials_csv: Option<String>,
    pub trace_csv: Option<String>,
    pub snapshots: Vec<(u64, Vec<u16>)>,
}

fn to_f64(q: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

fn exact_estimate(l: &FiniteLattice, p: &Probability, mode: Mode) -> Result<ExactEstimate> {
    let solver = if mode == Mode::ExactRecursive { "recursive" } else { "linear" };
    if p.is_fraction() {
        let q: BigRational = match mode {
            Mode::ExactRecursive => exact_expected_steps_recursive(l, p)?,
            _ => exact_expected_steps_linear(l, p)?,
        };
        Ok(ExactEstimate {
            solver,
            arithmetic: "rational",
            value: to_f64(&q),
            rational: Some(q.to_string()),
        })
    } else {
        let v: f64 = match mode {
            Mode::ExactRecursive => exact_expected_steps_recursive(l, p)?,
            _ => exact_expected_steps_linear(l, p)?,
        };
        Ok(ExactEstimate {
            solver,
            arithmetic: "float",
            rational: None,
            value: v,
        })
    }
}

fn references(config: &ExperimentConfig, p: &Probability) -> Result<Vec<Reference>> {
    let pv = p.value();
    let mut out = Vec::new();
    let scaled = |name: &str, coeff: f64, n: usize| Reference {
        name: format!("{name} (leading order, no finite-size correction)"),
        rational: None,
        value: coeff * n as f64,
    };
    match config.family {
        Family::CambrianI2 => {
            let m = config.need(config.m, "m")?;
            let q: BigRational = dihedral_expected(m, p.exact());
            out.push(Reference {
                name: "closed form (1+m(1-p))/(2p-p^2)".into(),
                rational: p.is_fraction().then(|| q.to_string()),
                value: to_f64(&q),
            });
        }
        Family::Chain => {
            let n = config.need(config.n, "n")?;
            let q = BigRational::from_integer((n as i64).into()) / p.exact();
            out.push(Reference {
                name: "closed form r/p".into(),
                rational: p.is_fraction().then(|| q.to_string()),
                value: to_f64(&q),
            });
        }
        Family::CambrianA | Family::CambrianB | Family::CambrianD => {
            let (spec, c) = config.coxeter()?;
            let n = spec.rank;
            let rbar = match spec.kind {
                CoxeterType::A => 0.0,
                _ => r_statistic(&spec, &orientation_of(&spec, &c)?) as f64 / n as f64,
            };
            let ubar = match spec.kind {
                CoxeterType::D => {
                    crate::coxeter::u_statistic(&spec, &orientation_of(&spec, &c)?)? as f64 / n as f64
                }
                _ => 0.0,
            };
            if let Ok(coeff) = cambrian_coefficient(spec.kind, rbar.min(1.0), ubar.min(1.0), pv) {
                out.push(scaled("upper-bound coefficient x n", coeff, n));
            }
        }
        Family::RectangleLpp => {
            let (k, l) = (config.need(config.k, "k")?, config.need(config.l, "l")?);
            out.push(Reference {
                name: "(k + l + 2 sqrt((1-p) k l)) / p (leading order)".into(),
                rational: None,
                value: rectangle_coefficient(k as f64, l as f64, pv),
            });
        }
        Family::Weak => {
            let n = config.need(config.n, "n")? as f64;
            out.push(Reference {
                name: "lower bound n - 1".into(),
                rational: None,
                value: n - 1.0,
            });
            if n > 1.0 {
                out.push(Reference {
                    name: "upper bound (8/p) n ln n".into(),
                    rational: None,
                    value: 8.0 / pv * n * n.ln(),
                });
            }
        }
        Family::Tamari => {
            let n = config.need(config.n, "n")?;
            if pv < 1.0 {
                out.push(scaled("upper-bound coefficient x n", bruss::tamari_coefficient(pv)?, n));
            }
        }
        _ => {}
    }
    Ok(out)
}

fn rng_info(config: &ExperimentConfig, note: &'static str) -> RngInfo {
    RngInfo {
        generator: "ChaCha8",
        seed: config.seed,
        streams: [0, config.trials.saturating_sub(1) as u64],
        note,
    }
}

fn trials_csv(outcomes: &[TrialOutcome]) -> String {
    let mut s = String::from("trial,stream,value,capped\n");
    for (i, o) in outcomes.iter().enumerate() {
        writeln!(s, "{i},{i},{},{}", o.value, o.capped).ok();
    }
    s
}

fn trace_csv(snaps: &[(u64, Vec<u16>)]) -> String {
    let mut s = String::from("time,position,value\n");
    for (t, v) in snaps {
        for (i, x) in v.iter().enumerate() {
            writeln!(s, "{t},{},{x}", i + 1).ok();
        }
    }
    s
}

const COUPLED_NOTE: &str = "trial i draws the Bernoulli(p) variables of value b from ChaCha8 keyed by mix64(seed ^ mix64(i)) on stream b";
const TRIAL_NOTE: &str = "trial i draws from ChaCha8 seeded with seed on stream i";

fn simulate(config: &ExperimentConfig, p: &Probability, exec: Executor, art: &mut RunArtifacts) -> Result<(SimulationEstimate, Option<(String, usize)>)> {
    let params = config.params(p);
    match config.family {
        Family::Weak | Family::Tamari => {
            let n = config.need(config.n, "n")?;
            check_cap("permutation size", n, u16::MAX as usize)?;
            let weak = config.family == Family::Weak;
            // (steps, capped, stream bound ok, db monotone)
            let recs = exec.map(config.trials, |i| -> Result<(TrialOutcome, bool, bool)> {
                if weak {
                    let r = simulate_weak_chain(n, &params, i as u64, &[])?;
                    Ok((TrialOutcome { value: r.record.steps, capped: r.record.capped }, r.stream_bound_holds, true))
                } else {
                    let r = simulate_tamari_chain(n, &params, i as u64, &[])?;
                    Ok((TrialOutcome { value: r.record.steps, capped: r.record.capped }, r.stream_bound_holds, r.db_monotone))
                }
            });
            let recs: Vec<_> = recs.into_iter().collect::<Result<_>>()?;
            let outcomes: Vec<TrialOutcome> = recs.iter().map(|r| r.0).collect();
            let statistics = Statistics::from_outcomes(&outcomes);
            statistics.check_capped()?;
            if !config.snapshots.is_empty() {
                art.snapshots = if weak {
                    simulate_weak_chain(n, &params, 0, &config.snapshots)?.record.snapshots
                } else {
                    simulate_tamari_chain(n, &params, 0, &config.snapshots)?.record.snapshots
                };
            }
            art.trials_csv = Some(trials_csv(&outcomes));
            let process = if weak {
                format!("coupled Ungarian chain on the weak order of S_{n}")
            } else {
                format!("coupled Ungarian chain on Av_{n}(312) (Tamari)")
            };
            Ok((
                SimulationEstimate {
                    process,
                    statistics,
                    rng: rng_info(config, COUPLED_NOTE),
                    stream_bound_violations: Some(recs.iter().filter(|r| !r.1).count()),
                    descent_bottom_violations: (!weak).then(|| recs.iter().filter(|r| !r.2).count()),
                },
                None,
            ))
        }
        _ => {
            let built = build_lattice(config, DEFAULT_BUILD_CAP)?;
            let chain = LatticeChain {
                lattice: &built.lattice,
                p: p.value(),
            };
            let outcomes = simulate_outcomes(&chain, &params, exec)?;
            let statistics = Statistics::from_outcomes(&outcomes);
            statistics.check_capped()?;
            art.trials_csv = Some(trials_csv(&outcomes));
            Ok((
                SimulationEstimate {
                    process: "Ungarian chain from the top element".into(),
                    statistics,
                    rng: rng_info(config, TRIAL_NOTE),
                    stream_bound_violations: None,
                    descent_bottom_violations: None,
                },
                Some((built.description, built.lattice.len())),
            ))
        }
    }
}

fn lpp(config: &ExperimentConfig, p: &Probability, exec: Executor, art: &mut RunArtifacts) -> Result<(SimulationEstimate, String, Vec<Reference>)> {
    let params = config.params(p);
    let (graph, desc, mut refs) = match config.family {
        Family::RectangleLpp => {
            let (k, l) = (config.need(config.k, "k")?, config.need(config.l, "l")?);
            check_cap("rectangle cells", k.saturating_mul(l), 50_000_000)?;
            (LppGraph::rectangle(k, l)?, format!("{k} x {l} rectangle"), Vec::new())
        }
        _ => {
            let poset = config.poset_input()?;
            let mut refs = Vec::new();
            // exact E(J(P)) when J(P) is small enough
            if let Ok(j) = poset::order_ideal_lattice(&poset, config.exact_cap()) {
                let e = exact_estimate(&j, p, Mode::ExactLinear)?;
                refs.push(Reference {
                    name: "exact E(J(P))".into(),
                    rational: e.rational,
                    value: e.value,
                });
            }
            (LppGraph::from_poset(&poset), format!("poset with {} elements", poset.len()), refs)
        }
    };
    let outcomes = lpp_outcomes(&graph, &params, exec)?;
    let statistics = Statistics::from_outcomes(&outcomes);
    art.trials_csv = Some(trials_csv(&outcomes));
    refs.extend(references(config, p)?);
    Ok((
        SimulationEstimate {
            process: "last-passage percolation with geometric weights".into(),
            statistics,
            rng: rng_info(config, "trial i draws the weights, in element order, from ChaCha8 seeded with seed on stream i"),
            stream_bound_violations: None,
            descent_bottom_violations: None,
        },
        desc,
        refs,
    ))
}

/// Runs an experiment. `exec` only affects speed, never the result.
pub fn run(config: &ExperimentConfig, exec: Executor) -> Result<(ExperimentResult, RunArtifacts)> {
    let start = Instant::now();
    config.validate()?;
    let p = config.probability()?;
    let mut art = RunArtifacts::default();
    let mut result = ExperimentResult {
        schema_version: SCHEMA_VERSION,
        library: LIBRARY,
        inputs: config.clone(),
        structure: None,
        states: None,
        exact: None,
        simulation: None,
        references: Vec::new(),
        runtime_seconds: None,
    };
    match config.mode {
        Mode::ExactLinear | Mode::ExactRecursive => {
            let built = build_lattice(config, config.exact_cap())?;
            result.exact = Some(exact_estimate(&built.lattice, &p, config.mode)?);
            result.structure = Some(built.description);
            result.states = Some(built.lattice.len());
            result.references = references(config, &p)?;
        }
        Mode::Simulate => {
            let (sim, built) = simulate(config, &p, exec, &mut art)?;
            if let Some((d, n)) = built {
                result.structure = Some(d);
                result.states = Some(n);
            }
            result.simulation = Some(sim);
            result.references = references(config, &p)?;
        }
        Mode::Lpp => {
            let (sim, desc, refs) = lpp(config, &p, exec, &mut art)?;
            result.structure = Some(desc);
            result.simulation = Some(sim);
            result.references = refs;
        }
    }
    if !art.snapshots.is_empty() {
        art.trace_csv = Some(trace_csv(&art.snapshots));
    }
    if config.record_runtime {
        result.runtime_seconds = Some(start.elapsed().as_secs_f64());
    }
    Ok((result, art))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes the JSON record and whichever side outputs the config asks for.
pub fn write_outputs(config: &ExperimentConfig, result: &ExperimentResult, art: &RunArtifacts) -> Result<()> {
    if let Some(path) = &config.output {
        write_file(path, &result.to_json())?;
    }
    if let (Some(path), Some(csv)) = (&config.csv, &art.trials_csv) {
        write_file(path, csv)?;
    }
    if let Some(path) = &config.trace {
        write_file(path, art.trace_csv.as_deref().unwrap_or("time,position,value\n"))?;
    }
    if let Some(path) = &config.plot {
        if art.snapshots.is_empty() {
            return Err(Error::invalid("--plot needs --snapshots"));
        }
        write_permutation_svg(path, &snapshot_panels(&art.snapshots)?, &PlotStyle::default())?;
    }
    Ok(())
}

/// Runs `f` on a pool of `threads` workers (`None`: rayon's default). With
/// the `parallel` feature off, `f` runs on the calling thread.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    #[cfg(feature = "parallel")]
    {
        match threads {
            None => Ok(f()),
            Some(0) => Err(Error::invalid("--threads must be positive")),
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
                Ok(pool.install(f))
            }
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        if threads == Some(0) {
            return Err(Error::invalid("--threads must be positive"));
        }
        Ok(f())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_exact_example() {
        let mut cfg = ExperimentConfig::new(Family::CambrianI2, Mode::ExactLinear);
        cfg.m = Some(5);
        let (res, _) = run(&cfg, Executor::Sequential).unwrap();
        let e = res.exact.unwrap();
        assert_eq!(e.rational.as_deref(), Some("14/3"));
        assert_eq!(res.references[0].rational.as_deref(), Some("14/3"));
        cfg.mode = Mode::ExactRecursive;
        cfg.p = "0.5".into();
        let (res, _) = run(&cfg, Executor::Sequential).unwrap();
        let e = res.exact.unwrap();
        assert!(e.rational.is_none() && (e.value - 14.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn validation_errors_are_classified() {
        let mut cfg = ExperimentConfig::new(Family::Weak, Mode::ExactLinear);
        assert_eq!(cfg.validate().unwrap_err().class(), crate::ErrorClass::InvalidInput);
        cfg.n = Some(12);
        assert_eq!(cfg.validate().unwrap_err().class(), crate::ErrorClass::ResourceLimit);
        cfg.mode = Mode::Lpp;
        assert!(cfg.validate().is_err());
        let mut cfg = ExperimentConfig::new(Family::CambrianB, Mode::Simulate);
        cfg.n = Some(3);
        cfg.c = Some("s1s2".into());
        assert!(cfg.validate().is_err());
        cfg.c = Some("s1s0s2".into());
        cfg.validate().unwrap();
        cfg.p = "3/2".into();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn toml_round_trip_and_unknown_keys() {
        let cfg = ExperimentConfig::from_toml(
            "family = \"tamari\"\nmode = \"simulate\"\nn = 6\np = \"0.5\"\nseed = 9\ntrials = 50\nsnapshots = [0, 1, 2]\n",
        )
        .unwrap();
        assert_eq!(cfg.family, Family::Tamari);
        assert_eq!(cfg.snapshots, vec![0, 1, 2]);
        assert!(ExperimentConfig::from_toml("family = \"weak\"\nbogus = 1\n").is_err());
        assert!(ExperimentConfig::from_toml("family = \"nope\"\n").is_err());
    }

    #[test]
    fn simulate_is_thread_independent() {
        let mut cfg = ExperimentConfig::new(Family::Weak, Mode::Simulate);
        cfg.n = Some(12);
        cfg.trials = 64;
        cfg.seed = 5;
        cfg.snapshots = vec![0, 3, 6];
        let (a, art_a) = run(&cfg, Executor::Sequential).unwrap();
        let (b, art_b) = with_threads(Some(3), || run(&cfg, Executor::Parallel)).unwrap().unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(art_a.trials_csv, art_b.trials_csv);
        assert_eq!(art_a.snapshots.len(), 3);
        assert!(!a.to_json().contains("runtime"));
    }

    #[test]
    fn lattice_simulation_and_lpp() {
        let mut cfg = ExperimentConfig::new(Family::Chain, Mode::Simulate);
        cfg.n = Some(4);
        cfg.trials = 4000;
        cfg.seed = 1;
        let (res, _) = run(&cfg, Executor::Parallel).unwrap();
        assert!(res.simulation.unwrap().statistics.within_sigma(8.0, 4.0));

        let mut cfg = ExperimentConfig::new(Family::RectangleLpp, Mode::Lpp);
        cfg.k = Some(3);
        cfg.l = Some(3);
        cfg.trials = 200;
        let (res, art) = run(&cfg, Executor::Parallel).unwrap();
        assert!(res.simulation.is_some());
        assert_eq!(art.trials_csv.unwrap().lines().count(), 201);
    }
}
