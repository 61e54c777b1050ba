//! Running checks at evaluation points and exactly, singly or as a suite.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{Map, Value};

use super::checks::{compute, normalize, CheckId, Env, PathTable};
use super::report::{CheckReport, Sides, Status};
use crate::coeffring::{ExactCtx, ModCtx, Mode, ScalarCtx};
use crate::error::{Error, Result};
use crate::macdonald::{Engine, HtildeStore};
use crate::pathalg::{PathAlgebra, GAMMA};
use crate::paths::gen_fn_by_dcomp;
use crate::symfunc::{compositions, partitions, BasisCache};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Profile {
    /// Evaluated mode, sizes up to 4.
    Quick,
    /// Exact mode, sizes up to 5.
    Full,
    /// Exact mode, sizes up to 6.
    Extended,
}

impl Profile {
    pub fn bound(self) -> usize {
        match self {
            Profile::Quick => 4,
            Profile::Full => 5,
            Profile::Extended => 6,
        }
    }

    pub fn mode(self) -> Mode {
        match self {
            Profile::Quick => Mode::Evaluated,
            Profile::Full | Profile::Extended => Mode::Exact,
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
            Profile::Extended => "extended",
        })
    }
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            "extended" => Ok(Profile::Extended),
            _ => Err(Error::domain(format!("unknown profile `{s}`; expected quick, full or extended"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_degree: usize,
    pub mode: Mode,
    pub seed: u64,
    /// Evaluation points per check; at least 3 are used.
    pub points: usize,
    pub cache_dir: Option<PathBuf>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_degree: 8, mode: Mode::Exact, seed: 0, points: 3, cache_dir: None }
    }
}

pub struct Verifier {
    cfg: VerifyConfig,
    bases: Arc<BasisCache>,
    store: Arc<HtildeStore>,
    exact: OnceLock<Result<Env<ExactCtx>, String>>,
    evaluated: Mutex<HashMap<u64, Arc<Env<ModCtx>>>>,
    paths: Mutex<HashMap<(usize, usize), Arc<PathTable>>>,
}

/// Result of comparing the two sides at one or more points.
enum Outcome {
    Equal(Sides),
    Differ(Sides),
    Error(Error),
}

impl Verifier {
    pub fn new(cfg: VerifyConfig) -> Self {
        let bases = Arc::new(BasisCache::new(cfg.max_degree));
        let store = Arc::new(HtildeStore::new(bases.clone(), cfg.cache_dir.as_deref()));
        Verifier {
            cfg,
            bases,
            store,
            exact: OnceLock::new(),
            evaluated: Mutex::new(HashMap::new()),
            paths: Mutex::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &VerifyConfig {
        &self.cfg
    }

    pub fn store(&self) -> &Arc<HtildeStore> {
        &self.store
    }

    fn exact_env(&self) -> Result<&Env<ExactCtx>> {
        self.exact
            .get_or_init(|| {
                let alg = PathAlgebra::with_options(ExactCtx, self.bases.clone(), GAMMA, self.cfg.cache_dir.as_deref())
                    .map_err(|e| e.to_string())?;
                Ok(Env { eng: Engine::with_shared(ExactCtx, self.bases.clone(), self.store.clone()), alg })
            })
            .as_ref()
            .map_err(|e| Error::internal(e.clone()))
    }

    fn evaluated_env(&self, seed: u64) -> Result<Arc<Env<ModCtx>>> {
        if let Some(env) = self.evaluated.lock().expect("lock poisoned").get(&seed) {
            return Ok(env.clone());
        }
        let ctx = ModCtx::from_seed(seed);
        let alg = PathAlgebra::with_options(ctx, self.bases.clone(), GAMMA, None)?;
        let env = Arc::new(Env { eng: Engine::with_shared(ctx, self.bases.clone(), self.store.clone()), alg });
        self.evaluated.lock().expect("lock poisoned").insert(seed, env.clone());
        Ok(env)
    }

    fn path_table(&self, n: usize, k: usize) -> Result<Arc<PathTable>> {
        if let Some(t) = self.paths.lock().expect("lock poisoned").get(&(n, k)) {
            return Ok(t.clone());
        }
        let t = Arc::new(gen_fn_by_dcomp(&self.bases, n, k)?);
        self.paths.lock().expect("lock poisoned").insert((n, k), t.clone());
        Ok(t)
    }

    fn outcome<K: ScalarCtx>(&self, env: &Env<K>, id: CheckId, params: &Map<String, Value>) -> Outcome {
        let paths = |n, k| self.path_table(n, k);
        match compute(env, &paths, id, params) {
            Ok(sides) if sides.lhs == sides.rhs => Outcome::Equal(sides),
            Ok(sides) => Outcome::Differ(sides),
            Err(e) => Outcome::Error(e),
        }
    }

    /// Evaluates at `points` seeded points, skipping points where a
    /// denominator vanishes. Stops at the first disagreement.
    fn evaluated_pass(&self, id: CheckId, params: &Map<String, Value>, seeds: &mut Vec<u64>) -> Outcome {
        let want = self.cfg.points.max(3);
        let mut last = None;
        let mut i = 0u64;
        while seeds.len() < want {
            if i >= 8 * want as u64 {
                return Outcome::Error(Error::internal("too many evaluation points hit a pole"));
            }
            let seed = self.cfg.seed.wrapping_add(i);
            i += 1;
            let env = match self.evaluated_env(seed) {
                Ok(env) => env,
                Err(Error::Pole) => continue,
                Err(e) => return Outcome::Error(e),
            };
            match self.outcome(env.as_ref(), id, params) {
                Outcome::Error(Error::Pole) => continue,
                Outcome::Equal(s) => {
                    seeds.push(seed);
                    last = Some(s);
                }
                other => {
                    seeds.push(seed);
                    return other;
                }
            }
        }
        Outcome::Equal(last.expect("at least one point"))
    }

    /// Runs one check in the configured mode. Exact runs are preceded by
    /// an evaluated pass and skipped if it fails.
    pub fn run_check(&self, check_id: &str, params: &Map<String, Value>) -> Result<CheckReport> {
        self.run_in_mode(check_id.parse()?, params, self.cfg.mode)
    }

    fn run_in_mode(&self, id: CheckId, params: &Map<String, Value>, mode: Mode) -> Result<CheckReport> {
        let params = normalize(id, params, self.cfg.max_degree, self.cfg.seed)?;
        let start = Instant::now();
        let mut seeds = Vec::new();
        let mut report_mode = Mode::Evaluated;
        let mut outcome = self.evaluated_pass(id, &params, &mut seeds);
        let mut message = None;
        if mode == Mode::Exact {
            match outcome {
                Outcome::Equal(_) => {
                    report_mode = Mode::Exact;
                    outcome = match self.exact_env() {
                        Ok(env) => self.outcome(env, id, &params),
                        Err(e) => Outcome::Error(e),
                    };
                }
                Outcome::Differ(_) => message = Some("evaluated pass failed; exact run not attempted".to_string()),
                Outcome::Error(_) => {}
            }
        }
        let (status, sides, err) = match outcome {
            Outcome::Equal(s) => (Status::Pass, s, None),
            Outcome::Differ(s) => (Status::Fail, s, None),
            Outcome::Error(e @ Error::DegreeBound { .. }) => (Status::Skipped, Sides::default(), Some(e)),
            Outcome::Error(e) => (Status::Fail, Sides::default(), Some(e)),
        };
        let (lhs, rhs) = match &err {
            Some(_) => (Value::Null, Value::Null),
            None => sides.report_forms(status == Status::Pass),
        };
        if let Some(e) = err {
            message = Some(e.to_string());
        }
        Ok(CheckReport {
            check_id: id.to_string(),
            params,
            status,
            lhs,
            rhs,
            witness: if status == Status::Fail { sides.witness() } else { None },
            message,
            mode: report_mode,
            seeds,
            elapsed: start.elapsed().as_secs_f64(),
        })
    }

    /// Every registered check over the parameter ranges of `profile`, in
    /// registry order, with the mode the profile prescribes.
    pub fn run_suite(&self, profile: Profile) -> Vec<CheckReport> {
        self.run_suite_in_mode(profile, profile.mode())
    }

    /// [`Verifier::run_suite`] with the mode overridden.
    pub fn run_suite_in_mode(&self, profile: Profile, mode: Mode) -> Vec<CheckReport> {
        let jobs = suite_jobs(profile, self.cfg.max_degree);
        jobs.par_iter()
            .map(|(id, params)| {
                self.run_in_mode(*id, params, mode).unwrap_or_else(|e| CheckReport {
                    check_id: id.to_string(),
                    params: params.clone(),
                    status: Status::Fail,
                    lhs: Value::Null,
                    rhs: Value::Null,
                    witness: None,
                    message: Some(e.to_string()),
                    mode: mode,
                    seeds: Vec::new(),
                    elapsed: 0.0,
                })
            })
            .collect()
    }
}

fn obj(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// The parameter sets a profile runs, in registry order.
pub fn suite_jobs(profile: Profile, max_degree: usize) -> Vec<(CheckId, Map<String, Value>)> {
    let n_max = profile.bound();
    let order = n_max + 1;
    let mut jobs = Vec::new();
    for id in CheckId::ALL {
        let mut add = |pairs: &[(&str, Value)]| jobs.push((id, obj(pairs)));
        match id {
            CheckId::CompDelta => {
                for n in 1..=n_max {
                    for k in 0..n {
                        for alpha in compositions(n - k) {
                            add(&[("n", n.into()), ("k", k.into()), ("alpha", alpha.parts().to_vec().into())]);
                        }
                    }
                }
            }
            CheckId::DeltaRise | CheckId::Thm21 => {
                for n in 1..=n_max {
                    for k in 0..n {
                        add(&[("n", n.into()), ("k", k.into())]);
                    }
                }
            }
            CheckId::EnkSum => {
                for n in 1..=n_max {
                    add(&[("n", n.into())]);
                }
            }
            CheckId::ThetaNabla => {
                for k in 0..=n_max {
                    for d in 0..=n_max - k {
                        add(&[("k", k.into()), ("d", d.into())]);
                    }
                }
            }
            CheckId::FiveTerm | CheckId::GenSeries2 => {
                for d in 0..=n_max.min(max_degree) {
                    add(&[("d", d.into()), ("order", order.into()), ("top", n_max.min(max_degree).into())]);
                }
            }
            CheckId::GenSeriesCoeff => {
                for d in 0..=2 {
                    for k in 0..=n_max - d {
                        for m in 0..=k + d {
                            add(&[("m", m.into()), ("k", k.into()), ("d", d.into())]);
                        }
                    }
                }
            }
            CheckId::TauUnit => add(&[("order", n_max.into())]),
            CheckId::YRecursion => {
                for a in 2..=4 {
                    for alpha in [vec![], vec![1], vec![2], vec![1, 1]] {
                        add(&[("a", a.into()), ("alpha", alpha.into())]);
                    }
                }
            }
            CheckId::TauCommutations => {
                for k in 0..=3 {
                    add(&[("k", k.into()), ("degree", 3.into())]);
                }
            }
            CheckId::CAlphaBridge => {
                for n in 1..=n_max {
                    for alpha in compositions(n) {
                        add(&[("alpha", alpha.parts().to_vec().into())]);
                    }
                }
            }
            CheckId::MacdonaldAxioms => {
                for n in 1..=n_max.min(max_degree) {
                    for mu in partitions(n) {
                        add(&[("mu", mu.parts().to_vec().into())]);
                    }
                }
            }
            CheckId::Hecke => add(&[("degree", 3.into())]),
        }
    }
    jobs
}
