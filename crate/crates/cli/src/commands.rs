//! Subcommand implementations.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Map, Value};
use thetadelta::coeffring::{ExactCtx, Mode, QtRat};
use thetadelta::dsl::{parse, Evaluator};
use thetadelta::macdonald::{compute_htilde, Engine, EngineConfig, HtildeStore};
use thetadelta::pathalg::{PathAlgebra, GAMMA};
use thetadelta::paths::{enumerate, gen_fn, write_csv, CSV_HEADER};
use thetadelta::symfunc::{compositions, partitions, Basis, BasisCache, Composition, Partition};
use thetadelta::verify::{CheckId, CheckReport, Profile, Status, Verifier, VerifyConfig};

use crate::config::Settings;
use crate::fail::Failure;
use crate::{BasisArg, CacheAction, Command, SuiteArg};

pub fn dispatch(s: &Settings, cmd: Command) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cmd {
        Command::Expand { basis, expr } => expand(s, &mut out, basis, &expr)?,
        Command::Verify { suite, check, params, list } => verify(s, &mut out, suite, check, &params, list)?,
        Command::Enumerate { n, k, dcomp, labels } => enumerate_paths(s, &mut out, n, k, dcomp.as_deref(), labels)?,
        Command::Cache { action, degree } => cache(s, &mut out, action, degree)?,
        Command::Bench { degree } => bench(s, &mut out, degree)?,
    }
    out.flush()?;
    Ok(())
}

fn engine_config(s: &Settings) -> EngineConfig {
    EngineConfig { max_degree: s.max_degree, cache_dir: s.cache_dir.clone() }
}

fn index_text(name: &str, lambda: &Partition) -> String {
    let parts: Vec<String> = lambda.parts().iter().map(u32::to_string).collect();
    format!("{name}[{}]", parts.join(","))
}

fn expand(s: &Settings, out: &mut impl Write, basis: BasisArg, text: &str) -> Result<(), Failure> {
    let expr = parse(text).map_err(|e| Failure::Usage(e.to_string()))?;
    let ev = Evaluator::new(&engine_config(s));
    let f = ev.eval(&expr)?;
    let (name, terms): (&str, Vec<(Partition, QtRat)>) = match basis {
        BasisArg::Htilde => {
            let mut terms = Vec::new();
            for comp in f.components().into_values() {
                terms.extend(ev.engine().expand_macdonald(&comp)?.coeffs.into_iter().filter(|(_, c)| !c.is_zero()));
            }
            ("Htilde", terms)
        }
        b => {
            let b = match b {
                BasisArg::S => Basis::S,
                BasisArg::E => Basis::E,
                BasisArg::H => Basis::H,
                BasisArg::P => Basis::P,
                _ => Basis::M,
            };
            (b.letter(), f.to_basis(ev.engine().bases(), b)?.into_iter().collect())
        }
    };
    if s.json {
        let terms: Vec<Value> = terms
            .iter()
            .map(|(l, c)| json!({"index": l.parts(), "coeff": c.to_canonical_string()}))
            .collect();
        writeln!(out, "{}", json!({"expr": expr.to_string(), "basis": name, "terms": terms}))?;
    } else if terms.is_empty() {
        writeln!(out, "0")?;
    } else {
        for (l, c) in &terms {
            writeln!(out, "{}\t{}", index_text(name, l), c.to_canonical_string())?;
        }
    }
    Ok(())
}

fn parse_param(raw: &str) -> Result<(String, Value), Failure> {
    let (k, v) = raw.split_once('=').ok_or_else(|| Failure::Usage(format!("--param `{raw}`: expected key=value")))?;
    let v = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
    Ok((k.trim().to_string(), v))
}

fn verifier(s: &Settings, mode: Mode) -> Verifier {
    Verifier::new(VerifyConfig { max_degree: s.max_degree, mode, seed: s.seed, points: 3, cache_dir: s.cache_dir.clone() })
}

fn print_reports(s: &Settings, out: &mut impl Write, reports: &mut [CheckReport]) -> Result<(), Failure> {
    for r in reports.iter_mut() {
        if !s.timings {
            r.elapsed = 0.0;
        }
        writeln!(out, "{}", r.to_json_line())?;
    }
    out.flush()?;
    let count = |st: Status| reports.iter().filter(|r| r.status == st).count();
    let failed = count(Status::Fail);
    eprintln!("{} passed, {failed} failed, {} skipped", count(Status::Pass), count(Status::Skipped));
    if failed > 0 {
        return Err(Failure::Verification(failed));
    }
    Ok(())
}

fn verify(
    s: &Settings,
    out: &mut impl Write,
    suite: Option<SuiteArg>,
    check: Option<String>,
    params: &[String],
    list: bool,
) -> Result<(), Failure> {
    if list {
        for id in CheckId::ALL {
            if s.json {
                writeln!(out, "{}", json!({"check_id": id.as_str(), "description": id.description()}))?;
            } else {
                writeln!(out, "{}\t{}", id.as_str(), id.description())?;
            }
        }
        return Ok(());
    }
    match (suite, check) {
        (Some(suite), None) => {
            if !params.is_empty() {
                return Err(Failure::Usage("--param applies to --check only".into()));
            }
            let profile = match suite {
                SuiteArg::Quick => Profile::Quick,
                SuiteArg::Full => Profile::Full,
                SuiteArg::Extended => Profile::Extended,
            };
            let mode = s.mode.unwrap_or(profile.mode());
            let mut reports = verifier(s, mode).run_suite_in_mode(profile, mode);
            print_reports(s, out, &mut reports)
        }
        (None, Some(id)) => {
            let mut map = Map::new();
            for p in params {
                let (k, v) = parse_param(p)?;
                map.insert(k, v);
            }
            let report = verifier(s, s.mode.unwrap_or(Mode::Exact))
                .run_check(&id, &map)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            print_reports(s, out, &mut [report])
        }
        _ => Err(Failure::Usage("verify needs one of --suite, --check or --list".into())),
    }
}

fn parse_composition(text: &str) -> Result<Composition, Failure> {
    let bad = || Failure::Usage(format!("--dcomp `{text}`: expected positive integers separated by commas"));
    let parts: Vec<u32> = text
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    Composition::new(parts).map_err(|_| bad())
}

fn enumerate_paths(
    s: &Settings,
    out: &mut impl Write,
    n: usize,
    k: usize,
    dcomp: Option<&str>,
    labels: Option<u32>,
) -> Result<(), Failure> {
    if n == 0 || k >= n {
        return Err(Failure::Usage(format!("need n > k >= 0, got n={n}, k={k}")));
    }
    let dcomp = dcomp.map(parse_composition).transpose()?;
    if let Some(a) = &dcomp {
        if a.size() != n - k {
            return Err(Failure::Usage(format!("--dcomp must be a composition of n-k = {}", n - k)));
        }
    }
    let paths = enumerate(n, k, labels.unwrap_or(n as u32), dcomp);
    if !s.json {
        write_csv(out, paths)?;
        return Ok(());
    }
    for p in paths {
        let row = json!({
            CSV_HEADER[0]: p.path.area_word(),
            CSV_HEADER[1]: p.dr,
            CSV_HEADER[2]: p.labels,
            CSV_HEADER[3]: p.labels.as_ref().map(|_| p.dinv()).transpose()?,
            CSV_HEADER[4]: p.area(),
            CSV_HEADER[5]: p.dcomp().parts(),
        });
        writeln!(out, "{row}")?;
    }
    Ok(())
}

fn cache_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let mut files = Vec::new();
    for sub in ["htilde", "mstar"] {
        let d = dir.join(sub);
        if !d.exists() {
            continue;
        }
        for entry in fs::read_dir(&d)? {
            let p = entry?.path();
            if p.extension().is_some_and(|x| x == "json") {
                files.push(p);
            }
        }
    }
    files.sort();
    Ok(files)
}

fn cache(s: &Settings, out: &mut impl Write, action: CacheAction, degree: Option<usize>) -> Result<(), Failure> {
    let dir = s
        .cache_dir
        .clone()
        .ok_or_else(|| Failure::Usage("no cache directory; pass --cache-dir or set THETADELTA_CACHE_DIR".into()))?;
    match action {
        CacheAction::List => {
            let files = cache_files(&dir)?;
            let rel: Vec<String> = files
                .iter()
                .map(|p| p.strip_prefix(&dir).unwrap_or(p).display().to_string())
                .collect();
            if s.json {
                writeln!(out, "{}", json!({"dir": dir.display().to_string(), "files": rel}))?;
            } else {
                for r in rel {
                    writeln!(out, "{r}")?;
                }
            }
        }
        CacheAction::Clear => {
            let files = cache_files(&dir)?;
            for f in &files {
                fs::remove_file(f)?;
            }
            if s.json {
                writeln!(out, "{}", json!({"removed": files.len()}))?;
            } else {
                writeln!(out, "removed {} files", files.len())?;
            }
        }
        CacheAction::Prewarm => {
            let degree = degree.unwrap_or(s.max_degree.min(6));
            if degree > s.max_degree {
                return Err(Failure::Usage(format!("--degree {degree} exceeds --max-degree {}", s.max_degree)));
            }
            let bases = Arc::new(BasisCache::new(s.max_degree));
            let store = HtildeStore::new(bases.clone(), Some(&dir));
            let mut htilde = 0;
            for d in 1..=degree {
                for mu in partitions(d) {
                    store.get(&mu)?;
                    htilde += 1;
                }
            }
            let alg = PathAlgebra::with_options(ExactCtx, bases, GAMMA, Some(&dir))?;
            let mut mstar = 0;
            for n in 1..=degree {
                for k in 0..n {
                    for alpha in compositions(n - k) {
                        alg.m_star(&alpha, k as i64)?;
                        mstar += 1;
                    }
                }
            }
            if s.json {
                writeln!(out, "{}", json!({"htilde": htilde, "mstar": mstar, "degree": degree}))?;
            } else {
                writeln!(out, "htilde: {htilde} partitions, mstar: {mstar} elements, degree <= {degree}")?;
            }
        }
    }
    Ok(())
}

fn timed<T>(f: impl FnOnce() -> Result<T, Failure>) -> Result<f64, Failure> {
    let start = Instant::now();
    f()?;
    Ok(start.elapsed().as_secs_f64())
}

fn bench(s: &Settings, out: &mut impl Write, degree: usize) -> Result<(), Failure> {
    if degree < 2 || degree > s.max_degree {
        return Err(Failure::Usage(format!("--degree must lie in 2..={}", s.max_degree)));
    }
    let d = degree;
    let mut rows: Vec<(&str, String, f64)> = Vec::new();
    rows.push((
        "coeffring",
        format!("sum of 1/(1 - q^i t^j), i, j < {d}"),
        timed(|| {
            let mut acc = QtRat::zero();
            for i in 0..d as u32 {
                for j in 0..d as u32 {
                    if i + j > 0 {
                        let den = QtRat::one() - QtRat::monomial(1, i, j);
                        acc = &acc + &QtRat::one().checked_div(&den)?;
                    }
                }
            }
            Ok(acc)
        })?,
    ));
    rows.push((
        "symfunc",
        format!("transition matrices, degree {d}"),
        timed(|| Ok(BasisCache::new(d).tables(d)?))?,
    ));
    let bases = Arc::new(BasisCache::new(s.max_degree));
    rows.push((
        "macdonald",
        format!("H~_mu for all mu of size {d}"),
        timed(|| {
            for mu in partitions(d) {
                compute_htilde(&bases, &mu)?;
            }
            Ok(())
        })?,
    ));
    let eng = Engine::new(ExactCtx, &EngineConfig { max_degree: s.max_degree, cache_dir: None });
    rows.push(("macdonald", format!("nabla e_{d}"), timed(|| Ok(eng.nabla(&eng.e(d)?, false)?))?));
    rows.push(("paths", format!("generating function of LD({d})^(*1)"), timed(|| Ok(gen_fn(&bases, d, 1, None)?))?));
    let alg = PathAlgebra::new(ExactCtx, bases.clone())?;
    let alpha = Composition::new(vec![1; d - 1])?;
    rows.push(("pathalg", format!("M*_alpha^(*1), alpha = {alpha}"), timed(|| Ok(alg.m_star_reduced(&alpha, 1)?))?));
    let v = verifier(s, Mode::Evaluated);
    rows.push(("verify", "quick suite".into(), timed(|| Ok(v.run_suite(Profile::Quick)))?));
    for (module, case, secs) in rows {
        if s.json {
            writeln!(out, "{}", json!({"module": module, "case": case, "seconds": secs}))?;
        } else {
            writeln!(out, "{module}\t{case}\t{secs:.3}")?;
        }
    }
    Ok(())
}

