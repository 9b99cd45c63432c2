//! The command layer behind the binary: each command parses a group spec,
//! runs the requested computation, and returns a JSON payload that is
//! byte-deterministic for a fixed input — volatile fields (timestamp,
//! elapsed time, cache status) are attached separately under `meta` so
//! comparisons can exclude them wholesale.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::cache::{default_cache_path, Cache, CacheStatus};
use crate::catalog::default_catalog_dir;
use crate::closure::{two_closure_bruteforce, two_closure_with, ClosureOptions};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::orbitals::{export_dot, orbital_partition};
use crate::spec_lang::GroupSpec;
use crate::structure::structure_report;
use crate::t2c::{
    default_max_degree, faithful_rep_specs, t2c_search, theorem_classifier, T2COutcome,
};
use crate::verify::{default_catalog_file, run_suite};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Brute,
    Backtrack,
    Both,
}

impl Engine {
    pub fn as_str(&self) -> &'static str {
        match self {
            Engine::Brute => "brute",
            Engine::Backtrack => "backtrack",
            Engine::Both => "both",
        }
    }
}

impl FromStr for Engine {
    type Err = Error;
    fn from_str(text: &str) -> Result<Engine> {
        match text {
            "brute" => Ok(Engine::Brute),
            "backtrack" => Ok(Engine::Backtrack),
            "both" => Ok(Engine::Both),
            other => Err(Error::ParseError(format!(
                "engine must be brute, backtrack or both, not `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(text: &str) -> Result<OutputFormat> {
        match text {
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::ParseError(format!(
                "format must be json or text, not `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub max_degree: Option<usize>,
    pub engine: Engine,
    pub dot: Option<PathBuf>,
    pub cache: Option<PathBuf>,
    pub node_budget: Option<u64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            max_degree: None,
            engine: Engine::Backtrack,
            dot: None,
            cache: None,
            node_budget: None,
        }
    }
}

#[derive(Debug)]
pub struct RunOutput {
    pub payload: Value,
    /// A verify run with failing instances: report it, then exit nonzero.
    pub verification_failed: bool,
    pub cache_status: Option<CacheStatus>,
}

fn closure_options(opts: &RunOptions) -> ClosureOptions {
    let mut c = ClosureOptions::default();
    if let Some(d) = opts.max_degree {
        c.degree_cap = d;
    }
    if let Some(b) = opts.node_budget {
        c.node_budget = b;
    }
    c
}

/// Group orders can exceed u64 at full symmetric degree; fall back to a
/// decimal string rather than lose precision.
fn order_value(n: u128) -> Value {
    u64::try_from(n).map(Value::from).unwrap_or_else(|_| Value::from(n.to_string()))
}

fn cache_params(opts: &RunOptions, bound: Option<usize>) -> BTreeMap<String, String> {
    let mut params = BTreeMap::new();
    params.insert("engine".to_string(), opts.engine.as_str().to_string());
    if let Some(d) = bound {
        params.insert("max-degree".to_string(), d.to_string());
    }
    if let Some(b) = opts.node_budget {
        params.insert("node-budget".to_string(), b.to_string());
    }
    params
}

fn with_cache(
    opts: &RunOptions,
    command: &str,
    spec: &str,
    params: &BTreeMap<String, String>,
    compute: impl Fn() -> Result<Value>,
) -> Result<(Value, Option<CacheStatus>)> {
    match opts.cache.clone().or_else(default_cache_path) {
        Some(path) => {
            let mut cache = Cache::open(&path);
            let (value, status) = cache.get_or_compute(command, spec, params, compute)?;
            Ok((value, Some(status)))
        }
        None => Ok((compute()?, None)),
    }
}

fn maybe_export_dot(opts: &RunOptions, g: &PermGroup, allowed: bool) -> Result<()> {
    match &opts.dot {
        None => Ok(()),
        Some(_) if !allowed => Err(Error::BadParameter(
            "--dot applies to the closure and orbitals commands".into(),
        )),
        Some(path) => {
            let part = orbital_partition(g)?;
            std::fs::write(path, export_dot(&part))?;
            Ok(())
        }
    }
}

fn parse_and_build(spec_text: &str) -> Result<(String, PermGroup)> {
    let spec = GroupSpec::parse(spec_text)?;
    Ok((spec.to_string(), spec.materialize()?))
}

pub fn closure_command(spec_text: &str, opts: &RunOptions) -> Result<RunOutput> {
    let (canonical, g) = parse_and_build(spec_text)?;
    maybe_export_dot(opts, &g, true)?;
    let copts = closure_options(opts);
    let compute = || -> Result<Value> {
        let result = match opts.engine {
            Engine::Brute => two_closure_bruteforce(&g)?,
            Engine::Backtrack => two_closure_with(&g, &copts)?,
            Engine::Both => {
                let brute = two_closure_bruteforce(&g)?;
                let backtrack = two_closure_with(&g, &copts)?;
                if !brute.closure.equals(&backtrack.closure)? {
                    return Err(Error::EnginesDisagree(format!(
                        "brute closure has order {}, backtrack {}",
                        brute.closure.order()?,
                        backtrack.closure.order()?
                    )));
                }
                backtrack
            }
        };
        Ok(json!({
            "spec": canonical,
            "degree": g.degree(),
            "order": order_value(result.input.order()?),
            "closure_order": order_value(result.closure.order()?),
            "equals": result.equals_input,
            "engine": opts.engine.as_str(),
            "rank": orbital_partition(&g)?.rank(),
        }))
    };
    let (payload, cache_status) =
        with_cache(opts, "closure", &canonical, &cache_params(opts, None), compute)?;
    Ok(RunOutput { payload, verification_failed: false, cache_status })
}

pub fn orbitals_command(spec_text: &str, opts: &RunOptions) -> Result<RunOutput> {
    let (canonical, g) = parse_and_build(spec_text)?;
    maybe_export_dot(opts, &g, true)?;
    let compute = || -> Result<Value> {
        let part = orbital_partition(&g)?;
        let representatives: Vec<Value> =
            part.representatives().iter().map(|&(a, b)| json!([a, b])).collect();
        let self_paired = part
            .representatives()
            .iter()
            .enumerate()
            .filter(|(c, &(a, b))| part.color(b, a) as usize == *c)
            .count();
        Ok(json!({
            "spec": canonical,
            "degree": g.degree(),
            "order": order_value(g.order()?),
            "rank": part.rank(),
            "class_sizes": part.class_sizes(),
            "representatives": representatives,
            "self_paired_classes": self_paired,
            "transitive": g.is_transitive(),
        }))
    };
    let (payload, cache_status) =
        with_cache(opts, "orbitals", &canonical, &cache_params(opts, None), compute)?;
    Ok(RunOutput { payload, verification_failed: false, cache_status })
}

pub fn structure_command(spec_text: &str, opts: &RunOptions) -> Result<RunOutput> {
    let (canonical, g) = parse_and_build(spec_text)?;
    maybe_export_dot(opts, &g, false)?;
    let compute = || -> Result<Value> {
        let report = structure_report(&g)?;
        let verdict = theorem_classifier(&g)?;
        Ok(json!({
            "spec": canonical,
            "degree": g.degree(),
            "order": order_value(report.order),
            "abelian": report.is_abelian,
            "cyclic": report.is_cyclic,
            "nilpotent": report.is_nilpotent,
            "soluble": report.is_soluble,
            "generalized_quaternion": report.is_generalized_quaternion,
            "p_group": report.p_group,
            "center_order": order_value(report.center_order),
            "fitting_order": order_value(report.fitting_order),
            "classification_tag": report.classification_tag.as_str(),
            "t2c_prediction": verdict.prediction.as_str(),
            "rule": verdict.rule,
        }))
    };
    let (payload, cache_status) =
        with_cache(opts, "structure", &canonical, &cache_params(opts, None), compute)?;
    Ok(RunOutput { payload, verification_failed: false, cache_status })
}

pub fn reps_command(spec_text: &str, opts: &RunOptions) -> Result<RunOutput> {
    let (canonical, g) = parse_and_build(spec_text)?;
    maybe_export_dot(opts, &g, false)?;
    let bound = match opts.max_degree {
        Some(d) => d,
        None => default_max_degree(&g)?,
    };
    let compute = || -> Result<Value> {
        let specs = faithful_rep_specs(&g, bound)?;
        let reps: Vec<Value> = specs
            .iter()
            .map(|s| {
                let blocks: Vec<Value> = s
                    .profile()?
                    .into_iter()
                    .map(|(index, multiplicity, stabilizer_order)| {
                        json!({
                            "index": index,
                            "multiplicity": multiplicity,
                            "stabilizer_order": order_value(stabilizer_order),
                        })
                    })
                    .collect();
                Ok(json!({ "degree": s.degree, "blocks": blocks }))
            })
            .collect::<Result<_>>()?;
        Ok(json!({
            "spec": canonical,
            "order": order_value(g.order()?),
            "max_degree": bound,
            "count": reps.len(),
            "reps": reps,
        }))
    };
    let (payload, cache_status) =
        with_cache(opts, "reps", &canonical, &cache_params(opts, Some(bound)), compute)?;
    Ok(RunOutput { payload, verification_failed: false, cache_status })
}

pub fn t2c_command(spec_text: &str, opts: &RunOptions) -> Result<RunOutput> {
    let (canonical, g) = parse_and_build(spec_text)?;
    maybe_export_dot(opts, &g, false)?;
    let bound = match opts.max_degree {
        Some(d) => d,
        None => default_max_degree(&g)?,
    };
    let compute = || -> Result<Value> {
        let verdict = t2c_search(&g, bound)?;
        let theorem = format!(
            "{}: {}",
            verdict.prediction.rule,
            verdict.prediction.prediction.as_str()
        );
        Ok(match &verdict.outcome {
            T2COutcome::NotTotally2Closed { witness, closure_order } => json!({
                "spec": canonical,
                "outcome": "not_totally_2closed",
                "witness_degree": witness.degree,
                "witness": witness.to_string(),
                "closure_order": order_value(*closure_order),
                "theorem": theorem,
            }),
            T2COutcome::NoFailureUpToDegree { bound } => json!({
                "spec": canonical,
                "outcome": "no_failure_up_to_degree",
                "bound": bound,
                "theorem": theorem,
            }),
        })
    };
    let (payload, cache_status) =
        with_cache(opts, "t2c", &canonical, &cache_params(opts, Some(bound)), compute)?;
    Ok(RunOutput { payload, verification_failed: false, cache_status })
}

pub fn verify_command(
    suite: &str,
    catalog: Option<&Path>,
    opts: &RunOptions,
) -> Result<RunOutput> {
    if opts.dot.is_some() {
        return Err(Error::BadParameter(
            "--dot applies to the closure and orbitals commands".into(),
        ));
    }
    let path = match catalog {
        Some(p) => p.to_path_buf(),
        None => default_catalog_dir().join(default_catalog_file(suite)?),
    };
    let report = run_suite(suite, &path, &closure_options(opts))?;
    let failed = !report.passed();
    Ok(RunOutput {
        payload: serde_json::to_value(&report)?,
        verification_failed: failed,
        cache_status: None,
    })
}

/// Wraps a payload with the volatile `meta` block the determinism contract
/// excludes: wall-clock timestamp, elapsed time, code version, cache use.
pub fn attach_meta(payload: Value, elapsed_ms: u128, cache_status: Option<CacheStatus>) -> Value {
    let mut map = match payload {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    let timestamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    map.insert(
        "meta".into(),
        json!({
            "timestamp": timestamp,
            "elapsed_ms": elapsed_ms as u64,
            "version": env!("CARGO_PKG_VERSION"),
            "cache": cache_status.map(|s| s.as_str()),
        }),
    );
    Value::Object(map)
}

/// Human-readable rendering of a payload: flat `key = value` lines, suite
/// reports as one line per instance. The `meta` block is summarized last.
pub fn render_text(payload: &Value) -> String {
    let mut out = String::new();
    let Some(map) = payload.as_object() else {
        return payload.to_string();
    };
    if let Some(outcomes) = map.get("outcomes").and_then(Value::as_array) {
        out.push_str(&format!(
            "suite {} over {}\n",
            map.get("suite").and_then(Value::as_str).unwrap_or("?"),
            map.get("catalog").and_then(Value::as_str).unwrap_or("?"),
        ));
        for o in outcomes {
            out.push_str(&format!(
                "[{}] {} — {}\n",
                if o.get("passed") == Some(&Value::Bool(true)) { " ok " } else { "FAIL" },
                o.get("name").and_then(Value::as_str).unwrap_or("?"),
                o.get("detail").and_then(Value::as_str).unwrap_or(""),
            ));
        }
        out.push_str(&format!(
            "checked {} cases, {} failures\n",
            map.get("checked").and_then(Value::as_u64).unwrap_or(0),
            map.get("failures").and_then(Value::as_u64).unwrap_or(0),
        ));
    } else {
        for (key, value) in map {
            if key == "meta" {
                continue;
            }
            match value {
                Value::String(s) => out.push_str(&format!("{key} = {s}\n")),
                other => out.push_str(&format!("{key} = {other}\n")),
            }
        }
    }
    if let Some(meta) = map.get("meta").and_then(Value::as_object) {
        out.push_str(&format!(
            "({} ms, version {})\n",
            meta.get("elapsed_ms").and_then(Value::as_u64).unwrap_or(0),
            meta.get("version").and_then(Value::as_str).unwrap_or("?"),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_the_alternating_group_matches_the_pinned_values() {
        let out = closure_command("alt:4", &RunOptions::default()).unwrap();
        let p = &out.payload;
        assert_eq!(p["order"], json!(12));
        assert_eq!(p["closure_order"], json!(24));
        assert_eq!(p["equals"], json!(false));
        assert_eq!(p["rank"], json!(2));
    }

    #[test]
    fn t2c_on_sym3_matches_the_pinned_values() {
        let opts = RunOptions { max_degree: Some(6), ..RunOptions::default() };
        let out = t2c_command("sym:3", &opts).unwrap();
        let p = &out.payload;
        assert_eq!(p["outcome"], json!("not_totally_2closed"));
        assert_eq!(p["witness_degree"], json!(5));
        assert_eq!(p["closure_order"], json!(12));
        assert_eq!(p["theorem"], json!("Theorem A: NotT2C"));
    }

    #[test]
    fn structure_of_the_quaternion_group_matches_the_pinned_values() {
        let out = structure_command("quaternion:8", &RunOptions::default()).unwrap();
        let p = &out.payload;
        assert_eq!(
            p["classification_tag"],
            json!("odd-cyclic-times-generalized-quaternion")
        );
        assert_eq!(p["t2c_prediction"], json!("T2C"));
    }

    #[test]
    fn engines_agree_when_asked_to_cross_check() {
        let opts = RunOptions { engine: Engine::Both, ..RunOptions::default() };
        let out = closure_command("sym:3 x cyclic:2 @disjoint", &opts).unwrap();
        assert_eq!(out.payload["closure_order"], json!(12));
    }

    #[test]
    fn reps_of_sym3_up_to_degree_five() {
        let opts = RunOptions { max_degree: Some(5), ..RunOptions::default() };
        let out = reps_command("sym:3", &opts).unwrap();
        let p = &out.payload;
        assert_eq!(p["count"], json!(2));
        assert_eq!(p["reps"][0]["degree"], json!(3));
        assert_eq!(p["reps"][1]["degree"], json!(5));
    }

    #[test]
    fn bad_specs_and_flags_map_to_parse_and_parameter_errors() {
        let e = closure_command("frobnitz:5", &RunOptions::default()).unwrap_err();
        assert!(matches!(e, Error::UnknownFamily(_)));
        let e = closure_command("cyclic:", &RunOptions::default()).unwrap_err();
        assert!(matches!(e, Error::ParseError(_)));
        let dir = tempfile::tempdir().unwrap();
        let opts = RunOptions {
            dot: Some(dir.path().join("x.dot")),
            ..RunOptions::default()
        };
        let e = t2c_command("sym:3", &opts).unwrap_err();
        assert!(matches!(e, Error::BadParameter(_)));
        assert!(matches!("fast".parse::<Engine>(), Err(Error::ParseError(_))));
        assert!(matches!("yaml".parse::<OutputFormat>(), Err(Error::ParseError(_))));
    }

    #[test]
    fn dot_export_writes_the_orbital_digraph() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c4.dot");
        let opts = RunOptions { dot: Some(path.clone()), ..RunOptions::default() };
        orbitals_command("cyclic:4", &opts).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("digraph {"));
        assert!(text.contains("0 -> 1 [color="));
    }

    #[test]
    fn cached_runs_return_identical_payloads() {
        let dir = tempfile::tempdir().unwrap();
        let opts = RunOptions {
            cache: Some(dir.path().join("cache.jsonl")),
            ..RunOptions::default()
        };
        let first = closure_command("dihedral:4", &opts).unwrap();
        assert_eq!(first.cache_status, Some(CacheStatus::Fresh));
        let second = closure_command("dihedral:4", &opts).unwrap();
        assert!(matches!(
            second.cache_status,
            Some(CacheStatus::Hit) | Some(CacheStatus::Reverified)
        ));
        assert_eq!(first.payload, second.payload);
    }

    #[test]
    fn verify_command_reports_and_flags_failures() {
        let out = verify_command("theorem-B", None, &RunOptions::default()).unwrap();
        assert!(!out.verification_failed);
        assert_eq!(out.payload["failures"], json!(0));
        let e = verify_command("lemma-9000", None, &RunOptions::default()).unwrap_err();
        assert!(matches!(e, Error::UnknownSuite(_)));
    }

    #[test]
    fn meta_is_attached_and_text_rendering_skips_it() {
        let payload = json!({"order": 12, "spec": "alt:4"});
        let with_meta = attach_meta(payload, 7, Some(CacheStatus::Fresh));
        assert_eq!(with_meta["meta"]["elapsed_ms"], json!(7));
        assert_eq!(with_meta["meta"]["cache"], json!("fresh"));
        let text = render_text(&with_meta);
        assert!(text.contains("order = 12"));
        assert!(text.contains("spec = alt:4"));
        assert!(!text.contains("timestamp"));
    }
}
