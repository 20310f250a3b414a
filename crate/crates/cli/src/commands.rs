use crate::config::{ConfigError, RunConfig};
use crate::Common;
use momentope::admissible::{check_hypotheses, enumerate_admissible, GroupSetup, Refusal};
use momentope::exact::{self, Rational};
use momentope::oracle::{facet_tightness, monte_carlo_validate, OracleError};
use momentope::ressayre::{
    fingerprint, generate_inequalities, GenerateError, GenerateOptions, Mode, Point, PolytopeDescription,
};
use momentope::roots::{Coweight, RootDatum, WeylElement};
use momentope::schubert::FlagVariety;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("refused: {0}")]
    Refused(Refusal),
    #[error("{0}")]
    Failed(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Failed(_) => ExitCode::from(1),
            CliError::Refused(_) => ExitCode::from(3),
            _ => ExitCode::from(2),
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(io(path))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(io(dir))?;
            }
            std::fs::write(p, text).map_err(io(p))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Configuration with command-line overrides applied.
fn load(common: &Common) -> Result<RunConfig, CliError> {
    let path = common.config.as_ref().ok_or_else(|| usage("--config is required"))?;
    let mut cfg = RunConfig::load(path)?;
    if let Some(m) = &common.mode {
        m.parse::<Mode>().map_err(usage)?;
        cfg.run.mode = m.clone();
    }
    if let Some(s) = common.samples {
        cfg.run.samples = s;
    }
    if let Some(s) = common.seed {
        cfg.run.seed = s;
    }
    if let Some(t) = common.threads {
        cfg.run.threads = Some(t);
    }
    if let Some(o) = &common.out {
        cfg.run.out = Some(o.clone());
    }
    init_threads(cfg.run.threads)?;
    Ok(cfg)
}

fn init_threads(threads: Option<usize>) -> Result<(), CliError> {
    if let Some(n) = threads {
        if n == 0 {
            return Err(usage("--threads must be positive"));
        }
        // A second initialization in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

pub fn cache_path(dir: &Path, fp: &str, mode: Mode, pruned: bool) -> PathBuf {
    dir.join(format!("{fp}-{mode}{}.json", if pruned { "-pruned" } else { "" }))
}

pub fn generate(common: &Common) -> Result<ExitCode, CliError> {
    let cfg = load(common)?;
    let setup = cfg.setup()?;
    let mode = cfg.mode()?;
    let cached = cfg.run.cache_dir.as_ref().map(|d| cache_path(d, &fingerprint(&setup), mode, common.prune_lp));
    if let Some(p) = cached.as_ref().filter(|p| p.exists()) {
        let text = read(p)?;
        PolytopeDescription::from_json(&text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
        eprintln!("cache hit: {}", p.display());
        write_output(cfg.run.out.as_deref(), &text)?;
        return Ok(ExitCode::SUCCESS);
    }
    let options = GenerateOptions { mode, prune_lp: common.prune_lp, ..Default::default() };
    let p = generate_inequalities(&setup, &options).map_err(|e| match e {
        GenerateError::Refused(r) => CliError::Refused(r),
        other => CliError::Failed(other.to_string()),
    })?;
    let text = p.to_json();
    if let Some(c) = &cached {
        write_output(Some(c), &text)?;
    }
    write_output(cfg.run.out.as_deref(), &text)?;
    eprintln!(
        "{} inequalities from {} admissible directions ({} candidate pairs)",
        p.inequalities.len(),
        p.admissible.len(),
        p.stats.candidates
    );
    if common.prune_lp {
        eprintln!("LP pruning (heuristic) removed {}", p.pruned.len());
    }
    Ok(ExitCode::SUCCESS)
}

fn load_polytope(path: &Path) -> Result<PolytopeDescription, CliError> {
    PolytopeDescription::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn oracle_error(e: OracleError) -> CliError {
    match e {
        OracleError::FingerprintMismatch { .. } => CliError::Failed(format!("refusing to verify: {e}")),
        other => usage(other),
    }
}

pub fn verify(common: &Common, polytope: &Path) -> Result<ExitCode, CliError> {
    let cfg = load(common)?;
    let setup = cfg.setup()?;
    let p = load_polytope(polytope)?;
    if cfg.run.samples == 0 {
        eprintln!("warning: 0 trials; the report passes vacuously");
    }
    let mc = monte_carlo_validate(&p, &setup, cfg.run.samples, cfg.run.seed).map_err(oracle_error)?;
    let mut facets = Vec::new();
    if cfg.run.tightness_trials > 0 {
        for i in 0..p.inequalities.len() {
            let t = facet_tightness(&p, &setup, i, cfg.run.tightness_trials, cfg.run.seed).map_err(oracle_error)?;
            facets.push(t);
        }
    }
    let mut report = serde_json::to_value(&mc).expect("serializable");
    report["facets"] = serde_json::to_value(&facets).expect("serializable");
    report["facetsConfirmed"] = json!(facets.iter().all(|t| t.facet));
    let text = pretty(&report);
    let out = cfg.run.report.as_deref().or(cfg.run.out.as_deref());
    write_output(out, &text)?;
    eprintln!("{}: max violation {:.3e} over {} trials", if mc.pass { "PASS" } else { "FAIL" }, mc.max_violation, mc.trials);
    Ok(if mc.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn json_rational(v: &Value) -> Result<Rational, CliError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(exact::int)
            .ok_or_else(|| usage(format!("{n} is not an integer; write fractions as \"p/q\""))),
        Value::String(s) => exact::parse_rational(s).map_err(usage),
        other => Err(usage(format!("expected a number or \"p/q\" string, got {other}"))),
    }
}

fn json_vector(v: &Value) -> Result<Vec<Rational>, CliError> {
    v.as_array().ok_or_else(|| usage("expected an array"))?.iter().map(json_rational).collect()
}

pub fn parse_point(text: &str) -> Result<Point, CliError> {
    let v: Value = serde_json::from_str(text).map_err(usage)?;
    let obj = v.as_object().ok_or_else(|| usage("point file must be a JSON object"))?;
    if let Some(k) = obj.keys().find(|k| *k != "xi_tilde" && *k != "xi") {
        return Err(usage(format!("unknown key {k:?} in point file")));
    }
    let xt = obj.get("xi_tilde").and_then(Value::as_array).ok_or_else(|| usage("point file needs xi_tilde"))?;
    let xi = obj.get("xi").ok_or_else(|| usage("point file needs xi"))?;
    Ok(Point { xi_tilde: xt.iter().map(json_vector).collect::<Result<_, _>>()?, xi: json_vector(xi)? })
}

pub fn check(common: &Common, polytope: &Path, point: &Path) -> Result<ExitCode, CliError> {
    let p = load_polytope(polytope)?;
    let pt = parse_point(&read(point)?)?;
    let m = p.check_membership(&pt).map_err(usage)?;
    let violated: Vec<Value> = m
        .violated
        .iter()
        .map(|v| {
            let src = &p.inequalities[v.index].source;
            json!({
                "index": v.index,
                "value": v.value.to_string(),
                "rendered": v.rendered,
                "gamma": src.gamma.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "w": src.w.iter().map(WeylElement::one_line).collect::<Vec<_>>(),
            })
        })
        .collect();
    let report = json!({ "member": m.member, "violated": violated, "tight": m.tight });
    write_output(common.out.as_deref(), &pretty(&report))?;
    Ok(if m.member { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn admissible(common: &Common) -> Result<ExitCode, CliError> {
    let cfg = load(common)?;
    let setup: GroupSetup = cfg.setup()?;
    let list = enumerate_admissible(&setup);
    let items: Vec<Value> = list
        .iter()
        .map(|a| {
            json!({
                "gamma": strings(a.gamma.coords()),
                "spanRank": a.span_rank,
                "certificate": a.certificate.iter().map(|(w, m)| json!({"weight": strings(w.coords()), "multiplicity": m})).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut report = json!({
        "group": setup.datum().to_string(),
        "copies": setup.copies(),
        "admissible": items,
    });
    if let Err(r) = check_hypotheses(&setup) {
        report["note"] = json!(r.to_string());
    }
    if list.is_empty() {
        eprintln!("no admissible elements (empty)");
    }
    write_output(cfg.run.out.as_deref(), &pretty(&report))?;
    Ok(ExitCode::SUCCESS)
}

fn parse_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect()
}

pub fn schubert_query(common: &Common, group: Option<&str>, gamma: &str, ws: &[String]) -> Result<ExitCode, CliError> {
    let (datum, out) = match group {
        Some(g) => {
            init_threads(common.threads)?;
            (RootDatum::parse(g).map_err(usage)?, common.out.clone())
        }
        None => {
            let cfg = load(common)?;
            (cfg.datum()?, cfg.run.out.clone())
        }
    };
    let coords: Vec<Rational> = parse_list(gamma).into_iter().map(exact::parse_rational).collect::<Result<_, _>>().map_err(usage)?;
    let gamma = Coweight::new(coords);
    let flag = FlagVariety::new(&datum, &gamma).map_err(usage)?;
    let mut elements = Vec::new();
    for w in ws {
        let perm: Vec<usize> =
            parse_list(w).into_iter().map(|x| x.parse::<usize>()).collect::<Result<_, _>>().map_err(usage)?;
        let e = WeylElement::from_one_line(&perm)
            .filter(|e| datum.check_weyl(e))
            .ok_or_else(|| usage(format!("{w} is not an element of the Weyl group")))?;
        elements.push(e);
    }
    let class_json = |c: &momentope::schubert::CohomologyClass| -> Value {
        Value::Array(
            c.coefficients()
                .map(|(w, k)| json!({"w": w.one_line(), "coefficient": k.to_string()}))
                .collect(),
        )
    };
    let x_gamma = flag.class_of_x_gamma();
    let mut product = x_gamma.clone();
    let mut classes = Vec::new();
    for w in &elements {
        let c = flag.class_of_orbit(w);
        product = flag.cup(&product, &c).map_err(usage)?;
        classes.push(json!({"w": w.one_line(), "class": class_json(&c)}));
    }
    let report = json!({
        "group": datum.to_string(),
        "gamma": strings(gamma.coords()),
        "dim": flag.dim(),
        "parabolic": flag.parabolic(),
        "basis": flag.basis().iter().map(|w| json!({"w": w.one_line(), "codim": w.length()})).collect::<Vec<_>>(),
        "poincare": flag.poincare_polynomial(),
        "xGamma": class_json(&x_gamma),
        "orbits": classes,
        "product": class_json(&product),
        "pointCoefficient": flag.point_coefficient(&product).map_err(usage)?.to_string(),
    });
    write_output(out.as_deref(), &pretty(&report))?;
    Ok(ExitCode::SUCCESS)
}
