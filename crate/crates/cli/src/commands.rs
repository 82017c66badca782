use std::fmt::Write as _;
use std::path::PathBuf;

use cosetsle::affine::EngineMode;
use cosetsle::lie::coset::{canonical_representative, CosetField, EmbeddingSpec};
use cosetsle::lie::irrep::Irrep;
use cosetsle::scalar::{fmt_rational, rational_to_f64};
use cosetsle::sle::trace::write_csv;
use cosetsle::sle::{
    coset_onepoint_martingale_mc, generator_check, power_martingale_mc, trace_generate, GroupFactor, GroupScheme,
    LoewnerScheme, SimConfig, Verdict,
};
use cosetsle::solver::report::{audit_text, classification_text, system_text};
use cosetsle::solver::candidate::realizing_vector;
use cosetsle::solver::{analyse_representative, audit, classify_model, Normalization};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_STATISTICAL: i32 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<cosetsle::Error> for CliError {
    fn from(e: cosetsle::Error) -> Self {
        Self {
            code: EXIT_INVALID,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self {
            code: EXIT_INVALID,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

/// Result of one command before anything is written.
pub struct Artifact {
    pub command: &'static str,
    pub body: String,
    pub config: Value,
    pub seed: Option<u64>,
    pub inputs: Vec<PathBuf>,
    /// A statistical test ran and did not pass.
    pub failed: bool,
}

impl Artifact {
    fn exact(command: &'static str, body: String, config: Value) -> Self {
        Self {
            command,
            body,
            config,
            seed: None,
            inputs: Vec::new(),
            failed: false,
        }
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn model(name: &str) -> Result<EmbeddingSpec, CliError> {
    Ok(EmbeddingSpec::builtin(name).map_err(|e| invalid(e.to_string()))?)
}

fn level(k: i64) -> Result<i64, CliError> {
    if k < 1 {
        return Err(invalid(format!("level must be >= 1, got {k}")));
    }
    Ok(k)
}

fn mode(m: ModeArg) -> EngineMode {
    match m {
        ModeArg::Semidirect => EngineMode::Semidirect,
        ModeArg::Sugawara => EngineMode::SugawaraCoset,
    }
}

fn normalization(n: NormArg) -> Normalization {
    match n {
        NormArg::Orthonormal => Normalization::Orthonormal,
        NormArg::FormDifference => Normalization::FormDifference,
    }
}

/// `MU,NU` for rank-one labels, or `MU1,MU2;NU1,...` in general.
pub fn parse_field(s: &str) -> Result<(Vec<i64>, Vec<i64>), CliError> {
    let ints = |t: &str| -> Result<Vec<i64>, CliError> {
        t.split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| invalid(format!("bad field label {s:?}"))))
            .collect()
    };
    if let Some((m, n)) = s.split_once(';') {
        return Ok((ints(m)?, ints(n)?));
    }
    match ints(s)?.as_slice() {
        [m, n] => Ok((vec![*m], vec![*n])),
        _ => Err(invalid(format!("field must be MU,NU, got {s:?}"))),
    }
}

pub fn execute(cmd: &Command) -> Result<Artifact, CliError> {
    match cmd {
        Command::Classify(a) => classify(a),
        Command::Solve(a) => solve(a),
        Command::Audit(a) => run_audit(a),
        Command::Sim(s) => simulate(s),
        Command::Replay(_) => Err(invalid("replay cannot be nested")),
    }
}

fn classify(a: &ClassifyArgs) -> Result<Artifact, CliError> {
    let emb = model(&a.model)?;
    let c = classify_model(&emb, level(a.level)?, mode(a.mode), normalization(a.normalization))?;
    let body = if a.json { pretty(&c) } else { classification_text(&c, a.all_representatives) };
    let config = json!({"model": a.model, "level": a.level, "mode": c.mode, "normalization": c.normalization, "json": a.json,
        "all_representatives": a.all_representatives});
    Ok(Artifact::exact("classify", body, config))
}

#[derive(Serialize)]
struct SolveReport {
    model: String,
    level: i64,
    rows: &'static str,
    representatives: Vec<cosetsle::solver::classify::RepresentativeResult>,
}

fn solve(a: &SolveArgs) -> Result<Artifact, CliError> {
    let emb = model(&a.model)?;
    let k = level(a.level)?;
    let (mu, nu) = parse_field(&a.field)?;
    let field = CosetField::new(&emb, &mu, &nu, k)?;
    let fields = match a.representative {
        None => vec![field],
        Some(RepresentativeArg::Canonical) => vec![canonical_representative(&emb, &field)?.canonical],
        Some(RepresentativeArg::All) => canonical_representative(&emb, &field)?.members,
    };
    let reps = fields
        .iter()
        .map(|f| analyse_representative(f, &emb, mode(a.mode), normalization(a.normalization)))
        .collect::<cosetsle::Result<Vec<_>>>()?;
    let rows = if a.engine { "engine" } else { "closed-form" };
    let body = if a.json {
        pretty(&SolveReport {
            model: a.model.clone(),
            level: k,
            rows,
            representatives: reps,
        })
    } else {
        let mut out = String::new();
        for r in &reps {
            let _ = writeln!(out, "field {}  h = {}", r.field.label(), fmt_rational(&r.field.h));
            if a.engine {
                match &r.engine {
                    None => {
                        let _ = writeln!(out, "  {}", r.note.as_deref().unwrap_or("not realizable"));
                    }
                    Some(e) => {
                        let _ = writeln!(out, "raising subset:");
                        out.push_str(&system_text(&e.paper_subset));
                        let _ = writeln!(out, "full raising closure ({}):", e.active_full_operators.join(", "));
                        out.push_str(&system_text(&e.full_closure));
                        if let Some(kept) = e.subset_point_preserved {
                            let _ = writeln!(
                                out,
                                "subset point {} by the full closure",
                                if kept { "preserved" } else { "not preserved" }
                            );
                        }
                    }
                }
            } else {
                for s in &r.closed_form {
                    out.push_str(&system_text(s));
                }
            }
        }
        out
    };
    let config = json!({
        "model": a.model, "level": k, "field": a.field, "rows": rows,
        "representative": a.representative.map(|r| format!("{r:?}").to_lowercase()),
        "mode": mode(a.mode), "normalization": normalization(a.normalization), "json": a.json,
    });
    Ok(Artifact::exact("solve", body, config))
}

fn run_audit(a: &AuditArgs) -> Result<Artifact, CliError> {
    let emb = model(&a.model)?;
    for &k in &a.level {
        level(k)?;
    }
    let r = audit(&emb, &a.level)?;
    let body = if a.json { pretty(&r) } else { audit_text(&r) };
    Ok(Artifact::exact("audit", body, json!({"model": a.model, "levels": a.level, "json": a.json})))
}

pub fn resolve_sim(f: &SimFlags) -> Result<(SimConfig, Vec<PathBuf>), CliError> {
    let mut inputs = Vec::new();
    let mut c = match &f.config {
        Some(p) => {
            inputs.push(p.clone());
            SimConfig::from_toml(&std::fs::read_to_string(p)?)?
        }
        None => SimConfig::default(),
    };
    if let Some(x) = f.kappa {
        c.kappa = x;
    }
    if let Some(x) = f.tau {
        c.tau = x;
    }
    if let Some(x) = f.dt {
        c.dt = x;
    }
    if let Some(x) = f.t_max {
        c.t_max = x;
    }
    if let Some(x) = f.samples {
        c.samples = x;
    }
    if let Some(x) = f.seed {
        c.seed = x;
    }
    if let Some(x) = f.checkpoints {
        c.checkpoints = x;
    }
    if let Some(x) = f.loewner {
        c.loewner = match x {
            LoewnerArg::Euler => LoewnerScheme::Euler,
            LoewnerArg::Slit => LoewnerScheme::Slit,
        };
    }
    if let Some(x) = f.group {
        c.group = match x {
            GroupArg::ItoLinear => GroupScheme::ItoLinear,
            GroupArg::ItoDrift => GroupScheme::ItoDrift,
            GroupArg::Exponential => GroupScheme::Exponential,
        };
    }
    c.validate()?;
    Ok((c, inputs))
}

fn sim_artifact(command: &'static str, body: String, cfg: &SimConfig, extra: Value, inputs: Vec<PathBuf>, failed: bool) -> Artifact {
    let mut config = serde_json::to_value(cfg).expect("serializable");
    if let (Value::Object(m), Value::Object(e)) = (&mut config, extra) {
        m.extend(e);
    }
    Artifact {
        command,
        body,
        config,
        seed: Some(cfg.seed),
        inputs,
        failed,
    }
}

fn simulate(s: &SimCommand) -> Result<Artifact, CliError> {
    match s {
        SimCommand::Trace { sim, .. } => {
            let (cfg, inputs) = resolve_sim(sim)?;
            let trace = trace_generate(&cfg)?;
            let mut buf = Vec::new();
            write_csv(&mut buf, &trace)?;
            let body = String::from_utf8(buf).expect("ascii csv");
            Ok(sim_artifact("sim trace", body, &cfg, json!({}), inputs, false))
        }
        SimCommand::Martingale { sim, h, p, force, .. } => {
            let (cfg, inputs) = resolve_sim(sim)?;
            let r = power_martingale_mc(&cfg, *h, *p, *force)?;
            let failed = r.verdict != Verdict::Pass;
            let extra = json!({"h": h, "p": p, "force": force});
            Ok(sim_artifact("sim martingale", pretty(&r), &cfg, extra, inputs, failed))
        }
        SimCommand::CosetMartingale {
            sim,
            model: m,
            level: k,
            field,
            p,
            force,
            ..
        } => {
            let (cfg, inputs) = resolve_sim(sim)?;
            let emb = model(m)?;
            let (mu, nu) = parse_field(field)?;
            let f = CosetField::new(&emb, &mu, &nu, level(*k)?)?;
            let irrep = Irrep::for_weight(&emb.parent, &f.mu)?;
            let index = realizing_vector(&emb, &f, &irrep)?;
            let group = GroupFactor::new(&emb, &irrep)?;
            let r = coset_onepoint_martingale_mc(&cfg, rational_to_f64(&f.h), &group, index, *p, *force)?;
            let failed = r.verdict != Verdict::Pass;
            let extra = json!({"model": m, "level": k, "field": field, "p": p, "force": force});
            Ok(sim_artifact("sim coset-martingale", pretty(&r), &cfg, extra, inputs, failed))
        }
        SimCommand::GeneratorCheck {
            sim,
            model: m,
            weight,
            index,
            ..
        } => {
            let (cfg, inputs) = resolve_sim(sim)?;
            let emb = model(m)?;
            let irrep = Irrep::for_weight(&emb.parent, weight)?;
            let group = GroupFactor::new(&emb, &irrep)?;
            let r = generator_check(&cfg, &group, *index)?;
            let failed = !r.pass;
            let extra = json!({"model": m, "weight": weight, "index": index});
            Ok(sim_artifact("sim generator-check", pretty(&r), &cfg, extra, inputs, failed))
        }
    }
}

pub fn output_of(cmd: &Command) -> Option<&Output> {
    match cmd {
        Command::Classify(a) => Some(&a.output),
        Command::Solve(a) => Some(&a.output),
        Command::Audit(a) => Some(&a.output),
        Command::Sim(SimCommand::Trace { output, .. })
        | Command::Sim(SimCommand::Martingale { output, .. })
        | Command::Sim(SimCommand::CosetMartingale { output, .. })
        | Command::Sim(SimCommand::GeneratorCheck { output, .. }) => Some(output),
        Command::Replay(_) => None,
    }
}

/// Pin the seed recorded in a manifest so the environment cannot change it.
pub fn pin_seed(cmd: &mut Command, seed: u64) {
    if let Command::Sim(
        SimCommand::Trace { sim, .. }
        | SimCommand::Martingale { sim, .. }
        | SimCommand::CosetMartingale { sim, .. }
        | SimCommand::GeneratorCheck { sim, .. },
    ) = cmd
    {
        sim.seed = Some(seed);
    }
}
