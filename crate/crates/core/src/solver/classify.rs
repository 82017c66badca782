//! Model classification, WZNW analysis and the sign audit.

use rayon::prelude::*;
use serde::Serialize;

use super::candidate::{build_null_candidate, build_wznw_candidate, NullCandidate, Normalization};
use super::constraints::{
    closed_form_constraints, derive_constraints, rows_from_state, satisfies, ConstraintRow, ConstraintSystem,
    RaisingSet, RowSource,
};
use super::solve::{solve_constraints, AdmissibilityResult, Status};
use crate::affine::EngineMode;
use crate::error::{Error, Result};
use crate::lie::{coset_central_charge, enumerate_fields, AlgebraSpec, CosetFamily, CosetField, EmbeddingSpec};
use crate::scalar::Rational;

#[derive(Clone, Debug, Serialize)]
pub struct SystemResult {
    pub system: ConstraintSystem,
    pub result: AdmissibilityResult,
}

impl SystemResult {
    pub fn solve(system: ConstraintSystem) -> Self {
        let result = solve_constraints(&system);
        Self { system, result }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EngineAnalysis {
    pub paper_subset: SystemResult,
    pub full_closure: SystemResult,
    /// Whether the subset's unique point satisfies every full-closure row.
    pub subset_point_preserved: Option<bool>,
    pub active_full_operators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepresentativeResult {
    pub field: CosetField,
    pub realizable: bool,
    pub note: Option<String>,
    pub engine: Option<EngineAnalysis>,
    pub closed_form: Vec<SystemResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitResult {
    pub canonical: String,
    #[serde(serialize_with = "super::report::ser_rational")]
    pub h: Rational,
    pub representatives: Vec<RepresentativeResult>,
    /// Representatives produced different engine systems.
    pub representative_sensitive: bool,
}

impl OrbitResult {
    /// Closed-form verdict on the canonical representative for one convention.
    pub fn closed_form_status(&self, source: RowSource) -> Option<Status> {
        self.representatives[0]
            .closed_form
            .iter()
            .find(|s| s.system.source == source)
            .map(|s| s.result.status)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub model: String,
    pub level: i64,
    #[serde(serialize_with = "super::report::ser_rational")]
    pub central_charge: Rational,
    pub mode: EngineMode,
    pub normalization: Normalization,
    pub orbits: Vec<OrbitResult>,
    pub notes: Vec<String>,
}

fn engine_analysis(c: &NullCandidate) -> Result<EngineAnalysis> {
    let paper_subset = SystemResult::solve(derive_constraints(c, RaisingSet::PaperSubset)?);
    let full_closure = SystemResult::solve(derive_constraints(c, RaisingSet::FullClosure)?);
    let subset_point_preserved = match (&paper_subset.result.status, &paper_subset.result.solution) {
        (Status::Unique, Some(p)) => Some(satisfies(&full_closure.system, &p[0], &p[1])),
        _ => None,
    };
    let active_full_operators = full_closure.system.active_operators();
    Ok(EngineAnalysis {
        paper_subset,
        full_closure,
        subset_point_preserved,
        active_full_operators,
    })
}

/// Engine and closed-form analysis of one representative.
pub fn analyse_representative(
    field: &CosetField,
    emb: &EmbeddingSpec,
    mode: EngineMode,
    normalization: Normalization,
) -> Result<RepresentativeResult> {
    let (engine, realizable, note) = match build_null_candidate(field, emb, mode, normalization) {
        Ok(c) => (Some(engine_analysis(&c)?), true, None),
        Err(Error::Unsupported(msg)) => (None, false, Some(msg)),
        Err(e) => return Err(e),
    };
    let closed_form = if emb.family == CosetFamily::Su2U1 {
        [RowSource::ClosedFormPaper, RowSource::ClosedFormEngineSign]
            .into_iter()
            .map(|s| closed_form_constraints(field, emb, s).map(SystemResult::solve))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    Ok(RepresentativeResult {
        field: field.clone(),
        realizable,
        note,
        engine,
        closed_form,
    })
}

fn normalized_rows(s: &ConstraintSystem) -> Vec<[Rational; 3]> {
    let mut v: Vec<_> = s.rows.iter().map(ConstraintRow::normalized).collect();
    v.sort();
    v
}

/// Classify every orbit representative at level `k`.
pub fn classify_model(emb: &EmbeddingSpec, k: i64, mode: EngineMode, normalization: Normalization) -> Result<Classification> {
    let orbits = enumerate_fields(emb, k)?;
    let jobs: Vec<(usize, CosetField)> = orbits
        .iter()
        .enumerate()
        .flat_map(|(i, o)| o.members.iter().map(move |f| (i, f.clone())))
        .collect();
    let results: Vec<(usize, Result<RepresentativeResult>)> = jobs
        .par_iter()
        .map(|(i, f)| (*i, analyse_representative(f, emb, mode, normalization)))
        .collect();
    let mut grouped: Vec<Vec<RepresentativeResult>> = vec![Vec::new(); orbits.len()];
    for (i, r) in results {
        grouped[i].push(r?);
    }
    let c = coset_central_charge(emb, k);
    let mut notes = Vec::new();
    if num_traits::Zero::is_zero(&c) {
        notes.push("central charge 0: the identity field is trivially degenerate".into());
    }
    let orbits = orbits
        .into_iter()
        .zip(grouped)
        .map(|(o, reps)| {
            let systems: Vec<_> = reps
                .iter()
                .filter_map(|r| r.engine.as_ref())
                .map(|e| normalized_rows(&e.paper_subset.system))
                .collect();
            let representative_sensitive = systems.windows(2).any(|w| w[0] != w[1]);
            OrbitResult {
                canonical: o.canonical.label(),
                h: o.canonical.h.clone(),
                representatives: reps,
                representative_sensitive,
            }
        })
        .collect();
    Ok(Classification {
        model: emb.name.clone(),
        level: k,
        central_charge: c,
        mode,
        normalization,
        orbits,
        notes,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WznwResult {
    pub label: String,
    #[serde(serialize_with = "super::report::ser_rational")]
    pub h: Rational,
    #[serde(serialize_with = "super::report::ser_rational")]
    pub central_charge: Rational,
    pub paper_subset: SystemResult,
    pub full_closure: SystemResult,
}

/// WZNW pipeline with the group term over the whole algebra.
pub fn wznw_classify(spec: &AlgebraSpec, k: i64, weight: &[i64]) -> Result<WznwResult> {
    let c = build_wznw_candidate(spec, k, weight)?;
    let e = engine_analysis(&c)?;
    Ok(WznwResult {
        label: c.label.clone(),
        h: c.context.h.clone(),
        central_charge: c.context.c.clone(),
        paper_subset: e.paper_subset,
        full_closure: e.full_closure,
    })
}

/// Rows one operator produces on a candidate, without cross-operator deduplication.
pub fn operator_rows(c: &NullCandidate, name: &str) -> Result<Vec<ConstraintRow>> {
    let op = match name {
        "L2" => c.virasoro(2)?,
        "L1L1" => {
            let l1 = c.virasoro(1)?;
            l1.mul(&l1)
        }
        "Jt1[1]L1" => {
            use crate::affine::{GeneratorSymbol, OperatorPoly, Sector};
            OperatorPoly::symbol(GeneratorSymbol::current(Sector::Sub, 0, 1)).mul(&c.virasoro(1)?)
        }
        other => return Err(Error::InvalidParameter(format!("unknown audit operator {other}"))),
    };
    let mut s = ConstraintSystem::new(c.label.clone(), RowSource::Engine, None);
    rows_from_state(name, &c.act(&op)?, &mut s)?;
    Ok(s.rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditEntry {
    pub level: i64,
    pub field: String,
    pub operator: String,
    pub engine: Vec<ConstraintRow>,
    pub paper: Vec<ConstraintRow>,
    pub paper_engine_sign: Vec<ConstraintRow>,
    pub match_paper: bool,
    pub match_engine_sign: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub model: String,
    pub levels: Vec<i64>,
    pub entries: Vec<AuditEntry>,
    /// Every literal `L₁²` row reproduced by the engine.
    pub l1_squared_literal: bool,
    /// Every literal `J̃¹₁L₁` row reproduced by the engine.
    pub composite_literal: bool,
    /// The single c-sign convention under which every `L₂` row matches, if any.
    pub l2_convention: Option<String>,
    pub skipped: Vec<String>,
}

fn rows_match(x: &[ConstraintRow], y: &[ConstraintRow]) -> bool {
    let n = |v: &[ConstraintRow]| {
        let mut r: Vec<_> = v.iter().map(ConstraintRow::normalized).collect();
        r.sort();
        r.dedup();
        r
    };
    n(x) == n(y)
}

/// Side-by-side comparison of engine rows and literal closed-form rows.
pub fn audit(emb: &EmbeddingSpec, levels: &[i64]) -> Result<AuditReport> {
    let mut report = AuditReport {
        model: emb.name.clone(),
        levels: levels.to_vec(),
        entries: Vec::new(),
        l1_squared_literal: true,
        composite_literal: true,
        l2_convention: None,
        skipped: Vec::new(),
    };
    if emb.family != CosetFamily::Su2U1 {
        report.l1_squared_literal = false;
        report.composite_literal = false;
        return Ok(report);
    }
    let mut plus_all = true;
    let mut minus_all = true;
    for &k in levels {
        for orbit in enumerate_fields(emb, k)? {
            for f in &orbit.members {
                let c = match build_null_candidate(f, emb, EngineMode::Semidirect, Normalization::Orthonormal) {
                    Ok(c) => c,
                    Err(Error::Unsupported(msg)) => {
                        report.skipped.push(format!("k={k} {}: {msg}", f.label()));
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let paper = closed_form_constraints(f, emb, RowSource::ClosedFormPaper)?;
                let minus = closed_form_constraints(f, emb, RowSource::ClosedFormEngineSign)?;
                for op in ["L2", "L1L1", "Jt1[1]L1"] {
                    let engine = operator_rows(&c, op)?;
                    let p: Vec<_> = paper.rows_for(op).into_iter().cloned().collect();
                    let m: Vec<_> = minus.rows_for(op).into_iter().cloned().collect();
                    let match_paper = rows_match(&engine, &p);
                    let match_engine_sign = rows_match(&engine, &m);
                    match op {
                        "L2" => {
                            plus_all &= match_paper;
                            minus_all &= match_engine_sign;
                        }
                        "L1L1" => report.l1_squared_literal &= match_paper,
                        _ => report.composite_literal &= match_paper,
                    }
                    report.entries.push(AuditEntry {
                        level: k,
                        field: f.label(),
                        operator: op.into(),
                        engine,
                        paper: p,
                        paper_engine_sign: m,
                        match_paper,
                        match_engine_sign,
                    });
                }
            }
        }
    }
    if report.entries.is_empty() {
        report.l1_squared_literal = false;
        report.composite_literal = false;
    } else if plus_all && !minus_all {
        report.l2_convention = Some("+c".into());
    } else if minus_all && !plus_all {
        report.l2_convention = Some("-c".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    #[test]
    fn level_two_classification() {
        let emb = EmbeddingSpec::su2_u1();
        let cl = classify_model(&emb, 2, EngineMode::Semidirect, Normalization::Orthonormal).unwrap();
        assert_eq!(cl.orbits.len(), 3);
        assert_eq!(cl.central_charge, q(1, 2));
        let by = |l: &str| cl.orbits.iter().find(|o| o.canonical == l).unwrap();
        for src in [RowSource::ClosedFormPaper, RowSource::ClosedFormEngineSign] {
            assert_eq!(by("(1;1)").closed_form_status(src), Some(Status::Inconsistent));
            assert!(by("(0;0)").closed_form_status(src).unwrap().is_admissible());
            assert!(by("(0;2)").closed_form_status(src).unwrap().is_admissible());
        }
        let rep20 = by("(0;2)").representatives.iter().find(|r| r.field.mu == vec![2]).unwrap();
        let e = rep20.engine.as_ref().unwrap();
        assert_eq!(e.paper_subset.result.solution, Some(vec![qi(3), qi(0)]));
        assert_eq!(e.subset_point_preserved, Some(false));
    }

    #[test]
    fn determinism() {
        let emb = EmbeddingSpec::su2_u1();
        let a = serde_json::to_string(&classify_model(&emb, 3, EngineMode::Semidirect, Normalization::Orthonormal).unwrap()).unwrap();
        let b = serde_json::to_string(&classify_model(&emb, 3, EngineMode::Semidirect, Normalization::Orthonormal).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn wznw_identity_l2_row() {
        let r = wznw_classify(&AlgebraSpec::su2(), 2, &[0]).unwrap();
        let rows = r.paper_subset.system.rows_for("L2");
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].a.clone(), rows[0].b.clone(), rows[0].d.clone()), (qi(0), qi(3), q(-3, 2)));
    }

    #[test]
    fn trivial_coset_audit_is_empty() {
        let r = audit(&EmbeddingSpec::trivial(AlgebraSpec::su2()), &[1, 2]).unwrap();
        assert!(r.entries.is_empty());
    }
}
